//! Crawford number c(A), the distance from 0 to the numerical range.

use numrad::{crawford_number, ComplexMatrix, C64};

fn main() -> numrad::Result<()> {
    let cases = [
        ("diag(1, 2)", ComplexMatrix::diag_real(&[1.0, 2.0])),
        ("diag(1, i)", ComplexMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])),
        ("[[0,1],[0,0]]", ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])?),
        ("2I + [[0,1],[0,0]]", ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 2.0]])?),
    ];
    for (name, a) in cases {
        let r = crawford_number(&a, 1e-10)?;
        println!("{name:>20}: c = {:.10}  0 ∈ W(A): {}", r.value, r.attained_inside);
    }
    Ok(())
}
