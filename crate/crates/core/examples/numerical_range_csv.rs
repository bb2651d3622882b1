//! Writes boundary samples of W(A) as CSV, ready for plotting.
//!
//! ```text
//! cargo run --example numerical_range_csv > range.csv
//! ```

use numrad::numrange::write_range_csv;
use numrad::{range_boundary, ComplexMatrix, C64};

fn main() -> numrad::Result<()> {
    // a non-normal 3×3 with a range that is neither a disk nor a polygon
    let a = ComplexMatrix::from_rows(&[
        vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        vec![C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(1.0, 0.0)],
        vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
    ])?;
    let samples = range_boundary(&a, 180)?;
    write_range_csv(&samples, std::io::stdout().lock())?;
    Ok(())
}
