//! Nelder–Mead simplex minimization for small dimensions.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_evaluations: usize,
    /// Stop once the spread of function values across the simplex is below this.
    pub f_tol: f64,
    /// Stop once every vertex is within this distance of the best one.
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_evaluations: 60, f_tol: 1e-12, x_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;

/// Minimizes `f` starting from an axis-aligned simplex of edge `step` at `x0`.
pub fn minimize<F>(mut f: F, x0: &[f64], step: f64, opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evaluations);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }

    while evaluations < opts.max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        let spread = simplex[1..]
            .iter()
            .map(|(x, _)| dist(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.f_tol || spread <= opts.x_tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(ALPHA);
        let fr = eval(&xr, &mut evaluations);
        if fr < best {
            let xe = along(GAMMA);
            let fe = eval(&xe, &mut evaluations);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = along(RHO * ALPHA);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-RHO);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < worst.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        // shrink toward the best vertex
        let x_best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = x_best.iter().zip(&vertex.0).map(|(b, v)| b + SIGMA * (v - b)).collect();
            let v = eval(&x, &mut evaluations);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, evaluations }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
