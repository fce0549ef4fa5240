//! Number-state Wigner functions on the plane, the large-spin limit of
//! `|j, j-n>`. Normalized with kernel height 2 and measure `d^2 alpha / pi`,
//! so the radial measure is `2 r dr`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::integrate_adaptive;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumberStateNegativity {
    pub n: u32,
    pub delta: f64,
    pub error_estimate: f64,
}

/// `L_n(x)` by the three-term recurrence, with its derivative.
pub fn laguerre(n: u32, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, 1.0 - x);
    for k in 1..n {
        let kf = f64::from(k);
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let nf = f64::from(n);
    let d = if x == 0.0 { -nf } else { nf * (p1 - p0) / x };
    (p1, d)
}

/// `2 (-1)^n e^{-2r^2} L_n(4r^2)`.
pub fn planar_wigner_number(n: u32, r: f64) -> f64 {
    let u = 2.0 * r * r;
    let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
    sign * (-u).exp() * laguerre(n, 2.0 * u).0
}

/// Roots of `L_n`, ascending, by Newton from asymptotic initial guesses.
pub fn laguerre_roots(n: u32) -> Result<Vec<f64>> {
    let mut roots: Vec<f64> = Vec::with_capacity(n as usize);
    let nf = f64::from(n);
    for i in 0..n as usize {
        let mut x = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => roots[0] + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let a = (1.0 + 2.55 * (i as f64 - 1.0)) / (1.9 * (i as f64 - 1.0));
                roots[i - 1] + a * (roots[i - 1] - roots[i - 2])
            }
        };
        for _ in 0..100 {
            let (p, d) = laguerre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        roots.push(x);
    }
    // every root must sit inside a sign change and stay distinct
    for (i, &x) in roots.iter().enumerate() {
        let h = 1e-9 * x.max(1.0);
        let (a, b) = (laguerre(n, x - h).0, laguerre(n, x + h).0);
        if (a < 0.0) == (b < 0.0) || (i > 0 && x <= roots[i - 1]) {
            return Err(Error::OracleDisagreement(format!("Laguerre root {i} of L_{n} failed verification")));
        }
    }
    Ok(roots)
}

/// `delta(|n>) = (int |W| 2r dr - 1)/2`, integrated between the known radial zeros.
pub fn planar_negativity_number(n: u32, tol: f64) -> Result<NumberStateNegativity> {
    let roots = laguerre_roots(n)?;
    let mut breaks = vec![0.0];
    breaks.extend(roots.iter().map(|x| (x / 4.0).sqrt()));
    let last = *breaks.last().expect("nonempty");
    // e^{-2r^2} is below 1e-80 beyond this radius
    breaks.push(last + 10.0);
    let negative = |r: f64| (-planar_wigner_number(n, r)).max(0.0) * 2.0 * r;
    let q = integrate_adaptive(negative, &breaks, 0.1 * tol, 2_000_000);
    if !q.converged {
        return Err(Error::Domain(format!("planar radial quadrature for n={n} did not converge")));
    }
    Ok(NumberStateNegativity { n, delta: q.value, error_estimate: q.error })
}
