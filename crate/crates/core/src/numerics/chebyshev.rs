//! Roots of Chebyshev series through the colleague matrix.

use nalgebra::linalg::balancing::balance_parlett_reinsch;
use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Drops trailing coefficients that are negligible relative to the largest one.
pub fn trim(coeffs: &[f64], rel_tol: f64) -> &[f64] {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut n = coeffs.len();
    while n > 1 && coeffs[n - 1].abs() <= rel_tol * scale {
        n -= 1;
    }
    &coeffs[..n]
}

/// All complex roots of `sum_k c_k T_k(x)`; the leading coefficient must be nonzero.
pub fn colleague_eigenvalues(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if lead == 0.0 {
        return Err(Error::Eigen("vanishing leading Chebyshev coefficient".into()));
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    m[(0, 1)] = 1.0;
    for i in 1..n {
        m[(i, i - 1)] = 0.5;
        if i + 1 < n {
            m[(i, i + 1)] = 0.5;
        }
    }
    for k in 0..n {
        m[(n - 1, k)] -= coeffs[k] / (2.0 * lead);
    }
    balance_parlett_reinsch(&mut m);
    let schur = Schur::try_new(m, f64::EPSILON, 100 * n)
        .ok_or_else(|| Error::Eigen(format!("Schur iteration did not converge (degree {n})")))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_roots() {
        // T_3(x) = 4x^3 - 3x, roots 0 and +-sqrt(3)/2
        let mut r: Vec<f64> = colleague_eigenvalues(&[0.0, 0.0, 0.0, 1.0])
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        r.sort_by(f64::total_cmp);
        let s = 3f64.sqrt() / 2.0;
        assert!((r[0] + s).abs() < 1e-14 && r[1].abs() < 1e-14 && (r[2] - s).abs() < 1e-14);
        // linear case
        let r = colleague_eigenvalues(&[0.25, 0.5]).unwrap();
        assert_eq!(r[0].re, -0.5);
    }

    #[test]
    fn high_degree_chebyshev_roots() {
        let n = 120;
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        let mut r: Vec<f64> = colleague_eigenvalues(&c).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (k, x) in r.iter().enumerate() {
            let exact = -(std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
            assert!((x - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn trimming() {
        assert_eq!(trim(&[1.0, 0.5, 1e-20, 0.0], 1e-14).len(), 2);
        assert_eq!(trim(&[0.0], 1e-14).len(), 1);
    }
}
