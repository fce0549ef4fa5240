//! Legendre polynomials and Legendre series.

use crate::error::{Error, Result};

/// `P_l(x)` by the Bonnet recurrence.
pub fn legendre_p(l: usize, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("Legendre argument {x} outside [-1, 1]")));
    }
    Ok(legendre_unchecked(l, x))
}

pub(crate) fn legendre_unchecked(l: usize, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..l {
        let next = ((2 * k + 1) as f64 * x * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// `sum_l coeffs[l] P_l(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreSeries {
    coeffs: Vec<f64>,
}

impl LegendreSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        LegendreSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        if n == 0 {
            return 0.0;
        }
        // P_{k+1} = alpha_k P_k + beta_k P_{k-1}, alpha_k = (2k+1)x/(k+1), beta_k = -k/(k+1)
        let (mut b1, mut b2) = (0.0f64, 0.0f64);
        for k in (0..n).rev() {
            let alpha = (2 * k + 1) as f64 * x / (k + 1) as f64;
            let beta_next = -((k + 1) as f64) / (k + 2) as f64;
            let b0 = self.coeffs[k] + alpha * b1 + beta_next * b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// The series with `x -> -x`.
    pub fn reflected(&self) -> LegendreSeries {
        LegendreSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(l, &c)| if l % 2 == 0 { c } else { -c })
                .collect(),
        )
    }

    /// Sum of absolute coefficients; a bound on `|f|` over `[-1, 1]`.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Chebyshev coefficients of the same polynomial, by interpolation at
    /// `n + 1` Chebyshev points of the first kind.
    pub fn to_chebyshev(&self) -> Vec<f64> {
        let n = self.coeffs.len();
        if n == 0 {
            return Vec::new();
        }
        let pi = std::f64::consts::PI;
        let values: Vec<f64> = (0..n)
            .map(|i| self.eval((pi * (i as f64 + 0.5) / n as f64).cos()))
            .collect();
        (0..n)
            .map(|k| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * (pi * k as f64 * (i as f64 + 0.5) / n as f64).cos())
                    .sum();
                let scale = if k == 0 { 1.0 } else { 2.0 };
                scale * s / n as f64
            })
            .collect()
    }
}
