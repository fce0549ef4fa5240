//! Spin-j angular momentum operators, rotations and spherical harmonics.
//!
//! Matrices use the crate-wide basis order: row 0 is `m = j`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::numerics::HalfInt;

pub type CMatrix = DMatrix<Complex64>;

/// `(J_x, J_y, J_z)` for spin `j`.
pub fn spin_matrices(j: HalfInt) -> (CMatrix, CMatrix, CMatrix) {
    let n = j.dim();
    let jf = j.to_f64();
    let mut jp = CMatrix::zeros(n, n);
    let mut jz = CMatrix::zeros(n, n);
    for row in 0..n {
        let m = j.projection_at(row).to_f64();
        jz[(row, row)] = Complex64::new(m, 0.0);
        if row > 0 {
            // J_+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
            jp[(row - 1, row)] = Complex64::new((jf * (jf + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    (jx, jy, jz)
}

/// `exp(-i angle (axis . J))` via Hermitian eigendecomposition; `axis` must be a unit vector.
pub fn rotation_unitary(j: HalfInt, axis: [f64; 3], angle: f64) -> CMatrix {
    let n = j.dim();
    if angle == 0.0 {
        return CMatrix::identity(n, n);
    }
    let (jx, jy, jz) = spin_matrices(j);
    let gen = jx * Complex64::new(axis[0], 0.0) + jy * Complex64::new(axis[1], 0.0) + jz * Complex64::new(axis[2], 0.0);
    let eig = SymmetricEigen::new(gen);
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&lam| Complex64::from_polar(1.0, -angle * lam)),
    ));
    v * phases * v.adjoint()
}

/// The unitary `U_k = exp(-i theta (k . J))`, `k = (-sin phi, cos phi, 0)`,
/// carrying the north pole to `(theta, phi)`.
pub fn pole_rotation(j: HalfInt, theta: f64, phi: f64) -> CMatrix {
    rotation_unitary(j, [-phi.sin(), phi.cos(), 0.0], theta)
}

/// Active rotation of a point on the unit sphere (Rodrigues formula).
pub fn rotate_point(axis: [f64; 3], angle: f64, p: [f64; 3]) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let dot = axis[0] * p[0] + axis[1] * p[1] + axis[2] * p[2];
    let cross = [
        axis[1] * p[2] - axis[2] * p[1],
        axis[2] * p[0] - axis[0] * p[2],
        axis[0] * p[1] - axis[1] * p[0],
    ];
    [0, 1, 2].map(|i| p[i] * c + cross[i] * s + axis[i] * dot * (1.0 - c))
}

pub fn to_cartesian(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    [st * phi.cos(), st * phi.sin(), ct]
}

pub fn to_spherical(p: [f64; 3]) -> (f64, f64) {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    let theta = (p[2] / r).clamp(-1.0, 1.0).acos();
    let mut phi = p[1].atan2(p[0]);
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    (theta, phi)
}

/// Normalized associated Legendre functions with the Condon–Shortley phase,
/// so that `Y_lm(theta, phi) = P(l, m) e^{i m phi}` for `m >= 0`.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    lmax: usize,
    values: Vec<f64>,
}

impl HarmonicTable {
    pub fn new(lmax: usize, x: f64) -> Self {
        let x = x.clamp(-1.0, 1.0);
        let s = (1.0 - x * x).max(0.0).sqrt();
        let width = lmax + 1;
        let mut values = vec![0.0; width * width];
        let idx = |l: usize, m: usize| l * width + m;
        let mut pmm = 0.5 / std::f64::consts::PI.sqrt();
        for m in 0..=lmax {
            if m > 0 {
                pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
            }
            values[idx(m, m)] = pmm;
            if m < lmax {
                values[idx(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * x * pmm;
            }
            for l in (m + 2)..=lmax {
                let (lf, mf) = (l as f64, m as f64);
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
                values[idx(l, m)] = a * (x * values[idx(l - 1, m)] - b * values[idx(l - 2, m)]);
            }
        }
        HarmonicTable { lmax, values }
    }

    /// `P(l, |m|)` for `|m| <= l <= lmax`.
    #[inline]
    pub fn get(&self, l: usize, m: usize) -> f64 {
        self.values[l * (self.lmax + 1) + m]
    }

    /// `Y_lm(theta, phi)` for any `-l <= m <= l`, with `theta` fixed at table construction.
    pub fn y(&self, l: usize, m: i32, phi: f64) -> Complex64 {
        let am = m.unsigned_abs() as usize;
        let base = self.get(l, am);
        let value = Complex64::from_polar(base, am as f64 * phi);
        if m >= 0 {
            value
        } else if am % 2 == 0 {
            value.conj()
        } else {
            -value.conj()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
    }

    #[test]
    fn commutation_relations() {
        for tj in 1..8 {
            let (jx, jy, jz) = spin_matrices(HalfInt::from_twice(tj));
            let i = Complex64::new(0.0, 1.0);
            assert!(max_abs(&(&jx * &jy - &jy * &jx - &jz * i)) < 1e-12);
            assert!(max_abs(&(&jy * &jz - &jz * &jy - &jx * i)) < 1e-12);
            let j = tj as f64 / 2.0;
            let casimir = &jx * &jx + &jy * &jy + &jz * &jz;
            let n = tj as usize + 1;
            assert!(max_abs(&(casimir - CMatrix::identity(n, n) * Complex64::new(j * (j + 1.0), 0.0))) < 1e-12);
        }
    }

    #[test]
    fn rotations_are_unitary() {
        for tj in [1, 4, 7, 20] {
            let u = pole_rotation(HalfInt::from_twice(tj), 1.1, 2.3);
            let n = tj as usize + 1;
            assert!(max_abs(&(&u * u.adjoint() - CMatrix::identity(n, n))) < 1e-12);
        }
    }

    #[test]
    fn pole_rotation_maps_z_to_point() {
        let (theta, phi) = (0.7f64, 2.1f64);
        let k = [-phi.sin(), phi.cos(), 0.0];
        let p = rotate_point(k, theta, [0.0, 0.0, 1.0]);
        let q = to_cartesian(theta, phi);
        for i in 0..3 {
            assert!((p[i] - q[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn spherical_harmonics_reference_values() {
        // Y_1^1 = -sqrt(3/(8 pi)) sin(theta) e^{i phi}; Y_2^0 = sqrt(5/(16 pi)) (3 cos^2 - 1)
        let (theta, phi) = (0.9f64, 0.4f64);
        let t = HarmonicTable::new(3, theta.cos());
        let pi = std::f64::consts::PI;
        let y11 = t.y(1, 1, phi);
        let expect = Complex64::from_polar(-(3.0 / (8.0 * pi)).sqrt() * theta.sin(), phi);
        assert!((y11 - expect).norm() < 1e-15);
        let y1m1 = t.y(1, -1, phi);
        let expect = Complex64::from_polar((3.0 / (8.0 * pi)).sqrt() * theta.sin(), -phi);
        assert!((y1m1 - expect).norm() < 1e-15);
        let y20 = t.y(2, 0, phi).re;
        assert!((y20 - (5.0 / (16.0 * pi)).sqrt() * (3.0 * theta.cos().powi(2) - 1.0)).abs() < 1e-15);
        // Y_ll closed form (-1)^l / (2^l l!) sqrt((2l+1)!/(4 pi)) sin^l
        let l = 3usize;
        let closed = -1.0 / (8.0 * 6.0) * (5040.0 / (4.0 * pi)).sqrt() * theta.sin().powi(3);
        assert!((t.get(l, l) - closed).abs() < 1e-14);
    }
}
