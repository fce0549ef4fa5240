//! The SU(2) Stratonovich–Weyl kernel.
//!
//! At every phase-space point the kernel is a unit-trace Hermitian operator
//! whose spectrum does not depend on the point. [`kernel_matrix`] builds it
//! from spherical harmonics and coupling coefficients,
//! [`kernel_matrix_rotation_oracle`] by conjugating the north-pole kernel
//! with the rotation unitary; the two must agree.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{coupling_table, diagonal_table, HalfInt};
use crate::spin::{pole_rotation, CMatrix, HarmonicTable};

/// Signs `eps_l`, `l = 0..2j`, in the eigenvalue sum. `eps_0` is always `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonChoice {
    signs: Vec<i8>,
}

impl EpsilonChoice {
    /// All signs `+1`; the choice that contracts to the planar kernel.
    pub fn standard(j: HalfInt) -> Self {
        EpsilonChoice { signs: vec![1; j.dim()] }
    }

    pub fn new(j: HalfInt, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != j.dim() {
            return Err(Error::Domain(format!(
                "epsilon needs {} signs for j={j}, got {}",
                j.dim(),
                signs.len()
            )));
        }
        if signs[0] != 1 {
            return Err(Error::Domain("epsilon_0 must be +1".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("epsilon signs must be +1 or -1".into()));
        }
        Ok(EpsilonChoice { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_standard(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

/// Point-independent eigenvalues of the kernel, stored in basis order (`m = j..-j`).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpectrum {
    pub j: HalfInt,
    pub epsilon: EpsilonChoice,
    eigenvalues: Vec<f64>,
}

impl KernelSpectrum {
    pub fn eigenvalue(&self, m: HalfInt) -> f64 {
        self.eigenvalues[self.j.index_of(m)]
    }

    /// Eigenvalues in basis order, `m = j` first.
    pub fn by_row(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `(m, eigenvalue)` pairs with `m` ascending.
    pub fn ascending(&self) -> Vec<(HalfInt, f64)> {
        self.j
            .projections()
            .rev()
            .map(|m| (m, self.eigenvalue(m)))
            .collect()
    }
}

pub fn kernel_eigenvalues(j: HalfInt, epsilon: &EpsilonChoice) -> Result<KernelSpectrum> {
    if epsilon.signs.len() != j.dim() {
        return Err(Error::Domain("epsilon length does not match 2j+1".into()));
    }
    let table = diagonal_table(j);
    let n = j.dim();
    let eigenvalues = (0..n)
        .map(|row| {
            table
                .row(row)
                .iter()
                .enumerate()
                .map(|(l, c)| f64::from(epsilon.signs[l]) * (2 * l + 1) as f64 / n as f64 * c)
                .sum()
        })
        .collect();
    Ok(KernelSpectrum {
        j,
        epsilon: epsilon.clone(),
        eigenvalues,
    })
}

/// The kernel operator at one phase-space point, in the `n_z` Dicke basis.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    pub j: HalfInt,
    pub theta: f64,
    pub phi: f64,
    pub entries: CMatrix,
}

impl KernelMatrix {
    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Sorted eigenvalues of the (Hermitian) matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Kernel from the multipole expansion
/// `sqrt(4pi/(2j+1)) sum_{l,k} conj(Y_lk) T_lk`.
pub fn kernel_matrix(j: HalfInt, theta: f64, phi: f64) -> KernelMatrix {
    let n = j.dim();
    let lmax = n - 1;
    let harmonics = HarmonicTable::new(lmax, theta.cos());
    let prefactor = (4.0 * std::f64::consts::PI / n as f64).sqrt();
    let mut entries = CMatrix::zeros(n, n);
    for l in 0..=lmax {
        let table = coupling_table(j, l);
        let weight = prefactor * ((2 * l + 1) as f64 / n as f64).sqrt();
        let ys: Vec<Complex64> = (-(l as i32)..=l as i32).map(|k| harmonics.y(l, k, phi).conj()).collect();
        for col in 0..n {
            let m = j.projection_at(col);
            for (kk, y) in ys.iter().enumerate() {
                let k = kk as i32 - l as i32;
                let mp = m + HalfInt::from_int(k);
                if !j.admits(mp) {
                    continue;
                }
                let c = table.get(col, k);
                if c != 0.0 {
                    entries[(j.index_of(mp), col)] += y * (weight * c);
                }
            }
        }
    }
    KernelMatrix { j, theta, phi, entries }
}

/// Kernel built as `U_k Delta(north pole) U_k^dagger`; dense, intended for small spins.
pub fn kernel_matrix_rotation_oracle(j: HalfInt, theta: f64, phi: f64) -> KernelMatrix {
    let spectrum = kernel_eigenvalues(j, &EpsilonChoice::standard(j)).expect("standard epsilon");
    let n = j.dim();
    let pole = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        spectrum.by_row().iter().map(|&v| Complex64::new(v, 0.0)),
    ));
    let u = pole_rotation(j, theta, phi);
    let entries = &u * pole * u.adjoint();
    KernelMatrix { j, theta, phi, entries }
}

/// Pointwise `(min, max)` of any Wigner function at spin `j` (standard epsilon).
pub fn kernel_bounds(j: HalfInt) -> (f64, f64) {
    let spectrum = kernel_eigenvalues(j, &EpsilonChoice::standard(j)).expect("standard epsilon");
    spectrum
        .by_row()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    #[test]
    fn qubit_spectrum() {
        let s = kernel_eigenvalues(h(1), &EpsilonChoice::standard(h(1))).unwrap();
        let r3 = 3f64.sqrt();
        assert!((s.eigenvalue(h(1)) - (1.0 + r3) / 2.0).abs() < 1e-12);
        assert!((s.eigenvalue(h(-1)) - (1.0 - r3) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn spin_one_spectrum_from_exact_cg() {
        // Frozen from exact CG evaluation: C^{1m}_{1m;l0} for l=0,1,2 are
        // m=1: 1, 1/sqrt2, 1/sqrt10; m=0: 1, 0, -sqrt(2/5); m=-1: 1, -1/sqrt2, 1/sqrt10.
        let s = kernel_eigenvalues(h(2), &EpsilonChoice::standard(h(2))).unwrap();
        let top = (1.0 + 3.0 / 2f64.sqrt() + 5.0 / 10f64.sqrt()) / 3.0;
        let mid = (1.0 - 5.0 * (2.0f64 / 5.0).sqrt()) / 3.0;
        let bottom = (1.0 - 3.0 / 2f64.sqrt() + 5.0 / 10f64.sqrt()) / 3.0;
        assert!((s.eigenvalue(h(2)) - top).abs() < 1e-14);
        assert!((s.eigenvalue(h(0)) - mid).abs() < 1e-14);
        assert!((s.eigenvalue(h(-2)) - bottom).abs() < 1e-14);
    }

    #[test]
    fn unit_trace_for_any_epsilon() {
        let j = h(5);
        for signs in [vec![1, 1, 1, 1, 1, 1], vec![1, -1, 1, -1, -1, 1], vec![1, -1, -1, -1, -1, -1]] {
            let eps = EpsilonChoice::new(j, signs).unwrap();
            let s = kernel_eigenvalues(j, &eps).unwrap();
            assert!((s.by_row().iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        for tj in 0..=40 {
            let s = kernel_eigenvalues(h(tj), &EpsilonChoice::standard(h(tj))).unwrap();
            assert!((s.by_row().iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        assert!(EpsilonChoice::new(j, vec![-1, 1, 1, 1, 1, 1]).is_err());
        assert!(EpsilonChoice::new(j, vec![1, 1]).is_err());
    }

    #[test]
    fn pole_kernel_is_diagonal_spectrum() {
        let k = kernel_matrix(h(1), 0.0, 0.0);
        let r3 = 3f64.sqrt();
        assert!((k.entries[(0, 0)].re - (1.0 + r3) / 2.0).abs() < 1e-13);
        assert!((k.entries[(1, 1)].re - (1.0 - r3) / 2.0).abs() < 1e-13);
        assert!(k.entries[(0, 1)].norm() < 1e-15);
        let o = kernel_matrix_rotation_oracle(h(6), 0.0, 1.3);
        let s = kernel_eigenvalues(h(6), &EpsilonChoice::standard(h(6))).unwrap();
        for (row, v) in s.by_row().iter().enumerate() {
            assert!((o.entries[(row, row)].re - v).abs() < 1e-14);
        }
    }

    #[test]
    fn constructions_agree() {
        let a = kernel_matrix(h(4), 1.1, 2.3);
        let b = kernel_matrix_rotation_oracle(h(4), 1.1, 2.3);
        assert!(max_diff(&a.entries, &b.entries) < 1e-10);
        let a = kernel_matrix(h(6), std::f64::consts::FRAC_PI_2, 0.0);
        let b = kernel_matrix_rotation_oracle(h(6), std::f64::consts::FRAC_PI_2, 0.0);
        assert!(max_diff(&a.entries, &b.entries) < 1e-10);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for tj in 1..=10 {
            for _ in 0..20 {
                let theta = rng.gen_range(0.0..std::f64::consts::PI);
                let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
                let a = kernel_matrix(h(tj), theta, phi);
                let b = kernel_matrix_rotation_oracle(h(tj), theta, phi);
                assert!(max_diff(&a.entries, &b.entries) < 1e-10, "2j={tj}");
            }
        }
    }

    #[test]
    fn spectrum_is_point_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tj in 1..=10 {
            let s = kernel_eigenvalues(h(tj), &EpsilonChoice::standard(h(tj))).unwrap();
            let mut expected = s.by_row().to_vec();
            expected.sort_by(f64::total_cmp);
            for _ in 0..5 {
                let k = kernel_matrix(h(tj), rng.gen_range(0.0..3.14), rng.gen_range(0.0..6.28));
                assert!(max_diff(&k.entries, &k.entries.adjoint()) < 1e-12);
                assert!((k.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
                for (x, y) in k.eigenvalues().iter().zip(&expected) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
        // qubit oracle keeps the spectrum at arbitrary points
        let o = kernel_matrix_rotation_oracle(h(1), 2.0, 4.0);
        let ev = o.eigenvalues();
        assert!((ev[0] - (1.0 - 3f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((ev[1] - (1.0 + 3f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_and_extremal_states() {
        let (lo, hi) = kernel_bounds(h(1));
        assert!((lo - (1.0 - 3f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((hi - (1.0 + 3f64.sqrt()) / 2.0).abs() < 1e-12);
        let (lo, hi) = kernel_bounds(HalfInt::from_int(20));
        assert!(hi > 1.8 && hi < 2.0, "{hi}");
        assert!(lo > -2.0 && lo < -1.5, "{lo}");

        let mut prev = (0.0f64, 0.0f64);
        for n in 1..=40 {
            let j = HalfInt::from_int(n);
            let s = kernel_eigenvalues(j, &EpsilonChoice::standard(j)).unwrap();
            let (lo, hi) = kernel_bounds(j);
            assert_eq!(s.eigenvalue(j), hi, "max at m=j for j={n}");
            assert_eq!(s.eigenvalue(j - HalfInt::from_int(1)), lo, "min at m=j-1 for j={n}");
            assert!(hi <= 2.0 + 1e-9 && lo >= -2.0 - 1e-9);
            if n > 1 {
                assert!(hi > prev.1 && lo.abs() > prev.0.abs(), "monotone approach at j={n}");
            }
            prev = (lo, hi);
        }
    }
}
