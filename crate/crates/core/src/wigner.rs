//! Spherical Wigner functions `W(theta, phi) = tr(rho Delta(theta, phi))`.
//!
//! Dicke, coherent and cat states have closed forms. Everything else goes
//! through the multipole expansion of `rho`, which for fixed `x = cos(theta)`
//! leaves a trigonometric polynomial in `phi`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::factorial::{ln_factorial, ln_nj_constant};
use crate::numerics::quadrature::gauss_legendre;
use crate::numerics::{coupling_table, diagonal_table, validate_pair, HalfInt, LegendreSeries};
use crate::spin::{to_cartesian, HarmonicTable};
use crate::states::{CatParams, SpinState, StateKind};

/// Largest imaginary part tolerated before a value is rejected.
pub const IMAGINARY_LIMIT: f64 = 1e-8;

/// Legendre coefficients of `W_{|j,m>}` as a function of `cos(theta)`.
pub fn dicke_series(j: HalfInt, m: HalfInt) -> Result<LegendreSeries> {
    validate_pair(j, m)?;
    let table = diagonal_table(j);
    let n = j.dim() as f64;
    let row = table.row(j.index_of(m));
    Ok(LegendreSeries::new(
        row.iter().enumerate().map(|(l, c)| (2 * l + 1) as f64 / n * c).collect(),
    ))
}

/// Series for a diagonal density matrix with populations in basis order.
pub fn diagonal_series(j: HalfInt, populations: &[f64]) -> LegendreSeries {
    let table = diagonal_table(j);
    let n = j.dim();
    let mut coeffs = vec![0.0; n];
    for (row, p) in populations.iter().enumerate() {
        if *p == 0.0 {
            continue;
        }
        for (l, c) in table.row(row).iter().enumerate() {
            coeffs[l] += p * (2 * l + 1) as f64 / n as f64 * c;
        }
    }
    LegendreSeries::new(coeffs)
}

pub fn wigner_dicke(j: HalfInt, m: HalfInt, theta: f64) -> Result<f64> {
    Ok(dicke_series(j, m)?.eval(theta.cos()))
}

/// Coefficients of the north-pole coherent state from factorials alone.
pub fn scs_north_series(j: HalfInt) -> LegendreSeries {
    let tj = j.twice() as u64;
    let front = ln_factorial(tj) - 0.5 * ((tj + 1) as f64).ln();
    LegendreSeries::new(
        (0..=tj)
            .map(|l| {
                let ln = front - 0.5 * (ln_factorial(tj - l) + ln_factorial(tj + 1 + l));
                (2 * l + 1) as f64 * ln.exp()
            })
            .collect(),
    )
}

pub fn wigner_scs_north(j: HalfInt, theta: f64) -> f64 {
    scs_north_series(j).eval(theta.cos())
}

/// `N_j sin^{2j}(theta)`, the amplitude of the cat interference fringes.
pub fn cat_fringe_amplitude(j: HalfInt, theta: f64) -> f64 {
    let s = theta.sin().abs();
    if s == 0.0 {
        return 0.0;
    }
    (ln_nj_constant(j) + f64::from(j.twice()) * s.ln()).exp()
}

pub fn wigner_cat(params: CatParams, theta: f64, phi: f64) -> f64 {
    CatEvaluator::new(params).eval(theta, phi)
}

/// Closed-form cat evaluation with the coherent series precomputed.
#[derive(Clone, Debug)]
pub struct CatEvaluator {
    pub params: CatParams,
    north: LegendreSeries,
}

impl CatEvaluator {
    pub fn new(params: CatParams) -> Self {
        CatEvaluator { params, north: dicke_series(params.j, params.j).expect("stretched state") }
    }

    /// The azimuthally constant part `A` and fringe amplitude `B >= 0` at `theta`.
    pub fn components(&self, theta: f64) -> (f64, f64) {
        let x = theta.cos();
        let (s, c) = (self.params.vartheta / 2.0).sin_cos();
        let a = c * c * self.north.eval(x) + s * s * self.north.eval(-x);
        let b = self.params.vartheta.sin().max(0.0) * cat_fringe_amplitude(self.params.j, theta);
        (a, b)
    }

    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        let (a, b) = self.components(theta);
        a + b * (f64::from(self.params.j.twice()) * phi - self.params.varphi).cos()
    }
}

/// Spherical-tensor components `tr(rho T_lk)`, scaled for direct evaluation.
#[derive(Clone, Debug)]
pub struct Multipoles {
    j: HalfInt,
    /// `q[l][k + l]`
    q: Vec<Vec<Complex64>>,
}

impl Multipoles {
    pub fn new(state: &SpinState) -> Self {
        let j = state.j();
        let rho = state.density();
        let n = j.dim();
        let mut q = Vec::with_capacity(n);
        for l in 0..n {
            let scale = ((2 * l + 1) as f64 / n as f64).sqrt();
            let li = l as i32;
            // skip tables for bands of rho that are identically zero
            let band_used = |k: i32| (0..n).any(|row| {
                let col = row as i32 - k;
                col >= 0 && (col as usize) < n && rho[(row, col as usize)] != Complex64::new(0.0, 0.0)
            });
            let needed: Vec<i32> = (-li..=li).filter(|&k| band_used(k)).collect();
            let mut ql = vec![Complex64::new(0.0, 0.0); 2 * l + 1];
            if !needed.is_empty() {
                let table = coupling_table(j, l);
                for &k in &needed {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for row in 0..n {
                        // n = projection_at(row); n + k sits at row - k
                        let target = row as i32 - k;
                        if target < 0 || target as usize >= n {
                            continue;
                        }
                        let c = table.get(row, k);
                        if c != 0.0 {
                            acc += rho[(row, target as usize)] * c;
                        }
                    }
                    ql[(k + li) as usize] = acc * scale;
                }
            }
            q.push(ql);
        }
        Multipoles { j, q }
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    /// `h_k(x)` for `k = -2j..2j` (index `k + 2j`) with `W = sum_k e^{-ik phi} h_k`.
    pub fn azimuthal_modes(&self, x: f64) -> Vec<Complex64> {
        let n = self.j.dim();
        let lmax = n - 1;
        let table = HarmonicTable::new(lmax, x);
        let pref = (4.0 * PI / n as f64).sqrt();
        let mut h = vec![Complex64::new(0.0, 0.0); 2 * lmax + 1];
        for (l, ql) in self.q.iter().enumerate() {
            for (kk, qlk) in ql.iter().enumerate() {
                if *qlk == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let k = kk as i32 - l as i32;
                let ak = k.unsigned_abs() as usize;
                let sign = if k < 0 && ak % 2 == 1 { -1.0 } else { 1.0 };
                h[(k + lmax as i32) as usize] += qlk * (pref * sign * table.get(l, ak));
            }
        }
        h
    }

    pub fn eval(&self, theta: f64, phi: f64) -> Result<f64> {
        let modes = self.azimuthal_modes(theta.cos());
        evaluate_modes(&modes, phi)
    }
}

/// `sum_k e^{-ik phi} h_k`, rejecting a non-negligible imaginary part.
pub fn evaluate_modes(modes: &[Complex64], phi: f64) -> Result<f64> {
    let lmax = (modes.len() / 2) as i32;
    let mut acc = Complex64::new(0.0, 0.0);
    for (kk, h) in modes.iter().enumerate() {
        let k = kk as i32 - lmax;
        acc += h * Complex64::from_polar(1.0, -f64::from(k) * phi);
    }
    if acc.im.abs() > IMAGINARY_LIMIT {
        return Err(Error::ImaginaryResidue(acc.im.abs()));
    }
    Ok(acc.re)
}

pub fn wigner_generic(state: &SpinState, theta: f64, phi: f64) -> Result<f64> {
    Multipoles::new(state).eval(theta, phi)
}

/// How a state's Wigner function is evaluated fastest.
#[derive(Clone, Debug)]
pub enum StateStructure {
    /// `W` depends only on `n . axis`, through a Legendre series.
    Axial { axis: [f64; 3], series: LegendreSeries },
    /// Two-component superposition of `|j,j>` and `|j,-j>`.
    Cat(CatParams),
    General,
}

const STRUCTURE_TOL: f64 = 1e-14;

pub fn classify(state: &SpinState) -> StateStructure {
    let j = state.j();
    let n = j.dim();
    let z = [0.0, 0.0, 1.0];
    if j.twice() == 0 {
        return StateStructure::Axial { axis: z, series: LegendreSeries::new(vec![1.0]) };
    }
    if j.twice() == 1 {
        // every qubit state is axisymmetric about its Bloch vector
        let r = state.bloch_vector();
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        let axis = if len > 0.0 { r.map(|v| v / len) } else { z };
        return StateStructure::Axial {
            axis,
            series: LegendreSeries::new(vec![0.5, 0.5 * 3f64.sqrt() * len.min(1.0)]),
        };
    }
    let rho = state.density();
    let off_diagonal = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|(r, c)| r != c)
        .fold(0.0f64, |m, (r, c)| m.max(rho[(r, c)].norm()));
    if off_diagonal <= STRUCTURE_TOL {
        let populations: Vec<f64> = (0..n).map(|r| rho[(r, r)].re).collect();
        return StateStructure::Axial { axis: z, series: diagonal_series(j, &populations) };
    }
    if let StateKind::Pure(c) = state.kind() {
        let interior = (1..n - 1).fold(0.0f64, |m, r| m.max(c[r].norm()));
        if interior <= STRUCTURE_TOL {
            let (top, bottom) = (c[0], c[n - 1]);
            let vartheta = 2.0 * bottom.norm().atan2(top.norm());
            let varphi = bottom.arg() - top.arg();
            if let Ok(params) = CatParams::new(j, vartheta, varphi) {
                return StateStructure::Cat(params);
            }
        }
        // a coherent state saturates |<J>| = j
        let jv = state.spin_expectation();
        let len = (jv[0] * jv[0] + jv[1] * jv[1] + jv[2] * jv[2]).sqrt();
        if (len - j.to_f64()).abs() < 1e-9 {
            return StateStructure::Axial {
                axis: jv.map(|v| v / len),
                series: dicke_series(j, j).expect("stretched state"),
            };
        }
    }
    StateStructure::General
}

/// Evaluates `W` for one state through the fastest available route.
#[derive(Clone, Debug)]
pub enum WignerEvaluator {
    Axial { axis: [f64; 3], series: LegendreSeries },
    Cat(CatEvaluator),
    Multipole(Multipoles),
}

impl WignerEvaluator {
    pub fn new(state: &SpinState) -> Self {
        match classify(state) {
            StateStructure::Axial { axis, series } => WignerEvaluator::Axial { axis, series },
            StateStructure::Cat(p) => WignerEvaluator::Cat(CatEvaluator::new(p)),
            StateStructure::General => WignerEvaluator::Multipole(Multipoles::new(state)),
        }
    }

    pub fn eval(&self, theta: f64, phi: f64) -> Result<f64> {
        match self {
            WignerEvaluator::Axial { axis, series } => {
                let p = to_cartesian(theta, phi);
                let x = (p[0] * axis[0] + p[1] * axis[1] + p[2] * axis[2]).clamp(-1.0, 1.0);
                Ok(series.eval(x))
            }
            WignerEvaluator::Cat(c) => Ok(c.eval(theta, phi)),
            WignerEvaluator::Multipole(m) => m.eval(theta, phi),
        }
    }

    /// Values along one latitude.
    pub fn row(&self, theta: f64, phis: &[f64]) -> Result<Vec<f64>> {
        match self {
            WignerEvaluator::Multipole(m) => {
                let modes = m.azimuthal_modes(theta.cos());
                phis.iter().map(|&phi| evaluate_modes(&modes, phi)).collect()
            }
            other => phis.iter().map(|&phi| other.eval(theta, phi)).collect(),
        }
    }
}

/// `W` sampled on Gauss–Legendre nodes in `cos(theta)` times a uniform `phi` grid.
#[derive(Clone, Debug)]
pub struct WignerField {
    pub j: HalfInt,
    /// Ascending.
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    /// Row-major, `theta` outer.
    pub values: Vec<f64>,
    /// Invariant-measure weight of each `theta` row, already multiplied by the `phi` spacing.
    pub row_weights: Vec<f64>,
}

impl WignerField {
    pub fn value(&self, i_theta: usize, i_phi: usize) -> f64 {
        self.values[i_theta * self.phis.len() + i_phi]
    }

    /// Weight of one sample, `(2j+1)/(4pi) sin(theta) dtheta dphi`.
    pub fn measure_weight(&self, i_theta: usize, _i_phi: usize) -> f64 {
        self.row_weights[i_theta]
    }

    /// `sum W dmu`; one for every state.
    pub fn integral(&self) -> f64 {
        let np = self.phis.len();
        self.row_weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * self.values[i * np..(i + 1) * np].iter().sum::<f64>())
            .sum()
    }

    /// `sum |W| dmu`.
    pub fn abs_integral(&self) -> f64 {
        let np = self.phis.len();
        self.row_weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * self.values[i * np..(i + 1) * np].iter().map(|v| v.abs()).sum::<f64>())
            .sum()
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// CSV with header `theta,phi,w`, `theta` outer, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "theta,phi,w")?;
        for (i, theta) in self.thetas.iter().enumerate() {
            for (k, phi) in self.phis.iter().enumerate() {
                writeln!(out, "{theta:.16e},{phi:.16e},{:.16e}", self.value(i, k))?;
            }
        }
        Ok(())
    }
}

/// Default azimuthal resolution for spin `j`.
pub fn default_n_phi(j: HalfInt) -> usize {
    ((4 * j.twice() + 32) as usize).max(64)
}

pub fn wigner_grid(state: &SpinState, n_theta: usize, n_phi: usize) -> Result<WignerField> {
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::Domain(format!(
            "grid needs n_theta >= 2 and n_phi >= 1, got {n_theta}x{n_phi}"
        )));
    }
    let j = state.j();
    let (nodes, weights) = gauss_legendre(n_theta);
    // nodes ascend in x, so reversing gives ascending theta
    let thetas: Vec<f64> = nodes.iter().rev().map(|x| x.clamp(-1.0, 1.0).acos()).collect();
    let dphi = 2.0 * PI / n_phi as f64;
    let phis: Vec<f64> = (0..n_phi).map(|k| k as f64 * dphi).collect();
    let scale = j.dim() as f64 / (4.0 * PI) * dphi;
    let row_weights: Vec<f64> = weights.iter().rev().map(|w| w * scale).collect();
    let evaluator = WignerEvaluator::new(state);
    let rows: Vec<Vec<f64>> = thetas
        .par_iter()
        .map(|&theta| evaluator.row(theta, &phis))
        .collect::<Result<_>>()?;
    Ok(WignerField { j, thetas, phis, values: rows.concat(), row_weights })
}
