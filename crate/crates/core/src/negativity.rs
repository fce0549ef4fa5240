//! Integrated Wigner negativity
//! `delta = ((2j+1)/(4pi) int |W| dOmega - 1) / 2`.
//!
//! Since `W` integrates to one, `delta` equals the invariant-measure integral
//! of the negative part of `W`; every method here integrates that negative
//! part directly so a nonnegative `W` gives exactly zero.

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::chebyshev::{colleague_eigenvalues, trim};
use crate::numerics::quadrature::{gauss_legendre, gauss_legendre_integrate, integrate_adaptive};
use crate::numerics::{double_factorial_ratio, nj_constant, HalfInt, LegendreSeries};
use crate::states::{CatParams, SpinState};
use crate::wigner::{classify, default_n_phi, dicke_series, evaluate_modes, CatEvaluator, Multipoles, StateStructure};

/// Default absolute tolerance on `delta`.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Smallest tolerance accepted by [`negativity`].
pub const MIN_TOL: f64 = 1e-12;
/// Node budget of the grid-adaptive method, summed over refinement levels.
pub const GRID_NODE_CAP: u64 = 1 << 22;
/// Roots closer than this are merged.
pub const ROOT_SEPARATION: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AxisymmetricExact,
    CatSemianalytic,
    GridAdaptive,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::AxisymmetricExact => "axisymmetric-exact",
            Method::CatSemianalytic => "cat-semianalytic",
            Method::GridAdaptive => "grid-adaptive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativityResult {
    pub delta: f64,
    pub abs_integral: f64,
    pub error_estimate: f64,
    pub n_evaluations: u64,
    pub method: Method,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl NegativityResult {
    fn new(delta: f64, error_estimate: f64, n_evaluations: u64, method: Method, tol: f64) -> Self {
        let delta = delta.max(0.0);
        NegativityResult {
            delta,
            abs_integral: 1.0 + 2.0 * delta,
            error_estimate,
            n_evaluations,
            method,
            converged: error_estimate <= tol,
            warning: None,
        }
    }

    fn into_result(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                message: format!("{} integration did not reach the requested tolerance", self.method),
                best: Box::new(self),
            })
        }
    }
}

/// Real zeros of a Dicke Wigner function in `x = cos(theta)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    pub j: HalfInt,
    pub m: HalfInt,
    /// Ascending, in `(-1, 1)`.
    pub roots: Vec<f64>,
    pub count: usize,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= MIN_TOL) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance {tol:e} must be at least {MIN_TOL:e}")));
    }
    Ok(())
}

/// Negativity of any state, routed to the fastest applicable method.
pub fn negativity(state: &SpinState, tol: f64) -> Result<NegativityResult> {
    check_tol(tol)?;
    let j = state.j();
    let result = match classify(state) {
        StateStructure::Axial { series, .. } => axial_negativity(j, &series, tol)?,
        StateStructure::Cat(params) => cat_negativity(params, tol),
        StateStructure::General => grid_negativity(state, tol)?,
    };
    result.into_result()
}

pub fn negativity_axisymmetric(j: HalfInt, m: HalfInt, tol: f64) -> Result<NegativityResult> {
    check_tol(tol)?;
    axial_negativity(j, &dicke_series(j, m)?, tol)?.into_result()
}

pub fn negativity_cat(params: CatParams, tol: f64) -> Result<NegativityResult> {
    check_tol(tol)?;
    cat_negativity(params, tol).into_result()
}

/// The general-purpose method, usable on any state.
pub fn negativity_grid_adaptive(state: &SpinState, tol: f64) -> Result<NegativityResult> {
    check_tol(tol)?;
    grid_negativity(state, tol)?.into_result()
}

/// `sin(vartheta) N_j sigma(j)/pi (2j)!!/(2j-1)!!`, `sigma = 1` for integer
/// `j` and `pi/2` otherwise.
pub fn cat_bound(params: CatParams) -> f64 {
    let j = params.j;
    let s = params.vartheta.sin().max(0.0);
    if s == 0.0 {
        return 0.0;
    }
    let sigma = if j.is_integer() { 1.0 } else { PI / 2.0 };
    s * sigma / PI * (nj_constant(j).ln() + double_factorial_ratio(j).ln()).exp()
}

/// Distinct real roots of `W_{|j,m>}` in `x = cos(theta)`.
///
/// Colleague-matrix roots are polished by bisection and their sign-changing
/// subset is checked against a dense scan that is uniform in `theta`.
pub fn dicke_roots(j: HalfInt, m: HalfInt) -> Result<RootReport> {
    let series = dicke_series(j, m)?;
    let candidates = colleague_roots(&series)?;
    let scanned = scan_roots(&series, 10 * j.dim());
    let crossing = candidates.iter().filter(|r| !r.tangential).count();
    if crossing != scanned.len() {
        return Err(Error::OracleDisagreement(format!(
            "j={j}, m={m}: colleague matrix gives {crossing} sign changes, dense scan gives {}",
            scanned.len()
        )));
    }
    let roots = dedupe(candidates.into_iter().map(|r| r.x).collect());
    Ok(RootReport { j, m, count: roots.len(), roots })
}

/// `(m*, delta*)` over `m >= 0`; ties within `tol` go to the smaller `m`.
pub fn argmax_dicke_negativity(j: HalfInt, tol: f64) -> Result<(HalfInt, f64)> {
    HalfInt::spin(j.twice())?;
    let ms: Vec<HalfInt> = j.projections().filter(|m| m.twice() >= 0).rev().collect();
    let deltas: Vec<f64> = ms
        .par_iter()
        .map(|&m| negativity_axisymmetric(j, m, tol).map(|r| r.delta))
        .collect::<Result<_>>()?;
    let mut best = (ms[0], deltas[0]);
    for (&m, &d) in ms.iter().zip(&deltas).skip(1) {
        if d > best.1 + tol {
            best = (m, d);
        }
    }
    Ok(best)
}

/// `delta(|j,m>)` for every `m = -j..j` (ascending), evaluated in parallel.
pub fn dicke_basis_negativities(j: HalfInt, tol: f64) -> Result<Vec<(HalfInt, NegativityResult)>> {
    HalfInt::spin(j.twice())?;
    let ms: Vec<HalfInt> = j.projections().rev().collect();
    ms.par_iter()
        .map(|&m| negativity_axisymmetric(j, m, tol).map(|r| (m, r)))
        .collect()
}

// ---------------------------------------------------------------------------
// axisymmetric

#[derive(Clone, Copy, Debug)]
struct Candidate {
    x: f64,
    tangential: bool,
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn colleague_roots(series: &LegendreSeries) -> Result<Vec<Candidate>> {
    let cheb = series.to_chebyshev();
    let coeffs = trim(&cheb, 1e-14);
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let eig = colleague_eigenvalues(coeffs)?;
    let f = |x: f64| series.eval(x);
    let scale = series.abs_sum();
    let mut out = Vec::new();
    for z in eig {
        if z.im.abs() > 1e-6 || z.re.abs() >= 1.0 + 1e-6 {
            continue;
        }
        let x0 = z.re.clamp(-1.0, 1.0);
        if let Some(c) = polish(&f, x0, scale) {
            if c.x > -1.0 && c.x < 1.0 {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| a.x.total_cmp(&b.x));
    out.dedup_by(|b, a| (b.x - a.x).abs() < ROOT_SEPARATION);
    Ok(out)
}

fn polish(f: &impl Fn(f64) -> f64, x0: f64, scale: f64) -> Option<Candidate> {
    let mut h = 1e-13;
    while h < 1e-3 {
        let (a, b) = ((x0 - h).max(-1.0), (x0 + h).min(1.0));
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            return Some(Candidate { x: a, tangential: false });
        }
        if fb == 0.0 {
            return Some(Candidate { x: b, tangential: false });
        }
        if (fa < 0.0) != (fb < 0.0) {
            return Some(Candidate { x: bisect(f, a, b, fa), tangential: false });
        }
        h *= 4.0;
    }
    // no sign change nearby: keep only a genuine touching zero
    (f(x0).abs() <= 1e-10 * scale).then_some(Candidate { x: x0, tangential: true })
}

/// Sign-change roots from `n` samples uniform in `theta`.
fn scan_roots(series: &LegendreSeries, n: usize) -> Vec<f64> {
    let f = |x: f64| series.eval(x);
    let xs: Vec<f64> = (0..=n).map(|i| (PI * i as f64 / n as f64).cos()).rev().collect();
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in &xs {
        let v = f(x);
        if v == 0.0 {
            if x > -1.0 && x < 1.0 {
                roots.push(x);
            }
            prev = None;
            continue;
        }
        if let Some((px, pv)) = prev {
            if (pv < 0.0) != (v < 0.0) {
                roots.push(bisect(&f, px, x, pv));
            }
        }
        prev = Some((x, v));
    }
    roots
}

fn dedupe(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|b, a| (*b - *a).abs() < ROOT_SEPARATION);
    xs
}

fn axial_negativity(j: HalfInt, series: &LegendreSeries, tol: f64) -> Result<NegativityResult> {
    let scan_points = 10 * j.dim();
    let scanned = scan_roots(series, scan_points);
    let colleague = match colleague_roots(series) {
        Ok(c) => c,
        Err(Error::Eigen(reason)) => {
            let mut r = axial_adaptive(j, series, tol);
            r.warning = Some(format!("root finder failed ({reason}); used adaptive quadrature"));
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    // extra breakpoints are harmless, missing ones are not
    let mut breaks = vec![-1.0, 1.0];
    breaks.extend(scanned);
    breaks.extend(colleague.iter().map(|c| c.x));
    let breaks = dedupe(breaks);

    let n_nodes = (j.twice() as usize + 3) / 2;
    let (x1, w1) = gauss_legendre(n_nodes);
    let (x2, w2) = gauss_legendre(n_nodes + 2);
    let f = |x: f64| series.eval(x);
    let mut negative = 0.0;
    let mut rule_gap = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let i1 = gauss_legendre_integrate(f, a, b, &x1, &w1);
        let i2 = gauss_legendre_integrate(f, a, b, &x2, &w2);
        rule_gap += (i1 - i2).abs();
        if i1 < 0.0 {
            negative -= i1;
        }
    }
    let half_dim = j.dim() as f64 / 2.0;
    let intervals = (breaks.len() - 1) as f64;
    let rounding = intervals * 4.0 * f64::EPSILON * series.abs_sum();
    let error = half_dim * (rule_gap + rounding);
    let evals = (scan_points + 1 + series.coeffs().len() + (breaks.len() - 1) * (2 * n_nodes + 2)) as u64;
    Ok(NegativityResult::new(half_dim * negative, error, evals, Method::AxisymmetricExact, tol))
}

/// Fallback for an axisymmetric `W` when the eigen solver fails.
fn axial_adaptive(j: HalfInt, series: &LegendreSeries, tol: f64) -> NegativityResult {
    let half_dim = j.dim() as f64 / 2.0;
    let q = integrate_adaptive(|x| (-series.eval(x)).max(0.0), &[-1.0, 1.0], 0.1 * tol / half_dim, 4_000_000);
    NegativityResult::new(half_dim * q.value, half_dim * q.error, q.evaluations as u64, Method::GridAdaptive, tol)
}

// ---------------------------------------------------------------------------
// cat states

/// `int_0^{2pi} max(-(a + b cos u), 0) du` for `b >= 0`.
pub fn negative_part_cosine(a: f64, b: f64) -> f64 {
    if a.abs() >= b {
        return if a >= 0.0 { 0.0 } else { -2.0 * PI * a };
    }
    let u0 = (-a / b).acos();
    2.0 * a * u0 + 2.0 * b * u0.sin() - 2.0 * PI * a
}

fn cat_negativity(params: CatParams, tol: f64) -> NegativityResult {
    let eval = CatEvaluator::new(params);
    let j = params.j;
    let pref = j.dim() as f64 / (4.0 * PI);
    let integrand = |theta: f64| {
        let (a, b) = eval.components(theta);
        theta.sin() * negative_part_cosine(a, b)
    };
    // kinks sit where |A| = B or A changes sign
    let n = 20 * j.dim();
    let g = |theta: f64| {
        let (a, b) = eval.components(theta);
        (a.abs() - b, a)
    };
    let mut breaks = vec![0.0];
    let mut prev = g(0.0);
    let mut prev_t = 0.0;
    for i in 1..=n {
        let t = PI * i as f64 / n as f64;
        let cur = g(t);
        for select in [0usize, 1] {
            let pick = |v: (f64, f64)| if select == 0 { v.0 } else { v.1 };
            if (pick(prev) < 0.0) != (pick(cur) < 0.0) {
                let h = |s: f64| pick(g(s));
                breaks.push(bisect(&h, prev_t, t, pick(prev)));
            }
        }
        prev = cur;
        prev_t = t;
    }
    breaks.push(PI);
    let breaks = dedupe(breaks);
    let q = integrate_adaptive(integrand, &breaks, 0.1 * tol / pref, 4_000_000);
    let evals = (q.evaluations + n + 1) as u64;
    NegativityResult::new(pref * q.value, pref * q.error, evals, Method::CatSemianalytic, tol)
}

// ---------------------------------------------------------------------------
// general states

/// `W(phi) = sum_k e^{-ik phi} h_k` on one latitude.
struct Latitude<'a> {
    modes: &'a [Complex64],
    lmax: i32,
}

impl Latitude<'_> {
    /// `(W, W', W'')`. Phases come from a recurrence, not one `sin_cos` per mode.
    fn jet(&self, phi: f64) -> (f64, f64, f64) {
        let centre = self.lmax as usize;
        let (s, c) = phi.sin_cos();
        let step = Complex64::new(c, -s);
        let mut p = Complex64::new(1.0, 0.0);
        let mut w = self.modes[centre].re;
        let (mut d1, mut d2) = (0.0, 0.0);
        for k in 1..=centre {
            p *= step;
            // h_k e^{-ik phi} + h_{-k} e^{ik phi}
            let plus = self.modes[centre + k] * p;
            let minus = self.modes[centre - k] * p.conj();
            let kf = k as f64;
            w += plus.re + minus.re;
            // d/dphi: -ik h_k e^{-ik phi} + ik h_{-k} e^{ik phi}
            d1 += kf * (plus.im - minus.im);
            d2 -= kf * kf * (plus.re + minus.re);
        }
        (w, d1, d2)
    }

    fn value(&self, phi: f64) -> f64 {
        self.jet(phi).0
    }

    /// Real antiderivative.
    fn primitive(&self, phi: f64) -> f64 {
        let centre = self.lmax as usize;
        let (s, c) = phi.sin_cos();
        let step = Complex64::new(c, -s);
        let mut p = Complex64::new(1.0, 0.0);
        let mut acc = self.modes[centre].re * phi;
        for k in 1..=centre {
            p *= step;
            let kf = k as f64;
            // Re(h e^{-ik phi} / (-ik)) = -Im(h e^{-ik phi}) / k
            acc += ((self.modes[centre - k] * p.conj()).im - (self.modes[centre + k] * p).im) / kf;
        }
        acc
    }

    /// Sign changes over one period, sorted in `[0, 2pi)`.
    ///
    /// Critical points are bracketed from `n` samples of the derivative; `W` is
    /// monotone between consecutive ones, so each sign change there is a single
    /// root. A narrow negative dip is found even when no sample of `W` falls in it.
    fn sign_changes(&self, n: usize) -> Result<Vec<f64>> {
        // one complex evaluation guards against non-Hermitian modes
        evaluate_modes(self.modes, 1.0)?;
        let dphi = 2.0 * PI / n as f64;
        let slope = |phi: f64| {
            let (_, d1, d2) = self.jet(phi);
            (d1, d2)
        };
        let slopes: Vec<f64> = (0..n).map(|i| slope(i as f64 * dphi).0).collect();
        let mut critical = Vec::new();
        for i in 0..n {
            let (a, b) = (slopes[i], slopes[(i + 1) % n]);
            let (pa, pb) = (i as f64 * dphi, (i + 1) as f64 * dphi);
            if a == 0.0 {
                critical.push(pa);
            } else if b != 0.0 && (a < 0.0) != (b < 0.0) {
                critical.push(newton_bracketed(&slope, pa, pb, a));
            }
        }
        if critical.is_empty() {
            return Ok(Vec::new());
        }
        let values: Vec<f64> = critical.iter().map(|&c| self.value(c)).collect();
        let level = |phi: f64| {
            let (w, d1, _) = self.jet(phi);
            (w, d1)
        };
        let tau = 2.0 * PI;
        let mut roots = Vec::new();
        for i in 0..critical.len() {
            let (a, fa) = (critical[i], values[i]);
            let next = (i + 1) % critical.len();
            let (b, fb) = (if next == 0 { critical[0] + tau } else { critical[next] }, values[next]);
            if fa == 0.0 {
                roots.push(a);
            } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
                roots.push(newton_bracketed(&level, a, b, fa).rem_euclid(tau));
            }
        }
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }

    /// Exact negative-part integral over one period, using `n` samples to find sign changes.
    fn negative_part(&self, n: usize) -> Result<f64> {
        let roots = self.sign_changes(n)?;
        if roots.is_empty() {
            let mean = self.modes[self.lmax as usize].re;
            return Ok(if mean < 0.0 { -2.0 * PI * mean } else { 0.0 });
        }
        let mut negative = 0.0;
        for (i, &a) in roots.iter().enumerate() {
            let b = if i + 1 < roots.len() { roots[i + 1] } else { roots[0] + 2.0 * PI };
            if b - a <= 0.0 {
                continue;
            }
            let integral = self.primitive(b) - self.primitive(a);
            if integral < 0.0 {
                negative -= integral;
            }
        }
        Ok(negative)
    }
}

/// Root of `f` in `[a, b]` given a sign change (`fa = f(a)`), by Newton steps
/// that fall back to bisection whenever they leave the bracket.
fn newton_bracketed(fdf: &impl Fn(f64) -> (f64, f64), mut a: f64, mut b: f64, fa: f64) -> f64 {
    let negative_left = fa < 0.0;
    let mut x = 0.5 * (a + b);
    for _ in 0..100 {
        let (f, df) = fdf(x);
        if f == 0.0 {
            return x;
        }
        if (f < 0.0) == negative_left {
            a = x;
        } else {
            b = x;
        }
        let newton = x - f / df;
        let next = if df != 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// Colatitudes where the number of azimuthal sign changes jumps. The
/// latitude integrand has a kink at each, so they become panel boundaries.
fn latitude_kinks(multipoles: &Multipoles, lmax: i32, n_theta: usize, n_phi: usize) -> Result<Vec<f64>> {
    let count = |theta: f64| -> Result<usize> {
        let modes = multipoles.azimuthal_modes(theta.cos());
        Ok((Latitude { modes: &modes, lmax }).sign_changes(n_phi)?.len())
    };
    let thetas: Vec<f64> = (0..=n_theta).map(|i| PI * i as f64 / n_theta as f64).collect();
    let counts: Vec<usize> = thetas.iter().map(|&t| count(t)).collect::<Result<_>>()?;
    let mut kinks = Vec::new();
    for i in 0..n_theta {
        if counts[i] == counts[i + 1] {
            continue;
        }
        let (mut a, mut b) = (thetas[i], thetas[i + 1]);
        let ca = counts[i];
        while b - a > 1e-10 {
            let mid = 0.5 * (a + b);
            if count(mid)? == ca {
                a = mid;
            } else {
                b = mid;
            }
        }
        kinks.push(0.5 * (a + b));
    }
    Ok(kinks)
}

fn grid_negativity(state: &SpinState, tol: f64) -> Result<NegativityResult> {
    let j = state.j();
    let multipoles = Multipoles::new(state);
    let lmax = j.twice();
    let pref = j.dim() as f64 / (4.0 * PI);
    let mut n_phi = default_n_phi(j);
    let mut total_nodes: u64 = 0;
    let mut previous: Option<f64> = None;
    loop {
        let n_theta = 20 * j.dim();
        let mut breaks = vec![0.0];
        breaks.extend(latitude_kinks(&multipoles, lmax, n_theta, n_phi)?);
        breaks.push(PI);
        // the kink search costs about 45 latitudes per kink on top of the scan
        total_nodes += ((n_theta + 1 + 45 * (breaks.len() - 2)) * n_phi) as u64;

        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let latitudes = Cell::new(0usize);
        // integrate in theta: dx = sin(theta) dtheta removes the pole singularities of odd modes
        let inner = |theta: f64| {
            latitudes.set(latitudes.get() + 1);
            let modes = multipoles.azimuthal_modes(theta.cos());
            match (Latitude { modes: &modes, lmax }).negative_part(n_phi) {
                Ok(v) => theta.sin() * v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        };
        let budget = ((GRID_NODE_CAP.saturating_sub(total_nodes)) / n_phi as u64) as usize;
        let q = integrate_adaptive(inner, &breaks, 0.1 * tol / pref, budget.max(30 * breaks.len()));
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        total_nodes += (latitudes.get() * n_phi) as u64;
        let delta = pref * q.value;
        let change = previous.map_or(f64::INFINITY, |p| (delta - p).abs());
        let error = (pref * q.error).max(if change.is_finite() { change } else { pref * q.error });
        let mut result = NegativityResult::new(delta, error, total_nodes, Method::GridAdaptive, tol);
        result.converged = q.converged && change < tol;
        if result.converged {
            return Ok(result);
        }
        if total_nodes >= GRID_NODE_CAP || !q.converged {
            result.converged = false;
            return Ok(result);
        }
        previous = Some(delta);
        n_phi *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{cat, dicke, ghz, maximally_mixed, noon, qubit_bloch, rotate};

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    const QUBIT: f64 = 0.077_350_269_189_625_76;

    #[test]
    fn qubit_value() {
        let r = negativity_axisymmetric(h(1), h(1), DEFAULT_TOL).unwrap();
        assert!((r.delta - (1.0 / 3f64.sqrt() - 0.5)).abs() < 1e-14, "{r:?}");
        assert_eq!(r.method, Method::AxisymmetricExact);
        assert!((r.abs_integral - 1.0 - 2.0 * r.delta).abs() < 1e-15);
        let roots = dicke_roots(h(1), h(1)).unwrap();
        assert_eq!(roots.count, 1);
        assert!((roots.roots[0] + 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn negative_part_closed_form() {
        // brute-force oracle
        for (a, b) in [(0.3, 1.0), (-0.3, 1.0), (0.0, 2.0), (-2.0, 1.0), (2.0, 1.0), (-0.99, 1.0)] {
            let n = 200_000;
            let brute: f64 = (0..n)
                .map(|i| (-(a + b * (2.0 * PI * (i as f64 + 0.5) / n as f64).cos())).max(0.0))
                .sum::<f64>()
                * 2.0
                * PI
                / n as f64;
            assert!((negative_part_cosine(a, b) - brute).abs() < 1e-8, "{a} {b}");
        }
    }

    #[test]
    fn dicke_reference_values() {
        // high-precision reference values from an independent rational-coefficient computation
        let cases = [
            (h(12), h(12), 5.533_090_927_574_782_8e-5),
            (h(2), h(2), 0.059_023_947_945_018_799),
            (h(6), h(0), 0.547_789_017_069_422_05),
        ];
        for (j, m, expected) in cases {
            let r = negativity_axisymmetric(j, m, DEFAULT_TOL).unwrap();
            assert!((r.delta - expected).abs() < 1e-12, "{j} {m}: {} vs {expected}", r.delta);
        }
    }

    #[test]
    fn root_reference_values() {
        let r = dicke_roots(h(12), h(12)).unwrap();
        assert_eq!(r.count, 8);
        let expected = [
            -0.984624424279, -0.919941266274, -0.807401008369, -0.653282711941,
            -0.466111039271, -0.255967763598, -0.0335405056743, 0.190767607273,
        ];
        for (a, b) in r.roots.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10);
        }
        let r = dicke_roots(h(2), h(2)).unwrap();
        assert_eq!(r.count, 2);
        assert!((r.roots[0] + 0.781423577364).abs() < 1e-10 && (r.roots[1] + 0.113003613636).abs() < 1e-10);
        let r = dicke_roots(h(6), h(0)).unwrap();
        assert_eq!(r.count, 6);
        for (a, b) in r.roots.iter().zip([-0.944937330923, -0.721801848778, -0.367441957133]) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn dispatch() {
        let r = negativity(&ghz(h(6)).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.method, Method::CatSemianalytic);
        let r = negativity(&qubit_bloch([0.1, 0.2, 0.3]).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.method, Method::AxisymmetricExact);
        assert_eq!(r.delta, 0.0);
        let s = rotate(&dicke(h(4), h(2)).unwrap(), 0.7, 0.2).unwrap();
        assert_eq!(negativity(&s, 1e-7).unwrap().method, Method::GridAdaptive);
        assert!(negativity(&s, 1e-13).is_err());
    }

    #[test]
    fn pure_qubits_share_one_value() {
        for (theta, phi) in [(0.0, 0.0), (1.0, 2.0), (PI, 0.0), (2.2, 5.0)] {
            let s = crate::states::spin_coherent(h(1), theta, phi).unwrap();
            assert!((negativity(&s, DEFAULT_TOL).unwrap().delta - QUBIT).abs() < 1e-12);
        }
        let r = negativity_cat(CatParams::ghz(h(1)).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r.delta - QUBIT).abs() < 1e-9);
    }

    #[test]
    fn cat_against_other_methods() {
        for tj in [2, 5, 8, 12] {
            let p = CatParams::new(h(tj), 0.0, 0.4).unwrap();
            let a = negativity_cat(p, DEFAULT_TOL).unwrap().delta;
            let b = negativity_axisymmetric(h(tj), h(tj), DEFAULT_TOL).unwrap().delta;
            assert!((a - b).abs() < 1e-9, "2j={tj}");
        }
        for tj in [3, 6, 12] {
            let p = CatParams::new(h(tj), 1.1, 0.3).unwrap();
            let a = negativity_cat(p, DEFAULT_TOL).unwrap().delta;
            let b = negativity_grid_adaptive(&cat(p), DEFAULT_TOL).unwrap().delta;
            assert!((a - b).abs() < 1e-7, "2j={tj}: {a} vs {b}");
        }
    }

    #[test]
    fn ghz_noon_and_bound() {
        let a = negativity(&ghz(h(6)).unwrap(), DEFAULT_TOL).unwrap().delta;
        let b = negativity(&noon(h(6), 1.0).unwrap(), DEFAULT_TOL).unwrap().delta;
        assert!((a - b).abs() < 1e-10);
        assert!((a - 0.604_425_3).abs() < 1e-6);
        assert_eq!(cat_bound(CatParams::new(h(4), 0.0, 0.0).unwrap()), 0.0);
        assert!((cat_bound(CatParams::ghz(h(2)).unwrap()) - 2.0 * 40f64.sqrt() / (8.0 * PI)).abs() < 1e-14);
        assert!((cat_bound(CatParams::ghz(h(1)).unwrap()) - 3f64.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_is_positive() {
        for tj in 0..=20 {
            assert_eq!(negativity(&maximally_mixed(h(tj)).unwrap(), DEFAULT_TOL).unwrap().delta, 0.0);
        }
    }

    #[test]
    fn argmax_small_spin() {
        assert_eq!(argmax_dicke_negativity(h(1), DEFAULT_TOL).unwrap().0, h(1));
        let (m, d) = argmax_dicke_negativity(h(20), DEFAULT_TOL).unwrap();
        assert_eq!(m, h(0));
        assert!((d - 1.015_845).abs() < 1e-6);
    }

    #[test]
    fn method_names() {
        assert_eq!(Method::AxisymmetricExact.to_string(), "axisymmetric-exact");
        assert_eq!(Method::CatSemianalytic.to_string(), "cat-semianalytic");
        assert_eq!(Method::GridAdaptive.to_string(), "grid-adaptive");
    }
}
