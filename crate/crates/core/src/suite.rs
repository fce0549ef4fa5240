//! The acceptance battery: numbered checks of the headline results, each
//! with a fixed tolerance and a wall-clock budget.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::kernel::{kernel_bounds, kernel_eigenvalues, kernel_matrix, kernel_matrix_rotation_oracle, EpsilonChoice};
use crate::negativity::{
    argmax_dicke_negativity, cat_bound, dicke_roots, negativity, negativity_axisymmetric, negativity_cat,
    negativity_grid_adaptive, DEFAULT_TOL,
};
use crate::numerics::HalfInt;
use crate::planar::planar_negativity_number;
use crate::spin::rotation_unitary;
use crate::states::{cat, dicke, ghz, maximally_mixed, noon, qubit_bloch, spin_coherent, CatParams, SpinState};
use crate::wigner::wigner_grid;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s of {:.0}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.budget_seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(u32, &str, f64); 11] = [
    (1, "qubit negativity", 1.0),
    (2, "kernel bounds", 5.0),
    (3, "Bloch ball positivity", 10.0),
    (4, "root count of the j=6 coherent state", 1.0),
    (5, "GHZ and N00N negativities coincide", 30.0),
    (6, "cat bound quality for j=5..10", 120.0),
    (7, "conjugate Dicke symmetry at j=10", 60.0),
    (8, "most negative Dicke state at j=10 and j=80", 1800.0),
    (9, "number-state limit of |40,39>", 300.0),
    (10, "property suite", 600.0),
    (11, "coherent-state negativity decay", 60.0),
];

/// Outcome of the checks: pass flag and a one-line summary.
type Check = Result<(bool, String)>;

pub fn run_criterion(id: u32) -> Option<CriterionReport> {
    let &(id, title, budget) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = match id {
        1 => qubit_negativity(),
        2 => kernel_bound_values(),
        3 => bloch_ball(),
        4 => coherent_root_count(),
        5 => ghz_equals_noon(),
        6 => cat_bound_quality(),
        7 => conjugate_symmetry(),
        8 => dicke_argmax(),
        9 => number_state_limit(),
        10 => property_suite(),
        11 => coherent_decay(),
        _ => unreachable!("criterion table and dispatch agree"),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let passed = ok && seconds < budget;
    let detail = if ok && !passed { format!("{detail}; over time budget") } else { detail };
    Some(CriterionReport { id, title, passed, detail, seconds, budget_seconds: budget })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

fn h(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn qubit_negativity() -> Check {
    let d = negativity_axisymmetric(h(1), h(1), DEFAULT_TOL)?.delta;
    let expected = 1.0 / 3f64.sqrt() - 0.5;
    Ok(((d - expected).abs() < 1e-9, format!("delta={d:.15}, expected {expected:.15}")))
}

fn kernel_bound_values() -> Check {
    let s = kernel_eigenvalues(h(1), &EpsilonChoice::standard(h(1)))?;
    let r3 = 3f64.sqrt();
    let qubit_ok = (s.eigenvalue(h(1)) - (1.0 + r3) / 2.0).abs() < 1e-12
        && (s.eigenvalue(h(-1)) - (1.0 - r3) / 2.0).abs() < 1e-12;
    let (lo, hi) = kernel_bounds(h(40));
    let ok = qubit_ok && hi > 1.8 && hi < 2.0 && lo > -2.0 && lo < -1.5;
    Ok((ok, format!("qubit spectrum ok={qubit_ok}; j=20 bounds ({lo:.6}, {hi:.6})")))
}

fn bloch_ball() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let radius = 1.0 / 3f64.sqrt() - 1e-6;
    let mut worst_inside: f64 = 0.0;
    for _ in 0..100 {
        let dir = random_unit(&mut rng);
        let len = radius * rng.gen::<f64>().cbrt();
        let d = negativity(&qubit_bloch(dir.map(|v| v * len))?, DEFAULT_TOL)?.delta;
        worst_inside = worst_inside.max(d);
    }
    let mut smallest_pure = f64::INFINITY;
    for _ in 0..100 {
        let s = SpinState::pure_normalized(h(1), random_vector(&mut rng, 2))?;
        smallest_pure = smallest_pure.min(negativity(&s, DEFAULT_TOL)?.delta);
    }
    Ok((
        worst_inside == 0.0 && smallest_pure > 0.0,
        format!("max delta inside ball {worst_inside:e}; min delta over pure states {smallest_pure:.12}"),
    ))
}

fn coherent_root_count() -> Check {
    let r = dicke_roots(h(12), h(12))?;
    Ok((r.count == 8, format!("count={}", r.count)))
}

fn ghz_equals_noon() -> Check {
    let mut worst: f64 = 0.0;
    for tj in [2, 3, 6, 10] {
        let g = negativity(&ghz(h(tj))?, DEFAULT_TOL)?.delta;
        for phase in [0.7, PI] {
            let n = negativity(&noon(h(tj), phase)?, DEFAULT_TOL)?.delta;
            worst = worst.max((g - n).abs());
        }
    }
    Ok((worst < 1e-9, format!("max |delta_GHZ - delta_N00N| = {worst:e}")))
}

fn cat_bound_quality() -> Check {
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for j in 5..=10 {
        let p = CatParams::ghz(HalfInt::from_int(j))?;
        let exact = negativity_cat(p, DEFAULT_TOL)?.delta;
        let bound = cat_bound(p);
        let gap = (bound - exact).abs() / exact;
        worst = worst.max(gap);
        rows.push(format!("j={j}: {gap:.4}"));
    }
    Ok((worst < 0.10, format!("relative gaps {}", rows.join(", "))))
}

fn conjugate_symmetry() -> Check {
    let j = HalfInt::from_int(10);
    let mut worst: f64 = 0.0;
    for m in j.projections().filter(|m| m.twice() > 0) {
        let a = negativity_axisymmetric(j, m, DEFAULT_TOL)?.delta;
        let b = negativity_axisymmetric(j, -m, DEFAULT_TOL)?.delta;
        worst = worst.max((a - b).abs());
    }
    Ok((worst < 1e-10, format!("max |delta(m) - delta(-m)| = {worst:e}")))
}

fn dicke_argmax() -> Check {
    let (m10, d10) = argmax_dicke_negativity(HalfInt::from_int(10), DEFAULT_TOL)?;
    let (m80, d80) = argmax_dicke_negativity(HalfInt::from_int(80), DEFAULT_TOL)?;
    Ok((
        m10 == HalfInt::ZERO && m80 == HalfInt::from_int(16),
        format!("j=10: m*={m10} (delta {d10:.9}); j=80: m*={m80} (delta {d80:.9}), expected 0 and 16"),
    ))
}

fn number_state_limit() -> Check {
    let planar = planar_negativity_number(1, 1e-12)?.delta;
    let spin = negativity_axisymmetric(HalfInt::from_int(40), HalfInt::from_int(39), DEFAULT_TOL)?.delta;
    let gap = (spin - planar).abs();
    Ok((gap < 0.01, format!("delta(|40,39>)={spin:.9}, planar delta(1)={planar:.12}, gap {gap:.3e}")))
}

fn coherent_decay() -> Check {
    let mut prev = f64::INFINITY;
    let mut ok = true;
    let mut last = 0.0;
    for tj in 1..=40 {
        let d = negativity_axisymmetric(h(tj), h(tj), DEFAULT_TOL)?.delta;
        if !(d > 0.0 && d < prev) {
            ok = false;
        }
        prev = d;
        last = d;
    }
    Ok((ok, format!("strictly decreasing and positive: {ok}; delta(|20,20>)={last:e}")))
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
    DVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut notes = Vec::new();
    let mut ok = true;

    // normalization of every constructor
    let states = vec![
        dicke(h(12), h(4))?,
        spin_coherent(h(7), 1.2, 0.3)?,
        cat(CatParams::new(h(9), 1.0, 2.0)?),
        ghz(h(8))?,
        noon(h(5), 0.4)?,
        qubit_bloch([0.3, 0.1, -0.5])?,
        maximally_mixed(h(6))?,
    ];
    let mut worst_norm: f64 = 0.0;
    for s in &states {
        let n = s.j().dim();
        let f = wigner_grid(s, n + 1, 2 * n + 2)?;
        worst_norm = worst_norm.max((f.integral() - 1.0).abs());
    }
    ok &= worst_norm < 1e-8;
    notes.push(format!("normalization {worst_norm:.1e}"));

    // traciality
    let mut worst_trace: f64 = 0.0;
    for tj in 1..=8 {
        let j = h(tj);
        let n = j.dim();
        let a = SpinState::pure_normalized(j, random_vector(&mut rng, n))?;
        let b = SpinState::pure_normalized(j, random_vector(&mut rng, n))?;
        let (fa, fb) = (wigner_grid(&a, n + 1, 2 * n + 2)?, wigner_grid(&b, n + 1, 2 * n + 2)?);
        let np = fa.phis.len();
        let mut s = 0.0;
        for i in 0..fa.thetas.len() {
            for k in 0..np {
                s += fa.measure_weight(i, k) * fa.value(i, k) * fb.value(i, k);
            }
        }
        worst_trace = worst_trace.max((s - a.overlap(&b)).abs());
    }
    ok &= worst_trace < 1e-8;
    notes.push(format!("traciality {worst_trace:.1e}"));

    // rotation invariance of delta
    let mut worst_rot: f64 = 0.0;
    for tj in [1, 4, 7] {
        let j = h(tj);
        let base = [dicke(j, h(tj - 2))?, SpinState::pure_normalized(j, random_vector(&mut rng, j.dim()))?];
        for s in &base {
            let d0 = negativity(s, DEFAULT_TOL)?.delta;
            for _ in 0..2 {
                let u = rotation_unitary(j, random_unit(&mut rng), rng.gen_range(0.0..2.0 * PI));
                let d1 = negativity(&s.transform(&u), DEFAULT_TOL)?.delta;
                worst_rot = worst_rot.max((d0 - d1).abs());
            }
        }
    }
    ok &= worst_rot < 5.0 * DEFAULT_TOL;
    notes.push(format!("rotation invariance {worst_rot:.1e}"));

    // kernel constructions
    let mut worst_kernel: f64 = 0.0;
    for tj in 1..=10 {
        for _ in 0..20 {
            let (theta, phi) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let a = kernel_matrix(h(tj), theta, phi);
            let b = kernel_matrix_rotation_oracle(h(tj), theta, phi);
            let diff = (&a.entries - &b.entries).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            worst_kernel = worst_kernel.max(diff);
        }
    }
    ok &= worst_kernel < 1e-10;
    notes.push(format!("kernel equivalence {worst_kernel:.1e}"));

    // method agreement
    let mut worst_method: f64 = 0.0;
    for (tj, tm) in [(2, 0), (5, 1), (8, -4), (20, 14)] {
        let a = negativity_axisymmetric(h(tj), h(tm), DEFAULT_TOL)?.delta;
        let b = negativity_grid_adaptive(&dicke(h(tj), h(tm))?, DEFAULT_TOL)?.delta;
        worst_method = worst_method.max((a - b).abs());
    }
    for (tj, vartheta, varphi) in [(4, PI / 2.0, 0.0), (7, 1.0, 2.0), (12, 2.0, 0.5)] {
        let p = CatParams::new(h(tj), vartheta, varphi)?;
        let a = negativity_cat(p, DEFAULT_TOL)?.delta;
        let b = negativity_grid_adaptive(&cat(p), DEFAULT_TOL)?.delta;
        worst_method = worst_method.max((a - b).abs());
    }
    for tj in [3, 10, 20] {
        let a = negativity_cat(CatParams::new(h(tj), 0.0, 0.0)?, DEFAULT_TOL)?.delta;
        let b = negativity_axisymmetric(h(tj), h(tj), DEFAULT_TOL)?.delta;
        worst_method = worst_method.max((a - b).abs());
    }
    ok &= worst_method < 1e-7;
    notes.push(format!("method agreement {worst_method:.1e}"));

    Ok((ok, notes.join(", ")))
}
