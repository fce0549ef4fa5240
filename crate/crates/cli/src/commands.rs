use rayon::prelude::*;
use serde::Serialize;

use spin_wigner::kernel::{kernel_bounds, kernel_eigenvalues, EpsilonChoice};
use spin_wigner::negativity::{self as neg, NegativityResult};
use spin_wigner::planar::planar_negativity_number;
use spin_wigner::states::{parse_angle, CatParams, SpinState};
use spin_wigner::suite::{self, CRITERIA};
use spin_wigner::wigner::{default_n_phi, wigner_grid};
use spin_wigner::{Error, HalfInt};

use crate::output::{csv, emit, float, half, json};
use crate::{Format, GlobalOpts};

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_NON_CONVERGENCE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VALIDATION, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
            Error::OracleDisagreement(_) | Error::ImaginaryResidue(_) | Error::Eigen(_) => EXIT_INTERNAL,
            Error::InvalidSpin(_)
            | Error::InvalidProjection { .. }
            | Error::Domain(_)
            | Error::Parse { .. }
            | Error::InvalidState(_) => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn spin(token: &str) -> Result<HalfInt, Failure> {
    let j: HalfInt = token.parse()?;
    Ok(HalfInt::spin(j.twice())?)
}

fn positive_spin(token: &str) -> Result<HalfInt, Failure> {
    let j = spin(token)?;
    if j.twice() < 1 {
        return Err(Failure::validation(format!("spin `{token}` must be at least 1/2")));
    }
    Ok(j)
}

fn state(spec: &str) -> Result<SpinState, Failure> {
    Ok(spec.parse::<SpinState>()?)
}

/// Spins 1/2, 1, ..., j_max.
fn spin_ladder(j_max: HalfInt) -> Vec<HalfInt> {
    (1..=j_max.twice()).map(HalfInt::from_twice).collect()
}

pub fn kernel_spectrum(g: &GlobalOpts, j: &str, epsilon: Option<&str>) -> Outcome {
    let j = spin(j)?;
    let eps = match epsilon {
        None => EpsilonChoice::standard(j),
        Some(text) => {
            let signs = text
                .split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    other => Err(Failure::validation(format!("bad epsilon sign `{other}`"))),
                })
                .collect::<Result<Vec<i8>, _>>()?;
            EpsilonChoice::new(j, signs)?
        }
    };
    let spectrum = kernel_eigenvalues(j, &eps)?;
    let rows = spectrum.ascending();
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["m", "eigenvalue"],
            &rows.iter().map(|(m, v)| vec![half(*m), float(*v)]).collect::<Vec<_>>(),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                m: f64,
                eigenvalue: f64,
            }
            json(&rows.iter().map(|(m, v)| Row { m: m.to_f64(), eigenvalue: *v }).collect::<Vec<_>>())?
        }
    };
    emit(g.output.as_deref(), &text)
}

fn negativity_row(r: &NegativityResult) -> Vec<String> {
    vec![
        float(r.delta),
        float(r.abs_integral),
        float(r.error_estimate),
        r.n_evaluations.to_string(),
        r.method.to_string(),
        r.converged.to_string(),
    ]
}

const NEGATIVITY_HEADER: [&str; 6] = ["delta", "abs_integral", "error_estimate", "n_evaluations", "method", "converged"];

pub fn negativity(g: &GlobalOpts, spec: &str) -> Outcome {
    let s = state(spec)?;
    let (result, failure) = match neg::negativity(&s, g.tol) {
        Ok(r) => (r, None),
        Err(Error::NonConvergence { message, best }) => {
            (*best, Some(Failure { code: EXIT_NON_CONVERGENCE, message }))
        }
        Err(e) => return Err(e.into()),
    };
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&result)?,
        Format::Csv => csv(&NEGATIVITY_HEADER, &[negativity_row(&result)]),
    };
    emit(g.output.as_deref(), &text)?;
    if let Some(w) = &result.warning {
        eprintln!("warning: {w}");
    }
    failure.map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct SpinDelta {
    j: f64,
    delta: f64,
}

pub fn sweep_dicke_basis(g: &GlobalOpts, j: &str) -> Outcome {
    let j = spin(j)?;
    let rows = neg::dicke_basis_negativities(j, g.tol)?;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["m", "delta"],
            &rows.iter().map(|(m, r)| vec![half(*m), float(r.delta)]).collect::<Vec<_>>(),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                m: f64,
                delta: f64,
            }
            json(&rows.iter().map(|(m, r)| Row { m: m.to_f64(), delta: r.delta }).collect::<Vec<_>>())?
        }
    };
    emit(g.output.as_deref(), &text)
}

pub fn sweep_sequence(g: &GlobalOpts, n: u32, j_max: &str) -> Outcome {
    let j_max = spin(j_max)?;
    let first = HalfInt::from_twice(n as i32);
    if j_max.twice() < first.twice() {
        return Err(Failure::validation(format!("--j-max must be at least n/2 = {first}")));
    }
    let spins: Vec<HalfInt> = (first.twice()..=j_max.twice()).step_by(2).map(HalfInt::from_twice).collect();
    let deltas: Vec<f64> = spins
        .par_iter()
        .map(|&j| neg::negativity_axisymmetric(j, j - HalfInt::from_int(n as i32), g.tol).map(|r| r.delta))
        .collect::<Result<_, _>>()?;
    let planar = planar_negativity_number(n, g.tol)?.delta;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut rows: Vec<Vec<String>> =
                spins.iter().zip(&deltas).map(|(j, d)| vec![half(*j), float(*d)]).collect();
            rows.push(vec!["planar_limit".into(), float(planar)]);
            csv(&["j", "delta"], &rows)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Sequence {
                n: u32,
                rows: Vec<SpinDelta>,
                planar_limit: f64,
            }
            json(&Sequence {
                n,
                rows: spins.iter().zip(&deltas).map(|(j, d)| SpinDelta { j: j.to_f64(), delta: *d }).collect(),
                planar_limit: planar,
            })?
        }
    };
    emit(g.output.as_deref(), &text)
}

pub fn sweep_coherent_decay(g: &GlobalOpts, j_max: &str) -> Outcome {
    let spins = spin_ladder(positive_spin(j_max)?);
    let deltas: Vec<f64> = spins
        .par_iter()
        .map(|&j| neg::negativity_axisymmetric(j, j, g.tol).map(|r| r.delta))
        .collect::<Result<_, _>>()?;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["j", "delta"],
            &spins.iter().zip(&deltas).map(|(j, d)| vec![half(*j), float(*d)]).collect::<Vec<_>>(),
        ),
        Format::Json => json(
            &spins.iter().zip(&deltas).map(|(j, d)| SpinDelta { j: j.to_f64(), delta: *d }).collect::<Vec<_>>(),
        )?,
    };
    emit(g.output.as_deref(), &text)
}

#[derive(Serialize)]
struct BoundRow {
    j: f64,
    vartheta: f64,
    bound: f64,
    exact: f64,
    relative_gap: f64,
}

fn bound_row(j: HalfInt, vartheta: f64, tol: f64) -> Result<BoundRow, Error> {
    let p = CatParams::new(j, vartheta, 0.0)?;
    let exact = neg::negativity_cat(p, tol)?.delta;
    let bound = neg::cat_bound(p);
    let relative_gap = if exact > 0.0 { (bound - exact).abs() / exact } else { f64::NAN };
    Ok(BoundRow { j: j.to_f64(), vartheta, bound, exact, relative_gap })
}

pub fn sweep_cat_bound(g: &GlobalOpts, j_max: &str, vartheta: &str) -> Outcome {
    let spins = spin_ladder(positive_spin(j_max)?);
    let vartheta = parse_angle(vartheta)?;
    CatParams::new(HalfInt::HALF, vartheta, 0.0)?;
    let rows: Vec<BoundRow> = spins
        .par_iter()
        .map(|&j| bound_row(j, vartheta, g.tol))
        .collect::<Result<_, _>>()?;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["j", "bound", "exact"],
            &rows
                .iter()
                .map(|r| vec![format!("{}", r.j), float(r.bound), float(r.exact)])
                .collect::<Vec<_>>(),
        ),
        Format::Json => json(&rows)?,
    };
    emit(g.output.as_deref(), &text)
}

pub fn sweep_kernel_bounds(g: &GlobalOpts, j_max: &str) -> Outcome {
    let spins = spin_ladder(positive_spin(j_max)?);
    let bounds: Vec<(f64, f64)> = spins.par_iter().map(|&j| kernel_bounds(j)).collect();
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(
            &["j", "min", "max"],
            &spins
                .iter()
                .zip(&bounds)
                .map(|(j, (lo, hi))| vec![half(*j), float(*lo), float(*hi)])
                .collect::<Vec<_>>(),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                j: f64,
                min: f64,
                max: f64,
            }
            json(&spins
                .iter()
                .zip(&bounds)
                .map(|(j, (lo, hi))| Row { j: j.to_f64(), min: *lo, max: *hi })
                .collect::<Vec<_>>())?
        }
    };
    emit(g.output.as_deref(), &text)
}

pub fn grid(g: &GlobalOpts, spec: &str, n_theta: usize, n_phi: Option<usize>) -> Outcome {
    let s = state(spec)?;
    let n_phi = n_phi.unwrap_or_else(|| default_n_phi(s.j()));
    let field = wigner_grid(&s, n_theta, n_phi)?;
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            field.write_csv(&mut buf).map_err(|e| Failure::internal(e.to_string()))?;
            String::from_utf8(buf).map_err(|e| Failure::internal(e.to_string()))?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Point {
                theta: f64,
                phi: f64,
                w: f64,
            }
            let np = field.phis.len();
            let points: Vec<Point> = (0..field.values.len())
                .map(|i| Point { theta: field.thetas[i / np], phi: field.phis[i % np], w: field.values[i] })
                .collect();
            json(&points)?
        }
    };
    emit(g.output.as_deref(), &text)
}

pub fn roots(g: &GlobalOpts, j: &str, m: &str) -> Outcome {
    let j = spin(j)?;
    let m: HalfInt = m.parse()?;
    let report = neg::dicke_roots(j, m)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => csv(&["root"], &report.roots.iter().map(|x| vec![float(*x)]).collect::<Vec<_>>()),
    };
    emit(g.output.as_deref(), &text)
}

pub fn cat_bound(g: &GlobalOpts, j: &str, vartheta: &str) -> Outcome {
    let j = positive_spin(j)?;
    let row = bound_row(j, parse_angle(vartheta)?, g.tol)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&row)?,
        Format::Csv => csv(
            &["j", "vartheta", "bound", "exact", "relative_gap"],
            &[vec![format!("{}", row.j), float(row.vartheta), float(row.bound), float(row.exact), float(row.relative_gap)]],
        ),
    };
    emit(g.output.as_deref(), &text)
}

pub fn planar_number(g: &GlobalOpts, n: u32) -> Outcome {
    let r = planar_negativity_number(n, g.tol)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&r)?,
        Format::Csv => csv(&["n", "delta", "error_estimate"], &[vec![n.to_string(), float(r.delta), float(r.error_estimate)]]),
    };
    emit(g.output.as_deref(), &text)
}

pub fn paper_suite(g: &GlobalOpts, only: &[u32]) -> Outcome {
    for id in only {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            return Err(Failure::validation(format!("unknown criterion {id} (valid: 1-{})", CRITERIA.len())));
        }
    }
    let reports: Vec<_> = CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.0))
        .filter_map(|c| suite::run_criterion(c.0))
        .collect();
    let failed = reports.iter().filter(|r| !r.passed).count();
    let text = match g.format.unwrap_or(Format::Csv) {
        Format::Json => json(&reports)?,
        Format::Csv => {
            let mut lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            lines.push(format!("{} of {} criteria passed", reports.len() - failed, reports.len()));
            lines.join("\n") + "\n"
        }
    };
    emit(g.output.as_deref(), &text)?;
    if failed > 0 {
        return Err(Failure::internal(format!("{failed} acceptance criteria failed")));
    }
    Ok(())
}
