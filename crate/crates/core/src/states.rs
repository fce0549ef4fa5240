//! Spin-j states in the Dicke basis (row 0 is `m = j`).

use std::f64::consts::PI;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{validate_pair, HalfInt};
use crate::spin::{pole_rotation, spin_matrices, CMatrix};

pub type CVector = DVector<Complex64>;

const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum StateKind {
    Pure(CVector),
    Mixed(CMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    j: HalfInt,
    kind: StateKind,
}

/// Parameters of `cos(vartheta/2)|j,j> + e^{i varphi} sin(vartheta/2)|j,-j>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatParams {
    pub j: HalfInt,
    pub vartheta: f64,
    pub varphi: f64,
}

impl CatParams {
    /// Validates `vartheta` in `[0, pi]`; `varphi` is reduced into `[0, 2pi)`.
    pub fn new(j: HalfInt, vartheta: f64, varphi: f64) -> Result<Self> {
        if j.twice() < 1 {
            return Err(Error::InvalidSpin(j.to_string()));
        }
        if !(0.0..=PI + 1e-12).contains(&vartheta) {
            return Err(Error::Domain(format!("vartheta={vartheta} outside [0, pi]")));
        }
        if !varphi.is_finite() {
            return Err(Error::Domain("varphi must be finite".into()));
        }
        Ok(CatParams {
            j,
            vartheta: vartheta.min(PI),
            varphi: varphi.rem_euclid(2.0 * PI),
        })
    }

    pub fn ghz(j: HalfInt) -> Result<Self> {
        CatParams::new(j, PI / 2.0, 0.0)
    }
}

impl SpinState {
    pub fn pure(j: HalfInt, coefficients: CVector) -> Result<Self> {
        HalfInt::spin(j.twice())?;
        if coefficients.len() != j.dim() {
            return Err(Error::InvalidState(format!(
                "expected {} coefficients for j={j}, got {}",
                j.dim(),
                coefficients.len()
            )));
        }
        let norm = coefficients.norm_squared();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("state norm^2 is {norm}, not 1")));
        }
        Ok(SpinState { j, kind: StateKind::Pure(coefficients) })
    }

    /// Normalizes `coefficients` before wrapping them.
    pub fn pure_normalized(j: HalfInt, coefficients: CVector) -> Result<Self> {
        let norm = coefficients.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        SpinState::pure(j, coefficients.unscale(norm))
    }

    pub fn mixed(j: HalfInt, density: CMatrix) -> Result<Self> {
        HalfInt::spin(j.twice())?;
        let n = j.dim();
        if density.nrows() != n || density.ncols() != n {
            return Err(Error::InvalidState(format!("density matrix must be {n}x{n}")));
        }
        let herm = (&density - density.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if herm > NORM_TOL {
            return Err(Error::InvalidState(format!("density matrix not Hermitian (residue {herm:e})")));
        }
        let tr = density.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("density matrix trace is {tr}, not 1")));
        }
        let min_ev = density.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        if min_ev < -1e-10 {
            return Err(Error::InvalidState(format!("density matrix has eigenvalue {min_ev:e} < 0")));
        }
        Ok(SpinState { j, kind: StateKind::Mixed(density) })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    pub fn coefficients(&self) -> Option<&CVector> {
        match &self.kind {
            StateKind::Pure(c) => Some(c),
            StateKind::Mixed(_) => None,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.kind, StateKind::Pure(_))
    }

    pub fn density(&self) -> CMatrix {
        match &self.kind {
            StateKind::Pure(c) => c * c.adjoint(),
            StateKind::Mixed(rho) => rho.clone(),
        }
    }

    /// `(<J_x>, <J_y>, <J_z>)`.
    pub fn spin_expectation(&self) -> [f64; 3] {
        let rho = self.density();
        let (jx, jy, jz) = spin_matrices(self.j);
        [jx, jy, jz].map(|op| (&rho * op).trace().re)
    }

    /// Bloch vector `2<J>/(2j)`, unit length for coherent states.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let scale = 1.0 / self.j.to_f64();
        self.spin_expectation().map(|v| v * scale)
    }

    /// `U |psi>` or `U rho U^dagger`.
    pub fn transform(&self, u: &CMatrix) -> SpinState {
        let kind = match &self.kind {
            StateKind::Pure(c) => StateKind::Pure(u * c),
            StateKind::Mixed(rho) => StateKind::Mixed(u * rho * u.adjoint()),
        };
        SpinState { j: self.j, kind }
    }

    /// Magnitude of `tr(rho sigma)` (fidelity for pure states).
    pub fn overlap(&self, other: &SpinState) -> f64 {
        (self.density() * other.density()).trace().re
    }
}

pub fn dicke(j: HalfInt, m: HalfInt) -> Result<SpinState> {
    validate_pair(j, m)?;
    let mut c = CVector::zeros(j.dim());
    c[j.index_of(m)] = Complex64::new(1.0, 0.0);
    SpinState::pure(j, c)
}

pub fn spin_coherent(j: HalfInt, theta: f64, phi: f64) -> Result<SpinState> {
    check_polar(theta)?;
    rotate(&dicke(j, j)?, theta, phi)
}

pub fn cat(params: CatParams) -> SpinState {
    let j = params.j;
    let mut c = CVector::zeros(j.dim());
    let (s, co) = (params.vartheta / 2.0).sin_cos();
    c[0] += Complex64::new(co, 0.0);
    c[j.dim() - 1] += Complex64::from_polar(s, params.varphi);
    SpinState::pure_normalized(j, c).expect("cat state has unit norm")
}

pub fn ghz(j: HalfInt) -> Result<SpinState> {
    Ok(cat(CatParams::ghz(j)?))
}

/// Equal-weight cat with relative phase `varphi`.
pub fn noon(j: HalfInt, varphi: f64) -> Result<SpinState> {
    Ok(cat(CatParams::new(j, PI / 2.0, varphi)?))
}

/// The qubit `(I + r.sigma)/2`.
pub fn qubit_bloch(r: [f64; 3]) -> Result<SpinState> {
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if !len.is_finite() || len > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("Bloch vector length {len} exceeds 1")));
    }
    let half = |z: Complex64| z * 0.5;
    let rho = CMatrix::from_row_slice(
        2,
        2,
        &[
            half(Complex64::new(1.0 + r[2], 0.0)),
            half(Complex64::new(r[0], -r[1])),
            half(Complex64::new(r[0], r[1])),
            half(Complex64::new(1.0 - r[2], 0.0)),
        ],
    );
    SpinState::mixed(HalfInt::HALF, rho)
}

pub fn maximally_mixed(j: HalfInt) -> Result<SpinState> {
    HalfInt::spin(j.twice())?;
    let n = j.dim();
    SpinState::mixed(j, CMatrix::identity(n, n) * Complex64::new(1.0 / n as f64, 0.0))
}

/// Applies the rotation carrying the north pole to `(theta, phi)`.
pub fn rotate(state: &SpinState, theta: f64, phi: f64) -> Result<SpinState> {
    check_polar(theta)?;
    Ok(state.transform(&pole_rotation(state.j, theta, phi)))
}

fn check_polar(theta: f64) -> Result<()> {
    if !(-1e-12..=PI + 1e-12).contains(&theta) {
        return Err(Error::Domain(format!("theta={theta} outside [0, pi]")));
    }
    Ok(())
}

/// Parses an angle in radians: `1.2`, `pi`, `-0.5pi`, `pi/4`, `3pi/4`, `0.25*pi`.
pub fn parse_angle(token: &str) -> Result<f64> {
    let err = |reason: &str| Error::Parse { token: token.to_string(), reason: reason.to_string() };
    let t = token.trim().to_ascii_lowercase();
    let (body, divisor) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.trim().parse::<f64>().map_err(|_| err("bad divisor"))?),
        None => (t.clone(), 1.0),
    };
    let body = body.trim();
    let value = if let Some(prefix) = body.strip_suffix("pi") {
        let prefix = prefix.trim().trim_end_matches('*').trim();
        let factor = match prefix {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p.parse::<f64>().map_err(|_| err("bad multiplier of pi"))?,
        };
        factor * PI
    } else {
        body.parse::<f64>().map_err(|_| err("expected a number or a multiple of pi"))?
    };
    let value = value / divisor;
    if !value.is_finite() {
        return Err(err("angle is not finite"));
    }
    Ok(value)
}

fn parse_spin(token: &str) -> Result<HalfInt> {
    let j: HalfInt = token.trim().parse()?;
    HalfInt::spin(j.twice()).map_err(|_| Error::Parse {
        token: token.to_string(),
        reason: "spin must be a nonnegative integer or half-integer".into(),
    })
}

fn parse_real(token: &str) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| Error::Parse {
        token: token.to_string(),
        reason: "expected a real number".into(),
    })
}

impl FromStr for SpinState {
    type Err = Error;

    /// `dicke:j,m`, `coherent:j,theta,phi`, `cat:j,vartheta,varphi`, `ghz:j`,
    /// `noon:j,varphi`, `bloch:rx,ry,rz`, `mixed:j`.
    fn from_str(spec: &str) -> Result<Self> {
        let (family, rest) = spec.split_once(':').ok_or_else(|| Error::Parse {
            token: spec.to_string(),
            reason: "expected `family:args`".into(),
        })?;
        let args: Vec<&str> = rest.split(',').map(str::trim).collect();
        let expect = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse {
                    token: rest.to_string(),
                    reason: format!("`{family}` takes {n} argument(s), got {}", args.len()),
                })
            }
        };
        match family.trim() {
            "dicke" => {
                expect(2)?;
                let j = parse_spin(args[0])?;
                let m: HalfInt = args[1].parse()?;
                dicke(j, m)
            }
            "coherent" => {
                expect(3)?;
                spin_coherent(parse_spin(args[0])?, parse_angle(args[1])?, parse_angle(args[2])?)
            }
            "cat" => {
                expect(3)?;
                Ok(cat(CatParams::new(parse_spin(args[0])?, parse_angle(args[1])?, parse_angle(args[2])?)?))
            }
            "ghz" => {
                expect(1)?;
                ghz(parse_spin(args[0])?)
            }
            "noon" => {
                expect(2)?;
                noon(parse_spin(args[0])?, parse_angle(args[1])?)
            }
            "bloch" => {
                expect(3)?;
                qubit_bloch([parse_real(args[0])?, parse_real(args[1])?, parse_real(args[2])?])
            }
            "mixed" => {
                expect(1)?;
                maximally_mixed(parse_spin(args[0])?)
            }
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "unknown state family (dicke, coherent, cat, ghz, noon, bloch, mixed)".into(),
            }),
        }
    }
}
