//! R-charges: positive arrow gradings with face sums 2 and vertex sums 2.
//!
//! Two independent deciders live here. The constructive route reads the
//! charge off the zigzag directions in the cover (needs the zigzag condition
//! to hold); the feasibility route solves the defining linear system with a
//! max-min slack objective and knows nothing about zigzags. On the torus the
//! two agree, and both fail exactly on the inconsistent models.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::lp::{solve_min, LpNum, LpResult};
use crate::model::{ArrowId, DimerModel, RotationMaps, Sign};
use crate::topology::HomologyLabeling;
use crate::zigzag::{check_condition_z, zigzag_from};

/// Arrow grading with values in the open interval (0, 2); the value times
/// pi is the arc subtended in an embedding with isoradial cycles.
#[derive(Clone, Debug)]
pub struct RCharge {
    values: Vec<f64>,
}

impl RCharge {
    pub fn from_values(values: Vec<f64>) -> RCharge {
        RCharge { values }
    }

    pub fn constant(model: &DimerModel, value: f64) -> RCharge {
        RCharge { values: vec![value; model.arrow_count()] }
    }

    pub fn get(&self, a: ArrowId) -> f64 {
        self.values[a.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Clone, Debug)]
pub enum RchargeError {
    /// The zigzag condition fails, so zig and zag directions may coincide
    /// and the angle construction is undefined.
    NotZigzagConsistent,
    /// Equal zig and zag directions encountered; cannot happen once the
    /// zigzag condition holds.
    EqualDirections { arrow: ArrowId },
    /// Face sums stayed away from 2 even after the one-time orientation
    /// flip; indicates a broken labeling.
    OrientationFlipFailed,
    Labeling(crate::topology::LabelingError),
}

impl fmt::Display for RchargeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RchargeError::NotZigzagConsistent => {
                write!(f, "zigzag condition fails; direction charge undefined")
            }
            RchargeError::EqualDirections { arrow } => {
                write!(f, "zig and zag directions coincide at arrow #{}", arrow.0)
            }
            RchargeError::OrientationFlipFailed => {
                write!(f, "face sums broken in both cover orientations")
            }
            RchargeError::Labeling(e) => write!(f, "{e}"),
        }
    }
}

fn angle_of(v: crate::topology::Vec2) -> f64 {
    libm::atan2(v.y as f64, v.x as f64)
}

/// Clockwise angle from `from` to `to`, in `[0, 2*pi)`.
fn clockwise_angle(from: f64, to: f64) -> f64 {
    let mut d = from - to;
    while d < 0.0 {
        d += 2.0 * PI;
    }
    while d >= 2.0 * PI {
        d -= 2.0 * PI;
    }
    d
}

/// Read the charge off the zigzag directions: `R_a` is `1/pi` times the
/// clockwise angle from the zag direction to the zig direction at `a`.
///
/// If the cover basis is mirror-oriented the face sums land at `2|c| - 2`
/// instead of 2; this is detected on the first face and fixed by one
/// deterministic flip of the second basis vector.
pub fn rcharge_from_zigzags(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
) -> Result<RCharge, RchargeError> {
    if !check_condition_z(model, rot, labeling).holds() {
        return Err(RchargeError::NotZigzagConsistent);
    }
    let charge = direction_charge(model, rot, labeling)?;
    // orientation probe on the first face
    let face = &model.faces()[0];
    let sum: f64 = face.cycle.iter().map(|&a| charge.get(a)).sum();
    if libm::fabs(sum - 2.0) < 1e-6 {
        return Ok(charge);
    }
    let flipped = labeling.mirrored();
    let charge = direction_charge(model, rot, &flipped)?;
    for face in model.faces() {
        let sum: f64 = face.cycle.iter().map(|&a| charge.get(a)).sum();
        if libm::fabs(sum - 2.0) > 1e-6 {
            return Err(RchargeError::OrientationFlipFailed);
        }
    }
    Ok(charge)
}

fn direction_charge(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
) -> Result<RCharge, RchargeError> {
    let mut values = Vec::with_capacity(model.arrow_count());
    for a in model.arrow_ids() {
        let zig = zigzag_from(model, rot, Some(labeling), a, Sign::Plus);
        let zag = zigzag_from(model, rot, Some(labeling), a, Sign::Minus);
        let hp = zig.homology().unwrap().primitive();
        let hm = zag.homology().unwrap().primitive();
        if hp == hm {
            return Err(RchargeError::EqualDirections { arrow: a });
        }
        values.push(clockwise_angle(angle_of(hm), angle_of(hp)) / PI);
    }
    Ok(RCharge { values })
}

/// Residual report for a candidate charge.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub face_residuals: Vec<f64>,
    pub vertex_residuals: Vec<f64>,
    pub range_violations: Vec<ArrowId>,
    pub tol: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.range_violations.is_empty()
            && self.face_residuals.iter().all(|r| libm::fabs(*r) <= self.tol)
            && self.vertex_residuals.iter().all(|r| libm::fabs(*r) <= self.tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.face_residuals
            .iter()
            .chain(self.vertex_residuals.iter())
            .fold(0.0, |m, r| if libm::fabs(*r) > m { libm::fabs(*r) } else { m })
    }
}

/// Face residuals `sum R - 2`, vertex residuals `sum (1 - R) - 2` over both
/// arrow ends, and the open-range check `0 < R < 2`.
pub fn verify_rcharge(model: &DimerModel, charge: &RCharge, tol: f64) -> VerifyReport {
    let face_residuals = model
        .faces()
        .iter()
        .map(|face| face.cycle.iter().map(|&a| charge.get(a)).sum::<f64>() - 2.0)
        .collect();
    let vertex_residuals = model
        .vertices()
        .map(|v| {
            let heads: f64 = model.arrows_in(v).iter().map(|&a| 1.0 - charge.get(a)).sum();
            let tails: f64 = model.arrows_out(v).iter().map(|&a| 1.0 - charge.get(a)).sum();
            heads + tails - 2.0
        })
        .collect();
    let range_violations = model
        .arrow_ids()
        .filter(|&a| !(charge.get(a) > 0.0 && charge.get(a) < 2.0))
        .collect();
    VerifyReport { face_residuals, vertex_residuals, range_violations, tol }
}

/// Outcome of the linear feasibility decider.
#[derive(Clone, Debug)]
pub struct FeasibilityOutcome {
    /// best max-min slack; `None` when even the equality system is
    /// infeasible (nonzero Euler characteristic forces this)
    pub t_star: Option<BigRational>,
    /// a consistent charge, present exactly when `t_star > 0`
    pub charge: Option<RCharge>,
    /// whether the exact rational path was taken
    pub exact: bool,
}

/// Arrow count above which the solver falls back to floating point.
pub const EXACT_LIMIT: usize = 200;

/// Maximize `t` subject to the face and vertex equalities with
/// `t <= R_a <= 2 - t`; a consistent charge exists iff the optimum is
/// strictly positive. Exact rational arithmetic up to [`EXACT_LIMIT`]
/// arrows, floating point with a `1e-9` threshold beyond.
pub fn rcharge_feasible(model: &DimerModel) -> FeasibilityOutcome {
    if model.arrow_count() <= EXACT_LIMIT {
        let (t_star, charge) = solve_charge_lp::<BigRational>(model);
        let charge = match (&t_star, charge) {
            (Some(t), Some(values)) if *t > BigRational::zero() => Some(RCharge {
                values: values.iter().map(|v| v.to_f64().unwrap()).collect(),
            }),
            _ => None,
        };
        FeasibilityOutcome { t_star, charge, exact: true }
    } else {
        let (t_star, charge) = solve_charge_lp::<f64>(model);
        let charge = match (&t_star, charge) {
            (Some(t), Some(values)) if *t > 1e-9 => Some(RCharge { values }),
            _ => None,
        };
        FeasibilityOutcome {
            t_star: t_star.map(|t| {
                BigRational::new(BigInt::from((t * 1e12) as i64), BigInt::from(1_000_000_000_000i64))
            }),
            charge,
            exact: false,
        }
    }
}

/// Returns `(t_star, R values)` of the slack program, in the scalar type of
/// the caller's choice. Substitution `R_a = s_a + t`, `t = u - w`:
///
/// * per face `c`: `sum s_a + |c| t = 2`
/// * per vertex `v`: `sum_ends s_a + deg(v) t = deg(v) - 2`
/// * per arrow: `s_a + 2t + slack_a = 2`
pub fn solve_charge_lp<T: LpNum>(model: &DimerModel) -> (Option<T>, Option<Vec<T>>) {
    let na = model.arrow_count();
    let n = na + 2 + na; // s_a, u, w, slack_a
    let iu = na;
    let iw = na + 1;
    let islack = na + 2;
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut rhs: Vec<T> = Vec::new();
    for face in model.faces() {
        let mut row = vec![T::zero(); n];
        for &a in &face.cycle {
            row[a.index()] = row[a.index()].clone() + T::one();
        }
        let k = T::from_i64(face.cycle.len() as i64);
        row[iu] = k.clone();
        row[iw] = -k;
        rows.push(row);
        rhs.push(T::from_i64(2));
    }
    for v in model.vertices() {
        let mut row = vec![T::zero(); n];
        let mut deg = 0i64;
        for &a in model.arrows_in(v).iter().chain(model.arrows_out(v).iter()) {
            row[a.index()] = row[a.index()].clone() + T::one();
            deg += 1;
        }
        row[iu] = T::from_i64(deg);
        row[iw] = -T::from_i64(deg);
        rows.push(row);
        rhs.push(T::from_i64(deg - 2));
    }
    for a in model.arrow_ids() {
        let mut row = vec![T::zero(); n];
        row[a.index()] = T::one();
        row[iu] = T::from_i64(2);
        row[iw] = -T::from_i64(2);
        row[islack + a.index()] = T::one();
        rows.push(row);
        rhs.push(T::from_i64(2));
    }
    // maximize t = u - w
    let mut c = vec![T::zero(); n];
    c[iu] = -T::one();
    c[iw] = T::one();
    match solve_min(&c, &rows, &rhs) {
        LpResult::Optimal { x, value } => {
            let t = -value;
            let charge: Vec<T> =
                (0..na).map(|i| x[i].clone() + x[iu].clone() - x[iw].clone()).collect();
            (Some(t), Some(charge))
        }
        LpResult::Infeasible => (None, None),
        // t is bounded by 2/|c| on any face, so this cannot happen
        LpResult::Unbounded => (None, None),
    }
}
