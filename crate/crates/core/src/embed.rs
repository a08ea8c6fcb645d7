//! Embeddings with isoradial cycles.
//!
//! Every face becomes a polygon inscribed in a unit circle, with arrow `a`
//! standing on an arc of `pi * R_a` radians; positive faces wind clockwise,
//! negative faces counterclockwise. Faces are placed one by one along a
//! breadth-first spanning tree of the dual graph, gluing neighbours by
//! reflecting the circle center across the shared chord. The vertex sums of
//! the charge make the patch close up; the leftover dual adjacencies pin the
//! two torus periods.
//!
//! Every placed vertex carries its deck coordinate in the cover, so lifts
//! translated by the periods are never confused with genuine closure.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::model::{DimerModel, FaceId, RotationMaps, Sign, VertexId};
use crate::rcharge::{verify_rcharge, RCharge, VerifyReport};
use crate::topology::HomologyLabeling;
use crate::zigzag::ZigzagPath;

/// One placed face: center, and per cycle position the angle and deck
/// coordinate of the tail vertex of that arrow.
#[derive(Clone, Debug)]
pub struct FacePlacement {
    pub center: [f64; 2],
    pub tail_angles: Vec<f64>,
    pub tail_decks: Vec<(i64, i64)>,
}

impl FacePlacement {
    pub fn vertex_position(&self, pos: usize) -> [f64; 2] {
        let a = self.tail_angles[pos];
        [self.center[0] + libm::cos(a), self.center[1] + libm::sin(a)]
    }
}

#[derive(Clone, Debug)]
pub enum EmbedError {
    ChargeRejected(VerifyReport),
    UnsupportedSurface { chi: i64 },
    /// A vertex lift landed in two places further apart than the tolerance.
    ClosureFailed { vertex: VertexId, deck: (i64, i64), residual: f64 },
    /// The period constraints were mutually inconsistent.
    PeriodsInconsistent { residual: f64 },
    /// The zigzag angle differed between representatives.
    EpsilonInconsistent { spread: f64 },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::ChargeRejected(r) => {
                write!(f, "charge fails verification (max residual {})", r.max_residual())
            }
            EmbedError::UnsupportedSurface { chi } => {
                write!(f, "embedding needs chi = 0, model has chi = {chi}")
            }
            EmbedError::ClosureFailed { vertex, deck, residual } => write!(
                f,
                "vertex #{} lift {:?} fails to close (residual {residual})",
                vertex.0, deck
            ),
            EmbedError::PeriodsInconsistent { residual } => {
                write!(f, "torus periods inconsistent (residual {residual})")
            }
            EmbedError::EpsilonInconsistent { spread } => {
                write!(f, "zigzag angle spread {spread} across representatives")
            }
        }
    }
}

/// A planar realization of one fundamental patch.
#[derive(Clone, Debug)]
pub struct IsoradialEmbedding {
    placements: Vec<FacePlacement>,
    signs: Vec<Sign>,
    vertex_lifts: BTreeMap<(u32, (i64, i64)), [f64; 2]>,
    tau1: [f64; 2],
    tau2: [f64; 2],
    max_closure_residual: f64,
    snap: f64,
}

fn norm2(p: [f64; 2]) -> f64 {
    libm::sqrt(p[0] * p[0] + p[1] * p[1])
}

fn reflect_across(c: [f64; 2], p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    let d = [q[0] - p[0], q[1] - p[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let v = [c[0] - p[0], c[1] - p[1]];
    let t = (v[0] * d[0] + v[1] * d[1]) / len2;
    let proj = [p[0] + t * d[0], p[1] + t * d[1]];
    [2.0 * proj[0] - c[0], 2.0 * proj[1] - c[1]]
}

fn mod_2pi(mut x: f64) -> f64 {
    while x < 0.0 {
        x += 2.0 * PI;
    }
    while x >= 2.0 * PI {
        x -= 2.0 * PI;
    }
    x
}

/// Build the embedding: first face centered at the origin with its first
/// arrow's tail at angle zero. `charge_tol` gates the charge verification,
/// `closure_tol` bounds acceptable geometric residuals.
pub fn isoradial_embedding(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
    charge: &RCharge,
    charge_tol: f64,
    closure_tol: f64,
) -> Result<IsoradialEmbedding, EmbedError> {
    let chi = model.euler_characteristic();
    if chi != 0 {
        return Err(EmbedError::UnsupportedSurface { chi });
    }
    let report = verify_rcharge(model, charge, charge_tol);
    if !report.passed() {
        return Err(EmbedError::ChargeRejected(report));
    }

    let nf = model.face_count();
    let mut placements: Vec<Option<FacePlacement>> = vec![None; nf];
    let mut vertex_lifts: BTreeMap<(u32, (i64, i64)), [f64; 2]> = BTreeMap::new();
    let mut max_residual = 0.0f64;
    let mut worst: Option<(VertexId, (i64, i64))> = None;

    // angular step along the traversal direction: positive faces clockwise
    let step = |sign: Sign, width: f64| -> f64 {
        match sign {
            Sign::Plus => -width,
            Sign::Minus => width,
        }
    };

    let place = |f: FaceId,
                 anchor_pos: usize,
                 anchor_angle: f64,
                 anchor_deck: (i64, i64),
                 center: [f64; 2]|
     -> FacePlacement {
        let face = model.face(f);
        let n = face.cycle.len();
        let mut tail_angles = vec![0.0; n];
        let mut tail_decks = vec![(0i64, 0i64); n];
        let mut ang = anchor_angle;
        let mut deck = anchor_deck;
        for k in 0..n {
            let pos = (anchor_pos + k) % n;
            tail_angles[pos] = mod_2pi(ang);
            tail_decks[pos] = deck;
            let a = face.cycle[pos];
            ang += step(face.sign, PI * charge.get(a));
            let w = labeling.omega(a);
            deck = (deck.0 + w.x, deck.1 + w.y);
        }
        FacePlacement { center, tail_angles, tail_decks }
    };

    let root = FaceId(0);
    placements[0] = Some(place(root, 0, 0.0, (0, 0), [0.0, 0.0]));
    let mut queue = VecDeque::new();
    queue.push_back(root);
    while let Some(f) = queue.pop_front() {
        let placement = placements[f.index()].clone().unwrap();
        let face = model.face(f);
        let n = face.cycle.len();
        // record vertex lifts of this face
        for pos in 0..n {
            let v = model.tail(face.cycle[pos]);
            let key = (v.0, placement.tail_decks[pos]);
            let p = placement.vertex_position(pos);
            match vertex_lifts.get(&key) {
                None => {
                    vertex_lifts.insert(key, p);
                }
                Some(&q) => {
                    let r = norm2([p[0] - q[0], p[1] - q[1]]);
                    if r > max_residual {
                        max_residual = r;
                        worst = Some((v, key.1));
                    }
                }
            }
        }
        for pos in 0..n {
            let x = face.cycle[pos];
            let other = rot.face_of(face.sign.other(), x);
            if placements[other.index()].is_some() {
                continue;
            }
            let p_t = placement.vertex_position(pos);
            let p_h = placement.vertex_position((pos + 1) % n);
            let center = reflect_across(placement.center, p_t, p_h);
            let other_face = model.face(other);
            let anchor_pos =
                other_face.cycle.iter().position(|&y| y == x).expect("shared arrow");
            let anchor_angle = libm::atan2(p_t[1] - center[1], p_t[0] - center[0]);
            let anchor_deck = placement.tail_decks[pos];
            placements[other.index()] =
                Some(place(other, anchor_pos, anchor_angle, anchor_deck, center));
            queue.push_back(other);
        }
    }
    debug_assert!(placements.iter().all(|p| p.is_some()), "dual graph connected");
    let placements: Vec<FacePlacement> = placements.into_iter().map(|p| p.unwrap()).collect();

    if max_residual > closure_tol {
        let (v, deck) = worst.unwrap();
        return Err(EmbedError::ClosureFailed { vertex: v, deck, residual: max_residual });
    }

    // period extraction from the non-tree dual adjacencies
    let mut constraints: Vec<((i64, i64), [f64; 2])> = Vec::new();
    for a in model.arrow_ids() {
        let fp = rot.face_plus(a);
        let fm = rot.face_minus(a);
        let (pp, pm) = (&placements[fp.index()], &placements[fm.index()]);
        let pos_p = model.face(fp).cycle.iter().position(|&y| y == a).unwrap();
        let pos_m = model.face(fm).cycle.iter().position(|&y| y == a).unwrap();
        let dp = pp.tail_decks[pos_p];
        let dm = pm.tail_decks[pos_m];
        let delta = (dm.0 - dp.0, dm.1 - dp.1);
        let xp = pp.vertex_position(pos_p);
        let xm = pm.vertex_position(pos_m);
        let x = [xm[0] - xp[0], xm[1] - xp[1]];
        if delta == (0, 0) {
            let r = norm2(x);
            if r > max_residual {
                max_residual = r;
            }
            if r > closure_tol {
                return Err(EmbedError::ClosureFailed {
                    vertex: model.tail(a),
                    deck: dp,
                    residual: r,
                });
            }
        } else {
            constraints.push((delta, x));
        }
    }
    // two independent deck differences always exist on the torus
    let mut tau = None;
    'outer: for (i, &(d1, x1)) in constraints.iter().enumerate() {
        for &(d2, x2) in constraints.iter().skip(i + 1) {
            let det = d1.0 * d2.1 - d1.1 * d2.0;
            if det != 0 {
                let det = det as f64;
                let tau1 = [
                    (d2.1 as f64 * x1[0] - d1.1 as f64 * x2[0]) / det,
                    (d2.1 as f64 * x1[1] - d1.1 as f64 * x2[1]) / det,
                ];
                let tau2 = [
                    (-(d2.0 as f64) * x1[0] + d1.0 as f64 * x2[0]) / det,
                    (-(d2.0 as f64) * x1[1] + d1.0 as f64 * x2[1]) / det,
                ];
                tau = Some((tau1, tau2));
                break 'outer;
            }
        }
    }
    let (tau1, tau2) = tau.expect("torus deck classes span a rank-2 lattice");
    let mut period_residual = 0.0f64;
    for &(d, x) in &constraints {
        let px = d.0 as f64 * tau1[0] + d.1 as f64 * tau2[0];
        let py = d.0 as f64 * tau1[1] + d.1 as f64 * tau2[1];
        let r = norm2([x[0] - px, x[1] - py]);
        if r > period_residual {
            period_residual = r;
        }
    }
    if period_residual > closure_tol {
        return Err(EmbedError::PeriodsInconsistent { residual: period_residual });
    }

    Ok(IsoradialEmbedding {
        placements,
        signs: model.faces().iter().map(|f| f.sign).collect(),
        vertex_lifts,
        tau1,
        tau2,
        max_closure_residual: max_residual.max(period_residual),
        snap: 1e-9,
    })
}

impl IsoradialEmbedding {
    pub fn placement(&self, f: FaceId) -> &FacePlacement {
        &self.placements[f.index()]
    }

    pub fn placements(&self) -> &[FacePlacement] {
        &self.placements
    }

    pub fn vertex_lifts(&self) -> impl Iterator<Item = (VertexId, (i64, i64), [f64; 2])> + '_ {
        self.vertex_lifts.iter().map(|(&(v, d), &p)| (VertexId(v), d, p))
    }

    pub fn periods(&self) -> ([f64; 2], [f64; 2]) {
        (self.tau1, self.tau2)
    }

    pub fn max_closure_residual(&self) -> f64 {
        self.max_closure_residual
    }

    /// Position of the lift of `tail(cycle[pos])` on face `f`.
    pub fn vertex_position(&self, f: FaceId, pos: usize) -> [f64; 2] {
        self.placements[f.index()].vertex_position(pos)
    }

    /// Arc position whose half-open arc (tail included, head excluded, in
    /// traversal orientation) contains direction `theta` on face `f`.
    pub fn select_arc_tail_inclusive(&self, f: FaceId, theta: f64) -> usize {
        self.select_arc(f, theta, true)
    }

    /// Dual convention: head included, tail excluded.
    pub fn select_arc_head_inclusive(&self, f: FaceId, theta: f64) -> usize {
        self.select_arc(f, theta, false)
    }

    fn select_arc(&self, f: FaceId, theta: f64, from_tail: bool) -> usize {
        let placement = &self.placements[f.index()];
        let n = placement.tail_angles.len();
        let sign = self.signs[f.index()];
        // angular distance from `from` to `to` along the traversal direction
        let travel = |from: f64, to: f64| -> f64 {
            let d = match sign {
                Sign::Plus => mod_2pi(from - to),
                Sign::Minus => mod_2pi(to - from),
            };
            if d >= 2.0 * PI - self.snap {
                d - 2.0 * PI
            } else {
                d
            }
        };
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for k in 0..n {
            let d = if from_tail {
                // nearest tail at or behind theta
                travel(placement.tail_angles[k], theta)
            } else {
                // nearest head at or ahead of theta
                travel(theta, placement.tail_angles[(k + 1) % n])
            };
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        best
    }

    /// The angle, seen from the positive-face center, of the head of any
    /// arrow opening a positive arc of `z`; checked to be independent of the
    /// representative.
    pub fn epsilon_of_zigzag(
        &self,
        model: &DimerModel,
        rot: &RotationMaps,
        z: &ZigzagPath,
    ) -> f64 {
        self.epsilon_checked(model, rot, z, 1e-9).expect("representative independence")
    }

    pub fn epsilon_checked(
        &self,
        model: &DimerModel,
        rot: &RotationMaps,
        z: &ZigzagPath,
        tol: f64,
    ) -> Result<f64, EmbedError> {
        let mut eps: Option<f64> = None;
        let mut spread = 0.0f64;
        for &(a, s) in z.states() {
            if s != Sign::Plus {
                continue;
            }
            let f = rot.face_plus(a);
            let face = model.face(f);
            let pos = face.cycle.iter().position(|&y| y == a).unwrap();
            let head_angle = self.placements[f.index()].tail_angles[(pos + 1) % face.cycle.len()];
            match eps {
                None => eps = Some(head_angle),
                Some(e) => {
                    let d = libm::fabs(mod_2pi(head_angle - e + PI) - PI);
                    if d > spread {
                        spread = d;
                    }
                }
            }
        }
        if spread > tol {
            return Err(EmbedError::EpsilonInconsistent { spread });
        }
        Ok(eps.expect("zigzag has a positive arc"))
    }
}
