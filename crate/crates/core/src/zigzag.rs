//! Zigzag paths and the zigzag consistency condition.
//!
//! A zigzag path alternates between positive and negative arcs of length 2.
//! On the torus each path is periodic and lifts to a quasi-line in the
//! universal cover with a well-defined translation vector per period. The
//! consistency condition asks that for every arrow the zig ray and the zag
//! ray based at it meet only in that arrow; with integer homology labels this
//! reduces to small linear Diophantine systems which we solve exactly —
//! no step bound, no heuristics.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{ArrowId, DimerModel, RotationMaps, Sign};
use crate::topology::{HomologyLabeling, Vec2};

/// One period of a zigzag path, with per-index lift translations when the
/// model lives on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagPath {
    /// `(arrow, s)` where the following arc `(Z[i+1], Z[i])` has sign `s`.
    states: Vec<(ArrowId, Sign)>,
    /// Prefix translations `u(i)`; `u(0) = 0`. Empty when no labeling.
    translations: Vec<Vec2>,
    /// Translation of one full period; `None` when no labeling was given.
    homology: Option<Vec2>,
}

impl ZigzagPath {
    pub fn period_len(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(ArrowId, Sign)] {
        &self.states
    }

    pub fn period_arrows(&self) -> Vec<ArrowId> {
        self.states.iter().map(|&(a, _)| a).collect()
    }

    pub fn homology(&self) -> Option<Vec2> {
        self.homology
    }

    /// Arrow at ray index `i >= 0`.
    pub fn arrow_at(&self, i: u64) -> ArrowId {
        self.states[(i % self.period_len() as u64) as usize].0
    }

    /// Lift translation of the arrow instance at ray index `i`.
    pub fn lift_at(&self, i: u64) -> Vec2 {
        let n = self.period_len() as u64;
        let h = self.homology.expect("lift needs a homology labeling");
        self.translations[(i % n) as usize] + h.scale((i / n) as i64)
    }

    /// Primitive direction of the period translation (zero stays zero).
    pub fn direction(&self) -> Option<Vec2> {
        self.homology.map(|h| h.primitive())
    }
}

/// Follow the zigzag path through `a` whose first arc has the given sign,
/// up to its minimal period under the alternating successor map.
pub fn zigzag_from(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: Option<&HomologyLabeling>,
    a: ArrowId,
    sign: Sign,
) -> ZigzagPath {
    let _ = model;
    let mut states = Vec::new();
    let mut translations = Vec::new();
    let mut cur = (a, sign);
    let mut shift = Vec2::ZERO;
    loop {
        states.push(cur);
        if let Some(lab) = labeling {
            translations.push(shift);
            shift = shift + lab.omega(cur.0);
        }
        cur = (rot.sigma(cur.1, cur.0), cur.1.other());
        if cur == (a, sign) {
            break;
        }
    }
    let homology = labeling.map(|_| shift);
    ZigzagPath { states, translations, homology }
}

/// All distinct zigzag paths, as orbits of the alternating successor map on
/// (arrow, sign) states. Each path starts at its least state, and paths are
/// listed by that state; every arrow appears in exactly two states overall.
pub fn enumerate_zigzags(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: Option<&HomologyLabeling>,
) -> Vec<ZigzagPath> {
    let mut seen = vec![false; model.arrow_count() * 2];
    let key = |(a, s): (ArrowId, Sign)| -> usize {
        a.index() * 2 + if s == Sign::Plus { 0 } else { 1 }
    };
    let mut out = Vec::new();
    for a in model.arrow_ids() {
        for s in [Sign::Plus, Sign::Minus] {
            if seen[key((a, s))] {
                continue;
            }
            let z = zigzag_from(model, rot, labeling, a, s);
            for &st in z.states() {
                seen[key(st)] = true;
            }
            out.push(z);
        }
    }
    out
}

/// A self-crossing of a zigzag path in the cover: ray indices `i < j` with
/// the same lifted arrow instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfIntersection {
    pub i: u64,
    pub j: u64,
    pub translation: Vec2,
    /// whole lattice of repeats, stepping both indices by one period
    pub periodic: bool,
}

/// All essential self-crossings of `z` (one representative per shift orbit),
/// found exactly from the period data. Requires translations.
pub fn self_intersections(z: &ZigzagPath) -> Vec<SelfIntersection> {
    let n = z.period_len() as u64;
    let h = z.homology.expect("self-intersection test needs a labeling");
    let mut out = Vec::new();
    for i0 in 0..n {
        for j0 in i0..n {
            let (ai, _) = z.states[i0 as usize];
            let (aj, _) = z.states[j0 as usize];
            if ai != aj {
                continue;
            }
            let w = z.translations[j0 as usize] - z.translations[i0 as usize];
            if i0 == j0 {
                // same in-period position: collides with its own shifts only
                // when the period translation vanishes
                if h.is_zero() {
                    out.push(SelfIntersection {
                        i: i0,
                        j: i0 + n,
                        translation: z.translations[i0 as usize],
                        periodic: true,
                    });
                }
                continue;
            }
            if h.is_zero() {
                if w.is_zero() {
                    out.push(SelfIntersection {
                        i: i0,
                        j: j0,
                        translation: z.translations[i0 as usize],
                        periodic: true,
                    });
                }
                continue;
            }
            // u(i0) + k h = u(j0) + k' h  <=>  w = (k - k') h
            if let Some(delta) = exact_ratio(w, h) {
                // choose the least shift putting both indices at >= 0
                let k = if delta < 0 { -delta } else { 0 };
                let kp = k + delta;
                debug_assert!(kp >= 0);
                let (i, j) = (i0 + k as u64 * n, j0 + kp as u64 * n);
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                out.push(SelfIntersection {
                    i,
                    j,
                    translation: z.translations[i0 as usize] + h.scale(k),
                    periodic: true,
                });
            }
        }
    }
    out.sort_by_key(|s| (s.i, s.j));
    out
}

/// `w = t * h` for integer `t`?
fn exact_ratio(w: Vec2, h: Vec2) -> Option<i64> {
    if h.is_zero() {
        return if w.is_zero() { Some(0) } else { None };
    }
    if w.cross(h) != 0 {
        return None;
    }
    let t = if h.x != 0 {
        if w.x % h.x != 0 {
            return None;
        }
        w.x / h.x
    } else {
        if w.y % h.y != 0 {
            return None;
        }
        w.y / h.y
    };
    if h.scale(t) == w {
        Some(t)
    } else {
        None
    }
}

/// Shape of the solution set of one ray-coincidence system over
/// nonnegative `(k, m)` period shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
enum SolutionSet {
    Empty,
    Single(i64, i64),
    /// `(k0 + s*dk, m0 + s*dm)` for all `s >= 0`
    Line { k0: i64, m0: i64, dk: i64, dm: i64 },
    /// every `k >= 0` at this fixed `m`
    FreeK { m: i64 },
    /// every `m >= 0` at this fixed `k`
    FreeM { k: i64 },
    /// every pair
    All,
    Finite(Vec<(i64, i64)>),
}

/// Solve `k*hp - m*hm = w` over integers `k, m >= 0`, exactly.
fn solve_shift_system(w: Vec2, hp: Vec2, hm: Vec2) -> SolutionSet {
    let cross = hp.cross(hm);
    if cross != 0 {
        let num_k = w.cross(hm);
        let num_m = w.cross(hp);
        if num_k % cross != 0 || num_m % cross != 0 {
            return SolutionSet::Empty;
        }
        let k = (num_k / cross) as i64;
        let m = (num_m / cross) as i64;
        debug_assert_eq!(hp.scale(k) - hm.scale(m), w);
        if k >= 0 && m >= 0 {
            return SolutionSet::Single(k, m);
        }
        return SolutionSet::Empty;
    }
    // parallel (or zero) period translations
    match (hp.is_zero(), hm.is_zero()) {
        (true, true) => {
            if w.is_zero() {
                SolutionSet::All
            } else {
                SolutionSet::Empty
            }
        }
        (true, false) => match exact_ratio(-w, hm) {
            Some(m) if m >= 0 => SolutionSet::FreeK { m },
            _ => SolutionSet::Empty,
        },
        (false, true) => match exact_ratio(w, hp) {
            Some(k) if k >= 0 => SolutionSet::FreeM { k },
            _ => SolutionSet::Empty,
        },
        (false, false) => {
            let g = hp.primitive();
            let p = exact_ratio(hp, g).unwrap(); // > 0
            let q = match exact_ratio(hm, g) {
                Some(q) => q,
                None => unreachable!("parallel vectors share a primitive"),
            };
            let t = match exact_ratio(w, g) {
                Some(t) => t,
                None => return SolutionSet::Empty,
            };
            // k*p - m*q = t
            if q < 0 {
                // k*p + m*|q| = t: finitely many nonnegative solutions
                let mut sols = Vec::new();
                if t >= 0 {
                    let mut k = 0;
                    while k * p <= t {
                        let rest = t - k * p;
                        if rest % (-q) == 0 {
                            sols.push((k, rest / (-q)));
                        }
                        k += 1;
                    }
                }
                if sols.is_empty() {
                    SolutionSet::Empty
                } else {
                    SolutionSet::Finite(sols)
                }
            } else {
                // q > 0: arithmetic family along (q/g, p/g)
                let gamma = gcd_i64(p, q);
                if t % gamma != 0 {
                    return SolutionSet::Empty;
                }
                let (dk, dm) = (q / gamma, p / gamma);
                // particular solution via extended Euclid
                let (x, _y) = extended_gcd(p, q); // x*p + y*q = gamma
                let k_part = x * (t / gamma);
                // k = k_part + s*dk; m = (k*p - t)/q
                // find least s with k >= 0 and m >= 0
                let mut s = (-k_part).div_euclid(dk);
                loop {
                    let k = k_part + s * dk;
                    if k >= 0 {
                        let m = (k * p - t) / q;
                        if m >= 0 {
                            return SolutionSet::Line { k0: k, m0: m, dk, dm };
                        }
                    }
                    s += 1;
                }
            }
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `(x, y)` with `x*a + y*b = gcd(a, b)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (a.signum(), 0);
    }
    let (x, y) = extended_gcd(b, a % b);
    (y, x - (a / b) * y)
}

/// How a coincidence of the two rays repeats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// isolated coincidence
    Single,
    /// arithmetic family stepping both ray indices together
    Arithmetic { step_i: u64, step_j: u64 },
    /// two-parameter family (both period translations vanish)
    Grid { step_i: u64, step_j: u64 },
}

/// A common lifted arrow instance of the zig and zag rays through an arrow:
/// `zig[i]` and `zag[j]` coincide in the cover. Minimal representative of
/// its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayIntersection {
    pub arrow: ArrowId,
    pub i: u64,
    pub j: u64,
    pub translation: Vec2,
    pub family: FamilyKind,
}

/// The exact, complete set of coincidences `zig[i] = zag[j]` with
/// `i, j >= 1`, reported as minimal family representatives sorted by
/// `(i, j)`.
pub fn ray_intersections(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
    a: ArrowId,
) -> Vec<RayIntersection> {
    let zig = zigzag_from(model, rot, Some(labeling), a, Sign::Plus);
    let zag = zigzag_from(model, rot, Some(labeling), a, Sign::Minus);
    ray_intersections_of(&zig, &zag)
}

fn ray_intersections_of(zig: &ZigzagPath, zag: &ZigzagPath) -> Vec<RayIntersection> {
    let np = zig.period_len() as u64;
    let nm = zag.period_len() as u64;
    let hp = zig.homology.expect("ray solving needs a labeling");
    let hm = zag.homology.expect("ray solving needs a labeling");
    let mut out = Vec::new();
    for i0 in 0..np {
        for j0 in 0..nm {
            let (ai, _) = zig.states[i0 as usize];
            let (aj, _) = zag.states[j0 as usize];
            if ai != aj {
                continue;
            }
            let w = zag.translations[j0 as usize] - zig.translations[i0 as usize];
            let set = solve_shift_system(w, hp, hm);
            let admissible = |k: i64, m: i64| -> Option<(u64, u64)> {
                let i = i0 + k as u64 * np;
                let j = j0 + m as u64 * nm;
                if i >= 1 && j >= 1 {
                    Some((i, j))
                } else {
                    None
                }
            };
            let lift = |k: i64| zig.translations[i0 as usize] + hp.scale(k);
            match set {
                SolutionSet::Empty => {}
                SolutionSet::Single(k, m) => {
                    if let Some((i, j)) = admissible(k, m) {
                        out.push(RayIntersection {
                            arrow: ai,
                            i,
                            j,
                            translation: lift(k),
                            family: FamilyKind::Single,
                        });
                    }
                }
                SolutionSet::Line { k0, m0, dk, dm } => {
                    // step forward to the first admissible representative
                    let mut s = 0;
                    let found = loop {
                        let (k, m) = (k0 + s * dk, m0 + s * dm);
                        if let Some(ij) = admissible(k, m) {
                            break Some((k, ij));
                        }
                        if s > 2 {
                            break None; // dk, dm >= 1: two steps always suffice
                        }
                        s += 1;
                    };
                    if let Some((k, (i, j))) = found {
                        out.push(RayIntersection {
                            arrow: ai,
                            i,
                            j,
                            translation: lift(k),
                            family: FamilyKind::Arithmetic {
                                step_i: dk as u64 * np,
                                step_j: dm as u64 * nm,
                            },
                        });
                    }
                }
                SolutionSet::FreeK { m } => {
                    let k = if i0 == 0 { 1 } else { 0 };
                    if let Some((i, j)) = admissible(k, m) {
                        out.push(RayIntersection {
                            arrow: ai,
                            i,
                            j,
                            translation: lift(k),
                            family: FamilyKind::Arithmetic { step_i: np, step_j: 0 },
                        });
                    }
                }
                SolutionSet::FreeM { k } => {
                    let m = if j0 == 0 { 1 } else { 0 };
                    if let Some((i, j)) = admissible(k, m) {
                        out.push(RayIntersection {
                            arrow: ai,
                            i,
                            j,
                            translation: lift(k),
                            family: FamilyKind::Arithmetic { step_i: 0, step_j: nm },
                        });
                    }
                }
                SolutionSet::All => {
                    let k = if i0 == 0 { 1 } else { 0 };
                    let m = if j0 == 0 { 1 } else { 0 };
                    if let Some((i, j)) = admissible(k, m) {
                        out.push(RayIntersection {
                            arrow: ai,
                            i,
                            j,
                            translation: lift(k),
                            family: FamilyKind::Grid { step_i: np, step_j: nm },
                        });
                    }
                }
                SolutionSet::Finite(sols) => {
                    for (k, m) in sols {
                        if let Some((i, j)) = admissible(k, m) {
                            out.push(RayIntersection {
                                arrow: ai,
                                i,
                                j,
                                translation: lift(k),
                                family: FamilyKind::Single,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|r| (r.i, r.j));
    out
}

/// Expand the family representatives into all coincidences with
/// `1 <= i <= max_i` and `1 <= j <= max_j`. Used to cross-check the solver
/// against plain ray simulation.
pub fn expand_intersections(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
    a: ArrowId,
    max_i: u64,
    max_j: u64,
) -> Vec<(u64, u64, Vec2)> {
    let zig = zigzag_from(model, rot, Some(labeling), a, Sign::Plus);
    let mut out = Vec::new();
    for r in ray_intersections(model, rot, labeling, a) {
        match r.family {
            FamilyKind::Single => {
                if r.i <= max_i && r.j <= max_j {
                    out.push((r.i, r.j, r.translation));
                }
            }
            FamilyKind::Arithmetic { step_i, step_j } => {
                let (mut i, mut j) = (r.i, r.j);
                while i <= max_i && j <= max_j {
                    out.push((i, j, zig.lift_at(i)));
                    if step_i == 0 && step_j == 0 {
                        break;
                    }
                    i += step_i;
                    j += step_j;
                }
            }
            FamilyKind::Grid { step_i, step_j } => {
                let mut i = r.i;
                while i <= max_i {
                    let mut j = r.j;
                    while j <= max_j {
                        out.push((i, j, zig.lift_at(i)));
                        j += step_j;
                    }
                    i += step_i;
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Brute-force oracle: walk both rays for a fixed number of periods and
/// collect equal lifted instances with `i, j >= 1`.
pub fn simulate_ray_intersections(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
    a: ArrowId,
    periods: u64,
) -> Vec<(u64, u64, Vec2)> {
    let zig = zigzag_from(model, rot, Some(labeling), a, Sign::Plus);
    let zag = zigzag_from(model, rot, Some(labeling), a, Sign::Minus);
    let n = periods * (zig.period_len().max(zag.period_len()) as u64);
    let mut zig_instances: BTreeMap<(ArrowId, Vec2), Vec<u64>> = BTreeMap::new();
    for i in 1..=n {
        zig_instances.entry((zig.arrow_at(i), zig.lift_at(i))).or_default().push(i);
    }
    let mut out = Vec::new();
    for j in 1..=n {
        if let Some(is) = zig_instances.get(&(zag.arrow_at(j), zag.lift_at(j))) {
            for &i in is {
                out.push((i, j, zag.lift_at(j)));
            }
        }
    }
    out.sort();
    out
}

/// Window used by the simulation cross-check: both rays, `periods` times the
/// longer period.
pub fn simulation_window(
    model: &DimerModel,
    rot: &RotationMaps,
    a: ArrowId,
    periods: u64,
) -> u64 {
    let zig = zigzag_from(model, rot, None, a, Sign::Plus);
    let zag = zigzag_from(model, rot, None, a, Sign::Minus);
    periods * (zig.period_len().max(zag.period_len()) as u64)
}

/// Outcome of the zigzag condition on a torus model.
#[derive(Clone, Debug)]
pub enum ConditionZ {
    Holds,
    Fails {
        ray_witnesses: Vec<RayIntersection>,
        self_witnesses: Vec<(usize, SelfIntersection)>,
    },
}

impl ConditionZ {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionZ::Holds)
    }
}

/// Verdict across surface types: only the torus admits the check; positive
/// curvature always fails, the hyperbolic cover is out of scope.
#[derive(Clone, Debug)]
pub enum SurfaceZVerdict {
    Torus(ConditionZ),
    AlwaysFails { chi: i64 },
    Unsupported { chi: i64 },
}

/// Decide the zigzag condition for every arrow (one lift per arrow suffices
/// by translation equivariance), plus the independent self-intersection
/// safety check.
pub fn check_condition_z(
    model: &DimerModel,
    rot: &RotationMaps,
    labeling: &HomologyLabeling,
) -> ConditionZ {
    let mut ray_witnesses = Vec::new();
    for a in model.arrow_ids() {
        ray_witnesses.extend(ray_intersections(model, rot, labeling, a));
    }
    let mut self_witnesses = Vec::new();
    for (zi, z) in enumerate_zigzags(model, rot, Some(labeling)).iter().enumerate() {
        for s in self_intersections(z) {
            self_witnesses.push((zi, s));
        }
    }
    if ray_witnesses.is_empty() && self_witnesses.is_empty() {
        ConditionZ::Holds
    } else {
        ConditionZ::Fails { ray_witnesses, self_witnesses }
    }
}

/// Surface-aware wrapper: builds the labeling when the model is a torus.
pub fn condition_z_verdict(
    model: &DimerModel,
    rot: &RotationMaps,
) -> Result<SurfaceZVerdict, crate::topology::LabelingError> {
    let chi = model.euler_characteristic();
    if chi > 0 {
        return Ok(SurfaceZVerdict::AlwaysFails { chi });
    }
    if chi < 0 {
        return Ok(SurfaceZVerdict::Unsupported { chi });
    }
    let labeling = crate::topology::homology_labeling(model)?;
    Ok(SurfaceZVerdict::Torus(check_condition_z(model, rot, &labeling)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sign;
    use crate::topology::homology_labeling;
    use alloc::string::ToString;

    fn f0() -> DimerModel {
        let vertices = ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect();
        let arrows = [
            ("a", "1", "2"),
            ("b", "1", "2"),
            ("e", "2", "4"),
            ("f", "2", "4"),
            ("g", "4", "3"),
            ("h", "4", "3"),
            ("c", "3", "1"),
            ("d", "3", "1"),
        ]
        .iter()
        .map(|(i, t, h)| (i.to_string(), t.to_string(), h.to_string()))
        .collect();
        let faces = vec![
            (Sign::Plus, vec!["a", "e", "g", "c"]),
            (Sign::Plus, vec!["b", "f", "h", "d"]),
            (Sign::Minus, vec!["a", "f", "g", "d"]),
            (Sign::Minus, vec!["b", "e", "h", "c"]),
        ]
        .into_iter()
        .map(|(s, c)| (s, c.into_iter().map(|x: &str| x.to_string()).collect()))
        .collect();
        DimerModel::from_parts("f0", vertices, arrows, faces).unwrap()
    }

    fn names(model: &DimerModel, z: &ZigzagPath) -> Vec<alloc::string::String> {
        z.period_arrows().iter().map(|&a| model.arrow_name(a).to_string()).collect()
    }

    #[test]
    fn f0_zigzag_periods_read_off_the_successor_maps() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let a = m.arrow_by_name("a").unwrap();
        let zp = zigzag_from(&m, &rot, None, a, Sign::Plus);
        assert_eq!(names(&m, &zp), ["a", "e", "h", "d"]);
        let zm = zigzag_from(&m, &rot, None, a, Sign::Minus);
        assert_eq!(names(&m, &zm), ["a", "f", "h", "c"]);
        // restarting two steps in shifts the period by two
        let h = m.arrow_by_name("h").unwrap();
        let shifted = zigzag_from(&m, &rot, None, h, Sign::Plus);
        assert_eq!(names(&m, &shifted), ["h", "d", "a", "e"]);
    }

    #[test]
    fn f0_has_four_zigzags_of_period_four_with_balanced_directions() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let lab = homology_labeling(&m).unwrap();
        let zs = enumerate_zigzags(&m, &rot, Some(&lab));
        assert_eq!(zs.len(), 4);
        let total: usize = zs.iter().map(|z| z.period_len()).sum();
        assert_eq!(total, 2 * m.arrow_count());
        // every arrow appears in exactly two states
        let mut count = vec![0usize; m.arrow_count()];
        for z in &zs {
            assert_eq!(z.period_len(), 4);
            for &(a, _) in z.states() {
                count[a.index()] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 2));
        // homology vectors: primitive, pairwise distinct directions, zero
        // sum; f0's four form two antipodal pairs
        let hs: Vec<Vec2> = zs.iter().map(|z| z.homology().unwrap()).collect();
        let sum = hs.iter().fold(Vec2::ZERO, |acc, &h| acc + h);
        assert_eq!(sum, Vec2::ZERO);
        for (i, &hi) in hs.iter().enumerate() {
            assert_eq!(hi.primitive(), hi, "period translations of f0 are primitive");
            for &hj in hs.iter().skip(i + 1) {
                assert_ne!(hi, hj, "pairwise distinct directions");
            }
            assert!(hs.contains(&-hi), "directions come in antipodal pairs");
        }
        // per arrow, zig and zag directions differ (the R-charge needs this)
        for a in m.arrow_ids() {
            let zp = zigzag_from(&m, &rot, Some(&lab), a, Sign::Plus);
            let zm = zigzag_from(&m, &rot, Some(&lab), a, Sign::Minus);
            assert_ne!(zp.direction().unwrap(), zm.direction().unwrap());
        }
    }

    #[test]
    fn f0_rays_never_meet_again() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let lab = homology_labeling(&m).unwrap();
        for a in m.arrow_ids() {
            assert!(ray_intersections(&m, &rot, &lab, a).is_empty());
        }
        for z in enumerate_zigzags(&m, &rot, Some(&lab)) {
            assert!(self_intersections(&z).is_empty());
        }
        assert!(check_condition_z(&m, &rot, &lab).holds());
    }

    #[test]
    fn solver_matches_simulation_on_f0() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let lab = homology_labeling(&m).unwrap();
        for a in m.arrow_ids() {
            let window = simulation_window(&m, &rot, a, 8);
            let sim = simulate_ray_intersections(&m, &rot, &lab, a, 8);
            let dio = expand_intersections(&m, &rot, &lab, a, window, window);
            assert_eq!(sim, dio);
        }
    }

    #[test]
    fn verdict_is_stable_under_cover_basis_change() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let lab = homology_labeling(&m).unwrap();
        for u in [[[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]]] {
            let lab2 = lab.transformed(u);
            assert!(check_condition_z(&m, &rot, &lab2).holds());
        }
    }

    #[test]
    fn shift_system_solver_handles_the_degenerate_shapes() {
        // independent: unique solution
        let hp = Vec2::new(1, 1);
        let hm = Vec2::new(1, -1);
        assert_eq!(
            solve_shift_system(Vec2::new(1, 3), hp, hm),
            SolutionSet::Single(2, 1) // 2*(1,1) - 1*(1,-1) = (1,3)
        );
        assert_eq!(solve_shift_system(Vec2::new(0, 1), hp, hm), SolutionSet::Empty);
        // both zero
        assert_eq!(solve_shift_system(Vec2::ZERO, Vec2::ZERO, Vec2::ZERO), SolutionSet::All);
        // parallel, same orientation: infinite family
        match solve_shift_system(Vec2::new(2, 0), Vec2::new(2, 0), Vec2::new(4, 0)) {
            SolutionSet::Line { k0, m0, dk, dm } => {
                assert_eq!((k0 * 2 - m0 * 4), 2);
                assert_eq!((dk, dm), (2, 1));
            }
            s => panic!("expected a line, got {s:?}"),
        }
        // antiparallel: finite solutions
        match solve_shift_system(Vec2::new(6, 0), Vec2::new(2, 0), Vec2::new(-2, 0)) {
            SolutionSet::Finite(sols) => {
                // k*2 + m*2 = 6
                assert_eq!(sols, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
            }
            s => panic!("expected finite set, got {s:?}"),
        }
    }
}
