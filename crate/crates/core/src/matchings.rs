//! Perfect matchings: enumeration, degree gradings, and the angle-indexed
//! matchings cut out of an embedding with isoradial cycles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::embed::IsoradialEmbedding;
use crate::model::{ArrowId, DimerModel, FaceId, RotationMaps, Sign};
use crate::paths::PathWord;
use crate::topology::{HomologyLabeling, Vec2};
use crate::zigzag::ZigzagPath;

/// A subset of arrows meeting every face cycle exactly once. Induces the
/// grading `deg(a) = 1` for members, `0` otherwise, under which every face
/// cycle has degree exactly one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PerfectMatching {
    member: Vec<bool>,
    arrows: Vec<ArrowId>,
}

impl PerfectMatching {
    fn from_member(member: Vec<bool>) -> PerfectMatching {
        let arrows = member
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| if m { Some(ArrowId(i as u32)) } else { None })
            .collect();
        PerfectMatching { member, arrows }
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.member[a.index()]
    }

    /// Member arrows in increasing id order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Number of path arrows in the matching, with multiplicity.
    pub fn degree(&self, path: &PathWord) -> u64 {
        path.arrows().iter().filter(|a| self.contains(**a)).count() as u64
    }

    pub fn degree_of_arrows(&self, arrows: &[ArrowId]) -> u64 {
        arrows.iter().filter(|a| self.contains(**a)).count() as u64
    }

    /// Sum of deck translations over the members.
    pub fn translation(&self, labeling: &HomologyLabeling) -> Vec2 {
        self.arrows.iter().fold(Vec2::ZERO, |acc, &a| acc + labeling.omega(a))
    }
}

/// Does the subset meet every face exactly once?
pub fn is_perfect_matching(model: &DimerModel, member: &[bool]) -> bool {
    model.faces().iter().all(|face| {
        face.cycle.iter().filter(|a| member[a.index()]).count() == 1
    })
}

/// Complete, duplicate-free enumeration by exact-cover backtracking over the
/// faces, returned in lexicographic order of the sorted member lists.
pub fn enumerate_matchings(model: &DimerModel) -> Vec<PerfectMatching> {
    let nf = model.face_count();
    // the two faces covered by each arrow
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); model.arrow_count()];
    for (c, face) in model.faces().iter().enumerate() {
        for &a in &face.cycle {
            faces_of[a.index()].push(c);
        }
    }
    let mut covered = vec![false; nf];
    let mut member = vec![false; model.arrow_count()];
    let mut out = Vec::new();
    fn recurse(
        model: &DimerModel,
        faces_of: &[Vec<usize>],
        covered: &mut [bool],
        member: &mut [bool],
        out: &mut Vec<PerfectMatching>,
    ) {
        // most-constrained uncovered face
        let mut best: Option<(usize, usize)> = None;
        for (c, &cov) in covered.iter().enumerate() {
            if cov {
                continue;
            }
            let candidates = model
                .face(FaceId(c as u32))
                .cycle
                .iter()
                .filter(|a| faces_of[a.index()].iter().all(|&f| !covered[f]))
                .count();
            let better = match best {
                None => true,
                Some((_, n)) => candidates < n,
            };
            if better {
                best = Some((c, candidates));
            }
        }
        let (c, _) = match best {
            Some(b) => b,
            None => {
                out.push(PerfectMatching::from_member(member.to_vec()));
                return;
            }
        };
        let cycle = model.face(FaceId(c as u32)).cycle.clone();
        for a in cycle {
            if faces_of[a.index()].iter().any(|&f| covered[f]) {
                continue;
            }
            for &f in &faces_of[a.index()] {
                covered[f] = true;
            }
            member[a.index()] = true;
            recurse(model, faces_of, covered, member, out);
            member[a.index()] = false;
            for &f in &faces_of[a.index()] {
                covered[f] = false;
            }
        }
    }
    recurse(model, &faces_of, &mut covered, &mut member, &mut out);
    // an arrow listed twice in one face can produce duplicates; keep the
    // output canonical regardless
    out.sort_by(|a, b| a.arrows.cmp(&b.arrows));
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingError {
    /// The angle sweep selected a non-matching (embedding inconsistent).
    NotAMatching { face: FaceId },
    NoEmbedding,
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingError::NotAMatching { face } => {
                write!(f, "angle sweep failed to cover face #{}", face.0)
            }
            MatchingError::NoEmbedding => write!(f, "operation needs an isoradial embedding"),
        }
    }
}

/// The matching cut out by shooting rays from the positive face centers in
/// direction `theta`. For the positive variant an arrow is selected when the
/// ray meets its arc tail-inclusively and head-exclusively; the negative
/// variant swaps the conventions.
pub fn matching_from_angle(
    model: &DimerModel,
    rot: &RotationMaps,
    embedding: &IsoradialEmbedding,
    theta: f64,
    sign: Sign,
) -> Result<PerfectMatching, MatchingError> {
    let mut member = vec![false; model.arrow_count()];
    for (c, face) in model.faces().iter().enumerate() {
        if face.sign != Sign::Plus {
            continue;
        }
        let fid = FaceId(c as u32);
        let pos = match sign {
            Sign::Plus => embedding.select_arc_tail_inclusive(fid, theta),
            Sign::Minus => embedding.select_arc_head_inclusive(fid, theta),
        };
        member[face.cycle[pos].index()] = true;
    }
    let _ = rot;
    if !is_perfect_matching(model, &member) {
        let bad = model
            .face_ids()
            .find(|&f| {
                model.face(f).cycle.iter().filter(|a| member[a.index()]).count() != 1
            })
            .unwrap();
        return Err(MatchingError::NotAMatching { face: bad });
    }
    Ok(PerfectMatching::from_member(member))
}

/// Outcome of checking the matching-zigzag interaction at `theta = eps(Z)`.
#[derive(Clone, Debug)]
pub struct PmzzReport {
    pub holds: bool,
    /// period positions where the parity pattern broke
    pub bad_positions: Vec<usize>,
    /// companion arrow that must stay outside the matching
    pub companion_ok: bool,
}

/// At `theta = eps(Z)` the matching must meet the zigzag exactly in its
/// odd-index period arrows, and must avoid both the base arrow and the
/// opposite-type companion through it.
///
/// Indexed from any plus-phase state, the odd positions are exactly the
/// minus-phase ones, so the check is phrased through phases and does not
/// depend on where the enumerated period happens to start.
pub fn check_pmzz(
    model: &DimerModel,
    rot: &RotationMaps,
    embedding: &IsoradialEmbedding,
    zigzag: &ZigzagPath,
) -> Result<PmzzReport, MatchingError> {
    let theta = embedding.epsilon_of_zigzag(model, rot, zigzag);
    let matching = matching_from_angle(model, rot, embedding, theta, Sign::Plus)?;
    let mut bad = Vec::new();
    for (i, &(arrow, sign)) in zigzag.states().iter().enumerate() {
        let expected = sign == Sign::Minus;
        if matching.contains(arrow) != expected {
            bad.push(i);
        }
    }
    // claim 2 at a plus-phase base arrow: neither the base nor its zag
    // companion may be selected
    let base = zigzag
        .states()
        .iter()
        .find(|&&(_, s)| s == Sign::Plus)
        .expect("phases alternate")
        .0;
    let companion = rot.sigma_minus(base);
    let companion_ok = !matching.contains(companion) && !matching.contains(base);
    Ok(PmzzReport { holds: bad.is_empty() && companion_ok, bad_positions: bad, companion_ok })
}

/// Tally of matchings by deck translation relative to the first enumerated
/// matching. Plumbing on top of the matching list; the keys are the lattice
/// points of the matching polygon.
pub fn translation_tally(
    labeling: &HomologyLabeling,
    matchings: &[PerfectMatching],
) -> BTreeMap<Vec2, usize> {
    let mut tally = BTreeMap::new();
    if matchings.is_empty() {
        return tally;
    }
    let base = matchings[0].translation(labeling);
    for m in matchings {
        *tally.entry(m.translation(labeling) - base).or_insert(0) += 1;
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sign;
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

    /// Oracle: scan all subsets of the (small) arrow set.
    fn brute_force_matchings(model: &DimerModel) -> Vec<Vec<ArrowId>> {
        let n = model.arrow_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let member: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if is_perfect_matching(model, &member) {
                out.push(
                    (0..n)
                        .filter(|&i| member[i])
                        .map(|i| ArrowId(i as u32))
                        .collect(),
                );
            }
        }
        out
    }

    #[test]
    fn f0_has_exactly_eight_matchings_of_size_two() {
        let m = f0();
        let mut oracle = brute_force_matchings(&m);
        oracle.sort();
        assert_eq!(oracle.len(), 8);
        let fast = enumerate_matchings(&m);
        assert_eq!(fast.len(), 8);
        for (pm, expected) in fast.iter().zip(&oracle) {
            assert_eq!(pm.arrows(), &expected[..]);
            assert_eq!(pm.len(), 2);
            assert_eq!(pm.len(), m.face_count() / 2);
        }
    }

    #[test]
    fn every_face_cycle_has_degree_one() {
        let m = f0();
        for pm in enumerate_matchings(&m) {
            for face in m.faces() {
                assert_eq!(pm.degree_of_arrows(&face.cycle), 1);
            }
        }
    }

    #[test]
    fn degree_is_additive_over_concatenation() {
        let m = f0();
        let pms = enumerate_matchings(&m);
        let a = m.arrow_by_name("a").unwrap();
        let e = m.arrow_by_name("e").unwrap();
        let g = m.arrow_by_name("g").unwrap();
        let c = m.arrow_by_name("c").unwrap();
        let p = PathWord::from_arrows(&m, vec![a, e]).unwrap();
        let q = PathWord::from_arrows(&m, vec![g, c]).unwrap();
        let pq = p.then(&m, &q).unwrap();
        for pm in &pms {
            assert_eq!(pm.degree(&pq), pm.degree(&p) + pm.degree(&q));
            assert_eq!(pm.degree(&PathWord::trivial(crate::model::VertexId(0))), 0);
        }
    }
}
