//! Integer homology labels on a torus dimer model.
//!
//! Every arrow gets a deck translation `omega(a)` in `Z^2` such that each
//! face cycle sums to zero and the induced map from the cycle space onto
//! `Z^2` is exactly the quotient by face boundaries. Paths then lift to the
//! universal cover by summing labels.
//!
//! The gauge is a breadth-first spanning tree from the first vertex (labels
//! vanish on tree arrows); the `Z^2` basis comes from a deterministic Smith
//! form of the face-closure system. Individual label values depend on both
//! choices, class-level data does not.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, ToPrimitive};

use crate::matchings::PerfectMatching;
use crate::model::{ArrowId, DimerModel, VertexId};
use crate::paths::PathWord;
use crate::snf::{smith_form, IntMat};

/// Integer 2-vector (dimensionless lattice units in the universal cover).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec2 {
    pub x: i64,
    pub y: i64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// z-component of the cross product, exact.
    pub fn cross(self, other: Vec2) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    pub fn dot(self, other: Vec2) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    /// Primitive vector in the same direction; zero stays zero.
    pub fn primitive(self) -> Vec2 {
        if self.is_zero() {
            return self;
        }
        let g = gcd(self.x.unsigned_abs(), self.y.unsigned_abs()) as i64;
        Vec2 { x: self.x / g, y: self.y / g }
    }

    pub fn scale(self, k: i64) -> Vec2 {
        Vec2 { x: self.x * k, y: self.y * k }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2 { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2 { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingError {
    /// Euler characteristic is not zero; there is no `Z^2` cover lattice.
    UnsupportedSurface { chi: i64 },
    /// The face-closure system did not present `Z^2` (impossible for a valid
    /// torus dimer; indicates a broken model).
    InvalidModel,
}

impl fmt::Display for LabelingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingError::UnsupportedSurface { chi } => {
                write!(f, "homology labeling needs chi = 0, model has chi = {chi}")
            }
            LabelingError::InvalidModel => {
                write!(f, "face-closure system does not present Z^2 (invalid model)")
            }
        }
    }
}

/// Deck translations for all arrows, with the spanning-tree gauge recorded.
#[derive(Clone, Debug)]
pub struct HomologyLabeling {
    omega: Vec<Vec2>,
    tree_arrow: Vec<bool>,
}

impl HomologyLabeling {
    pub fn omega(&self, a: ArrowId) -> Vec2 {
        self.omega[a.index()]
    }

    pub fn is_tree_arrow(&self, a: ArrowId) -> bool {
        self.tree_arrow[a.index()]
    }

    /// Componentwise sum of labels along a traversal-order arrow slice.
    pub fn translation_of_arrows(&self, arrows: &[ArrowId]) -> Vec2 {
        arrows.iter().fold(Vec2::ZERO, |acc, &a| acc + self.omega(a))
    }

    pub fn translation(&self, path: &PathWord) -> Vec2 {
        self.translation_of_arrows(path.arrows())
    }

    /// Apply a `GL(2, Z)` change of cover basis. The caller is responsible
    /// for unimodularity; intended for invariance testing.
    pub fn transformed(&self, u: [[i64; 2]; 2]) -> HomologyLabeling {
        let omega = self
            .omega
            .iter()
            .map(|w| Vec2::new(u[0][0] * w.x + u[0][1] * w.y, u[1][0] * w.x + u[1][1] * w.y))
            .collect();
        HomologyLabeling { omega, tree_arrow: self.tree_arrow.clone() }
    }

    /// Mirror the second coordinate (orientation flip of the cover plane).
    pub fn mirrored(&self) -> HomologyLabeling {
        self.transformed([[1, 0], [0, -1]])
    }

    /// Adopt explicit labels after checking both defining invariants: every
    /// face sums to zero and the cycle space surjects onto `Z^2`.
    pub fn from_omega(model: &DimerModel, omega: Vec<Vec2>) -> Result<HomologyLabeling, LabelingError> {
        assert_eq!(omega.len(), model.arrow_count());
        for face in model.faces() {
            let sum = face.cycle.iter().fold(Vec2::ZERO, |acc, &a| acc + omega[a.index()]);
            if !sum.is_zero() {
                return Err(LabelingError::InvalidModel);
            }
        }
        // vertex potentials along a BFS tree turn arrow labels into
        // fundamental-cycle translations
        let nv = model.vertex_count();
        let mut potential = vec![None::<Vec2>; nv];
        let mut tree_arrow = vec![false; model.arrow_count()];
        potential[0] = Some(Vec2::ZERO);
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(VertexId(0));
        while let Some(v) = queue.pop_front() {
            let base = potential[v.index()].unwrap();
            for &a in model.arrows_out(v) {
                let w = model.head(a);
                if potential[w.index()].is_none() {
                    potential[w.index()] = Some(base + omega[a.index()]);
                    tree_arrow[a.index()] = true;
                    queue.push_back(w);
                }
            }
            for &a in model.arrows_in(v) {
                let w = model.tail(a);
                if potential[w.index()].is_none() {
                    potential[w.index()] = Some(base - omega[a.index()]);
                    tree_arrow[a.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        if potential.iter().any(|p| p.is_none()) {
            return Err(LabelingError::InvalidModel);
        }
        // image lattice of the fundamental cycles must be all of Z^2
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for a in model.arrow_ids() {
            if tree_arrow[a.index()] {
                continue;
            }
            let t = potential[model.tail(a).index()].unwrap();
            let h = potential[model.head(a).index()].unwrap();
            let cyc = omega[a.index()] + t - h;
            gens.push(vec![cyc.x, cyc.y]);
        }
        let cols = gens.len();
        let mat: crate::snf::IntMat =
            (0..2).map(|r| (0..cols).map(|c| gens[c][r]).collect()).collect();
        let basis = crate::snf::hermite_basis(&mat);
        if !(basis.contains(&[1, 0]) && basis.contains(&[0, 1])) {
            return Err(LabelingError::InvalidModel);
        }
        Ok(HomologyLabeling { omega, tree_arrow })
    }
}

/// Solve the face-closure system for a torus model.
pub fn homology_labeling(model: &DimerModel) -> Result<HomologyLabeling, LabelingError> {
    let chi = model.euler_characteristic();
    if chi != 0 {
        return Err(LabelingError::UnsupportedSurface { chi });
    }

    // BFS spanning tree over the underlying undirected graph, rooted at the
    // first vertex in file order.
    let nv = model.vertex_count();
    let na = model.arrow_count();
    let mut visited = vec![false; nv];
    let mut tree_arrow = vec![false; na];
    let mut queue = alloc::collections::VecDeque::new();
    visited[0] = true;
    queue.push_back(VertexId(0));
    while let Some(v) = queue.pop_front() {
        let touch = |a: ArrowId, other: VertexId, visited: &mut Vec<bool>,
                         tree_arrow: &mut Vec<bool>,
                         queue: &mut alloc::collections::VecDeque<VertexId>| {
            if !visited[other.index()] {
                visited[other.index()] = true;
                tree_arrow[a.index()] = true;
                queue.push_back(other);
            }
        };
        for &a in model.arrows_out(v) {
            touch(a, model.head(a), &mut visited, &mut tree_arrow, &mut queue);
        }
        for &a in model.arrows_in(v) {
            touch(a, model.tail(a), &mut visited, &mut tree_arrow, &mut queue);
        }
    }
    if visited.iter().any(|&v| !v) {
        return Err(LabelingError::InvalidModel);
    }

    // Fundamental coordinates: one unknown per non-tree arrow.
    let fund: Vec<ArrowId> =
        model.arrow_ids().filter(|&a| !tree_arrow[a.index()]).collect();
    let fund_index = {
        let mut idx = vec![usize::MAX; na];
        for (k, &a) in fund.iter().enumerate() {
            idx[a.index()] = k;
        }
        idx
    };
    let m = fund.len();
    let nf = model.face_count();
    // face-closure system in the fundamental basis
    let mut u: IntMat = vec![vec![0i64; nf]; m];
    for (c, face) in model.faces().iter().enumerate() {
        for &a in &face.cycle {
            let k = fund_index[a.index()];
            if k != usize::MAX {
                u[k][c] += 1;
            }
        }
    }
    let s = smith_form(&u);
    if m - s.rank != 2 || s.invariants().iter().any(|d| !d.is_one()) {
        return Err(LabelingError::InvalidModel);
    }
    // The two free coordinates of the quotient, read off the row transform.
    let mut omega = vec![Vec2::ZERO; na];
    for (k, &a) in fund.iter().enumerate() {
        let x = s.p[s.rank][k].to_i64().ok_or(LabelingError::InvalidModel)?;
        let y = s.p[s.rank + 1][k].to_i64().ok_or(LabelingError::InvalidModel)?;
        omega[a.index()] = Vec2::new(x, y);
    }
    Ok(HomologyLabeling { omega, tree_arrow })
}

/// The invariant data of a path: endpoints, deck translation, and degree
/// under a fixed perfect matching. In a cancellation algebra two paths are
/// equal exactly when their classes coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathClass {
    pub head: VertexId,
    pub tail: VertexId,
    pub translation: Vec2,
    pub degree: u64,
}

pub fn path_class(
    model: &DimerModel,
    labeling: &HomologyLabeling,
    matching: &PerfectMatching,
    path: &PathWord,
) -> PathClass {
    PathClass {
        head: path.head(model),
        tail: path.tail(),
        translation: labeling.translation(path),
        degree: matching.degree(path),
    }
}
