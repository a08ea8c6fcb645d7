//! The exponent lattice and bounded algebraic consistency.
//!
//! Exponent vectors of paths live in `N^{Q1}`; quotienting the ambient
//! lattice by the differences of face vectors identifies exactly the
//! monomials that agree on every representation where all arrows are
//! invertible. Algebraic consistency asks the path algebra to biject onto
//! these classes; here both directions are checked exhaustively below a
//! degree bound, with witnesses on failure.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::jacobi::{equivalence_classes, Closure};
use crate::model::{DimerModel, RotationMaps, VertexId};
use crate::paths::{BudgetExceeded, PathWord};
use crate::snf::{hermite_basis, smith_form, HermiteBasis, IntMat, SmithForm};

/// The quotient of `Z^{Q1}` by the sublattice spanned by face differences,
/// with reduction and certificates.
#[derive(Clone, Debug)]
pub struct LatticeM {
    ambient: usize,
    basis: HermiteBasis,
    smith: SmithForm,
}

impl LatticeM {
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn sublattice_rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn free_rank(&self) -> usize {
        self.ambient - self.basis.rank()
    }

    /// Invariant factors greater than one (empty means torsion-free).
    pub fn torsion(&self) -> Vec<num_bigint::BigInt> {
        self.smith.invariants().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    /// Canonical representative of `x` modulo face differences.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        self.basis.reduce(x)
    }

    pub fn same_class(&self, x: &[i64], y: &[i64]) -> bool {
        let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.basis.contains(&diff)
    }
}

/// Face multiplicity vector `d(c)` in `Z^{Q1}`.
pub fn face_vector(model: &DimerModel, face_index: usize) -> Vec<i64> {
    let mut v = vec![0i64; model.arrow_count()];
    for &a in &model.face(crate::model::FaceId(face_index as u32)).cycle {
        v[a.index()] += 1;
    }
    v
}

/// Build the lattice from the face-difference generators `d(c) - d(c0)`.
pub fn build_lattice(model: &DimerModel) -> LatticeM {
    let na = model.arrow_count();
    let base = face_vector(model, 0);
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for c in 1..model.face_count() {
        let f = face_vector(model, c);
        cols.push((0..na).map(|i| f[i] - base[i]).collect());
    }
    let mat: IntMat = (0..na).map(|r| cols.iter().map(|col| col[r]).collect()).collect();
    let basis = hermite_basis(&mat);
    let smith = smith_form(&mat);
    LatticeM { ambient: na, basis, smith }
}

/// A class of the quotient together with its boundary in `Z^{Q0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MClass {
    pub reduced: Vec<i64>,
    pub boundary: Vec<i64>,
}

/// Boundary `d(x)` in `Z^{Q0}`: heads minus tails with multiplicity.
pub fn boundary(model: &DimerModel, x: &[i64]) -> Vec<i64> {
    let mut b = vec![0i64; model.vertex_count()];
    for a in model.arrow_ids() {
        let m = x[a.index()];
        if m != 0 {
            b[model.head(a).index()] += m;
            b[model.tail(a).index()] -= m;
        }
    }
    b
}

pub fn class_of_exponent(model: &DimerModel, lattice: &LatticeM, x: &[i64]) -> MClass {
    MClass { reduced: lattice.reduce(x), boundary: boundary(model, x) }
}

/// All classes with a representative `x` in `N^{Q1}` of total degree at most
/// `max_degree` and boundary `head - tail`, sorted by reduced vector. The
/// budget caps the number of exponent vectors visited.
pub fn enumerate_mplus(
    model: &DimerModel,
    lattice: &LatticeM,
    head: VertexId,
    tail: VertexId,
    max_degree: usize,
    budget: usize,
) -> Result<Vec<MClass>, BudgetExceeded> {
    let na = model.arrow_count();
    let mut target = vec![0i64; model.vertex_count()];
    target[head.index()] += 1;
    target[tail.index()] -= 1;

    let mut found: BTreeMap<Vec<i64>, MClass> = BTreeMap::new();
    let mut x = vec![0i64; na];
    let mut visited = 0usize;
    // depth-first over exponent vectors with the degree budget
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        model: &DimerModel,
        lattice: &LatticeM,
        target: &[i64],
        x: &mut Vec<i64>,
        pos: usize,
        left: usize,
        found: &mut BTreeMap<Vec<i64>, MClass>,
        visited: &mut usize,
        budget: usize,
    ) -> Result<(), BudgetExceeded> {
        if pos == x.len() {
            *visited += 1;
            if *visited > budget {
                return Err(BudgetExceeded { budget });
            }
            if boundary(model, x) == target {
                let cls = class_of_exponent(model, lattice, x);
                found.entry(cls.reduced.clone()).or_insert(cls);
            }
            return Ok(());
        }
        for k in 0..=left {
            x[pos] = k as i64;
            recurse(model, lattice, target, x, pos + 1, left - k, found, visited, budget)?;
        }
        x[pos] = 0;
        Ok(())
    }
    recurse(model, lattice, &target, &mut x, 0, max_degree, &mut found, &mut visited, budget)?;
    Ok(found.into_values().collect())
}

/// Witness that a lattice class has no path realization below the bound.
#[derive(Clone, Debug)]
pub struct SurjectivityFailure {
    pub head: VertexId,
    pub tail: VertexId,
    pub class: MClass,
}

/// Witness pair of paths with equal class but distinct rewriting classes.
#[derive(Clone, Debug)]
pub struct InjectivityFailure {
    pub p: PathWord,
    pub q: PathWord,
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub bound: usize,
    pub surjectivity_failures: Vec<SurjectivityFailure>,
    pub injectivity_failures: Vec<InjectivityFailure>,
    /// set when the model is not a torus model (the equivalence with
    /// cancellation is a torus statement)
    pub caveat_not_torus: bool,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.surjectivity_failures.is_empty() && self.injectivity_failures.is_empty()
    }
}

/// Check, for every vertex pair and every degree up to `bound`:
/// surjectivity (each nonnegative lattice class is hit by a path) and
/// injectivity (equal-class paths are rewriting-equivalent at the bound).
pub fn check_algebraic_consistency_bounded(
    model: &DimerModel,
    rot: &RotationMaps,
    bound: usize,
    budget: usize,
) -> Result<ConsistencyReport, BudgetExceeded> {
    let closure = equivalence_classes(model, rot, bound, budget)?;
    let lattice = build_lattice(model);
    check_with_closure(model, &closure, &lattice, bound, budget)
}

/// Same check against a pre-built closure (shared with other passes).
pub fn check_with_closure(
    model: &DimerModel,
    closure: &Closure,
    lattice: &LatticeM,
    bound: usize,
    budget: usize,
) -> Result<ConsistencyReport, BudgetExceeded> {
    // path side, keyed by endpoints plus reduced class: cyclic paths based
    // at different vertices share exponents but are different elements
    type Key = (u32, u32, Vec<i64>);
    let mut by_class: BTreeMap<Key, BTreeMap<u32, u32>> = BTreeMap::new();
    for (i, w) in closure.words().iter().enumerate() {
        let key = (w.tail().0, w.head(model).0, lattice.reduce(&w.exponent(model)));
        let cls = closure.class_of(w).unwrap().0;
        let slot = by_class.entry(key).or_default().entry(cls).or_insert(u32::MAX);
        if (i as u32) < *slot {
            *slot = i as u32;
        }
    }

    let mut injectivity_failures = Vec::new();
    for classes in by_class.values() {
        if classes.len() >= 2 {
            let mut it = classes.values();
            let p = closure.words()[*it.next().unwrap() as usize].clone();
            let q = closure.words()[*it.next().unwrap() as usize].clone();
            injectivity_failures.push(InjectivityFailure { p, q });
        }
    }

    let mut surjectivity_failures = Vec::new();
    for head in model.vertices() {
        for tail in model.vertices() {
            for cls in enumerate_mplus(model, lattice, head, tail, bound, budget)? {
                let key = (tail.0, head.0, cls.reduced.clone());
                if !by_class.contains_key(&key) {
                    surjectivity_failures.push(SurjectivityFailure { head, tail, class: cls });
                }
            }
        }
    }

    Ok(ConsistencyReport {
        bound,
        surjectivity_failures,
        injectivity_failures,
        caveat_not_torus: model.euler_characteristic() != 0,
    })
}
