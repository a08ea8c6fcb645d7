//! Bounded rewriting in the Jacobi algebra.
//!
//! The relations substitute the two face complements of an arrow for one
//! another. The closure of all words up to a length bound under single
//! substitutions is a sound under-approximation of path equality: words in
//! one class are genuinely equal, while distinct classes may still merge at
//! a larger bound (rewrites through longer words are missed). A bounded
//! search can therefore refute cancellation but never certify it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::matchings::PerfectMatching;
use crate::model::{ArrowId, DimerModel, RotationMaps, Sign, VertexId};
use crate::paths::{enumerate_words, BudgetExceeded, PathWord};
use crate::topology::{path_class, HomologyLabeling};
use crate::union_find::UnionFind;

/// Default length bound for the closure.
pub const DEFAULT_BOUND: usize = 8;
/// Default word budget.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// The two-sided substitution rules `complement_plus(a) <-> complement_minus(a)`.
#[derive(Clone, Debug)]
pub struct RewriteRules {
    /// deduplicated unordered pairs, stored in both directions
    pairs: Vec<(Vec<ArrowId>, Vec<ArrowId>)>,
}

impl RewriteRules {
    pub fn build(model: &DimerModel, rot: &RotationMaps) -> RewriteRules {
        let mut seen = BTreeSet::new();
        for a in model.arrow_ids() {
            let plus = complement(model, rot, a, Sign::Plus);
            let minus = complement(model, rot, a, Sign::Minus);
            let key = if plus <= minus {
                (plus.clone(), minus.clone())
            } else {
                (minus.clone(), plus.clone())
            };
            seen.insert(key);
        }
        let mut pairs = Vec::new();
        for (l, r) in seen {
            if l != r {
                pairs.push((l.clone(), r.clone()));
                pairs.push((r, l));
            }
        }
        RewriteRules { pairs }
    }

    pub fn pairs(&self) -> &[(Vec<ArrowId>, Vec<ArrowId>)] {
        &self.pairs
    }
}

/// The face complement of `a`: the traversal-order path closing the cycle of
/// the given sign from `h(a)` back to `t(a)`.
pub fn complement(model: &DimerModel, rot: &RotationMaps, a: ArrowId, sign: Sign) -> Vec<ArrowId> {
    let face = model.face(rot.face_of(sign, a));
    let n = face.cycle.len();
    let pos = face.cycle.iter().position(|&x| x == a).unwrap();
    (1..n).map(|k| face.cycle[(pos + k) % n]).collect()
}

/// All words one substitution away from `word`, in scan order. Lengths may
/// change when the two face sizes differ.
pub fn rewrite_neighbors(
    model: &DimerModel,
    rules: &RewriteRules,
    word: &PathWord,
) -> Vec<PathWord> {
    let arrows = word.arrows();
    let mut out = Vec::new();
    for p in 0..arrows.len() {
        for (lhs, rhs) in rules.pairs() {
            if p + lhs.len() <= arrows.len() && arrows[p..p + lhs.len()] == lhs[..] {
                let mut next = Vec::with_capacity(arrows.len() - lhs.len() + rhs.len());
                next.extend_from_slice(&arrows[..p]);
                next.extend_from_slice(rhs);
                next.extend_from_slice(&arrows[p + lhs.len()..]);
                out.push(PathWord::from_arrows(model, next).expect("rewrites preserve endpoints"));
            }
        }
    }
    out
}

/// Identifier of an equivalence class inside one closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub u32);

/// Union-find closure of all words of length at most `bound`.
///
/// Substitutions that would pass through words longer than the bound are
/// dropped; the resulting partition is sound but possibly finer than true
/// path equality.
#[derive(Clone, Debug)]
pub struct Closure {
    bound: usize,
    words: Vec<PathWord>,
    index: BTreeMap<PathWord, u32>,
    /// least member of each word's class, as a word index
    rep: Vec<u32>,
}

impl Closure {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn words(&self) -> &[PathWord] {
        &self.words
    }

    pub fn word_index(&self, w: &PathWord) -> Option<u32> {
        self.index.get(w).copied()
    }

    /// Class of a word of length within the bound.
    pub fn class_of(&self, w: &PathWord) -> Option<ClassId> {
        self.index.get(w).map(|&i| ClassId(self.rep[i as usize]))
    }

    pub fn canonical_word(&self, c: ClassId) -> &PathWord {
        &self.words[c.0 as usize]
    }

    pub fn class_count(&self) -> usize {
        let mut reps: Vec<u32> = self.rep.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    }

    /// Classes with their member word indices, keyed by canonical word index.
    pub fn groups(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut g: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (i, &r) in self.rep.iter().enumerate() {
            g.entry(r).or_default().push(i as u32);
        }
        g
    }

    pub fn same(&self, p: &PathWord, q: &PathWord) -> Option<bool> {
        Some(self.class_of(p)? == self.class_of(q)?)
    }
}

/// Build the rewriting closure over all words of length `<= bound`.
pub fn equivalence_classes(
    model: &DimerModel,
    rot: &RotationMaps,
    bound: usize,
    budget: usize,
) -> Result<Closure, BudgetExceeded> {
    let rules = RewriteRules::build(model, rot);
    let words = enumerate_words(model, bound, budget)?;
    let mut index = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        index.insert(w.clone(), i as u32);
    }
    let mut uf = UnionFind::new(words.len());
    for (i, w) in words.iter().enumerate() {
        for n in rewrite_neighbors(model, &rules, w) {
            if n.len() <= bound {
                let j = index[&n];
                uf.union(i as u32, j);
            }
        }
    }
    // canonical least member per class
    let mut least: BTreeMap<u32, u32> = BTreeMap::new();
    for i in 0..words.len() as u32 {
        let root = uf.find(i);
        match least.get(&root) {
            None => {
                least.insert(root, i);
            }
            Some(&cur) => {
                if words[i as usize] < words[cur as usize] {
                    least.insert(root, i);
                }
            }
        }
    }
    let mut rep = Vec::with_capacity(words.len());
    for i in 0..words.len() as u32 {
        let root = uf.find(i);
        rep.push(least[&root]);
    }
    Ok(Closure { bound, words, index, rep })
}

/// A bounded refutation of cancellation: the extended words agree under
/// rewriting at this bound while the shortened ones do not.
#[derive(Clone, Debug)]
pub struct CancellationWitness {
    pub arrow: ArrowId,
    pub side: CancellationSide,
    pub p: PathWord,
    pub q: PathWord,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CancellationSide {
    /// `p a ~ q a` with `p` and `q` in different classes
    Right,
    /// `a p ~ a q` with `p` and `q` in different classes
    Left,
}

impl fmt::Display for CancellationSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CancellationSide::Right => write!(f, "right"),
            CancellationSide::Left => write!(f, "left"),
        }
    }
}

/// Scan the closure for the first cancellation failure in deterministic
/// order (arrow id, then class of the extended word). `None` means no
/// failure below the bound, which proves nothing beyond it.
pub fn cancellation_witness(
    model: &DimerModel,
    closure: &Closure,
) -> Option<CancellationWitness> {
    for side in [CancellationSide::Right, CancellationSide::Left] {
        // (arrow, class of extended word) -> class of trimmed word -> least trimmed word
        let mut table: BTreeMap<(u32, u32), BTreeMap<u32, u32>> = BTreeMap::new();
        for (i, w) in closure.words().iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            let arrows = w.arrows();
            let (a, trimmed) = match side {
                // w = p * a: `a` is traversed first
                CancellationSide::Right => {
                    let a = arrows[0];
                    let rest = arrows[1..].to_vec();
                    let trimmed = if rest.is_empty() {
                        PathWord::trivial(model.head(a))
                    } else {
                        PathWord::from_arrows(model, rest).unwrap()
                    };
                    (a, trimmed)
                }
                // w = a * p: `a` is traversed last
                CancellationSide::Left => {
                    let a = *arrows.last().unwrap();
                    let rest = arrows[..arrows.len() - 1].to_vec();
                    let trimmed = if rest.is_empty() {
                        PathWord::trivial(model.tail(a))
                    } else {
                        PathWord::from_arrows(model, rest).unwrap()
                    };
                    (a, trimmed)
                }
            };
            let wclass = closure.rep[i];
            let pclass = closure.class_of(&trimmed).unwrap().0;
            let slot = table
                .entry((a.0, wclass))
                .or_default()
                .entry(pclass)
                .or_insert(u32::MAX);
            let widx = closure.word_index(&trimmed).unwrap();
            if widx < *slot {
                *slot = widx;
            }
        }
        for ((a, _wclass), trims) in table {
            if trims.len() >= 2 {
                let mut it = trims.values();
                let p = closure.words()[*it.next().unwrap() as usize].clone();
                let q = closure.words()[*it.next().unwrap() as usize].clone();
                return Some(CancellationWitness {
                    arrow: ArrowId(a),
                    side,
                    p,
                    q,
                    bound: closure.bound(),
                });
            }
        }
    }
    None
}

/// Re-verify a witness against a closure (sound by construction; used by
/// reports and tests).
pub fn verify_witness(
    model: &DimerModel,
    closure: &Closure,
    w: &CancellationWitness,
) -> bool {
    let extend = |p: &PathWord| -> Option<PathWord> {
        match w.side {
            CancellationSide::Right => {
                let mut arrows = alloc::vec![w.arrow];
                arrows.extend_from_slice(p.arrows());
                PathWord::from_arrows(model, arrows).ok()
            }
            CancellationSide::Left => {
                let mut arrows = p.arrows().to_vec();
                arrows.push(w.arrow);
                PathWord::from_arrows(model, arrows).ok()
            }
        }
    };
    let (pa, qa) = match (extend(&w.p), extend(&w.q)) {
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    closure.same(&pa, &qa) == Some(true) && closure.same(&w.p, &w.q) == Some(false)
}

/// Breadth-first chain of single rewrites connecting two words of one
/// class, staying below the closure bound. `None` when the words are not
/// equivalent at this bound.
pub fn rewrite_trace(
    model: &DimerModel,
    rot: &RotationMaps,
    closure: &Closure,
    from: &PathWord,
    to: &PathWord,
) -> Option<Vec<PathWord>> {
    if closure.same(from, to) != Some(true) {
        return None;
    }
    if from == to {
        return Some(alloc::vec![from.clone()]);
    }
    let rules = RewriteRules::build(model, rot);
    let mut prev: BTreeMap<u32, u32> = BTreeMap::new();
    let start = closure.word_index(from)?;
    let goal = closure.word_index(to)?;
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(start);
    prev.insert(start, start);
    while let Some(i) = queue.pop_front() {
        if i == goal {
            let mut chain = alloc::vec![goal];
            let mut cur = goal;
            while cur != start {
                cur = prev[&cur];
                chain.push(cur);
            }
            chain.reverse();
            return Some(
                chain.into_iter().map(|k| closure.words()[k as usize].clone()).collect(),
            );
        }
        for n in rewrite_neighbors(model, &rules, &closure.words()[i as usize]) {
            if n.len() > closure.bound() {
                continue;
            }
            let j = closure.word_index(&n).unwrap();
            prev.entry(j).or_insert_with(|| {
                queue.push_back(j);
                i
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotCancellative;

impl fmt::Display for NotCancellative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class comparison is only valid on models where the zigzag condition holds")
    }
}

/// Fast path equality through invariants: valid exactly on models where the
/// zigzag condition holds, which the caller asserts through the flag.
pub fn paths_equal_fast(
    model: &DimerModel,
    labeling: &HomologyLabeling,
    matching: &PerfectMatching,
    p: &PathWord,
    q: &PathWord,
    zigzag_condition_holds: bool,
) -> Result<bool, NotCancellative> {
    if !zigzag_condition_holds {
        return Err(NotCancellative);
    }
    Ok(path_class(model, labeling, matching, p) == path_class(model, labeling, matching, q))
}

/// A face cycle based at `v` (the local representative of the central
/// element). Every vertex of a valid dimer model has one.
pub fn face_cycle_at(model: &DimerModel, v: VertexId) -> Option<PathWord> {
    for face in model.faces() {
        let n = face.cycle.len();
        for pos in 0..n {
            if model.tail(face.cycle[pos]) == v {
                let arrows = (0..n).map(|k| face.cycle[(pos + k) % n]).collect();
                return Some(PathWord::from_arrows(model, arrows).unwrap());
            }
        }
    }
    None
}
