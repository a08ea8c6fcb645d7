//! Paths in the quiver.
//!
//! Words store their arrows in traversal order: `word[0]` is crossed first,
//! so `head(word[k]) = tail(word[k+1])`. Algebra-style composition `p * q`
//! (first `q`, then `p`) is concatenation with `q` in front.

use alloc::vec::Vec;
use core::fmt;

use crate::model::{ArrowId, DimerModel, VertexId};

/// A composable arrow sequence with an explicit base vertex so that trivial
/// paths are representable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathWord {
    base: VertexId,
    arrows: Vec<ArrowId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathError {
    NotComposable { position: usize },
    WrongBase,
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathError::NotComposable { position } => {
                write!(f, "arrows at positions {} and {} do not chain", position, position + 1)
            }
            PathError::WrongBase => write!(f, "base vertex does not match first arrow"),
        }
    }
}

impl PathWord {
    pub fn trivial(v: VertexId) -> PathWord {
        PathWord { base: v, arrows: Vec::new() }
    }

    /// Build from a traversal-order arrow sequence, checking composability.
    pub fn from_arrows(model: &DimerModel, arrows: Vec<ArrowId>) -> Result<PathWord, PathError> {
        let first = match arrows.first() {
            Some(&a) => a,
            None => return Err(PathError::WrongBase),
        };
        for k in 0..arrows.len() - 1 {
            if model.head(arrows[k]) != model.tail(arrows[k + 1]) {
                return Err(PathError::NotComposable { position: k });
            }
        }
        Ok(PathWord { base: model.tail(first), arrows })
    }

    pub fn single(model: &DimerModel, a: ArrowId) -> PathWord {
        PathWord { base: model.tail(a), arrows: alloc::vec![a] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// Start vertex (the `t` of the path).
    pub fn tail(&self) -> VertexId {
        self.base
    }

    /// End vertex (the `h` of the path).
    pub fn head(&self, model: &DimerModel) -> VertexId {
        match self.arrows.last() {
            Some(&a) => model.head(a),
            None => self.base,
        }
    }

    /// Traversal-order concatenation: `self` first, then `next`.
    pub fn then(&self, model: &DimerModel, next: &PathWord) -> Result<PathWord, PathError> {
        if self.head(model) != next.tail() {
            return Err(PathError::NotComposable { position: self.arrows.len().max(1) - 1 });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Ok(PathWord { base: self.base, arrows })
    }

    /// Exponent vector in `N^{Q1}` (arrow multiplicities).
    pub fn exponent(&self, model: &DimerModel) -> Vec<i64> {
        let mut x = alloc::vec![0i64; model.arrow_count()];
        for &a in &self.arrows {
            x[a.index()] += 1;
        }
        x
    }

    pub fn is_cyclic(&self, model: &DimerModel) -> bool {
        self.head(model) == self.tail()
    }
}

/// All words of length at most `max_len`, grouped nowhere: a flat list in a
/// deterministic order (by length, then base vertex, then lexicographic on
/// arrow indices). Fails once more than `budget` words would be produced.
pub fn enumerate_words(
    model: &DimerModel,
    max_len: usize,
    budget: usize,
) -> Result<Vec<PathWord>, BudgetExceeded> {
    let mut all: Vec<PathWord> = Vec::new();
    let mut frontier: Vec<PathWord> = model.vertices().map(PathWord::trivial).collect();
    all.extend(frontier.iter().cloned());
    if all.len() > budget {
        return Err(BudgetExceeded { budget });
    }
    for _ in 0..max_len {
        let mut next_frontier = Vec::new();
        for w in &frontier {
            let end = w.head(model);
            for &a in model.arrows_out(end) {
                let mut arrows = w.arrows.clone();
                arrows.push(a);
                next_frontier.push(PathWord { base: w.base, arrows });
                if all.len() + next_frontier.len() > budget {
                    return Err(BudgetExceeded { budget });
                }
            }
        }
        all.extend(next_frontier.iter().cloned());
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(all)
}

/// Resource guard for word enumeration and closure phases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub budget: usize,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word budget of {} exceeded", self.budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sign;
    use alloc::string::ToString;
    use alloc::vec;

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

    #[test]
    fn word_counts_match_out_degree_growth() {
        let m = f0();
        // out-degree 2 everywhere: 4 * (1 + 2 + 4 + ... + 2^l) words
        let words = enumerate_words(&m, 6, 1 << 20).unwrap();
        assert_eq!(words.len(), 4 * (127usize));
        let budget_hit = enumerate_words(&m, 6, 100);
        assert!(budget_hit.is_err());
    }

    #[test]
    fn composition_rejects_non_chaining() {
        let m = f0();
        let a = m.arrow_by_name("a").unwrap();
        let b = m.arrow_by_name("b").unwrap();
        assert!(PathWord::from_arrows(&m, vec![a, b]).is_err());
        let e = m.arrow_by_name("e").unwrap();
        let p = PathWord::from_arrows(&m, vec![a, e]).unwrap();
        assert_eq!(p.tail(), m.vertex_by_name("1").unwrap());
        assert_eq!(p.head(&m), m.vertex_by_name("4").unwrap());
    }
}
