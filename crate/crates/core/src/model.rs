//! Dimer model representation and validation.
//!
//! The quiver is primary: vertices, arrows and two families of face cycles.
//! Face cycles are stored in traversal order `p[0], p[1], ..., p[n-1]` with
//! `head(p[k]) = tail(p[k+1])` cyclically; positive faces are the clockwise
//! ones of the underlying surface embedding.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of a vertex in model order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an arrow in model order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

/// Index of a face in model order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Orientation of a face cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn other(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// An arrow of the quiver.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub tail: VertexId,
    pub head: VertexId,
}

/// A face cycle, stored in traversal order.
#[derive(Clone, Debug)]
pub struct Face {
    pub sign: Sign,
    pub cycle: Vec<ArrowId>,
}

/// Errors raised while assembling a model from raw identifier data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    BadIdentifier { kind: &'static str, id: String },
    DuplicateVertex { id: String },
    DuplicateArrow { id: String },
    UnknownVertex { arrow: String, vertex: String },
    UnknownArrow { face: usize, arrow: String },
    FaceTooShort { face: usize, len: usize },
    Empty { what: &'static str },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::BadIdentifier { kind, id } => {
                write!(f, "{kind} id {id:?} must match [A-Za-z0-9_]+")
            }
            BuildError::DuplicateVertex { id } => write!(f, "duplicate vertex id {id:?}"),
            BuildError::DuplicateArrow { id } => write!(f, "duplicate arrow id {id:?}"),
            BuildError::UnknownVertex { arrow, vertex } => {
                write!(f, "arrow {arrow:?} references undeclared vertex {vertex:?}")
            }
            BuildError::UnknownArrow { face, arrow } => {
                write!(f, "face #{face} references undeclared arrow {arrow:?}")
            }
            BuildError::FaceTooShort { face, len } => {
                write!(f, "face #{face} has length {len}, need at least 3")
            }
            BuildError::Empty { what } => write!(f, "model has no {what}"),
        }
    }
}

/// A dimer model. Immutable after construction; all operations are pure.
#[derive(Clone, Debug)]
pub struct DimerModel {
    pub name: String,
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    arrows: Vec<Arrow>,
    faces: Vec<Face>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl DimerModel {
    /// Assemble a model from identifier-level data, in file order.
    ///
    /// Rejects duplicate or dangling identifiers and faces shorter than 3;
    /// everything else (chaining, DO, DM, connectivity) is the business of
    /// [`DimerModel::validate`].
    pub fn from_parts(
        name: &str,
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        faces: Vec<(Sign, Vec<String>)>,
    ) -> Result<DimerModel, BuildError> {
        if vertices.is_empty() {
            return Err(BuildError::Empty { what: "vertices" });
        }
        if arrows.is_empty() {
            return Err(BuildError::Empty { what: "arrows" });
        }
        if faces.is_empty() {
            return Err(BuildError::Empty { what: "faces" });
        }
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_id(v) {
                return Err(BuildError::BadIdentifier { kind: "vertex", id: v.clone() });
            }
            if vertex_index.insert(v.clone(), VertexId(i as u32)).is_some() {
                return Err(BuildError::DuplicateVertex { id: v.clone() });
            }
        }
        let mut arrow_index = BTreeMap::new();
        let mut arrow_recs = Vec::with_capacity(arrows.len());
        let mut arrow_names = Vec::with_capacity(arrows.len());
        for (i, (id, tail, head)) in arrows.iter().enumerate() {
            if !valid_id(id) {
                return Err(BuildError::BadIdentifier { kind: "arrow", id: id.clone() });
            }
            if arrow_index.insert(id.clone(), ArrowId(i as u32)).is_some() {
                return Err(BuildError::DuplicateArrow { id: id.clone() });
            }
            let t = *vertex_index.get(tail).ok_or_else(|| BuildError::UnknownVertex {
                arrow: id.clone(),
                vertex: tail.clone(),
            })?;
            let h = *vertex_index.get(head).ok_or_else(|| BuildError::UnknownVertex {
                arrow: id.clone(),
                vertex: head.clone(),
            })?;
            arrow_recs.push(Arrow { tail: t, head: h });
            arrow_names.push(id.clone());
        }
        let mut face_recs = Vec::with_capacity(faces.len());
        for (i, (sign, cycle)) in faces.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(BuildError::FaceTooShort { face: i, len: cycle.len() });
            }
            let mut ids = Vec::with_capacity(cycle.len());
            for id in cycle {
                let a = *arrow_index.get(id).ok_or_else(|| BuildError::UnknownArrow {
                    face: i,
                    arrow: id.clone(),
                })?;
                ids.push(a);
            }
            face_recs.push(Face { sign: *sign, cycle: ids });
        }
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, a) in arrow_recs.iter().enumerate() {
            out_arrows[a.tail.index()].push(ArrowId(i as u32));
            in_arrows[a.head.index()].push(ArrowId(i as u32));
        }
        Ok(DimerModel {
            name: String::from(name),
            vertex_names: vertices,
            arrow_names,
            arrows: arrow_recs,
            faces: face_recs,
            out_arrows,
            in_arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrow_count() as u32).map(ArrowId)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.face_count() as u32).map(FaceId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.index()]
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].head
    }

    pub fn face(&self, c: FaceId) -> &Face {
        &self.faces[c.index()]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a.index()]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_names.iter().position(|n| n == name).map(|i| ArrowId(i as u32))
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(|i| VertexId(i as u32))
    }

    pub fn arrows_out(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v.index()]
    }

    pub fn arrows_in(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v.index()]
    }

    /// `#Q0 - #Q1 + #Q2`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.arrow_count() as i64 + self.face_count() as i64
    }

    /// Genus from the Euler characteristic, `(2 - chi) / 2`.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn max_face_len(&self) -> usize {
        self.faces.iter().map(|f| f.cycle.len()).max().unwrap_or(0)
    }

    /// Run every structural axiom and collect witnesses for the failures.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            chaining: self.check_chaining(),
            orientability: self.check_orientability(),
            manifold: self.check_manifold(),
            strongly_connected: self.check_strongly_connected(),
            disjoint_families: self.check_disjoint_families(),
        }
    }

    fn check_chaining(&self) -> AxiomResult {
        for (i, face) in self.faces.iter().enumerate() {
            let n = face.cycle.len();
            for k in 0..n {
                let cur = face.cycle[k];
                let nxt = face.cycle[(k + 1) % n];
                if self.head(cur) != self.tail(nxt) {
                    return AxiomResult::fail(Witness::BrokenChain {
                        face: FaceId(i as u32),
                        position: k,
                        arrow: cur,
                    });
                }
            }
        }
        AxiomResult::pass()
    }

    fn check_orientability(&self) -> AxiomResult {
        // DO: every arrow exactly once in one positive and one negative face.
        for sign in [Sign::Plus, Sign::Minus] {
            let mut count = vec![0usize; self.arrow_count()];
            for face in &self.faces {
                if face.sign != sign {
                    continue;
                }
                for &a in &face.cycle {
                    count[a.index()] += 1;
                }
            }
            for (i, &c) in count.iter().enumerate() {
                if c != 1 {
                    return AxiomResult::fail(Witness::ArrowCoverage {
                        arrow: ArrowId(i as u32),
                        sign,
                        count: c,
                    });
                }
            }
        }
        AxiomResult::pass()
    }

    /// DM: around each vertex the corners glue the incident arrow ends into a
    /// single cycle. Ends are (arrow, end) pairs; every corner of a face at
    /// the vertex joins the incoming end with the outgoing one.
    fn check_manifold(&self) -> AxiomResult {
        // Requires DO, otherwise the link is not 2-regular to begin with.
        if let AxiomResult::Fail(w) = self.check_orientability() {
            return AxiomResult::fail(w);
        }
        if let AxiomResult::Fail(w) = self.check_chaining() {
            return AxiomResult::fail(w);
        }
        for v in self.vertices() {
            // Node encoding: in-end of arrow a -> 2*a, out-end -> 2*a + 1.
            let mut adj: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for face in &self.faces {
                let n = face.cycle.len();
                for k in 0..n {
                    let cur = face.cycle[k];
                    let nxt = face.cycle[(k + 1) % n];
                    if self.head(cur) == v {
                        let a = 2 * cur.0;
                        let b = 2 * nxt.0 + 1;
                        adj.entry(a).or_default().push(b);
                        adj.entry(b).or_default().push(a);
                    }
                }
            }
            if adj.is_empty() {
                return AxiomResult::fail(Witness::IsolatedVertex { vertex: v });
            }
            // Each end sees one corner per face sign, so the link is a
            // disjoint union of cycles; DM demands a single one.
            let start = *adj.keys().next().unwrap();
            let mut seen = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                if seen.insert(x) {
                    for &y in &adj[&x] {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != adj.len() {
                return AxiomResult::fail(Witness::DisconnectedLink { vertex: v });
            }
        }
        AxiomResult::pass()
    }

    fn check_strongly_connected(&self) -> AxiomResult {
        let n = self.vertex_count();
        let reach = |forward: bool| -> BTreeSet<usize> {
            let mut seen = BTreeSet::new();
            let mut stack = vec![0usize];
            while let Some(v) = stack.pop() {
                if seen.insert(v) {
                    let nbrs = if forward {
                        &self.out_arrows[v]
                    } else {
                        &self.in_arrows[v]
                    };
                    for &a in nbrs {
                        let w = if forward { self.head(a) } else { self.tail(a) };
                        stack.push(w.index());
                    }
                }
            }
            seen
        };
        for forward in [true, false] {
            let seen = reach(forward);
            if seen.len() != n {
                let missing = (0..n).find(|v| !seen.contains(v)).unwrap();
                return AxiomResult::fail(Witness::Unreachable {
                    vertex: VertexId(missing as u32),
                });
            }
        }
        AxiomResult::pass()
    }

    fn check_disjoint_families(&self) -> AxiomResult {
        // No positive face may equal a negative face up to cyclic rotation.
        let canon = |cycle: &[ArrowId]| -> Vec<ArrowId> {
            let n = cycle.len();
            (0..n)
                .map(|s| {
                    let mut r: Vec<ArrowId> = Vec::with_capacity(n);
                    for k in 0..n {
                        r.push(cycle[(s + k) % n]);
                    }
                    r
                })
                .min()
                .unwrap()
        };
        let mut pos = BTreeMap::new();
        for (i, face) in self.faces.iter().enumerate() {
            if face.sign == Sign::Plus {
                pos.insert(canon(&face.cycle), FaceId(i as u32));
            }
        }
        for (i, face) in self.faces.iter().enumerate() {
            if face.sign == Sign::Minus {
                if let Some(&p) = pos.get(&canon(&face.cycle)) {
                    return AxiomResult::fail(Witness::SharedCycle {
                        positive: p,
                        negative: FaceId(i as u32),
                    });
                }
            }
        }
        AxiomResult::pass()
    }
}

/// Concrete witness for a failed axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    BrokenChain { face: FaceId, position: usize, arrow: ArrowId },
    ArrowCoverage { arrow: ArrowId, sign: Sign, count: usize },
    DisconnectedLink { vertex: VertexId },
    IsolatedVertex { vertex: VertexId },
    Unreachable { vertex: VertexId },
    SharedCycle { positive: FaceId, negative: FaceId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomResult {
    Pass,
    Fail(Witness),
}

impl AxiomResult {
    fn pass() -> Self {
        AxiomResult::Pass
    }

    fn fail(w: Witness) -> Self {
        AxiomResult::Fail(w)
    }

    pub fn passed(&self) -> bool {
        matches!(self, AxiomResult::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            AxiomResult::Pass => None,
            AxiomResult::Fail(w) => Some(w),
        }
    }
}

/// Per-axiom outcome of [`DimerModel::validate`].
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub chaining: AxiomResult,
    pub orientability: AxiomResult,
    pub manifold: AxiomResult,
    pub strongly_connected: AxiomResult,
    pub disjoint_families: AxiomResult,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.chaining.passed()
            && self.orientability.passed()
            && self.manifold.passed()
            && self.strongly_connected.passed()
            && self.disjoint_families.passed()
    }

    pub fn axioms(&self) -> [(&'static str, &AxiomResult); 5] {
        [
            ("chaining", &self.chaining),
            ("orientability (DO)", &self.orientability),
            ("manifold (DM)", &self.manifold),
            ("strong connectivity", &self.strongly_connected),
            ("disjoint face families", &self.disjoint_families),
        ]
    }
}

/// Error for operations that need a structurally valid model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureError {
    InvalidModel(Witness),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::InvalidModel(w) => write!(f, "model fails validation: {w:?}"),
        }
    }
}

/// Successor maps within the positive and negative face of each arrow.
#[derive(Clone, Debug)]
pub struct RotationMaps {
    next_plus: Vec<ArrowId>,
    next_minus: Vec<ArrowId>,
    face_plus: Vec<FaceId>,
    face_minus: Vec<FaceId>,
}

impl RotationMaps {
    /// Needs DO and chaining; fails with the violating witness otherwise.
    pub fn build(model: &DimerModel) -> Result<RotationMaps, StructureError> {
        if let Some(w) = model.check_chaining().witness() {
            return Err(StructureError::InvalidModel(w.clone()));
        }
        if let Some(w) = model.check_orientability().witness() {
            return Err(StructureError::InvalidModel(w.clone()));
        }
        let n = model.arrow_count();
        let mut next_plus = vec![ArrowId(0); n];
        let mut next_minus = vec![ArrowId(0); n];
        let mut face_plus = vec![FaceId(0); n];
        let mut face_minus = vec![FaceId(0); n];
        for (i, face) in model.faces().iter().enumerate() {
            let m = face.cycle.len();
            for k in 0..m {
                let cur = face.cycle[k];
                let nxt = face.cycle[(k + 1) % m];
                match face.sign {
                    Sign::Plus => {
                        next_plus[cur.index()] = nxt;
                        face_plus[cur.index()] = FaceId(i as u32);
                    }
                    Sign::Minus => {
                        next_minus[cur.index()] = nxt;
                        face_minus[cur.index()] = FaceId(i as u32);
                    }
                }
            }
        }
        Ok(RotationMaps { next_plus, next_minus, face_plus, face_minus })
    }

    /// Successor of `a` in its positive face cycle.
    pub fn sigma_plus(&self, a: ArrowId) -> ArrowId {
        self.next_plus[a.index()]
    }

    /// Successor of `a` in its negative face cycle.
    pub fn sigma_minus(&self, a: ArrowId) -> ArrowId {
        self.next_minus[a.index()]
    }

    pub fn sigma(&self, sign: Sign, a: ArrowId) -> ArrowId {
        match sign {
            Sign::Plus => self.sigma_plus(a),
            Sign::Minus => self.sigma_minus(a),
        }
    }

    /// The unique positive face containing `a`.
    pub fn face_plus(&self, a: ArrowId) -> FaceId {
        self.face_plus[a.index()]
    }

    /// The unique negative face containing `a`.
    pub fn face_minus(&self, a: ArrowId) -> FaceId {
        self.face_minus[a.index()]
    }

    pub fn face_of(&self, sign: Sign, a: ArrowId) -> FaceId {
        match sign {
            Sign::Plus => self.face_plus(a),
            Sign::Minus => self.face_minus(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn f0() -> DimerModel {
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
        .map(|(s, c)| (s, c.into_iter().map(|x| x.to_string()).collect()))
        .collect();
        DimerModel::from_parts("f0", vertices, arrows, faces).unwrap()
    }

    #[test]
    fn f0_validates_and_counts() {
        let m = f0();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.arrow_count(), 8);
        assert_eq!(m.face_count(), 4);
        assert!(m.validate().passed());
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn do_fails_when_a_face_is_missing() {
        let m = f0();
        let mut vertices = Vec::new();
        for v in m.vertices() {
            vertices.push(m.vertex_name(v).to_string());
        }
        let mut arrows = Vec::new();
        for a in m.arrow_ids() {
            arrows.push((
                m.arrow_name(a).to_string(),
                m.vertex_name(m.tail(a)).to_string(),
                m.vertex_name(m.head(a)).to_string(),
            ));
        }
        let mut faces: Vec<(Sign, Vec<String>)> = Vec::new();
        for (i, face) in m.faces().iter().enumerate() {
            if i == 0 {
                continue; // drop one positive face
            }
            faces.push((
                face.sign,
                face.cycle.iter().map(|&a| m.arrow_name(a).to_string()).collect(),
            ));
        }
        let broken = DimerModel::from_parts("broken", vertices, arrows, faces).unwrap();
        let report = broken.validate();
        assert!(!report.passed());
        match report.orientability.witness() {
            Some(Witness::ArrowCoverage { sign: Sign::Plus, count: 0, arrow }) => {
                // witness must be an arrow of the deleted face [a, e, g, c]
                let name = broken.arrow_name(*arrow);
                assert!(["a", "e", "g", "c"].contains(&name));
            }
            w => panic!("expected a positive-coverage witness, got {w:?}"),
        }
    }

    #[test]
    fn face_of_length_two_is_a_build_error() {
        let vertices = vec!["1".to_string(), "2".to_string()];
        let arrows = vec![
            ("x".to_string(), "1".to_string(), "2".to_string()),
            ("y".to_string(), "2".to_string(), "1".to_string()),
        ];
        let faces = vec![(Sign::Plus, vec!["x".to_string(), "y".to_string()])];
        match DimerModel::from_parts("bad", vertices, arrows, faces) {
            Err(BuildError::FaceTooShort { face: 0, len: 2 }) => {}
            r => panic!("expected FaceTooShort, got {r:?}"),
        }
    }

    #[test]
    fn dangling_arrow_reference_is_a_build_error() {
        let vertices = vec!["1".to_string(), "2".to_string(), "3".to_string()];
        let arrows = vec![
            ("x".to_string(), "1".to_string(), "2".to_string()),
            ("y".to_string(), "2".to_string(), "3".to_string()),
            ("z".to_string(), "3".to_string(), "1".to_string()),
        ];
        let faces = vec![(Sign::Plus, vec!["x".to_string(), "y".to_string(), "w".to_string()])];
        match DimerModel::from_parts("bad", vertices, arrows, faces) {
            Err(BuildError::UnknownArrow { face: 0, arrow }) => assert_eq!(arrow, "w"),
            r => panic!("expected UnknownArrow, got {r:?}"),
        }
    }

    #[test]
    fn rotation_maps_follow_face_cycles() {
        let m = f0();
        let rot = RotationMaps::build(&m).unwrap();
        let a = m.arrow_by_name("a").unwrap();
        let e = m.arrow_by_name("e").unwrap();
        let f = m.arrow_by_name("f").unwrap();
        assert_eq!(rot.sigma_plus(a), e); // face [a, e, g, c]
        assert_eq!(rot.sigma_minus(a), f); // face [a, f, g, d]
        // iterating sigma_plus |face| times returns to the start
        for a in m.arrow_ids() {
            let len = m.face(rot.face_plus(a)).cycle.len();
            let mut cur = a;
            let mut visited = Vec::new();
            for _ in 0..len {
                visited.push(cur);
                cur = rot.sigma_plus(cur);
            }
            assert_eq!(cur, a);
            let mut sorted = visited.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), len, "face arrows visited once each");
        }
    }

    #[test]
    fn face_sizes_double_count_arrows() {
        let m = f0();
        let total: usize = m.faces().iter().map(|f| f.cycle.len()).sum();
        assert_eq!(total, 2 * m.arrow_count());
    }
}
