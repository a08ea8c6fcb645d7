//! The four reference models, built by hand for crate-level tests.
#![allow(dead_code)] // each test file uses its own subset

use dimerlab_core::model::{DimerModel, Sign};

fn build(
    name: &str,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    faces: &[(Sign, &[&str])],
) -> DimerModel {
    DimerModel::from_parts(
        name,
        vertices.iter().map(|s| s.to_string()).collect(),
        arrows
            .iter()
            .map(|(i, t, h)| (i.to_string(), t.to_string(), h.to_string()))
            .collect(),
        faces
            .iter()
            .map(|(s, c)| (*s, c.iter().map(|x| x.to_string()).collect()))
            .collect(),
    )
    .unwrap()
}

/// Sphere: triangulated octahedron boundary. An order, never CY-3.
pub fn octahedron() -> DimerModel {
    build(
        "octahedron",
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("a12", "1", "2"),
            ("a14", "1", "4"),
            ("a25", "2", "5"),
            ("a26", "2", "6"),
            ("a32", "3", "2"),
            ("a34", "3", "4"),
            ("a45", "4", "5"),
            ("a46", "4", "6"),
            ("a51", "5", "1"),
            ("a53", "5", "3"),
            ("a61", "6", "1"),
            ("a63", "6", "3"),
        ],
        &[
            (Sign::Plus, &["a12", "a25", "a51"]),
            (Sign::Plus, &["a14", "a46", "a61"]),
            (Sign::Plus, &["a32", "a26", "a63"]),
            (Sign::Plus, &["a34", "a45", "a53"]),
            (Sign::Minus, &["a12", "a26", "a61"]),
            (Sign::Minus, &["a14", "a45", "a51"]),
            (Sign::Minus, &["a32", "a25", "a53"]),
            (Sign::Minus, &["a34", "a46", "a63"]),
        ],
    )
}

/// Torus: the inconsistent three-vertex triangle tiling.
pub fn triangle_torus() -> DimerModel {
    build(
        "triangle_torus",
        &["1", "2", "3"],
        &[
            ("a", "1", "1"),
            ("b", "1", "1"),
            ("c", "1", "3"),
            ("d", "3", "2"),
            ("e", "2", "1"),
            ("f", "1", "2"),
            ("g", "3", "1"),
            ("h", "2", "1"),
            ("i", "1", "3"),
        ],
        &[
            (Sign::Plus, &["a", "f", "e"]),
            (Sign::Plus, &["c", "g", "b"]),
            (Sign::Plus, &["d", "h", "i"]),
            (Sign::Minus, &["c", "d", "e"]),
            (Sign::Minus, &["g", "a", "i"]),
            (Sign::Minus, &["h", "b", "f"]),
        ],
    )
}

/// Torus: the consistent four-vertex square tiling.
pub fn f0() -> DimerModel {
    build(
        "f0",
        &["1", "2", "3", "4"],
        &[
            ("a", "1", "2"),
            ("b", "1", "2"),
            ("e", "2", "4"),
            ("f", "2", "4"),
            ("g", "4", "3"),
            ("h", "4", "3"),
            ("c", "3", "1"),
            ("d", "3", "1"),
        ],
        &[
            (Sign::Plus, &["a", "e", "g", "c"]),
            (Sign::Plus, &["b", "f", "h", "d"]),
            (Sign::Minus, &["a", "f", "g", "d"]),
            (Sign::Minus, &["b", "e", "h", "c"]),
        ],
    )
}

/// Genus two: one vertex, five loops, two pentagons.
pub fn pentagon_double_torus() -> DimerModel {
    build(
        "pentagon_double_torus",
        &["1"],
        &[
            ("a", "1", "1"),
            ("b", "1", "1"),
            ("c", "1", "1"),
            ("d", "1", "1"),
            ("e", "1", "1"),
        ],
        &[
            (Sign::Plus, &["a", "b", "c", "d", "e"]),
            (Sign::Minus, &["b", "a", "d", "c", "e"]),
        ],
    )
}

pub fn all_models() -> Vec<DimerModel> {
    vec![octahedron(), triangle_torus(), f0(), pentagon_double_torus()]
}
