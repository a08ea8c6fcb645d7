//! Deterministic SVG export of an embedding with isoradial cycles: the
//! fundamental patch plus one translated copy in each period direction.

use dimerlab_core::embed::IsoradialEmbedding;
use dimerlab_core::model::{DimerModel, Sign};
use std::fmt::Write;

fn fmt(x: f64) -> String {
    format!("{:.4}", x)
}

pub fn render(model: &DimerModel, embedding: &IsoradialEmbedding, circles: bool) -> String {
    let (tau1, tau2) = embedding.periods();
    let offsets = [[0.0, 0.0], tau1, tau2];

    // bounding box over all face circles of all copies
    let mut min = [f64::INFINITY, f64::INFINITY];
    let mut max = [f64::NEG_INFINITY, f64::NEG_INFINITY];
    for off in &offsets {
        for p in embedding.placements() {
            for d in 0..2 {
                min[d] = min[d].min(p.center[d] + off[d] - 1.2);
                max[d] = max[d].max(p.center[d] + off[d] + 1.2);
            }
        }
    }
    let w = max[0] - min[0];
    let h = max[1] - min[1];

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"640\">",
        fmt(min[0]),
        fmt(-max[1]),
        fmt(w),
        fmt(h),
    );
    let _ = writeln!(out, "<g transform=\"scale(1,-1)\" stroke-width=\"0.03\">");
    for (ci, off) in offsets.iter().enumerate() {
        let opacity = if ci == 0 { "1.0" } else { "0.35" };
        let _ = writeln!(out, "<g opacity=\"{opacity}\">");
        for (fi, placement) in embedding.placements().iter().enumerate() {
            let face = &model.faces()[fi];
            let fill = match face.sign {
                Sign::Plus => "#dce8f5",
                Sign::Minus => "#f5e8dc",
            };
            let mut points = String::new();
            for pos in 0..face.cycle.len() {
                let p = placement.vertex_position(pos);
                let _ = write!(points, "{},{} ", fmt(p[0] + off[0]), fmt(p[1] + off[1]));
            }
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"#333333\"/>",
                points.trim_end()
            );
            if circles {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"1\" fill=\"none\" stroke=\"#99aabb\" stroke-dasharray=\"0.05,0.05\"/>",
                    fmt(placement.center[0] + off[0]),
                    fmt(placement.center[1] + off[1]),
                );
            }
        }
        for (_v, _deck, p) in embedding.vertex_lifts() {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"0.07\" fill=\"#222222\"/>",
                fmt(p[0] + off[0]),
                fmt(p[1] + off[1]),
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
