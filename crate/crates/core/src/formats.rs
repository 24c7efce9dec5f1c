//! DOT, JSON and SVG writers. Integers in JSON are decimal strings so that
//! arbitrarily large coordinates survive a round trip.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::exactmath::{IntVector, LatticeScalar, RenderScalar};
use crate::rauzygraphs::{NormalizedGraph, SignedTriple, SimpleGraph};
use crate::selfaffine::{LatticeGraph, TilePatch};
use crate::stepped::{Face, Projector, SubtilePatch};
use crate::substitution::{PrefixSuffixEdge, Substitution};

/// Fill colours by letter (1-based, cycled).
pub const PALETTE: [&str; 8] = ["#f4f1de", "#8d99ae", "#2b2d42", "#e07a5f", "#3d405b", "#81b29a", "#f2cc8f", "#6d597a"];

pub fn letter_color(letter: u32) -> &'static str {
    PALETTE[(letter as usize + PALETTE.len() - 1) % PALETTE.len()]
}

pub fn vector_json<Z: LatticeScalar>(v: &IntVector<Z>) -> Value {
    Value::Array(v.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

fn triple_json<Z: LatticeScalar>(t: &SignedTriple<Z>) -> Value {
    json!({ "i": t.i, "x": vector_json(&t.x), "j": t.j })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn lattice_graph_json<Z: LatticeScalar>(g: &LatticeGraph<Z>) -> Value {
    json!({
        "nodes": g.nodes().iter().map(vector_json).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| json!({
            "src": vector_json(&e.src),
            "label": { "d": vector_json(&e.label.d), "dp": vector_json(&e.label.dp) },
            "dst": vector_json(&e.dst),
        })).collect::<Vec<_>>(),
    })
}

pub fn lattice_graph_dot<Z: LatticeScalar>(g: &LatticeGraph<Z>, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for n in g.nodes() {
        writeln!(out, "  {};", quote(&n.to_string())).unwrap();
    }
    for e in g.edges() {
        let label = format!("{}|{}", e.label.d, e.label.dp);
        writeln!(out, "  {} -> {} [label={}];", quote(&e.src.to_string()), quote(&e.dst.to_string()), quote(&label))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn simple_graph_json<Z: LatticeScalar>(g: &SimpleGraph<Z>) -> Value {
    json!({
        "nodes": g.nodes().iter().map(triple_json).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| json!({
            "src": triple_json(&e.src),
            "p": vector_json(&e.label.p),
            "q": vector_json(&e.label.q),
            "dst": triple_json(&e.dst),
        })).collect::<Vec<_>>(),
    })
}

pub fn simple_graph_dot<Z: LatticeScalar>(g: &SimpleGraph<Z>, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for n in g.nodes() {
        writeln!(out, "  {};", quote(&n.to_string())).unwrap();
    }
    for e in g.edges() {
        let label = format!("{}|{}", e.label.p, e.label.q);
        writeln!(out, "  {} -> {} [label={}];", quote(&e.src.to_string()), quote(&e.dst.to_string()), quote(&label))
            .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Labels are written as η, the pair in display order.
pub fn normalized_graph_json<Z: LatticeScalar>(g: &NormalizedGraph<Z>) -> Value {
    json!({
        "nodes": g.nodes().iter().map(triple_json).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| {
            let eta = e.label.eta();
            json!({
                "src": triple_json(&e.src),
                "p": vector_json(&eta.p),
                "q": vector_json(&eta.q),
                "type": e.label.kind.as_u8(),
                "dst": triple_json(&e.dst),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn normalized_graph_dot<Z: LatticeScalar>(g: &NormalizedGraph<Z>, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for n in g.nodes() {
        writeln!(out, "  {};", quote(&n.to_string())).unwrap();
    }
    for e in g.edges() {
        let eta = e.label.eta();
        let label = format!("{}|{}", eta.p, eta.q);
        let style = if e.label.kind.as_u8() == 2 { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{}];",
            quote(&e.src.to_string()),
            quote(&e.dst.to_string()),
            quote(&label),
            style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn psgraph_json(sigma: &Substitution, edges: &[PrefixSuffixEdge]) -> Value {
    let d = sigma.alphabet_size();
    json!({
        "letters": (1..=d as u32).collect::<Vec<_>>(),
        "edges": edges.iter().map(|e| json!({
            "from": e.from,
            "to": e.to,
            "prefix": e.prefix.render(d),
            "suffix": e.suffix.render(d),
        })).collect::<Vec<_>>(),
    })
}

pub fn psgraph_dot(sigma: &Substitution, edges: &[PrefixSuffixEdge]) -> String {
    let d = sigma.alphabet_size();
    let mut out = String::from("digraph \"prefix-suffix\" {\n");
    for l in 1..=d {
        writeln!(out, "  \"{l}\";").unwrap();
    }
    for e in edges {
        let label = format!("({},{},{})", e.prefix.render(d), e.from, e.suffix.render(d));
        writeln!(out, "  \"{}\" -> \"{}\" [label={}];", e.from, e.to, quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn faces_json<Z: LatticeScalar>(faces: &[Face<Z>]) -> Value {
    json!({ "faces": faces.iter().map(|f| json!({ "x": vector_json(&f.x), "i": f.i })).collect::<Vec<_>>() })
}

/// Polygons in the plane, each with a fill colour.
#[derive(Clone, Debug, Default)]
pub struct SvgScene {
    polygons: Vec<(Vec<[f64; 2]>, &'static str)>,
}

impl SvgScene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, points: Vec<[f64; 2]>, fill: &'static str) {
        self.polygons.push((points, fill));
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    /// Viewport fitted to the content with a 2% margin; y points up.
    pub fn render(&self, width: f64) -> String {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (pts, _) in &self.polygons {
            for p in pts {
                x0 = x0.min(p[0]);
                x1 = x1.max(p[0]);
                y0 = y0.min(p[1]);
                y1 = y1.max(p[1]);
            }
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let margin = 0.02 * span;
        let (vx, vy, vw, vh) = (x0 - margin, -y1 - margin, x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
        let height = width * vh / vw.max(1e-12);
        let stroke = span / 2000.0;
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="{vx} {vy} {vw} {vh}">"#
        )
        .unwrap();
        writeln!(out, r#"<g stroke="black" stroke-width="{stroke}" stroke-linejoin="round">"#).unwrap();
        for (pts, fill) in &self.polygons {
            let mut d = String::new();
            for (k, p) in pts.iter().enumerate() {
                write!(d, "{}{:.9} {:.9}", if k == 0 { "M" } else { " L" }, p[0], -p[1]).unwrap();
            }
            d.push_str(" Z");
            writeln!(out, r#"<path d="{d}" fill="{fill}"/>"#).unwrap();
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

/// 𝒯_n for a planar tile, one parallelogram per cell.
pub fn tile_patch_svg<Z: LatticeScalar>(patch: &TilePatch<Z>) -> SvgScene {
    let mut scene = SvgScene::new();
    for cell in patch.cells() {
        let pts = cell.vertices_f64().into_iter().map(|p| [p[0], p.get(1).copied().unwrap_or(0.0)]).collect();
        scene.push(pts, letter_color(1));
    }
    scene
}

fn plane_point<F: RenderScalar>(p: &[F]) -> [f64; 2] {
    let get = |k: usize| p.get(k).and_then(|c| c.to_f64()).unwrap_or(0.0);
    [get(0), get(1)]
}

/// ℛ_n(i) patches coloured by face type.
pub fn subtile_svg<F: RenderScalar>(patches: &[SubtilePatch<F>]) -> SvgScene {
    let mut scene = SvgScene::new();
    for patch in patches {
        for cell in &patch.cells {
            scene.push(cell.corners().iter().map(|c| plane_point(c)).collect(), letter_color(cell.letter));
        }
    }
    scene
}

/// Faces of H_σ projected to v^⊥.
pub fn stepped_svg<Z: LatticeScalar, F: RenderScalar>(faces: &[Face<Z>], projector: &Projector<F>) -> SvgScene {
    let mut scene = SvgScene::new();
    for f in faces {
        let cell = projector.face_cell(f, 0);
        scene.push(cell.corners().iter().map(|c| plane_point(c)).collect(), letter_color(f.i));
    }
    scene
}
