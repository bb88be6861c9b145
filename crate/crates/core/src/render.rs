//! Deterministic SVG, TikZ and DOT output for arc diagrams, dissections and
//! keyboard quivers. Boundary points sit evenly on a circle, starting at the
//! top and running anticlockwise.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{ArcSet, BoundaryPoint};
use crate::error::{Error, Result};
use crate::quiver_algebras::KeyboardQuiver;
use crate::surface_dissections::{ChordArc, ChordKind, DissectionSet, MarkedDisc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureKind {
    ArcDiagram,
    Dissection,
    Quiver,
}

impl FromStr for FigureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arc-diagram" => Ok(FigureKind::ArcDiagram),
            "dissection" => Ok(FigureKind::Dissection),
            "quiver" => Ok(FigureKind::Quiver),
            _ => Err(Error::Unsupported(format!("unknown figure kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Svg,
    Tikz,
    Dot,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Unsupported(format!("unknown render format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub kind: FigureKind,
    pub format: Format,
}

const SIZE: f64 = 240.0;
const RADIUS: f64 = 100.0;

/// Unit-circle position of boundary slot `t` out of `slots`.
fn unit(t: f64, slots: f64) -> (f64, f64) {
    let theta = 2.0 * PI * t / slots;
    (-theta.sin(), theta.cos())
}

fn svg_xy((x, y): (f64, f64)) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * x, SIZE / 2.0 - RADIUS * y)
}

/// Slot of a boundary point when `n` accumulation points take the even slots
/// of `2n`; marked points of a segment crowd towards its middle slot.
fn slot(p: BoundaryPoint) -> f64 {
    match p {
        BoundaryPoint::Acc(i) => 2.0 * i as f64,
        BoundaryPoint::Pt(i, q) => {
            let q = q as f64;
            2.0 * i as f64 + 1.0 + 0.8 * q / (q.abs() + 2.0)
        }
    }
}

struct Chord {
    from: (f64, f64),
    to: (f64, f64),
    class: &'static str,
}

struct Marker {
    at: (f64, f64),
    hollow: bool,
    class: &'static str,
}

fn svg(chords: &[Chord], markers: &[Marker]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        r#"  <circle class="boundary" cx="{c:.3}" cy="{c:.3}" r="{RADIUS:.3}" fill="none" stroke="black"/>"#
    );
    for ch in chords {
        let (x1, y1) = svg_xy(ch.from);
        let (x2, y2) = svg_xy(ch.to);
        // Bend towards the centre so chords sharing an end stay apart.
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (qx, qy) = (c + 0.5 * (mx - c), c + 0.5 * (my - c));
        let (stroke, dash) = match ch.class {
            "binding" => ("green", r#" stroke-dasharray="4 2""#),
            "red" => ("red", ""),
            _ => ("black", ""),
        };
        let _ = writeln!(
            out,
            r#"  <path class="chord {}" d="M {x1:.3} {y1:.3} Q {qx:.3} {qy:.3} {x2:.3} {y2:.3}" fill="none" stroke="{stroke}"{dash}/>"#,
            ch.class
        );
    }
    for m in markers {
        let (x, y) = svg_xy(m.at);
        let paint = if m.hollow {
            r#"fill="white" stroke="red""#
        } else {
            r#"fill="green" stroke="green""#
        };
        let r = if m.hollow { 4.0 } else { 3.0 };
        let _ = writeln!(
            out,
            r#"  <circle class="{}" cx="{x:.3}" cy="{y:.3}" r="{r:.1}" {paint}/>"#,
            m.class
        );
    }
    out.push_str("</svg>\n");
    out
}

fn tikz(chords: &[Chord], markers: &[Marker]) -> String {
    let mut out = String::from("\\begin{tikzpicture}[scale=3]\n  \\draw (0,0) circle (1);\n");
    for ch in chords {
        let style = match ch.class {
            "binding" => "green, dashed",
            "red" => "red",
            _ => "black",
        };
        let (x1, y1) = ch.from;
        let (x2, y2) = ch.to;
        let (qx, qy) = ((x1 + x2) / 4.0, (y1 + y2) / 4.0);
        let _ = writeln!(
            out,
            "  \\draw[{style}] ({x1:.3},{y1:.3}) .. controls ({qx:.3},{qy:.3}) .. ({x2:.3},{y2:.3});"
        );
    }
    for m in markers {
        let (x, y) = m.at;
        let style = if m.hollow { "draw=red, fill=white" } else { "fill=green" };
        let _ = writeln!(out, "  \\filldraw[{style}] ({x:.3},{y:.3}) circle (0.03);");
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Chords of an arc set; accumulation points are hollow, marked endpoints filled.
pub fn render_arc_diagram(g: &ArcSet, format: Format) -> Result<String> {
    let slots = 2.0 * g.n() as f64;
    let chords: Vec<Chord> = g
        .arcs()
        .iter()
        .map(|a| {
            let (p, q) = a.endpoints();
            Chord { from: unit(slot(p), slots), to: unit(slot(q), slots), class: "arc" }
        })
        .collect();
    let mut markers: Vec<Marker> = (0..g.n())
        .map(|i| Marker { at: unit(slot(BoundaryPoint::Acc(i)), slots), hollow: true, class: "acc" })
        .collect();
    let mut pts: Vec<BoundaryPoint> = g
        .arcs()
        .iter()
        .flat_map(|a| {
            let (p, q) = a.endpoints();
            [p, q]
        })
        .filter(|p| !p.is_acc())
        .collect();
    pts.sort();
    pts.dedup();
    markers.extend(pts.into_iter().map(|p| Marker { at: unit(slot(p), slots), hollow: false, class: "pt" }));
    match format {
        Format::Svg => Ok(svg(&chords, &markers)),
        Format::Tikz => Ok(tikz(&chords, &markers)),
        Format::Dot => Err(Error::Unsupported("arc diagrams render to svg or tikz".into())),
    }
}

/// A dissection with red hollow and green filled boundary points; binding
/// arcs are dashed.
pub fn render_dissection(d: &DissectionSet, format: Format) -> Result<String> {
    let positions = 2 * d.n;
    let slots = positions as f64;
    let chord = |c: &ChordArc| {
        let (a, b) = c.ends();
        let class = match c.kind() {
            ChordKind::RedArc => "red",
            ChordKind::BindingArc => "binding",
        };
        Chord { from: unit(a as f64, slots), to: unit(b as f64, slots), class }
    };
    let chords: Vec<Chord> = d.red.iter().chain(&d.binding).map(chord).collect();
    let markers: Vec<Marker> = (0..positions)
        .map(|p| {
            let red = MarkedDisc::is_red(p);
            Marker { at: unit(p as f64, slots), hollow: red, class: if red { "red-point" } else { "green-point" } }
        })
        .collect();
    match format {
        Format::Svg => Ok(svg(&chords, &markers)),
        Format::Tikz => Ok(tikz(&chords, &markers)),
        Format::Dot => Err(Error::Unsupported("dissections render to svg or tikz".into())),
    }
}

/// A keyboard quiver: arrows solid, zero relations dotted, sharp vertices
/// double circled. Vertices are labelled from 1.
pub fn render_quiver(k: &KeyboardQuiver, format: Format) -> Result<String> {
    let q = &k.gentle;
    match format {
        Format::Dot => {
            let mut out = String::from("digraph keyboard {\n  node [shape=circle];\n");
            for v in 0..q.vertices {
                let shape = if k.sharp[v] { "doublecircle" } else { "circle" };
                let _ = writeln!(out, "  v{v} [label=\"{}\", shape={shape}];", v + 1);
            }
            for a in &q.arrows {
                let _ = writeln!(out, "  v{} -> v{} [style=solid];", a.source, a.target);
            }
            for &(e, f) in &q.relations {
                let (s, t) = (q.arrows[e].source, q.arrows[f].target);
                let _ = writeln!(out, "  v{s} -> v{t} [style=dotted, dir=none, constraint=false];");
            }
            out.push_str("}\n");
            Ok(out)
        }
        Format::Tikz => {
            let mut out = String::from("\\begin{tikzpicture}[scale=2]\n");
            let slots = q.vertices.max(1) as f64;
            for v in 0..q.vertices {
                let (x, y) = unit(v as f64, slots);
                let label = if k.sharp[v] { format!("{}^\\sharp", v + 1) } else { (v + 1).to_string() };
                let _ = writeln!(out, "  \\node (v{v}) at ({x:.3},{y:.3}) {{${label}$}};");
            }
            for a in &q.arrows {
                let _ = writeln!(out, "  \\draw[->, dashed] (v{}) -- (v{});", a.source, a.target);
            }
            for &(e, f) in &q.relations {
                let (s, t) = (q.arrows[e].source, q.arrows[f].target);
                let _ = writeln!(out, "  \\draw[dotted, bend left] (v{s}) to (v{t});");
            }
            out.push_str("\\end{tikzpicture}\n");
            Ok(out)
        }
        Format::Svg => Err(Error::Unsupported("quivers render to dot or tikz".into())),
    }
}
