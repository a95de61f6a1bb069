//! Signature documents (JSON), nerve export (tab-separated text) and SVG
//! rendering.
//!
//! A signature document:
//!
//! ```json
//! {
//!   "degree": 2,
//!   "key": "0:X(1,2,3) 4:X(5,6,7)",
//!   "blue": [[0, 2], [4, 6]],
//!   "red": [[1, 3], [5, 7]],
//!   "nodes": [
//!     {"id": 8, "kind": "crossing", "rotation": [0, 1, 2, 3]},
//!     {"id": 9, "kind": "crossing", "rotation": [4, 5, 6, 7]}
//!   ]
//! }
//! ```
//!
//! Labels `0..4d` are the boundary points. `nodes` lists every interior
//! node with its neighbours counterclockwise; kinds are `crossing`, `blue`
//! or `red` (pencils). For generic signatures `nodes` may be omitted, the
//! chords then determine the signature. `key` is optional on input and
//! checked when present.
//!
//! The nerve export starts with `# polystrata-nerve v1 degree=D`, then a
//! a tab-separated header line `id codim key boundary` and one line per
//! cell, boundary ids comma-separated (empty for vertices).

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::map::{Chord, EmbeddedForest};
use crate::nerve::{Cell, NerveComplex};
use crate::signature::{Color, NodeKind, Signature};
use crate::tracer::{direction_angle, Drawing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeRecord {
    pub id: usize,
    pub kind: String,
    pub rotation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureRecord {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub blue: Vec<[u32; 2]>,
    pub red: Vec<[u32; 2]>,
    #[serde(default)]
    pub nodes: Vec<NodeRecord>,
}

fn field(field: &str, reason: impl Into<String>) -> IoError {
    IoError::Field {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn kind_name(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Boundary => "boundary",
        NodeKind::Crossing => "crossing",
        NodeKind::Pencil(Color::Blue) => "blue",
        NodeKind::Pencil(Color::Red) => "red",
    }
}

impl SignatureRecord {
    pub fn from_signature(s: &Signature) -> SignatureRecord {
        let pairs = |c: Color| s.chords(c).iter().map(|c| [c.a, c.b]).collect();
        let f = s.forest();
        let nodes = f
            .interior()
            .map(|v| NodeRecord {
                id: v,
                kind: kind_name(s.kind(v)).to_string(),
                rotation: f.neighbors(v).to_vec(),
            })
            .collect();
        SignatureRecord {
            degree: s.degree(),
            key: Some(s.key().to_string()),
            blue: pairs(Color::Blue),
            red: pairs(Color::Red),
            nodes,
        }
    }

    pub fn to_signature(&self) -> Result<Signature, IoError> {
        let d = self.degree;
        let n = 4 * d;
        let chords = |name: &str, pairs: &[[u32; 2]], parity: u32| -> Result<Vec<Chord>, IoError> {
            pairs
                .iter()
                .enumerate()
                .map(|(i, &[a, b])| {
                    let at = format!("{name}[{i}]");
                    if a as usize >= n || b as usize >= n || a == b {
                        return Err(field(&at, format!("({a},{b}) is not a chord of 0..{n}")));
                    }
                    if a % 2 != parity || b % 2 != parity {
                        return Err(field(&at, format!("({a},{b}) has the wrong parity")));
                    }
                    Ok(Chord::new(a, b))
                })
                .collect()
        };
        let mut blue = chords("blue", &self.blue, 0)?;
        let mut red = chords("red", &self.red, 1)?;
        blue.sort();
        red.sort();
        let s = if self.nodes.is_empty() {
            Signature::from_generic(d, &blue, &red)?
        } else {
            let mut rot = vec![Vec::new(); n + self.nodes.len()];
            for (i, node) in self.nodes.iter().enumerate() {
                let at = format!("nodes[{i}]");
                if node.id != n + i {
                    return Err(field(&format!("{at}.id"), format!("expected {}", n + i)));
                }
                if !["crossing", "blue", "red"].contains(&node.kind.as_str()) {
                    return Err(field(
                        &format!("{at}.kind"),
                        format!("unknown kind {:?}", node.kind),
                    ));
                }
                rot[node.id] = node.rotation.clone();
                for &w in &node.rotation {
                    if w < n {
                        if !rot[w].is_empty() {
                            return Err(field(
                                &format!("{at}.rotation"),
                                format!("label {w} used twice"),
                            ));
                        }
                        rot[w].push(node.id);
                    }
                }
            }
            let s = Signature::validate(d, &EmbeddedForest::new(n, rot)?)?;
            let mut kinds: Vec<&str> = s
                .forest()
                .interior()
                .map(|v| kind_name(s.kind(v)))
                .collect();
            let mut declared: Vec<&str> = self.nodes.iter().map(|x| x.kind.as_str()).collect();
            kinds.sort();
            declared.sort();
            if kinds != declared {
                return Err(field(
                    "nodes",
                    "node kinds disagree with the rotation system",
                ));
            }
            s
        };
        if s.chords(Color::Blue) != blue {
            return Err(field("blue", "chords disagree with the nodes"));
        }
        if s.chords(Color::Red) != red {
            return Err(field("red", "chords disagree with the nodes"));
        }
        if let Some(k) = &self.key {
            if k != s.key() {
                return Err(field("key", format!("expected {:?}", s.key())));
            }
        }
        Ok(s)
    }
}

pub fn write_signature(s: &Signature) -> String {
    serde_json::to_string_pretty(&SignatureRecord::from_signature(s)).expect("serialisable")
}

pub fn read_signature(text: &str) -> Result<Signature, IoError> {
    let rec: SignatureRecord = serde_json::from_str(text)?;
    rec.to_signature()
}

pub const NERVE_MAGIC: &str = "# polystrata-nerve v1";

pub fn write_nerve(c: &NerveComplex) -> String {
    let mut s = format!(
        "{NERVE_MAGIC} degree={}\nid\tcodim\tkey\tboundary\n",
        c.degree
    );
    for cell in &c.cells {
        let b: Vec<String> = cell.boundary.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}",
            cell.id,
            cell.dim,
            cell.key,
            b.join(",")
        );
    }
    s
}

/// Returns the degree and the cells.
pub fn read_nerve(text: &str) -> Result<(usize, Vec<Cell>), IoError> {
    let line_err = |line: usize, reason: &str| IoError::Line {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, magic) = lines.next().ok_or_else(|| line_err(1, "empty input"))?;
    let degree = magic
        .strip_prefix(NERVE_MAGIC)
        .and_then(|r| r.trim().strip_prefix("degree="))
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| line_err(1, "expected '# polystrata-nerve v1 degree=D'"))?;
    match lines.next() {
        Some((_, "id\tcodim\tkey\tboundary")) => {}
        Some((i, _)) => return Err(line_err(i, "expected column header")),
        None => return Err(line_err(2, "missing column header")),
    }
    let mut cells = Vec::new();
    for (i, l) in lines {
        if l.is_empty() {
            continue;
        }
        let parts: Vec<&str> = l.split('\t').collect();
        if parts.len() != 4 {
            return Err(line_err(i, "expected 4 tab-separated fields"));
        }
        let id: usize = parts[0].parse().map_err(|_| line_err(i, "bad id"))?;
        if id != cells.len() {
            return Err(line_err(i, "ids must be consecutive from 0"));
        }
        let dim = parts[1].parse().map_err(|_| line_err(i, "bad codim"))?;
        let boundary = if parts[3].is_empty() {
            Vec::new()
        } else {
            parts[3]
                .split(',')
                .map(|x| x.parse().map_err(|_| line_err(i, "bad boundary id")))
                .collect::<Result<_, _>>()?
        };
        cells.push(Cell {
            id,
            dim,
            key: parts[2].to_string(),
            boundary,
        });
    }
    Ok((degree, cells))
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn pt(z: Complex64) -> String {
    format!("{} {}", num(z.re), num(-z.im))
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Blue => "blue",
        Color::Red => "red",
    }
}

/// Boundary labels on the unit circle, interior nodes at the barycentre
/// of their neighbours.
fn layout(s: &Signature) -> Vec<Complex64> {
    let f = s.forest();
    let n = f.boundary_count();
    let mut pos: Vec<Complex64> = (0..f.node_count())
        .map(|v| {
            if v < n {
                Complex64::from_polar(1.0, 2.0 * PI * v as f64 / n as f64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    for _ in 0..500 {
        for v in n..f.node_count() {
            let nb = f.neighbors(v);
            pos[v] = nb.iter().map(|&w| pos[w]).sum::<Complex64>() / nb.len() as f64;
        }
    }
    pos
}

/// SVG 1.1 picture of a signature: labelled unit circle, one path per
/// strand (cubic near the boundary, straight between interior nodes),
/// crossings as black dots and pencils as dots of their colour.
pub fn render_signature(s: &Signature) -> String {
    let n = s.label_count() as usize;
    let pos = layout(s);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"480\" viewBox=\"-1.25 -1.25 2.5 2.5\">\n");
    let _ = writeln!(out, "<title>{}</title>", s.key());
    out.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.005\"/>\n");
    for (k, &p) in pos.iter().enumerate().take(n) {
        let l = p * 1.12;
        let _ = writeln!(
            out,
            "<circle class=\"label\" cx=\"{}\" cy=\"{}\" r=\"0.012\" fill=\"gray\"/><text x=\"{}\" y=\"{}\" font-size=\"0.08\" text-anchor=\"middle\" dominant-baseline=\"middle\">{k}</text>",
            num(p.re), num(-p.im), num(l.re), num(-l.im)
        );
    }
    for st in s.strands() {
        let a = pos[st.chord.a as usize];
        let b = pos[st.chord.b as usize];
        let mut d = format!("M {}", pt(a));
        let first = pos[st.nodes[0]];
        let last = pos[*st.nodes.last().expect("strands meet an interior node")];
        let _ = write!(d, " C {} {} {}", pt(a * 0.7), pt(first), pt(first));
        for &v in &st.nodes[1..] {
            let _ = write!(d, " L {}", pt(pos[v]));
        }
        let _ = write!(d, " C {} {} {}", pt(last), pt(b * 0.7), pt(b));
        let c = color_name(st.color);
        let _ = writeln!(
            out,
            "<path class=\"{c}\" data-chord=\"{},{}\" d=\"{d}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"0.012\"/>",
            st.chord.a, st.chord.b
        );
    }
    for v in s.forest().interior() {
        let fill = match s.kind(v) {
            NodeKind::Pencil(c) => color_name(c),
            _ => "black",
        };
        let class = if s.kind(v) == NodeKind::Crossing {
            "crossing"
        } else {
            "pencil"
        };
        let _ = writeln!(
            out,
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"0.025\" fill=\"{fill}\"/>",
            num(pos[v].re),
            num(-pos[v].im)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// SVG 1.1 picture of a traced drawing: curves as polylines, roots as
/// black dots, and the `4d` asymptotic directions as dashed guides.
pub fn render_drawing(dr: &Drawing) -> String {
    let r = dr.radius;
    let scale = 1.0 / r;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"480\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n");
    for k in 0..4 * dr.degree as u32 {
        let e = Complex64::from_polar(1.0, direction_angle(k, dr.degree));
        let _ = writeln!(
            out,
            "<line class=\"guide\" x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"lightgray\" stroke-width=\"0.004\" stroke-dasharray=\"0.02 0.02\"/>",
            num(e.re),
            num(-e.im)
        );
    }
    for c in &dr.curves {
        let pts: Vec<String> = c.points.iter().map(|z| pt(z * scale)).collect();
        let col = color_name(c.color);
        let _ = writeln!(
            out,
            "<polyline class=\"{col}\" data-ends=\"{},{}\" points=\"{}\" fill=\"none\" stroke=\"{col}\" stroke-width=\"0.008\"/>",
            c.ends.0,
            c.ends.1,
            pts.join(" ")
        );
    }
    for z in &dr.roots {
        let p = z * scale;
        let _ = writeln!(
            out,
            "<circle class=\"root\" cx=\"{}\" cy=\"{}\" r=\"0.015\" fill=\"black\"/>",
            num(p.re),
            num(-p.im)
        );
    }
    out.push_str("</svg>\n");
    out
}
