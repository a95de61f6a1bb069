//! Half-Whitehead moves: contractions (gluing strands of one colour at a
//! point, or merging two adjacent pencils) and smoothings (splitting a pencil
//! into a planar reconnection of its spokes).

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::MoveError;
use crate::map::{Chord, FaceStep, RotEdit};
use crate::notation::{classify, SignatureClass};
use crate::signature::{Color, NodeKind, Signature};

/// A place on a face where strands can be glued: the interior of an edge
/// (given as the dart traversed by the face walk) or the corner of a pencil
/// vertex entered from `after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    Edge(usize, usize),
    Vertex { node: usize, after: usize },
}

impl Site {
    fn anchor(self) -> usize {
        match self {
            Site::Edge(u, _) => u,
            Site::Vertex { node, .. } => node,
        }
    }

    fn axis(self, s: &Signature) -> u8 {
        match self {
            Site::Edge(u, v) => s.edge_spoke(u, v).axis,
            Site::Vertex { node, .. } => s.spoke(node, 0).axis,
        }
    }
}

/// Sites on face `face` of `s`, in face-walk order.
pub fn face_sites(s: &Signature, face: usize) -> Vec<Site> {
    let faces = s.faces();
    let steps = &faces[face].steps;
    let mut out = Vec::new();
    for (k, st) in steps.iter().enumerate() {
        if let FaceStep::Dart(u, v) = *st {
            out.push(Site::Edge(u, v));
            if let FaceStep::Dart(x, _) = steps[(k + 1) % steps.len()] {
                debug_assert_eq!(x, v);
                if matches!(s.kind(v), NodeKind::Pencil(_)) {
                    out.push(Site::Vertex { node: v, after: u });
                }
            }
        }
    }
    out
}

/// Glues the chosen sites of one face into a single pencil vertex.
pub fn contract(s: &Signature, face: usize, sites: &[Site]) -> Result<Signature, MoveError> {
    if sites.len() < 2 {
        return Err(MoveError::TooFewSites(sites.len()));
    }
    let nfaces = s.faces().len();
    if face >= nfaces {
        return Err(MoveError::NoFace(face));
    }
    let on_face = face_sites(s, face);
    let mut ordered: Vec<(usize, Site)> = Vec::new();
    for &site in sites {
        let pos = on_face
            .iter()
            .position(|&x| x == site)
            .ok_or_else(|| MoveError::NotOnFace(format!("{site:?}")))?;
        ordered.push((pos, site));
    }
    ordered.sort();
    let comp = s.forest().component_ids();
    let mut trees = HashSet::new();
    for &(_, site) in &ordered {
        if !trees.insert(comp[site.anchor()]) {
            return Err(MoveError::SameTree);
        }
    }
    let color = Color::of_label(ordered[0].1.axis(s) as u32);
    if ordered
        .iter()
        .any(|&(_, x)| Color::of_label(x.axis(s) as u32) != color)
    {
        return Err(MoveError::Invalid(crate::SignatureError::Orientation(
            ordered[0].1.anchor(),
        )));
    }
    glue(s, &ordered.iter().map(|&(_, x)| x).collect::<Vec<_>>())
}

fn glue(s: &Signature, sites: &[Site]) -> Result<Signature, MoveError> {
    let mut ed = RotEdit::from_forest(s.forest());
    let mut corners = Vec::new();
    for &site in sites {
        match site {
            Site::Edge(u, v) => {
                let c = ed.subdivide(u, v);
                corners.push((c, u));
            }
            Site::Vertex { node, after } => corners.push((node, after)),
        }
    }
    ed.merge_corners(&corners);
    let f = ed.finish().map_err(crate::SignatureError::from)?;
    Ok(Signature::validate(s.degree(), &f)?)
}

/// Merges the adjacent pencils `u` and `v`.
pub fn collapse(s: &Signature, u: usize, v: usize) -> Result<Signature, MoveError> {
    for x in [u, v] {
        if !matches!(s.kind(x), NodeKind::Pencil(_)) {
            return Err(MoveError::NotPencil(x));
        }
    }
    let mut ed = RotEdit::from_forest(s.forest());
    ed.contract_edge(u, v);
    let f = ed.finish().map_err(crate::SignatureError::from)?;
    Ok(Signature::validate(s.degree(), &f)?)
}

/// Contracting move applied to a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpMove {
    Pinch { face: usize, sites: Vec<Site> },
    Collapse(usize, usize),
}

/// Every single contracting move from `s` (pairs of sites on a common face
/// and merges of adjacent equal pencils), deduplicated by result.
pub fn up_moves(s: &Signature) -> Vec<(UpMove, Signature)> {
    let comp = s.forest().component_ids();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (fi, _) in s.faces().iter().enumerate() {
        let sites = face_sites(s, fi);
        for i in 0..sites.len() {
            for j in i + 1..sites.len() {
                let (a, b) = (sites[i], sites[j]);
                if comp[a.anchor()] == comp[b.anchor()] || a.axis(s) != b.axis(s) {
                    continue;
                }
                if let Ok(t) = glue(s, &[a, b]) {
                    if seen.insert(t.key().to_string()) {
                        out.push((
                            UpMove::Pinch {
                                face: fi,
                                sites: vec![a, b],
                            },
                            t,
                        ));
                    }
                }
            }
        }
    }
    for u in s.pencils() {
        for &v in s.forest().neighbors(u) {
            if u < v && matches!(s.kind(v), NodeKind::Pencil(_)) {
                if let Ok(t) = collapse(s, u, v) {
                    if seen.insert(t.key().to_string()) {
                        out.push((UpMove::Collapse(u, v), t));
                    }
                }
            }
        }
    }
    out
}

/// Splits node `v` into the cyclic block of `len` spokes starting at slot
/// `start` and the complementary block. Returns the edit and the new
/// interior nodes it created.
fn split(
    ed: &RotEdit,
    v: usize,
    start: usize,
    len: usize,
    connected: bool,
) -> Option<(RotEdit, Vec<usize>)> {
    let r = ed.rot[v].clone();
    let k = r.len();
    if len == 0 || len >= k {
        return None;
    }
    let a: Vec<usize> = (0..len).map(|i| r[(start + i) % k]).collect();
    let b: Vec<usize> = (len..k).map(|i| r[(start + i) % k]).collect();
    let mut ed = ed.clone();
    ed.kill(v);
    let mut created = Vec::new();
    if connected {
        if a.len().is_multiple_of(2) || a.len() < 3 || b.len() < 3 {
            return None;
        }
        let x = ed.add_node(Vec::new());
        let y = ed.add_node(Vec::new());
        let mut ra = a.clone();
        ra.push(y);
        let mut rb = b.clone();
        rb.push(x);
        ed.rot[x] = ra;
        ed.rot[y] = rb;
        for &w in &a {
            ed.replace_neighbor(w, v, x);
        }
        for &w in &b {
            ed.replace_neighbor(w, v, y);
        }
        created.extend([x, y]);
    } else {
        if a.len() % 2 == 1 {
            return None;
        }
        for block in [a, b] {
            if block.len() == 2 {
                ed.replace_neighbor(block[0], v, block[1]);
                ed.replace_neighbor(block[1], v, block[0]);
            } else {
                let x = ed.add_node(block.clone());
                for &w in &block {
                    ed.replace_neighbor(w, v, x);
                }
                created.push(x);
            }
        }
    }
    Some((ed, created))
}

fn all_splits(ed: &RotEdit, v: usize) -> Vec<(RotEdit, Vec<usize>)> {
    let k = ed.rot[v].len();
    let mut out = Vec::new();
    for start in 0..k {
        for len in 1..k {
            for connected in [false, true] {
                if let Some(x) = split(ed, v, start, len, connected) {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn finish(ed: &RotEdit, degree: usize) -> Option<Signature> {
    let f = ed.clone().finish().ok()?;
    Signature::validate(degree, &f).ok()
}

/// Single smoothing moves of `s`: every split of one pencil.
pub fn down_moves(s: &Signature) -> Vec<Signature> {
    let ed = RotEdit::from_forest(s.forest());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in s.pencils() {
        for (e, _) in all_splits(&ed, v) {
            if let Some(t) = finish(&e, s.degree()) {
                if seen.insert(t.key().to_string()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// All partial and full smoothings of the pencil `vertex`.
pub fn smoothings(s: &Signature, vertex: usize) -> Result<Vec<Signature>, MoveError> {
    if !matches!(s.kind(vertex), NodeKind::Pencil(_)) {
        return Err(MoveError::NotPencil(vertex));
    }
    let start = RotEdit::from_forest(s.forest());
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(s.key().to_string());
    let mut queue = VecDeque::from([(start, vec![vertex])]);
    let mut out = Vec::new();
    while let Some((ed, local)) = queue.pop_front() {
        for &v in &local {
            for (e, created) in all_splits(&ed, v) {
                let Some(t) = finish(&e, s.degree()) else {
                    continue;
                };
                if !seen.insert(t.key().to_string()) {
                    continue;
                }
                let mut next: Vec<usize> = local.iter().copied().filter(|&x| x != v).collect();
                next.extend(created);
                out.push(t);
                queue.push_back((e, next));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Smoothings of `vertex` that leave no pencil behind in its place.
pub fn full_smoothings(s: &Signature, vertex: usize) -> Result<Vec<Signature>, MoveError> {
    let target = s.codimension() - (s.forest().degree(vertex) - 3);
    Ok(smoothings(s, vertex)?
        .into_iter()
        .filter(|t| t.codimension() == target)
        .collect())
}

/// A Whitehead move: `from` contracts to `wall`, which smooths to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadMove {
    pub from: Signature,
    pub wall: Signature,
    pub to: Signature,
}

/// Pairs `(wall, t)` with `s` and `t` both one step below `wall` and of the
/// same codimension.
pub fn whitehead_neighbors(s: &Signature) -> Vec<(Signature, Signature)> {
    let k = s.codimension();
    let mut out = BTreeSet::new();
    for (_, w) in up_moves(s) {
        if w.codimension() != k + 1 {
            continue;
        }
        for t in down_moves(&w) {
            if t.codimension() == k && t != *s {
                out.insert((w.clone(), t));
            }
        }
    }
    out.into_iter().collect()
}

/// Distinct signatures reachable by one Whitehead move.
pub fn adjacent(s: &Signature) -> Vec<Signature> {
    let set: BTreeSet<Signature> = whitehead_neighbors(s).into_iter().map(|(_, t)| t).collect();
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    Equal,
    /// The first argument precedes the second.
    Below,
    Above,
    Incomparable,
}

fn reaches(a: &Signature, b: &Signature) -> bool {
    let target = b.codimension();
    let mut seen = HashSet::new();
    let mut stack = vec![a.clone()];
    while let Some(x) = stack.pop() {
        for (_, y) in up_moves(&x) {
            if y == *b {
                return true;
            }
            if y.codimension() < target && seen.insert(y.key().to_string()) {
                stack.push(y);
            }
        }
    }
    false
}

/// The incidence order: `a ≺ b` iff `b` arises from `a` by contractions.
pub fn incidence(a: &Signature, b: &Signature) -> Result<Incidence, MoveError> {
    if a.degree() != b.degree() {
        return Err(MoveError::DegreeMismatch(a.degree(), b.degree()));
    }
    if a == b {
        return Ok(Incidence::Equal);
    }
    let (ca, cb) = (a.codimension(), b.codimension());
    Ok(if ca < cb && reaches(a, b) {
        Incidence::Below
    } else if cb < ca && reaches(b, a) {
        Incidence::Above
    } else {
        Incidence::Incomparable
    })
}

fn potential(s: &Signature) -> (usize, u32) {
    let n = s.label_count();
    let chords: Vec<Chord> = s.strands().iter().map(|x| x.chord).collect();
    let long = chords.iter().filter(|c| !c.is_short(n)).count();
    (long, chords.iter().map(|c| c.span(n)).sum())
}

fn is_m(s: &Signature) -> bool {
    matches!(classify(s), Ok(c) if matches!(c.class, SignatureClass::M(_)))
}

/// A sequence of Whitehead moves from a generic `s` to an M-signature.
///
/// Moves greedily shorten chords; if no neighbour lowers the potential the
/// remainder is found by breadth-first search.
pub fn path_to_m(s: &Signature) -> Result<Vec<WhiteheadMove>, MoveError> {
    if !s.is_generic() {
        return Err(MoveError::NotGeneric);
    }
    let mut path = Vec::new();
    let mut cur = s.clone();
    while !is_m(&cur) {
        let here = potential(&cur);
        let best = whitehead_neighbors(&cur)
            .into_iter()
            .map(|(w, t)| (potential(&t), w, t))
            .filter(|(p, _, _)| *p < here)
            .min();
        match best {
            Some((_, wall, to)) => {
                path.push(WhiteheadMove {
                    from: cur.clone(),
                    wall,
                    to: to.clone(),
                });
                cur = to;
            }
            None => {
                path.extend(bfs_to_m(&cur));
                return Ok(path);
            }
        }
    }
    Ok(path)
}

fn bfs_to_m(s: &Signature) -> Vec<WhiteheadMove> {
    let mut prev: HashMap<Signature, (Signature, Signature)> = HashMap::new();
    let mut queue = VecDeque::from([s.clone()]);
    let mut seen = HashSet::from([s.clone()]);
    while let Some(x) = queue.pop_front() {
        if is_m(&x) {
            let mut moves = Vec::new();
            let mut cur = x;
            while let Some((from, wall)) = prev.get(&cur) {
                moves.push(WhiteheadMove {
                    from: from.clone(),
                    wall: wall.clone(),
                    to: cur.clone(),
                });
                cur = from.clone();
            }
            moves.reverse();
            return moves;
        }
        for (w, t) in whitehead_neighbors(&x) {
            if seen.insert(t.clone()) {
                prev.insert(t.clone(), (x.clone(), w));
                queue.push_back(t);
            }
        }
    }
    unreachable!("the Whitehead graph of generic signatures is connected")
}
