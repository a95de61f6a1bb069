//! Planar maps in the closed disc with labelled boundary points.
//!
//! Nodes `0..n` are the boundary points, in counterclockwise order; every
//! other node is interior. Each node carries its neighbours in
//! counterclockwise order (a rotation system).

use std::fmt;

use crate::error::MapError;

/// Boundary point `value` on a circle of `n` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryLabel {
    pub value: u32,
}

impl BoundaryLabel {
    pub fn new(value: u32, n: u32) -> Result<Self, MapError> {
        if value >= n {
            return Err(MapError::LabelOutOfRange { label: value, n });
        }
        Ok(BoundaryLabel { value })
    }

    pub fn is_even(self) -> bool {
        self.value.is_multiple_of(2)
    }
}

/// An unordered pair of boundary labels, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: u32,
    pub b: u32,
}

impl Chord {
    pub fn new(x: u32, y: u32) -> Self {
        if x < y {
            Chord { a: x, b: y }
        } else {
            Chord { a: y, b: x }
        }
    }

    pub fn checked(x: u32, y: u32, n: u32) -> Result<Self, MapError> {
        if x >= n || y >= n {
            return Err(MapError::LabelOutOfRange { label: x.max(y), n });
        }
        if x == y || x % 2 != y % 2 {
            return Err(MapError::BadChord { a: x, b: y });
        }
        Ok(Chord::new(x, y))
    }

    pub fn is_even(self) -> bool {
        self.a.is_multiple_of(2)
    }

    pub fn contains(self, x: u32) -> bool {
        self.a == x || self.b == x
    }

    /// Circular distance between the endpoints.
    pub fn span(self, n: u32) -> u32 {
        let d = self.b - self.a;
        d.min(n - d)
    }

    pub fn is_short(self, n: u32) -> bool {
        self.span(n) == 2
    }

    pub fn shifted(self, k: i64, n: u32) -> Chord {
        let m = n as i64;
        Chord::new(
            (self.a as i64 + k).rem_euclid(m) as u32,
            (self.b as i64 + k).rem_euclid(m) as u32,
        )
    }

    pub fn reflected(self, axis: i64, n: u32) -> Chord {
        let m = n as i64;
        Chord::new(
            (axis - self.a as i64).rem_euclid(m) as u32,
            (axis - self.b as i64).rem_euclid(m) as u32,
        )
    }

    /// `(a + b) mod n`; chords with equal value are parallel.
    pub fn direction(self, n: u32) -> u32 {
        (self.a + self.b) % n
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn strictly_inside(c: Chord, x: u32) -> bool {
    c.a < x && x < c.b
}

/// True iff the endpoints of `a` and `b` alternate around the circle.
pub fn interleaves(a: Chord, b: Chord) -> bool {
    if a.contains(b.a) || a.contains(b.b) {
        return false;
    }
    strictly_inside(a, b.a) != strictly_inside(a, b.b)
}

pub fn is_noncrossing(matching: &[Chord]) -> bool {
    for (i, &x) in matching.iter().enumerate() {
        for &y in &matching[i + 1..] {
            if interleaves(x, y) {
                return false;
            }
        }
    }
    true
}

/// All non-crossing perfect matchings of `points` (given in circular order).
pub fn noncrossing_matchings(points: &[u32]) -> Vec<Vec<Chord>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = points[0];
    for j in (1..points.len()).step_by(2) {
        let inner = noncrossing_matchings(&points[1..j]);
        let outer = noncrossing_matchings(&points[j + 1..]);
        for l in &inner {
            for r in &outer {
                let mut m = Vec::with_capacity(points.len() / 2);
                m.push(Chord::new(first, points[j]));
                m.extend_from_slice(l);
                m.extend_from_slice(r);
                m.sort();
                out.push(m);
            }
        }
    }
    out
}

/// One step of a face boundary walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceStep {
    /// Half-edge from the first node to the second.
    Dart(usize, usize),
    /// Boundary arc from label `l` clockwise to label `l - 1`.
    Arc(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<FaceStep>,
}

impl Face {
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.steps.iter().filter_map(|s| match *s {
            FaceStep::Dart(u, v) => Some((u, v)),
            FaceStep::Arc(_) => None,
        })
    }
}

/// Cyclically ordered spokes of an interior vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilVertex {
    pub node: usize,
    pub spokes: Vec<usize>,
}

impl PencilVertex {
    pub fn strand_count(&self) -> usize {
        self.spokes.len() / 2
    }

    pub fn local_index(&self) -> usize {
        2 * self.strand_count() - 3
    }

    pub fn opposite(&self, k: usize) -> usize {
        (k + self.strand_count()) % self.spokes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedForest {
    n: usize,
    rot: Vec<Vec<usize>>,
}

impl EmbeddedForest {
    /// `rot[v]` lists the neighbours of node `v` counterclockwise.
    pub fn new(n: usize, rot: Vec<Vec<usize>>) -> Result<Self, MapError> {
        if rot.len() < n {
            return Err(MapError::Structure(format!(
                "{} nodes cannot hold {} boundary labels",
                rot.len(),
                n
            )));
        }
        for (v, nb) in rot.iter().enumerate() {
            if v < n && nb.len() > 1 {
                return Err(MapError::Structure(format!(
                    "boundary label {v} has degree {}",
                    nb.len()
                )));
            }
            for (i, &w) in nb.iter().enumerate() {
                if w >= rot.len() || w == v {
                    return Err(MapError::Structure(format!(
                        "bad neighbour {w} at node {v}"
                    )));
                }
                if nb[i + 1..].contains(&w) {
                    return Err(MapError::Structure(format!("multi-edge {v}-{w}")));
                }
                if !rot[w].contains(&v) {
                    return Err(MapError::Structure(format!("edge {v}-{w} is one-sided")));
                }
            }
        }
        Ok(EmbeddedForest { n, rot })
    }

    pub fn empty(n: usize) -> Self {
        EmbeddedForest {
            n,
            rot: vec![Vec::new(); n],
        }
    }

    pub fn boundary_count(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.rot.len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        (self.n..self.rot.len()).filter(|&v| !self.rot[v].is_empty())
    }

    pub fn slot(&self, v: usize, w: usize) -> usize {
        self.rot[v]
            .iter()
            .position(|&x| x == w)
            .expect("not adjacent")
    }

    /// Neighbour following `u` counterclockwise around `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        r[(self.slot(v, u) + 1) % r.len()]
    }

    pub fn pencil(&self, v: usize) -> PencilVertex {
        PencilVertex {
            node: v,
            spokes: self.rot[v].clone(),
        }
    }

    fn next_step(&self, s: FaceStep) -> FaceStep {
        match s {
            FaceStep::Dart(u, v) => {
                if v < self.n {
                    FaceStep::Arc(v as u32)
                } else {
                    FaceStep::Dart(v, self.succ(v, u))
                }
            }
            FaceStep::Arc(l) => {
                let t = (l as usize + self.n - 1) % self.n;
                match self.rot[t].first() {
                    Some(&w) => FaceStep::Dart(t, w),
                    None => FaceStep::Arc(t as u32),
                }
            }
        }
    }

    /// Inner faces of the disc, each as its closed boundary walk.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = std::collections::HashSet::new();
        let mut starts: Vec<FaceStep> = (0..self.n as u32).map(FaceStep::Arc).collect();
        for (v, nb) in self.rot.iter().enumerate() {
            for &w in nb {
                starts.push(FaceStep::Dart(v, w));
            }
        }
        let mut faces = Vec::new();
        for s in starts {
            if seen.contains(&s) {
                continue;
            }
            let mut steps = Vec::new();
            let mut cur = s;
            loop {
                seen.insert(cur);
                steps.push(cur);
                cur = self.next_step(cur);
                if cur == s {
                    break;
                }
            }
            faces.push(Face { steps });
        }
        faces
    }

    /// Number of connected components among nodes of positive degree.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.rot.len()];
        let mut next = 0;
        for s in 0..self.rot.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(v) = stack.pop() {
                for &w in &self.rot[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Acyclicity of the underlying graph.
    pub fn forest_check(&self) -> bool {
        let comps = self.component_ids().into_iter().max().map_or(0, |m| m + 1);
        self.edge_count() + comps == self.rot.len()
    }

    /// Whether the rotation system is a genus-0 embedding in the disc with
    /// the boundary in label order.
    pub fn is_planar(&self) -> bool {
        let v = self.rot.len() as i64;
        let e = (self.edge_count() + self.n) as i64;
        let f = self.faces().len() as i64;
        // The boundary circle joins all components that touch it.
        let floating = {
            let comp = self.component_ids();
            let mut touching = vec![false; v as usize];
            for l in 0..self.n {
                touching[comp[l]] = true;
            }
            let mut extra = std::collections::HashSet::new();
            for x in 0..v as usize {
                if !touching[comp[x]] {
                    extra.insert(comp[x]);
                }
            }
            extra.len() as i64
        };
        floating == 0 && v - e + f == 1
    }

    /// Straight chords between points of a regular `n`-gon; every intersection
    /// becomes an interior vertex, coincident intersections are merged.
    pub fn from_straight_chords(n: usize, chords: &[Chord]) -> Result<Self, MapError> {
        let mut used = vec![false; n];
        for c in chords {
            for x in [c.a, c.b] {
                if x as usize >= n {
                    return Err(MapError::LabelOutOfRange {
                        label: x,
                        n: n as u32,
                    });
                }
                if std::mem::replace(&mut used[x as usize], true) {
                    return Err(MapError::Structure(format!("label {x} used twice")));
                }
            }
        }
        let pt = |x: u32| {
            let t = std::f64::consts::TAU * x as f64 / n as f64;
            (t.cos(), t.sin())
        };
        const EPS: f64 = 1e-9;
        let mut points: Vec<(f64, f64)> = (0..n as u32).map(pt).collect();
        let mut on_chord: Vec<Vec<(f64, usize)>> = chords
            .iter()
            .map(|c| vec![(0.0, c.a as usize), (1.0, c.b as usize)])
            .collect();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                if !interleaves(chords[i], chords[j]) {
                    continue;
                }
                let (p, q) = (pt(chords[i].a), pt(chords[i].b));
                let (r, s) = (pt(chords[j].a), pt(chords[j].b));
                let d1 = (q.0 - p.0, q.1 - p.1);
                let d2 = (s.0 - r.0, s.1 - r.1);
                let den = d1.0 * d2.1 - d1.1 * d2.0;
                let t = ((r.0 - p.0) * d2.1 - (r.1 - p.1) * d2.0) / den;
                let u = ((r.0 - p.0) * d1.1 - (r.1 - p.1) * d1.0) / den;
                let x = (p.0 + t * d1.0, p.1 + t * d1.1);
                let id = match points[n..]
                    .iter()
                    .position(|y| (y.0 - x.0).hypot(y.1 - x.1) < EPS)
                {
                    Some(k) => n + k,
                    None => {
                        points.push(x);
                        points.len() - 1
                    }
                };
                for (k, par) in [(i, t), (j, u)] {
                    if !on_chord[k].iter().any(|&(_, v)| v == id) {
                        on_chord[k].push((par, id));
                    }
                }
            }
        }
        let mut rot = vec![Vec::new(); points.len()];
        for list in &mut on_chord {
            list.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in list.windows(2) {
                rot[w[0].1].push(w[1].1);
                rot[w[1].1].push(w[0].1);
            }
        }
        for (v, nb) in rot.iter_mut().enumerate() {
            let o = points[v];
            nb.sort_by(|&a, &b| {
                let ta = (points[a].1 - o.1).atan2(points[a].0 - o.0);
                let tb = (points[b].1 - o.1).atan2(points[b].0 - o.0);
                ta.total_cmp(&tb)
            });
        }
        EmbeddedForest::new(n, rot)
    }
}

/// Mutable rotation system used while editing maps; removed nodes keep an
/// empty rotation until [`RotEdit::finish`] compacts them away.
#[derive(Clone, Debug)]
pub(crate) struct RotEdit {
    pub n: usize,
    pub rot: Vec<Vec<usize>>,
    pub dead: Vec<bool>,
}

impl RotEdit {
    pub fn from_forest(f: &EmbeddedForest) -> Self {
        RotEdit {
            n: f.n,
            rot: f.rot.clone(),
            dead: vec![false; f.rot.len()],
        }
    }

    pub fn add_node(&mut self, rot: Vec<usize>) -> usize {
        self.rot.push(rot);
        self.dead.push(false);
        self.rot.len() - 1
    }

    pub fn replace_neighbor(&mut self, v: usize, old: usize, new: usize) {
        for x in self.rot[v].iter_mut() {
            if *x == old {
                *x = new;
            }
        }
    }

    pub fn kill(&mut self, v: usize) {
        self.rot[v].clear();
        self.dead[v] = true;
    }

    /// Rotation of `v` read counterclockwise starting just after `u`,
    /// ending with `u`.
    pub fn rotation_after(&self, v: usize, u: usize) -> Vec<usize> {
        let r = &self.rot[v];
        let k = r.iter().position(|&x| x == u).expect("not adjacent");
        (1..=r.len()).map(|i| r[(k + i) % r.len()]).collect()
    }

    /// Puts a degree-2 node on edge `u`-`v` with rotation `[u, v]`.
    pub fn subdivide(&mut self, u: usize, v: usize) -> usize {
        let c = self.add_node(vec![u, v]);
        self.replace_neighbor(u, v, c);
        self.replace_neighbor(v, u, c);
        c
    }

    /// Merges the corners `(v, u)` (the sector of `v` just after `u`) into
    /// one node. Corners must be listed in face-walk order.
    pub fn merge_corners(&mut self, corners: &[(usize, usize)]) -> usize {
        let mut order = vec![corners[0]];
        order.extend(corners[1..].iter().rev().copied());
        let mut rot = Vec::new();
        for &(v, u) in &order {
            rot.extend(self.rotation_after(v, u));
        }
        let c = self.add_node(rot.clone());
        for &(v, _) in corners {
            for &w in &self.rot[v].clone() {
                self.replace_neighbor(w, v, c);
            }
            self.kill(v);
        }
        c
    }

    /// Contracts the edge `u`-`v` into a single node.
    pub fn contract_edge(&mut self, u: usize, v: usize) -> usize {
        let mut rot: Vec<usize> = self.rotation_after(u, v);
        rot.pop();
        let mut tail = self.rotation_after(v, u);
        tail.pop();
        rot.extend(tail);
        let c = self.add_node(rot.clone());
        for &w in &rot {
            self.replace_neighbor(w, u, c);
            self.replace_neighbor(w, v, c);
        }
        self.kill(u);
        self.kill(v);
        c
    }

    pub fn finish(self) -> Result<EmbeddedForest, MapError> {
        let mut map = vec![usize::MAX; self.rot.len()];
        let mut next = 0;
        for (v, m) in map.iter_mut().enumerate() {
            if v < self.n || !self.dead[v] {
                *m = next;
                next += 1;
            }
        }
        let mut rot = vec![Vec::new(); next];
        for v in 0..self.rot.len() {
            if map[v] == usize::MAX {
                continue;
            }
            rot[map[v]] = self.rot[v].iter().map(|&w| map[w]).collect();
        }
        EmbeddedForest::new(self.n, rot)
    }
}
