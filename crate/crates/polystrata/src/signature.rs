//! Signatures: bicoloured forests in the disc with `4d` labelled ends.
//!
//! Every edge carries the half-axis its image lies on (label mod 4:
//! 0 = R+, 1 = iR+, 2 = R-, 3 = iR-) and an orientation towards larger
//! modulus. A crossing (a root) sends out one edge of each half-axis in
//! counterclockwise order; a pencil is monochrome with a single half-axis
//! and alternating in/out spokes.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::SignatureError;
use crate::map::{interleaves, Chord, EmbeddedForest, Face};

pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn of_label(x: u32) -> Color {
        if x.is_multiple_of(2) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

/// Half-axis of one half-edge together with its direction seen from its node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spoke {
    pub axis: u8,
    pub out: bool,
}

impl Spoke {
    pub fn color(self) -> Color {
        Color::of_label(self.axis as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Boundary,
    Crossing,
    Pencil(Color),
}

/// A boundary-to-boundary path leaving every interior node on the opposite
/// spoke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub chord: Chord,
    pub color: Color,
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Signature {
    degree: usize,
    forest: EmbeddedForest,
    kinds: Vec<NodeKind>,
    spokes: Vec<Vec<Spoke>>,
    key: String,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.key == other.key
    }
}

impl Eq for Signature {}

impl Hash for Signature {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.key.hash(state);
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, &self.key).cmp(&(other.degree, &other.key))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

fn check_degree(d: usize) -> Result<(), SignatureError> {
    if d == 0 || d > MAX_DEGREE {
        return Err(SignatureError::Degree(d));
    }
    Ok(())
}

/// Renumbers interior nodes in depth-first order from label 0 and rotates
/// each interior rotation to start at its parent.
fn canonical_forest(f: &EmbeddedForest) -> Result<EmbeddedForest, SignatureError> {
    let n = f.boundary_count();
    let mut newid = vec![usize::MAX; f.node_count()];
    for (l, id) in newid.iter_mut().enumerate().take(n) {
        *id = l;
    }
    let mut order = Vec::new();
    let mut parent = vec![usize::MAX; f.node_count()];
    for l in 0..n {
        let Some(&first) = f.neighbors(l).first() else {
            continue;
        };
        if first < n || newid[first] != usize::MAX {
            continue;
        }
        let mut stack = vec![(first, l)];
        while let Some((v, p)) = stack.pop() {
            newid[v] = n + order.len();
            order.push(v);
            parent[v] = p;
            let kids: Vec<usize> = rotation_from(f, v, p);
            for &w in kids.iter().skip(1).rev() {
                if w >= n {
                    stack.push((w, v));
                }
            }
        }
    }
    if order.len() + n != f.node_count() {
        return Err(SignatureError::NonPlanar);
    }
    let mut rot = vec![Vec::new(); f.node_count()];
    for (l, r) in rot.iter_mut().enumerate().take(n) {
        *r = f.neighbors(l).iter().map(|&w| newid[w]).collect();
    }
    for &v in &order {
        rot[newid[v]] = rotation_from(f, v, parent[v])
            .iter()
            .map(|&w| newid[w])
            .collect();
    }
    Ok(EmbeddedForest::new(n, rot)?)
}

fn rotation_from(f: &EmbeddedForest, v: usize, first: usize) -> Vec<usize> {
    let r = f.neighbors(v);
    let k = f.slot(v, first);
    (0..r.len()).map(|i| r[(k + i) % r.len()]).collect()
}

impl Signature {
    /// Checks every invariant and returns the canonical representative.
    pub fn validate(degree: usize, forest: &EmbeddedForest) -> Result<Signature, SignatureError> {
        check_degree(degree)?;
        let n = 4 * degree;
        if forest.boundary_count() != n {
            return Err(SignatureError::Map(crate::error::MapError::Structure(
                format!(
                    "{} boundary labels for degree {degree}",
                    forest.boundary_count()
                ),
            )));
        }
        for l in 0..n {
            if forest.degree(l) != 1 {
                return Err(SignatureError::LooseEnd(l as u32));
            }
        }
        for v in n..forest.node_count() {
            let k = forest.degree(v);
            if k < 4 || k % 2 == 1 {
                return Err(SignatureError::Valency {
                    node: v,
                    valency: k,
                });
            }
        }
        if !forest.forest_check() {
            return Err(SignatureError::Cycle);
        }
        if !forest.is_planar() {
            return Err(SignatureError::NonPlanar);
        }
        let forest = canonical_forest(forest)?;
        let kinds = node_kinds(&forest)?;
        let spokes = propagate_axes(&forest, &kinds)?;
        let crossings = kinds.iter().filter(|k| **k == NodeKind::Crossing).count();
        if crossings != degree {
            return Err(SignatureError::CrossingCount {
                found: crossings,
                expected: degree,
            });
        }
        let key = encode(&forest, &kinds);
        Ok(Signature {
            degree,
            forest,
            kinds,
            spokes,
            key,
        })
    }

    /// A generic signature from two non-crossing matchings whose
    /// interleaving graph is a perfect matching.
    pub fn from_generic(
        degree: usize,
        blue: &[Chord],
        red: &[Chord],
    ) -> Result<Signature, SignatureError> {
        check_degree(degree)?;
        let n = 4 * degree as u32;
        for (chords, color, parity) in [(blue, Color::Blue, 0), (red, Color::Red, 1)] {
            let mut seen = HashSet::new();
            for c in chords {
                if c.a % 2 != parity || c.b % 2 != parity {
                    return Err(SignatureError::ChordParity(c.to_string()));
                }
                if c.b >= n || !seen.insert(c.a) || !seen.insert(c.b) {
                    return Err(SignatureError::NotPerfect(color.name()));
                }
            }
            if seen.len() != 2 * degree {
                return Err(SignatureError::NotPerfect(color.name()));
            }
            for (i, &x) in chords.iter().enumerate() {
                for &y in &chords[i + 1..] {
                    if interleaves(x, y) {
                        return Err(SignatureError::SameColorCrossing {
                            color: color.name(),
                            a: x.to_string(),
                            b: y.to_string(),
                        });
                    }
                }
            }
        }
        let mut rot = vec![Vec::new(); 4 * degree];
        for &b in blue {
            let partners: Vec<Chord> = red.iter().copied().filter(|&r| interleaves(b, r)).collect();
            if partners.len() != 1 {
                return Err(SignatureError::Pairing(format!(
                    "blue {b} crosses {} red chords",
                    partners.len()
                )));
            }
            let r = partners[0];
            if red.iter().filter(|&&x| x == r).count() != 1
                || blue.iter().filter(|&&x| interleaves(x, r)).count() != 1
            {
                return Err(SignatureError::Pairing(format!(
                    "red {r} crosses several blue chords"
                )));
            }
            let mut ends = [b.a, b.b, r.a, r.b];
            ends.sort();
            let c = rot.len();
            rot.push(ends.iter().map(|&x| x as usize).collect());
            for x in ends {
                rot[x as usize].push(c);
            }
        }
        Signature::validate(degree, &EmbeddedForest::new(4 * degree, rot)?)
    }

    /// Straight chords on the regular `4d`-gon; coincident same-colour
    /// intersections become pencils.
    pub fn from_straight_chords(
        degree: usize,
        blue: &[Chord],
        red: &[Chord],
    ) -> Result<Signature, SignatureError> {
        check_degree(degree)?;
        let all: Vec<Chord> = blue.iter().chain(red).copied().collect();
        for c in blue {
            if !c.is_even() || c.b % 2 != 0 {
                return Err(SignatureError::ChordParity(c.to_string()));
            }
        }
        for c in red {
            if c.is_even() || c.b % 2 != 1 {
                return Err(SignatureError::ChordParity(c.to_string()));
            }
        }
        let f = EmbeddedForest::from_straight_chords(4 * degree, &all)?;
        Signature::validate(degree, &f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label_count(&self) -> u32 {
        4 * self.degree as u32
    }

    pub fn forest(&self) -> &EmbeddedForest {
        &self.forest
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn kind(&self, v: usize) -> NodeKind {
        self.kinds[v]
    }

    pub fn spoke(&self, v: usize, slot: usize) -> Spoke {
        self.spokes[v][slot]
    }

    /// Half-axis and direction of the edge `v`-`w` as seen from `v`.
    pub fn edge_spoke(&self, v: usize, w: usize) -> Spoke {
        self.spokes[v][self.forest.slot(v, w)]
    }

    pub fn pencils(&self) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&v| matches!(self.kinds[v], NodeKind::Pencil(_)))
            .collect()
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&v| self.kinds[v] == NodeKind::Crossing)
            .collect()
    }

    pub fn codimension(&self) -> usize {
        self.pencils()
            .iter()
            .map(|&v| self.forest.degree(v) - 3)
            .sum()
    }

    pub fn is_generic(&self) -> bool {
        self.pencils().is_empty()
    }

    pub fn faces(&self) -> Vec<Face> {
        self.forest.faces()
    }

    pub fn strands(&self) -> Vec<Strand> {
        let n = 4 * self.degree;
        let mut out = Vec::new();
        for l in 0..n {
            let mut prev = l;
            let mut cur = self.forest.neighbors(l)[0];
            let mut nodes = Vec::new();
            while cur >= n {
                nodes.push(cur);
                let k = self.forest.slot(cur, prev);
                let deg = self.forest.degree(cur);
                let next = self.forest.neighbors(cur)[(k + deg / 2) % deg];
                prev = cur;
                cur = next;
            }
            if l < cur {
                out.push(Strand {
                    chord: Chord::new(l as u32, cur as u32),
                    color: Color::of_label(l as u32),
                    nodes,
                });
            }
        }
        out
    }

    pub fn chords(&self, color: Color) -> Vec<Chord> {
        let mut v: Vec<Chord> = self
            .strands()
            .into_iter()
            .filter(|s| s.color == color)
            .map(|s| s.chord)
            .collect();
        v.sort();
        v
    }

    /// Connected components as sorted lists of boundary labels.
    pub fn trees(&self) -> Vec<Vec<u32>> {
        let comp = self.forest.component_ids();
        let mut groups: Vec<Vec<u32>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (l, c) in comp.iter().enumerate().take(4 * self.degree) {
            let g = *index.entry(*c).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(l as u32);
        }
        groups
    }

    /// Relabels every end `x` to `x + k`; odd `k` exchanges the colours.
    pub fn shift(&self, k: i64) -> Signature {
        let n = 4 * self.degree;
        let map = |x: usize| -> usize {
            if x < n {
                (x as i64 + k).rem_euclid(n as i64) as usize
            } else {
                x
            }
        };
        let mut rot = vec![Vec::new(); self.forest.node_count()];
        for v in 0..self.forest.node_count() {
            rot[map(v)] = self.forest.neighbors(v).iter().map(|&w| map(w)).collect();
        }
        let f = EmbeddedForest::new(n, rot).expect("relabelling keeps the map");
        Signature::validate(self.degree, &f).expect("rotations preserve signatures")
    }

    /// Relabels every end `x` to `axis - x`, reversing orientation.
    pub fn reflect(&self, axis: i64) -> Signature {
        let n = 4 * self.degree;
        let map = |x: usize| -> usize {
            if x < n {
                (axis - x as i64).rem_euclid(n as i64) as usize
            } else {
                x
            }
        };
        let mut rot = vec![Vec::new(); self.forest.node_count()];
        for v in 0..self.forest.node_count() {
            rot[map(v)] = self
                .forest
                .neighbors(v)
                .iter()
                .rev()
                .map(|&w| map(w))
                .collect();
        }
        let f = EmbeddedForest::new(n, rot).expect("relabelling keeps the map");
        Signature::validate(self.degree, &f).expect("reflections preserve signatures")
    }
}

fn node_kinds(f: &EmbeddedForest) -> Result<Vec<NodeKind>, SignatureError> {
    let n = f.boundary_count();
    let mut color: Vec<Vec<Option<Color>>> = (0..f.node_count())
        .map(|v| vec![None; f.degree(v)])
        .collect();
    for l in 0..n {
        let c = Color::of_label(l as u32);
        let mut prev = l;
        let mut cur = f.neighbors(l)[0];
        color[l][0] = Some(c);
        loop {
            let back = f.slot(cur, prev);
            color[cur][back] = Some(c);
            if cur < n {
                if Color::of_label(cur as u32) != c {
                    return Err(SignatureError::Parity {
                        from: l as u32,
                        to: cur as u32,
                    });
                }
                break;
            }
            let deg = f.degree(cur);
            let k = (back + deg / 2) % deg;
            color[cur][k] = Some(c);
            prev = cur;
            cur = f.neighbors(cur)[k];
        }
    }
    let mut kinds = vec![NodeKind::Boundary; f.node_count()];
    for v in n..f.node_count() {
        let cs: Vec<Color> = color[v]
            .iter()
            .map(|c| c.expect("every spoke lies on a strand"))
            .collect();
        if cs.iter().all(|&c| c == cs[0]) {
            kinds[v] = NodeKind::Pencil(cs[0]);
        } else if cs.len() == 4 {
            kinds[v] = NodeKind::Crossing;
        } else {
            return Err(SignatureError::MixedVertex(v));
        }
    }
    Ok(kinds)
}

fn propagate_axes(
    f: &EmbeddedForest,
    kinds: &[NodeKind],
) -> Result<Vec<Vec<Spoke>>, SignatureError> {
    let n = f.boundary_count();
    let mut sp: Vec<Vec<Option<Spoke>>> = (0..f.node_count())
        .map(|v| vec![None; f.degree(v)])
        .collect();
    let mut queue = Vec::new();
    // Setting one half-edge fixes its twin at the other end.
    fn set(
        f: &EmbeddedForest,
        sp: &mut [Vec<Option<Spoke>>],
        queue: &mut Vec<usize>,
        v: usize,
        slot: usize,
        s: Spoke,
    ) -> Result<(), SignatureError> {
        match sp[v][slot] {
            Some(t) if t != s => return Err(SignatureError::Orientation(v)),
            Some(_) => return Ok(()),
            None => sp[v][slot] = Some(s),
        }
        let w = f.neighbors(v)[slot];
        let ws = f.slot(w, v);
        let twin = Spoke {
            axis: s.axis,
            out: !s.out,
        };
        match sp[w][ws] {
            Some(t) if t != twin => Err(SignatureError::Orientation(w)),
            Some(_) => Ok(()),
            None => {
                sp[w][ws] = Some(twin);
                queue.push(w);
                Ok(())
            }
        }
    }
    for l in 0..n {
        set(
            f,
            &mut sp,
            &mut queue,
            l,
            0,
            Spoke {
                axis: (l % 4) as u8,
                out: false,
            },
        )?;
    }
    while let Some(v) = queue.pop() {
        if v < n {
            continue;
        }
        let (i, s) = sp[v]
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.map(|s| (i, s)))
            .expect("queued nodes have a known spoke");
        let deg = f.degree(v);
        for j in 0..deg {
            let step = (j + deg - i) % deg;
            let want = match kinds[v] {
                NodeKind::Crossing => {
                    if !s.out {
                        return Err(SignatureError::Orientation(v));
                    }
                    Spoke {
                        axis: ((s.axis as usize + step) % 4) as u8,
                        out: true,
                    }
                }
                NodeKind::Pencil(_) => Spoke {
                    axis: s.axis,
                    out: s.out == step.is_multiple_of(2),
                },
                NodeKind::Boundary => unreachable!(),
            };
            set(f, &mut sp, &mut queue, v, j, want)?;
        }
    }
    Ok(sp
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|s| s.expect("forest components reach the boundary"))
                .collect()
        })
        .collect())
}

fn encode(f: &EmbeddedForest, kinds: &[NodeKind]) -> String {
    let n = f.boundary_count();
    let mut done = vec![false; f.node_count()];
    let mut parts = Vec::new();
    fn rec(
        f: &EmbeddedForest,
        kinds: &[NodeKind],
        v: usize,
        p: usize,
        out: &mut String,
        done: &mut [bool],
    ) {
        done[v] = true;
        if v < f.boundary_count() {
            out.push_str(&v.to_string());
            return;
        }
        out.push(match kinds[v] {
            NodeKind::Crossing => 'X',
            NodeKind::Pencil(Color::Blue) => 'B',
            NodeKind::Pencil(Color::Red) => 'R',
            NodeKind::Boundary => unreachable!(),
        });
        out.push('(');
        let r = rotation_from(f, v, p);
        for (i, &w) in r.iter().skip(1).enumerate() {
            if i > 0 {
                out.push(',');
            }
            rec(f, kinds, w, v, out, done);
        }
        out.push(')');
    }
    for l in 0..n {
        if done[l] {
            continue;
        }
        done[l] = true;
        let mut s = format!("{l}:");
        rec(f, kinds, f.neighbors(l)[0], l, &mut s, &mut done);
        parts.push(s);
    }
    parts.join(" ")
}
