//! Q-diagrams `[L0; L1]`: `d-2` narrow S trees whose top chords are `L0`
//! and bottom chords `L1 = L0 - 1`, the other labels filled with M trees.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::atlas::Atlas;
use crate::error::SignatureError;
use crate::map::Chord;
use crate::notation::{classify, fill_with_m, SignatureClass};
use crate::signature::Signature;

/// Column-by-column pairs, stored as unreduced integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDiagram {
    pub degree: usize,
    pub l0: Vec<(i64, i64)>,
    pub l1: Vec<(i64, i64)>,
}

fn norm(x: i64, n: i64) -> i64 {
    let r = x.rem_euclid(n);
    if r == 0 {
        n
    } else {
        r
    }
}

fn shift_row(row: &[(i64, i64)], k: i64) -> Vec<(i64, i64)> {
    row.iter().map(|&(a, b)| (a + k, b + k)).collect()
}

fn fmt_row(row: &[(i64, i64)], n: i64) -> String {
    row.iter()
        .map(|&(a, b)| format!("{},{}", norm(a, n), norm(b, n)))
        .collect::<Vec<_>>()
        .join(" ")
}

impl QDiagram {
    fn n(&self) -> i64 {
        4 * self.degree as i64
    }

    /// The next diagram of the cycle: `[L1; L1 - 1]`.
    pub fn successor(&self) -> QDiagram {
        QDiagram {
            degree: self.degree,
            l0: self.l1.clone(),
            l1: shift_row(&self.l1, -1),
        }
    }

    pub fn chords(&self) -> Vec<Chord> {
        let n = self.n();
        let mut v: Vec<Chord> = self
            .l0
            .iter()
            .chain(&self.l1)
            .map(|&(a, b)| Chord::new(a.rem_euclid(n) as u32, b.rem_euclid(n) as u32))
            .collect();
        v.sort();
        v
    }

    pub fn signature(&self) -> Result<Signature, SignatureError> {
        fill_with_m(self.degree, self.chords())
    }

    /// Same diagram up to column order.
    pub fn same_as(&self, other: &QDiagram) -> bool {
        self.degree == other.degree && self.chords() == other.chords()
    }

    /// Axis `a` (least in `0..4d`) with `x -> a - x` fixing the diagram.
    pub fn mirror_axis(&self) -> Option<i64> {
        let n = self.n();
        let s = self.chords();
        (0..n).find(|&a| {
            let mut t: Vec<Chord> = s.iter().map(|c| c.reflected(a, n as u32)).collect();
            t.sort();
            t == s
        })
    }

    /// Directions `(a+b) mod 4d` of the diagram's chords.
    pub fn directions(&self) -> BTreeSet<u32> {
        let n = self.n() as u32;
        self.chords().iter().map(|c| c.direction(n)).collect()
    }
}

impl fmt::Display for QDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let row = |r: &[(i64, i64)]| {
            r.iter()
                .map(|&(a, b)| format!("{},{}", a.rem_euclid(n), b.rem_euclid(n)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "[{}; {}]", row(&self.l0), row(&self.l1))
    }
}

/// First row of the degree-`d` column of the inclusion table.
fn table_top(d: usize) -> Vec<(i64, i64)> {
    let d = d as i64;
    (1..=d - 2)
        .map(|j| (2 * d + 5 + 2 * j, 2 * d + 3 - 2 * j))
        .collect()
}

fn table_row(d: usize, r: usize) -> QDiagram {
    let l0 = shift_row(&table_top(d), -(r as i64));
    let l1 = shift_row(&l0, -1);
    QDiagram { degree: d, l0, l1 }
}

/// The seed `[1,4d-5 3,4d-7 ...; 0,4d-6 2,4d-8 ...]`.
pub fn q_seed(d: usize) -> QDiagram {
    let n = 4 * d as i64;
    let l0: Vec<(i64, i64)> = (1..=d as i64 - 2)
        .map(|j| (2 * j - 1, n - 3 - 2 * j))
        .collect();
    let l1 = shift_row(&l0, -1);
    QDiagram { degree: d, l0, l1 }
}

/// The cycle of Q-diagrams starting from [`q_seed`].
pub fn q_diagrams(d: usize) -> Result<Vec<QDiagram>, SignatureError> {
    if !(4..=crate::atlas::MAX_GENERIC_DEGREE).contains(&d) {
        return Err(SignatureError::Degree(d));
    }
    let mut out = vec![q_seed(d)];
    loop {
        let next = out.last().unwrap().successor();
        if next.same_as(&out[0]) {
            break;
        }
        out.push(next);
    }
    Ok(out)
}

/// One row of a table cell: the `(i, j)` entries left to right.
pub type Entries = Vec<(i64, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTableCell {
    pub top: Entries,
    pub bottom: Entries,
}

impl QTableCell {
    /// Entries reduced into `1..=4d`, as printed in the table.
    pub fn normalized(&self, d: usize) -> (Entries, Entries) {
        let n = 4 * d as i64;
        let f = |r: &[(i64, i64)]| r.iter().map(|&(a, b)| (norm(a, n), norm(b, n))).collect();
        (f(&self.top), f(&self.bottom))
    }

    pub fn render(&self, d: usize) -> String {
        let n = 4 * d as i64;
        format!("[{}; {}]", fmt_row(&self.top, n), fmt_row(&self.bottom, n))
    }

    /// Appends the column `(a+2, b-2)` under the last one.
    pub fn embed(&self) -> QTableCell {
        let ext = |r: &[(i64, i64)]| {
            let mut v = r.to_vec();
            let &(a, b) = r.last().expect("nonempty");
            v.push((a + 2, b - 2));
            v
        };
        QTableCell {
            top: ext(&self.top),
            bottom: ext(&self.bottom),
        }
    }
}

/// Columns of the inclusion table, aligned at the bottom: column `d` has
/// `2d` rows.
#[derive(Clone, Debug)]
pub struct QTable {
    pub columns: BTreeMap<usize, Vec<QTableCell>>,
}

pub fn q_table(d_min: usize, d_max: usize) -> Result<QTable, SignatureError> {
    if d_min < 3 || d_max > 7 || d_min > d_max {
        return Err(SignatureError::Degree(if d_min < 3 {
            d_min
        } else {
            d_max
        }));
    }
    let mut columns = BTreeMap::new();
    for d in d_min..=d_max {
        let rows = (0..2 * d)
            .map(|r| {
                let q = table_row(d, r);
                QTableCell {
                    top: q.l0,
                    bottom: q.l1,
                }
            })
            .collect();
        columns.insert(d, rows);
    }
    Ok(QTable { columns })
}

impl QTable {
    /// Cell of column `d` sitting `k` rows above the bottom.
    pub fn from_bottom(&self, d: usize, k: usize) -> Option<&QTableCell> {
        let col = self.columns.get(&d)?;
        col.len().checked_sub(k + 1).map(|i| &col[i])
    }

    /// Cells where appending a column does not give the neighbour to the right.
    pub fn embedding_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&d, col) in &self.columns {
            if !self.columns.contains_key(&(d + 1)) {
                continue;
            }
            for k in 0..col.len() {
                let here = self.from_bottom(d, k).unwrap().embed();
                let there = self.from_bottom(d + 1, k).unwrap();
                if here.normalized(d + 1) != there.normalized(d + 1) {
                    out.push((d, k));
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (&d, col) in &self.columns {
            s.push_str(&format!("d = {d} (mod {})\n", 4 * d));
            for c in col {
                s.push_str(&format!("  {}\n", c.render(d)));
            }
        }
        s
    }
}

pub(crate) fn whitehead_graph(atlas: &Atlas) -> HashMap<usize, Vec<usize>> {
    let mut g = HashMap::new();
    for v in atlas.generic() {
        let mut nb: Vec<usize> = atlas.up[v]
            .iter()
            .filter(|&&w| atlas.codim(w) == 1)
            .flat_map(|&w| atlas.down[w].iter().copied())
            .filter(|&t| t != v && atlas.codim(t) == 0)
            .collect();
        nb.sort();
        nb.dedup();
        g.insert(v, nb);
    }
    g
}

fn has_parallel_long(s: &Signature, dirs: &BTreeSet<u32>) -> bool {
    let n = s.label_count();
    s.strands()
        .iter()
        .any(|x| !x.chord.is_short(n) && dirs.contains(&x.chord.direction(n)))
}

fn class_of(s: &Signature) -> SignatureClass {
    classify(s).expect("generic").class
}

/// Generic signatures of the piece around `q`, as atlas ids.
///
/// The core is the Whitehead-connected component of `q` among signatures
/// keeping a long chord parallel to those of `q`; then F-signatures next to
/// S-signatures of the core are added, and finally the M-signatures next
/// to the piece's F-signatures.
pub fn q_piece(atlas: &Atlas, q: &QDiagram) -> Result<BTreeSet<usize>, SignatureError> {
    let g = whitehead_graph(atlas);
    let dirs = q.directions();
    let start = atlas
        .id(&q.signature()?)
        .ok_or(SignatureError::Unsupported("Q-diagram outside the atlas"))?;
    let mut core = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &t in &g[&v] {
            if has_parallel_long(&atlas.cells[t], &dirs) && core.insert(t) {
                queue.push_back(t);
            }
        }
    }
    let mut piece = core.clone();
    for &v in &core {
        if matches!(class_of(&atlas.cells[v]), SignatureClass::S(_)) {
            for &t in &g[&v] {
                if matches!(class_of(&atlas.cells[t]), SignatureClass::F(_)) {
                    piece.insert(t);
                }
            }
        }
    }
    let fs: Vec<usize> = piece
        .iter()
        .copied()
        .filter(|&v| matches!(class_of(&atlas.cells[v]), SignatureClass::F(_)))
        .collect();
    for v in fs {
        for &t in &g[&v] {
            if matches!(class_of(&atlas.cells[t]), SignatureClass::M(_)) {
                piece.insert(t);
            }
        }
    }
    Ok(piece)
}

fn distances(g: &HashMap<usize, Vec<usize>>, from: usize) -> HashMap<usize, usize> {
    let mut dist = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &t in &g[&v] {
            if !dist.contains_key(&t) {
                dist.insert(t, dist[&v] + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Distance from `x` to `y` and the vertices on shortest paths between them.
pub(crate) fn geodesic_interval(
    g: &HashMap<usize, Vec<usize>>,
    x: usize,
    y: usize,
) -> (usize, BTreeSet<usize>) {
    let dx = distances(g, x);
    let dy = distances(g, y);
    let total = dx[&y];
    let set = dx
        .iter()
        .filter(|(v, &d)| dy.get(v).is_some_and(|&e| d + e == total))
        .map(|(&v, _)| v)
        .collect();
    (total, set)
}

/// Generic signatures on shortest Whitehead paths between two Q-diagrams.
pub fn connection_piece(
    atlas: &Atlas,
    a: &QDiagram,
    b: &QDiagram,
) -> Result<BTreeSet<usize>, SignatureError> {
    let g = whitehead_graph(atlas);
    let missing = SignatureError::Unsupported("Q-diagram outside the atlas");
    let x = atlas.id(&a.signature()?).ok_or(missing.clone())?;
    let y = atlas.id(&b.signature()?).ok_or(missing)?;
    Ok(geodesic_interval(&g, x, y).1)
}

#[derive(Clone, Debug)]
pub struct ChamberReport {
    pub pieces: Vec<BTreeSet<usize>>,
    pub distinct_pieces: usize,
    /// Axis `b_i` of the reflection carrying piece `i` onto piece `i+1`,
    /// when it maps the whole piece.
    pub walls: Vec<Option<i64>>,
    /// Axis of the reflection fixing Q-diagram `i`, when it preserves the
    /// piece and moves some member.
    pub mirrors: Vec<Option<i64>>,
    /// Whether consecutive mirrors are conjugate through the wall between
    /// them, so that they form a single transverse wall.
    pub transverse: bool,
    pub chambers: usize,
    pub covered: usize,
    pub generic: usize,
}

fn reflect_set(atlas: &Atlas, set: &BTreeSet<usize>, axis: i64) -> Option<BTreeSet<usize>> {
    set.iter()
        .map(|&v| atlas.id(&atlas.cells[v].reflect(axis)))
        .collect()
}

/// Walls between consecutive Q-pieces, their internal mirrors and the
/// resulting chambers; also how many generic signatures the pieces and
/// connection pieces cover.
pub fn chamber_report(atlas: &Atlas) -> Result<ChamberReport, SignatureError> {
    let d = atlas.degree;
    let n = 4 * d as i64;
    let qs = q_diagrams(d)?;
    let pieces: Vec<BTreeSet<usize>> = qs
        .iter()
        .map(|q| q_piece(atlas, q))
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<&BTreeSet<usize>> = pieces.iter().collect();
    let m = qs.len();
    let mut walls = Vec::new();
    let mut mirrors = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        let a = qs[i].chords();
        let wall = (0..n).find(|&b| {
            let mut t: Vec<Chord> = a.iter().map(|c| c.reflected(b, n as u32)).collect();
            t.sort();
            t == qs[j].chords() && reflect_set(atlas, &pieces[i], b).as_ref() == Some(&pieces[j])
        });
        walls.push(wall);
        let mirror = qs[i].mirror_axis().filter(|&ax| {
            let img = reflect_set(atlas, &pieces[i], ax);
            img.as_ref() == Some(&pieces[i])
                && pieces[i]
                    .iter()
                    .any(|&v| atlas.id(&atlas.cells[v].reflect(ax)) != Some(v))
        });
        mirrors.push(mirror);
    }
    let transverse = (0..m).all(|i| {
        let j = (i + 1) % m;
        match (mirrors[i], walls[i], mirrors[j]) {
            (Some(a), Some(b), Some(c)) => (2 * b - a - c).rem_euclid(n) % (n / 2) == 0,
            _ => false,
        }
    });
    let chambers = 2 * mirrors.iter().filter(|x| x.is_some()).count();
    let mut cover: BTreeSet<usize> = pieces.iter().flatten().copied().collect();
    for i in 0..m {
        cover.extend(connection_piece(atlas, &qs[i], &qs[(i + 1) % m])?);
    }
    Ok(ChamberReport {
        distinct_pieces: distinct.len(),
        pieces,
        walls,
        mirrors,
        transverse,
        chambers,
        covered: cover.len(),
        generic: atlas.generic().len(),
    })
}
