//! The inclusion diagram as a cell complex: one k-cell per codimension-k
//! signature, bounded by the cells one codimension lower that precede it.

mod q;

pub use q::{
    chamber_report, connection_piece, q_diagrams, q_piece, q_seed, q_table, ChamberReport, Entries,
    QDiagram, QTable, QTableCell,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::atlas::Atlas;
use crate::error::SignatureError;
use crate::notation::{classify, SignatureClass, TreeClass};
use crate::signature::{Color, NodeKind, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    pub key: String,
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub degree: usize,
    pub cells: Vec<Cell>,
    pub atlas: Atlas,
}

pub fn build_nerve(d: usize) -> Result<NerveComplex, SignatureError> {
    Ok(NerveComplex::from_atlas(Atlas::build(d)?))
}

impl NerveComplex {
    pub fn from_atlas(atlas: Atlas) -> NerveComplex {
        let cells = (0..atlas.len())
            .map(|i| Cell {
                id: i,
                dim: atlas.codim(i),
                key: atlas.cells[i].key().to_string(),
                boundary: atlas.boundary(i),
            })
            .collect();
        NerveComplex {
            degree: atlas.degree,
            cells,
            atlas,
        }
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.dim == k)
            .map(|c| c.id)
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.dim).max().unwrap_or(0);
        (0..=top).map(|k| self.cells_of_dim(k).len()).collect()
    }

    /// Vertices (generic cells) in the closure of `id`.
    pub fn vertices_of(&self, id: usize) -> Vec<usize> {
        if self.cells[id].dim == 0 {
            return vec![id];
        }
        self.atlas
            .below(id)
            .into_iter()
            .filter(|&j| self.cells[j].dim == 0)
            .collect()
    }

    pub fn signature(&self, id: usize) -> &Signature {
        &self.atlas.cells[id]
    }

    /// Checks that every 1-cell has two vertices and every 2-cell is a
    /// quadrangle determined by its vertex set.
    pub fn quadrangle_report(&self) -> QuadrangleReport {
        let mut violations = Vec::new();
        let ones = self.cells_of_dim(1);
        let twos = self.cells_of_dim(2);
        for &e in &ones {
            let b = &self.cells[e].boundary;
            if b.len() != 2 {
                violations.push(format!("1-cell {e} has {} vertices", b.len()));
            }
        }
        for &q in &twos {
            let edges = &self.cells[q].boundary;
            let verts: BTreeSet<usize> = edges
                .iter()
                .flat_map(|&e| self.cells[e].boundary.iter().copied())
                .collect();
            if edges.len() != 4 || verts.len() != 4 {
                violations.push(format!(
                    "2-cell {q} has {} edges and {} vertices",
                    edges.len(),
                    verts.len()
                ));
            }
        }
        let mut walls: HashMap<Vec<usize>, usize> = HashMap::new();
        for &e in &ones {
            *walls.entry(self.cells[e].boundary.clone()).or_default() += 1;
        }
        let shared_walls = walls.values().filter(|&&c| c > 1).count();
        if shared_walls > 0 {
            violations.push(format!("{shared_walls} vertex pairs share several walls"));
        }
        let mut quads: HashMap<Vec<usize>, usize> = HashMap::new();
        for &q in &twos {
            *quads.entry(self.vertices_of(q)).or_default() += 1;
        }
        let shared_quads = quads.values().filter(|&&c| c > 1).count();
        if shared_quads > 0 {
            violations.push(format!(
                "{shared_quads} vertex quadruples share several 2-cells"
            ));
        }
        QuadrangleReport {
            one_cells: ones.len(),
            two_cells: twos.len(),
            violations,
        }
    }

    /// The four substructures below the monochrome d-pencils.
    pub fn nc_structures(&self) -> Vec<NcStructure> {
        let top = 2 * self.degree - 3;
        let mut out = Vec::new();
        for t in self.cells_of_dim(top) {
            let s = self.signature(t);
            let p = s.pencils();
            if p.len() != 1 || s.forest().degree(p[0]) != 2 * self.degree {
                continue;
            }
            let NodeKind::Pencil(color) = s.kind(p[0]) else {
                unreachable!()
            };
            let mut members = self.atlas.below(t);
            members.push(t);
            members.sort();
            let generic: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&i| self.cells[i].dim == 0)
                .collect();
            let m: Vec<usize> = generic
                .iter()
                .copied()
                .filter(|&i| {
                    matches!(
                        classify(self.signature(i)).map(|c| c.class),
                        Ok(SignatureClass::M(_))
                    )
                })
                .collect();
            out.push(NcStructure {
                top: t,
                color,
                members,
                generic,
                m_signatures: m,
            });
        }
        out
    }

    /// For each pair of opposite F-signatures `|j;i|`, `|i;j|`: the generic
    /// signatures on shortest Whitehead paths between them, and the lowest
    /// cells above both.
    pub fn bridges(&self) -> Vec<Bridge> {
        let mut f_by_chord: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
        for v in self.cells_of_dim(0) {
            let c = classify(self.signature(v)).expect("generic");
            if let SignatureClass::F(1) = c.class {
                let long = c.trees.iter().find_map(|t| match t {
                    TreeClass::F { long, .. } => Some(*long),
                    _ => None,
                });
                let long = long.expect("one F tree");
                f_by_chord.entry((long.a, long.b)).or_default().push(v);
            }
        }
        let g = q::whitehead_graph(&self.atlas);
        let mut ups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for c in 0..self.cells.len() {
            for v in self.vertices_of(c) {
                ups.entry(v).or_default().insert(c);
            }
        }
        let mut out = Vec::new();
        for ((a, b), fs) in f_by_chord {
            if fs.len() != 2 {
                continue;
            }
            let (x, y) = (fs[0], fs[1]);
            let (length, members) = q::geodesic_interval(&g, x, y);
            let common: Vec<usize> = ups[&x].intersection(&ups[&y]).copied().collect();
            let low = common.iter().map(|&c| self.cells[c].dim).min();
            let upper_bounds = common
                .into_iter()
                .filter(|&c| Some(self.cells[c].dim) == low)
                .collect();
            out.push(Bridge {
                chord: (a, b),
                ends: (x, y),
                length,
                members,
                upper_bounds,
            });
        }
        out
    }

    /// Cells of codimension `2d-4` carrying pencils of both colours whose
    /// generic vertices meet two NC structures of opposite colours sharing
    /// an M-signature.
    pub fn open_books(&self) -> Vec<usize> {
        let k = (2 * self.degree).saturating_sub(4);
        let ncs = self.nc_structures();
        let generic: Vec<BTreeSet<usize>> = ncs
            .iter()
            .map(|n| n.generic.iter().copied().collect())
            .collect();
        self.cells_of_dim(k)
            .into_iter()
            .filter(|&c| {
                let s = self.signature(c);
                let colors: BTreeSet<NodeKind> = s.pencils().iter().map(|&p| s.kind(p)).collect();
                if colors.len() < 2 {
                    return false;
                }
                let verts = self.vertices_of(c);
                let hit: Vec<usize> = (0..ncs.len())
                    .filter(|&i| verts.iter().any(|v| generic[i].contains(v)))
                    .collect();
                hit.iter().any(|&i| {
                    hit.iter().any(|&j| {
                        ncs[i].color != ncs[j].color
                            && ncs[i]
                                .m_signatures
                                .iter()
                                .any(|m| ncs[j].m_signatures.contains(m))
                    })
                })
            })
            .collect()
    }

    fn image(&self, g: Symmetry, id: usize) -> Option<usize> {
        let s = self.signature(id);
        let t = match g {
            Symmetry::Shift(k) => s.shift(k),
            Symmetry::Reflect(a) => s.reflect(a),
        };
        self.atlas.id(&t)
    }

    /// Whether `g` permutes the cells and commutes with the boundary maps.
    pub fn check_automorphism(&self, g: Symmetry) -> AutomorphismCheck {
        let mut violations = Vec::new();
        let mut map = vec![usize::MAX; self.cells.len()];
        for (c, m) in map.iter_mut().enumerate() {
            match self.image(g, c) {
                Some(i) => *m = i,
                None => violations.push(format!("cell {c} leaves the complex")),
            }
        }
        let hit: BTreeSet<usize> = map.iter().copied().filter(|&x| x != usize::MAX).collect();
        if hit.len() != self.cells.len() {
            violations.push("not a bijection".to_string());
        }
        for c in 0..self.cells.len() {
            let i = map[c];
            if i == usize::MAX {
                continue;
            }
            if self.cells[i].dim != self.cells[c].dim {
                violations.push(format!("cell {c} changes dimension"));
            }
            let mut mapped: Vec<usize> = self.cells[c].boundary.iter().map(|&b| map[b]).collect();
            mapped.sort();
            if mapped != self.cells[i].boundary {
                violations.push(format!("boundary of cell {c} not preserved"));
            }
        }
        AutomorphismCheck {
            symmetry: g,
            map,
            violations,
        }
    }

    /// Automorphism checks for shift by 1, shift by 2 and reflection, with
    /// the orbit structure of the group they generate.
    pub fn symmetry_report(&self) -> SymmetryReport {
        let checks: Vec<AutomorphismCheck> =
            [Symmetry::Shift(1), Symmetry::Shift(2), Symmetry::Reflect(0)]
                .into_iter()
                .map(|g| self.check_automorphism(g))
                .collect();
        let mut orbit_of = vec![usize::MAX; self.cells.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for c in 0..self.cells.len() {
            if orbit_of[c] != usize::MAX {
                continue;
            }
            let mut orbit = vec![c];
            orbit_of[c] = orbits.len();
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for ch in [&checks[0], &checks[2]] {
                    let y = ch.map[x];
                    if y != usize::MAX && orbit_of[y] == usize::MAX {
                        orbit_of[y] = orbits.len();
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbits.push(orbit);
        }
        let mut shift_orbits: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        let mut done = vec![false; self.cells.len()];
        for c in 0..self.cells.len() {
            if done[c] {
                continue;
            }
            let mut len = 0;
            let mut x = c;
            while !done[x] {
                done[x] = true;
                len += 1;
                x = checks[0].map[x];
                if x == usize::MAX {
                    break;
                }
            }
            *shift_orbits
                .entry(self.cells[c].dim)
                .or_default()
                .entry(len)
                .or_default() += 1;
        }
        let m_ids: Vec<usize> = self
            .cells_of_dim(0)
            .into_iter()
            .filter(|&v| {
                matches!(
                    classify(self.signature(v)).map(|c| c.class),
                    Ok(SignatureClass::M(_))
                )
            })
            .collect();
        let m_orbit = m_ids.first().map_or(0, |&m| {
            let mut x = checks[0].map[m];
            let mut len = 1;
            while x != m && x != usize::MAX {
                x = checks[0].map[x];
                len += 1;
            }
            len
        });
        SymmetryReport {
            checks,
            orbit_count: orbits.len(),
            shift_orbits,
            m_orbit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrangleReport {
    pub one_cells: usize,
    pub two_cells: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcStructure {
    pub top: usize,
    pub color: Color,
    pub members: Vec<usize>,
    pub generic: Vec<usize>,
    pub m_signatures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub chord: (u32, u32),
    pub ends: (usize, usize),
    /// Whitehead distance between the ends.
    pub length: usize,
    /// Generic signatures on shortest paths, ends included.
    pub members: BTreeSet<usize>,
    pub upper_bounds: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Shift(i64),
    Reflect(i64),
}

#[derive(Clone, Debug)]
pub struct AutomorphismCheck {
    pub symmetry: Symmetry,
    pub map: Vec<usize>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub checks: Vec<AutomorphismCheck>,
    /// Orbits of the group generated by shift-by-1 and reflection.
    pub orbit_count: usize,
    /// Per dimension: orbit length under shift-by-1 -> number of orbits.
    pub shift_orbits: BTreeMap<usize, BTreeMap<usize, usize>>,
    pub m_orbit: usize,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }
}
