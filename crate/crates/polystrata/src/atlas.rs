//! Exhaustive enumeration of the signatures of one degree.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::SignatureError;
use crate::map::noncrossing_matchings;
use crate::moves::up_moves;
use crate::notation::{classify, SignatureClass};
use crate::signature::Signature;

pub const MAX_GENERIC_DEGREE: usize = 7;
pub const MAX_ATLAS_DEGREE: usize = 5;

pub fn enumerate_generic(d: usize) -> Result<Vec<Signature>, SignatureError> {
    if !(1..=MAX_GENERIC_DEGREE).contains(&d) {
        return Err(SignatureError::Degree(d));
    }
    let evens: Vec<u32> = (0..4 * d as u32).step_by(2).collect();
    let odds: Vec<u32> = (1..4 * d as u32).step_by(2).collect();
    let blues = noncrossing_matchings(&evens);
    let reds = noncrossing_matchings(&odds);
    let mut out: Vec<Signature> = blues
        .par_iter()
        .flat_map_iter(|b| {
            reds.iter()
                .filter_map(move |r| Signature::from_generic(d, b, r).ok())
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All signatures of one degree with the contracting moves between them.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub degree: usize,
    /// Sorted by canonical key; a cell's id is its index here.
    pub cells: Vec<Signature>,
    /// `up[i]`: cells reached from cell `i` by one contracting move.
    pub up: Vec<Vec<usize>>,
    /// `down[i]`: cells from which one contracting move reaches cell `i`.
    pub down: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl Atlas {
    pub fn build(d: usize) -> Result<Atlas, SignatureError> {
        if !(1..=MAX_ATLAS_DEGREE).contains(&d) {
            return Err(SignatureError::Degree(d));
        }
        let generic = enumerate_generic(d)?;
        let mut seen: HashSet<Signature> = generic.iter().cloned().collect();
        let mut edges: Vec<(Signature, Vec<Signature>)> = Vec::new();
        let mut frontier = generic;
        while !frontier.is_empty() {
            let expanded: Vec<(Signature, Vec<Signature>)> = frontier
                .into_par_iter()
                .map(|s| {
                    let ups = up_moves(&s).into_iter().map(|(_, t)| t).collect();
                    (s, ups)
                })
                .collect();
            let mut next = Vec::new();
            for (s, ups) in expanded {
                for t in &ups {
                    if seen.insert(t.clone()) {
                        next.push(t.clone());
                    }
                }
                edges.push((s, ups));
            }
            next.sort();
            frontier = next;
        }
        let mut cells: Vec<Signature> = seen.into_iter().collect();
        cells.sort_by(|a, b| a.key().cmp(b.key()));
        let index: HashMap<String, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key().to_string(), i))
            .collect();
        let mut up = vec![Vec::new(); cells.len()];
        let mut down = vec![Vec::new(); cells.len()];
        for (s, ups) in edges {
            let i = index[s.key()];
            for t in ups {
                let j = index[t.key()];
                up[i].push(j);
                down[j].push(i);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort();
            v.dedup();
        }
        Ok(Atlas {
            degree: d,
            cells,
            up,
            down,
            index,
        })
    }

    pub fn id(&self, s: &Signature) -> Option<usize> {
        self.index.get(s.key()).copied()
    }

    pub fn codim(&self, id: usize) -> usize {
        self.cells[id].codimension()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn ids_of_codim(&self, k: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.codim(i) == k)
            .collect()
    }

    pub fn generic(&self) -> Vec<usize> {
        self.ids_of_codim(0)
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for i in 0..self.cells.len() {
            *m.entry(self.codim(i)).or_insert(0) += 1;
        }
        m
    }

    pub fn euler_sum(&self) -> i64 {
        self.counts()
            .iter()
            .map(|(&k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Cells one codimension lower that contract onto `id`.
    pub fn boundary(&self, id: usize) -> Vec<usize> {
        let k = self.codim(id);
        self.down[id]
            .iter()
            .copied()
            .filter(|&j| self.codim(j) + 1 == k)
            .collect()
    }

    /// Every cell strictly below `id` in the incidence order.
    pub fn below(&self, id: usize) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for &y in &self.down[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// Whether `a ≺ b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        a != b && self.codim(a) < self.codim(b) && self.below(b).contains(&a)
    }

    pub fn census(&self) -> Census {
        let mut classes = BTreeMap::new();
        for i in self.generic() {
            let c = classify(&self.cells[i]).expect("generic");
            let name = match c.class {
                SignatureClass::M(_) => "M",
                SignatureClass::F(_) => "F",
                SignatureClass::S(_) => "S",
                SignatureClass::FS { .. } => "FS",
            };
            *classes.entry(name).or_insert(0) += 1;
        }
        Census {
            degree: self.degree,
            counts: self.counts(),
            classes,
            euler: self.euler_sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub degree: usize,
    pub counts: BTreeMap<usize, usize>,
    /// Generic signatures by class name (M, F, S, FS).
    pub classes: BTreeMap<&'static str, usize>,
    pub euler: i64,
}

impl Census {
    pub fn class_count(&self, name: &str) -> usize {
        self.classes.get(name).copied().unwrap_or(0)
    }

    /// Rows `degree,codim,count,M,F,S,FS`; class columns are filled on the
    /// generic row only.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,codim,count,M,F,S,FS\n");
        for (&k, &c) in &self.counts {
            if k == 0 {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    self.degree,
                    k,
                    c,
                    self.class_count("M"),
                    self.class_count("F"),
                    self.class_count("S"),
                    self.class_count("FS")
                ));
            } else {
                s.push_str(&format!("{},{},{},,,,\n", self.degree, k, c));
            }
        }
        s
    }
}

impl std::fmt::Display for Census {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        writeln!(f, "codim  count")?;
        for (k, c) in &self.counts {
            writeln!(f, "{k:>5}  {c:>5}")?;
        }
        writeln!(
            f,
            "generic classes: M {} F {} S {} FS {}",
            self.class_count("M"),
            self.class_count("F"),
            self.class_count("S"),
            self.class_count("FS")
        )?;
        write!(f, "euler sum {}", self.euler)
    }
}
