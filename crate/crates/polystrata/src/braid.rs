//! Braid words read off root trajectories, the degree-raising embedding,
//! and the quadrangle loops of the nerve.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::BraidError;
use crate::nerve::NerveComplex;
use crate::tracer::Polynomial;

/// A freely reduced word in the Artin generators `s1 .. s{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    degree: usize,
    /// `(i, e)`: generator `s_i` with exponent `e = ±1`.
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn identity(degree: usize) -> BraidWord {
        BraidWord {
            degree,
            letters: Vec::new(),
        }
    }

    /// Panics if a generator index is outside `1..degree`.
    pub fn new(degree: usize, letters: &[(usize, i8)]) -> BraidWord {
        let mut w = BraidWord::identity(degree);
        for &l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, (i, e): (usize, i8)) {
        assert!(
            i >= 1 && i < self.degree && (e == 1 || e == -1),
            "bad letter s{i}^{e}"
        );
        if self.letters.last() == Some(&(i, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((i, e));
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        let letters: Vec<(usize, i8)> = self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect();
        BraidWord::new(self.degree, &letters)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    /// `perm[i]`: final position of the strand starting at position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.degree).collect();
        for &(i, _) in &self.letters {
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.degree];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// The same word in `B_{d+1}`.
    pub fn embed(&self) -> BraidWord {
        BraidWord {
            degree: self.degree + 1,
            letters: self.letters.clone(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| {
                if e > 0 {
                    format!("s{i}")
                } else {
                    format!("s{i}^-1")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses `"<degree>: s1 s2^-1 ..."`; `1` alone is the identity.
impl FromStr for BraidWord {
    type Err = String;

    fn from_str(s: &str) -> Result<BraidWord, String> {
        let (deg, body) = s.split_once(':').ok_or("expected <degree>: <word>")?;
        let degree: usize = deg
            .trim()
            .parse()
            .map_err(|_| format!("bad degree {deg:?}"))?;
        let mut w = BraidWord::identity(degree);
        for tok in body.split_whitespace().filter(|t| *t != "1") {
            let (gen, e) = match tok.strip_suffix("^-1") {
                Some(g) => (g, -1),
                None => (tok, 1),
            };
            let i: usize = gen
                .strip_prefix('s')
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| format!("bad generator {tok:?}"))?;
            if i == 0 || i >= degree {
                return Err(format!("generator {tok} outside B_{degree}"));
            }
            w.push((i, e));
        }
        Ok(w)
    }
}

/// Strands × samples.
pub type Trajectories = Vec<Vec<Complex64>>;

fn order(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Follows the roots along a sampled path, matching each root to the
/// nearest root of the next sample.
pub fn track_roots(path: &[Polynomial]) -> Result<Trajectories, BraidError> {
    let first = path.first().ok_or(BraidError::EmptyPath)?;
    let d = first.degree();
    let mut traj: Trajectories = first.roots()?.into_iter().map(|z| vec![z]).collect();
    for (k, p) in path.iter().enumerate().skip(1) {
        if p.degree() != d {
            return Err(BraidError::DegreeMismatch(k, p.degree(), d));
        }
        let next = p.roots()?;
        let mut taken = vec![false; d];
        let mut motion: f64 = 0.0;
        let mut picks = Vec::with_capacity(d);
        for t in &traj {
            let last = *t.last().expect("nonempty");
            let (j, dist) = next
                .iter()
                .enumerate()
                .map(|(j, z)| (j, (z - last).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("d >= 1");
            if std::mem::replace(&mut taken[j], true) {
                return Err(BraidError::Ambiguous(k - 1, k));
            }
            motion = motion.max(dist);
            picks.push(j);
        }
        let gap = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .map(|(i, j)| (next[i] - next[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if gap <= 2.0 * motion {
            return Err(BraidError::Ambiguous(k - 1, k));
        }
        for (t, j) in traj.iter_mut().zip(picks) {
            t.push(next[j]);
        }
    }
    Ok(traj)
}

fn sorted_strands(traj: &Trajectories, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..traj.len()).collect();
    v.sort_by(|&a, &b| order(traj[a][k], traj[b][k]));
    v
}

/// `perm[i]`: final position of the strand starting at position `i`, with
/// positions ordered by real part.
pub fn endpoint_permutation(traj: &Trajectories) -> Vec<usize> {
    let last = traj.first().map_or(0, |t| t.len().saturating_sub(1));
    let start = sorted_strands(traj, 0);
    let end = sorted_strands(traj, last);
    let mut final_pos = vec![0; traj.len()];
    for (pos, &s) in end.iter().enumerate() {
        final_pos[s] = pos;
    }
    start.iter().map(|&s| final_pos[s]).collect()
}

/// Reads a generator at each change of real-part order between adjacent
/// strands (positions interpolated linearly between samples); the sign is
/// `+1` when the strand moving leftwards passes above.
pub fn braid_word(traj: &Trajectories) -> Result<BraidWord, BraidError> {
    let d = traj.len();
    let samples = traj.first().ok_or(BraidError::EmptyPath)?.len();
    let mut word = BraidWord::identity(d);
    let mut current = sorted_strands(traj, 0);
    for k in 0..samples.saturating_sub(1) {
        let mut events: Vec<(f64, usize, usize)> = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let before = order(traj[a][k], traj[b][k]);
                let after = order(traj[a][k + 1], traj[b][k + 1]);
                if before != after {
                    let x0 = traj[a][k].re - traj[b][k].re;
                    let x1 = traj[a][k + 1].re - traj[b][k + 1].re;
                    let tau = if x0 == x1 {
                        0.5
                    } else {
                        (x0 / (x0 - x1)).clamp(0.0, 1.0)
                    };
                    events.push((tau, a, b));
                }
            }
        }
        events.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (tau, a, b) in events {
            let pa = current.iter().position(|&s| s == a).expect("strand");
            let pb = current.iter().position(|&s| s == b).expect("strand");
            if pa.abs_diff(pb) != 1 {
                return Err(BraidError::NonAdjacentSwap(a, b, k));
            }
            let (left, right) = if pa < pb { (a, b) } else { (b, a) };
            let im = |s: usize| traj[s][k].im + tau * (traj[s][k + 1].im - traj[s][k].im);
            let e = if im(right) > im(left) { 1 } else { -1 };
            let lo = pa.min(pb);
            word.push((lo + 1, e));
            current.swap(lo, lo + 1);
        }
    }
    Ok(word)
}

/// The root added by the degree-raising embedding: mean plus the largest
/// distance to the mean plus one.
pub fn embedded_root(roots: &[Complex64]) -> Complex64 {
    let mean = roots.iter().sum::<Complex64>() / roots.len() as f64;
    let spread = roots.iter().map(|z| (z - mean).norm()).fold(0.0, f64::max);
    mean + spread + 1.0
}

pub fn embed(p: &Polynomial) -> Result<Polynomial, BraidError> {
    let mut roots = p.roots()?;
    roots.push(embedded_root(&roots));
    Ok(Polynomial::from_roots(&roots))
}

/// Appends the embedded root to every sample.
pub fn embed_trajectories(traj: &Trajectories) -> Trajectories {
    let samples = traj.first().map_or(0, Vec::len);
    let extra: Vec<Complex64> = (0..samples)
        .map(|k| embedded_root(&traj.iter().map(|t| t[k]).collect::<Vec<_>>()))
        .collect();
    let mut out = traj.clone();
    out.push(extra);
    out
}

/// A 2-cell of the nerve as a closed walk through its four generic
/// vertices; `walls[i]` joins `vertices[i]` and `vertices[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrangleLoop {
    pub cell: usize,
    pub vertices: [usize; 4],
    pub walls: [usize; 4],
}

/// One loop per 2-cell; cells whose boundary is not a 4-cycle are skipped.
pub fn quadrangle_generators(complex: &NerveComplex) -> Vec<QuadrangleLoop> {
    let mut out = Vec::new();
    for c in complex.cells_of_dim(2) {
        let edges = &complex.cells[c].boundary;
        if edges.len() != 4 || edges.iter().any(|&e| complex.cells[e].boundary.len() != 2) {
            continue;
        }
        let ends = |e: usize| (complex.cells[e].boundary[0], complex.cells[e].boundary[1]);
        let mut walls = [edges[0]; 4];
        let (v0, mut v) = ends(edges[0]);
        let mut vertices = [v0; 4];
        let mut used = vec![edges[0]];
        let mut ok = true;
        for i in 1..4 {
            vertices[i] = v;
            let next = edges.iter().copied().find(|e| {
                let (x, y) = ends(*e);
                !used.contains(e) && (x == v || y == v)
            });
            let Some(e) = next else {
                ok = false;
                break;
            };
            used.push(e);
            walls[i] = e;
            let (x, y) = ends(e);
            v = if x == v { y } else { x };
        }
        if ok && v == v0 {
            out.push(QuadrangleLoop {
                cell: c,
                vertices,
                walls,
            });
        }
    }
    out
}
