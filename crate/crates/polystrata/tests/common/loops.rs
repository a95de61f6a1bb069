//! Sampled root loops built from half-turns of neighbouring roots.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use polystrata::tracer::Polynomial;

pub const STEPS: usize = 48;

/// Base positions: roughly unit spaced along the real axis.
pub fn base(jitter: &[(f64, f64)]) -> Vec<C> {
    jitter
        .iter()
        .enumerate()
        .map(|(k, (u, v))| C::new(k as f64 + 0.1 * u, 0.1 * v))
        .collect()
}

/// Samples of a loop made of half-turns: letter `(i, e)` swaps the roots
/// in real-order positions `i-1` and `i`, counterclockwise when `e = 1`.
pub fn half_turn_loop(start: &[C], letters: &[(usize, i8)]) -> Vec<Vec<C>> {
    let mut cur = start.to_vec();
    let mut samples = vec![cur.clone()];
    for &(i, e) in letters {
        let mut idx: Vec<usize> = (0..cur.len()).collect();
        idx.sort_by(|&a, &b| cur[a].re.total_cmp(&cur[b].re));
        let (l, r) = (idx[i - 1], idx[i]);
        let mid = (cur[l] + cur[r]) / 2.0;
        let (dl, dr) = (cur[l] - mid, cur[r] - mid);
        for k in 1..=STEPS {
            let rot = C::from_polar(1.0, e as f64 * PI * k as f64 / STEPS as f64);
            let mut next = cur.clone();
            next[l] = mid + dl * rot;
            next[r] = mid + dr * rot;
            samples.push(next);
        }
        cur = samples.last().unwrap().clone();
    }
    samples
}

pub fn polys(samples: &[Vec<C>]) -> Vec<Polynomial> {
    samples.iter().map(|r| Polynomial::from_roots(r)).collect()
}
