use std::collections::BTreeSet;
use std::f64::consts::TAU;

use polystrata::map::noncrossing_matchings;
use polystrata::{interleaves, is_noncrossing, BoundaryLabel, Chord, EmbeddedForest};
use proptest::prelude::*;

fn c(a: u32, b: u32) -> Chord {
    Chord::new(a, b)
}

/// Segment intersection of the straight chords on the regular `n`-gon.
fn segments_cross(x: Chord, y: Chord, n: u32) -> bool {
    let p = |k: u32| {
        let t = TAU * k as f64 / n as f64;
        (t.cos(), t.sin())
    };
    let orient = |a: (f64, f64), b: (f64, f64), q: (f64, f64)| {
        (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0)
    };
    let (a, b, q, r) = (p(x.a), p(x.b), p(y.a), p(y.b));
    orient(a, b, q) * orient(a, b, r) < -1e-12 && orient(q, r, a) * orient(q, r, b) < -1e-12
}

/// Every perfect matching of `points`.
fn all_matchings(points: &[u32]) -> Vec<Vec<Chord>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 1..points.len() {
        let rest: Vec<u32> = points[1..]
            .iter()
            .copied()
            .filter(|&x| x != points[j])
            .collect();
        for mut m in all_matchings(&rest) {
            m.push(c(points[0], points[j]));
            m.sort();
            out.push(m);
        }
    }
    out
}

#[test]
fn interleaving_examples() {
    assert!(interleaves(c(0, 6), c(4, 10)));
    assert!(!interleaves(c(3, 11), c(5, 9)));
    assert!(interleaves(c(1, 7), c(3, 11)));
    assert!(segments_cross(c(1, 7), c(3, 11), 12));
}

#[test]
fn noncrossing_examples() {
    assert!(is_noncrossing(&[c(0, 2), c(4, 6)]));
    assert!(!is_noncrossing(&[c(1, 5), c(3, 7)]));
    let all = all_matchings(&[0, 1, 2, 3, 4, 5]);
    assert_eq!(all.len(), 15);
    let nc: BTreeSet<Vec<Chord>> = all.into_iter().filter(|m| is_noncrossing(m)).collect();
    assert_eq!(nc.len(), 5);
    let ours: BTreeSet<Vec<Chord>> = noncrossing_matchings(&[0, 1, 2, 3, 4, 5])
        .into_iter()
        .collect();
    assert_eq!(ours, nc);
}

#[test]
fn labels_and_chords_are_checked() {
    assert!(BoundaryLabel::new(7, 8).is_ok());
    assert!(BoundaryLabel::new(8, 8).is_err());
    assert!(Chord::checked(0, 3, 8).is_err());
    assert!(Chord::checked(2, 2, 8).is_err());
    assert!(Chord::checked(0, 9, 8).is_err());
    assert_eq!(Chord::checked(6, 0, 8).unwrap(), c(0, 6));
    assert!(c(14, 0).is_short(16));
    assert!(c(1, 3).is_short(16));
    assert!(!c(0, 4).is_short(16));
}

#[test]
fn faces() {
    assert_eq!(EmbeddedForest::empty(8).faces().len(), 1);
    let two = EmbeddedForest::from_straight_chords(8, &[c(0, 4), c(2, 6)]).unwrap();
    assert_eq!(two.faces().len(), 4);
    assert_eq!(two.interior().count(), 1);
    let v = two.interior().next().unwrap();
    assert_eq!(two.degree(v), 4);
}

#[test]
fn forest_condition() {
    // A cycle of four pairwise crossings.
    let cyc =
        EmbeddedForest::from_straight_chords(16, &[c(0, 6), c(4, 10), c(8, 14), c(2, 12)]).unwrap();
    assert_eq!(cyc.interior().count(), 4);
    assert!(cyc.is_planar());
    assert!(!cyc.forest_check());
    // Three diameters through the centre form a star.
    let star = EmbeddedForest::from_straight_chords(12, &[c(0, 6), c(2, 8), c(4, 10)]).unwrap();
    assert!(star.forest_check());
    assert_eq!(star.interior().count(), 1);
    let v = star.interior().next().unwrap();
    let p = star.pencil(v);
    assert_eq!(p.strand_count(), 3);
    assert_eq!(p.local_index(), 3);
    for k in 0..6 {
        assert_eq!(p.opposite(p.opposite(k)), k);
    }
}

proptest! {
    #[test]
    fn interleaving_matches_geometry(n in (2u32..=8).prop_map(|d| 4 * d), w in any::<[u32; 4]>()) {
        let pts: BTreeSet<u32> = w.iter().map(|x| x % n).collect();
        prop_assume!(pts.len() == 4);
        let v: Vec<u32> = w.iter().map(|x| x % n).collect();
        let (x, y) = (c(v[0], v[1]), c(v[2], v[3]));
        prop_assert_eq!(interleaves(x, y), segments_cross(x, y, n));
        prop_assert_eq!(interleaves(x, y), interleaves(y, x));
    }

    #[test]
    fn noncrossing_matchings_are_catalan(m in 0usize..=5, offset in 0u32..7) {
        let pts: Vec<u32> = (0..2 * m as u32).map(|k| offset + 3 * k).collect();
        let ours = noncrossing_matchings(&pts);
        let brute: BTreeSet<Vec<Chord>> = all_matchings(&pts).into_iter().filter(|x| is_noncrossing(x)).collect();
        prop_assert_eq!(ours.iter().cloned().collect::<BTreeSet<_>>(), brute);
        let catalan = [1, 1, 2, 5, 14, 42][m];
        prop_assert_eq!(ours.len(), catalan);
    }

    #[test]
    fn shift_and_reflect_preserve_span(d in 1u32..=7, a in 0u32..28, b in 0u32..28, k in -40i64..40) {
        let n = 4 * d;
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let x = c(a, b);
        prop_assert_eq!(x.shifted(k, n).span(n), x.span(n));
        prop_assert_eq!(x.reflected(k, n).span(n), x.span(n));
        prop_assert_eq!(x.reflected(k, n).reflected(k, n), x);
        prop_assert_eq!(x.shifted(k, n).shifted(-k, n), x);
        prop_assert!(x.span(n) <= n / 2);
    }
}
