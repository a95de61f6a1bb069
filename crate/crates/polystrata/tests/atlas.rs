use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use polystrata::atlas::{enumerate_generic, Atlas};
use polystrata::map::noncrossing_matchings;
use polystrata::{interleaves, Chord, Color, NodeKind, Signature};

type Pair = (Vec<Chord>, Vec<Chord>);

/// Generic signatures as chord pairs, by brute force: two non-crossing
/// matchings whose chords join opposite half-axes, each blue chord crossed
/// by exactly one red chord and vice versa, and every crossing showing the
/// four half-axes in counterclockwise order.
fn generic_oracle(d: u32) -> BTreeSet<Pair> {
    let n = 4 * d;
    let opposite = |c: &Chord| (c.b - c.a) % 4 == 2;
    let blues: Vec<Vec<Chord>> = noncrossing_matchings(&(0..n).step_by(2).collect::<Vec<_>>())
        .into_iter()
        .filter(|m| m.iter().all(opposite))
        .collect();
    let reds: Vec<Vec<Chord>> = noncrossing_matchings(&(1..n).step_by(2).collect::<Vec<_>>())
        .into_iter()
        .filter(|m| m.iter().all(opposite))
        .collect();
    let mut out = BTreeSet::new();
    for b in &blues {
        'red: for r in &reds {
            for x in b {
                let hits: Vec<&Chord> = r.iter().filter(|y| interleaves(*x, **y)).collect();
                if hits.len() != 1 {
                    continue 'red;
                }
                if b.iter().filter(|z| interleaves(**z, *hits[0])).count() != 1 {
                    continue 'red;
                }
                let mut ends = [x.a, x.b, hits[0].a, hits[0].b];
                ends.sort();
                if !(0..4).all(|i| (ends[(i + 1) % 4] % 4 + 4 - ends[i] % 4) % 4 == 1) {
                    continue 'red;
                }
            }
            if r.iter()
                .all(|y| b.iter().filter(|x| interleaves(**x, *y)).count() == 1)
            {
                out.insert((b.clone(), r.clone()));
            }
        }
    }
    out
}

fn as_pairs(v: &[Signature]) -> BTreeSet<Pair> {
    v.iter()
        .map(|s| (s.chords(Color::Blue), s.chords(Color::Red)))
        .collect()
}

#[test]
fn generic_enumeration_matches_brute_force() {
    for (d, count) in [(1, 1), (2, 4), (3, 22), (4, 140)] {
        let ours = enumerate_generic(d).unwrap();
        assert_eq!(ours.len(), count, "d={d}");
        assert_eq!(as_pairs(&ours), generic_oracle(d as u32), "d={d}");
    }
    let five = enumerate_generic(5).unwrap();
    assert_eq!(as_pairs(&five), generic_oracle(5));
}

#[test]
fn degree_three_candidates() {
    let evens: Vec<u32> = (0..12).step_by(2).collect();
    let odds: Vec<u32> = (1..12).step_by(2).collect();
    let (bs, rs) = (noncrossing_matchings(&evens), noncrossing_matchings(&odds));
    assert_eq!((bs.len(), rs.len()), (5, 5));
    let results: Vec<bool> = bs
        .iter()
        .flat_map(|b| {
            rs.iter()
                .map(move |r| Signature::from_generic(3, b, r).is_ok())
        })
        .collect();
    assert_eq!(results.len(), 25);
    assert_eq!(results.iter().filter(|ok| !**ok).count(), 3);
}

#[test]
fn census_degree_two() {
    let t = Instant::now();
    let a = Atlas::build(2).unwrap();
    assert!(t.elapsed() < Duration::from_secs(1));
    assert_eq!(a.counts(), BTreeMap::from([(0, 4), (1, 4)]));
    assert_eq!(a.euler_sum(), 0);
}

#[test]
fn census_degree_three() {
    let t = Instant::now();
    let a = Atlas::build(3).unwrap();
    assert!(t.elapsed() < Duration::from_secs(30));
    assert_eq!(
        a.counts(),
        BTreeMap::from([(0, 22), (1, 48), (2, 30), (3, 4)])
    );
    assert_eq!(a.euler_sum(), 0);
    let c = a.census();
    assert_eq!(
        (c.class_count("M"), c.class_count("F"), c.class_count("S")),
        (4, 12, 6)
    );
    assert_eq!(c.class_count("FS"), 0);
    for top in a.ids_of_codim(3) {
        let s = &a.cells[top];
        let p = s.pencils();
        assert_eq!(p.len(), 1);
        assert_eq!(s.forest().degree(p[0]), 6);
    }
}

/// Orbit sizes under the shift by one, per codimension.
fn shift_orbits(a: &Atlas) -> BTreeMap<usize, BTreeMap<usize, usize>> {
    let mut seen = vec![false; a.len()];
    let mut out: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for i in 0..a.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut s = a.cells[i].clone();
        loop {
            let j = a.id(&s).unwrap();
            if seen[j] {
                break;
            }
            seen[j] = true;
            len += 1;
            s = s.shift(1);
        }
        *out.entry(a.codim(i)).or_default().entry(len).or_default() += 1;
    }
    out
}

#[test]
fn degree_three_families() {
    let a = Atlas::build(3).unwrap();
    let o = shift_orbits(&a);
    assert_eq!(o[&1], BTreeMap::from([(12, 4)]));
    assert_eq!(o[&3], BTreeMap::from([(4, 1)]));
    assert_eq!(o[&2], BTreeMap::from([(6, 1), (12, 2)]));
}

#[test]
fn census_degree_four_golden() {
    let a = Atlas::build(4).unwrap();
    assert_eq!(a.census().to_csv(), include_str!("data/census_d4.csv"));
    assert_eq!(a.euler_sum(), 0);
}

#[test]
fn atlas_structure() {
    for d in 2..=4 {
        let a = Atlas::build(d).unwrap();
        let keys: Vec<&str> = a.cells.iter().map(|s| s.key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for i in 0..a.len() {
            assert_eq!(a.id(&a.cells[i]), Some(i));
            assert_eq!(a.codim(i), a.cells[i].codimension());
            for &j in &a.up[i] {
                assert!(a.down[j].contains(&i));
                assert!(a.codim(j) > a.codim(i));
            }
            if a.codim(i) == 1 {
                let b = a.boundary(i);
                assert_eq!(b.len(), 2, "d={d} {}", a.cells[i].key());
            }
            if a.codim(i) > 0 {
                assert!(a.below(i).iter().any(|&j| a.codim(j) == 0));
            }
        }
        assert_eq!(a.ids_of_codim(2 * d - 3).len(), 4);
        for top in a.ids_of_codim(2 * d - 3) {
            let s = &a.cells[top];
            let p = s.pencils();
            assert_eq!(p.len(), 1);
            assert!(matches!(s.kind(p[0]), NodeKind::Pencil(_)));
            assert_eq!(s.forest().degree(p[0]), 2 * d);
        }
    }
}
