use polystrata::atlas::{enumerate_generic, Atlas};
use polystrata::map::noncrossing_matchings;
use polystrata::notation::fill_with_m;
use polystrata::{
    classify, m_signature, parse_notation, Chord, Color, SignatureClass, SignatureError,
};
use polystrata::{NodeKind, Signature};
use proptest::prelude::*;

fn c(a: u32, b: u32) -> Chord {
    Chord::new(a, b)
}

#[test]
fn validation_examples() {
    let s = Signature::from_generic(2, &[c(0, 2), c(4, 6)], &[c(1, 3), c(5, 7)]).unwrap();
    assert!(s.is_generic());
    assert_eq!(s.crossings().len(), 2);
    assert_eq!(s.key(), "0:X(1,2,3) 4:X(5,6,7)");

    let w = Signature::from_straight_chords(2, &[c(0, 2), c(4, 6)], &[c(1, 5), c(3, 7)]).unwrap();
    assert_eq!(w.codimension(), 1);
    assert_eq!(w.pencils().len(), 1);
    assert_eq!(w.kind(w.pencils()[0]), NodeKind::Pencil(Color::Red));

    let e = Signature::from_generic(2, &[c(0, 4), c(2, 6)], &[c(1, 3), c(5, 7)]).unwrap_err();
    assert!(matches!(e, SignatureError::SameColorCrossing { .. }));
    let e = Signature::from_generic(2, &[c(0, 3), c(4, 6)], &[c(1, 2), c(5, 7)]).unwrap_err();
    assert!(matches!(e, SignatureError::ChordParity(_)));
}

#[test]
fn codimension_examples() {
    let blue = [c(0, 2), c(4, 6), c(8, 10)];
    let s = Signature::from_straight_chords(3, &blue, &[c(1, 7), c(3, 9), c(5, 11)]).unwrap();
    assert_eq!(s.codimension(), 3);
    assert_eq!(s.pencils().len(), 1);

    // Two double points on the red strand (1,7).
    let red = [c(1, 7), c(5, 9), c(3, 11)];
    let evens: Vec<u32> = (0..12).step_by(2).collect();
    let found: Vec<Signature> = noncrossing_matchings(&evens)
        .into_iter()
        .filter_map(|b| Signature::from_straight_chords(3, &b, &red).ok())
        .collect();
    assert!(!found.is_empty());
    for s in found {
        assert_eq!(s.codimension(), 2);
        assert_eq!(s.pencils().len(), 2);
        assert_eq!(s.chords(Color::Red), vec![c(1, 7), c(3, 11), c(5, 9)]);
    }
}

#[test]
fn classification_examples() {
    let m = Signature::from_generic(
        4,
        &[c(0, 2), c(4, 6), c(8, 10), c(12, 14)],
        &[c(1, 3), c(5, 7), c(9, 11), c(13, 15)],
    )
    .unwrap();
    assert_eq!(classify(&m).unwrap().class, SignatureClass::M(2));

    let f = fill_with_m(4, vec![c(0, 6), c(5, 7)]).unwrap();
    let cl = classify(&f).unwrap();
    assert_eq!(cl.class, SignatureClass::F(1));
    assert_eq!(cl.notation(), "|6;0|");

    let s = parse_notation(4, "[5,15;0,6]").unwrap();
    assert!(s.chords(Color::Blue).contains(&c(0, 6)));
    assert!(s.chords(Color::Red).contains(&c(5, 15)));
    assert!(s
        .chords(Color::Blue)
        .iter()
        .filter(|x| **x != c(0, 6))
        .all(|x| x.is_short(16)));
    assert_eq!(classify(&s).unwrap().class, SignatureClass::S(1));
}

#[test]
fn m_signatures_form_one_shift_orbit() {
    for d in 2..=6 {
        let ms: Vec<Signature> = (1..=4).map(|k| m_signature(d, k).unwrap()).collect();
        for (i, m) in ms.iter().enumerate() {
            assert_eq!(classify(m).unwrap().class, SignatureClass::M(i as u8 + 1));
            let next = m.shift(1);
            assert!(ms.contains(&next));
            assert_eq!(m.shift(4), *m);
        }
        let r = classify(&ms[0].reflect(4)).unwrap();
        assert!(matches!(r.class, SignatureClass::M(_)));
    }
}

#[test]
fn dihedral_action_on_atlases() {
    for d in 2..=3 {
        let a = Atlas::build(d).unwrap();
        let n = 4 * d as i64;
        for s in &a.cells {
            assert_eq!(s.shift(n), *s);
            assert_eq!(s.shift(2).codimension(), s.codimension());
            assert_eq!(s.reflect(3).reflect(3), *s);
            assert!(a.id(&s.reflect(0)).is_some());
            assert!(a.id(&s.shift(1)).is_some());
        }
    }
}

#[test]
fn notation_round_trips() {
    for d in 2..=5 {
        for s in enumerate_generic(d).unwrap() {
            let cl = classify(&s).unwrap();
            assert_eq!(
                parse_notation(d, &cl.notation()).unwrap(),
                s,
                "{}",
                cl.notation()
            );
            let rebuilt =
                Signature::from_generic(d, &s.chords(Color::Blue), &s.chords(Color::Red)).unwrap();
            assert_eq!(rebuilt.key(), s.key());
        }
    }
    assert!(parse_notation(4, "M7").is_err());
    assert!(parse_notation(4, "|1;2|").is_err());
}

fn generic_strategy() -> impl Strategy<Value = Signature> {
    (2usize..=5).prop_flat_map(|d| {
        let all = enumerate_generic(d).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generic_invariants(s in generic_strategy(), k in -20i64..20, axis in 0i64..20) {
        let d = s.degree();
        let n = 4 * d as u32;
        prop_assert_eq!(s.crossings().len(), d);
        prop_assert_eq!(s.codimension(), 0);
        for color in [Color::Blue, Color::Red] {
            let ch = s.chords(color);
            prop_assert_eq!(ch.len(), d);
            prop_assert!(ch.iter().all(|x| Color::of_label(x.a) == color && Color::of_label(x.b) == color));
        }
        prop_assert!(s.forest().forest_check());
        prop_assert!(s.forest().is_planar());
        // Relabelling commutes with reading off the chords.
        let t = s.shift(k);
        let col = if k.rem_euclid(2) == 0 { Color::Blue } else { Color::Red };
        let mut want: Vec<Chord> = s.chords(Color::Blue).iter().map(|x| x.shifted(k, n)).collect();
        want.sort();
        prop_assert_eq!(t.chords(col), want);
        let r = s.reflect(axis);
        let rc = if axis.rem_euclid(2) == 0 { Color::Blue } else { Color::Red };
        let mut want: Vec<Chord> = s.chords(Color::Blue).iter().map(|x| x.reflected(axis, n)).collect();
        want.sort();
        prop_assert_eq!(r.chords(rc), want);
        // The class counts the tree types.
        let cl = classify(&s).unwrap();
        let f = cl.trees.iter().filter(|t| t.is_f()).count();
        let sc = cl.trees.iter().filter(|t| t.is_s()).count();
        let m = cl.trees.iter().filter(|t| t.is_m()).count();
        prop_assert_eq!(m + f + sc, cl.trees.len());
        prop_assert_eq!(cl.trees.len(), d);
        let want = match (f, sc) {
            (0, 0) => matches!(cl.class, SignatureClass::M(_)),
            (f, 0) => cl.class == SignatureClass::F(f),
            (0, sc) => cl.class == SignatureClass::S(sc),
            (f, sc) => cl.class == SignatureClass::FS { f, s: sc },
        };
        prop_assert!(want);
    }
}
