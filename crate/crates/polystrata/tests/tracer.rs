use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use polystrata::moves::adjacent;
use polystrata::tracer::{degeneracy_margin, signature_of, trace, Polynomial, TraceOptions};
use polystrata::{classify, Chord, Color, SignatureClass, TraceError};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn p1() -> Polynomial {
    Polynomial::from_roots(&[c(-0.5, 0.5), c(-0.5, -0.5), c(0.2, 0.6)])
}

fn p2() -> Polynomial {
    Polynomial::from_roots(&[c(-0.5, 0.5), c(-0.5, -0.5), c(-0.6, 0.4)])
}

fn p3() -> Polynomial {
    Polynomial::from_roots(&[c(-0.5, 0.5), c(-0.5, -0.5), c(-0.5, 0.1)])
}

/// Eigenvalues of the companion matrix.
fn companion_roots(p: &Polynomial) -> Vec<C> {
    let a = p.coeffs();
    let d = p.degree();
    let mut m = DMatrix::<C>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = c(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -a[d - i];
    }
    m.schur()
        .eigenvalues()
        .expect("complex schur is triangular")
        .iter()
        .copied()
        .collect()
}

fn matched(xs: &[C], ys: &[C], tol: f64) -> bool {
    xs.len() == ys.len() && xs.iter().all(|x| ys.iter().any(|y| (x - y).norm() < tol))
}

/// Pairs the asymptotic directions of one colour by connected components
/// of the zero set of `Im P` (blue) or `Re P` (red) on a square grid.
fn grid_pairing(p: &Polynomial, color: Color, radius: f64, n: usize) -> Vec<Chord> {
    let d = p.degree();
    let f = |z: C| match color {
        Color::Blue => p.eval(z).im,
        Color::Red => p.eval(z).re,
    };
    let h = 2.0 * radius / n as f64;
    let at = |i: usize, j: usize| c(-radius + i as f64 * h, -radius + j as f64 * h);
    let vals: Vec<Vec<f64>> = (0..=n)
        .map(|i| (0..=n).map(|j| f(at(i, j))).collect())
        .collect();
    // Edge ids: horizontal (i,j)-(i+1,j) and vertical (i,j)-(i,j+1).
    let hid = |i: usize, j: usize| i * (n + 1) + j;
    let vid = |i: usize, j: usize| (n + 1) * (n + 1) + i * (n + 1) + j;
    let mut parent: Vec<usize> = (0..2 * (n + 1) * (n + 1)).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let sign_change = |a: f64, b: f64| (a > 0.0) != (b > 0.0);
    let mut points: Vec<(usize, C)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut here = Vec::new();
            let edges = [
                (
                    hid(i, j),
                    vals[i][j],
                    vals[i + 1][j],
                    at(i, j),
                    at(i + 1, j),
                ),
                (
                    hid(i, j + 1),
                    vals[i][j + 1],
                    vals[i + 1][j + 1],
                    at(i, j + 1),
                    at(i + 1, j + 1),
                ),
                (
                    vid(i, j),
                    vals[i][j],
                    vals[i][j + 1],
                    at(i, j),
                    at(i, j + 1),
                ),
                (
                    vid(i + 1, j),
                    vals[i + 1][j],
                    vals[i + 1][j + 1],
                    at(i + 1, j),
                    at(i + 1, j + 1),
                ),
            ];
            for (id, a, b, za, zb) in edges {
                if sign_change(a, b) {
                    here.push(id);
                    let s = a / (a - b);
                    points.push((id, za + (zb - za) * s));
                }
            }
            let mut join = |a: usize, b: usize| {
                let (x, y) = (find(&mut parent, a), find(&mut parent, b));
                parent[x] = y;
            };
            if here.len() == 2 {
                join(here[0], here[1]);
            } else if here.len() == 4 {
                // Saddle cell: decide by the sign at the centre.
                let centre = vals[i][j] + vals[i + 1][j] + vals[i][j + 1] + vals[i + 1][j + 1];
                let (bottom, top, left, right) =
                    (hid(i, j), hid(i, j + 1), vid(i, j), vid(i + 1, j));
                if (centre > 0.0) == (vals[i][j] > 0.0) {
                    join(bottom, right);
                    join(left, top);
                } else {
                    join(bottom, left);
                    join(top, right);
                }
            }
        }
    }
    let first = match color {
        Color::Blue => 0,
        Color::Red => 1,
    };
    let labels: Vec<u32> = (first..4 * d as u32).step_by(2).collect();
    let comps: Vec<usize> = labels
        .iter()
        .map(|&k| {
            let target = C::from_polar(0.9 * radius, k as f64 * PI / (2.0 * d as f64));
            let (id, _) = points
                .iter()
                .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
                .unwrap();
            find(&mut parent, *id)
        })
        .collect();
    let mut out = Vec::new();
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            if comps[a] == comps[b] {
                out.push(Chord::new(labels[a], labels[b]));
            }
        }
    }
    out.sort();
    out
}

fn assert_matches_grid(p: &Polynomial) {
    let dr = trace(p, &TraceOptions::default()).unwrap();
    for color in [Color::Blue, Color::Red] {
        assert_eq!(
            dr.chords(color),
            grid_pairing(p, color, dr.radius, 2400),
            "{color:?} of {p}"
        );
    }
}

#[test]
fn roots_agree_with_companion_matrix() {
    for p in [
        p1(),
        p2(),
        p3(),
        "1 0 -1-1i".parse().unwrap(),
        "1 2 3 4 5 6".parse().unwrap(),
    ] {
        assert!(
            matched(&p.roots().unwrap(), &companion_roots(&p), 1e-8),
            "{p}"
        );
    }
}

#[test]
fn quadratic_is_generic_and_refinement_stable() {
    let p: Polynomial = "1 0 -1-1i".parse().unwrap();
    let opts = TraceOptions::default();
    let dr = trace(&p, &opts).unwrap();
    assert_eq!(dr.curves.len(), 4);
    assert_eq!(dr.crossings().len(), 2);
    let s = dr.signature().unwrap();
    assert!(s.is_generic());
    assert_eq!(s.degree(), 2);
    assert_eq!(signature_of(&p, &opts.refined()).unwrap().key(), s.key());
    assert_matches_grid(&p);
}

#[test]
fn margins() {
    let a: Polynomial = "1 0 -1".parse().unwrap();
    assert!(degeneracy_margin(&a).unwrap() < 1e-9);
    let b: Polynomial = "1 0 -1-1i".parse().unwrap();
    assert!((degeneracy_margin(&b).unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(
        degeneracy_margin(&"1 5".parse().unwrap()).unwrap(),
        f64::INFINITY
    );
}

#[test]
fn real_critical_value_is_near_degenerate() {
    let p: Polynomial = "1 0 -1".parse().unwrap();
    match trace(&p, &TraceOptions::default()) {
        Err(TraceError::NearDegenerate { re, im, margin }) => {
            assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12 && margin < 1e-9)
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn cubic_examples_match_grid_oracle() {
    for p in [p1(), p2()] {
        let dr = trace(&p, &TraceOptions::default()).unwrap();
        assert_eq!(dr.curves.len(), 6);
        assert!(matched(dr.crossings(), &companion_roots(&p), 1e-8));
        assert_matches_grid(&p);
    }
}

#[test]
fn cubic_examples_signatures() {
    let opts = TraceOptions::default();
    let s1 = signature_of(&p1(), &opts).unwrap();
    let s2 = signature_of(&p2(), &opts).unwrap();
    assert_eq!(classify(&s1).unwrap().class, SignatureClass::M(4));
    assert_eq!(classify(&s2).unwrap().notation(), "|6;0|");
    // Blue parts differ by a single blue Whitehead move.
    let blue2 = s2.chords(Color::Blue);
    assert!(adjacent(&s1).iter().any(|t| t.chords(Color::Blue) == blue2));
    // The third example sits where every critical value is imaginary.
    let m3 = degeneracy_margin(&p3()).unwrap();
    assert!(m3 < 1e-12);
    assert!(degeneracy_margin(&p1()).unwrap() > degeneracy_margin(&p2()).unwrap());
}

#[test]
fn root_rotation_shifts_by_two() {
    let opts = TraceOptions::default();
    for d in 2..=5usize {
        for k in 0..3 {
            let roots: Vec<C> = (0..d)
                .map(|i| C::from_polar(1.0 + 0.3 * i as f64, 0.37 * (i * i + k) as f64 + 0.1))
                .collect();
            let rot = C::from_polar(1.0, PI / d as f64);
            let q: Vec<C> = roots.iter().map(|z| z * rot).collect();
            let (Ok(a), Ok(b)) = (
                signature_of(&Polynomial::from_roots(&roots), &opts),
                signature_of(&Polynomial::from_roots(&q), &opts),
            ) else {
                continue;
            };
            assert_eq!(a.shift(2), b, "d={d} k={k}");
        }
    }
}

#[test]
fn z_power_family_rotates() {
    // z^d - c with c off the axes.
    let opts = TraceOptions::default();
    for d in 2..=6usize {
        let mut coeffs = vec![c(0.0, 0.0); d + 1];
        coeffs[0] = c(1.0, 0.0);
        coeffs[d] = -C::from_polar(1.0, 0.3);
        let p = Polynomial::monic(&coeffs).unwrap();
        let s = signature_of(&p, &opts).unwrap();
        let rotated: Vec<C> = p
            .roots()
            .unwrap()
            .iter()
            .map(|z| z * C::from_polar(1.0, PI / d as f64))
            .collect();
        let t = signature_of(&Polynomial::from_roots(&rotated), &opts).unwrap();
        assert_eq!(s.shift(2), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_drawings_are_consistent(
        d in 2usize..=5,
        raw in proptest::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 5),
    ) {
        let roots: Vec<C> = raw[..d].iter().map(|&(a, b)| c(a, b)).collect();
        let p = Polynomial::from_roots(&roots);
        prop_assume!(degeneracy_margin(&p).unwrap() > 1e-3);
        let opts = TraceOptions::default();
        let dr = trace(&p, &opts).unwrap();
        prop_assert_eq!(dr.curves.len(), 2 * d);
        prop_assert!(matched(dr.crossings(), &roots, 1e-6));
        for color in [Color::Blue, Color::Red] {
            let ch = dr.chords(color);
            prop_assert_eq!(ch.len(), d);
            let mut ends: Vec<u32> = ch.iter().flat_map(|c| [c.a, c.b]).collect();
            ends.sort();
            let want: Vec<u32> = (0..4 * d as u32).filter(|k| Color::of_label(*k) == color).collect();
            prop_assert_eq!(ends, want);
        }
        let s = dr.signature().unwrap();
        prop_assert!(s.is_generic());
        prop_assert_eq!(signature_of(&p, &opts.refined()).unwrap(), s);
    }
}
