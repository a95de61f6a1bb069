//! Tree classes of generic signatures and the bracket notation
//! `|j;i|` (F tree: chord `(i,j)`, crossed near `j` by the short chord
//! `(j-1,j+1)`) and `[a,b;c,e]` (S tree: two long chords).

use std::fmt;

use crate::error::SignatureError;
use crate::map::{interleaves, Chord};
use crate::signature::{Color, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeClass {
    /// Two short chords; `chord` is the red one.
    M {
        chord: Chord,
        hinge: u32,
    },
    /// One long chord `(i,j)` crossed by a short chord around `hinge = j`.
    F {
        long: Chord,
        hinge: u32,
    },
    S {
        red: Chord,
        blue: Chord,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignatureClass {
    /// One of the four all-short signatures, numbered 1..=4.
    M(u8),
    F(usize),
    S(usize),
    FS {
        f: usize,
        s: usize,
    },
}

impl fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SignatureClass::M(k) => write!(f, "M{k}"),
            SignatureClass::F(m) => write!(f, "F^{m}"),
            SignatureClass::S(m) => write!(f, "S^{m}"),
            SignatureClass::FS { f: a, s: b } => write!(f, "F^{a}S^{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// One entry per tree, ordered by smallest label.
    pub trees: Vec<TreeClass>,
    pub class: SignatureClass,
}

fn fmt_tree(t: &TreeClass) -> String {
    match *t {
        TreeClass::M { chord, hinge } | TreeClass::F { long: chord, hinge } => {
            let other = if chord.a == hinge { chord.b } else { chord.a };
            format!("|{hinge};{other}|")
        }
        TreeClass::S { red, blue } => format!("[{},{};{},{}]", red.a, red.b, blue.a, blue.b),
    }
}

impl TreeClass {
    pub fn is_m(&self) -> bool {
        matches!(self, TreeClass::M { .. })
    }

    pub fn is_f(&self) -> bool {
        matches!(self, TreeClass::F { .. })
    }

    pub fn is_s(&self) -> bool {
        matches!(self, TreeClass::S { .. })
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tree(self))
    }
}

impl Classification {
    /// Bracket notation listing the non-M trees, or `Mk`.
    pub fn notation(&self) -> String {
        if let SignatureClass::M(k) = self.class {
            return format!("M{k}");
        }
        self.trees
            .iter()
            .filter(|t| !t.is_m())
            .map(fmt_tree)
            .collect()
    }

    /// Bracket notation of every tree, M trees included.
    pub fn full_notation(&self) -> String {
        self.trees.iter().map(fmt_tree).collect()
    }
}

fn hinge_of(long: Chord, short: Chord, n: u32) -> u32 {
    for x in [long.a, long.b] {
        if short == Chord::new((x + n - 1) % n, (x + 1) % n) {
            return x;
        }
    }
    unreachable!("a short chord crosses its partner next to an endpoint")
}

pub fn classify(s: &Signature) -> Result<Classification, SignatureError> {
    if !s.is_generic() {
        return Err(SignatureError::Unsupported(
            "classification of non-generic signatures",
        ));
    }
    let n = s.label_count();
    let blue = s.chords(Color::Blue);
    let red = s.chords(Color::Red);
    let mut trees = Vec::new();
    for b in &blue {
        let r = *red
            .iter()
            .find(|&&r| interleaves(*b, r))
            .expect("generic trees are crosses");
        let t = match (b.is_short(n), r.is_short(n)) {
            (true, true) => TreeClass::M {
                chord: r,
                hinge: hinge_of(r, *b, n),
            },
            (false, true) => TreeClass::F {
                long: *b,
                hinge: hinge_of(*b, r, n),
            },
            (true, false) => TreeClass::F {
                long: r,
                hinge: hinge_of(r, *b, n),
            },
            (false, false) => TreeClass::S { red: r, blue: *b },
        };
        trees.push((b.a.min(r.a), t));
    }
    trees.sort();
    let trees: Vec<TreeClass> = trees.into_iter().map(|x| x.1).collect();
    let fs = trees.iter().filter(|t| t.is_f()).count();
    let ss = trees.iter().filter(|t| t.is_s()).count();
    let class = match (fs, ss) {
        (0, 0) => {
            let o0 = red.contains(&Chord::new(1, 3));
            let e0 = blue.contains(&Chord::new(0, 2));
            SignatureClass::M(match (o0, e0) {
                (true, false) => 1,
                (true, true) => 2,
                (false, false) => 3,
                (false, true) => 4,
            })
        }
        (f, 0) => SignatureClass::F(f),
        (0, s) => SignatureClass::S(s),
        (f, s) => SignatureClass::FS { f, s },
    };
    Ok(Classification { trees, class })
}

/// The M-signature `k` (1..=4) of degree `d`.
pub fn m_signature(d: usize, k: u8) -> Result<Signature, SignatureError> {
    let offset = match k {
        2 => 0,
        1 => 1,
        3 => 2,
        4 => 3,
        _ => return Err(SignatureError::Notation(format!("M{k}"))),
    };
    let n = 4 * d as u32;
    let (mut blue, mut red) = (Vec::new(), Vec::new());
    for b in 0..d as u32 {
        let a = 4 * b + offset;
        for c in [
            Chord::new(a % n, (a + 2) % n),
            Chord::new((a + 1) % n, (a + 3) % n),
        ] {
            if c.is_even() {
                blue.push(c);
            } else {
                red.push(c);
            }
        }
    }
    Signature::from_generic(d, &blue, &red)
}

fn numbers(s: &str) -> Result<Vec<i64>, SignatureError> {
    s.split([',', ';'])
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| SignatureError::Notation(s.to_string()))
        })
        .collect()
}

/// Parses bracket notation, filling unused labels with M trees.
pub fn parse_notation(d: usize, text: &str) -> Result<Signature, SignatureError> {
    let bad = || SignatureError::Notation(text.to_string());
    let n = 4 * d as i64;
    let t = text.trim();
    if let Some(k) = t.strip_prefix('M') {
        let k: u8 = k.trim().parse().map_err(|_| bad())?;
        return m_signature(d, k);
    }
    let norm = |x: i64| x.rem_euclid(n) as u32;
    let mut chords = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest.chars().next().unwrap();
        let close = match open {
            '|' => '|',
            '[' => ']',
            _ => return Err(bad()),
        };
        let end = rest[1..].find(close).ok_or_else(bad)? + 1;
        let nums = numbers(&rest[1..end])?;
        match (open, nums.as_slice()) {
            ('|', &[j, i]) => {
                chords.push(Chord::new(norm(i), norm(j)));
                chords.push(Chord::new(norm(j - 1), norm(j + 1)));
            }
            ('[', &[a, b, c, e]) => {
                chords.push(Chord::new(norm(a), norm(b)));
                chords.push(Chord::new(norm(c), norm(e)));
            }
            _ => return Err(bad()),
        }
        rest = rest[end + 1..].trim_start();
    }
    fill_with_m(d, chords).map_err(|_| bad())
}

/// Completes chords covering some labels with M trees on the free labels.
pub fn fill_with_m(d: usize, mut chords: Vec<Chord>) -> Result<Signature, SignatureError> {
    let n = 4 * d as i64;
    let bad = || SignatureError::Notation("free labels do not split into M blocks".into());
    let norm = |x: i64| x.rem_euclid(n) as u32;
    let mut used = vec![false; n as usize];
    for c in &chords {
        for x in [c.a, c.b] {
            if std::mem::replace(&mut used[x as usize], true) {
                return Err(bad());
            }
        }
    }
    if let Some(first_used) = used.iter().position(|&u| u) {
        let mut k = 0;
        while k < n as usize {
            let x = (first_used + k) % n as usize;
            if used[x] {
                k += 1;
                continue;
            }
            if (0..4).any(|i| used[(x + i) % n as usize]) {
                return Err(bad());
            }
            let x = x as i64;
            chords.push(Chord::new(norm(x), norm(x + 2)));
            chords.push(Chord::new(norm(x + 1), norm(x + 3)));
            for i in 0..4 {
                used[norm(x + i) as usize] = true;
            }
            k += 4;
        }
    } else {
        return Err(bad());
    }
    let blue: Vec<Chord> = chords.iter().copied().filter(|c| c.is_even()).collect();
    let red: Vec<Chord> = chords.iter().copied().filter(|c| !c.is_even()).collect();
    Signature::from_generic(d, &blue, &red)
}
