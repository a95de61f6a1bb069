//! Numeric drawings: the preimage of the real axis (blue) and the imaginary
//! axis (red) under a monic polynomial, and the signature it realises.
//!
//! Every component of the drawing is the union of two half-axis preimages
//! meeting at a root, so each curve is traced as two paths `P(z) = t·u`,
//! `t` decreasing from the far field to 0, where `u` is the unit of the
//! half-axis of the starting direction.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::TraceError;
use crate::map::Chord;
use crate::signature::{Color, Signature};

const ROOT_ITERATIONS: usize = 1000;
const MAX_TRACE_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    /// Highest degree first; `coeffs[0] == 1`.
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Normalises by the leading coefficient.
    pub fn monic(coeffs: &[Complex64]) -> Result<Polynomial, TraceError> {
        let start = coeffs.iter().position(|c| c.norm() > 0.0);
        let Some(start) = start else {
            return Err(TraceError::BadPolynomial("zero polynomial".into()));
        };
        let c = &coeffs[start..];
        if c.len() < 2 {
            return Err(TraceError::BadPolynomial(
                "degree must be at least 1".into(),
            ));
        }
        if c.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(TraceError::BadPolynomial("non-finite coefficient".into()));
        }
        let lead = c[0];
        Ok(Polynomial {
            coeffs: c.iter().map(|x| x / lead).collect(),
        })
    }

    pub fn from_roots(roots: &[Complex64]) -> Polynomial {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for i in (1..coeffs.len()).rev() {
                let prev = coeffs[i - 1];
                coeffs[i] -= r * prev;
            }
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Whether the roots sum to zero.
    pub fn is_tschirnhausen(&self, tol: f64) -> bool {
        self.coeffs[1].norm() <= tol
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(P(z), P'(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut dp) = (zero, zero);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `P'/d`, monic of degree `d-1`.
    pub fn derivative(&self) -> Option<Polynomial> {
        let d = self.degree();
        if d < 2 {
            return None;
        }
        let coeffs = self.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * ((d - i) as f64 / d as f64))
            .collect();
        Some(Polynomial { coeffs })
    }

    /// All roots, by Aberth-Ehrlich iteration followed by Newton polishing.
    pub fn roots(&self) -> Result<Vec<Complex64>, TraceError> {
        let d = self.degree();
        if d == 1 {
            return Ok(vec![-self.coeffs[1]]);
        }
        let radius = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm().powf(1.0 / (k + 1) as f64))
            .fold(0.0, f64::max)
            .max(1e-3);
        let mut z: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
            .collect();
        let mut worst: f64 = f64::INFINITY;
        for _ in 0..ROOT_ITERATIONS {
            worst = 0.0;
            for i in 0..d {
                let (p, dp) = self.eval_with_derivative(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| (z[i] - z[j]).inv())
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[i] -= step;
                    worst = worst.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if worst < 1e-15 {
                break;
            }
        }
        if worst < 1e-9 {
            Ok(self.polish(z))
        } else {
            Err(TraceError::RootFinding(ROOT_ITERATIONS))
        }
    }

    fn polish(&self, mut z: Vec<Complex64>) -> Vec<Complex64> {
        for r in z.iter_mut() {
            for _ in 0..2 {
                let (p, dp) = self.eval_with_derivative(*r);
                let step = p / dp;
                if step.re.is_finite() && step.im.is_finite() {
                    *r -= step;
                }
            }
        }
        z
    }

    pub fn critical_points(&self) -> Result<Vec<Complex64>, TraceError> {
        match self.derivative() {
            Some(dp) => dp.roots(),
            None => Ok(Vec::new()),
        }
    }

    pub fn critical_values(&self) -> Result<Vec<Complex64>, TraceError> {
        Ok(self
            .critical_points()?
            .into_iter()
            .map(|c| self.eval(c))
            .collect())
    }
}

impl FromStr for Polynomial {
    type Err = TraceError;

    /// Whitespace-separated coefficients, highest degree first, each a
    /// complex literal such as `1`, `-0.5`, `2i` or `1-1i`.
    fn from_str(s: &str) -> Result<Polynomial, TraceError> {
        let coeffs: Vec<Complex64> = s
            .split_whitespace()
            .map(|t| {
                Complex64::from_str(t).map_err(|_| {
                    TraceError::BadPolynomial(format!("cannot parse coefficient {t:?}"))
                })
            })
            .collect::<Result<_, _>>()?;
        Polynomial::monic(&coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| format!("{}{:+}i", c.re, c.im))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Minimum over critical values `w` of `min(|Re w|, |Im w|)`; infinite in
/// degree 1.
pub fn degeneracy_margin(p: &Polynomial) -> Result<f64, TraceError> {
    Ok(worst_critical_value(p)?.map_or(f64::INFINITY, |(_, m)| m))
}

fn worst_critical_value(p: &Polynomial) -> Result<Option<(Complex64, f64)>, TraceError> {
    Ok(p.critical_values()?
        .into_iter()
        .map(|w| (w, w.re.abs().min(w.im.abs())))
        .min_by(|a, b| a.1.total_cmp(&b.1)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceOptions {
    /// Margins at or below this are reported as degenerate.
    pub tol: f64,
    /// Largest step along a curve, relative to the far-field radius.
    pub max_step: f64,
    /// Bound on `|P(z)/z^d - 1|` on the start circle.
    pub far_field_tol: f64,
    /// Start circle radius; chosen automatically when `None`.
    pub radius: Option<f64>,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            tol: 1e-9,
            max_step: 0.02,
            far_field_tol: 0.05,
            radius: None,
        }
    }
}

impl TraceOptions {
    pub fn refined(self) -> TraceOptions {
        TraceOptions {
            max_step: self.max_step / 2.0,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub color: Color,
    /// Asymptotic direction labels, smaller first.
    pub ends: (u32, u32),
    /// Index into [`Drawing::roots`] of the crossing on this curve.
    pub root: usize,
    /// From direction `ends.0` through the root to direction `ends.1`.
    pub points: Vec<Complex64>,
}

impl Curve {
    pub fn chord(&self) -> Chord {
        Chord::new(self.ends.0, self.ends.1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    pub degree: usize,
    pub radius: f64,
    pub roots: Vec<Complex64>,
    pub curves: Vec<Curve>,
    pub margin: f64,
}

impl Drawing {
    pub fn chords(&self, color: Color) -> Vec<Chord> {
        let mut v: Vec<Chord> = self
            .curves
            .iter()
            .filter(|c| c.color == color)
            .map(Curve::chord)
            .collect();
        v.sort();
        v
    }

    pub fn crossings(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn signature(&self) -> Result<Signature, TraceError> {
        Ok(Signature::from_generic(
            self.degree,
            &self.chords(Color::Blue),
            &self.chords(Color::Red),
        )?)
    }
}

/// Angle of direction label `k` out of `4d`.
pub fn direction_angle(k: u32, d: usize) -> f64 {
    k as f64 * PI / (2.0 * d as f64)
}

fn half_axis(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn far_field_radius(p: &Polynomial, roots: &[Complex64], tol: f64) -> f64 {
    let d = p.degree();
    let mut r = roots.iter().map(|z| z.norm()).fold(0.5, f64::max) * 2.0;
    let samples = 64 * d;
    loop {
        let ok = (0..samples).all(|k| {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / samples as f64);
            (p.eval(z) / z.powu(d as u32) - 1.0).norm() < tol
        });
        if ok {
            return r;
        }
        r *= 1.25;
    }
}

fn numeric(z: Complex64, reason: &str) -> TraceError {
    TraceError::Numeric {
        re: z.re,
        im: z.im,
        reason: reason.to_string(),
    }
}

struct Tracker<'a> {
    p: &'a Polynomial,
    critical: &'a [Complex64],
    step: f64,
}

impl Tracker<'_> {
    fn newton(&self, mut z: Complex64, w: Complex64) -> Option<Complex64> {
        for _ in 0..20 {
            let (v, dv) = self.p.eval_with_derivative(z);
            let dz = (v - w) / dv;
            if !(dz.re.is_finite() && dz.im.is_finite()) {
                return None;
            }
            z -= dz;
            if dz.norm() <= 1e-13 * (1.0 + z.norm()) {
                return Some(z);
            }
        }
        None
    }

    /// Follows `P(z) = t·u` from `z` (where `t = t0`) down to `t = 0`.
    fn follow(
        &self,
        u: Complex64,
        mut z: Complex64,
        t0: f64,
    ) -> Result<Vec<Complex64>, TraceError> {
        let mut t = t0;
        let mut path = vec![z];
        let mut steps = 0;
        while t > 0.0 {
            steps += 1;
            if steps > MAX_TRACE_STEPS {
                return Err(numeric(z, "step budget exhausted"));
            }
            let dist = self
                .critical
                .iter()
                .map(|c| (z - c).norm())
                .fold(f64::INFINITY, f64::min);
            let (_, dp) = self.p.eval_with_derivative(z);
            let mut target = self.step.min(0.25 * dist);
            loop {
                if target < 1e-14 * (1.0 + z.norm()) {
                    return Err(numeric(z, "step size underflow"));
                }
                let dt = (target * dp.norm()).min(t);
                let t1 = if dt >= t { 0.0 } else { t - dt };
                let predicted = z - u * (t - t1) / dp;
                match self.newton(predicted, u * t1) {
                    Some(z1)
                        if (z1 - predicted).norm() <= 0.5 * target.max((predicted - z).norm()) =>
                    {
                        z = z1;
                        t = t1;
                        path.push(z);
                        break;
                    }
                    _ => target /= 2.0,
                }
            }
        }
        Ok(path)
    }
}

/// Traces the drawing of `p`; fails if a critical value lies within
/// `opts.tol` of the axes.
pub fn trace(p: &Polynomial, opts: &TraceOptions) -> Result<Drawing, TraceError> {
    let d = p.degree();
    if let Some((w, margin)) = worst_critical_value(p)? {
        if margin <= opts.tol {
            return Err(TraceError::NearDegenerate {
                re: w.re,
                im: w.im,
                margin,
            });
        }
    }
    let margin = degeneracy_margin(p)?;
    let roots = p.roots()?;
    let critical = p.critical_points()?;
    let radius = opts
        .radius
        .unwrap_or_else(|| far_field_radius(p, &roots, opts.far_field_tol));
    let tracker = Tracker {
        p,
        critical: &critical,
        step: opts.max_step * radius,
    };
    let n = 4 * d as u32;
    let t0 = radius.powi(d as i32);
    // Per root and half-axis: the label reached and the curve taken.
    type Arrival = Option<(u32, Vec<Complex64>)>;
    let mut arrivals: Vec<[Arrival; 4]> = vec![Default::default(); d];
    for k in 0..n {
        let u = half_axis(k);
        let guess = Complex64::from_polar(radius, direction_angle(k, d));
        let start = tracker
            .newton(guess, u * t0)
            .ok_or_else(|| numeric(guess, "far-field start"))?;
        let path = tracker.follow(u, start, t0)?;
        let end = *path.last().expect("nonempty");
        let (r, dist) = roots
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - end).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("d >= 1");
        if dist > 1e-6 * (1.0 + roots[r].norm()) {
            return Err(numeric(end, "path did not end at a root"));
        }
        let slot = &mut arrivals[r][(k % 4) as usize];
        if slot.is_some() {
            return Err(numeric(
                roots[r],
                "two paths of one half-axis reach the same root",
            ));
        }
        *slot = Some((k, path));
    }
    let mut curves = Vec::with_capacity(2 * d);
    for (r, slots) in arrivals.into_iter().enumerate() {
        let [a0, a1, a2, a3] = slots;
        for (color, x, y) in [(Color::Blue, a0, a2), (Color::Red, a1, a3)] {
            let (Some((ka, pa)), Some((kb, pb))) = (x, y) else {
                return Err(numeric(roots[r], "a root misses a half-axis"));
            };
            let ((ka, mut pa), (kb, pb)) = if ka < kb {
                ((ka, pa), (kb, pb))
            } else {
                ((kb, pb), (ka, pa))
            };
            pa.extend(pb.into_iter().rev().skip(1));
            curves.push(Curve {
                color,
                ends: (ka, kb),
                root: r,
                points: pa,
            });
        }
    }
    curves.sort_by_key(|c| (c.color, c.ends));
    Ok(Drawing {
        degree: d,
        radius,
        roots,
        curves,
        margin,
    })
}

pub fn signature_of(p: &Polynomial, opts: &TraceOptions) -> Result<Signature, TraceError> {
    trace(p, opts)?.signature()
}
