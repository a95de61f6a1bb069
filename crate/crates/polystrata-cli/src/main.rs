use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use polystrata::atlas::Atlas;
use polystrata::braid::{braid_word, endpoint_permutation, track_roots};
use polystrata::io::{
    read_signature, render_drawing, render_signature, write_nerve, write_signature,
};
use polystrata::nerve::{chamber_report, q_diagrams, q_piece, q_table, NerveComplex};
use polystrata::tracer::{degeneracy_margin, trace, Polynomial, TraceOptions};
use polystrata::{classify, parse_notation, TraceError};

const EXIT_INVARIANT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

/// Writes to stdout; a closed pipe (`| head`) ends the process quietly.
fn say(args: std::fmt::Arguments) {
    if let Err(e) = io::stdout().lock().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

macro_rules! out {
    ($($t:tt)*) => { say(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { say(format_args!("{}\n", format_args!($($t)*))) };
}

#[derive(Parser)]
#[command(
    name = "polystrata",
    version,
    about = "Signatures and strata of complex polynomials",
    after_help = "Exit status: 0 ok, 1 usage or input error, 2 invariant failure, 3 near-degenerate polynomial, 4 numeric failure."
)]
struct Cli {
    /// Directory for relative --out paths.
    #[arg(long, global = true, env = "POLYSTRATA_OUT_DIR")]
    out_dir: Option<PathBuf>,
    /// Worker threads for enumeration and batch work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all signatures of a degree.
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Build or check the inclusion complex.
    #[command(subcommand)]
    Nerve(NerveCmd),
    /// Q-diagrams and Q-pieces.
    #[command(subcommand)]
    Q(QCmd),
    /// Write the JSON document of a signature given in bracket notation.
    Signature {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        notation: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a polynomial given by its coefficients, highest first.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Braid word of a path of polynomials read from a keyframe file.
    Braid {
        #[arg(long)]
        path: PathBuf,
        /// Samples per keyframe segment.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Render an SVG picture.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Subcommand)]
enum AtlasCmd {
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// List the canonical keys of one codimension instead of the census.
        #[arg(long)]
        codim: Option<usize>,
        /// Census as CSV.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NerveCmd {
    Build {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Check {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum QCmd {
    Table {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 7)]
        to: usize,
    },
    Pieces {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum RenderCmd {
    /// From a signature JSON document.
    Signature {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// From a file holding one coefficient line, or from --poly.
    Drawing {
        #[arg(long = "in", conflicts_with = "poly")]
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        trace: TraceArgs,
    },
}

#[derive(Args)]
struct TraceArgs {
    /// Degeneracy tolerance on the margin.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Far-field radius; automatic when omitted.
    #[arg(long)]
    radius: Option<f64>,
    /// Largest tracing step relative to the radius.
    #[arg(long, default_value_t = 0.02)]
    max_step: f64,
}

impl TraceArgs {
    fn options(&self) -> TraceOptions {
        TraceOptions {
            tol: self.tol,
            radius: self.radius,
            max_step: self.max_step,
            ..TraceOptions::default()
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn usage(e: impl ToString) -> Failure {
    fail(1, e)
}

fn trace_failure(e: TraceError) -> Failure {
    match e {
        TraceError::NearDegenerate { .. } => fail(EXIT_DEGENERATE, e),
        _ => fail(EXIT_NUMERIC, e),
    }
}

struct Ctx {
    out_dir: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, out: Option<&Path>, text: &str) -> Result<(), Failure> {
        match out {
            None => {
                out!("{text}");
                Ok(())
            }
            Some(p) => {
                let path = match &self.out_dir {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.to_path_buf(),
                };
                if let Some(parent) = path.parent().filter(|x| !x.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)
                        .map_err(|e| usage(format!("{}: {e}", parent.display())))?;
                }
                fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
            }
        }
    }
}

fn atlas(d: usize) -> Result<Atlas, Failure> {
    Atlas::build(d).map_err(usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Ctx {
        out_dir: cli.out_dir,
    };
    match cli.command {
        Command::Atlas(AtlasCmd::Enumerate {
            degree,
            codim,
            csv,
            out,
        }) => {
            let a = atlas(degree)?;
            let census = a.census();
            let text = match codim {
                Some(k) => a
                    .ids_of_codim(k)
                    .iter()
                    .map(|&i| format!("{}\n", a.cells[i].key()))
                    .collect(),
                None if csv => census.to_csv(),
                None => format!("{census}\n"),
            };
            ctx.emit(out.as_deref(), &text)?;
            let bad_walls = a
                .ids_of_codim(1)
                .into_iter()
                .filter(|&w| a.boundary(w).len() != 2)
                .count();
            if census.euler != 0 || bad_walls > 0 {
                return Err(fail(
                    EXIT_INVARIANT,
                    format!(
                        "invariant failure: euler sum {}, {bad_walls} walls without two sides",
                        census.euler
                    ),
                ));
            }
        }
        Command::Nerve(NerveCmd::Build { degree, out }) => {
            let c = NerveComplex::from_atlas(atlas(degree)?);
            ctx.emit(out.as_deref(), &write_nerve(&c))?;
        }
        Command::Nerve(NerveCmd::Check { degree }) => {
            let c = NerveComplex::from_atlas(atlas(degree)?);
            let mut ok = true;
            outln!("f-vector {:?}", c.f_vector());
            let q = c.quadrangle_report();
            outln!(
                "1-cells {} 2-cells {} quadrangle violations {}",
                q.one_cells,
                q.two_cells,
                q.violations.len()
            );
            for v in &q.violations {
                outln!("  {v}");
            }
            ok &= q.violations.is_empty();
            let ncs = c.nc_structures();
            for n in &ncs {
                let ms: Vec<String> = n
                    .m_signatures
                    .iter()
                    .map(|&m| {
                        classify(c.signature(m))
                            .map(|x| x.notation())
                            .unwrap_or_default()
                    })
                    .collect();
                outln!(
                    "NC {} generic {} M {}",
                    n.color.name(),
                    n.generic.len(),
                    ms.join(" ")
                );
            }
            ok &= ncs.len() == 4;
            let s = c.symmetry_report();
            for ch in &s.checks {
                outln!("{:?}: {} violations", ch.symmetry, ch.violations.len());
            }
            outln!("orbits {} M orbit {}", s.orbit_count, s.m_orbit);
            ok &= s.ok();
            if degree >= 4 {
                let r = chamber_report(&c.atlas).map_err(usage)?;
                outln!(
                    "Q-pieces {} chambers {} transverse {} covered {}/{}",
                    r.distinct_pieces,
                    r.chambers,
                    r.transverse,
                    r.covered,
                    r.generic
                );
                ok &= r.covered == r.generic && r.transverse;
            }
            if !ok {
                return Err(fail(EXIT_INVARIANT, "nerve check failed"));
            }
        }
        Command::Q(QCmd::Table { from, to }) => {
            let t = q_table(from, to).map_err(usage)?;
            out!("{}", t.render());
        }
        Command::Q(QCmd::Pieces { degree }) => {
            let a = atlas(degree)?;
            for q in q_diagrams(degree).map_err(usage)? {
                let piece = q_piece(&a, &q).map_err(usage)?;
                let mut names: Vec<String> = piece
                    .iter()
                    .map(|&i| {
                        classify(&a.cells[i])
                            .map(|c| c.notation())
                            .unwrap_or_default()
                    })
                    .collect();
                names.sort();
                outln!("{q}\t{}\t{}", piece.len(), names.join(" "));
            }
        }
        Command::Signature {
            degree,
            notation,
            out,
        } => {
            let s = parse_notation(degree, &notation).map_err(usage)?;
            ctx.emit(out.as_deref(), &format!("{}\n", write_signature(&s)))?;
        }
        Command::Classify { poly, trace: args } => {
            let p: Polynomial = poly.parse().map_err(usage)?;
            let margin = degeneracy_margin(&p).map_err(trace_failure)?;
            outln!("margin {margin:e}");
            let dr = trace(&p, &args.options()).map_err(trace_failure)?;
            let s = dr.signature().map_err(trace_failure)?;
            outln!("key {}", s.key());
            if let Ok(c) = classify(&s) {
                outln!("class {}", c.class);
                outln!("notation {}", c.notation());
            }
        }
        Command::Braid { path, samples } => {
            let text =
                fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let polys = sample_path(&text, samples.max(1))?;
            let traj = track_roots(&polys).map_err(|e| fail(EXIT_NUMERIC, e))?;
            let w = braid_word(&traj).map_err(|e| fail(EXIT_NUMERIC, e))?;
            outln!("word {w}");
            outln!("permutation {:?}", w.permutation());
            if w.permutation() != endpoint_permutation(&traj) {
                return Err(fail(
                    EXIT_INVARIANT,
                    "word permutation differs from endpoint permutation",
                ));
            }
        }
        Command::Render(RenderCmd::Signature { input, out }) => {
            let text = fs::read_to_string(&input)
                .map_err(|e| usage(format!("{}: {e}", input.display())))?;
            let s = read_signature(&text).map_err(usage)?;
            ctx.emit(out.as_deref(), &render_signature(&s))?;
        }
        Command::Render(RenderCmd::Drawing {
            input,
            poly,
            out,
            trace: args,
        }) => {
            let text = match (input, poly) {
                (Some(f), _) => {
                    fs::read_to_string(&f).map_err(|e| usage(format!("{}: {e}", f.display())))?
                }
                (None, Some(p)) => p,
                (None, None) => return Err(usage("give --in or --poly")),
            };
            let p: Polynomial = text.trim().parse().map_err(usage)?;
            let dr = trace(&p, &args.options()).map_err(trace_failure)?;
            ctx.emit(out.as_deref(), &render_drawing(&dr))?;
        }
    }
    Ok(())
}

/// Keyframe lines `coeffs: c_d ... c_0` or `roots: z_1 ... z_d` (one kind
/// per file, `#` starts a comment); consecutive keyframes are joined by
/// straight segments in that space.
fn sample_path(text: &str, samples: usize) -> Result<Vec<Polynomial>, Failure> {
    let mut kind = None;
    let mut frames: Vec<Vec<Complex64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, rest) = line
            .split_once(':')
            .ok_or_else(|| usage(format!("line {}: expected 'coeffs:' or 'roots:'", i + 1)))?;
        let k = k.trim();
        if k != "coeffs" && k != "roots" {
            return Err(usage(format!(
                "line {}: unknown keyframe kind {k:?}",
                i + 1
            )));
        }
        if kind.is_some_and(|x| x != k) {
            return Err(usage(format!("line {}: mixed keyframe kinds", i + 1)));
        }
        kind = Some(k);
        let v: Vec<Complex64> = rest
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| usage(format!("line {}: bad number {t:?}", i + 1)))
            })
            .collect::<Result<_, _>>()?;
        if frames.first().is_some_and(|f| f.len() != v.len()) {
            return Err(usage(format!("line {}: keyframe size differs", i + 1)));
        }
        frames.push(v);
    }
    if frames.is_empty() {
        return Err(usage("no keyframes"));
    }
    let make = |v: Vec<Complex64>| -> Result<Polynomial, Failure> {
        if kind == Some("roots") {
            Ok(Polynomial::from_roots(&v))
        } else {
            Polynomial::monic(&v).map_err(usage)
        }
    };
    let mut out = vec![make(frames[0].clone())?];
    for w in frames.windows(2) {
        for s in 1..=samples {
            let t = s as f64 / samples as f64;
            out.push(make(
                w[0].iter()
                    .zip(&w[1])
                    .map(|(a, b)| a + (b - a) * t)
                    .collect(),
            )?);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
