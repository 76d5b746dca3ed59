//! The `anyon` command line.
//!
//! Exit codes: 0 on success (and when every check passes), 1 when a check
//! fails, 2 on input, parse or schema errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyon_core::braid::markov_constants;
use anyon_core::fusion_ring::Axiom;
use anyon_core::linalg::format_complex;
use anyon_core::{
    builtin, check_hexagon, check_modularity, check_pentagon, check_ribbon, check_triangle, check_unitarity,
    closure_invariant, compile_unitary, enumerate_basis, evaluate, fuse, load_model, parse_braid, power_decompose,
    s_matrix, validate_ring, AnyonModel, ComplexMatrix, Error, Label, SearchOptions, SectorSpec, C64,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "anyon",
    version,
    about = "Anyon model checks, braid representations and braid compilation"
)]
struct Cli {
    /// Absolute tolerance for every residual check.
    #[arg(long, global = true, default_value_t = anyon_core::DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Print one JSON object on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Use a built-in model (trivial, fibonacci) instead of a model file.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every ring, coherence, unitarity and modularity check.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
    },
    /// Print the normalized S-matrix.
    Smatrix {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
    },
    /// Print quantum dimensions and the global dimension.
    Dims {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
    },
    /// Fusion channels of two labels.
    Fuse {
        #[command(flatten)]
        model: ModelArgs,
        /// `[MODEL] A B`
        #[arg(value_name = "ARGS")]
        args: Vec<String>,
    },
    /// Decompose a tensor power of a label.
    Power {
        #[command(flatten)]
        model: ModelArgs,
        /// `[MODEL] A K`
        #[arg(value_name = "ARGS")]
        args: Vec<String>,
    },
    /// Enumerate the standard fusion-tree basis.
    Basis {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
        /// Comma-separated charge labels.
        #[arg(long)]
        charges: String,
        #[arg(long)]
        total: String,
    },
    /// Evaluate a braid word on the fusion spaces of n equal charges.
    Braid {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
        #[arg(short = 'n')]
        strands: usize,
        #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
        word: String,
        /// Strand charge; defaults to the first non-unit label.
        #[arg(long)]
        charge: Option<String>,
        /// Restrict to one total charge; all nonempty sectors otherwise.
        #[arg(long)]
        total: Option<String>,
    },
    /// Braid-closure invariant of a braid word.
    Knot {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
        #[arg(short = 'n')]
        strands: usize,
        #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
        word: String,
        /// Strand charge; defaults to the first non-unit label.
        #[arg(long)]
        charge: Option<String>,
        /// Skip the requirement that a model file has passed `check`.
        #[arg(long)]
        unchecked: bool,
    },
    /// Search for the braid word closest to a target unitary.
    Compile {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(value_name = "MODEL")]
        args: Vec<String>,
        #[arg(long)]
        charge: String,
        #[arg(short = 'n')]
        strands: usize,
        #[arg(long)]
        total: String,
        /// Row-major `re,im` pairs, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long = "max-len")]
        max_len: usize,
        #[arg(long)]
        unchecked: bool,
        /// Disable search pruning (exhaustive over every word).
        #[arg(long)]
        no_prune: bool,
    },
}

struct LoadedModel {
    display: String,
    path: Option<PathBuf>,
    model: AnyonModel,
}

/// Resolves `--builtin NAME` or a leading model path, and returns the rest.
fn resolve_model(model: &ModelArgs, args: &[String], extra: usize) -> Result<(LoadedModel, Vec<String>), Error> {
    let usage = |got: usize| {
        Error::Input(format!(
            "expected {} positional argument(s){}, got {got}",
            extra,
            if model.builtin.is_some() {
                ""
            } else {
                " after the model path"
            }
        ))
    };
    match &model.builtin {
        Some(name) => {
            if args.len() != extra {
                return Err(usage(args.len()));
            }
            Ok((
                LoadedModel {
                    display: name.clone(),
                    path: None,
                    model: builtin(name)?,
                },
                args.to_vec(),
            ))
        }
        None => {
            let (path, rest) = args
                .split_first()
                .ok_or_else(|| Error::Input("a model path or --builtin NAME is required".into()))?;
            if rest.len() != extra {
                return Err(usage(rest.len()));
            }
            Ok((
                LoadedModel {
                    display: path.clone(),
                    path: Some(PathBuf::from(path)),
                    model: load_model(path)?,
                },
                rest.to_vec(),
            ))
        }
    }
}

/// Path of the marker written by a passing `check` next to a model file.
pub fn marker_path(model_path: &Path) -> PathBuf {
    let mut s = model_path.as_os_str().to_owned();
    s.push(".checked");
    PathBuf::from(s)
}

fn file_digest(path: &Path) -> Result<String, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn require_checked(loaded: &LoadedModel, unchecked: bool) -> Result<(), Error> {
    let Some(path) = &loaded.path else {
        return Ok(());
    };
    if unchecked {
        return Ok(());
    }
    let expected = file_digest(path)?;
    let marker = std::fs::read_to_string(marker_path(path)).unwrap_or_default();
    if marker.trim() != expected {
        return Err(Error::Input(format!(
            "{} has not passed `check` since it was last modified; run `anyon check {}` or pass --unchecked",
            path.display(),
            path.display()
        )));
    }
    Ok(())
}

fn complex_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&z| complex_json(z)).collect()))
            .collect(),
    )
}

fn label(model: &AnyonModel, name: &str) -> Result<Label, Error> {
    model.ring().label_by_name(name)
}

fn strand_charge(model: &AnyonModel, name: Option<&str>) -> Result<Label, Error> {
    match name {
        Some(name) => label(model, name),
        None => model
            .ring()
            .labels()
            .find(|l| !l.is_unit())
            .ok_or_else(|| Error::Input("the model has no non-unit label; pass --charge".into())),
    }
}

struct Report {
    command: &'static str,
    model: String,
    results: Map<String, Value>,
    residuals: Map<String, Value>,
    pass: bool,
    text: String,
}

impl Report {
    fn new(command: &'static str, model: &LoadedModel) -> Self {
        Self {
            command,
            model: model.display.clone(),
            results: Map::new(),
            residuals: Map::new(),
            pass: true,
            text: String::new(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "model": self.model,
            "results": Value::Object(self.results.clone()),
            "residuals": Value::Object(self.residuals.clone()),
            "pass": self.pass,
        })
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        let _ = writeln!(err, "error: --tolerance must be a positive number");
        return EXIT_INPUT_ERROR;
    }
    match execute(&cli) {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                let _ = write!(out, "{}", report.text);
            }
            if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let tol = cli.tolerance;
    match &cli.command {
        Command::Check { model, args } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let report = run_checks(&loaded, tol)?;
            if let Some(path) = &loaded.path {
                let marker = marker_path(path);
                if report.pass {
                    std::fs::write(&marker, file_digest(path)? + "\n")?;
                } else if marker.exists() {
                    std::fs::remove_file(&marker)?;
                }
            }
            Ok(report)
        }
        Command::Smatrix { model, args } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let s = s_matrix(&loaded.model);
            let mut r = Report::new("smatrix", &loaded);
            r.results.insert("total_dimension".into(), json!(s.total_dimension));
            r.results.insert("s".into(), matrix_json(&s.s));
            r.results.insert("unnormalized".into(), matrix_json(&s.unnormalized));
            let _ = writeln!(r.text, "D = {:.12}", s.total_dimension);
            let _ = write!(r.text, "{}", s.s);
            Ok(r)
        }
        Command::Dims { model, args } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let m = &loaded.model;
            let mut r = Report::new("dims", &loaded);
            let mut dims = Map::new();
            for a in m.ring().labels() {
                dims.insert(m.ring().name(a).to_string(), json!(m.qdim(a)));
                let _ = writeln!(r.text, "{}: {:.12}", m.ring().name(a), m.qdim(a));
            }
            r.results.insert("qdim".into(), Value::Object(dims));
            r.results.insert("global_dim_sq".into(), json!(m.global_dim_sq()));
            let _ = writeln!(r.text, "D^2: {:.12}", m.global_dim_sq());
            Ok(r)
        }
        Command::Fuse { model, args } => {
            let (loaded, rest) = resolve_model(model, args, 2)?;
            let m = &loaded.model;
            let (a, b) = (label(m, &rest[0])?, label(m, &rest[1])?);
            let channels = fuse(m.ring(), a, b)?;
            let mut r = Report::new("fuse", &loaded);
            let mut obj = Map::new();
            let mut parts = Vec::new();
            for (c, n) in channels {
                obj.insert(m.ring().name(c).to_string(), json!(n));
                parts.push(format!("{}:{}", m.ring().name(c), n));
            }
            r.results.insert("channels".into(), Value::Object(obj));
            let _ = writeln!(r.text, "{}", parts.join(", "));
            Ok(r)
        }
        Command::Power { model, args } => {
            let (loaded, rest) = resolve_model(model, args, 2)?;
            let m = &loaded.model;
            let a = label(m, &rest[0])?;
            let k: usize = rest[1]
                .parse()
                .map_err(|_| Error::Input(format!("power {:?} is not a non-negative integer", rest[1])))?;
            let coeffs = power_decompose(m.ring(), a, k)?;
            let mut r = Report::new("power", &loaded);
            let mut obj = Map::new();
            let mut parts = Vec::new();
            for (c, n) in m.ring().labels().zip(&coeffs) {
                obj.insert(m.ring().name(c).to_string(), json!(n));
                parts.push(format!("{}:{}", m.ring().name(c), n));
            }
            r.results.insert("coefficients".into(), Value::Object(obj));
            let _ = writeln!(r.text, "{}", parts.join(", "));
            Ok(r)
        }
        Command::Basis {
            model,
            args,
            charges,
            total,
        } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let m = &loaded.model;
            let charges = charges
                .split(',')
                .map(|s| label(m, s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let total = label(m, total)?;
            let basis = enumerate_basis(m, &charges, total)?;
            let names = |tree: &[Label]| tree.iter().map(|&l| m.ring().name(l).to_string()).collect::<Vec<_>>();
            let mut r = Report::new("basis", &loaded);
            r.results.insert("dim".into(), json!(basis.dim()));
            r.results.insert(
                "trees".into(),
                Value::Array(basis.trees().iter().map(|t| json!(names(t))).collect()),
            );
            let _ = writeln!(r.text, "dim {}", basis.dim());
            for t in basis.trees() {
                let _ = writeln!(r.text, "({})", names(t).join(", "));
            }
            Ok(r)
        }
        Command::Braid {
            model,
            args,
            strands,
            word,
            charge,
            total,
        } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let m = &loaded.model;
            let word = parse_braid(word, *strands)?;
            let charge = strand_charge(m, charge.as_deref())?;
            let totals: Vec<Label> = match total {
                Some(t) => vec![label(m, t)?],
                None => m
                    .ring()
                    .labels()
                    .filter(|&t| enumerate_basis(m, &vec![charge; *strands], t).is_ok_and(|b| !b.is_empty()))
                    .collect(),
            };
            let mut r = Report::new("braid", &loaded);
            let mut sectors = Map::new();
            r.results.insert("word".into(), json!(word.to_string()));
            r.results.insert("writhe".into(), json!(word.writhe()));
            for t in totals {
                let u = evaluate(m, &word, charge, t)?;
                let _ = writeln!(r.text, "total {} (dim {}):", m.ring().name(t), u.rows());
                let _ = write!(r.text, "{u}");
                sectors.insert(m.ring().name(t).to_string(), matrix_json(&u));
            }
            r.results.insert("sectors".into(), Value::Object(sectors));
            Ok(r)
        }
        Command::Knot {
            model,
            args,
            strands,
            word,
            charge,
            unchecked,
        } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let word = parse_braid(word, *strands)?;
            require_checked(&loaded, *unchecked)?;
            let m = &loaded.model;
            let charge = strand_charge(m, charge.as_deref())?;
            let v = closure_invariant(m, &word, charge)?;
            let mut r = Report::new("knot", &loaded);
            r.results.insert("word".into(), json!(word.to_string()));
            r.results.insert("strands".into(), json!(v.strands));
            r.results.insert("writhe".into(), json!(v.writhe));
            r.results.insert("raw".into(), complex_json(v.raw));
            r.results.insert("normalized".into(), complex_json(v.normalized));
            r.results.insert("kappa_plus".into(), complex_json(v.kappa_plus));
            r.results.insert("kappa_minus".into(), complex_json(v.kappa_minus));
            let _ = writeln!(r.text, "V = {}", format_complex(v.normalized));
            let _ = writeln!(r.text, "raw = {}", format_complex(v.raw));
            let _ = writeln!(r.text, "writhe = {}", v.writhe);
            let _ = writeln!(
                r.text,
                "kappa+ = {}, kappa- = {}",
                format_complex(v.kappa_plus),
                format_complex(v.kappa_minus)
            );
            Ok(r)
        }
        Command::Compile {
            model,
            args,
            charge,
            strands,
            total,
            target,
            max_len,
            unchecked,
            no_prune,
        } => {
            let (loaded, _) = resolve_model(model, args, 0)?;
            let m = &loaded.model;
            let sector = SectorSpec {
                charge: label(m, charge)?,
                strands: *strands,
                total: label(m, total)?,
            };
            let target = parse_target(target)?;
            require_checked(&loaded, *unchecked)?;
            let c = compile_unitary(m, sector, &target, *max_len, SearchOptions { prune: !no_prune })?;
            let mut r = Report::new("compile", &loaded);
            r.results.insert("word".into(), json!(c.word.to_string()));
            r.results.insert("length".into(), json!(c.word.len()));
            r.results.insert("distance".into(), json!(c.distance));
            r.results.insert("explored".into(), json!(c.explored));
            let _ = writeln!(r.text, "word: {}", c.word);
            let _ = writeln!(r.text, "distance: {:.3e}", c.distance);
            let _ = writeln!(r.text, "explored: {}", c.explored);
            Ok(r)
        }
    }
}

/// Square complex matrix from comma-separated row-major `re,im` pairs.
fn parse_target(text: &str) -> Result<ComplexMatrix, Error> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("target entry {s:?} is not a number")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if !values.len().is_multiple_of(2) {
        return Err(Error::Input(
            "target needs an even number of reals (re,im pairs)".into(),
        ));
    }
    let entries: Vec<C64> = values.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
    let dim = (entries.len() as f64).sqrt().round() as usize;
    if dim * dim != entries.len() {
        return Err(Error::Input(format!(
            "target has {} complex entries, which is not a square number",
            entries.len()
        )));
    }
    ComplexMatrix::from_vec(dim, dim, entries)
}

fn run_checks(loaded: &LoadedModel, tol: f64) -> Result<Report, Error> {
    let m = &loaded.model;
    let mut r = Report::new("check", loaded);
    let record = |r: &mut Report, name: &str, residual: Option<f64>, passed: bool, detail: Value| {
        r.pass &= passed;
        r.results.insert(name.into(), detail);
        if let Some(x) = residual {
            r.residuals.insert(name.into(), json!(x));
        }
        let status = if passed { "pass" } else { "FAIL" };
        match residual {
            Some(x) => {
                let _ = writeln!(r.text, "{name:<24} {status}  residual {x:.3e}");
            }
            None => {
                let _ = writeln!(r.text, "{name:<24} {status}");
            }
        }
    };

    let ring = validate_ring(m.ring());
    for axiom in [
        Axiom::Commutativity,
        Axiom::Associativity,
        Axiom::Positivity,
        Axiom::Conjugation,
    ] {
        let res = ring.get(axiom);
        record(
            &mut r,
            &format!("ring.{}", axiom.name()),
            None,
            res.passed,
            json!({"pass": res.passed, "witness": res.witness, "note": res.note}),
        );
    }
    let reports = [
        check_triangle(m, tol),
        check_pentagon(m, tol)?,
        check_hexagon(m, tol)?,
        check_ribbon(m, tol),
        check_unitarity(m, tol),
    ];
    for rep in &reports {
        let mut detail = json!({
            "pass": rep.passed,
            "worst": rep.worst,
            "parts": rep.parts,
        });
        if rep.check == "hexagon" {
            detail["passing_orientations"] = json!(rep.passing_parts());
        }
        record(&mut r, rep.check, Some(rep.max_residual), rep.passed, detail);
    }
    let modular = check_modularity(m, tol);
    record(
        &mut r,
        "modularity",
        Some(modular.symmetry_residual),
        modular.passed(),
        json!({
            "pass": modular.passed(),
            "symmetric": modular.symmetric,
            "invertible": modular.invertible,
            "abs_det": modular.abs_det,
        }),
    );
    if !modular.invertible {
        let _ = writeln!(
            r.text,
            "  S-matrix is singular (|det S| = {:.3e}): braiding is degenerate",
            modular.abs_det
        );
    }
    // Framing constants for every label, shown for reference.
    let mut kappas = Map::new();
    for a in m.ring().labels() {
        let (plus, minus) = markov_constants(m, a)?;
        kappas.insert(
            m.ring().name(a).to_string(),
            json!({"plus": complex_json(plus), "minus": complex_json(minus)}),
        );
    }
    r.results.insert("kappa".into(), Value::Object(kappas));
    let _ = writeln!(
        r.text,
        "{}",
        if r.pass {
            "all checks passed"
        } else {
            "some checks FAILED"
        }
    );
    Ok(r)
}
