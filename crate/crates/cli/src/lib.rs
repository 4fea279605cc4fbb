//! Command-line front end: argument parsing, input loading and output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use lch_core::augmentation::{describe_boundary, enumerate_augmentations, linearize};
use lch_core::catalog::{self, FixtureParams, Payload};
use lch_core::complex::poincare_chekanov;
use lch_core::duality::{manifold_class_report, RSolution};
use lch_core::random::{self, ComplexShape, TwoCopyShape};
use lch_core::spinning::{kunneth_check, spin_complex};
use lch_core::text::{self, DgaDocument};
use lch_core::two_copy::duality_check;
use lch_core::{
    arnold_check, feasibility_solve, solve_poincare, sphere_duality_check, Augmentation,
    BasedChainComplex, CoefficientRing, Dga, DualityInstance, Error, TwoCopyData,
};

/// Environment variable naming a directory searched for fixture files first.
pub const FIXTURES_ENV: &str = "LCH_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "lch", version, about = "Linearized Legendrian contact homology calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Coefficient ring for DGA inputs: Z, Q or Z<m>.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Use a built-in or fixture-directory example instead of a file.
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Known dimension `k=d` of linearized homology (repeatable).
    #[arg(long = "constraint", global = true, value_parser = parse_constraint)]
    constraints: Vec<(i64, usize)>,
    /// Seed for a random input when no file or fixture is given.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Dimension parameter for parametrized fixtures.
    #[arg(long, global = true)]
    n: Option<i64>,
    /// First sphere dimension for product fixtures.
    #[arg(long, global = true)]
    p: Option<i64>,
    /// Second sphere dimension for product fixtures.
    #[arg(long, global = true)]
    k: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check degrees and d^2 = 0, or the block relations of two-copy data.
    Validate { input: Option<String> },
    /// List all augmentations over a finite field.
    Augs { input: Option<String> },
    /// Print the linearized differential.
    Linearize { input: Option<String> },
    /// Linearized homology by degree.
    Homology { input: Option<String> },
    /// Poincaré-Chekanov polynomial and the sphere duality identity.
    Pcpoly { input: Option<String> },
    /// Feasible ranks of H(Q) -> H(L), or the two-copy duality check.
    Duality { input: Option<String> },
    /// Chord-count lower bound by Betti numbers.
    Arnold { input: Option<String> },
    /// Front-spin the linearized complex.
    Spin {
        input: Option<String>,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Relations, acyclicity and the exact sequence of two-copy data.
    Twocopy { input: Option<String> },
    /// Poincaré polynomials allowed by chord counts and constraints.
    Solve { input: Option<String> },
}

fn parse_constraint(s: &str) -> Result<(i64, usize), String> {
    let (k, d) = s
        .split_once('=')
        .ok_or_else(|| format!("expected k=d, got `{s}`"))?;
    let k = k.trim().parse().map_err(|_| format!("bad degree in `{s}`"))?;
    let d = d.trim().parse().map_err(|_| format!("bad dimension in `{s}`"))?;
    Ok((k, d))
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Res<T> = Result<T, Failure>;

/// What a command produced: the result value, a human rendering and notes.
struct Report {
    result: Value,
    human: String,
    diagnostics: Vec<String>,
    code: i32,
}

impl Report {
    fn ok(result: Value, human: String) -> Self {
        Report {
            result,
            human,
            diagnostics: Vec::new(),
            code: 0,
        }
    }

    fn failing_if(mut self, fail: bool) -> Self {
        if fail {
            self.code = 1;
        }
        self
    }
}

enum Loaded {
    Dga {
        dga: Dga,
        betti: Option<BTreeMap<i64, usize>>,
        instance: Option<DualityInstance>,
        document: Option<DgaDocument>,
    },
    Instance(DualityInstance),
    TwoCopy(TwoCopyData),
}

struct Source {
    label: String,
    loaded: Loaded,
}

/// Runs `lch` with `argv` (program name first).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let name = command_name(&cli.command);
    let json = cli.opts.json;
    match dispatch(&cli) {
        Ok((input, report)) => {
            let stdout = if json {
                let body = json!({
                    "command": name,
                    "input": input,
                    "result": report.result,
                    "diagnostics": report.diagnostics,
                });
                serde_json::to_string_pretty(&body).expect("serializable") + "\n"
            } else {
                report.human
            };
            let mut stderr = String::new();
            for d in &report.diagnostics {
                writeln!(stderr, "{d}").unwrap();
            }
            Output {
                code: report.code,
                stdout,
                stderr,
            }
        }
        Err(f) => {
            let stdout = if json {
                let body = json!({
                    "command": name,
                    "input": Value::Null,
                    "result": Value::Null,
                    "diagnostics": [f.message.clone()],
                });
                serde_json::to_string_pretty(&body).expect("serializable") + "\n"
            } else {
                String::new()
            };
            Output {
                code: f.code,
                stdout,
                stderr: format!("error: {}\n", f.message),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Augs { .. } => "augs",
        Command::Linearize { .. } => "linearize",
        Command::Homology { .. } => "homology",
        Command::Pcpoly { .. } => "pcpoly",
        Command::Duality { .. } => "duality",
        Command::Arnold { .. } => "arnold",
        Command::Spin { .. } => "spin",
        Command::Twocopy { .. } => "twocopy",
        Command::Solve { .. } => "solve",
    }
}

fn input_of(c: &Command) -> Option<&str> {
    match c {
        Command::Validate { input }
        | Command::Augs { input }
        | Command::Linearize { input }
        | Command::Homology { input }
        | Command::Pcpoly { input }
        | Command::Duality { input }
        | Command::Arnold { input }
        | Command::Spin { input, .. }
        | Command::Twocopy { input }
        | Command::Solve { input } => input.as_deref(),
    }
}

fn params(o: &Options) -> FixtureParams {
    let d = FixtureParams::default();
    FixtureParams {
        n: o.n.unwrap_or(d.n),
        p: o.p.unwrap_or(d.p),
        k: o.k.unwrap_or(d.k),
    }
}

fn load_file(path: &Path) -> Res<Loaded> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let at = |e: Error| match e {
        Error::Parse(p) => usage(format!("{}: {p}", path.display())),
        other => usage(format!("{}: {other}", path.display())),
    };
    match path.extension().and_then(|e| e.to_str()) {
        Some("inst") => Ok(Loaded::Instance(text::parse_instance(&body).map_err(at)?)),
        Some("twocopy") => Ok(Loaded::TwoCopy(text::parse_two_copy(&body).map_err(at)?)),
        _ => {
            let doc = text::parse_dga_document(&body).map_err(|e| at(e.into()))?;
            Ok(Loaded::Dga {
                dga: doc.dga.clone(),
                betti: doc.betti_map(),
                instance: None,
                document: Some(doc),
            })
        }
    }
}

fn fixture_file(name: &str) -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os(FIXTURES_ENV)?);
    ["dga", "inst", "twocopy"]
        .iter()
        .map(|ext| dir.join(format!("{name}.{ext}")))
        .find(|p| p.is_file())
}

fn load_fixture(name: &str, opts: &Options) -> Res<Source> {
    if let Some(path) = fixture_file(name) {
        return Ok(Source {
            label: path.display().to_string(),
            loaded: load_file(&path)?,
        });
    }
    let f = catalog::fixture(name, params(opts)).map_err(|e| usage(e.to_string()))?;
    let loaded = match f.payload {
        Payload::Dga(dga) => Loaded::Dga {
            betti: f.instance.as_ref().map(|i| i.betti.clone()),
            dga,
            instance: f.instance,
            document: None,
        },
        Payload::Instance(i) => Loaded::Instance(i),
        Payload::TwoCopy(t) => Loaded::TwoCopy(t),
    };
    Ok(Source {
        label: format!("fixture:{name}"),
        loaded,
    })
}

fn load(cli: &Cli) -> Res<Option<Source>> {
    let positional = input_of(&cli.command);
    match (positional, &cli.opts.fixture) {
        (Some(_), Some(_)) => Err(usage("give either a file or --fixture, not both")),
        (None, Some(name)) => load_fixture(name, &cli.opts).map(Some),
        (Some(p), None) => {
            let path = Path::new(p);
            if path.exists() {
                Ok(Some(Source {
                    label: p.to_string(),
                    loaded: load_file(path)?,
                }))
            } else if catalog::FIXTURE_NAMES.contains(&p) || fixture_file(p).is_some() {
                load_fixture(p, &cli.opts).map(Some)
            } else {
                Err(usage(format!("no such file or fixture `{p}`")))
            }
        }
        (None, None) => Ok(None),
    }
}

fn dispatch(cli: &Cli) -> Res<(Value, Report)> {
    let opts = &cli.opts;
    let ring = opts
        .ring
        .as_deref()
        .map(|r| r.parse::<CoefficientRing>())
        .transpose()?;
    let source = load(cli)?;
    let (label, mut loaded) = match source {
        Some(s) => (s.label, Some(s.loaded)),
        None => (String::new(), None),
    };
    let mut notes = Vec::new();
    if let (Some(r), Some(l)) = (ring, loaded.as_mut()) {
        match l {
            Loaded::Dga { dga, .. } => *dga = dga.change_ring(r)?,
            _ => notes.push(format!("--ring {r} applies to DGA inputs only; ignored")),
        }
    }
    let mut input = json!({ "source": label });
    if let Some(Loaded::Dga { dga, .. }) = &loaded {
        input["ring"] = json!(dga.ring());
        input["grading"] = json!(dga.grading().to_string());
        input["generators"] = json!(dga.len());
    }
    if let Some(seed) = opts.seed {
        input["seed"] = json!(seed);
    }
    let mut report = match (&cli.command, loaded) {
        (Command::Validate { .. }, Some(l)) => validate(l)?,
        (Command::Augs { .. }, Some(Loaded::Dga { dga, .. })) => augs(&dga)?,
        (Command::Linearize { .. }, Some(Loaded::Dga { dga, .. })) => linearize_cmd(&dga)?,
        (Command::Homology { .. }, Some(Loaded::Dga { dga, .. })) => {
            let (eps, c) = linearized(&dga)?;
            homology(&c, Some(&eps))?
        }
        (Command::Homology { .. }, None) => homology(&random_complex(opts)?, None)?,
        (Command::Pcpoly { .. }, Some(Loaded::Dga { dga, .. })) => pcpoly(&dga)?,
        (Command::Duality { .. }, Some(Loaded::TwoCopy(t))) | (Command::Twocopy { .. }, Some(Loaded::TwoCopy(t))) => {
            twocopy(&t)?
        }
        (Command::Duality { .. } | Command::Twocopy { .. }, None) => {
            let seed = seed_or_usage(opts)?;
            twocopy(&random::random_two_copy(&mut random::rng(seed), TwoCopyShape::default())?)?
        }
        (Command::Duality { .. }, Some(l)) => duality(&instance_of(l)?)?,
        (Command::Arnold { .. }, Some(l)) => arnold(&instance_of(l)?)?,
        (Command::Solve { .. }, Some(l)) => solve(&instance_of(l)?, &opts.constraints)?,
        (Command::Arnold { .. } | Command::Solve { .. }, None) => {
            let seed = seed_or_usage(opts)?;
            let inst = random::random_instance(&mut random::rng(seed));
            if matches!(cli.command, Command::Arnold { .. }) {
                arnold(&inst)?
            } else {
                solve(&inst, &opts.constraints)?
            }
        }
        (Command::Spin { times, .. }, Some(Loaded::Dga { dga, .. })) => spin(&linearized(&dga)?.1, *times)?,
        (Command::Spin { times, .. }, None) => spin(&random_complex(opts)?, *times)?,
        (cmd, Some(_)) => {
            return Err(usage(format!(
                "`{}` does not accept this kind of input",
                command_name(cmd)
            )))
        }
        (cmd, None) => {
            return Err(usage(format!(
                "`{}` needs an input file or --fixture",
                command_name(cmd)
            )))
        }
    };
    notes.append(&mut report.diagnostics);
    report.diagnostics = notes;
    Ok((input, report))
}

fn seed_or_usage(opts: &Options) -> Res<u64> {
    opts.seed
        .ok_or_else(|| usage("needs an input file, --fixture or --seed"))
}

fn random_complex(opts: &Options) -> Res<BasedChainComplex> {
    let seed = seed_or_usage(opts)?;
    Ok(random::random_complex(
        &mut random::rng(seed),
        CoefficientRing::Z2,
        ComplexShape::default(),
    ))
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    out.push_str(&line(headers.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn validate(l: Loaded) -> Res<Report> {
    match l {
        Loaded::Dga { dga, document, .. } => {
            let report = dga.validate();
            let mut diagnostics = Vec::new();
            for issue in &report.issues {
                let line = document
                    .as_ref()
                    .and_then(|d| d.line_of(&issue.generator))
                    .map(|l| format!("line {l}: "))
                    .unwrap_or_default();
                for t in &issue.degree_violations {
                    diagnostics.push(format!(
                        "{line}d {}: term `{}` has degree {}, expected {}",
                        issue.generator, t.term, t.degree, issue.expected_degree
                    ));
                }
                if let Some(sq) = &issue.d_squared {
                    diagnostics.push(format!("{line}d(d {}) = {sq}, not zero", issue.generator));
                }
            }
            let valid = report.is_valid();
            let human = if valid {
                format!("valid: {} generators, good = {}\n", dga.len(), dga.is_good())
            } else {
                format!("invalid: {} generator(s) with problems\n", report.issues.len())
            };
            let result = json!({ "valid": valid, "good": dga.is_good(), "issues": report.issues });
            let mut r = Report::ok(result, human).failing_if(!valid);
            r.diagnostics = diagnostics;
            Ok(r)
        }
        Loaded::Instance(i) => {
            let outcome = i.validate();
            let valid = outcome.is_ok();
            let mut r = Report::ok(
                json!({ "valid": valid }),
                if valid { "valid\n".into() } else { "invalid\n".into() },
            )
            .failing_if(!valid);
            if let Err(e) = outcome {
                r.diagnostics.push(e.to_string());
            }
            Ok(r)
        }
        Loaded::TwoCopy(t) => {
            let rel = t.verify_relations();
            let valid = rel.all_pass();
            let mut r = Report::ok(
                json!({ "valid": valid, "relations": rel }),
                relations_table(&rel),
            )
            .failing_if(!valid);
            for f in rel.failing() {
                r.diagnostics.push(format!("relation fails: {f}"));
            }
            Ok(r)
        }
    }
}

fn augs(dga: &Dga) -> Res<Report> {
    let all = enumerate_augmentations(dga)?;
    let rows: Vec<Vec<String>> = all
        .iter()
        .enumerate()
        .map(|(i, a)| vec![i.to_string(), a.support().join(" ")])
        .collect();
    let human = format!("{} augmentation(s)\n{}", all.len(), table(&["#", "support"], &rows));
    let result = json!({ "count": all.len(), "augmentations": all });
    Ok(Report::ok(result, human).failing_if(all.is_empty()))
}

/// The first augmentation over a finite field, otherwise zero when the DGA is good.
fn linearized(dga: &Dga) -> Res<(Augmentation, BasedChainComplex)> {
    if dga.ring().finite_field_order().is_some() && enumerate_augmentations(dga)?.is_empty() {
        return Err(Failure {
            code: 1,
            message: "the DGA has no augmentation".to_string(),
        });
    }
    let eps = catalog::default_augmentation(dga)?;
    let c = linearize(dga, &eps)?;
    Ok((eps, c))
}

fn linearize_cmd(dga: &Dga) -> Res<Report> {
    let (eps, c) = linearized(dga)?;
    let boundary = describe_boundary(&c);
    let rows: Vec<Vec<String>> = c
        .basis()
        .iter()
        .map(|b| vec![b.label.clone(), b.degree.to_string(), boundary[&b.label].clone()])
        .collect();
    let human = format!(
        "augmentation support: {}\n{}",
        eps.support().join(" "),
        table(&["generator", "degree", "d1"], &rows)
    );
    let basis: Vec<Value> = c
        .basis()
        .iter()
        .map(|b| json!({ "label": b.label, "degree": b.degree }))
        .collect();
    let result = json!({ "augmentation": eps, "basis": basis, "boundary": boundary });
    Ok(Report::ok(result, human))
}

fn homology(c: &BasedChainComplex, eps: Option<&Augmentation>) -> Res<Report> {
    let h = c.homology()?;
    let rows: Vec<Vec<String>> = h
        .groups
        .iter()
        .map(|(k, g)| {
            let torsion: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
            vec![k.to_string(), g.rank.to_string(), torsion.join(" + ")]
        })
        .collect();
    let mut human = String::new();
    if let Some(e) = eps {
        writeln!(human, "augmentation support: {}", e.support().join(" ")).unwrap();
    }
    human.push_str(&table(&["degree", "rank", "torsion"], &rows));
    let mut result = json!({ "ring": h.ring, "dims": h.dims(), "groups": h.groups });
    if let Some(e) = eps {
        result["augmentation"] = json!(e);
    }
    Ok(Report::ok(result, human))
}

fn pcpoly(dga: &Dga) -> Res<Report> {
    let (_, c) = linearized(dga)?;
    let p = poincare_chekanov(&c.homology()?)?;
    let sphere = dga.ambient_dim().map(|n| sphere_duality_check(&p, n));
    let mut human = format!("P(t) = {p}\n");
    if let (Some(n), Some(s)) = (dga.ambient_dim(), sphere) {
        writeln!(human, "sphere duality with n = {n}: {}", if s { "holds" } else { "fails" }).unwrap();
    }
    Ok(Report::ok(json!({ "polynomial": p, "sphere_duality": sphere }), human))
}

fn instance_of(l: Loaded) -> Res<DualityInstance> {
    match l {
        Loaded::Instance(i) => Ok(i),
        Loaded::Dga { instance: Some(i), .. } => Ok(i),
        Loaded::Dga { dga, betti, .. } => {
            let n = dga
                .ambient_dim()
                .ok_or_else(|| usage("the DGA file needs a `dim` line"))?;
            let betti = betti.ok_or_else(|| usage("the DGA file needs a `betti` line"))?;
            let mut chords = BTreeMap::new();
            for g in dga.generators().iter() {
                *chords.entry(g.degree).or_insert(0) += 1;
            }
            let mut inst = DualityInstance::new(n, betti)
                .with_chords(chords)
                .with_flags(dga.is_good(), dga.ring() == CoefficientRing::Z2);
            if let Ok((_, c)) = linearized(&dga) {
                inst = inst.with_homology(c.homology_field()?.dims());
            }
            inst.validate()?;
            Ok(inst)
        }
        Loaded::TwoCopy(_) => Err(usage("two-copy data has no chord counts")),
    }
}

fn fmt_map(m: &BTreeMap<i64, usize>) -> String {
    if m.is_empty() {
        return "-".to_string();
    }
    m.iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn duality(inst: &DualityInstance) -> Res<Report> {
    let sols: Vec<RSolution> = feasibility_solve(inst)?;
    let reports: Vec<Value> = sols
        .iter()
        .map(|s| {
            let m = manifold_class_report(s, inst);
            json!({ "r": s.r, "nonmanifold": s.nonmanifold, "holds": m.holds(), "manifold_classes": m })
        })
        .collect();
    let rows: Vec<Vec<String>> = sols
        .iter()
        .enumerate()
        .map(|(i, s)| vec![i.to_string(), fmt_map(&s.r), fmt_map(&s.nonmanifold)])
        .collect();
    let human = format!(
        "{} feasible rank vector(s)\n{}",
        sols.len(),
        table(&["#", "r (manifold classes)", "non-manifold"], &rows)
    );
    Ok(Report::ok(json!({ "solutions": reports }), human).failing_if(sols.is_empty()))
}

fn arnold(inst: &DualityInstance) -> Res<Report> {
    let rows = arnold_check(inst)?;
    let holds = rows.iter().all(|r| r.holds);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.chords.to_string(),
                r.betti.to_string(),
                if r.holds { "ok" } else { "FAILS" }.to_string(),
            ]
        })
        .collect();
    let human = table(&["m", "c_m + c_(n-m)", "b_m", ""], &cells);
    Ok(Report::ok(json!({ "holds": holds, "rows": rows }), human).failing_if(!holds))
}

fn solve(inst: &DualityInstance, constraints: &[(i64, usize)]) -> Res<Report> {
    let polys = solve_poincare(inst, constraints)?;
    let strings: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    let mut human = format!("{} polynomial(s)\n", strings.len());
    for s in &strings {
        writeln!(human, "  {s}").unwrap();
    }
    Ok(Report::ok(json!(strings), human).failing_if(strings.is_empty()))
}

fn spin(c: &BasedChainComplex, times: usize) -> Res<Report> {
    let mut current = c.clone();
    let mut kunneth = true;
    for _ in 0..times {
        kunneth &= kunneth_check(&current)?.holds;
        current = spin_complex(&current)?.into_complex();
    }
    let dims = current.homology_field()?.dims();
    let rows: Vec<Vec<String>> = dims.iter().map(|(k, d)| vec![k.to_string(), d.to_string()]).collect();
    let human = format!(
        "spun {times} time(s), {} generators, Kunneth {}\n{}",
        current.len(),
        if kunneth { "holds" } else { "fails" },
        table(&["degree", "dim"], &rows)
    );
    let result = json!({ "times": times, "generators": current.len(), "dims": dims, "kunneth": kunneth });
    Ok(Report::ok(result, human).failing_if(!kunneth))
}

fn relations_table(rel: &lch_core::two_copy::RelationReport) -> String {
    let rows: Vec<Vec<String>> = rel
        .relations
        .iter()
        .map(|r| {
            vec![
                r.relation.clone(),
                if r.holds() { "ok".to_string() } else { format!("{} failing entries", r.failures.len()) },
            ]
        })
        .collect();
    table(&["relation", "status"], &rows)
}

fn twocopy(t: &TwoCopyData) -> Res<Report> {
    let rel = t.verify_relations();
    if !rel.all_pass() {
        let mut r = Report::ok(json!({ "relations": rel }), relations_table(&rel)).failing_if(true);
        for f in rel.failing() {
            r.diagnostics.push(format!("relation fails: {f}"));
        }
        return Ok(r);
    }
    let d = duality_check(t)?;
    let mut human = relations_table(&d.relations);
    writeln!(human, "\nassembled complex acyclic: {}", d.acyclic).unwrap();
    writeln!(human, "exact sequence: {}", if d.exact { "exact" } else { "NOT exact" }).unwrap();
    writeln!(human, "rho ranks r_k: {}\n", fmt_map(&d.r)).unwrap();
    let rows: Vec<Vec<String>> = d
        .sequence
        .iter()
        .map(|s| {
            [s.degree, s.c_dim as i64, s.qc_dim as i64, s.q_dim as i64, s.inclusion_rank as i64, s.projection_rank as i64, s.rho_rank as i64]
                .iter()
                .map(|v| v.to_string())
                .collect()
        })
        .collect();
    human.push_str(&table(&["k", "H(C)", "H(QC)", "H(Q)", "incl", "proj", "rho"], &rows));
    if d.acyclic {
        let iso: Vec<Vec<String>> = d
            .isomorphism
            .iter()
            .map(|r| vec![r.degree.to_string(), r.qc_dim.to_string(), r.p_dim.to_string(), r.rank.to_string()])
            .collect();
        human.push('\n');
        human.push_str(&table(&["k", "H_k(QC)", "H_(k-1)(P)", "rank"], &iso));
    }
    let ok = d.acyclic && d.exact && d.isomorphism_holds();
    let mut r = Report::ok(to_json(&d), human).failing_if(!ok);
    r.diagnostics = d.notes.clone();
    if !d.acyclic {
        r.diagnostics.push("the assembled complex is not acyclic: duality fails".to_string());
    }
    Ok(r)
}
