use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use canforge::algebra::Field;
use canforge::canonical::{canonical_ideal_with, curve_context, CanonicalOptions};
use canforge::format::{magma_script, text_generators, GeneratorFile};
use canforge::laurent::{check_nondegenerate, parse_laurent, LaurentPoly, NondegVerdict};
use canforge::lattice::{classify, convex_hull, parse_polygon_lines, LatticePoint, LatticePolygon};
use canforge::toric::toric_ideal;
use canforge::verify::{sample_curve_points, verify_canonical, verify_toric, CheckReport};
use canforge::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Toric and canonical ideals of curves given by non-degenerate Laurent polynomials.
#[derive(Parser, Debug)]
#[command(name = "canforge", version)]
struct Cli {
    /// Coefficient field: `q` or a prime such as `fp(10007)`.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Seed for sampling; falls back to CANFORGE_SEED.
    #[arg(long, global = true, env = "CANFORGE_SEED", default_value_t = 0)]
    seed: u64,

    /// Proceed when the non-degeneracy check is inconclusive.
    #[arg(long, global = true)]
    assume_nondegenerate: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Cas,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice point counts, class and interior hull of each polygon.
    PolygonInfo(InputArgs),
    /// Minimal binomial generators of the toric surface ideal of a polygon.
    ToricIdeal(InputArgs),
    /// Genus of the curve and the generator case it falls in.
    Genus(InputArgs),
    /// Non-degeneracy with respect to the Newton polygon.
    CheckNondegenerate(InputArgs),
    /// Generators of the canonical ideal.
    CanonicalIdeal(InputArgs),
    /// Re-check a JSON generator file, against a curve if one is given.
    Verify {
        /// JSON file written by `toric-ideal` or `canonical-ideal --output json`.
        #[arg(long)]
        generators: PathBuf,
        /// Prime used for point sampling.
        #[arg(long, default_value_t = 10007)]
        prime: u64,
        #[arg(long, default_value_t = 60)]
        samples: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Torus points of the curve over a prime field.
    SamplePoints {
        #[arg(long, default_value_t = 10007)]
        prime: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args, Debug, Default)]
struct InputArgs {
    /// Inline input: a polynomial or a polygon vertex list.
    input: Option<String>,
    /// Inline input, same as the positional argument.
    #[arg(long, conflicts_with_all = ["input", "file"])]
    poly: Option<String>,
    /// Read input from a file (`-` for standard input).
    #[arg(long, conflicts_with = "input")]
    file: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Usage(String),
    Verification(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

impl InputArgs {
    fn provided(&self) -> bool {
        self.input.is_some() || self.poly.is_some() || self.file.is_some()
    }

    fn text(&self) -> Result<String, Failure> {
        if let Some(s) = self.input.as_ref().or(self.poly.as_ref()) {
            return Ok(s.clone());
        }
        let mut buf = String::new();
        match &self.file {
            Some(path) if path.as_os_str() != "-" => {
                buf = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            }
            _ => {
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            }
        }
        Ok(buf)
    }

    fn polygons(&self) -> Result<Vec<LatticePolygon>, Failure> {
        let polys = parse_polygon_lines(&self.text()?)?;
        if polys.is_empty() {
            return Err(Failure::Usage("no polygon given".into()));
        }
        Ok(polys)
    }

    fn polygon(&self) -> Result<LatticePolygon, Failure> {
        let mut polys = self.polygons()?;
        if polys.len() > 1 {
            return Err(Failure::Usage(format!("expected one polygon, got {}", polys.len())));
        }
        Ok(polys.remove(0))
    }

    fn laurent(&self, field: Field) -> Result<LaurentPoly, Failure> {
        let text = self.text()?;
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        match lines.as_slice() {
            [(idx, line)] => parse_laurent(line, field).map_err(|e| e.at_line(idx + 1).into()),
            [] => Err(Failure::Usage("no polynomial given".into())),
            _ => Err(Failure::Usage("expected a single polynomial line".into())),
        }
    }
}

fn points_text(points: &[LatticePoint]) -> String {
    if points.is_empty() {
        return "empty".into();
    }
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn pairs(points: &[LatticePoint]) -> serde_json::Value {
    json!(points.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn no_cas(cmd: &str) -> Failure {
    Failure::Usage(format!("--output cas is only available for generator sets, not {cmd}"))
}

fn polygon_info(cli: &Cli, input: &InputArgs) -> Outcome {
    let polys = input.polygons()?;
    let mut text = String::new();
    let mut items = Vec::new();
    for poly in &polys {
        let class = if poly.is_full() {
            Some(classify(poly)?)
        } else {
            None
        };
        let inner = poly.interior_hull();
        let ehrhart: Vec<i64> = (1..=3).map(|k| poly.ehrhart_count(k)).collect();
        if !text.is_empty() {
            text.push('\n');
        }
        writeln!(text, "vertices: {}", points_text(poly.vertices())).unwrap();
        writeln!(text, "dimension: {}", poly.dimension().as_i8()).unwrap();
        writeln!(text, "lattice points: {}", poly.lattice_point_count()).unwrap();
        writeln!(text, "boundary points: {}", poly.boundary_count()).unwrap();
        writeln!(text, "interior points: {}", poly.interior_count()).unwrap();
        writeln!(text, "doubled area: {}", poly.doubled_area()).unwrap();
        writeln!(text, "ehrhart 1..3: {ehrhart:?}").unwrap();
        if let Some(c) = &class {
            writeln!(text, "class: {c}").unwrap();
        }
        writeln!(text, "interior hull: {}", points_text(inner.vertices())).unwrap();
        items.push(json!({
            "vertices": pairs(poly.vertices()),
            "dimension": poly.dimension().as_i8(),
            "lattice_points": poly.lattice_point_count(),
            "boundary_points": poly.boundary_count(),
            "interior_points": poly.interior_count(),
            "doubled_area": poly.doubled_area(),
            "ehrhart": ehrhart,
            "class": class.as_ref().map(|c| c.tag()),
            "interior_hull": pairs(inner.vertices()),
        }));
    }
    match cli.output {
        Output::Text => Ok(text),
        Output::Json => Ok(pretty(&json!(items))),
        Output::Cas => Err(no_cas("polygon-info")),
    }
}

fn toric(cli: &Cli, input: &InputArgs, field: Field) -> Outcome {
    let poly = input.polygon()?;
    let gens = toric_ideal(&poly, field)?;
    match cli.output {
        Output::Text => {
            let mut out = String::new();
            writeln!(out, "polygon: {}", points_text(poly.vertices())).unwrap();
            writeln!(out, "class: {}", gens.class).unwrap();
            writeln!(out, "quadrics: {}", gens.quadrics.len()).unwrap();
            writeln!(out, "cubics: {}", gens.cubics.len()).unwrap();
            out.push_str(&text_generators(gens.all()));
            Ok(out)
        }
        Output::Json => Ok(GeneratorFile::from_toric(&gens, field).to_json() + "\n"),
        Output::Cas => Ok(magma_script(field, &gens.ambient(), gens.all())),
    }
}

fn genus_cmd(cli: &Cli, input: &InputArgs, field: Field) -> Outcome {
    let f = input.laurent(field)?;
    let delta = f.newton_polygon()?;
    let g = delta.interior_count();
    if g == 0 {
        return Err(Error::GenusTooSmall {
            genus: 0,
            dimension: delta.interior_hull().dimension().as_i8(),
        }
        .into());
    }
    let (case, note) = match curve_context(&f) {
        Ok(ctx) => (Some(ctx.case.tag()), None),
        Err(e) => (None, Some(e.reason_code())),
    };
    match cli.output {
        Output::Text => {
            let mut out = format!("genus: {g}\n");
            match (case, note) {
                (Some(c), _) => writeln!(out, "case: {c}").unwrap(),
                (None, Some(n)) => writeln!(out, "case: none ({n})").unwrap(),
                _ => {}
            }
            Ok(out)
        }
        Output::Json => Ok(pretty(&json!({ "genus": g, "case": case, "no_case_reason": note }))),
        Output::Cas => Err(no_cas("genus")),
    }
}

fn nondeg(cli: &Cli, input: &InputArgs, field: Field) -> Outcome {
    let f = input.laurent(field)?;
    let verdict = check_nondegenerate(&f)?;
    let body = match cli.output {
        Output::Text => format!("{verdict}\n"),
        Output::Json => {
            let mut v = json!({ "status": verdict.status() });
            match &verdict {
                NondegVerdict::NonDegenerate => {}
                NondegVerdict::Degenerate { face, witness } => {
                    v["face"] = json!(face.to_string());
                    v["witness"] = json!(witness);
                }
                NondegVerdict::Inconclusive { face, residual } => {
                    v["face"] = json!(face.to_string());
                    v["residual"] = json!(residual.to_string());
                }
            }
            pretty(&v)
        }
        Output::Cas => return Err(no_cas("check-nondegenerate")),
    };
    let refused = match &verdict {
        NondegVerdict::NonDegenerate => false,
        NondegVerdict::Degenerate { .. } => true,
        NondegVerdict::Inconclusive { .. } => !cli.assume_nondegenerate,
    };
    if refused {
        print!("{body}");
        Err(Failure::Refused(verdict.status().into()))
    } else {
        Ok(body)
    }
}

fn canonical(cli: &Cli, input: &InputArgs, field: Field) -> Outcome {
    let f = input.laurent(field)?;
    let opts = CanonicalOptions {
        assume_nondegenerate: cli.assume_nondegenerate,
    };
    let gens = canonical_ideal_with(&f, opts)?;
    match cli.output {
        Output::Text => {
            let mut out = String::new();
            writeln!(out, "genus: {}", gens.genus()).unwrap();
            writeln!(out, "case: {}", gens.case()).unwrap();
            writeln!(out, "quadrics: {}", gens.counts.quadrics).unwrap();
            writeln!(out, "cubics: {}", gens.counts.cubics).unwrap();
            writeln!(out, "quartics: {}", gens.counts.quartics).unwrap();
            let status = if gens.chi_identity_checked { "confirmed" } else { "not checked" };
            writeln!(out, "chi identity: {status} for {} forms", gens.extra.len()).unwrap();
            out.push_str(&text_generators(gens.all().iter()));
            Ok(out)
        }
        Output::Json => Ok(GeneratorFile::from_canonical(&gens).to_json() + "\n"),
        Output::Cas => Ok(magma_script(field, &gens.context.ambient(), gens.all().iter())),
    }
}

fn verify_cmd(cli: &Cli, path: &PathBuf, prime: u64, samples: usize, input: &InputArgs) -> Outcome {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = GeneratorFile::parse(&src)?;
    let field = file.field()?;
    let forms = file.forms()?;
    let reports: Vec<CheckReport> = if input.provided() {
        let f = input.laurent(field)?;
        let ctx = curve_context(&f)?;
        if ctx.ambient() != file.ambient() {
            return Err(Failure::Verification(
                "generator file ambient points differ from the interior points of the Newton polygon".into(),
            ));
        }
        let p = match field {
            Field::Prime(q) => q,
            Field::Rationals => prime,
        };
        verify_canonical(&f, ctx.genus, &forms, p, samples, cli.seed)?
    } else {
        let poly = convex_hull(&file.ambient());
        verify_toric(&poly, &forms)?
    };
    let body = match cli.output {
        Output::Json => pretty(&json!(reports)),
        Output::Text => {
            let mut out = String::new();
            for r in &reports {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{verdict} {}: expected {} computed {}", r.check, r.expected, r.computed).unwrap();
            }
            writeln!(out, "digest: {}", reports.first().map_or("", |r| r.inputs_digest.as_str())).unwrap();
            out
        }
        Output::Cas => return Err(no_cas("verify")),
    };
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
    if failed.is_empty() {
        Ok(body)
    } else {
        print!("{body}");
        Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

fn sample_cmd(cli: &Cli, prime: u64, count: usize, input: &InputArgs, field: Field) -> Outcome {
    let f = input.laurent(field)?;
    let set = sample_curve_points(&f, prime, count, cli.seed)?;
    if let Some(w) = &set.warning {
        eprintln!("warning: {w}");
    }
    match cli.output {
        Output::Text => {
            let mut out = String::new();
            for pt in &set.points {
                writeln!(out, "({}, {})", pt.x(), pt.y()).unwrap();
            }
            Ok(out)
        }
        Output::Json => Ok(pretty(&serde_json::to_value(&set).expect("sample sets serialize"))),
        Output::Cas => Err(no_cas("sample-points")),
    }
}

fn run(cli: &Cli) -> Outcome {
    let field: Field = cli.field.parse()?;
    match &cli.command {
        Command::PolygonInfo(input) => polygon_info(cli, input),
        Command::ToricIdeal(input) => toric(cli, input, field),
        Command::Genus(input) => genus_cmd(cli, input, field),
        Command::CheckNondegenerate(input) => nondeg(cli, input, field),
        Command::CanonicalIdeal(input) => canonical(cli, input, field),
        Command::Verify {
            generators,
            prime,
            samples,
            input,
        } => verify_cmd(cli, generators, *prime, *samples, input),
        Command::SamplePoints { prime, count, input } => sample_cmd(cli, *prime, *count, input, field),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    eprintln!("Time: {:.3} s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => {
            let code = if e.is_refusal() { 2 } else { 1 };
            let kind = if e.is_refusal() { "refused" } else { "internal error" };
            if cli.output == Output::Json {
                println!("{}", json!({ "status": kind, "reason": e.reason_code(), "message": e.to_string() }));
            }
            eprintln!("{kind} [{}]: {e}", e.reason_code());
            ExitCode::from(code)
        }
        Err(Failure::Refused(reason)) => {
            eprintln!("refused [{reason}]");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error [usage]: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
