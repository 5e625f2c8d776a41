//! The `alltoplab` command line.
//!
//! Exit codes: 0 when the requested check passes, 1 when it fails, 2 on
//! input errors. Results go to stdout and are deterministic; timings go to
//! stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::families;
use crate::field::{Field, FieldElement, FieldSpec};
use crate::fn_algebra::{
    alltop_witness, delta_planarity_profile, ea_inequiv_to_cube, is_additive, is_do_shape,
    permutation_witness, planar_witness, CubeEquivalence, PolyFn,
};
use crate::mub::{
    self, build_alltop_mubs, build_planar_mubs, correlation_csv, correlation_report,
    verify_mub_collection, verify_mub_collection_sampled, CorrelationReport, MubExport,
    MubVerification,
};
use crate::search::{self, binomial_cost, search_binomials, search_monomials, SearchLimits};

/// Verification of planar and Alltop functions, MUB construction and
/// correlation analysis over finite fields.
#[derive(Debug, Parser)]
#[command(name = "alltoplab", version)]
struct Cli {
    /// Field as p^r (or p), e.g. 7^2.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Modulus coefficients c0,c1,...,cr, lowest first; defaults to the
    /// built-in table.
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// JSON field spec {"p":..,"r":..,"modulus":[..]}.
    #[arg(long, global = true, conflicts_with_all = ["field", "modulus"])]
    field_file: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test one function for a property.
    Verify {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, value_enum)]
        property: VerifyProperty,
    },
    /// Build, verify and export a complete set of MUBs.
    GenMubs {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        out: PathBuf,
        /// Check every cross-basis pair even for large q.
        #[arg(long, conflicts_with = "samples")]
        full: bool,
        /// Number of sampled cross-basis pairs when q > 25.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Correlation report for a MUB export or signal file, as CSV.
    Analyze {
        file: PathBuf,
        /// Row name (default: file stem).
        #[arg(long)]
        name: Option<String>,
    },
    /// Exhaustive search over monomials (or binomials).
    Search {
        #[arg(long, value_enum)]
        property: SearchProperty,
        #[arg(long, default_value_t = 2)]
        min: u64,
        /// Defaults to q - 2.
        #[arg(long)]
        max: Option<u64>,
        #[arg(long)]
        allow_large: bool,
        /// Search x^e1 + c*x^e2 instead of monomials.
        #[arg(long)]
        binomial: bool,
    },
    /// Known families and their certificates.
    #[command(subcommand)]
    Families(FamilyCommand),
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// x^(p^r+2) on F_{p^(2r)}.
    NewAlltop(NewAlltopArgs),
    /// The planar binomial 2a*x^(p^r+1) + a^(p^r)*x^2 on --field.
    PiA {
        /// Index of a in --field.
        #[arg(long)]
        a: u32,
    },
    /// Checks the square-root-of--3 identity for Π_a on --field.
    NoteIdentity {
        /// Index of a; all nonzero a when omitted.
        #[arg(long)]
        a: Option<u32>,
    },
}

#[derive(Debug, Args)]
struct NewAlltopArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    r: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyProperty {
    Planar,
    Alltop,
    Additive,
    Permutation,
    DoShape,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Planar,
    Alltop,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SearchProperty {
    Planar,
    Alltop,
}

/// Full cross-pair verification up to this q; sampled above.
const FULL_CHECK_MAX_Q: u32 = 25;
const DEFAULT_SAMPLES: usize = 100_000;

enum Failure {
    Input(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<bool, Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn field(&self) -> Result<Field, Failure> {
        if let Some(path) = &self.cli.field_file {
            let text = std::fs::read_to_string(path)?;
            let spec: FieldSpec = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            return Ok(Field::new(spec));
        }
        let text = self
            .cli
            .field
            .as_deref()
            .ok_or_else(|| Failure::Input("--field (or --field-file) is required".into()))?;
        let (p, r) = parse_field(text)?;
        match &self.cli.modulus {
            Some(m) => Ok(Field::new(FieldSpec::new(p, r, parse_modulus(m)?)?)),
            None => Ok(Field::with_default_modulus(p, r)?),
        }
    }

    fn timing(&mut self, label: &str, start: Instant) -> std::io::Result<()> {
        writeln!(self.err, "{label}: {:.2?}", start.elapsed())
    }

    fn emit_json(&mut self, v: &Value) -> std::io::Result<()> {
        writeln!(
            self.out,
            "{}",
            serde_json::to_string_pretty(v).expect("json value")
        )
    }
}

fn parse_field(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Input(format!("invalid field {text:?}: expected p^r"));
    let (p, r) = match text.split_once('^') {
        Some((p, r)) => (p.trim(), r.trim()),
        None => (text.trim(), "1"),
    };
    Ok((p.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?))
}

fn parse_modulus(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("invalid modulus coefficient {c:?}")))
        })
        .collect()
}

fn element_json(e: &FieldElement) -> Value {
    json!({ "index": e.index(), "coeffs": e.coeffs() })
}

fn spec_json(field: &Field) -> Value {
    serde_json::to_value(field.spec()).expect("spec serializes")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        out,
        err,
    };
    let result = pool.install(|| dispatch(&mut ctx));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

fn dispatch(ctx: &mut Ctx) -> Outcome {
    match &ctx.cli.command {
        Command::Verify { function, property } => verify(ctx, function, *property),
        Command::GenMubs {
            construction,
            function,
            out,
            full,
            samples,
            seed,
        } => gen_mubs(ctx, *construction, function, out, *full, *samples, *seed),
        Command::Analyze { file, name } => analyze(ctx, file, name.as_deref()),
        Command::Search {
            property,
            min,
            max,
            allow_large,
            binomial,
        } => search_cmd(ctx, *property, *min, *max, *allow_large, *binomial),
        Command::Families(cmd) => families_cmd(ctx, cmd),
    }
}

fn verify(ctx: &mut Ctx, literal: &str, property: VerifyProperty) -> Outcome {
    let field = ctx.field()?;
    let f = PolyFn::parse(&field, literal)?;
    let start = Instant::now();
    // (passed, text witness, json witness)
    let (pass, text, witness): (bool, String, Value) = match property {
        VerifyProperty::Planar => match planar_witness(&f) {
            None => (true, String::new(), Value::Null),
            Some(w) => (
                false,
                format!(
                    "counterexample: a = {}, x = {}, y = {} (Δ_a(x) = Δ_a(y))",
                    w.a, w.x, w.y
                ),
                json!({ "a": element_json(&w.a), "x": element_json(&w.x), "y": element_json(&w.y) }),
            ),
        },
        VerifyProperty::Alltop => match alltop_witness(&f)? {
            None => (true, String::new(), Value::Null),
            Some(w) => (
                false,
                format!(
                    "counterexample: a = {} (Δ_a not planar: direction {}, x = {}, y = {})",
                    w.a, w.planar.a, w.planar.x, w.planar.y
                ),
                json!({
                    "a": element_json(&w.a),
                    "planar": {
                        "a": element_json(&w.planar.a),
                        "x": element_json(&w.planar.x),
                        "y": element_json(&w.planar.y),
                    }
                }),
            ),
        },
        VerifyProperty::Additive => {
            let bad: Vec<u32> = f
                .exponents()
                .filter(|&e| !(is_additive(&PolyFn::monomial(&field, e as u64))))
                .collect();
            match bad.first() {
                None => (true, String::new(), Value::Null),
                Some(e) => (
                    false,
                    format!("counterexample: exponent {e} is not a power of p"),
                    json!({ "exponent": e }),
                ),
            }
        }
        VerifyProperty::Permutation => match permutation_witness(&f) {
            None => (true, String::new(), Value::Null),
            Some((x, y)) => (
                false,
                format!("counterexample: f({x}) = f({y})"),
                json!({ "x": element_json(&x), "y": element_json(&y) }),
            ),
        },
        VerifyProperty::DoShape => {
            let bad: Vec<u32> = f
                .exponents()
                .filter(|&e| !is_do_shape(&PolyFn::monomial(&field, e as u64)))
                .collect();
            match bad.first() {
                None => (true, String::new(), Value::Null),
                Some(e) => (
                    false,
                    format!("counterexample: exponent {e} is not of the form p^i + p^j"),
                    json!({ "exponent": e }),
                ),
            }
        }
    };
    ctx.timing("verify", start)?;
    let name = property
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    if ctx.cli.json {
        ctx.emit_json(&json!({
            "result": if pass { "PASS" } else { "FAIL" },
            "property": name,
            "function": f.to_string(),
            "field": spec_json(&field),
            "counterexample": witness,
        }))?;
    } else {
        let verdict = if pass { "PASS" } else { "FAIL" };
        writeln!(
            ctx.out,
            "{verdict}: {f} is {}{name} over {}",
            if pass { "" } else { "not " },
            field.spec()
        )?;
        if !pass {
            writeln!(ctx.out, "{text}")?;
        }
    }
    Ok(pass)
}

fn verification_json(rep: &MubVerification) -> Value {
    json!({
        "passed": rep.passed(),
        "bases": rep.bases,
        "dimension": rep.dimension,
        "norms_checked": rep.norms_checked,
        "intra_pairs_checked": rep.intra_pairs_checked,
        "cross_pairs_checked": rep.cross_pairs_checked,
        "standard_cross_pairs": rep.standard_cross_pairs,
        "standard_intra_pairs": rep.standard_intra_pairs,
        "sampled": rep.sampled,
        "first_failure": rep.first_failure.as_ref().map(|f| json!({
            "left": [f.left.basis, f.left.vector],
            "right": [f.right.basis, f.right.vector],
            "kind": format!("{:?}", f.kind),
            "value": f.value.to_string(),
        })),
    })
}

#[allow(clippy::too_many_arguments)]
fn gen_mubs(
    ctx: &mut Ctx,
    construction: ConstructionArg,
    literal: &str,
    path: &PathBuf,
    full: bool,
    samples: Option<usize>,
    seed: u64,
) -> Outcome {
    let field = ctx.field()?;
    let f = PolyFn::parse(&field, literal)?;
    let start = Instant::now();
    let built = match construction {
        ConstructionArg::Planar => build_planar_mubs(&f),
        ConstructionArg::Alltop => build_alltop_mubs(&f),
    };
    let m = match built {
        Ok(m) => m,
        Err(e @ (Error::NotPlanar | Error::NotAlltop)) => {
            writeln!(ctx.out, "FAIL: {e}: {f} over {}", field.spec())?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    ctx.timing("build", start)?;
    let start = Instant::now();
    let rep = if full || (samples.is_none() && field.q() <= FULL_CHECK_MAX_Q) {
        verify_mub_collection(&m)
    } else {
        verify_mub_collection_sampled(&m, samples.unwrap_or(DEFAULT_SAMPLES), seed)
    };
    ctx.timing("verify", start)?;
    std::fs::write(path, MubExport::from_collection(&m).to_json())?;

    if ctx.cli.json {
        ctx.emit_json(&json!({
            "construction": m.construction(),
            "function": f.to_string(),
            "field": spec_json(&field),
            "out": path.display().to_string(),
            "verification": verification_json(&rep),
        }))?;
    } else {
        let o = &mut ctx.out;
        writeln!(
            o,
            "{} MUBs from {f} over {}",
            m.construction(),
            field.spec()
        )?;
        writeln!(o, "bases: {} of dimension {}", rep.bases, rep.dimension)?;
        writeln!(o, "norms checked: {}", rep.norms_checked)?;
        writeln!(o, "intra-basis pairs checked: {}", rep.intra_pairs_checked)?;
        writeln!(
            o,
            "cross-basis pairs checked: {}{}",
            rep.cross_pairs_checked,
            if rep.sampled {
                format!(" (sampled, seed {seed})")
            } else {
                String::new()
            }
        )?;
        writeln!(
            o,
            "standard-basis pairs: {} (unbiased by construction)",
            rep.standard_cross_pairs
        )?;
        match &rep.first_failure {
            None => writeln!(o, "PASS: all checks exact")?,
            Some(fl) => writeln!(
                o,
                "FAIL: {:?} between basis {} vector {} and basis {} vector {} (value {})",
                fl.kind, fl.left.basis, fl.left.vector, fl.right.basis, fl.right.vector, fl.value
            )?,
        }
        writeln!(o, "wrote {}", path.display())?;
    }
    Ok(rep.passed())
}

fn report_json(name: &str, rep: &CorrelationReport) -> Value {
    json!({
        "name": name,
        "N": rep.n,
        "K": rep.k,
        "exact": rep.exact,
        "i_rms_sq": rep.i_rms_sq.to_string(),
        "i_max_sq": rep.i_max_sq.to_string(),
        "max_pair": [rep.max_pair.0, rep.max_pair.1],
        "welch_rms_sq": rep.welch_rms_sq.to_string(),
        "welch_max_sq": rep.welch_max_sq.to_string(),
        "levenstein_sq": rep.levenstein_sq.as_ref().map(ToString::to_string),
        "meets_welch_rms": rep.meets_welch_rms,
        "meets_welch_max": rep.meets_welch_max,
        "meets_levenstein": rep.meets_levenstein,
    })
}

fn analyze(ctx: &mut Ctx, path: &PathBuf, name: Option<&str>) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let start = Instant::now();
    let set = mub::load_signal_set(&text)?;
    let rep = correlation_report(&set)?;
    ctx.timing("analyze", start)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = name.unwrap_or(&stem);
    if ctx.cli.json {
        ctx.emit_json(&report_json(name, &rep))?;
    } else {
        write!(ctx.out, "{}", correlation_csv([(name, &rep)]))?;
    }
    Ok(true)
}

fn search_cmd(
    ctx: &mut Ctx,
    property: SearchProperty,
    min: u64,
    max: Option<u64>,
    allow_large: bool,
    binomial: bool,
) -> Outcome {
    let field = ctx.field()?;
    let property = match property {
        SearchProperty::Planar => search::Property::Planar,
        SearchProperty::Alltop => search::Property::Alltop,
    };
    let max = max.unwrap_or((field.q() as u64).saturating_sub(2));
    let limits = SearchLimits {
        allow_large,
        ..SearchLimits::from_env()
    };
    let start = Instant::now();
    let hits: Vec<String> = if binomial {
        let (candidates, lookups) = binomial_cost(&field, property, min, max);
        writeln!(
            ctx.err,
            "binomial search: {candidates} candidates, about {lookups} table lookups"
        )?;
        search_binomials(&field, property, min, max, &limits)?
            .iter()
            .map(|h| h.function().to_string())
            .collect()
    } else {
        search_monomials(&field, property, min, max, &limits)?
            .iter()
            .map(u64::to_string)
            .collect()
    };
    ctx.timing("search", start)?;
    if ctx.cli.json {
        ctx.emit_json(&json!({
            "field": spec_json(&field),
            "property": format!("{property:?}").to_lowercase(),
            "min": min,
            "max": max,
            "kind": if binomial { "binomial" } else { "monomial" },
            "hits": hits,
        }))?;
    } else {
        for h in &hits {
            writeln!(ctx.out, "{h}")?;
        }
    }
    Ok(true)
}

fn families_cmd(ctx: &mut Ctx, cmd: &FamilyCommand) -> Outcome {
    match cmd {
        FamilyCommand::NewAlltop(NewAlltopArgs { p, r }) => {
            let start = Instant::now();
            let f = families::new_alltop(*p, *r)?;
            let field = f.field().clone();
            let profile = delta_planarity_profile(&f);
            let planar = profile.iter().filter(|(_, ok)| *ok).count();
            let failed: Vec<&FieldElement> = profile
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(a, _)| a)
                .collect();
            let inequiv = ea_inequiv_to_cube(&f) == CubeEquivalence::InequivalentToCube;
            ctx.timing("new-alltop", start)?;
            let pass = failed.is_empty();
            if ctx.cli.json {
                ctx.emit_json(&json!({
                    "function": f.to_string(),
                    "field": spec_json(&field),
                    "delta_planar": planar,
                    "delta_not_planar": failed.len(),
                    "alltop": pass,
                    "ea_inequivalent_to_cube": inequiv,
                }))?;
            } else {
                let o = &mut ctx.out;
                writeln!(o, "{f} over {}", field.spec())?;
                writeln!(o, "Δ_a planar for {planar} of {} nonzero a", profile.len())?;
                if let Some(a) = failed.first() {
                    writeln!(o, "first non-planar direction: a = {a}")?;
                }
                writeln!(o, "{}: Alltop", if pass { "PASS" } else { "FAIL" })?;
                writeln!(
                    o,
                    "EA-inequivalent to x^3: {}",
                    if inequiv { "yes" } else { "inconclusive" }
                )?;
            }
            Ok(pass)
        }
        FamilyCommand::PiA { a } => {
            let field = ctx.field()?;
            let a = field.element(*a)?;
            let pi = families::pi_a(&field, &a)?;
            let witness = planar_witness(&pi);
            let pass = witness.is_none();
            if ctx.cli.json {
                ctx.emit_json(&json!({
                    "function": pi.to_string(),
                    "field": spec_json(&field),
                    "a": element_json(&a),
                    "planar": pass,
                }))?;
            } else {
                writeln!(ctx.out, "Π_a = {pi} (a = {a}) over {}", field.spec())?;
                writeln!(ctx.out, "{}: planar", if pass { "PASS" } else { "FAIL" })?;
            }
            Ok(pass)
        }
        FamilyCommand::NoteIdentity { a } => {
            let field = ctx.field()?;
            let start = Instant::now();
            let targets: Vec<FieldElement> = match a {
                Some(a) => vec![field.element(*a)?],
                None => field.nonzero_elements().collect(),
            };
            let mut failed = Vec::new();
            for a in &targets {
                if !families::verify_note_identity(&field, a)? {
                    failed.push(a.clone());
                }
            }
            ctx.timing("note-identity", start)?;
            let held = targets.len() - failed.len();
            let pass = failed.is_empty();
            if ctx.cli.json {
                ctx.emit_json(&json!({
                    "field": spec_json(&field),
                    "checked": targets.len(),
                    "held": held,
                    "failed": failed.iter().map(element_json).collect::<Vec<_>>(),
                }))?;
            } else {
                writeln!(
                    ctx.out,
                    "identity holds for {held} of {} values of a over {}",
                    targets.len(),
                    field.spec()
                )?;
                if let Some(a) = failed.first() {
                    writeln!(ctx.out, "first failure: a = {a}")?;
                }
                writeln!(ctx.out, "{}", if pass { "PASS" } else { "FAIL" })?;
            }
            Ok(pass)
        }
    }
}
