//! Argument parsing and command dispatch for the `stabcat` binary.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use stabcat_core::stability::{enumerate_finest, equivalent, hn_filtration, is_coarser, is_finest, refine_to_finest, tau_orbit, validate, FinestOptions};
use stabcat_core::torsion::{classify_tube, enumerate_torsion_pairs, pairs_from_data, tau_orbits, validate_torsion};
use stabcat_core::{StabilityData, TorsionPair};

use crate::ambient_spec::{parse_ambient, Context, Model};
use crate::error::CliError;
use crate::json::{show_members, to_json, HnDoc, StabilityDoc, TorsionDoc, TorsionValidationDoc, ValidationDoc};
use crate::suites::{run_suite, SuiteConfig, SuiteReport, SUITES};
use crate::tables::{computed_markdown, verify_table, verify_table_against, TableOutcome, TABLES};

/// Data files shipped with the binary, found by bare file name.
const BUNDLED: [(&str, &str); 2] = [("a2-finest2.json", include_str!("../data/a2-finest2.json")), ("t2-three-phase.json", include_str!("../data/t2-three-phase.json"))];

#[derive(Parser, Debug)]
#[command(name = "stabcat", version, about = "Stability data and torsion pairs on small abelian categories")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate stability data or a torsion pair read from JSON.
    Validate {
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        data: PathBuf,
    },
    /// Harder-Narasimhan filtration of one object.
    Hn {
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Enumerate finest stability data.
    Finest {
        #[arg(long)]
        ambient: String,
        /// One class per translation orbit.
        #[arg(long)]
        upto_tau: bool,
        /// One class per equivalence class; always on, accepted for clarity.
        #[arg(long)]
        upto_equiv: bool,
        /// Tube pieces generated by one object of length at most the rank.
        #[arg(long)]
        restricted: bool,
    },
    /// Enumerate torsion pairs.
    Torsion {
        #[arg(long)]
        ambient: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        #[arg(long)]
        upto_tau: bool,
        /// Leave out the two trivial pairs.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Refine stability data to finest data.
    Refine {
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        data: PathBuf,
    },
    /// Decide whether one datum is coarser than another.
    Compare {
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        coarse: PathBuf,
        #[arg(long)]
        fine: PathBuf,
    },
    /// Rerun a named table and diff it against its golden file.
    VerifyTable {
        /// A table name, or `all`.
        name: String,
        /// Print the recomputed rows of a parametric table instead.
        #[arg(long)]
        print_computed: bool,
        /// Diff against this file instead of the bundled golden.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Run a named oracle suite, or `all`.
    OracleCheck {
        suite: String,
        /// Overrides `STABCAT_BUDGET`.
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Thm411,
    Cuts,
}

/// Text and exit status of a finished command.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn jobs(cli: &Cli) -> usize {
    cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1)
}

fn budget(flag: Option<u128>) -> Result<u128, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("STABCAT_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("STABCAT_BUDGET is not a number: {v:?}"))),
        Err(_) => Ok(stabcat_core::oracle::DEFAULT_BUDGET),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let bare = path.components().count() == 1;
            let name = path.to_str().unwrap_or("");
            match BUNDLED.iter().find(|(n, _)| bare && *n == name) {
                Some((_, text)) => Ok(text.to_string()),
                None => Err(CliError::Io(format!("{}: {e}", path.display()))),
            }
        }
    }
}

fn json_value(path: &Path) -> Result<serde_json::Value, CliError> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// The ambient from the flag, else from the document; both must agree.
fn context_for(flag: Option<&str>, doc: &serde_json::Value) -> Result<Context, CliError> {
    let from_doc = doc.get("ambient").and_then(|a| a.as_str());
    match (flag, from_doc) {
        (Some(f), Some(d)) => {
            let ctx = parse_ambient(f)?;
            let other = parse_ambient(d)?;
            if ctx.amb.spec() != other.amb.spec() {
                return Err(CliError::Usage(format!("--ambient {} disagrees with the data file ambient {}", ctx.amb.spec(), other.amb.spec())));
            }
            Ok(ctx)
        }
        (Some(s), None) | (None, Some(s)) => parse_ambient(s),
        (None, None) => Err(CliError::Usage("no ambient: pass --ambient or set \"ambient\" in the data file".into())),
    }
}

fn load_data(flag: Option<&str>, path: &Path) -> Result<(Context, StabilityData), CliError> {
    let v = json_value(path)?;
    let ctx = context_for(flag, &v)?;
    let doc: StabilityDoc = serde_json::from_value(v)?;
    let sd = doc.to_data(&ctx)?;
    Ok((ctx, sd))
}

fn emit<T: Serialize>(cli: &Cli, doc: &T, text: String) -> String {
    if cli.json {
        to_json(doc)
    } else {
        text
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate { ambient, data } => cmd_validate(cli, ambient.as_deref(), data),
        Command::Hn { ambient, data, object } => {
            let (ctx, sd) = load_data(ambient.as_deref(), data)?;
            let x = ctx.parse_indec(object)?;
            ctx.index(&x)?;
            let h = hn_filtration(&ctx.amb, &sd, &x)?;
            let doc = HnDoc::from_filtration(&h);
            let mut text = format!("{}\n", doc.object);
            for s in &doc.steps {
                text.push_str(&format!("  phase {}: {}", s.phase, s.factors.join(" + ")));
                if let Some(sub) = &s.sub {
                    text.push_str(&format!("  (subobject {sub})"));
                }
                text.push('\n');
            }
            Ok(ok(emit(cli, &doc, text)))
        }
        Command::Finest { ambient, upto_tau, upto_equiv: _, restricted } => cmd_finest(cli, ambient, *upto_tau, *restricted),
        Command::Torsion { ambient, method, upto_tau, nontrivial } => cmd_torsion(cli, ambient, *method, *upto_tau, *nontrivial),
        Command::Refine { ambient, data } => {
            let (ctx, sd) = load_data(ambient.as_deref(), data)?;
            let fine = refine_to_finest(&ctx.amb, &sd)?;
            let doc = StabilityDoc::from_data(&ctx, &fine);
            Ok(ok(emit(cli, &doc, render_data(&ctx, &fine))))
        }
        Command::Compare { ambient, coarse, fine } => {
            let (ctx, a) = load_data(ambient.as_deref(), coarse)?;
            let (_, b) = load_data(Some(&ctx.amb.spec()), fine)?;
            let map = is_coarser(&ctx.amb, &a, &b);
            let eq = equivalent(&a, &b);
            #[derive(Serialize)]
            struct CompareDoc {
                coarser: bool,
                equivalent: bool,
                phase_map: Vec<[String; 2]>,
            }
            let doc = CompareDoc {
                coarser: map.is_some(),
                equivalent: eq,
                phase_map: map.iter().flatten().map(|(f, c)| [f.to_string(), c.to_string()]).collect(),
            };
            let mut text = format!("coarser: {}\nequivalent: {}\n", yes(doc.coarser), yes(eq));
            for [f, c] in &doc.phase_map {
                text.push_str(&format!("  {f} -> {c}\n"));
            }
            Ok(Output { text: emit(cli, &doc, text), code: if doc.coarser { 0 } else { 1 } })
        }
        Command::VerifyTable { name, print_computed, golden } => {
            if *print_computed {
                return Ok(ok(computed_markdown(name)?));
            }
            if let Some(path) = golden {
                let o = verify_table_against(name, &read(path)?)?;
                let code = if o.passed() { 0 } else { 1 };
                return Ok(Output { text: emit(cli, &[&o], render_table(&o)), code });
            }
            let names: Vec<&str> = if name == "all" { TABLES.to_vec() } else { vec![name.as_str()] };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs(cli)).build().map_err(|e| CliError::Internal(e.to_string()))?;
            let outcomes = pool.install(|| names.par_iter().map(|n| verify_table(n)).collect::<Result<Vec<TableOutcome>, CliError>>())?;
            let passed = outcomes.iter().all(|o| o.passed());
            let text = outcomes.iter().map(render_table).collect::<String>();
            Ok(Output { text: emit(cli, &outcomes, text), code: if passed { 0 } else { 1 } })
        }
        Command::OracleCheck { suite, budget: b } => {
            let cfg = SuiteConfig { jobs: jobs(cli), budget: budget(*b)? };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports = names.iter().map(|n| run_suite(n, cfg)).collect::<Result<Vec<SuiteReport>, CliError>>()?;
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{} {}: {} checked, {} mismatches\n", if r.passed() { "PASS" } else { "FAIL" }, r.suite, r.checked, r.mismatches.len()));
                for m in r.mismatches.iter().take(20) {
                    text.push_str(&format!("  {m}\n"));
                }
            }
            Ok(Output { text: emit(cli, &reports, text), code: if passed { 0 } else { 1 } })
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_data(ctx: &Context, sd: &StabilityData) -> String {
    let mut s = String::new();
    for (p, m) in sd.pieces() {
        s.push_str(&format!("  {p}: {}\n", show_members(ctx, *m)));
    }
    s
}

fn render_table(o: &TableOutcome) -> String {
    let mut s = format!("{} {} on {}: {} rows, {}\n", if o.passed() { "MATCH" } else { "MISMATCH" }, o.table, o.ambient, o.rows, o.label);
    for n in &o.notes {
        s.push_str(&format!("  {n}\n"));
    }
    s.push_str(&o.diff());
    s
}

fn cmd_validate(cli: &Cli, ambient: Option<&str>, data: &Path) -> Result<Output, CliError> {
    let v = json_value(data)?;
    let ctx = context_for(ambient, &v)?;
    if v.get("T").is_some() {
        let doc: TorsionDoc = serde_json::from_value(v)?;
        let tp = doc.to_pair(&ctx)?;
        let r = validate_torsion(&ctx.amb, &tp);
        let out = TorsionValidationDoc::new(&ctx, &r);
        let mut text = format!("ambient {}\ntorsion pair: {}\n", out.ambient, yes(out.valid));
        for (a, b) in &r.hom_violations {
            text.push_str(&format!("  Hom({a}, {b}) != 0\n"));
        }
        for (flag, what) in [(r.t_not_perp, "T is not the left perpendicular of F"), (r.f_not_perp, "F is not the right perpendicular of T")] {
            if flag {
                text.push_str(&format!("  {what}\n"));
            }
        }
        for (xs, what) in [(&r.not_quotient_closed, "quotient leaves T"), (&r.not_sub_closed, "subobject leaves F"), (&r.undecomposed, "no T-by-F decomposition")] {
            for x in xs {
                text.push_str(&format!("  {what}: {x}\n"));
            }
        }
        text.push_str(&format!("{}\n", out.label));
        return Ok(Output { text: emit(cli, &out, text), code: if out.valid { 0 } else { 1 } });
    }
    let doc: StabilityDoc = serde_json::from_value(v)?;
    let sd = doc.to_data(&ctx)?;
    let r = validate(&ctx.amb, &sd);
    let f = is_finest(&ctx.amb, &sd);
    let out = ValidationDoc::new(&ctx, &r, &f);
    let mut text = format!("ambient {}\nvalid: {}\nfinest: {}\n", out.ambient, yes(out.valid), yes(out.finest));
    if let Some([p, x, y]) = &out.finest_witness {
        text.push_str(&format!("  phase {p} holds {x} and {y} with Hom({x}, {y}) = 0\n"));
    }
    for [a, b] in &out.hom_violations {
        text.push_str(&format!("  Hom({a}, {b}) != 0 against the phase order\n"));
    }
    for (xs, what) in [(&out.hn_failures, "no HN filtration"), (&out.hn_ambiguous, "several HN filtrations"), (&out.overlaps, "in two phases"), (&out.unclosed, "piece not extension closed at")] {
        for x in xs {
            text.push_str(&format!("  {what}: {x}\n"));
        }
    }
    text.push_str(&format!("checked {} objects, {}\n", out.scope_size, out.label));
    Ok(Output { text: emit(cli, &out, text), code: if out.valid { 0 } else { 1 } })
}

fn cmd_finest(cli: &Cli, spec: &str, upto_tau: bool, restricted: bool) -> Result<Output, CliError> {
    let ctx = parse_ambient(spec)?;
    if upto_tau && ctx.amb.tau_perm().is_none() {
        return Err(CliError::Usage(format!("{} has no translation to quotient by", ctx.amb.spec())));
    }
    let classes = enumerate_finest(&ctx.amb, FinestOptions { upto_tau, tube_restricted: restricted })?;
    #[derive(Serialize)]
    struct ClassDoc {
        orbit: usize,
        data: StabilityDoc,
    }
    #[derive(Serialize)]
    struct FinestDoc {
        ambient: String,
        upto_tau: bool,
        classes: Vec<ClassDoc>,
        label: String,
    }
    let doc = FinestDoc {
        ambient: ctx.amb.spec(),
        upto_tau,
        classes: classes.iter().map(|c| ClassDoc { orbit: c.orbit, data: StabilityDoc::from_data(&ctx, &c.data) }).collect(),
        label: crate::json::label(&ctx),
    };
    let mut text = format!("{} classes of finest stability data on {}{}\n", classes.len(), doc.ambient, if upto_tau { " up to translation" } else { "" });
    for (i, c) in classes.iter().enumerate() {
        let orbit = if upto_tau { format!(", orbit {}", c.orbit) } else { String::new() };
        text.push_str(&format!("class {} ({} phases{orbit})\n{}", i + 1, c.data.len(), render_data(&ctx, &c.data)));
    }
    if upto_tau {
        let total: usize = classes.iter().map(|c| tau_orbit(&ctx.amb, &c.data).len()).sum();
        text.push_str(&format!("{total} classes without the quotient\n"));
    }
    text.push_str(&format!("{}\n", doc.label));
    Ok(ok(emit(cli, &doc, text)))
}

fn cmd_torsion(cli: &Cli, spec: &str, method: Method, upto_tau: bool, nontrivial: bool) -> Result<Output, CliError> {
    let ctx = parse_ambient(spec)?;
    let mut pairs: Vec<TorsionPair> = match method {
        Method::Brute => enumerate_torsion_pairs(&ctx.amb)?,
        Method::Thm411 => match ctx.model {
            Model::Tube(n) => classify_tube(&ctx.amb, n)?,
            _ => return Err(CliError::Usage("the tube classifier needs a tube:N ambient".into())),
        },
        Method::Cuts => {
            let data: Vec<StabilityData> = enumerate_finest(&ctx.amb, FinestOptions::default())?.into_iter().map(|c| c.data).collect();
            pairs_from_data(&ctx.amb, &data)
        }
    };
    if nontrivial {
        pairs.retain(|p| !p.is_trivial(&ctx.amb));
    }
    let listed: Vec<(TorsionPair, usize)> = if upto_tau {
        if ctx.amb.tau_perm().is_none() {
            return Err(CliError::Usage(format!("{} has no translation to quotient by", ctx.amb.spec())));
        }
        tau_orbits(&ctx.amb, &pairs)
    } else {
        pairs.iter().map(|p| (*p, 1)).collect()
    };
    #[derive(Serialize)]
    struct PairDoc {
        orbit: usize,
        #[serde(flatten)]
        pair: TorsionDoc,
    }
    #[derive(Serialize)]
    struct TorsionListDoc {
        ambient: String,
        method: String,
        pairs: Vec<PairDoc>,
        label: String,
    }
    let doc = TorsionListDoc {
        ambient: ctx.amb.spec(),
        method: format!("{method:?}").to_lowercase(),
        pairs: listed.iter().map(|(p, o)| PairDoc { orbit: *o, pair: TorsionDoc::from_pair(&ctx, p) }).collect(),
        label: crate::json::label(&ctx),
    };
    let mut text = format!("{} torsion pairs on {}{}\n", listed.len(), doc.ambient, if upto_tau { " up to translation" } else { "" });
    for (p, o) in &listed {
        let orbit = if upto_tau { format!("  [orbit {o}]") } else { String::new() };
        text.push_str(&format!("T={}  F={}{orbit}\n", show_members(&ctx, p.t), show_members(&ctx, p.f)));
    }
    text.push_str(&format!("{}\n", doc.label));
    Ok(ok(emit(cli, &doc, text)))
}

/// Parses `args`, runs the command and returns what to print and the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> (String, String, i32) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 { (e.to_string(), String::new(), 0) } else { (String::new(), e.to_string(), 2) };
        }
    };
    match run(&cli) {
        Ok(out) => (out.text, String::new(), out.code),
        Err(e) => (String::new(), format!("{e}\n"), e.exit_code()),
    }
}
