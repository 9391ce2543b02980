//! The `classprod` command line.
//!
//! Exit codes: 0 when every check passes or is skipped, 1 when some check
//! fails, 2 on usage, input or build errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::classes::{all_classes, class_product_eta, eta_aa_inv};
use crate::constructions::{parse_corpus, GroupSpec, DEFAULT_MAX_ORDER};
use crate::group::{Elem, Group};
use crate::structure::{
    center, centralizer_of_set, chief_series, derived_length, derived_series, is_solvable,
    relative_derived_length, second_center, DerivedLength,
};
use crate::theorems::corpus::{standard_corpus, supersolvable_corpus};
use crate::theorems::scan::{conjecture_scan, emit_scan_csv, render_summary, ScanOptions};
use crate::theorems::{verify_examples, Analysis, CheckName, Status, VerificationReport};

#[derive(Debug, Parser)]
#[command(
    name = "classprod",
    version,
    about = "Conjugacy-class products and derived length"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Group spec JSON file, or a JSON-lines / JSON-array corpus.
    #[arg(long, global = true, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Named family: cyclic, dihedral, symmetric, alternating, quaternion8,
    /// extraspecial_p3, frobenius, units, example21.
    #[arg(long, global = true, value_name = "FAMILY")]
    pub named: Option<String>,
    /// Size parameter of the named family.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Prime parameter of the named family.
    #[arg(long, global = true)]
    pub p: Option<usize>,
    /// Built-in corpus.
    #[arg(long, global = true, value_enum)]
    pub corpus: Option<CorpusName>,
    /// Output format; defaults to csv for scan, text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Refuse to build groups larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    pub max_order: usize,
    /// Worker threads for verify and scan.
    #[arg(long, global = true,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    pub threads: Option<usize>,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusName {
    /// Supersolvable corpus plus S4 and A4.
    Standard,
    /// Cyclic, dihedral and small supersolvable groups with their pairwise products.
    Supersolvable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, solvability and series data.
    Inspect,
    /// Conjugacy classes with η(AA⁻¹) and dl(G/C_G(A)).
    Classes,
    /// η(AA⁻¹) for one class, optionally η(AB) for a second.
    Eta {
        /// `auto-noncentral` or an element index.
        #[arg(long, default_value = "auto-noncentral", value_parser = parse_class_rep)]
        class_rep: ClassRep,
        /// Representative of the second class B.
        #[arg(long)]
        b_rep: Option<usize>,
    },
    /// Run verification checks.
    Verify {
        /// Comma-separated check names, `all`, or `examples`.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Collect (η, dl) pairs over a corpus (defaults to the standard corpus).
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRep {
    AutoNoncentral,
    Index(usize),
}

fn parse_class_rep(s: &str) -> Result<ClassRep, String> {
    if s == "auto-noncentral" {
        return Ok(ClassRep::AutoNoncentral);
    }
    s.parse()
        .map(ClassRep::Index)
        .map_err(|_| format!("expected `auto-noncentral` or an element index, got `{s}`"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite {
    pub checks: Vec<CheckName>,
    pub examples: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    let mut suite = Suite {
        checks: Vec::new(),
        examples: false,
    };
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok {
            "all" => suite.checks.extend(CheckName::ALL),
            "examples" => suite.examples = true,
            name => suite.checks.push(name.parse()?),
        }
    }
    suite.checks.sort();
    suite.checks.dedup();
    if suite.checks.is_empty() && !suite.examples {
        return Err("empty suite".into());
    }
    Ok(suite)
}

/// A failure that ends the run with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

pub fn main_exit_code() -> i32 {
    run_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match run(&cli, err) {
        Ok((body, code)) => match emit(&cli.input, &body, out) {
            Ok(()) => code,
            Err(Fatal(m)) => {
                let _ = writeln!(err, "error: {m}");
                2
            }
        },
        Err(Fatal(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn emit(input: &InputArgs, body: &str, out: &mut dyn Write) -> Result<(), Fatal> {
    match &input.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Fatal(format!("writing {}: {e}", path.display()))),
        None => {
            out.write_all(body.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn specs(input: &InputArgs, default_corpus: Option<CorpusName>) -> Result<Vec<GroupSpec>, Fatal> {
    let chosen = [
        input.spec.is_some(),
        input.named.is_some(),
        input.corpus.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen > 1 {
        return Err(Fatal("use only one of --spec, --named, --corpus".into()));
    }
    if let Some(path) = &input.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Fatal(format!("reading {}: {e}", path.display())))?;
        return Ok(parse_corpus(&text)?);
    }
    if let Some(name) = &input.named {
        let spec = GroupSpec::named(name, input.n, input.p);
        spec.validate()?;
        return Ok(vec![spec]);
    }
    match input.corpus.or(default_corpus) {
        Some(CorpusName::Standard) => Ok(standard_corpus()),
        Some(CorpusName::Supersolvable) => Ok(supersolvable_corpus()),
        None => Err(Fatal(
            "no group given; use --spec, --named or --corpus".into(),
        )),
    }
}

fn single_group(input: &InputArgs) -> Result<Group, Fatal> {
    let specs = specs(input, None)?;
    let [spec] = specs.as_slice() else {
        return Err(Fatal(format!(
            "this command takes one group, got {}",
            specs.len()
        )));
    };
    Ok(spec.build(input.max_order)?.with_label(spec.label()))
}

fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, Fatal> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()?
            .install(f)),
        None => Ok(f()),
    }
}

fn run(cli: &Cli, err: &mut dyn Write) -> Result<(String, i32), Fatal> {
    let input = &cli.input;
    match &cli.command {
        Command::Inspect => Ok((inspect(&single_group(input)?, input.format)?, 0)),
        Command::Classes => Ok((classes(&single_group(input)?, input.format)?, 0)),
        Command::Eta { class_rep, b_rep } => {
            eta_cmd(&single_group(input)?, *class_rep, *b_rep, input.format).map(|s| (s, 0))
        }
        Command::Verify { suite } => verify(input, suite),
        Command::Scan => scan(input, err),
    }
}

/// Renders a header and rows as LF-terminated CSV.
fn csv_table<I, R>(header: &[&str], rows: I) -> Result<String, Fatal>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Fatal(e.to_string()))?;
    Ok(String::from_utf8(bytes)?)
}

fn dl_field(d: DerivedLength) -> String {
    d.value()
        .map_or_else(|| "NA".to_string(), |v| v.to_string())
}

fn dl_json(d: DerivedLength) -> serde_json::Value {
    d.value().map_or(serde_json::Value::Null, |v| json!(v))
}

fn inspect(g: &Group, format: Option<Format>) -> Result<String, Fatal> {
    let dl = derived_length(g);
    let chief = chief_series(g);
    let derived = derived_series(g, &g.whole()).expect("same group");
    let derived_orders: Vec<usize> = derived.terms.iter().map(|t| t.order()).collect();
    let info = json!({
        "group": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "classes": all_classes(g).len(),
        "center_order": center(g).order(),
        "second_center_order": second_center(g).order(),
        "solvable": is_solvable(g),
        "supersolvable": Analysis::new(g).is_supersolvable(),
        "derived_length": dl_json(dl),
        "derived_series_orders": derived_orders,
        "chief_factor_orders": chief.factor_orders,
    });
    Ok(match format.unwrap_or(Format::Text) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&info).expect("json")),
        Format::Csv => {
            let rows = info.as_object().expect("object").iter().map(|(k, v)| {
                let v = match v {
                    serde_json::Value::String(x) => x.clone(),
                    serde_json::Value::Array(a) => a
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                [k.clone(), v]
            });
            csv_table(&["key", "value"], rows)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group: {}", g.label());
            let _ = writeln!(s, "order: {}", g.order());
            let _ = writeln!(s, "abelian: {}", g.is_abelian());
            let _ = writeln!(s, "classes: {}", all_classes(g).len());
            let _ = writeln!(s, "|Z(G)|: {}", info["center_order"]);
            let _ = writeln!(s, "|Z2(G)|: {}", info["second_center_order"]);
            let _ = writeln!(s, "solvable: {}", info["solvable"]);
            let _ = writeln!(s, "supersolvable: {}", info["supersolvable"]);
            let _ = writeln!(s, "derived length: {dl}");
            let _ = writeln!(s, "derived series orders: {derived_orders:?}");
            let _ = writeln!(s, "chief factor orders: {:?}", chief.factor_orders);
            s
        }
    })
}

struct ClassLine {
    rep: Elem,
    size: usize,
    eta: usize,
    dl: DerivedLength,
}

fn class_lines(g: &Group) -> Vec<ClassLine> {
    let an = Analysis::new(g);
    all_classes(g)
        .iter()
        .zip(an.class_centralizers())
        .zip(an.eta_aa())
        .map(|((c, cent), &eta)| ClassLine {
            rep: c.representative(),
            size: c.len(),
            eta,
            dl: relative_derived_length(g, cent).expect("class centralizers are normal"),
        })
        .collect()
}

/// `dl(G/C_G(A)) = d ≤ 2η−1 = b`, with `>` when the bound fails.
fn inequality(dl: DerivedLength, eta: usize) -> String {
    let b = 2 * eta - 1;
    let rel = if dl <= DerivedLength::Solvable(b) {
        "≤"
    } else {
        ">"
    };
    format!("dl(G/C_G(A)) = {dl} {rel} 2η−1 = {b}")
}

fn classes(g: &Group, format: Option<Format>) -> Result<String, Fatal> {
    let lines = class_lines(g);
    Ok(match format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: Vec<_> = lines
                .iter()
                .map(|l| {
                    json!({"class_rep": l.rep, "class_size": l.size, "eta_aa": l.eta,
                           "dl_mod_centralizer": dl_json(l.dl)})
                })
                .collect();
            let doc = json!({"group": g.label(), "order": g.order(), "classes": v});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => csv_table(
            &["class_rep", "class_size", "eta_aa", "dl_mod_centralizer"],
            lines.iter().map(|l| {
                [
                    l.rep.to_string(),
                    l.size.to_string(),
                    l.eta.to_string(),
                    dl_field(l.dl),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = format!(
                "{} (order {}), {} classes\n",
                g.label(),
                g.order(),
                lines.len()
            );
            for l in &lines {
                let _ = writeln!(
                    s,
                    "class of {:<5} size {:<4} η(AA⁻¹)={:<3} {}",
                    l.rep,
                    l.size,
                    l.eta,
                    inequality(l.dl, l.eta)
                );
            }
            s
        }
    })
}

fn eta_cmd(
    g: &Group,
    rep: ClassRep,
    b_rep: Option<usize>,
    format: Option<Format>,
) -> Result<String, Fatal> {
    let a = match rep {
        ClassRep::Index(i) => g.check_index(i)?,
        ClassRep::AutoNoncentral => {
            let z = center(g);
            g.elements().find(|&x| !z.contains(x)).ok_or_else(|| {
                Fatal(format!(
                    "{} is abelian; pass --class-rep <index> explicitly",
                    g.label()
                ))
            })?
        }
    };
    let eta = eta_aa_inv(g, a)?;
    let class = &all_classes(g)[crate::classes::partition(g).class_index(a)];
    let cent = centralizer_of_set(g, class.members())?;
    let dl = relative_derived_length(g, &cent)?;
    let ab = match b_rep {
        Some(b) => {
            let b = g.check_index(b)?;
            let (set, eta_ab) = class_product_eta(g, a, b)?;
            let meets = !set.is_disjoint(center(g).set());
            Some((b, eta_ab, meets))
        }
        None => None,
    };
    Ok(match format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut doc = json!({
                "group": g.label(), "class_rep": a, "class_size": class.len(),
                "eta_aa": eta, "dl_mod_centralizer": dl_json(dl), "bound": 2 * eta - 1,
            });
            if let Some((b, eta_ab, meets)) = ab {
                doc["b_rep"] = json!(b);
                doc["eta_ab"] = json!(eta_ab);
                doc["ab_meets_center"] = json!(meets);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => {
            let mut header = vec![
                "group",
                "class_rep",
                "class_size",
                "eta_aa",
                "dl_mod_centralizer",
            ];
            let mut row = vec![
                g.label().to_string(),
                a.to_string(),
                class.len().to_string(),
                eta.to_string(),
                dl_field(dl),
            ];
            if let Some((b, eta_ab, meets)) = ab {
                header.extend(["b_rep", "eta_ab", "ab_meets_center"]);
                row.extend([b.to_string(), eta_ab.to_string(), meets.to_string()]);
            }
            csv_table(&header, [row])?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}: a = {a}, |A| = {}", g.label(), class.len());
            let _ = writeln!(s, "η(AA⁻¹)={eta}");
            let _ = writeln!(s, "{}", inequality(dl, eta));
            if let Some((b, eta_ab, meets)) = ab {
                let _ = writeln!(s, "b = {b}: η(AB)={eta_ab}, AB meets Z(G): {meets}");
            }
            s
        }
    })
}

fn verify(input: &InputArgs, suite: &Suite) -> Result<(String, i32), Fatal> {
    let mut reports: Vec<VerificationReport> = Vec::new();
    if suite.examples {
        reports.push(verify_examples());
    }
    if !suite.checks.is_empty() {
        let specs = specs(input, None)?;
        let groups = specs
            .iter()
            .map(|s| Ok(s.build(input.max_order)?.with_label(s.label())))
            .collect::<Result<Vec<Group>, Fatal>>()?;
        let per_group: Vec<Vec<VerificationReport>> = with_pool(input.threads, || {
            groups
                .par_iter()
                .map(|g| {
                    let an = Analysis::new(g);
                    suite.checks.iter().map(|c| c.run(&an)).collect()
                })
                .collect()
        })?;
        reports.extend(per_group.into_iter().flatten());
    }
    let code = i32::from(reports.iter().any(VerificationReport::failed));
    let body = match input.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: Vec<_> = reports.iter().map(|r| r.to_json(input.timings)).collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => csv_table(
            &[
                "check_name",
                "group",
                "status",
                "cases",
                "failures",
                "skip_reason",
            ],
            reports.iter().map(|r| {
                let reason = match &r.status {
                    Status::Skipped(x) => x.clone(),
                    _ => String::new(),
                };
                [
                    r.check_name.clone(),
                    r.group_label.clone(),
                    r.status.as_str().to_string(),
                    r.cases_checked.to_string(),
                    r.failures.to_string(),
                    reason,
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = write!(s, "{r}");
                if input.timings {
                    let _ = write!(s, " elapsed_ms={:.3}", r.elapsed.as_secs_f64() * 1e3);
                }
                s.push('\n');
                if r.failed() {
                    for w in &r.witnesses {
                        let _ = writeln!(s, "    {w}");
                    }
                }
            }
            let failed = reports.iter().filter(|r| r.failed()).count();
            let skipped = reports.iter().filter(|r| r.is_skipped()).count();
            let _ = writeln!(
                s,
                "{} reports: {} pass, {failed} fail, {skipped} skipped",
                reports.len(),
                reports.len() - failed - skipped
            );
            s
        }
    };
    Ok((body, code))
}

fn scan(input: &InputArgs, err: &mut dyn Write) -> Result<(String, i32), Fatal> {
    let specs = specs(input, Some(CorpusName::Standard))?;
    let res = conjecture_scan(
        &specs,
        ScanOptions {
            max_order: input.max_order,
            threads: input.threads,
        },
    )?;
    let body = match input.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            emit_scan_csv(&res.rows, &mut buf)?;
            write!(err, "{}", render_summary(&res.summary))?;
            String::from_utf8(buf).expect("utf-8")
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&res).expect("json")),
        Format::Text => render_summary(&res.summary),
    };
    Ok((body, 0))
}
