//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use classprod::classes::{all_classes, class_product_eta};
use classprod::constructions::{example21_groups, GroupSpec, DEFAULT_MAX_ORDER};
use classprod::naive;
use classprod::structure::{
    centralizer, centralizer_of_set, core, normal_subgroups_exhaustive, relative_derived_length,
};
use classprod::theorems::corpus::{standard_corpus, supersolvable_corpus};
use classprod::theorems::examples::{extraspecial_example, wreath_example};
use classprod::theorems::scan::{conjecture_scan, render_summary, ScanOptions};
use classprod::theorems::{
    check_lemma_3_1, check_lemma_4_2, check_lemma_4_3, check_lemma_4_4, check_lemma_4_5,
    check_lemma_5_1, check_theorem_a, check_theorem_b, Analysis, Status, VerificationReport,
    EXHAUSTIVE_LIMIT,
};
use classprod::Group;

const EXTRASPECIAL_LIMIT: Duration = Duration::from_secs(1);
const WREATH_LIMIT: Duration = Duration::from_secs(5);
const THEOREM_B_LIMIT: Duration = Duration::from_secs(60);
const PRODUCT_IDENTITY_LIMIT: Duration = Duration::from_secs(30);
const PRODUCT_IDENTITY_MAX_ORDER: usize = 24;
const QUOTIENT_ORACLE_MAX_ORDER: usize = 48;
const CLASS_PRODUCT_ORACLE_MAX_ORDER: usize = 24;

// normal subgroups are enumerated exhaustively up to this order
const _: () = assert!(PRODUCT_IDENTITY_MAX_ORDER <= EXHAUSTIVE_LIMIT);

type Check = fn(&Analysis<'_>) -> VerificationReport;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn build(specs: &[GroupSpec]) -> Vec<Group> {
    specs
        .iter()
        .map(|s| {
            s.build(DEFAULT_MAX_ORDER)
                .expect("corpus member builds")
                .with_label(s.label())
        })
        .collect()
}

/// Runs `f` on every group; returns (failing labels, total cases, skipped reports).
fn run_suite(groups: &[Group], f: Check) -> (Vec<String>, usize, Vec<VerificationReport>) {
    let mut failing = Vec::new();
    let mut cases = 0;
    let mut skipped = Vec::new();
    for g in groups {
        let r = f(&Analysis::new(g));
        cases += r.cases_checked;
        if r.failed() {
            failing.push(format!("{} {:?}", r.group_label, r.witnesses.first()));
        }
        if r.is_skipped() {
            skipped.push(r);
        }
    }
    (failing, cases, skipped)
}

fn extraspecial() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [3, 5] {
        let t = Instant::now();
        let got = extraspecial_example(p);
        let dt = t.elapsed();
        let ok = matches!(got, Ok((1, e)) if e == p) && dt < EXTRASPECIAL_LIMIT;
        pass &= ok;
        parts.push(format!("p={p} (eta_H, eta_G)={got:?} in {dt:.2?}"));
    }
    outcome(pass, parts.join("; "))
}

fn wreath() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, expected, orders) in [(3, (3, 2), (81, 162)), (2, (2, 2), (8, 8))] {
        let t = Instant::now();
        let got = wreath_example(p);
        let dt = t.elapsed();
        let ex = example21_groups(p, DEFAULT_MAX_ORDER).expect("builds");
        let sizes = (ex.h.order(), ex.g.order());
        let ok = matches!(got, Ok(v) if v == expected) && sizes == orders && dt < WREATH_LIMIT;
        pass &= ok;
        parts.push(format!(
            "p={p} (eta_H, eta_G)={got:?} |H|={} |G|={} in {dt:.2?}",
            sizes.0, sizes.1
        ));
    }
    outcome(pass, parts.join("; "))
}

fn theorem_b() -> Outcome {
    let t = Instant::now();
    let groups = build(&supersolvable_corpus());
    let mut not_super = Vec::new();
    let mut failing = Vec::new();
    let mut classes = 0;
    for g in &groups {
        let r = check_theorem_b(&Analysis::new(g));
        match r.status {
            Status::Pass => classes += r.cases_checked,
            Status::Fail => failing.push(g.label().to_string()),
            Status::Skipped(_) => not_super.push(g.label().to_string()),
        }
    }
    let dt = t.elapsed();
    outcome(
        failing.is_empty() && not_super.is_empty() && dt < THEOREM_B_LIMIT,
        format!(
            "{} groups, {classes} classes, failures={failing:?}, not supersolvable={not_super:?}, {dt:.2?}",
            groups.len()
        ),
    )
}

fn theorem_a(groups: &[Group]) -> Outcome {
    let (failing, cases, skipped) = run_suite(groups, check_theorem_a);
    outcome(
        failing.is_empty(),
        format!(
            "{} groups, {cases} pairs, {} skipped (trivial Z2), failures={failing:?}",
            groups.len(),
            skipped.len()
        ),
    )
}

fn product_identity(groups: &[Group]) -> Outcome {
    let t = Instant::now();
    let small: Vec<Group> = groups
        .iter()
        .filter(|g| g.order() <= PRODUCT_IDENTITY_MAX_ORDER)
        .cloned()
        .collect();
    let (failing, cases, skipped) = run_suite(&small, check_lemma_3_1);
    let dt = t.elapsed();
    outcome(
        failing.is_empty() && skipped.is_empty() && dt < PRODUCT_IDENTITY_LIMIT,
        format!(
            "{} groups of order <= {PRODUCT_IDENTITY_MAX_ORDER}, {cases} (N, a, b) cases, failures={failing:?}, {dt:.2?}",
            small.len()
        ),
    )
}

fn lemma_suites(groups: &[Group]) -> Outcome {
    let suites: [(&str, Check); 5] = [
        ("lemma_4_2", check_lemma_4_2),
        ("lemma_4_3", check_lemma_4_3),
        ("lemma_4_4", check_lemma_4_4),
        ("lemma_4_5", check_lemma_4_5),
        ("lemma_5_1", check_lemma_5_1),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, f) in suites {
        let mut failing = Vec::new();
        let mut cases = 0;
        let mut skipped_cases = 0;
        let mut unexplained = 0;
        for g in groups {
            let r = f(&Analysis::new(g));
            cases += r.cases_checked;
            skipped_cases += r.skipped_cases.values().sum::<usize>();
            unexplained += r.skipped_cases.keys().filter(|k| k.is_empty()).count();
            if matches!(&r.status, Status::Skipped(reason) if reason.is_empty()) {
                unexplained += 1;
            }
            if r.failed() {
                failing.push(r.group_label.clone());
            }
        }
        pass &= failing.is_empty() && unexplained == 0;
        parts.push(format!(
            "{name}: cases={cases} skipped_cases={skipped_cases} failures={}",
            failing.len()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn oracle_equivalences(groups: &[Group]) -> Outcome {
    let mut quotients = 0;
    let mut centralizers = 0;
    let mut products = 0;
    let mut mismatches = Vec::new();
    for g in groups {
        if g.order() <= QUOTIENT_ORACLE_MAX_ORDER {
            for n in normal_subgroups_exhaustive(g) {
                quotients += 1;
                let fast = relative_derived_length(g, &n).expect("normal");
                let slow = naive::derived_length_mod(g, &n).expect("normal");
                if fast != slow {
                    mismatches.push(format!("dl {} |N|={}", g.label(), n.order()));
                }
            }
        }
        for c in all_classes(g) {
            centralizers += 1;
            let by_set = centralizer_of_set(g, c.members()).expect("nonempty");
            let by_core = core(g, &centralizer(g, c.representative())).expect("same group");
            if by_set != by_core || *by_set.set() != naive::centralizer_of_set(g, c.members()) {
                mismatches.push(format!(
                    "centralizer {} rep {}",
                    g.label(),
                    c.representative()
                ));
            }
        }
        if g.order() <= CLASS_PRODUCT_ORACLE_MAX_ORDER {
            for a in all_classes(g) {
                for b in all_classes(g) {
                    products += 1;
                    let (x, y) = (a.representative(), b.representative());
                    let (set, eta) = class_product_eta(g, x, y).expect("valid");
                    let slow = naive::class_product(g, x, y);
                    if set != slow || eta != naive::count_classes_in(g, &slow) {
                        mismatches.push(format!("product {} ({x},{y})", g.label()));
                    }
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{quotients} quotient lengths, {centralizers} class centralizers, {products} class products, mismatches={mismatches:?}"
        ),
    )
}

fn base_case(groups: &[Group]) -> Outcome {
    let mut classes = 0;
    let mut bad = Vec::new();
    for g in groups {
        let an = Analysis::new(g);
        for (c, &eta) in all_classes(g).iter().zip(an.eta_aa()) {
            classes += 1;
            if (eta == 1) != (c.len() == 1) {
                bad.push(format!("{} rep {}", g.label(), c.representative()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{classes} classes, counterexamples={bad:?}"),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_classprod");
    let run = |threads: &str| {
        Command::new(bin)
            .args([
                "scan",
                "--corpus",
                "standard",
                "--format",
                "csv",
                "--threads",
                threads,
            ])
            .output()
            .expect("binary runs")
    };
    let (one, eight) = (run("1"), run("8"));
    let ok = one.status.success() && eight.status.success() && one.stdout == eight.stdout;
    outcome(
        ok,
        format!(
            "threads 1 vs 8: {} bytes vs {} bytes, identical={}",
            one.stdout.len(),
            eight.stdout.len(),
            one.stdout == eight.stdout
        ),
    )
}

fn conjecture_data() -> Outcome {
    let corpus = standard_corpus();
    let labels: Vec<String> = corpus.iter().map(GroupSpec::label).collect();
    let has_extra =
        labels.iter().any(|l| l == "symmetric(4)") && labels.iter().any(|l| l == "alternating(4)");
    let res = conjecture_scan(
        &corpus,
        ScanOptions {
            max_order: DEFAULT_MAX_ORDER,
            threads: None,
        },
    );
    match res {
        Ok(res) => {
            let violations = res
                .rows
                .iter()
                .filter(|r| r.supersolvable)
                .filter(|r| r.dl_mod_centralizer.is_none_or(|d| d + 1 > 2 * r.eta_aa))
                .count();
            let summary = render_summary(&res.summary);
            let q: Vec<String> = res
                .summary
                .least_q
                .iter()
                .map(|o| format!("r={} q={}", o.r, o.least_q))
                .collect();
            for line in summary.lines() {
                println!("    {line}");
            }
            outcome(
                has_extra && violations == 0 && !res.summary.by_eta.is_empty(),
                format!(
                    "{} rows, supersolvable violations={violations}, least q: {}",
                    res.rows.len(),
                    q.join(", ")
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let groups = build(&standard_corpus());
    let criteria: Vec<Criterion<'_>> = vec![
        ("extraspecial example eta values", Box::new(extraspecial)),
        ("wreath example eta values", Box::new(wreath)),
        ("supersolvable bound over the corpus", Box::new(theorem_b)),
        ("second-center pairs", Box::new(|| theorem_a(&groups))),
        (
            "orbit product identity, order <= 24",
            Box::new(|| product_identity(&groups)),
        ),
        (
            "structural lemma suites",
            Box::new(|| lemma_suites(&groups)),
        ),
        (
            "oracle equivalences",
            Box::new(|| oracle_equivalences(&groups)),
        ),
        ("eta = 1 iff central", Box::new(|| base_case(&groups))),
        (
            "scan determinism across thread counts",
            Box::new(determinism),
        ),
        ("conjecture evidence summary", Box::new(conjecture_data)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {status} {name} [{:.2?}]: {}",
            i + 1,
            t.elapsed(),
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
