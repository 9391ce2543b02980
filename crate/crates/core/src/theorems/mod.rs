//! Executable checkers for the class-product results, the worked examples,
//! and the scanner that gathers `(η(AA⁻¹), dl(G/C_G(A)))` data.
//!
//! Every checker takes an [`Analysis`] of one group and returns a
//! [`VerificationReport`]. Normal subgroups are iterated exhaustively for
//! groups of order at most [`EXHAUSTIVE_LIMIT`]; above that the family is
//! normal closures of single elements, derived/chief/upper-central series
//! terms, and the center.

mod checks;
pub mod corpus;
pub mod examples;
mod report;
pub mod scan;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::classes::{all_classes, eta_aa_inv};
use crate::group::{ElementSet, Group, Subgroup};
use crate::structure::{
    center, centralizer, centralizer_of_set, chief_series, derived_series, element_normal_closures,
    is_supersolvable, normal_subgroups_exhaustive, second_center, upper_central_series,
    DerivedLength,
};

pub use checks::*;
pub use examples::{eta_in_subgroup, verify_examples};
pub use report::{Status, VerificationReport, Witness, MAX_FAILURE_WITNESSES};

/// Groups up to this order get exhaustive normal-subgroup (and, for the
/// core inequality, subgroup) iteration.
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Groups up to this order get all `(a, b)` pairs in the product-identity
/// check; above it `a` runs over class representatives only.
pub const ALL_PAIRS_LIMIT: usize = 48;

/// Per-group data shared by the checkers, computed on first use.
pub struct Analysis<'g> {
    g: &'g Group,
    whole: Subgroup,
    center: OnceLock<Subgroup>,
    supersolvable: OnceLock<bool>,
    normals: OnceLock<NormalFamily>,
    class_centralizers: OnceLock<Vec<Subgroup>>,
    element_centralizers: OnceLock<Vec<Subgroup>>,
    eta_aa: OnceLock<Vec<usize>>,
}

/// Normal subgroups iterated by the lemma checks.
pub struct NormalFamily {
    pub subgroups: Vec<Subgroup>,
    pub exhaustive: bool,
}

impl NormalFamily {
    pub fn describe(&self) -> String {
        format!(
            "{} normal subgroups ({})",
            self.subgroups.len(),
            if self.exhaustive {
                "exhaustive"
            } else {
                "element closures, series terms, center"
            }
        )
    }
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g Group) -> Self {
        Analysis {
            g,
            whole: g.whole(),
            center: OnceLock::new(),
            supersolvable: OnceLock::new(),
            normals: OnceLock::new(),
            class_centralizers: OnceLock::new(),
            element_centralizers: OnceLock::new(),
            eta_aa: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g Group {
        self.g
    }

    pub fn whole(&self) -> &Subgroup {
        &self.whole
    }

    pub fn center(&self) -> &Subgroup {
        self.center.get_or_init(|| center(self.g))
    }

    pub fn is_supersolvable(&self) -> bool {
        *self.supersolvable.get_or_init(|| is_supersolvable(self.g))
    }

    pub fn normals(&self) -> &NormalFamily {
        self.normals.get_or_init(|| normal_family(self.g))
    }

    /// `C_G(A)` for each class, in class order.
    pub fn class_centralizers(&self) -> &[Subgroup] {
        self.class_centralizers.get_or_init(|| {
            all_classes(self.g)
                .iter()
                .map(|c| centralizer_of_set(self.g, c.members()).expect("classes are nonempty"))
                .collect()
        })
    }

    /// `C_G(a)` for each class representative, in class order.
    pub fn element_centralizers(&self) -> &[Subgroup] {
        self.element_centralizers.get_or_init(|| {
            all_classes(self.g)
                .iter()
                .map(|c| centralizer(self.g, c.representative()))
                .collect()
        })
    }

    /// `η(AA⁻¹)` for each class, in class order.
    pub fn eta_aa(&self) -> &[usize] {
        self.eta_aa.get_or_init(|| {
            all_classes(self.g)
                .iter()
                .map(|c| eta_aa_inv(self.g, c.representative()).expect("valid index"))
                .collect()
        })
    }
}

fn normal_family(g: &Group) -> NormalFamily {
    if g.order() <= EXHAUSTIVE_LIMIT {
        return NormalFamily {
            subgroups: normal_subgroups_exhaustive(g),
            exhaustive: true,
        };
    }
    let mut list = element_normal_closures(g);
    list.extend(derived_series(g, &g.whole()).expect("same group").terms);
    list.extend(chief_series(g).terms);
    list.extend(upper_central_series(g).terms);
    list.push(center(g));
    list.push(second_center(g));
    let mut seen = HashSet::new();
    list.retain(|n| seen.insert(n.set().clone()));
    list.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.set().to_vec().cmp(&b.set().to_vec()))
    });
    NormalFamily {
        subgroups: list,
        exhaustive: false,
    }
}

/// Memoized derived series keyed by the top subgroup, for repeated
/// `dl(H/K)` queries.
pub(crate) struct DerivedCache<'g> {
    g: &'g Group,
    series: HashMap<ElementSet, (Vec<Subgroup>, bool)>,
}

impl<'g> DerivedCache<'g> {
    pub(crate) fn new(g: &'g Group) -> Self {
        DerivedCache {
            g,
            series: HashMap::new(),
        }
    }

    /// Least `i` with `H^(i) ⊆ K`.
    pub(crate) fn dl(&mut self, top: &Subgroup, target: &Subgroup) -> DerivedLength {
        let g = self.g;
        let (terms, _) = self.series.entry(top.set().clone()).or_insert_with(|| {
            let s = derived_series(g, top).expect("same group");
            (s.terms, s.complete)
        });
        terms
            .iter()
            .position(|t| t.is_subgroup_of(target))
            .map_or(DerivedLength::NotSolvable, DerivedLength::Solvable)
    }
}

/// The per-group checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    TheoremA,
    TheoremB,
    CorollaryC,
    Lemma31,
    Lemma32,
    Lemma42,
    Lemma43,
    Lemma44,
    Lemma45,
    Lemma51,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::TheoremA,
        CheckName::TheoremB,
        CheckName::CorollaryC,
        CheckName::Lemma31,
        CheckName::Lemma32,
        CheckName::Lemma42,
        CheckName::Lemma43,
        CheckName::Lemma44,
        CheckName::Lemma45,
        CheckName::Lemma51,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::TheoremA => "theorem_A",
            CheckName::TheoremB => "theorem_B",
            CheckName::CorollaryC => "corollary_C",
            CheckName::Lemma31 => "lemma_3_1",
            CheckName::Lemma32 => "lemma_3_2",
            CheckName::Lemma42 => "lemma_4_2",
            CheckName::Lemma43 => "lemma_4_3",
            CheckName::Lemma44 => "lemma_4_4",
            CheckName::Lemma45 => "lemma_4_5",
            CheckName::Lemma51 => "lemma_5_1",
        }
    }

    pub fn run(self, an: &Analysis<'_>) -> VerificationReport {
        match self {
            CheckName::TheoremA => check_theorem_a(an),
            CheckName::TheoremB => check_theorem_b(an),
            CheckName::CorollaryC => check_corollary_c(an),
            CheckName::Lemma31 => check_lemma_3_1(an),
            CheckName::Lemma32 => check_lemma_3_2(an),
            CheckName::Lemma42 => check_lemma_4_2(an),
            CheckName::Lemma43 => check_lemma_4_3(an),
            CheckName::Lemma44 => check_lemma_4_4(an),
            CheckName::Lemma45 => check_lemma_4_5(an),
            CheckName::Lemma51 => check_lemma_5_1(an),
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Runs `checks` on one group, in the given order.
pub fn run_checks(g: &Group, checks: &[CheckName]) -> Vec<VerificationReport> {
    let an = Analysis::new(g);
    checks.iter().map(|c| c.run(&an)).collect()
}
