//! Consolidated structure report: runs the whole analysis for one doubling
//! level and compares every computed quantity against a reference-value
//! table loaded from JSON.
//!
//! Reference values live in `data/expected.json`, keyed by doubling level;
//! nothing is compared that the table does not mention, so partial tables
//! degrade to an informational report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_algebra_identity, find_zero_divisor, AlgebraIdentity};
use crate::construct::build_cd_loop;
use crate::error::LoopError;
use crate::identities::{identity_report, IdentityName};
use crate::iso::{classify, composition_profile, ClassLabel, IsoClass};
use crate::lattice::SubloopLattice;
use crate::subloops::{
    census, enumerate_subloops, enumerate_subloops_by_closure, gaussian_binomial, is_normal,
    maximal_subloops, Subloop,
};
use crate::table::{is_latin_square, CayleyTable, SubTable};

/// Largest doubling level the full report runs at.
pub const MAX_REPORT_LEVEL: u32 = 5;

/// Reference values for one doubling level. Every field is optional; only
/// present fields are compared.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimExpectations {
    pub nontrivial_subloops: Option<usize>,
    pub census: Option<Vec<(usize, usize)>>,
    pub all_normal: Option<bool>,
    /// (label, order, class size), sorted by order descending then size.
    pub labeled_classes: Option<Vec<(String, usize, usize)>>,
    pub maximal_count: Option<usize>,
    /// Maximal-composition census of the order-32 subloops.
    pub profile_census: Option<Vec<(String, usize)>>,
    pub min_quasi_octonion: Option<usize>,
    /// Octonion / quasi-octonion split among the top loop's maximal subloops.
    pub top_maximal_split: Option<(usize, usize)>,
    pub identities_hold: Option<Vec<String>>,
    pub identities_fail: Option<Vec<String>>,
    pub octonion_class_moufang: Option<bool>,
    pub quasi_octonion_class_moufang: Option<bool>,
    pub algebra_flexible: Option<bool>,
    pub algebra_left_alternative: Option<bool>,
    pub algebra_right_alternative: Option<bool>,
    pub algebra_power_associative: Option<bool>,
    pub zero_divisor_supports_found: Option<usize>,
    pub zero_divisor_supports_absent: Option<usize>,
    /// Result of the zero-divisor search on the support `{0..7}`.
    pub octonion_support_zero_divisor: Option<bool>,
    pub lattice_modular: Option<bool>,
    pub lattice_nodes: Option<usize>,
}

/// Reference tables for all doubling levels.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct Expectations(pub BTreeMap<u32, DimExpectations>);

impl Expectations {
    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    pub fn for_level(&self, level: u32) -> DimExpectations {
        self.0.get(&level).cloned().unwrap_or_default()
    }
}

/// The reference table shipped with the crate.
pub fn default_expectations() -> &'static Expectations {
    static TABLE: OnceLock<Expectations> = OnceLock::new();
    TABLE.get_or_init(|| {
        Expectations::from_json(include_str!("../data/expected.json"))
            .expect("bundled expected.json parses")
    })
}

/// One report line: a computed quantity, optionally checked against a
/// reference value.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub section: &'static str,
    pub name: String,
    pub computed: String,
    pub expected: Option<String>,
    pub pass: Option<bool>,
}

impl CheckLine {
    fn info(section: &'static str, name: impl Into<String>, computed: impl ToString) -> Self {
        CheckLine {
            section,
            name: name.into(),
            computed: computed.to_string(),
            expected: None,
            pass: None,
        }
    }

    fn checked<T: PartialEq + std::fmt::Debug>(
        section: &'static str,
        name: impl Into<String>,
        computed: T,
        expected: Option<T>,
    ) -> Self {
        let pass = expected.as_ref().map(|e| *e == computed);
        CheckLine {
            section,
            name: name.into(),
            computed: format!("{computed:?}"),
            expected: expected.map(|e| format!("{e:?}")),
            pass,
        }
    }
}

/// Full analysis results for one level.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub dim_log: u32,
    pub order: usize,
    pub lines: Vec<CheckLine>,
}

impl StructureReport {
    /// True iff every checked line passed.
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass != Some(false))
    }

    pub fn checked_lines(&self) -> usize {
        self.lines.iter().filter(|l| l.pass.is_some()).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "signed basis loop report: dim_log = {}, algebra dimension {}, loop order {}",
            self.dim_log,
            1usize << self.dim_log,
            self.order
        );
        let mut section = "";
        for line in &self.lines {
            if line.section != section {
                section = line.section;
                let _ = writeln!(out, "\n[{section}]");
            }
            let verdict = match line.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "info",
            };
            match &line.expected {
                Some(e) => {
                    let _ = writeln!(
                        out,
                        "  {:<44} computed={:<24} expected={:<24} {}",
                        line.name, line.computed, e, verdict
                    );
                }
                None => {
                    let _ = writeln!(out, "  {:<44} computed={:<24} {}", line.name, line.computed, verdict);
                }
            }
        }
        let checked = self.checked_lines();
        let passed = self
            .lines
            .iter()
            .filter(|l| l.pass == Some(true))
            .count();
        let _ = writeln!(
            out,
            "\nRESULT: {} ({passed}/{checked} checks)",
            if self.all_pass() { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn moufang_holds(t: &impl CayleyTable) -> bool {
    crate::identities::check_identity(t, IdentityName::Moufang).holds
}

/// Runs the full analysis at the given level against a reference table.
pub fn run_report(dim_log: u32, expectations: &Expectations) -> Result<StructureReport, LoopError> {
    if dim_log > MAX_REPORT_LEVEL {
        return Err(LoopError::LevelTooLarge {
            level: dim_log,
            max: MAX_REPORT_LEVEL,
        });
    }
    let exp = expectations.for_level(dim_log);
    let l = build_cd_loop(dim_log)?;
    let mut lines = Vec::new();

    // construction
    lines.push(CheckLine::checked(
        "construction",
        "latin square",
        is_latin_square(&l),
        Some(true),
    ));
    let all = enumerate_subloops(&l);
    let by_closure = enumerate_subloops_by_closure(&l);
    lines.push(CheckLine::checked(
        "construction",
        "enumeration strategies agree",
        all == by_closure,
        Some(true),
    ));

    // census
    let proper: Vec<Subloop> = all
        .iter()
        .filter(|s| !s.is_trivial() && s.order() < l.order())
        .copied()
        .collect();
    lines.push(CheckLine::checked(
        "census",
        "non-trivial proper subloops",
        proper.len(),
        exp.nontrivial_subloops,
    ));
    let mut counts = census(&proper);
    counts.reverse(); // largest order first, mirroring the narrative
    lines.push(CheckLine::checked(
        "census",
        "subloops by order",
        counts.clone(),
        exp.census.clone(),
    ));
    let gaussian: Vec<(usize, usize)> = (0..=dim_log)
        .rev()
        .map(|k| (1usize << (k + 1), gaussian_binomial(dim_log, k) as usize))
        .collect();
    let full_counts: Vec<(usize, usize)> = {
        let mut m = BTreeMap::new();
        for s in all.iter().filter(|s| !s.is_trivial()) {
            *m.entry(s.order()).or_insert(0usize) += 1;
        }
        m.into_iter().rev().collect()
    };
    lines.push(CheckLine::checked(
        "census",
        "gaussian binomial cross-check",
        full_counts,
        Some(gaussian),
    ));

    // normality
    let normal_count = proper.iter().filter(|s| is_normal(&l, s)).count();
    lines.push(CheckLine::checked(
        "normality",
        "all non-trivial subloops normal",
        normal_count == proper.len(),
        exp.all_normal,
    ));
    lines.push(CheckLine::info("normality", "normal subloops", normal_count));

    // isomorphy classes
    let classes = classify(&l, &proper);
    let labeled: Vec<(String, usize, usize)> = classes
        .iter()
        .map(|c| (c.label.to_string(), c.order(), c.size()))
        .collect();
    lines.push(CheckLine::checked(
        "classes",
        "isomorphy classes (label, order, size)",
        labeled,
        exp.labeled_classes.clone(),
    ));
    lines.push(CheckLine::info("classes", "class count", classes.len()));

    // maximal subloops and composition profiles
    let full = all.last().expect("enumeration includes the full loop");
    let maximal = maximal_subloops(full, &all);
    lines.push(CheckLine::checked(
        "maximal",
        "maximal subloops of the full loop",
        maximal.len(),
        exp.maximal_count,
    ));
    let classes16: Vec<IsoClass> = classes.iter().filter(|c| c.order() == 16).cloned().collect();
    if let Some(expected_split) = exp.top_maximal_split {
        let split = composition_profile(full, &classes16)?;
        lines.push(CheckLine::checked(
            "maximal",
            "octonion / quasi-octonion split",
            (split.octonion, split.quasi_octonion),
            Some(expected_split),
        ));
    }
    if exp.profile_census.is_some() || exp.min_quasi_octonion.is_some() {
        let mut profile_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut min_quasi = usize::MAX;
        for s in proper.iter().filter(|s| s.order() == 32) {
            let p = composition_profile(s, &classes16)?;
            *profile_counts
                .entry((p.octonion, p.quasi_octonion))
                .or_insert(0) += 1;
            min_quasi = min_quasi.min(p.quasi_octonion);
        }
        // largest octonion share first, mirroring the narrative
        let computed: Vec<(String, usize)> = profile_counts
            .into_iter()
            .rev()
            .map(|((o, q), count)| (format!("{o}+{q}"), count))
            .collect();
        lines.push(CheckLine::checked(
            "maximal",
            "composition-type census",
            computed,
            exp.profile_census.clone(),
        ));
        lines.push(CheckLine::checked(
            "maximal",
            "minimum quasi-octonion count",
            if min_quasi == usize::MAX { 0 } else { min_quasi },
            exp.min_quasi_octonion,
        ));
    }

    // loop identities
    let report = identity_report(&l);
    let holding: Vec<String> = report
        .entries
        .iter()
        .filter(|e| e.holds)
        .map(|e| e.name.clone())
        .collect();
    let failing: Vec<String> = report
        .entries
        .iter()
        .filter(|e| !e.holds)
        .map(|e| e.name.clone())
        .collect();
    lines.push(CheckLine::checked(
        "identities",
        "identities holding on the full loop",
        holding,
        exp.identities_hold.clone(),
    ));
    lines.push(CheckLine::checked(
        "identities",
        "identities failing on the full loop",
        failing,
        exp.identities_fail.clone(),
    ));
    if exp.octonion_class_moufang.is_some() || exp.quasi_octonion_class_moufang.is_some() {
        let rep_of = |label: &ClassLabel| -> Option<SubTable> {
            classes
                .iter()
                .find(|c| c.label == *label)
                .map(|c| SubTable::extract(&l, c.representative.elements().iter()))
        };
        if let Some(table) = rep_of(&ClassLabel::Octonion) {
            lines.push(CheckLine::checked(
                "identities",
                "octonion-class representative Moufang",
                moufang_holds(&table),
                exp.octonion_class_moufang,
            ));
        }
        if let Some(table) = rep_of(&ClassLabel::QuasiOctonion) {
            lines.push(CheckLine::checked(
                "identities",
                "quasi-octonion-class representative Moufang",
                moufang_holds(&table),
                exp.quasi_octonion_class_moufang,
            ));
        }
    }

    // algebra identities
    for (identity, expected) in [
        (AlgebraIdentity::Flexible, exp.algebra_flexible),
        (AlgebraIdentity::LeftAlternative, exp.algebra_left_alternative),
        (AlgebraIdentity::RightAlternative, exp.algebra_right_alternative),
        (AlgebraIdentity::PowerAssociative, exp.algebra_power_associative),
    ] {
        let check = check_algebra_identity(&l, identity);
        let mut line = CheckLine::checked(
            "algebra",
            format!("algebra identity {}", identity.as_str()),
            check.holds,
            expected,
        );
        if let Some(w) = &check.witness {
            line.computed = format!("{} (witness: {w})", check.holds);
        }
        lines.push(line);
    }

    // zero divisors over the maximal subalgebra supports
    let mut found = 0usize;
    let mut absent = 0usize;
    for s in &maximal {
        match find_zero_divisor(&l, s.support_mask()) {
            Some(_) => found += 1,
            None => absent += 1,
        }
    }
    lines.push(CheckLine::checked(
        "zero divisors",
        "maximal supports with a pair",
        found,
        exp.zero_divisor_supports_found,
    ));
    lines.push(CheckLine::checked(
        "zero divisors",
        "maximal supports without a pair",
        absent,
        exp.zero_divisor_supports_absent,
    ));
    if let Some(expected) = exp.octonion_support_zero_divisor {
        let has = find_zero_divisor(&l, 0xff).is_some();
        lines.push(CheckLine::checked(
            "zero divisors",
            "octonion support {0..7} has a pair",
            has,
            Some(expected),
        ));
    }

    // lattice
    let lattice = SubloopLattice::build(&l, &all)?;
    lines.push(CheckLine::checked(
        "lattice",
        "lattice nodes",
        lattice.nodes().len(),
        exp.lattice_nodes,
    ));
    lines.push(CheckLine::checked(
        "lattice",
        "modular",
        lattice.is_modular().is_ok(),
        exp.lattice_modular,
    ));
    lines.push(CheckLine::info("lattice", "height", lattice.height()));
    lines.push(CheckLine::info(
        "lattice",
        "cover edges",
        lattice.covers().len(),
    ));

    Ok(StructureReport {
        dim_log,
        order: l.order(),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_expectations_parse() {
        let exp = default_expectations();
        assert!(exp.0.contains_key(&5));
        assert_eq!(exp.for_level(5).nontrivial_subloops, Some(373));
        // unknown level degrades to an empty table
        assert_eq!(exp.for_level(9).nontrivial_subloops, None);
    }

    #[test]
    fn quaternion_report_passes() {
        let report = run_report(2, default_expectations()).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        assert!(report.checked_lines() >= 10);
    }

    #[test]
    fn bundled_reports_pass_at_every_level() {
        for level in 0..=MAX_REPORT_LEVEL {
            let report = run_report(level, default_expectations()).unwrap();
            assert!(report.all_pass(), "level {level}\n{}", report.to_text());
        }
    }

    #[test]
    fn report_detects_mismatches() {
        let mut exp = default_expectations().clone();
        exp.0.get_mut(&2).unwrap().nontrivial_subloops = Some(999);
        let report = run_report(2, &exp).unwrap();
        assert!(!report.all_pass());
        assert!(report.to_text().contains("FAIL"));
    }

    #[test]
    fn report_rejects_large_levels() {
        assert!(matches!(
            run_report(6, default_expectations()),
            Err(LoopError::LevelTooLarge { .. })
        ));
    }
}
