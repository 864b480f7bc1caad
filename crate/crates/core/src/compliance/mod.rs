//! The compliance harness: runs every strategy through the criteria
//! checkers and the canonical attacks and assembles the comparison matrix.
//! Every cell is derived from executed traces; failures reference the trace
//! that produced them.

pub mod criteria;
pub mod oracle;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scenario::LoweringMode;
use crate::strategy::StrategyName;
use crate::trace::{Trace, TraceHeader, TraceRecord};

pub use criteria::{
    attack_runs, canonical_attack, check_criterion, check_deadlock_free,
    check_deadlock_free_to_depth, AttackRun, CriterionId, CriterionOutcome, CriterionVerdict,
    DeadlockReport, UnknownCriterion,
};
pub use oracle::{attack_oracle, scenario_verdict, OracleError, OracleVerdict};

/// Whether a strategy stops the adjustment attack, and on which surface.
/// `OnlyViaNonStandardMethods` marks the strategies that are safe for
/// migrated callers but leave legacy approve callers exposed — collapsing
/// that into Yes or No would erase the distinction the matrix exists to
/// show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MitigationVerdict {
    Yes,
    No,
    OnlyViaNonStandardMethods,
}

impl MitigationVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            MitigationVerdict::Yes => "Yes",
            MitigationVerdict::No => "No",
            MitigationVerdict::OnlyViaNonStandardMethods => "NonStd",
        }
    }
}

/// A Pass/Fail matrix cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cell {
    Pass,
    Fail,
}

impl Cell {
    fn from_outcome(outcome: &CriterionOutcome) -> Cell {
        if outcome.passed() {
            Cell::Pass
        } else {
            Cell::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Cell::Pass => "Pass",
            Cell::Fail => "Fail",
        }
    }
}

/// One matrix row, fully backed by executed traces.
#[derive(Debug, Clone)]
pub struct StrategyReport {
    pub name: StrategyName,
    pub mitigates: MitigationVerdict,
    /// Violating trace behind a No/NonStd verdict.
    pub mitigation_witness: Option<Trace>,
    pub approve_semantics: Cell,
    pub interoperable: Cell,
    pub race_free: Cell,
    pub deadlock_free: Cell,
    pub criteria: BTreeMap<CriterionId, CriterionOutcome>,
    pub deadlock: DeadlockReport,
}

#[derive(Debug, Clone)]
pub struct ComplianceReport {
    pub rows: Vec<StrategyReport>,
}

/// Decides the mitigation cell by running the canonical attacks on the
/// strategy's own terms first, then on the plain standard surface.
pub fn mitigation(name: StrategyName) -> (MitigationVerdict, Option<Trace>) {
    let native = attack_runs(name, LoweringMode::Native);
    if let Some(run) = native.iter().find(|r| r.verdict.is_violated()) {
        return (MitigationVerdict::No, Some(run.trace.clone()));
    }
    let legacy = attack_runs(name, LoweringMode::Erc20Only);
    if let Some(run) = legacy.iter().find(|r| r.verdict.is_violated()) {
        return (
            MitigationVerdict::OnlyViaNonStandardMethods,
            Some(run.trace.clone()),
        );
    }
    (MitigationVerdict::Yes, None)
}

/// Runs every checker for every catalog entry, in catalog order.
pub fn build_matrix() -> ComplianceReport {
    let rows = StrategyName::ALL
        .into_iter()
        .map(|name| {
            let criteria: BTreeMap<CriterionId, CriterionOutcome> = CriterionId::ALL
                .into_iter()
                .map(|id| (id, check_criterion(name, id)))
                .collect();
            let deadlock = check_deadlock_free(name);
            let (mitigates, mitigation_witness) = mitigation(name);
            let both_pass =
                criteria[&CriterionId::C1].passed() && criteria[&CriterionId::C2].passed();
            StrategyReport {
                name,
                mitigates,
                mitigation_witness,
                approve_semantics: if both_pass { Cell::Pass } else { Cell::Fail },
                interoperable: Cell::from_outcome(&criteria[&CriterionId::C6]),
                race_free: Cell::from_outcome(&criteria[&CriterionId::C7]),
                deadlock_free: Cell::from_outcome(&deadlock.outcome),
                criteria,
                deadlock,
            }
        })
        .collect();
    ComplianceReport { rows }
}

impl StrategyReport {
    pub fn all_pass(&self) -> bool {
        self.mitigates == MitigationVerdict::Yes
            && self.approve_semantics == Cell::Pass
            && self.interoperable == Cell::Pass
            && self.race_free == Cell::Pass
            && self.deadlock_free == Cell::Pass
    }
}

impl ComplianceReport {
    pub fn row(&self, name: StrategyName) -> &StrategyReport {
        self.rows
            .iter()
            .find(|r| r.name == name)
            .expect("matrix covers the full catalog")
    }

    pub fn all_pass_rows(&self) -> Vec<StrategyName> {
        self.rows
            .iter()
            .filter(|r| r.all_pass())
            .map(|r| r.name)
            .collect()
    }

    /// Fixed-width text rendering of the matrix.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<22} {:<9} {:<17} {:<13} {:<9} {}\n",
            "strategy",
            "mitigates",
            "approve-semantics",
            "interoperable",
            "race-free",
            "deadlock-free"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<22} {:<9} {:<17} {:<13} {:<9} {}\n",
                row.name.as_str(),
                row.mitigates.as_str(),
                row.approve_semantics.as_str(),
                row.interoperable.as_str(),
                row.race_free.as_str(),
                row.deadlock_free.as_str(),
            ));
        }
        out
    }

    /// Machine-readable report: verdict per strategy per criterion, each
    /// failure with its witness trace inline.
    pub fn to_json_string(&self) -> String {
        let rows: Vec<RowJson> = self.rows.iter().map(RowJson::from).collect();
        let doc = ReportJson {
            schema: "allowance-lab/matrix/1",
            rows,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}

#[derive(Serialize)]
struct ReportJson {
    schema: &'static str,
    rows: Vec<RowJson>,
}

#[derive(Serialize)]
struct TraceExport {
    header: TraceHeader,
    records: Vec<TraceRecord>,
}

impl From<&Trace> for TraceExport {
    fn from(trace: &Trace) -> Self {
        let (header, records) = trace.to_export();
        TraceExport { header, records }
    }
}

#[derive(Serialize)]
struct CriterionJson {
    verdict: CriterionVerdict,
    description: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<TraceExport>,
}

#[derive(Serialize)]
struct RowJson {
    strategy: StrategyName,
    mitigates: MitigationVerdict,
    approve_semantics: Cell,
    interoperable: Cell,
    race_free: Cell,
    deadlock_free: Cell,
    criteria: BTreeMap<String, CriterionJson>,
    deadlock: CriterionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    mitigation_witness: Option<TraceExport>,
}

impl From<&StrategyReport> for RowJson {
    fn from(row: &StrategyReport) -> Self {
        let criteria = row
            .criteria
            .iter()
            .map(|(id, outcome)| {
                (
                    id.to_string(),
                    CriterionJson {
                        verdict: outcome.verdict,
                        description: id.description(),
                        witness: outcome.witness.as_ref().map(TraceExport::from),
                    },
                )
            })
            .collect();
        RowJson {
            strategy: row.name,
            mitigates: row.mitigates,
            approve_semantics: row.approve_semantics,
            interoperable: row.interoperable,
            race_free: row.race_free,
            deadlock_free: row.deadlock_free,
            criteria,
            deadlock: CriterionJson {
                verdict: row.deadlock.outcome.verdict,
                description: "a used pair can still receive a nonzero approval",
                witness: row.deadlock.outcome.witness.as_ref().map(TraceExport::from),
            },
            mitigation_witness: row.mitigation_witness.as_ref().map(TraceExport::from),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mitigation_verdicts_match_prose() {
        use MitigationVerdict::*;
        let expected = [
            (StrategyName::StandardErc20, No),
            (StrategyName::Minime, No),
            (StrategyName::MonolithDao, OnlyViaNonStandardMethods),
            (StrategyName::TransferFlag, Yes),
            (StrategyName::TransferFlagReset, No),
            (StrategyName::ResidualTracking, No),
            (StrategyName::OverloadedApprove, OnlyViaNonStandardMethods),
            (StrategyName::SafeApprove, OnlyViaNonStandardMethods),
            (StrategyName::MinimumViable, Yes),
            (StrategyName::Proposal1CasApprove, Yes),
            (StrategyName::Proposal2Lifetime, Yes),
        ];
        for (name, verdict) in expected {
            let (actual, witness) = mitigation(name);
            assert_eq!(actual, verdict, "{name}");
            if actual != Yes {
                assert!(witness.is_some(), "{name} must carry a violating trace");
            }
        }
    }

    #[test]
    fn witness_traces_replay_to_the_same_verdict() {
        let (verdict, witness) = mitigation(StrategyName::StandardErc20);
        assert_eq!(verdict, MitigationVerdict::No);
        let witness = witness.unwrap();
        let (header, records) = witness.to_export();
        let replayed = crate::trace::replay(&header, &records).unwrap();
        assert_eq!(replayed, witness);
        // The replayed trace carries the same ground truth, so the oracle
        // reaches the same judgement.
        let scenario = canonical_attack(StrategyName::StandardErc20, LoweringMode::Native, 100, 50);
        let original = crate::compliance::scenario_verdict(&scenario, &witness).unwrap();
        let again = crate::compliance::scenario_verdict(&scenario, &replayed).unwrap();
        assert_eq!(original, again);
        assert!(original.is_violated());
    }

    /// Cells are execution-derived: every failing cell is backed by a trace
    /// that can be re-executed from its own record.
    #[test]
    fn fail_cells_carry_replayable_witnesses() {
        let report = build_matrix();
        let mut witnesses_checked = 0;
        for row in &report.rows {
            for (id, outcome) in &row.criteria {
                if outcome.verdict == CriterionVerdict::Fail {
                    let witness = outcome
                        .witness
                        .as_ref()
                        .unwrap_or_else(|| panic!("{} {id} lacks a witness", row.name));
                    let (header, records) = witness.to_export();
                    let replayed = crate::trace::replay(&header, &records).unwrap();
                    assert_eq!(&replayed, witness, "{} {id}", row.name);
                    witnesses_checked += 1;
                }
            }
            if row.deadlock_free == Cell::Fail {
                let witness = row.deadlock.outcome.witness.as_ref().unwrap();
                let (header, records) = witness.to_export();
                assert!(crate::trace::replay(&header, &records).is_ok());
                witnesses_checked += 1;
            }
        }
        assert!(witnesses_checked > 10, "only {witnesses_checked} witnesses");
    }
}
