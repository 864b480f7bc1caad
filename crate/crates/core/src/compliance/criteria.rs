//! Executable checkers for the ideal-solution criteria, the canonical attack
//! scenarios they run against, and the allowance-deadlock search.
//!
//! Nothing here hard-codes a verdict: every Pass/Fail is computed by
//! executing transactions against the strategy under test, and every Fail
//! carries the trace that produced it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::amount::Amount;
use crate::compliance::oracle::{scenario_verdict, OracleVerdict};
use crate::interleave::{enumerate_interleavings, DEFAULT_ENUMERATION_BOUND};
use crate::ledger::{Address, Call, CallKind, Status, Transaction};
use crate::scenario::{
    attack_pending_set, run_scenario, AdversaryPolicy, Intent, LoweringMode, OwnerPolicy, Scenario,
    SpenderSpec,
};
use crate::strategy::{Strategy, StrategyName};
use crate::trace::{Trace, TraceBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl CriterionId {
    pub const ALL: [CriterionId; 7] = [
        CriterionId::C1,
        CriterionId::C2,
        CriterionId::C3,
        CriterionId::C4,
        CriterionId::C5,
        CriterionId::C6,
        CriterionId::C7,
    ];

    pub fn description(self) -> &'static str {
        match self {
            CriterionId::C1 => "approve input is an absolute allowance, not a relative adjustment",
            CriterionId::C2 => "approve overwrites the current allowance with the requested value",
            CriterionId::C3 => "a zero-value transferFrom executes normally and emits a Transfer",
            CriterionId::C4 => "a spender can split withdrawals across multiple transferFrom calls",
            CriterionId::C5 => "withdrawing a granted allowance in full never reverts",
            CriterionId::C6 => "the plain standard surface suffices: no extension methods needed",
            CriterionId::C7 => "no transaction ordering lets the spender exceed the intent",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = CriterionId::ALL.iter().position(|c| c == self).unwrap() + 1;
        write!(f, "C{i}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown criterion id `{0}`; expected C1..C7")]
pub struct UnknownCriterion(pub String);

impl FromStr for CriterionId {
    type Err = UnknownCriterion;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CriterionId::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownCriterion(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionVerdict {
    Pass,
    Fail,
    NotApplicable,
}

impl CriterionVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionVerdict::Pass => "Pass",
            CriterionVerdict::Fail => "Fail",
            CriterionVerdict::NotApplicable => "n/a",
        }
    }
}

/// A verdict plus, for failures, the trace that demonstrates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub verdict: CriterionVerdict,
    pub witness: Option<Trace>,
}

impl CriterionOutcome {
    fn pass() -> Self {
        CriterionOutcome {
            verdict: CriterionVerdict::Pass,
            witness: None,
        }
    }

    fn fail(witness: Trace) -> Self {
        CriterionOutcome {
            verdict: CriterionVerdict::Fail,
            witness: Some(witness),
        }
    }

    fn not_applicable() -> Self {
        CriterionOutcome {
            verdict: CriterionVerdict::NotApplicable,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == CriterionVerdict::Pass
    }
}

// ---------------------------------------------------------------------------
// Canonical attack scenarios
// ---------------------------------------------------------------------------

/// Owner discipline each strategy's documentation would prescribe. The
/// zero-first group includes a second authorized spender so the owner's
/// observation stays ambiguous — a busy account, the normal case.
fn native_shape(name: StrategyName) -> (OwnerPolicy, bool) {
    match name {
        StrategyName::Minime
        | StrategyName::TransferFlag
        | StrategyName::TransferFlagReset
        | StrategyName::ResidualTracking => (OwnerPolicy::ZeroFirst, true),
        _ => (OwnerPolicy::DirectAdjust, false),
    }
}

/// What a legacy, unmodified standard client would do against the same
/// contract: plain approvals only, zero-first where the contract's guards
/// force it.
fn erc20_only_shape(name: StrategyName) -> (OwnerPolicy, bool) {
    match name {
        StrategyName::MonolithDao => (OwnerPolicy::ZeroFirst, true),
        StrategyName::OverloadedApprove | StrategyName::SafeApprove => {
            (OwnerPolicy::DirectAdjust, false)
        }
        _ => native_shape(name),
    }
}

/// The canonical adjustment attack: grant `n`, adjust to `m`, with a
/// front-running spender racing the adjustment.
pub fn canonical_attack(name: StrategyName, mode: LoweringMode, n: u64, m: u64) -> Scenario {
    let (policy, decoy) = match mode {
        LoweringMode::Native => native_shape(name),
        LoweringMode::Erc20Only => erc20_only_shape(name),
    };
    let mut spenders = vec![SpenderSpec {
        addr: Address::new("bob"),
        balance: Amount::zero(),
        policy: AdversaryPolicy::FrontRunner {
            priority_boost: 10,
            recipient: None,
        },
    }];
    let mut intents = Vec::new();
    if decoy {
        spenders.push(SpenderSpec {
            addr: Address::new("carol"),
            balance: Amount::zero(),
            policy: AdversaryPolicy::Passive,
        });
        intents.push(Intent {
            spender: Address::new("carol"),
            value: Amount::from(150u64),
        });
    }
    intents.push(Intent {
        spender: Address::new("bob"),
        value: Amount::from(n),
    });
    intents.push(Intent {
        spender: Address::new("bob"),
        value: Amount::from(m),
    });
    Scenario {
        strategy: name,
        owner: Address::new("alice"),
        owner_balance: Amount::from(1000u64),
        owner_policy: policy,
        spenders,
        extras: vec![],
        trusted: false,
        lowering: mode,
        intents,
        declared_bound: None,
        interleave: None,
    }
}

/// One executed attack: the scenario, its trace, and the oracle's judgement.
#[derive(Debug, Clone)]
pub struct AttackRun {
    pub scenario: Scenario,
    pub trace: Trace,
    pub verdict: OracleVerdict,
}

/// Runs the canonical decrease (100 -> 50) and increase (100 -> 120)
/// adjustments for one lowering mode.
pub fn attack_runs(name: StrategyName, mode: LoweringMode) -> Vec<AttackRun> {
    [(100u64, 50u64), (100, 120)]
        .into_iter()
        .map(|(n, m)| {
            let scenario = canonical_attack(name, mode, n, m);
            let trace = run_scenario(&scenario).expect("canonical scenario is well-formed");
            let verdict = scenario_verdict(&scenario, &trace).expect("has one adjustment");
            AttackRun {
                scenario,
                trace,
                verdict,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Probe plumbing
// ---------------------------------------------------------------------------

const OWNER: &str = "alice";
const SPENDER: &str = "bob";

fn probe_builder(name: StrategyName) -> TraceBuilder {
    TraceBuilder::new(name, vec![(Address::new(OWNER), Amount::from(1000u64))])
}

/// Executes calls with automatic per-sender nonces; returns the builder for
/// further inspection.
fn execute_calls(builder: &mut TraceBuilder, calls: &[(&str, Call)]) -> bool {
    let mut next_nonce = std::collections::BTreeMap::new();
    for step in builder.steps() {
        let counter = next_nonce.entry(step.tx.sender.clone()).or_insert(0u64);
        *counter = (*counter).max(step.tx.nonce + 1);
    }
    let mut all_ok = true;
    for (sender, call) in calls {
        let sender = Address::new(*sender);
        let nonce = {
            let counter = next_nonce.entry(sender.clone()).or_insert(0);
            let n = *counter;
            *counter += 1;
            n
        };
        let receipt = builder.execute(Transaction {
            sender,
            call: call.clone(),
            priority: 10,
            nonce,
        });
        all_ok &= receipt.status == Status::Success;
    }
    all_ok
}

fn approve(value: u64) -> (&'static str, Call) {
    (
        OWNER,
        Call::Approve {
            spender: Address::new(SPENDER),
            value: Amount::from(value),
        },
    )
}

fn withdraw(value: u64) -> (&'static str, Call) {
    (
        SPENDER,
        Call::TransferFrom {
            from: Address::new(OWNER),
            to: Address::new(SPENDER),
            value: Amount::from(value),
        },
    )
}

/// Plain-surface calls that set the pair to `target`, honouring a zero-first
/// guard when the strategy enforces one on a live allowance.
fn discipline_set(name: StrategyName, live: &Amount, target: u64) -> Vec<(&'static str, Call)> {
    let guarded = matches!(
        name,
        StrategyName::Minime | StrategyName::MonolithDao | StrategyName::ResidualTracking
    );
    if guarded && !live.is_zero() && target != 0 {
        vec![approve(0), approve(target)]
    } else {
        vec![approve(target)]
    }
}

fn pair_allowance(builder: &TraceBuilder) -> Amount {
    builder.strategy().allowance(
        builder.state(),
        &Address::new(OWNER),
        &Address::new(SPENDER),
    )
}

// ---------------------------------------------------------------------------
// Criterion checkers
// ---------------------------------------------------------------------------

/// Evaluates one criterion for one strategy by running its probes.
pub fn check_criterion(name: StrategyName, id: CriterionId) -> CriterionOutcome {
    match id {
        CriterionId::C1 => check_absolute_input(name),
        CriterionId::C2 => check_overwrite(name),
        CriterionId::C3 => check_zero_transfer(name),
        CriterionId::C4 => check_split_withdrawals(name),
        CriterionId::C5 => check_initial_allowance_legitimacy(name),
        CriterionId::C6 => check_interoperability(name),
        CriterionId::C7 => check_race_freedom(name),
    }
}

/// C1: setting the same target from different prior allowances converges on
/// the same spendable amount (probed through the strategy's own discipline,
/// so guard reverts do not masquerade as relative semantics).
fn check_absolute_input(name: StrategyName) -> CriterionOutcome {
    let strategy = Strategy::get(name);
    if !strategy.supports(CallKind::Approve) {
        return CriterionOutcome::not_applicable();
    }
    let target = 120u64;
    let mut results = Vec::new();
    for prior in [None, Some(100u64)] {
        let mut builder = probe_builder(name);
        if let Some(p) = prior {
            execute_calls(&mut builder, &discipline_set(name, &Amount::zero(), p));
        }
        let live = pair_allowance(&builder);
        let ok = execute_calls(&mut builder, &discipline_set(name, &live, target));
        let result = pair_allowance(&builder);
        if !ok || result != Amount::from(target) {
            return CriterionOutcome::fail(builder.finish());
        }
        results.push(result);
    }
    debug_assert_eq!(results[0], results[1]);
    CriterionOutcome::pass()
}

/// C2: a single plain `approve(v)` from an arbitrary prior state — fresh,
/// granted, fully spent, partially spent — must succeed and leave the
/// queried allowance at exactly `v`.
fn check_overwrite(name: StrategyName) -> CriterionOutcome {
    let strategy = Strategy::get(name);
    if !strategy.supports(CallKind::Approve) {
        return CriterionOutcome::not_applicable();
    }
    let target = 120u64;
    let priors: Vec<Vec<(&str, Call)>> = vec![
        vec![],
        discipline_set(name, &Amount::zero(), 100),
        {
            let mut calls = discipline_set(name, &Amount::zero(), 100);
            calls.push(withdraw(100));
            calls
        },
        {
            let mut calls = discipline_set(name, &Amount::zero(), 100);
            calls.push(withdraw(40));
            calls
        },
    ];
    for prior in priors {
        let mut builder = probe_builder(name);
        execute_calls(&mut builder, &prior);
        let ok = execute_calls(&mut builder, &[approve(target)]);
        if !ok || pair_allowance(&builder) != Amount::from(target) {
            return CriterionOutcome::fail(builder.finish());
        }
    }
    CriterionOutcome::pass()
}

/// C3: `transferFrom` of zero tokens executes as a normal transfer and emits
/// the Transfer event.
fn check_zero_transfer(name: StrategyName) -> CriterionOutcome {
    let strategy = Strategy::get(name);
    if !strategy.supports(CallKind::TransferFrom) {
        return CriterionOutcome::not_applicable();
    }
    let mut builder = probe_builder(name);
    let ok = execute_calls(&mut builder, &[withdraw(0)]);
    let emitted_transfer = builder
        .steps()
        .last()
        .map(|s| {
            s.receipt.events.iter().any(
                |ev| matches!(ev, crate::ledger::Event::Transfer { value, .. } if value.is_zero()),
            )
        })
        .unwrap_or(false);
    if ok && emitted_transfer {
        CriterionOutcome::pass()
    } else {
        CriterionOutcome::fail(builder.finish())
    }
}

/// C4: a granted allowance can be consumed across several calls.
fn check_split_withdrawals(name: StrategyName) -> CriterionOutcome {
    let strategy = Strategy::get(name);
    if !strategy.supports(CallKind::TransferFrom) || !strategy.supports(CallKind::Approve) {
        return CriterionOutcome::not_applicable();
    }
    let mut builder = probe_builder(name);
    let mut calls = discipline_set(name, &Amount::zero(), 100);
    calls.extend([withdraw(40), withdraw(35), withdraw(25)]);
    if execute_calls(&mut builder, &calls) {
        CriterionOutcome::pass()
    } else {
        CriterionOutcome::fail(builder.finish())
    }
}

/// C5: withdrawing the full granted amount is always legitimate.
fn check_initial_allowance_legitimacy(name: StrategyName) -> CriterionOutcome {
    let strategy = Strategy::get(name);
    if !strategy.supports(CallKind::TransferFrom) || !strategy.supports(CallKind::Approve) {
        return CriterionOutcome::not_applicable();
    }
    let mut builder = probe_builder(name);
    let mut calls = discipline_set(name, &Amount::zero(), 100);
    calls.push(withdraw(100));
    if execute_calls(&mut builder, &calls) {
        CriterionOutcome::pass()
    } else {
        CriterionOutcome::fail(builder.finish())
    }
}

/// C6: an unmodified standard client must be fully served by the plain
/// surface. Three probes: grant-and-spend works, adjustments are reachable
/// with plain approvals alone, and the strategy's safety story must not
/// depend on callers migrating to extension methods.
fn check_interoperability(name: StrategyName) -> CriterionOutcome {
    // Grant and spend.
    let mut builder = probe_builder(name);
    let granted = execute_calls(&mut builder, &[approve(100)]);
    if !granted || pair_allowance(&builder) != Amount::from(100u64) {
        return CriterionOutcome::fail(builder.finish());
    }
    if !execute_calls(&mut builder, &[withdraw(60)]) {
        return CriterionOutcome::fail(builder.finish());
    }

    // Adjustment via plain approvals only (quiet network).
    let mut builder = probe_builder(name);
    let ok = execute_calls(&mut builder, &[approve(100), approve(0), approve(40)]);
    if !ok || pair_allowance(&builder) != Amount::from(40u64) {
        return CriterionOutcome::fail(builder.finish());
    }

    // Safety must not require the extension surface.
    let native_safe = attack_runs(name, LoweringMode::Native)
        .iter()
        .all(|run| !run.verdict.is_violated());
    let legacy = attack_runs(name, LoweringMode::Erc20Only);
    if native_safe {
        if let Some(run) = legacy.iter().find(|run| run.verdict.is_violated()) {
            return CriterionOutcome::fail(run.trace.clone());
        }
    }
    CriterionOutcome::pass()
}

/// C7: exhaustively execute every ordering of the canonical racing multiset;
/// no ordering may let the spender exceed the adjustment bound.
fn check_race_freedom(name: StrategyName) -> CriterionOutcome {
    let scenario = canonical_attack(name, LoweringMode::Native, 100, 50);
    let set = attack_pending_set(&scenario).expect("canonical scenario is well-formed");
    let traces = enumerate_interleavings(&set.setup, &set.pending, DEFAULT_ENUMERATION_BOUND)
        .expect("canonical multiset is within the bound");
    for trace in traces {
        let verdict = scenario_verdict(&scenario, &trace).expect("has one adjustment");
        if verdict.is_violated() {
            return CriterionOutcome::fail(trace);
        }
    }
    CriterionOutcome::pass()
}

// ---------------------------------------------------------------------------
// Deadlock search
// ---------------------------------------------------------------------------

/// Result of the bounded deadlock exploration.
#[derive(Debug, Clone)]
pub struct DeadlockReport {
    pub outcome: CriterionOutcome,
    pub states_explored: usize,
    pub nonzero_approvals_attempted: usize,
}

/// After one legitimate withdrawal, searches all call sequences (bounded
/// depth) for any way to make a nonzero approval succeed again. If none
/// exists the pair is deadlocked and the strategy fails.
///
/// Vacuous pass: if the grant-and-withdraw precondition itself cannot be
/// built (no approve surface), no reachable state can deadlock.
pub fn check_deadlock_free(name: StrategyName) -> DeadlockReport {
    check_deadlock_free_to_depth(name, 6)
}

pub fn check_deadlock_free_to_depth(name: StrategyName, depth: usize) -> DeadlockReport {
    let mut builder = probe_builder(name);
    let precondition_ok = execute_calls(&mut builder, &[approve(100), withdraw(40)]);
    if !precondition_ok {
        return DeadlockReport {
            outcome: CriterionOutcome::pass(),
            states_explored: 0,
            nonzero_approvals_attempted: 0,
        };
    }

    let strategy = Strategy::get(name);
    let owner = Address::new(OWNER);
    let spender = Address::new(SPENDER);
    let start = builder.state().clone();

    let mut visited = BTreeSet::new();
    visited.insert(start.hash());
    let mut frontier = vec![start];
    let mut states_explored = 1;
    let mut attempts = 0;

    for _ in 0..=depth {
        let mut next_frontier = Vec::new();
        for state in &frontier {
            for call in move_alphabet(&strategy, state, &owner, &spender) {
                let sender = match call {
                    Call::TransferFrom { .. } => spender.clone(),
                    _ => owner.clone(),
                };
                let is_nonzero_approval = match &call {
                    Call::Approve { value, .. }
                    | Call::OverloadedApprove { value, .. }
                    | Call::SafeApprove { value, .. } => !value.is_zero(),
                    Call::IncreaseApproval { delta, .. } => !delta.is_zero(),
                    _ => false,
                };
                let tx = Transaction {
                    sender,
                    call,
                    priority: 10,
                    nonce: 0, // exploration ignores nonce bookkeeping
                };
                let (next, receipt) = strategy.execute(state, &tx);
                if is_nonzero_approval {
                    attempts += 1;
                    if receipt.status == Status::Success
                        && !strategy.allowance(&next, &owner, &spender).is_zero()
                    {
                        return DeadlockReport {
                            outcome: CriterionOutcome::pass(),
                            states_explored,
                            nonzero_approvals_attempted: attempts,
                        };
                    }
                }
                if receipt.status == Status::Success && visited.insert(next.hash()) {
                    states_explored += 1;
                    next_frontier.push(next);
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }

    // Locked out: record the canonical failing attempt as the witness.
    execute_calls(&mut builder, &[approve(50)]);
    DeadlockReport {
        outcome: CriterionOutcome::fail(builder.finish()),
        states_explored,
        nonzero_approvals_attempted: attempts,
    }
}

/// Supported calls worth exploring from a state: zero and nonzero approvals
/// through every approval method the strategy offers, plus small transfers.
fn move_alphabet(
    strategy: &Strategy,
    state: &crate::ledger::LedgerState,
    owner: &Address,
    spender: &Address,
) -> Vec<Call> {
    let mut calls = Vec::new();
    let live = strategy.allowance(state, owner, spender);
    if strategy.supports(CallKind::Approve) {
        for v in [0u64, 50, 100] {
            calls.push(Call::Approve {
                spender: spender.clone(),
                value: Amount::from(v),
            });
        }
    }
    if strategy.supports(CallKind::IncreaseApproval) {
        calls.push(Call::IncreaseApproval {
            spender: spender.clone(),
            delta: Amount::from(50u64),
        });
        calls.push(Call::DecreaseApproval {
            spender: spender.clone(),
            delta: Amount::from(50u64),
        });
    }
    if strategy.supports(CallKind::OverloadedApprove) {
        calls.push(Call::OverloadedApprove {
            spender: spender.clone(),
            expected: live.clone(),
            value: Amount::from(50u64),
        });
    }
    if strategy.supports(CallKind::SafeApprove) {
        calls.push(Call::SafeApprove {
            spender: spender.clone(),
            expected: live.clone(),
            value: Amount::from(50u64),
        });
    }
    if strategy.supports(CallKind::TransferFrom) {
        for v in [0u64, 1] {
            calls.push(Call::TransferFrom {
                from: owner.clone(),
                to: spender.clone(),
                value: Amount::from(v),
            });
        }
    }
    calls
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_ids_parse_and_print() {
        assert_eq!("C2".parse::<CriterionId>().unwrap(), CriterionId::C2);
        assert_eq!("c7".parse::<CriterionId>().unwrap(), CriterionId::C7);
        assert!("C8".parse::<CriterionId>().is_err());
        assert_eq!(CriterionId::C5.to_string(), "C5");
    }

    #[test]
    fn overwrite_holds_for_standard_and_lifetime() {
        for name in [StrategyName::StandardErc20, StrategyName::Proposal2Lifetime] {
            let outcome = check_criterion(name, CriterionId::C2);
            assert!(outcome.passed(), "{name}: {:?}", outcome.verdict);
        }
    }

    #[test]
    fn overwrite_fails_for_adjusted_approve_with_witness() {
        let outcome = check_criterion(StrategyName::Proposal1CasApprove, CriterionId::C2);
        assert_eq!(outcome.verdict, CriterionVerdict::Fail);
        let witness = outcome.witness.expect("failures carry witnesses");
        // The witness ends with the approve(120) that stored 20: requested
        // 120 after 100 were already moved.
        let strategy = Strategy::get(StrategyName::Proposal1CasApprove);
        assert_eq!(
            strategy.allowance(
                &witness.final_state,
                &Address::new("alice"),
                &Address::new("bob")
            ),
            Amount::from(20u64)
        );
    }

    #[test]
    fn guarded_approves_fail_overwrite() {
        for name in [
            StrategyName::Minime,
            StrategyName::MonolithDao,
            StrategyName::TransferFlag,
            StrategyName::TransferFlagReset,
            StrategyName::ResidualTracking,
        ] {
            let outcome = check_criterion(name, CriterionId::C2);
            assert_eq!(outcome.verdict, CriterionVerdict::Fail, "{name}");
            assert!(outcome.witness.is_some(), "{name}");
        }
    }

    #[test]
    fn missing_methods_are_not_applicable() {
        for id in [
            CriterionId::C1,
            CriterionId::C2,
            CriterionId::C3,
            CriterionId::C4,
        ] {
            assert_eq!(
                check_criterion(StrategyName::MinimumViable, id).verdict,
                CriterionVerdict::NotApplicable,
                "{id}"
            );
        }
    }

    #[test]
    fn zero_transfer_and_splits_pass_across_the_catalog() {
        for name in StrategyName::ALL {
            for id in [CriterionId::C3, CriterionId::C4, CriterionId::C5] {
                let verdict = check_criterion(name, id).verdict;
                assert_ne!(verdict, CriterionVerdict::Fail, "{name} {id}");
            }
        }
    }

    #[test]
    fn interoperability_fails_where_safety_needs_extensions() {
        for name in [
            StrategyName::MonolithDao,
            StrategyName::OverloadedApprove,
            StrategyName::SafeApprove,
            StrategyName::MinimumViable,
        ] {
            let outcome = check_criterion(name, CriterionId::C6);
            assert_eq!(outcome.verdict, CriterionVerdict::Fail, "{name}");
        }
        for name in [StrategyName::StandardErc20, StrategyName::Proposal2Lifetime] {
            assert!(check_criterion(name, CriterionId::C6).passed(), "{name}");
        }
    }

    #[test]
    fn transfer_flag_deadlocks_and_reset_variant_does_not() {
        let locked = check_deadlock_free(StrategyName::TransferFlag);
        assert_eq!(locked.outcome.verdict, CriterionVerdict::Fail);
        assert!(locked.nonzero_approvals_attempted > 0);
        assert!(locked.outcome.witness.is_some());

        let reset = check_deadlock_free(StrategyName::TransferFlagReset);
        assert!(reset.outcome.passed());
    }

    #[test]
    fn deadlock_is_vacuously_absent_without_an_approve_surface() {
        let report = check_deadlock_free(StrategyName::MinimumViable);
        assert!(report.outcome.passed());
        assert_eq!(report.states_explored, 0);
    }
}
