//! Scripted scenarios: an owner adjusting a spender's allowance under a
//! chosen discipline, an adversary that may front-run the adjustment, and a
//! deterministic runner that lowers owner intents into transactions and
//! executes them in mempool order.
//!
//! The adversary model is the asymmetric-insertion attacker: it reacts to
//! *broadcast* transactions, not confirmed state. When it sees a pending
//! approval that touches an allowance it could still spend, it inserts a
//! maximal withdrawal at higher priority, and after the approval confirms it
//! withdraws whatever the new allowance appears to offer. Its view of "what
//! it can spend" is the public allowance query — it does not reason about
//! lifetime semantics, which is exactly what makes the lifetime strategy's
//! final withdrawal fail on-chain.

use std::collections::{BTreeMap, BTreeSet};

use crate::amount::Amount;
use crate::ledger::{Address, Call, Status, Transaction};
use crate::mempool::execution_order;
use crate::observe::{observe_steps, Observation};
use crate::strategy::{Strategy, StrategyName};
use crate::trace::{Trace, TraceBuilder};

/// Priority carried by owner transactions; a front-runner adds its boost on
/// top of this.
pub const OWNER_PRIORITY: u64 = 10;

/// How the owner turns "set the allowance to v" into transactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwnerPolicy {
    /// Broadcast the single best adjustment call the strategy offers.
    DirectAdjust,
    /// Zero the allowance first, wait for confirmation, inspect the
    /// observation, and only then broadcast the target value.
    ZeroFirst,
}

/// Behaviour of a spender actor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversaryPolicy {
    Passive,
    /// Reacts to pending approvals on its own pair: front-runs them with a
    /// maximal withdrawal and drains again after they confirm.
    FrontRunner {
        priority_boost: u64,
        /// Where stolen tokens go; defaults to the spender itself.
        recipient: Option<Address>,
    },
}

impl AdversaryPolicy {
    pub fn is_front_runner(&self) -> bool {
        matches!(self, AdversaryPolicy::FrontRunner { .. })
    }
}

/// Whether intent lowering may use the strategy's extension methods or must
/// stay on the plain standard surface (what an unmodified legacy client can
/// reach).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoweringMode {
    #[default]
    Native,
    Erc20Only,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpenderSpec {
    pub addr: Address,
    pub balance: Amount,
    pub policy: AdversaryPolicy,
}

/// One owner intent: set `spender`'s allowance to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intent {
    pub spender: Address,
    pub value: Amount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterleaveSpec {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// A complete experiment description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub strategy: StrategyName,
    pub owner: Address,
    pub owner_balance: Amount,
    pub owner_policy: OwnerPolicy,
    pub spenders: Vec<SpenderSpec>,
    pub extras: Vec<(Address, Amount)>,
    pub trusted: bool,
    pub lowering: LoweringMode,
    pub intents: Vec<Intent>,
    pub declared_bound: Option<Amount>,
    pub interleave: Option<InterleaveSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("actor `{0}` is declared more than once")]
    DuplicateActor(Address),
    #[error("`{0}` is referenced but never declared")]
    UndeclaredActor(Address),
    #[error("the spender is marked trusted, which rules out a front-running policy")]
    TrustedFrontRunner,
    #[error("scenario has no intents to execute")]
    NoIntents,
    #[error("scenario declares no spenders")]
    NoSpenders,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let mut seen = BTreeSet::new();
        let mut declare = |addr: &Address| -> Result<(), ScenarioError> {
            if !seen.insert(addr.clone()) {
                return Err(ScenarioError::DuplicateActor(addr.clone()));
            }
            Ok(())
        };
        declare(&self.owner)?;
        for spec in &self.spenders {
            declare(&spec.addr)?;
        }
        for (addr, _) in &self.extras {
            declare(addr)?;
        }
        if self.spenders.is_empty() {
            return Err(ScenarioError::NoSpenders);
        }
        if self.intents.is_empty() {
            return Err(ScenarioError::NoIntents);
        }
        for intent in &self.intents {
            if !self.spenders.iter().any(|s| s.addr == intent.spender) {
                return Err(ScenarioError::UndeclaredActor(intent.spender.clone()));
            }
        }
        for spec in &self.spenders {
            if let AdversaryPolicy::FrontRunner {
                recipient: Some(recipient),
                ..
            } = &spec.policy
            {
                if !seen.contains(recipient) {
                    return Err(ScenarioError::UndeclaredActor(recipient.clone()));
                }
            }
            if self.trusted && spec.policy.is_front_runner() {
                return Err(ScenarioError::TrustedFrontRunner);
            }
        }
        Ok(())
    }

    /// Declared actors with nonzero balances, in declaration order.
    pub fn genesis_balances(&self) -> Vec<(Address, Amount)> {
        let mut balances = Vec::new();
        if !self.owner_balance.is_zero() {
            balances.push((self.owner.clone(), self.owner_balance.clone()));
        }
        for spec in &self.spenders {
            if !spec.balance.is_zero() {
                balances.push((spec.addr.clone(), spec.balance.clone()));
            }
        }
        for (addr, amount) in &self.extras {
            if !amount.is_zero() {
                balances.push((addr.clone(), amount.clone()));
            }
        }
        balances
    }

    /// The spender the attack oracle judges: the front-runner if one is
    /// declared, otherwise the first spender.
    pub fn attacked_spender(&self) -> &Address {
        self.spenders
            .iter()
            .find(|s| s.policy.is_front_runner())
            .map(|s| &s.addr)
            .unwrap_or(&self.spenders[0].addr)
    }

    /// Allowance adjustments for the attacked spender: consecutive pairs of
    /// its intent values. The initial grant is setup, not an adjustment.
    pub fn adjustments(&self) -> Vec<(Amount, Amount)> {
        let spender = self.attacked_spender();
        let values: Vec<&Amount> = self
            .intents
            .iter()
            .filter(|i| &i.spender == spender)
            .map(|i| &i.value)
            .collect();
        values
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Intent lowering
// ---------------------------------------------------------------------------

/// The transactions one intent turns into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoweringPlan {
    /// Nothing to broadcast (a relative adjustment of zero).
    Skip,
    /// A single adjustment call.
    Direct(Call),
    /// Zero the pair, confirm, decide, then set the target.
    ZeroThenTarget { spender: Address, value: Amount },
}

/// Strategy-aware lowering of "set `spender`'s allowance to `value`".
///
/// `prev` is the owner's intended previous value for the pair (what it
/// believes it set last time); `live` is the allowance it reads from public
/// state before broadcasting. Relative and compare-and-set calls are
/// computed from `prev` — the owner cannot know whether `live` is about to
/// change underneath it, which is the whole point of the exercise.
pub fn lower_intent(
    strategy: StrategyName,
    mode: LoweringMode,
    policy: OwnerPolicy,
    prev: &Amount,
    live: &Amount,
    spender: &Address,
    value: &Amount,
) -> LoweringPlan {
    let plain = |value: &Amount| Call::Approve {
        spender: spender.clone(),
        value: value.clone(),
    };
    if policy == OwnerPolicy::ZeroFirst {
        if !live.is_zero() && !value.is_zero() {
            return LoweringPlan::ZeroThenTarget {
                spender: spender.clone(),
                value: value.clone(),
            };
        }
        return LoweringPlan::Direct(plain(value));
    }
    if mode == LoweringMode::Erc20Only {
        return LoweringPlan::Direct(plain(value));
    }
    match strategy {
        StrategyName::MonolithDao if !prev.is_zero() => {
            if value > prev {
                LoweringPlan::Direct(Call::IncreaseApproval {
                    spender: spender.clone(),
                    delta: value.checked_sub(prev).expect("value > prev"),
                })
            } else if value < prev {
                LoweringPlan::Direct(Call::DecreaseApproval {
                    spender: spender.clone(),
                    delta: prev.checked_sub(value).expect("prev > value"),
                })
            } else {
                LoweringPlan::Skip
            }
        }
        StrategyName::OverloadedApprove => LoweringPlan::Direct(Call::OverloadedApprove {
            spender: spender.clone(),
            expected: prev.clone(),
            value: value.clone(),
        }),
        StrategyName::SafeApprove => LoweringPlan::Direct(Call::SafeApprove {
            spender: spender.clone(),
            expected: prev.clone(),
            value: value.clone(),
        }),
        _ => LoweringPlan::Direct(plain(value)),
    }
}

/// The zero-first abort rule, computed purely from what the owner can see.
///
/// Proceed unless the window since the adjustment began shows a transfer out
/// of the owner *and* exactly one spender has ever been authorized — the
/// only case in which the transfer is attributable. With two or more
/// authorized spenders the events cannot prove who moved the tokens, so the
/// rule has nothing sound to act on and proceeds.
pub fn zero_first_proceeds(before: &Observation, after: &Observation, owner: &Address) -> bool {
    let drained = after.transfer_from_reader_since(owner, before.visible_events.len());
    let authorized = after.authorized_spenders(owner);
    !(drained && authorized.len() == 1)
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

struct ScenarioRunner<'a> {
    scenario: &'a Scenario,
    strategy: Strategy,
    builder: TraceBuilder,
    next_nonce: BTreeMap<Address, u64>,
    /// Owner's intended current value per spender.
    intended: BTreeMap<Address, Amount>,
    /// Front-runners that have observed an adjustment attempt and turned
    /// hostile.
    latched: BTreeSet<Address>,
    adversaries_enabled: bool,
}

impl<'a> ScenarioRunner<'a> {
    fn new(scenario: &'a Scenario, adversaries_enabled: bool) -> Self {
        ScenarioRunner {
            scenario,
            strategy: Strategy::get(scenario.strategy),
            builder: TraceBuilder::new(scenario.strategy, scenario.genesis_balances()),
            next_nonce: BTreeMap::new(),
            intended: BTreeMap::new(),
            latched: BTreeSet::new(),
            adversaries_enabled,
        }
    }

    fn take_nonce(&mut self, sender: &Address) -> u64 {
        let counter = self.next_nonce.entry(sender.clone()).or_insert(0);
        let nonce = *counter;
        *counter += 1;
        nonce
    }

    fn tx(&mut self, sender: &Address, call: Call, priority: u64) -> Transaction {
        Transaction {
            sender: sender.clone(),
            call,
            priority,
            nonce: self.take_nonce(sender),
        }
    }

    fn front_runners(&self) -> Vec<(Address, u64, Address)> {
        if !self.adversaries_enabled {
            return Vec::new();
        }
        self.scenario
            .spenders
            .iter()
            .filter_map(|spec| match &spec.policy {
                AdversaryPolicy::FrontRunner {
                    priority_boost,
                    recipient,
                } => Some((
                    spec.addr.clone(),
                    *priority_boost,
                    recipient.clone().unwrap_or_else(|| spec.addr.clone()),
                )),
                AdversaryPolicy::Passive => None,
            })
            .collect()
    }

    fn spendable_view(&self, spender: &Address) -> Amount {
        self.strategy
            .allowance(self.builder.state(), &self.scenario.owner, spender)
    }

    /// Broadcasts one owner call, lets front-runners react to the pending
    /// broadcast, executes the round in mempool order, then lets hostile
    /// spenders drain any allowance the confirmed approval left them.
    fn owner_round(&mut self, call: Call) {
        let owner = self.scenario.owner.clone();
        let target = call.approval_target().cloned();
        let owner_tx = self.tx(&owner, call, OWNER_PRIORITY);
        let mut round = vec![owner_tx];

        if let Some(target) = &target {
            for (adv, boost, recipient) in self.front_runners() {
                if adv != *target {
                    continue;
                }
                let view = self.spendable_view(&adv);
                if view.is_zero() {
                    continue;
                }
                // An adjustment is pending and there is allowance left to
                // take: go hostile and race the adjustment.
                self.latched.insert(adv.clone());
                let call = Call::TransferFrom {
                    from: owner.clone(),
                    to: recipient.clone(),
                    value: view,
                };
                let tx = self.tx(&adv, call, OWNER_PRIORITY + boost);
                round.push(tx);
            }
        }

        let mut approved: BTreeSet<Address> = BTreeSet::new();
        for tx in execution_order(round) {
            let is_owner_approval = tx.sender == owner;
            let tx_target = tx.call.approval_target().cloned();
            let receipt = self.builder.execute(tx);
            if is_owner_approval && receipt.status == Status::Success {
                if let Some(t) = tx_target {
                    approved.insert(t);
                }
            }
        }

        // Post-confirmation withdrawals by hostile spenders.
        for (adv, _, recipient) in self.front_runners() {
            if !self.latched.contains(&adv) || !approved.contains(&adv) {
                continue;
            }
            let view = self.spendable_view(&adv);
            if view.is_zero() {
                continue;
            }
            let call = Call::TransferFrom {
                from: owner.clone(),
                to: recipient.clone(),
                value: view,
            };
            let tx = self.tx(&adv, call, OWNER_PRIORITY);
            self.builder.execute(tx);
        }
    }

    fn run_intent(&mut self, intent: &Intent) {
        let owner = self.scenario.owner.clone();
        let prev = self
            .intended
            .get(&intent.spender)
            .cloned()
            .unwrap_or_else(Amount::zero);
        let live = self.spendable_view(&intent.spender);
        let plan = lower_intent(
            self.scenario.strategy,
            self.scenario.lowering,
            self.scenario.owner_policy,
            &prev,
            &live,
            &intent.spender,
            &intent.value,
        );
        match plan {
            LoweringPlan::Skip => {}
            LoweringPlan::Direct(call) => {
                self.owner_round(call);
                self.intended
                    .insert(intent.spender.clone(), intent.value.clone());
            }
            LoweringPlan::ZeroThenTarget { spender, value } => {
                let before = observe_steps(self.builder.steps(), &owner);
                self.owner_round(Call::Approve {
                    spender: spender.clone(),
                    value: Amount::zero(),
                });
                self.intended.insert(spender.clone(), Amount::zero());
                let after = observe_steps(self.builder.steps(), &owner);
                if zero_first_proceeds(&before, &after, &owner) {
                    self.owner_round(Call::Approve {
                        spender: spender.clone(),
                        value: value.clone(),
                    });
                    self.intended.insert(spender, value);
                }
            }
        }
    }

    fn finish(self) -> Trace {
        self.builder.finish()
    }
}

/// Executes a scenario end to end and returns the full trace.
pub fn run_scenario(scenario: &Scenario) -> Result<Trace, ScenarioError> {
    scenario.validate()?;
    let mut runner = ScenarioRunner::new(scenario, true);
    for intent in &scenario.intents {
        runner.run_intent(intent);
    }
    Ok(runner.finish())
}

// ---------------------------------------------------------------------------
// Canonical attack pending set
// ---------------------------------------------------------------------------

/// The racing transaction multiset for a scenario's final adjustment: the
/// owner's lowered calls for the last intent, broadcast all at once, plus the
/// front-runner's withdrawal of the previous grant and its follow-up
/// withdrawal of the new target. Everything before the last intent is
/// executed quietly as setup.
#[derive(Debug, Clone)]
pub struct AttackSet {
    /// Setup trace (all intents but the last, no adversary activity).
    pub setup: Trace,
    /// The transactions left racing in the mempool.
    pub pending: Vec<Transaction>,
}

pub fn attack_pending_set(scenario: &Scenario) -> Result<AttackSet, ScenarioError> {
    scenario.validate()?;
    let mut runner = ScenarioRunner::new(scenario, false);
    let (setup_intents, last) = scenario.intents.split_at(scenario.intents.len() - 1);
    for intent in setup_intents {
        runner.run_intent(intent);
    }
    let last = &last[0];

    let prev = runner
        .intended
        .get(&last.spender)
        .cloned()
        .unwrap_or_else(Amount::zero);
    let live = runner.spendable_view(&last.spender);
    let plan = lower_intent(
        scenario.strategy,
        scenario.lowering,
        scenario.owner_policy,
        &prev,
        &live,
        &last.spender,
        &last.value,
    );
    let owner = scenario.owner.clone();
    let owner_calls: Vec<Call> = match plan {
        LoweringPlan::Skip => Vec::new(),
        LoweringPlan::Direct(call) => vec![call],
        LoweringPlan::ZeroThenTarget { spender, value } => vec![
            Call::Approve {
                spender: spender.clone(),
                value: Amount::zero(),
            },
            Call::Approve { spender, value },
        ],
    };
    let mut pending = Vec::new();
    for call in owner_calls {
        let tx = runner.tx(&owner, call, OWNER_PRIORITY);
        pending.push(tx);
    }
    for spec in &scenario.spenders {
        let AdversaryPolicy::FrontRunner {
            priority_boost,
            recipient,
        } = &spec.policy
        else {
            continue;
        };
        if spec.addr != last.spender {
            continue;
        }
        let recipient = recipient.clone().unwrap_or_else(|| spec.addr.clone());
        for amount in [prev.clone(), last.value.clone()] {
            let call = Call::TransferFrom {
                from: owner.clone(),
                to: recipient.clone(),
                value: amount,
            };
            let tx = runner.tx(&spec.addr, call, OWNER_PRIORITY + priority_boost);
            pending.push(tx);
        }
    }
    Ok(AttackSet {
        setup: runner.finish(),
        pending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::RevertReason;

    fn addr(s: &str) -> Address {
        Address::new(s)
    }

    fn front_runner(name: &str, boost: u64) -> SpenderSpec {
        SpenderSpec {
            addr: addr(name),
            balance: Amount::zero(),
            policy: AdversaryPolicy::FrontRunner {
                priority_boost: boost,
                recipient: None,
            },
        }
    }

    fn passive(name: &str) -> SpenderSpec {
        SpenderSpec {
            addr: addr(name),
            balance: Amount::zero(),
            policy: AdversaryPolicy::Passive,
        }
    }

    fn basic_attack(strategy: StrategyName, n: u64, m: u64) -> Scenario {
        Scenario {
            strategy,
            owner: addr("alice"),
            owner_balance: Amount::from(1000u64),
            owner_policy: OwnerPolicy::DirectAdjust,
            spenders: vec![front_runner("bob", 10)],
            extras: vec![],
            trusted: false,
            lowering: LoweringMode::Native,
            intents: vec![
                Intent {
                    spender: addr("bob"),
                    value: Amount::from(n),
                },
                Intent {
                    spender: addr("bob"),
                    value: Amount::from(m),
                },
            ],
            declared_bound: None,
            interleave: None,
        }
    }

    #[test]
    fn front_runner_extracts_n_plus_m_from_plain_overwrite() {
        let scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::from(150u64)
        );
        // Shape: grant, front-run withdrawal, adjustment, second withdrawal.
        let statuses: Vec<Status> = trace.steps.iter().map(|s| s.receipt.status).collect();
        assert_eq!(statuses, vec![Status::Success; 4]);
        assert_eq!(
            trace.final_state.balance_of(&addr("bob")),
            Amount::from(150u64)
        );
    }

    #[test]
    fn boosted_withdrawal_lands_before_the_adjustment() {
        let scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        let trace = run_scenario(&scenario).unwrap();
        let senders: Vec<&str> = trace.steps.iter().map(|s| s.tx.sender.as_str()).collect();
        assert_eq!(senders, vec!["alice", "bob", "alice", "bob"]);
        assert!(matches!(trace.steps[1].tx.call, Call::TransferFrom { .. }));
        assert!(matches!(trace.steps[2].tx.call, Call::Approve { .. }));
    }

    #[test]
    fn passive_adversary_never_withdraws() {
        let mut scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        scenario.spenders = vec![passive("bob")];
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::zero()
        );
    }

    #[test]
    fn trusted_scenario_rejects_front_runner() {
        let mut scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        scenario.trusted = true;
        assert_eq!(
            run_scenario(&scenario).unwrap_err(),
            ScenarioError::TrustedFrontRunner
        );
    }

    #[test]
    fn undeclared_intent_spender_is_rejected() {
        let mut scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        scenario.intents.push(Intent {
            spender: addr("mallory"),
            value: Amount::from(1u64),
        });
        assert_eq!(
            run_scenario(&scenario).unwrap_err(),
            ScenarioError::UndeclaredActor(addr("mallory"))
        );
    }

    #[test]
    fn nonces_increase_per_sender_in_every_trace() {
        let scenario = basic_attack(StrategyName::StandardErc20, 100, 50);
        let trace = run_scenario(&scenario).unwrap();
        assert!(crate::trace::nonces_strictly_increasing(&trace));
    }

    #[test]
    fn monolith_relative_adjustment_caps_at_intended_total() {
        let scenario = basic_attack(StrategyName::MonolithDao, 100, 120);
        let trace = run_scenario(&scenario).unwrap();
        // Increase lowered to a +20 delta; the front-run nets the original
        // 100 and the delta only adds the intended 20 more.
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::from(120u64)
        );
        assert!(trace
            .steps
            .iter()
            .any(|s| matches!(s.tx.call, Call::IncreaseApproval { .. })));
    }

    #[test]
    fn cas_adjustment_fails_after_front_run() {
        let scenario = basic_attack(StrategyName::OverloadedApprove, 100, 50);
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::from(100u64)
        );
        let cas_step = trace
            .steps
            .iter()
            .find(|s| matches!(s.tx.call, Call::OverloadedApprove { .. } if s.tx.nonce == 1))
            .expect("adjustment broadcast");
        assert_eq!(cas_step.receipt.reason, Some(RevertReason::CasMismatch));
    }

    #[test]
    fn zero_first_aborts_when_single_spender_proves_the_drain() {
        // Only bob is authorized, so the drained-transfer event is
        // attributable and the owner withholds the second approval.
        let mut scenario = basic_attack(StrategyName::Minime, 100, 50);
        scenario.owner_policy = OwnerPolicy::ZeroFirst;
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::from(100u64)
        );
        // No approval for 50 was ever broadcast.
        assert!(!trace.steps.iter().any(|s| matches!(
            &s.tx.call,
            Call::Approve { value, .. } if *value == Amount::from(50u64)
        )));
    }

    #[test]
    fn zero_first_proceeds_when_a_second_spender_blurs_attribution() {
        let mut scenario = basic_attack(StrategyName::Minime, 100, 50);
        scenario.owner_policy = OwnerPolicy::ZeroFirst;
        scenario.spenders.push(passive("carol"));
        scenario.intents.insert(
            0,
            Intent {
                spender: addr("carol"),
                value: Amount::from(150u64),
            },
        );
        let trace = run_scenario(&scenario).unwrap();
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::from(150u64)
        );
    }

    #[test]
    fn attack_pending_set_shapes() {
        // Direct policy lowers to one approval; the adversary contributes
        // two withdrawals.
        let set = attack_pending_set(&basic_attack(StrategyName::StandardErc20, 100, 50)).unwrap();
        assert_eq!(set.pending.len(), 3);
        assert!(set.setup.steps.len() == 1);

        // Zero-first policy leaves both halves of the pair racing.
        let mut scenario = basic_attack(StrategyName::Minime, 100, 50);
        scenario.owner_policy = OwnerPolicy::ZeroFirst;
        let set = attack_pending_set(&scenario).unwrap();
        assert_eq!(set.pending.len(), 4);
    }
}
