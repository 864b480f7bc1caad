//! The attack oracle: ground-truth judgement of whether a trace let the
//! spender take more than the owner ever intended.

use serde::Serialize;

use crate::amount::Amount;
use crate::ledger::Address;
use crate::scenario::Scenario;
use crate::trace::Trace;

/// Outcome of judging one trace. `cumulative` is the spender-initiated
/// outflow from the owner; `bound` is the legitimacy ceiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Safe { cumulative: Amount, bound: Amount },
    Violated { cumulative: Amount, bound: Amount },
}

impl OracleVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, OracleVerdict::Violated { .. })
    }

    pub fn cumulative(&self) -> &Amount {
        match self {
            OracleVerdict::Safe { cumulative, .. } | OracleVerdict::Violated { cumulative, .. } => {
                cumulative
            }
        }
    }

    pub fn bound(&self) -> &Amount {
        match self {
            OracleVerdict::Safe { bound, .. } | OracleVerdict::Violated { bound, .. } => bound,
        }
    }
}

impl std::fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleVerdict::Safe { cumulative, bound } => {
                write!(f, "Safe cumulative={cumulative} bound={bound}")
            }
            OracleVerdict::Violated { cumulative, bound } => {
                write!(f, "Violated cumulative={cumulative} bound={bound}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("no adjustments declared; the oracle needs at least one N -> M change")]
    NoAdjustments,
    #[error("multi-adjustment scenarios must declare an explicit cumulative bound")]
    MissingCumulativeBound,
}

/// Judges a trace against the owner's adjustment intents.
///
/// Withdrawing the full pre-adjustment allowance is legitimate, and so is
/// the post-adjustment target, so a single N -> M adjustment is bounded by
/// max(N, M); taking more than both is the attack. Scenarios with several
/// adjustments must declare their own cumulative-intent bound.
///
/// The cumulative outflow is attributed through the transaction sender —
/// ground truth that no emitted event carries.
pub fn attack_oracle(
    trace: &Trace,
    owner: &Address,
    spender: &Address,
    adjustments: &[(Amount, Amount)],
    declared_bound: Option<&Amount>,
) -> Result<OracleVerdict, OracleError> {
    if adjustments.is_empty() {
        return Err(OracleError::NoAdjustments);
    }
    let bound = if adjustments.len() == 1 {
        let (n, m) = &adjustments[0];
        n.max(m).clone()
    } else {
        declared_bound
            .cloned()
            .ok_or(OracleError::MissingCumulativeBound)?
    };
    let cumulative = trace.spender_outflow(owner, spender);
    if cumulative > bound {
        Ok(OracleVerdict::Violated { cumulative, bound })
    } else {
        Ok(OracleVerdict::Safe { cumulative, bound })
    }
}

/// Applies the oracle to a scenario's own trace, judging its attacked
/// spender against its declared intents.
pub fn scenario_verdict(scenario: &Scenario, trace: &Trace) -> Result<OracleVerdict, OracleError> {
    attack_oracle(
        trace,
        &scenario.owner,
        scenario.attacked_spender(),
        &scenario.adjustments(),
        scenario.declared_bound.as_ref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::{Call, Transaction};
    use crate::strategy::StrategyName;
    use crate::trace::run_transactions;

    fn addr(s: &str) -> Address {
        Address::new(s)
    }

    fn adjustment(n: u64, m: u64) -> Vec<(Amount, Amount)> {
        vec![(Amount::from(n), Amount::from(m))]
    }

    fn attack_trace() -> Trace {
        let mk = |sender: &str, call: Call, nonce: u64| Transaction {
            sender: addr(sender),
            call,
            priority: 10,
            nonce,
        };
        run_transactions(
            StrategyName::StandardErc20,
            vec![(addr("alice"), Amount::from(1000u64))],
            vec![
                mk(
                    "alice",
                    Call::Approve {
                        spender: addr("bob"),
                        value: Amount::from(100u64),
                    },
                    0,
                ),
                mk(
                    "bob",
                    Call::TransferFrom {
                        from: addr("alice"),
                        to: addr("bob"),
                        value: Amount::from(100u64),
                    },
                    0,
                ),
                mk(
                    "alice",
                    Call::Approve {
                        spender: addr("bob"),
                        value: Amount::from(50u64),
                    },
                    1,
                ),
                mk(
                    "bob",
                    Call::TransferFrom {
                        from: addr("alice"),
                        to: addr("bob"),
                        value: Amount::from(50u64),
                    },
                    1,
                ),
            ],
        )
    }

    #[test]
    fn n_plus_m_exceeds_the_single_adjustment_bound() {
        let verdict = attack_oracle(
            &attack_trace(),
            &addr("alice"),
            &addr("bob"),
            &adjustment(100, 50),
            None,
        )
        .unwrap();
        assert_eq!(
            verdict,
            OracleVerdict::Violated {
                cumulative: Amount::from(150u64),
                bound: Amount::from(100u64),
            }
        );
        assert_eq!(verdict.to_string(), "Violated cumulative=150 bound=100");
    }

    #[test]
    fn withdrawals_within_the_bound_are_safe() {
        let verdict = attack_oracle(
            &attack_trace(),
            &addr("alice"),
            &addr("bob"),
            &adjustment(100, 150),
            None,
        )
        .unwrap();
        assert!(!verdict.is_violated());
    }

    #[test]
    fn empty_adjustments_are_a_configuration_error() {
        let err =
            attack_oracle(&attack_trace(), &addr("alice"), &addr("bob"), &[], None).unwrap_err();
        assert_eq!(err, OracleError::NoAdjustments);
    }

    #[test]
    fn multi_adjustment_requires_declared_bound() {
        let adjustments = vec![
            (Amount::from(100u64), Amount::from(50u64)),
            (Amount::from(50u64), Amount::from(80u64)),
        ];
        let err = attack_oracle(
            &attack_trace(),
            &addr("alice"),
            &addr("bob"),
            &adjustments,
            None,
        )
        .unwrap_err();
        assert_eq!(err, OracleError::MissingCumulativeBound);
        let verdict = attack_oracle(
            &attack_trace(),
            &addr("alice"),
            &addr("bob"),
            &adjustments,
            Some(&Amount::from(180u64)),
        )
        .unwrap();
        assert!(!verdict.is_violated());
    }
}
