//! The catalog of allowance-management strategies.
//!
//! Each strategy is a pure, deterministic transition function from
//! `(LedgerState, Transaction)` to `(LedgerState, Receipt)` with a declared
//! method surface. Calling a variant outside that surface reverts with
//! `unsupported-method`, modelling a contract that lacks the function.
//!
//! The strategies differ along two axes — how `approve` treats the requested
//! value, and how `transferFrom` meters spending — plus optional extension
//! methods (increase/decrease, compare-and-set variants). The table in
//! [`Strategy::get`] wires the axes together per catalog entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amount::Amount;
use crate::ledger::{
    base_transfer, Address, Call, CallKind, Event, LedgerState, Receipt, ResidualEntry,
    RevertReason, Transaction,
};

/// Catalog identifiers. The order here is the report order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    StandardErc20,
    Minime,
    MonolithDao,
    TransferFlag,
    TransferFlagReset,
    ResidualTracking,
    OverloadedApprove,
    SafeApprove,
    MinimumViable,
    Proposal1CasApprove,
    Proposal2Lifetime,
}

impl StrategyName {
    pub const ALL: [StrategyName; 11] = [
        StrategyName::StandardErc20,
        StrategyName::Minime,
        StrategyName::MonolithDao,
        StrategyName::TransferFlag,
        StrategyName::TransferFlagReset,
        StrategyName::ResidualTracking,
        StrategyName::OverloadedApprove,
        StrategyName::SafeApprove,
        StrategyName::MinimumViable,
        StrategyName::Proposal1CasApprove,
        StrategyName::Proposal2Lifetime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyName::StandardErc20 => "standard-erc20",
            StrategyName::Minime => "minime",
            StrategyName::MonolithDao => "monolith-dao",
            StrategyName::TransferFlag => "transfer-flag",
            StrategyName::TransferFlagReset => "transfer-flag-reset",
            StrategyName::ResidualTracking => "residual-tracking",
            StrategyName::OverloadedApprove => "overloaded-approve",
            StrategyName::SafeApprove => "safe-approve",
            StrategyName::MinimumViable => "minimum-viable",
            StrategyName::Proposal1CasApprove => "proposal1-cas-approve",
            StrategyName::Proposal2Lifetime => "proposal2-lifetime",
        }
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy `{given}`; valid names: {}", StrategyName::ALL.map(|n| n.as_str()).join(", "))]
pub struct UnknownStrategy {
    pub given: String,
}

impl FromStr for StrategyName {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| UnknownStrategy {
                given: s.to_string(),
            })
    }
}

/// How `approve(spender, value)` treats the requested value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ApproveRule {
    /// Unconditionally store the requested value.
    Overwrite,
    /// Require the current allowance to be zero before any nonzero value.
    ZeroFirst,
    /// Require the spender's transfer flag to be clear before any nonzero
    /// value; optionally clear the flag on success.
    FlagGuard {
        reset_on_success: bool,
    },
    /// Zero-first discipline over the (initial, residual) pair; a successful
    /// approval sets both to the requested value.
    ResidualPair,
    /// Store `max(value - transferred, 0)`: the request is reconciled against
    /// tokens the spender already moved.
    TransferredAdjusted,
    MissingMethod,
}

/// How `transferFrom(from, to, value)` meters spending.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TransferFromRule {
    /// Debit the allowance; optionally raise the spender's transfer flag.
    DebitAllowance {
        set_flag: bool,
    },
    /// Debit the residual of the (initial, residual) pair.
    DebitResidual,
    /// Leave the allowance untouched and require cumulative transfers to stay
    /// within it: the stored allowance is a lifetime cap.
    LifetimeCap,
    MissingMethod,
}

/// Which value an allowance query reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AllowanceView {
    Allowed,
    Residual,
}

/// One catalog entry: a named transition function plus its method surface.
#[derive(Debug, Clone, Copy)]
pub struct Strategy {
    name: StrategyName,
    approve: ApproveRule,
    transfer_from: TransferFromRule,
    view: AllowanceView,
    has_increase_decrease: bool,
    has_overloaded_approve: bool,
    has_safe_approve: bool,
}

impl Strategy {
    pub fn get(name: StrategyName) -> Strategy {
        use AllowanceView::*;
        use ApproveRule as A;
        use TransferFromRule as T;
        let (approve, transfer_from, view) = match name {
            StrategyName::StandardErc20 => {
                (A::Overwrite, T::DebitAllowance { set_flag: false }, Allowed)
            }
            StrategyName::Minime => (A::ZeroFirst, T::DebitAllowance { set_flag: false }, Allowed),
            StrategyName::MonolithDao => {
                (A::ZeroFirst, T::DebitAllowance { set_flag: false }, Allowed)
            }
            StrategyName::TransferFlag => (
                A::FlagGuard {
                    reset_on_success: false,
                },
                T::DebitAllowance { set_flag: true },
                Allowed,
            ),
            StrategyName::TransferFlagReset => (
                A::FlagGuard {
                    reset_on_success: true,
                },
                T::DebitAllowance { set_flag: true },
                Allowed,
            ),
            StrategyName::ResidualTracking => (A::ResidualPair, T::DebitResidual, Residual),
            StrategyName::OverloadedApprove => {
                (A::Overwrite, T::DebitAllowance { set_flag: false }, Allowed)
            }
            StrategyName::SafeApprove => {
                (A::Overwrite, T::DebitAllowance { set_flag: false }, Allowed)
            }
            StrategyName::MinimumViable => (A::MissingMethod, T::MissingMethod, Allowed),
            StrategyName::Proposal1CasApprove => (
                A::TransferredAdjusted,
                T::DebitAllowance { set_flag: false },
                Allowed,
            ),
            StrategyName::Proposal2Lifetime => (A::Overwrite, T::LifetimeCap, Allowed),
        };
        Strategy {
            name,
            approve,
            transfer_from,
            view,
            has_increase_decrease: name == StrategyName::MonolithDao,
            has_overloaded_approve: name == StrategyName::OverloadedApprove,
            has_safe_approve: name == StrategyName::SafeApprove,
        }
    }

    /// The full catalog in fixed report order.
    pub fn catalog() -> Vec<Strategy> {
        StrategyName::ALL.into_iter().map(Strategy::get).collect()
    }

    pub fn name(&self) -> StrategyName {
        self.name
    }

    pub fn supports(&self, kind: CallKind) -> bool {
        match kind {
            CallKind::Transfer | CallKind::QueryBalance => true,
            CallKind::Approve | CallKind::TransferFrom | CallKind::QueryAllowance => {
                self.approve != ApproveRule::MissingMethod
            }
            CallKind::IncreaseApproval | CallKind::DecreaseApproval => self.has_increase_decrease,
            CallKind::OverloadedApprove => self.has_overloaded_approve,
            CallKind::SafeApprove => self.has_safe_approve,
        }
    }

    pub fn supported_calls(&self) -> Vec<CallKind> {
        [
            CallKind::Approve,
            CallKind::TransferFrom,
            CallKind::Transfer,
            CallKind::IncreaseApproval,
            CallKind::DecreaseApproval,
            CallKind::OverloadedApprove,
            CallKind::SafeApprove,
            CallKind::QueryAllowance,
            CallKind::QueryBalance,
        ]
        .into_iter()
        .filter(|k| self.supports(*k))
        .collect()
    }

    /// What an allowance query reports for this strategy. For the residual
    /// tracker that is the remaining residual; for the lifetime strategy it is
    /// the stored lifetime cap, not the unspent remainder.
    pub fn allowance(&self, state: &LedgerState, owner: &Address, spender: &Address) -> Amount {
        match self.view {
            AllowanceView::Allowed => state.allowed(owner, spender),
            AllowanceView::Residual => state.residual(owner, spender).residual,
        }
    }

    /// Executes one transaction. Deterministic, and all-or-nothing: on revert
    /// the returned state equals the input state.
    pub fn execute(&self, state: &LedgerState, tx: &Transaction) -> (LedgerState, Receipt) {
        if !self.supports(tx.call.kind()) {
            return (
                state.clone(),
                Receipt::revert(RevertReason::UnsupportedMethod),
            );
        }
        let result = match &tx.call {
            Call::Transfer { to, value } => {
                base_transfer(state, &tx.sender, to, value).map(|(s, ev)| (s, vec![ev]))
            }
            Call::QueryAllowance { .. } | Call::QueryBalance { .. } => {
                Ok((state.clone(), Vec::new()))
            }
            Call::Approve { spender, value } => {
                self.apply_approve(state, &tx.sender, spender, value)
            }
            Call::OverloadedApprove {
                spender,
                expected,
                value,
            }
            | Call::SafeApprove {
                spender,
                expected,
                value,
            } => cas_approve(state, &tx.sender, spender, expected, value),
            Call::IncreaseApproval { spender, delta } => {
                Ok(adjust_approval(state, &tx.sender, spender, delta, true))
            }
            Call::DecreaseApproval { spender, delta } => {
                Ok(adjust_approval(state, &tx.sender, spender, delta, false))
            }
            Call::TransferFrom { from, to, value } => {
                self.apply_transfer_from(state, &tx.sender, from, to, value)
            }
        };
        match result {
            Ok((next, events)) => (next, Receipt::success(events)),
            Err(reason) => (state.clone(), Receipt::revert(reason)),
        }
    }

    fn apply_approve(
        &self,
        state: &LedgerState,
        owner: &Address,
        spender: &Address,
        value: &Amount,
    ) -> Result<(LedgerState, Vec<Event>), RevertReason> {
        let mut next = state.clone();
        let stored = match self.approve {
            ApproveRule::Overwrite => {
                next.set_allowed(owner, spender, value.clone());
                value.clone()
            }
            ApproveRule::ZeroFirst => {
                if !value.is_zero() && !state.allowed(owner, spender).is_zero() {
                    return Err(RevertReason::NonzeroToNonzero);
                }
                next.set_allowed(owner, spender, value.clone());
                value.clone()
            }
            ApproveRule::FlagGuard { reset_on_success } => {
                if !value.is_zero() && state.used_flag(owner, spender) {
                    return Err(RevertReason::FlagLocked);
                }
                next.set_allowed(owner, spender, value.clone());
                if reset_on_success {
                    next.set_used_flag(owner, spender, false);
                }
                value.clone()
            }
            ApproveRule::ResidualPair => {
                let entry = state.residual(owner, spender);
                if !value.is_zero() && !(entry.initial.is_zero() && entry.residual.is_zero()) {
                    return Err(RevertReason::NonzeroToNonzero);
                }
                next.set_residual(
                    owner,
                    spender,
                    ResidualEntry {
                        initial: value.clone(),
                        residual: value.clone(),
                    },
                );
                value.clone()
            }
            ApproveRule::TransferredAdjusted => {
                // The request is an absolute target; tokens already moved are
                // settled against it, never below zero.
                let result = value.saturating_sub(&state.transferred(owner, spender));
                next.set_allowed(owner, spender, result.clone());
                result
            }
            ApproveRule::MissingMethod => unreachable!("gated by supports()"),
        };
        // The approval event reports the stored allowance, which for the
        // transferred-adjusted rule can differ from the requested value.
        let event = Event::Approval {
            owner: owner.clone(),
            spender: spender.clone(),
            value: stored,
        };
        Ok((next, vec![event]))
    }

    fn apply_transfer_from(
        &self,
        state: &LedgerState,
        caller: &Address,
        from: &Address,
        to: &Address,
        value: &Amount,
    ) -> Result<(LedgerState, Vec<Event>), RevertReason> {
        // Authorization is checked before the balance, so a doubly-failing
        // call reports the allowance problem.
        match self.transfer_from {
            TransferFromRule::DebitAllowance { set_flag } => {
                let allowed = state.allowed(from, caller);
                let remaining = allowed
                    .checked_sub(value)
                    .ok_or(RevertReason::InsufficientAllowance)?;
                let (mut next, event) = base_transfer(state, from, to, value)?;
                next.set_allowed(from, caller, remaining);
                next.add_transferred(from, caller, value);
                if set_flag {
                    next.set_used_flag(from, caller, true);
                }
                Ok((next, vec![event]))
            }
            TransferFromRule::DebitResidual => {
                let entry = state.residual(from, caller);
                let remaining = entry
                    .residual
                    .checked_sub(value)
                    .ok_or(RevertReason::InsufficientAllowance)?;
                let (mut next, event) = base_transfer(state, from, to, value)?;
                next.set_residual(
                    from,
                    caller,
                    ResidualEntry {
                        initial: entry.initial,
                        residual: remaining,
                    },
                );
                next.add_transferred(from, caller, value);
                Ok((next, vec![event]))
            }
            TransferFromRule::LifetimeCap => {
                let spent = &state.transferred(from, caller) + value;
                if spent > state.allowed(from, caller) {
                    return Err(RevertReason::LifetimeExceeded);
                }
                let (mut next, event) = base_transfer(state, from, to, value)?;
                next.add_transferred(from, caller, value);
                Ok((next, vec![event]))
            }
            TransferFromRule::MissingMethod => unreachable!("gated by supports()"),
        }
    }
}

/// Compare-and-set adjustment: store the new value only if the current
/// allowance equals the caller's expectation.
fn cas_approve(
    state: &LedgerState,
    owner: &Address,
    spender: &Address,
    expected: &Amount,
    value: &Amount,
) -> Result<(LedgerState, Vec<Event>), RevertReason> {
    if state.allowed(owner, spender) != *expected {
        return Err(RevertReason::CasMismatch);
    }
    let mut next = state.clone();
    next.set_allowed(owner, spender, value.clone());
    let event = Event::Approval {
        owner: owner.clone(),
        spender: spender.clone(),
        value: value.clone(),
    };
    Ok((next, vec![event]))
}

/// Relative adjustment. Increase is a checked add (infallible at arbitrary
/// precision); decrease floors at zero rather than reverting.
fn adjust_approval(
    state: &LedgerState,
    owner: &Address,
    spender: &Address,
    delta: &Amount,
    increase: bool,
) -> (LedgerState, Vec<Event>) {
    let current = state.allowed(owner, spender);
    let new_value = if increase {
        &current + delta
    } else {
        current.saturating_sub(delta)
    };
    let mut next = state.clone();
    next.set_allowed(owner, spender, new_value.clone());
    let event = Event::Approval {
        owner: owner.clone(),
        spender: spender.clone(),
        value: new_value,
    };
    (next, vec![event])
}

/// Unspent remainder under the lifetime interpretation: stored cap minus
/// cumulative transfers. Diagnostic only — not part of any call surface.
pub fn remaining_lifetime(state: &LedgerState, owner: &Address, spender: &Address) -> Amount {
    state
        .allowed(owner, spender)
        .saturating_sub(&state.transferred(owner, spender))
}
