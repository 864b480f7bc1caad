//! An executable laboratory for ERC20 allowance-management strategies.
//!
//! The allowance adjustment race — a spender front-running a change from N
//! to M and extracting N+M — is reproduced here as a deterministic
//! simulation. The crate provides:
//!
//! - a pure token ledger with checked arbitrary-precision amounts
//!   ([`ledger`]),
//! - eleven allowance strategies behind one execution interface
//!   ([`strategy`]),
//! - a mempool model with priority-based front-running, owner disciplines,
//!   scripted scenarios ([`scenario`]), and exhaustive or sampled
//!   interleaving exploration ([`interleave`]),
//! - an attack oracle and criteria harness that regenerate the
//!   strategy-comparison matrix from execution alone ([`compliance`]),
//! - replayable trace exports ([`trace`]) and the observer view that shows
//!   why event monitoring cannot attribute transfers ([`observe`]).

pub mod amount;
pub mod compliance;
pub mod interleave;
pub mod ledger;
pub mod mempool;
pub mod observe;
pub mod scenario;
pub mod strategy;
pub mod trace;

pub use amount::Amount;
pub use ledger::{
    base_transfer, credit, Address, Call, CallKind, Event, LedgerState, Receipt, RevertReason,
    StateHash, Status, Transaction,
};
pub use observe::{observe, Observation};
pub use strategy::{Strategy, StrategyName};
pub use trace::{Trace, TraceBuilder};
