//! Ledger primitives shared by every allowance strategy: addresses, calls,
//! transactions, receipts, events, and the token state itself.
//!
//! State transitions are pure: executing a transaction produces a new
//! [`LedgerState`]; a reverted transaction leaves the input state untouched.
//! Missing map entries read as zero/false, and writing a zero/false value
//! removes the entry, so a cleared pair is bit-identical to a fresh one.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::amount::Amount;

/// An account label. Equality is exact match on the label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Address(String);

impl Address {
    /// Labels must be non-empty.
    pub fn new(label: impl Into<String>) -> Self {
        let label = label.into();
        assert!(!label.is_empty(), "address label must be non-empty");
        Address(label)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Address {
    fn from(s: &str) -> Self {
        Address::new(s)
    }
}

/// An emitted log entry. A `Transfer` deliberately carries no initiator:
/// observers see who lost and who received tokens, never which authorized
/// spender moved them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Event {
    Transfer {
        from: Address,
        to: Address,
        value: Amount,
    },
    Approval {
        owner: Address,
        spender: Address,
        value: Amount,
    },
}

/// The call payload of a transaction. Query variants never mutate state and
/// never emit events.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Call {
    Approve {
        spender: Address,
        value: Amount,
    },
    TransferFrom {
        from: Address,
        to: Address,
        value: Amount,
    },
    Transfer {
        to: Address,
        value: Amount,
    },
    IncreaseApproval {
        spender: Address,
        delta: Amount,
    },
    DecreaseApproval {
        spender: Address,
        delta: Amount,
    },
    OverloadedApprove {
        spender: Address,
        expected: Amount,
        value: Amount,
    },
    SafeApprove {
        spender: Address,
        expected: Amount,
        value: Amount,
    },
    QueryAllowance {
        owner: Address,
        spender: Address,
    },
    QueryBalance {
        owner: Address,
    },
}

impl Call {
    pub fn kind(&self) -> CallKind {
        match self {
            Call::Approve { .. } => CallKind::Approve,
            Call::TransferFrom { .. } => CallKind::TransferFrom,
            Call::Transfer { .. } => CallKind::Transfer,
            Call::IncreaseApproval { .. } => CallKind::IncreaseApproval,
            Call::DecreaseApproval { .. } => CallKind::DecreaseApproval,
            Call::OverloadedApprove { .. } => CallKind::OverloadedApprove,
            Call::SafeApprove { .. } => CallKind::SafeApprove,
            Call::QueryAllowance { .. } => CallKind::QueryAllowance,
            Call::QueryBalance { .. } => CallKind::QueryBalance,
        }
    }

    /// The spender whose allowance this call adjusts, if it is an
    /// approval-family call.
    pub fn approval_target(&self) -> Option<&Address> {
        match self {
            Call::Approve { spender, .. }
            | Call::IncreaseApproval { spender, .. }
            | Call::DecreaseApproval { spender, .. }
            | Call::OverloadedApprove { spender, .. }
            | Call::SafeApprove { spender, .. } => Some(spender),
            _ => None,
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Call::Approve { spender, value } => write!(f, "approve({spender}, {value})"),
            Call::TransferFrom { from, to, value } => {
                write!(f, "transfer-from({from} -> {to}, {value})")
            }
            Call::Transfer { to, value } => write!(f, "transfer({to}, {value})"),
            Call::IncreaseApproval { spender, delta } => {
                write!(f, "increase-approval({spender}, {delta})")
            }
            Call::DecreaseApproval { spender, delta } => {
                write!(f, "decrease-approval({spender}, {delta})")
            }
            Call::OverloadedApprove {
                spender,
                expected,
                value,
            } => write!(f, "approve({spender}, expected={expected}, {value})"),
            Call::SafeApprove {
                spender,
                expected,
                value,
            } => write!(f, "safe-approve({spender}, expected={expected}, {value})"),
            Call::QueryAllowance { owner, spender } => {
                write!(f, "allowance({owner}, {spender})")
            }
            Call::QueryBalance { owner } => write!(f, "balance-of({owner})"),
        }
    }
}

/// Call discriminant, used to declare a strategy's method surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CallKind {
    Approve,
    TransferFrom,
    Transfer,
    IncreaseApproval,
    DecreaseApproval,
    OverloadedApprove,
    SafeApprove,
    QueryAllowance,
    QueryBalance,
}

/// A broadcast transaction. `priority` is a gas-price proxy: higher executes
/// earlier among simultaneously pending transactions. `nonce` is a per-sender
/// sequence number; executed orderings keep each sender's nonces increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transaction {
    pub sender: Address,
    pub call: Call,
    pub priority: u64,
    pub nonce: u64,
}

/// Machine-readable revert codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RevertReason {
    InsufficientBalance,
    InsufficientAllowance,
    UnsupportedMethod,
    NonzeroToNonzero,
    FlagLocked,
    CasMismatch,
    LifetimeExceeded,
    Overflow,
}

impl RevertReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RevertReason::InsufficientBalance => "insufficient-balance",
            RevertReason::InsufficientAllowance => "insufficient-allowance",
            RevertReason::UnsupportedMethod => "unsupported-method",
            RevertReason::NonzeroToNonzero => "nonzero-to-nonzero",
            RevertReason::FlagLocked => "flag-locked",
            RevertReason::CasMismatch => "cas-mismatch",
            RevertReason::LifetimeExceeded => "lifetime-exceeded",
            RevertReason::Overflow => "overflow",
        }
    }
}

impl fmt::Display for RevertReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Success,
    Revert,
}

/// Execution result of one transaction. A revert carries no events and
/// implies the state was left unchanged (all-or-nothing execution).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Receipt {
    pub status: Status,
    pub events: Vec<Event>,
    pub reason: Option<RevertReason>,
}

impl Receipt {
    pub fn success(events: Vec<Event>) -> Self {
        Receipt {
            status: Status::Success,
            events,
            reason: None,
        }
    }

    pub fn revert(reason: RevertReason) -> Self {
        Receipt {
            status: Status::Revert,
            events: Vec::new(),
            reason: Some(reason),
        }
    }

    pub fn is_success(&self) -> bool {
        self.status == Status::Success
    }
}

/// A 256-bit digest of a [`LedgerState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateHash([u8; 32]);

impl fmt::Display for StateHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for StateHash {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StateHash {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let s = String::deserialize(deserializer)?;
        if s.len() != 64 {
            return Err(D::Error::custom("state hash must be 64 hex characters"));
        }
        let mut out = [0u8; 32];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hex = std::str::from_utf8(chunk).map_err(D::Error::custom)?;
            out[i] = u8::from_str_radix(hex, 16).map_err(D::Error::custom)?;
        }
        Ok(StateHash(out))
    }
}

/// Residual bookkeeping for the strategy that tracks remaining tokens as an
/// (initial, residual) pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResidualEntry {
    pub initial: Amount,
    pub residual: Amount,
}

/// Full token state: balances, per-pair allowances, per-pair cumulative
/// transfer counters, strategy-specific flags and residuals, and the event
/// log keyed by executing transaction index.
///
/// Invariants: the sum of balances equals `total_supply` after every
/// transaction, and `transferred` counters never decrease (no strategy resets
/// them).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LedgerState {
    balances: BTreeMap<Address, Amount>,
    allowed: BTreeMap<(Address, Address), Amount>,
    transferred: BTreeMap<(Address, Address), Amount>,
    used_flag: BTreeMap<(Address, Address), bool>,
    residual: BTreeMap<(Address, Address), ResidualEntry>,
    event_log: Vec<(u64, Event)>,
    total_supply: Amount,
}

impl LedgerState {
    pub fn new() -> Self {
        LedgerState::default()
    }

    pub fn balance_of(&self, who: &Address) -> Amount {
        self.balances.get(who).cloned().unwrap_or_else(Amount::zero)
    }

    pub fn allowed(&self, owner: &Address, spender: &Address) -> Amount {
        self.allowed
            .get(&(owner.clone(), spender.clone()))
            .cloned()
            .unwrap_or_else(Amount::zero)
    }

    pub fn transferred(&self, owner: &Address, spender: &Address) -> Amount {
        self.transferred
            .get(&(owner.clone(), spender.clone()))
            .cloned()
            .unwrap_or_else(Amount::zero)
    }

    pub fn used_flag(&self, owner: &Address, spender: &Address) -> bool {
        self.used_flag
            .get(&(owner.clone(), spender.clone()))
            .copied()
            .unwrap_or(false)
    }

    pub fn residual(&self, owner: &Address, spender: &Address) -> ResidualEntry {
        self.residual
            .get(&(owner.clone(), spender.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_supply(&self) -> &Amount {
        &self.total_supply
    }

    /// Read-only view of the cumulative transfer counters, for invariant
    /// checks over whole states.
    pub fn transferred_map(&self) -> &BTreeMap<(Address, Address), Amount> {
        &self.transferred
    }

    pub fn event_log(&self) -> &[(u64, Event)] {
        &self.event_log
    }

    /// Sum of balances matches the recorded total supply.
    pub fn conservation_holds(&self) -> bool {
        self.balances.values().cloned().sum::<Amount>() == self.total_supply
    }

    pub fn set_allowed(&mut self, owner: &Address, spender: &Address, value: Amount) {
        let key = (owner.clone(), spender.clone());
        if value.is_zero() {
            self.allowed.remove(&key);
        } else {
            self.allowed.insert(key, value);
        }
    }

    pub fn set_used_flag(&mut self, owner: &Address, spender: &Address, value: bool) {
        let key = (owner.clone(), spender.clone());
        if value {
            self.used_flag.insert(key, true);
        } else {
            self.used_flag.remove(&key);
        }
    }

    pub fn set_residual(&mut self, owner: &Address, spender: &Address, entry: ResidualEntry) {
        let key = (owner.clone(), spender.clone());
        if entry.initial.is_zero() && entry.residual.is_zero() {
            self.residual.remove(&key);
        } else {
            self.residual.insert(key, entry);
        }
    }

    pub fn add_transferred(&mut self, owner: &Address, spender: &Address, value: &Amount) {
        if value.is_zero() {
            return;
        }
        let key = (owner.clone(), spender.clone());
        let mut current = self.transferred.remove(&key).unwrap_or_else(Amount::zero);
        current += value;
        self.transferred.insert(key, current);
    }

    pub fn add_balance(&mut self, who: &Address, value: &Amount) {
        if value.is_zero() {
            return;
        }
        let mut current = self.balances.remove(who).unwrap_or_else(Amount::zero);
        current += value;
        self.balances.insert(who.clone(), current);
    }

    /// Caller must have checked the balance; panics on underflow.
    pub fn sub_balance(&mut self, who: &Address, value: &Amount) {
        if value.is_zero() {
            return;
        }
        let current = self.balances.remove(who).unwrap_or_else(Amount::zero);
        let next = current
            .checked_sub(value)
            .expect("sub_balance called without a balance guard");
        if !next.is_zero() {
            self.balances.insert(who.clone(), next);
        }
    }

    /// Appends receipt events to the log under the executing transaction's
    /// index. Called by trace executors, not by strategies.
    pub fn append_events(&mut self, tx_index: u64, events: &[Event]) {
        for ev in events {
            self.event_log.push((tx_index, ev.clone()));
        }
    }

    /// Canonical digest over every field, in declaration order. Zero/false
    /// entries are never stored, so logically equal states hash equal.
    pub fn hash(&self) -> StateHash {
        let mut h = Sha256::new();
        let put_len = |h: &mut Sha256, n: usize| h.update((n as u64).to_be_bytes());

        fn put_addr(h: &mut Sha256, a: &Address) {
            h.update((a.as_str().len() as u64).to_be_bytes());
            h.update(a.as_str().as_bytes());
        }
        fn put_amount(h: &mut Sha256, a: &Amount) {
            let bytes = a.to_be_bytes();
            h.update((bytes.len() as u64).to_be_bytes());
            h.update(&bytes);
        }
        fn put_event(h: &mut Sha256, ev: &Event) {
            match ev {
                Event::Transfer { from, to, value } => {
                    h.update([1u8]);
                    put_addr(h, from);
                    put_addr(h, to);
                    put_amount(h, value);
                }
                Event::Approval {
                    owner,
                    spender,
                    value,
                } => {
                    h.update([2u8]);
                    put_addr(h, owner);
                    put_addr(h, spender);
                    put_amount(h, value);
                }
            }
        }

        h.update([0xB1u8]);
        put_len(&mut h, self.balances.len());
        for (addr, amt) in &self.balances {
            put_addr(&mut h, addr);
            put_amount(&mut h, amt);
        }
        h.update([0xA1u8]);
        put_len(&mut h, self.allowed.len());
        for ((o, s), amt) in &self.allowed {
            put_addr(&mut h, o);
            put_addr(&mut h, s);
            put_amount(&mut h, amt);
        }
        h.update([0xC1u8]);
        put_len(&mut h, self.transferred.len());
        for ((o, s), amt) in &self.transferred {
            put_addr(&mut h, o);
            put_addr(&mut h, s);
            put_amount(&mut h, amt);
        }
        h.update([0xF1u8]);
        put_len(&mut h, self.used_flag.len());
        for (o, s) in self.used_flag.keys() {
            put_addr(&mut h, o);
            put_addr(&mut h, s);
        }
        h.update([0xD1u8]);
        put_len(&mut h, self.residual.len());
        for ((o, s), entry) in &self.residual {
            put_addr(&mut h, o);
            put_addr(&mut h, s);
            put_amount(&mut h, &entry.initial);
            put_amount(&mut h, &entry.residual);
        }
        h.update([0xE1u8]);
        put_len(&mut h, self.event_log.len());
        for (idx, ev) in &self.event_log {
            h.update(idx.to_be_bytes());
            put_event(&mut h, ev);
        }
        put_amount(&mut h, &self.total_supply);

        StateHash(h.finalize().into())
    }
}

/// Mints tokens into an account; test and scenario setup only. Arbitrary
/// precision makes the addition infallible.
pub fn credit(state: &LedgerState, who: &Address, amount: &Amount) -> LedgerState {
    let mut next = state.clone();
    next.add_balance(who, amount);
    next.total_supply += amount;
    next
}

/// Moves `value` from one balance to another and reports the transfer event.
/// A zero-value transfer succeeds and still emits the event.
pub fn base_transfer(
    state: &LedgerState,
    from: &Address,
    to: &Address,
    value: &Amount,
) -> Result<(LedgerState, Event), RevertReason> {
    if state.balance_of(from) < *value {
        return Err(RevertReason::InsufficientBalance);
    }
    let mut next = state.clone();
    next.sub_balance(from, value);
    next.add_balance(to, value);
    let event = Event::Transfer {
        from: from.clone(),
        to: to.clone(),
        value: value.clone(),
    };
    Ok((next, event))
}
