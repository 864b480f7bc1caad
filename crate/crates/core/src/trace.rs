//! Executed traces: the ordered record of transactions, receipts, and state
//! digests that every other component consumes, plus the line-oriented export
//! format and the replay verifier.

use serde::{Deserialize, Serialize};

use crate::amount::Amount;
use crate::ledger::{credit, Address, LedgerState, Receipt, StateHash, Status, Transaction};
use crate::strategy::{Strategy, StrategyName};

/// An allowance value sampled by an observer right after a transaction
/// executed. `time` is the index of that transaction in the trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowanceRead {
    pub time: u64,
    pub owner: Address,
    pub spender: Address,
    pub value: Amount,
}

/// One executed transaction with its outcome and the digest of the state it
/// produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub index: u64,
    pub tx: Transaction,
    pub receipt: Receipt,
    pub state_hash: StateHash,
    /// Recorded when the sender is adjusting an allowance and samples the
    /// pair afterwards, or when the call is an explicit allowance query.
    pub allowance_read: Option<AllowanceRead>,
}

/// A full execution: genesis credits, every step in order, and the final
/// state. Traces are always rooted at a credits-only genesis so they can be
/// re-executed from their own record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub strategy: StrategyName,
    pub genesis_balances: Vec<(Address, Amount)>,
    pub steps: Vec<TraceStep>,
    pub final_state: LedgerState,
}

impl Trace {
    /// Total value moved out of `owner` by transactions that `spender`
    /// itself sent and that succeeded. This is ground truth: it attributes
    /// transfers via the transaction sender, which no event exposes.
    pub fn spender_outflow(&self, owner: &Address, spender: &Address) -> Amount {
        let mut total = Amount::zero();
        for step in &self.steps {
            if step.tx.sender != *spender || step.receipt.status != Status::Success {
                continue;
            }
            if let crate::ledger::Call::TransferFrom { from, value, .. } = &step.tx.call {
                if from == owner {
                    total += value;
                }
            }
        }
        total
    }

    /// Re-executes the trace prefix up to and including `index` and returns
    /// the resulting state.
    pub fn state_after(&self, index: u64) -> LedgerState {
        let strategy = Strategy::get(self.strategy);
        let mut state = genesis_state(&self.genesis_balances);
        for step in self.steps.iter().take(index as usize + 1) {
            let (next, receipt) = strategy.execute(&state, &step.tx);
            state = next;
            state.append_events(step.index, &receipt.events);
        }
        state
    }
}

/// Builds the starting state from an ordered list of credits.
pub fn genesis_state(balances: &[(Address, Amount)]) -> LedgerState {
    let mut state = LedgerState::new();
    for (addr, amount) in balances {
        state = credit(&state, addr, amount);
    }
    state
}

/// Executes transactions strictly in the given order, recording one step per
/// transaction. This is the sequential executor behind scenario rounds,
/// interleaving branches, and compliance probes.
pub struct TraceBuilder {
    strategy: Strategy,
    genesis_balances: Vec<(Address, Amount)>,
    state: LedgerState,
    steps: Vec<TraceStep>,
}

impl TraceBuilder {
    pub fn new(name: StrategyName, genesis_balances: Vec<(Address, Amount)>) -> Self {
        let state = genesis_state(&genesis_balances);
        TraceBuilder {
            strategy: Strategy::get(name),
            genesis_balances,
            state,
            steps: Vec::new(),
        }
    }

    /// Resumes execution on top of a finished trace.
    pub fn from_trace(trace: Trace) -> Self {
        TraceBuilder {
            strategy: Strategy::get(trace.strategy),
            genesis_balances: trace.genesis_balances,
            state: trace.final_state,
            steps: trace.steps,
        }
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn state(&self) -> &LedgerState {
        &self.state
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// Executes one transaction and appends its step. Returns the receipt.
    pub fn execute(&mut self, tx: Transaction) -> Receipt {
        let index = self.steps.len() as u64;
        let (next, receipt) = self.strategy.execute(&self.state, &tx);
        self.state = next;
        self.state.append_events(index, &receipt.events);
        debug_assert!(self.state.conservation_holds());

        let allowance_read = read_for(&self.strategy, &self.state, &tx, index);
        self.steps.push(TraceStep {
            index,
            tx,
            receipt: receipt.clone(),
            state_hash: self.state.hash(),
            allowance_read,
        });
        receipt
    }

    pub fn execute_all(&mut self, txs: impl IntoIterator<Item = Transaction>) {
        for tx in txs {
            self.execute(tx);
        }
    }

    pub fn finish(self) -> Trace {
        Trace {
            strategy: self.strategy.name(),
            genesis_balances: self.genesis_balances,
            steps: self.steps,
            final_state: self.state,
        }
    }
}

/// A lightweight client samples an allowance after its own transaction
/// confirms: an approval-family call samples the adjusted pair, an explicit
/// query samples the queried pair. Other calls record nothing.
fn read_for(
    strategy: &Strategy,
    state: &LedgerState,
    tx: &Transaction,
    index: u64,
) -> Option<AllowanceRead> {
    let (owner, spender) = match &tx.call {
        crate::ledger::Call::QueryAllowance { owner, spender } => (owner.clone(), spender.clone()),
        _ => (tx.sender.clone(), tx.call.approval_target()?.clone()),
    };
    let value = strategy.allowance(state, &owner, &spender);
    Some(AllowanceRead {
        time: index,
        owner,
        spender,
        value,
    })
}

/// Convenience wrapper: run a fixed call list from a credits-only genesis.
pub fn run_transactions(
    name: StrategyName,
    genesis_balances: Vec<(Address, Amount)>,
    txs: Vec<Transaction>,
) -> Trace {
    let mut builder = TraceBuilder::new(name, genesis_balances);
    builder.execute_all(txs);
    builder.finish()
}

// ---------------------------------------------------------------------------
// Export format
// ---------------------------------------------------------------------------

pub const TRACE_SCHEMA: &str = "allowance-lab/trace/1";

/// First line of a trace export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub schema: String,
    pub strategy: StrategyName,
    pub genesis: Vec<(Address, Amount)>,
}

/// One line per executed transaction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub index: u64,
    pub sender: Address,
    pub nonce: u64,
    pub priority: u64,
    pub call: crate::ledger::Call,
    pub status: Status,
    pub reason: Option<crate::ledger::RevertReason>,
    pub events: Vec<crate::ledger::Event>,
    pub state_hash: StateHash,
}

impl Trace {
    pub fn to_export(&self) -> (TraceHeader, Vec<TraceRecord>) {
        let header = TraceHeader {
            schema: TRACE_SCHEMA.to_string(),
            strategy: self.strategy,
            genesis: self.genesis_balances.clone(),
        };
        let records = self
            .steps
            .iter()
            .map(|step| TraceRecord {
                index: step.index,
                sender: step.tx.sender.clone(),
                nonce: step.tx.nonce,
                priority: step.tx.priority,
                call: step.tx.call.clone(),
                status: step.receipt.status,
                reason: step.receipt.reason,
                events: step.receipt.events.clone(),
                state_hash: step.state_hash,
            })
            .collect();
        (header, records)
    }

    /// Serializes to line-delimited JSON: header first, one record per step.
    pub fn to_jsonl(&self) -> String {
        let (header, records) = self.to_export();
        let mut out = serde_json::to_string(&header).expect("trace header serializes");
        out.push('\n');
        for record in records {
            out.push_str(&serde_json::to_string(&record).expect("trace record serializes"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unsupported trace schema `{0}`, expected `{TRACE_SCHEMA}`")]
    Schema(String),
    #[error("step {index}: recorded status {expected:?} but replay produced {actual:?}")]
    StatusMismatch {
        index: u64,
        expected: Status,
        actual: Status,
    },
    #[error("step {index}: recorded events diverge from replay")]
    EventMismatch { index: u64 },
    #[error("step {index}: state hash mismatch (recorded {expected}, replayed {actual})")]
    HashMismatch {
        index: u64,
        expected: StateHash,
        actual: StateHash,
    },
}

/// Parses a JSONL export produced by [`Trace::to_jsonl`].
pub fn parse_jsonl(text: &str) -> Result<(TraceHeader, Vec<TraceRecord>), ReplayError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (line_no, header_line) = lines.next().ok_or(ReplayError::Malformed {
        line: 1,
        message: "empty trace file".to_string(),
    })?;
    let header: TraceHeader =
        serde_json::from_str(header_line).map_err(|e| ReplayError::Malformed {
            line: line_no + 1,
            message: e.to_string(),
        })?;
    if header.schema != TRACE_SCHEMA {
        return Err(ReplayError::Schema(header.schema));
    }
    let mut records = Vec::new();
    for (line_no, line) in lines {
        let record: TraceRecord =
            serde_json::from_str(line).map_err(|e| ReplayError::Malformed {
                line: line_no + 1,
                message: e.to_string(),
            })?;
        records.push(record);
    }
    Ok((header, records))
}

/// Re-executes an exported trace and verifies that every receipt and state
/// digest matches the record. Returns the reconstructed trace on success.
pub fn replay(header: &TraceHeader, records: &[TraceRecord]) -> Result<Trace, ReplayError> {
    let mut builder = TraceBuilder::new(header.strategy, header.genesis.clone());
    for record in records {
        let tx = Transaction {
            sender: record.sender.clone(),
            call: record.call.clone(),
            priority: record.priority,
            nonce: record.nonce,
        };
        let receipt = builder.execute(tx);
        if receipt.status != record.status {
            return Err(ReplayError::StatusMismatch {
                index: record.index,
                expected: record.status,
                actual: receipt.status,
            });
        }
        if receipt.events != record.events || receipt.reason != record.reason {
            return Err(ReplayError::EventMismatch {
                index: record.index,
            });
        }
        let actual = builder
            .steps()
            .last()
            .expect("just executed a step")
            .state_hash;
        if actual != record.state_hash {
            return Err(ReplayError::HashMismatch {
                index: record.index,
                expected: record.state_hash,
                actual,
            });
        }
    }
    Ok(builder.finish())
}

/// Per-sender nonces must strictly increase along any executed trace.
pub fn nonces_strictly_increasing(trace: &Trace) -> bool {
    let mut last: std::collections::BTreeMap<&Address, u64> = std::collections::BTreeMap::new();
    for step in &trace.steps {
        if let Some(prev) = last.get(&step.tx.sender) {
            if step.tx.nonce <= *prev {
                return false;
            }
        }
        last.insert(&step.tx.sender, step.tx.nonce);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::Call;

    fn addr(s: &str) -> Address {
        Address::new(s)
    }

    fn simple_trace() -> Trace {
        let txs = vec![
            Transaction {
                sender: addr("alice"),
                call: Call::Approve {
                    spender: addr("bob"),
                    value: Amount::from(100u64),
                },
                priority: 10,
                nonce: 0,
            },
            Transaction {
                sender: addr("bob"),
                call: Call::TransferFrom {
                    from: addr("alice"),
                    to: addr("bob"),
                    value: Amount::from(60u64),
                },
                priority: 10,
                nonce: 0,
            },
        ];
        run_transactions(
            StrategyName::StandardErc20,
            vec![(addr("alice"), Amount::from(1000u64))],
            txs,
        )
    }

    #[test]
    fn export_replay_round_trip() {
        let trace = simple_trace();
        let jsonl = trace.to_jsonl();
        let (header, records) = parse_jsonl(&jsonl).unwrap();
        let replayed = replay(&header, &records).unwrap();
        assert_eq!(replayed, trace);
    }

    #[test]
    fn replay_detects_tampered_hash() {
        let trace = simple_trace();
        let (header, mut records) = trace.to_export();
        records[1].state_hash = records[0].state_hash;
        let err = replay(&header, &records).unwrap_err();
        assert!(matches!(err, ReplayError::HashMismatch { index: 1, .. }));
    }

    #[test]
    fn replay_detects_tampered_status() {
        let trace = simple_trace();
        let (header, mut records) = trace.to_export();
        records[0].status = Status::Revert;
        let err = replay(&header, &records).unwrap_err();
        assert!(matches!(err, ReplayError::StatusMismatch { index: 0, .. }));
    }

    #[test]
    fn spender_outflow_counts_only_sender_initiated() {
        let txs = vec![
            Transaction {
                sender: addr("alice"),
                call: Call::Approve {
                    spender: addr("bob"),
                    value: Amount::from(100u64),
                },
                priority: 10,
                nonce: 0,
            },
            Transaction {
                sender: addr("alice"),
                call: Call::Approve {
                    spender: addr("carol"),
                    value: Amount::from(100u64),
                },
                priority: 10,
                nonce: 1,
            },
            // carol moves alice's tokens to bob; bob initiated nothing.
            Transaction {
                sender: addr("carol"),
                call: Call::TransferFrom {
                    from: addr("alice"),
                    to: addr("bob"),
                    value: Amount::from(40u64),
                },
                priority: 10,
                nonce: 0,
            },
        ];
        let trace = run_transactions(
            StrategyName::StandardErc20,
            vec![(addr("alice"), Amount::from(1000u64))],
            txs,
        );
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("bob")),
            Amount::zero()
        );
        assert_eq!(
            trace.spender_outflow(&addr("alice"), &addr("carol")),
            Amount::from(40u64)
        );
    }

    #[test]
    fn state_after_reconstructs_intermediate_states() {
        let trace = simple_trace();
        let mid = trace.state_after(0);
        assert_eq!(
            mid.allowed(&addr("alice"), &addr("bob")),
            Amount::from(100u64)
        );
        let end = trace.state_after(1);
        assert_eq!(end, trace.final_state);
    }
}
