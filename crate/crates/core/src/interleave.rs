//! Exhaustive and sampled exploration of transaction orderings.
//!
//! A pending multiset admits every ordering that keeps each sender's nonces
//! increasing (a linear extension of the per-sender chains). Exhaustive
//! enumeration executes all of them; sampling draws uniformly among them
//! with a seeded generator.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ledger::{Address, Transaction};
use crate::trace::{Trace, TraceBuilder};

/// Default cap on the pending-set size for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error(
        "{count} pending transactions exceed the exhaustive bound of {bound}; \
         use sampling instead"
    )]
    TooManyPending { count: usize, bound: usize },
    #[error("sample count must be at least 1")]
    ZeroSampleCount,
}

/// Executes every nonce-valid ordering of `pending` on top of the setup
/// trace. Results are in canonical order: at each depth the lexically
/// smallest eligible sender branches first.
pub fn enumerate_interleavings(
    setup: &Trace,
    pending: &[Transaction],
    bound: usize,
) -> Result<Vec<Trace>, EnumerationError> {
    if pending.len() > bound {
        return Err(EnumerationError::TooManyPending {
            count: pending.len(),
            bound,
        });
    }
    let orderings = linear_extensions(pending);
    Ok(orderings
        .into_iter()
        .map(|ordering| execute_ordering(setup, ordering))
        .collect())
}

/// Draws `count` orderings uniformly at random (with replacement) and
/// executes them. Deterministic for a fixed seed.
pub fn sample_interleavings(
    setup: &Trace,
    pending: &[Transaction],
    count: u64,
    seed: u64,
) -> Result<Vec<Trace>, EnumerationError> {
    if count == 0 {
        return Err(EnumerationError::ZeroSampleCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut traces = Vec::with_capacity(count as usize);
    for _ in 0..count {
        // A uniformly random linear extension: shuffle the sender labels,
        // then fill each sender's slots in nonce order.
        let mut labels: Vec<Address> = pending.iter().map(|tx| tx.sender.clone()).collect();
        labels.shuffle(&mut rng);
        let mut queues = sender_queues(pending);
        let ordering: Vec<Transaction> = labels
            .into_iter()
            .map(|sender| {
                queues
                    .get_mut(&sender)
                    .expect("label comes from pending")
                    .remove(0)
            })
            .collect();
        traces.push(execute_ordering(setup, ordering));
    }
    Ok(traces)
}

/// Number of nonce-valid orderings: the multinomial coefficient over the
/// per-sender chain lengths.
pub fn ordering_count(pending: &[Transaction]) -> u128 {
    let queues = sender_queues(pending);
    let mut remaining: Vec<usize> = queues.values().map(|q| q.len()).collect();
    let mut total: u128 = 1;
    let mut slots = pending.len();
    // Repeatedly choose the positions of one sender's chain among the
    // remaining slots.
    for count in remaining.drain(..) {
        total *= binomial(slots, count);
        slots -= count;
    }
    total
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

fn sender_queues(pending: &[Transaction]) -> BTreeMap<Address, Vec<Transaction>> {
    let mut queues: BTreeMap<Address, Vec<Transaction>> = BTreeMap::new();
    for tx in pending {
        queues
            .entry(tx.sender.clone())
            .or_default()
            .push(tx.clone());
    }
    for queue in queues.values_mut() {
        queue.sort_by_key(|tx| tx.nonce);
    }
    queues
}

fn linear_extensions(pending: &[Transaction]) -> Vec<Vec<Transaction>> {
    let queues = sender_queues(pending);
    let senders: Vec<Address> = queues.keys().cloned().collect();
    let mut positions: BTreeMap<Address, usize> = senders.iter().map(|s| (s.clone(), 0)).collect();
    let mut current = Vec::with_capacity(pending.len());
    let mut result = Vec::new();
    recurse(
        &queues,
        &senders,
        &mut positions,
        &mut current,
        pending.len(),
        &mut result,
    );
    result
}

fn recurse(
    queues: &BTreeMap<Address, Vec<Transaction>>,
    senders: &[Address],
    positions: &mut BTreeMap<Address, usize>,
    current: &mut Vec<Transaction>,
    total: usize,
    result: &mut Vec<Vec<Transaction>>,
) {
    if current.len() == total {
        result.push(current.clone());
        return;
    }
    for sender in senders {
        let pos = positions[sender];
        let queue = &queues[sender];
        if pos >= queue.len() {
            continue;
        }
        current.push(queue[pos].clone());
        positions.insert(sender.clone(), pos + 1);
        recurse(queues, senders, positions, current, total, result);
        positions.insert(sender.clone(), pos);
        current.pop();
    }
}

fn execute_ordering(setup: &Trace, ordering: Vec<Transaction>) -> Trace {
    let mut builder = TraceBuilder::from_trace(setup.clone());
    builder.execute_all(ordering);
    builder.finish()
}
