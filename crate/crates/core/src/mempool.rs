//! The pool of broadcast-but-unconfirmed transactions and its deterministic
//! drain order: descending priority, ties broken by (sender, nonce), with
//! each sender's transactions kept in nonce order no matter what priorities
//! they carry.

use std::collections::BTreeMap;

use crate::ledger::{Address, Transaction};

#[derive(Debug, Clone, Default)]
pub struct Mempool {
    pending: Vec<Transaction>,
}

impl Mempool {
    pub fn new() -> Self {
        Mempool::default()
    }

    pub fn broadcast(&mut self, tx: Transaction) {
        self.pending.push(tx);
    }

    pub fn pending(&self) -> &[Transaction] {
        &self.pending
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    /// Empties the pool in execution order.
    pub fn drain_ordered(&mut self) -> Vec<Transaction> {
        execution_order(std::mem::take(&mut self.pending))
    }
}

/// Orders a pending set for execution. Per-sender queues are consumed in
/// nonce order; among queue heads the highest priority wins, with the
/// lexically smallest sender breaking ties.
pub fn execution_order(pending: Vec<Transaction>) -> Vec<Transaction> {
    let mut queues: BTreeMap<Address, Vec<Transaction>> = BTreeMap::new();
    for tx in pending {
        queues.entry(tx.sender.clone()).or_default().push(tx);
    }
    for queue in queues.values_mut() {
        queue.sort_by_key(|tx| tx.nonce);
        queue.reverse(); // pop from the back
    }

    let mut ordered = Vec::new();
    loop {
        let best = queues
            .iter()
            .filter_map(|(sender, queue)| queue.last().map(|tx| (tx.priority, sender.clone())))
            // max priority, then lexically smallest sender
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
        let Some((_, sender)) = best else {
            break;
        };
        let queue = queues.get_mut(&sender).expect("sender has a queue");
        ordered.push(queue.pop().expect("queue non-empty"));
        if queue.is_empty() {
            queues.remove(&sender);
        }
    }
    ordered
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::Call;

    fn tx(sender: &str, priority: u64, nonce: u64) -> Transaction {
        Transaction {
            sender: Address::new(sender),
            call: Call::QueryBalance {
                owner: Address::new(sender),
            },
            priority,
            nonce,
        }
    }

    fn order_of(txs: Vec<Transaction>) -> Vec<(String, u64)> {
        execution_order(txs)
            .into_iter()
            .map(|t| (t.sender.to_string(), t.nonce))
            .collect()
    }

    #[test]
    fn higher_priority_executes_first() {
        let order = order_of(vec![tx("alice", 10, 0), tx("bob", 20, 0)]);
        assert_eq!(
            order,
            vec![("bob".to_string(), 0), ("alice".to_string(), 0)]
        );
    }

    #[test]
    fn equal_priority_breaks_ties_lexically() {
        let order = order_of(vec![
            tx("carol", 10, 0),
            tx("alice", 10, 0),
            tx("bob", 10, 0),
        ]);
        assert_eq!(
            order,
            vec![
                ("alice".to_string(), 0),
                ("bob".to_string(), 0),
                ("carol".to_string(), 0)
            ]
        );
    }

    #[test]
    fn sender_nonce_order_beats_priority() {
        // The sender's later transaction offers more gas, but its earlier
        // nonce must still execute first.
        let order = order_of(vec![
            tx("alice", 5, 1),
            tx("alice", 50, 2),
            tx("bob", 10, 0),
        ]);
        assert_eq!(
            order,
            vec![
                ("bob".to_string(), 0),
                ("alice".to_string(), 1),
                ("alice".to_string(), 2)
            ]
        );
    }
}
