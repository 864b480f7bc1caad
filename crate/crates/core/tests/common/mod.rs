//! Shared helpers for the integration suites.
// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use allowance_lab::compliance::canonical_attack;
use allowance_lab::scenario::{LoweringMode, Scenario};
use allowance_lab::strategy::StrategyName;
use allowance_lab::{Address, Amount, Call, Transaction};

pub fn report(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} — {detail}");
}

/// The canonical front-running scenario for a strategy, on its native
/// calling discipline.
pub fn canonical(name: StrategyName, n: u64, m: u64) -> Scenario {
    canonical_attack(name, LoweringMode::Native, n, m)
}

pub fn tx_approve(
    sender: &str,
    spender: &str,
    value: u64,
    priority: u64,
    nonce: u64,
) -> Transaction {
    Transaction {
        sender: Address::new(sender),
        call: Call::Approve {
            spender: Address::new(spender),
            value: Amount::from(value),
        },
        priority,
        nonce,
    }
}

pub fn tx_transfer_from(
    sender: &str,
    from: &str,
    to: &str,
    value: u64,
    priority: u64,
    nonce: u64,
) -> Transaction {
    Transaction {
        sender: Address::new(sender),
        call: Call::TransferFrom {
            from: Address::new(from),
            to: Address::new(to),
            value: Amount::from(value),
        },
        priority,
        nonce,
    }
}
