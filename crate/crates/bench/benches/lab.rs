use criterion::{criterion_group, criterion_main, Criterion};

use allowance_lab::compliance::{build_matrix, canonical_attack};
use allowance_lab::interleave::enumerate_interleavings;
use allowance_lab::scenario::{attack_pending_set, run_scenario, LoweringMode};
use allowance_lab::strategy::StrategyName;
use allowance_lab::trace::run_transactions;
use allowance_lab::{Address, Amount, Call, Transaction};

fn bench_run_scenario(c: &mut Criterion) {
    let scenario = canonical_attack(StrategyName::StandardErc20, LoweringMode::Native, 100, 50);
    c.bench_function("run_scenario/standard_attack", |b| {
        b.iter(|| run_scenario(&scenario).unwrap())
    });

    let lifetime = canonical_attack(
        StrategyName::Proposal2Lifetime,
        LoweringMode::Native,
        100,
        70,
    );
    c.bench_function("run_scenario/lifetime_cap", |b| {
        b.iter(|| run_scenario(&lifetime).unwrap())
    });
}

fn bench_enumerate(c: &mut Criterion) {
    // Canonical 3-transaction race: 3 orderings.
    let scenario = canonical_attack(StrategyName::StandardErc20, LoweringMode::Native, 100, 50);
    let set = attack_pending_set(&scenario).unwrap();
    c.bench_function("enumerate/canonical_race", |b| {
        b.iter(|| enumerate_interleavings(&set.setup, &set.pending, 8).unwrap())
    });

    // Dense 4+4 pending set: C(8,4) = 70 orderings.
    let setup = run_transactions(
        StrategyName::StandardErc20,
        vec![(Address::new("alice"), Amount::from(100_000u64))],
        vec![],
    );
    let mut pending = Vec::new();
    for (sender, priority) in [("alice", 10u64), ("bob", 20)] {
        for nonce in 0..4u64 {
            pending.push(Transaction {
                sender: Address::new(sender),
                call: Call::Approve {
                    spender: Address::new("bob"),
                    value: Amount::from(nonce),
                },
                priority,
                nonce,
            });
        }
    }
    c.bench_function("enumerate/eight_pending", |b| {
        b.iter(|| enumerate_interleavings(&setup, &pending, 8).unwrap())
    });
}

fn bench_state_hash(c: &mut Criterion) {
    let scenario = canonical_attack(
        StrategyName::Proposal1CasApprove,
        LoweringMode::Native,
        100,
        120,
    );
    let trace = run_scenario(&scenario).unwrap();
    c.bench_function("state_hash/final_state", |b| {
        b.iter(|| trace.final_state.hash())
    });
}

fn bench_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix");
    group.sample_size(10);
    group.bench_function("full_catalog", |b| b.iter(build_matrix));
    group.finish();
}

criterion_group!(
    benches,
    bench_run_scenario,
    bench_enumerate,
    bench_state_hash,
    bench_matrix
);
criterion_main!(benches);
