//! Worked examples of reward splitting and branch choosing, frozen as
//! golden tests.

use chain_data::hash::HashDigest;
use chain_data::structures::BlockKind;
use mwpow::{
    distribute_rewards, finalize_block, finalized_with_ancestors, statement_rate, BlockNode,
    BranchLedger, FinalizeOutcome, MinerRecord, SecurityVerdict, MICRO_PER_COIN,
};
use std::collections::BTreeMap;

fn node(hash: u64, parent: Option<u64>, height: u64, sd: f64) -> BlockNode {
    let mut sd_by_miner = BTreeMap::new();
    if sd > 0.0 {
        sd_by_miner.insert(HashDigest::from_u64(5000 + hash), sd);
    }
    BlockNode {
        hash: HashDigest::from_u64(hash),
        parent: parent.map(HashDigest::from_u64),
        height,
        kind: BlockKind::Ordinary,
        sd_by_miner,
        announced: true,
        content_valid: true,
    }
}

#[test]
fn reward_split_two_miners() {
    // Miner A sent shares of difficulty 50+54+52+56 = 212, miner B
    // 10+11+12+16 = 49, of 1000 total share difficulty; the 100-coin
    // reward pays 21.2 and 4.9 coins exactly.
    let a = HashDigest::from_u64(0xA);
    let b = HashDigest::from_u64(0xB);
    let rest = HashDigest::from_u64(0xC);
    let sd_a: f64 = [50.0, 54.0, 52.0, 56.0].iter().sum();
    let sd_b: f64 = [10.0, 11.0, 12.0, 16.0].iter().sum();
    assert_eq!(sd_a, 212.0);
    assert_eq!(sd_b, 49.0);
    let payouts = distribute_rewards(
        &[(a, sd_a), (b, sd_b), (rest, 1000.0 - sd_a - sd_b)],
        1000.0,
        100 * MICRO_PER_COIN,
    );
    assert_eq!(payouts[0], (a, 21_200_000));
    assert_eq!(payouts[1], (b, 4_900_000));
    let total: u64 = payouts.iter().map(|(_, v)| v).sum();
    assert_eq!(total, 100 * MICRO_PER_COIN);
}

/// Branch scenario (a): three announced blocks A, B, C at one height with
/// share difficulty 1000/2000/2000; registered power 6000, conforming
/// power 5000. Support splits 20/40/40, the statement rate is 83%, and
/// nothing can be accepted.
#[test]
fn branch_scenario_three_way_stalemate() {
    let mut ledger = BranchLedger::new();
    ledger.insert(node(0, None, 0, 0.0));
    ledger.insert(node(0xA, Some(0), 1, 1000.0));
    ledger.insert(node(0xB, Some(0), 1, 2000.0));
    ledger.insert(node(0xC, Some(0), 1, 2000.0));

    let sr = |h: u64| ledger.support_rate(&HashDigest::from_u64(h)).unwrap();
    assert_eq!((sr(0xA) * 100.0).round() as i64, 20);
    assert_eq!((sr(0xB) * 100.0).round() as i64, 40);
    assert_eq!((sr(0xC) * 100.0).round() as i64, 40);

    // Statement rate 5000/6000 rounds to 83%.
    let str_pct = (100.0f64 * 5000.0 / 6000.0).round() as i64;
    assert_eq!(str_pct, 83);

    for h in [0xA_u64, 0xB, 0xC] {
        let out = finalize_block(
            &ledger,
            &HashDigest::from_u64(h),
            5000.0 / 6000.0,
            6000.0,
            SecurityVerdict::Pass,
        );
        assert!(matches!(out, FinalizeOutcome::Pending(_)), "block {h:x} not pending");
    }
}

/// Branch scenario (b): the same fork one height later. Branch totals are
/// A 1018, B 4731, C 6000 of 11749; at the second height the C-child D
/// carries 4000 of 6749. Registered power grew to 7000 with 6749
/// conforming. D clears the margin over the runner-up (2000 + 25% of
/// 7000 = 3750) and is accepted, which accepts its ancestor C; everything
/// else stays pending.
#[test]
fn branch_scenario_child_finalizes_ancestor() {
    let mut ledger = BranchLedger::new();
    ledger.insert(node(0, None, 0, 0.0));
    // Height 1 blocks with their own share difficulty.
    ledger.insert(node(0xA, Some(0), 1, 1000.0));
    ledger.insert(node(0xB, Some(0), 1, 2000.0));
    ledger.insert(node(0xC, Some(0), 1, 2000.0));
    // Height 2: A-child 18, two B-children 2000 and 731, C-child 4000.
    ledger.insert(node(0xA1, Some(0xA), 2, 18.0));
    ledger.insert(node(0xB1, Some(0xB), 2, 2000.0));
    ledger.insert(node(0xB2, Some(0xB), 2, 731.0));
    ledger.insert(node(0xD, Some(0xC), 2, 4000.0));

    let c = HashDigest::from_u64(0xC);
    let d = HashDigest::from_u64(0xD);

    // Branch totals at height 1: 1018 / 4731 / 6000 of 11749.
    assert_eq!(ledger.branch_sd(&HashDigest::from_u64(0xA)), 1018.0);
    assert_eq!(ledger.branch_sd(&HashDigest::from_u64(0xB)), 4731.0);
    assert_eq!(ledger.branch_sd(&c), 6000.0);

    // Support rates as displayed in the worked example (rounded labels
    // carry a one-point slack).
    let sr_c = ledger.support_rate(&c).unwrap() * 100.0;
    assert!((sr_c - 52.0).abs() <= 1.0, "C support {sr_c}%");
    let sr_d = ledger.support_rate(&d).unwrap() * 100.0;
    assert!((sr_d - 60.0).abs() <= 1.0, "D support {sr_d}%");

    // Statement rate 6749/7000 rounds to 96%.
    let rate: f64 = 6749.0 / 7000.0;
    assert_eq!((rate * 100.0).round() as i64, 96);

    let announced: Vec<HashDigest> =
        [0xA_u64, 0xB, 0xC, 0xA1, 0xB1, 0xB2, 0xD].iter().map(|&h| HashDigest::from_u64(h)).collect();
    let accepted = finalized_with_ancestors(
        &ledger,
        &announced,
        rate,
        7000.0,
        &|_| SecurityVerdict::Pass,
        &HashDigest::from_u64(0),
    );
    let expect: std::collections::BTreeSet<HashDigest> = [c, d].into_iter().collect();
    assert_eq!(accepted, expect, "exactly C and its child are accepted");
}

#[test]
fn statement_rate_full_conformance_is_one() {
    let mut miners: Vec<MinerRecord> = (0..5)
        .map(|i| MinerRecord::new(HashDigest::from_u64(i), HashDigest::from_u64(50 + i), 100))
        .collect();
    let block = HashDigest::from_u64(0xB);
    for m in miners.iter_mut() {
        mwpow::shares::record_share(m, block, 25.0);
        mwpow::shares::record_share(m, block, 25.0);
    }
    assert_eq!(statement_rate(&miners, 500.0), 1.0);
}
