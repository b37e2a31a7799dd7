//! Chain and system state: the mutable composite the simulation drives.
//!
//! `ChainState` owns one chain's participants, block tree, mempool and
//! finality bookkeeping; `SystemState` owns the live chains, the global
//! block header and the system-wide group profile. Split and merge are
//! executed here; round timing and share generation belong to the
//! network simulator.

use crate::boundaries::{bl_candidate, group_boundaries, threshold_chainpower};
use crate::topology::merge_component_id;
use chain_data::chain_id::ChainId;
use chain_data::duty_range::{is_exact_partition, DutyRange};
use chain_data::hash::{HashDigest, Hasher256};
use chain_data::structures::{BlockKind, GlobalBlockHeader, NewAssignJoin, Transaction};
use mwpow::{assign_try_ranges, BranchLedger, MinerRecord};
use security::GroupProfile;
use std::collections::{BTreeMap, VecDeque};

/// Global protocol parameters.
#[derive(Clone, Debug)]
pub struct Params {
    /// Chain limit: transactions / joins per block.
    pub k: usize,
    /// Lifelength in game iterations; a multiple of four.
    pub ti: u32,
    /// Strength group count.
    pub sg: usize,
    /// Security threshold.
    pub th: f64,
    pub block_interval_ms: u64,
    /// Ideal number of entrance-difficulty blocks per round.
    pub dn: f64,
    /// Block reward in micro-coins.
    pub block_reward_micro: u64,
}

impl Params {
    pub fn validate(&self) -> Result<(), crate::MultichainError> {
        if self.ti % 4 != 0 || self.ti == 0 {
            return Err(crate::MultichainError::Config(format!(
                "lifelength {} must be a positive multiple of 4",
                self.ti
            )));
        }
        if self.sg == 0 {
            return Err(crate::MultichainError::Config("group count must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.th) || self.th <= 0.0 {
            return Err(crate::MultichainError::Config(format!(
                "security threshold {} outside (0, 1)",
                self.th
            )));
        }
        if self.k < 2 {
            return Err(crate::MultichainError::Config("chain limit K must be >= 2".into()));
        }
        Ok(())
    }
}

/// A transaction waiting in a chain's mempool.
#[derive(Clone, Debug)]
pub struct PendingTx {
    pub tx: Transaction,
    /// Chain whose duty space governs the transaction.
    pub source: ChainId,
    /// Set when the sender wants the output moved to another chain.
    pub crosschain_dest: Option<ChainId>,
    pub injected_ms: u64,
}

/// A join record waiting for the next Pab.
#[derive(Clone, Debug)]
pub struct PendingJoin {
    pub naj: NewAssignJoin,
    pub hash: HashDigest,
    pub received_ms: u64,
}

#[derive(Clone, Debug)]
pub struct ChainState {
    pub id: ChainId,
    pub duty: DutyRange,
    /// Canonical order with try ranges assigned.
    pub miners: Vec<MinerRecord>,
    pub ledger: BranchLedger,
    pub history_ids: Vec<ChainId>,
    /// Height of the round in progress; blocks exist below it.
    pub height: u64,
    /// Cadence restarts after genesis, split and merge: the block kind at
    /// height h is the cadence kind of `h - cadence_base`.
    pub cadence_base: u64,
    pub last_final: HashDigest,
    pub last_final_height: u64,
    pub last_final_pab: Option<HashDigest>,
    pub heights_without_final: u32,
    pub underfill_streak: u32,
    pub entrance_difficulty: f64,
    pub acceptance_difficulty: f64,
    /// Blocks that reached the entrance difficulty last round.
    pub ne_prev: u32,
    pub prev_timestamp_ms: u64,
    pub prev_prev_timestamp_ms: u64,
    pub pending_tx: VecDeque<PendingTx>,
    pub pending_naj: VecDeque<PendingJoin>,
}

impl ChainState {
    /// Root hash of a fresh ledger for a chain starting at `height`.
    pub fn root_hash(id: ChainId, height: u64, hasher: &dyn Hasher256) -> HashDigest {
        hasher.digest_parts(&[b"chain-root", &id.to_u32().to_le_bytes(), &height.to_le_bytes()])
    }

    pub fn genesis(
        id: ChainId,
        duty: DutyRange,
        mut miners: Vec<MinerRecord>,
        now_ms: u64,
        block_interval_ms: u64,
        hasher: &dyn Hasher256,
    ) -> Self {
        assign_try_ranges(&mut miners);
        let root = Self::root_hash(id, 0, hasher);
        let mut ledger = BranchLedger::new();
        ledger.insert(mwpow::BlockNode {
            hash: root,
            parent: None,
            height: 0,
            kind: BlockKind::FuelUp,
            sd_by_miner: BTreeMap::new(),
            announced: true,
            content_valid: true,
        });
        let chainpower: u64 = miners.iter().map(|m| m.cp_claim).sum();
        let ad = chainpower.max(1) as f64;
        ChainState {
            id,
            duty,
            miners,
            ledger,
            history_ids: Vec::new(),
            height: 1,
            cadence_base: 0,
            last_final: root,
            last_final_height: 0,
            last_final_pab: None,
            heights_without_final: 0,
            underfill_streak: 0,
            entrance_difficulty: ad / 2.0,
            acceptance_difficulty: ad,
            ne_prev: 1,
            prev_timestamp_ms: now_ms,
            prev_prev_timestamp_ms: now_ms.saturating_sub(block_interval_ms),
            pending_naj: VecDeque::new(),
            pending_tx: VecDeque::new(),
        }
    }

    pub fn npc(&self) -> usize {
        self.miners.len()
    }

    pub fn chainpower(&self) -> u64 {
        self.miners.iter().map(|m| m.cp_claim).sum()
    }

    pub fn claims_ascending(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.miners.iter().map(|m| m.cp_claim).collect();
        v.sort_unstable();
        v
    }

    pub fn threshold_chainpower(&self) -> u64 {
        threshold_chainpower(&self.claims_ascending())
    }

    pub fn bl_candidate(&self, sg: usize) -> Vec<u64> {
        bl_candidate(&self.claims_ascending(), sg)
    }

    pub fn kind_at(&self, height: u64) -> BlockKind {
        BlockKind::for_height(height - self.cadence_base)
    }

    pub fn trans_onhold(&self) -> u64 {
        (self.pending_tx.len() + self.pending_naj.len()) as u64
    }

    pub fn miner_index(&self, identity: &HashDigest) -> Option<usize> {
        self.miners.iter().position(|m| m.identity_key == *identity)
    }

    /// Drop the given miners and rebuild try ranges.
    pub fn remove_miners(&mut self, identities: &[HashDigest]) {
        self.miners.retain(|m| !identities.contains(&m.identity_key));
        assign_try_ranges(&mut self.miners);
    }

    /// Add miners (joins embedded in a Fub) and rebuild try ranges.
    pub fn add_miners(&mut self, new: Vec<MinerRecord>) {
        self.miners.extend(new);
        assign_try_ranges(&mut self.miners);
    }
}

#[derive(Clone, Debug)]
pub struct SystemState {
    pub params: Params,
    pub chains: BTreeMap<ChainId, ChainState>,
    pub global: GlobalBlockHeader,
}

impl SystemState {
    pub fn new(params: Params) -> Self {
        SystemState { params, chains: BTreeMap::new(), global: GlobalBlockHeader::default() }
    }

    pub fn live_ids(&self) -> Vec<ChainId> {
        self.chains.keys().copied().collect()
    }

    /// Live chains ranked alphabetically by id string, the protocol's
    /// destination ranking.
    pub fn ranked_chains(&self) -> Vec<ChainId> {
        crate::pab::rank_chains_alphabetical(self.live_ids())
    }

    pub fn total_nodes(&self) -> u64 {
        self.chains.values().map(|c| c.npc() as u64).sum()
    }

    pub fn total_strength(&self) -> u64 {
        self.chains.values().map(|c| c.chainpower()).sum()
    }

    /// System group boundaries from every live chain's candidates.
    pub fn group_boundaries(&self) -> Vec<u64> {
        let per_chain: Vec<Vec<u64>> = self
            .chains
            .values()
            .filter(|c| c.npc() > 0)
            .map(|c| c.bl_candidate(self.params.sg))
            .collect();
        group_boundaries(&per_chain)
    }

    /// The adversary-half group profile used by every security check.
    pub fn group_profile(&self) -> Result<GroupProfile, security::SecurityError> {
        GroupProfile::with_half_adversary(
            self.total_nodes(),
            self.group_boundaries(),
            self.total_strength(),
        )
    }

    pub fn mgbh(&self, hasher: &dyn Hasher256) -> HashDigest {
        self.global.merkle_root(hasher)
    }

    /// The union of live duty ranges must tile the duty space exactly.
    pub fn duty_partition_ok(&self) -> bool {
        let ranges: Vec<&DutyRange> = self.chains.values().map(|c| &c.duty).collect();
        !ranges.is_empty() && is_exact_partition(&ranges)
    }

    /// Split a chain into its two offspring. Participants alternate by
    /// ascending claim rank, pending items route by hash half, both
    /// offspring restart the block cadence.
    pub fn execute_split(&mut self, id: ChainId, now_ms: u64, hasher: &dyn Hasher256) -> (ChainId, ChainId) {
        let parent = self.chains.remove(&id).expect("splitting unknown chain");
        let (even_id, odd_id) = parent.id.split();
        let (even_duty, odd_duty) = parent.duty.split(parent.id);
        let (even_miners, odd_miners) = crate::topology::split_participants(parent.miners);
        let start = parent.height;

        let mut mk = |cid: ChainId, duty: DutyRange, mut miners: Vec<MinerRecord>| {
            assign_try_ranges(&mut miners);
            let root = ChainState::root_hash(cid, start, hasher);
            let mut ledger = BranchLedger::new();
            ledger.insert(mwpow::BlockNode {
                hash: root,
                parent: None,
                height: start.saturating_sub(1),
                kind: BlockKind::FuelUp,
                sd_by_miner: BTreeMap::new(),
                announced: true,
                content_valid: true,
            });
            let chainpower: u64 = miners.iter().map(|m| m.cp_claim).sum();
            let ad = chainpower.max(1) as f64;
            let mut history = parent.history_ids.clone();
            history.push(parent.id);
            ChainState {
                id: cid,
                duty,
                miners,
                ledger,
                history_ids: history,
                height: start,
                cadence_base: start.saturating_sub(1),
                last_final: root,
                last_final_height: start.saturating_sub(1),
                last_final_pab: None,
                heights_without_final: 0,
                underfill_streak: 0,
                entrance_difficulty: ad / 2.0,
                acceptance_difficulty: ad,
                ne_prev: 1,
                prev_timestamp_ms: now_ms,
                prev_prev_timestamp_ms: now_ms.saturating_sub(self.params.block_interval_ms),
                pending_tx: VecDeque::new(),
                pending_naj: VecDeque::new(),
            }
        };
        let mut even = mk(even_id, even_duty, even_miners);
        let mut odd = mk(odd_id, odd_duty, odd_miners);

        for ptx in parent.pending_tx {
            if even.duty.governs(ptx.source, &ptx.tx.id) {
                even.pending_tx.push_back(ptx);
            } else {
                odd.pending_tx.push_back(ptx);
            }
        }
        for pj in parent.pending_naj {
            if even.duty.governs(parent.id, &pj.hash) || even.duty.governs(even.id, &pj.hash) {
                even.pending_naj.push_back(pj);
            } else {
                odd.pending_naj.push_back(pj);
            }
        }

        self.global.remove(id);
        self.global.set(even_id, even.last_final);
        self.global.set(odd_id, odd.last_final);
        self.chains.insert(even_id, even);
        self.chains.insert(odd_id, odd);
        (even_id, odd_id)
    }

    /// Merge a component of chains into one. The merged chain unions the
    /// duty ranges and participants, starts above the highest block
    /// height of its history chains and restarts the cadence.
    pub fn execute_merge(&mut self, ids: &[ChainId], now_ms: u64, hasher: &dyn Hasher256) -> ChainId {
        assert!(ids.len() >= 2, "merge needs at least two chains");
        let new_id = merge_component_id(ids.to_vec());
        let mut parts: Vec<ChainState> = Vec::with_capacity(ids.len());
        for id in ids {
            parts.push(self.chains.remove(id).expect("merging unknown chain"));
            self.global.remove(*id);
        }
        let start = parts.iter().map(|c| c.height).max().unwrap();
        let mut duty = parts[0].duty.clone();
        for p in &parts[1..] {
            duty = duty.union(&p.duty);
        }
        let mut miners = Vec::new();
        let mut history: Vec<ChainId> = Vec::new();
        let mut pending_tx = VecDeque::new();
        let mut pending_naj = VecDeque::new();
        for p in parts {
            miners.extend(p.miners);
            for h in p.history_ids {
                if !history.contains(&h) {
                    history.push(h);
                }
            }
            if !history.contains(&p.id) {
                history.push(p.id);
            }
            pending_tx.extend(p.pending_tx);
            pending_naj.extend(p.pending_naj);
        }
        history.retain(|h| *h != new_id);
        assign_try_ranges(&mut miners);

        let root = ChainState::root_hash(new_id, start, hasher);
        let mut ledger = BranchLedger::new();
        ledger.insert(mwpow::BlockNode {
            hash: root,
            parent: None,
            height: start.saturating_sub(1),
            kind: BlockKind::FuelUp,
            sd_by_miner: BTreeMap::new(),
            announced: true,
            content_valid: true,
        });
        let chainpower: u64 = miners.iter().map(|m| m.cp_claim).sum();
        let ad = chainpower.max(1) as f64;
        let merged = ChainState {
            id: new_id,
            duty,
            miners,
            ledger,
            history_ids: history,
            height: start,
            cadence_base: start.saturating_sub(1),
            last_final: root,
            last_final_height: start.saturating_sub(1),
            last_final_pab: None,
            heights_without_final: 0,
            underfill_streak: 0,
            entrance_difficulty: ad / 2.0,
            acceptance_difficulty: ad,
            ne_prev: 1,
            prev_timestamp_ms: now_ms,
            prev_prev_timestamp_ms: now_ms.saturating_sub(self.params.block_interval_ms),
            pending_tx,
            pending_naj,
        };
        self.global.set(new_id, merged.last_final);
        self.chains.insert(new_id, merged);
        new_id
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chain_data::hash::Sha256Hasher;

    fn params() -> Params {
        Params {
            k: 10,
            ti: 20,
            sg: 2,
            th: 1e-6,
            block_interval_ms: 10_000,
            dn: 1.0,
            block_reward_micro: 100_000_000,
        }
    }

    fn miners(n: u64, base: u64) -> Vec<MinerRecord> {
        (0..n)
            .map(|i| {
                MinerRecord::new(
                    HashDigest::from_u64(base + i),
                    HashDigest::from_u64(10_000 + base + i),
                    10 + i,
                )
            })
            .collect()
    }

    fn one_chain_system() -> SystemState {
        let hasher = Sha256Hasher;
        let mut sys = SystemState::new(params());
        let c = ChainState::genesis(
            ChainId::ROOT,
            DutyRange::full_for(ChainId::ROOT),
            miners(8, 0),
            0,
            10_000,
            &hasher,
        );
        sys.global.set(ChainId::ROOT, c.last_final);
        sys.chains.insert(ChainId::ROOT, c);
        sys
    }

    #[test]
    fn params_validation() {
        assert!(params().validate().is_ok());
        let mut p = params();
        p.ti = 10;
        assert!(p.validate().is_err());
    }

    #[test]
    fn split_preserves_duty_partition_and_members() {
        let hasher = Sha256Hasher;
        let mut sys = one_chain_system();
        assert!(sys.duty_partition_ok());
        let (a, b) = sys.execute_split(ChainId::ROOT, 1000, &hasher);
        assert_eq!((a, b), (ChainId::new(2), ChainId::new(3)));
        assert!(sys.duty_partition_ok());
        assert_eq!(sys.total_nodes(), 8);
        assert_eq!(sys.chains[&a].npc(), 4);
        assert_eq!(sys.chains[&b].npc(), 4);
        // Alternating rank split: even child holds ranks 0,2,4,6.
        let claims: Vec<u64> = sys.chains[&a].claims_ascending();
        assert_eq!(claims, vec![10, 12, 14, 16]);
    }

    #[test]
    fn merge_restores_single_chain() {
        let hasher = Sha256Hasher;
        let mut sys = one_chain_system();
        sys.execute_split(ChainId::ROOT, 1000, &hasher);
        let merged = sys.execute_merge(&[ChainId::new(2), ChainId::new(3)], 2000, &hasher);
        assert_eq!(merged, ChainId::ROOT);
        assert!(sys.duty_partition_ok());
        assert_eq!(sys.chains[&merged].npc(), 8);
        assert!(sys.chains[&merged].history_ids.contains(&ChainId::new(2)));
        assert_eq!(sys.live_ids(), vec![ChainId::ROOT]);
    }

    #[test]
    fn merged_chain_starts_above_highest_history_height() {
        let hasher = Sha256Hasher;
        let mut sys = one_chain_system();
        sys.execute_split(ChainId::ROOT, 1000, &hasher);
        sys.chains.get_mut(&ChainId::new(2)).unwrap().height = 7;
        sys.chains.get_mut(&ChainId::new(3)).unwrap().height = 9;
        let merged = sys.execute_merge(&[ChainId::new(2), ChainId::new(3)], 2000, &hasher);
        assert_eq!(sys.chains[&merged].height, 9);
        assert_eq!(sys.chains[&merged].cadence_base, 8);
    }

    #[test]
    fn group_profile_uses_half_strength() {
        let sys = one_chain_system();
        let p = sys.group_profile().unwrap();
        let total: u64 = (0..8).map(|i| 10 + i).sum();
        assert_eq!(p.total_strength, total);
        assert_eq!(p.ap, total / 2);
        assert_eq!(p.per_group_count, 4);
    }
}
