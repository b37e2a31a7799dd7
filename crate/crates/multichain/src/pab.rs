//! Power-assignment block formation.
//!
//! A Pab carries an assignment box with two sections. The re-assignment
//! section rotates out the cohort whose lifelength expires: their join
//! records are shuffled by the global-header root and bucketed straight
//! onto destination chains. The new-participant section admits qualifying
//! join records through a seven-step filter: group bucketing by boundary,
//! proximity ranking to the group midpoint, per-group quota, a top-heavy
//! power prune, the same global-header shuffle and a round-robin spread
//! over subsections whose destination chains resolve from the Pab's own
//! hash once it is announced.

use chain_data::chain_id::ChainId;
use chain_data::hash::{HashDigest, Hasher256};
use chain_data::structures::{AssignmentBox, BoxEntry};

/// Inputs shared by both assignment sections.
pub struct PabContext<'a> {
    /// Merkle root of the global block header in the chain's latest block.
    pub mgbh: HashDigest,
    /// Live chains ranked alphabetically by id string.
    pub ranked_chains: &'a [ChainId],
    pub k: usize,
    pub sg: usize,
    /// Current group boundaries, length `sg`.
    pub bl: &'a [u64],
    pub hasher: &'a dyn Hasher256,
}

fn shuffle_key(hasher: &dyn Hasher256, mgbh: &HashDigest, item_hash: &HashDigest) -> HashDigest {
    hasher.digest(mgbh.xor(item_hash).as_bytes())
}

/// Rank chain ids alphabetically by their display string.
pub fn rank_chains_alphabetical(mut ids: Vec<ChainId>) -> Vec<ChainId> {
    ids.sort_by_key(|id| id.to_string());
    ids
}

/// Build the re-assignment section from the departing cohort.
///
/// The cohort sorts ascending by claim into PSL, each entry gets the
/// shuffle key `H(MGBH xor H(entry))`, the keys re-rank the list, and
/// entry `j` lands in subsection `(hash(entry) + j) mod NC`, which maps
/// onto the equally ranked chain.
pub fn reassignment_section(
    cohort: &[(HashDigest, u64)],
    ctx: &PabContext<'_>,
) -> Vec<(ChainId, Vec<BoxEntry>)> {
    if cohort.is_empty() || ctx.ranked_chains.is_empty() {
        return Vec::new();
    }
    let nc = ctx.ranked_chains.len() as u64;
    let mut psl: Vec<(HashDigest, u64)> = cohort.to_vec();
    psl.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut keyed: Vec<(HashDigest, (HashDigest, u64))> = psl
        .into_iter()
        .map(|e| (shuffle_key(ctx.hasher, &ctx.mgbh, &e.0), e))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut buckets: Vec<Vec<BoxEntry>> = vec![Vec::new(); nc as usize];
    for (j, (_, entry)) in keyed.into_iter().enumerate() {
        let bucket = ((entry.0.mod_u64(nc) + j as u64) % nc) as usize;
        buckets[bucket].push((entry.0, entry.1 as u32));
    }
    buckets
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(i, b)| (ctx.ranked_chains[i], b))
        .collect()
}

/// Build the new-participant subsections from qualified join records
/// (`(record hash, intended difficulty)` pairs).
pub fn new_participant_section(
    candidates: &[(HashDigest, u64)],
    ctx: &PabContext<'_>,
) -> Vec<Vec<BoxEntry>> {
    let sg = ctx.sg;
    let subsections = ctx.ranked_chains.len().min(ctx.k).max(1);
    if candidates.is_empty() {
        return vec![Vec::new(); subsections];
    }

    // Step 1: bucket by group boundary; bl(Sg) is unbounded.
    let mut lists: Vec<Vec<(HashDigest, u64)>> = vec![Vec::new(); sg];
    for &(h, ind) in candidates {
        lists[crate::boundaries::group_of(ind, ctx.bl)].push((h, ind));
    }

    // Step 2: rank each list by distance to the group midpoint
    // tt = (bl(i+1) + bl(i)) / 2, the top group using its own boundary.
    for (i, list) in lists.iter_mut().enumerate() {
        let upper = if i + 1 < sg { ctx.bl[i + 1] } else { ctx.bl[sg - 1] };
        let tt = (ctx.bl[i] + upper) / 2;
        list.sort_by(|a, b| {
            a.1.abs_diff(tt)
                .cmp(&b.1.abs_diff(tt))
                .then_with(|| a.0.cmp(&b.0))
        });
    }

    // Step 3: per-group quota of K/Sg from the top of each list.
    let quota = (ctx.k / sg).max(1);
    let mut selected: Vec<(HashDigest, u64)> = Vec::new();
    for list in &lists {
        selected.extend(list.iter().take(quota).copied());
    }

    // Step 4: prune top-heavy power. With the list ranked descending by
    // claim, drop from the top while the front third claims more than
    // half of the total. The front count is ceil(len/3); once the front
    // is the whole remainder the rule has nothing left to compare.
    selected.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    loop {
        let len = selected.len();
        let front = len.div_ceil(3);
        if len == 0 || front >= len {
            break;
        }
        let front_sum: u64 = selected.iter().take(front).map(|e| e.1).sum();
        let total: u64 = selected.iter().map(|e| e.1).sum();
        if 2 * front_sum > total {
            selected.remove(0);
        } else {
            break;
        }
    }

    // Step 5: alphabetical pre-rank by record hash, then the shuffle.
    selected.sort_by(|a, b| a.0.cmp(&b.0));
    let mut keyed: Vec<(HashDigest, (HashDigest, u64))> = selected
        .into_iter()
        .map(|e| (shuffle_key(ctx.hasher, &ctx.mgbh, &e.0), e))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));

    // Steps 6-7: shuffled rank i goes to subsection i mod min(NC, K).
    let mut sections: Vec<Vec<BoxEntry>> = vec![Vec::new(); subsections];
    for (i, (_, entry)) in keyed.into_iter().enumerate() {
        sections[i % subsections].push((entry.0, entry.1 as u32));
    }
    sections
}

/// Assemble the whole box for a Pab.
pub fn form_pab_box(
    reassign_cohort: &[(HashDigest, u64)],
    new_candidates: &[(HashDigest, u64)],
    ctx: &PabContext<'_>,
) -> AssignmentBox {
    AssignmentBox {
        new_participant: new_participant_section(new_candidates, ctx),
        reassignment: reassignment_section(reassign_cohort, ctx),
    }
}

/// Destination chain of a new-participant entry at shuffled rank `rank`.
///
/// The subsection index is `rank mod min(NC, K)`; the subsection maps to
/// a chain by `H(pab hash || MGBH || subsection) mod NC` over the
/// alphabetical chain ranking. The Pab's own hash keeps destinations
/// unpredictable until the block exists.
pub fn assigned_chain_for_rank(
    hasher: &dyn Hasher256,
    pab_hash: &HashDigest,
    mgbh: &HashDigest,
    rank: u32,
    subsections: u32,
    ranked_chains: &[ChainId],
) -> ChainId {
    let subsection = rank % subsections.max(1);
    let digest = hasher.digest_parts(&[
        pab_hash.as_bytes(),
        mgbh.as_bytes(),
        &subsection.to_le_bytes(),
    ]);
    ranked_chains[digest.mod_u64(ranked_chains.len() as u64) as usize]
}
