//! Crosschain transfer protocol.
//!
//! A governed transaction moves to another chain in two steps: the origin
//! chain embeds a cross-chain request in a finally accepted block, then
//! the destination chain embeds the matching confirm. The confirm must
//! land within three block heights of the request; past the window the
//! sender may ask the origin to cancel, and the origin decides after
//! inspecting the destination's crosschain sections.

use chain_data::chain_id::ChainId;
use chain_data::hash::HashDigest;
use std::collections::HashMap;

/// Block-height difference the confirm must stay strictly under.
pub const CROSSCHAIN_WINDOW: u64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferState {
    /// Request accepted on the origin at this height.
    Requested { origin_height: u64 },
    /// Confirm accepted on the destination in time; spendable there.
    Transferred { confirm_height: u64 },
    /// Window lapsed and the origin cancelled; spendable at the origin.
    Cancelled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferOutcome {
    Transferred,
    RejectedLate,
    Cancelled,
    UnknownTransfer,
}

#[derive(Clone, Debug)]
struct Transfer {
    origin: ChainId,
    dest: ChainId,
    state: TransferState,
}

/// Tracks in-flight crosschain transfers by transaction id.
#[derive(Clone, Debug, Default)]
pub struct CrosschainTracker {
    transfers: HashMap<HashDigest, Transfer>,
}

impl CrosschainTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// A request was embedded in a finally accepted origin block.
    pub fn request(&mut self, tx: HashDigest, origin: ChainId, dest: ChainId, origin_height: u64) {
        self.transfers.insert(
            tx,
            Transfer { origin, dest, state: TransferState::Requested { origin_height } },
        );
    }

    /// A confirm was embedded on the destination at `confirm_height`.
    /// Succeeds only within the window: `confirm - request < 3`.
    pub fn confirm(&mut self, tx: &HashDigest, confirm_height: u64) -> TransferOutcome {
        match self.transfers.get_mut(tx) {
            Some(t) => match t.state {
                TransferState::Requested { origin_height } => {
                    if confirm_height.saturating_sub(origin_height) < CROSSCHAIN_WINDOW {
                        t.state = TransferState::Transferred { confirm_height };
                        TransferOutcome::Transferred
                    } else {
                        TransferOutcome::RejectedLate
                    }
                }
                TransferState::Transferred { .. } => TransferOutcome::Transferred,
                TransferState::Cancelled => TransferOutcome::Cancelled,
            },
            None => TransferOutcome::UnknownTransfer,
        }
    }

    /// The sender asks the origin to cancel. Granted only after the
    /// window lapsed without a confirm; the origin wins the race inside
    /// the window.
    pub fn cancel(&mut self, tx: &HashDigest, origin_current_height: u64) -> TransferOutcome {
        match self.transfers.get_mut(tx) {
            Some(t) => match t.state {
                TransferState::Requested { origin_height } => {
                    if origin_current_height.saturating_sub(origin_height) >= CROSSCHAIN_WINDOW {
                        t.state = TransferState::Cancelled;
                        TransferOutcome::Cancelled
                    } else {
                        TransferOutcome::UnknownTransfer
                    }
                }
                TransferState::Transferred { .. } => TransferOutcome::Transferred,
                TransferState::Cancelled => TransferOutcome::Cancelled,
            },
            None => TransferOutcome::UnknownTransfer,
        }
    }

    pub fn state(&self, tx: &HashDigest) -> Option<TransferState> {
        self.transfers.get(tx).map(|t| t.state)
    }

    pub fn origin_dest(&self, tx: &HashDigest) -> Option<(ChainId, ChainId)> {
        self.transfers.get(tx).map(|t| (t.origin, t.dest))
    }

    /// Transfers still pending past the window from the origin's view.
    pub fn stale_requests(&self, origin: ChainId, current_height: u64) -> Vec<HashDigest> {
        self.transfers
            .iter()
            .filter(|(_, t)| {
                t.origin == origin
                    && matches!(t.state, TransferState::Requested { origin_height }
                        if current_height.saturating_sub(origin_height) >= CROSSCHAIN_WINDOW)
            })
            .map(|(tx, _)| *tx)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tx(n: u64) -> HashDigest {
        HashDigest::from_u64(n)
    }

    #[test]
    fn confirm_inside_window_transfers() {
        let mut tr = CrosschainTracker::new();
        tr.request(tx(1), ChainId::new(6), ChainId::new(5), 10);
        assert_eq!(tr.confirm(&tx(1), 12), TransferOutcome::Transferred);
        assert_eq!(tr.state(&tx(1)), Some(TransferState::Transferred { confirm_height: 12 }));
    }

    #[test]
    fn confirm_at_window_boundary_is_late() {
        let mut tr = CrosschainTracker::new();
        tr.request(tx(1), ChainId::new(6), ChainId::new(5), 10);
        assert_eq!(tr.confirm(&tx(1), 13), TransferOutcome::RejectedLate);
        // Still requested; the sender can cancel.
        assert_eq!(tr.cancel(&tx(1), 13), TransferOutcome::Cancelled);
    }

    #[test]
    fn cancel_respects_the_window_race() {
        let mut tr = CrosschainTracker::new();
        tr.request(tx(1), ChainId::new(6), ChainId::new(5), 10);
        // Inside the window the origin refuses to cancel.
        assert_eq!(tr.cancel(&tx(1), 11), TransferOutcome::UnknownTransfer);
        // A confirm then completes the transfer and cancel cannot undo it.
        assert_eq!(tr.confirm(&tx(1), 12), TransferOutcome::Transferred);
        assert_eq!(tr.cancel(&tx(1), 20), TransferOutcome::Transferred);
    }

    #[test]
    fn unsent_cancel_leaves_transfer_pending() {
        let mut tr = CrosschainTracker::new();
        tr.request(tx(1), ChainId::new(6), ChainId::new(5), 10);
        assert_eq!(tr.state(&tx(1)), Some(TransferState::Requested { origin_height: 10 }));
        assert_eq!(tr.stale_requests(ChainId::new(6), 13), vec![tx(1)]);
        assert!(tr.stale_requests(ChainId::new(6), 12).is_empty());
    }
}
