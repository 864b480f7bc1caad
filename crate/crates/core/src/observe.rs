//! The external-observer view of a trace: what a lightweight client can see.
//!
//! An observer gets emitted events and public allowance reads — never the
//! transaction sender. A `Transfer` event names who lost and who received
//! tokens, so when several spenders are authorized it cannot be attributed
//! to any one of them. The ground-truth attribution lives only in the trace
//! itself (`Trace::spender_outflow`).

use serde::Serialize;

use crate::ledger::{Address, Event};
use crate::trace::{AllowanceRead, Trace, TraceStep};

/// Everything a lightweight monitor acting for `reader` can extract from a
/// trace: its own allowance samples and the events that mention it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub allowance_reads: Vec<AllowanceRead>,
    pub visible_events: Vec<Event>,
}

impl Observation {
    /// Canonical byte form, for equality arguments about what two different
    /// histories look like from the outside.
    pub fn to_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("observation serializes")
    }

    /// Distinct spenders the reader has ever granted a nonzero allowance,
    /// judging purely from its visible approval events.
    pub fn authorized_spenders(&self, reader: &Address) -> Vec<Address> {
        let mut spenders = Vec::new();
        for event in &self.visible_events {
            if let Event::Approval {
                owner,
                spender,
                value,
            } = event
            {
                if owner == reader && !value.is_zero() && !spenders.contains(spender) {
                    spenders.push(spender.clone());
                }
            }
        }
        spenders
    }

    /// Whether any visible transfer drained the reader at or after the given
    /// event position.
    pub fn transfer_from_reader_since(&self, reader: &Address, event_position: usize) -> bool {
        self.visible_events[event_position.min(self.visible_events.len())..]
            .iter()
            .any(|ev| matches!(ev, Event::Transfer { from, .. } if from == reader))
    }
}

/// Projects a trace onto what `reader` can see: transfer events where it is
/// the losing side, its own approval events, and the allowance samples taken
/// after its own transactions confirmed. The initiator of a transfer is
/// stripped by construction — the event type does not carry it.
pub fn observe(trace: &Trace, reader: &Address) -> Observation {
    observe_steps(&trace.steps, reader)
}

/// Same projection over a step slice; used mid-run, before a trace is
/// finished.
pub fn observe_steps(steps: &[TraceStep], reader: &Address) -> Observation {
    let mut allowance_reads = Vec::new();
    let mut visible_events = Vec::new();
    for step in steps {
        if let Some(read) = &step.allowance_read {
            if &read.owner == reader && step.tx.sender == *reader {
                allowance_reads.push(read.clone());
            }
        }
        for event in &step.receipt.events {
            let visible = match event {
                Event::Transfer { from, .. } => from == reader,
                Event::Approval { owner, .. } => owner == reader,
            };
            if visible {
                visible_events.push(event.clone());
            }
        }
    }
    Observation {
        allowance_reads,
        visible_events,
    }
}
