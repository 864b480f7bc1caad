//! Plain-text rendering of traces and events. Output is deterministic:
//! stable ordering, no timestamps.

use std::fmt::Write as _;

use allowance_lab::ledger::{Event, Status};
use allowance_lab::trace::Trace;

fn event_line(event: &Event) -> String {
    match event {
        Event::Transfer { from, to, value } => format!("Transfer({from}->{to},{value})"),
        Event::Approval {
            owner,
            spender,
            value,
        } => format!("Approval({owner}->{spender},{value})"),
    }
}

/// One line per executed transaction: index, sender, call, status, events.
pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let status = match step.receipt.status {
            Status::Success => "success".to_string(),
            Status::Revert => format!(
                "revert({})",
                step.receipt
                    .reason
                    .map(|r| r.as_str())
                    .unwrap_or("unspecified")
            ),
        };
        let events = step
            .receipt
            .events
            .iter()
            .map(event_line)
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(
            out,
            "[{}] {} {} -> {status} [{events}]",
            step.index, step.tx.sender, step.tx.call
        )
        .unwrap();
    }
    out
}
