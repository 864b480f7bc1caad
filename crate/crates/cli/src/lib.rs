//! Scenario-file parsing and text rendering behind the `allowance-lab`
//! binary.

pub mod dsl;
pub mod output;
