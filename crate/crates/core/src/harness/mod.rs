//! Simulated deployments: server nodes, adversaries, sessions, privacy
//! audits, corruption sweeps and the scheme comparison table.

mod adversary;
mod audit;
mod server;
mod session;
mod sweep;
mod table;
mod threshold;

pub use adversary::{AdversaryModel, AdversaryView, Strategy};
pub use audit::{privacy_audit, AuditMode, AuditReport, MAX_AUDIT_DRAWS};
pub use server::{Request, Response, ServerNode};
pub use session::{run_session, ParamsSummary, SessionReport, SessionStatus};
pub use sweep::{byzantine_sweep, SweepConfig, SweepFailure, SweepReport, SweepScope, MAX_EXHAUSTIVE_CASES};
pub use table::{comparison_table, ComparisonTable, Measured, SchemeColumn, TableRequest};
pub use threshold::{threshold_search, ThresholdReport, MAX_THRESHOLD_DATABASES};

use thiserror::Error;

use crate::pir::PirError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Pir(#[from] PirError),
    #[error("exhaustive guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("invalid adversary: {0}")]
    InvalidAdversary(String),
}

/// All `size`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            if n - j + 1 < size - cur.len() {
                break;
            }
            cur.push(j);
            go(j + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(1, n, size, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}
