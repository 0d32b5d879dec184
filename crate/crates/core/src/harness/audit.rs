use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use super::{subsets, HarnessError, ParamsSummary};
use crate::gf::{linalg, ExtElem, Field};
use crate::pir::{encode_entry, SchemeParams};

/// Largest number of random draws per entry the exhaustive audit enumerates.
pub const MAX_AUDIT_DRAWS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditMode {
    /// Enumerate every blinding draw per entry and compare exact
    /// distributions across target indices.
    Exhaustive,
    /// Check that the blinding-to-view map is a bijection.
    TransferMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub params: ParamsSummary,
    pub seed: Option<u64>,
    pub mode: AuditMode,
    pub subsets_checked: usize,
    pub cases_total: u64,
    pub cases_failed: u64,
    pub failures: Vec<String>,
    /// Exact rational; `"0"` means identical distributions.
    pub max_tv_distance: Option<String>,
    pub privacy_claimed: bool,
    pub verdict: String,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.privacy_claimed && self.cases_failed == 0
    }

    pub fn max_tv(&self) -> Option<Ratio<u64>> {
        self.max_tv_distance.as_ref().map(|s| s.parse().expect("formatted ratio"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const BEYOND: &str = "beyond threshold, privacy not claimed";

/// Audit what a coalition learns about the target index.
///
/// `coalition` lists one-based server ids; `None` audits every `t`-subset.
/// A coalition larger than `t` is out of contract: the report says so and,
/// where the enumeration is small enough, still shows the leak.
pub fn privacy_audit(
    params: &SchemeParams,
    coalition: Option<&[usize]>,
    mode: AuditMode,
) -> Result<AuditReport, HarnessError> {
    let sets: Vec<Vec<usize>> = match coalition {
        Some(c) => {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            if c.is_empty() || c.iter().any(|&j| j == 0 || j > params.k) {
                return Err(HarnessError::InvalidAdversary(format!(
                    "coalition {c:?} must be a nonempty subset of [1, {}]",
                    params.k
                )));
            }
            vec![c]
        }
        None => subsets(params.k, params.t),
    };
    let oversized = sets.iter().any(|s| s.len() > params.t);
    let mut report = AuditReport {
        params: ParamsSummary::of(params),
        seed: None,
        mode,
        subsets_checked: sets.len(),
        cases_total: 0,
        cases_failed: 0,
        failures: Vec::new(),
        max_tv_distance: None,
        privacy_claimed: !oversized,
        verdict: String::new(),
    };
    match mode {
        AuditMode::Exhaustive => exhaustive(params, &sets, &mut report)?,
        AuditMode::TransferMatrix => transfer(params, &sets, &mut report),
    }
    report.verdict = if oversized {
        BEYOND.into()
    } else if report.cases_failed == 0 {
        format!("{}-private: coalition views are independent of the target index", params.t)
    } else {
        "privacy violated".into()
    };
    Ok(report)
}

fn exhaustive(params: &SchemeParams, sets: &[Vec<usize>], report: &mut AuditReport) -> Result<(), HarnessError> {
    let ext = params.ext();
    let draws = (ext.order() as u128).checked_pow(params.t as u32).unwrap_or(u128::MAX);
    if draws > MAX_AUDIT_DRAWS as u128 {
        return Err(HarnessError::GuardExceeded(format!(
            "(q^s)^t = {draws} blinding draws per entry exceeds {MAX_AUDIT_DRAWS}; use the transfer-matrix audit"
        )));
    }
    let draws = draws as u64;
    let mut max_tv = Ratio::new(0u64, 1);
    for set in sets {
        for row in 0..params.m {
            for col in 0..params.delta {
                let dists: Vec<BTreeMap<Vec<u64>, u64>> = (1..=params.m)
                    .map(|iota| view_distribution(params, set, row, col, iota, draws))
                    .collect();
                for i1 in 0..params.m {
                    for i2 in i1 + 1..params.m {
                        report.cases_total += 1;
                        let tv = total_variation(&dists[i1], &dists[i2], draws);
                        if tv > max_tv {
                            max_tv = tv;
                        }
                        if tv != Ratio::new(0, 1) && report.failures.len() < 32 {
                            report.failures.push(format!(
                                "servers {set:?}, entry ({}, {}), iota {} vs {}: TV {tv}",
                                row + 1,
                                col + 1,
                                i1 + 1,
                                i2 + 1
                            ));
                        }
                        if tv != Ratio::new(0, 1) {
                            report.cases_failed += 1;
                        }
                    }
                }
            }
        }
    }
    report.max_tv_distance = Some(max_tv.to_string());
    Ok(())
}

/// Exact counts of the coalition's view of entry `(row, col)` over all
/// blinding draws, for target `iota`.
fn view_distribution(
    params: &SchemeParams,
    set: &[usize],
    row: usize,
    col: usize,
    iota: usize,
    draws: u64,
) -> BTreeMap<Vec<u64>, u64> {
    let ext = params.ext();
    let order = ext.order();
    let indicator: Vec<ExtElem> = (0..params.delta)
        .map(|a| if row + 1 == iota && a == col { ext.one() } else { ext.zero() })
        .collect();
    let mut counts = BTreeMap::new();
    for d in 0..draws {
        let mut idx = d;
        let blinds: Vec<ExtElem> = (0..params.t)
            .map(|_| {
                let x = ext.from_index(idx % order);
                idx /= order;
                x
            })
            .collect();
        let values = encode_entry(params, &indicator, &blinds);
        let view: Vec<u64> = set.iter().map(|&j| ext.index_of(&values[j - 1])).collect();
        *counts.entry(view).or_insert(0) += 1;
    }
    counts
}

fn total_variation(a: &BTreeMap<Vec<u64>, u64>, b: &BTreeMap<Vec<u64>, u64>, total: u64) -> Ratio<u64> {
    let mut diff = 0u64;
    for (k, &ca) in a {
        diff += ca.abs_diff(b.get(k).copied().unwrap_or(0));
    }
    for (k, &cb) in b {
        if !a.contains_key(k) {
            diff += cb;
        }
    }
    Ratio::new(diff, 2 * total)
}

/// The coalition's view of one entry is `indicator term + M·r` where
/// `M[a][h] = M_h(β_{j_a})`; full row rank makes it uniform whatever the
/// target.
fn transfer(params: &SchemeParams, sets: &[Vec<usize>], report: &mut AuditReport) {
    let ext = params.ext();
    let weights = params.blind_weights();
    for set in sets {
        report.cases_total += 1;
        let matrix: linalg::Matrix<ExtElem> = set.iter().map(|&j| weights[j - 1].clone()).collect();
        let rank = linalg::rank(ext, &matrix);
        if rank < set.len() {
            report.cases_failed += 1;
            if report.failures.len() < 32 {
                report
                    .failures
                    .push(format!("servers {set:?}: transfer matrix has rank {rank} < {}", set.len()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::SetupRequest;

    #[test]
    fn single_servers_learn_nothing() {
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 2)).unwrap();
        let rep = privacy_audit(&p, None, AuditMode::Exhaustive).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.max_tv_distance.as_deref(), Some("0"));
        assert_eq!(rep.subsets_checked, 4);
        let rep = privacy_audit(&p, Some(&[3]), AuditMode::Exhaustive).unwrap();
        assert_eq!(rep.max_tv(), Some(Ratio::new(0, 1)));
    }

    #[test]
    fn pairs_exceed_the_threshold_and_leak() {
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 2)).unwrap();
        let rep = privacy_audit(&p, Some(&[1, 2]), AuditMode::Exhaustive).unwrap();
        assert!(!rep.privacy_claimed);
        assert_eq!(rep.verdict, BEYOND);
        assert!(rep.max_tv().unwrap() > Ratio::new(0, 1));
        let rep = privacy_audit(&p, Some(&[1, 2]), AuditMode::TransferMatrix).unwrap();
        assert_eq!(rep.verdict, BEYOND);
        assert_eq!(rep.cases_failed, 1);
    }

    #[test]
    fn transfer_matrices_are_invertible() {
        for req in [
            SetupRequest::new(7, 1, 1, 5, 2),
            SetupRequest::new(9, 2, 1, 5, 2),
            SetupRequest::new(8, 2, 0, 5, 2),
        ] {
            let p = SchemeParams::setup(&req).unwrap();
            let rep = privacy_audit(&p, None, AuditMode::TransferMatrix).unwrap();
            assert!(rep.passed(), "{req:?}: {rep:?}");
            assert_eq!(rep.cases_total as u128, super::super::binomial(p.k, p.t));
        }
    }

    #[test]
    fn exhaustive_guard() {
        let p = SchemeParams::setup(&SetupRequest::new(9, 2, 1, 5, 1)).unwrap();
        assert!(matches!(
            privacy_audit(&p, None, AuditMode::Exhaustive),
            Err(HarnessError::GuardExceeded(_))
        ));
    }

    #[test]
    fn exhaustive_audit_in_extension_field() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 1, 5, 2)).unwrap();
        let rep = privacy_audit(&p, Some(&[5]), AuditMode::Exhaustive).unwrap();
        assert!(rep.passed());
    }
}
