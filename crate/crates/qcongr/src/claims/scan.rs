//! Parameter scans: one report per tuple in the requested ranges, in
//! deterministic parameter order regardless of execution order. Tuples
//! violating a claim's hypothesis are reported as HYPOTHESIS_FAIL.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::claims::builtin::{builtin, claim_params};
use crate::claims::types::{ClaimError, Strategy, VerificationReport};
use crate::claims::verify;

/// Finite parameter ranges for a scan. Unlisted parameters a claim needs
/// make the scan fail loudly.
#[derive(Clone, Debug)]
pub struct ScanRange {
    pub d: Option<RangeInclusive<i64>>,
    pub s: Option<Vec<i64>>,
    pub n: RangeInclusive<i64>,
}

impl ScanRange {
    pub fn n_only(n: RangeInclusive<i64>) -> ScanRange {
        ScanRange {
            d: None,
            s: None,
            n,
        }
    }

    pub fn with_d(d: RangeInclusive<i64>, n: RangeInclusive<i64>) -> ScanRange {
        ScanRange {
            d: Some(d),
            s: None,
            n,
        }
    }

    pub fn with_d_s(
        d: RangeInclusive<i64>,
        s: Vec<i64>,
        n: RangeInclusive<i64>,
    ) -> ScanRange {
        ScanRange {
            d: Some(d),
            s: Some(s),
            n,
        }
    }
}

/// Enumerate all parameter tuples for a claim family, in (d, s, n) order.
pub fn tuples(name: &str, range: &ScanRange) -> Result<Vec<BTreeMap<String, i64>>, ClaimError> {
    let needed = claim_params(name)?;
    let needs = |p: &str| needed.contains(&p);
    let ds: Vec<i64> = if needs("d") {
        range
            .d
            .clone()
            .ok_or_else(|| ClaimError::MissingParameter("d".to_string()))?
            .collect()
    } else {
        vec![0]
    };
    let ss: Vec<i64> = if needs("s") {
        range.s.clone().unwrap_or_else(|| vec![-1, 1])
    } else {
        vec![0]
    };
    let ns: Vec<i64> = range.n.clone().collect();
    let mut out = Vec::new();
    for &d in &ds {
        for &s in &ss {
            for &n in &ns {
                let mut params = BTreeMap::new();
                if needs("d") {
                    params.insert("d".to_string(), d);
                }
                if needs("s") {
                    params.insert("s".to_string(), s);
                }
                params.insert("n".to_string(), n);
                out.push(params);
            }
        }
    }
    Ok(out)
}

/// Run a claim family over the ranges. Reports are returned in tuple order;
/// evaluation parallelizes across tuples.
pub fn scan(
    name: &str,
    range: &ScanRange,
    strategy: Strategy,
    seed: u64,
) -> Result<Vec<VerificationReport>, ClaimError> {
    let tuples = tuples(name, range)?;
    let claims = tuples
        .iter()
        .map(|params| builtin(name, params))
        .collect::<Result<Vec<_>, _>>()?;
    claims
        .par_iter()
        .map(|claim| verify(claim, strategy, seed))
        .collect()
}

/// Only the admissible (hypothesis-satisfying) reports of a scan.
pub fn scan_admissible(
    name: &str,
    range: &ScanRange,
    strategy: Strategy,
    seed: u64,
) -> Result<Vec<VerificationReport>, ClaimError> {
    Ok(scan(name, range, strategy, seed)?
        .into_iter()
        .filter(|r| r.outcome != crate::claims::Outcome::HypothesisFail)
        .collect())
}
