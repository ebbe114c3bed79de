//! Verification reports: one entry per checked family of equations, with
//! failure counts and the lexicographically first witnesses.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::UnitScalar;

pub const DEFAULT_WITNESS_CAP: usize = 10;

/// Knobs shared by every verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub witness_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { witness_cap: DEFAULT_WITNESS_CAP }
    }
}

/// A failing argument tuple with both sides of the equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub args: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub checked: u64,
    pub failed: u64,
    pub witnesses: Vec<Witness>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub families: Vec<FamilyReport>,
    pub overall: Verdict,
}

impl Report {
    pub fn new(families: Vec<FamilyReport>) -> Self {
        let overall = if families.iter().all(FamilyReport::passed) { Verdict::Pass } else { Verdict::Fail };
        Report { families, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn total_witnesses(&self) -> usize {
        self.families.iter().map(|f| f.witnesses.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.families.iter().map(|f| f.family.len()).max().unwrap_or(6).max(6);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:>10}  {:>8}", "family", "checked", "failed");
        for f in &self.families {
            let _ = writeln!(out, "{:<width$}  {:>10}  {:>8}", f.family, f.checked, f.failed);
            for w in &f.witnesses {
                let _ = writeln!(out, "    at {:?}: lhs = {}, rhs = {}", w.args, w.lhs, w.rhs);
            }
        }
        let verdict = match self.overall {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        let _ = writeln!(out, "overall: {verdict}");
        out
    }
}

/// Outcome of evaluating one argument tuple.
pub type Check = Option<(String, String)>;

/// `None` when the two scalars agree, else both sides rendered.
pub fn scalar_check(lhs: UnitScalar, rhs: UnitScalar) -> Check {
    (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
}

/// Decodes `idx` in the mixed radix `radices`, most significant first.
pub fn decode_tuple(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        out[i] = idx % radices[i];
        idx /= radices[i];
    }
    out
}

/// Evaluates `eval` on every tuple of the product `radices` (in parallel on
/// the current rayon pool) and keeps the first `cap` failures in
/// lexicographic order.
pub fn check_family<F>(family: &str, radices: &[usize], opts: &VerifyOptions, eval: F) -> FamilyReport
where
    F: Fn(&[usize]) -> Check + Sync,
{
    let total: usize = radices.iter().product();
    let cap = opts.witness_cap;
    let (failed, mut wit) = (0..total)
        .into_par_iter()
        .fold(
            || (0u64, Vec::new()),
            |(mut n, mut w): (u64, Vec<(usize, Witness)>), i| {
                let args = decode_tuple(i, radices);
                if let Some((lhs, rhs)) = eval(&args) {
                    n += 1;
                    if w.len() < cap {
                        w.push((i, Witness { args, lhs, rhs }));
                    }
                }
                (n, w)
            },
        )
        .reduce(
            || (0, Vec::new()),
            |(n1, mut w1), (n2, w2)| {
                w1.extend(w2);
                (n1 + n2, w1)
            },
        );
    wit.sort_by_key(|(i, _)| *i);
    wit.truncate(cap);
    FamilyReport {
        family: family.to_string(),
        checked: total as u64,
        failed,
        witnesses: wit.into_iter().map(|(_, w)| w).collect(),
    }
}
