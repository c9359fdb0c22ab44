//! Independent brute-force oracle and verification reports. The oracle
//! deliberately shares no counting code with the partition module: it is the
//! trust anchor every construction is checked against.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{QMatrix, RegularPartition};
use crate::tournament::Tournament;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ground-set sizes above this make the quadratic oracle expensive; callers
/// get a warning line in the report rather than a refusal.
pub const ORACLE_SIZE_WARNING: u64 = 200_000;

/// Dominance margin by exhaustive double loop:
/// `#{(a,b) : a > b} - #{(a,b) : b > a}`. Quadratic on purpose.
pub fn oracle_q(a: &[u64], b: &[u64]) -> Result<i64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("oracle_q needs nonempty sets".into()));
    }
    let mut above: i64 = 0;
    let mut below: i64 = 0;
    for &x in a {
        for &y in b {
            if x > y {
                above += 1;
            } else if y > x {
                below += 1;
            } else {
                return Err(Error::InvalidInput(format!(
                    "sets are not disjoint: share {x}"
                )));
            }
        }
    }
    Ok(above - below)
}

/// All pairwise margins via the oracle.
pub fn oracle_q_matrix(p: &RegularPartition) -> QMatrix {
    let n = p.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let eval = |&(i, j): &(usize, usize)| -> i64 {
        oracle_q(p.block(i), p.block(j)).expect("partition blocks are disjoint")
    };
    #[cfg(feature = "parallel")]
    let vals: Vec<i64> = pairs.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let vals: Vec<i64> = pairs.iter().map(eval).collect();
    QMatrix::from_fn(n, &vals)
}

/// Outcome of checking a partition against a target tournament.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Number of blocks.
    pub n: usize,
    /// Block size.
    pub block_size: usize,
    /// Oracle margins between all block pairs.
    pub q_matrix: QMatrix,
    /// Edges of the induced digraph (from oracle margins), 0-based.
    pub induced_edges: Vec<(usize, usize)>,
    /// Tied pairs (zero margin), 0-based, `i < j`.
    pub ties: Vec<(usize, usize)>,
    /// Target edges when a target was supplied.
    pub target_edges: Option<Vec<(usize, usize)>>,
    /// True iff the induced digraph equals the target exactly.
    pub matches: bool,
    /// Unordered pairs `{i, j}` (reported as `i < j`) where induced and
    /// target disagree.
    pub mismatches: Vec<(usize, usize)>,
    /// Every block sum equals `N(Nn+1)/2`.
    pub proper: bool,
    /// Stratification verdict; only populated when `N = 3`.
    pub stratified: Option<bool>,
    /// Ground set large enough that the quadratic oracle is slow.
    pub oracle_size_warning: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "blocks: {}", self.n)?;
        writeln!(f, "block_size: {}", self.block_size)?;
        writeln!(f, "proper: {}", self.proper)?;
        if let Some(s) = self.stratified {
            writeln!(f, "stratified: {s}")?;
        }
        if self.oracle_size_warning {
            writeln!(
                f,
                "warning: ground set exceeds {ORACLE_SIZE_WARNING} elements; oracle is quadratic"
            )?;
        }
        let fmt_edges = |edges: &[(usize, usize)]| -> String {
            edges
                .iter()
                .map(|&(i, j)| format!("{}>{}", i + 1, j + 1))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "induced: {}", fmt_edges(&self.induced_edges))?;
        if !self.ties.is_empty() {
            writeln!(f, "ties: {}", fmt_edges(&self.ties))?;
        }
        if self.target_edges.is_some() {
            writeln!(f, "match: {}", self.matches)?;
            if !self.mismatches.is_empty() {
                writeln!(f, "mismatched_pairs: {}", fmt_edges(&self.mismatches))?;
            }
        }
        Ok(())
    }
}

/// Full report for a partition alone (no target).
pub fn inspect(p: &RegularPartition) -> VerificationReport {
    build_report(p, None)
}

/// Checks that the partition's induced digraph (computed from oracle margins)
/// equals the target tournament exactly.
pub fn verify_model(p: &RegularPartition, target: &Tournament) -> Result<VerificationReport> {
    if p.n() != target.n() {
        return Err(Error::InvalidInput(format!(
            "partition has {} blocks but tournament has {} vertices",
            p.n(),
            target.n()
        )));
    }
    Ok(build_report(p, Some(target)))
}

fn build_report(p: &RegularPartition, target: Option<&Tournament>) -> VerificationReport {
    let n = p.n();
    let q = oracle_q_matrix(p);
    let induced = q.induced_digraph();
    let mut mismatches = Vec::new();
    if let Some(t) = target {
        for i in 0..n {
            for j in i + 1..n {
                if induced.has_edge(i, j) != t.has_edge(i, j)
                    || induced.has_edge(j, i) != t.has_edge(j, i)
                {
                    mismatches.push((i, j));
                }
            }
        }
    }
    VerificationReport {
        n,
        block_size: p.block_size(),
        induced_edges: induced.edges(),
        ties: induced.ties(),
        target_edges: target.map(|t| t.edges()),
        matches: target.is_some() && mismatches.is_empty(),
        mismatches,
        proper: p.is_proper(),
        stratified: if p.block_size() == 3 {
            p.is_stratified().ok()
        } else {
            None
        },
        oracle_size_warning: p.ground_size() > ORACLE_SIZE_WARNING,
        q_matrix: q,
    }
}
