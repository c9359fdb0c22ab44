//! Ground-set rewriting: block relabeling, ground permutations, simple
//! switches with predicted margin deltas, the stratification algorithm, and
//! switch-path extraction between partitions of the same shape.
//!
//! A simple switch swaps the adjacent ground values `k` and `k+1` between
//! their blocks. It changes exactly one ordered margin by +2 (the pair
//! holding `k+1` afterwards) and leaves every other margin alone, which makes
//! switch sequences auditable and replayable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::RegularPartition;
use crate::tournament::{check_permutation, invert};

/// One applied simple switch. `pair = Some((p1, p2))` records the blocks that
/// exchanged elements, ordered so that `p1` holds `k+1` after the switch and
/// `Q(p1, p2)` grew by `delta = 2`. `pair = None` marks a same-block no-op.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwitchRecord {
    /// The transposed ground values are `k` and `k+1`.
    pub k: u64,
    /// Affected block pair, 0-based, or `None` when both values share a block.
    pub pair: Option<(usize, usize)>,
    /// Margin delta applied to the ordered pair: 0 or +2.
    pub delta: i64,
}

/// Permutes block labels: block `i` of the output is block `pi^-1(i)` of the
/// input, so the induced digraph is relabeled by `pi`.
pub fn relabel_blocks(p: &RegularPartition, pi: &[usize]) -> Result<RegularPartition> {
    check_permutation(pi, p.n())?;
    let inv = invert(pi);
    let blocks = (0..p.n()).map(|i| p.block(inv[i]).to_vec()).collect();
    RegularPartition::new(blocks)
}

/// Applies a ground-set permutation elementwise. Always yields a valid
/// partition; margins carry no guarantee in general.
pub fn permute_ground(p: &RegularPartition, pi: &[u64]) -> Result<RegularPartition> {
    let g = p.ground_size();
    if pi.len() as u64 != g {
        return Err(Error::InvalidInput(format!(
            "permutation length {} does not match ground size {g}",
            pi.len()
        )));
    }
    let mut seen = vec![false; g as usize];
    for &x in pi {
        if x == 0 || x > g || seen[x as usize - 1] {
            return Err(Error::InvalidInput("not a ground-set permutation".into()));
        }
        seen[x as usize - 1] = true;
    }
    let blocks = p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&a| pi[a as usize - 1]).collect())
        .collect();
    RegularPartition::new(blocks)
}

/// Swaps the ground values `k` and `k+1` between their blocks. When both live
/// in one block the partition is unchanged and the record carries delta 0.
pub fn apply_simple_switch(
    p: &RegularPartition,
    k: u64,
) -> Result<(RegularPartition, SwitchRecord)> {
    let g = p.ground_size();
    if k == 0 || k >= g {
        return Err(Error::InvalidInput(format!(
            "switch index must lie in 1..={}",
            g - 1
        )));
    }
    let holder = |x: u64| -> usize {
        p.blocks()
            .iter()
            .position(|b| b.binary_search(&x).is_ok())
            .expect("ground value belongs to some block")
    };
    let p1 = holder(k);
    let p2 = holder(k + 1);
    if p1 == p2 {
        return Ok((
            p.clone(),
            SwitchRecord {
                k,
                pair: None,
                delta: 0,
            },
        ));
    }
    let mut blocks = p.blocks().to_vec();
    blocks[p1].retain(|&x| x != k);
    blocks[p1].push(k + 1);
    blocks[p2].retain(|&x| x != k + 1);
    blocks[p2].push(k);
    let next = RegularPartition::new(blocks)?;
    Ok((
        next,
        SwitchRecord {
            k,
            pair: Some((p1, p2)),
            delta: 2,
        },
    ))
}

/// Rewrites a 3-per-block partition into a stratified one with the identical
/// induced digraph, purely by simple switches. Works level 3 down to the
/// interval `{2n+1..3n}` first, then level 2 down to `{n+1..2n}`; each switch
/// lowers one margin by 2 from a value of at least 3, so no edge can reverse.
/// A switch that would cross zero is a construction defect and is reported,
/// never silently accepted.
pub fn stratify(p: &RegularPartition) -> Result<(RegularPartition, Vec<SwitchRecord>)> {
    if p.block_size() != 3 {
        return Err(Error::InvalidInput(format!(
            "stratification requires block size 3, got {}",
            p.block_size()
        )));
    }
    let n = p.n() as u64;
    let mut cur = p.clone();
    let mut log = Vec::new();
    // level index 2 settles into [2n+1, 3n], then level index 1 into [n+1, 2n]
    for (level, floor) in [(2usize, 2 * n + 1), (1usize, n + 1)] {
        loop {
            let level_min = cur
                .blocks()
                .iter()
                .map(|b| b[level])
                .min()
                .expect("partition has blocks");
            if level_min >= floor {
                break;
            }
            // smallest value above level_min that is not a level element;
            // everything between is, so it bubbles straight down
            let is_level_elem =
                |part: &RegularPartition, v: u64| part.blocks().iter().any(|b| b[level] == v);
            let mut w = level_min + 1;
            while is_level_elem(&cur, w) {
                w += 1;
            }
            while w > level_min {
                let (next, rec) = checked_switch(&cur, w - 1)?;
                cur = next;
                log.push(rec);
                w -= 1;
            }
        }
    }
    debug_assert!(cur.is_stratified().unwrap());
    Ok((cur, log))
}

/// Switch that must not reverse an edge: the shrinking margin is required to
/// be at least 3 beforehand.
fn checked_switch(p: &RegularPartition, k: u64) -> Result<(RegularPartition, SwitchRecord)> {
    let (next, rec) = apply_simple_switch(p, k)?;
    if let Some((p1, p2)) = rec.pair {
        // Q(p2, p1) shrinks by 2
        let before = crate::partition::q_value(p.block(p2), p.block(p1))?;
        if before < 3 {
            return Err(Error::ConstructionInvariant(format!(
                "switch at k={k} would drop Q({},{}) from {before} below 1",
                p2 + 1,
                p1 + 1
            )));
        }
    }
    Ok((next, rec))
}

/// A sequence of simple switches carrying `p`'s ground arrangement onto
/// `target`'s, by bubble-sort decomposition of the connecting permutation.
/// Replaying the sequence on `p` reproduces `target` exactly, block labels
/// included.
pub fn switch_path(p: &RegularPartition, target: &RegularPartition) -> Result<Vec<SwitchRecord>> {
    if p.n() != target.n() || p.block_size() != target.block_size() {
        return Err(Error::InvalidInput(format!(
            "shape mismatch: {}x{} vs {}x{}",
            p.n(),
            p.block_size(),
            target.n(),
            target.block_size()
        )));
    }
    let g = p.ground_size() as usize;
    let label_seq = |part: &RegularPartition| -> Vec<usize> {
        let mut seq = vec![0usize; g];
        for (bi, b) in part.blocks().iter().enumerate() {
            for &x in b {
                seq[x as usize - 1] = bi;
            }
        }
        seq
    };
    let mut cur_labels = label_seq(p);
    let want = label_seq(target);
    let mut cur = p.clone();
    let mut log = Vec::new();
    for pos in 0..g {
        if cur_labels[pos] == want[pos] {
            continue;
        }
        let src = (pos + 1..g)
            .find(|&q| cur_labels[q] == want[pos])
            .expect("equal block sizes guarantee a matching label ahead");
        for q in (pos..src).rev() {
            cur_labels.swap(q, q + 1);
            let (next, rec) = apply_simple_switch(&cur, q as u64 + 1)?;
            cur = next;
            log.push(rec);
        }
    }
    debug_assert_eq!(&cur, target);
    Ok(log)
}

/// Applies a recorded switch sequence in order.
pub fn replay(p: &RegularPartition, records: &[SwitchRecord]) -> Result<RegularPartition> {
    let mut cur = p.clone();
    for rec in records {
        let (next, applied) = apply_simple_switch(&cur, rec.k)?;
        if applied.pair != rec.pair {
            return Err(Error::InvalidInput(format!(
                "log does not match partition at k={}: expected blocks {:?}, found {:?}",
                rec.k, rec.pair, applied.pair
            )));
        }
        cur = next;
    }
    Ok(cur)
}

/// Switch log text format: one line `switch <k> <p1> <p2> <delta>` per
/// record, block indices 1-based; a same-block no-op repeats one index.
pub fn format_switch_log(records: &[SwitchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let (p1, p2) = r.pair.map(|(a, b)| (a + 1, b + 1)).unwrap_or((0, 0));
        writeln!(out, "switch {} {} {} {}", r.k, p1, p2, r.delta).unwrap();
    }
    out
}

pub fn parse_switch_log(text: &str) -> Result<Vec<SwitchRecord>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            line: lineno,
            msg: msg.into(),
        };
        if toks.len() != 5 || toks[0] != "switch" {
            return Err(bad("expected `switch <k> <p1> <p2> <delta>`"));
        }
        let k: u64 = toks[1].parse().map_err(|_| bad("bad k"))?;
        let p1: usize = toks[2].parse().map_err(|_| bad("bad p1"))?;
        let p2: usize = toks[3].parse().map_err(|_| bad("bad p2"))?;
        let delta: i64 = toks[4].parse().map_err(|_| bad("bad delta"))?;
        let pair = if p1 == 0 && p2 == 0 {
            None
        } else if p1 > 0 && p2 > 0 && p1 != p2 {
            Some((p1 - 1, p2 - 1))
        } else {
            return Err(bad(
                "block pair must be two distinct 1-based indices or 0 0",
            ));
        };
        out.push(SwitchRecord { k, pair, delta });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::oracle_q_matrix;
    use rand::{Rng, SeedableRng};

    fn eq_1_2() -> RegularPartition {
        RegularPartition::new(vec![vec![3, 5, 7], vec![2, 4, 9], vec![1, 6, 8]]).unwrap()
    }

    fn random_partition(rng: &mut impl Rng, n: usize, block_size: usize) -> RegularPartition {
        let mut vals: Vec<u64> = (1..=(n * block_size) as u64).collect();
        for i in (1..vals.len()).rev() {
            vals.swap(i, rng.gen_range(0..=i));
        }
        let blocks = vals.chunks(block_size).map(|c| c.to_vec()).collect();
        RegularPartition::new(blocks).unwrap()
    }

    #[test]
    fn relabel_blocks_cases() {
        let p = eq_1_2();
        assert_eq!(relabel_blocks(&p, &[0, 1, 2]).unwrap(), p);
        let swapped = relabel_blocks(&p, &[0, 2, 1]).unwrap();
        assert_eq!(swapped.block(1), p.block(2));
        // induced digraph relabels accordingly
        let t = p.induced_tournament().unwrap();
        assert_eq!(
            swapped.induced_tournament().unwrap(),
            t.relabel(&[0, 2, 1]).unwrap()
        );
        assert!(relabel_blocks(&p, &[0, 0, 1]).is_err());
    }

    #[test]
    fn permute_ground_cases() {
        let p = eq_1_2();
        let id: Vec<u64> = (1..=9).collect();
        assert_eq!(permute_ground(&p, &id).unwrap(), p);
        let rev: Vec<u64> = (1..=9).rev().collect();
        assert_eq!(permute_ground(&p, &rev).unwrap(), p.reflect());
        assert!(permute_ground(&p, &[1; 9]).is_err());
    }

    #[test]
    fn simple_switch_cases() {
        let p = eq_1_2();
        // 4 and 5 sit in different blocks
        let (q, rec) = apply_simple_switch(&p, 4).unwrap();
        assert_eq!(rec.pair, Some((1, 0)));
        assert_eq!(rec.delta, 2);
        assert!(q.block(1).contains(&5) && q.block(0).contains(&4));
        // involution
        let (back, _) = apply_simple_switch(&q, 4).unwrap();
        assert_eq!(back, p);
        // same-block no-op: 7 and 8 after a rearrangement? use 5,6? 5 in block 0, 6 in block 2.
        let same = RegularPartition::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let (u, rec) = apply_simple_switch(&same, 1).unwrap();
        assert_eq!(u, same);
        assert_eq!(rec.pair, None);
        assert!(apply_simple_switch(&p, 0).is_err());
        assert!(apply_simple_switch(&p, 9).is_err());
    }

    #[test]
    fn switch_delta_matches_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=6);
            let bs = rng.gen_range(1..=4);
            let p = random_partition(&mut rng, n, bs);
            let k = rng.gen_range(1..p.ground_size());
            let (q, rec) = apply_simple_switch(&p, k).unwrap();
            let (before, after) = (oracle_q_matrix(&p), oracle_q_matrix(&q));
            for i in 0..n {
                for j in 0..n {
                    let expected = match rec.pair {
                        Some((p1, p2)) if (i, j) == (p1, p2) => rec.delta,
                        Some((p1, p2)) if (i, j) == (p2, p1) => -rec.delta,
                        _ => 0,
                    };
                    assert_eq!(after.get(i, j) - before.get(i, j), expected);
                }
            }
        }
    }

    #[test]
    fn stratify_cases() {
        // already stratified: zero switches
        let (s, log) = stratify(&eq_1_2()).unwrap();
        assert_eq!(s, eq_1_2());
        assert!(log.is_empty());

        let p = RegularPartition::new(vec![vec![1, 2, 9], vec![3, 4, 8], vec![5, 6, 7]]).unwrap();
        let (s, _) = stratify(&p).unwrap();
        assert!(s.is_stratified().unwrap());
        assert_eq!(s.induced_digraph(), p.induced_digraph());

        let not3 = RegularPartition::new(vec![vec![2], vec![1]]).unwrap();
        assert!(stratify(&not3).is_err());
    }

    #[test]
    fn stratify_random_sweep() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=12);
            let p = random_partition(&mut rng, n, 3);
            let (s, log) = stratify(&p).unwrap();
            assert!(s.is_stratified().unwrap());
            assert_eq!(s.induced_digraph(), p.induced_digraph());
            assert_eq!(replay(&p, &log).unwrap(), s);
        }
    }

    #[test]
    fn switch_path_cases() {
        let p = eq_1_2();
        assert!(switch_path(&p, &p).unwrap().is_empty());
        let a = RegularPartition::new(vec![vec![2], vec![1]]).unwrap();
        let b = RegularPartition::new(vec![vec![1], vec![2]]).unwrap();
        let path = switch_path(&a, &b).unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(replay(&a, &path).unwrap(), b);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.gen_range(2..=5);
            let bs = rng.gen_range(1..=5);
            let p = random_partition(&mut rng, n, bs);
            let q = random_partition(&mut rng, n, bs);
            let path = switch_path(&p, &q).unwrap();
            assert_eq!(replay(&p, &path).unwrap(), q);
        }
        let odd = RegularPartition::new(vec![vec![1]]).unwrap();
        assert!(switch_path(&p, &odd).is_err());
    }

    #[test]
    fn switch_log_round_trip() {
        let p = eq_1_2();
        let (_, log) = stratify(
            &RegularPartition::new(vec![vec![1, 2, 9], vec![3, 4, 8], vec![5, 6, 7]]).unwrap(),
        )
        .unwrap();
        let text = format_switch_log(&log);
        assert_eq!(parse_switch_log(&text).unwrap(), log);
        let _ = p;
        assert!(parse_switch_log("switch 1 2\n").is_err());
    }
}
