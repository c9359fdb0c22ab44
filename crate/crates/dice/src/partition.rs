//! Regular partitions of `{1..Nn}`, the dominance margin `Q`, the induced
//! digraph, and the structural transforms: reflection, replication, padding,
//! domination and lexicographic products, packing, properness and
//! stratification predicates, and dice export.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tournament::{Digraph, Tournament};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Dominance margin `Q(A, B) = 2 * #{(a,b) : a > b} - |A| * |B|` for disjoint
/// nonempty integer sets, computed by a linear merge over the sorted inputs.
/// Positive iff a random element of `A` beats a random element of `B`.
pub fn q_value(a: &[u64], b: &[u64]) -> Result<i64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("q_value needs nonempty sets".into()));
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    q_value_sorted(&sa, &sb)
}

/// `q_value` on inputs already sorted ascending.
pub(crate) fn q_value_sorted(a: &[u64], b: &[u64]) -> Result<i64> {
    let size = (a.len() as u128) * (b.len() as u128);
    if size > i64::MAX as u128 {
        return Err(Error::InvalidInput(
            "set sizes overflow Q arithmetic".into(),
        ));
    }
    // wins = #{(x, y) in A x B : x > y}, counted by merging
    let mut wins: i64 = 0;
    let mut bi = 0usize;
    for &x in a {
        while bi < b.len() && b[bi] < x {
            bi += 1;
        }
        if bi < b.len() && b[bi] == x {
            return Err(Error::InvalidInput(format!(
                "sets are not disjoint: share {x}"
            )));
        }
        wins += bi as i64;
    }
    Ok(2 * wins - size as i64)
}

/// Antisymmetric matrix of pairwise dominance margins between blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QMatrix {
    n: usize,
    vals: Vec<i64>,
}

impl QMatrix {
    pub(crate) fn from_fn(n: usize, pair_q: &[i64]) -> QMatrix {
        // pair_q holds Q(i, j) for i < j in lexicographic order
        let mut vals = vec![0i64; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                vals[i * n + j] = pair_q[k];
                vals[j * n + i] = -pair_q[k];
                k += 1;
            }
        }
        QMatrix { n, vals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.vals[i * self.n + j]
    }

    /// The digraph with an edge wherever the margin is positive.
    pub fn induced_digraph(&self) -> Digraph {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.get(i, j) > 0)
            .collect();
        Digraph::new(self.n, &edges).expect("antisymmetric by construction")
    }
}

/// `n` disjoint blocks of equal size `N` covering `{1..Nn}`. Block order is
/// meaningful (block index = tournament vertex); elements within a block are
/// stored ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularPartition {
    block_size: usize,
    blocks: Vec<Vec<u64>>,
}

impl RegularPartition {
    /// Validates block sizes, disjointness and exact cover of `{1..Nn}`.
    /// Blocks are sorted internally; their order is preserved.
    pub fn new(blocks: Vec<Vec<u64>>) -> Result<RegularPartition> {
        if blocks.is_empty() {
            return Err(Error::InvalidInput(
                "partition needs at least one block".into(),
            ));
        }
        let block_size = blocks[0].len();
        if block_size == 0 {
            return Err(Error::InvalidInput("blocks must be nonempty".into()));
        }
        if blocks.iter().any(|b| b.len() != block_size) {
            return Err(Error::InvalidInput(
                "blocks must all have the same size".into(),
            ));
        }
        let ground = (block_size * blocks.len()) as u64;
        let mut seen = vec![false; ground as usize + 1];
        for b in &blocks {
            for &x in b {
                if x == 0 || x > ground {
                    return Err(Error::InvalidInput(format!(
                        "element {x} outside ground set 1..={ground}"
                    )));
                }
                if seen[x as usize] {
                    return Err(Error::InvalidInput(format!("element {x} appears twice")));
                }
                seen[x as usize] = true;
            }
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        Ok(RegularPartition { block_size, blocks })
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Block size `N`.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// `N * n`, the size of the ground set.
    pub fn ground_size(&self) -> u64 {
        (self.block_size * self.n()) as u64
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[u64] {
        &self.blocks[i]
    }

    /// All pairwise margins. Evaluates the `n(n-1)/2` independent pairs in
    /// parallel when the `parallel` feature is enabled.
    pub fn q_matrix(&self) -> QMatrix {
        let pairs = self.index_pairs();
        #[cfg(feature = "parallel")]
        let vals: Vec<i64> = pairs.par_iter().map(|&(i, j)| self.pair_q(i, j)).collect();
        #[cfg(not(feature = "parallel"))]
        let vals: Vec<i64> = pairs.iter().map(|&(i, j)| self.pair_q(i, j)).collect();
        QMatrix::from_fn(self.n(), &vals)
    }

    /// Single-threaded `q_matrix`, kept callable under every feature set so
    /// the two code paths can be compared directly.
    pub fn q_matrix_sequential(&self) -> QMatrix {
        let pairs = self.index_pairs();
        let vals: Vec<i64> = pairs.iter().map(|&(i, j)| self.pair_q(i, j)).collect();
        QMatrix::from_fn(self.n(), &vals)
    }

    fn index_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    }

    fn pair_q(&self, i: usize, j: usize) -> i64 {
        q_value_sorted(&self.blocks[i], &self.blocks[j]).expect("blocks are disjoint")
    }

    /// The digraph on block indices with an edge wherever the margin is
    /// positive. For even `N` a zero margin yields a tie, so the result is a
    /// `Digraph`; see [`RegularPartition::induced_tournament`].
    pub fn induced_digraph(&self) -> Digraph {
        self.q_matrix().induced_digraph()
    }

    /// Checked conversion of the induced digraph to a tournament.
    pub fn induced_tournament(&self) -> Result<Tournament> {
        self.induced_digraph().into_tournament()
    }

    /// Mirror image `a -> Nn - a + 1`. Negates every margin and reverses the
    /// induced digraph; preserves properness.
    pub fn reflect(&self) -> RegularPartition {
        let g = self.ground_size();
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&a| g - a + 1).collect())
            .collect();
        RegularPartition::new(blocks).expect("reflection is a ground-set bijection")
    }

    /// `M` stacked copies: block `i` becomes `{Nn(q-1) + a}` over `q in 1..=M`.
    /// Margins scale by `M`; the induced digraph is unchanged.
    pub fn replicate(&self, m: usize) -> Result<RegularPartition> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "replication factor must be positive".into(),
            ));
        }
        let g = self.ground_size();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (0..m as u64)
                    .flat_map(|q| b.iter().map(move |&a| g * q + a))
                    .collect()
            })
            .collect();
        RegularPartition::new(blocks)
    }

    /// Appends to block `i` the fresh pair `{Nn + i, Nn + 2n - i + 1}`.
    /// The pairs are mutually nested, so every off-diagonal margin is
    /// unchanged and so is the induced digraph. Block size grows by 2.
    pub fn pad(&self) -> RegularPartition {
        let g = self.ground_size();
        let n = self.n() as u64;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(idx, b)| {
                let i = idx as u64 + 1;
                let mut nb = b.clone();
                nb.push(g + i);
                nb.push(g + 2 * n - i + 1);
                nb
            })
            .collect();
        RegularPartition::new(blocks).expect("padding preserves partition invariants")
    }

    /// True iff every block sum equals `N(Nn + 1)/2`.
    pub fn is_proper(&self) -> bool {
        let target = self.block_size as u128 * (self.ground_size() as u128 + 1) / 2;
        self.blocks
            .iter()
            .all(|b| b.iter().map(|&x| x as u128).sum::<u128>() == target)
    }

    /// For `N = 3` only: true iff the block minima are exactly `{1..n}`, the
    /// middles `{n+1..2n}` and the maxima `{2n+1..3n}`.
    pub fn is_stratified(&self) -> Result<bool> {
        if self.block_size != 3 {
            return Err(Error::InvalidInput(format!(
                "stratification is defined for block size 3, got {}",
                self.block_size
            )));
        }
        let n = self.n() as u64;
        for level in 0..3u64 {
            let lo = n * level + 1;
            let hi = n * (level + 1);
            if !self
                .blocks
                .iter()
                .all(|b| (lo..=hi).contains(&b[level as usize]))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Face multisets of the corresponding dice: die `i` carries block `i`
    /// with every value repeated `n` times.
    pub fn to_dice(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        self.blocks
            .iter()
            .map(|b| b.iter().flat_map(|&x| std::iter::repeat_n(x, n)).collect())
            .collect()
    }
}

/// Partition domination product: keeps `lower`'s blocks on indices `0..n` and
/// appends `upper`'s blocks shifted by `Nn`. Every appended block beats every
/// original block with margin `N^2`. Requires equal block sizes.
pub fn domination_product(
    upper: &RegularPartition,
    lower: &RegularPartition,
) -> Result<RegularPartition> {
    if upper.block_size() != lower.block_size() {
        return Err(Error::InvalidInput(format!(
            "block size mismatch: {} vs {}",
            upper.block_size(),
            lower.block_size()
        )));
    }
    let shift = lower.ground_size();
    let mut blocks: Vec<Vec<u64>> = lower.blocks().to_vec();
    for b in upper.blocks() {
        blocks.push(b.iter().map(|&x| x + shift).collect());
    }
    RegularPartition::new(blocks)
}

/// Lexicographic product of integer sets: `{M(b - 1) + a : b in B, a in A}`,
/// which compares by `B`-coordinate first. Requires `A` inside `{1..M}`.
pub fn lex_product_sets(b: &[u64], a: &[u64], m: u64) -> Result<Vec<u64>> {
    if a.iter().any(|&x| x == 0 || x > m) {
        return Err(Error::InvalidInput(format!(
            "second factor must lie in 1..={m}"
        )));
    }
    if b.contains(&0) {
        return Err(Error::InvalidInput("first factor must be positive".into()));
    }
    let mut out: Vec<u64> = b
        .iter()
        .flat_map(|&bv| a.iter().map(move |&av| m * (bv - 1) + av))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Lexicographic product of partitions: block `n(i-1)+j` is
/// `B_i ⋉ A_j` with `M = Nn`. The induced digraph is the lexicographic
/// product of the factors'; properness is preserved.
pub fn lex_product(b: &RegularPartition, a: &RegularPartition) -> RegularPartition {
    let m = a.ground_size();
    let n = a.n();
    let mut blocks = Vec::with_capacity(b.n() * n);
    for bi in b.blocks() {
        for aj in a.blocks() {
            blocks.push(lex_product_sets(bi, aj, m).expect("partition blocks lie in 1..=Nn"));
        }
    }
    RegularPartition::new(blocks).expect("lexicographic product tiles the ground set")
}

/// Pairwise disjoint integer sets of equal size, not necessarily covering an
/// interval; the input of packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointFamily {
    sets: Vec<Vec<u64>>,
}

impl DisjointFamily {
    pub fn new(sets: Vec<Vec<u64>>) -> Result<DisjointFamily> {
        if sets.is_empty() || sets[0].is_empty() {
            return Err(Error::InvalidInput("family needs nonempty sets".into()));
        }
        let k = sets[0].len();
        if sets.iter().any(|s| s.len() != k) {
            return Err(Error::InvalidInput(
                "family sets must have equal sizes".into(),
            ));
        }
        let mut all: Vec<u64> = sets.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("family sets overlap".into()));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
        }
        Ok(DisjointFamily { sets })
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }
}

/// Order-preserving renumbering of a disjoint family onto `{1..Kk}`.
/// Every pairwise margin is preserved exactly.
pub fn pack(family: &DisjointFamily) -> RegularPartition {
    let mut all: Vec<u64> = family.sets().iter().flatten().copied().collect();
    all.sort_unstable();
    let rank = |x: u64| -> u64 { all.binary_search(&x).unwrap() as u64 + 1 };
    let blocks = family
        .sets()
        .iter()
        .map(|s| s.iter().map(|&x| rank(x)).collect())
        .collect();
    RegularPartition::new(blocks).expect("packing yields a regular partition")
}

/// Parses the canonical partition text format: header `partition <n> <N>`,
/// then `n` lines `<i>: a1 a2 ... aN` with ascending 1-based elements.
pub fn parse_partition(text: &str) -> Result<RegularPartition> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        if header.is_none() {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("partition") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected header `partition <n> <N>`".into(),
                });
            }
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: lineno,
                    msg: "expected block count".into(),
                })?;
            let bs: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: lineno,
                    msg: "expected block size".into(),
                })?;
            if n == 0 || bs == 0 || parts.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "malformed header".into(),
                });
            }
            header = Some((n, bs));
            continue;
        }
        let (n, bs) = header.unwrap();
        let (label, rest) = line.split_once(':').ok_or(Error::Parse {
            line: lineno,
            msg: "expected `<i>: a1 a2 ...`".into(),
        })?;
        let idx: usize = label
            .trim()
            .parse()
            .ok()
            .filter(|&i| (1..=n).contains(&i))
            .ok_or(Error::Parse {
                line: lineno,
                msg: format!("block index must lie in 1..={n}"),
            })?;
        let elems: Vec<u64> = rest
            .split_whitespace()
            .map(|s| s.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: lineno,
                msg: "non-numeric block element".into(),
            })?;
        if elems.len() != bs {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {bs} elements, got {}", elems.len()),
            });
        }
        rows.push((idx, elems));
    }
    let (n, _) = header.ok_or(Error::Parse {
        line: 1,
        msg: "missing `partition <n> <N>` header".into(),
    })?;
    if rows.len() != n {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected {n} block lines, got {}", rows.len()),
        });
    }
    let mut blocks: Vec<Option<Vec<u64>>> = vec![None; n];
    for (idx, elems) in rows {
        if blocks[idx - 1].replace(elems).is_some() {
            return Err(Error::Parse {
                line: 1,
                msg: format!("block {idx} given twice"),
            });
        }
    }
    let blocks: Vec<Vec<u64>> = blocks.into_iter().map(Option::unwrap).collect();
    RegularPartition::new(blocks).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })
}

/// Canonical text form; `parse_partition` round-trips it.
pub fn format_partition(p: &RegularPartition) -> String {
    let mut out = format!("partition {} {}\n", p.n(), p.block_size());
    for (i, b) in p.blocks().iter().enumerate() {
        write!(out, "{}:", i + 1).unwrap();
        for x in b {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Dice export: one line per die, faces ascending, space-separated.
pub fn format_dice(p: &RegularPartition) -> String {
    let mut out = String::new();
    for die in p.to_dice() {
        let line: Vec<String> = die.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
