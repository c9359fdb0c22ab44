//! Tournaments and digraphs on dense vertex sets, with the algebra used by
//! the partition constructions: restriction, relabeling, domination and
//! lexicographic products, group games, two-vertex extension, strong
//! connectivity, Hamiltonian cycles and small-scale isomorphism search.
//!
//! Vertices are `0..n` internally; the text format is 1-based.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Antisymmetric, irreflexive relation on `0..n`. Not necessarily complete:
/// a pair with no edge in either direction is a tie.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>, // adj[i*n + j] <=> i beats j
}

impl Digraph {
    /// Builds a digraph from a list of directed edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Digraph> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "digraph needs at least one vertex".into(),
            ));
        }
        let mut adj = vec![false; n * n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({i},{j}) out of range for n={n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("loop at vertex {i}")));
            }
            if adj[j * n + i] {
                return Err(Error::InvalidInput(format!(
                    "edges in both directions between {i} and {j}"
                )));
            }
            adj[i * n + j] = true;
        }
        Ok(Digraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// All edges, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Out-set `R(i)`: the vertices beaten by `i`.
    pub fn out_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_edge(i, j)).collect()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.has_edge(i, j)).count()
    }

    /// True when every distinct pair carries an edge in exactly one direction.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.has_edge(i, j) != self.has_edge(j, i)))
    }

    /// Pairs `(i, j)` with `i < j` carrying no edge in either direction.
    pub fn ties(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) && !self.has_edge(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checked conversion; fails if any pair is a tie.
    pub fn into_tournament(self) -> Result<Tournament> {
        let ties = self.ties();
        if let Some(&(i, j)) = ties.first() {
            return Err(Error::Precondition(format!(
                "relation is not complete: no edge between {} and {} ({} tie(s))",
                i + 1,
                j + 1,
                ties.len()
            )));
        }
        Ok(Tournament { inner: self })
    }
}

/// Complete antisymmetric digraph: every distinct pair carries exactly one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    inner: Digraph,
}

impl std::ops::Deref for Tournament {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.inner
    }
}

impl Tournament {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Tournament> {
        Digraph::new(n, edges)?.into_tournament()
    }

    /// The trivial tournament on a single vertex.
    pub fn trivial() -> Tournament {
        Tournament {
            inner: Digraph::new(1, &[]).unwrap(),
        }
    }

    /// Builds a tournament by orienting every pair `i < j` with `beats(i, j)`.
    pub fn from_orientation(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Tournament {
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if beats(i, j) {
                    adj[i * n + j] = true;
                } else {
                    adj[j * n + i] = true;
                }
            }
        }
        Tournament {
            inner: Digraph { n, adj },
        }
    }

    /// Labeled tournament indexed by a bit pattern over the pairs `i < j` in
    /// lexicographic order; bit set means `i` beats `j`. There are
    /// `2^(n(n-1)/2)` of them.
    pub fn from_bits(n: usize, bits: u64) -> Tournament {
        let mut k = 0;
        Tournament::from_orientation(n, |_, _| {
            let b = bits >> k & 1 == 1;
            k += 1;
            b
        })
    }

    /// The transitive order `0 -> 1 -> ... -> n-1` with all forward edges.
    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_orientation(n, |_, _| true)
    }

    pub fn three_cycle() -> Tournament {
        Tournament::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.inner
    }

    /// Restriction to a nonempty vertex subset, relabeled `0..|J|` in the
    /// ascending order of the subset.
    pub fn restrict(&self, verts: &[usize]) -> Result<Tournament> {
        if verts.is_empty() {
            return Err(Error::InvalidInput(
                "restriction to empty vertex set".into(),
            ));
        }
        let mut j: Vec<usize> = verts.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.len() != verts.len() {
            return Err(Error::InvalidInput("duplicate vertices in subset".into()));
        }
        if *j.last().unwrap() >= self.n() {
            return Err(Error::InvalidInput("vertex out of range".into()));
        }
        Ok(Tournament::from_orientation(j.len(), |a, b| {
            self.has_edge(j[a], j[b])
        }))
    }

    /// Relabeling by a permutation: edge `(pi(i), pi(j))` iff edge `(i, j)`.
    pub fn relabel(&self, pi: &[usize]) -> Result<Tournament> {
        check_permutation(pi, self.n())?;
        let inv = invert(pi);
        Ok(Tournament::from_orientation(self.n(), |a, b| {
            self.has_edge(inv[a], inv[b])
        }))
    }

    /// Domination product: `self` (on high indices) beats every vertex of
    /// `dominated` (kept on low indices `0..n`).
    pub fn domination_product(&self, dominated: &Tournament) -> Tournament {
        let n = dominated.n();
        let m = self.n();
        Tournament::from_orientation(n + m, |a, b| {
            // a < b always here
            match (a < n, b < n) {
                (true, true) => dominated.has_edge(a, b),
                (false, false) => self.has_edge(a - n, b - n),
                (true, false) => false, // high block beats low block
                (false, true) => true,
            }
        })
    }

    /// True iff every vertex reaches every other by a directed path.
    /// A singleton is strong vacuously.
    pub fn is_strong(&self) -> bool {
        self.proper_invariant_subset().is_none()
    }

    /// A proper subset closed under out-edges, when one exists.
    /// `None` exactly when the tournament is strong.
    pub fn proper_invariant_subset(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 1 {
            return None;
        }
        let forward = self.reach(0, false);
        let backward = self.reach(0, true);
        if backward.iter().filter(|&&b| b).count() < n {
            // vertices unable to reach 0; their complement is invariant
            Some((0..n).filter(|&v| !backward[v]).collect())
        } else if forward.iter().filter(|&&b| b).count() < n {
            Some((0..n).filter(|&v| forward[v]).collect())
        } else {
            None
        }
    }

    fn reach(&self, start: usize, reversed: bool) -> Vec<bool> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for (w, s) in seen.iter_mut().enumerate() {
                let edge = if reversed {
                    self.has_edge(w, v)
                } else {
                    self.has_edge(v, w)
                };
                if edge && !*s {
                    *s = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strongly connected components ordered so that every vertex of an
    /// earlier component beats every vertex of each later one.
    pub fn condensation(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        // Kosaraju: finish order on the forward graph, then sweep reversed.
        let order = self.finish_order();
        for &v in order.iter().rev() {
            if comp[v] != usize::MAX {
                continue;
            }
            let mut stack = vec![v];
            comp[v] = count;
            while let Some(u) = stack.pop() {
                for (w, c) in comp.iter_mut().enumerate() {
                    if *c == usize::MAX && self.has_edge(w, u) {
                        *c = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut comps: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 0..n {
            comps[comp[v]].push(v);
        }
        // In a tournament the condensation is a total order; discovery order
        // above already lists dominating components first. Double-check by
        // orienting with an actual cross edge.
        comps.sort_by(|a, b| {
            if a[0] == b[0] {
                std::cmp::Ordering::Equal
            } else if self.has_edge(a[0], b[0]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        comps
    }

    fn finish_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for s in 0..n {
            if seen[s] {
                continue;
            }
            // iterative DFS with explicit neighbor cursor
            let mut stack = vec![(s, 0usize)];
            seen[s] = true;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let mut advanced = false;
                while *next < n {
                    let w = *next;
                    *next += 1;
                    if self.has_edge(v, w) && !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        order
    }

    /// A Hamiltonian cycle of a strong tournament on at least three vertices,
    /// as a vertex sequence with every consecutive pair (cyclically) an edge.
    pub fn hamiltonian_cycle(&self) -> Result<Vec<usize>> {
        let n = self.n();
        if n < 3 {
            return Err(Error::Precondition(format!(
                "Hamiltonian cycle needs n >= 3, got {n}"
            )));
        }
        if !self.is_strong() {
            return Err(Error::Precondition("tournament is not strong".into()));
        }
        // Hamiltonian path by insertion (works in any tournament).
        let mut path: Vec<usize> = vec![0];
        for v in 1..n {
            let pos = path
                .iter()
                .position(|&u| self.has_edge(v, u))
                .unwrap_or(path.len());
            path.insert(pos, v);
        }
        // Close the longest prefix into a cycle: largest k with path[k] -> path[0].
        let k = (1..n)
            .rev()
            .find(|&k| self.has_edge(path[k], path[0]))
            .expect("strong tournament: first path vertex has an in-edge");
        let mut cycle: Vec<usize> = path[..=k].to_vec();
        let mut rest: Vec<usize> = path[k + 1..].to_vec();
        // Grow the cycle one or two vertices at a time.
        while !rest.is_empty() {
            let mut inserted = false;
            'cand: for (ri, &v) in rest.iter().enumerate() {
                for i in 0..cycle.len() {
                    let a = cycle[i];
                    let b = cycle[(i + 1) % cycle.len()];
                    if self.has_edge(a, v) && self.has_edge(v, b) {
                        cycle.insert(i + 1, v);
                        rest.swap_remove(ri);
                        inserted = true;
                        break 'cand;
                    }
                }
            }
            if inserted {
                continue;
            }
            // Every remaining vertex dominates the whole cycle or is dominated
            // by it. Strongness forces an edge from a dominated vertex to a
            // dominating one; splice both in across any cycle edge.
            let dominated: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&v| cycle.iter().all(|&c| self.has_edge(c, v)))
                .collect();
            let dominating: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&v| cycle.iter().all(|&c| self.has_edge(v, c)))
                .collect();
            let mut spliced = false;
            'outer: for &u in &dominated {
                for &w in &dominating {
                    if self.has_edge(u, w) {
                        // cycle[0] -> u -> w -> cycle[1]
                        cycle.insert(1, w);
                        cycle.insert(1, u);
                        rest.retain(|&x| x != u && x != w);
                        spliced = true;
                        break 'outer;
                    }
                }
            }
            if !spliced {
                return Err(Error::ConstructionInvariant(
                    "cycle extension stalled in a strong tournament".into(),
                ));
            }
        }
        Ok(cycle)
    }

    /// Two-vertex extension via `J`: adds `u = n`, `v = n+1` with
    /// `u` beating `v` and the complement of `J`, `v` beating `J`,
    /// `J` beating `u` and the complement beating `v`.
    pub fn extend(&self, j_set: &[usize]) -> Result<Tournament> {
        let n = self.n();
        let j: BTreeSet<usize> = j_set.iter().copied().collect();
        if let Some(&bad) = j.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!("vertex {bad} out of range")));
        }
        let u = n;
        let v = n + 1;
        Ok(Tournament::from_orientation(n + 2, |a, b| {
            if b < n && a < n {
                self.has_edge(a, b)
            } else if (a, b) == (u, v) {
                true
            } else if b == u {
                // a vs u: J beats u, u beats J'
                j.contains(&a)
            } else {
                // b == v, a < n: v beats J, J' beats v
                !j.contains(&a)
            }
        }))
    }

    /// Lexicographic product: vertex `(i, j)` is index `i * other.n() + j`;
    /// compare first coordinates by `self`, ties by `other`.
    pub fn lex_product(&self, other: &Tournament) -> Tournament {
        let m = other.n();
        Tournament::from_orientation(self.n() * m, |a, b| {
            let (a1, a2) = (a / m, a % m);
            let (b1, b2) = (b / m, b % m);
            if a1 == b1 {
                other.has_edge(a2, b2)
            } else {
                self.has_edge(a1, b1)
            }
        })
    }

    /// True iff every out-degree equals `(n - 1) / 2`.
    pub fn is_game(&self) -> bool {
        let n = self.n();
        n % 2 == 1 && (0..n).all(|i| self.out_degree(i) == (n - 1) / 2)
    }

    /// Brute-force isomorphism witness: a permutation `pi` with
    /// `self.relabel(pi) == other`. Factorial search with a degree prefilter;
    /// intended for small n.
    pub fn isomorphic(&self, other: &Tournament) -> Option<Vec<usize>> {
        let n = self.n();
        if n != other.n() {
            return None;
        }
        let mut d1: Vec<usize> = (0..n).map(|i| self.out_degree(i)).collect();
        let mut d2: Vec<usize> = (0..n).map(|i| other.out_degree(i)).collect();
        let (deg_self, deg_other) = (d1.clone(), d2.clone());
        d1.sort_unstable();
        d2.sort_unstable();
        if d1 != d2 {
            return None;
        }
        let mut pi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.search_iso(other, &deg_self, &deg_other, &mut pi, &mut used, 0) {
            Some(pi)
        } else {
            None
        }
    }

    fn search_iso(
        &self,
        other: &Tournament,
        deg_self: &[usize],
        deg_other: &[usize],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        let n = self.n();
        if v == n {
            return true;
        }
        for img in 0..n {
            if used[img] || deg_self[v] != deg_other[img] {
                continue;
            }
            let consistent = (0..v).all(|w| {
                self.has_edge(v, w) == other.has_edge(img, pi[w])
                    && self.has_edge(w, v) == other.has_edge(pi[w], img)
            });
            if !consistent {
                continue;
            }
            pi[v] = img;
            used[img] = true;
            if self.search_iso(other, deg_self, deg_other, pi, used, v + 1) {
                return true;
            }
            used[img] = false;
        }
        pi[v] = usize::MAX;
        false
    }
}

/// Subset `A` of `Z_{2n+1}` with `A` disjoint from `-A` and `|A| = n`;
/// the parameter of a group game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSubset {
    modulus: usize,
    members: BTreeSet<usize>,
}

impl GameSubset {
    pub fn new(modulus: usize, members: impl IntoIterator<Item = usize>) -> Result<GameSubset> {
        if modulus < 3 || modulus.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "modulus must be odd and at least 3, got {modulus}"
            )));
        }
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.iter().any(|&a| a == 0 || a >= modulus) {
            return Err(Error::InvalidInput(
                "members must be nonzero residues below the modulus".into(),
            ));
        }
        if members.len() != modulus / 2 {
            return Err(Error::InvalidInput(format!(
                "need exactly {} members, got {}",
                modulus / 2,
                members.len()
            )));
        }
        if members.iter().any(|&a| members.contains(&(modulus - a))) {
            return Err(Error::InvalidInput(
                "members must avoid their own negatives".into(),
            ));
        }
        Ok(GameSubset { modulus, members })
    }

    /// The canonical subset `{1, ..., n}` of `Z_{2n+1}`.
    pub fn initial(n: usize) -> GameSubset {
        GameSubset::new(2 * n + 1, 1..=n).unwrap()
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, residue: usize) -> bool {
        self.members.contains(&residue)
    }
}

/// Group game on the residues `0..2n` of `Z_{2n+1}`: edge `(i, j)` iff
/// `j - i` lies in the subset. Regular, and fixed by every translation.
pub fn group_game(subset: &GameSubset) -> Tournament {
    let m = subset.modulus();
    Tournament::from_orientation(m, |i, j| subset.contains((j + m - i) % m))
}

pub(crate) fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(Error::InvalidInput(format!(
            "permutation length {} does not match n = {n}",
            pi.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in pi {
        if p >= n || seen[p] {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

pub(crate) fn invert(pi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pi.len()];
    for (i, &p) in pi.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Parses the canonical tournament text format: a header `tournament <n>`,
/// then one `<i> <j>` line per edge (1-based, `i` beats `j`). `#` starts a
/// comment. Completeness and antisymmetry are enforced.
pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        let mut parts = line.split_whitespace();
        if n.is_none() {
            if parts.next() != Some("tournament") {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected header `tournament <n>`".into(),
                });
            }
            let val: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&v| v > 0)
                .ok_or(Error::Parse {
                    line: lineno,
                    msg: "expected positive vertex count".into(),
                })?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "trailing tokens after header".into(),
                });
            }
            n = Some(val);
            continue;
        }
        let nn = n.unwrap();
        let mut field = |name: &str| -> Result<usize> {
            parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&v| (1..=nn).contains(&v))
                .ok_or(Error::Parse {
                    line: lineno,
                    msg: format!("expected {name} in 1..={nn}"),
                })
        };
        let i = field("winner")?;
        let j = field("loser")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                msg: "trailing tokens after edge".into(),
            });
        }
        edges.push((i - 1, j - 1));
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing `tournament <n>` header".into(),
    })?;
    Tournament::new(n, &edges).map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })
}

/// Canonical text form; `parse_tournament` round-trips it.
pub fn format_tournament(t: &Tournament) -> String {
    let mut out = format!("tournament {}\n", t.n());
    for (i, j) in t.edges() {
        writeln!(out, "{} {}", i + 1, j + 1).unwrap();
    }
    out
}
