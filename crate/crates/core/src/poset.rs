//! Finite graded posets stored as labelled vertices, ranks and cover pairs.
//!
//! Every cover raises rank by exactly one. The strict order is the transitive
//! closure of the covers, computed once on first use.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("poset has no vertices")]
    Empty,
    #[error("{labels} labels but {ranks} ranks")]
    LengthMismatch { labels: usize, ranks: usize },
    #[error("cover ({0}, {1}) references a missing vertex")]
    DanglingVertex(usize, usize),
    #[error("cover ({lower}, {upper}) jumps from rank {lower_rank} to rank {upper_rank}")]
    RankJump {
        lower: usize,
        upper: usize,
        lower_rank: usize,
        upper_rank: usize,
    },
    #[error("cover ({0}, {1}) listed twice")]
    DuplicateCover(usize, usize),
    #[error("rank level {0} is empty")]
    RankGap(usize),
}

/// Fixed-size bit set over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }
}

#[derive(Debug, Clone)]
struct Closure {
    /// `above[v]` holds every `u` with `v < u`.
    above: Vec<BitSet>,
}

#[derive(Debug, Clone)]
pub struct GradedPoset<L> {
    labels: Vec<L>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    closure: OnceLock<Closure>,
}

/// Counts of vertices per rank level, bottom first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct RankSequence(pub Vec<u64>);

impl<L> GradedPoset<L> {
    /// Validates and builds a poset. `covers` holds `(x, y)` pairs with `y` covering `x`.
    pub fn new(
        labels: Vec<L>,
        ranks: Vec<usize>,
        covers: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        if labels.len() != ranks.len() {
            return Err(PosetError::LengthMismatch {
                labels: labels.len(),
                ranks: ranks.len(),
            });
        }
        let n = labels.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(x, y) in &covers {
            if x >= n || y >= n {
                return Err(PosetError::DanglingVertex(x, y));
            }
            upper[x].push(y);
            lower[y].push(x);
        }
        let poset = GradedPoset {
            labels,
            ranks,
            covers,
            upper,
            lower,
            closure: OnceLock::new(),
        };
        poset.validate()?;
        Ok(poset)
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        let mut seen = HashSet::with_capacity(self.covers.len());
        for &(x, y) in &self.covers {
            if x >= n || y >= n {
                return Err(PosetError::DanglingVertex(x, y));
            }
            if self.ranks[y] != self.ranks[x] + 1 {
                return Err(PosetError::RankJump {
                    lower: x,
                    upper: y,
                    lower_rank: self.ranks[x],
                    upper_rank: self.ranks[y],
                });
            }
            if !seen.insert((x, y)) {
                return Err(PosetError::DuplicateCover(x, y));
            }
        }
        let top = self.top_rank();
        let mut populated = vec![false; top + 1];
        for &r in &self.ranks {
            populated[r] = true;
        }
        match populated.iter().position(|p| !p) {
            Some(gap) => Err(PosetError::RankGap(gap)),
            None => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &L {
        &self.labels[v]
    }

    pub fn rank(&self, v: usize) -> usize {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.upper[v]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower[v]
    }

    pub fn top_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn rank_sequence(&self) -> RankSequence {
        let mut counts = vec![0u64; self.top_rank() + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        RankSequence(counts)
    }

    /// Vertices ordered by rank, ties by index; a linear extension.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.ranks[v], v));
        order
    }

    pub fn map_labels<M>(&self, f: impl FnMut(&L) -> M) -> GradedPoset<M> {
        GradedPoset {
            labels: self.labels.iter().map(f).collect(),
            ranks: self.ranks.clone(),
            covers: self.covers.clone(),
            upper: self.upper.clone(),
            lower: self.lower.clone(),
            closure: OnceLock::new(),
        }
    }

    fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let n = self.len();
            let mut above: Vec<BitSet> = vec![BitSet::new(n); n];
            let mut order = self.linear_extension();
            order.reverse();
            for v in order {
                let mut set = BitSet::new(n);
                for &w in &self.upper[v] {
                    set.insert(w);
                    set.union_with(&above[w]);
                }
                above[v] = set;
            }
            Closure { above }
        })
    }

    /// `x < y` in the order generated by the covers.
    pub fn less_than(&self, x: usize, y: usize) -> bool {
        self.ranks[x] < self.ranks[y] && self.closure().above[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less_than(x, y) || self.less_than(y, x)
    }

    /// Elements strictly above `v`, increasing by index.
    pub fn strictly_above(&self, v: usize) -> Vec<usize> {
        self.closure().above[v].iter().collect()
    }

    pub fn strict_pair_count(&self) -> usize {
        self.closure().above.iter().map(BitSet::count).sum()
    }

    /// Every `(x, y)` with `x < y`, sorted.
    pub fn strict_order_pairs(&self) -> Vec<(usize, usize)> {
        let closure = self.closure();
        (0..self.len())
            .flat_map(|x| closure.above[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// Size of the longest chain inside `subset`.
    pub fn longest_chain_within(&self, subset: &[usize]) -> usize {
        let mut members: Vec<usize> = subset.to_vec();
        members.sort_by_key(|&v| (self.ranks[v], v));
        members.dedup();
        let mut best = vec![0usize; members.len()];
        for i in 0..members.len() {
            let below = (0..i)
                .filter(|&j| self.less_than(members[j], members[i]))
                .map(|j| best[j])
                .max()
                .unwrap_or(0);
            best[i] = below + 1;
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// True iff `subset` contains no chain of `k + 1` elements.
    pub fn is_k_family(&self, subset: &[usize], k: usize) -> bool {
        self.longest_chain_within(subset) <= k
    }

    /// Size of the longest chain in the whole poset (`top_rank + 1`).
    pub fn height(&self) -> usize {
        self.top_rank() + 1
    }
}

impl GradedPoset<usize> {
    /// The chain `0 < 1 < … < len−1`, labelled by rank.
    pub fn chain(len: usize) -> Result<Self, PosetError> {
        let covers = (1..len).map(|i| (i - 1, i)).collect();
        GradedPoset::new((0..len).collect(), (0..len).collect(), covers)
    }
}

/// Build a poset from parts; alias of [`GradedPoset::new`].
pub fn build_poset<L>(
    labels: Vec<L>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
) -> Result<GradedPoset<L>, PosetError> {
    GradedPoset::new(labels, ranks, covers)
}

/// Cartesian product with labels merged by `combine`. Vertex `(p, q)` gets
/// index `p * |Q| + q`.
pub fn product_with<L, M, N>(
    p: &GradedPoset<L>,
    q: &GradedPoset<M>,
    mut combine: impl FnMut(&L, &M) -> N,
) -> GradedPoset<N> {
    let (np, nq) = (p.len(), q.len());
    let mut labels = Vec::with_capacity(np * nq);
    let mut ranks = Vec::with_capacity(np * nq);
    for i in 0..np {
        for j in 0..nq {
            labels.push(combine(p.label(i), q.label(j)));
            ranks.push(p.rank(i) + q.rank(j));
        }
    }
    let mut covers = Vec::with_capacity(p.covers().len() * nq + q.covers().len() * np);
    for &(x, y) in p.covers() {
        for j in 0..nq {
            covers.push((x * nq + j, y * nq + j));
        }
    }
    for i in 0..np {
        for &(x, y) in q.covers() {
            covers.push((i * nq + x, i * nq + y));
        }
    }
    GradedPoset::new(labels, ranks, covers).expect("product of valid posets is valid")
}

pub fn product<L: Clone, M: Clone>(p: &GradedPoset<L>, q: &GradedPoset<M>) -> GradedPoset<(L, M)> {
    product_with(p, q, |a, b| (a.clone(), b.clone()))
}

/// True iff `sub` and `sup` have the same labelled vertices with the same
/// ranks and every relation of `sub` holds in `sup`. Labels must be unique in
/// both posets. Checking covers suffices since `sup`'s order is transitive.
pub fn is_spanning_subposet<L: Eq + Hash>(sub: &GradedPoset<L>, sup: &GradedPoset<L>) -> bool {
    if sub.len() != sup.len() {
        return false;
    }
    let index: HashMap<&L, usize> = sup
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    if index.len() != sup.len() {
        return false;
    }
    let mut to_sup = Vec::with_capacity(sub.len());
    let mut hit = vec![false; sup.len()];
    for (v, label) in sub.labels().iter().enumerate() {
        match index.get(label) {
            Some(&u) if !hit[u] && sup.rank(u) == sub.rank(v) => {
                hit[u] = true;
                to_sup.push(u);
            }
            _ => return false,
        }
    }
    sub.covers()
        .iter()
        .all(|&(x, y)| sup.less_than(to_sup[x], to_sup[y]))
}

/// Graphviz digraph with one same-rank subgraph per level and edges pointing
/// upward. Nodes are numbered in `(rank, label text)` order, so the output only
/// depends on the poset and the labeler.
pub fn export_dot<L>(p: &GradedPoset<L>, mut labeler: impl FnMut(&L) -> String) -> String {
    let texts: Vec<String> = p.labels().iter().map(&mut labeler).collect();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| (p.rank(a), &texts[a], a).cmp(&(p.rank(b), &texts[b], b)));
    let mut node_id = vec![0usize; p.len()];
    for (id, &v) in order.iter().enumerate() {
        node_id[v] = id;
    }
    let escape = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");

    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    let mut start = 0;
    while start < order.len() {
        let rank = p.rank(order[start]);
        let end = start
            + order[start..]
                .iter()
                .take_while(|&&v| p.rank(v) == rank)
                .count();
        let _ = writeln!(out, "  subgraph rank_{rank} {{\n    rank=same;");
        for &v in &order[start..end] {
            let _ = writeln!(
                out,
                "    n{} [label=\"{}\"];",
                node_id[v],
                escape(&texts[v])
            );
        }
        out.push_str("  }\n");
        start = end;
    }
    let mut edges: Vec<(usize, usize)> = p
        .covers()
        .iter()
        .map(|&(x, y)| (node_id[x], node_id[y]))
        .collect();
    edges.sort_unstable();
    for (x, y) in edges {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}

impl RankSequence {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.0)
    }

    pub fn is_strictly_log_concave(&self) -> bool {
        is_strictly_log_concave(&self.0)
    }

    /// Sum of the `k` largest entries.
    pub fn k_largest_sum(&self, k: usize) -> u64 {
        let mut sorted = self.0.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted.iter().take(k).sum()
    }

    pub fn convolve(&self, other: &RankSequence) -> RankSequence {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RankSequence(out)
    }
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal(counts: &[u64]) -> bool {
    let peak = counts.windows(2).take_while(|w| w[0] <= w[1]).count();
    counts[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// `c_i² > c_{i−1}·c_{i+1}` at every interior index.
pub fn is_strictly_log_concave(counts: &[u64]) -> bool {
    counts.windows(3).all(|w| {
        let (a, b, c) = (w[0] as u128, w[1] as u128, w[2] as u128);
        b * b > a * c
    })
}
