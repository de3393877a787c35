//! Maximum k-families with chain-partition certificates, Sperner predicates,
//! and the normalized flow on a claw.
//!
//! A maximum k-family is found with Greene–Kleitman duality. Every vertex `v`
//! is split into `v_in → v_out` (capacity 1, cost −1); the source feeds each
//! `v_in` at cost `k`, each `v_out` drains to the sink at cost 0, and
//! `v_out → u_in` is free whenever `v < u`. A flow of value `f` covering `c`
//! vertices costs `k·f − c`, so the largest k-family has `|P| + min cost`
//! elements. The flow paths are the dual chains, and the family is read off
//! the shortest-path potentials of the optimal residual graph.

mod flow;

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::absolute_order::{claw, ClawSizeError};
use crate::poset::GradedPoset;
use flow::{MinCostFlow, INF};

/// Largest poset handed to [`max_k_family_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpernerError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("exhaustive search is limited to {limit} vertices, poset has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("flow solver produced an invalid certificate: {0}")]
    Certificate(#[from] CertificateError),
    #[error("residual graph has a negative cycle")]
    NegativeCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("vertex {0} is not in the poset")]
    VertexOutOfRange(usize),
    #[error("family lists vertex {0} twice")]
    RepeatedFamilyVertex(usize),
    #[error("family contains a chain of {longest} elements, above k = {k}")]
    NotAKFamily { longest: usize, k: usize },
    #[error("stated size {stated} but family has {actual} elements")]
    SizeMismatch { stated: usize, actual: usize },
    #[error("vertex {0} is covered {1} times by the chains")]
    NotAPartition(usize, usize),
    #[error("chain {0} is not totally ordered")]
    NotAChain(usize),
    #[error("chains bound k-families by {bound} but the family has {family} elements")]
    BoundMismatch { bound: usize, family: usize },
}

/// A maximum k-family and a chain partition proving it maximal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KFamilyCertificate {
    pub k: usize,
    pub family: Vec<usize>,
    pub size: usize,
    pub dual_chains: Vec<Vec<usize>>,
}

impl KFamilyCertificate {
    /// `Σ min(|C|, k)` over the dual chains; an upper bound on every k-family.
    pub fn chain_bound(&self) -> usize {
        self.dual_chains.iter().map(|c| c.len().min(self.k)).sum()
    }
}

/// Checks a certificate against `p` without trusting the solver: the family
/// is a k-family of the stated size, the chains partition the vertices into
/// totally ordered sets, and the chain bound meets the family size.
pub fn validate_certificate<L>(
    p: &GradedPoset<L>,
    cert: &KFamilyCertificate,
) -> Result<(), CertificateError> {
    let n = p.len();
    let mut in_family = vec![false; n];
    for &v in &cert.family {
        if v >= n {
            return Err(CertificateError::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut in_family[v], true) {
            return Err(CertificateError::RepeatedFamilyVertex(v));
        }
    }
    if cert.size != cert.family.len() {
        return Err(CertificateError::SizeMismatch {
            stated: cert.size,
            actual: cert.family.len(),
        });
    }
    let longest = p.longest_chain_within(&cert.family);
    if longest > cert.k {
        return Err(CertificateError::NotAKFamily { longest, k: cert.k });
    }
    let mut hits = vec![0usize; n];
    for (i, chain) in cert.dual_chains.iter().enumerate() {
        for &v in chain {
            if v >= n {
                return Err(CertificateError::VertexOutOfRange(v));
            }
            hits[v] += 1;
        }
        let mut sorted = chain.clone();
        sorted.sort_by_key(|&v| p.rank(v));
        if !sorted.windows(2).all(|w| p.less_than(w[0], w[1])) {
            return Err(CertificateError::NotAChain(i));
        }
    }
    if let Some(v) = hits.iter().position(|&h| h != 1) {
        return Err(CertificateError::NotAPartition(v, hits[v]));
    }
    let bound = cert.chain_bound();
    if bound != cert.size {
        return Err(CertificateError::BoundMismatch {
            bound,
            family: cert.size,
        });
    }
    Ok(())
}

/// A maximum k-family of `p` with its dual chain partition. The certificate
/// is validated before it is returned.
pub fn max_k_family<L>(p: &GradedPoset<L>, k: usize) -> Result<KFamilyCertificate, SpernerError> {
    if k == 0 {
        return Err(SpernerError::ZeroK);
    }
    let n = p.len();
    let source = 2 * n;
    let sink = 2 * n + 1;
    let v_in = |v: usize| 2 * v;
    let v_out = |v: usize| 2 * v + 1;
    let unbounded = n as i64 + 1;

    let mut net = MinCostFlow::new(2 * n + 2);
    let source_arc: Vec<usize> = (0..n)
        .map(|v| {
            let arc = net.add_edge(source, v_in(v), unbounded, k as i64);
            net.add_edge(v_in(v), v_out(v), 1, -1);
            net.add_edge(v_out(v), sink, unbounded, 0);
            arc
        })
        .collect();
    for (x, y) in p.strict_order_pairs() {
        net.add_edge(v_out(x), v_in(y), unbounded, 0);
    }
    let mut topo = vec![source];
    for v in p.linear_extension() {
        topo.push(v_in(v));
        topo.push(v_out(v));
    }
    topo.push(sink);

    let (flow_value, _cost) = net.minimize(source, sink, &topo);

    // Dual chains: follow each unit of flow from the source.
    let mut covered = vec![false; n];
    let mut dual_chains = Vec::new();
    for v in 0..n {
        if net.flow(source_arc[v]) == 0 {
            continue;
        }
        let mut chain = vec![v];
        covered[v] = true;
        let mut at = v;
        loop {
            let next = net
                .out_arcs(v_out(at))
                .iter()
                .copied()
                .filter(|&e| e % 2 == 0 && net.flow(e) > 0)
                .map(|e| net.head(e))
                .next();
            match next {
                Some(node) if node == sink => break,
                Some(node) => {
                    at = node / 2;
                    covered[at] = true;
                    chain.push(at);
                }
                None => break,
            }
        }
        dual_chains.push(chain);
    }
    dual_chains.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));

    // Potentials of the optimal residual graph, closed up by the return arc
    // sink -> source (and its reverse while flow is positive).
    let mut extra = vec![(sink, source, 0)];
    if flow_value > 0 {
        extra.push((source, sink, 0));
    }
    let dist = net
        .residual_distances(source, &extra)
        .map_err(|_| SpernerError::NegativeCycle)?;
    let family: Vec<usize> = (0..n)
        .filter(|&v| dist[v_in(v)] < INF && dist[v_in(v)] > dist[v_out(v)])
        .collect();

    let cert = KFamilyCertificate {
        k,
        size: family.len(),
        family,
        dual_chains,
    };
    validate_certificate(p, &cert)?;
    Ok(cert)
}

/// Reference maximum k-family size by branch and bound over all subsets.
/// Vertices are added in a linear extension, so the longest chain ending at
/// a new vertex is fixed the moment it is chosen. The search starts from the
/// union of the `k` largest rank levels, which is always a k-family.
pub fn max_k_family_exhaustive<L>(p: &GradedPoset<L>, k: usize) -> Result<usize, SpernerError> {
    if k == 0 {
        return Err(SpernerError::ZeroK);
    }
    let n = p.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(SpernerError::TooLarge {
            vertices: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let order = p.linear_extension();
    let below: Vec<u32> = order
        .iter()
        .map(|&v| {
            (0..n)
                .filter(|&j| p.less_than(order[j], v))
                .fold(0u32, |mask, j| mask | 1 << j)
        })
        .collect();

    struct Search<'a> {
        below: &'a [u32],
        k: usize,
        chain_end: Vec<usize>,
        best: usize,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, chosen: u32, size: usize) {
            let n = self.below.len();
            if size > self.best {
                self.best = size;
            }
            if i == n || size + (n - i) <= self.best {
                return;
            }
            let mut longest_below = 0;
            let mut mask = chosen & self.below[i];
            while mask != 0 {
                let j = mask.trailing_zeros() as usize;
                longest_below = longest_below.max(self.chain_end[j]);
                mask &= mask - 1;
            }
            if longest_below < self.k {
                self.chain_end[i] = longest_below + 1;
                self.go(i + 1, chosen | 1 << i, size + 1);
            }
            self.go(i + 1, chosen, size);
        }
    }

    let mut search = Search {
        below: &below,
        k,
        chain_end: vec![0; n],
        best: p.rank_sequence().k_largest_sum(k) as usize,
    };
    search.go(0, 0, 0);
    Ok(search.best)
}

/// One row of a Sperner check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpernerCheck {
    pub k: usize,
    pub max_family_size: usize,
    pub k_largest_ranks_sum: u64,
    pub is_k_sperner: bool,
}

pub fn check_k_sperner<L>(
    p: &GradedPoset<L>,
    k: usize,
) -> Result<(SpernerCheck, KFamilyCertificate), SpernerError> {
    let cert = max_k_family(p, k)?;
    let sum = p.rank_sequence().k_largest_sum(k);
    Ok((
        SpernerCheck {
            k,
            max_family_size: cert.size,
            k_largest_ranks_sum: sum,
            is_k_sperner: cert.size as u64 == sum,
        },
        cert,
    ))
}

/// The `k` largest rank levels together form a maximum k-family.
pub fn is_k_sperner<L>(p: &GradedPoset<L>, k: usize) -> Result<bool, SpernerError> {
    Ok(check_k_sperner(p, k)?.0.is_k_sperner)
}

/// k-Sperner for every `k` from 1 to the number of rank levels.
pub fn is_strong_sperner<L>(p: &GradedPoset<L>) -> Result<bool, SpernerError> {
    for k in 1..=p.height() {
        if !is_k_sperner(p, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edge values of the uniform flow on a claw, keyed by `(bottom, top)` vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawFlow {
    pub k: usize,
    pub edge_values: BTreeMap<(usize, usize), Ratio<i64>>,
}

impl ClawFlow {
    /// With every vertex weighted 1: values are positive, the bottom sends out
    /// exactly 1, and each top receives its share `1 / (k − 1)` of the top level.
    pub fn is_normalized(&self) -> bool {
        let Ok(shape) = claw(self.k) else {
            return false;
        };
        let tops = self.k - 1;
        let share = Ratio::new(1, tops as i64);
        let edges_match = shape
            .covers()
            .iter()
            .all(|c| self.edge_values.contains_key(c))
            && self.edge_values.len() == shape.covers().len();
        let positive = self
            .edge_values
            .values()
            .all(|v| *v > Ratio::from_integer(0));
        let out_of_bottom: Ratio<i64> = self
            .edge_values
            .iter()
            .filter(|((from, _), _)| *from == 0)
            .map(|(_, v)| *v)
            .sum();
        let into_tops = (1..self.k).all(|top| {
            let inflow: Ratio<i64> = self
                .edge_values
                .iter()
                .filter(|((_, to), _)| *to == top)
                .map(|(_, v)| *v)
                .sum();
            inflow == share
        });
        edges_match && positive && out_of_bottom == Ratio::from_integer(1) && into_tops
    }
}

/// The flow assigning `1 / (k − 1)` to every edge of the `k`-claw.
pub fn claw_normalized_flow(k: usize) -> Result<ClawFlow, ClawSizeError> {
    let shape = claw(k)?;
    let value = Ratio::new(1, k as i64 - 1);
    Ok(ClawFlow {
        k,
        edge_values: shape.covers().iter().map(|&c| (c, value)).collect(),
    })
}
