//! Integer min-cost flow by successive shortest paths with Johnson potentials.
//!
//! Each phase runs Dijkstra on reduced costs and then saturates every
//! shortest augmenting path at once with a Dinic blocking flow restricted to
//! zero-reduced-cost arcs. Augmentation stops as soon as the cheapest `s`–`t`
//! path no longer has negative cost, which minimises cost over all flow values.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

pub(crate) const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub(crate) struct MinCostFlow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    /// Residual capacity; arc `e ^ 1` is the reverse of arc `e`.
    cap: Vec<i64>,
    cost: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NegativeCycle;

impl MinCostFlow {
    pub(crate) fn new(nodes: usize) -> Self {
        MinCostFlow {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let e = self.to.len();
        self.adj[from].push(e);
        self.to.push(to);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[to].push(e + 1);
        self.to.push(from);
        self.cap.push(0);
        self.cost.push(-cost);
        e
    }

    /// Flow currently on forward arc `e`.
    pub(crate) fn flow(&self, e: usize) -> i64 {
        self.cap[e ^ 1]
    }

    pub(crate) fn head(&self, e: usize) -> usize {
        self.to[e]
    }

    pub(crate) fn out_arcs(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Shortest distances from `source` over positive-capacity arcs, given a
    /// topological order of the nodes reachable through them.
    fn dag_distances(&self, source: usize, topo: &[usize]) -> Vec<i64> {
        let mut dist = vec![INF; self.adj.len()];
        dist[source] = 0;
        for &u in topo {
            if dist[u] == INF {
                continue;
            }
            for &e in &self.adj[u] {
                if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[self.to[e]] {
                    dist[self.to[e]] = dist[u] + self.cost[e];
                }
            }
        }
        dist
    }

    fn dijkstra(&self, source: usize, potential: &[i64]) -> Vec<i64> {
        let mut dist = vec![INF; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &self.adj[u] {
                if self.cap[e] == 0 {
                    continue;
                }
                let v = self.to[e];
                let reduced = self.cost[e] + potential[u] - potential[v];
                debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                if d + reduced < dist[v] {
                    dist[v] = d + reduced;
                    heap.push(Reverse((dist[v], v)));
                }
            }
        }
        dist
    }

    /// Runs augmentation from `source` to `sink` while the cheapest path has
    /// negative cost. The initial residual graph must be acyclic with `topo`
    /// a topological order. Returns (flow value, total cost).
    pub(crate) fn minimize(&mut self, source: usize, sink: usize, topo: &[usize]) -> (i64, i64) {
        let mut potential = self.dag_distances(source, topo);
        let finite_max = potential
            .iter()
            .copied()
            .filter(|&d| d < INF)
            .max()
            .unwrap_or(0);
        for p in potential.iter_mut().filter(|p| **p == INF) {
            *p = finite_max;
        }
        let mut flow = 0;
        let mut cost = 0;
        let mut first = true;
        loop {
            if !first {
                let dist = self.dijkstra(source, &potential);
                let reached_max = dist.iter().copied().filter(|&d| d < INF).max().unwrap_or(0);
                for (p, d) in potential.iter_mut().zip(&dist) {
                    *p += if *d < INF { *d } else { reached_max };
                }
                if dist[sink] == INF {
                    break;
                }
            }
            first = false;
            let path_cost = potential[sink] - potential[source];
            if path_cost >= 0 {
                break;
            }
            let pushed = self.blocking_flows(source, sink, &potential);
            if pushed == 0 {
                break;
            }
            flow += pushed;
            cost += pushed * path_cost;
        }
        (flow, cost)
    }

    fn admissible(&self, e: usize, u: usize, potential: &[i64]) -> bool {
        self.cap[e] > 0 && self.cost[e] + potential[u] - potential[self.to[e]] == 0
    }

    /// Dinic on the zero-reduced-cost subgraph; every path found has cost
    /// `potential[sink] − potential[source]`.
    fn blocking_flows(&mut self, source: usize, sink: usize, potential: &[i64]) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if level[v] == usize::MAX && self.admissible(e, u, potential) {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            let mut next_arc = vec![0usize; n];
            loop {
                let pushed = self.augment_path(source, sink, potential, &level, &mut next_arc);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// One augmenting path in the level graph, found by iterative DFS with
    /// current-arc pointers. Returns the amount pushed.
    fn augment_path(
        &mut self,
        source: usize,
        sink: usize,
        potential: &[i64],
        level: &[usize],
        next_arc: &mut [usize],
    ) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = source;
        loop {
            if u == sink {
                let pushed = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                }
                return pushed;
            }
            let mut advanced = false;
            while next_arc[u] < self.adj[u].len() {
                let e = self.adj[u][next_arc[u]];
                let v = self.to[e];
                if level[v] == level[u] + 1 && self.admissible(e, u, potential) {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                next_arc[u] += 1;
            }
            if !advanced {
                match path.pop() {
                    Some(e) => {
                        // Dead end: retreat and skip the arc that led here.
                        u = self.to[e ^ 1];
                        next_arc[u] += 1;
                    }
                    None => return 0,
                }
            }
        }
    }

    /// Bellman–Ford (queue based) distances from `source` over residual arcs
    /// plus the given extra arcs `(from, to, cost)`.
    pub(crate) fn residual_distances(
        &self,
        source: usize,
        extra: &[(usize, usize, i64)],
    ) -> Result<Vec<i64>, NegativeCycle> {
        let n = self.adj.len();
        let mut extra_out = vec![Vec::new(); n];
        for &(a, b, c) in extra {
            extra_out[a].push((b, c));
        }
        let mut dist = vec![INF; n];
        let mut in_queue = vec![false; n];
        let mut relaxations = vec![0usize; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        in_queue[source] = true;
        while let Some(u) = queue.pop_front() {
            in_queue[u] = false;
            let arcs = self.adj[u]
                .iter()
                .filter(|&&e| self.cap[e] > 0)
                .map(|&e| (self.to[e], self.cost[e]))
                .chain(extra_out[u].iter().copied());
            for (v, c) in arcs {
                if dist[u] + c < dist[v] {
                    dist[v] = dist[u] + c;
                    if !in_queue[v] {
                        relaxations[v] += 1;
                        if relaxations[v] > n {
                            return Err(NegativeCycle);
                        }
                        in_queue[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        Ok(dist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_only_negative_paths() {
        // s=0, t=3; path 0-1-3 costs -2, path 0-2-3 costs +1.
        let mut g = MinCostFlow::new(4);
        g.add_edge(0, 1, 1, -1);
        g.add_edge(1, 3, 1, -1);
        let e = g.add_edge(0, 2, 1, 0);
        g.add_edge(2, 3, 1, 1);
        let (flow, cost) = g.minimize(0, 3, &[0, 1, 2, 3]);
        assert_eq!((flow, cost), (1, -2));
        assert_eq!(g.flow(e), 0);
    }

    #[test]
    fn reroutes_through_reverse_arcs() {
        // Two units must share arc 1->2 unless the first path is rerouted.
        let mut g = MinCostFlow::new(4);
        g.add_edge(0, 1, 1, -5);
        g.add_edge(0, 2, 1, -1);
        g.add_edge(1, 2, 1, -5);
        g.add_edge(1, 3, 1, 0);
        g.add_edge(2, 3, 1, 0);
        let (flow, cost) = g.minimize(0, 3, &[0, 1, 2, 3]);
        // Best single path: 0-1-2-3 = -10; best two paths: 0-1-3 and 0-2-3 = -6.
        assert_eq!((flow, cost), (1, -10));
        let d = g.residual_distances(0, &[]).unwrap();
        assert_eq!(d[0], 0);
    }

    #[test]
    fn detects_negative_cycles() {
        let mut g = MinCostFlow::new(2);
        g.add_edge(0, 1, 1, -1);
        g.add_edge(1, 0, 1, -1);
        assert_eq!(g.residual_distances(0, &[]), Err(NegativeCycle));
    }
}
