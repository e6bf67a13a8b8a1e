//! Edmonds-Karp maximum flow with arbitrary-precision capacities.
//!
//! Networks here are tiny (one node per focal element plus a source and a
//! sink), so a dense capacity matrix is used. The number of augmentations
//! is bounded by `O(V·E)` independently of the capacity values.

use std::collections::VecDeque;

use num::{BigUint, Zero};

/// Capacity `None` on an edge means unbounded.
#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    capacity: Vec<Vec<Option<BigUint>>>,
    flow: Vec<Vec<BigUint>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            capacity: vec![vec![Some(BigUint::zero()); nodes]; nodes],
            flow: vec![vec![BigUint::zero(); nodes]; nodes],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: BigUint) {
        if let Some(c) = &mut self.capacity[from][to] {
            *c += capacity;
        }
    }

    pub fn add_unbounded_edge(&mut self, from: usize, to: usize) {
        self.capacity[from][to] = None;
    }

    /// Net flow pushed along `from -> to`, zero if the reverse direction dominates.
    pub fn flow(&self, from: usize, to: usize) -> BigUint {
        let fwd = &self.flow[from][to];
        let back = &self.flow[to][from];
        if fwd > back {
            fwd - back
        } else {
            BigUint::zero()
        }
    }

    /// Residual capacity, `None` when unbounded.
    fn residual(&self, from: usize, to: usize) -> Option<BigUint> {
        let back = &self.flow[to][from];
        match &self.capacity[from][to] {
            None => None,
            Some(c) => {
                let used = &self.flow[from][to];
                Some(c - used.min(c) + back)
            }
        }
    }

    fn has_residual(&self, from: usize, to: usize) -> bool {
        self.residual(from, to).is_none_or(|r| !r.is_zero())
    }

    /// Pushes a maximum flow from `source` to `sink` and returns its value.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> BigUint {
        let n = self.capacity.len();
        let mut total = BigUint::zero();
        loop {
            let mut parent = vec![usize::MAX; n];
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for (v, p) in parent.iter_mut().enumerate() {
                    if *p == usize::MAX && self.has_residual(u, v) {
                        *p = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                return total;
            }
            let mut bottleneck: Option<BigUint> = None;
            let mut v = sink;
            while v != source {
                let u = parent[v];
                if let Some(r) = self.residual(u, v) {
                    bottleneck = Some(match bottleneck {
                        Some(b) if b <= r => b,
                        _ => r,
                    });
                }
                v = u;
            }
            // a path of only unbounded edges means infinite flow; callers never build one
            let amount = bottleneck.expect("source-sink path with unbounded capacity");
            let mut v = sink;
            while v != source {
                let u = parent[v];
                // cancel reverse flow before adding forward flow
                let cancel = self.flow[v][u].clone().min(amount.clone());
                self.flow[v][u] -= &cancel;
                self.flow[u][v] += &amount - &cancel;
                v = u;
            }
            total += amount;
        }
    }
}
