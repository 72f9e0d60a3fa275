//! Dinic's algorithm on integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

/// Residual graph. Arc `2k` is the `k`-th added edge, arc `2k + 1` its reverse.
#[derive(Clone, Debug, Default)]
pub struct FlowGraph {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
    original: Vec<i64>,
}

impl FlowGraph {
    pub fn new(vertices: usize) -> Self {
        FlowGraph { adj: vec![Vec::new(); vertices], arcs: Vec::new(), original: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds `from → to`; returns the edge id.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        assert!(cap >= 0, "negative capacity");
        let id = self.original.len();
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
        self.original.push(cap);
        id
    }

    /// Flow currently carried by edge `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.original[id] - self.arcs[2 * id].cap
    }

    /// Pushes a maximum `s`–`t` flow and returns its value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        if s == t {
            return 0;
        }
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let level = self.levels(s, n);
            if level[t] < 0 {
                return total;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn levels(&self, s: usize, n: usize) -> Vec<i64> {
        let mut level = vec![-1i64; n];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] < 0 {
                    level[arc.to] = level[x] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, x: usize, t: usize, limit: i64, level: &[i64], next: &mut [usize]) -> i64 {
        if x == t {
            return limit;
        }
        while next[x] < self.adj[x].len() {
            let a = self.adj[x][next[x]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[x] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }
}
