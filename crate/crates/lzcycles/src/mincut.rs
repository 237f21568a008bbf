//! Exact minimum (s,t)-cuts on undirected multigraphs with symbolic
//! infinite capacities.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinCutError {
    #[error("sources and sinks must be nonempty and disjoint")]
    BadTerminals,
}

/// A weight `inf * INF + fin`, compared lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtWeight {
    pub inf: i64,
    pub fin: f64,
}

impl ExtWeight {
    pub const ZERO: ExtWeight = ExtWeight { inf: 0, fin: 0.0 };
    pub const INFINITE: ExtWeight = ExtWeight { inf: 1, fin: 0.0 };

    pub fn finite(w: f64) -> Self {
        ExtWeight { inf: 0, fin: w }
    }

    pub fn is_infinite(&self) -> bool {
        self.inf > 0
    }

    fn positive(&self, eps: f64) -> bool {
        self.inf > 0 || (self.inf == 0 && self.fin > eps)
    }
}

impl PartialOrd for ExtWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.inf.cmp(&other.inf) {
            Ordering::Equal => self.fin.partial_cmp(&other.fin),
            o => Some(o),
        }
    }
}

impl Add for ExtWeight {
    type Output = ExtWeight;
    fn add(self, o: ExtWeight) -> ExtWeight {
        ExtWeight {
            inf: self.inf + o.inf,
            fin: self.fin + o.fin,
        }
    }
}

impl AddAssign for ExtWeight {
    fn add_assign(&mut self, o: ExtWeight) {
        *self = *self + o;
    }
}

impl Sub for ExtWeight {
    type Output = ExtWeight;
    fn sub(self, o: ExtWeight) -> ExtWeight {
        ExtWeight {
            inf: self.inf - o.inf,
            fin: self.fin - o.fin,
        }
    }
}

impl std::iter::Sum for ExtWeight {
    fn sum<I: Iterator<Item = ExtWeight>>(iter: I) -> Self {
        iter.fold(ExtWeight::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inf {
            0 => write!(f, "{}", self.fin),
            1 => write!(f, "inf+{}", self.fin),
            k => write!(f, "{k}*inf+{}", self.fin),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FlowGraph {
    n: usize,
    edges: Vec<(usize, usize, ExtWeight)>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
}

impl FlowGraph {
    pub fn new(n: usize) -> Self {
        FlowGraph {
            n,
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds an undirected edge and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize, w: ExtWeight) -> usize {
        assert!(u < self.n && v < self.n);
        self.edges.push((u, v, w));
        self.edges.len() - 1
    }

    pub fn set_terminals(&mut self, sources: Vec<usize>, sinks: Vec<usize>) {
        self.sources = sources;
        self.sinks = sinks;
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, ExtWeight)] {
        &self.edges
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub(crate) fn terminal_sides(&self) -> Result<Vec<Option<bool>>, MinCutError> {
        if self.sources.is_empty() || self.sinks.is_empty() {
            return Err(MinCutError::BadTerminals);
        }
        let mut side = vec![None; self.n];
        for &s in &self.sources {
            side[s] = Some(true);
        }
        for &t in &self.sinks {
            if side[t] == Some(true) {
                return Err(MinCutError::BadTerminals);
            }
            side[t] = Some(false);
        }
        Ok(side)
    }

    /// Weight of the cut given by `source_side`, and its crossing edges.
    pub fn cut_of(&self, source_side: &[bool]) -> (ExtWeight, Vec<usize>) {
        let crossing: Vec<usize> = (0..self.edges.len())
            .filter(|&e| {
                let (u, v, _) = self.edges[e];
                source_side[u] != source_side[v]
            })
            .collect();
        let w = crossing.iter().map(|&e| self.edges[e].2).sum();
        (w, crossing)
    }
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub source_side: Vec<bool>,
    pub weight: ExtWeight,
    /// Indices of edges with one end on each side.
    pub crossing: Vec<usize>,
    /// Value of the maximum flow found alongside the cut.
    pub flow: ExtWeight,
}

const UNBOUNDED: ExtWeight = ExtWeight {
    inf: i64::MAX / 8,
    fin: 0.0,
};

struct Arc {
    to: usize,
    cap: ExtWeight,
}

struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
    eps: f64,
}

impl Dinic {
    fn new(n: usize, eps: f64) -> Self {
        Dinic {
            arcs: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
            eps,
        }
    }

    fn undirected(&mut self, u: usize, v: usize, cap: ExtWeight) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap });
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if self.level[to] < 0 && cap.positive(self.eps) {
                    self.level[to] = self.level[u] + 1;
                    q.push_back(to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: ExtWeight) -> ExtWeight {
        if u == t {
            return limit;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap.positive(self.eps) && self.level[to] == self.level[u] + 1 {
                let push = if cap < limit { cap } else { limit };
                let got = self.dfs(to, t, push);
                if got.positive(self.eps) {
                    self.arcs[a].cap = self.arcs[a].cap - got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        ExtWeight::ZERO
    }

    fn max_flow(&mut self, s: usize, t: usize) -> ExtWeight {
        let mut total = ExtWeight::ZERO;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, UNBOUNDED);
                if !f.positive(self.eps) {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Minimum cut separating all sources from all sinks. Among minimum cuts the
/// one with the smallest source side is returned.
pub fn min_st_cut(g: &FlowGraph) -> Result<CutResult, MinCutError> {
    g.terminal_sides()?;
    let n = g.n;
    let (ss, tt) = (n, n + 1);
    let scale: f64 = g.edges.iter().map(|e| e.2.fin.abs()).sum::<f64>().max(1.0);
    let mut dn = Dinic::new(n + 2, scale * 1e-12);
    for &(u, v, w) in &g.edges {
        if u != v {
            dn.undirected(u, v, w);
        }
    }
    for &s in &g.sources {
        dn.undirected(ss, s, UNBOUNDED);
    }
    for &t in &g.sinks {
        dn.undirected(t, tt, UNBOUNDED);
    }
    let flow = dn.max_flow(ss, tt);
    dn.bfs(ss);
    let source_side: Vec<bool> = (0..n).map(|v| dn.level[v] >= 0).collect();
    let (weight, crossing) = g.cut_of(&source_side);
    Ok(CutResult {
        source_side,
        weight,
        crossing,
        flow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: f64) -> ExtWeight {
        ExtWeight::finite(x)
    }

    #[test]
    fn path_bottleneck() {
        let mut g = FlowGraph::new(3);
        g.add_edge(0, 1, w(2.0));
        g.add_edge(1, 2, w(3.0));
        g.set_terminals(vec![0], vec![2]);
        let c = min_st_cut(&g).unwrap();
        assert_eq!(c.weight, w(2.0));
        assert_eq!(c.source_side, vec![true, false, false]);
        assert_eq!(c.flow, c.weight);
    }

    #[test]
    fn parallel_edges_sum() {
        let mut g = FlowGraph::new(2);
        g.add_edge(0, 1, w(1.0));
        g.add_edge(0, 1, w(1.0));
        g.add_edge(1, 1, w(7.0));
        g.set_terminals(vec![0], vec![1]);
        assert_eq!(min_st_cut(&g).unwrap().weight, w(2.0));
    }

    #[test]
    fn infinite_only_paths() {
        let mut g = FlowGraph::new(3);
        g.add_edge(0, 1, ExtWeight::INFINITE);
        g.add_edge(1, 2, ExtWeight::INFINITE + w(4.0));
        g.add_edge(0, 2, w(1.0));
        g.set_terminals(vec![0], vec![2]);
        let c = min_st_cut(&g).unwrap();
        assert!(c.weight.is_infinite());
        assert_eq!(c.weight.inf, 1);
    }

    #[test]
    fn bad_terminals() {
        let mut g = FlowGraph::new(2);
        g.set_terminals(vec![0], vec![]);
        assert_eq!(min_st_cut(&g).unwrap_err(), MinCutError::BadTerminals);
        g.set_terminals(vec![0, 1], vec![1]);
        assert_eq!(min_st_cut(&g).unwrap_err(), MinCutError::BadTerminals);
    }

    #[test]
    fn multi_terminal() {
        let mut g = FlowGraph::new(4);
        g.add_edge(0, 2, w(5.0));
        g.add_edge(1, 2, w(1.0));
        g.add_edge(2, 3, w(4.0));
        g.set_terminals(vec![0, 1], vec![3]);
        let c = min_st_cut(&g).unwrap();
        assert_eq!(c.weight, w(4.0));
    }
}
