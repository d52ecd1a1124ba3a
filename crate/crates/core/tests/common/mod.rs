#![allow(dead_code)]

use std::collections::HashSet;

use threshold_spectra::graph_model::parse_composition;
use threshold_spectra::spectral::{symmetric_eigen, DenseMatrix};
use threshold_spectra::ThresholdGraph;

pub fn g(bits: &str) -> ThresholdGraph {
    ThresholdGraph::parse_bits(bits).unwrap()
}

pub fn comp(text: &str) -> ThresholdGraph {
    ThresholdGraph::from_composition(&parse_composition(text).unwrap()).unwrap()
}

/// Every canonical generating sequence of length `n`, from the raw bitstring
/// sweep rather than the partition enumerator.
pub fn all_of_order(n: usize) -> Vec<ThresholdGraph> {
    if n == 1 {
        return vec![g("1")];
    }
    (0..1u32 << (n - 1))
        .map(|mask| {
            let mut bits = vec![true];
            bits.extend((0..n - 1).map(|i| mask >> i & 1 == 1));
            ThresholdGraph::from_generating_sequence(&bits).unwrap()
        })
        .collect()
}

pub fn connected_of_order(n: usize) -> Vec<ThresholdGraph> {
    all_of_order(n).into_iter().filter(|g| g.is_connected()).collect()
}

pub fn connected_up_to(nmax: usize) -> Vec<ThresholdGraph> {
    (1..=nmax).flat_map(connected_of_order).collect()
}

/// Graphs inside the bound preconditions.
pub fn bound_corpus(nmin: usize, nmax: usize) -> Vec<ThresholdGraph> {
    (nmin..=nmax)
        .flat_map(connected_of_order)
        .filter(|g| {
            let n = g.n();
            g.c() >= 3 && g.z() >= 1 && g.m() > n - 1 && g.m() < n * (n - 1) / 2
        })
        .collect()
}

/// Simple graph on at most 16 vertices as neighbour bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    pub adj: Vec<u16>,
}

impl Graph {
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= self.adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == n
    }

    /// Peels isolated or dominating vertices until nothing is left.
    pub fn is_threshold(&self) -> bool {
        let n = self.order();
        let mut alive: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        while alive != 0 {
            let count = alive.count_ones();
            let peel = (0..n).find(|&v| {
                alive >> v & 1 == 1 && {
                    let d = (self.adj[v] & alive).count_ones();
                    d == 0 || d == count - 1
                }
            });
            match peel {
                Some(v) => alive &= !(1 << v),
                None => return false,
            }
        }
        true
    }

    pub fn dense(&self) -> DenseMatrix {
        let n = self.order();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (self.adj[i] >> j & 1) as f64).collect())
            .collect();
        DenseMatrix::from_rows(&rows)
    }

    /// Largest adjacency eigenvalue from the dense rotation solver.
    pub fn spectral_radius(&self) -> f64 {
        symmetric_eigen(&self.dense(), 1e-14).unwrap().values[0]
    }

    pub fn from_threshold(t: &ThresholdGraph) -> Self {
        let a = t.adjacency_matrix();
        let n = a.order();
        Graph {
            adj: (0..n)
                .map(|i| (0..n).fold(0u16, |acc, j| acc | ((a.get(i, j) as u16) << j)))
                .collect(),
        }
    }

    fn relabel(&self, order: &[usize]) -> u128 {
        let n = order.len();
        let mut code = 0u128;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[order[i]] >> order[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Minimum upper-triangle code over all relabellings that keep vertices
    /// sorted by (degree, neighbour degrees).
    pub fn canonical(&self) -> u128 {
        let n = self.order();
        let invariant = |v: usize| {
            let mut nd: Vec<usize> = (0..n)
                .filter(|&u| self.adj[v] >> u & 1 == 1)
                .map(|u| self.degree(u))
                .collect();
            nd.sort_unstable();
            (self.degree(v), nd)
        };
        let mut verts: Vec<usize> = (0..n).collect();
        verts.sort_by_key(|&v| invariant(v));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &verts {
            match classes.last_mut() {
                Some(cls) if invariant(cls[0]) == invariant(v) => cls.push(v),
                _ => classes.push(vec![v]),
            }
        }
        let mut best = u128::MAX;
        let mut order = Vec::with_capacity(n);
        self.search(&mut classes, 0, &mut order, &mut best);
        best
    }

    fn search(&self, classes: &mut [Vec<usize>], ci: usize, order: &mut Vec<usize>, best: &mut u128) {
        if ci == classes.len() {
            *best = (*best).min(self.relabel(order));
            return;
        }
        let len = classes[ci].len();
        permute(&mut classes[ci].clone(), len, &mut |perm| {
            let mark = order.len();
            order.extend_from_slice(perm);
            self.search(classes, ci + 1, order, best);
            order.truncate(mark);
        });
    }
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        permute(items, k - 1, f);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// One representative per isomorphism class of connected graphs of order
/// `n`, grown by adding a vertex with every nonempty neighbourhood.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph { adj: vec![0] }];
    for order in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &level {
            for mask in 1u16..(1 << (order - 1)) {
                let mut adj = base.adj.clone();
                for (v, row) in adj.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (order - 1);
                    }
                }
                adj.push(mask);
                let graph = Graph { adj };
                if seen.insert(graph.canonical()) {
                    next.push(graph);
                }
            }
        }
        level = next;
    }
    level
}
