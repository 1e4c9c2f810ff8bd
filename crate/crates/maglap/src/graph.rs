//! Finite directed graphs as source/target maps, their undirected shadows,
//! and the combinatorial services the spectral machinery consumes:
//! connectivity, spanning trees and fundamental cycles, complements,
//! regular completion, the first Zagreb index, orientation enumeration,
//! and seeded generators.

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Maximum edge count accepted by [`orientations`] by default.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 20;

/// A finite directed graph without loops or repeated directed edges.
///
/// Vertices are dense ids `0..n-1`; edges carry stable indices `0..m-1`
/// in construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl DirectedGraph {
    /// Build a graph from an ordered edge list.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(u, v) in pairs {
            if u >= n {
                return Err(Error::VertexOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Self {
            n,
            edges: pairs.to_vec(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn target(&self, e: usize) -> usize {
        self.edges[e].1
    }

    /// Index of the directed edge `(u, v)`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == (u, v))
    }

    /// True iff no anti-parallel pair `uv`, `vu` is present.
    pub fn is_simple_orientation(&self) -> bool {
        let set: HashSet<(usize, usize)> = self.edges.iter().copied().collect();
        self.edges.iter().all(|&(u, v)| !set.contains(&(v, u)))
    }

    /// First anti-parallel pair, if any.
    pub fn anti_parallel_pair(&self) -> Option<(usize, usize)> {
        let set: HashSet<(usize, usize)> = self.edges.iter().copied().collect();
        self.edges
            .iter()
            .find(|&&(u, v)| set.contains(&(v, u)))
            .copied()
    }

    /// Number of directed edges incident to `v` (as source or target).
    ///
    /// Equals the undirected degree when the orientation is simple.
    pub fn incident_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(s, t)| s == v || t == v)
            .count()
    }

    pub fn undirected(&self) -> UndirectedView {
        UndirectedView::of(self)
    }

    pub fn is_connected(&self) -> bool {
        self.undirected().is_connected()
    }

    /// True iff every directed edge of `self` is a directed edge of `host`.
    pub fn is_sub_orientation_of(&self, host: &DirectedGraph) -> bool {
        if self.n != host.n {
            return false;
        }
        let set: HashSet<(usize, usize)> = host.edges.iter().copied().collect();
        self.edges.iter().all(|e| set.contains(e))
    }

    /// Spanning tree from breadth-first search rooted at vertex 0, with one
    /// fundamental cycle per non-tree edge.
    pub fn cycle_basis(&self) -> Result<CycleBasis> {
        let view = self.undirected();
        if !view.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.n == 0 {
            return Ok(CycleBasis {
                tree_edges: Vec::new(),
                fundamental_cycles: Vec::new(),
            });
        }

        // BFS tree: parent and depth per vertex, plus the set of tree edges.
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut depth = vec![0usize; self.n];
        let mut visited = vec![false; self.n];
        let mut tree_edges = Vec::new();
        let mut is_tree_edge = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        visited[0] = true;
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            for &w in view.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    let e = self
                        .edge_index(v, w)
                        .or_else(|| self.edge_index(w, v))
                        .expect("adjacency implies an edge");
                    tree_edges.push(e);
                    is_tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }

        let tree_path = |mut a: usize, mut b: usize| -> Vec<usize> {
            let mut front = vec![a];
            let mut back = vec![b];
            while depth[a] > depth[b] {
                a = parent[a].unwrap();
                front.push(a);
            }
            while depth[b] > depth[a] {
                b = parent[b].unwrap();
                back.push(b);
            }
            while a != b {
                a = parent[a].unwrap();
                front.push(a);
                b = parent[b].unwrap();
                back.push(b);
            }
            back.pop();
            back.reverse();
            front.extend(back);
            front
        };

        let mut fundamental_cycles = Vec::new();
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            if is_tree_edge[e] {
                continue;
            }
            // Tree path from target to source, then the non-tree edge itself.
            let mut walk = tree_path(t, s);
            walk.push(t);
            fundamental_cycles.push(FundamentalCycle { edge: e, walk });
        }
        Ok(CycleBasis {
            tree_edges,
            fundamental_cycles,
        })
    }

    /// `sum_v d_v^2` over the undirected shadow (the first Zagreb index).
    pub fn zagreb_index(&self) -> u64 {
        let view = self.undirected();
        (0..self.n).map(|v| (view.degree(v) as u64).pow(2)).sum()
    }
}

/// The underlying undirected graph: `u ~ v` iff `uv` or `vu` is an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedView {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl UndirectedView {
    fn of(g: &DirectedGraph) -> Self {
        let mut sets: Vec<HashSet<usize>> = vec![HashSet::new(); g.n];
        for &(u, v) in &g.edges {
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adjacency: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<usize> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut pairs = Vec::new();
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    pairs.push((u, v));
                }
            }
        }
        pairs.sort_unstable();
        Self {
            n: g.n,
            adjacency,
            pairs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Canonical undirected edges `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut visited = vec![false; self.n];
        let mut queue = VecDeque::new();
        visited[0] = true;
        queue.push_back(0usize);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }
}

/// Spanning-tree edges plus one fundamental cycle per non-tree edge.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    /// Edge indices of the breadth-first spanning tree.
    pub tree_edges: Vec<usize>,
    pub fundamental_cycles: Vec<FundamentalCycle>,
}

/// A closed walk `v_0, ..., v_m = v_0` generated by one non-tree edge.
#[derive(Debug, Clone)]
pub struct FundamentalCycle {
    /// Index of the generating non-tree edge.
    pub edge: usize,
    pub walk: Vec<usize>,
}

/// Edges of `orientation_of_kn` not in `h`, keeping the K_n orientation.
pub fn complement_in_complete(
    h: &DirectedGraph,
    orientation_of_kn: &DirectedGraph,
) -> Result<DirectedGraph> {
    let n = orientation_of_kn.n;
    if !is_complete_orientation(orientation_of_kn) {
        return Err(Error::NotCompleteOrientation(n));
    }
    if h.n != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{} vertices", n),
            got: format!("{}", h.n),
        });
    }
    let kn_set: HashSet<(usize, usize)> = orientation_of_kn.edges.iter().copied().collect();
    for &(u, v) in &h.edges {
        if !kn_set.contains(&(u, v)) {
            return Err(Error::NotSubgraph(u, v));
        }
    }
    let h_set: HashSet<(usize, usize)> = h.edges.iter().copied().collect();
    let edges: Vec<(usize, usize)> = orientation_of_kn
        .edges
        .iter()
        .copied()
        .filter(|e| !h_set.contains(e))
        .collect();
    DirectedGraph::from_edge_list(n, &edges)
}

/// True iff `g` orients every pair of distinct vertices exactly once.
pub fn is_complete_orientation(g: &DirectedGraph) -> bool {
    g.edge_count() == g.n * g.n.saturating_sub(1) / 2 && g.is_simple_orientation()
}

/// Extend a simple orientation of K_n from `g`: keeps g's directed edges and
/// orients every remaining pair low id -> high id.
pub fn complete_orientation_extending(g: &DirectedGraph) -> Result<DirectedGraph> {
    if let Some((u, v)) = g.anti_parallel_pair() {
        return Err(Error::NotSimpleOrientation(u, v));
    }
    let view = g.undirected();
    let mut edges = g.edges.clone();
    for u in 0..g.n {
        for v in (u + 1)..g.n {
            if !view.adjacent(u, v) {
                edges.push((u, v));
            }
        }
    }
    DirectedGraph::from_edge_list(g.n, &edges)
}

const REGULAR_SEARCH_BUDGET: usize = 2_000_000;

/// A d-regular supergraph of `g` on the same vertices, new edges oriented
/// low id -> high id. Greedy augmentation with backtracking.
pub fn regular_supergraph(g: &DirectedGraph, d: usize) -> Result<DirectedGraph> {
    if let Some((u, v)) = g.anti_parallel_pair() {
        return Err(Error::NotSimpleOrientation(u, v));
    }
    let n = g.n;
    let view = g.undirected();
    let max_degree = (0..n).map(|v| view.degree(v)).max().unwrap_or(0);
    if d < max_degree {
        return Err(Error::InfeasibleDegree {
            d,
            reason: format!("maximum degree of the graph is {}", max_degree),
        });
    }
    if n > 0 && d > n - 1 {
        return Err(Error::InfeasibleDegree {
            d,
            reason: format!("only {} other vertices exist", n - 1),
        });
    }
    if (n * d) % 2 != 0 {
        return Err(Error::InfeasibleDegree {
            d,
            reason: format!("n * d = {} * {} is odd", n, d),
        });
    }

    let mut deficit: Vec<usize> = (0..n).map(|v| d - view.degree(v)).collect();
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !view.adjacent(u, v))
        .collect();

    // remaining[i][v] = candidate slots at or after position i incident to v
    let mut remaining = vec![vec![0usize; n]; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        remaining[i] = remaining[i + 1].clone();
        remaining[i][candidates[i].0] += 1;
        remaining[i][candidates[i].1] += 1;
    }

    let mut chosen = Vec::new();
    let mut steps = 0usize;
    match search_regular(
        &candidates,
        0,
        &mut deficit,
        &remaining,
        &mut chosen,
        &mut steps,
    ) {
        Some(true) => {
            let mut edges = g.edges.clone();
            edges.extend(chosen);
            DirectedGraph::from_edge_list(n, &edges)
        }
        _ => Err(Error::NoRegularSupergraph { d, tried: steps }),
    }
}

/// Depth-first completion search. `None` means the step budget ran out.
fn search_regular(
    candidates: &[(usize, usize)],
    pos: usize,
    deficit: &mut [usize],
    remaining: &[Vec<usize>],
    chosen: &mut Vec<(usize, usize)>,
    steps: &mut usize,
) -> Option<bool> {
    *steps += 1;
    if *steps > REGULAR_SEARCH_BUDGET {
        return None;
    }
    if deficit.iter().all(|&x| x == 0) {
        return Some(true);
    }
    if pos == candidates.len() {
        return Some(false);
    }
    // No vertex may need more slots than remain available to it.
    if deficit
        .iter()
        .zip(&remaining[pos])
        .any(|(&need, &avail)| need > avail)
    {
        return Some(false);
    }
    let (u, v) = candidates[pos];
    if deficit[u] > 0 && deficit[v] > 0 {
        deficit[u] -= 1;
        deficit[v] -= 1;
        chosen.push((u, v));
        if search_regular(candidates, pos + 1, deficit, remaining, chosen, steps)? {
            return Some(true);
        }
        chosen.pop();
        deficit[u] += 1;
        deficit[v] += 1;
    }
    search_regular(candidates, pos + 1, deficit, remaining, chosen, steps)
}

/// Smallest degree `d` admitting a d-regular supergraph, with the witness.
///
/// Always succeeds: d = n-1 completes to K_n and n(n-1) is even.
pub fn min_regular_degree(g: &DirectedGraph) -> Result<(usize, DirectedGraph)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n;
    if n <= 1 {
        return Ok((0, g.clone()));
    }
    let view = g.undirected();
    let max_degree = (0..n).map(|v| view.degree(v)).max().unwrap_or(0);
    for d in max_degree..n {
        if (n * d) % 2 != 0 {
            continue;
        }
        match regular_supergraph(g, d) {
            Ok(h) => return Ok((d, h)),
            Err(Error::NoRegularSupergraph { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    // d = n - 1 completes to K_n, so the loop cannot fall through.
    unreachable!("completion to K_n always succeeds")
}

/// All `2^m` orientations of an undirected graph in deterministic order:
/// orientation `i` directs pair `j` low -> high iff bit `j` of `i` is 0.
pub struct Orientations {
    n: usize,
    pairs: Vec<(usize, usize)>,
    counter: usize,
    total: usize,
}

impl Orientations {
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn nth_orientation(&self, index: usize) -> DirectedGraph {
        orient(self.n, &self.pairs, index)
    }
}

pub(crate) fn orient(n: usize, pairs: &[(usize, usize)], code: usize) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .map(|(j, &(u, v))| if code >> j & 1 == 0 { (u, v) } else { (v, u) })
        .collect();
    DirectedGraph {
        n,
        edges,
    }
}

impl Iterator for Orientations {
    type Item = DirectedGraph;

    fn next(&mut self) -> Option<DirectedGraph> {
        if self.counter >= self.total {
            return None;
        }
        let g = self.nth_orientation(self.counter);
        self.counter += 1;
        Some(g)
    }
}

/// Enumerate all orientations of `view`, refusing beyond `budget` edges.
pub fn orientations(view: &UndirectedView, budget: usize) -> Result<Orientations> {
    let m = view.edge_count();
    if m > budget || m > 63 {
        return Err(Error::BudgetExceeded {
            required: m,
            budget: budget.min(63),
        });
    }
    Ok(Orientations {
        n: view.vertex_count(),
        pairs: view.pairs().to_vec(),
        counter: 0,
        total: 1usize << m,
    })
}

const CONNECT_RETRIES: usize = 1000;

/// Erdos-Renyi orientation: each pair kept with probability `p`, direction
/// uniform, resampled until connected. Deterministic under `seed`.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CONNECT_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(edge_probability) {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    } else {
                        edges.push((v, u));
                    }
                }
            }
        }
        let g = DirectedGraph::from_edge_list(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::RetriesExhausted)
}

/// d-regular graph from the circulant construction (offsets 1..=d/2, plus the
/// antipodal matching when d is odd), relabeled by a seeded permutation and
/// oriented low id -> high id.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<DirectedGraph> {
    if n == 0 || d > n - 1 {
        return Err(Error::InfeasibleDegree {
            d,
            reason: format!("need 0 <= d <= n - 1 with n = {}", n),
        });
    }
    if (n * d) % 2 != 0 {
        return Err(Error::InfeasibleDegree {
            d,
            reason: format!("n * d = {} * {} is odd", n, d),
        });
    }
    let mut pairs = Vec::new();
    for offset in 1..=(d / 2) {
        for i in 0..n {
            let j = (i + offset) % n;
            pairs.push((i.min(j), i.max(j)));
        }
    }
    if d % 2 == 1 {
        for i in 0..n / 2 {
            pairs.push((i, i + n / 2));
        }
    }

    let mut perm: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut edges: Vec<(usize, usize)> = pairs
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    DirectedGraph::from_edge_list(n, &edges)
}

/// The Petersen graph (3-regular on 10 vertices), oriented low id -> high id.
pub fn petersen() -> DirectedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    let mut edges = edges;
    edges.sort_unstable();
    DirectedGraph::from_edge_list(10, &edges).expect("valid construction")
}

/// Orientation of the n-cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn cycle_graph(n: usize) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    DirectedGraph::from_edge_list(n, &edges).expect("valid construction")
}

/// Orientation of K_n with every edge low id -> high id.
pub fn complete_graph(n: usize) -> DirectedGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    DirectedGraph::from_edge_list(n, &edges).expect("valid construction")
}
