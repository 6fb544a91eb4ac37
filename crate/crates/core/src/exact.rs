//! Exact treewidth for small graphs and heuristic bounds for larger ones.
//!
//! The exact solver is the classic dynamic program over vertex subsets: for a
//! set `S` of vertices eliminated first,
//!
//! ```text
//! TW(S) = min over v in S of max(TW(S - v), |N(C_S(v)) - S|)
//! ```
//!
//! where `C_S(v)` is the component of `v` in `G[S]`. `TW(V)` is the treewidth.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;
use crate::treedec::{self, TreeDecomposition, Verdict};

/// Default vertex limit for [`treewidth_exact`] (one byte of memory per subset).
pub const DEFAULT_VERTEX_LIMIT: usize = 22;
/// Hard ceiling on the vertex limit.
pub const MAX_VERTEX_LIMIT: usize = 30;
/// Largest graph the permutation oracle accepts.
pub const ORACLE_LIMIT: usize = 9;
/// Above this order [`treewidth_bounds`] skips the min-fill heuristic.
pub const MIN_FILL_LIMIT: usize = 600;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {vertices} vertices, over the exact-solver limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SubsetDp,
    PermutationOracle,
    BoundsOnly,
}

#[derive(Clone, Debug)]
pub struct TreewidthResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: Option<TreeDecomposition>,
    pub method: Method,
}

impl TreewidthResult {
    /// The treewidth, when the bounds meet.
    pub fn value(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Exact treewidth with a witness decomposition of exactly that width.
pub fn treewidth_exact(g: &Graph, vertex_limit: usize) -> Result<TreewidthResult, ExactError> {
    let n = g.order();
    let limit = vertex_limit.min(MAX_VERTEX_LIMIT);
    if n > limit {
        return Err(ExactError::TooLarge { vertices: n, limit });
    }
    if n == 0 {
        return Ok(TreewidthResult {
            lower: 0,
            upper: 0,
            witness: Some(TreeDecomposition::trivial(0)),
            method: Method::SubsetDp,
        });
    }
    let adj: Vec<u32> = g.masks().expect("n <= 30").into_iter().map(|m| m as u32).collect();
    let table = subset_table(&adj);
    let value = table[(1usize << n) - 1] as usize;
    let order = extract_order(&adj, &table);
    let witness = decomposition_from_order(g, &order);
    debug_assert_eq!(witness.width().ok(), Some(value));
    Ok(TreewidthResult { lower: value, upper: value, witness: Some(witness), method: Method::SubsetDp })
}

/// Exact treewidth when the graph fits the vertex limit, heuristic bounds otherwise.
pub fn treewidth(g: &Graph, vertex_limit: usize) -> TreewidthResult {
    match treewidth_exact(g, vertex_limit) {
        Ok(r) => r,
        Err(_) => {
            let b = treewidth_bounds(g, None);
            TreewidthResult { lower: b.lower, upper: b.upper, witness: Some(b.witness), method: Method::BoundsOnly }
        }
    }
}

/// Component of `v` in `G[set]` and the union of its neighbourhoods.
#[inline]
fn component(adj: &[u32], set: u32, v: u32) -> (u32, u32) {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    let mut nbrs = 0u32;
    while frontier != 0 {
        let u = frontier.trailing_zeros();
        frontier &= frontier - 1;
        let nu = adj[u as usize];
        nbrs |= nu;
        let fresh = nu & set & !comp;
        comp |= fresh;
        frontier |= fresh;
    }
    (comp, nbrs)
}

fn subset_table(adj: &[u32]) -> Vec<u8> {
    let n = adj.len();
    let full: usize = 1 << n;
    let mut tw = vec![0u8; full];
    // q[v] for the current set, filled one component at a time.
    let mut q = vec![0u8; n];
    for s in 1..full {
        let set = s as u32;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            let (comp, nbrs) = component(adj, set, v);
            let size = (nbrs & !set).count_ones() as u8;
            let mut c = comp;
            while c != 0 {
                q[c.trailing_zeros() as usize] = size;
                c &= c - 1;
            }
            rest &= !comp;
        }
        let mut best = u8::MAX;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let cand = tw[s & !(1usize << v)].max(q[v as usize]);
            if cand < best {
                best = cand;
            }
        }
        tw[s] = best;
    }
    tw
}

/// An optimal elimination order, read back from the table. Ties go to the
/// smallest vertex index.
fn extract_order(adj: &[u32], table: &[u8]) -> Vec<usize> {
    let n = adj.len();
    let mut set: u32 = (1u32 << n) - 1;
    let mut reversed = Vec::with_capacity(n);
    while set != 0 {
        let target = table[set as usize];
        let mut bits = set;
        let chosen = loop {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let (_, nbrs) = component(adj, set, v);
            let q = (nbrs & !set).count_ones() as u8;
            if table[(set & !(1u32 << v)) as usize].max(q) == target {
                break v;
            }
        };
        reversed.push(chosen as usize);
        set &= !(1u32 << chosen);
    }
    reversed.reverse();
    reversed
}

/// Width of an elimination order: the largest number of not-yet-eliminated
/// neighbours a vertex has in the filled graph when it is eliminated.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    decomposition_from_order(g, order).width().expect("at least one bag")
}

/// The tree decomposition induced by an elimination order. Node `i` holds the
/// `i`-th eliminated vertex and its later neighbours in the filled graph.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.order();
    assert_eq!(order.len(), n, "order must list every vertex once");
    if n == 0 {
        return TreeDecomposition::trivial(0);
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut rows = g.bitset_rows();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut td = TreeDecomposition::new(n);
    let mut parent = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        alive.set(v, false);
        let mut higher = rows[v].clone();
        higher.intersect_with(&alive);
        for u in higher.ones() {
            rows[u].union_with(&higher);
            rows[u].set(u, false);
        }
        parent[i] = higher.ones().map(|u| pos[u]).min().unwrap_or(usize::MAX);
        higher.insert(v);
        td.push_bag(higher);
    }
    let mut last_root: Option<usize> = None;
    for (i, &p) in parent.iter().enumerate() {
        if p != usize::MAX {
            td.add_edge(i, p);
        } else {
            if let Some(r) = last_root {
                td.add_edge(r, i);
            }
            last_root = Some(i);
        }
    }
    td
}

/// Exact treewidth as the minimum width over every elimination order.
pub fn treewidth_permutation_oracle(g: &Graph) -> Result<usize, ExactError> {
    let n = g.order();
    if n > ORACLE_LIMIT {
        return Err(ExactError::TooLarge { vertices: n, limit: ORACLE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u16> = g.masks().expect("small").into_iter().map(|m| m as u16).collect();
    let width_of = |order: &[usize]| -> usize {
        let mut rows = adj.clone();
        let mut alive: u16 = ((1u32 << n) - 1) as u16;
        let mut width = 0;
        for &v in order {
            alive &= !(1 << v);
            let higher = rows[v] & alive;
            width = width.max(higher.count_ones() as usize);
            let mut h = higher;
            while h != 0 {
                let u = h.trailing_zeros() as usize;
                h &= h - 1;
                rows[u] |= higher & !(1 << u);
            }
        }
        width
    };
    // Heap's algorithm.
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = width_of(&order);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(width_of(&order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperSource {
    MinDegree,
    MinFill,
    Seed,
}

#[derive(Clone, Debug)]
pub struct TreewidthBounds {
    pub lower: usize,
    pub upper: usize,
    pub witness: TreeDecomposition,
    pub upper_source: UpperSource,
}

/// Lower bound from degeneracy and contraction degeneracy; upper bound from
/// greedy elimination, or from `seed` when it is valid and no wider.
pub fn treewidth_bounds(g: &Graph, seed: Option<&TreeDecomposition>) -> TreewidthBounds {
    let lower = degeneracy(g).max(minor_min_width(g));
    let mut witness = decomposition_from_order(g, &min_degree_order(g));
    let mut upper = witness.width().expect("non-empty");
    let mut source = UpperSource::MinDegree;
    if g.order() <= MIN_FILL_LIMIT {
        let td = decomposition_from_order(g, &min_fill_order(g));
        let w = td.width().expect("non-empty");
        if w < upper {
            upper = w;
            witness = td;
            source = UpperSource::MinFill;
        }
    }
    if let Some(seed) = seed {
        if let Verdict::Valid { width } = treedec::validate(g, seed) {
            if width <= upper {
                upper = width;
                witness = seed.clone();
                source = UpperSource::Seed;
            }
        }
    }
    TreewidthBounds { lower, upper, witness, upper_source: source }
}

/// Largest minimum degree seen while repeatedly deleting a minimum-degree vertex.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        best = best.max(deg[v]);
        removed[v] = true;
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

/// Minor-min-width: like [`degeneracy`], but the minimum-degree vertex is
/// contracted into its lowest-degree neighbour instead of deleted. Treewidth
/// is minor-monotone, so this is still a lower bound.
pub fn minor_min_width(g: &Graph) -> usize {
    let n = g.order();
    let mut rows = g.bitset_rows();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut best = 0;
    for _ in 0..n {
        let v = alive.ones().min_by_key(|&v| (rows[v].count_ones(..), v)).expect("vertex left");
        let dv = rows[v].count_ones(..);
        best = best.max(dv);
        alive.set(v, false);
        let nv = std::mem::replace(&mut rows[v], FixedBitSet::with_capacity(n));
        if let Some(u) = nv.ones().min_by_key(|&u| (rows[u].count_ones(..), u)) {
            for w in nv.ones() {
                rows[w].set(v, false);
                if w != u {
                    rows[w].insert(u);
                    rows[u].insert(w);
                }
            }
        }
    }
    best
}

fn popcount_and_not(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x & !y).count_ones() as usize).sum()
}

/// Greedy order: always eliminate a vertex of minimum current degree.
pub fn min_degree_order(g: &Graph) -> Vec<usize> {
    greedy_order(g, |rows, v| rows[v].count_ones(..))
}

/// Greedy order: always eliminate a vertex whose neighbourhood needs the
/// fewest fill edges to become a clique.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    greedy_order(g, |rows, v| {
        let nv = &rows[v];
        // Each missing pair counted from both ends; u itself is in N(v) - N(u).
        nv.ones().map(|u| popcount_and_not(nv, &rows[u]) - 1).sum::<usize>() / 2
    })
}

fn greedy_order(g: &Graph, score: impl Fn(&[FixedBitSet], usize) -> usize) -> Vec<usize> {
    let n = g.order();
    let mut rows = g.bitset_rows();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive.ones().min_by_key(|&v| (score(&rows, v), v)).expect("vertex left");
        order.push(v);
        alive.set(v, false);
        let higher = std::mem::replace(&mut rows[v], FixedBitSet::with_capacity(n));
        for u in higher.ones() {
            rows[u].union_with(&higher);
            rows[u].set(u, false);
            rows[u].set(v, false);
        }
    }
    order
}
