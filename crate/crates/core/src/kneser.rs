//! Kneser graphs `K(n, k)`: all k-subsets of `[n]`, adjacent when disjoint.
//!
//! Vertex `i` is the k-set of colex rank `i`. This numbering is shared by every
//! module and by the exported files.

use std::fmt;
use std::io::{self, Write};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::balance::Balance;
use crate::formats;
use crate::graph::Graph;
use crate::setsys::{self, choose, KSet, SetFamily, MAX_GROUND};

/// Default cap on `C(n, k)` for [`build`].
pub const DEFAULT_VERTEX_BUDGET: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KneserError {
    #[error("invalid parameters n={n}, k={k}: need n >= 1, k >= 1 and n <= {MAX_GROUND}")]
    InvalidParams { n: u32, k: u32 },
    #[error("K({n},{k}) has {vertices} vertices, over the budget of {budget}")]
    BudgetExceeded { n: u32, k: u32, vertices: u64, budget: u64 },
    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },
}

/// Which of the degenerate shapes, if any, `K(n, k)` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `k = 1`: the complete graph on `n` vertices.
    Complete,
    /// `n < 2k`: no two k-sets are disjoint.
    Edgeless,
    /// `n = 2k`: every k-set is disjoint from exactly its complement.
    Matching,
    /// `n >= 2k + 1` and `k >= 2`.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KneserParams {
    pub n: u32,
    pub k: u32,
}

impl KneserParams {
    pub fn new(n: u32, k: u32) -> Result<Self, KneserError> {
        if n == 0 || k == 0 || n > MAX_GROUND {
            return Err(KneserError::InvalidParams { n, k });
        }
        Ok(KneserParams { n, k })
    }

    pub fn vertex_count(&self) -> u64 {
        choose(self.n, self.k)
    }

    pub fn degree(&self) -> u64 {
        choose(self.n.saturating_sub(self.k), self.k)
    }

    pub fn regime(&self) -> Regime {
        if self.k == 1 {
            Regime::Complete
        } else if self.n < 2 * self.k {
            Regime::Edgeless
        } else if self.n == 2 * self.k {
            Regime::Matching
        } else {
            Regime::General
        }
    }

    /// The treewidth of the degenerate regimes, which needs no search.
    pub fn degenerate_treewidth(&self) -> Option<u64> {
        match self.regime() {
            Regime::Complete => Some(self.n as u64 - 1),
            Regime::Edgeless => Some(0),
            Regime::Matching => Some(1),
            Regime::General => None,
        }
    }
}

impl fmt::Display for KneserParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.n, self.k)
    }
}

#[derive(Clone, Debug)]
pub struct KneserGraph {
    params: KneserParams,
    vertices: Vec<KSet>,
    graph: Graph,
}

impl KneserGraph {
    pub fn params(&self) -> KneserParams {
        self.params
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// The k-set labelling vertex `v`.
    pub fn vertex(&self, v: usize) -> KSet {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[KSet] {
        &self.vertices
    }

    /// Vertex index of a k-set (its colex rank).
    pub fn index_of(&self, set: &KSet) -> Option<usize> {
        if set.arity() != self.params.k || set.ground() != self.params.n {
            return None;
        }
        Some(setsys::colex_rank(set) as usize)
    }

    /// The vertex indices of a family of k-sets.
    pub fn vertex_set(&self, family: &SetFamily) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order());
        for m in family.iter() {
            s.insert(setsys::colex_rank(m) as usize);
        }
        s
    }
}

pub fn build(params: KneserParams) -> Result<KneserGraph, KneserError> {
    build_with_budget(params, DEFAULT_VERTEX_BUDGET)
}

pub fn build_with_budget(params: KneserParams, budget: u64) -> Result<KneserGraph, KneserError> {
    let KneserParams { n, k } = params;
    let count = params.vertex_count();
    if count > budget {
        return Err(KneserError::BudgetExceeded { n, k, vertices: count, budget });
    }
    let vertices: Vec<KSet> = (0..count).map(|r| setsys::colex_unrank(r, k, n).expect("rank in range")).collect();
    let full = setsys::full_mask(n);
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|u| {
            let mut list = Vec::with_capacity(params.degree() as usize);
            setsys::for_each_submask_of_size(full & !u.bits(), k, |bits| {
                list.push(setsys::rank_bits(bits) as usize);
            });
            list
        })
        .collect();
    Ok(KneserGraph { params, vertices, graph: Graph::from_adjacency_unchecked(adj) })
}

/// All k-sets of `[n]` containing `element`.
pub fn star_family(element: u32, params: KneserParams) -> Result<SetFamily, KneserError> {
    let KneserParams { n, k } = params;
    if element == 0 || element > n {
        return Err(KneserError::ElementOutOfRange { element, n });
    }
    let mut family = SetFamily::empty(k, n).map_err(|_| KneserError::InvalidParams { n, k })?;
    let others = setsys::full_mask(n) & !(1u64 << (element - 1));
    setsys::for_each_submask_of_size(others, k - 1, |bits| {
        let set = KSet::from_bits(n, bits | 1u64 << (element - 1)).expect("inside ground set");
        family.insert(set).expect("arity k");
    });
    Ok(family)
}

/// Where `n` sits relative to the thresholds of the large-`n` treewidth
/// formula and of the separator bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// `4k^2 - 4k + 3`.
    pub quadratic_threshold: u64,
    /// Smallest integer `n` with `n >= (k^2 - 1) / (1 - p) + 2`.
    pub balance_threshold: u64,
    /// `max` of the two above.
    pub separator_threshold: u64,
    /// `n` clears the quadratic threshold and `k >= 3`.
    pub formula_applies: bool,
    /// `n` clears both thresholds for this `p`.
    pub separator_applies: bool,
}

pub fn threshold_check(params: KneserParams, p: Balance) -> Thresholds {
    let k = params.k as u64;
    let n = params.n as u64;
    let quadratic_threshold = 4 * k * k - 4 * k + 3;
    // n >= (k^2-1)/(1-p) + 2  <=>  (n-2)(den-num) >= (k^2-1) den
    let gap = (p.denom() - p.numer()) as u128;
    let need = (k * k - 1) as u128 * p.denom() as u128;
    let balance_threshold = 2 + need.div_ceil(gap) as u64;
    let separator_threshold = quadratic_threshold.max(balance_threshold);
    Thresholds {
        quadratic_threshold,
        balance_threshold,
        separator_threshold,
        formula_applies: k >= 3 && n >= quadratic_threshold,
        separator_applies: n >= separator_threshold,
    }
}

/// Writes `G` in the PACE `.gr` format, preceded by a comment naming the parameters.
pub fn export_graph<W: Write>(g: &KneserGraph, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "c kneser n={} k={}", g.params.n, g.params.k)?;
    formats::write_graph(&g.graph, sink)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, k: u32) -> KneserParams {
        KneserParams::new(n, k).unwrap()
    }

    /// Degree of each vertex by scanning all pairs.
    fn brute_degrees(g: &KneserGraph) -> Vec<usize> {
        let vs = g.vertices();
        vs.iter().map(|u| vs.iter().filter(|v| u.is_disjoint(v)).count()).collect()
    }

    #[test]
    fn petersen() {
        let g = build(params(5, 2)).unwrap();
        assert_eq!(g.order(), 10);
        assert!((0..10).all(|v| g.graph().degree(v) == 3));
        assert_eq!(g.graph().size(), 15);
    }

    #[test]
    fn six_two() {
        let g = build(params(6, 2)).unwrap();
        assert_eq!(g.order(), 15);
        assert_eq!(brute_degrees(&g), vec![6; 15]);
    }

    #[test]
    fn four_two_is_a_matching() {
        let g = build(params(4, 2)).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.graph().size(), 3);
        assert!((0..6).all(|v| g.graph().degree(v) == 1));
        assert_eq!(params(4, 2).regime(), Regime::Matching);
        assert_eq!(params(4, 2).degenerate_treewidth(), Some(1));
    }

    #[test]
    fn adjacency_is_disjointness() {
        for n in 1..=9 {
            for k in 1..=n {
                let g = build(params(n, k)).unwrap();
                assert_eq!(g.order() as u64, choose(n, k));
                let deg = params(n, k).degree() as usize;
                for (i, u) in g.vertices().iter().enumerate() {
                    assert_eq!(g.index_of(u), Some(i));
                    assert_eq!(g.graph().degree(i), deg);
                    assert!(!g.graph().has_edge(i, i));
                    for (j, v) in g.vertices().iter().enumerate() {
                        assert_eq!(g.graph().has_edge(i, j), u.is_disjoint(v) && i != j);
                    }
                }
            }
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(params(5, 1).regime(), Regime::Complete);
        assert_eq!(params(5, 1).degenerate_treewidth(), Some(4));
        assert_eq!(params(5, 3).regime(), Regime::Edgeless);
        assert_eq!(params(7, 3).regime(), Regime::General);
        assert!(KneserParams::new(0, 1).is_err());
        assert!(KneserParams::new(65, 2).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(build_with_budget(params(30, 5), 1000), Err(KneserError::BudgetExceeded { .. })));
    }

    #[test]
    fn star_families() {
        let s = star_family(1, params(5, 2)).unwrap();
        let listed: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        assert_eq!(listed, ["{1,2}", "{1,3}", "{1,4}", "{1,5}"]);
        for n in 3..=9 {
            for k in 1..=n / 2 {
                let p = params(n, k);
                let g = build(p).unwrap();
                for i in 1..=n {
                    let star = star_family(i, p).unwrap();
                    assert_eq!(star.len() as u64, choose(n - 1, k - 1));
                    assert!(g.graph().is_independent(&g.vertex_set(&star)));
                    assert!(star.iter().all(|a| star.iter().all(|b| !a.is_disjoint(b))));
                }
            }
        }
        assert!(star_family(6, params(5, 2)).is_err());
    }

    #[test]
    fn thresholds() {
        let two_thirds = Balance::two_thirds();
        assert_eq!(threshold_check(params(30, 3), two_thirds).quadratic_threshold, 27);
        let t = threshold_check(params(11, 2), two_thirds);
        assert_eq!(t.quadratic_threshold, 11);
        assert_eq!(t.balance_threshold, 11);
        assert_eq!(t.separator_threshold, 11);
        assert!(t.separator_applies);
        assert!(!t.formula_applies, "needs k >= 3");
        assert!(!threshold_check(params(10, 2), two_thirds).separator_applies);
        assert!(threshold_check(params(27, 3), two_thirds).formula_applies);
        // (9-1)/(1-3/4)+2 = 34 dominates 27 at k = 3.
        let t = threshold_check(params(30, 3), "3/4".parse().unwrap());
        assert_eq!(t.separator_threshold, 34);
        assert!(!t.separator_applies);
    }

    #[test]
    fn export_counts() {
        let mut out = Vec::new();
        export_graph(&build(params(4, 2)).unwrap(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.lines().any(|l| l == "p tw 6 3"));
        let mut out = Vec::new();
        export_graph(&build(params(5, 2)).unwrap(), &mut out).unwrap();
        let g = formats::parse_graph(std::str::from_utf8(&out).unwrap()).unwrap();
        assert_eq!((g.order(), g.size()), (10, 15));
        assert_eq!(&g, build(params(5, 2)).unwrap().graph());
    }
}
