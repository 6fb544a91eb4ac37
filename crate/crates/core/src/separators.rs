//! p-separators: sets `X` such that no component of `G - X` has more than
//! `p * |G - X|` vertices.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::balance::Balance;
use crate::graph::Graph;
use crate::setsys::{choose, unrank_bits};
use crate::treedec::{self, TreeDecomposition, Verdict, Violation};

/// Default number of candidate sets [`min_separator_order`] may test.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SepError {
    #[error("the set is not a {0}-separator")]
    NotASeparator(Balance),
    #[error("G - X is empty, there is nothing to split")]
    NothingToSplit,
    #[error("no split of the components meets the size bounds")]
    Infeasible,
    #[error("exhaustive search supports at most 64 vertices, graph has {0}")]
    TooLarge(usize),
    #[error("search needs {needed} candidate sets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("decomposition is invalid: {}", .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidDecomposition(Vec<Violation>),
    #[error("no subset of a bag is a {0}-separator")]
    NoBalancedBag(Balance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorReport {
    pub separator: FixedBitSet,
    pub p: Balance,
    /// Components of `G - X`, each sorted, listed by smallest vertex.
    pub components: Vec<Vec<usize>>,
    /// `|V(G - X)|`.
    pub rest: usize,
    pub is_p_separator: bool,
}

impl SeparatorReport {
    pub fn order(&self) -> usize {
        self.separator.count_ones(..)
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

pub fn check_separator(g: &Graph, separator: &FixedBitSet, p: Balance) -> SeparatorReport {
    let mut x = separator.clone();
    x.grow(g.order());
    let components = g.components_avoiding(&x);
    let rest: usize = components.iter().map(Vec::len).sum();
    let is_p_separator = components.iter().all(|c| p.caps(c.len(), rest));
    SeparatorReport { separator: x, p, components, rest, is_p_separator }
}

/// Which size guarantees a two-sided split satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundProfile {
    /// `(1-p)r <= |A| <= r/2 <= |B| <= p r`.
    pub half_split: bool,
    /// `r/3 <= |A|, |B| <= 2r/3`.
    pub thirds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub profile: BoundProfile,
}

pub fn profile_of(a: usize, b: usize, p: Balance) -> BoundProfile {
    let r = a + b;
    BoundProfile {
        half_split: p.floor_met(a, r) && 2 * a <= r && r <= 2 * b && p.caps(b, r),
        thirds: r <= 3 * a && r <= 3 * b && 3 * a <= 2 * r && 3 * b <= 2 * r,
    }
}

/// Packs the components of `G - X` into two sides `A` and `B` with no edge
/// between them and `(1-p)r <= |A| <= r/2 <= |B| <= p r`, where `r = |G - X|`.
///
/// Components go into `B` in decreasing size order until `B` holds at least
/// half of `G - X`. If that overshoots `p r`, the last component moves back.
pub fn bipartition(report: &SeparatorReport) -> Result<Bipartition, SepError> {
    if !report.is_p_separator {
        return Err(SepError::NotASeparator(report.p));
    }
    let r = report.rest;
    if r == 0 {
        return Err(SepError::NothingToSplit);
    }
    let mut order: Vec<&Vec<usize>> = report.components.iter().collect();
    order.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    let mut prefix = 0;
    let mut cut = order.len();
    for (j, c) in order.iter().enumerate() {
        prefix += c.len();
        if 2 * prefix >= r {
            cut = if report.p.caps(prefix, r) { j + 1 } else { j };
            break;
        }
    }
    let gather = |parts: &[&Vec<usize>]| {
        let mut v: Vec<usize> = parts.iter().flat_map(|c| c.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let (big, small) = order.split_at(cut);
    let (mut b, mut a) = (gather(big), gather(small));
    if a.len() > b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let profile = profile_of(a.len(), b.len(), report.p);
    if !profile.half_split {
        return Err(SepError::Infeasible);
    }
    Ok(Bipartition { a, b, profile })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinSeparator {
    /// Smallest order, with the colex-first separator of that order.
    Found { order: usize, witness: FixedBitSet },
    /// No p-separator of order at most `cap` exists.
    ExceedsCap { cap: usize },
}

/// `true` when no component of `G[rest]` exceeds `p * |rest|`.
fn balanced(adj: &[u64], rest: u64, p: Balance) -> bool {
    let r = rest.count_ones() as usize;
    let mut left = rest;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & rest & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        if !p.caps(comp.count_ones() as usize, r) {
            return false;
        }
        left &= !comp;
    }
    true
}

const CHUNK: u64 = 1 << 14;

/// Smallest p-separator by exhaustive search over sets of increasing size.
pub fn min_separator_order(g: &Graph, p: Balance, cap: usize, budget: u64) -> Result<MinSeparator, SepError> {
    let n = g.order();
    let adj = g.masks().ok_or(SepError::TooLarge(n))?;
    let cap = cap.min(n);
    let needed: u128 = (0..=cap).map(|s| choose(n as u32, s as u32) as u128).sum();
    if needed > budget as u128 {
        return Err(SepError::BudgetExceeded { needed, budget });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for size in 0..=cap {
        let total = choose(n as u32, size as u32);
        let chunks = total.div_ceil(CHUNK);
        // find_map_first keeps the result independent of scheduling.
        let hit = (0..chunks).into_par_iter().find_map_first(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut x = unrank_bits(start, size as u32, n as u32);
            for r in start..end {
                if balanced(&adj, all & !x, p) {
                    return Some(x);
                }
                if r + 1 < end {
                    x = next_same_weight(x);
                }
            }
            None
        });
        if let Some(x) = hit {
            let witness = crate::graph::vertex_set(n, (0..n).filter(|&v| x >> v & 1 == 1));
            return Ok(MinSeparator::Found { order: size, witness });
        }
    }
    Ok(MinSeparator::ExceedsCap { cap })
}

/// Next mask with the same popcount in increasing numeric (= colex) order.
#[inline]
fn next_same_weight(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let low = x & x.wrapping_neg();
    let ripple = x.wrapping_add(low);
    ripple | (((x ^ ripple) >> 2) / low)
}

/// Candidate sets [`separator_from_bag`] may test when no bag or adjacent-bag
/// intersection is balanced.
pub const BAG_SUBSET_BUDGET: u64 = 1 << 22;

/// A p-separator contained in some bag of a valid decomposition.
///
/// Whole bags are tried first, then intersections of adjacent bags, then
/// subsets of bags by increasing size. A bag on its own need not be balanced:
/// for two isolated vertices with bags `{0}` and `{1}` only the empty set is.
pub fn separator_from_bag(g: &Graph, td: &TreeDecomposition, p: Balance) -> Result<FixedBitSet, SepError> {
    if let Verdict::Invalid(v) = treedec::validate(g, td) {
        return Err(SepError::InvalidDecomposition(v));
    }
    let ok = |x: &FixedBitSet| check_separator(g, x, p).is_p_separator;
    if let Some(bag) = td.bags().iter().find(|b| ok(b)) {
        return Ok(bag.clone());
    }
    for &(s, t) in td.edges() {
        let mut x = td.bag(s).clone();
        x.intersect_with(td.bag(t));
        if ok(&x) {
            return Ok(x);
        }
    }
    let members: Vec<Vec<usize>> = td.bags().iter().map(|b| b.ones().collect()).collect();
    let widest = members.iter().map(Vec::len).max().unwrap_or(0);
    let mut spent = 0u64;
    for size in 0..widest {
        for bag in members.iter().filter(|m| m.len() > size) {
            let len = bag.len();
            if len > 63 {
                return Err(SepError::BudgetExceeded { needed: u128::MAX, budget: BAG_SUBSET_BUDGET });
            }
            let total = choose(len as u32, size as u32);
            spent = spent.saturating_add(total);
            if spent > BAG_SUBSET_BUDGET {
                return Err(SepError::BudgetExceeded { needed: spent as u128, budget: BAG_SUBSET_BUDGET });
            }
            let mut pick = if size == 0 { 0 } else { (1u64 << size) - 1 };
            for _ in 0..total {
                let x = crate::graph::vertex_set(g.order(), (0..len).filter(|&i| pick >> i & 1 == 1).map(|i| bag[i]));
                if ok(&x) {
                    return Ok(x);
                }
                pick = next_same_weight(pick);
            }
        }
    }
    Err(SepError::NoBalancedBag(p))
}
