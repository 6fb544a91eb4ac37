//! Brute-force checks of the intersecting-family bounds on small Kneser graphs.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::balance::Balance;
use crate::graph::{vertex_set, Graph};
use crate::kneser::{build, star_family, threshold_check, KneserError, KneserGraph, KneserParams, Thresholds};
use crate::setsys::{choose, KSet};

/// Default vertex limit for [`max_independent_set`].
pub const DEFAULT_MIS_LIMIT: usize = 40;
/// Default vertex limit for [`max_cross_product`]; the search visits `2^|V|` sets.
pub const DEFAULT_CROSS_LIMIT: usize = 21;
pub const MAX_CROSS_LIMIT: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EkrError {
    #[error("graph has {vertices} vertices, limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("witness has no vertices")]
    EmptyWitness,
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("{set} is not a {k}-subset of [{n}]")]
    NotAVertex { set: KSet, n: u32, k: u32 },
    #[error("{0} appears more than once")]
    Duplicate(KSet),
    #[error(transparent)]
    Kneser(#[from] KneserError),
}

/// Largest independent set, by branch and bound on cliques of the complement
/// with greedy colouring bounds. Ties go to the candidate found first when
/// branching on high colour classes, so the answer is deterministic.
pub fn max_independent_set(g: &Graph, limit: usize) -> Result<FixedBitSet, EkrError> {
    let n = g.order();
    if n > limit.min(64) {
        return Err(EkrError::TooLarge { vertices: n, limit: limit.min(64) });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let adj = g.masks().expect("at most 64 vertices");
    let comp: Vec<u64> = (0..n).map(|v| all & !adj[v] & !(1u64 << v)).collect();
    let mut best = 0u64;
    if n > 0 {
        expand(&comp, all, 0, &mut best);
    }
    Ok(vertex_set(n, (0..n).filter(|&v| best >> v & 1 == 1)))
}

fn colour_sort(comp: &[u64], cand: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !comp[v];
            uncoloured &= !(1u64 << v);
            out.push((v, colour));
        }
    }
    out
}

fn expand(comp: &[u64], mut cand: u64, cur: u64, best: &mut u64) {
    let order = colour_sort(comp, cand);
    for &(v, colour) in order.iter().rev() {
        if cur.count_ones() + colour <= best.count_ones() {
            return;
        }
        let next = cur | 1u64 << v;
        let sub = cand & comp[v];
        if sub == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand(comp, sub, next, best);
        }
        cand &= !(1u64 << v);
    }
}

/// A pair of vertex sets of a Kneser graph, checked for cross-intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPair {
    pub a: FixedBitSet,
    pub b: FixedBitSet,
    pub cross_intersecting: bool,
    pub product: u64,
    /// `C(n-1, k-1)^2`.
    pub bound: u64,
}

impl CrossPair {
    pub fn new(g: &KneserGraph, a: &FixedBitSet, b: &FixedBitSet) -> Self {
        let cross_intersecting = a.ones().all(|u| g.graph().neighbors(u).iter().all(|&v| !b.contains(v)));
        let KneserParams { n, k } = g.params();
        let star = choose(n - 1, k - 1);
        CrossPair {
            a: a.clone(),
            b: b.clone(),
            cross_intersecting,
            product: (a.count_ones(..) * b.count_ones(..)) as u64,
            bound: star * star,
        }
    }

    /// The product bound, which holds for every cross-intersecting pair when `n >= 2k`.
    pub fn within_bound(&self) -> bool {
        self.product <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossOptimum {
    pub product: u64,
    /// Every optimal `(A, B)` with `B = V - N(A)`, ordered by `A` as a number.
    pub optima: Vec<(FixedBitSet, FixedBitSet)>,
}

/// Maximises `|A| * |B|` over pairs with no edge between `A` and `B`.
///
/// Only `A` is enumerated: for fixed `A` the best `B` is every vertex outside
/// `N(A)`.
pub fn max_cross_product(g: &Graph, limit: usize) -> Result<CrossOptimum, EkrError> {
    let n = g.order();
    let limit = limit.min(MAX_CROSS_LIMIT);
    if n > limit {
        return Err(EkrError::TooLarge { vertices: n, limit });
    }
    let adj = g.masks().expect("at most 26 vertices");
    let all = (1u64 << n) - 1;
    let lo_bits = n / 2;
    let hi_bits = n - lo_bits;
    let table = |offset: usize, bits: usize| {
        let mut t = vec![0u64; 1 << bits];
        for s in 1..t.len() {
            let v = s.trailing_zeros() as usize;
            t[s] = t[s & (s - 1)] | adj[offset + v];
        }
        t
    };
    let lo = table(0, lo_bits);
    let hi = table(lo_bits, hi_bits);
    let (product, masks) = (0..1u64 << hi_bits)
        .into_par_iter()
        .map(|h| {
            let mut best = 0u64;
            let mut hits = Vec::new();
            for l in 0..1u64 << lo_bits {
                let a = h << lo_bits | l;
                let b = all & !(lo[l as usize] | hi[h as usize]);
                let prod = (a.count_ones() * b.count_ones()) as u64;
                if prod > best {
                    best = prod;
                    hits.clear();
                }
                if prod == best {
                    hits.push((a, b));
                }
            }
            (best, hits)
        })
        .reduce(
            || (0, Vec::new()),
            |(p, mut x), (q, y)| match p.cmp(&q) {
                std::cmp::Ordering::Greater => (p, x),
                std::cmp::Ordering::Less => (q, y),
                std::cmp::Ordering::Equal => {
                    x.extend(y);
                    (p, x)
                }
            },
        );
    let to_set = |m: u64| vertex_set(n, (0..n).filter(|&v| m >> v & 1 == 1));
    let mut masks = masks;
    masks.sort_unstable();
    Ok(CrossOptimum { product, optima: masks.into_iter().map(|(a, b)| (to_set(a), to_set(b))).collect() })
}

/// `Some(i)` when `A = B` is the star of all k-sets containing `i`.
pub fn star_pair_element(g: &KneserGraph, a: &FixedBitSet, b: &FixedBitSet) -> Option<u32> {
    if a != b {
        return None;
    }
    let params = g.params();
    (1..=params.n).find(|&i| star_family(i, params).map(|f| &g.vertex_set(&f) == a).unwrap_or(false))
}

/// Disjoint colour classes of a complete multipartite subgraph of the
/// complement of a Kneser graph: members of different classes must intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteWitness {
    pub classes: Vec<Vec<KSet>>,
    pub p: Balance,
}

impl MultipartiteWitness {
    pub fn size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteVerdict {
    pub size: usize,
    /// `C(n-1, k-1)`.
    pub bound: u64,
    /// First pair of disjoint sets lying in different classes.
    pub disjoint_pair: Option<(KSet, KSet)>,
    pub largest_class: usize,
    pub cap_ok: bool,
    pub thresholds: Thresholds,
    pub within_bound: bool,
    /// A valid witness above the bound while every hypothesis holds.
    pub violation: bool,
}

impl MultipartiteVerdict {
    pub fn is_witness(&self) -> bool {
        self.disjoint_pair.is_none() && self.cap_ok
    }
}

pub fn verify_multipartite(w: &MultipartiteWitness, params: KneserParams) -> Result<MultipartiteVerdict, EkrError> {
    let KneserParams { n, k } = params;
    let mut seen = std::collections::HashSet::new();
    for (i, class) in w.classes.iter().enumerate() {
        if class.is_empty() {
            return Err(EkrError::EmptyClass(i));
        }
        for s in class {
            if s.ground() != n || s.arity() != k {
                return Err(EkrError::NotAVertex { set: *s, n, k });
            }
            if !seen.insert(s.bits()) {
                return Err(EkrError::Duplicate(*s));
            }
        }
    }
    let size = w.size();
    if size == 0 {
        return Err(EkrError::EmptyWitness);
    }
    let mut disjoint_pair = None;
    'outer: for (i, ci) in w.classes.iter().enumerate() {
        for cj in &w.classes[i + 1..] {
            for x in ci {
                if let Some(y) = cj.iter().find(|y| x.is_disjoint(y)) {
                    disjoint_pair = Some((*x, *y));
                    break 'outer;
                }
            }
        }
    }
    let largest_class = w.classes.iter().map(Vec::len).max().unwrap_or(0);
    let cap_ok = w.p.caps(largest_class, size);
    let thresholds = threshold_check(params, w.p);
    let bound = choose(n - 1, k - 1);
    let within_bound = size as u64 <= bound;
    let violation = thresholds.separator_applies && disjoint_pair.is_none() && cap_ok && !within_bound;
    Ok(MultipartiteVerdict { size, bound, disjoint_pair, largest_class, cap_ok, thresholds, within_bound, violation })
}

/// The star at element 1, dealt alternately into two classes.
pub fn split_star_witness(params: KneserParams, p: Balance) -> Result<MultipartiteWitness, EkrError> {
    let star: Vec<KSet> = star_family(1, params)?.iter().copied().collect();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, s) in star.into_iter().enumerate() {
        if i % 2 == 0 {
            a.push(s)
        } else {
            b.push(s)
        }
    }
    let classes = if b.is_empty() { vec![a] } else { vec![a, b] };
    Ok(MultipartiteWitness { classes, p })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntResult {
    pub best: usize,
    pub witness: Option<MultipartiteWitness>,
    pub bound: u64,
    /// The thresholds hold, so the bound is claimed for this instance.
    pub in_scope: bool,
    /// A witness above the bound was found in scope.
    pub alarm: bool,
    pub iterations: u64,
}

const NONE: usize = usize::MAX;
const RESTART_EVERY: u64 = 500;

/// Chance of keeping a move that lowers [`HuntState::score`].
const WORSE_ACCEPT: f64 = 0.2;

#[derive(Clone)]
struct HuntState {
    class_of: Vec<usize>,
    classes: Vec<FixedBitSet>,
    sizes: Vec<usize>,
    members: FixedBitSet,
    total: usize,
}

impl HuntState {
    fn new(order: usize) -> Self {
        HuntState {
            class_of: vec![NONE; order],
            classes: Vec::new(),
            sizes: Vec::new(),
            members: FixedBitSet::with_capacity(order),
            total: 0,
        }
    }

    fn insert(&mut self, v: usize, c: usize) {
        if c == self.classes.len() {
            self.classes.push(FixedBitSet::with_capacity(self.class_of.len()));
            self.sizes.push(0);
        }
        self.classes[c].insert(v);
        self.sizes[c] += 1;
        self.class_of[v] = c;
        self.members.insert(v);
        self.total += 1;
    }

    fn remove(&mut self, v: usize) {
        let c = self.class_of[v];
        self.classes[c].set(v, false);
        self.sizes[c] -= 1;
        self.class_of[v] = NONE;
        self.members.set(v, false);
        self.total -= 1;
        if self.sizes[c] == 0 {
            let last = self.classes.len() - 1;
            self.classes.swap_remove(c);
            self.sizes.swap_remove(c);
            if c != last {
                for u in self.classes[c].ones() {
                    self.class_of[u] = c;
                }
            }
        }
    }

    /// Classes `v` may join: `None` means any class or a fresh one.
    fn allowed(&self, rows: &[FixedBitSet], v: usize) -> Result<Option<usize>, ()> {
        let conflicts = rows[v].intersection_count(&self.members);
        if conflicts == 0 {
            return Ok(None);
        }
        let first = rows[v].intersection(&self.members).next().expect("nonzero count");
        let c = self.class_of[first];
        if rows[v].intersection_count(&self.classes[c]) == conflicts {
            Ok(Some(c))
        } else {
            Err(())
        }
    }

    /// Size, less twice the amount by which the largest class exceeds its cap.
    fn score(&self, p: Balance) -> f64 {
        let largest = self.sizes.iter().copied().max().unwrap_or(0) as f64;
        let cap = self.total as f64 * p.numer() as f64 / p.denom() as f64;
        self.total as f64 - 2.0 * (largest - cap).max(0.0)
    }

    fn balanced(&self, p: Balance) -> bool {
        self.total > 0 && p.caps(self.sizes.iter().copied().max().unwrap_or(0), self.total)
    }

    fn snapshot(&self, g: &KneserGraph, p: Balance) -> MultipartiteWitness {
        let classes = self.classes.iter().map(|c| c.ones().map(|v| g.vertex(v)).collect()).collect();
        MultipartiteWitness { classes, p }
    }
}

/// Puts `v` into the only class it may join, or, when it meets every member,
/// into the smallest class (sometimes a fresh one).
fn place(state: &mut HuntState, rows: &[FixedBitSet], rng: &mut ChaCha8Rng, v: usize) -> bool {
    match state.allowed(rows, v) {
        Ok(Some(c)) => state.insert(v, c),
        Ok(None) => {
            let fresh = state.classes.len();
            let c = if fresh == 0 || rng.gen_bool(0.2) {
                fresh
            } else {
                (0..fresh).min_by_key(|&c| state.sizes[c]).expect("non-empty")
            };
            state.insert(v, c);
        }
        Err(()) => return false,
    }
    true
}

fn random_member(rng: &mut ChaCha8Rng, set: &FixedBitSet, count: usize) -> usize {
    let i = rng.gen_range(0..count);
    set.ones().nth(i).expect("count matches")
}

/// Randomised local search for a large multipartite witness, trying to beat
/// `C(n-1, k-1)`. Moves add a vertex, move a vertex between classes, split a
/// class along its components, or drop a vertex. Moves that lower the score
/// (size minus an imbalance penalty) are usually undone, and the state restarts
/// from the seed witness, or from empty, every `RESTART_EVERY` steps.
pub fn hunt_multipartite(
    params: KneserParams,
    p: Balance,
    iterations: u64,
    seed: u64,
    start: Option<&MultipartiteWitness>,
) -> Result<HuntResult, EkrError> {
    let g = build(params)?;
    let order = g.order();
    let rows = g.graph().bitset_rows();
    let thresholds = threshold_check(params, p);
    let bound = choose(params.n - 1, params.k - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut initial = HuntState::new(order);
    let mut best = 0usize;
    let mut best_witness = None;
    if let Some(w) = start {
        let verdict = verify_multipartite(w, params)?;
        if verdict.disjoint_pair.is_none() {
            for (c, class) in w.classes.iter().enumerate() {
                for s in class {
                    initial.insert(g.index_of(s).expect("verified vertex"), c);
                }
            }
            if verdict.cap_ok {
                best = verdict.size;
                best_witness = Some(MultipartiteWitness { classes: w.classes.clone(), p });
            }
        }
    }
    let restart = |state: &mut HuntState| {
        *state = HuntState::new(order);
        for (c, class) in initial.classes.iter().enumerate() {
            for v in class.ones() {
                state.insert(v, c);
            }
        }
    };

    let mut state = HuntState::new(order);
    restart(&mut state);
    for it in 0..iterations {
        if it % RESTART_EVERY == 0 && it > 0 {
            restart(&mut state);
        }
        let roll: f64 = rng.gen();
        if order == 0 {
            break;
        }
        let before = state.clone();
        if roll < 0.6 || state.total == 0 {
            // add: a few draws to find a vertex that fits somewhere
            for _ in 0..16 {
                let v = rng.gen_range(0..order);
                if !state.members.contains(v) && place(&mut state, &rows, &mut rng, v) {
                    break;
                }
            }
        } else if roll < 0.8 {
            // move; v always fits back into its old class
            let v = random_member(&mut rng, &state.members, state.total);
            state.remove(v);
            let placed = place(&mut state, &rows, &mut rng, v);
            debug_assert!(placed);
        } else if roll < 0.9 {
            // split along components of the class in the Kneser graph
            let c = rng.gen_range(0..state.classes.len());
            if state.sizes[c] < 2 {
                continue;
            }
            let mut left = state.classes[c].clone();
            let mut pieces = Vec::new();
            while let Some(s) = left.ones().next() {
                let mut comp = FixedBitSet::with_capacity(order);
                let mut stack = vec![s];
                left.set(s, false);
                while let Some(u) = stack.pop() {
                    comp.insert(u);
                    let next: Vec<usize> = rows[u].intersection(&left).collect();
                    for w in next {
                        left.set(w, false);
                        stack.push(w);
                    }
                }
                pieces.push(comp);
            }
            if pieces.len() < 2 {
                continue;
            }
            let mut sides: Vec<bool> = pieces.iter().map(|_| rng.gen()).collect();
            if sides.iter().all(|&s| s) || sides.iter().all(|&s| !s) {
                let i = rng.gen_range(0..sides.len());
                sides[i] = !sides[i];
            }
            let fresh = state.classes.len();
            for (piece, side) in pieces.iter().zip(sides) {
                if side {
                    for v in piece.ones() {
                        state.remove(v);
                        let target = if state.classes.len() > fresh { fresh } else { state.classes.len() };
                        state.insert(v, target);
                    }
                }
            }
        } else {
            let v = random_member(&mut rng, &state.members, state.total);
            state.remove(v);
        }
        if state.score(p) < before.score(p) && !rng.gen_bool(WORSE_ACCEPT) {
            state = before;
        }
        if state.total > best && state.balanced(p) {
            best = state.total;
            best_witness = Some(state.snapshot(&g, p));
        }
    }
    let in_scope = thresholds.separator_applies;
    Ok(HuntResult { best, witness: best_witness, bound, in_scope, alarm: in_scope && best as u64 > bound, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::KneserParams;

    fn kn(n: u32, k: u32) -> KneserGraph {
        build(KneserParams::new(n, k).unwrap()).unwrap()
    }

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        let adj = g.masks().unwrap();
        (0u64..1 << n)
            .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn independence_numbers() {
        for (n, k, want) in [(5, 2, 4), (4, 2, 3), (6, 2, 5), (6, 3, 10)] {
            let g = kn(n, k);
            let s = max_independent_set(g.graph(), DEFAULT_MIS_LIMIT).unwrap();
            assert!(g.graph().is_independent(&s));
            assert_eq!(s.count_ones(..), want, "K({n},{k})");
        }
        assert_eq!(max_independent_set(&Graph::empty(0), 40).unwrap().count_ones(..), 0);
        assert!(matches!(max_independent_set(&Graph::empty(41), 40), Err(EkrError::TooLarge { .. })));
    }

    #[test]
    fn independence_matches_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=14);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.35)).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let s = max_independent_set(&g, 40).unwrap();
            assert!(g.is_independent(&s));
            assert_eq!(s.count_ones(..), brute_alpha(&g));
        }
    }

    #[test]
    fn cross_product_on_petersen() {
        let g = kn(5, 2);
        let opt = max_cross_product(g.graph(), DEFAULT_CROSS_LIMIT).unwrap();
        assert_eq!(opt.product, 16);
        assert_eq!(opt.optima.len(), 5);
        for (a, b) in &opt.optima {
            assert!(star_pair_element(&g, a, b).is_some());
            let pair = CrossPair::new(&g, a, b);
            assert!(pair.cross_intersecting && pair.within_bound());
        }
    }

    #[test]
    fn cross_pair_detects_disjoint_members() {
        let g = kn(5, 2);
        let a = vertex_set(10, [0]);
        let b = vertex_set(10, [g.graph().neighbors(0)[0]]);
        assert!(!CrossPair::new(&g, &a, &b).cross_intersecting);
    }

    #[test]
    fn multipartite_examples() {
        let p = Balance::two_thirds();
        let params = KneserParams::new(11, 2).unwrap();
        let w = split_star_witness(params, p).unwrap();
        let v = verify_multipartite(&w, params).unwrap();
        assert!(v.is_witness() && v.within_bound && !v.violation);
        assert_eq!(v.size as u64, v.bound);
        assert!(v.thresholds.separator_applies);

        let single = MultipartiteWitness { classes: vec![w.classes.concat()], p };
        assert!(!verify_multipartite(&single, params).unwrap().cap_ok);

        let s = |e: &[u32]| KSet::new(11, e).unwrap();
        let bad = MultipartiteWitness { classes: vec![vec![s(&[1, 2])], vec![s(&[3, 4])]], p };
        let v = verify_multipartite(&bad, params).unwrap();
        assert_eq!(v.disjoint_pair, Some((s(&[1, 2]), s(&[3, 4]))));

        let dup = MultipartiteWitness { classes: vec![vec![s(&[1, 2])], vec![s(&[1, 2])]], p };
        assert_eq!(verify_multipartite(&dup, params), Err(EkrError::Duplicate(s(&[1, 2]))));
        let empty = MultipartiteWitness { classes: vec![], p };
        assert_eq!(verify_multipartite(&empty, params), Err(EkrError::EmptyWitness));
        let wrong = MultipartiteWitness { classes: vec![vec![KSet::new(11, &[1, 2, 3]).unwrap()]], p };
        assert!(matches!(verify_multipartite(&wrong, params), Err(EkrError::NotAVertex { .. })));
    }

    #[test]
    fn hunt_stays_valid_and_reproducible() {
        let p = Balance::two_thirds();
        let params = KneserParams::new(7, 2).unwrap();
        let a = hunt_multipartite(params, p, 20_000, 3, None).unwrap();
        let b = hunt_multipartite(params, p, 20_000, 3, None).unwrap();
        assert_eq!(a, b);
        assert!(!a.in_scope);
        let w = a.witness.unwrap();
        let v = verify_multipartite(&w, params).unwrap();
        assert!(v.is_witness());
        assert_eq!(v.size, a.best);
    }

    #[test]
    fn hunt_beats_the_star_below_the_thresholds() {
        let p = Balance::two_thirds();
        let params = KneserParams::new(8, 3).unwrap();
        let r = hunt_multipartite(params, p, 20_000, 0, None).unwrap();
        assert!(r.best as u64 > r.bound, "best {}", r.best);
        assert!(!r.in_scope && !r.alarm);
        let v = verify_multipartite(r.witness.as_ref().unwrap(), params).unwrap();
        assert!(v.is_witness() && !v.within_bound && !v.violation);
    }

    #[test]
    fn unseeded_hunt_finds_the_star_size() {
        let params = KneserParams::new(11, 2).unwrap();
        let r = hunt_multipartite(params, Balance::two_thirds(), 100_000, 0, None).unwrap();
        assert_eq!(r.best, 10);
        assert!(r.in_scope && !r.alarm);
    }

    #[test]
    fn seeded_hunt_keeps_the_star() {
        let p = Balance::two_thirds();
        let params = KneserParams::new(11, 2).unwrap();
        let seed = split_star_witness(params, p).unwrap();
        let r = hunt_multipartite(params, p, 5_000, 0, Some(&seed)).unwrap();
        assert_eq!(r.best, 10);
        assert!(r.in_scope && !r.alarm);
    }
}
