//! Set-system primitives over a ground set `[b] = {1, ..., b}` with `b <= 64`.
//!
//! A [`KSet`] is stored as a bitmask where element `e` occupies bit `e - 1`.
//! For two sets of equal arity the colexicographic order coincides with the
//! numeric order of their masks: the highest differing bit is the largest
//! element of the symmetric difference.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("ground set size {0} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(u32),
    #[error("element {element} is outside the ground set [1, {ground}]")]
    ElementOutOfRange { element: u32, ground: u32 },
    #[error("duplicate element {0}")]
    DuplicateElement(u32),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: u32, right: u32 },
    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },
    #[error("arity {arity} exceeds ground set size {ground}")]
    ArityTooLarge { arity: u32, ground: u32 },
    #[error("rank {rank} out of range (only {count} sets)")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("shadow level {level} exceeds family arity {arity}")]
    ShadowLevel { level: u32, arity: u32 },
    #[error("binomial coefficient C({n}, {k}) does not fit in 63 bits")]
    BinomialOverflow { n: u64, k: u64 },
    #[error("exhaustive search needs {needed} families, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("cannot parse set {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SetError>;

const fn pascal() -> [[u64; 65]; 65] {
    let mut t = [[0u64; 65]; 65];
    let mut n = 0;
    while n <= 64 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static PASCAL: [[u64; 65]; 65] = pascal();

/// `C(n, k)` for `n <= 64`, read from a table. Every entry fits in 63 bits.
#[inline]
pub fn choose(n: u32, k: u32) -> u64 {
    if k > n {
        0
    } else {
        PASCAL[n as usize][k as usize]
    }
}

/// Exact binomial coefficient for arbitrary `n`, refusing values of `2^63` or more.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    if n <= 64 {
        return Ok(choose(n as u32, k as u32));
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral.
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc >= 1u128 << 63 {
            return Err(SetError::BinomialOverflow { n, k });
        }
    }
    Ok(acc as u64)
}

/// A subset of `[ground]`, canonically ordered.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    bits: u64,
    ground: u32,
}

impl KSet {
    pub fn new(ground: u32, elements: &[u32]) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(SetError::GroundTooLarge(ground));
        }
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > ground {
                return Err(SetError::ElementOutOfRange { element: e, ground });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(SetError::DuplicateElement(e));
            }
            bits |= bit;
        }
        Ok(KSet { bits, ground })
    }

    pub fn from_bits(ground: u32, bits: u64) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(SetError::GroundTooLarge(ground));
        }
        if ground < 64 && bits >> ground != 0 {
            let element = 64 - bits.leading_zeros();
            return Err(SetError::ElementOutOfRange { element, ground });
        }
        Ok(KSet { bits, ground })
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(&self) -> u32 {
        self.ground
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.ground && self.bits >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_disjoint(&self, other: &KSet) -> bool {
        self.bits & other.bits == 0
    }

    #[inline]
    pub fn is_subset(&self, other: &KSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        BitIter(self.bits).map(|i| i + 1)
    }

    /// `[ground] - self`.
    pub fn complement(&self) -> KSet {
        KSet { bits: full_mask(self.ground) & !self.bits, ground: self.ground }
    }

    /// The same elements viewed over a different ground set.
    pub fn with_ground(&self, ground: u32) -> Result<KSet> {
        KSet::from_bits(ground, self.bits)
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e)?;
        }
        f.write_str("}")
    }
}

/// Sets compare by ground size, then arity, then colex position.
impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground.cmp(&other.ground).then(self.arity().cmp(&other.arity())).then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parses a comma separated element list such as `1,2,5` (braces optional)
/// into its elements. The ground set is supplied separately.
pub fn parse_elements(s: &str) -> Result<Vec<u32>> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| SetError::Parse(s.to_string()))).collect()
}

impl FromStr for KSet {
    type Err = SetError;

    /// Parses `1,2,5` with the ground set taken as the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let elements = parse_elements(s)?;
        let ground = elements.iter().copied().max().unwrap_or(0);
        KSet::new(ground, &elements)
    }
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[inline]
pub(crate) fn full_mask(ground: u32) -> u64 {
    if ground >= 64 {
        u64::MAX
    } else {
        (1u64 << ground) - 1
    }
}

/// Calls `f` with every `c`-element sub-mask of `mask`.
pub(crate) fn for_each_submask_of_size(mask: u64, c: u32, mut f: impl FnMut(u64)) {
    let positions: Vec<u32> = BitIter(mask).collect();
    let len = positions.len() as u32;
    if c > len {
        return;
    }
    if c == 0 {
        f(0);
        return;
    }
    if c == len {
        f(mask);
        return;
    }
    // Gosper's hack over the compressed index space, then scatter.
    let mut sel: u64 = (1u64 << c) - 1;
    let limit = if len >= 64 { u64::MAX } else { 1u64 << len };
    loop {
        let mut out = 0u64;
        for i in BitIter(sel) {
            out |= 1u64 << positions[i as usize];
        }
        f(out);
        let low = sel & sel.wrapping_neg();
        let ripple = sel.wrapping_add(low);
        if ripple == 0 || ripple >= limit {
            break;
        }
        sel = ripple | (((sel ^ ripple) >> 2) / low);
        if sel >= limit {
            break;
        }
    }
}

/// Compares two sets in colex order: `x < y` when `max(x - y) < max(y - x)`.
pub fn colex_compare(x: &KSet, y: &KSet) -> Result<Ordering> {
    if x.arity() != y.arity() {
        return Err(SetError::ArityMismatch { left: x.arity(), right: y.arity() });
    }
    if x.ground != y.ground {
        return Err(SetError::GroundMismatch { left: x.ground, right: y.ground });
    }
    Ok(x.bits.cmp(&y.bits))
}

/// Position of `x` among all `|x|`-sets in colex order (combinatorial number system).
pub fn colex_rank(x: &KSet) -> u64 {
    rank_bits(x.bits)
}

#[inline]
pub(crate) fn rank_bits(bits: u64) -> u64 {
    BitIter(bits).enumerate().map(|(i, e)| choose(e, i as u32 + 1)).sum()
}

/// Inverse of [`colex_rank`].
pub fn colex_unrank(rank: u64, arity: u32, ground: u32) -> Result<KSet> {
    if ground > MAX_GROUND {
        return Err(SetError::GroundTooLarge(ground));
    }
    if arity > ground {
        return Err(SetError::ArityTooLarge { arity, ground });
    }
    let count = choose(ground, arity);
    if rank >= count {
        return Err(SetError::RankOutOfRange { rank, count });
    }
    Ok(KSet { bits: unrank_bits(rank, arity, ground), ground })
}

#[inline]
pub(crate) fn unrank_bits(mut rank: u64, arity: u32, ground: u32) -> u64 {
    let mut bits = 0u64;
    let mut top = ground;
    for i in (1..=arity).rev() {
        // Largest e < top with C(e, i) <= rank.
        let mut e = top - 1;
        while choose(e, i) > rank {
            e -= 1;
        }
        bits |= 1u64 << e;
        rank -= choose(e, i);
        top = e;
    }
    bits
}

/// A finite family of `arity`-sets over `[ground]`, kept in colex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: u32,
    arity: u32,
    members: BTreeSet<KSet>,
}

impl SetFamily {
    pub fn empty(arity: u32, ground: u32) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(SetError::GroundTooLarge(ground));
        }
        if arity > ground {
            return Err(SetError::ArityTooLarge { arity, ground });
        }
        Ok(SetFamily { ground, arity, members: BTreeSet::new() })
    }

    pub fn from_sets(arity: u32, ground: u32, sets: impl IntoIterator<Item = KSet>) -> Result<Self> {
        let mut family = SetFamily::empty(arity, ground)?;
        for s in sets {
            family.insert(s)?;
        }
        Ok(family)
    }

    /// Adds a member; returns whether it was new.
    pub fn insert(&mut self, set: KSet) -> Result<bool> {
        if set.arity() != self.arity {
            return Err(SetError::ArityMismatch { left: self.arity, right: set.arity() });
        }
        let set = set.with_ground(self.ground)?;
        Ok(self.members.insert(set))
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.members.contains(set)
    }

    /// Members in colex order.
    pub fn iter(&self) -> impl Iterator<Item = &KSet> {
        self.members.iter()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The first `m` sets of arity `arity` over `[ground]` in colex order.
pub fn first_family(m: u64, arity: u32, ground: u32) -> Result<SetFamily> {
    let mut family = SetFamily::empty(arity, ground)?;
    let count = choose(ground, arity);
    if m > count {
        return Err(SetError::RankOutOfRange { rank: m, count });
    }
    for r in 0..m {
        family.members.insert(KSet { bits: unrank_bits(r, arity, ground), ground });
    }
    Ok(family)
}

/// All `level`-sets contained in some member of `family`.
pub fn shadow(family: &SetFamily, level: u32) -> Result<SetFamily> {
    if level > family.arity {
        return Err(SetError::ShadowLevel { level, arity: family.arity });
    }
    let mut out = SetFamily::empty(level, family.ground)?;
    for member in &family.members {
        for_each_submask_of_size(member.bits, level, |bits| {
            out.members.insert(KSet { bits, ground: family.ground });
        });
    }
    Ok(out)
}

/// Replaces every member `x` by `[ground] - x`.
pub fn complement_family(family: &SetFamily) -> SetFamily {
    SetFamily {
        ground: family.ground,
        arity: family.ground - family.arity,
        members: family.members.iter().map(KSet::complement).collect(),
    }
}

/// Size of the `level`-shadow of the first family with `m` members.
pub fn min_shadow_size(m: u64, arity: u32, ground: u32, level: u32) -> Result<u64> {
    if level > arity {
        return Err(SetError::ShadowLevel { level, arity });
    }
    let family = first_family(m, arity, ground)?;
    Ok(shadow(&family, level)?.len() as u64)
}

/// Default number of families [`brute_min_shadow`] may enumerate.
pub const DEFAULT_SHADOW_BUDGET: u64 = 50_000_000;

/// Minimum shadow size over every family of `m` sets, by exhaustive enumeration.
///
/// Refuses with [`SetError::BudgetExceeded`] when `C(C(ground, arity), m)`
/// exceeds `budget`.
pub fn brute_min_shadow(m: u64, arity: u32, ground: u32, level: u32, budget: u64) -> Result<u64> {
    if ground > MAX_GROUND {
        return Err(SetError::GroundTooLarge(ground));
    }
    if arity > ground {
        return Err(SetError::ArityTooLarge { arity, ground });
    }
    if level > arity {
        return Err(SetError::ShadowLevel { level, arity });
    }
    let universe = choose(ground, arity);
    if m > universe {
        return Err(SetError::RankOutOfRange { rank: m, count: universe });
    }
    let needed = binomial(universe, m).map(u128::from).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(SetError::BudgetExceeded { needed, budget });
    }
    if m == 0 {
        return Ok(0);
    }

    // Shadows as bitsets over shadow ranks.
    let words = (choose(ground, level) as usize).div_ceil(64).max(1);
    let shadows: Vec<Vec<u64>> = (0..universe)
        .map(|r| {
            let mut row = vec![0u64; words];
            for_each_submask_of_size(unrank_bits(r, arity, ground), level, |s| {
                let idx = rank_bits(s) as usize;
                row[idx / 64] |= 1u64 << (idx % 64);
            });
            row
        })
        .collect();

    let m = m as usize;
    let mut best = u64::MAX;
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    let mut stack: Vec<Vec<u64>> = vec![vec![0u64; words]];
    search(&shadows, universe as usize, m, 0, &mut chosen, &mut stack, &mut best);
    Ok(best)
}

fn search(
    shadows: &[Vec<u64>],
    universe: usize,
    m: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    stack: &mut Vec<Vec<u64>>,
    best: &mut u64,
) {
    if chosen.len() == m {
        let size: u64 = stack.last().unwrap().iter().map(|w| w.count_ones() as u64).sum();
        *best = (*best).min(size);
        return;
    }
    let remaining = m - chosen.len();
    for i in start..=universe - remaining {
        let next: Vec<u64> = stack.last().unwrap().iter().zip(&shadows[i]).map(|(a, b)| a | b).collect();
        chosen.push(i);
        stack.push(next);
        search(shadows, universe, m, i + 1, chosen, stack, best);
        stack.pop();
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ground: u32, e: &[u32]) -> KSet {
        KSet::new(ground, e).unwrap()
    }

    /// Colex comparison straight from the definition on element lists.
    fn colex_by_definition(x: &KSet, y: &KSet) -> Ordering {
        let xs: Vec<u32> = x.elements().filter(|e| !y.contains(*e)).collect();
        let ys: Vec<u32> = y.elements().filter(|e| !x.contains(*e)).collect();
        match (xs.iter().max(), ys.iter().max()) {
            (None, None) => Ordering::Equal,
            (Some(a), Some(b)) => a.cmp(b),
            _ => unreachable!("equal arity"),
        }
    }

    /// All a-sets over [b] sorted by the definitional comparator.
    fn colex_enumeration(a: u32, b: u32) -> Vec<KSet> {
        let mut all: Vec<KSet> =
            (0u64..1 << b).filter(|m| m.count_ones() == a).map(|m| KSet::from_bits(b, m).unwrap()).collect();
        all.sort_by(colex_by_definition);
        all
    }

    #[test]
    fn compare_examples() {
        assert_eq!(colex_compare(&set(4, &[1, 2]), &set(4, &[1, 3])), Ok(Ordering::Less));
        assert_eq!(colex_compare(&set(4, &[2, 3]), &set(4, &[1, 4])), Ok(Ordering::Less));
        assert_eq!(colex_compare(&set(4, &[1, 4]), &set(4, &[1, 4])), Ok(Ordering::Equal));
        assert!(matches!(colex_compare(&set(4, &[1]), &set(4, &[1, 4])), Err(SetError::ArityMismatch { .. })));
    }

    #[test]
    fn compare_matches_definition() {
        for b in 1..=8 {
            for a in 0..=b {
                let all: Vec<KSet> =
                    (0u64..1 << b).filter(|m| m.count_ones() == a).map(|m| KSet::from_bits(b, m).unwrap()).collect();
                for x in &all {
                    for y in &all {
                        assert_eq!(colex_compare(x, y).unwrap(), colex_by_definition(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(colex_rank(&set(2, &[1, 2])), 0);
        assert_eq!(colex_rank(&set(4, &[2, 3])), 2);
        assert_eq!(colex_unrank(3, 2, 4).unwrap(), set(4, &[1, 4]));
        assert!(matches!(colex_unrank(6, 2, 4), Err(SetError::RankOutOfRange { .. })));
    }

    #[test]
    fn rank_agrees_with_enumeration() {
        for b in 0..=8 {
            for a in 0..=b {
                for (i, s) in colex_enumeration(a, b).iter().enumerate() {
                    assert_eq!(colex_rank(s), i as u64);
                    assert_eq!(colex_unrank(i as u64, a, b).unwrap(), *s);
                }
            }
        }
    }

    #[test]
    fn first_family_examples() {
        let f = first_family(3, 2, 4).unwrap();
        let expected: Vec<KSet> = vec![set(4, &[1, 2]), set(4, &[1, 3]), set(4, &[2, 3])];
        assert_eq!(f.iter().copied().collect::<Vec<_>>(), expected);
        assert!(first_family(0, 2, 5).unwrap().is_empty());
        assert!(first_family(11, 2, 5).is_err());
    }

    #[test]
    fn first_family_prefix_property() {
        for b in 1..=9 {
            for a in 1..=b {
                for i in a..b {
                    let f = first_family(choose(i, a), a, b).unwrap();
                    let expected: BTreeSet<KSet> = (0u64..1 << i)
                        .filter(|m| m.count_ones() == a)
                        .map(|m| KSet::from_bits(b, m).unwrap())
                        .collect();
                    assert_eq!(f.members, expected, "a={a} b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn shadow_examples() {
        let f = SetFamily::from_sets(2, 4, [set(4, &[1, 2]), set(4, &[1, 3])]).unwrap();
        let s = shadow(&f, 1).unwrap();
        assert_eq!(s.iter().copied().collect::<Vec<_>>(), vec![set(4, &[1]), set(4, &[2]), set(4, &[3])]);
        let first = first_family(3, 2, 4).unwrap();
        assert_eq!(shadow(&first, 1).unwrap().len(), 3);
        assert_eq!(shadow(&first, 2).unwrap(), first);
        assert!(matches!(shadow(&first, 3), Err(SetError::ShadowLevel { .. })));
        assert_eq!(shadow(&first, 0).unwrap().len(), 1);
    }

    #[test]
    fn complement_examples() {
        let f = SetFamily::from_sets(2, 5, [set(5, &[1, 2])]).unwrap();
        let c = complement_family(&f);
        assert_eq!(c.arity(), 3);
        assert_eq!(c.iter().copied().collect::<Vec<_>>(), vec![set(5, &[3, 4, 5])]);
        assert_eq!(complement_family(&c), f);
    }

    #[test]
    fn min_shadow_examples() {
        assert_eq!(min_shadow_size(3, 2, 4, 1).unwrap(), 3);
        assert_eq!(min_shadow_size(0, 3, 6, 2).unwrap(), 0);
        assert_eq!(brute_min_shadow(3, 2, 4, 1, DEFAULT_SHADOW_BUDGET).unwrap(), 3);
        for (a, b, c) in [(2, 5, 1), (3, 6, 2), (3, 7, 1), (4, 6, 2)] {
            assert_eq!(brute_min_shadow(1, a, b, c, DEFAULT_SHADOW_BUDGET).unwrap(), choose(a, c));
        }
        assert_eq!(brute_min_shadow(5, 3, 6, 2, DEFAULT_SHADOW_BUDGET).unwrap(), min_shadow_size(5, 3, 6, 2).unwrap());
    }

    #[test]
    fn min_shadow_for_large_families() {
        // First family of size C(n-3, n-k-1) of (n-k-1)-sets over [n-2]
        // covers every (k-1)-set of [n-3].
        for k in 2..=5u32 {
            for n in 2 * k + 1..=14 {
                let m = choose(n - 3, n - k - 1);
                let s = min_shadow_size(m, n - k - 1, n - 2, k - 1).unwrap();
                assert!(s >= choose(n - 3, k - 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn brute_refuses_over_budget() {
        assert!(matches!(brute_min_shadow(10, 3, 10, 2, 1000), Err(SetError::BudgetExceeded { .. })));
    }

    #[test]
    fn binomials() {
        for n in 1..=40u64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k).unwrap() - binomial(n - 1, k - 1).unwrap(), binomial(n - 1, k).unwrap());
            }
        }
        assert_eq!(binomial(100, 2).unwrap(), 4950);
        assert_eq!(binomial(70, 3).unwrap(), 54740);
        assert!(binomial(200, 100).is_err());
        assert_eq!(binomial(3, 5).unwrap(), 0);
    }

    #[test]
    fn submask_enumeration_counts() {
        let mask = 0b1011_0110u64;
        for c in 0..=6 {
            let mut seen = BTreeSet::new();
            for_each_submask_of_size(mask, c, |s| {
                assert_eq!(s & !mask, 0);
                assert_eq!(s.count_ones(), c);
                seen.insert(s);
            });
            assert_eq!(seen.len() as u64, choose(5, c));
        }
        let mut count = 0;
        for_each_submask_of_size(u64::MAX, 2, |_| count += 1);
        assert_eq!(count, choose(64, 2));
    }

    #[test]
    fn parse_and_display() {
        let s: KSet = "1,3,4".parse().unwrap();
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!("{2,5}".parse::<KSet>().unwrap().arity(), 2);
        assert!("1,1".parse::<KSet>().is_err());
        assert!("1,x".parse::<KSet>().is_err());
        assert!(KSet::new(4, &[0]).is_err());
        assert!(KSet::from_bits(3, 0b1000).is_err());
    }
}
