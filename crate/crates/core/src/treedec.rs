//! Tree decompositions: data model, validation, normalization and the explicit
//! constructions for Kneser graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;
use crate::kneser::{self, KneserGraph, Regime};
use crate::setsys::{self, KSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdError {
    #[error("decomposition has no bags")]
    Empty,
    #[error("input decomposition is invalid: {}", .0.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(Vec<Violation>),
    #[error("vertices {0} and {1} are adjacent, so the set is not independent")]
    NotIndependent(usize, usize),
    #[error("construction needs k >= 2 and n >= 2k+1, got n={n} k={k}")]
    Params { n: u32, k: u32 },
    #[error("{0} is not a vertex of this Kneser graph")]
    NotAVertex(KSet),
    #[error("W member {0} contains element 1")]
    WMeetsStar(KSet),
    #[error("W members {0} and {1} are disjoint")]
    WNotIndependent(KSet, KSet),
    #[error("W members {a} and {b} share the neighbour {x} inside the star of 1")]
    CommonNeighbor { a: KSet, b: KSet, x: KSet },
}

/// One reason a decomposition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoBags,
    /// Bags are sized for a different vertex count.
    HostMismatch {
        expected: usize,
        found: usize,
    },
    EdgeOutOfRange {
        a: usize,
        b: usize,
    },
    /// The tree edges do not form a spanning tree of the nodes.
    NotATree {
        nodes: usize,
        edges: usize,
        components: usize,
    },
    UncoveredVertex(usize),
    /// The nodes holding `vertex` split into `pieces` subtrees.
    DisconnectedVertex {
        vertex: usize,
        pieces: usize,
    },
    UncoveredEdge(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoBags => write!(f, "no bags"),
            Violation::HostMismatch { expected, found } => {
                write!(f, "bags index {found} vertices but the graph has {expected}")
            }
            Violation::EdgeOutOfRange { a, b } => write!(f, "tree edge {} {} names a missing bag", a + 1, b + 1),
            Violation::NotATree { nodes, edges, components } => {
                write!(f, "not a tree: {nodes} nodes, {edges} edges, {components} components")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {} is in no bag", v + 1),
            Violation::DisconnectedVertex { vertex, pieces } => {
                write!(f, "bags containing vertex {} form {pieces} subtrees", vertex + 1)
            }
            Violation::UncoveredEdge(u, v) => write!(f, "edge {} {} is in no bag", u + 1, v + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid { width: usize },
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

/// A tree with one bag of host vertices per node. Nodes are `0..num_bags()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    num_vertices: usize,
    bags: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(num_vertices: usize) -> Self {
        TreeDecomposition { num_vertices, bags: Vec::new(), edges: Vec::new() }
    }

    /// The decomposition with a single bag holding every vertex.
    pub fn trivial(num_vertices: usize) -> Self {
        let mut td = Self::new(num_vertices);
        td.add_bag(0..num_vertices);
        td
    }

    /// Adds a bag and returns its node index. Vertices must be `< num_vertices`.
    pub fn add_bag(&mut self, vertices: impl IntoIterator<Item = usize>) -> usize {
        let mut bag = FixedBitSet::with_capacity(self.num_vertices);
        for v in vertices {
            bag.insert(v);
        }
        self.push_bag(bag)
    }

    pub fn push_bag(&mut self, mut bag: FixedBitSet) -> usize {
        bag.grow(self.num_vertices);
        self.bags.push(bag);
        self.bags.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[FixedBitSet] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &FixedBitSet {
        &self.bags[node]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(|b| b.count_ones(..)).max().unwrap_or(0)
    }

    /// Largest bag size minus one. A decomposition whose bags are all empty has width 0.
    pub fn width(&self) -> Result<usize, TdError> {
        if self.bags.is_empty() {
            return Err(TdError::Empty);
        }
        Ok(self.max_bag_size().saturating_sub(1))
    }

    /// Removes node `node` along with its incident tree edges; later nodes shift down.
    pub fn remove_bag(&mut self, node: usize) {
        self.bags.remove(node);
        self.edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != node && b != node)
            .map(|&(a, b)| (a - (a > node) as usize, b - (b > node) as usize))
            .collect();
    }
}

pub fn width(td: &TreeDecomposition) -> Result<usize, TdError> {
    td.width()
}

/// Number of connected components of the forest `(0..nodes, edges)`, or `None`
/// when an edge is out of range.
fn tree_components(nodes: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut comps = nodes;
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return None;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    Some(comps)
}

/// Checks tree shape, vertex coverage, subtree connectivity and edge coverage.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Verdict {
    let mut violations = Vec::new();
    let n = g.order();
    if td.bags.is_empty() {
        return Verdict::Invalid(vec![Violation::NoBags]);
    }
    if td.num_vertices != n {
        return Verdict::Invalid(vec![Violation::HostMismatch { expected: n, found: td.num_vertices }]);
    }
    let nodes = td.bags.len();
    let mut is_tree = true;
    for &(a, b) in &td.edges {
        if a >= nodes || b >= nodes {
            violations.push(Violation::EdgeOutOfRange { a, b });
            is_tree = false;
        }
    }
    if is_tree {
        let components = tree_components(nodes, &td.edges).expect("checked range");
        if components != 1 || td.edges.len() != nodes - 1 {
            violations.push(Violation::NotATree { nodes, edges: td.edges.len(), components });
            is_tree = false;
        }
    }

    // In a tree, the nodes holding v induce a forest whose number of pieces is
    // (#nodes holding v) - (#tree edges with v on both ends).
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in td.bags.iter().enumerate() {
        for v in bag.ones() {
            occurrences[v].push(node);
        }
    }
    let mut internal = vec![0usize; n];
    if is_tree {
        for &(a, b) in &td.edges {
            for v in td.bags[a].intersection(&td.bags[b]) {
                internal[v] += 1;
            }
        }
    }
    for v in 0..n {
        let count = occurrences[v].len();
        if count == 0 {
            violations.push(Violation::UncoveredVertex(v));
        } else if is_tree && count - internal[v] > 1 {
            violations.push(Violation::DisconnectedVertex { vertex: v, pieces: count - internal[v] });
        }
    }
    for (u, v) in g.edges() {
        let (probe, other) = if occurrences[u].len() <= occurrences[v].len() { (u, v) } else { (v, u) };
        if !occurrences[probe].iter().any(|&node| td.bags[node].contains(other)) {
            violations.push(Violation::UncoveredEdge(u, v));
        }
    }
    if violations.is_empty() {
        Verdict::Valid { width: td.width().expect("non-empty") }
    } else {
        Verdict::Invalid(violations)
    }
}

fn require_valid(g: &Graph, td: &TreeDecomposition) -> Result<(), TdError> {
    match validate(g, td) {
        Verdict::Valid { .. } => Ok(()),
        Verdict::Invalid(v) => Err(TdError::Invalid(v)),
    }
}

/// Contracts tree edges whose bags are nested until no bag is a subset of a
/// neighbouring bag. Returns the input unchanged when nothing is nested.
pub fn normalize(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition, TdError> {
    require_valid(g, td)?;
    let nodes = td.bags.len();
    let mut bags: Vec<Option<FixedBitSet>> = td.bags.iter().cloned().map(Some).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes];
    for &(a, b) in &td.edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut queue: VecDeque<(usize, usize)> = td.edges.iter().copied().collect();
    let mut contracted = false;
    while let Some((a, b)) = queue.pop_front() {
        if bags[a].is_none() || bags[b].is_none() || !adj[a].contains(&b) {
            continue;
        }
        let (gone, keep) = {
            let (ba, bb) = (bags[a].as_ref().unwrap(), bags[b].as_ref().unwrap());
            if ba.is_subset(bb) {
                (a, b)
            } else if bb.is_subset(ba) {
                (b, a)
            } else {
                continue;
            }
        };
        contracted = true;
        bags[gone] = None;
        let moved: Vec<usize> = std::mem::take(&mut adj[gone]).into_iter().collect();
        adj[keep].remove(&gone);
        for nb in moved {
            if nb == keep {
                continue;
            }
            adj[nb].remove(&gone);
            adj[nb].insert(keep);
            adj[keep].insert(nb);
            queue.push_back((keep, nb));
        }
    }
    if !contracted {
        return Ok(td.clone());
    }
    let mut index = vec![usize::MAX; nodes];
    let mut out = TreeDecomposition::new(td.num_vertices);
    for (old, bag) in bags.iter().enumerate() {
        if let Some(bag) = bag {
            index[old] = out.push_bag(bag.clone());
        }
    }
    for (a, nbs) in adj.iter().enumerate() {
        if bags[a].is_none() {
            continue;
        }
        for &b in nbs.range(a + 1..) {
            out.add_edge(index[a], index[b]);
        }
    }
    Ok(out)
}

/// Star-shaped decomposition around an independent set `independent`: a
/// central bag `V - I` and one leaf bag `N(x) + x` per `x` in `I`.
pub fn star_decomposition(h: &Graph, independent: &FixedBitSet) -> Result<TreeDecomposition, TdError> {
    let n = h.order();
    for x in independent.ones() {
        if x >= n {
            return Err(TdError::NotIndependent(x, x));
        }
        if let Some(&y) = h.neighbors(x).iter().find(|&&y| independent.contains(y)) {
            return Err(TdError::NotIndependent(x, y));
        }
    }
    let mut td = TreeDecomposition::new(n);
    let center = td.add_bag((0..n).filter(|&v| !independent.contains(v)));
    for x in independent.ones() {
        let leaf = td.add_bag(h.neighbors(x).iter().copied().chain([x]));
        td.add_edge(center, leaf);
    }
    Ok(td)
}

fn require_general(g: &KneserGraph) -> Result<(), TdError> {
    let p = g.params();
    if p.regime() != Regime::General {
        return Err(TdError::Params { n: p.n, k: p.k });
    }
    Ok(())
}

/// The star decomposition of `K(n, k)` around the star of element 1.
/// Its width is `C(n-1, k) - 1`.
pub fn kneser_upper_decomposition(g: &KneserGraph) -> Result<TreeDecomposition, TdError> {
    require_general(g)?;
    let star = kneser::star_family(1, g.params()).expect("1 is in the ground set");
    star_decomposition(g.graph(), &g.vertex_set(&star))
}

/// `{2, ..., k+1}` and `{k+1, ..., 2k}`; they share `k+1`.
pub fn default_w(k: u32, n: u32) -> Result<Vec<KSet>, TdError> {
    let first: Vec<u32> = (2..=k + 1).collect();
    let second: Vec<u32> = (k + 1..=2 * k).collect();
    match (KSet::new(n, &first), KSet::new(n, &second)) {
        (Ok(a), Ok(b)) if k >= 2 => Ok(vec![a, b]),
        _ => Err(TdError::Params { n, k }),
    }
}

/// Checks that `w` is an independent set of k-sets avoiding element 1 in which
/// no two members have a common neighbour containing 1.
pub fn check_w(n: u32, k: u32, w: &[KSet]) -> Result<(), TdError> {
    for s in w {
        if s.arity() != k || s.ground() != n {
            return Err(TdError::NotAVertex(*s));
        }
        if s.contains(1) {
            return Err(TdError::WMeetsStar(*s));
        }
    }
    let one = 1u64;
    let rest = setsys::full_mask(n) & !one;
    for (i, a) in w.iter().enumerate() {
        for b in &w[i + 1..] {
            if a == b {
                continue;
            }
            if a.is_disjoint(b) {
                return Err(TdError::WNotIndependent(*a, *b));
            }
            // A common neighbour is {1} plus k-1 elements avoiding a and b.
            let free = rest & !a.bits() & !b.bits();
            if free.count_ones() >= k - 1 {
                let mut pick = 0u64;
                for i in setsys::BitIter(free).take(k as usize - 1) {
                    pick |= 1u64 << i;
                }
                let x = KSet::from_bits(n, pick | one).expect("inside ground set");
                return Err(TdError::CommonNeighbor { a: *a, b: *b, x });
            }
        }
    }
    Ok(())
}

/// The refined decomposition built from the star `X` of element 1 and a set
/// `W` (default [`default_w`]); see [`check_w`] for the requirements on `W`.
///
/// Root bag `V - W - X`. Each `w` in `W` gets a child whose bag is `w`, the
/// neighbours of `w` outside `X`, and the neighbours of every `x` in
/// `N(w) ∩ X`; those `x` hang below it with bag `N(x) + x`. Every other `x`
/// hangs below the root with the same kind of bag.
pub fn improved_decomposition(g: &KneserGraph, w: Option<&[KSet]>) -> Result<TreeDecomposition, TdError> {
    require_general(g)?;
    let params = g.params();
    let default;
    let w = match w {
        Some(w) => w,
        None => {
            default = default_w(params.k, params.n)?;
            &default
        }
    };
    check_w(params.n, params.k, w)?;
    let mut w_ids: Vec<usize> = w.iter().map(|s| g.index_of(s).expect("checked vertex")).collect();
    w_ids.dedup();
    let graph = g.graph();
    let n = graph.order();
    let in_x = |v: usize| g.vertex(v).contains(1);
    let in_w = crate::graph::vertex_set(n, w_ids.iter().copied());

    let mut td = TreeDecomposition::new(n);
    let root = td.add_bag((0..n).filter(|&v| !in_x(v) && !in_w.contains(v)));
    let x_bag = |x: usize| graph.neighbors(x).iter().copied().chain([x]);
    let mut claimed = FixedBitSet::with_capacity(n);
    for &wv in &w_ids {
        let xs: Vec<usize> = graph.neighbors(wv).iter().copied().filter(|&u| in_x(u)).collect();
        let mut bag = FixedBitSet::with_capacity(n);
        bag.insert(wv);
        bag.extend(graph.neighbors(wv).iter().copied().filter(|&u| !in_x(u)));
        for &x in &xs {
            bag.extend(graph.neighbors(x).iter().copied());
        }
        let w_node = td.push_bag(bag);
        td.add_edge(root, w_node);
        for x in xs {
            claimed.insert(x);
            let node = td.add_bag(x_bag(x));
            td.add_edge(w_node, node);
        }
    }
    for x in (0..n).filter(|&v| in_x(v) && !claimed.contains(v)) {
        let node = td.add_bag(x_bag(x));
        td.add_edge(root, node);
    }
    Ok(td)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_set;
    use crate::kneser::{build, KneserParams};
    use crate::setsys::choose;

    fn kneser(n: u32, k: u32) -> KneserGraph {
        build(KneserParams::new(n, k).unwrap()).unwrap()
    }

    fn path_decomposition(n: usize) -> TreeDecomposition {
        let mut td = TreeDecomposition::new(n);
        for i in 1..n {
            td.add_bag([i - 1, i]);
            if i > 1 {
                td.add_edge(i - 2, i - 1);
            }
        }
        td
    }

    #[test]
    fn trivial_decomposition_is_valid() {
        let g = kneser(5, 2);
        let td = TreeDecomposition::trivial(10);
        assert_eq!(validate(g.graph(), &td), Verdict::Valid { width: 9 });
    }

    #[test]
    fn widths() {
        let mut td = TreeDecomposition::new(6);
        td.add_bag([0, 1, 2]);
        td.add_bag([3, 4, 5]);
        assert_eq!(td.width(), Ok(2));
        assert_eq!(TreeDecomposition::new(3).width(), Err(TdError::Empty));
        assert_eq!(TreeDecomposition::trivial(0).width(), Ok(0));
    }

    #[test]
    fn detects_each_violation() {
        let g = Graph::path(4);
        let good = path_decomposition(4);
        assert!(validate(&g, &good).is_valid());

        let mut missing_leaf = good.clone();
        missing_leaf.remove_bag(2);
        let Verdict::Invalid(v) = validate(&g, &missing_leaf) else { panic!() };
        assert!(v.contains(&Violation::UncoveredVertex(3)));
        assert!(v.contains(&Violation::UncoveredEdge(2, 3)));

        let mut cycle = good.clone();
        cycle.add_edge(0, 2);
        let Verdict::Invalid(v) = validate(&g, &cycle) else { panic!() };
        assert!(matches!(v[0], Violation::NotATree { edges: 3, .. }));

        let mut split = TreeDecomposition::new(4);
        split.add_bag([0, 1]);
        split.add_bag([2, 3]);
        split.add_bag([1, 2]);
        split.add_edge(0, 1);
        split.add_edge(1, 2);
        let Verdict::Invalid(v) = validate(&g, &split) else { panic!() };
        assert_eq!(v, vec![Violation::DisconnectedVertex { vertex: 1, pieces: 2 }]);

        let mut bad_edge = good.clone();
        bad_edge.add_edge(0, 7);
        let Verdict::Invalid(v) = validate(&g, &bad_edge) else { panic!() };
        assert_eq!(v[0], Violation::EdgeOutOfRange { a: 0, b: 7 });

        assert_eq!(validate(&g, &TreeDecomposition::new(4)), Verdict::Invalid(vec![Violation::NoBags]));
        assert!(matches!(
            validate(&g, &TreeDecomposition::trivial(5)),
            Verdict::Invalid(ref v) if v == &vec![Violation::HostMismatch { expected: 4, found: 5 }]
        ));
    }

    #[test]
    fn normalize_contracts_duplicates_and_chains() {
        let g = Graph::path(3);
        let mut dup = TreeDecomposition::new(3);
        dup.add_bag([0, 1]);
        dup.add_bag([0, 1]);
        dup.add_bag([1, 2]);
        dup.add_edge(0, 1);
        dup.add_edge(1, 2);
        let out = normalize(&g, &dup).unwrap();
        assert_eq!(out.num_bags(), 2);
        assert!(validate(&g, &out).is_valid());

        let mut chain = TreeDecomposition::new(3);
        chain.add_bag([0]);
        chain.add_bag([0, 1]);
        chain.add_bag([0, 1, 2]);
        chain.add_edge(0, 1);
        chain.add_edge(1, 2);
        let out = normalize(&g, &chain).unwrap();
        assert_eq!(out.num_bags(), 1);
        assert_eq!(out.bag(0).ones().collect::<Vec<_>>(), vec![0, 1, 2]);

        let already = path_decomposition(5);
        assert_eq!(normalize(&Graph::path(5), &already).unwrap(), already);

        let mut broken = already.clone();
        broken.remove_bag(0);
        assert!(matches!(normalize(&Graph::path(5), &broken), Err(TdError::Invalid(_))));
    }

    #[test]
    fn normalize_then_no_nested_neighbours() {
        let g = kneser(6, 2);
        let td = kneser_upper_decomposition(&g).unwrap();
        // Pad with nested copies hanging off every node.
        let mut padded = td.clone();
        for node in 0..td.num_bags() {
            let sub: Vec<usize> = td.bag(node).ones().take(2).collect();
            let extra = padded.add_bag(sub);
            padded.add_edge(node, extra);
        }
        assert!(validate(g.graph(), &padded).is_valid());
        let out = normalize(g.graph(), &padded).unwrap();
        assert_eq!(out.num_bags(), td.num_bags());
        for &(a, b) in out.edges() {
            assert!(!out.bag(a).is_subset(out.bag(b)) && !out.bag(b).is_subset(out.bag(a)));
        }
        assert_eq!(normalize(g.graph(), &out).unwrap(), out);
    }

    #[test]
    fn star_decomposition_examples() {
        let pet = kneser(5, 2);
        // {1,2},{1,3},{1,4},{1,5} is a maximum independent set of the Petersen graph.
        let star = kneser::star_family(1, pet.params()).unwrap();
        let td = star_decomposition(pet.graph(), &pet.vertex_set(&star)).unwrap();
        assert_eq!(validate(pet.graph(), &td), Verdict::Valid { width: 5 });
        assert_eq!(td.num_bags(), 5);

        let td = star_decomposition(pet.graph(), &FixedBitSet::with_capacity(10)).unwrap();
        assert_eq!(td.num_bags(), 1);
        assert_eq!(td.width(), Ok(9));

        let g6 = kneser(6, 2);
        let star = kneser::star_family(1, g6.params()).unwrap();
        let td = star_decomposition(g6.graph(), &g6.vertex_set(&star)).unwrap();
        assert_eq!(td.bag(0).count_ones(..), 10);
        assert!((1..td.num_bags()).all(|i| td.bag(i).count_ones(..) == 7));
        assert_eq!(td.width(), Ok(9));

        let (u, v) = g6.graph().edges().next().unwrap();
        assert_eq!(star_decomposition(g6.graph(), &vertex_set(15, [u, v])), Err(TdError::NotIndependent(u, v)));
    }

    #[test]
    fn upper_decomposition_widths() {
        assert_eq!(kneser_upper_decomposition(&kneser(6, 2)).unwrap().width(), Ok(9));
        let g = kneser(7, 3);
        let td = kneser_upper_decomposition(&g).unwrap();
        assert!(validate(g.graph(), &td).is_valid());
        assert_eq!(td.width(), Ok(19));
        assert_eq!(kneser_upper_decomposition(&kneser(5, 2)).unwrap().width(), Ok(5));
        assert!(matches!(kneser_upper_decomposition(&kneser(4, 2)), Err(TdError::Params { .. })));
        assert!(matches!(kneser_upper_decomposition(&kneser(5, 1)), Err(TdError::Params { .. })));
    }

    #[test]
    fn improved_decomposition_at_seven_three() {
        let g = kneser(7, 3);
        let td = improved_decomposition(&g, None).unwrap();
        let Verdict::Valid { width } = validate(g.graph(), &td) else { panic!("invalid") };
        assert!(width < 19, "width {width}");
        assert_eq!(td.bag(0).count_ones(..) as u64, choose(7, 3) - choose(6, 2) - 2);
    }

    #[test]
    fn improved_decomposition_rejects_common_neighbours() {
        let g = kneser(8, 3);
        match improved_decomposition(&g, None) {
            Err(TdError::CommonNeighbor { a, b, x }) => {
                assert!(x.contains(1) && x.is_disjoint(&a) && x.is_disjoint(&b));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn improved_decomposition_checks_w() {
        let g = kneser(7, 3);
        let s = |e: &[u32]| KSet::new(7, e).unwrap();
        assert_eq!(improved_decomposition(&g, Some(&[s(&[1, 2, 3])])), Err(TdError::WMeetsStar(s(&[1, 2, 3]))));
        assert!(matches!(
            improved_decomposition(&g, Some(&[s(&[2, 3, 4]), s(&[5, 6, 7])])),
            Err(TdError::WNotIndependent(..))
        ));
        assert!(matches!(
            improved_decomposition(&g, Some(&[KSet::new(7, &[2, 3]).unwrap()])),
            Err(TdError::NotAVertex(_))
        ));
        let single = improved_decomposition(&g, Some(&[s(&[2, 3, 4])])).unwrap();
        assert!(validate(g.graph(), &single).is_valid());
        let empty = improved_decomposition(&g, Some(&[])).unwrap();
        assert!(validate(g.graph(), &empty).is_valid());
        assert_eq!(empty.width(), Ok(19));
    }
}
