//! Reference counting of maximal matchings by exhaustive enumeration.
//!
//! A matching `M` is counted when it satisfies a [`ConstraintSet`]:
//!
//! * `removed` vertices are deleted together with their incident edges;
//! * `require_covered` / `require_uncovered` vertices must (not) be matched;
//! * `require_edges` must be contained in `M`;
//! * `forbid_edges` must be avoided by `M`, **but still count as addable**
//!   when maximality is judged, so a matching leaving both endpoints of a
//!   forbidden edge uncovered is rejected.
//!
//! Maximality is always relative to the graph minus the removed vertices.
//! The enumerator decides vertices in index order — match the lowest
//! undecided vertex to one of its undecided neighbours or leave it
//! unmatched — so a constraint violation is detected as soon as both
//! endpoints of an edge have been decided, and the search order (hence any
//! visitor-observed sequence) is deterministic.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::polygraph::Graph;
use crate::Count;

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    removed: BTreeSet<usize>,
    require_covered: BTreeSet<usize>,
    require_uncovered: BTreeSet<usize>,
    require_edges: BTreeSet<(usize, usize)>,
    forbid_edges: BTreeSet<(usize, usize)>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn remove(mut self, v: usize) -> Self {
        self.removed.insert(v);
        self
    }

    pub fn cover(mut self, v: usize) -> Self {
        self.require_covered.insert(v);
        self
    }

    pub fn uncover(mut self, v: usize) -> Self {
        self.require_uncovered.insert(v);
        self
    }

    pub fn require_edge(mut self, u: usize, v: usize) -> Self {
        self.require_edges.insert(norm(u, v));
        self
    }

    pub fn forbid_edge(mut self, u: usize, v: usize) -> Self {
        self.forbid_edges.insert(norm(u, v));
        self
    }

    pub fn is_removed(&self, v: usize) -> bool {
        self.removed.contains(&v)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), ConstraintError> {
        let n = g.vertex_count();
        let vertices = self
            .removed
            .iter()
            .chain(&self.require_covered)
            .chain(&self.require_uncovered);
        for &v in vertices {
            if v >= n {
                return Err(ConstraintError::VertexOutOfRange(v));
            }
        }
        for &v in &self.require_covered {
            if self.require_uncovered.contains(&v) || self.removed.contains(&v) {
                return Err(ConstraintError::CoverConflict(v));
            }
        }
        for &v in &self.require_uncovered {
            if self.removed.contains(&v) {
                return Err(ConstraintError::CoverConflict(v));
            }
        }
        for &(u, v) in self.require_edges.iter().chain(&self.forbid_edges) {
            if u >= n || v >= n || !g.has_edge(u, v) {
                return Err(ConstraintError::EdgeNotInGraph(u, v));
            }
        }
        let mut required_end = BTreeSet::new();
        for &(u, v) in &self.require_edges {
            if self.forbid_edges.contains(&(u, v)) {
                return Err(ConstraintError::EdgeConflict(u, v));
            }
            for w in [u, v] {
                if self.removed.contains(&w) || self.require_uncovered.contains(&w) {
                    return Err(ConstraintError::EdgeConflict(u, v));
                }
                if !required_end.insert(w) {
                    return Err(ConstraintError::RequiredEdgesShareVertex(w));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintError {
    VertexOutOfRange(usize),
    EdgeNotInGraph(usize, usize),
    /// A vertex is simultaneously removed/covered/uncovered in an impossible
    /// combination.
    CoverConflict(usize),
    /// A required edge is also forbidden, or touches a removed or
    /// must-be-uncovered vertex.
    EdgeConflict(usize, usize),
    RequiredEdgesShareVertex(usize),
}

impl fmt::Display for ConstraintError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintError::VertexOutOfRange(v) => write!(f, "vertex {} out of range", v),
            ConstraintError::EdgeNotInGraph(u, v) => {
                write!(f, "edge ({}, {}) not in the graph", u, v)
            }
            ConstraintError::CoverConflict(v) => {
                write!(f, "conflicting cover/removal constraints on vertex {}", v)
            }
            ConstraintError::EdgeConflict(u, v) => {
                write!(f, "required edge ({}, {}) conflicts with other constraints", u, v)
            }
            ConstraintError::RequiredEdgesShareVertex(v) => {
                write!(f, "two required edges share vertex {}", v)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Undecided,
    Unmatched,
    Matched(usize),
}

/// Read-only view of one enumerated matching, passed to the visitor.
pub struct Matching<'a> {
    slots: &'a [Slot],
}

impl Matching<'_> {
    pub fn covers(&self, v: usize) -> bool {
        matches!(self.slots[v], Slot::Matched(_))
    }

    pub fn partner_of(&self, v: usize) -> Option<usize> {
        match self.slots[v] {
            Slot::Matched(u) => Some(u),
            _ => None,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slots.iter().enumerate().filter_map(|(v, s)| match *s {
            Slot::Matched(u) if v < u => Some((v, u)),
            _ => None,
        })
    }
}

struct Enumerator<'a, F> {
    g: &'a Graph,
    removed: Vec<bool>,
    req_cover: Vec<bool>,
    req_uncover: Vec<bool>,
    req_partner: Vec<Option<usize>>,
    forbidden: &'a BTreeSet<(usize, usize)>,
    slots: Vec<Slot>,
    count: u64,
    visit: F,
}

impl<F: FnMut(&Matching<'_>)> Enumerator<'_, F> {
    fn recurse(&mut self, from: usize) {
        let n = self.g.vertex_count();
        let mut v = from;
        while v < n && (self.removed[v] || self.slots[v] != Slot::Undecided) {
            v += 1;
        }
        if v == n {
            self.count += 1;
            (self.visit)(&Matching { slots: &self.slots });
            return;
        }

        if let Some(u) = self.req_partner[v] {
            // v was reached before its required partner, so u is still
            // undecided and matching them is the only branch.
            debug_assert_eq!(self.slots[u], Slot::Undecided);
            self.match_pair(v, u);
            return;
        }

        if !self.req_uncover[v] {
            let neighbors: Vec<usize> = self.g.neighbors(v).to_vec();
            for u in neighbors {
                if self.removed[u]
                    || self.slots[u] != Slot::Undecided
                    || self.req_uncover[u]
                    || self.req_partner[u].is_some()
                    || self.forbidden.contains(&norm(v, u))
                {
                    continue;
                }
                self.match_pair(v, u);
            }
        }

        if !self.req_cover[v] {
            // Leaving v unmatched keeps the matching maximal only if no
            // already-unmatched neighbour would make an edge addable.
            let blocked = self
                .g
                .neighbors(v)
                .iter()
                .any(|&u| !self.removed[u] && self.slots[u] == Slot::Unmatched);
            if !blocked {
                self.slots[v] = Slot::Unmatched;
                self.recurse(v + 1);
                self.slots[v] = Slot::Undecided;
            }
        }
    }

    fn match_pair(&mut self, v: usize, u: usize) {
        self.slots[v] = Slot::Matched(u);
        self.slots[u] = Slot::Matched(v);
        self.recurse(v + 1);
        self.slots[v] = Slot::Undecided;
        self.slots[u] = Slot::Undecided;
    }
}

/// Enumerate every matching satisfying `cs`, calling `visit` once per
/// matching, and return how many there were.
///
/// Panics if the constraints do not [`validate`](ConstraintSet::validate)
/// against `g`: constraint sets are built by this crate's own callers, so a
/// bad one is a programming error.
pub fn enumerate_maximal<F: FnMut(&Matching<'_>)>(g: &Graph, cs: &ConstraintSet, visit: F) -> u64 {
    if let Err(e) = cs.validate(g) {
        panic!("invalid constraint set: {}", e);
    }
    let n = g.vertex_count();
    let mut removed = alloc::vec![false; n];
    for &v in &cs.removed {
        removed[v] = true;
    }
    let mut req_cover = alloc::vec![false; n];
    for &v in &cs.require_covered {
        req_cover[v] = true;
    }
    let mut req_uncover = alloc::vec![false; n];
    for &v in &cs.require_uncovered {
        req_uncover[v] = true;
    }
    let mut req_partner = alloc::vec![None; n];
    for &(u, v) in &cs.require_edges {
        req_partner[u] = Some(v);
        req_partner[v] = Some(u);
    }
    let mut e = Enumerator {
        g,
        removed,
        req_cover,
        req_uncover,
        req_partner,
        forbidden: &cs.forbid_edges,
        slots: alloc::vec![Slot::Undecided; n],
        count: 0,
        visit,
    };
    e.recurse(0);
    e.count
}

pub fn count_maximal(g: &Graph, cs: &ConstraintSet) -> Count {
    Count::from(enumerate_maximal(g, cs, |_| {}))
}

/// Brute-force tier used to cross-check the enumerator: filters all `2^|E|`
/// edge subsets. Panics beyond 20 edges.
pub fn naive_count_maximal(g: &Graph, cs: &ConstraintSet) -> Count {
    if let Err(e) = cs.validate(g) {
        panic!("invalid constraint set: {}", e);
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !cs.removed.contains(&u) && !cs.removed.contains(&v))
        .collect();
    assert!(edges.len() <= 20, "naive oracle is limited to 20 edges, got {}", edges.len());

    let n = g.vertex_count();
    let mut count = 0u64;
    'subset: for mask in 0u32..(1 << edges.len()) {
        let mut covered = alloc::vec![false; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if covered[u] || covered[v] {
                    continue 'subset; // not a matching
                }
                covered[u] = true;
                covered[v] = true;
            }
        }
        for (i, &e) in edges.iter().enumerate() {
            let chosen = mask & (1 << i) != 0;
            if chosen && cs.forbid_edges.contains(&e) {
                continue 'subset;
            }
            if !chosen && cs.require_edges.contains(&e) {
                continue 'subset;
            }
            if !chosen && !covered[e.0] && !covered[e.1] {
                continue 'subset; // not maximal
            }
        }
        if cs.require_covered.iter().any(|&v| !covered[v])
            || cs.require_uncovered.iter().any(|&v| covered[v])
        {
            continue 'subset;
        }
        count += 1;
    }
    Count::from(count)
}

/// Is `m` a maximal matching of `g`? Used for spot checks on explicit edge
/// lists.
pub fn is_maximal(g: &Graph, m: &[(usize, usize)]) -> bool {
    let n = g.vertex_count();
    let mut covered = alloc::vec![false; n];
    for &(u, v) in m {
        if u == v || !g.has_edge(u, v) || covered[u] || covered[v] {
            return false;
        }
        covered[u] = true;
        covered[v] = true;
    }
    g.edges().all(|(u, v)| covered[u] || covered[v])
}

/// The nine matching counts attached to a marked edge `(x, y)`, in the order
/// used throughout the transfer machinery: no condition; `x` removed; `y`
/// removed; both removed; both covered; `x` removed and `y` covered; `y`
/// removed and `x` covered; `x` covered; `y` covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMVector(pub [Count; 9]);

impl MMVector {
    pub fn zero() -> Self {
        MMVector(core::array::from_fn(|_| Count::from(0u32)))
    }

    /// The unconditioned count (first component).
    pub fn psi(&self) -> &Count {
        &self.0[0]
    }
}

impl fmt::Display for MMVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Compute the full nine-component vector at the marked edge `(x, y)`.
pub fn mm_vector(g: &Graph, x: usize, y: usize) -> MMVector {
    assert!(g.has_edge(x, y), "mm_vector requires a marked edge, ({}, {}) is not one", x, y);
    let conds = [
        ConstraintSet::new(),
        ConstraintSet::new().remove(x),
        ConstraintSet::new().remove(y),
        ConstraintSet::new().remove(x).remove(y),
        ConstraintSet::new().cover(x).cover(y),
        ConstraintSet::new().remove(x).cover(y),
        ConstraintSet::new().remove(y).cover(x),
        ConstraintSet::new().cover(x),
        ConstraintSet::new().cover(y),
    ];
    MMVector(conds.map(|cs| count_maximal(g, &cs)))
}
