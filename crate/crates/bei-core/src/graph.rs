//! Small simple graphs on at most 64 vertices, stored as one adjacency
//! bit mask per vertex. All operations are pure; derived graphs are fresh
//! values. This is the innermost layer of the whole crate, so the
//! connectivity primitives are written directly on the masks.

use crate::error::{Error, Result};

/// Hard capacity: one machine word of adjacency bits per vertex.
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices `0..n` of some graph, as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices(vs: &[u32]) -> Self {
        let mut m = 0u64;
        for &v in vs {
            m |= 1u64 << v;
        }
        VertexSet(m)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn with(self, v: u32) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: u32) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterate members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros();
                m &= m - 1;
                Some(v)
            }
        })
    }

    /// Members as a sorted 1-based list, the convention for all reports.
    pub fn to_sorted_1based(self) -> Vec<u32> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An undirected simple graph on vertices `0..n`, `n <= 64`.
///
/// Invariants kept by every constructor: adjacency is symmetric, there are
/// no loops, and every mask uses only bits `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                got: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Build from an edge list (0-based endpoints). Duplicate edges are
    /// accepted and collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: u32, v: u32) -> Result<()> {
        if u == v {
            return Err(Error::Invalid(format!("loop at vertex {u}")));
        }
        if u as usize >= self.n || v as usize >= self.n {
            return Err(Error::Invalid(format!(
                "edge ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        self.adj[u as usize] |= 1u64 << v;
        self.adj[v as usize] |= 1u64 << u;
        Ok(())
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let full = full_mask(n);
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v - 1, v)).collect();
        if n > 2 {
            edges.push((n as u32 - 1, 0));
        }
        Graph::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet(full_mask(self.n))
    }

    /// Open neighborhood N(v).
    #[inline]
    pub fn neighbors(&self, v: u32) -> VertexSet {
        VertexSet(self.adj[v as usize])
    }

    /// Closed neighborhood N[v].
    #[inline]
    pub fn closed_neighbors(&self, v: u32) -> VertexSet {
        VertexSet(self.adj[v as usize] | 1u64 << v)
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].count_ones()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as sorted 0-based pairs (u < v).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            // neighbors above u only
            let mut m = self.adj[u as usize] & !((1u64 << u) | ((1u64 << u) - 1));
            while m != 0 {
                let v = m.trailing_zeros();
                m &= m - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// In-place edge toggles for the generator's scratch graph; the public
    /// surface stays immutable.
    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: u32, v: u32) {
        self.adj[u as usize] |= 1u64 << v;
        self.adj[v as usize] |= 1u64 << u;
    }

    #[inline]
    pub(crate) fn remove_edge_unchecked(&mut self, u: u32, v: u32) {
        self.adj[u as usize] &= !(1u64 << v);
        self.adj[v as usize] &= !(1u64 << u);
    }

    /// The relabeled graph with edge (perm[u], perm[v]) for every edge (u, v).
    pub fn permuted(&self, perm: &[u32]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for u in 0..self.n {
            let pu = perm[u] as usize;
            let mut m = self.adj[u];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                g.adj[pu] |= 1u64 << perm[v];
            }
        }
        g
    }

    /// Number of connected components of the subgraph induced on `within`.
    pub fn component_count_within(&self, within: VertexSet) -> u32 {
        let mut alive = within.mask() & full_mask(self.n);
        let mut count = 0;
        while alive != 0 {
            count += 1;
            let seed = alive & alive.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut reach = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    reach |= self.adj[v];
                }
                frontier = reach & alive & !comp;
                comp |= frontier;
            }
            alive &= !comp;
        }
        count
    }

    /// c_G(S): the number of connected components of G \ removed.
    #[inline]
    pub fn component_count(&self, removed: VertexSet) -> u32 {
        self.component_count_within(self.vertices().minus(removed))
    }

    /// Component partition of G \ removed, ordered by smallest member.
    pub fn components(&self, removed: VertexSet) -> Vec<VertexSet> {
        let mut alive = full_mask(self.n) & !removed.mask();
        let mut out = Vec::new();
        while alive != 0 {
            let seed = alive & alive.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let mut reach = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    reach |= self.adj[v];
                }
                frontier = reach & alive & !comp;
                comp |= frontier;
            }
            out.push(VertexSet(comp));
            alive &= !comp;
        }
        out
    }

    #[inline]
    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        within.is_empty() || self.component_count_within(within) == 1
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count(VertexSet::EMPTY) == 1
    }

    /// All v with c_G({v}) > c_G(EMPTY), i.e. the articulation points,
    /// taken per component.
    pub fn cut_vertices(&self) -> VertexSet {
        let base = self.component_count(VertexSet::EMPTY);
        let mut out = 0u64;
        for v in 0..self.n as u32 {
            if self.component_count(VertexSet::singleton(v)) > base {
                out |= 1u64 << v;
            }
        }
        VertexSet(out)
    }

    /// Connected and without cut vertices. A single vertex and a single
    /// edge both count as blocks; the empty graph does not.
    pub fn is_block(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        let full = self.vertices();
        (0..self.n as u32).all(|v| self.is_connected_within(full.without(v)))
    }

    /// Block test for the subgraph induced on `within`.
    pub fn is_block_within(&self, within: VertexSet) -> bool {
        if within.is_empty() || !self.is_connected_within(within) {
            return false;
        }
        if within.len() <= 2 {
            return true;
        }
        within
            .iter()
            .all(|v| self.is_connected_within(within.without(v)))
    }

    /// Is the subgraph induced on `within` complete?
    pub fn is_complete_within(&self, within: VertexSet) -> bool {
        within
            .iter()
            .all(|v| self.adj[v as usize] & within.mask() == within.without(v).mask())
    }

    /// G_v: the neighborhood of v completed to a clique.
    pub fn saturate(&self, v: u32) -> Graph {
        let nv = self.adj[v as usize];
        let mut g = self.clone();
        let mut m = nv;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            g.adj[w] |= nv & !(1u64 << w);
        }
        g
    }

    /// True iff N(v) induces a clique; then N[v] is the unique maximal
    /// clique containing v.
    pub fn is_free_vertex(&self, v: u32) -> bool {
        let nv = self.adj[v as usize];
        let mut m = nv;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if nv & !(1u64 << w) & !self.adj[w] != 0 {
                return false;
            }
        }
        true
    }

    /// All free vertices of the graph.
    pub fn free_vertices(&self) -> VertexSet {
        let mut out = 0u64;
        for v in 0..self.n as u32 {
            if self.is_free_vertex(v) {
                out |= 1u64 << v;
            }
        }
        VertexSet(out)
    }

    /// Delete a vertex set, compressing labels. Returns the new graph and
    /// the mapping new index -> old index.
    pub fn delete_vertices(&self, removed: VertexSet) -> (Graph, Vec<u32>) {
        let keep: Vec<u32> = self.vertices().minus(removed).iter().collect();
        let mut pos = [u32::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut g = Graph {
            n: keep.len(),
            adj: vec![0; keep.len()],
        };
        for (i, &v) in keep.iter().enumerate() {
            let mut m = self.adj[v as usize] & !removed.mask();
            while m != 0 {
                let w = m.trailing_zeros();
                m &= m - 1;
                g.adj[i] |= 1u64 << pos[w as usize];
            }
        }
        (g, keep)
    }

    /// Attach a pendant leaf to every vertex of `s`: the i-th whiskered
    /// vertex in ascending order gains the leaf n + i. Rejects a base graph
    /// that is not a block or an empty `s`.
    pub fn add_whiskers(&self, s: VertexSet) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::Invalid("whisker set must be nonempty".into()));
        }
        if !s.is_subset_of(self.vertices()) {
            return Err(Error::Invalid("whisker set out of range".into()));
        }
        if !self.is_block() {
            return Err(Error::Invalid(
                "whiskers can only be attached to a block".into(),
            ));
        }
        let k = s.len() as usize;
        let n = self.n;
        if n + k > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                got: n + k,
                limit: MAX_VERTICES,
            });
        }
        let mut g = Graph {
            n: n + k,
            adj: vec![0; n + k],
        };
        g.adj[..n].copy_from_slice(&self.adj);
        for (i, v) in s.iter().enumerate() {
            let leaf = (n + i) as u32;
            g.adj[v as usize] |= 1u64 << leaf;
            g.adj[leaf as usize] |= 1u64 << v;
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
