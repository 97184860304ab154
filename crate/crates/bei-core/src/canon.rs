//! Canonical labeling for isomorphism rejection.
//!
//! The canonical form of a graph is the graph6 string of the relabeling
//! that maximizes the column-major upper-triangle adjacency bit string.
//! Two graphs get the same form iff they are isomorphic, and the form is
//! stable across runs and worker threads.
//!
//! The search places vertices position by position. The string is compared
//! column by column, and any remaining vertex may occupy the next position,
//! so an optimal labeling must pick, at every depth, a vertex whose column
//! (its adjacency pattern against the placed prefix) is maximal among the
//! remaining vertices. The search therefore only branches on ties, pruned
//! further by interchangeable-vertex detection and by automorphisms
//! discovered at earlier leaves.

use std::collections::HashSet;
use std::sync::Mutex;

use crate::codec::to_graph6;
use crate::graph::Graph;

/// Canonical graph6 string of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(to_graph6(&canonical_graph(g)))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let n = g.n();
    if n <= 1 {
        return g.clone();
    }
    let mut s = Searcher::new(g);
    s.run_search();
    // best_perm[i] is the vertex placed at position i; relabel it to i
    let mut relabel = vec![0u32; n];
    for i in 0..n {
        relabel[s.best_perm[i] as usize] = i as u32;
    }
    g.permuted(&relabel)
}

/// True iff `g` already carries its canonical labeling, i.e. no relabeling
/// produces a lexicographically larger adjacency string. This is the
/// acceptance test of the orderly generator and exits early on the first
/// beating labeling.
pub fn is_canonically_labeled(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let mut s = Searcher::new(g);
    for j in 0..n {
        let mut col = 0u64;
        for i in 0..j {
            col = col << 1 | g.has_edge(i as u32, j as u32) as u64;
        }
        s.best_cols[j] = col;
        s.best_perm[j] = j as u8;
    }
    s.have_best = true;
    !s.run_fixed(0)
}

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    placed: [u8; 64],
    used: u64,
    /// Running column value per unplaced vertex.
    keys: [u64; 64],
    cols: [u64; 64],
    best_cols: [u64; 64],
    best_perm: [u8; 64],
    have_best: bool,
    version: u64,
    autos: Vec<[u8; 64]>,
}

const MAX_AUTOS: usize = 32;

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher {
            g,
            n: g.n(),
            placed: [0; 64],
            used: 0,
            keys: [0; 64],
            cols: [0; 64],
            best_cols: [0; 64],
            best_perm: [0; 64],
            have_best: false,
            version: 0,
            autos: Vec::new(),
        }
    }

    fn run_search(&mut self) {
        self.descend(0, false);
    }

    /// Candidates for the next position: unplaced vertices whose key is
    /// maximal, collapsed to one representative per known-equivalent orbit.
    fn candidates(&self, depth: usize) -> (u64, Vec<u8>) {
        let full = crate::graph::full_mask(self.n);
        let unplaced = full & !self.used;
        let mut best = 0u64;
        let mut rest = unplaced;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.keys[v] > best {
                best = self.keys[v];
            }
        }
        let mut cands: Vec<u8> = Vec::new();
        let mut rest = unplaced;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.keys[v] == best {
                cands.push(v as u8);
            }
        }
        if cands.len() == 1 {
            return (best, cands);
        }
        // union-find over the tied candidates
        let mut parent: Vec<usize> = (0..cands.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        // interchangeable pairs: swapping u,v is an automorphism
        for (a, &ca) in cands.iter().enumerate() {
            for (b, &cb) in cands.iter().enumerate().skip(a + 1) {
                let (u, v) = (ca as u32, cb as u32);
                let nu = self.g.neighbors(u).mask() & !(1u64 << v);
                let nv = self.g.neighbors(v).mask() & !(1u64 << u);
                if nu == nv {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        // discovered automorphisms that fix the placed prefix pointwise
        for auto in &self.autos {
            if (0..depth).any(|i| auto[self.placed[i] as usize] != self.placed[i]) {
                continue;
            }
            for a in 0..cands.len() {
                let img = auto[cands[a] as usize];
                if let Ok(b) = cands.binary_search(&img) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        let mut reps = Vec::with_capacity(cands.len());
        let mut seen = 0u64;
        for (a, &ca) in cands.iter().enumerate() {
            let r = find(&mut parent, a);
            if seen >> r & 1 == 0 {
                seen |= 1 << r;
                reps.push(ca);
            }
        }
        (best, reps)
    }

    fn place(&mut self, depth: usize, v: u8, saved_keys: &mut [u64; 64]) {
        *saved_keys = self.keys;
        self.placed[depth] = v;
        self.used |= 1u64 << v;
        let full = crate::graph::full_mask(self.n);
        let adj_v = self.g.neighbors(v as u32).mask();
        let mut rest = full & !self.used;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.keys[u] = self.keys[u] << 1 | (adj_v >> u & 1);
        }
    }

    fn unplace(&mut self, v: u8, saved_keys: &[u64; 64]) {
        self.used &= !(1u64 << v);
        self.keys = *saved_keys;
    }

    fn leaf(&mut self, tight: bool) {
        if !self.have_best {
            self.best_cols = self.cols;
            self.best_perm = self.placed;
            self.have_best = true;
            self.version += 1;
            return;
        }
        if tight {
            self.record_automorphism();
            return;
        }
        // the tight flag can be stale after a best replacement elsewhere,
        // so settle the order with a full comparison
        match self.cols[..self.n].cmp(&self.best_cols[..self.n]) {
            std::cmp::Ordering::Greater => {
                self.best_cols = self.cols;
                self.best_perm = self.placed;
                self.version += 1;
            }
            std::cmp::Ordering::Equal => self.record_automorphism(),
            std::cmp::Ordering::Less => {}
        }
    }

    fn record_automorphism(&mut self) {
        if self.autos.len() >= MAX_AUTOS {
            return;
        }
        let mut a = [0u8; 64];
        let mut identity = true;
        for i in 0..self.n {
            a[self.placed[i] as usize] = self.best_perm[i];
            identity &= self.placed[i] == self.best_perm[i];
        }
        if !identity && !self.autos.contains(&a) {
            self.autos.push(a);
        }
    }

    fn descend(&mut self, depth: usize, tight: bool) {
        if depth == self.n {
            self.leaf(tight);
            return;
        }
        let (key, reps) = self.candidates(depth);
        let mut tight = tight;
        if tight {
            if key < self.best_cols[depth] {
                return;
            }
            if key > self.best_cols[depth] {
                tight = false;
            }
        }
        self.cols[depth] = key;
        let mut saved = [0u64; 64];
        for v in reps {
            let before = self.version;
            self.place(depth, v, &mut saved);
            self.descend(depth + 1, tight);
            self.unplace(v, &saved);
            if self.version != before {
                // the new best runs through this node, so the prefix ties it
                tight = true;
            }
        }
    }

    /// Fixed-target mode: returns true as soon as some labeling beats the
    /// target stored in `best_cols` (which is never replaced).
    fn run_fixed(&mut self, depth: usize) -> bool {
        if depth == self.n {
            self.record_automorphism();
            return false;
        }
        let (key, reps) = self.candidates(depth);
        if key > self.best_cols[depth] {
            return true;
        }
        if key < self.best_cols[depth] {
            return false;
        }
        self.cols[depth] = key;
        let mut saved = [0u64; 64];
        for v in reps {
            self.place(depth, v, &mut saved);
            let beaten = self.run_fixed(depth + 1);
            self.unplace(v, &saved);
            if beaten {
                return true;
            }
        }
        false
    }
}

/// Shared set of canonical forms with insert-if-absent semantics. The one
/// stateful object in the crate; safe for concurrent producers, with a
/// deterministic sorted drain for reproducible survivor lists.
#[derive(Default)]
pub struct DedupStore {
    inner: Mutex<HashSet<CanonicalForm>>,
}

impl DedupStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true iff the form was not present yet.
    pub fn insert(&self, form: CanonicalForm) -> bool {
        self.inner.lock().unwrap().insert(form)
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.inner.lock().unwrap().contains(form)
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drain into lexicographic order by form bytes.
    pub fn into_sorted_vec(self) -> Vec<CanonicalForm> {
        let mut v: Vec<CanonicalForm> = self.inner.into_inner().unwrap().into_iter().collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::from_graph6;
    use crate::graph::{Graph, VertexSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
        let mut p: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }

    #[test]
    fn relabelings_of_p3_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn k4_and_c4_differ() {
        assert_ne!(
            canonical_form(&Graph::complete(4).unwrap()),
            canonical_form(&Graph::cycle(4).unwrap())
        );
    }

    #[test]
    fn labeled_graphs_on_4_vertices_fall_into_11_classes() {
        let mut forms = HashSet::new();
        for bits in 0u32..64 {
            let mut edges = Vec::new();
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for (i, &e) in pairs.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    edges.push(e);
                }
            }
            forms.insert(canonical_form(&Graph::from_edges(4, &edges).unwrap()));
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for round in 0..1000 {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let perm = random_perm(&mut rng, n);
            let h = g.permuted(&perm);
            assert_eq!(canonical_form(&g), canonical_form(&h), "round {round}");
        }
    }

    #[test]
    fn canonical_graph_is_isomorphic_to_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let g = random_graph(&mut rng, n, 0.4);
            let c = canonical_graph(&g);
            assert_eq!(c.n(), g.n());
            assert_eq!(c.edge_count(), g.edge_count());
            assert_eq!(canonical_form(&c), canonical_form(&g));
            // idempotent: the canonical graph carries its own max labeling
            assert!(is_canonically_labeled(&c));
        }
    }

    #[test]
    fn max_labeled_test_matches_direct_comparison() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let n = rng.gen_range(2..=8);
            let g = random_graph(&mut rng, n, 0.5);
            let direct = canonical_form(&g).as_str() == crate::codec::to_graph6(&g);
            assert_eq!(is_canonically_labeled(&g), direct, "{g:?}");
        }
    }

    #[test]
    fn handles_highly_symmetric_graphs() {
        // cliques, unions, bipartite shapes: heavy automorphism groups
        for g in [
            Graph::complete(12).unwrap(),
            Graph::cycle(12).unwrap(),
            Graph::from_edges(8, &[(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (3, 7)]).unwrap(),
            Graph::empty(16).unwrap(),
        ] {
            let perm: Vec<u32> = (0..g.n() as u32).rev().collect();
            assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
        }
    }

    #[test]
    fn form_round_trips_through_graph6() {
        let g = Graph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        let form = canonical_form(&g);
        let back = from_graph6(form.as_str()).unwrap();
        assert_eq!(canonical_form(&back), form);
    }

    #[test]
    fn dedup_store_semantics() {
        let store = DedupStore::new();
        let x = canonical_form(&Graph::cycle(5).unwrap());
        assert!(store.insert(x.clone()));
        assert!(!store.insert(x));

        // isomorphic graphs collide
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(store.insert(canonical_form(&g)));
        assert!(!store.insert(canonical_form(&h)));

        // the three blocks on 4 vertices stay distinct
        let store = DedupStore::new();
        let c4 = Graph::cycle(4).unwrap();
        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let k4 = Graph::complete(4).unwrap();
        for b in [&c4, &diamond, &k4] {
            assert!(b.is_block());
            assert!(store.insert(canonical_form(b)));
        }
        assert_eq!(store.len(), 3);
        let sorted = store.into_sorted_vec();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }

    /// Brute-force isomorphism by trying every permutation; the independent
    /// oracle for class counting.
    fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        loop {
            if &a.permuted(&perm) == b {
                return true;
            }
            // next lexicographic permutation
            let mut i = n.wrapping_sub(2);
            while i < n && perm[i] >= perm[i + 1] {
                i = i.wrapping_sub(1);
            }
            if i >= n {
                return false;
            }
            let mut j = n - 1;
            while perm[j] <= perm[i] {
                j -= 1;
            }
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn class_counts_match_pairwise_oracle_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for n in 4..=7 {
            let sample: Vec<Graph> = (0..40).map(|_| random_graph(&mut rng, n, 0.5)).collect();
            // classes by canonical form
            let forms: HashSet<CanonicalForm> = sample.iter().map(canonical_form).collect();
            // classes by the pairwise oracle
            let mut reps: Vec<&Graph> = Vec::new();
            for g in &sample {
                if !reps.iter().any(|r| isomorphic_brute(r, g)) {
                    reps.push(g);
                }
            }
            assert_eq!(forms.len(), reps.len(), "n={n}");
        }
    }

    #[test]
    fn whiskered_blocks_dedup_under_automorphism() {
        // C5 is vertex transitive, so whiskering any single vertex gives
        // isomorphic graphs
        let c5 = Graph::cycle(5).unwrap();
        let forms: HashSet<CanonicalForm> = (0..5)
            .map(|v| canonical_form(&c5.add_whiskers(VertexSet::singleton(v)).unwrap()))
            .collect();
        assert_eq!(forms.len(), 1);
    }
}
