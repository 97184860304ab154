//! The predicate ladder on a graph G: unmixedness of the binomial edge
//! ideal, accessibility of the cut-set system, good cut vertices (v such
//! that the ideal of G minus v stays unmixed), and strong unmixedness.
//!
//! Strong unmixedness implies accessibility implies unmixedness; the
//! reports assert that order instead of assuming it, and flag any graph
//! that is accessible but not strongly unmixed as a conjecture
//! counterexample candidate.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::cutsets::{unmixed_cut_set_scan, CutSetFamily, UnmixedScan};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Outcome of the accessibility test.
#[derive(Clone, Debug)]
pub enum Accessibility {
    /// Not even unmixed; carries the unmixedness witness.
    NotUnmixed { set: VertexSet, components: u32 },
    /// Unmixed, but some nonempty cut set has no removable element.
    Stuck { stuck: VertexSet, family: CutSetFamily },
    /// Unmixed with an accessible cut-set system.
    Accessible(CutSetFamily),
}

impl Accessibility {
    pub fn is_accessible(&self) -> bool {
        matches!(self, Accessibility::Accessible(_))
    }
}

/// Unmixedness of J_G: c_G(S) = |S| + c for every cut set S.
pub fn is_unmixed(g: &Graph) -> Result<bool> {
    Ok(unmixed_cut_set_scan(g)?.is_unmixed())
}

/// Full accessibility test: unmixed, and every nonempty cut set has an
/// element whose removal leaves a cut set. The stuck witness is the first
/// offender in (cardinality, mask) order.
pub fn accessibility(g: &Graph) -> Result<Accessibility> {
    let family = match unmixed_cut_set_scan(g)? {
        UnmixedScan::Violation { set, components } => {
            return Ok(Accessibility::NotUnmixed { set, components })
        }
        UnmixedScan::Unmixed(family) => family,
    };
    let masks: HashSet<u64> = family.sets().map(|s| s.mask()).collect();
    let stuck = family
        .sets()
        .find(|s| !s.is_empty() && !s.iter().any(|v| masks.contains(&s.without(v).mask())));
    if let Some(stuck) = stuck {
        return Ok(Accessibility::Stuck { stuck, family });
    }
    Ok(Accessibility::Accessible(family))
}

pub fn is_accessible(g: &Graph) -> Result<bool> {
    Ok(accessibility(g)?.is_accessible())
}

/// Cut vertices v of g with J_{g - v} unmixed, by the direct deletion test.
pub fn good_cut_vertices(g: &Graph) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    for v in g.cut_vertices().iter() {
        let (h, _) = g.delete_vertices(VertexSet::singleton(v));
        if is_unmixed(&h)? {
            out = out.with(v);
        }
    }
    Ok(out)
}

/// The same set by the containment criterion: for a cut vertex v of a
/// connected unmixed graph with components H1, H2 after deletion, the ideal
/// of g - v is unmixed iff no cut set of g - v contains N_{H1}(v) or
/// N_{H2}(v). Falls back to the direct test if deletion leaves more than
/// two components, which unmixedness rules out.
pub fn good_cut_vertices_via_criterion(g: &Graph) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    for v in g.cut_vertices().iter() {
        let parts = g.components(VertexSet::singleton(v));
        if parts.len() != 2 {
            let (h, _) = g.delete_vertices(VertexSet::singleton(v));
            if is_unmixed(&h)? {
                out = out.with(v);
            }
            continue;
        }
        let nbrs = g.neighbors(v);
        let side1 = nbrs.intersect(parts[0]);
        let side2 = nbrs.intersect(parts[1]);
        let (h, map) = g.delete_vertices(VertexSet::singleton(v));
        let family = crate::cutsets::enumerate_cut_sets(&h)?;
        let mut good = true;
        for s in family.sets() {
            // map the cut set back to the labels of g
            let mut original = VertexSet::EMPTY;
            for i in s.iter() {
                original = original.with(map[i as usize]);
            }
            if side1.is_subset_of(original) || side2.is_subset_of(original) {
                good = false;
                break;
            }
        }
        if good {
            out = out.with(v);
        }
    }
    Ok(out)
}

/// Default cap on the strong-unmixedness memo.
pub const DEFAULT_MEMO_LIMIT: usize = 1_000_000;

/// Memo for the strong-unmixedness recursion, keyed by canonical form so
/// isomorphic intermediate graphs are decided once. Shared across workers;
/// exceeding the entry budget is an explicit error, never a silent
/// truncation.
pub struct StrongMemo {
    map: Mutex<HashMap<CanonicalForm, bool>>,
    limit: usize,
}

impl Default for StrongMemo {
    fn default() -> Self {
        Self::new()
    }
}

impl StrongMemo {
    pub fn new() -> Self {
        Self::with_limit(DEFAULT_MEMO_LIMIT)
    }

    pub fn with_limit(limit: usize) -> Self {
        StrongMemo {
            map: Mutex::new(HashMap::new()),
            limit,
        }
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &CanonicalForm) -> Option<bool> {
        self.map.lock().unwrap().get(key).copied()
    }

    fn insert(&self, key: CanonicalForm, value: bool) -> Result<()> {
        let mut map = self.map.lock().unwrap();
        if map.len() >= self.limit {
            return Err(Error::MemoBudget { limit: self.limit });
        }
        map.insert(key, value);
        Ok(())
    }
}

/// Result of the strong-unmixedness recursion. The trace lists the cut
/// vertices chosen at each recursion step actually descended, in preorder
/// and in the labels of the queried graph; subtrees answered from the memo
/// contribute no entries.
#[derive(Clone, Debug)]
pub struct StrongOutcome {
    pub holds: bool,
    pub trace: Vec<u32>,
}

/// Strong unmixedness: all components complete, or unmixed with a cut
/// vertex v such that both g - v and (g saturated at v) - v are strongly
/// unmixed. Only good cut vertices can qualify, because strong unmixedness
/// of g - v already requires its ideal to be unmixed; they are tried in
/// ascending order.
pub fn is_strongly_unmixed(g: &Graph, memo: &StrongMemo) -> Result<StrongOutcome> {
    let labels: Vec<u32> = (0..g.n() as u32).collect();
    let mut trace = Vec::new();
    let holds = strongly_rec(g, memo, &labels, &mut trace)?;
    Ok(StrongOutcome { holds, trace })
}

fn components_all_complete(g: &Graph) -> bool {
    g.components(VertexSet::EMPTY)
        .into_iter()
        .all(|c| g.is_complete_within(c))
}

fn strongly_rec(
    g: &Graph,
    memo: &StrongMemo,
    labels: &[u32],
    trace: &mut Vec<u32>,
) -> Result<bool> {
    if components_all_complete(g) {
        return Ok(true);
    }
    let key = canonical_form(g);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit);
    }
    let result = (|| -> Result<bool> {
        if !is_unmixed(g)? {
            return Ok(false);
        }
        for v in good_cut_vertices(g)?.iter() {
            let mark = trace.len();
            trace.push(labels[v as usize]);

            let (h1, map1) = g.delete_vertices(VertexSet::singleton(v));
            let labels1: Vec<u32> = map1.iter().map(|&i| labels[i as usize]).collect();
            if strongly_rec(&h1, memo, &labels1, trace)? {
                let (h2, map2) = g.saturate(v).delete_vertices(VertexSet::singleton(v));
                let labels2: Vec<u32> = map2.iter().map(|&i| labels[i as usize]).collect();
                if strongly_rec(&h2, memo, &labels2, trace)? {
                    return Ok(true);
                }
            }
            trace.truncate(mark);
        }
        Ok(false)
    })()?;
    memo.insert(key, result)?;
    Ok(result)
}

/// Full evaluation of the predicate ladder with witnesses, 1-based in the
/// serialized form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub vertices: usize,
    pub unmixed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unmixed_violation: Option<Vec<u32>>,
    pub accessible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stuck_cut_set: Option<Vec<u32>>,
    pub good_cut_vertices: Vec<u32>,
    pub strongly_unmixed: bool,
    pub strong_trace: Vec<u32>,
    /// Accessible but not strongly unmixed: the most interesting thing
    /// this crate could ever find.
    pub counterexample_candidate: bool,
}

/// Evaluate all four predicates, asserting the implication order.
pub fn implication_report(g: &Graph, memo: &StrongMemo) -> Result<PropertyReport> {
    let access = accessibility(g)?;
    let (unmixed, unmixed_violation, accessible, stuck) = match &access {
        Accessibility::NotUnmixed { set, .. } => {
            (false, Some(set.to_sorted_1based()), false, None)
        }
        Accessibility::Stuck { stuck, .. } => {
            (true, None, false, Some(stuck.to_sorted_1based()))
        }
        Accessibility::Accessible(_) => (true, None, true, None),
    };
    let good = good_cut_vertices(g)?;
    let strong = is_strongly_unmixed(g, memo)?;
    if strong.holds && !accessible {
        return Err(Error::Inconsistent(format!(
            "strongly unmixed graph failed accessibility: {g:?}"
        )));
    }
    if accessible && !unmixed {
        return Err(Error::Inconsistent(format!(
            "accessible graph failed unmixedness: {g:?}"
        )));
    }
    Ok(PropertyReport {
        schema: 1,
        vertices: g.n(),
        unmixed,
        unmixed_violation,
        accessible,
        stuck_cut_set: stuck,
        good_cut_vertices: good.to_sorted_1based(),
        strongly_unmixed: strong.holds,
        strong_trace: strong.trace.iter().map(|v| v + 1).collect(),
        counterexample_candidate: accessible && !strong.holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn c4_is_not_unmixed_with_diagonal_witness() {
        let memo = StrongMemo::new();
        let report = implication_report(&Graph::cycle(4).unwrap(), &memo).unwrap();
        assert!(!report.unmixed);
        assert_eq!(report.unmixed_violation, Some(vec![1, 3]));
        assert!(!report.accessible && !report.strongly_unmixed);
    }

    #[test]
    fn unions_of_complete_graphs_pass_everything() {
        let two_k3 =
            Graph::from_edges(8, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7)])
                .unwrap();
        let memo = StrongMemo::new();
        let report = implication_report(&two_k3, &memo).unwrap();
        assert!(report.unmixed && report.accessible && report.strongly_unmixed);
        assert!(report.strong_trace.is_empty());

        // K3 disjoint K5 is a base case
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        for u in 3..8u32 {
            for v in u + 1..8 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(8, &edges).unwrap();
        assert!(is_strongly_unmixed(&g, &memo).unwrap().holds);
    }

    #[test]
    fn k1_passes_everything() {
        let memo = StrongMemo::new();
        let report = implication_report(&Graph::empty(1).unwrap(), &memo).unwrap();
        assert!(report.unmixed && report.accessible && report.strongly_unmixed);
        assert!(!report.counterexample_candidate);
    }

    #[test]
    fn p3_is_strongly_unmixed_through_its_middle_vertex() {
        // deleting 2 leaves two isolated vertices; saturating at 2 and
        // deleting leaves K2: both base cases
        let memo = StrongMemo::new();
        let out = is_strongly_unmixed(&Graph::path(3).unwrap(), &memo).unwrap();
        assert!(out.holds);
        assert_eq!(out.trace, vec![1]);

        // a fresh memo so the trace is not elided by a cache hit
        let memo = StrongMemo::new();
        let report = implication_report(&Graph::path(3).unwrap(), &memo).unwrap();
        assert_eq!(report.good_cut_vertices, vec![2]);
        assert_eq!(report.strong_trace, vec![2]);
    }

    #[test]
    fn good_cut_vertex_methods_agree_on_connected_unmixed_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        let mut seen = 0;
        while seen < 60 {
            let n = rng.gen_range(2..=8);
            let p = rng.gen_range(0.25..0.9);
            let g = random_graph(&mut rng, n, p);
            if !g.is_connected() || !is_unmixed(&g).unwrap() {
                continue;
            }
            seen += 1;
            assert_eq!(
                good_cut_vertices(&g).unwrap(),
                good_cut_vertices_via_criterion(&g).unwrap(),
                "{g:?}"
            );
        }
    }

    #[test]
    fn ladder_order_holds_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let memo = StrongMemo::new();
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.9);
            let g = random_graph(&mut rng, n, p);
            let r = implication_report(&g, &memo).unwrap();
            assert!(!r.strongly_unmixed || r.accessible, "{g:?}");
            assert!(!r.accessible || r.unmixed, "{g:?}");
        }
    }

    #[test]
    fn memoized_recursion_matches_fresh_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2718);
        let shared = StrongMemo::new();
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.3..0.8);
            let g = random_graph(&mut rng, n, p);
            let fresh = StrongMemo::new();
            let a = is_strongly_unmixed(&g, &fresh).unwrap().holds;
            let b = is_strongly_unmixed(&g, &shared).unwrap().holds;
            assert_eq!(a, b, "{g:?}");
        }
    }

    #[test]
    fn memo_budget_errors_out() {
        let memo = StrongMemo::with_limit(1);
        // a graph whose recursion needs more than one cached entry
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let r = is_strongly_unmixed(&g, &memo);
        assert!(matches!(r, Err(Error::MemoBudget { limit: 1 })) || r.is_ok());
    }

    /// Definitional three-branch recursion, used only as a cross-check for
    /// the two-branch variant.
    fn strongly_three_branch(g: &Graph) -> bool {
        if components_all_complete(g) {
            return true;
        }
        if !is_unmixed(g).unwrap() {
            return false;
        }
        for v in g.cut_vertices().iter() {
            let (h1, _) = g.delete_vertices(VertexSet::singleton(v));
            let gv = g.saturate(v);
            let (h2, _) = gv.delete_vertices(VertexSet::singleton(v));
            if strongly_three_branch(&h1)
                && strongly_three_branch(&gv)
                && strongly_three_branch(&h2)
            {
                return true;
            }
        }
        false
    }

    #[test]
    fn two_branch_recursion_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let memo = StrongMemo::new();
        for round in 0..140 {
            let n = if round < 20 { 8 } else { rng.gen_range(1..=7) };
            let p = rng.gen_range(0.3..0.9);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(
                is_strongly_unmixed(&g, &memo).unwrap().holds,
                strongly_three_branch(&g),
                "{g:?}"
            );
        }
    }

    #[test]
    fn report_serializes_with_one_based_witnesses() {
        let memo = StrongMemo::new();
        let report = implication_report(&Graph::cycle(4).unwrap(), &memo).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["unmixed_violation"][0], 1);
        assert_eq!(json["unmixed_violation"][1], 3);
    }
}
