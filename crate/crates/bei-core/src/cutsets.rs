//! Enumeration of the cut-set collection C(G) and the unmixedness scan.
//!
//! A subset S is a cut set if S is empty or re-adding any element of S
//! strictly decreases the number of components of G \ S. Cut sets never
//! contain free vertices, so every sweep here runs over subsets of the
//! non-free vertices only; that restriction is also complete for the
//! unmixedness test because any subset with too many components shrinks,
//! by discarding elements that stop decreasing the count, to a cut set
//! that is at least as far above the unmixed line.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Sweeps are capped at 2^24 subsets of non-free vertices.
pub const SUBSET_BUDGET_BITS: u32 = 24;

/// A cut set together with its component count, and for blocks the number
/// of whiskered vertices any unmixed whisker placement must put inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutSetRecord {
    pub set: VertexSet,
    pub components: u32,
    /// For nonempty cut sets of a block: |T| + 1 - c_B(T), the number of
    /// whiskered vertices any unmixed whisker placement must put inside T.
    pub k_value: Option<i32>,
}

/// All cut sets of a graph, sorted by (cardinality, mask value).
#[derive(Clone, Debug, Default)]
pub struct CutSetFamily {
    records: Vec<CutSetRecord>,
}

impl CutSetFamily {
    pub fn records(&self) -> &[CutSetRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.records.iter().any(|r| r.set == s)
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.records.iter().map(|r| r.set)
    }

    fn sort(&mut self) {
        self.records
            .sort_by_key(|r| (r.set.len(), r.set.mask()));
    }
}

/// The outcome of the unmixedness sweep: either the full, certified
/// cut-set family, or the first witness against c_G(S) = |S| + c.
#[derive(Clone, Debug)]
pub enum UnmixedScan {
    Unmixed(CutSetFamily),
    Violation { set: VertexSet, components: u32 },
}

impl UnmixedScan {
    pub fn is_unmixed(&self) -> bool {
        matches!(self, UnmixedScan::Unmixed(_))
    }
}

/// Scratch sweep over all subsets of the non-free vertices, memoizing
/// component counts so the cut-set test is a table lookup.
struct Sweep<'a> {
    g: &'a Graph,
    nf: Vec<u32>,
    comp: Vec<u8>,
}

impl<'a> Sweep<'a> {
    fn new(g: &'a Graph) -> Result<Self> {
        let nf: Vec<u32> = g.vertices().minus(g.free_vertices()).iter().collect();
        let bits = nf.len() as u32;
        if bits > SUBSET_BUDGET_BITS {
            return Err(Error::SubsetBudget {
                bits,
                limit_bits: SUBSET_BUDGET_BITS,
            });
        }
        Ok(Sweep {
            g,
            nf,
            comp: vec![0; 1usize << bits],
        })
    }

    fn expand(&self, packed: u32) -> VertexSet {
        let mut m = 0u64;
        let mut p = packed;
        while p != 0 {
            let i = p.trailing_zeros();
            p &= p - 1;
            m |= 1u64 << self.nf[i as usize];
        }
        VertexSet::from_mask(m)
    }

    /// Visit subsets in increasing cardinality, then increasing mask.
    /// `visit` sees (packed mask, expanded set, component count) and
    /// returns false to abort the sweep.
    fn run(&mut self, mut visit: impl FnMut(u32, VertexSet, u32, &[u8]) -> bool) {
        let bits = self.nf.len() as u32;
        for card in 0..=bits {
            let mut packed = (1u32 << card) - 1;
            let end = 1u32 << bits;
            loop {
                if card > 0 && packed >= end {
                    break;
                }
                let set = self.expand(packed);
                let c = self.g.component_count(set);
                self.comp[packed as usize] = c as u8;
                if !visit(packed, set, c, &self.comp) {
                    return;
                }
                if card == 0 {
                    break;
                }
                // Gosper's hack: next mask with the same popcount
                let lo = packed & packed.wrapping_neg();
                let carry = packed.wrapping_add(lo);
                if carry >= end || carry == 0 {
                    break;
                }
                packed = carry | (((packed ^ carry) >> 2) / lo.max(1));
            }
        }
    }
}

/// Is the packed subset a cut set, given memoized component counts for all
/// of its sub-subsets?
#[inline]
fn packed_is_cut_set(packed: u32, c: u32, comp: &[u8]) -> bool {
    if packed == 0 {
        return true;
    }
    let mut p = packed;
    while p != 0 {
        let bit = p & p.wrapping_neg();
        p &= p - 1;
        if u32::from(comp[(packed & !bit) as usize]) >= c {
            return false;
        }
    }
    true
}

/// Definition-level test: S is empty, or every element strictly decreases
/// the component count when re-added.
pub fn is_cut_set(g: &Graph, s: VertexSet) -> bool {
    if s.is_empty() {
        return true;
    }
    let c = g.component_count(s);
    s.iter().all(|v| g.component_count(s.without(v)) < c)
}

/// Exactly the sets satisfying `is_cut_set`, each with its component count.
pub fn enumerate_cut_sets(g: &Graph) -> Result<CutSetFamily> {
    let mut sweep = Sweep::new(g)?;
    let mut family = CutSetFamily::default();
    sweep.run(|packed, set, c, comp| {
        if packed_is_cut_set(packed, c, comp) {
            family.records.push(CutSetRecord {
                set,
                components: c,
                k_value: None,
            });
        }
        true
    });
    family.sort();
    Ok(family)
}

/// Unmixedness sweep: visits subsets in increasing cardinality and aborts
/// on the first violation. A subset with c_G(S) >= |S| + c + 1 is reported
/// immediately (a cut set at least as bad exists inside it); a cut set with
/// c_G(S) != |S| + c is reported directly. Certifying a graph returns its
/// complete cut-set family.
pub fn unmixed_cut_set_scan(g: &Graph) -> Result<UnmixedScan> {
    let c0 = g.component_count(VertexSet::EMPTY);
    let mut sweep = Sweep::new(g)?;
    let mut family = CutSetFamily::default();
    let mut violation = None;
    sweep.run(|packed, set, c, comp| {
        if c > set.len() + c0 {
            violation = Some((set, c));
            return false;
        }
        if packed_is_cut_set(packed, c, comp) {
            if c != set.len() + c0 {
                violation = Some((set, c));
                return false;
            }
            family.records.push(CutSetRecord {
                set,
                components: c,
                k_value: None,
            });
        }
        true
    });
    match violation {
        Some((set, components)) => Ok(UnmixedScan::Violation { set, components }),
        None => {
            family.sort();
            Ok(UnmixedScan::Unmixed(family))
        }
    }
}

/// All nonempty cut sets T of a block, each annotated with
/// k_T = |T| + 1 - c_B(T), the number of whiskered vertices T must contain
/// in any whisker placement keeping the ideal unmixed.
pub fn cut_sets_with_k(b: &Graph) -> Result<Vec<CutSetRecord>> {
    debug_assert!(b.is_block());
    let family = enumerate_cut_sets(b)?;
    Ok(family
        .records()
        .iter()
        .filter(|r| !r.set.is_empty())
        .map(|r| CutSetRecord {
            set: r.set,
            components: r.components,
            k_value: Some(r.set.len() as i32 + 1 - r.components as i32),
        })
        .collect())
}
