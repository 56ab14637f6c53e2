//! Filters (surjective order-preserving maps onto chains), the filter
//! product and its action on linear extensions, the 0/1 matrices M_F, and
//! the inclusion-exclusion decomposition of the B matrices.

use num::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::pedestal::{EpsilonMask, PedestalMatrix};
use crate::poset::{LinearExtension, Poset};

/// A filter of rank k: `floors[e]` is the 0-based floor of element e.
/// Floors may contain comparable elements; order-preserving only requires
/// floors(a) <= floors(b) across floors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Filter {
    floors: Vec<usize>,
    rank: usize,
}

impl Filter {
    pub fn new(floors: Vec<usize>) -> Self {
        let rank = floors.iter().max().map_or(0, |m| m + 1);
        debug_assert!((0..rank).all(|f| floors.contains(&f)), "floors not surjective");
        Filter { floors, rank }
    }

    /// The rank-1 filter (everything on one floor); acts as the identity.
    pub fn coarsest(n: usize) -> Self {
        Filter {
            floors: vec![0; n],
            rank: 1,
        }
    }

    /// The rank-n filter of a linear extension (a chamber).
    pub fn from_extension(p: &LinearExtension) -> Self {
        Filter {
            floors: (0..p.n()).map(|e| p.rank(e)).collect(),
            rank: p.n(),
        }
    }

    pub fn n(&self) -> usize {
        self.floors.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 0-based floor of element e.
    pub fn floor(&self, e: usize) -> usize {
        self.floors[e]
    }

    pub fn floors(&self) -> &[usize] {
        &self.floors
    }

    pub fn is_order_preserving(&self, poset: &Poset) -> bool {
        for a in 0..self.n() {
            for b in 0..self.n() {
                if poset.less(a, b) && self.floors[a] > self.floors[b] {
                    return false;
                }
            }
        }
        true
    }

    /// Rank-n filters are exactly linear extensions.
    pub fn to_extension(&self) -> Option<LinearExtension> {
        if self.rank != self.n() {
            return None;
        }
        let mut order = vec![0; self.n()];
        for (e, &f) in self.floors.iter().enumerate() {
            order[f] = e;
        }
        Some(LinearExtension::from_order(order))
    }

    /// Floor listing with poset names, e.g. "{(1,1),(1,2)} | {(2,1)}".
    pub fn display_with(&self, poset: &Poset) -> String {
        let mut floors: Vec<Vec<&str>> = vec![Vec::new(); self.rank];
        for (e, &f) in self.floors.iter().enumerate() {
            floors[f].push(&poset.names()[e]);
        }
        floors
            .iter()
            .map(|fl| format!("{{{}}}", fl.join(",")))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// A composition of n: positive parts summing to n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Segments of {1..n} cut after each position k with eps(k) = 1, so the
/// disagreement positions are c1+1, c1+c2+1, ...; r = 1 + sum eps.
pub fn composition_of(mask: &EpsilonMask) -> Composition {
    let n = mask.len() + 1;
    let mut parts = Vec::new();
    let mut last = 0;
    for k in 1..n {
        if mask.get(k) {
            parts.push(k - last);
            last = k;
        }
    }
    parts.push(n - last);
    Composition { parts }
}

/// All compositions of n, first part varying slowest (lexicographic).
pub fn all_compositions(n: usize) -> Vec<Composition> {
    fn rec(n: usize, acc: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition { parts: acc.clone() });
            return;
        }
        for first in 1..=n {
            acc.push(first);
            rec(n - first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// All filters with |F^-1(i)| = c_i, in lexicographic order on the
/// floor-assignment vector. Empty when the composition admits none.
pub fn enumerate_filters(poset: &Poset, comp: &Composition) -> Vec<Filter> {
    let n = poset.n();
    assert_eq!(comp.n(), n, "composition must sum to poset size");
    let r = comp.parts.len();
    let mut remaining = comp.parts.clone();
    let mut floors = vec![usize::MAX; n];
    let mut out = Vec::new();

    fn rec(
        poset: &Poset,
        e: usize,
        r: usize,
        remaining: &mut [usize],
        floors: &mut [usize],
        out: &mut Vec<Filter>,
    ) {
        let n = poset.n();
        if e == n {
            out.push(Filter::new(floors.to_vec()));
            return;
        }
        'floor: for f in 0..r {
            if remaining[f] == 0 {
                continue;
            }
            for d in 0..e {
                if poset.less(d, e) && floors[d] > f {
                    continue 'floor;
                }
                if poset.less(e, d) && f > floors[d] {
                    continue 'floor;
                }
            }
            floors[e] = f;
            remaining[f] -= 1;
            rec(poset, e + 1, r, remaining, floors, out);
            remaining[f] += 1;
            floors[e] = usize::MAX;
        }
    }
    rec(poset, 0, r, &mut remaining, &mut floors, &mut out);
    out
}

/// Every filter on the poset, composition by composition.
pub fn all_filters(poset: &Poset) -> Vec<Filter> {
    let mut out = Vec::new();
    for comp in all_compositions(poset.n()) {
        out.extend(enumerate_filters(poset, &comp));
    }
    out
}

/// The filter product F = F2 F1: F2 decides, ties broken by F1.
pub fn filter_product(f2: &Filter, f1: &Filter) -> Result<Filter> {
    if f2.n() != f1.n() {
        return Err(Error::MismatchedPoset);
    }
    let n = f2.n();
    let mut keys: Vec<(usize, usize)> = (0..n).map(|e| (f2.floor(e), f1.floor(e))).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    let floors = keys
        .drain(..)
        .map(|k| sorted.binary_search(&k).unwrap())
        .collect();
    Ok(Filter::new(floors))
}

/// FP for a linear extension P: again a linear extension.
pub fn apply_filter(f: &Filter, p: &LinearExtension) -> Result<LinearExtension> {
    let product = filter_product(f, &Filter::from_extension(p))?;
    Ok(product
        .to_extension()
        .expect("product with a chamber has full rank"))
}

/// (M_F)_{P,Q} = 1 iff Q = FP, in the canonical extension order.
/// `exts` must be the canonically sorted extension list.
pub fn filter_matrix(exts: &[LinearExtension], f: &Filter) -> IntMatrix {
    let dim = exts.len();
    IntMatrix::from_fn(dim, |i, j| {
        let fp = apply_filter(f, &exts[i]).expect("same poset");
        if exts[j] == fp {
            BigInt::from(1)
        } else {
            BigInt::from(0)
        }
    })
}

fn extension_index(exts: &[LinearExtension], e: &LinearExtension) -> usize {
    exts.binary_search_by(|probe| probe.order().cmp(e.order()))
        .expect("FP is a linear extension of the same poset")
}

/// Image row -> column index of the F-action, cheaper than the full matrix.
pub fn filter_action(exts: &[LinearExtension], f: &Filter) -> Vec<usize> {
    exts.iter()
        .map(|p| extension_index(exts, &apply_filter(f, p).expect("same poset")))
        .collect()
}

/// One signed term of the inclusion-exclusion formula.
#[derive(Debug, Clone, Serialize)]
pub struct BTerm {
    pub sign: i64,
    pub composition: Composition,
    pub filters: Vec<Filter>,
}

#[derive(Debug, Clone)]
pub struct BDecomposition {
    pub mask: EpsilonMask,
    pub terms: Vec<BTerm>,
    pub sum: IntMatrix,
    /// false when the mask is unrealized and the identity is not asserted
    pub realized: bool,
}

/// B_{X,eps} as the signed sum of filter matrices over all mergers of
/// neighboring composition parts, signs (-1)^{#mergers}. Asserts exact
/// matrix equality with the indicator matrix when the mask is realized.
pub fn b_decomposition(
    poset: &Poset,
    pm: &PedestalMatrix,
    mask: &EpsilonMask,
) -> Result<BDecomposition> {
    let comp = composition_of(mask);
    let r = comp.parts.len();
    let exts = pm.extensions();
    let mut terms = Vec::new();
    let mut sum = IntMatrix::zero(pm.dim());
    // subsets of the r-1 internal boundaries; a cleared bit merges c_i, c_{i+1}
    for keep in 0..(1u32 << (r.saturating_sub(1))) {
        let mut parts = Vec::new();
        let mut acc = comp.parts[0];
        for i in 0..r - 1 {
            if keep >> i & 1 == 1 {
                parts.push(acc);
                acc = comp.parts[i + 1];
            } else {
                acc += comp.parts[i + 1];
            }
        }
        parts.push(acc);
        let mergers = (r - 1) - keep.count_ones() as usize;
        let sign = if mergers % 2 == 0 { 1 } else { -1 };
        let merged = Composition { parts };
        let filters = enumerate_filters(poset, &merged);
        for f in &filters {
            sum = sum.add(&filter_matrix(exts, f).scale(sign));
        }
        terms.push(BTerm {
            sign,
            composition: merged,
            filters,
        });
    }
    terms.sort_by(|a, b| b.sign.cmp(&a.sign).then(a.composition.cmp(&b.composition)));
    let b = pm.b_matrix(mask);
    let realized = !b.is_zero();
    if realized && sum != b {
        return Err(Error::DecompositionMismatch(mask.name()));
    }
    Ok(BDecomposition {
        mask: mask.clone(),
        terms,
        sum,
        realized,
    })
}
