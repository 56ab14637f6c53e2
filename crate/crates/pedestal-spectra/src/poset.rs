//! Finite posets and their linear extensions.
//!
//! Elements are indexed `0..n`; the strict order is stored as a closed
//! `n x n` table. Linear extensions are enumerated by backtracking over
//! minimal elements with smallest-index-first branching, which makes the
//! output lexicographically sorted on the `order` sequence. That ordering
//! is the canonical row/column indexing used by every matrix downstream.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default cap on the number of linear extensions; downstream exact linear
/// algebra is cubic in this count.
pub const DEFAULT_EXTENSION_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    n: usize,
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// closure[a*n+b] is true iff a ≺ b (strict).
    closure: Vec<bool>,
    /// Set when the poset was built from a partition shape; enables hook lengths.
    shape: Option<Vec<usize>>,
}

/// A total order compatible with the poset: `order[k]` is the element at
/// position `k` and `rank[e]` its inverse (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearExtension {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearExtension {
    pub fn from_order(order: Vec<usize>) -> Self {
        let mut rank = vec![0; order.len()];
        for (pos, &e) in order.iter().enumerate() {
            rank[e] = pos;
        }
        LinearExtension { order, rank }
    }

    /// Build from the rank table of a tableau: `values[e]` is the 1-based
    /// position of element `e`.
    pub fn from_values(values: &[usize]) -> Self {
        let n = values.len();
        let mut order = vec![0; n];
        for (e, &v) in values.iter().enumerate() {
            order[v - 1] = e;
        }
        Self::from_order(order)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Element at 0-based position `k`.
    pub fn at(&self, k: usize) -> usize {
        self.order[k]
    }

    /// 0-based position of element `e`.
    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_extension_of(&self, poset: &Poset) -> bool {
        if self.order.len() != poset.n {
            return false;
        }
        for a in 0..poset.n {
            for b in 0..poset.n {
                if poset.less(a, b) && self.rank[a] >= self.rank[b] {
                    return false;
                }
            }
        }
        true
    }
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Strict order: a ≺ b.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.closure[a * self.n + b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// The partition shape this poset was built from, if any.
    pub fn shape(&self) -> Option<&[usize]> {
        self.shape.as_deref()
    }

    fn from_closure(names: Vec<String>, closure: Vec<bool>) -> Poset {
        let n = names.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !closure[a * n + b] {
                    continue;
                }
                let mut is_cover = true;
                for c in 0..n {
                    if closure[a * n + c] && closure[c * n + b] {
                        is_cover = false;
                        break;
                    }
                }
                if is_cover {
                    covers.push((a, b));
                }
            }
        }
        Poset {
            n,
            names,
            covers,
            closure,
            shape: None,
        }
    }

    /// Build from labelled cover pairs (a, b) meaning a ≺ b. Reflexive pairs
    /// are ignored with a warning; the order stored is the strict part.
    pub fn from_covers(names: &[String], pairs: &[(String, String)]) -> Result<Poset> {
        let n = names.len();
        let mut index = std::collections::HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        let mut closure = vec![false; n * n];
        for (a, b) in pairs {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            if ia == ib {
                eprintln!("warning: ignoring reflexive pair ({a}, {b})");
                continue;
            }
            closure[ia * n + ib] = true;
        }
        // Warshall transitive closure, then cycle check.
        for k in 0..n {
            for a in 0..n {
                if closure[a * n + k] {
                    for b in 0..n {
                        if closure[k * n + b] {
                            closure[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            if closure[a * n + a] {
                return Err(Error::CycleDetected);
            }
        }
        Ok(Poset::from_closure(names.to_vec(), closure))
    }

    /// Cell poset of a partition shape. Elements are cells (row, col) in
    /// row-major order, so linear extensions print as standard tableaux read
    /// row by row.
    pub fn from_partition(parts: &[usize]) -> Result<Poset> {
        if parts.is_empty() {
            return Err(Error::EmptyShape);
        }
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing);
        }
        let mut cells = Vec::new();
        let mut names = Vec::new();
        for (r, &len) in parts.iter().enumerate() {
            for c in 0..len {
                cells.push((r, c));
                names.push(format!("({},{})", r + 1, c + 1));
            }
        }
        let n = cells.len();
        let mut closure = vec![false; n * n];
        for (i, &(r, c)) in cells.iter().enumerate() {
            for (j, &(rr, cc)) in cells.iter().enumerate() {
                if i != j && r <= rr && c <= cc {
                    closure[i * n + j] = true;
                }
            }
        }
        let mut poset = Poset::from_closure(names, closure);
        poset.shape = Some(parts.to_vec());
        Ok(poset)
    }

    /// Product of chains: elements are integer tuples in the box, ordered
    /// componentwise, named in lexicographic tuple order.
    pub fn from_chain_product(dims: &[usize]) -> Result<Poset> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::EmptyDims);
        }
        let mut tuples = vec![vec![]];
        for &d in dims {
            let mut next = Vec::new();
            for t in &tuples {
                for v in 0..d {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        let n = tuples.len();
        let names = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(|v| (v + 1).to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let mut closure = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j && tuples[i].iter().zip(&tuples[j]).all(|(a, b)| a <= b) {
                    closure[i * n + j] = true;
                }
            }
        }
        Ok(Poset::from_closure(names, closure))
    }

    /// All linear extensions in canonical (lexicographic on `order`) order.
    pub fn linear_extensions(&self, cap: usize) -> Result<Vec<LinearExtension>> {
        let n = self.n;
        let mut out = Vec::new();
        let mut order = Vec::with_capacity(n);
        let mut used = vec![false; n];
        // indegree among unused elements
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.covers {
            indeg[b] += 1;
        }
        self.extend_rec(&mut order, &mut used, &mut indeg, &mut out, cap)?;
        Ok(out)
    }

    fn extend_rec(
        &self,
        order: &mut Vec<usize>,
        used: &mut [bool],
        indeg: &mut [usize],
        out: &mut Vec<LinearExtension>,
        cap: usize,
    ) -> Result<()> {
        if order.len() == self.n {
            if out.len() >= cap {
                return Err(Error::SizeCapExceeded { cap });
            }
            out.push(LinearExtension::from_order(order.clone()));
            return Ok(());
        }
        for e in 0..self.n {
            if used[e] || indeg[e] != 0 {
                continue;
            }
            used[e] = true;
            order.push(e);
            for &(a, b) in &self.covers {
                if a == e {
                    indeg[b] -= 1;
                }
            }
            self.extend_rec(order, used, indeg, out, cap)?;
            for &(a, b) in &self.covers {
                if a == e {
                    indeg[b] += 1;
                }
            }
            order.pop();
            used[e] = false;
        }
        Ok(())
    }

    pub fn count_extensions(&self, cap: usize) -> Result<usize> {
        Ok(self.linear_extensions(cap)?.len())
    }

    /// One linear extension (the canonical first one), without enumerating
    /// the rest: greedy smallest-index minimal element.
    pub fn any_extension(&self) -> LinearExtension {
        let mut order = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        while order.len() < self.n {
            let e = (0..self.n)
                .find(|&e| !used[e] && (0..self.n).all(|d| used[d] || !self.less(d, e)))
                .expect("poset is acyclic");
            used[e] = true;
            order.push(e);
        }
        LinearExtension::from_order(order)
    }
}

/// Number of distinct strict partial orders on a labelled n-set, by brute
/// force over all irreflexive relations (OEIS A001035).
pub fn count_posets(n: usize) -> Result<u64> {
    if n > 5 {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Ok(1);
    }
    let m = n * (n - 1);
    // pair (a, b), a != b, flattened to bit positions
    let mut pairs = Vec::with_capacity(m);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    let mut count = 0u64;
    'mask: for mask in 0u32..(1u32 << m) {
        let mut rows = [0u32; 5];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rows[a] |= 1 << b;
            }
        }
        for a in 0..n {
            // antisymmetry
            for b in (a + 1)..n {
                if rows[a] >> b & 1 == 1 && rows[b] >> a & 1 == 1 {
                    continue 'mask;
                }
            }
            // transitivity: rows[b] ⊆ rows[a] for every b above a
            let mut reach = 0u32;
            let mut todo = rows[a];
            while todo != 0 {
                let b = todo.trailing_zeros() as usize;
                todo &= todo - 1;
                reach |= rows[b];
            }
            if reach & !rows[a] != 0 {
                continue 'mask;
            }
        }
        count += 1;
    }
    Ok(count)
}
