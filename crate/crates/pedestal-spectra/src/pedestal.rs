//! Epsilon masks, pedestals, pedestal monomials, and the symbolic matrices
//! M^X, M~^X together with the 0/1 coefficient matrices B_{X,eps}.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::poset::{LinearExtension, Poset};

/// The (n-1)-bit record of which successor positions of Q are disagreements
/// with respect to P. Position k (1-based) holds eps(k); the formal variable
/// it indexes is named "a_" followed by the bit string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EpsilonMask {
    bits: Vec<bool>,
}

impl EpsilonMask {
    pub fn new(bits: Vec<bool>) -> Self {
        EpsilonMask { bits }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        EpsilonMask {
            bits: vec![false; n - 1],
        }
    }

    /// All 2^(n-1) masks for an n-element poset, in bit-string order.
    pub fn all(n: usize) -> Vec<EpsilonMask> {
        let len = n - 1;
        (0..(1usize << len))
            .map(|m| EpsilonMask {
                bits: (0..len).map(|i| m >> (len - 1 - i) & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// eps(k) for 1-based k in 1..=n-1.
    pub fn get(&self, k: usize) -> bool {
        self.bits[k - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(EpsilonMask { bits })
    }

    /// Variable name, e.g. a_01; the empty mask (n = 1) prints as a_∅.
    pub fn name(&self) -> String {
        if self.bits.is_empty() {
            "a_∅".to_string()
        } else {
            format!("a_{}", self.bitstring())
        }
    }
}

impl fmt::Display for EpsilonMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn check_pair(p: &LinearExtension, q: &LinearExtension) -> Result<usize> {
    if p.n() != q.n() {
        return Err(Error::MismatchedPoset);
    }
    Ok(p.n())
}

/// eps_PQ: bit k is set iff P(Q^-1(k)) > P(Q^-1(k+1)).
pub fn epsilon(p: &LinearExtension, q: &LinearExtension) -> Result<EpsilonMask> {
    let n = check_pair(p, q)?;
    let bits = (0..n.saturating_sub(1))
        .map(|i| p.rank(q.at(i)) > p.rank(q.at(i + 1)))
        .collect();
    Ok(EpsilonMask { bits })
}

/// The pedestal q_PQ: running count of disagreement nodes along Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pedestal {
    /// value per element (poset indexing)
    pub values: Vec<usize>,
    pub volume: usize,
}

pub fn pedestal(p: &LinearExtension, q: &LinearExtension) -> Result<Pedestal> {
    let n = check_pair(p, q)?;
    let mut values = vec![0; n];
    let mut count = 0;
    for k in 0..n {
        if k > 0 && p.rank(q.at(k - 1)) > p.rank(q.at(k)) {
            count += 1;
        }
        values[q.at(k)] = count;
    }
    let volume = values.iter().sum();
    Ok(Pedestal { values, volume })
}

/// The monomial m_PQ = x_1^{l_1-1} x_2^{l_2-l_1} ... x_{r+1}^{n-l_r+1},
/// where l_1 < ... < l_r are the disagreement positions. Total degree n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonomialVector {
    /// exponents[i] is the exponent of x_{i+1}; length n
    pub exponents: Vec<usize>,
}

impl MonomialVector {
    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Substitute x_i := t^{i-1}; the result is t^{volume}.
    pub fn substitute_powers(&self) -> usize {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| i * e)
            .sum()
    }
}

impl fmt::Display for MonomialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// The monomial is determined by the mask alone: disagreement positions are
/// l = k+1 for each set bit eps(k).
pub fn monomial_of_mask(n: usize, mask: &EpsilonMask) -> MonomialVector {
    assert_eq!(mask.len() + 1, n);
    let ls: Vec<usize> = (1..n).filter(|&k| mask.get(k)).map(|k| k + 1).collect();
    let mut exponents = vec![0; n];
    if ls.is_empty() {
        exponents[0] = n;
        return MonomialVector { exponents };
    }
    exponents[0] = ls[0] - 1;
    for j in 1..ls.len() {
        exponents[j] = ls[j] - ls[j - 1];
    }
    exponents[ls.len()] = n - ls[ls.len() - 1] + 1;
    MonomialVector { exponents }
}

pub fn monomial(p: &LinearExtension, q: &LinearExtension) -> Result<MonomialVector> {
    let n = check_pair(p, q)?;
    Ok(monomial_of_mask(n, &epsilon(p, q)?))
}

/// Integer linear form in the a_eps variables.
pub type LinearForm = BTreeMap<EpsilonMask, i64>;

pub fn form_to_string(form: &LinearForm) -> String {
    let mut s = String::new();
    for (mask, &c) in form {
        if c == 0 {
            continue;
        }
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else if c < 0 {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        let a = c.unsigned_abs();
        if a != 1 {
            s.push_str(&a.to_string());
        }
        s.push_str(&mask.name());
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The full symbolic matrix M^X in canonical extension order, with the
/// monomial view M~^X available per entry.
#[derive(Debug, Clone)]
pub struct PedestalMatrix {
    n: usize,
    dim: usize,
    entries: Vec<EpsilonMask>,
    extensions: Vec<LinearExtension>,
}

impl PedestalMatrix {
    pub fn build(poset: &Poset, cap: usize) -> Result<PedestalMatrix> {
        let extensions = poset.linear_extensions(cap)?;
        let dim = extensions.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for p in &extensions {
            for q in &extensions {
                entries.push(epsilon(p, q)?);
            }
        }
        Ok(PedestalMatrix {
            n: poset.n(),
            dim,
            entries,
            extensions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.extensions
    }

    pub fn entry(&self, i: usize, j: usize) -> &EpsilonMask {
        &self.entries[i * self.dim + j]
    }

    pub fn monomial_entry(&self, i: usize, j: usize) -> MonomialVector {
        monomial_of_mask(self.n, self.entry(i, j))
    }

    /// Realized masks, sorted by bit string.
    pub fn variables(&self) -> Vec<EpsilonMask> {
        let set: std::collections::BTreeSet<_> = self.entries.iter().cloned().collect();
        set.into_iter().collect()
    }

    /// Indicator matrix of entries equal to the mask. Zero matrix when the
    /// mask is unrealized (the decomposition sums over all 2^{n-1} masks).
    pub fn b_matrix(&self, mask: &EpsilonMask) -> IntMatrix {
        IntMatrix::from_fn(self.dim, |i, j| {
            if self.entry(i, j) == mask {
                BigInt::from(1)
            } else {
                BigInt::from(0)
            }
        })
    }

    /// Common row sum of M^X as a linear form; checks all rows agree.
    pub fn row_sum_form(&self) -> Result<LinearForm> {
        let mut first: Option<LinearForm> = None;
        for i in 0..self.dim {
            let mut form = LinearForm::new();
            for j in 0..self.dim {
                *form.entry(self.entry(i, j).clone()).or_insert(0) += 1;
            }
            match &first {
                None => first = Some(form),
                Some(f) => {
                    if *f != form {
                        return Err(Error::RowMismatch(0, i));
                    }
                }
            }
        }
        Ok(first.unwrap_or_default())
    }

    /// Pedestal polynomial Pi_X(t): coefficient of t^v counts pedestals of
    /// volume v in one row; verified identical for every row.
    pub fn pedestal_polynomial(&self) -> Result<Vec<u64>> {
        let mut first: Option<Vec<u64>> = None;
        for (i, p) in self.extensions.iter().enumerate() {
            let mut coeffs: Vec<u64> = Vec::new();
            for q in &self.extensions {
                let v = pedestal(p, q)?.volume;
                if coeffs.len() <= v {
                    coeffs.resize(v + 1, 0);
                }
                coeffs[v] += 1;
            }
            match &first {
                None => first = Some(coeffs),
                Some(f) => {
                    if *f != coeffs {
                        return Err(Error::RowMismatch(0, i));
                    }
                }
            }
        }
        Ok(first.unwrap_or_default())
    }

    /// h_P = sum over Q of m_PQ, as exponent-vector -> coefficient.
    pub fn h_polynomial(&self, p: &LinearExtension) -> Result<BTreeMap<Vec<usize>, u64>> {
        let mut poly = BTreeMap::new();
        for q in &self.extensions {
            let m = monomial(p, q)?;
            *poly.entry(m.exponents).or_insert(0) += 1;
        }
        Ok(poly)
    }
}
