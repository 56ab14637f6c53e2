//! Generating-function verification layer: monotone-function series, the
//! pedestal identity, the MacMahon hook product, and the volume-preserving
//! bijection between monotone functions and (pedestal, partition) pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pedestal::{pedestal, PedestalMatrix};
use crate::poset::{LinearExtension, Poset};

/// Hard ceiling on the truncation; the monotone-function census is a plain
/// enumeration and grows like the partition function.
pub const MAX_TRUNCATION: usize = 100;

/// Integer power series truncated at degree T (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    pub coefficients: Vec<u64>,
}

impl TruncatedSeries {
    pub fn one(t: usize) -> Self {
        let mut coefficients = vec![0; t + 1];
        coefficients[0] = 1;
        TruncatedSeries { coefficients }
    }

    pub fn from_poly(poly: &[u64], t: usize) -> Self {
        let mut coefficients = vec![0; t + 1];
        for (k, &c) in poly.iter().enumerate().take(t + 1) {
            coefficients[k] = c;
        }
        TruncatedSeries { coefficients }
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let t = self.truncation().min(other.truncation());
        let mut coefficients = vec![0u64; t + 1];
        for (i, &a) in self.coefficients.iter().enumerate().take(t + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coefficients.iter().enumerate().take(t + 1 - i) {
                coefficients[i + j] += a * b;
            }
        }
        TruncatedSeries { coefficients }
    }

    /// Multiply by 1/(1 - t^k), i.e. divide by (1 - t^k), exactly up to T.
    pub fn div_one_minus_tk(&self, k: usize) -> TruncatedSeries {
        assert!(k >= 1);
        let mut coefficients = self.coefficients.clone();
        for i in k..coefficients.len() {
            coefficients[i] += coefficients[i - k];
        }
        TruncatedSeries { coefficients }
    }
}

/// G_X(t): number of monotone functions X -> {0,1,2,...} per volume, up to
/// T, by direct enumeration along a fixed linear extension.
pub fn gen_monotone(poset: &Poset, t: usize) -> Result<TruncatedSeries> {
    if t > MAX_TRUNCATION {
        return Err(Error::TruncationTooLarge(t));
    }
    let order = poset.any_extension();
    let n = poset.n();
    let mut coefficients = vec![0u64; t + 1];
    let mut values = vec![0usize; n];

    fn rec(
        poset: &Poset,
        order: &LinearExtension,
        idx: usize,
        sum: usize,
        t: usize,
        values: &mut [usize],
        coefficients: &mut [u64],
    ) {
        if idx == poset.n() {
            coefficients[sum] += 1;
            return;
        }
        let e = order.at(idx);
        // every predecessor of e appears earlier in the extension
        let lower = (0..poset.n())
            .filter(|&d| poset.less(d, e))
            .map(|d| values[d])
            .max()
            .unwrap_or(0);
        let mut v = lower;
        while sum + v <= t {
            values[e] = v;
            rec(poset, order, idx + 1, sum + v, t, values, coefficients);
            v += 1;
        }
    }
    rec(poset, &order, 0, 0, t, &mut values, &mut coefficients);
    Ok(TruncatedSeries { coefficients })
}

/// Hook lengths of a partition shape, row-major cell order.
pub fn hook_lengths(parts: &[usize]) -> Vec<usize> {
    let mut hooks = Vec::new();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&p| p > c).count();
            hooks.push(arm + leg + 1);
        }
    }
    hooks
}

/// MacMahon hook product for reverse plane partitions of a partition shape.
pub fn macmahon(poset: &Poset, t: usize) -> Result<TruncatedSeries> {
    if t > MAX_TRUNCATION {
        return Err(Error::TruncationTooLarge(t));
    }
    let parts = poset.shape().ok_or(Error::NotAPartitionShape)?;
    let mut series = TruncatedSeries::one(t);
    for h in hook_lengths(parts) {
        series = series.div_one_minus_tk(h);
    }
    Ok(series)
}

/// Report for the pedestal identity G_X = Pi_X * prod 1/(1-t^l), including
/// which substitution exponent convention reproduces Pi_X(t).
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub truncation: usize,
    pub pi: Vec<u64>,
    pub identity_holds: bool,
    /// literal convention: a_eps -> t^{sum k*eps(k)}
    pub literal_exponent_matches: bool,
    /// derived convention: a_eps -> t^{sum (n-k)*eps(k)}
    pub derived_exponent_matches: bool,
}

pub fn pedestal_identity_check(
    poset: &Poset,
    pm: &PedestalMatrix,
    t: usize,
) -> Result<IdentityReport> {
    let pi = pm.pedestal_polynomial()?;
    let lhs = gen_monotone(poset, t)?;
    let mut rhs = TruncatedSeries::from_poly(&pi, t);
    for l in 1..=poset.n() {
        rhs = rhs.div_one_minus_tk(l);
    }
    if lhs != rhs {
        let bad = lhs
            .coefficients
            .iter()
            .zip(&rhs.coefficients)
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        return Err(Error::IdentityViolated(bad));
    }

    // both substitution conventions, evaluated on one row's mask multiset
    let n = pm.n();
    let mut literal = vec![0u64; pi.len().max(1)];
    let mut derived = vec![0u64; pi.len().max(1)];
    for j in 0..pm.dim() {
        let mask = pm.entry(0, j);
        let lit: usize = (1..n).filter(|&k| mask.get(k)).sum();
        let der: usize = (1..n).filter(|&k| mask.get(k)).map(|k| n - k).sum();
        if literal.len() <= lit {
            literal.resize(lit + 1, 0);
        }
        if derived.len() <= der {
            derived.resize(der + 1, 0);
        }
        literal[lit] += 1;
        derived[der] += 1;
    }
    let trim = |mut v: Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let literal = trim(literal);
    let derived = trim(derived);
    let pi_trimmed = trim(pi.clone());
    Ok(IdentityReport {
        truncation: t,
        pi,
        identity_holds: true,
        literal_exponent_matches: literal == pi_trimmed,
        derived_exponent_matches: derived == pi_trimmed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    pub truncation: usize,
    pub images: usize,
    pub injective: bool,
    pub all_monotone: bool,
    pub volume_preserving: bool,
    pub counts_match: bool,
}

/// The map (pedestal q_PQ, partition pi with <= n parts) -> monotone p with
/// p(Q^-1(k)) = q_PQ(Q^-1(k)) + pi(k). Verifies image membership,
/// injectivity and volume preservation, and that per-volume image counts
/// agree with gen_monotone up to T.
pub fn bijection_check(
    poset: &Poset,
    p_ext: &LinearExtension,
    t: usize,
    cap: usize,
) -> Result<BijectionReport> {
    if t > MAX_TRUNCATION {
        return Err(Error::TruncationTooLarge(t));
    }
    let n = poset.n();
    let exts = poset.linear_extensions(cap)?;
    let mut seen: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    let mut counts = vec![0u64; t + 1];
    for (qi, q) in exts.iter().enumerate() {
        let ped = pedestal(p_ext, q)?;
        if ped.volume > t {
            continue;
        }
        let budget = t - ped.volume;
        // weakly increasing pi(1) <= ... <= pi(n), nonnegative, sum <= budget
        let mut pi = vec![0usize; n];
        enumerate_partitions(0, 0, 0, budget, &mut pi, &mut |pi, pi_sum| {
            let mut p_fn = vec![0usize; n];
            for k in 0..n {
                p_fn[q.at(k)] = ped.values[q.at(k)] + pi[k];
            }
            let volume = ped.volume + pi_sum;
            // monotone on the poset?
            let monotone = (0..n).all(|a| {
                (0..n).all(|b| !poset.less(a, b) || p_fn[a] <= p_fn[b])
            });
            if !monotone {
                return Err(Error::BijectionFailure(format!(
                    "image of Q #{qi} is not monotone"
                )));
            }
            let expected_volume: usize = p_fn.iter().sum();
            if expected_volume != volume {
                return Err(Error::BijectionFailure("volume not preserved".into()));
            }
            if seen.insert(p_fn, (qi, pi_sum)).is_some() {
                return Err(Error::BijectionFailure("map is not injective".into()));
            }
            counts[volume] += 1;
            Ok(())
        })?;
    }
    let g = gen_monotone(poset, t)?;
    if counts != g.coefficients {
        return Err(Error::BijectionFailure(
            "per-volume image counts differ from the monotone census".into(),
        ));
    }
    Ok(BijectionReport {
        truncation: t,
        images: seen.len(),
        injective: true,
        all_monotone: true,
        volume_preserving: true,
        counts_match: true,
    })
}

fn enumerate_partitions(
    idx: usize,
    min: usize,
    sum: usize,
    budget: usize,
    pi: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], usize) -> Result<()>,
) -> Result<()> {
    if idx == pi.len() {
        return visit(pi, sum);
    }
    let mut v = min;
    while sum + v * (pi.len() - idx) <= budget {
        pi[idx] = v;
        enumerate_partitions(idx + 1, v, sum + v, budget, pi, visit)?;
        v += 1;
    }
    Ok(())
}
