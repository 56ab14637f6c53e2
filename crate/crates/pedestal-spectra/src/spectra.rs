//! Simultaneous triangularization of the filter operators through the
//! degree-filtration flag basis on functions over Tot_X, and the integer
//! eigenvalue spectrum of M^X.
//!
//! The basis lives on the sign coordinates of linear extensions inside the
//! tournament cube {-1,+1}^{n(n-1)/2}: monomials are products of pair
//! coordinates, selected greedily in degree order so that every prefix spans
//! the restrictions of polynomials of bounded degree. All filter operators
//! preserve that flag, which makes every conjugated matrix upper-triangular
//! with 0/1 diagonal. All arithmetic is exact rational.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{charpoly_rat, poly_mul, rat, IntMatrix, Rat, RatMatrix};
use crate::filters::{all_filters, b_decomposition, filter_matrix, Filter};
use crate::pedestal::{EpsilonMask, LinearForm, PedestalMatrix};
use crate::poset::{LinearExtension, Poset};

/// Sign coordinates of every linear extension: one value in {-1,+1} per
/// element pair (i < j), +1 iff rank(i) < rank(j).
#[derive(Debug, Clone)]
pub struct SignCoordinates {
    pub pairs: Vec<(usize, usize)>,
    /// one vector per extension, canonical order
    pub vectors: Vec<Vec<i8>>,
}

pub fn sign_coordinates(poset: &Poset, exts: &[LinearExtension]) -> SignCoordinates {
    let n = poset.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    let vectors = exts
        .iter()
        .map(|e| {
            pairs
                .iter()
                .map(|&(i, j)| if e.rank(i) < e.rank(j) { 1 } else { -1 })
                .collect()
        })
        .collect();
    SignCoordinates { pairs, vectors }
}

/// The degree-ordered monomial basis adapted to the filtration.
#[derive(Debug, Clone)]
pub struct FlagBasis {
    /// selected monomials as sorted lists of element pairs
    pub monomials: Vec<Vec<(usize, usize)>>,
    pub degrees: Vec<usize>,
    /// columns are restrictions of the monomials to Tot_X (entries +-1)
    pub w: RatMatrix,
    pub w_inv: RatMatrix,
    /// integer copies for fast conjugation: w_adj = det * W^-1
    w_int: IntMatrix,
    w_adj: IntMatrix,
    det: BigInt,
    dim: usize,
}

impl FlagBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn monomial_value(ext: &LinearExtension, pairs: &[(usize, usize)]) -> i64 {
    let mut v = 1i64;
    for &(i, j) in pairs {
        if ext.rank(i) > ext.rank(j) {
            v = -v;
        }
    }
    v
}

/// Greedy selection in order of degree, then lexicographic subset order,
/// keeping monomials that increase rank under exact rational elimination.
/// Pairs comparable in the poset have constant +1 coordinate on Tot_X and
/// can never contribute new rank, so candidates range over incomparable
/// pairs only; the selected basis is identical to full enumeration.
pub fn build_flag_basis(poset: &Poset, exts: &[LinearExtension]) -> FlagBasis {
    let n = poset.n();
    let dim = exts.len();
    let mut incomparable = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !poset.comparable(i, j) {
                incomparable.push((i, j));
            }
        }
    }

    let mut monomials: Vec<Vec<(usize, usize)>> = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(dim);
    // row-echelon accumulator over the rationals: (pivot index, reduced row)
    let mut echelon: Vec<(usize, Vec<Rat>)> = Vec::new();

    'outer: for degree in 0..=incomparable.len() {
        for combo in combinations(incomparable.len(), degree) {
            let pairs: Vec<(usize, usize)> = combo.iter().map(|&i| incomparable[i]).collect();
            let col: Vec<i64> = exts.iter().map(|e| monomial_value(e, &pairs)).collect();
            let mut reduced: Vec<Rat> = col.iter().map(|&v| rat(v)).collect();
            for (pivot, row) in &echelon {
                if !reduced[*pivot].is_zero() {
                    let factor = reduced[*pivot].clone();
                    for (r, e) in reduced.iter_mut().zip(row) {
                        *r -= &factor * e;
                    }
                }
            }
            if let Some(pivot) = reduced.iter().position(|v| !v.is_zero()) {
                let lead = reduced[pivot].clone();
                for r in reduced.iter_mut() {
                    *r /= &lead;
                }
                echelon.push((pivot, reduced));
                monomials.push(pairs);
                degrees.push(degree);
                columns.push(col);
                if monomials.len() == dim {
                    break 'outer;
                }
            }
        }
    }
    assert_eq!(
        monomials.len(),
        dim,
        "cube monomials must span the functions on Tot_X"
    );

    let mut w = RatMatrix::zero(dim, dim);
    for (s, col) in columns.iter().enumerate() {
        for (t, &v) in col.iter().enumerate() {
            w.set(t, s, rat(v));
        }
    }
    let w_inv = w.inverse().expect("flag basis matrix is invertible");
    let w_int = IntMatrix::from_fn(dim, |i, j| BigInt::from(columns[j][i]));
    let det = w_int.bareiss_det();
    let w_adj = IntMatrix::from_fn(dim, |i, j| {
        let scaled = w_inv.get(i, j) * Rat::from(det.clone());
        assert!(scaled.is_integer());
        scaled.to_integer()
    });
    FlagBasis {
        monomials,
        degrees,
        w,
        w_inv,
        w_int,
        w_adj,
        det,
        dim,
    }
}

/// Lexicographic k-subsets of 0..m.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..m {
            if m - i < k - acc.len() {
                break;
            }
            acc.push(i);
            rec(i + 1, m, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// W^-1 A W; errors if the result is not upper-triangular.
pub fn triangularize(matrix: &IntMatrix, basis: &FlagBasis) -> Result<RatMatrix> {
    // det * W^-1 A W stays integral, so the whole conjugation runs in BigInt
    // and only the final division by det produces rationals.
    let p = basis.w_adj.mul(matrix).mul(&basis.w_int);
    for i in 0..basis.dim {
        for j in 0..i {
            if !p.get(i, j).is_zero() {
                return Err(Error::NotTriangular { row: i, col: j });
            }
        }
    }
    let mut t = RatMatrix::zero(basis.dim, basis.dim);
    for i in 0..basis.dim {
        for j in i..basis.dim {
            t.set(i, j, Rat::new(p.get(i, j).clone(), basis.det.clone()));
        }
    }
    Ok(t)
}

/// Combinatorial shortcut for the diagonal of W^-1 M_F W: entry for
/// monomial S is 1 iff no pair of S is separated by F.
pub fn filter_diagonal(f: &Filter, basis: &FlagBasis) -> Vec<i64> {
    basis
        .monomials
        .iter()
        .map(|pairs| {
            if pairs.iter().all(|&(i, j)| f.floor(i) == f.floor(j)) {
                1
            } else {
                0
            }
        })
        .collect()
}

/// Pointwise check that M_F maps each basis monomial to a signed monomial
/// of no larger degree: x_S(FP) = c * x_{S'}(P) with S' the pairs of S not
/// separated by F. Combined with the prefix-span property of the basis this
/// certifies upper-triangularity without a full conjugation.
pub fn check_filter_preserves_flag(
    f: &Filter,
    basis: &FlagBasis,
    exts: &[LinearExtension],
) -> bool {
    for pairs in &basis.monomials {
        let kept: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(i, j)| f.floor(i) == f.floor(j))
            .collect();
        let mut sign = 1i64;
        for &(i, j) in pairs {
            if f.floor(i) < f.floor(j) {
                // separated, forced +1
            } else if f.floor(i) > f.floor(j) {
                sign = -sign;
            }
        }
        for p in exts {
            let fp = crate::filters::apply_filter(f, p).expect("same poset");
            if monomial_value(&fp, pairs) != sign * monomial_value(p, &kept) {
                return false;
            }
        }
    }
    true
}

/// An eigenvalue of M^X: integer linear form in the a_eps with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenForm {
    pub coeffs: LinearForm,
    pub multiplicity: usize,
}

/// Everything the spectral pipeline needs for one poset, built once.
pub struct SpectralAnalysis {
    poset: Poset,
    pm: PedestalMatrix,
    basis: FlagBasis,
    /// lambda_S per basis monomial, before merging
    per_monomial: Vec<LinearForm>,
    forms: Vec<EigenForm>,
}

impl SpectralAnalysis {
    pub fn new(poset: &Poset, cap: usize) -> Result<SpectralAnalysis> {
        let pm = PedestalMatrix::build(poset, cap)?;
        let exts = pm.extensions().to_vec();
        let basis = build_flag_basis(poset, &exts);
        let dim = pm.dim();

        let mut per_monomial = vec![LinearForm::new(); dim];
        for mask in pm.variables() {
            let b = pm.b_matrix(&mask);
            let t = triangularize(&b, &basis)?;
            // independent route: Eq-15 signed filter diagonals
            let decomp = b_decomposition(poset, &pm, &mask)?;
            let mut shortcut = vec![0i64; dim];
            for term in &decomp.terms {
                for f in &term.filters {
                    for (s, d) in filter_diagonal(f, &basis).iter().enumerate() {
                        shortcut[s] += term.sign * d;
                    }
                }
            }
            for s in 0..dim {
                let diag = t.get(s, s);
                assert!(diag.is_integer(), "B diagonal must be integral");
                let value = diag.to_integer();
                assert_eq!(
                    value,
                    BigInt::from(shortcut[s]),
                    "conjugated diagonal disagrees with the inclusion-exclusion route"
                );
                if shortcut[s] != 0 {
                    per_monomial[s].insert(mask.clone(), shortcut[s]);
                }
            }
        }

        // merge equal forms, keeping first-occurrence order
        let mut forms: Vec<EigenForm> = Vec::new();
        for form in &per_monomial {
            match forms.iter_mut().find(|f| f.coeffs == *form) {
                Some(f) => f.multiplicity += 1,
                None => forms.push(EigenForm {
                    coeffs: form.clone(),
                    multiplicity: 1,
                }),
            }
        }

        // the S = empty-set form is the row-sum (Perron) eigenvalue
        let row_sum = pm.row_sum_form()?;
        assert_eq!(per_monomial[0], row_sum, "main eigenvalue mismatch");
        assert_eq!(
            forms.iter().map(|f| f.multiplicity).sum::<usize>(),
            dim,
            "multiplicities must sum to |Tot_X|"
        );

        Ok(SpectralAnalysis {
            poset: poset.clone(),
            pm,
            basis,
            per_monomial,
            forms,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn pedestal_matrix(&self) -> &PedestalMatrix {
        &self.pm
    }

    pub fn basis(&self) -> &FlagBasis {
        &self.basis
    }

    pub fn per_monomial(&self) -> &[LinearForm] {
        &self.per_monomial
    }

    pub fn eigenvalues(&self) -> &[EigenForm] {
        &self.forms
    }

    /// Every W^-1 M_F W must be upper-triangular with 0/1 diagonal equal to
    /// the combinatorial shortcut.
    pub fn check_filter_triangularity(&self) -> Result<()> {
        let exts = self.pm.extensions();
        for f in all_filters(&self.poset) {
            let t = triangularize(&filter_matrix(exts, &f), &self.basis)?;
            let shortcut = filter_diagonal(&f, &self.basis);
            for s in 0..self.basis.dim() {
                assert_eq!(
                    t.get(s, s),
                    &rat(shortcut[s]),
                    "filter diagonal shortcut mismatch"
                );
            }
        }
        Ok(())
    }

    /// Solvability of the operator algebra: conjugated commutators of the B
    /// matrices are
    /// strictly upper-triangular.
    pub fn check_commutator_solvability(&self) -> Result<()> {
        let m = self.pm.variables().len();
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        self.check_commutator_pairs(&pairs)
    }

    /// Same check restricted to the given index pairs into `variables()`.
    pub fn check_commutator_pairs(&self, pairs: &[(usize, usize)]) -> Result<()> {
        let masks = self.pm.variables();
        let bs: Vec<IntMatrix> = masks.iter().map(|m| self.pm.b_matrix(m)).collect();
        for &(i, j) in pairs {
            let (a, b) = (&bs[i], &bs[j]);
            let comm = a.mul(b).sub(&b.mul(a));
            let t = triangularize(&comm, &self.basis)?;
            for s in 0..self.basis.dim() {
                assert!(
                    t.get(s, s).is_zero(),
                    "commutator must vanish on the graded diagonal"
                );
            }
        }
        Ok(())
    }

    /// Specialize M^X at seeded integer draws and compare its exact
    /// characteristic polynomial with the product of specialized eigenforms.
    pub fn verify_spectrum(&self, seed: u64, draws: usize) -> Result<SpectrumReport> {
        let masks = self.pm.variables();
        let dim = self.pm.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for draw in 0..draws {
            let values: BTreeMap<EpsilonMask, i64> = masks
                .iter()
                .map(|m| (m.clone(), rng.gen_range(-99..=99)))
                .collect();
            let specialized = IntMatrix::from_fn(dim, |i, j| {
                BigInt::from(values[self.pm.entry(i, j)])
            });
            let charpoly = specialized.charpoly();
            let mut product = vec![BigInt::one()];
            for form in &self.forms {
                let lambda: i64 = form.coeffs.iter().map(|(m, c)| c * values[m]).sum();
                let factor = vec![BigInt::from(-lambda), BigInt::one()];
                for _ in 0..form.multiplicity {
                    product = poly_mul(&product, &factor);
                }
            }
            if charpoly != product {
                return Err(Error::SpectrumMismatch { draw });
            }
        }
        Ok(SpectrumReport {
            dim,
            seed,
            draws,
            distinct_eigenvalues: self.forms.len(),
        })
    }

    /// Specialize every realized mask to an exact rational and report the
    /// algebraic/geometric multiplicity of each distinct eigenvalue.
    pub fn jordan_probe(&self, specialization: &BTreeMap<EpsilonMask, Rat>) -> JordanReport {
        let dim = self.pm.dim();
        for mask in self.pm.variables() {
            assert!(
                specialization.contains_key(&mask),
                "specialization must assign every realized mask ({})",
                mask.name()
            );
        }
        let m = {
            let mut m = RatMatrix::zero(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    m.set(i, j, specialization[self.pm.entry(i, j)].clone());
                }
            }
            m
        };
        // group specialized eigenforms by value
        let mut grouped: Vec<(Rat, usize)> = Vec::new();
        for form in &self.forms {
            let mut lambda = Rat::zero();
            for (mask, &c) in &form.coeffs {
                lambda += rat(c) * &specialization[mask];
            }
            match grouped.iter_mut().find(|(v, _)| *v == lambda) {
                Some((_, mult)) => *mult += form.multiplicity,
                None => grouped.push((lambda, form.multiplicity)),
            }
        }
        // verify the factorization against the exact characteristic polynomial
        let charpoly = charpoly_rat(&m);
        let mut product = vec![Rat::one()];
        for (lambda, mult) in &grouped {
            for _ in 0..*mult {
                let mut next = vec![Rat::zero(); product.len() + 1];
                for (k, c) in product.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * lambda;
                }
                product = next;
            }
        }
        assert_eq!(charpoly, product, "eigenform factorization must be exact");

        let entries: Vec<JordanEntry> = grouped
            .into_iter()
            .map(|(lambda, algebraic)| {
                let mut shifted = m.clone();
                for i in 0..dim {
                    let v = shifted.get(i, i) - &lambda;
                    shifted.set(i, i, v);
                }
                let geometric = dim - shifted.rank();
                JordanEntry {
                    eigenvalue: lambda,
                    algebraic,
                    geometric,
                }
            })
            .collect();
        let diagonalizable = entries.iter().all(|e| e.geometric == e.algebraic);
        JordanReport {
            dim,
            entries,
            diagonalizable,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub dim: usize,
    pub seed: u64,
    pub draws: usize,
    pub distinct_eigenvalues: usize,
}

#[derive(Debug, Clone)]
pub struct JordanEntry {
    pub eigenvalue: Rat,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone)]
pub struct JordanReport {
    pub dim: usize,
    pub entries: Vec<JordanEntry>,
    pub diagonalizable: bool,
}

/// The n = 2 tournament base case: the three 2x2 filter matrices and their
/// conjugates under the discrete Fourier transform. The 1/sqrt(2) scale of
/// the transform cancels in conjugation, so the computation is rational.
pub fn n2_base_case() -> (bool, Vec<[[i64; 2]; 2]>) {
    let mk = |rows: [[i64; 2]; 2]| {
        let mut m = RatMatrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, rat(rows[i][j]));
            }
        }
        m
    };
    let n1 = mk([[1, 0], [1, 0]]);
    let n2 = mk([[1, 0], [0, 1]]);
    let n3 = mk([[0, 1], [0, 1]]);
    let u = mk([[1, 1], [1, -1]]);
    let u_inv = u.inverse().expect("U invertible");
    let expected = [[[1, 1], [0, 0]], [[1, 0], [0, 1]], [[1, -1], [0, 0]]];
    let mut out = Vec::new();
    let mut ok = true;
    for (k, n) in [n1, n2, n3].iter().enumerate() {
        let conj = u.mul(n).mul(&u_inv);
        let mut as_int = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let v = conj.get(i, j);
                assert!(v.is_integer());
                as_int[i][j] = int_to_i64(&v.to_integer());
                if as_int[i][j] != expected[k][i][j] {
                    ok = false;
                }
            }
        }
        out.push(as_int);
    }
    (ok, out)
}

fn int_to_i64(v: &BigInt) -> i64 {
    use num::ToPrimitive;
    v.to_i64().expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pedestal::form_to_string;
    use crate::poset::tests::uvw;
    use crate::poset::DEFAULT_EXTENSION_CAP;

    fn shape(parts: &[usize]) -> Poset {
        Poset::from_partition(parts).unwrap()
    }

    fn antichain(n: usize) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        Poset::from_covers(&names, &[]).unwrap()
    }

    fn mask(s: &str) -> EpsilonMask {
        EpsilonMask::from_bitstring(s).unwrap()
    }

    /// Build the mask whose pedestal monomial has the given exponents; used
    /// to translate the examples' local variable numbering.
    fn mask_of_exponents(n: usize, exps: &[usize]) -> EpsilonMask {
        for m in EpsilonMask::all(n) {
            let mono = crate::pedestal::monomial_of_mask(n, &m);
            let mut e = mono.exponents.clone();
            while e.len() < exps.len() {
                e.push(0);
            }
            let mut target = exps.to_vec();
            while target.len() < e.len() {
                target.push(0);
            }
            if e == target {
                return m;
            }
        }
        panic!("no mask with exponents {exps:?}");
    }

    #[test]
    fn sign_coordinates_basic() {
        let chain = shape(&[1, 1, 1]);
        let exts = chain.linear_extensions(10).unwrap();
        let sc = sign_coordinates(&chain, &exts);
        assert_eq!(sc.vectors, vec![vec![1, 1, 1]]);

        let a2 = antichain(2);
        let exts = a2.linear_extensions(10).unwrap();
        let sc = sign_coordinates(&a2, &exts);
        assert_eq!(sc.vectors.len(), 2);
        assert_eq!(sc.vectors[0], vec![1]);
        assert_eq!(sc.vectors[1], vec![-1]);

        let p = shape(&[3, 2]);
        let exts = p.linear_extensions(100).unwrap();
        let sc = sign_coordinates(&p, &exts);
        assert_eq!(sc.pairs.len(), 10);
        let mut distinct = sc.vectors.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 5, "sign vectors are injective");
        // pairs comparable in the poset are constantly +1
        for (k, &(i, j)) in sc.pairs.iter().enumerate() {
            if p.less(i, j) {
                assert!(sc.vectors.iter().all(|v| v[k] == 1));
            }
        }
    }

    #[test]
    fn flag_basis_small() {
        let chain = shape(&[1, 1, 1]);
        let exts = chain.linear_extensions(10).unwrap();
        let basis = build_flag_basis(&chain, &exts);
        assert_eq!(basis.monomials, vec![Vec::<(usize, usize)>::new()]);

        let a2 = antichain(2);
        let exts = a2.linear_extensions(10).unwrap();
        let basis = build_flag_basis(&a2, &exts);
        assert_eq!(basis.monomials, vec![vec![], vec![(0, 1)]]);
        assert_eq!(basis.degrees, vec![0, 1]);
    }

    #[test]
    fn flag_basis_prefix_spans() {
        // the first d_k columns span exactly the degree <= k restrictions
        let p = shape(&[3, 2]);
        let exts = p.linear_extensions(100).unwrap();
        let basis = build_flag_basis(&p, &exts);
        assert!(basis.degrees.windows(2).all(|w| w[0] <= w[1]));
        let dim = exts.len();
        let sc = sign_coordinates(&p, &exts);
        for k in 0..=*basis.degrees.last().unwrap() {
            let prefix: Vec<usize> = (0..dim).filter(|&s| basis.degrees[s] <= k).collect();
            // stack prefix columns with ALL degree <= k monomial restrictions
            let mut all_cols: Vec<Vec<i64>> = Vec::new();
            for s in &prefix {
                all_cols.push(
                    exts.iter()
                        .map(|e| monomial_value(e, &basis.monomials[*s]))
                        .collect(),
                );
            }
            let prefix_count = all_cols.len();
            for subset in all_subsets(sc.pairs.len()) {
                if subset.len() > k {
                    continue;
                }
                let pairs: Vec<(usize, usize)> =
                    subset.iter().map(|&i| sc.pairs[i]).collect();
                all_cols.push(exts.iter().map(|e| monomial_value(e, &pairs)).collect());
            }
            let rows = all_cols.len();
            let mut m = RatMatrix::zero(rows, dim);
            for (r, col) in all_cols.iter().enumerate() {
                for (c, &v) in col.iter().enumerate() {
                    m.set(r, c, rat(v));
                }
            }
            assert_eq!(m.rank(), prefix_count, "prefix must span degree <= {k}");
        }
    }

    fn all_subsets(m: usize) -> Vec<Vec<usize>> {
        (0..(1u32 << m))
            .map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn triangularize_identity_and_antichain2() {
        let a2 = antichain(2);
        let exts = a2.linear_extensions(10).unwrap();
        let basis = build_flag_basis(&a2, &exts);
        let t = triangularize(&IntMatrix::identity(2), &basis).unwrap();
        assert_eq!(t, RatMatrix::identity(2));
        // the three filters give diagonals (1,0), (1,1), (1,0)
        let mut diags = Vec::new();
        for f in all_filters(&a2) {
            let t = triangularize(&filter_matrix(&exts, &f), &basis).unwrap();
            diags.push((t.get(0, 0).clone(), t.get(1, 1).clone()));
        }
        diags.sort();
        assert_eq!(
            diags,
            vec![
                (rat(1), rat(0)),
                (rat(1), rat(0)),
                (rat(1), rat(1)),
            ]
        );
    }

    #[test]
    fn filter_diagonal_matches_conjugation_on_3_2() {
        let p = shape(&[3, 2]);
        let analysis = SpectralAnalysis::new(&p, 100).unwrap();
        analysis.check_filter_triangularity().unwrap();
        // fast flag-preservation check agrees
        let exts = analysis.pedestal_matrix().extensions();
        for f in all_filters(&p) {
            assert!(check_filter_preserves_flag(&f, analysis.basis(), exts));
        }
    }

    #[test]
    fn filter_diagonal_extremes() {
        let p = shape(&[3, 2]);
        let exts = p.linear_extensions(100).unwrap();
        let basis = build_flag_basis(&p, &exts);
        let coarse = Filter::coarsest(5);
        assert!(filter_diagonal(&coarse, &basis).iter().all(|&d| d == 1));
        let chamber = Filter::from_extension(&exts[0]);
        let diag = filter_diagonal(&chamber, &basis);
        assert_eq!(diag[0], 1);
        assert!(diag[1..].iter().all(|&d| d == 0));
    }

    #[test]
    fn eigenvalues_par31() {
        let analysis = SpectralAnalysis::new(&uvw(), 100).unwrap();
        let forms = analysis.eigenvalues();
        assert_eq!(forms.len(), 3);
        assert!(forms.iter().all(|f| f.multiplicity == 1));
        let strings: std::collections::BTreeSet<String> =
            forms.iter().map(|f| form_to_string(&f.coeffs)).collect();
        let expect: std::collections::BTreeSet<String> = [
            "a_00 + a_01 + a_10",
            "a_00 - a_01",
            "a_00 - a_10",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(strings, expect);
    }

    #[test]
    fn eigenvalues_3_2_match_example_1() {
        let p = shape(&[3, 2]);
        let analysis = SpectralAnalysis::new(&p, 100).unwrap();
        // the example's legend: a1..a5 = x1^5, x1^4 x2, x1^3 x2^2, x1^2 x2^3, x1^2 x2^2 x3
        let a1 = mask_of_exponents(5, &[5]);
        let a2 = mask_of_exponents(5, &[4, 1]);
        let a3 = mask_of_exponents(5, &[3, 2]);
        let a4 = mask_of_exponents(5, &[2, 3]);
        let a5 = mask_of_exponents(5, &[2, 2, 1]);
        let form = |coeffs: &[(&EpsilonMask, i64)]| -> LinearForm {
            coeffs.iter().map(|(m, c)| ((*m).clone(), *c)).collect()
        };
        let expected = vec![
            form(&[(&a1, 1), (&a3, -1)]),
            form(&[(&a1, 1), (&a2, 1), (&a4, -1), (&a5, -1)]),
            form(&[(&a1, 1), (&a2, -1), (&a4, 1), (&a5, -1)]),
            form(&[(&a1, 1), (&a2, -1), (&a4, -1), (&a5, 1)]),
            form(&[(&a1, 1), (&a2, 1), (&a3, 1), (&a4, 1), (&a5, 1)]),
        ];
        let got: Vec<LinearForm> = analysis
            .eigenvalues()
            .iter()
            .map(|f| {
                assert_eq!(f.multiplicity, 1);
                f.coeffs.clone()
            })
            .collect();
        for e in &expected {
            assert!(got.contains(e), "missing eigenform {}", form_to_string(e));
        }
        assert_eq!(got.len(), expected.len());
    }

    #[test]
    fn eigenvalues_3_1_1_multiplicities() {
        let analysis = SpectralAnalysis::new(&shape(&[3, 1, 1]), 100).unwrap();
        let forms = analysis.eigenvalues();
        assert_eq!(forms.iter().map(|f| f.multiplicity).sum::<usize>(), 6);
        assert_eq!(forms.len(), 5);
        // (a1 - a3) carries multiplicity 2
        let a1 = mask_of_exponents(5, &[5]);
        let a3 = mask_of_exponents(5, &[3, 2]);
        let target: LinearForm = [(a1, 1), (a3, -1)].into_iter().collect();
        let f = forms.iter().find(|f| f.coeffs == target).unwrap();
        assert_eq!(f.multiplicity, 2);
    }

    #[test]
    fn eigenvalues_singleton() {
        let analysis = SpectralAnalysis::new(&shape(&[1]), 10).unwrap();
        let forms = analysis.eigenvalues();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].multiplicity, 1);
        assert_eq!(form_to_string(&forms[0].coeffs), "a_∅");
    }

    #[test]
    fn verify_spectrum_runs() {
        for poset in [uvw(), shape(&[3, 2])] {
            let analysis = SpectralAnalysis::new(&poset, 100).unwrap();
            for seed in 0..5 {
                analysis.verify_spectrum(seed, 2).unwrap();
            }
        }
    }

    #[test]
    fn verify_zero_specialization_gives_x_pow_n() {
        // all a_eps := 0 -> characteristic polynomial x^{|Tot|}
        let analysis = SpectralAnalysis::new(&shape(&[3, 2]), 100).unwrap();
        let dim = analysis.pedestal_matrix().dim();
        let zero = IntMatrix::zero(dim);
        let cp = zero.charpoly();
        for c in cp.iter().take(dim) {
            assert!(c.is_zero());
        }
        assert_eq!(cp[dim], BigInt::one());
    }

    #[test]
    fn jordan_probe_example_0() {
        // par31 with a00 = 5, a01 = 1, a10 = -2: Jordan block at a00 - a01
        let analysis = SpectralAnalysis::new(&uvw(), 100).unwrap();
        let spec: BTreeMap<EpsilonMask, Rat> = [
            (mask("00"), rat(5)),
            (mask("01"), rat(1)),
            (mask("10"), rat(-2)),
        ]
        .into_iter()
        .collect();
        let report = analysis.jordan_probe(&spec);
        assert!(!report.diagonalizable);
        let degenerate = report
            .entries
            .iter()
            .find(|e| e.eigenvalue == rat(4))
            .unwrap();
        assert_eq!(degenerate.algebraic, 2);
        assert_eq!(degenerate.geometric, 1);
        let simple = report.entries.iter().find(|e| e.eigenvalue == rat(7)).unwrap();
        assert_eq!(simple.algebraic, 1);
        assert_eq!(simple.geometric, 1);
    }

    #[test]
    fn jordan_probe_generic_is_diagonalizable() {
        let analysis = SpectralAnalysis::new(&uvw(), 100).unwrap();
        let spec: BTreeMap<EpsilonMask, Rat> = [
            (mask("00"), rat(17)),
            (mask("01"), rat(5)),
            (mask("10"), rat(-3)),
        ]
        .into_iter()
        .collect();
        let report = analysis.jordan_probe(&spec);
        assert!(report.diagonalizable);
        assert_eq!(report.entries.len(), 3);
    }

    #[test]
    fn jordan_probe_all_zero() {
        let analysis = SpectralAnalysis::new(&uvw(), 100).unwrap();
        let spec: BTreeMap<EpsilonMask, Rat> = [
            (mask("00"), rat(0)),
            (mask("01"), rat(0)),
            (mask("10"), rat(0)),
        ]
        .into_iter()
        .collect();
        let report = analysis.jordan_probe(&spec);
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].algebraic, 3);
        assert_eq!(report.entries[0].geometric, 3);
    }

    #[test]
    fn n2_base_case_matches() {
        let (ok, conjugates) = n2_base_case();
        assert!(ok);
        assert_eq!(conjugates[0], [[1, 1], [0, 0]]);
        assert_eq!(conjugates[1], [[1, 0], [0, 1]]);
        assert_eq!(conjugates[2], [[1, -1], [0, 0]]);
    }

    #[test]
    fn commutator_solvability_3_1_1() {
        let analysis = SpectralAnalysis::new(&shape(&[3, 1, 1]), 100).unwrap();
        analysis.check_commutator_solvability().unwrap();
    }

    #[test]
    fn default_cap_is_respected() {
        let p = antichain(7);
        assert!(matches!(
            SpectralAnalysis::new(&p, DEFAULT_EXTENSION_CAP),
            Err(Error::SizeCapExceeded { .. })
        ));
    }
}
