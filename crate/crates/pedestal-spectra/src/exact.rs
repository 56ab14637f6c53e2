//! Exact integer and rational matrix arithmetic. No floating point is used
//! anywhere in the spectral path.

use num::{BigInt, BigRational, One, Zero};

pub type Rat = BigRational;

pub fn rat(i: i64) -> Rat {
    Rat::from_integer(BigInt::from(i))
}

/// Dense square matrix over arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix::from_fn(self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        let c = BigInt::from(c);
        IntMatrix::from_fn(self.n, |i, j| self.get(i, j) * &c)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn bareiss_det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                // pivot search
                let mut found = None;
                for r in k + 1..n {
                    if !a[r * n + k].is_zero() {
                        found = Some(r);
                        break;
                    }
                }
                match found {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }

    /// Characteristic polynomial det(xI - A), monic, coefficients in
    /// ascending degree order. Computed fraction-free: exact Bareiss
    /// determinants of (tI - A) at t = 0..n, then Newton interpolation;
    /// the result is asserted integral.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.n;
        let points: Vec<BigInt> = (0..=n).map(|t| BigInt::from(t as i64)).collect();
        let values: Vec<BigInt> = points
            .iter()
            .map(|t| {
                IntMatrix::from_fn(n, |i, j| {
                    let mut v = -self.get(i, j).clone();
                    if i == j {
                        v += t;
                    }
                    v
                })
                .bareiss_det()
            })
            .collect();
        let xs: Vec<Rat> = points.iter().cloned().map(Rat::from_integer).collect();
        let ys: Vec<Rat> = values.iter().cloned().map(Rat::from_integer).collect();
        let poly = newton_interpolate(&xs, &ys);
        assert_eq!(poly.len(), n + 1, "charpoly degree");
        poly.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "charpoly coefficient not integral");
                c.to_integer()
            })
            .collect()
    }
}

/// Newton divided-difference interpolation; returns coefficients in
/// ascending degree order (length = number of points).
fn newton_interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let m = xs.len();
    let mut dd = ys.to_vec();
    // dd[i] becomes the divided difference f[x_0..x_i]
    for level in 1..m {
        for i in (level..m).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // expand Newton form
    let mut poly = vec![Rat::zero(); m];
    let mut basis = vec![Rat::zero(); m];
    basis[0] = Rat::one();
    let mut basis_len = 1;
    for (i, coeff) in dd.iter().enumerate() {
        for (k, b) in basis.iter().enumerate().take(basis_len) {
            poly[k] += coeff * b;
        }
        if i + 1 < m {
            // basis *= (x - xs[i])
            let mut next = vec![Rat::zero(); m];
            for k in 0..basis_len {
                next[k + 1] += &basis[k];
                next[k] -= &basis[k] * &xs[i];
            }
            basis = next;
            basis_len += 1;
        }
    }
    poly
}

/// Multiply two integer polynomials (ascending coefficients).
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Dense matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut r = Self::zero(m.n, m.n);
        for i in 0..m.n {
            for j in 0..m.n {
                r.set(i, j, Rat::from_integer(m.get(i, j).clone()));
            }
        }
        r
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Gauss-Jordan inverse; None if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot, j).clone());
                    a.set(pivot, j, tmp);
                    let tmp = inv.get(col, j).clone();
                    inv.set(col, j, inv.get(pivot, j).clone());
                    inv.set(pivot, j, tmp);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &p);
                inv.set(col, j, inv.get(col, j) / &p);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Rank by rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let pivot = (rank..a.rows).find(|&r| !a.get(r, col).is_zero());
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for j in 0..a.cols {
                    let tmp = a.get(rank, j).clone();
                    a.set(rank, j, a.get(pivot, j).clone());
                    a.set(pivot, j, tmp);
                }
            }
            let p = a.get(rank, col).clone();
            for r in rank + 1..a.rows {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) / &p;
                for j in col..a.cols {
                    let v = a.get(r, j) - &factor * a.get(rank, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub fn is_integer_entry(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_integer()
    }
}

/// Characteristic polynomial of a rational matrix via Faddeev-LeVerrier
/// (division by a scalar stays exact over the rationals). Monic, ascending.
pub fn charpoly_rat(m: &RatMatrix) -> Vec<Rat> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = RatMatrix::identity(n);
    for k in 1..=n {
        mk = m.mul(&mk);
        let mut tr = Rat::zero();
        for i in 0..n {
            tr += mk.get(i, i);
        }
        let c = -tr / rat(k as i64);
        coeffs[n - k] = c.clone();
        for i in 0..n {
            let v = mk.get(i, i) + &c;
            mk.set(i, i, v);
        }
    }
    coeffs
}

pub fn big(i: i64) -> BigInt {
    BigInt::from(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
        let n = rows.len();
        IntMatrix::from_fn(n, |i, j| big(rows[i][j]))
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // independent oracle: recursive cofactor expansion
        fn cofactor_det(m: &IntMatrix) -> BigInt {
            let n = m.n;
            if n == 0 {
                return BigInt::one();
            }
            if n == 1 {
                return m.get(0, 0).clone();
            }
            let mut det = BigInt::zero();
            for j in 0..n {
                let minor = IntMatrix::from_fn(n - 1, |r, c| {
                    m.get(r + 1, if c < j { c } else { c + 1 }).clone()
                });
                let term = m.get(0, j) * cofactor_det(&minor);
                if j % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
        let m = int_matrix(&[
            &[2, -1, 3, 0],
            &[4, 5, -2, 1],
            &[0, 3, 3, -4],
            &[7, -6, 1, 2],
        ]);
        assert_eq!(m.bareiss_det(), cofactor_det(&m));
        let singular = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.bareiss_det(), BigInt::zero());
    }

    #[test]
    fn charpoly_small_cases() {
        // [[2,1],[1,2]] -> (x-1)(x-3) = x^2 - 4x + 3
        let m = int_matrix(&[&[2, 1], &[1, 2]]);
        assert_eq!(m.charpoly(), vec![big(3), big(-4), big(1)]);
        // identity 3x3 -> (x-1)^3
        let id = IntMatrix::identity(3);
        assert_eq!(id.charpoly(), vec![big(-1), big(3), big(-3), big(1)]);
        // zero matrix -> x^n
        let z = IntMatrix::zero(3);
        assert_eq!(z.charpoly(), vec![big(0), big(0), big(0), big(1)]);
    }

    #[test]
    fn charpoly_rat_agrees_with_int() {
        let m = int_matrix(&[&[1, 2, 0], &[-3, 4, 5], &[0, 1, -2]]);
        let a = m.charpoly();
        let b = charpoly_rat(&RatMatrix::from_int(&m));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(Rat::from_integer(x.clone()), *y);
        }
    }

    #[test]
    fn inverse_and_rank() {
        let m = int_matrix(&[&[1, 2], &[3, 5]]);
        let r = RatMatrix::from_int(&m);
        let inv = r.inverse().unwrap();
        assert_eq!(r.mul(&inv), RatMatrix::identity(2));
        assert_eq!(r.rank(), 2);
        let s = RatMatrix::from_int(&int_matrix(&[&[1, 2], &[2, 4]]));
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn poly_mul_basic() {
        // (x + 1)(x - 1) = x^2 - 1
        let a = vec![big(1), big(1)];
        let b = vec![big(-1), big(1)];
        assert_eq!(poly_mul(&a, &b), vec![big(-1), big(0), big(1)]);
    }
}
