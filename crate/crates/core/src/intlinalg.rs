//! Exact integer linear algebra.
//!
//! Everything downstream reduces to three operations on dense matrices over
//! arbitrary-precision integers: Smith normal form `d = u * m * v` with
//! unimodular `u`, `v` and a nonnegative diagonal in which each entry
//! divides the next; a basis of the integer kernel; and the invariants
//! (free rank plus invariant factors) of a quotient of free abelian groups.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    /// A subgroup generator is not an integer combination of the ambient basis.
    #[error("subgroup generator {index} is not an integer combination of the ambient basis")]
    SubgroupNotContained { index: usize },
    /// The ambient vectors fail to be Z-linearly independent.
    #[error("ambient vectors are not Z-linearly independent")]
    AmbientNotABasis,
    #[error("vector has length {found}, ambient dimension is {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// Dense row-major matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Small-literal constructor, mainly for tests.
    pub fn from_i64<const R: usize, const C: usize>(a: [[i64; C]; R]) -> Self {
        IntMatrix {
            rows: R,
            cols: C,
            entries: a.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }
                })
            })
    }

    pub fn mul_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x += y;
        }
        out
    }

    pub fn sub_mat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x -= y;
        }
        out
    }

    pub fn neg_mat(&self) -> IntMatrix {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x = -std::mem::take(x);
        }
        out
    }

    /// Determinant by the fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[(i, j)] = q;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 { -d } else { d }
    }

    /// Inverse over the integers; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<IntMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let mut eng = SnfEngine::new(self.clone(), true, true, false);
        eng.reduce();
        if !eng.a.is_identity() {
            return None;
        }
        Some(eng.v.unwrap().mul_mat(&eng.u.unwrap()))
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.mul_mat(rhs)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Result of `snf`: `d = u * m * v`, `u` and `v` unimodular, `d` diagonal
/// with nonnegative entries, each dividing the next.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Isomorphism type of a finitely generated abelian group:
/// free rank plus invariant factors (each >= 2, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Nearest-integer quotient: the remainder `x - q*d` has absolute value
/// at most `|d|/2`.
fn div_rounded(x: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = x.div_rem(d);
    if &r.abs() * 2 > d.abs() {
        if r.sign() == d.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Row/column reduction state. Transforms are accumulated on demand;
/// `v_inv` tracks the inverse of `v` by applying inverse elementary
/// operations on the opposite side.
struct SnfEngine {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl SnfEngine {
    fn new(a: IntMatrix, want_u: bool, want_v: bool, want_v_inv: bool) -> Self {
        let (r, c) = (a.rows(), a.cols());
        SnfEngine {
            a,
            u: want_u.then(|| IntMatrix::identity(r)),
            v: want_v.then(|| IntMatrix::identity(c)),
            v_inv: want_v_inv.then(|| IntMatrix::identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.a.cols() {
            let tmp = self.a[(i, col)].clone();
            self.a[(i, col)] = self.a[(j, col)].clone();
            self.a[(j, col)] = tmp;
        }
        if let Some(u) = &mut self.u {
            for col in 0..u.cols() {
                let tmp = u[(i, col)].clone();
                u[(i, col)] = u[(j, col)].clone();
                u[(j, col)] = tmp;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in 0..self.a.rows() {
            let tmp = self.a[(row, i)].clone();
            self.a[(row, i)] = self.a[(row, j)].clone();
            self.a[(row, j)] = tmp;
        }
        if let Some(v) = &mut self.v {
            for row in 0..v.rows() {
                let tmp = v[(row, i)].clone();
                v[(row, i)] = v[(row, j)].clone();
                v[(row, j)] = tmp;
            }
        }
        if let Some(w) = &mut self.v_inv {
            for col in 0..w.cols() {
                let tmp = w[(i, col)].clone();
                w[(i, col)] = w[(j, col)].clone();
                w[(j, col)] = tmp;
            }
        }
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for col in 0..self.a.cols() {
            let t = q * &self.a[(src, col)];
            self.a[(dst, col)] += t;
        }
        if let Some(u) = &mut self.u {
            for col in 0..u.cols() {
                let t = q * &u[(src, col)];
                u[(dst, col)] += t;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in 0..self.a.rows() {
            let t = q * &self.a[(row, src)];
            self.a[(row, dst)] += t;
        }
        if let Some(v) = &mut self.v {
            for row in 0..v.rows() {
                let t = q * &v[(row, src)];
                v[(row, dst)] += t;
            }
        }
        // (V E)^-1 = E^-1 V^-1: subtract q times row dst from row src.
        if let Some(w) = &mut self.v_inv {
            for col in 0..w.cols() {
                let t = q * &w[(dst, col)];
                w[(src, col)] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for col in 0..self.a.cols() {
            let x = std::mem::take(&mut self.a[(i, col)]);
            self.a[(i, col)] = -x;
        }
        if let Some(u) = &mut self.u {
            for col in 0..u.cols() {
                let x = std::mem::take(&mut u[(i, col)]);
                u[(i, col)] = -x;
            }
        }
    }

    /// Entry of smallest nonzero magnitude in the trailing submatrix.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let rows = self.a.rows();
        let cols = self.a.cols();
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            'norm: loop {
                // Clear the pivot column. A nonzero remainder is strictly
                // smaller than the pivot, so swapping it up makes progress.
                let mut i = t + 1;
                while i < rows {
                    if !self.a[(i, t)].is_zero() {
                        let q = div_rounded(&self.a[(i, t)], &self.a[(t, t)]);
                        self.row_axpy(i, t, &-q);
                        if !self.a[(i, t)].is_zero() {
                            self.swap_rows(t, i);
                            continue 'norm;
                        }
                    }
                    i += 1;
                }
                // Clear the pivot row.
                let mut j = t + 1;
                while j < cols {
                    if !self.a[(t, j)].is_zero() {
                        let q = div_rounded(&self.a[(t, j)], &self.a[(t, t)]);
                        self.col_axpy(j, t, &-q);
                        if !self.a[(t, j)].is_zero() {
                            self.swap_cols(t, j);
                            continue 'norm;
                        }
                    }
                    j += 1;
                }
                // The pivot must divide every remaining entry; folding an
                // offending row into the pivot row forces a gcd step.
                let d = self.a[(t, t)].clone();
                for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&self.a[(i, j)] % &d).is_zero() {
                            self.row_axpy(t, i, &BigInt::one());
                            continue 'norm;
                        }
                    }
                }
                break;
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with both unimodular transforms.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut eng = SnfEngine::new(m.clone(), true, true, false);
    eng.reduce();
    SnfResult { d: eng.a, u: eng.u.unwrap(), v: eng.v.unwrap() }
}

/// Basis of the integer kernel `{ x : m x = 0 }`, one vector per zero
/// diagonal entry of the Smith form (columns of `v`).
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut eng = SnfEngine::new(m.clone(), false, true, false);
    eng.reduce();
    let v = eng.v.unwrap();
    let min = m.rows().min(m.cols());
    (0..m.cols())
        .filter(|&i| i >= min || eng.a[(i, i)].is_zero())
        .map(|i| v.col(i))
        .collect()
}

/// Ambient lattice basis in Smith form, prepared for coordinate solves.
struct LatticeBasis {
    k: usize,
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
}

impl LatticeBasis {
    fn new(ambient: &[Vec<BigInt>], dim: usize) -> Result<Self, LinAlgError> {
        let k = ambient.len();
        let mut z = IntMatrix::zeros(dim, k);
        for (j, col) in ambient.iter().enumerate() {
            if col.len() != dim {
                return Err(LinAlgError::LengthMismatch { expected: dim, found: col.len() });
            }
            for i in 0..dim {
                z[(i, j)] = col[i].clone();
            }
        }
        let s = snf(&z);
        if s.rank() != k {
            return Err(LinAlgError::AmbientNotABasis);
        }
        let diag = s.diagonal();
        Ok(LatticeBasis { k, u: s.u, v: s.v, diag })
    }

    /// Integer coordinates of `w` over the ambient basis, or `None` when
    /// `w` is outside the lattice the basis spans.
    fn coordinates(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let uw = self.u.mul_vec(w);
        let mut y = vec![BigInt::zero(); self.k];
        for (i, uwi) in uw.iter().enumerate() {
            if i < self.diag.len() {
                let (q, r) = uwi.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !uwi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Quotient data beyond the isomorphism type: the rank of the subgroup and
/// coordinate vectors (over the ambient basis) representing free generators
/// of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub invariants: AbelianInvariants,
    pub sub_rank: usize,
    pub free_coeffs: Vec<Vec<BigInt>>,
}

/// Invariants of `span(ambient) / span(sub)` together with lifted free
/// generators. Every subgroup generator must be an integer combination of
/// the ambient basis.
pub fn quotient_with_representatives(
    ambient: &[Vec<BigInt>],
    sub: &[Vec<BigInt>],
) -> Result<QuotientResult, LinAlgError> {
    let k = ambient.len();
    let dim = ambient
        .first()
        .map(Vec::len)
        .or_else(|| sub.first().map(Vec::len))
        .unwrap_or(0);

    if k == 0 {
        for (index, w) in sub.iter().enumerate() {
            if w.len() != dim {
                return Err(LinAlgError::LengthMismatch { expected: dim, found: w.len() });
            }
            if !w.iter().all(Zero::is_zero) {
                return Err(LinAlgError::SubgroupNotContained { index });
            }
        }
        return Ok(QuotientResult {
            invariants: AbelianInvariants::free(0),
            sub_rank: 0,
            free_coeffs: Vec::new(),
        });
    }

    let basis = LatticeBasis::new(ambient, dim)?;
    let mut c = IntMatrix::zeros(sub.len(), k);
    for (index, w) in sub.iter().enumerate() {
        if w.len() != dim {
            return Err(LinAlgError::LengthMismatch { expected: dim, found: w.len() });
        }
        let coords = basis
            .coordinates(w)
            .ok_or(LinAlgError::SubgroupNotContained { index })?;
        for j in 0..k {
            c[(index, j)] = coords[j].clone();
        }
    }

    let mut eng = SnfEngine::new(c, false, true, true);
    eng.reduce();
    let min = sub.len().min(k);
    let diag: Vec<BigInt> = (0..min).map(|i| eng.a[(i, i)].clone()).collect();
    let sub_rank = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion: Vec<BigInt> = diag.iter().filter(|x| x.abs() > BigInt::one()).cloned().collect();
    let v_inv = eng.v_inv.unwrap();
    let free_coeffs: Vec<Vec<BigInt>> =
        (sub_rank..k).map(|i| v_inv.row(i).to_vec()).collect();

    Ok(QuotientResult {
        invariants: AbelianInvariants { rank: k - sub_rank, torsion },
        sub_rank,
        free_coeffs,
    })
}

/// Isomorphism type of `span(ambient) / span(sub)`.
pub fn quotient_invariants(
    ambient: &[Vec<BigInt>],
    sub: &[Vec<BigInt>],
) -> Result<AbelianInvariants, LinAlgError> {
    Ok(quotient_with_representatives(ambient, sub)?.invariants)
}

/// Convenience for building test vectors.
pub fn vec_i64(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf_shape(m: &IntMatrix, s: &SnfResult) {
        // Factorization.
        assert_eq!(s.d, s.u.mul_mat(m).mul_mat(&s.v));
        // Unimodularity.
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero(), "off-diagonal entry at ({i},{j})");
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {} !| {}", w[0], w[1]);
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in diagonal");
            }
        }
    }

    #[test]
    fn snf_small_example() {
        // det = -8 and entry gcd 2 force diagonal (2, 4).
        let m = IntMatrix::from_i64([[2, 4], [6, 8]]);
        let s = snf(&m);
        check_snf_shape(&m, &s);
        assert_eq!(s.diagonal(), vec_i64(&[2, 4]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let s = snf(&id);
        check_snf_shape(&id, &s);
        assert_eq!(s.diagonal(), vec_i64(&[1, 1, 1]));

        let z = IntMatrix::zeros(2, 3);
        let s = snf(&z);
        check_snf_shape(&z, &s);
        assert_eq!(s.diagonal(), vec_i64(&[0, 0]));
    }

    #[test]
    fn snf_diag_normalization() {
        // diag(6, 4) is not in Smith form; gcd/lcm sort it into (2, 12).
        let m = IntMatrix::from_i64([[6, 0], [0, 4]]);
        let s = snf(&m);
        check_snf_shape(&m, &s);
        assert_eq!(s.diagonal(), vec_i64(&[2, 12]));
    }

    #[test]
    fn snf_empty() {
        let m = IntMatrix::zeros(0, 3);
        let s = snf(&m);
        assert_eq!(s.d.rows(), 0);
        assert_eq!(s.d.cols(), 3);
        assert!(s.u.is_identity());
        assert!(s.v.is_identity());

        let m = IntMatrix::zeros(2, 0);
        let s = snf(&m);
        assert_eq!(s.diagonal(), Vec::<BigInt>::new());
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = IntMatrix::from_i64([[1, 1]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 1);
        let k = &basis[0];
        assert!(k == &vec_i64(&[1, -1]) || k == &vec_i64(&[-1, 1]));
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let m = IntMatrix::from_i64([[2, 0], [0, 3], [1, 1]]);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn kernel_of_zero_rows_is_everything() {
        let m = IntMatrix::zeros(0, 4);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 4);
        let v = IntMatrix::from_rows(basis).transpose();
        assert_eq!(v.det().abs(), BigInt::one());
    }

    #[test]
    fn quotient_index_two() {
        let q = quotient_invariants(&[vec_i64(&[1])], &[vec_i64(&[2])]).unwrap();
        assert_eq!(q, AbelianInvariants { rank: 0, torsion: vec_i64(&[2]) });
    }

    #[test]
    fn quotient_by_nothing() {
        let ambient = [vec_i64(&[1, 0]), vec_i64(&[0, 1])];
        let q = quotient_invariants(&ambient, &[]).unwrap();
        assert_eq!(q, AbelianInvariants::free(2));
    }

    #[test]
    fn quotient_kills_one_generator() {
        let ambient = [vec_i64(&[1, 0]), vec_i64(&[0, 1])];
        let r = quotient_with_representatives(&ambient, &[vec_i64(&[0, 1])]).unwrap();
        assert_eq!(r.invariants, AbelianInvariants::free(1));
        assert_eq!(r.sub_rank, 1);
        assert_eq!(r.free_coeffs.len(), 1);
        // The surviving generator must be e1 up to sign, i.e. coefficient
        // vector (+-1, 0) over the ambient basis.
        let c = &r.free_coeffs[0];
        assert_eq!(c[0].abs(), BigInt::one());
        assert!(c[1].is_zero());
    }

    #[test]
    fn quotient_rejects_outside_vector() {
        // e1 is not in the lattice spanned by 2*e1.
        let err = quotient_invariants(&[vec_i64(&[2])], &[vec_i64(&[1])]).unwrap_err();
        assert_eq!(err, LinAlgError::SubgroupNotContained { index: 0 });
        // ...and a vector off the span entirely.
        let err =
            quotient_invariants(&[vec_i64(&[1, 0])], &[vec_i64(&[0, 1])]).unwrap_err();
        assert_eq!(err, LinAlgError::SubgroupNotContained { index: 0 });
    }

    #[test]
    fn quotient_with_empty_ambient() {
        let q = quotient_invariants(&[], &[vec_i64(&[0, 0])]).unwrap();
        assert!(q.is_trivial());
        let err = quotient_invariants(&[], &[vec_i64(&[1, 0])]).unwrap_err();
        assert_eq!(err, LinAlgError::SubgroupNotContained { index: 0 });
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_i64([[1, 2], [0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul_mat(&inv).is_identity());
        assert!(inv.mul_mat(&m).is_identity());
        assert!(IntMatrix::from_i64([[2, 0], [0, 1]]).inverse().is_none());
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(0).det(), BigInt::one());
        assert_eq!(IntMatrix::from_i64([[3]]).det(), BigInt::from(3));
        assert_eq!(IntMatrix::from_i64([[2, 4], [6, 8]]).det(), BigInt::from(-8));
        assert_eq!(
            IntMatrix::from_i64([[1, 2, 3], [4, 5, 6], [7, 8, 9]]).det(),
            BigInt::zero()
        );
    }

    #[test]
    fn display_invariants() {
        assert_eq!(AbelianInvariants::free(0).to_string(), "0");
        assert_eq!(AbelianInvariants::free(1).to_string(), "Z");
        let g = AbelianInvariants { rank: 2, torsion: vec_i64(&[2, 6]) };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        ((1usize..=6), (1usize..=6)).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |xs| IntMatrix {
                rows: r,
                cols: c,
                entries: xs.into_iter().map(BigInt::from).collect(),
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn snf_factorization_holds(m in small_matrix()) {
            let s = snf(&m);
            check_snf_shape(&m, &s);
        }

        #[test]
        fn kernel_vectors_annihilate(m in small_matrix()) {
            let s = snf(&m);
            let basis = kernel_basis(&m);
            prop_assert_eq!(basis.len(), m.cols() - s.rank());
            for k in &basis {
                prop_assert!(m.mul_vec(k).iter().all(Zero::is_zero));
            }
            // Kernel basis extends to a unimodular matrix: the columns of v
            // it is drawn from are already independent; check pairwise
            // distinctness cheaply via the matrix rank.
            if !basis.is_empty() {
                let kmat = IntMatrix::from_rows(basis.clone());
                prop_assert_eq!(snf(&kmat).rank(), basis.len());
            }
        }

        #[test]
        fn quotient_invariant_under_sub_shuffle(
            m in small_matrix(),
            seed in any::<u64>(),
        ) {
            // span(ambient)/span(sub) must not depend on the presentation
            // of the subgroup: permuting generators, negating one, or adding
            // one to another leaves the invariants unchanged.
            let dim = m.rows();
            let ambient: Vec<Vec<BigInt>> =
                (0..dim).map(|i| {
                    (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
                }).collect();
            let sub: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.col(j)).collect();
            let q0 = quotient_invariants(&ambient, &sub).unwrap();

            let mut mutated = sub.clone();
            if mutated.len() >= 2 {
                let i = (seed as usize) % mutated.len();
                let j = (seed as usize / 7) % mutated.len();
                mutated.swap(0, i);
                for t in 0..dim {
                    let add = mutated[j][t].clone();
                    if j != 0 { mutated[0][t] += add; }
                }
                for t in 0..dim {
                    let x = std::mem::take(&mut mutated.last_mut().unwrap()[t]);
                    mutated.last_mut().unwrap()[t] = -x;
                }
            }
            let q1 = quotient_invariants(&ambient, &mutated).unwrap();
            prop_assert_eq!(q0, q1);
        }
    }
}
