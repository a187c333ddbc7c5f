//! Dense exact linear algebra.
//!
//! Everything downstream — coinvariants, hom spaces, splitting certificates,
//! radicals — reduces to solving linear systems and computing kernels over Q
//! or F_p, so this module is deliberately small and fully deterministic:
//! pivots are always chosen as the first nonzero entry scanning columns left
//! to right and rows top to bottom. Over Q the forward elimination is
//! fraction-free (Bareiss) on cleared-denominator integer rows to keep
//! coefficients from exploding; over F_p plain elimination is exact already.
//! Dimensions here stay small (instances are capped at dimension 32), so
//! dense storage is the right trade.

use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mixed fields: {0} vs {1}")]
    MixedFields(Field, Field),
}

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                debug_assert_eq!(s.field(), field, "entry field mismatch at ({r},{c})");
                entries.push(s);
            }
        }
        Matrix { rows, cols, field, entries }
    }

    /// Builds from row-major entries, validating the field invariant.
    pub fn from_entries(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Matrix, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}×{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.field() != field {
                return Err(LinalgError::MixedFields(field, e.field()));
            }
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Matrix::from_entries(nrows, ncols, field, rows.into_iter().flatten().collect())
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, field: Field, cols: &[Vec<Scalar>]) -> Result<Matrix, LinalgError> {
        for c in cols {
            if c.len() != ambient {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column of length {} in ambient dimension {}",
                    c.len(),
                    ambient
                )));
            }
        }
        Ok(Matrix::from_fn(ambient, cols.len(), field, |r, j| cols[j][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        debug_assert_eq!(s.field(), self.field);
        self.entries[r * self.cols + c] = s;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, s: &Scalar) {
        let cur = self.get(r, c).add(s);
        self.set(r, c, cur);
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix add shape");
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c).add(other.get(r, c)))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sub shape");
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c).sub(other.get(r, c)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c).mul(s))
    }

    /// Matrix product; shape mismatch is a programming error here (validated
    /// systems construct shapes structurally), so it panics rather than
    /// returning a result.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape {}×{} by {}×{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_assign_at(r, c, &a.mul(b));
                }
            }
        }
        out
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix apply shape");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = self.get(r, j);
                if !a.is_zero() {
                    out[r] = out[r].add(&a.mul(x));
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack shape");
        Matrix::from_fn(self.rows + other.rows, self.cols, self.field, |r, c| {
            if r < self.rows { self.get(r, c).clone() } else { other.get(r - self.rows, c).clone() }
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack shape");
        Matrix::from_fn(self.rows, self.cols + other.cols, self.field, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { other.get(r, c - self.cols).clone() }
        })
    }

    /// Kronecker product under the global tensor convention: the left factor
    /// index is major, so (A⊗B) acts on e_i⊗f_j stored at position i·dim+j.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::MixedFields(self.field, other.field));
        }
        Ok(Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, self.field, |r, c| {
            let (r1, r2) = (r / other.rows, r % other.rows);
            let (c1, c2) = (c / other.cols, c % other.cols);
            self.get(r1, c1).mul(other.get(r2, c2))
        }))
    }

    /// Reduced row echelon form plus the pivot columns, via Bareiss over Q
    /// and plain elimination over F_p. Fully deterministic: the pivot for
    /// each column is the topmost unused nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Rational => self.rref_rational(),
            Field::Prime(_) => self.rref_modular(),
        }
    }

    fn rref_rational(&self) -> (Matrix, Vec<usize>) {
        // Clear denominators row by row so the forward pass runs on integers.
        let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut lcm = BigInt::one();
            for c in 0..self.cols {
                let (_, den) = self.get(r, c).as_ratio().expect("rational field");
                lcm = lcm.lcm(&den);
            }
            let row = (0..self.cols)
                .map(|c| {
                    let (num, den) = self.get(r, c).as_ratio().expect("rational field");
                    num * (&lcm / den)
                })
                .collect();
            int_rows.push(row);
        }

        // Fraction-free forward elimination (Bareiss): every division below is
        // exact by the Sylvester determinant identity.
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| !int_rows[i][c].is_zero()) else {
                continue;
            };
            int_rows.swap(r, pr);
            let pivot = int_rows[r][c].clone();
            for i in r + 1..self.rows {
                let factor = int_rows[i][c].clone();
                for j in 0..self.cols {
                    let v = &pivot * &int_rows[i][j] - &factor * &int_rows[r][j];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    int_rows[i][j] = q;
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }

        // Back-substitute over Q on the (already echelon) integer rows.
        let mut rat: Vec<Vec<BigRational>> = int_rows
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let inv = rat[i][pc].clone();
            for j in 0..self.cols {
                rat[i][j] = &rat[i][j] / &inv;
            }
            for above in 0..i {
                let factor = rat[above][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    rat[above][j] = &rat[above][j] - &factor * &rat[i][j];
                }
            }
        }
        let out = Matrix::from_fn(self.rows, self.cols, Field::Rational, |r, c| {
            Scalar::Rational(rat[r][c].clone())
        });
        (out, pivots)
    }

    fn rref_modular(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.get(r, j).clone();
                let other = m.get(pr, j).clone();
                m.set(r, j, other);
                m.set(pr, j, tmp);
            }
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the kernel: one column per free column of the RREF,
    /// with a 1 in the free coordinate. Columns are independent, each is
    /// annihilated by the matrix, and the count equals cols − rank.
    pub fn kernel_basis(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(self.cols, free.len(), self.field);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, rref.get(row, f).neg());
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}×{} over {} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).canonical_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves A·x = b exactly, returning some solution (free variables pinned to
/// zero) or `None` when the system is inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    for s in b {
        if s.field() != a.field() {
            return Err(LinalgError::MixedFields(a.field(), s.field()));
        }
    }
    let rhs = Matrix::from_columns(b.len(), a.field(), &[b.to_vec()]).expect("checked length");
    let (rref, pivots) = a.hstack(&rhs).rref();
    if pivots.contains(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![a.field().zero(); a.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rref.get(row, a.cols()).clone();
    }
    Ok(Some(x))
}

/// Solves A·X = B column by column; `None` when any column is inconsistent.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "left side has {} rows, right side {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.field() != b.field() {
        return Err(LinalgError::MixedFields(a.field(), b.field()));
    }
    // One elimination of [A | B] answers every column at once.
    let (rref, pivots) = a.hstack(b).rref();
    if pivots.iter().any(|&p| p >= a.cols()) {
        return Ok(None);
    }
    let mut x = Matrix::zero(a.cols(), b.cols(), a.field());
    for (row, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(p, c, rref.get(row, a.cols() + c).clone());
        }
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let id = Matrix::identity(a.rows(), a.field());
    let inv = solve_matrix(a, &id).expect("shapes agree")?;
    // solve_matrix finds some preimage; for a square system a full pivot set
    // means it is the two-sided inverse.
    if inv.rows() == a.rows() && a.mul(&inv) == id {
        Some(inv)
    } else {
        None
    }
}

/// Monic minimal polynomial of a square matrix, as coefficients in ascending
/// degree (constant term first, leading 1 last).
pub fn minimal_polynomial(a: &Matrix) -> Vec<Scalar> {
    assert_eq!(a.rows(), a.cols(), "minimal polynomial of a non-square matrix");
    let field = a.field();
    let n = a.rows();
    if n == 0 {
        return vec![field.one()];
    }
    let flat = |m: &Matrix| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                v.push(m.get(r, c).clone());
            }
        }
        v
    };
    let mut powers = vec![Matrix::identity(n, field)];
    loop {
        let next = powers.last().unwrap().mul(a);
        let span = Matrix::from_columns(n * n, field, &powers.iter().map(&flat).collect::<Vec<_>>())
            .expect("uniform columns");
        if let Some(coeffs) = solve_linear(&span, &flat(&next)).expect("shapes agree") {
            // next = Σ coeffs[i]·A^i, so p(x) = x^d − Σ coeffs[i]·x^i.
            let mut poly: Vec<Scalar> = coeffs.iter().map(Scalar::neg).collect();
            poly.push(field.one());
            return poly;
        }
        powers.push(next);
    }
}

/// Evaluates a polynomial (ascending coefficients) at a square matrix.
pub fn eval_polynomial(poly: &[Scalar], a: &Matrix) -> Matrix {
    let n = a.rows();
    let field = a.field();
    let mut acc = Matrix::zero(n, n, field);
    for coeff in poly.iter().rev() {
        acc = acc.mul(a);
        for i in 0..n {
            acc.add_assign_at(i, i, coeff);
        }
    }
    acc
}

/// A linear subspace of k^ambient, held by a canonical basis matrix whose
/// columns are the reduced column echelon form of any spanning set. Two
/// subspaces are equal iff their canonical bases are identical, which keeps
/// every reported witness byte-stable.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize, field: Field) -> Subspace {
        Subspace { ambient, field, basis: Matrix::zero(ambient, 0, field) }
    }

    pub fn full(ambient: usize, field: Field) -> Subspace {
        Subspace { ambient, field, basis: Matrix::identity(ambient, field) }
    }

    /// Canonicalizes a spanning set (dependent or redundant vectors welcome).
    pub fn from_spanning(ambient: usize, field: Field, vectors: &[Vec<Scalar>]) -> Subspace {
        let m = Matrix::from_columns(ambient, field, vectors).expect("uniform spanning vectors");
        Subspace::from_column_span(&m)
    }

    /// The column span of a matrix, canonicalized.
    pub fn from_column_span(m: &Matrix) -> Subspace {
        let (rref, pivots) = m.transpose().rref();
        let basis = Matrix::from_fn(m.rows(), pivots.len(), m.field(), |r, c| rref.get(c, r).clone());
        Subspace { ambient: m.rows(), field: m.field(), basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis matrix (ambient × dim, columns are basis vectors).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.column(i)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        solve_linear(&self.basis, v).map_or(false, |s| s.is_some())
    }

    /// Coordinates of `v` in the canonical basis, when `v` lies in the space.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        solve_linear(&self.basis, v).expect("ambient dimensions agree")
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(&other.basis_vector(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "subspace sum ambient mismatch");
        Subspace::from_column_span(&self.basis.hstack(&other.basis))
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}
