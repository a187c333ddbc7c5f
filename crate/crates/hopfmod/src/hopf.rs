//! Finite-dimensional Hopf algebras by structure constants.
//!
//! A Hopf algebra here is raw data — multiplication tensor, unit vector,
//! comultiplication matrix, counit, antipode — together with a validator
//! that checks every axiom exhaustively on basis tuples. Validation is cheap
//! (dimensions are capped at 32) and exact, so nothing downstream ever works
//! with an unverified object. The antipode inverse is never taken as input:
//! it is derived by matrix inversion and its absence is reported as
//! "antipode not bijective".

use crate::diagnostics::{Diagnostic, DiagnosticSink};
use crate::linalg::{inverse, solve_linear, Matrix};
use crate::scalar::{Field, Scalar};

/// Associative unital algebra presented by its multiplication tensor:
/// e_i · e_j = Σ_k mult[i·d² + j·d + k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    dim: usize,
    field: Field,
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl FinAlgebra {
    pub fn new(field: Field, dim: usize, mult: Vec<Scalar>, unit: Vec<Scalar>) -> FinAlgebra {
        assert_eq!(mult.len(), dim * dim * dim, "multiplication tensor size");
        assert_eq!(unit.len(), dim, "unit vector size");
        FinAlgebra { dim, field, mult, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coefficient of e_k in e_i·e_j.
    pub fn mult_coeff(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let w = ui.mul(vj);
                for k in 0..self.dim {
                    let c = self.mult_coeff(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&w.mul(c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by the coordinate vector `v`.
    pub fn left_mult_matrix(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim, self.field);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.mult_coeff(i, j, k);
                    if !c.is_zero() {
                        m.add_assign_at(k, j, &vi.mul(c));
                    }
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by the coordinate vector `v`.
    pub fn right_mult_matrix(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim, self.field);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.mult_coeff(i, j, k);
                    if !c.is_zero() {
                        m.add_assign_at(k, i, &vj.mul(c));
                    }
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                for k in 0..self.dim {
                    if self.mult_coeff(i, j, k) != self.mult_coeff(j, i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exhaustive associativity and unit checks on basis tuples.
    pub fn validate_into(&self, sink: &mut DiagnosticSink, what: &str) {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.multiply(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..self.dim {
                    let left = self.multiply(&ij, &self.basis_vector(k));
                    let jk = self.multiply(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.multiply(&self.basis_vector(i), &jk);
                    if left != right {
                        sink.report("associativity", format!("{what}: (e{0}·e{1})·e{2} ≠ e{0}·(e{1}·e{2})", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.multiply(&self.unit, &e) != e {
                sink.report("unit", format!("{what}: 1·e{0} ≠ e{0}", i + 1));
            }
            if self.multiply(&e, &self.unit) != e {
                sink.report("unit", format!("{what}: e{0}·1 ≠ e{0}", i + 1));
            }
        }
    }

    /// Solves for a two-sided unit of a bare multiplication tensor. Used by
    /// the instance-file reader, where no unit line exists and the unit is
    /// pinned down (when it exists) by the tensor itself.
    pub fn infer_unit(field: Field, dim: usize, mult: &[Scalar]) -> Option<Vec<Scalar>> {
        let coeff = |i: usize, j: usize, k: usize| &mult[(i * dim + j) * dim + k];
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(2 * dim * dim);
        let mut rhs: Vec<Scalar> = Vec::with_capacity(2 * dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                // Σ_i u_i m[i][j][k] = δ_jk  (left unit)
                rows.push((0..dim).map(|i| coeff(i, j, k).clone()).collect());
                rhs.push(if j == k { field.one() } else { field.zero() });
                // Σ_i u_i m[j][i][k] = δ_jk  (right unit)
                rows.push((0..dim).map(|i| coeff(j, i, k).clone()).collect());
                rhs.push(if j == k { field.one() } else { field.zero() });
            }
        }
        let m = Matrix::from_rows(field, rows).expect("uniform rows");
        solve_linear(&m, &rhs).expect("shapes agree")
    }
}

/// Coalgebra presented by Δ as a (dim²)×dim matrix (column i holds the
/// coordinates of Δ(e_i) in the tensor basis, left factor major) and ε as a
/// 1×dim matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCoalgebra {
    dim: usize,
    field: Field,
    comult: Matrix,
    counit: Matrix,
}

impl FinCoalgebra {
    pub fn new(field: Field, dim: usize, comult: Matrix, counit: Matrix) -> FinCoalgebra {
        assert_eq!((comult.rows(), comult.cols()), (dim * dim, dim), "comultiplication shape");
        assert_eq!((counit.rows(), counit.cols()), (1, dim), "counit shape");
        FinCoalgebra { dim, field, comult, counit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn counit_of(&self, i: usize) -> &Scalar {
        self.counit.get(0, i)
    }

    pub fn validate_into(&self, sink: &mut DiagnosticSink) {
        let d = self.dim;
        let id = Matrix::identity(d, self.field);
        // (Δ⊗id)∘Δ = (id⊗Δ)∘Δ on the nose, as (d³)×d matrices.
        let left = self.comult.kronecker(&id).expect("same field").mul(&self.comult);
        let right = id.kronecker(&self.comult).expect("same field").mul(&self.comult);
        if left != right {
            for i in 0..d {
                if left.column(i) != right.column(i) {
                    sink.report("coassociativity", format!("(Δ⊗id)Δ(e{0}) ≠ (id⊗Δ)Δ(e{0})", i + 1));
                }
            }
        }
        let from_left = self.counit.kronecker(&id).expect("same field").mul(&self.comult);
        let from_right = id.kronecker(&self.counit).expect("same field").mul(&self.comult);
        for i in 0..d {
            if from_left.column(i) != id.column(i) {
                sink.report("counit", format!("(ε⊗id)Δ(e{0}) ≠ e{0}", i + 1));
            }
            if from_right.column(i) != id.column(i) {
                sink.report("counit", format!("(id⊗ε)Δ(e{0}) ≠ e{0}", i + 1));
            }
        }
    }
}

/// Product on a tensor-square style space: (u ⊗ v)(u' ⊗ v') = uu' ⊗ vv' with
/// the left factor of each tensor coordinate major. Shared by the bialgebra
/// check here and the compatibility checks on comodule algebras and modules.
pub fn tensor_product_multiply(
    left: &FinAlgebra,
    right: &FinAlgebra,
    u: &[Scalar],
    v: &[Scalar],
) -> Vec<Scalar> {
    let (d1, d2) = (left.dim(), right.dim());
    assert_eq!(u.len(), d1 * d2);
    assert_eq!(v.len(), d1 * d2);
    let field = left.field();
    let mut out = vec![field.zero(); d1 * d2];
    for a in 0..d1 {
        for b in 0..d2 {
            let x = &u[a * d2 + b];
            if x.is_zero() {
                continue;
            }
            for c in 0..d1 {
                for e in 0..d2 {
                    let y = &v[c * d2 + e];
                    if y.is_zero() {
                        continue;
                    }
                    let w = x.mul(y);
                    for r in 0..d1 {
                        let mac = left.mult_coeff(a, c, r);
                        if mac.is_zero() {
                            continue;
                        }
                        for s in 0..d2 {
                            let mbe = right.mult_coeff(b, e, s);
                            if !mbe.is_zero() {
                                out[r * d2 + s] = out[r * d2 + s].add(&w.mul(mac).mul(mbe));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Raw candidate data for [`validate_hopf`].
#[derive(Clone)]
pub struct HopfData {
    pub field: Field,
    pub dim: usize,
    /// Flat multiplication tensor, length dim³.
    pub mult: Vec<Scalar>,
    /// Coordinates of 1, length dim.
    pub unit: Vec<Scalar>,
    /// Δ as a (dim²)×dim matrix.
    pub comult: Matrix,
    /// ε as a 1×dim matrix.
    pub counit: Matrix,
    /// S as a dim×dim matrix.
    pub antipode: Matrix,
}

/// A fully validated Hopf algebra with bijective antipode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: FinAlgebra,
    coalgebra: FinCoalgebra,
    antipode: Matrix,
    antipode_inv: Matrix,
}

impl HopfAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &FinCoalgebra {
        &self.coalgebra
    }

    pub fn comult(&self) -> &Matrix {
        self.coalgebra.comult()
    }

    pub fn counit(&self) -> &Matrix {
        self.coalgebra.counit()
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &Matrix {
        &self.antipode_inv
    }

    pub fn unit(&self) -> &[Scalar] {
        self.algebra.unit()
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    /// Re-runs the full axiom suite on the stored data. Validation is
    /// idempotent: this returns an empty list for every validated object.
    pub fn revalidate(&self) -> Vec<Diagnostic> {
        let data = HopfData {
            field: self.field(),
            dim: self.dim(),
            mult: (0..self.dim().pow(3))
                .map(|n| {
                    let d = self.dim();
                    self.algebra.mult_coeff(n / (d * d), (n / d) % d, n % d).clone()
                })
                .collect(),
            unit: self.algebra.unit().to_vec(),
            comult: self.coalgebra.comult().clone(),
            counit: self.coalgebra.counit().clone(),
            antipode: self.antipode.clone(),
        };
        match validate_hopf(data) {
            Ok(_) => Vec::new(),
            Err(diags) => diags,
        }
    }
}

/// Validates raw structure constants as a Hopf algebra with bijective
/// antipode. On failure, returns one diagnostic per violated axiom, naming
/// the offending basis indices.
pub fn validate_hopf(data: HopfData) -> Result<HopfAlgebra, Vec<Diagnostic>> {
    let mut sink = DiagnosticSink::new();
    let d = data.dim;
    if d == 0 {
        sink.report("dimension", "dimension must be at least 1");
        return Err(sink.into_diagnostics());
    }
    let mut shapes_ok = true;
    if data.mult.len() != d * d * d {
        sink.report("dimension mismatch", format!("multiplication tensor has {} entries, needs {}", data.mult.len(), d * d * d));
        shapes_ok = false;
    }
    if data.unit.len() != d {
        sink.report("dimension mismatch", format!("unit vector has {} entries, needs {d}", data.unit.len()));
        shapes_ok = false;
    }
    if (data.comult.rows(), data.comult.cols()) != (d * d, d) {
        sink.report("dimension mismatch", format!("comultiplication is {}×{}, needs {}×{d}", data.comult.rows(), data.comult.cols(), d * d));
        shapes_ok = false;
    }
    if (data.counit.rows(), data.counit.cols()) != (1, d) {
        sink.report("dimension mismatch", format!("counit is {}×{}, needs 1×{d}", data.counit.rows(), data.counit.cols()));
        shapes_ok = false;
    }
    if (data.antipode.rows(), data.antipode.cols()) != (d, d) {
        sink.report("dimension mismatch", format!("antipode is {}×{}, needs {d}×{d}", data.antipode.rows(), data.antipode.cols()));
        shapes_ok = false;
    }
    if !shapes_ok {
        return Err(sink.into_diagnostics());
    }

    let algebra = FinAlgebra::new(data.field, d, data.mult, data.unit);
    algebra.validate_into(&mut sink, "algebra");
    let coalgebra = FinCoalgebra::new(data.field, d, data.comult, data.counit);
    coalgebra.validate_into(&mut sink);

    // Bialgebra: Δ and ε are algebra maps.
    for i in 0..d {
        for j in 0..d {
            // Δ(e_i e_j) = Δ(e_i)Δ(e_j) in H⊗H.
            let prod = algebra.multiply(&algebra.basis_vector(i), &algebra.basis_vector(j));
            let lhs = coalgebra.comult().apply(&prod);
            let rhs = tensor_product_multiply(
                &algebra,
                &algebra,
                &coalgebra.comult().column(i),
                &coalgebra.comult().column(j),
            );
            if lhs != rhs {
                sink.report("multiplicativity", format!("Δ(e{0}·e{1}) ≠ Δ(e{0})·Δ(e{1})", i + 1, j + 1));
            }
            // ε(e_i e_j) = ε(e_i)ε(e_j).
            let eps_prod = coalgebra.counit().apply(&prod)[0].clone();
            let eps_pair = coalgebra.counit_of(i).mul(coalgebra.counit_of(j));
            if eps_prod != eps_pair {
                sink.report("counit multiplicativity", format!("ε(e{0}·e{1}) ≠ ε(e{0})ε(e{1})", i + 1, j + 1));
            }
        }
    }
    // Δ(1) = 1⊗1 and ε(1) = 1.
    let delta_unit = coalgebra.comult().apply(algebra.unit());
    let mut unit_tensor = vec![data.field.zero(); d * d];
    for a in 0..d {
        for b in 0..d {
            unit_tensor[a * d + b] = algebra.unit()[a].mul(&algebra.unit()[b]);
        }
    }
    if delta_unit != unit_tensor {
        sink.report("multiplicativity", "Δ(1) ≠ 1⊗1");
    }
    if !coalgebra.counit().apply(algebra.unit())[0].is_one() {
        sink.report("counit multiplicativity", "ε(1) ≠ 1");
    }

    // Antipode: m∘(S⊗id)∘Δ = unit∘ε = m∘(id⊗S)∘Δ, checked per basis vector.
    let s = &data.antipode;
    for i in 0..d {
        let delta = coalgebra.comult().column(i);
        let mut left = vec![data.field.zero(); d];
        let mut right = vec![data.field.zero(); d];
        for a in 0..d {
            for b in 0..d {
                let c = &delta[a * d + b];
                if c.is_zero() {
                    continue;
                }
                let sa = s.column(a);
                let sb = s.column(b);
                let term_l = algebra.multiply(&sa, &algebra.basis_vector(b));
                let term_r = algebra.multiply(&algebra.basis_vector(a), &sb);
                for k in 0..d {
                    left[k] = left[k].add(&c.mul(&term_l[k]));
                    right[k] = right[k].add(&c.mul(&term_r[k]));
                }
            }
        }
        let target: Vec<Scalar> = algebra.unit().iter().map(|u| u.mul(coalgebra.counit_of(i))).collect();
        if left != target {
            sink.report("antipode", format!("m(S⊗id)Δ(e{0}) ≠ ε(e{0})·1", i + 1));
        }
        if right != target {
            sink.report("antipode", format!("m(id⊗S)Δ(e{0}) ≠ ε(e{0})·1", i + 1));
        }
    }

    let antipode_inv = match inverse(s) {
        Some(inv) => inv,
        None => {
            sink.report("antipode not bijective", "the antipode matrix is singular");
            Matrix::zero(d, d, data.field)
        }
    };

    sink.into_result(HopfAlgebra { algebra, coalgebra, antipode: data.antipode, antipode_inv })
}

/// Builds the group algebra kG from a multiplication table
/// (`table[i][j]` = index of g_i g_j), with Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹.
pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<HopfAlgebra, Vec<Diagnostic>> {
    let n = table.len();
    let mut sink = DiagnosticSink::new();
    if n == 0 {
        sink.report("non-group table", "empty table");
        return Err(sink.into_diagnostics());
    }
    if table.iter().any(|row| row.len() != n) || table.iter().flatten().any(|&v| v >= n) {
        sink.report("non-group table", "table is not square with entries in range");
        return Err(sink.into_diagnostics());
    }
    // Latin square.
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            seen_row[table[i][j]] = true;
            seen_col[table[j][i]] = true;
        }
        if seen_row.contains(&false) || seen_col.contains(&false) {
            sink.report("non-group table", format!("row or column {i} is not a permutation"));
        }
    }
    // Identity, inverses, associativity.
    let identity = (0..n).find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j));
    let Some(e) = identity else {
        sink.report("non-group table", "no identity element");
        return Err(sink.into_diagnostics());
    };
    let mut inv = vec![usize::MAX; n];
    for i in 0..n {
        match (0..n).find(|&j| table[i][j] == e && table[j][i] == e) {
            Some(j) => inv[i] = j,
            None => sink.report("non-group table", format!("element {i} has no two-sided inverse")),
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    sink.report("non-group table", format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    if !sink.is_clean() {
        return Err(sink.into_diagnostics());
    }

    let mut mult = vec![field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            mult[(i * n + j) * n + table[i][j]] = field.one();
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[e] = field.one();
    let mut comult = Matrix::zero(n * n, n, field);
    for i in 0..n {
        comult.set(i * n + i, i, field.one());
    }
    let counit = Matrix::from_fn(1, n, field, |_, _| field.one());
    let mut antipode = Matrix::zero(n, n, field);
    for (i, &gi) in inv.iter().enumerate() {
        antipode.set(gi, i, field.one());
    }
    validate_hopf(HopfData { field, dim: n, mult, unit, comult, counit, antipode })
}

/// Builds the 4-dimensional algebra with basis {1, g, x, gx}, relations
/// g² = 1, x² = 0, xg = −gx, comultiplication Δ(g) = g⊗g,
/// Δ(x) = x⊗1 + g⊗x, and antipode S(g) = g, S(x) = −gx. Its antipode has
/// order 4, so it exercises every S ≠ S⁻¹ code path. Needs 2 invertible.
pub fn sweedler_h4(field: Field) -> Result<HopfAlgebra, Vec<Diagnostic>> {
    if field.characteristic() == 2 {
        return Err(vec![Diagnostic::new(
            "characteristic",
            "this algebra needs 2 invertible; characteristic 2 collapses the relation xg = −gx",
        )]);
    }
    let d = 4;
    let one = field.one();
    let minus = field.one().neg();
    // Basis indices: 0 = 1, 1 = g, 2 = x, 3 = gx.
    let mut mult = vec![field.zero(); d * d * d];
    let mut set = |i: usize, j: usize, k: usize, v: Scalar| {
        mult[(i * d + j) * d + k] = v;
    };
    for j in 0..d {
        set(0, j, j, one.clone()); // 1·y = y
    }
    for i in 1..d {
        set(i, 0, i, one.clone()); // y·1 = y
    }
    set(1, 1, 0, one.clone()); // g·g = 1
    set(1, 2, 3, one.clone()); // g·x = gx
    set(1, 3, 2, one.clone()); // g·gx = x
    set(2, 1, 3, minus.clone()); // x·g = −gx
    set(3, 1, 2, minus.clone()); // gx·g = −x
    // x·x = x·gx = gx·x = gx·gx = 0 (left as zeros).

    let mut unit = vec![field.zero(); d];
    unit[0] = one.clone();

    let mut comult = Matrix::zero(d * d, d, field);
    comult.set(0, 0, one.clone()); // Δ(1) = 1⊗1
    comult.set(d + 1, 1, one.clone()); // Δ(g) = g⊗g
    comult.set(2 * d, 2, one.clone()); // Δ(x) = x⊗1 …
    comult.set(d + 2, 2, one.clone()); // … + g⊗x
    comult.set(3 * d + 1, 3, one.clone()); // Δ(gx) = gx⊗g …
    comult.set(3, 3, one.clone()); // … + 1⊗gx

    let mut counit = Matrix::zero(1, d, field);
    counit.set(0, 0, one.clone());
    counit.set(0, 1, one.clone());

    let mut antipode = Matrix::zero(d, d, field);
    antipode.set(0, 0, one.clone()); // S(1) = 1
    antipode.set(1, 1, one.clone()); // S(g) = g
    antipode.set(3, 2, minus); // S(x) = −gx
    antipode.set(2, 3, one); // S(gx) = x

    validate_hopf(HopfData { field, dim: d, mult, unit, comult, counit, antipode })
}

/// The cyclic group C_n's multiplication table (index arithmetic mod n).
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_hopf_algebra_validates() {
        let field = Field::Rational;
        let data = HopfData {
            field,
            dim: 1,
            mult: vec![field.one()],
            unit: vec![field.one()],
            comult: Matrix::identity(1, field),
            counit: Matrix::identity(1, field),
            antipode: Matrix::identity(1, field),
        };
        let h = validate_hopf(data).unwrap();
        assert!(h.revalidate().is_empty());
    }

    #[test]
    fn group_algebra_c2_over_q() {
        let h = group_algebra(Field::Rational, &cyclic_group_table(2)).unwrap();
        assert_eq!(h.dim(), 2);
        // In C₂ every element is its own inverse, so S is the identity.
        assert_eq!(*h.antipode(), Matrix::identity(2, Field::Rational));
        assert!(h.is_commutative());
        // Δ is diagonal in the group basis: Δ(g) = g⊗g only.
        for i in 0..2 {
            let col = h.comult().column(i);
            for (pos, c) in col.iter().enumerate() {
                if pos == i * 2 + i {
                    assert!(c.is_one());
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn group_algebra_c1_is_trivial() {
        let h = group_algebra(Field::Rational, &cyclic_group_table(1)).unwrap();
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn group_algebra_c2_over_f2() {
        let h = group_algebra(Field::Prime(2), &cyclic_group_table(2)).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.revalidate().is_empty());
    }

    #[test]
    fn zeroed_antipode_is_reported_by_name() {
        let good = group_algebra(Field::Rational, &cyclic_group_table(2)).unwrap();
        let data = HopfData {
            field: Field::Rational,
            dim: 2,
            mult: (0..8)
                .map(|n| good.algebra().mult_coeff(n / 4, (n / 2) % 2, n % 2).clone())
                .collect(),
            unit: good.unit().to_vec(),
            comult: good.comult().clone(),
            counit: good.counit().clone(),
            antipode: Matrix::zero(2, 2, Field::Rational),
        };
        let diags = validate_hopf(data).unwrap_err();
        assert!(diags.iter().any(|d| d.law == "antipode not bijective"));
    }

    #[test]
    fn non_group_table_is_rejected() {
        // Constant table: not a Latin square.
        let table = vec![vec![0, 0], vec![0, 0]];
        let err = group_algebra(Field::Rational, &table).unwrap_err();
        assert!(err.iter().any(|d| d.law == "non-group table"));
    }

    #[test]
    fn sweedler_antipode_has_order_four() {
        let h = sweedler_h4(Field::Rational).unwrap();
        let s = h.antipode();
        let s2 = s.mul(s);
        let id = Matrix::identity(4, Field::Rational);
        assert_ne!(s2, id, "S² must differ from the identity");
        assert_eq!(s2.mul(&s2), id, "S⁴ = id");
        assert_eq!(*h.antipode_inv(), s.mul(&s2), "S⁻¹ = S³");
    }

    #[test]
    fn sweedler_needs_two_invertible() {
        let err = sweedler_h4(Field::Prime(2)).unwrap_err();
        assert_eq!(err[0].law, "characteristic");
    }

    #[test]
    fn sweedler_revalidates_cleanly() {
        let h = sweedler_h4(Field::Rational).unwrap();
        assert!(h.revalidate().is_empty());
    }

    #[test]
    fn unit_inference_from_bare_tensor() {
        let h = sweedler_h4(Field::Rational).unwrap();
        let d = h.dim();
        let mult: Vec<Scalar> = (0..d * d * d)
            .map(|n| h.algebra().mult_coeff(n / (d * d), (n / d) % d, n % d).clone())
            .collect();
        let unit = FinAlgebra::infer_unit(Field::Rational, d, &mult).unwrap();
        assert_eq!(unit, h.unit().to_vec());
        // A tensor with no unit (zero multiplication) has no solution.
        let zero_mult = vec![Field::Rational.zero(); 8];
        assert!(FinAlgebra::infer_unit(Field::Rational, 2, &zero_mult).is_none());
    }
}
