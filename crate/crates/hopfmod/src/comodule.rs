//! Right comodules over a Hopf algebra: coinvariants, colinear maps,
//! generated subcomodules, and the cosemisimplicity test.
//!
//! A comodule is its coaction matrix ρ: M → M⊗H, stored as a
//! (dim·dim_H)×dim matrix under the left-major tensor convention. The
//! subspace of coinvariants {m : ρ(m) = m⊗1} is a kernel computation; the
//! subcomodule generated by a vector is the closure of its "first legs"
//! (the (id⊗h_k*)ρ images) and is how every stability search in the crate
//! walks coaction orbits.

use crate::diagnostics::{Diagnostic, DiagnosticSink};
use crate::hopf::HopfAlgebra;
use crate::linalg::{solve_linear, solve_matrix, LinalgError, Matrix, Subspace};
use crate::scalar::Scalar;
use std::sync::Arc;

/// A validated right H-comodule.
#[derive(Debug, Clone)]
pub struct Comodule {
    hopf: Arc<HopfAlgebra>,
    dim: usize,
    coaction: Matrix,
}

impl Comodule {
    /// Validates coassociativity and the counit law for a raw coaction
    /// matrix, shaped (dim·dim_H) × dim.
    pub fn validate(hopf: Arc<HopfAlgebra>, dim: usize, coaction: Matrix) -> Result<Comodule, Vec<Diagnostic>> {
        let mut sink = DiagnosticSink::new();
        validate_coaction_into(&hopf, dim, &coaction, &mut sink);
        sink.into_result(Comodule { hopf, dim, coaction })
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// The trivial coaction ρ(m) = m⊗1 on a space of the given dimension.
    pub fn trivial(hopf: Arc<HopfAlgebra>, dim: usize) -> Comodule {
        let coaction = trivial_coaction(&hopf, dim);
        Comodule::validate(hopf, dim, coaction).expect("trivial coaction always validates")
    }

    /// H itself as a right comodule via Δ.
    pub fn regular(hopf: Arc<HopfAlgebra>) -> Comodule {
        let coaction = hopf.comult().clone();
        let dim = hopf.dim();
        Comodule::validate(hopf, dim, coaction).expect("coassociativity was validated with H")
    }

    /// The linear operator m ↦ (id ⊗ h_k*) ρ(m), the k-th "first leg".
    pub fn leg_operator(&self, k: usize) -> Matrix {
        let dh = self.hopf.dim();
        Matrix::from_fn(self.dim, self.dim, self.coaction.field(), |r, c| {
            self.coaction.get(r * dh + k, c).clone()
        })
    }

    /// Restricts the coaction to a coaction-stable subspace, giving the
    /// subcomodule in the subspace's own basis. `None` when the subspace is
    /// not stable.
    pub fn restrict_to(&self, w: &Subspace) -> Option<Comodule> {
        let basis = w.basis();
        let id_h = Matrix::identity(self.hopf.dim(), self.coaction.field());
        let big = basis.kronecker(&id_h).expect("same field");
        let target = self.coaction.mul(basis);
        let rho = solve_matrix(&big, &target).expect("shapes agree")?;
        Comodule::validate(self.hopf.clone(), w.dim(), rho).ok()
    }
}

pub(crate) fn trivial_coaction(hopf: &HopfAlgebra, dim: usize) -> Matrix {
    let dh = hopf.dim();
    let field = hopf.field();
    Matrix::from_fn(dim * dh, dim, field, |r, c| {
        let (i, k) = (r / dh, r % dh);
        if i == c {
            hopf.unit()[k].clone()
        } else {
            field.zero()
        }
    })
}

pub(crate) fn validate_coaction_into(hopf: &HopfAlgebra, dim: usize, coaction: &Matrix, sink: &mut DiagnosticSink) {
    let dh = hopf.dim();
    let field = hopf.field();
    if (coaction.rows(), coaction.cols()) != (dim * dh, dim) {
        sink.report(
            "dimension mismatch",
            format!("coaction is {}×{}, needs {}×{dim}", coaction.rows(), coaction.cols(), dim * dh),
        );
        return;
    }
    let id_m = Matrix::identity(dim, field);
    let id_h = Matrix::identity(dh, field);
    // (ρ⊗id)∘ρ = (id⊗Δ)∘ρ.
    let left = coaction.kronecker(&id_h).expect("same field").mul(coaction);
    let right = id_m.kronecker(hopf.comult()).expect("same field").mul(coaction);
    for i in 0..dim {
        if left.column(i) != right.column(i) {
            sink.report("coaction coassociativity", format!("(ρ⊗id)ρ(e{0}) ≠ (id⊗Δ)ρ(e{0})", i + 1));
        }
    }
    // (id⊗ε)∘ρ = id.
    let counit_side = id_m.kronecker(hopf.counit()).expect("same field").mul(coaction);
    for i in 0..dim {
        if counit_side.column(i) != id_m.column(i) {
            sink.report("coaction counit", format!("(id⊗ε)ρ(e{0}) ≠ e{0}", i + 1));
        }
    }
}

/// The coinvariants M^{coH} = {m : ρ(m) = m⊗1}, as the kernel of ρ − (−⊗1).
pub fn coinvariants(m: &Comodule) -> Subspace {
    coinvariants_of_matrix(m.hopf(), m.dim(), m.coaction())
}

/// Coinvariants of a raw coaction matrix. Used for coactions that are
/// computed rather than declared (Hom-space coactions), where the
/// coassociativity flag is reported separately instead of being a
/// construction precondition.
pub(crate) fn coinvariants_of_matrix(hopf: &HopfAlgebra, dim: usize, coaction: &Matrix) -> Subspace {
    let embed = trivial_coaction(hopf, dim);
    let diff = coaction.sub(&embed);
    Subspace::from_column_span(&diff.kernel_basis())
}

/// True iff ρ_N ∘ f = (f ⊗ id_H) ∘ ρ_M, i.e. f is a comodule map.
pub fn is_colinear(f: &Matrix, m: &Comodule, n: &Comodule) -> Result<bool, LinalgError> {
    if f.rows() != n.dim() || f.cols() != m.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "map is {}×{}, needs {}×{}",
            f.rows(),
            f.cols(),
            n.dim(),
            m.dim()
        )));
    }
    let id_h = Matrix::identity(m.hopf().dim(), f.field());
    let lhs = n.coaction().mul(f);
    let rhs = f.kronecker(&id_h)?.mul(m.coaction());
    Ok(lhs == rhs)
}

/// Closure of a set of seed vectors under a set of linear operators —
/// the workhorse behind generated subcomodules, ideal searches, and
/// submodule searches. Deterministic: operators and new basis vectors are
/// processed in order.
pub fn operator_closure(ambient: usize, seeds: &[Vec<Scalar>], operators: &[Matrix]) -> Subspace {
    let field = operators
        .first()
        .map(Matrix::field)
        .unwrap_or_else(|| seeds.first().expect("closure needs a seed or an operator")[0].field());
    let mut space = Subspace::from_spanning(ambient, field, seeds);
    loop {
        let mut grew = false;
        let mut vectors: Vec<Vec<Scalar>> = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
        for op in operators {
            for i in 0..space.dim() {
                let image = op.apply(&space.basis_vector(i));
                if !space.contains(&image) {
                    vectors.push(image);
                    grew = true;
                }
            }
        }
        if !grew {
            return space;
        }
        space = Subspace::from_spanning(ambient, field, &vectors);
    }
}

/// Smallest coaction-stable subspace containing `v`: the repeated span of
/// first legs of the coaction. The result always contains `v` because
/// (id⊗ε)ρ = id writes v as an ε-weighted combination of its legs.
pub fn generated_subcomodule(m: &Comodule, v: &[Scalar]) -> Subspace {
    assert_eq!(v.len(), m.dim(), "seed vector dimension");
    let legs: Vec<Matrix> = (0..m.hopf().dim()).map(|k| m.leg_operator(k)).collect();
    operator_closure(m.dim(), &[v.to_vec()], &legs)
}

/// Cosemisimplicity witness: a functional λ with λ(1) = 1 and
/// (id⊗λ)∘Δ = unit∘λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosemisimpleWitness {
    /// Coordinates of λ in the dual basis.
    pub lambda: Vec<Scalar>,
}

/// Tests whether H is cosemisimple by solving for a normalized integral:
/// λ(1) = 1 together with the linear identity h₁λ(h₂) = λ(h)·1 for every
/// basis vector h. Returns the witness functional when one exists.
pub fn is_cosemisimple(hopf: &HopfAlgebra) -> Option<CosemisimpleWitness> {
    let d = hopf.dim();
    let field = hopf.field();
    // Unknowns: λ_k = λ(h_k). For each basis index i and each output
    // coordinate j: Σ_k Δ[i][(j,k)]·λ_k − unit[j]·λ_i = 0.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(d * d + 1);
    let mut rhs: Vec<Scalar> = Vec::with_capacity(d * d + 1);
    for i in 0..d {
        let delta = hopf.comult().column(i);
        for j in 0..d {
            let mut row: Vec<Scalar> = (0..d).map(|k| delta[j * d + k].clone()).collect();
            row[i] = row[i].sub(&hopf.unit()[j]);
            rows.push(row);
            rhs.push(field.zero());
        }
    }
    // λ(1) = Σ_i unit_i λ_i = 1.
    rows.push(hopf.unit().to_vec());
    rhs.push(field.one());
    let system = Matrix::from_rows(field, rows).expect("uniform rows");
    solve_linear(&system, &rhs)
        .expect("shapes agree")
        .map(|lambda| CosemisimpleWitness { lambda })
}

/// Replay check for a claimed cosemisimplicity witness.
pub fn check_cosemisimple_witness(hopf: &HopfAlgebra, witness: &CosemisimpleWitness) -> bool {
    let d = hopf.dim();
    if witness.lambda.len() != d {
        return false;
    }
    let pair = |v: &[Scalar]| -> Scalar {
        let mut acc = hopf.field().zero();
        for (k, c) in v.iter().enumerate() {
            acc = acc.add(&c.mul(&witness.lambda[k]));
        }
        acc
    };
    if !pair(hopf.unit()).is_one() {
        return false;
    }
    for i in 0..d {
        let delta = hopf.comult().column(i);
        for j in 0..d {
            let legs: Vec<Scalar> = (0..d).map(|k| delta[j * d + k].clone()).collect();
            if pair(&legs) != hopf.unit()[j].mul(&witness.lambda[i]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cyclic_group_table, group_algebra, sweedler_h4};
    use crate::scalar::Field;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(Field::Rational, n)
    }

    fn qc2() -> Arc<HopfAlgebra> {
        Arc::new(group_algebra(Field::Rational, &cyclic_group_table(2)).unwrap())
    }

    #[test]
    fn regular_comodule_of_qc2_has_unit_coinvariants() {
        let h = qc2();
        let m = Comodule::regular(h);
        let coinv = coinvariants(&m);
        assert_eq!(coinv.dim(), 1);
        assert!(coinv.contains(&[q(1), q(0)]));
    }

    #[test]
    fn trivial_coaction_is_all_coinvariant() {
        let h = qc2();
        let m = Comodule::trivial(h, 3);
        assert_eq!(coinvariants(&m).dim(), 3);
    }

    #[test]
    fn coinvariant_vectors_satisfy_the_defining_identity() {
        let h = qc2();
        let m = Comodule::regular(h.clone());
        let coinv = coinvariants(&m);
        let embed = trivial_coaction(&h, m.dim());
        for i in 0..coinv.dim() {
            let v = coinv.basis_vector(i);
            assert_eq!(m.coaction().apply(&v), embed.apply(&v));
        }
    }

    #[test]
    fn identity_is_colinear_and_counit_is_not() {
        let h = qc2();
        let m = Comodule::regular(h.clone());
        let id = Matrix::identity(2, Field::Rational);
        assert!(is_colinear(&id, &m, &m).unwrap());
        // ε: QC₂ → k with the trivial coaction on k sends g to 1, but
        // ρ_k(ε(g)) = 1⊗1 while (ε⊗id)ρ(g) = 1⊗g.
        let k = Comodule::trivial(h, 1);
        let eps = Matrix::from_rows(Field::Rational, vec![vec![q(1), q(1)]]).unwrap();
        assert!(!is_colinear(&eps, &m, &k).unwrap());
        // Shape errors are reported, not panicked.
        assert!(is_colinear(&id, &m, &k).is_err());
    }

    #[test]
    fn cosemisimplicity_of_group_algebras() {
        let h = qc2();
        let w = is_cosemisimple(&h).expect("QC₂ is cosemisimple");
        assert_eq!(w.lambda, vec![q(1), q(0)]);
        assert!(check_cosemisimple_witness(&h, &w));

        let h2 = group_algebra(Field::Prime(2), &cyclic_group_table(2)).unwrap();
        let w2 = is_cosemisimple(&h2).expect("F₂C₂ is cosemisimple as a coalgebra");
        assert!(check_cosemisimple_witness(&h2, &w2));
    }

    #[test]
    fn sweedler_h4_is_not_cosemisimple() {
        let h = sweedler_h4(Field::Rational).unwrap();
        assert!(is_cosemisimple(&h).is_none());
    }

    #[test]
    fn leg_operators_reassemble_the_identity() {
        // Σ_k ε(h_k)·leg_k = (id⊗ε)ρ = id.
        let h = qc2();
        let m = Comodule::regular(h.clone());
        let mut acc = Matrix::zero(2, 2, Field::Rational);
        for k in 0..h.dim() {
            acc = acc.add(&m.leg_operator(k).scale(h.coalgebra().counit_of(k)));
        }
        assert_eq!(acc, Matrix::identity(2, Field::Rational));
    }
}
