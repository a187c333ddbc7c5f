//! Comodule algebras and relative Hopf modules, together with the
//! constructive maps between them: Hom-spaces with their induced coaction,
//! tensor constructions over the base field, over A, and over the
//! coinvariant subalgebra B, the unit and counit of the base-extension /
//! coinvariants adjunction, the isomorphism M ≅ (M⊗H)^{coH}, and the
//! currying bijection for morphism spaces.
//!
//! Everything here is exact linear algebra: subobjects come out as
//! canonical [`Subspace`] values, quotients as explicit projection/section
//! pairs, and each construction re-validates the axioms of its output.

use std::sync::Arc;

use crate::comodule::{
    coinvariants, coinvariants_of_matrix, is_colinear, validate_coaction_into, Comodule,
};
use crate::diagnostics::{Diagnostic, DiagnosticSink};
use crate::hopf::{tensor_product_multiply, FinAlgebra, HopfAlgebra};
use crate::linalg::{solve_linear, solve_matrix, Matrix, Subspace};
use crate::scalar::{Field, Scalar};

/// An algebra A that is simultaneously a comodule over H, with the
/// coaction multiplicative and unital. Carries its computed coinvariant
/// subalgebra B = A^{coH}.
#[derive(Debug, Clone)]
pub struct ComoduleAlgebra {
    algebra: FinAlgebra,
    comodule: Comodule,
    coinvariants: Subspace,
    commutative: bool,
}

impl ComoduleAlgebra {
    pub fn new(
        algebra: FinAlgebra,
        hopf: Arc<HopfAlgebra>,
        coaction: Matrix,
    ) -> Result<ComoduleAlgebra, Vec<Diagnostic>> {
        let mut sink = DiagnosticSink::new();
        if algebra.field() != hopf.field() || coaction.field() != hopf.field() {
            sink.report(
                "dimension mismatch",
                format!(
                    "algebra over {}, coaction over {}, Hopf algebra over {}",
                    algebra.field(),
                    coaction.field(),
                    hopf.field()
                ),
            );
            return Err(sink.into_diagnostics());
        }
        let dim = algebra.dim();
        let dh = hopf.dim();
        algebra.validate_into(&mut sink, "algebra");
        validate_coaction_into(&hopf, dim, &coaction, &mut sink);
        if !sink.is_clean() {
            return Err(sink.into_diagnostics());
        }
        let field = algebra.field();

        // ρ(1) = 1 ⊗ 1.
        let rho_unit = coaction.apply(algebra.unit());
        let mut unit_tensor = vec![field.zero(); dim * dh];
        for (i, a) in algebra.unit().iter().enumerate() {
            for (k, h) in hopf.unit().iter().enumerate() {
                unit_tensor[i * dh + k] = a.mul(h);
            }
        }
        if rho_unit != unit_tensor {
            sink.report("unit colinearity", "ρ(1) ≠ 1 ⊗ 1");
        }

        // ρ(e_i e_j) = ρ(e_i) ρ(e_j) in A ⊗ H.
        for i in 0..dim {
            for j in 0..dim {
                let prod = algebra.multiply(&algebra.basis_vector(i), &algebra.basis_vector(j));
                let lhs = coaction.apply(&prod);
                let rhs = tensor_product_multiply(
                    &algebra,
                    hopf.algebra(),
                    &coaction.column(i),
                    &coaction.column(j),
                );
                if lhs != rhs {
                    sink.report(
                        "multiplicativity",
                        format!("ρ(e{}·e{}) is not the product of the coactions", i + 1, j + 1),
                    );
                }
            }
        }
        if !sink.is_clean() {
            return Err(sink.into_diagnostics());
        }

        let comodule = Comodule::validate(hopf, dim, coaction).expect("axioms checked above");
        let coinv = coinvariants(&comodule);

        // B is a subalgebra containing 1; this is forced by the axioms and
        // kept as an internal consistency check.
        if coinv.coordinates(algebra.unit()).is_none() {
            sink.report("coinvariant subalgebra", "1 is not coinvariant");
        }
        for u in 0..coinv.dim() {
            for v in 0..coinv.dim() {
                let p = algebra.multiply(&coinv.basis_vector(u), &coinv.basis_vector(v));
                if !coinv.contains(&p) {
                    sink.report(
                        "coinvariant subalgebra",
                        format!("product of coinvariant basis vectors {} and {} escapes", u + 1, v + 1),
                    );
                }
            }
        }
        let commutative = algebra.is_commutative();
        sink.into_result(ComoduleAlgebra { algebra, comodule, coinvariants: coinv, commutative })
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.comodule.hopf()
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }

    pub fn coaction(&self) -> &Matrix {
        self.comodule.coaction()
    }

    /// The coinvariant subalgebra B = A^{coH}, with its canonical basis.
    pub fn coinvariants(&self) -> &Subspace {
        &self.coinvariants
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn unit(&self) -> &[Scalar] {
        self.algebra.unit()
    }

    pub fn coinv_dim(&self) -> usize {
        self.coinvariants.dim()
    }

    /// Coordinates of 1_A in the coinvariant basis.
    pub fn coinv_unit(&self) -> Vec<Scalar> {
        self.coinvariants
            .coordinates(self.algebra.unit())
            .expect("1 is coinvariant for a validated comodule algebra")
    }

    /// Product of two B-coordinate vectors, again in B-coordinates.
    pub fn coinv_product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let a = self.coinvariants.basis().apply(u);
        let b = self.coinvariants.basis().apply(v);
        self.coinvariants
            .coordinates(&self.algebra.multiply(&a, &b))
            .expect("B is closed under multiplication")
    }
}

/// Structural identity of the base used when combining modules: the same
/// shared algebra, or an exact copy of its tables.
pub fn same_base(x: &Arc<ComoduleAlgebra>, y: &Arc<ComoduleAlgebra>) -> bool {
    Arc::ptr_eq(x, y)
        || (x.algebra == y.algebra
            && x.coaction() == y.coaction()
            && **x.hopf() == **y.hopf())
}

/// Action of A ⊗ H on M ⊗ H: (a⊗h)·(m⊗h') = a·m ⊗ hh'.
fn module_tensor_multiply(
    action: &[Matrix],
    h: &FinAlgebra,
    u: &[Scalar],
    v: &[Scalar],
    dim_m: usize,
) -> Vec<Scalar> {
    let da = action.len();
    let dh = h.dim();
    assert_eq!(u.len(), da * dh);
    assert_eq!(v.len(), dim_m * dh);
    let field = h.field();
    let mut out = vec![field.zero(); dim_m * dh];
    for a in 0..da {
        for b in 0..dh {
            let x = &u[a * dh + b];
            if x.is_zero() {
                continue;
            }
            for c in 0..dim_m {
                for e in 0..dh {
                    let y = &v[c * dh + e];
                    if y.is_zero() {
                        continue;
                    }
                    let w = x.mul(y);
                    for r in 0..dim_m {
                        let am = action[a].get(r, c);
                        if am.is_zero() {
                            continue;
                        }
                        for s in 0..dh {
                            let hh = h.mult_coeff(b, e, s);
                            if !hh.is_zero() {
                                out[r * dh + s] = out[r * dh + s].add(&w.mul(am).mul(hh));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A module over A carrying a compatible H-coaction:
/// ρ(a·m) = a₀m₀ ⊗ a₁m₁. Carries its computed coinvariants M^{coH}.
#[derive(Debug, Clone)]
pub struct RelHopfModule {
    over: Arc<ComoduleAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    comodule: Comodule,
    coinvariants: Subspace,
}

impl RelHopfModule {
    pub fn new(
        over: Arc<ComoduleAlgebra>,
        dim: usize,
        action: Vec<Matrix>,
        coaction: Matrix,
    ) -> Result<RelHopfModule, Vec<Diagnostic>> {
        let mut sink = DiagnosticSink::new();
        let field = over.field();
        let da = over.dim();
        if action.len() != da {
            sink.report(
                "dimension mismatch",
                format!("{} action operators for an algebra of dimension {da}", action.len()),
            );
            return Err(sink.into_diagnostics());
        }
        for (i, op) in action.iter().enumerate() {
            if (op.rows(), op.cols()) != (dim, dim) || op.field() != field {
                sink.report(
                    "dimension mismatch",
                    format!("action operator {} is {}×{}, needs {dim}×{dim}", i + 1, op.rows(), op.cols()),
                );
                return Err(sink.into_diagnostics());
            }
        }
        if coaction.field() != field {
            sink.report("dimension mismatch", "coaction over a different field");
            return Err(sink.into_diagnostics());
        }
        validate_coaction_into(over.hopf(), dim, &coaction, &mut sink);
        if !sink.is_clean() {
            return Err(sink.into_diagnostics());
        }

        // 1·m = m.
        let mut unit_op = Matrix::zero(dim, dim, field);
        for (i, c) in over.unit().iter().enumerate() {
            if !c.is_zero() {
                unit_op = unit_op.add(&action[i].scale(c));
            }
        }
        if unit_op != Matrix::identity(dim, field) {
            sink.report("module unit", "1_A does not act as the identity");
        }

        // (e_i e_j)·m = e_i·(e_j·m).
        for i in 0..da {
            for j in 0..da {
                let composed = action[i].mul(&action[j]);
                let mut prod_op = Matrix::zero(dim, dim, field);
                for k in 0..da {
                    let c = over.algebra().mult_coeff(i, j, k);
                    if !c.is_zero() {
                        prod_op = prod_op.add(&action[k].scale(c));
                    }
                }
                if composed != prod_op {
                    sink.report(
                        "module associativity",
                        format!("e{}·(e{}·m) ≠ (e{}e{})·m", i + 1, j + 1, i + 1, j + 1),
                    );
                }
            }
        }

        // ρ(e_i·m_j) = (e_i)₀(m_j)₀ ⊗ (e_i)₁(m_j)₁.
        let h_alg = over.hopf().algebra();
        for i in 0..da {
            for j in 0..dim {
                let lhs = coaction.apply(&action[i].column(j));
                let rhs = module_tensor_multiply(
                    &action,
                    h_alg,
                    &over.coaction().column(i),
                    &coaction.column(j),
                    dim,
                );
                if lhs != rhs {
                    sink.report(
                        "compatibility",
                        format!("ρ(e{}·m{}) ≠ (e{})₀(m{})₀ ⊗ (e{})₁(m{})₁", i + 1, j + 1, i + 1, j + 1, i + 1, j + 1),
                    );
                }
            }
        }
        if !sink.is_clean() {
            return Err(sink.into_diagnostics());
        }

        let comodule =
            Comodule::validate(over.hopf().clone(), dim, coaction).expect("axioms checked above");
        let coinv = coinvariants(&comodule);

        // M^{coH} is a module over B — internal consistency check.
        for u in 0..over.coinv_dim() {
            let b = over.coinvariants().basis_vector(u);
            let op = action_operator_of(&action, &b, dim, field);
            for l in 0..coinv.dim() {
                if !coinv.contains(&op.apply(&coinv.basis_vector(l))) {
                    sink.report(
                        "coinvariant stability",
                        format!("coinvariant basis vector {} leaves M^coH under B", l + 1),
                    );
                }
            }
        }
        sink.into_result(RelHopfModule { over, dim, action, comodule, coinvariants: coinv })
    }

    /// A itself, acting by left multiplication and coacting by ρ_A.
    pub fn regular(over: &Arc<ComoduleAlgebra>) -> RelHopfModule {
        let alg = over.algebra();
        let action: Vec<Matrix> =
            (0..alg.dim()).map(|i| alg.left_mult_matrix(&alg.basis_vector(i))).collect();
        RelHopfModule::new(over.clone(), alg.dim(), action, over.coaction().clone())
            .expect("the regular module of a valid comodule algebra is valid")
    }

    pub fn zero(over: &Arc<ComoduleAlgebra>) -> RelHopfModule {
        let field = over.field();
        let action = vec![Matrix::zero(0, 0, field); over.dim()];
        RelHopfModule::new(over.clone(), 0, action, Matrix::zero(0, 0, field))
            .expect("the zero module is valid")
    }

    pub fn direct_sum(&self, other: &RelHopfModule) -> RelHopfModule {
        assert!(same_base(&self.over, &other.over), "direct sum over different base algebras");
        let field = self.field();
        let (p, q) = (self.dim, other.dim);
        let dim = p + q;
        let dh = self.hopf().dim();
        let action: Vec<Matrix> = (0..self.over.dim())
            .map(|i| {
                Matrix::from_fn(dim, dim, field, |r, c| {
                    if r < p && c < p {
                        self.action[i].get(r, c).clone()
                    } else if r >= p && c >= p {
                        other.action[i].get(r - p, c - p).clone()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        let mut coaction = Matrix::zero(dim * dh, dim, field);
        for j in 0..p {
            for jp in 0..p {
                for k in 0..dh {
                    let c = self.coaction().get(jp * dh + k, j);
                    if !c.is_zero() {
                        coaction.set(jp * dh + k, j, c.clone());
                    }
                }
            }
        }
        for j in 0..q {
            for jp in 0..q {
                for k in 0..dh {
                    let c = other.coaction().get(jp * dh + k, j);
                    if !c.is_zero() {
                        coaction.set((p + jp) * dh + k, p + j, c.clone());
                    }
                }
            }
        }
        RelHopfModule::new(self.over.clone(), dim, action, coaction)
            .expect("direct sum of valid modules is valid")
    }

    /// A^{(copies)} with copy-major coordinates: slot (c, i) = c·dim A + i.
    pub fn free(over: &Arc<ComoduleAlgebra>, copies: usize) -> RelHopfModule {
        let mut m = RelHopfModule::zero(over);
        for _ in 0..copies {
            m = m.direct_sum(&RelHopfModule::regular(over));
        }
        m
    }

    pub fn over(&self) -> &Arc<ComoduleAlgebra> {
        &self.over
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.over.hopf()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.over.field()
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_matrix(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// The operator by which the algebra vector `a` acts.
    pub fn action_operator(&self, a: &[Scalar]) -> Matrix {
        action_operator_of(&self.action, a, self.dim, self.field())
    }

    pub fn act(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.action_operator(a).apply(m)
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }

    pub fn coaction(&self) -> &Matrix {
        self.comodule.coaction()
    }

    pub fn coinvariants(&self) -> &Subspace {
        &self.coinvariants
    }

    /// M^{coH} as a module over B, with action tables over the coinvariant
    /// bases of A and of M.
    pub fn coinvariant_bmodule(&self) -> BModule {
        let field = self.field();
        let q = self.coinvariants.dim();
        let action: Vec<Matrix> = (0..self.over.coinv_dim())
            .map(|u| {
                let op = self.action_operator(&self.over.coinvariants().basis_vector(u));
                Matrix::from_columns(
                    q,
                    field,
                    &(0..q)
                        .map(|l| {
                            self.coinvariants
                                .coordinates(&op.apply(&self.coinvariants.basis_vector(l)))
                                .expect("M^coH is stable under B")
                        })
                        .collect::<Vec<_>>(),
                )
                .expect("square table")
            })
            .collect();
        BModule::new(self.over.clone(), q, action).expect("coinvariants form a B-module")
    }

    /// Restriction of the structure to a subspace, when it is stable under
    /// both the action and the coaction.
    pub fn restrict(&self, w: &Subspace) -> Option<RelHopfModule> {
        let basis = w.basis();
        let mut action = Vec::with_capacity(self.over.dim());
        for op in &self.action {
            let image = op.mul(basis);
            let x = solve_matrix(basis, &image).expect("same field")?;
            action.push(x);
        }
        let restricted = self.comodule.restrict_to(w)?;
        RelHopfModule::new(self.over.clone(), w.dim(), action, restricted.coaction().clone()).ok()
    }
}

fn action_operator_of(action: &[Matrix], a: &[Scalar], dim: usize, field: Field) -> Matrix {
    let mut op = Matrix::zero(dim, dim, field);
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            op = op.add(&action[i].scale(c));
        }
    }
    op
}

/// A finite-dimensional module over B = A^{coH}, with action tables
/// indexed by the coinvariant basis of A.
#[derive(Debug, Clone)]
pub struct BModule {
    over: Arc<ComoduleAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl BModule {
    pub fn new(
        over: Arc<ComoduleAlgebra>,
        dim: usize,
        action: Vec<Matrix>,
    ) -> Result<BModule, Vec<Diagnostic>> {
        let mut sink = DiagnosticSink::new();
        let field = over.field();
        let db = over.coinv_dim();
        if action.len() != db {
            sink.report(
                "dimension mismatch",
                format!("{} action operators for B of dimension {db}", action.len()),
            );
            return Err(sink.into_diagnostics());
        }
        for (u, op) in action.iter().enumerate() {
            if (op.rows(), op.cols()) != (dim, dim) || op.field() != field {
                sink.report(
                    "dimension mismatch",
                    format!("action operator {} is {}×{}, needs {dim}×{dim}", u + 1, op.rows(), op.cols()),
                );
                return Err(sink.into_diagnostics());
            }
        }
        let unit_op = action_operator_of(&action, &over.coinv_unit(), dim, field);
        if unit_op != Matrix::identity(dim, field) {
            sink.report("module unit", "1_B does not act as the identity");
        }
        for u in 0..db {
            for v in 0..db {
                let composed = action[u].mul(&action[v]);
                let mut eu = vec![field.zero(); db];
                eu[u] = field.one();
                let mut ev = vec![field.zero(); db];
                ev[v] = field.one();
                let prod = over.coinv_product(&eu, &ev);
                let prod_op = action_operator_of(&action, &prod, dim, field);
                if composed != prod_op {
                    sink.report(
                        "module associativity",
                        format!("b{}·(b{}·p) ≠ (b{}b{})·p", u + 1, v + 1, u + 1, v + 1),
                    );
                }
            }
        }
        sink.into_result(BModule { over, dim, action })
    }

    /// B as a module over itself.
    pub fn regular(over: &Arc<ComoduleAlgebra>) -> BModule {
        let field = over.field();
        let db = over.coinv_dim();
        let action: Vec<Matrix> = (0..db)
            .map(|u| {
                Matrix::from_columns(
                    db,
                    field,
                    &(0..db)
                        .map(|v| {
                            let mut eu = vec![field.zero(); db];
                            eu[u] = field.one();
                            let mut ev = vec![field.zero(); db];
                            ev[v] = field.one();
                            over.coinv_product(&eu, &ev)
                        })
                        .collect::<Vec<_>>(),
                )
                .expect("square table")
            })
            .collect();
        BModule::new(over.clone(), db, action).expect("B is a module over itself")
    }

    pub fn zero(over: &Arc<ComoduleAlgebra>) -> BModule {
        let field = over.field();
        let action = vec![Matrix::zero(0, 0, field); over.coinv_dim()];
        BModule::new(over.clone(), 0, action).expect("the zero module is valid")
    }

    pub fn direct_sum(&self, other: &BModule) -> BModule {
        assert!(same_base(&self.over, &other.over), "direct sum over different base algebras");
        let field = self.over.field();
        let (p, q) = (self.dim, other.dim);
        let action: Vec<Matrix> = (0..self.action.len())
            .map(|u| {
                Matrix::from_fn(p + q, p + q, field, |r, c| {
                    if r < p && c < p {
                        self.action[u].get(r, c).clone()
                    } else if r >= p && c >= p {
                        other.action[u].get(r - p, c - p).clone()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        BModule::new(self.over.clone(), p + q, action).expect("direct sum of valid modules")
    }

    /// B^{(copies)} with copy-major coordinates.
    pub fn free(over: &Arc<ComoduleAlgebra>, copies: usize) -> BModule {
        let mut m = BModule::zero(over);
        for _ in 0..copies {
            m = m.direct_sum(&BModule::regular(over));
        }
        m
    }

    pub fn over(&self) -> &Arc<ComoduleAlgebra> {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_matrix(&self, u: usize) -> &Matrix {
        &self.action[u]
    }

    /// The operator by which the B-coordinate vector `b` acts.
    pub fn action_operator(&self, b: &[Scalar]) -> Matrix {
        action_operator_of(&self.action, b, self.dim, self.over.field())
    }
}

/// An A-linear H-colinear map between relative Hopf modules.
#[derive(Debug, Clone)]
pub struct RelHopfMorphism {
    source: RelHopfModule,
    target: RelHopfModule,
    matrix: Matrix,
}

impl RelHopfMorphism {
    pub fn new(
        source: RelHopfModule,
        target: RelHopfModule,
        matrix: Matrix,
    ) -> Result<RelHopfMorphism, Vec<Diagnostic>> {
        let mut sink = DiagnosticSink::new();
        if !same_base(&source.over, &target.over) {
            sink.report("dimension mismatch", "source and target live over different algebras");
            return Err(sink.into_diagnostics());
        }
        if (matrix.rows(), matrix.cols()) != (target.dim, source.dim) {
            sink.report(
                "dimension mismatch",
                format!(
                    "map is {}×{}, needs {}×{}",
                    matrix.rows(),
                    matrix.cols(),
                    target.dim,
                    source.dim
                ),
            );
            return Err(sink.into_diagnostics());
        }
        for i in 0..source.over.dim() {
            if matrix.mul(&source.action[i]) != target.action[i].mul(&matrix) {
                sink.report("linearity", format!("does not commute with the action of e{}", i + 1));
            }
        }
        match is_colinear(&matrix, &source.comodule, &target.comodule) {
            Ok(true) => {}
            Ok(false) => sink.report("colinearity", "ρ∘f ≠ (f⊗id)∘ρ"),
            Err(e) => sink.report("dimension mismatch", e.to_string()),
        }
        sink.into_result(RelHopfMorphism { source, target, matrix })
    }

    pub fn identity(m: &RelHopfModule) -> RelHopfMorphism {
        RelHopfMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.dim, m.field()),
        }
    }

    pub fn source(&self) -> &RelHopfModule {
        &self.source
    }

    pub fn target(&self) -> &RelHopfModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim == self.target.dim && self.matrix.rank() == self.source.dim
    }
}

pub(crate) fn flatten(m: &Matrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            v.push(m.get(r, c).clone());
        }
    }
    v
}

pub(crate) fn unflatten(rows: usize, cols: usize, field: Field, v: &[Scalar]) -> Matrix {
    Matrix::from_fn(rows, cols, field, |r, c| v[r * cols + c].clone())
}

/// Constraint rows expressing that an unknown dim N × dim M matrix F
/// commutes with every action operator. F is flattened row-major.
pub(crate) fn a_linear_constraints(m: &RelHopfModule, n: &RelHopfModule) -> Matrix {
    let field = m.field();
    let (p, q) = (m.dim, n.dim);
    let da = m.over.dim();
    let mut k = Matrix::zero(da * q * p, q * p, field);
    for i in 0..da {
        let x = &m.action[i];
        let y = &n.action[i];
        for r in 0..q {
            for c in 0..p {
                let row = (i * q + r) * p + c;
                for s in 0..p {
                    let coeff = x.get(s, c);
                    if !coeff.is_zero() {
                        k.add_assign_at(row, r * p + s, coeff);
                    }
                }
                for s in 0..q {
                    let coeff = y.get(r, s);
                    if !coeff.is_zero() {
                        k.add_assign_at(row, s * p + c, &coeff.neg());
                    }
                }
            }
        }
    }
    k
}

/// Constraint rows expressing that F is colinear: ρ_N ∘ F = (F⊗id) ∘ ρ_M.
pub(crate) fn colinear_constraints(
    rho_m: &Matrix,
    p: usize,
    rho_n: &Matrix,
    q: usize,
    dh: usize,
    field: Field,
) -> Matrix {
    let mut k = Matrix::zero(q * dh * p, q * p, field);
    for n_ in 0..q {
        for l in 0..dh {
            for j in 0..p {
                let row = (n_ * dh + l) * p + j;
                for s in 0..q {
                    let coeff = rho_n.get(n_ * dh + l, s);
                    if !coeff.is_zero() {
                        k.add_assign_at(row, s * p + j, coeff);
                    }
                }
                for b in 0..p {
                    let coeff = rho_m.get(b * dh + l, j);
                    if !coeff.is_zero() {
                        k.add_assign_at(row, n_ * p + b, &coeff.neg());
                    }
                }
            }
        }
    }
    k
}

/// Canonical basis of the space of A-linear maps M → N.
pub fn a_linear_space(m: &RelHopfModule, n: &RelHopfModule) -> Vec<Matrix> {
    let kernel = a_linear_constraints(m, n).kernel_basis();
    (0..kernel.cols())
        .map(|c| unflatten(n.dim, m.dim, m.field(), &kernel.column(c)))
        .collect()
}

/// Canonical basis of the space of morphisms M → N (A-linear and colinear).
pub fn morphism_space(m: &RelHopfModule, n: &RelHopfModule) -> Vec<Matrix> {
    let lin = a_linear_constraints(m, n);
    let col = colinear_constraints(
        m.coaction(),
        m.dim,
        n.coaction(),
        n.dim,
        m.hopf().dim(),
        m.field(),
    );
    let kernel = lin.vstack(&col).kernel_basis();
    (0..kernel.cols())
        .map(|c| unflatten(n.dim, m.dim, m.field(), &kernel.column(c)))
        .collect()
}

/// The space of A-linear maps M → N together with its induced H-coaction
/// π(f)(m) = f(m₀)₀ ⊗ S⁻¹(m₁)·f(m₀)₁, expressed on the canonical basis.
///
/// π is always evaluable in finite dimension; whether it satisfies the
/// comodule axioms is recorded in the `coassociative`/`counital` flags
/// rather than assumed.
#[derive(Debug, Clone)]
pub struct HomSpace {
    hopf: Arc<HopfAlgebra>,
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Matrix>,
    coaction: Matrix,
    coassociative: bool,
    counital: bool,
    coinvariants: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    pub fn is_coassociative(&self) -> bool {
        self.coassociative
    }

    pub fn is_counital(&self) -> bool {
        self.counital
    }

    /// Coinvariants of π in basis coordinates.
    pub fn coinvariants(&self) -> &Subspace {
        &self.coinvariants
    }

    pub fn map_from_coordinates(&self, coords: &[Scalar]) -> Matrix {
        let field = self.hopf.field();
        let mut out = Matrix::zero(self.target_dim, self.source_dim, field);
        for (beta, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.basis[beta].scale(c));
            }
        }
        out
    }

    /// The coinvariant maps themselves, as matrices.
    pub fn coinvariant_maps(&self) -> Vec<Matrix> {
        (0..self.coinvariants.dim())
            .map(|t| self.map_from_coordinates(&self.coinvariants.basis_vector(t)))
            .collect()
    }

    /// The coaction as a validated comodule, when the axioms hold.
    pub fn comodule(&self) -> Option<Comodule> {
        Comodule::validate(self.hopf.clone(), self.basis.len(), self.coaction.clone()).ok()
    }
}

/// Computes _A Hom(M,N) with its induced coaction π.
pub fn hom_space(m: &RelHopfModule, n: &RelHopfModule) -> HomSpace {
    assert!(same_base(&m.over, &n.over), "Hom over different base algebras");
    let field = m.field();
    let hopf = m.hopf().clone();
    let dh = hopf.dim();
    let (p, q) = (m.dim, n.dim);
    let basis = a_linear_space(m, n);
    let b = basis.len();

    // S⁻¹(h_k)·h_l for all k, l.
    let h_alg = hopf.algebra();
    let sinv = hopf.antipode_inv();
    let mut sinv_mult = Vec::with_capacity(dh);
    for k in 0..dh {
        let sk = sinv.column(k);
        let mut row = Vec::with_capacity(dh);
        for l in 0..dh {
            let mut el = vec![field.zero(); dh];
            el[l] = field.one();
            row.push(h_alg.multiply(&sk, &el));
        }
        sinv_mult.push(row);
    }

    let rho_m = m.coaction();
    let rho_n = n.coaction();
    // π(f_β) as a map M → N⊗H, then re-expressed through the basis:
    // the h_k-component of π(f) is again A-linear, so it has exact
    // coordinates in {f_γ}.
    let mut rhs_cols: Vec<Vec<Scalar>> = Vec::with_capacity(b * dh);
    for f in &basis {
        let mut pf = Matrix::zero(q * dh, p, field);
        for j in 0..p {
            for jp in 0..p {
                for k in 0..dh {
                    let c0 = rho_m.get(jp * dh + k, j);
                    if c0.is_zero() {
                        continue;
                    }
                    let w = rho_n.apply(&f.column(jp));
                    for n_ in 0..q {
                        for l in 0..dh {
                            let c1 = &w[n_ * dh + l];
                            if c1.is_zero() {
                                continue;
                            }
                            let c = c0.mul(c1);
                            for (s, hs) in sinv_mult[k][l].iter().enumerate() {
                                if !hs.is_zero() {
                                    pf.add_assign_at(n_ * dh + s, j, &c.mul(hs));
                                }
                            }
                        }
                    }
                }
            }
        }
        for k in 0..dh {
            let slice = Matrix::from_fn(q, p, field, |r, c| pf.get(r * dh + k, c).clone());
            rhs_cols.push(flatten(&slice));
        }
    }

    let coaction = if b == 0 {
        Matrix::zero(0, 0, field)
    } else {
        let basis_mat = Matrix::from_columns(
            q * p,
            field,
            &basis.iter().map(flatten).collect::<Vec<_>>(),
        )
        .expect("basis columns");
        let rhs = Matrix::from_columns(q * p, field, &rhs_cols).expect("slice columns");
        let coords = solve_matrix(&basis_mat, &rhs)
            .expect("same field")
            .expect("each component of π(f) is again A-linear");
        Matrix::from_fn(b * dh, b, field, |row, beta| {
            let (gamma, k) = (row / dh, row % dh);
            coords.get(gamma, beta * dh + k).clone()
        })
    };

    let mut scratch = DiagnosticSink::new();
    validate_coaction_into(&hopf, b, &coaction, &mut scratch);
    let diags = scratch.into_diagnostics();
    let coassociative = !diags.iter().any(|d| d.law == "coaction coassociativity");
    let counital = !diags.iter().any(|d| d.law == "coaction counit");
    let coinvariants = coinvariants_of_matrix(&hopf, b, &coaction);
    HomSpace {
        hopf,
        source_dim: p,
        target_dim: q,
        basis,
        coaction,
        coassociative,
        counital,
        coinvariants,
    }
}

/// Checks that the coinvariants of the Hom-space coaction coincide with
/// the independently solved space of A-linear colinear maps.
pub fn hom_coinvariants_equal_colinear(m: &RelHopfModule, n: &RelHopfModule) -> bool {
    let hs = hom_space(m, n);
    let field = m.field();
    let ambient = n.dim * m.dim;
    let pi_side: Vec<Vec<Scalar>> =
        hs.coinvariant_maps().iter().map(flatten).collect();
    let direct_side: Vec<Vec<Scalar>> =
        morphism_space(m, n).iter().map(flatten).collect();
    Subspace::from_spanning(ambient, field, &pi_side)
        == Subspace::from_spanning(ambient, field, &direct_side)
}

/// _A Hom(A,N) as a relative Hopf module, with the evaluation-at-1
/// isomorphism onto N and its inverse n ↦ (a ↦ a·n).
#[derive(Debug, Clone)]
pub struct EvalIso {
    pub hom: HomSpace,
    pub module: RelHopfModule,
    pub forward: RelHopfMorphism,
    pub backward: RelHopfMorphism,
}

pub fn evaluation_isomorphism(n: &RelHopfModule) -> Result<EvalIso, Vec<Diagnostic>> {
    let over = n.over().clone();
    let field = n.field();
    let alg = over.algebra();
    let da = alg.dim();
    let q = n.dim;
    let a_reg = RelHopfModule::regular(&over);
    let hs = hom_space(&a_reg, n);
    let b = hs.dim();

    let basis_mat = Matrix::from_columns(
        q * da,
        field,
        &hs.basis().iter().map(flatten).collect::<Vec<_>>(),
    )
    .expect("basis columns");

    // (e_i · f)(u) = f(u·e_i): compose with right multiplication.
    let mut action = Vec::with_capacity(da);
    if b == 0 {
        action = vec![Matrix::zero(0, 0, field); da];
    } else {
        let mut rhs_cols = Vec::with_capacity(da * b);
        for i in 0..da {
            let rm = alg.right_mult_matrix(&alg.basis_vector(i));
            for f in hs.basis() {
                rhs_cols.push(flatten(&f.mul(&rm)));
            }
        }
        let rhs = Matrix::from_columns(q * da, field, &rhs_cols).expect("action columns");
        let coords = solve_matrix(&basis_mat, &rhs)
            .expect("same field")
            .ok_or_else(|| {
                vec![Diagnostic::new(
                    "evaluation isomorphism",
                    "the Hom-space is not stable under the algebra action",
                )]
            })?;
        for i in 0..da {
            action.push(Matrix::from_fn(b, b, field, |r, beta| {
                coords.get(r, i * b + beta).clone()
            }));
        }
    }
    let module = RelHopfModule::new(over.clone(), b, action, hs.coaction().clone())?;

    let forward_mat = Matrix::from_columns(
        q,
        field,
        &hs.basis().iter().map(|f| f.apply(alg.unit())).collect::<Vec<_>>(),
    )
    .expect("evaluation columns");
    let mut backward_cols = Vec::with_capacity(q);
    for j in 0..q {
        let kappa = Matrix::from_columns(
            q,
            field,
            &(0..da).map(|i| n.action[i].column(j)).collect::<Vec<_>>(),
        )
        .expect("action columns");
        let coords = solve_linear(&basis_mat, &flatten(&kappa))
            .expect("same field")
            .ok_or_else(|| {
                vec![Diagnostic::new(
                    "evaluation isomorphism",
                    "a right-action map is not in the computed Hom basis",
                )]
            })?;
        backward_cols.push(coords);
    }
    let backward_mat = Matrix::from_columns(b, field, &backward_cols).expect("coordinate columns");

    if forward_mat.mul(&backward_mat) != Matrix::identity(q, field)
        || backward_mat.mul(&forward_mat) != Matrix::identity(b, field)
    {
        return Err(vec![Diagnostic::new(
            "evaluation isomorphism",
            "evaluation at 1 and n ↦ (a ↦ a·n) do not compose to identities",
        )]);
    }
    let forward = RelHopfMorphism::new(module.clone(), n.clone(), forward_mat)?;
    let backward = RelHopfMorphism::new(n.clone(), module.clone(), backward_mat)?;
    Ok(EvalIso { hom: hs, module, forward, backward })
}

/// Codiagonal coaction on a tensor product: ρ(u⊗v) = u₀⊗v₀ ⊗ u₁v₁.
fn codiagonal_coaction(
    rho_l: &Matrix,
    dl: usize,
    rho_r: &Matrix,
    dr: usize,
    h: &FinAlgebra,
) -> Matrix {
    let dh = h.dim();
    let field = h.field();
    let mut out = Matrix::zero(dl * dr * dh, dl * dr, field);
    for i0 in 0..dl {
        for j0 in 0..dr {
            let col = i0 * dr + j0;
            for i in 0..dl {
                for k1 in 0..dh {
                    let c1 = rho_l.get(i * dh + k1, i0);
                    if c1.is_zero() {
                        continue;
                    }
                    for j in 0..dr {
                        for k2 in 0..dh {
                            let c2 = rho_r.get(j * dh + k2, j0);
                            if c2.is_zero() {
                                continue;
                            }
                            let c = c1.mul(c2);
                            for k in 0..dh {
                                let mk = h.mult_coeff(k1, k2, k);
                                if !mk.is_zero() {
                                    out.add_assign_at((i * dr + j) * dh + k, col, &c.mul(mk));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// N ⊗ V for a comodule V: the action stays on the left factor, the
/// coaction is codiagonal.
pub fn tensor_with_comodule(
    n: &RelHopfModule,
    v: &Comodule,
) -> Result<RelHopfModule, Vec<Diagnostic>> {
    if **n.hopf() != **v.hopf() {
        return Err(vec![Diagnostic::new(
            "dimension mismatch",
            "module and comodule live over different Hopf algebras",
        )]);
    }
    let field = n.field();
    let r = v.dim();
    let id_r = Matrix::identity(r, field);
    let action: Vec<Matrix> =
        n.action.iter().map(|op| op.kronecker(&id_r).expect("same field")).collect();
    let coaction =
        codiagonal_coaction(n.coaction(), n.dim, v.coaction(), r, n.hopf().algebra());
    RelHopfModule::new(n.over.clone(), n.dim * r, action, coaction)
}

/// V ⊗ N with the action through the right factor; requires H commutative.
pub fn tensor_commutative_h(
    v: &Comodule,
    n: &RelHopfModule,
) -> Result<RelHopfModule, Vec<Diagnostic>> {
    if **n.hopf() != **v.hopf() {
        return Err(vec![Diagnostic::new(
            "dimension mismatch",
            "module and comodule live over different Hopf algebras",
        )]);
    }
    if !n.hopf().is_commutative() {
        return Err(vec![Diagnostic::new(
            "commutativity",
            "the action through the right tensor factor needs a commutative Hopf algebra",
        )]);
    }
    let field = n.field();
    let r = v.dim();
    let id_r = Matrix::identity(r, field);
    let action: Vec<Matrix> =
        n.action.iter().map(|op| id_r.kronecker(op).expect("same field")).collect();
    let coaction =
        codiagonal_coaction(v.coaction(), r, n.coaction(), n.dim, n.hopf().algebra());
    RelHopfModule::new(n.over.clone(), r * n.dim, action, coaction)
}

/// A quotient of a coordinate space by a relation span, realized by an
/// explicit projection/section pair. The section hits the non-pivot
/// coordinates of the canonical relation basis, so quotient bases are
/// deterministic and replayable.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    ambient: usize,
    relations: Subspace,
    projection: Matrix,
    section: Matrix,
}

impl QuotientSpace {
    pub fn new(ambient: usize, field: Field, relation_span: &[Vec<Scalar>]) -> QuotientSpace {
        let relations = Subspace::from_spanning(ambient, field, relation_span);
        let basis = relations.basis();
        let m = relations.dim();
        let mut is_pivot = vec![false; ambient];
        let mut pivots = Vec::with_capacity(m);
        for t in 0..m {
            let mut r = 0;
            while basis.get(r, t).is_zero() {
                r += 1;
            }
            pivots.push(r);
            is_pivot[r] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&r| !is_pivot[r]).collect();
        let q = free.len();
        let mut projection = Matrix::zero(q, ambient, field);
        for (u, &cu) in free.iter().enumerate() {
            projection.set(u, cu, field.one());
            for (t, &rt) in pivots.iter().enumerate() {
                let coeff = basis.get(cu, t);
                if !coeff.is_zero() {
                    projection.add_assign_at(u, rt, &coeff.neg());
                }
            }
        }
        let mut section = Matrix::zero(ambient, q, field);
        for (u, &cu) in free.iter().enumerate() {
            section.set(cu, u, field.one());
        }
        QuotientSpace { ambient, relations, projection, section }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    /// Pushes an ambient operator down to the quotient; `None` when the
    /// operator does not preserve the relations.
    pub fn induce_operator(&self, t: &Matrix) -> Option<Matrix> {
        for idx in 0..self.relations.dim() {
            if !self.relations.contains(&t.apply(&self.relations.basis_vector(idx))) {
                return None;
            }
        }
        Some(self.projection.mul(t).mul(&self.section))
    }

    /// Pushes an ambient coaction down to the quotient; `None` when the
    /// relations are not mapped into relations ⊗ H.
    pub fn induce_coaction(&self, rho: &Matrix, dh: usize) -> Option<Matrix> {
        let field = self.projection.field();
        let mut span = Vec::with_capacity(self.relations.dim() * dh);
        for t in 0..self.relations.dim() {
            let b = self.relations.basis_vector(t);
            for k in 0..dh {
                let mut v = vec![field.zero(); self.ambient * dh];
                for (i, c) in b.iter().enumerate() {
                    v[i * dh + k] = c.clone();
                }
                span.push(v);
            }
        }
        let rel_h = Subspace::from_spanning(self.ambient * dh, field, &span);
        for t in 0..self.relations.dim() {
            if !rel_h.contains(&rho.apply(&self.relations.basis_vector(t))) {
                return None;
            }
        }
        let id_h = Matrix::identity(dh, field);
        Some(
            self.projection
                .kronecker(&id_h)
                .expect("same field")
                .mul(rho)
                .mul(&self.section),
        )
    }
}

/// A tensor product presented as a quotient of the ambient tensor space.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: RelHopfModule,
    pub quotient: QuotientSpace,
    pub left_dim: usize,
    pub right_dim: usize,
}

/// M ⊗_A N for commutative A, as a relative Hopf module.
pub fn tensor_over_a(
    m: &RelHopfModule,
    n: &RelHopfModule,
) -> Result<TensorProduct, Vec<Diagnostic>> {
    if !same_base(&m.over, &n.over) {
        return Err(vec![Diagnostic::new(
            "dimension mismatch",
            "tensor factors live over different algebras",
        )]);
    }
    if !m.over.is_commutative() {
        return Err(vec![Diagnostic::new(
            "commutativity",
            "the tensor product over A needs A commutative",
        )]);
    }
    let field = m.field();
    let (p, q) = (m.dim, n.dim);
    let da = m.over.dim();
    let dh = m.hopf().dim();
    let ambient = p * q;

    let mut relation_span = Vec::with_capacity(da * p * q);
    for t in 0..da {
        for i in 0..p {
            for j in 0..q {
                let mut rel = vec![field.zero(); ambient];
                for ip in 0..p {
                    let c = m.action[t].get(ip, i);
                    if !c.is_zero() {
                        rel[ip * q + j] = rel[ip * q + j].add(c);
                    }
                }
                for jp in 0..q {
                    let c = n.action[t].get(jp, j);
                    if !c.is_zero() {
                        rel[i * q + jp] = rel[i * q + jp].sub(c);
                    }
                }
                relation_span.push(rel);
            }
        }
    }
    let quotient = QuotientSpace::new(ambient, field, &relation_span);

    let id_q = Matrix::identity(q, field);
    let mut action = Vec::with_capacity(da);
    for t in 0..da {
        let amb = m.action[t].kronecker(&id_q).expect("same field");
        let op = quotient.induce_operator(&amb).ok_or_else(|| {
            vec![Diagnostic::new(
                "well-definedness",
                format!("the action of e{} does not preserve the relations", t + 1),
            )]
        })?;
        action.push(op);
    }
    let amb_coaction = codiagonal_coaction(m.coaction(), p, n.coaction(), q, m.hopf().algebra());
    let coaction = quotient.induce_coaction(&amb_coaction, dh).ok_or_else(|| {
        vec![Diagnostic::new(
            "well-definedness",
            "the codiagonal coaction does not preserve the relations",
        )]
    })?;
    let module = RelHopfModule::new(m.over.clone(), quotient.dim(), action, coaction)?;
    Ok(TensorProduct { module, quotient, left_dim: p, right_dim: q })
}

/// A ⊗_B P for a B-module P: the base extension of P along B ⊆ A.
pub fn tensor_over_b(
    a: &Arc<ComoduleAlgebra>,
    p: &BModule,
) -> Result<TensorProduct, Vec<Diagnostic>> {
    if !same_base(a, p.over()) {
        return Err(vec![Diagnostic::new(
            "dimension mismatch",
            "the module is not over this algebra's coinvariants",
        )]);
    }
    let field = a.field();
    let da = a.dim();
    let dp = p.dim();
    let db = a.coinv_dim();
    let dh = a.hopf().dim();
    let ambient = da * dp;

    let mut relation_span = Vec::with_capacity(da * db * dp);
    for i in 0..da {
        for u in 0..db {
            let b_vec = a.coinvariants().basis_vector(u);
            let prod = a.algebra().multiply(&a.algebra().basis_vector(i), &b_vec);
            for l in 0..dp {
                let mut rel = vec![field.zero(); ambient];
                for (ip, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        rel[ip * dp + l] = rel[ip * dp + l].add(c);
                    }
                }
                let bp = p.action_matrix(u).column(l);
                for (lp, c) in bp.iter().enumerate() {
                    if !c.is_zero() {
                        rel[i * dp + lp] = rel[i * dp + lp].sub(c);
                    }
                }
                relation_span.push(rel);
            }
        }
    }
    let quotient = QuotientSpace::new(ambient, field, &relation_span);

    let id_p = Matrix::identity(dp, field);
    let mut action = Vec::with_capacity(da);
    for t in 0..da {
        let amb = a
            .algebra()
            .left_mult_matrix(&a.algebra().basis_vector(t))
            .kronecker(&id_p)
            .expect("same field");
        let op = quotient.induce_operator(&amb).ok_or_else(|| {
            vec![Diagnostic::new(
                "well-definedness",
                format!("the action of e{} does not preserve the relations", t + 1),
            )]
        })?;
        action.push(op);
    }
    let trivial = crate::comodule::trivial_coaction(a.hopf(), dp);
    let amb_coaction = codiagonal_coaction(a.coaction(), da, &trivial, dp, a.hopf().algebra());
    let coaction = quotient.induce_coaction(&amb_coaction, dh).ok_or_else(|| {
        vec![Diagnostic::new(
            "well-definedness",
            "the coaction through the left factor does not preserve the relations",
        )]
    })?;
    let module = RelHopfModule::new(a.clone(), quotient.dim(), action, coaction)?;
    Ok(TensorProduct { module, quotient, left_dim: da, right_dim: dp })
}

/// The adjunction unit u_P : P → (A ⊗_B P)^{coH}, p ↦ class(1⊗p).
#[derive(Debug, Clone)]
pub struct UnitMap {
    pub tensor: TensorProduct,
    /// Coordinates: columns over the basis of P, rows over the canonical
    /// coinvariant basis of A ⊗_B P.
    pub matrix: Matrix,
    pub injective: bool,
    pub bijective: bool,
}

pub fn unit_map(a: &Arc<ComoduleAlgebra>, p: &BModule) -> Result<UnitMap, Vec<Diagnostic>> {
    let tensor = tensor_over_b(a, p)?;
    let field = a.field();
    let dp = p.dim();
    let coinv = tensor.module.coinvariants();
    let mut cols = Vec::with_capacity(dp);
    for l in 0..dp {
        let mut amb = vec![field.zero(); a.dim() * dp];
        for (i, c) in a.unit().iter().enumerate() {
            amb[i * dp + l] = c.clone();
        }
        let w = tensor.quotient.project(&amb);
        let coords = coinv.coordinates(&w).ok_or_else(|| {
            vec![Diagnostic::new("unit injectivity", "class(1⊗p) is not coinvariant")]
        })?;
        cols.push(coords);
    }
    let matrix = Matrix::from_columns(coinv.dim(), field, &cols).expect("coordinate columns");

    // B-linearity: u(b·p) = b·u(p) in the coinvariant B-module.
    let target = tensor.module.coinvariant_bmodule();
    let mut sink = DiagnosticSink::new();
    for u in 0..a.coinv_dim() {
        if matrix.mul(p.action_matrix(u)) != target.action_matrix(u).mul(&matrix) {
            sink.report("linearity", format!("u does not commute with b{}", u + 1));
        }
    }
    let injective = matrix.rank() == dp;
    if !injective {
        sink.report("unit injectivity", "the adjunction unit has a kernel");
    }
    if !sink.is_clean() {
        return Err(sink.into_diagnostics());
    }
    let bijective = injective && coinv.dim() == dp;
    Ok(UnitMap { tensor, matrix, injective, bijective })
}

/// The adjunction counit c_M : A ⊗_B M^{coH} → M, class(a⊗m) ↦ a·m.
#[derive(Debug, Clone)]
pub struct CounitMap {
    pub tensor: TensorProduct,
    pub morphism: RelHopfMorphism,
    pub surjective: bool,
    pub bijective: bool,
}

pub fn counit_map(m: &RelHopfModule) -> Result<CounitMap, Vec<Diagnostic>> {
    let p = m.coinvariant_bmodule();
    let tensor = tensor_over_b(&m.over, &p)?;
    let field = m.field();
    let da = m.over.dim();
    let dp = p.dim();
    let mut chat = Matrix::zero(m.dim, da * dp, field);
    for i in 0..da {
        for l in 0..dp {
            let image = m.action[i].apply(&m.coinvariants.basis_vector(l));
            for (r, c) in image.iter().enumerate() {
                if !c.is_zero() {
                    chat.set(r, i * dp + l, c.clone());
                }
            }
        }
    }
    for t in 0..tensor.quotient.relations().dim() {
        let v = chat.apply(&tensor.quotient.relations().basis_vector(t));
        if v.iter().any(|c| !c.is_zero()) {
            return Err(vec![Diagnostic::new(
                "well-definedness",
                "the evaluation map does not kill the relations",
            )]);
        }
    }
    let mat = chat.mul(tensor.quotient.section());
    let surjective = mat.rank() == m.dim;
    let bijective = surjective && tensor.module.dim() == m.dim;
    let morphism = RelHopfMorphism::new(tensor.module.clone(), m.clone(), mat)?;
    Ok(CounitMap { tensor, morphism, surjective, bijective })
}

/// The adjunction triangle: restricting c_M to coinvariants and composing
/// with u_{M^{coH}} is the identity on M^{coH}.
pub fn adjunction_triangle_holds(m: &RelHopfModule) -> Result<bool, Vec<Diagnostic>> {
    let cm = counit_map(m)?;
    let field = m.field();
    let dp = m.coinvariants.dim();
    let tcoinv = cm.tensor.module.coinvariants();

    // u_{M^{coH}} against the same tensor construction.
    let mut u_cols = Vec::with_capacity(dp);
    for l in 0..dp {
        let mut amb = vec![field.zero(); m.over.dim() * dp];
        for (i, c) in m.over.unit().iter().enumerate() {
            amb[i * dp + l] = c.clone();
        }
        match tcoinv.coordinates(&cm.tensor.quotient.project(&amb)) {
            Some(coords) => u_cols.push(coords),
            None => return Ok(false),
        }
    }
    let u = Matrix::from_columns(tcoinv.dim(), field, &u_cols).expect("coordinate columns");

    // c_M restricted to coinvariants, in coinvariant coordinates.
    let mut c_cols = Vec::with_capacity(tcoinv.dim());
    for t in 0..tcoinv.dim() {
        let image = cm.morphism.matrix().apply(&tcoinv.basis_vector(t));
        match m.coinvariants.coordinates(&image) {
            Some(coords) => c_cols.push(coords),
            None => return Ok(false),
        }
    }
    let c = Matrix::from_columns(dp, field, &c_cols).expect("coordinate columns");
    Ok(c.mul(&u) == Matrix::identity(dp, field))
}

/// M ⊗ H with its two mutually inverse B-linear maps
/// f : M → (M⊗H)^{coH}, f(m) = m₀ ⊗ S(m₁), and g(m⊗h) = ε(h)·m.
#[derive(Debug, Clone)]
pub struct TensorHIso {
    pub module: RelHopfModule,
    pub forward: Matrix,
    pub backward: Matrix,
}

pub fn tensor_h_isomorphism(m: &RelHopfModule) -> Result<TensorHIso, Vec<Diagnostic>> {
    let hopf = m.hopf().clone();
    let field = m.field();
    let dh = hopf.dim();
    let p = m.dim;
    let module = tensor_with_comodule(m, &Comodule::regular(hopf.clone()))?;

    let s = hopf.antipode();
    let mut forward = Matrix::zero(p * dh, p, field);
    for j in 0..p {
        for jp in 0..p {
            for k in 0..dh {
                let c = m.coaction().get(jp * dh + k, j);
                if c.is_zero() {
                    continue;
                }
                for l in 0..dh {
                    let sk = s.get(l, k);
                    if !sk.is_zero() {
                        forward.add_assign_at(jp * dh + l, j, &c.mul(sk));
                    }
                }
            }
        }
    }
    let mut backward = Matrix::zero(p, p * dh, field);
    for j in 0..p {
        for k in 0..dh {
            let e = hopf.coalgebra().counit_of(k);
            if !e.is_zero() {
                backward.set(j, j * dh + k, e.clone());
            }
        }
    }

    let mut sink = DiagnosticSink::new();
    if backward.mul(&forward) != Matrix::identity(p, field) {
        sink.report("tensor identity", "g∘f is not the identity on M");
    }
    let coinv = module.coinvariants();
    if coinv.dim() != p {
        sink.report(
            "tensor identity",
            format!("(M⊗H)^coH has dimension {}, expected {}", coinv.dim(), p),
        );
    }
    for j in 0..p {
        if !coinv.contains(&forward.column(j)) {
            sink.report("tensor identity", format!("f(m{}) is not coinvariant", j + 1));
        }
    }
    let fg = forward.mul(&backward);
    for t in 0..coinv.dim() {
        let w = coinv.basis_vector(t);
        if fg.apply(&w) != w {
            sink.report("tensor identity", "f∘g is not the identity on the coinvariants");
        }
    }
    for u in 0..m.over.coinv_dim() {
        let b = m.over.coinvariants().basis_vector(u);
        let bm = m.action_operator(&b);
        let bmh = module.action_operator(&b);
        if forward.mul(&bm) != bmh.mul(&forward) || backward.mul(&bmh) != bm.mul(&backward) {
            sink.report("tensor identity", format!("f or g fails B-linearity at b{}", u + 1));
        }
    }
    sink.into_result(TensorHIso { module, forward, backward })
}

/// The currying bijection between morphisms M → _A Hom(N,P) and morphisms
/// M ⊗_A N → P; needs A and H commutative.
#[derive(Debug, Clone)]
pub struct CurryIso {
    /// _A Hom(N,P) as a relative Hopf module.
    pub hom_module: RelHopfModule,
    pub hom: HomSpace,
    pub tensor: TensorProduct,
    /// Morphisms M → _A Hom(N,P), in Hom-basis coordinates.
    pub left_basis: Vec<Matrix>,
    /// Morphisms M ⊗_A N → P, in quotient coordinates.
    pub right_basis: Vec<Matrix>,
    pub forward: Matrix,
    pub backward: Matrix,
}

pub fn curry_iso(
    m: &RelHopfModule,
    n: &RelHopfModule,
    p: &RelHopfModule,
) -> Result<CurryIso, Vec<Diagnostic>> {
    if !same_base(&m.over, &n.over) || !same_base(&m.over, &p.over) {
        return Err(vec![Diagnostic::new(
            "dimension mismatch",
            "the three modules live over different algebras",
        )]);
    }
    if !m.over.is_commutative() || !m.hopf().is_commutative() {
        return Err(vec![Diagnostic::new(
            "commutativity",
            "currying needs both A and H commutative",
        )]);
    }
    let field = m.field();
    let over = m.over.clone();
    let da = over.dim();
    let (dn, dp_) = (n.dim, p.dim);
    let hs = hom_space(n, p);
    let g = hs.dim();

    // _A Hom(N,P) as a module: (a·f)(n) = a·f(n).
    let hom_module = if g == 0 {
        RelHopfModule::new(
            over.clone(),
            0,
            vec![Matrix::zero(0, 0, field); da],
            Matrix::zero(0, 0, field),
        )?
    } else {
        let basis_mat = Matrix::from_columns(
            dp_ * dn,
            field,
            &hs.basis().iter().map(flatten).collect::<Vec<_>>(),
        )
        .expect("basis columns");
        let mut rhs_cols = Vec::with_capacity(da * g);
        for i in 0..da {
            for f in hs.basis() {
                rhs_cols.push(flatten(&p.action[i].mul(f)));
            }
        }
        let rhs = Matrix::from_columns(dp_ * dn, field, &rhs_cols).expect("action columns");
        let coords = solve_matrix(&basis_mat, &rhs).expect("same field").ok_or_else(|| {
            vec![Diagnostic::new(
                "currying",
                "the Hom-space is not stable under the algebra action",
            )]
        })?;
        let action: Vec<Matrix> = (0..da)
            .map(|i| {
                Matrix::from_fn(g, g, field, |r, gamma| coords.get(r, i * g + gamma).clone())
            })
            .collect();
        RelHopfModule::new(over.clone(), g, action, hs.coaction().clone())?
    };

    let tensor = tensor_over_a(m, n)?;
    let left_basis = morphism_space(m, &hom_module);
    let right_basis = morphism_space(&tensor.module, p);
    if left_basis.len() != right_basis.len() {
        return Err(vec![Diagnostic::new(
            "currying",
            format!(
                "morphism spaces have different dimensions {} and {}",
                left_basis.len(),
                right_basis.len()
            ),
        )]);
    }

    let right_mat = Matrix::from_columns(
        dp_ * tensor.module.dim(),
        field,
        &right_basis.iter().map(flatten).collect::<Vec<_>>(),
    )
    .expect("basis columns");
    let mut forward_cols = Vec::with_capacity(left_basis.len());
    for f in &left_basis {
        // The ambient map M⊗N → P, (m_i ⊗ n_j) ↦ F(m_i)(n_j).
        let mut amb = Matrix::zero(dp_, m.dim * dn, field);
        for i in 0..m.dim {
            for (gamma, c) in f.column(i).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for j in 0..dn {
                    for (r, v) in hs.basis()[gamma].column(j).iter().enumerate() {
                        if !v.is_zero() {
                            amb.add_assign_at(r, i * dn + j, &c.mul(v));
                        }
                    }
                }
            }
        }
        for t in 0..tensor.quotient.relations().dim() {
            let v = amb.apply(&tensor.quotient.relations().basis_vector(t));
            if v.iter().any(|c| !c.is_zero()) {
                return Err(vec![Diagnostic::new(
                    "currying",
                    "a curried map does not kill the tensor relations",
                )]);
            }
        }
        let curried = amb.mul(tensor.quotient.section());
        let coords = solve_linear(&right_mat, &flatten(&curried))
            .expect("same field")
            .ok_or_else(|| {
                vec![Diagnostic::new("currying", "a curried map is not a morphism")]
            })?;
        forward_cols.push(coords);
    }
    let forward = Matrix::from_columns(right_basis.len(), field, &forward_cols)
        .expect("coordinate columns");

    let left_mat = Matrix::from_columns(
        g * m.dim,
        field,
        &left_basis.iter().map(flatten).collect::<Vec<_>>(),
    )
    .expect("basis columns");
    let hs_mat = Matrix::from_columns(
        dp_ * dn,
        field,
        &hs.basis().iter().map(flatten).collect::<Vec<_>>(),
    )
    .expect("basis columns");
    let mut backward_cols = Vec::with_capacity(right_basis.len());
    for gm in &right_basis {
        let lifted = gm.mul(tensor.quotient.projection());
        let mut f = Matrix::zero(g, m.dim, field);
        for i in 0..m.dim {
            let qi = Matrix::from_fn(dp_, dn, field, |r, j| lifted.get(r, i * dn + j).clone());
            let coords = solve_linear(&hs_mat, &flatten(&qi))
                .expect("same field")
                .ok_or_else(|| {
                    vec![Diagnostic::new("currying", "an uncurried slice is not A-linear")]
                })?;
            for (gamma, c) in coords.into_iter().enumerate() {
                f.set(gamma, i, c);
            }
        }
        let coords = solve_linear(&left_mat, &flatten(&f))
            .expect("same field")
            .ok_or_else(|| {
                vec![Diagnostic::new("currying", "an uncurried map is not a morphism")]
            })?;
        backward_cols.push(coords);
    }
    let backward = Matrix::from_columns(left_basis.len(), field, &backward_cols)
        .expect("coordinate columns");

    let k = left_basis.len();
    if forward.mul(&backward) != Matrix::identity(k, field)
        || backward.mul(&forward) != Matrix::identity(k, field)
    {
        return Err(vec![Diagnostic::new(
            "currying",
            "currying and uncurrying do not compose to identities",
        )]);
    }
    Ok(CurryIso { hom_module, hom: hs, tensor, left_basis, right_basis, forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cyclic_group_table, group_algebra};

    fn rat(n: i64) -> Scalar {
        Scalar::from_integer(Field::Rational, n)
    }

    /// A = H = QC₂ coacting on itself by Δ.
    fn hh() -> Arc<ComoduleAlgebra> {
        let hopf = Arc::new(group_algebra(Field::Rational, &cyclic_group_table(2)).unwrap());
        let algebra = hopf.algebra().clone();
        let coaction = hopf.comult().clone();
        Arc::new(ComoduleAlgebra::new(algebra, hopf, coaction).unwrap())
    }

    #[test]
    fn quotient_projection_section_identities() {
        // k³ modulo span{e₁ − e₂}.
        let rels = vec![vec![rat(1), rat(-1), rat(0)]];
        let q = QuotientSpace::new(3, Field::Rational, &rels);
        assert_eq!(q.dim(), 2);
        let ps = q.projection().mul(q.section());
        assert_eq!(ps, Matrix::identity(2, Field::Rational));
        // Both e₁ and e₂ land on the same class.
        assert_eq!(q.project(&[rat(1), rat(0), rat(0)]), q.project(&[rat(0), rat(1), rat(0)]));
        // The relation dies.
        assert_eq!(q.project(&[rat(1), rat(-1), rat(0)]), vec![rat(0), rat(0)]);
    }

    #[test]
    fn quotient_with_no_relations_is_the_identity() {
        let q = QuotientSpace::new(2, Field::Rational, &[]);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.projection(), &Matrix::identity(2, Field::Rational));
        assert_eq!(q.section(), &Matrix::identity(2, Field::Rational));
    }

    #[test]
    fn regular_module_over_hh_has_one_dimensional_coinvariants() {
        let a = hh();
        assert_eq!(a.coinv_dim(), 1);
        let m = RelHopfModule::regular(&a);
        assert_eq!(m.coinvariants().dim(), 1);
        // The coinvariants are spanned by the unit.
        assert!(m.coinvariants().contains(a.unit()));
    }

    #[test]
    fn morphism_space_of_hh_is_the_coinvariants() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        // _A Hom^H(A,A) ≅ B, here one-dimensional.
        assert_eq!(morphism_space(&m, &m).len(), 1);
        // Plain A-linear maps A → A are the right multiplications: dim 2.
        assert_eq!(a_linear_space(&m, &m).len(), 2);
    }

    #[test]
    fn hom_space_coinvariants_match_direct_solve_for_hh() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let hs = hom_space(&m, &m);
        assert_eq!(hs.dim(), 2);
        assert!(hs.is_coassociative());
        assert!(hs.is_counital());
        assert_eq!(hs.coinvariants().dim(), 1);
        assert!(hom_coinvariants_equal_colinear(&m, &m));
    }

    #[test]
    fn evaluation_isomorphism_on_hh() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let iso = evaluation_isomorphism(&m).unwrap();
        assert_eq!(iso.module.dim(), 2);
        assert!(iso.forward.is_bijective());
        assert!(iso.backward.is_bijective());
    }

    #[test]
    fn tensor_with_trivial_comodule_is_the_module_itself() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let t = tensor_with_comodule(&m, &Comodule::trivial(a.hopf().clone(), 1)).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.coaction(), m.coaction());
        assert_eq!(t.action(), m.action());
    }

    #[test]
    fn tensor_h_restores_the_module_on_coinvariants() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let iso = tensor_h_isomorphism(&m).unwrap();
        assert_eq!(iso.module.dim(), 4);
        assert_eq!(iso.module.coinvariants().dim(), 2);
        // f(g) = g ⊗ S(g) = g ⊗ g: coordinate (1,1) in the 2×2 grid.
        let fg = iso.forward.column(1);
        assert_eq!(fg, vec![rat(0), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn adjunction_triangle_on_hh() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let c = counit_map(&m).unwrap();
        assert!(c.bijective);
        assert!(adjunction_triangle_holds(&m).unwrap());
        let u = unit_map(&a, &BModule::regular(&a)).unwrap();
        assert!(u.bijective);
    }

    #[test]
    fn tensor_over_a_with_the_regular_module_is_identity() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let t = tensor_over_a(&m, &m).unwrap();
        assert_eq!(t.module.dim(), 2);
        assert_eq!(t.module.coinvariants().dim(), 1);
    }

    #[test]
    fn curry_iso_on_hh_regular_modules() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let iso = curry_iso(&m, &m, &m).unwrap();
        assert_eq!(iso.left_basis.len(), 1);
        assert_eq!(iso.right_basis.len(), 1);
    }

    #[test]
    fn direct_sum_doubles_coinvariants() {
        let a = hh();
        let m = RelHopfModule::regular(&a);
        let d = m.direct_sum(&m);
        assert_eq!(d.dim(), 4);
        assert_eq!(d.coinvariants().dim(), 2);
        let f = RelHopfModule::free(&a, 3);
        assert_eq!(f.dim(), 6);
        assert_eq!(f.coinvariants().dim(), 3);
    }
}
