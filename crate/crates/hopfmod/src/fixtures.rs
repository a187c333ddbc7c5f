//! A registry of small worked examples used by the test suites and the
//! command-line tool. Every fixture is rebuilt from its defining tables on
//! each call, so the objects always pass their own validators.
//!
//! Names are case-insensitive. The inventory:
//!
//! | name   | field | contents                                                   |
//! |--------|-------|------------------------------------------------------------|
//! | TRIV   | Q     | the one-dimensional Hopf algebra                           |
//! | KC2    | Q     | the group algebra of C₂                                    |
//! | KC2F2  | F₂    | F₂C₂ coacting on itself, with its regular module           |
//! | HH     | Q     | QC₂ coacting on itself, regular module, free rank-1 B-mod  |
//! | HH2    | Q     | the same base with the free module of rank 2               |
//! | A4     | Q     | Q[x]/(x⁴) graded by C₂, modules MA and M2, B-mods PB, PT   |
//! | A4F2   | F₂    | the same grading over F₂, with module M2                   |
//! | M2     | Q     | the A4 base carrying only the quotient module M2           |
//! | SW4    | Q     | the 4-dimensional non-commutative Hopf algebra, A = k,     |
//! |        |       | module H-as-comodule                                       |

use std::sync::Arc;

use crate::hopf::{cyclic_group_table, group_algebra, sweedler_h4, FinAlgebra, HopfAlgebra};
use crate::linalg::Matrix;
use crate::relhopf::{BModule, ComoduleAlgebra, RelHopfModule};
use crate::scalar::{Field, Scalar};

/// A named bundle of compatible objects over one Hopf algebra.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub hopf: Arc<HopfAlgebra>,
    pub algebra: Option<Arc<ComoduleAlgebra>>,
    pub modules: Vec<(&'static str, RelHopfModule)>,
    pub bmodules: Vec<(&'static str, BModule)>,
}

impl Fixture {
    pub fn module(&self, name: &str) -> Option<&RelHopfModule> {
        self.modules
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, m)| m)
    }

    pub fn bmodule(&self, name: &str) -> Option<&BModule> {
        self.bmodules
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, m)| m)
    }
}

pub const FIXTURE_NAMES: &[&str] =
    &["TRIV", "KC2", "KC2F2", "HH", "HH2", "A4", "A4F2", "M2", "SW4"];

/// Looks a fixture up by case-insensitive name.
pub fn fixture(name: &str) -> Option<Fixture> {
    match name.to_ascii_uppercase().as_str() {
        "TRIV" => Some(trivial_fixture()),
        "KC2" => Some(kc2_fixture()),
        "KC2F2" => Some(kc2f2_fixture()),
        "HH" => Some(hh_fixture()),
        "HH2" => Some(hh2_fixture()),
        "A4" => Some(a4_fixture()),
        "A4F2" => Some(a4f2_fixture()),
        "M2" => Some(m2_fixture()),
        "SW4" => Some(sw4_fixture()),
        _ => None,
    }
}

/// The group algebra of the cyclic group of the given order.
pub fn cyclic_hopf(field: Field, order: usize) -> Arc<HopfAlgebra> {
    Arc::new(
        group_algebra(field, &cyclic_group_table(order))
            .expect("a cyclic group table is a group table"),
    )
}

/// H as a comodule algebra over itself, coacting by comultiplication.
pub fn self_comodule_algebra(hopf: Arc<HopfAlgebra>) -> Arc<ComoduleAlgebra> {
    let algebra = hopf.algebra().clone();
    let coaction = hopf.comult().clone();
    Arc::new(
        ComoduleAlgebra::new(algebra, hopf, coaction)
            .expect("Δ is multiplicative and unital"),
    )
}

/// k[x]/(x⁴) graded by C₂ (even/odd degree), as a comodule algebra over kC₂.
pub fn graded_truncated_algebra(field: Field) -> Arc<ComoduleAlgebra> {
    let hopf = cyclic_hopf(field, 2);
    let dim = 4;
    let mut mult = vec![field.zero(); dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if i + j < dim {
                mult[(i * dim + j) * dim + (i + j)] = field.one();
            }
        }
    }
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    let algebra = FinAlgebra::new(field, dim, mult, unit);
    // ρ(xⁱ) = xⁱ ⊗ g^(i mod 2).
    let mut coaction = Matrix::zero(dim * 2, dim, field);
    for i in 0..dim {
        coaction.set(i * 2 + (i % 2), i, field.one());
    }
    Arc::new(
        ComoduleAlgebra::new(algebra, hopf, coaction)
            .expect("the degree grading is multiplicative"),
    )
}

/// The quotient module k[x]/(x²) of the graded truncated algebra: x moves
/// the class of 1 to the class of x and kills the class of x.
pub fn degree_quotient_module(over: &Arc<ComoduleAlgebra>) -> RelHopfModule {
    let field = over.field();
    let dim = 2;
    let a_dim = over.dim();
    let mut action = Vec::with_capacity(a_dim);
    // 1 acts as the identity.
    action.push(Matrix::identity(dim, field));
    // x sends 1̄ ↦ x̄ ↦ 0.
    let mut x_op = Matrix::zero(dim, dim, field);
    x_op.set(1, 0, field.one());
    action.push(x_op);
    // x² and x³ act as zero.
    action.push(Matrix::zero(dim, dim, field));
    action.push(Matrix::zero(dim, dim, field));
    // ρ(1̄) = 1̄ ⊗ 1, ρ(x̄) = x̄ ⊗ g.
    let mut coaction = Matrix::zero(dim * 2, dim, field);
    coaction.set(0, 0, field.one());
    coaction.set(3, 1, field.one());
    RelHopfModule::new(over.clone(), dim, action, coaction)
        .expect("the degree quotient is a relative Hopf module")
}

/// The quotient B/x²B of the coinvariants of the graded truncated algebra:
/// one-dimensional, with x² acting as zero.
pub fn nilpotent_quotient_bmodule(over: &Arc<ComoduleAlgebra>) -> BModule {
    let field = over.field();
    let action = vec![Matrix::identity(1, field), Matrix::zero(1, 1, field)];
    BModule::new(over.clone(), 1, action).expect("B/x²B is a B-module")
}

fn trivial_fixture() -> Fixture {
    Fixture {
        name: "TRIV",
        summary: "the one-dimensional Hopf algebra over Q",
        hopf: cyclic_hopf(Field::Rational, 1),
        algebra: None,
        modules: Vec::new(),
        bmodules: Vec::new(),
    }
}

fn kc2_fixture() -> Fixture {
    Fixture {
        name: "KC2",
        summary: "the group algebra QC₂",
        hopf: cyclic_hopf(Field::Rational, 2),
        algebra: None,
        modules: Vec::new(),
        bmodules: Vec::new(),
    }
}

fn kc2f2_fixture() -> Fixture {
    let field = Field::Prime(2);
    let algebra = self_comodule_algebra(cyclic_hopf(field, 2));
    let regular = RelHopfModule::regular(&algebra);
    Fixture {
        name: "KC2F2",
        summary: "F₂C₂ coacting on itself by Δ, with its regular module",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("M", regular)],
        bmodules: Vec::new(),
    }
}

fn hh_fixture() -> Fixture {
    let algebra = self_comodule_algebra(cyclic_hopf(Field::Rational, 2));
    let regular = RelHopfModule::regular(&algebra);
    let free_b = BModule::regular(&algebra);
    Fixture {
        name: "HH",
        summary: "QC₂ coacting on itself by Δ; B = Q",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("M", regular)],
        bmodules: vec![("P", free_b)],
    }
}

fn hh2_fixture() -> Fixture {
    let algebra = self_comodule_algebra(cyclic_hopf(Field::Rational, 2));
    let free2 = RelHopfModule::free(&algebra, 2);
    Fixture {
        name: "HH2",
        summary: "the QC₂-on-itself base with the free module of rank 2",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("M", free2)],
        bmodules: Vec::new(),
    }
}

fn a4_fixture() -> Fixture {
    let algebra = graded_truncated_algebra(Field::Rational);
    let regular = RelHopfModule::regular(&algebra);
    let m2 = degree_quotient_module(&algebra);
    let pb = BModule::regular(&algebra);
    let pt = nilpotent_quotient_bmodule(&algebra);
    Fixture {
        name: "A4",
        summary: "Q[x]/(x⁴) graded by C₂; B = Q[x²]/(x⁴)",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("MA", regular), ("M2", m2)],
        bmodules: vec![("PB", pb), ("PT", pt)],
    }
}

fn a4f2_fixture() -> Fixture {
    let algebra = graded_truncated_algebra(Field::Prime(2));
    let m2 = degree_quotient_module(&algebra);
    Fixture {
        name: "A4F2",
        summary: "F₂[x]/(x⁴) graded by C₂, with the quotient module M2",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("M2", m2)],
        bmodules: Vec::new(),
    }
}

fn m2_fixture() -> Fixture {
    let algebra = graded_truncated_algebra(Field::Rational);
    let m2 = degree_quotient_module(&algebra);
    Fixture {
        name: "M2",
        summary: "the Q[x]/(x⁴) base carrying only the quotient module M2",
        hopf: algebra.hopf().clone(),
        algebra: Some(algebra),
        modules: vec![("M2", m2)],
        bmodules: Vec::new(),
    }
}

fn sw4_fixture() -> Fixture {
    let field = Field::Rational;
    let hopf =
        Arc::new(sweedler_h4(field).expect("characteristic 0 admits the 4-dimensional algebra"));
    // A = k with the trivial coaction.
    let one = field.one();
    let algebra = FinAlgebra::new(field, 1, vec![one.clone()], vec![one.clone()]);
    let mut coaction = Matrix::zero(hopf.dim(), 1, field);
    coaction.set(0, 0, one);
    let base = Arc::new(
        ComoduleAlgebra::new(algebra, hopf.clone(), coaction)
            .expect("the trivial coaction on k is multiplicative"),
    );
    // M = H as a comodule via Δ, with the scalar action of A = k.
    let action = vec![Matrix::identity(hopf.dim(), field)];
    let module = RelHopfModule::new(base.clone(), hopf.dim(), action, hopf.comult().clone())
        .expect("any comodule is a relative Hopf module over k");
    Fixture {
        name: "SW4",
        summary: "the non-commutative 4-dimensional Hopf algebra; A = k, M = H",
        hopf,
        algebra: Some(base),
        modules: vec![("M", module)],
        bmodules: Vec::new(),
    }
}

/// Scalar shorthand for fixture tables and tests.
pub fn scalar(field: Field, n: i64) -> Scalar {
    Scalar::from_integer(field, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_builds() {
        for name in FIXTURE_NAMES {
            let f = fixture(name).unwrap();
            assert_eq!(&f.name, name);
        }
        assert!(fixture("a4").is_some(), "lookup is case-insensitive");
        assert!(fixture("NOPE").is_none());
    }

    #[test]
    fn graded_coinvariants_are_the_even_part() {
        let a = graded_truncated_algebra(Field::Rational);
        let coinv = a.coinvariants();
        assert_eq!(coinv.dim(), 2);
        // span{1, x²} in basis coordinates.
        assert!(coinv.contains(&[
            scalar(Field::Rational, 1),
            scalar(Field::Rational, 0),
            scalar(Field::Rational, 0),
            scalar(Field::Rational, 0),
        ]));
        assert!(coinv.contains(&[
            scalar(Field::Rational, 0),
            scalar(Field::Rational, 0),
            scalar(Field::Rational, 1),
            scalar(Field::Rational, 0),
        ]));
    }

    #[test]
    fn degree_quotient_module_has_unit_class_coinvariants() {
        let a = graded_truncated_algebra(Field::Rational);
        let m = degree_quotient_module(&a);
        assert_eq!(m.coinvariants().dim(), 1);
        assert!(m
            .coinvariants()
            .contains(&[scalar(Field::Rational, 1), scalar(Field::Rational, 0)]));
    }

    #[test]
    fn sweedler_fixture_coinvariants_are_scalars() {
        let f = fixture("SW4").unwrap();
        let m = f.module("M").unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.coinvariants().dim(), 1);
    }

    #[test]
    fn a4_bmodules_validate() {
        let f = fixture("A4").unwrap();
        assert_eq!(f.bmodule("PB").unwrap().dim(), 2);
        assert_eq!(f.bmodule("PT").unwrap().dim(), 1);
        assert!(f.module("ma").is_some(), "module lookup is case-insensitive");
    }
}
