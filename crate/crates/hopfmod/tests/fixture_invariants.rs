//! Invariants that every shipped fixture must satisfy, swept across the
//! whole corpus rather than pinned to a single instance.

use hopfmod::comodule::is_cosemisimple;
use hopfmod::fixtures::{fixture, FIXTURE_NAMES};
use hopfmod::hopf::{validate_hopf, HopfData};
use hopfmod::relhopf::{
    adjunction_triangle_holds, evaluation_isomorphism, hom_coinvariants_equal_colinear,
    tensor_h_isomorphism, unit_map, ComoduleAlgebra, RelHopfModule,
};
use hopfmod::ssdecomp::{
    generated_subobject, is_subobject, rationality_check, SmashAlgebra,
};
use hopfmod::{Matrix, Scalar};

fn fixtures() -> Vec<hopfmod::fixtures::Fixture> {
    FIXTURE_NAMES.iter().map(|n| fixture(n).expect("shipped fixture")).collect()
}

#[test]
fn every_fixture_revalidates_cleanly() {
    for f in fixtures() {
        let diags = f.hopf.revalidate();
        assert!(diags.is_empty(), "{}: {:?}", f.name, diags);
        if let Some(a) = &f.algebra {
            let rebuilt =
                ComoduleAlgebra::new(a.algebra().clone(), a.hopf().clone(), a.coaction().clone());
            assert!(rebuilt.is_ok(), "{}: {:?}", f.name, rebuilt.err());
        }
        for (name, m) in &f.modules {
            let rebuilt = RelHopfModule::new(
                m.over().clone(),
                m.dim(),
                m.action().to_vec(),
                m.coaction().clone(),
            );
            assert!(rebuilt.is_ok(), "{} / {}: {:?}", f.name, name, rebuilt.err());
        }
    }
}

#[test]
fn corrupted_structures_are_named_by_the_validator() {
    // Dropping the top coefficient of the multiplication breaks unitality.
    let a4 = fixture("A4").unwrap().algebra.unwrap();
    let mut mult = Vec::with_capacity(64);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                mult.push(a4.algebra().mult_coeff(i, j, k).clone());
            }
        }
    }
    let field = a4.field();
    mult[(1 * 4 + 2) * 4 + 3] = field.zero(); // x·x² no longer x³
    let broken = hopfmod::hopf::FinAlgebra::new(field, 4, mult, a4.unit().to_vec());
    let err = ComoduleAlgebra::new(broken, a4.hopf().clone(), a4.coaction().clone())
        .expect_err("a broken product must not validate");
    assert!(err.iter().any(|d| d.law == "associativity" || d.law == "multiplicativity"));

    // Re-routing a module action operator breaks compatibility.
    let f = fixture("A4").unwrap();
    let m = f.module("MA").unwrap();
    let mut action: Vec<Matrix> = m.action().to_vec();
    action[1] = Matrix::identity(m.dim(), field);
    let err = RelHopfModule::new(m.over().clone(), m.dim(), action, m.coaction().clone())
        .expect_err("a broken action must not validate");
    assert!(!err.is_empty());

    // Scaling one coaction entry breaks the comodule axioms.
    let mut rho = m.coaction().clone();
    let two = Scalar::from_integer(field, 2);
    rho.set(0, 0, two);
    let err = RelHopfModule::new(m.over().clone(), m.dim(), m.action().to_vec(), rho)
        .expect_err("a broken coaction must not validate");
    assert!(err.iter().any(|d| d.law == "coaction counit"
        || d.law == "coaction coassociativity"
        || d.law == "compatibility"));
}

#[test]
fn hopf_validator_names_a_zeroed_antipode() {
    let f = fixture("HH").unwrap();
    let h = &f.hopf;
    let field = h.field();
    let dim = h.dim();
    let mut mult = Vec::with_capacity(dim * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                mult.push(h.algebra().mult_coeff(i, j, k).clone());
            }
        }
    }
    let diags = validate_hopf(HopfData {
        field,
        dim,
        mult,
        unit: h.unit().to_vec(),
        comult: h.comult().clone(),
        counit: h.counit().clone(),
        antipode: Matrix::zero(dim, dim, field),
    })
    .expect_err("a zero antipode must not validate");
    assert!(diags.iter().any(|d| d.law.contains("antipode")), "{diags:?}");
}

#[test]
fn tensoring_with_h_reproduces_the_module_dimension() {
    for f in fixtures() {
        for (name, m) in &f.modules {
            let iso = tensor_h_isomorphism(m);
            assert!(iso.is_ok(), "{} / {}: {:?}", f.name, name, iso.err());
            let iso = iso.unwrap();
            assert_eq!(iso.module.coinvariants().dim(), m.dim(), "{} / {}", f.name, name);
        }
    }
}

#[test]
fn unit_maps_are_injective_on_every_shipped_coinvariant_module() {
    for f in fixtures() {
        let Some(a) = &f.algebra else { continue };
        for (name, p) in &f.bmodules {
            let u = unit_map(a, p).unwrap_or_else(|e| panic!("{} / {}: {:?}", f.name, name, e));
            assert!(u.injective, "{} / {}", f.name, name);
        }
        for (name, m) in &f.modules {
            let p = m.coinvariant_bmodule();
            let u = unit_map(a, &p).unwrap_or_else(|e| panic!("{} / {}: {:?}", f.name, name, e));
            assert!(u.injective, "{} / {} coinvariants", f.name, name);
        }
    }
}

#[test]
fn adjunction_triangles_commute_on_every_module() {
    for f in fixtures() {
        for (name, m) in &f.modules {
            let ok = adjunction_triangle_holds(m);
            assert_eq!(ok, Ok(true), "{} / {}", f.name, name);
        }
    }
}

#[test]
fn hom_coinvariants_and_colinear_maps_agree_everywhere() {
    for f in fixtures() {
        for (ln, m) in &f.modules {
            for (rn, n) in &f.modules {
                assert!(
                    hom_coinvariants_equal_colinear(m, n),
                    "{} / Hom({ln},{rn})",
                    f.name
                );
            }
        }
    }
}

#[test]
fn evaluation_at_one_is_an_isomorphism_everywhere() {
    for f in fixtures() {
        for (name, n) in &f.modules {
            let iso = evaluation_isomorphism(n)
                .unwrap_or_else(|e| panic!("{} / {}: {:?}", f.name, name, e));
            assert!(iso.forward.is_bijective(), "{} / {}", f.name, name);
            let fwd = iso.forward.matrix();
            let bwd = iso.backward.matrix();
            assert_eq!(fwd.mul(bwd), Matrix::identity(n.dim(), n.field()));
            assert_eq!(bwd.mul(fwd), Matrix::identity(iso.module.dim(), n.field()));
        }
    }
}

#[test]
fn hstar_actions_are_rational_on_every_pair() {
    for f in fixtures() {
        for (_, m) in &f.modules {
            for (_, n) in &f.modules {
                assert!(rationality_check(m, n), "{}", f.name);
            }
        }
    }
}

#[test]
fn seeded_closures_are_subobjects_containing_their_seed() {
    for f in fixtures() {
        for (name, m) in &f.modules {
            let field = m.field();
            for j in 0..m.dim() {
                let mut seed = vec![field.zero(); m.dim()];
                seed[j] = field.one();
                let w = generated_subobject(m, &seed);
                assert!(w.contains(&seed), "{} / {} seed {}", f.name, name, j);
                assert!(is_subobject(m, &w), "{} / {} seed {}", f.name, name, j);
            }
        }
    }
}

#[test]
fn smash_products_validate_and_act_unitally() {
    for f in fixtures() {
        let Some(a) = &f.algebra else { continue };
        let s = SmashAlgebra::new(a).unwrap_or_else(|e| panic!("{}: {:?}", f.name, e));
        assert_eq!(s.dim(), a.dim() * a.hopf().dim());
        for (name, m) in &f.modules {
            let acts = s.action_matrices(m);
            let mut unit_op = Matrix::zero(m.dim(), m.dim(), m.field());
            for (idx, c) in s.algebra().unit().iter().enumerate() {
                if !c.is_zero() {
                    unit_op = unit_op.add(&acts[idx].scale(c));
                }
            }
            assert_eq!(unit_op, Matrix::identity(m.dim(), m.field()), "{} / {}", f.name, name);
        }
    }
}

#[test]
fn cosemisimplicity_witnesses_match_the_known_split() {
    for f in fixtures() {
        let w = is_cosemisimple(&f.hopf);
        match f.name {
            // Group algebras always carry the evaluation-at-identity
            // integral; the Sweedler algebra has none.
            "SW4" => assert!(w.is_none(), "{}", f.name),
            _ => assert!(w.is_some(), "{}", f.name),
        }
    }
}
