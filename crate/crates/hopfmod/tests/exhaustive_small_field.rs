//! Exhaustive cross-validation over F₂: every subspace of the relevant
//! ambient spaces is enumerated outright, and the library's searches,
//! filters, and certified verdicts are compared against that ground truth.

use hopfmod::fixtures::fixture;
use hopfmod::projcert::{h_simplicity, is_h_ideal, HSimplicity};
use hopfmod::relhopf::RelHopfModule;
use hopfmod::ssdecomp::{
    is_simple_object, is_subobject, ObjectSimplicity, SmashAlgebra, DEFAULT_SEARCH_SEED,
};
use hopfmod::{Field, Scalar, Subspace};

const F2: Field = Field::Prime(2);

fn all_nonzero_vectors(ambient: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for code in 1u32..(1 << ambient) {
        out.push(
            (0..ambient)
                .map(|j| Scalar::from_integer(F2, ((code >> j) & 1) as i64))
                .collect(),
        );
    }
    out
}

/// Every subspace of F₂^ambient, via spans of all ≤ ambient-element
/// subsets of the nonzero vectors, deduplicated by canonical basis.
fn all_subspaces(ambient: usize) -> Vec<Subspace> {
    let vectors = all_nonzero_vectors(ambient);
    let mut found = vec![Subspace::zero(ambient, F2)];
    let mut chosen = Vec::new();
    collect_spans(&vectors, 0, ambient, &mut chosen, &mut found);
    found
}

fn collect_spans(
    vectors: &[Vec<Scalar>],
    start: usize,
    budget: usize,
    chosen: &mut Vec<Vec<Scalar>>,
    found: &mut Vec<Subspace>,
) {
    if budget == 0 {
        return;
    }
    for i in start..vectors.len() {
        chosen.push(vectors[i].clone());
        let span = Subspace::from_spanning(vectors[i].len(), F2, chosen);
        if !found.contains(&span) {
            found.push(span);
        }
        collect_spans(vectors, i + 1, budget - 1, chosen, found);
        chosen.pop();
    }
}

#[test]
fn subspace_counts_match_the_gaussian_binomials() {
    assert_eq!(all_subspaces(2).len(), 5);
    assert_eq!(all_subspaces(3).len(), 16);
    assert_eq!(all_subspaces(4).len(), 67);
}

#[test]
fn coinvariants_match_the_brute_force_fixed_points() {
    for name in ["KC2F2", "A4F2"] {
        let f = fixture(name).unwrap();
        let a = f.algebra.as_ref().unwrap();
        let mut instances: Vec<(String, &hopfmod::comodule::Comodule, &Subspace)> =
            vec![(format!("{name} algebra"), a.comodule(), a.coinvariants())];
        for (mn, m) in &f.modules {
            instances.push((format!("{name}/{mn}"), m.comodule(), m.coinvariants()));
        }
        for (label, comodule, coinv) in instances {
            let dim = comodule.dim();
            let dh = f.hopf.dim();
            let rho = comodule.coaction();
            let unit_h = f.hopf.unit();
            let mut fixed = Vec::new();
            for v in all_nonzero_vectors(dim) {
                let lhs = rho.apply(&v);
                let mut rhs = vec![F2.zero(); dim * dh];
                for (j, c) in v.iter().enumerate() {
                    for (k, u) in unit_h.iter().enumerate() {
                        rhs[j * dh + k] = c.mul(u);
                    }
                }
                if lhs == rhs {
                    fixed.push(v);
                }
            }
            let brute = Subspace::from_spanning(dim, F2, &fixed);
            assert_eq!(&brute, coinv, "{label}");
        }
    }
}

#[test]
fn h_ideal_filter_agrees_with_the_certified_verdicts() {
    // F₂C₂ on itself: the augmentation ideal span{1+g} is a ring ideal
    // but not coaction-stable, so only 0 and A survive the filter.
    let kc2 = fixture("KC2F2").unwrap().algebra.unwrap();
    let ideals: Vec<Subspace> =
        all_subspaces(2).into_iter().filter(|w| is_h_ideal(&kc2, w)).collect();
    assert_eq!(ideals.len(), 2);
    assert!(matches!(h_simplicity(&kc2), HSimplicity::Simple));
    let one = Scalar::from_integer(F2, 1);
    let aug = Subspace::from_spanning(2, F2, &[vec![one.clone(), one.clone()]]);
    let alg = kc2.algebra();
    let closed_under_mult = (0..2).all(|i| {
        aug.contains(&alg.multiply(&alg.basis_vector(i), &aug.basis_vector(0)))
    });
    assert!(closed_under_mult);
    assert!(!is_h_ideal(&kc2, &aug));

    // F₂[x]/(x⁴) graded by C₂: the homogeneous ideals (x³) ⊂ (x²) ⊂ (x)
    // are exactly the proper nonzero survivors.
    let a4 = fixture("A4F2").unwrap().algebra.unwrap();
    let ideals: Vec<Subspace> =
        all_subspaces(4).into_iter().filter(|w| is_h_ideal(&a4, w)).collect();
    assert_eq!(ideals.len(), 5);
    let dims: Vec<usize> = {
        let mut d: Vec<usize> = ideals.iter().map(Subspace::dim).collect();
        d.sort_unstable();
        d
    };
    assert_eq!(dims, vec![0, 1, 2, 3, 4]);
    match h_simplicity(&a4) {
        HSimplicity::NotSimple(w) => {
            assert!(ideals.contains(&w));
            let e = |j: usize| {
                let mut v = vec![F2.zero(); 4];
                v[j] = F2.one();
                v
            };
            assert_eq!(w, Subspace::from_spanning(4, F2, &[e(2), e(3)]));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn subobject_filter_agrees_with_the_search_verdicts() {
    let kc2f2 = fixture("KC2F2").unwrap();
    let a4f2 = fixture("A4F2").unwrap();
    let regular_a4f2 = RelHopfModule::regular(a4f2.algebra.as_ref().unwrap());
    let mut instances: Vec<(String, RelHopfModule)> =
        vec![("A4F2 regular".into(), regular_a4f2)];
    for f in [&kc2f2, &a4f2] {
        for (mn, m) in &f.modules {
            instances.push((format!("{}/{mn}", f.name), m.clone()));
        }
    }
    for (label, m) in &instances {
        let subobjects: Vec<Subspace> = all_subspaces(m.dim())
            .into_iter()
            .filter(|w| is_subobject(m, w))
            .collect();
        // The filter and the restriction constructor must agree on every
        // single subspace.
        for w in all_subspaces(m.dim()) {
            assert_eq!(
                m.restrict(&w).is_some(),
                subobjects.contains(&w),
                "{label}: restrict disagrees with the filter"
            );
        }
        match is_simple_object(m, DEFAULT_SEARCH_SEED).unwrap() {
            ObjectSimplicity::Simple => {
                assert_eq!(subobjects.len(), 2, "{label}: simple but extra subobjects exist");
            }
            ObjectSimplicity::NotSimple(w) => {
                assert!(subobjects.contains(&w), "{label}: witness is not a subobject");
                assert!(w.dim() > 0 && w.dim() < m.dim(), "{label}: witness not proper");
            }
            ObjectSimplicity::Unknown => {
                panic!("{label}: exhaustive small-field search may not return unknown")
            }
        }
    }
}

#[test]
fn smash_stability_equals_action_plus_coaction_stability() {
    let a4f2 = fixture("A4F2").unwrap();
    let a = a4f2.algebra.as_ref().unwrap();
    let smash = SmashAlgebra::new(a).expect("valid smash product");
    let mut instances = vec![RelHopfModule::regular(a)];
    instances.extend(a4f2.modules.iter().map(|(_, m)| m.clone()));
    for m in &instances {
        let acts = smash.action_matrices(m);
        for w in all_subspaces(m.dim()) {
            let smash_stable = acts.iter().all(|op| {
                (0..w.dim()).all(|t| w.contains(&op.apply(&w.basis_vector(t))))
            });
            assert_eq!(smash_stable, is_subobject(m, &w));
        }
    }
}

#[test]
fn search_verdicts_are_seed_independent_when_exhaustive() {
    for name in ["KC2F2", "A4F2"] {
        let f = fixture(name).unwrap();
        for (mn, m) in &f.modules {
            let a = is_simple_object(m, 7).unwrap();
            let b = is_simple_object(m, 99).unwrap();
            match (a, b) {
                (ObjectSimplicity::Simple, ObjectSimplicity::Simple) => {}
                (ObjectSimplicity::NotSimple(x), ObjectSimplicity::NotSimple(y)) => {
                    assert_eq!(x, y, "{name}/{mn}");
                }
                other => panic!("{name}/{mn}: verdicts diverged: {other:?}"),
            }
        }
    }
}
