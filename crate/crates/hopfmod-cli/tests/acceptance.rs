//! Acceptance gate: twelve checks covering the full library and the
//! command-line tool, one printed pass/fail line each. Checks 1–11 run
//! in-process against the shipped fixtures; check 12 drives the compiled
//! binary twice over a fixed invocation suite, compares stdout bytes,
//! and replays every emitted report.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use hopfmod::fixtures::{fixture, scalar, Fixture, FIXTURE_NAMES};
use hopfmod::linalg::{Matrix, Subspace};
use hopfmod::projcert::{
    certify_projectivity, coinvariant_algebra, field_verdict, find_total_integral, h_simplicity,
    is_coinvariantly_generated, is_h_ideal, projectivity_chain, replay_b_witness, FieldVerdict,
    HSimplicity,
};
use hopfmod::relhopf::{
    hom_coinvariants_equal_colinear, morphism_space, tensor_h_isomorphism, tensor_over_b,
    unit_map, ComoduleAlgebra, RelHopfModule,
};
use hopfmod::ssdecomp::{
    decompose_semisimple, generator_epi, is_simple_object, is_subobject, rationality_check,
    ObjectSimplicity, DEFAULT_SEARCH_SEED,
};
use hopfmod::{Field, Scalar};
use hopfmod_cli::format::{fixture_instance, parse_instance, serialize_instance, InstanceError};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fx(name: &str) -> Fixture {
    fixture(name).expect("shipped fixture")
}

fn basis_vec(ambient: usize, i: usize, field: Field) -> Vec<Scalar> {
    (0..ambient).map(|j| scalar(field, (j == i) as i64)).collect()
}

fn is_self_comodule(a: &ComoduleAlgebra) -> bool {
    let h = a.hopf();
    a.dim() == h.dim() && a.algebra() == h.algebra() && a.coaction() == h.comult()
}

fn column_fixed_by_coaction(coaction: &Matrix, unit_h: &[Scalar], v: &[Scalar]) -> bool {
    let dh = unit_h.len();
    let image = coaction.apply(v);
    for (j, vj) in v.iter().enumerate() {
        for (k, uk) in unit_h.iter().enumerate() {
            if image[j * dh + k] != vj.mul(uk) {
                return false;
            }
        }
    }
    true
}

/// All vectors of F₂^ambient with the given nonzero code, little-endian.
fn f2_vector(ambient: usize, code: u32) -> Vec<Scalar> {
    (0..ambient)
        .map(|j| scalar(Field::Prime(2), ((code >> j) & 1) as i64))
        .collect()
}

fn f2_subspaces(ambient: usize) -> Vec<Subspace> {
    let field = Field::Prime(2);
    let vectors: Vec<Vec<Scalar>> = (1..(1u32 << ambient)).map(|c| f2_vector(ambient, c)).collect();
    let mut out = vec![Subspace::zero(ambient, field)];
    for mask in 1u32..(1 << vectors.len()) {
        let subset: Vec<Vec<Scalar>> = vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let s = Subspace::from_spanning(ambient, field, &subset);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

// -----------------------------------------------------------------
// 1. Every shipped fixture validates cleanly; corrupted structure
//    constants draw named diagnostics.
// -----------------------------------------------------------------
fn criterion_1() -> Result<(), String> {
    for &name in FIXTURE_NAMES {
        let text = serialize_instance(&fixture_instance(&fx(name)));
        parse_instance(&text).map_err(|e| format!("{name} does not validate: {e}"))?;
    }
    let a4 = serialize_instance(&fixture_instance(&fx("A4")));
    let zeroed = a4.replace("antipode 2 2 1", "antipode 2 2 0");
    ensure!(zeroed != a4, "the antipode mutation did not apply");
    match parse_instance(&zeroed) {
        Err(InstanceError::Invalid { object, diagnostics }) => {
            ensure!(object == "hopf H", "wrong failing object '{object}'");
            ensure!(
                diagnostics.iter().any(|d| d.law.contains("antipode")),
                "no antipode diagnostic among {:?}",
                diagnostics.iter().map(|d| d.law.clone()).collect::<Vec<_>>()
            );
        }
        Ok(_) => return Err("a zeroed antipode was accepted".into()),
        Err(e) => return Err(format!("a zeroed antipode failed for the wrong reason: {e}")),
    }
    // The module block repeats the algebra's coaction line; mutate only
    // the first (algebra) occurrence.
    let degraded = a4.replacen("coaction 2 2 2 1", "coaction 2 2 1 1", 1);
    ensure!(degraded != a4, "the grading mutation did not apply");
    match parse_instance(&degraded) {
        Err(InstanceError::Invalid { object, diagnostics }) => {
            ensure!(object == "algebra A", "wrong failing object '{object}'");
            ensure!(
                diagnostics.iter().any(|d| d.law == "multiplicativity"),
                "no multiplicativity diagnostic among {:?}",
                diagnostics.iter().map(|d| d.law.clone()).collect::<Vec<_>>()
            );
        }
        Ok(_) => return Err("a broken grading was accepted".into()),
        Err(e) => return Err(format!("a broken grading failed for the wrong reason: {e}")),
    }
    Ok(())
}

// -----------------------------------------------------------------
// 2. Coinvariants of the H*-action on Hom(M,N) coincide with the
//    independently solved space of A-linear colinear maps.
// -----------------------------------------------------------------
fn criterion_2() -> Result<(), String> {
    for (fname, mods) in [("A4", vec!["MA", "M2"]), ("HH", vec!["M"])] {
        let f = fx(fname);
        for &a in &mods {
            for &b in &mods {
                let m = f.module(a).expect("module");
                let n = f.module(b).expect("module");
                ensure!(
                    hom_coinvariants_equal_colinear(m, n),
                    "Hom coinvariants differ from the colinear maps on {fname}: {a} -> {b}"
                );
            }
        }
    }
    Ok(())
}

// -----------------------------------------------------------------
// 3. Coinvariants of the self-comodule QC₂ are one-dimensional and
//    contain the unit; End^H_A(A) has the dimension of B.
// -----------------------------------------------------------------
fn criterion_3() -> Result<(), String> {
    let hh = fx("HH").algebra.expect("HH algebra");
    ensure!(
        hh.coinvariants().dim() == 1,
        "coinvariants of the self-comodule have dimension {}",
        hh.coinvariants().dim()
    );
    ensure!(hh.coinvariants().contains(hh.unit()), "the unit is not coinvariant");
    let reg_hh = RelHopfModule::regular(&hh);
    let end_hh = morphism_space(&reg_hh, &reg_hh).len();
    ensure!(end_hh == 1, "End(A) over the self-comodule has dimension {end_hh}, expected 1");
    let a4 = fx("A4").algebra.expect("A4 algebra");
    let reg_a4 = RelHopfModule::regular(&a4);
    let end_a4 = morphism_space(&reg_a4, &reg_a4).len();
    ensure!(end_a4 == 2, "End(A) over the graded base has dimension {end_a4}, expected 2");
    ensure!(a4.coinv_dim() == 2, "B has dimension {}", a4.coinv_dim());
    Ok(())
}

// -----------------------------------------------------------------
// 4. M ↦ (M⊗H)^coH is dimension-preserving with explicit mutually
//    inverse maps, and every unit map is injective.
// -----------------------------------------------------------------
fn criterion_4() -> Result<(), String> {
    for &name in FIXTURE_NAMES {
        let f = fx(name);
        for (mname, m) in &f.modules {
            let iso = tensor_h_isomorphism(m)
                .map_err(|_| format!("tensor isomorphism failed on {name}: {mname}"))?;
            let coinv = iso.module.coinvariants();
            ensure!(
                coinv.dim() == m.dim(),
                "(M⊗H)^coH has dimension {} on {name}:{mname}, expected {}",
                coinv.dim(),
                m.dim()
            );
            let gf = iso.backward.mul(&iso.forward);
            ensure!(
                gf == Matrix::identity(m.dim(), m.field()),
                "g∘f is not the identity on {name}:{mname}"
            );
            let fg = iso.forward.mul(&iso.backward);
            for t in 0..coinv.dim() {
                let v = coinv.basis_vector(t);
                ensure!(fg.apply(&v) == v, "f∘g moves a coinvariant of {name}:{mname}");
            }
            let u = unit_map(m.over(), &m.coinvariant_bmodule())
                .map_err(|_| format!("unit map failed on {name}:{mname}"))?;
            ensure!(u.injective, "the unit map of {name}:{mname} is not injective");
        }
    }
    Ok(())
}

// -----------------------------------------------------------------
// 5. The graded regular module is certified projective with lifted
//    and descended witnesses; the nilpotent quotient is certified
//    not projective.
// -----------------------------------------------------------------
fn criterion_5() -> Result<(), String> {
    let a4 = fx("A4");
    let ma = a4.module("MA").expect("module");
    let cert = certify_projectivity(ma);
    ensure!(cert.projective, "the graded regular module is not certified projective");
    ensure!(cert.b_witness.is_some(), "missing the B-witness");
    ensure!(cert.category_witness.is_some(), "missing the lifted category witness");
    ensure!(cert.u_bijective, "the unit map is not bijective");
    let descended = cert.descended_b_witness.as_ref().ok_or("the category witness did not descend")?;
    ensure!(
        replay_b_witness(&ma.coinvariant_bmodule(), descended),
        "the descended witness does not replay"
    );
    let m2 = fx("M2");
    let cert2 = certify_projectivity(m2.module("M2").expect("module"));
    ensure!(!cert2.projective, "the nilpotent quotient was certified projective");
    Ok(())
}

// -----------------------------------------------------------------
// 6. Total integrals exist on the graded base and on every
//    self-comodule base; unit maps of the shipped B-modules over the
//    graded base are bijective.
// -----------------------------------------------------------------
fn criterion_6() -> Result<(), String> {
    let a4 = fx("A4");
    let alg = a4.algebra.as_ref().expect("A4 algebra");
    ensure!(find_total_integral(alg).is_some(), "no total integral on the graded base");
    for &name in FIXTURE_NAMES {
        let f = fx(name);
        if let Some(a) = &f.algebra {
            if is_self_comodule(a) {
                ensure!(
                    find_total_integral(a).is_some(),
                    "no total integral on the self-comodule base of {name}"
                );
            }
        }
    }
    for (pname, p) in &a4.bmodules {
        let u = unit_map(alg, p).map_err(|_| format!("unit map failed on {pname}"))?;
        ensure!(u.bijective, "the unit map of {pname} is not bijective");
    }
    Ok(())
}

// -----------------------------------------------------------------
// 7. H-simplicity and field verdicts match the hand-computed facts,
//    with a replayable ideal witness on the graded base.
// -----------------------------------------------------------------
fn criterion_7() -> Result<(), String> {
    let hh = fx("HH").algebra.expect("HH algebra");
    ensure!(
        matches!(h_simplicity(&hh), HSimplicity::Simple),
        "the self-comodule QC₂ is not certified H-simple"
    );
    ensure!(
        matches!(field_verdict(&coinvariant_algebra(&hh)), Ok(FieldVerdict::Field)),
        "the coinvariants of the self-comodule are not certified a field"
    );
    let a4 = fx("A4").algebra.expect("A4 algebra");
    match h_simplicity(&a4) {
        HSimplicity::NotSimple(w) => {
            let q = Field::Rational;
            let expected = Subspace::from_spanning(
                4,
                q,
                &[basis_vec(4, 2, q), basis_vec(4, 3, q)],
            );
            ensure!(w == expected, "the ideal witness is not span{{x², x³}}");
            ensure!(is_h_ideal(&a4, &w), "the ideal witness does not replay");
        }
        _ => return Err("the graded base was not certified non-simple".into()),
    }
    ensure!(
        matches!(field_verdict(&coinvariant_algebra(&a4)), Ok(FieldVerdict::NotField)),
        "the truncated polynomial coinvariants were not certified non-field"
    );
    Ok(())
}

// -----------------------------------------------------------------
// 8. Base extensions of every shipped B-module are generated by
//    their coinvariants.
// -----------------------------------------------------------------
fn criterion_8() -> Result<(), String> {
    for name in ["A4", "HH"] {
        let f = fx(name);
        let a = f.algebra.as_ref().expect("algebra");
        for (pname, p) in &f.bmodules {
            let t = tensor_over_b(a, p)
                .map_err(|_| format!("base extension failed on {name}:{pname}"))?;
            ensure!(
                is_coinvariantly_generated(&t.module),
                "the base extension of {name}:{pname} is not coinvariantly generated"
            );
        }
    }
    Ok(())
}

// -----------------------------------------------------------------
// 9. The projectivity chain: (1)⇒(2) and (2)⇒(3) on every fixture
//    module, and (3)⇒(1) on the graded base, with no counterexample.
// -----------------------------------------------------------------
fn criterion_9() -> Result<(), String> {
    for &name in FIXTURE_NAMES {
        let f = fx(name);
        for (mname, m) in &f.modules {
            let c = projectivity_chain(m);
            let item2 = c.projective_generated_witness();
            ensure!(
                !c.extension_cover_splits || item2,
                "(1) holds but (2) fails on {name}:{mname}"
            );
            ensure!(
                !item2 || c.coinvariants_projective,
                "(2) holds but (3) fails on {name}:{mname}"
            );
            ensure!(c.chain_holds, "the chain is violated on {name}:{mname}");
            if name == "A4" {
                ensure!(!c.exactness.is_empty(), "the graded base lost its exactness witness");
                ensure!(
                    !c.coinvariants_projective || c.extension_cover_splits,
                    "(3) holds but (1) fails on {name}:{mname}"
                );
            }
        }
    }
    Ok(())
}

// -----------------------------------------------------------------
// 10. The H*-action is rational everywhere; the generator cover of
//     the nilpotent quotient is a surjection from one generator;
//     semisimple decompositions have the predicted shapes.
// -----------------------------------------------------------------
fn criterion_10() -> Result<(), String> {
    for &name in FIXTURE_NAMES {
        let f = fx(name);
        for (an, m) in &f.modules {
            for (bn, n) in &f.modules {
                ensure!(
                    rationality_check(m, n),
                    "the H*-action is not rational on {name}: {an} -> {bn}"
                );
            }
        }
    }
    let m2 = fx("M2");
    let g = generator_epi(m2.module("M2").expect("module"), None);
    ensure!(
        g.subcomodule.dim() == 1,
        "the generator subcomodule has dimension {}, expected 1",
        g.subcomodule.dim()
    );
    ensure!(g.epi.is_surjective(), "the generator cover is not surjective");
    let hh2 = fx("HH2");
    let d = decompose_semisimple(hh2.module("M").expect("module"), DEFAULT_SEARCH_SEED)
        .map_err(|_| "the rank-2 free module did not decompose")?;
    ensure!(d.summands.len() == 2, "{} summands on the rank-2 free module, expected 2", d.summands.len());
    ensure!(d.summands.iter().all(|s| s.certified), "an uncertified summand appeared");
    for &name in FIXTURE_NAMES {
        let f = fx(name);
        if let Some(a) = &f.algebra {
            if !is_self_comodule(a) {
                continue;
            }
            for (mname, m) in &f.modules {
                let d = decompose_semisimple(m, DEFAULT_SEARCH_SEED)
                    .map_err(|_| format!("decomposition failed on {name}:{mname}"))?;
                ensure!(
                    d.summands.len() == m.coinvariants().dim(),
                    "{} summands on {name}:{mname}, expected {}",
                    d.summands.len(),
                    m.coinvariants().dim()
                );
            }
        }
    }
    Ok(())
}

// -----------------------------------------------------------------
// 11. Over F₂ the searches agree with exhaustive enumeration:
//     coinvariants, H-ideals, and subobjects.
// -----------------------------------------------------------------
fn criterion_11() -> Result<(), String> {
    let f = fx("KC2F2");
    let a = f.algebra.as_ref().expect("algebra");
    let m = f.module("M").expect("module");
    let field = Field::Prime(2);
    let unit_h = f.hopf.unit();

    // Coinvariants versus brute-force fixed points, on the algebra and
    // on its regular module.
    let targets: [(&Matrix, usize, &Subspace, &str); 2] = [
        (a.coaction(), a.dim(), a.coinvariants(), "algebra"),
        (m.coaction(), m.dim(), m.coinvariants(), "module"),
    ];
    for (coaction, ambient, expected, what) in targets {
        let mut fixed = Vec::new();
        for code in 1..(1u32 << ambient) {
            let v = f2_vector(ambient, code);
            if column_fixed_by_coaction(coaction, unit_h, &v) {
                fixed.push(v);
            }
        }
        let span = Subspace::from_spanning(ambient, field, &fixed);
        ensure!(span == *expected, "brute-force coinvariants disagree on the {what}");
    }

    // H-simplicity versus the exhaustive ideal filter.
    let subspaces = f2_subspaces(a.dim());
    ensure!(subspaces.len() == 5, "expected 5 subspaces of F₂², found {}", subspaces.len());
    let proper_ideals = subspaces
        .iter()
        .filter(|w| w.dim() > 0 && w.dim() < a.dim() && is_h_ideal(a, w))
        .count();
    match h_simplicity(a) {
        HSimplicity::Simple => {
            ensure!(proper_ideals == 0, "{proper_ideals} proper ideals contradict the verdict")
        }
        HSimplicity::NotSimple(w) => {
            ensure!(proper_ideals > 0 && is_h_ideal(a, &w), "a non-ideal witness was returned")
        }
        HSimplicity::Unknown => return Err("the ideal search did not conclude over F₂".into()),
    }

    // Subobjects versus the exhaustive filter, and the simplicity verdict.
    let msubs = f2_subspaces(m.dim());
    let mut subobjects = 0;
    for w in &msubs {
        let filtered = is_subobject(m, w);
        ensure!(
            filtered == m.restrict(w).is_some(),
            "restrict() disagrees with the subobject filter"
        );
        if filtered {
            subobjects += 1;
        }
    }
    match is_simple_object(m, DEFAULT_SEARCH_SEED).map_err(|_| "simplicity was undefined")? {
        ObjectSimplicity::Simple => {
            ensure!(subobjects == 2, "{subobjects} subobjects contradict simplicity")
        }
        ObjectSimplicity::NotSimple(w) => {
            ensure!(subobjects > 2, "a witness appeared with only {subobjects} subobjects");
            ensure!(is_subobject(m, &w), "the search returned a non-subobject witness");
        }
        ObjectSimplicity::Unknown => return Err("the subobject search did not conclude".into()),
    }
    Ok(())
}

// -----------------------------------------------------------------
// 12. The binary: a fixed invocation suite runs twice with
//     byte-identical stdout and the expected exit codes, and every
//     emitted report replays to PASS through `verify`.
// -----------------------------------------------------------------
struct RunOutput {
    status: i32,
    stdout: Vec<u8>,
}

fn run_bin(args: &[&str]) -> Result<RunOutput, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfmod"))
        .args(args)
        .output()
        .map_err(|e| format!("failed to run the binary: {e}"))?;
    Ok(RunOutput { status: out.status.code().unwrap_or(-1), stdout: out.stdout })
}

fn criterion_12() -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| format!("tempdir: {e}"))?;
    let path_of = |name: &str| {
        dir.path().join(format!("{name}.hm")).to_string_lossy().into_owned()
    };

    // The fixture listing is stable and every emitted fixture validates.
    let l1 = run_bin(&["fixtures"])?;
    let l2 = run_bin(&["fixtures"])?;
    ensure!(l1.status == 0 && l1.stdout == l2.stdout, "the fixture listing is unstable");
    for &name in FIXTURE_NAMES {
        let e = run_bin(&["fixtures", "emit", name])?;
        ensure!(e.status == 0, "emit {name} exited with {}", e.status);
        fs::write(path_of(name), &e.stdout).map_err(|e| format!("write: {e}"))?;
        let v = run_bin(&["validate", &path_of(name)])?;
        ensure!(v.status == 0, "emitted {name} does not validate");
    }

    let a4 = path_of("A4");
    let hh = path_of("HH");
    let hh2 = path_of("HH2");
    let m2 = path_of("M2");
    let sw4 = path_of("SW4");
    let kc2f2 = path_of("KC2F2");
    let suite: Vec<(Vec<&str>, i32)> = vec![
        (vec!["validate", &a4], 0),
        (vec!["coinvariants", &hh], 0),
        (vec!["coinvariants", "--module", "MA", &a4], 0),
        (vec!["certify-projective", "--module", "MA", &a4], 0),
        (vec!["certify-projective", "--module", "M2", &m2], 1),
        (vec!["total-integral", &a4], 0),
        (vec!["total-integral", &sw4], 1),
        (vec!["h-simple", &hh], 0),
        (vec!["h-simple", &a4], 1),
        (vec!["h-simple", &kc2f2], 0),
        (vec!["is-field", &hh], 0),
        (vec!["is-field", &a4], 1),
        (vec!["decompose", "--module", "M", &hh2], 0),
        (vec!["decompose", "--module", "M2", &m2], 1),
        (vec!["decompose", "--module", "M", "--seed", "12345", &kc2f2], 0),
        (vec!["prop25", "--module", "MA", &a4], 0),
        (vec!["prop25", "--module", "M2", &m2], 1),
        (vec!["prop43", "--module", "M", &hh], 0),
        (vec!["prop43", "--module", "M", &kc2f2], 0),
        (vec!["prop43", "--module", "M2", &m2], 2),
        (vec!["prop43", "--module", "M", &sw4], 2),
    ];
    for (i, (args, expected)) in suite.iter().enumerate() {
        let first = run_bin(args)?;
        let second = run_bin(args)?;
        ensure!(
            first.stdout == second.stdout,
            "stdout differs between runs for {args:?}"
        );
        ensure!(
            first.status == *expected,
            "{args:?} exited with {}, expected {expected}",
            first.status
        );
        let report_path = dir.path().join(format!("report-{i}.txt"));
        fs::write(&report_path, &first.stdout).map_err(|e| format!("write: {e}"))?;
        let report_arg = report_path.to_string_lossy().into_owned();
        let v1 = run_bin(&["verify", &report_arg])?;
        let v2 = run_bin(&["verify", &report_arg])?;
        ensure!(
            v1.status == 0,
            "verify failed for {args:?}:\n{}",
            String::from_utf8_lossy(&v1.stdout)
        );
        ensure!(v1.stdout == v2.stdout, "verify output differs between runs for {args:?}");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let checks: [(&str, fn() -> Result<(), String>); 12] = [
        ("1, fixtures validate and corruption is named", criterion_1),
        ("2, Hom coinvariants equal colinear maps", criterion_2),
        ("3, coinvariants and endomorphism dimensions", criterion_3),
        ("4, tensoring with H and injective units", criterion_4),
        ("5, projectivity certificates", criterion_5),
        ("6, total integrals and bijective units", criterion_6),
        ("7, H-simplicity and field verdicts", criterion_7),
        ("8, base extensions are coinvariantly generated", criterion_8),
        ("9, the projectivity chain", criterion_9),
        ("10, rationality and semisimple decompositions", criterion_10),
        ("11, exhaustive F₂ cross-checks", criterion_11),
        ("12, deterministic CLI reports that replay", criterion_12),
    ];
    let mut failures = Vec::new();
    for (label, check) in checks {
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(())) => println!("criterion {label}: pass"),
            Ok(Err(reason)) => {
                println!("criterion {label}: FAIL ({reason})");
                failures.push(label);
            }
            Err(_) => {
                println!("criterion {label}: FAIL (panicked)");
                failures.push(label);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
