//! One function per subcommand, each returning a deterministic report
//! and an exit code, plus the `verify` replay that recomputes every item
//! from the embedded instance and re-checks every witness property.
//!
//! Exit codes: 0 for a positive verdict, 1 for a certified negative, 2
//! for errors and `unknown` verdicts.

use std::fmt::Write as _;

use hopfmod::fixtures::{fixture, FIXTURE_NAMES};
use hopfmod::projcert::{
    certify_projectivity, coinvariant_algebra, field_verdict, find_total_integral, h_simplicity,
    is_h_ideal, projective_section, projectivity_chain, replay_b_witness, replay_total_integral,
    ExactnessWitnesses, FieldVerdict, HSimplicity, SplitWitness, WitnessContext,
};
use hopfmod::relhopf::{tensor_over_b, BModule, RelHopfModule, RelHopfMorphism};
use hopfmod::ssdecomp::{decompose_semisimple, generator_epi, projective_object_check};
use hopfmod::{Diagnostic, Field, Matrix, Scalar, Subspace};
use serde::Serialize;

use crate::format::{
    fixture_instance, parse_instance, same_instance, serialize_instance, InstanceError,
    InstanceFile, NamedAlgebra, NamedModule,
};
use crate::report::{Report, ReportItem, WitnessMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
}

fn diag_details(diags: &[Diagnostic]) -> Vec<String> {
    diags.iter().map(|d| format!("[{}] {}", d.law, d.detail)).collect()
}

fn finish(inst: &InstanceFile, command: &str, items: Vec<ReportItem>) -> Outcome {
    let exit = items.iter().map(exit_for).max().unwrap_or(EXIT_OK);
    let report = Report {
        command: command.to_string(),
        field: inst.field.to_string(),
        instance: serialize_instance(inst),
        items,
    };
    Outcome { report, exit }
}

fn exit_for(item: &ReportItem) -> i32 {
    match (item.kind.as_str(), item.verdict.as_str()) {
        ("validation", "pass") => EXIT_OK,
        ("validation", _) => EXIT_NEGATIVE,
        ("coinvariants", _) => EXIT_OK,
        ("projectivity", "projective") => EXIT_OK,
        ("projectivity", _) => EXIT_NEGATIVE,
        ("total-integral", "found") => EXIT_OK,
        ("total-integral", _) => EXIT_NEGATIVE,
        ("h-simplicity", "simple") => EXIT_OK,
        ("h-simplicity", "not-simple") => EXIT_NEGATIVE,
        ("h-simplicity", _) => EXIT_ERROR,
        ("field", "field") => EXIT_OK,
        ("field", "not-field") => EXIT_NEGATIVE,
        ("field", _) => EXIT_ERROR,
        ("decomposition", "decomposed") => EXIT_OK,
        ("decomposition", _) => EXIT_NEGATIVE,
        ("chain", "projective") => EXIT_OK,
        ("chain", "not-projective") => EXIT_NEGATIVE,
        ("chain", _) => EXIT_ERROR,
        ("generator-split", "split") => EXIT_OK,
        ("generator-split", "no-split") => EXIT_NEGATIVE,
        ("generator-split", _) => EXIT_ERROR,
        _ => EXIT_ERROR,
    }
}

// ---------------------------------------------------------------------
// Target resolution
// ---------------------------------------------------------------------

fn target_module<'a>(
    inst: &'a InstanceFile,
    name: Option<&str>,
) -> Result<&'a NamedModule, InstanceError> {
    match name {
        Some(n) => inst
            .module(n)
            .ok_or_else(|| InstanceError::Semantic(format!("unknown module '{n}'"))),
        None => match inst.modules.len() {
            1 => Ok(&inst.modules[0]),
            0 => Err(InstanceError::Semantic("the instance declares no module".into())),
            _ => Err(InstanceError::Semantic(
                "several modules are declared; select one with --module".into(),
            )),
        },
    }
}

fn target_algebra(inst: &InstanceFile) -> Result<&NamedAlgebra, InstanceError> {
    inst.algebra()
        .ok_or_else(|| InstanceError::Semantic("the instance declares no comodule algebra".into()))
}

enum CoinvTarget<'a> {
    Algebra(&'a NamedAlgebra),
    Module(&'a NamedModule),
}

fn resolve_coinv_target<'a>(
    inst: &'a InstanceFile,
    module: Option<&str>,
) -> Result<CoinvTarget<'a>, InstanceError> {
    if let Some(n) = module {
        return inst
            .module(n)
            .map(CoinvTarget::Module)
            .ok_or_else(|| InstanceError::Semantic(format!("unknown module '{n}'")));
    }
    if let Some(a) = inst.algebra() {
        return Ok(CoinvTarget::Algebra(a));
    }
    match inst.modules.len() {
        1 => Ok(CoinvTarget::Module(&inst.modules[0])),
        _ => Err(InstanceError::Semantic(
            "the instance declares neither a comodule algebra nor a unique module".into(),
        )),
    }
}

// ---------------------------------------------------------------------
// Item builders (shared between the commands and the verify replay)
// ---------------------------------------------------------------------

fn push_split(witnesses: &mut Vec<WitnessMatrix>, prefix: &str, w: &SplitWitness) {
    witnesses.push(WitnessMatrix::from_matrix(&format!("{prefix}-epi"), &w.epi));
    witnesses.push(WitnessMatrix::from_matrix(&format!("{prefix}-section"), &w.section));
}

fn validation_items(inst: &InstanceFile) -> Vec<ReportItem> {
    let mut items = Vec::new();
    for h in &inst.hopfs {
        items.push(ReportItem {
            subject: format!("hopf {}", h.name),
            kind: "validation".into(),
            verdict: "pass".into(),
            details: vec![format!("dimension {}", h.hopf.dim())],
            witnesses: Vec::new(),
        });
    }
    for a in &inst.algebras {
        items.push(ReportItem {
            subject: format!("algebra {}", a.name),
            kind: "validation".into(),
            verdict: "pass".into(),
            details: vec![
                format!("dimension {}", a.algebra.dim()),
                format!("over Hopf algebra {}", a.over),
                format!("coinvariant dimension {}", a.algebra.coinv_dim()),
            ],
            witnesses: Vec::new(),
        });
    }
    for m in &inst.modules {
        items.push(ReportItem {
            subject: format!("module {}", m.name),
            kind: "validation".into(),
            verdict: "pass".into(),
            details: vec![
                format!("dimension {}", m.module.dim()),
                format!("over algebra {}", m.over),
            ],
            witnesses: Vec::new(),
        });
    }
    for b in &inst.bmodules {
        items.push(ReportItem {
            subject: format!("bmodule {}", b.name),
            kind: "validation".into(),
            verdict: "pass".into(),
            details: vec![
                format!("dimension {}", b.bmodule.dim()),
                format!("over the coinvariants of algebra {}", b.over),
            ],
            witnesses: Vec::new(),
        });
    }
    items
}

fn validation_failure_item(object: &str, diags: &[Diagnostic]) -> ReportItem {
    ReportItem {
        subject: object.to_string(),
        kind: "validation".into(),
        verdict: "fail".into(),
        details: diag_details(diags),
        witnesses: Vec::new(),
    }
}

fn coinvariants_item(target: &CoinvTarget<'_>) -> ReportItem {
    let (subject, ambient, coinv) = match target {
        CoinvTarget::Algebra(a) => (
            format!("algebra {}", a.name),
            a.algebra.dim(),
            a.algebra.coinvariants().clone(),
        ),
        CoinvTarget::Module(m) => (
            format!("module {}", m.name),
            m.module.dim(),
            m.module.coinvariants().clone(),
        ),
    };
    ReportItem {
        subject,
        kind: "coinvariants".into(),
        verdict: "computed".into(),
        details: vec![
            format!("ambient dimension {ambient}"),
            format!("coinvariant dimension {}", coinv.dim()),
        ],
        witnesses: vec![WitnessMatrix::from_matrix("coinvariant-basis", coinv.basis())],
    }
}

fn projectivity_item(m: &NamedModule) -> ReportItem {
    let cert = certify_projectivity(&m.module);
    let mut details = cert.notes.clone();
    details.push(format!("unit map bijective: {}", cert.u_bijective));
    details.push(format!("category witness: {}", presence(cert.category_witness.is_some())));
    details.push(format!(
        "descended witness: {}",
        presence(cert.descended_b_witness.is_some())
    ));
    let mut witnesses = Vec::new();
    if let Some(w) = &cert.b_witness {
        push_split(&mut witnesses, "b", w);
    }
    if let Some(w) = &cert.category_witness {
        push_split(&mut witnesses, "category", w);
    }
    if let Some(w) = &cert.descended_b_witness {
        push_split(&mut witnesses, "descended", w);
    }
    ReportItem {
        subject: format!("module {}", m.name),
        kind: "projectivity".into(),
        verdict: if cert.projective { "projective".into() } else { "not-projective".into() },
        details,
        witnesses,
    }
}

fn presence(present: bool) -> &'static str {
    if present {
        "present"
    } else {
        "absent"
    }
}

fn total_integral_item(a: &NamedAlgebra) -> ReportItem {
    let (verdict, details, witnesses) = match find_total_integral(&a.algebra) {
        Some(t) => (
            "found",
            vec!["a unit-preserving colinear map from H to A exists".to_string()],
            vec![WitnessMatrix::from_matrix("total-integral", &t.map)],
        ),
        None => (
            "none",
            vec!["the unit-preserving colinear system is inconsistent".to_string()],
            Vec::new(),
        ),
    };
    ReportItem {
        subject: format!("algebra {}", a.name),
        kind: "total-integral".into(),
        verdict: verdict.into(),
        details,
        witnesses,
    }
}

fn h_simplicity_item(a: &NamedAlgebra) -> ReportItem {
    let (verdict, details, witnesses) = match h_simplicity(&a.algebra) {
        HSimplicity::Simple => (
            "simple",
            vec!["no proper nonzero coaction-stable two-sided ideal exists".to_string()],
            Vec::new(),
        ),
        HSimplicity::NotSimple(w) => (
            "not-simple",
            vec![format!("witness ideal dimension {}", w.dim())],
            vec![WitnessMatrix::from_matrix("h-ideal-basis", w.basis())],
        ),
        HSimplicity::Unknown => (
            "unknown",
            vec!["the ideal search was inconclusive".to_string()],
            Vec::new(),
        ),
    };
    ReportItem {
        subject: format!("algebra {}", a.name),
        kind: "h-simplicity".into(),
        verdict: verdict.into(),
        details,
        witnesses,
    }
}

fn field_item(a: &NamedAlgebra) -> ReportItem {
    let b = coinvariant_algebra(&a.algebra);
    let (verdict, details) = match field_verdict(&b) {
        Ok(FieldVerdict::Field) => ("field", vec![format!("coinvariant dimension {}", b.dim())]),
        Ok(FieldVerdict::NotField) => {
            ("not-field", vec![format!("coinvariant dimension {}", b.dim())])
        }
        Ok(FieldVerdict::Unknown) => (
            "unknown",
            vec![format!("coinvariant dimension {}", b.dim()), "the search budget was exhausted".into()],
        ),
        Err(diags) => ("fail", diag_details(&diags)),
    };
    ReportItem {
        subject: format!("algebra {}", a.name),
        kind: "field".into(),
        verdict: verdict.into(),
        details,
        witnesses: Vec::new(),
    }
}

fn decomposition_item(m: &NamedModule, seed: u64) -> ReportItem {
    let mut details = vec![format!("search seed {seed}")];
    let mut witnesses = Vec::new();
    let verdict = match decompose_semisimple(&m.module, seed) {
        Ok(d) => {
            for note in &d.hypothesis_notes {
                details.push(format!("hypothesis: {note}"));
            }
            details.push(format!("{} summands", d.summands.len()));
            for (i, s) in d.summands.iter().enumerate() {
                details.push(format!(
                    "summand {}: dimension {}, certified simple: {}",
                    i + 1,
                    s.module.dim(),
                    s.certified
                ));
                witnesses.push(WitnessMatrix::from_matrix(
                    &format!("summand-{}", i + 1),
                    s.subspace.basis(),
                ));
            }
            "decomposed"
        }
        Err(diags) => {
            details.extend(diag_details(&diags));
            "failed"
        }
    };
    ReportItem {
        subject: format!("module {}", m.name),
        kind: "decomposition".into(),
        verdict: verdict.into(),
        details,
        witnesses,
    }
}

fn exactness_label(e: &ExactnessWitnesses) -> &'static str {
    match (e.cosemisimple.is_some(), e.total_integral.is_some()) {
        (true, true) => "cosemisimplicity and total integral",
        (true, false) => "cosemisimplicity",
        (false, true) => "total integral",
        (false, false) => "none",
    }
}

fn chain_item(m: &NamedModule) -> ReportItem {
    let c = projectivity_chain(&m.module);
    let mut details = c.notes.clone();
    details.push(format!(
        "item 1, the free cover of the base extension splits: {}",
        c.extension_cover_splits
    ));
    details.push(format!(
        "item 2, the witness module is projective-generated: {}",
        c.projective_generated_witness()
    ));
    details.push(format!("unit map bijective: {}", c.unit_bijective));
    details.push(format!(
        "witness module coinvariantly generated: {}",
        c.witness_generated
    ));
    details.push(format!("witness cover splits: {}", c.witness_cover_splits));
    details.push(format!(
        "item 3, the coinvariants are projective over B: {}",
        c.coinvariants_projective
    ));
    details.push(format!("exactness witness: {}", exactness_label(&c.exactness)));
    details.push(format!("implications hold: {}", c.chain_holds));
    let mut witnesses = Vec::new();
    if let Some(w) = &c.extension_cover_witness {
        push_split(&mut witnesses, "extension-cover", w);
    }
    if let Some(w) = &c.b_witness {
        push_split(&mut witnesses, "b", w);
    }
    let verdict = if !c.chain_holds {
        "violated"
    } else if c.coinvariants_projective {
        "projective"
    } else {
        "not-projective"
    };
    ReportItem {
        subject: format!("module {}", m.name),
        kind: "chain".into(),
        verdict: verdict.into(),
        details,
        witnesses,
    }
}

fn generator_split_item(m: &NamedModule) -> ReportItem {
    let r = projective_object_check(&m.module);
    let details = vec![
        format!("base algebra semisimple: {}", r.hom_exactness.base_semisimple),
        format!(
            "base is the commutative self-comodule of its Hopf algebra: {}",
            r.hom_exactness.self_comodule_commutative
        ),
        format!(
            "cosemisimplicity witness: {}",
            presence(r.exactness.cosemisimple.is_some())
        ),
        format!("total integral: {}", presence(r.exactness.total_integral.is_some())),
        format!("generator subcomodule dimension {}", r.generator.subcomodule.dim()),
        format!("hypotheses witnessed: {}", r.applicable),
    ];
    let mut witnesses = vec![
        WitnessMatrix::from_matrix("generator-basis", r.generator.subcomodule.basis()),
        WitnessMatrix::from_matrix("generator-epi", r.generator.epi.matrix()),
    ];
    if let Some(s) = &r.section {
        witnesses.push(WitnessMatrix::from_matrix("generator-section", s.matrix()));
    }
    let verdict = match r.split_found {
        None => "inapplicable",
        Some(true) => "split",
        Some(false) => "no-split",
    };
    ReportItem {
        subject: format!("module {}", m.name),
        kind: "generator-split".into(),
        verdict: verdict.into(),
        details,
        witnesses,
    }
}

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

pub fn validate(inst: &InstanceFile, command: &str) -> Outcome {
    finish(inst, command, validation_items(inst))
}

/// Report for an instance whose tables parsed but whose axioms failed:
/// the raw text is embedded so the verdict can be replayed.
pub fn validate_failure(
    raw: &str,
    command: &str,
    object: &str,
    diags: &[Diagnostic],
) -> Outcome {
    let report = Report {
        command: command.to_string(),
        field: field_line_of(raw),
        instance: raw.to_string(),
        items: vec![validation_failure_item(object, diags)],
    };
    Outcome { report, exit: EXIT_NEGATIVE }
}

fn field_line_of(raw: &str) -> String {
    for line in raw.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        if tokens.next() == Some("field") {
            let rest: Vec<&str> = tokens.collect();
            return rest.join(" ");
        }
    }
    "unknown".into()
}

pub fn coinvariants_cmd(
    inst: &InstanceFile,
    command: &str,
    module: Option<&str>,
) -> Result<Outcome, InstanceError> {
    let target = resolve_coinv_target(inst, module)?;
    Ok(finish(inst, command, vec![coinvariants_item(&target)]))
}

pub fn certify_projective(
    inst: &InstanceFile,
    command: &str,
    module: Option<&str>,
) -> Result<Outcome, InstanceError> {
    let m = target_module(inst, module)?;
    Ok(finish(inst, command, vec![projectivity_item(m)]))
}

pub fn total_integral(inst: &InstanceFile, command: &str) -> Result<Outcome, InstanceError> {
    let a = target_algebra(inst)?;
    Ok(finish(inst, command, vec![total_integral_item(a)]))
}

pub fn h_simple(inst: &InstanceFile, command: &str) -> Result<Outcome, InstanceError> {
    let a = target_algebra(inst)?;
    Ok(finish(inst, command, vec![h_simplicity_item(a)]))
}

pub fn is_field(inst: &InstanceFile, command: &str) -> Result<Outcome, InstanceError> {
    let a = target_algebra(inst)?;
    Ok(finish(inst, command, vec![field_item(a)]))
}

pub fn decompose(
    inst: &InstanceFile,
    command: &str,
    module: Option<&str>,
    seed: u64,
) -> Result<Outcome, InstanceError> {
    let m = target_module(inst, module)?;
    Ok(finish(inst, command, vec![decomposition_item(m, seed)]))
}

pub fn prop25(
    inst: &InstanceFile,
    command: &str,
    module: Option<&str>,
) -> Result<Outcome, InstanceError> {
    let m = target_module(inst, module)?;
    Ok(finish(inst, command, vec![chain_item(m)]))
}

pub fn prop43(
    inst: &InstanceFile,
    command: &str,
    module: Option<&str>,
) -> Result<Outcome, InstanceError> {
    let m = target_module(inst, module)?;
    Ok(finish(inst, command, vec![generator_split_item(m)]))
}

pub fn fixtures_list() -> String {
    let mut s = String::new();
    for name in FIXTURE_NAMES {
        let f = fixture(name).expect("shipped fixture");
        let _ = writeln!(s, "{name}  {}", f.summary);
    }
    s
}

pub fn fixtures_json() -> String {
    let entries: Vec<serde_json::Value> = FIXTURE_NAMES
        .iter()
        .map(|name| {
            let f = fixture(name).expect("shipped fixture");
            serde_json::json!({ "name": f.name, "summary": f.summary })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&entries).expect("fixture list serialization");
    s.push('\n');
    s
}

pub fn fixtures_emit(name: &str) -> Option<String> {
    let f = fixture(name)?;
    Some(serialize_instance(&fixture_instance(&f)))
}

// ---------------------------------------------------------------------
// Verify: replay a stored report
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ReplayLine {
    pub subject: String,
    pub kind: String,
    pub passed: bool,
    pub note: String,
}

pub fn replay_report(rep: &Report) -> Vec<ReplayLine> {
    let parsed = parse_instance(&rep.instance);
    rep.items
        .iter()
        .map(|item| match replay_item(&parsed, item) {
            Ok(()) => ReplayLine {
                subject: item.subject.clone(),
                kind: item.kind.clone(),
                passed: true,
                note: String::new(),
            },
            Err(note) => ReplayLine {
                subject: item.subject.clone(),
                kind: item.kind.clone(),
                passed: false,
                note,
            },
        })
        .collect()
}

fn replay_item(
    parsed: &Result<InstanceFile, InstanceError>,
    item: &ReportItem,
) -> Result<(), String> {
    if item.kind == "validation" {
        return replay_validation(parsed, item);
    }
    let inst = parsed
        .as_ref()
        .map_err(|e| format!("embedded instance does not parse: {e}"))?;
    match item.kind.as_str() {
        "coinvariants" => replay_coinvariants(inst, item),
        "projectivity" => replay_projectivity(inst, item),
        "total-integral" => replay_total(inst, item),
        "h-simplicity" => replay_h_simplicity(inst, item),
        "field" => replay_field(inst, item),
        "decomposition" => replay_decomposition(inst, item),
        "chain" => replay_chain(inst, item),
        "generator-split" => replay_generator_split(inst, item),
        other => Err(format!("unknown item kind '{other}'")),
    }
}

/// Byte-equality against a deterministic recomputation of the same item.
fn compare_items(stored: &ReportItem, rebuilt: &ReportItem) -> Result<(), String> {
    if stored.verdict != rebuilt.verdict {
        return Err(format!(
            "verdict mismatch: stored '{}', recomputed '{}'",
            stored.verdict, rebuilt.verdict
        ));
    }
    if stored.details != rebuilt.details {
        return Err("details differ from the deterministic recomputation".into());
    }
    if stored.witnesses != rebuilt.witnesses {
        return Err("witnesses differ from the deterministic recomputation".into());
    }
    Ok(())
}

fn witness<'a>(item: &'a ReportItem, name: &str) -> Result<&'a WitnessMatrix, String> {
    item.witnesses
        .iter()
        .find(|w| w.name == name)
        .ok_or_else(|| format!("missing witness '{name}'"))
}

fn has_witness(item: &ReportItem, name: &str) -> bool {
    item.witnesses.iter().any(|w| w.name == name)
}

fn split_from(
    item: &ReportItem,
    prefix: &str,
    context: WitnessContext,
    field: Field,
) -> Result<SplitWitness, String> {
    let epi = witness(item, &format!("{prefix}-epi"))?.to_matrix(field)?;
    let section = witness(item, &format!("{prefix}-section"))?.to_matrix(field)?;
    Ok(SplitWitness { context, epi, section })
}

fn module_by_subject<'a>(
    inst: &'a InstanceFile,
    subject: &str,
) -> Result<&'a NamedModule, String> {
    let name = subject
        .strip_prefix("module ")
        .ok_or_else(|| format!("subject '{subject}' does not name a module"))?;
    inst.module(name)
        .ok_or_else(|| format!("the instance declares no module '{name}'"))
}

fn algebra_by_subject<'a>(
    inst: &'a InstanceFile,
    subject: &str,
) -> Result<&'a NamedAlgebra, String> {
    let name = subject
        .strip_prefix("algebra ")
        .ok_or_else(|| format!("subject '{subject}' does not name an algebra"))?;
    inst.algebras
        .iter()
        .find(|a| a.name == name)
        .ok_or_else(|| format!("the instance declares no algebra '{name}'"))
}

fn replay_validation(
    parsed: &Result<InstanceFile, InstanceError>,
    item: &ReportItem,
) -> Result<(), String> {
    match item.verdict.as_str() {
        "pass" => {
            let inst = parsed
                .as_ref()
                .map_err(|e| format!("embedded instance does not parse: {e}"))?;
            let reparsed = parse_instance(&serialize_instance(inst))
                .map_err(|e| format!("the canonical serialization does not re-parse: {e}"))?;
            if !same_instance(inst, &reparsed) {
                return Err("the canonical serialization changes the instance".into());
            }
            let rebuilt = validation_items(inst)
                .into_iter()
                .find(|i| i.subject == item.subject)
                .ok_or_else(|| {
                    format!("the instance declares no object '{}'", item.subject)
                })?;
            compare_items(item, &rebuilt)
        }
        "fail" => match parsed {
            Err(InstanceError::Invalid { object, diagnostics }) => {
                if *object != item.subject {
                    return Err(format!(
                        "the failing object is '{object}', the report says '{}'",
                        item.subject
                    ));
                }
                compare_items(item, &validation_failure_item(object, diagnostics))
            }
            Ok(_) => Err("the embedded instance validates, but the report claims a failure".into()),
            Err(e) => Err(format!("the embedded instance fails differently: {e}")),
        },
        other => Err(format!("unknown validation verdict '{other}'")),
    }
}

fn column_is_coinvariant(coaction: &Matrix, unit_h: &[Scalar], v: &[Scalar]) -> bool {
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

fn replay_coinvariants(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let (target, coaction, unit_h, expected): (CoinvTarget<'_>, &Matrix, &[Scalar], Subspace) =
        if item.subject.starts_with("module ") {
            let m = module_by_subject(inst, &item.subject)?;
            (
                CoinvTarget::Module(m),
                m.module.coaction(),
                m.module.hopf().unit(),
                m.module.coinvariants().clone(),
            )
        } else {
            let a = algebra_by_subject(inst, &item.subject)?;
            (
                CoinvTarget::Algebra(a),
                a.algebra.coaction(),
                a.algebra.hopf().unit(),
                a.algebra.coinvariants().clone(),
            )
        };
    compare_items(item, &coinvariants_item(&target))?;
    let field = inst.field;
    let basis = witness(item, "coinvariant-basis")?.to_matrix(field)?;
    for c in 0..basis.cols() {
        if !column_is_coinvariant(coaction, unit_h, &basis.column(c)) {
            return Err(format!("witness column {} is not coinvariant", c + 1));
        }
    }
    if Subspace::from_column_span(&basis) != expected {
        return Err("the witness span differs from the coinvariant space".into());
    }
    Ok(())
}

fn replay_projectivity(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let m = module_by_subject(inst, &item.subject)?;
    compare_items(item, &projectivity_item(m))?;
    let module = &m.module;
    let over = module.over();
    let field = module.field();
    let p = module.coinvariant_bmodule();
    if item.verdict == "projective" {
        let w = split_from(item, "b", WitnessContext::OverB, field)?;
        if !replay_b_witness(&p, &w) {
            return Err("the stored B-witness does not replay".into());
        }
        if has_witness(item, "category-epi") {
            let epi = witness(item, "category-epi")?.to_matrix(field)?;
            let sec = witness(item, "category-section")?.to_matrix(field)?;
            let free = BModule::free(over, p.dim());
            let t_p = tensor_over_b(over, &p).map_err(|_| "base extension of P failed")?;
            let t_f = tensor_over_b(over, &free).map_err(|_| "base extension of B^r failed")?;
            RelHopfMorphism::new(t_f.module.clone(), t_p.module.clone(), epi.clone())
                .map_err(|_| "the category epi is not a morphism")?;
            RelHopfMorphism::new(t_p.module.clone(), t_f.module.clone(), sec.clone())
                .map_err(|_| "the category section is not a morphism")?;
            if epi.mul(&sec) != Matrix::identity(t_p.module.dim(), field) {
                return Err("the category pair does not compose to the identity".into());
            }
        }
        if has_witness(item, "descended-epi") {
            let w = split_from(item, "descended", WitnessContext::OverB, field)?;
            if !replay_b_witness(&p, &w) {
                return Err("the descended witness does not replay".into());
            }
        }
        Ok(())
    } else {
        if projective_section(&p).is_some() {
            return Err("a B-section exists although the report claims none".into());
        }
        Ok(())
    }
}

fn replay_total(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let a = algebra_by_subject(inst, &item.subject)?;
    compare_items(item, &total_integral_item(a))?;
    match item.verdict.as_str() {
        "found" => {
            let phi = witness(item, "total-integral")?.to_matrix(inst.field)?;
            if !replay_total_integral(&a.algebra, &phi) {
                return Err("the stored total integral does not replay".into());
            }
            Ok(())
        }
        "none" => {
            if find_total_integral(&a.algebra).is_some() {
                return Err("a total integral exists although the report claims none".into());
            }
            Ok(())
        }
        other => Err(format!("unknown total-integral verdict '{other}'")),
    }
}

fn replay_h_simplicity(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let a = algebra_by_subject(inst, &item.subject)?;
    compare_items(item, &h_simplicity_item(a))?;
    if item.verdict == "not-simple" {
        let basis = witness(item, "h-ideal-basis")?.to_matrix(inst.field)?;
        let span = Subspace::from_column_span(&basis);
        if span.dim() == 0 || span.dim() == a.algebra.dim() {
            return Err("the witness ideal is not proper and nonzero".into());
        }
        if !is_h_ideal(&a.algebra, &span) {
            return Err("the witness subspace is not a coaction-stable ideal".into());
        }
    }
    Ok(())
}

fn replay_field(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let a = algebra_by_subject(inst, &item.subject)?;
    compare_items(item, &field_item(a))
}

fn replay_decomposition(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let m = module_by_subject(inst, &item.subject)?;
    let seed: u64 = item
        .details
        .iter()
        .find_map(|d| d.strip_prefix("search seed "))
        .ok_or("missing the search-seed detail")?
        .parse()
        .map_err(|_| "unreadable search seed".to_string())?;
    compare_items(item, &decomposition_item(m, seed))?;
    if item.verdict != "decomposed" {
        return Ok(());
    }
    let field = inst.field;
    let mut total = 0;
    let mut span = Subspace::zero(m.module.dim(), field);
    for w in &item.witnesses {
        let basis = w.to_matrix(field)?;
        let s = Subspace::from_column_span(&basis);
        if m.module.restrict(&s).is_none() {
            return Err(format!("witness '{}' is not a subobject", w.name));
        }
        total += s.dim();
        span = span.sum(&s);
    }
    if total != m.module.dim() || !span.is_full() {
        return Err("the summands do not decompose the module".into());
    }
    Ok(())
}

fn replay_chain(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let m = module_by_subject(inst, &item.subject)?;
    compare_items(item, &chain_item(m))?;
    let module = &m.module;
    let over = module.over();
    let field = module.field();
    let p = module.coinvariant_bmodule();
    if has_witness(item, "b-epi") {
        let w = split_from(item, "b", WitnessContext::OverB, field)?;
        if !replay_b_witness(&p, &w) {
            return Err("the stored B-witness does not replay".into());
        }
    }
    if has_witness(item, "extension-cover-epi") {
        let epi = witness(item, "extension-cover-epi")?.to_matrix(field)?;
        let sec = witness(item, "extension-cover-section")?.to_matrix(field)?;
        let free_r = RelHopfModule::free(over, p.dim());
        let t_p = tensor_over_b(over, &p).map_err(|_| "base extension of P failed")?;
        RelHopfMorphism::new(free_r.clone(), t_p.module.clone(), epi.clone())
            .map_err(|_| "the extension cover is not a morphism")?;
        RelHopfMorphism::new(t_p.module.clone(), free_r, sec.clone())
            .map_err(|_| "the extension-cover section is not a morphism")?;
        if epi.mul(&sec) != Matrix::identity(t_p.module.dim(), field) {
            return Err("the extension-cover pair does not compose to the identity".into());
        }
    }
    Ok(())
}

fn replay_generator_split(inst: &InstanceFile, item: &ReportItem) -> Result<(), String> {
    let m = module_by_subject(inst, &item.subject)?;
    compare_items(item, &generator_split_item(m))?;
    if item.verdict == "split" {
        let field = m.module.field();
        let g = generator_epi(&m.module, None);
        let sec = witness(item, "generator-section")?.to_matrix(field)?;
        RelHopfMorphism::new(g.epi.target().clone(), g.epi.source().clone(), sec.clone())
            .map_err(|_| "the generator section is not a morphism")?;
        if g.epi.matrix().mul(&sec) != Matrix::identity(m.module.dim(), field) {
            return Err("the generator pair does not compose to the identity".into());
        }
    }
    Ok(())
}
