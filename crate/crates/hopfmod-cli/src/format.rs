//! The line-oriented instance file format.
//!
//! A file declares its field first, then blocks: `hopf`, at most one
//! `algebra`, and any number of `module` / `bmodule` blocks, each
//! followed by sparse structure-constant lines with 1-based indices.
//! Unspecified entries are zero; duplicate entries are rejected; the
//! algebra and Hopf units are inferred from the multiplication tables.
//! Every block passes through the library validators before it becomes
//! part of the parsed instance.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use hopfmod::diagnostics::Diagnostic;
use hopfmod::fixtures::Fixture;
use hopfmod::hopf::{validate_hopf, FinAlgebra, HopfAlgebra, HopfData};
use hopfmod::relhopf::{same_base, BModule, ComoduleAlgebra, RelHopfModule};
use hopfmod::{Field, Matrix, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error("{object} failed validation: {}", format_diagnostics(.diagnostics))]
    Invalid { object: String, diagnostics: Vec<Diagnostic> },
}

pub fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("[{}] {}", d.law, d.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone)]
pub struct NamedHopf {
    pub name: String,
    pub hopf: Arc<HopfAlgebra>,
}

#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: String,
    pub over: String,
    pub algebra: Arc<ComoduleAlgebra>,
}

#[derive(Debug, Clone)]
pub struct NamedModule {
    pub name: String,
    pub over: String,
    pub module: RelHopfModule,
}

#[derive(Debug, Clone)]
pub struct NamedBModule {
    pub name: String,
    pub over: String,
    pub bmodule: BModule,
}

/// A fully validated instance file.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub field: Field,
    pub hopfs: Vec<NamedHopf>,
    pub algebras: Vec<NamedAlgebra>,
    pub modules: Vec<NamedModule>,
    pub bmodules: Vec<NamedBModule>,
}

impl InstanceFile {
    pub fn hopf(&self, name: &str) -> Option<&NamedHopf> {
        self.hopfs.iter().find(|h| h.name == name)
    }

    pub fn algebra(&self) -> Option<&NamedAlgebra> {
        self.algebras.first()
    }

    pub fn module(&self, name: &str) -> Option<&NamedModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn bmodule(&self, name: &str) -> Option<&NamedBModule> {
        self.bmodules.iter().find(|m| m.name == name)
    }
}

/// Structural equality of two parsed instances, table by table.
pub fn same_instance(a: &InstanceFile, b: &InstanceFile) -> bool {
    a.field == b.field
        && a.hopfs.len() == b.hopfs.len()
        && a.hopfs
            .iter()
            .zip(&b.hopfs)
            .all(|(x, y)| x.name == y.name && *x.hopf == *y.hopf)
        && a.algebras.len() == b.algebras.len()
        && a.algebras.iter().zip(&b.algebras).all(|(x, y)| {
            x.name == y.name && x.over == y.over && same_base(&x.algebra, &y.algebra)
        })
        && a.modules.len() == b.modules.len()
        && a.modules.iter().zip(&b.modules).all(|(x, y)| {
            x.name == y.name
                && x.over == y.over
                && x.module.action() == y.module.action()
                && x.module.coaction() == y.module.coaction()
        })
        && a.bmodules.len() == b.bmodules.len()
        && a.bmodules.iter().zip(&b.bmodules).all(|(x, y)| {
            x.name == y.name && x.over == y.over && x.bmodule.action() == y.bmodule.action()
        })
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let mut parser = Parser {
        field: None,
        out: InstanceFile {
            field: Field::Rational,
            hopfs: Vec::new(),
            algebras: Vec::new(),
            modules: Vec::new(),
            bmodules: Vec::new(),
        },
        pending: None,
    };
    for (idx, raw) in text.lines().enumerate() {
        parser.consume_line(idx + 1, raw)?;
    }
    parser.finish()
}

/// Tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

struct TableLine {
    keyword: &'static str,
    indices: Vec<usize>,
    value: Scalar,
    line: usize,
}

enum Pending {
    Hopf {
        name: String,
        dim: usize,
        lines: Vec<TableLine>,
    },
    Algebra {
        name: String,
        over: String,
        dim: usize,
        lines: Vec<TableLine>,
    },
    Module {
        name: String,
        over: String,
        dim: usize,
        lines: Vec<TableLine>,
    },
    BModule {
        name: String,
        over: String,
        dim: usize,
        lines: Vec<TableLine>,
    },
}

struct Parser {
    field: Option<Field>,
    out: InstanceFile,
    pending: Option<Pending>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax { line, column, message: message.into() }
}

impl Parser {
    fn consume_line(&mut self, lineno: usize, raw: &str) -> Result<(), InstanceError> {
        let toks = tokens(raw);
        let Some(&(kcol, keyword)) = toks.first() else { return Ok(()) };
        match keyword {
            "field" => self.field_line(lineno, &toks),
            "hopf" | "algebra" | "module" | "bmodule" => {
                if self.field.is_none() {
                    return Err(syntax(lineno, kcol, "a field declaration must come first"));
                }
                self.finalize_pending()?;
                self.block_header(lineno, keyword, &toks)
            }
            "mult" | "comult" | "counit" | "antipode" | "coaction" | "action" => {
                self.table_line(lineno, keyword, &toks)
            }
            other => Err(syntax(lineno, kcol, format!("unknown directive '{other}'"))),
        }
    }

    fn field_line(&mut self, lineno: usize, toks: &[(usize, &str)]) -> Result<(), InstanceError> {
        if self.field.is_some() {
            return Err(syntax(lineno, toks[0].0, "duplicate field declaration"));
        }
        let parsed = match toks[1..] {
            [(_, "Q")] => Field::Rational,
            [(_, "F"), (pcol, p)] => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| syntax(lineno, pcol, format!("invalid prime '{p}'")))?;
                let f = Field::Prime(p);
                if !f.is_valid() {
                    return Err(syntax(lineno, pcol, format!("{p} is not prime")));
                }
                f
            }
            _ => {
                return Err(syntax(
                    lineno,
                    toks[0].0,
                    "expected 'field Q' or 'field F <p>'",
                ))
            }
        };
        self.field = Some(parsed);
        self.out.field = parsed;
        Ok(())
    }

    fn block_header(
        &mut self,
        lineno: usize,
        keyword: &str,
        toks: &[(usize, &str)],
    ) -> Result<(), InstanceError> {
        let expect = |idx: usize, what: &str| -> Result<(usize, String), InstanceError> {
            toks.get(idx)
                .map(|&(c, t)| (c, t.to_string()))
                .ok_or_else(|| syntax(lineno, toks[0].0, format!("missing {what}")))
        };
        let (_, name) = expect(1, "block name")?;
        let parse_dim = |idx: usize| -> Result<usize, InstanceError> {
            let (kwc, kw) = expect(idx, "'dim'")?;
            if kw != "dim" {
                return Err(syntax(lineno, kwc, format!("expected 'dim', found '{kw}'")));
            }
            let (dc, d) = expect(idx + 1, "dimension")?;
            let dim: usize = d
                .parse()
                .map_err(|_| syntax(lineno, dc, format!("invalid dimension '{d}'")))?;
            if dim == 0 {
                return Err(syntax(lineno, dc, "dimension must be at least 1"));
            }
            Ok(dim)
        };
        let parse_over = |idx: usize| -> Result<String, InstanceError> {
            let (kwc, kw) = expect(idx, "'over'")?;
            if kw != "over" {
                return Err(syntax(lineno, kwc, format!("expected 'over', found '{kw}'")));
            }
            Ok(expect(idx + 1, "referenced block name")?.1)
        };
        self.pending = Some(match keyword {
            "hopf" => {
                if self.out.hopf(&name).is_some() {
                    return Err(InstanceError::Semantic(format!("duplicate hopf '{name}'")));
                }
                Pending::Hopf { name, dim: parse_dim(2)?, lines: Vec::new() }
            }
            "algebra" => {
                if !self.out.algebras.is_empty() {
                    return Err(InstanceError::Semantic(
                        "only one comodule algebra block is allowed".into(),
                    ));
                }
                let over = parse_over(2)?;
                Pending::Algebra { name, over, dim: parse_dim(4)?, lines: Vec::new() }
            }
            "module" => {
                let over = parse_over(2)?;
                if self.out.module(&name).is_some() {
                    return Err(InstanceError::Semantic(format!("duplicate module '{name}'")));
                }
                Pending::Module { name, over, dim: parse_dim(4)?, lines: Vec::new() }
            }
            "bmodule" => {
                let over = parse_over(2)?;
                if self.out.bmodule(&name).is_some() {
                    return Err(InstanceError::Semantic(format!("duplicate bmodule '{name}'")));
                }
                Pending::BModule { name, over, dim: parse_dim(4)?, lines: Vec::new() }
            }
            _ => unreachable!("caller matched the keyword"),
        });
        Ok(())
    }

    fn table_line(
        &mut self,
        lineno: usize,
        keyword: &str,
        toks: &[(usize, &str)],
    ) -> Result<(), InstanceError> {
        let field = self
            .field
            .ok_or_else(|| syntax(lineno, toks[0].0, "a field declaration must come first"))?;
        let allowed: &[&str] = match &self.pending {
            None => {
                return Err(syntax(
                    lineno,
                    toks[0].0,
                    format!("'{keyword}' outside of any block"),
                ))
            }
            Some(Pending::Hopf { .. }) => &["mult", "comult", "counit", "antipode"],
            Some(Pending::Algebra { .. }) => &["mult", "coaction"],
            Some(Pending::Module { .. }) => &["action", "coaction"],
            Some(Pending::BModule { .. }) => &["action"],
        };
        if !allowed.contains(&keyword) {
            return Err(syntax(
                lineno,
                toks[0].0,
                format!("'{keyword}' is not valid in this block"),
            ));
        }
        let arity = match keyword {
            "counit" => 1,
            "antipode" => 2,
            _ => 3,
        };
        if toks.len() != arity + 2 {
            return Err(syntax(
                lineno,
                toks[0].0,
                format!("'{keyword}' takes {arity} indices and a value"),
            ));
        }
        let mut indices = Vec::with_capacity(arity);
        for &(c, t) in &toks[1..=arity] {
            let i: usize =
                t.parse().map_err(|_| syntax(lineno, c, format!("invalid index '{t}'")))?;
            if i == 0 {
                return Err(syntax(lineno, c, "indices are 1-based"));
            }
            indices.push(i);
        }
        let (vc, vt) = toks[arity + 1];
        let value =
            Scalar::parse(field, vt).map_err(|e| syntax(lineno, vc, e))?;
        let lines = match self.pending.as_mut().expect("checked above") {
            Pending::Hopf { lines, .. }
            | Pending::Algebra { lines, .. }
            | Pending::Module { lines, .. }
            | Pending::BModule { lines, .. } => lines,
        };
        let keyword: &'static str = match keyword {
            "mult" => "mult",
            "comult" => "comult",
            "counit" => "counit",
            "antipode" => "antipode",
            "coaction" => "coaction",
            _ => "action",
        };
        lines.push(TableLine { keyword, indices, value, line: lineno });
        Ok(())
    }

    fn finalize_pending(&mut self) -> Result<(), InstanceError> {
        let Some(pending) = self.pending.take() else { return Ok(()) };
        let field = self.field.expect("blocks require a field");
        match pending {
            Pending::Hopf { name, dim, lines } => {
                let mut mult = vec![field.zero(); dim * dim * dim];
                let mut comult = Matrix::zero(dim * dim, dim, field);
                let mut counit = Matrix::zero(1, dim, field);
                let mut antipode = Matrix::zero(dim, dim, field);
                let mut seen = HashSet::new();
                for l in &lines {
                    check_bounds(l, &[dim, dim, dim])?;
                    check_duplicate(&mut seen, l)?;
                    match l.keyword {
                        "mult" => {
                            let (i, j, k) = three(l);
                            mult[(i * dim + j) * dim + k] = l.value.clone();
                        }
                        "comult" => {
                            let (i, j, k) = three(l);
                            comult.set(j * dim + k, i, l.value.clone());
                        }
                        "counit" => counit.set(0, l.indices[0] - 1, l.value.clone()),
                        "antipode" => {
                            antipode.set(l.indices[1] - 1, l.indices[0] - 1, l.value.clone())
                        }
                        _ => unreachable!(),
                    }
                }
                let unit = FinAlgebra::infer_unit(field, dim, &mult).ok_or_else(|| {
                    InstanceError::Invalid {
                        object: format!("hopf {name}"),
                        diagnostics: vec![Diagnostic::new(
                            "unit",
                            "no two-sided identity element in the multiplication table",
                        )],
                    }
                })?;
                let hopf =
                    validate_hopf(HopfData { field, dim, mult, unit, comult, counit, antipode })
                        .map_err(|diagnostics| InstanceError::Invalid {
                            object: format!("hopf {name}"),
                            diagnostics,
                        })?;
                self.out.hopfs.push(NamedHopf { name, hopf: Arc::new(hopf) });
            }
            Pending::Algebra { name, over, dim, lines } => {
                let hopf = self
                    .out
                    .hopf(&over)
                    .ok_or_else(|| {
                        InstanceError::Semantic(format!("unknown Hopf algebra '{over}'"))
                    })?
                    .hopf
                    .clone();
                let dh = hopf.dim();
                let mut mult = vec![field.zero(); dim * dim * dim];
                let mut coaction = Matrix::zero(dim * dh, dim, field);
                let mut seen = HashSet::new();
                for l in &lines {
                    check_bounds(l, &[dim, dim, if l.keyword == "mult" { dim } else { dh }])?;
                    check_duplicate(&mut seen, l)?;
                    let (i, j, k) = three(l);
                    match l.keyword {
                        "mult" => mult[(i * dim + j) * dim + k] = l.value.clone(),
                        "coaction" => coaction.set(j * dh + k, i, l.value.clone()),
                        _ => unreachable!(),
                    }
                }
                let unit = FinAlgebra::infer_unit(field, dim, &mult).ok_or_else(|| {
                    InstanceError::Invalid {
                        object: format!("algebra {name}"),
                        diagnostics: vec![Diagnostic::new(
                            "unit",
                            "no two-sided identity element in the multiplication table",
                        )],
                    }
                })?;
                let algebra = FinAlgebra::new(field, dim, mult, unit);
                let algebra = ComoduleAlgebra::new(algebra, hopf, coaction).map_err(
                    |diagnostics| InstanceError::Invalid {
                        object: format!("algebra {name}"),
                        diagnostics,
                    },
                )?;
                self.out.algebras.push(NamedAlgebra { name, over, algebra: Arc::new(algebra) });
            }
            Pending::Module { name, over, dim, lines } => {
                let base = self
                    .out
                    .algebras
                    .iter()
                    .find(|a| a.name == over)
                    .ok_or_else(|| InstanceError::Semantic(format!("unknown algebra '{over}'")))?
                    .algebra
                    .clone();
                let da = base.dim();
                let dh = base.hopf().dim();
                let mut action = vec![Matrix::zero(dim, dim, field); da];
                let mut coaction = Matrix::zero(dim * dh, dim, field);
                let mut seen = HashSet::new();
                for l in &lines {
                    let bounds =
                        if l.keyword == "action" { [da, dim, dim] } else { [dim, dim, dh] };
                    check_bounds(l, &bounds)?;
                    check_duplicate(&mut seen, l)?;
                    let (i, j, k) = three(l);
                    match l.keyword {
                        // e_i · m_j has coefficient c on m_k.
                        "action" => action[i].set(k, j, l.value.clone()),
                        "coaction" => coaction.set(j * dh + k, i, l.value.clone()),
                        _ => unreachable!(),
                    }
                }
                let module =
                    RelHopfModule::new(base, dim, action, coaction).map_err(|diagnostics| {
                        InstanceError::Invalid { object: format!("module {name}"), diagnostics }
                    })?;
                self.out.modules.push(NamedModule { name, over, module });
            }
            Pending::BModule { name, over, dim, lines } => {
                let base = self
                    .out
                    .algebras
                    .iter()
                    .find(|a| a.name == over)
                    .ok_or_else(|| InstanceError::Semantic(format!("unknown algebra '{over}'")))?
                    .algebra
                    .clone();
                let db = base.coinv_dim();
                let mut action = vec![Matrix::zero(dim, dim, field); db];
                let mut seen = HashSet::new();
                for l in &lines {
                    check_bounds(l, &[db, dim, dim])?;
                    check_duplicate(&mut seen, l)?;
                    let (u, j, k) = three(l);
                    action[u].set(k, j, l.value.clone());
                }
                let bmodule = BModule::new(base, dim, action).map_err(|diagnostics| {
                    InstanceError::Invalid { object: format!("bmodule {name}"), diagnostics }
                })?;
                self.out.bmodules.push(NamedBModule { name, over, bmodule });
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Result<InstanceFile, InstanceError> {
        if self.field.is_none() {
            return Err(syntax(1, 1, "missing field declaration"));
        }
        self.finalize_pending()?;
        Ok(self.out)
    }
}

fn three(l: &TableLine) -> (usize, usize, usize) {
    (l.indices[0] - 1, l.indices.get(1).map_or(0, |i| i - 1), l.indices.get(2).map_or(0, |i| i - 1))
}

fn check_bounds(l: &TableLine, bounds: &[usize]) -> Result<(), InstanceError> {
    for (pos, (&i, &b)) in l.indices.iter().zip(bounds).enumerate() {
        if i > b {
            return Err(InstanceError::Syntax {
                line: l.line,
                column: 1,
                message: format!(
                    "index {i} in position {} of '{}' exceeds the bound {b}",
                    pos + 1,
                    l.keyword
                ),
            });
        }
    }
    Ok(())
}

fn check_duplicate(
    seen: &mut HashSet<(&'static str, Vec<usize>)>,
    l: &TableLine,
) -> Result<(), InstanceError> {
    if !seen.insert((l.keyword, l.indices.clone())) {
        return Err(InstanceError::Syntax {
            line: l.line,
            column: 1,
            message: format!("duplicate '{}' entry for these indices", l.keyword),
        });
    }
    Ok(())
}

/// Serializes an instance in canonical form: one line per nonzero entry,
/// in ascending index order. Parsing the result reproduces the instance.
pub fn serialize_instance(inst: &InstanceFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field {}", inst.field);
    for h in &inst.hopfs {
        let d = h.hopf.dim();
        let _ = writeln!(s, "hopf {} dim {}", h.name, d);
        let alg = h.hopf.algebra();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    push_entry(&mut s, "mult", &[i, j, k], alg.mult_coeff(i, j, k));
                }
            }
        }
        let comult = h.hopf.comult();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    push_entry(&mut s, "comult", &[i, j, k], comult.get(j * d + k, i));
                }
            }
        }
        for i in 0..d {
            push_entry(&mut s, "counit", &[i], h.hopf.coalgebra().counit_of(i));
        }
        let antipode = h.hopf.antipode();
        for i in 0..d {
            for j in 0..d {
                push_entry(&mut s, "antipode", &[i, j], antipode.get(j, i));
            }
        }
    }
    for a in &inst.algebras {
        let d = a.algebra.dim();
        let dh = a.algebra.hopf().dim();
        let _ = writeln!(s, "algebra {} over {} dim {}", a.name, a.over, d);
        let alg = a.algebra.algebra();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    push_entry(&mut s, "mult", &[i, j, k], alg.mult_coeff(i, j, k));
                }
            }
        }
        let rho = a.algebra.coaction();
        for i in 0..d {
            for j in 0..d {
                for k in 0..dh {
                    push_entry(&mut s, "coaction", &[i, j, k], rho.get(j * dh + k, i));
                }
            }
        }
    }
    for m in &inst.modules {
        let dim = m.module.dim();
        let da = m.module.over().dim();
        let dh = m.module.hopf().dim();
        let _ = writeln!(s, "module {} over {} dim {}", m.name, m.over, dim);
        for i in 0..da {
            let op = m.module.action_matrix(i);
            for j in 0..dim {
                for k in 0..dim {
                    push_entry(&mut s, "action", &[i, j, k], op.get(k, j));
                }
            }
        }
        let rho = m.module.coaction();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dh {
                    push_entry(&mut s, "coaction", &[i, j, k], rho.get(j * dh + k, i));
                }
            }
        }
    }
    for p in &inst.bmodules {
        let dim = p.bmodule.dim();
        let _ = writeln!(s, "bmodule {} over {} dim {}", p.name, p.over, dim);
        for (u, op) in p.bmodule.action().iter().enumerate() {
            for j in 0..dim {
                for k in 0..dim {
                    push_entry(&mut s, "action", &[u, j, k], op.get(k, j));
                }
            }
        }
    }
    s
}

fn push_entry(s: &mut String, keyword: &str, indices: &[usize], value: &Scalar) {
    if value.is_zero() {
        return;
    }
    let _ = write!(s, "{keyword}");
    for i in indices {
        let _ = write!(s, " {}", i + 1);
    }
    let _ = writeln!(s, " {}", value.canonical_string());
}

/// The canonical instance form of a shipped fixture: the Hopf algebra is
/// named H, the comodule algebra A, and the modules keep their names.
pub fn fixture_instance(f: &Fixture) -> InstanceFile {
    let mut inst = InstanceFile {
        field: f.hopf.field(),
        hopfs: vec![NamedHopf { name: "H".into(), hopf: f.hopf.clone() }],
        algebras: Vec::new(),
        modules: Vec::new(),
        bmodules: Vec::new(),
    };
    if let Some(a) = &f.algebra {
        inst.algebras.push(NamedAlgebra { name: "A".into(), over: "H".into(), algebra: a.clone() });
        for (name, m) in &f.modules {
            inst.modules.push(NamedModule {
                name: (*name).into(),
                over: "A".into(),
                module: m.clone(),
            });
        }
        for (name, p) in &f.bmodules {
            inst.bmodules.push(NamedBModule {
                name: (*name).into(),
                over: "A".into(),
                bmodule: p.clone(),
            });
        }
    }
    inst
}
