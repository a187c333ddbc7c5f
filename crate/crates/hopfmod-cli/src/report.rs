//! Certificate reports: what a command computed, with every witness
//! matrix spelled out in exact scalar notation, plus the canonical
//! serialized instance so a report is self-contained and replayable.
//!
//! Two on-disk forms carry identical content: a line-oriented text form
//! and a JSON form. Both are byte-deterministic for a given instance and
//! command line.

use std::fmt::Write as _;

use hopfmod::{Field, Matrix, Scalar};
use serde::{Deserialize, Serialize};

pub const REPORT_MAGIC: &str = "hopfmod-report 1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Echo of the invocation that produced the report.
    pub command: String,
    pub field: String,
    /// Canonical serialized instance the verdicts refer to.
    pub instance: String,
    pub items: Vec<ReportItem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    /// The object the item is about, e.g. "module M2".
    pub subject: String,
    /// What was checked, e.g. "validation" or "total-integral".
    pub kind: String,
    pub verdict: String,
    pub details: Vec<String>,
    pub witnesses: Vec<WitnessMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessMatrix {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    /// Row-major canonical scalar strings.
    pub entries: Vec<String>,
}

impl WitnessMatrix {
    pub fn from_matrix(name: &str, m: &Matrix) -> WitnessMatrix {
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                entries.push(m.get(r, c).canonical_string());
            }
        }
        WitnessMatrix { name: name.to_string(), rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn to_matrix(&self, field: Field) -> Result<Matrix, String> {
        if self.entries.len() != self.rows * self.cols {
            return Err(format!(
                "witness {}: {} entries for a {}×{} matrix",
                self.name,
                self.entries.len(),
                self.rows,
                self.cols
            ));
        }
        let mut m = Matrix::zero(self.rows, self.cols, field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let s = Scalar::parse(field, &self.entries[r * self.cols + c])
                    .map_err(|e| format!("witness {}: {e}", self.name))?;
                m.set(r, c, s);
            }
        }
        Ok(m)
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{REPORT_MAGIC}");
        let _ = writeln!(s, "command {}", self.command);
        let _ = writeln!(s, "field {}", self.field);
        let _ = writeln!(s, "instance-begin");
        s.push_str(&self.instance);
        if !self.instance.ends_with('\n') && !self.instance.is_empty() {
            s.push('\n');
        }
        let _ = writeln!(s, "instance-end");
        for item in &self.items {
            let _ = writeln!(s, "item-begin");
            let _ = writeln!(s, "subject {}", item.subject);
            let _ = writeln!(s, "kind {}", item.kind);
            let _ = writeln!(s, "verdict {}", item.verdict);
            for d in &item.details {
                let _ = writeln!(s, "detail {d}");
            }
            for w in &item.witnesses {
                let _ = writeln!(s, "witness {} {} {}", w.name, w.rows, w.cols);
                for r in 0..w.rows {
                    let _ = write!(s, "row");
                    for c in 0..w.cols {
                        let _ = write!(s, " {}", w.entries[r * w.cols + c]);
                    }
                    s.push('\n');
                }
            }
            let _ = writeln!(s, "item-end");
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Reads either on-disk form, deciding by the leading character.
    pub fn from_str(text: &str) -> Result<Report, String> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| format!("invalid JSON report: {e}"));
        }
        Self::from_text(text)
    }

    fn from_text(text: &str) -> Result<Report, String> {
        let mut lines = text.lines().enumerate();
        let (_, magic) = lines.next().ok_or("empty report")?;
        if magic != REPORT_MAGIC {
            return Err(format!("not a report file: expected '{REPORT_MAGIC}'"));
        }
        let mut command = None;
        let mut field = None;
        let mut instance = String::new();
        let mut items: Vec<ReportItem> = Vec::new();
        let mut in_instance = false;
        let mut current: Option<ReportItem> = None;
        let mut open_witness: Option<(usize, usize)> = None; // remaining rows, cols
        for (idx, line) in lines {
            let lineno = idx + 1;
            if in_instance {
                if line == "instance-end" {
                    in_instance = false;
                } else {
                    instance.push_str(line);
                    instance.push('\n');
                }
                continue;
            }
            if let Some((mut remaining, cols)) = open_witness.take() {
                let item = current.as_mut().expect("witness inside an item");
                let w = item.witnesses.last_mut().expect("witness under construction");
                let rest = line
                    .strip_prefix("row")
                    .ok_or_else(|| format!("line {lineno}: expected a witness row"))?;
                let cells: Vec<&str> = rest.split_whitespace().collect();
                if cells.len() != cols {
                    return Err(format!(
                        "line {lineno}: witness row has {} entries, expected {cols}",
                        cells.len()
                    ));
                }
                w.entries.extend(cells.iter().map(|c| c.to_string()));
                remaining -= 1;
                if remaining > 0 {
                    open_witness = Some((remaining, cols));
                }
                continue;
            }
            let (keyword, rest) = match line.split_once(' ') {
                Some((k, r)) => (k, r),
                None => (line, ""),
            };
            match keyword {
                "command" => command = Some(rest.to_string()),
                "field" => field = Some(rest.to_string()),
                "instance-begin" => in_instance = true,
                "item-begin" => {
                    if current.is_some() {
                        return Err(format!("line {lineno}: nested item"));
                    }
                    current = Some(ReportItem {
                        subject: String::new(),
                        kind: String::new(),
                        verdict: String::new(),
                        details: Vec::new(),
                        witnesses: Vec::new(),
                    });
                }
                "subject" | "kind" | "verdict" | "detail" | "witness" => {
                    let item = current
                        .as_mut()
                        .ok_or_else(|| format!("line {lineno}: '{keyword}' outside an item"))?;
                    match keyword {
                        "subject" => item.subject = rest.to_string(),
                        "kind" => item.kind = rest.to_string(),
                        "verdict" => item.verdict = rest.to_string(),
                        "detail" => item.details.push(rest.to_string()),
                        _ => {
                            let parts: Vec<&str> = rest.split_whitespace().collect();
                            if parts.len() != 3 {
                                return Err(format!(
                                    "line {lineno}: expected 'witness <name> <rows> <cols>'"
                                ));
                            }
                            let rows: usize = parts[1]
                                .parse()
                                .map_err(|_| format!("line {lineno}: invalid row count"))?;
                            let cols: usize = parts[2]
                                .parse()
                                .map_err(|_| format!("line {lineno}: invalid column count"))?;
                            item.witnesses.push(WitnessMatrix {
                                name: parts[0].to_string(),
                                rows,
                                cols,
                                entries: Vec::with_capacity(rows * cols),
                            });
                            if rows > 0 {
                                open_witness = Some((rows, cols));
                            }
                        }
                    }
                }
                "item-end" => {
                    let item = current
                        .take()
                        .ok_or_else(|| format!("line {lineno}: 'item-end' outside an item"))?;
                    items.push(item);
                }
                "" => {}
                other => return Err(format!("line {lineno}: unknown report line '{other}'")),
            }
        }
        if current.is_some() || open_witness.is_some() || in_instance {
            return Err("truncated report".into());
        }
        Ok(Report {
            command: command.ok_or("report is missing the command echo")?,
            field: field.ok_or("report is missing the field line")?,
            instance,
            items,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopfmod::Field;

    fn sample() -> Report {
        let m = Matrix::from_fn(2, 3, Field::Rational, |r, c| {
            Scalar::from_integer(Field::Rational, (r * 3 + c) as i64 - 2)
        });
        Report {
            command: "h-simple a4.hm".into(),
            field: "Q".into(),
            instance: "field Q\nhopf H dim 1\nmult 1 1 1 1\ncomult 1 1 1 1\ncounit 1 1\nantipode 1 1 1\n".into(),
            items: vec![ReportItem {
                subject: "algebra A".into(),
                kind: "h-simplicity".into(),
                verdict: "not-simple".into(),
                details: vec!["witness dimension 2".into()],
                witnesses: vec![WitnessMatrix::from_matrix("h-ideal-basis", &m)],
            }],
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let r = sample();
        let text = r.to_text();
        let parsed = Report::from_str(&text).unwrap();
        assert_eq!(r, parsed);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let json = r.to_json();
        let parsed = Report::from_str(&json).unwrap();
        assert_eq!(r, parsed);
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn witness_matrices_round_trip() {
        let m = Matrix::from_fn(3, 2, Field::Prime(7), |r, c| {
            Scalar::from_integer(Field::Prime(7), (r + 2 * c) as i64)
        });
        let w = WitnessMatrix::from_matrix("t", &m);
        assert_eq!(w.to_matrix(Field::Prime(7)).unwrap(), m);
    }

    #[test]
    fn truncated_reports_are_rejected() {
        let r = sample();
        let text = r.to_text();
        let cut = &text[..text.len() - 20];
        assert!(Report::from_str(cut).is_err());
    }
}
