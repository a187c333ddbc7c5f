//! Named validation diagnostics.
//!
//! Validators never panic on bad input data: they return a list of
//! diagnostics, each naming the violated law and the basis indices that
//! witness the violation, so a failing instance file can be repaired line by
//! line.

use std::fmt;

/// One violated law, e.g. `associativity at (i,j,k)=(2,3,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Stable name of the law that failed (part of the report contract).
    pub law: String,
    /// Human-readable detail, usually the offending basis indices.
    pub detail: String,
}

impl Diagnostic {
    pub fn new(law: impl Into<String>, detail: impl Into<String>) -> Diagnostic {
        Diagnostic { law: law.into(), detail: detail.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.detail.is_empty() {
            write!(f, "{}", self.law)
        } else {
            write!(f, "{}: {}", self.law, self.detail)
        }
    }
}

/// Accumulator used by the validators.
#[derive(Debug, Default)]
pub struct DiagnosticSink {
    items: Vec<Diagnostic>,
}

impl DiagnosticSink {
    pub fn new() -> DiagnosticSink {
        DiagnosticSink::default()
    }

    pub fn report(&mut self, law: impl Into<String>, detail: impl Into<String>) {
        self.items.push(Diagnostic::new(law, detail));
    }

    pub fn is_clean(&self) -> bool {
        self.items.is_empty()
    }

    pub fn into_result<T>(self, value: T) -> Result<T, Vec<Diagnostic>> {
        if self.items.is_empty() {
            Ok(value)
        } else {
            Err(self.items)
        }
    }

    pub fn into_diagnostics(self) -> Vec<Diagnostic> {
        self.items
    }
}
