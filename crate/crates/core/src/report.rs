use std::fmt;

/// One failed law together with the identifiers that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.witness.join(", "))
    }
}

/// Outcome of a validator. `ok()` holds exactly when no violation was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push<I, S>(&mut self, law: &str, witness: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            law: law.to_string(),
            witness: witness.into_iter().map(Into::into).collect(),
        });
    }

    /// Records `law` failing unless `holds`.
    pub fn check<I, S>(&mut self, holds: bool, law: &str, witness: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if !holds {
            self.push(law, witness);
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Prefixes every law name, used when nesting reports.
    pub fn scoped(mut self, scope: &str) -> Self {
        for v in &mut self.violations {
            v.law = format!("{scope}/{}", v.law);
        }
        self
    }

    pub fn has(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn has_witness(&self, law: &str, witness: &[&str]) -> bool {
        self.violations.iter().any(|v| {
            v.law == law
                && v.witness
                    .iter()
                    .map(String::as_str)
                    .eq(witness.iter().copied())
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
