use std::fmt;

use serde::Serialize;
use skh_core::diagram::SingularDiagram;
use skh_core::homology::BettiTable;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputEcho {
    pub name: String,
    pub pd: String,
    pub n_plus: usize,
    pub n_minus: usize,
    pub double_points: usize,
}

impl InputEcho {
    pub fn new(name: impl Into<String>, d: &SingularDiagram) -> Self {
        let c = d.counts();
        Self {
            name: name.into(),
            pd: d.to_pd(),
            n_plus: c.n_plus,
            n_minus: c.n_minus,
            double_points: c.r,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BettiEntry {
    pub i: i32,
    pub j: i32,
    pub dim: usize,
}

pub fn betti_entries(t: &BettiTable) -> Vec<BettiEntry> {
    t.entries().map(|((i, j), dim)| BettiEntry { i, j, dim }).collect()
}

/// What disagreed, and where.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bidegree: Option<(i32, i32)>,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Self {
            name: name.into(),
            pass: false,
            witness: Some(witness),
        }
    }

    /// Passes iff `left == right`; the witness shows both sides.
    pub fn equal(name: impl Into<String>, left: impl fmt::Display, right: impl fmt::Display) -> Self {
        let (l, r) = (left.to_string(), right.to_string());
        if l == r {
            Self::pass(name)
        } else {
            Self::fail(
                name,
                Witness {
                    bidegree: None,
                    left: l,
                    right: r,
                },
            )
        }
    }

    pub fn tables(name: impl Into<String>, left: &BettiTable, right: &BettiTable) -> Self {
        match left.first_difference(right) {
            None => Self::pass(name),
            Some((bd, a, b)) => Self::fail(
                name,
                Witness {
                    bidegree: Some(bd),
                    left: a.to_string(),
                    right: b.to_string(),
                },
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Polynomial {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiEntry>>,
    #[serde(skip)]
    pub table: Option<BettiTable>,
    pub polynomials: Vec<Polynomial>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            passed: true,
            ..Default::default()
        }
    }

    pub fn set_table(&mut self, t: BettiTable) {
        self.betti = Some(betti_entries(&t));
        self.table = Some(t);
    }

    pub fn polynomial(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.polynomials.push(Polynomial {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, c: Check) {
        self.passed &= c.pass;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for input in &self.inputs {
            writeln!(
                f,
                "input {}: n+={} n-={} r={}  {}",
                input.name, input.n_plus, input.n_minus, input.double_points, input.pd
            )?;
        }
        if let Some(t) = &self.table {
            writeln!(f, "Kh(D; F2):")?;
            write!(f, "{t}")?;
        }
        for p in &self.polynomials {
            writeln!(f, "{}: {}", p.name, p.value)?;
        }
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS {}", c.name)?,
                Some(w) => match w.bidegree {
                    Some((i, j)) => writeln!(f, "FAIL {} at (i,j)=({i},{j}): {} vs {}", c.name, w.left, w.right)?,
                    None => writeln!(f, "FAIL {}: {} vs {}", c.name, w.left, w.right)?,
                },
            }
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.pass).count();
            writeln!(f, "{} checks, {failed} failed", self.checks.len())?;
        }
        if let Some(ms) = self.wall_time_ms {
            writeln!(f, "wall time: {ms} ms")?;
        }
        Ok(())
    }
}
