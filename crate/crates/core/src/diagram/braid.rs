//! Closures of singular braids, a convenient source of planar PD codes.
//!
//! Strands run upward. `s{i}` is the positive generator σᵢ (the strand
//! entering bottom-left passes over), `S{i}` its inverse, and `t{i}` the
//! singular generator τᵢ. Generators are 1-based.

use std::collections::HashMap;
use std::fmt;

use super::{Crossing, CrossingKind, SingularDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidGenerator {
    pub index: usize,
    pub kind: CrossingKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    generators: Vec<BraidGenerator>,
}

impl BraidWord {
    pub fn new(strands: usize, generators: Vec<BraidGenerator>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.index == 0 || g.index >= strands) {
            return Err(Error::Domain(format!(
                "generator index {} invalid on {strands} strands",
                g.index
            )));
        }
        Ok(Self { strands, generators })
    }

    /// Parses e.g. `"s1 S2 t1"`; the strand count is one more than the
    /// largest index unless a leading `n=<k>` token raises it.
    pub fn parse(text: &str) -> Result<Self> {
        let mut strands = 0;
        let mut generators = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            if let Some(n) = tok.strip_prefix("n=") {
                strands = n.parse().map_err(|_| syntax(pos, tok))?;
                continue;
            }
            let mut chars = tok.chars();
            let kind = match chars.next() {
                Some('s') => CrossingKind::Positive,
                Some('S') => CrossingKind::Negative,
                Some('t') => CrossingKind::Singular,
                _ => return Err(syntax(pos, tok)),
            };
            let index: usize = chars.as_str().parse().map_err(|_| syntax(pos, tok))?;
            generators.push(BraidGenerator { index, kind });
        }
        let needed = generators.iter().map(|g| g.index + 1).max().unwrap_or(1);
        Self::new(strands.max(needed), generators)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn generators(&self) -> &[BraidGenerator] {
        &self.generators
    }

    /// PD code of the braid closure. Edges are numbered by first appearance;
    /// strands that never cross become free loops.
    pub fn closure(&self) -> Result<SingularDiagram> {
        let n = self.strands;
        let mut current: Vec<u32> = (1..=n as u32).collect();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let (l, r) = (g.index - 1, g.index);
            let (l_in, r_in) = (current[l], current[r]);
            let (l_out, r_out) = (next, next + 1);
            next += 2;
            current[l] = l_out;
            current[r] = r_out;
            let edges = match g.kind {
                CrossingKind::Positive | CrossingKind::Singular => [r_in, r_out, l_out, l_in],
                CrossingKind::Negative => [l_in, r_in, r_out, l_out],
            };
            crossings.push(Crossing::new(g.kind, edges));
        }
        let closing: HashMap<u32, u32> = current
            .iter()
            .enumerate()
            .map(|(k, &top)| (top, k as u32 + 1))
            .collect();
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        for x in &mut crossings {
            for e in &mut x.edges {
                let closed = closing.get(e).copied().unwrap_or(*e);
                let fresh = renumber.len() as u32 + 1;
                *e = *renumber.entry(closed).or_insert(fresh);
            }
        }
        let free_loops = (0..n).filter(|&k| current[k] == k as u32 + 1).count();
        SingularDiagram::new(crossings, free_loops)
    }
}

fn syntax(pos: usize, tok: &str) -> Error {
    Error::Syntax {
        line: 1,
        column: pos + 1,
        message: format!("bad braid generator '{tok}'"),
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for g in &self.generators {
            let c = match g.kind {
                CrossingKind::Positive => 's',
                CrossingKind::Negative => 'S',
                CrossingKind::Singular => 't',
            };
            write!(f, " {c}{}", g.index)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Counts;

    #[test]
    fn trefoil_closure() {
        let d = BraidWord::parse("s1 s1 s1").unwrap().closure().unwrap();
        assert_eq!(d.counts(), Counts { n_plus: 3, n_minus: 0, r: 0 });
        assert_eq!(d.edges().len(), 6);
    }

    #[test]
    fn untouched_strands_are_free_loops() {
        let d = BraidWord::parse("n=3 s1").unwrap().closure().unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.crossing_count(), 1);
        let o = BraidWord::parse("n=1").unwrap().closure().unwrap();
        assert_eq!(o, SingularDiagram::unknot());
    }

    #[test]
    fn stabilized_double_point_is_fi() {
        let d = BraidWord::parse("s1 s1 s1 t2").unwrap().closure().unwrap();
        assert!(d.is_fi_double_point(3));
        let d = BraidWord::parse("t1 t1").unwrap().closure().unwrap();
        assert!(!d.has_fi_double_point());
    }

    #[test]
    fn rejects_bad_words() {
        assert!(BraidWord::parse("s0").is_err());
        assert!(BraidWord::parse("x1").is_err());
        assert!(BraidWord::new(2, vec![BraidGenerator { index: 2, kind: CrossingKind::Positive }]).is_err());
    }

    #[test]
    fn display_round_trip() {
        let w = BraidWord::parse("s1 S2 t1").unwrap();
        assert_eq!(w.to_string(), "n=3 s1 S2 t1");
        assert_eq!(BraidWord::parse(&w.to_string()).unwrap(), w);
    }
}
