//! The fixture manifest: one entry per line,
//! `name  file  [pair=other move=RI|RII|RIII|S1|S2|S3]`, `#` comments.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Move {
    RI,
    RII,
    RIII,
    S1,
    S2,
    S3,
}

impl Move {
    pub const ALL: [Move; 6] = [Move::RI, Move::RII, Move::RIII, Move::S1, Move::S2, Move::S3];
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Move {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Move::ALL.into_iter().find(|m| m.to_string() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub file: String,
    pub pair: Option<(String, Move)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<Entry>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("manifest line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

impl Manifest {
    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// `(entry, partner, move)` for every declared pair.
    pub fn pairs(&self) -> impl Iterator<Item = (&Entry, &Entry, Move)> {
        self.entries.iter().filter_map(|e| {
            let (other, m) = e.pair.as_ref()?;
            Some((e, self.get(other)?, *m))
        })
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let mut entries: Vec<Entry> = Vec::new();
    let mut refs = Vec::new();
    let mut names = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| ManifestError { line, message };
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 {
            return Err(err("expected 'name file'".into()));
        }
        let (name, file) = (fields[0], fields[1]);
        if name.contains('=') || file.contains('=') {
            return Err(err("name and file must precede key=value fields".into()));
        }
        let mut pair = None;
        let mut mv = None;
        for field in &fields[2..] {
            match field.split_once('=') {
                Some(("pair", v)) if !v.is_empty() && pair.is_none() => pair = Some(v.to_string()),
                Some(("move", v)) if mv.is_none() => {
                    mv = Some(v.parse::<Move>().map_err(|_| err(format!("unknown move '{v}'")))?)
                }
                _ => return Err(err(format!("unexpected field '{field}'"))),
            }
        }
        let pair = match (pair, mv) {
            (Some(p), Some(m)) => Some((p, m)),
            (None, None) => None,
            _ => return Err(err("'pair' and 'move' must appear together".into())),
        };
        if !names.insert(name.to_string()) {
            return Err(err(format!("duplicate name '{name}'")));
        }
        if let Some((p, _)) = &pair {
            if p == name {
                return Err(err("an entry cannot pair with itself".into()));
            }
            refs.push((line, p.clone()));
        }
        entries.push(Entry {
            name: name.to_string(),
            file: file.to_string(),
            pair,
        });
    }
    if let Some((line, p)) = refs.into_iter().find(|(_, p)| !names.contains(p)) {
        return Err(ManifestError {
            line,
            message: format!("pair refers to unknown entry '{p}'"),
        });
    }
    Ok(Manifest { entries })
}
