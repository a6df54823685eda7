//! Finitely presented groups: words, coset enumeration and low-index
//! subgroup search.
//!
//! Cosets are numbered from 1 in the public API; coset 1 is always the
//! subgroup itself. Tables are kept *standardized*: cosets appear in the
//! order they are first met when the table is read row by row, with columns
//! ordered `g₀, g₀⁻¹, g₁, g₁⁻¹, …`.

mod coset;
mod lattice;
mod lowindex;

use std::fmt;

use serde::Deserialize;
use thiserror::Error;

pub use coset::{coset_enumerate, CosetTable, DEFAULT_COSET_FACTOR};
pub use lattice::SublatticeBasis;
pub use lowindex::low_index_subgroups;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("coset enumeration exceeded {0} cosets")]
    WorkspaceExceeded(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relator {index} uses generator {generator} but only {count} are declared")]
    UndeclaredGenerator { index: usize, generator: usize, count: usize },
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// One generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Column of this letter in a coset table.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_column(col: usize) -> Self {
        Letter { generator: col / 2, inverse: col % 2 == 1 }
    }
}

/// A word in the generators. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// `g^k` for any integer `k`.
    pub fn power(g: usize, k: i64) -> Self {
        let l = Letter::new(g, k < 0);
        Word(vec![l; k.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self · w · self⁻¹`, freely reduced.
    pub fn conjugate(&self, w: &Word) -> Word {
        free_reduce(&self.concat(w).concat(&self.inverse()))
    }

    pub fn columns(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.column()).collect()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Cancels adjacent letter/inverse pairs.
    pub fn free_reduce(&self) -> Word {
        free_reduce(self)
    }
}

/// Freely reduced form of `w`.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// A group given by generators and relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    format: u32,
    name: String,
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Presentation {
    pub fn new(name: &str, generators: &[&str], relators: &[&str]) -> Result<Self, FpError> {
        let mut p = Presentation {
            name: name.to_string(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
        };
        for r in relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        p.validate()?;
        Ok(p)
    }

    /// Reads the TOML presentation format shipped in `data/groups`.
    pub fn from_toml(text: &str) -> Result<Self, FpError> {
        let file: PresentationFile =
            toml::from_str(text).map_err(|e| FpError::Malformed(e.to_string()))?;
        if file.format != 1 {
            return Err(FpError::Malformed(format!("unsupported format {}", file.format)));
        }
        let gens: Vec<&str> = file.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = file.relators.iter().map(String::as_str).collect();
        Presentation::new(&file.name, &gens, &rels)
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Every relator may only use declared generators.
    pub fn validate(&self) -> Result<(), FpError> {
        let count = self.generators.len();
        for (index, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= count {
                    return Err(FpError::UndeclaredGenerator { index, generator: g, count });
                }
            }
        }
        Ok(())
    }

    /// Parses whitespace-separated generator names, `'` marking an inverse.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix('\'') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| FpError::UnknownGenerator(tok.to_string()))?;
            letters.push(Letter::new(g, inverse));
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        WordDisplay { names: &self.generators, word: w }.to_string()
    }

    /// Adds relators `g^k` for each listed generator.
    pub fn with_power_relators(&self, gens: &[usize], k: i64) -> Presentation {
        let mut p = self.clone();
        for &g in gens {
            p.relators.push(Word::power(g, k));
        }
        p
    }
}

/// Displays a word with generator names, e.g. `u u v' r`.
pub struct WordDisplay<'a> {
    pub names: &'a [String],
    pub word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[l.generator])?;
            if l.inverse {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmm() -> Presentation {
        Presentation::new("cmm", &["u", "v", "r", "s"], &["r r", "u v u' v'"]).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let p = cmm();
        let w = |s: &str| p.parse_word(s).unwrap();
        assert_eq!(free_reduce(&w("r r'")), Word::identity());
        assert_eq!(free_reduce(&w("u v v' u")), w("u u"));
        assert_eq!(free_reduce(&w("u v")), w("u v"));
        assert_eq!(free_reduce(&w("u v' r r' v u'")), Word::identity());
    }

    #[test]
    fn word_text_round_trip() {
        let p = cmm();
        let w = p.parse_word("u u v' r").unwrap();
        assert_eq!(p.format_word(&w), "u u v' r");
        assert_eq!(p.format_word(&w.inverse()), "r' v u' u'");
        assert!(matches!(p.parse_word("u x"), Err(FpError::UnknownGenerator(_))));
    }

    #[test]
    fn undeclared_generator_rejected() {
        let p = Presentation {
            name: "bad".into(),
            generators: vec!["a".into()],
            relators: vec![Word::generator(1)],
        };
        assert!(matches!(p.validate(), Err(FpError::UndeclaredGenerator { .. })));
    }

    #[test]
    fn power_words() {
        assert_eq!(Word::power(0, 3).len(), 3);
        assert_eq!(Word::power(0, -2), Word::power(0, 2).inverse());
        assert!(Word::power(1, 0).is_empty());
    }
}
