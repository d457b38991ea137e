use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    /// Position in the alphabet `g0, g0⁻¹, g1, g1⁻¹, ...`.
    pub fn rank(&self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn inv(&self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Freely reduced word, read left to right as the product `l1 · l2 · ...`
/// (so `l1 ∘ l2 ∘ ...` as maps).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: Vec<Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// From signed generator indices: `k` for `g_{k-1}`, `-k` for its inverse.
    pub fn from_signed(s: &[i64]) -> Self {
        Word::new(
            s.iter()
                .map(|&x| {
                    assert!(x != 0, "generator indices start at 1");
                    Letter::new(x.unsigned_abs() as usize - 1, x < 0)
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Appends without reduction; callers guarantee reducedness.
    pub(crate) fn pushed(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inv).collect())
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Signed encoding matching [`Word::from_signed`].
    pub fn to_signed(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|l| {
                let k = l.generator as i64 + 1;
                if l.inverse { -k } else { k }
            })
            .collect()
    }

    /// Formats with the given generator names, e.g. `S T^-1 T^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = names.get(l.generator).cloned().unwrap_or_else(|| format!("g{}", l.generator));
                if l.inverse { format!("{name}^-1") } else { name }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}
