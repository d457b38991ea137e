//! Ball-bounded certificates that every piece map lies in a given group.

use std::collections::HashMap;

use serde::Serialize;

use super::map::PWMap;
use crate::error::{Error, Result};
use crate::torusmap::ToralAffine;
use crate::wordsearch::ball::{enumerate_ball, BallOptions};
use crate::wordsearch::Word;

#[derive(Clone, Debug, Serialize)]
pub struct InnerCertificate {
    pub radius: usize,
    /// All piece maps were found in the ball.
    pub success: bool,
    /// Word per piece, `None` where the piece map was not found.
    pub words: Vec<Option<Word>>,
    pub uncovered: Vec<usize>,
}

/// Looks up each piece map `(A_i, b_i)` in the word ball of radius `radius`
/// of the group generated by `gens`. A miss is not a proof of non-membership.
pub fn inner_certificate(f: &PWMap, gens: &[ToralAffine], radius: usize) -> Result<InnerCertificate> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    if let Some(g) = gens.iter().find(|g| g.dim() != f.dim()) {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let ball = enumerate_ball(gens, radius, &BallOptions::default())?;
    let lookup: HashMap<&ToralAffine, &Word> = ball.elements.iter().zip(&ball.words).collect();
    let words: Vec<Option<Word>> = f.pieces().iter().map(|p| lookup.get(&p.map).map(|w| (*w).clone())).collect();
    let uncovered: Vec<usize> = words.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(i, _)| i).collect();
    Ok(InnerCertificate { radius, success: uncovered.is_empty(), words, uncovered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordsearch::ball::evaluate;

    fn st() -> Vec<ToralAffine> {
        vec![
            ToralAffine::from_rows(&[[0, -1], [1, 0]]).unwrap(),
            ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap(),
        ]
    }

    #[test]
    fn adams_in_sl2() {
        let f = PWMap::adams();
        let c = inner_certificate(&f, &st(), 4).unwrap();
        assert!(c.success);
        assert!(c.words[0].as_ref().unwrap().is_empty());
        let w = c.words[1].as_ref().unwrap();
        assert_eq!(evaluate(&st(), w).unwrap(), f.pieces()[1].map);
        // a longer but valid expression for the same matrix
        let alt = evaluate(&st(), &Word::from_signed(&[1, -2, -2, -1])).unwrap();
        assert_eq!(alt, f.pieces()[1].map);
    }

    #[test]
    fn misses_are_reported() {
        let g = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        let c = inner_certificate(&PWMap::global(g), &[ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap()], 3).unwrap();
        assert!(!c.success);
        assert_eq!(c.uncovered, vec![0]);
        let id = inner_certificate(&PWMap::identity(2), &st(), 0).unwrap();
        assert!(id.success);
        assert!(inner_certificate(&PWMap::identity(2), &[], 2).is_err());
    }
}
