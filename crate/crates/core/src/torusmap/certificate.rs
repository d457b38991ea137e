//! Ball-scale checks of the hypotheses "fixed sets of nontrivial elements
//! are small" and "all nontrivial elements are hyperbolic" for a finitely
//! generated group of toral automorphisms.

use serde::Serialize;

use super::affine::ToralAffine;
use super::classify::classify;
use super::fixed::fixed_set;
use crate::error::{Error, Result};
use crate::wordsearch::ball::{enumerate_ball, BallOptions, GroupElement};
use crate::wordsearch::Word;

impl GroupElement for ToralAffine {
    type Fingerprint = ToralAffine;

    fn identity_like(&self) -> Self {
        ToralAffine::identity(self.dim())
    }

    fn product(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.compose(other))
    }

    fn inverse(&self) -> Result<Self> {
        Ok(ToralAffine::inverse(self))
    }

    fn fingerprint(&self) -> Result<Self::Fingerprint> {
        Ok(self.clone())
    }

    fn same_element(&self, other: &Self) -> Result<bool> {
        Ok(self == other)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementCertificate {
    pub word: Word,
    pub element: String,
    pub fixed_dim: Option<usize>,
    pub fixed_empty: bool,
    pub fixed_small: bool,
    pub hyperbolic: bool,
    pub unipotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub radius: usize,
    pub element_count: usize,
    pub nonidentity_count: usize,
    pub elements: Vec<ElementCertificate>,
    /// Every nonidentity element in the ball has a small or empty fixed set.
    pub small_fixed_sets_hold: bool,
    /// Nonidentity elements with an empty fixed set (not classified as small).
    pub empty_fixed_sets: usize,
    /// Words of elements with a nonempty fixed set of codimension < 2.
    pub small_failures: Vec<Word>,
    /// Every nonidentity element in the ball is hyperbolic.
    pub all_hyperbolic: bool,
    pub hyperbolic_failures: Vec<Word>,
    pub scope_note: String,
}

pub fn group_certificate(gens: &[ToralAffine], radius: usize) -> Result<CertificateReport> {
    group_certificate_with(gens, radius, &BallOptions::default())
}

pub fn group_certificate_with(
    gens: &[ToralAffine],
    radius: usize,
    opts: &BallOptions,
) -> Result<CertificateReport> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    let ball = enumerate_ball(gens, radius, opts)?;
    let mut elements = Vec::new();
    let mut small_failures = Vec::new();
    let mut hyperbolic_failures = Vec::new();
    let mut empty_fixed_sets = 0;
    for (g, w) in ball.elements.iter().zip(&ball.words) {
        if g.is_identity() {
            continue;
        }
        let fs = fixed_set(g);
        let dc = classify(g);
        if fs.is_empty {
            empty_fixed_sets += 1;
        } else if !fs.is_small {
            small_failures.push(w.clone());
        }
        if !dc.hyperbolic {
            hyperbolic_failures.push(w.clone());
        }
        elements.push(ElementCertificate {
            word: w.clone(),
            element: g.to_string(),
            fixed_dim: (!fs.is_empty).then_some(fs.dim),
            fixed_empty: fs.is_empty,
            fixed_small: fs.is_small,
            hyperbolic: dc.hyperbolic,
            unipotent: dc.unipotent,
        });
    }
    Ok(CertificateReport {
        radius,
        element_count: ball.len(),
        nonidentity_count: elements.len(),
        small_fixed_sets_hold: small_failures.is_empty(),
        empty_fixed_sets,
        small_failures,
        all_hyperbolic: hyperbolic_failures.is_empty(),
        hyperbolic_failures,
        elements,
        scope_note: format!(
            "checked on the word ball of radius {radius} only; this is evidence for the \
             whole group, not a proof"
        ),
    })
}

/// Whether `candidate` normalizes the group generated by `gens`, checked on
/// generators: each conjugate `c g c⁻¹` must lie in the word ball of the
/// given radius.
pub fn normalizes_on_ball(candidate: &ToralAffine, gens: &[ToralAffine], radius: usize) -> Result<bool> {
    let ball = enumerate_ball(gens, radius, &BallOptions::default())?;
    let inv = candidate.inverse();
    Ok(gens.iter().all(|g| {
        let conj = candidate.compose(g).compose(&inv);
        ball.elements.contains(&conj)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_fails_smallness() {
        let r = group_certificate(&[ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap()], 2).unwrap();
        assert_eq!(r.nonidentity_count, 4);
        assert!(!r.small_fixed_sets_hold);
        assert!(!r.all_hyperbolic);
        assert_eq!(r.small_failures.len(), 4);
    }

    #[test]
    fn identity_is_vacuous() {
        let r = group_certificate(&[ToralAffine::identity(2)], 5).unwrap();
        assert_eq!(r.element_count, 1);
        assert!(r.small_fixed_sets_hold && r.all_hyperbolic);
        assert!(r.scope_note.contains("not a proof"));
        assert!(group_certificate(&[], 2).is_err());
    }

    #[test]
    fn normalizer_candidates() {
        let a = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        let swap = ToralAffine::from_rows(&[[0, 1], [1, 0]]).unwrap();
        // swap A swap = [[1,1],[1,2]], which is not a power of A
        assert!(!normalizes_on_ball(&swap, &[a.clone()], 3).unwrap());
        let minus = ToralAffine::from_rows(&[[-1, 0], [0, -1]]).unwrap();
        assert!(normalizes_on_ball(&minus, &[a.clone()], 1).unwrap());
        assert!(normalizes_on_ball(&a, &[a.clone()], 1).unwrap());
    }
}
