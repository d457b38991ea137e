//! Breadth-first enumeration of word balls in a finitely generated group.
//!
//! Spheres are expanded in shortlex order of their canonical words, so the
//! first word found for an element is its shortlex-least representative.
//! Products are computed in parallel; registration is serial and in a fixed
//! order, so the output does not depend on scheduling.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Group elements that can be explored by word search.
pub trait GroupElement: Clone + Send + Sync {
    type Fingerprint: Hash + Eq + Clone + Send + Sync;

    /// Identity of the same group (same dimension).
    fn identity_like(&self) -> Self;
    /// `self · other`, i.e. `self ∘ other` as maps.
    fn product(&self, other: &Self) -> Result<Self>;
    fn inverse(&self) -> Result<Self>;
    /// Must agree on equal elements.
    fn fingerprint(&self) -> Result<Self::Fingerprint>;
    fn same_element(&self, other: &Self) -> Result<bool>;
    /// Representation size (piece count); checked against the budget.
    fn size(&self) -> usize {
        1
    }
}

#[derive(Clone, Debug)]
pub struct BallOptions {
    pub parallel: bool,
    pub piece_budget: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        Self { parallel: true, piece_budget: 10_000 }
    }
}

/// Two distinct reduced words found to represent the same element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    /// The newly generated word.
    pub lhs: Word,
    /// Canonical word of the element it coincided with.
    pub rhs: Word,
    /// Shortlex-least of the reduced `lhs·rhs⁻¹` and `rhs·lhs⁻¹`.
    pub relator: Word,
}

impl Relation {
    fn new(lhs: Word, rhs: Word) -> Self {
        let a = lhs.concat(&rhs.inverse());
        let b = rhs.concat(&lhs.inverse());
        let relator = if b.shortlex_cmp(&a).is_lt() { b } else { a };
        Self { lhs, rhs, relator }
    }
}

#[derive(Clone, Debug)]
pub struct Ball<E> {
    pub radius: usize,
    /// Elements in discovery order; index 0 is the identity.
    pub elements: Vec<E>,
    /// Canonical (shortlex-least) word per element.
    pub words: Vec<Word>,
    /// `sphere_sizes[k]` elements have word length exactly `k`.
    pub sphere_sizes: Vec<usize>,
    pub relations: Vec<Relation>,
    /// Pairs of distinct elements sharing a fingerprint, by element index.
    pub fingerprint_collisions: Vec<(usize, usize)>,
}

impl<E> Ball<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cumulative element counts `|ball(k)|`.
    pub fn cumulative_counts(&self) -> Vec<usize> {
        self.sphere_sizes
            .iter()
            .scan(0, |acc, &s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }
}

pub fn enumerate_ball<E: GroupElement>(gens: &[E], radius: usize, opts: &BallOptions) -> Result<Ball<E>> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let mut letters: Vec<(Letter, E)> = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.iter().enumerate() {
        letters.push((Letter::new(i, false), g.clone()));
        letters.push((Letter::new(i, true), g.inverse()?));
    }

    let identity = first.identity_like();
    let mut registry: HashMap<E::Fingerprint, Vec<usize>> = HashMap::new();
    registry.entry(identity.fingerprint()?).or_default().push(0);
    let mut ball = Ball {
        radius,
        elements: vec![identity],
        words: vec![Word::empty()],
        sphere_sizes: vec![1],
        relations: Vec::new(),
        fingerprint_collisions: Vec::new(),
    };
    let mut frontier: Vec<usize> = vec![0];

    for _ in 1..=radius {
        let alphabet = &letters;
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&e| {
                let last = ball.words[e].last();
                (0..alphabet.len())
                    .filter(move |&li| last != Some(alphabet[li].0.inv()))
                    .map(move |li| (e, li))
            })
            .collect();
        let work = |&(e, li): &(usize, usize)| -> Result<(E, E::Fingerprint)> {
            let p = ball.elements[e].product(&letters[li].1)?;
            if p.size() > opts.piece_budget {
                return Err(Error::PieceBudget { budget: opts.piece_budget, found: p.size() });
            }
            let fp = p.fingerprint()?;
            Ok((p, fp))
        };
        let products: Vec<Result<(E, E::Fingerprint)>> = if opts.parallel {
            jobs.par_iter().map(work).collect()
        } else {
            jobs.iter().map(work).collect()
        };

        let mut next = Vec::new();
        for (&(e, li), res) in jobs.iter().zip(products) {
            let (p, fp) = res?;
            let word = ball.words[e].pushed(letters[li].0);
            let mut found = None;
            if let Some(cands) = registry.get(&fp) {
                for &c in cands {
                    if ball.elements[c].same_element(&p)? {
                        found = Some(c);
                        break;
                    }
                }
                if found.is_none() {
                    for &c in cands {
                        let pair = (c, ball.elements.len());
                        log::warn!("fingerprint collision between {} and {}", ball.words[c], word);
                        ball.fingerprint_collisions.push(pair);
                    }
                }
            }
            match found {
                Some(c) => ball.relations.push(Relation::new(word, ball.words[c].clone())),
                None => {
                    let idx = ball.elements.len();
                    registry.entry(fp).or_default().push(idx);
                    ball.elements.push(p);
                    ball.words.push(word);
                    next.push(idx);
                }
            }
        }
        ball.sphere_sizes.push(next.len());
        frontier = next;
    }
    Ok(ball)
}

/// Evaluates a word as a product of generators.
pub fn evaluate<E: GroupElement>(gens: &[E], word: &Word) -> Result<E> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let mut acc = first.identity_like();
    for l in word.letters() {
        let g = gens.get(l.generator).ok_or_else(|| Error::Malformed("generator index out of range".into()))?;
        let g = if l.inverse { g.inverse()? } else { g.clone() };
        acc = acc.product(&g)?;
    }
    Ok(acc)
}
