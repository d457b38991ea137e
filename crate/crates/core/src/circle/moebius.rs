//! Points of `R ∪ {∞}` and projective maps acting on them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratgeom::rat::{fmt_rat, parse_rat};
use crate::ratgeom::{big, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CirclePoint {
    Finite(Rat),
    Infinity,
}

impl CirclePoint {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(CirclePoint::Infinity),
            t => Ok(CirclePoint::Finite(parse_rat(t)?)),
        }
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            CirclePoint::Finite(x) => Some(x),
            CirclePoint::Infinity => None,
        }
    }
}

impl From<Rat> for CirclePoint {
    fn from(x: Rat) -> Self {
        CirclePoint::Finite(x)
    }
}

/// Linear order on the cut circle: finite values ascending, then `∞`.
impl Ord for CirclePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CirclePoint::Finite(a), CirclePoint::Finite(b)) => a.cmp(b),
            (CirclePoint::Finite(_), CirclePoint::Infinity) => Ordering::Less,
            (CirclePoint::Infinity, CirclePoint::Finite(_)) => Ordering::Greater,
            (CirclePoint::Infinity, CirclePoint::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for CirclePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Finite(x) => write!(f, "{}", fmt_rat(x)),
            CirclePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `x ↦ (a x + b) / (c x + d)`, stored as a primitive integer matrix whose
/// first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Moebius {
    m: [BigInt; 4],
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl Moebius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let entries = [a, b, c, d];
        let denom = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut m: [BigInt; 4] = entries.map(|x| (x * big(&denom)).to_integer());
        let g = m.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::Singular);
        }
        let neg = m.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in m.iter_mut() {
            *x = &*x / &g;
            if neg {
                *x = -&*x;
            }
        }
        let out = Self { m };
        if out.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(out)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()), Rat::from_integer(c.into()), Rat::from_integer(d.into()))
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(Error::Malformed("Möbius matrix must be 2x2".into()));
        }
        Self::new(parse_rat(&rows[0][0])?, parse_rat(&rows[0][1])?, parse_rat(&rows[1][0])?, parse_rat(&rows[1][1])?)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        vec![
            vec![self.m[0].to_string(), self.m[1].to_string()],
            vec![self.m[2].to_string(), self.m[3].to_string()],
        ]
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).expect("invertible")
    }

    /// `y ↦ 1/y`, the chart change at `∞`.
    pub fn flip() -> Self {
        Self::from_i64(0, 1, 1, 0).expect("invertible")
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    pub fn preserves_orientation(&self) -> bool {
        self.det().is_positive()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Matrix product: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::new(big(&(a * e + b * g)), big(&(a * f + b * h)), big(&(c * e + d * g)), big(&(c * f + d * h)))
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Moebius {
        let [a, b, c, d] = &self.m;
        Self::new(big(d), big(&-b), big(&-c), big(a)).expect("invertible")
    }

    /// The point sent to `∞`.
    pub fn pole(&self) -> CirclePoint {
        let [_, _, c, d] = &self.m;
        if c.is_zero() {
            CirclePoint::Infinity
        } else {
            CirclePoint::Finite(Rat::new(-d, c.clone()))
        }
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        let [a, b, c, d] = &self.m;
        match x {
            CirclePoint::Finite(x) => {
                let den = big(c) * x + big(d);
                if den.is_zero() {
                    CirclePoint::Infinity
                } else {
                    CirclePoint::Finite((big(a) * x + big(b)) / den)
                }
            }
            CirclePoint::Infinity => {
                if c.is_zero() {
                    CirclePoint::Infinity
                } else {
                    CirclePoint::Finite(Rat::new(a.clone(), c.clone()))
                }
            }
        }
    }

    /// Entries in `Z[1/2]` after scaling to determinant ±1: the primitive
    /// matrix has `|det| = 4^k`.
    pub fn in_dyadic_sl2(&self) -> bool {
        let mut d = self.det().abs();
        while (&d % 4u32).is_zero() {
            d /= 4u32;
        }
        d.is_one()
    }

    /// `f(x), f'(x), ..., f^(k)(x)` in the affine chart, using
    /// `f^(j) = (-1)^(j-1) j! c^(j-1) det / (c x + d)^(j+1)`.
    pub fn jet(&self, x: &Rat, k: usize) -> Result<Vec<Rat>> {
        let [a, b, c, d] = &self.m;
        let (c, det) = (big(c), big(&self.det()));
        let den = &c * x + big(d);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let mut out = vec![(big(a) * x + big(b)) / &den];
        let mut fact = Rat::one();
        for j in 1..=k {
            fact *= Rat::from_integer(BigInt::from(j));
            let sign = if j % 2 == 1 { Rat::one() } else { -Rat::one() };
            let cpow = num_traits::pow(c.clone(), j - 1);
            out.push(sign * &fact * cpow * &det / num_traits::pow(den.clone(), j + 1));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{int, rat};

    #[test]
    fn canonical_scale() {
        let m = Moebius::new(rat(-1, 2), int(0), int(0), rat(-1, 2)).unwrap();
        assert!(m.is_identity());
        assert_eq!(Moebius::from_i64(-2, 4, 0, 2).unwrap().to_string(), "[[1,-2],[0,-1]]");
        assert!(Moebius::from_i64(1, 2, 2, 4).is_err());
    }

    #[test]
    fn action_through_infinity() {
        let m = Moebius::from_i64(2, 0, -1, 2).unwrap();
        assert_eq!(m.apply(&CirclePoint::Finite(int(2))), CirclePoint::Infinity);
        assert_eq!(m.apply(&CirclePoint::Infinity), CirclePoint::Finite(int(-2)));
        assert_eq!(m.pole(), CirclePoint::Finite(int(2)));
        let t = Moebius::from_i64(1, 2, 0, 1).unwrap();
        assert_eq!(t.apply(&CirclePoint::Infinity), CirclePoint::Infinity);
        assert_eq!(m.compose(&m.inverse()), Moebius::identity());
    }

    #[test]
    fn jets() {
        let m = Moebius::from_i64(2, 0, -1, 2).unwrap();
        assert_eq!(m.jet(&int(0), 2).unwrap(), vec![int(0), int(1), int(1)]);
        assert_eq!(Moebius::identity().jet(&rat(3, 7), 3).unwrap(), vec![rat(3, 7), int(1), int(0), int(0)]);
        assert_eq!(Moebius::from_i64(1, 2, 0, 1).unwrap().jet(&int(3), 2).unwrap(), vec![int(5), int(1), int(0)]);
        assert!(matches!(m.jet(&int(2), 1), Err(Error::Pole)));
    }

    #[test]
    fn dyadic() {
        assert!(Moebius::from_i64(6, -4, 1, 0).unwrap().in_dyadic_sl2());
        assert!(Moebius::from_i64(2, 0, -1, 2).unwrap().in_dyadic_sl2());
        assert!(!Moebius::from_i64(2, 0, 0, 1).unwrap().in_dyadic_sl2());
        assert!(!Moebius::from_i64(3, 0, 0, 1).unwrap().in_dyadic_sl2());
    }
}
