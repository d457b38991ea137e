//! Piecewise-Möbius homeomorphisms of `R ∪ {∞}`.
//!
//! Breakpoints are stored in ascending order with `∞` last; arc `i` runs
//! from breakpoint `i` to breakpoint `i + 1` (cyclically, through `∞` for the
//! last arc when `∞` is not a breakpoint).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::moebius::{CirclePoint, Moebius};
use crate::error::{Error, Result};
use crate::ratgeom::{int, Rat};

/// Default cap on jet comparison.
pub const K_MAX: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PWMoebius {
    breakpoints: Vec<CirclePoint>,
    arcs: Vec<Moebius>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityFailure {
    pub breakpoint: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleReport {
    pub valid: bool,
    pub arcs: usize,
    pub orientation: Orientation,
    pub continuity_failures: Vec<ContinuityFailure>,
    pub bijective: bool,
    /// Every arc matrix lies in `SL_2(Z[1/2])` up to scale.
    pub dyadic: bool,
}

impl fmt::Display for CircleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            write!(f, "valid circle homeomorphism, {} arcs", self.arcs)?;
            if self.orientation == Orientation::Reversing {
                write!(f, " (orientation reversing)")?;
            }
            return Ok(());
        }
        writeln!(f, "invalid circle map, {} arcs", self.arcs)?;
        for c in &self.continuity_failures {
            writeln!(f, "  discontinuous at {}: {} vs {}", c.breakpoint, c.left, c.right)?;
        }
        if self.orientation == Orientation::Mixed {
            writeln!(f, "  arcs have mixed orientation")?;
        }
        if !self.bijective {
            writeln!(f, "  image arcs do not tile the circle once")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    /// Values differ.
    Discontinuous,
    /// Jets agree up to this order and differ at the next.
    Order(usize),
    Infinite,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Discontinuous => write!(f, "discontinuous"),
            Smoothness::Order(k) => write!(f, "{k}"),
            Smoothness::Infinite => write!(f, "infinite"),
        }
    }
}

impl PWMoebius {
    pub fn new(breakpoints: Vec<CirclePoint>, arcs: Vec<Moebius>) -> Result<Self> {
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Malformed("breakpoints must be strictly increasing with inf last".into()));
        }
        if arcs.len() != breakpoints.len().max(1) {
            return Err(Error::Malformed(format!(
                "{} breakpoints need {} arcs, found {}",
                breakpoints.len(),
                breakpoints.len().max(1),
                arcs.len()
            )));
        }
        Ok(Self { breakpoints, arcs })
    }

    pub fn identity() -> Self {
        Self { breakpoints: Vec::new(), arcs: vec![Moebius::identity()] }
    }

    pub fn global(m: Moebius) -> Self {
        Self { breakpoints: Vec::new(), arcs: vec![m] }
    }

    /// Identity for `x < 0`, `2x/(2-x)` on `[0,1]`, `6 - 4/x` on `[1,2]`
    /// and `x + 2` beyond `2`.
    pub fn example() -> Self {
        let bp = vec![int(0), int(1), int(2)].into_iter().map(CirclePoint::Finite).chain([CirclePoint::Infinity]).collect();
        let m = |a, b, c, d| Moebius::from_i64(a, b, c, d).expect("invertible");
        Self::new(bp, vec![m(2, 0, -1, 2), m(6, -4, 1, 0), m(1, 2, 0, 1), Moebius::identity()]).expect("well-formed")
    }

    pub fn breakpoints(&self) -> &[CirclePoint] {
        &self.breakpoints
    }

    pub fn arcs(&self) -> &[Moebius] {
        &self.arcs
    }

    /// Arc containing a point that is not a breakpoint.
    fn arc_of(&self, x: &CirclePoint) -> usize {
        let k = self.breakpoints.len();
        if k <= 1 {
            return 0;
        }
        let has_inf = self.breakpoints[k - 1] == CirclePoint::Infinity;
        if let CirclePoint::Finite(_) = x {
            for i in 0..k - 1 {
                if self.breakpoints[i] < *x && *x < self.breakpoints[i + 1] {
                    return i;
                }
            }
            if has_inf && *x < self.breakpoints[0] {
                return k - 1;
            }
        }
        k - 1
    }

    /// `f(x)`; at a breakpoint the arc starting there is used.
    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        let i = self.breakpoints.iter().position(|b| b == x).unwrap_or_else(|| self.arc_of(x));
        self.arcs[i].apply(x)
    }

    /// A point strictly inside each arc.
    fn samples(breakpoints: &[CirclePoint]) -> Vec<CirclePoint> {
        let k = breakpoints.len();
        if k == 0 {
            return vec![CirclePoint::Finite(Rat::zero())];
        }
        (0..k)
            .map(|i| {
                let (a, b) = (&breakpoints[i], &breakpoints[(i + 1) % k]);
                CirclePoint::Finite(match (a, b) {
                    (CirclePoint::Finite(a), CirclePoint::Finite(b)) if a < b => (a + b) / int(2),
                    (CirclePoint::Finite(a), _) => a + Rat::one(),
                    (CirclePoint::Infinity, CirclePoint::Finite(b)) => b - Rat::one(),
                    (CirclePoint::Infinity, CirclePoint::Infinity) => Rat::zero(),
                })
            })
            .collect()
    }

    pub fn validate(&self) -> CircleReport {
        let k = self.breakpoints.len();
        let mut continuity_failures = Vec::new();
        for i in 0..k {
            let p = &self.breakpoints[i];
            let left = self.arcs[(i + k - 1) % k].apply(p);
            let right = self.arcs[i].apply(p);
            if left != right {
                continuity_failures.push(ContinuityFailure {
                    breakpoint: p.to_string(),
                    left: left.to_string(),
                    right: right.to_string(),
                });
            }
        }
        let pos = self.arcs.iter().filter(|m| m.preserves_orientation()).count();
        let orientation = if pos == self.arcs.len() {
            Orientation::Preserving
        } else if pos == 0 {
            Orientation::Reversing
        } else {
            Orientation::Mixed
        };
        // image values must run once around the circle
        let v: Vec<CirclePoint> = self.breakpoints.iter().map(|p| self.apply(p)).collect();
        let bijective = match orientation {
            Orientation::Mixed => false,
            _ if k <= 1 => true,
            _ if k == 2 => v[0] != v[1],
            _ => {
                let breaks = (0..k)
                    .filter(|&i| {
                        let (a, b) = (&v[i], &v[(i + 1) % k]);
                        if orientation == Orientation::Preserving { b <= a } else { b >= a }
                    })
                    .count();
                breaks == 1
            }
        };
        CircleReport {
            valid: continuity_failures.is_empty() && orientation != Orientation::Mixed && bijective,
            arcs: self.arcs.len(),
            orientation,
            continuity_failures,
            bijective,
            dyadic: self.arcs.iter().all(Moebius::in_dyadic_sl2),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PWMoebius) -> PWMoebius {
        let ginv_points = self.breakpoints.iter().map(|p| other.preimage(p));
        let mut bp: Vec<CirclePoint> = other.breakpoints.iter().cloned().chain(ginv_points).collect();
        bp.sort();
        bp.dedup();
        let arcs = Self::samples(&bp)
            .iter()
            .map(|s| {
                let g = &other.arcs[other.arc_of(s)];
                let f = &self.arcs[self.arc_of(&g.apply(s))];
                f.compose(g)
            })
            .collect();
        Self { breakpoints: bp, arcs }.simplified()
    }

    fn preimage(&self, y: &CirclePoint) -> CirclePoint {
        self.inverse().apply(y)
    }

    pub fn inverse(&self) -> PWMoebius {
        let mut bp: Vec<CirclePoint> = self.breakpoints.iter().map(|p| self.apply(p)).collect();
        bp.sort();
        bp.dedup();
        let arcs = Self::samples(&bp)
            .iter()
            .map(|s| {
                (0..self.arcs.len())
                    .map(|i| self.arcs[i].inverse())
                    .enumerate()
                    .find(|(i, m)| {
                        let x = m.apply(s);
                        !self.breakpoints.contains(&x) && self.arc_of(&x) == *i
                    })
                    .map(|(_, m)| m)
                    .unwrap_or_else(|| self.arcs[0].inverse())
            })
            .collect();
        Self { breakpoints: bp, arcs }.simplified()
    }

    /// Removes breakpoints between arcs carrying the same map.
    pub fn simplified(&self) -> PWMoebius {
        let mut bp = self.breakpoints.clone();
        let mut arcs = self.arcs.clone();
        loop {
            let k = bp.len();
            if k == 0 {
                break;
            }
            match (0..k).find(|&i| arcs[(i + k - 1) % k] == arcs[i]) {
                Some(i) => {
                    bp.remove(i);
                    if k > 1 {
                        arcs.remove(i);
                    }
                }
                None => break,
            }
        }
        Self { breakpoints: bp, arcs }
    }

    pub fn is_identity(&self) -> bool {
        self.arcs.iter().all(Moebius::is_identity)
    }

    pub fn equals(&self, other: &PWMoebius) -> bool {
        self.simplified() == other.simplified()
    }

    /// Largest `k <= k_max` with equal `k`-jets of the two arcs meeting at
    /// `at`, computed in the charts `x` / `1/x` around `at` and its image.
    pub fn smoothness_order_with(&self, at: &CirclePoint, k_max: usize) -> Result<Smoothness> {
        let k = self.breakpoints.len();
        let i = self
            .breakpoints
            .iter()
            .position(|b| b == at)
            .ok_or_else(|| Error::NotBreakpoint(at.to_string()))?;
        let (left, right) = (&self.arcs[(i + k - 1) % k], &self.arcs[i]);
        if left == right {
            return Ok(Smoothness::Infinite);
        }
        let (vl, vr) = (left.apply(at), right.apply(at));
        if vl != vr {
            return Ok(Smoothness::Discontinuous);
        }
        let chart = |m: &Moebius| {
            let mut m = m.clone();
            if *at == CirclePoint::Infinity {
                m = m.compose(&Moebius::flip());
            }
            if vl == CirclePoint::Infinity {
                m = Moebius::flip().compose(&m);
            }
            m
        };
        let x = at.finite().cloned().unwrap_or_else(Rat::zero);
        let jl = chart(left).jet(&x, k_max)?;
        let jr = chart(right).jet(&x, k_max)?;
        let agree = jl.iter().zip(&jr).take_while(|(a, b)| a == b).count();
        Ok(Smoothness::Order(agree.saturating_sub(1)))
    }

    pub fn smoothness_order(&self, at: &CirclePoint) -> Result<Smoothness> {
        self.smoothness_order_with(at, K_MAX)
    }

    pub fn to_json(&self) -> CircleJson {
        CircleJson {
            breakpoints: self.breakpoints.iter().map(|p| p.to_string()).collect(),
            arcs: self.arcs.iter().map(|m| ArcJson { matrix: m.to_strings() }).collect(),
        }
    }

    pub fn from_json(j: &CircleJson) -> Result<Self> {
        let bp = j.breakpoints.iter().map(|s| CirclePoint::parse(s)).collect::<Result<Vec<_>>>()?;
        let arcs = j.arcs.iter().map(|a| Moebius::from_strings(&a.matrix)).collect::<Result<Vec<_>>>()?;
        Self::new(bp, arcs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

impl fmt::Display for PWMoebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.breakpoints.len();
        if k == 0 {
            return write!(f, "everywhere: {}", self.arcs[0]);
        }
        for i in 0..k {
            writeln!(f, "[{}, {}]: {}", self.breakpoints[i], self.breakpoints[(i + 1) % k], self.arcs[i])?;
        }
        Ok(())
    }
}

/// `{"breakpoints": [rat-string | "inf"], "arcs": [{"matrix": [[..],[..]]}]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CircleJson {
    pub breakpoints: Vec<String>,
    pub arcs: Vec<ArcJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArcJson {
    pub matrix: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: i64) -> CirclePoint {
        CirclePoint::Finite(int(n))
    }

    #[test]
    fn example_is_valid() {
        let f = PWMoebius::example();
        let r = f.validate();
        assert!(r.valid, "{r}");
        assert!(r.dyadic);
        assert_eq!(f.apply(&pt(1)), pt(2));
        assert_eq!(f.apply(&pt(-5)), pt(-5));
        assert_eq!(f.apply(&CirclePoint::Infinity), CirclePoint::Infinity);
        assert!(PWMoebius::identity().validate().valid);
    }

    #[test]
    fn broken_last_arc() {
        let f = PWMoebius::example();
        let mut arcs = f.arcs().to_vec();
        arcs[2] = Moebius::identity();
        let g = PWMoebius::new(f.breakpoints().to_vec(), arcs).unwrap();
        let r = g.validate();
        assert!(!r.valid);
        let c = &r.continuity_failures[0];
        assert_eq!((c.breakpoint.as_str(), c.left.as_str(), c.right.as_str()), ("2", "4", "2"));
    }

    #[test]
    fn smoothness() {
        let f = PWMoebius::example();
        for p in [pt(0), pt(1), pt(2), CirclePoint::Infinity] {
            assert_eq!(f.smoothness_order(&p).unwrap(), Smoothness::Order(1), "at {p}");
        }
        assert!(f.smoothness_order(&pt(5)).is_err());
        let m = Moebius::from_i64(1, 1, 0, 1).unwrap();
        let same = PWMoebius::new(vec![pt(0), pt(1)], vec![m.clone(), m]).unwrap();
        assert_eq!(same.smoothness_order(&pt(0)).unwrap(), Smoothness::Infinite);
    }

    #[test]
    fn group_laws() {
        let f = PWMoebius::example();
        let id = PWMoebius::identity();
        assert!(f.compose(&id).equals(&f));
        assert!(id.compose(&f).equals(&f));
        let inv = f.inverse();
        assert!(inv.validate().valid);
        assert!(f.compose(&inv).is_identity());
        assert!(inv.compose(&f).is_identity());
        let ff = f.compose(&f);
        assert!(ff.validate().valid);
        assert_eq!(ff.apply(&pt(1)), f.apply(&pt(2)));
    }

    #[test]
    fn translation_squared() {
        let t = PWMoebius::global(Moebius::from_i64(1, 2, 0, 1).unwrap());
        let tt = t.compose(&t);
        assert_eq!(tt.arcs(), &[Moebius::from_i64(1, 4, 0, 1).unwrap()]);
    }

    #[test]
    fn reversing_is_flagged() {
        let r = PWMoebius::global(Moebius::from_i64(-1, 0, 0, 1).unwrap()).validate();
        assert!(r.valid);
        assert_eq!(r.orientation, Orientation::Reversing);
        assert!(r.to_string().contains("reversing"));
    }

    #[test]
    fn json_roundtrip() {
        let f = PWMoebius::example();
        assert_eq!(PWMoebius::from_json_str(&f.to_json_string()).unwrap(), f);
        assert!(PWMoebius::from_json_str(r#"{"breakpoints":["1","0"],"arcs":[]}"#).is_err());
    }
}
