use serde::Serialize;

use super::affine::ToralAffine;
use crate::ratgeom::poly::{charpoly, cyclotomic, divide_exact, unit_circle_roots, IntPoly};
use crate::ratgeom::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynClass {
    pub hyperbolic: bool,
    pub unipotent: bool,
    pub finite_order: Option<u64>,
    pub has_unit_modulus_eigenvalue: bool,
    #[serde(serialize_with = "ser_poly")]
    pub charpoly: IntPoly,
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Euler's totient, by trial division.
fn totient(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Classification of the linear part.
pub fn classify(g: &ToralAffine) -> DynClass {
    let a = g.matrix();
    let n = a.rows();
    let cp = charpoly(a).expect("square");
    let unit = unit_circle_roots(&cp).expect("characteristic polynomial is monic");
    let shifted = a.sub(&IntMatrix::identity(n));
    let unipotent = shifted.pow(n as u64).is_zero();
    DynClass {
        hyperbolic: !unit,
        unipotent,
        finite_order: finite_order(a, &cp),
        has_unit_modulus_eigenvalue: unit,
        charpoly: cp,
    }
}

/// Order of `a` if finite. Finite order forces the characteristic
/// polynomial to be a product of cyclotomic factors `Φ_m` with `φ(m) ≤ n`;
/// the lcm of those `m` bounds the order.
fn finite_order(a: &IntMatrix, cp: &IntPoly) -> Option<u64> {
    let n = a.rows() as u64;
    let mut rest = cp.clone();
    let mut bound = 1u64;
    // φ(m) >= sqrt(m / 2), so φ(m) <= n implies m <= 2 n^2
    for m in 1..=(2 * n * n).max(2) {
        if totient(m) > n {
            continue;
        }
        let phi = cyclotomic(m);
        while let Some(q) = divide_exact(&rest, &phi) {
            rest = q;
            bound = num_integer::lcm(bound, m);
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest.degree() != Some(0) || !a.pow(bound).is_identity() {
        return None;
    }
    let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound % d == 0).collect();
    divisors.sort_unstable();
    divisors.into_iter().find(|&d| a.pow(d).is_identity())
}
