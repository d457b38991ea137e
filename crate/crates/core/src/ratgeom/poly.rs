//! Integer polynomials, characteristic polynomials and an exact test for
//! roots on the complex unit circle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, QMatrix};
use super::rat::{big, int, Rat};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + big(c))
    }

    fn to_q(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(big).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational polynomial used for Euclidean algorithms; ascending coefficients.
#[derive(Clone, PartialEq, Debug)]
pub(crate) struct QPoly(Vec<Rat>);

impl QPoly {
    pub(crate) fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub(crate) fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    fn monic(&self) -> QPoly {
        let l = self.lead().clone();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }

    fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.deg();
        if r.len() < d.0.len() {
            return (QPoly(vec![]), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        let lead = d.lead().clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        (QPoly::new(q), QPoly::new(r))
    }

    fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() { a } else { a.monic() }
    }

    fn square_free(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.clone();
        }
        self.divrem(&g).0
    }
}

/// `det(xI - A)` by the Faddeev-LeVerrier recurrence, exact over Q.
pub fn charpoly(a: &IntMatrix) -> Result<IntPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let aq = a.to_q();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = aq.mul(&m)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let am = aq.mul(&m)?;
        let tr = (0..n).fold(Rat::zero(), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -tr / int(k as i64);
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Integrity("non-integral characteristic coefficient".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(ints))
}

/// Number of sign changes in the Sturm sequence of `seq` evaluated at `x`.
fn sign_changes(seq: &[QPoly], x: &Rat) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let k = seq.len();
        if seq[k - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[k - 2].divrem(&seq[k - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

/// Distinct real roots of `p` in the half-open interval `(a, b]`.
pub(crate) fn sturm_count(p: &QPoly, a: &Rat, b: &Rat) -> usize {
    let sf = p.square_free();
    if sf.deg() == 0 {
        return 0;
    }
    let seq = sturm_sequence(&sf);
    sign_changes(&seq, a).saturating_sub(sign_changes(&seq, b))
}

/// Distinct real roots of an integer polynomial in the closed interval `[a, b]`.
pub fn real_roots_in(p: &IntPoly, a: &Rat, b: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = p.to_q();
    let at_a = usize::from(q.eval(a).is_zero());
    Ok(sturm_count(&q, a, b) + at_a)
}

/// True iff `p` has a complex root of absolute value exactly one.
///
/// Roots `±1` are detected by evaluation. Any other unit-modulus root `z`
/// has `1/z = conj(z)` as a root too, so it is a root of
/// `g = gcd(p, reversal(p))`. `g` is palindromic and `g(x) = x^m h(x + 1/x)`;
/// `|z| = 1` exactly when `y = z + 1/z` is real and in `[-2, 2]`, which
/// is counted with a Sturm sequence.
pub fn unit_circle_roots(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lowest = p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let p = QPoly::new(p.coeffs()[lowest..].iter().map(big).collect());
    if p.eval(&int(1)).is_zero() || p.eval(&int(-1)).is_zero() {
        return Ok(true);
    }
    if p.deg() == 0 {
        return Ok(false);
    }
    let rev = QPoly::new(p.0.iter().rev().cloned().collect());
    let g = p.gcd(&rev);
    if g.deg() == 0 {
        return Ok(false);
    }
    let h = palindromic_to_trace(&g)?;
    let two = int(2);
    let minus_two = int(-2);
    if h.eval(&two).is_zero() || h.eval(&minus_two).is_zero() {
        return Ok(true);
    }
    Ok(sturm_count(&h, &minus_two, &two) > 0)
}

/// For palindromic `g` of degree `2m`, the polynomial `h` of degree `m` with
/// `x^{-m} g(x) = h(x + 1/x)`.
fn palindromic_to_trace(g: &QPoly) -> Result<QPoly> {
    let d = g.deg();
    let c = &g.0;
    let palindromic = (0..=d).all(|k| c[k] == c[d - k]);
    if d % 2 == 1 || !palindromic {
        return Err(Error::Integrity("gcd(p, reversal(p)) is not palindromic".into()));
    }
    let m = d / 2;
    // x^j + x^{-j} = D_j(y): D_0 = 2, D_1 = y, D_{j+1} = y D_j - D_{j-1}
    let mut prev = QPoly::new(vec![int(2)]);
    let mut cur = QPoly::new(vec![int(0), int(1)]);
    let mut h = vec![c[m].clone()];
    h.resize(m + 1, Rat::zero());
    for j in 1..=m {
        for (k, coef) in cur.0.iter().enumerate() {
            h[k] += &c[m + j] * coef;
        }
        let mut shifted = vec![Rat::zero()];
        shifted.extend(cur.0.iter().cloned());
        let mut next = shifted;
        for (k, coef) in prev.0.iter().enumerate() {
            next[k] -= coef;
        }
        prev = cur;
        cur = QPoly::new(next);
    }
    Ok(QPoly::new(h))
}

/// The m-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1);
    // x^m - 1 divided by every Phi_d, d | m, d < m
    let mut num = vec![Rat::zero(); m as usize + 1];
    num[0] = int(-1);
    num[m as usize] = int(1);
    let mut p = QPoly::new(num);
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclotomic(d).to_q();
            p = p.divrem(&phi).0;
        }
    }
    IntPoly::new(p.0.iter().map(|c| c.to_integer()).collect())
}

/// Exact division test, returning the quotient when `d` divides `p`.
pub fn divide_exact(p: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let (q, r) = p.to_q().divrem(&d.to_q());
    if !r.is_zero() || !q.0.iter().all(|c| c.is_integer()) {
        return None;
    }
    Some(IntPoly::new(q.0.iter().map(|c| c.to_integer()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_examples() {
        let cp = |rows: &[[i64; 2]; 2]| charpoly(&IntMatrix::from_rows(rows)).unwrap();
        assert_eq!(cp(&[[2, 1], [1, 1]]), IntPoly::from_i64(&[1, -3, 1]));
        assert_eq!(cp(&[[0, -1], [1, 0]]), IntPoly::from_i64(&[1, 0, 1]));
        // (x - 1)^3
        let id = charpoly(&IntMatrix::identity(3)).unwrap();
        assert_eq!(id, IntPoly::from_i64(&[-1, 3, -3, 1]));
        assert!(charpoly(&IntMatrix::from_rows(&[[1, 2, 3]])).is_err());
    }

    #[test]
    fn unit_circle_examples() {
        let u = |c: &[i64]| unit_circle_roots(&IntPoly::from_i64(c)).unwrap();
        assert!(!u(&[1, -3, 1]));
        assert!(u(&[1, 0, 1]));
        assert!(u(&[-1, 1]));
        // x^2 + x + 1: primitive cube roots of unity
        assert!(u(&[1, 1, 1]));
        // 2x^2 + 1: |roots| = 1/sqrt 2
        assert!(!u(&[1, 0, 2]));
        // x^4 - 3x^3 + 3x^2 - 3x + 1 = (x^2 - 3x + 1)(x^2 + 1)... expanded
        assert!(u(&[1, -3, 2, -3, 1]));
        assert!(matches!(unit_circle_roots(&IntPoly::new(vec![])), Err(Error::ZeroPolynomial)));
        assert!(!u(&[5]));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (x - 1)(x + 1)(x - 3)
        let p = IntPoly::from_i64(&[3, -1, -3, 1]);
        assert_eq!(real_roots_in(&p, &int(-2), &int(2)).unwrap(), 2);
        assert_eq!(real_roots_in(&p, &int(-1), &int(1)).unwrap(), 2);
        assert_eq!(real_roots_in(&p, &int(2), &int(5)).unwrap(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, -3, 1]).to_string(), "x^2 - 3x + 1");
        assert_eq!(IntPoly::from_i64(&[-1, 1]).to_string(), "x - 1");
    }
}
