use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored lowest degree first and trailing zeros are always
/// trimmed, so the zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `a·x + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_i64(&[b, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    /// Sign of `p(x)` computed on the homogenized integer form, avoiding
    /// rational normalization at every Horner step.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (a, b) = (x.numer(), x.denom());
        // sum c_i a^i b^(d-i); b > 0 so the sign matches p(a/b).
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * a + c * &bpow;
            if i > 0 {
                bpow *= b;
            }
        }
        acc.sign_cmp()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides out the content but keeps the sign of every coefficient.
    pub(crate) fn positive_content_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(k·x)`.
    pub fn scale_variable(&self, k: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= k;
        }
        Self::new(out)
    }

    /// `p(x + h)` via repeated synthetic division.
    pub fn shift(&self, h: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * h;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) · f mod d`.
    ///
    /// Panics if `d` is zero.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(df) = self.degree() else {
            return Self::zero();
        };
        if df < dd {
            return self.clone();
        }
        for top in (dd..=df).rev() {
            let coef = r[top].clone();
            for c in r.iter_mut().take(top + 1) {
                *c *= &lc;
            }
            if !coef.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] -= &coef * dc;
                }
            }
        }
        r.truncate(dd);
        Self::new(r)
    }

    /// Exact quotient over the integers, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let df = self.degree().unwrap();
        if df < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); df - dd + 1];
        for top in (dd..=df).rev() {
            let (qc, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            if !qc.is_zero() {
                let shift = top - dd;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] -= &qc * dc;
                }
            }
            q[top - dd] = qc;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient (content ignored).
    /// `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Square-free factorization (Yun): pairs `(factor, multiplicity)` whose
    /// product equals the primitive part of `self`, each factor primitive and
    /// square-free, pairwise coprime. Constant input yields an empty list.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        // a0 is primitive, so both quotients stay integral.
        let mut b = f.exact_div(&a0).expect("gcd divides f");
        let c = fp.exact_div(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            let nb = b.exact_div(&a).expect("a divides b");
            let nc = d.exact_div(&a).expect("a divides d");
            d = &nc - &nb.derivative();
            b = nb;
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors (primitive, positive lead).
    pub fn square_free_part(&self) -> Self {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return f;
        }
        let g = f.gcd(&f.derivative());
        f.exact_div(&g).expect("gcd divides f").primitive_part()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn display_matches_conventional_form() {
        assert_eq!(p(&[-2, -3, 0, 1]).to_string(), "x^3 - 3x - 2");
        assert_eq!(p(&[-5, 1]).to_string(), "x - 5");
        assert_eq!(
            p(&[3277200, 1468512, -80784, 672]).display_in("c"),
            "672c^3 - 80784c^2 + 1468512c + 3277200"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn sign_at_matches_rational_eval() {
        let f = p(&[-119, -30, 1]);
        for x in [int(-4), int(-3), rat(-23, 6), rat(7, 3), int(40)] {
            let v = f.eval(&x);
            assert_eq!(f.sign_at(&x), v.cmp(&Rational::zero()));
        }
    }

    #[test]
    fn pseudo_remainder_small_case() {
        // (x^2 + 1) mod (2x + 1): lc^2 * f = 4x^2 + 4 = (2x+1)(2x-1) + 5
        assert_eq!(p(&[1, 0, 1]).pseudo_rem(&p(&[1, 2])), p(&[5]));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]); // (x-1)(x+2)
        let b = &p(&[-1, 1]) * &p(&[3, 0, 1]); // (x-1)(x^2+3)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.exact_div(&p(&[2, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.exact_div(&p(&[5, 1])), None);
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-2)(x+1)^2 (x^2-2)^3
        let f = &(&p(&[-2, 1]) * &(&p(&[1, 1]) * &p(&[1, 1])))
            * &(&p(&[-2, 0, 1]) * &(&p(&[-2, 0, 1]) * &p(&[-2, 0, 1])));
        let dec = f.scale(&BigInt::from(-6)).square_free_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 2), (p(&[-2, 0, 1]), 3)]
        );
        assert_eq!(
            f.square_free_part(),
            &(&p(&[-2, 1]) * &p(&[1, 1])) * &p(&[-2, 0, 1])
        );
    }

    #[test]
    fn variable_scaling_and_shift() {
        let f = p(&[-2, -3, 0, 1]);
        assert_eq!(f.scale_variable(&BigInt::from(2)), p(&[-2, -6, 0, 8]));
        // f(x - 1) has root set shifted by +1
        let g = f.shift(&BigInt::from(-1));
        assert_eq!(g.eval(&int(3)), f.eval(&int(2)));
        assert_eq!(g.eval(&int(0)), f.eval(&int(-1)));
    }
}
