use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, ExactError, IntPolynomial, Rational, Strictness};

/// Sturm sequence of the square-free part of a polynomial.
///
/// Each remainder is replaced by its primitive part (divided by a positive
/// content) so coefficients stay small while the signs required by Sturm's
/// theorem are preserved.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    /// Panics on the zero polynomial; callers check first.
    pub fn new(p: &IntPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let p0 = p.square_free_part();
        let mut chain = vec![p0.clone()];
        if p0.degree() == Some(0) {
            return Self { chain };
        }
        chain.push(p0.derivative().positive_content_part());
        loop {
            let n = chain.len();
            let (prev, cur) = (&chain[n - 2], &chain[n - 1]);
            if cur.degree() == Some(0) {
                break;
            }
            let delta = prev.degree().unwrap() - cur.degree().unwrap() + 1;
            let prem = prev.pseudo_rem(cur);
            if prem.is_zero() {
                break;
            }
            // prem = lc^delta * rem; Sturm needs -rem up to a positive factor.
            let lc_negative = cur.leading().unwrap().is_negative();
            let next = if lc_negative && delta % 2 == 1 {
                prem
            } else {
                -&prem
            };
            chain.push(next.positive_content_part());
        }
        Self { chain }
    }

    /// The square-free polynomial the sequence was built from.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.chain.iter().map(|p| {
            let lc = p.leading().unwrap().cmp(&BigInt::zero());
            if p.degree().unwrap() % 2 == 1 {
                lc.reverse()
            } else {
                lc
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(
            self.chain
                .iter()
                .map(|p| p.leading().unwrap().cmp(&BigInt::zero())),
        )
    }

    /// Distinct real roots in total.
    pub fn total(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct real roots in `(-inf, x]`.
    pub fn count_le(&self, x: &Rational) -> usize {
        self.variations_at_neg_inf() - self.variations_at(x)
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        debug_assert!(lo <= hi);
        self.variations_at(lo) - self.variations_at(hi)
    }
}

/// Number of distinct real roots of `p` below `bound` (`Strict`) or at most
/// `bound` (`Inclusive`), decided by Sturm sign variations.
///
/// Multiplicities are collapsed; see [`real_roots_with_multiplicity`].
pub fn count_roots_below(
    p: &IntPolynomial,
    bound: &Rational,
    strictness: Strictness,
) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::UndefinedRootCount);
    }
    let sturm = SturmSequence::new(p);
    let le = sturm.count_le(bound);
    Ok(match strictness {
        Strictness::Inclusive => le,
        Strictness::Strict => le - usize::from(sturm.base().sign_at(bound) == Ordering::Equal),
    })
}

/// A real algebraic number: the unique root of a square-free integer
/// polynomial inside an isolating interval.
///
/// When `lo == hi` the root is the rational `lo` exactly. Otherwise the root
/// lies strictly inside `(lo, hi)`, neither endpoint is a root, and the
/// polynomial changes sign across the interval.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: IntPolynomial,
    lo: Rational,
    hi: Rational,
}

impl RealRoot {
    pub fn exact(value: Rational) -> Self {
        let poly = IntPolynomial::new(vec![-value.numer().clone(), value.denom().clone()]);
        Self {
            poly,
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halves the isolating interval once (or pins the root exactly).
    pub fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s_mid == self.poly.sign_at(&self.hi) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Refines until the interval is narrower than `width` or exact.
    pub fn refine_to(&mut self, width: &Rational) {
        while self.lo != self.hi && &self.width() >= width {
            self.bisect();
        }
        self.try_pin_rational();
    }

    /// Rational roots of a primitive polynomial have denominators dividing
    /// its leading coefficient; once the interval is narrower than one grid
    /// step there is a single candidate to test.
    fn try_pin_rational(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let lead = self.poly.leading().unwrap().abs();
        let step = Rational::new(BigInt::one(), lead.clone());
        if self.width() >= step {
            return;
        }
        let k = super::floor(&(&self.hi * Rational::from_integer(lead.clone())));
        let cand = Rational::new(k, lead);
        if cand > self.lo && cand < self.hi && self.poly.sign_at(&cand) == Ordering::Equal {
            self.lo = cand.clone();
            self.hi = cand;
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(v) = self.as_exact() {
            return v.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let s = self.poly.sign_at(q);
        if s == Ordering::Equal {
            return Ordering::Equal;
        }
        // Root lies on the side where the sign differs from p(q).
        if s == self.poly.sign_at(&self.hi) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_root(&self, other: &RealRoot) -> Ordering {
        if let Some(v) = other.as_exact() {
            return self.cmp_rational(v);
        }
        if let Some(v) = self.as_exact() {
            return other.cmp_rational(v).reverse();
        }
        let g = self.poly.gcd(&other.poly);
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if a.as_exact().is_some() || b.as_exact().is_some() {
                return a.cmp_root(&b);
            }
            // A common root of both polynomials inside the overlap must be
            // the isolated root of each.
            if g.degree().unwrap_or(0) > 0 {
                let lo = std::cmp::max(&a.lo, &b.lo).clone();
                let hi = std::cmp::min(&a.hi, &b.hi).clone();
                if SturmSequence::new(&g).count_in(&lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }

    /// Sign of `f` at this root, decided exactly.
    pub fn sign_of(&self, f: &IntPolynomial) -> Ordering {
        if f.is_zero() {
            return Ordering::Equal;
        }
        if let Some(v) = self.as_exact() {
            return f.sign_at(v);
        }
        let g = self.poly.gcd(f);
        if g.degree().unwrap_or(0) > 0 && SturmSequence::new(&g).count_in(&self.lo, &self.hi) > 0 {
            return Ordering::Equal;
        }
        // f has no root at this point; refine until f has no root in the
        // interval, then f's sign is constant there.
        let sturm_f = SturmSequence::new(f);
        let mut r = self.clone();
        loop {
            if let Some(v) = r.as_exact() {
                return f.sign_at(v);
            }
            if sturm_f.count_in(&r.lo, &r.hi) == 0 {
                return f.sign_at(&r.hi);
            }
            r.bisect();
        }
    }

    /// Approximate value, for display only.
    pub fn approx(&self) -> f64 {
        super::to_f64(&((&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))))
    }
}

impl PartialEq for RealRoot {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_root(other) == Ordering::Equal
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_exact() {
            Some(v) => f.write_str(&format_rational(v)),
            None => write!(
                f,
                "root of {} in ({}, {})",
                self.poly,
                format_rational(&self.lo),
                format_rational(&self.hi)
            ),
        }
    }
}

/// Integer strictly larger than the absolute value of every root.
fn root_bound(p: &IntPolynomial) -> BigInt {
    let lead = p.leading().unwrap().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap();
    // Cauchy: |z| < 1 + max|a_i| / |a_n|
    BigInt::from(2) + max / lead
}

/// Isolates the distinct real roots of `p` in increasing order.
///
/// Each returned root belongs to the square-free part of `p`; rational roots
/// are pinned exactly, irrational ones come with a sign-changing interval of
/// width below one.
pub fn real_roots(p: &IntPolynomial) -> Result<Vec<RealRoot>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::UndefinedRootCount);
    }
    let sturm = SturmSequence::new(p);
    let base = sturm.base().clone();
    if base.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = Rational::from_integer(root_bound(&base));
    let (lo, hi) = (-b.clone(), b);
    let n = sturm.count_in(&lo, &hi);
    let mut out = Vec::with_capacity(n);
    isolate(&sturm, &base, lo, hi, n, &mut out);
    // One grid step of the candidate rational roots.
    let step = Rational::new(BigInt::one(), base.leading().unwrap().abs());
    for r in &mut out {
        r.refine_to(&step);
    }
    Ok(out)
}

/// `n` roots in `(lo, hi)`, neither endpoint a root.
fn isolate(
    sturm: &SturmSequence,
    base: &IntPolynomial,
    lo: Rational,
    hi: Rational,
    n: usize,
    out: &mut Vec<RealRoot>,
) {
    match n {
        0 => {}
        1 => out.push(RealRoot {
            poly: base.clone(),
            lo,
            hi,
        }),
        _ => {
            let two = Rational::from_integer(BigInt::from(2));
            let mid = (&lo + &hi) / &two;
            if base.sign_at(&mid) == Ordering::Equal {
                let left = sturm.count_in(&lo, &mid) - 1;
                let right = n - 1 - left;
                // Split around the exact root using nearby non-roots.
                let mut eps = (&hi - &lo) / Rational::from_integer(BigInt::from(4));
                let (l, r) = loop {
                    let l = &mid - &eps;
                    let r = &mid + &eps;
                    if base.sign_at(&l) != Ordering::Equal
                        && base.sign_at(&r) != Ordering::Equal
                        && sturm.count_in(&l, &r) == 1
                    {
                        break (l, r);
                    }
                    eps /= &two;
                };
                isolate(sturm, base, lo, l, left, out);
                out.push(RealRoot {
                    poly: base.clone(),
                    lo: mid.clone(),
                    hi: mid,
                });
                isolate(sturm, base, r, hi, right, out);
            } else {
                let left = sturm.count_in(&lo, &mid);
                isolate(sturm, base, lo, mid.clone(), left, out);
                isolate(sturm, base, mid, hi, n - left, out);
            }
        }
    }
}

/// Real roots with multiplicities, in increasing order, via square-free
/// decomposition.
pub fn real_roots_with_multiplicity(
    p: &IntPolynomial,
) -> Result<Vec<(RealRoot, usize)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::UndefinedRootCount);
    }
    let mut all = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        for r in real_roots(&factor)? {
            all.push((r, mult));
        }
    }
    // Factors are coprime, so no two roots are equal.
    all.sort_by(|a, b| a.0.cmp_root(&b.0));
    Ok(all)
}

/// Total number of real roots counted with multiplicity.
pub(crate) fn real_root_count_with_multiplicity(p: &IntPolynomial) -> usize {
    p.square_free_decomposition()
        .iter()
        .map(|(f, m)| SturmSequence::new(f).total() * m)
        .sum()
}
