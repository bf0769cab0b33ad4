use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::roots::real_root_count_with_multiplicity;
use super::{
    count_roots_below, denominator_lcm, format_rational, ExactError, IntPolynomial, Rational,
    Strictness,
};

/// Why the caller believes a matrix has an all-real spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumClaim {
    /// The matrix is symmetric; verified on use.
    Symmetric,
    /// Not necessarily symmetric, but known to have real eigenvalues, e.g. a
    /// quotient matrix of an equitable partition. Verified by root counting.
    Real,
}

/// Square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<Rational>,
    symmetric: bool,
}

impl RationalMatrix {
    pub fn new(order: usize, entries: Vec<Rational>) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::Shape("order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(ExactError::Shape(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        let symmetric = (0..order)
            .all(|i| (i + 1..order).all(|j| entries[i * order + j] == entries[j * order + i]));
        Ok(Self {
            order,
            entries,
            symmetric,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(ExactError::Shape(
                "rows must all have length equal to the row count".into(),
            ));
        }
        Self::new(order, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![Rational::zero(); order * order];
        for i in 0..order {
            entries[i * order + i] = Rational::one();
        }
        Self {
            order,
            entries,
            symmetric: true,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order)
    }

    /// `self + c·I`.
    pub fn shifted(&self, c: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            m.entries[i * self.order + i] += c;
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.order != other.order {
            return Err(ExactError::Shape("order mismatch in product".into()));
        }
        let n = self.order;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Self::new(n, out)
    }

    /// Principal submatrix on the given (sorted, distinct) indices.
    pub fn principal(&self, idx: &[usize]) -> Result<Self, ExactError> {
        if idx.is_empty() || idx.iter().any(|&i| i >= self.order) {
            return Err(ExactError::Shape("bad principal index set".into()));
        }
        let entries = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self::new(idx.len(), entries)
    }

    /// Common denominator `L` and the integer matrix `L·self`.
    fn scaled_integer(&self) -> (BigInt, Vec<BigInt>) {
        let l = denominator_lcm(&self.entries);
        let ints = self
            .entries
            .iter()
            .map(|q| q.numer() * (&l / q.denom()))
            .collect();
        (l, ints)
    }

    /// Exact determinant by Bareiss fraction-free elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Rational {
        let n = self.order;
        let (l, mut a) = self.scaled_integer();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return Rational::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        let det_scaled = sign * &a[(n - 1) * n + (n - 1)];
        Rational::new(det_scaled, num_traits::pow(l, n))
    }

    /// Characteristic polynomial with integer coefficients.
    ///
    /// For an integer matrix this is exactly `det(xI - M)`. Otherwise it is
    /// `det(xI - M)` multiplied by `L^n` (L the lcm of the denominators) and
    /// reduced by its content, so the root set is unchanged.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.order;
        let (l, a) = self.scaled_integer();
        // Faddeev-LeVerrier on A = L·M: the divisions by k are exact.
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = vec![BigInt::zero(); n * n];
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let mut next = vec![BigInt::zero(); n * n];
            if k > 1 {
                for i in 0..n {
                    for t in 0..n {
                        let x = &a[i * n + t];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let y = &m[t * n + j];
                            if !y.is_zero() {
                                next[i * n + j] += x * y;
                            }
                        }
                    }
                }
            }
            for i in 0..n {
                next[i * n + i] += &coeffs[n - k + 1];
            }
            m = next;
            // c_{n-k} = -tr(A·M_k) / k
            let mut tr = BigInt::zero();
            for i in 0..n {
                for t in 0..n {
                    tr += &a[i * n + t] * &m[t * n + i];
                }
            }
            coeffs[n - k] = -tr / BigInt::from(k);
        }
        // p_M(x) = L^-n · p_A(L x)
        IntPolynomial::new(coeffs)
            .scale_variable(&l)
            .primitive_part()
    }

    /// True iff every eigenvalue is `>= bound`, decided exactly.
    ///
    /// The spectrum must be real; `claim` says why. A symmetric claim on a
    /// non-symmetric matrix, or fewer real roots than the order, is an error.
    pub fn min_eigenvalue_at_least(
        &self,
        bound: &Rational,
        claim: SpectrumClaim,
    ) -> Result<bool, ExactError> {
        if claim == SpectrumClaim::Symmetric && !self.symmetric {
            return Err(ExactError::NotSymmetric);
        }
        let p = self.char_poly();
        let real = real_root_count_with_multiplicity(&p);
        if real != self.order {
            return Err(ExactError::NonRealSpectrum {
                real,
                degree: self.order,
            });
        }
        Ok(count_roots_below(&p, bound, Strictness::Strict)? == 0)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}
