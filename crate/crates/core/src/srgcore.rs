//! Strongly regular graph parameter sets and the feasibility rules that
//! depend on parameters alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SrgError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("irrational eigenvalues: discriminant {discriminant} is not a perfect square")]
    IrrationalEigenvalues { discriminant: i64 },
    #[error("non-integral multiplicity")]
    NonIntegralMultiplicity,
    #[error("imprimitive parameters (mu = 0 or mu = k)")]
    Imprimitive,
    #[error("coclique order must be at least 2, got {0}")]
    CocliqueTooSmall(i64),
    #[error("common neighbour count {cuv} outside 0..={max}")]
    CommonNeighboursOutOfRange { cuv: i64, max: i64 },
}

/// The parameter tuple `(n, k, lambda, mu)` of a strongly regular graph.
///
/// Construction enforces `0 < k < n`, nonnegative `lambda` and `mu`, and the
/// counting identity `k(k - lambda - 1) = (n - k - 1) mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    n: i64,
    k: i64,
    lambda: i64,
    mu: i64,
}

impl SrgParams {
    pub fn new(n: i64, k: i64, lambda: i64, mu: i64) -> Result<Self, SrgError> {
        if !(0 < k && k < n) {
            return Err(SrgError::InvalidParams(format!(
                "need 0 < k < n, got n={n}, k={k}"
            )));
        }
        if lambda < 0 || mu < 0 || lambda >= k {
            return Err(SrgError::InvalidParams(format!(
                "need 0 <= lambda < k and mu >= 0, got lambda={lambda}, mu={mu}"
            )));
        }
        let lhs = i128::from(k) * i128::from(k - lambda - 1);
        let rhs = i128::from(n - k - 1) * i128::from(mu);
        if lhs != rhs {
            return Err(SrgError::InvalidParams(format!(
                "counting identity fails: k(k-lambda-1) = {lhs} but (n-k-1)mu = {rhs}"
            )));
        }
        Ok(Self { n, k, lambda, mu })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    /// The parameters of the complementary graph.
    pub fn complement(&self) -> Result<Self, SrgError> {
        let (n, k, l, m) = (self.n, self.k, self.lambda, self.mu);
        Self::new(n, n - k - 1, n - 2 - 2 * k + m, n - 2 * k + l)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Parses `n,k,lambda,mu` (commas and/or whitespace, optional parentheses).
impl FromStr for SrgParams {
    type Err = SrgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let fields: Vec<&str> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 4 {
            return Err(SrgError::InvalidParams(format!(
                "expected 4 fields, got {}",
                fields.len()
            )));
        }
        let mut v = [0i64; 4];
        for (slot, f) in v.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| SrgError::InvalidParams(format!("not a decimal integer: {f:?}")))?;
        }
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// Eigenvalues `k, r^f, s^g` of a strongly regular graph with integral
/// restricted eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub theta0: i64,
    pub r: i64,
    pub s: i64,
    pub f: i64,
    pub g: i64,
}

impl Spectrum {
    /// Magnitude of the smallest eigenvalue.
    pub fn m(&self) -> i64 {
        -self.s
    }

    pub fn trace(&self) -> i64 {
        self.theta0 + self.f * self.r + self.g * self.s
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}^{}, ({})^{}",
            self.theta0, self.r, self.f, self.s, self.g
        )
    }
}

fn isqrt_exact(d: i64) -> Option<i64> {
    if d < 0 {
        return None;
    }
    let mut r = (d as f64).sqrt() as i64;
    while r * r > d {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= d {
        r += 1;
    }
    (r * r == d).then_some(r)
}

/// Exact spectrum from the parameters.
///
/// The restricted eigenvalues are the roots of `x^2 - (lambda-mu)x - (k-mu)`;
/// the multiplicities are
/// `f, g = ((n-1) -/+ (2k + (n-1)(lambda-mu)) / (r-s)) / 2`.
pub fn spectrum_of(p: &SrgParams) -> Result<Spectrum, SrgError> {
    let (n, k, l, m) = (p.n, p.k, p.lambda, p.mu);
    if m == 0 || m == k {
        return Err(SrgError::Imprimitive);
    }
    let disc = (l - m) * (l - m) + 4 * (k - m);
    let d = isqrt_exact(disc).ok_or(SrgError::IrrationalEigenvalues { discriminant: disc })?;
    // d and lambda - mu have the same parity, so r and s are integers.
    let r = (l - m + d) / 2;
    let s = (l - m - d) / 2;
    let num = 2 * k + (n - 1) * (l - m);
    if num % d != 0 {
        return Err(SrgError::NonIntegralMultiplicity);
    }
    let q = num / d;
    if (n - 1 - q) % 2 != 0 {
        return Err(SrgError::NonIntegralMultiplicity);
    }
    let f = (n - 1 - q) / 2;
    let g = (n - 1 + q) / 2;
    if f <= 0 || g <= 0 {
        return Err(SrgError::NonIntegralMultiplicity);
    }
    let spec = Spectrum {
        theta0: k,
        r,
        s,
        f,
        g,
    };
    debug_assert_eq!(1 + f + g, n);
    debug_assert_eq!(spec.trace(), 0);
    Ok(spec)
}

/// `floor(1 + k/m)` for smallest eigenvalue `-m`.
pub fn delsarte_bound(p: &SrgParams) -> Result<i64, SrgError> {
    let spec = spectrum_of(p)?;
    Ok(1 + p.k / spec.m())
}

/// True when `k < 50(mu - 1)`: no Terwilliger graph has these parameters, so
/// every graph with them contains an induced quadrangle.
pub fn terwilliger_forces_quadrangle(p: &SrgParams) -> bool {
    p.k < 50 * (p.mu - 1)
}

/// Local-graph coclique inequality `C(cbar,2)(mu-1) >= cbar(lambda+1) - k`.
///
/// Returns whether it holds together with the slack `LHS - RHS`; slack zero
/// is the equality case, which pins every pair of the coclique to exactly
/// `mu - 1` common neighbours inside the local graph.
pub fn coclique_bound_holds(p: &SrgParams, cbar: i64) -> Result<(bool, i64), SrgError> {
    if cbar < 2 {
        return Err(SrgError::CocliqueTooSmall(cbar));
    }
    let lhs = cbar * (cbar - 1) / 2 * (p.mu - 1);
    let rhs = cbar * (p.lambda + 1) - p.k;
    Ok((lhs >= rhs, lhs - rhs))
}

/// Largest coclique order in a local graph not excluded by
/// [`coclique_bound_holds`]. Cocliques are hereditary, so the first failing
/// order caps everything above it; `k` when the rule never fails.
pub fn coclique_max(p: &SrgParams) -> i64 {
    (2..=p.k)
        .find(|&c| !coclique_bound_holds(p, c).map(|(ok, _)| ok).unwrap_or(true))
        .map(|c| c - 1)
        .unwrap_or(p.k)
}

/// `|W| = k - 2(lambda+1) + c(u,v)`: local-graph vertices other than `u, v`
/// adjacent to neither, for a quadrangle `x ~ u ~ y ~ v ~ x`. Inside a
/// quadrangle `c(u,v) <= mu - 2`.
pub fn w_size_candidates(p: &SrgParams, cuv: i64) -> Result<i64, SrgError> {
    let max = p.mu - 2;
    if !(0..=max).contains(&cuv) {
        return Err(SrgError::CommonNeighboursOutOfRange { cuv, max });
    }
    Ok(p.k - 2 * (p.lambda + 1) + cuv)
}

/// Outcome of the parameter-level rules. Generic rules only constrain; no
/// field of this report ever asserts nonexistence.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub params: SrgParams,
    pub spectrum: Result<Spectrum, SrgError>,
    pub delsarte_bound: Option<i64>,
    pub terwilliger_forces_quadrangle: bool,
    pub coclique_max: i64,
    pub clique_cap: Option<i64>,
    pub notes: Vec<String>,
}

/// `(n, k, lambda, mu)`.
pub type ParamTuple = (i64, i64, i64, i64);
/// `(theta0, r, f, s, g)`.
pub type SpectrumTuple = (i64, i64, i64, i64, i64);

/// The twelve open parameter sets with smallest eigenvalue -3, `n > 276`,
/// `mu` not in {6, 9}, together with their spectra.
pub const OPEN_TABLE: [(ParamTuple, SpectrumTuple); 12] = [
    ((288, 105, 52, 30), (105, 25, 27, -3, 260)),
    ((300, 117, 60, 36), (117, 27, 26, -3, 273)),
    ((351, 140, 73, 44), (140, 32, 26, -3, 324)),
    ((375, 102, 45, 21), (102, 27, 34, -3, 340)),
    ((405, 132, 63, 33), (132, 33, 30, -3, 374)),
    ((441, 88, 35, 13), (88, 25, 44, -3, 396)),
    ((476, 133, 60, 28), (133, 35, 34, -3, 441)),
    ((540, 147, 66, 30), (147, 39, 35, -3, 504)),
    ((550, 162, 75, 36), (162, 42, 33, -3, 516)),
    ((575, 112, 45, 16), (112, 32, 46, -3, 528)),
    ((703, 182, 81, 35), (182, 49, 37, -3, 665)),
    ((1344, 221, 88, 26), (221, 65, 56, -3, 1287)),
];

/// The parameter set whose nonexistence the replay establishes.
pub fn flagship() -> SrgParams {
    SrgParams::new(1911, 270, 105, 27).expect("flagship parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: i64, k: i64, l: i64, m: i64) -> SrgParams {
        SrgParams::new(n, k, l, m).unwrap()
    }

    #[test]
    fn rejects_bad_tuples() {
        assert!(SrgParams::new(10, 3, 0, 2).is_err());
        assert!(SrgParams::new(10, 10, 0, 1).is_err());
        assert!(SrgParams::new(10, 0, 0, 1).is_err());
        assert!(SrgParams::new(10, 3, -1, 1).is_err());
    }

    #[test]
    fn parses_records() {
        assert_eq!("1911,270,105,27".parse::<SrgParams>().unwrap(), flagship());
        assert_eq!(
            " (10, 3, 0, 1) ".parse::<SrgParams>().unwrap(),
            sp(10, 3, 0, 1)
        );
        assert!("10,3,0".parse::<SrgParams>().is_err());
        assert!("10,3,x,1".parse::<SrgParams>().is_err());
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_of(&sp(288, 105, 52, 30)).unwrap();
        assert_eq!((s.theta0, s.r, s.f, s.s, s.g), (105, 25, 27, -3, 260));
        let s = spectrum_of(&flagship()).unwrap();
        assert_eq!((s.theta0, s.r, s.f, s.s, s.g), (270, 81, 65, -3, 1845));
        assert_eq!(270 + 65 * 81 - 1845 * 3, 0);
        assert_eq!(
            spectrum_of(&sp(5, 2, 0, 1)),
            Err(SrgError::IrrationalEigenvalues { discriminant: 5 })
        );
    }

    #[test]
    fn spectrum_of_classical_graphs() {
        let s = spectrum_of(&sp(10, 3, 0, 1)).unwrap();
        assert_eq!((s.r, s.f, s.s, s.g), (1, 5, -2, 4));
        let s = spectrum_of(&sp(9, 4, 1, 2)).unwrap();
        assert_eq!((s.r, s.f, s.s, s.g), (1, 4, -2, 4));
        // complete multipartite K_{3,3}: imprimitive
        assert_eq!(spectrum_of(&sp(6, 3, 0, 3)), Err(SrgError::Imprimitive));
    }

    #[test]
    fn non_integral_multiplicity_is_rejected() {
        // Counting identity and integral r, s hold, but f = 7/2.
        let p = sp(15, 7, 2, 4);
        assert_eq!(spectrum_of(&p), Err(SrgError::NonIntegralMultiplicity));
    }

    #[test]
    fn delsarte_examples() {
        assert_eq!(delsarte_bound(&flagship()), Ok(91));
        assert_eq!(delsarte_bound(&sp(288, 105, 52, 30)), Ok(36));
        assert!(delsarte_bound(&sp(5, 2, 0, 1)).is_err());
    }

    #[test]
    fn terwilliger_examples() {
        assert!(terwilliger_forces_quadrangle(&flagship()));
        assert!(terwilliger_forces_quadrangle(&sp(288, 105, 52, 30)));
        // k = 1300 = 50(mu - 1): boundary, rule does not fire
        let p = sp(63701, 1300, 3, 27);
        assert!(!terwilliger_forces_quadrangle(&p));
    }

    #[test]
    fn coclique_examples() {
        assert_eq!(coclique_bound_holds(&flagship(), 5), Ok((true, 0)));
        assert_eq!(coclique_bound_holds(&flagship(), 4), Ok((true, 2)));
        assert!(coclique_bound_holds(&flagship(), 1).is_err());
        for p in [flagship(), sp(10, 3, 0, 1), sp(288, 105, 52, 30)] {
            let (ok, _) = coclique_bound_holds(&p, 2).unwrap();
            assert_eq!(ok, p.mu > 2 * p.lambda + 2 - p.k);
        }
    }

    #[test]
    fn coclique_max_without_failure_is_valency() {
        // The inequality never fails for these, so only the trivial cap remains.
        assert_eq!(coclique_max(&sp(16, 6, 2, 2)), 6);
        assert_eq!(coclique_max(&flagship()), 270);
    }

    #[test]
    fn w_size_examples() {
        assert_eq!(w_size_candidates(&flagship(), 24), Ok(82));
        assert_eq!(w_size_candidates(&flagship(), 25), Ok(83));
        assert_eq!(w_size_candidates(&flagship(), 0), Ok(270 - 212));
        assert!(w_size_candidates(&flagship(), 26).is_err());
    }

    #[test]
    fn open_table_reproduces() {
        for ((n, k, l, m), (t0, r, f, s, g)) in OPEN_TABLE {
            let spec = spectrum_of(&sp(n, k, l, m)).unwrap();
            assert_eq!(
                (spec.theta0, spec.r, spec.f, spec.s, spec.g),
                (t0, r, f, s, g)
            );
        }
    }

    #[test]
    fn complement_round_trip() {
        let p = sp(10, 3, 0, 1);
        assert_eq!(p.complement().unwrap(), sp(10, 6, 3, 4));
        assert_eq!(p.complement().unwrap().complement().unwrap(), p);
    }
}
