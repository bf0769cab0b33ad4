//! Clique geometry in graphs with smallest eigenvalue bounded below.
//!
//! Covers the induced `H(a,t)` inequality and the `t_min`/`t_max` ranges it
//! implies, the cubic `M_G(c)` test on maximal cliques, the resulting clique
//! order cap, the join-with-clique criterion, and the quotient-matrix
//! arithmetic for two large cliques that share many vertices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactnum::{self, format_mixed, int, IntPolynomial, Rational, RationalMatrix};
use crate::srgcore::{delsarte_bound, spectrum_of, SrgError, SrgParams};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("rule inapplicable: mu = {mu} is not greater than m(m-1) = {bound}")]
    RuleInapplicable { mu: i64, bound: i64 },
    #[error(transparent)]
    Spectrum(#[from] SrgError),
    #[error("clique order must be at least 2, got {0}")]
    CliqueTooSmall(i64),
    #[error("forbidden neighbour counts for c = {c} are not contiguous: {forbidden:?}")]
    NonContiguous { c: i64, forbidden: Vec<i64> },
    #[error("pivot t - 1 + m = {0} must be positive")]
    NonPositivePivot(i64),
    #[error("empty side in a clique intersection; use the two-part quotient instead")]
    DegenerateSide,
    #[error("intersection size must be at least 1, got {0}")]
    EmptyIntersection(i64),
}

/// `(a - l(l+1))(t - (l+1)^2) <= (l(l+1))^2` with `l = lmin`: whether an
/// induced `H(a,t)` is compatible with smallest eigenvalue `lmin`. Equality
/// is allowed.
pub fn hat_allowed(a: i64, t: i64, lmin: i64) -> bool {
    let ll = i128::from(lmin) * i128::from(lmin + 1);
    let sq = i128::from(lmin + 1) * i128::from(lmin + 1);
    (i128::from(a) - ll) * (i128::from(t) - sq) <= ll * ll
}

/// Admissible neighbour counts of an outside vertex on a clique of order `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TRange {
    /// Counts strictly between `t_min` and `t_max` are forbidden.
    Restricted { c: i64, t_min: i64, t_max: i64 },
    /// Every count `0..=c` is allowed.
    Unrestricted { c: i64 },
}

impl TRange {
    pub fn c(&self) -> i64 {
        match *self {
            TRange::Restricted { c, .. } | TRange::Unrestricted { c } => c,
        }
    }

    pub fn allows(&self, t: i64) -> bool {
        match *self {
            TRange::Restricted { t_min, t_max, .. } => t <= t_min || t >= t_max,
            TRange::Unrestricted { .. } => true,
        }
    }

    pub fn bounds(&self) -> Option<(i64, i64)> {
        match *self {
            TRange::Restricted { t_min, t_max, .. } => Some((t_min, t_max)),
            TRange::Unrestricted { .. } => None,
        }
    }
}

impl fmt::Display for TRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TRange::Restricted { c, t_min, t_max } => write!(f, "{c}\t{t_min}\t{t_max}"),
            TRange::Unrestricted { c } => write!(f, "{c}\tunrestricted"),
        }
    }
}

/// Neighbour-count range for a clique of order `c` in a graph with smallest
/// eigenvalue at least `lmin`. A vertex with `t` neighbours in the clique
/// induces `H(t, c - t)`.
pub fn t_range(c: i64, lmin: i64) -> Result<TRange, CliqueError> {
    if c < 2 {
        return Err(CliqueError::CliqueTooSmall(c));
    }
    let forbidden: Vec<i64> = (0..=c).filter(|&t| !hat_allowed(t, c - t, lmin)).collect();
    let (Some(&first), Some(&last)) = (forbidden.first(), forbidden.last()) else {
        return Ok(TRange::Unrestricted { c });
    };
    if last - first + 1 != forbidden.len() as i64 {
        return Err(CliqueError::NonContiguous { c, forbidden });
    }
    Ok(TRange::Restricted {
        c,
        t_min: first - 1,
        t_max: last + 1,
    })
}

/// The expanded left-hand side of the maximal-clique inequality as a
/// polynomial in the clique order `c`, plus the order above which it applies.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicTest {
    pub params: SrgParams,
    pub m: i64,
    pub polynomial: IntPolynomial,
    pub threshold: Rational,
}

impl CubicTest {
    pub fn eval(&self, c: i64) -> BigInt {
        self.polynomial.eval_int(&BigInt::from(c))
    }
}

/// Builds
/// `((c+m-3)(k-c+1) - 2(c-1)(lambda-c+2))^2 - (k-c+1)^2 (c+m-1)(c-(m-1)(4m-1))`
/// symbolically in `c`, with threshold `mu^2/(mu - m(m-1)) - m + 1`.
pub fn mg_polynomial(p: &SrgParams) -> Result<CubicTest, CliqueError> {
    let m = spectrum_of(p)?.m();
    let bound = m * (m - 1);
    if p.mu() <= bound {
        return Err(CliqueError::RuleInapplicable { mu: p.mu(), bound });
    }
    let (k, l) = (p.k(), p.lambda());
    let lin = IntPolynomial::linear;
    let a = &lin(1, m - 3) * &lin(-1, k + 1) - lin(2, -2) * lin(-1, l + 2);
    let kc = lin(-1, k + 1);
    let b = &(&kc * &kc) * &(&lin(1, m - 1) * &lin(1, -(m - 1) * (4 * m - 1)));
    let polynomial = &(&a * &a) - &b;
    let mu = p.mu();
    let threshold =
        Rational::new(BigInt::from(mu * mu), BigInt::from(mu - bound)) - int(m) + int(1);
    Ok(CubicTest {
        params: *p,
        m,
        polynomial,
        threshold,
    })
}

/// Detailed outcome of the clique order cap, one entry per rule.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueCap {
    pub delsarte: i64,
    pub threshold: Rational,
    /// Integer orders in `(threshold, delsarte]` where `M_G(c) >= 0`; only
    /// these can be orders of maximal cliques above the threshold.
    pub surviving_orders: Vec<i64>,
    pub cap: i64,
    pub provenance: Vec<String>,
}

/// Combines the Delsarte bound, the cubic threshold, and the sign of `M_G`
/// on every integer order between them.
pub fn clique_cap_analysis(p: &SrgParams) -> Result<CliqueCap, CliqueError> {
    let delsarte = delsarte_bound(p)?;
    let cubic = mg_polynomial(p)?;
    let above = exactnum::floor(&cubic.threshold) + 1;
    let first = i64::try_from(above).unwrap_or(i64::MAX);
    let surviving: Vec<i64> = (first..=delsarte)
        .filter(|&c| !cubic.eval(c).is_negative())
        .collect();
    let floor_t = i64::try_from(exactnum::floor(&cubic.threshold)).unwrap_or(i64::MAX);
    let mut provenance = vec![format!(
        "Delsarte bound: every clique has order <= {delsarte}"
    )];
    let cap = if let Some(&top) = surviving.last() {
        provenance.push(format!(
            "cubic rule: M_G(c) >= 0 at {} order(s) in ({}, {delsarte}], largest {top}",
            surviving.len(),
            format_mixed(&cubic.threshold)
        ));
        top
    } else if first > delsarte {
        provenance.push(format!(
            "cubic rule adds nothing: threshold {} is not below the Delsarte bound",
            format_mixed(&cubic.threshold)
        ));
        delsarte
    } else {
        provenance.push(format!(
            "cubic rule: M_G(c) < 0 for every integer c in ({}, {delsarte}], so no maximal clique is larger than {floor_t}",
            format_mixed(&cubic.threshold)
        ));
        floor_t
    };
    Ok(CliqueCap {
        delsarte,
        threshold: cubic.threshold,
        surviving_orders: surviving,
        cap,
        provenance,
    })
}

/// Largest clique order not excluded by the Delsarte and cubic rules.
pub fn max_clique_order(p: &SrgParams) -> Result<i64, CliqueError> {
    clique_cap_analysis(p).map(|c| c.cap)
}

/// `(x - k)(x + 1 - t) - n t`, whose sign at `lambda_min(G)` decides whether
/// joining `K_t` to a `k`-regular `G` on `n` vertices keeps the smallest
/// eigenvalue.
pub fn join_criterion_polynomial(k: i64, n: i64, t: i64) -> IntPolynomial {
    &(&IntPolynomial::linear(1, -k) * &IntPolynomial::linear(1, 1 - t))
        - &IntPolynomial::constant(n * t)
}

/// Whether `lambda_min(K_t join G) = lmin` for `G` `k`-regular on `n`
/// vertices with smallest eigenvalue `lmin <= -1`, `t >= 1`:
/// `(lmin - k)(lmin + 1 - t) >= n t`.
pub fn join_clique_preserves_lmin(k: i64, n: i64, lmin: &Rational, t: i64) -> bool {
    let lhs = (lmin - int(k)) * (lmin + int(1 - t));
    lhs >= int(n * t)
}

/// Quotient matrix of two cliques of order `t + s` meeting in `t` vertices,
/// on the parts {intersection, symmetric difference}, where `alpha` is the
/// average number of neighbours a symmetric-difference vertex has on the
/// other side.
pub fn sym_diff_quotient(t: i64, s: i64, alpha: &Rational) -> RationalMatrix {
    RationalMatrix::new(2, vec![int(t - 1), int(2 * s), int(t), alpha + int(s - 1)])
        .expect("2x2 shape")
}

/// Least `alpha` with `det(Q + mI) >= 0` for [`sym_diff_quotient`]:
/// `2st/(t-1+m) - (s-1+m)`.
pub fn sym_diff_alpha_min(t: i64, s: i64, m: i64) -> Result<Rational, CliqueError> {
    let pivot = t - 1 + m;
    if pivot <= 0 {
        return Err(CliqueError::NonPositivePivot(pivot));
    }
    Ok(Rational::new(BigInt::from(2 * s * t), BigInt::from(pivot)) - int(s - 1 + m))
}

/// Upper bound on the number of edges between the two sides (each of size
/// `s`) of the symmetric difference of two cliques meeting in `t` vertices,
/// when no vertex is adjacent to the whole other side and any two
/// non-adjacent vertices have at most `mu` common neighbours.
///
/// Non-adjacent `x`, `y` on opposite sides share the `t` intersection
/// vertices plus every cross neighbour of either, so their cross degrees sum
/// to at most `mu - t`. With `a` the largest cross degree on one side, its
/// non-neighbours have degree at most `mu - t - a` and its neighbours at most
/// `min(mu - t, s - 1)`.
pub fn cross_edge_capacity(s: i64, t: i64, mu: i64) -> i64 {
    let slack = mu - t;
    if slack < 0 || s <= 0 {
        return 0;
    }
    let cap = slack.min(s - 1);
    (0..=cap)
        .map(|a| (s * a).min(a * cap + (s - a) * (slack - a).max(0)))
        .max()
        .unwrap_or(0)
}

/// Two cliques of order `t + s` sharing `t` vertices, with the quotient lower
/// bound on cross edges compared against [`cross_edge_capacity`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymDiffCheck {
    pub t: i64,
    pub s: i64,
    pub alpha_min: Rational,
    pub required_edges: i64,
    pub capacity: i64,
}

impl SymDiffCheck {
    /// The quotient demands more cross edges than the common-neighbour limit permits.
    pub fn contradiction(&self) -> bool {
        self.capacity < self.required_edges
    }
}

pub fn sym_diff_check(t: i64, s: i64, m: i64, mu: i64) -> Result<SymDiffCheck, CliqueError> {
    let alpha_min = sym_diff_alpha_min(t, s, m)?;
    let req = exactnum::ceil(&(&alpha_min * int(s)));
    let required_edges = i64::try_from(req.max(BigInt::zero())).unwrap_or(i64::MAX);
    Ok(SymDiffCheck {
        t,
        s,
        alpha_min,
        required_edges,
        capacity: cross_edge_capacity(s, t, mu),
    })
}

/// Two cliques meeting in `t` vertices, with `side1`/`side2` private
/// vertices, in a graph whose smallest eigenvalue is at least `-m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueIntersectionCase {
    t: i64,
    side1: i64,
    side2: i64,
    m: i64,
}

impl CliqueIntersectionCase {
    pub fn new(t: i64, side1: i64, side2: i64, m: i64) -> Result<Self, CliqueError> {
        if t < 1 {
            return Err(CliqueError::EmptyIntersection(t));
        }
        if side1 < 1 || side2 < 1 {
            return Err(CliqueError::DegenerateSide);
        }
        Ok(Self { t, side1, side2, m })
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn sides(&self) -> (i64, i64) {
        (self.side1, self.side2)
    }

    pub fn m(&self) -> i64 {
        self.m
    }
}

/// `[[t-1, t1, t2], [t, t1-1, 0], [t, 0, t2-1]]`.
pub fn three_part_quotient(case: &CliqueIntersectionCase) -> RationalMatrix {
    let (t, t1, t2) = (case.t, case.side1, case.side2);
    RationalMatrix::from_i64_rows(&[&[t - 1, t1, t2], &[t, t1 - 1, 0], &[t, 0, t2 - 1]])
        .expect("3x3 shape")
}

pub fn three_part_det(case: &CliqueIntersectionCase) -> Rational {
    three_part_quotient(case).shifted(&int(case.m)).det()
}

/// `det(Q + mI) >= 0`. This is necessary for `lambda_min(Q) >= -m` (the
/// quotient has a real spectrum) but never claimed sufficient.
pub fn three_part_quotient_ok(case: &CliqueIntersectionCase) -> bool {
    !three_part_det(case).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, SpectrumClaim};
    use crate::srgcore::flagship;

    #[test]
    fn hat_examples() {
        assert!(hat_allowed(8, 21, -3));
        assert!(hat_allowed(9, 16, -3));
        for t in 0..100 {
            assert!(hat_allowed(6, t, -3));
        }
        assert!(!hat_allowed(9, 17, -3));
    }

    #[test]
    fn t_range_examples() {
        assert_eq!(
            t_range(29, -3),
            Ok(TRange::Restricted {
                c: 29,
                t_min: 8,
                t_max: 23
            })
        );
        assert_eq!(
            t_range(30, -3),
            Ok(TRange::Restricted {
                c: 30,
                t_min: 8,
                t_max: 24
            })
        );
        assert_eq!(
            t_range(31, -3),
            Ok(TRange::Restricted {
                c: 31,
                t_min: 7,
                t_max: 26
            })
        );
        assert_eq!(
            t_range(32, -3),
            Ok(TRange::Restricted {
                c: 32,
                t_min: 7,
                t_max: 27
            })
        );
        assert_eq!(t_range(10, -3), Ok(TRange::Unrestricted { c: 10 }));
        assert_eq!(t_range(1, -3), Err(CliqueError::CliqueTooSmall(1)));
    }

    #[test]
    fn t_range_agrees_with_brute_force_scan() {
        for c in 2..=60 {
            let r = t_range(c, -3).unwrap();
            for t in 0..=c {
                assert_eq!(r.allows(t), hat_allowed(t, c - t, -3), "c={c} t={t}");
            }
        }
    }

    #[test]
    fn t_range_symmetry() {
        for c in 2..=200 {
            if let TRange::Restricted { t_min, t_max, .. } = t_range(c, -3).unwrap() {
                assert_eq!(t_min + t_max, c + 2, "c={c}");
            }
        }
    }

    #[test]
    fn flagship_cubic() {
        let cubic = mg_polynomial(&flagship()).unwrap();
        assert_eq!(
            cubic.polynomial,
            IntPolynomial::from_i64(&[3277200, 1468512, -80784, 672])
        );
        assert_eq!(cubic.threshold, rat(229, 7));
        assert_eq!(cubic.eval(26), BigInt::from(-1_340_400));
        assert_eq!(cubic.eval(97), BigInt::from(-1_057_536));
    }

    /// Direct evaluation of the unexpanded inequality.
    fn mg_direct(p: &SrgParams, m: i64, c: i64) -> i128 {
        let (k, l) = (i128::from(p.k()), i128::from(p.lambda()));
        let (c, m) = (i128::from(c), i128::from(m));
        let a = (c + m - 3) * (k - c + 1) - 2 * (c - 1) * (l - c + 2);
        a * a - (k - c + 1) * (k - c + 1) * (c + m - 1) * (c - (m - 1) * (4 * m - 1))
    }

    #[test]
    fn expansion_matches_pointwise_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let sets = [
            flagship(),
            SrgParams::new(1344, 221, 88, 26).unwrap(),
            SrgParams::new(288, 105, 52, 30).unwrap(),
        ];
        for p in sets {
            let cubic = mg_polynomial(&p).unwrap();
            for _ in 0..50 {
                let c: i64 = rng.gen_range(-500..500);
                assert_eq!(cubic.eval(c), BigInt::from(mg_direct(&p, cubic.m, c)));
            }
        }
    }

    #[test]
    fn cubic_rule_inapplicable_for_small_mu() {
        // Petersen: m = 2, m(m-1) = 2 >= mu = 1
        let p = SrgParams::new(10, 3, 0, 1).unwrap();
        assert_eq!(
            mg_polynomial(&p),
            Err(CliqueError::RuleInapplicable { mu: 1, bound: 2 })
        );
        assert!(max_clique_order(&p).is_err());
    }

    #[test]
    fn flagship_clique_cap() {
        let cap = clique_cap_analysis(&flagship()).unwrap();
        assert_eq!(cap.delsarte, 91);
        assert!(cap.surviving_orders.is_empty());
        assert_eq!(cap.cap, 32);
        assert_eq!(max_clique_order(&flagship()), Ok(32));
    }

    #[test]
    fn cap_falls_back_to_delsarte_when_threshold_is_high() {
        // (288,105,52,30): threshold 900/24 - 2 = 35.5, Delsarte 36
        let p = SrgParams::new(288, 105, 52, 30).unwrap();
        let cap = clique_cap_analysis(&p).unwrap();
        assert_eq!(cap.threshold, rat(71, 2));
        // 36 is the only order above the threshold; its fate decides the cap
        let m36 = mg_polynomial(&p).unwrap().eval(36);
        let expected = if m36.is_negative() { 35 } else { 36 };
        assert_eq!(cap.cap, expected);
    }

    #[test]
    fn join_examples() {
        assert!(join_clique_preserves_lmin(53, 82, &int(-3), 4));
        assert!(!join_clique_preserves_lmin(53, 82, &int(-3), 5));
        for (k, n) in [(0, 1), (2, 3), (2, 4), (5, 6), (3, 10)] {
            assert_eq!(join_clique_preserves_lmin(k, n, &int(-1), 1), n <= k + 1);
        }
        let h = join_criterion_polynomial(53, 82, 4);
        assert_eq!(h.eval(&int(-3)), int(336 - 328));
    }

    #[test]
    fn sym_diff_examples() {
        assert_eq!(sym_diff_alpha_min(22, 7, 3), Ok(rat(23, 6)));
        assert_eq!(exactnum::ceil(&(rat(23, 6) * int(7))), BigInt::from(27));
        assert_eq!(sym_diff_alpha_min(27, 2, 3), Ok(rat(-8, 29)));
        assert_eq!(
            sym_diff_alpha_min(0, 2, 1),
            Err(CliqueError::NonPositivePivot(0))
        );
        let q = sym_diff_quotient(22, 7, &rat(23, 6));
        assert_eq!(q.get(0, 0), &int(21));
        assert_eq!(q.get(1, 1), &(rat(23, 6) + int(6)));
    }

    #[test]
    fn alpha_min_is_the_determinant_root() {
        for t in 1..40 {
            for s in 1..12 {
                for m in 1..5 {
                    let a = sym_diff_alpha_min(t, s, m).unwrap();
                    let q = sym_diff_quotient(t, s, &a);
                    assert_eq!(q.shifted(&int(m)).det(), int(0), "t={t} s={s} m={m}");
                }
            }
        }
    }

    #[test]
    fn alpha_min_boundary_matches_eigenvalue_test() {
        let a = sym_diff_alpha_min(22, 7, 3).unwrap();
        let at = sym_diff_quotient(22, 7, &a);
        assert_eq!(
            at.min_eigenvalue_at_least(&int(-3), SpectrumClaim::Real),
            Ok(true)
        );
        let below = sym_diff_quotient(22, 7, &(a - rat(1, 1000)));
        assert_eq!(
            below.min_eigenvalue_at_least(&int(-3), SpectrumClaim::Real),
            Ok(false)
        );
    }

    #[test]
    fn three_part_examples() {
        let bad = CliqueIntersectionCase::new(27, 3, 2, 3).unwrap();
        assert_eq!(three_part_det(&bad), int(-14));
        assert!(!three_part_quotient_ok(&bad));
        let ok = CliqueIntersectionCase::new(27, 1, 1, 3).unwrap();
        assert_eq!(three_part_det(&ok), int(99));
        assert!(three_part_quotient_ok(&ok));
        assert_eq!(
            CliqueIntersectionCase::new(27, 0, 2, 3),
            Err(CliqueError::DegenerateSide)
        );
    }

    #[test]
    fn three_part_det_matches_closed_form() {
        for t1 in 1..20 {
            for t2 in 1..20 {
                let case = CliqueIntersectionCase::new(27, t1, t2, 3).unwrap();
                let expanded = 29 * (t1 + 2) * (t2 + 2) - 27 * (t1 * (t2 + 2) + t2 * (t1 + 2));
                assert_eq!(three_part_det(&case), int(expanded));
                assert_eq!(expanded, -25 * t1 * t2 + 4 * (t1 + t2) + 116);
            }
        }
    }

    /// Exhaustive maximum over bipartite graphs between two sides of size s.
    fn brute_cross_max(s: usize, t: i64, mu: i64) -> i64 {
        let bits = s * s;
        let mut best = 0i64;
        for mask in 0u32..(1u32 << bits) {
            let adj = |i: usize, j: usize| mask >> (i * s + j) & 1 == 1;
            let d1: Vec<i64> = (0..s)
                .map(|i| (0..s).filter(|&j| adj(i, j)).count() as i64)
                .collect();
            let d2: Vec<i64> = (0..s)
                .map(|j| (0..s).filter(|&i| adj(i, j)).count() as i64)
                .collect();
            if d1.iter().chain(&d2).any(|&d| d == s as i64) {
                continue;
            }
            let ok = (0..s).all(|i| (0..s).all(|j| adj(i, j) || t + d1[i] + d2[j] <= mu));
            if ok {
                best = best.max(d1.iter().sum());
            }
        }
        best
    }

    #[test]
    fn cross_edge_capacity_is_an_upper_bound() {
        for s in 1..=4usize {
            for slack in 0..=6 {
                let brute = brute_cross_max(s, 20, 20 + slack);
                let bound = cross_edge_capacity(s as i64, 20, 20 + slack);
                assert!(brute <= bound, "s={s} slack={slack}: {brute} > {bound}");
            }
        }
    }

    #[test]
    fn sym_diff_checks_for_large_intersections() {
        let expected = [
            (22, 27, 25),
            (23, 19, 16),
            (24, 12, 9),
            (25, 6, 4),
            (26, 2, 1),
        ];
        for (t, req, cap) in expected {
            let chk = sym_diff_check(t, 29 - t, 3, 27).unwrap();
            assert_eq!((chk.required_edges, chk.capacity), (req, cap), "t={t}");
            assert!(chk.contradiction());
        }
        assert!(!sym_diff_check(27, 2, 3, 27).unwrap().contradiction());
    }
}
