use std::cmp::Ordering;
use std::collections::HashSet;

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srgcheck::cliquegeom::{
    hat_allowed, join_clique_preserves_lmin, sym_diff_alpha_min, sym_diff_quotient, t_range, TRange,
};
use srgcheck::exactnum::{
    count_roots_below, int, rat, real_roots, real_roots_with_multiplicity, IntPolynomial, Rational,
    RationalMatrix, RealRoot, SpectrumClaim, Strictness,
};
use srgcheck::graphlab::{equitable_partitions, regular_catalogue, roots_contained, SmallGraph};
use srgcheck::srgcore::{delsarte_bound, spectrum_of, SrgParams};

fn symmetric(order: usize, vals: &[i64]) -> RationalMatrix {
    let mut e = vec![int(0); order * order];
    let mut it = vals.iter();
    for i in 0..order {
        for j in i..order {
            let v = int(*it.next().unwrap());
            e[i * order + j] = v.clone();
            e[j * order + i] = v;
        }
    }
    RationalMatrix::new(order, e).unwrap()
}

fn sym_strategy(max_order: usize, range: i64) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_order).prop_flat_map(move |n| {
        prop::collection::vec(-range..=range, n * (n + 1) / 2).prop_map(move |v| symmetric(n, &v))
    })
}

fn float_min_eig(m: &RationalMatrix) -> f64 {
    let n = m.order();
    let f = DMatrix::from_fn(n, n, |i, j| srgcheck::exactnum::to_f64(m.get(i, j)));
    f.symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues in increasing order, repeated by multiplicity.
fn sorted_eigs(m: &RationalMatrix) -> Vec<RealRoot> {
    real_roots_with_multiplicity(&m.char_poly())
        .unwrap()
        .into_iter()
        .flat_map(|(r, k)| std::iter::repeat_n(r, k))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn min_eigenvalue_matches_float_oracle(m in sym_strategy(8, 6), num in -40i64..40, den in 1i64..5) {
        let bound = rat(num, den);
        let exact = m.min_eigenvalue_at_least(&bound, SpectrumClaim::Symmetric).unwrap();
        let approx = float_min_eig(&m);
        let b = srgcheck::exactnum::to_f64(&bound);
        // Near-ties are left to the exact answer.
        if (approx - b).abs() > 1e-6 {
            prop_assert_eq!(exact, approx >= b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn cauchy_interlacing(m in sym_strategy(7, 4), mask in 1u32..128) {
        let n = m.order();
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!idx.is_empty());
        let sub = m.principal(&idx).unwrap();
        let big = sorted_eigs(&m);
        let small = sorted_eigs(&sub);
        let width = rat(1, 1_000_000_000);
        let refine = |mut r: RealRoot| { r.refine_to(&width); r };
        let big: Vec<_> = big.into_iter().map(refine).collect();
        let small: Vec<_> = small.into_iter().map(refine).collect();
        let k = small.len();
        for i in 0..k {
            prop_assert_ne!(big[i].cmp_root(&small[i]), Ordering::Greater);
            prop_assert_ne!(small[i].cmp_root(&big[i + n - k]), Ordering::Greater);
        }
    }

    #[test]
    fn root_counts_are_complementary(coeffs in prop::collection::vec(-20i64..20, 1..8), num in -30i64..30, den in 1i64..4) {
        let p = IntPolynomial::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let b = rat(num, den);
        let below = count_roots_below(&p, &b, Strictness::Strict).unwrap();
        // Roots >= b of p are roots <= -b of p(-x).
        let mirrored = IntPolynomial::new(
            p.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect(),
        );
        let at_or_above = count_roots_below(&mirrored, &(-b), Strictness::Inclusive).unwrap();
        prop_assert_eq!(below + at_or_above, real_roots(&p).unwrap().len());
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec((-9i64..10, 1i64..5), 16),
        b in prop::collection::vec((-9i64..10, 1i64..5), 16),
    ) {
        let mk = |v: &[(i64, i64)]| RationalMatrix::new(4, v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap();
        let (a, b) = (mk(&a), mk(&b));
        prop_assert_eq!(a.mul(&b).unwrap().det(), a.det() * b.det());
    }

    #[test]
    fn alpha_min_zeroes_the_determinant(t in 1i64..60, s in 1i64..30, m in 1i64..6) {
        let alpha = sym_diff_alpha_min(t, s, m).unwrap();
        prop_assert_eq!(sym_diff_quotient(t, s, &alpha).shifted(&int(m)).det(), int(0));
    }
}

/// Feasible parameter sets built from eigenvalues `r` and `-m`: `mu = k - rm`,
/// `lambda = mu + r - m`, `n` from the counting identity.
fn feasible_by_eigenvalues() -> Vec<SrgParams> {
    let mut out = Vec::new();
    for m in 2..=5i64 {
        for r in 1..=30i64 {
            for k in (r * m + 1)..=400 {
                let mu = k - r * m;
                let lambda = mu + r - m;
                if lambda < 0 || lambda >= k || (k * (k - lambda - 1)) % mu != 0 {
                    continue;
                }
                let n = 1 + k + k * (k - lambda - 1) / mu;
                if let Ok(p) = SrgParams::new(n, k, lambda, mu) {
                    if spectrum_of(&p).is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn delsarte_monotone_in_valency() {
    let all = feasible_by_eigenvalues();
    assert!(all.len() > 100, "only {} feasible sets", all.len());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        let (sa, sb) = (spectrum_of(a).unwrap(), spectrum_of(b).unwrap());
        if sa.m() == sb.m() && a.k() <= b.k() {
            assert!(
                delsarte_bound(a).unwrap() <= delsarte_bound(b).unwrap(),
                "{a} vs {b}"
            );
        }
    }
}

#[test]
fn spectrum_identities_on_feasible_sets() {
    for p in feasible_by_eigenvalues() {
        let s = spectrum_of(&p).unwrap();
        assert_eq!(1 + s.f + s.g, p.n(), "{p}");
        assert_eq!(s.trace(), 0, "{p}");
    }
}

#[test]
fn spectrum_formula_matches_concrete_graphs() {
    let graphs = [
        SmallGraph::petersen(),
        SmallGraph::petersen().complement(),
        SmallGraph::paley(9).unwrap(),
        SmallGraph::lattice(3).unwrap(),
        SmallGraph::lattice(4).unwrap(),
        SmallGraph::shrikhande(),
        SmallGraph::paley(13).unwrap(),
    ];
    for g in graphs {
        let Some(p) = g.srg_params() else {
            panic!("{g:?} should be strongly regular")
        };
        let spec = g.spectrum();
        match spectrum_of(&p) {
            Ok(s) => {
                let expect = [(s.s, s.g), (s.r, s.f), (s.theta0, 1)];
                let got: Vec<(Rational, usize)> = spec
                    .iter()
                    .map(|(r, m)| (r.as_exact().unwrap().clone(), *m))
                    .collect();
                let want: Vec<(Rational, usize)> =
                    expect.iter().map(|&(v, m)| (int(v), m as usize)).collect();
                assert_eq!(got, want, "{p}");
            }
            // Paley(13) is a conference graph: irrational restricted eigenvalues.
            Err(_) => assert!(spec.iter().any(|(r, _)| r.as_exact().is_none()), "{p}"),
        }
    }
}

#[test]
fn lambda_min_monotone_under_induced_subgraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let mut g = SmallGraph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let vs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if vs.is_empty() {
            continue;
        }
        let h = g.induced(&vs).unwrap();
        assert_ne!(
            g.lambda_min().cmp_root(&h.lambda_min()),
            Ordering::Greater,
            "{g:?} {vs:?}"
        );
    }
}

#[test]
fn quotient_roots_are_graph_roots() {
    for (name, g) in regular_catalogue(10) {
        let host = g.char_poly();
        let mut seen = HashSet::new();
        for (_, q) in equitable_partitions(&g).unwrap() {
            if seen.insert(q.to_string()) {
                assert!(roots_contained(&q.char_poly(), &host), "{name}: {q}");
            }
        }
    }
}

#[test]
fn join_criterion_matches_brute_force_up_to_twelve_vertices() {
    for (name, g) in regular_catalogue(12) {
        let k = g.regular_degree().unwrap() as i64;
        let n = g.order() as i64;
        let lmin = g.lambda_min();
        let Some(lq) = lmin.as_exact().cloned() else {
            continue;
        };
        if lq > int(-1) {
            continue;
        }
        for t in 1..=6 {
            let joined = SmallGraph::complete(t).unwrap().join(&g).unwrap();
            let brute = joined.lambda_min().cmp_root(&lmin) == Ordering::Equal;
            assert_eq!(
                join_clique_preserves_lmin(k, n, &lq, t as i64),
                brute,
                "{name} t={t}"
            );
        }
    }
}

#[test]
fn t_range_consistent_with_hat_rule() {
    for c in 2..=200 {
        let r = t_range(c, -3).unwrap();
        if let TRange::Restricted { t_min, t_max, .. } = r {
            assert_eq!(t_min + t_max, c + 2);
            assert!(!hat_allowed(t_min + 1, c - t_min - 1, -3));
        }
    }
}
