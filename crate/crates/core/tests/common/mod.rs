#![allow(dead_code)]

use poisson_leaf::ratfield::{ChartSpec, Monomial, Poly, RatFunc, Rational};
use poisson_leaf::tensor_calc::Multivector;
use proptest::prelude::*;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Sparse polynomial of total degree at most `max_degree` in `vars`.
pub fn poly_in(
    chart: ChartSpec,
    vars: Vec<usize>,
    max_degree: u32,
    max_terms: usize,
) -> impl Strategy<Value = Poly> {
    let nv = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, nv), -3i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, c)| {
            let mut exps = vec![0u32; chart.nvars()];
            let mut budget = max_degree;
            for (&v, &k) in vars.iter().zip(&e) {
                let k = k.min(budget);
                exps[v] += k;
                budget -= k;
            }
            (Monomial::from_exponents(exps), q(c))
        });
        Poly::from_terms(chart, terms)
    })
}

pub fn poly(chart: ChartSpec, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_in(chart, (0..chart.nvars()).collect(), max_degree, max_terms)
}

pub fn func(chart: ChartSpec, max_degree: u32) -> impl Strategy<Value = RatFunc> {
    poly(chart, max_degree, 3).prop_map(RatFunc::from_poly)
}

/// Nonzero rational function `p / (1 + q)` with small numerator and denominator.
pub fn ratfunc(chart: ChartSpec) -> impl Strategy<Value = RatFunc> {
    (poly(chart, 2, 3), poly(chart, 1, 2)).prop_map(move |(n, d)| {
        let d = &Poly::one(chart) + &d;
        if d.is_zero() {
            RatFunc::from_poly(n)
        } else {
            RatFunc::new(n, d)
        }
    })
}

/// Degree-`k` multivector on the variables `vars`, polynomial coefficients.
pub fn multivector_on(
    chart: ChartSpec,
    vars: Vec<usize>,
    k: usize,
    max_degree: u32,
) -> impl Strategy<Value = Multivector> {
    let coeff_vars: Vec<usize> = (0..chart.nvars()).collect();
    prop::collection::vec(
        (
            prop::sample::subsequence(vars.clone(), k),
            poly_in(chart, coeff_vars, max_degree, 2),
        ),
        0..=3,
    )
    .prop_map(move |terms| {
        let mut w = Multivector::zero(chart, k);
        for (idx, c) in terms {
            w.add_term(idx, RatFunc::from_poly(c));
        }
        w
    })
}

pub fn multivector(
    chart: ChartSpec,
    k: usize,
    max_degree: u32,
) -> impl Strategy<Value = Multivector> {
    multivector_on(chart, (0..chart.nvars()).collect(), k, max_degree)
}

/// Renames `y_k` to `y_perm[k]` everywhere.
pub fn permute_fiber(w: &Multivector, perm: &[usize]) -> Multivector {
    let chart = w.chart();
    let map = |v: usize| {
        if chart.is_fiber_var(v) {
            chart.y(perm[v - chart.leaf_dim()])
        } else {
            v
        }
    };
    let poly = |p: &Poly| {
        Poly::from_terms(
            chart,
            p.terms().map(|(m, c)| {
                let mut exps = vec![0u32; chart.nvars()];
                for (v, &e) in m.exponents().iter().enumerate() {
                    exps[map(v)] = e;
                }
                (Monomial::from_exponents(exps), c.clone())
            }),
        )
    };
    let mut out = Multivector::zero(chart, w.degree());
    for (idx, c) in w.terms() {
        let idx: Vec<usize> = idx.iter().map(|&v| map(v)).collect();
        out.add_unsorted(&idx, RatFunc::new(poly(c.numer()), poly(c.denom())));
    }
    out
}
