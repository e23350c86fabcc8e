mod common;

use common::*;
use poisson_leaf::catalog::{get_example, random_coupling};
use poisson_leaf::coupling::{extract_geometric_data, leaf_block, reconstruct};
use poisson_leaf::error::Error;
use poisson_leaf::gauge::{apply_gauge, GaugePotential};
use poisson_leaf::linalg::{identity, mat_mul};
use poisson_leaf::linearize::{
    coboundary_matrix, is_fiberwise_linear, jet_split, liouville_field, LieAlgebraSpec,
};
use poisson_leaf::poisson_laws::check_conditions;
use poisson_leaf::ratfield::{parse_ratfunc, ChartSpec, RatFunc};
use poisson_leaf::tensor_calc::{differential, evaluate, pair, schouten, sharp, Multivector};
use proptest::prelude::*;

fn small() -> ChartSpec {
    ChartSpec::new(1, 1).unwrap()
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(
        a in poly(small(), 2, 3),
        b in poly(small(), 2, 3),
        c in poly(small(), 2, 3),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &a), &poisson_leaf::ratfield::Poly::zero(small()));
    }

    #[test]
    fn rational_field_axioms(a in ratfunc(small()), b in ratfunc(small()), c in ratfunc(small())) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.checked_recip().unwrap()).is_one());
        }
    }

    #[test]
    fn leibniz_rule(a in ratfunc(small()), b in ratfunc(small()), var in 0usize..3) {
        let lhs = (&a * &b).partial(var);
        let rhs = &(&a.partial(var) * &b) + &(&a * &b.partial(var));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip(a in ratfunc(ChartSpec::new(1, 2).unwrap())) {
        let back = parse_ratfunc(a.chart(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn schouten_graded_antisymmetry(
        (a, b) in (0usize..=2, 1usize..=2).prop_flat_map(|(ka, kb)| {
            (multivector(small(), ka, 2), multivector(small(), kb, 2))
        })
    ) {
        let (ka, kb) = (a.degree(), b.degree());
        let lhs = schouten(&a, &b);
        let rhs = schouten(&b, &a).scale_int(-sign((ka + 1) * (kb + 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(
        (a, b, c) in prop::sample::select(vec![
            (1usize, 1usize, 1usize), (1, 1, 2), (1, 2, 1), (2, 1, 1),
            (0, 1, 1), (1, 0, 2), (2, 2, 0), (0, 1, 3), (0, 2, 2),
        ])
        .prop_flat_map(|(ka, kb, kc)| {
            (multivector(small(), ka, 1), multivector(small(), kb, 1), multivector(small(), kc, 1))
        })
    ) {
        let (ka, kb) = (a.degree(), b.degree());
        // [A,[B,C]] = [[A,B],C] + (−1)^{(a−1)(b−1)} [B,[A,C]]
        let lhs = schouten(&a, &schouten(&b, &c));
        let rhs = &schouten(&schouten(&a, &b), &c)
            + &schouten(&b, &schouten(&a, &c)).scale_int(sign((ka + 1) * (kb + 1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_field_commutator(x in multivector(small(), 1, 2), y in multivector(small(), 1, 2)) {
        let chart = small();
        let mut direct = Multivector::zero(chart, 1);
        for b in 0..chart.nvars() {
            let c = &x.apply(&y.component(b)) - &y.apply(&x.component(b));
            direct.add_term(vec![b], c);
        }
        prop_assert_eq!(schouten(&x, &y), direct);
    }

    #[test]
    fn sharp_is_hamiltonian(w in multivector(small(), 2, 2), f in func(small(), 2), g in func(small(), 2)) {
        let lhs = sharp(&w, &differential(&f)).apply(&g);
        prop_assert_eq!(lhs, pair(&w, &differential(&f), &differential(&g)));
    }

    #[test]
    fn jacobiator_identity(
        w in multivector(ChartSpec::new(1, 2).unwrap(), 2, 2),
        f in func(ChartSpec::new(1, 2).unwrap(), 2),
        g in func(ChartSpec::new(1, 2).unwrap(), 2),
        h in func(ChartSpec::new(1, 2).unwrap(), 2),
    ) {
        let br = |a: &RatFunc, b: &RatFunc| pair(&w, &differential(a), &differential(b));
        let jac = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        let ww = schouten(&w, &w);
        let lhs = evaluate(&ww, &[differential(&f), differential(&g), differential(&h)])
            .scale(&poisson_leaf::ratfield::Rational::new(1.into(), 2.into()));
        prop_assert_eq!(lhs, jac);
    }

    #[test]
    fn closed_bivector_formula(w in multivector(ChartSpec::new(1, 2).unwrap(), 2, 2)) {
        let chart = w.chart();
        let m = chart.nvars();
        let pi = |a: usize, b: usize| {
            let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
            if a == b { RatFunc::zero(chart) } else { w.coeff(&[lo, hi]).scale_int(s) }
        };
        let ww = schouten(&w, &w);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut s = RatFunc::zero(chart);
                    for l in 0..m {
                        s = &s + &(&pi(i, l) * &pi(j, k).partial(l));
                        s = &s + &(&pi(j, l) * &pi(k, i).partial(l));
                        s = &s + &(&pi(k, l) * &pi(i, j).partial(l));
                    }
                    prop_assert_eq!(ww.coeff(&[i, j, k]), s.scale_int(2));
                }
            }
        }
    }

    #[test]
    fn euler_grading(
        d in 0u32..=4,
        w in multivector_on(ChartSpec::new(1, 2).unwrap(), vec![2, 3], 2, 4),
        x in multivector_on(ChartSpec::new(1, 2).unwrap(), vec![2, 3], 1, 4),
    ) {
        let l = liouville_field(w.chart());
        let w = jet_split(&w).unwrap().part(d);
        let x = jet_split(&x).unwrap().part(d);
        prop_assert_eq!(schouten(&l, &w), w.scale_int(d as i64 - 2));
        prop_assert_eq!(schouten(&l, &x), x.scale_int(d as i64 - 1));
    }

    #[test]
    fn euler_criterion(
        linear_only in any::<bool>(),
        w in multivector_on(ChartSpec::new(1, 3).unwrap(), vec![2, 3, 4], 2, 3),
    ) {
        let w = if linear_only { jet_split(&w).unwrap().part(1) } else { w };
        let l = liouville_field(w.chart());
        prop_assert_eq!(schouten(&l, &w) == -&w, is_fiberwise_linear(&w).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trips_and_duality(seed in any::<u64>(), n in 1usize..=3) {
        let pi = random_coupling(seed, 1, n, 2).unwrap();
        let data = extract_geometric_data(&pi).unwrap();
        prop_assert_eq!(&reconstruct(&data).unwrap(), &pi);
        prop_assert_eq!(extract_geometric_data(&reconstruct(&data).unwrap()).unwrap(), data.clone());
        let chart = pi.chart();
        let f: Vec<Vec<RatFunc>> = data
            .leaf_form
            .matrix()
            .iter()
            .map(|row| row.iter().map(|v| v.scale_int(-2)).collect())
            .collect();
        prop_assert_eq!(mat_mul(&f, &leaf_block(&pi), chart), identity(chart.leaf_dim(), chart));
    }

    #[test]
    fn conditions_match_oracle(seed in any::<u64>(), n in 1usize..=3) {
        let pi = random_coupling(seed, 1, n, 2).unwrap();
        let report = check_conditions(&extract_geometric_data(&pi).unwrap()).unwrap();
        prop_assert!(report.consistent(), "{}", pi);
    }

    #[test]
    fn conditions_invariant_under_fiber_relabeling(
        seed in any::<u64>(),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let pi = random_coupling(seed, 1, 3, 2).unwrap();
        let a = check_conditions(&extract_geometric_data(&pi).unwrap()).unwrap();
        let b = check_conditions(&extract_geometric_data(&permute_fiber(&pi, &perm)).unwrap()).unwrap();
        prop_assert_eq!(a.cond_i, b.cond_i);
        prop_assert_eq!(a.cond_ii, b.cond_ii);
        prop_assert_eq!(a.cond_iii, b.cond_iii);
        prop_assert_eq!(a.cond_iv, b.cond_iv);
        prop_assert_eq!(a.oracle, b.oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gauge_preserves_poisson(
        name in prop::sample::select(vec!["so3_flat", "so3_curved", "sl2_flat"]),
        p1 in poly(ChartSpec::new(1, 3).unwrap(), 2, 2),
        p2 in poly(ChartSpec::new(1, 3).unwrap(), 2, 2),
    ) {
        let data = extract_geometric_data(&get_example(name).unwrap().pi).unwrap();
        let phi = GaugePotential::new(
            data.chart(),
            vec![RatFunc::from_poly(p1), RatFunc::from_poly(p2)],
        )
        .unwrap();
        match apply_gauge(&data, &phi) {
            Ok(out) => {
                prop_assert_eq!(&out.vert, &data.vert);
                let report = check_conditions(&out).unwrap();
                prop_assert!(report.all_conditions() && report.oracle);
            }
            Err(Error::DataDegeneracy) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    let q = |v: i64| poisson_leaf::ratfield::Rational::from_integer(v.into());
    let algebras = [
        LieAlgebraSpec::so3(),
        LieAlgebraSpec::sl2(),
        LieAlgebraSpec::abelian(3),
        LieAlgebraSpec::new(2, [(0, 1, 1, q(1))]).unwrap(),
        LieAlgebraSpec::new(3, [(0, 1, 2, q(1))]).unwrap(),
    ];
    for g in &algebras {
        for d in 0..=3 {
            let m = coboundary_matrix(g, d, 1).mul(&coboundary_matrix(g, d, 0));
            assert!(m.is_zero(), "{g:?} at degree {d}");
        }
    }
}

#[test]
fn random_coupling_produces_both_outcomes() {
    let mut seen = [false; 2];
    for seed in 0..100 {
        let pi = random_coupling(seed, 1, 1 + (seed % 3) as usize, 2).unwrap();
        seen[schouten(&pi, &pi).is_zero() as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn gauge_composes_additively_without_vertical_part() {
    let chart = ChartSpec::new(1, 2).unwrap();
    let pi = random_coupling(11, 1, 2, 2).unwrap();
    let mut data = extract_geometric_data(&pi).unwrap();
    data.vert = Multivector::zero(chart, 2);
    let r = |s: &str| parse_ratfunc(chart, s).unwrap();
    let phi = GaugePotential::new(chart, vec![r("x2*y1"), r("x1^2")]).unwrap();
    let psi = GaugePotential::new(chart, vec![r("y2"), r("3*x1*x2")]).unwrap();
    let sum = GaugePotential::new(chart, vec![r("x2*y1 + y2"), r("x1^2 + 3*x1*x2")]).unwrap();
    let twice = apply_gauge(&apply_gauge(&data, &phi).unwrap(), &psi).unwrap();
    assert_eq!(twice.leaf_form, apply_gauge(&data, &sum).unwrap().leaf_form);
    assert_eq!(
        apply_gauge(&data, &GaugePotential::zero(chart)).unwrap(),
        data
    );
}
