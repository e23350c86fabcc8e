//! Named chart-level structures with their expected properties, and a seeded
//! generator of random horizontally non-degenerate bivectors.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coupling::{extract_geometric_data, is_horizontally_nondegenerate};
use crate::error::{Error, Result};
use crate::gauge::{apply_gauge, GaugePotential};
use crate::linearize::{
    h1_graded, is_fiberwise_linear, linearize_vertical, pushforward, LieAlgebraSpec,
};
use crate::poisson_laws::{check_conditions, check_splitting};
use crate::ratfield::{rat, ChartSpec, Monomial, Poly, RatFunc};
use crate::tensor_calc::{schouten, wedge, Multivector};

/// Names accepted by [`get_example`].
pub const EXAMPLE_NAMES: [&str; 6] = [
    "symplectic2",
    "so3_flat",
    "so3_curved",
    "so3_perturbed_deg2",
    "abelian_obstructed",
    "sl2_flat",
];

/// A catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedExample {
    pub name: String,
    pub chart: ChartSpec,
    pub pi: Multivector,
    /// Property name to expected verdict; see [`verify_example`].
    pub expected: BTreeMap<String, bool>,
    /// Linear part of the vertical structure, when it comes from a Lie algebra.
    pub lie_algebra: Option<LieAlgebraSpec>,
    /// An entry this one is obtained from by a gauge transformation.
    pub gauge_partner: Option<(String, GaugePotential)>,
}

fn symplectic(chart: ChartSpec) -> Multivector {
    let mut p = Multivector::zero(chart, 2);
    for a in 0..chart.s {
        p.add_term(
            vec![chart.x(2 * a), chart.x(2 * a + 1)],
            RatFunc::one(chart),
        );
    }
    p
}

fn so3_chart() -> ChartSpec {
    ChartSpec::new(1, 3).expect("valid chart")
}

/// Quadratic generator used for the perturbed example: the flow of
/// `y2² ∂y1` is `y1 ↦ y1 + t y2²`, so its adjoint series terminates.
pub fn perturbation_generator(chart: ChartSpec) -> Multivector {
    let y2 = RatFunc::var(chart, chart.y(1));
    Multivector::basis(chart, &[chart.y(0)], y2.pow(2))
}

fn expected(pairs: &[(&str, bool)]) -> BTreeMap<String, bool> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Looks up a catalog entry by name.
pub fn get_example(name: &str) -> Result<NamedExample> {
    let so3 = LieAlgebraSpec::so3();
    let ex = match name {
        "symplectic2" => {
            let chart = ChartSpec::new(1, 1)?;
            NamedExample {
                name: name.into(),
                chart,
                pi: symplectic(chart),
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", true),
                    ("horizontal_poisson", true),
                ]),
                lie_algebra: None,
                gauge_partner: None,
            }
        }
        "so3_flat" => {
            let chart = so3_chart();
            NamedExample {
                name: name.into(),
                chart,
                pi: &symplectic(chart) + &so3.induced_bivector(chart)?,
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", true),
                    ("horizontal_poisson", true),
                    ("fiberwise_linear", true),
                    ("linearizable_d4", true),
                    ("h1_vanishes_d0_3", true),
                ]),
                lie_algebra: Some(so3),
                gauge_partner: None,
            }
        }
        "so3_curved" => {
            let chart = so3_chart();
            let flat = extract_geometric_data(&get_example("so3_flat")?.pi)?;
            let x1 = RatFunc::var(chart, chart.x(0));
            let y3 = RatFunc::var(chart, chart.y(2));
            let phi = GaugePotential::new(chart, vec![RatFunc::zero(chart), &x1 * &y3])?;
            let data = apply_gauge(&flat, &phi)?;
            NamedExample {
                name: name.into(),
                chart,
                pi: crate::coupling::reconstruct(&data)?,
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", false),
                    ("horizontal_poisson", false),
                    ("fiberwise_linear", true),
                    ("gauge_equivalent", true),
                ]),
                lie_algebra: Some(so3),
                gauge_partner: Some(("so3_flat".into(), phi)),
            }
        }
        "so3_perturbed_deg2" => {
            let chart = so3_chart();
            let v1 = so3.induced_bivector(chart)?;
            let vert = pushforward(&perturbation_generator(chart), &v1, 4)?;
            NamedExample {
                name: name.into(),
                chart,
                pi: &symplectic(chart) + &vert,
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", true),
                    ("horizontal_poisson", true),
                    ("fiberwise_linear", false),
                    ("linearizable_d4", true),
                ]),
                lie_algebra: Some(so3),
                gauge_partner: None,
            }
        }
        "abelian_obstructed" => {
            let chart = ChartSpec::new(1, 2)?;
            let y1 = RatFunc::var(chart, chart.y(0));
            let vert = Multivector::basis(chart, &[chart.y(0), chart.y(1)], y1.pow(2));
            NamedExample {
                name: name.into(),
                chart,
                pi: &symplectic(chart) + &vert,
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", true),
                    ("horizontal_poisson", true),
                    ("fiberwise_linear", false),
                    ("linearizable_d4", false),
                ]),
                lie_algebra: Some(LieAlgebraSpec::abelian(2)),
                gauge_partner: None,
            }
        }
        "sl2_flat" => {
            let chart = so3_chart();
            let sl2 = LieAlgebraSpec::sl2();
            NamedExample {
                name: name.into(),
                chart,
                pi: &symplectic(chart) + &sl2.induced_bivector(chart)?,
                expected: expected(&[
                    ("poisson", true),
                    ("conditions", true),
                    ("flat", true),
                    ("horizontal_poisson", true),
                    ("fiberwise_linear", true),
                    ("linearizable_d4", true),
                    ("h1_vanishes_d1_2", true),
                ]),
                lie_algebra: Some(sl2),
                gauge_partner: None,
            }
        }
        _ => return Err(Error::UnknownExample(name.to_string())),
    };
    Ok(ex)
}

/// One checked property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub property: String,
    pub expected: bool,
    pub actual: bool,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Recomputes every property in the expected map.
pub fn verify_example(ex: &NamedExample) -> Result<Vec<PropertyCheck>> {
    let data = extract_geometric_data(&ex.pi)?;
    let mut out = Vec::new();
    for (property, &expected) in &ex.expected {
        let actual = match property.as_str() {
            "poisson" => schouten(&ex.pi, &ex.pi).is_zero(),
            "conditions" => check_conditions(&data)?.all_conditions(),
            "flat" => check_splitting(&data)?.flat,
            "horizontal_poisson" => check_splitting(&data)?.horizontal_poisson,
            "fiberwise_linear" => is_fiberwise_linear(&data.vert)?,
            "linearizable_d4" => linearize_vertical(&data.vert, 4)?.success,
            "h1_vanishes_d0_3" => h1_vanishes(ex, 0..=3)?,
            "h1_vanishes_d1_2" => h1_vanishes(ex, 1..=2)?,
            "gauge_equivalent" => {
                let (partner, phi) = ex
                    .gauge_partner
                    .as_ref()
                    .ok_or_else(|| Error::usage("no gauge partner recorded"))?;
                let base = extract_geometric_data(&get_example(partner)?.pi)?;
                apply_gauge(&base, phi)? == data
            }
            other => return Err(Error::usage(format!("unknown property {other:?}"))),
        };
        out.push(PropertyCheck {
            property: property.clone(),
            expected,
            actual,
        });
    }
    Ok(out)
}

fn h1_vanishes(ex: &NamedExample, degrees: std::ops::RangeInclusive<u32>) -> Result<bool> {
    let g = ex
        .lie_algebra
        .as_ref()
        .ok_or_else(|| Error::usage("no Lie algebra recorded"))?;
    Ok(degrees.into_iter().all(|d| h1_graded(g, d).dim_h1 == 0))
}

fn small_coeff(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Sparse polynomial in `vars` of total degree at most `max_degree`.
fn random_poly(
    rng: &mut ChaCha8Rng,
    chart: ChartSpec,
    vars: &[usize],
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    let terms = rng.gen_range(0..=max_terms);
    let mut p = Poly::zero(chart);
    for _ in 0..terms {
        let mut exps = vec![0u32; chart.nvars()];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            if vars.is_empty() {
                break;
            }
            exps[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        let c = Poly::term(chart, Monomial::from_exponents(exps), rat(small_coeff(rng)));
        p = &p + &c;
    }
    p
}

/// `c · m` with `m` a monomial of degree `1..=max_degree`.
fn random_monomial(
    rng: &mut ChaCha8Rng,
    chart: ChartSpec,
    vars: &[usize],
    max_degree: u32,
) -> Poly {
    let mut exps = vec![0u32; chart.nvars()];
    for _ in 0..rng.gen_range(1..=max_degree) {
        exps[vars[rng.gen_range(0..vars.len())]] += 1;
    }
    Poly::term(chart, Monomial::from_exponents(exps), rat(small_coeff(rng)))
}

fn random_sparse(rng: &mut ChaCha8Rng, chart: ChartSpec, max_degree: u32) -> Multivector {
    let all: Vec<usize> = (0..chart.nvars()).collect();
    let mut p = Multivector::zero(chart, 2);
    for a in 0..chart.nvars() {
        for b in a + 1..chart.nvars() {
            if rng.gen_bool(0.5) {
                let c = &random_poly(rng, chart, &all, max_degree, 1)
                    + &random_monomial(rng, chart, &all, max_degree.max(1));
                p.add_term(vec![a, b], RatFunc::from_poly(c));
            }
        }
    }
    p
}

/// `Σ c_a X_{2a}∧X_{2a+1} + f ∂y_k∧∂y_l` with pairwise commuting lifts
/// `X_i = ∂x_i + Σ_k u_{ik}(x_i) ∂y_k`; Poisson by construction.
fn random_commuting(rng: &mut ChaCha8Rng, chart: ChartSpec, max_degree: u32) -> Multivector {
    let lifts: Vec<Multivector> = (0..chart.leaf_dim())
        .map(|i| {
            let mut x = Multivector::coordinate_field(chart, chart.x(i));
            for k in 0..chart.n {
                let u = random_poly(rng, chart, &[chart.x(i)], 1, 1);
                x.add_term(vec![chart.y(k)], RatFunc::from_poly(u));
            }
            x
        })
        .collect();
    let mut p = Multivector::zero(chart, 2);
    let leaf: Vec<usize> = chart.leaf_vars().collect();
    for a in 0..chart.s {
        let mut f = random_poly(rng, chart, &leaf, max_degree.saturating_sub(2), 1);
        if chart.s == 1 && chart.n == 1 {
            // rank two everywhere, so any coefficient is allowed
            f = &f * &random_poly(rng, chart, &[chart.y(0)], 1, 1);
        }
        let f = &f + &Poly::from_int(chart, small_coeff(rng));
        if f.is_zero() {
            continue;
        }
        let pair = wedge(&lifts[2 * a], &lifts[2 * a + 1]);
        p = &p + &pair.scale(&RatFunc::from_poly(f));
    }
    if chart.n >= 2 && rng.gen_bool(0.5) {
        let k = rng.gen_range(0..chart.n - 1);
        let c = RatFunc::from_int(chart, small_coeff(rng));
        p.add_term(vec![chart.y(k), chart.y(k + 1)], c);
    }
    p
}

/// Reproducible horizontally non-degenerate bivector on the chart `(s, n)`
/// with small integer polynomial coefficients. Roughly a third of the
/// outputs are Poisson by construction; the others are random or perturbed
/// and usually are not.
pub fn random_coupling(seed: u64, s: usize, n: usize, max_degree: u32) -> Result<Multivector> {
    let chart = ChartSpec::new(s, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let p = match rng.gen_range(0..3) {
            0 => random_sparse(&mut rng, chart, max_degree),
            1 => random_commuting(&mut rng, chart, max_degree),
            _ => {
                let base = random_commuting(&mut rng, chart, max_degree);
                let a = rng.gen_range(0..chart.nvars());
                let b = (a + 1 + rng.gen_range(0..chart.nvars() - 1)) % chart.nvars();
                let all: Vec<usize> = (0..chart.nvars()).collect();
                let bump = random_monomial(&mut rng, chart, &all, max_degree.max(1));
                let mut extra = Multivector::zero(chart, 2);
                extra.add_unsorted(&[a, b], RatFunc::from_poly(bump));
                &base + &extra
            }
        };
        if is_horizontally_nondegenerate(&p) {
            return Ok(p);
        }
    }
}
