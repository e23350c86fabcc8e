//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use poisson_leaf::catalog::{get_example, random_coupling, EXAMPLE_NAMES};
use poisson_leaf::coupling::{
    extract_geometric_data, horizontal_part, leaf_block, reconstruct, Connection,
};
use poisson_leaf::error::Error;
use poisson_leaf::gauge::{apply_gauge, GaugePotential};
use poisson_leaf::linalg::{identity, mat_mul};
use poisson_leaf::linearize::{
    coboundary_matrix, h1_graded, is_fiberwise_linear, jet_split, linearize_vertical,
    liouville_field, solve_connection_change, truncate, ConnectionChange, LieAlgebraSpec,
};
use poisson_leaf::poisson_laws::{check_conditions, check_splitting};
use poisson_leaf::ratfield::{parse_ratfunc, ChartSpec, Monomial, Poly, RatFunc, Rational};
use poisson_leaf::tensor_calc::{differential, evaluate, pair, schouten, Multivector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn random_poly(rng: &mut ChaCha8Rng, chart: ChartSpec, vars: &[usize], max_degree: u32) -> Poly {
    let terms = (0..rng.gen_range(0..=3)).map(|_| {
        let mut exps = vec![0u32; chart.nvars()];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        (
            Monomial::from_exponents(exps),
            Rational::from_integer(c.into()),
        )
    });
    Poly::from_terms(chart, terms)
}

fn random_multivector(
    rng: &mut ChaCha8Rng,
    chart: ChartSpec,
    on: &[usize],
    k: usize,
    max_degree: u32,
) -> Multivector {
    let all: Vec<usize> = (0..chart.nvars()).collect();
    let mut w = Multivector::zero(chart, k);
    for _ in 0..rng.gen_range(1..=3) {
        let mut idx: Vec<usize> = Vec::new();
        while idx.len() < k {
            let v = on[rng.gen_range(0..on.len())];
            if !idx.contains(&v) {
                idx.push(v);
            }
        }
        let c = random_poly(rng, chart, &all, max_degree);
        w.add_unsorted(&idx, RatFunc::from_poly(c));
    }
    w
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut inputs = Vec::new();
    for seed in 0..20u64 {
        let n = 1 + (seed % 3) as usize;
        inputs.push((
            format!("seed {seed}"),
            random_coupling(seed, 1, n, 2).map_err(err)?,
        ));
    }
    for name in EXAMPLE_NAMES {
        inputs.push((name.to_string(), get_example(name).map_err(err)?.pi));
    }
    let (mut yes, mut no) = (0, 0);
    for (label, pi) in &inputs {
        let data = extract_geometric_data(pi).map_err(err)?;
        let report = check_conditions(&data).map_err(err)?;
        let oracle = schouten(pi, pi).is_zero();
        ensure(report.oracle == oracle, || {
            format!("{label}: report oracle disagrees")
        })?;
        ensure(oracle == report.all_conditions(), || {
            format!(
                "{label}: oracle {oracle}, conditions {}",
                report.all_conditions()
            )
        })?;
        if oracle {
            yes += 1
        } else {
            no += 1
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "{} inputs ({yes} Poisson, {no} not), equivalence exact, {secs:.2}s",
        inputs.len()
    ))
}

fn criterion_2() -> Outcome {
    for seed in 0..20u64 {
        let n = 1 + (seed % 3) as usize;
        let pi = random_coupling(100 + seed, 1, n, 2).map_err(err)?;
        let data = extract_geometric_data(&pi).map_err(err)?;
        let back = reconstruct(&data).map_err(err)?;
        ensure(back == pi, || {
            format!("seed {seed}: reconstruct∘extract ≠ id")
        })?;
        let again = extract_geometric_data(&back).map_err(err)?;
        ensure(again == data, || {
            format!("seed {seed}: extract∘reconstruct ≠ id")
        })?;
        let chart = pi.chart();
        let f: Vec<Vec<RatFunc>> = data
            .leaf_form
            .matrix()
            .iter()
            .map(|row| row.iter().map(|v| v.scale_int(-2)).collect())
            .collect();
        ensure(
            mat_mul(&f, &leaf_block(&pi), chart) == identity(chart.leaf_dim(), chart),
            || format!("seed {seed}: (−2F)·Π^X ≠ Id"),
        )?;
    }
    Ok("20 instances: both round trips and (−2F)·Π^X = Id exact".into())
}

fn criterion_3() -> Outcome {
    let split = |name: &str| -> Result<(bool, bool), String> {
        let pi = get_example(name).map_err(err)?.pi;
        let data = extract_geometric_data(&pi).map_err(err)?;
        let s = check_splitting(&data).map_err(err)?;
        let ph = horizontal_part(&pi).map_err(err)?;
        ensure(s.horizontal_poisson == schouten(&ph, &ph).is_zero(), || {
            format!("{name}: Π_H verdict disagrees with the direct bracket")
        })?;
        Ok((s.flat, s.horizontal_poisson))
    };
    ensure(split("so3_flat")? == (true, true), || "so3_flat".into())?;
    ensure(split("so3_curved")? == (false, false), || {
        "so3_curved".into()
    })?;
    let mut checked = 0;
    for name in EXAMPLE_NAMES {
        let pi = get_example(name).map_err(err)?.pi;
        if schouten(&pi, &pi).is_zero() {
            let (flat, hp) = split(name)?;
            ensure(flat == hp, || {
                format!("{name}: flat {flat}, Π_H Poisson {hp}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "so3_flat flat and [Π_H,Π_H]=0; so3_curved curved and [Π_H,Π_H]≠0; biconditional on {checked} Poisson entries"
    ))
}

fn criterion_4() -> Outcome {
    let flat = extract_geometric_data(&get_example("so3_flat").map_err(err)?.pi).map_err(err)?;
    let chart = flat.chart();
    let r = |s: &str| parse_ratfunc(chart, s).unwrap();
    let phi = GaugePotential::new(chart, vec![r("0"), r("x1*y3")]).map_err(err)?;
    let out = apply_gauge(&flat, &phi).map_err(err)?;
    let curved =
        extract_geometric_data(&get_example("so3_curved").map_err(err)?.pi).map_err(err)?;
    ensure(out == curved, || {
        "gauge image differs from so3_curved".into()
    })?;
    ensure(
        out.conn.rows()[1] == vec![r("-x1*y2"), r("x1*y1"), r("0")]
            && out.conn.rows()[0].iter().all(RatFunc::is_zero)
            && out.leaf_form.get(&[0, 1]) == r("1 + y3"),
        || format!("unexpected closed form: β = {:?}", out.conn.rows()),
    )?;
    let report = check_conditions(&out).map_err(err)?;
    ensure(report.all_conditions() && report.oracle, || {
        "image is not Poisson".into()
    })?;
    ensure(out.vert == flat.vert, || "vertical part changed".into())?;
    let leaf_a = out.leaf_form.get(&[0, 1]).evaluate_on_leaf().map_err(err)?;
    let leaf_b = flat
        .leaf_form
        .get(&[0, 1])
        .evaluate_on_leaf()
        .map_err(err)?;
    ensure(leaf_a == leaf_b, || "leaf restrictions of F differ".into())?;
    Ok("φ = (0, x1·y3): β'_2 = (−x1·y2, x1·y1, 0), F' = 1 + y3; Poisson, same 𝒱, same F on the leaf".into())
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for d in 0..=3 {
        let r = h1_graded(&LieAlgebraSpec::so3(), d);
        ensure(r.dim_h1 == 0, || {
            format!("so(3), d = {d}: dim H¹ = {}", r.dim_h1)
        })?;
    }
    for d in 1..=2 {
        let r = h1_graded(&LieAlgebraSpec::sl2(), d);
        ensure(r.dim_h1 == 0, || {
            format!("sl(2), d = {d}: dim H¹ = {}", r.dim_h1)
        })?;
    }
    for n in 1..=3usize {
        for d in 0..=3u32 {
            let r = h1_graded(&LieAlgebraSpec::abelian(n), d);
            let expected = n as u64 * binomial(n as u64 + d as u64 - 1, d as u64);
            ensure(r.dim_h1 as u64 == expected, || {
                format!(
                    "abelian n = {n}, d = {d}: dim H¹ = {}, expected {expected}",
                    r.dim_h1
                )
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "so(3) d=0..3 and sl(2) d=1,2 vanish; abelian n=1..3, d=0..3 match n·C(n+d−1,d); {secs:.2}s"
    ))
}

fn criterion_6() -> Outcome {
    let ex = get_example("so3_perturbed_deg2").map_err(err)?;
    let vert = extract_geometric_data(&ex.pi).map_err(err)?.vert;
    let linear = LieAlgebraSpec::so3()
        .induced_bivector(ex.chart)
        .map_err(err)?;
    ensure(vert != linear, || {
        "perturbed example is already linear".into()
    })?;
    let res = linearize_vertical(&vert, 4).map_err(err)?;
    ensure(res.success, || {
        format!("linearization failed: {:?}", res.obstruction)
    })?;
    ensure(
        truncate(&res.transformed, 4).map_err(err)? == linear,
        || format!("transformed = {}", res.transformed),
    )?;

    let ab = get_example("abelian_obstructed").map_err(err)?;
    let vert = extract_geometric_data(&ab.pi).map_err(err)?.vert;
    let res = linearize_vertical(&vert, 4).map_err(err)?;
    let obs = res.obstruction.ok_or("abelian case not obstructed")?;
    let v1 = jet_split(&vert).map_err(err)?.part(1);
    ensure(!obs.residual.is_zero(), || "zero residual".into())?;
    ensure(schouten(&v1, &obs.residual).is_zero(), || {
        "residual is not a cocycle".into()
    })?;

    let chart = ChartSpec::new(1, 3).map_err(err)?;
    let fiber: Vec<usize> = chart.fiber_vars().collect();
    let l = liouville_field(chart);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut linear_count = 0;
    for i in 0..10 {
        let w = random_multivector(&mut rng, chart, &fiber, 2, 3);
        let w = if i % 2 == 0 {
            jet_split(&w).map_err(err)?.part(1)
        } else {
            w
        };
        let euler = schouten(&l, &w) == -&w;
        let lin = is_fiberwise_linear(&w).map_err(err)?;
        ensure(euler == lin, || format!("Euler criterion fails on {w}"))?;
        linear_count += lin as usize;
    }
    Ok(format!(
        "so3_perturbed_deg2 recovers 𝒱⁽¹⁾ at D=4 with {} generator(s); abelian obstruction in degree {}; Euler criterion on 10 bivectors ({linear_count} linear)",
        linearize_vertical(&extract_geometric_data(&ex.pi).map_err(err)?.vert, 4)
            .map_err(err)?
            .generators
            .len(),
        obs.degree
    ))
}

fn criterion_7() -> Outcome {
    let data = extract_geometric_data(&get_example("so3_curved").map_err(err)?.pi).map_err(err)?;
    let chart = data.chart();
    let target = Connection::trivial(chart);
    let ConnectionChange::Solved(phi) = solve_connection_change(&data, &target, 4).map_err(err)?
    else {
        return Err("obstructed".into());
    };
    let out = apply_gauge(&data, &phi).map_err(err)?;
    ensure(out.conn == target, || {
        "gauge does not reach the target".into()
    })?;
    let report = check_conditions(&out).map_err(err)?;
    ensure(report.all_conditions(), || {
        "gauge image is not Poisson".into()
    })?;

    let mut beta = vec![vec![RatFunc::zero(chart); 3]; 2];
    beta[0][0] = parse_ratfunc(chart, "y1").map_err(err)?;
    let bad = Connection::new(chart, beta).map_err(err)?;
    let rejected = matches!(
        solve_connection_change(&data, &bad, 4),
        Err(Error::Usage(_))
    );
    ensure(rejected, || {
        "non-cocycle difference was not rejected".into()
    })?;
    Ok(format!(
        "φ = ({}, {}) verified by apply_gauge; non-cocycle difference rejected as usage error",
        phi.component(0),
        phi.component(1)
    ))
}

fn criterion_8() -> Outcome {
    let chart = ChartSpec::new(1, 1).map_err(err)?;
    let all: Vec<usize> = (0..chart.nvars()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let triples = [
        (1, 1, 1),
        (1, 1, 2),
        (2, 1, 1),
        (0, 1, 2),
        (0, 2, 2),
        (1, 2, 1),
    ];
    let mut count = 0;
    for _ in 0..5 {
        for &(ka, kb, kc) in &triples {
            let mut mv = |k: usize| {
                if k == 0 {
                    Multivector::function(RatFunc::from_poly(random_poly(&mut rng, chart, &all, 2)))
                } else {
                    random_multivector(&mut rng, chart, &all, k, 2)
                }
            };
            let (a, b, c) = (mv(ka), mv(kb), mv(kc));
            let s = if (ka + 1) * (kb + 1) % 2 == 0 { 1 } else { -1 };
            let lhs = schouten(&a, &schouten(&b, &c));
            let rhs =
                &schouten(&schouten(&a, &b), &c) + &schouten(&b, &schouten(&a, &c)).scale_int(s);
            ensure(lhs == rhs, || {
                format!("graded Jacobi fails for degrees ({ka},{kb},{kc})")
            })?;
            count += 1;
        }
    }

    let chart = ChartSpec::new(1, 2).map_err(err)?;
    let all: Vec<usize> = (0..chart.nvars()).collect();
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..10 {
        let w = random_multivector(&mut rng, chart, &all, 2, 2);
        let fs: Vec<RatFunc> = (0..3)
            .map(|_| RatFunc::from_poly(random_poly(&mut rng, chart, &all, 2)))
            .collect();
        let br = |a: &RatFunc, b: &RatFunc| pair(&w, &differential(a), &differential(b));
        let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
        let jac = &(&br(f, &br(g, h)) + &br(g, &br(h, f))) + &br(h, &br(f, g));
        let ww = schouten(&w, &w);
        let lhs = evaluate(&ww, &[differential(f), differential(g), differential(h)]).scale(&half);
        ensure(lhs == jac, || format!("Jacobiator identity fails for {w}"))?;
    }

    let q = |v: i64| Rational::from_integer(v.into());
    let algebras = [
        LieAlgebraSpec::so3(),
        LieAlgebraSpec::sl2(),
        LieAlgebraSpec::abelian(3),
        LieAlgebraSpec::new(2, [(0, 1, 1, q(1))]).map_err(err)?,
        LieAlgebraSpec::new(3, [(0, 1, 2, q(1))]).map_err(err)?,
    ];
    for g in &algebras {
        for d in 0..=3 {
            let m = coboundary_matrix(g, d, 1).mul(&coboundary_matrix(g, d, 0));
            ensure(m.is_zero(), || format!("δ² ≠ 0 for {g:?} at degree {d}"))?;
        }
    }
    Ok(format!(
        "graded Jacobi on {count} triples, Jacobiator identity on 10 bivectors, δ² = 0 for {} algebras at d=0..3",
        algebras.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("coupling conditions ⟺ [Π,Π] = 0", criterion_1),
        ("extract/reconstruct round trips and F duality", criterion_2),
        ("flat connection ⟺ Π_H Poisson", criterion_3),
        ("gauge transformation so3_flat → so3_curved", criterion_4),
        ("graded first cohomology", criterion_5),
        ("linearization of the vertical part", criterion_6),
        ("connection change", criterion_7),
        ("Schouten calculus and δ² = 0", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
