//! A gauge transformation by φ = (0, x1·y3) turns the flat so(3) coupling
//! into a curved one with the same vertical part.

use poisson_leaf::catalog::get_example;
use poisson_leaf::coupling::extract_geometric_data;
use poisson_leaf::error::Result;
use poisson_leaf::gauge::{apply_gauge, check_gauge_hypotheses, GaugePotential};
use poisson_leaf::poisson_laws::check_conditions;
use poisson_leaf::ratfield::parse_ratfunc;

fn main() -> Result<()> {
    let flat = extract_geometric_data(&get_example("so3_flat")?.pi)?;
    let chart = flat.chart();
    let phi = GaugePotential::new(
        chart,
        vec![parse_ratfunc(chart, "0")?, parse_ratfunc(chart, "x1*y3")?],
    )?;
    let curved = apply_gauge(&flat, &phi)?;
    println!(
        "β'_2 = ({})",
        curved.conn.rows()[1]
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("F'_12 = {}", curved.leaf_form.get(&[0, 1]));
    assert_eq!(curved.vert, flat.vert);
    assert!(check_conditions(&curved)?.all_conditions());
    assert!(check_gauge_hypotheses(&flat, &curved, &phi)?);

    let expected = extract_geometric_data(&get_example("so3_curved")?.pi)?;
    assert_eq!(curved, expected);
    println!("matches the so3_curved catalog entry; Poisson, same 𝒱, same F on the leaf");

    let wild = GaugePotential::new(
        chart,
        vec![
            parse_ratfunc(chart, "y1^2")?,
            parse_ratfunc(chart, "x2*y2*y3")?,
        ],
    )?;
    let out = apply_gauge(&curved, &wild)?;
    println!(
        "after φ = (y1^2, x2*y2*y3): F'_12 = {}",
        out.leaf_form.get(&[0, 1])
    );
    assert!(check_conditions(&out)?.oracle);
    Ok(())
}
