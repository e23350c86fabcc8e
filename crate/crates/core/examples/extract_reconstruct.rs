//! Split a horizontally non-degenerate bivector into (β, 𝒱, F) and put it
//! back together.

use poisson_leaf::catalog::random_coupling;
use poisson_leaf::coupling::{extract_geometric_data, leaf_block, reconstruct};
use poisson_leaf::error::Result;
use poisson_leaf::linalg::{identity, mat_mul};
use poisson_leaf::ratfield::RatFunc;

fn main() -> Result<()> {
    let pi = random_coupling(7, 1, 2, 2)?;
    println!("Π = {pi}");

    let data = extract_geometric_data(&pi)?;
    for (i, row) in data.conn.rows().iter().enumerate() {
        let row: Vec<String> = row.iter().map(|b| b.to_string()).collect();
        println!("β_{} = ({})", i + 1, row.join(", "));
    }
    println!("𝒱 = {}", data.vert);
    println!("F = {}", data.leaf_form);

    let back = reconstruct(&data)?;
    assert_eq!(back, pi);
    println!("reconstruct(extract(Π)) = Π");

    let chart = pi.chart();
    let minus_two = RatFunc::from_int(chart, -2);
    let f: Vec<Vec<RatFunc>> = data
        .leaf_form
        .matrix()
        .iter()
        .map(|row| row.iter().map(|v| v * &minus_two).collect())
        .collect();
    let product = mat_mul(&f, &leaf_block(&pi), chart);
    assert_eq!(product, identity(chart.leaf_dim(), chart));
    println!("(−2F)·Π^X = Id");
    Ok(())
}
