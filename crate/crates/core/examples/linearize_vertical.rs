//! Degree-by-degree removal of the nonlinear jets of a vertical Poisson
//! structure, and an obstructed case.

use poisson_leaf::catalog::get_example;
use poisson_leaf::coupling::extract_geometric_data;
use poisson_leaf::error::Result;
use poisson_leaf::linearize::{
    is_fiberwise_linear, jet_split, linearize_vertical, liouville_field, LieAlgebraSpec,
};
use poisson_leaf::tensor_calc::schouten;

fn main() -> Result<()> {
    let data = extract_geometric_data(&get_example("so3_perturbed_deg2")?.pi)?;
    let jets = jet_split(&data.vert)?;
    for (d, part) in jets.parts() {
        println!("𝒱 degree {d}: {part}");
    }
    let res = linearize_vertical(&data.vert, 4)?;
    for (m, z) in res.generators.iter().enumerate() {
        println!("generator {}: {z}", m + 1);
    }
    println!("transformed: {}", res.transformed);
    let linear = LieAlgebraSpec::so3().induced_bivector(data.chart())?;
    assert!(res.success && res.transformed == linear);

    let data = extract_geometric_data(&get_example("abelian_obstructed")?.pi)?;
    let res = linearize_vertical(&data.vert, 4)?;
    let obs = res.obstruction.expect("abelian case is obstructed");
    println!(
        "abelian_obstructed: obstruction in degree {}: {}",
        obs.degree, obs.residual
    );

    // fiberwise linear exactly when [L, 𝒱] = −𝒱
    for name in ["so3_flat", "so3_perturbed_deg2", "abelian_obstructed"] {
        let v = extract_geometric_data(&get_example(name)?.pi)?.vert;
        let euler = schouten(&liouville_field(v.chart()), &v) == -&v;
        println!(
            "{name:20} [L,𝒱] = −𝒱: {euler:5}  fiberwise linear: {}",
            is_fiberwise_linear(&v)?
        );
    }
    Ok(())
}
