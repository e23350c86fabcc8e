//! For a Poisson coupling, Γ is flat exactly when the horizontal part Π_H is
//! itself Poisson.

use poisson_leaf::catalog::get_example;
use poisson_leaf::coupling::{extract_geometric_data, horizontal_part};
use poisson_leaf::error::Result;
use poisson_leaf::poisson_laws::{check_splitting, curvature};
use poisson_leaf::tensor_calc::schouten;

fn main() -> Result<()> {
    for name in ["so3_flat", "so3_curved"] {
        let pi = get_example(name)?.pi;
        let data = extract_geometric_data(&pi)?;
        let split = check_splitting(&data)?;
        let ph = horizontal_part(&pi)?;
        println!("{name}");
        println!("  Curv(∂x1, ∂x2) = {}", curvature(&data.conn, 0, 1)?);
        println!("  Π_H = {ph}");
        println!("  [Π_H, Π_H] = {}", schouten(&ph, &ph));
        println!(
            "  flat {} / Π_H Poisson {}",
            split.flat, split.horizontal_poisson
        );
        assert!(split.consistent());
    }
    Ok(())
}
