//! The four coupling conditions against the brute-force test [Π,Π] = 0, on
//! catalog entries and on seeded random couplings.

use poisson_leaf::catalog::{get_example, random_coupling, EXAMPLE_NAMES};
use poisson_leaf::coupling::extract_geometric_data;
use poisson_leaf::error::Result;
use poisson_leaf::poisson_laws::check_conditions;

fn main() -> Result<()> {
    for name in EXAMPLE_NAMES {
        let data = extract_geometric_data(&get_example(name)?.pi)?;
        let r = check_conditions(&data)?;
        println!(
            "{name:20} (i) {} (ii) {:?} (iii) {} (iv) {} oracle {}",
            r.cond_i,
            r.cond_ii,
            r.cond_iii,
            r.cond_iv.iter().all(|p| p.holds),
            r.oracle
        );
        assert!(r.consistent());
    }

    let mut poisson = 0;
    for seed in 0..20 {
        let pi = random_coupling(seed, 1, 1 + seed as usize % 3, 2)?;
        let r = check_conditions(&extract_geometric_data(&pi)?)?;
        assert!(r.consistent(), "seed {seed}");
        poisson += r.oracle as usize;
        if let Some((i, j, w)) = r.residuals.curvature.first() {
            println!(
                "seed {seed}: (iv) fails for ({}, {}), residual {w}",
                i + 1,
                j + 1
            );
        }
    }
    println!("random couplings: {poisson}/20 Poisson, conditions agree with the oracle on all");
    Ok(())
}
