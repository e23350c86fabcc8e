//! Find the gauge potential that moves the curved so(3) connection back to
//! the trivial one.

use poisson_leaf::catalog::get_example;
use poisson_leaf::coupling::{extract_geometric_data, Connection};
use poisson_leaf::error::Result;
use poisson_leaf::gauge::apply_gauge;
use poisson_leaf::linearize::{solve_connection_change, ConnectionChange};

fn main() -> Result<()> {
    let data = extract_geometric_data(&get_example("so3_curved")?.pi)?;
    let target = Connection::trivial(data.chart());
    match solve_connection_change(&data, &target, 4)? {
        ConnectionChange::Solved(phi) => {
            for (i, p) in phi.components().iter().enumerate() {
                println!("φ_{} = {p}", i + 1);
            }
            let out = apply_gauge(&data, &phi)?;
            assert_eq!(out.conn, target);
            println!("after the gauge: F_12 = {}", out.leaf_form.get(&[0, 1]));
        }
        ConnectionChange::Obstructed { index, obstruction } => {
            println!(
                "obstructed at index {}: {}",
                index + 1,
                obstruction.residual
            );
        }
    }
    Ok(())
}
