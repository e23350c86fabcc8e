//! Graded first Poisson cohomology of linear Poisson structures.

use poisson_leaf::linearize::{coboundary_matrix, h1_graded, LieAlgebraSpec};

fn main() {
    let algebras = [
        ("so(3)", LieAlgebraSpec::so3(), 0..=3),
        ("sl(2)", LieAlgebraSpec::sl2(), 0..=2),
        ("abelian R^2", LieAlgebraSpec::abelian(2), 0..=3),
    ];
    for (name, g, degrees) in algebras {
        println!("{name}");
        for d in degrees {
            let r = h1_graded(&g, d);
            println!(
                "  d = {d}: cocycles {:2}, coboundaries {:2}, dim H¹ = {}",
                r.dim_cocycles, r.dim_coboundaries, r.dim_h1
            );
            let composed = coboundary_matrix(&g, d, 1).mul(&coboundary_matrix(&g, d, 0));
            assert!(composed.is_zero(), "δ² = 0");
        }
    }
    let so3 = LieAlgebraSpec::so3();
    let m = coboundary_matrix(&so3, 1, 0);
    println!(
        "so(3), δ on linear functions: {}x{} of rank {}",
        m.rows,
        m.cols,
        m.rank()
    );
}
