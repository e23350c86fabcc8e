use super::cohomology::{solve_homological, HomologicalSolution};
use super::jets::{is_fiberwise_linear, jet_split, truncate};
use super::lie::LieAlgebraSpec;
use crate::coupling::{horizontal_lift, Connection, GeometricData};
use crate::error::{Error, Result};
use crate::gauge::GaugePotential;
use crate::ratfield::{rat_frac, RatFunc};
use crate::tensor_calc::{differential, lie_derivative, schouten, sharp, Multivector};

/// A degree at which the homological equation has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub degree: u32,
    /// Cocycle left over after reduction modulo coboundaries.
    pub residual: Multivector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationResult {
    pub success: bool,
    /// Largest `D'` with `transformed ≡ 𝒱⁽¹⁾` modulo fiber degree `> D'`.
    pub achieved_degree: u32,
    /// Homogeneous generators, in the order applied.
    pub generators: Vec<Multivector>,
    /// The vertical structure after all pushforwards, truncated at degree `D`.
    pub transformed: Multivector,
    pub obstruction: Option<Obstruction>,
}

/// `Σ_m ad_Z^m(w) / m!` truncated above fiber degree `max`, for `Z`
/// homogeneous of fiber degree at least 2.
pub fn pushforward(z: &Multivector, w: &Multivector, max: u32) -> Result<Multivector> {
    z.expect_degree(1, "generator")?;
    let zj = jet_split(z)?;
    if zj.degrees().any(|d| d < 2) {
        return Err(Error::usage("generator must have fiber degree at least 2"));
    }
    let mut term = truncate(w, max)?;
    let mut sum = term.clone();
    let mut m = 1i64;
    while !term.is_zero() {
        term = truncate(&schouten(z, &term), max)?.map_coeffs(|c| c.scale(&rat_frac(1, m)));
        sum = &sum + &term;
        m += 1;
    }
    Ok(sum)
}

/// Removes the fiber-degree `2..=max` jets of a Poisson vertical bivector
/// whose linear part comes from a Lie algebra, degree by degree.
pub fn linearize_vertical(v: &Multivector, max: u32) -> Result<LinearizationResult> {
    v.expect_degree(2, "vertical structure")?;
    if !v.is_vertical() {
        return Err(Error::usage(
            "vertical structure has non-vertical components",
        ));
    }
    let jets = jet_split(v)?;
    if !jets.part(0).is_zero() {
        return Err(Error::usage("vertical structure must vanish on the leaf"));
    }
    let linear = jets.part(1);
    let g = LieAlgebraSpec::from_linear_bivector(&linear)?;
    let bracket = jet_split(&schouten(v, v))?;
    if bracket.degrees().any(|d| d <= max) {
        return Err(Error::usage(format!(
            "vertical structure is not Poisson up to fiber degree {max}"
        )));
    }

    let mut current = jets.truncated(max);
    let mut generators = Vec::new();
    for d in 2..=max {
        let w = jet_split(&current)?.part(d);
        if w.is_zero() {
            continue;
        }
        match solve_homological(&g, &w, 1)? {
            HomologicalSolution::Solved(z) => {
                current = pushforward(&z, &current, max)?;
                debug_assert!(jet_split(&current)?.part(d).is_zero());
                generators.push(z);
            }
            HomologicalSolution::Obstructed(residual) => {
                return Ok(LinearizationResult {
                    success: false,
                    achieved_degree: d - 1,
                    generators,
                    transformed: current,
                    obstruction: Some(Obstruction {
                        degree: d,
                        residual,
                    }),
                });
            }
        }
    }
    let success = current == linear;
    Ok(LinearizationResult {
        success,
        achieved_degree: max,
        generators,
        transformed: current,
        obstruction: None,
    })
}

/// Outcome of [`solve_connection_change`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionChange {
    /// `φ` with `𝒱♯(dφ_i) = Σ_k (β_{ik} − β'_{ik}) ∂y_k`.
    Solved(GaugePotential),
    Obstructed {
        index: usize,
        obstruction: Obstruction,
    },
}

fn leaves_invariant(conn: &Connection, vert: &Multivector) -> bool {
    (0..conn.chart().leaf_dim()).all(|i| lie_derivative(&horizontal_lift(conn, i), vert).is_zero())
}

/// Finds a gauge potential taking the connection of `data` to `target`.
pub fn solve_connection_change(
    data: &GeometricData,
    target: &Connection,
    max: u32,
) -> Result<ConnectionChange> {
    let chart = data.chart();
    chart.ensure_same(&target.chart())?;
    let vert = &data.vert;
    if !is_fiberwise_linear(vert)? {
        return Err(Error::usage("vertical part must be fiberwise linear"));
    }
    let g = LieAlgebraSpec::from_linear_bivector(vert)?;
    if !leaves_invariant(&data.conn, vert) {
        return Err(Error::usage(
            "connection does not leave the vertical part invariant",
        ));
    }
    if !leaves_invariant(target, vert) {
        return Err(Error::usage(
            "target connection does not leave the vertical part invariant",
        ));
    }

    let mut phi = Vec::with_capacity(chart.leaf_dim());
    for i in 0..chart.leaf_dim() {
        let diff = &data.conn.vertical_field(i) - &target.vertical_field(i);
        let mut phi_i = RatFunc::zero(chart);
        for (d, part) in jet_split(&diff)?.parts() {
            if *d > max {
                return Err(Error::usage(format!(
                    "connection difference has fiber degree {d} above {max}"
                )));
            }
            // [𝒱, f] = −𝒱♯(df)
            match solve_homological(&g, &-part, 0) {
                Ok(HomologicalSolution::Solved(f)) => phi_i = &phi_i + &f.coeff(&[]),
                Ok(HomologicalSolution::Obstructed(residual)) => {
                    return Ok(ConnectionChange::Obstructed {
                        index: i,
                        obstruction: Obstruction {
                            degree: *d,
                            residual,
                        },
                    })
                }
                Err(Error::MalformedTarget) => {
                    return Err(Error::usage("connection difference is not a cocycle"))
                }
                Err(e) => return Err(e),
            }
        }
        let check = sharp(vert, &differential(&phi_i));
        debug_assert_eq!(check, diff, "gauge potential reproduces the difference");
        phi.push(phi_i);
    }
    Ok(ConnectionChange::Solved(GaugePotential::new(chart, phi)?))
}

/// Keeps the fiber-degree-one part of every `β_{ik}`.
pub fn linearize_connection_part(conn: &Connection) -> Result<Connection> {
    conn.try_map_coeffs(|b| {
        Ok(b.split_fiber_degree()?
            .remove(&1)
            .unwrap_or_else(|| RatFunc::zero(conn.chart())))
    })
}
