//! Gauge transformations of geometric data by a leaf 1-form `φ` with
//! values in functions on the total space.
//!
//! `apply_gauge` keeps `𝒱` and maps
//! * `β_i ↦ β_i − 𝒱♯(dφ_i)`;
//! * `F_{ij} ↦ F_{ij} + X_i(φ_j) − X_j(φ_i) − 𝒱(dφ_i, dφ_j)`,
//!
//! with `X_i` the lifts of the original connection. These are the signs under
//! which Poisson data is mapped to Poisson data in the crate's conventions.

use crate::coupling::{Connection, GeometricData};
use crate::error::{Error, Result};
use crate::poisson_laws::covariant_derivative;
use crate::ratfield::{ChartSpec, RatFunc};
use crate::tensor_calc::{differential, pair, sharp, LeafForm, Multivector};

/// `φ_i = φ(∂x_i)` for `i = 1..2s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugePotential {
    chart: ChartSpec,
    phi: Vec<RatFunc>,
}

impl GaugePotential {
    pub fn new(chart: ChartSpec, phi: Vec<RatFunc>) -> Result<Self> {
        if phi.len() != chart.leaf_dim() {
            return Err(Error::usage(format!(
                "gauge potential needs {} components, got {}",
                chart.leaf_dim(),
                phi.len()
            )));
        }
        for p in &phi {
            chart.ensure_same(&p.chart())?;
        }
        Ok(GaugePotential { chart, phi })
    }

    pub fn zero(chart: ChartSpec) -> Self {
        GaugePotential {
            chart,
            phi: vec![RatFunc::zero(chart); chart.leaf_dim()],
        }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn component(&self, i: usize) -> &RatFunc {
        &self.phi[i]
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.phi
    }

    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(RatFunc::is_zero)
    }

    pub fn as_leaf_form(&self) -> LeafForm {
        LeafForm::from_components(self.chart, &self.phi).expect("length checked at construction")
    }
}

/// `𝒱♯(dφ_i)`, a vertical vector field.
pub fn vertical_hamiltonian_lift(
    vert: &Multivector,
    phi: &GaugePotential,
    i: usize,
) -> Result<Multivector> {
    vert.chart().ensure_same(&phi.chart())?;
    vert.expect_degree(2, "vertical bivector")?;
    if !vert.is_vertical() {
        return Err(Error::usage("bivector has non-vertical components"));
    }
    if i >= phi.chart().leaf_dim() {
        return Err(Error::usage("leaf index out of range"));
    }
    Ok(sharp(vert, &differential(phi.component(i))))
}

/// `({φ₁, φ₂}_𝒱)_{ij} = 𝒱(dφ₁ᵢ, dφ₂ⱼ) − 𝒱(dφ₁ⱼ, dφ₂ᵢ)`.
pub fn vertical_pairing(
    vert: &Multivector,
    phi1: &GaugePotential,
    phi2: &GaugePotential,
) -> Result<LeafForm> {
    let chart = vert.chart();
    chart.ensure_same(&phi1.chart())?;
    chart.ensure_same(&phi2.chart())?;
    vert.expect_degree(2, "vertical bivector")?;
    let d1: Vec<_> = phi1.components().iter().map(differential).collect();
    let d2: Vec<_> = phi2.components().iter().map(differential).collect();
    let mut out = LeafForm::zero(chart, 2);
    for i in 0..chart.leaf_dim() {
        for j in i + 1..chart.leaf_dim() {
            let v = &pair(vert, &d1[i], &d2[j]) - &pair(vert, &d1[j], &d2[i]);
            out.set(&[i, j], v);
        }
    }
    Ok(out)
}

/// Transformed data; `𝒱` is unchanged.
pub fn apply_gauge(data: &GeometricData, phi: &GaugePotential) -> Result<GeometricData> {
    let chart = data.chart();
    chart.ensure_same(&phi.chart())?;
    let d = chart.leaf_dim();
    let mut beta: Vec<Vec<RatFunc>> = data.conn.rows().to_vec();
    for (i, row) in beta.iter_mut().enumerate() {
        let shift = vertical_hamiltonian_lift(&data.vert, phi, i)?;
        for (k, b) in row.iter_mut().enumerate() {
            *b = &*b - &shift.component(chart.y(k));
        }
    }
    let dphi = covariant_derivative(&data.conn, &phi.as_leaf_form())?;
    let half_bracket = vertical_pairing(&data.vert, phi, phi)?;
    let mut leaf_form = LeafForm::zero(chart, 2);
    for i in 0..d {
        for j in i + 1..d {
            // quadratic term: ½ 𝒱(dφ_i, dφ_j)
            let half = half_bracket
                .get(&[i, j])
                .scale(&crate::ratfield::rat_frac(1, 2));
            let v = &(&data.leaf_form.get(&[i, j]) + &dphi.get(&[i, j])) - &half;
            leaf_form.set(&[i, j], v);
        }
    }
    let out = GeometricData::new(Connection::new(chart, beta)?, data.vert.clone(), leaf_form)?;
    if !out.is_nondegenerate() {
        return Err(Error::DataDegeneracy);
    }
    Ok(out)
}

/// Same `𝒱`, same leaf restriction of `F`, and `apply_gauge(data, φ) = data2`.
pub fn check_gauge_hypotheses(
    data: &GeometricData,
    data2: &GeometricData,
    phi: &GaugePotential,
) -> Result<bool> {
    data.chart().ensure_same(&data2.chart())?;
    if data.vert != data2.vert {
        return Ok(false);
    }
    let d = data.chart().leaf_dim();
    for i in 0..d {
        for j in i + 1..d {
            let a = data.leaf_form.get(&[i, j]).evaluate_on_leaf()?;
            let b = data2.leaf_form.get(&[i, j]).evaluate_on_leaf()?;
            if a != b {
                return Ok(false);
            }
        }
    }
    match apply_gauge(data, phi) {
        Ok(out) => Ok(&out == data2),
        Err(Error::DataDegeneracy) => Ok(false),
        Err(e) => Err(e),
    }
}
