//! The coupling conditions for geometric data and the splitting criterion.
//!
//! For data `(Γ, 𝒱, F)` the reconstructed bivector is Poisson exactly when
//! 1. `[𝒱, 𝒱] = 0`;
//! 2. `L_{hor(∂x_i)} 𝒱 = 0` for every leaf index `i`;
//! 3. `∂_Γ F = 0`;
//! 4. `Curv(∂x_i, ∂x_j) = −𝒱♯(dF_{ij})` for every `i < j`.
//!
//! The sign in (4) is the one compatible with the bracket normalisation
//! `{f, g} = Π(df, dg)` and `𝒱♯(α) = 𝒱(α, ·)` used throughout the crate.

use crate::coupling::{
    horizontal_from_data, horizontal_lift, reconstruct, Connection, GeometricData,
};
use crate::error::{Error, Result};
use crate::ratfield::RatFunc;
use crate::tensor_calc::{differential, lie_derivative, schouten, sharp, LeafForm, Multivector};

/// Exterior covariant derivative of a leaf form,
/// `(∂_Γ F)_{i₀…i_k} = Σ_m (−1)^m X_{i_m}(F_{i₀…î_m…i_k})`.
pub fn covariant_derivative(conn: &Connection, form: &LeafForm) -> Result<LeafForm> {
    let chart = conn.chart();
    chart.ensure_same(&form.chart())?;
    let k = form.degree();
    let d = chart.leaf_dim();
    let lifts: Vec<Multivector> = (0..d).map(|i| horizontal_lift(conn, i)).collect();
    let mut out = LeafForm::zero(chart, k + 1);
    for idx in increasing_tuples(d, k + 1) {
        let mut acc = RatFunc::zero(chart);
        for m in 0..idx.len() {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != m)
                .map(|(_, &v)| v)
                .collect();
            let term = lifts[idx[m]].apply(&form.get(&rest));
            acc = if m % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        out.set(&idx, acc);
    }
    Ok(out)
}

pub(crate) fn increasing_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..d {
            cur.push(v);
            go(v + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// `Curv(∂x_i, ∂x_j) = [hor ∂x_i, hor ∂x_j]`, a vertical vector field.
pub fn curvature(conn: &Connection, i: usize, j: usize) -> Result<Multivector> {
    let d = conn.chart().leaf_dim();
    if i >= d || j >= d {
        return Err(Error::usage("leaf index out of range"));
    }
    if i == j {
        return Err(Error::usage("curvature needs two distinct leaf indices"));
    }
    Ok(schouten(
        &horizontal_lift(conn, i),
        &horizontal_lift(conn, j),
    ))
}

/// Outcome of one pair check in condition (4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub holds: bool,
}

/// Nonzero witnesses for failed conditions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Residuals {
    /// `[𝒱, 𝒱]`.
    pub vertical_bracket: Option<Multivector>,
    /// `L_{hor(∂x_i)} 𝒱` per failing index.
    pub invariance: Vec<(usize, Multivector)>,
    /// `∂_Γ F`.
    pub covariant: Option<LeafForm>,
    /// `Curv(∂x_i, ∂x_j) + 𝒱♯(dF_{ij})` per failing pair.
    pub curvature: Vec<(usize, usize, Multivector)>,
    /// `[Π, Π]`.
    pub oracle: Option<Multivector>,
}

/// Per-condition verdicts plus the Schouten oracle `[Π, Π] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    pub cond_i: bool,
    pub cond_ii: Vec<bool>,
    pub cond_iii: bool,
    pub cond_iv: Vec<PairCheck>,
    pub oracle: bool,
    pub residuals: Residuals,
}

impl PoissonReport {
    /// Conjunction of the four conditions.
    pub fn all_conditions(&self) -> bool {
        self.cond_i
            && self.cond_ii.iter().all(|&b| b)
            && self.cond_iii
            && self.cond_iv.iter().all(|c| c.holds)
    }

    /// Whether the conditions agree with the oracle.
    pub fn consistent(&self) -> bool {
        self.all_conditions() == self.oracle
    }
}

/// `Curv(∂x_i, ∂x_j) + 𝒱♯(dF_{ij})`; zero exactly when condition (4) holds.
pub fn curvature_residual(data: &GeometricData, i: usize, j: usize) -> Result<Multivector> {
    let curv = curvature(&data.conn, i, j)?;
    let ham = sharp(&data.vert, &differential(&data.leaf_form.get(&[i, j])));
    Ok(&curv + &ham)
}

/// Evaluates the four conditions and the oracle on the reconstructed bivector.
pub fn check_conditions(data: &GeometricData) -> Result<PoissonReport> {
    let chart = data.chart();
    let d = chart.leaf_dim();
    let mut residuals = Residuals::default();

    let vv = schouten(&data.vert, &data.vert);
    let cond_i = vv.is_zero();
    if !cond_i {
        residuals.vertical_bracket = Some(vv);
    }

    let mut cond_ii = Vec::with_capacity(d);
    for i in 0..d {
        let l = lie_derivative(&horizontal_lift(&data.conn, i), &data.vert);
        cond_ii.push(l.is_zero());
        if !l.is_zero() {
            residuals.invariance.push((i, l));
        }
    }

    let cov = covariant_derivative(&data.conn, &data.leaf_form)?;
    let cond_iii = cov.is_zero();
    if !cond_iii {
        residuals.covariant = Some(cov);
    }

    let mut cond_iv = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let r = curvature_residual(data, i, j)?;
            let holds = r.is_zero();
            cond_iv.push(PairCheck { i, j, holds });
            if !holds {
                residuals.curvature.push((i, j, r));
            }
        }
    }

    let pi = reconstruct(data)?;
    let pp = schouten(&pi, &pi);
    let oracle = pp.is_zero();
    if !oracle {
        residuals.oracle = Some(pp);
    }

    Ok(PoissonReport {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        oracle,
        residuals,
    })
}

/// Flatness of `Γ` against the Poisson property of `Π_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub flat: bool,
    pub horizontal_poisson: bool,
}

impl SplittingReport {
    pub fn consistent(&self) -> bool {
        self.flat == self.horizontal_poisson
    }
}

/// For Poisson data: is `Γ` flat, and is `Π_H` Poisson?
pub fn check_splitting(data: &GeometricData) -> Result<SplittingReport> {
    let report = check_conditions(data)?;
    if !report.all_conditions() {
        return Err(Error::usage(
            "splitting test needs data satisfying the coupling conditions",
        ));
    }
    let d = data.chart().leaf_dim();
    let mut flat = true;
    'outer: for i in 0..d {
        for j in i + 1..d {
            if !curvature(&data.conn, i, j)?.is_zero() {
                flat = false;
                break 'outer;
            }
        }
    }
    let ph = horizontal_from_data(data)?;
    let horizontal_poisson = schouten(&ph, &ph).is_zero();
    Ok(SplittingReport {
        flat,
        horizontal_poisson,
    })
}
