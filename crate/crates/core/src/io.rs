//! JSON wire formats. Every payload carries polynomials and rational
//! functions in their text syntax and coordinates by name (`x1`, `y2`).

use serde::{Deserialize, Serialize};

use crate::coupling::{Connection, GeometricData};
use crate::error::{Error, Result};
use crate::gauge::GaugePotential;
use crate::linearize::{CohomologyReport, LieAlgebraSpec, LinearizationResult};
use crate::poisson_laws::{PoissonReport, SplittingReport};
use crate::ratfield::{parse_ratfunc, ChartSpec, RatFunc, Rational};
use crate::tensor_calc::{LeafForm, Multivector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartWire {
    pub s: usize,
    pub n: usize,
}

impl ChartWire {
    pub fn to_chart(self) -> Result<ChartSpec> {
        ChartSpec::new(self.s, self.n)
    }
}

impl From<ChartSpec> for ChartWire {
    fn from(c: ChartSpec) -> Self {
        ChartWire { s: c.s, n: c.n }
    }
}

/// One basis term `coeff · ∂indices[0]∧…`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub indices: Vec<String>,
    pub coeff: String,
}

pub type MultivectorWire = Vec<TermWire>;

fn names(chart: ChartSpec, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&v| chart.var_name(v)).collect()
}

fn parse_names(chart: ChartSpec, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|name| {
            chart.parse_var(name).ok_or_else(|| {
                Error::usage(format!("unknown coordinate {name:?} on chart {chart:?}"))
            })
        })
        .collect()
}

pub fn ratfunc_text(f: &RatFunc) -> String {
    f.to_string()
}

pub fn parse_text(chart: ChartSpec, text: &str) -> Result<RatFunc> {
    parse_ratfunc(chart, text)
}

pub fn multivector_to_wire(w: &Multivector) -> MultivectorWire {
    let chart = w.chart();
    w.terms()
        .map(|(idx, c)| TermWire {
            indices: names(chart, idx),
            coeff: ratfunc_text(c),
        })
        .collect()
}

/// Terms may repeat or come in any index order; they are summed with signs.
pub fn multivector_from_wire(
    chart: ChartSpec,
    degree: usize,
    terms: &[TermWire],
) -> Result<Multivector> {
    let mut w = Multivector::zero(chart, degree);
    for t in terms {
        if t.indices.len() != degree {
            return Err(Error::usage(format!(
                "term {:?} has {} indices, expected {degree}",
                t.indices,
                t.indices.len()
            )));
        }
        let idx = parse_names(chart, &t.indices)?;
        w.add_unsorted(&idx, parse_text(chart, &t.coeff)?);
    }
    Ok(w)
}

pub fn leaf_form_to_wire(f: &LeafForm) -> MultivectorWire {
    let chart = f.chart();
    f.terms()
        .map(|(idx, c)| TermWire {
            indices: names(chart, idx),
            coeff: ratfunc_text(c),
        })
        .collect()
}

fn matrix_to_wire(m: &[Vec<RatFunc>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(ratfunc_text).collect())
        .collect()
}

fn matrix_from_wire(chart: ChartSpec, m: &[Vec<String>]) -> Result<Vec<Vec<RatFunc>>> {
    m.iter()
        .map(|row| row.iter().map(|t| parse_text(chart, t)).collect())
        .collect()
}

/// `beta` is `2s × n`, `F` the full antisymmetric `2s × 2s` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricDataWire {
    pub beta: Vec<Vec<String>>,
    pub vert: MultivectorWire,
    #[serde(rename = "F")]
    pub f: Vec<Vec<String>>,
}

impl GeometricDataWire {
    pub fn from_data(data: &GeometricData) -> Self {
        GeometricDataWire {
            beta: matrix_to_wire(data.conn.rows()),
            vert: multivector_to_wire(&data.vert),
            f: matrix_to_wire(&data.leaf_form.matrix()),
        }
    }

    pub fn to_data(&self, chart: ChartSpec) -> Result<GeometricData> {
        let conn = connection_from_wire(chart, &self.beta)?;
        let vert = multivector_from_wire(chart, 2, &self.vert)?;
        let f = LeafForm::from_matrix(chart, &matrix_from_wire(chart, &self.f)?)?;
        GeometricData::new(conn, vert, f)
    }
}

pub fn connection_from_wire(chart: ChartSpec, beta: &[Vec<String>]) -> Result<Connection> {
    Connection::new(chart, matrix_from_wire(chart, beta)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeWire {
    pub phi: Vec<String>,
}

impl GaugeWire {
    pub fn from_potential(phi: &GaugePotential) -> Self {
        GaugeWire {
            phi: phi.components().iter().map(ratfunc_text).collect(),
        }
    }

    pub fn to_potential(&self, chart: ChartSpec) -> Result<GaugePotential> {
        let phi = self
            .phi
            .iter()
            .map(|t| parse_text(chart, t))
            .collect::<Result<Vec<_>>>()?;
        GaugePotential::new(chart, phi)
    }
}

/// `[e_i, e_j] = Σ_k value · e_k` with one-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantWire {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraWire {
    pub n: usize,
    pub c: Vec<StructureConstantWire>,
}

impl LieAlgebraWire {
    pub fn from_spec(g: &LieAlgebraSpec) -> Self {
        LieAlgebraWire {
            n: g.dim(),
            c: g.entries()
                .map(|(i, j, k, v)| StructureConstantWire {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_spec(&self) -> Result<LieAlgebraSpec> {
        let mut entries = Vec::with_capacity(self.c.len());
        for e in &self.c {
            if e.i == 0 || e.j == 0 || e.k == 0 {
                return Err(Error::usage("structure constant indices are one-based"));
            }
            let value: Rational = e
                .value
                .trim()
                .parse()
                .map_err(|_| Error::usage(format!("bad rational {:?}", e.value)))?;
            entries.push((e.i - 1, e.j - 1, e.k - 1, value));
        }
        LieAlgebraSpec::new(self.n, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWire {
    pub i: usize,
    pub j: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedResidualWire {
    pub index: usize,
    pub residual: MultivectorWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairResidualWire {
    pub i: usize,
    pub j: usize,
    pub residual: MultivectorWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResidualsWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertical_bracket: Option<MultivectorWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariance: Vec<IndexedResidualWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covariant: Option<MultivectorWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curvature: Vec<PairResidualWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<MultivectorWire>,
}

/// Leaf indices are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoissonReportWire {
    pub cond_i: bool,
    pub cond_ii: Vec<bool>,
    pub cond_iii: bool,
    pub cond_iv: Vec<PairWire>,
    pub oracle: bool,
    pub all_conditions: bool,
    pub residuals: ResidualsWire,
}

impl PoissonReportWire {
    pub fn from_report(r: &PoissonReport) -> Self {
        let res = &r.residuals;
        PoissonReportWire {
            cond_i: r.cond_i,
            cond_ii: r.cond_ii.clone(),
            cond_iii: r.cond_iii,
            cond_iv: r
                .cond_iv
                .iter()
                .map(|p| PairWire {
                    i: p.i + 1,
                    j: p.j + 1,
                    holds: p.holds,
                })
                .collect(),
            oracle: r.oracle,
            all_conditions: r.all_conditions(),
            residuals: ResidualsWire {
                vertical_bracket: res.vertical_bracket.as_ref().map(multivector_to_wire),
                invariance: res
                    .invariance
                    .iter()
                    .map(|(i, w)| IndexedResidualWire {
                        index: i + 1,
                        residual: multivector_to_wire(w),
                    })
                    .collect(),
                covariant: res.covariant.as_ref().map(leaf_form_to_wire),
                curvature: res
                    .curvature
                    .iter()
                    .map(|(i, j, w)| PairResidualWire {
                        i: i + 1,
                        j: j + 1,
                        residual: multivector_to_wire(w),
                    })
                    .collect(),
                oracle: res.oracle.as_ref().map(multivector_to_wire),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingWire {
    pub flat: bool,
    pub horizontal_poisson: bool,
}

impl From<&SplittingReport> for SplittingWire {
    fn from(r: &SplittingReport) -> Self {
        SplittingWire {
            flat: r.flat,
            horizontal_poisson: r.horizontal_poisson,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyWire {
    pub degree: u32,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h1: usize,
    pub basis_witnesses: Vec<MultivectorWire>,
}

impl From<&CohomologyReport> for CohomologyWire {
    fn from(r: &CohomologyReport) -> Self {
        CohomologyWire {
            degree: r.degree,
            dim_cocycles: r.dim_cocycles,
            dim_coboundaries: r.dim_coboundaries,
            dim_h1: r.dim_h1,
            basis_witnesses: r.basis_witnesses.iter().map(multivector_to_wire).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWire {
    pub degree: u32,
    pub residual: MultivectorWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizationWire {
    pub success: bool,
    pub achieved_degree: u32,
    pub generators: Vec<MultivectorWire>,
    pub transformed: MultivectorWire,
    pub obstruction: Option<ObstructionWire>,
}

impl From<&LinearizationResult> for LinearizationWire {
    fn from(r: &LinearizationResult) -> Self {
        LinearizationWire {
            success: r.success,
            achieved_degree: r.achieved_degree,
            generators: r.generators.iter().map(multivector_to_wire).collect(),
            transformed: multivector_to_wire(&r.transformed),
            obstruction: r.obstruction.as_ref().map(|o| ObstructionWire {
                degree: o.degree,
                residual: multivector_to_wire(&o.residual),
            }),
        }
    }
}

/// Reads a JSON document, reporting syntax and shape errors with positions.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_example;
    use crate::coupling::extract_geometric_data;

    #[test]
    fn multivector_round_trip() {
        let ex = get_example("so3_curved").unwrap();
        let wire = multivector_to_wire(&ex.pi);
        let json = to_json(&wire);
        let back: MultivectorWire = from_json(&json).unwrap();
        assert_eq!(multivector_from_wire(ex.chart, 2, &back).unwrap(), ex.pi);
    }

    #[test]
    fn unsorted_terms_are_signed() {
        let c = ChartSpec::new(1, 2).unwrap();
        let t = |a: &str, b: &str, coeff: &str| TermWire {
            indices: vec![a.into(), b.into()],
            coeff: coeff.into(),
        };
        let w = multivector_from_wire(c, 2, &[t("y2", "y1", "y1"), t("y1", "y2", "2*y1")]).unwrap();
        assert_eq!(w.coeff(&[c.y(0), c.y(1)]), parse_ratfunc(c, "y1").unwrap());
        assert!(multivector_from_wire(c, 2, &[t("y1", "y3", "1")]).is_err());
    }

    #[test]
    fn data_round_trip() {
        let ex = get_example("so3_curved").unwrap();
        let data = extract_geometric_data(&ex.pi).unwrap();
        let wire = GeometricDataWire::from_data(&data);
        let back: GeometricDataWire = from_json(&to_json(&wire)).unwrap();
        assert_eq!(back.to_data(ex.chart).unwrap(), data);
    }

    #[test]
    fn lie_round_trip() {
        for g in [LieAlgebraSpec::so3(), LieAlgebraSpec::sl2()] {
            let wire = LieAlgebraWire::from_spec(&g);
            assert_eq!(wire.to_spec().unwrap(), g);
        }
        let bad = LieAlgebraWire {
            n: 2,
            c: vec![StructureConstantWire {
                i: 0,
                j: 1,
                k: 1,
                value: "1".into(),
            }],
        };
        assert!(bad.to_spec().is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = from_json::<GaugeWire>("{\n  \"phi\": [1,]\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }
}
