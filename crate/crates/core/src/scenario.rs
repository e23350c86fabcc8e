//! Scenario files: one command applied to one input on one chart, with a
//! JSON report and a human-readable summary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{get_example, random_coupling};
use crate::coupling::{extract_geometric_data, reconstruct, Connection, GeometricData};
use crate::error::{Error, Result};
use crate::gauge::apply_gauge;
use crate::io::{
    connection_from_wire, multivector_from_wire, multivector_to_wire, ChartWire, CohomologyWire,
    GaugeWire, GeometricDataWire, LieAlgebraWire, LinearizationWire, MultivectorWire,
    ObstructionWire, PoissonReportWire, SplittingWire,
};
use crate::linearize::{
    h1_graded, jet_split, linearize_vertical, solve_connection_change, ConnectionChange,
    LieAlgebraSpec,
};
use crate::poisson_laws::{check_conditions, check_splitting};
use crate::ratfield::ChartSpec;
use crate::tensor_calc::Multivector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

const DEFAULT_LINEARIZE_DEGREE: u32 = 4;
const DEFAULT_COHOMOLOGY_DEGREE: u32 = 3;
const RANDOM_COEFF_DEGREE: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Extract,
    Reconstruct,
    Check,
    Split,
    Gauge,
    Linearize,
    Cohomology,
    ConnectionChange,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Extract,
        Command::Reconstruct,
        Command::Check,
        Command::Split,
        Command::Gauge,
        Command::Linearize,
        Command::Cohomology,
        Command::ConnectionChange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Extract => "extract",
            Command::Reconstruct => "reconstruct",
            Command::Check => "check",
            Command::Split => "split",
            Command::Gauge => "gauge",
            Command::Linearize => "linearize",
            Command::Cohomology => "cohomology",
            Command::ConnectionChange => "connection-change",
        }
    }

    pub fn parse(name: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::usage(format!("unknown command {name:?}")))
    }
}

/// Exactly one of the two fields is set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bivector: Option<MultivectorWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<GeometricDataWire>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<GaugeWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieAlgebraWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_beta: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputWire>,
    #[serde(default)]
    pub params: Params,
}

impl Scenario {
    /// A catalog entry as a self-contained scenario.
    pub fn from_example(name: &str, command: Command) -> Result<Scenario> {
        let ex = get_example(name)?;
        let mut params = Params::default();
        if command == Command::Gauge {
            if let Some((_, phi)) = &ex.gauge_partner {
                params.phi = Some(GaugeWire::from_potential(phi));
            }
        }
        if command == Command::Cohomology {
            params.lie_algebra = ex.lie_algebra.as_ref().map(LieAlgebraWire::from_spec);
        }
        Ok(Scenario {
            chart: Some(ex.chart.into()),
            command: Some(command),
            input: Some(InputWire {
                bivector: Some(multivector_to_wire(&ex.pi)),
                data: None,
            }),
            params,
        })
    }
}

/// Command-line overrides applied on top of a scenario file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub command: Option<Command>,
    pub example: Option<String>,
    pub max_degree: Option<u32>,
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn with_overrides(mut self, o: &Overrides) -> Scenario {
        if o.command.is_some() {
            self.command = o.command;
        }
        if o.example.is_some() {
            self.params.example = o.example.clone();
        }
        if o.max_degree.is_some() {
            self.params.max_degree = o.max_degree;
        }
        if o.seed.is_some() {
            self.params.seed = o.seed;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Extract {
        data: GeometricDataWire,
    },
    Reconstruct {
        bivector: MultivectorWire,
    },
    Check(PoissonReportWire),
    Split {
        conditions: PoissonReportWire,
        splitting: Option<SplittingWire>,
    },
    Gauge {
        data: GeometricDataWire,
        vertical_unchanged: bool,
        conditions: PoissonReportWire,
    },
    Linearize(LinearizationWire),
    Cohomology {
        algebra: LieAlgebraWire,
        degrees: Vec<CohomologyWire>,
    },
    ConnectionChange {
        phi: Option<GaugeWire>,
        verified: bool,
        obstruction: Option<ConnectionObstructionWire>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionObstructionWire {
    /// One-based leaf index.
    pub index: usize,
    pub obstruction: ObstructionWire,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub chart: Option<ChartWire>,
    /// Where the input came from: `file`, `example:<name>` or `seed:<k>`.
    pub source: String,
    pub exit_code: i32,
    pub outcome: Outcome,
}

enum Input {
    Bivector(Multivector),
    Data(GeometricData),
}

impl Input {
    fn data(&self) -> Result<GeometricData> {
        match self {
            Input::Bivector(p) => extract_geometric_data(p),
            Input::Data(d) => Ok(d.clone()),
        }
    }
}

fn resolve_input(sc: &Scenario) -> Result<Option<(ChartSpec, Input, String)>> {
    let declared = sc.chart.map(ChartWire::to_chart).transpose()?;
    if let Some(name) = &sc.params.example {
        let ex = get_example(name)?;
        if let Some(c) = declared {
            c.ensure_same(&ex.chart)?;
        }
        return Ok(Some((
            ex.chart,
            Input::Bivector(ex.pi),
            format!("example:{name}"),
        )));
    }
    if let Some(input) = &sc.input {
        let chart = declared.ok_or_else(|| Error::usage("scenario input needs a chart"))?;
        let parsed = match (&input.bivector, &input.data) {
            (Some(b), None) => Input::Bivector(multivector_from_wire(chart, 2, b)?),
            (None, Some(d)) => Input::Data(d.to_data(chart)?),
            _ => {
                return Err(Error::usage(
                    "input must contain exactly one of bivector and data",
                ))
            }
        };
        return Ok(Some((chart, parsed, "file".into())));
    }
    if let Some(seed) = sc.params.seed {
        let chart = declared.unwrap_or(ChartSpec::new(1, 2)?);
        let p = random_coupling(seed, chart.s, chart.n, RANDOM_COEFF_DEGREE)?;
        return Ok(Some((chart, Input::Bivector(p), format!("seed:{seed}"))));
    }
    Ok(None)
}

fn exit_if(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

/// Executes a scenario. Errors correspond to exit code 1; mathematical
/// negatives are reported with exit code 2.
pub fn run(sc: &Scenario) -> Result<Report> {
    let command = sc.command.ok_or_else(|| Error::usage("no command given"))?;
    let resolved = resolve_input(sc)?;
    let need = || {
        resolved
            .as_ref()
            .ok_or_else(|| Error::usage(format!("command {} needs an input", command.name())))
    };
    let (exit_code, outcome) = match command {
        Command::Extract => {
            let (_, input, _) = need()?;
            let Input::Bivector(p) = input else {
                return Err(Error::usage("extract needs a bivector input"));
            };
            let data = extract_geometric_data(p)?;
            (
                EXIT_OK,
                Outcome::Extract {
                    data: GeometricDataWire::from_data(&data),
                },
            )
        }
        Command::Reconstruct => {
            let (_, input, _) = need()?;
            let pi = reconstruct(&input.data()?)?;
            (
                EXIT_OK,
                Outcome::Reconstruct {
                    bivector: multivector_to_wire(&pi),
                },
            )
        }
        Command::Check => {
            let report = check_conditions(&need()?.1.data()?)?;
            (
                exit_if(report.all_conditions() && report.oracle),
                Outcome::Check(PoissonReportWire::from_report(&report)),
            )
        }
        Command::Split => {
            let data = need()?.1.data()?;
            let report = check_conditions(&data)?;
            let conditions = PoissonReportWire::from_report(&report);
            if !report.all_conditions() {
                (
                    EXIT_NEGATIVE,
                    Outcome::Split {
                        conditions,
                        splitting: None,
                    },
                )
            } else {
                let split = check_splitting(&data)?;
                (
                    exit_if(split.flat && split.horizontal_poisson),
                    Outcome::Split {
                        conditions,
                        splitting: Some((&split).into()),
                    },
                )
            }
        }
        Command::Gauge => {
            let (chart, input, _) = need()?;
            let phi = sc
                .params
                .phi
                .as_ref()
                .ok_or_else(|| Error::usage("gauge needs params.phi"))?
                .to_potential(*chart)?;
            let data = input.data()?;
            let out = apply_gauge(&data, &phi)?;
            let report = check_conditions(&out)?;
            let vertical_unchanged = out.vert == data.vert;
            (
                exit_if(report.all_conditions() && report.oracle && vertical_unchanged),
                Outcome::Gauge {
                    data: GeometricDataWire::from_data(&out),
                    vertical_unchanged,
                    conditions: PoissonReportWire::from_report(&report),
                },
            )
        }
        Command::Linearize => {
            let data = need()?.1.data()?;
            let max = sc.params.max_degree.unwrap_or(DEFAULT_LINEARIZE_DEGREE);
            let res = linearize_vertical(&data.vert, max)?;
            (exit_if(res.success), Outcome::Linearize((&res).into()))
        }
        Command::Cohomology => {
            let g = match (&sc.params.lie_algebra, &resolved) {
                (Some(w), _) => w.to_spec()?,
                (None, Some((_, input, _))) => {
                    let vert = input.data()?.vert;
                    LieAlgebraSpec::from_linear_bivector(&jet_split(&vert)?.part(1))?
                }
                (None, None) => {
                    return Err(Error::usage(
                        "cohomology needs params.lie_algebra or an input",
                    ))
                }
            };
            let degrees = match &sc.params.degrees {
                Some(d) => d.clone(),
                None => (0..=sc.params.max_degree.unwrap_or(DEFAULT_COHOMOLOGY_DEGREE)).collect(),
            };
            let reports: Vec<CohomologyWire> = degrees
                .iter()
                .map(|&d| (&h1_graded(&g, d)).into())
                .collect();
            (
                exit_if(reports.iter().all(|r| r.dim_h1 == 0)),
                Outcome::Cohomology {
                    algebra: LieAlgebraWire::from_spec(&g),
                    degrees: reports,
                },
            )
        }
        Command::ConnectionChange => {
            let (chart, input, _) = need()?;
            let data = input.data()?;
            let target = match &sc.params.target_beta {
                Some(b) => connection_from_wire(*chart, b)?,
                None => Connection::trivial(*chart),
            };
            let max = sc.params.max_degree.unwrap_or(DEFAULT_LINEARIZE_DEGREE);
            match solve_connection_change(&data, &target, max)? {
                ConnectionChange::Solved(phi) => {
                    let verified = apply_gauge(&data, &phi)?.conn == target;
                    (
                        exit_if(verified),
                        Outcome::ConnectionChange {
                            phi: Some(GaugeWire::from_potential(&phi)),
                            verified,
                            obstruction: None,
                        },
                    )
                }
                ConnectionChange::Obstructed { index, obstruction } => (
                    EXIT_NEGATIVE,
                    Outcome::ConnectionChange {
                        phi: None,
                        verified: false,
                        obstruction: Some(ConnectionObstructionWire {
                            index: index + 1,
                            obstruction: ObstructionWire {
                                degree: obstruction.degree,
                                residual: multivector_to_wire(&obstruction.residual),
                            },
                        }),
                    },
                ),
            }
        }
    };
    Ok(Report {
        command,
        chart: resolved.as_ref().map(|(c, _, _)| (*c).into()),
        source: resolved
            .map(|(_, _, s)| s)
            .unwrap_or_else(|| "params".into()),
        exit_code,
        outcome,
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

fn terms_text(w: &MultivectorWire) -> String {
    if w.is_empty() {
        return "0".into();
    }
    w.iter()
        .map(|t| {
            let idx: Vec<String> = t.indices.iter().map(|v| format!("∂{v}")).collect();
            if idx.is_empty() {
                format!("({})", t.coeff)
            } else {
                format!("({}) {}", t.coeff, idx.join("∧"))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn conditions_text(out: &mut String, r: &PoissonReportWire) {
    let ii = r.cond_ii.iter().all(|&b| b);
    let iv = r.cond_iv.iter().all(|p| p.holds);
    let _ = writeln!(
        out,
        "  (i)   [𝒱,𝒱] = 0                          {}",
        verdict(r.cond_i)
    );
    let _ = writeln!(
        out,
        "  (ii)  L_hor(∂x_i) 𝒱 = 0 for all i        {}",
        verdict(ii)
    );
    let _ = writeln!(
        out,
        "  (iii) ∂_Γ F = 0                          {}",
        verdict(r.cond_iii)
    );
    let _ = writeln!(
        out,
        "  (iv)  Curv(∂x_i,∂x_j) = −𝒱♯(dF_ij)       {}",
        verdict(iv)
    );
    let _ = writeln!(
        out,
        "  oracle [Π,Π] = 0                         {}",
        verdict(r.oracle)
    );
    let res = &r.residuals;
    if let Some(w) = &res.vertical_bracket {
        let _ = writeln!(out, "  residual (i): {}", terms_text(w));
    }
    for w in &res.invariance {
        let _ = writeln!(
            out,
            "  residual (ii), i = {}: {}",
            w.index,
            terms_text(&w.residual)
        );
    }
    if let Some(w) = &res.covariant {
        let _ = writeln!(out, "  residual (iii): {}", terms_text(w));
    }
    for w in &res.curvature {
        let _ = writeln!(
            out,
            "  residual (iv), (i,j) = ({},{}): {}",
            w.i,
            w.j,
            terms_text(&w.residual)
        );
    }
    if let Some(w) = &res.oracle {
        let _ = writeln!(out, "  [Π,Π] = {}", terms_text(w));
    }
}

fn data_text(out: &mut String, d: &GeometricDataWire) {
    for (i, row) in d.beta.iter().enumerate() {
        let _ = writeln!(out, "  β_{} = ({})", i + 1, row.join(", "));
    }
    let _ = writeln!(out, "  𝒱 = {}", terms_text(&d.vert));
    for (i, row) in d.f.iter().enumerate() {
        for (j, v) in row.iter().enumerate().skip(i + 1) {
            let _ = writeln!(out, "  F_{}{} = {}", i + 1, j + 1, v);
        }
    }
}

/// Human-readable summary of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let chart = r
        .chart
        .map(|c| format!(" on chart s={}, n={}", c.s, c.n))
        .unwrap_or_default();
    let _ = writeln!(out, "{} ({}){}", r.command.name(), r.source, chart);
    match &r.outcome {
        Outcome::Extract { data } => data_text(&mut out, data),
        Outcome::Reconstruct { bivector } => {
            let _ = writeln!(out, "  Π = {}", terms_text(bivector));
        }
        Outcome::Check(c) => conditions_text(&mut out, c),
        Outcome::Split {
            conditions,
            splitting,
        } => {
            conditions_text(&mut out, conditions);
            match splitting {
                Some(s) => {
                    let _ = writeln!(out, "  Γ flat                                   {}", s.flat);
                    let _ = writeln!(
                        out,
                        "  [Π_H,Π_H] = 0                            {}",
                        s.horizontal_poisson
                    );
                }
                None => {
                    let _ = writeln!(out, "  not Poisson; splitting test skipped");
                }
            }
        }
        Outcome::Gauge {
            data,
            vertical_unchanged,
            conditions,
        } => {
            data_text(&mut out, data);
            let _ = writeln!(
                out,
                "  𝒱 unchanged                              {vertical_unchanged}"
            );
            conditions_text(&mut out, conditions);
        }
        Outcome::Linearize(l) => {
            let _ = writeln!(
                out,
                "  success: {}, achieved degree {}",
                l.success, l.achieved_degree
            );
            for (m, z) in l.generators.iter().enumerate() {
                let _ = writeln!(out, "  Z_{} = {}", m + 1, terms_text(z));
            }
            let _ = writeln!(out, "  transformed 𝒱 = {}", terms_text(&l.transformed));
            if let Some(o) = &l.obstruction {
                let _ = writeln!(
                    out,
                    "  obstruction in degree {}: {}",
                    o.degree,
                    terms_text(&o.residual)
                );
            }
        }
        Outcome::Cohomology { algebra, degrees } => {
            let _ = writeln!(out, "  Lie algebra of dimension {}", algebra.n);
            for d in degrees {
                let _ = writeln!(
                    out,
                    "  d = {}: cocycles {}, coboundaries {}, dim H¹ = {}",
                    d.degree, d.dim_cocycles, d.dim_coboundaries, d.dim_h1
                );
            }
        }
        Outcome::ConnectionChange {
            phi,
            verified,
            obstruction,
        } => {
            if let Some(phi) = phi {
                for (i, p) in phi.phi.iter().enumerate() {
                    let _ = writeln!(out, "  φ_{} = {}", i + 1, p);
                }
                let _ = writeln!(out, "  gauge reproduces target connection       {verified}");
            }
            if let Some(o) = obstruction {
                let _ = writeln!(
                    out,
                    "  obstruction for index {} in degree {}: {}",
                    o.index,
                    o.obstruction.degree,
                    terms_text(&o.obstruction.residual)
                );
            }
        }
    }
    let _ = writeln!(out, "exit code {}", r.exit_code);
    out
}
