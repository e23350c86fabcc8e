//! Geometric data of a horizontally non-degenerate bivector.
//!
//! On a chart `(x, y)` a bivector is written with antisymmetric blocks
//! `Π = Σ Π^X_{ij} ∂x_i∧∂x_j + Σ 2Π^{XY}_{ik} ∂x_i∧∂y_k + Σ Π^Y_{kl} ∂y_k∧∂y_l`
//! (full double sums), so that the stored coefficient on `∂x_i∧∂x_j`, `i < j`,
//! is `2Π^X_{ij}` and likewise for the other blocks.
//!
//! From the blocks we read off
//! * the connection `β = (Π^X)⁻¹ Π^{XY}`, with horizontal lifts
//!   `X_i = ∂x_i + Σ_k β_{ik} ∂y_k`;
//! * the vertical part `𝒱 = Π^Y − βᵀ Π^X β`;
//! * the leaf form `F = −½ (Π^X)⁻¹`,
//!
//! and conversely `Π = Σ Π^X_{ij} X_i∧X_j + 𝒱` with `Π^X = −½ F⁻¹`.

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, FuncMatrix};
use crate::ratfield::{rat_frac, ChartSpec, RatFunc};
use crate::tensor_calc::{wedge, LeafForm, Multivector};

/// Ehresmann connection on the chart, encoded by `hor(∂x_i) = ∂x_i + Σ β_{ik} ∂y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    chart: ChartSpec,
    beta: Vec<Vec<RatFunc>>,
}

impl Connection {
    pub fn new(chart: ChartSpec, beta: Vec<Vec<RatFunc>>) -> Result<Self> {
        if beta.len() != chart.leaf_dim() || beta.iter().any(|row| row.len() != chart.n) {
            return Err(Error::usage(format!(
                "connection needs a {}x{} matrix of coefficients",
                chart.leaf_dim(),
                chart.n
            )));
        }
        if beta.iter().flatten().any(|b| b.chart() != chart) {
            return Err(Error::usage("connection coefficient over another chart"));
        }
        Ok(Connection { chart, beta })
    }

    /// The trivial (flat, `β = 0`) connection.
    pub fn trivial(chart: ChartSpec) -> Self {
        Connection {
            chart,
            beta: vec![vec![RatFunc::zero(chart); chart.n]; chart.leaf_dim()],
        }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn beta(&self, i: usize, k: usize) -> &RatFunc {
        &self.beta[i][k]
    }

    pub fn rows(&self) -> &[Vec<RatFunc>] {
        &self.beta
    }

    /// `Σ_k β_{ik} ∂y_k`, the vertical component of the lift of `∂x_i`.
    pub fn vertical_field(&self, i: usize) -> Multivector {
        let mut v = Multivector::zero(self.chart, 1);
        for (k, b) in self.beta[i].iter().enumerate() {
            v.add_term(vec![self.chart.y(k)], b.clone());
        }
        v
    }

    /// `Γ(∂x_i) = −Σ_k β_{ik} ∂y_k`.
    pub fn projection_of_coordinate(&self, i: usize) -> Multivector {
        -self.vertical_field(i)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> Connection {
        Connection {
            chart: self.chart,
            beta: self
                .beta
                .iter()
                .map(|row| row.iter().map(&mut f).collect())
                .collect(),
        }
    }

    pub fn try_map_coeffs(
        &self,
        mut f: impl FnMut(&RatFunc) -> Result<RatFunc>,
    ) -> Result<Connection> {
        let beta = self
            .beta
            .iter()
            .map(|row| row.iter().map(&mut f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Connection {
            chart: self.chart,
            beta,
        })
    }
}

/// `hor(∂x_i) = ∂x_i + Σ_k β_{ik} ∂y_k`.
pub fn horizontal_lift(conn: &Connection, i: usize) -> Multivector {
    let chart = conn.chart();
    assert!(i < chart.leaf_dim(), "leaf index out of range");
    &Multivector::coordinate_field(chart, chart.x(i)) + &conn.vertical_field(i)
}

/// Checked [`horizontal_lift`].
pub fn try_horizontal_lift(conn: &Connection, i: usize) -> Result<Multivector> {
    if i >= conn.chart().leaf_dim() {
        return Err(Error::usage(format!("leaf index {} out of range", i + 1)));
    }
    Ok(horizontal_lift(conn, i))
}

/// The triple `(Γ, 𝒱, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricData {
    pub conn: Connection,
    pub vert: Multivector,
    pub leaf_form: LeafForm,
}

impl GeometricData {
    /// Validates shapes: a vertical bivector and a leaf 2-form over the
    /// connection's chart. Non-degeneracy of `F` is checked where it is used.
    pub fn new(conn: Connection, vert: Multivector, leaf_form: LeafForm) -> Result<Self> {
        let chart = conn.chart();
        chart.ensure_same(&vert.chart())?;
        chart.ensure_same(&leaf_form.chart())?;
        if vert.degree() != 2 || !vert.is_vertical() {
            return Err(Error::usage(
                "vertical part must be a bivector in fiber directions only",
            ));
        }
        if leaf_form.degree() != 2 {
            return Err(Error::usage("leaf form must have degree 2"));
        }
        Ok(GeometricData {
            conn,
            vert,
            leaf_form,
        })
    }

    pub fn chart(&self) -> ChartSpec {
        self.conn.chart()
    }

    /// `det(F) ≠ 0` as a rational function.
    pub fn is_nondegenerate(&self) -> bool {
        !determinant(&self.leaf_form.matrix(), self.chart()).is_zero()
    }
}

fn half(chart: ChartSpec) -> RatFunc {
    RatFunc::constant(chart, rat_frac(1, 2))
}

/// `Π^X` as a full antisymmetric `2s × 2s` matrix.
pub fn leaf_block(p: &Multivector) -> FuncMatrix {
    let chart = p.chart();
    let h = half(chart);
    let d = chart.leaf_dim();
    let mut m = vec![vec![RatFunc::zero(chart); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let c = &p.coeff(&[i, j]) * &h;
            m[j][i] = -&c;
            m[i][j] = c;
        }
    }
    m
}

/// `Π^{XY}` as a `2s × n` matrix.
pub fn mixed_block(p: &Multivector) -> FuncMatrix {
    let chart = p.chart();
    let h = half(chart);
    (0..chart.leaf_dim())
        .map(|i| {
            (0..chart.n)
                .map(|k| &p.coeff(&[i, chart.y(k)]) * &h)
                .collect()
        })
        .collect()
}

/// `Π^Y` as a full antisymmetric `n × n` matrix.
pub fn fiber_block(p: &Multivector) -> FuncMatrix {
    let chart = p.chart();
    let h = half(chart);
    let n = chart.n;
    let mut m = vec![vec![RatFunc::zero(chart); n]; n];
    for k in 0..n {
        for l in k + 1..n {
            let c = &p.coeff(&[chart.y(k), chart.y(l)]) * &h;
            m[l][k] = -&c;
            m[k][l] = c;
        }
    }
    m
}

/// `det(Π^X) ≠ 0` on the chart. False for anything that is not a bivector.
pub fn is_horizontally_nondegenerate(p: &Multivector) -> bool {
    p.degree() == 2 && !determinant(&leaf_block(p), p.chart()).is_zero()
}

/// Reads `(β, 𝒱, F)` off a horizontally non-degenerate bivector.
pub fn extract_geometric_data(p: &Multivector) -> Result<GeometricData> {
    p.expect_degree(2, "bivector")?;
    let chart = p.chart();
    let d = chart.leaf_dim();
    let n = chart.n;
    let px = leaf_block(p);
    let inv = inverse(&px, chart).ok_or(Error::HorizontalDegeneracy)?;
    let pxy = mixed_block(p);
    let py = fiber_block(p);

    let beta: Vec<Vec<RatFunc>> = (0..d)
        .map(|i| {
            (0..n)
                .map(|k| {
                    (0..d).fold(RatFunc::zero(chart), |acc, j| {
                        &acc + &(&inv[i][j] * &pxy[j][k])
                    })
                })
                .collect()
        })
        .collect();

    // 𝒱_{pq} = Π^Y_{pq} − ½ Σ_l (β_{lp} Π^{XY}_{lq} − β_{lq} Π^{XY}_{lp})
    let h = half(chart);
    let mut vert = Multivector::zero(chart, 2);
    for pp in 0..n {
        for q in pp + 1..n {
            let corr = (0..d).fold(RatFunc::zero(chart), |acc, l| {
                &acc + &(&(&beta[l][pp] * &pxy[l][q]) - &(&beta[l][q] * &pxy[l][pp]))
            });
            let v = &py[pp][q] - &(&h * &corr);
            // stored coefficient is twice the matrix entry
            vert.add_term(vec![chart.y(pp), chart.y(q)], v.scale_int(2));
        }
    }

    let mhalf = -half(chart);
    let f_matrix: FuncMatrix = inv
        .iter()
        .map(|row| row.iter().map(|e| &mhalf * e).collect())
        .collect();
    let leaf_form = LeafForm::from_matrix(chart, &f_matrix)?;
    GeometricData::new(Connection::new(chart, beta)?, vert, leaf_form)
}

/// `Π = Σ Π^X_{ij} X_i∧X_j + 𝒱` with `Π^X = −½ F⁻¹`.
pub fn reconstruct(data: &GeometricData) -> Result<Multivector> {
    Ok(&horizontal_from_data(data)? + &data.vert)
}

/// `Π_H = Σ_{i,j} Π^X_{ij} X_i∧X_j` built from geometric data.
pub fn horizontal_from_data(data: &GeometricData) -> Result<Multivector> {
    let chart = data.chart();
    let inv = inverse(&data.leaf_form.matrix(), chart).ok_or(Error::DataDegeneracy)?;
    let lifts: Vec<Multivector> = (0..chart.leaf_dim())
        .map(|i| horizontal_lift(&data.conn, i))
        .collect();
    let mut out = Multivector::zero(chart, 2);
    for i in 0..chart.leaf_dim() {
        for j in i + 1..chart.leaf_dim() {
            // 2 Π^X_{ij} = −F⁻¹_{ij}
            let c = -&inv[i][j];
            if c.is_zero() {
                continue;
            }
            out = &out + &wedge(&lifts[i], &lifts[j]).scale(&c);
        }
    }
    Ok(out)
}

/// `Π_H ∈ Λ²Hor`.
pub fn horizontal_part(p: &Multivector) -> Result<Multivector> {
    let data = extract_geometric_data(p)?;
    horizontal_from_data(&data)
}

/// `𝒱 ∈ Λ²Ver`.
pub fn vertical_part(p: &Multivector) -> Result<Multivector> {
    Ok(extract_geometric_data(p)?.vert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_ratfunc;

    fn chart() -> ChartSpec {
        ChartSpec::new(1, 3).unwrap()
    }

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(chart(), s).unwrap()
    }

    fn so3() -> Multivector {
        let c = chart();
        let mut v = Multivector::zero(c, 2);
        v.add_unsorted(&[c.y(0), c.y(1)], r("y3"));
        v.add_unsorted(&[c.y(1), c.y(2)], r("y1"));
        v.add_unsorted(&[c.y(2), c.y(0)], r("y2"));
        v
    }

    fn symplectic() -> Multivector {
        Multivector::basis(chart(), &[0, 1], r("1"))
    }

    #[test]
    fn nondegeneracy_predicate() {
        let c1 = ChartSpec::new(1, 1).unwrap();
        assert!(is_horizontally_nondegenerate(&Multivector::basis(
            c1,
            &[0, 1],
            RatFunc::one(c1)
        )));
        let c2 = ChartSpec::new(1, 2).unwrap();
        assert!(!is_horizontally_nondegenerate(&Multivector::basis(
            c2,
            &[c2.y(0), c2.y(1)],
            RatFunc::one(c2)
        )));
        let mut p = symplectic();
        p.add_term(vec![0, chart().y(0)], r("y1"));
        assert!(is_horizontally_nondegenerate(&p));
    }

    #[test]
    fn constant_symplectic_data() {
        let data = extract_geometric_data(&symplectic()).unwrap();
        assert_eq!(data.conn, Connection::trivial(chart()));
        assert!(data.vert.is_zero());
        assert_eq!(data.leaf_form.get(&[0, 1]), r("1"));
        assert_eq!(reconstruct(&data).unwrap(), symplectic());
    }

    #[test]
    fn block_structure_so3() {
        let p = &symplectic() + &so3();
        let data = extract_geometric_data(&p).unwrap();
        assert_eq!(data.conn, Connection::trivial(chart()));
        assert_eq!(data.vert, so3());
        assert_eq!(data.leaf_form.get(&[0, 1]), r("1"));
        assert_eq!(horizontal_part(&p).unwrap(), symplectic());
        assert!(vertical_part(&symplectic()).unwrap().is_zero());
    }

    #[test]
    fn mixed_terms_round_trip() {
        let c = chart();
        let mut p = Multivector::basis(c, &[0, 1], r("2 + y1"));
        p.add_term(vec![0, c.y(2)], r("x1*y2"));
        p.add_term(vec![1, c.y(0)], r("3*y3 - 1"));
        p.add_term(vec![c.y(0), c.y(1)], r("x2"));
        let data = extract_geometric_data(&p).unwrap();
        assert_eq!(reconstruct(&data).unwrap(), p);
        let (h, v) = (horizontal_part(&p).unwrap(), vertical_part(&p).unwrap());
        assert!((&(&h + &v) - &p).is_zero());
    }

    #[test]
    fn degenerate_inputs() {
        let c = chart();
        let p = Multivector::basis(c, &[0, c.y(0)], r("1"));
        assert_eq!(extract_geometric_data(&p), Err(Error::HorizontalDegeneracy));
        let data = GeometricData::new(
            Connection::trivial(c),
            Multivector::zero(c, 2),
            LeafForm::zero(c, 2),
        )
        .unwrap();
        assert_eq!(reconstruct(&data), Err(Error::DataDegeneracy));
    }

    #[test]
    fn lifts() {
        let c = chart();
        assert_eq!(
            horizontal_lift(&Connection::trivial(c), 0),
            Multivector::coordinate_field(c, 0)
        );
        let mut beta = vec![vec![RatFunc::zero(c); 3]; 2];
        beta[0][0] = r("y1");
        let conn = Connection::new(c, beta).unwrap();
        let lift = horizontal_lift(&conn, 0);
        let mut expected = Multivector::coordinate_field(c, 0);
        expected.add_term(vec![c.y(0)], r("y1"));
        assert_eq!(lift, expected);
        assert!(try_horizontal_lift(&conn, 2).is_err());
    }
}
