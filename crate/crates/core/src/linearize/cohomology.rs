use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::jets::jet_split;
use super::lie::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poisson_laws::increasing_tuples;
use crate::ratfield::{poly_gcd, ChartSpec, Monomial, Poly, RatFunc, Rational};
use crate::tensor_calc::{schouten, Multivector};

/// Monomial basis of vertical `grade`-vectors whose coefficients are
/// constant-coefficient forms of degree `degree` in `y`.
#[derive(Clone, Debug)]
pub(crate) struct GradedBasis {
    chart: ChartSpec,
    grade: usize,
    elems: Vec<(Vec<u32>, Vec<usize>)>,
    index: HashMap<(Vec<u32>, Vec<usize>), usize>,
}

fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl GradedBasis {
    pub(crate) fn new(chart: ChartSpec, grade: usize, degree: u32) -> Self {
        let mut elems = Vec::new();
        for idx in increasing_tuples(chart.n, grade) {
            for e in exponent_vectors(chart.n, degree) {
                elems.push((e, idx.clone()));
            }
        }
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        GradedBasis {
            chart,
            grade,
            elems,
            index,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    fn monomial(&self, exps: &[u32]) -> Monomial {
        let mut full = vec![0; self.chart.nvars()];
        for (k, &e) in exps.iter().enumerate() {
            full[self.chart.y(k)] = e;
        }
        Monomial::from_exponents(full)
    }

    pub(crate) fn element(&self, i: usize) -> Multivector {
        let (exps, idx) = &self.elems[i];
        let coeff = Poly::term(self.chart, self.monomial(exps), Rational::one());
        let vars: Vec<usize> = idx.iter().map(|&k| self.chart.y(k)).collect();
        Multivector::basis(self.chart, &vars, RatFunc::from_poly(coeff))
    }

    /// Combination `Σ v_i e_i`.
    pub(crate) fn combine(&self, v: &[Rational]) -> Multivector {
        let mut out = Multivector::zero(self.chart, self.grade);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (exps, idx) = &self.elems[i];
                let coeff = Poly::term(self.chart, self.monomial(exps), c.clone());
                out.add_term(
                    idx.iter().map(|&k| self.chart.y(k)).collect(),
                    RatFunc::from_poly(coeff),
                );
            }
        }
        out
    }

    /// Coordinates of a constant-coefficient homogeneous vertical multivector.
    pub(crate) fn coordinates(&self, w: &Multivector) -> Result<Vec<Rational>> {
        let leaf = self.chart.leaf_dim();
        let mut v = vec![Rational::zero(); self.len()];
        for (idx, c) in w.terms() {
            let p = c
                .as_poly()
                .ok_or_else(|| Error::usage("cochain coefficient is not polynomial"))?;
            let local: Vec<usize> = idx.iter().map(|&i| i - leaf).collect();
            for (m, coeff) in p.terms() {
                let exps: Vec<u32> = self.chart.fiber_vars().map(|var| m.exponent(var)).collect();
                let pos = self
                    .index
                    .get(&(exps, local.clone()))
                    .ok_or_else(|| Error::usage("cochain is not in the homogeneous space"))?;
                v[*pos] = coeff.clone();
            }
        }
        Ok(v)
    }
}

fn algebra_chart(g: &LieAlgebraSpec) -> ChartSpec {
    ChartSpec::new(1, g.dim()).expect("positive dimension")
}

fn coboundary_on(g: &LieAlgebraSpec, chart: ChartSpec, d: u32, grade: usize) -> QMatrix {
    let v1 = g.induced_bivector(chart).expect("chart matches algebra");
    let src = GradedBasis::new(chart, grade, d);
    let tgt = GradedBasis::new(chart, grade + 1, d);
    let mut m = QMatrix::zeros(tgt.len(), src.len());
    for j in 0..src.len() {
        let img = schouten(&v1, &src.element(j));
        let col = tgt
            .coordinates(&img)
            .expect("coboundary preserves the fiber degree");
        for (i, v) in col.into_iter().enumerate() {
            m.data[i][j] = v;
        }
    }
    m
}

/// Matrix of `δ = [𝒱⁽¹⁾, ·]` from vertical `source_grade`-vectors with
/// degree-`d` coefficients to `(source_grade + 1)`-vectors of the same degree.
pub fn coboundary_matrix(g: &LieAlgebraSpec, d: u32, source_grade: usize) -> QMatrix {
    coboundary_on(g, algebra_chart(g), d, source_grade)
}

/// Graded first cohomology of the linear Poisson structure of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: u32,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h1: usize,
    /// Cocycles whose classes span `H¹` in this degree.
    pub basis_witnesses: Vec<Multivector>,
}

/// `dim H¹_d = dim ker(δ on vector fields) − rank(δ on functions)`.
pub fn h1_graded(g: &LieAlgebraSpec, d: u32) -> CohomologyReport {
    let chart = algebra_chart(g);
    let m0 = coboundary_on(g, chart, d, 0);
    let m1 = coboundary_on(g, chart, d, 1);
    let kernel = m1.kernel();
    let rank0 = m0.rank();
    let dim_cocycles = kernel.len();
    let dim_h1 = dim_cocycles - rank0;

    let basis = GradedBasis::new(chart, 1, d);
    let mut span = m0.clone();
    let mut rank = rank0;
    let mut basis_witnesses = Vec::new();
    for z in kernel {
        if basis_witnesses.len() == dim_h1 {
            break;
        }
        let mut trial = span.clone();
        for (row, v) in trial.data.iter_mut().zip(&z) {
            row.push(v.clone());
        }
        trial.cols += 1;
        let r = trial.rank();
        if r > rank {
            rank = r;
            span = trial;
            basis_witnesses.push(basis.combine(&z));
        }
    }
    CohomologyReport {
        degree: d,
        dim_cocycles,
        dim_coboundaries: rank0,
        dim_h1,
        basis_witnesses,
    }
}

/// Outcome of a homological equation `δ(c) = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologicalSolution {
    Solved(Multivector),
    /// The target is a cocycle outside the image; the residual is its
    /// reduction modulo the image.
    Obstructed(Multivector),
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = poly_gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).monic()
}

/// Solves `[𝒱⁽¹⁾, c] = target` for a vertical `source_grade`-vector `c`,
/// where `target` is vertical of grade `source_grade + 1` and homogeneous
/// in `y`. Coefficients may depend on `x`; the equation is solved for each
/// `x`-monomial after clearing `y`-free denominators.
pub fn solve_homological(
    g: &LieAlgebraSpec,
    target: &Multivector,
    source_grade: usize,
) -> Result<HomologicalSolution> {
    let chart = target.chart();
    if chart.n != g.dim() {
        return Err(Error::usage(format!(
            "target has {} fiber variables, algebra has dimension {}",
            chart.n,
            g.dim()
        )));
    }
    target.expect_degree(source_grade + 1, "homological target")?;
    if !target.is_vertical() {
        return Err(Error::usage("homological target must be vertical"));
    }
    if target.is_zero() {
        return Ok(HomologicalSolution::Solved(Multivector::zero(
            chart,
            source_grade,
        )));
    }
    let jets = jet_split(target)?;
    let degrees: Vec<u32> = jets.degrees().collect();
    let [d] = degrees[..] else {
        return Err(Error::usage("homological target must be homogeneous in y"));
    };

    let den = target.terms().fold(Poly::one(chart), |acc, (_, c)| {
        lcm(&acc, c.normalized().denom())
    });
    let cleared = target.scale(&RatFunc::from_poly(den.clone()));
    let mut blocks: BTreeMap<Monomial, Multivector> = BTreeMap::new();
    for (idx, c) in cleared.terms() {
        let p = c.as_poly().expect("denominators cleared");
        for (xm, fiber) in p.split_leaf_monomials() {
            blocks
                .entry(xm)
                .or_insert_with(|| Multivector::zero(chart, source_grade + 1))
                .add_term(idx.clone(), RatFunc::from_poly(fiber));
        }
    }

    let m = coboundary_on(g, chart, d, source_grade);
    let src = GradedBasis::new(chart, source_grade, d);
    let tgt = GradedBasis::new(chart, source_grade + 1, d);
    let mut solution = Multivector::zero(chart, source_grade);
    let mut residual = Multivector::zero(chart, source_grade + 1);
    for (xm, block) in &blocks {
        let xpoly = RatFunc::from_poly(Poly::term(chart, xm.clone(), Rational::one()));
        let b = tgt.coordinates(block)?;
        match m.solve(&b) {
            Some(sol) => solution = &solution + &src.combine(&sol).scale(&xpoly),
            None => {
                let r = m.reduce_mod_image(&b);
                residual = &residual + &tgt.combine(&r).scale(&xpoly);
            }
        }
    }
    let inv_den = RatFunc::new(Poly::one(chart), den);
    if residual.is_zero() {
        return Ok(HomologicalSolution::Solved(solution.scale(&inv_den)));
    }
    let v1 = g.induced_bivector(chart)?;
    if !schouten(&v1, target).is_zero() {
        return Err(Error::MalformedTarget);
    }
    Ok(HomologicalSolution::Obstructed(residual.scale(&inv_den)))
}
