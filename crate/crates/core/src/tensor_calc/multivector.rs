use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::ratfield::{ChartSpec, RatFunc};

/// Sorts `indices` ascending and returns the sign of the sorting
/// permutation, or `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Multivector field of fixed degree over a chart.
///
/// Stored on the basis `∂_{i1}∧…∧∂_{ik}` with strictly increasing indices;
/// no zero coefficient is kept. Degree 0 is a function, degree 1 a vector
/// field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    chart: ChartSpec,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

impl Multivector {
    pub fn zero(chart: ChartSpec, degree: usize) -> Self {
        Multivector {
            chart,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: RatFunc) -> Self {
        let mut m = Self::zero(f.chart(), 0);
        m.add_term(Vec::new(), f);
        m
    }

    /// Coordinate vector field `∂_var`.
    pub fn coordinate_field(chart: ChartSpec, var: usize) -> Self {
        Self::basis(chart, &[var], RatFunc::one(chart))
    }

    /// `coeff · ∂_{indices[0]}∧…`, indices in any order (repeats give zero).
    pub fn basis(chart: ChartSpec, indices: &[usize], coeff: RatFunc) -> Self {
        let mut m = Self::zero(chart, indices.len());
        m.add_unsorted(indices, coeff);
        m
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.terms.iter()
    }

    /// Coefficient on a sorted index tuple (zero when absent).
    pub fn coeff(&self, indices: &[usize]) -> RatFunc {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.chart))
    }

    /// Component of a vector field along `∂_var`.
    pub fn component(&self, var: usize) -> RatFunc {
        debug_assert_eq!(self.degree, 1);
        self.coeff(&[var])
    }

    /// Adds `coeff` on a strictly increasing index tuple.
    pub fn add_term(&mut self, indices: Vec<usize>, coeff: RatFunc) {
        debug_assert_eq!(indices.len(), self.degree);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&i| i < self.chart.nvars()));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(indices) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `coeff · ∂_{indices}` for an arbitrary ordering of the indices.
    pub fn add_unsorted(&mut self, indices: &[usize], coeff: RatFunc) {
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            let c = if sign < 0 { -coeff } else { coeff };
            self.add_term(sorted, c);
        }
    }

    pub fn scale(&self, f: &RatFunc) -> Multivector {
        let mut out = Self::zero(self.chart, self.degree);
        if f.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * f);
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Multivector {
        self.scale(&RatFunc::from_int(self.chart, c))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> Multivector {
        let mut out = Self::zero(self.chart, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs(
        &self,
        mut f: impl FnMut(&RatFunc) -> Result<RatFunc>,
    ) -> Result<Multivector> {
        let mut out = Self::zero(self.chart, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Keeps only the terms whose index tuple satisfies `keep`.
    pub fn filter_indices(&self, keep: impl Fn(&[usize]) -> bool) -> Multivector {
        Multivector {
            chart: self.chart,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Every index is a fiber direction.
    pub fn is_vertical(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.iter().all(|&i| self.chart.is_fiber_var(i)))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RatFunc::is_polynomial)
    }

    /// Applies a vector field to a function: `X(f) = Σ X^a ∂_a f`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        assert_eq!(self.degree, 1, "only vector fields act on functions");
        let mut acc = RatFunc::zero(self.chart);
        for (k, c) in &self.terms {
            let d = f.partial(k[0]);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    fn check_same(&self, other: &Multivector) {
        assert_eq!(
            self.chart, other.chart,
            "multivectors over different charts"
        );
        assert_eq!(
            self.degree, other.degree,
            "adding multivectors of different degree"
        );
    }

    pub(crate) fn try_same_chart(&self, other: &Multivector) -> Result<()> {
        self.chart.ensure_same(&other.chart)
    }

    pub(crate) fn expect_degree(&self, degree: usize, what: &str) -> Result<()> {
        if self.degree == degree {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "{what} must have degree {degree}, got {}",
                self.degree
            )))
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = k
                .iter()
                .map(|&v| format!("∂{}", self.chart.var_name(v)))
                .collect();
            if names.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", names.join("∧"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &'a Multivector) -> Multivector {
        self.check_same(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &'a Multivector) -> Multivector {
        self.check_same(rhs);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_coeffs(|c| -c)
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// `a ∧ b`, with the Koszul sign of sorting the concatenated indices.
pub fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    assert_eq!(a.chart, b.chart, "multivectors over different charts");
    let mut out = Multivector::zero(a.chart, a.degree + b.degree);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let mut idx = ka.clone();
            idx.extend_from_slice(kb);
            out.add_unsorted(&idx, ca * cb);
        }
    }
    out
}

/// Chart-checked wedge product.
pub fn try_wedge(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.try_same_chart(b)?;
    Ok(wedge(a, b))
}

/// A 1-form on the total space, one component per chart variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector {
    chart: ChartSpec,
    comps: Vec<RatFunc>,
}

impl Covector {
    pub fn zero(chart: ChartSpec) -> Self {
        Covector {
            chart,
            comps: vec![RatFunc::zero(chart); chart.nvars()],
        }
    }

    /// `d(var)`.
    pub fn coordinate(chart: ChartSpec, var: usize) -> Self {
        let mut c = Self::zero(chart);
        c.comps[var] = RatFunc::one(chart);
        c
    }

    pub fn from_components(chart: ChartSpec, comps: Vec<RatFunc>) -> Self {
        assert_eq!(comps.len(), chart.nvars());
        Covector { chart, comps }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn get(&self, var: usize) -> &RatFunc {
        &self.comps[var]
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }
}

/// `df`, the map `var ↦ ∂f/∂var`.
pub fn differential(f: &RatFunc) -> Covector {
    let chart = f.chart();
    Covector {
        chart,
        comps: (0..chart.nvars()).map(|v| f.partial(v)).collect(),
    }
}

/// Contraction of a bivector with a covector in its first slot:
/// `∂a∧∂b ↦ α(∂a)∂b − α(∂b)∂a`.
pub fn sharp(w: &Multivector, alpha: &Covector) -> Multivector {
    assert_eq!(w.degree(), 2, "sharp needs a bivector");
    let chart = w.chart();
    let mut out = Multivector::zero(chart, 1);
    for (k, c) in w.terms() {
        let (a, b) = (k[0], k[1]);
        let ta = alpha.get(a);
        if !ta.is_zero() {
            out.add_term(vec![b], c * ta);
        }
        let tb = alpha.get(b);
        if !tb.is_zero() {
            out.add_term(vec![a], -(c * tb));
        }
    }
    out
}

/// Chart- and degree-checked [`sharp`].
pub fn try_sharp(w: &Multivector, alpha: &Covector) -> Result<Multivector> {
    w.chart().ensure_same(&alpha.chart())?;
    w.expect_degree(2, "sharp argument")?;
    Ok(sharp(w, alpha))
}

/// Full evaluation `w(α₁, …, α_k)`; a coefficient on `∂_I` contributes
/// `det[α_m(∂_{I_l})]`.
pub fn evaluate(w: &Multivector, covectors: &[Covector]) -> RatFunc {
    assert_eq!(
        w.degree(),
        covectors.len(),
        "evaluation needs one covector per slot"
    );
    let chart = w.chart();
    let mut acc = RatFunc::zero(chart);
    for (k, c) in w.terms() {
        let det = small_det(
            &covectors
                .iter()
                .map(|a| k.iter().map(|&i| a.get(i).clone()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            chart,
        );
        if !det.is_zero() {
            acc = &acc + &(c * &det);
        }
    }
    acc
}

/// Bivector pairing `w(α, β)`.
pub fn pair(w: &Multivector, alpha: &Covector, beta: &Covector) -> RatFunc {
    evaluate(w, &[alpha.clone(), beta.clone()])
}

/// Leibniz expansion of a small determinant.
fn small_det(m: &[Vec<RatFunc>], chart: ChartSpec) -> RatFunc {
    let k = m.len();
    if k == 0 {
        return RatFunc::one(chart);
    }
    let mut acc = RatFunc::zero(chart);
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFunc>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * &small_det(&minor, chart);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}
