use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ChartSpec, Rational};

/// Exponent vector, one entry per chart variable.
///
/// Ordered graded-lexicographically: total degree first, then the earliest
/// variable (x before y) is the most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Degree restricted to the variables in `vars`.
    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> u32 {
        self.0[vars].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// No stored coefficient is zero, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    chart: ChartSpec,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(chart: ChartSpec) -> Self {
        Poly {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(chart: ChartSpec) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: ChartSpec, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        p.add_term(Monomial::one(chart.nvars()), c);
        p
    }

    pub fn from_int(chart: ChartSpec, c: i64) -> Self {
        Self::constant(chart, Rational::from_integer(c.into()))
    }

    /// The coordinate function with variable index `var`.
    pub fn var(chart: ChartSpec, var: usize) -> Self {
        let m = Monomial::one(chart.nvars()).with_exponent(var, 1);
        Self::term(chart, m, Rational::one())
    }

    pub fn term(chart: ChartSpec, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), chart.nvars(), "monomial length mismatch");
        let mut p = Self::zero(chart);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        chart: ChartSpec,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.0.len(), chart.nvars(), "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn has_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// True when no fiber variable occurs.
    pub fn is_fiber_free(&self) -> bool {
        self.chart.fiber_vars().all(|v| !self.has_var(v))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.chart);
        }
        Poly {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            chart: self.chart,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.chart);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.chart);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                out.add_term(
                    m.with_exponent(var, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    /// Substitutes zero for every fiber variable.
    pub fn restrict_to_leaf(&self) -> Poly {
        let leaf = self.chart.leaf_dim();
        Poly {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[leaf..].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a rational point (one value per chart variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.chart.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Splits by homogeneous degree in the fiber variables.
    pub fn split_fiber_degree(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        let fibers = self.chart.fiber_vars();
        for (m, c) in &self.terms {
            out.entry(m.partial_degree(fibers.clone()))
                .or_insert_with(|| Poly::zero(self.chart))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Groups terms by their leaf-variable exponents; each value keeps only
    /// the fiber part of the monomial.
    pub fn split_leaf_monomials(&self) -> BTreeMap<Monomial, Poly> {
        let leaf = self.chart.leaf_dim();
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut xpart = m.clone();
            let mut ypart = m.clone();
            for e in &mut xpart.0[leaf..] {
                *e = 0;
            }
            for e in &mut ypart.0[..leaf] {
                *e = 0;
            }
            out.entry(xpart)
                .or_insert_with(|| Poly::zero(self.chart))
                .add_term(ypart, c.clone());
        }
        out
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Poly {
        self.mul_term(m, &Rational::one())
    }

    /// Rescales so that the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn leading_coefficient_positive(&self) -> bool {
        self.leading_term().is_none_or(|(_, c)| c.is_positive())
    }

    /// Exact quotient `self / d` when `d` divides `self`, otherwise `None`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.chart);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; the keys are
    /// exponents of `var` and the values are free of `var`.
    pub(crate) fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.0[var])
                .or_insert_with(|| Poly::zero(self.chart))
                .add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub(crate) fn var_power(&self, var: usize, e: u32) -> Monomial {
        Monomial::one(self.chart.nvars()).with_exponent(var, e)
    }

    fn assert_chart(&self, other: &Poly) {
        assert_eq!(self.chart, other.chart, "polynomials over different charts");
    }

    pub(crate) fn fmt_coefficient_term(
        chart: &ChartSpec,
        m: &Monomial,
        c: &Rational,
        first: bool,
        f: &mut fmt::Formatter<'_>,
    ) -> fmt::Result {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(chart.var_name(v)),
                _ => factors.push(format!("{}^{}", chart.var_name(v), e)),
            }
        }
        if factors.is_empty() {
            write!(f, "{abs}")
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))
        } else {
            write!(f, "{}*{}", abs, factors.join("*"))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            Poly::fmt_coefficient_term(&self.chart, m, c, i == 0, f)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.assert_chart(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.assert_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.assert_chart(rhs);
        let mut out = Poly::zero(self.chart);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_poly;

    fn chart() -> ChartSpec {
        ChartSpec::new(1, 2).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(chart(), s).unwrap()
    }

    #[test]
    fn cancellation() {
        assert_eq!(&p("x1 + y1") + &p("x1 - y1"), p("2*x1"));
    }

    #[test]
    fn zero_absorbs() {
        let a = p("x1^2 - 3*y2 + 7");
        assert!((&a * &Poly::zero(chart())).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        // term-by-term: y1*y1 + y1*(-y2) + y2*y1 + y2*(-y2)
        let expected = Poly::from_terms(
            chart(),
            [
                (Monomial(vec![0, 0, 2, 0]), Rational::one()),
                (Monomial(vec![0, 0, 0, 2]), -Rational::one()),
            ],
        );
        assert_eq!(&p("y1 + y2") * &p("y1 - y2"), expected);
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - y1^2");
        assert_eq!(a.div_exact(&p("x1 + y1")), Some(p("x1 - y1")));
        assert_eq!(a.div_exact(&p("x1 + 2*y1")), None);
    }

    #[test]
    fn display_order() {
        assert_eq!(p("y2 - 2*x1*y1^2").to_string(), "-2*x1*y1^2 + y2");
        assert_eq!(p("3/2*x2 + 1").to_string(), "3/2*x2 + 1");
    }

    #[test]
    fn fiber_degree_split() {
        let parts = p("x1*y1^2 + y2 + x2 + 3").split_fiber_degree();
        assert_eq!(parts[&0], p("x2 + 3"));
        assert_eq!(parts[&1], p("y2"));
        assert_eq!(parts[&2], p("x1*y1^2"));
    }
}
