use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{poly_gcd, ChartSpec, Poly, Rational};
use crate::error::{Error, Result};

/// Exact rational function `num / den` over a chart.
///
/// Denominators are always monic. Constructors cancel the gcd; arithmetic is
/// lazy and only cancels when one denominator divides the other, so values
/// may carry common factors. Equality never relies on reduction: two
/// fractions are equal iff their cross products agree. Use
/// [`RatFunc::normalized`] for the reduced form.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and reduces `num / den`. Panics if `den` is zero; use
    /// [`RatFunc::try_new`] for untrusted input.
    pub fn new(num: Poly, den: Poly) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(
            num.chart(),
            den.chart(),
            "rational function over two charts"
        );
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                den: Poly::one(num.chart()),
                num,
            };
        }
        if let Some(c) = den.constant_value() {
            let inv = c.recip();
            return RatFunc {
                num: num.scale(&inv),
                den: Poly::one(den.chart()),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero(chart: ChartSpec) -> Self {
        Self::from_poly(Poly::zero(chart))
    }

    pub fn one(chart: ChartSpec) -> Self {
        Self::from_poly(Poly::one(chart))
    }

    pub fn from_int(chart: ChartSpec, c: i64) -> Self {
        Self::from_poly(Poly::from_int(chart, c))
    }

    pub fn constant(chart: ChartSpec, c: Rational) -> Self {
        Self::from_poly(Poly::constant(chart, c))
    }

    pub fn var(chart: ChartSpec, var: usize) -> Self {
        Self::from_poly(Poly::var(chart, var))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.chart());
        RatFunc { num: p, den }
    }

    pub fn chart(&self) -> ChartSpec {
        self.num.chart()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant() || self.num.div_exact(&self.den).is_some()
    }

    /// The polynomial this function equals, if any.
    pub fn as_poly(&self) -> Option<Poly> {
        if let Some(c) = self.den.constant_value() {
            return Some(self.num.scale(&c.recip()));
        }
        self.num.div_exact(&self.den)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_poly()?.constant_value()
    }

    /// Gcd-reduced form with monic denominator.
    pub fn normalized(&self) -> RatFunc {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    /// True when the function does not depend on any fiber variable.
    pub fn is_fiber_free(&self) -> bool {
        if self.num.is_fiber_free() && self.den.is_fiber_free() {
            return true;
        }
        let r = self.normalized();
        r.num.is_fiber_free() && r.den.is_fiber_free()
    }

    pub fn checked_recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.checked_recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: if c.is_zero() {
                Poly::one(self.chart())
            } else {
                self.den.clone()
            },
        }
    }

    pub fn scale_int(&self, c: i64) -> RatFunc {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Quotient-rule partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> RatFunc {
        let dn = self.num.partial(var);
        if self.den.is_constant() {
            return RatFunc {
                num: dn,
                den: self.den.clone(),
            };
        }
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::raw(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::raw(num, self.den.pow(2))
    }

    /// Chart-checked partial derivative.
    pub fn partial_derivative(&self, var: usize) -> Result<RatFunc> {
        self.chart().check_var(var)?;
        Ok(self.partial(var))
    }

    /// Restriction to the leaf `y = 0`.
    pub fn evaluate_on_leaf(&self) -> Result<RatFunc> {
        let mut den = self.den.restrict_to_leaf();
        let mut num = self.num.restrict_to_leaf();
        if den.is_zero() {
            let r = self.normalized();
            den = r.den.restrict_to_leaf();
            if den.is_zero() {
                return Err(Error::SingularRestriction(self.to_string()));
            }
            num = r.num.restrict_to_leaf();
        }
        Ok(Self::reduced(num, den))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Homogeneous components in the fiber variables, keyed by degree.
    /// The denominator must be free of fiber variables.
    pub fn split_fiber_degree(&self) -> Result<BTreeMap<u32, RatFunc>> {
        let r = if self.den.is_fiber_free() {
            self.clone()
        } else {
            self.normalized()
        };
        if !r.den.is_fiber_free() {
            return Err(Error::NonPolynomialJet(self.to_string()));
        }
        Ok(r.num
            .split_fiber_degree()
            .into_iter()
            .map(|(d, p)| (d, Self::reduced(p, r.den.clone())))
            .collect())
    }

    fn add_impl(&self, rhs: &RatFunc, negate: bool) -> RatFunc {
        assert_eq!(
            self.chart(),
            rhs.chart(),
            "rational functions over two charts"
        );
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Self::raw(&self.num + &rnum, self.den.clone());
        }
        if rhs.den.is_one() {
            return Self::raw(&self.num + &(&rnum * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return Self::raw(&(&self.num * &rhs.den) + &rnum, rhs.den.clone());
        }
        if self.den.total_degree() <= rhs.den.total_degree() {
            if let Some(q) = rhs.den.div_exact(&self.den) {
                return Self::raw(&(&self.num * &q) + &rnum, rhs.den.clone());
            }
        } else if let Some(q) = self.den.div_exact(&rhs.den) {
            return Self::raw(&self.num + &(&rnum * &q), self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rnum * &a);
        Self::raw(num, &(&a * &b) * &g)
    }

    /// Assembles a fraction whose denominator is already monic.
    fn raw(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                den: Poly::one(num.chart()),
                num,
            };
        }
        RatFunc { num, den }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.chart() == other.chart() && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let r = self.normalized();
        if r.den.is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "({})/({})", r.num, r.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        assert_eq!(
            self.chart(),
            rhs.chart(),
            "rational functions over two charts"
        );
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.chart());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: self.den.clone(),
            };
        }
        RatFunc::raw(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_ratfunc;

    fn chart() -> ChartSpec {
        ChartSpec::new(1, 2).unwrap()
    }

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(chart(), s).unwrap()
    }

    #[test]
    fn inverse_terms_cancel() {
        assert!((&r("1/x1") + &r("-1/x1")).is_zero());
        assert!((&r("x1/y1") * &r("y1/x1")).is_one());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let unreduced = RatFunc {
            num: r("x1^2 - y1^2").numer().clone(),
            den: r("x1 + y1").numer().clone(),
        };
        assert_eq!(unreduced, r("x1 - y1"));
        // the reducing constructor lands on the polynomial itself
        let reduced = RatFunc::new(unreduced.num.clone(), unreduced.den.clone());
        assert!(reduced.denom().is_one());
    }

    #[test]
    fn quotient_rule() {
        assert_eq!(r("x1*y2").partial(3), r("x1"));
        assert_eq!(r("1/y1").partial(2), r("-1/y1^2"));
    }

    #[test]
    fn mixed_partials_commute() {
        let f = r("x1^2*y1^3");
        let a = f.partial(0).partial(2);
        let b = f.partial(2).partial(0);
        assert_eq!(a, b);
        assert_eq!(a, r("6*x1*y1^2"));
    }

    #[test]
    fn leaf_restriction() {
        assert_eq!(r("x1 + y1*x2 + y2^2").evaluate_on_leaf().unwrap(), r("x1"));
        assert_eq!(r("1/(1 + y1)").evaluate_on_leaf().unwrap(), r("1"));
        assert!(matches!(
            r("1/y1").evaluate_on_leaf(),
            Err(Error::SingularRestriction(_))
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(r("x1").checked_div(&r("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn out_of_range_derivative() {
        assert!(r("x1").partial_derivative(4).is_err());
    }
}
