//! Exact coefficient arithmetic over a trivialized chart.
//!
//! Every object in the crate lives over a [`ChartSpec`]: `2s` leaf
//! coordinates `x1..x{2s}` followed by `n` fiber coordinates `y1..yn`.
//! Polynomials are sparse maps from exponent vectors to exact rationals and
//! rational functions are lazily reduced fractions of polynomials.

mod gcd;
mod parse;
mod poly;
mod ratfunc;

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gcd::poly_gcd;
pub use parse::{parse_poly, parse_ratfunc};
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;

/// Arbitrary precision rational number used for every coefficient.
pub type Rational = BigRational;

/// Shape of a chart: leaf of dimension `2s`, fibers of rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartSpec {
    pub s: usize,
    pub n: usize,
}

impl ChartSpec {
    pub fn new(s: usize, n: usize) -> Result<Self> {
        if s == 0 || n == 0 {
            return Err(Error::usage(format!(
                "chart needs s >= 1 and n >= 1, got s = {s}, n = {n}"
            )));
        }
        Ok(ChartSpec { s, n })
    }

    /// Number of leaf coordinates, `2s`.
    pub fn leaf_dim(&self) -> usize {
        2 * self.s
    }

    pub fn nvars(&self) -> usize {
        2 * self.s + self.n
    }

    /// Variable index of `x{i+1}`.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i < self.leaf_dim());
        i
    }

    /// Variable index of `y{k+1}`.
    pub fn y(&self, k: usize) -> usize {
        debug_assert!(k < self.n);
        self.leaf_dim() + k
    }

    pub fn is_leaf_var(&self, var: usize) -> bool {
        var < self.leaf_dim()
    }

    pub fn is_fiber_var(&self, var: usize) -> bool {
        var >= self.leaf_dim() && var < self.nvars()
    }

    pub fn leaf_vars(&self) -> std::ops::Range<usize> {
        0..self.leaf_dim()
    }

    pub fn fiber_vars(&self) -> std::ops::Range<usize> {
        self.leaf_dim()..self.nvars()
    }

    pub fn check_var(&self, var: usize) -> Result<()> {
        if var < self.nvars() {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars(),
            })
        }
    }

    pub fn var_name(&self, var: usize) -> String {
        if self.is_leaf_var(var) {
            format!("x{}", var + 1)
        } else {
            format!("y{}", var - self.leaf_dim() + 1)
        }
    }

    /// Inverse of [`ChartSpec::var_name`]; `None` for malformed or out of range names.
    pub fn parse_var(&self, name: &str) -> Option<usize> {
        let (kind, digits) = name.split_at(1.min(name.len()));
        let k: usize = digits.parse().ok()?;
        if k == 0 {
            return None;
        }
        match kind {
            "x" if k <= self.leaf_dim() => Some(k - 1),
            "y" if k <= self.n => Some(self.leaf_dim() + k - 1),
            _ => None,
        }
    }

    pub(crate) fn ensure_same(&self, other: &ChartSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chart(s={}, n={})", self.s, self.n)
    }
}

/// Binary polynomial operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Binary rational function operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Chart-checked polynomial arithmetic.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    a.chart().ensure_same(&b.chart())?;
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

/// Chart-checked rational function arithmetic; division by zero is an error.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: RatOp) -> Result<RatFunc> {
    a.chart().ensure_same(&b.chart())?;
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Sub => Ok(a - b),
        RatOp::Mul => Ok(a * b),
        RatOp::Div => a.checked_div(b),
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
