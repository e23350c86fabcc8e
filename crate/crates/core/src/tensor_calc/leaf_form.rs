use std::collections::BTreeMap;
use std::fmt;

use super::multivector::sort_with_sign;
use crate::error::{Error, Result};
use crate::ratfield::{ChartSpec, RatFunc};

/// A `k`-form on the leaf chart with values in functions on the total
/// space: components `F(∂x_{i1}, …, ∂x_{ik})` for strictly increasing leaf
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafForm {
    chart: ChartSpec,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

impl LeafForm {
    pub fn zero(chart: ChartSpec, degree: usize) -> Self {
        LeafForm {
            chart,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 1-form from its `2s` values on the coordinate fields.
    pub fn from_components(chart: ChartSpec, values: &[RatFunc]) -> Result<Self> {
        if values.len() != chart.leaf_dim() {
            return Err(Error::usage(format!(
                "leaf 1-form needs {} components, got {}",
                chart.leaf_dim(),
                values.len()
            )));
        }
        let mut f = Self::zero(chart, 1);
        for (i, v) in values.iter().enumerate() {
            f.set(&[i], v.clone());
        }
        Ok(f)
    }

    /// A 2-form from an antisymmetric `2s × 2s` matrix (only `i < j` is read).
    pub fn from_matrix(chart: ChartSpec, m: &[Vec<RatFunc>]) -> Result<Self> {
        let d = chart.leaf_dim();
        if m.len() != d || m.iter().any(|row| row.len() != d) {
            return Err(Error::usage(format!("leaf 2-form needs a {d}x{d} matrix")));
        }
        let mut f = Self::zero(chart, 2);
        for i in 0..d {
            if !m[i][i].is_zero() {
                return Err(Error::usage("leaf 2-form matrix has a nonzero diagonal"));
            }
            for j in i + 1..d {
                if m[i][j] != -&m[j][i] {
                    return Err(Error::usage("leaf 2-form matrix is not antisymmetric"));
                }
                f.set(&[i, j], m[i][j].clone());
            }
        }
        Ok(f)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.terms.iter()
    }

    /// Sets the component on a strictly increasing tuple of leaf indices.
    pub fn set(&mut self, indices: &[usize], value: RatFunc) {
        assert_eq!(indices.len(), self.degree);
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must increase"
        );
        assert!(
            indices.iter().all(|&i| self.chart.is_leaf_var(i)),
            "leaf indices only"
        );
        if value.is_zero() {
            self.terms.remove(indices);
        } else {
            self.terms.insert(indices.to_vec(), value);
        }
    }

    /// Component on an arbitrary tuple, with the antisymmetry sign applied.
    pub fn get(&self, indices: &[usize]) -> RatFunc {
        match sort_with_sign(indices) {
            None => RatFunc::zero(self.chart),
            Some((sorted, sign)) => {
                let v = self
                    .terms
                    .get(&sorted)
                    .cloned()
                    .unwrap_or_else(|| RatFunc::zero(self.chart));
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Full antisymmetric matrix of a 2-form.
    pub fn matrix(&self) -> Vec<Vec<RatFunc>> {
        assert_eq!(self.degree, 2);
        let d = self.chart.leaf_dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.get(&[i, j])).collect())
            .collect()
    }

    pub fn map_values(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> LeafForm {
        let mut out = Self::zero(self.chart, self.degree);
        for (k, v) in &self.terms {
            out.set(k, f(v));
        }
        out
    }

    pub fn add(&self, other: &LeafForm) -> LeafForm {
        assert_eq!(self.chart, other.chart);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let sum = &out.get(k) + v;
            out.set(k, sum);
        }
        out
    }
}

impl fmt::Display for LeafForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = k
                .iter()
                .map(|&v| format!("d{}", self.chart.var_name(v)))
                .collect();
            write!(f, "({v})*{}", names.join("∧"))?;
        }
        Ok(())
    }
}
