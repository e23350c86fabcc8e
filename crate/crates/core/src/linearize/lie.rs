use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratfield::{ChartSpec, Poly, RatFunc, Rational};
use crate::tensor_calc::Multivector;

/// Structure constants `[e_i, e_j] = Σ_k c^k_{ij} e_k` of a Lie algebra,
/// stored for `i < j` with zero-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    n: usize,
    c: BTreeMap<(usize, usize, usize), Rational>,
}

impl LieAlgebraSpec {
    /// Builds from entries `(i, j, k, c^k_{ij})`. Entries with `i > j` are
    /// folded onto `(j, i)` by antisymmetry; contradictory entries and
    /// failures of the Jacobi identity are rejected.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("Lie algebra dimension must be positive"));
        }
        let mut c: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::usage(format!(
                    "structure constant index out of range for dimension {n}"
                )));
            }
            if i == j {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::usage("structure constants must be antisymmetric"));
            }
            let (key, v) = if i < j {
                ((i, j, k), v)
            } else {
                ((j, i, k), -v)
            };
            match c.get(&key) {
                Some(old) if *old != v => {
                    return Err(Error::usage(format!(
                        "conflicting values for c^{}_{}{}",
                        key.2 + 1,
                        key.0 + 1,
                        key.1 + 1
                    )))
                }
                _ => {
                    if !v.is_zero() {
                        c.insert(key, v);
                    }
                }
            }
        }
        let g = LieAlgebraSpec { n, c };
        if !g.satisfies_jacobi() {
            return Err(Error::usage(
                "structure constants violate the Jacobi identity",
            ));
        }
        Ok(g)
    }

    /// `so(3)`: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
    pub fn so3() -> Self {
        let one = Rational::from_integer(1.into());
        Self::new(
            3,
            [
                (0, 1, 2, one.clone()),
                (1, 2, 0, one.clone()),
                (2, 0, 1, one),
            ],
        )
        .expect("so(3) is a Lie algebra")
    }

    /// `sl(2)` in the basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let q = |v: i64| Rational::from_integer(v.into());
        Self::new(3, [(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))])
            .expect("sl(2) is a Lie algebra")
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(n, []).expect("abelian algebra is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `c^k_{ij}` for any `i, j`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self
                .c
                .get(&(i, j, k))
                .cloned()
                .unwrap_or_else(Rational::zero),
            Greater => -self
                .c
                .get(&(j, i, k))
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// Nonzero `(i, j, k, c^k_{ij})` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.c.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.is_empty()
    }

    fn satisfies_jacobi(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s += self.get(i, j, m) * self.get(m, k, l)
                                + self.get(j, k, m) * self.get(m, i, l)
                                + self.get(k, i, m) * self.get(m, j, l);
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `𝒱⁽¹⁾ = Σ_{i<j} (Σ_k c^k_{ij} y_k) ∂y_i∧∂y_j` on a chart with `n` fiber variables.
    pub fn induced_bivector(&self, chart: ChartSpec) -> Result<Multivector> {
        if chart.n != self.n {
            return Err(Error::usage(format!(
                "Lie algebra of dimension {} on a chart with {} fiber variables",
                self.n, chart.n
            )));
        }
        let mut v = Multivector::zero(chart, 2);
        for (i, j, k, c) in self.entries() {
            let coeff = RatFunc::var(chart, chart.y(k)).scale(c);
            v.add_term(vec![chart.y(i), chart.y(j)], coeff);
        }
        Ok(v)
    }

    /// Reads structure constants off a vertical bivector whose coefficients
    /// are linear forms in `y` with constant coefficients.
    pub fn from_linear_bivector(v: &Multivector) -> Result<Self> {
        let chart = v.chart();
        v.expect_degree(2, "linear vertical bivector")?;
        if !v.is_vertical() {
            return Err(Error::usage("linear part has non-vertical components"));
        }
        let leaf = chart.leaf_dim();
        let mut entries = Vec::new();
        for (idx, coeff) in v.terms() {
            let p: Poly = coeff.as_poly().ok_or_else(|| {
                Error::usage(format!("linear part coefficient {coeff} is not polynomial"))
            })?;
            for (m, c) in p.terms() {
                let fiber: Vec<usize> = chart
                    .fiber_vars()
                    .filter(|&var| m.exponent(var) > 0)
                    .collect();
                let leaf_free = chart.leaf_vars().all(|var| m.exponent(var) == 0);
                if m.degree() != 1 || fiber.len() != 1 || !leaf_free {
                    return Err(Error::usage(format!(
                        "linear part coefficient {coeff} is not a constant-coefficient linear form in y"
                    )));
                }
                entries.push((idx[0] - leaf, idx[1] - leaf, fiber[0] - leaf, c.clone()));
            }
        }
        Self::new(chart.n, entries)
    }
}
