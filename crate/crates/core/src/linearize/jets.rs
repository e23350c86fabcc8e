use std::collections::BTreeMap;

use crate::error::Result;
use crate::ratfield::{ChartSpec, RatFunc};
use crate::tensor_calc::Multivector;

/// Homogeneous pieces of a multivector by degree in the fiber variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetDecomposition {
    chart: ChartSpec,
    degree: usize,
    parts: BTreeMap<u32, Multivector>,
}

impl JetDecomposition {
    /// Part of fiber degree `d` (zero when absent).
    pub fn part(&self, d: u32) -> Multivector {
        self.parts
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.chart, self.degree))
    }

    pub fn parts(&self) -> &BTreeMap<u32, Multivector> {
        &self.parts
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts.keys().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.parts.keys().next_back().copied()
    }

    /// Sum of the parts, which is the decomposed multivector.
    pub fn sum(&self) -> Multivector {
        self.parts
            .values()
            .fold(Multivector::zero(self.chart, self.degree), |acc, p| {
                &acc + p
            })
    }

    /// Sum of the parts of degree at most `max`.
    pub fn truncated(&self, max: u32) -> Multivector {
        self.parts
            .range(..=max)
            .fold(Multivector::zero(self.chart, self.degree), |acc, (_, p)| {
                &acc + p
            })
    }
}

/// Splits every coefficient into pieces homogeneous in `y`. Coefficients
/// with a fiber variable in the denominator are rejected.
pub fn jet_split(w: &Multivector) -> Result<JetDecomposition> {
    let chart = w.chart();
    let mut parts: BTreeMap<u32, Multivector> = BTreeMap::new();
    for (idx, c) in w.terms() {
        for (d, piece) in c.split_fiber_degree()? {
            parts
                .entry(d)
                .or_insert_with(|| Multivector::zero(chart, w.degree()))
                .add_term(idx.clone(), piece);
        }
    }
    parts.retain(|_, p| !p.is_zero());
    Ok(JetDecomposition {
        chart,
        degree: w.degree(),
        parts,
    })
}

/// Drops every part of fiber degree above `max`.
pub fn truncate(w: &Multivector, max: u32) -> Result<Multivector> {
    Ok(jet_split(w)?.truncated(max))
}

/// `L = Σ y_k ∂y_k`.
pub fn liouville_field(chart: ChartSpec) -> Multivector {
    let mut l = Multivector::zero(chart, 1);
    for k in 0..chart.n {
        l.add_term(vec![chart.y(k)], RatFunc::var(chart, chart.y(k)));
    }
    l
}

/// True iff every nonzero jet part has fiber degree one.
pub fn is_fiberwise_linear(w: &Multivector) -> Result<bool> {
    Ok(jet_split(w)?.degrees().all(|d| d == 1))
}
