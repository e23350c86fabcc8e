//! Schouten–Nijenhuis bracket by Leibniz expansion on decomposable terms.
//!
//! Conventions: `[f, g] = 0`, `[X, f] = X(f)`, `[X, Y]` is the commutator,
//! `[A, B∧C] = [A,B]∧C + (−1)^{(a−1)b} B∧[A,C]` and
//! `[A, B] = −(−1)^{(a−1)(b−1)} [B, A]`.

use super::multivector::{wedge, Multivector};
use crate::error::Result;
use crate::ratfield::{ChartSpec, RatFunc};

fn sign(parity: i64) -> i64 {
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn basis(chart: ChartSpec, idx: &[usize]) -> Multivector {
    Multivector::basis(chart, idx, RatFunc::one(chart))
}

/// `[g, ∂_idx]` for a function `g` given through its partials `dg`;
/// `None` stands for the zero of degree `|idx| − 1 < 0`.
fn function_with_basis(chart: ChartSpec, dg: &[RatFunc], idx: &[usize]) -> Option<Multivector> {
    let (&first, rest) = idx.split_first()?;
    // [g, ∂_i] = −∂_i g
    let head = Multivector::function(-&dg[first]);
    let mut out = wedge(&head, &basis(chart, rest));
    if let Some(tail) = function_with_basis(chart, dg, rest) {
        // (−1)^{(0−1)·1} ∂_i ∧ [g, rest]
        out = &out - &wedge(&basis(chart, &[first]), &tail);
    }
    Some(out)
}

/// `[f ∂_I, ∂_J]` for `f` given through its partials `df`.
fn term_with_basis(
    chart: ChartSpec,
    df: &[RatFunc],
    big_i: &[usize],
    big_j: &[usize],
) -> Multivector {
    let a = big_i.len();
    let Some((&first, rest)) = big_j.split_first() else {
        // [A, 1] = 0
        return Multivector::zero(chart, a.saturating_sub(1));
    };
    // [f ∂_I, ∂_j] = −[∂_j, f ∂_I] = −(∂_j f) ∂_I
    let head = Multivector::basis(chart, big_i, -&df[first]);
    let mut out = wedge(&head, &basis(chart, rest));
    let tail = term_with_basis(chart, df, big_i, rest);
    if !tail.is_zero() {
        let moved = wedge(&basis(chart, &[first]), &tail);
        out = if sign(a as i64 - 1) > 0 {
            &out + &moved
        } else {
            &out - &moved
        };
    }
    out
}

struct Term<'a> {
    indices: &'a [usize],
    coeff: &'a RatFunc,
    partials: Vec<RatFunc>,
}

fn decompose(w: &Multivector) -> Vec<Term<'_>> {
    let nvars = w.chart().nvars();
    w.terms()
        .map(|(k, c)| Term {
            indices: k,
            coeff: c,
            partials: (0..nvars).map(|v| c.partial(v)).collect(),
        })
        .collect()
}

/// `[f ∂_I, g ∂_J] = [f ∂_I, g] ∧ ∂_J + g [f ∂_I, ∂_J]`.
fn bracket_terms(chart: ChartSpec, a: &Term<'_>, b: &Term<'_>, out: &mut Multivector) {
    let deg_a = a.indices.len();
    // [f ∂_I, g] = (−1)^a [g, f ∂_I] = (−1)^a f [g, ∂_I]
    if let Some(g_part) = function_with_basis(chart, &b.partials, a.indices) {
        if !g_part.is_zero() {
            let scaled = g_part.scale(a.coeff);
            let piece = wedge(&scaled, &basis(chart, b.indices));
            accumulate(out, &piece, sign(deg_a as i64));
        }
    }
    let f_part = term_with_basis(chart, &a.partials, a.indices, b.indices);
    if !f_part.is_zero() {
        accumulate(out, &f_part.scale(b.coeff), 1);
    }
}

fn accumulate(out: &mut Multivector, piece: &Multivector, s: i64) {
    for (k, c) in piece.terms() {
        if s > 0 {
            out.add_term(k.clone(), c.clone());
        } else {
            out.add_term(k.clone(), -c);
        }
    }
}

/// Schouten–Nijenhuis bracket; degree `deg a + deg b − 1` (a zero function
/// when both inputs are functions).
pub fn schouten(a: &Multivector, b: &Multivector) -> Multivector {
    assert_eq!(a.chart(), b.chart(), "multivectors over different charts");
    let chart = a.chart();
    let degree = (a.degree() + b.degree()).saturating_sub(1);
    let mut out = Multivector::zero(chart, degree);
    if a.degree() + b.degree() == 0 {
        return out;
    }
    let ta = decompose(a);
    let tb = decompose(b);
    for x in &ta {
        for y in &tb {
            bracket_terms(chart, x, y, &mut out);
        }
    }
    out
}

/// Chart-checked [`schouten`].
pub fn try_schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.try_same_chart(b)?;
    Ok(schouten(a, b))
}

/// Lie derivative of a multivector along a vector field, `[X, w]`.
pub fn lie_derivative(x: &Multivector, w: &Multivector) -> Multivector {
    assert_eq!(x.degree(), 1, "Lie derivative needs a vector field");
    schouten(x, w)
}

/// Degree-checked [`lie_derivative`].
pub fn try_lie_derivative(x: &Multivector, w: &Multivector) -> Result<Multivector> {
    x.try_same_chart(w)?;
    x.expect_degree(1, "Lie derivative direction")?;
    Ok(lie_derivative(x, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::parse_ratfunc;
    use crate::tensor_calc::sharp;

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

    fn liouville() -> Multivector {
        let c = chart();
        let mut l = Multivector::zero(c, 1);
        for k in 0..3 {
            l.add_term(vec![c.y(k)], RatFunc::var(c, c.y(k)));
        }
        l
    }

    #[test]
    fn constant_bivector_commutes_with_itself() {
        let p = Multivector::basis(chart(), &[0, 1], r("1"));
        assert!(schouten(&p, &p).is_zero());
    }

    #[test]
    fn euler_eigenvalue_on_linear_bivector() {
        let c = chart();
        let w = Multivector::basis(c, &[c.y(0), c.y(1)], r("y3"));
        assert_eq!(schouten(&liouville(), &w), -w);
    }

    #[test]
    fn so3_is_poisson() {
        let v = so3();
        assert!(schouten(&v, &v).is_zero());
    }

    #[test]
    fn vector_field_on_function() {
        let c = chart();
        let x = Multivector::basis(c, &[0], r("y1"));
        let f = Multivector::function(r("x1^2"));
        assert_eq!(schouten(&x, &f), Multivector::function(r("2*x1*y1")));
        assert_eq!(schouten(&f, &x), Multivector::function(r("-2*x1*y1")));
    }

    #[test]
    fn bivector_on_function_is_minus_sharp() {
        let f = r("y3 + x1*y1");
        let lhs = schouten(&so3(), &Multivector::function(f.clone()));
        let rhs = sharp(&so3(), &crate::tensor_calc::differential(&f));
        assert_eq!(lhs, -rhs);
    }

    #[test]
    fn lie_derivative_examples() {
        let c = chart();
        let dx1 = Multivector::coordinate_field(c, 0);
        let w = Multivector::basis(c, &[c.y(0), c.y(1)], r("x1"));
        assert_eq!(
            lie_derivative(&dx1, &w),
            Multivector::basis(c, &[c.y(0), c.y(1)], r("1"))
        );
        let constant = Multivector::basis(c, &[c.y(0), c.y(2)], r("7"));
        assert!(lie_derivative(&Multivector::basis(c, &[1], r("3")), &constant).is_zero());
        // rotation about the third axis is Hamiltonian for y3
        let mut rot = Multivector::zero(c, 1);
        rot.add_term(vec![c.y(0)], r("y2"));
        rot.add_term(vec![c.y(1)], r("-y1"));
        assert!(lie_derivative(&rot, &so3()).is_zero());
    }
}
