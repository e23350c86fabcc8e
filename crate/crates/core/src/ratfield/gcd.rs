//! Multivariate GCD over the rationals by recursive primitive remainder
//! sequences: content in the main variable is split off and handled one
//! variable down, primitive parts are reduced with pseudo-remainders.

use super::Poly;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.chart());
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    let nvars = a.chart().nvars();
    let var = (0..nvars)
        .find(|&v| a.has_var(v) || b.has_var(v))
        .expect("non-constant polynomial has a variable");
    match (a.has_var(var), b.has_var(var)) {
        (true, false) => poly_gcd(&content(a, var), b),
        (false, true) => poly_gcd(a, &content(b, var)),
        _ => {
            let ca = content(a, var);
            let cb = content(b, var);
            let c = poly_gcd(&ca, &cb);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let g = primitive_prs(pa, pb, var);
            (&c * &g).monic()
        }
    }
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &Poly, var: usize) -> Poly {
    let mut coeffs = p.coefficients_in(var).into_values();
    let first = coeffs.next().unwrap_or_else(|| Poly::zero(p.chart()));
    coeffs.fold(first.monic(), |acc, c| {
        if acc.is_one() {
            acc
        } else {
            poly_gcd(&acc, &c)
        }
    })
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn lead_in(p: &Poly, var: usize) -> (u32, Poly) {
    let coeffs = p.coefficients_in(var);
    let (&d, c) = coeffs.iter().next_back().expect("nonzero polynomial");
    (d, c.clone())
}

/// `lc(b)^k * a` reduced modulo `b` in `var`, without dividing coefficients.
fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let (db, lcb) = lead_in(b, var);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lcr) = lead_in(&r, var);
        if dr < db {
            break;
        }
        let shift = b.var_power(var, dr - db);
        r = &(&lcb * &r) - &(&lcr * &b.shift(&shift));
    }
    r
}

/// GCD of two polynomials primitive with respect to `var`.
fn primitive_prs(mut p: Poly, mut q: Poly, var: usize) -> Poly {
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_remainder(&p, &q, var);
        if r.is_zero() {
            return q.monic();
        }
        if r.degree_in(var) == 0 {
            return Poly::one(p.chart());
        }
        p = q;
        q = primitive_part(&r, var);
    }
}
