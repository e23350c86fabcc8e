//! Exact linear algebra: fraction-free elimination for matrices of rational
//! functions and plain Gauss–Jordan for rational matrices.

use num_traits::{One, Zero};

use crate::ratfield::{poly_gcd, ChartSpec, Poly, RatFunc, Rational};

/// Square matrix of rational functions, row-major.
pub type FuncMatrix = Vec<Vec<RatFunc>>;

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = poly_gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).monic()
}

/// Clears the denominators of every row; returns the polynomial rows and the
/// multipliers used.
fn clear_rows(m: &FuncMatrix, chart: ChartSpec) -> (Vec<Vec<Poly>>, Vec<Poly>) {
    let mut rows = Vec::with_capacity(m.len());
    let mut mults = Vec::with_capacity(m.len());
    for row in m {
        let d = row
            .iter()
            .fold(Poly::one(chart), |acc, e| lcm(&acc, e.denom()));
        let prow = row
            .iter()
            .map(|e| {
                let k = d.div_exact(e.denom()).expect("lcm is a multiple");
                e.numer() * &k
            })
            .collect();
        rows.push(prow);
        mults.push(d);
    }
    (rows, mults)
}

/// Bareiss forward elimination in place on an `n × m` polynomial matrix
/// (`m ≥ n`), pivoting among the first `n` columns. Returns the sign of the
/// row permutation, or `None` if the leading `n × n` block is singular.
fn bareiss_forward(a: &mut [Vec<Poly>], n: usize, chart: ChartSpec) -> Option<i64> {
    let cols = a.first().map_or(0, Vec::len);
    let mut sign = 1;
    let mut prev = Poly::one(chart);
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(chart);
        }
        prev = a[k][k].clone();
    }
    Some(sign)
}

/// Determinant of a square matrix of rational functions.
pub fn determinant(m: &FuncMatrix, chart: ChartSpec) -> RatFunc {
    let n = m.len();
    if n == 0 {
        return RatFunc::one(chart);
    }
    let (mut rows, mults) = clear_rows(m, chart);
    let Some(sign) = bareiss_forward(&mut rows, n, chart) else {
        return RatFunc::zero(chart);
    };
    let det = rows[n - 1][n - 1].scale(&Rational::from_integer(sign.into()));
    let denom = mults.iter().fold(Poly::one(chart), |acc, d| &acc * d);
    RatFunc::new(det, denom)
}

/// Inverse of a square matrix of rational functions, `None` when singular.
pub fn inverse(m: &FuncMatrix, chart: ChartSpec) -> Option<FuncMatrix> {
    let n = m.len();
    let (rows, mults) = clear_rows(m, chart);
    // [P | I] with P = diag(mults) · m, so m⁻¹ = P⁻¹ · diag(mults)
    let mut aug: Vec<Vec<Poly>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    Poly::one(chart)
                } else {
                    Poly::zero(chart)
                }
            }));
            row
        })
        .collect();
    bareiss_forward(&mut aug, n, chart)?;
    let mut inv = vec![vec![RatFunc::zero(chart); n]; n];
    for c in 0..n {
        let mut x = vec![RatFunc::zero(chart); n];
        for i in (0..n).rev() {
            let mut acc = RatFunc::from_poly(aug[i][n + c].clone());
            for j in i + 1..n {
                if !aug[i][j].is_zero() && !x[j].is_zero() {
                    acc = &acc - &(&RatFunc::from_poly(aug[i][j].clone()) * &x[j]);
                }
            }
            x[i] = &acc / &RatFunc::from_poly(aug[i][i].clone());
        }
        for i in 0..n {
            inv[i][c] = x[i].clone();
        }
    }
    for row in inv.iter_mut() {
        for (j, e) in row.iter_mut().enumerate() {
            if !e.is_zero() {
                *e = &*e * &RatFunc::from_poly(mults[j].clone());
            }
        }
    }
    Some(inv)
}

pub fn mat_mul(a: &FuncMatrix, b: &FuncMatrix, chart: ChartSpec) -> FuncMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..inner).fold(RatFunc::zero(chart), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, chart: ChartSpec) -> FuncMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFunc::one(chart)
                    } else {
                        RatFunc::zero(chart)
                    }
                })
                .collect()
        })
        .collect()
}

/// Dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        let t = &self.data[i][k] * &other.data[k][j];
                        out.data[i][j] += t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = m.data[r][c].recip();
            for e in m.data[r].iter_mut() {
                *e *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c].clone();
                    for j in 0..m.cols {
                        if !m.data[r][j].is_zero() {
                            let t = &f * &m.data[r][j];
                            m.data[i][j] -= t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.data[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        for (row, v) in aug.data.iter_mut().zip(b) {
            row.push(v.clone());
        }
        aug.cols += 1;
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.data[r][self.cols].clone();
        }
        Some(x)
    }

    /// Canonical representative of `b` modulo the column space: `b` reduced
    /// against an echelon basis of the image. Zero iff `b` is in the image.
    pub fn reduce_mod_image(&self, b: &[Rational]) -> Vec<Rational> {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        let (basis, pivots) = t.rref();
        let mut v = b.to_vec();
        for (r, &p) in pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.rows {
                    if !basis.data[r][j].is_zero() {
                        v[j] -= &f * &basis.data[r][j];
                    }
                }
            }
        }
        v
    }
}
