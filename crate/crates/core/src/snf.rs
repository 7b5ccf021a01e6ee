//! Smith normal form over the integers with exact, overflow-checked `i64`
//! arithmetic.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Vec<i64>>,
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Quotient rounded to nearest, keeping remainders at most |b|/2.
fn nearest_quotient(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            a: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = 1;
        }
        m
    }

    /// Panics on ragged rows.
    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            a: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn row_vecs(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.a[j][i] = self.a[i][j];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.a[i][k];
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.a[i][j] = add(out.a[i][j], mul(x, other.a[k][j])?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "dimension mismatch"
        );
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.a[i][j] = self.a[i][j]
                    .checked_sub(other.a[i][j])
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free elimination in big integers.
    pub fn det(&self) -> Result<i64> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<Vec<BigInt>> = self
            .a
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(0);
            };
            if piv != k {
                m.swap(piv, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = if negate { -prev } else { prev };
        d.to_i64().ok_or(Error::Overflow)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: i64) -> Result<()> {
        for k in 0..self.cols {
            self.a[i][k] = add(self.a[i][k], mul(c, self.a[j][k])?)?;
        }
        Ok(())
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: i64) -> Result<()> {
        for r in &mut self.a {
            r[i] = add(r[i], mul(c, r[j])?)?;
        }
        Ok(())
    }

    fn neg_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -*x;
        }
    }
}

/// Row-reduces to an echelon basis of the row lattice; zero rows are dropped.
/// The row span over Z is unchanged, so the Smith form of the result equals that
/// of the input up to zero rows.
pub fn row_lattice_basis(m: &IntMatrix) -> Result<IntMatrix> {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        // Smallest nonzero entry in column c at or below row r.
        while let Some(piv) = (r..a.rows)
            .filter(|&i| a.a[i][c] != 0)
            .min_by_key(|&i| a.a[i][c].unsigned_abs())
        {
            a.swap_rows(r, piv);
            let mut done = true;
            for i in r + 1..a.rows {
                if a.a[i][c] != 0 {
                    let qt = nearest_quotient(a.a[i][c], a.a[r][c]);
                    a.add_row(i, r, -qt)?;
                    if a.a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if a.a[r][c] < 0 {
                    a.neg_row(r);
                }
                r += 1;
                break;
            }
        }
    }
    a.a.truncate(r);
    a.rows = r;
    Ok(a)
}

/// `U * A * V = D` with U, V unimodular and D diagonal, `d_1 | d_2 | ...`, all
/// diagonal entries non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.a[i][i])
            .filter(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Re-multiplies and checks `U A V = D`, that D is a diagonal divisibility
    /// chain, and that U and V have determinant +-1.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Inconsistent(format!(
                "Smith form check failed: {what}"
            )))
        };
        if self.u.mul(a)?.mul(&self.v)? != self.d {
            return fail("U A V != D");
        }
        for i in 0..self.d.rows {
            for j in 0..self.d.cols {
                if i != j && self.d.a[i][j] != 0 {
                    return fail("D is not diagonal");
                }
            }
        }
        let diag: Vec<i64> = (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.a[i][i])
            .collect();
        if diag.iter().any(|&x| x < 0) {
            return fail("negative diagonal entry");
        }
        for w in diag.windows(2) {
            let ok = if w[0] == 0 {
                w[1] == 0
            } else {
                w[1] % w[0] == 0
            };
            if !ok {
                return fail("diagonal is not a divisibility chain");
            }
        }
        if self.u.det()?.abs() != 1 || self.v.det()?.abs() != 1 {
            return fail("transform is not unimodular");
        }
        Ok(())
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d.a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| {
                            d.a[i][j].unsigned_abs() < d.a[bi][bj].unsigned_abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Ok(SmithForm { u, v, d });
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..d.rows {
                let qt = nearest_quotient(d.a[i][t], d.a[t][t]);
                if qt != 0 {
                    d.add_row(i, t, -qt)?;
                    u.add_row(i, t, -qt)?;
                }
                clean &= d.a[i][t] == 0;
            }
            for j in t + 1..d.cols {
                let qt = nearest_quotient(d.a[t][j], d.a[t][t]);
                if qt != 0 {
                    d.add_col(j, t, -qt)?;
                    v.add_col(j, t, -qt)?;
                }
                clean &= d.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole trailing block.
            let pivot = d.a[t][t];
            let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| d.a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    d.add_row(t, i, 1)?;
                    u.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if d.a[t][t] < 0 {
            d.neg_row(t);
            u.neg_row(t);
        }
    }
    Ok(SmithForm { u, v, d })
}

/// Rank over Q.
pub fn rank(m: &IntMatrix) -> Result<usize> {
    Ok(row_lattice_basis(m)?.rows)
}
