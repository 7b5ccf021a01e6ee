//! L-polynomials of curves from point counts.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::curve::Curve;
use crate::error::{Error, Result};

/// Numerator `L(u) = a_0 + a_1 u + ... + a_{2g} u^{2g}` of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LPolynomial {
    coeffs: Vec<i64>,
    #[serde(skip)]
    q: u64,
}

impl LPolynomial {
    /// Builds from coefficients, checking `a_0 = 1`, the functional equation and
    /// the Weil bounds.
    pub fn new(coeffs: Vec<i64>, q: u64) -> Result<LPolynomial> {
        if coeffs.len() % 2 != 1 || coeffs[0] != 1 {
            return Err(Error::Inconsistent(format!(
                "L-polynomial must have odd length and a_0 = 1, got {coeffs:?}"
            )));
        }
        let l = LPolynomial { coeffs, q };
        if !l.satisfies_functional_equation() {
            return Err(Error::Inconsistent(format!(
                "{:?} violates a_(2g-i) = q^(g-i) a_i",
                l.coeffs
            )));
        }
        if !l.satisfies_weil_bounds() {
            return Err(Error::Inconsistent(format!(
                "{:?} violates the Weil bounds",
                l.coeffs
            )));
        }
        Ok(l)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn genus(&self) -> u32 {
        (self.coeffs.len() / 2) as u32
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus() as usize;
        let q = self.q as i128;
        (0..=g).all(|i| {
            self.coeffs[2 * g - i] as i128 == q.pow((g - i) as u32) * self.coeffs[i] as i128
        })
    }

    /// `a_i^2 <= C(2g, i)^2 q^i`, compared exactly.
    pub fn satisfies_weil_bounds(&self) -> bool {
        let n = self.coeffs.len() - 1;
        self.coeffs.iter().enumerate().all(|(i, &a)| {
            let c = binomial(n as u64, i as u64) as i128;
            let lhs = (a as i128) * (a as i128);
            match (self.q as i128)
                .checked_pow(i as u32)
                .and_then(|qi| (c * c).checked_mul(qi))
            {
                Some(rhs) => lhs <= rhs,
                None => true,
            }
        })
    }

    /// L(1), the order of the degree-zero divisor class group over F_q.
    pub fn class_number(&self) -> u64 {
        let h: i64 = self.coeffs.iter().sum();
        debug_assert!(h >= 1);
        h as u64
    }

    /// Power sums `s_k` of the inverse roots for k = 1..=n.
    pub fn power_sums(&self, n: usize) -> Vec<i128> {
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0) as i128;
        let mut s: Vec<i128> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut v = -(k as i128) * a(k);
            for j in 1..k {
                v -= s[j - 1] * a(k - j);
            }
            s.push(v);
        }
        s
    }

    /// `#X(F_{q^n})` predicted from the polynomial.
    pub fn predicted_count(&self, n: u32) -> i128 {
        let s = self.power_sums(n as usize);
        (self.q as i128).pow(n) + 1 - s[n as usize - 1]
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients from `N_1..N_g` by Newton's identities on the logarithmic
/// derivative, the rest by the functional equation. When `q^(g+1)` is within
/// budget, `N_(g+1)` is counted and compared against the prediction.
pub fn l_polynomial(curve: &Curve, budget: &Budget) -> Result<LPolynomial> {
    let g = curve.genus() as usize;
    let q = curve.q();
    if g == 0 {
        return LPolynomial::new(vec![1], q);
    }
    let counts = (1..=g as u32)
        .map(|n| curve.count_points(n, budget))
        .collect::<Result<Vec<_>>>()?;
    let l = from_counts(&counts, q)?;
    if budget.check_field(q, g as u32 + 1).is_ok() {
        let direct = curve.count_points(g as u32 + 1, budget)?;
        let predicted = l.predicted_count(g as u32 + 1);
        if predicted != direct as i128 {
            return Err(Error::Inconsistent(format!(
                "N_{} predicted {predicted}, counted {direct}",
                g + 1
            )));
        }
    }
    Ok(l)
}

/// L-polynomial of genus `counts.len()` from `N_1..N_g`.
pub fn from_counts(counts: &[u64], q: u64) -> Result<LPolynomial> {
    let g = counts.len();
    let qi = q as i128;
    let s: Vec<i128> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| qi.pow(i as u32 + 1) + 1 - n as i128)
        .collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for k in 1..=g {
        let acc: i128 = (1..=k).map(|j| s[j - 1] * a[k - j]).sum();
        if acc % k as i128 != 0 {
            return Err(Error::Inconsistent(format!(
                "point counts {counts:?} give a non-integral a_{k}"
            )));
        }
        a[k] = -acc / k as i128;
    }
    for i in 0..g {
        a[2 * g - i] = qi.pow((g - i) as u32) * a[i];
    }
    let coeffs = a
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    LPolynomial::new(coeffs, q)
}

pub fn class_number(l: &LPolynomial) -> u64 {
    l.class_number()
}

/// Whether Pic(X)[p] is nonzero, decided by `p | L(1)`.
pub fn pic_p_nontrivial(curve: &Curve, p: u64, budget: &Budget) -> Result<bool> {
    Ok(l_polynomial(curve, budget)?.class_number() % p == 0)
}
