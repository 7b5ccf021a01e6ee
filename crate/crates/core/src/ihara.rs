//! Exact evaluation of the Ihara sum `sum deg(x) / (q^(deg(x)/2) - 1)` and its
//! comparison with a genus threshold.
//!
//! Odd-degree terms involve `sqrt(q)`; each is rationalized, so the sum is an
//! element `a + b sqrt(q)` of Q(sqrt(q)) with rational a, b. Signs in that field
//! are decided from rational data only.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// `a + b sqrt(q)`. When q is a perfect square, b is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub q: u64,
}

fn isqrt_exact(q: u64) -> Option<u64> {
    let r = q.sqrt();
    (r * r == q).then_some(r)
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl QuadraticSurd {
    pub fn zero(q: u64) -> Self {
        QuadraticSurd {
            a: BigRational::zero(),
            b: BigRational::zero(),
            q,
        }
    }

    /// Sign of the value, exactly.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                // Opposite signs: compare a^2 with b^2 q.
                let a2 = &self.a * &self.a;
                let b2q = &self.b * &self.b * BigRational::from_integer(self.q.into());
                if sa == Ordering::Greater {
                    a2.cmp(&b2q)
                } else {
                    b2q.cmp(&a2)
                }
            }
        }
    }

    pub fn cmp_integer(&self, t: i64) -> Ordering {
        QuadraticSurd {
            a: &self.a - BigRational::from_integer(t.into()),
            b: self.b.clone(),
            q: self.q,
        }
        .signum()
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits.
    pub fn approx(&self, digits: u32) -> String {
        let guard = digits + 8;
        let scale = BigInt::from(10u32).pow(guard);
        let sqrt_scaled =
            BigInt::from((BigUint::from(self.q) * BigUint::from(10u32).pow(2 * guard)).sqrt());
        let scaled = &self.a * BigRational::from_integer(scale.clone())
            + &self.b * BigRational::from_integer(sqrt_scaled);
        let n = scaled.to_integer() / BigInt::from(10u32).pow(guard - digits);
        let neg = n.is_negative();
        let s = n.abs().to_string();
        let s = format!("{s:0>width$}", width = digits as usize + 1);
        let (int, frac) = s.split_at(s.len() - digits as usize);
        format!("{}{int}.{frac}", if neg { "-" } else { "" })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticSurd", 4)?;
        st.serialize_field("a", &fmt_rational(&self.a))?;
        st.serialize_field("b", &fmt_rational(&self.b))?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("approx", &self.approx(15))?;
        st.end()
    }
}

/// The Ihara sum compared with `max(g - 1, 0)`; the plain `g - 1` threshold is
/// recorded alongside when g >= 1, where both agree.
#[derive(Clone, Debug, Serialize)]
pub struct IharaBound {
    pub value: QuadraticSurd,
    pub threshold: i64,
    pub exceeds: bool,
    pub threshold_g_minus_1: Option<i64>,
    pub approx: String,
}

/// Exact value of `sum_{d in degrees} d / (q^(d/2) - 1)`.
pub fn ihara_sum(degrees: &[u32], q: u64) -> QuadraticSurd {
    assert!(q >= 2, "q must be a prime power");
    let mut acc = QuadraticSurd::zero(q);
    let root = isqrt_exact(q);
    for &d in degrees {
        assert!(d >= 1, "degrees must be positive");
        let dd = BigInt::from(d);
        match root {
            Some(r) => {
                acc.a += rat(dd, BigInt::from(r).pow(d) - 1);
            }
            None if d % 2 == 0 => {
                acc.a += rat(dd, BigInt::from(q).pow(d / 2) - 1);
            }
            None => {
                // d / (c sqrt(q) - 1) = d (c sqrt(q) + 1) / (c^2 q - 1), c = q^((d-1)/2).
                let c = BigInt::from(q).pow((d - 1) / 2);
                let den: BigInt = &c * &c * BigInt::from(q) - 1;
                acc.a += rat(dd.clone(), den.clone());
                acc.b += rat(dd * c, den);
            }
        }
    }
    acc
}

pub fn ihara_sum_exceeds(degrees: &[u32], q: u64, g: u32) -> IharaBound {
    assert!(!degrees.is_empty(), "the marked set must be nonempty");
    let value = ihara_sum(degrees, q);
    let threshold = (g as i64 - 1).max(0);
    let exceeds = value.cmp_integer(threshold) == Ordering::Greater;
    let approx = value.approx(15);
    IharaBound {
        value,
        threshold,
        exceeds,
        threshold_g_minus_1: (g >= 1).then(|| g as i64 - 1),
        approx,
    }
}

impl QuadraticSurd {
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn one(q: u64) -> Self {
        QuadraticSurd {
            a: BigRational::one(),
            b: BigRational::zero(),
            q,
        }
    }
}
