//! Brute-force structure of Pic^0(X)(F_q) for small imaginary hyperelliptic
//! curves, by tabulating Mumford representatives and Cantor's group law.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::curve::{Curve, CurveModel};
use crate::error::{Error, Result};
use crate::field::{prime_factors, Fe};
use crate::poly::{Poly, PolyRing};

/// Finite abelian group in invariant-factor form `d_1 | d_2 | ... | d_k`,
/// every `d_i >= 2`. The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupStructure {
    pub invariant_factors: Vec<u64>,
    pub order: u64,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure {
            invariant_factors: Vec::new(),
            order: 1,
        }
    }

    /// Builds from factors already in divisibility-chain form; unit factors are dropped.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            return Err(Error::Inconsistent("zero invariant factor".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Inconsistent(format!(
                "{factors:?} is not a divisibility chain"
            )));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or(Error::Overflow)?;
        Ok(AbelianGroupStructure {
            invariant_factors: factors,
            order,
        })
    }

    pub fn p_torsion_dim(&self, p: u64) -> usize {
        self.invariant_factors
            .iter()
            .filter(|&&d| d % p == 0)
            .count()
    }
}

pub fn p_torsion_dim(g: &AbelianGroupStructure, p: u64) -> usize {
    g.p_torsion_dim(p)
}

/// A reduced divisor class: u monic with deg u <= g, deg v < deg u, u | v^2 - f.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mumford {
    pub u: Poly,
    pub v: Poly,
}

/// Group law on the Jacobian of y^2 = f with deg f = 2g + 1, odd characteristic.
pub struct CantorLaw {
    ring: PolyRing,
    f: Poly,
    genus: usize,
}

impl CantorLaw {
    pub fn new(curve: &Curve) -> Result<CantorLaw> {
        let CurveModel::DoubleCover { field, f, h } = curve.model() else {
            return Err(Error::OracleUnsupportedModel(
                "the projective line has no Mumford pairs".into(),
            ));
        };
        if field.p() == 2 || !h.is_zero() {
            return Err(Error::OracleUnsupportedModel(
                "characteristic 2 is not handled".into(),
            ));
        }
        let g = curve.genus() as usize;
        if f.degree() != Some(2 * g + 1) {
            return Err(Error::OracleUnsupportedModel(format!(
                "needs deg f = 2g + 1 = {}, got {}",
                2 * g + 1,
                f.degree().unwrap_or(0)
            )));
        }
        Ok(CantorLaw {
            ring: PolyRing::new(field.clone()),
            f: f.clone(),
            genus: g,
        })
    }

    pub fn identity(&self) -> Mumford {
        Mumford {
            u: Poly::one(),
            v: Poly::zero(),
        }
    }

    pub fn neg(&self, a: &Mumford) -> Mumford {
        Mumford {
            u: a.u.clone(),
            v: self.ring.rem(&self.ring.neg(&a.v), &a.u),
        }
    }

    pub fn is_reduced(&self, a: &Mumford) -> bool {
        let r = &self.ring;
        let du = a.u.degree().unwrap_or(0);
        a.u.is_monic()
            && du <= self.genus
            && a.v.degree().is_none_or(|dv| dv < du)
            && r.rem(&r.sub(&r.mul(&a.v, &a.v), &self.f), &a.u).is_zero()
    }

    pub fn add(&self, a: &Mumford, b: &Mumford) -> Mumford {
        let r = &self.ring;
        let (d1, e1, e2) = r.xgcd(&a.u, &b.u);
        let (d, c1, c2) = r.xgcd(&d1, &r.add(&a.v, &b.v));
        let s1 = r.mul(&c1, &e1);
        let s2 = r.mul(&c1, &e2);
        let u = r
            .div_exact(&r.mul(&a.u, &b.u), &r.mul(&d, &d))
            .expect("d^2 divides u1 u2");
        let num = r.add(
            &r.add(
                &r.mul(&s1, &r.mul(&a.u, &b.v)),
                &r.mul(&s2, &r.mul(&b.u, &a.v)),
            ),
            &r.mul(&c2, &r.add(&r.mul(&a.v, &b.v), &self.f)),
        );
        let v = r.div_exact(&num, &d).expect("d divides the composed v");
        let mut u = r.monic(&u);
        let mut v = r.rem(&v, &u);
        while u.degree().unwrap_or(0) > self.genus {
            let u2 = r
                .div_exact(&r.sub(&self.f, &r.mul(&v, &v)), &u)
                .expect("u divides f - v^2");
            u = r.monic(&u2);
            v = r.rem(&r.neg(&v), &u);
        }
        Mumford { u, v }
    }

    pub fn mul(&self, a: &Mumford, mut n: u64) -> Mumford {
        let mut acc = self.identity();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Every reduced divisor, sorted.
    pub fn elements(&self) -> Vec<Mumford> {
        let r = &self.ring;
        let q = r.field().q() as u64;
        let mut out = vec![self.identity()];
        for d in 1..=self.genus {
            for u in r.monics(d) {
                for code in 0..q.pow(d as u32) {
                    let v = poly_from_code(code, q, d);
                    if r.rem(&r.sub(&r.mul(&v, &v), &self.f), &u).is_zero() {
                        out.push(Mumford { u: u.clone(), v });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

fn poly_from_code(mut code: u64, q: u64, len: usize) -> Poly {
    Poly::from_vec(
        (0..len)
            .map(|_| {
                let c = (code % q) as u32;
                code /= q;
                Fe::raw(c)
            })
            .collect(),
    )
}

fn element_order(law: &CantorLaw, x: &Mumford, n: u64, primes: &[u64]) -> u64 {
    let id = law.identity();
    let mut o = n;
    for &l in primes {
        while o.is_multiple_of(l) && law.mul(x, o / l) == id {
            o /= l;
        }
    }
    o
}

/// Invariant factors of a finite abelian group of order `n` given the order of
/// every element.
pub fn structure_from_orders(orders: &[u64], n: u64) -> AbelianGroupStructure {
    let mut factors: Vec<u64> = Vec::new();
    for l in prime_factors(n) {
        // log_l #G[l^j] for increasing j until it stabilizes.
        let mut logs = vec![0u32];
        let mut lj = 1u64;
        loop {
            lj *= l;
            let count = orders.iter().filter(|&&o| lj.is_multiple_of(o)).count() as u64;
            let mut e = 0;
            let mut c = count;
            while c > 1 {
                c /= l;
                e += 1;
            }
            if e == *logs.last().unwrap() {
                break;
            }
            logs.push(e);
        }
        // Number of cyclic l-factors of order >= l^j is logs[j] - logs[j-1].
        let top = logs.len() - 1;
        let mut l_parts: Vec<u64> = Vec::new();
        for j in 1..=top {
            let at_least_j = logs[j] - logs[j - 1];
            let at_least_next = if j < top { logs[j + 1] - logs[j] } else { 0 };
            for _ in 0..(at_least_j - at_least_next) {
                l_parts.push(l.pow(j as u32));
            }
        }
        // Largest l-parts go to the last invariant factors.
        l_parts.sort_unstable_by(|a, b| b.cmp(a));
        if factors.len() < l_parts.len() {
            let pad = l_parts.len() - factors.len();
            factors.splice(0..0, std::iter::repeat_n(1, pad));
        }
        let k = factors.len();
        for (i, part) in l_parts.iter().enumerate() {
            factors[k - 1 - i] *= part;
        }
    }
    let order = factors.iter().product();
    debug_assert_eq!(order, n);
    AbelianGroupStructure {
        invariant_factors: factors,
        order,
    }
}

/// Group-law checks run on every oracle invocation.
fn sanity_check(law: &CantorLaw, elems: &[Mumford]) -> Result<()> {
    let id = law.identity();
    for x in elems {
        if !law.is_reduced(x) || law.add(x, &id) != *x || law.add(&id, x) != *x {
            return Err(Error::Inconsistent(format!("identity law fails at {x:?}")));
        }
        if law.add(x, &law.neg(x)) != id {
            return Err(Error::Inconsistent(format!("inverse law fails at {x:?}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a61_636f_6269);
    for _ in 0..100 {
        let [a, b, c] = [0; 3].map(|_| &elems[rng.gen_range(0..elems.len())]);
        let lhs = law.add(&law.add(a, b), c);
        let rhs = law.add(a, &law.add(b, c));
        if lhs != rhs || !law.is_reduced(&lhs) {
            return Err(Error::Inconsistent("associativity fails".into()));
        }
    }
    Ok(())
}

/// Structure of Pic^0(X)(F_q) by exhaustive enumeration.
pub fn jacobian_group(curve: &Curve, budget: &Budget) -> Result<AbelianGroupStructure> {
    if curve.is_projective_line() {
        return Ok(AbelianGroupStructure::trivial());
    }
    let law = CantorLaw::new(curve)?;
    let qg = curve.q().checked_pow(curve.genus());
    if qg.is_none_or(|v| v > budget.max_oracle_qg) {
        return Err(Error::BudgetExceeded(format!(
            "q^g = {}^{} exceeds the oracle cap {}",
            curve.q(),
            curve.genus(),
            budget.max_oracle_qg
        )));
    }
    let elems = law.elements();
    let n = elems.len() as u64;
    if n > budget.max_group_order {
        return Err(Error::BudgetExceeded(format!(
            "group of order {n} exceeds the cap {}",
            budget.max_group_order
        )));
    }
    sanity_check(&law, &elems)?;
    let primes = prime_factors(n);
    let orders: Vec<u64> = elems
        .iter()
        .map(|x| element_order(&law, x, n, &primes))
        .collect();
    Ok(structure_from_orders(&orders, n))
}
