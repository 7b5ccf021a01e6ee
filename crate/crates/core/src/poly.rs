//! Univariate polynomials over a finite field, including factorization.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{prime_factors, Fe, Field};

/// Seed for the equal-degree splitting stream; fixed so factorizations (and with
/// them closed-point identifiers) are reproducible.
const SPLIT_SEED: u64 = 0x6375_7276_6563_6c73;

/// Sieve irreducibles in a table up to this many monic polynomials.
const SIEVE_LIMIT: u64 = 1 << 24;

/// Polynomial with coefficients low degree first and no trailing zeros.
///
/// The zero polynomial has no coefficients and degree `None`, standing in for
/// minus infinity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Fe>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Fe::ONE])
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::from_vec(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Poly {
        Poly(vec![Fe::ZERO, Fe::ONE])
    }

    pub fn from_vec(mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_codes(field: &Field, codes: &[u32]) -> Result<Poly> {
        codes
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_vec)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn codes(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.code()).collect()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [Fe::ONE]
    }

    pub fn lead(&self) -> Option<Fe> {
        self.0.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(Fe::ONE)
    }
}

/// Canonical order: by degree, then coefficient tuples low degree first.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of monic irreducible polynomials of degree d over F_q.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(d / e) as i128 * (q as i128).pow(e);
        }
    }
    (total / d as i128) as u64
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Arithmetic on polynomials over one field.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: Field) -> PolyRing {
        PolyRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let f = &self.field;
        let n = a.0.len().max(b.0.len());
        Poly::from_vec((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly(a.0.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: Fe) -> Poly {
        Poly::from_vec(a.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_vec(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(b.0[db]).expect("leading coefficient is nonzero");
        let mut r = a.0.clone();
        let Some(da) = a.degree().filter(|&da| da >= db) else {
            return (Poly::zero(), a.clone());
        };
        let mut quot = vec![Fe::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(r[i + db], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &bj) in b.0.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, bj));
            }
        }
        (Poly::from_vec(quot), Poly::from_vec(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    /// Exact quotient; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead() {
            None => Poly::zero(),
            Some(c) => self.scale(a, self.field.inv(c).unwrap()),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `g = s a + t b` and g monic.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = self.field.inv(c).unwrap();
                (
                    self.scale(&r0, inv),
                    self.scale(&s0, inv),
                    self.scale(&t0, inv),
                )
            }
        }
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let f = &self.field;
        Poly::from_vec(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: Fe) -> Fe {
        let f = &self.field;
        a.0.iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul_mod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&Poly::one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            base = self.mul_mod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| self.mul(&acc, a))
    }

    /// Inverse of the p-th power map on a polynomial in x^p.
    fn pth_root(&self, a: &Poly) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let root = (f.q() / f.p()) as u64;
        Poly::from_vec(a.0.iter().step_by(p).map(|&c| f.pow(c, root)).collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// `a = prod g_i^i` and each g_i squarefree (possibly with repeated i).
    fn squarefree_parts(&self, a: &Poly) -> Vec<(Poly, u32)> {
        let p = self.field.p();
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative(a);
        if d.is_zero() {
            for (g, i) in self.squarefree_parts(&self.pth_root(a)) {
                out.push((g, i * p));
            }
            return out;
        }
        let mut c = self.gcd(a, &d);
        let mut w = self.div_exact(a, &c).unwrap();
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y).unwrap();
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = self.div_exact(&c, &w).unwrap();
            i += 1;
        }
        if !c.is_one() {
            for (g, j) in self.squarefree_parts(&self.pth_root(&c)) {
                out.push((g, j * p));
            }
        }
        out
    }

    /// Splits a monic squarefree polynomial into products of irreducibles of
    /// equal degree: pairs `(product, degree)`.
    fn distinct_degree(&self, a: &Poly) -> Vec<(Poly, usize)> {
        let q = self.field.q() as u64;
        let mut out = Vec::new();
        let mut rest = a.clone();
        let mut h = Poly::x();
        let mut i = 0;
        while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
            i += 1;
            h = self.pow_mod(&h, q, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &Poly::x()));
            if !g.is_one() {
                rest = self.div_exact(&rest, &g).unwrap();
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
        }
        if let Some(d) = rest.degree().filter(|&d| d > 0) {
            out.push((rest, d));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree d.
    fn equal_degree(&self, a: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        let n = a.degree().unwrap();
        if n == d {
            out.push(a.clone());
            return;
        }
        let f = &self.field;
        let q = f.q();
        loop {
            let r = Poly::from_vec((0..n).map(|_| Fe::raw(rng.gen_range(0..q))).collect());
            if r.degree().unwrap_or(0) == 0 {
                continue;
            }
            let probe = if f.p() == 2 {
                // Trace of r from F_{q^d} to F_2.
                let steps = f.m() as usize * d;
                let mut acc = Poly::zero();
                let mut cur = self.rem(&r, a);
                for _ in 0..steps {
                    acc = self.add(&acc, &cur);
                    cur = self.mul_mod(&cur, &cur, a);
                }
                acc
            } else {
                // r^((q^d - 1)/2) as a product of Frobenius conjugates of r^((q-1)/2).
                let c = self.pow_mod(&r, ((q - 1) / 2) as u64, a);
                let mut acc = c.clone();
                let mut cur = c;
                for _ in 1..d {
                    cur = self.pow_mod(&cur, q as u64, a);
                    acc = self.mul_mod(&acc, &cur, a);
                }
                self.sub(&acc, &Poly::one())
            };
            let g = self.gcd(a, &probe);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let other = self.div_exact(a, &g).unwrap();
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&other, d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted canonically. The
    /// leading coefficient of `a` is not part of the output.
    pub fn factor(&self, a: &Poly) -> Result<Vec<(Poly, u32)>> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (part, mult) in self.squarefree_parts(&self.monic(a)) {
            for (prod, d) in self.distinct_degree(&part) {
                let mut irreducibles = Vec::new();
                self.equal_degree(&prod, d, &mut rng, &mut irreducibles);
                for g in irreducibles {
                    match out.iter_mut().find(|(h, _)| *h == g) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((g, mult)),
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Distinct roots in the field, ascending by code.
    pub fn roots(&self, a: &Poly) -> Vec<Fe> {
        if a.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let q = self.field.q() as u64;
        // Restrict to the product of the linear factors first.
        let monic = self.monic(a);
        let xq = self.pow_mod(&Poly::x(), q, &monic);
        let lin = self.gcd(&monic, &self.sub(&xq, &Poly::x()));
        if lin.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut factors = Vec::new();
        self.equal_degree(&lin, 1, &mut rng, &mut factors);
        let mut roots: Vec<Fe> = factors.iter().map(|g| self.field.neg(g.coeff(0))).collect();
        roots.sort();
        roots
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, a: &Poly) -> bool {
        let Some(n) = a.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let q = self.field.q() as u64;
        let a = self.monic(a);
        let mut powers = Vec::with_capacity(n);
        let mut h = Poly::x();
        for _ in 0..n {
            h = self.pow_mod(&h, q, &a);
            powers.push(h.clone());
        }
        if self.sub(&powers[n - 1], &Poly::x()).degree().is_some() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let k = n / r as usize;
            self.gcd(&a, &self.sub(&powers[k - 1], &Poly::x())).is_one()
        })
    }

    /// All monic polynomials of degree d, in code order.
    pub fn monics(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut code| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(Fe::raw((code % q) as u32));
                code /= q;
            }
            c.push(Fe::ONE);
            Poly(c)
        })
    }

    /// Every monic irreducible polynomial of degree d, in canonical order.
    pub fn irreducibles(&self, d: usize) -> Vec<Poly> {
        assert!(d >= 1, "degree must be positive");
        let q = self.field.q() as u64;
        let total = q.checked_pow(d as u32);
        let mut out = match total {
            Some(total) if total <= SIEVE_LIMIT => self.sieve_irreducibles(d, total),
            _ => self.monics(d).filter(|f| self.is_irreducible(f)).collect(),
        };
        out.sort();
        debug_assert_eq!(out.len() as u64, necklace_count(q, d as u32));
        out
    }

    fn sieve_irreducibles(&self, d: usize, total: u64) -> Vec<Poly> {
        let q = self.field.q() as u64;
        let code_of = |f: &Poly| {
            f.0[..d]
                .iter()
                .rev()
                .fold(0u64, |acc, c| acc * q + c.code() as u64)
        };
        let mut reducible = vec![false; total as usize];
        for k in 1..=d / 2 {
            let small: Vec<Poly> = self.monics(k).collect();
            for a in &small {
                for b in self.monics(d - k) {
                    reducible[code_of(&self.mul(a, &b)) as usize] = true;
                }
            }
        }
        self.monics(d)
            .zip(reducible)
            .filter_map(|(f, r)| (!r).then_some(f))
            .collect()
    }
}
