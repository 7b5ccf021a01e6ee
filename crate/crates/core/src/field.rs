//! Finite fields F_q, q = p^m, with elements encoded as integers.
//!
//! An element is the polynomial `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` over F_p
//! reduced modulo the field's defining polynomial, stored as the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The encoding is canonical, so equality
//! of codes is equality of elements.
//!
//! Multiplication goes through discrete log tables when q is small enough
//! (always the case at the sizes this crate enumerates); otherwise it falls back
//! to schoolbook multiplication of the coefficient vectors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u32 = 1 << 21;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn raw(code: u32) -> Fe {
        Fe(code)
    }
}

struct Tables {
    /// exp[i] = g^i for 0 <= i < 2(q-1).
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: OnceLock<Option<Tables>>,
}

/// A finite field. Cloning is cheap; clones share tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())?;
        if self.m() > 1 {
            write!(f, " (modulus {:?})", self.0.modulus)?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        Ok(Field::from_parts(p, 1, vec![0, 1]))
    }

    /// Builds F_{p^m}. Without an explicit modulus the least monic irreducible of
    /// degree m is used, ordering coefficient tuples `(c_0, ..., c_{m-1})`
    /// lexicographically.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        let prime = Field::prime(p)?;
        if m == 0 {
            return Err(Error::Malformed(
                "extension degree must be at least 1".into(),
            ));
        }
        if (p as u64)
            .checked_pow(m)
            .is_none_or(|q| q > u32::MAX as u64)
        {
            return Err(Error::FieldTooLarge { p, m });
        }
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::Malformed(format!(
                        "modulus must be monic of degree {m}, got {c:?}"
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::Malformed(format!(
                        "modulus coefficients must lie in [0, {p}), got {c:?}"
                    )));
                }
                if m > 1 && !PolyRing::new(prime.clone()).is_irreducible(&fp_poly(c)) {
                    return Err(Error::ReducibleModulus(m));
                }
                c.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => canonical_modulus(&prime, m),
        };
        Ok(Field::from_parts(p, m, modulus))
    }

    fn from_parts(p: u32, m: u32, modulus: Vec<u32>) -> Field {
        Field(Arc::new(Inner {
            p,
            m,
            q: p.pow(m),
            modulus,
            tables: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial over F_p, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn element(&self, code: u32) -> Result<Fe> {
        if code < self.q() {
            Ok(Fe(code))
        } else {
            Err(Error::Malformed(format!(
                "{code} is not an element code of F_{}",
                self.q()
            )))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.m() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::Malformed(format!(
                "{coeffs:?} is not a reduced element of F_{}",
                self.q()
            )));
        }
        Ok(Fe(coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p() + c)))
    }

    /// Coefficients over F_p, low degree first, trailing zeros removed.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut out = self.digits(a);
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    fn digits(&self, a: Fe) -> Vec<u32> {
        let p = self.p();
        let mut c = a.0;
        (0..self.m())
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.m() == 1 {
            return Fe((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.m() == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p() as u64) as u32);
        }
        match self.tables() {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Multiplication by reducing the product of coefficient vectors; used when
    /// no tables exist and as an independent check of the tables.
    pub fn mul_schoolbook(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p() as u64;
        let m = self.m() as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let modulus = &self.0.modulus;
        for top in (m..2 * m).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &mk) in modulus[..m].iter().enumerate() {
                let idx = top - m + k;
                prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
            }
        }
        let code = prod[..m].iter().rev().fold(0u64, |acc, &c| acc * p + c);
        Fe(code as u32)
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let q1 = self.q() - 1;
        match self.tables() {
            Some(t) => Some(Fe(t.exp[((q1 - t.log[a.0 as usize]) % q1) as usize])),
            None => Some(self.pow(a, (q1 - 1) as u64)),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        if let Some(t) = self.tables() {
            let q1 = (self.q() - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (e % q1)) % q1;
            return Fe(t.exp[l as usize]);
        }
        let (mut base, mut e, mut acc) = (a, e, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x -> x^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p() as u64)
    }

    /// Whether `a` is a square in the field (0 counts as a square).
    pub fn is_square(&self, a: Fe) -> bool {
        if a.is_zero() || self.p() == 2 {
            return true;
        }
        match self.tables() {
            Some(t) => t.log[a.0 as usize] % 2 == 0,
            None => self.pow(a, ((self.q() - 1) / 2) as u64) == Fe::ONE,
        }
    }

    /// Quadratic character: 0, 1 or -1. Only meaningful in odd characteristic.
    pub fn legendre(&self, a: Fe) -> i32 {
        if a.is_zero() {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// A square root, if one exists. The smaller of the two codes is returned.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a);
        }
        if self.p() == 2 {
            return Some(self.pow(a, (self.q() / 2) as u64));
        }
        if !self.is_square(a) {
            return None;
        }
        let r = match self.tables() {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] / 2) as usize]),
            None => self.elements().find(|&x| self.mul(x, x) == a)?,
        };
        Some(r.min(self.neg(r)))
    }

    /// Absolute trace to F_p, as an integer in [0, p).
    pub fn trace(&self, a: Fe) -> u32 {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.m() {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc.0
    }

    /// The primitive element behind the log tables, if tables are in use.
    pub fn generator(&self) -> Option<Fe> {
        self.tables().map(|t| Fe(t.exp[1]))
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| (self.q() <= TABLE_LIMIT).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let q = self.q();
        let q1 = q - 1;
        let g = self.find_primitive();
        let mut exp = vec![0u32; 2 * q1 as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = Fe::ONE;
        for i in 0..q1 {
            exp[i as usize] = x.0;
            log[x.0 as usize] = i;
            x = self.mul_schoolbook(x, g);
        }
        for i in 0..q1 as usize {
            exp[i + q1 as usize] = exp[i];
        }
        Tables { exp, log }
    }

    fn find_primitive(&self) -> Fe {
        let q1 = (self.q() - 1) as u64;
        let factors = prime_factors(q1);
        let slow_pow = |a: Fe, mut e: u64| {
            let (mut base, mut acc) = (a, Fe::ONE);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_schoolbook(acc, base);
                }
                base = self.mul_schoolbook(base, base);
                e >>= 1;
            }
            acc
        };
        (1..self.q())
            .map(Fe)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, q1 / r) != Fe::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Builds F_{q^n} together with an embedding of this field into it.
    pub fn extension(&self, n: u32) -> Result<(Field, Embedding)> {
        let big = Field::new(self.p(), self.m() * n, None)?;
        let embedding = Embedding::new(self, &big);
        Ok((big, embedding))
    }
}

/// A field homomorphism F_q -> F_{q^n}, fixed by the image of t.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Images of 1, t, ..., t^{m-1}.
    basis: Vec<Fe>,
    target: Field,
}

impl Embedding {
    fn new(small: &Field, big: &Field) -> Embedding {
        let target = big.clone();
        if small.m() == 1 {
            return Embedding {
                basis: vec![Fe::ONE],
                target,
            };
        }
        let ring = PolyRing::new(big.clone());
        let modulus = Poly::from_vec(small.modulus().iter().map(|&c| Fe(c)).collect());
        let theta = *ring
            .roots(&modulus)
            .first()
            .expect("the defining polynomial splits in an extension containing F_q");
        let mut basis = Vec::with_capacity(small.m() as usize);
        let mut x = Fe::ONE;
        for _ in 0..small.m() {
            basis.push(x);
            x = big.mul(x, theta);
        }
        Embedding { basis, target }
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, small: &Field, a: Fe) -> Fe {
        if self.basis.len() == 1 {
            return a;
        }
        small
            .digits(a)
            .iter()
            .zip(&self.basis)
            .fold(Fe::ZERO, |acc, (&c, &b)| {
                self.target.add(acc, self.target.mul(Fe(c), b))
            })
    }

    pub fn map_poly(&self, small: &Field, f: &Poly) -> Poly {
        Poly::from_vec(f.coeffs().iter().map(|&c| self.map(small, c)).collect())
    }
}

fn fp_poly(c: &[u32]) -> Poly {
    Poly::from_vec(c.iter().map(|&x| Fe(x)).collect())
}

fn canonical_modulus(prime: &Field, m: u32) -> Vec<u32> {
    let p = prime.p();
    let ring = PolyRing::new(prime.clone());
    let m = m as usize;
    // Counter over (c_0, ..., c_{m-1}) with c_{m-1} varying fastest. c_0 = 0 is
    // skipped since such polynomials are divisible by t.
    let mut c = vec![0u32; m + 1];
    c[m] = 1;
    c[0] = 1;
    loop {
        if ring.is_irreducible(&fp_poly(&c)) {
            return c;
        }
        let mut i = m - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "an irreducible polynomial of every degree exists");
            i -= 1;
        }
    }
}
