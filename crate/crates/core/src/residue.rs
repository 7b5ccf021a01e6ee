//! Arithmetic in a residue field F_q[x]/(pi) for a monic irreducible pi, enough
//! to solve the fibre equation y^2 + h y = f over a closed point of the line.

use crate::field::Fe;
use crate::poly::{Poly, PolyRing};

/// Roots of a monic quadratic over a residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// Two distinct roots, in canonical order.
    Two(Poly, Poly),
    /// One double root.
    Double(Poly),
    None,
}

pub struct ResidueField<'a> {
    ring: &'a PolyRing,
    modulus: &'a Poly,
    degree: usize,
    size: u64,
}

impl<'a> ResidueField<'a> {
    pub fn new(ring: &'a PolyRing, modulus: &'a Poly) -> Self {
        let degree = modulus.degree().expect("nonzero modulus");
        let size = (ring.field().q() as u64).pow(degree as u32);
        ResidueField {
            ring,
            modulus,
            degree,
            size,
        }
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        self.ring.rem(a, self.modulus)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.mul_mod(a, b, self.modulus)
    }

    pub fn pow(&self, a: &Poly, e: u64) -> Poly {
        self.ring.pow_mod(a, e, self.modulus)
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ring.xgcd(a, self.modulus);
        g.is_one().then(|| self.reduce(&s))
    }

    /// Elements in code order.
    fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        let q = self.ring.field().q() as u64;
        (0..self.size).map(move |mut code| {
            let c = (0..self.degree)
                .map(|_| {
                    let d = (code % q) as u32;
                    code /= q;
                    Fe::raw(d)
                })
                .collect();
            Poly::from_vec(c)
        })
    }

    fn sqrt_odd(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return Some(Poly::zero());
        }
        let one = Poly::one();
        let half = (self.size - 1) / 2;
        if self.pow(a, half) != one {
            return None;
        }
        // Tonelli–Shanks with the first non-residue in code order.
        let mut s = 0;
        let mut t = self.size - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let minus_one = self.ring.neg(&one);
        let z = self
            .elements()
            .find(|z| !z.is_zero() && self.pow(z, half) == minus_one)
            .expect("odd-order field has a non-residue");
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let mut u = self.pow(a, t);
        while !u.is_one() {
            let mut i = 0;
            let mut probe = u.clone();
            while !probe.is_one() {
                probe = self.mul(&probe, &probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            r = self.mul(&r, &b);
            c = self.mul(&b, &b);
            u = self.mul(&u, &c);
            m = i;
        }
        Some(r)
    }

    /// Bit vector of an element over F_2 (characteristic 2 only).
    fn to_bits(&self, a: &Poly) -> u64 {
        let m = self.ring.field().m() as usize;
        (0..self.degree).fold(0u64, |acc, i| acc | ((a.coeff(i).code() as u64) << (i * m)))
    }

    fn poly_from_bits(&self, bits: u64) -> Poly {
        let m = self.ring.field().m() as usize;
        let mask = (1u64 << m) - 1;
        Poly::from_vec(
            (0..self.degree)
                .map(|i| Fe::raw(((bits >> (i * m)) & mask) as u32))
                .collect(),
        )
    }

    /// A solution of z^2 + z = c in characteristic 2, found by solving the
    /// F_2-linear system for the map z -> z^2 + z.
    fn artin_schreier(&self, c: &Poly) -> Option<Poly> {
        let k = self.degree * self.ring.field().m() as usize;
        assert!(k < 64, "residue field too large for bit-vector solve");
        // Column j is the image of the j-th basis vector.
        let columns: Vec<u64> = (0..k)
            .map(|j| {
                let b = self.poly_from_bits(1 << j);
                self.to_bits(&self.ring.add(&self.mul(&b, &b), &b))
            })
            .collect();
        // Row-reduce the augmented system [A | c] stored row-wise.
        let target = self.to_bits(c);
        let mut rows: Vec<(u64, bool)> = (0..k)
            .map(|i| {
                let row = columns
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, col)| acc | (((col >> i) & 1) << j));
                (row, (target >> i) & 1 == 1)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..k {
            let Some(pr) = (r..k).find(|&i| (rows[i].0 >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(r, pr);
            for i in 0..k {
                if i != r && (rows[i].0 >> col) & 1 == 1 {
                    rows[i].0 ^= rows[r].0;
                    rows[i].1 ^= rows[r].1;
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|&(_, rhs)| rhs) {
            return None;
        }
        let z = pivots
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &col)| acc | ((rows[i].1 as u64) << col));
        Some(self.poly_from_bits(z))
    }

    /// Roots of y^2 + b y - c.
    pub fn solve_quadratic(&self, b: &Poly, c: &Poly) -> QuadraticRoots {
        let ring = self.ring;
        let b = self.reduce(b);
        let c = self.reduce(c);
        let ordered = |r1: Poly, r2: Poly| {
            if r1 == r2 {
                QuadraticRoots::Double(r1)
            } else if r1 < r2 {
                QuadraticRoots::Two(r1, r2)
            } else {
                QuadraticRoots::Two(r2, r1)
            }
        };
        if ring.field().p() == 2 {
            if b.is_zero() {
                // Square root is the inverse Frobenius.
                return QuadraticRoots::Double(self.pow(&c, self.size / 2));
            }
            let b_inv = self.inv(&b).expect("nonzero element of a field");
            let scaled = self.mul(&c, &self.mul(&b_inv, &b_inv));
            return match self.artin_schreier(&scaled) {
                None => QuadraticRoots::None,
                Some(z) => {
                    let y1 = self.mul(&b, &z);
                    let y2 = ring.add(&y1, &b);
                    ordered(y1, y2)
                }
            };
        }
        // Complete the square: (y + b/2)^2 = c + b^2/4.
        let f = ring.field();
        let half = f.inv(f.from_int(2)).unwrap();
        let shift = ring.scale(&b, half);
        let disc = self.reduce(&ring.add(&c, &self.mul(&shift, &shift)));
        match self.sqrt_odd(&disc) {
            None => QuadraticRoots::None,
            Some(s) => {
                let y1 = ring.sub(&s, &shift);
                let y2 = ring.sub(&ring.neg(&s), &shift);
                ordered(self.reduce(&y1), self.reduce(&y2))
            }
        }
    }
}
