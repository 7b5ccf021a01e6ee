//! Finite groups acting on free Z-modules: coinvariants, invariants, and the
//! comparison of "T_G infinite" with "(T/p)_G nonzero".

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::AbelianGroupStructure;
use crate::snf::{rank, row_lattice_basis, smith_normal_form, IntMatrix};

pub const MAX_GROUP_ORDER: usize = 10_000;
pub const MAX_RANK: usize = 16;

/// On-disk form: `{"rank":2, "generators":[[[0,1],[1,0]]], "label":"swap"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GModuleSpec {
    pub rank: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct GModule {
    rank: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    label: String,
}

/// Every element of the group generated by `generators`, identity first,
/// in breadth-first order.
pub fn closure(generators: &[IntMatrix], rank: usize) -> Result<Vec<IntMatrix>> {
    for g in generators {
        if g.rows() != rank || g.cols() != rank {
            return Err(Error::Malformed(format!(
                "generator is {}x{}, expected {rank}x{rank}",
                g.rows(),
                g.cols()
            )));
        }
        if g.det()?.abs() != 1 {
            return Err(Error::NotInvertible);
        }
    }
    let id = IntMatrix::identity(rank);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            // Entries of an infinite-order matrix grow without bound.
            let y = x.mul(g).map_err(|_| Error::NotFinite(MAX_GROUP_ORDER))?;
            if seen.insert(y.clone()) {
                if order.len() == MAX_GROUP_ORDER {
                    return Err(Error::NotFinite(MAX_GROUP_ORDER));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

impl GModule {
    pub fn new(
        rank: usize,
        generators: Vec<IntMatrix>,
        label: impl Into<String>,
    ) -> Result<GModule> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Malformed(format!(
                "rank must be in 1..={MAX_RANK}, got {rank}"
            )));
        }
        let elements = closure(&generators, rank)?;
        Ok(GModule {
            rank,
            generators,
            elements,
            label: label.into(),
        })
    }

    pub fn from_spec(spec: &GModuleSpec) -> Result<GModule> {
        let gens = spec
            .generators
            .iter()
            .map(|g| {
                if g.iter().any(|r| r.len() != spec.rank) || g.len() != spec.rank {
                    return Err(Error::Malformed(format!(
                        "generator must be {0}x{0}",
                        spec.rank
                    )));
                }
                Ok(IntMatrix::from_rows(g.clone(), spec.rank))
            })
            .collect::<Result<Vec<_>>>()?;
        GModule::new(spec.rank, gens, spec.label.clone())
    }

    pub fn to_spec(&self) -> GModuleSpec {
        GModuleSpec {
            rank: self.rank,
            generators: self
                .generators
                .iter()
                .map(|g| g.row_vecs().to_vec())
                .collect(),
            label: self.label.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }
}

/// `Z^m / span{(g - 1) v}` as torsion plus free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coinvariants {
    pub torsion: AbelianGroupStructure,
    pub free_rank: usize,
}

/// Rows of `(g - 1)^T` for each g: their row span is the relation lattice.
fn relation_rows(mats: &[IntMatrix], m: usize) -> Result<IntMatrix> {
    let id = IntMatrix::identity(m);
    let mut rows = Vec::with_capacity(mats.len() * m);
    for g in mats {
        rows.extend(g.sub(&id)?.transpose().row_vecs().iter().cloned());
    }
    Ok(IntMatrix::from_rows(rows, m))
}

/// Coinvariants of `Z^m` under the matrices `mats`.
pub fn coinvariants_of(mats: &[IntMatrix], m: usize) -> Result<Coinvariants> {
    let basis = row_lattice_basis(&relation_rows(mats, m)?)?;
    let snf = smith_normal_form(&basis)?;
    snf.verify(&basis)?;
    let diag = snf.diagonal();
    let free_rank = m - diag.len();
    let torsion = AbelianGroupStructure::from_invariant_factors(
        diag.into_iter().map(|d| d as u64).collect(),
    )?;
    Ok(Coinvariants { torsion, free_rank })
}

pub fn coinvariants(module: &GModule) -> Result<Coinvariants> {
    coinvariants_of(&module.elements, module.rank)
}

/// Rank of the fixed sublattice, the common kernel of all `g - 1`.
pub fn invariants_rank(module: &GModule) -> Result<usize> {
    let id = IntMatrix::identity(module.rank);
    let mut rows = Vec::new();
    for g in &module.elements {
        rows.extend(g.sub(&id)?.row_vecs().iter().cloned());
    }
    Ok(module.rank - rank(&IntMatrix::from_rows(rows, module.rank))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvariantCriterionReport {
    pub label: String,
    pub p: u64,
    pub lhs: bool,
    pub rhs: bool,
    pub equal: bool,
    pub p_divides_order: bool,
    pub group_order: usize,
}

/// `lhs`: the p-adic completion of T_G is infinite, i.e. T_G has positive free
/// rank. `rhs`: T_G / p is nonzero.
pub fn coinvariant_criterion(module: &GModule, p: u64) -> Result<CoinvariantCriterionReport> {
    let c = coinvariants(module)?;
    let lhs = c.free_rank > 0;
    let rhs = lhs || c.torsion.invariant_factors.iter().any(|&d| d % p == 0);
    Ok(CoinvariantCriterionReport {
        label: module.label.clone(),
        p,
        lhs,
        rhs,
        equal: lhs == rhs,
        p_divides_order: (module.group_order() as u64).is_multiple_of(p),
        group_order: module.group_order(),
    })
}

/// Reduced row echelon form over F_p, with the pivot columns.
fn rref_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p);
        for x in &mut a[r] {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
    }
    (a, pivots)
}

fn rank_mod_p(a: Vec<Vec<u64>>, p: u64) -> usize {
    rref_mod_p(a, p).1.len()
}

/// Basis of the right kernel of `a` over F_p.
fn kernel_mod_p(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, |r| r.len());
    let (m, pivots) = rref_mod_p(a.to_vec(), p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][free]) % p;
            }
            v
        })
        .collect()
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `(dim ker(1 - phi), dim coker(1 - phi))` for a square matrix over F_p.
/// The kernel is computed as an explicit null space, the cokernel from the rank
/// of the transpose.
pub fn invcoinv_dims(phi: &[Vec<u64>], p: u64) -> (usize, usize) {
    let n = phi.len();
    assert!(phi.iter().all(|r| r.len() == n), "phi must be square");
    let a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i == j) as u64 + p - phi[i][j] % p) % p)
                .collect()
        })
        .collect();
    let ker = kernel_mod_p(&a, p);
    debug_assert!(ker.iter().all(|v| a.iter().all(|row| row
        .iter()
        .zip(v)
        .map(|(x, y)| x * y)
        .sum::<u64>()
        % p
        == 0)));
    let at: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    (ker.len(), n - rank_mod_p(at, p))
}

fn perm_matrix(perm: &[usize], sign: i64) -> IntMatrix {
    let n = perm.len();
    let mut rows = vec![vec![0; n]; n];
    for (i, &j) in perm.iter().enumerate() {
        rows[j][i] = sign;
    }
    IntMatrix::from_rows(rows, n)
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut rows = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                rows[off + i][off + j] = b.get(i, j);
            }
        }
        off += b.rows();
    }
    IntMatrix::from_rows(rows, n)
}

#[derive(Clone, Copy, Debug)]
enum Summand {
    Permutation,
    TwistedPermutation,
    Sign,
    Trivial,
}

/// A seeded random representation: one to two permutations in S_n (n <= 5)
/// acting on a direct sum of permutation, sign-twisted permutation, sign and
/// trivial summands, total rank at most 8.
pub fn random_module(rng: &mut ChaCha8Rng, label: impl Into<String>) -> GModule {
    let n = rng.gen_range(2..=5usize);
    let ngens = rng.gen_range(1..=2);
    let perms: Vec<Vec<usize>> = (0..ngens)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let mut summands = Vec::new();
    let mut rank = 0;
    loop {
        let s = match rng.gen_range(0..4) {
            0 => Summand::Permutation,
            1 => Summand::TwistedPermutation,
            2 => Summand::Sign,
            _ => Summand::Trivial,
        };
        let r = match s {
            Summand::Permutation | Summand::TwistedPermutation => n,
            _ => 1,
        };
        if rank + r > 8 {
            break;
        }
        summands.push(s);
        rank += r;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    if summands.is_empty() {
        summands.push(Summand::Sign);
        rank = 1;
    }
    let gens: Vec<IntMatrix> = perms
        .iter()
        .map(|p| {
            let sg = perm_sign(p);
            let blocks: Vec<IntMatrix> = summands
                .iter()
                .map(|s| match s {
                    Summand::Permutation => perm_matrix(p, 1),
                    Summand::TwistedPermutation => perm_matrix(p, sg),
                    Summand::Sign => IntMatrix::from_rows(vec![vec![sg]], 1),
                    Summand::Trivial => IntMatrix::identity(1),
                })
                .collect();
            block_diag(&blocks)
        })
        .collect();
    GModule::new(rank, gens, label).expect("finite permutation-type group")
}

/// `count` random modules from `seed`, labelled `rand-{seed}-{i}`.
pub fn random_modules(count: usize, seed: u64) -> Vec<GModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_module(&mut rng, format!("rand-{seed}-{i}")))
        .collect()
}

/// A seeded random square matrix over F_p.
pub fn random_matrix_mod_p(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Vec<Vec<u64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
        .collect()
}
