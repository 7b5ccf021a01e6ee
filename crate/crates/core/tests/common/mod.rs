#![allow(dead_code)]

use std::path::PathBuf;

use curveclass::{parse_curve, Curve};
use num_bigint::{BigInt, BigUint};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn load_curve(rel: &str) -> Curve {
    let path = data_dir().join(rel);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_curve(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// The fixed suite: lines over F_2, F_3, F_5; six elliptic and three genus-2
/// imaginary models over F_3, F_5, F_7. All are in range of the Jacobian oracle.
pub const SUITE: &[&str] = &[
    "line_f2",
    "line_f3",
    "line_f5",
    "ell_f3_h4",
    "ell_f3_h3",
    "ell_f5_h4",
    "ell_f5_h10",
    "ell_f5_h5",
    "ell_f7_h7",
    "ell_f7_h12",
    "g2_f3_h6",
    "g2_f5_h25",
    "g2_f7_h42",
    "g2_f7",
];

/// Curves outside the oracle's range, used where only counting is needed.
pub const EXTRA: &[&str] = &[
    "line_f4",
    "ell_f2_supersingular",
    "ell_f2_ordinary",
    "g2_f5_real",
];

pub fn suite() -> Vec<(String, Curve)> {
    SUITE
        .iter()
        .map(|n| (n.to_string(), load_curve(&format!("curves/{n}.json"))))
        .collect()
}

pub fn all_curves() -> Vec<(String, Curve)> {
    SUITE
        .iter()
        .chain(EXTRA)
        .map(|n| (n.to_string(), load_curve(&format!("curves/{n}.json"))))
        .collect()
}

/// `sum d / (q^(d/2) - 1)` as an integer scaled by `10^digits`, truncated, computed
/// with fixed-point square roots carrying `digits + 20` guard digits.
pub fn decimal_ihara(degrees: &[u32], q: u64, digits: u32) -> BigInt {
    let work = digits + 20;
    let scale = BigUint::from(10u32).pow(work);
    let mut total = BigUint::from(0u32);
    for &d in degrees {
        // q^(d/2) scaled: sqrt(q^d * 10^(2 work)).
        let root = (BigUint::from(q).pow(d) * &scale * &scale).sqrt();
        let den = root - &scale;
        total += BigUint::from(d) * &scale * &scale / den;
    }
    BigInt::from(total / BigUint::from(10u32).pow(20))
}
