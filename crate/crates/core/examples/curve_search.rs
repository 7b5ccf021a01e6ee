//! Brute-force search for the small curves pinned in the test suite and the
//! classification truth table.
//!
//! Prints, for p in {3, 5, 7}:
//! * every cubic y^2 = x^3 + c x^2 + a x + b (c = 0 unless p = 3) with its
//!   class number and whether it is ordinary (p does not divide q + 1 - N_1);
//! * the first few genus-2 curves y^2 = x^5 + c x + d (and x^5 + c x^2 + d)
//!   with p | h, which land in the undetermined case of the classifier.
//!
//! Run with `cargo run --release -p curveclass --example curve_search`.

use curveclass::{l_polynomial, validate, Budget, CurveModel, Field, Poly};

fn cover(field: &Field, f: &[u32]) -> Option<curveclass::Curve> {
    let f = Poly::from_codes(field, f).ok()?;
    validate(CurveModel::DoubleCover {
        field: field.clone(),
        f,
        h: Poly::zero(),
    })
    .ok()
}

fn main() {
    let budget = Budget::default();
    for p in [3u32, 5, 7] {
        let field = Field::prime(p).unwrap();
        // Without an x^2 term every cubic over F_3 is supersingular.
        let quad = if p == 3 { 0..p } else { 0..1 };
        println!(
            "# elliptic curves over F_{p}: c a b N1 h ordinary p|h  (y^2 = x^3 + c x^2 + a x + b)"
        );
        for c2 in quad {
            for a in 0..p {
                for b in 0..p {
                    let Some(c) = cover(&field, &[b, a, c2, 1]) else {
                        continue;
                    };
                    let l = l_polynomial(&c, &budget).unwrap();
                    let h = l.class_number();
                    let trace = -l.coeffs()[1];
                    let n1 = c.count_points(1, &budget).unwrap();
                    println!(
                        "{c2} {a} {b} {n1} {h} {} {}",
                        trace % p as i64 != 0,
                        h.is_multiple_of(p as u64)
                    );
                }
            }
        }
        println!("# genus-2 curves over F_{p} with p | h: f (low first) h");
        let mut found = 0;
        'outer: for shape in [1usize, 2] {
            for c1 in 0..p {
                for d in 1..p {
                    let mut f = vec![0u32; 6];
                    f[0] = d;
                    f[shape] = c1;
                    f[5] = 1;
                    let Some(c) = cover(&field, &f) else { continue };
                    let h = l_polynomial(&c, &budget).unwrap().class_number();
                    if h.is_multiple_of(p as u64) {
                        println!("{f:?} {h}");
                        found += 1;
                        if found == 3 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
}
