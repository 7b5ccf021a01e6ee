//! The K(pi,1) decision procedure for marked curves `(X - S, T)` and a prime p.
//!
//! Rules are tried in a fixed order; each instance lands in exactly one case.
//! When `p` is the characteristic:
//!
//! 1. S nonempty: K(pi,1), cd = 1.
//! 2. S and T empty: K(pi,1), cd <= 2.
//! 3. S empty, T nonempty, Pic(X)[p] = 0: pi_1 is cyclic of order p^r where p^r
//!    is the p-part of the gcd of the degrees in T; K(pi,1) exactly when T is a
//!    single point of degree prime to p.
//! 4. As 3 but Pic(X)[p] != 0 and the Ihara sum over T exceeds max(g - 1, 0):
//!    pi_1 is finite, so not K(pi,1).
//! 5. As 4 without the Ihara bound: undetermined.
//!
//! When `p` differs from the characteristic only S = T = empty is handled:
//!
//! 6. mu_p not in F, or Pic(X)[p] != 0: K(pi,1).
//! 7. Otherwise pi_1(X)(p) = Z_p and the property fails.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::curve::{id_degree, ClosedPoint, Curve};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::ihara::{ihara_sum_exceeds, IharaBound};
use crate::picard::{jacobian_group, AbelianGroupStructure};
use crate::zeta::{l_polynomial, LPolynomial};

/// Source of the arithmetic invariants consulted by the classifier.
pub trait Arithmetic {
    fn l_polynomial(&self, curve: &Curve) -> Result<LPolynomial>;
    fn jacobian(&self, curve: &Curve) -> Result<AbelianGroupStructure>;
}

/// Computes everything from scratch within a budget.
pub struct Exact(pub Budget);

impl Arithmetic for Exact {
    fn l_polynomial(&self, curve: &Curve) -> Result<LPolynomial> {
        l_polynomial(curve, &self.0)
    }

    fn jacobian(&self, curve: &Curve) -> Result<AbelianGroupStructure> {
        jacobian_group(curve, &self.0)
    }
}

#[derive(Clone, Debug)]
pub struct MarkedInstance {
    pub curve: Curve,
    pub s: Vec<ClosedPoint>,
    pub t: Vec<ClosedPoint>,
    pub p: u64,
}

impl MarkedInstance {
    /// Resolves point ids against the closed points up to the largest degree
    /// mentioned.
    pub fn new(
        curve: Curve,
        s_ids: &[String],
        t_ids: &[String],
        p: u64,
        budget: &Budget,
    ) -> Result<MarkedInstance> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let mut max_degree = 0;
        for id in s_ids.iter().chain(t_ids) {
            let d = id_degree(id).ok_or_else(|| Error::UnknownPoint(id.clone()))?;
            max_degree = max_degree.max(d);
        }
        let points = if max_degree == 0 {
            Vec::new()
        } else {
            curve.closed_points(max_degree, budget)?
        };
        let resolve = |ids: &[String]| -> Result<Vec<ClosedPoint>> {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for id in ids {
                let pt = points
                    .iter()
                    .find(|pt| &pt.id == id)
                    .ok_or_else(|| Error::UnknownPoint(id.clone()))?;
                if seen.insert(id.clone()) {
                    out.push(pt.clone());
                }
            }
            Ok(out)
        };
        let s = resolve(s_ids)?;
        let t = resolve(t_ids)?;
        if let Some(both) = s.iter().find(|x| t.iter().any(|y| y.id == x.id)) {
            return Err(Error::OverlappingMarks(both.id.clone()));
        }
        Ok(MarkedInstance { curve, s, t, p })
    }

    pub fn t_degrees(&self) -> Vec<u32> {
        self.t.iter().map(|x| x.degree).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Kpi1True,
    Kpi1False,
    Undetermined,
}

/// Which rule decided the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    RamificationAllowed,
    ProperUnmarked,
    MarkedPicardTrivial,
    MarkedIharaFinite,
    MarkedOpen,
    CoprimeUnmarkedAspherical,
    CoprimeUnmarkedProCyclic,
}

impl CaseTag {
    /// Position in the rule order, 1 to 7.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn justification(self) -> &'static str {
        match self {
            CaseTag::RamificationAllowed => {
                "S nonempty: the pro-p group with ramification in S and splitting in T has the K(pi,1)-property and cohomological dimension 1"
            }
            CaseTag::ProperUnmarked => {
                "S and T empty, p the characteristic: the K(pi,1)-property holds with cohomological dimension at most 2"
            }
            CaseTag::MarkedPicardTrivial => {
                "S empty, T nonempty, Pic(X)[p] = 0: pi_1(X,T)(p) is cyclic of order p^r, p^r the p-part of gcd(deg x, x in T); K(pi,1) exactly when T is one point of degree prime to p"
            }
            CaseTag::MarkedIharaFinite => {
                "S empty, T nonempty, Pic(X)[p] != 0: the Ihara sum over T exceeds max(g-1, 0), so pi_1(X,T)(p) is finite and the K(pi,1)-property fails"
            }
            CaseTag::MarkedOpen => {
                "S empty, T nonempty, Pic(X)[p] != 0 and the Ihara bound is not met: no criterion applies"
            }
            CaseTag::CoprimeUnmarkedAspherical => {
                "p not the characteristic, S and T empty: mu_p(F) = 1 or Pic(X)[p] != 0, so the K(pi,1)-property holds"
            }
            CaseTag::CoprimeUnmarkedProCyclic => {
                "p not the characteristic, S and T empty, mu_p(F) != 1 and Pic(X)[p] = 0: pi_1(X)(p) = pi_1(F)(p) = Z_p and the K(pi,1)-property fails"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdBound {
    /// The group is trivial.
    Zero,
    One,
    AtMostTwo,
    /// Finite and nontrivial.
    Infinite,
    Unknown,
}

impl CdBound {
    pub fn as_str(self) -> &'static str {
        match self {
            CdBound::Zero => "=0",
            CdBound::One => "=1",
            CdBound::AtMostTwo => "≤2",
            CdBound::Infinite => "∞ (finite nontrivial group)",
            CdBound::Unknown => "unknown",
        }
    }
}

impl Serialize for CdBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1 {
    Trivial,
    CyclicPPower(u32),
    FiniteIhara,
    Zp,
    Unknown,
}

impl Pi1 {
    pub fn as_str(self) -> &'static str {
        match self {
            Pi1::Trivial => "trivial",
            Pi1::CyclicPPower(_) => "cyclic of order p^r",
            Pi1::FiniteIhara => "finite (Ihara)",
            Pi1::Zp => "≅ Z_p",
            Pi1::Unknown => "infinite/unknown",
        }
    }

    pub fn r(self) -> Option<u32> {
        match self {
            Pi1::CyclicPPower(r) => Some(r),
            Pi1::Trivial => Some(0),
            _ => None,
        }
    }

    /// Finite and nontrivial for certain.
    pub fn is_finite_nontrivial(self) -> bool {
        matches!(self, Pi1::CyclicPPower(r) if r >= 1)
    }
}

impl Serialize for Pi1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Invariants {
    pub q: u64,
    pub g: u32,
    pub l_polynomial: Option<LPolynomial>,
    pub h: Option<u64>,
    pub pic_p_nontrivial: Option<bool>,
    pub ihara: Option<IharaBound>,
    pub mu_p: Option<bool>,
    /// dim Pic(X)[p] over F_p.
    pub s: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub s: usize,
    pub t: usize,
    pub h1: usize,
    pub rho: i64,
    pub h2: i64,
    pub chi_ok: bool,
    pub rho_in_range: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub case_tag: CaseTag,
    pub case_number: u8,
    pub verdict: Verdict,
    pub cd_bound: CdBound,
    pub pi1_description: Pi1,
    pub pi1_r: Option<u32>,
    pub p: u64,
    pub s_points: Vec<String>,
    pub t_points: Vec<String>,
    pub invariants: Invariants,
    pub euler: Option<EulerReport>,
    pub justification: String,
    pub notes: Vec<String>,
}

/// r with p^r the largest power of p dividing the gcd of the degrees.
pub fn fundamental_group_case(t_degrees: &[u32], p: u64) -> u32 {
    assert!(!t_degrees.is_empty(), "T must be nonempty");
    let mut g = t_degrees.iter().fold(0u64, |acc, &d| acc.gcd(&(d as u64)));
    let mut r = 0;
    while g % p == 0 {
        g /= p;
        r += 1;
    }
    r
}

/// Dimension count around `0 -> H^1(X,T) -> H^1(X) -> sum_T H^1_nr(k_x) -> H^2(X,T) -> H^2(X) -> 0`
/// with `dim H^1(X) = 1 + s`, `dim H^2(X) = s` and one dimension per marked point.
pub fn euler_bookkeeping(s: usize, t: usize, h1: usize) -> Result<EulerReport> {
    if h1 > 1 + s {
        return Err(Error::InconsistentInput(format!(
            "h1 = {h1} exceeds dim H^1(X) = {}",
            1 + s
        )));
    }
    let rho = (1 + s - h1) as i64;
    let h2 = t as i64 - rho + s as i64;
    Ok(EulerReport {
        s,
        t,
        h1,
        rho,
        h2,
        chi_ok: 1 - h1 as i64 + h2 == t as i64,
        rho_in_range: 0 <= rho && rho <= (1 + s).min(t) as i64,
    })
}

/// Whether F_q contains the p-th roots of unity.
pub fn mu_p_in_field(q: u64, p: u64) -> Result<bool> {
    if q.is_multiple_of(p) {
        return Err(Error::CharacteristicClash { p, q });
    }
    Ok((q - 1).is_multiple_of(p))
}

/// Budget failures become "unknown"; other errors propagate.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() || matches!(e, Error::OracleUnsupportedModel(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

struct Draft {
    tag: CaseTag,
    verdict: Verdict,
    cd: CdBound,
    pi1: Pi1,
    euler: Option<EulerReport>,
    notes: Vec<String>,
}

pub fn classify(instance: &MarkedInstance, budget: &Budget) -> Result<ClassificationReport> {
    classify_with(instance, &Exact(*budget))
}

pub fn classify_with(
    instance: &MarkedInstance,
    arith: &dyn Arithmetic,
) -> Result<ClassificationReport> {
    let curve = &instance.curve;
    let p = instance.p;
    let q = curve.q();
    let mut inv = Invariants {
        q,
        g: curve.genus(),
        ..Invariants::default()
    };
    let char_p = curve.field().p() as u64 == p;

    let set_l = |inv: &mut Invariants, l: LPolynomial| {
        let h = l.class_number();
        inv.h = Some(h);
        inv.pic_p_nontrivial = Some(h.is_multiple_of(p));
        inv.l_polynomial = Some(l);
    };
    // dim Pic(X)[p]: zero when p does not divide h, else read off the oracle.
    let find_s = |inv: &mut Invariants| -> Result<()> {
        inv.s = match inv.pic_p_nontrivial {
            Some(false) => Some(0),
            Some(true) => optional(arith.jacobian(curve))?.map(|g| g.p_torsion_dim(p)),
            None => None,
        };
        Ok(())
    };

    let draft = if !char_p {
        if !instance.s.is_empty() || !instance.t.is_empty() {
            return Err(Error::UnsupportedCase(format!(
                "p = {p} differs from the characteristic {}; only S = T = empty is handled",
                curve.field().p()
            )));
        }
        let mu = mu_p_in_field(q, p)?;
        inv.mu_p = Some(mu);
        if mu {
            set_l(&mut inv, arith.l_polynomial(curve)?);
        } else if let Some(l) = optional(arith.l_polynomial(curve))? {
            set_l(&mut inv, l);
        }
        if !mu || inv.pic_p_nontrivial == Some(true) {
            Draft {
                tag: CaseTag::CoprimeUnmarkedAspherical,
                verdict: Verdict::Kpi1True,
                cd: CdBound::Unknown,
                pi1: Pi1::Unknown,
                euler: None,
                notes: Vec::new(),
            }
        } else {
            Draft {
                tag: CaseTag::CoprimeUnmarkedProCyclic,
                verdict: Verdict::Kpi1False,
                cd: CdBound::One,
                pi1: Pi1::Zp,
                euler: None,
                notes: vec!["H^i(pi_1(p)) is finite and vanishes for i > 3".into()],
            }
        }
    } else if !instance.s.is_empty() {
        // No arithmetic is consulted here.
        Draft {
            tag: CaseTag::RamificationAllowed,
            verdict: Verdict::Kpi1True,
            cd: CdBound::One,
            pi1: Pi1::Unknown,
            euler: None,
            notes: Vec::new(),
        }
    } else if instance.t.is_empty() {
        if let Some(l) = optional(arith.l_polynomial(curve))? {
            set_l(&mut inv, l);
        }
        find_s(&mut inv)?;
        let euler = inv.s.map(|s| euler_bookkeeping(s, 0, 1 + s)).transpose()?;
        Draft {
            tag: CaseTag::ProperUnmarked,
            verdict: Verdict::Kpi1True,
            cd: CdBound::AtMostTwo,
            pi1: Pi1::Unknown,
            euler,
            notes: Vec::new(),
        }
    } else {
        set_l(&mut inv, arith.l_polynomial(curve)?);
        let degrees = instance.t_degrees();
        let t = degrees.len();
        let r = fundamental_group_case(&degrees, p);
        if inv.pic_p_nontrivial == Some(false) {
            inv.s = Some(0);
            let (pi1, h1, cd) = if r == 0 {
                (Pi1::Trivial, 0, CdBound::Zero)
            } else {
                (Pi1::CyclicPPower(r), 1, CdBound::Infinite)
            };
            let verdict = if r == 0 && t == 1 {
                Verdict::Kpi1True
            } else {
                Verdict::Kpi1False
            };
            let mut notes = Vec::new();
            if r == 0 && t > 1 {
                notes.push(format!(
                    "pi_1 is trivial but H^2(X,T) has dimension {}",
                    t - 1
                ));
            }
            Draft {
                tag: CaseTag::MarkedPicardTrivial,
                verdict,
                cd,
                pi1,
                euler: Some(euler_bookkeeping(0, t, h1)?),
                notes,
            }
        } else {
            let bound = ihara_sum_exceeds(&degrees, q, curve.genus());
            let exceeds = bound.exceeds;
            inv.ihara = Some(bound);
            find_s(&mut inv)?;
            if exceeds {
                // Nontriviality is certain when the constant p^r-extension splits
                // on T, or when dim H^1(X,T) >= (1 + s) - #T is positive.
                let s_lower = inv.s.unwrap_or(1).max(1);
                let mut notes = Vec::new();
                let cd = if r >= 1 {
                    notes.push(format!(
                        "the constant extension of degree p^{r} splits at every point of T"
                    ));
                    CdBound::Infinite
                } else if 1 + s_lower > t {
                    notes.push(format!("dim H^1(X,T) >= 1 + s - #T >= {}", 1 + s_lower - t));
                    CdBound::Infinite
                } else {
                    CdBound::Unknown
                };
                Draft {
                    tag: CaseTag::MarkedIharaFinite,
                    verdict: Verdict::Kpi1False,
                    cd,
                    pi1: Pi1::FiniteIhara,
                    euler: None,
                    notes,
                }
            } else {
                Draft {
                    tag: CaseTag::MarkedOpen,
                    verdict: Verdict::Undetermined,
                    cd: CdBound::Unknown,
                    pi1: Pi1::Unknown,
                    euler: None,
                    notes: Vec::new(),
                }
            }
        }
    };

    debug_assert!(!draft.pi1.is_finite_nontrivial() || draft.verdict == Verdict::Kpi1False);
    Ok(ClassificationReport {
        case_tag: draft.tag,
        case_number: draft.tag.number(),
        verdict: draft.verdict,
        cd_bound: draft.cd,
        pi1_description: draft.pi1,
        pi1_r: draft.pi1.r(),
        p,
        s_points: instance.s.iter().map(|x| x.id.clone()).collect(),
        t_points: instance.t.iter().map(|x| x.id.clone()).collect(),
        invariants: inv,
        euler: draft.euler,
        justification: draft.tag.justification().to_string(),
        notes: draft.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{validate, CurveModel};
    use crate::field::Field;
    use crate::poly::Poly;
    use std::cell::Cell;

    fn line(p: u32) -> Curve {
        validate(CurveModel::ProjectiveLine {
            field: Field::prime(p).unwrap(),
        })
        .unwrap()
    }

    fn cover(p: u32, f: &[u32]) -> Curve {
        let field = Field::prime(p).unwrap();
        validate(CurveModel::DoubleCover {
            f: Poly::from_codes(&field, f).unwrap(),
            h: Poly::zero(),
            field,
        })
        .unwrap()
    }

    fn ids(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn run(curve: Curve, s: &[&str], t: &[&str], p: u64) -> ClassificationReport {
        let b = Budget::default();
        classify(
            &MarkedInstance::new(curve, &ids(s), &ids(t), p, &b).unwrap(),
            &b,
        )
        .unwrap()
    }

    #[test]
    fn ramification_allowed() {
        let r = run(line(2), &["d1#0"], &["d1#inf0"], 2);
        assert_eq!(
            (r.case_number, r.verdict, r.cd_bound),
            (1, Verdict::Kpi1True, CdBound::One)
        );
    }

    #[test]
    fn single_rational_point_on_line() {
        let r = run(line(3), &[], &["d1#0"], 3);
        assert_eq!(r.case_number, 3);
        assert_eq!(r.verdict, Verdict::Kpi1True);
        assert_eq!(r.pi1_description, Pi1::Trivial);
        let e = r.euler.unwrap();
        assert_eq!((e.rho, e.h2, e.chi_ok), (1, 0, true));
    }

    #[test]
    fn degree_two_point_on_line() {
        let r = run(line(2), &[], &["d2#0"], 2);
        assert_eq!(r.verdict, Verdict::Kpi1False);
        assert_eq!(r.pi1_description, Pi1::CyclicPPower(1));
        assert_eq!(r.cd_bound, CdBound::Infinite);
        let e = r.euler.unwrap();
        assert_eq!((e.h1, e.rho, e.h2), (1, 0, 1));
    }

    #[test]
    fn two_rational_points_on_line() {
        let r = run(line(3), &[], &["d1#0", "d1#1"], 3);
        assert_eq!(r.verdict, Verdict::Kpi1False);
        assert_eq!(r.pi1_description, Pi1::Trivial);
        let e = r.euler.unwrap();
        assert_eq!((e.rho, e.h2), (1, 1));
    }

    #[test]
    fn coprime_cases() {
        let r = run(cover(3, &[0, 1, 0, 1]), &[], &[], 2);
        assert_eq!((r.case_number, r.verdict), (6, Verdict::Kpi1True));
        assert_eq!(r.invariants.h, Some(4));
        // N_1 = 3 over F_3: h = 3, 2 | q - 1.
        let r = run(cover(3, &[2, 0, 1, 1]), &[], &[], 2);
        assert_eq!(
            (r.case_number, r.verdict, r.pi1_description),
            (7, Verdict::Kpi1False, Pi1::Zp)
        );
        let r = run(line(2), &[], &[], 3);
        assert_eq!(r.case_number, 6);
        assert_eq!(r.invariants.mu_p, Some(false));
    }

    #[test]
    fn ihara_and_open_cases() {
        // Ordinary, h = 3 over F_3; T one rational point: 1/(sqrt 3 - 1) > 0.
        let e = cover(3, &[2, 0, 1, 1]);
        let pts = e.closed_points(1, &Budget::default()).unwrap();
        let r = run(e, &[], &[&pts[0].id], 3);
        assert_eq!((r.case_number, r.verdict), (4, Verdict::Kpi1False));
        assert_eq!(r.pi1_description, Pi1::FiniteIhara);
        assert!(r.invariants.ihara.as_ref().unwrap().exceeds);
        // Genus 2 over F_5 with h = 25; one rational point gives 0.809 < 1.
        let c = cover(5, &[2, 0, 1, 0, 0, 1]);
        let pts = c.closed_points(1, &Budget::default()).unwrap();
        let r = run(c, &[], &[&pts[0].id], 5);
        assert_eq!((r.case_number, r.verdict), (5, Verdict::Undetermined));
    }

    #[test]
    fn errors() {
        let b = Budget::default();
        let c = line(2);
        assert!(matches!(
            MarkedInstance::new(c.clone(), &ids(&["d1#9"]), &[], 2, &b),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(
            MarkedInstance::new(c.clone(), &ids(&["x"]), &[], 2, &b),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(
            MarkedInstance::new(c.clone(), &ids(&["d1#0"]), &ids(&["d1#0"]), 2, &b),
            Err(Error::OverlappingMarks(_))
        ));
        let inst = MarkedInstance::new(c, &[], &ids(&["d1#0"]), 3, &b).unwrap();
        assert!(matches!(
            classify(&inst, &b),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn helper_examples() {
        assert_eq!(fundamental_group_case(&[1], 2), 0);
        assert_eq!(fundamental_group_case(&[2, 4], 2), 1);
        assert_eq!(fundamental_group_case(&[6, 4], 2), 1);
        assert_eq!(fundamental_group_case(&[3], 3), 1);
        assert_eq!(mu_p_in_field(3, 2), Ok(true));
        assert_eq!(mu_p_in_field(2, 3), Ok(false));
        assert_eq!(mu_p_in_field(4, 3), Ok(true));
        assert_eq!(
            mu_p_in_field(9, 3),
            Err(Error::CharacteristicClash { p: 3, q: 9 })
        );
        let e = euler_bookkeeping(0, 2, 0).unwrap();
        assert_eq!((e.rho, e.h2, e.chi_ok, e.rho_in_range), (1, 1, true, true));
        let e = euler_bookkeeping(0, 1, 1).unwrap();
        assert_eq!((e.rho, e.h2), (0, 1));
        assert!(matches!(
            euler_bookkeeping(0, 1, 2),
            Err(Error::InconsistentInput(_))
        ));
    }

    struct Counting<'a>(&'a Cell<u32>);

    impl Arithmetic for Counting<'_> {
        fn l_polynomial(&self, _: &Curve) -> Result<LPolynomial> {
            self.0.set(self.0.get() + 1);
            Err(Error::Inconsistent("not expected".into()))
        }
        fn jacobian(&self, _: &Curve) -> Result<AbelianGroupStructure> {
            self.0.set(self.0.get() + 1);
            Err(Error::Inconsistent("not expected".into()))
        }
    }

    #[test]
    fn ramified_case_skips_arithmetic() {
        let calls = Cell::new(0);
        let b = Budget::default();
        let inst = MarkedInstance::new(cover(5, &[2, 0, 1, 0, 0, 1]), &ids(&["d1#0"]), &[], 5, &b)
            .unwrap();
        let r = classify_with(&inst, &Counting(&calls)).unwrap();
        assert_eq!(r.verdict, Verdict::Kpi1True);
        assert_eq!(calls.get(), 0);
        assert_eq!(r.invariants.h, None);
    }

    #[test]
    fn report_json_shape() {
        let r = run(line(2), &[], &["d2#0"], 2);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "KPI1_FALSE");
        assert_eq!(v["case_tag"], "marked_picard_trivial");
        assert_eq!(v["pi1_description"], "cyclic of order p^r");
        assert_eq!(v["pi1_r"], 1);
        assert_eq!(v["invariants"]["h"], 1);
        assert_eq!(v["euler"]["chi_ok"], true);
    }
}
