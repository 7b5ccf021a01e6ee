//! Curve models, their smooth completions, point counts and closed points.
//!
//! Two families are supported: the projective line, and double covers
//! `y^2 + h(x) y = f(x)` of the line. A double cover of genus g is completed in
//! the weighted projective plane with weights (1, g+1, 1), where the chart at
//! infinity is `v^2 + H(u) v = F(u)` with `u = 1/x`, `v = y/x^(g+1)`,
//! `H(u) = u^(g+1) h(1/u)` and `F(u) = u^(2g+2) f(1/u)`.

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::{Poly, PolyRing};
use crate::residue::{QuadraticRoots, ResidueField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    ProjectiveLine {
        field: Field,
    },
    /// `y^2 + h(x) y = f(x)`.
    DoubleCover {
        field: Field,
        f: Poly,
        h: Poly,
    },
}

impl CurveModel {
    pub fn field(&self) -> &Field {
        match self {
            CurveModel::ProjectiveLine { field } | CurveModel::DoubleCover { field, .. } => field,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveModel::ProjectiveLine { .. } => "projective_line",
            CurveModel::DoubleCover { .. } => "double_cover",
        }
    }
}

/// How a closed point of the base line behaves in the double cover, or the data
/// of a point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fibre {
    /// Point of the projective line itself.
    Line,
    /// One of two points over the base point, with its y-coordinate mod pi.
    Split(Poly),
    /// The unique point over a branch point, with its y-coordinate mod pi.
    Ramified(Poly),
    /// The unique point over the base point, of twice its degree.
    Inert,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointData {
    Affine { pi: Poly, fibre: Fibre },
    Infinity { slot: u32, fibre: Fibre },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub id: String,
    pub degree: u32,
    pub data: PointData,
}

impl ClosedPoint {
    pub fn is_at_infinity(&self) -> bool {
        matches!(self.data, PointData::Infinity { .. })
    }
}

/// Degree encoded in a point id such as `d2#0` or `d1#inf1`.
pub fn id_degree(id: &str) -> Option<u32> {
    let rest = id.strip_prefix('d')?;
    let (deg, idx) = rest.split_once('#')?;
    let idx = idx.strip_prefix("inf").unwrap_or(idx);
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    deg.parse().ok().filter(|&d| d > 0)
}

/// The shape of the fibre over the point at infinity of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
enum InfinityFibre {
    Ramified(Fe),
    Split(Fe, Fe),
    Inert,
}

#[derive(Clone, Debug)]
pub struct Curve {
    model: CurveModel,
    genus: u32,
    infinity: InfinityFibre,
    points_at_infinity: Vec<ClosedPoint>,
}

impl fmt::Display for Curve {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.model {
            CurveModel::ProjectiveLine { field } => write!(out, "P^1 over F_{}", field.q()),
            CurveModel::DoubleCover { field, f, h } => {
                write!(out, "y^2")?;
                if !h.is_zero() {
                    write!(out, " + ({}) y", format_poly(field, h))?;
                }
                write!(out, " = {} over F_{}", format_poly(field, f), field.q())
            }
        }
    }
}

fn format_poly(field: &Field, a: &Poly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            let coef = if field.m() == 1 {
                c.code().to_string()
            } else {
                format!("{:?}", field.coeffs(c))
            };
            match (i, c == Fe::ONE) {
                (0, _) => coef,
                (1, true) => "x".into(),
                (1, false) => format!("{coef}x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{coef}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// Roots of `v^2 + b v = c` in the field itself.
fn infinity_fibre(field: &Field, b: Fe, c: Fe) -> InfinityFibre {
    if field.p() == 2 {
        if b.is_zero() {
            return InfinityFibre::Ramified(field.sqrt(c).unwrap());
        }
        let bb = field.mul(b, b);
        let target = field.div(c, bb).unwrap();
        return match field
            .elements()
            .find(|&z| field.add(field.mul(z, z), z) == target)
        {
            None => InfinityFibre::Inert,
            Some(z) => {
                let v1 = field.mul(b, z);
                let v2 = field.add(v1, b);
                InfinityFibre::Split(v1.min(v2), v1.max(v2))
            }
        };
    }
    // Odd characteristic models have h = 0.
    debug_assert!(b.is_zero());
    if c.is_zero() {
        InfinityFibre::Ramified(Fe::ZERO)
    } else {
        match field.sqrt(c) {
            Some(r) => {
                let s = field.neg(r);
                InfinityFibre::Split(r.min(s), r.max(s))
            }
            None => InfinityFibre::Inert,
        }
    }
}

/// Validates a model and computes its genus and points at infinity.
pub fn validate(model: CurveModel) -> Result<Curve> {
    match &model {
        CurveModel::ProjectiveLine { .. } => {
            let points_at_infinity = vec![ClosedPoint {
                id: "d1#inf0".into(),
                degree: 1,
                data: PointData::Infinity {
                    slot: 0,
                    fibre: Fibre::Line,
                },
            }];
            Ok(Curve {
                model,
                genus: 0,
                infinity: InfinityFibre::Ramified(Fe::ZERO),
                points_at_infinity,
            })
        }
        CurveModel::DoubleCover { field, f, h } => {
            let ring = PolyRing::new(field.clone());
            let genus = if field.p() == 2 {
                check_char2(&ring, f, h)?
            } else {
                check_odd(&ring, f, h)?
            };
            let g = genus as usize;
            let infinity = infinity_fibre(field, h.coeff(g + 1), f.coeff(2 * g + 2));
            let points_at_infinity = match &infinity {
                InfinityFibre::Ramified(v) => {
                    vec![inf_point(1, 0, Fibre::Ramified(Poly::constant(*v)))]
                }
                InfinityFibre::Split(a, b) => vec![
                    inf_point(1, 0, Fibre::Split(Poly::constant(*a))),
                    inf_point(1, 1, Fibre::Split(Poly::constant(*b))),
                ],
                InfinityFibre::Inert => vec![inf_point(2, 0, Fibre::Inert)],
            };
            Ok(Curve {
                model,
                genus,
                infinity,
                points_at_infinity,
            })
        }
    }
}

fn inf_point(degree: u32, slot: u32, fibre: Fibre) -> ClosedPoint {
    ClosedPoint {
        id: format!("d{degree}#inf{slot}"),
        degree,
        data: PointData::Infinity { slot, fibre },
    }
}

fn check_odd(ring: &PolyRing, f: &Poly, h: &Poly) -> Result<u32> {
    if !h.is_zero() {
        return Err(Error::UnsupportedModel(
            "in odd characteristic only y^2 = f(x) (h = 0) is accepted".into(),
        ));
    }
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::GeometricallyReducible(
                "y^2 = constant splits into two lines".into(),
            ))
        }
        Some(d) => d,
    };
    if !ring.gcd(f, &ring.derivative(f)).is_one() {
        return Err(Error::SingularModel("f is not squarefree".into()));
    }
    // A squarefree f of positive degree is not a square in the algebraic closure,
    // so the cover is geometrically irreducible.
    Ok(((d - 1) / 2) as u32)
}

/// Characteristic 2: the affine model is singular exactly at common zeros of
/// h and h'^2 f + f'^2, and the chart at infinity is singular exactly when
/// H(0) = 0 and H'(0)^2 F(0) + F'(0)^2 = 0.
fn check_char2(ring: &PolyRing, f: &Poly, h: &Poly) -> Result<u32> {
    if h.is_zero() {
        return Err(Error::UnsupportedModel(
            "in characteristic 2 the model needs h != 0 to be a separable double cover".into(),
        ));
    }
    let field = ring.field();
    let d = [h.degree().map(|e| 2 * e), f.degree()]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0);
    if d == 0 {
        return Err(Error::GeometricallyReducible(
            "y^2 + c y = e with constants splits into two lines".into(),
        ));
    }
    let g = d.div_ceil(2) - 1;
    let dh = ring.derivative(h);
    let df = ring.derivative(f);
    let test = ring.add(&ring.mul(&ring.mul(&dh, &dh), f), &ring.mul(&df, &df));
    if !ring.gcd(h, &test).is_one() {
        return Err(Error::SingularModel("affine singular point".into()));
    }
    let h0 = h.coeff(g + 1);
    let h1 = h.coeff(g);
    let f0 = f.coeff(2 * g + 2);
    let f1 = f.coeff(2 * g + 1);
    if h0.is_zero()
        && field
            .add(field.mul(field.mul(h1, h1), f0), field.mul(f1, f1))
            .is_zero()
    {
        return Err(Error::SingularModel("singular point at infinity".into()));
    }
    // A smooth complete model is irreducible: two components of weighted degree
    // g+1 would meet, and the meeting point would be singular.
    Ok(g as u32)
}

impl Curve {
    pub fn model(&self) -> &CurveModel {
        &self.model
    }

    pub fn field(&self) -> &Field {
        self.model.field()
    }

    pub fn q(&self) -> u64 {
        self.field().q() as u64
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points_at_infinity(&self) -> &[ClosedPoint] {
        &self.points_at_infinity
    }

    pub fn is_projective_line(&self) -> bool {
        matches!(self.model, CurveModel::ProjectiveLine { .. })
    }

    /// #X(F_{q^n}) by enumerating the x-line of F_{q^n}.
    pub fn count_points(&self, n: u32, budget: &Budget) -> Result<u64> {
        assert!(n >= 1, "extension degree must be positive");
        let (field, f, h) = match &self.model {
            CurveModel::ProjectiveLine { .. } => {
                return self
                    .q()
                    .checked_pow(n)
                    .map(|qn| qn + 1)
                    .ok_or_else(|| Error::BudgetExceeded(format!("q^{n} overflows")));
            }
            CurveModel::DoubleCover { field, f, h } => (field, f, h),
        };
        budget.check_field(self.q(), n)?;
        let (big, f, h) = if n == 1 {
            (field.clone(), f.clone(), h.clone())
        } else {
            let (big, emb) = field.extension(n)?;
            let fb = emb.map_poly(field, f);
            let hb = emb.map_poly(field, h);
            (big, fb, hb)
        };
        let ring = PolyRing::new(big.clone());
        let affine: u64 = if big.p() == 2 {
            // The absolute trace is F_2-linear; record it on the basis t^i.
            let mask = (0..big.m()).fold(0u32, |acc, i| acc | (big.trace(Fe::raw(1 << i)) << i));
            big.elements()
                .map(|x| {
                    let hx = ring.eval(&h, x);
                    if hx.is_zero() {
                        return 1;
                    }
                    let fx = ring.eval(&f, x);
                    let c = big.div(fx, big.mul(hx, hx)).unwrap();
                    if (c.code() & mask).count_ones() % 2 == 0 {
                        2
                    } else {
                        0
                    }
                })
                .sum()
        } else {
            big.elements()
                .map(|x| (1 + big.legendre(ring.eval(&f, x))) as u64)
                .sum()
        };
        let at_infinity = match self.infinity {
            InfinityFibre::Ramified(_) => 1,
            InfinityFibre::Split(..) => 2,
            InfinityFibre::Inert if n.is_multiple_of(2) => 2,
            InfinityFibre::Inert => 0,
        };
        Ok(affine + at_infinity)
    }

    /// All closed points of degree at most `max_degree`, ordered by degree, then
    /// by the base point pi, then by y-representative, with points at infinity
    /// last in each degree.
    pub fn closed_points(&self, max_degree: u32, budget: &Budget) -> Result<Vec<ClosedPoint>> {
        assert!(max_degree >= 1, "max degree must be positive");
        let field = self.field();
        let ring = PolyRing::new(field.clone());
        let mut by_degree: Vec<Vec<(Poly, Fibre)>> = vec![Vec::new(); max_degree as usize + 1];
        for e in 1..=max_degree {
            budget.check_field(self.q(), e)?;
            for pi in ring.irreducibles(e as usize) {
                match &self.model {
                    CurveModel::ProjectiveLine { .. } => {
                        by_degree[e as usize].push((pi, Fibre::Line));
                    }
                    CurveModel::DoubleCover { f, h, .. } => {
                        let res = ResidueField::new(&ring, &pi);
                        match res.solve_quadratic(h, f) {
                            QuadraticRoots::Two(a, b) => {
                                by_degree[e as usize].push((pi.clone(), Fibre::Split(a)));
                                by_degree[e as usize].push((pi, Fibre::Split(b)));
                            }
                            QuadraticRoots::Double(a) => {
                                by_degree[e as usize].push((pi, Fibre::Ramified(a)));
                            }
                            QuadraticRoots::None => {
                                if 2 * e <= max_degree {
                                    by_degree[2 * e as usize].push((pi, Fibre::Inert));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (d, mut affine) in by_degree.into_iter().enumerate().skip(1) {
            affine.sort();
            out.extend(
                affine
                    .into_iter()
                    .enumerate()
                    .map(|(i, (pi, fibre))| ClosedPoint {
                        id: format!("d{d}#{i}"),
                        degree: d as u32,
                        data: PointData::Affine { pi, fibre },
                    }),
            );
            out.extend(
                self.points_at_infinity
                    .iter()
                    .filter(|pt| pt.degree as usize == d)
                    .cloned(),
            );
        }
        Ok(out)
    }
}
