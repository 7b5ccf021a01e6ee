//! Arithmetic of curves over finite fields and the K(pi,1) decision procedure
//! for marked curves.

pub mod budget;
pub mod classifier;
pub mod curve;
pub mod error;
pub mod field;
pub mod gmodule;
pub mod ihara;
pub mod io;
pub mod picard;
pub mod poly;
mod residue;
pub mod snf;
pub mod zeta;

pub use budget::Budget;
pub use classifier::{classify, ClassificationReport, MarkedInstance, Verdict};
pub use curve::{validate, ClosedPoint, Curve, CurveModel, Fibre, PointData};
pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use gmodule::{
    coinvariant_criterion, coinvariants, invariants_rank, invcoinv_dims, GModule, GModuleSpec,
};
pub use ihara::{ihara_sum_exceeds, IharaBound, QuadraticSurd};
pub use io::{parse_curve, CurveSpec};
pub use picard::{jacobian_group, p_torsion_dim, AbelianGroupStructure};
pub use poly::{Poly, PolyRing};
pub use zeta::{l_polynomial, pic_p_nontrivial, LPolynomial};
