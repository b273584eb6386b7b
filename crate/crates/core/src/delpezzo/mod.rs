//! Depth of simple projections and the non-normal Del Pezzo condition.
//!
//! Depth is predicted from the secant signature, never recomputed from a
//! resolution.

mod atlas;
mod projection;
mod veronese;

pub use atlas::{atlas_enumerate, del_pezzo_locus, locus_contains, sample_inside, AtlasEntry, LocusKind};
pub use projection::{project, Projection, ProjectionReport};
pub use veronese::{
    brute_veronese_secant_locus, veronese_classify, veronese_points, VeroneseClass, VeroneseReport,
};

use serde::{Deserialize, Serialize};

use crate::scroll::ScrollSpec;
use crate::secant::SecantSignature;

/// The families of non-normal maximal Del Pezzo projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DelPezzoCase {
    /// Cones over rational normal curves `S(a)`, `a >= 3`.
    #[serde(rename = "a")]
    NormalCurve,
    /// `S(1,2)`.
    #[serde(rename = "b-i")]
    CubicScroll,
    /// `S(1,b)`, `b >= 3`.
    #[serde(rename = "b-ii")]
    LineScroll,
    /// `S(2,2)`.
    #[serde(rename = "b-iii")]
    BalancedConicScroll,
    /// `S(2,b)`, `b >= 3`.
    #[serde(rename = "b-iv")]
    ConicScroll,
    /// `S(1,1,1)`.
    #[serde(rename = "c-i")]
    SegreThreefold,
    /// `S(1,1,c)`, `c >= 2`.
    #[serde(rename = "c-ii")]
    TwoLineScroll,
    /// Cones over the Veronese surface.
    #[serde(rename = "veronese")]
    Veronese,
    #[serde(rename = "none")]
    None,
}

impl DelPezzoCase {
    pub fn tag(self) -> &'static str {
        match self {
            DelPezzoCase::NormalCurve => "a",
            DelPezzoCase::CubicScroll => "b-i",
            DelPezzoCase::LineScroll => "b-ii",
            DelPezzoCase::BalancedConicScroll => "b-iii",
            DelPezzoCase::ConicScroll => "b-iv",
            DelPezzoCase::SegreThreefold => "c-i",
            DelPezzoCase::TwoLineScroll => "c-ii",
            DelPezzoCase::Veronese => "veronese",
            DelPezzoCase::None => "none",
        }
    }

    /// The family a scroll type belongs to, regardless of the point.
    pub fn of_type(spec: &ScrollSpec) -> DelPezzoCase {
        match spec.a() {
            [a] if *a >= 3 => DelPezzoCase::NormalCurve,
            [1, 2] => DelPezzoCase::CubicScroll,
            [1, b] if *b >= 3 => DelPezzoCase::LineScroll,
            [2, 2] => DelPezzoCase::BalancedConicScroll,
            [2, b] if *b >= 3 => DelPezzoCase::ConicScroll,
            [1, 1, 1] => DelPezzoCase::SegreThreefold,
            [1, 1, c] if *c >= 2 => DelPezzoCase::TwoLineScroll,
            _ => DelPezzoCase::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    /// Predicted arithmetic depth of the projection.
    pub t: i64,
    pub acm: bool,
    /// `dim Sigma_p - h`.
    pub j: i64,
    pub del_pezzo_case: DelPezzoCase,
    pub linearly_normal: bool,
}

/// `j = n`, i.e. the secant locus has codimension one in the scroll.
pub fn is_del_pezzo(spec: &ScrollSpec, sig: &SecantSignature) -> bool {
    sig.locus_dim - spec.h() as i64 == spec.n() as i64
}

/// Depth of the projection from `p`; `in_sec` says whether `p` lies on the
/// secant variety (joined with the vertex).
pub fn depth_predict(spec: &ScrollSpec, sig: &SecantSignature, in_sec: bool) -> DepthReport {
    let smooth = !spec.is_cone();
    let linearly_normal = !(smooth && !in_sec);
    let t = if linearly_normal { sig.depth_pred } else { 1 };
    let acm = is_del_pezzo(spec, sig);
    DepthReport {
        t,
        acm,
        j: sig.locus_dim - spec.h() as i64,
        del_pezzo_case: if acm { DelPezzoCase::of_type(spec) } else { DelPezzoCase::None },
        linearly_normal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secant::{SecantSignature, SecantType};

    fn sig(h: i32, label: SecantType) -> SecantSignature {
        SecantSignature::new(h, label.s() + h as i64 + 1, label.rank()).unwrap()
    }

    #[test]
    fn depth_examples() {
        let s3 = ScrollSpec::new(vec![3], -1).unwrap();
        let r = depth_predict(&s3, &sig(-1, SecantType::TwoPoints), true);
        assert_eq!((r.t, r.acm, r.del_pezzo_case), (2, true, DelPezzoCase::NormalCurve));

        let s113 = ScrollSpec::new(vec![1, 1, 3], -1).unwrap();
        let r = depth_predict(&s113, &sig(-1, SecantType::QuadricSurface), true);
        assert_eq!((r.t, r.acm, r.del_pezzo_case.tag()), (4, true, "c-ii"));
        let r = depth_predict(&s113, &sig(-1, SecantType::Conic), true);
        assert!(!r.acm);
        assert_eq!(r.del_pezzo_case, DelPezzoCase::None);

        let s14 = ScrollSpec::new(vec![1, 4], -1).unwrap();
        let r = depth_predict(&s14, &sig(-1, SecantType::Empty2Z), false);
        assert_eq!((r.t, r.linearly_normal), (1, false));

        let cone = ScrollSpec::new(vec![1, 4], 1).unwrap();
        let r = depth_predict(&cone, &sig(1, SecantType::Empty2Z), false);
        assert_eq!((r.t, r.linearly_normal), (3, true));
    }

    #[test]
    fn del_pezzo_examples() {
        let s12 = ScrollSpec::new(vec![1, 2], -1).unwrap();
        assert!(is_del_pezzo(&s12, &sig(-1, SecantType::Conic)));
        let s3 = ScrollSpec::new(vec![3], -1).unwrap();
        assert!(is_del_pezzo(&s3, &sig(-1, SecantType::TwoPoints)));
        let s113 = ScrollSpec::new(vec![1, 1, 3], -1).unwrap();
        assert!(!is_del_pezzo(&s113, &sig(-1, SecantType::Conic)));
    }
}
