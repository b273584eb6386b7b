//! Scroll types and point loci giving non-normal maximal Del Pezzo
//! projections, derived from the rule `j = n` over the six strata.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::DelPezzoCase;
use crate::error::Result;
use crate::exactfield::Elem;
use crate::sampling::{Component, StratifiedSampler};
use crate::scroll::{Scroll, ScrollSpec};
use crate::secant::{SecantOptions, SecantType};
use crate::strata;

/// Shape of the set of centers with an ACM projection (always minus the scroll).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocusKind {
    /// The whole ambient space.
    Full,
    /// The secant variety joined with the vertex.
    SecantJoin,
    /// Union of the spans `<Vert, L_alpha, L(x)>`.
    LineSectionJoin,
    /// Vertex joined with the Segre variety of conic planes.
    ConicPlanesJoin,
    /// Vertex joined with the span of the degree-two sub-scroll.
    ConicSpanJoin,
    /// Vertex joined with the span of the degree-one sub-scroll.
    LinearSpanA,
    /// Union of the line-section and conic loci.
    LineOrConicJoin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub spec: ScrollSpec,
    pub locus: LocusKind,
    /// Strata making up the locus.
    pub labels: Vec<SecantType>,
    pub case: DelPezzoCase,
}

/// Whether the stratum with the given label has points off the scroll.
/// Only labels with `j >= 1` are ever asked about.
fn stratum_nonempty(spec: &ScrollSpec, label: SecantType) -> bool {
    let (k, m, n) = (spec.k(), spec.m(), spec.n());
    let has_high = spec.a().iter().any(|&a| a >= 2);
    let has_cubic = spec.a().iter().any(|&a| a >= 3);
    match label {
        SecantType::QuadricSurface => k >= 2,
        SecantType::TwoLines => k >= 1 && has_high,
        SecantType::Conic => m > k,
        SecantType::DoublePoint => has_cubic || n == 1,
        SecantType::TwoPoints | SecantType::Empty2Z => true,
    }
}

/// Locus of centers whose projection is ACM, or `None` if there is none.
pub fn del_pezzo_locus(spec: &ScrollSpec) -> Option<(LocusKind, Vec<SecantType>)> {
    let n = spec.n() as i64;
    let labels: Vec<SecantType> =
        SecantType::ALL.into_iter().filter(|l| l.j() == n && stratum_nonempty(spec, *l)).collect();
    if labels.is_empty() {
        return None;
    }
    let (k, m) = (spec.k(), spec.m());
    let has_cubic = spec.a().iter().any(|&a| a >= 3);
    let has_line = labels.contains(&SecantType::TwoLines);
    let has_conic = labels.contains(&SecantType::Conic);
    let kind = match n {
        // the secant variety of a curve fills P^3 only for the twisted cubic
        1 if spec.degree() == 3 => LocusKind::Full,
        1 => LocusKind::SecantJoin,
        2 if has_line && has_conic && !has_cubic && m - k <= 1 => LocusKind::Full,
        2 if has_line && has_conic => LocusKind::LineOrConicJoin,
        2 if has_line => LocusKind::LineSectionJoin,
        2 if m - k == 1 && k == 0 => LocusKind::ConicSpanJoin,
        2 => LocusKind::ConicPlanesJoin,
        _ if k == spec.n() => LocusKind::Full,
        _ => LocusKind::LinearSpanA,
    };
    Some((kind, labels))
}

/// The case tag matching a derived locus; `None` when type and locus disagree.
fn tag(spec: &ScrollSpec, locus: LocusKind) -> DelPezzoCase {
    let case = DelPezzoCase::of_type(spec);
    let expected = match case {
        DelPezzoCase::NormalCurve if spec.degree() == 3 => LocusKind::Full,
        DelPezzoCase::NormalCurve => LocusKind::SecantJoin,
        DelPezzoCase::CubicScroll | DelPezzoCase::SegreThreefold => LocusKind::Full,
        DelPezzoCase::LineScroll => LocusKind::LineSectionJoin,
        DelPezzoCase::BalancedConicScroll => LocusKind::ConicPlanesJoin,
        DelPezzoCase::ConicScroll => LocusKind::ConicSpanJoin,
        DelPezzoCase::TwoLineScroll => LocusKind::LinearSpanA,
        DelPezzoCase::Veronese | DelPezzoCase::None => return DelPezzoCase::None,
    };
    if expected == locus {
        case
    } else {
        DelPezzoCase::None
    }
}

/// Every scroll type with `deg <= max_deg`, `n <= max_n`, `-1 <= h <= max_h`.
pub fn scroll_types(max_deg: u32, max_n: usize, max_h: i32) -> Vec<ScrollSpec> {
    fn partitions(remaining: u32, min: u32, parts_left: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for a in min..=remaining {
            acc.push(a);
            partitions(remaining - a, a, parts_left - 1, acc, out);
            acc.pop();
        }
    }
    let mut types = Vec::new();
    for deg in 3..=max_deg {
        partitions(deg, 1, max_n, &mut Vec::new(), &mut types);
    }
    types.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut out = Vec::new();
    for h in -1..=max_h {
        for a in &types {
            out.push(ScrollSpec::new(a.clone(), h).expect("valid by construction"));
        }
    }
    out
}

pub fn atlas_enumerate(max_deg: u32, max_n: usize, max_h: i32) -> Vec<AtlasEntry> {
    scroll_types(max_deg, max_n, max_h)
        .into_iter()
        .filter_map(|spec| {
            let (locus, labels) = del_pezzo_locus(&spec)?;
            let case = tag(&spec, locus);
            Some(AtlasEntry { spec, locus, labels, case })
        })
        .collect()
}

/// Membership of an external point in the locus.
pub fn locus_contains(scroll: &Scroll, locus: LocusKind, p: &[Elem], opts: &SecantOptions) -> Result<bool> {
    Ok(match locus {
        LocusKind::Full => true,
        LocusKind::SecantJoin => strata::member_secant_variety(scroll, p, opts)?,
        LocusKind::LineSectionJoin => strata::member_b(scroll, p)?,
        LocusKind::ConicPlanesJoin | LocusKind::ConicSpanJoin => strata::member_u(scroll, p)?,
        LocusKind::LinearSpanA => strata::member_a(scroll, p)?,
        LocusKind::LineOrConicJoin => strata::member_b(scroll, p)? || strata::member_u(scroll, p)?,
    })
}

/// A point of the locus off the scroll, built from its description.
pub fn sample_inside<R: Rng + ?Sized>(scroll: &Scroll, locus: LocusKind, rng: &mut R) -> Vec<Elem> {
    let sampler = StratifiedSampler::new(scroll);
    let component = match locus {
        LocusKind::Full => Component::Generic,
        LocusKind::SecantJoin if rng.gen_bool(0.5) => Component::Tangent,
        LocusKind::SecantJoin => Component::Secant,
        LocusKind::LineSectionJoin => Component::LineSection,
        LocusKind::LineOrConicJoin if rng.gen_bool(0.5) => Component::LineSection,
        LocusKind::ConicPlanesJoin | LocusKind::ConicSpanJoin | LocusKind::LineOrConicJoin => Component::ConicPlane,
        LocusKind::LinearSpanA => Component::Linear,
    };
    sampler.sample_external(component, rng)
}
