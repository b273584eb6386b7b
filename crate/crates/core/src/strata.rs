//! Membership in the distinguished subsets `A`, `B`, `U`, the tangent join
//! and the secant join, and the stratum label they determine.
//!
//! Every predicate works on the base scroll after deleting the vertex
//! coordinates of `p`; a point off the cone lies in a join with the vertex
//! exactly when its image does.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactfield::{rank, Elem, Mat};
use crate::scroll::Scroll;
use crate::secant::{self, reduce_point, SecantOptions, SecantType};

/// `p` lies in `<Vert, <S(1,...,1)>>`.
pub fn member_a(scroll: &Scroll, p: &[Elem]) -> Result<bool> {
    let pbar = reduce_point(scroll, p)?;
    let base = scroll.spec().base();
    Ok(base.blocks_where(|a| a >= 2).into_iter().all(|i| pbar[base.block_range(i)].iter().all(|e| e.is_zero())))
}

/// `p` lies in the union of the spans `<Vert, L_alpha, L(x)>`.
///
/// With no degree-one block this union is the scroll itself. Otherwise the
/// degree-one part is unconstrained and every other block must be a
/// multiple of `v_i(x)` for one common `x`: the shifted-row matrix of those
/// blocks has rank at most one.
pub fn member_b(scroll: &Scroll, p: &[Elem]) -> Result<bool> {
    let pbar = reduce_point(scroll, p)?;
    let base = scroll.spec().base();
    if base.k() == 0 {
        return Ok(false);
    }
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for i in base.blocks_where(|a| a >= 2) {
        let r = base.block_range(i);
        top.extend_from_slice(&pbar[r.start..r.end - 1]);
        bottom.extend_from_slice(&pbar[r.start + 1..r.end]);
    }
    if top.is_empty() {
        return Ok(true);
    }
    let m = Mat::from_rows(top.len(), &[top, bottom]);
    Ok(rank(scroll.field(), &m) <= 1)
}

/// `p` lies in the join of `A` with the Segre variety swept by the conic
/// planes: blocks of degree at least three vanish and the `3 x (m - k)`
/// matrix of degree-two blocks has rank at most one.
pub fn member_u(scroll: &Scroll, p: &[Elem]) -> Result<bool> {
    let pbar = reduce_point(scroll, p)?;
    let base = scroll.spec().base();
    if base.blocks_where(|a| a >= 3).into_iter().any(|i| pbar[base.block_range(i)].iter().any(|e| !e.is_zero())) {
        return Ok(false);
    }
    let cols: Vec<Vec<Elem>> = base.blocks_where(|a| a == 2).into_iter().map(|i| pbar[base.block_range(i)].to_vec()).collect();
    Ok(rank(scroll.field(), &Mat::from_rows(3, &cols)) <= 1)
}

/// `p` lies on the join of the vertex with the tangent variety of the base.
pub fn member_tangent(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<bool> {
    secant::has_tangent_fiber(scroll, p, opts)
}

/// `p` lies on the join of the vertex with the secant variety of the base.
pub fn member_secant_variety(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<bool> {
    secant::has_secant_fiber(scroll, p, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Memberships {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "U")]
    pub u: bool,
    #[serde(rename = "Tan")]
    pub tan: bool,
    #[serde(rename = "Sec")]
    pub sec: bool,
}

impl Memberships {
    /// The stratum selected by the decision tree `A, B, U, Tan, Sec`.
    pub fn label(&self) -> SecantType {
        if self.a {
            SecantType::QuadricSurface
        } else if self.b {
            SecantType::TwoLines
        } else if self.u {
            SecantType::Conic
        } else if self.tan {
            SecantType::DoublePoint
        } else if self.sec {
            SecantType::TwoPoints
        } else {
            SecantType::Empty2Z
        }
    }

    /// `A ⊆ B`, `A ⊆ U`, `B ∪ U ⊆ Tan ⊆ Sec`.
    pub fn chain_holds(&self) -> bool {
        (!self.a || (self.b && self.u)) && (!(self.b || self.u) || self.tan) && (!self.tan || self.sec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub memberships: Memberships,
    pub label_geom: SecantType,
    pub label_signature: SecantType,
    pub agrees_with_signature: bool,
}

pub fn memberships(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<Memberships> {
    Ok(Memberships {
        a: member_a(scroll, p)?,
        b: member_b(scroll, p)?,
        u: member_u(scroll, p)?,
        tan: member_tangent(scroll, p, opts)?,
        sec: member_secant_variety(scroll, p, opts)?,
    })
}

pub fn stratum_geometric(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<MembershipReport> {
    let memberships = memberships(scroll, p, opts)?;
    let label_geom = memberships.label();
    let label_signature = secant::classify(scroll, p, opts)?.label;
    Ok(MembershipReport {
        memberships,
        label_geom,
        label_signature,
        agrees_with_signature: label_geom == label_signature,
    })
}
