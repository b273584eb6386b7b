//! Linear projection from an external point and its non-normal locus.

use crate::error::{Error, Result};
use crate::exactfield::{Elem, Field, LinearSubspace, Mat};
use crate::scroll::Scroll;
use crate::secant::{secant_cone, SecantOptions, SecantSignature};

/// `x -> x - (x_i / p_i) p` followed by deleting coordinate `i`, where `i`
/// is the first nonzero coordinate of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    center: Vec<Elem>,
    pivot: usize,
}

impl Projection {
    pub fn new(field: &Field, p: &[Elem]) -> Result<Self> {
        let pivot = p.iter().position(|e| !e.is_zero()).ok_or(Error::ZeroVector)?;
        let mut center = p.to_vec();
        field.normalize(&mut center);
        Ok(Projection { center, pivot })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Image of `x`; the zero vector exactly when `x` is a multiple of the center.
    pub fn apply(&self, field: &Field, x: &[Elem]) -> Vec<Elem> {
        let c = x[self.pivot];
        x.iter()
            .zip(&self.center)
            .enumerate()
            .filter(|&(i, _)| i != self.pivot)
            .map(|(_, (&xi, &pi))| field.sub(xi, field.mul(c, pi)))
            .collect()
    }

    pub fn apply_subspace(&self, field: &Field, s: &LinearSubspace) -> LinearSubspace {
        let n = s.ambient_dim() - 1;
        let mut rows = Mat::zeros(0, n + 1);
        for r in s.basis().row_iter() {
            rows.push_row(&self.apply(field, r));
        }
        LinearSubspace::from_rows(field, n, &rows)
    }
}

#[derive(Clone, Debug)]
pub struct ProjectionReport {
    pub projection: Projection,
    /// Span of the image of the secant locus sample.
    pub nonnormal_locus: LinearSubspace,
    /// Degree of the image, equal to the degree of the scroll.
    pub degree: i64,
    pub codim: i64,
}

/// Projects from `p` and locates the non-normal locus of the image.
pub fn project(scroll: &Scroll, p: &[Elem], sig: &SecantSignature, opts: &SecantOptions) -> Result<ProjectionReport> {
    let cone = secant_cone(scroll, p, opts)?;
    let field = cone.field;
    let projection = Projection::new(&field, p)?;
    let n = scroll.spec().ambient_dim() - 1;
    let mut rows = Mat::zeros(0, n + 1);
    for q in &cone.sample.points {
        rows.push_row(&projection.apply(&field, q));
    }
    // the vertex lies in the secant locus of a cone
    for j in 0..scroll.spec().vertex_len() {
        rows.push_row(&projection.apply(&field, &scroll.unit(j)));
    }
    let nonnormal_locus = LinearSubspace::from_rows(&field, n, &rows);
    let expected = sig.sec_dim - 1;
    if nonnormal_locus.dim() != expected {
        return Err(Error::UnclassifiableSignature {
            s: sig.s,
            rank: sig.rank,
            reason: format!("non-normal locus has dimension {} instead of {expected}", nonnormal_locus.dim()),
        });
    }
    let degree = scroll.spec().degree() as i64;
    let codim = n as i64 - scroll.spec().dim();
    debug_assert_eq!(degree, codim + 2);
    Ok(ProjectionReport { projection, nonnormal_locus, degree, codim })
}
