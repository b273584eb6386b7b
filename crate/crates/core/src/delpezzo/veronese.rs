//! The Veronese surface in `P^5` as the rank-one symmetric 3x3 matrices.
//!
//! Coordinates are `(m00, m01, m02, m11, m12, m22)`.

use serde::{Deserialize, Serialize};

use super::{DelPezzoCase, DepthReport};
use crate::error::{Error, Result};
use crate::exactfield::{projective_points, rank, Elem, Field, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VeroneseClass {
    OnVariety,
    /// The secant locus is a smooth plane conic.
    Conic,
    /// No secant line.
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeroneseReport {
    pub class: VeroneseClass,
    pub rank: usize,
    pub depth: Option<DepthReport>,
}

const IDX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn to_coords(m: &Mat) -> Vec<Elem> {
    IDX.iter().map(|&(i, j)| m[(i, j)]).collect()
}

fn to_matrix(v: &[Elem]) -> Mat {
    let mut m = Mat::zeros(3, 3);
    for (k, &(i, j)) in IDX.iter().enumerate() {
        m[(i, j)] = v[k];
        m[(j, i)] = v[k];
    }
    m
}

/// Classifies the point `m` of `P^5` (or of a cone over the surface with
/// vertex dimension `h`, `m` being the non-vertex part).
pub fn veronese_classify(field: &Field, m: &Mat, h: i32) -> Result<VeroneseReport> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: m.rows() });
    }
    if (0..3).any(|i| (0..3).any(|j| m[(i, j)] != m[(j, i)])) {
        return Err(Error::NotSymmetric);
    }
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let r = rank(field, m);
    let h64 = h as i64;
    let (class, depth) = match r {
        1 => (VeroneseClass::OnVariety, None),
        2 => {
            // secant cone: the conic's plane joined with the vertex
            let sec_dim = 2 + h64 + 1;
            let depth = DepthReport {
                t: sec_dim + 1,
                acm: true,
                j: 2,
                del_pezzo_case: DelPezzoCase::Veronese,
                linearly_normal: true,
            };
            (VeroneseClass::Conic, Some(depth))
        }
        _ => {
            let smooth = h < 0;
            let depth = DepthReport {
                t: if smooth { 1 } else { h64 + 2 },
                acm: false,
                j: 0,
                del_pezzo_case: DelPezzoCase::None,
                linearly_normal: !smooth,
            };
            (VeroneseClass::Empty, Some(depth))
        }
    };
    Ok(VeroneseReport { class, rank: r, depth })
}

/// All points `v v^T` of the surface over `field`.
pub fn veronese_points(field: &Field) -> Vec<Vec<Elem>> {
    projective_points(field, 3)
        .into_iter()
        .map(|v| {
            let mut m = Mat::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m[(i, j)] = field.mul(v[i], v[j]);
                }
            }
            to_coords(&m)
        })
        .collect()
}

/// Points `Q` of the surface such that the line `<m, Q>` meets the surface
/// again or is tangent at `Q`, by direct search.
pub fn brute_veronese_secant_locus(field: &Field, m: &Mat) -> Vec<Vec<Elem>> {
    let mv = to_coords(m);
    let elems: Vec<Elem> = field.elements().collect();
    veronese_points(field)
        .into_iter()
        .filter(|qv| {
            let secant = elems.iter().any(|&c| {
                let line: Vec<Elem> = mv.iter().zip(qv).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect();
                line.iter().any(|e| !e.is_zero()) && rank(field, &to_matrix(&line)) <= 1
            });
            secant || in_tangent_plane(field, &mv, qv)
        })
        .collect()
}

/// Whether `m = v w^T + w v^T` for some `w`, where `q = v v^T`.
fn in_tangent_plane(field: &Field, mv: &[Elem], qv: &[Elem]) -> bool {
    let q = to_matrix(qv);
    let Some(i) = (0..3).find(|&i| !q[(i, i)].is_zero()) else {
        return false;
    };
    let v: Vec<Elem> = (0..3).map(|j| q[(i, j)]).collect();
    // columns: the images of the unit vectors w = e_c
    let mut a = Mat::zeros(6, 4);
    for c in 0..3 {
        for (k, &(r, s)) in IDX.iter().enumerate() {
            let mut e = Elem::ZERO;
            if r == c {
                e = field.add(e, v[s]);
            }
            if s == c {
                e = field.add(e, v[r]);
            }
            a[(k, c)] = e;
        }
    }
    let base_rank = {
        let mut b = Mat::zeros(6, 3);
        for k in 0..6 {
            for c in 0..3 {
                b[(k, c)] = a[(k, c)];
            }
        }
        rank(field, &b)
    };
    for k in 0..6 {
        a[(k, 3)] = mv[k];
    }
    rank(field, &a) == base_rank
}
