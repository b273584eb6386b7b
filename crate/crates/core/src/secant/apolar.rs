//! Candidate fibers for secant and tangent lines through a point.
//!
//! If a line through `p` meets the scroll in `L(x_1)` and `L(x_2)` (or is
//! tangent along `L(x)`), the binary quadric with roots `x_1, x_2` (or the
//! square of the linear form vanishing at `x`) annihilates every window of
//! three consecutive coordinates in each block of degree at least two. The
//! kernel of the stacked window matrix therefore bounds the set of fibers
//! that need to be inspected.

use crate::exactfield::{normalize_p1, row_reduce, Elem, Field, Mat, P1Point};
use crate::scroll::ScrollSpec;

/// Which fibers of the scroll are inspected when assembling secant data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FiberStrategy {
    /// Only the fibers singled out by the window-matrix kernel.
    #[default]
    Apolar,
    /// Every fiber over `F_{q^d}`; subject to the work budget.
    Exhaustive,
}

/// Fibers that may meet the secant (or tangent) locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Candidates {
    Fibers(Vec<P1Point>),
    /// Every fiber qualifies.
    Every,
}

/// Kernel rows `(f0, f1, f2)` of the window matrix of `p`; each is the form
/// `f0 s^2 + f1 s t + f2 t^2`.
pub(crate) fn window_kernel(spec: &ScrollSpec, field: &Field, p: &[Elem]) -> Mat {
    let mut h = Mat::zeros(0, 3);
    for i in spec.blocks_where(|a| a >= 2) {
        let r = spec.block_range(i);
        for j in r.start..r.end - 2 {
            h.push_row(&p[j..j + 3]);
        }
    }
    row_reduce(field, &h).kernel
}

fn discriminant(field: &Field, f: &[Elem]) -> Elem {
    let four = field.from_u64(4);
    field.sub(field.square(f[1]), field.mul(four, field.mul(f[0], f[2])))
}

/// Roots in `field` of a nonzero binary quadric with prime-field coefficients.
pub(crate) fn binary_roots(field: &Field, f: &[Elem]) -> Vec<P1Point> {
    let (one, zero) = (field.one(), Elem::ZERO);
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push([one, zero]);
        if !f[1].is_zero() {
            out.push(normalize_p1(field, [f[2], field.neg(f[1])]));
        }
    } else if let Some(r) = field.sqrt_base(discriminant(field, f)) {
        let two_f0 = field.add(f[0], f[0]);
        for root in [field.sub(r, f[1]), field.sub(field.neg(r), f[1])] {
            out.push([field.div(root, two_f0), one]);
        }
    }
    out.dedup();
    out
}

/// True when the unique candidate form is irreducible over the prime field.
pub(crate) fn roots_need_extension(field: &Field, kernel: &Mat) -> bool {
    kernel.rows() == 1 && {
        let f = kernel.row(0);
        !f[0].is_zero() && field.base().sqrt_base(discriminant(field, f)).is_none()
    }
}

/// The root of a binary quadric with vanishing discriminant.
fn double_root(field: &Field, g: &[Elem]) -> P1Point {
    if g[0].is_zero() {
        [field.one(), Elem::ZERO]
    } else {
        normalize_p1(field, [field.neg(g[1]), field.add(g[0], g[0])])
    }
}

pub(crate) fn secant_candidates(field: &Field, kernel: &Mat) -> Candidates {
    match kernel.rows() {
        0 => Candidates::Fibers(Vec::new()),
        1 => Candidates::Fibers(binary_roots(field, kernel.row(0))),
        _ => Candidates::Every,
    }
}

pub(crate) fn tangent_candidates(field: &Field, kernel: &Mat) -> Candidates {
    match kernel.rows() {
        0 => Candidates::Fibers(Vec::new()),
        1 => {
            let f = kernel.row(0);
            if discriminant(field, f).is_zero() {
                Candidates::Fibers(vec![double_root(field, f)])
            } else {
                Candidates::Fibers(Vec::new())
            }
        }
        2 => {
            let (a, b) = (kernel.row(0), kernel.row(1));
            let four = field.from_u64(4);
            let alpha = discriminant(field, a);
            let gamma = discriminant(field, b);
            let cross = field.add(field.mul(a[0], b[2]), field.mul(b[0], a[2]));
            let beta = field.sub(field.add(field.mul(a[1], b[1]), field.mul(a[1], b[1])), field.mul(four, cross));
            let fibers = binary_roots(field, &[alpha, beta, gamma])
                .into_iter()
                .map(|[l, m]| {
                    let g: Vec<Elem> = (0..3).map(|i| field.add(field.mul(l, a[i]), field.mul(m, b[i]))).collect();
                    double_root(field, &g)
                })
                .collect();
            Candidates::Fibers(fibers)
        }
        _ => Candidates::Every,
    }
}

/// A few rational fibers, used when every fiber qualifies.
pub(crate) fn sample_fibers(field: &Field) -> Vec<P1Point> {
    let (one, zero) = (field.one(), Elem::ZERO);
    let mut out = vec![[zero, one], [one, zero]];
    let extra = field.q().min(5);
    out.extend((1..extra).map(|c| [one, field.from_u64(c)]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_split_and_irreducible_forms() {
        let f = Field::prime(7).unwrap();
        // s^2 - t^2
        let roots = binary_roots(&f, &f.vector(&[1, 0, -1]));
        assert_eq!(roots.len(), 2);
        for [s, t] in roots {
            assert_eq!(f.square(s), f.square(t));
        }
        // s^2 - 3 t^2 has no root over F_7 but two over F_49
        assert!(binary_roots(&f, &f.vector(&[1, 0, -3])).is_empty());
        let f49 = f.with_degree(2).unwrap();
        assert_eq!(binary_roots(&f49, &f49.vector(&[1, 0, -3])).len(), 2);
        // s t
        let r = binary_roots(&f, &f.vector(&[0, 1, 0]));
        assert_eq!(r, vec![[f.one(), f.zero()], [f.zero(), f.one()]]);
        // t^2
        assert_eq!(binary_roots(&f, &f.vector(&[0, 0, 1])), vec![[f.one(), f.zero()]]);
    }

    #[test]
    fn twisted_cubic_candidates() {
        let f = Field::prime(7).unwrap();
        let spec = ScrollSpec::new(vec![3], -1).unwrap();
        // p = (1:0:0:1) sits on the chord through x = (1:0) and x = (0:1)
        let k = window_kernel(&spec, &f, &f.vector(&[1, 0, 0, 1]));
        assert_eq!(k.rows(), 1);
        assert_eq!(
            secant_candidates(&f, &k),
            Candidates::Fibers(vec![[f.one(), f.zero()], [f.zero(), f.one()]])
        );
        assert_eq!(tangent_candidates(&f, &k), Candidates::Fibers(vec![]));
        // p = (0:1:0:0) lies on the tangent line at (1:0:0:0)
        let k = window_kernel(&spec, &f, &f.vector(&[0, 1, 0, 0]));
        assert_eq!(tangent_candidates(&f, &k), Candidates::Fibers(vec![[f.one(), f.zero()]]));
    }
}
