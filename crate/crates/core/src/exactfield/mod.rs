//! Exact arithmetic over `F_q` and `F_{q^2}` (q odd), with the projective
//! linear algebra and quadratic-form kernels the rest of the crate builds on.

mod field;
mod matrix;
mod qform;
mod subspace;

pub use field::{is_prime, Elem, Field};
pub use matrix::{determinant, dot, rank, row_reduce, Mat, RowReduction};
pub use qform::QForm;
pub use subspace::LinearSubspace;

pub(crate) use subspace::check_len;

/// A point of `P^1` as a homogeneous pair `(s : t)`.
pub type P1Point = [Elem; 2];

/// All points of `P^1` over `field`: `(1 : c)` for every `c`, then `(0 : 1)`.
pub fn p1_points(field: &Field) -> impl Iterator<Item = P1Point> + '_ {
    field.elements().map(move |c| [field.one(), c]).chain(std::iter::once([Elem::ZERO, field.one()]))
}

/// Normalises `(s : t)` so that the first nonzero coordinate is one.
pub fn normalize_p1(field: &Field, x: P1Point) -> P1Point {
    let mut v = x;
    field.normalize(&mut v);
    v
}

/// All points of `P^{n-1}` (normalised coordinate vectors of length `n`).
pub fn projective_points(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    if n == 0 {
        return Vec::new();
    }
    LinearSubspace::full(field, n - 1).points(field).collect()
}
