use super::field::{Elem, Field};
use super::matrix::{row_reduce, Mat};
use crate::error::{Error, Result};

/// A projective linear subspace of `P^N`, stored as the reduced row echelon
/// basis of its cone in `K^{N+1}`. Two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: Mat,
}

impl LinearSubspace {
    pub fn empty(ambient_dim: usize) -> Self {
        LinearSubspace { ambient_dim, basis: Mat::zeros(0, ambient_dim + 1) }
    }

    pub fn full(field: &Field, ambient_dim: usize) -> Self {
        LinearSubspace { ambient_dim, basis: Mat::identity(field, ambient_dim + 1) }
    }

    /// Span of the rows of `m` (which must have `ambient_dim + 1` columns).
    pub fn from_rows(field: &Field, ambient_dim: usize, m: &Mat) -> Self {
        assert_eq!(m.cols(), ambient_dim + 1);
        LinearSubspace { ambient_dim, basis: row_reduce(field, m).echelon }
    }

    /// The coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(field: &Field, ambient_dim: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Mat::zeros(0, ambient_dim + 1);
        for c in coords {
            let mut e = vec![Elem::ZERO; ambient_dim + 1];
            e[c] = field.one();
            m.push_row(&e);
        }
        LinearSubspace::from_rows(field, ambient_dim, &m)
    }

    /// Smallest linear subspace containing every point.
    pub fn span_points<P: AsRef<[Elem]>>(field: &Field, pts: &[P], ambient_dim: usize) -> Result<Self> {
        for p in pts {
            check_len(p.as_ref(), ambient_dim)?;
        }
        Ok(LinearSubspace::from_rows(field, ambient_dim, &Mat::from_rows(ambient_dim + 1, pts)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> i64 {
        self.basis.rows() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn contains(&self, field: &Field, p: &[Elem]) -> Result<bool> {
        check_len(p, self.ambient_dim)?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.reduce(field, p).iter().all(|e| e.is_zero()))
    }

    /// Remainder of `p` after elimination against the echelon basis.
    fn reduce(&self, field: &Field, p: &[Elem]) -> Vec<Elem> {
        let mut v = p.to_vec();
        for row in self.basis.row_iter() {
            let piv = row.iter().position(|e| !e.is_zero()).expect("echelon rows are nonzero");
            let c = v[piv];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, r));
            }
        }
        v
    }

    pub fn contains_subspace(&self, field: &Field, other: &LinearSubspace) -> bool {
        other.basis.row_iter().all(|r| self.contains(field, r).unwrap_or(false))
    }

    /// Linear span of the union.
    pub fn join(&self, field: &Field, other: &LinearSubspace) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut m = self.basis.clone();
        for r in other.basis.row_iter() {
            m.push_row(r);
        }
        LinearSubspace::from_rows(field, self.ambient_dim, &m)
    }

    pub fn join_point(&self, field: &Field, p: &[Elem]) -> Result<Self> {
        check_len(p, self.ambient_dim)?;
        let mut m = self.basis.clone();
        m.push_row(p);
        Ok(LinearSubspace::from_rows(field, self.ambient_dim, &m))
    }

    pub fn intersect(&self, field: &Field, other: &LinearSubspace) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // Solve sum a_i u_i = sum b_j v_j through the kernel of the stacked
        // transpose, then map the a-part back.
        let r1 = self.basis.rows();
        let r2 = other.basis.rows();
        if r1 == 0 || r2 == 0 {
            return LinearSubspace::empty(self.ambient_dim);
        }
        let n = self.ambient_dim + 1;
        let mut m = Mat::zeros(n, r1 + r2);
        for j in 0..n {
            for i in 0..r1 {
                m[(j, i)] = self.basis[(i, j)];
            }
            for i in 0..r2 {
                m[(j, r1 + i)] = field.neg(other.basis[(i, j)]);
            }
        }
        let kernel = row_reduce(field, &m).kernel;
        let mut pts = Mat::zeros(0, n);
        for k in kernel.row_iter() {
            pts.push_row(&self.basis.vec_mul(field, &k[..r1]));
        }
        LinearSubspace::from_rows(field, self.ambient_dim, &pts)
    }

    /// Every point of the subspace over `field`, normalised.
    /// The count is `(|F|^(dim+1) - 1) / (|F| - 1)`.
    pub fn points<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let r = self.basis.rows();
        let order = field.order();
        let elems: Vec<Elem> = field.elements().collect();
        // Enumerate coefficient vectors whose first nonzero entry is 1.
        (0..r).flat_map(move |lead| {
            let tail = r - lead - 1;
            let total = order.pow(tail as u32);
            let elems = elems.clone();
            (0..total).map(move |mut idx| {
                let mut coeffs = vec![Elem::ZERO; r];
                coeffs[lead] = field.one();
                for c in coeffs.iter_mut().skip(lead + 1) {
                    *c = elems[(idx % order) as usize];
                    idx /= order;
                }
                let mut v = self.basis.vec_mul(field, &coeffs);
                field.normalize(&mut v);
                v
            })
        })
    }
}

pub(crate) fn check_len(p: &[Elem], ambient_dim: usize) -> Result<()> {
    if p.len() != ambient_dim + 1 {
        return Err(Error::DimensionMismatch { expected: ambient_dim + 1, got: p.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn span_examples() {
        let f = f7();
        let e0 = f.vector(&[1, 0, 0]);
        let e1 = f.vector(&[0, 1, 0]);
        let s = LinearSubspace::span_points(&f, std::slice::from_ref(&e0), 2).unwrap();
        assert_eq!(s.dim(), 0);
        let sum = f.vector(&[1, 1, 0]);
        let line = LinearSubspace::span_points(&f, &[e0.clone(), e1.clone(), sum], 2).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(LinearSubspace::span_points::<Vec<Elem>>(&f, &[], 2).unwrap().is_empty());
        assert!(matches!(
            LinearSubspace::span_points(&f, &[f.vector(&[1, 0])], 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn conic_points_span_the_plane() {
        // x0 x2 = x1^2 parametrised by (s^2, st, t^2)
        let f = f7();
        let pts: Vec<Vec<Elem>> = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(s, t)| f.vector(&[s * s, s * t, t * t]))
            .collect();
        let s = LinearSubspace::span_points(&f, &pts, 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, LinearSubspace::full(&f, 2));
    }

    #[test]
    fn containment() {
        let f = f7();
        let line = LinearSubspace::coordinate(&f, 2, [0, 1]);
        assert!(line.contains(&f, &f.vector(&[1, 3, 0])).unwrap());
        let pt = LinearSubspace::coordinate(&f, 2, [0]);
        assert!(!pt.contains(&f, &f.vector(&[0, 1, 0])).unwrap());
        assert!(!LinearSubspace::empty(2).contains(&f, &f.vector(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn intersection_of_planes_in_p3() {
        let f = f7();
        let a = LinearSubspace::coordinate(&f, 3, [0, 1, 2]);
        let b = LinearSubspace::coordinate(&f, 3, [1, 2, 3]);
        assert_eq!(a.intersect(&f, &b), LinearSubspace::coordinate(&f, 3, [1, 2]));
    }

    #[test]
    fn point_enumeration_counts() {
        let f = Field::new(3, 2).unwrap();
        let plane = LinearSubspace::coordinate(&f, 3, [0, 1, 3]);
        let pts: Vec<_> = plane.points(&f).collect();
        assert_eq!(pts.len(), 81 + 9 + 1);
        let mut dedup = pts.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), pts.len());
        assert!(pts.iter().all(|p| plane.contains(&f, p).unwrap()));
    }

    proptest! {
        #[test]
        fn span_is_idempotent_and_order_independent(vals in proptest::collection::vec(0u64..7, 4 * 5)) {
            let f = f7();
            let pts: Vec<Vec<Elem>> = vals.chunks(5).map(|c| c.iter().map(|&v| f.from_u64(v)).collect()).collect();
            let s = LinearSubspace::span_points(&f, &pts, 4).unwrap();
            let mut rev = pts.clone();
            rev.reverse();
            prop_assert_eq!(&s, &LinearSubspace::span_points(&f, &rev, 4).unwrap());
            let again = LinearSubspace::span_points(&f, &s.basis().row_iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 4).unwrap();
            prop_assert_eq!(&s, &again);
            for p in &pts {
                prop_assert!(p.iter().all(|e| e.is_zero()) || s.contains(&f, p).unwrap());
            }
        }
    }
}
