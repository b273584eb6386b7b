use super::field::{Elem, Field};
use super::matrix::{rank, Mat};
use super::subspace::LinearSubspace;
use crate::error::{Error, Result};

/// Quadratic form `Q(x) = x^T G x` with `G` symmetric; off-diagonal entries
/// of `G` carry half of the mixed coefficient, so the characteristic is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm {
    gram: Mat,
    /// `(i, j, c)` with `i <= j`: the monomial `c * x_i * x_j`.
    terms: Vec<(usize, usize, Elem)>,
}

impl QForm {
    pub fn from_gram(field: &Field, gram: Mat) -> Result<Self> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: gram.cols() });
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric);
                }
                let g = gram[(i, j)];
                if !g.is_zero() {
                    let c = if i == j { g } else { field.add(g, g) };
                    terms.push((i, j, c));
                }
            }
        }
        Ok(QForm { gram, terms })
    }

    /// Builds the form `sum c * x_i * x_j` from monomial coefficients.
    pub fn from_monomials(field: &Field, n_vars: usize, monomials: &[(usize, usize, Elem)]) -> Self {
        let half = field.inv(field.from_u64(2));
        let mut gram = Mat::zeros(n_vars, n_vars);
        for &(i, j, c) in monomials {
            if i == j {
                gram[(i, i)] = field.add(gram[(i, i)], c);
            } else {
                let h = field.mul(c, half);
                gram[(i, j)] = field.add(gram[(i, j)], h);
                gram[(j, i)] = field.add(gram[(j, i)], h);
            }
        }
        QForm::from_gram(field, gram).expect("constructed symmetric")
    }

    pub fn n_vars(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn monomials(&self) -> &[(usize, usize, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, field: &Field, x: &[Elem]) -> Elem {
        debug_assert_eq!(x.len(), self.n_vars());
        self.terms
            .iter()
            .fold(Elem::ZERO, |acc, &(i, j, c)| field.add(acc, field.mul(c, field.mul(x[i], x[j]))))
    }

    /// The mixed coefficient `B` of `Q(l p + m v) = l^2 Q(p) + l m B + m^2 Q(v)`,
    /// i.e. `2 p^T G v`.
    pub fn polarize(&self, field: &Field, p: &[Elem], v: &[Elem]) -> Result<Elem> {
        for x in [p, v] {
            if x.len() != self.n_vars() {
                return Err(Error::DimensionMismatch { expected: self.n_vars(), got: x.len() });
            }
        }
        Ok(self.polarize_unchecked(field, p, v))
    }

    pub(crate) fn polarize_unchecked(&self, field: &Field, p: &[Elem], v: &[Elem]) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, &(i, j, c)| {
            let mixed = if i == j {
                let pv = field.mul(p[i], v[i]);
                field.add(pv, pv)
            } else {
                field.add(field.mul(p[i], v[j]), field.mul(p[j], v[i]))
            };
            field.add(acc, field.mul(c, mixed))
        })
    }

    /// Pull back along `w -> w * rows`: `Q'(w) = Q(w * rows)`.
    pub fn pullback(&self, field: &Field, rows: &Mat) -> QForm {
        assert_eq!(rows.cols(), self.n_vars());
        let g = rows.mul(field, &self.gram).mul(field, &rows.transpose());
        QForm::from_gram(field, g).expect("congruent form is symmetric")
    }

    /// Restriction to the subspace `S`, written in the coordinates of its echelon basis.
    pub fn restrict(&self, field: &Field, s: &LinearSubspace) -> Result<QForm> {
        if s.ambient_dim() + 1 != self.n_vars() {
            return Err(Error::DimensionMismatch { expected: self.n_vars(), got: s.ambient_dim() + 1 });
        }
        Ok(self.pullback(field, s.basis()))
    }

    pub fn rank(&self, field: &Field) -> usize {
        rank(field, &self.gram)
    }

    /// Whether `self` and `other` are scalar multiples of each other (zero
    /// forms are only proportional to zero forms).
    pub fn proportional(&self, field: &Field, other: &QForm) -> bool {
        if self.n_vars() != other.n_vars() {
            return false;
        }
        let n = self.n_vars();
        let mut ratio: Option<(Elem, Elem)> = None;
        for i in 0..n {
            for j in i..n {
                let (a, b) = (self.gram[(i, j)], other.gram[(i, j)]);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                match ratio {
                    None => ratio = Some((a, b)),
                    Some((ra, rb)) => {
                        if !field.det2(a, rb, b, ra).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        match ratio {
            None => true,
            Some((a, b)) => !a.is_zero() && !b.is_zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn form(f: &Field, n: usize, mons: &[(usize, usize, i64)]) -> QForm {
        let m: Vec<_> = mons.iter().map(|&(i, j, c)| (i, j, f.from_i64(c))).collect();
        QForm::from_monomials(f, n, &m)
    }

    #[test]
    fn polarize_examples() {
        let f = f7();
        let q = form(&f, 2, &[(0, 1, 1)]);
        let (e0, e1) = (f.vector(&[1, 0]), f.vector(&[0, 1]));
        assert_eq!(q.polarize(&f, &e0, &e1).unwrap(), f.one());

        let conic = form(&f, 3, &[(0, 2, 1), (1, 1, -1)]);
        let p = f.vector(&[1, 0, 0]);
        let v = f.vector(&[0, 0, 1]);
        assert_eq!(conic.polarize(&f, &p, &v).unwrap(), f.one());

        let x = f.vector(&[2, 5, 3]);
        let two_q = f.add(conic.eval(&f, &x), conic.eval(&f, &x));
        assert_eq!(conic.polarize(&f, &x, &x).unwrap(), two_q);
    }

    #[test]
    fn restrict_examples() {
        let f = f7();
        let q = form(&f, 2, &[(0, 0, 1), (1, 1, 1)]);
        let s = LinearSubspace::coordinate(&f, 1, [0]);
        assert_eq!(q.restrict(&f, &s).unwrap(), form(&f, 1, &[(0, 0, 1)]));

        let conic = form(&f, 3, &[(0, 2, 1), (1, 1, -1)]);
        let s = LinearSubspace::coordinate(&f, 2, [0, 2]);
        assert_eq!(conic.restrict(&f, &s).unwrap(), form(&f, 2, &[(0, 1, 1)]));

        let full = LinearSubspace::full(&f, 2);
        assert_eq!(conic.restrict(&f, &full).unwrap(), conic);
    }

    #[test]
    fn rank_examples() {
        let f = f7();
        assert_eq!(form(&f, 4, &[(0, 0, 1)]).rank(&f), 1);
        assert_eq!(form(&f, 4, &[(0, 1, 1)]).rank(&f), 2);
        assert_eq!(form(&f, 4, &[(0, 3, 1), (1, 2, -1)]).rank(&f), 4);
    }

    fn arb_form() -> impl Strategy<Value = Vec<u64>> {
        proptest::collection::vec(0u64..11, 10)
    }

    fn build(f: &Field, coeffs: &[u64]) -> QForm {
        let mut mons = Vec::new();
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                mons.push((i, j, f.from_u64(coeffs[k])));
                k += 1;
            }
        }
        QForm::from_monomials(f, 4, &mons)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn polarization_identity(c in arb_form(), p in proptest::collection::vec(0u64..11, 4), v in proptest::collection::vec(0u64..11, 4)) {
            let f = Field::prime(11).unwrap();
            let q = build(&f, &c);
            let p: Vec<Elem> = p.iter().map(|&x| f.from_u64(x)).collect();
            let v: Vec<Elem> = v.iter().map(|&x| f.from_u64(x)).collect();
            let sum: Vec<Elem> = p.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect();
            let expected = f.sub(f.sub(q.eval(&f, &sum), q.eval(&f, &p)), q.eval(&f, &v));
            prop_assert_eq!(q.polarize(&f, &p, &v).unwrap(), expected);
        }

        #[test]
        fn rank_is_congruence_invariant(c in arb_form(), t in proptest::collection::vec(0u64..11, 16)) {
            let f = Field::new(11, 2).unwrap();
            let q = build(&f, &c);
            let rows: Vec<Vec<Elem>> = t.chunks(4).enumerate()
                .map(|(i, ch)| ch.iter().enumerate().map(|(j, &x)| if (i + j) % 3 == 0 { f.from_parts(x, 1) } else { f.from_u64(x) }).collect())
                .collect();
            let m = Mat::from_rows(4, &rows);
            prop_assume!(rank(&f, &m) == 4);
            prop_assert_eq!(q.pullback(&f, &m).rank(&f), q.rank(&f));
        }
    }
}
