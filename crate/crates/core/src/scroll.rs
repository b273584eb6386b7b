//! Rational normal scrolls `S(a_1, ..., a_n)` and their cones.
//!
//! Coordinates are laid out as the vertex block (`h + 1` coordinates) followed
//! by one block of `a_i + 1` coordinates per parameter, in sorted order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{Elem, Field, LinearSubspace, Mat, P1Point, QForm};

/// The combinatorial type of a scroll: sorted degrees `a` and vertex dimension `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollSpec {
    a: Vec<u32>,
    h: i32,
}

impl ScrollSpec {
    pub fn new(a: Vec<u32>, h: i32) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyType);
        }
        if a.contains(&0) {
            return Err(Error::InvalidType("every degree must be at least 1".into()));
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidType(format!("degrees {a:?} are not sorted")));
        }
        if h < -1 {
            return Err(Error::InvalidType(format!("vertex dimension {h} < -1")));
        }
        let deg: u32 = a.iter().sum();
        if deg < 3 {
            return Err(Error::CodimTooSmall(deg));
        }
        Ok(ScrollSpec { a, h })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn h(&self) -> i32 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().sum()
    }

    /// Projective dimension `N` of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        (self.degree() as i64 + self.n() as i64 + self.h as i64) as usize
    }

    /// Number of homogeneous coordinates, `N + 1`.
    pub fn num_coords(&self) -> usize {
        self.ambient_dim() + 1
    }

    pub fn dim(&self) -> i64 {
        self.n() as i64 + self.h as i64 + 1
    }

    pub fn codim(&self) -> i64 {
        self.degree() as i64 - 1
    }

    /// Number of degree-one blocks.
    pub fn k(&self) -> usize {
        self.a.iter().filter(|&&ai| ai == 1).count()
    }

    /// Number of blocks of degree at most two.
    pub fn m(&self) -> usize {
        self.a.iter().filter(|&&ai| ai <= 2).count()
    }

    pub fn is_cone(&self) -> bool {
        self.h >= 0
    }

    pub fn vertex_len(&self) -> usize {
        (self.h + 1) as usize
    }

    /// First coordinate of block `i`.
    pub fn block_offset(&self, i: usize) -> usize {
        self.vertex_len() + self.a[..i].iter().map(|&ai| ai as usize + 1).sum::<usize>()
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let o = self.block_offset(i);
        o..o + self.a[i] as usize + 1
    }

    /// Indices of the blocks with the given degree predicate.
    pub fn blocks_where(&self, pred: impl Fn(u32) -> bool) -> Vec<usize> {
        (0..self.n()).filter(|&i| pred(self.a[i])).collect()
    }

    /// The same type without vertex.
    pub fn base(&self) -> ScrollSpec {
        ScrollSpec { a: self.a.clone(), h: -1 }
    }

    pub fn with_vertex(&self, h: i32) -> Result<ScrollSpec> {
        ScrollSpec::new(self.a.clone(), h)
    }
}

impl fmt::Display for ScrollSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "S({})", parts.join(","))?;
        if self.h >= 0 {
            write!(f, "+cone({})", self.h)?;
        }
        Ok(())
    }
}

impl FromStr for ScrollSpec {
    type Err = Error;

    /// Parses `S(1,2)` or `S(1,2)+cone(0)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid scroll literal {s:?}"));
        let (head, cone) = match s.split_once('+') {
            Some((head, tail)) => {
                let inner = tail.strip_prefix("cone(").and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
                (head, Some(inner.parse::<i32>().map_err(|_| bad())?))
            }
            None => (s.as_str(), None),
        };
        let inner = head.strip_prefix("S(").and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let a = if inner.is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|t| t.parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        ScrollSpec::new(a, cone.unwrap_or(-1))
    }
}

/// Parameters of a point of a scroll: `x` on `P^1`, fiber coordinates `u`,
/// vertex coordinates `z`. Pure vertex points have `u = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollPoint {
    pub x: P1Point,
    pub u: Vec<Elem>,
    pub z: Vec<Elem>,
}

impl ScrollPoint {
    pub fn new(x: P1Point, u: Vec<Elem>, z: Vec<Elem>) -> Self {
        ScrollPoint { x, u, z }
    }

    pub fn is_vertex(&self) -> bool {
        self.u.iter().all(|e| e.is_zero()) || self.x.iter().all(|e| e.is_zero())
    }
}

/// `(s^a, s^(a-1) t, ..., t^a)`.
pub fn veronese_block(field: &Field, x: P1Point, a: u32) -> Vec<Elem> {
    let [s, t] = x;
    (0..=a).map(|j| field.mul(field.pow(s, (a - j) as u64), field.pow(t, j as u64))).collect()
}

/// Derivatives of [`veronese_block`] with respect to `s` and `t`.
fn veronese_block_derivs(field: &Field, x: P1Point, a: u32) -> (Vec<Elem>, Vec<Elem>) {
    let [s, t] = x;
    let mut ds = Vec::with_capacity(a as usize + 1);
    let mut dt = Vec::with_capacity(a as usize + 1);
    for j in 0..=a {
        let (es, et) = ((a - j) as u64, j as u64);
        ds.push(if es == 0 {
            Elem::ZERO
        } else {
            field.mul(field.from_u64(es), field.mul(field.pow(s, es - 1), field.pow(t, et)))
        });
        dt.push(if et == 0 {
            Elem::ZERO
        } else {
            field.mul(field.from_u64(et), field.mul(field.pow(s, es), field.pow(t, et - 1)))
        });
    }
    (ds, dt)
}

/// A scroll over a fixed field with its quadric generators.
///
/// The generators have coefficients in `{0, 1, -1}`, so a scroll built over
/// `F_q` may be moved to `F_{q^2}` with [`Scroll::with_field`].
#[derive(Clone, Debug)]
pub struct Scroll {
    spec: ScrollSpec,
    field: Field,
    generators: Vec<QForm>,
}

impl Scroll {
    pub fn new(spec: ScrollSpec, field: Field) -> Self {
        let generators = quadric_generators(&spec, &field);
        Scroll { spec, field, generators }
    }

    pub fn spec(&self) -> &ScrollSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[QForm] {
        &self.generators
    }

    pub fn with_field(&self, field: Field) -> Scroll {
        assert_eq!(field.q(), self.field.q());
        Scroll { spec: self.spec.clone(), field, generators: self.generators.clone() }
    }

    /// The scroll without vertex, `X_0`.
    pub fn base(&self) -> Scroll {
        Scroll::new(self.spec.base(), self.field)
    }

    pub fn check_point(&self, p: &[Elem]) -> Result<()> {
        crate::exactfield::check_len(p, self.spec.ambient_dim())?;
        if p.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(())
    }

    pub fn embed(&self, pt: &ScrollPoint) -> Result<Vec<Elem>> {
        let f = &self.field;
        if pt.u.len() != self.spec.n() {
            return Err(Error::DimensionMismatch { expected: self.spec.n(), got: pt.u.len() });
        }
        if pt.z.len() != self.spec.vertex_len() {
            return Err(Error::DimensionMismatch { expected: self.spec.vertex_len(), got: pt.z.len() });
        }
        let mut out = pt.z.clone();
        for (i, &ai) in self.spec.a.iter().enumerate() {
            out.extend(veronese_block(f, pt.x, ai).into_iter().map(|v| f.mul(pt.u[i], v)));
        }
        if out.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(out)
    }

    pub fn contains(&self, p: &[Elem]) -> Result<bool> {
        self.check_point(p)?;
        Ok(self.generators.iter().all(|g| g.eval(&self.field, p).is_zero()))
    }

    /// `Q_l(p)` for every generator.
    pub fn values(&self, p: &[Elem]) -> Vec<Elem> {
        self.generators.iter().map(|g| g.eval(&self.field, p)).collect()
    }

    /// Coordinate vector of `v_i(x)` placed in block `i`.
    pub fn block_vector(&self, i: usize, x: P1Point) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.spec.num_coords()];
        let r = self.spec.block_range(i);
        v[r].copy_from_slice(&veronese_block(&self.field, x, self.spec.a[i]));
        v
    }

    pub fn unit(&self, j: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.spec.num_coords()];
        v[j] = self.field.one();
        v
    }

    /// Basis of the ruling `L(x)`: vertex unit vectors, then `v_i(x)` per block.
    pub fn ruling_basis(&self, x: P1Point) -> Mat {
        let mut m = Mat::zeros(0, self.spec.num_coords());
        for j in 0..self.spec.vertex_len() {
            m.push_row(&self.unit(j));
        }
        for i in 0..self.spec.n() {
            m.push_row(&self.block_vector(i, x));
        }
        m
    }

    pub fn ruling_subspace(&self, x: P1Point) -> LinearSubspace {
        LinearSubspace::from_rows(&self.field, self.spec.ambient_dim(), &self.ruling_basis(x))
    }

    pub fn vertex_subspace(&self) -> LinearSubspace {
        LinearSubspace::coordinate(&self.field, self.spec.ambient_dim(), 0..self.spec.vertex_len())
    }

    /// Row span of the Jacobian of the parametrization at `pt`.
    pub fn tangent_space(&self, pt: &ScrollPoint) -> Result<LinearSubspace> {
        if pt.is_vertex() {
            return Err(Error::VertexPoint);
        }
        let f = &self.field;
        let n_coords = self.spec.num_coords();
        let mut ds = vec![Elem::ZERO; n_coords];
        let mut dt = vec![Elem::ZERO; n_coords];
        for (i, &ai) in self.spec.a.iter().enumerate() {
            let (bs, bt) = veronese_block_derivs(f, pt.x, ai);
            for (k, j) in self.spec.block_range(i).enumerate() {
                ds[j] = f.mul(pt.u[i], bs[k]);
                dt[j] = f.mul(pt.u[i], bt[k]);
            }
        }
        let mut m = self.ruling_basis(pt.x);
        m.push_row(&ds);
        m.push_row(&dt);
        Ok(LinearSubspace::from_rows(f, self.spec.ambient_dim(), &m))
    }

    /// `A = <Vert, <S(1,...,1)>>` and the span of the degree-two blocks.
    pub fn special_subspaces(&self) -> SpecialSubspaces {
        let spec = &self.spec;
        let ones = spec.blocks_where(|a| a == 1);
        let twos = spec.blocks_where(|a| a == 2);
        let a_coords = (0..spec.vertex_len()).chain(ones.iter().flat_map(|&i| spec.block_range(i)));
        let s2_coords = twos.iter().flat_map(|&i| spec.block_range(i));
        SpecialSubspaces {
            a: LinearSubspace::coordinate(&self.field, spec.ambient_dim(), a_coords),
            s2_span: LinearSubspace::coordinate(&self.field, spec.ambient_dim(), s2_coords),
            ones,
            twos,
        }
    }

    /// Deletes the vertex coordinates.
    pub fn drop_vertex(&self, p: &[Elem]) -> Vec<Elem> {
        p[self.spec.vertex_len()..].to_vec()
    }

    /// `<Vert, S>` for a subspace `S` of the base scroll's ambient space.
    pub fn lift_subspace(&self, s: &LinearSubspace) -> LinearSubspace {
        let v = self.spec.vertex_len();
        let mut m = Mat::zeros(0, self.spec.num_coords());
        for j in 0..v {
            m.push_row(&self.unit(j));
        }
        for row in s.basis().row_iter() {
            let mut r = vec![Elem::ZERO; v];
            r.extend_from_slice(row);
            m.push_row(&r);
        }
        LinearSubspace::from_rows(&self.field, self.spec.ambient_dim(), &m)
    }
}

/// Distinguished linear spaces attached to a scroll.
#[derive(Clone, Debug)]
pub struct SpecialSubspaces {
    pub a: LinearSubspace,
    pub s2_span: LinearSubspace,
    /// Indices of the degree-one blocks.
    pub ones: Vec<usize>,
    /// Indices of the degree-two blocks.
    pub twos: Vec<usize>,
}

/// The 2x2 minors of the block-Hankel matrix whose block `i` is
/// `[y_{i,0} .. y_{i,a-1}; y_{i,1} .. y_{i,a}]`.
pub fn quadric_generators(spec: &ScrollSpec, field: &Field) -> Vec<QForm> {
    let cols: Vec<(usize, usize)> = (0..spec.n())
        .flat_map(|i| {
            let o = spec.block_offset(i);
            (0..spec.a[i] as usize).map(move |j| (o + j, o + j + 1))
        })
        .collect();
    let n = spec.num_coords();
    let (one, minus) = (field.one(), field.from_i64(-1));
    let mut out = Vec::with_capacity(cols.len() * (cols.len().saturating_sub(1)) / 2);
    for c in 0..cols.len() {
        for d in c + 1..cols.len() {
            let (top_c, bot_c) = cols[c];
            let (top_d, bot_d) = cols[d];
            let mons = [(top_c.min(bot_d), top_c.max(bot_d), one), (top_d.min(bot_c), top_d.max(bot_c), minus)];
            out.push(QForm::from_monomials(field, n, &mons));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn spec(a: &[u32], h: i32) -> ScrollSpec {
        ScrollSpec::new(a.to_vec(), h).unwrap()
    }

    #[test]
    fn derived_invariants() {
        let s = spec(&[1, 2], -1);
        assert_eq!((s.ambient_dim(), s.degree(), s.k(), s.m()), (4, 3, 1, 2));
        let c = spec(&[3], 0);
        assert_eq!((c.ambient_dim(), c.dim()), (4, 2));
        assert_eq!(ScrollSpec::new(vec![1, 1], -1), Err(Error::CodimTooSmall(2)));
        assert_eq!(ScrollSpec::new(vec![], -1), Err(Error::EmptyType));
        assert!(matches!(ScrollSpec::new(vec![2, 1], -1), Err(Error::InvalidType(_))));
    }

    #[test]
    fn literal_round_trip() {
        for lit in ["S(3)", "S(1,2)+cone(0)", "S(1,1,2,3)+cone(1)"] {
            let s: ScrollSpec = lit.parse().unwrap();
            assert_eq!(s.to_string(), lit);
        }
        assert_eq!("S( 1, 2 ) + cone(0)".parse::<ScrollSpec>().unwrap(), spec(&[1, 2], 0));
        assert!("T(3)".parse::<ScrollSpec>().is_err());
        assert!("S(3)+cone(x)".parse::<ScrollSpec>().is_err());
    }

    #[test]
    fn embed_examples() {
        let f = f7();
        let s3 = Scroll::new(spec(&[3], -1), f);
        let p = s3.embed(&ScrollPoint::new([f.one(), f.zero()], vec![f.one()], vec![])).unwrap();
        assert_eq!(p, f.vector(&[1, 0, 0, 0]));

        let s12 = Scroll::new(spec(&[1, 2], -1), f);
        let p = s12.embed(&ScrollPoint::new([f.one(), f.one()], f.vector(&[1, 1]), vec![])).unwrap();
        assert_eq!(p, f.vector(&[1, 1, 1, 1, 1]));

        let cone = Scroll::new(spec(&[3], 0), f);
        let v = ScrollPoint::new([f.one(), f.zero()], vec![f.zero()], vec![f.one()]);
        let p = cone.embed(&v).unwrap();
        assert_eq!(p, f.vector(&[1, 0, 0, 0, 0]));
        assert!(cone.contains(&p).unwrap());
    }

    #[test]
    fn generators_of_twisted_cubic() {
        let f = f7();
        let g = quadric_generators(&spec(&[3], -1), &f);
        let mon = |m: &[(usize, usize, i64)]| {
            QForm::from_monomials(&f, 4, &m.iter().map(|&(i, j, c)| (i, j, f.from_i64(c))).collect::<Vec<_>>())
        };
        assert_eq!(g.len(), 3);
        assert_eq!(g[0], mon(&[(0, 2, 1), (1, 1, -1)]));
        assert_eq!(g[1], mon(&[(0, 3, 1), (1, 2, -1)]));
        assert_eq!(g[2], mon(&[(1, 3, 1), (2, 2, -1)]));

        assert_eq!(quadric_generators(&spec(&[1, 2], -1), &f).len(), 3);
        let cone = quadric_generators(&spec(&[3], 0), &f);
        assert_eq!(cone.len(), 3);
        assert!(cone.iter().all(|q| q.n_vars() == 5 && q.monomials().iter().all(|&(i, j, _)| i > 0 && j > 0)));
    }

    #[test]
    fn contains_examples() {
        let f = f7();
        let s3 = Scroll::new(spec(&[3], -1), f);
        assert!(!s3.contains(&f.vector(&[0, 1, 0, 0])).unwrap());
        assert_eq!(s3.contains(&f.vector(&[0, 0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn rulings_and_tangents() {
        let f = f7();
        let s12 = Scroll::new(spec(&[1, 2], -1), f);
        let l = s12.ruling_subspace([f.one(), f.zero()]);
        let expected = LinearSubspace::span_points(&f, &[f.vector(&[1, 0, 0, 0, 0]), f.vector(&[0, 0, 1, 0, 0])], 4).unwrap();
        assert_eq!(l, expected);
        assert_eq!(Scroll::new(spec(&[3], -1), f).ruling_subspace([f.one(), f.from_i64(2)]).dim(), 0);
        assert_eq!(Scroll::new(spec(&[1, 2], 0), f).ruling_subspace([f.one(), f.zero()]).dim(), 2);

        let s3 = Scroll::new(spec(&[3], -1), f);
        let t = s3.tangent_space(&ScrollPoint::new([f.one(), f.zero()], vec![f.one()], vec![])).unwrap();
        assert_eq!(t, LinearSubspace::coordinate(&f, 3, [0, 1]));

        let pt = ScrollPoint::new([f.one(), f.zero()], f.vector(&[1, 0]), vec![]);
        assert_eq!(s12.tangent_space(&pt).unwrap().dim(), 2);

        let cone = Scroll::new(spec(&[3], 0), f);
        let v = ScrollPoint::new([f.one(), f.zero()], vec![f.zero()], vec![f.one()]);
        assert_eq!(cone.tangent_space(&v), Err(Error::VertexPoint));
    }

    #[test]
    fn special_subspace_examples() {
        let f = f7();
        let s = Scroll::new(spec(&[1, 2], -1), f).special_subspaces();
        assert_eq!(s.a, LinearSubspace::coordinate(&f, 4, [0, 1]));
        assert_eq!(s.s2_span.dim(), 2);
        let s = Scroll::new(spec(&[2, 2], -1), f).special_subspaces();
        assert!(s.a.is_empty());
        assert_eq!(s.s2_span.dim(), 5);
        let s = Scroll::new(spec(&[1, 1, 1], -1), f).special_subspaces();
        assert_eq!(s.a.dim(), 5);
    }
}
