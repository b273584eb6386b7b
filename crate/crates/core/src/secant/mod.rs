//! Secant cones and secant loci of points off a scroll.
//!
//! For `p` off the scroll and `q` on it, `Q_l(lp + mq) = l^2 Q_l(p) + l m B_l`.
//! The line meets the scroll in length two iff `(Q_l(p))` and `(B_l)` are
//! proportional, and `B_l` is linear in `q`. On a fixed fiber the secant
//! condition is therefore a linear system.

mod apolar;

pub use apolar::FiberStrategy;

use serde::{Deserialize, Serialize};

use self::apolar::{roots_need_extension, sample_fibers, secant_candidates, tangent_candidates, window_kernel, Candidates};
use crate::error::{Error, Result};
use crate::exactfield::{p1_points, row_reduce, Elem, Field, LinearSubspace, Mat, P1Point, QForm};
use crate::scroll::Scroll;

/// Default cap on enumeration work (fibers, pair tests).
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecantOptions {
    /// Largest extension degree searched for fibers (1 or 2).
    pub d_max: u32,
    pub strategy: FiberStrategy,
    pub budget: u128,
}

impl Default for SecantOptions {
    fn default() -> Self {
        SecantOptions { d_max: 2, strategy: FiberStrategy::Apolar, budget: DEFAULT_BUDGET }
    }
}

impl SecantOptions {
    pub fn with_d_max(d_max: u32) -> Self {
        SecantOptions { d_max, ..Default::default() }
    }

    pub fn exhaustive(d_max: u32) -> Self {
        SecantOptions { d_max, strategy: FiberStrategy::Exhaustive, ..Default::default() }
    }
}

/// The six possible secant loci.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SecantType {
    /// No secant line: the locus is the doubled vertex.
    Empty2Z,
    TwoPoints,
    DoublePoint,
    TwoLines,
    Conic,
    QuadricSurface,
}

impl SecantType {
    pub const ALL: [SecantType; 6] = [
        SecantType::Empty2Z,
        SecantType::TwoPoints,
        SecantType::DoublePoint,
        SecantType::TwoLines,
        SecantType::Conic,
        SecantType::QuadricSurface,
    ];

    /// The label attached to `(s, rank)`, if the pair is admissible.
    pub fn from_signature(s: i64, rank: usize) -> Option<SecantType> {
        Some(match (s, rank) {
            (0, 1) => SecantType::Empty2Z,
            (1, 2) => SecantType::TwoPoints,
            (1, 1) => SecantType::DoublePoint,
            (2, 2) => SecantType::TwoLines,
            (2, 3) => SecantType::Conic,
            (3, 4) => SecantType::QuadricSurface,
            _ => return None,
        })
    }

    /// Dimension of the locus of the base scroll (`-1`-free offset `j`).
    pub fn j(self) -> i64 {
        match self {
            SecantType::Empty2Z => 0,
            SecantType::TwoPoints | SecantType::DoublePoint => 1,
            SecantType::TwoLines | SecantType::Conic => 2,
            SecantType::QuadricSurface => 3,
        }
    }

    pub fn s(self) -> i64 {
        match self {
            SecantType::Empty2Z => 0,
            SecantType::TwoPoints | SecantType::DoublePoint => 1,
            SecantType::TwoLines | SecantType::Conic => 2,
            SecantType::QuadricSurface => 3,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SecantType::Empty2Z | SecantType::DoublePoint => 1,
            SecantType::TwoPoints | SecantType::TwoLines => 2,
            SecantType::Conic => 3,
            SecantType::QuadricSurface => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SecantType::Empty2Z => "Empty2Z",
            SecantType::TwoPoints => "TwoPoints",
            SecantType::DoublePoint => "DoublePoint",
            SecantType::TwoLines => "TwoLines",
            SecantType::Conic => "Conic",
            SecantType::QuadricSurface => "QuadricSurface",
        }
    }
}

impl std::fmt::Display for SecantType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SecantSignature {
    /// Projective dimension of the secant cone.
    pub sec_dim: i64,
    pub h: i32,
    /// `sec_dim - h - 1`.
    pub s: i64,
    pub rank: usize,
    pub label: SecantType,
    pub locus_dim: i64,
    pub depth_pred: i64,
}

impl SecantSignature {
    pub fn new(h: i32, sec_dim: i64, rank: usize) -> Result<Self> {
        let s = sec_dim - h as i64 - 1;
        let label = SecantType::from_signature(s, rank).ok_or_else(|| Error::UnclassifiableSignature {
            s,
            rank,
            reason: "pair outside the six admissible signatures".into(),
        })?;
        Ok(SecantSignature {
            sec_dim,
            h,
            s,
            rank,
            label,
            locus_dim: h as i64 + label.j(),
            depth_pred: sec_dim + 1,
        })
    }
}

/// Outcome of testing the line through `p` and `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairTest {
    NotOnX,
    NotSecant,
    Secant,
    TangentContact,
}

pub fn secant_pair_test(scroll: &Scroll, p: &[Elem], q: &[Elem]) -> Result<PairTest> {
    let f = scroll.field();
    let a = point_values(scroll, p)?;
    if !scroll.contains(q)? {
        return Ok(PairTest::NotOnX);
    }
    let b: Vec<Elem> = scroll.generators().iter().map(|g| g.polarize_unchecked(f, p, q)).collect();
    if b.iter().all(|e| e.is_zero()) {
        return Ok(PairTest::TangentContact);
    }
    let i0 = a.iter().position(|e| !e.is_zero()).expect("checked by point_values");
    let proportional = (0..a.len()).all(|l| f.det2(a[i0], b[l], b[i0], a[l]).is_zero());
    Ok(if proportional { PairTest::Secant } else { PairTest::NotSecant })
}

/// `Q_l(p)` for all generators; errors when `p` lies on the scroll.
fn point_values(scroll: &Scroll, p: &[Elem]) -> Result<Vec<Elem>> {
    scroll.check_point(p)?;
    let a = scroll.values(p);
    if a.iter().all(|e| e.is_zero()) {
        return Err(Error::POnVariety);
    }
    Ok(a)
}

/// Secant data for a fixed `p`, reused across fibers.
struct FiberSolver<'a> {
    scroll: &'a Scroll,
    p: &'a [Elem],
    a: Vec<Elem>,
    i0: usize,
}

impl<'a> FiberSolver<'a> {
    fn new(scroll: &'a Scroll, p: &'a [Elem]) -> Result<Self> {
        let a = point_values(scroll, p)?;
        let i0 = a.iter().position(|e| !e.is_zero()).expect("nonzero");
        Ok(FiberSolver { scroll, p, a, i0 })
    }

    /// Polarization coefficients `c[l][r] = B_l(p, basis_r)`.
    fn coefficients(&self, basis: &Mat) -> Vec<Vec<Elem>> {
        let f = self.scroll.field();
        self.scroll
            .generators()
            .iter()
            .map(|g| basis.row_iter().map(|row| g.polarize_unchecked(f, self.p, row)).collect())
            .collect()
    }

    fn solve(&self, basis: &Mat, system: Mat) -> LinearSubspace {
        let f = self.scroll.field();
        let kernel = row_reduce(f, &system).kernel;
        let mut pts = Mat::zeros(0, basis.cols());
        for k in kernel.row_iter() {
            pts.push_row(&basis.vec_mul(f, k));
        }
        LinearSubspace::from_rows(f, self.scroll.spec().ambient_dim(), &pts)
    }

    /// Points `q` of `L(x)` with `B(p, q)` proportional to `Q(p)`.
    fn secant_space(&self, x: P1Point) -> LinearSubspace {
        let f = self.scroll.field();
        let basis = self.scroll.ruling_basis(x);
        let c = self.coefficients(&basis);
        let mut system = Mat::zeros(0, basis.rows());
        let (a0, c0) = (self.a[self.i0], &c[self.i0]);
        for (l, cl) in c.iter().enumerate() {
            if l == self.i0 {
                continue;
            }
            let row: Vec<Elem> = cl.iter().zip(c0).map(|(&x, &y)| f.sub(f.mul(a0, x), f.mul(self.a[l], y))).collect();
            system.push_row(&row);
        }
        self.solve(&basis, system)
    }

    /// Points `q` of `L(x)` whose tangent space contains `p`.
    fn tangent_space(&self, x: P1Point) -> LinearSubspace {
        let basis = self.scroll.ruling_basis(x);
        let c = self.coefficients(&basis);
        self.solve(&basis, Mat::from_rows(basis.rows(), &c))
    }
}

/// `F_{q^d}` with `d = max(field degree, d_max)`.
fn working_field(field: &Field, d_max: u32) -> Result<Field> {
    let d = field.degree().max(d_max);
    if d == field.degree() {
        Ok(*field)
    } else {
        field.with_degree(d)
    }
}

/// `Sigma_p ∩ L(x)`, computed over the scroll's field.
pub fn fiber_secant_space(scroll: &Scroll, p: &[Elem], x: P1Point) -> Result<LinearSubspace> {
    Ok(FiberSolver::new(scroll, p)?.secant_space(x))
}

/// Points of `L(x)` at which the tangent space contains `p`.
pub fn fiber_tangent_space(scroll: &Scroll, p: &[Elem], x: P1Point) -> Result<LinearSubspace> {
    Ok(FiberSolver::new(scroll, p)?.tangent_space(x))
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

fn all_fibers(field: &Field, budget: u128) -> Result<Vec<P1Point>> {
    check_budget(field.order() as u128 + 1, budget)?;
    Ok(p1_points(field).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRecord {
    pub x: P1Point,
    pub space: LinearSubspace,
}

/// Points of the secant locus found while building the secant cone.
#[derive(Clone, Debug, Default)]
pub struct SecantSample {
    /// Basis points of the nonempty fiber records.
    pub points: Vec<Vec<Elem>>,
    pub fibers: Vec<FiberRecord>,
}

/// The secant cone, its quadric and the fibers that produced it.
#[derive(Clone, Debug)]
pub struct SecantCone {
    /// Field over which the fibers were solved.
    pub field: Field,
    pub sec: LinearSubspace,
    /// The secant locus, as a quadric in the echelon coordinates of `sec`.
    pub quadric: QForm,
    pub sample: SecantSample,
}

impl SecantCone {
    pub fn signature(&self, h: i32) -> Result<SecantSignature> {
        let rank = self.quadric.rank(&self.field);
        SecantSignature::new(h, self.sec.dim(), rank)
    }
}

fn secant_fibers(solver_field: &Field, kernel: &Mat, opts: &SecantOptions) -> Result<Vec<P1Point>> {
    match opts.strategy {
        FiberStrategy::Exhaustive => all_fibers(solver_field, opts.budget),
        FiberStrategy::Apolar => Ok(match secant_candidates(solver_field, kernel) {
            Candidates::Fibers(v) => v,
            Candidates::Every => sample_fibers(solver_field),
        }),
    }
}

/// Secant cone of `p` computed directly on `scroll` (vertex included).
pub fn secant_cone(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<SecantCone> {
    let field = working_field(scroll.field(), opts.d_max)?;
    let work = scroll.with_field(field);
    let solver = FiberSolver::new(&work, p)?;
    let spec = scroll.spec();
    let kernel = window_kernel(spec, &field, p);
    if field.degree() == 1 && roots_need_extension(&field, &kernel) {
        return Err(Error::UnclassifiableSignature {
            s: 0,
            rank: 1,
            reason: "the secant fibers are conjugate over F_{q^2}; raise d_max to 2".into(),
        });
    }

    let mut sample = SecantSample::default();
    let mut rows = Mat::zeros(0, spec.num_coords());
    rows.push_row(p);
    for j in 0..spec.vertex_len() {
        rows.push_row(&work.unit(j));
    }
    for x in secant_fibers(&field, &kernel, opts)? {
        let space = solver.secant_space(x);
        if space.is_empty() {
            continue;
        }
        for r in space.basis().row_iter() {
            rows.push_row(r);
            sample.points.push(r.to_vec());
        }
        sample.fibers.push(FiberRecord { x, space });
    }
    let sec = LinearSubspace::from_rows(&field, spec.ambient_dim(), &rows);
    let quadric = secant_quadric(&work, &sec)?;
    Ok(SecantCone { field, sec, quadric, sample })
}

/// The common restriction of the generators to `sec`, up to scale.
fn secant_quadric(scroll: &Scroll, sec: &LinearSubspace) -> Result<QForm> {
    let f = scroll.field();
    let mut chosen: Option<QForm> = None;
    for g in scroll.generators() {
        let r = g.restrict(f, sec)?;
        if r.is_zero() {
            continue;
        }
        match &chosen {
            None => chosen = Some(r),
            Some(c) if c.proportional(f, &r) => {}
            Some(c) => {
                return Err(Error::UnclassifiableSignature {
                    s: sec.dim() - scroll.spec().h() as i64 - 1,
                    rank: c.rank(f),
                    reason: "generator restrictions to the secant cone are not proportional".into(),
                })
            }
        }
    }
    chosen.ok_or_else(|| Error::UnclassifiableSignature {
        s: sec.dim() - scroll.spec().h() as i64 - 1,
        rank: 0,
        reason: "every generator vanishes on the secant cone".into(),
    })
}

/// Drops the vertex coordinates of `p`, rejecting points on the vertex.
pub fn reduce_point(scroll: &Scroll, p: &[Elem]) -> Result<Vec<Elem>> {
    scroll.check_point(p)?;
    let pbar = scroll.drop_vertex(p);
    if pbar.iter().all(|e| e.is_zero()) {
        return Err(Error::POnVariety);
    }
    Ok(pbar)
}

/// Secant cone of `p` computed on the base scroll and joined with the vertex.
pub fn lifted_secant_cone(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<(SecantCone, LinearSubspace)> {
    let pbar = reduce_point(scroll, p)?;
    let base = scroll.base();
    let cone = secant_cone(&base, &pbar, opts)?;
    let lifted = scroll.with_field(cone.field).lift_subspace(&cone.sec);
    Ok((cone, lifted))
}

/// Classifies `p` on the base scroll and lifts by the vertex dimension.
pub fn classify(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<SecantSignature> {
    let pbar = reduce_point(scroll, p)?;
    let cone = secant_cone(&scroll.base(), &pbar, opts)?;
    let h = scroll.spec().h();
    let rank = cone.quadric.rank(&cone.field);
    SecantSignature::new(h, cone.sec.dim() + h as i64 + 1, rank)
}

/// Classifies `p` without the vertex reduction.
pub fn classify_direct(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<SecantSignature> {
    secant_cone(scroll, p, opts)?.signature(scroll.spec().h())
}

/// Whether some fiber over `F_{q^d}`, `d <= d_max`, meets the secant locus
/// outside the vertex.
pub fn has_secant_fiber(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<bool> {
    let base = scroll.base();
    let pbar = reduce_point(scroll, p)?;
    let field = working_field(base.field(), opts.d_max)?;
    let work = base.with_field(field);
    let solver = FiberSolver::new(&work, &pbar)?;
    let kernel = window_kernel(base.spec(), &field, &pbar);
    let fibers = match (opts.strategy, secant_candidates(&field, &kernel)) {
        (FiberStrategy::Exhaustive, _) => all_fibers(&field, opts.budget)?,
        (_, Candidates::Fibers(v)) => v,
        (_, Candidates::Every) => sample_fibers(&field),
    };
    Ok(fibers.into_iter().any(|x| !solver.secant_space(x).is_empty()))
}

/// Whether `p` lies on a tangent space of the base scroll at a point over
/// `F_{q^d}`, `d <= d_max`.
pub fn has_tangent_fiber(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<bool> {
    let base = scroll.base();
    let pbar = reduce_point(scroll, p)?;
    let field = working_field(base.field(), opts.d_max)?;
    let work = base.with_field(field);
    let solver = FiberSolver::new(&work, &pbar)?;
    let kernel = window_kernel(base.spec(), &field, &pbar);
    let fibers = match (opts.strategy, tangent_candidates(&field, &kernel)) {
        (FiberStrategy::Exhaustive, _) => all_fibers(&field, opts.budget)?,
        (_, Candidates::Fibers(v)) => v,
        (_, Candidates::Every) => sample_fibers(&field),
    };
    Ok(fibers.into_iter().any(|x| !solver.tangent_space(x).is_empty()))
}

/// All points of the secant locus of `p` over the scroll's own field,
/// computed fiber by fiber. The vertex always belongs to the locus.
pub fn secant_locus_points(scroll: &Scroll, p: &[Elem], opts: &SecantOptions) -> Result<Vec<Vec<Elem>>> {
    let field = *scroll.field();
    let solver = FiberSolver::new(scroll, p)?;
    let kernel = window_kernel(scroll.spec(), &field, p);
    let fibers = match (opts.strategy, secant_candidates(&field, &kernel)) {
        (FiberStrategy::Apolar, Candidates::Fibers(v)) => v,
        _ => all_fibers(&field, opts.budget)?,
    };
    let mut out: std::collections::BTreeSet<Vec<Elem>> = scroll.vertex_subspace().points(&field).collect();
    let mut work: u128 = 0;
    for x in fibers {
        let space = solver.secant_space(x);
        work += (field.order() as u128).pow(space.dim().max(0) as u32);
        check_budget(work, opts.budget)?;
        out.extend(space.points(&field));
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scroll::ScrollSpec;

    fn scroll(a: &[u32], h: i32, q: u64) -> Scroll {
        Scroll::new(ScrollSpec::new(a.to_vec(), h).unwrap(), Field::prime(q).unwrap())
    }

    #[test]
    fn pair_test_examples() {
        let s = scroll(&[3], -1, 7);
        let f = *s.field();
        let chord = f.vector(&[1, 0, 0, 1]);
        assert_eq!(secant_pair_test(&s, &chord, &f.vector(&[1, 0, 0, 0])).unwrap(), PairTest::Secant);
        assert_eq!(secant_pair_test(&s, &chord, &f.vector(&[1, 1, 1, 1])).unwrap(), PairTest::NotSecant);
        assert_eq!(secant_pair_test(&s, &chord, &f.vector(&[0, 1, 0, 0])).unwrap(), PairTest::NotOnX);
        let tangent = f.vector(&[0, 1, 0, 0]);
        assert_eq!(secant_pair_test(&s, &tangent, &f.vector(&[1, 0, 0, 0])).unwrap(), PairTest::TangentContact);
        assert_eq!(secant_pair_test(&s, &f.vector(&[1, 0, 0, 0]), &chord), Err(Error::POnVariety));
    }

    #[test]
    fn fiber_space_examples() {
        let s = scroll(&[3], -1, 7);
        let f = *s.field();
        let p = f.vector(&[1, 0, 0, 1]);
        let sp = fiber_secant_space(&s, &p, [f.one(), f.zero()]).unwrap();
        assert_eq!(sp, LinearSubspace::coordinate(&f, 3, [0]));
        assert!(fiber_secant_space(&s, &p, [f.one(), f.one()]).unwrap().is_empty());

        let s = scroll(&[1, 1, 1], -1, 7);
        let p = f.vector(&[1, 0, 0, 1, 0, 0]);
        for x in p1_points(&f) {
            assert_eq!(fiber_secant_space(&s, &p, x).unwrap().dim(), 1);
        }
    }

    #[test]
    fn cone_examples() {
        let s = scroll(&[3], -1, 7);
        let f = *s.field();
        let opts = SecantOptions::default();
        let c = secant_cone(&s, &f.vector(&[1, 0, 0, 1]), &opts).unwrap();
        assert_eq!(c.sec, LinearSubspace::coordinate(&f, 3, [0, 3]));
        assert_eq!(c.quadric.rank(&c.field), 2);
        let c = secant_cone(&s, &f.vector(&[0, 1, 0, 0]), &opts).unwrap();
        assert_eq!(c.sec, LinearSubspace::coordinate(&f, 3, [0, 1]));
        assert_eq!(c.quadric.rank(&c.field), 1);

        let s = scroll(&[1, 1, 1], -1, 7);
        // rows (1,0,0) and (0,1,0) of the 2x3 matrix of coordinates
        let c = secant_cone(&s, &f.vector(&[1, 0, 0, 1, 0, 0]), &opts).unwrap();
        assert_eq!((c.sec.dim(), c.quadric.rank(&c.field)), (3, 4));
    }

    #[test]
    fn classify_examples() {
        let opts = SecantOptions::default();
        let s = scroll(&[3], -1, 7);
        let f = *s.field();
        let sig = classify(&s, &f.vector(&[1, 0, 0, 1]), &opts).unwrap();
        assert_eq!((sig.s, sig.rank, sig.label, sig.depth_pred), (1, 2, SecantType::TwoPoints, 2));

        let cone = scroll(&[3], 0, 7);
        let p = f.vector(&[0, 1, 0, 0, 1]);
        let sig = classify(&cone, &p, &opts).unwrap();
        assert_eq!((sig.s, sig.rank, sig.locus_dim, sig.depth_pred), (1, 2, 1, 3));
        assert_eq!(classify_direct(&cone, &p, &opts).unwrap(), sig);

        let s = scroll(&[1, 2], -1, 7);
        let sig = classify(&s, &f.vector(&[0, 0, 1, 0, -1]), &opts).unwrap();
        assert_eq!((sig.s, sig.rank, sig.label, sig.depth_pred), (2, 3, SecantType::Conic, 3));
    }

    #[test]
    fn conjugate_chord_needs_the_extension() {
        // s^2 - 3t^2 is irreducible over F_7: p is on the chord through a
        // conjugate pair of points.
        let s = scroll(&[3], -1, 7);
        let f = *s.field();
        let f49 = f.with_degree(2).unwrap();
        let w = f49.generator().unwrap();
        let q1 = s.with_field(f49).embed(&crate::scroll::ScrollPoint::new([w, f.one()], vec![f.one()], vec![])).unwrap();
        let q2: Vec<Elem> = q1.iter().map(|&e| f49.conj(e)).collect();
        let p: Vec<Elem> = q1.iter().zip(&q2).map(|(&a, &b)| f49.add(a, b)).collect();
        assert!(p.iter().all(|e| e.is_base()));
        let sig = classify(&s, &p, &SecantOptions::default()).unwrap();
        assert_eq!(sig.label, SecantType::TwoPoints);
        let err = classify(&s, &p, &SecantOptions::with_d_max(1)).unwrap_err();
        assert!(matches!(err, Error::UnclassifiableSignature { .. }));
    }

    #[test]
    fn strategies_agree_on_small_fields() {
        let f = Field::prime(5).unwrap();
        for a in [vec![3], vec![1, 2], vec![2, 2], vec![1, 1, 1]] {
            let s = Scroll::new(ScrollSpec::new(a, -1).unwrap(), f);
            let pts = crate::exactfield::projective_points(&f, s.spec().num_coords());
            for p in pts.iter().step_by(7).filter(|p| !s.contains(p).unwrap()) {
                let fast = secant_cone(&s, p, &SecantOptions::default()).unwrap();
                let slow = secant_cone(&s, p, &SecantOptions::exhaustive(2)).unwrap();
                assert_eq!(fast.sec, slow.sec, "{} {:?}", s.spec(), p);
                assert_eq!(fast.quadric.rank(&fast.field), slow.quadric.rank(&slow.field));
            }
        }
    }
}
