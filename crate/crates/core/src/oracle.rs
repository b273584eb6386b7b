//! Brute-force reference computations over small fields.
//!
//! Everything here works directly on the scroll, vertex included, from the
//! parametrization and the defining quadrics alone. It is meant to be slow
//! and obviously correct.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{p1_points, projective_points, Elem, Field, LinearSubspace};
use crate::scroll::{Scroll, ScrollPoint};
use crate::secant::{self, SecantOptions, SecantSignature, SecantType, DEFAULT_BUDGET};
use crate::strata;
use crate::strata::Memberships;

fn charge(work: &mut u128, amount: u128, budget: u128) -> Result<()> {
    *work += amount;
    if *work > budget {
        return Err(Error::BudgetExceeded { needed: *work, budget });
    }
    Ok(())
}

/// All points of the scroll over its field, each once.
#[derive(Clone, Debug)]
pub struct PointTable {
    field: Field,
    points: Vec<Vec<Elem>>,
    params: Vec<ScrollPoint>,
}

impl PointTable {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    pub fn params(&self) -> &[ScrollPoint] {
        &self.params
    }

    /// Whether entry `i` is a vertex point.
    pub fn is_vertex(&self, i: usize) -> bool {
        self.params[i].is_vertex()
    }
}

/// Enumerates the points of the scroll over `scroll.field()`: cone points
/// `(z, v)` over every base point `v`, then the vertex.
pub fn enumerate_points(scroll: &Scroll, budget: u128) -> Result<PointTable> {
    let f = *scroll.field();
    let spec = scroll.spec();
    let order = f.order() as u128;
    let p1 = order + 1;
    let fiber = (0..spec.n()).map(|i| order.pow(i as u32)).sum::<u128>();
    let cone = order.pow(spec.vertex_len() as u32);
    let needed = p1 * fiber * cone + cone;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let base = scroll.base();
    let fibers = projective_points(&f, spec.n());
    let zs: Vec<Vec<Elem>> = if spec.vertex_len() == 0 {
        vec![vec![]]
    } else {
        let elems: Vec<Elem> = f.elements().collect();
        let mut out = vec![vec![]];
        for _ in 0..spec.vertex_len() {
            out = out.into_iter().flat_map(|z: Vec<Elem>| elems.iter().map(move |&e| [z.clone(), vec![e]].concat())).collect();
        }
        out
    };
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let mut params = Vec::new();
    for x in p1_points(&f) {
        for u in &fibers {
            let mut v = base.embed(&ScrollPoint::new(x, u.clone(), vec![]))?;
            f.normalize(&mut v);
            for z in &zs {
                let mut pt = [z.clone(), v.clone()].concat();
                f.normalize(&mut pt);
                if seen.insert(pt.clone()) {
                    points.push(pt);
                    params.push(ScrollPoint::new(x, u.clone(), z.clone()));
                }
            }
        }
    }
    let zero_x = [Elem::ZERO, Elem::ZERO];
    for z in projective_points(&f, spec.vertex_len()) {
        let pt = [z.clone(), vec![Elem::ZERO; spec.num_coords() - spec.vertex_len()]].concat();
        if seen.insert(pt.clone()) {
            points.push(pt);
            params.push(ScrollPoint::new(zero_x, vec![Elem::ZERO; spec.n()], z));
        }
    }
    Ok(PointTable { field: f, points, params })
}

/// The common zeros of the generators in the whole ambient space.
pub fn zero_set_scan(scroll: &Scroll, budget: u128) -> Result<Vec<Vec<Elem>>> {
    let f = scroll.field();
    let n = scroll.spec().num_coords();
    let needed = (f.order() as u128).pow(n as u32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(projective_points(f, n).into_iter().filter(|p| scroll.values(p).iter().all(|e| e.is_zero())).collect())
}

/// The secant locus by walking every line `<p, q>` for `q` in the table.
///
/// `q` qualifies when the line meets the scroll again, when `p` lies in the
/// Jacobian tangent space at `q`, or when `q` is a vertex point.
pub fn brute_secant_locus(scroll: &Scroll, table: &PointTable, p: &[Elem], budget: u128) -> Result<Vec<Vec<Elem>>> {
    let f = *table.field();
    let s = scroll.with_field(f);
    s.check_point(p)?;
    let a = s.values(p);
    if a.iter().all(|e| e.is_zero()) {
        return Err(Error::POnVariety);
    }
    let lambdas: Vec<Elem> = f.elements().filter(|e| !e.is_zero()).collect();
    let mut work = 0u128;
    let mut out = Vec::new();
    for (i, q) in table.points().iter().enumerate() {
        charge(&mut work, lambdas.len() as u128, budget)?;
        if table.is_vertex(i) {
            out.push(q.clone());
            continue;
        }
        // Q_l(lp + q) = l^2 Q_l(p) + l B_l + Q_l(q), evaluated lazily
        let b: Vec<Elem> = s.generators().iter().map(|g| g.polarize_unchecked(&f, p, q)).collect();
        let c = s.values(q);
        let tangent = b.iter().all(|e| e.is_zero());
        let meets_again = || {
            lambdas.iter().any(|&l| {
                (0..a.len()).all(|k| f.add(f.mul(l, f.add(f.mul(l, a[k]), b[k])), c[k]).is_zero())
            })
        };
        if tangent || meets_again() {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// Secant cone and signature assembled from the brute-force locus.
pub fn brute_signature(scroll: &Scroll, locus: &[Vec<Elem>], p: &[Elem], field: &Field) -> Result<(LinearSubspace, SecantSignature)> {
    let s = scroll.with_field(*field);
    let mut pts = vec![p.to_vec()];
    pts.extend(locus.iter().cloned());
    let sec = LinearSubspace::span_points(field, &pts, scroll.spec().ambient_dim())?;
    let g = s
        .generators()
        .iter()
        .map(|g| g.restrict(field, &sec))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|r| !r.is_zero())
        .ok_or(Error::POnVariety)?;
    let sig = SecantSignature::new(scroll.spec().h(), sec.dim(), g.rank(field))?;
    Ok((sec, sig))
}

fn unit(field: &Field, len: usize, j: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; len];
    v[j] = field.one();
    v
}

/// Memberships by enumeration: `A` as a span of table points, `B` and `U`
/// as unions of spans over all parameters, `Tan` and `Sec` from the table.
pub fn brute_membership(scroll: &Scroll, table: &PointTable, p: &[Elem], budget: u128) -> Result<Memberships> {
    let f = *table.field();
    let s = scroll.with_field(f);
    let spec = s.spec();
    let n_coords = spec.num_coords();
    let nd = spec.ambient_dim();
    let ones = spec.blocks_where(|a| a == 1);
    let twos = spec.blocks_where(|a| a == 2);
    let mut work = 0u128;

    // A: span of the table points supported on the vertex and degree-one blocks
    let mut support = vec![false; n_coords];
    support[..spec.vertex_len()].iter_mut().for_each(|b| *b = true);
    for &i in &ones {
        for j in spec.block_range(i) {
            support[j] = true;
        }
    }
    let a_pts: Vec<&Vec<Elem>> =
        table.points().iter().filter(|q| q.iter().enumerate().all(|(j, e)| support[j] || e.is_zero())).collect();
    let a_space = LinearSubspace::span_points(&f, &a_pts, nd)?;
    let in_a = a_space.contains(&f, p)?;

    let vertex_rows: Vec<Vec<Elem>> = (0..spec.vertex_len()).map(|j| unit(&f, n_coords, j)).collect();

    // B: <Vert, L_alpha, L(x)> over alpha in P^{k-1}, x in P^1
    let in_b = if ones.is_empty() {
        false
    } else {
        let alphas = projective_points(&f, ones.len());
        let xs: Vec<_> = p1_points(&f).collect();
        let mut found = false;
        'outer: for alpha in &alphas {
            let mut line = [vec![Elem::ZERO; n_coords], vec![Elem::ZERO; n_coords]];
            for (c, &i) in ones.iter().enumerate() {
                let o = spec.block_offset(i);
                line[0][o] = alpha[c];
                line[1][o + 1] = alpha[c];
            }
            for &x in &xs {
                charge(&mut work, 1, budget)?;
                let mut rows = vertex_rows.clone();
                rows.extend(line.iter().cloned());
                rows.extend(s.ruling_basis(x).row_iter().map(<[Elem]>::to_vec));
                if LinearSubspace::span_points(&f, &rows, nd)?.contains(&f, p)? {
                    found = true;
                    break 'outer;
                }
            }
        }
        found
    };

    // U: <A, conic plane of beta> over beta in P^{m-k-1}
    let in_u = if twos.is_empty() {
        in_a
    } else {
        let mut found = false;
        for beta in projective_points(&f, twos.len()) {
            charge(&mut work, 1, budget)?;
            let mut rows: Vec<Vec<Elem>> = a_space.basis().row_iter().map(<[Elem]>::to_vec).collect();
            for c in 0..3 {
                let mut v = vec![Elem::ZERO; n_coords];
                for (t, &i) in twos.iter().enumerate() {
                    v[spec.block_offset(i) + c] = beta[t];
                }
                rows.push(v);
            }
            if LinearSubspace::span_points(&f, &rows, nd)?.contains(&f, p)? {
                found = true;
                break;
            }
        }
        found
    };

    // Tan: p in the Jacobian tangent space at a non-vertex point
    let mut in_tan = false;
    for (i, q) in table.points().iter().enumerate() {
        if table.is_vertex(i) {
            continue;
        }
        charge(&mut work, 1, budget)?;
        if s.generators().iter().all(|g| g.polarize_unchecked(&f, p, q).is_zero()) {
            in_tan = true;
            break;
        }
    }

    let locus = brute_secant_locus(scroll, table, p, budget)?;
    let vertex: HashSet<&Vec<Elem>> = (0..table.len()).filter(|&i| table.is_vertex(i)).map(|i| &table.points()[i]).collect();
    let in_sec = locus.iter().any(|q| !vertex.contains(q));

    Ok(Memberships { a: in_a, b: in_b, u: in_u, tan: in_tan, sec: in_sec })
}

/// Default work budget for the oracle.
pub const ORACLE_BUDGET: u128 = DEFAULT_BUDGET;

/// Fast path against oracle for one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub d: u32,
    pub locus_brute: usize,
    pub locus_fast: usize,
    /// Secant locus of the fast path equals the brute-force one.
    pub locus_equal: bool,
    /// The base locus joined with the vertex equals the brute-force one.
    pub lift_locus_equal: bool,
    pub label_brute: SecantType,
    pub label_geom: SecantType,
    pub label_signature: SecantType,
    pub signature_brute: Option<SecantSignature>,
    pub signature_fast: SecantSignature,
    /// Secant cones: direct, lifted from the base, and brute force agree.
    pub sec_equal: bool,
}

impl PointCheck {
    /// Point sets are compared at every degree; labels and cones only once
    /// conjugate points are visible (`d = 2`).
    pub fn ok(&self) -> bool {
        let sets = self.locus_equal && self.lift_locus_equal;
        if self.d < 2 {
            return sets;
        }
        sets && self.sec_equal
            && self.label_brute == self.label_geom
            && self.label_geom == self.label_signature
            && self.signature_brute == Some(self.signature_fast)
    }
}

/// Oracle for a fixed scroll over `F_{q^d}`.
pub struct OracleCheck {
    scroll: Scroll,
    work: Scroll,
    table: PointTable,
    d: u32,
    budget: u128,
}

impl OracleCheck {
    pub fn new(scroll: &Scroll, d: u32, budget: u128) -> Result<Self> {
        let field = scroll.field().with_degree(d)?;
        let work = scroll.with_field(field);
        let table = enumerate_points(&work, budget)?;
        Ok(OracleCheck { scroll: scroll.clone(), work, table, d, budget })
    }

    pub fn table(&self) -> &PointTable {
        &self.table
    }

    pub fn check(&self, p: &[Elem]) -> Result<PointCheck> {
        let f = *self.work.field();
        let spec = self.scroll.spec();
        let opts = SecantOptions::default();

        let mut brute = brute_secant_locus(&self.work, &self.table, p, self.budget)?;
        brute.sort();
        let fast = secant::secant_locus_points(&self.work, p, &opts)?;

        // join of the vertex with the locus of the base
        let base = self.work.base();
        let pbar = secant::reduce_point(&self.work, p)?;
        let base_locus = secant::secant_locus_points(&base, &pbar, &opts)?;
        let mut lifted: BTreeSet<Vec<Elem>> = self.work.vertex_subspace().points(&f).collect();
        for q in &base_locus {
            // the points of <Vert, q>
            let mut rows: Vec<Vec<Elem>> = (0..spec.vertex_len()).map(|j| unit(&f, spec.num_coords(), j)).collect();
            let mut lq = vec![Elem::ZERO; spec.vertex_len()];
            lq.extend_from_slice(q);
            rows.push(lq);
            let span = LinearSubspace::span_points(&f, &rows, spec.ambient_dim())?;
            lifted.extend(span.points(&f));
        }
        let lifted: Vec<Vec<Elem>> = lifted.into_iter().collect();

        let memberships = brute_membership(&self.work, &self.table, p, self.budget)?;
        let report = strata::stratum_geometric(&self.scroll, p, &opts)?;
        let signature_fast = secant::classify(&self.scroll, p, &opts)?;
        let direct = secant::secant_cone(&self.scroll, p, &opts)?;
        let (_, lifted_sec) = secant::lifted_secant_cone(&self.scroll, p, &opts)?;
        let brute_sig = brute_signature(&self.work, &brute, p, &f);
        let (signature_brute, sec_equal) = match brute_sig {
            Ok((sec, sig)) => (Some(sig), direct.field == f && sec == direct.sec && sec == lifted_sec),
            Err(_) => (None, false),
        };
        Ok(PointCheck {
            d: self.d,
            locus_brute: brute.len(),
            locus_fast: fast.len(),
            locus_equal: brute == fast,
            lift_locus_equal: brute == lifted,
            label_brute: memberships.label(),
            label_geom: report.label_geom,
            label_signature: report.label_signature,
            signature_brute,
            signature_fast,
            sec_equal,
        })
    }
}
#[cfg(test)]
mod tests {
    use super::*;
    use crate::scroll::ScrollSpec;

    fn scroll(a: &[u32], h: i32, q: u64) -> Scroll {
        Scroll::new(ScrollSpec::new(a.to_vec(), h).unwrap(), Field::prime(q).unwrap())
    }

    #[test]
    fn point_counts() {
        assert_eq!(enumerate_points(&scroll(&[3], -1, 5), ORACLE_BUDGET).unwrap().len(), 6);
        assert_eq!(enumerate_points(&scroll(&[1, 2], -1, 5), ORACLE_BUDGET).unwrap().len(), 36);
        assert_eq!(enumerate_points(&scroll(&[3], 0, 5), ORACLE_BUDGET).unwrap().len(), 31);
        assert!(matches!(enumerate_points(&scroll(&[3], 0, 5), 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn brute_locus_examples() {
        let s = scroll(&[3], -1, 5);
        let f = *s.field();
        let t = enumerate_points(&s, ORACLE_BUDGET).unwrap();
        let mut l = brute_secant_locus(&s, &t, &f.vector(&[1, 0, 0, 1]), ORACLE_BUDGET).unwrap();
        l.sort();
        assert_eq!(l, vec![f.vector(&[0, 0, 0, 1]), f.vector(&[1, 0, 0, 0])]);
        let l = brute_secant_locus(&s, &t, &f.vector(&[0, 1, 0, 0]), ORACLE_BUDGET).unwrap();
        assert_eq!(l, vec![f.vector(&[1, 0, 0, 0])]);

        let s = scroll(&[1, 1, 1], -1, 5);
        let t = enumerate_points(&s, ORACLE_BUDGET).unwrap();
        let l = brute_secant_locus(&s, &t, &f.vector(&[1, 0, 0, 1, 0, 0]), ORACLE_BUDGET).unwrap();
        assert_eq!(l.len(), 36);
    }

    #[test]
    fn brute_membership_examples() {
        let s = scroll(&[1, 2], -1, 5);
        let f = *s.field();
        let t = enumerate_points(&s, ORACLE_BUDGET).unwrap();
        let m = brute_membership(&s, &t, &f.vector(&[0, 0, 1, 0, -1]), ORACLE_BUDGET).unwrap();
        assert!(m.u && !m.b);
        assert_eq!(m.label(), SecantType::Conic);

        let s = scroll(&[3], -1, 5);
        let t = enumerate_points(&s, ORACLE_BUDGET).unwrap();
        let m = brute_membership(&s, &t, &f.vector(&[1, 0, 0, 1]), ORACLE_BUDGET).unwrap();
        assert!(m.sec && !m.tan);

        let s = scroll(&[1, 1, 3], -1, 5);
        let t = enumerate_points(&s, ORACLE_BUDGET).unwrap();
        let m = brute_membership(&s, &t, &f.vector(&[1, 0, 0, 1, 0, 0, 0, 0]), ORACLE_BUDGET).unwrap();
        assert_eq!(m.label(), SecantType::QuadricSurface);
    }

    #[test]
    fn table_matches_zero_set() {
        for (a, h) in [(vec![3], -1), (vec![1, 2], -1), (vec![3], 0), (vec![2, 2], -1)] {
            let s = scroll(&a, h, 5);
            let mut t = enumerate_points(&s, ORACLE_BUDGET).unwrap().points().to_vec();
            t.sort();
            let mut z = zero_set_scan(&s, ORACLE_BUDGET).unwrap();
            z.sort();
            assert_eq!(t, z, "{}", s.spec());
        }
    }
}
