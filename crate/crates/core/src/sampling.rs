//! Seeded samplers for points off a scroll.
//!
//! Uniform points almost never land in the small strata, so the mixture
//! draws from explicit constructions of each stratum as well.

use rand::Rng;

use crate::exactfield::{Elem, Field, P1Point};
use crate::scroll::{veronese_block, Scroll, ScrollPoint};

/// The constructions the mixture chooses from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Generic,
    /// `q_1 + q_2`, possibly a conjugate pair over `F_{q^2}`.
    Secant,
    /// A point of a tangent space.
    Tangent,
    /// A point of some `<L_alpha, L(x)>`.
    LineSection,
    /// A point of `Join(A, conic plane)`.
    ConicPlane,
    /// A point of `A`.
    Linear,
}

const MAX_ATTEMPTS: usize = 64;

pub fn random_elem<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Elem {
    let q = field.q();
    field.from_u64(rng.gen_range(0..q))
}

pub fn random_vector<R: Rng + ?Sized>(field: &Field, len: usize, rng: &mut R) -> Vec<Elem> {
    (0..len).map(|_| random_elem(field, rng)).collect()
}

pub fn random_nonzero_vector<R: Rng + ?Sized>(field: &Field, len: usize, rng: &mut R) -> Vec<Elem> {
    loop {
        let v = random_vector(field, len, rng);
        if v.iter().any(|e| !e.is_zero()) {
            return v;
        }
    }
}

pub fn random_p1<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> P1Point {
    let v = random_nonzero_vector(field, 2, rng);
    [v[0], v[1]]
}

/// Mixture sampler over the strata of a fixed scroll (coordinates in `F_q`).
pub struct StratifiedSampler<'a> {
    scroll: &'a Scroll,
    components: Vec<Component>,
}

impl<'a> StratifiedSampler<'a> {
    pub fn new(scroll: &'a Scroll) -> Self {
        let spec = scroll.spec();
        let (k, m) = (spec.k(), spec.m());
        let has_high = spec.a().iter().any(|&a| a >= 2);
        let mut components = vec![Component::Generic, Component::Secant, Component::Tangent];
        if k >= 1 && has_high {
            components.push(Component::LineSection);
        }
        if m > k {
            components.push(Component::ConicPlane);
        }
        if k >= 2 {
            components.push(Component::Linear);
        }
        StratifiedSampler { scroll, components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// A point off the scroll drawn from a uniformly chosen component.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let c = self.components[rng.gen_range(0..self.components.len())];
        self.sample_external(c, rng)
    }

    /// A point of the given construction off the scroll; falls back to a
    /// generic point when the construction keeps landing on the scroll.
    pub fn sample_external<R: Rng + ?Sized>(&self, c: Component, rng: &mut R) -> Vec<Elem> {
        for _ in 0..MAX_ATTEMPTS {
            let p = self.construct(c, rng);
            if !self.on_scroll(&p) {
                return p;
            }
        }
        loop {
            let p = self.construct(Component::Generic, rng);
            if !self.on_scroll(&p) {
                return p;
            }
        }
    }

    fn on_scroll(&self, p: &[Elem]) -> bool {
        p.iter().all(|e| e.is_zero()) || self.scroll.contains(p).expect("length is right")
    }

    /// A point of the construction, with random vertex coordinates; it may
    /// lie on the scroll.
    pub fn construct<R: Rng + ?Sized>(&self, c: Component, rng: &mut R) -> Vec<Elem> {
        let spec = self.scroll.spec();
        let f = *self.scroll.field();
        let mut p = random_vector(&f, spec.vertex_len(), rng);
        let base = match c {
            Component::Generic => random_vector(&f, spec.num_coords() - spec.vertex_len(), rng),
            Component::Secant => self.secant_point(rng),
            Component::Tangent => self.tangent_point(rng),
            Component::LineSection => self.block_point(rng, |a, f, x, rng| {
                let c = random_elem(f, rng);
                if a == 1 {
                    random_vector(f, 2, rng)
                } else {
                    veronese_block(f, x, a).into_iter().map(|v| f.mul(c, v)).collect()
                }
            }),
            Component::ConicPlane => {
                let plane = random_nonzero_vector(&f, 3, rng);
                self.block_point(rng, |a, f, _, rng| match a {
                    1 => random_vector(f, 2, rng),
                    2 => {
                        let c = random_elem(f, rng);
                        plane.iter().map(|&v| f.mul(c, v)).collect()
                    }
                    _ => vec![Elem::ZERO; a as usize + 1],
                })
            }
            Component::Linear => self.block_point(rng, |a, f, _, rng| {
                if a == 1 {
                    random_vector(f, 2, rng)
                } else {
                    vec![Elem::ZERO; a as usize + 1]
                }
            }),
        };
        p.extend(base);
        p
    }

    fn base_point<R: Rng + ?Sized>(&self, field: &Field, x: P1Point, rng: &mut R) -> Vec<Elem> {
        let u: Vec<Elem> = (0..self.scroll.spec().n()).map(|_| random_elem(field, rng)).collect();
        let base = self.scroll.base().with_field(*field);
        base.embed(&ScrollPoint::new(x, u, vec![])).unwrap_or_else(|_| vec![Elem::ZERO; base.spec().num_coords()])
    }

    fn secant_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let f = *self.scroll.field();
        if rng.gen_bool(0.5) {
            let q1 = self.base_point(&f, random_p1(&f, rng), rng);
            let q2 = self.base_point(&f, random_p1(&f, rng), rng);
            q1.iter().zip(&q2).map(|(&a, &b)| f.add(a, b)).collect()
        } else {
            // q + conj(q) for q over F_{q^2}
            let ext = f.with_degree(2).expect("odd prime");
            let w = ext.generator().expect("degree two");
            let x = [ext.add(random_elem(&f, rng), w), ext.one()];
            let u: Vec<Elem> = (0..self.scroll.spec().n())
                .map(|_| ext.add(random_elem(&f, rng), ext.mul(random_elem(&f, rng), w)))
                .collect();
            let base = self.scroll.base().with_field(ext);
            match base.embed(&ScrollPoint::new(x, u, vec![])) {
                Ok(q) => q.iter().map(|&e| ext.add(e, ext.conj(e))).collect(),
                Err(_) => vec![Elem::ZERO; base.spec().num_coords()],
            }
        }
    }

    fn tangent_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Elem> {
        let f = *self.scroll.field();
        let base = self.scroll.base();
        let x = random_p1(&f, rng);
        let u = random_nonzero_vector(&f, base.spec().n(), rng);
        let Ok(t) = base.tangent_space(&ScrollPoint::new(x, u, vec![])) else {
            return vec![Elem::ZERO; base.spec().num_coords()];
        };
        let coeffs = random_vector(&f, t.basis().rows(), rng);
        t.basis().vec_mul(&f, &coeffs)
    }

    /// Concatenates per-block vectors built by `block(a_i, field, x, rng)`
    /// for one random `x`.
    fn block_point<R, B>(&self, rng: &mut R, mut block: B) -> Vec<Elem>
    where
        R: Rng + ?Sized,
        B: FnMut(u32, &Field, P1Point, &mut R) -> Vec<Elem>,
    {
        let f = *self.scroll.field();
        let x = random_p1(&f, rng);
        let mut out = Vec::new();
        for &a in self.scroll.spec().a() {
            out.extend(block(a, &f, x, rng));
        }
        out
    }
}
