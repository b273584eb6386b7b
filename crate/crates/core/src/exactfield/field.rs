//! Prime fields `F_q` (q odd) and their quadratic extensions `F_q[w]/(w^2 - c)`.
//!
//! Elements are plain `Copy` values; every operation goes through the [`Field`]
//! context, which carries the modulus and the non-residue `c`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `re + im * w`. For prime fields `im` is always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem {
    re: u64,
    im: u64,
}

impl Elem {
    pub const ZERO: Elem = Elem { re: 0, im: 0 };

    pub fn re(self) -> u64 {
        self.re
    }

    pub fn im(self) -> u64 {
        self.im
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// True when the element lies in the prime subfield.
    pub fn is_base(self) -> bool {
        self.im == 0
    }
}

/// `F_{q^d}` with `q` an odd prime and `d` in {1, 2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    q: u64,
    degree: u32,
    /// Least quadratic non-residue mod q; the extension modulus is `x^2 - nonresidue`.
    nonresidue: u64,
}

impl Field {
    pub fn new(q: u64, degree: u32) -> Result<Self> {
        if q == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(q) {
            return Err(Error::NonPrime(q));
        }
        if q >= 1 << 31 {
            return Err(Error::ModulusTooLarge(q));
        }
        if degree != 1 && degree != 2 {
            return Err(Error::UnsupportedDegree(degree));
        }
        let nonresidue = (2..q)
            .find(|&c| pow_mod(c, (q - 1) / 2, q) == q - 1)
            .expect("every odd prime field has a non-residue");
        Ok(Field { q, degree, nonresidue })
    }

    pub fn prime(q: u64) -> Result<Self> {
        Field::new(q, 1)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements, `q^d`.
    pub fn order(&self) -> u64 {
        self.q.pow(self.degree)
    }

    /// The constant `c` of the extension modulus `x^2 - c`, when `d = 2`.
    pub fn modulus_constant(&self) -> Option<u64> {
        (self.degree == 2).then_some(self.nonresidue)
    }

    /// The prime subfield.
    pub fn base(&self) -> Field {
        Field { degree: 1, ..*self }
    }

    pub fn with_degree(&self, degree: u32) -> Result<Field> {
        Field::new(self.q, degree)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem { re: 1, im: 0 }
    }

    /// The generator `w` of the extension (`w^2 = c`).
    pub fn generator(&self) -> Option<Elem> {
        (self.degree == 2).then_some(Elem { re: 0, im: 1 })
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        Elem { re: v.rem_euclid(self.q as i64) as u64, im: 0 }
    }

    pub fn from_u64(&self, v: u64) -> Elem {
        Elem { re: v % self.q, im: 0 }
    }

    /// Builds `re + im * w`; `im` must be zero over a prime field.
    pub fn from_parts(&self, re: u64, im: u64) -> Elem {
        debug_assert!(self.degree == 2 || im.is_multiple_of(self.q));
        Elem { re: re % self.q, im: im % self.q }
    }

    pub fn vector(&self, vals: &[i64]) -> Vec<Elem> {
        vals.iter().map(|&v| self.from_i64(v)).collect()
    }

    /// Whether the element belongs to this field (matters only for `d = 1`).
    pub fn contains(&self, e: Elem) -> bool {
        e.re < self.q && e.im < self.q && (self.degree == 2 || e.im == 0)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let q = self.q;
        let re = a.re + b.re;
        let im = a.im + b.im;
        Elem {
            re: if re >= q { re - q } else { re },
            im: if im >= q { im - q } else { im },
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let q = self.q;
        Elem {
            re: if a.re == 0 { 0 } else { q - a.re },
            im: if a.im == 0 { 0 } else { q - a.im },
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let q = self.q;
        if a.im == 0 && b.im == 0 {
            return Elem { re: a.re * b.re % q, im: 0 };
        }
        let bd = a.im * b.im % q * self.nonresidue;
        Elem {
            re: (a.re * b.re + bd) % q,
            im: (a.re * b.im + a.im * b.re) % q,
        }
    }

    /// `a * b - c * d`, the shape of every 2x2 minor.
    #[inline]
    pub fn det2(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> Elem {
        self.sub(self.mul(a, b), self.mul(c, d))
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Norm to the prime field: `re^2 - c im^2`.
    fn norm(&self, a: Elem) -> u64 {
        let q = self.q;
        let c_im2 = a.im * a.im % q * self.nonresidue % q;
        (a.re * a.re % q + q - c_im2) % q
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let q = self.q;
        let n_inv = pow_mod(self.norm(a), q - 2, q);
        Elem {
            re: a.re * n_inv % q,
            im: (q - a.im) % q * n_inv % q,
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// Frobenius conjugate `re - im w`.
    pub fn conj(&self, a: Elem) -> Elem {
        Elem { re: a.re, im: if a.im == 0 { 0 } else { self.q - a.im } }
    }

    pub fn is_square_base(&self, a: u64) -> bool {
        let a = a % self.q;
        a == 0 || pow_mod(a, (self.q - 1) / 2, self.q) == 1
    }

    /// Square root of a prime-field element, if it exists in this field.
    ///
    /// Non-residues have roots `r * w` in the quadratic extension, where
    /// `r^2 = a / c`.
    pub fn sqrt_base(&self, a: Elem) -> Option<Elem> {
        assert!(a.is_base(), "sqrt_base expects a prime-field element");
        if a.re == 0 {
            return Some(Elem::ZERO);
        }
        if self.is_square_base(a.re) {
            return Some(Elem { re: tonelli_shanks(a.re, self.q), im: 0 });
        }
        if self.degree == 1 {
            return None;
        }
        let c_inv = pow_mod(self.nonresidue, self.q - 2, self.q);
        let r = tonelli_shanks(a.re * c_inv % self.q, self.q);
        Some(Elem { re: 0, im: r })
    }

    /// All elements, prime-field elements first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let q = self.q;
        let ims = if self.degree == 2 { q } else { 1 };
        (0..ims).flat_map(move |im| (0..q).map(move |re| Elem { re, im }))
    }

    /// Scales a nonzero vector so that its first nonzero entry is one.
    pub fn normalize(&self, v: &mut [Elem]) -> bool {
        let Some(lead) = v.iter().copied().find(|e| !e.is_zero()) else {
            return false;
        };
        if lead != self.one() {
            let inv = self.inv(lead);
            for e in v.iter_mut() {
                *e = self.mul(*e, inv);
            }
        }
        true
    }

    /// Decimal rendering: `7` for prime-field elements, `3+5w` otherwise.
    pub fn format(&self, e: Elem) -> String {
        if e.im == 0 {
            e.re.to_string()
        } else if e.re == 0 {
            format!("{}w", e.im)
        } else {
            format!("{}+{}w", e.re, e.im)
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Square root of a quadratic residue `a` modulo the odd prime `p`.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut s = 0;
    let mut odd = p - 1;
    while odd.is_multiple_of(2) {
        odd /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, odd, p);
    let mut t = pow_mod(a, odd, p);
    let mut r = pow_mod(a, odd.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_and_f49() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.modulus_constant(), None);
        let f49 = Field::new(7, 2).unwrap();
        // squares mod 7 are {1, 2, 4}
        let squares: Vec<u64> = (1..7).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&3));
        assert!(squares.contains(&2));
        assert_eq!(f49.modulus_constant(), Some(3));
        assert_eq!(f49.order(), 49);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Field::new(2, 1), Err(Error::EvenCharacteristic));
        assert_eq!(Field::new(9, 1), Err(Error::NonPrime(9)));
        assert_eq!(Field::new(7, 3), Err(Error::UnsupportedDegree(3)));
    }

    #[test]
    fn extension_is_a_field() {
        let f = Field::new(5, 2).unwrap();
        let elems: Vec<Elem> = f.elements().collect();
        assert_eq!(elems.len(), 25);
        for &a in elems.iter().filter(|e| !e.is_zero()) {
            assert_eq!(f.mul(a, f.inv(a)), f.one());
        }
        let w = f.generator().unwrap();
        assert_eq!(f.mul(w, w), f.from_u64(f.modulus_constant().unwrap()));
    }

    #[test]
    fn square_roots() {
        for q in [3u64, 5, 7, 13, 17, 10007] {
            let f = Field::new(q, 2).unwrap();
            for a in (0..q.min(200)).map(|v| f.from_u64(v)) {
                let r = f.sqrt_base(a).unwrap();
                assert_eq!(f.square(r), a, "q={q} a={a:?}");
            }
            let fp = f.base();
            let c = f.from_u64(f.modulus_constant().unwrap());
            assert_eq!(fp.sqrt_base(c), None);
        }
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = Field::new(7, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 7), f.conj(a));
        }
    }
}
