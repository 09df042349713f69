//! Exact arithmetic in GF(p^d).
//!
//! Elements are stored by their canonical integer encoding
//! `enc(a) = sum a_i p^i` (little-endian base-p digits of the coefficient
//! vector of the representative polynomial). Multiplication goes through
//! log/antilog tables, so the field order is capped at 2^16.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly;

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 16;

/// An element of a finite field, identified by its canonical encoding.
///
/// The value is meaningless without the [`Gf`] it was produced by.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Characteristic, degree and defining polynomial of GF(p^d).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    d: u32,
    /// Monic, little-endian, length d + 1.
    modulus: Vec<u32>,
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= p as u64 {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn digits(mut t: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((t % p as u64) as u32);
        t /= p as u64;
    }
    out
}

impl FieldSpec {
    /// Validates `(p, d, modulus)`. Without a modulus, the irreducible monic
    /// polynomial of degree d with the smallest coefficient encoding is used.
    pub fn new(p: u32, d: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        if (p as u64).checked_pow(d).map_or(true, |o| o > MAX_ORDER) {
            return Err(Error::FieldTooLarge { p, d });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 || m[d as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus { expected: d });
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.to_vec()
            }
            None => {
                let count = (p as u64).pow(d);
                let mut found = None;
                for t in 0..count {
                    let mut m = digits(t, p, d as usize);
                    m.push(1);
                    if poly::is_irreducible(&m, p) {
                        found = Some(m);
                        break;
                    }
                }
                // An irreducible polynomial of every degree exists over GF(p).
                found.expect("irreducible polynomial exists")
            }
        };
        Ok(FieldSpec { p, d, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.d)
    }
}

/// Equivalent to [`FieldSpec::new`].
pub fn make_field(p: u32, d: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    FieldSpec::new(p, d, modulus)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The field GF(p^d) together with its arithmetic tables.
#[derive(Debug, Clone)]
pub struct Gf {
    spec: FieldSpec,
    order: u32,
    /// `exp[i] = g^i` for i in [0, 2(order-1)), so products skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Full addition table, only for odd characteristic and small orders.
    add: Option<Vec<u16>>,
    generator: Elem,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Gf {}

impl Gf {
    pub fn new(spec: FieldSpec) -> Self {
        let order = spec.order();
        let p = spec.p;
        let d = spec.d as usize;

        let mut neg = vec![0u32; order as usize];
        for a in 0..order {
            let ds = digits(a as u64, p, d);
            neg[a as usize] = encode_digits(ds.iter().map(|&x| (p - x) % p), p).0;
        }

        let mut gf = Gf {
            spec,
            order,
            exp: Vec::new(),
            log: Vec::new(),
            neg,
            add: None,
            generator: Elem::ONE,
        };

        if p != 2 && order <= 1024 {
            let mut add = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    add[(a * order + b) as usize] = gf.add_digits(Elem(a), Elem(b)).0 as u16;
                }
            }
            gf.add = Some(add);
        }

        let group = order as u64 - 1;
        if group == 1 {
            gf.exp = vec![1, 1];
            gf.log = vec![0, 0];
            return gf;
        }
        let factors = prime_factors(group);
        let generator = (2..order)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| gf.pow_schoolbook(g, group / r) != Elem::ONE))
            .expect("multiplicative group is cyclic");
        gf.generator = generator;

        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; order as usize];
        let mut x = Elem::ONE;
        for i in 0..group as usize {
            exp[i] = x.0;
            exp[i + group as usize] = x.0;
            log[x.0 as usize] = i as u32;
            x = gf.mul_schoolbook(x, generator);
        }
        gf.exp = exp;
        gf.log = log;
        gf
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    /// Encoding-smallest generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order).map(Elem)
    }

    /// Image of an integer under Z -> GF(p).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    /// Element with the given polynomial coefficients (reduced mod p and
    /// mod the field modulus).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        let p = self.spec.p;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r = poly::rem(&reduced, &self.spec.modulus, p);
        encode_digits(r.into_iter(), p)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.spec.p, self.spec.d as usize)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.spec.p == 2 {
            Elem(a.0 ^ b.0)
        } else if let Some(t) = &self.add {
            Elem(t[(a.0 * self.order + b.0) as usize] as u32)
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut w = 1u32;
        for _ in 0..self.spec.d {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[i as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((group - l) % group) as usize]))
    }

    /// `a / b`; panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % group) % group;
        Elem(self.exp[l as usize])
    }

    /// `a^q`; an automorphism fixing GF(q) when q is a power of p.
    pub fn frobenius(&self, a: Elem, q: u64) -> Elem {
        self.pow(a, q)
    }

    /// Discrete logarithm to the base [`Gf::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Schoolbook product of representatives followed by reduction.
    /// Table-free; used to build the tables and as a reference path.
    pub fn mul_schoolbook(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        let prod = poly::mul_mod(&self.coeffs(a), &self.coeffs(b), &self.spec.modulus, p);
        encode_digits(prod.into_iter(), p)
    }

    fn pow_schoolbook(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, b);
            }
            b = self.mul_schoolbook(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element(&self, a: Elem) -> FieldElement<'_> {
        FieldElement { field: self, value: a }
    }
}

fn encode_digits(ds: impl Iterator<Item = u32>, p: u32) -> Elem {
    let mut out = 0u32;
    let mut w = 1u32;
    for x in ds {
        out += x * w;
        w = w.wrapping_mul(p);
    }
    Elem(out)
}

/// An element bound to the field it lives in. Mixing elements of different
/// fields is reported as [`Error::FieldMismatch`].
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    field: &'a Gf,
    value: Elem,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in GF({}^{})", self.value, self.field.spec.p, self.field.spec.d)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl<'a> FieldElement<'a> {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &'a Gf {
        self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if core::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement { field: self.field, value }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        Ok(self.value == other.value)
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }
}
