//! The cyclic extension K = GF(q^n) over F = GF(q) with generator
//! tau: x -> x^q.
//!
//! Everything that the classifier touches in inner loops is tabulated at
//! construction: the powers of tau, norm, trace, F-coordinates in the fixed
//! basis, the norm-one group S(K), the transversal M of K^x / S(K) and the
//! Hilbert 90 preimages for every generating power of tau.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::{make_field, Elem, FieldSpec, Gf};
use crate::space::VecSpace;

const NONE: u32 = u32::MAX;

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone)]
pub struct CyclicExtension {
    field: Gf,
    p: u32,
    m: u32,
    n: usize,
    q: u32,
    order: u32,
    /// `tau_tab[i * order + a] = tau^i(a)` for i < n.
    tau_tab: Vec<u32>,
    norm: Vec<Elem>,
    trace: Vec<Elem>,
    /// Elements of F, ascending by encoding.
    subfield: Vec<Elem>,
    basis: Vec<Elem>,
    /// `coords[a * n + k]` is the k-th F-coordinate of a.
    coords: Vec<Elem>,
    norm_one: Vec<Elem>,
    reps: Vec<Elem>,
    /// Representative of each norm class, indexed by the encoding of the norm.
    rep_by_norm: Vec<u32>,
    /// `h90[i][s]`: encoding-smallest v with tau^i(v)/v = s, for generating i.
    h90: Vec<Vec<u32>>,
    space: VecSpace,
}

impl CyclicExtension {
    /// K = GF(p^(m n)), F = GF(p^m), tau = (x -> x^(p^m)).
    pub fn build(p: u32, m: u32, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroDegree);
        }
        let total = m.checked_mul(n as u32).ok_or(Error::FieldTooLarge { p, d: u32::MAX })?;
        Self::build_with(make_field(p, total, None)?, m, n)
    }

    /// Like [`build`](Self::build) over an explicit model of K, whose degree
    /// must be m n.
    pub fn build_with(spec: FieldSpec, m: u32, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroDegree);
        }
        if spec.degree() as u64 != m as u64 * n as u64 {
            return Err(Error::DimensionMismatch { expected: m as usize * n, found: spec.degree() as usize });
        }
        let p = spec.characteristic();
        let field = Gf::new(spec);
        let order = field.order();
        let q = p.pow(m);

        let mut tau_tab = vec![0u32; n * order as usize];
        for a in 0..order {
            let mut x = Elem(a);
            for i in 0..n {
                tau_tab[i * order as usize + a as usize] = x.0;
                x = field.frobenius(x, q as u64);
            }
            debug_assert_eq!(x, Elem(a), "tau has order n");
        }

        let mut norm = Vec::with_capacity(order as usize);
        let mut trace = Vec::with_capacity(order as usize);
        for a in 0..order {
            let mut nm = Elem::ONE;
            let mut tr = Elem::ZERO;
            for i in 0..n {
                let x = Elem(tau_tab[i * order as usize + a as usize]);
                nm = field.mul(nm, x);
                tr = field.add(tr, x);
            }
            norm.push(nm);
            trace.push(tr);
        }

        let subfield: Vec<Elem> =
            field.elements().filter(|&a| n == 1 || Elem(tau_tab[order as usize + a.0 as usize]) == a).collect();
        debug_assert_eq!(subfield.len() as u32, q);

        let g = field.generator();
        let basis: Vec<Elem> = (0..n as u64).map(|k| field.pow(g, k)).collect();
        let space = VecSpace::new(&field, &subfield, n);

        let mut coords = vec![Elem(NONE); order as usize * n];
        for enc in 0..space.size() {
            let c = space.decode(enc);
            let x = c
                .iter()
                .zip(&basis)
                .fold(Elem::ZERO, |acc, (&ci, &b)| field.add(acc, field.mul(ci, b)));
            let slot = &mut coords[x.0 as usize * n..(x.0 as usize + 1) * n];
            assert_eq!(slot[0], Elem(NONE), "basis powers of the primitive root are F-independent");
            slot.copy_from_slice(&c);
        }

        let norm_one: Vec<Elem> = field.nonzero().filter(|&a| norm[a.0 as usize] == Elem::ONE).collect();

        let mut rep_by_norm = vec![NONE; order as usize];
        let mut reps = Vec::new();
        for a in field.nonzero() {
            let c = norm[a.0 as usize];
            if rep_by_norm[c.0 as usize] == NONE {
                rep_by_norm[c.0 as usize] = a.0;
                reps.push(a);
            }
        }

        let mut h90 = vec![Vec::new(); n];
        for (i, table) in h90.iter_mut().enumerate().skip(1) {
            if gcd(i, n) != 1 {
                continue;
            }
            *table = vec![NONE; order as usize];
            for v in field.nonzero() {
                let tv = Elem(tau_tab[i * order as usize + v.0 as usize]);
                let s = field.div(tv, v);
                if table[s.0 as usize] == NONE {
                    table[s.0 as usize] = v.0;
                }
            }
        }
        if n == 1 {
            // tau = id generates the trivial group; S(K) = {1} and v = 1 works.
            h90[0] = vec![NONE; order as usize];
            h90[0][1] = 1;
        }

        Ok(CyclicExtension {
            field,
            p,
            m,
            n,
            q,
            order,
            tau_tab,
            norm,
            trace,
            subfield,
            basis,
            coords,
            norm_one,
            reps,
            rep_by_norm,
            h90,
            space,
        })
    }

    /// The ambient field K.
    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// log_p of the subfield order.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Extension degree [K : F].
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Order of the base field F.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of K.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn primitive_root(&self) -> Elem {
        self.field.generator()
    }

    /// The fixed F-basis 1, g, ..., g^(n-1) of K.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn subfield(&self) -> &[Elem] {
        &self.subfield
    }

    pub fn subfield_units(&self) -> &[Elem] {
        &self.subfield[1..]
    }

    pub fn in_subfield(&self, a: Elem) -> bool {
        self.space.f_index(a).is_some()
    }

    /// The coordinate space V = F^n.
    pub fn space(&self) -> &VecSpace {
        &self.space
    }

    /// `tau^i(a)`, i taken mod n.
    #[inline]
    pub fn tau_pow(&self, i: usize, a: Elem) -> Elem {
        Elem(self.tau_tab[(i % self.n) * self.order as usize + a.0 as usize])
    }

    #[inline]
    pub fn tau(&self, a: Elem) -> Elem {
        self.tau_pow(1, a)
    }

    #[inline]
    pub fn norm(&self, a: Elem) -> Elem {
        self.norm[a.0 as usize]
    }

    #[inline]
    pub fn trace(&self, a: Elem) -> Elem {
        self.trace[a.0 as usize]
    }

    /// F-coordinates of `a` in [`basis`](Self::basis).
    pub fn coords(&self, a: Elem) -> &[Elem] {
        &self.coords[a.0 as usize * self.n..(a.0 as usize + 1) * self.n]
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        c.iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&ci, &b)| self.field.add(acc, self.field.mul(ci, b)))
    }

    /// The norm-one subgroup S(K), ascending.
    pub fn norm_one_set(&self) -> &[Elem] {
        &self.norm_one
    }

    /// The transversal M of K^x / S(K): the encoding-smallest element of each
    /// norm class, ascending. Always starts with 1.
    pub fn representatives(&self) -> &[Elem] {
        &self.reps
    }

    pub fn is_representative(&self, a: Elem) -> bool {
        !a.is_zero() && self.rep_by_norm[self.norm(a).0 as usize] == a.0
    }

    /// The element of M in the S(K)-coset of y.
    pub fn reduce(&self, y: Elem) -> Result<Elem> {
        if y.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(Elem(self.rep_by_norm[self.norm(y).0 as usize]))
    }

    /// Encoding-smallest v in K^x with s = tau(v) / v.
    pub fn hilbert90_solve(&self, s: Elem) -> Result<Elem> {
        self.hilbert90_solve_power(s, 1)
    }

    /// Encoding-smallest v in K^x with s = tau^i(v) / v, for tau^i generating
    /// the Galois group.
    pub fn hilbert90_solve_power(&self, s: Elem, i: usize) -> Result<Elem> {
        let i = self.generating_power(i)?;
        if s.is_zero() || self.norm(s) != Elem::ONE {
            return Err(Error::NormNotOne);
        }
        let v = self.h90[i][s.0 as usize];
        debug_assert_ne!(v, NONE, "Hilbert 90");
        Ok(Elem(v))
    }

    fn generating_power(&self, i: usize) -> Result<usize> {
        if self.n == 1 {
            return Ok(0);
        }
        if i == 0 || i >= self.n || gcd(i, self.n) != 1 {
            return Err(Error::NonGeneratingPower(i));
        }
        Ok(i)
    }

    /// Returns `(m, v)` with m in M, m = tau^i(v) v^-1 y.
    pub fn scale_to_m(&self, y: Elem, i: usize) -> Result<(Elem, Elem)> {
        let i = self.generating_power(i)?;
        let m = self.reduce(y)?;
        let s = self.field.div(m, y);
        let v = self.hilbert90_solve_power(s, i)?;
        Ok((m, v))
    }

    /// Applies the Galois automorphism tau^sigma.
    #[inline]
    pub fn sigma(&self, sigma: usize, a: Elem) -> Elem {
        self.tau_pow(sigma, a)
    }
}
