//! Closed-form isomorphism conditions for n = 3, type by type.
//!
//! For types 1-3 the relation y'_0 = u y_0 forces u = 1, and the designated
//! coefficient (index d) must agree since both sides lie in M. The remaining
//! freedom is v = a w with a in F^x and w fixed by sigma:
//!
//! | d | sigma = tau   | sigma = tau^2 |
//! |---|---------------|---------------|
//! | 1 | y_1^-1        | tau^2(y_1)    |
//! | 2 | tau(y_2)      | y_2^-1        |
//!
//! after which the conditions are z'_j = tau^j(v) v^-1 sigma(y_j) and
//! g' = sigma g sigma^-1 L(v).

use alloc::vec::Vec;

use crate::algebra::IsotopePresentation;
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;

use super::critical::{iso_critical, IsoWitness};
use super::types::TypeTag;

/// Which reading of the type-2 conditions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Reading {
    /// Use v = a tau(y_2^-1) for sigma = tau instead of a tau(y_2).
    pub case2_tau_inverse: bool,
    /// Let a range over K^x instead of F^x for sigma = tau^2.
    pub case2_scalar_in_k: bool,
}

impl Reading {
    pub const DERIVED: Reading = Reading { case2_tau_inverse: false, case2_scalar_in_k: false };
}

/// Decides isomorphism of two canonical presentations of the same cubic
/// type from the closed-form conditions.
pub fn iso_cubic_cases(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Result<Option<IsoWitness>> {
    iso_cubic_cases_with(ext, p, q, Reading::DERIVED)
}

pub fn iso_cubic_cases_with(
    ext: &CyclicExtension,
    p: &IsotopePresentation,
    q: &IsotopePresentation,
    reading: Reading,
) -> Result<Option<IsoWitness>> {
    if ext.degree() != 3 {
        return Err(Error::Unsupported("closed-form cases exist only for n = 3"));
    }
    for op in [&p.f, &p.g, &q.f, &q.g] {
        if op.degree() != 3 {
            return Err(Error::ExtensionMismatch);
        }
    }
    let tp = TypeTag::of_presentation(p);
    let tq = TypeTag::of_presentation(q);
    if tp != tq {
        return Err(Error::TypeMismatch);
    }
    let t = tp.cubic.expect("n = 3");
    Ok(match t {
        1 | 3 => unit_types(ext, p, q, 1, reading),
        2 => unit_types(ext, p, q, 2, reading),
        4 => type4(ext, p, q)?,
        5 => type5(ext, p, q),
        6 => type6(ext, p, q),
        _ => monomial(ext, p, q, if t == 7 { 2 } else { 1 }),
    })
}

/// z'_i == tau^i(u v) u^-1 sigma(z_i) for all i.
fn g_relation(ext: &CyclicExtension, z: &[Elem], w: &[Elem], u: Elem, v: Elem, sigma: usize) -> bool {
    let k = ext.field();
    let uv = k.mul(u, v);
    let ui = k.inv(u).unwrap();
    (0..3).all(|i| w[i] == k.mul(k.mul(ext.tau_pow(i, uv), ui), ext.sigma(sigma, z[i])))
}

fn unit_types(
    ext: &CyclicExtension,
    p: &IsotopePresentation,
    q: &IsotopePresentation,
    d: usize,
    reading: Reading,
) -> Option<IsoWitness> {
    let k = ext.field();
    let y = p.f.coeffs();
    let z = q.f.coeffs();
    if y[d] != z[d] || y[0] != Elem::ONE || z[0] != Elem::ONE {
        return None;
    }
    let yd = y[d];
    let other = 3 - d;
    for sigma in 0..3 {
        let w = match (d, sigma) {
            (_, 0) => Elem::ONE,
            (1, 1) => k.inv(yd).unwrap(),
            (1, _) => ext.tau_pow(2, yd),
            (_, 1) if reading.case2_tau_inverse => ext.tau(k.inv(yd).unwrap()),
            (_, 1) => ext.tau(yd),
            (_, _) => k.inv(yd).unwrap(),
        };
        let variant_only = d == 2 && ((sigma == 1 && reading.case2_tau_inverse) || (sigma == 2 && reading.case2_scalar_in_k));
        // The coefficient at the non-designated index; a cancels out of it.
        if !y[other].is_zero() || !z[other].is_zero() {
            let expect = k.mul(k.div(ext.tau_pow(other, w), w), ext.sigma(sigma, y[other]));
            if z[other] != expect {
                continue;
            }
        }
        let scalars: Vec<Elem> = if d == 2 && sigma == 2 && reading.case2_scalar_in_k {
            k.nonzero().collect()
        } else {
            ext.subfield_units().to_vec()
        };
        for a in scalars {
            let v = k.mul(a, w);
            if !g_relation(ext, p.g.coeffs(), q.g.coeffs(), Elem::ONE, v, sigma) {
                continue;
            }
            if !variant_only && !designated_holds(ext, yd, v, d, sigma) {
                // The derivation guarantees this; a failure means the table
                // above is wrong, so do not report a witness.
                continue;
            }
            return Some(IsoWitness::CriticalRelations { u: Elem::ONE, v, sigma });
        }
    }
    None
}

fn designated_holds(ext: &CyclicExtension, yd: Elem, v: Elem, d: usize, sigma: usize) -> bool {
    let k = ext.field();
    yd == k.mul(k.div(ext.tau_pow(d, v), v), ext.sigma(sigma, yd))
}

/// f = id, g = L(x_1) tau + L(x_2) tau^2.
fn type4(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Result<Option<IsoWitness>> {
    let k = ext.field();
    let x = p.g.coeffs();
    let w = q.g.coeffs();
    match (x[1].is_zero(), w[1].is_zero()) {
        (true, true) => return iso_critical(ext, p, q),
        (true, false) | (false, true) => return Ok(None),
        _ => {}
    }
    for sigma in 0..3 {
        // w_2 = tau(w_1) sigma(tau(x_1^-1)) sigma(x_2)
        let rhs = k.mul(
            k.mul(ext.tau(w[1]), ext.sigma(sigma, ext.tau(k.inv(x[1]).unwrap()))),
            ext.sigma(sigma, x[2]),
        );
        if w[2] == rhs {
            let v = ext.tau_pow(2, k.div(w[1], ext.sigma(sigma, x[1])));
            return Ok(Some(IsoWitness::CriticalRelations { u: Elem::ONE, v, sigma }));
        }
    }
    Ok(None)
}

/// f = id, g = 1 + L(x_1) tau + L(x_2) tau^2: w_i = sigma(x_i).
fn type5(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Option<IsoWitness> {
    (0..3)
        .find(|&s| (0..3).all(|i| q.g.coeff(i) == ext.sigma(s, p.g.coeff(i))))
        .map(|sigma| IsoWitness::CriticalRelations { u: Elem::ONE, v: Elem::ONE, sigma })
}

/// f = tau + L(y_2) tau^2 with y_2 in M: v = a w with w = 1, y_2^-1,
/// tau^2(y_2) and u = tau^2(v) v^-1.
fn type6(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Option<IsoWitness> {
    let k = ext.field();
    let y2 = p.f.coeff(2);
    if q.f.coeff(2) != y2 || p.f.coeff(1) != Elem::ONE || q.f.coeff(1) != Elem::ONE {
        return None;
    }
    for sigma in 0..3 {
        let w = match sigma {
            0 => Elem::ONE,
            1 => k.inv(y2).unwrap(),
            _ => ext.tau_pow(2, y2),
        };
        for &a in ext.subfield_units() {
            let v = k.mul(a, w);
            let u = k.div(ext.tau_pow(2, v), v);
            if g_relation(ext, p.g.coeffs(), q.g.coeffs(), u, v, sigma) {
                return Some(IsoWitness::CriticalRelations { u, v, sigma });
            }
        }
    }
    None
}

/// f = tau^i: u = tau^(3-i)(v) v^-1, search v and sigma.
fn monomial(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation, i: usize) -> Option<IsoWitness> {
    let k = ext.field();
    if p.f.coeff(i) != Elem::ONE || q.f.coeff(i) != Elem::ONE {
        return None;
    }
    for sigma in 0..3 {
        for v in k.nonzero() {
            let u = k.div(ext.tau_pow(3 - i, v), v);
            if g_relation(ext, p.g.coeffs(), q.g.coeffs(), u, v, sigma) {
                return Some(IsoWitness::CriticalRelations { u, v, sigma });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::canonical::canonicalize;
    use crate::twistop::TwistedOperator;

    fn op(c: &[u32]) -> TwistedOperator {
        TwistedOperator::new(c.iter().map(|&x| Elem(x)).collect())
    }

    #[test]
    fn type5_identity_and_galois_twist() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let id = TwistedOperator::identity(3);
        let x = (1..27 * 27)
            .map(|t| [Elem::ONE, Elem(t % 27), Elem(t / 27)])
            .find(|x| ext.tau(x[1]) != x[1] && TwistedOperator::new(x.to_vec()).is_invertible(&ext))
            .unwrap();
        let g = TwistedOperator::new(x.to_vec());
        let p = IsotopePresentation { f: id.clone(), g };
        assert_eq!(iso_cubic_cases(&ext, &p, &p).unwrap(), Some(IsoWitness::identity()));
        let tw = TwistedOperator::new(x.iter().map(|&c| ext.tau(c)).collect());
        let q = IsotopePresentation { f: id, g: tw };
        let w = iso_cubic_cases(&ext, &p, &q).unwrap().unwrap();
        assert_eq!(w, IsoWitness::CriticalRelations { u: Elem::ONE, v: Elem::ONE, sigma: 1 });
        assert!(w.verify(&ext, &p, &q));
    }

    #[test]
    fn type_mismatch_is_an_error() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let p = IsotopePresentation::identity(3);
        let q = IsotopePresentation { f: op(&[0, 1, 0]), g: op(&[1, 0, 0]) };
        assert_eq!(iso_cubic_cases(&ext, &p, &q), Err(Error::TypeMismatch));
    }

    #[test]
    fn agrees_with_search_on_random_canonical_pairs() {
        use rand::{Rng, SeedableRng};
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut random_inv = || loop {
            let f = TwistedOperator::new((0..3).map(|_| Elem(rng.gen_range(0..27))).collect());
            if f.is_invertible(&ext) {
                return f;
            }
        };
        let mut agree = 0;
        for _ in 0..150 {
            let p = canonicalize(&ext, &IsotopePresentation { f: random_inv(), g: random_inv() }).unwrap();
            // An isomorphic partner, re-canonicalized, plus an unrelated g.
            let twisted = crate::classify::critical::apply_critical(&ext, &p.presentation, Elem(5), Elem(7), 2);
            let q = canonicalize(&ext, &twisted).unwrap();
            let r = IsotopePresentation { f: p.presentation.f.clone(), g: random_inv() };
            for other in [&q.presentation, &r] {
                let fast = iso_cubic_cases(&ext, &p.presentation, other).unwrap();
                let slow = iso_critical(&ext, &p.presentation, other).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{:?} vs {:?}", p.presentation, other);
                if let Some(w) = fast {
                    assert!(w.verify(&ext, &p.presentation, other));
                }
                agree += 1;
            }
        }
        assert_eq!(agree, 300);
    }
}
