//! Isomorphism of isotopes of K via the critical relations
//!
//!   y'_i = tau^i(u v) v^-1 sigma(y_i),   z'_i = tau^i(u v) u^-1 sigma(z_i),
//!
//! equivalently f' = L(v^-1) sigma f sigma^-1 L(uv) and
//! g' = L(u^-1) sigma g sigma^-1 L(uv). The isomorphism
//! K^(f,g) -> K^(f',g') is then phi = L((uv)^-1) sigma.

use alloc::vec::Vec;

use crate::algebra::{is_isomorphism, AlgebraStructure, IsotopePresentation};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::{gcd, CyclicExtension};
use crate::linalg::Matrix;
use crate::twistop::TwistedOperator;

/// A certified isomorphism between two isotopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoWitness {
    /// sigma = tau^sigma.
    CriticalRelations { u: Elem, v: Elem, sigma: usize },
    ExplicitMap(Matrix),
}

impl IsoWitness {
    pub fn identity() -> Self {
        IsoWitness::CriticalRelations { u: Elem::ONE, v: Elem::ONE, sigma: 0 }
    }

    /// The F-linear map K^(f,g) -> K^(f',g').
    pub fn to_matrix(&self, ext: &CyclicExtension) -> Matrix {
        match self {
            IsoWitness::ExplicitMap(m) => m.clone(),
            &IsoWitness::CriticalRelations { u, v, sigma } => {
                let k = ext.field();
                let c = k.inv(k.mul(u, v)).expect("witness entries are units");
                let mut phi = TwistedOperator::tau_power(ext.degree(), sigma);
                phi = TwistedOperator::left_mul(ext.degree(), c).compose(ext, &phi);
                phi.to_matrix(ext)
            }
        }
    }

    /// Re-verifies the witness from scratch: both relations (g in operator
    /// form) for critical witnesses, all basis products for explicit maps.
    pub fn verify(&self, ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> bool {
        match self {
            &IsoWitness::CriticalRelations { u, v, sigma } => satisfies_critical(ext, p, q, u, v, sigma),
            IsoWitness::ExplicitMap(phi) => is_isomorphism(
                ext,
                &AlgebraStructure::from_presentation(ext, p),
                &AlgebraStructure::from_presentation(ext, q),
                phi,
            ),
        }
    }
}

/// The presentation (f', g') obtained from (u, v, sigma).
pub fn apply_critical(ext: &CyclicExtension, p: &IsotopePresentation, u: Elem, v: Elem, sigma: usize) -> IsotopePresentation {
    let k = ext.field();
    let uv = k.mul(u, v);
    let vi = k.inv(v).expect("v is a unit");
    let ui = k.inv(u).expect("u is a unit");
    let map = |op: &TwistedOperator, c: Elem| {
        TwistedOperator::new(
            op.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &y)| k.mul(k.mul(ext.tau_pow(i, uv), c), ext.sigma(sigma, y)))
                .collect(),
        )
    };
    IsotopePresentation { f: map(&p.f, vi), g: map(&p.g, ui) }
}

/// Coefficient form for f, operator form for g.
pub fn satisfies_critical(
    ext: &CyclicExtension,
    p: &IsotopePresentation,
    q: &IsotopePresentation,
    u: Elem,
    v: Elem,
    sigma: usize,
) -> bool {
    let n = ext.degree();
    if u.is_zero() || v.is_zero() || p.f.degree() != n || q.f.degree() != n {
        return false;
    }
    let k = ext.field();
    let uv = k.mul(u, v);
    let vi = k.inv(v).unwrap();
    let f_ok = (0..n).all(|i| q.f.coeff(i) == k.mul(k.mul(ext.tau_pow(i, uv), vi), ext.sigma(sigma, p.f.coeff(i))));
    if !f_ok {
        return false;
    }
    let s = TwistedOperator::tau_power(n, sigma);
    let s_inv = TwistedOperator::tau_power(n, n - sigma % n);
    let g = TwistedOperator::left_mul(n, k.inv(u).unwrap())
        .compose(ext, &s)
        .compose(ext, &p.g)
        .compose(ext, &s_inv)
        .compose(ext, &TwistedOperator::left_mul(n, uv));
    g == q.g
}

#[inline]
fn coeffs_match(ext: &CyclicExtension, src: &[Elem], dst: &[Elem], uv: Elem, c: Elem, sigma: usize) -> bool {
    let k = ext.field();
    src.iter()
        .zip(dst)
        .enumerate()
        .all(|(i, (&y, &y2))| y2 == k.mul(k.mul(ext.tau_pow(i, uv), c), ext.sigma(sigma, y)))
}

/// Decides K^(f,g) = K^(f',g') by searching (sigma, u, v), returning the
/// first witness in (sigma, enc u, enc v) order.
///
/// u and v are pinned by the constant coefficients when those are nonzero;
/// otherwise a nonzero coefficient at a generating index restricts v to one
/// Hilbert 90 coset per (sigma, u).
pub fn iso_critical(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Result<Option<IsoWitness>> {
    let n = ext.degree();
    for op in [&p.f, &p.g, &q.f, &q.g] {
        if op.degree() != n {
            return Err(Error::ExtensionMismatch);
        }
    }
    let k = ext.field();
    let all_units: Vec<Elem> = k.nonzero().collect();
    let gen_idx = (1..n).find(|&i| gcd(i, n) == 1 && !p.f.coeff(i).is_zero());

    for sigma in 0..n {
        let sy: Vec<Elem> = p.f.coeffs().iter().map(|&y| ext.sigma(sigma, y)).collect();
        let sz: Vec<Elem> = p.g.coeffs().iter().map(|&z| ext.sigma(sigma, z)).collect();
        // Zero patterns are invariant.
        if sy.iter().zip(q.f.coeffs()).any(|(a, b)| a.is_zero() != b.is_zero())
            || sz.iter().zip(q.g.coeffs()).any(|(a, b)| a.is_zero() != b.is_zero())
        {
            continue;
        }
        // y'_0 = u sigma(y_0)
        let u_cands: Vec<Elem> = if sy[0].is_zero() { all_units.clone() } else { alloc::vec![k.div(q.f.coeff(0), sy[0])] };
        for &u in &u_cands {
            let ui = k.inv(u).unwrap();
            let v_cands: Vec<Elem> = if !sz[0].is_zero() {
                // z'_0 = v sigma(z_0)
                alloc::vec![k.div(q.g.coeff(0), sz[0])]
            } else if let Some(i) = gen_idx {
                // tau^i(v) / v = y'_i / (tau^i(u) sigma(y_i))
                let s = k.div(q.f.coeff(i), k.mul(ext.tau_pow(i, u), sy[i]));
                let Ok(v0) = ext.hilbert90_solve_power(s, i) else {
                    continue;
                };
                let mut c: Vec<Elem> = ext.subfield_units().iter().map(|&a| k.mul(a, v0)).collect();
                c.sort_unstable();
                c
            } else {
                all_units.clone()
            };
            for &v in &v_cands {
                let uv = k.mul(u, v);
                let vi = k.inv(v).unwrap();
                if coeffs_match(ext, &sy, q.f.coeffs(), uv, vi, 0) && coeffs_match(ext, &sz, q.g.coeffs(), uv, ui, 0) {
                    return Ok(Some(IsoWitness::CriticalRelations { u, v, sigma }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_invertible(ext: &CyclicExtension, rng: &mut ChaCha8Rng) -> TwistedOperator {
        loop {
            let f = TwistedOperator::new((0..ext.degree()).map(|_| Elem(rng.gen_range(0..ext.order()))).collect());
            if f.is_invertible(ext) {
                return f;
            }
        }
    }

    #[test]
    fn self_isomorphism_is_trivial_witness() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = IsotopePresentation { f: random_invertible(&ext, &mut rng), g: random_invertible(&ext, &mut rng) };
            assert_eq!(iso_critical(&ext, &p, &p).unwrap(), Some(IsoWitness::identity()));
        }
    }

    #[test]
    fn transformed_presentation_is_found_and_verifies() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let k = ext.field();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let p = IsotopePresentation { f: random_invertible(&ext, &mut rng), g: random_invertible(&ext, &mut rng) };
            let u = Elem(rng.gen_range(1..ext.order()));
            let v = Elem(rng.gen_range(1..ext.order()));
            let s = rng.gen_range(0..3);
            let q = apply_critical(&ext, &p, u, v, s);
            assert!(satisfies_critical(&ext, &p, &q, u, v, s));
            let w = iso_critical(&ext, &p, &q).unwrap().expect("isomorphic by construction");
            assert!(w.verify(&ext, &p, &q));
            let phi = w.to_matrix(&ext);
            assert!(IsoWitness::ExplicitMap(phi).verify(&ext, &p, &q));
            assert!(!k.mul(u, v).is_zero());
        }
    }

    #[test]
    fn critical_transforms_compose_for_trivial_sigma() {
        let ext = CyclicExtension::build(2, 2, 3).unwrap();
        let k = ext.field();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let p = IsotopePresentation { f: random_invertible(&ext, &mut rng), g: random_invertible(&ext, &mut rng) };
            let (u1, v1, u2, v2) = (
                Elem(rng.gen_range(1..ext.order())),
                Elem(rng.gen_range(1..ext.order())),
                Elem(rng.gen_range(1..ext.order())),
                Elem(rng.gen_range(1..ext.order())),
            );
            let twice = apply_critical(&ext, &apply_critical(&ext, &p, u1, v1, 0), u2, v2, 0);
            assert_eq!(twice, apply_critical(&ext, &p, k.mul(u1, u2), k.mul(v1, v2), 0));
        }
    }

    #[test]
    fn scaling_gives_isomorphic_isotope() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10 {
            let p = IsotopePresentation { f: random_invertible(&ext, &mut rng), g: random_invertible(&ext, &mut rng) };
            for &a in ext.subfield_units() {
                for &b in ext.subfield_units() {
                    let q = IsotopePresentation { f: p.f.scale(&ext, a), g: p.g.scale(&ext, b) };
                    let w = iso_critical(&ext, &p, &q).unwrap().unwrap();
                    assert!(w.verify(&ext, &p, &q));
                }
            }
        }
    }

    #[test]
    fn different_zero_patterns_are_not_isomorphic() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let id = TwistedOperator::identity(3);
        let p = IsotopePresentation { f: TwistedOperator::tau_power(3, 1), g: id.clone() };
        let q = IsotopePresentation { f: id.clone(), g: id };
        assert_eq!(iso_critical(&ext, &p, &q).unwrap(), None);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let p = IsotopePresentation::identity(3);
        let q = IsotopePresentation::identity(2);
        assert_eq!(iso_critical(&ext, &p, &q), Err(Error::ExtensionMismatch));
    }
}
