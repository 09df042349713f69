//! Normal forms of presentations under the critical relations with
//! sigma = id.

use crate::algebra::IsotopePresentation;
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::{gcd, CyclicExtension};

use super::critical::apply_critical;
use super::types::{first_generating, TypeTag};

/// A normalized presentation together with the (u, v) taking the original
/// to it (sigma = id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub presentation: IsotopePresentation,
    pub tag: TypeTag,
    pub u: Elem,
    pub v: Elem,
}

/// Normalization steps, in order:
///
/// 1. y_0 != 0: u = y_0^-1 makes y_0 = 1.
/// 2. y_0 = 1: scale the first nonzero coefficient at a generating index
///    into M. If f = id instead, make g's constant coefficient 0 or 1.
/// 3. y_0 = 0: scale the first nonzero generating coefficient y_i to 1,
///    then the next y_j with tau^(j-i) generating into M.
///
/// Steps compose multiplicatively in (u, v).
pub fn canonicalize(ext: &CyclicExtension, p: &IsotopePresentation) -> Result<CanonicalForm> {
    let n = ext.degree();
    if p.f.degree() != n || p.g.degree() != n {
        return Err(Error::ExtensionMismatch);
    }
    let k = ext.field();
    let mut cur = p.clone();
    let (mut u_acc, mut v_acc) = (Elem::ONE, Elem::ONE);
    let mut step = |cur: &mut IsotopePresentation, u: Elem, v: Elem| {
        *cur = apply_critical(ext, cur, u, v, 0);
        u_acc = k.mul(u_acc, u);
        v_acc = k.mul(v_acc, v);
    };

    let y0 = cur.f.coeff(0);
    if !y0.is_zero() {
        let u = k.inv(y0)?;
        step(&mut cur, u, Elem::ONE);
        if cur.f.is_identity() {
            let x0 = cur.g.coeff(0);
            if !x0.is_zero() {
                step(&mut cur, Elem::ONE, k.inv(x0)?);
            }
        } else if let Some(i) = first_generating(ext, cur.f.coeffs()) {
            let (_, v) = ext.scale_to_m(cur.f.coeff(i), i)?;
            step(&mut cur, Elem::ONE, v);
        }
    } else if let Some(i) = first_generating(ext, cur.f.coeffs()) {
        // tau^i(u) y_i = 1
        let u = ext.tau_pow(n - i, k.inv(cur.f.coeff(i))?);
        step(&mut cur, u, Elem::ONE);
        let next = (1..n).find(|&j| j != i && !cur.f.coeff(j).is_zero() && gcd((j + n - i) % n, n) == 1);
        if let Some(j) = next {
            // Keeping y_i = 1 forces u = tau^-i(v) / v; then
            // y'_j = tau^(j-i)(v) / v y_j.
            let (_, v) = ext.scale_to_m(cur.f.coeff(j), (j + n - i) % n)?;
            let u = k.div(ext.tau_pow(n - i, v), v);
            step(&mut cur, u, v);
        }
    }

    debug_assert!(cur.f.coeff(0) == Elem::ZERO || cur.f.coeff(0) == Elem::ONE);
    let tag = TypeTag::of_presentation(&cur);
    Ok(CanonicalForm { presentation: cur, tag, u: u_acc, v: v_acc })
}
