//! Kaplansky's trick and recognition of the heart as K.

use alloc::vec::Vec;

use super::{is_isomorphism, AlgebraStructure, IsotopePresentation};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::linalg::Matrix;
use crate::twistop::TwistedOperator;

/// A unital B with A = B^(f,g), f = R_A(v), g = L_A(u).
#[derive(Debug, Clone)]
pub struct Heart {
    pub algebra: AlgebraStructure,
    pub f: Matrix,
    pub g: Matrix,
    pub u: Vec<Elem>,
    pub v: Vec<Elem>,
    /// u v, the unit of the heart.
    pub unit: Vec<Elem>,
}

/// Heart built from the first regularity witnesses in encoding order.
pub fn kaplansky_heart(ext: &CyclicExtension, a: &AlgebraStructure) -> Result<Heart> {
    let (u, v) = a.is_regular(ext).ok_or(Error::SingularAlgebra)?;
    kaplansky_heart_with(ext, a, &u, &v)
}

/// B = A^(R(v)^-1, L(u)^-1) with unit u v.
pub fn kaplansky_heart_with(ext: &CyclicExtension, a: &AlgebraStructure, u: &[Elem], v: &[Elem]) -> Result<Heart> {
    let k = ext.field();
    let f = a.right_matrix(ext, v);
    let g = a.left_matrix(ext, u);
    let f_inv = f.inverse(k).ok_or(Error::SingularAlgebra)?;
    let g_inv = g.inverse(k).ok_or(Error::SingularAlgebra)?;
    let b = a.principal_isotope(ext, &f_inv, &g_inv)?;
    let unit = a.mul(ext, u, v);
    Ok(Heart { algebra: b, f, g, u: u.to_vec(), v: v.to_vec(), unit })
}

/// An F-algebra isomorphism B -> K, if B is a field of the same order.
///
/// The map sends the encoding-smallest b of degree n to the smallest root
/// of its minimal polynomial in K, extended along the power basis.
pub fn recognize_field_heart(ext: &CyclicExtension, b: &AlgebraStructure) -> Result<Matrix> {
    b.check(ext);
    let k = ext.field();
    let n = ext.degree();
    let e = b.unit(ext).ok_or(Error::NotAField("no unit element"))?;
    if !b.is_commutative() {
        return Err(Error::NotAField("not commutative"));
    }
    if !b.is_associative(ext) {
        return Err(Error::NotAField("not associative"));
    }
    if b.has_zero_divisors(ext) {
        return Err(Error::NotAField("has zero divisors"));
    }

    let space = ext.space();
    for enc in 0..space.size() {
        let x = space.decode(enc);
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(e.clone());
        for i in 0..n {
            let next = b.mul(ext, &powers[i], &x);
            powers.push(next);
        }
        let basis = Matrix::from_columns(&powers[..n]);
        let Some(basis_inv) = basis.inverse(k) else {
            continue;
        };
        // x^n = sum a_i x^i
        let a = basis_inv.mul_vec(&powers[n], k);
        let root = k
            .elements()
            .find(|&r| {
                let lhs = k.pow(r, n as u64);
                let rhs = a.iter().rev().fold(Elem::ZERO, |acc, &ai| k.add(k.mul(acc, r), ai));
                lhs == rhs
            })
            .ok_or(Error::NoRoot)?;
        let images: Vec<Vec<Elem>> =
            (0..n as u64).map(|i| ext.coords(k.pow(root, i)).to_vec()).collect();
        let psi = Matrix::from_columns(&images).mul(&basis_inv, k);
        let kk = AlgebraStructure::field(ext);
        if !is_isomorphism(ext, b, &kk, &psi) {
            return Err(Error::NoRoot);
        }
        return Ok(psi);
    }
    Err(Error::NotAField("no element of full degree"))
}

/// A presentation of A as an isotope of K, with the isomorphism
/// A -> K^(f,g).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub presentation: IsotopePresentation,
    pub map: Matrix,
}

/// Regularity, heart, recognition, then transport of (f, g) into twisted
/// form. `None` if A is singular or its heart is not K.
pub fn decompose_as_presentation(ext: &CyclicExtension, a: &AlgebraStructure) -> Option<Decomposition> {
    let k = ext.field();
    let heart = kaplansky_heart(ext, a).ok()?;
    let psi = recognize_field_heart(ext, &heart.algebra).ok()?;
    let psi_inv = psi.inverse(k)?;
    let conj = |m: &Matrix| psi.mul(m, k).mul(&psi_inv, k);
    let f = TwistedOperator::from_matrix(ext, &conj(&heart.f)).ok()?;
    let g = TwistedOperator::from_matrix(ext, &conj(&heart.g)).ok()?;
    Some(Decomposition { presentation: IsotopePresentation { f, g }, map: psi })
}
