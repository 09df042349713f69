//! Structure tensors on V = F^n, principal Albert isotopes, and the
//! Kaplansky heart of a regular algebra.
//!
//! Vectors are F-coordinate slices in the fixed basis of K. The extension
//! is passed to every operation that does arithmetic; it must have the same
//! base field and dimension as the algebra.

mod heart;

use alloc::vec;
use alloc::vec::Vec;

pub use heart::{decompose_as_presentation, kaplansky_heart, kaplansky_heart_with, recognize_field_heart, Decomposition, Heart};

use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::linalg::Matrix;
use crate::twistop::TwistedOperator;

/// Above this many vectors the multiplication table is not materialized and
/// the zero-divisor test switches to the determinant criterion.
pub const TABLE_LIMIT: u32 = 512;

/// A pair (f, g) of invertible twisted operators standing for K^(f,g).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsotopePresentation {
    pub f: TwistedOperator,
    pub g: TwistedOperator,
}

impl IsotopePresentation {
    /// Checks degrees and invertibility of both operators.
    pub fn new(ext: &CyclicExtension, f: TwistedOperator, g: TwistedOperator) -> Result<Self> {
        for op in [&f, &g] {
            if op.degree() != ext.degree() {
                return Err(Error::DimensionMismatch { expected: ext.degree(), found: op.degree() });
            }
            if !op.is_invertible(ext) {
                return Err(Error::SingularOperator);
            }
        }
        Ok(IsotopePresentation { f, g })
    }

    pub fn identity(n: usize) -> Self {
        IsotopePresentation { f: TwistedOperator::identity(n), g: TwistedOperator::identity(n) }
    }
}

/// e_i e_j = sum_k c[i][j][k] e_k over F.
#[derive(Debug, Clone)]
pub struct AlgebraStructure {
    n: usize,
    p: u32,
    m: u32,
    /// Flattened, index (i n + j) n + k.
    c: Vec<Elem>,
    provenance: Option<IsotopePresentation>,
}

impl PartialEq for AlgebraStructure {
    /// Tensor equality; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.p == other.p && self.m == other.m && self.c == other.c
    }
}

impl Eq for AlgebraStructure {}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = Elem::ONE;
    v
}

impl AlgebraStructure {
    pub fn from_tensor(ext: &CyclicExtension, c: Vec<Elem>) -> Result<Self> {
        let n = ext.degree();
        if c.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, found: c.len() });
        }
        if c.iter().any(|&x| !ext.in_subfield(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(AlgebraStructure { n, p: ext.characteristic(), m: ext.m(), c, provenance: None })
    }

    pub fn zero(ext: &CyclicExtension) -> Self {
        let n = ext.degree();
        AlgebraStructure { n, p: ext.characteristic(), m: ext.m(), c: vec![Elem::ZERO; n * n * n], provenance: None }
    }

    /// x . y = f(x) g(y) in K.
    pub fn from_presentation(ext: &CyclicExtension, pres: &IsotopePresentation) -> Self {
        let n = ext.degree();
        let k = ext.field();
        let fb: Vec<Elem> = ext.basis().iter().map(|&b| pres.f.apply(ext, b)).collect();
        let gb: Vec<Elem> = ext.basis().iter().map(|&b| pres.g.apply(ext, b)).collect();
        let mut c = Vec::with_capacity(n * n * n);
        for &x in &fb {
            for &y in &gb {
                c.extend_from_slice(ext.coords(k.mul(x, y)));
            }
        }
        AlgebraStructure { n, p: ext.characteristic(), m: ext.m(), c, provenance: Some(pres.clone()) }
    }

    /// The tensor of K itself.
    pub fn field(ext: &CyclicExtension) -> Self {
        Self::from_presentation(ext, &IsotopePresentation::identity(ext.degree()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// (p, m) with F = GF(p^m).
    pub fn base_field(&self) -> (u32, u32) {
        (self.p, self.m)
    }

    pub fn tensor(&self) -> &[Elem] {
        &self.c
    }

    pub fn provenance(&self) -> Option<&IsotopePresentation> {
        self.provenance.as_ref()
    }

    /// Coordinates of e_i e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Elem] {
        let s = (i * self.n + j) * self.n;
        &self.c[s..s + self.n]
    }

    pub(crate) fn check(&self, ext: &CyclicExtension) {
        assert!(
            self.n == ext.degree() && self.p == ext.characteristic() && self.m == ext.m(),
            "algebra and extension disagree on base field or dimension"
        );
    }

    pub fn mul(&self, ext: &CyclicExtension, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.check(ext);
        let k = ext.field();
        let n = self.n;
        let mut out = vec![Elem::ZERO; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = k.mul(ai, bj);
                for (o, &cij) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o = k.add(*o, k.mul(s, cij));
                }
            }
        }
        out
    }

    /// Matrix of x -> a x.
    pub fn left_matrix(&self, ext: &CyclicExtension, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|j| self.mul(ext, a, &unit_vector(self.n, j))).collect();
        Matrix::from_columns(&cols)
    }

    /// Matrix of x -> x b.
    pub fn right_matrix(&self, ext: &CyclicExtension, b: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|i| self.mul(ext, &unit_vector(self.n, i), b)).collect();
        Matrix::from_columns(&cols)
    }

    /// The homotope x . y = h(f(x) g(y)).
    pub fn isotope(&self, ext: &CyclicExtension, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<Self> {
        self.check(ext);
        let k = ext.field();
        for mx in [f, g, h] {
            if mx.rows() != self.n || mx.cols() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: mx.rows() });
            }
            if mx.det(k).is_zero() {
                return Err(Error::SingularMap);
            }
        }
        let fcols: Vec<Vec<Elem>> = (0..self.n).map(|i| f.column(i)).collect();
        let gcols: Vec<Vec<Elem>> = (0..self.n).map(|j| g.column(j)).collect();
        let mut c = Vec::with_capacity(self.c.len());
        for fi in &fcols {
            for gj in &gcols {
                c.extend(h.mul_vec(&self.mul(ext, fi, gj), k));
            }
        }
        Ok(AlgebraStructure { n: self.n, p: self.p, m: self.m, c, provenance: None })
    }

    /// The principal isotope A^(f,g).
    pub fn principal_isotope(&self, ext: &CyclicExtension, f: &Matrix, g: &Matrix) -> Result<Self> {
        self.isotope(ext, f, g, &Matrix::identity(self.n))
    }

    /// x . y = y x.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let mut c = Vec::with_capacity(self.c.len());
        for i in 0..n {
            for j in 0..n {
                c.extend_from_slice(self.basis_product(j, i));
            }
        }
        AlgebraStructure { n, p: self.p, m: self.m, c, provenance: None }
    }

    /// Products of all encoded vector pairs; `None` above [`TABLE_LIMIT`].
    pub fn mul_table(&self, ext: &CyclicExtension) -> Option<MulTable> {
        let space = ext.space();
        let size = space.size();
        if size > TABLE_LIMIT {
            return None;
        }
        let vecs: Vec<Vec<Elem>> = (0..size).map(|e| space.decode(e)).collect();
        let mut prod = Vec::with_capacity((size * size) as usize);
        for a in &vecs {
            let la = self.left_matrix(ext, a);
            for b in &vecs {
                prod.push(space.encode(&la.mul_vec(b, ext.field())));
            }
        }
        Some(MulTable { size, prod })
    }

    /// First u (in encoding order) with L(u) invertible and first v with R(v)
    /// invertible.
    pub fn is_regular(&self, ext: &CyclicExtension) -> Option<(Vec<Elem>, Vec<Elem>)> {
        let u = self.left_invertible(ext).next()?;
        let v = self.right_invertible(ext).next()?;
        Some((u, v))
    }

    pub fn left_invertible<'a>(&'a self, ext: &'a CyclicExtension) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let space = ext.space();
        (0..space.size())
            .map(move |e| space.decode(e))
            .filter(move |a| !self.left_matrix(ext, a).det(ext.field()).is_zero())
    }

    pub fn right_invertible<'a>(&'a self, ext: &'a CyclicExtension) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let space = ext.space();
        (0..space.size())
            .map(move |e| space.decode(e))
            .filter(move |b| !self.right_matrix(ext, b).det(ext.field()).is_zero())
    }

    /// The two-sided unit, if any.
    pub fn unit(&self, ext: &CyclicExtension) -> Option<Vec<Elem>> {
        // A unit e has L(e) = R(e) = id; L(e) is linear in e, so solve for it.
        let n = self.n;
        let k = ext.field();
        // Row (j, k): sum_i e_i c[i][j][k] = delta_jk, and the same for c[j][i][k].
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for t in 0..n {
                rows.push((0..n).map(|i| self.basis_product(i, j)[t]).collect::<Vec<_>>());
                rows.push((0..n).map(|i| self.basis_product(j, i)[t]).collect::<Vec<_>>());
                let d = if j == t { Elem::ONE } else { Elem::ZERO };
                rhs.push(d);
                rhs.push(d);
            }
        }
        let candidate = Matrix::from_rows(rows).solve_unique(&rhs, k)?;
        let ok = (0..n).all(|j| {
            let ej = unit_vector(n, j);
            self.mul(ext, &candidate, &ej) == ej && self.mul(ext, &ej, &candidate) == ej
        });
        ok.then_some(candidate)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// (e_i e_j) e_k = e_i (e_j e_k) on all basis triples.
    pub fn is_associative(&self, ext: &CyclicExtension) -> bool {
        let n = self.n;
        for i in 0..n {
            let ei = unit_vector(n, i);
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for t in 0..n {
                    let et = unit_vector(n, t);
                    let jt = self.basis_product(j, t).to_vec();
                    if self.mul(ext, &ij, &et) != self.mul(ext, &ei, &jt) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exhaustive over pairs up to [`TABLE_LIMIT`] vectors, otherwise exact
    /// via det L(a) = 0 for some a != 0.
    pub fn has_zero_divisors(&self, ext: &CyclicExtension) -> bool {
        match self.mul_table(ext) {
            Some(t) => t.has_zero_divisors(),
            None => {
                let space = ext.space();
                (1..space.size()).any(|e| self.left_matrix(ext, &space.decode(e)).det(ext.field()).is_zero())
            }
        }
    }

    pub fn is_division(&self, ext: &CyclicExtension) -> bool {
        !self.has_zero_divisors(ext)
    }
}

/// All products of encoded vectors, `prod[a * size + b] = enc(a b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulTable {
    size: u32,
    prod: Vec<u32>,
}

impl MulTable {
    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.prod[(a * self.size + b) as usize]
    }

    pub fn has_zero_divisors(&self) -> bool {
        (1..self.size).any(|a| (1..self.size).any(|b| self.mul(a, b) == 0))
    }
}

/// Checks phi(x y) = phi(x) phi(y) on all basis pairs for a map A -> B.
pub fn is_isomorphism(ext: &CyclicExtension, a: &AlgebraStructure, b: &AlgebraStructure, phi: &Matrix) -> bool {
    let k = ext.field();
    let n = a.dim();
    if b.dim() != n || phi.rows() != n || phi.cols() != n || phi.det(k).is_zero() {
        return false;
    }
    let imgs: Vec<Vec<Elem>> = (0..n).map(|i| phi.column(i)).collect();
    (0..n).all(|i| {
        (0..n).all(|j| phi.mul_vec(a.basis_product(i, j), k) == b.mul(ext, &imgs[i], &imgs[j]))
    })
}

#[cfg(test)]
mod tests;
