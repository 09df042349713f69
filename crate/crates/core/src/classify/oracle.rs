//! Brute-force isomorphism over GL(n, q).
//!
//! Independent of all the isotope theory: two algebras are isomorphic iff
//! some invertible phi satisfies phi(e_i e_j) = phi(e_i) phi(e_j) on basis
//! pairs. Maps are enumerated column by column, each column running over
//! the vectors outside the span of the previous ones in encoding order, so
//! the identity comes first.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraStructure, MulTable, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::linalg::Matrix;

/// Default cap on |GL(n, q)| * q^n.
pub const ORACLE_BUDGET: u128 = 1 << 26;

/// Orbit key of an algebra: the lexicographically smallest transported
/// table of basis products.
pub type CanonicalKey = Vec<u16>;

/// Every element of GL(n, q) with its action on all encoded vectors.
#[derive(Debug, Clone)]
pub struct Oracle {
    n: usize,
    size: u32,
    count: usize,
    /// `images[m * size + x] = enc(phi_m(x))`.
    images: Vec<u16>,
    /// `inverse[m * size + y] = enc(phi_m^-1(y))`.
    inverse: Vec<u16>,
    /// `columns[m * n + j] = enc(phi_m(e_j))`.
    columns: Vec<u16>,
}

fn gl_order(q: u128, n: u32) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

impl Oracle {
    pub fn new(ext: &CyclicExtension) -> Result<Self> {
        Self::with_budget(ext, ORACLE_BUDGET)
    }

    pub fn with_budget(ext: &CyclicExtension, budget: u128) -> Result<Self> {
        let n = ext.degree();
        let space = ext.space();
        let size = space.size();
        let count = gl_order(space.q() as u128, n as u32);
        let needed = count * size as u128;
        if needed > budget || size > TABLE_LIMIT {
            return Err(Error::BudgetExceeded { needed: needed.max(size as u128), budget });
        }
        let k = ext.field();
        let vecs: Vec<Vec<Elem>> = (0..size).map(|e| space.decode(e)).collect();
        let add = |a: u32, b: u32| -> u32 {
            let s: Vec<Elem> = vecs[a as usize].iter().zip(&vecs[b as usize]).map(|(&x, &y)| k.add(x, y)).collect();
            space.encode(&s)
        };
        let scal = |c: Elem, a: u32| -> u32 {
            let s: Vec<Elem> = vecs[a as usize].iter().map(|&x| k.mul(c, x)).collect();
            space.encode(&s)
        };
        let sum_table: Vec<u32> = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).map(|(a, b)| add(a, b)).collect();
        let scal_table: Vec<u32> =
            space_scalars(ext).iter().flat_map(|&c| (0..size).map(move |a| (c, a))).map(|(c, a)| scal(c, a)).collect();
        let q = space.q();

        let mut oracle = Oracle {
            n,
            size,
            count: count as usize,
            images: Vec::with_capacity(count as usize * size as usize),
            inverse: Vec::with_capacity(count as usize * size as usize),
            columns: Vec::with_capacity(count as usize * n),
        };
        // Depth-first over columns; span[x] marks membership in the span of
        // the columns chosen so far.
        let mut cols = vec![0u32; n];
        let mut spans: Vec<Vec<u32>> = vec![vec![0]];
        let mut choice = vec![0u32; n];
        let mut depth = 0usize;
        loop {
            if depth == n {
                oracle.push(&cols, size, q, &sum_table, &scal_table);
                depth -= 1;
                choice[depth] += 1;
                spans.pop();
                continue;
            }
            let span = &spans[depth];
            let mut in_span = vec![false; size as usize];
            for &x in span {
                in_span[x as usize] = true;
            }
            let next = (choice[depth]..size).find(|&x| !in_span[x as usize]);
            match next {
                Some(x) => {
                    cols[depth] = x;
                    choice[depth] = x;
                    let mut grown = Vec::with_capacity(span.len() * q as usize);
                    for ci in 0..q {
                        let cx = scal_table[(ci * size + x) as usize];
                        for &s in span {
                            grown.push(sum_table[(s * size + cx) as usize]);
                        }
                    }
                    spans.push(grown);
                    depth += 1;
                    if depth < n {
                        choice[depth] = 0;
                    }
                }
                None => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                    choice[depth] += 1;
                    spans.pop();
                }
            }
        }
        debug_assert_eq!(oracle.columns.len(), oracle.count * n);
        Ok(oracle)
    }

    fn push(&mut self, cols: &[u32], size: u32, q: u32, sum_table: &[u32], scal_table: &[u32]) {
        let base = self.images.len();
        self.images.resize(base + size as usize, 0);
        self.inverse.resize(base + size as usize, 0);
        for x in 0..size {
            // Digits of x are the coordinates in the standard basis.
            let mut acc = 0u32;
            let mut rest = x;
            for &c in cols {
                let d = rest % q;
                rest /= q;
                acc = sum_table[(acc * size + scal_table[(d * size + c) as usize]) as usize];
            }
            self.images[base + x as usize] = acc as u16;
            self.inverse[base + acc as usize] = x as u16;
        }
        self.columns.extend(cols.iter().map(|&c| c as u16));
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// The m-th map as a matrix.
    pub fn matrix(&self, ext: &CyclicExtension, m: usize) -> Matrix {
        let cols: Vec<Vec<Elem>> =
            (0..self.n).map(|j| ext.space().decode(self.columns[m * self.n + j] as u32)).collect();
        Matrix::from_columns(&cols)
    }

    /// Encoded basis products of `a`.
    pub fn basis_products(&self, ext: &CyclicExtension, a: &AlgebraStructure) -> Vec<u32> {
        let space = ext.space();
        let n = self.n;
        (0..n * n).map(|t| space.encode(a.basis_product(t / n, t % n))).collect()
    }

    /// First phi in enumeration order with phi: A -> B an isomorphism.
    pub fn find_isomorphism(&self, ext: &CyclicExtension, a: &AlgebraStructure, b: &AlgebraStructure) -> Option<Matrix> {
        let bt = b.mul_table(ext)?;
        let ap = self.basis_products(ext, a);
        self.find_with(&ap, &bt).map(|m| self.matrix(ext, m))
    }

    /// Index of the first map carrying products `ap` onto table `bt`.
    pub fn find_with(&self, ap: &[u32], bt: &MulTable) -> Option<usize> {
        let n = self.n;
        let size = self.size as usize;
        'maps: for m in 0..self.count {
            let img = &self.images[m * size..(m + 1) * size];
            let cols = &self.columns[m * n..(m + 1) * n];
            for i in 0..n {
                for j in 0..n {
                    if img[ap[i * n + j] as usize] as u32 != bt.mul(cols[i] as u32, cols[j] as u32) {
                        continue 'maps;
                    }
                }
            }
            return Some(m);
        }
        None
    }

    /// Minimum over phi of the basis products of phi^-1 . A, the algebra
    /// with x * y = phi^-1(phi(x) phi(y)). Equal keys iff isomorphic.
    pub fn canonical_key(&self, table: &MulTable) -> CanonicalKey {
        let n = self.n;
        let size = self.size as usize;
        let mut best: Option<CanonicalKey> = None;
        let mut cur = vec![0u16; n * n];
        for m in 0..self.count {
            let inv = &self.inverse[m * size..(m + 1) * size];
            let cols = &self.columns[m * n..(m + 1) * n];
            // Early-abort lexicographic comparison against the best so far.
            let mut state = core::cmp::Ordering::Equal;
            for t in 0..n * n {
                let x = inv[table.mul(cols[t / n] as u32, cols[t % n] as u32) as usize];
                cur[t] = x;
                if state == core::cmp::Ordering::Equal {
                    if let Some(b) = &best {
                        state = x.cmp(&b[t]);
                        if state == core::cmp::Ordering::Greater {
                            break;
                        }
                    } else {
                        state = core::cmp::Ordering::Less;
                    }
                }
            }
            if state == core::cmp::Ordering::Less {
                best = Some(cur.clone());
            }
        }
        best.expect("GL(n, q) is nonempty")
    }

    pub fn key_of(&self, ext: &CyclicExtension, a: &AlgebraStructure) -> CanonicalKey {
        self.canonical_key(&a.mul_table(ext).expect("oracle sizes fit the table limit"))
    }
}

fn space_scalars(ext: &CyclicExtension) -> Vec<Elem> {
    ext.subfield().to_vec()
}

/// One-shot brute force: builds the oracle and searches it.
pub fn iso_bruteforce(ext: &CyclicExtension, a: &AlgebraStructure, b: &AlgebraStructure) -> Result<Option<Matrix>> {
    if a.dim() != b.dim() || a.base_field() != b.base_field() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(Oracle::new(ext)?.find_isomorphism(ext, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_isomorphism, IsotopePresentation};
    use crate::twistop::TwistedOperator;

    #[test]
    fn enumerates_all_of_gl_with_identity_first() {
        for (p, m, n, order) in [(2, 1, 3, 168usize), (3, 1, 2, 48), (2, 1, 2, 6), (3, 1, 3, 11232), (2, 2, 2, 180)] {
            let ext = CyclicExtension::build(p, m, n).unwrap();
            let o = Oracle::new(&ext).unwrap();
            assert_eq!(o.len(), order);
            assert_eq!(o.matrix(&ext, 0), Matrix::identity(n));
            let mut seen = alloc::collections::BTreeSet::new();
            for i in 0..o.len() {
                let mx = o.matrix(&ext, i);
                assert!(!mx.det(ext.field()).is_zero());
                assert!(seen.insert(mx.entries().to_vec()));
                if i % 97 == 0 {
                    for x in 0..ext.space().size() {
                        let img = mx.mul_vec(&ext.space().decode(x), ext.field());
                        assert_eq!(o.images[i * o.size as usize + x as usize] as u32, ext.space().encode(&img));
                    }
                }
            }
        }
    }

    #[test]
    fn identity_found_first_for_equal_algebras() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let a = AlgebraStructure::field(&ext);
        assert_eq!(iso_bruteforce(&ext, &a, &a).unwrap(), Some(Matrix::identity(3)));
    }

    #[test]
    fn field_is_not_isomorphic_to_tau_isotope() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let a = AlgebraStructure::field(&ext);
        let pres = IsotopePresentation { f: TwistedOperator::tau_power(3, 1), g: TwistedOperator::identity(3) };
        let b = AlgebraStructure::from_presentation(&ext, &pres);
        assert_eq!(iso_bruteforce(&ext, &a, &b).unwrap(), None);
        let o = Oracle::new(&ext).unwrap();
        assert_ne!(o.key_of(&ext, &a), o.key_of(&ext, &b));
    }

    #[test]
    fn keys_agree_with_search() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let o = Oracle::new(&ext).unwrap();
        let ops: Vec<TwistedOperator> = (0..512u32)
            .map(|t| TwistedOperator::new(alloc::vec![Elem(t % 8), Elem(t / 8 % 8), Elem(t / 64)]))
            .filter(|f| f.is_invertible(&ext))
            .collect();
        let algs: Vec<AlgebraStructure> = ops
            .iter()
            .step_by(11)
            .map(|f| AlgebraStructure::from_presentation(&ext, &IsotopePresentation { f: f.clone(), g: ops[5].clone() }))
            .collect();
        for a in &algs {
            for b in &algs {
                let phi = o.find_isomorphism(&ext, a, b);
                if let Some(phi) = &phi {
                    assert!(is_isomorphism(&ext, a, b, phi));
                }
                assert_eq!(phi.is_some(), o.key_of(&ext, a) == o.key_of(&ext, b));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ext = CyclicExtension::build(5, 1, 3).unwrap();
        assert!(matches!(Oracle::with_budget(&ext, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
