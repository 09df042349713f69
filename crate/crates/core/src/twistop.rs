//! Twisted operators f = sum L(y_i) tau^i in End_F(K).
//!
//! Every F-linear endomorphism of K has exactly one such expression, and
//! composition follows the split cyclic algebra (K/F, tau, 1):
//! (y_i t^i)(z_j t^j) = y_i tau^i(z_j) t^(i+j), t^n = 1.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::linalg::Matrix;

/// Coefficients (y_0, ..., y_{n-1}) of sum L(y_i) tau^i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistedOperator {
    coeffs: Vec<Elem>,
}

impl TwistedOperator {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        assert!(!coeffs.is_empty(), "an operator needs at least one coefficient");
        TwistedOperator { coeffs }
    }

    pub fn identity(n: usize) -> Self {
        Self::left_mul(n, Elem::ONE)
    }

    /// L(u).
    pub fn left_mul(n: usize, u: Elem) -> Self {
        let mut coeffs = vec![Elem::ZERO; n];
        coeffs[0] = u;
        TwistedOperator { coeffs }
    }

    /// tau^i.
    pub fn tau_power(n: usize, i: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n];
        coeffs[i % n] = Elem::ONE;
        TwistedOperator { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs[i]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0] == Elem::ONE && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(u)` when the operator is L(u).
    pub fn as_left_mul(&self) -> Option<Elem> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then_some(self.coeffs[0])
    }

    fn check(&self, ext: &CyclicExtension) {
        assert_eq!(self.coeffs.len(), ext.degree(), "operator degree differs from the extension degree");
    }

    pub fn apply(&self, ext: &CyclicExtension, x: Elem) -> Elem {
        self.check(ext);
        let k = ext.field();
        self.coeffs
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &y)| if y.is_zero() { acc } else { k.add(acc, k.mul(y, ext.tau_pow(i, x))) })
    }

    /// `self` after `other`: (f g)(x) = f(g(x)).
    pub fn compose(&self, ext: &CyclicExtension, other: &TwistedOperator) -> TwistedOperator {
        self.check(ext);
        other.check(ext);
        let n = ext.degree();
        let k = ext.field();
        let mut out = vec![Elem::ZERO; n];
        for (i, &y) in self.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (j, &z) in other.coeffs.iter().enumerate() {
                if z.is_zero() {
                    continue;
                }
                let slot = (i + j) % n;
                out[slot] = k.add(out[slot], k.mul(y, ext.tau_pow(i, z)));
            }
        }
        TwistedOperator { coeffs: out }
    }

    /// a * f for a in K acting on the left, i.e. L(a) f.
    pub fn scale(&self, ext: &CyclicExtension, a: Elem) -> TwistedOperator {
        let k = ext.field();
        TwistedOperator { coeffs: self.coeffs.iter().map(|&y| k.mul(a, y)).collect() }
    }

    /// sigma f sigma^-1 for sigma = tau^s: coefficients sigma(y_i).
    pub fn conjugate(&self, ext: &CyclicExtension, s: usize) -> TwistedOperator {
        TwistedOperator { coeffs: self.coeffs.iter().map(|&y| ext.sigma(s, y)).collect() }
    }

    /// Matrix over F in the fixed basis; column k holds the coordinates of
    /// f(b_k).
    pub fn to_matrix(&self, ext: &CyclicExtension) -> Matrix {
        let cols: Vec<Vec<Elem>> =
            ext.basis().iter().map(|&b| ext.coords(self.apply(ext, b)).to_vec()).collect();
        Matrix::from_columns(&cols)
    }

    /// Inverse of [`to_matrix`](Self::to_matrix): solves for the F-coordinates
    /// of every y_i against the operators L(b_k) tau^i.
    pub fn from_matrix(ext: &CyclicExtension, mx: &Matrix) -> Result<TwistedOperator> {
        let n = ext.degree();
        if mx.rows() != n || mx.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: mx.rows().max(mx.cols()) });
        }
        if mx.entries().iter().any(|&c| !ext.in_subfield(c)) {
            return Err(Error::FieldMismatch);
        }
        // Unknown (i, k) is the k-th coordinate of y_i; its column is the
        // flattened matrix of L(b_k) tau^i.
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            for &b in ext.basis() {
                let mut op = vec![Elem::ZERO; n];
                op[i] = b;
                cols.push(TwistedOperator { coeffs: op }.to_matrix(ext).entries().to_vec());
            }
        }
        let system = Matrix::from_columns(&cols);
        let sol = system.solve(mx.entries(), ext.field()).ok_or(Error::SingularSystem)?;
        let coeffs = sol.chunks(n).map(|c| ext.from_coords(c)).collect();
        Ok(TwistedOperator { coeffs })
    }

    /// The right-multiplication matrix R(y) of y = sum y_i t^i over K: entry
    /// (r, j) is tau^j(y_{r-j}).
    pub fn right_mul_matrix(&self, ext: &CyclicExtension) -> Matrix {
        let n = ext.degree();
        let mut r = Matrix::zeros(n, n);
        for row in 0..n {
            for j in 0..n {
                r.set(row, j, ext.tau_pow(j, self.coeffs[(row + n - j) % n]));
            }
        }
        r
    }

    /// N_{A_0/F}(y) = det_K R(y); equals det_F of the operator.
    pub fn reduced_norm(&self, ext: &CyclicExtension) -> Elem {
        self.check(ext);
        self.right_mul_matrix(ext).det(ext.field())
    }

    pub fn is_invertible(&self, ext: &CyclicExtension) -> bool {
        !self.reduced_norm(ext).is_zero()
    }

    pub fn inverse(&self, ext: &CyclicExtension) -> Result<TwistedOperator> {
        let inv = self.to_matrix(ext).inverse(ext.field()).ok_or(Error::SingularOperator)?;
        Self::from_matrix(ext, &inv)
    }
}

/// N(y0) + N(y1) + N(y2) - T(y0 tau(y1) tau^2(y2)), the reduced norm for n = 3.
pub fn cubic_reduced_norm(ext: &CyclicExtension, y: &[Elem]) -> Elem {
    assert_eq!(y.len(), 3);
    let k = ext.field();
    let sum = k.add(k.add(ext.norm(y[0]), ext.norm(y[1])), ext.norm(y[2]));
    let cross = k.mul(k.mul(y[0], ext.tau(y[1])), ext.tau_pow(2, y[2]));
    k.sub(sum, ext.trace(cross))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_op(ext: &CyclicExtension, rng: &mut ChaCha8Rng) -> TwistedOperator {
        TwistedOperator::new((0..ext.degree()).map(|_| Elem(rng.gen_range(0..ext.order()))).collect())
    }

    fn all_ops(ext: &CyclicExtension) -> impl Iterator<Item = TwistedOperator> + '_ {
        let n = ext.degree() as u32;
        let order = ext.order();
        (0..order.pow(n)).map(move |mut t| {
            let mut c = Vec::new();
            for _ in 0..n {
                c.push(Elem(t % order));
                t /= order;
            }
            TwistedOperator::new(c)
        })
    }

    #[test]
    fn apply_examples() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let k = ext.field();
        let alpha = Elem(2);
        for x in k.elements() {
            assert_eq!(TwistedOperator::identity(3).apply(&ext, x), x);
            assert_eq!(TwistedOperator::tau_power(3, 1).apply(&ext, x), ext.tau(x));
        }
        let f = TwistedOperator::new(vec![Elem::ONE, alpha, Elem::ZERO]);
        let a3 = k.mul(alpha, k.mul(alpha, alpha));
        assert_eq!(f.apply(&ext, alpha), k.add(alpha, a3));
    }

    #[test]
    fn compose_matches_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 3), (2, 1, 4)] {
            let ext = CyclicExtension::build(p, m, n).unwrap();
            let tau = TwistedOperator::tau_power(n, 1);
            assert_eq!(tau.compose(&ext, &tau), TwistedOperator::tau_power(n, 2));
            for _ in 0..100 {
                let f = random_op(&ext, &mut rng);
                let g = random_op(&ext, &mut rng);
                let x = Elem(rng.gen_range(0..ext.order()));
                let fg = f.compose(&ext, &g);
                assert_eq!(fg.apply(&ext, x), f.apply(&ext, g.apply(&ext, x)));
                assert_eq!(TwistedOperator::identity(n).compose(&ext, &g), g);
                assert_eq!(fg.to_matrix(&ext), f.to_matrix(&ext).mul(&g.to_matrix(&ext), ext.field()));
            }
        }
    }

    #[test]
    fn matrix_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, m, n) in [(2, 1, 3), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let ext = CyclicExtension::build(p, m, n).unwrap();
            assert_eq!(
                TwistedOperator::from_matrix(&ext, &Matrix::identity(n)).unwrap(),
                TwistedOperator::identity(n)
            );
            for _ in 0..100 {
                let f = random_op(&ext, &mut rng);
                assert_eq!(TwistedOperator::from_matrix(&ext, &f.to_matrix(&ext)).unwrap(), f);
            }
        }
    }

    #[test]
    fn from_matrix_is_onto_for_gf4_over_gf2() {
        // Every 2x2 matrix over GF(2) is hit exactly once.
        let ext = CyclicExtension::build(2, 1, 2).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for f in all_ops(&ext) {
            let mx = f.to_matrix(&ext);
            assert_eq!(TwistedOperator::from_matrix(&ext, &mx).unwrap(), f);
            assert!(seen.insert(mx.entries().to_vec()));
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn reduced_norm_is_determinant_exhaustive_gf8() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        let mut count = 0;
        for f in all_ops(&ext) {
            let rn = f.reduced_norm(&ext);
            assert_eq!(rn, f.to_matrix(&ext).det(ext.field()));
            assert_eq!(rn, cubic_reduced_norm(&ext, f.coeffs()));
            assert!(ext.in_subfield(rn));
            count += 1;
        }
        assert_eq!(count, 512);
    }

    #[test]
    fn reduced_norm_examples() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        assert_eq!(TwistedOperator::identity(3).reduced_norm(&ext), Elem::ONE);
        let f = TwistedOperator::new(vec![Elem::ONE, Elem(2), Elem::ZERO]);
        assert_eq!(f.reduced_norm(&ext), Elem::ZERO);
        assert_eq!(f.inverse(&ext), Err(Error::SingularOperator));
        assert_eq!(TwistedOperator::identity(3).inverse(&ext).unwrap(), TwistedOperator::identity(3));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let mut done = 0;
        while done < 100 {
            let f = random_op(&ext, &mut rng);
            if !f.is_invertible(&ext) {
                continue;
            }
            let inv = f.inverse(&ext).unwrap();
            assert_eq!(inv.compose(&ext, &f), TwistedOperator::identity(3));
            assert_eq!(f.compose(&ext, &inv), TwistedOperator::identity(3));
            done += 1;
        }
    }

    #[test]
    fn left_mul_laws() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let k = ext.field();
        assert!(TwistedOperator::left_mul(3, Elem::ONE).is_identity());
        for u in k.nonzero().step_by(5) {
            for v in k.nonzero().step_by(7) {
                let lu = TwistedOperator::left_mul(3, u);
                assert_eq!(lu.compose(&ext, &TwistedOperator::left_mul(3, v)), TwistedOperator::left_mul(3, k.mul(u, v)));
                assert_eq!(lu.apply(&ext, v), k.mul(u, v));
            }
        }
    }

    #[test]
    fn critical_transform_preserves_invertibility() {
        // y'_i = tau^i(u v) v^-1 sigma(y_i) keeps f in GL(V).
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let k = ext.field();
        for _ in 0..300 {
            let f = random_op(&ext, &mut rng);
            if !f.is_invertible(&ext) {
                continue;
            }
            let u = Elem(rng.gen_range(1..ext.order()));
            let v = Elem(rng.gen_range(1..ext.order()));
            let s = rng.gen_range(0..3);
            let uv = k.mul(u, v);
            let y: Vec<Elem> = (0..3)
                .map(|i| k.mul(k.div(ext.tau_pow(i, uv), v), ext.sigma(s, f.coeff(i))))
                .collect();
            assert!(TwistedOperator::new(y).is_invertible(&ext));
        }
    }
}
