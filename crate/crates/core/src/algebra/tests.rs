use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::twistop::TwistedOperator;

fn ext(p: u32, n: usize) -> CyclicExtension {
    CyclicExtension::build(p, 1, n).unwrap()
}

fn random_invertible(ext: &CyclicExtension, rng: &mut ChaCha8Rng) -> TwistedOperator {
    loop {
        let f = TwistedOperator::new((0..ext.degree()).map(|_| Elem(rng.gen_range(0..ext.order()))).collect());
        if f.is_invertible(ext) {
            return f;
        }
    }
}

fn random_presentation(ext: &CyclicExtension, rng: &mut ChaCha8Rng) -> IsotopePresentation {
    IsotopePresentation { f: random_invertible(ext, rng), g: random_invertible(ext, rng) }
}

fn tau_id(n: usize) -> IsotopePresentation {
    IsotopePresentation { f: TwistedOperator::tau_power(n, 1), g: TwistedOperator::identity(n) }
}

#[test]
fn trivial_isotope_is_identity() {
    let e = ext(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = AlgebraStructure::from_presentation(&e, &random_presentation(&e, &mut rng));
    let i = Matrix::identity(3);
    assert_eq!(a.isotope(&e, &i, &i, &i).unwrap(), a);
    assert_eq!(a.isotope(&e, &Matrix::zeros(3, 3), &i, &i), Err(Error::SingularMap));
}

#[test]
fn opposite_of_isotope_swaps_the_maps() {
    let e = ext(3, 3);
    let k = e.field();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut same_order_fails = false;
    for _ in 0..20 {
        let a = AlgebraStructure::from_presentation(&e, &random_presentation(&e, &mut rng));
        let f = random_invertible(&e, &mut rng).to_matrix(&e);
        let g = random_invertible(&e, &mut rng).to_matrix(&e);
        let lhs = a.principal_isotope(&e, &f, &g).unwrap().opposite();
        assert_eq!(lhs, a.opposite().principal_isotope(&e, &g, &f).unwrap());
        if lhs != a.opposite().principal_isotope(&e, &f, &g).unwrap() {
            same_order_fails = true;
        }
        assert!(!f.det(k).is_zero());
    }
    assert!(same_order_fails, "(A^(f,g))^op = (A^op)^(f,g) should fail somewhere");
}

#[test]
fn field_tensor_is_unital_commutative_associative() {
    for (p, n) in [(2, 3), (3, 3), (5, 2), (2, 4)] {
        let e = ext(p, n);
        let kk = AlgebraStructure::field(&e);
        assert_eq!(kk.unit(&e), Some(unit_vector(n, 0)));
        assert!(kk.is_commutative());
        assert!(kk.is_associative(&e));
        assert!(kk.is_division(&e));
        assert_eq!(kk.is_regular(&e), Some((unit_vector(n, 0), unit_vector(n, 0))));
    }
}

#[test]
fn zero_algebra_is_singular() {
    let e = ext(2, 3);
    let z = AlgebraStructure::zero(&e);
    assert_eq!(z.is_regular(&e), None);
    assert_eq!(z.unit(&e), None);
    assert!(z.has_zero_divisors(&e));
    assert!(matches!(kaplansky_heart(&e, &z), Err(Error::SingularAlgebra)));
    assert!(decompose_as_presentation(&e, &z).is_none());
}

#[test]
fn jordan_isotope_unit_is_inverse_of_uv() {
    let e = ext(3, 3);
    let k = e.field();
    for u in k.nonzero().step_by(4) {
        for v in k.nonzero().step_by(5) {
            let pres = IsotopePresentation {
                f: TwistedOperator::left_mul(3, u),
                g: TwistedOperator::left_mul(3, v),
            };
            let a = AlgebraStructure::from_presentation(&e, &pres);
            let w_inv = k.inv(k.mul(u, v)).unwrap();
            assert_eq!(a.unit(&e), Some(e.coords(w_inv).to_vec()));
        }
    }
}

#[test]
fn tau_isotope_is_noncommutative_division() {
    let e = ext(2, 3);
    let a = AlgebraStructure::from_presentation(&e, &tau_id(3));
    assert!(!a.is_commutative());
    assert!(a.is_division(&e));
    assert_eq!(a.unit(&e), None);
    assert!(a.is_regular(&e).is_some());
}

#[test]
fn zero_divisor_test_above_table_limit() {
    // q^n = 625 > TABLE_LIMIT: exercises the determinant criterion.
    let e = ext(5, 4);
    let kk = AlgebraStructure::field(&e);
    assert!(kk.mul_table(&e).is_none());
    assert!(kk.is_division(&e));
    let mut c = vec![Elem::ZERO; 64];
    c[0] = Elem::ONE;
    assert!(AlgebraStructure::from_tensor(&e, c).unwrap().has_zero_divisors(&e));
}

#[test]
fn heart_of_tau_isotope_is_gf8() {
    let e = ext(2, 3);
    let a = AlgebraStructure::from_presentation(&e, &tau_id(3));
    let h = kaplansky_heart(&e, &a).unwrap();
    let b = &h.algebra;
    assert_eq!(b.unit(&e), Some(h.unit.clone()));
    assert!(b.is_commutative());
    assert!(b.is_associative(&e));
    assert!(b.is_division(&e));
    assert_eq!(b.principal_isotope(&e, &h.f, &h.g).unwrap(), a);
    let psi = recognize_field_heart(&e, b).unwrap();
    assert!(is_isomorphism(&e, b, &AlgebraStructure::field(&e), &psi));
}

#[test]
fn heart_of_field_is_field() {
    let e = ext(3, 3);
    let kk = AlgebraStructure::field(&e);
    let h = kaplansky_heart(&e, &kk).unwrap();
    assert_eq!(h.algebra, kk);
    assert_eq!(h.f, Matrix::identity(3));
    assert_eq!(h.g, Matrix::identity(3));
    assert_eq!(recognize_field_heart(&e, &kk).unwrap(), Matrix::identity(3));
    let d = decompose_as_presentation(&e, &kk).unwrap();
    assert_eq!(d.presentation, IsotopePresentation::identity(3));
}

#[test]
fn split_etale_algebra_is_not_a_field() {
    let e = ext(2, 3);
    let mut c = vec![Elem::ZERO; 27];
    for i in 0..3 {
        c[(i * 3 + i) * 3 + i] = Elem::ONE;
    }
    let b = AlgebraStructure::from_tensor(&e, c).unwrap();
    assert_eq!(b.unit(&e), Some(vec![Elem::ONE; 3]));
    assert_eq!(recognize_field_heart(&e, &b), Err(Error::NotAField("has zero divisors")));
}

#[test]
fn from_tensor_validates() {
    let e = ext(3, 3);
    assert_eq!(
        AlgebraStructure::from_tensor(&e, vec![Elem::ZERO; 8]),
        Err(Error::DimensionMismatch { expected: 27, found: 8 })
    );
    let mut c = vec![Elem::ZERO; 27];
    c[4] = Elem(5);
    assert_eq!(AlgebraStructure::from_tensor(&e, c), Err(Error::FieldMismatch));
}

#[test]
fn decomposition_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, n) in [(2, 3), (3, 3), (3, 2)] {
        let e = ext(p, n);
        for _ in 0..25 {
            let pres = random_presentation(&e, &mut rng);
            let a = AlgebraStructure::from_presentation(&e, &pres);
            let d = decompose_as_presentation(&e, &a).unwrap();
            let b = AlgebraStructure::from_presentation(&e, &d.presentation);
            assert!(is_isomorphism(&e, &a, &b, &d.map));
        }
    }
}

#[test]
fn unital_iff_jordan_iff_field_heart() {
    let e = ext(3, 3);
    let k = e.field();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut unital = 0;
    for t in 0..60 {
        let pres = if t % 3 == 0 {
            let u = Elem(rng.gen_range(1..e.order()));
            let v = Elem(rng.gen_range(1..e.order()));
            IsotopePresentation { f: TwistedOperator::left_mul(3, u), g: TwistedOperator::left_mul(3, v) }
        } else {
            random_presentation(&e, &mut rng)
        };
        let a = AlgebraStructure::from_presentation(&e, &pres);
        let jordan = pres.f.as_left_mul().zip(pres.g.as_left_mul());
        let unit = a.unit(&e);
        assert_eq!(unit.is_some(), jordan.is_some());
        assert_eq!(recognize_field_heart(&e, &a).is_ok(), jordan.is_some());
        if let Some((u, v)) = jordan {
            unital += 1;
            assert_eq!(unit.unwrap(), e.coords(k.inv(k.mul(u, v)).unwrap()).to_vec());
        }
    }
    assert!(unital >= 20);
}

#[test]
fn isotopes_of_gf8_have_no_zero_divisors() {
    let e = ext(2, 3);
    let ops: Vec<TwistedOperator> = (0..512u32)
        .map(|t| TwistedOperator::new(vec![Elem(t % 8), Elem(t / 8 % 8), Elem(t / 64)]))
        .filter(|f| f.is_invertible(&e))
        .collect();
    assert_eq!(ops.len(), 168);
    for f in &ops {
        let pres = IsotopePresentation { f: f.clone(), g: ops[(f.coeff(0).0 * 7 + f.coeff(2).0) as usize % 168].clone() };
        assert!(AlgebraStructure::from_presentation(&e, &pres).is_division(&e));
    }
}
