//! The N^0 / N^1 / N^2 partition and type tags.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::IsotopePresentation;
use crate::ff::Elem;
use crate::galois::{gcd, CyclicExtension};
use crate::twistop::TwistedOperator;

/// Indices of zero, nonzero non-invertible, and invertible coefficients.
/// N^1 is always empty because K is a field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub n2: Vec<usize>,
}

pub fn type_partition(f: &TwistedOperator) -> Partition {
    let mut p = Partition { n0: Vec::new(), n1: Vec::new(), n2: Vec::new() };
    for (i, &y) in f.coeffs().iter().enumerate() {
        if y.is_zero() {
            p.n0.push(i);
        } else {
            p.n2.push(i);
        }
    }
    p
}

/// The five families of the degree-n enumeration, with f = id split by
/// whether g has a nonzero constant coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// y_0 = 1 and every y_i nonzero.
    UnitFull,
    /// y_0 = 1, some y_i zero, f != id.
    UnitSparse,
    /// f = id; `unital_g` when g has x_0 != 0.
    Identity { unital_g: bool },
    /// y_0 = 0 and every other y_i nonzero.
    ZeroFull,
    /// y_0 = 0 and at least one further y_i zero.
    ZeroSparse,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeTag {
    /// Cubic type 1-8, for n = 3.
    pub cubic: Option<u8>,
    pub family: Family,
    pub partition: Partition,
}

impl TypeTag {
    pub fn of(f: &TwistedOperator, g: &TwistedOperator) -> TypeTag {
        let partition = type_partition(f);
        let y = f.coeffs();
        let rest_zero = y[1..].iter().all(|c| c.is_zero());
        let rest_full = y[1..].iter().all(|c| !c.is_zero());
        let family = if !y[0].is_zero() {
            if rest_zero {
                Family::Identity { unital_g: !g.coeff(0).is_zero() }
            } else if rest_full {
                Family::UnitFull
            } else {
                Family::UnitSparse
            }
        } else if rest_full {
            Family::ZeroFull
        } else {
            Family::ZeroSparse
        };
        let cubic = (y.len() == 3).then(|| cubic_index(y, family));
        TypeTag { cubic, family, partition }
    }

    pub fn of_presentation(p: &IsotopePresentation) -> TypeTag {
        Self::of(&p.f, &p.g)
    }

    /// Stable numeric label: the cubic type for n = 3, otherwise the family
    /// number 1-5 (f = id counts as 3).
    pub fn index(&self) -> u8 {
        if let Some(c) = self.cubic {
            return c;
        }
        match self.family {
            Family::UnitFull => 1,
            Family::UnitSparse => 2,
            Family::Identity { .. } => 3,
            Family::ZeroFull => 4,
            Family::ZeroSparse => 5,
        }
    }
}

fn cubic_index(y: &[Elem], family: Family) -> u8 {
    match (family, y[1].is_zero(), y[2].is_zero()) {
        (Family::Identity { unital_g: false }, ..) => 4,
        (Family::Identity { unital_g: true }, ..) => 5,
        (Family::UnitFull, ..) => 1,
        (Family::UnitSparse, true, false) => 2,
        (Family::UnitSparse, false, true) => 3,
        (Family::ZeroFull, ..) => 6,
        (_, true, false) => 7,
        (_, false, true) => 8,
        _ => unreachable!("invertible operators have a nonzero coefficient"),
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {} N0={:?}", self.index(), self.partition.n0)
    }
}

/// Smallest i in 1..n with tau^i generating and y_i != 0.
pub(crate) fn first_generating(ext: &CyclicExtension, y: &[Elem]) -> Option<usize> {
    (1..ext.degree()).find(|&i| gcd(i, ext.degree()) == 1 && !y[i].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn op(c: &[u32]) -> TwistedOperator {
        TwistedOperator::new(c.iter().map(|&x| Elem(x)).collect())
    }

    #[test]
    fn partition_examples() {
        let p = type_partition(&TwistedOperator::identity(3));
        assert_eq!(p.n2, vec![0]);
        assert_eq!(p.n0, vec![1, 2]);
        let p = type_partition(&op(&[1, 2, 0]));
        assert_eq!((p.n0, p.n2), (vec![2], vec![0, 1]));
        let p = type_partition(&op(&[0, 3, 5]));
        assert_eq!((p.n0, p.n2), (vec![0], vec![1, 2]));
        assert!(p.n1.is_empty());
    }

    #[test]
    fn cubic_indices() {
        let id = TwistedOperator::identity(3);
        let cases: [(&[u32], &[u32], u8); 8] = [
            (&[1, 2, 3], &[1, 0, 0], 1),
            (&[1, 0, 3], &[1, 0, 0], 2),
            (&[1, 2, 0], &[1, 0, 0], 3),
            (&[1, 0, 0], &[0, 1, 0], 4),
            (&[1, 0, 0], &[1, 1, 0], 5),
            (&[0, 2, 3], &[1, 0, 0], 6),
            (&[0, 0, 3], &[1, 0, 0], 7),
            (&[0, 2, 0], &[1, 0, 0], 8),
        ];
        for (f, g, t) in cases {
            assert_eq!(TypeTag::of(&op(f), &op(g)).index(), t);
        }
        assert_eq!(TypeTag::of(&id, &id).cubic, Some(5));
    }

    #[test]
    fn generic_families() {
        let g = TwistedOperator::identity(4);
        assert_eq!(TypeTag::of(&op(&[1, 1, 1, 1]), &g).family, Family::UnitFull);
        assert_eq!(TypeTag::of(&op(&[1, 0, 1, 1]), &g).family, Family::UnitSparse);
        assert_eq!(TypeTag::of(&op(&[0, 1, 1, 1]), &g).family, Family::ZeroFull);
        assert_eq!(TypeTag::of(&op(&[0, 1, 0, 1]), &g).family, Family::ZeroSparse);
        assert_eq!(TypeTag::of(&op(&[0, 1, 0, 1]), &g).index(), 5);
        assert_eq!(TypeTag::of(&op(&[1, 0, 0, 0]), &g).cubic, None);
    }
}
