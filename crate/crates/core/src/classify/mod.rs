//! Isomorphism classification of the isotopes K^(f,g).

pub mod atlas;
pub mod canonical;
pub mod critical;
pub mod cubic;
pub mod oracle;
pub mod types;

use alloc::collections::BTreeSet;

use crate::algebra::IsotopePresentation;
use crate::error::Result;
use crate::ff::Elem;
use crate::galois::CyclicExtension;

pub use atlas::{atlas, atlas_with, AtlasConfig, AtlasMode, AtlasReport, TypeClasses, DEFAULT_BUDGET};
pub use canonical::{canonicalize, CanonicalForm};
pub use critical::{apply_critical, iso_critical, satisfies_critical, IsoWitness};
pub use cubic::{iso_cubic_cases, iso_cubic_cases_with, Reading};
pub use oracle::{iso_bruteforce, CanonicalKey, Oracle, ORACLE_BUDGET};
pub use types::{type_partition, Family, Partition, TypeTag};

/// Reduced-norm labels of f and g modulo N(K^x): each is the smallest
/// element of its coset det * N(K^x) in F^x.
///
/// Over finite fields the norm is onto F^x, so both labels are always 1;
/// the invariant is computed rather than assumed so that this stays checked.
pub fn det_invariant(ext: &CyclicExtension, p: &IsotopePresentation) -> Result<(Elem, Elem)> {
    let k = ext.field();
    let norms: BTreeSet<Elem> = k.nonzero().map(|a| ext.norm(a)).collect();
    let label = |d: Elem| -> Result<Elem> {
        if d.is_zero() {
            return Err(crate::error::Error::SingularOperator);
        }
        Ok(norms.iter().map(|&n| k.mul(d, n)).min().expect("norm image is nonempty"))
    };
    Ok((label(p.f.reduced_norm(ext))?, label(p.g.reduced_norm(ext))?))
}
