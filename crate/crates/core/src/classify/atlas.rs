//! Enumerates isotopes of K, groups them by type, and splits each type into
//! isomorphism classes; optionally recomputes the partition with the
//! brute-force oracle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraStructure, IsotopePresentation};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::twistop::TwistedOperator;

use super::canonical::canonicalize;
use super::critical::iso_critical;
use super::oracle::{CanonicalKey, Oracle};
use super::types::TypeTag;

/// Default cap on the number of coefficient pairs a full run may touch.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtlasMode {
    /// Every pair of invertible operators.
    Full,
    /// `samples` random invertible pairs drawn from a seeded generator.
    Sampled { samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasConfig {
    pub mode: AtlasMode,
    pub seed: u64,
    pub oracle: bool,
    pub budget: u128,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        AtlasConfig { mode: AtlasMode::Full, seed: 0, oracle: false, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeClasses {
    pub tag: TypeTag,
    /// Presentations (with multiplicity) falling into this type.
    pub presentations: usize,
    /// Distinct canonical forms.
    pub canonical_forms: usize,
    pub class_count: usize,
    /// Smallest canonical form of each class, ascending.
    pub representatives: Vec<IsotopePresentation>,
    /// Number of distinct oracle keys among this type's presentations.
    pub oracle_class_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasReport {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub mode: AtlasMode,
    pub seed: u64,
    pub invertible_operators: usize,
    pub presentations: usize,
    pub types: Vec<TypeClasses>,
    pub oracle_checked: bool,
    /// Per-type class counts agree and no oracle key spans two types.
    pub oracle_agrees: Option<bool>,
}

/// Every invertible operator, ascending by coefficient encodings.
pub fn invertible_operators(ext: &CyclicExtension) -> Vec<TwistedOperator> {
    let n = ext.degree() as u32;
    let order = ext.order();
    (0..order.pow(n))
        .map(|mut t| {
            let mut c = Vec::with_capacity(n as usize);
            for _ in 0..n {
                c.push(Elem(t % order));
                t /= order;
            }
            c.reverse();
            TwistedOperator::new(c)
        })
        .filter(|f| f.is_invertible(ext))
        .collect()
}

pub fn random_invertible<R: Rng>(ext: &CyclicExtension, rng: &mut R) -> TwistedOperator {
    loop {
        let f = TwistedOperator::new((0..ext.degree()).map(|_| Elem(rng.gen_range(0..ext.order()))).collect());
        if f.is_invertible(ext) {
            return f;
        }
    }
}

/// Sequential oracle keys.
pub fn oracle_keys(ext: &CyclicExtension, oracle: &Oracle, pres: &[IsotopePresentation]) -> Vec<CanonicalKey> {
    pres.iter().map(|p| oracle.key_of(ext, &AlgebraStructure::from_presentation(ext, p))).collect()
}

pub fn atlas(ext: &CyclicExtension, config: &AtlasConfig) -> Result<AtlasReport> {
    atlas_with(ext, config, &|ext, oracle, pres| oracle_keys(ext, oracle, pres))
}

/// Like [`atlas`], with the oracle key computation supplied by the caller
/// (so it can be parallelized). `keys` must return one key per input, in
/// order.
pub fn atlas_with(
    ext: &CyclicExtension,
    config: &AtlasConfig,
    keys: &dyn Fn(&CyclicExtension, &Oracle, &[IsotopePresentation]) -> Vec<CanonicalKey>,
) -> Result<AtlasReport> {
    let n = ext.degree();
    let candidates = (ext.order() as u128).pow(n as u32);
    let (ops, pairs): (Vec<TwistedOperator>, Vec<IsotopePresentation>) = match config.mode {
        AtlasMode::Full => {
            let needed = candidates * candidates;
            if needed > config.budget {
                return Err(Error::BudgetExceeded { needed, budget: config.budget });
            }
            let ops = invertible_operators(ext);
            let mut pairs = Vec::with_capacity(ops.len() * ops.len());
            for f in &ops {
                for g in &ops {
                    pairs.push(IsotopePresentation { f: f.clone(), g: g.clone() });
                }
            }
            (ops, pairs)
        }
        AtlasMode::Sampled { samples } => {
            let needed = samples as u128 * ext.order() as u128;
            if needed > config.budget {
                return Err(Error::BudgetExceeded { needed, budget: config.budget });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let pairs = (0..samples)
                .map(|_| {
                    let f = random_invertible(ext, &mut rng);
                    let g = random_invertible(ext, &mut rng);
                    IsotopePresentation { f, g }
                })
                .collect();
            (Vec::new(), pairs)
        }
    };

    let oracle = if config.oracle { Some(Oracle::new(ext)?) } else { None };

    let mut by_type: BTreeMap<TypeTag, (usize, BTreeSet<IsotopePresentation>, Vec<usize>)> = BTreeMap::new();
    for (idx, p) in pairs.iter().enumerate() {
        let c = canonicalize(ext, p)?;
        let entry = by_type.entry(c.tag).or_default();
        entry.0 += 1;
        entry.1.insert(c.presentation);
        entry.2.push(idx);
    }

    let all_keys = match &oracle {
        Some(o) => {
            let ks = keys(ext, o, &pairs);
            assert_eq!(ks.len(), pairs.len(), "oracle hook must return one key per presentation");
            Some(ks)
        }
        None => None,
    };

    let mut types = Vec::with_capacity(by_type.len());
    let mut key_owner: BTreeMap<&CanonicalKey, &TypeTag> = BTreeMap::new();
    let mut keys_disjoint = true;
    for (tag, (count, forms, members)) in &by_type {
        let mut reps: Vec<IsotopePresentation> = Vec::new();
        for form in forms {
            let mut joined = false;
            for r in &reps {
                if iso_critical(ext, r, form)?.is_some() {
                    joined = true;
                    break;
                }
            }
            if !joined {
                reps.push(form.clone());
            }
        }
        let oracle_class_count = all_keys.as_ref().map(|ks| {
            let distinct: BTreeSet<&CanonicalKey> = members.iter().map(|&i| &ks[i]).collect();
            for k in &distinct {
                if let Some(prev) = key_owner.insert(k, tag) {
                    if prev != tag {
                        keys_disjoint = false;
                    }
                }
            }
            distinct.len()
        });
        types.push(TypeClasses {
            tag: tag.clone(),
            presentations: *count,
            canonical_forms: forms.len(),
            class_count: reps.len(),
            representatives: reps,
            oracle_class_count,
        });
    }

    let oracle_agrees = all_keys
        .as_ref()
        .map(|_| keys_disjoint && types.iter().all(|t| t.oracle_class_count == Some(t.class_count)));

    Ok(AtlasReport {
        p: ext.characteristic(),
        m: ext.m(),
        n,
        mode: config.mode,
        seed: config.seed,
        invertible_operators: ops.len(),
        presentations: pairs.len(),
        types,
        oracle_checked: config.oracle,
        oracle_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_has_168_invertible_operators() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        assert_eq!(invertible_operators(&ext).len(), 168);
    }

    #[test]
    fn full_run_over_gf3_exceeds_default_budget() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        assert!(matches!(atlas(&ext, &AtlasConfig::default()), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn quadratic_atlas_matches_oracle() {
        for (p, m) in [(2, 1), (3, 1)] {
            let ext = CyclicExtension::build(p, m, 2).unwrap();
            let cfg = AtlasConfig { oracle: true, ..AtlasConfig::default() };
            let report = atlas(&ext, &cfg).unwrap();
            assert_eq!(report.oracle_agrees, Some(true), "{report:#?}");
            let total: usize = report.types.iter().map(|t| t.presentations).sum();
            assert_eq!(total, report.presentations);
        }
    }

    #[test]
    fn sampled_run_is_deterministic() {
        let ext = CyclicExtension::build(3, 1, 3).unwrap();
        let cfg = AtlasConfig { mode: AtlasMode::Sampled { samples: 40 }, seed: 9, ..AtlasConfig::default() };
        assert_eq!(atlas(&ext, &cfg).unwrap(), atlas(&ext, &cfg).unwrap());
    }
}
