//! The subcommands, independent of argument parsing. Each returns the JSON
//! report and whether the properties it checks held.

use std::io::Read;

use isotope_core::algebra::{decompose_as_presentation, kaplansky_heart, recognize_field_heart};
use isotope_core::classify::{
    atlas_with, canonicalize, iso_bruteforce, iso_critical, iso_cubic_cases, satisfies_critical, AtlasConfig,
    AtlasMode, IsoWitness, DEFAULT_BUDGET,
};
use isotope_core::verify::{run_suites, Level};
use isotope_core::{AlgebraStructure, CyclicExtension, Elem, IsotopePresentation, TwistedOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::format::{
    encs, operator, AtlasJson, ExtensionJson, FieldSpecJson, PairJson, SuiteJson, TensorJson, WitnessJson,
};

pub struct Outcome {
    pub value: Value,
    pub pass: bool,
}

impl Outcome {
    fn new(value: impl Serialize, pass: bool) -> Self {
        Outcome { value: serde_json::to_value(value).expect("reports serialize"), pass }
    }
}

/// Reads a whole file, or stdin for "-".
pub fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(s)
}

pub struct AtlasArgs {
    pub samples: Option<usize>,
    pub seed: u64,
    pub oracle: bool,
    pub budget: Option<u128>,
}

pub fn atlas(ext: &CyclicExtension, args: &AtlasArgs) -> Result<Outcome, CliError> {
    let cfg = AtlasConfig {
        mode: args.samples.map_or(AtlasMode::Full, |samples| AtlasMode::Sampled { samples }),
        seed: args.seed,
        oracle: args.oracle,
        budget: args.budget.unwrap_or(DEFAULT_BUDGET),
    };
    // Keys are computed in parallel but collected in input order, so the
    // report does not depend on the thread count.
    let report = atlas_with(ext, &cfg, &|ext, oracle, pres| {
        pres.par_iter().map(|p| oracle.key_of(ext, &AlgebraStructure::from_presentation(ext, p))).collect()
    })?;
    let pass = report.oracle_agrees != Some(false);
    Ok(Outcome::new(AtlasJson::of(ext, &report), pass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Critical,
    Cubic,
    Oracle,
}

#[derive(Serialize)]
struct IsotestReport {
    isomorphic: bool,
    method: &'static str,
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

/// Composite of critical transforms: (u2, v2, s2) after (u1, v1, s1).
fn compose_transforms(ext: &CyclicExtension, first: (Elem, Elem, usize), second: (Elem, Elem, usize)) -> (Elem, Elem, usize) {
    let k = ext.field();
    let (u1, v1, s1) = first;
    let (u2, v2, s2) = second;
    (k.mul(u2, ext.sigma(s2, u1)), k.mul(v2, ext.sigma(s2, v1)), (s1 + s2) % ext.degree())
}

/// Cubic closed forms on the canonical forms, pulled back to the inputs.
fn iso_via_cubic(ext: &CyclicExtension, p: &IsotopePresentation, q: &IsotopePresentation) -> Result<Option<IsoWitness>, CliError> {
    let k = ext.field();
    let cp = canonicalize(ext, p)?;
    let cq = canonicalize(ext, q)?;
    if cp.tag != cq.tag {
        return Ok(None);
    }
    let Some(IsoWitness::CriticalRelations { u, v, sigma }) = iso_cubic_cases(ext, &cp.presentation, &cq.presentation)? else {
        return Ok(None);
    };
    let to_q = (k.inv(cq.u)?, k.inv(cq.v)?, 0);
    let (u, v, sigma) = compose_transforms(ext, compose_transforms(ext, (cp.u, cp.v, 0), (u, v, sigma)), to_q);
    debug_assert!(satisfies_critical(ext, p, q, u, v, sigma));
    Ok(Some(IsoWitness::CriticalRelations { u, v, sigma }))
}

pub fn isotest(
    ext: &CyclicExtension,
    ops: [(&'static str, &[u32]); 4],
    method: Method,
    oracle: bool,
) -> Result<Outcome, CliError> {
    let mut parsed = Vec::with_capacity(4);
    for (name, coeffs) in ops {
        let op = operator(ext, coeffs)?;
        if !op.is_invertible(ext) {
            return Err(CliError::Operand { operand: name, source: isotope_core::Error::SingularOperator });
        }
        parsed.push(op);
    }
    let g2 = parsed.pop().unwrap();
    let f2 = parsed.pop().unwrap();
    let g = parsed.pop().unwrap();
    let f = parsed.pop().unwrap();
    let p = IsotopePresentation { f, g };
    let q = IsotopePresentation { f: f2, g: g2 };
    let a = || AlgebraStructure::from_presentation(ext, &p);
    let b = || AlgebraStructure::from_presentation(ext, &q);

    let (witness, name) = match method {
        Method::Critical => (iso_critical(ext, &p, &q)?, "critical"),
        Method::Cubic if ext.degree() == 3 => (iso_via_cubic(ext, &p, &q)?, "cubic_case"),
        Method::Cubic => return Err(CliError::Usage("the cubic method needs n = 3".into())),
        Method::Oracle => (iso_bruteforce(ext, &a(), &b())?.map(IsoWitness::ExplicitMap), "oracle"),
    };
    let verified = witness.as_ref().map_or(true, |w| w.verify(ext, &p, &q));
    let oracle_agrees = if oracle {
        Some(iso_bruteforce(ext, &a(), &b())?.is_some() == witness.is_some())
    } else {
        None
    };
    let report = IsotestReport {
        isomorphic: witness.is_some(),
        method: name,
        witness: witness.as_ref().map(|w| WitnessJson::of(ext, w)),
        oracle_agrees,
    };
    Ok(Outcome::new(report, verified && oracle_agrees != Some(false)))
}

#[derive(Serialize)]
struct HeartReport {
    regular: bool,
    unit: Option<u32>,
    #[serde(rename = "heart_is_K")]
    heart_is_k: bool,
    presentation: Option<PairJson>,
}

pub fn heart(ext: &CyclicExtension, a: &AlgebraStructure) -> Result<Outcome, CliError> {
    let space = ext.space();
    let report = match kaplansky_heart(ext, a) {
        Err(isotope_core::Error::SingularAlgebra) => {
            HeartReport { regular: false, unit: None, heart_is_k: false, presentation: None }
        }
        Err(e) => return Err(e.into()),
        Ok(h) => {
            let is_k = recognize_field_heart(ext, &h.algebra).is_ok();
            let pres = if is_k { decompose_as_presentation(ext, a) } else { None };
            HeartReport {
                regular: true,
                unit: Some(space.encode(&h.unit)),
                heart_is_k: is_k,
                presentation: pres.map(|d| PairJson::of(&d.presentation)),
            }
        }
    };
    Ok(Outcome::new(report, true))
}

#[derive(Serialize)]
struct VerifyReport {
    ext: ExtensionJson,
    level: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    suites: Vec<SuiteJson>,
    passed: bool,
}

pub fn verify(ext: &CyclicExtension, level: Level) -> Result<Outcome, CliError> {
    let suites: Vec<SuiteJson> = run_suites(ext, level)?.iter().map(SuiteJson::of).collect();
    let passed = suites.iter().all(|s| s.passed);
    let (name, seed, samples) = match level {
        Level::Exhaustive => ("exhaustive", None, None),
        Level::Random { samples, seed } => ("random", Some(seed), Some(samples)),
    };
    Ok(Outcome::new(VerifyReport { ext: ExtensionJson::of(ext), level: name, seed, samples, suites, passed }, passed))
}

/// Builds the extension for `verify` from a serialized field spec for K.
pub fn extension_from_spec(text: &str, m: u32) -> Result<CyclicExtension, CliError> {
    let spec: FieldSpecJson = serde_json::from_str(text)?;
    let spec = spec.to_spec()?;
    let d = spec.degree();
    if m == 0 || d % m != 0 {
        return Err(CliError::Usage(format!("m = {m} does not divide the field degree {d}")));
    }
    Ok(CyclicExtension::build_with(spec, m, (d / m) as usize)?)
}

#[derive(Serialize)]
struct MSetReport {
    ext: ExtensionJson,
    field: FieldSpecJson,
    subfield: Vec<u32>,
    norm_one: Vec<u32>,
    #[serde(rename = "M")]
    reps: Vec<u32>,
    #[serde(rename = "norms_of_M")]
    norms_of_m: Vec<u32>,
}

pub fn m_set(ext: &CyclicExtension) -> Outcome {
    let reps = ext.representatives();
    Outcome::new(
        MSetReport {
            ext: ExtensionJson::of(ext),
            field: FieldSpecJson::of(ext.field().spec()),
            subfield: encs(ext.subfield()),
            norm_one: encs(ext.norm_one_set()),
            reps: encs(reps),
            norms_of_m: reps.iter().map(|&a| ext.norm(a).enc()).collect(),
        },
        true,
    )
}

#[derive(Serialize)]
struct Residual {
    f: Vec<u32>,
    det: u32,
    reduced_norm: u32,
}

#[derive(Serialize)]
struct NormtestReport {
    ext: ExtensionJson,
    exhaustive: bool,
    checked: u64,
    mismatches: u64,
    /// Up to ten operators where the two disagree.
    residuals: Vec<Residual>,
}

/// Exhaustive up to `limit` operators, otherwise `samples` seeded ones.
pub fn normtest(ext: &CyclicExtension, samples: usize, seed: u64, limit: u64) -> Outcome {
    let n = ext.degree() as u32;
    let order = ext.order();
    let total = (order as u64).saturating_pow(n);
    let exhaustive = total <= limit;
    let ops: Vec<TwistedOperator> = if exhaustive {
        (0..total as u32)
            .map(|mut t| {
                TwistedOperator::new(
                    (0..n)
                        .map(|_| {
                            let c = Elem(t % order);
                            t /= order;
                            c
                        })
                        .collect(),
                )
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| TwistedOperator::new((0..n).map(|_| Elem(rng.gen_range(0..order))).collect())).collect()
    };
    let results: Vec<(Elem, Elem)> =
        ops.par_iter().map(|f| (f.to_matrix(ext).det(ext.field()), f.reduced_norm(ext))).collect();
    let mut residuals = Vec::new();
    let mut mismatches = 0;
    for (f, &(det, nrd)) in ops.iter().zip(&results) {
        if det != nrd {
            mismatches += 1;
            if residuals.len() < 10 {
                residuals.push(Residual { f: encs(f.coeffs()), det: det.enc(), reduced_norm: nrd.enc() });
            }
        }
    }
    Outcome::new(
        NormtestReport { ext: ExtensionJson::of(ext), exhaustive, checked: ops.len() as u64, mismatches, residuals },
        mismatches == 0,
    )
}

pub fn tensor(ext: &CyclicExtension, f: &[u32], g: &[u32]) -> Result<Outcome, CliError> {
    let f = operator(ext, f)?;
    let g = operator(ext, g)?;
    let a = AlgebraStructure::from_presentation(ext, &IsotopePresentation { f, g });
    Ok(Outcome::new(TensorJson::of(ext, &a), true))
}
