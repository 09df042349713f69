//! JSON wire formats. K-elements travel as their integer encodings;
//! F-valued tensor entries and vectors use the position of the element in
//! the ascending list of F.

use isotope_core::classify::{AtlasMode, AtlasReport, IsoWitness};
use isotope_core::verify::SuiteReport;
use isotope_core::{AlgebraStructure, CyclicExtension, Elem, FieldSpec, IsotopePresentation, TwistedOperator};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecJson {
    pub p: u32,
    pub d: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpecJson {
    pub fn of(spec: &FieldSpec) -> Self {
        FieldSpecJson { p: spec.characteristic(), d: spec.degree(), modulus: spec.modulus().to_vec() }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, CliError> {
        Ok(isotope_core::make_field(self.p, self.d, Some(&self.modulus))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSpec {
    pub p: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub modulus: Vec<u32>,
    pub primitive_root: u32,
    #[serde(rename = "M")]
    pub reps: Vec<u32>,
}

impl ExtensionJson {
    pub fn of(ext: &CyclicExtension) -> Self {
        ExtensionJson {
            p: ext.characteristic(),
            m: ext.m(),
            n: ext.degree(),
            modulus: ext.field().spec().modulus().to_vec(),
            primitive_root: ext.primitive_root().enc(),
            reps: encs(ext.representatives()),
        }
    }

    /// Rebuilds the extension and checks that it matches what was recorded.
    pub fn build(&self) -> Result<CyclicExtension, CliError> {
        let total = self.m as usize * self.n;
        let spec = isotope_core::make_field(self.p, total as u32, Some(&self.modulus))?;
        let ext = CyclicExtension::build_with(spec, self.m, self.n)?;
        if ext.primitive_root().enc() != self.primitive_root || encs(ext.representatives()) != self.reps {
            return Err(CliError::Parse("extension record does not match its rebuilt primitive root or M".into()));
        }
        Ok(ext)
    }
}

pub fn encs(xs: &[Elem]) -> Vec<u32> {
    xs.iter().map(|x| x.enc()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

impl PairJson {
    pub fn of(p: &IsotopePresentation) -> Self {
        PairJson { f: encs(p.f.coeffs()), g: encs(p.g.coeffs()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ext: ExtensionJson,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

/// Operator from element encodings, checked against the extension.
pub fn operator(ext: &CyclicExtension, coeffs: &[u32]) -> Result<TwistedOperator, CliError> {
    if coeffs.len() != ext.degree() {
        return Err(CliError::Parse(format!(
            "operator needs {} coefficients, got {}",
            ext.degree(),
            coeffs.len()
        )));
    }
    if let Some(&bad) = coeffs.iter().find(|&&c| c >= ext.order()) {
        return Err(CliError::Parse(format!("{bad} is not an element encoding below {}", ext.order())));
    }
    Ok(TwistedOperator::new(coeffs.iter().map(|&c| Elem(c)).collect()))
}

/// "1,3,0" -> [1, 3, 0].
pub fn parse_encodings(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| CliError::Parse(format!("bad encoding {t:?}: {e}"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub q_spec: QSpec,
    /// `c[i][j]` holds the coordinates of e_i e_j.
    pub c: Vec<Vec<Vec<u32>>>,
}

impl TensorJson {
    pub fn of(ext: &CyclicExtension, a: &AlgebraStructure) -> Self {
        let n = a.dim();
        let space = ext.space();
        let (p, m) = a.base_field();
        let c = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.basis_product(i, j).iter().map(|&x| space.f_index(x).expect("F-valued tensor")).collect())
                    .collect()
            })
            .collect();
        TensorJson { n, q_spec: QSpec { p, m }, c }
    }

    /// The extension it lives over (default model) and the algebra.
    pub fn to_algebra(&self) -> Result<(CyclicExtension, AlgebraStructure), CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Parse("tensor dimension must be positive".into()));
        }
        let ext = CyclicExtension::build(self.q_spec.p, self.q_spec.m, n)?;
        let q = ext.q();
        let shape_ok = self.c.len() == n && self.c.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(CliError::Parse(format!("tensor must have shape {n}x{n}x{n}")));
        }
        let mut c = Vec::with_capacity(n * n * n);
        for x in self.c.iter().flatten().flatten() {
            if *x >= q {
                return Err(CliError::Parse(format!("{x} is not an element index of GF({q})")));
            }
            c.push(ext.space().f_elem(*x));
        }
        let a = AlgebraStructure::from_tensor(&ext, c)?;
        Ok((ext, a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessJson {
    Critical { u: u32, v: u32, sigma: usize },
    /// Columns are images of the basis vectors, as F indices.
    Map { map: Vec<Vec<u32>> },
}

impl WitnessJson {
    pub fn of(ext: &CyclicExtension, w: &IsoWitness) -> Self {
        match w {
            &IsoWitness::CriticalRelations { u, v, sigma } => WitnessJson::Critical { u: u.enc(), v: v.enc(), sigma },
            IsoWitness::ExplicitMap(m) => {
                let space = ext.space();
                WitnessJson::Map {
                    map: (0..m.cols())
                        .map(|j| m.column(j).iter().map(|&x| space.f_index(x).expect("F-valued map")).collect())
                        .collect(),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasTypeJson {
    pub type_index: u8,
    pub family: String,
    #[serde(rename = "N0")]
    pub n0: Vec<usize>,
    pub presentations: usize,
    pub canonical_forms: usize,
    pub class_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_class_count: Option<usize>,
    pub representatives: Vec<PairJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasJson {
    pub ext: ExtensionJson,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: u64,
    pub invertible_operators: usize,
    pub presentations: usize,
    pub types: Vec<AtlasTypeJson>,
    pub oracle_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

impl AtlasJson {
    pub fn of(ext: &CyclicExtension, r: &AtlasReport) -> Self {
        let (mode, samples) = match r.mode {
            AtlasMode::Full => ("full", None),
            AtlasMode::Sampled { samples } => ("sampled", Some(samples)),
        };
        AtlasJson {
            ext: ExtensionJson::of(ext),
            mode: mode.into(),
            samples,
            seed: r.seed,
            invertible_operators: r.invertible_operators,
            presentations: r.presentations,
            types: r
                .types
                .iter()
                .map(|t| AtlasTypeJson {
                    type_index: t.tag.index(),
                    family: format!("{:?}", t.tag.family),
                    n0: t.tag.partition.n0.clone(),
                    presentations: t.presentations,
                    canonical_forms: t.canonical_forms,
                    class_count: t.class_count,
                    oracle_class_count: t.oracle_class_count,
                    representatives: t.representatives.iter().map(PairJson::of).collect(),
                })
                .collect(),
            oracle_checked: r.oracle_checked,
            oracle_agrees: r.oracle_agrees,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteJson {
    pub fn of(r: &SuiteReport) -> Self {
        SuiteJson {
            name: r.name.into(),
            passed: r.passed(),
            checked: r.checked,
            failures: r.failures,
            counterexample: r.counterexample.clone(),
            note: r.note.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_round_trip() {
        let ext = CyclicExtension::build(3, 1, 2).unwrap();
        let p = IsotopePresentation { f: TwistedOperator::tau_power(2, 1), g: TwistedOperator::identity(2) };
        let a = AlgebraStructure::from_presentation(&ext, &p);
        let json = serde_json::to_string(&TensorJson::of(&ext, &a)).unwrap();
        let back: TensorJson = serde_json::from_str(&json).unwrap();
        let (_, b) = back.to_algebra().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn extension_round_trip() {
        let ext = CyclicExtension::build(2, 2, 3).unwrap();
        let json = ExtensionJson::of(&ext);
        let again = json.build().unwrap();
        assert_eq!(ExtensionJson::of(&again), json);
    }

    #[test]
    fn malformed_inputs() {
        let ext = CyclicExtension::build(2, 1, 3).unwrap();
        assert!(matches!(parse_encodings("1,x,0"), Err(CliError::Parse(_))));
        assert!(matches!(operator(&ext, &[1, 0]), Err(CliError::Parse(_))));
        assert!(matches!(operator(&ext, &[1, 0, 8]), Err(CliError::Parse(_))));
        let bad = TensorJson { n: 3, q_spec: QSpec { p: 2, m: 1 }, c: vec![vec![vec![0; 3]; 3]; 2] };
        assert!(matches!(bad.to_algebra(), Err(CliError::Parse(_))));
    }

    #[test]
    fn field_spec_validation() {
        let s = FieldSpecJson { p: 2, d: 3, modulus: vec![1, 1, 1, 1] };
        assert_eq!(s.to_spec().unwrap_err().kind(), "ReducibleModulus");
        let ok = FieldSpecJson { p: 2, d: 3, modulus: vec![1, 1, 0, 1] };
        assert_eq!(FieldSpecJson::of(&ok.to_spec().unwrap()), ok);
    }
}
