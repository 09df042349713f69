//! Invariant suites cross-checking the fast procedures against independent
//! ones. Each suite returns a [`SuiteReport`]; nothing here panics on a
//! failed property.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    is_isomorphism, kaplansky_heart, kaplansky_heart_with, recognize_field_heart, AlgebraStructure, IsotopePresentation,
};
use crate::classify::atlas::{invertible_operators, random_invertible};
use crate::classify::{
    apply_critical, atlas, canonicalize, iso_critical, iso_cubic_cases_with, AtlasConfig, CanonicalKey, Oracle,
    Reading,
};
use crate::error::Result;
use crate::ff::Elem;
use crate::galois::CyclicExtension;
use crate::linalg::Matrix;
use crate::twistop::TwistedOperator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    /// First failing input, rendered.
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, checked: 0, failures: 0, counterexample: None, note: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    fn record(&mut self, ok: bool, ce: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(ce());
            }
        }
    }
}

/// Exhaustive when the input space is small enough, otherwise seeded samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

fn fmt_pres(p: &IsotopePresentation) -> String {
    let enc = |op: &TwistedOperator| op.coeffs().iter().map(|c| c.0).collect::<Vec<_>>();
    format!("f={:?} g={:?}", enc(&p.f), enc(&p.g))
}

fn all_operators(ext: &CyclicExtension) -> impl Iterator<Item = TwistedOperator> + '_ {
    let n = ext.degree() as u32;
    let order = ext.order();
    (0..order.pow(n)).map(move |mut t| {
        let mut c = Vec::with_capacity(n as usize);
        for _ in 0..n {
            c.push(Elem(t % order));
            t /= order;
        }
        TwistedOperator::new(c)
    })
}

fn random_operator<R: Rng>(ext: &CyclicExtension, rng: &mut R) -> TwistedOperator {
    TwistedOperator::new((0..ext.degree()).map(|_| Elem(rng.gen_range(0..ext.order()))).collect())
}

fn random_presentation<R: Rng>(ext: &CyclicExtension, rng: &mut R) -> IsotopePresentation {
    IsotopePresentation { f: random_invertible(ext, rng), g: random_invertible(ext, rng) }
}

fn random_gl<R: Rng>(ext: &CyclicExtension, rng: &mut R) -> Matrix {
    let n = ext.degree();
    let sub = ext.subfield();
    loop {
        let m = Matrix::from_rows(
            (0..n).map(|_| (0..n).map(|_| sub[rng.gen_range(0..sub.len())]).collect()).collect(),
        );
        if !m.det(ext.field()).is_zero() {
            return m;
        }
    }
}

/// det_F of the matrix of f equals its reduced norm.
pub fn det_identity(ext: &CyclicExtension, coverage: Coverage) -> SuiteReport {
    let mut r = SuiteReport::new("det_identity");
    let mut check = |f: &TwistedOperator| {
        let d = f.to_matrix(ext).det(ext.field());
        let rn = f.reduced_norm(ext);
        r.record(d == rn, || format!("y={:?} det={} nrd={}", f.coeffs(), d.0, rn.0));
    };
    match coverage {
        Coverage::Exhaustive => all_operators(ext).for_each(|f| check(&f)),
        Coverage::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                check(&random_operator(ext, &mut rng));
            }
        }
    }
    r
}

/// The norm-one group equals {tau(v)/v} and has (q^n - 1)/(q - 1) elements.
pub fn hilbert90(ext: &CyclicExtension) -> SuiteReport {
    let mut r = SuiteReport::new("hilbert90");
    let k = ext.field();
    let by_norm: BTreeSet<Elem> = k.nonzero().filter(|&x| ext.norm(x) == Elem::ONE).collect();
    let by_quotient: BTreeSet<Elem> = k.nonzero().map(|v| k.div(ext.tau(v), v)).collect();
    let stored: BTreeSet<Elem> = ext.norm_one_set().iter().copied().collect();
    let expected = ((ext.order() - 1) / (ext.q() - 1)) as usize;
    r.record(by_norm == by_quotient, || format!("norm-one {} elements, quotients {}", by_norm.len(), by_quotient.len()));
    r.record(by_norm == stored, || String::from("stored norm-one set differs"));
    r.record(by_norm.len() == expected, || format!("|S(K)| = {}, expected {}", by_norm.len(), expected));
    // M is a transversal: one representative per coset, 1 included.
    let m = ext.representatives();
    let cosets: BTreeSet<Elem> = m.iter().map(|&a| *by_norm.iter().map(|&s| k.mul(a, s)).collect::<BTreeSet<_>>().first().unwrap()).collect();
    r.record(m.contains(&Elem::ONE) && cosets.len() == m.len() && m.len() * expected == (ext.order() - 1) as usize, || {
        format!("|M| = {}", m.len())
    });
    r
}

/// Hearts of random isotopes of K (transported by random GL maps) are K,
/// for every choice of regularity witnesses.
pub fn heart_roundtrip(ext: &CyclicExtension, samples: usize, all_witnesses: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("heart_roundtrip");
    let k = ext.field();
    let field = AlgebraStructure::field(ext);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let (f, g, h) = (random_gl(ext, &mut rng), random_gl(ext, &mut rng), random_gl(ext, &mut rng));
        let a = field.isotope(ext, &f, &g, &h).expect("invertible maps");
        let heart = match kaplansky_heart(ext, &a) {
            Ok(h) => h,
            Err(e) => {
                r.record(false, || format!("sample {s}: {e}"));
                continue;
            }
        };
        let b = &heart.algebra;
        let ok = b.unit(ext).as_deref() == Some(&heart.unit[..])
            && b.is_commutative()
            && b.is_associative(ext)
            && !b.has_zero_divisors(ext)
            && recognize_field_heart(ext, b).is_ok();
        r.record(ok, || format!("sample {s}: heart of {:?} is not K", a.tensor()));
        if s >= all_witnesses {
            continue;
        }
        // Every (u, v) gives a heart; compare each with the first through K.
        let us: Vec<_> = a.left_invertible(ext).collect();
        let vs: Vec<_> = a.right_invertible(ext).collect();
        let psi0 = recognize_field_heart(ext, b).ok();
        for u in &us {
            for v in &vs {
                let ok = (|| {
                    let hb = kaplansky_heart_with(ext, &a, u, v).ok()?;
                    let psi = recognize_field_heart(ext, &hb.algebra).ok()?;
                    let phi = psi.inverse(k)?.mul(psi0.as_ref()?, k);
                    Some(is_isomorphism(ext, b, &hb.algebra, &phi))
                })()
                .unwrap_or(false);
                r.record(ok, || format!("sample {s}: heart for u={u:?} v={v:?} not isomorphic to first"));
            }
        }
    }
    r
}

/// Distinct canonical forms of all invertible presentations, ascending.
pub fn canonical_forms(ext: &CyclicExtension) -> Result<BTreeSet<IsotopePresentation>> {
    let ops = invertible_operators(ext);
    let mut out = BTreeSet::new();
    for f in &ops {
        for g in &ops {
            out.insert(canonicalize(ext, &IsotopePresentation { f: f.clone(), g: g.clone() })?.presentation);
        }
    }
    Ok(out)
}

/// Every pair of canonical forms sharing a type (ordered, i < j).
pub fn within_type_pairs(ext: &CyclicExtension, forms: &BTreeSet<IsotopePresentation>) -> Vec<(IsotopePresentation, IsotopePresentation)> {
    let mut by_type: BTreeMap<_, Vec<&IsotopePresentation>> = BTreeMap::new();
    for p in forms {
        by_type.entry(crate::classify::TypeTag::of_presentation(p)).or_default().push(p);
    }
    let _ = ext;
    let mut out = Vec::new();
    for members in by_type.values() {
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                out.push((members[i].clone(), members[j].clone()));
            }
        }
    }
    out
}

/// Seeded pairs: a third unrelated, a third related by a random critical
/// transform, a third same-type canonical forms.
pub fn random_pairs(ext: &CyclicExtension, samples: usize, seed: u64) -> Result<Vec<(IsotopePresentation, IsotopePresentation)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ext.degree();
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let p = random_presentation(ext, &mut rng);
        let q = match out.len() % 3 {
            0 => random_presentation(ext, &mut rng),
            1 => {
                let u = Elem(rng.gen_range(1..ext.order()));
                let v = Elem(rng.gen_range(1..ext.order()));
                apply_critical(ext, &p, u, v, rng.gen_range(0..n))
            }
            _ => {
                // Same f-pattern, fresh coefficients; retry until the type matches.
                let cp = canonicalize(ext, &p)?;
                let mut found = None;
                for _ in 0..200 {
                    let f = TwistedOperator::new(
                        p.f.coeffs()
                            .iter()
                            .map(|c| if c.is_zero() { Elem::ZERO } else { Elem(rng.gen_range(1..ext.order())) })
                            .collect(),
                    );
                    if !f.is_invertible(ext) {
                        continue;
                    }
                    let q = IsotopePresentation { f, g: random_invertible(ext, &mut rng) };
                    if canonicalize(ext, &q)?.tag == cp.tag {
                        found = Some(q);
                        break;
                    }
                }
                match found {
                    Some(q) => q,
                    None => continue,
                }
            }
        };
        out.push((p, q));
    }
    Ok(out)
}

struct KeyCache<'a> {
    ext: &'a CyclicExtension,
    oracle: &'a Oracle,
    keys: BTreeMap<IsotopePresentation, CanonicalKey>,
}

impl<'a> KeyCache<'a> {
    fn key(&mut self, p: &IsotopePresentation) -> &CanonicalKey {
        let (ext, oracle) = (self.ext, self.oracle);
        self.keys
            .entry(p.clone())
            .or_insert_with(|| oracle.key_of(ext, &AlgebraStructure::from_presentation(ext, p)))
    }

    fn iso(&mut self, p: &IsotopePresentation, q: &IsotopePresentation) -> bool {
        let a = self.key(p).clone();
        &a == self.key(q)
    }
}

/// iso_critical against the brute-force oracle; witnesses re-verified.
pub fn oracle_equivalence(
    ext: &CyclicExtension,
    oracle: &Oracle,
    pairs: &[(IsotopePresentation, IsotopePresentation)],
) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("oracle_equivalence");
    let mut cache = KeyCache { ext, oracle, keys: BTreeMap::new() };
    let mut isomorphic = 0u64;
    for (p, q) in pairs {
        let w = iso_critical(ext, p, q)?;
        let truth = cache.iso(p, q);
        isomorphic += truth as u64;
        let ok = w.is_some() == truth && w.as_ref().map_or(true, |w| w.verify(ext, p, q));
        r.record(ok, || format!("{} vs {}: critical={} oracle={}", fmt_pres(p), fmt_pres(q), w.is_some(), truth));
    }
    r.note = Some(format!("{} of {} pairs isomorphic", isomorphic, pairs.len()));
    Ok(r)
}

/// The closed-form cubic cases against iso_critical, on canonicalized
/// pairs of matching type. Unequal types must be non-isomorphic.
pub fn cubic_fast_paths(ext: &CyclicExtension, pairs: &[(IsotopePresentation, IsotopePresentation)]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("cubic_fast_paths");
    for (p, q) in pairs {
        let cp = canonicalize(ext, p)?;
        let cq = canonicalize(ext, q)?;
        let slow = iso_critical(ext, &cp.presentation, &cq.presentation)?;
        if cp.tag != cq.tag {
            r.record(slow.is_none(), || format!("types {} and {} isomorphic: {}", cp.tag, cq.tag, fmt_pres(p)));
            continue;
        }
        let fast = iso_cubic_cases_with(ext, &cp.presentation, &cq.presentation, Reading::DERIVED)?;
        let ok = fast.is_some() == slow.is_some()
            && fast.as_ref().map_or(true, |w| w.verify(ext, &cp.presentation, &cq.presentation));
        r.record(ok, || {
            format!(
                "type {}: {} vs {}: cubic={} critical={}",
                cp.tag,
                fmt_pres(&cp.presentation),
                fmt_pres(&cq.presentation),
                fast.is_some(),
                slow.is_some()
            )
        });
    }
    Ok(r)
}

/// Disagreement counts of each reading of the type-2 conditions against
/// the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadingOutcome {
    pub reading: Reading,
    pub false_positives: u64,
    pub false_negatives: u64,
}

/// Targeted type-2 pairs (n = 3): critical transforms of a form, and forms
/// whose g is twisted by an arbitrary unit scalar.
pub fn case2_readings(ext: &CyclicExtension, oracle: &Oracle, samples: usize, seed: u64) -> Result<(SuiteReport, Vec<ReadingOutcome>)> {
    let mut r = SuiteReport::new("case2_readings");
    let k = ext.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let readings = [
        Reading::DERIVED,
        Reading { case2_tau_inverse: true, case2_scalar_in_k: false },
        Reading { case2_tau_inverse: false, case2_scalar_in_k: true },
    ];
    let mut outcomes: Vec<ReadingOutcome> =
        readings.iter().map(|&reading| ReadingOutcome { reading, false_positives: 0, false_negatives: 0 }).collect();
    let mut cache = KeyCache { ext, oracle, keys: BTreeMap::new() };
    let mut made = 0;
    let mut attempts = 0;
    while made < samples && attempts < samples * 200 {
        attempts += 1;
        let y2 = Elem(rng.gen_range(1..ext.order()));
        let f = TwistedOperator::new(alloc::vec![Elem::ONE, Elem::ZERO, y2]);
        if !f.is_invertible(ext) {
            continue;
        }
        let p = canonicalize(ext, &IsotopePresentation { f, g: random_invertible(ext, &mut rng) })?.presentation;
        let q = match made % 2 {
            0 => {
                let u = Elem(rng.gen_range(1..ext.order()));
                let v = Elem(rng.gen_range(1..ext.order()));
                apply_critical(ext, &p, u, v, rng.gen_range(0..3))
            }
            _ => {
                // g' = sigma g sigma^-1 L(a w) with a in K^x, f untouched.
                let sigma = rng.gen_range(1..3);
                let a = Elem(rng.gen_range(1..ext.order()));
                let yd = p.f.coeff(2);
                let w = if sigma == 1 { ext.tau(yd) } else { k.inv(yd)? };
                let twisted = apply_critical(ext, &p, Elem::ONE, k.mul(a, w), sigma);
                IsotopePresentation { f: p.f.clone(), g: twisted.g }
            }
        };
        let q = canonicalize(ext, &q)?.presentation;
        if crate::classify::TypeTag::of_presentation(&q) != crate::classify::TypeTag::of_presentation(&p) {
            continue;
        }
        made += 1;
        let truth = cache.iso(&p, &q);
        for o in outcomes.iter_mut() {
            let got = iso_cubic_cases_with(ext, &p, &q, o.reading)?.is_some();
            if got && !truth {
                o.false_positives += 1;
            }
            if !got && truth {
                o.false_negatives += 1;
            }
        }
        let derived_ok = iso_cubic_cases_with(ext, &p, &q, Reading::DERIVED)?.is_some() == truth;
        r.record(derived_ok, || format!("{} vs {}: oracle={}", fmt_pres(&p), fmt_pres(&q), truth));
    }
    let o = &outcomes;
    r.note = Some(format!(
        "derived: {}fp/{}fn; tau(y2^-1): {}fp/{}fn; a in K^x: {}fp/{}fn",
        o[0].false_positives, o[0].false_negatives, o[1].false_positives, o[1].false_negatives, o[2].false_positives,
        o[2].false_negatives
    ));
    Ok((r, outcomes))
}

/// Shapes (1, y, 0) and (1, 0, y) with y != 0 are singular, and no
/// canonical form has type 2, 3 or 6 (cubic, q = 2).
pub fn type_emptiness(ext: &CyclicExtension) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("type_emptiness");
    let k = ext.field();
    for y in k.nonzero() {
        for shape in [[Elem::ONE, y, Elem::ZERO], [Elem::ONE, Elem::ZERO, y]] {
            let f = TwistedOperator::new(shape.to_vec());
            let nrd = f.reduced_norm(ext);
            r.record(nrd.is_zero(), || format!("y={:?} has reduced norm {}", shape, nrd.0));
        }
    }
    for f in all_operators(ext).filter(|f| f.is_invertible(ext)) {
        let c = canonicalize(ext, &IsotopePresentation { f, g: TwistedOperator::identity(ext.degree()) })?;
        let t = c.tag.index();
        r.record(![2, 3, 6].contains(&t), || format!("{} has type {}", fmt_pres(&c.presentation), t));
    }
    Ok(r)
}

/// K^(f,g) = K^(af,bg) for all a, b in F^x.
pub fn scaling(ext: &CyclicExtension, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("scaling");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_presentation(ext, &mut rng);
        for &a in ext.subfield_units() {
            for &b in ext.subfield_units() {
                let q = IsotopePresentation { f: p.f.scale(ext, a), g: p.g.scale(ext, b) };
                let w = iso_critical(ext, &p, &q)?;
                let ok = w.as_ref().is_some_and(|w| w.verify(ext, &p, &q));
                r.record(ok, || format!("{} with a={} b={}", fmt_pres(&p), a.0, b.0));
            }
        }
    }
    Ok(r)
}

/// canonicalize is idempotent and its (u, v) witnesses the move.
pub fn canonical_stability(ext: &CyclicExtension, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("canonical_stability");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_presentation(ext, &mut rng);
        let c = canonicalize(ext, &p)?;
        let again = canonicalize(ext, &c.presentation)?;
        let ok = again.presentation == c.presentation
            && AlgebraStructure::from_presentation(ext, &again.presentation)
                == AlgebraStructure::from_presentation(ext, &c.presentation)
            && crate::classify::satisfies_critical(ext, &p, &c.presentation, c.u, c.v, 0);
        r.record(ok, || fmt_pres(&p));
    }
    Ok(r)
}

/// No zero divisors for the given presentations' algebras.
pub fn division_closure<'a>(ext: &CyclicExtension, pres: impl IntoIterator<Item = &'a IsotopePresentation>) -> SuiteReport {
    let mut r = SuiteReport::new("division_closure");
    for p in pres {
        let a = AlgebraStructure::from_presentation(ext, p);
        r.record(!a.has_zero_divisors(ext), || fmt_pres(p));
    }
    r
}

pub fn random_presentations(ext: &CyclicExtension, samples: usize, seed: u64) -> Vec<IsotopePresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| random_presentation(ext, &mut rng)).collect()
}

/// Critical-relation classes versus oracle orbits, per type.
pub fn atlas_consistency(ext: &CyclicExtension) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("atlas_consistency");
    let report = atlas(ext, &AtlasConfig { oracle: true, ..AtlasConfig::default() })?;
    for t in &report.types {
        r.record(t.oracle_class_count == Some(t.class_count), || {
            format!("type {}: {} classes vs {:?} oracle orbits", t.tag, t.class_count, t.oracle_class_count)
        });
    }
    r.record(report.oracle_agrees == Some(true), || String::from("an oracle orbit spans two types"));
    Ok(r)
}

/// Which suites a verification run includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Everything exhaustive over the given (small) extension.
    Exhaustive,
    /// Seeded samples.
    Random { samples: usize, seed: u64 },
}

/// Runs the suites appropriate to `level` on `ext`.
pub fn run_suites(ext: &CyclicExtension, level: Level) -> Result<Vec<SuiteReport>> {
    let n = ext.degree();
    let candidates = (ext.order() as u128).pow(n as u32);
    if matches!(level, Level::Exhaustive) && candidates * candidates > crate::classify::DEFAULT_BUDGET {
        return Err(crate::error::Error::BudgetExceeded {
            needed: candidates * candidates,
            budget: crate::classify::DEFAULT_BUDGET,
        });
    }
    let small = candidates <= 1 << 12;
    let mut out = Vec::new();
    let (samples, seed) = match level {
        Level::Exhaustive => (1000, 0),
        Level::Random { samples, seed } => (samples, seed),
    };
    let coverage = if matches!(level, Level::Exhaustive) && small { Coverage::Exhaustive } else { Coverage::Random { samples, seed } };
    out.push(det_identity(ext, coverage));
    out.push(hilbert90(ext));
    out.push(canonical_stability(ext, samples, seed)?);
    out.push(scaling(ext, samples.min(100), seed)?);
    let oracle = Oracle::new(ext).ok();
    if ext.space().size() <= crate::algebra::TABLE_LIMIT {
        out.push(heart_roundtrip(ext, samples, samples.min(20), seed));
    }
    let pairs = match level {
        Level::Exhaustive => {
            let forms = canonical_forms(ext)?;
            out.push(division_closure(ext, forms.iter()));
            within_type_pairs(ext, &forms)
        }
        Level::Random { samples, seed } => {
            out.push(division_closure(ext, random_presentations(ext, samples, seed).iter()));
            random_pairs(ext, samples, seed)?
        }
    };
    if let Some(o) = &oracle {
        out.push(oracle_equivalence(ext, o, &pairs)?);
    }
    if n == 3 {
        out.push(cubic_fast_paths(ext, &pairs)?);
        if ext.q() == 2 {
            out.push(type_emptiness(ext)?);
        } else if let Some(o) = &oracle {
            out.push(case2_readings(ext, o, samples.min(300), seed)?.0);
        }
    }
    if matches!(level, Level::Exhaustive) && oracle.is_some() {
        out.push(atlas_consistency(ext)?);
    }
    Ok(out)
}
