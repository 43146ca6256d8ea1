//! Seeded generators for bounded systems and test functions, the Azuma-type tail check,
//! and the verification suites that aggregate everything into replayable reports.

use std::path::Path;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chaos::{bonami_kiener_check, rademacher, rademacher_system, ChaosSum};
use crate::error::{Error, Result};
use crate::extremal::{verify_theorem1, ConvexSpec, Norm, Outer, QuasiPolynomial, Weighted};
use crate::mask::{self, Mask};
use crate::rational::{self, rat, Rational};
use crate::stepfn::StepFn;
use crate::systems::{
    extend_to_multiplicative, mult_error, mult_error_family, raw_moment, BoundedSystem, Bounds, SubsetFamily,
};
use crate::trig::{corollary_x19_check, TrigPoly, TrigTerm, YoungFn};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest denominator used by the random rational generators.
pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Rademacher,
    HaarMartingale,
    PerturbedMultiplicative,
    RandomStep,
    LacunaryTrig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Maximum pieces per member for `random-step`.
    #[serde(default = "default_pieces")]
    pub pieces: usize,
    /// Bounds are drawn with `|A|, B ∈ [1/8, bound_max]`.
    #[serde(default = "default_bound_max")]
    pub bound_max: f64,
    /// Bump added to each Rademacher member by `perturbed-multiplicative`.
    #[serde(default = "default_eps", with = "crate::rational::serde_rational")]
    pub eps: Rational,
    pub seed: u64,
}

fn default_pieces() -> usize {
    8
}

fn default_bound_max() -> f64 {
    1.0
}

fn default_eps() -> Rational {
    rat(1, 10)
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        GeneratorConfig {
            kind,
            n,
            pieces: default_pieces(),
            bound_max: default_bound_max(),
            eps: default_eps(),
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("generator needs n >= 1".into()));
        }
        if self.pieces == 0 {
            return Err(Error::InvalidParameter("generator needs at least one piece".into()));
        }
        if !(self.bound_max >= 0.125) {
            return Err(Error::InvalidParameter("bound_max must be at least 1/8".into()));
        }
        if self.kind == GeneratorKind::HaarMartingale && self.n > 16 {
            return Err(Error::InvalidParameter("haar-martingale supports n <= 16".into()));
        }
        if self.kind == GeneratorKind::Rademacher && self.n > crate::chaos::MAX_RADEMACHER as usize {
            return Err(Error::InvalidParameter("too many Rademacher members".into()));
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of instance `index` within a run seeded by `seed`.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((index as u64).to_le_bytes());
    u64::from_le_bytes(h.finalize()[..8].try_into().expect("8 bytes"))
}

/// Builds the system described by `cfg`; `lacunary-trig` is not a step system, see
/// [`generate_lacunary`].
pub fn generate(cfg: &GeneratorConfig) -> Result<BoundedSystem> {
    cfg.validate()?;
    let mut rng = rng(cfg.seed);
    match cfg.kind {
        GeneratorKind::Rademacher => rademacher_system(cfg.n),
        GeneratorKind::HaarMartingale => haar_martingale(&mut rng, cfg.n),
        GeneratorKind::PerturbedMultiplicative => perturbed(cfg.n, &cfg.eps),
        GeneratorKind::RandomStep => random_system(&mut rng, cfg.n, cfg.pieces, cfg.bound_max),
        GeneratorKind::LacunaryTrig => Err(Error::InvalidParameter(
            "lacunary-trig produces a trigonometric polynomial; use generate_lacunary".into(),
        )),
    }
}

/// Lacunary cosine sum with `n_{k+1} ≥ 2 n_k`, uniform phases and coefficients in `[-1, 1]`.
pub fn generate_lacunary(cfg: &GeneratorConfig) -> Result<TrigPoly> {
    if cfg.kind != GeneratorKind::LacunaryTrig {
        return Err(Error::InvalidParameter("generate_lacunary needs kind lacunary-trig".into()));
    }
    cfg.validate()?;
    let mut rng = rng(cfg.seed);
    let mut freq: u64 = rng.gen_range(1..=3);
    let mut terms = Vec::with_capacity(cfg.n);
    for _ in 0..cfg.n {
        terms.push(TrigTerm { freq, phase: rng.gen::<f64>(), coeff: rng.gen_range(-1.0..=1.0) });
        freq = freq.checked_mul(2).and_then(|f| f.checked_add(rng.gen_range(0..=freq / 2))).ok_or_else(|| {
            Error::InvalidParameter("lacunary frequencies overflow".into())
        })?;
    }
    TrigPoly::new(terms)
}

/// Rational `p/q` with `q ≤ MAX_DENOMINATOR` inside `[lo, hi]`.
pub fn random_rational_in(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    loop {
        let q: i64 = rng.gen_range(1..=MAX_DENOMINATOR);
        let qr = Rational::from_integer(q.into());
        let pmin = (lo * &qr).ceil().to_integer();
        let pmax = (hi * &qr).floor().to_integer();
        if pmin > pmax {
            continue;
        }
        let span: i64 = (&pmax - &pmin).try_into().unwrap_or(i64::MAX - 1);
        let p = pmin + rng.gen_range(0..=span);
        return Rational::new(p, q.into());
    }
}

pub fn random_bounds(rng: &mut impl Rng, bound_max: f64) -> Bounds {
    let top = (bound_max * 8.0).floor().max(1.0) as i64;
    let a = rat(-rng.gen_range(1..=top), 8);
    let b = rat(rng.gen_range(1..=top), 8);
    Bounds::new(a, b).expect("A < 0 < B")
}

/// Step function on `[0, 1)` with at most `max_pieces` pieces and values in `bounds`.
pub fn random_step(rng: &mut impl Rng, max_pieces: usize, bounds: &Bounds) -> StepFn {
    let pieces = rng.gen_range(1..=max_pieces);
    let mut cuts: Vec<Rational> = (0..pieces - 1)
        .map(|_| {
            let q = rng.gen_range(2..=MAX_DENOMINATOR);
            rat(rng.gen_range(1..q), q)
        })
        .collect();
    cuts.sort();
    cuts.dedup();
    let mut bps = vec![rational::zero()];
    bps.extend(cuts);
    bps.push(rational::one());
    let vals = (0..bps.len() - 1)
        .map(|_| random_rational_in(rng, bounds.lower(), bounds.upper()))
        .collect();
    StepFn::new(rational::one(), bps, vals).expect("valid random step function")
}

pub fn random_system(rng: &mut impl Rng, n: usize, max_pieces: usize, bound_max: f64) -> Result<BoundedSystem> {
    let bounds: Vec<Bounds> = (0..n).map(|_| random_bounds(rng, bound_max)).collect();
    let members = bounds.iter().map(|b| random_step(rng, max_pieces, b)).collect();
    BoundedSystem::new(members, bounds)
}

/// Dyadic martingale differences: `φ_k` is `+v` then `-v` on the two halves of each
/// dyadic interval of length `2^{1-k}`, with `v ∈ (0, 1]` drawn per interval.
pub fn haar_martingale(rng: &mut impl Rng, n: usize) -> Result<BoundedSystem> {
    let members = (1..=n as u32)
        .map(|k| {
            let atoms = 1u64 << (k - 1);
            let runs = (0..atoms).flat_map(|_| {
                let q = rng.gen_range(1..=MAX_DENOMINATOR);
                let v = rat(rng.gen_range(1..=q), q);
                let half = Rational::new(1.into(), (2 * atoms).into());
                [(half.clone(), v.clone()), (half, -v)]
            });
            StepFn::from_runs(runs.collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    BoundedSystem::unit(members)
}

/// `r_k + ε` with bounds widened to contain it; `C_k = 1`, so `μ_1 = n|ε|`.
pub fn perturbed(n: usize, eps: &Rational) -> Result<BoundedSystem> {
    if eps.abs() >= rational::one() {
        return Err(Error::InvalidParameter("perturbation must satisfy |ε| < 1".into()));
    }
    let bump = StepFn::constant(rational::one(), eps.clone())?;
    let lower = if eps.is_negative() { rational::int(-1) + eps } else { rational::int(-1) };
    let upper = if eps.is_positive() { rational::one() + eps } else { rational::one() };
    let members = (1..=n as u32)
        .map(|k| rademacher(k)?.add(&bump))
        .collect::<Result<Vec<_>>>()?;
    BoundedSystem::new(members, vec![Bounds::new(lower, upper)?; n])
}

fn random_outer(rng: &mut impl Rng) -> Outer {
    match rng.gen_range(0..6) {
        0 => Outer::Pow { q: 1.0 },
        1 => Outer::Pow { q: 2.0 },
        2 => Outer::Pow { q: *[1.5, 3.0, 4.0].choose(rng).unwrap() },
        3 => Outer::Exp { c: *[0.25, 0.5, 1.0].choose(rng).unwrap() },
        4 => Outer::Hinge { a: *[0.0, 0.25, 0.5, 1.0].choose(rng).unwrap() },
        _ => Outer::Combo {
            constant: rng.gen_range(0..4) as f64 / 4.0,
            parts: vec![
                Weighted { weight: rng.gen_range(1..=4) as f64 / 4.0, outer: Outer::Pow { q: 2.0 } },
                Weighted { weight: rng.gen_range(0..=4) as f64 / 4.0, outer: Outer::Hinge { a: 0.5 } },
            ],
        },
    }
}

/// Random `Φ(max_j ‖P_j‖)` over `n` variables: one or two quasi-polynomials with up to three
/// monomials of degree ≤ 3, dyadic coefficients in `[-1, 1]`, vectors of length 1 or 2.
/// With inputs bounded by one, values stay below 10³.
pub fn random_convex(rng: &mut impl Rng, n: usize) -> ConvexSpec {
    let dim = rng.gen_range(1..=2);
    let polys = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut masks: Vec<Mask> = (0..rng.gen_range(1..=3))
                .map(|_| loop {
                    let m: Mask = rng.gen_range(1..=mask::full(n));
                    if mask::size(m) <= 3 {
                        break m;
                    }
                })
                .collect();
            masks.sort_unstable();
            masks.dedup();
            let terms = masks
                .into_iter()
                .map(|m| (m, (0..dim).map(|_| rng.gen_range(-8..=8) as f64 / 8.0).collect()))
                .collect();
            QuasiPolynomial::new(terms).expect("distinct masks")
        })
        .collect();
    let norm = *[Norm::P(1.0), Norm::P(2.0), Norm::Sup].choose(rng).unwrap();
    ConvexSpec::new(polys, norm, random_outer(rng))
        .and_then(|g| g.with_arity(n))
        .expect("valid convex spec")
}

/// Pure order-`d` scalar chaos over `r_1..r_n` with up to `max_terms` nonzero dyadic
/// coefficients in `[-2, 2]`.
pub fn random_rademacher_chaos(rng: &mut impl Rng, n: usize, d: usize, max_terms: usize) -> ChaosSum {
    let mut masks = mask::of_size(n, d);
    masks.shuffle(rng);
    masks.truncate(rng.gen_range(1..=max_terms.min(masks.len()).max(1)));
    let terms = masks
        .into_iter()
        .map(|m| {
            let b = rng.gen_range(1..=16) as f64 / 8.0;
            (m, if rng.gen() { b } else { -b })
        })
        .collect();
    ChaosSum::rademacher(n, terms, d).expect("valid chaos sum")
}

/// Random cosine sum whose frequencies `≤ max_freq` all have power at most `d`.
pub fn random_trig_poly(rng: &mut impl Rng, d: usize, max_freq: u64, max_terms: usize) -> TrigPoly {
    let mut freqs: Vec<u64> = (1..=max_freq).filter(|f| (f.count_ones() as usize) <= d).collect();
    freqs.shuffle(rng);
    freqs.truncate(rng.gen_range(1..=max_terms.min(freqs.len())));
    TrigPoly::new(
        freqs
            .into_iter()
            .map(|freq| TrigTerm { freq, phase: rng.gen::<f64>(), coeff: rng.gen_range(-1.0..=1.0) })
            .collect(),
    )
    .expect("distinct frequencies")
}

/// One checked inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub inequality: String,
    /// SHA-256 (hex, first 16 bytes) of the canonical JSON of the inputs.
    pub digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Wall-clock time, recorded only on request so reports stay bit-reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl VerificationReport {
    pub fn new(inequality: &str, inputs: &impl Serialize, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        VerificationReport {
            schema: REPORT_SCHEMA,
            inequality: inequality.to_string(),
            digest: digest(inputs),
            seed: None,
            lhs,
            rhs,
            slack,
            tolerance,
            pass: slack >= -tolerance,
            elapsed_ms: None,
            details: serde_json::Value::Null,
        }
    }

    fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).unwrap_or(serde_json::Value::Null);
        self
    }
}

pub fn digest(inputs: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(inputs).unwrap_or_default();
    Sha256::digest(&bytes)[..16].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct AzumaDetails {
    #[serde(with = "crate::rational::serde_rational")]
    lambda: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    tail: Rational,
    mu_n: f64,
}

/// `|{Σφ_k > λ}| ≤ (1 + μ_n(φ)) exp(-2λ² / Σ(B_k - A_k)²)` with the tail measured exactly
/// (normalized to a unit domain).
pub fn azuma_check(sys: &BoundedSystem, lambda: &Rational, tol: f64) -> Result<VerificationReport> {
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter("λ must be positive".into()));
    }
    let mut sum = sys.member(0).clone();
    for m in &sys.members()[1..] {
        sum = sum.add(m)?;
    }
    let tail = sum.tail_measure(lambda) / sys.domain_end();
    let mu_n = mult_error(sys, sys.len())?;
    let spread = sys
        .bounds()
        .iter()
        .fold(Rational::zero(), |acc, b| {
            let w = b.upper() - b.lower();
            acc + &w * &w
        });
    let lam = rational::to_f64(lambda);
    let bound = (1.0 + rational::to_f64(&mu_n)) * (-2.0 * lam * lam / rational::to_f64(&spread)).exp();
    let report = VerificationReport::new("azuma", &(sys, rational::format(lambda)), rational::to_f64(&tail), bound, tol);
    Ok(report.with_details(AzumaDetails { lambda: lambda.clone(), tail, mu_n: rational::to_f64(&mu_n) }))
}

#[derive(Serialize)]
struct ExtensionDetails {
    d: usize,
    #[serde(with = "crate::rational::serde_rational")]
    mu: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    appended: Rational,
    zero_moments: bool,
    bounds_ok: bool,
    restriction_ok: bool,
}

/// Extension contract: zero raw moments on the family, bounds kept, input unchanged on
/// `[0, L)`, appended length `L · μ_𝔐`. Reported as `lhs = appended length`, `rhs = L·μ`.
pub fn extension_check(sys: &BoundedSystem, d: usize) -> Result<VerificationReport> {
    let family = SubsetFamily::up_to(sys.len(), d);
    let ext = extend_to_multiplicative(sys, &family)?;
    let mu = mult_error_family(sys, &family)?;
    let appended = ext.domain_end() - sys.domain_end();
    let expected = &mu * sys.domain_end();
    let zero_moments = family
        .masks()
        .map(|a| raw_moment(&ext, a))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(Zero::is_zero);
    // BoundedSystem::new re-validates bounds; rebuild explicitly to record it
    let bounds_ok = BoundedSystem::new(ext.members().to_vec(), sys.bounds().to_vec()).is_ok();
    let restriction_ok = ext.restrict(sys.domain_end())? == *sys;
    let exact = appended == expected && zero_moments && bounds_ok && restriction_ok;
    let mut report = VerificationReport::new(
        "extension",
        &(sys, d),
        rational::to_f64(&appended),
        rational::to_f64(&expected),
        0.0,
    );
    report.pass = exact;
    report.slack = if exact { 0.0 } else { -1.0 };
    Ok(report.with_details(ExtensionDetails { d, mu, appended, zero_moments, bounds_ok, restriction_ok }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Chaos,
    Trig,
    Azuma,
    Extension,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(Suite::Theorem1),
            "chaos" => Ok(Suite::Chaos),
            "trig" => Ok(Suite::Trig),
            "azuma" => Ok(Suite::Azuma),
            "extension" => Ok(Suite::Extension),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl Suite {
    pub fn default_instances(self) -> usize {
        match self {
            Suite::Theorem1 => 1000,
            Suite::Chaos => 500,
            Suite::Trig => 100,
            Suite::Azuma => 200,
            Suite::Extension => 200,
            Suite::All => 0,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Chaos => "chaos",
            Suite::Trig => "trig",
            Suite::Azuma => "azuma",
            Suite::Extension => "extension",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Overrides the per-suite instance count.
    pub instances: Option<usize>,
    pub tol: f64,
    pub record_timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { instances: None, tol: 1e-12, record_timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub min_slack: f64,
    pub instances: Vec<VerificationReport>,
}

fn theorem1_instance(seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=6);
    let sys = random_system(&mut rng, n, 8, 1.0)?;
    let g = random_convex(&mut rng, n);
    let d = rng.gen_range(1..=n);
    let rep = verify_theorem1(&sys, &g, d, tol)?;
    let mut out = VerificationReport::new("theorem1", &(&sys, &g, d), rep.lhs, (1.0 + rep.mu) * rep.rhs, tol);
    out.pass = rep.pass;
    if let Some(p) = &rep.pipeline {
        out.slack = out.slack.min(p.slack);
    }
    Ok(out.with_details(rep))
}

fn chaos_instance(seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let d = rng.gen_range(2..=3);
    let n = rng.gen_range(d.max(3)..=10);
    let p = *[3.0, 4.0, 6.0].choose(&mut rng).unwrap();
    let s = random_rademacher_chaos(&mut rng, n, d, 16);
    let rep = bonami_kiener_check(&s, p, tol)?;
    let mut out = VerificationReport::new("bonami-kiener", &(&s, p), rep.norm_p, rep.bound, tol);
    out.pass = rep.pass;
    Ok(out.with_details(rep))
}

fn trig_instance(seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let d = rng.gen_range(1..=2);
    let poly = random_trig_poly(&mut rng, d, 64, 5);
    let phi = YoungFn::Pow { p: *[2.0, 4.0].choose(&mut rng).unwrap() };
    let rep = corollary_x19_check(&poly, &phi, d, tol)?;
    let mut out = VerificationReport::new("x19", &(&poly, phi.to_string(), d), rep.lhs, rep.bound, tol);
    out.pass = rep.pass;
    Ok(out.with_details(rep))
}

/// λ values `{1/4, 1/2, 1, 2} · √n`, each the exact rational value of the rounded float.
pub fn azuma_lambdas(n: usize) -> Vec<Rational> {
    [0.25, 0.5, 1.0, 2.0]
        .iter()
        .map(|c| rational::from_f64(c * (n as f64).sqrt()).expect("finite"))
        .collect()
}

fn azuma_instance(seed: u64, tol: f64) -> Result<Vec<VerificationReport>> {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=6);
    let sys = match rng.gen_range(0..3) {
        0 => haar_martingale(&mut rng, n)?,
        _ => random_system(&mut rng, n, 8, 1.0)?,
    };
    azuma_lambdas(n).iter().map(|l| azuma_check(&sys, l, tol)).collect()
}

fn extension_instance(seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=6);
    let sys = random_system(&mut rng, n, 8, 1.0)?;
    let d = rng.gen_range(1..=3.min(n));
    extension_check(&sys, d)
}

/// Runs one suite (or all of them) and optionally writes `summary.json` and
/// `instances.jsonl` into `out`.
pub fn run_suite(suite: Suite, seed: u64, out: Option<&Path>, opts: &SuiteOptions) -> Result<SuiteReport> {
    let parts: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Theorem1, Suite::Extension, Suite::Chaos, Suite::Trig, Suite::Azuma],
        s => vec![s],
    };
    let mut instances = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let count = opts.instances.unwrap_or_else(|| part.default_instances());
        let part_seed = instance_seed(seed, usize::MAX - k);
        let tol = opts.tol;
        let batch: Vec<Vec<VerificationReport>> = (0..count)
            .into_par_iter()
            .map(|i| {
                let s = instance_seed(part_seed, i);
                let start = Instant::now();
                let mut reps = match part {
                    Suite::Theorem1 => vec![theorem1_instance(s, tol)?],
                    Suite::Chaos => vec![chaos_instance(s, 1e-9)?],
                    Suite::Trig => vec![trig_instance(s, 1e-6)?],
                    Suite::Azuma => azuma_instance(s, tol)?,
                    Suite::Extension => vec![extension_instance(s)?],
                    Suite::All => unreachable!(),
                };
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                for r in &mut reps {
                    r.seed = Some(s);
                    if opts.record_timings {
                        r.elapsed_ms = Some(elapsed);
                    }
                }
                Ok(reps)
            })
            .collect::<Result<_>>()?;
        instances.extend(batch.into_iter().flatten());
    }
    let passed = instances.iter().filter(|r| r.pass).count();
    let min_slack = instances.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let report = SuiteReport {
        schema: REPORT_SCHEMA,
        suite: suite.name().to_string(),
        seed,
        total: instances.len(),
        passed,
        failed: instances.len() - passed,
        pass: passed == instances.len(),
        min_slack,
        instances,
    };
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let mut lines = String::new();
        for r in &report.instances {
            lines.push_str(&serde_json::to_string(r)?);
            lines.push('\n');
        }
        std::fs::write(dir.join("instances.jsonl"), lines)?;
        std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report)
}
