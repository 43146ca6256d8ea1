//! Trigonometric subsystems `cos 2πn(x + x_n)`, their dyadic product decomposition,
//! Luxemburg norms and the comparisons against Walsh sums of the same power.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chaos::{power, walsh_polynomial};
use crate::error::{Error, Result};
use crate::mask;
use crate::numeric::NeumaierSum;
use crate::rational::{self, Rational};
use crate::stepfn::StepFn;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub freq: u64,
    #[serde(default)]
    pub phase: f64,
    pub coeff: f64,
}

/// `Σ b_n cos 2πn(x + x_n)` over distinct positive frequencies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TrigRepr", into = "TrigRepr")]
pub struct TrigPoly {
    terms: Vec<TrigTerm>,
}

#[derive(Serialize, Deserialize)]
struct TrigRepr {
    terms: Vec<TrigTerm>,
}

impl TryFrom<TrigRepr> for TrigPoly {
    type Error = Error;
    fn try_from(r: TrigRepr) -> Result<Self> {
        TrigPoly::new(r.terms)
    }
}

impl From<TrigPoly> for TrigRepr {
    fn from(p: TrigPoly) -> Self {
        TrigRepr { terms: p.terms }
    }
}

impl TrigPoly {
    pub fn new(terms: Vec<TrigTerm>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for t in &terms {
            if t.freq == 0 {
                return Err(Error::InvalidTrig("frequencies must be positive".into()));
            }
            if !seen.insert(t.freq) {
                return Err(Error::InvalidTrig(format!("frequency {} repeated", t.freq)));
            }
            if !t.phase.is_finite() || !t.coeff.is_finite() {
                return Err(Error::InvalidTrig("non-finite phase or coefficient".into()));
            }
        }
        Ok(TrigPoly { terms })
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn max_freq(&self) -> u64 {
        self.terms.iter().map(|t| t.freq).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * cos_turns(t.freq as f64 * (x + t.phase)))
            .sum()
    }

    /// Terms sorted by frequency.
    pub fn sorted_terms(&self) -> Vec<&TrigTerm> {
        let mut v: Vec<&TrigTerm> = self.terms.iter().collect();
        v.sort_by_key(|t| t.freq);
        v
    }

    /// `max_m |Σ_{n ≤ m} b_n cos 2πn(x + x_n)|`.
    pub fn max_partial_abs(&self, x: f64) -> f64 {
        let mut s = 0.0;
        let mut best = 0.0f64;
        for t in self.sorted_terms() {
            s += t.coeff * cos_turns(t.freq as f64 * (x + t.phase));
            best = best.max(s.abs());
        }
        best
    }

    /// `Σ b_n w_n` with the same coefficients, phases dropped.
    pub fn walsh_counterpart(&self) -> Result<StepFn> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.freq, rational::from_f64(t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        walsh_polynomial(&terms)
    }

    /// `max_m |Σ_{n ≤ m} b_n w_n|` as an exact step function.
    pub fn walsh_max_partial(&self) -> Result<StepFn> {
        let sorted = self.sorted_terms();
        let mut partial = StepFn::constant(rational::one(), rational::zero())?;
        let mut best = partial.clone();
        for t in sorted {
            let w = walsh_polynomial(&[(t.freq, rational::from_f64(t.coeff)?)])?;
            partial = partial.add(&w)?;
            best = best.max(&partial.abs())?;
        }
        Ok(best)
    }
}

/// `cos 2πy` with `y` reduced mod 1 first.
fn cos_turns(y: f64) -> f64 {
    (2.0 * PI * (y - y.floor())).cos()
}

fn sin_turns(y: f64) -> f64 {
    (2.0 * PI * (y - y.floor())).sin()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wave {
    Sin,
    Cos,
}

/// `t(2^k (x + α))` with `t ∈ {sin 2π·, cos 2π·}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub wave: Wave,
    pub exponent: u32,
    pub phase: f64,
}

impl Factor {
    pub fn eval(&self, x: f64) -> f64 {
        let y = (1u64 << self.exponent) as f64 * (x + self.phase);
        match self.wave {
            Wave::Sin => sin_turns(y),
            Wave::Cos => cos_turns(y),
        }
    }
}

/// `sign · ∏ factors`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductTerm {
    pub sign: i8,
    pub factors: Vec<Factor>,
}

impl ProductTerm {
    pub fn eval(&self, x: f64) -> f64 {
        self.sign as f64 * self.factors.iter().map(|f| f.eval(x)).product::<f64>()
    }
}

/// Writes `cos 2πn(x + α)` as `2^{ρ(n)-1}` signed products over the binary digits of `n`.
///
/// With `θ_i = 2π 2^{k_i}(x + α)`, `cos Σθ_i` is the real part of `∏ (cos θ_i + i sin θ_i)`:
/// one product for each even-size set `S` of sine factors, with sign `(-1)^{|S|/2}`.
pub fn cos_product_decomposition(n: u64, alpha: f64) -> Result<Vec<ProductTerm>> {
    if n == 0 {
        return Err(Error::InvalidTrig("decomposition needs n >= 1".into()));
    }
    let exps: Vec<u32> = mask::members(n).map(|k| k as u32).collect();
    let d = exps.len();
    let terms = (0u64..1 << d)
        .filter(|s| s.count_ones() % 2 == 0)
        .map(|s| ProductTerm {
            sign: if (s.count_ones() / 2) % 2 == 0 { 1 } else { -1 },
            factors: exps
                .iter()
                .enumerate()
                .map(|(i, &k)| Factor {
                    wave: if s >> i & 1 == 1 { Wave::Sin } else { Wave::Cos },
                    exponent: k,
                    phase: alpha,
                })
                .collect(),
        })
        .collect();
    Ok(terms)
}

/// Composite Gauss–Legendre rule on `[0, 1)` with equal panels.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_08,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_08,
];

/// Panel cap for the doubling loops.
pub const MAX_PANELS: usize = 1 << 22;

impl GaussRule {
    pub fn composite(panels: usize) -> Self {
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::with_capacity(5 * panels);
        let mut weights = Vec::with_capacity(5 * panels);
        for i in 0..panels {
            let mid = (i as f64 + 0.5) * h;
            for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        GaussRule { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .collect::<NeumaierSum>()
            .value()
    }
}

/// Initial panel count: `64 × max(freq, 1)`, rounded up to a power of two so panel edges
/// land on dyadic points.
pub fn initial_panels(max_freq: u64) -> usize {
    (64 * max_freq.max(1) as usize).next_power_of_two()
}

/// `∫_0^1 f`, doubling the panel count until two successive estimates differ by
/// less than `tol / 2`.
pub fn quadrature(f: impl Fn(f64) -> f64, max_freq: u64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("quadrature tolerance must be positive".into()));
    }
    let mut panels = initial_panels(max_freq);
    let mut prev = GaussRule::composite(panels).integrate(&f);
    while panels < MAX_PANELS {
        panels *= 2;
        let cur = GaussRule::composite(panels).integrate(&f);
        if (cur - prev).abs() < tol / 2.0 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature { tol, panels })
}

/// `∫_0^1 f` for `f` smooth on each interval between consecutive `cuts`, each interval
/// refined by doubling on its own.
pub fn quadrature_split(f: impl Fn(f64) -> f64, cuts: &[f64], tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("quadrature tolerance must be positive".into()));
    }
    let mut pts: Vec<f64> = cuts.iter().copied().filter(|x| *x > 0.0 && *x < 1.0).collect();
    pts.push(0.0);
    pts.push(1.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let local_tol = tol / pts.len() as f64;
    let mut total = NeumaierSum::default();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let on = |panels: usize| {
            let rule = GaussRule::composite(panels);
            (b - a) * rule.integrate(|t| f(a + (b - a) * t))
        };
        let mut panels = 1;
        let mut prev = on(panels);
        loop {
            panels *= 2;
            let cur = on(panels);
            if (cur - prev).abs() < local_tol / 2.0 {
                total.add(cur);
                break;
            }
            if panels >= MAX_PANELS {
                return Err(Error::Quadrature { tol, panels });
            }
            prev = cur;
        }
    }
    Ok(total.value())
}

/// Young function from a closed family; all members are convex with
/// `Φ(t)/t → 0` at `0⁺` and `t/Φ(t) → 0` at `∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum YoungFn {
    /// `t^p`, `p > 1`.
    Pow { p: f64 },
    /// `t log(1 + t)`.
    TLog,
    /// `e^t - 1 - t`.
    Exp,
    /// Nonnegative combination; at least one positive weight.
    Combo { parts: Vec<(f64, YoungFn)> },
}

impl YoungFn {
    pub fn validate(&self) -> Result<()> {
        match self {
            YoungFn::Pow { p } if !(*p > 1.0 && p.is_finite()) => {
                Err(Error::InvalidParameter(format!("Young power needs p > 1, got {p}")))
            }
            YoungFn::Combo { parts } => {
                if parts.iter().all(|(w, _)| *w <= 0.0) || parts.iter().any(|(w, _)| !(*w >= 0.0)) {
                    return Err(Error::InvalidParameter(
                        "Young combination needs nonnegative weights, one positive".into(),
                    ));
                }
                parts.iter().try_for_each(|(_, y)| y.validate())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            YoungFn::Pow { p } if *p == 2.0 => t * t,
            YoungFn::Pow { p } if p.fract() == 0.0 && *p <= 16.0 => t.powi(*p as i32),
            YoungFn::Pow { p } => t.powf(*p),
            YoungFn::TLog => t * t.ln_1p(),
            YoungFn::Exp => t.exp_m1() - t,
            YoungFn::Combo { parts } => parts.iter().map(|(w, y)| w * y.eval(t)).sum(),
        }
    }

    /// `Φ^{-1}(1)` by bisection.
    pub fn inverse_at_one(&self) -> f64 {
        if let YoungFn::Pow { .. } = self {
            return 1.0;
        }
        let mut hi = 1.0;
        while self.eval(hi) < 1.0 {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

impl fmt::Display for YoungFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YoungFn::Pow { p } => write!(f, "pow:{p}"),
            YoungFn::TLog => write!(f, "tlog"),
            YoungFn::Exp => write!(f, "exp"),
            YoungFn::Combo { parts } => {
                let s: Vec<String> = parts.iter().map(|(w, y)| format!("{w}*{y}")).collect();
                write!(f, "{}", s.join("+"))
            }
        }
    }
}

/// Parses `pow:p`, `tlog`, `exp`, or `w*A+w*B` combinations of those.
impl FromStr for YoungFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown Young function {s:?}"));
        let s = s.trim();
        if s.contains('+') || s.contains('*') {
            let parts = s
                .split('+')
                .map(|part| {
                    let (w, y) = match part.split_once('*') {
                        Some((w, y)) => (w.trim().parse::<f64>().map_err(|_| bad())?, y),
                        None => (1.0, part),
                    };
                    Ok((w, single_young(y.trim()).ok_or_else(bad)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let y = YoungFn::Combo { parts };
            y.validate()?;
            return Ok(y);
        }
        let y = single_young(s).ok_or_else(bad)?;
        y.validate()?;
        Ok(y)
    }
}

fn single_young(s: &str) -> Option<YoungFn> {
    match s {
        "tlog" => Some(YoungFn::TLog),
        "exp" => Some(YoungFn::Exp),
        _ => {
            let p = s.strip_prefix("pow:")?.parse().ok()?;
            Some(YoungFn::Pow { p })
        }
    }
}

/// Result of a Luxemburg-norm bisection with its `(λ, ∫Φ(|f|/λ))` evaluations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Luxemburg {
    pub norm: f64,
    pub trace: Vec<(f64, f64)>,
}

const BISECTION_STEPS: usize = 60;

/// `inf {λ > 0 : Σ w_i Φ(|v_i| / λ) ≤ 1}` for a discrete measure.
pub fn luxemburg_weighted(values: &[f64], weights: &[f64], phi: &YoungFn, tol: f64) -> Result<Luxemburg> {
    phi.validate()?;
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if sup == 0.0 {
        return Ok(Luxemburg { norm: 0.0, trace: Vec::new() });
    }
    let modular = |lambda: f64| -> f64 {
        values
            .iter()
            .zip(weights)
            .filter(|(v, _)| **v != 0.0)
            .map(|(v, w)| w * phi.eval(v.abs() / lambda))
            .collect::<NeumaierSum>()
            .value()
    };
    let mut hi = sup / phi.inverse_at_one() + 1.0;
    let mut lo = sup * 1e-12;
    let mut trace = vec![(hi, modular(hi)), (lo, modular(lo))];
    if trace[1].1 <= 1.0 {
        return Ok(Luxemburg { norm: lo, trace });
    }
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= tol * lo * 1e-3 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let m = modular(mid);
        trace.push((mid, m));
        if m <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Luxemburg { norm: hi, trace })
}

/// Luxemburg norm of a step function, exact cell weights. The cells are exact, so the
/// bisection always runs to machine precision; `tol` is accepted for symmetry only.
pub fn luxemburg_norm_step(f: &StepFn, phi: &YoungFn, _tol: f64) -> Result<Luxemburg> {
    let total = rational::to_f64(f.domain_end());
    let (vals, weights): (Vec<f64>, Vec<f64>) = f
        .pieces()
        .map(|(a, b, v)| (rational::to_f64(v), rational::to_f64(&(b - a)) / total))
        .unzip();
    luxemburg_weighted(&vals, &weights, phi, 0.0)
}

/// Luxemburg norm of a bounded function on `[0, 1)`. The Gauss rule is refined by doubling
/// until two successive norm estimates agree to relative `tol`.
pub fn luxemburg_norm(f: impl Fn(f64) -> f64, max_freq: u64, phi: &YoungFn, tol: f64) -> Result<Luxemburg> {
    let mut panels = initial_panels(max_freq);
    let at = |panels: usize| {
        let rule = GaussRule::composite(panels);
        let vals: Vec<f64> = rule.nodes.iter().map(|&x| f(x)).collect();
        luxemburg_weighted(&vals, &rule.weights, phi, tol)
    };
    let mut prev = at(panels)?;
    while panels < MAX_PANELS {
        panels *= 2;
        let cur = at(panels)?;
        if (cur.norm - prev.norm).abs() <= tol * cur.norm.max(f64::MIN_POSITIVE) / 2.0 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Quadrature { tol, panels })
}

/// `‖f‖_p = (∫|f|^p)^{1/p}` by quadrature.
pub fn quadrature_p_norm(f: impl Fn(f64) -> f64, max_freq: u64, p: f64, tol: f64) -> Result<f64> {
    Ok(quadrature(|x| f(x).abs().powf(p), max_freq, tol)?.powf(1.0 / p))
}

fn check_power_of_two(n: u64) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidTrig(format!("{n} is not a power of two")));
    }
    Ok(())
}

/// `D_N^T = Σ_{k=1}^N cos 2πkx`.
pub fn dirichlet_t(n: u64) -> Result<TrigPoly> {
    check_power_of_two(n)?;
    TrigPoly::new((1..=n).map(|k| TrigTerm { freq: k, phase: 0.0, coeff: 1.0 }).collect())
}

/// `D_N^W = Σ_{k=1}^N w_k`.
pub fn dirichlet_w(n: u64) -> Result<StepFn> {
    check_power_of_two(n)?;
    let terms: Vec<(u64, Rational)> = (1..=n).map(|k| (k, rational::one())).collect();
    walsh_polynomial(&terms)
}

/// Closed form `Σ_{k=1}^N cos 2πkx = sin(Nπx) cos((N+1)πx) / sin(πx)`.
pub fn dirichlet_kernel(n: u64, x: f64) -> f64 {
    let t = PI * (x - x.floor());
    let s = t.sin();
    if s.abs() < 1e-300 {
        return n as f64;
    }
    let nf = n as f64;
    (nf * t).sin() * ((nf + 1.0) * t).cos() / s
}

/// Zeros of the closed form in `(0, 1)`: `j/N` and `(j + 1/2)/(N + 1)`.
pub fn dirichlet_zeros(n: u64) -> Vec<f64> {
    let nf = n as f64;
    (1..n)
        .map(|j| j as f64 / nf)
        .chain((0..=n).map(|j| (j as f64 + 0.5) / (nf + 1.0)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletRow {
    pub n: u32,
    pub norm_t: f64,
    pub norm_w: f64,
    pub ratio: f64,
}

/// `‖D_{2^n}^T‖ / ‖D_{2^n}^W‖` for `n` in `range`; `L^1` norms unless a Young function is given.
pub fn dirichlet_table(
    range: std::ops::RangeInclusive<u32>,
    young: Option<&YoungFn>,
    tol: f64,
) -> Result<Vec<DirichletRow>> {
    range
        .map(|n| {
            let big_n = 1u64 << n;
            let w = dirichlet_w(big_n)?;
            let kernel = |x: f64| dirichlet_kernel(big_n, x);
            let (norm_t, norm_w) = match young {
                None => (
                    quadrature_split(|x| kernel(x).abs(), &dirichlet_zeros(big_n), tol)?,
                    rational::to_f64(&w.abs_moment(1)),
                ),
                Some(phi) => (
                    luxemburg_norm(kernel, big_n, phi, tol)?.norm,
                    luxemburg_norm_step(&w, phi, tol)?.norm,
                ),
            };
            Ok(DirichletRow { n, norm_t, norm_w, ratio: norm_t / norm_w })
        })
        .collect()
}

pub fn dirichlet_csv(rows: &[DirichletRow]) -> String {
    let mut s = String::from("n,norm_T,norm_W,ratio\n");
    for r in rows {
        s.push_str(&format!("{},{:.15},{:.15},{:.15}\n", r.n, r.norm_t, r.norm_w, r.ratio));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigReport {
    pub d: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// `constant · rhs`.
    pub bound: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn max_power(p: &TrigPoly, d: usize) -> Result<()> {
    if let Some(t) = p.terms.iter().find(|t| power(t.freq) > d) {
        return Err(Error::InvalidTrig(format!("frequency {} has power {} > {d}", t.freq, power(t.freq))));
    }
    Ok(())
}

fn report(d: usize, lhs: f64, rhs: f64, constant: f64, tol: f64) -> TrigReport {
    let bound = constant * rhs;
    let slack = bound - lhs;
    TrigReport { d, lhs, rhs, bound, slack, tolerance: tol, pass: slack >= -tol }
}

/// `‖Σ b_n cos 2πn(x+x_n)‖_Φ ≤ 2^{d-1} ‖Σ b_n w_n‖_Φ` when every `ρ(n) ≤ d`.
pub fn corollary_x19_check(p: &TrigPoly, phi: &YoungFn, d: usize, tol: f64) -> Result<TrigReport> {
    max_power(p, d)?;
    let d = d.max(1);
    let lhs = luxemburg_norm(|x| p.eval(x), p.max_freq(), phi, tol)?.norm;
    let rhs = luxemburg_norm_step(&p.walsh_counterpart()?, phi, tol)?.norm;
    Ok(report(d, lhs, rhs, (1u64 << (d - 1)) as f64, tol))
}

/// Maximal-partial-sum version, summing in increasing frequency order on both sides.
pub fn corollary_x20_check(p: &TrigPoly, phi: &YoungFn, d: usize, tol: f64) -> Result<TrigReport> {
    max_power(p, d)?;
    let d = d.max(1);
    let lhs = luxemburg_norm(|x| p.max_partial_abs(x), p.max_freq(), phi, tol)?.norm;
    let rhs = luxemburg_norm_step(&p.walsh_max_partial()?, phi, tol)?.norm;
    Ok(report(d, lhs, rhs, (1u64 << (d - 1)) as f64, tol))
}

/// `‖P‖_p ≤ 2^{d-1} (p-1)^{d/2} ‖P‖_2` when every frequency has power exactly `d`.
pub fn inequality_x21_check(poly: &TrigPoly, p: f64, d: usize, tol: f64) -> Result<TrigReport> {
    if !(p > 2.0) {
        return Err(Error::InvalidParameter(format!("need p > 2, got {p}")));
    }
    if d == 0 {
        return Err(Error::InvalidTrig("power d must be at least 1".into()));
    }
    if let Some(t) = poly.terms.iter().find(|t| power(t.freq) != d) {
        return Err(Error::InvalidTrig(format!("frequency {} has power {} != {d}", t.freq, power(t.freq))));
    }
    if poly.terms.is_empty() {
        return Ok(report(d, 0.0, 0.0, 0.0, tol));
    }
    let quad_tol = tol * 1e-3;
    let lhs = quadrature_p_norm(|x| poly.eval(x), poly.max_freq(), p, quad_tol)?;
    let rhs = quadrature_p_norm(|x| poly.eval(x), poly.max_freq(), 2.0, quad_tol)?;
    let constant = (1u64 << (d - 1)) as f64 * (p - 1.0).powf(d as f64 / 2.0);
    Ok(report(d, lhs, rhs, constant, tol))
}
