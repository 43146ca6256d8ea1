//! Separately-convex test functions, moment-preserving extremalization to two-valued
//! systems, and the convex comparison against independent `{A_k, B_k}` laws.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::numeric::NeumaierSum;
use crate::rational::{self, Rational};
use crate::stepfn::{refine_all, StepFn};
use crate::systems::{
    canonical_independent_law, extend_to_multiplicative, mult_error, Atom, BoundedSystem, SubsetFamily,
};

/// Norm on the coefficient space `ℝ^m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Norm {
    P(f64),
    Sup,
}

impl Norm {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "max" => Ok(Norm::Sup),
            t => {
                let p: f64 = t.parse().map_err(|_| Error::Parse(format!("bad norm {s:?}")))?;
                if !(p >= 1.0) {
                    return Err(Error::InvalidParameter(format!("norm index {p} < 1")));
                }
                if p.is_infinite() {
                    Ok(Norm::Sup)
                } else {
                    Ok(Norm::P(p))
                }
            }
        }
    }

    pub fn apply(&self, v: &[f64]) -> f64 {
        match *self {
            Norm::Sup => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            Norm::P(p) if p == 1.0 => v.iter().map(|x| x.abs()).sum(),
            Norm::P(p) if p == 2.0 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::P(p) => v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Norm::Sup => s.serialize_str("inf"),
            Norm::P(p) => s.serialize_str(&p.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Norm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Norm::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Outer one-variable function `Φ: ℝ⁺ → ℝ⁺`. Every member of the family is convex and
/// nondecreasing on `ℝ⁺`, which is what makes `Φ(max_j ‖P_j‖)` separately convex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outer {
    /// `t^q`, `q ≥ 1`.
    Pow { q: f64 },
    /// `exp(c t)`, `c ≥ 0`.
    Exp { c: f64 },
    /// `max(t - a, 0)`.
    Hinge { a: f64 },
    /// `constant + Σ weight · part`, all weights and the constant nonnegative.
    Combo {
        #[serde(default)]
        constant: f64,
        parts: Vec<Weighted>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weighted {
    pub weight: f64,
    pub outer: Outer,
}

impl Outer {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            Outer::Pow { q } if !(*q >= 1.0 && q.is_finite()) => bad(format!("pow needs q >= 1, got {q}")),
            Outer::Exp { c } if !(*c >= 0.0 && c.is_finite()) => bad(format!("exp needs c >= 0, got {c}")),
            Outer::Hinge { a } if !a.is_finite() => bad("hinge offset must be finite".into()),
            Outer::Combo { constant, parts } => {
                if !(*constant >= 0.0) {
                    return bad("combo constant must be nonnegative".into());
                }
                for p in parts {
                    if !(p.weight >= 0.0 && p.weight.is_finite()) {
                        return bad(format!("combo weight {} must be nonnegative", p.weight));
                    }
                    p.outer.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Outer::Pow { q } if *q == 1.0 => t,
            Outer::Pow { q } if *q == 2.0 => t * t,
            Outer::Pow { q } if q.fract() == 0.0 && *q <= 16.0 => t.powi(*q as i32),
            Outer::Pow { q } => t.powf(*q),
            Outer::Exp { c } => (c * t).exp(),
            Outer::Hinge { a } => (t - a).max(0.0),
            Outer::Combo { constant, parts } => {
                parts.iter().fold(*constant, |acc, p| acc + p.weight * p.outer.eval(t))
            }
        }
    }
}

/// `P(t) = Σ_A x_A ∏_{k∈A} t_k` with vector coefficients `x_A ∈ ℝ^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiPolynomial {
    terms: Vec<(Mask, Vec<f64>)>,
    exact: Vec<Vec<Rational>>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mask: Vec<usize>,
    coeff: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl QuasiPolynomial {
    pub fn new(terms: Vec<(Mask, Vec<f64>)>) -> Result<Self> {
        let dim = terms.first().map_or(1, |(_, c)| c.len());
        let mut seen = std::collections::BTreeSet::new();
        for (m, c) in &terms {
            if *m == 0 {
                return Err(Error::EmptySubset);
            }
            if !seen.insert(*m) {
                return Err(Error::InvalidParameter(format!("repeated mask {:?}", mask::indices(*m))));
            }
            if c.len() != dim || dim == 0 {
                return Err(Error::Dimension { expected: dim, got: c.len() });
            }
        }
        let exact = terms
            .iter()
            .map(|(_, c)| c.iter().map(|&x| rational::from_f64(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QuasiPolynomial { terms, exact, dim })
    }

    /// Linear form `Σ a_k t_k` with scalar coefficients.
    pub fn linear(coeffs: &[f64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0.0)
                .map(|(k, &a)| (1 << k, vec![a]))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(Mask, Vec<f64>)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest 1-based variable index referenced.
    pub fn arity(&self) -> usize {
        self.terms.iter().map(|(m, _)| 64 - m.leading_zeros() as usize).max().unwrap_or(0)
    }

    pub fn eval(&self, t: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (m, c) in &self.terms {
            let prod: f64 = mask::members(*m).map(|k| t[k]).product();
            for (o, x) in out.iter_mut().zip(c) {
                *o += x * prod;
            }
        }
        out
    }

    /// Coordinates computed exactly, rounded once to `f64`.
    pub fn eval_exact(&self, t: &[Rational]) -> Vec<f64> {
        let mut out = vec![Rational::zero(); self.dim];
        for ((m, _), c) in self.terms.iter().zip(&self.exact) {
            let mut prod = Rational::one();
            for k in mask::members(*m) {
                if t[k].is_zero() {
                    prod = Rational::zero();
                    break;
                }
                prod *= &t[k];
            }
            if prod.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(c) {
                *o += x * &prod;
            }
        }
        out.iter().map(rational::to_f64).collect()
    }
}

impl Serialize for QuasiPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { mask: mask::indices(*m), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok((mask::from_indices(&t.mask)?, t.coeff)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        QuasiPolynomial::new(terms).map_err(D::Error::custom)
    }
}

/// `G(t) = Φ(max_j ‖P_j(t)‖)`, convex in each variable separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConvexRepr", into = "ConvexRepr")]
pub struct ConvexSpec {
    pub polys: Vec<QuasiPolynomial>,
    pub norm: Norm,
    pub outer: Outer,
    n: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ConvexRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    polys: Vec<QuasiPolynomial>,
    norm: Norm,
    outer: Outer,
}

impl TryFrom<ConvexRepr> for ConvexSpec {
    type Error = Error;
    fn try_from(r: ConvexRepr) -> Result<Self> {
        let mut g = ConvexSpec::new(r.polys, r.norm, r.outer)?;
        if let Some(n) = r.n {
            g = g.with_arity(n)?;
        }
        Ok(g)
    }
}

impl From<ConvexSpec> for ConvexRepr {
    fn from(g: ConvexSpec) -> Self {
        ConvexRepr { n: g.n, polys: g.polys, norm: g.norm, outer: g.outer }
    }
}

impl ConvexSpec {
    pub fn new(polys: Vec<QuasiPolynomial>, norm: Norm, outer: Outer) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidParameter("convex spec needs at least one polynomial".into()));
        }
        outer.validate()?;
        Ok(ConvexSpec { polys, norm, outer, n: None })
    }

    /// Pins the number of variables; evaluation then demands exactly `n` inputs.
    pub fn with_arity(mut self, n: usize) -> Result<Self> {
        let need = self.min_arity();
        if n < need {
            return Err(Error::Dimension { expected: need, got: n });
        }
        self.n = Some(n);
        Ok(self)
    }

    pub fn min_arity(&self) -> usize {
        self.polys.iter().map(|p| p.arity()).max().unwrap_or(0)
    }

    pub fn check_arity(&self, len: usize) -> Result<()> {
        match self.n {
            Some(n) if n != len => Err(Error::Dimension { expected: n, got: len }),
            _ if len < self.min_arity() => Err(Error::Dimension { expected: self.min_arity(), got: len }),
            _ => Ok(()),
        }
    }

    /// `Φ(t)` for a single scalar linear form: shorthand for `Φ(|Σ a_k t_k|)`.
    pub fn of_linear(coeffs: &[f64], outer: Outer) -> Result<Self> {
        Self::new(vec![QuasiPolynomial::linear(coeffs)?], Norm::P(2.0), outer)
    }

    fn combine(&self, norms: impl Iterator<Item = f64>) -> f64 {
        self.outer.eval(norms.fold(0.0, f64::max))
    }

    pub fn eval(&self, t: &[f64]) -> Result<f64> {
        self.check_arity(t.len())?;
        Ok(self.combine(self.polys.iter().map(|p| self.norm.apply(&p.eval(t)))))
    }

    pub fn eval_exact(&self, t: &[Rational]) -> Result<f64> {
        self.check_arity(t.len())?;
        Ok(self.combine(self.polys.iter().map(|p| self.norm.apply(&p.eval_exact(t)))))
    }
}

/// `G(t)` at a real point.
pub fn eval_convex(g: &ConvexSpec, t: &[f64]) -> Result<f64> {
    g.eval(t)
}

/// `E[G(φ_1, ..., φ_n)]` over the normalized domain.
pub fn expected_convex(sys: &BoundedSystem, g: &ConvexSpec) -> Result<f64> {
    g.check_arity(sys.len())?;
    let mut acc = NeumaierSum::default();
    for (vals, p) in sys.law() {
        acc.add(g.eval_exact(&vals)? * rational::to_f64(&p));
    }
    Ok(acc.value())
}

/// `Σ_atoms P(atom) · G(atom)`: brute force over a finite law.
pub fn expected_convex_law(atoms: &[Atom], g: &ConvexSpec) -> Result<f64> {
    let mut acc = NeumaierSum::default();
    for a in atoms {
        acc.add(g.eval_exact(&a.values)? * rational::to_f64(&a.prob));
    }
    Ok(acc.value())
}

/// One pass of the extremalization, replacing a single member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    /// 1-based member index.
    pub member: usize,
    /// Cells of the common partition the stage worked on.
    pub cells: usize,
    #[serde(with = "rational_vec")]
    pub c_points: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalizationTrace {
    pub stages: Vec<Stage>,
    pub output: BoundedSystem,
}

mod rational_vec {
    use crate::rational::{self, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational::format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| rational::parse(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Replaces member `k` (0-based) by a `{A_k, B_k}`-valued function.
///
/// On each cell `[α, β)` of the common partition, where member `k` equals `v`, the new
/// member is `B_k` on `[α, c)` and `A_k` on `[c, β)` with
/// `c = (B_k α - A_k β + v (β - α)) / (B_k - A_k)`. The cell integral of member `k` is kept,
/// and all other members are constant on the cell, so every mixed moment survives.
pub fn extremalize_member(sys: &BoundedSystem, k: usize) -> Result<(BoundedSystem, Stage)> {
    if k >= sys.len() {
        return Err(Error::Dimension { expected: sys.len(), got: k + 1 });
    }
    let part = refine_all(sys.members())?;
    let b = &sys.bounds()[k];
    let (lo, hi) = (b.lower(), b.upper());
    let width = hi - lo;
    let mut runs = Vec::with_capacity(2 * part.cell_count());
    let mut c_points = Vec::with_capacity(part.cell_count());
    for (alpha, beta, vals) in part.cells() {
        let c = (hi * alpha - lo * beta + &vals[k] * (beta - alpha)) / &width;
        runs.push((&c - alpha, hi.clone()));
        runs.push((beta - &c, lo.clone()));
        c_points.push(c);
    }
    let member = StepFn::from_runs(runs)?;
    let out = sys.with_member(k, member)?;
    Ok((out, Stage { member: k + 1, cells: part.cell_count(), c_points }))
}

/// Two-valued system `ξ` with `ξ_k ∈ {A_k, B_k}`, every mixed moment equal to that of
/// `sys`, and `E[G(φ)] ≤ E[G(ξ)]` for every separately-convex `G`. Members are processed
/// in order `1..n`; a different order yields a different `ξ` with the same guarantees.
pub fn extremalize(sys: &BoundedSystem) -> Result<(BoundedSystem, ExtremalizationTrace)> {
    let mut cur = sys.clone();
    let mut stages = Vec::with_capacity(sys.len());
    for k in 0..sys.len() {
        let (next, stage) = extremalize_member(&cur, k)?;
        cur = next;
        stages.push(stage);
    }
    let trace = ExtremalizationTrace { stages, output: cur.clone() };
    Ok((cur, trace))
}

/// Extend so all `#A ≤ d` moments vanish, squeeze back onto a unit domain, then extremalize.
/// The result is two-valued and `d`-multiplicative.
pub fn theorem1_pipeline(sys: &BoundedSystem, d: usize) -> Result<BoundedSystem> {
    if d == 0 || d > sys.len() {
        return Err(Error::OrderOutOfRange { d, n: sys.len() });
    }
    let family = SubsetFamily::up_to(sys.len(), d);
    let extended = extend_to_multiplicative(sys, &family)?;
    let squeezed = extended.rescale_to_unit()?;
    Ok(extremalize(&squeezed)?.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineComparison {
    pub r_prime: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub d: usize,
    pub n: usize,
    /// `E[G(φ)]`.
    pub lhs: f64,
    pub mu: f64,
    #[serde(with = "crate::rational::serde_rational")]
    pub mu_exact: Rational,
    /// `E[G(ξ)]` under the independent product law.
    pub rhs: f64,
    /// `(1 + μ_d) · rhs - lhs`.
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Comparison against the pipeline-built `ξ`, reported for `d < n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineComparison>,
}

/// `E[G(φ)] ≤ (1 + μ_d(φ)) E[G(ξ)]`, checked against the product law and, for `d < n`,
/// against the pipeline-built `d`-independent `ξ` as well.
pub fn verify_theorem1(sys: &BoundedSystem, g: &ConvexSpec, d: usize, tol: f64) -> Result<Theorem1Report> {
    let n = sys.len();
    let lhs = expected_convex(sys, g)?;
    let mu_exact = mult_error(sys, d)?;
    let mu = rational::to_f64(&mu_exact);
    let rhs = expected_convex_law(&canonical_independent_law(sys.bounds()), g)?;
    let slack = (1.0 + mu) * rhs - lhs;
    let pipeline = if d < n {
        let xi = theorem1_pipeline(sys, d)?;
        let r_prime = expected_convex(&xi, g)?;
        let slack = (1.0 + mu) * r_prime - lhs;
        Some(PipelineComparison { r_prime, slack, pass: slack >= -tol })
    } else {
        None
    };
    let pass = slack >= -tol && pipeline.as_ref().map_or(true, |p| p.pass);
    Ok(Theorem1Report { d, n, lhs, mu, mu_exact, rhs, slack, tolerance: tol, pass, pipeline })
}
