//! Rademacher and Walsh functions, product systems `φ_A`, chaos sums and the
//! moment-comparison checks built on them.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{Norm, Outer};
use crate::mask::{self, Mask};
use crate::numeric::NeumaierSum;
use crate::rational::{self, Rational};
use crate::stepfn::{refine_all, StepFn};
use crate::systems::{canonical_independent_law, is_d_multiplicative, mult_error, BoundedSystem, Bounds};

/// Largest Rademacher index materialized as a step function (`2^k` pieces).
pub const MAX_RADEMACHER: u32 = 24;

/// `r_k`: `+1, -1, +1, ...` on the `2^k` dyadic intervals of length `2^{-k}`.
pub fn rademacher(k: u32) -> Result<StepFn> {
    if k == 0 || k > MAX_RADEMACHER {
        return Err(Error::InvalidParameter(format!("Rademacher index {k} outside 1..={MAX_RADEMACHER}")));
    }
    dyadic(k, |j| if j % 2 == 0 { 1 } else { -1 })
}

fn dyadic(k: u32, sign: impl Fn(u64) -> i64) -> Result<StepFn> {
    let cells = 1u64 << k;
    let den = cells as i64;
    let bps = (0..=cells).map(|j| rational::rat(j as i64, den)).collect();
    let vals = (0..cells).map(|j| rational::int(sign(j))).collect();
    StepFn::new(rational::one(), bps, vals)
}

/// `r_1, ..., r_n`.
pub fn rademacher_system(n: usize) -> Result<BoundedSystem> {
    let members = (1..=n as u32).map(rademacher).collect::<Result<Vec<_>>>()?;
    BoundedSystem::unit(members)
}

/// Binary decomposition `n = 2^{k_1} + ... + 2^{k_d}`, `k_1 < ... < k_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshIndex {
    pub n: u64,
    pub exponents: Vec<u32>,
}

impl WalshIndex {
    /// `ρ(n)`, the number of Rademacher factors of `w_n`.
    pub fn power(&self) -> usize {
        self.exponents.len()
    }

    /// Subset mask of `w_n`; bit `k` stands for `r_{k+1}`, so this is `n` itself.
    pub fn mask(&self) -> Mask {
        self.n
    }
}

pub fn walsh_decompose(n: u64) -> Result<WalshIndex> {
    if n == 0 {
        return Err(Error::InvalidParameter("Walsh decomposition needs n >= 1".into()));
    }
    Ok(WalshIndex { n, exponents: mask::members(n).map(|k| k as u32).collect() })
}

/// `ρ(n)`; `ρ(0) = 0`.
pub fn power(n: u64) -> usize {
    n.count_ones() as usize
}

/// `w_n` in the canonical numeration, `w_0 ≡ 1`.
pub fn walsh(n: u64) -> Result<StepFn> {
    if n == 0 {
        return StepFn::constant(rational::one(), rational::one());
    }
    let levels = 64 - n.leading_zeros();
    if levels > MAX_RADEMACHER {
        return Err(Error::InvalidParameter(format!("Walsh index {n} needs more than {MAX_RADEMACHER} levels")));
    }
    // cell j of 2^levels: r_k reads binary digit k of x, i.e. bit (levels - k) of j
    dyadic(levels, |j| {
        let flips = mask::members(n)
            .filter(|&b| (j >> (levels - 1 - b as u32)) & 1 == 1)
            .count();
        if flips % 2 == 0 {
            1
        } else {
            -1
        }
    })
}

/// `Σ b_n w_n` as an exact step function.
pub fn walsh_polynomial(terms: &[(u64, Rational)]) -> Result<StepFn> {
    let mut acc = StepFn::constant(rational::one(), Rational::zero())?;
    if terms.is_empty() {
        return Ok(acc);
    }
    let levels = terms.iter().map(|(n, _)| 64 - n.leading_zeros()).max().unwrap_or(0);
    if levels > MAX_RADEMACHER {
        return Err(Error::InvalidParameter("Walsh index too large".into()));
    }
    if levels == 0 {
        let c = terms.iter().fold(Rational::zero(), |a, (_, b)| a + b);
        return StepFn::constant(rational::one(), c);
    }
    let cells = 1u64 << levels;
    let vals: Vec<Rational> = (0..cells)
        .map(|j| {
            terms.iter().fold(Rational::zero(), |a, (n, b)| {
                let flips = mask::members(*n)
                    .filter(|&bit| (j >> (levels - 1 - bit as u32)) & 1 == 1)
                    .count();
                if flips % 2 == 0 {
                    a + b
                } else {
                    a - b
                }
            })
        })
        .collect();
    let bps = (0..=cells).map(|j| rational::rat(j as i64, cells as i64)).collect();
    acc = StepFn::new(rational::one(), bps, vals)?;
    Ok(acc)
}

/// `φ_A = ∏_{k∈A} φ_k`.
pub fn product_member(base: &BoundedSystem, a: Mask) -> Result<StepFn> {
    mask::check(a, base.len())?;
    let mut it = mask::members(a);
    let mut acc = base.member(it.next().expect("nonempty")).clone();
    for k in it {
        acc = acc.multiply(base.member(k))?;
    }
    Ok(acc)
}

/// Base system of a chaos sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChaosBase {
    /// `r_1, ..., r_count`.
    Rademacher(usize),
    System(BoundedSystem),
}

impl ChaosBase {
    pub fn len(&self) -> usize {
        match self {
            ChaosBase::Rademacher(n) => *n,
            ChaosBase::System(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn system(&self) -> Result<BoundedSystem> {
        match self {
            ChaosBase::Rademacher(n) => rademacher_system(*n),
            ChaosBase::System(s) => Ok(s.clone()),
        }
    }

    /// Value vectors of the base with their probabilities.
    pub fn law(&self) -> Result<Vec<(Vec<Rational>, Rational)>> {
        match self {
            ChaosBase::Rademacher(n) => Ok(canonical_independent_law(&vec![Bounds::unit(); *n])
                .into_iter()
                .map(|a| (a.values, a.prob))
                .collect()),
            ChaosBase::System(s) => Ok(s.law()),
        }
    }
}

/// `Σ_A b_A φ_A` with distinct nonempty masks of size at most `order`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChaosRepr", into = "ChaosRepr")]
pub struct ChaosSum {
    base: ChaosBase,
    terms: Vec<(Mask, Vec<f64>)>,
    exact: Vec<Vec<Rational>>,
    order: usize,
}

#[derive(Serialize, Deserialize)]
struct ChaosTermRepr {
    mask: Vec<usize>,
    coeff: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ChaosRepr {
    base: ChaosBase,
    terms: Vec<ChaosTermRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
}

impl TryFrom<ChaosRepr> for ChaosSum {
    type Error = Error;
    fn try_from(r: ChaosRepr) -> Result<Self> {
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok((mask::from_indices(&t.mask)?, t.coeff)))
            .collect::<Result<Vec<_>>>()?;
        let order = r
            .order
            .unwrap_or_else(|| terms.iter().map(|(m, _)| mask::size(*m)).max().unwrap_or(1));
        ChaosSum::new(r.base, terms, order)
    }
}

impl From<ChaosSum> for ChaosRepr {
    fn from(s: ChaosSum) -> Self {
        ChaosRepr {
            base: s.base,
            terms: s
                .terms
                .into_iter()
                .map(|(m, coeff)| ChaosTermRepr { mask: mask::indices(m), coeff })
                .collect(),
            order: Some(s.order),
        }
    }
}

impl ChaosSum {
    pub fn new(base: ChaosBase, terms: Vec<(Mask, Vec<f64>)>, order: usize) -> Result<Self> {
        let dim = terms.first().map_or(1, |(_, c)| c.len());
        let mut seen = std::collections::BTreeSet::new();
        for (m, c) in &terms {
            mask::check(*m, base.len()).map_err(|e| Error::InvalidChaos(e.to_string()))?;
            if !seen.insert(*m) {
                return Err(Error::InvalidChaos(format!("mask {:?} appears twice", mask::indices(*m))));
            }
            if mask::size(*m) > order {
                return Err(Error::InvalidChaos(format!(
                    "mask {:?} exceeds order {order}",
                    mask::indices(*m)
                )));
            }
            if c.len() != dim || dim == 0 {
                return Err(Error::Dimension { expected: dim, got: c.len() });
            }
        }
        let exact = terms
            .iter()
            .map(|(_, c)| c.iter().map(|&x| rational::from_f64(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ChaosSum { base, terms, exact, order })
    }

    /// Scalar chaos over `r_1, ..., r_n`.
    pub fn rademacher(n: usize, terms: Vec<(Mask, f64)>, order: usize) -> Result<Self> {
        Self::new(
            ChaosBase::Rademacher(n),
            terms.into_iter().map(|(m, b)| (m, vec![b])).collect(),
            order,
        )
    }

    pub fn base(&self) -> &ChaosBase {
        &self.base
    }

    pub fn terms(&self) -> &[(Mask, Vec<f64>)] {
        &self.terms
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.terms.first().map_or(1, |(_, c)| c.len())
    }

    /// Same terms over another base.
    pub fn with_base(&self, base: ChaosBase) -> Result<Self> {
        Self::new(base, self.terms.clone(), self.order)
    }

    /// The common order when every mask has the same size.
    pub fn pure_order(&self) -> Option<usize> {
        let mut sizes = self.terms.iter().map(|(m, _)| mask::size(*m));
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    fn position(&self, m: Mask) -> Option<usize> {
        self.terms.iter().position(|(t, _)| *t == m)
    }
}

fn product_at(vals: &[Rational], m: Mask) -> Rational {
    let mut p = Rational::one();
    for k in mask::members(m) {
        if vals[k].is_zero() {
            return Rational::zero();
        }
        p *= &vals[k];
    }
    p
}

/// `Σ_A b_A φ_A`, one exact step function per coefficient coordinate.
pub fn chaos_eval(s: &ChaosSum) -> Result<Vec<StepFn>> {
    let dim = s.dim();
    let base = s.base.system()?;
    if s.terms.is_empty() {
        return Ok(vec![StepFn::constant(base.domain_end().clone(), Rational::zero())?; dim]);
    }
    let part = refine_all(base.members())?;
    let mut coords: Vec<Vec<Rational>> = vec![Vec::with_capacity(part.cell_count()); dim];
    for row in &part.values {
        let mut sums = vec![Rational::zero(); dim];
        for ((m, _), c) in s.terms.iter().zip(&s.exact) {
            let p = product_at(row, *m);
            if p.is_zero() {
                continue;
            }
            for (acc, b) in sums.iter_mut().zip(c) {
                *acc += b * &p;
            }
        }
        for (col, v) in coords.iter_mut().zip(sums) {
            col.push(v);
        }
    }
    coords
        .into_iter()
        .map(|vals| StepFn::new(base.domain_end().clone(), part.breakpoints.clone(), vals))
        .collect()
}

fn exact_norm(v: &[Rational], norm: Norm) -> Rational {
    match norm {
        Norm::P(p) if p == 1.0 => v.iter().fold(Rational::zero(), |a, x| a + x.abs()),
        Norm::Sup => v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero),
        _ if v.len() == 1 => v[0].abs(),
        _ => {
            let f: Vec<f64> = v.iter().map(rational::to_f64).collect();
            rational::from_f64(norm.apply(&f)).expect("finite norm")
        }
    }
}

/// `x ↦ max_j ‖Σ_{i≤j} b_{A_i} φ_{A_i}(x)‖` over prefixes of `order`.
///
/// Scalar sums and the `1`/`∞` norms stay exact; other vector norms are rounded to `f64`
/// per cell.
pub fn max_partial_sum(s: &ChaosSum, order: &[Mask], norm: Norm) -> Result<StepFn> {
    let perm = permutation(s, order)?;
    let base = s.base.system()?;
    let part = refine_all(base.members())?;
    let dim = s.dim();
    let vals = part
        .values
        .iter()
        .map(|row| {
            let mut sums = vec![Rational::zero(); dim];
            let mut best = Rational::zero();
            for &i in &perm {
                let p = product_at(row, s.terms[i].0);
                for (acc, b) in sums.iter_mut().zip(&s.exact[i]) {
                    *acc += b * &p;
                }
                let nrm = exact_norm(&sums, norm);
                if nrm > best {
                    best = nrm;
                }
            }
            best
        })
        .collect();
    StepFn::new(base.domain_end().clone(), part.breakpoints.clone(), vals)
}

fn permutation(s: &ChaosSum, order: &[Mask]) -> Result<Vec<usize>> {
    if order.len() != s.terms.len() {
        return Err(Error::InvalidChaos(format!(
            "order lists {} masks for {} terms",
            order.len(),
            s.terms.len()
        )));
    }
    let mut used = vec![false; s.terms.len()];
    order
        .iter()
        .map(|&m| {
            let i = s
                .position(m)
                .ok_or_else(|| Error::InvalidChaos(format!("mask {:?} is not a term", mask::indices(m))))?;
            if std::mem::replace(&mut used[i], true) {
                return Err(Error::InvalidChaos(format!("mask {:?} repeated in order", mask::indices(m))));
            }
            Ok(i)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BonamiReport {
    pub order: usize,
    pub p: f64,
    pub norm_p: f64,
    pub norm_2: f64,
    /// `(p - 1)^{d/2} ‖S‖_2`.
    pub bound: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `‖S‖_p ≤ (p-1)^{d/2} ‖S‖_2` for a pure order-`d` scalar chaos sum.
///
/// A non-Rademacher base must be bounded by one in sup norm and `d`-multiplicative.
pub fn bonami_kiener_check(s: &ChaosSum, p: f64, tol: f64) -> Result<BonamiReport> {
    if !(p > 2.0) {
        return Err(Error::InvalidParameter(format!("need p > 2, got {p}")));
    }
    if s.dim() != 1 {
        return Err(Error::InvalidChaos("Bonami-Kiener check takes scalar coefficients".into()));
    }
    let order = match (s.terms.is_empty(), s.pure_order()) {
        (true, _) => s.order,
        (false, Some(d)) => d,
        (false, None) => return Err(Error::InvalidChaos("terms mix different orders".into())),
    };
    if let ChaosBase::System(base) = &s.base {
        check_unit_sup(base)?;
        if order > 0 && order <= base.len() && !is_d_multiplicative(base, order)? {
            return Err(Error::InvalidChaos(format!("base is not {order}-multiplicative")));
        }
    }
    let f = chaos_eval(s)?.remove(0);
    let norm_p = f.p_norm(p)?;
    let norm_2 = rational::to_f64(&f.abs_moment(2)).sqrt();
    let bound = (p - 1.0).powf(order as f64 / 2.0) * norm_2;
    let slack = bound - norm_p;
    Ok(BonamiReport { order, p, norm_p, norm_2, bound, slack, tolerance: tol, pass: slack >= -tol })
}

fn check_unit_sup(base: &BoundedSystem) -> Result<()> {
    for (k, m) in base.members().iter().enumerate() {
        if m.sup_abs() > rational::one() {
            return Err(Error::InvalidChaos(format!("base member {} exceeds 1 in sup norm", k + 1)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    /// `(1 + μ_d) rhs - lhs`.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary2Report {
    pub d: usize,
    pub mu: f64,
    pub tolerance: f64,
    pub plain: Comparison,
    pub maximal: Comparison,
    pub pass: bool,
}

/// `(E[Φ(‖S‖)], E[Φ(max_j ‖S_j‖)])` with prefixes following `perm`.
fn outer_expectations(
    law: &[(Vec<Rational>, Rational)],
    s: &ChaosSum,
    perm: &[usize],
    outer: &Outer,
    norm: Norm,
) -> (f64, f64) {
    let dim = s.dim();
    let mut plain = NeumaierSum::default();
    let mut maximal = NeumaierSum::default();
    for (vals, prob) in law {
        let mut sums = vec![Rational::zero(); dim];
        let mut best = 0.0f64;
        for &i in perm {
            let p = product_at(vals, s.terms[i].0);
            if !p.is_zero() {
                for (acc, b) in sums.iter_mut().zip(&s.exact[i]) {
                    *acc += b * &p;
                }
            }
            let f: Vec<f64> = sums.iter().map(rational::to_f64).collect();
            best = best.max(norm.apply(&f));
        }
        let f: Vec<f64> = sums.iter().map(rational::to_f64).collect();
        let w = rational::to_f64(prob);
        plain.add(outer.eval(norm.apply(&f)) * w);
        maximal.add(outer.eval(best) * w);
    }
    (plain.value(), maximal.value())
}

/// Compares `E[Φ(‖Σ b_k φ_{A_k}‖)]` and its maximal-partial-sum version over `base` with the
/// same sums over the Rademacher system, inflated by `1 + μ_d(base)`.
pub fn corollary2_check(
    base: &BoundedSystem,
    terms: Vec<(Mask, Vec<f64>)>,
    outer: &Outer,
    norm: Norm,
    d: usize,
    order: &[Mask],
    tol: f64,
) -> Result<Corollary2Report> {
    outer.validate()?;
    check_unit_sup(base).map_err(|e| Error::InvalidParameter(format!("bound violation in base: {e}")))?;
    let s = ChaosSum::new(ChaosBase::System(base.clone()), terms, d)?;
    let perm = permutation(&s, order)?;
    let mu = rational::to_f64(&mult_error(base, d.min(base.len()).max(1))?);
    let (lp, lm) = outer_expectations(&base.law(), &s, &perm, outer, norm);
    let rad = ChaosBase::Rademacher(base.len());
    let (rp, rm) = outer_expectations(&rad.law()?, &s, &perm, outer, norm);
    let cmp = |lhs: f64, rhs: f64| {
        let slack = (1.0 + mu) * rhs - lhs;
        Comparison { lhs, rhs, slack, pass: slack >= -tol }
    };
    let plain = cmp(lp, rp);
    let maximal = cmp(lm, rm);
    let pass = plain.pass && maximal.pass;
    Ok(Corollary2Report { d, mu, tolerance: tol, plain, maximal, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::systems::moment;

    #[test]
    fn rademacher_examples() {
        assert_eq!(rademacher(1).unwrap().values(), &[int(1), int(-1)]);
        assert_eq!(rademacher(2).unwrap().values(), &[int(1), int(-1), int(1), int(-1)]);
        assert!(rademacher(0).is_err());
        let sys = rademacher_system(4).unwrap();
        for a in 1..16 {
            assert_eq!(moment(&sys, a).unwrap(), int(0));
        }
    }

    #[test]
    fn walsh_decompose_examples() {
        let w = walsh_decompose(6).unwrap();
        assert_eq!(w.exponents, vec![1, 2]);
        assert_eq!(w.power(), 2);
        let r2r3 = rademacher(2).unwrap().multiply(&rademacher(3).unwrap()).unwrap();
        assert_eq!(walsh(6).unwrap(), r2r3);
        assert_eq!(walsh_decompose(1).unwrap().exponents, vec![0]);
        assert_eq!(walsh(1).unwrap(), rademacher(1).unwrap());
        assert_eq!(walsh_decompose(1 << 9).unwrap().exponents, vec![9]);
        assert!(walsh_decompose(0).is_err());
    }

    #[test]
    fn product_member_examples() {
        let r = rademacher_system(3).unwrap();
        assert_eq!(product_member(&r, 0b11).unwrap(), walsh(3).unwrap());
        assert_eq!(product_member(&r, 0b100).unwrap(), rademacher(3).unwrap());
        let twins = BoundedSystem::unit(vec![rademacher(1).unwrap(), rademacher(1).unwrap()]).unwrap();
        assert_eq!(product_member(&twins, 0b11).unwrap(), StepFn::constant(int(1), int(1)).unwrap());
        assert!(product_member(&r, 0).is_err());
    }

    #[test]
    fn chaos_eval_examples() {
        let s = ChaosSum::rademacher(2, vec![(0b11, 1.0)], 2).unwrap();
        assert_eq!(chaos_eval(&s).unwrap()[0], walsh(3).unwrap());
        let s = ChaosSum::rademacher(2, vec![(0b01, 1.0), (0b10, 1.0)], 1).unwrap();
        assert_eq!(chaos_eval(&s).unwrap()[0].values(), &[int(2), int(0), int(-2)]);
        assert_eq!(chaos_eval(&s).unwrap()[0].integral(), int(0));
        let s = ChaosSum::rademacher(2, vec![], 1).unwrap();
        assert_eq!(chaos_eval(&s).unwrap()[0], StepFn::constant(int(1), int(0)).unwrap());
    }

    #[test]
    fn chaos_rejects_duplicates_and_order() {
        assert!(ChaosSum::rademacher(2, vec![(0b01, 1.0), (0b01, -1.0)], 1).is_err());
        assert!(ChaosSum::rademacher(2, vec![(0b11, 1.0)], 1).is_err());
        assert!(ChaosSum::rademacher(2, vec![(0b100, 1.0)], 3).is_err());
    }

    #[test]
    fn bonami_examples() {
        let s = ChaosSum::rademacher(2, vec![(0b11, 1.0)], 2).unwrap();
        let r = bonami_kiener_check(&s, 4.0, 1e-12).unwrap();
        assert!((r.norm_p - 1.0).abs() < 1e-15 && (r.bound - 3.0).abs() < 1e-15 && r.pass);

        let s = ChaosSum::rademacher(2, vec![(0b01, 1.0), (0b10, 1.0)], 1).unwrap();
        let r = bonami_kiener_check(&s, 4.0, 1e-12).unwrap();
        assert!((r.norm_p - 8f64.powf(0.25)).abs() < 1e-12);
        assert!((r.bound - 6f64.sqrt()).abs() < 1e-12);
        assert!(r.pass);

        let s = ChaosSum::rademacher(3, vec![(0b011, 1.0), (0b101, 1.0)], 2).unwrap();
        let r = bonami_kiener_check(&s, 4.0, 1e-12).unwrap();
        // w_{12} + w_{13} = r_1 (r_2 + r_3): |S| is 2 on half the cells, so E S^4 = 8
        assert!((r.norm_p - 8f64.powf(0.25)).abs() < 1e-12);
        assert!((r.bound - 3.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(r.pass);

        let mixed = ChaosSum::rademacher(3, vec![(0b011, 1.0), (0b001, 1.0)], 2).unwrap();
        assert!(bonami_kiener_check(&mixed, 4.0, 1e-12).is_err());
        assert!(bonami_kiener_check(&s, 2.0, 1e-12).is_err());
    }

    #[test]
    fn max_partial_sum_examples() {
        let s = ChaosSum::rademacher(2, vec![(0b11, -2.0)], 2).unwrap();
        assert_eq!(
            max_partial_sum(&s, &[0b11], Norm::P(2.0)).unwrap(),
            StepFn::constant(int(1), int(2)).unwrap()
        );
        let s = ChaosSum::rademacher(2, vec![(0b01, 1.0), (0b10, 1.0)], 1).unwrap();
        let m = max_partial_sum(&s, &[0b01, 0b10], Norm::P(2.0)).unwrap();
        assert_eq!(m.values(), &[int(2), int(1), int(2)]);
        assert_eq!(m.breakpoints(), &[int(0), rat(1, 4), rat(3, 4), int(1)]);
        assert!(max_partial_sum(&s, &[0b01], Norm::P(2.0)).is_err());
        assert!(max_partial_sum(&s, &[0b01, 0b01], Norm::P(2.0)).is_err());
    }

    #[test]
    fn base_comparison_examples() {
        let r = rademacher_system(3).unwrap();
        let terms = vec![(0b011, vec![1.0]), (0b110, vec![-0.5]), (0b100, vec![2.0])];
        let rep = corollary2_check(&r, terms, &Outer::Pow { q: 3.0 }, Norm::P(2.0), 2, &[0b100, 0b011, 0b110], 1e-12)
            .unwrap();
        assert_eq!(rep.mu, 0.0);
        assert_eq!(rep.plain.lhs, rep.plain.rhs);
        assert_eq!(rep.maximal.lhs, rep.maximal.rhs);
        assert!(rep.pass);

        let half = BoundedSystem::unit(vec![
            rademacher(1).unwrap().scale(&rat(1, 2)),
            rademacher(2).unwrap().scale(&rat(1, 2)),
        ])
        .unwrap();
        let rep =
            corollary2_check(&half, vec![(0b11, vec![1.0])], &Outer::Pow { q: 2.0 }, Norm::P(2.0), 2, &[0b11], 1e-12)
                .unwrap();
        assert_eq!(rep.plain.lhs, 1.0 / 16.0);
        assert_eq!(rep.plain.rhs, 1.0);
        assert!(rep.pass);

        let big = BoundedSystem::new(
            vec![StepFn::constant(int(1), rat(3, 2)).unwrap()],
            vec![Bounds::new(int(-2), int(2)).unwrap()],
        )
        .unwrap();
        assert!(corollary2_check(&big, vec![(1, vec![1.0])], &Outer::Pow { q: 2.0 }, Norm::P(2.0), 1, &[1], 1e-12)
            .is_err());
    }

    #[test]
    fn chaos_json() {
        let json = r#"{"base":{"rademacher":3},"terms":[{"mask":[1,2],"coeff":[1.5]},{"mask":[2,3],"coeff":[-1.0]}]}"#;
        let s: ChaosSum = serde_json::from_str(json).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.terms()[1], (0b110, vec![-1.0]));
        let back: ChaosSum = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
