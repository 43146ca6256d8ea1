//! Bounded systems of step functions, their mixed moments and multiplicative error.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::rational::{self, Rational};
use crate::stepfn::{refine_all, CommonPartition, StepFn};

/// Range `[A, B]` of one member, with `A < 0 < B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BoundsRepr", into = "BoundsRepr")]
pub struct Bounds {
    lower: Rational,
    upper: Rational,
}

#[derive(Serialize, Deserialize)]
struct BoundsRepr {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
}

impl TryFrom<BoundsRepr> for Bounds {
    type Error = Error;
    fn try_from(r: BoundsRepr) -> Result<Self> {
        Bounds::new(rational::parse(&r.a)?, rational::parse(&r.b)?)
    }
}

impl From<Bounds> for BoundsRepr {
    fn from(b: Bounds) -> Self {
        BoundsRepr { a: rational::format(&b.lower), b: rational::format(&b.upper) }
    }
}

impl Bounds {
    pub fn new(lower: Rational, upper: Rational) -> Result<Self> {
        if !lower.is_negative() || !upper.is_positive() {
            return Err(Error::InvalidBounds { a: lower.to_string(), b: upper.to_string() });
        }
        Ok(Bounds { lower, upper })
    }

    /// `[-1, 1]`.
    pub fn unit() -> Self {
        Bounds { lower: rational::int(-1), upper: rational::int(1) }
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    /// `C = min(-A, B)`.
    pub fn c(&self) -> Rational {
        let neg = -&self.lower;
        if neg < self.upper {
            neg
        } else {
            self.upper.clone()
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        *v >= self.lower && *v <= self.upper
    }

    pub fn scale(&self, t: &Rational) -> Result<Self> {
        Bounds::new(&self.lower * t, &self.upper * t)
    }
}

/// An ordered system `φ_1, ..., φ_n` on a common domain, each inside its bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct BoundedSystem {
    members: Vec<StepFn>,
    bounds: Vec<Bounds>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    members: Vec<StepFn>,
    bounds: Vec<Bounds>,
}

impl TryFrom<SystemRepr> for BoundedSystem {
    type Error = Error;
    fn try_from(r: SystemRepr) -> Result<Self> {
        BoundedSystem::new(r.members, r.bounds)
    }
}

impl From<BoundedSystem> for SystemRepr {
    fn from(s: BoundedSystem) -> Self {
        SystemRepr { members: s.members, bounds: s.bounds }
    }
}

impl BoundedSystem {
    pub fn new(members: Vec<StepFn>, bounds: Vec<Bounds>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidParameter("a system needs at least one member".into()));
        }
        if members.len() > mask::MAX_MEMBERS {
            return Err(Error::InvalidParameter(format!(
                "at most {} members supported",
                mask::MAX_MEMBERS
            )));
        }
        if members.len() != bounds.len() {
            return Err(Error::Dimension { expected: members.len(), got: bounds.len() });
        }
        let end = members[0].domain_end();
        for m in &members[1..] {
            if m.domain_end() != end {
                return Err(Error::DomainMismatch(end.to_string(), m.domain_end().to_string()));
            }
        }
        for (index, (m, b)) in members.iter().zip(&bounds).enumerate() {
            if !b.contains(m.min_value()) || !b.contains(m.max_value()) {
                return Err(Error::OutOfBounds {
                    index: index + 1,
                    a: b.lower.to_string(),
                    b: b.upper.to_string(),
                });
            }
        }
        Ok(BoundedSystem { members, bounds })
    }

    /// Members with common bounds `[-1, 1]`.
    pub fn unit(members: Vec<StepFn>) -> Result<Self> {
        let bounds = vec![Bounds::unit(); members.len()];
        Self::new(members, bounds)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[StepFn] {
        &self.members
    }

    pub fn member(&self, k: usize) -> &StepFn {
        &self.members[k]
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn domain_end(&self) -> &Rational {
        self.members[0].domain_end()
    }

    pub fn partition(&self) -> CommonPartition {
        refine_all(&self.members).expect("members share a domain")
    }

    /// Distinct value vectors with their probability under normalized measure.
    pub fn law(&self) -> Vec<(Vec<Rational>, Rational)> {
        let total = self.domain_end().clone();
        self.partition()
            .atoms()
            .into_iter()
            .map(|(v, w)| (v, w / &total))
            .collect()
    }

    /// Replaces member `k` (0-based), keeping its bounds.
    pub fn with_member(&self, k: usize, f: StepFn) -> Result<Self> {
        let mut members = self.members.clone();
        members[k] = f;
        Self::new(members, self.bounds.clone())
    }

    /// `x ↦ φ(L·x)`: squeezes the domain `[0, L)` onto `[0, 1)`.
    pub fn rescale_to_unit(&self) -> Result<Self> {
        let factor = self.domain_end().clone();
        let members = self
            .members
            .iter()
            .map(|m| m.compress(&factor))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members, self.bounds.clone())
    }

    /// Restriction of every member to `[0, end)`.
    pub fn restrict(&self, end: &Rational) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| m.restrict(end))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members, self.bounds.clone())
    }

    fn c_product(&self, a: Mask) -> Rational {
        mask::members(a).fold(Rational::one(), |acc, k| acc * self.bounds[k].c())
    }
}

/// A family of nonempty subsets of `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    n: usize,
    masks: BTreeSet<Mask>,
}

impl SubsetFamily {
    pub fn new(n: usize, masks: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let masks: BTreeSet<Mask> = masks.into_iter().collect();
        for &m in &masks {
            mask::check(m, n)?;
        }
        Ok(SubsetFamily { n, masks })
    }

    /// `{A : 1 ≤ #A ≤ d}`.
    pub fn up_to(n: usize, d: usize) -> Self {
        SubsetFamily { n, masks: mask::up_to(n, d).into_iter().collect() }
    }

    /// `{A : #A = d}`.
    pub fn exactly(n: usize, d: usize) -> Self {
        SubsetFamily { n, masks: mask::of_size(n, d).into_iter().collect() }
    }

    pub fn all(n: usize) -> Self {
        Self::up_to(n, n)
    }

    /// Parses `le:d`, `eq:d`, `all`, or an explicit `1,2;3` list of 1-based index sets.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown subset family {spec:?}"));
        let spec = spec.trim();
        if spec == "all" {
            return Ok(Self::all(n));
        }
        if let Some(d) = spec.strip_prefix("le:") {
            return Ok(Self::up_to(n, d.parse().map_err(|_| bad())?));
        }
        if let Some(d) = spec.strip_prefix("eq:") {
            return Ok(Self::exactly(n, d.parse().map_err(|_| bad())?));
        }
        let masks = spec
            .split(';')
            .map(|set| {
                let idx = set
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                mask::from_indices(&idx)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> impl Iterator<Item = Mask> + '_ {
        self.masks.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.masks.contains(&m)
    }
}

/// Exact mixed moments `m_A = E[∏_{j∈A} φ_j]` for a family of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub n: usize,
    pub entries: BTreeMap<Mask, Rational>,
}

impl MomentTable {
    pub fn get(&self, m: Mask) -> Option<&Rational> {
        self.entries.get(&m)
    }
}

fn check_d(sys: &BoundedSystem, d: usize) -> Result<()> {
    if d == 0 || d > sys.len() {
        return Err(Error::OrderOutOfRange { d, n: sys.len() });
    }
    Ok(())
}

fn atom_moment(atoms: &[(Vec<Rational>, Rational)], a: Mask) -> Rational {
    let mut acc = Rational::zero();
    for (vals, w) in atoms {
        let mut p = w.clone();
        for k in mask::members(a) {
            if vals[k].is_zero() {
                p = Rational::zero();
                break;
            }
            p *= &vals[k];
        }
        acc += p;
    }
    acc
}

/// Exact `E[∏_{j∈A} φ_j]` with the domain normalized to measure one.
pub fn moment(sys: &BoundedSystem, a: Mask) -> Result<Rational> {
    mask::check(a, sys.len())?;
    Ok(atom_moment(&sys.law(), a))
}

/// Raw integral `∫_0^L ∏_{j∈A} φ_j`.
pub fn raw_moment(sys: &BoundedSystem, a: Mask) -> Result<Rational> {
    Ok(moment(sys, a)? * sys.domain_end())
}

pub fn moment_table(sys: &BoundedSystem, family: &SubsetFamily) -> Result<MomentTable> {
    if family.n() != sys.len() {
        return Err(Error::Dimension { expected: sys.len(), got: family.n() });
    }
    let law = sys.law();
    let entries = family.masks().map(|a| (a, atom_moment(&law, a))).collect();
    Ok(MomentTable { n: sys.len(), entries })
}

/// Every nonempty subset moment, in mask order.
pub fn all_moments(sys: &BoundedSystem) -> MomentTable {
    moment_table(sys, &SubsetFamily::all(sys.len())).expect("family matches system")
}

/// `μ_𝔐 = Σ_{A∈𝔐} ∏_{j∈A} C_j^{-1} |m_A|`.
pub fn mult_error_family(sys: &BoundedSystem, family: &SubsetFamily) -> Result<Rational> {
    let table = moment_table(sys, family)?;
    Ok(table
        .entries
        .iter()
        .fold(Rational::zero(), |acc, (&a, m)| acc + m.abs() / sys.c_product(a)))
}

/// The `d`-multiplicative error `μ_d`.
pub fn mult_error(sys: &BoundedSystem, d: usize) -> Result<Rational> {
    check_d(sys, d)?;
    mult_error_family(sys, &SubsetFamily::up_to(sys.len(), d))
}

/// Exact zero test of every `m_A` with `#A ≤ d`; stops at the first nonzero moment.
pub fn is_d_multiplicative(sys: &BoundedSystem, d: usize) -> Result<bool> {
    check_d(sys, d)?;
    let law = sys.law();
    Ok(mask::up_to(sys.len(), d)
        .into_iter()
        .all(|a| atom_moment(&law, a).is_zero()))
}

/// Extends `sys` past its domain end so that every `A ∈ family` has raw integral zero.
///
/// Subsets are processed by decreasing size. Each `A` with raw moment `I_A ≠ 0` gets its
/// own block of length `|I_A| / ∏_{j∈A} C_j`, cut into `2^{#A-1}` equal cells. On that block
/// the members of `A` other than the smallest index `j₀` run through all `±C_j` sign patterns,
/// `φ_{j₀} = σ C_{j₀} · (product of those signs)` with `σ = -sign(I_A)`, and every member
/// outside `A` is zero. The block integrates `∏_{j∈A} φ_j` to `-I_A` and every other product
/// to zero, so blocks do not interact and the appended length is `L · μ_𝔐`.
pub fn extend_to_multiplicative(sys: &BoundedSystem, family: &SubsetFamily) -> Result<BoundedSystem> {
    if family.n() != sys.len() {
        return Err(Error::Dimension { expected: sys.len(), got: family.n() });
    }
    let n = sys.len();
    let law = sys.law();
    let total = sys.domain_end();
    let mut order: Vec<Mask> = family.masks().collect();
    order.sort_by(|x, y| mask::size(*y).cmp(&mask::size(*x)).then(x.cmp(y)));

    let mut runs: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); n];
    for a in order {
        let raw = atom_moment(&law, a) * total;
        if raw.is_zero() {
            continue;
        }
        let sigma = if raw.is_positive() { -Rational::one() } else { Rational::one() };
        let length = raw.abs() / sys.c_product(a);
        let idx: Vec<usize> = mask::members(a).collect();
        let (j0, rest) = idx.split_first().expect("nonempty mask");
        let cells = 1usize << rest.len();
        let cell_len = &length / Rational::from_integer(cells.into());
        for cell in 0..cells {
            let mut parity = Rational::one();
            for (bit, &j) in rest.iter().enumerate() {
                let sign = if cell >> bit & 1 == 1 { -Rational::one() } else { Rational::one() };
                runs[j].push((cell_len.clone(), sign.clone() * sys.bounds()[j].c()));
                parity *= sign;
            }
            runs[*j0].push((cell_len.clone(), &sigma * parity * sys.bounds()[*j0].c()));
            for (k, r) in runs.iter_mut().enumerate() {
                if a >> k & 1 == 0 {
                    r.push((cell_len.clone(), Rational::zero()));
                }
            }
        }
    }
    if runs[0].is_empty() {
        return Ok(sys.clone());
    }
    let members = sys
        .members()
        .iter()
        .zip(runs)
        .map(|(m, r)| Ok(m.concat(&StepFn::from_runs(r)?)))
        .collect::<Result<Vec<_>>>()?;
    BoundedSystem::new(members, sys.bounds().to_vec())
}

fn two_values(sys: &BoundedSystem) -> Result<Vec<Rational>> {
    sys.members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let vals = m.distinct_values();
            if vals.len() != 2 {
                return Err(Error::NotTwoValued {
                    index: i + 1,
                    reason: format!("{} distinct values", vals.len()),
                });
            }
            if vals.iter().any(|v| v.is_zero()) {
                return Err(Error::NotTwoValued { index: i + 1, reason: "zero value".into() });
            }
            Ok(vals[1].clone())
        })
        .collect()
}

/// Exact check that every `≤ d` sub-collection of a two-valued system is jointly independent.
pub fn check_two_valued_independence(sys: &BoundedSystem, d: usize) -> Result<bool> {
    check_d(sys, d)?;
    let highs = two_values(sys)?;
    let law = sys.law();
    // bit k of the pattern marks member k at its larger value
    let patterns: Vec<(Mask, &Rational)> = law
        .iter()
        .map(|(vals, p)| {
            let pat = vals
                .iter()
                .zip(&highs)
                .enumerate()
                .filter(|(_, (v, h))| v == h)
                .fold(0, |acc, (k, _)| acc | 1 << k);
            (pat, p)
        })
        .collect();
    let n = sys.len();
    let mut high_marginal = vec![Rational::zero(); n];
    for (pat, p) in &patterns {
        for (k, hm) in high_marginal.iter_mut().enumerate() {
            if pat >> k & 1 == 1 {
                *hm += *p;
            }
        }
    }
    for a in mask::up_to(n, d) {
        let mut joint: HashMap<Mask, Rational> = HashMap::new();
        for (pat, p) in &patterns {
            *joint.entry(pat & a).or_insert_with(Rational::zero) += *p;
        }
        for assignment in std::iter::once(0).chain(mask::submasks(a)) {
            let expected = mask::members(a).fold(Rational::one(), |acc, k| {
                if assignment >> k & 1 == 1 {
                    acc * &high_marginal[k]
                } else {
                    acc * (Rational::one() - &high_marginal[k])
                }
            });
            let got = joint.get(&assignment).cloned().unwrap_or_else(Rational::zero);
            if got != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One outcome of a finite law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub values: Vec<Rational>,
    pub prob: Rational,
}

/// The product law of independent mean-zero `{A_k, B_k}`-valued variables:
/// `P(B_k) = -A_k / (B_k - A_k)`, `P(A_k) = B_k / (B_k - A_k)`.
///
/// Atoms are ordered by the bit pattern of upper values (bit `k` set means `B_k`).
pub fn canonical_independent_law(bounds: &[Bounds]) -> Vec<Atom> {
    let n = bounds.len();
    assert!(n < 32, "2^n atoms");
    let p_upper: Vec<Rational> = bounds
        .iter()
        .map(|b| -b.lower() / (b.upper() - b.lower()))
        .collect();
    (0..1u64 << n)
        .map(|pat| {
            let mut prob = Rational::one();
            let mut values = Vec::with_capacity(n);
            for (k, b) in bounds.iter().enumerate() {
                if pat >> k & 1 == 1 {
                    prob *= &p_upper[k];
                    values.push(b.upper().clone());
                } else {
                    prob *= Rational::one() - &p_upper[k];
                    values.push(b.lower().clone());
                }
            }
            Atom { values, prob }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::rademacher;
    use crate::rational::{int, rat};

    fn rad(k: u32) -> StepFn {
        rademacher(k).unwrap()
    }

    fn constant(v: Rational) -> StepFn {
        StepFn::constant(int(1), v).unwrap()
    }

    #[test]
    fn bounds_validation() {
        assert!(Bounds::new(int(0), int(1)).is_err());
        assert!(Bounds::new(int(-1), int(0)).is_err());
        assert_eq!(Bounds::new(int(-1), int(3)).unwrap().c(), int(1));
        assert_eq!(Bounds::new(rat(-5, 2), int(2)).unwrap().c(), int(2));
        let err = BoundedSystem::unit(vec![constant(int(2))]).unwrap_err();
        assert!(matches!(err, Error::OutOfBounds { index: 1, .. }));
    }

    #[test]
    fn moment_examples() {
        let pair = BoundedSystem::unit(vec![rad(1), rad(2)]).unwrap();
        assert_eq!(moment(&pair, 0b11).unwrap(), int(0));
        let half = BoundedSystem::unit(vec![constant(rat(1, 2))]).unwrap();
        assert_eq!(moment(&half, 0b1).unwrap(), rat(1, 2));
        let twins = BoundedSystem::unit(vec![rad(1), rad(1)]).unwrap();
        assert_eq!(moment(&twins, 0b11).unwrap(), int(1));
        assert!(matches!(moment(&twins, 0), Err(Error::EmptySubset)));
    }

    #[test]
    fn mult_error_examples() {
        let r = BoundedSystem::unit((1..=4).map(rad).collect()).unwrap();
        for d in 1..=4 {
            assert_eq!(mult_error(&r, d).unwrap(), int(0));
        }
        let half = BoundedSystem::unit(vec![constant(rat(1, 2))]).unwrap();
        assert_eq!(mult_error(&half, 1).unwrap(), rat(1, 2));
        let twins = BoundedSystem::unit(vec![rad(1), rad(1)]).unwrap();
        assert_eq!(mult_error(&twins, 2).unwrap(), int(1));
        assert!(mult_error(&twins, 3).is_err());
        assert!(mult_error(&twins, 0).is_err());
    }

    #[test]
    fn multiplicativity_examples() {
        let r = BoundedSystem::unit((1..=3).map(rad).collect()).unwrap();
        assert!(is_d_multiplicative(&r, 3).unwrap());
        let twins = BoundedSystem::unit(vec![rad(1), rad(1)]).unwrap();
        assert!(is_d_multiplicative(&twins, 1).unwrap());
        assert!(!is_d_multiplicative(&twins, 2).unwrap());
        let half = BoundedSystem::unit(vec![constant(rat(1, 2))]).unwrap();
        assert!(!is_d_multiplicative(&half, 1).unwrap());
    }

    #[test]
    fn extension_examples() {
        let r = BoundedSystem::unit(vec![rad(1), rad(2)]).unwrap();
        assert_eq!(extend_to_multiplicative(&r, &SubsetFamily::all(2)).unwrap(), r);

        let half = BoundedSystem::unit(vec![constant(rat(1, 2))]).unwrap();
        let ext = extend_to_multiplicative(&half, &SubsetFamily::all(1)).unwrap();
        assert_eq!(ext.domain_end(), &rat(3, 2));
        assert_eq!(ext.member(0).values(), &[rat(1, 2), int(-1)]);
        assert_eq!(ext.member(0).integral(), int(0));

        let twins = BoundedSystem::unit(vec![rad(1), rad(1)]).unwrap();
        let ext = extend_to_multiplicative(&twins, &SubsetFamily::all(2)).unwrap();
        assert_eq!(ext.domain_end(), &int(2));
        let tail = |f: &StepFn| f.integral() - f.restrict(&int(1)).unwrap().integral();
        let pair = ext.member(0).multiply(ext.member(1)).unwrap();
        assert_eq!(tail(&pair), int(-1));
        assert_eq!(tail(ext.member(0)), int(0));
        assert_eq!(tail(ext.member(1)), int(0));
        for a in [0b01, 0b10, 0b11] {
            assert_eq!(raw_moment(&ext, a).unwrap(), int(0));
        }
    }

    #[test]
    fn extension_restricts_to_input() {
        let sys = BoundedSystem::new(
            vec![constant(rat(1, 3)), rad(1).scale(&rat(1, 2))],
            vec![Bounds::new(int(-1), int(2)).unwrap(), Bounds::new(rat(-1, 2), int(3)).unwrap()],
        )
        .unwrap();
        let fam = SubsetFamily::all(2);
        let ext = extend_to_multiplicative(&sys, &fam).unwrap();
        assert_eq!(ext.restrict(&int(1)).unwrap(), sys);
        assert_eq!(ext.domain_end() - int(1), mult_error_family(&sys, &fam).unwrap());
    }

    #[test]
    fn independence_examples() {
        let r = BoundedSystem::unit((1..=3).map(rad).collect()).unwrap();
        assert!(check_two_valued_independence(&r, 3).unwrap());
        let twins = BoundedSystem::unit(vec![rad(1), rad(1)]).unwrap();
        assert!(!check_two_valued_independence(&twins, 2).unwrap());
        assert!(check_two_valued_independence(&twins, 1).unwrap());
        let half = BoundedSystem::unit(vec![constant(rat(1, 2))]).unwrap();
        assert!(matches!(
            check_two_valued_independence(&half, 1),
            Err(Error::NotTwoValued { index: 1, .. })
        ));
        let with_zero = BoundedSystem::unit(vec![rad(1).add(&constant(int(0))).unwrap().map(|v| {
            if *v > int(0) { int(0) } else { v.clone() }
        })])
        .unwrap();
        assert!(check_two_valued_independence(&with_zero, 1).is_err());
    }

    #[test]
    fn canonical_law_examples() {
        let law = canonical_independent_law(&[Bounds::unit()]);
        assert_eq!(law.len(), 2);
        assert!(law.iter().all(|a| a.prob == rat(1, 2)));

        let law = canonical_independent_law(&[Bounds::new(int(-1), int(3)).unwrap()]);
        assert_eq!(law[0], Atom { values: vec![int(-1)], prob: rat(3, 4) });
        assert_eq!(law[1], Atom { values: vec![int(3)], prob: rat(1, 4) });

        let law = canonical_independent_law(&[Bounds::unit(), Bounds::unit()]);
        assert_eq!(law.len(), 4);
        assert!(law.iter().all(|a| a.prob == rat(1, 4)));
    }

    #[test]
    fn family_parsing() {
        assert_eq!(SubsetFamily::parse("le:2", 3).unwrap().len(), 6);
        assert_eq!(SubsetFamily::parse("eq:2", 3).unwrap().len(), 3);
        assert_eq!(SubsetFamily::parse("all", 3).unwrap().len(), 7);
        let f = SubsetFamily::parse("1,2;3", 3).unwrap();
        assert!(f.contains(0b011) && f.contains(0b100) && f.len() == 2);
        assert!(SubsetFamily::parse("4", 3).is_err());
        assert!(SubsetFamily::parse("bogus", 3).is_err());
    }

    #[test]
    fn system_json_shape() {
        let sys = BoundedSystem::new(vec![rad(1)], vec![Bounds::new(int(-1), int(3)).unwrap()]).unwrap();
        let s = serde_json::to_string(&sys).unwrap();
        assert!(s.contains(r#""bounds":[{"A":"-1","B":"3"}]"#), "{s}");
        assert_eq!(serde_json::from_str::<BoundedSystem>(&s).unwrap(), sys);
    }
}
