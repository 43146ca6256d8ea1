//! Exact piecewise-constant functions on `[0, L)`.
//!
//! A [`StepFn`] stores strictly increasing rational breakpoints `0 = t_0 < ... < t_m = L`
//! and one rational value per half-open piece `[t_{i-1}, t_i)`. Adjacent pieces never
//! carry equal values, so two functions are equal exactly when their representations are.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StepFnRepr", into = "StepFnRepr")]
pub struct StepFn {
    domain_end: Rational,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct StepFnRepr {
    domain_end: String,
    breakpoints: Vec<String>,
    values: Vec<String>,
}

impl TryFrom<StepFnRepr> for StepFn {
    type Error = Error;

    fn try_from(r: StepFnRepr) -> Result<Self> {
        let domain_end = rational::parse(&r.domain_end)?;
        let breakpoints = r
            .breakpoints
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let values = r
            .values
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>>>()?;
        StepFn::new(domain_end, breakpoints, values)
    }
}

impl From<StepFn> for StepFnRepr {
    fn from(f: StepFn) -> Self {
        StepFnRepr {
            domain_end: rational::format(&f.domain_end),
            breakpoints: f.breakpoints.iter().map(rational::format).collect(),
            values: f.values.iter().map(rational::format).collect(),
        }
    }
}

impl StepFn {
    /// Builds a canonical step function, merging adjacent equal pieces.
    pub fn new(domain_end: Rational, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if !domain_end.is_positive() {
            return Err(Error::InvalidStep(format!("domain end {domain_end} must be positive")));
        }
        if breakpoints.len() < 2 {
            return Err(Error::InvalidStep("need at least the two endpoints".into()));
        }
        if !breakpoints[0].is_zero() {
            return Err(Error::InvalidStep("first breakpoint must be 0".into()));
        }
        if breakpoints[breakpoints.len() - 1] != domain_end {
            return Err(Error::InvalidStep("last breakpoint must equal the domain end".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStep("breakpoints must be strictly increasing".into()));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidStep(format!(
                "{} values for {} intervals",
                values.len(),
                breakpoints.len() - 1
            )));
        }
        Ok(Self::canonical(domain_end, breakpoints, values))
    }

    pub fn constant(domain_end: Rational, value: Rational) -> Result<Self> {
        let bps = vec![Rational::zero(), domain_end.clone()];
        Self::new(domain_end, bps, vec![value])
    }

    /// Assumes validated input; only merges equal neighbours.
    pub(crate) fn canonical(domain_end: Rational, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Self {
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<Rational> = Vec::with_capacity(values.len());
        let mut bp_iter = breakpoints.into_iter();
        bps.push(bp_iter.next().expect("nonempty"));
        for (v, end) in values.into_iter().zip(bp_iter) {
            if vals.last() == Some(&v) {
                *bps.last_mut().unwrap() = end;
            } else {
                vals.push(v);
                bps.push(end);
            }
        }
        StepFn { domain_end, breakpoints: bps, values: vals }
    }

    /// Builds from `(length, value)` runs laid end to end starting at 0.
    /// Zero-length runs are dropped.
    pub fn from_runs(runs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut bps = vec![Rational::zero()];
        let mut vals = Vec::new();
        for (len, v) in runs {
            if len.is_negative() {
                return Err(Error::InvalidStep("negative run length".into()));
            }
            if len.is_zero() {
                continue;
            }
            let end = bps.last().unwrap() + len;
            bps.push(end);
            vals.push(v);
        }
        let end = bps.last().unwrap().clone();
        Self::new(end, bps, vals)
    }

    pub fn domain_end(&self) -> &Rational {
        &self.domain_end
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// `(start, end, value)` for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[0], &w[1], v))
    }

    pub fn decompose(&self) -> (Rational, Vec<Rational>, Vec<Rational>) {
        (self.domain_end.clone(), self.breakpoints.clone(), self.values.clone())
    }

    /// Right-continuous point evaluation; `None` outside `[0, L)`.
    pub fn eval(&self, x: &Rational) -> Option<&Rational> {
        if x.is_negative() || *x >= self.domain_end {
            return None;
        }
        // index of the last breakpoint <= x
        let idx = match self.breakpoints.binary_search(x) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.values.get(idx)
    }

    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn min_value(&self) -> &Rational {
        self.values.iter().min().expect("nonempty")
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("nonempty")
    }

    pub fn sup_abs(&self) -> Rational {
        self.values.iter().map(|v| v.abs()).max().expect("nonempty")
    }

    /// Exact `∫_0^L f`.
    pub fn integral(&self) -> Rational {
        self.pieces()
            .fold(Rational::zero(), |acc, (a, b, v)| acc + v * (b - a))
    }

    /// Exact mean over the domain, i.e. the expectation under normalized Lebesgue measure.
    pub fn mean(&self) -> Rational {
        self.integral() / &self.domain_end
    }

    /// `L^p` norm with the domain normalized to measure one; `p = ∞` gives the sup norm.
    pub fn p_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("p-norm needs p >= 1, got {p}")));
        }
        if p.is_infinite() {
            return Ok(rational::to_f64(&self.sup_abs()));
        }
        let total = rational::to_f64(&self.domain_end);
        let mut acc = crate::numeric::NeumaierSum::default();
        for (a, b, v) in self.pieces() {
            let w = rational::to_f64(&(b - a)) / total;
            acc.add(rational::to_f64(v).abs().powf(p) * w);
        }
        Ok(acc.value().powf(1.0 / p))
    }

    /// Exact `∫ |f|^k` for integer `k`, normalized to a measure-one domain.
    pub fn abs_moment(&self, k: u32) -> Rational {
        let s = self
            .pieces()
            .fold(Rational::zero(), |acc, (a, b, v)| acc + num_traits::pow(v.abs(), k as usize) * (b - a));
        s / &self.domain_end
    }

    /// Exact Lebesgue measure of `{x : f(x) > λ}` (raw, not normalized).
    pub fn tail_measure(&self, lambda: &Rational) -> Rational {
        self.pieces()
            .filter(|(_, _, v)| *v > lambda)
            .fold(Rational::zero(), |acc, (a, b, _)| acc + (b - a))
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> StepFn {
        Self::canonical(
            self.domain_end.clone(),
            self.breakpoints.clone(),
            self.values.iter().map(f).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> StepFn {
        self.map(|v| v * c)
    }

    pub fn abs(&self) -> StepFn {
        self.map(|v| v.abs())
    }

    pub fn zip_with(&self, other: &StepFn, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<StepFn> {
        let part = refine_common(&[self, other])?;
        let vals = part
            .rows()
            .map(|row| f(row[0], row[1]))
            .collect();
        Ok(Self::canonical(self.domain_end.clone(), part.breakpoints, vals))
    }

    pub fn add(&self, other: &StepFn) -> Result<StepFn> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn multiply(&self, other: &StepFn) -> Result<StepFn> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn sub(&self, other: &StepFn) -> Result<StepFn> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &StepFn) -> Result<StepFn> {
        self.zip_with(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    /// `x ↦ f(x · factor)` viewed on `[0, L / factor)`.
    pub fn compress(&self, factor: &Rational) -> Result<StepFn> {
        if !factor.is_positive() {
            return Err(Error::InvalidParameter("compression factor must be positive".into()));
        }
        Ok(StepFn {
            domain_end: &self.domain_end / factor,
            breakpoints: self.breakpoints.iter().map(|t| t / factor).collect(),
            values: self.values.clone(),
        })
    }

    /// Concatenates `tail` after `self`, giving a function on `[0, L + L')`.
    pub fn concat(&self, tail: &StepFn) -> StepFn {
        let mut bps = self.breakpoints.clone();
        bps.extend(tail.breakpoints.iter().skip(1).map(|t| t + &self.domain_end));
        let mut vals = self.values.clone();
        vals.extend(tail.values.iter().cloned());
        let end = &self.domain_end + &tail.domain_end;
        Self::canonical(end, bps, vals)
    }

    /// Restriction to `[0, end)`, `0 < end ≤ L`.
    pub fn restrict(&self, end: &Rational) -> Result<StepFn> {
        if !end.is_positive() || *end > self.domain_end {
            return Err(Error::InvalidParameter(format!("cannot restrict to [0, {end})")));
        }
        let mut bps = vec![Rational::zero()];
        let mut vals = Vec::new();
        for (_, b, v) in self.pieces() {
            vals.push(v.clone());
            if b >= end {
                bps.push(end.clone());
                break;
            }
            bps.push(b.clone());
        }
        Ok(Self::canonical(end.clone(), bps, vals))
    }
}

/// Coarsest common refinement of several step functions on the same domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonPartition {
    pub breakpoints: Vec<Rational>,
    /// `values[i][k]` is function `k` on cell `i`.
    pub values: Vec<Vec<Rational>>,
}

impl CommonPartition {
    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    pub fn domain_end(&self) -> &Rational {
        self.breakpoints.last().expect("nonempty")
    }

    pub fn lengths(&self) -> impl Iterator<Item = Rational> + '_ {
        self.breakpoints.windows(2).map(|w| &w[1] - &w[0])
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<&Rational>> + '_ {
        self.values.iter().map(|r| r.iter().collect())
    }

    /// `(start, end, values)` per cell.
    pub fn cells(&self) -> impl Iterator<Item = (&Rational, &Rational, &[Rational])> {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| (&w[0], &w[1], v.as_slice()))
    }

    /// Total measure per distinct value vector, sorted by value vector.
    pub fn atoms(&self) -> Vec<(Vec<Rational>, Rational)> {
        let mut map: std::collections::BTreeMap<&[Rational], Rational> = Default::default();
        for (a, b, v) in self.cells() {
            *map.entry(v).or_insert_with(Rational::zero) += b - a;
        }
        map.into_iter().map(|(k, w)| (k.to_vec(), w)).collect()
    }
}

/// Merges the breakpoint sets of `fs` and reads every function off on each cell.
pub fn refine_common(fs: &[&StepFn]) -> Result<CommonPartition> {
    let first = fs
        .first()
        .ok_or_else(|| Error::InvalidParameter("refine_common needs at least one function".into()))?;
    for f in &fs[1..] {
        if f.domain_end != first.domain_end {
            return Err(Error::DomainMismatch(
                first.domain_end.to_string(),
                f.domain_end.to_string(),
            ));
        }
    }
    let mut bps: Vec<Rational> = fs.iter().flat_map(|f| f.breakpoints.iter().cloned()).collect();
    bps.sort();
    bps.dedup();
    let cells = bps.len() - 1;
    let mut values = vec![Vec::with_capacity(fs.len()); cells];
    for f in fs {
        let mut piece = 0;
        for (i, row) in values.iter_mut().enumerate() {
            while f.breakpoints[piece + 1].cmp(&bps[i]) != Ordering::Greater {
                piece += 1;
            }
            row.push(f.values[piece].clone());
        }
    }
    Ok(CommonPartition { breakpoints: bps, values })
}

/// Owned-slice convenience wrapper for [`refine_common`].
pub fn refine_all(fs: &[StepFn]) -> Result<CommonPartition> {
    let refs: Vec<&StepFn> = fs.iter().collect();
    refine_common(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn r1() -> StepFn {
        StepFn::new(int(1), vec![int(0), rat(1, 2), int(1)], vec![int(1), int(-1)]).unwrap()
    }

    fn r2() -> StepFn {
        StepFn::new(
            int(1),
            vec![int(0), rat(1, 4), rat(1, 2), rat(3, 4), int(1)],
            vec![int(1), int(-1), int(1), int(-1)],
        )
        .unwrap()
    }

    #[test]
    fn make_step_examples() {
        let c = StepFn::new(int(1), vec![int(0), int(1)], vec![int(3)]).unwrap();
        assert_eq!(c.values(), &[int(3)]);
        let merged = StepFn::new(int(1), vec![int(0), rat(1, 2), int(1)], vec![int(2), int(2)]).unwrap();
        assert_eq!(merged.piece_count(), 1);
        assert_eq!(merged, StepFn::constant(int(1), int(2)).unwrap());
        assert_eq!(r1().piece_count(), 2);
    }

    #[test]
    fn make_step_errors() {
        assert!(StepFn::new(int(0), vec![int(0), int(0)], vec![int(1)]).is_err());
        assert!(StepFn::new(int(1), vec![int(0), rat(2, 3), rat(1, 3), int(1)], vec![int(1); 3]).is_err());
        assert!(StepFn::new(int(1), vec![int(0), int(1)], vec![int(1), int(2)]).is_err());
        assert!(StepFn::new(int(1), vec![rat(1, 8), int(1)], vec![int(1)]).is_err());
        assert!(StepFn::new(int(1), vec![int(0), rat(1, 2)], vec![int(1)]).is_err());
    }

    #[test]
    fn refine_examples() {
        let p = refine_common(&[&r1(), &r2()]).unwrap();
        assert_eq!(p.cell_count(), 4);
        assert!(p.lengths().all(|l| l == rat(1, 4)));

        let a = StepFn::constant(int(1), int(1)).unwrap();
        let b = StepFn::constant(int(1), int(2)).unwrap();
        assert_eq!(refine_common(&[&a, &b]).unwrap().cell_count(), 1);

        let three = StepFn::new(
            int(1),
            vec![int(0), rat(1, 3), rat(2, 3), int(1)],
            vec![int(1), int(2), int(3)],
        )
        .unwrap();
        let p = refine_common(&[&r1(), &three]).unwrap();
        assert_eq!(p.breakpoints, vec![int(0), rat(1, 3), rat(1, 2), rat(2, 3), int(1)]);
        assert_eq!(p.values[2], vec![int(-1), int(2)]);

        let short = StepFn::constant(rat(1, 2), int(1)).unwrap();
        assert!(matches!(refine_common(&[&r1(), &short]), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r1().multiply(&r1()).unwrap(), StepFn::constant(int(1), int(1)).unwrap());
        let w12 = r1().multiply(&r2()).unwrap();
        // +,-,-,+ on quarters; the two middle quarters merge
        assert_eq!(w12.breakpoints(), &[int(0), rat(1, 4), rat(3, 4), int(1)]);
        assert_eq!(w12.values(), &[int(1), int(-1), int(1)]);
        assert_eq!(r1().add(&r1()).unwrap(), r1().scale(&int(2)));
    }

    #[test]
    fn integral_examples() {
        assert_eq!(r1().integral(), int(0));
        assert_eq!(StepFn::constant(int(1), rat(7, 3)).unwrap().integral(), rat(7, 3));
        let f = StepFn::new(int(1), vec![int(0), rat(1, 3), int(1)], vec![int(1), int(-1)]).unwrap();
        assert_eq!(f.integral(), rat(-1, 3));
    }

    #[test]
    fn p_norm_examples() {
        for p in [1.0, 2.0, 3.5, 8.0] {
            assert!((r1().p_norm(p).unwrap() - 1.0).abs() < 1e-15);
        }
        let s = r1().add(&r2()).unwrap();
        assert!((s.p_norm(4.0).unwrap() - 8f64.powf(0.25)).abs() < 1e-12);
        let c = StepFn::constant(int(1), rat(-5, 2)).unwrap();
        assert!((c.p_norm(3.0).unwrap() - 2.5).abs() < 1e-12);
        assert!(r1().p_norm(0.5).is_err());
    }

    #[test]
    fn tail_examples() {
        assert_eq!(r1().tail_measure(&int(0)), rat(1, 2));
        assert_eq!(r1().add(&r2()).unwrap().tail_measure(&int(1)), rat(1, 4));
        assert_eq!(StepFn::constant(int(1), int(0)).unwrap().tail_measure(&int(1)), int(0));
    }

    #[test]
    fn eval_is_right_continuous() {
        assert_eq!(r1().eval(&rat(1, 2)), Some(&int(-1)));
        assert_eq!(r1().eval(&int(0)), Some(&int(1)));
        assert_eq!(r1().eval(&int(1)), None);
    }

    #[test]
    fn restrict_concat_compress() {
        let f = r1().concat(&r2());
        assert_eq!(f.domain_end(), &int(2));
        assert_eq!(f.restrict(&int(1)).unwrap(), r1());
        let g = f.compress(&int(2)).unwrap();
        assert_eq!(g.domain_end(), &int(1));
        assert_eq!(g.integral(), rat(0, 1));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&r1()).unwrap();
        assert_eq!(s, r#"{"domain_end":"1","breakpoints":["0","1/2","1"],"values":["1","-1"]}"#);
        let back: StepFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r1());
        assert!(serde_json::from_str::<StepFn>(
            r#"{"domain_end":"1","breakpoints":["0","1"],"values":["1","2"]}"#
        )
        .is_err());
    }
}
