//! Sinusoidal gluing of step functions with closed-form derivatives, in an
//! infinitesimal-width mode and a standard-width mode, plus uniform
//! partitions, avoiding selections, telescoping sums and resolving processes.
//!
//! Both modes share one code path: a standard width is a constant
//! [`HyperReal`].

use std::collections::BTreeSet;
use std::ops::Neg;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyper::{lift, lift_half_pi, pi, Coeff, HyperError, HyperReal, Transcendental, DEFAULT_PRECISION};
use crate::rational::{floor, format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("bad step spec: {0}")]
    BadSpec(String),
    #[error("transitions of half-width {delta} overlap: need 2δ < {gap}")]
    OverlappingTransitions { delta: String, gap: String },
    #[error("transition half-width must be positive, got {0}")]
    NonPositiveDelta(String),
    #[error("transition half-width {0} is neither infinitesimal nor a standard rational")]
    BadDelta(String),
    #[error("{0} lies outside the domain")]
    OutOfDomain(String),
    #[error("{0} is a partition point, excluded from D")]
    OnPartitionPoint(String),
    #[error("the avoid set contains an endpoint of the partition")]
    AvoidSetBlocksEndpoints,
    #[error("selection point {0} is a discontinuity")]
    SelectionHitsDiscontinuity(String),
    #[error("derivative order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Hyper(#[from] HyperError),
}

pub type Result<T> = std::result::Result<T, GlueError>;

/// Partition `a₀ < a₁ < … < a_{n+1}` with value `r_j` on the `j`-th cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSpec {
    partition: Vec<Rational>,
    values: Vec<Rational>,
}

impl StepSpec {
    pub fn new(partition: Vec<Rational>, values: Vec<Rational>) -> Result<StepSpec> {
        if partition.len() < 3 {
            return Err(GlueError::BadSpec("need at least one interior partition point".into()));
        }
        if values.len() + 1 != partition.len() {
            return Err(GlueError::BadSpec(format!("{} points need {} values, got {}", partition.len(), partition.len() - 1, values.len())));
        }
        if partition.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GlueError::BadSpec("partition must strictly increase".into()));
        }
        Ok(StepSpec { partition, values })
    }

    pub fn partition(&self) -> &[Rational] {
        &self.partition
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn start(&self) -> &Rational {
        &self.partition[0]
    }

    pub fn end(&self) -> &Rational {
        self.partition.last().expect("nonempty")
    }

    /// Interior points `a₁ … aₙ`.
    pub fn jumps(&self) -> &[Rational] {
        &self.partition[1..self.partition.len() - 1]
    }

    pub fn min_gap(&self) -> Rational {
        self.partition.windows(2).map(|w| &w[1] - &w[0]).min().expect("two points")
    }

    /// The step function `g` on `D`; `None` at interior partition points and
    /// outside `[a₀, a_{n+1}]`.
    pub fn step_value(&self, x: &Rational) -> Option<Rational> {
        if x < self.start() || x > self.end() || self.jumps().contains(x) {
            return None;
        }
        let k = self.jumps().iter().filter(|a| *a < x).count();
        Some(self.values[k].clone())
    }
}

/// `G = G₁ ∪ G₂`: constant on the pieces, sinusoidal on `[a_j − δ, a_j + δ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlueFunction {
    spec: StepSpec,
    delta: HyperReal,
    precision: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Delta {
    Infinitesimal(HyperReal),
    Standard(Rational),
}

impl Delta {
    pub fn epsilon() -> Delta {
        Delta::Infinitesimal(HyperReal::epsilon())
    }

    /// `"e"`-style series text, or a rational.
    pub fn parse(text: &str) -> Result<Delta> {
        if let Ok(r) = parse_rational(text) {
            return Ok(Delta::Standard(r));
        }
        let h: HyperReal = text.parse()?;
        match h.as_rational() {
            Some(r) => Ok(Delta::Standard(r)),
            None => Ok(Delta::Infinitesimal(h)),
        }
    }
}

pub fn build_glue(spec: StepSpec, delta: Delta) -> Result<GlueFunction> {
    build_glue_with_precision(spec, delta, DEFAULT_PRECISION)
}

pub fn build_glue_with_precision(spec: StepSpec, delta: Delta, precision: u32) -> Result<GlueFunction> {
    let delta = match delta {
        Delta::Infinitesimal(d) => {
            if d.signum() <= 0 {
                return Err(GlueError::NonPositiveDelta(d.to_string()));
            }
            if !d.is_infinitesimal() {
                return match d.as_rational() {
                    Some(r) => build_glue_with_precision(spec, Delta::Standard(r), precision),
                    None => Err(GlueError::BadDelta(d.to_string())),
                };
            }
            d
        }
        Delta::Standard(r) => {
            if !r.is_positive() {
                return Err(GlueError::NonPositiveDelta(format_rational(&r)));
            }
            let gap = spec.min_gap();
            if &r * Rational::from_integer(2.into()) >= gap {
                return Err(GlueError::OverlappingTransitions { delta: format_rational(&r), gap: format_rational(&gap) });
            }
            HyperReal::from_rational(r)
        }
    };
    Ok(GlueFunction { spec, delta, precision })
}

fn hr(r: &Rational) -> HyperReal {
    HyperReal::from_rational(r.clone())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Where a point sits relative to the transitions.
enum Region {
    /// Constant piece with this value index.
    Piece(usize),
    /// Transition around jump `j` (0-based into `jumps`), with `u = (x − a_j)/δ`.
    Transition { j: usize, u: HyperReal },
}

impl GlueFunction {
    pub fn spec(&self) -> &StepSpec {
        &self.spec
    }

    pub fn delta(&self) -> &HyperReal {
        &self.delta
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.delta.is_infinitesimal()
    }

    fn region(&self, x: &HyperReal) -> Result<Region> {
        if x.compare(&hr(self.spec.start())).is_lt() || x.compare(&hr(self.spec.end())).is_gt() {
            return Err(GlueError::OutOfDomain(x.to_string()));
        }
        let neg = self.delta.clone().neg();
        for (j, a) in self.spec.jumps().iter().enumerate() {
            let d = x.sub(&hr(a));
            if !d.compare(&self.delta).is_gt() && !d.compare(&neg).is_lt() {
                return Ok(Region::Transition { j, u: d.div(&self.delta)? });
            }
        }
        let k = self.spec.jumps().iter().filter(|a| x.compare(&hr(a)).is_gt()).count();
        Ok(Region::Piece(k))
    }

    fn jump(&self, j: usize) -> (Rational, Rational) {
        (self.spec.values[j].clone(), &self.spec.values[j + 1] - &self.spec.values[j])
    }

    pub fn eval(&self, x: &HyperReal) -> Result<HyperReal> {
        match self.region(x)? {
            Region::Piece(k) => Ok(hr(&self.spec.values[k])),
            Region::Transition { j, u } => {
                let (r, dr) = self.jump(j);
                let s = lift_half_pi(Transcendental::Sin, &u, self.precision)?;
                Ok(s.add(&HyperReal::one()).scale_rational(&(dr * half())).add(&hr(&r)))
            }
        }
    }

    pub fn eval_rational(&self, x: &Rational) -> Result<HyperReal> {
        self.eval(&hr(x))
    }

    /// `G⁽ᵐ⁾(x)`. Zero on the pieces. At `a_j ± δ`: zero for odd `m`, the
    /// transition-side closed form for even `m`.
    pub fn derivative(&self, m: u32, x: &HyperReal) -> Result<HyperReal> {
        if m == 0 {
            return Err(GlueError::ZeroOrder);
        }
        let (j, u) = match self.region(x)? {
            Region::Piece(_) => return Ok(HyperReal::zero()),
            Region::Transition { j, u } => (j, u),
        };
        let at_boundary = u.exactly_eq(&HyperReal::one()) || u.exactly_eq(&HyperReal::from_int(-1));
        if at_boundary && m % 2 == 1 {
            return Ok(HyperReal::zero());
        }
        let (_, dr) = self.jump(j);
        // (Δr/2)(π/2)^m δ^{-m} sin^{(m)}(uπ/2), and sin^{(m)}(θ) = sin(θ + mπ/2)
        let mut coef = Coeff::Exact(dr * half());
        let half_pi = pi(self.precision) * Coeff::Exact(half());
        for _ in 0..m {
            coef = coef * half_pi.clone();
        }
        let inv_delta = HyperReal::one().div(&self.delta)?.powi(m)?;
        let trig = lift_half_pi(Transcendental::Sin, &u.add(&HyperReal::from_int(m as i64)), self.precision)?;
        Ok(trig.mul(&inv_delta)?.scale(&coef))
    }

    /// `st(G(x))` for standard `x ∈ D`; equals `g(x)` in infinitesimal mode.
    pub fn st_restrict(&self, x: &Rational) -> Result<Coeff> {
        if self.spec.jumps().contains(x) {
            return Err(GlueError::OnPartitionPoint(format_rational(x)));
        }
        Ok(self.eval_rational(x)?.st()?)
    }

    /// `(min r, max r)` with a certificate that each transition starts at
    /// `r_j`, passes the midpoint at `a_j`, and ends at `r_{j+1}`.
    pub fn range_check(&self) -> Result<RangeReport> {
        let c = self.spec.values.iter().min().expect("values").clone();
        let d = self.spec.values.iter().max().expect("values").clone();
        let mut certified = true;
        let mut samples = Vec::new();
        for (j, a) in self.spec.jumps().iter().enumerate() {
            let (r, dr) = self.jump(j);
            let left = hr(a).sub(&self.delta);
            let right = hr(a).add(&self.delta);
            let expect = [r.clone(), &r + &dr * half(), &r + &dr];
            for (x, want) in [left, hr(a), right].into_iter().zip(expect) {
                let got = self.eval(&x)?;
                certified &= got.exactly_eq(&hr(&want)) && want >= c && want <= d;
                samples.push((x, got));
            }
        }
        Ok(RangeReport { c, d, certified, samples })
    }

    /// Standard-mode samples `(x, G(x), G′(x))` on a uniform grid of
    /// `count + 1` points.
    pub fn samples(&self, count: u32) -> Result<Vec<(Rational, HyperReal, HyperReal)>> {
        let (a, b) = (self.spec.start(), self.spec.end());
        let step = (b - a) / Rational::from_integer(count.max(1).into());
        (0..=count.max(1))
            .map(|i| {
                let x = a + &step * Rational::from_integer(i.into());
                let hx = hr(&x);
                Ok((x, self.eval(&hx)?, self.derivative(1, &hx)?))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeReport {
    pub c: Rational,
    pub d: Rational,
    pub certified: bool,
    pub samples: Vec<(HyperReal, HyperReal)>,
}

/// One coordinate of a vector-valued map.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Glue(GlueFunction),
    Smooth(Transcendental),
    Identity,
}

/// Componentwise evaluation of a tuple such as `(*F₁, *F₂, G)`.
pub fn eval_vector(components: &[Component], x: &HyperReal, precision: u32) -> Result<Vec<HyperReal>> {
    components
        .iter()
        .map(|c| match c {
            Component::Glue(g) => g.eval(x),
            Component::Smooth(f) => Ok(lift(*f, x, precision)?),
            Component::Identity => Ok(x.clone()),
        })
        .collect()
}

/// Points `t₀ ≤ … ≤ t_{n+1}` with `t₀ = a`, `t_{n+1} = T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition1D {
    pub points: Vec<Rational>,
    pub mesh: Rational,
}

impl Partition1D {
    pub fn start(&self) -> &Rational {
        &self.points[0]
    }

    pub fn end(&self) -> &Rational {
        self.points.last().expect("nonempty")
    }

    pub fn max_gap(&self) -> Rational {
        max_gap(&self.points)
    }
}

pub fn max_gap(points: &[Rational]) -> Rational {
    points.windows(2).map(|w| &w[1] - &w[0]).max().unwrap_or_else(Rational::zero)
}

/// `tᵢ = a + iΔt` for `i ≤ n`, `n` the largest with `a + nΔt ≤ T`, then
/// `t_{n+1} = T` (possibly equal to `tₙ`).
pub fn special_partition(a: &Rational, t: &Rational, dt: &Rational) -> Result<Partition1D> {
    if a >= t {
        return Err(GlueError::BadSpec("partition needs a < T".into()));
    }
    if !dt.is_positive() {
        return Err(GlueError::BadSpec("mesh must be positive".into()));
    }
    let n = floor(&((t - a) / dt));
    let n: u64 = n.try_into().map_err(|_| GlueError::BadSpec("too many cells".into()))?;
    let mut points: Vec<Rational> = (0..=n).map(|i| a + dt * Rational::from_integer(i.into())).collect();
    points.push(t.clone());
    Ok(Partition1D { points, mesh: dt.clone() })
}

/// One point per cell avoiding `avoid`: `t′₀ = a`, then the midpoint of each
/// later cell nudged off the avoid set, then `T`.
pub fn avoiding_refinement(p: &Partition1D, avoid: &BTreeSet<Rational>) -> Result<Vec<Rational>> {
    if avoid.contains(p.start()) || avoid.contains(p.end()) {
        return Err(GlueError::AvoidSetBlocksEndpoints);
    }
    let mut out = vec![p.start().clone()];
    for cell in p.points.windows(2).skip(1) {
        let (lo, hi) = (&cell[0], &cell[1]);
        let width = hi - lo;
        if width.is_zero() {
            // degenerate last cell: its only point is T
            out.push(lo.clone());
            continue;
        }
        let mid = (lo + hi) * half();
        out.push(nudge(&mid, &width, avoid));
    }
    if out.last() != Some(p.end()) {
        out.push(p.end().clone());
    }
    Ok(out)
}

fn nudge(mid: &Rational, width: &Rational, avoid: &BTreeSet<Rational>) -> Rational {
    if !avoid.contains(mid) {
        return mid.clone();
    }
    // offsets stay within 3/7 of the width, so inside the cell
    let mut step = width.clone();
    loop {
        step /= Rational::from_integer(7.into());
        for k in 1..=3 {
            for sign in [1, -1] {
                let c = mid + &step * Rational::from_integer((k * sign).into());
                if !avoid.contains(&c) {
                    return c;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Telescope {
    pub increments: Vec<HyperReal>,
    pub total: HyperReal,
    pub endpoint_difference: HyperReal,
    pub max_increment: HyperReal,
}

impl Telescope {
    /// The sum of increments equals `f(T) − f(a)` coefficient for coefficient.
    pub fn exact(&self) -> bool {
        self.total.exactly_eq(&self.endpoint_difference)
    }
}

fn habs(x: &HyperReal) -> HyperReal {
    if x.signum() < 0 {
        x.clone().neg()
    } else {
        x.clone()
    }
}

pub fn telescope<F>(f: F, points: &[Rational]) -> Result<Telescope>
where
    F: Fn(&Rational) -> Result<HyperReal>,
{
    let values: Vec<HyperReal> = points.iter().map(&f).collect::<Result<_>>()?;
    let increments: Vec<HyperReal> = values.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let total = increments.iter().fold(HyperReal::zero(), |acc, d| acc.add(d));
    let max_increment = increments.iter().map(habs).fold(HyperReal::zero(), |m, d| if d.compare(&m).is_gt() { d } else { m });
    let endpoint_difference = match (values.first(), values.last()) {
        (Some(a), Some(b)) => b.sub(a),
        _ => HyperReal::zero(),
    };
    Ok(Telescope { increments, total, endpoint_difference, max_increment })
}

/// Mean-value bound `sup|G′| · gap = π·max|Δr|/(4δ₀) · gap` for standard mode.
pub fn increment_bound(g: &GlueFunction, gap: &Rational) -> Result<Coeff> {
    let max_jump = g.spec.values.windows(2).map(|w| (&w[1] - &w[0]).abs()).max().unwrap_or_else(Rational::zero);
    let delta = g.delta.as_rational().ok_or_else(|| GlueError::BadDelta(g.delta.to_string()))?;
    Ok(pi(g.precision) * Coeff::Exact(max_jump * gap / (delta * Rational::from_integer(4.into()))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingStep {
    pub from: Rational,
    pub to: Rational,
    pub increment: Rational,
}

/// `N([t′ᵢ, t′ᵢ₊₁]) = Q(t′ᵢ₊₁) − Q(t′ᵢ)` for the step function `Q` of `spec`.
pub fn resolving_process(spec: &StepSpec, selection: &[Rational]) -> Result<Vec<ResolvingStep>> {
    let q = |x: &Rational| {
        if spec.jumps().contains(x) {
            return Err(GlueError::SelectionHitsDiscontinuity(format_rational(x)));
        }
        spec.step_value(x).ok_or_else(|| GlueError::OutOfDomain(format_rational(x)))
    };
    let values: Vec<Rational> = selection.iter().map(q).collect::<Result<_>>()?;
    Ok(selection
        .windows(2)
        .zip(values.windows(2))
        .map(|(x, v)| ResolvingStep { from: x[0].clone(), to: x[1].clone(), increment: &v[1] - &v[0] })
        .collect())
}

/// Spec file: `{"partition": [...], "values": [...], "delta": "e" | rational}`.
/// Numbers may be JSON numbers or strings such as `"1/2"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlueSpecFile {
    pub partition: Vec<serde_json::Value>,
    pub values: Vec<serde_json::Value>,
    pub delta: serde_json::Value,
}

fn value_text(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(GlueError::BadSpec(format!("expected a number, got {other}"))),
    }
}

fn value_rational(v: &serde_json::Value) -> Result<Rational> {
    let t = value_text(v)?;
    parse_rational(&t).map_err(|e| GlueError::BadSpec(e.to_string()))
}

impl GlueSpecFile {
    pub fn from_json(text: &str) -> Result<GlueSpecFile> {
        serde_json::from_str(text).map_err(|e| GlueError::BadSpec(e.to_string()))
    }

    pub fn spec(&self) -> Result<StepSpec> {
        StepSpec::new(
            self.partition.iter().map(value_rational).collect::<Result<_>>()?,
            self.values.iter().map(value_rational).collect::<Result<_>>()?,
        )
    }

    pub fn delta(&self) -> Result<Delta> {
        Delta::parse(&value_text(&self.delta)?)
    }

    pub fn build(&self, precision: u32) -> Result<GlueFunction> {
        build_glue_with_precision(self.spec()?, self.delta()?, precision)
    }
}

/// Partition `{0, 1, 2}`, values `{2, 3}`: the neutron step `Q`.
pub fn neutron_spec() -> StepSpec {
    let i = |n: i64| Rational::from_integer(n.into());
    StepSpec::new(vec![i(0), i(1), i(2)], vec![i(2), i(3)]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn neutron() -> GlueFunction {
        build_glue(neutron_spec(), Delta::epsilon()).unwrap()
    }

    fn h(s: &str) -> HyperReal {
        s.parse().unwrap()
    }

    #[test]
    fn build_rejects_bad_widths() {
        assert!(build_glue(neutron_spec(), Delta::Standard(rat(1, 100))).is_ok());
        assert!(matches!(build_glue(neutron_spec(), Delta::Standard(rat(3, 5))), Err(GlueError::OverlappingTransitions { .. })));
        assert!(matches!(build_glue(neutron_spec(), Delta::Infinitesimal(h("-1e"))), Err(GlueError::NonPositiveDelta(_))));
        assert!(matches!(build_glue(neutron_spec(), Delta::Standard(int(0))), Err(GlueError::NonPositiveDelta(_))));
        assert!(StepSpec::new(vec![int(0), int(0), int(1)], vec![int(1), int(2)]).is_err());
        assert!(StepSpec::new(vec![int(0), int(1)], vec![int(1)]).is_err());
    }

    #[test]
    fn neutron_values() {
        let g = neutron();
        assert!(g.eval_rational(&rat(1, 2)).unwrap().exactly_eq(&HyperReal::from_int(2)));
        assert!(g.eval_rational(&int(1)).unwrap().exactly_eq(&HyperReal::from_rational(rat(5, 2))));
        assert!(g.eval(&h("1 + 1e")).unwrap().exactly_eq(&HyperReal::from_int(3)));
        assert!(matches!(g.eval_rational(&int(3)), Err(GlueError::OutOfDomain(_))));
    }

    #[test]
    fn neutron_derivatives() {
        let g = neutron();
        let d1 = g.derivative(1, &HyperReal::from_int(1)).unwrap();
        let (q, c) = d1.leading().unwrap();
        assert_eq!(q, -1);
        let want = pi(50) * Coeff::Exact(rat(1, 4));
        assert!(c.approx_eq(&want));
        assert!(g.derivative(1, &h("1 + 1e")).unwrap().is_zero());
        assert!(g.derivative(3, &h("1 - 1e")).unwrap().is_zero());
        let d2 = g.derivative(2, &h("1 + 1e")).unwrap();
        let (q, c) = d2.leading().unwrap();
        assert_eq!(q, -2);
        let p = pi(50);
        assert!(c.abs().approx_eq(&(p.clone() * p * Coeff::Exact(rat(1, 8)))));
        assert!(g.derivative(1, &HyperReal::from_rational(rat(1, 2))).unwrap().is_zero());
        assert_eq!(g.derivative(0, &HyperReal::one()), Err(GlueError::ZeroOrder));
    }

    #[test]
    fn standard_part_restriction() {
        let g = neutron();
        assert!(g.st_restrict(&rat(1, 2)).unwrap().is_exactly(&int(2)));
        assert!(g.st_restrict(&rat(3, 2)).unwrap().is_exactly(&int(3)));
        assert_eq!(g.st_restrict(&int(1)), Err(GlueError::OnPartitionPoint("1".into())));
    }

    #[test]
    fn ranges() {
        let r = neutron().range_check().unwrap();
        assert_eq!((r.c.clone(), r.d.clone()), (int(2), int(3)));
        assert!(r.certified);
        let flat = build_glue(StepSpec::new(vec![int(0), int(1), int(2)], vec![int(5), int(5)]).unwrap(), Delta::epsilon()).unwrap();
        let r = flat.range_check().unwrap();
        assert_eq!((r.c, r.d), (int(5), int(5)));
        let s = StepSpec::new(vec![int(0), int(1), int(2), int(3)], vec![int(3), int(1), int(4)]).unwrap();
        let r = build_glue(s, Delta::Standard(rat(1, 10))).unwrap().range_check().unwrap();
        assert_eq!((r.c, r.d), (int(1), int(4)));
        assert!(r.certified);
    }

    #[test]
    fn special_partitions() {
        let p = special_partition(&int(0), &int(1), &rat(3, 10)).unwrap();
        assert_eq!(p.points, vec![int(0), rat(3, 10), rat(3, 5), rat(9, 10), int(1)]);
        let p = special_partition(&int(0), &int(1), &rat(1, 2)).unwrap();
        assert_eq!(p.points, vec![int(0), rat(1, 2), int(1), int(1)]);
        let p = special_partition(&int(0), &int(1), &int(2)).unwrap();
        assert_eq!(p.points, vec![int(0), int(1)]);
    }

    #[test]
    fn avoiding_selection() {
        let p = Partition1D { points: vec![int(0), rat(1, 2), int(1)], mesh: rat(1, 2) };
        let avoid = BTreeSet::from([rat(3, 4)]);
        let sel = avoiding_refinement(&p, &avoid).unwrap();
        assert_eq!(sel.first(), Some(&int(0)));
        assert_eq!(sel.last(), Some(&int(1)));
        assert!(sel.iter().all(|x| !avoid.contains(x)));
        assert!(sel.windows(2).all(|w| w[0] <= w[1]));
        assert!(sel[1] > rat(1, 2) && sel[1] < int(1));
        let free = avoiding_refinement(&p, &BTreeSet::new()).unwrap();
        assert_eq!(free, vec![int(0), rat(3, 4), int(1)]);
        assert_eq!(avoiding_refinement(&p, &BTreeSet::from([int(0)])), Err(GlueError::AvoidSetBlocksEndpoints));
    }

    #[test]
    fn telescoping_neutron() {
        let g = build_glue(neutron_spec(), Delta::Standard(rat(1, 100))).unwrap();
        let p = special_partition(&int(0), &int(2), &rat(1, 10)).unwrap();
        let t = telescope(|x| g.eval_rational(x), &p.points).unwrap();
        assert!(t.exact());
        assert!(t.total.exactly_eq(&HyperReal::one()));
        let c = telescope(|_| Ok(HyperReal::from_int(7)), &p.points).unwrap();
        assert!(c.increments.iter().all(HyperReal::is_zero));
    }

    #[test]
    fn resolving_neutron() {
        let p = special_partition(&int(0), &int(2), &rat(1, 4)).unwrap();
        let sel = avoiding_refinement(&p, &BTreeSet::from([int(1)])).unwrap();
        let steps = resolving_process(&neutron_spec(), &sel).unwrap();
        let nonzero: Vec<_> = steps.iter().filter(|s| !s.increment.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].increment, int(1));
        assert!(nonzero[0].from < int(1) && nonzero[0].to > int(1));
        assert!(matches!(resolving_process(&neutron_spec(), &[int(0), int(1), int(2)]), Err(GlueError::SelectionHitsDiscontinuity(_))));
    }

    #[test]
    fn spec_file() {
        let f = GlueSpecFile::from_json(r#"{"partition": [0, 1, 2], "values": ["2", 3], "delta": "e"}"#).unwrap();
        let g = f.build(50).unwrap();
        assert!(g.is_infinitesimal());
        let f = GlueSpecFile::from_json(r#"{"partition": [0, 1, 2], "values": [2, 3], "delta": "1/100"}"#).unwrap();
        assert!(!f.build(50).unwrap().is_infinitesimal());
    }

    #[test]
    fn vector_components() {
        let v = eval_vector(&[Component::Glue(neutron()), Component::Smooth(Transcendental::Cos), Component::Identity], &HyperReal::zero(), 50).unwrap();
        assert!(v[0].exactly_eq(&HyperReal::from_int(2)));
        assert!(v[1].exactly_eq(&HyperReal::one()));
        assert!(v[2].is_zero());
    }
}
