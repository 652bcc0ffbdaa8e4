//! Subparticle representations: coordinate vectors over the hyperreal
//! kernel carrying a prime-factored identifier, intermediate formation,
//! combination, standard projection, decoding, the diagonal transform,
//! ultrafast kinetic energy and the doubling-map coin sequence.
//!
//! Toy mode keeps every exponent finite so identifiers are literal
//! integers. Hyper mode allows unlimited exponents and `K`-blocks, and never
//! materializes the integer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyper::{hypernat_for, Class, HyperError, HyperReal, NatLike};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubparticleError {
    #[error("{0} is not a naming prime (must be a prime outside the first f primes)")]
    NameNotInK(u64),
    #[error("characteristic {i} is outside 1..={f}")]
    CharOutOfRange { i: usize, f: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("nothing to combine")]
    EmptyCombination,
    #[error("perturbation {0} is not infinitesimal")]
    NotInfinitesimal(String),
    #[error("coordinate {0} is unlimited and has no standard value")]
    UnlimitedCoordinate(usize),
    #[error("{0} has a prime factor beyond the declared prime universe")]
    NonFactorable(String),
    #[error("coin seed must lie strictly between 0 and 1, got {0}")]
    OutOfUnitInterval(String),
    #[error("need at least {need} coordinates, got {got}")]
    TooFewDims { need: usize, got: usize },
    #[error("coordinate {0} does not exist")]
    NoSuchCoordinate(usize),
    #[error("bad entity description: {0}")]
    BadEntity(String),
    #[error(transparent)]
    Hyper(#[from] HyperError),
}

pub type Result<T> = std::result::Result<T, SubparticleError>;

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `J(i)`: the `i`-th prime, `i >= 1`.
pub fn nth_prime(i: usize) -> u64 {
    assert!(i >= 1, "primes are indexed from 1");
    let mut limit = 16u64.max((i as f64 * ((i as f64).ln() + (i as f64).ln().ln().max(1.0)) * 1.3) as u64);
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= i {
            return ps[i - 1];
        }
        limit *= 2;
    }
}

/// `K[idx]` (0-based): the primes after the first `f`, ascending.
pub fn k_prime(f: usize, idx: usize) -> u64 {
    nth_prime(f + idx + 1)
}

/// Settings shared by the operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubparticleConfig {
    /// Number of characteristics; `J(1) … J(f)` are reserved.
    pub f: usize,
    /// Trial division covers primes up to this bound.
    pub prime_limit: u64,
    /// Characteristic → coordinate index; unlisted `i` map to `i + 2`.
    pub quality: BTreeMap<usize, usize>,
}

impl Default for SubparticleConfig {
    fn default() -> Self {
        SubparticleConfig { f: 2, prime_limit: 100_000, quality: BTreeMap::new() }
    }
}

impl SubparticleConfig {
    pub fn with_f(f: usize) -> Self {
        SubparticleConfig { f, ..Default::default() }
    }

    pub fn coord_for(&self, i: usize) -> usize {
        self.quality.get(&i).copied().unwrap_or(i + 2)
    }

    pub fn check_naming_prime(&self, p: u64) -> Result<()> {
        if !is_prime(p) || p <= nth_prime(self.f) {
            return Err(SubparticleError::NameNotInK(p));
        }
        Ok(())
    }

    fn check_char(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.f {
            return Err(SubparticleError::CharOutOfRange { i, f: self.f });
        }
        Ok(())
    }
}

/// `count` consecutive naming primes of `K` starting at 0-based `start`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KBlock {
    pub start: u64,
    pub count: HyperReal,
}

/// Prime-factored name: `Π J(i)^{λ_i} × Π naming primes × K-blocks`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Identifier {
    pub chars: BTreeMap<usize, HyperReal>,
    pub naming: BTreeMap<u64, u32>,
    pub blocks: Vec<KBlock>,
}

impl Identifier {
    pub fn from_primes<I: IntoIterator<Item = u64>>(primes: I) -> Identifier {
        let mut naming = BTreeMap::new();
        for p in primes {
            *naming.entry(p).or_insert(0) += 1;
        }
        Identifier { naming, ..Default::default() }
    }

    /// All exponents finite and no blocks.
    pub fn is_toy(&self) -> bool {
        self.blocks.is_empty() && self.chars.values().all(|e| e.as_natural().is_some())
    }

    /// The integer, in toy mode.
    pub fn value(&self) -> Option<BigUint> {
        if !self.is_toy() {
            return None;
        }
        let mut v = BigUint::one();
        for (&i, e) in &self.chars {
            let e = e.as_natural()?.to_u32()?;
            v *= BigUint::from(nth_prime(i)).pow(e);
        }
        for (&p, &k) in &self.naming {
            v *= BigUint::from(p).pow(k);
        }
        Some(v)
    }

    /// Product of identifiers as a factor merge.
    pub fn merge(&self, other: &Identifier) -> Identifier {
        let mut out = self.clone();
        for (&i, e) in &other.chars {
            let slot = out.chars.entry(i).or_insert_with(HyperReal::zero);
            *slot = slot.add(e);
        }
        for (&p, &k) in &other.naming {
            *out.naming.entry(p).or_insert(0) += k;
        }
        out.blocks.extend(other.blocks.iter().cloned());
        out.blocks.sort_by(|a, b| a.start.cmp(&b.start).then(a.count.compare(&b.count)));
        out
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.value() {
            return write!(f, "{v}");
        }
        let mut parts = Vec::new();
        for (&i, e) in &self.chars {
            parts.push(format!("J({i})^({e})"));
        }
        for (&p, &k) in &self.naming {
            parts.push(if k == 1 { p.to_string() } else { format!("{p}^{k}") });
        }
        for b in &self.blocks {
            parts.push(format!("K[{}; {}]", b.start, b.count));
        }
        f.write_str(&parts.join(" · "))
    }
}

/// Named coordinate vector; coordinates are indexed `3..=dims`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubparticleRep {
    pub a1: Identifier,
    pub a2: HyperReal,
    pub dims: usize,
    pub coords: BTreeMap<usize, HyperReal>,
}

/// `+ε` on odd coordinates, `−ε` on even ones.
pub fn baseline(index: usize) -> HyperReal {
    if index % 2 == 1 {
        HyperReal::epsilon()
    } else {
        HyperReal::epsilon().scale_rational(&Rational::from_integer((-1).into()))
    }
}

fn baseline_coords(dims: usize) -> BTreeMap<usize, HyperReal> {
    (3..=dims).map(|i| (i, baseline(i))).collect()
}

impl SubparticleRep {
    pub fn coord(&self, index: usize) -> Option<&HyperReal> {
        self.coords.get(&index)
    }
}

fn check_dims(dims: usize, need: usize) -> Result<()> {
    if dims < need.max(3) {
        return Err(SubparticleError::TooFewDims { need: need.max(3), got: dims });
    }
    Ok(())
}

/// Fresh ultrasubparticle named by a single naming prime.
pub fn new_ultrasubparticle(name: u64, dims: usize, cfg: &SubparticleConfig) -> Result<SubparticleRep> {
    cfg.check_naming_prime(name)?;
    check_dims(dims, 3)?;
    Ok(SubparticleRep { a1: Identifier::from_primes([name]), a2: HyperReal::one(), dims, coords: baseline_coords(dims) })
}

/// How many subparticles an intermediate gathers.
#[derive(Debug, Clone, PartialEq)]
pub enum Lambda {
    /// Toy mode: a literal count.
    Finite(u64),
    /// Hyper mode: `λ_r = r·Ω`.
    Ratio(Rational),
}

impl Lambda {
    pub fn value(&self) -> Result<HyperReal> {
        match self {
            Lambda::Finite(n) => Ok(NatLike::finite(*n).into_value()),
            Lambda::Ratio(r) => Ok(hypernat_for(r)?.into_value()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Naming {
    Primes(Vec<u64>),
    Block(KBlock),
}

impl Naming {
    fn identifier(&self, cfg: &SubparticleConfig) -> Result<Identifier> {
        match self {
            Naming::Primes(ps) => {
                for &p in ps {
                    cfg.check_naming_prime(p)?;
                }
                Ok(Identifier::from_primes(ps.iter().copied()))
            }
            Naming::Block(b) => {
                if !b.count.is_nat_like() {
                    return Err(SubparticleError::BadEntity(format!("block count {} is not nat-like", b.count)));
                }
                Ok(Identifier { blocks: vec![b.clone()], ..Default::default() })
            }
        }
    }
}

/// Sums `λ` subparticles along characteristic `i`: coordinate `±λε`,
/// counting coordinate `λ`, identifier `naming × J(i)^λ`.
pub fn form_intermediate(i: usize, lambda: &Lambda, naming: &Naming, negative: bool, dims: usize, cfg: &SubparticleConfig) -> Result<SubparticleRep> {
    cfg.check_char(i)?;
    let index = cfg.coord_for(i);
    check_dims(dims, index)?;
    let lam = lambda.value()?;
    let mut coords = baseline_coords(dims);
    let unit = if negative { HyperReal::epsilon().scale_rational(&Rational::from_integer((-1).into())) } else { HyperReal::epsilon() };
    coords.insert(index, lam.mul(&unit)?);
    let mut a1 = naming.identifier(cfg)?;
    a1.chars.insert(i, lam.clone());
    Ok(SubparticleRep { a1, a2: lam, dims, coords })
}

/// Coordinatewise sum, counts added, identifiers multiplied.
pub fn combine(parts: &[SubparticleRep]) -> Result<SubparticleRep> {
    let (first, rest) = parts.split_first().ok_or(SubparticleError::EmptyCombination)?;
    let mut acc = first.clone();
    for p in rest {
        if p.dims != acc.dims {
            return Err(SubparticleError::DimensionMismatch(acc.dims, p.dims));
        }
        for (k, v) in &p.coords {
            let slot = acc.coords.entry(*k).or_insert_with(HyperReal::zero);
            *slot = slot.add(v);
        }
        acc.a2 = acc.a2.add(&p.a2);
        acc.a1 = acc.a1.merge(&p.a1);
    }
    Ok(acc)
}

pub fn add_perturbations(p: &SubparticleRep, zetas: &[HyperReal], coord: usize) -> Result<SubparticleRep> {
    if let Some(z) = zetas.iter().find(|z| !z.is_infinitesimal()) {
        return Err(SubparticleError::NotInfinitesimal(z.to_string()));
    }
    let mut out = p.clone();
    let slot = out.coords.get_mut(&coord).ok_or(SubparticleError::NoSuchCoordinate(coord))?;
    for z in zetas {
        *slot = slot.add(z);
    }
    Ok(out)
}

/// Standard values of the limited, non-infinitesimal coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityProjection {
    pub coords: BTreeMap<usize, Rational>,
    pub zeroed: BTreeSet<usize>,
}

pub fn project_standard(p: &SubparticleRep) -> Result<EntityProjection> {
    let mut coords = BTreeMap::new();
    let mut zeroed = BTreeSet::new();
    for (&k, v) in &p.coords {
        match v.classify() {
            Class::Unlimited => return Err(SubparticleError::UnlimitedCoordinate(k)),
            Class::Infinitesimal => {
                zeroed.insert(k);
            }
            Class::LimitedNoninfinitesimal => {
                coords.insert(k, v.st()?.to_rational());
            }
        }
    }
    Ok(EntityProjection { coords, zeroed })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicReport {
    pub i: usize,
    pub exponent: HyperReal,
    /// `st(λε)` for unlimited exponents.
    pub ratio: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub characteristics: Vec<CharacteristicReport>,
    pub constituents: BTreeMap<u64, u32>,
    pub blocks: Vec<KBlock>,
}

/// Toy-mode decode by trial division: primes up to `J(f)` are
/// characteristics, the rest naming constituents.
pub fn decode(value: &BigUint, cfg: &SubparticleConfig) -> Result<Decoded> {
    if value.is_zero() {
        return Err(SubparticleError::NonFactorable("0".into()));
    }
    let jf = nth_prime(cfg.f);
    let mut rest = value.clone();
    let mut chars = Vec::new();
    let mut constituents = BTreeMap::new();
    for (idx, p) in primes_up_to(cfg.prime_limit.max(jf)).into_iter().enumerate() {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k == 0 {
            continue;
        }
        if p <= jf {
            chars.push(CharacteristicReport { i: idx + 1, exponent: HyperReal::from_int(k as i64), ratio: None });
        } else {
            constituents.insert(p, k);
        }
    }
    if !rest.is_one() {
        return Err(SubparticleError::NonFactorable(value.to_string()));
    }
    Ok(Decoded { characteristics: chars, constituents, blocks: Vec::new() })
}

/// Reads a factored identifier directly; works in both modes.
pub fn decode_identifier(id: &Identifier) -> Decoded {
    let characteristics = id
        .chars
        .iter()
        .map(|(&i, e)| CharacteristicReport {
            i,
            exponent: e.clone(),
            ratio: if e.classify() == Class::Unlimited { e.mul(&HyperReal::epsilon()).ok().and_then(|x| x.st().ok()).map(|c| c.to_rational()) } else { None },
        })
        .collect();
    Decoded { characteristics, constituents: id.naming.clone(), blocks: id.blocks.clone() }
}

/// Multiplies coordinate `k` by `λ_k` (diagonal matrix with `1` elsewhere).
/// The identifier and counting coordinate are copied unchanged.
pub fn apply_diagonal(lambdas: &BTreeMap<usize, HyperReal>, usp: &SubparticleRep) -> Result<SubparticleRep> {
    let mut out = usp.clone();
    for (k, lam) in lambdas {
        let slot = out.coords.get_mut(k).ok_or(SubparticleError::NoSuchCoordinate(*k))?;
        *slot = slot.mul(lam)?;
    }
    Ok(out)
}

/// `½·m·v²`.
pub fn ultrafast_ke(m: &HyperReal, v: &HyperReal) -> Result<HyperReal> {
    Ok(m.mul(&v.mul(v)?)?.scale_rational(&Rational::new(1.into(), 2.into())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coin {
    H,
    T,
}

impl fmt::Display for Coin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coin::H => "H",
            Coin::T => "T",
        })
    }
}

/// `k`-th flip is `H` iff `frac(x·2ᵏ) < 1/2`, `k = 1..=count`.
pub fn coin_sequence(x: &Rational, count: usize) -> Result<Vec<Coin>> {
    if !x.is_positive() || x >= &Rational::one() {
        return Err(SubparticleError::OutOfUnitInterval(format_rational(x)));
    }
    // r_k = 2 r_{k-1} mod q on the numerator
    let q = x.denom().clone();
    let mut r = x.numer().clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        r = (&r * 2u32).mod_floor(&q);
        out.push(if &r * 2u32 < q { Coin::H } else { Coin::T });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinStats {
    pub n: usize,
    pub heads: usize,
    /// `|#H/n − 1/2|`.
    pub frequency_deviation: f64,
    pub runs: usize,
    /// Wald–Wolfowitz statistic.
    pub runs_z: f64,
}

pub fn coin_statistics(seq: &[Coin]) -> CoinStats {
    let n = seq.len();
    let heads = seq.iter().filter(|c| **c == Coin::H).count();
    let runs = if n == 0 { 0 } else { 1 + seq.windows(2).filter(|w| w[0] != w[1]).count() };
    let (n1, n2, nf) = (heads as f64, (n - heads) as f64, n as f64);
    let mu = 2.0 * n1 * n2 / nf + 1.0;
    let var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - nf) / (nf * nf * (nf - 1.0));
    let runs_z = if var > 0.0 { (runs as f64 - mu) / var.sqrt() } else { f64::INFINITY };
    CoinStats { n, heads, frequency_deviation: (n1 / nf - 0.5).abs(), runs, runs_z }
}

/// One characteristic of an entity file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicSpec {
    pub i: usize,
    #[serde(default)]
    pub lambda: Option<u64>,
    #[serde(default)]
    pub r: Option<String>,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityMode {
    Toy,
    Hyper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamingSpec {
    Primes { primes: Vec<u64> },
    Block { block: (u64, String) },
}

/// `{mode, f, characteristics: [{i, lambda|r, sign}], naming: {primes|block}, dims}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityFile {
    pub mode: EntityMode,
    pub f: usize,
    pub characteristics: Vec<CharacteristicSpec>,
    pub naming: NamingSpec,
    pub dims: usize,
}

impl EntityFile {
    pub fn from_json(text: &str) -> Result<EntityFile> {
        serde_json::from_str(text).map_err(|e| SubparticleError::BadEntity(e.to_string()))
    }

    /// The combined intermediates; the naming is attached to the first.
    pub fn build(&self, base: &SubparticleConfig) -> Result<SubparticleRep> {
        let cfg = SubparticleConfig { f: self.f, ..base.clone() };
        let naming = match &self.naming {
            NamingSpec::Primes { primes } => Naming::Primes(primes.clone()),
            NamingSpec::Block { block: (start, count) } => {
                let count: HyperReal = count.parse().map_err(|e: HyperError| SubparticleError::BadEntity(e.to_string()))?;
                Naming::Block(KBlock { start: *start, count })
            }
        };
        if self.characteristics.is_empty() {
            return Err(SubparticleError::BadEntity("no characteristics".into()));
        }
        let mut parts = Vec::new();
        for (k, c) in self.characteristics.iter().enumerate() {
            let lambda = match (self.mode.clone(), c.lambda, &c.r) {
                (EntityMode::Toy, Some(n), None) => Lambda::Finite(n),
                (EntityMode::Hyper, None, Some(r)) => Lambda::Ratio(parse_rational(r).map_err(|e| SubparticleError::BadEntity(e.to_string()))?),
                _ => return Err(SubparticleError::BadEntity(format!("characteristic {} needs `lambda` in toy mode or `r` in hyper mode", c.i))),
            };
            let nm = if k == 0 { naming.clone() } else { Naming::Primes(Vec::new()) };
            parts.push(form_intermediate(c.i, &lambda, &nm, c.sign < 0, self.dims, &cfg)?);
        }
        combine(&parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn cfg() -> SubparticleConfig {
        SubparticleConfig::default()
    }

    fn h(s: &str) -> HyperReal {
        s.parse().unwrap()
    }

    #[test]
    fn prime_tables() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(100), 541);
        assert_eq!(k_prime(2, 0), 5);
    }

    #[test]
    fn ultrasubparticles() {
        let p = new_ultrasubparticle(11, 6, &cfg()).unwrap();
        assert!(p.a2.exactly_eq(&HyperReal::one()));
        assert!(p.coords[&3].exactly_eq(&h("1e")));
        assert!(p.coords[&4].exactly_eq(&h("-1e")));
        assert!(p.coords[&6].exactly_eq(&h("-1e")));
        assert_eq!(p.coords.len(), 4);
        assert_eq!(new_ultrasubparticle(2, 6, &cfg()), Err(SubparticleError::NameNotInK(2)));
        assert_eq!(new_ultrasubparticle(9, 6, &cfg()), Err(SubparticleError::NameNotInK(9)));
    }

    #[test]
    fn toy_intermediate_identifier() {
        let p = form_intermediate(1, &Lambda::Finite(4), &Naming::Primes(vec![5, 7, 11, 13]), false, 6, &cfg()).unwrap();
        assert_eq!(p.a1.value(), Some(BigUint::from(80080u32)));
        assert!(p.coords[&3].exactly_eq(&h("4e")));
        assert!(p.a2.exactly_eq(&HyperReal::from_int(4)));
        assert!(matches!(form_intermediate(3, &Lambda::Finite(1), &Naming::Primes(vec![]), false, 6, &cfg()), Err(SubparticleError::CharOutOfRange { .. })));
    }

    #[test]
    fn hyper_intermediate() {
        let p = form_intermediate(1, &Lambda::Ratio(rat(7, 3)), &Naming::Block(KBlock { start: 0, count: h("7/3e^-1") }), false, 6, &cfg()).unwrap();
        assert!(p.coords[&3].st().unwrap().is_exactly(&rat(7, 3)));
        assert_eq!(p.a2.classify(), Class::Unlimited);
        assert_eq!(p.a1.value(), None);
        let d = decode_identifier(&p.a1);
        assert_eq!(d.characteristics[0].ratio, Some(rat(7, 3)));
    }

    #[test]
    fn combination() {
        let a = form_intermediate(1, &Lambda::Finite(4), &Naming::Primes(vec![5, 7, 11, 13]), false, 6, &cfg()).unwrap();
        let b = form_intermediate(2, &Lambda::Finite(2), &Naming::Primes(vec![17]), false, 6, &cfg()).unwrap();
        let c = combine(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(c.a1.value(), Some(BigUint::from(80080u32 * 153)));
        assert_eq!(combine(std::slice::from_ref(&a)).unwrap(), a);
        let wide = new_ultrasubparticle(19, 8, &cfg()).unwrap();
        assert_eq!(combine(&[a, wide]), Err(SubparticleError::DimensionMismatch(6, 8)));
        let x = form_intermediate(1, &Lambda::Ratio(rat(1, 2)), &Naming::Primes(vec![]), false, 4, &cfg()).unwrap();
        let y = form_intermediate(1, &Lambda::Ratio(rat(1, 3)), &Naming::Primes(vec![]), false, 4, &cfg()).unwrap();
        assert!(combine(&[x, y]).unwrap().coords[&3].st().unwrap().is_exactly(&rat(5, 6)));
    }

    #[test]
    fn perturbations_and_projection() {
        let m0 = rat(3, 2);
        let p = form_intermediate(1, &Lambda::Ratio(m0.clone()), &Naming::Primes(vec![]), false, 6, &cfg()).unwrap();
        let q = add_perturbations(&p, &[h("1e^2"), h("-3e")], 3).unwrap();
        let proj = project_standard(&q).unwrap();
        assert_eq!(proj.coords, BTreeMap::from([(3, m0)]));
        assert_eq!(proj.zeroed, BTreeSet::from([4, 5, 6]));
        assert_eq!(project_standard(&p).unwrap(), proj);
        assert_eq!(add_perturbations(&p, &[], 3).unwrap(), p);
        assert!(matches!(add_perturbations(&p, &[HyperReal::one()], 3), Err(SubparticleError::NotInfinitesimal(_))));
        let bare = project_standard(&new_ultrasubparticle(11, 5, &cfg()).unwrap()).unwrap();
        assert!(bare.coords.is_empty() && bare.zeroed.len() == 3);
        let mut hot = p.clone();
        hot.coords.insert(4, HyperReal::omega());
        assert_eq!(project_standard(&hot), Err(SubparticleError::UnlimitedCoordinate(4)));
    }

    #[test]
    fn decoding() {
        let d = decode(&BigUint::from(80080u32), &cfg()).unwrap();
        assert_eq!(d.characteristics.len(), 1);
        assert_eq!(d.characteristics[0].i, 1);
        assert!(d.characteristics[0].exponent.exactly_eq(&HyperReal::from_int(4)));
        assert_eq!(d.constituents, BTreeMap::from([(5, 1), (7, 1), (11, 1), (13, 1)]));
        let d = decode(&BigUint::from(27u32), &cfg()).unwrap();
        assert_eq!(d.characteristics[0].i, 2);
        assert!(d.constituents.is_empty());
        let small = SubparticleConfig { prime_limit: 100, ..cfg() };
        assert!(matches!(decode(&BigUint::from(101u32 * 5), &small), Err(SubparticleError::NonFactorable(_))));
    }

    #[test]
    fn diagonal_transform() {
        let usp = new_ultrasubparticle(11, 6, &cfg()).unwrap();
        let lam = HyperReal::omega().scale_rational(&int(2));
        let d = apply_diagonal(&BTreeMap::from([(3, lam)]), &usp).unwrap();
        let pipeline = form_intermediate(1, &Lambda::Ratio(int(2)), &Naming::Block(KBlock { start: 0, count: h("2e^-1") }), false, 6, &cfg()).unwrap();
        assert_eq!(d.coords, pipeline.coords);
        assert_ne!(d.a1, pipeline.a1);
        assert_eq!(apply_diagonal(&BTreeMap::new(), &usp).unwrap(), usp);
    }

    #[test]
    fn kinetic_energy() {
        let ke = ultrafast_ke(&h("1e^4"), &HyperReal::omega()).unwrap();
        assert!(ke.exactly_eq(&h("1/2e^2")));
        assert!(ke.is_infinitesimal());
        let hh = rat(7, 5);
        let m = h("1e^2").scale_rational(&(&hh * int(2)));
        assert!(ultrafast_ke(&m, &HyperReal::omega()).unwrap().exactly_eq(&HyperReal::from_rational(hh)));
        assert!(ultrafast_ke(&HyperReal::zero(), &HyperReal::omega()).unwrap().is_zero());
    }

    #[test]
    fn coins() {
        use Coin::*;
        assert_eq!(coin_sequence(&rat(1, 3), 4).unwrap(), vec![T, H, T, H]);
        assert_eq!(coin_sequence(&rat(5, 16), 4).unwrap(), vec![T, H, T, H]);
        assert_eq!(coin_sequence(&rat(1, 2), 3).unwrap(), vec![H, H, H]);
        assert!(coin_sequence(&int(1), 3).is_err());
        assert!(coin_sequence(&int(0), 3).is_err());
    }

    #[test]
    fn entity_files() {
        let toy = EntityFile::from_json(r#"{"mode":"toy","f":2,"characteristics":[{"i":1,"lambda":4}],"naming":{"primes":[5,7,11,13]},"dims":6}"#).unwrap();
        assert_eq!(toy.build(&cfg()).unwrap().a1.value(), Some(BigUint::from(80080u32)));
        let hyper = EntityFile::from_json(r#"{"mode":"hyper","f":2,"characteristics":[{"i":1,"r":"3/2"},{"i":2,"r":"1","sign":-1}],"naming":{"block":[0,"3/2e^-1"]},"dims":6}"#).unwrap();
        let e = hyper.build(&cfg()).unwrap();
        let proj = project_standard(&e).unwrap();
        assert_eq!(proj.coords, BTreeMap::from([(3, rat(3, 2)), (4, int(-1))]));
    }
}
