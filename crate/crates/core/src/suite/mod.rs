//! Acceptance criteria as runnable checks, shared by the `acceptance` test
//! target and the command-line `suite` runner. Expected values come from
//! [`oracle`], which does not call the code under test.

pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::glue::{avoiding_refinement, build_glue, increment_bound, neutron_spec, resolving_process, special_partition, telescope, Delta, StepSpec};
use crate::hyper::{approximate_shadow, hypernat_for, hypersum_const, Class, Coeff, HyperReal, NatLike};
use crate::logic::{
    characterize, classical_compare, closure, closure_operator, continuity_shadow, make_ultraword, member, unfold, verify_operator_axioms, Formula, FormulaSet,
    OperatorTable,
};
use crate::omlattice::{axiom_validity, boolean, mo2, validate_orthomodular, OrthoLattice};
use crate::rational::{format_rational, Rational};
use crate::subparticle::{combine, decode, form_intermediate, ultrafast_ke, Lambda, Naming, SubparticleConfig};

use oracle::Pat;

/// Wall-clock limit for the exhaustive characterization run.
pub const CHARACTERIZE_BUDGET: Duration = Duration::from_secs(60);
/// Absolute tolerance on decimal (π-bearing) coefficients.
pub const DECIMAL_TOL_EXP: u32 = 40;
/// Relative error allowed between closed-form `G′` and central differences.
pub const FD_REL_TOL: f64 = 1e-6;
/// Finite-difference step as a fraction of `δ₀`.
pub const FD_STEP_FRACTION: i64 = 1000;
/// Random cases per kernel law family.
pub const KERNEL_CASES: usize = 1000;
pub const APPROX_CASES: usize = 1000;
pub const APPROX_MAX_M: u64 = 1_000_000_000;
pub const HYPERNAT_CASES: usize = 100;
pub const ENTITY_CASES: usize = 100;
pub const ULTRAWORD_CASES: usize = 100;
pub const GRID_POINTS: i64 = 100;
pub const FD_POINTS: i64 = 20;
/// Total suite target.
pub const SUITE_BUDGET: Duration = Duration::from_secs(300);

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "closure characterization"),
    (2, "consequence-operator axioms"),
    (3, "quantum compatibility"),
    (4, "soundness and strictness"),
    (5, "glue exactness"),
    (6, "derivative cross-check"),
    (7, "telescoping"),
    (8, "approximation"),
    (9, "subparticle round trip"),
    (10, "kernel laws"),
    (11, "ultrafast kinetic energy"),
    (12, "continuity shadow"),
    (13, "proof-trace ordering"),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {:<28} {} ({} ms)", self.id, self.name, self.detail, self.millis)
    }
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 56))
}

/// Runs one criterion; unknown ids report a failure.
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown");
    let mut rng = rng_for(seed, id);
    let outcome = match id {
        1 => closure_characterization(),
        2 => operator_axioms(),
        3 => quantum_compatibility(),
        4 => soundness(),
        5 => glue_exactness(),
        6 => derivative_cross_check(),
        7 => telescoping(),
        8 => approximation(&mut rng),
        9 => subparticle_round_trip(&mut rng),
        10 => kernel_laws(&mut rng),
        11 => kinetic_energy(),
        12 => continuity(),
        13 => trace_ordering(&mut rng),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, millis: start.elapsed().as_millis() }
}

/// Runs the given criteria concurrently; results come back in input order.
pub fn run(ids: &[u8], seed: u64) -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || run_criterion(id, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let ids: Vec<u8> = CRITERIA.iter().map(|(i, _)| *i).collect();
    run(&ids, seed)
}

fn atoms(n: usize) -> Vec<Formula> {
    (0..n).map(|i| Formula::atom(format!("F{i}"))).collect()
}

/// Ordered selections of `k` distinct items.
fn arrangements<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in arrangements(&rest, k - 1) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

fn closure_characterization() -> Check {
    let start = Instant::now();
    let pool = atoms(5);
    let mut words = 0;
    for n in 2..=5 {
        for seq in arrangements(&pool, n) {
            let w = make_ultraword(&seq).map_err(|e| e.to_string())?;
            let c = characterize(&w).map_err(|e| e.to_string())?;
            let (want, saturated) = oracle::proof_search(&FormulaSet::from([w.clone()]), 2 * n + 4);
            ensure(saturated, || format!("search for {w} did not saturate within depth {}", 2 * n + 4))?;
            let got: FormulaSet = c.q_set.union(&c.d_prime).cloned().collect();
            ensure(got == want, || format!("{w}: characterize gives {} formulas, search gives {}", got.len(), want.len()))?;
            ensure(c.d_prime.iter().all(Formula::is_atom) && c.q_set.iter().all(Formula::is_conjunction), || format!("{w}: d′/Q mix kinds"))?;
            ensure(got.iter().all(|x| oracle::schemata_of(x).is_empty()), || format!("{w}: an axiom instance lies in Q ∪ d′"))?;
            words += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CHARACTERIZE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{words} ultrawords match search, A/Q/d′ disjoint, {:.2} s", elapsed.as_secs_f64()))
}

/// Four atoms, their six pairwise conjunctions, and the 4-atom ultraword.
fn fragment_universe() -> Vec<Formula> {
    let a = atoms(4);
    let mut u = a.clone();
    for i in 0..4 {
        for j in i + 1..4 {
            u.push(Formula::and(a[i].clone(), a[j].clone()));
        }
    }
    u.push(make_ultraword(&a).expect("distinct atoms"));
    u
}

fn operator_axioms() -> Check {
    let universe = fragment_universe();
    let report = verify_operator_axioms(&closure_operator, &universe);
    let failed: Vec<String> = report.outcomes.iter().filter(|o| !o.passed).map(|o| format!("{:?}", o.axiom)).collect();
    ensure(failed.is_empty(), || format!("failed: {}", failed.join(", ")))?;
    // cross-check images against the search oracle on the singletons
    for x in &universe {
        let gamma = FormulaSet::from([x.clone()]);
        let (want, _) = oracle::proof_search(&gamma, 32);
        ensure(closure_operator(&gamma) == want, || format!("closure of {{{x}}} disagrees with search"))?;
    }
    let cases: Vec<String> = report.outcomes.iter().map(|o| format!("{:?} {}", o.axiom, o.cases)).collect();
    Ok(format!("{} sets; {}", 1usize << universe.len(), cases.join(", ")))
}

fn assignments(vars: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out.into_iter().flat_map(|prefix| (0..n).map(move |e| [prefix.clone(), vec![e]].concat())).collect();
    }
    out
}

fn pat_vars(p: &Pat) -> usize {
    match p {
        Pat::Var(i) => i + 1,
        Pat::And(l, r) => pat_vars(l).max(pat_vars(r)),
    }
}

fn lattice_value(l: &OrthoLattice, p: &Pat, env: &[usize]) -> usize {
    match p {
        Pat::Var(i) => env[*i],
        Pat::And(a, b) => l.meet(lattice_value(l, a, env), lattice_value(l, b, env)),
    }
}

fn quantum_compatibility() -> Check {
    let mut lines = Vec::new();
    for (name, l) in [("B4", boolean(2)), ("B8", boolean(3)), ("MO2", mo2())] {
        ensure(validate_orthomodular(&l).is_none(), || format!("{name} is not orthomodular"))?;
        let mut total = 0;
        for (schema, ante, cons) in oracle::schemata() {
            let vars = pat_vars(&ante).max(pat_vars(&cons));
            let envs = assignments(vars, l.len());
            for env in &envs {
                let (a, b) = (lattice_value(&l, &ante, env), lattice_value(&l, &cons, env));
                let i1 = l.join(l.ortho(a), l.meet(a, b));
                ensure(i1 == l.top(), || format!("{name} schema {schema}: i₁ ≠ I at {env:?}"))?;
            }
            let report = axiom_validity(&l, schema).map_err(|e| e.to_string())?;
            ensure(report.valid && report.assignments == envs.len(), || {
                format!("{name} schema {schema}: checker reports valid={} over {} assignments, expected {}", report.valid, report.assignments, envs.len())
            })?;
            total += envs.len();
        }
        lines.push(format!("{name} {total}"));
    }
    Ok(format!("all schemata equal I; assignments {}", lines.join(", ")))
}

fn soundness() -> Check {
    let universe = fragment_universe();
    let a = atoms(4);
    let mut gammas: Vec<FormulaSet> = crate::logic::subsets(&universe);
    let imp = Formula::implies;
    let conj = Formula::and;
    gammas.push(FormulaSet::from([a[0].clone(), imp(a[0].clone(), conj(a[1].clone(), a[2].clone()))]));
    gammas.push(FormulaSet::from([conj(a[0].clone(), a[1].clone()), imp(conj(a[0].clone(), a[1].clone()), conj(a[2].clone(), a[3].clone()))]));
    gammas.push(FormulaSet::from([imp(imp(conj(a[0].clone(), a[1].clone()), a[0].clone()), a[3].clone())]));
    gammas.push(FormulaSet::from([a[1].clone(), imp(a[1].clone(), imp(a[2].clone(), a[3].clone())), a[2].clone()]));
    let mut checked = 0;
    for g in &gammas {
        for x in closure(g) {
            ensure(oracle::tt_entails(g, &x), || format!("{x} derived from {g:?} but not entailed"))?;
            checked += 1;
        }
    }
    let gamma = FormulaSet::from([conj(a[0].clone(), a[1].clone())]);
    let names: Vec<String> = a.iter().map(|f| f.to_string()).collect();
    let report = classical_compare(&gamma, &names);
    ensure(report.sound, || "classical_compare reports unsound".into())?;
    let w = report.strictness_witness.ok_or("no strictness witness")?;
    ensure(oracle::tt_entails(&gamma, &w), || format!("witness {w} is not a classical consequence"))?;
    ensure(!member(&w, &gamma) && oracle::schemata_of(&w).is_empty() && !oracle::proof_search(&gamma, 32).0.contains(&w), || format!("witness {w} is derivable"))?;
    Ok(format!("{} sets, {checked} derived formulas entailed; witness {w}", gammas.len()))
}

fn hr(r: &Rational) -> HyperReal {
    HyperReal::from_rational(r.clone())
}

fn decimal_tol() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(DECIMAL_TOL_EXP))
}

/// Leading term of `x` must be `want·ε^q` to within the decimal tolerance.
fn leading_is(x: &HyperReal, q: i32, want: &Rational, what: &str) -> Result<(), String> {
    let (got_q, c) = x.leading().ok_or_else(|| format!("{what}: zero"))?;
    ensure(got_q == q, || format!("{what}: leading exponent {got_q}, expected {q}"))?;
    ensure(oracle::within(&c.to_rational(), want, &decimal_tol()), || format!("{what}: coefficient off by more than 1e-{DECIMAL_TOL_EXP}"))
}

fn glue_exactness() -> Check {
    let i = |n: i64| Rational::from_integer(n.into());
    let pi = oracle::pi_reference();
    let cases = [
        (neutron_spec(), i(1)),
        (neutron_spec(), Rational::new(1.into(), 2.into())),
        (StepSpec::new(vec![i(0), i(1), i(2), i(3)], vec![i(3), i(1), i(4)]).map_err(|e| e.to_string())?, i(1)),
        (StepSpec::new(vec![i(0), i(1), i(2), i(3)], vec![i(3), i(1), i(4)]).map_err(|e| e.to_string())?, i(3)),
    ];
    let mut jumps = 0;
    let mut grid = 0;
    for (spec, c) in cases {
        let delta = HyperReal::epsilon().scale_rational(&c);
        let g = build_glue(spec.clone(), Delta::Infinitesimal(delta.clone())).map_err(|e| e.to_string())?;
        let d = |m: u32, x: &HyperReal| g.derivative(m, x).map_err(|e| e.to_string());
        for (j, a) in spec.jumps().iter().enumerate() {
            let (r0, r1) = (&spec.values()[j], &spec.values()[j + 1]);
            let dr = r1 - r0;
            let adr = dr.abs();
            let at = hr(a);
            let (left, right) = (at.sub(&delta), at.add(&delta));
            let ev = |x: &HyperReal| g.eval(x).map_err(|e| e.to_string());
            ensure(ev(&at)?.exactly_eq(&hr(&((r0 + r1) / i(2)))), || format!("G({}) is not the exact midpoint", format_rational(a)))?;
            ensure(ev(&left)?.exactly_eq(&hr(r0)) && ev(&right)?.exactly_eq(&hr(r1)), || format!("G(a±δ) not exact at {}", format_rational(a)))?;
            leading_is(&d(1, &at)?, -1, &(&pi * &dr / (i(4) * &c)), "G′(a)")?;
            for side in [&left, &right] {
                ensure(d(1, side)?.is_zero() && d(3, side)?.is_zero(), || "odd derivative nonzero at a±δ".into())?;
                leading_is(&d(2, side)?.abs_value(), -2, &(oracle::rpow(&pi, 2) * &adr / (i(8) * &c * &c)), "|G″(a±δ)|")?;
                leading_is(&d(4, side)?.abs_value(), -4, &(oracle::rpow(&pi, 4) * &adr / (i(32) * oracle::rpow(&c, 4))), "|G⁗(a±δ)|")?;
            }
            jumps += 1;
        }
        let (a0, len) = (spec.start().clone(), spec.end() - spec.start());
        for k in 0..GRID_POINTS {
            let x = &a0 + &len * Rational::new((2 * k + 1).into(), (2 * GRID_POINTS).into());
            let want = oracle::step_value(spec.partition(), spec.values(), &x).ok_or("grid point on a jump")?;
            let got = g.st_restrict(&x).map_err(|e| e.to_string())?;
            ensure(got.is_exactly(&want), || format!("st G({}) ≠ g", format_rational(&x)))?;
            grid += 1;
        }
    }
    Ok(format!("{jumps} jumps with exact closed forms, {grid} grid points st∘G = g"))
}

trait AbsValue {
    fn abs_value(&self) -> HyperReal;
}

impl AbsValue for HyperReal {
    fn abs_value(&self) -> HyperReal {
        if self.signum() < 0 {
            self.scale_rational(&Rational::from_integer((-1).into()))
        } else {
            self.clone()
        }
    }
}

fn derivative_cross_check() -> Check {
    let delta0 = Rational::new(1.into(), 100.into());
    let g = build_glue(neutron_spec(), Delta::Standard(delta0.clone())).map_err(|e| e.to_string())?;
    let h = &delta0 / Rational::from_integer(FD_STEP_FRACTION.into());
    let value = |x: &Rational| -> Result<Rational, String> { Ok(g.eval_rational(x).map_err(|e| e.to_string())?.st().map_err(|e| e.to_string())?.to_rational()) };
    let mut worst = 0f64;
    for k in 0..FD_POINTS {
        let x = Rational::one() + &delta0 * Rational::new((2 * k - (FD_POINTS - 1)).into(), FD_POINTS.into());
        let fd = (value(&(&x + &h))? - value(&(&x - &h))?) / (Rational::from_integer(2.into()) * &h);
        let closed = g.derivative(1, &hr(&x)).map_err(|e| e.to_string())?.st().map_err(|e| e.to_string())?.to_rational();
        ensure(!closed.is_zero(), || format!("G′({}) vanishes", format_rational(&x)))?;
        let rel = ((&fd - &closed) / &closed).abs().to_f64().unwrap_or(f64::INFINITY);
        worst = worst.max(rel);
        ensure(rel < FD_REL_TOL, || format!("relative error {rel:.3e} at x = {}", format_rational(&x)))?;
    }
    Ok(format!("{FD_POINTS} points, worst relative error {worst:.2e}"))
}

fn telescoping() -> Check {
    let (zero, one, two) = (Rational::zero(), Rational::one(), Rational::from_integer(2.into()));
    let delta0 = Rational::new(1.into(), 100.into());
    let g = build_glue(neutron_spec(), Delta::Standard(delta0)).map_err(|e| e.to_string())?;
    let avoid = BTreeSet::from([one.clone()]);
    let f = |x: &Rational| g.eval_rational(x);
    let mut meshes = Vec::new();
    for dt in [Rational::new(1.into(), 10.into()), Rational::new(1.into(), 4.into()), Rational::new(3.into(), 10.into()), Rational::new(1.into(), 7.into())] {
        let p = special_partition(&zero, &two, &dt).map_err(|e| e.to_string())?;
        let sel = avoiding_refinement(&p, &avoid).map_err(|e| e.to_string())?;
        ensure(!sel.contains(&one), || format!("selection for Δt = {} hits 1", format_rational(&dt)))?;
        ensure(sel.first() == Some(&zero) && sel.last() == Some(&two), || "selection misses an endpoint".into())?;
        for points in [&p.points, &sel] {
            let t = telescope(f, points).map_err(|e| e.to_string())?;
            ensure(t.exact() && t.total.exactly_eq(&HyperReal::one()), || format!("Δt = {}: total {} ≠ 1", format_rational(&dt), t.total))?;
            let gap = crate::glue::max_gap(points);
            let bound = increment_bound(&g, &gap).map_err(|e| e.to_string())?.to_rational();
            let want = oracle::pi_reference() * &gap / (Rational::from_integer(4.into()) * Rational::new(1.into(), 100.into()));
            ensure(oracle::within(&bound, &want, &decimal_tol()), || "increment bound disagrees with π/(4δ₀)·gap".into())?;
            let max = t.max_increment.st().map_err(|e| e.to_string())?.to_rational();
            ensure(max <= bound, || format!("max increment {} exceeds bound", format_rational(&max)))?;
        }
        let steps = resolving_process(&neutron_spec(), &sel).map_err(|e| e.to_string())?;
        let sum: Rational = steps.iter().map(|s| s.increment.clone()).sum();
        ensure(sum == one, || format!("resolving increments sum to {}", format_rational(&sum)))?;
        meshes.push(format_rational(&dt));
    }
    Ok(format!("meshes {}: totals exactly 1, selections avoid 1, increments within bound", meshes.join(", ")))
}

fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    Rational::new(rng.gen_range(-max_num..=max_num).into(), rng.gen_range(1..=max_den).into())
}

fn approximation(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..APPROX_CASES {
        let r = random_rational(rng, 1_000_000_000_000, 1_000_000_000);
        let m = BigInt::from(rng.gen_range(1..=APPROX_MAX_M));
        let a = approximate_shadow(&r, &m);
        // 0 <= r − f/m < 1/m  ⇔  0 <= p·m − f·q < q
        let (p, q) = (r.numer(), r.denom());
        let slack = p * &m - &a.f * q;
        ensure(!slack.is_negative() && &slack < q, || format!("r = {}, m = {m}: f = {} out of range", format_rational(&r), a.f))?;
        ensure(a.f == (p * &m).div_floor(q), || format!("r = {}, m = {m}: f is not ⌊rm⌋", format_rational(&r)))?;
        ensure(a.certified() && a.value() == Rational::new(a.f.clone(), m.clone()), || "certificate disagrees".into())?;
    }
    for _ in 0..HYPERNAT_CASES {
        let r = random_rational(rng, 1_000_000, 10_000).abs();
        let lam = hypernat_for(&r).map_err(|e| e.to_string())?;
        let s = lam.value().mul(&HyperReal::epsilon()).map_err(|e| e.to_string())?.st().map_err(|e| e.to_string())?;
        ensure(s.is_exactly(&r), || format!("st(λε) ≠ {}", format_rational(&r)))?;
    }
    Ok(format!("{APPROX_CASES} shadows certified, {HYPERNAT_CASES} hypernaturals recover r"))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ToyEntity {
    chars: BTreeMap<usize, u32>,
    naming: BTreeSet<u64>,
}

fn subparticle_round_trip(rng: &mut ChaCha8Rng) -> Check {
    const F: usize = 4;
    let cfg = SubparticleConfig::with_f(F);
    let dims = cfg.coord_for(F) + 1;
    let primes = oracle::first_primes(F + 40);
    let (j_primes, k_primes) = primes.split_at(F);
    let mut seen: BTreeMap<BigUint, ToyEntity> = BTreeMap::new();
    for _ in 0..ENTITY_CASES {
        let mut idx: Vec<usize> = (1..=F).collect();
        idx.shuffle(rng);
        let nchars = rng.gen_range(1..=F);
        let chars: BTreeMap<usize, u32> = idx[..nchars].iter().map(|&i| (i, rng.gen_range(1..=6))).collect();
        let nconst = rng.gen_range(0..=6);
        let naming: BTreeSet<u64> = k_primes.choose_multiple(rng, nconst).copied().collect();
        let entity = ToyEntity { chars: chars.clone(), naming: naming.clone() };

        let mut parts = Vec::new();
        for (n, (&i, &e)) in chars.iter().enumerate() {
            let names = if n == 0 { naming.iter().copied().collect() } else { Vec::new() };
            parts.push(form_intermediate(i, &Lambda::Finite(e.into()), &Naming::Primes(names), i % 2 == 0, dims, &cfg).map_err(|e| e.to_string())?);
        }
        let whole = combine(&parts).map_err(|e| e.to_string())?;
        let value = whole.a1.value().ok_or("toy identifier has no value")?;
        let expected = chars.iter().map(|(&i, &e)| BigUint::from(j_primes[i - 1]).pow(e)).chain(naming.iter().map(|&p| BigUint::from(p))).product::<BigUint>();
        ensure(value == expected, || format!("identifier {value} ≠ product {expected}"))?;

        let d = decode(&value, &cfg).map_err(|e| e.to_string())?;
        let got_chars: BTreeMap<usize, u32> = d.characteristics.iter().map(|c| (c.i, c.exponent.as_natural().and_then(|n| n.to_u32()).unwrap_or(0))).collect();
        let got_naming: BTreeSet<u64> = d.constituents.keys().copied().collect();
        ensure(got_chars == chars && got_naming == naming && d.constituents.values().all(|&k| k == 1), || format!("decode({value}) lost information"))?;

        if let Some(prev) = seen.insert(value.clone(), entity.clone()) {
            ensure(prev == entity, || format!("distinct entities share identifier {value}"))?;
        }
    }
    let worked = form_intermediate(1, &Lambda::Finite(4), &Naming::Primes(vec![5, 7, 11, 13]), false, 4, &SubparticleConfig::default()).map_err(|e| e.to_string())?;
    ensure(worked.a1.value() == Some(BigUint::from(80080u32)), || "worked example is not 80080".into())?;
    let d = decode(&BigUint::from(80080u32), &SubparticleConfig::default()).map_err(|e| e.to_string())?;
    ensure(
        d.characteristics.len() == 1 && d.characteristics[0].i == 1 && d.characteristics[0].exponent.exactly_eq(&HyperReal::from_int(4)) && d.constituents.keys().copied().eq([5, 7, 11, 13]),
        || "80080 does not decode to 2⁴·5·7·11·13".into(),
    )?;
    Ok(format!("{ENTITY_CASES} entities round-trip, {} distinct identifiers, 80080 reproduced", seen.len()))
}

fn random_series(rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> HyperReal {
    let terms: Vec<(i32, Coeff)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut c = random_rational(rng, 9, 5);
            if c.is_zero() {
                c = Rational::one();
            }
            (rng.gen_range(lo..=hi), Coeff::Exact(c))
        })
        .collect();
    HyperReal::from_terms(terms)
}

/// Nonzero standard part and no negative exponents.
fn random_unit(rng: &mut ChaCha8Rng) -> HyperReal {
    let mut c = random_rational(rng, 9, 5);
    if c.is_zero() {
        c = Rational::from_integer(2.into());
    }
    hr(&c).add(&random_series(rng, 1, 2))
}

fn kernel_laws(rng: &mut ChaCha8Rng) -> Check {
    let err = |e: crate::hyper::HyperError| e.to_string();
    let same = |a: &HyperReal, b: &HyperReal, law: &str| ensure(a.exactly_eq(b), || format!("{law}: {a} ≠ {b}"));
    for _ in 0..KERNEL_CASES {
        let (x, y, z) = (random_series(rng, -2, 2), random_series(rng, -2, 2), random_series(rng, -2, 2));
        same(&x.add(&y).add(&z), &x.add(&y.add(&z)), "additive associativity")?;
        same(&x.add(&y), &y.add(&x), "additive commutativity")?;
        same(&x.mul(&y).map_err(err)?.mul(&z).map_err(err)?, &x.mul(&y.mul(&z).map_err(err)?).map_err(err)?, "multiplicative associativity")?;
        same(&x.mul(&y).map_err(err)?, &y.mul(&x).map_err(err)?, "multiplicative commutativity")?;
        same(&x.mul(&y.add(&z)).map_err(err)?, &x.mul(&y).map_err(err)?.add(&x.mul(&z).map_err(err)?), "distributivity")?;
        ensure(x.sub(&x).is_zero() && x.add(&HyperReal::zero()).exactly_eq(&x), || "additive identity/inverse".into())?;
        let u = random_unit(rng);
        same(&u.mul(&HyperReal::one().div(&u).map_err(err)?).map_err(err)?, &HyperReal::one(), "multiplicative inverse")?;
        same(&x.mul(&u).map_err(err)?.div(&u).map_err(err)?, &x, "division undoes multiplication")?;
    }
    for _ in 0..KERNEL_CASES {
        let (x, y, z) = (random_series(rng, -2, 2), random_series(rng, -2, 2), random_series(rng, -2, 2));
        let xy = x.compare(&y);
        ensure(xy == y.compare(&x).reverse(), || "comparison is not antisymmetric".into())?;
        ensure(xy == x.sub(&y).signum().cmp(&0), || "order disagrees with sign of difference".into())?;
        ensure(x.add(&z).compare(&y.add(&z)) == xy, || "order not translation invariant".into())?;
        let pos = if z.signum() < 0 { z.abs_value() } else if z.is_zero() { HyperReal::one() } else { z.clone() };
        ensure(x.mul(&pos).map_err(err)?.compare(&y.mul(&pos).map_err(err)?) == xy, || "order not preserved by positive scaling".into())?;
        let q = random_rational(rng, 1000, 1000).abs() + Rational::new(1.into(), 1000.into());
        ensure(HyperReal::zero().compare(&HyperReal::epsilon()).is_lt() && HyperReal::epsilon().compare(&hr(&q)).is_lt(), || format!("ε not below {}", format_rational(&q)))?;
        let inf = random_series(rng, 1, 3);
        ensure(inf.is_infinitesimal() && inf.abs_value().compare(&hr(&q)).is_lt(), || "infinitesimal exceeds a standard".into())?;
    }
    for _ in 0..KERNEL_CASES {
        let (x, y) = (random_series(rng, 0, 3), random_series(rng, 0, 3));
        let st = |h: &HyperReal| h.st().map(|c| c.to_rational()).map_err(err);
        ensure(st(&x.add(&y))? == st(&x)? + st(&y)?, || "st is not additive".into())?;
        ensure(st(&x.mul(&y).map_err(err)?)? == st(&x)? * st(&y)?, || "st is not multiplicative".into())?;
        let near = x.add(&random_series(rng, 1, 3));
        ensure(x.monad_eq(&near) && near.monad_eq(&x) && x.monad_eq(&x), || "monad relation not reflexive/symmetric".into())?;
        ensure(st(&near)? == st(&x)?, || "st differs across a monad".into())?;
        let far = x.add(&HyperReal::one());
        ensure(!x.monad_eq(&far), || "x and x + 1 share a monad".into())?;
        let unlimited = x.add(&HyperReal::omega().scale_rational(&(random_rational(rng, 9, 5).abs() + Rational::one())));
        ensure(unlimited.classify() == Class::Unlimited && unlimited.st().is_err(), || format!("{unlimited} should be unlimited"))?;
    }
    // hypersums with constant summand ε
    let m0 = Rational::new(7.into(), 3.into());
    let lam = hypernat_for(&m0).map_err(err)?;
    let s = hypersum_const(&lam, &HyperReal::epsilon()).map_err(err)?;
    ensure(s.st().map_err(err)?.is_exactly(&m0), || "Σ_{λ} ε does not have standard part m₀".into())?;
    let big = NatLike::new(HyperReal::omega().powi(2).map_err(err)?).map_err(err)?;
    let s = hypersum_const(&big, &HyperReal::epsilon()).map_err(err)?;
    ensure(s.classify() == Class::Unlimited && s.exactly_eq(&HyperReal::omega()), || format!("Σ_{{Ω²}} ε = {s}, expected Ω"))?;
    Ok(format!("{KERNEL_CASES} cases each for field, order, st laws; hypersums reproduce m₀ and Ω"))
}

fn kinetic_energy() -> Check {
    let err = |e: crate::subparticle::SubparticleError| e.to_string();
    let (eps, omega) = (HyperReal::epsilon(), HyperReal::omega());
    let eps4 = eps.powi(4).map_err(|e| e.to_string())?;
    let ke = ultrafast_ke(&eps4, &omega).map_err(err)?;
    let want = eps.powi(2).map_err(|e| e.to_string())?.scale_rational(&Rational::new(1.into(), 2.into()));
    ensure(ke.exactly_eq(&want) && ke.classify() == Class::Infinitesimal, || format!("½ε⁴Ω² = {ke}"))?;
    let planck = Rational::new(662_607_015.into(), BigInt::from(10u32).pow(42));
    for h in [Rational::one(), Rational::new(3.into(), 7.into()), planck] {
        let m = eps.powi(2).map_err(|e| e.to_string())?.scale_rational(&(Rational::from_integer(2.into()) * &h));
        let ke = ultrafast_ke(&m, &omega).map_err(err)?;
        ensure(ke.exactly_eq(&hr(&h)), || format!("m = 2hε², v = Ω gives {ke}, expected {}", format_rational(&h)))?;
    }
    Ok("½ε⁴Ω² = ε²/2 infinitesimal; m = 2hε², v = Ω gives h exactly".into())
}

fn continuity() -> Check {
    let a = atoms(3);
    let report = continuity_shadow(&closure_operator, &a);
    ensure(report.continuous, || format!("closure fails on {:?}", report.witness))?;
    let mixed = vec![a[0].clone(), a[1].clone(), Formula::and(a[0].clone(), a[1].clone())];
    let mixed_report = continuity_shadow(&closure_operator, &mixed);
    ensure(mixed_report.continuous, || format!("closure fails on {:?}", mixed_report.witness))?;

    // C(∅) = {x}, C(anything else) = ∅
    let bad = OperatorTable::from_fn(&a, |s: &BTreeSet<Formula>| if s.is_empty() { BTreeSet::from([a[0].clone()]) } else { BTreeSet::new() });
    let r = continuity_shadow(&bad, &a);
    let (b, big) = r.witness.clone().ok_or("non-monotone table passed")?;
    let (cb, cbig) = (&bad.entries[&b], &bad.entries[&big]);
    ensure(!r.continuous && b.is_subset(&big) && !cb.is_subset(cbig), || "reported witness does not violate monotonicity".into())?;
    Ok(format!("closure monotone on {} + {} pairs; table witness B = {}, A = {}", report.pairs_checked, mixed_report.pairs_checked, show(&b), show(&big)))
}

fn show(set: &BTreeSet<Formula>) -> String {
    let items: Vec<String> = set.iter().map(Formula::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn trace_ordering(rng: &mut ChaCha8Rng) -> Check {
    let pool = atoms(20);
    let mut total_steps = 0;
    for _ in 0..ULTRAWORD_CASES {
        let n = rng.gen_range(2..=8);
        let chosen: Vec<Formula> = pool.choose_multiple(rng, n).cloned().collect();
        let w = make_ultraword(&chosen).map_err(|e| e.to_string())?;
        let trace = unfold(&w).map_err(|e| e.to_string())?;
        oracle::check_trace(&trace, &FormulaSet::from([w.clone()]))?;
        let concluded: Vec<(usize, &Formula)> = trace
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.formula.is_atom() && !matches!(s.justification, crate::logic::Justification::Hypothesis))
            .map(|(i, s)| (i, &s.formula))
            .collect();
        let order: Vec<&Formula> = concluded.iter().map(|(_, f)| *f).collect();
        ensure(order == chosen.iter().collect::<Vec<_>>(), || format!("{w}: atoms concluded out of order"))?;
        ensure(concluded.windows(2).all(|p| p[0].0 < p[1].0), || format!("{w}: step numbers not increasing"))?;
        total_steps += trace.steps.len();
    }
    Ok(format!("{ULTRAWORD_CASES} ultrawords, {total_steps} steps verified"))
}
