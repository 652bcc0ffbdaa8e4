//! Reference computations for the acceptance suite. Nothing here calls the
//! code it is used to check: schemata are matched by pattern unification,
//! derivability by level-saturated search, entailment by truth tables.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::logic::{Formula, FormulaSet, Justification, ProofTrace};
use crate::rational::Rational;

/// Schema template over metavariables `0 = A`, `1 = B`, `2 = C`.
#[derive(Debug, Clone)]
pub enum Pat {
    Var(usize),
    And(Box<Pat>, Box<Pat>),
}

fn v(i: usize) -> Pat {
    Pat::Var(i)
}

fn and(l: Pat, r: Pat) -> Pat {
    Pat::And(Box::new(l), Box::new(r))
}

/// `(antecedent, consequent)` for each schema, numbered from 1.
pub fn schemata() -> Vec<(u8, Pat, Pat)> {
    vec![
        (1, and(v(0), v(1)), v(0)),
        (2, and(v(0), v(1)), v(1)),
        (3, and(v(0), and(v(1), v(2))), and(and(v(0), v(1)), v(2))),
        (4, and(and(v(0), v(1)), v(2)), and(v(0), and(v(1), v(2)))),
    ]
}

pub type Binding = [Option<Formula>; 3];

pub fn unify(p: &Pat, f: &Formula, b: &mut Binding) -> bool {
    match p {
        Pat::Var(i) => match &b[*i] {
            Some(bound) => bound == f,
            None => {
                b[*i] = Some(f.clone());
                true
            }
        },
        Pat::And(pl, pr) => match f {
            Formula::And(fl, fr) => unify(pl, fl, b) && unify(pr, fr, b),
            _ => false,
        },
    }
}

pub fn substitute(p: &Pat, b: &Binding) -> Option<Formula> {
    match p {
        Pat::Var(i) => b[*i].clone(),
        Pat::And(l, r) => Some(Formula::and(substitute(l, b)?, substitute(r, b)?)),
    }
}

/// Schemata that `f` instantiates.
pub fn schemata_of(f: &Formula) -> Vec<u8> {
    let Formula::Implies(ante, cons) = f else { return Vec::new() };
    schemata()
        .into_iter()
        .filter(|(_, pa, pc)| {
            let mut b: Binding = Default::default();
            unify(pa, ante, &mut b) && unify(pc, cons, &mut b)
        })
        .map(|(s, _, _)| s)
        .collect()
}

/// Level-saturated forward search: each round adds every formula obtainable
/// by one modus ponens step whose premises are hypotheses, earlier
/// conclusions or axiom instances. Returns the derived set and whether it
/// stopped growing within `depth` rounds.
pub fn proof_search(gamma: &FormulaSet, depth: usize) -> (FormulaSet, bool) {
    let mut derived = gamma.clone();
    for _ in 0..depth {
        let mut next = derived.clone();
        for x in &derived {
            for (_, pa, pc) in schemata() {
                let mut b: Binding = Default::default();
                if unify(&pa, x, &mut b) {
                    if let Some(y) = substitute(&pc, &b) {
                        next.insert(y);
                    }
                }
            }
            if let Formula::Implies(p, q) = x {
                if derived.contains(p.as_ref()) || !schemata_of(p).is_empty() {
                    next.insert(q.as_ref().clone());
                }
            }
        }
        if next.len() == derived.len() {
            return (derived, true);
        }
        derived = next;
    }
    (derived, false)
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::And(l, r) | Formula::Implies(l, r) => {
            collect_atoms(l, out);
            collect_atoms(r, out);
        }
    }
}

fn truth(f: &Formula, row: u32, index: &BTreeMap<String, usize>) -> bool {
    match f {
        Formula::Atom(a) => row & (1 << index[a]) != 0,
        Formula::And(l, r) => truth(l, row, index) && truth(r, row, index),
        Formula::Implies(l, r) => !truth(l, row, index) || truth(r, row, index),
    }
}

/// `Γ ⊨ x` by enumerating every row over the atoms present.
pub fn tt_entails(gamma: &FormulaSet, x: &Formula) -> bool {
    let mut atoms = BTreeSet::new();
    for g in gamma.iter().chain(std::iter::once(x)) {
        collect_atoms(g, &mut atoms);
    }
    let index: BTreeMap<String, usize> = atoms.into_iter().enumerate().map(|(i, a)| (a, i)).collect();
    (0u32..(1 << index.len())).all(|row| !gamma.iter().all(|g| truth(g, row, &index)) || truth(x, row, &index))
}

/// Checks that every step of `trace` is a hypothesis from `hyps`, an axiom
/// instance, or modus ponens citing two strictly earlier steps.
pub fn check_trace(trace: &ProofTrace, hyps: &FormulaSet) -> Result<(), String> {
    for (i, step) in trace.steps.iter().enumerate() {
        match step.justification {
            Justification::Hypothesis => {
                if !hyps.contains(&step.formula) {
                    return Err(format!("step {i}: {} is not a hypothesis", step.formula));
                }
            }
            Justification::Axiom { schema } => {
                if !schemata_of(&step.formula).contains(&schema) {
                    return Err(format!("step {i}: {} is not an instance of schema {schema}", step.formula));
                }
            }
            Justification::ModusPonens { minor, major } => {
                if minor >= i || major >= i {
                    return Err(format!("step {i}: cites a later step"));
                }
                let want = Formula::implies(trace.steps[minor].formula.clone(), step.formula.clone());
                if trace.steps[major].formula != want {
                    return Err(format!("step {i}: major premise is not {want}"));
                }
            }
        }
    }
    Ok(())
}

/// 60 digits of π after the point.
const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944";

pub fn pi_reference() -> Rational {
    let num = BigInt::parse_bytes(PI_DIGITS.as_bytes(), 10).expect("digits");
    Rational::new(num, BigInt::from(10u32).pow(60))
}

/// `a^n` for rationals.
pub fn rpow(a: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, _| acc * a)
}

pub fn step_value(partition: &[Rational], values: &[Rational], x: &Rational) -> Option<Rational> {
    (0..values.len()).find(|&j| &partition[j] < x && x < &partition[j + 1]).map(|j| values[j].clone())
}

/// Primes by trial division against the primes found so far.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut ps: Vec<u64> = Vec::with_capacity(count);
    let mut n = 2u64;
    while ps.len() < count {
        if ps.iter().take_while(|&&p| p * p <= n).all(|&p| !n.is_multiple_of(p)) {
            ps.push(n);
        }
        n += 1;
    }
    ps
}

/// `|a − b|` below `tol`, all exact.
pub fn within(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    let d = a - b;
    let d = if d < Rational::zero() { -d } else { d };
    &d < tol
}
