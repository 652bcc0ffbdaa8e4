//! Ultraword witnesses: left-ordered conjunctions whose closure contains a
//! whole paradigm, their proof traces, and the closure characterization.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::formula::{Formula, FormulaSet};
use super::system::{closure, is_axiom};
use super::LogicError;

/// `((x0 ∧ x1) ∧ x2) ∧ …` over distinct atoms.
pub fn make_ultraword(atoms: &[Formula]) -> Result<Formula, LogicError> {
    if atoms.len() < 2 {
        return Err(LogicError::TooFewAtoms(atoms.len()));
    }
    let mut seen = BTreeSet::new();
    for a in atoms {
        if !seen.insert(a) {
            return Err(LogicError::DuplicateAtom(a.to_string()));
        }
    }
    Ok(Formula::left_conjunction(atoms.iter().cloned()).expect("nonempty"))
}

/// Left-ordered conjunction of previously built witnesses. Repetition is
/// allowed.
pub fn ultimate_witness(witnesses: &[Formula]) -> Result<Formula, LogicError> {
    if witnesses.len() < 2 {
        return Err(LogicError::TooFewAtoms(witnesses.len()));
    }
    Ok(Formula::left_conjunction(witnesses.iter().cloned()).expect("nonempty"))
}

/// The atoms of `w`, in order, when `w` is a left-ordered conjunction of at
/// least two distinct atoms.
pub fn ultraword_atoms(w: &Formula) -> Option<Vec<Formula>> {
    let mut rev = Vec::new();
    let mut cur = w;
    loop {
        match cur {
            Formula::And(l, r) => {
                if !r.is_atom() {
                    return None;
                }
                rev.push(r.as_ref().clone());
                cur = l;
            }
            Formula::Atom(_) => {
                rev.push(cur.clone());
                break;
            }
            Formula::Implies(..) => return None,
        }
    }
    if rev.len() < 2 {
        return None;
    }
    rev.reverse();
    let distinct: BTreeSet<&Formula> = rev.iter().collect();
    (distinct.len() == rev.len()).then_some(rev)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Justification {
    Hypothesis,
    Axiom { schema: u8 },
    /// `minor` holds `X`, `major` holds `X → this`.
    ModusPonens { minor: usize, major: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<ProofStep>,
}

impl ProofTrace {
    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(ProofStep { formula, justification });
        self.steps.len() - 1
    }

    /// Step numbers at which atoms are concluded, in order.
    pub fn atom_steps(&self) -> Vec<(usize, &Formula)> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.formula.is_atom() && s.justification != Justification::Hypothesis)
            .map(|(i, s)| (i, &s.formula))
            .collect()
    }
}

/// Proof of every atom of `w` from `{w}`, concluding the atoms in their
/// left-to-right order via repeated schema 1, MP, schema 2, MP.
pub fn unfold(w: &Formula) -> Result<ProofTrace, LogicError> {
    let atoms = ultraword_atoms(w).ok_or_else(|| LogicError::NotAnUltraword(w.to_string()))?;
    let mut trace = ProofTrace::default();
    let root = trace.push(w.clone(), Justification::Hypothesis);

    // Descend the left spine: prefixes[k] is the step holding x0 ∧ … ∧ x(k+1).
    let n = atoms.len();
    let mut prefix_step = vec![0usize; n];
    prefix_step[n - 1] = root;
    let mut current = w.clone();
    for k in (1..n - 1).rev() {
        let Formula::And(left, _) = &current else { unreachable!() };
        let left = left.as_ref().clone();
        let ax = trace.push(Formula::implies(current.clone(), left.clone()), Justification::Axiom { schema: 1 });
        let mp = trace.push(left.clone(), Justification::ModusPonens { minor: prefix_step[k + 1], major: ax });
        prefix_step[k] = mp;
        current = left;
    }
    // current = x0 ∧ x1
    let ax = trace.push(Formula::implies(current.clone(), atoms[0].clone()), Justification::Axiom { schema: 1 });
    trace.push(atoms[0].clone(), Justification::ModusPonens { minor: prefix_step[1], major: ax });
    for &step in &prefix_step[1..] {
        let holder = trace.steps[step].formula.clone();
        let Formula::And(_, right) = &holder else { unreachable!() };
        let right = right.as_ref().clone();
        let ax = trace.push(Formula::implies(holder.clone(), right.clone()), Justification::Axiom { schema: 2 });
        trace.push(right, Justification::ModusPonens { minor: step, major: ax });
    }
    Ok(trace)
}

/// Partition of the derived set of `{w}` into atoms `d′` and conjunctions `Q`;
/// axiom instances `A` are recognized by [`is_axiom`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characterization {
    pub ultraword: Formula,
    pub q_set: FormulaSet,
    pub d_prime: FormulaSet,
}

impl Characterization {
    /// `A`, `Q`, `d′` pairwise disjoint: nothing in `Q` or `d′` is an axiom
    /// instance and the two sets share nothing.
    pub fn disjoint(&self) -> bool {
        self.q_set.iter().chain(self.d_prime.iter()).all(|x| is_axiom(x).is_none())
            && self.q_set.is_disjoint(&self.d_prime)
    }

    /// Every `Q` member is a conjunction of at least two atoms, each atom of
    /// `Q` lies in `d′`, every member of `d′` is used, and `w ∈ Q`.
    pub fn well_formed(&self) -> bool {
        let q_atoms: FormulaSet = self
            .q_set
            .iter()
            .flat_map(|q| q.atom_list().into_iter().map(Formula::atom).collect::<Vec<_>>())
            .collect();
        self.q_set.iter().all(|q| q.conjuncts().is_some_and(|c| c.len() >= 2))
            && self.d_prime.iter().all(Formula::is_atom)
            && q_atoms == self.d_prime
            && self.q_set.contains(&self.ultraword)
    }
}

pub fn characterize(w: &Formula) -> Result<Characterization, LogicError> {
    if ultraword_atoms(w).is_none() {
        return Err(LogicError::NotAnUltraword(w.to_string()));
    }
    let derived = closure(&FormulaSet::from([w.clone()]));
    let (d_prime, q_set): (FormulaSet, FormulaSet) = derived.into_iter().partition(Formula::is_atom);
    let c = Characterization { ultraword: w.clone(), q_set, d_prime };
    debug_assert!(c.disjoint() && c.well_formed());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn atoms(names: &[&str]) -> Vec<Formula> {
        names.iter().map(|n| Formula::atom(*n)).collect()
    }

    #[test]
    fn ultraword_construction() {
        assert_eq!(make_ultraword(&atoms(&["F0", "F1"])).unwrap(), f("F0 & F1"));
        let w = make_ultraword(&atoms(&["F0", "F1", "F2"])).unwrap();
        assert_eq!(w, f("(F0 & F1) & F2"));
        let c = closure(&FormulaSet::from([w]));
        for a in atoms(&["F0", "F1", "F2"]) {
            assert!(c.contains(&a));
        }
        assert_eq!(make_ultraword(&atoms(&["F0", "F0"])), Err(LogicError::DuplicateAtom("F0".into())));
        assert_eq!(make_ultraword(&atoms(&["F0"])), Err(LogicError::TooFewAtoms(1)));
    }

    #[test]
    fn ultimate_witness_keeps_everything() {
        let w1 = f("F0 & F1");
        let w2 = f("F2 & F3");
        let u = ultimate_witness(&[w1.clone(), w2.clone()]).unwrap();
        assert_eq!(u, Formula::and(w1.clone(), w2.clone()));
        let c = closure(&FormulaSet::from([u]));
        assert!(c.contains(&w1) && c.contains(&w2));
        for a in atoms(&["F0", "F1", "F2", "F3"]) {
            assert!(c.contains(&a));
        }
        assert!(ultimate_witness(&[w1.clone(), w1]).is_ok());
    }

    #[test]
    fn unfold_two_atoms_matches_pattern() {
        let t = unfold(&f("F0 & F1")).unwrap();
        let rules: Vec<_> = t.steps.iter().map(|s| s.justification).collect();
        assert_eq!(
            rules,
            vec![
                Justification::Hypothesis,
                Justification::Axiom { schema: 1 },
                Justification::ModusPonens { minor: 0, major: 1 },
                Justification::Axiom { schema: 2 },
                Justification::ModusPonens { minor: 0, major: 3 },
            ]
        );
        assert_eq!(t.steps[2].formula, f("F0"));
        assert_eq!(t.steps[4].formula, f("F1"));
    }

    #[test]
    fn unfold_emits_atoms_in_order() {
        let t = unfold(&f("((F0 & F1) & F2) & F3")).unwrap();
        let order: Vec<String> = t.atom_steps().iter().map(|(_, a)| a.to_string()).collect();
        assert_eq!(order, vec!["F0", "F1", "F2", "F3"]);
        assert!(matches!(unfold(&f("F0")), Err(LogicError::NotAnUltraword(_))));
        assert!(matches!(unfold(&f("F0 & (F1 & F2)")), Err(LogicError::NotAnUltraword(_))));
    }

    #[test]
    fn characterization_examples() {
        let c = characterize(&f("(F0 & F1) & F2")).unwrap();
        assert_eq!(c.d_prime, ["F0", "F1", "F2"].iter().map(|s| f(s)).collect());
        assert_eq!(c.q_set, ["(F0 & F1) & F2", "F0 & (F1 & F2)", "F0 & F1", "F1 & F2"].iter().map(|s| f(s)).collect());
        assert!(c.disjoint() && c.well_formed());
        let c = characterize(&f("F0 & F1")).unwrap();
        assert_eq!(c.q_set, FormulaSet::from([f("F0 & F1")]));
        assert!(c.q_set.iter().all(|q| !q.is_implication()));
    }
}
