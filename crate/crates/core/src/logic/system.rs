//! The conjunction-only Hilbert system: four axiom schemata plus modus ponens.

use std::collections::VecDeque;

use super::formula::{Formula, FormulaSet};

/// Which schema, if any, `f` instantiates.
///
/// 1. `(A ∧ B) → A`
/// 2. `(A ∧ B) → B`
/// 3. `A ∧ (B ∧ C) → (A ∧ B) ∧ C`
/// 4. `(A ∧ B) ∧ C → A ∧ (B ∧ C)`
pub fn is_axiom(f: &Formula) -> Option<u8> {
    let Formula::Implies(ante, cons) = f else { return None };
    let Formula::And(a, b) = ante.as_ref() else { return None };
    if cons.as_ref() == a.as_ref() {
        return Some(1);
    }
    if cons.as_ref() == b.as_ref() {
        return Some(2);
    }
    if let (Formula::And(b1, c1), Formula::And(ab, c2)) = (b.as_ref(), cons.as_ref()) {
        if let Formula::And(a2, b2) = ab.as_ref() {
            if a == a2 && b1 == b2 && c1 == c2 {
                return Some(3);
            }
        }
    }
    if let (Formula::And(a1, b1), Formula::And(a2, bc)) = (a.as_ref(), cons.as_ref()) {
        if let Formula::And(b2, c2) = bc.as_ref() {
            if a1 == a2 && b1 == b2 && b == c2 {
                return Some(4);
            }
        }
    }
    None
}

/// Conclusions obtainable from `x` by modus ponens against an axiom instance
/// whose antecedent is `x`. Each result carries the schema used.
pub fn axiom_consequences(x: &Formula) -> Vec<(u8, Formula)> {
    let mut out = Vec::new();
    if let Formula::And(a, b) = x {
        out.push((1, a.as_ref().clone()));
        out.push((2, b.as_ref().clone()));
        if let Formula::And(b1, c1) = b.as_ref() {
            out.push((3, Formula::and(Formula::and(a.as_ref().clone(), b1.as_ref().clone()), c1.as_ref().clone())));
        }
        if let Formula::And(a1, b1) = a.as_ref() {
            out.push((4, Formula::and(a1.as_ref().clone(), Formula::and(b1.as_ref().clone(), b.as_ref().clone()))));
        }
    }
    out
}

/// Least superset of `gamma` closed under the derivable rules. Axiom
/// instances that are not in `gamma` are not listed.
///
/// Every new formula is either a conjunct, a root reassociation of a
/// conjunction already present, or the consequent of an implication already
/// present, so the set is bounded by the subformula/reassociation universe
/// of `gamma` and the loop terminates.
pub fn closure(gamma: &FormulaSet) -> FormulaSet {
    let mut set = gamma.clone();
    let mut queue: VecDeque<Formula> = gamma.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        let mut fresh = Vec::new();
        for (_, y) in axiom_consequences(&x) {
            fresh.push(y);
        }
        // x as the major premise x = (p → q)
        if let Formula::Implies(p, q) = &x {
            if set.contains(p.as_ref()) || is_axiom(p).is_some() {
                fresh.push(q.as_ref().clone());
            }
        }
        // x as the minor premise of some implication already derived
        for imp in set.iter() {
            if let Formula::Implies(p, q) = imp {
                if p.as_ref() == &x {
                    fresh.push(q.as_ref().clone());
                }
            }
        }
        for y in fresh {
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Membership in the (infinite) theorem set `S(Γ)`: the closure together
/// with every axiom instance.
pub fn member(x: &Formula, gamma: &FormulaSet) -> bool {
    is_axiom(x).is_some() || closure(gamma).contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn recognizes_each_schema() {
        assert_eq!(is_axiom(&f("(a & b) -> a")), Some(1));
        assert_eq!(is_axiom(&f("(a & b) -> b")), Some(2));
        assert_eq!(is_axiom(&f("a & (b & c) -> (a & b) & c")), Some(3));
        assert_eq!(is_axiom(&f("((a & b) & c) -> (a & (b & c))")), Some(4));
        assert_eq!(is_axiom(&f("a -> a")), None);
        assert_eq!(is_axiom(&f("a & b")), None);
        assert_eq!(is_axiom(&f("a & b -> b & a")), None);
    }

    #[test]
    fn schemata_match_arbitrary_subformulas() {
        assert_eq!(is_axiom(&f("((x -> y) & (z & w)) -> (x -> y)")), Some(1));
        assert_eq!(is_axiom(&f("(p -> q) & ((r & s) & t) -> ((p -> q) & (r & s)) & t")), Some(3));
    }

    #[test]
    fn closure_of_three_atom_ultraword() {
        let c = closure(&set(&["(F0 & F1) & F2"]));
        let expected = set(&["(F0 & F1) & F2", "F0 & (F1 & F2)", "F0 & F1", "F1 & F2", "F0", "F1", "F2"]);
        assert_eq!(c, expected);
        assert!(!c.contains(&f("F0 & F2")));
    }

    #[test]
    fn single_atom_is_a_fixed_point() {
        assert_eq!(closure(&set(&["F0"])), set(&["F0"]));
    }

    #[test]
    fn modus_ponens_between_hypotheses() {
        let c = closure(&set(&["a", "a -> b & c"]));
        assert!(c.contains(&f("b")) && c.contains(&f("c")));
        let c = closure(&set(&["((a & b) -> a) -> z"]));
        assert!(c.contains(&f("z")));
    }

    #[test]
    fn membership_examples() {
        let gamma = set(&["(F0 & F1) & F2"]);
        assert!(member(&f("(a & b) -> a"), &FormulaSet::new()));
        assert!(member(&f("F1"), &gamma));
        assert!(!member(&f("F3"), &gamma));
    }
}
