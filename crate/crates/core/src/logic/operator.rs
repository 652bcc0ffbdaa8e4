//! Checks of the consequence-operator axioms, the monotone-image
//! (continuity) shadow, and comparison with classical consequence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use super::formula::{Formula, FormulaSet};
use super::system::{closure, is_axiom, member};

/// A map on finite sets. `None` means the operator is undefined there
/// (a table missing an entry).
pub trait SetOperator<T: Ord + Clone> {
    fn apply(&self, set: &BTreeSet<T>) -> Option<BTreeSet<T>>;
}

impl<T: Ord + Clone, F: Fn(&BTreeSet<T>) -> BTreeSet<T>> SetOperator<T> for F {
    fn apply(&self, set: &BTreeSet<T>) -> Option<BTreeSet<T>> {
        Some(self(set))
    }
}

/// Explicit operator table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTable<T: Ord> {
    pub entries: BTreeMap<BTreeSet<T>, BTreeSet<T>>,
}

impl<T: Ord + Clone> OperatorTable<T> {
    pub fn from_fn(universe: &[T], op: impl Fn(&BTreeSet<T>) -> BTreeSet<T>) -> OperatorTable<T> {
        OperatorTable { entries: subsets(universe).into_iter().map(|s| (s.clone(), op(&s))).collect() }
    }
}

impl<T: Ord + Clone> SetOperator<T> for OperatorTable<T> {
    fn apply(&self, set: &BTreeSet<T>) -> Option<BTreeSet<T>> {
        self.entries.get(set).cloned()
    }
}

/// The closure operator of the deductive system.
pub fn closure_operator(gamma: &FormulaSet) -> FormulaSet {
    closure(gamma)
}

pub fn identity_operator<T: Ord + Clone>(set: &BTreeSet<T>) -> BTreeSet<T> {
    set.clone()
}

/// Every subset of `universe`, smallest first.
pub fn subsets<T: Ord + Clone>(universe: &[T]) -> Vec<BTreeSet<T>> {
    assert!(universe.len() < 32, "universe too large to enumerate");
    let mut out: Vec<BTreeSet<T>> = (0u32..(1u32 << universe.len()))
        .map(|mask| universe.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x.clone()).collect())
        .collect();
    out.sort_by_key(BTreeSet::len);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorAxiom {
    Extensive,
    Idempotent,
    Monotone,
    Finitary,
    /// The operator is defined on every set the checks need.
    Total,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample<T: Ord> {
    pub gamma: BTreeSet<T>,
    /// Second set, for the pairwise checks.
    pub other: Option<BTreeSet<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomOutcome<T: Ord> {
    pub axiom: OperatorAxiom,
    pub passed: bool,
    pub counterexample: Option<Counterexample<T>>,
    pub cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport<T: Ord> {
    pub outcomes: Vec<AxiomOutcome<T>>,
}

impl<T: Ord> OperatorReport<T> {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, axiom: OperatorAxiom) -> Option<&AxiomOutcome<T>> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }
}

struct Tally<T: Ord> {
    axiom: OperatorAxiom,
    cases: usize,
    counterexample: Option<Counterexample<T>>,
}

impl<T: Ord + Clone> Tally<T> {
    fn new(axiom: OperatorAxiom) -> Self {
        Tally { axiom, cases: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, gamma: &BTreeSet<T>, other: Option<&BTreeSet<T>>) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample { gamma: gamma.clone(), other: other.cloned() });
        }
    }

    fn finish(self) -> AxiomOutcome<T> {
        AxiomOutcome { axiom: self.axiom, passed: self.counterexample.is_none(), counterexample: self.counterexample, cases: self.cases }
    }
}

/// Exhaustive check over all `Γ ⊆ universe` of
/// extensivity `Γ ⊆ S(Γ)`, idempotence `S(S(Γ)) = S(Γ)`, monotonicity
/// `Γ ⊆ Δ ⇒ S(Γ) ⊆ S(Δ)`, and finitary decomposition
/// `S(Γ) = ⋃ { S(F) : F ⊆ Γ }`.
pub fn verify_operator_axioms<T, O>(op: &O, universe: &[T]) -> OperatorReport<T>
where
    T: Ord + Clone + Debug,
    O: SetOperator<T> + ?Sized,
{
    let all = subsets(universe);
    let mut total = Tally::new(OperatorAxiom::Total);
    let mut images: BTreeMap<BTreeSet<T>, BTreeSet<T>> = BTreeMap::new();
    for g in &all {
        match op.apply(g) {
            Some(img) => {
                total.record(true, g, None);
                images.insert(g.clone(), img);
            }
            None => total.record(false, g, None),
        }
    }

    let mut extensive = Tally::new(OperatorAxiom::Extensive);
    let mut idempotent = Tally::new(OperatorAxiom::Idempotent);
    let mut finitary = Tally::new(OperatorAxiom::Finitary);
    for (g, img) in &images {
        extensive.record(g.is_subset(img), g, None);
        match op.apply(img) {
            Some(again) => idempotent.record(&again == img, g, None),
            None => {
                idempotent.record(false, g, None);
                total.record(false, img, None);
            }
        }
        let mut union = BTreeSet::new();
        for sub in subsets(&g.iter().cloned().collect::<Vec<_>>()) {
            if let Some(part) = images.get(&sub) {
                union.extend(part.iter().cloned());
            }
        }
        finitary.record(&union == img, g, None);
    }

    // covering pairs Γ ⊆ Γ ∪ {x} suffice: inclusion chains compose
    let mut monotone = Tally::new(OperatorAxiom::Monotone);
    for (a, img_a) in &images {
        for x in universe.iter().filter(|x| !a.contains(*x)) {
            let mut b = a.clone();
            b.insert(x.clone());
            if let Some(img_b) = images.get(&b) {
                monotone.record(img_a.is_subset(img_b), a, Some(&b));
            }
        }
    }

    OperatorReport {
        outcomes: vec![extensive.finish(), idempotent.finish(), monotone.finish(), finitary.finish(), total.finish()],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityReport<T: Ord> {
    pub continuous: bool,
    /// `(B, A)` with `B ⊆ A` but `C(B) ⊄ C(A)`.
    pub witness: Option<(BTreeSet<T>, BTreeSet<T>)>,
    pub pairs_checked: usize,
}

/// Monotone-image check: for all `B ⊆ A ⊆ X`, `C(B) ⊆ C(A)`. This is the
/// finite content of continuity in the power-set topology.
pub fn continuity_shadow<T, O>(op: &O, universe: &[T]) -> ContinuityReport<T>
where
    T: Ord + Clone,
    O: SetOperator<T> + ?Sized,
{
    let all = subsets(universe);
    let images: Vec<Option<BTreeSet<T>>> = all.iter().map(|s| op.apply(s)).collect();
    let mut pairs = 0;
    for (ib, b) in all.iter().enumerate() {
        for (ia, a) in all.iter().enumerate() {
            if !b.is_subset(a) {
                continue;
            }
            pairs += 1;
            let ok = match (&images[ib], &images[ia]) {
                (Some(cb), Some(ca)) => cb.is_subset(ca),
                _ => false,
            };
            if !ok {
                return ContinuityReport { continuous: false, witness: Some((b.clone(), a.clone())), pairs_checked: pairs };
            }
        }
    }
    ContinuityReport { continuous: true, witness: None, pairs_checked: pairs }
}

/// Truth-table entailment `Γ ⊨ x` over the atoms that occur.
pub fn entails(gamma: &FormulaSet, x: &Formula) -> bool {
    let atoms: Vec<String> = gamma.iter().chain(std::iter::once(x)).flat_map(|f| f.atoms()).collect::<BTreeSet<_>>().into_iter().collect();
    assert!(atoms.len() <= 20, "too many atoms for a truth table");
    (0u32..(1 << atoms.len())).all(|mask| {
        let val = |a: &str| atoms.iter().position(|b| b == a).is_some_and(|i| mask & (1 << i) != 0);
        !gamma.iter().all(|g| g.eval(&val)) || x.eval(&val)
    })
}

pub fn is_tautology(x: &Formula) -> bool {
    entails(&FormulaSet::new(), x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    /// Every derived formula is a classical consequence.
    pub sound: bool,
    pub unsound_witness: Option<Formula>,
    /// A classical consequence of `Γ` outside `S(Γ)`.
    pub strictness_witness: Option<Formula>,
    pub derived: usize,
}

/// Soundness of `S(Γ)` against truth tables and a witness of `S(Γ) ⊊ C(Γ)`.
pub fn classical_compare(gamma: &FormulaSet, atoms: &[String]) -> ClassicalReport {
    let derived = closure(gamma);
    let unsound_witness = derived.iter().find(|x| !entails(gamma, x)).cloned();
    let mut candidates = Vec::new();
    for a in atoms {
        let p = Formula::atom(a.clone());
        candidates.push(Formula::implies(p.clone(), p.clone()));
        candidates.push(Formula::implies(p.clone(), Formula::implies(p.clone(), p.clone())));
        candidates.push(Formula::implies(p.clone(), Formula::and(p.clone(), p.clone())));
    }
    let strictness_witness = candidates.into_iter().find(|x| entails(gamma, x) && !member(x, gamma) && is_axiom(x).is_none());
    ClassicalReport { sound: unsound_witness.is_none(), unsound_witness, strictness_witness, derived: derived.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn closure_operator_passes_on_small_universe() {
        let universe = vec![f("a"), f("b"), f("a & b")];
        let report = verify_operator_axioms(&closure_operator, &universe);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn identity_passes() {
        let report = verify_operator_axioms(&identity_operator::<u8>, &[1, 2, 3]);
        assert!(report.all_passed());
    }

    #[test]
    fn dropping_members_fails_extensivity() {
        let drop_first = |s: &BTreeSet<u8>| s.iter().skip(1).cloned().collect::<BTreeSet<u8>>();
        let report = verify_operator_axioms(&drop_first, &[1, 2]);
        let ext = report.outcome(OperatorAxiom::Extensive).unwrap();
        assert!(!ext.passed);
        assert_eq!(ext.counterexample.as_ref().unwrap().gamma, BTreeSet::from([1]));
    }

    #[test]
    fn partial_table_is_not_total() {
        let mut table = OperatorTable::from_fn(&[1u8, 2], identity_operator);
        table.entries.remove(&BTreeSet::from([1, 2]));
        assert!(!verify_operator_axioms(&table, &[1, 2]).outcome(OperatorAxiom::Total).unwrap().passed);
    }

    #[test]
    fn continuity_examples() {
        let x = vec![f("a"), f("b"), f("a & b")];
        assert!(continuity_shadow(&closure_operator, &x).continuous);
        assert!(continuity_shadow(&identity_operator::<u8>, &[1, 2, 3]).continuous);
        // non-monotone: the full set maps to nothing
        let full = BTreeSet::from([1u8, 2]);
        let bad = move |s: &BTreeSet<u8>| if *s == full { BTreeSet::new() } else { s.clone() };
        let r = continuity_shadow(&bad, &[1, 2]);
        assert!(!r.continuous);
        let (b, a) = r.witness.unwrap();
        assert!(b.is_subset(&a) && !b.is_empty());
    }

    #[test]
    fn classical_comparison() {
        let gamma = FormulaSet::from([f("a & b")]);
        let r = classical_compare(&gamma, &["a".into(), "b".into()]);
        assert!(r.sound);
        assert_eq!(r.strictness_witness, Some(f("a -> a")));
        assert!(is_tautology(&f("a -> a")));
        assert!(!member(&f("a -> a"), &FormulaSet::new()));
        assert!(is_tautology(&f("(a & b) -> a")));
        assert!(!is_tautology(&f("a -> a & b")));
    }
}
