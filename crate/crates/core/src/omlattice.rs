//! Finite ortholattices given by explicit tables, an orthomodularity
//! checker, and validity of the deduction schemata under the Mittelstaedt
//! conditional `i₁(a, b) = a⊥ ∨ (a ∧ b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("malformed lattice table: {0}")]
    MalformedTable(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("schema {0} is not one of 1, 2, 3, 4")]
    UnknownSchema(u8),
}

pub type Elem = usize;

/// Lattice with orthocomplement, stored as index tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    names: Vec<String>,
    meet: Vec<Vec<Elem>>,
    join: Vec<Vec<Elem>>,
    ortho: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

/// On-disk form: element names everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    pub ortho: Vec<String>,
    pub bottom: String,
    pub top: String,
}

impl OrthoLattice {
    /// Builds from index tables, checking only shape (totality and range).
    pub fn from_tables(
        names: Vec<String>,
        meet: Vec<Vec<Elem>>,
        join: Vec<Vec<Elem>>,
        ortho: Vec<Elem>,
        bottom: Elem,
        top: Elem,
    ) -> Result<OrthoLattice, LatticeError> {
        let n = names.len();
        let bad = |m: &str| Err(LatticeError::MalformedTable(m.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        let mut seen = std::collections::BTreeSet::new();
        if !names.iter().all(|x| seen.insert(x)) {
            return bad("duplicate element name");
        }
        for (label, t) in [("meet", &meet), ("join", &join)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(LatticeError::MalformedTable(format!("{label} table is not {n}×{n}")));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return Err(LatticeError::MalformedTable(format!("{label} table entry out of range")));
            }
        }
        if ortho.len() != n || ortho.iter().any(|&x| x >= n) {
            return bad("ortho table is not total");
        }
        if bottom >= n || top >= n {
            return bad("bottom or top out of range");
        }
        Ok(OrthoLattice { names, meet, join, ortho, bottom, top })
    }

    pub fn from_file(file: &LatticeFile) -> Result<OrthoLattice, LatticeError> {
        let index: HashMap<&str, Elem> = file.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| LatticeError::UnknownElement(s.clone()));
        let table = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<Elem>>, LatticeError> {
            t.iter().map(|row| row.iter().map(look).collect()).collect()
        };
        OrthoLattice::from_tables(
            file.elements.clone(),
            table(&file.meet)?,
            table(&file.join)?,
            file.ortho.iter().map(look).collect::<Result<_, _>>()?,
            look(&file.bottom)?,
            look(&file.top)?,
        )
    }

    pub fn to_file(&self) -> LatticeFile {
        let name = |i: &Elem| self.names[*i].clone();
        let table = |t: &Vec<Vec<Elem>>| t.iter().map(|row| row.iter().map(name).collect()).collect();
        LatticeFile {
            elements: self.names.clone(),
            meet: table(&self.meet),
            join: table(&self.join),
            ortho: self.ortho.iter().map(name).collect(),
            bottom: name(&self.bottom),
            top: name(&self.top),
        }
    }

    pub fn from_json(text: &str) -> Result<OrthoLattice, LatticeError> {
        let file: LatticeFile = serde_json::from_str(text).map_err(|e| LatticeError::MalformedTable(e.to_string()))?;
        OrthoLattice::from_file(&file)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.names.len()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Result<Elem, LatticeError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// Replaces the orthocomplement table; used to build broken examples.
    pub fn with_ortho(mut self, ortho: Vec<Elem>) -> Result<OrthoLattice, LatticeError> {
        if ortho.len() != self.len() || ortho.iter().any(|&x| x >= self.len()) {
            return Err(LatticeError::MalformedTable("ortho table is not total".into()));
        }
        self.ortho = ortho;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Idempotent,
    Commutative,
    Associative,
    Absorption,
    Bounds,
    OrderConsistency,
    Involution,
    Noncontradiction,
    ExcludedMiddle,
    DeMorgan,
    Antitone,
    Orthomodular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub elements: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at ({}): {}", self.law, self.elements.join(", "), self.detail)
    }
}

/// `None` when every law holds, otherwise the first violation found.
pub fn validate_orthomodular(l: &OrthoLattice) -> Option<Violation> {
    let n = l.len();
    let nm = |xs: &[Elem]| xs.iter().map(|&x| l.name(x).to_string()).collect::<Vec<_>>();
    let fail = |law, xs: &[Elem], detail: String| Some(Violation { law, elements: nm(xs), detail });

    for a in 0..n {
        if l.meet(a, a) != a || l.join(a, a) != a {
            return fail(Law::Idempotent, &[a], "a∧a or a∨a differs from a".into());
        }
        if l.meet(a, l.bottom()) != l.bottom() || l.join(a, l.top()) != l.top() || l.meet(a, l.top()) != a {
            return fail(Law::Bounds, &[a], "0 and I are not bounds".into());
        }
    }
    for a in 0..n {
        for b in 0..n {
            if l.meet(a, b) != l.meet(b, a) || l.join(a, b) != l.join(b, a) {
                return fail(Law::Commutative, &[a, b], "operation not symmetric".into());
            }
            if l.meet(a, l.join(a, b)) != a || l.join(a, l.meet(a, b)) != a {
                return fail(Law::Absorption, &[a, b], "absorption fails".into());
            }
            if (l.meet(a, b) == a) != (l.join(a, b) == b) {
                return fail(Law::OrderConsistency, &[a, b], "meet order and join order disagree".into());
            }
            for c in 0..n {
                if l.meet(a, l.meet(b, c)) != l.meet(l.meet(a, b), c) || l.join(a, l.join(b, c)) != l.join(l.join(a, b), c) {
                    return fail(Law::Associative, &[a, b, c], "operation not associative".into());
                }
            }
        }
    }
    for a in 0..n {
        let o = l.ortho(a);
        if l.ortho(o) != a {
            return fail(Law::Involution, &[a], format!("a⊥⊥ = {}", l.name(l.ortho(o))));
        }
        if l.meet(a, o) != l.bottom() {
            return fail(Law::Noncontradiction, &[a], format!("a∧a⊥ = {} ≠ {}", l.name(l.meet(a, o)), l.name(l.bottom())));
        }
        if l.join(a, o) != l.top() {
            return fail(Law::ExcludedMiddle, &[a], format!("a∨a⊥ = {} ≠ {}", l.name(l.join(a, o)), l.name(l.top())));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if l.ortho(l.join(a, b)) != l.meet(l.ortho(a), l.ortho(b)) || l.ortho(l.meet(a, b)) != l.join(l.ortho(a), l.ortho(b)) {
                return fail(Law::DeMorgan, &[a, b], "De Morgan fails".into());
            }
            if l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a)) {
                return fail(Law::Antitone, &[a, b], "a ≤ b but b⊥ ≰ a⊥".into());
            }
            if l.leq(a, b) && l.join(a, l.meet(l.ortho(a), b)) != b {
                return fail(Law::Orthomodular, &[a, b], "a ≤ b but b ≠ a ∨ (a⊥ ∧ b)".into());
            }
        }
    }
    None
}

pub fn is_orthomodular(l: &OrthoLattice) -> bool {
    validate_orthomodular(l).is_none()
}

/// `i₁(a, b) = a⊥ ∨ (a ∧ b)`.
pub fn mittelstaedt(l: &OrthoLattice, a: Elem, b: Elem) -> Elem {
    l.join(l.ortho(a), l.meet(a, b))
}

/// The schema's antecedent and consequent as lattice terms in `A, B, C`.
fn schema_sides(l: &OrthoLattice, schema: u8, a: Elem, b: Elem, c: Elem) -> (Elem, Elem) {
    match schema {
        1 => (l.meet(a, b), a),
        2 => (l.meet(a, b), b),
        3 => (l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c)),
        _ => (l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c))),
    }
}

fn schema_arity(schema: u8) -> usize {
    if schema <= 2 {
        2
    } else {
        3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaValidity {
    pub schema: u8,
    pub valid: bool,
    pub assignments: usize,
    /// First assignment `A, B[, C]` with `i₁(antecedent, consequent) ≠ I`.
    pub failing: Option<BTreeMap<String, String>>,
}

/// Exhaustive check that the schema's `i₁` translation is `I` under every
/// assignment of lattice elements.
pub fn axiom_validity(l: &OrthoLattice, schema: u8) -> Result<SchemaValidity, LatticeError> {
    if !(1..=4).contains(&schema) {
        return Err(LatticeError::UnknownSchema(schema));
    }
    let n = l.len();
    let arity = schema_arity(schema);
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..(if arity == 3 { n } else { 1 }) {
                count += 1;
                let (x, y) = schema_sides(l, schema, a, b, c);
                if mittelstaedt(l, x, y) != l.top() {
                    let mut failing = BTreeMap::from([("A".to_string(), l.name(a).to_string()), ("B".to_string(), l.name(b).to_string())]);
                    if arity == 3 {
                        failing.insert("C".into(), l.name(c).to_string());
                    }
                    return Ok(SchemaValidity { schema, valid: false, assignments: count, failing: Some(failing) });
                }
            }
        }
    }
    Ok(SchemaValidity { schema, valid: true, assignments: count, failing: None })
}

/// The six-element orthomodular, non-distributive lattice `0, a, a⊥, b, b⊥, 1`.
pub fn mo2() -> OrthoLattice {
    let names: Vec<String> = ["0", "a", "a'", "b", "b'", "1"].iter().map(|s| s.to_string()).collect();
    let (bot, top) = (0, 5);
    let mut meet = vec![vec![0; 6]; 6];
    let mut join = vec![vec![0; 6]; 6];
    for x in 0..6 {
        for y in 0..6 {
            meet[x][y] = if x == y || y == top {
                x
            } else if x == top {
                y
            } else {
                bot
            };
            join[x][y] = if x == y || y == bot {
                x
            } else if x == bot {
                y
            } else {
                top
            };
        }
    }
    OrthoLattice::from_tables(names, meet, join, vec![5, 2, 1, 4, 3, 0], bot, top).expect("well-formed")
}

/// Power set of an `n`-element set (`n <= 3`); elements named by their
/// letters, with `0` and `1` for the extremes.
pub fn boolean(n: u32) -> OrthoLattice {
    assert!((1..=3).contains(&n), "boolean built-ins cover n in 1..=3");
    let size = 1usize << n;
    let full = size - 1;
    let letters = ['a', 'b', 'c'];
    let names = (0..size)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..n as usize).filter(|i| m & (1 << i) != 0).map(|i| letters[i]).collect(),
        })
        .collect();
    let meet = (0..size).map(|x| (0..size).map(|y| x & y).collect()).collect();
    let join = (0..size).map(|x| (0..size).map(|y| x | y).collect()).collect();
    let ortho = (0..size).map(|x| full & !x).collect();
    OrthoLattice::from_tables(names, meet, join, ortho, 0, full).expect("well-formed")
}

pub fn builtin(name: &str) -> Option<OrthoLattice> {
    match name {
        "mo2" | "MO2" => Some(mo2()),
        "boolean2" | "B2" => Some(boolean(1)),
        "boolean4" | "B4" => Some(boolean(2)),
        "boolean8" | "B8" => Some(boolean(3)),
        _ => None,
    }
}
