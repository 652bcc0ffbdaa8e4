//! Words over a declared alphabet as code sequences, frozen segments and
//! their totalities, paradigms, sentence templates with numeric slots, and
//! finite choice-set enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyper::{Class, HyperReal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol `{symbol}` at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("the empty word is not a word")]
    EmptyWord,
    #[error("alphabet declares `{0}` twice")]
    DuplicateSymbol(char),
    #[error("alphabet line {line} must hold exactly one symbol")]
    BadAlphabetLine { line: usize },
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("code {code} at position {position} is pure-subtle and has no reading")]
    SubtleCode { code: u64, position: usize },
    #[error("selector has no word for index {0}")]
    MissingIndex(u64),
    #[error("a paradigm needs at least one segment")]
    EmptyParadigm,
    #[error("paradigm indices must strictly increase (saw {0} after {1})")]
    NonIncreasingIndex(u64, u64),
    #[error("duplicate segment in paradigm")]
    DuplicateSegment,
    #[error("sample {0} is empty")]
    EmptySample(usize),
    #[error("exactly(k) selects from a single sample, got {0}")]
    SampleCount(usize),
    #[error("template has no `{{n}}` or `{{i}}` slot")]
    NoSlot,
    #[error("slot value {0} is neither a natural number nor a positive unlimited value")]
    NonNatSlotValue(String),
}

/// Finite ordered alphabet; the code of a symbol is its position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
    #[serde(skip)]
    code_map: BTreeMap<char, u64>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Alphabet, CodecError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(CodecError::EmptyAlphabet);
        }
        let mut code_map = BTreeMap::new();
        for (i, &c) in symbols.iter().enumerate() {
            if code_map.insert(c, i as u64).is_some() {
                return Err(CodecError::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols, code_map })
    }

    /// One symbol per line. Blank lines are skipped; a line holding a single
    /// space declares the space symbol.
    pub fn from_config(text: &str) -> Result<Alphabet, CodecError> {
        let mut symbols = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.is_empty() {
                continue;
            }
            let mut chars = line.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => return Err(CodecError::BadAlphabetLine { line: n + 1 }),
            }
        }
        Alphabet::new(symbols)
    }

    pub fn to_config(&self) -> String {
        self.symbols.iter().map(|c| format!("{c}\n")).collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn code(&self, c: char) -> Option<u64> {
        self.code_map.get(&c).copied()
    }

    pub fn symbol(&self, code: u64) -> Option<char> {
        usize::try_from(code).ok().and_then(|i| self.symbols.get(i).copied())
    }

    pub fn is_readable(&self, code: u64) -> bool {
        code < self.symbols.len() as u64
    }

    fn rebuild(mut self) -> Alphabet {
        self.code_map = self.symbols.iter().enumerate().map(|(i, &c)| (c, i as u64)).collect();
        self
    }
}

impl Default for Alphabet {
    /// Printable ASCII followed by the Greek letters and marks the sentence
    /// templates use.
    fn default() -> Alphabet {
        Alphabet::new((' '..='~').chain(['α', 'ε', 'ζ', 'λ', 'ν', 'ω', 'Ω', '′'])).expect("distinct")
    }
}

/// Restores the lookup table after deserializing.
pub fn alphabet_from_json(text: &str) -> serde_json::Result<Alphabet> {
    serde_json::from_str::<Alphabet>(text).map(Alphabet::rebuild)
}

/// Code sequence `j ↦ f(j)`. Codes at or above the alphabet size are
/// pure-subtle markers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EncodedWord {
    pub codes: Vec<u64>,
}

impl EncodedWord {
    pub fn canonical_length(&self) -> usize {
        self.codes.len()
    }

    pub fn subtle_positions(&self, alphabet: &Alphabet) -> Vec<usize> {
        self.codes.iter().enumerate().filter(|(_, &c)| !alphabet.is_readable(c)).map(|(i, _)| i).collect()
    }
}

pub fn encode_word(word: &str, alphabet: &Alphabet) -> Result<EncodedWord, CodecError> {
    if word.is_empty() {
        return Err(CodecError::EmptyWord);
    }
    let codes = word
        .chars()
        .enumerate()
        .map(|(position, symbol)| alphabet.code(symbol).ok_or(CodecError::UnknownSymbol { symbol, position }))
        .collect::<Result<_, _>>()?;
    Ok(EncodedWord { codes })
}

pub fn decode_word(word: &EncodedWord, alphabet: &Alphabet) -> Result<String, CodecError> {
    word.codes
        .iter()
        .enumerate()
        .map(|(position, &code)| alphabet.symbol(code).ok_or(CodecError::SubtleCode { code, position }))
        .collect()
}

/// Like [`decode_word`] but shows each pure-subtle code as `placeholder`.
pub fn render_word(word: &EncodedWord, alphabet: &Alphabet, placeholder: char) -> String {
    word.codes.iter().map(|&c| alphabet.symbol(c).unwrap_or(placeholder)).collect()
}

pub const SUBTLE_PLACEHOLDER: char = '□';

/// Sentence with numeric slots written `{i}` or `{n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Template {
    text: String,
    pieces: Vec<String>,
}

impl Template {
    pub fn new(text: &str) -> Result<Template, CodecError> {
        let mut pieces = Vec::new();
        let mut rest = text;
        loop {
            let next = ["{i}", "{n}"].iter().filter_map(|m| rest.find(m)).min();
            match next {
                Some(at) => {
                    pieces.push(rest[..at].to_string());
                    rest = &rest[at + 3..];
                }
                None => {
                    pieces.push(rest.to_string());
                    break;
                }
            }
        }
        if pieces.len() < 2 {
            return Err(CodecError::NoSlot);
        }
        Ok(Template { text: text.to_string(), pieces })
    }

    pub fn slot_count(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Every slot filled with the same text.
    pub fn render(&self, fill: &str) -> String {
        self.pieces.join(fill)
    }
}

impl TryFrom<String> for Template {
    type Error = CodecError;
    fn try_from(s: String) -> Result<Template, CodecError> {
        Template::new(&s)
    }
}

impl From<Template> for String {
    fn from(t: Template) -> String {
        t.text
    }
}

pub const DEFAULT_SEGMENT_TEMPLATE: &str = "This frozen segment gives a description for the time interval that has as its leftmost endpoint the time t_{i} that corresponds to the natural number {i}.";
pub const KINETIC_TEMPLATE: &str = "An elementary particle α({n}) with kinetic energy c+1/({n}).";
pub const TOTAL_ENERGY_TEMPLATE: &str = "An elementary particle α({n}) with total energy c+{n}.";

pub fn default_segment_template() -> Template {
    Template::new(DEFAULT_SEGMENT_TEMPLATE).expect("has slots")
}

/// A described state tagged with its time index. `tail` is the rendered
/// index sentence; the whole segment reads `body` then a space then `tail`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FrozenSegment {
    pub body: EncodedWord,
    pub index: u64,
    pub tail: String,
}

impl FrozenSegment {
    pub fn word(&self, alphabet: &Alphabet) -> Result<EncodedWord, CodecError> {
        let mut codes = self.body.codes.clone();
        codes.push(alphabet.code(' ').ok_or(CodecError::UnknownSymbol { symbol: ' ', position: codes.len() })?);
        codes.extend(encode_word(&self.tail, alphabet)?.codes);
        Ok(EncodedWord { codes })
    }

    pub fn text(&self, alphabet: &Alphabet) -> Result<String, CodecError> {
        decode_word(&self.word(alphabet)?, alphabet)
    }

    pub fn record(&self, alphabet: &Alphabet) -> Result<SegmentRecord, CodecError> {
        Ok(SegmentRecord {
            index: Some(self.index),
            body: decode_word(&self.body, alphabet)?,
            tail: self.tail.clone(),
            subtle: Vec::new(),
        })
    }
}

pub fn make_frozen_segment(body: &str, index: u64, alphabet: &Alphabet, template: &Template) -> Result<FrozenSegment, CodecError> {
    let body = encode_word(body, alphabet)?;
    let tail = template.render(&index.to_string());
    // the tail has to be writable in the alphabet too
    encode_word(&tail, alphabet)?;
    Ok(FrozenSegment { body, index, tail })
}

/// Membership in the totality `T_i`: the index and the tail sentence agree.
pub fn totality_membership(seg: &FrozenSegment, i: u64, template: &Template) -> bool {
    seg.index == i && seg.tail == template.render(&i.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParadigmKind {
    Developmental,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paradigm {
    segments: Vec<FrozenSegment>,
    kind: ParadigmKind,
}

impl Paradigm {
    pub fn new(segments: Vec<FrozenSegment>, kind: ParadigmKind) -> Result<Paradigm, CodecError> {
        if segments.is_empty() {
            return Err(CodecError::EmptyParadigm);
        }
        if kind == ParadigmKind::Developmental {
            for w in segments.windows(2) {
                if w[1].index <= w[0].index {
                    return Err(CodecError::NonIncreasingIndex(w[1].index, w[0].index));
                }
            }
        }
        let distinct: BTreeSet<&FrozenSegment> = segments.iter().collect();
        if distinct.len() != segments.len() {
            return Err(CodecError::DuplicateSegment);
        }
        Ok(Paradigm { segments, kind })
    }

    pub fn segments(&self) -> &[FrozenSegment] {
        &self.segments
    }

    pub fn kind(&self) -> ParadigmKind {
        self.kind
    }

    pub fn get(&self, index: u64) -> Option<&FrozenSegment> {
        self.segments.iter().find(|s| s.index == index)
    }

    pub fn records(&self, alphabet: &Alphabet) -> Result<Vec<SegmentRecord>, CodecError> {
        self.segments.iter().map(|s| s.record(alphabet)).collect()
    }
}

/// One segment per index in `range`, the body chosen by `selector`: one
/// member from each totality.
pub fn build_paradigm<F>(selector: F, range: std::ops::RangeInclusive<u64>, alphabet: &Alphabet, template: &Template) -> Result<Paradigm, CodecError>
where
    F: Fn(u64) -> Option<String>,
{
    let mut segments = Vec::new();
    for i in range {
        let body = selector(i).ok_or(CodecError::MissingIndex(i))?;
        segments.push(make_frozen_segment(&body, i, alphabet, template)?);
    }
    Paradigm::new(segments, ParadigmKind::Developmental)
}

pub fn selector_from_map(map: &BTreeMap<u64, String>) -> impl Fn(u64) -> Option<String> + '_ {
    move |i| map.get(&i).cloned()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinality {
    /// One element from each sample.
    All,
    /// Every `k`-subset of a single sample.
    Exactly(usize),
}

pub fn enumerate_choice_sets<T: Ord + Clone>(samples: &[BTreeSet<T>], cardinality: Cardinality) -> Result<Vec<BTreeSet<T>>, CodecError> {
    if let Some(i) = samples.iter().position(BTreeSet::is_empty) {
        return Err(CodecError::EmptySample(i));
    }
    match cardinality {
        Cardinality::All => {
            let mut out: Vec<Vec<T>> = vec![Vec::new()];
            for sample in samples {
                out = out.into_iter().flat_map(|prefix| sample.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x.clone());
                    next
                })).collect();
            }
            Ok(out.into_iter().map(|v| v.into_iter().collect()).collect())
        }
        Cardinality::Exactly(k) => {
            if samples.len() != 1 {
                return Err(CodecError::SampleCount(samples.len()));
            }
            let items: Vec<&T> = samples[0].iter().collect();
            let mut out = Vec::new();
            k_subsets(&items, k, 0, &mut Vec::new(), &mut out);
            Ok(out)
        }
    }
}

fn k_subsets<T: Ord + Clone>(items: &[&T], k: usize, from: usize, cur: &mut Vec<T>, out: &mut Vec<BTreeSet<T>>) {
    if cur.len() == k {
        out.push(cur.iter().cloned().collect());
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i].clone());
        k_subsets(items, k, i + 1, cur, out);
        cur.pop();
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SlotValue {
    Natural(BigInt),
    Hyper(HyperReal),
}

impl fmt::Display for SlotValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotValue::Natural(n) => write!(f, "{n}"),
            SlotValue::Hyper(h) => write!(f, "{h}"),
        }
    }
}

/// A filled template. Each unlimited slot occupies exactly one pure-subtle
/// code in `word`; `subtle` lists those positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instantiated {
    pub word: EncodedWord,
    pub text: String,
    pub subtle: Vec<usize>,
    pub unlimited: bool,
}

impl Instantiated {
    pub fn record(&self, index: Option<u64>) -> SegmentRecord {
        SegmentRecord { index, body: self.text.clone(), tail: String::new(), subtle: self.subtle.clone() }
    }
}

pub fn instantiate_template(template: &Template, value: &SlotValue, alphabet: &Alphabet) -> Result<Instantiated, CodecError> {
    let natural = match value {
        SlotValue::Natural(n) if n.sign() != num_bigint::Sign::Minus => Some(n.clone()),
        SlotValue::Natural(n) => return Err(CodecError::NonNatSlotValue(n.to_string())),
        SlotValue::Hyper(h) => match h.classify() {
            Class::Unlimited if h.signum() > 0 => None,
            _ => Some(h.as_natural().ok_or_else(|| CodecError::NonNatSlotValue(h.to_string()))?),
        },
    };
    if let Some(n) = natural {
        let text = template.render(&n.to_string());
        let word = encode_word(&text, alphabet)?;
        return Ok(Instantiated { word, text, subtle: Vec::new(), unlimited: false });
    }
    let mut codes = Vec::new();
    let mut subtle = Vec::new();
    for (k, piece) in template.pieces.iter().enumerate() {
        if k > 0 {
            subtle.push(codes.len());
            // opaque tag: one code beyond the alphabet per slot occurrence
            codes.push(alphabet.len() as u64 + (k - 1) as u64);
        }
        if !piece.is_empty() {
            let offset = codes.len();
            codes.extend(encode_word(piece, alphabet).map_err(|e| match e {
                CodecError::UnknownSymbol { symbol, position } => CodecError::UnknownSymbol { symbol, position: position + offset },
                other => other,
            })?.codes);
        }
    }
    let word = EncodedWord { codes };
    let text = render_word(&word, alphabet, SUBTLE_PLACEHOLDER);
    Ok(Instantiated { word, text, subtle, unlimited: true })
}

/// Line-delimited JSON record for segments and filled templates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub index: Option<u64>,
    pub body: String,
    pub tail: String,
    pub subtle: Vec<usize>,
}

pub fn to_json_lines(records: &[SegmentRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("plain data") + "\n").collect()
}

pub fn from_json_lines(text: &str) -> serde_json::Result<Vec<SegmentRecord>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new("abc".chars()).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_word("ab", &abc()).unwrap().codes, vec![0, 1]);
        let a = Alphabet::new(['a']).unwrap();
        assert_eq!(encode_word("a", &a).unwrap().codes, vec![0]);
        let d = Alphabet::default();
        assert_eq!(decode_word(&encode_word("and and", &d).unwrap(), &d).unwrap(), "and and");
        assert_eq!(encode_word("", &d), Err(CodecError::EmptyWord));
        assert_eq!(encode_word("abd", &abc()), Err(CodecError::UnknownSymbol { symbol: 'd', position: 2 }));
    }

    #[test]
    fn alphabet_config() {
        let a = Alphabet::from_config("a\nb\n \n\nα\n").unwrap();
        assert_eq!(a.symbols(), &['a', 'b', ' ', 'α']);
        assert_eq!(Alphabet::from_config("ab\n"), Err(CodecError::BadAlphabetLine { line: 1 }));
        assert_eq!(Alphabet::from_config("a\na\n"), Err(CodecError::DuplicateSymbol('a')));
        assert_eq!(Alphabet::from_config(&a.to_config()).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(alphabet_from_json(&json).unwrap().code('α'), Some(3));
    }

    #[test]
    fn segments_and_totalities() {
        let d = Alphabet::default();
        let t = default_segment_template();
        let s = make_frozen_segment("sun rises", 3, &d, &t).unwrap();
        assert!(s.tail.contains("the natural number 3"));
        assert!(s.tail.ends_with("number 3."));
        assert!(s.text(&d).unwrap().starts_with("sun rises This frozen"));
        assert_eq!(make_frozen_segment("x", 0, &d, &t).unwrap().index, 0);
        assert!(!totality_membership(&make_frozen_segment("x", 5, &d, &t).unwrap(), 4, &t));
        let two = make_frozen_segment("y", 2, &d, &t).unwrap();
        assert!(totality_membership(&two, 2, &t));
        assert!(!totality_membership(&two, 3, &t));
        assert!(matches!(make_frozen_segment("", 1, &d, &t), Err(CodecError::EmptyWord)));
    }

    #[test]
    fn paradigms() {
        let d = Alphabet::default();
        let t = default_segment_template();
        let p = build_paradigm(|i| Some(format!("state {i}")), 0..=3, &d, &t).unwrap();
        assert_eq!(p.segments().iter().map(|s| s.index).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = build_paradigm(|i| Some(format!("{i}")), 1..=0, &d, &t);
        assert_eq!(empty, Err(CodecError::EmptyParadigm));
        let map = BTreeMap::from([(0, "a".to_string()), (2, "c".to_string())]);
        assert_eq!(build_paradigm(selector_from_map(&map), 0..=2, &d, &t), Err(CodecError::MissingIndex(1)));
        let lines = to_json_lines(&p.records(&d).unwrap());
        let back = from_json_lines(&lines).unwrap();
        assert_eq!(back.len(), 4);
        assert_eq!(back[1].body, "state 1");
    }

    #[test]
    fn choice_sets() {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<BTreeSet<_>>();
        let got = enumerate_choice_sets(&[s(&["a", "b"]), s(&["c"])], Cardinality::All).unwrap();
        assert_eq!(got, vec![s(&["a", "c"]), s(&["b", "c"])]);
        let got = enumerate_choice_sets(&[s(&["a", "b", "c"])], Cardinality::Exactly(1)).unwrap();
        assert_eq!(got, vec![s(&["a"]), s(&["b"]), s(&["c"])]);
        let got = enumerate_choice_sets(&[s(&["a"])], Cardinality::Exactly(0)).unwrap();
        assert_eq!(got, vec![BTreeSet::new()]);
        assert_eq!(enumerate_choice_sets(&[s(&["a"]), BTreeSet::new()], Cardinality::All), Err(CodecError::EmptySample(1)));
    }

    #[test]
    fn templates() {
        let d = Alphabet::default();
        let ga = Template::new(KINETIC_TEMPLATE).unwrap();
        let five = instantiate_template(&ga, &SlotValue::Natural(5.into()), &d).unwrap();
        assert_eq!(five.text, "An elementary particle α(5) with kinetic energy c+1/(5).");
        assert!(five.subtle.is_empty());
        let om = instantiate_template(&ga, &SlotValue::Hyper(HyperReal::omega()), &d).unwrap();
        assert_eq!(om.subtle.len(), 2);
        assert_eq!(om.text, "An elementary particle α(□) with kinetic energy c+1/(□).");
        assert_eq!(om.word.subtle_positions(&d), om.subtle);
        let gb = Template::new(TOTAL_ENERGY_TEMPLATE).unwrap();
        let om = instantiate_template(&gb, &SlotValue::Hyper(HyperReal::omega()), &d).unwrap();
        assert!(om.unlimited);
        assert!(om.text.ends_with("c+□."));
        let half = SlotValue::Hyper(HyperReal::from_rational(crate::rational::rat(1, 2)));
        assert!(matches!(instantiate_template(&ga, &half, &d), Err(CodecError::NonNatSlotValue(_))));
        assert!(matches!(instantiate_template(&ga, &SlotValue::Hyper(HyperReal::epsilon()), &d), Err(CodecError::NonNatSlotValue(_))));
        assert_eq!(Template::new("no slot"), Err(CodecError::NoSlot));
    }
}
