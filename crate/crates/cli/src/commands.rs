use std::collections::{BTreeMap, BTreeSet};
use std::error::Error;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use ultralogic::glue::{avoiding_refinement, build_glue_with_precision, increment_bound, max_gap, neutron_spec, special_partition, telescope, Delta, GlueFunction, GlueSpecFile};
use ultralogic::hyper::{approximate_shadow, hypernat_for, hypersum_const, lift, lift_half_pi, HyperReal, NatLike, Transcendental};
use ultralogic::logic::{
    characterize, classical_compare, closure, closure_operator, continuity_shadow, make_ultraword, member, ultimate_witness, unfold, verify_operator_axioms, Formula,
    FormulaSet,
};
use ultralogic::omlattice::{axiom_validity, builtin, mittelstaedt, validate_orthomodular, OrthoLattice};
use ultralogic::rational::{format_rational, parse_rational, Rational};
use ultralogic::subparticle::{
    add_perturbations, apply_diagonal, coin_sequence, coin_statistics, combine, decode, new_ultrasubparticle, project_standard, ultrafast_ke, EntityFile, SubparticleRep,
};
use ultralogic::suite;
use ultralogic::word_codec::{
    build_paradigm, decode_word, encode_word, enumerate_choice_sets, instantiate_template, make_frozen_segment, render_word, selector_from_map, to_json_lines, totality_membership,
    Cardinality, EncodedWord, SlotValue, Template, KINETIC_TEMPLATE, SUBTLE_PLACEHOLDER, TOTAL_ENERGY_TEMPLATE,
};

use crate::config::RunConfig;
use crate::{ApproxArgs, CharacterizeArgs, CoinArgs, Command, DeduceCmd, EncodeCmd, GlueCmd, GlueSource, HyperCmd, OmcheckArgs, SubpCmd, SuiteArgs};

pub type Fallible<T> = Result<T, Box<dyn Error>>;

/// One output line: `text` normally, `json` under `--json`.
pub struct Record {
    pub text: String,
    pub json: Value,
}

fn rec(text: impl Into<String>, json: Value) -> Record {
    Record { text: text.into(), json }
}

#[derive(Default)]
pub struct Output {
    pub records: Vec<Record>,
    /// A check ran to completion and reported failure.
    pub failed: bool,
}

impl From<Vec<Record>> for Output {
    fn from(records: Vec<Record>) -> Output {
        Output { records, failed: false }
    }
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Fallible<Output> {
    match cmd {
        Command::Encode(c) => encode(c, cfg).map(Output::from),
        Command::Deduce(c) => deduce(c).map(Output::from),
        Command::Characterize(a) => characterize_cmd(a).map(Output::from),
        Command::Omcheck(a) => omcheck(a),
        Command::Hyper(c) => hyper(c, cfg).map(Output::from),
        Command::Glue(c) => glue(c, cfg).map(Output::from),
        Command::Approx(a) => approx(a).map(Output::from),
        Command::Subp(c) => subp(c, cfg).map(Output::from),
        Command::Coin(a) => coin(a).map(Output::from),
        Command::Suite(a) => run_suite(a, cfg),
    }
}

fn read(path: &Path) -> Fallible<String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn rational(text: &str) -> Fallible<Rational> {
    Ok(parse_rational(text)?)
}

fn series(text: &str, cfg: &RunConfig) -> Fallible<HyperReal> {
    Ok(text.parse::<HyperReal>()?.with_order(cfg.truncation).checked()?)
}

fn formulas(texts: &[String]) -> Fallible<Vec<Formula>> {
    texts.iter().map(|t| Ok(t.parse::<Formula>()?)).collect()
}

fn formula_lines(set: &FormulaSet) -> Vec<Record> {
    set.iter().map(|f| rec(f.to_string(), json!({ "formula": f.to_string() }))).collect()
}

fn show_set(set: &BTreeSet<Formula>) -> String {
    let items: Vec<String> = set.iter().map(Formula::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn codes_text(w: &EncodedWord) -> String {
    w.codes.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn encode(cmd: &EncodeCmd, cfg: &RunConfig) -> Fallible<Vec<Record>> {
    let alphabet = cfg.alphabet()?;
    match cmd {
        EncodeCmd::Word { text } => {
            let w = encode_word(text, &alphabet)?;
            Ok(vec![rec(codes_text(&w), json!({ "codes": w.codes, "length": w.canonical_length() }))])
        }
        EncodeCmd::Decode { codes } => {
            let w = EncodedWord { codes: codes.clone() };
            let subtle = w.subtle_positions(&alphabet);
            let text = if subtle.is_empty() { decode_word(&w, &alphabet)? } else { render_word(&w, &alphabet, SUBTLE_PLACEHOLDER) };
            Ok(vec![rec(text.clone(), json!({ "text": text, "subtle": subtle }))])
        }
        EncodeCmd::Segment { body, index, totality } => {
            let template = cfg.template()?;
            let seg = make_frozen_segment(body, *index, &alphabet, &template)?;
            let text = seg.text(&alphabet)?;
            let mut out = vec![rec(text, serde_json::to_value(seg.record(&alphabet)?)?)];
            if let Some(i) = totality {
                let inside = totality_membership(&seg, *i, &template);
                out.push(rec(format!("in totality {i}: {inside}"), json!({ "totality": i, "member": inside })));
            }
            Ok(out)
        }
        EncodeCmd::Paradigm { map, from, to } => {
            let bodies: BTreeMap<u64, String> = serde_json::from_str(&read(map)?)?;
            let p = build_paradigm(selector_from_map(&bodies), *from..=*to, &alphabet, &cfg.template()?)?;
            let records = p.records(&alphabet)?;
            // JSON lines either way
            Ok(to_json_lines(&records).lines().zip(&records).map(|(line, r)| rec(line, serde_json::to_value(r).unwrap_or(Value::Null))).collect())
        }
        EncodeCmd::Instantiate { template, value } => {
            let t = match template.as_str() {
                "kinetic" => Template::new(KINETIC_TEMPLATE)?,
                "total" => Template::new(TOTAL_ENERGY_TEMPLATE)?,
                other => Template::new(other)?,
            };
            let v = match value.parse::<BigInt>() {
                Ok(n) => SlotValue::Natural(n),
                Err(_) => SlotValue::Hyper(series(value, cfg)?),
            };
            let inst = instantiate_template(&t, &v, &alphabet)?;
            Ok(vec![rec(inst.text.clone(), json!({ "text": inst.text, "codes": inst.word.codes, "subtle": inst.subtle, "unlimited": inst.unlimited }))])
        }
        EncodeCmd::Choices { samples, k } => {
            let sets: Vec<BTreeSet<String>> = samples.iter().map(|s| s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()).collect();
            let card = k.map_or(Cardinality::All, Cardinality::Exactly);
            let choices = enumerate_choice_sets(&sets, card)?;
            Ok(choices
                .into_iter()
                .map(|c| {
                    let items: Vec<String> = c.into_iter().collect();
                    rec(items.join(","), json!({ "choice": items }))
                })
                .collect())
        }
    }
}

fn deduce(cmd: &DeduceCmd) -> Fallible<Vec<Record>> {
    match cmd {
        DeduceCmd::Closure { gamma } => Ok(formula_lines(&closure(&formulas(gamma)?.into_iter().collect()))),
        DeduceCmd::Member { query, gamma } => {
            let q: Formula = query.parse()?;
            let yes = member(&q, &formulas(gamma)?.into_iter().collect());
            Ok(vec![rec(yes.to_string(), json!({ "query": q.to_string(), "member": yes }))])
        }
        DeduceCmd::Axioms { universe } => {
            let u = formulas(universe)?;
            if u.len() > 14 {
                return Err(format!("universe of {} formulas is too large to enumerate", u.len()).into());
            }
            let report = verify_operator_axioms(&closure_operator, &u);
            Ok(report
                .outcomes
                .iter()
                .map(|o| {
                    let ce = o.counterexample.as_ref().map(|c| show_set(&c.gamma));
                    let text = format!("{:?}: {} ({} cases){}", o.axiom, if o.passed { "ok" } else { "FAILED" }, o.cases, ce.as_ref().map(|c| format!(", counterexample {c}")).unwrap_or_default());
                    rec(text, json!({ "axiom": o.axiom, "passed": o.passed, "cases": o.cases, "counterexample": ce }))
                })
                .collect())
        }
        DeduceCmd::Continuity { universe } => {
            let u = formulas(universe)?;
            if u.len() > 12 {
                return Err(format!("universe of {} formulas is too large to enumerate", u.len()).into());
            }
            let r = continuity_shadow(&closure_operator, &u);
            let w = r.witness.as_ref().map(|(b, a)| (show_set(b), show_set(a)));
            let text = match &w {
                None => format!("monotone images: ok ({} pairs)", r.pairs_checked),
                Some((b, a)) => format!("monotone images: FAILED at B = {b}, A = {a}"),
            };
            Ok(vec![rec(text, json!({ "continuous": r.continuous, "pairs": r.pairs_checked, "witness": w }))])
        }
        DeduceCmd::Classical { gamma } => {
            let g: FormulaSet = formulas(gamma)?.into_iter().collect();
            let atoms: Vec<String> = g.iter().flat_map(|f| f.atoms()).collect::<BTreeSet<_>>().into_iter().collect();
            let r = classical_compare(&g, &atoms);
            let witness = r.strictness_witness.as_ref().map(Formula::to_string);
            let text = format!("sound: {}, derived: {}, classical but not derivable: {}", r.sound, r.derived, witness.as_deref().unwrap_or("none found"));
            Ok(vec![rec(text, json!({ "sound": r.sound, "derived": r.derived, "unsound_witness": r.unsound_witness.map(|f| f.to_string()), "strictness_witness": witness }))])
        }
        DeduceCmd::Unfold { formula } => trace_records(&formula.parse()?),
        DeduceCmd::Witness { witnesses } => {
            let w = ultimate_witness(&formulas(witnesses)?)?;
            Ok(vec![rec(w.to_string(), json!({ "ultraword": w.to_string() }))])
        }
    }
}

fn trace_records(w: &Formula) -> Fallible<Vec<Record>> {
    let trace = unfold(w)?;
    Ok(trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let why = match s.justification {
                ultralogic::logic::Justification::Hypothesis => "hypothesis".to_string(),
                ultralogic::logic::Justification::Axiom { schema } => format!("schema {schema}"),
                ultralogic::logic::Justification::ModusPonens { minor, major } => format!("MP {minor}, {major}"),
            };
            rec(format!("{i:>3}. {}    [{why}]", s.formula), json!({ "step": i, "formula": s.formula.to_string(), "justification": s.justification }))
        })
        .collect())
}

fn characterize_cmd(a: &CharacterizeArgs) -> Fallible<Vec<Record>> {
    let atoms: Vec<Formula> = a.atoms.iter().map(|n| Formula::atom(n.clone())).collect();
    let w = make_ultraword(&atoms)?;
    let c = characterize(&w)?;
    let list = |s: &FormulaSet| s.iter().map(Formula::to_string).collect::<Vec<_>>();
    let mut out = vec![
        rec(format!("ultraword: {w}"), json!({ "ultraword": w.to_string() })),
        rec(format!("Q ({}): {}", c.q_set.len(), list(&c.q_set).join("; ")), json!({ "q": list(&c.q_set) })),
        rec(format!("d′ ({}): {}", c.d_prime.len(), list(&c.d_prime).join("; ")), json!({ "d_prime": list(&c.d_prime) })),
        rec(format!("disjoint: {}", c.disjoint()), json!({ "disjoint": c.disjoint() })),
    ];
    if a.trace {
        out.extend(trace_records(&w)?);
    }
    Ok(out)
}

fn lattice(a: &OmcheckArgs) -> Fallible<(String, OrthoLattice)> {
    match (&a.lattice, &a.file) {
        (_, Some(p)) => Ok((p.display().to_string(), OrthoLattice::from_json(&read(p)?)?)),
        (Some(name), None) => Ok((name.clone(), builtin(name).ok_or_else(|| format!("unknown lattice `{name}`; try mo2, boolean2, boolean4, boolean8"))?)),
        (None, None) => Ok(("mo2".into(), builtin("mo2").expect("built in"))),
    }
}

fn omcheck(a: &OmcheckArgs) -> Fallible<Output> {
    let (name, l) = lattice(a)?;
    let mut out = Output::default();
    let violation = validate_orthomodular(&l);
    out.failed |= violation.is_some();
    out.records.push(rec(
        match &violation {
            None => format!("{name}: orthomodular ({} elements)", l.len()),
            Some(v) => format!("{name}: not orthomodular: {v}"),
        },
        json!({ "lattice": name, "elements": l.len(), "orthomodular": violation.is_none(), "violation": violation }),
    ));
    let schemata: Vec<u8> = if a.schema.is_empty() { vec![1, 2, 3, 4] } else { a.schema.clone() };
    for s in schemata {
        let v = axiom_validity(&l, s)?;
        out.failed |= !v.valid;
        let failing = v.failing.as_ref().map(|m| m.iter().map(|(k, e)| format!("{k}={e}")).collect::<Vec<_>>().join(" "));
        let text = format!("schema {s}: {} over {} assignments{}", if v.valid { "I" } else { "FAILED" }, v.assignments, failing.map(|f| format!(", fails at {f}")).unwrap_or_default());
        out.records.push(rec(text, serde_json::to_value(&v)?));
    }
    if let Some(pair) = &a.conditional {
        let (x, y) = (l.element(&pair[0])?, l.element(&pair[1])?);
        let r = l.name(mittelstaedt(&l, x, y)).to_string();
        out.records.push(rec(format!("i1({}, {}) = {r}", pair[0], pair[1]), json!({ "a": pair[0], "b": pair[1], "i1": r })));
    }
    Ok(out)
}

fn describe(x: &HyperReal) -> Record {
    let st = x.st().ok().map(|c| c.to_string());
    let text = format!("{x}    class: {}{}", x.classify(), st.as_ref().map(|s| format!(", st: {s}")).unwrap_or_default());
    rec(text, json!({ "value": x, "class": x.classify().to_string(), "st": st }))
}

fn hyper(cmd: &HyperCmd, cfg: &RunConfig) -> Fallible<Vec<Record>> {
    match cmd {
        HyperCmd::Show { x } => Ok(vec![describe(&series(x, cfg)?)]),
        HyperCmd::Calc { x, op, y } => {
            let (x, y) = (series(x, cfg)?, series(y, cfg)?);
            let r = match op.as_str() {
                "+" => x.add(&y),
                "-" => x.sub(&y),
                "*" | "x" => x.mul(&y)?,
                "/" => x.div(&y)?,
                "cmp" => {
                    let o = format!("{:?}", x.compare(&y)).to_lowercase();
                    return Ok(vec![rec(o.clone(), json!({ "ordering": o }))]);
                }
                "monad" => {
                    let same = x.monad_eq(&y);
                    return Ok(vec![rec(same.to_string(), json!({ "monad_eq": same }))]);
                }
                other => return Err(format!("unknown operator `{other}`; use + - * / cmp monad").into()),
            };
            Ok(vec![describe(&r)])
        }
        HyperCmd::Pow { x, n } => Ok(vec![describe(&series(x, cfg)?.powi(*n)?)]),
        HyperCmd::Lift { func, x, half_pi } => {
            let f: Transcendental = func.parse()?;
            let x = series(x, cfg)?;
            let r = if *half_pi { lift_half_pi(f, &x, cfg.precision)? } else { lift(f, &x, cfg.precision)? };
            Ok(vec![describe(&r)])
        }
        HyperCmd::Approx(a) => approx(a),
        HyperCmd::Hypernat { r } => {
            let lam = hypernat_for(&rational(r)?)?;
            Ok(vec![describe(lam.value())])
        }
        HyperCmd::Hypersum { count, summand } => {
            let n = NatLike::new(series(count, cfg)?)?;
            Ok(vec![describe(&hypersum_const(&n, &series(summand, cfg)?)?)])
        }
    }
}

fn approx(a: &ApproxArgs) -> Fallible<Vec<Record>> {
    let r = rational(&a.r)?;
    let m: BigInt = a.m.parse().map_err(|_| format!("`{}` is not an integer", a.m))?;
    if m <= BigInt::from(0) {
        return Err("m must be positive".into());
    }
    let ap = approximate_shadow(&r, &m);
    Ok(vec![rec(ap.to_string(), json!({ "r": format_rational(&r), "f": ap.f.to_string(), "m": ap.m.to_string(), "gap": format_rational(&ap.gap), "certified": ap.certified() }))])
}

fn glue_fn(src: &GlueSource, cfg: &RunConfig) -> Fallible<GlueFunction> {
    let (spec, delta) = match &src.spec {
        Some(p) => {
            let file = GlueSpecFile::from_json(&read(p)?)?;
            (file.spec()?, file.delta()?)
        }
        None => (neutron_spec(), Delta::epsilon()),
    };
    let delta = match &src.delta {
        Some(d) => Delta::parse(d)?,
        None => delta,
    };
    Ok(build_glue_with_precision(spec, delta, cfg.precision)?)
}

fn glue(cmd: &GlueCmd, cfg: &RunConfig) -> Fallible<Vec<Record>> {
    match cmd {
        GlueCmd::Eval { src, x } => Ok(vec![describe(&glue_fn(src, cfg)?.eval(&series(x, cfg)?)?)]),
        GlueCmd::Deriv { src, m, x } => Ok(vec![describe(&glue_fn(src, cfg)?.derivative(*m, &series(x, cfg)?)?)]),
        GlueCmd::St { src, x } => {
            let c = glue_fn(src, cfg)?.st_restrict(&rational(x)?)?;
            Ok(vec![rec(c.to_string(), json!({ "x": x, "st": c.to_string() }))])
        }
        GlueCmd::Range { src } => {
            let r = glue_fn(src, cfg)?.range_check()?;
            let (c, d) = (format_rational(&r.c), format_rational(&r.d));
            let mut out = vec![rec(format!("range [{c}, {d}], certified: {}", r.certified), json!({ "c": c, "d": d, "certified": r.certified }))];
            out.extend(r.samples.iter().map(|(x, y)| rec(format!("G({x}) = {y}"), json!({ "x": x, "g": y }))));
            Ok(out)
        }
        GlueCmd::Sample { src, points, emit_csv } => {
            let rows = glue_fn(src, cfg)?.samples(*points)?;
            let mut out = Vec::new();
            if *emit_csv {
                out.push(rec("x,g,dg", Value::Null));
            }
            for (x, g, dg) in rows {
                let xs = format_rational(&x);
                let text = if *emit_csv { format!("{xs},{g},{dg}") } else { format!("x = {xs}    G = {g}    G′ = {dg}") };
                out.push(rec(text, json!({ "x": xs, "g": g, "dg": dg })));
            }
            if *emit_csv {
                // CSV stays CSV under --json
                for r in &mut out {
                    r.json = Value::String(r.text.clone());
                }
            }
            Ok(out)
        }
        GlueCmd::Telescope { src, from, to, mesh, avoid } => {
            let g = glue_fn(src, cfg)?;
            let p = special_partition(&rational(from)?, &rational(to)?, &rational(mesh)?)?;
            let avoid: BTreeSet<Rational> = avoid.iter().map(|a| rational(a)).collect::<Fallible<_>>()?;
            let sel = avoiding_refinement(&p, &avoid)?;
            let t = telescope(|x| g.eval_rational(x), &sel)?;
            let mut out: Vec<Record> = sel
                .windows(2)
                .zip(&t.increments)
                .map(|(w, d)| {
                    let (a, b) = (format_rational(&w[0]), format_rational(&w[1]));
                    rec(format!("[{a}, {b}]  {d}"), json!({ "from": a, "to": b, "increment": d }))
                })
                .collect();
            let mut summary = json!({ "total": t.total, "endpoint_difference": t.endpoint_difference, "exact": t.exact(), "max_increment": t.max_increment });
            let mut text = format!("total {} = G(T) − G(a) {}: {}; max increment {}", t.total, t.endpoint_difference, t.exact(), t.max_increment);
            if !g.is_infinitesimal() {
                let bound = increment_bound(&g, &max_gap(&sel))?;
                text.push_str(&format!(", bound {bound}"));
                summary["bound"] = json!(bound.to_string());
            }
            out.push(rec(text, summary));
            Ok(out)
        }
    }
}

fn rep_records(p: &SubparticleRep) -> Vec<Record> {
    let mut out = vec![rec(format!("identifier: {}", p.a1), json!({ "identifier": p.a1.to_string(), "value": p.a1.value().map(|v| v.to_string()), "count": p.a2, "dims": p.dims }))];
    if let Some(v) = p.a1.value() {
        out.push(rec(format!("value: {v}"), json!({ "value": v.to_string() })));
    }
    out.push(rec(format!("count: {}", p.a2), json!({ "count": p.a2 })));
    out.extend(p.coords.iter().map(|(k, v)| rec(format!("a{k} = {v}"), json!({ "coord": k, "value": v }))));
    out
}

fn entity(path: &Path, cfg: &RunConfig) -> Fallible<SubparticleRep> {
    Ok(EntityFile::from_json(&read(path)?)?.build(&cfg.subparticle()?)?)
}

fn subp(cmd: &SubpCmd, cfg: &RunConfig) -> Fallible<Vec<Record>> {
    match cmd {
        SubpCmd::New { name, dims } => Ok(rep_records(&new_ultrasubparticle(*name, *dims, &cfg.subparticle()?)?)),
        SubpCmd::Build { file } => Ok(rep_records(&entity(file, cfg)?)),
        SubpCmd::Combine { files } => {
            let parts: Vec<SubparticleRep> = files.iter().map(|f| entity(f, cfg)).collect::<Fallible<_>>()?;
            Ok(rep_records(&combine(&parts)?))
        }
        SubpCmd::Project { file, perturb, coord } => {
            let mut p = entity(file, cfg)?;
            if !perturb.is_empty() {
                let zetas: Vec<HyperReal> = perturb.iter().map(|z| series(z, cfg)).collect::<Fallible<_>>()?;
                p = add_perturbations(&p, &zetas, *coord)?;
            }
            let proj = project_standard(&p)?;
            let mut out: Vec<Record> = proj.coords.iter().map(|(k, v)| rec(format!("a{k} = {}", format_rational(v)), json!({ "coord": k, "st": format_rational(v) }))).collect();
            let zeroed: Vec<String> = proj.zeroed.iter().map(|k| format!("a{k}")).collect();
            out.push(rec(format!("zeroed: {}", zeroed.join(" ")), json!({ "zeroed": proj.zeroed })));
            Ok(out)
        }
        SubpCmd::Diagonal { file, lambda } => {
            let mut lambdas = BTreeMap::new();
            for item in lambda {
                let (k, v) = item.split_once('=').ok_or_else(|| format!("expected k=series, got `{item}`"))?;
                lambdas.insert(k.trim().parse::<usize>()?, series(v, cfg)?);
            }
            Ok(rep_records(&apply_diagonal(&lambdas, &entity(file, cfg)?)?))
        }
        SubpCmd::Decode { value } => {
            let n: BigUint = value.parse().map_err(|_| format!("`{value}` is not a natural number"))?;
            let d = decode(&n, &cfg.subparticle()?)?;
            let mut out: Vec<Record> = d
                .characteristics
                .iter()
                .map(|c| rec(format!("characteristic {}: exponent {}", c.i, c.exponent), json!({ "characteristic": c.i, "exponent": c.exponent })))
                .collect();
            let names: Vec<String> = d.constituents.iter().map(|(p, k)| if *k == 1 { p.to_string() } else { format!("{p}^{k}") }).collect();
            out.push(rec(format!("constituents: {}", names.join(" ")), json!({ "constituents": d.constituents })));
            Ok(out)
        }
        SubpCmd::Ke { m, v } => Ok(vec![describe(&ultrafast_ke(&series(m, cfg)?, &series(v, cfg)?)?)]),
        SubpCmd::Coin(a) => coin(a),
    }
}

fn coin(a: &CoinArgs) -> Fallible<Vec<Record>> {
    let seq = coin_sequence(&rational(&a.x)?, a.count)?;
    if a.stats {
        let s = coin_statistics(&seq);
        let text = format!("n {} heads {} |freq − 1/2| {:.4} runs {} z {:.3}", s.n, s.heads, s.frequency_deviation, s.runs, s.runs_z);
        return Ok(vec![rec(text, serde_json::to_value(&s)?)]);
    }
    let flips: Vec<String> = seq.iter().map(ToString::to_string).collect();
    Ok(vec![rec(flips.join(","), json!({ "flips": flips }))])
}

fn run_suite(a: &SuiteArgs, cfg: &RunConfig) -> Fallible<Output> {
    let results = if a.criterion.is_empty() || a.all { suite::run_all(cfg.seed) } else { suite::run(&a.criterion, cfg.seed) };
    let failed = results.iter().any(|r| !r.passed);
    let mut records: Vec<Record> = results.iter().map(|r| rec(r.to_string(), serde_json::to_value(r).unwrap_or(Value::Null))).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    records.push(rec(format!("{passed}/{} passed (seed {})", results.len(), cfg.seed), json!({ "passed": passed, "total": results.len(), "seed": cfg.seed })));
    Ok(Output { records, failed })
}
