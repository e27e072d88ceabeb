use std::fmt::Write as _;

use padic_cubic::classifier::{classify, count_in, CubicInstance, DomainTag, LocationSignature};
use padic_cubic::oracle::{generate_from_roots, sweep, verify};
use padic_cubic::padic::rational_to_string;
use padic_cubic::residues::{cbrt_exists, monomial_root_count, monomial_solvable, sqrt_exists};
use padic_cubic::solver::all_roots_with;
use padic_cubic::{DigitExpansion, Error as CoreError, Limits, PadicRational, Valuation};
use serde_json::{json, Map, Value};

use crate::{CliError, Verb};

pub(crate) struct Document {
    pub json: Value,
    pub text: String,
    /// Set when an oracle check failed; the document is still printed.
    pub failure: Option<String>,
}

fn ok(json: Value, text: String) -> Result<Document, CliError> {
    Ok(Document {
        json,
        text,
        failure: None,
    })
}

fn q(x: &PadicRational) -> String {
    rational_to_string(x.value())
}

fn valuation_json(v: Valuation) -> Value {
    v.finite().map_or(Value::Null, Value::from)
}

fn signature_json(sig: &LocationSignature) -> Value {
    let mut m = Map::new();
    for (d, n) in sig.nonzero_atoms() {
        m.insert(d.name().into(), n.into());
    }
    Value::Object(m)
}

/// `p^v·(unit digits)` or just the unit digits when `v = 0`.
fn root_string(e: &DigitExpansion) -> String {
    if e.valuation == 0 {
        e.to_string()
    } else {
        format!("{}^{}·({})", e.prime, e.valuation, e)
    }
}

fn header(inst: &CubicInstance) -> (Map<String, Value>, String) {
    let mut m = Map::new();
    m.insert("p".into(), inst.prime().get().into());
    m.insert("a".into(), q(inst.a()).into());
    m.insert("b".into(), q(inst.b()).into());
    (m, format!("equation: {inst}\n"))
}

pub(crate) fn build(verb: &Verb, limits: &Limits) -> Result<Document, CliError> {
    match verb {
        Verb::Classify(inst) => classify_doc(inst),
        Verb::Count(inst) => count_doc(inst),
        Verb::Solve { instance, digits } => solve_doc(instance, *digits, limits),
        Verb::Residue { a, q: exponent } => residue_doc(a, *exponent),
        Verb::FpCount(fp) => {
            let v = fp.count_verdict();
            let json = json!({
                "p": fp.prime.get(),
                "a0": fp.a0,
                "b0": fp.b0,
                "D0": v.discriminant,
                "u_p_minus_2": v.u_p_minus_2,
                "count": v.count,
            });
            let text = format!(
                "equation: x^3 + {}x = {} over F_{}\nD0: {}\nu_p_minus_2: {}\ncount: {}\n",
                fp.a0, fp.b0, fp.prime, v.discriminant, v.u_p_minus_2, v.count
            );
            ok(json, text)
        }
        Verb::Verify { r1, r2, digits } => verify_doc(r1, r2, *digits, limits),
        Verb::Sweep {
            prime,
            count,
            seed,
            digits,
        } => {
            let rep = sweep(*prime, *count, *seed, *digits, limits);
            let status = if rep.failed == 0 { "PASS" } else { "FAIL" };
            let mut json = serde_json::to_value(&rep).expect("report serializes");
            json["status"] = status.into();
            let mut text = format!(
                "status: {status}\nprime: {}\nseed: {}\ninstances: {}\npassed: {}\nfailed: {}\n",
                rep.prime, rep.seed, rep.instances, rep.passed, rep.failed
            );
            for f in &rep.failures {
                let _ = writeln!(text, "failure: {}: {}", f.instance, f.issues.join("; "));
            }
            let failure = (rep.failed > 0)
                .then(|| format!("{} of {} sweep instances failed", rep.failed, rep.instances));
            Ok(Document {
                json,
                text,
                failure,
            })
        }
    }
}

fn classify_doc(inst: &CubicInstance) -> Result<Document, CliError> {
    let c = classify(inst)?;
    let (mut m, mut text) = header(inst);
    let counts: Map<String, Value> = c
        .counts
        .iter()
        .map(|(d, n)| (d.name().to_string(), (*n).into()))
        .collect();
    let solvable: Map<String, Value> = c
        .solvable
        .iter()
        .map(|(d, s)| (d.name().to_string(), (*s).into()))
        .collect();
    m.insert("region".into(), c.region.to_string().into());
    m.insert("signature".into(), signature_json(&c.signature));
    m.insert("total".into(), c.signature.total().into());
    m.insert("counts".into(), Value::Object(counts));
    m.insert("solvable".into(), Value::Object(solvable));
    m.insert("item".into(), c.item.map(|i| i.to_string()).into());
    m.insert(
        "unit_condition".into(),
        c.unit_condition.map(|u| u.label()).into(),
    );
    m.insert("D0".into(), c.discriminant.d0.into());
    m.insert(
        "dstar_valuation".into(),
        valuation_json(c.discriminant.valuation()),
    );

    let _ = writeln!(text, "region: {}", c.region);
    let _ = writeln!(text, "signature: {}", c.signature);
    let _ = writeln!(text, "total: {}", c.signature.total());
    if let Some(item) = c.item {
        let _ = writeln!(text, "item: {item}");
    }
    if let Some(u) = c.unit_condition {
        let _ = writeln!(text, "unit_condition: {}", u.label());
    }
    let _ = writeln!(text, "D0: {}", c.discriminant.d0);
    for (d, n) in &c.counts {
        let _ = writeln!(text, "count {}: {n}", d.name());
    }
    for (d, s) in &c.solvable {
        let _ = writeln!(text, "solvable {}: {s}", d.name());
    }
    ok(Value::Object(m), text)
}

const TALLIES: [DomainTag; 4] = [
    DomainTag::Units,
    DomainTag::SmallBall,
    DomainTag::Exterior,
    DomainTag::Whole,
];

fn count_doc(inst: &CubicInstance) -> Result<Document, CliError> {
    let (mut m, mut text) = header(inst);
    for d in TALLIES {
        let n = count_in(inst, d);
        m.insert(d.name().into(), n.into());
        let _ = writeln!(text, "{}: {n}", d.name());
    }
    ok(Value::Object(m), text)
}

fn solve_doc(inst: &CubicInstance, digits: usize, limits: &Limits) -> Result<Document, CliError> {
    let roots = all_roots_with(inst, digits, limits)?;
    let (mut m, mut text) = header(inst);
    let _ = writeln!(text, "digits: {digits}");
    let mut entries = Vec::new();
    let mut min_residual = Valuation::Infinite;
    for (i, r) in roots.iter().enumerate() {
        let value = r.truncated_value();
        let residual = inst.evaluate(&value).valuation();
        min_residual = min_residual.min(residual);
        let expansion = root_string(&r.expansion);
        entries.push(json!({
            "digits": r.expansion.digits,
            "expansion": expansion,
            "value": q(&value),
            "valuation": r.valuation,
            "domain": r.domain.name(),
            "multiplicity": r.multiplicity,
            "residual_exponent": valuation_json(residual),
            "unit_residual_exponent": valuation_json(r.residual),
        }));
        let _ = writeln!(
            text,
            "root {}: {expansion}  [valuation {}, {}, multiplicity {}, residual_exponent {}]",
            i + 1,
            r.valuation,
            r.domain.name(),
            r.multiplicity,
            residual
        );
    }
    let total: u8 = roots.iter().map(|r| r.multiplicity).sum();
    let _ = writeln!(text, "total: {total}");
    let _ = writeln!(text, "residual_exponent: {min_residual}");
    m.insert("digits".into(), digits.into());
    m.insert("total".into(), total.into());
    m.insert("roots".into(), Value::Array(entries));
    m.insert("residual_exponent".into(), valuation_json(min_residual));
    ok(Value::Object(m), text)
}

fn residue_doc(a: &PadicRational, exponent: Option<u64>) -> Result<Document, CliError> {
    let sqrt = sqrt_exists(a)?;
    let cbrt = cbrt_exists(a)?;
    let mut m = Map::new();
    m.insert("p".into(), a.prime().get().into());
    m.insert("a".into(), q(a).into());
    m.insert("sqrt".into(), sqrt.into());
    m.insert("cbrt".into(), cbrt.into());
    let mut text = format!(
        "a: {} over Q_{}\nsqrt: {sqrt}\ncbrt: {cbrt}\n",
        q(a),
        a.prime()
    );
    if let Some(e) = exponent {
        let solvable = monomial_solvable(a, e)?;
        let count = monomial_root_count(a, e)?;
        m.insert("q".into(), e.into());
        m.insert("qth_root".into(), solvable.into());
        m.insert("qth_root_count".into(), count.into());
        let _ = write!(
            text,
            "q: {e}\nqth_root: {solvable}\nqth_root_count: {count}\n"
        );
    }
    ok(Value::Object(m), text)
}

fn verify_doc(
    r1: &PadicRational,
    r2: &PadicRational,
    digits: usize,
    limits: &Limits,
) -> Result<Document, CliError> {
    let mut m = Map::new();
    m.insert("p".into(), r1.prime().get().into());
    m.insert("r1".into(), q(r1).into());
    m.insert("r2".into(), q(r2).into());
    let constructed = match generate_from_roots(r1, r2) {
        Ok(c) => c,
        Err(CoreError::DegenerateConstruction(reason)) => {
            m.insert("status".into(), "SKIPPED".into());
            m.insert("reason".into(), reason.clone().into());
            return ok(
                Value::Object(m),
                format!("status: SKIPPED\nreason: {reason}\n"),
            );
        }
        Err(e) => return Err(e.into()),
    };
    let rep = verify(&constructed, digits, limits);
    let status = if rep.passed() { "PASS" } else { "FAIL" };
    m.insert("status".into(), status.into());
    m.insert("a".into(), q(&constructed.a).into());
    m.insert("b".into(), q(&constructed.b).into());
    m.insert(
        "report".into(),
        serde_json::to_value(&rep).expect("report serializes"),
    );

    let sig =
        |s: &Option<LocationSignature>| s.map_or("unavailable".to_string(), |s| s.to_string());
    let mut text = format!(
        "status: {status}\nequation: {}\nexpected: {}\nclassified: {}\nsolved: {}\nroots matched: {}/{}\n",
        rep.instance,
        rep.expected,
        sig(&rep.classified),
        sig(&rep.solved),
        rep.roots_matched,
        rep.roots_expected
    );
    if rep.repeated_root {
        text.push_str("repeated root: yes\n");
    }
    for issue in &rep.issues {
        let _ = writeln!(text, "issue: {issue}");
    }
    let failure =
        (!rep.passed()).then(|| format!("verification failed: {}", rep.issues.join("; ")));
    Ok(Document {
        json: Value::Object(m),
        text,
        failure,
    })
}
