//! Text and JSON renderings of decompositions, and the literal syntax for
//! classes and phases shared with the command-line tool.
//!
//! Class literals: `P(12)`, `P(12;1/3)`, `P(1;-1)`, `P(1;0.6+0.8i)`,
//! `P((12)^inf)`, `P((1|2)^inf)`, `Int(12)`. Phases: `1`, `-1`, `i`, `-i`,
//! `k/p` (meaning `e^{2πik/p}`) or `re±imi`.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::rep::{Decomposition, Multiplicity, Phase, RepClass, RepError};
use crate::words::{TailWord, Word, WordError};

fn alphabet(d: &Decomposition) -> usize {
    d.matrix.as_ref().map_or_else(
        || {
            d.entries()
                .iter()
                .flat_map(|(c, _)| match c {
                    RepClass::Finite { word, .. } | RepClass::Integral { word } => {
                        word.as_slice().to_vec()
                    }
                    RepClass::Tail { tail } => tail.period().as_slice().to_vec(),
                    RepClass::Aperiodic { prefix, .. } => prefix.as_slice().to_vec(),
                })
                .max()
                .unwrap_or(0)
        },
        |a| a.n(),
    )
}

/// One line such as `P(1) (+) P(2)^(inf)`, or `(empty)`. Unresolved
/// components follow on a second line.
pub fn render_text(d: &Decomposition) -> String {
    let n = alphabet(d);
    let mut parts: Vec<String> = d
        .entries()
        .iter()
        .map(|(c, m)| match m {
            Multiplicity::Finite(1) => c.literal_for(n),
            _ => format!("{}^({m})", c.literal_for(n)),
        })
        .collect();
    if d.aperiodic_tails {
        parts.push("[non-eventually-periodic classes]".into());
    }
    let mut out = if parts.is_empty() {
        "(empty)".to_string()
    } else {
        parts.join(" (+) ")
    };
    if !d.unresolved.is_empty() {
        let firsts: Vec<&str> = d.unresolved.iter().map(|u| u.first.as_str()).collect();
        out.push_str(&format!(
            "\nunresolved: {} component(s) at {}",
            d.unresolved.len(),
            firsts.join(", ")
        ));
    }
    out
}

#[derive(Serialize)]
struct Component {
    kind: &'static str,
    word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<Phase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<String>,
    multiplicity: Multiplicity,
}

pub fn render_json(d: &Decomposition) -> Value {
    let n = alphabet(d);
    let components: Vec<Component> = d
        .entries()
        .iter()
        .map(|(c, m)| {
            let (word, phase, generator) = match c {
                RepClass::Finite { word, phase } => (word.literal_for(n), Some(*phase), None),
                RepClass::Tail { tail } => (
                    format!(
                        "{}|({})",
                        tail.preperiod().literal_for(n),
                        tail.period().literal_for(n)
                    ),
                    None,
                    None,
                ),
                RepClass::Integral { word } => (word.literal_for(n), None, None),
                RepClass::Aperiodic { name, prefix } => {
                    (prefix.literal_for(n), None, Some(name.clone()))
                }
            };
            Component {
                kind: c.kind(),
                word,
                phase,
                generator,
                multiplicity: *m,
            }
        })
        .collect();
    json!({
        "matrix": d.matrix.as_ref().map(|a| a.rows()),
        "level": d.level,
        "components": components,
        "unresolved": d.unresolved,
        "aperiodic_tails": d.aperiodic_tails,
    })
}

fn parse_err(what: &'static str, input: &str) -> RepError {
    RepError::Word(WordError::Parse {
        what,
        input: input.to_string(),
    })
}

pub fn parse_phase(s: &str) -> Result<Phase, RepError> {
    let t = s.trim();
    let err = || parse_err("phase", t);
    match t {
        "1" => return Ok(Phase::ONE),
        "-1" => return Phase::rotation(1, 2),
        "i" => return Phase::rotation(1, 4),
        "-i" => return Phase::rotation(3, 4),
        _ => {}
    }
    if let Some((k, p)) = t.split_once('/') {
        let k: i64 = k.trim().parse().map_err(|_| err())?;
        let p: u64 = p.trim().parse().map_err(|_| err())?;
        return Phase::rotation(k, p);
    }
    let body = t.strip_suffix('i').ok_or_else(err)?;
    // split at the sign of the imaginary part, skipping a leading sign and exponents
    let cut = body
        .char_indices()
        .skip(1)
        .filter(|&(ix, ch)| (ch == '+' || ch == '-') && !body[..ix].ends_with(['e', 'E']))
        .map(|(ix, _)| ix)
        .last()
        .ok_or_else(err)?;
    let re: f64 = body[..cut].parse().map_err(|_| err())?;
    let im: f64 = body[cut..].parse().map_err(|_| err())?;
    Phase::from_complex(Complex64::new(re, im))
}

pub fn parse_class(s: &str) -> Result<RepClass, RepError> {
    let t = s.trim();
    let err = || parse_err("class", t);
    if let Some(inner) = t.strip_prefix("Int(").and_then(|r| r.strip_suffix(')')) {
        return RepClass::integral(Word::parse(inner)?);
    }
    let inner = t
        .strip_prefix("P(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(err)?;
    if let Some(tail) = inner
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(")^inf"))
    {
        let tw = match tail.split_once('|') {
            Some((pre, period)) => TailWord::new(Word::parse(pre)?, Word::parse(period)?)?,
            None => TailWord::periodic(Word::parse(tail)?)?,
        };
        return RepClass::tail(&tw);
    }
    let (word, phase) = match inner.split_once(';') {
        Some((w, z)) => (w, parse_phase(z)?),
        None => (inner, Phase::ONE),
    };
    let word = Word::parse(word)?;
    if word.is_empty() {
        return Err(err());
    }
    RepClass::finite(word, phase)
}
