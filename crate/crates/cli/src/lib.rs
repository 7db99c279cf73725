//! The `ck` command-line front end. Every verb parses its inputs, calls one
//! library operation and renders the result; nothing here classifies.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 internal invariant
//! violation.

use std::ffi::OsString;
use std::fmt::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ckrep::bfs::{
    build_chain_system, build_cycle_system, shift_bfs, standard_bfs, validate_bfs, ChainWord,
};
use ckrep::rep::{
    cross_check_standard, decompose, decompose_shift, decompose_standard, equivalent,
    expand_irreducible, gp_vector_check, is_pure, realize, state_value, twist_by_gauge,
    verify_ck_relations, Decomposition, Level, Multiplicity, Phase,
};
use ckrep::report::{parse_class, parse_phase, render_json, render_text};
use ckrep::words::{pspec_summary, tail_canonical, words_equivalent_infinite};
use ckrep::{BranchingSystem, TailWord, TransitionMatrix, Word};

#[derive(Parser, Debug)]
#[command(
    name = "ck",
    about = "Permutative representations of Cuntz-Krieger algebras"
)]
pub struct Cli {
    /// Transition matrix file: one row of 0/1 characters per line.
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation bound for standard systems.
    #[arg(long, global = true, default_value_t = 256)]
    truncate: usize,
    /// Tree depth for cycle and chain systems.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
    /// Largest period for shift decompositions and spectrum enumeration.
    #[arg(long, global = true, default_value_t = 6)]
    max_period: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Admissibility, periodicity and canonical form of a word.
    ClassifyWord {
        #[arg(long)]
        word: String,
    },
    /// Canonical rotation of a word, or canonical tail of an infinite word.
    Canon {
        #[arg(long, conflicts_with = "tail", required_unless_present = "tail")]
        word: Option<String>,
        #[arg(long)]
        tail: Option<String>,
    },
    /// Equivalence of two classes, two words (rotation) or two tails.
    Equiv {
        #[arg(long, num_args = 1)]
        class: Vec<String>,
        #[arg(long, num_args = 1)]
        word: Vec<String>,
        #[arg(long, num_args = 1)]
        tail: Vec<String>,
    },
    /// Decomposition of the standard representation.
    DecomposeStandard {
        /// Also compare with the cycles of truncated standard systems.
        #[arg(long)]
        cross_check: bool,
    },
    /// Periodic part of the shift representation.
    DecomposeShift,
    /// Decomposition of a branching function system.
    DecomposeBfs {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Irreducible decomposition of classes or of a system.
    Expand {
        #[arg(long, num_args = 1)]
        class: Vec<String>,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Cuntz-Krieger relations on a realized system.
    VerifyRelations {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Value of the cyclic-vector state on s_{J'} s_{J''}^*.
    State {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long, default_value = "")]
        right: String,
    },
    /// Finiteness of the permutative spectrum and bounded class counts.
    Pspec,
    /// Exact check of the vector witnessing P(J^p) inside the sum of P(J; xi^j).
    GpCheck {
        #[arg(long)]
        word: String,
        #[arg(long)]
        power: usize,
    },
    /// Class after composing with the gauge automorphism of (g_1, ..., g_N).
    Twist {
        #[arg(long)]
        class: String,
        /// Comma-separated phases.
        #[arg(long)]
        gauge: String,
    },
}

#[derive(Args, Debug, Default)]
struct SystemArgs {
    /// System in the dump format.
    #[arg(long)]
    input: Option<PathBuf>,
    /// The truncated standard system.
    #[arg(long)]
    standard: bool,
    /// The cycle system of a cyclically admissible word.
    #[arg(long)]
    cycle: Option<String>,
    /// The chain system of an eventually periodic word `pre|(period)`.
    #[arg(long)]
    chain: Option<String>,
    /// Spine length for --chain.
    #[arg(long, default_value_t = 8)]
    chain_len: usize,
    /// The shift system on descriptions of at most this length.
    #[arg(long)]
    shift: Option<usize>,
    /// Weight `i:x:z` on s_i e_x (x 1-based), repeatable.
    #[arg(long, num_args = 1)]
    phase: Vec<String>,
    /// Print the system in the dump format and stop.
    #[arg(long)]
    dump_bfs: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Marks a failed internal consistency check (exit code 2).
#[derive(Debug)]
struct Internal(String);

impl std::fmt::Display for Internal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal invariant violated: {}", self.0)
    }
}

impl std::error::Error for Internal {}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| execute(&cli))) {
        Ok(Ok(stdout)) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Ok(Err(e)) => {
            let code = if e.downcast_ref::<Internal>().is_some() {
                2
            } else {
                1
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e:#}\n"),
            }
        }
        Err(_) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: "error: internal invariant violated (panic)\n".into(),
        },
    }
}

fn load_matrix(cli: &Cli) -> Result<TransitionMatrix> {
    let path = cli
        .matrix
        .as_ref()
        .ok_or_else(|| anyhow!("--matrix is required for this verb"))?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading matrix file {}", path.display()))?;
    Ok(TransitionMatrix::parse(&text)?)
}

fn optional_matrix(cli: &Cli) -> Result<Option<TransitionMatrix>> {
    cli.matrix.as_ref().map(|_| load_matrix(cli)).transpose()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn decomposition_out(cli: &Cli, d: &Decomposition) -> String {
    if cli.json {
        pretty(&render_json(d))
    } else {
        format!("{}\n", render_text(d))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.verb {
        Verb::ClassifyWord { word } => classify_word(cli, word),
        Verb::Canon { word, tail } => canon(cli, word.as_deref(), tail.as_deref()),
        Verb::Equiv { class, word, tail } => equiv(cli, class, word, tail),
        Verb::DecomposeStandard { cross_check } => {
            let a = load_matrix(cli)?;
            let d = decompose_standard(&a);
            if *cross_check {
                let bs = [cli.truncate / 4, cli.truncate / 2, cli.truncate]
                    .into_iter()
                    .filter(|&b| b >= a.n())
                    .collect::<Vec<_>>();
                let check = cross_check_standard(&a, &bs)?;
                if !check.passed() {
                    return Err(Internal(format!(
                        "truncated standard systems disagree with the cycle set: {check:?}"
                    ))
                    .into());
                }
            }
            Ok(decomposition_out(cli, &d))
        }
        Verb::DecomposeShift => {
            let a = load_matrix(cli)?;
            Ok(decomposition_out(
                cli,
                &decompose_shift(&a, cli.max_period)?,
            ))
        }
        Verb::DecomposeBfs { system } => {
            let a = load_matrix(cli)?;
            let (f, phases) = match build_system(cli, &a, system)? {
                Built::Dump(text) => return Ok(text),
                Built::System(f, p) => (f, p),
            };
            Ok(decomposition_out(cli, &decompose(&f, &phases)?))
        }
        Verb::Expand { class, system } => {
            let d = if class.is_empty() {
                let a = load_matrix(cli)?;
                match build_system(cli, &a, system)? {
                    Built::Dump(text) => return Ok(text),
                    Built::System(f, p) => decompose(&f, &p)?,
                }
            } else {
                let a = optional_matrix(cli)?;
                let mut d = Decomposition::new(a.clone(), Level::Cyclic);
                for lit in class {
                    let c = parse_class(lit)?;
                    if let Some(a) = &a {
                        c.check(a)?;
                    }
                    d.add(c, Multiplicity::Finite(1));
                }
                d
            };
            Ok(decomposition_out(cli, &expand_irreducible(&d)))
        }
        Verb::VerifyRelations { system } => verify(cli, system),
        Verb::State { class, left, right } => {
            let a = load_matrix(cli)?;
            let c = parse_class(class)?;
            c.check(&a)?;
            let (j1, j2) = (Word::parse(left)?, Word::parse(right)?);
            let v = state_value(&a, &c, &j1, &j2)?;
            let pure = is_pure(&c)?;
            if cli.json {
                Ok(pretty(&json!({
                    "class": c.literal_for(a.n()),
                    "left": j1.literal_for(a.n()),
                    "right": j2.literal_for(a.n()),
                    "value": {"re": v.re, "im": v.im},
                    "pure": pure,
                })))
            } else {
                Ok(format!("{}\npure: {}\n", v.re, yes_no(pure)))
            }
        }
        Verb::Pspec => {
            let a = load_matrix(cli)?;
            let s = pspec_summary(&a, cli.max_period);
            if s.corroborated == Some(false) {
                return Err(
                    Internal("enumeration contradicts the finiteness verdict".into()).into(),
                );
            }
            if cli.json {
                return Ok(pretty(&serde_json::to_value(&s)?));
            }
            let mut out = String::new();
            let count = s.class_count.map_or("inf".to_string(), |c| c.to_string());
            writeln!(out, "finite: {}", yes_no(s.finite))?;
            writeln!(out, "classes: {count}")?;
            writeln!(out, "aperiodic tails: {}", yes_no(s.aperiodic_tails))?;
            let counts: Vec<String> = s.counts_by_length.iter().map(|c| c.to_string()).collect();
            writeln!(
                out,
                "counts by length 1..={}: {}",
                s.max_len,
                counts.join(" ")
            )?;
            Ok(out)
        }
        Verb::GpCheck { word, power } => {
            let a = load_matrix(cli)?;
            let r = gp_vector_check(&a, &Word::parse(word)?, *power)?;
            if !r.passed() {
                return Err(Internal(format!("vector check failed: {r:?}")).into());
            }
            if cli.json {
                return Ok(pretty(&serde_json::to_value(&r)?));
            }
            Ok(format!(
                "word {} power {}: fixed vector {}, orthonormal family of {} {}, decomposition {}\n",
                r.word,
                r.power,
                yes_no(r.fixed_vector),
                r.family_size,
                yes_no(r.orthonormal),
                if r.decomposition_matches { "matches" } else { "differs" }
            ))
        }
        Verb::Twist { class, gauge } => {
            let a = optional_matrix(cli)?;
            let c = parse_class(class)?;
            if let Some(a) = &a {
                c.check(a)?;
            }
            let g: Vec<Phase> = gauge
                .split(',')
                .map(parse_phase)
                .collect::<Result<_, _>>()?;
            if let Some(a) = &a {
                if g.len() != a.n() {
                    bail!("gauge has {} phases, matrix has N = {}", g.len(), a.n());
                }
            }
            let t = twist_by_gauge(&c, &g)?;
            let n = a.map_or(0, |a| a.n());
            let lit = if n == 0 {
                t.to_string()
            } else {
                t.literal_for(n)
            };
            if cli.json {
                Ok(pretty(&json!({ "class": lit })))
            } else {
                Ok(format!("{lit}\n"))
            }
        }
    }
}

fn classify_word(cli: &Cli, word: &str) -> Result<String> {
    let w = Word::parse(word)?;
    if w.is_empty() {
        bail!("word must be nonempty");
    }
    let a = optional_matrix(cli)?;
    let n = a.as_ref().map_or(0, |a| a.n());
    let lit = |x: &Word| {
        if n == 0 {
            x.literal()
        } else {
            x.literal_for(n)
        }
    };
    let (root, power) = w.primitive_root()?;
    let canonical = w.canonical_rotation()?;
    let (admissible, cyclic) = match &a {
        Some(a) => (
            Some(a.is_admissible(&w)?),
            Some(a.is_cyclically_admissible(&w)?),
        ),
        None => (None, None),
    };
    if cli.json {
        return Ok(pretty(&json!({
            "word": lit(&w),
            "canonical": lit(&canonical),
            "minimal": canonical == w,
            "periodic": power > 1,
            "primitive_root": lit(&root),
            "power": power,
            "admissible": admissible,
            "cyclically_admissible": cyclic,
        })));
    }
    let mut out = String::new();
    writeln!(out, "word: {}", lit(&w))?;
    writeln!(out, "canonical: {}", lit(&canonical))?;
    writeln!(out, "minimal: {}", yes_no(canonical == w))?;
    writeln!(out, "periodic: {}", yes_no(power > 1))?;
    writeln!(out, "primitive root: {} (power {power})", lit(&root))?;
    if let (Some(x), Some(y)) = (admissible, cyclic) {
        writeln!(out, "admissible: {}", yes_no(x))?;
        writeln!(out, "cyclically admissible: {}", yes_no(y))?;
    }
    Ok(out)
}

fn canon(cli: &Cli, word: Option<&str>, tail: Option<&str>) -> Result<String> {
    let lit = match (word, tail) {
        (Some(w), _) => {
            let w = Word::parse(w)?;
            if w.is_empty() {
                bail!("word must be nonempty");
            }
            let c = w.canonical_rotation()?;
            match optional_matrix(cli)? {
                Some(a) => {
                    a.check_word(&w)?;
                    c.literal_for(a.n())
                }
                None => c.literal(),
            }
        }
        (None, Some(t)) => {
            let a = load_matrix(cli)?;
            tail_canonical(&a, &TailWord::parse(t)?)?.literal()
        }
        (None, None) => bail!("one of --word or --tail is required"),
    };
    if cli.json {
        Ok(pretty(&json!({ "canonical": lit })))
    } else {
        Ok(format!("{lit}\n"))
    }
}

fn equiv(cli: &Cli, class: &[String], word: &[String], tail: &[String]) -> Result<String> {
    let verdict = match (class.len(), word.len(), tail.len()) {
        (2, 0, 0) => {
            let (c1, c2) = (parse_class(&class[0])?, parse_class(&class[1])?);
            if let Some(a) = optional_matrix(cli)? {
                c1.check(&a)?;
                c2.check(&a)?;
            }
            equivalent(&c1, &c2)
        }
        (0, 2, 0) => Word::parse(&word[0])?.equivalent(&Word::parse(&word[1])?)?,
        (0, 0, 2) => {
            let a = load_matrix(cli)?;
            words_equivalent_infinite(&a, &TailWord::parse(&tail[0])?, &TailWord::parse(&tail[1])?)?
        }
        _ => bail!("give exactly two of --class, --word or --tail"),
    };
    let s = if verdict {
        "equivalent"
    } else {
        "not equivalent"
    };
    if cli.json {
        Ok(pretty(&json!({ "equivalent": verdict })))
    } else {
        Ok(format!("{s}\n"))
    }
}

enum Built {
    System(BranchingSystem, Vec<(usize, usize, Phase)>),
    Dump(String),
}

fn build_system(cli: &Cli, a: &TransitionMatrix, s: &SystemArgs) -> Result<Built> {
    let chosen = [
        s.input.is_some(),
        s.standard,
        s.cycle.is_some(),
        s.chain.is_some(),
        s.shift.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        bail!("choose exactly one of --input, --standard, --cycle, --chain, --shift");
    }
    let f = if let Some(path) = &s.input {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading system dump {}", path.display()))?;
        BranchingSystem::from_dump(a, &text)?
    } else if s.standard {
        standard_bfs(a, cli.truncate)?
    } else if let Some(w) = &s.cycle {
        build_cycle_system(a, &Word::parse(w)?, cli.depth)?
    } else if let Some(t) = &s.chain {
        build_chain_system(
            a,
            &ChainWord::Tail(TailWord::parse(t)?),
            s.chain_len,
            cli.depth,
        )?
    } else {
        shift_bfs(a, s.shift.expect("counted above"))?
    };
    if s.dump_bfs {
        return Ok(Built::Dump(f.to_dump()));
    }
    let mut phases = Vec::new();
    for spec in &s.phase {
        let mut it = spec.splitn(3, ':');
        let (i, x, z) = match (it.next(), it.next(), it.next()) {
            (Some(i), Some(x), Some(z)) => (i, x, z),
            _ => bail!("phase must be i:x:z, got {spec:?}"),
        };
        let i: usize = i
            .parse()
            .with_context(|| format!("bad symbol in {spec:?}"))?;
        let x: usize = x
            .parse()
            .with_context(|| format!("bad point in {spec:?}"))?;
        if x == 0 || x > f.len() {
            bail!("point {x} outside 1..={}", f.len());
        }
        phases.push((i, x - 1, parse_phase(z)?));
    }
    Ok(Built::System(f, phases))
}

fn verify(cli: &Cli, s: &SystemArgs) -> Result<String> {
    let a = load_matrix(cli)?;
    let (f, phases) = match build_system(cli, &a, s)? {
        Built::Dump(text) => return Ok(text),
        Built::System(f, p) => (f, p),
    };
    let axioms = validate_bfs(&f);
    let relations = verify_ck_relations(&realize(&f, &phases)?);
    let out = if cli.json {
        pretty(&json!({ "axioms": axioms, "relations": relations }))
    } else {
        let mut out = String::new();
        writeln!(
            out,
            "axioms: {} points checked, {} violations",
            axioms.checked_points,
            axioms.violations.len()
        )?;
        writeln!(
            out,
            "relations: {} points checked, {} frontier skipped, {} violations",
            relations.checked_points,
            relations.skipped_frontier,
            relations.violations.len()
        )?;
        for v in axioms.violations.iter().take(20) {
            writeln!(out, "  axiom: {v:?}")?;
        }
        for v in relations.violations.iter().take(20) {
            writeln!(out, "  relation: {v:?}")?;
        }
        out
    };
    if axioms.is_valid() && relations.passed() {
        return Ok(out);
    }
    // a system read from a file is user input; one we built ourselves is not
    let msg = format!("{}the system fails its axioms or relations", out);
    if s.input.is_some() {
        Err(anyhow!(msg))
    } else {
        Err(Internal(msg).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_one() {
        let out = run(["ck", "no-such-verb"]);
        assert_eq!(out.code, 1);
        let out = run(["ck", "canon"]);
        assert_eq!(out.code, 1);
        assert_eq!(run(["ck", "--help"]).code, 0);
    }

    #[test]
    fn canon_without_matrix() {
        let out = run(["ck", "canon", "--word", "211"]);
        assert_eq!(
            out,
            Outcome {
                code: 0,
                stdout: "112\n".into(),
                stderr: String::new()
            }
        );
    }
}
