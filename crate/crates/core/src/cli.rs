//! The `gml` command line.
//!
//! Data commands print one compact JSON document on stdout. `parse`,
//! `reduce` and `enum-terms` print plain text unless `--json` is given.
//! Exit codes: 0 on success, 1 when the answer is negative (an inequation
//! fails, an element is not found, a pair is invalid, a bound is exceeded),
//! 2 for unusable input (bad arguments, unreadable files, syntax errors).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::completion::{Completion, Element};
use crate::error::Error;
use crate::graph::{
    check_equation, check_inequation, extract_witness_subpair, member, Membership, DEFAULT_K_M, DEFAULT_K_N,
};
use crate::minimal::{enumerate_pair, nth_prime, relocate, search_counterexample};
use crate::pair::{environment_from_json, pair_from_json, pair_to_json, Atom, PartialPair};
use crate::semantics::{environment_for_pair, interpret, Environment};
use crate::term::{enumerate_closed_terms, godel_encode, normalize, parse, ReductionStatus, Term};

/// What a run produced: the exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { code: 0, stdout, stderr: String::new() }
    }

    fn json(code: i32, value: &Json) -> Self {
        CommandOutcome { code, stdout: format!("{value}\n"), stderr: String::new() }
    }

    fn usage(message: &str) -> Self {
        CommandOutcome { code: 2, stdout: String::new(), stderr: format!("{message}\n") }
    }

    fn failure(err: &Error) -> Self {
        let code = match err {
            Error::Syntax { .. } | Error::Io(_) | Error::Json(_) | Error::Format(_) => 2,
            _ => 1,
        };
        CommandOutcome { code, stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gml", version, about = "Graph models of the untyped λ-calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairArg {
    /// Partial pair file
    #[arg(long = "pair", value_name = "FILE")]
    pair: PathBuf,
}

#[derive(Args, Debug)]
struct EnvArg {
    /// Environment file
    #[arg(long = "env", value_name = "FILE")]
    env: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it back
    Parse {
        term: String,
        #[arg(long)]
        json: bool,
    },
    /// Normalise a term by leftmost-outermost β-reduction
    Reduce {
        term: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Interpret a term in a partial pair
    Interp {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        env: EnvArg,
        term: String,
        #[arg(long)]
        json: bool,
    },
    /// List or count the completion elements up to a rank
    Complete {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, value_name = "K")]
        rank: u32,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Least rank at which an element enters a term's approximation
    Member {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        env: EnvArg,
        #[arg(long, value_name = "K", default_value_t = DEFAULT_K_N)]
        rank: u32,
        term: String,
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Finite subpair re-deriving a member of a term's interpretation
    Witness {
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        env: EnvArg,
        #[arg(long, value_name = "K", default_value_t = DEFAULT_K_N)]
        rank: u32,
        term: String,
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Check `M <= N` or `M = N` in the completion of a pair
    Check {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long = "kM", value_name = "K", default_value_t = DEFAULT_K_M)]
        k_m: u32,
        #[arg(long = "kN", value_name = "K", default_value_t = DEFAULT_K_N)]
        k_n: u32,
        statement: String,
        #[arg(long)]
        json: bool,
    },
    /// The minimum graph model
    Minmodel {
        #[command(subcommand)]
        command: MinmodelCommand,
    },
    /// Operations on partial pairs
    Pair {
        #[command(subcommand)]
        command: PairCommand,
    },
    /// The first N closed terms in Gödel order
    EnumTerms {
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum MinmodelCommand {
    /// Scan components for a counterexample to `M <= N`
    Search {
        #[arg(long = "max-index", value_name = "K", default_value_t = 50)]
        max_index: usize,
        #[arg(long = "kM", value_name = "K", default_value_t = DEFAULT_K_M)]
        k_m: u32,
        #[arg(long = "kN", value_name = "K", default_value_t = DEFAULT_K_N)]
        k_n: u32,
        statement: String,
        #[arg(long)]
        json: bool,
    },
    /// The K-th finite pair and its relocated component
    Pair {
        k: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PairCommand {
    /// Check the partial pair invariants
    Validate {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        json: bool,
    },
    /// List the automorphisms
    Auts {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        json: bool,
    },
    /// Orbit partition under the automorphism group
    Orbits {
        #[command(flatten)]
        pair: PairArg,
        #[arg(long)]
        json: bool,
    },
    /// Union of two or more pairs
    Union {
        #[arg(long = "pair", value_name = "FILE", required = true, num_args = 1)]
        pairs: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

enum Statement {
    Below(Term, Term),
    Equal(Term, Term),
}

fn statement(text: &str) -> Result<Statement, Error> {
    let side = |s: &str, offset: usize| {
        parse(s).map_err(|e| match e {
            Error::Syntax { position, message } => Error::Syntax { position: position + offset, message },
            e => e,
        })
    };
    if let Some(i) = text.find("<=") {
        return Ok(Statement::Below(side(&text[..i], 0)?, side(&text[i + 2..], i + 2)?));
    }
    if let Some(i) = text.find('=') {
        return Ok(Statement::Equal(side(&text[..i], 0)?, side(&text[i + 1..], i + 1)?));
    }
    Err(Error::Syntax { position: text.len(), message: "expected `M <= N` or `M = N`".into() })
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_pair(path: &Path) -> Result<PartialPair, Error> {
    pair_from_json(&read(path)?)?.into_pair()
}

fn load_env(path: Option<&Path>, p: &PartialPair) -> Result<Environment<Atom>, Error> {
    match path {
        None => Ok(Environment::new()),
        Some(path) => environment_for_pair(&environment_from_json(&read(path)?)?, p),
    }
}

fn labels(p: &PartialPair, atoms: impl IntoIterator<Item = Atom>) -> Json {
    Json::from(atoms.into_iter().map(|a| p.label(a)).collect::<Vec<_>>())
}

/// Environment files name atoms of the pair; as completion environments
/// they denote sets of rank-0 elements.
fn element_env(env: &Environment<Atom>) -> Environment<Element> {
    env.map(|&a| Element::base(a))
}

fn dispatch(cli: Cli) -> Result<CommandOutcome, Error> {
    match cli.command {
        Command::Parse { term, json } => {
            let t = parse(&term)?;
            Ok(if json {
                CommandOutcome::json(
                    0,
                    &json!({
                        "term": t.to_string(),
                        "closed": t.is_closed(),
                        "size": t.size(),
                        "godel": godel_encode(&t).to_string(),
                    }),
                )
            } else {
                CommandOutcome::ok(format!("{t}\n"))
            })
        }
        Command::Reduce { term, budget, json } => {
            let r = normalize(&parse(&term)?, budget);
            let normal = r.status == ReductionStatus::NormalForm;
            let code = if normal { 0 } else { 1 };
            Ok(if json {
                let status = if normal { "normal_form" } else { "budget_exceeded" };
                CommandOutcome::json(code, &json!({"status": status, "term": r.term.to_string(), "steps": r.steps}))
            } else {
                let mut out = CommandOutcome::ok(format!("{}\n", r.term));
                out.code = code;
                if !normal {
                    out.stderr = format!("no normal form within {} steps\n", r.steps);
                }
                out
            })
        }
        Command::Interp { pair, env, term, .. } => {
            let p = load_pair(&pair.pair)?;
            let rho = load_env(env.env.as_deref(), &p)?;
            let set = interpret(&parse(&term)?, &p, &rho)?;
            Ok(CommandOutcome::json(0, &json!({"atoms": labels(&p, set)})))
        }
        Command::Complete { pair, rank, count, .. } => {
            let c = Completion::new(load_pair(&pair.pair)?);
            let elements = c.elements_up_to(rank)?;
            Ok(if count {
                CommandOutcome::json(0, &json!({"count": elements.len()}))
            } else {
                let list: Vec<String> = elements.iter().map(|e| e.render(c.pair())).collect();
                CommandOutcome::json(0, &json!({"count": list.len(), "elements": list}))
            })
        }
        Command::Member { pair, env, rank, term, element, .. } => {
            let p = load_pair(&pair.pair)?;
            let rho = element_env(&load_env(env.env.as_deref(), &p)?);
            let c = Completion::new(p);
            let e = c.parse_element(&element)?;
            let shown = e.render(c.pair());
            Ok(match member(&parse(&term)?, &c, &rho, &e, rank)? {
                Membership::Found(k) => CommandOutcome::json(0, &json!({"element": shown, "found": true, "rank": k})),
                Membership::NotFoundUpTo(k) => {
                    CommandOutcome::json(1, &json!({"element": shown, "found": false, "bound": k}))
                }
            })
        }
        Command::Witness { pair, env, rank, term, element, .. } => {
            let p = load_pair(&pair.pair)?;
            let rho = element_env(&load_env(env.env.as_deref(), &p)?);
            let c = Completion::new(p);
            let e = c.parse_element(&element)?;
            let w = extract_witness_subpair(&parse(&term)?, &c, &rho, &e, rank)?;
            Ok(CommandOutcome::json(
                0,
                &json!({
                    "element": e.render(c.pair()),
                    "atom": w.pair.label(w.atom),
                    "witness_subpair": pair_to_json(&w.pair),
                }),
            ))
        }
        Command::Check { pair, k_m, k_n, statement: text, .. } => {
            let c = Completion::new(load_pair(&pair.pair)?);
            Ok(match statement(&text)? {
                Statement::Below(m, n) => {
                    let v = check_inequation(&m, &n, &c, k_m, k_n)?;
                    CommandOutcome::json(if v.holds() { 0 } else { 1 }, &v.to_json(c.pair()))
                }
                Statement::Equal(m, n) => {
                    let v = check_equation(&m, &n, &c, k_m, k_n)?;
                    CommandOutcome::json(if v.holds() { 0 } else { 1 }, &v.to_json(c.pair()))
                }
            })
        }
        Command::Minmodel { command: MinmodelCommand::Search { max_index, k_m, k_n, statement: text, .. } } => {
            let (m, n) = match statement(&text)? {
                Statement::Below(m, n) => (m, n),
                Statement::Equal(..) => {
                    return Ok(CommandOutcome::usage("error: minmodel search takes an inequation `M <= N`"))
                }
            };
            Ok(match search_counterexample(&m, &n, max_index, k_m, k_n)? {
                Some((k, v)) => {
                    let p = relocate(k)?;
                    CommandOutcome::json(
                        1,
                        &json!({"component": k, "pair": pair_to_json(&p), "verdict": v.to_json(&p)}),
                    )
                }
                None => CommandOutcome::json(0, &json!({"component": null, "max_index": max_index})),
            })
        }
        Command::Minmodel { command: MinmodelCommand::Pair { k, .. } } => Ok(CommandOutcome::json(
            0,
            &json!({
                "index": k,
                "prime": nth_prime(k),
                "pair": pair_to_json(&enumerate_pair(k)),
                "component": pair_to_json(&relocate(k)?),
            }),
        )),
        Command::Pair { command } => pair_command(command),
        Command::EnumTerms { n, json } => {
            let terms = enumerate_closed_terms(n);
            Ok(if json {
                let list: Vec<Json> = terms
                    .iter()
                    .map(|t| json!({"term": t.to_string(), "godel": godel_encode(t).to_string()}))
                    .collect();
                CommandOutcome::json(0, &Json::from(list))
            } else {
                CommandOutcome::ok(terms.iter().map(|t| format!("{t}\n")).collect())
            })
        }
    }
}

fn pair_command(command: PairCommand) -> Result<CommandOutcome, Error> {
    match command {
        PairCommand::Validate { pair, .. } => {
            let data = pair_from_json(&read(&pair.pair)?)?;
            let report = data.validate();
            let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            let code = if report.is_ok() { 0 } else { 1 };
            Ok(CommandOutcome::json(code, &json!({"valid": report.is_ok(), "violations": violations})))
        }
        PairCommand::Auts { pair, .. } => {
            let p = load_pair(&pair.pair)?;
            let auts: Vec<BTreeMap<String, String>> = p
                .automorphisms()?
                .iter()
                .map(|m| m.map().iter().map(|(a, b)| (p.label(*a), p.label(*b))).collect())
                .collect();
            Ok(CommandOutcome::json(0, &json!({"count": auts.len(), "automorphisms": auts})))
        }
        PairCommand::Orbits { pair, .. } => {
            let p = load_pair(&pair.pair)?;
            let orbits: Vec<Json> = p.orbits()?.into_iter().map(|o| labels(&p, o)).collect();
            Ok(CommandOutcome::json(0, &json!({"orbits": orbits})))
        }
        PairCommand::Union { pairs, .. } => {
            // atoms are identified across files by label
            let mut ids: BTreeMap<String, Atom> = BTreeMap::new();
            let mut acc = PartialPair::empty();
            for path in &pairs {
                let p = load_pair(path)?;
                for &a in p.atoms() {
                    let fresh = Atom(ids.len() as u128);
                    ids.entry(p.label(a)).or_insert(fresh);
                }
                let moved = p.transport(|a| ids[&p.label(a)])?;
                acc = acc.union(&moved)?;
            }
            Ok(CommandOutcome::json(0, &pair_to_json(&acc)))
        }
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, S>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome::ok(e.to_string()),
                _ => {
                    let rendered = e.to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    CommandOutcome::usage(&format!("{first} (try `gml --help`)"))
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => out,
        Err(e) => CommandOutcome::failure(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_commands() {
        let out = run(["gml", "parse", "\\x.x x"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "\\x.x x\n");
        let out = run(["gml", "reduce", "I I"]);
        assert_eq!(out.stdout, "\\x.x\n");
        let out = run(["gml", "reduce", "--budget", "5", "Omega"]);
        assert_eq!(out.code, 1);
        let out = run(["gml", "enum-terms", "3"]);
        assert_eq!(out.stdout.lines().count(), 3);
    }

    #[test]
    fn usage_errors() {
        let out = run(["gml", "frobnicate"]);
        assert_eq!(out.code, 2);
        assert_eq!(out.stderr.lines().count(), 1);
        assert_eq!(run(["gml", "parse", "(x"]).code, 2);
        assert_eq!(run(["gml", "interp", "--pair", "/nonexistent.json", "I"]).code, 2);
    }

    #[test]
    fn statements() {
        assert!(matches!(statement("T <= F"), Ok(Statement::Below(..))));
        assert!(matches!(statement("I I = I"), Ok(Statement::Equal(..))));
        assert!(statement("I").is_err());
        match statement("I <= (") {
            Err(Error::Syntax { position, .. }) => assert!(position >= 5),
            other => panic!("{:?}", other.is_ok()),
        }
    }

    #[test]
    fn minmodel_pair() {
        let out = run(["gml", "minmodel", "pair", "5"]);
        assert_eq!(out.code, 0);
        let v: Json = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["prime"], 13);
        assert_eq!(v["component"]["atoms"], json!(["13"]));
    }
}
