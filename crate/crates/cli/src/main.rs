use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use raag_core::cancel::acyl_sample;
use raag_core::classify::{self, Witness};
use raag_core::distance;
use raag_core::extension::{self, ExtSnapshot, ExtVertex};
use raag_core::link;
use raag_core::verify::verify_all;
use raag_core::{Element, Error, Graph, Raag};

mod schema;

#[derive(Parser)]
#[command(
    name = "raag",
    version,
    about = "Exact computation in right-angled Artin groups and their extension graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Print the JSON output schemas and exit.
    #[arg(long)]
    help_schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file: one line per vertex, `v: u w x`.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct WordArg {
    #[command(flatten)]
    graph: GraphArg,
    /// Word literal such as "a b^-1 c^2".
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct BudgetArg {
    /// Longest conjugator in the snapshot.
    #[arg(long = "L", default_value_t = 3)]
    max_len: usize,
    /// Largest syllable exponent in the snapshot.
    #[arg(long = "E", default_value_t = 1)]
    max_exp: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Reduce(WordArg),
    /// Word, syllable and star length, with a shortest star factorization.
    Length(WordArg),
    /// Elliptic or loxodromic, with a witness.
    Classify(WordArg),
    /// Star lengths of the powers g^1 .. g^n.
    Growth {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Search for relations among powers of loxodromic elements.
    Freeness {
        #[command(flatten)]
        graph: GraphArg,
        /// Generators; repeat the flag for each.
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[arg(long = "N", default_value_t = 2)]
        power: u32,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Finite part of the extension graph.
    Snapshot {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        budget: BudgetArg,
        /// Report only the girth.
        #[arg(long)]
        girth: bool,
    },
    /// Distances between two extension-graph vertices, written `v` or `v^(word)`.
    Distance {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Projection of a target onto the link of a centre.
    Project {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        center: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Sampled bound on link projections along far-apart pairs.
    BgitScan {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare syllable length with sums of link distances.
    DistanceFormula {
        #[command(flatten)]
        word: WordArg,
        /// Use the tree form (graph must be a tree).
        #[arg(long)]
        tree: bool,
    },
    /// Count short elements absorbed between long x and y.
    AcylSample {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long = "E", default_value_t = 2)]
        max_exp: usize,
        /// Word-length cap of the enumerated ball.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every property check.
    VerifyAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

/// A result plus whether every asserted inequality held.
struct Outcome {
    value: Value,
    pass: bool,
    dot: Option<String>,
    text: Option<String>,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome {
            value,
            pass: true,
            dot: None,
            text: None,
        }
    }

    fn judged(value: Value, pass: bool) -> Self {
        Outcome {
            pass,
            ..Outcome::ok(value)
        }
    }
}

fn load(g: &GraphArg) -> anyhow::Result<Raag> {
    let text = std::fs::read_to_string(&g.graph).with_context(|| format!("reading {}", g.graph.display()))?;
    let graph = Graph::parse(&text).with_context(|| format!("in {}", g.graph.display()))?;
    Ok(Raag::new(graph))
}

fn element(raag: &Raag, w: &str) -> anyhow::Result<Element> {
    raag.parse(w).with_context(|| format!("in word `{w}`"))
}

/// `v` or `v^(word)`.
fn ext_vertex(raag: &Raag, s: &str) -> anyhow::Result<ExtVertex> {
    let s = s.trim();
    let (base, conj) = match s.split_once("^(") {
        Some((b, rest)) => {
            let w = rest
                .strip_suffix(')')
                .ok_or_else(|| anyhow!("missing `)` in vertex `{s}`"))?;
            (b.trim(), element(raag, w)?)
        }
        None => (s, Element::identity()),
    };
    let v = raag.graph().vertex(base)?;
    Ok(extension::canonical_vertex(raag, v, &conj))
}

fn witness_json(raag: &Raag, w: &Witness) -> Value {
    let g = raag.graph();
    match w {
        Witness::None => json!(null),
        Witness::Join { left, right } => json!({"join": [g.set_labels(*left), g.set_labels(*right)]}),
        Witness::Star { center } => json!({"vertex_power": g.label(*center)}),
        Witness::Loop { walk } => {
            json!({"opposite_loop": walk.iter().map(|&v| g.label(v)).collect::<Vec<_>>()})
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Command::Reduce(a) => {
            let r = load(&a.graph)?;
            let w = r.parse_word(&a.word)?;
            let e = r.reduce(&w);
            let nf = r.format(&e);
            Outcome {
                text: Some(nf.clone()),
                ..Outcome::ok(json!({"input": a.word, "normal_form": nf, "length": e.len()}))
            }
        }
        Command::Length(a) => {
            let r = load(&a.graph)?;
            let e = element(&r, &a.word)?;
            let f = r.star_factorization(&e);
            Outcome::ok(json!({
                "element": r.format(&e),
                "word_length": e.len(),
                "syllable_length": e.syllable_length(),
                "star_length": f.len(),
                "factorization": r.factorization_report(&f),
            }))
        }
        Command::Classify(a) => {
            let r = load(&a.graph)?;
            let e = element(&r, &a.word)?;
            let t = classify::classify(&r, &e);
            t.validate(r.graph())?;
            Outcome::ok(json!({
                "element": r.format(&e),
                "kind": t.kind,
                "core": r.format(&t.core),
                "conjugator": r.format(&t.conjugator),
                "witness": witness_json(&r, &t.witness),
                "pure": classify::is_pure(&r, &e),
            }))
        }
        Command::Growth { word, n } => {
            let r = load(&word.graph)?;
            let e = element(&r, &word.word)?;
            let kind = classify::classify(&r, &e).kind;
            let series = classify::power_star_growth(&r, &e, n);
            Outcome::ok(json!({"element": r.format(&e), "kind": kind, "series": series}))
        }
        Command::Freeness {
            graph,
            words,
            power,
            max_len,
        } => {
            let r = load(&graph)?;
            let gens = words
                .iter()
                .map(|w| element(&r, w))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let rel = classify::sample_free_relations(&r, &gens, power, max_len)?;
            let pass = rel.is_empty();
            Outcome::judged(
                json!({
                    "generators": gens.iter().map(|g| r.format(g)).collect::<Vec<_>>(),
                    "N": power,
                    "max_len": max_len,
                    "relations": rel,
                    "pass": pass,
                }),
                pass,
            )
        }
        Command::Snapshot { graph, budget, girth } => {
            let r = load(&graph)?;
            let s = ExtSnapshot::build(&r, budget.max_len, budget.max_exp)?;
            if girth {
                let g = s.girth();
                Outcome {
                    text: Some(g.map_or("infinite".into(), |g| g.to_string())),
                    ..Outcome::ok(
                        json!({"budget": {"L": budget.max_len, "E": budget.max_exp}, "vertices": s.vertex_count(), "girth": g}),
                    )
                }
            } else {
                Outcome {
                    dot: Some(s.to_dot()),
                    text: Some(format!(
                        "{} vertices, {} edges, connected: {}",
                        s.vertex_count(),
                        s.edge_count(),
                        s.is_connected()
                    )),
                    ..Outcome::ok(serde_json::to_value(s.to_json())?)
                }
            }
        }
        Command::Distance {
            graph,
            from,
            to,
            budget,
        } => {
            let r = load(&graph)?;
            let (x, y) = (ext_vertex(&r, &from)?, ext_vertex(&r, &to)?);
            let covering = extension::covering_distance_exact(&r, &x, &y);
            let mut out = json!({
                "from": x.display(&r),
                "to": y.display(&r),
                "covering_distance": covering,
                "core": r.format(&extension::double_coset_core(&r, &x, &y)),
            });
            if r.graph().edge_count() == 0 {
                out["distance"] = json!(extension::free_distance(&r, &x, &y)?);
            } else {
                let s = ExtSnapshot::build(&r, budget.max_len, budget.max_exp)?;
                let d = if s.contains(&x) && s.contains(&y) {
                    s.graph_distance(&x, &y)?
                } else {
                    None
                };
                out["snapshot"] = json!({
                    "budget": {"L": budget.max_len, "E": budget.max_exp},
                    "distance": d.map(|d| d.value),
                    "exact": d.map(|d| d.exact),
                });
            }
            Outcome::ok(out)
        }
        Command::Project {
            graph,
            center,
            target,
            budget,
        } => {
            let r = load(&graph)?;
            let (c, t) = (ext_vertex(&r, &center)?, ext_vertex(&r, &target)?);
            let s = ExtSnapshot::build(&r, budget.max_len, budget.max_exp)?;
            Outcome::ok(serde_json::to_value(link::project(&s, &c, &t)?)?)
        }
        Command::BgitScan {
            graph,
            budget,
            samples,
            seed,
        } => {
            let r = load(&graph)?;
            let rep = link::bgit_scan(&r, budget.max_len, budget.max_exp, samples, seed)?;
            let pass = rep.violations == 0;
            Outcome::judged(serde_json::to_value(rep)?, pass)
        }
        Command::DistanceFormula { word, tree } => {
            let r = load(&word.graph)?;
            let e = element(&r, &word.word)?;
            if tree {
                let rep = distance::tree_distance_formula_check(&r, &e)?;
                let pass = rep.pass;
                Outcome::judged(serde_json::to_value(rep)?, pass)
            } else {
                let cert = distance::build_quasi_geodesic(&r, &e)?;
                let rep = distance::general_distance_formula_check(&r, &cert)?;
                let pass = rep.pass;
                Outcome::judged(serde_json::to_value(rep)?, pass)
            }
        }
        Command::AcylSample {
            graph,
            s,
            t,
            max_exp,
            max_len,
            trials,
            seed,
        } => {
            let r = load(&graph)?;
            let rep = acyl_sample(&r, s, t, max_exp, max_len, trials, seed)?;
            let pass = rep.violations == 0;
            Outcome::judged(serde_json::to_value(rep)?, pass)
        }
        Command::VerifyAll { seed, samples } => {
            let rep = verify_all(seed, samples);
            let pass = rep.pass;
            Outcome::judged(serde_json::to_value(rep)?, pass)
        }
    })
}

/// `key: value` lines for the top level of a JSON object.
fn as_text(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.help_schema {
        println!("{}", serde_json::to_string_pretty(&schema::schemas()).unwrap());
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        return ExitCode::from(2);
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(cmd) {
        Ok(o) => o,
        Err(e) => {
            let cause = e.chain().find_map(|c| c.downcast_ref::<Error>());
            eprintln!("error: {e:#}");
            if let Some(Error::CapExceeded { .. }) = cause {
                eprintln!("hint: lower --L/--E or the sample sizes");
            }
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.value).unwrap()),
        Format::Text => match &out.text {
            Some(t) => println!("{t}"),
            None => print!("{}", as_text(&out.value)),
        },
        Format::Dot => match &out.dot {
            Some(d) => print!("{d}"),
            None => {
                eprintln!("error: dot output is only available for `snapshot`");
                return ExitCode::from(2);
            }
        },
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use raag_core::classify::Kind;

    #[test]
    fn vertex_literals() {
        let r = Raag::new(Graph::cycle(5));
        assert_eq!(ext_vertex(&r, "a").unwrap(), ExtVertex::base_vertex(0));
        let x = ext_vertex(&r, "a^(c)").unwrap();
        assert_eq!(x.conj, r.parse("c").unwrap());
        // Conjugating by the star of the base does nothing.
        assert_eq!(ext_vertex(&r, "a^(b e)").unwrap(), ExtVertex::base_vertex(0));
        assert!(ext_vertex(&r, "a^(c").is_err());
        assert!(ext_vertex(&r, "z").is_err());
    }

    #[test]
    fn kind_serializes_in_snake_case() {
        assert_eq!(json!(Kind::Loxodromic), json!("loxodromic"));
    }
}
