use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use qlocal::action::DEFAULT_MAX_INDEX;
use qlocal::catalog::{ground_truth_corpus, make_group, named_entries, GroupSpec};
use qlocal::compat::{build_witness, necessary_compat_check, witness_digraph, CompatProblemJson, SearchOptions, Strategy};
use qlocal::digraph::{local_action, orbital_digraph, stabilizer_series, strongly_connected, Digraph, Direction};
use qlocal::iso::perm_isomorphic;
use qlocal::qp::{classify_qp, is_quasiprimitive, ClassificationReport};
use qlocal::selftest::run_all;
use qlocal::structure::{composition_multiset_checked, is_soluble, simple_quotients, simple_sections, socle, SearchBudget};
use qlocal::{Error, PermGroup};

#[derive(Parser)]
#[command(name = "qlocal", version, about = "Local actions of vertex-transitive digraphs and quasiprimitive types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a JSON report instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Write the digraph produced by the command in DOT format.
    #[arg(long, global = true, value_name = "PATH")]
    digraph: Option<PathBuf>,
    /// Non-improving samples before a structural closure search stops.
    #[arg(long, global = true, default_value_t = 24)]
    budget_samples: usize,
    /// Largest normal-subgroup lattice enumerated for quotient tests.
    #[arg(long, global = true, default_value_t = 4096)]
    budget_lattice: usize,
    /// Random candidates tried by the witness search.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget_search: usize,
    /// Node budget of the permutation-isomorphism search.
    #[arg(long, global = true, default_value_t = qlocal::iso::DEFAULT_NODE_BUDGET)]
    budget_nodes: u64,
    /// Largest coset space built for an action.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INDEX)]
    budget_index: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Order, orbits, primitivity and normal structure of a group.
    Analyze {
        #[arg(long)]
        group: String,
    },
    /// Quasiprimitive type with its evidence.
    Classify {
        #[arg(long)]
        group: String,
    },
    /// Necessary conditions for two groups to be compatible.
    CompatCheck {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Builds and verifies a witness digraph for a compatibility problem.
    Witness {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
    },
    /// Orbital digraph of a group, or a digraph read from JSON, with its local actions.
    #[command(name = "digraph")]
    DigraphCmd {
        #[arg(long)]
        group: Option<String>,
        /// Arc `u,v` whose orbit under the group forms the orbital digraph.
        #[arg(long, value_name = "U,V")]
        arc: Option<String>,
        /// Digraph in JSON form `{"vertices": n, "arcs": [[u, v], ...]}`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Lists the bundled groups, or describes one of them.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
    /// Reproduces the acceptance checks.
    Selftest,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StrategyArg {
    Block,
    Backtrack,
    Auto,
}

/// Report plus exit status.
struct Outcome {
    report: Value,
    failed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print_report(&out.report, cli.common.json);
            ExitCode::from(if out.failed { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("qlocal: {e}");
            ExitCode::from(match e {
                Error::Budget(_) | Error::SearchFailed(_) => 3,
                _ => 1,
            })
        }
    }
}

fn print_report(v: &Value, as_json: bool) {
    let mut text = String::new();
    if as_json {
        text = serde_json::to_string_pretty(v).expect("serializable");
        text.push('\n');
    } else if let Value::Object(m) = v {
        render_lines(m, "", &mut text);
    } else {
        text = format!("{v}\n");
    }
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn render_lines(m: &Map<String, Value>, prefix: &str, out: &mut String) {
    for (k, v) in m {
        match v {
            Value::Object(inner) => render_lines(inner, &format!("{prefix}{k}."), out),
            Value::String(s) => out.push_str(&format!("{prefix}{k}: {s}\n")),
            other => out.push_str(&format!("{prefix}{k}: {other}\n")),
        }
    }
}

impl Common {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            samples: self.budget_samples,
            seed: self.seed,
            lattice_limit: self.budget_lattice,
            ..SearchBudget::default()
        }
    }
}

/// A spec given inline or as a path to a JSON file.
fn load_group(arg: &str) -> qlocal::Result<PermGroup> {
    let path = Path::new(arg);
    let text = if !arg.starts_with("catalog:") && path.is_file() {
        read(path)?
    } else {
        arg.to_string()
    };
    make_group(&GroupSpec::parse(&text)?)
}

fn read(path: &Path) -> qlocal::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))
}

fn write_dot(path: &Option<PathBuf>, d: &Digraph) -> qlocal::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, d.to_dot()).map_err(|e| Error::Spec(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> qlocal::Result<Outcome> {
    let c = &cli.common;
    let budget = c.budget();
    match &cli.command {
        Command::Analyze { group } => analyze(&load_group(group)?, &budget).map(Outcome::ok),
        Command::Classify { group } => classify(&load_group(group)?, &budget),
        Command::CompatCheck { left, right } => {
            let r = necessary_compat_check(&load_group(left)?, &load_group(right)?, &budget)?;
            let reason = failing_reason(&r);
            let verdict = if r.certified_incompatible { "incompatible" } else { "not excluded" };
            Ok(Outcome {
                report: json!({"verdict": verdict, "reason": reason, "conditions": r}),
                failed: r.certified_incompatible,
            })
        }
        Command::Witness { problem, strategy } => {
            let p = CompatProblemJson::parse(&read(problem)?)?.to_problem()?;
            let opts = SearchOptions {
                strategy: match strategy {
                    StrategyArg::Block => Strategy::Block,
                    StrategyArg::Backtrack => Strategy::Backtrack,
                    StrategyArg::Auto => Strategy::Auto,
                },
                seed: c.seed,
                samples: c.budget_search,
            };
            let w = build_witness(&p, &opts)?;
            let d = witness_digraph(&w, c.budget_index)?;
            write_dot(&c.digraph, &d.digraph)?;
            let verified = w.verified() && d.verified();
            Ok(Outcome {
                report: json!({
                    "verified": verified,
                    "witness": w.to_json(),
                    "digraph": {
                        "vertices": d.digraph.vertex_count,
                        "arcs": d.digraph.arcs.len(),
                        "outLocal": {"degree": d.out_local.induced_group.degree(), "order": d.out_local.induced_group.order()},
                        "inLocal": {"degree": d.in_local.induced_group.degree(), "order": d.in_local.induced_group.order()},
                        "outMatchesLPlus": d.out_certificate.verdict,
                        "inMatchesLMinus": d.in_certificate.verdict,
                        "checks": d.local_checks,
                    },
                }),
                failed: !verified,
            })
        }
        Command::DigraphCmd { group, arc, input } => {
            let g = group.as_deref().map(load_group).transpose()?;
            let d = match (input, arc, g) {
                (Some(path), None, g) => {
                    let d = Digraph::from_json(&read(path)?)?;
                    match g {
                        Some(g) => d.with_group(g)?,
                        None => d,
                    }
                }
                (None, Some(arc), Some(g)) => {
                    let (u, v) = parse_arc(arc)?;
                    orbital_digraph(&g, u, v)?
                }
                _ => {
                    return Err(Error::Spec(
                        "digraph needs --group with --arc, or --input with an optional --group".into(),
                    ))
                }
            };
            write_dot(&c.digraph, &d)?;
            digraph_report(&d, c.budget_nodes).map(Outcome::ok)
        }
        Command::Catalog { name } => catalog(name.as_deref(), &budget).map(Outcome::ok),
        Command::Selftest => {
            let outcomes = run_all(&budget);
            let failed = outcomes.iter().any(|o| !o.passed);
            let mut m = Map::new();
            for o in &outcomes {
                let status = if o.passed { "pass" } else { "FAIL" };
                m.insert(format!("{:02} {}", o.id, o.title), json!(format!("{status}: {}", o.detail)));
            }
            m.insert("summary".into(), json!(format!(
                "{} of {} passed",
                outcomes.iter().filter(|o| o.passed).count(),
                outcomes.len()
            )));
            Ok(Outcome {
                report: Value::Object(m),
                failed,
            })
        }
    }
}

fn parse_arc(s: &str) -> qlocal::Result<(u32, u32)> {
    let bad = |position| Error::Parse {
        position,
        message: format!("expected `u,v`, found `{s}`"),
    };
    let (u, v) = s.split_once(',').ok_or_else(|| bad(0))?;
    let u = u.trim().parse().map_err(|_| bad(0))?;
    let v = v.trim().parse().map_err(|_| bad(s.find(',').unwrap_or(0) + 1))?;
    Ok((u, v))
}

fn group_summary(g: &PermGroup) -> Value {
    json!({"degree": g.degree(), "order": g.order(), "generators": g.generators().len()})
}

fn analyze(g: &PermGroup, budget: &SearchBudget) -> qlocal::Result<Value> {
    let mut m = Map::new();
    m.insert("group".into(), group_summary(g));
    let orbits = g.orbits();
    m.insert("orbitLengths".into(), json!(orbits.iter().map(Vec::len).collect::<Vec<_>>()));
    m.insert("transitive".into(), json!(g.is_transitive()));
    if g.is_transitive() {
        m.insert("primitive".into(), json!(qlocal::action::is_primitive(g)));
        let q = is_quasiprimitive(g, budget)?;
        m.insert("quasiprimitive".into(), json!({"holds": q.quasiprimitive, "complete": q.complete}));
    }
    let (comp, complete) = composition_multiset_checked(g, budget)?;
    m.insert("composition".into(), json!({"factors": comp.to_string(), "complete": complete}));
    m.insert("soluble".into(), json!(is_soluble(g)));
    let (soc, soc_complete) = socle(g, budget)?;
    m.insert("socle".into(), json!({"order": soc.order(), "complete": soc_complete}));
    let sections = simple_sections(g)?;
    m.insert("simpleSections".into(), json!({"groups": sections.names(), "complete": sections.complete}));
    let quotients = simple_quotients(g, budget)?;
    m.insert(
        "simpleQuotients".into(),
        json!({"groups": quotients.ids.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "complete": quotients.complete}),
    );
    Ok(Value::Object(m))
}

fn classify(g: &PermGroup, budget: &SearchBudget) -> qlocal::Result<Outcome> {
    let not_qp = |reason: &str| Outcome {
        report: json!({"quasiprimitive": false, "reason": reason, "group": group_summary(g)}),
        failed: true,
    };
    if !g.is_transitive() {
        return Ok(not_qp("intransitive"));
    }
    let q = is_quasiprimitive(g, budget)?;
    if !q.quasiprimitive {
        return Ok(not_qp("a nontrivial normal subgroup is intransitive"));
    }
    let (ty, ev) = classify_qp(g, budget)?;
    let mut report = serde_json::to_value(ClassificationReport::new(g, ty, &ev)).expect("serializable");
    report["evidence"] = serde_json::to_value(&ev).expect("serializable");
    Ok(Outcome::ok(report))
}

fn failing_reason(r: &qlocal::compat::NecessaryReport) -> Value {
    let named = [
        (&r.degree_equal, "degrees differ"),
        (&r.orbit_count_equal, "orbit counts differ"),
        (&r.sections_equal, "simple sections differ"),
        (&r.primes_equal, "prime divisors differ"),
        (&r.soluble_agree, "solubility differs"),
    ];
    let first = named
        .iter()
        .find(|(c, _)| !c.holds && c.complete)
        .map(|(_, why)| *why)
        .or_else(|| {
            r.common_simple_quotient
                .as_ref()
                .filter(|c| !c.holds && c.complete)
                .map(|_| "no common simple quotient")
        });
    first.map_or(Value::Null, |s| json!(s))
}

fn digraph_report(d: &Digraph, nodes: u64) -> qlocal::Result<Value> {
    let mut m = Map::new();
    m.insert("vertices".into(), json!(d.vertex_count));
    m.insert("arcs".into(), json!(d.arcs.len()));
    m.insert("outDegree".into(), json!(d.out_neighbours(0).len()));
    m.insert("inDegree".into(), json!(d.in_neighbours(0).len()));
    let sc = strongly_connected(d);
    m.insert(
        "connectivity".into(),
        json!({"strong": sc.strongly_connected, "weak": sc.weakly_connected, "components": sc.components}),
    );
    if d.group.is_some() && d.vertex_count > 0 {
        let out = local_action(d, 0, Direction::Out)?;
        let inn = local_action(d, 0, Direction::In)?;
        let describe = |r: &qlocal::digraph::LocalActionReport| -> qlocal::Result<Value> {
            let s = simple_sections(&r.induced_group)?;
            Ok(json!({
                "degree": r.induced_group.degree(),
                "order": r.induced_group.order(),
                "orbits": r.induced_group.orbits().len(),
                "simpleSections": s.names(),
                "sectionsComplete": s.complete,
            }))
        };
        m.insert("outLocal".into(), describe(&out)?);
        m.insert("inLocal".into(), describe(&inn)?);
        m.insert(
            "localActionsIsomorphic".into(),
            json!(perm_isomorphic(&out.induced_group, &inn.induced_group, nodes).verdict),
        );
        if sc.strongly_connected {
            let s = stabilizer_series(d)?;
            m.insert(
                "stabilizerSeries".into(),
                json!({"stabilizerOrder": s.stabilizer_order, "localOrder": s.local_order, "length": s.steps.len(), "verified": s.verified}),
            );
        }
    }
    Ok(Value::Object(m))
}

fn catalog(name: Option<&str>, budget: &SearchBudget) -> qlocal::Result<Value> {
    match name {
        Some(n) => {
            // Families such as Sym(n) and Alt(n) are built by formula, not stored.
            let g = make_group(&GroupSpec::named(n))?;
            let note = named_entries().iter().find(|e| e.name == n).map(|e| e.note.clone());
            Ok(json!({
                "name": n,
                "generators": g.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "note": note,
                "analysis": analyze(&g, budget)?,
            }))
        }
        None => {
            let mut named = Map::new();
            for e in named_entries() {
                named.insert(e.name.clone(), json!(format!("degree {}, order {}", e.degree, e.order)));
            }
            let mut corpus = Map::new();
            for e in ground_truth_corpus() {
                let t = e.spec.ground_truth.as_ref().and_then(|t| t.expected_qp_type.clone());
                corpus.insert(e.label.into(), json!(t));
            }
            Ok(json!({"named": named, "typedCorpus": corpus}))
        }
    }
}
