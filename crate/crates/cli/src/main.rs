mod spec;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use recip::perm::PermGroup;
use recip::poly::IntPolynomial;
use recip::reciprocity::{
    is_reciprocal_pair, orbital_chromatic_polynomial, theorem1_predicts_reciprocal, verify_theorem1, PairReport,
};
use recip::search::{
    classify, is_irreducible, search_pairs, search_pairs_cached, SearchOptions, SearchResult,
    MAX_ENUMERATION_VERTICES,
};
use recip::Error;

/// Directory for cached search results.
const CACHE_ENV: &str = "RECIP_CACHE_DIR";

#[derive(Parser)]
#[command(name = "recip", version, about = "Orbital chromatic and cycle polynomials of graph/group pairs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle polynomial of a permutation group.
    CyclePoly {
        #[arg(long)]
        group: String,
    },
    /// Chromatic polynomial of a graph.
    ChromPoly {
        #[arg(long)]
        graph: String,
    },
    /// Orbital chromatic polynomial of a graph and a group of its automorphisms.
    Orbital {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        group: String,
    },
    /// Compare both sides of the reciprocity relation. Exits 0 iff they agree.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        group: String,
    },
    /// Build and check a k-star pair. Exits 0 iff the verdict matches the
    /// parity prediction.
    Theorem1 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        h: Top,
    },
    /// Exhaustive search for reciprocal pairs on N vertices.
    Search {
        #[arg(long)]
        n: usize,
        /// Exit 1 if any pair is left unclassified.
        #[arg(long)]
        strict: bool,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest vertex count to accept.
        #[arg(long, default_value_t = SearchOptions::default().max_n)]
        max_n: usize,
    },
    /// Classify a reciprocal pair given as JSON (inline or a file).
    Classify {
        #[arg(long)]
        pair: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Top {
    S,
    A,
    Trivial,
}

impl Top {
    fn build(self, r: usize) -> recip::Result<PermGroup> {
        match self {
            Top::S => PermGroup::symmetric(r),
            Top::A => PermGroup::alternating(r),
            Top::Trivial => Ok(PermGroup::trivial(r)),
        }
    }
}

/// Text written to stdout plus the exit status.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn poly_output(p: &IntPolynomial, as_json: bool) -> Output {
    Output::ok(if as_json { json(p) } else { format!("{p}\n") })
}

fn report_text(report: &PairReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph: {} vertices, edges {:?}\n", report.graph.n(), report.graph.edges()));
    out.push_str(&format!("group: order {}, generators", report.group.order()));
    if report.group.generators().is_empty() {
        out.push_str(" ()");
    }
    for g in report.group.generators() {
        out.push_str(&format!(" {g}"));
    }
    out.push('\n');
    out.push_str(&format!("orbital:  {}\n", report.orbital));
    out.push_str(&format!("cycle:    {}\n", report.cycle));
    out.push_str(&format!("(-1)^n F(-x): {}\n", report.reciprocal_side()));
    out.push_str(&format!("reciprocal: {}\n", report.reciprocal));
    if let Some(c) = &report.classification {
        out.push_str(&format!("class: {} ({})\n", c.tag, c.evidence));
    }
    out
}

fn check_output(mut report: PairReport, as_json: bool, status: u8) -> recip::Result<Output> {
    if report.reciprocal {
        report.classification = Some(classify(&report)?);
    }
    let text = if as_json { json(&report) } else { report_text(&report) };
    Ok(Output { text, status })
}

fn search_output(n: usize, strict: bool, options: SearchOptions, as_json: bool) -> recip::Result<Output> {
    let result = match std::env::var_os(CACHE_ENV) {
        Some(dir) => search_pairs_cached(n, &options, &PathBuf::from(dir))?.0,
        None => search_pairs(n, &options)?,
    };
    let text = if as_json {
        let mut buf = Vec::new();
        result
            .write_json_lines(&mut buf)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        String::from_utf8(buf).expect("JSON is UTF-8")
    } else {
        let mut out = String::new();
        for p in &result.pairs {
            let c = p.classification.as_ref();
            out.push_str(&format!(
                "{:<16} |G|={:<5} edges={:?}  {}\n",
                SearchResult::tag_of(p).to_string(),
                p.group.order(),
                p.graph.edges(),
                c.map_or("", |c| c.evidence.as_str())
            ));
        }
        let s = result.summary();
        out.push_str(&format!(
            "n={}: {} graphs, {} subgroup classes, {} reciprocal pairs, {} unknown\n",
            s.n, s.graphs_examined, s.subgroups_examined, s.pairs, s.unknown
        ));
        out
    };
    let status = u8::from(strict && result.unknown_count() > 0);
    Ok(Output { text, status })
}

fn run(cli: Cli) -> recip::Result<Output> {
    let as_json = cli.json;
    match cli.command {
        Command::CyclePoly { group } => Ok(poly_output(&spec::parse_group(&group)?.cycle_polynomial(), as_json)),
        Command::ChromPoly { graph } => Ok(poly_output(&spec::parse_graph(&graph)?.chromatic_polynomial(), as_json)),
        Command::Orbital { graph, group } => {
            let p = orbital_chromatic_polynomial(&spec::parse_graph(&graph)?, &spec::parse_group(&group)?)?;
            Ok(poly_output(&p, as_json))
        }
        Command::Check { graph, group } => {
            let report = is_reciprocal_pair(&spec::parse_graph(&graph)?, &spec::parse_group(&group)?)?;
            let status = u8::from(!report.reciprocal);
            check_output(report, as_json, status)
        }
        Command::Theorem1 { k, r, h } => {
            let h = h.build(r)?;
            let report = verify_theorem1(k, r, &h)?;
            let predicted = theorem1_predicts_reciprocal(k, &h);
            let status = u8::from(report.reciprocal != predicted);
            let mut out = check_output(report, as_json, status)?;
            if !as_json {
                out.text.push_str(&format!("predicted: {predicted}\n"));
            }
            Ok(out)
        }
        Command::Search {
            n,
            strict,
            jobs,
            max_n,
        } => {
            if max_n > MAX_ENUMERATION_VERTICES {
                return Err(Error::BoundExceeded {
                    what: "search vertex bound",
                    limit: MAX_ENUMERATION_VERTICES as u128,
                    got: max_n as u128,
                });
            }
            search_output(n, strict, SearchOptions { max_n, jobs }, as_json)
        }
        Command::Classify { pair } => {
            let (graph, group) = spec::parse_pair(&pair)?;
            let report = is_reciprocal_pair(&graph, &group)?;
            if !report.reciprocal {
                return Ok(Output {
                    text: if as_json {
                        json(&serde_json::json!({ "error": "pair is not reciprocal" }))
                    } else {
                        "pair is not reciprocal\n".into()
                    },
                    status: 1,
                });
            }
            let class = classify(&report)?;
            let (irreducible, _) = is_irreducible(&report)?;
            let text = if as_json {
                json(&class)
            } else {
                format!("{}: {}\nirreducible: {irreducible}\n", class.tag, class.evidence)
            };
            Ok(Output::ok(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_bound() { 3 } else { 2 })
        }
    }
}
