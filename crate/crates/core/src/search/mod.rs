//! Exhaustive search for reciprocal pairs on small vertex counts.
//!
//! For each graph up to isomorphism and each subgroup of its automorphism
//! group up to conjugacy, the pair is checked and every reciprocal one is
//! classified. Conjugating the group by a graph automorphism changes neither
//! side of the relation, so one subgroup per class suffices.

mod classify;
mod graphs;
mod subgroups;

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use classify::{
    classify, decompose, is_irreducible, kstar_parameters, product_decomposition, wreath_decomposition, ClassTag,
    Classification, Decomposition,
};
pub use graphs::{enumerate_graphs, MAX_ENUMERATION_VERTICES};
pub use subgroups::{all_subgroups, enumerate_subgroups, MAX_SUBGROUP_SEARCH_ORDER};

use crate::error::{Error, Result};
use crate::reciprocity::{is_reciprocal_pair, PairReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest vertex count accepted.
    pub max_n: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_n: 6, jobs: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub graphs_examined: usize,
    pub subgroups_examined: usize,
    /// Reciprocal pairs in graph order, then subgroup order.
    pub pairs: Vec<PairReport>,
}

/// Final record of a JSON-lines search stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub n: usize,
    pub graphs_examined: usize,
    pub subgroups_examined: usize,
    pub pairs: usize,
    pub by_tag: BTreeMap<ClassTag, usize>,
    pub unknown: usize,
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    summary: SearchSummary,
}

impl SearchResult {
    pub fn tag_of(pair: &PairReport) -> ClassTag {
        pair.classification.as_ref().map_or(ClassTag::Unknown, |c| c.tag)
    }

    pub fn unknown_count(&self) -> usize {
        self.pairs.iter().filter(|p| Self::tag_of(p) == ClassTag::Unknown).count()
    }

    pub fn summary(&self) -> SearchSummary {
        let mut by_tag = BTreeMap::new();
        for p in &self.pairs {
            *by_tag.entry(Self::tag_of(p)).or_default() += 1;
        }
        SearchSummary {
            n: self.n,
            graphs_examined: self.graphs_examined,
            subgroups_examined: self.subgroups_examined,
            pairs: self.pairs.len(),
            by_tag,
            unknown: self.unknown_count(),
        }
    }

    /// One `PairReport` per line, then `{"summary": ...}`.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for p in &self.pairs {
            serde_json::to_writer(&mut out, p)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &SummaryLine { summary: self.summary() })?;
        out.write_all(b"\n")
    }

    pub fn read_json_lines<R: BufRead>(input: R) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut summary = None;
        for line in input.lines() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            if let Ok(s) = serde_json::from_str::<SummaryLine>(&line) {
                summary = Some(s.summary);
            } else {
                pairs.push(serde_json::from_str::<PairReport>(&line).map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        let summary = summary.ok_or_else(|| Error::Parse("search stream has no summary record".into()))?;
        if summary.pairs != pairs.len() {
            return Err(Error::Parse(format!(
                "summary lists {} pairs but the stream has {}",
                summary.pairs,
                pairs.len()
            )));
        }
        Ok(SearchResult {
            n: summary.n,
            graphs_examined: summary.graphs_examined,
            subgroups_examined: summary.subgroups_examined,
            pairs,
        })
    }
}

fn search_graph(graph: &crate::graph::SimpleGraph) -> Result<(usize, Vec<PairReport>)> {
    let aut = graph.automorphism_group()?;
    let subgroups = enumerate_subgroups(&aut)?;
    let mut pairs = Vec::new();
    for h in &subgroups {
        let mut report = is_reciprocal_pair(graph, h)?;
        if report.reciprocal {
            report.classification = Some(classify(&report)?);
            pairs.push(report);
        }
    }
    Ok((subgroups.len(), pairs))
}

/// Every reciprocal pair on `n` vertices, up to graph isomorphism and
/// subgroup conjugacy, each classified.
pub fn search_pairs(n: usize, options: &SearchOptions) -> Result<SearchResult> {
    if n > options.max_n {
        return Err(Error::BoundExceeded {
            what: "vertex count for pair search",
            limit: options.max_n as u128,
            got: n as u128,
        });
    }
    let graphs = enumerate_graphs(n)?;
    let run = || graphs.par_iter().map(search_graph).collect::<Result<Vec<_>>>();
    let per_graph = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut result = SearchResult {
        n,
        graphs_examined: graphs.len(),
        subgroups_examined: 0,
        pairs: Vec::new(),
    };
    for (count, pairs) in per_graph {
        result.subgroups_examined += count;
        result.pairs.extend(pairs);
    }
    Ok(result)
}

/// Cache file for a search, keyed by vertex count, bound and crate version.
pub fn cache_path(dir: &Path, n: usize, options: &SearchOptions) -> PathBuf {
    dir.join(format!(
        "search-n{n}-max{}-v{}.jsonl",
        options.max_n,
        env!("CARGO_PKG_VERSION")
    ))
}

/// Like [`search_pairs`], but reuses a finished run stored under `dir`.
/// Returns whether the cache was hit.
pub fn search_pairs_cached(n: usize, options: &SearchOptions, dir: &Path) -> Result<(SearchResult, bool)> {
    let path = cache_path(dir, n, options);
    if let Ok(file) = fs::File::open(&path) {
        if let Ok(result) = SearchResult::read_json_lines(std::io::BufReader::new(file)) {
            if result.n == n {
                return Ok((result, true));
            }
        }
    }
    let result = search_pairs(n, options)?;
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cache {}: {e}", path.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = path.with_extension("partial");
    let mut buf = Vec::new();
    result.write_json_lines(&mut buf).map_err(io)?;
    fs::write(&tmp, buf).map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)?;
    Ok((result, false))
}
