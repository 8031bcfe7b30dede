//! Parsing of graph, group and pair arguments.

use std::fs;
use std::path::Path;

use recip::graph::SimpleGraph;
use recip::perm::PermGroup;
use recip::{Error, Result};

fn number(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{what}: expected a non-negative integer, got {s:?}")))
}

/// Inline JSON if the argument starts with `{`, otherwise the contents of the
/// named file if it exists.
fn json_source(arg: &str) -> Option<Result<String>> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return Some(Ok(trimmed.to_string()));
    }
    let path = Path::new(arg);
    path.is_file().then(|| {
        fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    })
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// `complete:N`, `cycle:N`, `null:N`, `kstar:K,N`, inline JSON or a JSON file.
pub fn parse_graph(arg: &str) -> Result<SimpleGraph> {
    if let Some(text) = json_source(arg) {
        return from_json(&text?, "graph");
    }
    let (name, rest) = arg
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("unrecognised graph {arg:?}")))?;
    match name {
        "complete" => SimpleGraph::complete(number(rest, "complete")?),
        "cycle" => SimpleGraph::cycle_graph(number(rest, "cycle")?),
        "null" => SimpleGraph::null(number(rest, "null")?),
        "kstar" => {
            let (k, n) = rest
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument(format!("kstar expects K,N, got {rest:?}")))?;
            SimpleGraph::k_star(number(k, "kstar")?, number(n, "kstar")?)
        }
        _ => Err(Error::InvalidArgument(format!("unknown graph family {name:?}"))),
    }
}

/// Two group specs joined by a comma; the first split where both halves
/// parse wins.
fn group_pair(rest: &str) -> Result<(PermGroup, PermGroup)> {
    let mut last = None;
    for (i, _) in rest.match_indices(',') {
        match (parse_named_group(&rest[..i]), parse_named_group(&rest[i + 1..])) {
            (Ok(a), Ok(b)) => return Ok((a, b)),
            (Err(e), _) | (_, Err(e)) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::InvalidArgument(format!("expected two groups separated by a comma, got {rest:?}"))))
}

fn parse_named_group(arg: &str) -> Result<PermGroup> {
    let (name, rest) = arg
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("unrecognised group {arg:?}")))?;
    match name {
        "sym" => PermGroup::symmetric(number(rest, "sym")?),
        "alt" => PermGroup::alternating(number(rest, "alt")?),
        "cyclic" => PermGroup::cyclic(number(rest, "cyclic")?),
        "dihedral" => PermGroup::dihedral(number(rest, "dihedral")?),
        "trivial" => Ok(PermGroup::trivial(number(rest, "trivial")?)),
        "wreath" => {
            let (g, h) = group_pair(rest)?;
            PermGroup::wreath_product(&g, &h)
        }
        "product" => {
            let (g, h) = group_pair(rest)?;
            PermGroup::direct_product(&g, &h)
        }
        _ => Err(Error::InvalidArgument(format!("unknown group family {name:?}"))),
    }
}

/// `sym:N`, `alt:N`, `cyclic:N`, `dihedral:N`, `trivial:N`, `wreath:G,H`,
/// `product:G,H`, inline JSON `{degree, generators}` or a JSON file.
pub fn parse_group(arg: &str) -> Result<PermGroup> {
    match json_source(arg) {
        Some(text) => from_json(&text?, "group"),
        None => parse_named_group(arg),
    }
}

/// A pair given as JSON with at least `graph` and `group`.
pub fn parse_pair(arg: &str) -> Result<(SimpleGraph, PermGroup)> {
    let text = json_source(arg)
        .ok_or_else(|| Error::InvalidArgument(format!("expected pair JSON or a file containing it, got {arg:?}")))??;
    let value: serde_json::Value = from_json(&text, "pair")?;
    let field = |key: &str| {
        value
            .get(key)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("pair: missing field {key:?}")))
    };
    let graph = serde_json::from_value(field("graph")?).map_err(|e| Error::Parse(format!("pair graph: {e}")))?;
    let group = serde_json::from_value(field("group")?).map_err(|e| Error::Parse(format!("pair group: {e}")))?;
    Ok((graph, group))
}
