//! Plain-text formats.
//!
//! Instances are written one vertex per line:
//!
//! ```text
//! # comment
//! v : a = b > c
//! a : v
//! b : v
//! c : v
//! isolated :
//! ```
//!
//! Groups are separated by `>` (most preferred first) and tied members by
//! `=`. Vertex ids follow the order of the declaring lines.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::prefdigraph::MasterList;
use crate::system::{Edge, PreferenceSystem, VertexId, WeakOrder};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the instance text format.
pub fn parse_instance(text: &str) -> Result<PreferenceSystem> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw: Vec<(usize, Vec<Vec<String>>)> = Vec::new();

    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `vertex : preferences`"))?;
        let head = head.trim();
        if head.is_empty() || head.split_whitespace().count() != 1 {
            return Err(parse_err(lineno, format!("bad vertex name `{head}`")));
        }
        if index.contains_key(head) {
            return Err(parse_err(lineno, format!("vertex `{head}` declared twice")));
        }
        index.insert(head.to_string(), names.len());
        names.push(head.to_string());

        let rest = rest.trim();
        let mut groups = Vec::new();
        if !rest.is_empty() {
            for group in rest.split('>') {
                let members: Vec<String> = group.split('=').map(|m| m.trim().to_string()).collect();
                if members.iter().any(|m| m.is_empty() || m.split_whitespace().count() != 1) {
                    return Err(parse_err(lineno, format!("malformed group `{}`", group.trim())));
                }
                groups.push(members);
            }
        }
        raw.push((lineno, groups));
    }

    let mut orders = Vec::with_capacity(raw.len());
    for (vi, (lineno, groups)) in raw.into_iter().enumerate() {
        let mut id_groups = Vec::with_capacity(groups.len());
        for g in groups {
            let mut ids = Vec::with_capacity(g.len());
            for m in g {
                match index.get(&m) {
                    Some(&u) => ids.push(VertexId(u)),
                    None => {
                        return Err(parse_err(lineno, format!("vertex `{m}` is never declared")))
                    }
                }
            }
            id_groups.push(ids);
        }
        let order = WeakOrder::new(id_groups).map_err(|dup| Error::DuplicateNeighbor {
            vertex: names[vi].clone(),
            neighbor: names[dup.0].clone(),
        })?;
        orders.push(order);
    }
    PreferenceSystem::new(names, orders)
}

/// Writes an order with vertex names.
pub fn format_order(i: &PreferenceSystem, order: &WeakOrder) -> String {
    order
        .groups()
        .iter()
        .map(|g| g.iter().map(|&v| i.name(v)).collect::<Vec<_>>().join(" = "))
        .collect::<Vec<_>>()
        .join(" > ")
}

/// Serializes an instance; `parse_instance` reads it back unchanged.
pub fn serialize_instance(i: &PreferenceSystem) -> String {
    let mut out = String::new();
    for v in i.vertices() {
        let prefs = format_order(i, i.order(v));
        if prefs.is_empty() {
            let _ = writeln!(out, "{} :", i.name(v));
        } else {
            let _ = writeln!(out, "{} : {}", i.name(v), prefs);
        }
    }
    out
}

/// A master list on one line: groups joined by ` > `, ties by ` = `.
pub fn format_master_list(i: &PreferenceSystem, ml: &MasterList) -> String {
    format_order(i, ml.order())
}

pub fn parse_master_list(i: &PreferenceSystem, text: &str) -> Result<MasterList> {
    let text = text.trim();
    let mut groups = Vec::new();
    if !text.is_empty() {
        for g in text.split('>') {
            let mut ids = Vec::new();
            for m in g.split('=') {
                ids.push(i.require(m.trim())?);
            }
            groups.push(ids);
        }
    }
    let order = WeakOrder::new(groups).map_err(|dup| Error::DuplicateVertex(i.name(dup).to_string()))?;
    MasterList::new(order, i.len()).ok_or_else(|| {
        Error::InvalidParams("master list must contain every vertex exactly once".into())
    })
}

/// Parses `a -- b` (spaces optional) into an existing edge.
pub fn parse_edge(i: &PreferenceSystem, token: &str) -> Result<Edge> {
    let (a, b) = token
        .split_once("--")
        .ok_or_else(|| Error::InvalidParams(format!("expected `a--b`, got `{token}`")))?;
    i.edge_by_names(a.trim(), b.trim())
}

pub fn format_edge(i: &PreferenceSystem, e: Edge) -> String {
    let (a, b) = i.edge_names(e);
    format!("{a} -- {b}")
}

/// One edge per line, `a -- b`.
pub fn format_matching(i: &PreferenceSystem, m: &Matching) -> String {
    let mut out = String::new();
    for &e in m.edges() {
        let _ = writeln!(out, "{}", format_edge(i, e));
    }
    out
}

pub fn parse_matching(i: &PreferenceSystem, text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let e = parse_edge(i, line).map_err(|e| parse_err(lineno + 1, e.to_string()))?;
        edges.push(e);
    }
    Matching::new(edges)
}

/// Per-edge utility and cost, as read from a weights file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeights {
    pub utility: BTreeMap<Edge, u64>,
    pub cost: BTreeMap<Edge, u64>,
}

/// Parses lines `a -- b : utility cost`; every edge must appear exactly once.
pub fn parse_weights(i: &PreferenceSystem, text: &str) -> Result<EdgeWeights> {
    let mut utility = BTreeMap::new();
    let mut cost = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate().map(|(k, l)| (k + 1, l)) {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let (edge, nums) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `a -- b : utility cost`"))?;
        let e = parse_edge(i, edge).map_err(|err| parse_err(lineno, err.to_string()))?;
        let nums: Vec<&str> = nums.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(parse_err(lineno, "expected two unsigned integers"));
        }
        let parse_u = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| parse_err(lineno, format!("`{s}` is not an unsigned integer")))
        };
        let (u, c) = (parse_u(nums[0])?, parse_u(nums[1])?);
        if utility.insert(e, u).is_some() {
            return Err(parse_err(lineno, "edge listed twice"));
        }
        cost.insert(e, c);
    }
    if let Some(&missing) = i.edges().iter().find(|e| !utility.contains_key(e)) {
        return Err(Error::InvalidParams(format!(
            "no weights for edge {}",
            format_edge(i, missing)
        )));
    }
    Ok(EdgeWeights { utility, cost })
}
