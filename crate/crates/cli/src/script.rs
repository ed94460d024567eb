//! Simulation scripts: one command per line (or separated by `;`).
//!
//! ```text
//! # comment
//! fail 1
//! repair 1
//! retrieve 2,3,4,5
//! ```
//!
//! Node ids are 1-based in scripts and 0-based once parsed.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Fail(usize),
    Repair(usize),
    Retrieve(Vec<usize>),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Fail(n) => write!(f, "fail {}", n + 1),
            Command::Repair(n) => write!(f, "repair {}", n + 1),
            Command::Retrieve(nodes) => {
                let ids: Vec<String> = nodes.iter().map(|n| (n + 1).to_string()).collect();
                write!(f, "retrieve {}", ids.join(","))
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("script command {index}: {message}")]
pub struct ScriptError {
    pub index: usize,
    pub message: String,
}

fn node_id(raw: &str, n: usize) -> Result<usize, String> {
    let id: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("bad node id {raw:?}"))?;
    if id == 0 || id > n {
        return Err(format!("node id {id} outside 1..={n}"));
    }
    Ok(id - 1)
}

fn parse_command(text: &str, n: usize) -> Result<Command, String> {
    let (verb, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let ids: Vec<&str> = rest
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if rest.contains(",,") || rest.trim().starts_with(',') || rest.trim().ends_with(',') {
        return Err(format!("empty node id in {rest:?}"));
    }
    let single = || match ids.as_slice() {
        [id] => node_id(id, n),
        [] => Err(format!("{verb:?} needs a node id")),
        _ => Err(format!("{verb:?} takes one node id, got {}", ids.len())),
    };
    match verb {
        "fail" => single().map(Command::Fail),
        "repair" => single().map(Command::Repair),
        "retrieve" if ids.is_empty() => Err("\"retrieve\" needs a node list".into()),
        "retrieve" => ids
            .iter()
            .map(|id| node_id(id, n))
            .collect::<Result<_, _>>()
            .map(Command::Retrieve),
        other => Err(format!("unknown command {other:?}")),
    }
}

/// Parses a script for a cluster of `n` nodes.
pub fn parse(text: &str, n: usize) -> Result<Vec<Command>, ScriptError> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or_default())
        .flat_map(|line| line.split(';'))
        .map(str::trim)
        .filter(|cmd| !cmd.is_empty())
        .enumerate()
        .map(|(i, cmd)| {
            parse_command(cmd, n).map_err(|message| ScriptError {
                index: i + 1,
                message,
            })
        })
        .collect()
}
