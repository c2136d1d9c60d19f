//! Reading graphs, structures and parameters from paths or inline text.

use std::fs;
use std::path::Path;

use motifalg::graph::{Graph, OrderedGraph};
use motifalg::io::{self, AnyParameter};
use motifalg::relstruct::{MixedType, RelStructure};
use motifalg::Caps;
use serde_json::Value;

use crate::error::CliError;

/// File contents if `arg` names an existing file, else `arg` itself.
pub fn load_text(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {arg}: {e}")))?;
        // graph6 files may hold several graphs; the first one is used
        if !text.trim_start().starts_with('{') {
            return Ok(text.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim().to_string());
        }
        return Ok(text);
    }
    Ok(arg.to_string())
}

/// JSON object for JSON text, otherwise the bare string (shorthand or graph6).
pub fn load_value(arg: &str) -> Result<Value, CliError> {
    let text = load_text(arg)?;
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| CliError::input(format!("{arg}: {e}")))
    } else {
        Ok(Value::String(t.to_string()))
    }
}

pub fn load_json(arg: &str) -> Result<Value, CliError> {
    let text = load_text(arg)?;
    serde_json::from_str(text.trim()).map_err(|e| CliError::input(format!("{arg}: {e}")))
}

pub fn load_parameter(arg: &str, caps: &Caps) -> Result<AnyParameter, CliError> {
    Ok(io::parameter_from_json(&load_json(arg)?, caps)?)
}

/// Which structure class the inputs of a verb live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Unordered,
    Ordered,
    Colored(u8),
    Relational(MixedType, bool),
}

impl Kind {
    /// From an explicit `--kind`, else from the shape of the first input.
    pub fn resolve(flag: Option<&str>, palette: Option<u8>, first: Option<&Value>) -> Result<Self, CliError> {
        let obj = first.and_then(Value::as_object);
        let detected = match flag {
            Some(k) => k.to_string(),
            None => match obj {
                Some(m) if m.contains_key("type") => "relational".into(),
                Some(m) if m.contains_key("colors") => "colored".into(),
                Some(m) if m.get("ordered").and_then(Value::as_bool) == Some(true) => "ordered".into(),
                _ => "unordered".into(),
            },
        };
        match detected.as_str() {
            "unordered" => Ok(Kind::Unordered),
            "ordered" => Ok(Kind::Ordered),
            "colored" => {
                let from_input = obj.and_then(|m| {
                    m.get("palette").and_then(Value::as_u64).or_else(|| {
                        m.get("colors")?.as_array()?.iter().filter_map(Value::as_u64).max().map(|c| c + 1)
                    })
                });
                let p = palette
                    .map(u64::from)
                    .or(from_input)
                    .ok_or_else(|| CliError::input("colored inputs need --palette"))?;
                let p = u8::try_from(p).map_err(|_| CliError::input(format!("palette {p} too large")))?;
                Ok(Kind::Colored(p))
            }
            "relational" => {
                let s = io::rel_from_json(first.ok_or_else(|| CliError::input("relational kind needs an input"))?)?;
                Ok(Kind::Relational(s.mixed_type().clone(), s.is_ordered()))
            }
            other => Err(CliError::input(format!("unknown kind {other:?}"))),
        }
    }
}

pub fn graph(arg: &str) -> Result<Graph, CliError> {
    Ok(io::graph_from_json(&load_value(arg)?)?.graph)
}

pub fn ordered_graph(arg: &str) -> Result<OrderedGraph, CliError> {
    graph(arg).map(OrderedGraph::new)
}

pub fn structure(arg: &str) -> Result<RelStructure, CliError> {
    Ok(io::rel_from_json(&load_json(arg)?)?)
}
