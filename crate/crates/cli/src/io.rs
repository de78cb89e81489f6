use std::io::{Read, Write};

use anyhow::{Context, Result};
use serde_json::Value;

use aniso_core::complex::{ComplexJson, Face, SimplicialComplex};

use crate::{Format, RunConfig};

pub fn read_input(cfg: &RunConfig) -> Result<String> {
    let mut s = String::new();
    match &cfg.input {
        Some(p) => s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        }
    }
    Ok(s)
}

/// Accepts the canonical complex JSON, or any report carrying it under `"complex_json"`.
pub fn read_complex(cfg: &RunConfig) -> Result<SimplicialComplex> {
    let text = read_input(cfg)?;
    let v: Value = serde_json::from_str(&text).context("input is not JSON")?;
    let body = v.get("complex_json").cloned().unwrap_or(v);
    let j: ComplexJson = serde_json::from_value(body).context("input is not a complex")?;
    Ok(SimplicialComplex::from_json(&j)?)
}

pub fn parse_faces(s: &str) -> Result<Vec<Face>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let vs = t.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
            Ok(Face::new(vs))
        })
        .collect()
}

pub fn emit(cfg: &RunConfig, value: &Value) -> Result<()> {
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Table => table(value),
    };
    match &cfg.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn table(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k:<width$}  {shown}\n"));
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}
