//! Family file formats.
//!
//! Plain text: first line `n=<n>`, then one block per non-empty line as
//! comma-separated ascending 1-based elements. `#` starts a comment.
//! JSON alternative: `{"n": <n>, "blocks": [[1,2,5], ...]}`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::block::{Block, GroundSet};
use crate::error::{Error, Result};
use crate::family::Family;

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

pub fn family_from_text(input: &str) -> Result<Family> {
    let mut ground: Option<GroundSet> = None;
    let mut blocks = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if ground.is_none() {
            let value = line
                .strip_prefix("n=")
                .ok_or_else(|| Error::Parse(format!("line {}: expected `n=<count>` header", idx + 1)))?;
            let n: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: invalid ground set size `{value}`", idx + 1)))?;
            ground = Some(GroundSet::new(n)?);
            continue;
        }
        let mut elements = Vec::new();
        for token in line.split(',') {
            let e: u32 = token
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: invalid element `{token}`", idx + 1)))?;
            elements.push(e);
        }
        blocks.push(Block::from_elements(elements)?);
    }
    let ground = ground.ok_or_else(|| Error::Parse("missing `n=<count>` header".into()))?;
    Family::new(ground, blocks)
}

/// Writes the text format. The empty block has no line representation, so
/// families containing it must use JSON instead.
pub fn family_to_text(family: &Family) -> Result<String> {
    if family.blocks().iter().any(|b| b.is_empty()) {
        return Err(Error::EmptyBlock);
    }
    let mut out = format!("n={}\n", family.ground().n());
    for block in family.blocks() {
        let mut first = true;
        for e in block.elements() {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{e}");
            first = false;
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn family_from_json(input: &str) -> Result<Family> {
    let file: FamilyFile = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    let ground = GroundSet::new(file.n)?;
    let blocks = file
        .blocks
        .into_iter()
        .map(Block::from_elements)
        .collect::<Result<Vec<_>>>()?;
    Family::new(ground, blocks)
}

pub fn family_to_json(family: &Family) -> String {
    let file = FamilyFile {
        n: family.ground().n(),
        blocks: family.blocks().iter().map(|b| b.to_vec()).collect(),
    };
    serde_json::to_string(&file).expect("family serialization cannot fail")
}

/// Detects the format by the first non-whitespace byte: `{` means JSON.
pub fn family_from_str(input: &str) -> Result<Family> {
    match input.trim_start().chars().next() {
        Some('{') => family_from_json(input),
        _ => family_from_text(input),
    }
}

pub fn read_family(path: &Path) -> Result<Family> {
    let contents = std::fs::read_to_string(path)?;
    family_from_str(&contents)
}
