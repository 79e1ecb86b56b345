//! Published enclosures to compare against.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::muskat::RegionClass;

const TABLE: &str = include_str!("../data/table2.txt");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("malformed reference cell {0:?}")]
    Malformed(String),
}

/// A reference value. `comparable` is false for cells whose printed form
/// cannot be read as a proper interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub interval: Interval,
    pub comparable: bool,
}

fn decimal(s: &str) -> Result<Interval, DecodeError> {
    Interval::from_decimal(s).map_err(|_| DecodeError::Malformed(s.to_string()))
}

/// Decodes `[lo,hi]` or `prefix^{sup}_{sub}` into an outward-rounded interval.
pub fn decode(cell: &str) -> Result<Interval, DecodeError> {
    let s: String = cell.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || DecodeError::Malformed(cell.to_string());
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let (a, b) = (decimal(a)?, decimal(b)?);
        if a.lo() > b.hi() {
            return Err(bad());
        }
        return Ok(a.hull(b));
    }
    let (prefix, rest) = s.split_once("^{").ok_or_else(bad)?;
    let (sup, rest) = rest.split_once("}_{").ok_or_else(bad)?;
    let sub = rest.strip_suffix('}').ok_or_else(bad)?;
    let a = decimal(&format!("{prefix}{sup}"))?;
    let b = decimal(&format!("{prefix}{sub}"))?;
    Ok(a.hull(b))
}

/// Reference enclosures per term and region class.
pub fn table() -> &'static BTreeMap<(String, RegionClass), Reference> {
    static T: OnceLock<BTreeMap<(String, RegionClass), Reference>> = OnceLock::new();
    T.get_or_init(|| parse_table(TABLE).expect("embedded reference table is well formed"))
}

fn parse_table(text: &str) -> Result<BTreeMap<(String, RegionClass), Reference>, DecodeError> {
    let mut out = BTreeMap::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(DecodeError::Malformed(line.to_string()));
        }
        for (class, cell) in RegionClass::COLUMNS_2D.iter().zip(&cols[1..]) {
            let (cell, comparable) = match cell.strip_suffix('?') {
                Some(c) => (c, false),
                None => (*cell, true),
            };
            out.insert(
                (cols[0].to_string(), *class),
                Reference {
                    interval: decode(cell)?,
                    comparable,
                },
            );
        }
    }
    Ok(out)
}

pub fn lookup(term: &str, class: RegionClass) -> Option<Reference> {
    table().get(&(term.to_string(), class)).copied()
}

/// Mixed derivative at the origin for the lower amplitude.
pub fn dtx_amp_lo() -> Interval {
    decode("0.000^{01}_{27}").expect("literal")
}

/// Mixed derivative at the origin for the upper amplitude.
pub fn dtx_amp_hi() -> Interval {
    decode("-0.000^{28}_{02}").expect("literal")
}

/// Second time derivative term summed over all `B` integrands.
pub fn dttx_total() -> Interval {
    decode("[38.706,48.787]").expect("literal")
}

/// Lower bound the total must clear.
pub const DTTX_LOWER_BOUND: f64 = 30.0;
