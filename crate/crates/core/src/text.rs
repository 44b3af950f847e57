//! Plain-text vector format: comma-separated decimal coordinates, index 0
//! first (`"1,0,1,1,0,0,1"`). Polynomials use the same layout, lowest
//! degree first.

use crate::error::{Error, Result};
use crate::groundfield::{Coord, GroundField};

pub fn format_coords(coords: &[Coord]) -> String {
    join(coords.iter().map(|c| c.value()))
}

pub fn format_values(values: &[u32]) -> String {
    join(values.iter().copied())
}

fn join(it: impl Iterator<Item = u32>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses a coordinate vector over `field`. When `expected_len` is given the
/// vector must have exactly that many entries.
pub fn parse_coords(field: GroundField, s: &str, expected_len: Option<usize>) -> Result<Vec<Coord>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    let coords = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("'{tok}' is not a nonnegative integer")))?;
            field.coord(v)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = expected_len {
        if coords.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} coordinates, got {}",
                coords.len()
            )));
        }
    }
    Ok(coords)
}
