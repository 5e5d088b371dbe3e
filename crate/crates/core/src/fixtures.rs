//! Reference tables shipped with the crate.
//!
//! Entry tables list `R^{a₁a₂}_{b₁b₂}` as `[a₁, a₂, b₁, b₂, coeffs]` with 1-based
//! indices and coefficients ascending in `u`; unlisted entries are zero.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::{Poly, SpectralPoly};
use crate::scalar::{parse_rational, GaussianRational as GR};

const SOURCES: &[(&str, &str)] = &[
    ("so3_full", include_str!("../fixtures/so3_full.json")),
    ("sp2_vector", include_str!("../fixtures/sp2_vector.json")),
    ("so4_minus", include_str!("../fixtures/so4_minus.json")),
    ("so4_plus", include_str!("../fixtures/so4_plus.json")),
    ("so5_full", include_str!("../fixtures/so5_full.json")),
    ("so6_minus", include_str!("../fixtures/so6_minus.json")),
    ("so6_plus", include_str!("../fixtures/so6_plus.json")),
    ("so4_similarity", include_str!("../fixtures/so4_similarity.json")),
    ("so6_similarity", include_str!("../fixtures/so6_similarity.json")),
    ("so4_block_pattern", include_str!("../fixtures/so4_block_pattern.json")),
    ("so6_block_pattern", include_str!("../fixtures/so6_block_pattern.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Result<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| Error::Parse(format!("unknown fixture {name}")))
}

#[derive(Deserialize)]
struct RawTable {
    name: String,
    description: String,
    symmetry: String,
    d: usize,
    chirality: String,
    checked: bool,
    spinor_dim: usize,
    entries: Vec<(usize, usize, usize, usize, Vec<String>)>,
}

#[derive(Clone, Debug)]
pub struct EntryTable {
    pub name: String,
    pub description: String,
    pub symmetry: String,
    pub d: usize,
    pub chirality: String,
    pub checked: bool,
    pub factor_dim: usize,
    pub matrix: SparsePolyMatrix,
}

pub fn parse_table(text: &str) -> Result<EntryTable> {
    let raw: RawTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.spinor_dim;
    let mut trips = Vec::new();
    for (a1, a2, b1, b2, c) in raw.entries {
        if [a1, a2, b1, b2].iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Parse(format!("{}: index out of range", raw.name)));
        }
        let coeffs = c.iter().map(|s| parse_rational(s).map(|r| GR::from_rational(&r))).collect::<Result<Vec<_>>>()?;
        trips.push(((a1 - 1) * n + a2 - 1, (b1 - 1) * n + b2 - 1, SpectralPoly::U(Poly::from_coeffs(coeffs))));
    }
    Ok(EntryTable {
        name: raw.name,
        description: raw.description,
        symmetry: raw.symmetry,
        d: raw.d,
        chirality: raw.chirality,
        checked: raw.checked,
        factor_dim: n,
        matrix: SparsePolyMatrix::from_triplets(n * n, n * n, trips),
    })
}

pub fn table(name: &str) -> Result<EntryTable> {
    parse_table(source(name)?)
}

/// Like [`table`], but a file `<dir>/<name>.json` takes precedence over the shipped copy.
pub fn table_in(dir: Option<&Path>, name: &str) -> Result<EntryTable> {
    if let Some(dir) = dir {
        let path = dir.join(format!("{name}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return parse_table(&text);
        }
    }
    table(name)
}

#[derive(Deserialize)]
struct RawSimilarity {
    dim: usize,
    unit_entries: Vec<(usize, usize)>,
}

/// 0/1 similarity matrix from its unit entries.
pub fn similarity(name: &str) -> Result<ConstMatrix> {
    let raw: RawSimilarity = serde_json::from_str(source(name)?).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.dim;
    if raw.unit_entries.iter().any(|&(i, j)| i == 0 || j == 0 || i > n || j > n) {
        return Err(Error::Parse(format!("{name}: index out of range")));
    }
    Ok(ConstMatrix::from_triplets(n, n, raw.unit_entries.iter().map(|&(i, j)| (i - 1, j - 1, GR::one()))))
}

#[derive(Deserialize)]
struct RawPattern {
    dim: usize,
    nonzero: Vec<(usize, usize)>,
}

/// Allowed nonzero positions, 0-based and sorted, with the matrix dimension.
pub fn block_pattern(name: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let raw: RawPattern = serde_json::from_str(source(name)?).map_err(|e| Error::Parse(e.to_string()))?;
    let mut v: Vec<(usize, usize)> = raw.nonzero.iter().map(|&(i, j)| (i - 1, j - 1)).collect();
    v.sort_unstable();
    Ok((raw.dim, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        for n in names() {
            if n.ends_with("similarity") {
                assert!(similarity(n).unwrap().inverse().is_ok(), "{n}");
            } else if n.ends_with("pattern") {
                assert!(!block_pattern(n).unwrap().1.is_empty());
            } else {
                let t = table(n).unwrap();
                assert_eq!(t.matrix.rows(), t.factor_dim * t.factor_dim, "{n}");
            }
        }
    }

    #[test]
    fn so3_table_is_two_u_plus_swap() {
        let t = table("so3_full").unwrap();
        assert_eq!(t.matrix.get(1, 2).as_constant(), Some(GR::one()));
        assert_eq!(t.matrix.degree_u(), Some(1));
        assert!(parse_table("{\"name\":\"x\"}").is_err());
    }
}
