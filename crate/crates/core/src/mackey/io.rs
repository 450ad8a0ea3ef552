//! JSON form of a [`MackeyTable`]:
//!
//! ```text
//! { "schema": "bredon.mackey-table/1", "n": 15,
//!   "levels": [ { "divisor": 3, "generators": 1, "relations": [[3]] }, ... ],
//!   "restrictions": [ { "from": 15, "to": 3, "matrix": [[1]] }, ... ],
//!   "transfers":    [ { "from": 3, "to": 15, "matrix": [[5]] }, ... ],
//!   "conjugations": [ { "divisor": 1, "matrix": [[0, 1], [1, 0]] } ] }
//! ```
//! Matrices are lists of rows; a map's rows index the target generators.
//! Each relation is a vector over the level's generators. Only cover pairs
//! (`to = from·p` or `from = to·p`) carry maps. `conjugations` is optional.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abelian::IntegerMatrix;
use crate::repring::{GroupSpec, PrimeSet};

use super::table::{covers, Level, MackeyTable};
use super::MackeyError;

pub const TABLE_SCHEMA: &str = "bredon.mackey-table/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    schema: String,
    n: u64,
    levels: Vec<LevelFile>,
    restrictions: Vec<MapFile>,
    transfers: Vec<MapFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    conjugations: Vec<ConjFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelFile {
    divisor: u64,
    generators: usize,
    relations: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    from: u64,
    to: u64,
    matrix: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConjFile {
    divisor: u64,
    matrix: Vec<Vec<i64>>,
}

fn fmt_err(msg: impl Into<String>) -> MackeyError {
    MackeyError::Format(msg.into())
}

fn to_rows(m: &IntegerMatrix) -> Result<Vec<Vec<i64>>, MackeyError> {
    m.to_i64_rows().ok_or_else(|| fmt_err("entry does not fit in 64 bits"))
}

fn matrix(rows: &[Vec<i64>], r: usize, c: usize, what: &str) -> Result<IntegerMatrix, MackeyError> {
    if rows.len() != r {
        return Err(fmt_err(format!("{what}: expected {r} rows, got {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(r * c);
    for row in rows {
        if row.len() != c {
            return Err(fmt_err(format!("{what}: expected rows of length {c}, got {}", row.len())));
        }
        entries.extend(row.iter().map(|&v| BigInt::from(v)));
    }
    Ok(IntegerMatrix::from_entries(r, c, entries))
}

pub fn table_to_json(t: &MackeyTable) -> Result<String, MackeyError> {
    let g = t.group();
    let mut levels = Vec::new();
    for s in g.masks_by_divisor() {
        let lv = t.level(s);
        levels.push(LevelFile {
            divisor: g.divisor(s),
            generators: lv.generators,
            relations: to_rows(&lv.relations.transpose())?,
        });
    }
    let mut restrictions = Vec::new();
    let mut transfers = Vec::new();
    for (s, i) in covers(g) {
        let (lo, hi) = (g.divisor(s), g.divisor(s.with(i)));
        restrictions.push(MapFile { from: hi, to: lo, matrix: to_rows(t.cover_res(s, i))? });
        transfers.push(MapFile { from: lo, to: hi, matrix: to_rows(t.cover_tr(s, i))? });
    }
    let mut conjugations = Vec::new();
    for s in g.masks_by_divisor() {
        if let Some(c) = t.conjugation(s) {
            conjugations.push(ConjFile { divisor: g.divisor(s), matrix: to_rows(c)? });
        }
    }
    let file = TableFile { schema: TABLE_SCHEMA.into(), n: g.n(), levels, restrictions, transfers, conjugations };
    serde_json::to_string_pretty(&file).map_err(|e| fmt_err(e.to_string()))
}

fn cover_of(g: &GroupSpec, upper: u64, lower: u64) -> Result<(PrimeSet, usize), MackeyError> {
    let hi = g.mask_of(upper).ok_or_else(|| fmt_err(format!("{upper} does not divide {}", g.n())))?;
    let lo = g.mask_of(lower).ok_or_else(|| fmt_err(format!("{lower} does not divide {}", g.n())))?;
    if !lo.is_subset_of(hi) || hi.minus(lo).len() != 1 {
        return Err(fmt_err(format!("{lower} -> {upper} is not a cover pair")));
    }
    Ok((lo, hi.minus(lo).indices().next().expect("one prime")))
}

/// Parses and validates a table file.
pub fn table_from_json(src: &str) -> Result<MackeyTable, MackeyError> {
    let file: TableFile = serde_json::from_str(src).map_err(|e| fmt_err(e.to_string()))?;
    if file.schema != TABLE_SCHEMA {
        return Err(fmt_err(format!("unknown schema {:?}", file.schema)));
    }
    let g = GroupSpec::new(file.n)?;
    let mut levels: Vec<Option<Level>> = vec![None; g.num_divisors()];
    for lf in &file.levels {
        let s = g.mask_of(lf.divisor).ok_or_else(|| fmt_err(format!("{} does not divide {}", lf.divisor, g.n())))?;
        if levels[s.0 as usize].is_some() {
            return Err(fmt_err(format!("level {} given twice", lf.divisor)));
        }
        if lf.generators > 4096 {
            return Err(fmt_err("too many generators"));
        }
        let rel = matrix(&lf.relations, lf.relations.len(), lf.generators, "relations")?.transpose();
        levels[s.0 as usize] = Some(Level::new(lf.generators, rel)?);
    }
    let levels: Vec<Level> = levels
        .into_iter()
        .enumerate()
        .map(|(m, l)| l.ok_or_else(|| fmt_err(format!("level {} missing", g.divisor(PrimeSet(m as u32))))))
        .collect::<Result<_, _>>()?;
    let gens = |s: PrimeSet| levels[s.0 as usize].generators;
    let mut res = BTreeMap::new();
    for mf in &file.restrictions {
        let (s, i) = cover_of(&g, mf.from, mf.to)?;
        let m = matrix(&mf.matrix, gens(s), gens(s.with(i)), "restriction")?;
        if res.insert((s, i), m).is_some() {
            return Err(fmt_err(format!("restriction {} -> {} given twice", mf.from, mf.to)));
        }
    }
    let mut tr = BTreeMap::new();
    for mf in &file.transfers {
        let (s, i) = cover_of(&g, mf.to, mf.from)?;
        let m = matrix(&mf.matrix, gens(s.with(i)), gens(s), "transfer")?;
        if tr.insert((s, i), m).is_some() {
            return Err(fmt_err(format!("transfer {} -> {} given twice", mf.from, mf.to)));
        }
    }
    let mut conj = BTreeMap::new();
    for cf in &file.conjugations {
        let s = g.mask_of(cf.divisor).ok_or_else(|| fmt_err(format!("{} does not divide {}", cf.divisor, g.n())))?;
        let m = matrix(&cf.matrix, gens(s), gens(s), "conjugation")?;
        if conj.insert(s, m).is_some() {
            return Err(fmt_err(format!("conjugation at {} given twice", cf.divisor)));
        }
    }
    MackeyTable::new(&g, levels, res, tr, conj)
}
