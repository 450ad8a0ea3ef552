//! Coefficient choices accepted on the command line.

use bredon::acoeff::CoeffSystem;
use bredon::mackey::{concretize, table_from_json, MackeyExpr, MackeyTable};
use bredon::repring::{GroupSpec, PrimeSet};

use crate::CliError;

/// `Z`, `A`, a split `A[p,q,…]` (Burnside on the listed primes, `Z` on the
/// rest) or a table loaded from a file.
#[derive(Clone, Debug)]
pub enum Coefficients {
    System(CoeffSystem),
    Custom { label: String, table: MackeyTable },
}

impl Coefficients {
    pub fn label(&self) -> String {
        match self {
            Coefficients::System(c) => c.to_string(),
            Coefficients::Custom { label, .. } => label.clone(),
        }
    }

    pub fn table(&self) -> MackeyTable {
        match self {
            Coefficients::System(c) => concretize(&MackeyExpr::atom(c.group(), c.atom())),
            Coefficients::Custom { table, .. } => table.clone(),
        }
    }
}

pub fn parse_coeff_system(group: &GroupSpec, src: &str) -> Result<CoeffSystem, CliError> {
    let s = src.trim();
    match s {
        "Z" => return Ok(CoeffSystem::constant(group)),
        "A" => return Ok(CoeffSystem::full_burnside(group)),
        _ => {}
    }
    let inner = s
        .strip_prefix("A[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| CliError::Usage(format!("unknown coefficients {src:?}; expected Z, A or A[p,...]")))?;
    let mut set = PrimeSet::EMPTY;
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let p: u64 = part.parse().map_err(|_| CliError::Usage(format!("{part:?} is not a prime of n")))?;
        let i = group
            .primes()
            .iter()
            .position(|&q| q == p)
            .ok_or_else(|| CliError::Usage(format!("{p} is not a prime factor of {}", group.n())))?;
        set = set.with(i);
    }
    Ok(CoeffSystem::new(group, set))
}

pub fn load_coefficients(group: &GroupSpec, choice: &str, file: Option<&str>) -> Result<Coefficients, CliError> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
        let table = table_from_json(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
        if table.group() != group {
            return Err(CliError::Usage(format!("{path} is a table over C_{}, not C_{}", table.group().n(), group.n())));
        }
        return Ok(Coefficients::Custom { label: format!("table {path}"), table });
    }
    parse_coeff_system(group, choice).map(Coefficients::System)
}
