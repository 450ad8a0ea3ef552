//! Comparisons between the closed-form engines and the cellular oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use bredon::abelian::FgAbelianGroup;
use bredon::acoeff::{a_level_value, cohomology_a_mackey, CoeffSystem, MackeyValue};
use bredon::cellular::{evaluate, mackey_assemble, sphere_complex, CellularError, EquivChainComplex, Variance};
use bredon::mackey::{concretize, tables_match, MackeyExpr, MackeyTable};
use bredon::repring::{GroupSpec, VirtualRep};
use bredon::zcoeff::cohomology_z;

/// Largest number of circles the oracle will join on request.
pub const MAX_ORACLE_CIRCLES: usize = 6;

/// A grading written as `V - k` (homology of `S^V`) or `k - V` (cohomology).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereForm {
    pub exponents: Vec<u64>,
    pub degree: usize,
    pub variance: Variance,
}

/// Writes `alpha` as a sphere grading when its `ξ`-coefficients share a sign
/// and the trivial part has the opposite sign.
pub fn sphere_form(alpha: &VirtualRep) -> Option<SphereForm> {
    let coeffs = alpha.coeffs();
    let t = alpha.trivial_part();
    let expand = |sign: i64| {
        let mut out = Vec::new();
        for (&r, &c) in coeffs {
            for _ in 0..(c * sign) {
                out.push(r);
            }
        }
        out
    };
    if coeffs.values().all(|&c| c >= 0) && t <= 0 {
        Some(SphereForm { exponents: expand(1), degree: (-t) as usize, variance: Variance::Homology })
    } else if coeffs.values().all(|&c| c <= 0) && t >= 0 {
        Some(SphereForm { exponents: expand(-1), degree: t as usize, variance: Variance::Cohomology })
    } else {
        None
    }
}

/// All multisets of at most `max` proper divisors, smallest first.
pub fn sphere_grid(group: &GroupSpec, max: usize) -> Vec<Vec<u64>> {
    let props: Vec<u64> = group.divisors().into_iter().filter(|&d| d < group.n()).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for v in &frontier {
            let start = v.last().map(|l| props.iter().position(|p| p == l).unwrap()).unwrap_or(0);
            for &p in &props[start..] {
                let mut w = v.clone();
                w.push(p);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn sphere_rep(group: &GroupSpec, exps: &[u64]) -> VirtualRep {
    let mut v = VirtualRep::zero(group);
    for &r in exps {
        v.add_xi(r as i64, 1);
    }
    v
}

/// What the closed-form engines say in one grading.
#[derive(Clone, Debug)]
pub struct EngineAnswer {
    pub levels: Vec<(u64, FgAbelianGroup)>,
    pub mackey: Option<MackeyExpr>,
}

pub fn engine_answer(alpha: &VirtualRep, coeff: &CoeffSystem) -> EngineAnswer {
    let group = alpha.group();
    if coeff.burnside().is_empty() {
        let expr = cohomology_z(alpha).mackey;
        let levels = group.divisors().into_iter().map(|m| (m, expr.value_at(group.mask_of(m).unwrap()))).collect();
        return EngineAnswer { levels, mackey: Some(expr) };
    }
    let fd = alpha.fixed_dims();
    let levels = group
        .divisors()
        .into_iter()
        .map(|m| (m, a_level_value(&fd, coeff.burnside(), group.mask_of(m).unwrap())))
        .collect();
    let mackey = match cohomology_a_mackey(alpha, coeff).mackey {
        MackeyValue::Known(e) => Some(e),
        MackeyValue::RepresentationDependent => None,
    };
    EngineAnswer { levels, mackey }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub gradings: usize,
    pub comparisons: usize,
    pub mismatches: usize,
    pub table_checks: usize,
    pub table_mismatches: usize,
    pub details: Vec<String>,
    #[serde(skip)]
    pub emitted: Vec<MackeyExpr>,
}

impl SweepOutcome {
    fn absorb(&mut self, other: SweepOutcome) {
        self.gradings += other.gradings;
        self.comparisons += other.comparisons;
        self.mismatches += other.mismatches;
        self.table_checks += other.table_checks;
        self.table_mismatches += other.table_mismatches;
        self.details.extend(other.details);
        self.emitted.extend(other.emitted);
    }

    pub fn clean(&self) -> bool {
        self.mismatches == 0 && self.table_mismatches == 0
    }
}

/// Oracle levels of one sphere grading.
pub fn oracle_levels(
    complex: &EquivChainComplex,
    table: &MackeyTable,
    degree: usize,
    variance: Variance,
) -> Result<Vec<(u64, FgAbelianGroup)>, CellularError> {
    complex
        .group()
        .divisors()
        .into_iter()
        .map(|m| Ok((m, evaluate(complex, table, m, variance)?.group(degree)?)))
        .collect()
}

fn sweep_sphere(group: &GroupSpec, exps: &[u64], coeff: &CoeffSystem, table: &MackeyTable) -> SweepOutcome {
    let mut out = SweepOutcome::default();
    let complex = match sphere_complex(group, exps) {
        Ok(c) => c,
        Err(e) => {
            out.mismatches += 1;
            out.details.push(format!("V={exps:?}: {e}"));
            return out;
        }
    };
    let v = sphere_rep(group, exps);
    for k in 0..=(v.dim() + 1) as usize {
        let kv = VirtualRep::trivial(group, k as i64);
        for (variance, alpha) in [(Variance::Homology, &v - &kv), (Variance::Cohomology, &kv - &v)] {
            out.gradings += 1;
            let engine = engine_answer(&alpha, coeff);
            let tag = format!("V={exps:?} k={k} {variance:?}");
            match oracle_levels(&complex, table, k, variance) {
                Ok(levels) => {
                    for ((m, got), (_, want)) in levels.iter().zip(&engine.levels) {
                        out.comparisons += 1;
                        if got != want {
                            out.mismatches += 1;
                            out.details.push(format!("{tag} level {m}: oracle {got}, engine {want}"));
                        }
                    }
                }
                Err(e) => {
                    out.mismatches += 1;
                    out.details.push(format!("{tag}: {e}"));
                }
            }
            if let Some(expr) = engine.mackey {
                out.table_checks += 1;
                let ok = mackey_assemble(&complex, k, table, variance)
                    .map_err(|e| e.to_string())
                    .and_then(|t| tables_match(&t, &concretize(&expr)).map_err(|e| e.to_string()));
                match ok {
                    Ok(true) => {}
                    Ok(false) => {
                        out.table_mismatches += 1;
                        out.details.push(format!("{tag}: assembled table differs from {expr}"));
                    }
                    Err(e) => {
                        out.table_mismatches += 1;
                        out.details.push(format!("{tag}: {e}"));
                    }
                }
                out.emitted.push(expr);
            }
        }
    }
    out
}

/// Runs the oracle on every sphere of `grid`, in parallel, and merges the
/// results in grid order.
pub fn oracle_sweep(group: &GroupSpec, grid: &[Vec<u64>], coeff: &CoeffSystem) -> SweepOutcome {
    let table = concretize(&MackeyExpr::atom(group, coeff.atom()));
    let parts: Vec<SweepOutcome> = grid.par_iter().map(|v| sweep_sphere(group, v, coeff, &table)).collect();
    let mut out = SweepOutcome::default();
    for p in parts {
        out.absorb(p);
    }
    out
}
