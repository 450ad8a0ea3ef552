//! Command-line front end: cohomology of a point, products in the integral
//! ring, oracle sweeps, property sweeps and freeness reports, each as an
//! aligned table or JSON.

pub mod coeff;
pub mod report;
pub mod suites;
pub mod sweep;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bredon::acoeff::{classify_over, cohomology_a_mackey, CoeffSystem, MackeyValue};
use bredon::cellular::{mackey_assemble, sphere_complex};
use bredon::freeness::{check_cp, check_grassmann, cp_cells, grassmann_cells, ll_dims, EvenTypeReport};
use bredon::mackey::{concretize, table_to_json, tables_match, MackeyTable};
use bredon::repring::{classify, parse_grading, FixedDims, GroupSpec, VirtualRep};
use bredon::ringz::{class_of_monomial, multiply, parse_monomial, RingClass};
use bredon::zcoeff::cohomology_z;

use coeff::{load_coefficients, parse_coeff_system, Coefficients};
use report::*;
use suites::{properties_suite, ring_suite, DEFAULT_SEED};
use sweep::{oracle_levels, oracle_sweep, sphere_form, sphere_grid, MAX_ORACLE_CIRCLES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Parser, Debug)]
#[command(name = "bredon", version, about = "Bredon cohomology of cyclic groups of odd squarefree order")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Order of the cyclic group.
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of a point in the given gradings.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Z, A or A[p,q,...] (Burnside on the listed primes).
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// A coefficient table in the JSON table format; overrides --coeff.
        #[arg(long)]
        coeff_file: Option<String>,
        /// Grading expression; may be repeated.
        #[arg(long, required = true, allow_hyphen_values = true)]
        alpha: Vec<String>,
        /// Adds every trivial shift LO..=HI to each grading, as `LO:HI`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Compares with the cellular oracle when the grading comes from a sphere.
        #[arg(long)]
        oracle: bool,
    },
    /// Products in the integral ring.
    Ring {
        #[command(flatten)]
        common: Common,
        #[command(subcommand)]
        op: RingOp,
    },
    /// Sweep of sphere gradings comparing the engines with the oracle.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        max_factors: usize,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Randomized structural checks on the closed forms.
    Properties {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Prints a coefficient table in the format read by `--coeff-file`.
    Table {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// Even-type cell structures and their free bases.
    Freeness {
        #[command(subcommand)]
        space: FreenessSpace,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingOp {
    /// Multiplies two classes: monomials such as `3 u(1) a(5)^2`, or
    /// `class(GRADING; VALUE)` for any grading.
    Mul { left: String, right: String },
    /// Relations, random products, generation and duality.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        triples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FreenessSpace {
    /// Projective space of the complete universe up to `m`.
    Cp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: u64,
    },
    /// Grassmannian of `m`-planes in the first `l` summands.
    Grassmann {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

/// Parses arguments (the first is the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Command::Table { n, coeff } = &cli.command {
        return match table_json(*n, coeff) {
            Ok(text) => Outcome { code: EXIT_OK, stdout: text + "\n", stderr: String::new() },
            Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
        };
    }
    match execute(&cli.command) {
        Ok((report, format, ok)) => {
            let stdout = match format {
                Format::Json => report.to_json() + "\n",
                Format::Table => render(&report),
            };
            Outcome { code: if ok { EXIT_OK } else { EXIT_MISMATCH }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// The concretized table of a coefficient choice, as JSON.
pub fn table_json(n: u64, coeff: &str) -> Result<String, CliError> {
    let group = group_of(n)?;
    let system = parse_coeff_system(&group, coeff)?;
    table_to_json(&Coefficients::System(system).table()).map_err(|e| CliError::Usage(e.to_string()))
}

fn group_of(n: u64) -> Result<GroupSpec, CliError> {
    GroupSpec::new(n).map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs a parsed command: the report, its format and whether every
/// verification passed.
pub fn execute(command: &Command) -> Result<(Report, Format, bool), CliError> {
    match command {
        Command::Cohomology { common, coeff, coeff_file, alpha, range, oracle } => {
            let group = group_of(common.n)?;
            let coeffs = load_coefficients(&group, coeff, coeff_file.as_deref())?;
            let gradings = expand_gradings(&group, alpha, range.as_deref())?;
            let report = cohomology_report(&group, &coeffs, &gradings, *oracle)?;
            let ok = report.rows.iter().all(|r| r.oracle.as_ref().is_none_or(|o| o.status != "MISMATCH"));
            Ok((Report::Cohomology(report), common.format, ok))
        }
        Command::Ring { common, op } => {
            let group = group_of(common.n)?;
            match op {
                RingOp::Mul { left, right } => {
                    Ok((Report::RingProduct(ring_product(&group, left, right)?), common.format, true))
                }
                RingOp::Suite { seed, triples } => {
                    let outcome = ring_suite(&group, *seed, *triples, 200, 8);
                    let ok = outcome.clean();
                    let report = RingSuiteReport { schema: SCHEMA.into(), n: group.n(), seed: *seed, outcome };
                    Ok((Report::RingSuite(report), common.format, ok))
                }
            }
        }
        Command::Oracle { common, max_factors, coeff } => {
            let group = group_of(common.n)?;
            if *max_factors > MAX_ORACLE_CIRCLES {
                return Err(CliError::Usage(format!("--max-factors is limited to {MAX_ORACLE_CIRCLES}")));
            }
            let system = parse_coeff_system(&group, coeff)?;
            let grid = sphere_grid(&group, *max_factors);
            let outcome = oracle_sweep(&group, &grid, &system);
            let ok = outcome.clean();
            let report = OracleReport {
                schema: SCHEMA.into(),
                n: group.n(),
                coefficients: system.to_string(),
                max_factors: *max_factors,
                spheres: grid.len(),
                outcome,
            };
            Ok((Report::Oracle(report), common.format, ok))
        }
        Command::Properties { common, count, seed } => {
            let group = group_of(common.n)?;
            let outcome = properties_suite(&group, *count, *seed);
            let ok = outcome.clean();
            let report = PropertiesReport {
                schema: SCHEMA.into(),
                n: group.n(),
                seed: *seed,
                gradings: outcome.gradings,
                checks: outcome.checks,
            };
            Ok((Report::Properties(report), common.format, ok))
        }
        Command::Table { .. } => Err(CliError::Usage("the table command prints JSON directly".into())),
        Command::Freeness { space } => {
            let (report, format) = match space {
                FreenessSpace::Cp { common, m } => (cp_report(&group_of(common.n)?, *m), common.format),
                FreenessSpace::Grassmann { common, l, m } => {
                    if *m == 0 || m > l {
                        return Err(CliError::Usage("need 1 <= m <= l".into()));
                    }
                    (grassmann_report(&group_of(common.n)?, *l, *m), common.format)
                }
            };
            let ok = report.passes;
            Ok((Report::Freeness(report), format, ok))
        }
    }
}

fn parse_alpha(group: &GroupSpec, src: &str) -> Result<VirtualRep, CliError> {
    parse_grading(group, src).map_err(|e| CliError::Parse(format!("{src:?}: {e}")))
}

fn expand_gradings(group: &GroupSpec, alpha: &[String], range: Option<&str>) -> Result<Vec<VirtualRep>, CliError> {
    let base: Vec<VirtualRep> = alpha.iter().map(|a| parse_alpha(group, a)).collect::<Result<_, _>>()?;
    let Some(range) = range else { return Ok(base) };
    let (lo, hi) = range
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?)))
        .filter(|(a, b)| a <= b && b - a <= 10_000)
        .ok_or_else(|| CliError::Usage(format!("--range expects LO:HI with LO <= HI, got {range:?}")))?;
    Ok(base.iter().flat_map(|v| (lo..=hi).map(move |t| v + &VirtualRep::trivial(v.group(), t))).collect())
}

fn dims_list(fd: &FixedDims) -> Vec<(u64, i64)> {
    fd.by_divisor()
}

fn levels_of(values: &[(u64, bredon::abelian::FgAbelianGroup)]) -> Vec<LevelValue> {
    values.iter().map(|(m, v)| LevelValue { level: *m, value: v.to_string() }).collect()
}

/// Closed-form answer for one grading: group, optional Mackey functor and
/// classification.
fn closed_form(alpha: &VirtualRep, system: &CoeffSystem) -> (String, String, Option<MackeyTable>, String) {
    let fd = alpha.fixed_dims();
    if system.burnside().is_empty() {
        let z = cohomology_z(alpha);
        let table = concretize(&z.mackey);
        return (z.group_at_top.to_string(), z.mackey.to_string(), Some(table), format!("{:?}", classify(&fd)));
    }
    let a = cohomology_a_mackey(alpha, system);
    let case = format!("{:?}", classify_over(&fd, system.burnside()));
    match a.mackey {
        MackeyValue::Known(e) => (a.group_at_top.to_string(), e.to_string(), Some(concretize(&e)), case),
        MackeyValue::RepresentationDependent => {
            (a.group_at_top.to_string(), "Mackey: representation-dependent".into(), None, case)
        }
    }
}

fn oracle_check(
    alpha: &VirtualRep,
    table: &MackeyTable,
    expected: Option<(&MackeyTable, Vec<(u64, bredon::abelian::FgAbelianGroup)>)>,
) -> Result<OracleCheck, CliError> {
    let Some(form) = sphere_form(alpha) else {
        return Ok(OracleCheck {
            status: "UNREACHABLE".into(),
            detail: "mixed signs: not the grading of a sphere".into(),
            levels: Vec::new(),
        });
    };
    if form.exponents.len() > MAX_ORACLE_CIRCLES {
        return Ok(OracleCheck {
            status: "UNREACHABLE".into(),
            detail: format!("more than {MAX_ORACLE_CIRCLES} circles"),
            levels: Vec::new(),
        });
    }
    let err = |e: bredon::cellular::CellularError| CliError::Usage(format!("oracle: {e}"));
    let complex = sphere_complex(alpha.group(), &form.exponents).map_err(err)?;
    let levels = oracle_levels(&complex, table, form.degree, form.variance).map_err(err)?;
    let Some((expected_table, expected_levels)) = expected else {
        return Ok(OracleCheck { status: "COMPUTED".into(), detail: String::new(), levels: levels_of(&levels) });
    };
    let mut problems: Vec<String> = levels
        .iter()
        .zip(&expected_levels)
        .filter(|(a, b)| a.1 != b.1)
        .map(|((m, got), (_, want))| format!("level {m}: oracle {got}, engine {want}"))
        .collect();
    let assembled = mackey_assemble(&complex, form.degree, table, form.variance).map_err(err)?;
    if !tables_match(&assembled, expected_table).map_err(|e| CliError::Usage(e.to_string()))? {
        problems.push("assembled Mackey functor differs".into());
    }
    Ok(OracleCheck {
        status: if problems.is_empty() { "MATCH".into() } else { "MISMATCH".into() },
        detail: problems.join("; "),
        levels: levels_of(&levels),
    })
}

pub fn cohomology_report(
    group: &GroupSpec,
    coeffs: &Coefficients,
    gradings: &[VirtualRep],
    oracle: bool,
) -> Result<CohomologyReport, CliError> {
    let mut rows = Vec::new();
    for alpha in gradings {
        let fd = alpha.fixed_dims();
        let row = match coeffs {
            Coefficients::System(system) => {
                let (grp, mackey, table, case) = closed_form(alpha, system);
                let check = if oracle {
                    let engine = sweep::engine_answer(alpha, system);
                    let coeff_table = coeffs.table();
                    Some(match &table {
                        Some(t) => oracle_check(alpha, &coeff_table, Some((t, engine.levels)))?,
                        None => {
                            // Only the levels are determined; compare those.
                            let mut c = oracle_check(alpha, &coeff_table, None)?;
                            if c.status == "COMPUTED" {
                                let same = c.levels.iter().zip(&engine.levels).all(|(a, b)| a.value == b.1.to_string());
                                c.status = if same { "MATCH".into() } else { "MISMATCH".into() };
                            }
                            c
                        }
                    })
                } else {
                    None
                };
                CohomologyRow {
                    grading: alpha.to_string(),
                    fixed_dims: dims_list(&fd),
                    classification: Some(case),
                    summary: format!("{grp}; {mackey}"),
                    group: Some(grp),
                    mackey: Some(mackey),
                    oracle: check,
                }
            }
            Coefficients::Custom { table, .. } => {
                let check = oracle_check(alpha, table, None)?;
                let top = check.levels.last().map(|l| l.value.clone());
                CohomologyRow {
                    grading: alpha.to_string(),
                    fixed_dims: dims_list(&fd),
                    classification: None,
                    summary: top.clone().unwrap_or_else(|| "no closed form; oracle unreachable".into()),
                    group: top,
                    mackey: None,
                    oracle: Some(check),
                }
            }
        };
        rows.push(row);
    }
    Ok(CohomologyReport { schema: SCHEMA.into(), n: group.n(), coefficients: coeffs.label(), rows })
}

pub fn ring_product(group: &GroupSpec, left: &str, right: &str) -> Result<RingProductReport, CliError> {
    let class = |src: &str| {
        if let Some(inner) = src.trim().strip_prefix("class(").and_then(|r| r.strip_suffix(')')) {
            let (grading, value) = inner
                .split_once(';')
                .ok_or_else(|| CliError::Parse(format!("{src:?}: expected class(GRADING; VALUE)")))?;
            let grading = parse_alpha(group, grading)?;
            let value: i64 =
                value.trim().parse().map_err(|_| CliError::Parse(format!("{src:?}: {value:?} is not an integer")))?;
            return Ok(RingClass::new(&grading, value));
        }
        let (c, m) = parse_monomial(group, src).map_err(|e| CliError::Parse(format!("{src:?}: {e}")))?;
        class_of_monomial(group, c, &m).map_err(|e| CliError::Usage(e.to_string()))
    };
    let (x, y) = (class(left)?, class(right)?);
    let p = multiply(&x, &y);
    Ok(RingProductReport {
        schema: SCHEMA.into(),
        n: group.n(),
        left: left.into(),
        right: right.into(),
        grading: p.grading().to_string(),
        group: p.group().to_string(),
        value: p.value().to_string(),
        summary: p.to_string(),
    })
}

fn freeness_rows(
    labels: Vec<String>,
    cells: Vec<(VirtualRep, u64, FixedDims, FixedDims, bool)>,
    checked: &[FixedDims],
) -> Vec<FreenessRow> {
    cells
        .into_iter()
        .zip(labels)
        .enumerate()
        .map(|(i, ((rep, iso, direct, floor, mismatch), label))| FreenessRow {
            label,
            grading: rep.to_string(),
            isotropy: iso,
            dims_direct: dims_list(&direct),
            dims_floor: dims_list(&floor),
            mismatch,
            below_later: checked[i + 1..].iter().all(|later| ll_dims(&checked[i], later)),
        })
        .collect()
}

fn freeness_report(kind: &str, n: u64, check: EvenTypeReport, rows: Vec<FreenessRow>) -> FreenessReport {
    FreenessReport {
        schema: SCHEMA.into(),
        kind: kind.into(),
        n,
        passes: check.passes(),
        odd_cells: check.odd_cells,
        offending_pairs: check.offending_pairs,
        basis_size: check.basis.len(),
        rows,
    }
}

pub fn cp_report(group: &GroupSpec, m: u64) -> FreenessReport {
    let cells = cp_cells(group, m);
    let check = check_cp(&cells);
    let dims: Vec<FixedDims> = cells.iter().map(|c| c.dims_direct.clone()).collect();
    let labels = cells.iter().map(|c| format!("W_{}", c.r)).collect();
    let data = cells
        .into_iter()
        .map(|c| {
            let mismatch = c.dims_direct != c.dims_floor;
            (c.cell.rep, c.cell.isotropy, c.dims_direct, c.dims_floor, mismatch)
        })
        .collect();
    freeness_report("cp", group.n(), check, freeness_rows(labels, data, &dims))
}

pub fn grassmann_report(group: &GroupSpec, l: u64, m: u64) -> FreenessReport {
    let cells = grassmann_cells(group, l, m);
    let check = check_grassmann(&cells);
    let dims: Vec<FixedDims> = cells.iter().map(|c| c.dims_floor.clone()).collect();
    let labels = cells.iter().map(|c| format!("{:?}", c.symbol)).collect();
    let data =
        cells.into_iter().map(|c| (c.cell.rep, c.cell.isotropy, c.dims_direct, c.dims_floor, c.mismatch)).collect();
    freeness_report("grassmann", group.n(), check, freeness_rows(labels, data, &dims))
}

fn dims_text(d: &[(u64, i64)]) -> String {
    let parts: Vec<String> = d.iter().map(|(m, v)| format!("{m}:{v}")).collect();
    format!("({})", parts.join(", "))
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// Human-readable rendering.
pub fn render(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Cohomology(r) => {
            let _ = writeln!(out, "n = {}, coefficients {}", r.n, r.coefficients);
            for row in &r.rows {
                let _ = writeln!(out, "{}  dims {}", row.grading, dims_text(&row.fixed_dims));
                if let Some(c) = &row.classification {
                    let _ = writeln!(out, "  case: {c}");
                }
                let _ = writeln!(out, "  {}", row.summary);
                if let Some(o) = &row.oracle {
                    let levels: Vec<String> = o.levels.iter().map(|l| format!("{}:{}", l.level, l.value)).collect();
                    let _ = writeln!(out, "  oracle: {} [{}]{}", o.status, levels.join(", "), if o.detail.is_empty() {
                        String::new()
                    } else {
                        format!(" {}", o.detail)
                    });
                }
            }
        }
        Report::RingProduct(r) => {
            let _ = writeln!(out, "{}", r.summary);
        }
        Report::RingSuite(r) => {
            let o = &r.outcome;
            let _ = writeln!(out, "n = {}, seed {}", r.n, r.seed);
            let _ = writeln!(out, "relations: {} checked, {} violations", o.relations.checked, o.relations.violations.len());
            for c in [&o.products, &o.duality, &o.negative_products] {
                let _ = writeln!(out, "{}: {} checked, {} violations", c.name, c.checked, c.violations);
            }
            let _ = writeln!(out, "generation failures: {}", o.generation_failures.len());
        }
        Report::Oracle(r) => {
            let o = &r.outcome;
            let _ = writeln!(out, "n = {}, coefficients {}, {} spheres", r.n, r.coefficients, r.spheres);
            let _ = writeln!(out, "{} comparisons, {} mismatches", o.comparisons, o.mismatches);
            let _ = writeln!(out, "{} Mackey tables, {} mismatches", o.table_checks, o.table_mismatches);
            for d in &o.details {
                let _ = writeln!(out, "MISMATCH {d}");
            }
        }
        Report::Properties(r) => {
            let _ = writeln!(out, "n = {}, seed {}, {} gradings", r.n, r.seed, r.gradings);
            let rows: Vec<Vec<String>> =
                r.checks.iter().map(|c| vec![c.name.clone(), c.checked.to_string(), c.violations.to_string()]).collect();
            table(&mut out, &["property", "checked", "violations"], &rows);
            for c in &r.checks {
                for e in &c.examples {
                    let _ = writeln!(out, "VIOLATION {}: {e}", c.name);
                }
            }
        }
        Report::Freeness(r) => {
            let rows: Vec<Vec<String>> = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.label.clone(),
                        row.grading.clone(),
                        dims_text(&row.dims_direct),
                        dims_text(&row.dims_floor),
                        if row.mismatch { "yes".into() } else { "no".into() },
                        if row.below_later { "ok".into() } else { "fails".into() },
                    ]
                })
                .collect();
            table(&mut out, &["cell", "grading", "dims", "floor dims", "mismatch", "order"], &rows);
            let verdict = if r.passes { "even type" } else { "not even type" };
            let _ = writeln!(out, "{verdict}; {} basis elements", r.basis_size);
        }
    }
    out
}
