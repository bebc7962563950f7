//! Command implementations behind the `realform` binary. Every command
//! returns its full output as a string so runs are byte-deterministic.

use std::collections::BTreeMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adaptation::verify_sgn;
use crate::chevalley::verify_axioms;
use crate::error::Error;
use crate::nilpotent::{
    apply_preset, bch_multiply, chart_dimensions, compare_tables, extract_n, lattice_check, random_group_element,
    rescale_to_bound, GroupElement, NilpotentAlgebra, Preset, TableMatch,
};
use crate::rational::{format_ratio, int, is_integer, parse_big_rational, BigRational};
use crate::real_algebra::{
    iwasawa_basis, render_with, verify_complex_structure, verify_jacobi, RealForm, StructureTable,
};
use crate::satake::{catalog_names, parse_diagram, standard_forms, FormClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Which basis of `𝔫` to present: the published normalization where one
/// exists, or the raw `𝒩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PresetChoice {
    #[default]
    Paper,
    Raw,
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Catalog name or path to a diagram file; `None` means the whole catalog for `verify`.
    pub form: Option<String>,
    pub n: Option<usize>,
    pub format: OutputFormat,
    pub seed: u64,
    pub preset: PresetChoice,
    pub against: Option<String>,
    pub max_rank: usize,
}

/// A failed command and its process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::input(e.to_string())
    }
}

/// Output text plus whether every check passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub body: String,
    pub passed: bool,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_diagram_text(form: &str) -> Option<std::io::Result<String>> {
    Path::new(form).is_file().then(|| std::fs::read_to_string(form))
}

/// A catalog name or diagram file.
pub fn load_form(form: &str, n: Option<usize>) -> Result<RealForm, CliError> {
    match load_diagram_text(form) {
        Some(text) => {
            let text = text.map_err(|e| CliError::input(format!("cannot read {form}: {e}")))?;
            Ok(RealForm::build(&parse_diagram(&text)?)?)
        }
        None => Ok(RealForm::from_catalog(form, n)?),
    }
}

fn required_form(cfg: &RunConfig) -> Result<RealForm, CliError> {
    let form = cfg.form.as_deref().ok_or_else(|| CliError::input("--form is required"))?;
    load_form(form, cfg.n)
}

pub fn cmd_table(cfg: &RunConfig) -> Result<String, CliError> {
    let form = required_form(cfg)?;
    Ok(match cfg.format {
        OutputFormat::Json => pretty(&form.table.to_json()),
        OutputFormat::Text => {
            let p = &form.table.provenance;
            let mut out = format!("# {}: dimension {}, orientation {}\n", p.form, form.dim(), p.orientation.join("; "));
            out.push_str(&form.table.render_text());
            out
        }
    })
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_ratio).collect()
}

/// The algebra shown to the user, with its labels and the preset when used.
fn presented(form: &RealForm, raw: &NilpotentAlgebra, choice: PresetChoice) -> Result<(NilpotentAlgebra, Option<Preset>), CliError> {
    let preset = match choice {
        PresetChoice::Paper => apply_preset(form, raw)?,
        PresetChoice::Raw => None,
    };
    Ok(match preset {
        Some(p) => (p.algebra.clone(), Some(p)),
        None => (raw.clone(), None),
    })
}

fn center_strings(alg: &NilpotentAlgebra) -> Vec<String> {
    alg.center_basis.iter().map(|e| render_with(e, |k| alg.labels[k].clone())).collect()
}

fn labelled_table_text(alg: &NilpotentAlgebra) -> String {
    let mut out = String::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let e = alg.table.bracket(i, j);
            if !e.is_zero() {
                let rhs = render_with(e, |k| alg.labels[k].clone());
                out.push_str(&format!("[{}, {}] = {rhs}\n", alg.labels[i], alg.labels[j]));
            }
        }
    }
    out
}

pub fn cmd_iwasawa(cfg: &RunConfig) -> Result<String, CliError> {
    let form = required_form(cfg)?;
    let raw = extract_n(&form)?;
    let (shown, preset) = presented(&form, &raw, cfg.preset)?;
    let (bounded, rescaling) = rescale_to_bound(&raw)?;
    let lattice = lattice_check(&raw)?;
    let (chart, flat) = chart_dimensions(&form.ctx);
    let restricted = form.ctx.restricted_system();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let x = random_group_element(shown.dim(), &mut rng);
    let y = random_group_element(shown.dim(), &mut rng);
    let product = bch_multiply(&shown, &x, &y)?;
    let grading: BTreeMap<String, Vec<String>> = raw
        .grading
        .iter()
        .map(|(h, idx)| (h.to_string(), idx.iter().map(|&i| raw.labels[i].clone()).collect()))
        .collect();
    match cfg.format {
        OutputFormat::Json => {
            let preset_json = preset.as_ref().map(|p| {
                json!({
                    "reference": p.reference.name,
                    "normalization": p.description,
                    "labels": p.algebra.labels,
                    "table": p.algebra.table.to_json(),
                    "comparison": compare_tables(&p.algebra.table, &p.reference),
                })
            });
            Ok(pretty(&json!({
                "form": form.table.provenance.form,
                "real_rank": form.ctx.real_rank(),
                "restricted_type": restricted.type_label,
                "dimension": raw.dim(),
                "abelian": raw.is_abelian(),
                "nilpotency_class": raw.class,
                "center_dimension": raw.center_basis.len(),
                "center": center_strings(&shown),
                "grading": grading,
                "chart_dimensions": { "chart": chart, "flat": flat },
                "raw": { "labels": raw.labels, "table": raw.table.to_json() },
                "bound": {
                    "rescaling": rescaling,
                    "max_abs_constant_raw": format_ratio(&raw.max_abs_constant()),
                    "max_abs_constant": format_ratio(&bounded.max_abs_constant()),
                },
                "lattice": lattice,
                "preset": preset_json,
                "group_law_demo": {
                    "basis": if preset.is_some() { "paper" } else { "raw" },
                    "seed": cfg.seed,
                    "x": rationals(&x.log_coordinates),
                    "y": rationals(&y.log_coordinates),
                    "product": rationals(&product.log_coordinates),
                },
            })))
        }
        OutputFormat::Text => {
            let mut out = format!(
                "# {}: dim n = {}, class {}, center dimension {}, chart {} (flat {})\n",
                form.table.provenance.form,
                raw.dim(),
                raw.class,
                raw.center_basis.len(),
                chart,
                flat
            );
            if raw.is_abelian() {
                out.push_str("abelian: all structure constants vanish\n");
            }
            if let Some(p) = &preset {
                out.push_str(&format!("# basis: {} ({})\n", p.reference.name, p.description));
            } else {
                out.push_str("# basis: raw N\n");
            }
            out.push_str(&labelled_table_text(&shown));
            out.push_str(&format!("center: {}\n", center_strings(&shown).join("; ")));
            out.push_str(&format!(
                "group law (seed {}): x * y = ({})\n",
                cfg.seed,
                rationals(&product.log_coordinates).join(", ")
            ));
            Ok(out)
        }
    }
}

fn parse_coordinates(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_big_rational(s).map_err(CliError::from))
        .collect()
}

pub fn cmd_nmul(cfg: &RunConfig, x: &str, y: &str) -> Result<String, CliError> {
    let form = required_form(cfg)?;
    let raw = extract_n(&form)?;
    let (shown, preset) = presented(&form, &raw, cfg.preset)?;
    let x = GroupElement { log_coordinates: parse_coordinates(x)? };
    let y = GroupElement { log_coordinates: parse_coordinates(y)? };
    let product = bch_multiply(&shown, &x, &y)?;
    Ok(match cfg.format {
        OutputFormat::Json => pretty(&json!({
            "form": form.table.provenance.form,
            "basis": if preset.is_some() { "paper" } else { "raw" },
            "labels": shown.labels,
            "product": rationals(&product.log_coordinates),
        })),
        OutputFormat::Text => format!("{}\n", rationals(&product.log_coordinates).join(",")),
    })
}

pub fn cmd_catalog_list(cfg: &RunConfig) -> String {
    let entries = catalog_names();
    match cfg.format {
        OutputFormat::Json => pretty(&json!(entries
            .iter()
            .map(|e| json!({ "name": e.name, "parameter": e.parameter, "summary": e.summary }))
            .collect::<Vec<_>>())),
        OutputFormat::Text => entries.iter().map(|e| format!("{:<12} {:<22} {}\n", e.name, e.parameter, e.summary)).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormReport {
    pub form: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { check: name.into(), passed, detail: detail.into() }
}

fn outcome(name: &str, r: std::result::Result<usize, String>) -> Check {
    match r {
        Ok(n) => check(name, true, format!("{n} cases")),
        Err(e) => check(name, false, e),
    }
}

/// Resolves `--against` to a reference table name.
pub fn resolve_reference(name: &str) -> Result<&'static str, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "heisenberg" => Ok("heisenberg"),
        "quaternionic" => Ok("quaternionic"),
        "octonionic" => Ok("octonionic"),
        other => Err(CliError::input(format!(
            "unknown reference `{other}`; expected heisenberg, quaternionic or octonionic"
        ))),
    }
}

/// Every invariant check on one form.
pub fn verify_form(form: &RealForm, seed: u64) -> Vec<Check> {
    let model = form.model();
    let mut checks = vec![
        outcome("chevalley_axioms", verify_axioms(model, &form.adapted.table)),
        outcome("sgn_recursion", verify_sgn(&form.ctx, &form.adapted.table, &form.adapted.sgn)),
        outcome("jacobi", verify_jacobi(&form.table)),
        check("half_integrality", form.table.all_half_integral(), format!("max |c| = {}", form.table.max_abs_coefficient())),
    ];
    match iwasawa_basis(form) {
        Ok(iw) => {
            let unimodular = iw.determinant == int(1) || iw.determinant == int(-1);
            let integral = iw.elements.iter().all(|e| e.iter().all(|(_, c)| is_integer(&c)));
            checks.push(check(
                "iwasawa_change_of_basis",
                unimodular && integral && iw.inverse_integral,
                format!("det = {}, inverse integral = {}", iw.determinant, iw.inverse_integral),
            ));
        }
        Err(e) => checks.push(check("iwasawa_change_of_basis", false, e.to_string())),
    }
    if form.ctx.classify_form() == FormClass::Complex {
        let r = match form.complex_structure() {
            Some(j) => verify_complex_structure(&form.table, &j).map(|_| form.dim()),
            None => Err("no complex structure".into()),
        };
        checks.push(outcome("complex_structure", r));
    }
    match extract_n(form) {
        Ok(n) => {
            checks.push(check("n_integral", n.table.all_integral(), format!("dim n = {}", n.dim())));
            checks.push(check("n_grading", n.grading_respected(), format!("class {}", n.class)));
            let raw_max = n.max_abs_constant();
            checks.push(check("raw_bound_six", raw_max <= int(6), format!("max |c| = {raw_max}")));
            match rescale_to_bound(&n) {
                Ok((b, _)) => {
                    let m = b.max_abs_constant();
                    checks.push(check("bound_four", m <= int(4) && b.table.all_integral(), format!("max |c| = {m}")));
                }
                Err(e) => checks.push(check("bound_four", false, e.to_string())),
            }
            checks.push(outcome("group_law", group_law_sample(&n, seed, 8)));
        }
        Err(e) => checks.push(check("n_extraction", false, e.to_string())),
    }
    checks
}

/// Associativity and inverses on `samples` random triples.
pub fn group_law_sample(n: &NilpotentAlgebra, seed: u64, samples: usize) -> std::result::Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = GroupElement::identity(n.dim());
    for _ in 0..samples {
        let [x, y, z] = [(); 3].map(|_| random_group_element(n.dim(), &mut rng));
        let mul = |a: &GroupElement, b: &GroupElement| bch_multiply(n, a, b).map_err(|e| e.to_string());
        if mul(&mul(&x, &y)?, &z)? != mul(&x, &mul(&y, &z)?)? {
            return Err("associativity fails".into());
        }
        if mul(&x, &x.inverse())? != e || mul(&x, &e)? != x {
            return Err("identity or inverse fails".into());
        }
    }
    Ok(samples)
}

fn reference_check(form: &RealForm, against: &str) -> Result<Check, CliError> {
    let name = resolve_reference(against)?;
    let raw = extract_n(form)?;
    let Some(preset) = apply_preset(form, &raw)? else {
        return Ok(check("reference_table", false, format!("{} has no named basis", form.table.provenance.form)));
    };
    if preset.reference.name != name {
        return Ok(check(
            "reference_table",
            false,
            format!("{} compares against {}, not {name}", form.table.provenance.form, preset.reference.name),
        ));
    }
    let reference = preset.reference;
    let result = compare_tables(&preset.algebra.table, &reference);
    let detail = match &result {
        TableMatch::Exact => format!("exact match with {name}"),
        TableMatch::UpToSigns { signs } => {
            let flipped: Vec<&str> = signs
                .iter()
                .zip(&reference.labels)
                .filter(|(s, _)| **s < 0)
                .map(|(_, l)| l.as_str())
                .collect();
            format!("match with {name} after negating {}", flipped.join(", "))
        }
        TableMatch::Mismatch { reason } => reason.clone(),
    };
    Ok(check("reference_table", result.is_match(), detail))
}

fn report_for(form: &str, n: Option<usize>, cfg: &RunConfig) -> Result<FormReport, CliError> {
    let built = match load_diagram_text(form) {
        Some(text) => {
            let text = text.map_err(|e| CliError::input(format!("cannot read {form}: {e}")))?;
            let diagram = parse_diagram(&text);
            match diagram {
                Err(Error::Parse(m)) => return Err(CliError::input(format!("parse error: {m}"))),
                Err(e) => Err(e),
                Ok(d) => RealForm::build(&d),
            }
        }
        None => RealForm::from_catalog(form, n),
    };
    let label = match n {
        Some(n) => format!("{form}({n})"),
        None => form.to_string(),
    };
    let form_built = match built {
        Ok(f) => f,
        Err(e @ (Error::InconsistentSatake(_) | Error::Invariant(_))) => {
            return Ok(FormReport {
                form: label,
                passed: false,
                checks: vec![check("satake_validation", false, e.to_string())],
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut checks = vec![check("satake_validation", true, "diagram validated")];
    checks.extend(verify_form(&form_built, cfg.seed));
    if let Some(against) = &cfg.against {
        checks.push(reference_check(&form_built, against)?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(FormReport { form: form_built.table.provenance.form.clone(), passed, checks })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(a) = &cfg.against {
        resolve_reference(a)?;
    }
    let reports: Vec<FormReport> = match &cfg.form {
        Some(form) => vec![report_for(form, cfg.n, cfg)?],
        None => {
            let max_rank = if cfg.max_rank == 0 { 6 } else { cfg.max_rank };
            standard_forms(max_rank)
                .par_iter()
                .map(|s| report_for(&s.name, s.n, cfg))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let passed = reports.iter().all(|r| r.passed);
    let body = match cfg.format {
        OutputFormat::Json => pretty(&json!({ "passed": passed, "forms": reports })),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &reports {
                for c in &r.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{status} {} {}: {}\n", r.form, c.check, c.detail));
                }
            }
            out.push_str(if passed { "all checks passed\n" } else { "verification failed\n" });
            out
        }
    };
    Ok(Report { body, passed })
}

/// Parses a table previously written by `table --format json`.
pub fn read_table(text: &str) -> Result<StructureTable, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::input(e.to_string()))?;
    Ok(StructureTable::from_json(&value)?)
}
