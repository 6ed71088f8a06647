use std::fmt::Write as _;

use serde_json::{json, Value};
use versal_core::arnold::{
    arnold_count, centralizer_dim, combined_orbit_codim, miniversal_greedy, miniversal_structured,
    projective_count, projective_discrepancy, transversal_dim, DeformationFamily,
};
use versal_core::exactq::format_rational;
use versal_core::jordan::{jordan_matrix, jordan_type, JordanType};
use versal_core::strata::{
    classify_type, jump_analysis, strata_table, Action, JumpReason, StratumRow,
};
use versal_core::verify::run_all;
use versal_core::Error;

use crate::input::{load, Input};
use crate::report::Outcome;
use crate::{ActionArg, CliError, Method};

fn domain(e: Error) -> CliError {
    CliError::Domain(e)
}

fn type_of(input: &Input) -> Result<JordanType, CliError> {
    match input {
        Input::Matrix(m) => jordan_type(m).map_err(domain),
        Input::Jordan(jt) => Ok(jt.clone()),
    }
}

fn zero_matrix_warning(n: usize) -> String {
    format!(
        "zero matrix: projective count {} follows the published tables (n²−1), \
         while the combined-action tangent codimension is {} (n²)",
        n * n - 1,
        n * n
    )
}

pub fn jordan(file: &str) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    let jt = type_of(&loaded.input)?;
    Ok(Outcome {
        command: "jordan",
        digest_input: loaded.bytes,
        results: serde_json::to_value(&jt).expect("type serializes"),
        text: format!("{jt}\n"),
        warnings: Vec::new(),
        exit_code: 0,
    })
}

pub fn classify(file: &str) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    let jt = type_of(&loaded.input)?;
    if !jt.is_concrete() {
        return Err(domain(Error::SymbolicEigenvalue(format!("{jt}"))));
    }
    let m = loaded.input.to_matrix()?;
    let c = classify_type(&jt).map_err(domain)?;
    let conj = arnold_count(&jt);
    let centralizer = centralizer_dim(&m).map_err(domain)?;
    let projective = projective_count(&jt).map_err(domain)?;
    let combined = combined_orbit_codim(&m).map_err(domain)?;
    let mut warnings = Vec::new();
    if projective_discrepancy(&jt) {
        warnings.push(zero_matrix_warning(jt.n()));
    }
    let results = json!({
        "stratum": {"n": c.stratum.n(), "parts": c.stratum.parts()},
        "assignment": c.assignment_json(),
        "jordan_type": serde_json::to_value(&jt).expect("type serializes"),
        "conjugation_count": conj,
        "centralizer_dim": centralizer,
        "projective_count": projective,
        "combined_orbit_codim": combined,
    });
    let mut text = String::new();
    let names = c.stratum.parameter_names();
    let assignment: Vec<String> = names
        .iter()
        .zip(&c.assignment)
        .map(|(n, v)| format!("{n}={}", format_rational(v)))
        .collect();
    writeln!(text, "jordan type:          {jt}").unwrap();
    writeln!(text, "stratum:              {}", c.stratum).unwrap();
    writeln!(text, "assignment:           {}", assignment.join(", ")).unwrap();
    writeln!(text, "conjugation count:    {conj}").unwrap();
    writeln!(text, "centralizer dim:      {centralizer}").unwrap();
    writeln!(text, "projective count:     {projective}").unwrap();
    writeln!(text, "combined orbit codim: {combined}").unwrap();
    Ok(Outcome {
        command: "classify",
        digest_input: loaded.bytes,
        results,
        text,
        warnings,
        exit_code: 0,
    })
}

/// Renders `base + Σ t_i D_i` for unit directions as a matrix of strings.
fn render_family(f: &DeformationFamily) -> String {
    let n = f.base().rows();
    let mut cells: Vec<String> = f.base().entries().iter().map(format_rational).collect();
    for (d, name) in f.directions().iter().zip(f.parameter_names()) {
        for (idx, e) in d.entries().iter().enumerate() {
            if e.is_integer() && e.to_integer() == 1.into() {
                let base = &f.base().entries()[idx];
                cells[idx] = if base == &num_zero() {
                    name.clone()
                } else {
                    format!("{}+{name}", format_rational(base))
                };
            }
        }
    }
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in 0..n {
        let row: Vec<String> = (0..n)
            .map(|c| format!("{:>width$}", cells[r * n + c]))
            .collect();
        writeln!(out, "[{}]", row.join(" ")).unwrap();
    }
    out
}

fn num_zero() -> versal_core::exactq::Rational {
    versal_core::exactq::int(0)
}

pub fn miniversal(file: &str, method: Method) -> Result<Outcome, CliError> {
    let loaded = load(file)?;
    let (family, pattern) = match method {
        Method::Greedy => (
            miniversal_greedy(&loaded.input.to_matrix()?).map_err(domain)?,
            None,
        ),
        Method::Structured => {
            let jt = match &loaded.input {
                Input::Jordan(jt) => jt.clone(),
                Input::Matrix(m) => {
                    let jt = jordan_type(m).map_err(domain)?;
                    if &jordan_matrix(&jt).map_err(domain)? != m {
                        return Err(CliError::Input(
                            "the structured method needs a matrix already in Jordan form \
                             (blocks grouped by ascending eigenvalue, sizes decreasing) or a Jordan type document"
                                .into(),
                        ));
                    }
                    jt
                }
            };
            let (p, f) = miniversal_structured(&jt).map_err(domain)?;
            (f, Some(p))
        }
    };
    let n = family.base().rows();
    let achieved = transversal_dim(&family).map_err(domain)?;
    let mut results = json!({
        "method": match method { Method::Greedy => "greedy", Method::Structured => "structured" },
        "family": family.to_json(),
        "certificate": {
            "transversal": achieved == n * n,
            "achieved_dimension": achieved,
            "required_dimension": n * n,
            "parameters": family.len(),
        },
    });
    if let Some(p) = &pattern {
        results["pattern"] = serde_json::to_value(p).expect("pattern serializes");
    }
    let mut text = String::new();
    writeln!(
        text,
        "{} parameters, transversal dimension {achieved} of {}",
        family.len(),
        n * n
    )
    .unwrap();
    text.push_str(&render_family(&family));
    if let Some(p) = &pattern {
        let stars: Vec<String> = p
            .positions()
            .iter()
            .map(|(r, c)| format!("({},{})", r + 1, c + 1))
            .collect();
        writeln!(text, "stars: {}", stars.join(" ")).unwrap();
    }
    Ok(Outcome {
        command: "miniversal",
        digest_input: loaded.bytes,
        results,
        text,
        warnings: Vec::new(),
        exit_code: 0,
    })
}

fn stratum_name(row: &StratumRow, action: Action) -> String {
    let sep = match action {
        Action::Conjugation => ",",
        Action::ProjectiveGeneric => ":",
    };
    format!("{}({})", row.label, row.stratum.parameter_names().join(sep))
}

fn params(k: usize) -> String {
    if k == 1 {
        "1 parameter".into()
    } else {
        format!("{k} parameters")
    }
}

pub fn strata(n: usize, action: ActionArg) -> Result<Outcome, CliError> {
    let action = match action {
        ActionArg::Conjugation => Action::Conjugation,
        ActionArg::Projective => Action::ProjectiveGeneric,
    };
    let table = strata_table(n).map_err(|e| CliError::Input(e.to_string()))?;
    let warnings = match action {
        Action::Conjugation => Vec::new(),
        Action::ProjectiveGeneric => table.rows.iter().flat_map(|r| r.warnings.clone()).collect(),
    };
    let mut text = String::new();
    let names: Vec<String> = table.rows.iter().map(|r| stratum_name(r, action)).collect();
    let w = names.iter().map(String::len).max().unwrap_or(4).max(7);
    let pw = table
        .rows
        .iter()
        .map(|r| r.stratum.to_string().len())
        .max()
        .unwrap_or(9)
        .max(9);
    match action {
        Action::Conjugation => {
            writeln!(
                text,
                "gl({n}) under conjugation: {} strata",
                table.rows.len()
            )
            .unwrap();
            writeln!(
                text,
                "{:<w$}  {:<pw$}  {:<16}  {:>6}",
                "stratum", "partition", "parameterized by", "params"
            )
            .unwrap();
            for (row, name) in table.rows.iter().zip(&names) {
                writeln!(
                    text,
                    "{:<w$}  {:<pw$}  {:<16}  {:>6}",
                    name,
                    row.stratum.to_string(),
                    row.conjugation_parameterization,
                    row.conjugation_count
                )
                .unwrap();
            }
        }
        Action::ProjectiveGeneric => {
            writeln!(
                text,
                "gl({n}) under conjugation and scaling: {} strata",
                table.rows.len()
            )
            .unwrap();
            writeln!(
                text,
                "{:<w$}  {:<pw$}  {:<16}  {:>7}  {:>7}  {:>12}",
                "stratum", "partition", "parameterized by", "generic", "at zero", "tangent codim"
            )
            .unwrap();
            for (row, name) in table.rows.iter().zip(&names) {
                writeln!(
                    text,
                    "{:<w$}  {:<pw$}  {:<16}  {:>7}  {:>7}  {:>12}",
                    name,
                    row.stratum.to_string(),
                    row.projective_parameterization,
                    row.projective_generic,
                    row.projective_at_zero,
                    row.combined_codim_at_zero
                )
                .unwrap();
            }
        }
    }
    for (row, name) in table.rows.iter().zip(&names) {
        writeln!(text, "\n{name} =").unwrap();
        text.push_str(&row.template.to_string());
        match action {
            Action::Conjugation => writeln!(
                text,
                "parameterized by {}; requires {}",
                row.conjugation_parameterization,
                params(row.conjugation_count)
            ),
            Action::ProjectiveGeneric if row.projective_generic == row.projective_at_zero => {
                writeln!(
                    text,
                    "parameterized by {}; requires {}, also at the zero point",
                    row.projective_parameterization,
                    params(row.projective_generic)
                )
            }
            Action::ProjectiveGeneric => writeln!(
                text,
                "parameterized by {}; requires {} generically and {} at the zero point",
                row.projective_parameterization,
                params(row.projective_generic),
                row.projective_at_zero
            ),
        }
        .unwrap();
    }
    Ok(Outcome {
        command: "strata",
        digest_input: format!("strata n={n} action={action:?}").into_bytes(),
        results: table.to_json(action),
        text,
        warnings,
        exit_code: 0,
    })
}

fn chains_json(reason: &JumpReason) -> Value {
    match reason {
        JumpReason::Dominates { chains } => json!(chains
            .iter()
            .map(|(v, from, to)| json!({"eigenvalue": v.to_string(), "from_prefix_sums": from, "to_prefix_sums": to}))
            .collect::<Vec<_>>()),
        JumpReason::DominanceFails { eigenvalue, k, from, to } => json!([{
            "eigenvalue": eigenvalue.to_string(), "from_prefix_sums": from, "to_prefix_sums": to, "fails_at": k
        }]),
        _ => json!([]),
    }
}

pub fn jump(from: &str, to: &str) -> Result<Outcome, CliError> {
    let a = load(from)?;
    let b = load(to)?;
    let ja = type_of(&a.input)?;
    let jb = type_of(&b.input)?;
    let verdict = jump_analysis(&ja, &jb).map_err(|e| match e {
        Error::SizeMismatch { .. } => CliError::Input(e.to_string()),
        other => CliError::Domain(other),
    })?;
    let reason = verdict.reason.to_string();
    let results = json!({
        "from": serde_json::to_value(&ja).expect("type serializes"),
        "to": serde_json::to_value(&jb).expect("type serializes"),
        "jump_exists": verdict.exists,
        "reason": reason,
        "chains": chains_json(&verdict.reason),
    });
    let text = format!("{ja} -> {jb}: {}\nreason: {reason}\n", verdict.exists);
    let mut digest = a.bytes;
    digest.push(0);
    digest.extend(b.bytes);
    Ok(Outcome {
        command: "jump",
        digest_input: digest,
        results,
        text,
        warnings: Vec::new(),
        exit_code: 0,
    })
}

pub fn verify(max_n: usize) -> Result<Outcome, CliError> {
    let outcomes = run_all(max_n);
    let all_passed = outcomes.iter().all(|o| o.passed());
    let suites: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"name": o.name, "checked": o.checked, "passed": o.passed(), "failures": o.failures}))
        .collect();
    let mut text = String::new();
    for o in &outcomes {
        let tag = if o.passed() { "PASS" } else { "FAIL" };
        writeln!(text, "[{tag}] {} ({} checks)", o.name, o.checked).unwrap();
        for f in &o.failures {
            writeln!(
                text,
                "       counterexample: {}",
                f.trim_end().replace('\n', "\n       ")
            )
            .unwrap();
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    writeln!(text, "{} suites, {} failed", outcomes.len(), failed).unwrap();
    Ok(Outcome {
        command: "verify",
        digest_input: format!("verify max_n={max_n}").into_bytes(),
        results: json!({"max_n": max_n, "all_passed": all_passed, "suites": suites}),
        text,
        warnings: Vec::new(),
        exit_code: if all_passed { 0 } else { 3 },
    })
}
