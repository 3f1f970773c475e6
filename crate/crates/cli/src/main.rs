//! Command-line front end.
//!
//! Every subcommand writes a JSON document to stdout; `--pretty` adds a
//! human-readable summary on stderr, with exact values rendered numerically
//! at `--precision` bits. Exit codes: 0 when a verdict or model was
//! computed, 1 when a verification step failed, 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pgl3_descent::curves::{
    aut_contains, aut_sigma_compat, d10_group, moduli_obstruction_quintic, quintic_member,
    smoothness_check_quintic,
};
use pgl3_descent::cyclotomic::{CycloElement, Rat};
use pgl3_descent::descent::{
    cyclic_normal_form, real_model_cyclic, real_model_dihedral, verdict_cyclic, verdict_for_form,
    CyclicNormalForm, DescentVerdict, Obstruction, RealModelParams, TriState, Witness,
};
use pgl3_descent::primitive::{catalog, real_model_a5, ModuliEvidence, PrimitiveName};
use pgl3_descent::projlinear::{Matrix3, ProjElement};
use pgl3_descent::selftest;
use pgl3_descent::Error;

#[derive(Parser)]
#[command(
    name = "pgl3-descent",
    version,
    about = "Classify finite subgroups of PGL3(C): real field of moduli versus real models"
)]
struct Cli {
    /// Also print a human-readable summary to stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// Bits of working precision for numeric renderings.
    #[arg(long, global = true, default_value_t = 128)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the cyclic group generated by diag(1, z^a, z^b), z = zeta_n.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Classify the cyclic group generated by a matrix read from a JSON file.
    ClassifyElement {
        /// Path to a JSON matrix {"field_N": N, "rows": [[...], ...]}.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Construct an explicit real model.
    RealModel {
        #[command(subcommand)]
        model: ModelCommand,
    },
    /// Print the primitive-subgroup catalog with verdicts.
    Catalog,
    /// Recompute one catalog entry and verify it against its expectations.
    Verify {
        /// Entry name: hess216, hess72, hess36, a5, a6 or psl27.
        name: String,
    },
    /// Check members of the quintic curve family.
    Curve {
        #[command(subcommand)]
        curve: CurveCommand,
    },
    /// Run the full acceptance suite.
    Selftest,
}

#[derive(Args)]
struct ParamArgs {
    /// First conjugation parameter as an expression in z = zeta_conductor.
    #[arg(long)]
    alpha: Option<String>,
    /// Second conjugation parameter; defaults to i.
    #[arg(long)]
    beta: Option<String>,
    /// Conductor of the field in which alpha and beta are read.
    #[arg(long, default_value_t = 4)]
    conductor: u32,
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Real model for the cyclic group of a definable form (n, a, b).
    Cyclic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        /// Defaults to n - a, the rotation case.
        #[arg(long)]
        b: Option<u32>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Real model for the dihedral group <diag(1, z^a, z^-a), [X:Z:Y]>.
    Dihedral {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Real model for the icosahedral group.
    A5 {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    /// The family X^5 + Y^5 + Z^5 + i a X Y^2 Z^2 + i b X^3 Y Z.
    Quintic {
        /// Rational parameter a, e.g. 1 or -116/63.
        #[arg(long)]
        a: String,
        /// Rational parameter b.
        #[arg(long)]
        b: String,
        /// Comma-separated subset of smooth, aut, moduli; default all.
        #[arg(long, value_delimiter = ',')]
        check: Vec<CheckKind>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Smooth,
    Aut,
    Moduli,
}

struct Failure {
    kind: &'static str,
    detail: String,
    code: u8,
}

impl Failure {
    fn invalid(detail: impl Into<String>) -> Self {
        Failure {
            kind: "invalid-input",
            detail: detail.into(),
            code: 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::BadParameters(_)
            | Error::Parse(_)
            | Error::NoGenerators(_)
            | Error::DegenerateParams
            | Error::IdentityElement => ("invalid-input", 2),
            Error::CriterionFailed(_) => ("criterion-failed", 1),
            Error::Inconsistency(_) => ("verification-failure", 1),
            _ => ("computation-failed", 1),
        };
        Failure {
            kind,
            detail: e.to_string(),
            code,
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

struct Outcome {
    value: Value,
    human: String,
    /// Lines printed to stderr regardless of --pretty.
    notes: Vec<String>,
    exit: u8,
}

impl Outcome {
    fn ok(value: Value, human: String) -> Self {
        Outcome {
            value,
            human,
            notes: Vec::new(),
            exit: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.value).expect("report serializes")
            );
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            if cli.pretty && !outcome.human.is_empty() {
                eprintln!("{}", outcome.human);
            }
            ExitCode::from(outcome.exit)
        }
        Err(failure) => {
            let value = json!({"error": {"kind": failure.kind, "detail": failure.detail}});
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("error serializes")
            );
            eprintln!("error ({}): {}", failure.kind, failure.detail);
            ExitCode::from(failure.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let prec = cli.precision;
    match &cli.command {
        Command::Classify { n, a, b } => classify(*n, *a, *b, prec),
        Command::ClassifyElement { matrix } => classify_element(matrix, prec),
        Command::RealModel { model } => match model {
            ModelCommand::Cyclic { n, a, b, params } => model_cyclic(*n, *a, *b, params, prec),
            ModelCommand::Dihedral { n, a, params } => model_dihedral(*n, *a, params, prec),
            ModelCommand::A5 { params } => model_a5(params, prec),
        },
        Command::Catalog => catalog_command(),
        Command::Verify { name } => verify_command(name),
        Command::Curve { curve } => match curve {
            CurveCommand::Quintic { a, b, check } => quintic_command(a, b, check),
        },
        Command::Selftest => selftest_command(),
    }
}

fn parse_params(args: &ParamArgs) -> Result<RealModelParams, Failure> {
    Ok(RealModelParams::from_strings(
        args.alpha.as_deref(),
        args.beta.as_deref(),
        args.conductor,
    )?)
}

fn fmt_value(x: &CycloElement, prec: usize) -> String {
    let (re, im) = x.to_complex(prec).to_f64s();
    if x.is_real() {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn fmt_matrix(m: &Matrix3, prec: usize) -> String {
    (0..3)
        .map(|r| {
            let row = (0..3)
                .map(|c| fmt_value(m.entry(r, c), prec))
                .collect::<Vec<_>>()
                .join(", ");
            format!("  [{row}]")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn tri(t: TriState) -> &'static str {
    match t {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Unknown => "unknown",
    }
}

fn obstruction_label(o: &Obstruction) -> String {
    match o {
        Obstruction::HomologyPeriodGe3 { n } => format!("homology of period {n}"),
        Obstruction::CyclicSubgroup { form, .. } => format!(
            "non-definable cyclic subgroup with form ({}, {}, {})",
            form.n, form.a, form.b
        ),
        Obstruction::C3xC3Rule { .. } => {
            "C3 x C3 subgroup, which needs a cube root of unity in the field".into()
        }
        Obstruction::CriterionFailed { form } => format!(
            "cyclic criterion fails for ({}, {}, {})",
            form.n, form.a, form.b
        ),
    }
}

fn human_verdict(verdict: &DescentVerdict, prec: usize) -> String {
    let mut lines = vec![
        format!("field of moduli real: {}", tri(verdict.moduli)),
        format!("definable over R:     {}", tri(verdict.definable)),
        format!("pseudo-real:          {}", verdict.pseudo_real),
        format!("reason:               {}", verdict.reason),
    ];
    match &verdict.witness {
        Some(Witness::RealModelGenerators(generators)) => {
            lines.push(format!("real model ({} generator(s)):", generators.len()));
            for g in generators {
                lines.push(fmt_matrix(g, prec));
            }
        }
        Some(Witness::ModuliConjugator(psi)) => {
            lines.push("moduli conjugator:".into());
            lines.push(fmt_matrix(psi, prec));
        }
        None => {}
    }
    if let Some(obstruction) = &verdict.obstruction {
        lines.push(format!("obstruction: {}", obstruction_label(obstruction)));
    }
    lines.join("\n")
}

fn classify(n: u32, a: u32, b: u32, prec: usize) -> Result<Outcome, Failure> {
    let nf = CyclicNormalForm::new(n, a, b)?;
    let verdict = verdict_for_form(&nf)?;
    let value = json!({
        "input": {"n": n, "a": a, "b": b},
        "verdict": serde_json::to_value(&verdict)?,
    });
    Ok(Outcome::ok(value, human_verdict(&verdict, prec)))
}

fn classify_element(path: &PathBuf, prec: usize) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let element: ProjElement =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(e.to_string()))?;
    let nf = cyclic_normal_form(&element)?;
    let verdict = verdict_cyclic(&element)?;
    let value = json!({
        "normal_form": serde_json::to_value(nf)?,
        "verdict": serde_json::to_value(&verdict)?,
    });
    Ok(Outcome::ok(value, human_verdict(&verdict, prec)))
}

fn model_cyclic(
    n: u32,
    a: u32,
    b: Option<u32>,
    params: &ParamArgs,
    prec: usize,
) -> Result<Outcome, Failure> {
    let b = b.unwrap_or_else(|| n.saturating_sub(a));
    let nf = CyclicNormalForm::new(n, a, b)?;
    let params = parse_params(params)?;
    let model = real_model_cyclic(&nf, &params)?;
    let value = json!({
        "form": serde_json::to_value(nf)?,
        "model": serde_json::to_value(&model)?,
    });
    let human = format!(
        "real generator of a conjugate of <diag(1, z^{a}, z^{b})>, z = zeta_{n}:\n{}",
        fmt_matrix(&model.matrix, prec)
    );
    Ok(Outcome::ok(value, human))
}

fn model_dihedral(n: u32, a: u32, params: &ParamArgs, prec: usize) -> Result<Outcome, Failure> {
    let params = parse_params(params)?;
    let model = real_model_dihedral(n, a, &params)?;
    let value = json!({
        "n": n,
        "a": a,
        "model": serde_json::to_value(&model)?,
    });
    let human = format!(
        "real dihedral model of order {}:\nrotation:\n{}\nreflection:\n{}",
        2 * n,
        fmt_matrix(&model.rotation, prec),
        fmt_matrix(&model.reflection, prec)
    );
    Ok(Outcome::ok(value, human))
}

fn model_a5(params: &ParamArgs, prec: usize) -> Result<Outcome, Failure> {
    let params = parse_params(params)?;
    let model = real_model_a5(&params)?;
    let value = serde_json::to_value(&model)?;
    let mut human = format!("real icosahedral model, closure order {}:", model.order);
    for g in &model.generators {
        human.push('\n');
        human.push_str(&fmt_matrix(g, prec));
    }
    Ok(Outcome::ok(value, human))
}

fn evidence_label(e: &ModuliEvidence) -> &'static str {
    match e {
        ModuliEvidence::SigmaStable => "sigma-stable",
        ModuliEvidence::Conjugator(_) => "conjugator",
        ModuliEvidence::Literature => "literature",
    }
}

fn catalog_command() -> Result<Outcome, Failure> {
    let entries = catalog()?;
    let value = serde_json::to_value(&entries)?;
    let mut lines = vec![format!(
        "{:<8} {:>5}  {:<22} {:<10} {:<12} {}",
        "name", "order", "moduli", "definable", "pseudo-real", "mode"
    )];
    for entry in &entries {
        lines.push(format!(
            "{:<8} {:>5}  {:<22} {:<10} {:<12} {}",
            entry.name.as_str(),
            entry.expected_order,
            format!(
                "{} ({})",
                tri(entry.verdict.moduli),
                evidence_label(&entry.moduli_evidence)
            ),
            tri(entry.verdict.definable),
            entry.verdict.pseudo_real,
            entry.verification_mode.as_str()
        ));
    }
    Ok(Outcome::ok(value, lines.join("\n")))
}

fn verify_command(name: &str) -> Result<Outcome, Failure> {
    let name = PrimitiveName::parse(name)?;
    let entries = catalog()?;
    let entry = entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Failure::invalid(format!("no catalog entry named {name}")))?;
    let mut checks: Vec<Value> = Vec::new();
    let mut all_passed = true;
    let push = |checks: &mut Vec<Value>, all: &mut bool, what: &str, ok: bool, detail: String| {
        if !ok {
            *all = false;
        }
        checks.push(json!({"check": what, "passed": ok, "detail": detail}));
    };

    let expect_definable = name == PrimitiveName::A5;
    push(
        &mut checks,
        &mut all_passed,
        "definable",
        (entry.verdict.definable == TriState::Yes) == expect_definable,
        format!(
            "verdict says {}, expected {}",
            tri(entry.verdict.definable),
            if expect_definable { "yes" } else { "no" }
        ),
    );
    push(
        &mut checks,
        &mut all_passed,
        "pseudo-real",
        entry.verdict.pseudo_real == !expect_definable,
        format!("verdict records pseudo_real = {}", entry.verdict.pseudo_real),
    );
    push(
        &mut checks,
        &mut all_passed,
        "expected-order",
        entry.expected_order == name.expected_order(),
        format!("catalog row lists order {}", entry.expected_order),
    );
    if let Some(fp) = &entry.fingerprint {
        push(
            &mut checks,
            &mut all_passed,
            "closure-order",
            fp.order == entry.expected_order,
            format!("generators close to order {}", fp.order),
        );
    }
    match (name, &entry.verdict.witness) {
        (PrimitiveName::A5, Some(Witness::RealModelGenerators(generators))) => {
            push(
                &mut checks,
                &mut all_passed,
                "real-model",
                generators.iter().all(Matrix3::is_real),
                format!("{} model generators, all conj-fixed", generators.len()),
            );
        }
        (PrimitiveName::A5, _) => {
            push(
                &mut checks,
                &mut all_passed,
                "real-model",
                false,
                "no real-model witness recorded".into(),
            );
        }
        _ => {}
    }
    if name == PrimitiveName::Psl27 {
        match &entry.witness_element {
            Some(matrix) => {
                let element = ProjElement::new(matrix.clone())?;
                let verdict = verdict_cyclic(&element)?;
                push(
                    &mut checks,
                    &mut all_passed,
                    "witness-element",
                    verdict.definable == TriState::No,
                    format!(
                        "stored witness reclassifies as definable = {}",
                        tri(verdict.definable)
                    ),
                );
            }
            None => push(
                &mut checks,
                &mut all_passed,
                "witness-element",
                false,
                "no witness element recorded".into(),
            ),
        }
    }

    let value = json!({
        "name": name.as_str(),
        "passed": all_passed,
        "checks": checks,
        "entry": serde_json::to_value(entry)?,
    });
    let human = format!(
        "{}: {}",
        name,
        if all_passed { "verified" } else { "MISMATCH" }
    );
    Ok(Outcome {
        value,
        human,
        notes: Vec::new(),
        exit: u8::from(!all_passed),
    })
}

fn parse_rat(text: &str, what: &str) -> Result<Rat, Failure> {
    Rat::from_str(text.trim())
        .map_err(|e| Failure::invalid(format!("cannot parse {what} = {text:?}: {e}")))
}

fn quintic_command(a: &str, b: &str, check: &[CheckKind]) -> Result<Outcome, Failure> {
    let a = parse_rat(a, "a")?;
    let b = parse_rat(b, "b")?;
    let member = quintic_member(&a, &b)?;
    let requested: Vec<CheckKind> = if check.is_empty() {
        vec![CheckKind::Smooth, CheckKind::Aut, CheckKind::Moduli]
    } else {
        check.to_vec()
    };

    let mut smooth = Value::Null;
    let mut aut = Value::Null;
    let mut moduli = Value::Null;
    let mut certificates = serde_json::Map::new();
    let mut lines = vec![format!("quintic member a = {a}, b = {b}")];

    if requested.contains(&CheckKind::Smooth) {
        let cert = smoothness_check_quintic(&member)?;
        smooth = Value::Bool(cert.smooth);
        lines.push(format!("smooth: {}", cert.smooth));
        certificates.insert("smoothness".into(), serde_json::to_value(&cert)?);
    }
    if requested.contains(&CheckKind::Aut) {
        let d10 = d10_group()?;
        let contains = aut_contains(&member.poly, &d10)?;
        let compatible = contains && aut_sigma_compat(&member.poly, &d10)?;
        aut = Value::Bool(contains);
        lines.push(format!(
            "automorphisms contain the order-10 dihedral group: {contains} (conjugation-compatible: {compatible})"
        ));
        certificates.insert("sigma_compatibility".into(), Value::Bool(compatible));
    }
    if requested.contains(&CheckKind::Moduli) {
        let report = moduli_obstruction_quintic(&member)?;
        moduli = Value::Bool(report.obstructed);
        lines.push(format!(
            "moduli obstruction (no candidate isomorphism onto the conjugate curve): {}",
            report.obstructed
        ));
        certificates.insert("moduli".into(), serde_json::to_value(&report)?);
    }

    let value = json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "smooth": smooth,
        "aut_contains_D10": aut,
        "moduli_obstruction": moduli,
        "certificates": Value::Object(certificates),
    });
    Ok(Outcome::ok(value, lines.join("\n")))
}

fn selftest_command() -> Result<Outcome, Failure> {
    let reports = selftest::run_all();
    let mut notes = Vec::with_capacity(reports.len());
    let mut failures = 0usize;
    for report in &reports {
        let status = if report.passed { "PASS" } else { "FAIL" };
        if !report.passed {
            failures += 1;
        }
        notes.push(format!(
            "[{status}] criterion {}: {} ({} ms) - {}",
            report.id, report.name, report.elapsed_ms, report.detail
        ));
    }
    let value = json!({
        "passed": failures == 0,
        "criteria": serde_json::to_value(&reports)?,
    });
    Ok(Outcome {
        value,
        human: String::new(),
        notes,
        exit: u8::from(failures > 0),
    })
}
