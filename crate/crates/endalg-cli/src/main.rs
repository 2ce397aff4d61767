//! Command-line analysis of endomorphic-element structure in
//! finite-dimensional associative algebras given by structure constants.
//!
//! Subcommands: `analyze` (full structural report), `member` (one element,
//! one set), `enumerate` (every member over a prime field), `verify` (the
//! theorem checklist against a file or a generated family of algebras), and
//! `distance` (certified distance between two described sets).
//!
//! Exit codes: 0 = pass, 1 = a property is violated (first counterexample
//! rendered), 2 = input error, 3 = inconclusive (`analyze --strict` with an
//! unknown verdict or an incomplete description).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use endalg::algebra::Algebra;
use endalg::classify::{classify_prime, classify_rational};
use endalg::endo::{describe_set_prime, describe_set_rational, is_member};
use endalg::error::AlgebraError;
use endalg::io::{
    instantiate, parse_algebra_doc, parse_algebra_file, parse_rational, AlgebraFile,
    LoadedAlgebra, NamedFamily, ScalarSpec,
};
use endalg::metric::{
    component_analysis, distance_tol_from_f64, set_distance, zemanek_checks, NormedContext,
};
use endalg::nilpotency::{nprime3_subspace, two_sided_annihilator_subspace};
use endalg::oracle::{exhaustive_theorem_suite, zoo_generate, ZooMode, ZooSpec};
use endalg::report::{
    annihilator_section, checklist_from_suite, checklist_from_zemanek,
    classification_section_prime, classification_section_rational, component_sections,
    metric_line_from_bracket, render_human, render_json, set_section_prime,
    set_section_rational, summary_prime, summary_rational, Report,
};
use endalg::scalar::{PrimeField, Rationals};
use endalg::sets::SetKind;
use endalg::BigRational;

#[derive(Parser)]
#[command(
    name = "endalg",
    about = "Endomorphic-element structure of finite-dimensional algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    /// Exhaustive finite-field theorem checks.
    Algebraic,
    /// Normed checks: consequence checklist and distance lines.
    Metric,
    /// Both.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Full structural report for an algebra file.
    Analyze {
        file: PathBuf,
        /// Print the machine-readable report instead of text.
        #[arg(long)]
        json: bool,
        /// Exit 3 when any verdict is unknown or any description incomplete.
        #[arg(long)]
        strict: bool,
    },
    /// Test one element for membership in a structured set.
    Member {
        file: PathBuf,
        /// Comma-separated exact coordinates in the file's basis, e.g. `1,0,-1/2`.
        #[arg(long)]
        element: String,
        /// One of L, R, I, N3, NP3, N, QN, Z, Q.
        #[arg(long, value_parser = parse_set)]
        set: SetKind,
    },
    /// List every member of a set; prime-field files only.
    Enumerate {
        file: PathBuf,
        /// One of L, R, I, N3, NP3, N, QN, Z, Q.
        #[arg(long, value_parser = parse_set)]
        set: SetKind,
    },
    /// Run the theorem checklist against a file or a generated family.
    Verify {
        file: Option<PathBuf>,
        /// Generated family instead of a file, e.g. `dim=2,p=2,exhaustive`
        /// or `dim=3,p=2,sample=100,seed=42`.
        #[arg(long, conflicts_with = "file")]
        zoo: Option<String>,
        #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
        suite: SuiteChoice,
        /// Sampling seed used when the zoo spec does not fix one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certification width for distance brackets.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Worker cap, accepted for compatibility; runs are single-process
        /// and deterministic regardless.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Certified distance between two described sets; rational files only.
    Distance {
        file: PathBuf,
        /// One of L, R, I, N3, NP3, N, QN, Z, Q.
        #[arg(long, value_parser = parse_set)]
        from: SetKind,
        /// One of L, R, I, N3, NP3, N, QN, Z, Q.
        #[arg(long, value_parser = parse_set)]
        to: SetKind,
        /// Certification width for the bracket.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn parse_set(s: &str) -> Result<SetKind, String> {
    SetKind::parse(s).map_err(|e| e.to_string())
}

const EXIT_PASS: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { file, json, strict } => run_analyze(&file, json, strict),
        Command::Member { file, element, set } => run_member(&file, &element, set),
        Command::Enumerate { file, set } => run_enumerate(&file, set),
        Command::Verify {
            file,
            zoo,
            suite,
            seed,
            tol,
            jobs,
        } => run_verify(file.as_deref(), zoo.as_deref(), suite, seed, tol, jobs),
        Command::Distance {
            file,
            from,
            to,
            tol,
        } => run_distance(&file, from, to, tol),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn run_analyze(path: &Path, json: bool, strict: bool) -> Result<u8, AlgebraError> {
    let loaded = parse_algebra_file(path)?;
    let report = match &loaded {
        LoadedAlgebra::Rational { algebra, .. } => analyze_rational(algebra)?,
        LoadedAlgebra::Prime { algebra, .. } => analyze_prime(algebra)?,
    };
    if json {
        print!("{}", render_json(&report));
    } else {
        print!("{}", render_human(&report));
    }
    if strict && report_is_inconclusive(&report) {
        return Ok(EXIT_INCONCLUSIVE);
    }
    Ok(EXIT_PASS)
}

fn report_is_inconclusive(report: &Report) -> bool {
    let unknown_verdict = report.classification.as_ref().is_some_and(|c| {
        [
            &c.without_order,
            &c.nice,
            &c.very_nice,
            &c.semisimple,
            &c.semiprime,
            &c.unital,
        ]
        .iter()
        .any(|v| v.verdict == "unknown")
    });
    unknown_verdict || report.sets.iter().any(|s| !s.complete)
}

fn analyze_rational(alg: &Algebra<Rationals>) -> Result<Report, AlgebraError> {
    let mut report = Report::new(summary_rational(alg));
    let classification = classify_rational(alg);
    report.classification = Some(classification_section_rational(alg, &classification));

    let l_desc = describe_set_rational(alg, SetKind::L);
    for set in [SetKind::R, SetKind::I] {
        report.sets.push(set_section_rational(
            alg,
            &describe_set_rational(alg, set),
        ));
    }
    report.sets.insert(0, set_section_rational(alg, &l_desc));

    report.annihilators = Some(annihilator_section(
        alg,
        &nprime3_subspace(alg),
        &two_sided_annihilator_subspace(alg),
    ));

    if l_desc.complete {
        report.components = component_sections(alg, &component_analysis(alg, &l_desc)?);
    } else {
        report
            .notes
            .push("component analysis skipped: the left set is not completely described".into());
    }

    if classification.very_nice.is_true() && l_desc.complete {
        let ctx = NormedContext::new(alg);
        let tol = endalg::metric::default_distance_tol();
        report.consequence_checks = Some(checklist_from_zemanek(&zemanek_checks(
            alg, &l_desc, &ctx, &tol,
        )?));
    } else {
        report
            .notes
            .push("consequence checks need a very nice algebra with a complete left description".into());
    }
    Ok(report)
}

fn analyze_prime(alg: &Algebra<PrimeField>) -> Result<Report, AlgebraError> {
    let mut report = Report::new(summary_prime(alg));
    let classification = classify_prime(alg);
    report.classification = Some(classification_section_prime(alg, &classification));
    for set in [SetKind::L, SetKind::R, SetKind::I] {
        report
            .sets
            .push(set_section_prime(alg, &describe_set_prime(alg, set)?));
    }
    report.annihilators = Some(annihilator_section(
        alg,
        &nprime3_subspace(alg),
        &two_sided_annihilator_subspace(alg),
    ));
    report
        .notes
        .push("component and normed analysis applies to the rational regime only".into());
    Ok(report)
}

// ---------------------------------------------------------------------------
// member / enumerate
// ---------------------------------------------------------------------------

fn run_member(path: &Path, element: &str, set: SetKind) -> Result<u8, AlgebraError> {
    let loaded = parse_algebra_file(path)?;
    let parts: Vec<&str> = element.split(',').collect();
    if parts.len() != loaded.dim() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "expected {} comma-separated coordinates, got {}",
            loaded.dim(),
            parts.len()
        )));
    }
    let coords: Vec<_> = parts
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    let (member, rendered) = match &loaded {
        LoadedAlgebra::Rational { algebra, .. } => (
            is_member(algebra, set, &coords),
            algebra.render_element(&coords),
        ),
        LoadedAlgebra::Prime { algebra, .. } => {
            let reduced: Vec<u64> = coords
                .iter()
                .map(|c| algebra.f().reduce_rational(c))
                .collect::<Result<_, _>>()?;
            (
                is_member(algebra, set, &reduced),
                algebra.render_element(&reduced),
            )
        }
    };
    if member {
        println!("{} is a member of {} in {}", rendered, set.label(), loaded.name());
        Ok(EXIT_PASS)
    } else {
        println!(
            "{} is not a member of {} in {}",
            rendered,
            set.label(),
            loaded.name()
        );
        Ok(EXIT_VIOLATION)
    }
}

fn run_enumerate(path: &Path, set: SetKind) -> Result<u8, AlgebraError> {
    let loaded = parse_algebra_file(path)?;
    let algebra = match &loaded {
        LoadedAlgebra::Prime { algebra, .. } => algebra,
        LoadedAlgebra::Rational { .. } => {
            return Err(AlgebraError::WrongRegime {
                needed: "a prime-field algebra".into(),
                found: "a rational one (enumeration needs finitely many elements)".into(),
            })
        }
    };
    let desc = describe_set_prime(algebra, set)?;
    for point in &desc.points {
        println!("{}", algebra.render_element(point));
    }
    println!(
        "{} members of {} in {} over GF({})",
        desc.points.len(),
        set.label(),
        algebra.name(),
        algebra.f().modulus()
    );
    Ok(EXIT_PASS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn run_verify(
    file: Option<&Path>,
    zoo: Option<&str>,
    suite: SuiteChoice,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<u8, AlgebraError> {
    if jobs == 0 {
        return Err(AlgebraError::Invalid("--jobs must be at least 1".into()));
    }
    let tol = distance_tol_from_f64(tol)?;
    match (file, zoo) {
        (Some(path), None) => verify_file(path, suite, &tol),
        (None, Some(spec)) => verify_zoo(spec, suite, seed),
        (None, None) | (Some(_), Some(_)) => Err(AlgebraError::Invalid(
            "verify needs exactly one of a file argument or --zoo".into(),
        )),
    }
}

/// The structure constants of a rational document re-read over GF(p), when
/// every denominator is invertible there.
fn reduction_mod_p(doc: &AlgebraFile, p: u64) -> Result<Algebra<PrimeField>, AlgebraError> {
    let mut reduced = doc.clone();
    reduced.scalar = ScalarSpec::Prime { prime_field: p };
    reduced.families.clear();
    match instantiate(&reduced)? {
        LoadedAlgebra::Prime { algebra, .. } => Ok(algebra),
        LoadedAlgebra::Rational { .. } => unreachable!("prime scalar requested"),
    }
}

fn verify_file(path: &Path, suite: SuiteChoice, tol: &BigRational) -> Result<u8, AlgebraError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgebraError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_algebra_doc(&text)?;
    let loaded = instantiate(&doc)?;

    let mut report = match &loaded {
        LoadedAlgebra::Rational { algebra, .. } => Report::new(summary_rational(algebra)),
        LoadedAlgebra::Prime { algebra, .. } => Report::new(summary_prime(algebra)),
    };
    let mut failed = false;

    if suite != SuiteChoice::Metric {
        match &loaded {
            LoadedAlgebra::Prime { algebra, .. } => {
                let suite_report = exhaustive_theorem_suite(algebra)?;
                failed |= !suite_report.all_pass();
                report.suite = Some(checklist_from_suite(&suite_report));
            }
            LoadedAlgebra::Rational { .. } => {
                // The rational table exercised exhaustively over the two
                // smallest coefficient fields that accept its denominators.
                let mut merged = None;
                for p in [2u64, 3] {
                    match reduction_mod_p(&doc, p) {
                        Ok(algebra) => {
                            let suite_report = exhaustive_theorem_suite(&algebra)?;
                            failed |= !suite_report.all_pass();
                            let mut checklist = checklist_from_suite(&suite_report);
                            match &mut merged {
                                None => merged = Some(checklist),
                                Some(first) => {
                                    first.title = "exhaustive checks over GF(2) and GF(3)".into();
                                    first.all_pass &= checklist.all_pass;
                                    for row in &mut checklist.rows {
                                        row.item = format!("{} (mod 3)", row.item);
                                    }
                                    first.rows.append(&mut checklist.rows);
                                }
                            }
                        }
                        Err(e) => report.notes.push(format!(
                            "reduction mod {p} skipped: {e}"
                        )),
                    }
                }
                report.suite = merged;
            }
        }
    }

    if suite != SuiteChoice::Algebraic {
        match &loaded {
            LoadedAlgebra::Prime { .. } => {
                if suite == SuiteChoice::Metric {
                    return Err(AlgebraError::WrongRegime {
                        needed: "a rational algebra".into(),
                        found: "a prime-field one (normed checks need unbounded scalars)".into(),
                    });
                }
                report
                    .notes
                    .push("normed checks skipped: they apply to the rational regime only".into());
            }
            LoadedAlgebra::Rational { algebra, families } => {
                failed |= verify_metric(algebra, families, tol, &mut report)?;
            }
        }
    }

    print!("{}", render_human(&report));
    if failed {
        Ok(EXIT_VIOLATION)
    } else {
        Ok(EXIT_PASS)
    }
}

/// Normed checks for a rational file: the consequence checklist when the
/// algebra is very nice, the named families re-verified, and the distance
/// from the linear ideal to the rest of the left set. Returns whether
/// anything failed.
fn verify_metric(
    alg: &Algebra<Rationals>,
    families: &[NamedFamily],
    tol: &BigRational,
    report: &mut Report,
) -> Result<bool, AlgebraError> {
    let mut failed = false;
    let l_desc = describe_set_rational(alg, SetKind::L);
    if !l_desc.complete {
        return Err(AlgebraError::IncompleteDescription(format!(
            "the left set of {} is not completely described; normed checks need the full picture",
            alg.name()
        )));
    }

    for fam in families {
        let set = guess_family_set(fam);
        let ok = endalg::endo::verify_parametric_family(alg, &fam.as_parametric(), set);
        failed |= !ok;
        report.notes.push(format!(
            "family {:?} {} the {} membership identity",
            fam.name,
            if ok { "satisfies" } else { "VIOLATES" },
            set.label()
        ));
    }

    let classification = classify_rational(alg);
    if classification.very_nice.is_true() {
        let ctx = NormedContext::new(alg);
        let checks = zemanek_checks(alg, &l_desc, &ctx, tol)?;
        failed |= !checks.all_testable_pass();
        report.consequence_checks = Some(checklist_from_zemanek(&checks));

        let np3 = describe_set_rational(alg, SetKind::NPrime3);
        let q = describe_set_rational(alg, SetKind::Q);
        if q.is_empty() {
            report
                .notes
                .push("d(NP3, Q) not measured: every left member lies in the linear ideal".into());
        } else {
            let bracket = set_distance(&ctx, &np3, &q, tol)?;
            report
                .metrics
                .push(metric_line_from_bracket("d(NP3, Q)", &bracket));
        }
    } else {
        report
            .notes
            .push("consequence checklist skipped: the algebra is not certified very nice".into());
    }
    Ok(failed)
}

/// Which membership identity a shipped family claims: by convention
/// `left-…` names the left set, `right-…` the right set; anything else is
/// checked against the left set.
fn guess_family_set(fam: &NamedFamily) -> SetKind {
    if fam.name.starts_with("right") {
        SetKind::R
    } else {
        SetKind::L
    }
}

fn verify_zoo(spec_str: &str, suite: SuiteChoice, seed: u64) -> Result<u8, AlgebraError> {
    if suite == SuiteChoice::Metric {
        return Err(AlgebraError::WrongRegime {
            needed: "a rational algebra file".into(),
            found: "a finite-field zoo (normed checks need unbounded scalars)".into(),
        });
    }
    let mut spec = ZooSpec::parse(spec_str)?;
    if let ZooMode::SeededSample { count, .. } = spec.mode {
        if !spec_str.contains("seed=") {
            spec.mode = ZooMode::SeededSample { count, seed };
        }
    }
    let algebras = zoo_generate(&spec)?;
    if suite == SuiteChoice::All {
        println!("normed checks skipped: they apply to the rational regime only");
    }
    let mut failures = 0usize;
    let mut banner = None;
    for algebra in &algebras {
        let suite_report = exhaustive_theorem_suite(algebra)?;
        banner.get_or_insert_with(|| suite_report.banner.clone());
        if suite_report.all_pass() {
            println!("{}: pass ({} checks)", algebra.name(), suite_report.rows.len());
        } else {
            failures += 1;
            println!("{}: FAIL", algebra.name());
            let checklist = checklist_from_suite(&suite_report);
            let mut one = Report::new(summary_prime(algebra));
            one.suite = Some(checklist);
            print!("{}", render_human(&one));
        }
    }
    if let Some(banner) = banner {
        println!("note: {banner}");
    }
    println!(
        "{} of {} algebras pass the exhaustive checks",
        algebras.len() - failures,
        algebras.len()
    );
    if failures > 0 {
        Ok(EXIT_VIOLATION)
    } else {
        Ok(EXIT_PASS)
    }
}

// ---------------------------------------------------------------------------
// distance
// ---------------------------------------------------------------------------

fn run_distance(path: &Path, from: SetKind, to: SetKind, tol: f64) -> Result<u8, AlgebraError> {
    let tol = distance_tol_from_f64(tol)?;
    let loaded = parse_algebra_file(path)?;
    let algebra = match &loaded {
        LoadedAlgebra::Rational { algebra, .. } => algebra,
        LoadedAlgebra::Prime { .. } => {
            return Err(AlgebraError::WrongRegime {
                needed: "a rational algebra".into(),
                found: "a prime-field one (distances need the normed regime)".into(),
            })
        }
    };
    let ctx = NormedContext::new(algebra);
    let u = describe_set_rational(algebra, from);
    let v = describe_set_rational(algebra, to);
    for desc in [&u, &v] {
        if !desc.complete {
            return Err(AlgebraError::IncompleteDescription(format!(
                "the {} description of {} is not complete; the distance would not be certified",
                desc.set.label(),
                algebra.name()
            )));
        }
    }
    let bracket = set_distance(&ctx, &u, &v, &tol)?;
    let line = metric_line_from_bracket(
        &format!("d({}, {})", from.label(), to.label()),
        &bracket,
    );
    if line.lower == line.upper {
        println!("{} = {}  ({})", line.item, line.lower, line.detail);
    } else {
        println!(
            "{} in [{}, {}]  ({})",
            line.item, line.lower, line.upper, line.detail
        );
    }
    Ok(EXIT_PASS)
}
