use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use torsor::abstract_group::{iso_test_with_cap, DEFAULT_ISO_CAP};
use torsor::aut::{compute_aut_with_cap, parse_automorphism, DEFAULT_ENUM_CAP};
use torsor::perm::{parse_group_with_cap, DEFAULT_ELEMENT_CAP};
use torsor::relators::{EmissionRecord, PermutationModel};
use torsor::theorem::REPORT_SCHEMA;
use torsor::{
    analyze, enumerate_aut_relators, parse_aut_generators, parse_presentation, project_out, AbstractGroup,
    AnalyzeOptions, Budgets, Caps, Error, FiniteGroup, GroupSummary,
};

const EXIT_MALFORMED: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;
const EXIT_THEOREM: u8 = 5;

#[derive(Parser)]
#[command(name = "torsor", version, about = "Outer automorphisms of mapping tori over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Largest group the permutation closure may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: usize,
    /// Bound on automorphism and torus-automorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
    cap_enum: usize,
    /// Bound on the isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_CAP)]
    cap_iso: usize,
    /// Longest automorphism word to enumerate.
    #[arg(long, global = true, default_value_t = Budgets::default().max_aut_len)]
    budget_len: usize,
    /// States the word-problem search may visit per query.
    #[arg(long, global = true, default_value_t = Budgets::default().max_states)]
    budget_states: usize,
    /// Longest intermediate word during rewriting and substitution.
    #[arg(long, global = true, default_value_t = Budgets::default().max_word_len)]
    budget_word_len: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Aut, Inn and Out of a finite permutation group.
    Aut { group: PathBuf },
    /// Out⁰ of the mapping torus described by a torus spec file.
    Analyze {
        spec: PathBuf,
        /// Also enumerate torus automorphisms directly and compare.
        #[arg(long)]
        cross_validate: bool,
    },
    /// Certified relators among words in the given automorphisms.
    EnumRelators {
        presentation: PathBuf,
        automorphisms: PathBuf,
        /// Permutation image of the group used to discard candidates early.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Isomorphism test between two permutation groups.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Deserialize)]
struct TorusSpec {
    group: PathBuf,
    phi: PathBuf,
}

#[derive(Serialize)]
struct AutReport {
    schema: u32,
    seed: Option<String>,
    group: String,
    order: usize,
    aut_order: usize,
    inn_order: usize,
    out_order: usize,
    out: GroupSummary,
}

#[derive(Serialize)]
struct IsoReport {
    schema: u32,
    seed: Option<String>,
    first: GroupSummary,
    second: GroupSummary,
    isomorphic: bool,
    witness: Option<Vec<usize>>,
}

enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::WordTooLong { .. } => EXIT_CAP,
        Error::HypothesisViolation(_) => EXIT_HYPOTHESIS,
        Error::TheoremViolation(_) => EXIT_THEOREM,
        _ => EXIT_MALFORMED,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn seed() -> Option<String> {
    std::env::var("TORSOR_SEED").ok()
}

fn load_group(path: &Path, common: &Common) -> Result<FiniteGroup, Failure> {
    Ok(parse_group_with_cap(&read(path)?, common.cap_elements)?)
}

fn sink(common: &Common) -> Result<Box<dyn Write>, Failure> {
    Ok(match &common.out {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).map_err(|e| Failure::Io(path.clone(), e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: Serialize>(common: &Common, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = match common.format {
        Format::Json => serde_json::to_string_pretty(value).map_err(Error::from)? + "\n",
        Format::Text => text(),
    };
    let mut out = sink(common)?;
    let target = common.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io(target, e))
}

fn summary_line(s: &GroupSummary) -> String {
    format!("{} (order {}{})", s.id, s.order, if s.abelian { ", abelian" } else { "" })
}

fn cmd_aut(path: &Path, common: &Common) -> Result<(), Failure> {
    let h = load_group(path, common)?;
    let auts = compute_aut_with_cap(&h, common.cap_enum)?;
    let out = project_out(&h, &auts)?;
    let report = AutReport {
        schema: REPORT_SCHEMA,
        seed: seed(),
        group: h.name().to_string(),
        order: h.order(),
        aut_order: out.aut_order(),
        inn_order: out.inn_order(),
        out_order: out.order(),
        out: out.group().summary(),
    };
    emit(common, &report, || {
        format!(
            "group {} of order {}\n|Aut| = {}\n|Inn| = {}\n|Out| = {}\nOut ≅ {}\n",
            report.group,
            report.order,
            report.aut_order,
            report.inn_order,
            report.out_order,
            summary_line(&report.out)
        )
    })
}

fn cmd_analyze(spec_path: &Path, cross_validate: bool, common: &Common) -> Result<(), Failure> {
    let spec: TorusSpec = serde_json::from_str(&read(spec_path)?).map_err(Error::from)?;
    let dir = spec_path.parent().unwrap_or(Path::new("."));
    let h = load_group(&dir.join(&spec.group), common)?;
    let phi = parse_automorphism(&h, &read(&dir.join(&spec.phi))?)?;
    let options = AnalyzeOptions {
        cross_validate,
        caps: Caps {
            enumeration: common.cap_enum,
            iso: common.cap_iso,
        },
    };
    let report = analyze(&h, &phi, options, seed())?;
    emit(common, &report, || {
        let mut s = format!("group {} of order {}\n", report.group.name, report.group.order);
        let hy = &report.hypotheses;
        s += &format!(
            "hypotheses: trivial center {}, phi valid {}, no epimorphism onto Z {}\n",
            hy.trivial_center, hy.phi_valid, hy.no_epi_onto_z
        );
        if let Some(f) = &report.formula {
            s += &format!("C_Out(phi)/<phi> ≅ {}\n", summary_line(&f.group));
        }
        if let Some(i) = report.index {
            s += &format!("index of Out0 in Out: {i}\n");
        }
        if let Some(d) = &report.direct {
            s += &format!("direct Out ≅ {}\ndirect Out0 ≅ {}\n", summary_line(&d.out), summary_line(&d.out0));
        }
        if let Some(e) = &report.eta {
            s += &format!("eta checks pass: {}\n", e.all_pass());
        }
        if report.direct.is_some() {
            s += &format!("isomorphism witness: {}\n", report.iso_witness.is_some());
        }
        for v in &report.violations {
            s += &format!("VIOLATION: {v}\n");
        }
        s
    })?;
    if !report.hypotheses.all_pass() {
        return Err(Failure::Exit(EXIT_HYPOTHESIS));
    }
    if !report.violations.is_empty() {
        return Err(Failure::Exit(EXIT_THEOREM));
    }
    Ok(())
}

fn cmd_enum_relators(pres: &Path, auts: &Path, model: Option<&Path>, common: &Common) -> Result<(), Failure> {
    let p = parse_presentation(&read(pres)?)?;
    let a = parse_aut_generators(&p, &read(auts)?)?;
    let budgets = Budgets {
        max_aut_len: common.budget_len,
        max_states: common.budget_states,
        max_word_len: common.budget_word_len,
    };
    a.verify_inverses(&p, &budgets)?;
    let model = match model {
        Some(path) => Some(PermutationModel::new(&p, load_group(path, common)?)?),
        None => None,
    };
    let mut out = sink(common)?;
    let target = common.out.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    for emission in enumerate_aut_relators(&p, &a, budgets, model.as_ref()) {
        let line = match common.format {
            Format::Json => serde_json::to_string(&EmissionRecord::from(&emission)).map_err(Error::from)?,
            Format::Text => emission
                .word
                .letters()
                .iter()
                .map(|&x| if x > 0 { format!("psi{x}") } else { format!("psi{}^-1", -x) })
                .collect::<Vec<_>>()
                .join(" "),
        };
        writeln!(out, "{line}").map_err(|e| Failure::Io(target.clone(), e))?;
    }
    out.flush().map_err(|e| Failure::Io(target, e))
}

fn cmd_iso(first: &Path, second: &Path, common: &Common) -> Result<(), Failure> {
    let a = AbstractGroup::from_finite(&load_group(first, common)?);
    let b = AbstractGroup::from_finite(&load_group(second, common)?);
    let witness = iso_test_with_cap(&a, &b, common.cap_iso)?;
    let report = IsoReport {
        schema: REPORT_SCHEMA,
        seed: seed(),
        first: a.summary(),
        second: b.summary(),
        isomorphic: witness.is_some(),
        witness,
    };
    emit(common, &report, || {
        format!(
            "{}\n{}\nisomorphic: {}\n",
            summary_line(&report.first),
            summary_line(&report.second),
            report.isomorphic
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = &cli.common;
    let result = match &cli.command {
        Command::Aut { group } => cmd_aut(group, common),
        Command::Analyze { spec, cross_validate } => cmd_analyze(spec, *cross_validate, common),
        Command::EnumRelators { presentation, automorphisms, model } => {
            cmd_enum_relators(presentation, automorphisms, model.as_deref(), common)
        }
        Command::Iso { first, second } => cmd_iso(first, second, common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Exit(code)) => ExitCode::from(code),
        Err(Failure::Io(path, e)) => {
            eprintln!("torsor: {}: {e}", path.display());
            ExitCode::from(EXIT_MALFORMED)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("torsor: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Malformed("x".into())), EXIT_MALFORMED);
        assert_eq!(exit_code(&Error::CapExceeded { what: "group", cap: 1 }), EXIT_CAP);
        assert_eq!(exit_code(&Error::HypothesisViolation("c".into())), EXIT_HYPOTHESIS);
        assert_eq!(exit_code(&Error::TheoremViolation("t".into())), EXIT_THEOREM);
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
