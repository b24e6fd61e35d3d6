mod report;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cfpo_core::error::CfpoError;
use cfpo_core::formula::atoms::SyntacticAtoms;
use cfpo_core::formula::crosscheck::crosscheck_atoms;
use cfpo_core::formula::order::LessdotVariant;
use cfpo_core::generators::generate_from_spec;
use cfpo_core::group::{GroupTable, DEFAULT_GROUP_ORDER_BOUND};
use cfpo_core::instance::CfpoInstance;
use cfpo_core::reconstruct::{
    reconstruct_abstract, reconstruct_semi_abstract, reconstruct_syntactic, reference_relations,
    ternary_iso,
};

use report::Report;
use suites::{load_census, run_lemma, CensusSource, Ctx, LEMMA_KEYS};

#[derive(Parser)]
#[command(name = "cfpo", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    AsWritten,
    Disjunctive,
}

#[derive(Clone, Copy, ValueEnum)]
enum SwitchArg {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum BackendArg {
    Semantic,
    Syntactic,
    Both,
}

#[derive(clap::Args)]
struct CommonFlags {
    /// Instance: a generator spec (e.g. "star:5,0") or a JSON file path.
    #[arg(long)]
    instance: Option<String>,
    /// Cayley-table JSON file for a purely abstract group.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Cap on automorphism-group enumeration.
    #[arg(long = "bounds.group-order", default_value_t = DEFAULT_GROUP_ORDER_BOUND)]
    group_order: usize,
    /// Cap on census entries examined per suite.
    #[arg(long = "bounds.census", default_value_t = usize::MAX)]
    census: usize,
    /// Recursion cutoff for the graded order formulas.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Reading of the single-formula order definition.
    #[arg(long = "variant.lessdot", value_enum, default_value = "as-written")]
    variant: VariantArg,
    /// Extra disjunct in the level-one order formula.
    #[arg(long, value_enum, default_value = "on")]
    alpha5: SwitchArg,
    /// Evaluation backend where both are available.
    #[arg(long, value_enum, default_value = "semantic")]
    backend: BackendArg,
    /// Report destination (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance from a spec string and write it as JSON.
    Generate {
        /// Generator spec, e.g. "star:5,0", "alt:5,5,2", "chain-dec:5,5,3,2".
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one lemma's property suite.
    Verify {
        #[arg(long)]
        lemma: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run the reconstruction pipeline and compare against ground truth.
    Reconstruct {
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Compare semantic and syntactic atom verdicts over the census.
    Crosscheck {
        /// Comma-separated formula names (default: all).
        #[arg(long)]
        lemma: Option<String>,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

fn load_instance(s: &str) -> Result<CfpoInstance, CfpoError> {
    if Path::new(s).exists() {
        CfpoInstance::read_json(Path::new(s))
    } else {
        generate_from_spec(s)
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(3);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run(cli: Cli) -> Result<u8, CfpoError> {
    match cli.command {
        Command::Generate { spec, out } => {
            let inst = generate_from_spec(&spec)?;
            let path = out.unwrap_or_else(|| {
                PathBuf::from(format!("{}.json", spec.replace([':', ','], "-")))
            });
            inst.write_json(&path)?;
            println!(
                "wrote {}: {} points, {} edges",
                path.display(),
                inst.len(),
                inst.len().saturating_sub(1)
            );
            Ok(0)
        }
        Command::Verify { lemma, flags } => {
            let key = match lemma.as_str() {
                "no60-construction" => "no60",
                "lessdot-theorem" => "lessdot",
                other => other,
            };
            if !LEMMA_KEYS.contains(&key) {
                return Err(CfpoError::InvalidArgument(format!("unknown lemma: {lemma}")));
            }
            let inst = flags.instance.as_deref().map(load_instance).transpose()?;
            let ctx = Ctx {
                instance: inst.as_ref(),
                group_bound: flags.group_order,
                census_budget: flags.census,
                n_max: flags.n_max,
                variant: match flags.variant {
                    VariantArg::AsWritten => LessdotVariant::AsWritten,
                    VariantArg::Disjunctive => LessdotVariant::Disjunctive,
                },
                alpha5: matches!(flags.alpha5, SwitchArg::On),
            };
            let target = flags.instance.clone().unwrap_or_else(|| "engineered".into());
            let mut report = Report::new("verify", &target);
            report.lemma = Some(key.to_string());
            run_lemma(key, &ctx, &mut report)?;
            report.emit(flags.out.as_deref());
            Ok(report.exit_code() as u8)
        }
        Command::Reconstruct { flags } => {
            let mut report = Report::new(
                "reconstruct",
                flags.instance.as_deref().unwrap_or("table"),
            );
            if let Some(table_path) = &flags.table {
                let table = GroupTable::read_json(table_path)?;
                let rec = reconstruct_abstract(&table)?;
                report.backend = "syntactic".into();
                report.note(format!("{} point classes recovered", rec.num_classes));
                if rec.num_classes == 0 {
                    report.check(true, String::new);
                    report.note("empty reconstruction; comparison is trivial".into());
                }
                report.emit(flags.out.as_deref());
                return Ok(report.exit_code() as u8);
            }
            let Some(spec) = &flags.instance else {
                return Err(CfpoError::InvalidArgument(
                    "reconstruct needs --instance or --table".into(),
                ));
            };
            let inst = load_instance(spec)?;
            let mut recs = Vec::new();
            if flags.backend != BackendArg::Syntactic {
                recs.push(("semantic", reconstruct_semi_abstract(&inst)?));
            }
            if flags.backend != BackendArg::Semantic {
                match load_census(&inst, flags.group_order)? {
                    CensusSource::Enumerated(group, _, _) => {
                        recs.push(("syntactic", reconstruct_syntactic(&inst, &group)?));
                    }
                    CensusSource::Engineered(_) => {
                        report.skip("group exceeds the enumeration bound; no syntactic backend");
                    }
                }
            }
            report.backend = recs.iter().map(|(b, _)| *b).collect::<Vec<_>>().join("+");
            for (name, rec) in &recs {
                report.note(format!("{name}: {} point classes", rec.num_classes));
                if rec.num_classes == 0 {
                    report.check(true, String::new);
                    continue;
                }
                match &rec.class_points {
                    Some(points) => {
                        let (rel_ref, bet_ref) = reference_relations(&inst, points)?;
                        report.check(rec.related == rel_ref, || {
                            format!("{name}: comparability differs from ground truth")
                        });
                        report.check(ternary_iso(&rec.between, &bet_ref).is_some(), || {
                            format!("{name}: no betweenness isomorphism onto ground truth")
                        });
                    }
                    None => {
                        // Classes without attachment data: nothing to compare to.
                        report.check(true, String::new);
                    }
                }
            }
            report.emit(flags.out.as_deref());
            Ok(report.exit_code() as u8)
        }
        Command::Crosscheck { lemma, flags } => {
            const ALL: &[&str] = &["indec", "disj", "subseteq", "same_pd", "rep_point"];
            let set: Vec<String> = match &lemma {
                None => ALL.iter().map(|s| s.to_string()).collect(),
                Some(list) => list
                    .split(',')
                    .map(|raw| {
                        let name = match raw.trim() {
                            "supp" | "supp⊑" => "subseteq",
                            "samePD" => "same_pd",
                            other => other,
                        };
                        if ALL.contains(&name) {
                            Ok(name.to_string())
                        } else {
                            Err(CfpoError::InvalidArgument(format!("unknown formula: {raw}")))
                        }
                    })
                    .collect::<Result<_, _>>()?,
            };
            let Some(spec) = &flags.instance else {
                return Err(CfpoError::InvalidArgument("crosscheck needs --instance".into()));
            };
            let inst = load_instance(spec)?;
            let mut report = Report::new("crosscheck", spec);
            report.backend = "both".into();
            match load_census(&inst, flags.group_order)? {
                CensusSource::Enumerated(group, abs, census) => {
                    let n = census.entries.len();
                    if flags.census < n {
                        report.skip(&format!(
                            "census budget {} below the {} entries present",
                            flags.census, n
                        ));
                    } else {
                        let supports: Vec<Vec<usize>> =
                            census.entries.iter().map(|e| e.support.clone()).collect();
                        let syn = SyntacticAtoms::build(&group, &abs, Some(&supports))?;
                        let all = crosscheck_atoms(&census, &syn);
                        for name in &set {
                            let tuples = if name == "indec" { n } else { n * n };
                            let bad: Vec<_> =
                                all.iter().filter(|d| d.atom == *name).collect();
                            for _ in 0..tuples.saturating_sub(bad.len()) {
                                report.check(true, String::new);
                            }
                            for d in bad {
                                report.check(false, || {
                                    format!(
                                        "{} at {:?}: semantic {} vs syntactic {}",
                                        d.atom, d.args, d.semantic, d.syntactic
                                    )
                                });
                            }
                        }
                    }
                }
                CensusSource::Engineered(_) => {
                    report.skip("group exceeds the enumeration bound; no syntactic backend");
                }
            }
            report.emit(flags.out.as_deref());
            Ok(report.exit_code() as u8)
        }
    }
}
