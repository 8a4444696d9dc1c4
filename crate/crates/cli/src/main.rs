//! The weylkit binary: ingestion, generators, verification commands and
//! diagram output for finite groupoid models.
//!
//! Exit codes: 0 when every checked law passes, 1 when any law fails,
//! 2 on input errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use weylkit_cli::commands::{self, Format, Outcome};
use weylkit_cli::document::{GraphDocument, GroupoidDocument, MorphismDocument};
use weylkit_cli::generate::{generate, GeneratorKind};
use weylkit_cli::CliError;

#[derive(Parser)]
#[command(
    name = "weylkit",
    about = "Finite-model verification for groupoid diagonal pairs and their Weyl groupoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fixture groupoid document
    Generate {
        /// full_relation | trivial | cyclic_transformation | acyclic_graph |
        /// disjoint_union | product | random_equivalence
        kind: String,
        /// size parameter (units, or the cyclic order)
        #[arg(short, long, default_value_t = 2)]
        n: usize,
        /// seed for random_equivalence
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// input documents (graph for acyclic_graph; two groupoids for
        /// disjoint_union and product)
        #[arg(short, long)]
        input: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check groupoid axioms and diagonal-pair flags
    Validate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Reconstruct the Weyl groupoid and print the germ table
    Weyl {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// List invariant sets and verify the geometric ideal theorems
    Ideals {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Quotient by an invariant unit set and verify the transfer laws
    Quotient {
        #[arg(short, long)]
        input: PathBuf,
        /// comma-separated unit ids
        #[arg(short, long)]
        set: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Validate a morphism document and its induced partial morphism
    MorphismCheck {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Verify the poset functor and category laws over a groupoid
    FunctorCheck {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Tensor two groupoid documents and verify the product laws
    Tensor {
        /// exactly two input documents
        #[arg(short, long)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Decide isomorphism of two groupoids and of their Weyl groupoids
    Compare {
        /// exactly two input documents
        #[arg(short, long)]
        input: Vec<PathBuf>,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Emit a deterministic DOT rendering
    Dot {
        #[arg(short, long)]
        input: PathBuf,
        /// render the Weyl groupoid with witness annotations
        #[arg(long)]
        weyl: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify the hereditary-saturated graph quotient correspondence
    GraphCheck {
        #[arg(short, long)]
        input: PathBuf,
        /// comma-separated vertex ids (may be empty)
        #[arg(short, long, default_value = "")]
        set: String,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Exhaustive dynamical comparison on a pair and its quotients
    Comparison {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(CliError::from)
}

fn groupoid_doc(path: &Path) -> Result<GroupoidDocument, CliError> {
    GroupoidDocument::parse(&read(path)?)
}

fn split_set(set: &str) -> Vec<String> {
    set.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn write_or_print(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn two_inputs(input: &[PathBuf]) -> Result<(&PathBuf, &PathBuf), CliError> {
    match input {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::Input(
            "exactly two --input documents required".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Generate {
            kind,
            n,
            seed,
            input,
            output,
        } => {
            let kind = match kind.as_str() {
                "full_relation" => GeneratorKind::FullRelation(n),
                "trivial" => GeneratorKind::Trivial(n),
                "cyclic_transformation" => GeneratorKind::CyclicTransformation(n),
                "acyclic_graph" => {
                    let [path] = input.as_slice() else {
                        return Err(CliError::Input(
                            "acyclic_graph needs one --input graph document".into(),
                        ));
                    };
                    GeneratorKind::AcyclicGraph(GraphDocument::parse(&read(path)?)?)
                }
                "disjoint_union" => {
                    let (a, b) = two_inputs(&input)?;
                    GeneratorKind::DisjointUnion(groupoid_doc(a)?, groupoid_doc(b)?)
                }
                "product" => {
                    let (a, b) = two_inputs(&input)?;
                    GeneratorKind::Product(groupoid_doc(a)?, groupoid_doc(b)?)
                }
                "random_equivalence" => GeneratorKind::RandomEquivalence { units: n, seed },
                other => return Err(CliError::Input(format!("unknown generator kind {other:?}"))),
            };
            let doc = generate(&kind)?;
            write_or_print(&output, &doc.serialize())?;
            Ok(Outcome {
                rendered: String::new(),
                all_pass: true,
            })
        }
        Command::Validate { input, format } => {
            commands::validate(&groupoid_doc(&input)?, format.into())
        }
        Command::Weyl { input, format } => commands::weyl(&groupoid_doc(&input)?, format.into()),
        Command::Ideals {
            input,
            seed,
            format,
        } => commands::ideals(&groupoid_doc(&input)?, seed, format.into()),
        Command::Quotient {
            input,
            set,
            output,
            format,
        } => {
            let (out, doc) =
                commands::quotient(&groupoid_doc(&input)?, &split_set(&set), format.into())?;
            if output.is_some() {
                write_or_print(&output, &doc.serialize())?;
            }
            Ok(out)
        }
        Command::MorphismCheck { input, format } => {
            let doc = MorphismDocument::parse(&read(&input)?)?;
            commands::morphism_check(&doc, format.into())
        }
        Command::FunctorCheck { input, format } => {
            commands::functor_check(&groupoid_doc(&input)?, format.into())
        }
        Command::Tensor {
            input,
            cap,
            output,
            format,
        } => {
            let (a, b) = two_inputs(&input)?;
            let (out, doc) =
                commands::tensor(&groupoid_doc(a)?, &groupoid_doc(b)?, cap, format.into())?;
            if output.is_some() {
                write_or_print(&output, &doc.serialize())?;
            }
            Ok(out)
        }
        Command::Compare { input, cap, format } => {
            let (a, b) = two_inputs(&input)?;
            commands::compare(&groupoid_doc(a)?, &groupoid_doc(b)?, cap, format.into())
        }
        Command::Dot {
            input,
            weyl,
            output,
        } => {
            let out = commands::render_dot(&groupoid_doc(&input)?, weyl)?;
            write_or_print(&output, &out.rendered)?;
            Ok(Outcome {
                rendered: String::new(),
                all_pass: out.all_pass,
            })
        }
        Command::GraphCheck {
            input,
            set,
            cap,
            format,
        } => {
            let doc = GraphDocument::parse(&read(&input)?)?;
            commands::graph_check(&doc, &split_set(&set), cap, format.into())
        }
        Command::Comparison { input, format } => {
            commands::comparison(&groupoid_doc(&input)?, format.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.rendered);
            if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
