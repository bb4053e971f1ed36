//! Command-line interface: one subcommand per pipeline stage plus
//! batch evaluation.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::eval::{
    evaluate, load_dataset, render_csv, render_json, with_jobs, ReportFormat, RunMeta,
};
use crate::matcher::{detect_raw, Channel};
use crate::phonology::{prune, ClassSet, PhonemeClass};
use crate::pronlex::{strip_stress, Lexicon};
use crate::stemmer::stem;
use crate::text_normalize::{
    normalize, parse_contraction_file, parse_stop_word_file, NormalizeConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Parser)]
#[command(
    name = "phonofuse",
    version,
    about = "Keyword recognition in noisy speech transcripts via stem matching and two-way phoneme pruning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Stop-word override file (one lowercase word per line, '#' comments)
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Contraction override file (contracted<TAB>expansion lines)
    #[arg(long)]
    contractions: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize raw text into a clean token sequence
    Normalize {
        /// Input file; stdin when omitted
        file: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the Porter stem of each word
    Stem {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Print the primary pronunciation of each word
    Phonemize {
        /// CMU dictionary file
        #[arg(long)]
        dict: PathBuf,
        /// Keep stress digits instead of stripping them
        #[arg(long)]
        stress: bool,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Print each word's pruned phoneme pattern
    Prune {
        /// CMU dictionary file
        #[arg(long)]
        dict: PathBuf,
        /// Comma-separated class names, e.g. vowel,plosive
        #[arg(long)]
        classes: String,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Run all detection channels for one keyword over one transcript
    Detect {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long)]
        keyword: String,
        #[arg(long)]
        dict: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Evaluate detection rates over a directory-per-category corpus
    Evaluate {
        /// Dataset root: <root>/<CATEGORY>/<sample>.txt
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        dict: PathBuf,
        /// Report file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Worker threads (default: logical CPU count)
        #[arg(long)]
        jobs: Option<usize>,
        /// Timestamp recorded in the report metadata (default: now, UTC)
        #[arg(long)]
        timestamp: Option<String>,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

impl clap::builder::ValueParserFactory for ReportFormat {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<ReportFormat>())
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

fn load_config(args: &ConfigArgs) -> Result<NormalizeConfig, CliError> {
    let mut config = NormalizeConfig::default();
    if let Some(path) = &args.stopwords {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        config.stop_words = parse_stop_word_file(&text)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.contractions {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        config.contractions = parse_contraction_file(&text)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    }
    Ok(config)
}

fn load_lexicon(path: &Path) -> Result<Lexicon, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
    let (lexicon, report) = Lexicon::parse(file)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    if report.skipped_lines > 0 {
        eprintln!(
            "warning: {} skipped {} malformed line(s)",
            path.display(),
            report.skipped_lines
        );
    }
    Ok(lexicon)
}

fn clean_word(raw: &str) -> Result<String, CliError> {
    let word = raw.to_lowercase();
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return Err(CliError::data(format!(
            "word {raw:?} is not a plain alphabetic word"
        )));
    }
    Ok(word)
}

fn parse_class_set(spec: &str) -> Result<ClassSet, CliError> {
    let mut classes = Vec::new();
    for name in spec.split(',') {
        let name = name.trim();
        let class = PhonemeClass::from_name(name).ok_or_else(|| {
            CliError::usage(format!("unknown phoneme class {name:?}"))
        })?;
        classes.push(class);
    }
    ClassSet::new(classes).ok_or_else(|| CliError::usage("empty class set"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Normalize { file, config } => {
            let config = load_config(&config)?;
            let text = match &file {
                Some(path) => fs::read_to_string(path).map_err(|e| {
                    CliError::data(format!("cannot read {}: {e}", path.display()))
                })?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| CliError::data(format!("stdin: {e}")))?;
                    buf
                }
            };
            let source = file
                .as_deref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "-".into());
            let transcript = normalize(&text, &config, source);
            let words: Vec<&str> =
                transcript.tokens.iter().map(|t| t.as_str()).collect();
            println!("{}", words.join(" "));
        }
        Command::Stem { words } => {
            for raw in words {
                let word = clean_word(&raw)?;
                println!("{word}\t{}", stem(&word));
            }
        }
        Command::Phonemize { dict, stress, words } => {
            let lexicon = load_lexicon(&dict)?;
            for raw in words {
                let word = clean_word(&raw)?;
                match lexicon.lookup(&word) {
                    Some(pron) if stress => {
                        let syms: Vec<String> =
                            pron.phonemes.iter().map(|p| p.to_string()).collect();
                        println!("{}", syms.join(" "));
                    }
                    Some(pron) => {
                        let syms: Vec<&str> = strip_stress(&pron.phonemes)
                            .iter()
                            .map(|b| b.as_str())
                            .collect();
                        println!("{}", syms.join(" "));
                    }
                    None => {
                        eprintln!("warning: {word:?} not in lexicon");
                        println!();
                    }
                }
            }
        }
        Command::Prune { dict, classes, words } => {
            let class_set = parse_class_set(&classes)?;
            let lexicon = load_lexicon(&dict)?;
            for raw in words {
                let word = clean_word(&raw)?;
                match lexicon.lookup(&word) {
                    Some(pron) => {
                        let bases = strip_stress(&pron.phonemes);
                        println!("{}", prune(&bases, &class_set).render());
                    }
                    None => {
                        eprintln!("warning: {word:?} not in lexicon");
                        println!();
                    }
                }
            }
        }
        Command::Detect {
            transcript,
            keyword,
            dict,
            config,
        } => {
            let config = load_config(&config)?;
            let lexicon = load_lexicon(&dict)?;
            let text = fs::read_to_string(&transcript).map_err(|e| {
                CliError::data(format!("cannot read {}: {e}", transcript.display()))
            })?;
            let source = transcript.display().to_string();
            let outcome = detect_raw(&text, &keyword, &lexicon, &config, &source)
                .map_err(|e| CliError::data(e.to_string()))?;
            for channel in Channel::ALL {
                let r = outcome.channel(channel);
                println!(
                    "{} {} {} {}",
                    channel.name(),
                    r.count,
                    r.detected,
                    r.available
                );
            }
            println!("fused {}", outcome.fused_detected);
        }
        Command::Evaluate {
            dataset,
            dict,
            out,
            format,
            jobs,
            timestamp,
            config,
        } => {
            let config = load_config(&config)?;
            let lexicon = load_lexicon(&dict)?;
            let ds = load_dataset(&dataset).map_err(|e| CliError::data(e.to_string()))?;
            let meta = RunMeta {
                dict_path: dict.display().to_string(),
                config_digest: config.digest(),
                timestamp: timestamp
                    .unwrap_or_else(|| chrono::Utc::now().to_rfc3339()),
            };
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            });
            if jobs == 0 {
                return Err(CliError::usage("--jobs must be at least 1"));
            }
            let run = with_jobs(jobs, || evaluate(&ds, &lexicon, &config, meta))
                .map_err(|e| CliError::data(e.to_string()))?;
            if run.errored_samples > 0 {
                eprintln!(
                    "warning: {} sample(s) could not be read and were excluded",
                    run.errored_samples
                );
            }
            let text = match format {
                ReportFormat::Json => render_json(&run.report),
                ReportFormat::Csv => render_csv(&run.report),
            };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| {
                    CliError::data(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            eprintln!("{} categories evaluated", run.report.categories.len());
        }
    }
    Ok(())
}

/// Parse argv and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
