//! Corpus evaluation: directory-per-category datasets, per-category and
//! aggregate recognition rates, report serialization and a synthetic
//! corpus generator for property testing.

mod generator;
mod report;

pub use generator::{generate_corpus, SyntheticCorpus};
pub use report::{parse_json_report, render_csv, render_json, write_report, ReportFormat};

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::matcher::{detect_raw, Channel, MatchError};
use crate::pronlex::Lexicon;
use crate::text_normalize::NormalizeConfig;

/// A directory-per-category transcript corpus:
/// `<root>/<CATEGORY>/<sample>.txt`.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub root: PathBuf,
    pub categories: Vec<DatasetCategory>,
}

#[derive(Debug, Clone)]
pub struct DatasetCategory {
    /// Lowercased directory name; doubles as the category keyword.
    pub keyword: String,
    pub samples: Vec<PathBuf>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("dataset root {0:?} does not exist or is not a directory")]
    MissingRoot(PathBuf),
    #[error("dataset root {0:?} contains no category directories")]
    NoCategories(PathBuf),
    #[error("category {0:?} contains no samples")]
    EmptyCategory(String),
    #[error("category directory {0:?} does not lowercase to a clean keyword")]
    BadCategoryName(String),
    #[error("i/o error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Keyword(#[from] MatchError),
}

/// Scan a dataset root. Categories and samples are sorted
/// lexicographically so downstream results are order-independent.
pub fn load_dataset(root: &Path) -> Result<Dataset, EvalError> {
    if !root.is_dir() {
        return Err(EvalError::MissingRoot(root.to_path_buf()));
    }
    let read = |p: &Path| {
        fs::read_dir(p).map_err(|source| EvalError::Io {
            path: p.to_path_buf(),
            source,
        })
    };
    let mut dirs: Vec<PathBuf> = Vec::new();
    for entry in read(root)? {
        let entry = entry.map_err(|source| EvalError::Io {
            path: root.to_path_buf(),
            source,
        })?;
        if entry.path().is_dir() {
            dirs.push(entry.path());
        }
    }
    dirs.sort();
    if dirs.is_empty() {
        return Err(EvalError::NoCategories(root.to_path_buf()));
    }

    let mut categories = Vec::with_capacity(dirs.len());
    for dir in dirs {
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().to_string())
            .unwrap_or_default();
        let keyword = name.to_lowercase();
        if keyword.is_empty() || !keyword.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(EvalError::BadCategoryName(name));
        }
        let mut samples: Vec<PathBuf> = Vec::new();
        for entry in read(&dir)? {
            let entry = entry.map_err(|source| EvalError::Io {
                path: dir.clone(),
                source,
            })?;
            if entry.path().is_file() {
                samples.push(entry.path());
            }
        }
        samples.sort();
        if samples.is_empty() {
            return Err(EvalError::EmptyCategory(name));
        }
        categories.push(DatasetCategory { keyword, samples });
    }
    Ok(Dataset {
        root: root.to_path_buf(),
        categories,
    })
}

/// Per-channel tallies or rates, fusion included.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
pub struct ChannelValues<T> {
    pub baseline: T,
    pub stem: T,
    pub vowel_plosive: T,
    pub vowel_fricative: T,
    pub fused: T,
}

impl<T: Copy> ChannelValues<T> {
    pub fn get(&self, channel: Channel) -> T {
        match channel {
            Channel::Baseline => self.baseline,
            Channel::Stem => self.stem,
            Channel::VowelPlosive => self.vowel_plosive,
            Channel::VowelFricative => self.vowel_fricative,
        }
    }
}

pub type ChannelCounts = ChannelValues<usize>;
pub type ChannelRates = ChannelValues<f64>;

impl ChannelCounts {
    fn rates(&self, n: usize) -> ChannelRates {
        let rate = |c: usize| {
            if n == 0 {
                0.0
            } else {
                c as f64 / n as f64
            }
        };
        ChannelRates {
            baseline: rate(self.baseline),
            stem: rate(self.stem),
            vowel_plosive: rate(self.vowel_plosive),
            vowel_fricative: rate(self.vowel_fricative),
            fused: rate(self.fused),
        }
    }
}

/// One category's detection tallies and rates.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CategoryStats {
    pub category: String,
    pub n_samples: usize,
    pub counts: ChannelCounts,
    pub rates: ChannelRates,
    pub oov_samples: usize,
}

/// Run metadata recorded in every report.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RunMeta {
    pub dict_path: String,
    pub config_digest: String,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Aggregate {
    /// Mean of per-category rates (the headline figure).
    #[serde(rename = "macro")]
    pub macro_rates: ChannelRates,
    /// Rates pooled over all samples.
    #[serde(rename = "micro")]
    pub micro_rates: ChannelRates,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct EvalReport {
    pub meta: RunMeta,
    pub categories: Vec<CategoryStats>,
    pub aggregate: Aggregate,
}

/// Evaluation output plus the number of samples that could not be read
/// (excluded from the stats, reported loudly by the CLI).
#[derive(Debug)]
pub struct EvalRun {
    pub report: EvalReport,
    pub errored_samples: usize,
}

/// In-memory corpus form shared by the file-based and synthetic paths:
/// (keyword, [(sample id, raw text)]).
pub type CategoryTexts = (String, Vec<(String, String)>);

fn aggregate(categories: &[CategoryStats]) -> Aggregate {
    let n_cat = categories.len().max(1) as f64;
    let mut macro_rates = ChannelRates::default();
    let mut pooled = ChannelCounts::default();
    let mut total = 0usize;
    for cat in categories {
        macro_rates.baseline += cat.rates.baseline;
        macro_rates.stem += cat.rates.stem;
        macro_rates.vowel_plosive += cat.rates.vowel_plosive;
        macro_rates.vowel_fricative += cat.rates.vowel_fricative;
        macro_rates.fused += cat.rates.fused;
        pooled.baseline += cat.counts.baseline;
        pooled.stem += cat.counts.stem;
        pooled.vowel_plosive += cat.counts.vowel_plosive;
        pooled.vowel_fricative += cat.counts.vowel_fricative;
        pooled.fused += cat.counts.fused;
        total += cat.n_samples;
    }
    macro_rates.baseline /= n_cat;
    macro_rates.stem /= n_cat;
    macro_rates.vowel_plosive /= n_cat;
    macro_rates.vowel_fricative /= n_cat;
    macro_rates.fused /= n_cat;
    Aggregate {
        macro_rates,
        micro_rates: pooled.rates(total),
    }
}

/// Evaluate in-memory category texts. Deterministic for fixed inputs
/// regardless of worker count: samples are detected independently and
/// tallied in corpus order.
pub fn evaluate_texts(
    corpus: &[CategoryTexts],
    lexicon: &Lexicon,
    config: &NormalizeConfig,
    meta: RunMeta,
) -> Result<EvalReport, EvalError> {
    let categories = corpus
        .iter()
        .map(|(keyword, samples)| {
            let outcomes = samples
                .par_iter()
                .map(|(source_id, text)| {
                    detect_raw(text, keyword, lexicon, config, source_id)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut counts = ChannelCounts::default();
            let mut oov_samples = 0;
            for o in &outcomes {
                counts.baseline += o.baseline.detected as usize;
                counts.stem += o.stem.detected as usize;
                counts.vowel_plosive += o.vowel_plosive.detected as usize;
                counts.vowel_fricative += o.vowel_fricative.detected as usize;
                counts.fused += o.fused_detected as usize;
                oov_samples += (o.oov_count > 0) as usize;
            }
            let n_samples = outcomes.len();
            Ok(CategoryStats {
                category: keyword.clone(),
                n_samples,
                rates: counts.rates(n_samples),
                counts,
                oov_samples,
            })
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    let aggregate = aggregate(&categories);
    Ok(EvalReport {
        meta,
        categories,
        aggregate,
    })
}

/// Evaluate a directory dataset. Unreadable samples are excluded from
/// the tallies and counted in `errored_samples`.
pub fn evaluate(
    dataset: &Dataset,
    lexicon: &Lexicon,
    config: &NormalizeConfig,
    meta: RunMeta,
) -> Result<EvalRun, EvalError> {
    let mut errored_samples = 0usize;
    let mut corpus: Vec<CategoryTexts> = Vec::with_capacity(dataset.categories.len());
    for cat in &dataset.categories {
        let mut samples = Vec::with_capacity(cat.samples.len());
        for path in &cat.samples {
            match fs::read_to_string(path) {
                Ok(text) => {
                    let id = path
                        .file_name()
                        .map(|n| n.to_string_lossy().to_string())
                        .unwrap_or_default();
                    samples.push((format!("{}/{}", cat.keyword, id), text));
                }
                Err(_) => errored_samples += 1,
            }
        }
        if samples.is_empty() {
            return Err(EvalError::EmptyCategory(cat.keyword.clone()));
        }
        corpus.push((cat.keyword.clone(), samples));
    }
    let report = evaluate_texts(&corpus, lexicon, config, meta)?;
    Ok(EvalRun {
        report,
        errored_samples,
    })
}

/// Run a closure inside a rayon pool of the given width. `jobs == 0`
/// means the default (logical CPU count).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn mini_lexicon() -> Lexicon {
        let text = include_str!("../../fixtures/mini_lexicon.dict");
        Lexicon::parse(text.as_bytes()).unwrap().0
    }

    fn meta() -> RunMeta {
        RunMeta {
            dict_path: "mini".into(),
            config_digest: "digest".into(),
            timestamp: "1970-01-01T00:00:00Z".into(),
        }
    }

    #[test]
    fn load_dataset_reads_layout() {
        let dir = tempfile::tempdir().unwrap();
        for (cat, files) in [("ABOUT", vec!["a.txt", "b.txt"]), ("AFFAIRS", vec!["x.txt"])] {
            let d = dir.path().join(cat);
            fs::create_dir(&d).unwrap();
            for f in files {
                let mut fh = fs::File::create(d.join(f)).unwrap();
                writeln!(fh, "hello").unwrap();
            }
        }
        let ds = load_dataset(dir.path()).unwrap();
        assert_eq!(ds.categories.len(), 2);
        assert_eq!(ds.categories[0].keyword, "about");
        assert_eq!(ds.categories[0].samples.len(), 2);
        assert_eq!(ds.categories[1].keyword, "affairs");
        assert_eq!(ds.categories[1].samples.len(), 1);
    }

    #[test]
    fn load_dataset_rejects_defects() {
        let missing = Path::new("/definitely/not/here");
        assert!(matches!(
            load_dataset(missing),
            Err(EvalError::MissingRoot(_))
        ));

        let empty = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_dataset(empty.path()),
            Err(EvalError::NoCategories(_))
        ));

        let no_samples = tempfile::tempdir().unwrap();
        fs::create_dir(no_samples.path().join("ABOUT")).unwrap();
        assert!(matches!(
            load_dataset(no_samples.path()),
            Err(EvalError::EmptyCategory(_))
        ));
    }

    #[test]
    fn category_name_lowercased() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().join("ABSOLUTELY");
        fs::create_dir(&d).unwrap();
        fs::write(d.join("s.txt"), "absolutely").unwrap();
        let ds = load_dataset(dir.path()).unwrap();
        assert_eq!(ds.categories[0].keyword, "absolutely");
    }

    #[test]
    fn baseline_rate_from_verbatim_presence() {
        let lexicon = mini_lexicon();
        let config = NormalizeConfig::default();
        let corpus = vec![(
            "announced".to_string(),
            vec![
                ("s1".to_string(), "they announced it".to_string()),
                ("s2".to_string(), "nothing here".to_string()),
            ],
        )];
        let report = evaluate_texts(&corpus, &lexicon, &config, meta()).unwrap();
        assert_eq!(report.categories[0].rates.baseline, 0.5);
    }

    #[test]
    fn fused_rate_dominates_members_in_every_category() {
        let lexicon = mini_lexicon();
        let config = NormalizeConfig::default();
        let corpus = generate_corpus(7, 4, 6).categories;
        let report = evaluate_texts(&corpus, &lexicon, &config, meta()).unwrap();
        for cat in &report.categories {
            assert!(cat.rates.fused >= cat.rates.stem);
            assert!(cat.rates.fused >= cat.rates.vowel_plosive);
            assert!(cat.rates.fused >= cat.rates.vowel_fricative);
            assert!(cat.rates.stem >= cat.rates.baseline);
        }
    }

    #[test]
    fn single_category_aggregate_equals_its_rates() {
        let lexicon = mini_lexicon();
        let config = NormalizeConfig::default();
        let corpus = vec![(
            "agreement".to_string(),
            vec![("s1".to_string(), "the agreement held".to_string())],
        )];
        let report = evaluate_texts(&corpus, &lexicon, &config, meta()).unwrap();
        assert_eq!(report.aggregate.macro_rates, report.categories[0].rates);
        assert_eq!(report.aggregate.micro_rates, report.categories[0].rates);
    }
}
