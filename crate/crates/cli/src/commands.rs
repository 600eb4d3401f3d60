//! Subcommand implementations.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use omvis_core::design::{self, rule_table, VisConfig};
use omvis_core::grammar;
use omvis_core::lab::dataset::{gallery_dataset, gen_datasets, Dataset};
use omvis_core::lab::io::{load_dataset, read_jsonl, write_datasets, write_jsonl, write_report_csv};
use omvis_core::lab::trials::RatioOrder;
use omvis_core::lab::{
    analyze, build_trials_with, score_records, simulate, AnalysisOptions, NoiseModel, ResponseRecord, ScoredRecord,
    TrialOptions, TrialSpec,
};
use omvis_core::render::{render, render_gallery, write_gallery, ChartDesign, RenderSpec, RenderTarget};

use crate::{default_size, server, Command, Failure, Format, EXIT_INVALID, EXIT_OK};

type Outcome = Result<u8, Failure>;

pub fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Enumerate { viable, dedupe, format, rule_table, out } => {
            enumerate(viable, dedupe, format, rule_table, out.as_deref(), stdout)
        }
        Command::Validate { config } => validate(&config, stdout),
        Command::Render { config, design, data, out, width, height, highlight } => {
            let target = match (config, design) {
                (Some(c), _) => RenderTarget::Generic(parse_config(&c)?),
                (None, Some(d)) => RenderTarget::Design(parse_design(&d)?),
                (None, None) => unreachable!("clap requires one of --config and --design"),
            };
            let default = default_size(&target);
            let spec = RenderSpec::new(target, dataset_or_sample(data.as_deref())?)
                .with_size(width.unwrap_or(default.0), height.unwrap_or(default.1))
                .with_highlight(highlight);
            let svg = render(&spec).map_err(Failure::data)?;
            fs::write(&out, svg).map_err(|e| Failure::io(out.display(), e))?;
            Ok(EXIT_OK)
        }
        Command::Gallery { out, data } => {
            let dataset = dataset_or_sample(data.as_deref())?;
            let panels = render_gallery(&design::canonical_set(), &dataset).map_err(Failure::data)?;
            write_gallery(&out, &panels).map_err(|e| Failure::io(out.display(), e))?;
            writeln!(stdout, "{} panels written to {}", panels.len(), out.display())?;
            Ok(EXIT_OK)
        }
        Command::GenData { n, seed, out } => {
            let entries = write_datasets(&out, &gen_datasets(n, seed))?;
            writeln!(stdout, "{} datasets written to {}", entries.len(), out.display())?;
            Ok(EXIT_OK)
        }
        Command::Trials { dataset, id, seed, as_sampled, out } => {
            let mut d = read_dataset(&dataset)?;
            d.id = id;
            d.seed = seed;
            let ratio_order = if as_sampled { RatioOrder::AsSampled } else { RatioOrder::LargerOverSmaller };
            let trials = build_trials_with(&d, seed, TrialOptions { ratio_order }).map_err(Failure::data)?;
            write_jsonl(&trials, create(&out)?)?;
            Ok(EXIT_OK)
        }
        Command::Score { responses, trials, out } => {
            let responses: Vec<ResponseRecord> = read_records(&responses)?;
            let trials: Vec<TrialSpec> = read_records(&trials)?;
            let scored = score_records(&responses, &trials).map_err(Failure::data)?;
            write_jsonl(&scored, create(&out)?)?;
            Ok(EXIT_OK)
        }
        Command::Simulate { design, participants, seed, noise, out, trials_out } => {
            let design = parse_design(&design)?;
            let model = match noise {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure::io(path.display(), e))?;
                    serde_json::from_str(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?
                }
                None => NoiseModel::default(),
            };
            let sim = simulate(design, participants, &model, seed).map_err(Failure::data)?;
            write_jsonl(&sim.responses, create(&out)?)?;
            let trials_out = trials_out.unwrap_or_else(|| sibling(&out, "trials.jsonl"));
            write_jsonl(&sim.trials, create(&trials_out)?)?;
            Ok(EXIT_OK)
        }
        Command::Analyze { scores, bootstrap, seed, level, out } => {
            let mut records: Vec<ScoredRecord> = Vec::new();
            for path in &scores {
                records.extend(read_records::<ScoredRecord>(path)?);
            }
            let opts = AnalysisOptions { reps: bootstrap, level, seed };
            let rows = analyze(&records, opts).map_err(Failure::data)?;
            write_report_csv(&rows, create(&out)?)?;
            Ok(EXIT_OK)
        }
        Command::Serve { port, host } => {
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .map_err(|e| Failure { code: crate::EXIT_USAGE, message: format!("address {host}:{port}: {e}") })?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(addr))?;
            Ok(EXIT_OK)
        }
    }
}

fn enumerate(
    viable: bool,
    dedupe: bool,
    format: Format,
    rules: bool,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Outcome {
    let mut sink: Box<dyn Write + '_> = match out {
        Some(path) => Box::new(create(path)?),
        None => Box::new(&mut *stdout),
    };
    if rules {
        writeln!(sink, "rule,violating,sole,remaining")?;
        for r in rule_table() {
            writeln!(sink, "{},{},{},{}", r.rule, r.violating, r.sole, r.remaining)?;
        }
        sink.flush()?;
        return Ok(EXIT_OK);
    }
    let mut configs = if viable { design::viable_set() } else { design::enumerate_all() };
    if dedupe {
        configs.retain(design::is_canonical);
    }
    match format {
        Format::Text => {
            for cfg in &configs {
                writeln!(sink, "{cfg}")?;
            }
        }
        Format::Csv => design::write_csv(&configs, &mut sink).map_err(Failure::data)?,
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

fn validate(text: &str, stdout: &mut dyn Write) -> Outcome {
    let cfg = match grammar::parse(text) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("omvis: {e}");
            return Ok(EXIT_INVALID);
        }
    };
    let verdict = design::validate(&cfg);
    if verdict.viable {
        writeln!(stdout, "viable: {cfg}")?;
        return Ok(EXIT_OK);
    }
    writeln!(stdout, "not viable: {cfg}")?;
    for rule in &verdict.violations {
        writeln!(stdout, "  {rule}")?;
    }
    Ok(EXIT_INVALID)
}

fn parse_config(text: &str) -> Result<VisConfig, Failure> {
    grammar::parse(text).map_err(|e| Failure::invalid(format!("{}: {e}", e.code())))
}

fn parse_design(text: &str) -> Result<ChartDesign, Failure> {
    text.parse().map_err(|e| Failure { code: crate::EXIT_USAGE, message: format!("{e}") })
}

fn read_dataset(path: &Path) -> Result<Dataset, Failure> {
    load_dataset(path).map_err(|e| with_path(path, e.into()))
}

fn dataset_or_sample(path: Option<&Path>) -> Result<Dataset, Failure> {
    path.map_or_else(|| Ok(gallery_dataset()), read_dataset)
}

fn read_records<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>, Failure> {
    let file = File::open(path).map_err(|e| Failure::io(path.display(), e))?;
    read_jsonl(std::io::BufReader::new(file)).map_err(|e| with_path(path, e.into()))
}

fn with_path(path: &Path, f: Failure) -> Failure {
    Failure { message: format!("{}: {}", path.display(), f.message), ..f }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir.display(), e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| Failure::io(path.display(), e))
}

/// `dir/name.jsonl` next to `out`, reusing its stem: `r.jsonl` gives `r.trials.jsonl`.
fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}
