//! `emodrift`: analyze passages, benchmark backends, or run the HTTP service.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

mod backend;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emodrift::eval::{compare, load_dataset, LabelMap, NamedBackend};
use emodrift::{Classifier, StubSource};
use emodrift_server::{build_analyzer, router_with_cors, AppState, FileConfig, ServiceConfig};
use tracing_subscriber::EnvFilter;

use crate::backend::BackendSpec;

#[derive(Parser, Debug)]
#[command(
    name = "emodrift",
    version,
    about = "Sentence-level emotion timelines and drift scores"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one passage
    Analyze(AnalyzeArgs),
    /// Benchmark backends on a labeled dataset
    Evaluate(EvaluateArgs),
    /// Run the HTTP service
    Serve(ServeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

// Pipeline options shared by `analyze` and `serve`. Precedence, lowest first:
// config file, `EMODRIFT_*` environment, flags.
#[derive(Args, Debug, Default)]
struct PipelineArgs {
    /// Config file (key = value lines)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Classifier backend: lexicon[:PATH], remote[:URL], stub:PATH, stub-bert, stub-roberta, stub-deberta
    #[arg(long)]
    backend: Option<BackendSpec>,
    /// Model server URL for the remote backend
    #[arg(long)]
    endpoint: Option<String>,
    /// Sentiment model server URL
    #[arg(long)]
    sentiment_endpoint: Option<String>,
    /// Model confidence below which sentiment is reported as neutral
    #[arg(long)]
    neutral_threshold: Option<f64>,
    /// Remote request timeout in milliseconds
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Texts per remote request
    #[arg(long)]
    batch_size: Option<usize>,
}

impl PipelineArgs {
    fn overlay(&self) -> FileConfig {
        let mut f = FileConfig {
            endpoint: self.endpoint.clone(),
            sentiment_endpoint: self.sentiment_endpoint.clone(),
            neutral_threshold: self.neutral_threshold,
            timeout_ms: self.timeout_ms,
            batch_size: self.batch_size,
            ..FileConfig::default()
        };
        if let Some(spec) = &self.backend {
            f.backend = Some(spec.kind.to_string());
            f.lexicon_path = spec.lexicon_path.clone();
            if spec.endpoint.is_some() {
                f.endpoint = spec.endpoint.clone();
            }
            match &spec.stub {
                Some(StubSource::Preset(name)) => f.stub = Some(name.clone()),
                Some(StubSource::File(path)) => f.stub_file = Some(path.clone()),
                None => {}
            }
        }
        f
    }

    /// File, then environment, then flags. A backend flag replaces the
    /// file's whole backend section.
    fn resolve(&self, extra: FileConfig) -> Result<ServiceConfig, String> {
        let mut base = match &self.config {
            Some(path) => FileConfig::load(path).map_err(|e| e.to_string())?,
            None => FileConfig::default(),
        };
        base.apply_env(|k| std::env::var(k).ok());
        if self.backend.is_some() {
            base.lexicon_path = None;
            base.stub = None;
            base.stub_file = None;
        }
        base.merge(self.overlay())
            .merge(extra)
            .resolve()
            .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["text", "file"]))]
struct AnalyzeArgs {
    /// Passage to analyze
    text: Option<String>,
    /// Read the passage from a file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Newline-delimited JSON records with "text" and integer "label"
    #[arg(long)]
    dataset: PathBuf,
    /// Label map: "<int><TAB><emotion>" per line
    #[arg(long)]
    labels: PathBuf,
    /// Backend to evaluate; repeat to compare several
    #[arg(long = "backend", required = true)]
    backends: Vec<BackendSpec>,
    /// Model server URL for bare `remote` backends
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ServeArgs {
    /// Address to listen on, host:port
    #[arg(long)]
    bind: Option<String>,
    /// Maximum accepted input length in characters
    #[arg(long)]
    max_input_chars: Option<usize>,
    /// Allowed CORS origin (any when unset)
    #[arg(long)]
    cors_origin: Option<String>,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

fn init_logging(default: &str) {
    let filter = EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new(default));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(std::io::stderr)
        .try_init();
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn read_input(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => format!("file not found: {}", path.display()),
        _ => format!("cannot read {}: {e}", path.display()),
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> ExitCode {
    let text = match (&args.text, &args.file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => match read_input(path) {
            Ok(t) => t,
            Err(e) => return fail(e),
        },
        _ => unreachable!("clap enforces exactly one input"),
    };
    let config = match args.pipeline.resolve(FileConfig::default()) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let analyzer = match build_analyzer(&config) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let report = match analyzer.analyze(&text) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match args.format {
        Format::Json => println!("{}", report.to_canonical_json()),
        Format::Table => print!("{}", render::report_table(&report)),
    }
    ExitCode::SUCCESS
}

fn cmd_evaluate(args: EvaluateArgs) -> ExitCode {
    let labels = match LabelMap::load(&args.labels) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let records = match load_dataset(&args.dataset, &labels) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut backends: Vec<NamedBackend> = Vec::new();
    for spec in &args.backends {
        let config = spec.to_config(args.endpoint.as_deref(), args.timeout_ms, 1);
        match config.build() {
            Ok(b) => backends.push((spec.name.clone(), b as Arc<dyn Classifier>)),
            Err(e) => return fail(format!("backend {}: {e}", spec.name)),
        }
    }
    let report = match compare(&backends, &records) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    for failure in &report.failed {
        eprintln!("warning: backend {} failed: {}", failure.backend, failure.error);
    }
    print!("{}", report.render_table());
    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, report.to_json_pretty() + "\n") {
            return fail(format!("cannot write {}: {e}", out.display()));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_serve(args: ServeArgs) -> ExitCode {
    let extra = FileConfig {
        bind: args.bind.clone(),
        max_input_chars: args.max_input_chars,
        cors_origin: args.cors_origin.clone(),
        ..FileConfig::default()
    };
    let config = match args.pipeline.resolve(extra) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let state = match AppState::from_config(&config) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    runtime.block_on(async move {
        let listener = match tokio::net::TcpListener::bind(&config.bind_address).await {
            Ok(l) => l,
            Err(e) => return fail(format!("cannot bind {}: {e}", config.bind_address)),
        };
        let addr = listener
            .local_addr()
            .map(|a| a.to_string())
            .unwrap_or_else(|_| config.bind_address.clone());
        tracing::info!(address = %addr, backend = config.backend.kind.as_str(), "listening");
        eprintln!("listening on {addr}");
        let app = router_with_cors(state, config.cors_origin.as_deref());
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
            tracing::info!("shutting down");
        };
        match emodrift_server::serve(listener, app, shutdown).await {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => {
            init_logging("warn");
            cmd_analyze(args)
        }
        Command::Evaluate(args) => {
            init_logging("warn");
            cmd_evaluate(args)
        }
        Command::Serve(args) => {
            init_logging("info");
            cmd_serve(args)
        }
    }
}
