//! The `unavoidable` command line tool.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 search budget exceeded.

pub mod render;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use unavoidable::drawing::{from_onepage, CrossingRecord};
use unavoidable::extraction::{self, extract_canonical, ExtractConfig, ExtractionError, StageSchedule};
use unavoidable::realizer::{
    self, build_k4_table, enumerate_completions, realize, PlanarizedWitness, Realization, RealizerError,
    RotationSystem, SearchConfig,
};
use unavoidable::template::{
    canonical_drawing, realization_of, sign_of, template_of, CanonicalSpec, Template, TemplateError,
};
use unavoidable::{AbstractDrawing, Edge, OnePageDrawing, Permutation, Vertex};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "unavoidable", version, about = "Canonical drawings of complete multipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Template checks and synthesis.
    Template {
        #[command(subcommand)]
        action: TemplateCmd,
    },
    /// Decide realizability of a rotation system.
    Realize(RealizeArgs),
    /// Classify the 16 labelled rotation systems of K4.
    K4Table {
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Abstract drawing utilities.
    Drawing {
        #[command(subcommand)]
        action: DrawingCmd,
    },
    /// Extract a canonical subdrawing.
    Extract(ExtractArgs),
    /// Draw a canonical drawing as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct SearchArgs {
    /// Search budget.
    #[arg(long, default_value_t = realizer::DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for the realizer's search order.
    #[arg(long)]
    seed: Option<u64>,
}

impl SearchArgs {
    fn config(self) -> SearchConfig {
        SearchConfig { budget: self.budget, seed: self.seed }
    }
}

#[derive(Subcommand, Debug)]
enum TemplateCmd {
    /// Check that a template file is well formed.
    Validate {
        #[arg(long)]
        template: PathBuf,
    },
    /// Print the sign function of a template.
    Sign {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a template is realizable.
    Realizable {
        #[arg(long)]
        template: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Build the canonical drawing of a template.
    Synth {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Read the template off a canonical drawing.
    Of {
        #[arg(long)]
        drawing: PathBuf,
        /// Ordered classes; defaults to the classes stored in the drawing.
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
}

#[derive(Args, Debug)]
struct RealizeArgs {
    #[arg(long)]
    rotation_system: PathBuf,
    /// List every completion instead of one witness.
    #[arg(long)]
    enumerate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Subcommand, Debug)]
enum DrawingCmd {
    /// Check the local axioms of a drawing.
    Validate {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a drawing to a vertex set, an edge set or a list of classes.
    Induce {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long, group = "on", required = true)]
        vertices: Option<PathBuf>,
        #[arg(long, group = "on")]
        edges: Option<PathBuf>,
        #[arg(long, group = "on")]
        classes: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// The drawing determined by a 1-page drawing.
    Onepage {
        #[arg(long)]
        onepage: PathBuf,
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long)]
    drawing: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    stage_schedule: Option<PathBuf>,
    #[arg(long, default_value_t = extraction::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    template: PathBuf,
    #[arg(long)]
    n: usize,
    /// A planarized witness to lay out; computed when absent.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

/// Why a command stopped early.
#[derive(Debug)]
enum Failure {
    Negative(String),
    Usage(anyhow::Error),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => EXIT_NEGATIVE,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Negative(m) | Failure::Budget(m) => m.clone(),
            Failure::Usage(e) => format!("error: {e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<RealizerError> for Failure {
    fn from(e: RealizerError) -> Self {
        match e {
            RealizerError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            RealizerError::InvalidRotationSystem(_) | RealizerError::TooLarge(_) => Failure::Usage(e.into()),
            RealizerError::BrokenWitness(_) => Failure::Negative(e.to_string()),
        }
    }
}

impl From<TemplateError> for Failure {
    fn from(e: TemplateError) -> Self {
        match e {
            TemplateError::Unrealizable => Failure::Negative("unrealizable".into()),
            TemplateError::Realizer(r) => r.into(),
            TemplateError::Invalid(_) | TemplateError::UnknownClass(_) => Failure::Usage(e.into()),
            TemplateError::WitnessMismatch(_) => Failure::Negative(e.to_string()),
        }
    }
}

impl From<ExtractionError> for Failure {
    fn from(e: ExtractionError) -> Self {
        match e {
            ExtractionError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            ExtractionError::Precondition(_) | ExtractionError::Drawing(_) => Failure::Usage(e.into()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn say(&mut self, line: &str) {
        let _ = writeln!(self.out, "{line}");
    }

    fn warn(&mut self, line: &str) {
        let _ = writeln!(self.err, "{line}");
    }

    /// Writes `text` to `path` atomically, or to stdout.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), Failure> {
        match path {
            Some(p) => write_atomic(p, text.as_bytes()).map_err(Failure::Usage),
            None => {
                let _ = self.out.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize + ?Sized>(&mut self, path: Option<&Path>, value: &T) -> Result<(), Failure> {
        self.emit(path, &to_json(value))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes to a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).map_err(Failure::Usage)
}

fn read_drawing(path: &Path, allow_invalid: bool) -> Result<AbstractDrawing, Failure> {
    let text = read_text(path)?;
    AbstractDrawing::from_json(&text, allow_invalid)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Usage)
}

fn spec(template: &Path, n: usize) -> Result<CanonicalSpec, Failure> {
    Ok(CanonicalSpec::new(read_json(template)?, n)?)
}

#[derive(Serialize)]
struct ValidationReport<T: Serialize> {
    valid: bool,
    violations: Vec<T>,
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum RealizeOutput {
    Realizable { witness: Box<PlanarizedWitness> },
    Unrealizable,
}

#[derive(Serialize)]
struct Completions {
    verdict: &'static str,
    completions: Vec<Vec<CrossingRecord>>,
}

fn template_cmd(cmd: TemplateCmd, io: &mut Io) -> Result<(), Failure> {
    match cmd {
        TemplateCmd::Validate { template } => {
            let value: serde_json::Value = read_json(&template)?;
            match serde_json::from_value::<Template>(value) {
                Ok(t) => {
                    io.say(&format!("valid template with {} classes", t.m()));
                    Ok(())
                }
                Err(e) => Err(Failure::Negative(format!("invalid template: {e}"))),
            }
        }
        TemplateCmd::Sign { template, out } => {
            let t: Template = read_json(&template)?;
            io.emit_json(out.as_deref(), &sign_of(&t))
        }
        TemplateCmd::Realizable { template, search } => {
            let t: Template = read_json(&template)?;
            match realization_of(&t, &search.config())? {
                Realization::Witness(_) => {
                    io.say("realizable");
                    Ok(())
                }
                Realization::Unrealizable => Err(Failure::Negative("unrealizable".into())),
            }
        }
        TemplateCmd::Synth { template, n, out, search } => {
            let d = canonical_drawing(&spec(&template, n)?, &search.config())?;
            io.emit_json(out.as_deref(), &d)
        }
        TemplateCmd::Of { drawing, classes, out, allow_invalid } => {
            let d = read_drawing(&drawing, allow_invalid)?;
            let classes: Vec<Permutation> = match classes {
                Some(p) => read_json(&p)?,
                None => d.classes().to_vec(),
            };
            if classes.is_empty() {
                return Err(Failure::Usage(anyhow::anyhow!("no classes given and the drawing stores none")));
            }
            let t = template_of(&d, &classes).map_err(|e| Failure::Negative(e.to_string()))?;
            io.emit_json(out.as_deref(), &t)
        }
    }
}

fn realize_cmd(args: RealizeArgs, io: &mut Io) -> Result<(), Failure> {
    let rs: RotationSystem = read_json(&args.rotation_system)?;
    let cfg = args.search.config();
    let out = args.out.as_deref();
    if args.enumerate {
        let all = enumerate_completions(&rs, &cfg)?;
        let completions: Vec<Vec<CrossingRecord>> = all
            .iter()
            .map(|c| c.iter().map(|(k, r)| CrossingRecord::new(k.0, k.1, r.clone())).collect())
            .collect();
        let verdict = if completions.is_empty() { "unrealizable" } else { "realizable" };
        io.emit_json(out, &Completions { verdict, completions })?;
        if verdict == "unrealizable" {
            return Err(Failure::Negative("unrealizable".into()));
        }
        return Ok(());
    }
    match realize(&rs, &cfg)? {
        Realization::Witness(w) => io.emit_json(out, &RealizeOutput::Realizable { witness: w }),
        Realization::Unrealizable => {
            io.emit_json(out, &RealizeOutput::Unrealizable)?;
            Err(Failure::Negative("unrealizable".into()))
        }
    }
}

fn drawing_cmd(cmd: DrawingCmd, io: &mut Io) -> Result<(), Failure> {
    match cmd {
        DrawingCmd::Validate { drawing, out } => {
            let d = read_drawing(&drawing, true)?;
            let violations = d.validate();
            let report = ValidationReport { valid: violations.is_empty(), violations: violations.clone() };
            io.emit_json(out.as_deref(), &report)?;
            match violations.len() {
                0 => Ok(()),
                k => Err(Failure::Negative(format!("{k} violation(s); first: {}", violations[0]))),
            }
        }
        DrawingCmd::Induce { drawing, vertices, edges, classes, out, allow_invalid } => {
            let d = read_drawing(&drawing, allow_invalid)?;
            let induced = if let Some(p) = vertices {
                d.induce_vertices(&read_json::<BTreeSet<Vertex>>(&p)?)
            } else if let Some(p) = edges {
                d.induce_edges(&read_json::<BTreeSet<Edge>>(&p)?)
            } else {
                let p = classes.expect("clap requires one selector");
                d.induce_classes(&read_json::<Vec<Permutation>>(&p)?)
            };
            let induced = induced.map_err(|e| Failure::Usage(e.into()))?;
            io.emit_json(out.as_deref(), &induced)
        }
        DrawingCmd::Onepage { onepage, classes, out } => {
            let p: OnePageDrawing = read_json(&onepage)?;
            let mut d = from_onepage(&p);
            if let Some(c) = classes {
                d = d.with_classes(read_json(&c)?);
            }
            io.emit_json(out.as_deref(), &d)
        }
    }
}

fn extract_cmd(args: ExtractArgs, io: &mut Io) -> Result<(), Failure> {
    let d = read_drawing(&args.drawing, args.allow_invalid)?;
    let schedule: StageSchedule = match &args.stage_schedule {
        Some(p) => read_json(p)?,
        None => StageSchedule::default(),
    };
    let cfg = ExtractConfig { budget: args.budget, schedule };
    let result = extract_canonical(&d, args.n, &cfg)?;
    io.emit_json(args.out.as_deref(), &result)
}

fn render_cmd(args: RenderArgs, io: &mut Io) -> Result<(), Failure> {
    let spec = spec(&args.template, args.n)?;
    let witness: PlanarizedWitness = match &args.witness {
        Some(p) => read_json(p)?,
        None => match realization_of(&spec.template, &args.search.config())? {
            Realization::Witness(w) => *w,
            Realization::Unrealizable => return Err(Failure::Negative("unrealizable".into())),
        },
    };
    let svg = render::render_svg(&spec, &witness).map_err(|e| match e {
        render::RenderError::Template(t) => Failure::from(t),
        other => Failure::Usage(other.into()),
    })?;
    io.emit(args.out.as_deref(), &svg)
}

fn dispatch(cli: Cli, io: &mut Io) -> Result<(), Failure> {
    match cli.command {
        Command::Template { action } => template_cmd(action, io),
        Command::Realize(args) => realize_cmd(args, io),
        Command::K4Table { out, search } => {
            let table = build_k4_table(&search.config())?;
            io.emit_json(out.as_deref(), &table)
        }
        Command::Drawing { action } => drawing_cmd(action, io),
        Command::Extract(args) => extract_cmd(args, io),
        Command::Render(args) => render_cmd(args, io),
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            io.warn(&f.message());
            f.code()
        }
    }
}
