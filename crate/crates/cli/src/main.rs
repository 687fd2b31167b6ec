//! `folio` — typeset source files as small books, derive face families, and
//! replay vi-style keystroke scripts.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 failed `--check`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};

use folio::annotations::Annotations;
use folio::edit::Buffer;
use folio::faces::theme::parse_theme;
use folio::faces::{derive_faces, validate_faces, Color, FaceOptions, FaceSet};
use folio::layout::{build_book, Book, Document, LayoutConfig, Ratio};
use folio::render::{render_ansi, render_html, RenderConfig};
use folio::tokens::Language;
use folio::Strategy;

/// Base palette used when neither a theme nor `--fg`/`--bg` is given.
const DEFAULT_FG: &str = "#383A42";
const DEFAULT_BG: &str = "#FAFAFA";

#[derive(Parser, Debug)]
#[command(name = "folio", version, about = "Book-style presentation of source code")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Typeset files (or stdin) as ANSI or HTML.
    Render(RenderArgs),
    /// Derive the face family from a base palette and report the rule checks.
    Faces(FacesArgs),
    /// Apply a keystroke script to the input and print the result.
    Edit(EditArgs),
    /// Print the table of contents and index as plain text.
    Toc(TocArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ansi,
    Html,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl Switch {
    fn on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum LangArg {
    PythonLike,
    CLike,
    Plain,
}

impl From<LangArg> for Language {
    fn from(l: LangArg) -> Self {
        match l {
            LangArg::PythonLike => Language::PythonLike,
            LangArg::CLike => Language::CLike,
            LangArg::Plain => Language::Plain,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RatioArg {
    Iso216,
    None,
}

#[derive(Args, Debug)]
struct PaletteArgs {
    /// Theme file (`key = value` lines).
    #[arg(long)]
    theme: Option<PathBuf>,
    /// Default foreground, `#RRGGBB`; overrides the theme.
    #[arg(long)]
    fg: Option<String>,
    /// Default background, `#RRGGBB`; overrides the theme.
    #[arg(long)]
    bg: Option<String>,
}

#[derive(Args, Debug)]
struct LayoutArgs {
    #[arg(long, value_enum)]
    language: Option<LangArg>,
    #[arg(long, value_enum, default_value = "iso216")]
    ratio: RatioArg,
    #[arg(long, default_value_t = 80)]
    columns: usize,
    #[arg(long, default_value_t = 1.25)]
    line_spacing: f64,
    #[arg(long, default_value_t = 4)]
    margin: usize,
    #[arg(long, value_enum, default_value = "on")]
    comment_column: Switch,
    #[arg(long)]
    branch: Option<String>,
    #[arg(long)]
    commit: Option<String>,
    /// Ligatures off, comment column off, no margins, no page ratio, no
    /// chrome: stripping the escapes gives back the input.
    #[arg(long)]
    neutral: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    /// Input files; stdin when none.
    files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "ansi")]
    format: Format,
    #[arg(long, value_enum, default_value = "off")]
    ligatures: Switch,
    /// Per-line `LINE<TAB>age=F` / `LINE<TAB>author=N` records.
    #[arg(long)]
    annotations: Option<PathBuf>,
    #[command(flatten)]
    palette: PaletteArgs,
    #[command(flatten)]
    layout: LayoutArgs,
}

#[derive(Args, Debug)]
struct FacesArgs {
    #[command(flatten)]
    palette: PaletteArgs,
    /// Exit with status 3 when any face rule fails.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct EditArgs {
    /// Input file; stdin when absent.
    file: Option<PathBuf>,
    #[arg(long)]
    script: String,
    /// Starting cursor, in characters.
    #[arg(long, default_value_t = 0)]
    cursor: usize,
}

#[derive(Args, Debug)]
struct TocArgs {
    /// Input file; stdin when absent.
    file: Option<PathBuf>,
    #[command(flatten)]
    layout: LayoutArgs,
}

/// An error carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn input_error(error: anyhow::Error) -> Failure {
    Failure { code: 2, error }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(&argv, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}

/// Runs one invocation against the given streams and returns the exit code.
fn run(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Render(args) => render(args, stdin, stdout, stderr),
        Command::Faces(args) => faces(args, stdout, stderr),
        Command::Edit(args) => edit(args, stdin, stdout, stderr),
        Command::Toc(args) => toc(args, stdin, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "folio: {:#}", f.error);
            f.code
        }
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<(String, Vec<u8>), Failure> {
    match path {
        Some(p) => {
            let bytes = fs::read(p).with_context(|| format!("cannot read {}", p.display())).map_err(input_error)?;
            let title = p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned());
            Ok((title, bytes))
        }
        None => {
            let mut bytes = Vec::new();
            stdin.read_to_end(&mut bytes).context("cannot read stdin").map_err(input_error)?;
            Ok(("stdin".to_string(), bytes))
        }
    }
}

fn parse_color(flag: &str, value: &str) -> Result<Color, Failure> {
    value.parse::<Color>().map_err(|e| input_error(anyhow!("--{flag}: {e}")))
}

/// Base palette and options from the theme file and color flags.
fn load_palette(args: &PaletteArgs, stderr: &mut dyn Write) -> Result<(Color, Color, FaceOptions), Failure> {
    let (mut fg, mut bg, mut options) =
        (DEFAULT_FG.parse().expect("valid"), DEFAULT_BG.parse().expect("valid"), FaceOptions::default());
    if let Some(path) = &args.theme {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read theme {}", path.display()))
            .map_err(input_error)?;
        let theme = parse_theme(&text).map_err(|e| input_error(anyhow!("{}: {e}", path.display())))?;
        for w in &theme.warnings {
            let _ = writeln!(stderr, "folio: warning: {}: {w}", path.display());
        }
        (fg, bg, options) = (theme.fg, theme.bg, theme.options);
    }
    if let Some(v) = &args.fg {
        fg = parse_color("fg", v)?;
    }
    if let Some(v) = &args.bg {
        bg = parse_color("bg", v)?;
    }
    Ok((fg, bg, options))
}

fn derive(args: &PaletteArgs, stderr: &mut dyn Write) -> Result<FaceSet, Failure> {
    let (fg, bg, options) = load_palette(args, stderr)?;
    derive_faces(fg, bg, &options).map_err(|e| input_error(anyhow!("cannot derive faces: {e}")))
}

fn layout_config(args: &LayoutArgs) -> Result<LayoutConfig, Failure> {
    let cfg = if args.neutral {
        LayoutConfig { columns: args.columns, line_spacing: args.line_spacing, ..LayoutConfig::neutral() }
    } else {
        LayoutConfig {
            columns: args.columns,
            ratio: match args.ratio {
                RatioArg::Iso216 => Ratio::Iso216,
                RatioArg::None => Ratio::None,
            },
            line_spacing: args.line_spacing,
            margin: args.margin,
            comment_column: args.comment_column.on(),
            ..LayoutConfig::default()
        }
    };
    cfg.validate().map_err(|e| Failure { code: 1, error: anyhow!("{e}") })?;
    Ok(cfg)
}

fn book_for(
    title: String,
    bytes: &[u8],
    path: Option<&Path>,
    layout: &LayoutArgs,
    cfg: &LayoutConfig,
) -> Result<Book, Failure> {
    let language = layout
        .language
        .map(Language::from)
        .or_else(|| path.map(Language::from_path))
        .unwrap_or(Language::Plain);
    let label = title.clone();
    let doc = Document::from_bytes(title, bytes, language).map_err(|e| input_error(anyhow!("{label}: {e}")))?;
    build_book(doc, cfg, layout.branch.as_deref(), layout.commit.as_deref())
        .map_err(|e| input_error(anyhow!("{label}: {e}")))
}

fn render(args: RenderArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let faces = derive(&args.palette, stderr)?;
    let layout = layout_config(&args.layout)?;
    let annotations = match &args.annotations {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read annotations {}", path.display()))
                .map_err(input_error)?;
            Some(Annotations::parse(&text).map_err(|e| input_error(anyhow!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    let mut layout_args = args.layout;
    if let Some(a) = &annotations {
        layout_args.branch = layout_args.branch.or_else(|| a.branch.clone());
        layout_args.commit = layout_args.commit.or_else(|| a.commit.clone());
    }
    let cfg = if layout_args.neutral {
        RenderConfig { annotations, ..RenderConfig::neutral() }
    } else {
        RenderConfig { ligatures: args.ligatures.on(), annotations, ..RenderConfig::default() }
    };

    let inputs: Vec<(String, Vec<u8>, Option<PathBuf>)> = if args.files.is_empty() {
        let (title, bytes) = read_input(None, stdin)?;
        vec![(title, bytes, None)]
    } else {
        args.files
            .iter()
            .map(|p| read_input(Some(p), stdin).map(|(t, b)| (t, b, Some(p.clone()))))
            .collect::<Result<_, _>>()?
    };

    // Files are typeset concurrently; output keeps argument order.
    let outputs = Strategy::default().map(&inputs, |(title, bytes, path)| {
        let book = book_for(title.clone(), bytes, path.as_deref(), &layout_args, &layout)?;
        Ok::<_, Failure>(match args.format {
            Format::Ansi => render_ansi(&book, &faces, &cfg),
            Format::Html => render_html(&book, &faces, &cfg).into_bytes(),
        })
    });
    for out in outputs {
        stdout.write_all(&out?).context("cannot write output").map_err(input_error)?;
    }
    Ok(0)
}

fn faces(args: FacesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let (fg, bg, options) = load_palette(&args.palette, stderr)?;
    let set = match derive_faces(fg, bg, &options) {
        Ok(set) => set,
        Err(e) => {
            // Report the rule checks against the undifferentiated palette so
            // the failing clauses are visible.
            let _ = writeln!(stderr, "folio: cannot derive faces: {e}");
            FaceSet::uniform(fg, bg, options.ladder.clone(), options.base_weight, options.thresholds)
        }
    };
    let mut out = String::new();
    for spec in set.iter() {
        let bg = spec.bg.map_or_else(|| "-".to_string(), |c| c.to_string());
        out.push_str(&format!(
            "{:<9} fg {}  bg {:<7}  weight {}\n",
            spec.name.as_str(),
            spec.fg,
            bg,
            set.ladder.name(spec.weight)
        ));
    }
    let report = validate_faces(&set);
    out.push('\n');
    out.push_str(&report.to_string());
    stdout.write_all(out.as_bytes()).context("cannot write output").map_err(input_error)?;
    if report.all_passed() {
        Ok(0)
    } else if args.check {
        Ok(3)
    } else {
        let _ = writeln!(stderr, "folio: warning: some face rules fail (use --check to make this an error)");
        Ok(0)
    }
}

fn edit(args: EditArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let (title, bytes) = read_input(args.file.as_deref(), stdin)?;
    let text = String::from_utf8(bytes).map_err(|e| {
        input_error(anyhow!("{title}: input is not valid UTF-8 (first bad byte at offset {})", e.utf8_error().valid_up_to()))
    })?;
    let mut buffer = Buffer::with_cursor(&text, args.cursor);
    let warnings = buffer
        .apply_script(&args.script)
        .map_err(|e| input_error(anyhow!("script `{}`: {e}", args.script)))?;
    for w in warnings {
        let _ = writeln!(stderr, "folio: warning: {w}");
    }
    stdout.write_all(buffer.text().as_bytes()).context("cannot write output").map_err(input_error)?;
    Ok(0)
}

fn toc(args: TocArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Outcome {
    let layout = layout_config(&args.layout)?;
    let (title, bytes) = read_input(args.file.as_deref(), stdin)?;
    let book = book_for(title, &bytes, args.file.as_deref(), &args.layout, &layout)?;
    let mut out = format!("{}\n\nContents\n", book.header().title);
    for e in &book.toc {
        let indent = "  ".repeat(e.item.depth as usize);
        out.push_str(&format!("{indent}{} {} ... {}\n", e.item.kind.as_str(), e.item.name, e.page));
    }
    out.push_str("\nIndex\n");
    for e in &book.index {
        let pages: Vec<String> = e.pages.iter().map(u32::to_string).collect();
        out.push_str(&format!("{} {}\n", e.name, pages.join(", ")));
    }
    stdout.write_all(out.as_bytes()).context("cannot write output").map_err(input_error)?;
    Ok(0)
}
