//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero on any failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use folio::edit::{apply_script, parse_script, Buffer, Command, MotionKind};
use folio::faces::{contrast_ratio, derive_faces, derive_faces_batch, Color, FaceName, FaceOptions, FaceSet};
use folio::layout::{build_book, compute_page_geometry, Book, Document, LayoutConfig, Ratio};
use folio::render::{render_ansi, render_html, strip_sgr, usage_report, LigatureTable, RenderConfig};
use folio::tokens::{tokenize, Category, Language};
use folio::Strategy;

use common::corpus::{self, CorpusFile};

const FOX: &str = "The quick brown fox jumps over the lazy dog.";
const DOG: &str = "The quick lazy dog jumps over the brown fox.";
const SCRIPT: &str = "2wd2w3wPd3w6bep";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fox transformation", fox_transformation),
        ("keystroke parse", keystroke_parse),
        ("face-rule suite", face_rules),
        ("contrast ratio", contrast),
        ("ISO 216 geometry", iso_geometry),
        ("renderer round-trip", renderer_round_trip),
        ("pagination losslessness and TOC", pagination),
        ("undo properties", undo_properties),
        ("ligature safety", ligature_safety),
        ("usage lint", usage_lint),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn default_faces() -> FaceSet {
    derive_faces("#383A42".parse().unwrap(), "#FAFAFA".parse().unwrap(), &FaceOptions::default()).unwrap()
}

fn document(file: &CorpusFile) -> Document {
    Document::from_bytes(file.name.clone(), &file.bytes, file.language).expect("corpus is UTF-8")
}

// 1 ------------------------------------------------------------------------

fn fox_transformation() -> Outcome {
    let out = apply_script(FOX, 0, SCRIPT).map_err(|e| e.to_string())?.text();
    ensure(out == DOG, || format!("got {out:?}"))?;
    // Median of repeated runs, so one scheduler hiccup does not decide it.
    let mut times: Vec<Duration> = (0..101)
        .map(|_| {
            let t = Instant::now();
            let b = apply_script(FOX, 0, SCRIPT).unwrap();
            std::hint::black_box(b);
            t.elapsed()
        })
        .collect();
    times.sort();
    let median = times[times.len() / 2];
    ensure(median < Duration::from_millis(1), || format!("median {median:?} >= 1 ms"))?;
    Ok(format!("{DOG:?}, median {median:?} (max {:?})", times[times.len() - 1]))
}

// 2 ------------------------------------------------------------------------

fn keystroke_parse() -> Outcome {
    use Command::*;
    use MotionKind::*;
    let commands = parse_script(SCRIPT).map_err(|e| e.to_string())?;
    // The gloss, in order: move forward two words, delete two words, move
    // forward three words, paste before, delete three words, move back six
    // words, move to end of word, paste after.
    let expected = [
        Motion { kind: Word, count: 2 },
        Delete { kind: Word, count: 2 },
        Motion { kind: Word, count: 3 },
        PasteBefore { count: 1 },
        Delete { kind: Word, count: 3 },
        Motion { kind: Back, count: 6 },
        Motion { kind: End, count: 1 },
        PasteAfter { count: 1 },
    ];
    ensure(commands == expected, || format!("got {commands:?}"))?;
    let spelled: Vec<String> = commands.iter().map(Command::to_string).collect();
    let gloss = ["2w", "d2w", "3w", "P", "d3w", "6b", "e", "p"];
    ensure(spelled == gloss, || format!("spelled {spelled:?}"))?;
    Ok(spelled.join(" "))
}

// 3 ------------------------------------------------------------------------

fn face_rules() -> Outcome {
    const N: usize = 1000;
    let t = Instant::now();
    let palettes = common::random_palettes(N, 0x5EED);
    let results = derive_faces_batch(&palettes, &FaceOptions::default(), Strategy::default());
    let mut failures = Vec::new();
    for ((fg, bg), result) in palettes.iter().zip(&results) {
        match result {
            Ok(set) => {
                let v = common::oracle::violations(set);
                if !v.is_empty() {
                    failures.push(format!("{fg}/{bg}: {}", v.join("; ")));
                }
            }
            Err(e) => failures.push(format!("{fg}/{bg}: {e}")),
        }
    }
    let elapsed = t.elapsed();
    ensure(failures.is_empty(), || {
        format!("{} of {N} palettes violate a clause, e.g. {}", failures.len(), failures[0])
    })?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{N} palettes, 0 oracle violations"))
}

// 4 ------------------------------------------------------------------------

fn contrast() -> Outcome {
    let bw = contrast_ratio(Color::rgb(0, 0, 0), Color::rgb(255, 255, 255));
    ensure(bw == 21.0, || format!("black/white = {bw:?}"))?;
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..100 {
        let c = Color::rgb(rng.gen(), rng.gen(), rng.gen());
        let r = contrast_ratio(c, c);
        ensure(r == 1.0, || format!("{c}/{c} = {r:?}"))?;
    }
    Ok("21.0 for black/white, 1.0 for 100 identical pairs".into())
}

// 5 ------------------------------------------------------------------------

fn iso_geometry() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    while checked < 100 {
        let cfg = LayoutConfig {
            columns: rng.gen_range(40..=200),
            margin: rng.gen_range(0..=12),
            line_spacing: rng.gen_range(1.0..=2.0),
            cell: (rng.gen_range(4..=16), rng.gen_range(8..=32)),
            ratio: Ratio::Iso216,
            ..LayoutConfig::default()
        };
        let Ok(g) = compute_page_geometry(&cfg) else { continue };
        checked += 1;
        let err = (g.height_px / g.width_px - std::f64::consts::SQRT_2).abs() / std::f64::consts::SQRT_2;
        worst = worst.max(err);
        ensure(err <= 0.005, || format!("{cfg:?}: relative error {err}"))?;
        let used = g.text_rows as f64 * g.row_height_px + 2.0 * g.margin_px;
        ensure(used <= g.height_px + 1e-9, || format!("{cfg:?}: text overflows the page"))?;
    }
    Ok(format!("100 configs, worst relative error {worst:.2e}"))
}

// 6 ------------------------------------------------------------------------

fn renderer_round_trip() -> Outcome {
    let files = corpus::files();
    ensure(files.len() >= 20, || format!("corpus has only {} files", files.len()))?;
    let mut langs = BTreeMap::new();
    let faces = default_faces();
    for file in &files {
        *langs.entry(file.language.as_str()).or_insert(0) += 1;
        let book = build_book(document(file), &LayoutConfig::neutral(), None, None).map_err(|e| e.to_string())?;
        let out = render_ansi(&book, &faces, &RenderConfig::neutral());
        let back = strip_sgr(&out).map_err(|e| format!("{}: {e}", file.name))?;
        ensure(back == file.bytes, || format!("{} does not round-trip", file.name))?;
    }
    ensure(langs.len() == 3, || format!("corpus languages {langs:?}"))?;
    Ok(format!("{} files byte-identical ({langs:?})", files.len()))
}

// 7 ------------------------------------------------------------------------

fn layouts() -> Vec<LayoutConfig> {
    let small = |rows, columns, comment_column| LayoutConfig {
        ratio: Ratio::None,
        rows,
        columns,
        comment_column,
        ..LayoutConfig::default()
    };
    vec![
        LayoutConfig::default(),
        LayoutConfig { comment_column: false, ..LayoutConfig::default() },
        LayoutConfig { columns: 40, ..LayoutConfig::default() },
        small(4, 40, true),
        small(5, 60, false),
        small(7, 80, true),
        small(13, 40, true),
        LayoutConfig { rows: 6, ..LayoutConfig::neutral() },
    ]
}

/// Byte ranges of the source lines, split after every `\n`.
fn line_ranges(source: &str) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, b) in source.bytes().enumerate() {
        if b == b'\n' {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    if start < source.len() {
        out.push(start..source.len());
    }
    out
}

fn check_book(book: &Book, label: &str) -> Result<usize, String> {
    let source = &book.document.source;
    let rows: Vec<_> = book.pages.iter().flat_map(|p| &p.rows).collect();

    // Losslessness: every byte claimed once, and code lines appear in order.
    let mut spans: Vec<_> = rows
        .iter()
        .flat_map(|r| {
            r.code.iter().chain(&r.comment).map(|s| s.source).chain(r.elided.iter().copied()).chain(r.terminator)
        })
        .filter(|s| !s.is_empty())
        .collect();
    spans.sort_by_key(|s| s.start);
    let mut at = 0;
    for s in &spans {
        ensure(s.start == at, || format!("{label}: gap or overlap at byte {at}"))?;
        at = s.end;
    }
    ensure(at == source.len(), || format!("{label}: covered {at} of {} bytes", source.len()))?;
    let lines: Vec<u32> = rows.iter().filter_map(|r| r.source_line).collect();
    ensure(lines.windows(2).all(|w| w[0] < w[1]), || format!("{label}: code lines out of order"))?;
    let code_order: Vec<usize> = rows.iter().flat_map(|r| r.code.iter().map(|s| s.source.start)).collect();
    ensure(code_order.windows(2).all(|w| w[0] < w[1]), || format!("{label}: code spans out of order"))?;

    // TOC: the page recorded for an item holds the first byte of its line.
    let ranges = line_ranges(source);
    for entry in &book.toc {
        let range = ranges[entry.item.line as usize - 1].clone();
        let page = book
            .pages
            .iter()
            .flat_map(|p| p.rows.iter().map(move |r| (p.number, r)))
            .flat_map(|(n, r)| r.code.iter().chain(&r.comment).map(move |s| (n, s.source)))
            .filter(|(_, s)| s.start < range.end && s.end > range.start && !s.is_empty())
            .min_by_key(|(_, s)| s.start)
            .map(|(n, _)| n);
        ensure(page == Some(entry.page), || {
            format!("{label}: {} line {} recorded on page {}, found {page:?}", entry.item.name, entry.item.line, entry.page)
        })?;
    }

    // Orphans: a page may end with a definition opener only when nothing
    // follows it or the page holds nothing but openers.
    let mut exempt = 0;
    for (i, page) in book.pages.iter().enumerate() {
        let Some(last) = page.rows.last() else { continue };
        if !last.starts_definition {
            continue;
        }
        let final_page = i + 1 == book.pages.len();
        let only_openers = page.rows.iter().all(|r| r.starts_definition);
        ensure(final_page || only_openers, || format!("{label}: page {} ends with a definition opener", page.number))?;
        exempt += 1;
    }
    Ok(exempt)
}

fn pagination() -> Outcome {
    let files = corpus::files();
    let mut books = 0;
    let mut pages = 0;
    let mut toc = 0;
    let mut exempt = 0;
    for cfg in layouts() {
        for file in &files {
            let book = build_book(document(file), &cfg, None, None).map_err(|e| e.to_string())?;
            exempt += check_book(&book, &format!("{} ({} cols, {} rows)", file.name, cfg.columns, cfg.rows))?;
            books += 1;
            pages += book.pages.len();
            toc += book.toc.len();
        }
    }
    // A long definition-heavy document across many small pages.
    let mut src = String::new();
    for i in 0..200 {
        src.push_str(&format!("def f{i}(x):\n    return x + {i}\n\n"));
        if i % 7 == 0 {
            src.push_str(&format!("# Group {i}\n\nclass C{i}:\n    def m(self):\n        pass\n"));
        }
    }
    for rows in 4..=12 {
        let cfg = LayoutConfig { ratio: Ratio::None, rows, ..LayoutConfig::default() };
        let book = build_book(Document::new("long.py", src.as_str(), Language::PythonLike), &cfg, None, None)
            .map_err(|e| e.to_string())?;
        exempt += check_book(&book, &format!("long.py ({rows} rows)"))?;
        books += 1;
        pages += book.pages.len();
        toc += book.toc.len();
    }
    Ok(format!("{books} books, {pages} pages, {toc} TOC entries; final-row openers at a page end: {exempt}"))
}

// 8 ------------------------------------------------------------------------

fn random_text(rng: &mut StdRng) -> String {
    const WORDS: [&str; 12] = ["alpha", "be", "x", "fox", "a_b", "42", "(", ")", "->", "==", ",", "dog."];
    let n = rng.gen_range(0..20);
    let mut s = String::new();
    for i in 0..n {
        if i > 0 {
            s.push_str([" ", "  ", "\n", " ", "\t"][rng.gen_range(0..5)]);
        }
        s.push_str(WORDS[rng.gen_range(0..WORDS.len())]);
    }
    s
}

fn random_script(rng: &mut StdRng) -> String {
    let n = rng.gen_range(1..16);
    let mut s = String::new();
    for _ in 0..n {
        if rng.gen_bool(0.4) {
            s.push_str(&rng.gen_range(1..4).to_string());
        }
        match rng.gen_range(0..9) {
            0 => s.push('w'),
            1 => s.push('b'),
            2 => s.push('e'),
            3 => s.push_str("dw"),
            4 => s.push_str("db"),
            5 => s.push_str("de"),
            6 => s.push('P'),
            7 => s.push('p'),
            _ => s.push('u'),
        }
    }
    s
}

fn undo_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..1000 {
        let text = random_text(&mut rng);
        let cursor = rng.gen_range(0..=text.chars().count());
        let script = random_script(&mut rng);
        let mut buf = Buffer::with_cursor(&text, cursor);
        buf.apply_script(&script).map_err(|e| format!("{script}: {e}"))?;
        // A motion ends any undo run; then walk back over the whole history.
        buf.apply(Command::Motion { kind: MotionKind::Word, count: 1 });
        let n = buf.history().len() as u32;
        if n > 0 {
            buf.apply(Command::Undo { count: n });
        }
        ensure(buf.text() == text, || format!("{text:?} + {script:?} + full undo gave {:?}", buf.text()))?;
    }

    let kinds = ["dw", "db", "de", "P", "p"];
    let mut exercised = [0usize; 5];
    let mut attempts = 0;
    while exercised.iter().any(|&n| n < 200) {
        attempts += 1;
        ensure(attempts < 100_000, || format!("could not exercise every kind: {exercised:?}"))?;
        let text = random_text(&mut rng);
        let cursor = rng.gen_range(0..=text.chars().count());
        let mut buf = Buffer::with_cursor(&text, cursor);
        // Fill the kill ring so pastes have something to insert.
        buf.apply_script("dw").unwrap();
        let k = rng.gen_range(0..kinds.len());
        let before = buf.text();
        let recorded = buf.history().len();
        buf.apply_script(kinds[k]).unwrap();
        if buf.history().len() == recorded {
            continue; // nothing changed; not an instance of the pattern
        }
        let after = buf.text();
        buf.apply_script("u").unwrap();
        ensure(buf.text() == before, || format!("{}: undo gave {:?}, want {before:?}", kinds[k], buf.text()))?;
        buf.apply_script("w").unwrap();
        buf.apply_script("u").unwrap();
        ensure(buf.text() == after, || format!("{}: redo gave {:?}, want {after:?}", kinds[k], buf.text()))?;
        exercised[k] += 1;
    }
    Ok(format!("1000 scripts fully undone; X u w u redo holds for {}", kinds.join(", ")))
}

// 9 ------------------------------------------------------------------------

fn ligature_safety() -> Outcome {
    let faces = default_faces();
    let table = LigatureTable::default();
    let lig = RenderConfig { ligatures: true, ..RenderConfig::neutral() };
    let mut substituted = 0;
    for file in corpus::files() {
        let original = tokenize(&file.bytes, file.language).map_err(|e| e.to_string())?;
        for layout in [LayoutConfig::default(), LayoutConfig::neutral()] {
            let book = build_book(document(&file), &layout, None, None).map_err(|e| e.to_string())?;
            let cfg = RenderConfig { ligatures: true, ..RenderConfig::default() };
            let _ = render_html(&book, &faces, &cfg);
            let _ = render_ansi(&book, &faces, &cfg);
            ensure(book.document.tokens == original, || format!("{}: token stream changed", file.name))?;
            ensure(book.document.source.as_bytes() == file.bytes, || format!("{}: source changed", file.name))?;
        }
        // Display text: whole operator tokens swapped for their glyph,
        // everything else verbatim.
        let src = file.text();
        let expected: String = original
            .iter()
            .map(|t| {
                let text = t.text(src);
                match (t.category, table.lookup(text)) {
                    (Category::Operator, Some(glyph)) => {
                        substituted += 1;
                        glyph
                    }
                    _ => text,
                }
            })
            .collect();
        let book = build_book(document(&file), &LayoutConfig::neutral(), None, None).map_err(|e| e.to_string())?;
        let shown = strip_sgr(&render_ansi(&book, &faces, &lig)).map_err(|e| e.to_string())?;
        ensure(shown == expected.as_bytes(), || format!("{}: displayed text differs", file.name))?;
    }
    let src = "ok = a >= b\ns = '>='\n";
    let book = build_book(Document::new("t.py", src, Language::PythonLike), &LayoutConfig::neutral(), None, None)
        .map_err(|e| e.to_string())?;
    let shown = String::from_utf8(strip_sgr(&render_ansi(&book, &faces, &lig)).unwrap()).unwrap();
    ensure(shown == "ok = a ≥ b\ns = '>='\n", || format!("got {shown:?}"))?;
    Ok(format!("corpus unchanged; {substituted} operator substitutions, strings literal"))
}

// 10 -----------------------------------------------------------------------

fn usage_lint() -> Outcome {
    let faces = default_faces();
    let cfg = RenderConfig::default();
    let loud: String = (0..20).map(|i| format!("x{i} = {i}  # TODO FIXME\n")).collect();
    let book = build_book(Document::new("loud.py", loud, Language::PythonLike), &LayoutConfig::default(), None, None)
        .map_err(|e| e.to_string())?;
    let report = usage_report(&book, &faces, &cfg);
    let share = report.percent(FaceName::Popout) + report.percent(FaceName::Critical);
    ensure(share > 5.0, || format!("synthetic document only {share:.1}% loud"))?;
    ensure(report.warnings.iter().any(|w| w.contains("scarcely")), || format!("no scarcity warning:\n{report}"))?;

    let plain = format!("{FOX}\nPlain prose has no tokens worth coloring.\n");
    let book = build_book(Document::new("plain.txt", plain, Language::Plain), &LayoutConfig::default(), None, None)
        .map_err(|e| e.to_string())?;
    let quiet = usage_report(&book, &faces, &cfg);
    ensure(quiet.percent(FaceName::Default) == 100.0, || format!("not all default:\n{quiet}"))?;
    ensure(quiet.warnings.is_empty(), || format!("unexpected warnings: {:?}", quiet.warnings))?;
    Ok(format!("{share:.1}% popout+critical warns; all-default document is clean"))
}
