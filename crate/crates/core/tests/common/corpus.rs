use std::fs;
use std::path::{Path, PathBuf};

use folio::tokens::Language;

pub struct CorpusFile {
    pub path: PathBuf,
    pub name: String,
    pub language: Language,
    pub bytes: Vec<u8>,
}

impl CorpusFile {
    pub fn text(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("corpus files are UTF-8")
    }
}

pub fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Every corpus file, sorted by name, with its language picked from the
/// extension.
pub fn files() -> Vec<CorpusFile> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| CorpusFile {
            name: path.file_name().unwrap().to_string_lossy().into_owned(),
            language: Language::from_path(&path),
            bytes: fs::read(&path).expect("readable corpus file"),
            path,
        })
        .collect()
}
