//! Golden parser cases shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use algebroid_dsl::model::resolve;
use algebroid_dsl::parse;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// What the front end makes of a source: the canonical rendering when it
/// parses and resolves, the rendered error otherwise.
pub fn front_end(source: &str) -> String {
    match parse(source).and_then(|file| resolve(&file).map(|_| file)) {
        Ok(file) => file.to_string(),
        Err(e) => format!("{e}\n"),
    }
}

pub struct GoldenCase {
    pub name: String,
    pub actual: String,
    pub expected: Option<String>,
}

impl GoldenCase {
    pub fn is_error_case(&self) -> bool {
        self.name.starts_with("err")
    }

    pub fn matches(&self) -> bool {
        self.expected.as_deref() == Some(self.actual.as_str())
    }
}

/// Every `*.alg` in the golden directory with its `*.golden` expectation.
/// Setting `UPDATE_GOLDEN` rewrites the expectations.
pub fn golden_cases() -> Vec<GoldenCase> {
    let dir = golden_dir();
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("golden directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    paths.sort();
    let bless = std::env::var_os("UPDATE_GOLDEN").is_some();
    paths
        .into_iter()
        .map(|p| {
            let source = fs::read_to_string(&p).expect("readable case");
            let actual = front_end(&source);
            let golden = p.with_extension("golden");
            if bless {
                fs::write(&golden, &actual).expect("writable golden file");
            }
            GoldenCase {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                actual,
                expected: fs::read_to_string(&golden).ok(),
            }
        })
        .collect()
}
