//! Shared helpers for the integration tests: the fixture corpus and id-based
//! views of vertex sets.

#![allow(dead_code)]

use logsurf::{LogSurfaceModel, VertexSet};
use logsurf_cli::document::GraphDocument;
use std::collections::BTreeSet;
use std::path::PathBuf;

pub struct Fixture {
    pub file: String,
    pub path: PathBuf,
    pub doc: GraphDocument,
    pub model: LogSurfaceModel,
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every fixture, sorted by file name.
pub fn fixtures() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).expect("readable fixture");
            let doc = GraphDocument::from_json(&text)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let model = doc
                .to_model()
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            Fixture {
                file,
                path,
                doc,
                model,
            }
        })
        .collect()
}

pub fn fixture(file: &str) -> Fixture {
    fixtures()
        .into_iter()
        .find(|f| f.file == file)
        .unwrap_or_else(|| panic!("no fixture {file}"))
}

pub fn id_set(model: &LogSurfaceModel, set: &VertexSet) -> BTreeSet<String> {
    set.iter()
        .map(|&v| model.graph().id(v).to_string())
        .collect()
}

pub fn names(ids: &[String]) -> BTreeSet<String> {
    ids.iter().cloned().collect()
}

pub fn vertex(model: &LogSurfaceModel, id: &str) -> usize {
    model.graph().index_of(id).unwrap_or_else(|e| panic!("{e}"))
}
