use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use superdirac::analysis::Report;
use superdirac::SpaceConfig;

/// One `(m, n, k, Q)` cell of a sweep. Block suites store the degree in `k`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub cfg: SpaceConfig,
    pub k: usize,
    pub q: usize,
}

impl Cell {
    pub fn new(cfg: SpaceConfig, k: usize, q: usize) -> Self {
        Cell { cfg, k, q }
    }

    fn key(&self, suite: &str) -> String {
        format!("{suite}:{},{},{},{}", self.cfg.m(), self.cfg.n(), self.k, self.q)
    }
}

#[derive(Serialize, Deserialize)]
struct ManifestLine {
    cell: String,
    report: Report,
}

type Runner<'a> = Box<dyn Fn(&Cell) -> Report + Sync + 'a>;

pub struct Sweep<'a> {
    suite: &'static str,
    cells: Vec<Cell>,
    runner: Runner<'a>,
}

impl<'a> Sweep<'a> {
    pub fn new(suite: &'static str, cells: Vec<Cell>, runner: impl Fn(&Cell) -> Report + Sync + 'a) -> Self {
        Sweep {
            suite,
            cells,
            runner: Box::new(runner),
        }
    }

    /// Runs every cell not already in the manifest and returns reports in cell order.
    pub fn run(self, manifest: Option<&Path>) -> io::Result<Vec<Report>> {
        let mut done = match manifest {
            Some(p) => load(p)?,
            None => BTreeMap::new(),
        };
        let todo: Vec<&Cell> = self.cells.iter().filter(|c| !done.contains_key(&c.key(self.suite))).collect();
        let sink = match manifest {
            Some(p) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(p)?)),
            None => None,
        };
        let fresh: Vec<(String, Report)> = todo
            .par_iter()
            .map(|c| {
                let report = (self.runner)(c);
                let key = c.key(self.suite);
                if let Some(file) = &sink {
                    let line = serde_json::to_string(&ManifestLine {
                        cell: key.clone(),
                        report: report.clone(),
                    })?;
                    let mut f = file.lock().expect("manifest lock");
                    writeln!(f, "{line}")?;
                    f.flush()?;
                }
                Ok((key, report))
            })
            .collect::<io::Result<_>>()?;
        done.extend(fresh);
        Ok(self
            .cells
            .iter()
            .filter_map(|c| done.remove(&c.key(self.suite)))
            .collect())
    }
}

fn load(path: &Path) -> io::Result<BTreeMap<String, Report>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e),
    };
    let mut out = BTreeMap::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted run is recomputed.
        if let Ok(entry) = serde_json::from_str::<ManifestLine>(&line) {
            out.insert(entry.cell, entry.report);
        }
    }
    Ok(out)
}
