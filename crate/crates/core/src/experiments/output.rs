// Copyright 2026 The qperceptron Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! CSV and manifest writers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::SweepConfig;
use super::sweep::{DegreeSummary, SweepOutput, SweepRecord};
use crate::error::Result;

/// Run description stored next to the CSV.
#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub rows: usize,
    pub config: &'a SweepConfig,
    pub degrees: &'a [DegreeSummary],
}

/// CSV with header `d,zbar,z,y,t_d,y_q,r_c,r_q,p,sigma_pred`.
pub fn csv_bytes(records: &[SweepRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

pub fn manifest_json(output: &SweepOutput) -> Result<String> {
    let m = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: output.config.seed,
        rows: output.records.len(),
        config: &output.config,
        degrees: &output.summaries,
    };
    Ok(serde_json::to_string_pretty(&m)? + "\n")
}

/// Write `<stem>.csv` and `<stem>.manifest.json` into `dir`.
pub fn write_outputs(output: &SweepOutput, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let manifest_path = dir.join(format!("{stem}.manifest.json"));
    fs::write(&csv_path, csv_bytes(&output.records)?)?;
    fs::write(&manifest_path, manifest_json(output)?)?;
    Ok((csv_path, manifest_path))
}
