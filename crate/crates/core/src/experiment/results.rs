//! Results tables and run manifests.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MetricsRow, ScaleConfig};
use crate::agent::PrivacyBehavior;
use crate::error::{Error, Result};

pub const RESULTS_HEADER: [&str; 8] = [
    "label", "scope", "division", "theta", "w_avg", "c_avg", "combined", "disputes",
];

pub fn results_csv(rows: &[MetricsRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESULTS_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.label.clone(),
            r.behavior.scope.as_str().to_string(),
            r.behavior.division.as_str().to_string(),
            r.behavior.theta.percent().to_string(),
            format!("{:.4}", r.w_avg),
            format!("{:.4}", r.c_avg),
            format!("{:.4}", r.combined),
            r.disputes.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn write_results(rows: &[MetricsRow], destination: &Path) -> Result<()> {
    std::fs::write(destination, results_csv(rows)).map_err(|e| Error::io(destination, e))
}

/// Reads a table written by [`results_csv`]. Values carry its 4-decimal rounding.
pub fn parse_results(text: &str) -> Result<Vec<MetricsRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_error)?.clone();
    if header.iter().ne(RESULTS_HEADER) {
        return Err(Error::Parse {
            location: "line 1".into(),
            message: format!("expected header {}", RESULTS_HEADER.join(",")),
        });
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            let line = rec.position().map_or(0, |p| p.line());
            let bad = |field: &str| Error::Parse {
                location: format!("line {line}"),
                message: format!("invalid {field}"),
            };
            let num = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(RESULTS_HEADER[i]));
            let behavior: PrivacyBehavior = format!("{}:{}:{}", &rec[1], &rec[2], &rec[3])
                .parse()
                .map_err(|_| bad("behavior"))?;
            Ok(MetricsRow {
                label: rec[0].to_string(),
                behavior,
                w_avg: num(4)?,
                c_avg: num(5)?,
                combined: num(6)?,
                disputes: rec[7].parse().map_err(|_| bad("disputes"))?,
            })
        })
        .collect()
}

fn csv_error(e: csv::Error) -> Error {
    let location = e.position().map_or_else(
        || "results table".to_string(),
        |p| format!("line {}", p.line()),
    );
    Error::Parse {
        location,
        message: e.to_string(),
    }
}

/// Inputs that fully determine a results table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub experiment: u64,
    /// Decimal, since TOML integers are signed.
    pub master_seed: String,
    pub scale: ScaleConfig,
    pub dataset_hash: String,
    pub version: String,
}

impl RunManifest {
    pub fn new(
        experiment: u64,
        master_seed: u64,
        scale: ScaleConfig,
        dataset_hash: String,
    ) -> Self {
        RunManifest {
            experiment,
            master_seed: master_seed.to_string(),
            scale,
            dataset_hash,
            version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }
}
