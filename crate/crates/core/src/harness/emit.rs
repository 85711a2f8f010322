// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CellSummary, HarnessError, TrialRecord};
use crate::sampling::Model;

/// CSV columns of a trial record, in order. JSON-lines objects use the
/// same keys in the same order.
pub const RECORD_HEADER: [&str; 18] = [
    "cell",
    "trial",
    "seed",
    "model",
    "n",
    "m",
    "edges",
    "delta",
    "d2",
    "gap",
    "mu_max",
    "mu_min",
    "rho_full",
    "lower_bound",
    "colors_used",
    "first_class",
    "strategy",
    "wall_ms",
];

/// CSV columns of a cell summary. `strategies` is `tag=count` pairs
/// joined by `;`.
pub const SUMMARY_HEADER: [&str; 14] = [
    "cell",
    "n",
    "m",
    "model",
    "trials",
    "mean_gap",
    "median_gap",
    "mean_delta",
    "median_delta",
    "mean_colors",
    "median_colors",
    "first_class",
    "first_class_fraction",
    "strategies",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

impl Format {
    pub fn tag(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::JsonLines => "json-lines",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit_records<W: Write>(
    records: &[TrialRecord],
    format: Format,
    out: W,
) -> Result<(), HarnessError> {
    emit_rows(records, &RECORD_HEADER, format, out)
}

pub fn parse_records<R: Read>(input: R, format: Format) -> Result<Vec<TrialRecord>, HarnessError> {
    match format {
        Format::Csv => {
            let mut rdr = csv::Reader::from_reader(input);
            let header = rdr.headers()?.clone();
            if !header.iter().eq(RECORD_HEADER) {
                return Err(HarnessError::Config(format!(
                    "unexpected CSV header: {}",
                    header.iter().collect::<Vec<_>>().join(",")
                )));
            }
            rdr.deserialize().map(|r| r.map_err(HarnessError::from)).collect()
        }
        Format::JsonLines => {
            let mut out = Vec::new();
            for line in BufReader::new(input).lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    out.push(serde_json::from_str(&line)?);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct SummaryRow {
    cell: u64,
    n: usize,
    m: u64,
    model: Model,
    trials: u64,
    mean_gap: f64,
    median_gap: u64,
    mean_delta: f64,
    median_delta: u64,
    mean_colors: f64,
    median_colors: u64,
    first_class: u64,
    first_class_fraction: String,
    strategies: String,
}

impl From<&CellSummary> for SummaryRow {
    fn from(s: &CellSummary) -> Self {
        let (a, b) = s.first_class_fraction();
        SummaryRow {
            cell: s.cell,
            n: s.n,
            m: s.m,
            model: s.model,
            trials: s.trials,
            mean_gap: s.mean_gap,
            median_gap: s.median_gap,
            mean_delta: s.mean_delta,
            median_delta: s.median_delta,
            mean_colors: s.mean_colors,
            median_colors: s.median_colors,
            first_class: s.first_class,
            first_class_fraction: format!("{a}/{b}"),
            strategies: s
                .strategies
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }
}

pub fn emit_summaries<W: Write>(
    summaries: &[CellSummary],
    format: Format,
    out: W,
) -> Result<(), HarnessError> {
    let rows: Vec<SummaryRow> = summaries.iter().map(SummaryRow::from).collect();
    emit_rows(&rows, &SUMMARY_HEADER, format, out)
}

fn emit_rows<T: Serialize, W: Write>(
    rows: &[T],
    header: &[&str],
    format: Format,
    mut out: W,
) -> Result<(), HarnessError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::JsonLines => {
            for r in rows {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Density;
    use crate::coloring::Strategy;
    use crate::harness::aggregate;

    fn sample_records() -> Vec<TrialRecord> {
        (0..3)
            .map(|t| TrialRecord {
                cell: 2,
                trial: t,
                seed: 100 + t,
                model: if t == 1 { Model::Poisson } else { Model::IidPairs },
                n: 9,
                m: 3300,
                edges: 3300 - t,
                delta: 760 + t,
                d2: 750,
                gap: 10 + t,
                mu_max: 110,
                mu_min: 70,
                rho_full: Density::new(3300 - t, 4),
                lower_bound: 825,
                colors_used: 825,
                first_class: t != 2,
                strategy: Strategy::General,
                wall_ms: 7 * t,
            })
            .collect()
    }

    #[test]
    fn round_trip_both_formats() {
        let recs = sample_records();
        for f in [Format::Csv, Format::JsonLines] {
            let mut buf = Vec::new();
            emit_records(&recs, f, &mut buf).unwrap();
            assert_eq!(parse_records(&buf[..], f).unwrap(), recs, "{f}");
        }
    }

    #[test]
    fn csv_header_is_documented_order() {
        let mut buf = Vec::new();
        emit_records(&sample_records(), Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), RECORD_HEADER.join(","));
        assert!(text.lines().nth(1).unwrap().starts_with("2,0,100,iid-pairs,9,3300,3300,760,"));
    }

    #[test]
    fn json_key_order_matches_header() {
        let mut buf = Vec::new();
        emit_records(&sample_records()[..1], Format::JsonLines, &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        let positions: Vec<usize> = RECORD_HEADER
            .iter()
            .map(|k| line.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        emit_records(&[], Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", RECORD_HEADER.join(",")));
        let mut buf = Vec::new();
        emit_records(&[], Format::JsonLines, &mut buf).unwrap();
        assert!(buf.is_empty());
    }

    #[test]
    fn summaries_emit() {
        let s = aggregate(&sample_records()).unwrap();
        let mut buf = Vec::new();
        emit_summaries(&s, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SUMMARY_HEADER.join(","));
        assert_eq!(lines.count(), s.len());
        assert!(text.contains("general=2"));
    }

    #[test]
    fn unknown_format_rejected() {
        assert!("xml".parse::<Format>().is_err());
        assert_eq!("json-lines".parse::<Format>().unwrap(), Format::JsonLines);
    }
}
