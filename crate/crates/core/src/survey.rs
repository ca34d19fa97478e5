//! Friendship survey tallies.
//!
//! Each respondent names four friends and the group of each. The
//! distribution of how many of the four share the respondent's own group is
//! the homophily table. Group labels are opaque strings compared for
//! equality only.
//!
//! The bundled sample has 1000 synthetic records. The reference table it
//! stands in for (62 / 22.3 / 7.7 / 4.4 / 5.5) sums to 101.9, which no set
//! of records can reproduce, so the sample matches the three, two, one and
//! zero tie rows exactly and puts the remainder in the four tie row (60.1).

use std::fmt::Write as _;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

pub const HEADER: [&str; 6] = ["subject_id", "own_group", "f1", "f2", "f3", "f4"];

const BUNDLED: &str = include_str!("../data/survey_sample.csv");

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("line {line}: expected 6 fields, found {found}")]
    BadRowArity { line: u64, found: usize },
    #[error("line {line}: empty label in column `{column}`")]
    EmptyLabel { line: u64, column: &'static str },
    #[error("no survey records")]
    EmptyInput,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub subject_id: String,
    pub own_group: String,
    pub friend_groups: [String; 4],
}

impl SurveyRecord {
    pub fn same_group_ties(&self) -> usize {
        self.friend_groups.iter().filter(|g| **g == self.own_group).count()
    }
}

pub fn parse_survey<R: Read>(input: R) -> Result<Vec<SurveyRecord>, SurveyError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers()?.clone();
    let mut columns = [0usize; 6];
    for (slot, name) in columns.iter_mut().zip(HEADER) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or(SurveyError::MissingColumn(name))?;
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != HEADER.len() {
            return Err(SurveyError::BadRowArity {
                line,
                found: row.len(),
            });
        }
        let mut fields: [String; 6] = Default::default();
        for ((field, &col), name) in fields.iter_mut().zip(&columns).zip(HEADER) {
            let value = &row[col];
            if value.is_empty() {
                return Err(SurveyError::EmptyLabel { line, column: name });
            }
            *field = value.to_string();
        }
        let [subject_id, own_group, f1, f2, f3, f4] = fields;
        records.push(SurveyRecord {
            subject_id,
            own_group,
            friend_groups: [f1, f2, f3, f4],
        });
    }
    Ok(records)
}

pub fn load_survey<P: AsRef<Path>>(path: P) -> Result<Vec<SurveyRecord>, SurveyError> {
    parse_survey(File::open(path)?)
}

pub fn bundled_sample() -> Vec<SurveyRecord> {
    parse_survey(BUNDLED.as_bytes()).expect("bundled survey sample is valid")
}

/// Counts and percentages indexed by the number of same-group ties (0..=4).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomophilyDistribution {
    pub total: usize,
    pub counts: [usize; 5],
    /// Percentages in tenths, rounded half up.
    pub tenths: [u64; 5],
}

impl HomophilyDistribution {
    pub fn percentage(&self, same_group_ties: usize) -> f64 {
        self.tenths[same_group_ties] as f64 / 10.0
    }

    /// Table rows from four same-group ties down to none.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &'static str, usize, f64)> + '_ {
        (0..5).rev().map(move |k| (k, ROW_LABELS[4 - k], self.counts[k], self.percentage(k)))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<50} {:>6} {:>8}", "criteria", "count", "percent");
        for (_, label, count, pct) in self.rows() {
            let _ = writeln!(out, "{label:<50} {count:>6} {pct:>8.1}");
        }
        let _ = writeln!(out, "{:<50} {:>6}", "total respondents", self.total);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows()
            .map(|(k, label, count, pct)| {
                serde_json::json!({
                    "same_group_ties": k,
                    "criteria": label,
                    "count": count,
                    "percentage": pct,
                })
            })
            .collect();
        serde_json::json!({ "total": self.total, "rows": rows })
    }
}

const ROW_LABELS: [&str; 5] = [
    "All four ties from within the same social group",
    "Three ties from the same social group",
    "Two ties from the same social group",
    "One tie from the same social group",
    "All ties from different social groups",
];

pub fn homophily_distribution(records: &[SurveyRecord]) -> Result<HomophilyDistribution, SurveyError> {
    if records.is_empty() {
        return Err(SurveyError::EmptyInput);
    }
    let mut counts = [0usize; 5];
    for r in records {
        counts[r.same_group_ties()] += 1;
    }
    let total = records.len() as u64;
    // round_half_up(1000 c / total) in integers
    let tenths = counts.map(|c| (2000 * c as u64 + total) / (2 * total));
    Ok(HomophilyDistribution {
        total: records.len(),
        counts,
        tenths,
    })
}
