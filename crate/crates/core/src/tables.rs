//! The shipped record-code tables and their verification.
//!
//! `data/table2/rowNN.json` holds the generator triples with ascending
//! coefficients (the published table lists them highest degree first).
//! Each row's code `X` is checked for its `e` value and for the quantum
//! parameters obtained from `X^⊥s` by the nearly-self-orthogonal
//! construction.

use std::fmt;

use serde::Serialize;

use crate::additive_code::{AdditiveCyclicCode, CodeDescriptor};
use crate::distance::{DistanceOptions, Method};
use crate::error::{Error, Result};
use crate::quantum::{nearly_self_orthogonal_params, parse_previous_best, PreviousBest, QuantumParams};
use crate::symplectic::{classify_orthogonality, dual, e_by_gram_rank};

pub const TABLE2_ROWS: [&str; 10] = [
    include_str!("../data/table2/row01.json"),
    include_str!("../data/table2/row02.json"),
    include_str!("../data/table2/row03.json"),
    include_str!("../data/table2/row04.json"),
    include_str!("../data/table2/row05.json"),
    include_str!("../data/table2/row06.json"),
    include_str!("../data/table2/row07.json"),
    include_str!("../data/table2/row08.json"),
    include_str!("../data/table2/row09.json"),
    include_str!("../data/table2/row10.json"),
];

pub const PREVIOUS_BEST_CSV: &str = include_str!("../data/previous_best.csv");

/// One published row: length of `X`, its `e`, and the `[[n, k, d]]` claimed
/// for the derived quantum code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedRow {
    pub row: usize,
    pub n: usize,
    pub e: usize,
    pub quantum_n: usize,
    pub quantum_k: usize,
    pub quantum_d: usize,
    pub previous_d: usize,
}

impl PublishedRow {
    /// `dim X = n + e/2 − k_Q`, from `n_Q = n + e/2` and `k_Q = n − dim X + e/2`.
    pub fn implied_dimension(&self) -> usize {
        self.n + self.e / 2 - self.quantum_k
    }
}

const fn row(row: usize, n: usize, e: usize, qn: usize, qk: usize, qd: usize, prev: usize) -> PublishedRow {
    PublishedRow { row, n, e, quantum_n: qn, quantum_k: qk, quantum_d: qd, previous_d: prev }
}

pub const TABLE1: [PublishedRow; 10] = [
    row(1, 21, 2, 22, 2, 7, 6),
    row(2, 35, 4, 37, 17, 6, 5),
    row(3, 45, 0, 45, 6, 10, 9),
    row(4, 45, 0, 45, 10, 9, 8),
    row(5, 51, 0, 51, 8, 11, 10),
    row(6, 51, 2, 52, 16, 10, 9),
    row(7, 51, 2, 52, 24, 8, 7),
    row(8, 63, 2, 64, 33, 8, 7),
    row(9, 63, 2, 64, 34, 8, 7),
    row(10, 63, 2, 64, 35, 8, 7),
];

pub fn table2_descriptor(row: usize) -> Result<CodeDescriptor> {
    let text = TABLE2_ROWS
        .get(row.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidConfig(format!("table row {row} is not in 1..=10")))?;
    CodeDescriptor::from_json(text).map_err(|e| Error::InvalidDescriptor(format!("row{row:02}.json: {e}")))
}

pub fn table2_code(row: usize) -> Result<AdditiveCyclicCode> {
    AdditiveCyclicCode::from_descriptor(&table2_descriptor(row)?)
}

pub fn previous_best() -> Vec<PreviousBest> {
    parse_previous_best(PREVIOUS_BEST_CSV).expect("shipped CSV parses")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Deferred,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Deferred => "DEFERRED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub expected: String,
    pub found: String,
}

impl Check {
    fn compare<T: PartialEq + fmt::Display>(name: &'static str, expected: T, found: T) -> Self {
        let status = if expected == found { Status::Pass } else { Status::Fail };
        Check { name, status, expected: expected.to_string(), found: found.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub row: usize,
    pub published: PublishedRow,
    pub checks: Vec<Check>,
    pub quantum: Option<QuantumParams>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub failures: usize,
    pub deferred: usize,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Verifies one row. The distance is asserted only when both enumerations
/// fit the budget; otherwise the proven bound is reported and the check is
/// deferred.
pub fn verify_row(row: usize, opts: DistanceOptions) -> Result<RowReport> {
    let published = *TABLE1
        .get(row.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidConfig(format!("table row {row} is not in 1..=10")))?;
    let code = table2_code(row)?;
    let mut checks = vec![
        Check::compare("length", published.n, code.n()),
        Check::compare("dimension", published.implied_dimension(), code.dimension()),
    ];
    let report = classify_orthogonality(&code)?;
    checks.push(Check::compare("e", published.e, report.e));
    checks.push(Check::compare("e_gram_oracle", report.e, e_by_gram_rank(&code)));

    let d = dual(&code);
    let mut q = nearly_self_orthogonal_params(&d, opts)?;
    q.d_claimed = Some(published.quantum_d);
    checks.push(Check::compare("r", published.e / 2, q.r.unwrap_or(0)));
    checks.push(Check::compare(
        "parameters",
        format!("[[{}, {}]]", published.quantum_n, published.quantum_k),
        format!("[[{}, {}]]", q.n, q.k),
    ));
    let distance_check = match q.distance_method {
        Method::Exhaustive => Check::compare("distance", published.quantum_d, q.d_low),
        Method::BoundOnly => Check {
            name: "distance",
            status: if q.d_low <= published.quantum_d { Status::Deferred } else { Status::Fail },
            expected: published.quantum_d.to_string(),
            found: format!("d >= {} (bound only)", q.d_low),
        },
    };
    checks.push(distance_check);
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Deferred) {
        Status::Deferred
    } else {
        Status::Pass
    };
    Ok(RowReport { row, published, checks, quantum: Some(q), status })
}

pub fn verify_tables(rows: &[usize], opts: DistanceOptions) -> Result<TableReport> {
    let rows = rows.iter().map(|&r| verify_row(r, opts)).collect::<Result<Vec<_>>>()?;
    let failures = rows.iter().filter(|r| r.status == Status::Fail).count();
    let deferred = rows.iter().filter(|r| r.status == Status::Deferred).count();
    Ok(TableReport { rows, failures, deferred })
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "row {:>2}  n={:<3} {}", r.row, r.published.n, r.status)?;
            for c in &r.checks {
                writeln!(f, "    {:<14} {:<8} expected {:<14} found {}", c.name, c.status, c.expected, c.found)?;
            }
        }
        write!(
            f,
            "{} rows: {} failed, {} deferred",
            self.rows.len(),
            self.failures,
            self.deferred
        )
    }
}
