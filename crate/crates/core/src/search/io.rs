//! CSV files for solutions and curves.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::csv_error::CsvError;
use super::{CongruenceSpec, CurvePoint, SearchError, SearchReport};

/// One row of a solutions file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub n: u64,
    pub binary: String,
    pub r: u32,
    pub m: u32,
}

impl From<csv::Error> for SearchError {
    fn from(e: csv::Error) -> Self {
        SearchError::Csv(CsvError(e.to_string()))
    }
}

/// Binary digits separated by spaces, the way tables print them.
pub fn spaced_binary(n: u64) -> String {
    let bits = format!("{n:b}");
    let mut out = String::with_capacity(bits.len() * 2);
    for (i, c) in bits.chars().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push(c);
    }
    out
}

pub fn write_solutions_csv<W: Write>(report: &SearchReport, w: W) -> Result<(), SearchError> {
    let mut wr = csv::Writer::from_writer(w);
    for &n in &report.solutions {
        wr.serialize(SolutionRow {
            n,
            binary: format!("{n:b}"),
            r: report.spec.r,
            m: report.spec.m,
        })?;
    }
    if report.solutions.is_empty() {
        wr.write_record(["n", "binary", "r", "m"])?;
    }
    wr.flush()?;
    Ok(())
}

/// Read a solutions file. Rows must share one `(r, m)` and have
/// consistent binary columns; the returned indices are sorted.
pub fn read_solutions_csv<R: Read>(r: R) -> Result<(Option<CongruenceSpec>, Vec<u64>), SearchError> {
    let mut rd = csv::Reader::from_reader(r);
    let mut spec: Option<CongruenceSpec> = None;
    let mut out = Vec::new();
    for row in rd.deserialize() {
        let row: SolutionRow = row?;
        if format!("{:b}", row.n) != row.binary.replace(' ', "") {
            return Err(SearchError::BadInput(format!(
                "binary column {:?} does not match n = {}",
                row.binary, row.n
            )));
        }
        let s = CongruenceSpec::new(row.r, row.m)?;
        match spec {
            None => spec = Some(s),
            Some(prev) if prev != s => {
                return Err(SearchError::BadInput(format!(
                    "mixed congruences {prev} and {s}"
                )))
            }
            _ => {}
        }
        out.push(row.n);
    }
    out.sort_unstable();
    out.dedup();
    Ok((spec, out))
}

pub fn write_curve_csv<W: Write>(points: &[CurvePoint], w: W) -> Result<(), SearchError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["x", "value", "series"])?;
    for p in points {
        wr.write_record([p.x.to_string(), p.value.to_string(), p.series.to_string()])?;
    }
    wr.flush()?;
    Ok(())
}
