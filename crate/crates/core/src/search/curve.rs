//! Sampled counting curves for plotting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{enumerate_solutions, CongruenceSpec, SearchConfig, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSeries {
    Pi02,
    Pi12,
    /// `Pi_{0,2}(x) / Pi_{1,2}(x)`.
    Ratio,
    /// `Pi_{0,2}(x) / (log2 x)^2`.
    Norm02,
    Norm12,
}

impl CurveSeries {
    pub const ALL: [CurveSeries; 5] = [
        CurveSeries::Pi02,
        CurveSeries::Pi12,
        CurveSeries::Ratio,
        CurveSeries::Norm02,
        CurveSeries::Norm12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveSeries::Pi02 => "pi02",
            CurveSeries::Pi12 => "pi12",
            CurveSeries::Ratio => "ratio",
            CurveSeries::Norm02 => "norm02",
            CurveSeries::Norm12 => "norm12",
        }
    }
}

impl fmt::Display for CurveSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveSeries {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CurveSeries::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown series {s:?} (expected pi02, pi12, ratio, norm02, norm12)"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: u64,
    pub value: f64,
    pub series: CurveSeries,
}

/// Evenly spaced sample points from 1 to `x_max`, always ending at `x_max`.
fn sample_points(x_max: u64, samples: usize) -> Vec<u64> {
    let n = samples as u128;
    let mut xs: Vec<u64> = (1..=n)
        .map(|i| ((x_max as u128 * i) / n).max(1) as u64)
        .collect();
    xs.dedup();
    xs
}

/// `(x, Pi(x))` at `samples` points up to `x_max`, from one sweep.
pub fn pi_curve(
    spec: &CongruenceSpec,
    x_max: u64,
    samples: usize,
    config: &SearchConfig,
) -> Result<Vec<(u64, u64)>, SearchError> {
    if samples < 2 {
        return Err(SearchError::TooFewSamples);
    }
    let report = enumerate_solutions(x_max, spec, &[], config)?;
    Ok(sample_points(x_max, samples)
        .into_iter()
        .map(|x| (x, report.solutions.partition_point(|&n| n <= x) as u64))
        .collect())
}

/// One of the plotted series. Points where the value is undefined (a zero
/// denominator, or `log2 x = 0`) are skipped.
pub fn series_curve(
    series: CurveSeries,
    x_max: u64,
    samples: usize,
    config: &SearchConfig,
) -> Result<Vec<CurvePoint>, SearchError> {
    let spec02 = CongruenceSpec { r: 0, m: 2 };
    let spec12 = CongruenceSpec { r: 1, m: 2 };
    let curve = |spec| pi_curve(&spec, x_max, samples, config);
    let pts: Vec<(u64, Option<f64>)> = match series {
        CurveSeries::Pi02 => curve(spec02)?
            .into_iter()
            .map(|(x, c)| (x, Some(c as f64)))
            .collect(),
        CurveSeries::Pi12 => curve(spec12)?
            .into_iter()
            .map(|(x, c)| (x, Some(c as f64)))
            .collect(),
        CurveSeries::Ratio => curve(spec02)?
            .into_iter()
            .zip(curve(spec12)?)
            .map(|((x, a), (_, b))| (x, (b > 0).then(|| a as f64 / b as f64)))
            .collect(),
        CurveSeries::Norm02 | CurveSeries::Norm12 => {
            let spec = if series == CurveSeries::Norm02 { spec02 } else { spec12 };
            curve(spec)?
                .into_iter()
                .map(|(x, c)| {
                    let l = (x as f64).log2();
                    (x, (l > 0.0).then(|| c as f64 / (l * l)))
                })
                .collect()
        }
    };
    Ok(pts
        .into_iter()
        .filter_map(|(x, v)| v.map(|value| CurvePoint { x, value, series }))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_end_at_max() {
        assert_eq!(sample_points(10, 2), vec![5, 10]);
        assert_eq!(sample_points(3, 10), vec![1, 2, 3]);
        assert_eq!(*sample_points(1 << 20, 7).last().unwrap(), 1 << 20);
    }

    #[test]
    fn curve_endpoints() {
        let cfg = SearchConfig::default();
        let spec = CongruenceSpec::new(0, 2).unwrap();
        let c = pi_curve(&spec, 1 << 15, 16, &cfg).unwrap();
        assert_eq!(*c.last().unwrap(), (1 << 15, 97));
        assert!(c.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(matches!(
            pi_curve(&spec, 100, 1, &cfg),
            Err(SearchError::TooFewSamples)
        ));

        let ratio = series_curve(CurveSeries::Ratio, 1 << 20, 4, &cfg).unwrap();
        let last = ratio.last().unwrap();
        assert!((last.value - 453.0 / 258.0).abs() < 1e-12);
        let norm = series_curve(CurveSeries::Norm02, 1 << 20, 4, &cfg).unwrap();
        assert!((norm.last().unwrap().value - 1.1325).abs() < 1e-12);
    }
}
