//! Proven lower bounds for the solution counts, checked against sweeps.

use serde::Serialize;

use super::{enumerate_solutions, CongruenceSpec, SearchConfig, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LowerBound {
    /// `Pi_{0,2}(x) >= L^2/2 - 3L/2 + 2`, `L = floor(log2 x)`.
    Pi02,
    /// `Pi_{1,2}(x) >= log2 x`.
    Pi12,
    /// `Pi_{0,3}(x) >= log3 log2((1 + sqrt(3(3 + 4x)))/2)`.
    Pi03,
}

impl LowerBound {
    pub const ALL: [LowerBound; 3] = [LowerBound::Pi02, LowerBound::Pi12, LowerBound::Pi03];

    pub fn spec(self) -> CongruenceSpec {
        match self {
            LowerBound::Pi02 => CongruenceSpec { r: 0, m: 2 },
            LowerBound::Pi12 => CongruenceSpec { r: 1, m: 2 },
            LowerBound::Pi03 => CongruenceSpec { r: 0, m: 3 },
        }
    }

    pub fn value(self, x: u64) -> f64 {
        let xf = x as f64;
        match self {
            LowerBound::Pi02 => {
                let l = f64::from(63 - x.leading_zeros());
                0.5 * l * l - 1.5 * l + 2.0
            }
            LowerBound::Pi12 => xf.log2(),
            LowerBound::Pi03 => ((1.0 + (3.0 * (3.0 + 4.0 * xf)).sqrt()) / 2.0).log2().log(3.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub bound: LowerBound,
    pub x: u64,
    pub count: u64,
    pub value: f64,
    pub holds: bool,
}

/// Checks `bound` at every sample point from a single sweep to the largest.
pub fn check_lower_bound(
    bound: LowerBound,
    xs: &[u64],
    config: &SearchConfig,
) -> Result<Vec<BoundCheck>, SearchError> {
    let Some(&x_max) = xs.iter().max() else {
        return Ok(Vec::new());
    };
    let report = enumerate_solutions(x_max, &bound.spec(), &[], config)?;
    Ok(xs
        .iter()
        .map(|&x| {
            let count = report.solutions.partition_point(|&n| n <= x) as u64;
            let value = bound.value(x);
            BoundCheck { bound, x, count, value, holds: count as f64 >= value }
        })
        .collect())
}
