//! Reference values shipped with the crate (see `fixtures/`).

use serde::Deserialize;

use crate::families::FamilyId;
use crate::search::CongruenceSpec;

pub const FIXTURE_VERSION: u32 = 1;

const TABLE1: &str = include_str!("../fixtures/table1.csv");
const TABLE2: &str = include_str!("../fixtures/table2.csv");
const TABLE3: &str = include_str!("../fixtures/table3.csv");
const TABLE4: &str = include_str!("../fixtures/table4.csv");
const TABLE5: &str = include_str!("../fixtures/table5.csv");
const STERN_PREFIX: &str = include_str!("../fixtures/stern_prefix.csv");

fn rows<T: for<'de> Deserialize<'de>>(text: &str) -> Vec<T> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("embedded fixture is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CountRow {
    pub k: u32,
    pub pi02: u64,
    pub pi12: u64,
}

/// `Pi_{0,2}(2^k)` and `Pi_{1,2}(2^k)` for `k = 15..=26`.
pub fn table1() -> Vec<CountRow> {
    rows(TABLE1)
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ListedSolution {
    pub n: u64,
    /// Spaced binary digits, most significant first.
    pub binary: String,
}

/// A reference solution list: the congruence, the families left out of it,
/// the search bound it covers, and its entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTable {
    pub table: u8,
    pub spec: CongruenceSpec,
    pub exclusions: Vec<FamilyId>,
    pub bound_log2: u32,
    pub entries: Vec<ListedSolution>,
}

impl SolutionTable {
    /// Entries with `n <= x`.
    pub fn up_to(&self, x: u64) -> Vec<&ListedSolution> {
        self.entries.iter().filter(|e| e.n <= x).collect()
    }
}

/// Tables 2, 3 and 4: the `(0,3)`, `(1,3)` and `(2,3)` lists.
pub fn solution_table(table: u8) -> Option<SolutionTable> {
    let (text, r, exclusions) = match table {
        2 => (TABLE2, 0, vec![]),
        3 => (TABLE3, 1, vec![FamilyId::TrivialAllOnes]),
        4 => (TABLE4, 2, vec![FamilyId::TrivialTwos]),
        _ => return None,
    };
    Some(SolutionTable {
        table,
        spec: CongruenceSpec { r, m: 3 },
        exclusions,
        bound_log2: 40,
        entries: rows(text),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct SporadicRow {
    pub r: u32,
    /// A number, or `m` for "any admissible modulus".
    pub m: String,
    pub n: u64,
    pub binary: String,
    /// Descending form as printed, e.g. `2t^2+2t+1`.
    pub poly: String,
}

impl SporadicRow {
    /// Moduli the row claims, restricted to `4..=10`.
    pub fn moduli(&self) -> Vec<u32> {
        match self.m.parse::<u32>() {
            Ok(m) => vec![m],
            Err(_) => ((self.r + 1).max(4)..=10).collect(),
        }
    }
}

/// Table 5.
pub fn table5() -> Vec<SporadicRow> {
    rows(TABLE5)
}

#[derive(Deserialize)]
struct PrefixRow {
    #[allow(dead_code)]
    n: u64,
    s: u64,
}

/// `s_0, ..., s_31`.
pub fn stern_prefix() -> Vec<u64> {
    rows::<PrefixRow>(STERN_PREFIX).into_iter().map(|r| r.s).collect()
}
