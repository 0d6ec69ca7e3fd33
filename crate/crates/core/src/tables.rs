//! The eight `d`-fold symmetry tables: reference values, computation from
//! closed forms by Möbius inversion, and cell-by-cell comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::closed_forms::Family;
use crate::decomposition::profile;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    UnlabeledWheel,
    LabeledWheel,
    UnlabeledBouquet,
    LabeledBouquet,
    UnlabeledDirected,
    LabeledDirected,
    UnlabeledRooted,
    LabeledRooted,
}

impl TableId {
    pub const ALL: [TableId; 8] = [
        TableId::UnlabeledWheel,
        TableId::LabeledWheel,
        TableId::UnlabeledBouquet,
        TableId::LabeledBouquet,
        TableId::UnlabeledDirected,
        TableId::LabeledDirected,
        TableId::UnlabeledRooted,
        TableId::LabeledRooted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::UnlabeledWheel => "uWheel",
            TableId::LabeledWheel => "lWheel",
            TableId::UnlabeledBouquet => "uBouquet",
            TableId::LabeledBouquet => "lBouquet",
            TableId::UnlabeledDirected => "uBndirect",
            TableId::LabeledDirected => "lBndirect",
            TableId::UnlabeledRooted => "uK*n",
            TableId::LabeledRooted => "lK*n",
        }
    }

    pub fn family(self) -> Family {
        match self {
            TableId::UnlabeledWheel | TableId::LabeledWheel => Family::Wheel,
            TableId::UnlabeledBouquet | TableId::LabeledBouquet => Family::Bouquet,
            TableId::UnlabeledDirected | TableId::LabeledDirected => Family::DirectedBouquet,
            TableId::UnlabeledRooted | TableId::LabeledRooted => Family::RootedComplete,
        }
    }

    pub fn labeled(self) -> bool {
        matches!(
            self,
            TableId::LabeledWheel | TableId::LabeledBouquet | TableId::LabeledDirected | TableId::LabeledRooted
        )
    }

    pub fn caption(self) -> String {
        let kind = if self.labeled() { "labeled" } else { "unlabeled" };
        let graph = match self.family() {
            Family::Wheel => "the wheel W_{n+1}",
            Family::Bouquet => "the bouquet B_n",
            Family::DirectedBouquet => "the directed bouquet B_n",
            _ => "the vertex-rooted complete graph K_n*",
        };
        format!("{kind} imbeddings of {graph} with d-fold symmetry")
    }

    /// Largest symmetry order shown in column `n`.
    pub fn row_limit(self, n: u64) -> u64 {
        match self.family() {
            Family::Bouquet => 2 * n,
            _ => n,
        }
    }

    /// Columns of the reference table.
    pub fn reference_columns(self) -> Vec<u64> {
        reference(self).columns
    }

    fn reference_text(self) -> &'static str {
        match self {
            TableId::UnlabeledWheel => U_WHEEL,
            TableId::LabeledWheel => L_WHEEL,
            TableId::UnlabeledBouquet => U_BOUQUET,
            TableId::LabeledBouquet => L_BOUQUET,
            TableId::UnlabeledDirected => U_DIRECTED,
            TableId::LabeledDirected => L_DIRECTED,
            TableId::UnlabeledRooted => U_ROOTED,
            TableId::LabeledRooted => L_ROOTED,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::param(format!("unknown table {s:?}")))
    }
}

/// Cells `(d, n)` that exist in a table, plus the column totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryTable {
    pub id: TableId,
    pub columns: Vec<u64>,
    pub cells: BTreeMap<(u64, u64), BigInt>,
    pub totals: BTreeMap<u64, BigInt>,
}

impl SymmetryTable {
    pub fn rows(&self) -> Vec<u64> {
        let max = self.cells.keys().map(|&(d, _)| d).max().unwrap_or(0);
        (1..=max).collect()
    }

    pub fn cell(&self, d: u64, n: u64) -> Option<&BigInt> {
        self.cells.get(&(d, n))
    }

    pub fn to_text(&self) -> String {
        let width = self
            .cells
            .values()
            .chain(self.totals.values())
            .map(|v| v.to_string().len())
            .chain(self.columns.iter().map(|n| n.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = format!("{}: {}\n", self.id, self.id.caption());
        let line = |label: &str, values: Vec<String>| {
            let cells: Vec<String> = values.iter().map(|v| format!("{v:>width$}")).collect();
            format!("{label:>5} {}\n", cells.join(" "))
        };
        out += &line("n", self.columns.iter().map(u64::to_string).collect());
        for d in self.rows() {
            let values = self
                .columns
                .iter()
                .map(|&n| self.cell(d, n).map_or(String::new(), BigInt::to_string))
                .collect();
            out += &line(&d.to_string(), values);
        }
        let totals = self
            .columns
            .iter()
            .map(|n| self.totals.get(n).map_or(String::new(), BigInt::to_string))
            .collect();
        out += &line("Total", totals);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d");
        for n in &self.columns {
            out += &format!(",n={n}");
        }
        out.push('\n');
        let cell = |v: Option<&BigInt>| v.map_or(String::new(), BigInt::to_string);
        for d in self.rows() {
            out += &d.to_string();
            for &n in &self.columns {
                out += &format!(",{}", cell(self.cell(d, n)));
            }
            out.push('\n');
        }
        out += "Total";
        for n in &self.columns {
            out += &format!(",{}", cell(self.totals.get(n)));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .into_iter()
            .map(|d| {
                let values: Vec<Value> =
                    self.columns.iter().map(|&n| self.cell(d, n).map_or(Value::Null, number)).collect();
                json!({ "d": d, "values": values })
            })
            .collect();
        let totals: Vec<Value> =
            self.columns.iter().map(|n| self.totals.get(n).map_or(Value::Null, number)).collect();
        json!({ "table": self.id.name(), "columns": self.columns, "rows": rows, "totals": totals })
    }
}

fn number(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

/// Builds `id` for the columns `ns` from closed forms and Möbius inversion.
pub fn compute(id: TableId, ns: &[u64]) -> Result<SymmetryTable> {
    let mut cells = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for &n in ns {
        let p = profile(id.family(), n)?;
        for d in 1..=id.row_limit(n) {
            let v = if id.labeled() { p.labeled(d) } else { p.unlabeled(d) };
            cells.insert((d, n), v);
        }
        let total = if id.labeled() { p.labeled_total() } else { p.unlabeled_total() };
        totals.insert(n, total);
    }
    Ok(SymmetryTable {
        id,
        columns: ns.to_vec(),
        cells,
        totals,
    })
}

/// The reference table as published, blanks omitted.
pub fn reference(id: TableId) -> SymmetryTable {
    let mut lines = id.reference_text().lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().expect("reference header");
    let columns: Vec<u64> = header
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().expect("reference column"))
        .collect();
    let mut cells = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for line in lines {
        let mut tokens = line.split_whitespace();
        let label = tokens.next().expect("row label");
        for (&n, t) in columns.iter().zip(tokens) {
            if t == "-" {
                continue;
            }
            let v: BigInt = t.parse().expect("reference value");
            if label == "Total" {
                totals.insert(n, v);
            } else {
                cells.insert((label.parse().expect("row index"), n), v);
            }
        }
    }
    SymmetryTable {
        id,
        columns,
        cells,
        totals,
    }
}

/// A reference cell the computed table does not reproduce. `row` is `None`
/// for the total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub n: u64,
    pub row: Option<u64>,
    pub reference: BigInt,
    pub computed: Option<BigInt>,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = self.row.map_or("Total".to_string(), |d| format!("d={d}"));
        let computed = self.computed.as_ref().map_or("missing".to_string(), BigInt::to_string);
        write!(f, "n={} {row}: reference {}, computed {computed}", self.n, self.reference)
    }
}

/// Every reference cell whose column was computed, checked against `computed`.
pub fn compare(computed: &SymmetryTable, reference: &SymmetryTable) -> Vec<CellDiff> {
    let mut out = Vec::new();
    for &n in reference.columns.iter().filter(|n| computed.columns.contains(n)) {
        for (&(d, _), v) in reference.cells.iter().filter(|((_, m), _)| *m == n) {
            let c = computed.cell(d, n);
            if c != Some(v) {
                out.push(CellDiff {
                    n,
                    row: Some(d),
                    reference: v.clone(),
                    computed: c.cloned(),
                });
            }
        }
        if let Some(v) = reference.totals.get(&n) {
            let c = computed.totals.get(&n);
            if c != Some(v) {
                out.push(CellDiff {
                    n,
                    row: None,
                    reference: v.clone(),
                    computed: c.cloned(),
                });
            }
        }
    }
    out
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single `n`.
pub fn parse_range(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad range {text:?}"));
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

const U_WHEEL: &str = "
    n     4     5     6     7     8
    1     9    76   617  6582 80399
    2     5     0    42     0   479
    3     0     0     5     0     0
    4     2     0     0     0     4
    5     -     4     0     0     0
    6     -     -     2     0     0
    7     -     -     -     6     0
    8     -     -     -     -     4
Total    16    80   666  6588 80886
";

const L_WHEEL: &str = "
    n       4       5       6       7       8
    1      72     760    7404   92148 1286384
    2      20       0     252       0    3832
    3       0       0      20       0       0
    4       4       0       0       0      16
    5       -       8       0       0       0
    6       -       -       4       0       0
    7       -       -       -      12       0
    8       -       -       -       -       8
Total      96     768    7680   92160 1290240
";

const U_BOUQUET: &str = "
    n   1   2   3   4   5   6
    1   0   0   1  10  86 837
    2   1   1   2   5  16  52
    3   -   0   1   0   0   5
    4   -   1   0   2   0   4
    5   -   -   0   0   2   0
    6   -   -   1   0   0   3
    7   -   -   -   0   0   0
    8   -   -   -   1   0   0
    9   -   -   -   -   0   0
   10   -   -   -   -   1   0
   11   -   -   -   -   -   0
   12   -   -   -   -   -   1
Total   1   2   5  18 102 902
";

const L_BOUQUET: &str = "
    n        1        2        3        4        5        6
    1        0        0       48     3840   330240 38568960
    2        1        4       48      960    30720  1198080
    3        -        0       16        0        0    76800
    4        -        2        0      192        0    46080
    5        -        -        0        0     1536        0
    6        -        -        8        0        0    23040
    7        -        -        -        0        0        0
    8        -        -        -       48        0        0
    9        -        -        -        -        0        0
   10        -        -        -        -      384        0
   11        -        -        -        -        -        0
   12        -        -        -        -        -     3840
Total        1        6      120     5040   362880 39916800
";

const U_DIRECTED: &str = "
    n        1        2        3        4        5        6        7        8
    1        1        3       20      204     3023    55352  1235519 32430720
    2        -        2        0       10        0      158        0     3336
    3        -        -        3        0        0       24        0        0
    4        -        -        -        4        0        0        0       44
    5        -        -        -        -        5        0        0        0
    6        -        -        -        -        -        6        0        0
    7        -        -        -        -        -        -        7        0
    8        -        -        -        -        -        -        -        8
Total        1        5       23      218     3028    55540  1235526 32434108
";

const L_DIRECTED: &str = "
    n        1        2        3        4        5        6
    1        1        6      120     4896   362760 39853440
    2        -        2        0      120        0    56880
    3        -        -        6        0        0     5760
    4        -        -        -       24        0        0
    5        -        -        -        -      120        0
    6        -        -        -        -        -      720
Total        1        8      126     5040   362880 39916800
";

const U_ROOTED: &str = "
    n            1            2            3            4            5            6            7
    1            1            1            0            2          315      1592520 497662709620
    2            -            0            1            0           15            0       575960
    3            -            -            0            2            0            0         7140
    4            -            -            -            0            6            0            0
    5            -            -            -            -            0           24            0
    6            -            -            -            -            -            0          120
Total            1            1            1            4          336      1592548 497663292840
";

const L_ROOTED: &str = "
    n         1         2         3         4         5         6
    1         1         1         0        12      7560 191102400
    2         -         0         1         0       180         0
    3         -         -         0         4         0         0
    4         -         -         -         0        36         0
    5         -         -         -         -         0       576
    6         -         -         -         -         -         0
Total         1         1         1        16      7776 191102976
";
