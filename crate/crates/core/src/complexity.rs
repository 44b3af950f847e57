//! Closed-form operation counts for every multiplier, measured against the
//! instrumented implementations.
//!
//! Two tables are modelled. [`Table::Rings`] holds the cyclotomic ring and
//! field multipliers as functions of `n`; [`Table::Binary`] compares
//! GF(2^m) multipliers as functions of `m` (its first three rows are in
//! terms of `n`). Rows describing designs not implemented here carry no
//! measurer and are reported expected-only.

use std::fmt::{self, Write as _};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algo::{Domain, MultiplierId};
use crate::cyclo::CycloElement;
use crate::error::{Error, Result};
use crate::gauss::{GaussParams, NormalBasisElement};
use crate::groundfield::{GroundField, OpCount};
use crate::oracle::verify_normal_basis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    /// Cyclotomic ring and field multipliers over GF(p).
    Rings,
    /// GF(2^m) multipliers: redundant rings, type-I and type-II bases.
    Binary,
}

impl Table {
    pub fn as_str(self) -> &'static str {
        match self {
            Table::Rings => "table1",
            Table::Binary => "table6",
        }
    }
}

impl std::str::FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Table::Rings),
            "table6" => Ok(Table::Binary),
            _ => Err(Error::Parse(format!(
                "unknown table '{s}' (expected table1 or table6)"
            ))),
        }
    }
}

/// Sizes at which a row is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applies {
    /// Every `n >= 2`.
    Any,
    /// Odd `n >= 3`.
    Odd,
    /// `m` for which a type-k Gauss period normal basis of GF(2^m) exists.
    Onb(u32),
}

/// How a row is measured: multiplier, characteristic and the dimension it
/// runs at (`m + 1` for type-I rows evaluated on the embedding).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurer {
    pub id: MultiplierId,
    pub p: u32,
    pub embed_onb1: bool,
}

type Formula = fn(u64) -> u64;

/// One table row: closed forms for each count column.
#[derive(Clone, Copy)]
pub struct CountFormula {
    pub label: &'static str,
    pub title: &'static str,
    pub table: Table,
    pub applies: Applies,
    pub mult: Formula,
    pub doub: Formula,
    pub add: Formula,
    /// The table's own Total column.
    pub total: Formula,
    pub measurer: Option<Measurer>,
}

impl fmt::Debug for CountFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountFormula")
            .field("label", &self.label)
            .field("table", &self.table)
            .finish()
    }
}

impl CountFormula {
    pub fn applies_to(&self, x: u64) -> bool {
        match self.applies {
            Applies::Any => x >= 2,
            Applies::Odd => x >= 3 && x % 2 == 1,
            Applies::Onb(k) => {
                x >= 2 && x <= u32::MAX as u64 && verify_normal_basis(x as u32, k, 2).unwrap_or(false)
            }
        }
    }
}

const fn m(id: MultiplierId, p: u32) -> Option<Measurer> {
    Some(Measurer {
        id,
        p,
        embed_onb1: false,
    })
}

const fn on_embedding(id: MultiplierId) -> Option<Measurer> {
    Some(Measurer {
        id,
        p: 2,
        embed_onb1: true,
    })
}

fn zero(_: u64) -> u64 {
    0
}

fn ident(x: u64) -> u64 {
    x
}

fn sq(x: u64) -> u64 {
    x * x
}

fn sq_minus(x: u64) -> u64 {
    x * x - x
}

fn two_sq_minus(x: u64) -> u64 {
    2 * x * x - x
}

fn tri(x: u64) -> u64 {
    (x * x + x) / 2
}

use MultiplierId as Id;

static ROWS: &[CountFormula] = &[
    // ---- cyclotomic rings and fields, variable n ----
    CountFormula {
        label: "symmetric-alg1",
        title: "Symmetric split, rings and fields (alg1)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: sq,
        doub: zero,
        add: sq_minus,
        total: two_sq_minus,
        measurer: m(Id::Alg1, 2),
    },
    CountFormula {
        label: "symmetric-general",
        title: "Symmetric split, rings and fields (general-ring0)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: sq,
        doub: zero,
        add: sq_minus,
        total: two_sq_minus,
        measurer: m(Id::GeneralRing0, 2),
    },
    CountFormula {
        label: "sum-ring-q-alg2",
        title: "Sum-product, rings, q odd (alg2-ring)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: ident,
        add: |n| (3 * n + 1) * n / 2 - 1,
        total: |n| 2 * n * n + 2 * n - 1,
        measurer: m(Id::Alg2Ring, 3),
    },
    CountFormula {
        label: "sum-ring-q-general",
        title: "Sum-product, rings, q odd (general-ring1)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: ident,
        add: |n| (3 * n + 1) * n / 2 - 1,
        total: |n| 2 * n * n + 2 * n - 1,
        measurer: m(Id::GeneralRing1, 3),
    },
    CountFormula {
        label: "sum-ring-gf2-alg2",
        title: "Sum-product, rings, GF(2) (alg2-ring)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: zero,
        add: |n| (3 * n - 1) * n / 2 - 1,
        total: |n| 2 * n * n - 1,
        measurer: m(Id::Alg2Ring, 2),
    },
    CountFormula {
        label: "sum-ring-gf2-general",
        title: "Sum-product, rings, GF(2) (general-ring1)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: zero,
        add: |n| (3 * n - 1) * n / 2 - 1,
        total: |n| 2 * n * n - 1,
        measurer: m(Id::GeneralRing1, 2),
    },
    CountFormula {
        label: "sum-field-q-alg2",
        title: "Sum-product, fields, q odd (alg2-field)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: ident,
        add: |n| 3 * (n - 1) * n / 2,
        total: |n| 2 * n * n,
        measurer: m(Id::Alg2Field, 3),
    },
    CountFormula {
        label: "sum-field-q-general",
        title: "Sum-product, fields, q odd (general-field1)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: tri,
        doub: ident,
        add: |n| 3 * (n - 1) * n / 2,
        total: |n| 2 * n * n,
        measurer: m(Id::GeneralField1, 3),
    },
    CountFormula {
        label: "sum-field-gf2-alg2",
        title: "Sum-product, fields, GF(2) (alg2-field)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: |n| (n - 1) * n / 2,
        doub: zero,
        add: |n| (3 * n - 5) * n / 2,
        total: |n| 2 * n * n - 3 * n,
        measurer: m(Id::Alg2Field, 2),
    },
    CountFormula {
        label: "sum-field-gf2-general",
        title: "Sum-product, fields, GF(2) (general-field1)",
        table: Table::Rings,
        applies: Applies::Odd,
        mult: |n| (n - 1) * n / 2,
        doub: zero,
        add: |n| (3 * n - 5) * n / 2,
        total: |n| 2 * n * n - 3 * n,
        measurer: m(Id::GeneralField1, 2),
    },
    CountFormula {
        label: "direct",
        title: "Direct convolution",
        table: Table::Rings,
        applies: Applies::Any,
        mult: sq,
        doub: zero,
        add: sq_minus,
        total: two_sq_minus,
        measurer: m(Id::Direct, 2),
    },
    // ---- GF(2^m): redundant rings, variable n ----
    CountFormula {
        label: "rings-alg1",
        title: "Rings, alg1 (n)",
        table: Table::Binary,
        applies: Applies::Odd,
        mult: sq,
        doub: zero,
        add: sq_minus,
        total: two_sq_minus,
        measurer: m(Id::Alg1, 2),
    },
    CountFormula {
        label: "rings-alg2",
        title: "Rings, alg2 (n)",
        table: Table::Binary,
        applies: Applies::Odd,
        mult: tri,
        doub: zero,
        add: |n| (3 * n * n - n) / 2 - 1,
        total: |n| 2 * n * n - 1,
        measurer: m(Id::Alg2Ring, 2),
    },
    CountFormula {
        label: "rings-redundant",
        title: "Rings, redundant convolution (n)",
        table: Table::Binary,
        applies: Applies::Any,
        mult: sq,
        doub: zero,
        add: sq_minus,
        total: two_sq_minus,
        measurer: m(Id::Direct, 2),
    },
    // ---- type I, variable m ----
    CountFormula {
        label: "onb1-alg1",
        title: "Type I, alg1 on n = m+1",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: |m| (m + 1) * (m + 1),
        doub: zero,
        add: |m| m * m + m,
        total: |m| 2 * m * m + 3 * m + 1,
        measurer: on_embedding(Id::Alg1),
    },
    CountFormula {
        label: "onb1-alg2",
        title: "Type I, alg2 field form on n = m+1",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: tri,
        doub: zero,
        add: |m| (3 * m * m + m - 2) / 2,
        total: |m| 2 * m * m + m - 1,
        measurer: on_embedding(Id::Alg2Field),
    },
    CountFormula {
        label: "onb1-product-pairs",
        title: "Type I, product pairs (onb1-eq24)",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: sq,
        doub: zero,
        add: |m| m * m - 1,
        total: |m| 2 * m * m - 1,
        measurer: m(Id::Onb1ProductPairs, 2),
    },
    CountFormula {
        label: "onb1-sum-products",
        title: "Type I, sum products (onb1-eq25)",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: tri,
        doub: zero,
        add: |m| (3 * m * m - m) / 2 - 1,
        total: |m| 2 * m * m - 1,
        measurer: m(Id::Onb1SumProducts, 2),
    },
    CountFormula {
        label: "onb1-prior-redundant",
        title: "Type I, prior redundant design",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: |m| m * m + m,
        doub: zero,
        add: |m| m * m + m,
        total: |m| 2 * m * m + 2 * m,
        measurer: None,
    },
    CountFormula {
        label: "onb1-prior-a",
        title: "Type I, prior design A",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: sq,
        doub: zero,
        add: |m| 2 * m * m - 2 * m,
        total: |m| 3 * m * m - 2 * m,
        measurer: None,
    },
    CountFormula {
        label: "onb1-prior-b",
        title: "Type I, prior design B",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: sq,
        doub: zero,
        add: |m| m * m - 1,
        total: |m| 2 * m * m - 1,
        measurer: None,
    },
    CountFormula {
        label: "onb1-prior-c",
        title: "Type I, prior design C",
        table: Table::Binary,
        applies: Applies::Onb(1),
        mult: tri,
        doub: zero,
        add: |m| (3 * m * m - m) / 2 - 1,
        total: |m| 2 * m * m - 1,
        measurer: None,
    },
    // ---- type II, variable m ----
    CountFormula {
        label: "onb2-alg1",
        title: "Type II, alg1",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: |m| 2 * m * m + m,
        doub: zero,
        add: |m| 2 * m * m,
        total: |m| 4 * m * m + m,
        measurer: None,
    },
    CountFormula {
        label: "onb2-folded",
        title: "Type II, folded alg2 lanes (onb2-simpli)",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: sq,
        doub: zero,
        add: |m| 3 * m * m - m,
        total: |m| 4 * m * m - m,
        measurer: m(Id::Onb2Folded, 2),
    },
    CountFormula {
        label: "onb2-product-pairs",
        title: "Type II, shared product pairs (onb2-eq29)",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: sq,
        doub: zero,
        add: |m| (3 * m * m - 3 * m) / 2,
        total: |m| (5 * m * m - 3 * m) / 2,
        measurer: m(Id::Onb2ProductPairs, 2),
    },
    CountFormula {
        label: "onb2-sum-products",
        title: "Type II, shared sum products (onb2-eq30)",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: tri,
        doub: zero,
        add: |m| 2 * m * m - 2 * m,
        total: |m| (5 * m * m - 3 * m) / 2,
        measurer: m(Id::Onb2SumProducts, 2),
    },
    CountFormula {
        label: "onb2-prior-redundant",
        title: "Type II, prior redundant design",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: sq,
        doub: zero,
        add: |m| 2 * m * m - m,
        total: |m| 3 * m * m - m,
        measurer: None,
    },
    CountFormula {
        label: "onb2-prior-a",
        title: "Type II, prior design A",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: sq,
        doub: zero,
        add: |m| 2 * m * m - 2 * m,
        total: |m| 3 * m * m - 2 * m,
        measurer: None,
    },
    CountFormula {
        label: "onb2-prior-b",
        title: "Type II, prior design B",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: sq,
        doub: zero,
        add: |m| (3 * m * m - 3 * m) / 2,
        total: |m| (5 * m * m - 3 * m) / 2,
        measurer: None,
    },
    CountFormula {
        label: "onb2-prior-c",
        title: "Type II, prior design C",
        table: Table::Binary,
        applies: Applies::Onb(2),
        mult: tri,
        doub: zero,
        add: |m| 2 * m * m - 2 * m,
        total: |m| (5 * m * m - 3 * m) / 2,
        measurer: None,
    },
];

/// All rows of both tables.
pub fn rows() -> &'static [CountFormula] {
    ROWS
}

/// The rows of one table, in display order.
pub fn table_rows(which: Table) -> impl Iterator<Item = &'static CountFormula> {
    ROWS.iter().filter(move |r| r.table == which)
}

/// Looks a row up by its label.
pub fn row(label: &str) -> Option<&'static CountFormula> {
    ROWS.iter().find(|r| r.label == label)
}

/// Evaluates a row's formulas at `x` (which must be at least 2).
pub fn expected_counts(row: &CountFormula, x: u64) -> OpCount {
    OpCount::from_parts((row.mult)(x), (row.doub)(x), (row.add)(x))
}

/// Number of random input pairs used to confirm that counts do not depend
/// on the operands.
pub const MEASURE_PAIRS: usize = 3;

/// Runs a multiplier on [`MEASURE_PAIRS`] random operand pairs with fresh
/// counters and returns the common count. `size` is `n` for cyclotomic
/// multipliers and `m` for normal-basis ones.
pub fn measure(id: MultiplierId, p: u32, size: usize) -> Result<OpCount> {
    let unsupported =
        |e: Error| Error::UnsupportedCombination(format!("{id} with p = {p}, size {size}: {e}"));
    let field = GroundField::new(p).map_err(unsupported)?;
    let mut rng = StdRng::seed_from_u64(((p as u64) << 32) ^ size as u64);
    let mut counts = Vec::with_capacity(MEASURE_PAIRS);
    match id.domain() {
        Domain::Cyclotomic { odd_only } => {
            if size < 2 || (odd_only && size.is_multiple_of(2)) {
                return Err(unsupported(if size < 2 {
                    Error::DimensionTooSmall(size)
                } else {
                    Error::OddDimensionRequired(size)
                }));
            }
            for _ in 0..MEASURE_PAIRS {
                let a = random_cyclo(&mut rng, field, size);
                let b = random_cyclo(&mut rng, field, size);
                let mut ctx = OpCount::new();
                id.mul_cyclo(&a, &b, &mut ctx).map_err(unsupported)?;
                counts.push(ctx);
            }
        }
        Domain::NormalBasis { k } => {
            let params = u32::try_from(size)
                .map_err(|_| Error::TooLarge { p, n: size })
                .and_then(|m| GaussParams::new(m, k, p))
                .map_err(unsupported)?;
            for _ in 0..MEASURE_PAIRS {
                let a = random_nb(&mut rng, params);
                let b = random_nb(&mut rng, params);
                let mut ctx = OpCount::new();
                id.mul_onb(&a, &b, &mut ctx).map_err(unsupported)?;
                counts.push(ctx);
            }
        }
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InputDependentCount(format!(
            "{id} at size {size}: {}",
            counts
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" / ")
        )));
    }
    Ok(counts[0])
}

/// Uniformly random cyclotomic vector.
pub fn random_cyclo<R: Rng>(rng: &mut R, field: GroundField, n: usize) -> CycloElement {
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.p() as u64)).collect();
    CycloElement::from_values(field, &values).expect("values are reduced")
}

/// Uniformly random normal-basis vector.
pub fn random_nb<R: Rng>(rng: &mut R, params: GaussParams) -> NormalBasisElement {
    let q = params.q() as u64;
    let values: Vec<u64> = (0..params.m()).map(|_| rng.gen_range(0..q)).collect();
    NormalBasisElement::from_values(params, &values).expect("values are reduced")
}

/// Measures a row at `x`, returning `None` for expected-only rows.
pub fn measure_row(row: &CountFormula, x: u64) -> Option<Result<OpCount>> {
    let me = row.measurer?;
    let size = if me.embed_onb1 { x + 1 } else { x } as usize;
    Some(measure(me.id, me.p, size))
}

/// One `(row, size)` line of a comparison report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub row_label: &'static str,
    pub title: &'static str,
    pub size: u64,
    pub expected: OpCount,
    pub measured: Option<OpCount>,
    /// `None` for expected-only rows.
    pub matched: Option<bool>,
    /// Set when a measurement was attempted but failed.
    pub error: Option<String>,
}

/// A rendered comparison of closed forms against measurements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub table: Table,
    pub records: Vec<Record>,
}

impl Report {
    /// True when no measured record disagrees with its formula.
    pub fn all_match(&self) -> bool {
        self.records.iter().all(|r| r.matched != Some(false))
    }

    /// One `key=value` record per line.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let e = r.expected;
            let _ = write!(
                out,
                "table={} row_label={} size={} expected.mult={} expected.doub={} expected.add={} expected.total={}",
                self.table.as_str(),
                r.row_label,
                r.size,
                e.mult,
                e.doub,
                e.add,
                e.total()
            );
            match r.measured {
                Some(mc) => {
                    let _ = write!(
                        out,
                        " measured.mult={} measured.doub={} measured.add={} measured.total={}",
                        mc.mult,
                        mc.doub,
                        mc.add,
                        mc.total()
                    );
                }
                None => out.push_str(" measured=null"),
            }
            match r.matched {
                Some(b) => {
                    let _ = write!(out, " match={b}");
                }
                None => out.push_str(" match=null"),
            }
            out.push('\n');
        }
        out
    }

    /// Aligned table for reading in a terminal.
    pub fn to_human(&self) -> String {
        let width = self
            .records
            .iter()
            .map(|r| r.title.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>4}  {:>21}  {:>21}  status",
            "row", "size", "expected m/d/a (tot)", "measured m/d/a (tot)"
        );
        for r in &self.records {
            let cell = |c: OpCount| format!("{}/{}/{} ({})", c.mult, c.doub, c.add, c.total());
            let measured = r.measured.map(cell).unwrap_or_else(|| "-".into());
            let status = match (r.matched, &r.error) {
                (Some(true), _) => "MATCH".to_string(),
                (Some(false), Some(err)) => format!("ERROR {err}"),
                (Some(false), None) => "MISMATCH".to_string(),
                (None, _) => "expected only".to_string(),
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:>4}  {:>21}  {:>21}  {}",
                r.title,
                r.size,
                cell(r.expected),
                measured,
                status
            );
        }
        out
    }
}

/// Builds the comparison for every row of `which` at every applicable size.
pub fn render_table(which: Table, sizes: &[u64]) -> Report {
    let mut records = Vec::new();
    for row in table_rows(which) {
        for &x in sizes {
            if !row.applies_to(x) {
                continue;
            }
            let expected = expected_counts(row, x);
            let (measured, matched, error) = match measure_row(row, x) {
                None => (None, None, None),
                Some(Ok(c)) => (Some(c), Some(c == expected), None),
                Some(Err(e)) => (None, Some(false), Some(e.to_string())),
            };
            records.push(Record {
                row_label: row.label,
                title: row.title,
                size: x,
                expected,
                measured,
                matched,
                error,
            });
        }
    }
    Report {
        table: which,
        records,
    }
}
