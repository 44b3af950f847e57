//! Self-check sweeps over the multipliers.
//!
//! | suite | property |
//! |---|---|
//! | ring-equivalence | exact multipliers agree with the direct convolution |
//! | field-constant-difference | field multipliers differ from it by a constant vector |
//! | oracle-homomorphism | evaluation at β turns every product into a product in GF(p^d) |
//! | onb-end-to-end | normal-basis multipliers agree with embed, convolve, extract |
//! | counter-exactness | measured operation counts equal the closed forms |

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algo::{Domain, MultiplierId};
use crate::complexity::{render_table, Table};
use crate::cyclo::{fields_equal, AlgebraKind, CycloElement};
use crate::error::{Error, Result};
use crate::gauss::{embed, onb_oracle_product, GaussParams, NormalBasisElement};
use crate::groundfield::{GroundField, OpCount};
use crate::multiply::mul_direct;
use crate::oracle::CyclotomicOracle;

/// Exhaustive sweeps are used only while `p^(2·dim)` stays at or below this.
pub const EXHAUSTIVE_PAIR_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub p: u32,
    pub max_n: usize,
    /// Largest normal-basis dimension checked; derived from `max_n` if unset.
    pub max_m: Option<usize>,
    pub exhaustive: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p: 2,
            max_n: 9,
            max_m: None,
            exhaustive: false,
            samples: 200,
            seed: 1,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    /// Sizes skipped because the oracle or a basis was unavailable.
    pub skipped: Vec<String>,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks)", self.name, self.checked)?;
        if !self.skipped.is_empty() {
            write!(f, " skipped: {}", self.skipped.join(", "))?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Runs every suite. Errors only on invalid configuration.
pub fn run_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let field = GroundField::new(cfg.p)?;
    if cfg.max_n < 2 {
        return Err(Error::DimensionTooSmall(cfg.max_n));
    }
    Ok(VerifyReport {
        suites: vec![
            ring_equivalence(field, cfg),
            field_difference(field, cfg),
            oracle_homomorphism(field, cfg),
            onb_end_to_end(field, cfg),
            counter_exactness(cfg),
        ],
    })
}

/// Calls `check` on operand pairs of dimension `dim`: all of them when
/// exhaustive and small enough, otherwise `samples` random ones. Stops at
/// the first counterexample.
fn for_pairs(
    p: u32,
    dim: usize,
    exhaustive: bool,
    samples: usize,
    rng: &mut StdRng,
    mut check: impl FnMut(&[u64], &[u64]) -> Option<String>,
) -> (u64, Option<String>) {
    let total = (p as u64).checked_pow(dim as u32);
    let pairs_total = total.and_then(|t| t.checked_mul(t));
    let mut checked = 0;
    if exhaustive && pairs_total.is_some_and(|t| t <= EXHAUSTIVE_PAIR_CAP) {
        let total = total.unwrap();
        for ia in 0..total {
            let a = digits(ia, p, dim);
            for ib in 0..total {
                checked += 1;
                if let Some(c) = check(&a, &digits(ib, p, dim)) {
                    return (checked, Some(c));
                }
            }
        }
    } else {
        for _ in 0..samples {
            let a: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p as u64)).collect();
            let b: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p as u64)).collect();
            checked += 1;
            if let Some(c) = check(&a, &b) {
                return (checked, Some(c));
            }
        }
    }
    (checked, None)
}

fn digits(mut index: u64, p: u32, dim: usize) -> Vec<u64> {
    (0..dim)
        .map(|_| {
            let d = index % p as u64;
            index /= p as u64;
            d
        })
        .collect()
}

fn applies(id: MultiplierId, n: usize) -> bool {
    match id.domain() {
        Domain::Cyclotomic { odd_only } => !odd_only || n % 2 == 1,
        Domain::NormalBasis { .. } => false,
    }
}

fn cyclo_ids(kind: AlgebraKind) -> impl Iterator<Item = MultiplierId> {
    MultiplierId::ALL
        .into_iter()
        .filter(move |&id| id != MultiplierId::Direct && id.kind() == kind)
        .filter(|id| matches!(id.domain(), Domain::Cyclotomic { .. }))
}

fn show(v: &CycloElement) -> String {
    v.to_string()
}

fn describe(
    id: MultiplierId,
    field: GroundField,
    a: &CycloElement,
    b: &CycloElement,
    expected: &str,
    got: &str,
) -> String {
    format!(
        "{id} p={} n={} a={} b={} expected={expected} got={got}",
        field.p(),
        a.n(),
        show(a),
        show(b)
    )
}

fn elements(field: GroundField, a: &[u64], b: &[u64]) -> (CycloElement, CycloElement) {
    (
        CycloElement::from_values(field, a).expect("reduced"),
        CycloElement::from_values(field, b).expect("reduced"),
    )
}

fn ring_equivalence(field: GroundField, cfg: &VerifyConfig) -> SuiteResult {
    sweep_cyclo(field, cfg, "ring-equivalence", AlgebraKind::Ring)
}

fn field_difference(field: GroundField, cfg: &VerifyConfig) -> SuiteResult {
    sweep_cyclo(field, cfg, "field-constant-difference", AlgebraKind::Field)
}

fn sweep_cyclo(field: GroundField, cfg: &VerifyConfig, name: &'static str, kind: AlgebraKind) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut result = SuiteResult {
        name,
        checked: 0,
        skipped: Vec::new(),
        counterexample: None,
    };
    for n in 2..=cfg.max_n {
        let (checked, bad) = for_pairs(field.p(), n, cfg.exhaustive, cfg.samples, &mut rng, |av, bv| {
            let (a, b) = elements(field, av, bv);
            let expected = mul_direct(&a, &b, &mut OpCount::new()).expect("compatible");
            for id in cyclo_ids(kind).filter(|&id| applies(id, n)) {
                let got = match id.mul_cyclo(&a, &b, &mut OpCount::new()) {
                    Ok(out) => out.product,
                    Err(e) => return Some(describe(id, field, &a, &b, &show(&expected), &e.to_string())),
                };
                let ok = match kind {
                    AlgebraKind::Ring => got == expected,
                    AlgebraKind::Field => fields_equal(&got, &expected).unwrap_or(false),
                };
                if !ok {
                    return Some(describe(id, field, &a, &b, &show(&expected), &show(&got)));
                }
            }
            None
        });
        result.checked += checked;
        if bad.is_some() {
            result.counterexample = bad;
            break;
        }
    }
    result
}

fn oracle_homomorphism(field: GroundField, cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    let mut result = SuiteResult {
        name: "oracle-homomorphism",
        checked: 0,
        skipped: Vec::new(),
        counterexample: None,
    };
    for n in 2..=cfg.max_n {
        let oracle = match CyclotomicOracle::new(field.p(), n as u32) {
            Ok(o) => o,
            Err(e) => {
                result.skipped.push(format!("n={n} ({e})"));
                continue;
            }
        };
        // Evaluation is far costlier than the multipliers, so this suite
        // always samples.
        let (checked, bad) = for_pairs(field.p(), n, false, cfg.samples, &mut rng, |av, bv| {
            let (a, b) = elements(field, av, bv);
            let ids = MultiplierId::ALL.into_iter().filter(|&id| applies(id, n));
            for id in ids {
                let got = match id.mul_cyclo(&a, &b, &mut OpCount::new()) {
                    Ok(out) => out.product,
                    Err(e) => return Some(describe(id, field, &a, &b, "a product", &e.to_string())),
                };
                match oracle.is_product(&a, &b, &got) {
                    Ok(true) => {}
                    Ok(false) => {
                        return Some(describe(id, field, &a, &b, "eval(a)·eval(b)", &show(&got)));
                    }
                    Err(e) => return Some(describe(id, field, &a, &b, "eval(a)·eval(b)", &e.to_string())),
                }
            }
            None
        });
        result.checked += checked;
        if bad.is_some() {
            result.counterexample = bad;
            break;
        }
    }
    result
}

fn onb_end_to_end(field: GroundField, cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x51ed_270b);
    let mut result = SuiteResult {
        name: "onb-end-to-end",
        checked: 0,
        skipped: Vec::new(),
        counterexample: None,
    };
    let q = field.p();
    for k in [1u32, 2] {
        let max_m = cfg.max_m.unwrap_or((cfg.max_n - 1) / k as usize);
        let ids: Vec<MultiplierId> = MultiplierId::ALL
            .into_iter()
            .filter(|id| id.domain() == Domain::NormalBasis { k })
            .collect();
        for m in 2..=max_m {
            let params = match GaussParams::new(m as u32, k, q) {
                Ok(p) => p,
                Err(Error::OracleUnavailable { .. }) => {
                    result.skipped.push(format!("m={m} k={k} (oracle unavailable)"));
                    continue;
                }
                Err(_) => continue,
            };
            let oracle = match CyclotomicOracle::new(q, params.n()) {
                Ok(o) => o,
                Err(e) => {
                    result.skipped.push(format!("m={m} k={k} ({e})"));
                    continue;
                }
            };
            let (checked, bad) = for_pairs(q, m, cfg.exhaustive, cfg.samples, &mut rng, |av, bv| {
                let a = NormalBasisElement::from_values(params, av).expect("reduced");
                let b = NormalBasisElement::from_values(params, bv).expect("reduced");
                let expected = onb_oracle_product(&a, &b).expect("valid basis");
                let ctx_desc = |id: MultiplierId, got: &str| {
                    format!("{id} q={q} m={m} a={a} b={b} expected={expected} got={got}")
                };
                for &id in &ids {
                    let got = match id.mul_onb(&a, &b, &mut OpCount::new()) {
                        Ok(c) => c,
                        Err(e) => return Some(ctx_desc(id, &e.to_string())),
                    };
                    if got != expected {
                        return Some(ctx_desc(id, &got.to_string()));
                    }
                    let (ea, eb, ec) = (embed(&a), embed(&b), embed(&got));
                    let homomorphic = match (ea, eb, ec) {
                        (Ok(ea), Ok(eb), Ok(ec)) => oracle.is_product(&ea, &eb, &ec).unwrap_or(false),
                        _ => false,
                    };
                    if !homomorphic {
                        return Some(ctx_desc(id, &format!("{got} (not a product at β)")));
                    }
                }
                None
            });
            result.checked += checked;
            if bad.is_some() {
                result.counterexample = bad;
                return result;
            }
        }
    }
    result
}

fn counter_exactness(cfg: &VerifyConfig) -> SuiteResult {
    let mut result = SuiteResult {
        name: "counter-exactness",
        checked: 0,
        skipped: Vec::new(),
        counterexample: None,
    };
    let sizes: Vec<u64> = (2..=cfg.max_n as u64).collect();
    for table in [Table::Rings, Table::Binary] {
        let report = render_table(table, &sizes);
        for r in report.records.iter().filter(|r| r.matched.is_some()) {
            result.checked += 1;
            if r.matched == Some(false) && result.counterexample.is_none() {
                let got = match (&r.measured, &r.error) {
                    (Some(c), _) => c.to_string(),
                    (None, Some(e)) => e.clone(),
                    (None, None) => "nothing".into(),
                };
                result.counterexample = Some(format!(
                    "{} size={} expected={} got={got}",
                    r.row_label, r.size, r.expected
                ));
            }
        }
    }
    result
}
