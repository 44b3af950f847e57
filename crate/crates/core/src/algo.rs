//! Named multipliers, addressable by a stable string id.

use std::fmt;
use std::str::FromStr;

use crate::cyclo::{AlgebraKind, CycloElement};
use crate::error::{Error, Result};
use crate::gauss::{mul_onb1, mul_onb2, NormalBasisElement, Onb1Variant, Onb2Variant};
use crate::groundfield::OpCount;
use crate::multiply::{mul_alg1, mul_alg2, mul_direct, mul_general, GeneralVariant, SqrtProduct};

/// Every multiplier the crate provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultiplierId {
    Direct,
    Alg1,
    Alg2Ring,
    Alg2Field,
    GeneralRing0,
    GeneralRing1,
    GeneralField1,
    Onb1ProductPairs,
    Onb1SumProducts,
    Onb2Folded,
    Onb2ProductPairs,
    Onb2SumProducts,
}

/// What a multiplier operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// n-coordinate cyclotomic vectors; `odd_only` for the vector algorithms.
    Cyclotomic { odd_only: bool },
    /// m-coordinate normal-basis vectors of the given Gauss period type.
    NormalBasis { k: u32 },
}

/// Result of a cyclotomic multiplication; `sqrt` is present for the
/// lane-permuting algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloOutput {
    pub product: CycloElement,
    pub sqrt: Option<CycloElement>,
}

impl From<SqrtProduct> for CycloOutput {
    fn from(sp: SqrtProduct) -> Self {
        CycloOutput {
            product: sp.product,
            sqrt: Some(sp.sqrt),
        }
    }
}

impl MultiplierId {
    pub const ALL: [MultiplierId; 12] = [
        MultiplierId::Direct,
        MultiplierId::Alg1,
        MultiplierId::Alg2Ring,
        MultiplierId::Alg2Field,
        MultiplierId::GeneralRing0,
        MultiplierId::GeneralRing1,
        MultiplierId::GeneralField1,
        MultiplierId::Onb1ProductPairs,
        MultiplierId::Onb1SumProducts,
        MultiplierId::Onb2Folded,
        MultiplierId::Onb2ProductPairs,
        MultiplierId::Onb2SumProducts,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MultiplierId::Direct => "direct",
            MultiplierId::Alg1 => "alg1",
            MultiplierId::Alg2Ring => "alg2-ring",
            MultiplierId::Alg2Field => "alg2-field",
            MultiplierId::GeneralRing0 => "general-ring0",
            MultiplierId::GeneralRing1 => "general-ring1",
            MultiplierId::GeneralField1 => "general-field1",
            MultiplierId::Onb1ProductPairs => "onb1-eq24",
            MultiplierId::Onb1SumProducts => "onb1-eq25",
            MultiplierId::Onb2Folded => "onb2-simpli",
            MultiplierId::Onb2ProductPairs => "onb2-eq29",
            MultiplierId::Onb2SumProducts => "onb2-eq30",
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            MultiplierId::Direct
            | MultiplierId::GeneralRing0
            | MultiplierId::GeneralRing1
            | MultiplierId::GeneralField1 => Domain::Cyclotomic { odd_only: false },
            MultiplierId::Alg1 | MultiplierId::Alg2Ring | MultiplierId::Alg2Field => {
                Domain::Cyclotomic { odd_only: true }
            }
            MultiplierId::Onb1ProductPairs | MultiplierId::Onb1SumProducts => Domain::NormalBasis { k: 1 },
            MultiplierId::Onb2Folded | MultiplierId::Onb2ProductPairs | MultiplierId::Onb2SumProducts => {
                Domain::NormalBasis { k: 2 }
            }
        }
    }

    /// Whether the product is exact in the ring, as opposed to exact only
    /// up to a multiple of the all-ones vector.
    pub fn kind(self) -> AlgebraKind {
        match self {
            MultiplierId::Alg2Field | MultiplierId::GeneralField1 => AlgebraKind::Field,
            _ => AlgebraKind::Ring,
        }
    }

    /// Runs a cyclotomic multiplier.
    pub fn mul_cyclo(self, a: &CycloElement, b: &CycloElement, ctx: &mut OpCount) -> Result<CycloOutput> {
        let plain = |product| CycloOutput { product, sqrt: None };
        match self {
            MultiplierId::Direct => mul_direct(a, b, ctx).map(plain),
            MultiplierId::Alg1 => mul_alg1(a, b, ctx).map(Into::into),
            MultiplierId::Alg2Ring => mul_alg2(a, b, AlgebraKind::Ring, ctx).map(Into::into),
            MultiplierId::Alg2Field => mul_alg2(a, b, AlgebraKind::Field, ctx).map(Into::into),
            MultiplierId::GeneralRing0 => mul_general(a, b, GeneralVariant::Ring0, ctx).map(plain),
            MultiplierId::GeneralRing1 => mul_general(a, b, GeneralVariant::Ring1, ctx).map(plain),
            MultiplierId::GeneralField1 => mul_general(a, b, GeneralVariant::Field1, ctx).map(plain),
            other => Err(Error::UnsupportedCombination(format!(
                "{other} multiplies normal-basis elements"
            ))),
        }
    }

    /// Runs a normal-basis multiplier.
    pub fn mul_onb(
        self,
        a: &NormalBasisElement,
        b: &NormalBasisElement,
        ctx: &mut OpCount,
    ) -> Result<NormalBasisElement> {
        match self {
            MultiplierId::Onb1ProductPairs => mul_onb1(a, b, Onb1Variant::ProductPairs, ctx),
            MultiplierId::Onb1SumProducts => mul_onb1(a, b, Onb1Variant::SumProducts, ctx),
            MultiplierId::Onb2Folded => mul_onb2(a, b, Onb2Variant::Folded, ctx),
            MultiplierId::Onb2ProductPairs => mul_onb2(a, b, Onb2Variant::ProductPairs, ctx),
            MultiplierId::Onb2SumProducts => mul_onb2(a, b, Onb2Variant::SumProducts, ctx),
            other => Err(Error::UnsupportedCombination(format!(
                "{other} multiplies cyclotomic vectors"
            ))),
        }
    }
}

impl fmt::Display for MultiplierId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MultiplierId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MultiplierId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = MultiplierId::ALL.iter().map(|id| id.as_str()).collect();
                Error::Parse(format!(
                    "unknown multiplier '{s}' (expected one of {})",
                    known.join(", ")
                ))
            })
    }
}
