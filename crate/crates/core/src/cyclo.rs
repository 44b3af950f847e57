//! Elements of the cyclotomic ring GF(p)[x]/(x^n - 1) and of the
//! cyclotomic field GF(p)^(n), represented as coordinate vectors
//! `(a_0, ..., a_{n-1})` over the basis `1, β, ..., β^{n-1}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::groundfield::{Coord, GroundField, OpCount};

/// Whether the relation `1 + β + ... + β^{n-1} = 0` may be used.
///
/// `Ring` elements are compared coordinatewise. `Field` elements are
/// compared modulo the all-ones vector, see [`fields_equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Ring,
    Field,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    field: GroundField,
    coords: Vec<Coord>,
}

impl CycloElement {
    pub fn new(field: GroundField, coords: Vec<Coord>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        if let Some(bad) = coords.iter().find(|c| !field.contains(**c)) {
            return Err(Error::CoordOutOfRange {
                value: bad.value() as u64,
                p: field.p(),
            });
        }
        Ok(CycloElement { field, coords })
    }

    pub fn from_values(field: GroundField, values: &[u64]) -> Result<Self> {
        let coords = values
            .iter()
            .map(|&v| field.coord(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coords)
    }

    pub(crate) fn from_coords_unchecked(field: GroundField, coords: Vec<Coord>) -> Self {
        debug_assert!(coords.len() >= 2);
        CycloElement { field, coords }
    }

    pub fn zero(field: GroundField, n: usize) -> Result<Self> {
        Self::new(field, vec![Coord::ZERO; n])
    }

    /// `β^0`, the ring identity.
    pub fn one(field: GroundField, n: usize) -> Result<Self> {
        Self::monomial(field, n, 0)
    }

    /// `β^k` for `k` reduced modulo n.
    pub fn monomial(field: GroundField, n: usize, k: usize) -> Result<Self> {
        let mut coords = vec![Coord::ZERO; n];
        if n > 0 {
            coords[k % n] = Coord::ONE;
        }
        Self::new(field, coords)
    }

    /// `1 + β + ... + β^{n-1}`, which is zero in the cyclotomic field.
    pub fn all_ones(field: GroundField, n: usize) -> Result<Self> {
        Self::new(field, vec![Coord::ONE; n])
    }

    /// Decodes element number `index` of the `p^n` elements, coordinate 0
    /// being the least significant base-p digit.
    pub fn from_index(field: GroundField, n: usize, mut index: u64) -> Result<Self> {
        let p = field.p() as u64;
        let mut coords = Vec::with_capacity(n);
        for _ in 0..n {
            coords.push(field.coord(index % p)?);
            index /= p;
        }
        Self::new(field, coords)
    }

    #[inline]
    pub fn field(&self) -> GroundField {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn values(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Coordinate `i` with the index read modulo n (negative allowed).
    #[inline]
    pub fn at(&self, i: i64) -> Coord {
        let n = self.n() as i64;
        self.coords[i.rem_euclid(n) as usize]
    }

    pub(crate) fn check_compatible(&self, other: &CycloElement) -> Result<()> {
        if self.field != other.field || self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                p_left: self.field.p(),
                n_left: self.n(),
                p_right: other.field.p(),
                n_right: other.n(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_odd(&self) -> Result<()> {
        if self.n().is_multiple_of(2) {
            Err(Error::OddDimensionRequired(self.n()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_coords(&self.coords))
    }
}

/// Coordinatewise sum; counts n additions.
pub fn cy_add(a: &CycloElement, b: &CycloElement, ctx: &mut OpCount) -> Result<CycloElement> {
    a.check_compatible(b)?;
    let f = a.field;
    let coords = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(&x, &y)| f.add(x, y, ctx))
        .collect();
    Ok(CycloElement::from_coords_unchecked(f, coords))
}

/// Coordinatewise difference; counts n additions.
pub fn cy_sub(a: &CycloElement, b: &CycloElement, ctx: &mut OpCount) -> Result<CycloElement> {
    a.check_compatible(b)?;
    let f = a.field;
    let coords = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(&x, &y)| f.sub(x, y, ctx))
        .collect();
    Ok(CycloElement::from_coords_unchecked(f, coords))
}

/// Cyclic shift: `out[i] = a[(i + k) mod n]`. Uncounted.
pub fn cy_shift(a: &CycloElement, k: i64) -> CycloElement {
    let n = a.n();
    let coords = (0..n).map(|i| a.at(i as i64 + k)).collect();
    CycloElement::from_coords_unchecked(a.field, coords)
}

/// Output lane of the squaring permutation: input lane `i` lands at `2i mod n`.
pub fn sqrt_perm_lanes(n: usize) -> Vec<usize> {
    (0..n).map(|i| (2 * i) % n).collect()
}

/// Applies `c[2i mod n] = d[i]`, turning `D = sqrt(AB)` into `C = AB`.
pub fn sqrt_perm(d: &CycloElement) -> Result<CycloElement> {
    d.require_odd()?;
    let n = d.n();
    let mut coords = vec![Coord::ZERO; n];
    for (i, &x) in d.coords.iter().enumerate() {
        coords[(2 * i) % n] = x;
    }
    Ok(CycloElement::from_coords_unchecked(d.field, coords))
}

/// Inverse of [`sqrt_perm`]: `d[i] = c[2i mod n]`.
pub fn inverse_sqrt_perm(c: &CycloElement) -> Result<CycloElement> {
    c.require_odd()?;
    let n = c.n();
    let coords = (0..n).map(|i| c.coords[(2 * i) % n]).collect();
    Ok(CycloElement::from_coords_unchecked(c.field, coords))
}

/// Equality in the cyclotomic field: `a - b` is a constant vector.
pub fn fields_equal(a: &CycloElement, b: &CycloElement) -> Result<bool> {
    a.check_compatible(b)?;
    let f = a.field;
    let first = f.sub_uncounted(a.coords[0], b.coords[0]);
    Ok(a.coords
        .iter()
        .zip(&b.coords)
        .all(|(&x, &y)| f.sub_uncounted(x, y) == first))
}

/// Equality under the given semantics.
pub fn kind_equal(kind: AlgebraKind, a: &CycloElement, b: &CycloElement) -> Result<bool> {
    match kind {
        AlgebraKind::Ring => {
            a.check_compatible(b)?;
            Ok(a == b)
        }
        AlgebraKind::Field => fields_equal(a, b),
    }
}
