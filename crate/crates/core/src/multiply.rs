//! Multipliers for cyclotomic rings and fields.
//!
//! All multipliers share one accumulation model: each output lane starts
//! empty, the first term placed in a lane is a move and every later term
//! costs one addition. The operation counts are therefore a function of the
//! schedule alone and never of the input values.
//!
//! * [`mul_direct`]: cyclic convolution `c_j = Σ a_i b_{j-i}`.
//! * [`mul_alg1`]: paired shift-multiply-accumulate, odd n, returns
//!   `D = sqrt(AB)` before the squaring permutation and `C = AB` after it.
//! * [`mul_alg2`]: sum-then-multiply form with roughly half the
//!   multiplications, odd n, ring or field semantics.
//! * [`mul_general`]: the same three formulas written for any n, with the
//!   extra half-period term needed when n is even.

use crate::cyclo::{sqrt_perm, AlgebraKind, CycloElement};
use crate::error::Result;
use crate::groundfield::{Coord, GroundField, OpCount};

/// Output of the odd-n vector algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtProduct {
    /// `D = sqrt(AB)`, the lanes before the final permutation.
    pub sqrt: CycloElement,
    /// `C = AB = sqrt_perm(D)`.
    pub product: CycloElement,
}

/// Formula selector for [`mul_general`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneralVariant {
    /// Symmetric split of the convolution, exact in rings and fields.
    Ring0,
    /// Sum-then-multiply form with the `x·Σβ^i` correction; exact.
    Ring1,
    /// Sum-then-multiply form without the correction; equal up to a
    /// multiple of the all-ones vector.
    Field1,
}

/// Per-lane accumulators. A lane's first term is stored for free.
pub(crate) struct Lanes {
    field: GroundField,
    slots: Vec<Option<Coord>>,
}

impl Lanes {
    pub(crate) fn new(field: GroundField, n: usize) -> Self {
        Lanes {
            field,
            slots: vec![None; n],
        }
    }

    #[inline]
    pub(crate) fn put(&mut self, lane: usize, term: Coord, ctx: &mut OpCount) {
        let slot = &mut self.slots[lane];
        *slot = Some(match *slot {
            None => term,
            Some(acc) => self.field.add(acc, term, ctx),
        });
    }

    pub(crate) fn into_coords(self) -> Vec<Coord> {
        self.slots.into_iter().map(|c| c.unwrap_or(Coord::ZERO)).collect()
    }
}

/// Index lanes read by cycle `j` of the vector algorithms: lane `i` reads
/// coordinates `i + j` and `i - j` (mod n). Both come from the same cyclic
/// rotation used on the operands.
pub fn paired_lanes(n: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    let idx: Vec<usize> = (0..n).collect();
    (rotate(&idx, j as i64), rotate(&idx, -(j as i64)))
}

fn rotate<T: Copy>(v: &[T], k: i64) -> Vec<T> {
    let n = v.len() as i64;
    (0..n).map(|i| v[(i + k).rem_euclid(n) as usize]).collect()
}

fn gather(coords: &[Coord], idx: &[usize]) -> Vec<Coord> {
    idx.iter().map(|&i| coords[i]).collect()
}

/// One cycle of the shift-and-accumulate loop, as seen by operand A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataflowRow {
    pub j: usize,
    /// Coordinate index feeding lane `i` from the left shift (`a_{i+j}`).
    pub plus: Vec<usize>,
    /// Coordinate index feeding lane `i` from the right shift (`a_{i-j}`).
    pub minus: Vec<usize>,
}

/// The data-flow of operand A through the `v = (n-1)/2` cycles of
/// [`mul_alg1`] and [`mul_alg2`].
pub fn alg_dataflow(n: usize) -> Vec<DataflowRow> {
    let v = (n.max(1) - 1) / 2;
    (1..=v)
        .map(|j| {
            let (plus, minus) = paired_lanes(n, j);
            DataflowRow { j, plus, minus }
        })
        .collect()
}

/// Direct cyclic convolution, `n^2` multiplications and `n(n-1)` additions.
pub fn mul_direct(a: &CycloElement, b: &CycloElement, ctx: &mut OpCount) -> Result<CycloElement> {
    a.check_compatible(b)?;
    let f = a.field();
    let n = a.n();
    let mut lanes = Lanes::new(f, n);
    for j in 0..n {
        for i in 0..n {
            let t = f.mul(a.coords()[i], b.at(j as i64 - i as i64), ctx);
            lanes.put(j, t, ctx);
        }
    }
    Ok(CycloElement::from_coords_unchecked(f, lanes.into_coords()))
}

fn hadamard(f: GroundField, a: &[Coord], b: &[Coord], ctx: &mut OpCount) -> Vec<Coord> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y, ctx)).collect()
}

/// `-Σ t_i`, with `len - 1` additions.
fn neg_sum(f: GroundField, terms: &[Coord], ctx: &mut OpCount) -> Coord {
    let mut it = terms.iter().copied();
    let first = it.next().unwrap_or(Coord::ZERO);
    f.neg(it.fold(first, |acc, t| f.add(acc, t, ctx)))
}

/// Odd-n multiplier with lanes
/// `d_i = a_i b_i + Σ_{j=1..v} (a_{i+j} b_{i-j} + b_{i+j} a_{i-j})`
/// and `c_{2i mod n} = d_i`.
///
/// Valid for rings and fields alike; `n^2` mult, `n(n-1)` add.
pub fn mul_alg1(a: &CycloElement, b: &CycloElement, ctx: &mut OpCount) -> Result<SqrtProduct> {
    a.check_compatible(b)?;
    a.require_odd()?;
    let f = a.field();
    let n = a.n();
    let (ac, bc) = (a.coords(), b.coords());

    let mut lanes = Lanes::new(f, n);
    for (i, t) in hadamard(f, ac, bc, ctx).into_iter().enumerate() {
        lanes.put(i, t, ctx);
    }
    for row in alg_dataflow(n) {
        let (a_plus, a_minus) = (gather(ac, &row.plus), gather(ac, &row.minus));
        let (b_plus, b_minus) = (gather(bc, &row.plus), gather(bc, &row.minus));
        for i in 0..n {
            let left = f.mul(a_plus[i], b_minus[i], ctx);
            let right = f.mul(b_plus[i], a_minus[i], ctx);
            let r = f.add(left, right, ctx);
            lanes.put(i, r, ctx);
        }
    }
    finish(f, lanes)
}

/// Odd-n multiplier with lanes
/// `d_i = x + 2 a_i b_i + Σ_{j=1..v} (a_{i+j} + a_{i-j})(b_{i+j} + b_{i-j})`,
/// `x = -Σ a_j b_j`, for [`AlgebraKind::Ring`]. [`AlgebraKind::Field`] drops
/// the `x` broadcast, so its product differs from the exact one by the
/// constant vector `-x`.
///
/// In characteristic 2 the doubled diagonal vanishes and is never
/// computed; for a field this also removes the diagonal products.
pub fn mul_alg2(
    a: &CycloElement,
    b: &CycloElement,
    kind: AlgebraKind,
    ctx: &mut OpCount,
) -> Result<SqrtProduct> {
    a.check_compatible(b)?;
    a.require_odd()?;
    let f = a.field();
    let n = a.n();
    let (ac, bc) = (a.coords(), b.coords());
    let ring = kind == AlgebraKind::Ring;
    let doubled = !f.is_binary();

    let mut lanes = Lanes::new(f, n);
    if ring || doubled {
        let diag = hadamard(f, ac, bc, ctx);
        let x = ring.then(|| neg_sum(f, &diag, ctx));
        if doubled {
            for (i, &e) in diag.iter().enumerate() {
                let t = f.double(e, ctx);
                lanes.put(i, t, ctx);
            }
        }
        if let Some(x) = x {
            for i in 0..n {
                lanes.put(i, x, ctx);
            }
        }
    }
    for row in alg_dataflow(n) {
        let (a_plus, a_minus) = (gather(ac, &row.plus), gather(ac, &row.minus));
        let (b_plus, b_minus) = (gather(bc, &row.plus), gather(bc, &row.minus));
        for i in 0..n {
            let sa = f.add(a_plus[i], a_minus[i], ctx);
            let sb = f.add(b_plus[i], b_minus[i], ctx);
            let r = f.mul(sa, sb, ctx);
            lanes.put(i, r, ctx);
        }
    }
    finish(f, lanes)
}

fn finish(f: GroundField, lanes: Lanes) -> Result<SqrtProduct> {
    let sqrt = CycloElement::from_coords_unchecked(f, lanes.into_coords());
    let product = sqrt_perm(&sqrt)?;
    Ok(SqrtProduct { sqrt, product })
}

/// Multiplication for any `n >= 2`, scattering each term to lane
/// `2i + j (mod n)`.
///
/// With `v = floor((n-1)/2)` and, for even n, `h = n/2`:
///
/// * `Ring0`: `Σ a_i b_i β^{2i} + Σ_i Σ_{j=1..v} (a_i b_{i+j} + a_{i+j} b_i) β^{2i+j} + V`,
///   `V = Σ_{i<h} (a_i b_{i+h} + a_{i+h} b_i) β^{2i+h}` for even n.
/// * `Ring1`: `x Σβ^i + 2 Σ a_i b_i β^{2i} + Σ_i Σ_j (a_i + a_{i+j})(b_i + b_{i+j}) β^{2i+j} + Z`,
///   `Z = Σ_{i<h} (a_i + a_{i+h})(b_i + b_{i+h}) β^{2i+h}` for even n.
/// * `Field1`: `Ring1` without the `x` term.
pub fn mul_general(
    a: &CycloElement,
    b: &CycloElement,
    variant: GeneralVariant,
    ctx: &mut OpCount,
) -> Result<CycloElement> {
    a.check_compatible(b)?;
    let f = a.field();
    let n = a.n();
    let v = (n - 1) / 2;
    let half = n.is_multiple_of(2).then_some(n / 2);
    let (ac, bc) = (a.coords(), b.coords());
    let mut lanes = Lanes::new(f, n);

    match variant {
        GeneralVariant::Ring0 => {
            for i in 0..n {
                let t = f.mul(ac[i], bc[i], ctx);
                lanes.put(2 * i % n, t, ctx);
            }
            let cross = |i: usize, k: usize, lanes: &mut Lanes, ctx: &mut OpCount| {
                let ik = (i + k) % n;
                let left = f.mul(ac[i], bc[ik], ctx);
                let right = f.mul(ac[ik], bc[i], ctx);
                let t = f.add(left, right, ctx);
                lanes.put((2 * i + k) % n, t, ctx);
            };
            for i in 0..n {
                for j in 1..=v {
                    cross(i, j, &mut lanes, ctx);
                }
            }
            if let Some(h) = half {
                for i in 0..h {
                    cross(i, h, &mut lanes, ctx);
                }
            }
        }
        GeneralVariant::Ring1 | GeneralVariant::Field1 => {
            let ring = variant == GeneralVariant::Ring1;
            let doubled = !f.is_binary();
            if ring || doubled {
                let diag = hadamard(f, ac, bc, ctx);
                let x = ring.then(|| neg_sum(f, &diag, ctx));
                if doubled {
                    for (i, &e) in diag.iter().enumerate() {
                        let t = f.double(e, ctx);
                        lanes.put(2 * i % n, t, ctx);
                    }
                }
                if let Some(x) = x {
                    for i in 0..n {
                        lanes.put(i, x, ctx);
                    }
                }
            }
            let sum_product = |i: usize, k: usize, lanes: &mut Lanes, ctx: &mut OpCount| {
                let ik = (i + k) % n;
                let sa = f.add(ac[i], ac[ik], ctx);
                let sb = f.add(bc[i], bc[ik], ctx);
                let t = f.mul(sa, sb, ctx);
                lanes.put((2 * i + k) % n, t, ctx);
            };
            for i in 0..n {
                for j in 1..=v {
                    sum_product(i, j, &mut lanes, ctx);
                }
            }
            if let Some(h) = half {
                for i in 0..h {
                    sum_product(i, h, &mut lanes, ctx);
                }
            }
        }
    }
    Ok(CycloElement::from_coords_unchecked(f, lanes.into_coords()))
}
