//! Optimal normal bases from Gauss periods of type (m, 1) and (m, 2).
//!
//! A Gauss period of type (m, k) over GF(q), with `n = mk + 1` prime and
//! `α` of order k in `Z_n^×`, is `γ = Σ_{i<k} β^{α^i}` for a primitive n-th
//! root of unity β. When its conjugates form a basis, field elements embed
//! into the n-dimensional cyclotomic field:
//!
//! * type I (`n = m + 1`): `(a_1..a_m) -> (0, a_1, ..., a_m)`;
//! * type II (`n = 2m + 1`): `(a_1..a_m) -> (0, a_1, ..., a_m, a_m, ..., a_1)`.
//!
//! Extraction subtracts the constant coordinate from the others, removing
//! any multiple of the all-ones vector.
//!
//! Type-I coordinates use the order `[β, β^2, ..., β^m]`, a permutation of
//! the Frobenius order `[β^{q^0}, ..., β^{q^{m-1}}]`; see
//! [`onb1_to_frobenius_order`].

use std::collections::HashMap;
use std::fmt;

use crate::cyclo::CycloElement;
use crate::error::{Error, Result};
use crate::groundfield::{is_prime, Coord, GroundField, OpCount};
use crate::multiply::Lanes;
use crate::oracle::verify_normal_basis;

/// Smallest `α` in `Z_n^×` of multiplicative order exactly `k` (n prime).
pub fn find_alpha(n: u32, k: u32) -> Result<u32> {
    if n < 2 || k == 0 || !(n - 1).is_multiple_of(k) {
        return Err(Error::NoSuchElement { n, k });
    }
    let n64 = n as u64;
    for a in 1..n as u64 {
        let mut x = a;
        let mut order = 1;
        while x != 1 && order <= k {
            x = x * a % n64;
            order += 1;
        }
        if x == 1 && order == k {
            return Ok(a as u32);
        }
    }
    Err(Error::NoSuchElement { n, k })
}

/// The fold `s(i)`: `i` for `0 <= i <= m`, `2m + 1 - i` above, with `i`
/// read modulo `2m + 1`.
pub fn s_fold(i: i64, m: usize) -> usize {
    let n = 2 * m as i64 + 1;
    let r = i.rem_euclid(n) as usize;
    if r <= m {
        r
    } else {
        2 * m + 1 - r
    }
}

/// Validated parameters of a Gauss period normal basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussParams {
    m: u32,
    k: u32,
    n: u32,
    alpha: u32,
    field: GroundField,
}

impl GaussParams {
    /// Accepts (m, k, q) only when the splitting-field rank check confirms
    /// that the Gauss period generates a normal basis of GF(q^m).
    pub fn new(m: u32, k: u32, q: u32) -> Result<Self> {
        let field = GroundField::new(q)?;
        let invalid = |reason: &str| Error::InvalidGaussParams {
            m,
            k,
            q,
            reason: reason.to_string(),
        };
        if m < 2 {
            return Err(invalid("m must be at least 2"));
        }
        if !(k == 1 || k == 2) {
            return Err(invalid("only types k = 1 and k = 2 are supported"));
        }
        let n = m * k + 1;
        if !is_prime(n as u64) {
            return Err(invalid(&format!("n = {n} is not prime")));
        }
        let alpha = find_alpha(n, k)?;
        if !verify_normal_basis(m, k, q)? {
            return Err(invalid("the Gauss period does not generate a normal basis"));
        }
        Ok(GaussParams {
            m,
            k,
            n,
            alpha,
            field,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn q(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    fn require_type(&self, k: u32) -> Result<()> {
        if self.k == k {
            Ok(())
        } else {
            Err(Error::WrongBasisType {
                expected: k,
                got: self.k,
            })
        }
    }
}

/// A GF(q^m) element as `m` normal-basis coordinates `a_1..a_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalBasisElement {
    params: GaussParams,
    coords: Vec<Coord>,
}

impl NormalBasisElement {
    pub fn new(params: GaussParams, coords: Vec<Coord>) -> Result<Self> {
        if coords.len() != params.m as usize {
            return Err(Error::DimensionMismatch {
                p_left: params.q(),
                n_left: params.m as usize,
                p_right: params.q(),
                n_right: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|c| !params.field.contains(**c)) {
            return Err(Error::CoordOutOfRange {
                value: bad.value() as u64,
                p: params.q(),
            });
        }
        Ok(NormalBasisElement { params, coords })
    }

    pub fn from_values(params: GaussParams, values: &[u64]) -> Result<Self> {
        let coords = values
            .iter()
            .map(|&v| params.field.coord(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, coords)
    }

    /// Element number `index` of the `q^m`, coordinate `a_1` least significant.
    pub fn from_index(params: GaussParams, mut index: u64) -> Result<Self> {
        let q = params.q() as u64;
        let values: Vec<u64> = (0..params.m)
            .map(|_| {
                let v = index % q;
                index /= q;
                v
            })
            .collect();
        Self::from_values(params, &values)
    }

    pub fn params(&self) -> &GaussParams {
        &self.params
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn values(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.value()).collect()
    }

    /// `a_i` for `1 <= i <= m`; `a_0` is zero.
    #[inline]
    fn a(&self, i: usize) -> Coord {
        if i == 0 {
            Coord::ZERO
        } else {
            self.coords[i - 1]
        }
    }

    fn check_compatible(&self, other: &NormalBasisElement) -> Result<()> {
        if self.params != other.params {
            return Err(Error::DimensionMismatch {
                p_left: self.params.q(),
                n_left: self.params.m as usize,
                p_right: other.params.q(),
                n_right: other.params.m as usize,
            });
        }
        Ok(())
    }
}

impl fmt::Display for NormalBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_coords(&self.coords))
    }
}

// ---------------------------------------------------------------------------
// conversion maps
// ---------------------------------------------------------------------------

/// `(a_1..a_m) -> (0, a_1, ..., a_m)`.
pub fn embed_onb1(a: &NormalBasisElement) -> Result<CycloElement> {
    a.params.require_type(1)?;
    let mut coords = Vec::with_capacity(a.coords.len() + 1);
    coords.push(Coord::ZERO);
    coords.extend_from_slice(&a.coords);
    Ok(CycloElement::from_coords_unchecked(a.params.field, coords))
}

/// `(c_0..c_m) -> (c_1 - c_0, ..., c_m - c_0)`; m additions.
pub fn extract_onb1(c: &CycloElement, params: &GaussParams, ctx: &mut OpCount) -> Result<NormalBasisElement> {
    params.require_type(1)?;
    check_embedding_dim(c, params)?;
    let f = params.field;
    let c0 = c.coords()[0];
    let coords = c.coords()[1..].iter().map(|&ci| f.sub(ci, c0, ctx)).collect();
    Ok(NormalBasisElement {
        params: *params,
        coords,
    })
}

/// `(a_1..a_m) -> (0, a_1, ..., a_m, a_m, ..., a_1)`.
pub fn embed_onb2(a: &NormalBasisElement) -> Result<CycloElement> {
    a.params.require_type(2)?;
    let m = a.coords.len();
    let coords = (0..2 * m + 1).map(|i| a.a(s_fold(i as i64, m))).collect();
    Ok(CycloElement::from_coords_unchecked(a.params.field, coords))
}

/// Folds a palindromic vector back: `(c_1 - c_0, ..., c_m - c_0)`; m additions.
pub fn extract_onb2(c: &CycloElement, params: &GaussParams, ctx: &mut OpCount) -> Result<NormalBasisElement> {
    params.require_type(2)?;
    check_embedding_dim(c, params)?;
    let n = c.n();
    let m = params.m as usize;
    for i in 1..=m {
        if c.coords()[i] != c.coords()[n - i] {
            return Err(Error::NotFoldable {
                index: i,
                mirror: n - i,
            });
        }
    }
    let f = params.field;
    let c0 = c.coords()[0];
    let coords = c.coords()[1..=m].iter().map(|&ci| f.sub(ci, c0, ctx)).collect();
    Ok(NormalBasisElement {
        params: *params,
        coords,
    })
}

fn check_embedding_dim(c: &CycloElement, params: &GaussParams) -> Result<()> {
    if c.n() != params.n as usize || c.field() != params.field {
        return Err(Error::DimensionMismatch {
            p_left: params.q(),
            n_left: params.n as usize,
            p_right: c.field().p(),
            n_right: c.n(),
        });
    }
    Ok(())
}

/// Embeds according to the basis type.
pub fn embed(a: &NormalBasisElement) -> Result<CycloElement> {
    match a.params.k {
        1 => embed_onb1(a),
        _ => embed_onb2(a),
    }
}

/// Extracts according to the basis type.
pub fn extract(c: &CycloElement, params: &GaussParams, ctx: &mut OpCount) -> Result<NormalBasisElement> {
    match params.k {
        1 => extract_onb1(c, params, ctx),
        _ => extract_onb2(c, params, ctx),
    }
}

/// Reorders type-I coordinates from `[β^1..β^m]` to `[β^{q^0}..β^{q^{m-1}}]`.
pub fn onb1_to_frobenius_order(a: &NormalBasisElement) -> Result<Vec<Coord>> {
    a.params.require_type(1)?;
    let (q, n) = (a.params.q() as u64, a.params.n as u64);
    let mut e = 1u64;
    let mut out = Vec::with_capacity(a.coords.len());
    for _ in 0..a.params.m {
        out.push(a.a(e as usize));
        e = e * q % n;
    }
    Ok(out)
}

/// Inverse of [`onb1_to_frobenius_order`].
pub fn onb1_from_frobenius_order(params: &GaussParams, coords: &[Coord]) -> Result<NormalBasisElement> {
    params.require_type(1)?;
    let (q, n) = (params.q() as u64, params.n as u64);
    let mut out = vec![Coord::ZERO; params.m as usize];
    let mut e = 1u64;
    for &c in coords {
        out[e as usize - 1] = c;
        e = e * q % n;
    }
    NormalBasisElement::new(*params, out)
}

// ---------------------------------------------------------------------------
// type-I multipliers
// ---------------------------------------------------------------------------

/// Type-I product formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Onb1Variant {
    /// Product-pair form: lane `i` collects
    /// `r + a_i b_i + Σ_j (a_{i+j} b_{i-j} + b_{i+j} a_{i-j})`,
    /// `r = -Σ_{j=1..v} (a_j b_{m+1-j} + b_j a_{m+1-j})`.
    ProductPairs,
    /// Sum-product form: lane `i` collects
    /// `t + 2 a_i b_i + a_{2i} b_{2i} + Σ_j (a_{i+j} + a_{i-j})(b_{i+j} + b_{i-j})`,
    /// `t = -Σ_{j=1..v} (a_j + a_{m+1-j})(b_j + b_{m+1-j})`.
    SumProducts,
}

/// Multiplication with a type-I optimal normal basis. Both variants skip
/// the `j` for which an index is `0` (one of `j = i`, `j = m + 1 - i`);
/// lane `i` is written to coordinate `2i mod (m + 1)`.
pub fn mul_onb1(
    a: &NormalBasisElement,
    b: &NormalBasisElement,
    variant: Onb1Variant,
    ctx: &mut OpCount,
) -> Result<NormalBasisElement> {
    a.check_compatible(b)?;
    a.params.require_type(1)?;
    let params = a.params;
    let f = params.field;
    let m = params.m as usize;
    let n = m + 1;
    let v = m / 2;
    let idx = |i: i64| i.rem_euclid(n as i64) as usize;

    let mut out = Lanes::new(f, m);
    match variant {
        Onb1Variant::ProductPairs => {
            let mut r_acc = Lanes::new(f, 1);
            for j in 1..=v {
                let left = f.mul(a.a(j), b.a(m + 1 - j), ctx);
                let right = f.mul(b.a(j), a.a(m + 1 - j), ctx);
                let t = f.add(left, right, ctx);
                r_acc.put(0, t, ctx);
            }
            let r = f.neg(r_acc.into_coords()[0]);
            for i in 1..=m {
                let lane = 2 * i % n - 1;
                out.put(lane, r, ctx);
                let d = f.mul(a.a(i), b.a(i), ctx);
                out.put(lane, d, ctx);
                for j in (1..=v).filter(|&j| j != i && j != m + 1 - i) {
                    let (hi, lo) = (idx((i + j) as i64), idx(i as i64 - j as i64));
                    let left = f.mul(a.a(hi), b.a(lo), ctx);
                    let right = f.mul(b.a(hi), a.a(lo), ctx);
                    let t = f.add(left, right, ctx);
                    out.put(lane, t, ctx);
                }
            }
        }
        Onb1Variant::SumProducts => {
            let diag: Vec<Coord> = (1..=m).map(|k| f.mul(a.a(k), b.a(k), ctx)).collect();
            let e = |k: usize| diag[k - 1];
            let mut t_acc = Lanes::new(f, 1);
            for j in 1..=v {
                let sa = f.add(a.a(j), a.a(m + 1 - j), ctx);
                let sb = f.add(b.a(j), b.a(m + 1 - j), ctx);
                let prod = f.mul(sa, sb, ctx);
                t_acc.put(0, prod, ctx);
            }
            let t = f.neg(t_acc.into_coords()[0]);
            for i in 1..=m {
                let lane = 2 * i % n - 1;
                out.put(lane, t, ctx);
                if !f.is_binary() {
                    let dbl = f.double(e(i), ctx);
                    out.put(lane, dbl, ctx);
                }
                out.put(lane, e(2 * i % n), ctx);
                for j in (1..=v).filter(|&j| j != i && j != m + 1 - i) {
                    let (hi, lo) = (idx((i + j) as i64), idx(i as i64 - j as i64));
                    let sa = f.add(a.a(hi), a.a(lo), ctx);
                    let sb = f.add(b.a(hi), b.a(lo), ctx);
                    let prod = f.mul(sa, sb, ctx);
                    out.put(lane, prod, ctx);
                }
            }
        }
    }
    NormalBasisElement::new(params, out.into_coords())
}

// ---------------------------------------------------------------------------
// type-II multipliers
// ---------------------------------------------------------------------------

/// Type-II product formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Onb2Variant {
    /// Folded sum-product lanes: lane `i` (0..=m) collects
    /// `2 a_i b_i + Σ_{j=1..m} (a_{s(i+j)} + a_{s(i-j)})(b_{s(i+j)} + b_{s(i-j)})`
    /// and lands on coordinate `s(2i)`.
    Folded,
    /// Product-pair form with each unordered pair product shared by the
    /// two lanes that use it, plus the correction `2y`, `y = -Σ a_j b_j`.
    ProductPairs,
    /// Sum-product form over the upper triangle of pairs, plus `4y`.
    SumProducts,
}

/// How a lane used the pair `(s(i+j), s(i-j))` in cycle `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairUse {
    /// A term computed for this lane alone.
    Computed,
    /// A term taken from the shared upper-triangle table.
    Shared,
    /// The pair contains index 0 and contributes nothing.
    Vanishing,
}

/// One entry of a type-II data-flow trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairStep {
    /// Lane index `i` (1..=m; 0 for the constant lane).
    pub lane: usize,
    pub j: usize,
    pub pair: (usize, usize),
    pub output: usize,
    pub usage: PairUse,
}

/// The folded pair grid of the type-II data-flow: `rows[j-1][i-1]` is
/// `(s(i+j), s(i-j))` for lanes `i = 1..=m`, and `outputs[i-1] = s(2i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSchedule {
    pub rows: Vec<Vec<(usize, usize)>>,
    pub outputs: Vec<usize>,
}

impl PairSchedule {
    pub fn new(m: usize) -> Self {
        let rows = (1..=m)
            .map(|j| (1..=m).map(|i| pair_at(i, j, m)).collect())
            .collect();
        let outputs = (1..=m).map(|i| s_fold(2 * i as i64, m)).collect();
        PairSchedule { rows, outputs }
    }

    /// Rebuilds the grid from a trace (entries for lanes 1..=m).
    pub fn from_trace(m: usize, trace: &[PairStep]) -> Self {
        let mut rows = vec![vec![(0, 0); m]; m];
        let mut outputs = vec![0; m];
        for step in trace.iter().filter(|s| s.lane >= 1) {
            rows[step.j - 1][step.lane - 1] = step.pair;
            outputs[step.lane - 1] = step.output;
        }
        PairSchedule { rows, outputs }
    }
}

fn pair_at(i: usize, j: usize, m: usize) -> (usize, usize) {
    (s_fold((i + j) as i64, m), s_fold(i as i64 - j as i64, m))
}

fn unordered(p: (usize, usize)) -> (usize, usize) {
    (p.0.min(p.1), p.0.max(p.1))
}

/// Multiplication with a type-II optimal normal basis.
pub fn mul_onb2(
    a: &NormalBasisElement,
    b: &NormalBasisElement,
    variant: Onb2Variant,
    ctx: &mut OpCount,
) -> Result<NormalBasisElement> {
    mul_onb2_inner(a, b, variant, ctx, None)
}

/// [`mul_onb2`] that also records which coordinate pairs each lane consumed.
pub fn mul_onb2_traced(
    a: &NormalBasisElement,
    b: &NormalBasisElement,
    variant: Onb2Variant,
    ctx: &mut OpCount,
    trace: &mut Vec<PairStep>,
) -> Result<NormalBasisElement> {
    mul_onb2_inner(a, b, variant, ctx, Some(trace))
}

fn mul_onb2_inner(
    a: &NormalBasisElement,
    b: &NormalBasisElement,
    variant: Onb2Variant,
    ctx: &mut OpCount,
    mut trace: Option<&mut Vec<PairStep>>,
) -> Result<NormalBasisElement> {
    a.check_compatible(b)?;
    a.params.require_type(2)?;
    let params = a.params;
    let f = params.field;
    let m = params.m as usize;
    let binary = f.is_binary();
    let mut record = |step: PairStep| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(step);
        }
    };

    match variant {
        Onb2Variant::Folded => {
            // Lane 0 is (a_j + a_j)(b_j + b_j) summed, identically zero in
            // characteristic 2; otherwise it is computed and subtracted.
            let first = if binary { 1 } else { 0 };
            let mut lanes = Lanes::new(f, m + 1);
            for i in first..=m {
                let out = s_fold(2 * i as i64, m);
                if !binary && i > 0 {
                    let d = f.mul(a.a(i), b.a(i), ctx);
                    let dbl = f.double(d, ctx);
                    lanes.put(out, dbl, ctx);
                }
                for j in 1..=m {
                    let (u, w) = pair_at(i, j, m);
                    let sa = f.add(a.a(u), a.a(w), ctx);
                    let sb = f.add(b.a(u), b.a(w), ctx);
                    let prod = f.mul(sa, sb, ctx);
                    lanes.put(out, prod, ctx);
                    record(PairStep {
                        lane: i,
                        j,
                        pair: (u, w),
                        output: out,
                        usage: PairUse::Computed,
                    });
                }
            }
            let c = lanes.into_coords();
            let coords = if binary {
                c[1..].to_vec()
            } else {
                c[1..].iter().map(|&ci| f.sub(ci, c[0], ctx)).collect()
            };
            NormalBasisElement::new(params, coords)
        }
        Onb2Variant::ProductPairs | Onb2Variant::SumProducts => {
            let sum_form = variant == Onb2Variant::SumProducts;
            let diag: Vec<Coord> = (1..=m).map(|k| f.mul(a.a(k), b.a(k), ctx)).collect();
            let e = |k: usize| diag[k - 1];

            // upper triangle, u < w, in row-major order
            let mut table: HashMap<(usize, usize), Coord> = HashMap::new();
            for u in 1..=m {
                for w in u + 1..=m {
                    let t = if sum_form {
                        let sa = f.add(a.a(u), a.a(w), ctx);
                        let sb = f.add(b.a(u), b.a(w), ctx);
                        f.mul(sa, sb, ctx)
                    } else {
                        let left = f.mul(a.a(u), b.a(w), ctx);
                        let right = f.mul(a.a(w), b.a(u), ctx);
                        f.add(left, right, ctx)
                    };
                    table.insert((u, w), t);
                }
            }

            let correction = if binary {
                None
            } else {
                let mut acc = Lanes::new(f, 1);
                for &d in &diag {
                    acc.put(0, d, ctx);
                }
                let y = f.neg(acc.into_coords()[0]);
                let y2 = f.double(y, ctx);
                Some(if sum_form { f.double(y2, ctx) } else { y2 })
            };

            let mut lanes = Lanes::new(f, m + 1);
            for i in 1..=m {
                let out = s_fold(2 * i as i64, m);
                if let Some(cy) = correction {
                    lanes.put(out, cy, ctx);
                }
                if sum_form {
                    if !binary {
                        let dbl = f.double(e(i), ctx);
                        lanes.put(out, dbl, ctx);
                    }
                    lanes.put(out, e(out), ctx);
                } else {
                    lanes.put(out, e(i), ctx);
                }
                for j in 1..=m {
                    let pair = pair_at(i, j, m);
                    let usage = if j == i {
                        PairUse::Vanishing
                    } else {
                        lanes.put(out, table[&unordered(pair)], ctx);
                        PairUse::Shared
                    };
                    record(PairStep {
                        lane: i,
                        j,
                        pair,
                        output: out,
                        usage,
                    });
                }
            }
            let c = lanes.into_coords();
            NormalBasisElement::new(params, c[1..].to_vec())
        }
    }
}

/// Dispatches on the basis type.
pub fn onb_oracle_product(a: &NormalBasisElement, b: &NormalBasisElement) -> Result<NormalBasisElement> {
    let mut scratch = OpCount::new();
    let prod = crate::multiply::mul_direct(&embed(a)?, &embed(b)?, &mut scratch)?;
    extract(&prod, &a.params, &mut scratch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiply::mul_direct;

    fn params(m: u32, k: u32, q: u32) -> GaussParams {
        GaussParams::new(m, k, q).unwrap()
    }

    fn nb(p: &GaussParams, v: &[u64]) -> NormalBasisElement {
        NormalBasisElement::from_values(*p, v).unwrap()
    }

    fn cy(p: u32, v: &[u64]) -> CycloElement {
        CycloElement::from_values(GroundField::new(p).unwrap(), v).unwrap()
    }

    /// Order of `a` mod n by exhaustive multiplication.
    fn brute_order(a: u32, n: u32) -> u32 {
        let mut x = a % n;
        let mut k = 1;
        while x != 1 {
            x = x * a % n;
            k += 1;
        }
        k
    }

    #[test]
    fn find_alpha_examples() {
        assert_eq!(find_alpha(5, 1), Ok(1));
        let a7 = (1..7).find(|&a| brute_order(a, 7) == 2).unwrap();
        assert_eq!(a7, 6);
        assert_eq!(find_alpha(7, 2), Ok(a7));
        let a11 = (1..11).find(|&a| brute_order(a, 11) == 2).unwrap();
        assert_eq!(find_alpha(11, 2), Ok(a11));
        assert_eq!(a11, 10);
        assert_eq!(find_alpha(7, 4), Err(Error::NoSuchElement { n: 7, k: 4 }));
        assert_eq!(find_alpha(7, 3), Ok(2));
    }

    #[test]
    fn params_validation() {
        let p = params(4, 1, 2);
        assert_eq!((p.n(), p.alpha()), (5, 1));
        let p = params(3, 2, 2);
        assert_eq!((p.n(), p.alpha()), (7, 6));
        assert!(matches!(
            GaussParams::new(3, 1, 2),
            Err(Error::InvalidGaussParams { .. })
        ));
        assert!(matches!(
            GaussParams::new(6, 1, 2),
            Err(Error::InvalidGaussParams { .. })
        ));
        assert!(matches!(
            GaussParams::new(2, 3, 2),
            Err(Error::InvalidGaussParams { .. })
        ));
        assert!(matches!(GaussParams::new(4, 1, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn s_fold_examples() {
        assert_eq!(s_fold(4, 3), 3);
        assert_eq!(s_fold(0, 3), 0);
        assert_eq!(s_fold(6, 3), 1);
        assert_eq!(s_fold(-1, 3), 1);
        for m in 1..10usize {
            for i in 1..=2 * m as i64 {
                assert_eq!(s_fold(i, m), s_fold(2 * m as i64 + 1 - i, m));
            }
        }
    }

    #[test]
    fn onb1_maps() {
        let p4 = params(4, 1, 2);
        let a = nb(&p4, &[1, 0, 1, 1]);
        assert_eq!(embed_onb1(&a).unwrap(), cy(2, &[0, 1, 0, 1, 1]));
        assert_eq!(
            embed_onb1(&nb(&p4, &[1, 0, 0, 0])).unwrap(),
            cy(2, &[0, 1, 0, 0, 0])
        );
        let p2 = params(2, 1, 2);
        assert_eq!(embed_onb1(&nb(&p2, &[0, 0])).unwrap(), cy(2, &[0, 0, 0]));

        let mut ctx = OpCount::new();
        let back = extract_onb1(&cy(2, &[1, 1, 0, 1, 0]), &p4, &mut ctx).unwrap();
        assert_eq!(back.values(), vec![0, 1, 0, 1]);
        assert_eq!(ctx.add, 4);
        assert_eq!(extract_onb1(&embed_onb1(&a).unwrap(), &p4, &mut ctx).unwrap(), a);

        let p3 = params(2, 2, 3);
        assert!(matches!(
            embed_onb1(&nb(&p3, &[1, 2])),
            Err(Error::WrongBasisType { .. })
        ));
        let p31 = params(4, 1, 3);
        let c = cy(3, &[1, 2, 0, 1, 1]);
        assert_eq!(
            extract_onb1(&c, &p31, &mut ctx).unwrap().values(),
            vec![1, 2, 0, 0]
        );
    }

    #[test]
    fn onb1_extract_small_ternary() {
        // (1,2,0) over GF(3) -> (2-1, 0-1) = (1, 2)
        let f = GroundField::new(3).unwrap();
        let c = CycloElement::from_values(f, &[1, 2, 0]).unwrap();
        let c0 = c.coords()[0];
        let vals: Vec<u32> = c.coords()[1..]
            .iter()
            .map(|&x| f.sub_uncounted(x, c0).value())
            .collect();
        assert_eq!(vals, vec![1, 2]);
    }

    #[test]
    fn onb2_maps() {
        let p3 = params(3, 2, 2);
        let a = nb(&p3, &[1, 0, 0]);
        assert_eq!(embed_onb2(&a).unwrap(), cy(2, &[0, 1, 0, 0, 0, 0, 1]));
        let b = nb(&p3, &[1, 1, 0]);
        assert_eq!(embed_onb2(&b).unwrap(), cy(2, &[0, 1, 1, 0, 0, 1, 1]));
        let p2 = params(2, 2, 2);
        assert_eq!(embed_onb2(&nb(&p2, &[0, 0])).unwrap(), cy(2, &[0, 0, 0, 0, 0]));

        let mut ctx = OpCount::new();
        assert_eq!(
            extract_onb2(&cy(2, &[0, 1, 0, 0, 0, 0, 1]), &p3, &mut ctx).unwrap(),
            a
        );
        assert_eq!(
            extract_onb2(&cy(2, &[1, 0, 1, 1, 1, 1, 0]), &p3, &mut ctx).unwrap(),
            a
        );
        assert_eq!(
            extract_onb2(&cy(2, &[0, 1, 0, 0, 1, 0, 1]), &p3, &mut ctx),
            Err(Error::NotFoldable { index: 3, mirror: 4 })
        );
    }

    #[test]
    fn round_trips_exhaustive_binary() {
        for (m, k) in [(2u32, 1u32), (4, 1), (2, 2), (3, 2)] {
            let p = params(m, k, 2);
            for idx in 0..(1u64 << m) {
                let a = NormalBasisElement::from_index(p, idx).unwrap();
                let mut ctx = OpCount::new();
                let e = embed(&a).unwrap();
                assert_eq!(extract(&e, &p, &mut ctx).unwrap(), a);
                // adding the all-ones vector does not change the extraction
                let ones = CycloElement::all_ones(p.field(), p.n() as usize).unwrap();
                let shifted = crate::cyclo::cy_add(&e, &ones, &mut ctx).unwrap();
                assert_eq!(extract(&shifted, &p, &mut ctx).unwrap(), a);
            }
        }
    }

    #[test]
    fn onb1_beta_squared() {
        let p = params(4, 1, 2);
        let beta = nb(&p, &[1, 0, 0, 0]);
        for variant in [Onb1Variant::ProductPairs, Onb1Variant::SumProducts] {
            let c = mul_onb1(&beta, &beta, variant, &mut OpCount::new()).unwrap();
            assert_eq!(c.values(), vec![0, 1, 0, 0]);
        }
    }

    #[test]
    fn onb1_counts_m4() {
        let p = params(4, 1, 2);
        let a = nb(&p, &[1, 1, 0, 1]);
        let b = nb(&p, &[0, 1, 1, 1]);
        let mut ctx = OpCount::new();
        mul_onb1(&a, &b, Onb1Variant::SumProducts, &mut ctx).unwrap();
        assert_eq!(ctx, OpCount::from_parts(10, 0, 21));
        let mut ctx = OpCount::new();
        mul_onb1(&a, &b, Onb1Variant::ProductPairs, &mut ctx).unwrap();
        assert_eq!(ctx, OpCount::from_parts(16, 0, 15));
    }

    #[test]
    fn onb2_counts_m3() {
        let p = params(3, 2, 2);
        let a = nb(&p, &[1, 0, 1]);
        let b = nb(&p, &[1, 1, 0]);
        let expect = [
            (Onb2Variant::Folded, OpCount::from_parts(9, 0, 24)),
            (Onb2Variant::ProductPairs, OpCount::from_parts(9, 0, 9)),
            (Onb2Variant::SumProducts, OpCount::from_parts(6, 0, 12)),
        ];
        for (variant, counts) in expect {
            let mut ctx = OpCount::new();
            mul_onb2(&a, &b, variant, &mut ctx).unwrap();
            assert_eq!(ctx, counts, "{variant:?}");
        }
    }

    #[test]
    fn onb_multipliers_match_embedding_path_exhaustively() {
        for (m, k) in [(2u32, 1u32), (4, 1), (2, 2), (3, 2)] {
            let p = params(m, k, 2);
            for ia in 0..(1u64 << m) {
                for ib in 0..(1u64 << m) {
                    let a = NormalBasisElement::from_index(p, ia).unwrap();
                    let b = NormalBasisElement::from_index(p, ib).unwrap();
                    let expected = onb_oracle_product(&a, &b).unwrap();
                    let ctx = &mut OpCount::new();
                    if k == 1 {
                        for v in [Onb1Variant::ProductPairs, Onb1Variant::SumProducts] {
                            assert_eq!(mul_onb1(&a, &b, v, ctx).unwrap(), expected, "{v:?}");
                        }
                    } else {
                        for v in [
                            Onb2Variant::Folded,
                            Onb2Variant::ProductPairs,
                            Onb2Variant::SumProducts,
                        ] {
                            assert_eq!(mul_onb2(&a, &b, v, ctx).unwrap(), expected, "{v:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn onb_multipliers_over_gf3() {
        for (m, k) in [(4u32, 1u32), (2, 2), (3, 2), (6, 1)] {
            let p = params(m, k, 3);
            let total = 3u64.pow(m);
            for ia in (0..total).step_by(7) {
                for ib in (0..total).step_by(5) {
                    let a = NormalBasisElement::from_index(p, ia).unwrap();
                    let b = NormalBasisElement::from_index(p, ib).unwrap();
                    let expected = onb_oracle_product(&a, &b).unwrap();
                    let ctx = &mut OpCount::new();
                    if k == 1 {
                        for v in [Onb1Variant::ProductPairs, Onb1Variant::SumProducts] {
                            assert_eq!(mul_onb1(&a, &b, v, ctx).unwrap(), expected, "{v:?}");
                        }
                    } else {
                        for v in [
                            Onb2Variant::Folded,
                            Onb2Variant::ProductPairs,
                            Onb2Variant::SumProducts,
                        ] {
                            assert_eq!(mul_onb2(&a, &b, v, ctx).unwrap(), expected, "{v:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedded_products_are_exact_palindromes() {
        let p = params(5, 2, 2);
        for ia in 0..32u64 {
            for ib in 0..32u64 {
                let a = embed(&NormalBasisElement::from_index(p, ia).unwrap()).unwrap();
                let b = embed(&NormalBasisElement::from_index(p, ib).unwrap()).unwrap();
                let c = mul_direct(&a, &b, &mut OpCount::new()).unwrap();
                let n = c.n();
                for i in 1..n {
                    assert_eq!(c.coords()[i], c.coords()[n - i]);
                }
            }
        }
    }

    #[test]
    fn pair_schedule_m3() {
        let s = PairSchedule::new(3);
        assert_eq!(
            s.rows,
            vec![
                vec![(2, 0), (3, 1), (3, 2)],
                vec![(3, 1), (3, 0), (2, 1)],
                vec![(3, 2), (2, 1), (1, 0)],
            ]
        );
        assert_eq!(s.outputs, vec![2, 3, 1]);
    }

    #[test]
    fn product_pair_trace_shares_each_pair_twice() {
        let p = params(5, 2, 2);
        let a = nb(&p, &[1, 0, 1, 1, 0]);
        let mut trace = Vec::new();
        mul_onb2_traced(&a, &a, Onb2Variant::ProductPairs, &mut OpCount::new(), &mut trace).unwrap();
        assert_eq!(PairSchedule::from_trace(5, &trace), PairSchedule::new(5));
        let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
        for step in &trace {
            match step.usage {
                PairUse::Vanishing => assert!(step.pair.0 == 0 || step.pair.1 == 0),
                _ => *uses.entry(unordered(step.pair)).or_default() += 1,
            }
        }
        assert_eq!(uses.len(), 10);
        assert!(uses.values().all(|&c| c == 2));
    }

    #[test]
    fn frobenius_order_round_trip() {
        let p = params(4, 1, 2);
        let a = nb(&p, &[1, 1, 0, 1]);
        let fo = onb1_to_frobenius_order(&a).unwrap();
        // β^1, β^2, β^4, β^3
        assert_eq!(
            fo,
            vec![a.coords()[0], a.coords()[1], a.coords()[3], a.coords()[2]]
        );
        assert_eq!(onb1_from_frobenius_order(&p, &fo).unwrap(), a);
    }

    #[test]
    fn squaring_is_a_rotation_in_frobenius_order() {
        let p = params(4, 1, 2);
        for idx in 0..16 {
            let a = NormalBasisElement::from_index(p, idx).unwrap();
            let sq = mul_onb1(&a, &a, Onb1Variant::SumProducts, &mut OpCount::new()).unwrap();
            let mut rotated = onb1_to_frobenius_order(&a).unwrap();
            rotated.rotate_right(1);
            assert_eq!(onb1_to_frobenius_order(&sq).unwrap(), rotated);
        }
    }

    #[test]
    fn wrong_basis_type_rejected() {
        let p1 = params(4, 1, 2);
        let p2 = params(3, 2, 2);
        let a1 = nb(&p1, &[1, 0, 0, 0]);
        let a2 = nb(&p2, &[1, 0, 0]);
        assert!(matches!(
            mul_onb2(&a1, &a1, Onb2Variant::ProductPairs, &mut OpCount::new()),
            Err(Error::WrongBasisType { expected: 2, got: 1 })
        ));
        assert!(matches!(
            mul_onb1(&a2, &a2, Onb1Variant::SumProducts, &mut OpCount::new()),
            Err(Error::WrongBasisType { expected: 1, got: 2 })
        ));
    }
}
