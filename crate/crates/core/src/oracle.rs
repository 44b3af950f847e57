//! Ground truth in the splitting field of `x^n - 1`.
//!
//! Elements of GF(q^d) are kept in a polynomial basis modulo a monic
//! irreducible polynomial of degree `d = ord_n(q)`. A primitive n-th root
//! of unity `β` is located there, so a coordinate vector can be evaluated
//! as `Σ a_i β^i` and products can be checked against schoolbook
//! polynomial multiplication followed by long division.
//!
//! Nothing in this module calls the counted multipliers (apart from the
//! subring closure, which is defined in terms of them); all arithmetic is
//! plain `u64` modular arithmetic.

use std::collections::HashSet;

use crate::cyclo::{cy_add, CycloElement};
use crate::error::{Error, Result};
use crate::gauss::find_alpha;
use crate::groundfield::{is_prime, prime_factors, OpCount};
use crate::multiply::mul_direct;

/// Largest extension degree the oracle will build.
pub const MAX_DEGREE: u32 = 24;

// ---------------------------------------------------------------------------
// polynomials over GF(q), coefficients lowest degree first
// ---------------------------------------------------------------------------

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn pow_mod(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], q: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], q: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    trim(out)
}

/// Remainder of `a` divided by `m` (m nonzero).
fn poly_rem(a: &[u64], m: &[u64], q: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], q);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] * lead_inv % q;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            r[shift + i] = (r[shift + i] + q - factor * c % q) % q;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], q: u64) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y, q);
        x = y;
        y = r;
    }
    x
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], q: u64) -> Poly {
    poly_rem(&poly_mul(a, b, q), m, q)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], q: u64) -> Poly {
    let mut acc = poly_rem(&[1], m, q);
    let mut b = poly_rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, q);
        }
        b = poly_mulmod(&b, &b, m, q);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic `f` of degree d over GF(q): `f` has no
/// factor in common with `x^{q^i} - x` for `i = 1..=d/2`.
pub fn is_irreducible(q: u32, f: &[u32]) -> bool {
    let q = q as u64;
    let f: Poly = trim(f.iter().map(|&c| c as u64 % q).collect());
    let d = match degree(&f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut xq = x.clone();
    for _ in 1..=d / 2 {
        xq = poly_powmod(&xq, q, &f, q);
        let g = poly_gcd(&f, &poly_sub(&xq, &x, q), q);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `d` over GF(q), ordered
/// by the integer whose base-q digits are the coefficients, constant term
/// least significant. Returns `d + 1` coefficients, lowest degree first.
pub fn find_irreducible(q: u32, d: u32) -> Vec<u32> {
    assert!(d >= 1, "degree must be positive");
    let d = d as usize;
    let mut lower = vec![0u32; d];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(q, &f) {
            return f;
        }
        // base-q increment with the constant term as least significant digit
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < q {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < d, "an irreducible polynomial of every degree exists");
        }
    }
}

/// Smallest `d >= 1` with `q^d ≡ 1 (mod n)`.
pub fn order_mod(q: u32, n: u32) -> Result<u32> {
    if n == 0 || gcd(q as u64, n as u64) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let (q, n64) = (q as u64 % n as u64, n as u64);
    let mut acc = q;
    let mut d = 1;
    while acc != 1 {
        acc = acc * q % n64;
        d += 1;
    }
    Ok(d)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// GF(q^d)
// ---------------------------------------------------------------------------

/// GF(q^d) as GF(q)[x] modulo a monic irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitField {
    q: u32,
    d: u32,
    modulus: Vec<u32>,
}

/// Element of a [`SplitField`] in the polynomial basis (`d` coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitFieldElement {
    coeffs: Vec<u32>,
}

impl SplitFieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

impl SplitField {
    /// Builds the field from a caller-supplied modulus, which must be monic
    /// and irreducible.
    pub fn with_modulus(q: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q));
        }
        let d = modulus.len().saturating_sub(1) as u32;
        if d == 0 || modulus.last() != Some(&1) || !is_irreducible(q, &modulus) {
            return Err(Error::UnsupportedCombination(format!(
                "modulus {modulus:?} is not monic irreducible over GF({q})"
            )));
        }
        check_size(q, d)?;
        Ok(SplitField { q, d, modulus })
    }

    /// GF(q^d) with the smallest irreducible modulus of degree d.
    pub fn new(q: u32, d: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q));
        }
        check_size(q, d)?;
        let modulus = find_irreducible(q, d);
        Ok(SplitField { q, d, modulus })
    }

    /// The splitting field of `x^n - 1` over GF(q): degree `ord_n(q)`.
    pub fn splitting(q: u32, n: u32) -> Result<Self> {
        let d = order_mod(q, n)?;
        Self::new(q, d)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `q^d`.
    pub fn order(&self) -> u64 {
        (self.q as u64).pow(self.d)
    }

    pub fn zero(&self) -> SplitFieldElement {
        SplitFieldElement {
            coeffs: vec![0; self.d as usize],
        }
    }

    pub fn one(&self) -> SplitFieldElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> SplitFieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.q;
        e
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<SplitFieldElement> {
        if coeffs.len() != self.d as usize {
            return Err(self.mismatch(coeffs.len()));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(Error::CoordOutOfRange {
                value: bad as u64,
                p: self.q,
            });
        }
        Ok(SplitFieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    /// Element number `index` in generation order: base-q digits, constant
    /// coefficient least significant.
    pub fn element_from_index(&self, mut index: u64) -> SplitFieldElement {
        let q = self.q as u64;
        let coeffs = (0..self.d)
            .map(|_| {
                let c = (index % q) as u32;
                index /= q;
                c
            })
            .collect();
        SplitFieldElement { coeffs }
    }

    fn mismatch(&self, len: usize) -> Error {
        Error::DimensionMismatch {
            p_left: self.q,
            n_left: self.d as usize,
            p_right: self.q,
            n_right: len,
        }
    }

    fn check(&self, a: &SplitFieldElement) -> Result<()> {
        if a.coeffs.len() != self.d as usize {
            Err(self.mismatch(a.coeffs.len()))
        } else {
            Ok(())
        }
    }

    fn to_poly(&self, a: &SplitFieldElement) -> Poly {
        a.coeffs.iter().map(|&c| c as u64).collect()
    }

    fn wrap_poly(&self, p: Poly) -> SplitFieldElement {
        let mut coeffs = vec![0u32; self.d as usize];
        for (i, c) in p.into_iter().enumerate() {
            coeffs[i] = c as u32;
        }
        SplitFieldElement { coeffs }
    }

    fn modulus_poly(&self) -> Poly {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn add(&self, a: &SplitFieldElement, b: &SplitFieldElement) -> Result<SplitFieldElement> {
        self.check(a)?;
        self.check(b)?;
        let q = self.q;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % q)
            .collect();
        Ok(SplitFieldElement { coeffs })
    }

    pub fn sub(&self, a: &SplitFieldElement, b: &SplitFieldElement) -> Result<SplitFieldElement> {
        self.check(a)?;
        self.check(b)?;
        let q = self.q;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + q - y) % q)
            .collect();
        Ok(SplitFieldElement { coeffs })
    }

    /// Schoolbook product followed by long division by the modulus.
    pub fn mul(&self, a: &SplitFieldElement, b: &SplitFieldElement) -> Result<SplitFieldElement> {
        self.check(a)?;
        self.check(b)?;
        let q = self.q as u64;
        let prod = poly_mul(&self.to_poly(a), &self.to_poly(b), q);
        Ok(self.wrap_poly(poly_rem(&prod, &self.modulus_poly(), q)))
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, a: &SplitFieldElement, e: u64) -> Result<SplitFieldElement> {
        self.check(a)?;
        let q = self.q as u64;
        Ok(self.wrap_poly(poly_powmod(&self.to_poly(a), e, &self.modulus_poly(), q)))
    }

    /// `a^q`.
    pub fn frobenius(&self, a: &SplitFieldElement) -> Result<SplitFieldElement> {
        self.pow(a, self.q as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &SplitFieldElement) -> Result<u64> {
        self.check(a)?;
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::UnsupportedCombination(
                "zero has no multiplicative order".into(),
            ));
        }
        let group = self.order() - 1;
        let one = self.one();
        let mut order = group;
        for l in prime_factors(group) {
            while order.is_multiple_of(l) && self.pow(a, order / l)? == one {
                order /= l;
            }
        }
        Ok(order)
    }

    /// Smallest-in-generation-order element of multiplicative order `n`,
    /// obtained as `g^((q^d - 1)/n)`.
    pub fn find_beta(&self, n: u32) -> Result<SplitFieldElement> {
        let group = self.order() - 1;
        let n64 = n as u64;
        if n == 0 || !group.is_multiple_of(n64) {
            return Err(Error::NoRoot {
                q: self.q,
                d: self.d,
                n,
            });
        }
        let e = group / n64;
        let one = self.one();
        let primes = prime_factors(n64);
        for idx in 1..self.order() {
            let g = self.element_from_index(idx);
            let beta = self.pow(&g, e)?;
            let mut ok = true;
            for &l in &primes {
                if self.pow(&beta, n64 / l)? == one {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(beta);
            }
        }
        Err(Error::NoRoot {
            q: self.q,
            d: self.d,
            n,
        })
    }

    /// Horner evaluation of `Σ a_i β^i`. `beta` must have order exactly n.
    pub fn eval_at_beta(&self, a: &CycloElement, beta: &SplitFieldElement) -> Result<SplitFieldElement> {
        if a.field().p() != self.q {
            return Err(Error::UnsupportedCombination(format!(
                "element over GF({}) evaluated in an extension of GF({})",
                a.field().p(),
                self.q
            )));
        }
        let order = self.multiplicative_order(beta)?;
        if order != a.n() as u64 {
            return Err(Error::OrderMismatch { n: a.n(), order });
        }
        self.horner(a, beta)
    }

    fn horner(&self, a: &CycloElement, beta: &SplitFieldElement) -> Result<SplitFieldElement> {
        let mut acc = self.zero();
        for c in a.coords().iter().rev() {
            acc = self.mul(&acc, beta)?;
            acc = self.add(&acc, &self.constant(c.value()))?;
        }
        Ok(acc)
    }
}

fn check_size(q: u32, d: u32) -> Result<()> {
    let fits = (1..=MAX_DEGREE).contains(&d) && (q as u64).checked_pow(d).is_some_and(|o| o < 1 << 32);
    if fits {
        Ok(())
    } else {
        Err(Error::OracleUnavailable { q, d })
    }
}

/// The splitting field of `x^n - 1` together with a fixed primitive n-th
/// root of unity, for repeated evaluations.
#[derive(Debug, Clone)]
pub struct CyclotomicOracle {
    field: SplitField,
    beta: SplitFieldElement,
    n: usize,
}

impl CyclotomicOracle {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        let field = SplitField::splitting(q, n)?;
        let beta = field.find_beta(n)?;
        Ok(CyclotomicOracle {
            field,
            beta,
            n: n as usize,
        })
    }

    pub fn field(&self) -> &SplitField {
        &self.field
    }

    pub fn beta(&self) -> &SplitFieldElement {
        &self.beta
    }

    pub fn eval(&self, a: &CycloElement) -> Result<SplitFieldElement> {
        if a.n() != self.n {
            return Err(Error::OrderMismatch {
                n: a.n(),
                order: self.n as u64,
            });
        }
        if a.field().p() != self.field.q {
            return Err(Error::UnsupportedCombination(format!(
                "element over GF({}) evaluated in an extension of GF({})",
                a.field().p(),
                self.field.q
            )));
        }
        self.field.horner(a, &self.beta)
    }

    /// True iff `eval(c) == eval(a) * eval(b)`.
    pub fn is_product(&self, a: &CycloElement, b: &CycloElement, c: &CycloElement) -> Result<bool> {
        let lhs = self.eval(c)?;
        let rhs = self.field.mul(&self.eval(a)?, &self.eval(b)?)?;
        Ok(lhs == rhs)
    }
}

/// The Gauss period `γ = Σ_{i<k} β^{α^i mod n}`.
pub fn gauss_gamma(
    params: &crate::gauss::GaussParams,
    sf: &SplitField,
    beta: &SplitFieldElement,
) -> Result<SplitFieldElement> {
    gamma_for(params.n(), params.k(), params.alpha(), sf, beta)
}

fn gamma_for(
    n: u32,
    k: u32,
    alpha: u32,
    sf: &SplitField,
    beta: &SplitFieldElement,
) -> Result<SplitFieldElement> {
    let mut gamma = sf.zero();
    let mut power = 1u64;
    for _ in 0..k {
        gamma = sf.add(&gamma, &sf.pow(beta, power)?)?;
        power = power * alpha as u64 % n as u64;
    }
    Ok(gamma)
}

/// Whether a Gauss period of type (m, k) over GF(q) generates a normal
/// basis of GF(q^m): `n = mk + 1` must be prime, `γ^{q^m} = γ`, and the
/// conjugates `γ^{q^i}`, `i < m`, must be linearly independent over GF(q).
///
/// Fails only when the splitting field is too large to construct.
pub fn verify_normal_basis(m: u32, k: u32, q: u32) -> Result<bool> {
    if m < 1 || k < 1 || !is_prime(q as u64) {
        return Ok(false);
    }
    let n = m * k + 1;
    if !is_prime(n as u64) || n == q {
        return Ok(false);
    }
    let alpha = match find_alpha(n, k) {
        Ok(a) => a,
        Err(_) => return Ok(false),
    };
    let sf = SplitField::splitting(q, n)?;
    if sf.degree() < m {
        return Ok(false);
    }
    let beta = sf.find_beta(n)?;
    let gamma = gamma_for(n, k, alpha, &sf, &beta)?;

    let mut conjugates = Vec::with_capacity(m as usize);
    let mut g = gamma.clone();
    for _ in 0..m {
        conjugates.push(g.clone());
        g = sf.frobenius(&g)?;
    }
    if g != gamma {
        return Ok(false);
    }
    let rows: Vec<Vec<u64>> = conjugates
        .iter()
        .map(|e| e.coeffs.iter().map(|&c| c as u64).collect())
        .collect();
    Ok(rank_mod(rows, q as u64) == m as usize)
}

/// Rank of a matrix over GF(q) by Gaussian elimination.
pub(crate) fn rank_mod(mut rows: Vec<Vec<u64>>, q: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(q)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], q);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % q;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + q * q - factor * y) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// subrings of GF(p)[x]/(x^n - 1)
// ---------------------------------------------------------------------------

/// Closure of `generators` (and zero) under addition and multiplication,
/// sorted by coordinate values.
pub fn subring_closure(generators: &[CycloElement]) -> Result<Vec<CycloElement>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let (field, n) = (first.field(), first.n());
    for g in generators {
        first.check_compatible(g)?;
    }
    let p = field.p() as u64;
    let too_large = p.checked_pow(n as u32).is_none_or(|size| size > 1 << 16);
    if too_large {
        return Err(Error::TooLarge { p: field.p(), n });
    }

    let mut ctx = OpCount::new();
    let mut seen: HashSet<CycloElement> = HashSet::new();
    let mut members: Vec<CycloElement> = Vec::new();
    let mut frontier: Vec<CycloElement> = Vec::new();
    for e in std::iter::once(CycloElement::zero(field, n)?).chain(generators.iter().cloned()) {
        if seen.insert(e.clone()) {
            frontier.push(e);
        }
    }
    while let Some(x) = frontier.pop() {
        members.push(x.clone());
        let mut fresh = Vec::new();
        for y in &members {
            fresh.push(cy_add(&x, y, &mut ctx)?);
            fresh.push(mul_direct(&x, y, &mut ctx)?);
        }
        for e in fresh {
            if seen.insert(e.clone()) {
                frontier.push(e);
            }
        }
    }
    members.sort_by_key(|a| a.values());
    Ok(members)
}

/// The element `e` of `set` with `e·x = x` for every `x` in `set`.
pub fn multiplicative_identity(set: &[CycloElement]) -> Result<Option<CycloElement>> {
    let mut ctx = OpCount::new();
    for e in set {
        let mut is_identity = true;
        for x in set {
            if mul_direct(e, x, &mut ctx)? != *x {
                is_identity = false;
                break;
            }
        }
        if is_identity && !e.is_zero() {
            return Ok(Some(e.clone()));
        }
    }
    Ok(None)
}
