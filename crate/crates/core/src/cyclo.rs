//! Exact arithmetic in the cyclotomic integers `Z[ζ]`, `ζ = exp(iπ/n)`.
//!
//! Elements are stored as integer coefficient vectors in the power basis
//! `1, ζ, …, ζ^{d-1}` with `d = φ(2n)`. The power basis is an integral basis,
//! so the representation is unique and divisibility questions reduce to
//! coefficient arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Values of `n` for which exactly one prime of `Z[ζ]` lies above 2 and the
/// valuation layer is implemented.
pub const VALUATION_SUPPORTED: [u32; 5] = [2, 4, 6, 8, 12];

/// A valuation: an integer or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// Shift a valuation by a finite amount; infinity absorbs.
    pub fn offset(self, by: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + by),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Exact `Φ_m` as a coefficient vector, lowest degree first.
///
/// Evaluated with the Möbius product `Φ_m = Π_{e|m} (x^e − 1)^{μ(m/e)}`,
/// carried out as a power series truncated at degree `φ(m)`: factors with
/// `μ = 1` multiply by `1 − x^e`, factors with `μ = −1` multiply by the
/// geometric series `1/(1 − x^e)`.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic_poly requires m >= 1");
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    let deg = arith::euler_phi(m) as usize;
    let mut up = Vec::new();
    let mut down = Vec::new();
    for e in arith::divisors(m) {
        match arith::mobius(m / e) {
            1 => up.push(e as usize),
            -1 => down.push(e as usize),
            _ => {}
        }
    }
    if let Some(c) = mobius_series_i64(deg, &up, &down) {
        return c.into_iter().map(BigInt::from).collect();
    }
    mobius_series_big(deg, &up, &down)
}

fn mobius_series_i64(deg: usize, up: &[usize], down: &[usize]) -> Option<Vec<i64>> {
    let mut s = vec![0i64; deg + 1];
    s[0] = 1;
    for &e in up {
        for i in (e..=deg).rev() {
            s[i] = s[i].checked_sub(s[i - e])?;
        }
    }
    for &e in down {
        for i in e..=deg {
            s[i] = s[i].checked_add(s[i - e])?;
        }
    }
    Some(s)
}

fn mobius_series_big(deg: usize, up: &[usize], down: &[usize]) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); deg + 1];
    s[0] = BigInt::one();
    for &e in up {
        for i in (e..=deg).rev() {
            let t = s[i - e].clone();
            s[i] -= t;
        }
    }
    for &e in down {
        for i in e..=deg {
            let t = s[i - e].clone();
            s[i] += t;
        }
    }
    s
}

/// Evaluate an integer polynomial (lowest degree first) at an integer point.
pub fn eval_poly(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Per-`n` constants of the ring `Z[ζ_{2n}]`.
#[derive(Debug)]
pub struct Context {
    n: u32,
    degree: usize,
    phi_poly: Vec<BigInt>,
    galois_exponents: Vec<u32>,
    two_adic: u32,
    odd_part: u64,
    residue_degree: u32,
    primes_above_two: u64,
    /// `zeta_table[j]` is `ζ^j` reduced into the power basis, as sparse
    /// `(index, coefficient)` pairs, for `0 ≤ j < 2n`.
    zeta_table: Vec<Vec<(usize, i64)>>,
    val_two: Option<i64>,
    mu_n: Option<i64>,
}

impl Context {
    /// Build the context for gate-set parameter `n` (positive and even).
    pub fn new(n: i64) -> Result<Arc<Context>> {
        if n < 2 || n % 2 != 0 || n > (u32::MAX / 4) as i64 {
            return Err(Error::InvalidN(n));
        }
        let n32 = n as u32;
        let order = 2 * n as u64;
        let phi_poly = cyclotomic_poly(order);
        let degree = phi_poly.len() - 1;
        debug_assert!(phi_poly[degree].is_one());
        let galois_exponents: Vec<u32> = (1..order)
            .filter(|&t| arith::gcd(t, order) == 1)
            .map(|t| t as u32)
            .collect();
        let (k, s) = arith::split_two_power(n as u64);
        let residue_degree = arith::multiplicative_order(2, s) as u32;
        let primes_above_two = arith::euler_phi(s) / residue_degree as u64;

        let low: Vec<i64> = phi_poly[..degree]
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        let mut zeta_table = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            zeta_table.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by ζ and reduce with ζ^d = -Σ φ_i ζ^i
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in low.iter().enumerate() {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(*c).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
        }

        let mut ctx = Context {
            n: n32,
            degree,
            phi_poly,
            galois_exponents,
            two_adic: k,
            odd_part: s,
            residue_degree,
            primes_above_two,
            zeta_table,
            val_two: None,
            mu_n: None,
        };
        if ctx.supports_valuation() {
            let mut two = vec![BigInt::zero(); degree];
            two[0] = BigInt::from(2);
            let one_plus_i = ctx.add_coeffs(&ctx.zeta_coeffs(0), &ctx.zeta_coeffs(n / 2));
            ctx.val_two = ctx.valuation_coeffs(&two).finite();
            ctx.mu_n = ctx.valuation_coeffs(&one_plus_i).finite();
        }
        Ok(Arc::new(ctx))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Order of the root of unity `ζ`, i.e. `2n`.
    pub fn order(&self) -> u32 {
        2 * self.n
    }

    /// Degree `d = φ(2n)` of the field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi_poly(&self) -> &[BigInt] {
        &self.phi_poly
    }

    pub fn galois_exponents(&self) -> &[u32] {
        &self.galois_exponents
    }

    /// `k` in `n = 2^k s`.
    pub fn two_adic(&self) -> u32 {
        self.two_adic
    }

    /// `s` in `n = 2^k s`.
    pub fn odd_part(&self) -> u64 {
        self.odd_part
    }

    /// Residue degree `f` of the primes above 2: the order of 2 modulo `s`.
    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }

    /// Ramification index of 2, `e = φ(2^{k+1}) = 2^k`.
    pub fn ram_index(&self) -> u64 {
        1u64 << self.two_adic
    }

    /// Number `g` of distinct primes above 2.
    pub fn primes_above_two(&self) -> u64 {
        self.primes_above_two
    }

    pub fn supports_valuation(&self) -> bool {
        VALUATION_SUPPORTED.contains(&self.n)
    }

    /// `v_p(2)`, available when the valuation layer is supported.
    pub fn valuation_of_two(&self) -> Result<i64> {
        self.val_two.ok_or(Error::UnsupportedValuation(self.n))
    }

    /// `μ_n = v_p(1 + i)`.
    pub fn mu_n(&self) -> Result<i64> {
        self.mu_n.ok_or(Error::UnsupportedValuation(self.n))
    }

    pub(crate) fn zeta_sparse(&self, j: usize) -> &[(usize, i64)] {
        &self.zeta_table[j]
    }

    pub(crate) fn reduce_exp(&self, j: i64) -> usize {
        j.rem_euclid(self.order() as i64) as usize
    }

    fn zeta_coeffs(&self, j: i64) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree];
        for &(i, c) in self.zeta_sparse(self.reduce_exp(j)) {
            out[i] = BigInt::from(c);
        }
        out
    }

    fn add_coeffs(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul_coeffs(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree;
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = wide.drain(..d).collect();
        for (off, c) in wide.into_iter().enumerate() {
            if !c.is_zero() {
                accumulate_scaled(&mut out, self.zeta_sparse(d + off), &c);
            }
        }
        out
    }

    fn mul_zeta_coeffs(&self, a: &[BigInt], j: i64) -> Vec<BigInt> {
        let shift = self.reduce_exp(j);
        if shift == 0 {
            return a.to_vec();
        }
        let order = self.order() as usize;
        let mut out = vec![BigInt::zero(); self.degree];
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                accumulate_scaled(&mut out, self.zeta_sparse((i + shift) % order), c);
            }
        }
        out
    }

    fn galois_coeffs(&self, a: &[BigInt], t: u32) -> Vec<BigInt> {
        let order = self.order() as u64;
        let mut out = vec![BigInt::zero(); self.degree];
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as u64 * t as u64 % order) as usize;
                accumulate_scaled(&mut out, self.zeta_sparse(e), c);
            }
        }
        out
    }

    fn norm_coeffs(&self, a: &[BigInt]) -> BigInt {
        let mut acc = a.to_vec();
        for &t in &self.galois_exponents[1..] {
            acc = self.mul_coeffs(&acc, &self.galois_coeffs(a, t));
        }
        assert!(
            acc[1..].iter().all(Zero::is_zero),
            "norm is not a rational integer: arithmetic bug"
        );
        acc.swap_remove(0)
    }

    fn valuation_coeffs(&self, a: &[BigInt]) -> Valuation {
        if a.iter().all(Zero::is_zero) {
            return Valuation::Infinite;
        }
        let norm = self.norm_coeffs(a).abs();
        let v2 = norm.trailing_zeros().expect("nonzero norm");
        let f = self.residue_degree as u64;
        assert!(
            v2 % f == 0,
            "2-adic valuation of the norm is not a multiple of the residue degree"
        );
        Valuation::Finite((v2 / f) as i64)
    }
}

fn accumulate_scaled(out: &mut [BigInt], sparse: &[(usize, i64)], c: &BigInt) {
    for &(idx, v) in sparse {
        match v {
            1 => out[idx] += c,
            -1 => out[idx] -= c,
            _ => out[idx] += c * v,
        }
    }
}

/// An element of `Z[ζ_{2n}]`.
#[derive(Clone)]
pub struct CycInt {
    ctx: Arc<Context>,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(ctx: &Arc<Context>) -> CycInt {
        CycInt {
            ctx: ctx.clone(),
            coeffs: vec![BigInt::zero(); ctx.degree],
        }
    }

    pub fn one(ctx: &Arc<Context>) -> CycInt {
        CycInt::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<Context>, v: i64) -> CycInt {
        CycInt::from_bigint(ctx, BigInt::from(v))
    }

    pub fn from_bigint(ctx: &Arc<Context>, v: BigInt) -> CycInt {
        let mut out = CycInt::zero(ctx);
        out.coeffs[0] = v;
        out
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(ctx: &Arc<Context>, j: i64) -> CycInt {
        CycInt {
            ctx: ctx.clone(),
            coeffs: ctx.zeta_coeffs(j),
        }
    }

    /// Build from power-basis coefficients; the vector must have length `d`.
    pub fn from_coeffs(ctx: &Arc<Context>, coeffs: Vec<BigInt>) -> Result<CycInt> {
        if coeffs.len() != ctx.degree {
            return Err(Error::OutOfRange {
                what: "coefficient vector length",
                value: coeffs.len() as i64,
                range: format!("must equal d = {}", ctx.degree),
            });
        }
        Ok(CycInt {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn from_i64s(ctx: &Arc<Context>, coeffs: &[i64]) -> Result<CycInt> {
        CycInt::from_coeffs(ctx, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True when the element is a rational integer.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &CycInt) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.n == other.ctx.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.ctx.n,
                right: other.ctx.n,
            })
        }
    }

    fn with_coeffs(&self, coeffs: Vec<BigInt>) -> CycInt {
        CycInt {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        Ok(self.with_coeffs(self.ctx.add_coeffs(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.same_ring(other)?;
        Ok(self.with_coeffs(self.ctx.mul_coeffs(&self.coeffs, &other.coeffs)))
    }

    /// Multiply by `ζ^j`.
    pub fn mul_zeta(&self, j: i64) -> CycInt {
        self.with_coeffs(self.ctx.mul_zeta_coeffs(&self.coeffs, j))
    }

    pub fn scale(&self, c: &BigInt) -> CycInt {
        self.with_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `2^bits`.
    pub fn shl(&self, bits: u64) -> CycInt {
        if bits == 0 {
            return self.clone();
        }
        self.with_coeffs(self.coeffs.iter().map(|x| x << bits).collect())
    }

    /// Exact division by `2^bits`; the caller guarantees divisibility.
    pub(crate) fn shr_exact(&self, bits: u64) -> CycInt {
        if bits == 0 {
            return self.clone();
        }
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!(x.trailing_zeros().map_or(true, |z| z >= bits));
                    x >> bits
                })
                .collect(),
        )
    }

    /// Smallest 2-adic valuation over the coefficients (`None` for zero).
    pub fn coeff_two_adic(&self) -> Option<u64> {
        self.coeffs.iter().filter_map(|c| c.trailing_zeros()).min()
    }

    pub fn pow(&self, e: u32) -> CycInt {
        let mut acc = CycInt::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^t`.
    pub fn galois_apply(&self, t: i64) -> Result<CycInt> {
        let order = self.ctx.order() as i64;
        let tr = t.rem_euclid(order) as u64;
        if arith::gcd(tr, order as u64) != 1 {
            return Err(Error::NotCoprime {
                t,
                order: order as u32,
            });
        }
        Ok(self.with_coeffs(self.ctx.galois_coeffs(&self.coeffs, tr as u32)))
    }

    /// Complex conjugate (`ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> CycInt {
        let t = self.ctx.order() - 1;
        self.with_coeffs(self.ctx.galois_coeffs(&self.coeffs, t))
    }

    /// Field norm: the product of all Galois conjugates.
    pub fn norm(&self) -> BigInt {
        self.ctx.norm_coeffs(&self.coeffs)
    }

    /// Product of the nontrivial Galois conjugates, `γ`, so that `self·γ` is
    /// the norm.
    pub fn conjugate_cofactor(&self) -> CycInt {
        let mut acc = CycInt::one(&self.ctx);
        for &t in &self.ctx.galois_exponents[1..] {
            acc = acc.with_coeffs(
                self.ctx
                    .mul_coeffs(&acc.coeffs, &self.ctx.galois_coeffs(&self.coeffs, t)),
            );
        }
        acc
    }

    /// Whether `self` divides `x`: multiply `x` by the product `γ` of the
    /// nontrivial conjugates of `self`, and test every coefficient for
    /// divisibility by the rational integer `self·γ`.
    pub fn divides(&self, x: &CycInt) -> Result<bool> {
        Ok(self.exact_quotient(x)?.is_some())
    }

    /// `x / self` when it is an algebraic integer, computed with the same
    /// cofactor trick as [`CycInt::divides`].
    pub fn exact_quotient(&self, x: &CycInt) -> Result<Option<CycInt>> {
        self.same_ring(x)?;
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let gamma = self.conjugate_cofactor();
        Ok(DivisionKit::from_parts(self, gamma).quotient(x))
    }

    /// Coprime to 2 in the ideal sense, detected by an odd norm.
    pub fn is_coprime_to_two(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Precondition("zero has no coprimality".into()));
        }
        Ok(self.norm().is_odd())
    }

    /// Coefficientwise reduction to the representatives `{0, 1}`.
    pub fn mod2(&self) -> CycInt {
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|c| if c.is_odd() { BigInt::one() } else { BigInt::zero() })
                .collect(),
        )
    }

    /// Parity pattern of the coefficients.
    pub fn parity_bits(&self) -> Vec<u8> {
        self.coeffs.iter().map(|c| c.is_odd() as u8).collect()
    }

    /// Valuation at the unique prime above 2, `v_2(|N(x)|) / f`.
    pub fn valuation_p(&self) -> Result<Valuation> {
        if !self.ctx.supports_valuation() {
            return Err(Error::UnsupportedValuation(self.ctx.n));
        }
        Ok(self.ctx.valuation_coeffs(&self.coeffs))
    }

    /// Approximate complex value, for display and floating-point cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let order = self.ctx.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / order;
                let c = c.to_f64().unwrap_or(f64::NAN);
                (re + c * theta.cos(), im + c * theta.sin())
            })
    }
}

/// Precomputed divisor `y` with its cofactor `γ` and norm `B = yγ`, for
/// repeated exact division by the same element.
#[derive(Clone, Debug)]
pub struct DivisionKit {
    cofactor: CycInt,
    norm: BigInt,
}

impl DivisionKit {
    pub fn new(y: &CycInt) -> Result<DivisionKit> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(DivisionKit::from_parts(y, y.conjugate_cofactor()))
    }

    fn from_parts(y: &CycInt, cofactor: CycInt) -> DivisionKit {
        let b = y * &cofactor;
        assert!(b.is_rational(), "y·γ is not rational: arithmetic bug");
        DivisionKit {
            cofactor,
            norm: b.coeffs[0].clone(),
        }
    }

    pub fn quotient(&self, x: &CycInt) -> Option<CycInt> {
        let xg = x * &self.cofactor;
        let mut out = Vec::with_capacity(xg.coeffs.len());
        for c in &xg.coeffs {
            let (q, r) = c.div_rem(&self.norm);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(x.with_coeffs(out))
    }

    pub fn divides(&self, x: &CycInt) -> bool {
        let xg = x * &self.cofactor;
        xg.coeffs.iter().all(|c| c.is_multiple_of(&self.norm))
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &CycInt) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl Hash for CycInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &CycInt) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the power-basis coefficient vector.
impl Ord for CycInt {
    fn cmp(&self, other: &CycInt) -> Ordering {
        self.ctx
            .n
            .cmp(&other.ctx.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(n={}, {:?})", self.ctx.n, self.coeffs_as_strings())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{a}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{a}*z^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl CycInt {
    fn coeffs_as_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("mixed-ring arithmetic")
            }
        }
        impl $trait<CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$checked(&rhs).expect("mixed-ring arithmetic")
            }
        }
        impl $trait<&CycInt> for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                (&self).$checked(rhs).expect("mixed-ring arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.with_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(mut self) -> CycInt {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}
