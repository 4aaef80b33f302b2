//! The ring `R_n = Z[ζ_{2n}, 1/2]` and its real subring `T_n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclo::{Context, CycInt, DivisionKit, Valuation};
use crate::error::{Error, Result};

/// `num / 2^log2denom`, kept normalized: either the exponent is zero or some
/// coefficient of `num` is odd. Equality is structural under this invariant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    num: CycInt,
    log2denom: u64,
}

impl RingElem {
    pub fn new(num: CycInt, log2denom: u64) -> RingElem {
        let mut out = RingElem { num, log2denom };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.log2denom == 0 {
            return;
        }
        match self.num.coeff_two_adic() {
            None => self.log2denom = 0,
            Some(tz) => {
                let shift = tz.min(self.log2denom);
                if shift > 0 {
                    self.num = self.num.shr_exact(shift);
                    self.log2denom -= shift;
                }
            }
        }
    }

    pub fn zero(ctx: &Arc<Context>) -> RingElem {
        RingElem::from(CycInt::zero(ctx))
    }

    pub fn one(ctx: &Arc<Context>) -> RingElem {
        RingElem::from(CycInt::one(ctx))
    }

    pub fn from_int(ctx: &Arc<Context>, v: i64) -> RingElem {
        RingElem::from(CycInt::from_int(ctx, v))
    }

    pub fn zeta_pow(ctx: &Arc<Context>, j: i64) -> RingElem {
        RingElem::from(CycInt::zeta_pow(ctx, j))
    }

    /// `1/2`.
    pub fn half(ctx: &Arc<Context>) -> RingElem {
        RingElem::new(CycInt::one(ctx), 1)
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn log2denom(&self) -> u64 {
        self.log2denom
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.log2denom == 0 && self.num.is_one()
    }

    /// True when the element lies in `Z[ζ]`.
    pub fn is_integral(&self) -> bool {
        self.log2denom == 0
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        let m = self.log2denom.max(other.log2denom);
        let a = self.num.shl(m - self.log2denom);
        let b = other.num.shl(m - other.log2denom);
        Ok(RingElem::new(a.checked_add(&b)?, m))
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        let m = self.log2denom.max(other.log2denom);
        let a = self.num.shl(m - self.log2denom);
        let b = other.num.shl(m - other.log2denom);
        Ok(RingElem::new(a.checked_sub(&b)?, m))
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        Ok(RingElem::new(
            self.num.checked_mul(&other.num)?,
            self.log2denom + other.log2denom,
        ))
    }

    pub fn conj(&self) -> RingElem {
        RingElem {
            num: self.num.conj(),
            log2denom: self.log2denom,
        }
    }

    /// `|x|^2 = x · conj(x)`, which lies in `T_n`.
    pub fn abs2(&self) -> RealRingElem {
        RealRingElem::new_unchecked(self * &self.conj())
    }

    pub fn mul_zeta(&self, j: i64) -> RingElem {
        RingElem {
            num: self.num.mul_zeta(j),
            log2denom: self.log2denom,
        }
    }

    /// Divide by `2^bits`.
    pub fn div_pow2(&self, bits: u64) -> RingElem {
        RingElem::new(self.num.clone(), self.log2denom + bits)
    }

    /// Multiply by `2^bits`.
    pub fn mul_pow2(&self, bits: u64) -> RingElem {
        let drop = bits.min(self.log2denom);
        RingElem::new(self.num.shl(bits - drop), self.log2denom - drop)
    }

    pub fn is_real(&self) -> bool {
        self.num.conj() == self.num
    }

    /// Valuation at the prime above 2: `v_p(num) − m · v_p(2)`.
    pub fn valuation_p(&self) -> Result<Valuation> {
        let v = self.num.valuation_p()?;
        let two = self.ctx().valuation_of_two()?;
        Ok(v.offset(-(self.log2denom as i64) * two))
    }

    /// The exponent `j ∈ [0, 2n)` with `self = ζ^j`, if one exists.
    pub fn as_zeta_power(&self) -> Option<u32> {
        if self.log2denom != 0 {
            return None;
        }
        let ctx = self.ctx();
        (0..ctx.order()).find(|&j| CycInt::zeta_pow(ctx, j as i64) == self.num)
    }

    /// Approximate complex value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let (re, im) = self.num.to_complex();
        let scale = (-(self.log2denom as f64)).exp2();
        (re * scale, im * scale)
    }
}

impl From<CycInt> for RingElem {
    fn from(num: CycInt) -> RingElem {
        RingElem { num, log2denom: 0 }
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &RingElem) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order used only for canonical representatives.
impl Ord for RingElem {
    fn cmp(&self, other: &RingElem) -> Ordering {
        self.log2denom
            .cmp(&other.log2denom)
            .then_with(|| self.num.cmp(&other.num))
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/2^{}", self.num, self.log2denom)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2denom == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/2^{}", self.num, self.log2denom)
        }
    }
}

macro_rules! ring_binop {
    ($ty:ident, $trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("mixed-ring arithmetic")
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$checked(&rhs).expect("mixed-ring arithmetic")
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$checked(rhs).expect("mixed-ring arithmetic")
            }
        }
    };
}

ring_binop!(RingElem, Add, add, checked_add);
ring_binop!(RingElem, Sub, sub, checked_sub);
ring_binop!(RingElem, Mul, mul, checked_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -&self.num,
            log2denom: self.log2denom,
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            num: -self.num,
            log2denom: self.log2denom,
        }
    }
}

/// An element of `T_n = R_n ∩ R`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealRingElem(RingElem);

impl RealRingElem {
    /// Checks that `x` is fixed by complex conjugation.
    pub fn new(x: RingElem) -> Result<RealRingElem> {
        if x.is_real() {
            Ok(RealRingElem(x))
        } else {
            Err(Error::Precondition(format!("{x} is not real")))
        }
    }

    pub(crate) fn new_unchecked(x: RingElem) -> RealRingElem {
        debug_assert!(x.is_real());
        RealRingElem(x)
    }

    pub fn zero(ctx: &Arc<Context>) -> RealRingElem {
        RealRingElem(RingElem::zero(ctx))
    }

    pub fn one(ctx: &Arc<Context>) -> RealRingElem {
        RealRingElem(RingElem::one(ctx))
    }

    pub fn from_int(ctx: &Arc<Context>, v: i64) -> RealRingElem {
        RealRingElem(RingElem::from_int(ctx, v))
    }

    /// `cos(aπ/n) = (ζ^a + ζ^{-a}) / 2`.
    pub fn cos(ctx: &Arc<Context>, a: i64) -> RealRingElem {
        let num = &CycInt::zeta_pow(ctx, a) + &CycInt::zeta_pow(ctx, -a);
        RealRingElem(RingElem::new(num, 1))
    }

    /// `sin(aπ/n) = (ζ^a − ζ^{-a}) / (2i)`.
    pub fn sin(ctx: &Arc<Context>, a: i64) -> RealRingElem {
        let h = ctx.n() as i64 / 2;
        let num = &CycInt::zeta_pow(ctx, a - h) - &CycInt::zeta_pow(ctx, -a - h);
        RealRingElem(RingElem::new(num, 1))
    }

    pub fn inner(&self) -> &RingElem {
        &self.0
    }

    pub fn into_inner(self) -> RingElem {
        self.0
    }

    pub fn checked_add(&self, other: &RealRingElem) -> Result<RealRingElem> {
        Ok(RealRingElem(self.0.checked_add(&other.0)?))
    }

    pub fn checked_sub(&self, other: &RealRingElem) -> Result<RealRingElem> {
        Ok(RealRingElem(self.0.checked_sub(&other.0)?))
    }

    pub fn checked_mul(&self, other: &RealRingElem) -> Result<RealRingElem> {
        Ok(RealRingElem(self.0.checked_mul(&other.0)?))
    }

    /// `self · cos(aπ/n)`, using only shifts by powers of `ζ`.
    pub fn mul_cos(&self, a: i64) -> RealRingElem {
        let x = &self.0;
        let num = &x.num.mul_zeta(a) + &x.num.mul_zeta(-a);
        RealRingElem(RingElem::new(num, x.log2denom + 1))
    }

    /// `self · sin(aπ/n)`, using only shifts by powers of `ζ`.
    pub fn mul_sin(&self, a: i64) -> RealRingElem {
        let x = &self.0;
        let h = x.ctx().n() as i64 / 2;
        let num = &x.num.mul_zeta(a - h) - &x.num.mul_zeta(-a - h);
        RealRingElem(RingElem::new(num, x.log2denom + 1))
    }
}

impl Deref for RealRingElem {
    type Target = RingElem;
    fn deref(&self) -> &RingElem {
        &self.0
    }
}

impl fmt::Debug for RealRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for RealRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

ring_binop!(RealRingElem, Add, add, checked_add);
ring_binop!(RealRingElem, Sub, sub, checked_sub);
ring_binop!(RealRingElem, Mul, mul, checked_mul);

impl Neg for &RealRingElem {
    type Output = RealRingElem;
    fn neg(self) -> RealRingElem {
        RealRingElem(-&self.0)
    }
}

impl Neg for RealRingElem {
    type Output = RealRingElem;
    fn neg(self) -> RealRingElem {
        RealRingElem(-self.0)
    }
}

/// Complexity measure `μ(x, y) = −min(v_p(x), v_p(y))`.
pub fn mu(x: &RingElem, y: &RingElem) -> Result<i64> {
    let m = x.valuation_p()?.min(y.valuation_p()?);
    match m {
        Valuation::Finite(v) => Ok(-v),
        Valuation::Infinite => Err(Error::Precondition(
            "complexity measure of the zero vector".into(),
        )),
    }
}

/// The exponent `q_a` of the denominator pattern for a rotation by `aπ/n`.
pub fn q_of(a: u32, ctx: &Context) -> Result<u64> {
    let n = ctx.n();
    if a == 0 || a >= n / 2 {
        return Err(Error::OutOfRange {
            what: "rotation exponent a",
            value: a as i64,
            range: format!("1 <= a < n/2 = {}", n / 2),
        });
    }
    let k = ctx.two_adic();
    let g = num_integer::gcd(a, n);
    let ratio = n / g;
    let q = if ratio.is_power_of_two() {
        let j = ratio.trailing_zeros();
        (1u64 << (k - 1)) - (1u64 << (k - j))
    } else {
        1u64 << (k - 1)
    };
    Ok(q)
}

/// The element `β` (2 when `n ≡ 2 mod 4`, else `2cos(π/2^k)`) with its
/// per-angle exponent table, plus the data needed to compute β-adic
/// denominator exponents quickly.
#[derive(Debug, Clone)]
pub struct BetaConstant {
    ctx: Arc<Context>,
    beta: CycInt,
    q_table: Vec<u64>,
    division: DivisionKit,
    /// `2^{k-1}`: the power of β that is 2 times a unit.
    two_power: u64,
    /// Over `F_2`, `gcd(β^t mod Φ, Φ)` for `t = 1 .. 2^{k-1}-1`. The ideal
    /// `(β^t)` contains 2 for these `t`, so divisibility by `β^t` depends only
    /// on the residue mod 2, and membership in the image of that ideal is
    /// divisibility by this gcd.
    residue_gcds: Vec<f2::Poly>,
}

impl BetaConstant {
    pub fn new(ctx: &Arc<Context>) -> BetaConstant {
        let k = ctx.two_adic();
        let beta = if k == 1 {
            CycInt::from_int(ctx, 2)
        } else {
            let s = ctx.odd_part() as i64;
            &CycInt::zeta_pow(ctx, s) + &CycInt::zeta_pow(ctx, -s)
        };
        let q_table = (1..ctx.n() / 2)
            .map(|a| q_of(a, ctx).expect("a in range"))
            .collect();
        let division = DivisionKit::new(&beta).expect("beta is nonzero");
        let two_power = 1u64 << (k - 1);
        let phi = f2::Poly::from_bits(
            &ctx.phi_poly()
                .iter()
                .map(|c| (c % 2u8 != BigInt::zero()) as u8)
                .collect::<Vec<_>>(),
        );
        let beta_bar = f2::Poly::from_bits(&beta.parity_bits());
        let mut residue_gcds = Vec::new();
        let mut power = f2::Poly::one();
        for _ in 1..two_power {
            power = power.mul(&beta_bar).rem(&phi);
            residue_gcds.push(f2::gcd(power.clone(), phi.clone()));
        }
        BetaConstant {
            ctx: ctx.clone(),
            beta,
            q_table,
            division,
            two_power,
            residue_gcds,
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn beta(&self) -> &CycInt {
        &self.beta
    }

    /// `q_a` for `1 ≤ a < n/2`.
    pub fn q(&self, a: u32) -> Result<u64> {
        if a == 0 || a as usize > self.q_table.len() {
            return q_of(a, &self.ctx);
        }
        Ok(self.q_table[a as usize - 1])
    }

    pub fn q_table(&self) -> &[u64] {
        &self.q_table
    }

    /// Largest `t < 2^{k-1}` with `β^t | x`, read off the residue of `x` mod 2.
    /// Requires `x` not divisible by 2.
    fn residue_beta_power(&self, x: &CycInt) -> u64 {
        if self.residue_gcds.is_empty() {
            return 0;
        }
        let bits = f2::Poly::from_bits(&x.parity_bits());
        self.residue_gcds
            .iter()
            .take_while(|g| bits.rem(g).is_zero())
            .count() as u64
    }

    /// Denominator exponent `r` of a nonzero real element: the unique `r ≥ 0`
    /// with `x = w / β^r` and `β ∤ w`. Entries with no denominator report 0.
    pub fn exponent(&self, x: &RealRingElem) -> u64 {
        let m = x.log2denom();
        if m == 0 {
            return 0;
        }
        m * self.two_power - self.residue_beta_power(x.num())
    }

    /// Denominator exponent together with its witness `w = x · β^r`,
    /// computed by repeatedly dividing the numerator by `β`.
    pub fn beta_exponent(&self, x: &RealRingElem) -> Result<(u64, CycInt)> {
        if x.is_zero() {
            return Err(Error::Precondition(
                "denominator exponent of zero is undefined".into(),
            ));
        }
        let m = x.log2denom();
        let mut t = 0u64;
        let mut rest = x.num().clone();
        if m > 0 {
            while let Some(q) = self.division.quotient(&rest) {
                rest = q;
                t += 1;
                if t >= self.two_power {
                    return Err(Error::Integrity(
                        "normalized numerator divisible by 2".into(),
                    ));
                }
            }
        }
        let r = (m * self.two_power).saturating_sub(t);
        let w = RingElem::new(x.num() * &self.beta.pow(r as u32), m);
        if !w.is_integral() {
            return Err(Error::Integrity(
                "witness of the denominator exponent is not integral".into(),
            ));
        }
        Ok((r, w.num().clone()))
    }

    /// Whether `β` divides `w`.
    pub fn divides(&self, w: &CycInt) -> bool {
        self.division.divides(w)
    }
}

/// Polynomials over `F_2`, just enough for the residue test above.
mod f2 {
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct Poly(Vec<u8>);

    impl Poly {
        pub fn from_bits(bits: &[u8]) -> Poly {
            let mut p = Poly(bits.iter().map(|b| b & 1).collect());
            p.trim();
            p
        }

        pub fn one() -> Poly {
            Poly(vec![1])
        }

        fn trim(&mut self) {
            while self.0.last() == Some(&0) {
                self.0.pop();
            }
        }

        pub fn is_zero(&self) -> bool {
            self.0.is_empty()
        }

        fn degree(&self) -> Option<usize> {
            self.0.len().checked_sub(1)
        }

        pub fn mul(&self, other: &Poly) -> Poly {
            if self.is_zero() || other.is_zero() {
                return Poly(Vec::new());
            }
            let mut out = vec![0u8; self.0.len() + other.0.len() - 1];
            for (i, a) in self.0.iter().enumerate() {
                if *a == 1 {
                    for (j, b) in other.0.iter().enumerate() {
                        out[i + j] ^= b;
                    }
                }
            }
            Poly::from_bits(&out)
        }

        pub fn rem(&self, m: &Poly) -> Poly {
            let dm = m.degree().expect("division by the zero polynomial");
            let mut r = self.0.clone();
            while r.len() > dm {
                let top = r.len() - 1;
                if r[top] == 1 {
                    let shift = top - dm;
                    for (i, b) in m.0.iter().enumerate() {
                        r[shift + i] ^= b;
                    }
                }
                r.pop();
            }
            Poly::from_bits(&r)
        }
    }

    pub fn gcd(mut a: Poly, mut b: Poly) -> Poly {
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}
