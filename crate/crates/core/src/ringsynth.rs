//! The phase condition and its census, z-rotation classification, and the
//! column-reduction synthesis of arbitrary unitaries over `R_n` for
//! `n ∈ {2, 4, 6, 8, 12}`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith;
use crate::cyclo::{Context, CycInt, Valuation};
use crate::error::{Error, Result};
use crate::rings::{mu, RingElem};
use crate::su2::{Gate, GateSequence, UnitaryRn};

/// Outcome of the phase-condition test for one `n = 2^k s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseCondition {
    pub n: u64,
    pub s: u64,
    /// The smallest `t ≥ 1` with `2^t ≡ −1 (mod s)`; `Some(1)` when `s = 1`.
    pub t: Option<u64>,
}

impl PhaseCondition {
    pub fn holds(&self) -> bool {
        self.t.is_some()
    }
}

/// Whether some `t` has `2^t ≡ −1 (mod s)`, for the odd part `s` of `n`.
pub fn phase_condition(n: u64) -> Result<PhaseCondition> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidN(n as i64));
    }
    let (_, s) = arith::split_two_power(n);
    let t = odd_modulus_witness(s, arith::multiplicative_order(2, s));
    Ok(PhaseCondition { n, s, t })
}

/// With `ord` the order of 2 modulo the odd `s`: `−1` is a power of 2 exactly
/// when `ord` is even and `2^{ord/2} ≡ −1`, and then `ord/2` is the least
/// such exponent.
fn odd_modulus_witness(s: u64, ord: u64) -> Option<u64> {
    if s == 1 {
        return Some(1);
    }
    (ord % 2 == 0 && arith::pow_mod(2, ord / 2, s) == s - 1).then_some(ord / 2)
}

/// Smallest-prime-factor table for fast factorization up to a limit.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: u64) -> FactorSieve {
        let limit = limit.max(2) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        FactorSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn factorize(&self, mut m: u64) -> Vec<(u64, u32)> {
        assert!(m <= self.limit(), "{m} exceeds the sieve limit");
        let mut out: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            m /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The phase condition for an odd modulus, using the table to factor
    /// `φ(s)`.
    pub fn condition_for_odd(&self, s: u64) -> bool {
        if s == 1 {
            return true;
        }
        let phi = self
            .factorize(s)
            .iter()
            .fold(s, |acc, &(p, _)| acc / p * (p - 1));
        let ord = arith::multiplicative_order_with(2, s, phi, &self.factorize(phi));
        odd_modulus_witness(s, ord).is_some()
    }
}

/// Condition values for the even `n` in `[start, end]`, computed in
/// parallel and returned in increasing order of `n`.
pub fn census_range(sieve: &FactorSieve, start: u64, end: u64) -> Vec<(u64, bool)> {
    let first = start.max(2).div_ceil(2);
    let last = end / 2;
    (first..=last)
        .into_par_iter()
        .map(|h| {
            let n = 2 * h;
            (n, sieve.condition_for_odd(arith::split_two_power(n).1))
        })
        .collect()
}

/// Summary of the census up to `max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub max: u64,
    pub satisfied: u64,
    pub total: u64,
}

impl Census {
    /// The exact fraction `f_N` of even `n ≤ N` satisfying the condition.
    pub fn fraction(&self) -> Ratio<u64> {
        Ratio::new(self.satisfied, self.total.max(1))
    }
}

/// `f_N` over all even `2 ≤ n ≤ max`.
pub fn fn_census(max: u64) -> Result<Census> {
    if max < 2 {
        return Err(Error::OutOfRange {
            what: "census bound",
            value: max as i64,
            range: "N >= 2".into(),
        });
    }
    let sieve = FactorSieve::new(max);
    let values = census_range(&sieve, 2, max);
    Ok(Census {
        max,
        satisfied: values.iter().filter(|(_, c)| *c).count() as u64,
        total: values.len() as u64,
    })
}

/// `j` with `U = U_z(jπ/n)`, for a diagonal `U` with `U₀₀ = 1`; `None` when
/// `U₁₁` is not a power of `ζ`.
pub fn z_rotation_classify(u: &UnitaryRn) -> Result<Option<u32>> {
    if !u.get(0, 1).is_zero() || !u.get(1, 0).is_zero() || !u.get(0, 0).is_one() {
        return Err(Error::Precondition(
            "z-rotation classification needs diag(1, u)".into(),
        ));
    }
    Ok(u.get(1, 1).as_zeta_power())
}

/// For `7 | n`: the element `(−3 + √−7)/4 = ω²/2` with
/// `ω = 1 + ζ₇ + ζ₇² + ζ₇⁴`, which has modulus one but is not a root of unity.
pub fn modulus_one_non_root(ctx: &Arc<Context>) -> Option<RingElem> {
    if ctx.n() % 7 != 0 {
        return None;
    }
    let step = (ctx.order() / 7) as i64;
    let omega = [0, 1, 2, 4]
        .iter()
        .fold(CycInt::zero(ctx), |acc, &e| &acc + &CycInt::zeta_pow(ctx, e * step));
    Some(RingElem::new(&omega * &omega, 1))
}

fn require_valuation(ctx: &Context) -> Result<()> {
    if ctx.supports_valuation() {
        Ok(())
    } else {
        Err(Error::UnsupportedValuation(ctx.n()))
    }
}

/// Result of the exhaustive mod-2 check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLemmaReport {
    pub n: u32,
    /// Number of orbit representatives of unit residues mod 2.
    pub representatives: usize,
    /// Number of pairs satisfying the hypotheses.
    pub pairs: usize,
    /// Pairs for which no rotation `ζ^k` works.
    pub failures: usize,
}

impl FiniteLemmaReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// For every pair `(a, b)` of residues mod 2 with `v(a) = v(b) = 0` and
/// `|a|² + |b|² ≡ 0`, some `k ∈ [1, 2n]` has `v(mod2(a + ζ^k b)) > v(2)/2`.
/// Residues are reduced to their smallest rotation `mod2(x·ζ^k)` first.
pub fn verify_finite_lemma(n: u32) -> Result<FiniteLemmaReport> {
    let ctx = Context::new(n as i64)?;
    require_valuation(&ctx)?;
    let d = ctx.degree();
    let order = ctx.order() as i64;
    let v2 = ctx.valuation_of_two()?;
    let rep = |x: &CycInt| {
        (1..=order)
            .map(|k| x.mul_zeta(k).mod2())
            .min_by(|a, b| a.coeffs().cmp(b.coeffs()))
            .expect("2n rotations")
    };
    let mut sprime = BTreeSet::new();
    for bits in 0u32..(1 << d) {
        let coeffs: Vec<BigInt> = (0..d).map(|i| BigInt::from((bits >> i) & 1)).collect();
        let x = CycInt::from_coeffs(&ctx, coeffs)?;
        if x.valuation_p()? == Valuation::Finite(0) {
            sprime.insert(rep(&x));
        }
    }
    let sprime: Vec<CycInt> = sprime.into_iter().collect();
    let abs2 = |x: &CycInt| x * &x.conj();
    let mut pairs = 0;
    let mut failures = 0;
    for a in &sprime {
        for b in &sprime {
            if !(&abs2(a) + &abs2(b)).mod2().is_zero() {
                continue;
            }
            pairs += 1;
            let mut found = false;
            for k in 1..=order {
                let v = (a + &b.mul_zeta(k)).mod2().valuation_p()?;
                if match v {
                    Valuation::Finite(v) => 2 * v > v2,
                    Valuation::Infinite => true,
                } {
                    found = true;
                    break;
                }
            }
            if !found {
                failures += 1;
            }
        }
    }
    Ok(FiniteLemmaReport {
        n,
        representatives: sprime.len(),
        pairs,
        failures,
    })
}

/// A unit vector `(x, y)` over `R_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnRn {
    pub x: RingElem,
    pub y: RingElem,
}

impl ColumnRn {
    /// Checks `|x|² + |y|² = 1`.
    pub fn new(x: RingElem, y: RingElem) -> Result<ColumnRn> {
        if !(x.abs2().inner() + y.abs2().inner()).is_one() {
            return Err(Error::Precondition("column is not normalized".into()));
        }
        Ok(ColumnRn { x, y })
    }

    pub fn first_of(u: &UnitaryRn) -> ColumnRn {
        let (x, y) = u.first_column();
        ColumnRn { x, y }
    }

    pub fn mu(&self) -> Result<i64> {
        mu(&self.x, &self.y)
    }
}

/// `H₀·U_z(kπ/n)·(x, y)ᵀ`.
fn apply_step(col: &ColumnRn, k: i64) -> ColumnRn {
    let ctx = col.x.ctx();
    let w = RingElem::new(
        &CycInt::one(ctx) + &CycInt::zeta_pow(ctx, ctx.n() as i64 / 2),
        1,
    );
    let yk = col.y.mul_zeta(k);
    ColumnRn {
        x: &w * &(&col.x + &yk),
        y: &w * &(&col.x - &yk),
    }
}

/// Some `k ∈ [1, 2n]` for which `H₀·U_z(kπ/n)` strictly lowers the
/// complexity measure, and the resulting column.
pub fn reduce_column_step(col: &ColumnRn) -> Result<(u32, ColumnRn)> {
    let ctx = col.x.ctx().clone();
    require_valuation(&ctx)?;
    let mu0 = col.mu()?;
    if mu0 <= ctx.mu_n()? {
        return Err(Error::Precondition(format!(
            "complexity {mu0} is already at most {}",
            ctx.mu_n()?
        )));
    }
    for k in 1..=ctx.order() {
        let next = apply_step(col, k as i64);
        if next.mu()? < mu0 {
            return Ok((k, next));
        }
    }
    Err(Error::NoReducingK { mu: mu0 })
}

/// A unitary of the group whose first column is `col`, for columns of low
/// complexity, together with a word for it.
pub fn base_case_column(col: &ColumnRn) -> Result<(UnitaryRn, GateSequence)> {
    let ctx = col.x.ctx().clone();
    require_valuation(&ctx)?;
    if col.mu()? > ctx.mu_n()? {
        return Err(Error::Precondition(format!(
            "complexity {} exceeds the base threshold {}",
            col.mu()?,
            ctx.mu_n()?
        )));
    }
    let n = ctx.n();
    let ni = n as i64;
    let order = ctx.order() as i64;
    let one_i = RingElem::from(&CycInt::one(&ctx) + &CycInt::zeta_pow(&ctx, ni / 2));
    let xp = &one_i * &col.x;
    let yp = &one_i * &col.y;
    if !xp.is_integral() || !yp.is_integral() {
        return Err(Error::Integrity(
            "(1+i)·column is not integral below the base threshold".into(),
        ));
    }
    let w = |j: i64| {
        let j = j.rem_euclid(order) as u32;
        (j != 0).then_some(Gate::W(j))
    };
    let word = if col.y.is_zero() {
        let j = col.x.as_zeta_power().ok_or_else(not_classified)?;
        GateSequence::new(n, j as i64, Vec::new())?
    } else if col.x.is_zero() {
        let j = col.y.as_zeta_power().ok_or_else(not_classified)?;
        GateSequence::new(n, j as i64 - ni / 2, vec![Gate::H, Gate::S, Gate::S, Gate::H])?
    } else {
        let j = xp.as_zeta_power().ok_or_else(not_classified)? as i64;
        let l = yp.as_zeta_power().ok_or_else(not_classified)? as i64;
        let gates = [w(l - j), Some(Gate::H), w(-(l + j))].into_iter().flatten().collect();
        GateSequence::new(n, j + 3 * ni / 2, gates)?
    };
    let v = word.eval(&ctx)?;
    if ColumnRn::first_of(&v) != *col {
        return Err(Error::Integrity("base-case unitary has the wrong first column".into()));
    }
    Ok((v, word))
}

fn not_classified() -> Error {
    Error::Integrity("low-complexity column matches none of the three base cases".into())
}

/// `j` with `U = V·U_z(jπ/n)`, for unitaries sharing their first column.
pub fn complete_unitary(u: &UnitaryRn, v: &UnitaryRn) -> Result<u32> {
    if u.first_column() != v.first_column() {
        return Err(Error::Precondition("unitaries have different first columns".into()));
    }
    let ratio = &u.det() * &v.det().conj();
    let j = ratio.as_zeta_power().ok_or(Error::NoPhaseMatch)?;
    let rebuilt = v.mul(&UnitaryRn::uz_power(u.ctx(), j as i64)?);
    if rebuilt != *u {
        return Err(Error::Integrity("completion does not reproduce the unitary".into()));
    }
    Ok(j)
}

/// Output of column-reduction synthesis.
#[derive(Debug, Clone)]
pub struct RingSynthesis {
    pub circuit: GateSequence,
    /// The `k` chosen at each reduction step.
    pub steps: Vec<u32>,
    pub initial_mu: i64,
}

/// Synthesize any unitary over `R_n`, `n ∈ {2, 4, 6, 8, 12}`, exactly
/// (including its global phase).
pub fn synthesize_ring(u: &UnitaryRn) -> Result<RingSynthesis> {
    let ctx = u.ctx().clone();
    require_valuation(&ctx)?;
    let n = ctx.n();
    let order = ctx.order();
    let mu_n = ctx.mu_n()?;
    let h0 = UnitaryRn::h0(&ctx);
    let mut cur = u.clone();
    let mut col = ColumnRn::first_of(u);
    let initial_mu = col.mu()?;
    let mut steps = Vec::new();
    while col.mu()? > mu_n {
        let (k, next) = reduce_column_step(&col)?;
        cur = h0.mul(&UnitaryRn::uz_power(&ctx, (k % order) as i64)?).mul(&cur);
        col = next;
        steps.push(k);
    }
    debug_assert_eq!(ColumnRn::first_of(&cur), col);
    let (v, v_word) = base_case_column(&col)?;
    let j = complete_unitary(&cur, &v)?;
    let mut gates = Vec::new();
    let mut phase = 0i64;
    for &k in &steps {
        if k != order {
            gates.push(Gate::W(order - k));
        }
        gates.push(Gate::H);
        phase += 3 * n as i64 / 2;
    }
    gates.extend_from_slice(v_word.gates());
    phase += v_word.phase() as i64;
    if j != 0 {
        gates.push(Gate::W(j));
    }
    let circuit = GateSequence::new(n, phase, gates)?;
    if circuit.eval(&ctx)? != *u {
        return Err(Error::Integrity("ring synthesis does not reproduce the input".into()));
    }
    Ok(RingSynthesis {
        circuit,
        steps,
        initial_mu,
    })
}

/// Whether the ring layer supports `n`.
pub fn ring_layer_supported(n: u32) -> bool {
    crate::cyclo::VALUATION_SUPPORTED.contains(&n)
}

/// Convenience: build a diagonal unitary `diag(1, u)`.
pub fn diag_one(u: RingElem) -> Result<UnitaryRn> {
    let ctx = u.ctx().clone();
    let zero = RingElem::zero(&ctx);
    UnitaryRn::new([[RingElem::one(&ctx), zero.clone()], [zero, u]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::Synthesizer;

    #[test]
    fn phase_condition_examples() {
        let c = phase_condition(12).unwrap();
        assert_eq!((c.s, c.t), (3, Some(1)));
        assert!(phase_condition(16).unwrap().holds());
        assert!(!phase_condition(14).unwrap().holds());
        assert!(phase_condition(10).unwrap().holds());
        assert!(phase_condition(7).is_err());
    }

    #[test]
    fn witness_matches_brute_force() {
        let sieve = FactorSieve::new(2000);
        for s in (1u64..2000).step_by(2) {
            let brute = (1..=s).find(|&t| arith::pow_mod(2, t, s) == (s - 1) % s.max(1));
            let expected = if s == 1 { Some(1) } else { brute };
            let got = phase_condition(2 * s).unwrap().t;
            assert_eq!(got, expected, "s = {s}");
            assert_eq!(sieve.condition_for_odd(s), expected.is_some(), "s = {s}");
        }
    }

    #[test]
    fn small_census() {
        assert_eq!(fn_census(2).unwrap().fraction(), Ratio::new(1, 1));
        assert_eq!(fn_census(14).unwrap().fraction(), Ratio::new(6, 7));
        assert!(fn_census(1).is_err());
    }

    #[test]
    fn z_rotations() {
        let c = Context::new(8).unwrap();
        assert_eq!(z_rotation_classify(&UnitaryRn::s(&c)).unwrap(), Some(4));
        assert_eq!(z_rotation_classify(&UnitaryRn::identity(&c)).unwrap(), Some(0));
        assert!(z_rotation_classify(&UnitaryRn::h0(&c)).is_err());
    }

    #[test]
    fn non_root_unit() {
        for n in [14i64, 28] {
            let c = Context::new(n).unwrap();
            let u = modulus_one_non_root(&c).unwrap();
            assert!(u.abs2().is_one());
            assert_eq!(u.as_zeta_power(), None);
            let d = diag_one(u).unwrap();
            assert_eq!(z_rotation_classify(&d).unwrap(), None);
            let syn = Synthesizer::with_context(&c).unwrap();
            assert!(!syn.membership(&d).unwrap().is_member());
        }
        assert!(modulus_one_non_root(&Context::new(12).unwrap()).is_none());
    }

    #[test]
    fn finite_lemma_small() {
        for n in [2, 4, 6] {
            let r = verify_finite_lemma(n).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.pairs > 0);
        }
        assert_eq!(verify_finite_lemma(10).unwrap_err(), Error::UnsupportedValuation(10));
    }

    #[test]
    fn base_cases() {
        let c = Context::new(4).unwrap();
        let one = RingElem::one(&c);
        let zero = RingElem::zero(&c);
        let (v, _) = base_case_column(&ColumnRn::new(one.clone(), zero.clone()).unwrap()).unwrap();
        assert!(v.is_identity());
        let (v, word) = base_case_column(&ColumnRn::new(zero, one).unwrap()).unwrap();
        assert_eq!(ColumnRn::first_of(&v).y, RingElem::one(&c));
        assert_eq!(word.gates(), &[Gate::H, Gate::S, Gate::S, Gate::H]);
        let h = UnitaryRn::h0(&c);
        let (v, _) = base_case_column(&ColumnRn::first_of(&h)).unwrap();
        assert_eq!(complete_unitary(&h, &v).unwrap() as usize, {
            let mut j = 0;
            while v.mul(&UnitaryRn::uz_power(&c, j).unwrap()) != h {
                j += 1;
            }
            j as usize
        });
    }

    #[test]
    fn completion() {
        let c = Context::new(6).unwrap();
        let v = UnitaryRn::h0(&c).mul(&UnitaryRn::w(&c));
        assert_eq!(complete_unitary(&v, &v).unwrap(), 0);
        assert_eq!(complete_unitary(&v.mul(&UnitaryRn::s(&c)), &v).unwrap(), 3);
    }

    #[test]
    fn ring_synthesis_of_h0() {
        for n in [2i64, 4, 6, 8, 12] {
            let c = Context::new(n).unwrap();
            let h = UnitaryRn::h0(&c);
            let out = synthesize_ring(&h).unwrap();
            assert_eq!(out.circuit.eval(&c).unwrap(), h);
        }
    }
}
