//! 2×2 unitaries over `R_n`, the gate generators, gate sequences and the
//! exact text and JSON formats.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cyclo::{Context, CycInt};
use crate::error::{Error, Result};
use crate::rings::RingElem;

/// A rotation axis of the Bloch sphere, in the fixed order `x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Row and column index of the axis in Bloch-sphere matrices.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Axis> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            _ => Err(Error::Parse(format!("unknown axis {s:?}"))),
        }
    }
}

/// A 2×2 unitary with entries in `R_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitaryRn {
    e: [[RingElem; 2]; 2],
}

impl UnitaryRn {
    /// Build from entries, checking `U·U† = I` exactly.
    pub fn new(entries: [[RingElem; 2]; 2]) -> Result<UnitaryRn> {
        let n = entries[0][0].ctx().n();
        for row in &entries {
            for x in row {
                if x.ctx().n() != n {
                    return Err(Error::ContextMismatch {
                        left: n,
                        right: x.ctx().n(),
                    });
                }
            }
        }
        let u = UnitaryRn { e: entries };
        if !u.mul(&u.adjoint()).is_identity() {
            return Err(Error::NotUnitary);
        }
        Ok(u)
    }

    pub fn identity(ctx: &Arc<Context>) -> UnitaryRn {
        UnitaryRn::diag(RingElem::one(ctx), RingElem::one(ctx))
    }

    fn diag(a: RingElem, d: RingElem) -> UnitaryRn {
        let z = RingElem::zero(a.ctx());
        UnitaryRn {
            e: [[a, z.clone()], [z, d]],
        }
    }

    /// `ζ^a · I`.
    pub fn scalar(ctx: &Arc<Context>, a: i64) -> UnitaryRn {
        UnitaryRn::diag(RingElem::zeta_pow(ctx, a), RingElem::zeta_pow(ctx, a))
    }

    /// `H₀ = ½ [[1+i, 1+i], [1+i, −1−i]]`.
    pub fn h0(ctx: &Arc<Context>) -> UnitaryRn {
        let i = ctx.n() as i64 / 2;
        let w = RingElem::new(&CycInt::one(ctx) + &CycInt::zeta_pow(ctx, i), 1);
        UnitaryRn {
            e: [[w.clone(), w.clone()], [w.clone(), -w]],
        }
    }

    /// `S = diag(1, i)`.
    pub fn s(ctx: &Arc<Context>) -> UnitaryRn {
        UnitaryRn::uz_power_unchecked(ctx, ctx.n() as i64 / 2)
    }

    /// `W = U_z(π/n) = diag(1, ζ)`.
    pub fn w(ctx: &Arc<Context>) -> UnitaryRn {
        UnitaryRn::uz_power_unchecked(ctx, 1)
    }

    fn uz_power_unchecked(ctx: &Arc<Context>, a: i64) -> UnitaryRn {
        UnitaryRn::diag(RingElem::one(ctx), RingElem::zeta_pow(ctx, a))
    }

    /// `U_z(aπ/n) = diag(1, ζ^a)` for `0 ≤ a < 2n`.
    pub fn uz_power(ctx: &Arc<Context>, a: i64) -> Result<UnitaryRn> {
        check_exponent(ctx, a)?;
        Ok(UnitaryRn::uz_power_unchecked(ctx, a))
    }

    /// The Pauli matrix for an axis.
    pub fn pauli(ctx: &Arc<Context>, p: Axis) -> UnitaryRn {
        let one = RingElem::one(ctx);
        let zero = RingElem::zero(ctx);
        let i = RingElem::zeta_pow(ctx, ctx.n() as i64 / 2);
        match p {
            Axis::X => UnitaryRn {
                e: [[zero.clone(), one.clone()], [one, zero]],
            },
            Axis::Y => UnitaryRn {
                e: [[zero.clone(), -&i], [i, zero]],
            },
            Axis::Z => UnitaryRn::diag(one.clone(), -one),
        }
    }

    /// `U_{±p}(aπ/n) = (1+ζ^a)/2 · I ± (1−ζ^a)/2 · P` for `0 ≤ a < 2n`.
    pub fn u_axis(ctx: &Arc<Context>, p: Axis, positive: bool, a: i64) -> Result<UnitaryRn> {
        check_exponent(ctx, a)?;
        Ok(UnitaryRn::u_axis_unchecked(ctx, p, positive, a))
    }

    pub(crate) fn u_axis_unchecked(ctx: &Arc<Context>, p: Axis, positive: bool, a: i64) -> UnitaryRn {
        let one = CycInt::one(ctx);
        let za = CycInt::zeta_pow(ctx, a);
        let c = RingElem::new(&one + &za, 1);
        let mut s = RingElem::new(&one - &za, 1);
        if !positive {
            s = -s;
        }
        let pauli = UnitaryRn::pauli(ctx, p);
        let mut e = pauli.e.clone();
        for (r, row) in e.iter_mut().enumerate() {
            for (col, x) in row.iter_mut().enumerate() {
                let mut v = &s * &pauli.e[r][col];
                if r == col {
                    v = &v + &c;
                }
                *x = v;
            }
        }
        UnitaryRn { e }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.e[0][0].ctx()
    }

    pub fn entries(&self) -> &[[RingElem; 2]; 2] {
        &self.e
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElem {
        &self.e[r][c]
    }

    /// Exact matrix product `self · other`.
    pub fn mul(&self, other: &UnitaryRn) -> UnitaryRn {
        let a = &self.e;
        let b = &other.e;
        let entry = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
        UnitaryRn {
            e: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> UnitaryRn {
        let a = &self.e;
        UnitaryRn {
            e: [
                [a[0][0].conj(), a[1][0].conj()],
                [a[0][1].conj(), a[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> RingElem {
        let a = &self.e;
        &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
    }

    /// Multiply every entry by `ζ^j`.
    pub fn mul_zeta(&self, j: i64) -> UnitaryRn {
        UnitaryRn {
            e: [
                [self.e[0][0].mul_zeta(j), self.e[0][1].mul_zeta(j)],
                [self.e[1][0].mul_zeta(j), self.e[1][1].mul_zeta(j)],
            ],
        }
    }

    /// Multiply every entry by a ring element.
    pub fn scale(&self, lambda: &RingElem) -> UnitaryRn {
        UnitaryRn {
            e: [
                [lambda * &self.e[0][0], lambda * &self.e[0][1]],
                [lambda * &self.e[1][0], lambda * &self.e[1][1]],
            ],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].is_one() && self.e[1][1].is_one() && self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    /// The scalar `λ` with `self = λ·I`, if the matrix is scalar.
    pub fn as_scalar(&self) -> Option<&RingElem> {
        (self.e[0][1].is_zero() && self.e[1][0].is_zero() && self.e[0][0] == self.e[1][1])
            .then_some(&self.e[0][0])
    }

    /// First column `(U₀₀, U₁₀)`.
    pub fn first_column(&self) -> (RingElem, RingElem) {
        (self.e[0][0].clone(), self.e[1][0].clone())
    }

    /// Largest denominator exponent over the entries.
    pub fn max_log2denom(&self) -> u64 {
        self.e.iter().flatten().map(RingElem::log2denom).max().unwrap_or(0)
    }

    /// Serialize to the matrix JSON format with a common denominator `2^m`.
    pub fn to_json(&self) -> Value {
        let m = self.max_log2denom();
        let entries: Vec<Vec<Vec<Value>>> = self
            .e
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.num()
                            .shl(m - x.log2denom())
                            .coeffs()
                            .iter()
                            .map(bigint_to_json)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        json!({
            "n": self.ctx().n(),
            "denom_exp": m,
            "entries": entries,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("JSON values always serialize")
    }

    /// Parse the matrix JSON format and check unitarity.
    pub fn from_json(value: &Value) -> Result<UnitaryRn> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix JSON must be an object".into()))?;
        let n = json_integer(obj.get("n"), "n")?;
        let n = i64::try_from(&n).map_err(|_| Error::Parse(format!("field \"n\" = {n} is out of range")))?;
        let ctx = Context::new(n)?;
        let m = json_integer(obj.get("denom_exp"), "denom_exp")?;
        let m = u64::try_from(&m)
            .map_err(|_| Error::Parse(format!("field \"denom_exp\" = {m} must be a nonnegative integer")))?;
        let rows = obj
            .get("entries")
            .and_then(Value::as_array)
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Error::Parse("field \"entries\" must be a 2x2 array".into()))?;
        let mut parsed = Vec::with_capacity(4);
        for (r, row) in rows.iter().enumerate() {
            let cols = row
                .as_array()
                .filter(|c| c.len() == 2)
                .ok_or_else(|| Error::Parse(format!("entries[{r}] must have two entries")))?;
            for (c, cell) in cols.iter().enumerate() {
                let field = format!("entries[{r}][{c}]");
                let coeffs = cell
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("{field} must be an array of integers")))?;
                if coeffs.len() != ctx.degree() {
                    return Err(Error::Parse(format!(
                        "{field} has {} coefficients, expected d = {} for n = {n}",
                        coeffs.len(),
                        ctx.degree()
                    )));
                }
                let mut v = Vec::with_capacity(coeffs.len());
                for (j, x) in coeffs.iter().enumerate() {
                    v.push(json_integer(Some(x), &format!("{field}[{j}]"))?);
                }
                parsed.push(RingElem::new(CycInt::from_coeffs(&ctx, v)?, m));
            }
        }
        let mut it = parsed.into_iter();
        let mut next = || it.next().expect("four entries");
        UnitaryRn::new([[next(), next()], [next(), next()]])
    }

    pub fn from_json_str(text: &str) -> Result<UnitaryRn> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        UnitaryRn::from_json(&value)
    }
}

fn check_exponent(ctx: &Context, a: i64) -> Result<()> {
    let order = ctx.order() as i64;
    if (0..order).contains(&a) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "rotation exponent",
            value: a,
            range: format!("0 <= a < 2n = {order}"),
        })
    }
}

fn bigint_to_json(x: &BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn json_integer(value: Option<&Value>, field: &str) -> Result<BigInt> {
    let v = value.ok_or_else(|| Error::Parse(format!("missing field {field:?}")))?;
    let num = v
        .as_number()
        .ok_or_else(|| Error::Parse(format!("field {field:?} must be an integer, got {v}")))?;
    BigInt::from_str(&num.to_string())
        .map_err(|_| Error::Parse(format!("field {field:?} must be an integer, got {num}")))
}

impl fmt::Debug for UnitaryRn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// `U = λ·V` for a scalar `λ`, returned when it exists.
pub fn equal_up_to_phase(u: &UnitaryRn, v: &UnitaryRn) -> Option<RingElem> {
    u.mul(&v.adjoint()).as_scalar().cloned()
}

/// One gate of a circuit word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H,
    S,
    /// `W^j = U_z(jπ/n)`.
    W(u32),
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H => f.write_str("H"),
            Gate::S => f.write_str("S"),
            Gate::W(1) => f.write_str("W"),
            Gate::W(j) => write!(f, "W^{j}"),
        }
    }
}

/// A circuit `ζ^phase · g₁ g₂ … g_t`, leftmost token the leftmost factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateSequence {
    n: u32,
    phase: u32,
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(n: u32, phase: i64, gates: Vec<Gate>) -> Result<GateSequence> {
        let order = 2 * n;
        for g in &gates {
            if let Gate::W(j) = g {
                if *j == 0 || *j >= order {
                    return Err(Error::OutOfRange {
                        what: "W exponent",
                        value: *j as i64,
                        range: format!("1 <= j < 2n = {order}"),
                    });
                }
            }
        }
        Ok(GateSequence {
            n,
            phase: phase.rem_euclid(order as i64) as u32,
            gates,
        })
    }

    pub fn empty(n: u32) -> GateSequence {
        GateSequence {
            n,
            phase: 0,
            gates: Vec::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of `W` gates: the sum of the exponents of all `W^j` tokens.
    pub fn cost(&self) -> u64 {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::W(j) => *j as u64,
                _ => 0,
            })
            .sum()
    }

    /// Parse the circuit text format for gate-set parameter `n`.
    pub fn parse(text: &str, n: u32) -> Result<GateSequence> {
        let order = 2 * n;
        let mut phase = 0i64;
        let mut gates = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            if let Some(inner) = tok.strip_prefix("PH[").and_then(|t| t.strip_suffix(']')) {
                if pos != 0 {
                    return Err(Error::Parse(format!(
                        "phase token {tok:?} must come first and appear once"
                    )));
                }
                phase = inner
                    .parse::<i64>()
                    .ok()
                    .filter(|a| (0..order as i64).contains(a))
                    .ok_or_else(|| {
                        Error::Parse(format!("phase token {tok:?} needs an integer in [0, {order})"))
                    })?;
                continue;
            }
            let gate = match tok {
                "H" => Gate::H,
                "S" => Gate::S,
                "W" => Gate::W(1),
                _ => {
                    let j = tok
                        .strip_prefix("W^")
                        .and_then(|j| j.parse::<u32>().ok())
                        .ok_or_else(|| Error::Parse(format!("unknown token {tok:?}")))?;
                    if j == 0 || j >= order {
                        return Err(Error::Parse(format!(
                            "token {tok:?}: exponent must lie in [1, {order})"
                        )));
                    }
                    Gate::W(j)
                }
            };
            gates.push(gate);
        }
        GateSequence::new(n, phase, gates)
    }

    /// Exact product `ζ^phase · Π gates`.
    pub fn eval(&self, ctx: &Arc<Context>) -> Result<UnitaryRn> {
        if ctx.n() != self.n {
            return Err(Error::ContextMismatch {
                left: self.n,
                right: ctx.n(),
            });
        }
        let h = UnitaryRn::h0(ctx);
        let s = UnitaryRn::s(ctx);
        let mut acc = UnitaryRn::scalar(ctx, self.phase as i64);
        for g in &self.gates {
            acc = match g {
                Gate::H => acc.mul(&h),
                Gate::S => acc.mul(&s),
                Gate::W(j) => acc.mul(&UnitaryRn::uz_power_unchecked(ctx, *j as i64)),
            };
        }
        Ok(acc)
    }

    /// Concatenate, multiplying the phases.
    pub fn then(&self, other: &GateSequence) -> GateSequence {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        GateSequence {
            n: self.n,
            phase: (self.phase + other.phase) % (2 * self.n),
            gates,
        }
    }

    pub fn with_phase(&self, phase: i64) -> GateSequence {
        GateSequence {
            n: self.n,
            phase: phase.rem_euclid(2 * self.n as i64) as u32,
            gates: self.gates.clone(),
        }
    }
}

impl fmt::Display for GateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(self.gates.len() + 1);
        if self.phase != 0 || self.gates.is_empty() {
            parts.push(format!("PH[{}]", self.phase));
        }
        parts.extend(self.gates.iter().map(Gate::to_string));
        f.write_str(&parts.join(" "))
    }
}

/// Evaluate a sequence in its own ring.
pub fn eval_sequence(seq: &GateSequence, ctx: &Arc<Context>) -> Result<UnitaryRn> {
    seq.eval(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: i64) -> Arc<Context> {
        Context::new(n).unwrap()
    }

    #[test]
    fn generators_are_unitary() {
        for n in [2, 4, 6, 12, 16] {
            let c = ctx(n);
            for u in [UnitaryRn::h0(&c), UnitaryRn::s(&c), UnitaryRn::w(&c)] {
                assert!(UnitaryRn::new(u.entries().clone()).is_ok());
            }
            for p in Axis::ALL {
                for a in 0..2 * n {
                    for sign in [true, false] {
                        let u = UnitaryRn::u_axis(&c, p, sign, a).unwrap();
                        assert!(u.mul(&u.adjoint()).is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn generator_identities() {
        for n in [2, 4, 6, 8, 12] {
            let c = ctx(n);
            let w = UnitaryRn::w(&c);
            let mut acc = UnitaryRn::identity(&c);
            for _ in 0..n / 2 {
                acc = acc.mul(&w);
            }
            assert_eq!(acc, UnitaryRn::s(&c));
            let h = UnitaryRn::h0(&c);
            assert_eq!(h.mul(&h), UnitaryRn::scalar(&c, n / 2));
            assert_eq!(h.det(), RingElem::zeta_pow(&c, 3 * n / 2));
            assert_eq!(h.adjoint(), h.mul_zeta(3 * n / 2));
            for a in 0..2 * n {
                assert_eq!(UnitaryRn::uz_power(&c, a).unwrap().det(), RingElem::zeta_pow(&c, a));
            }
        }
    }

    #[test]
    fn axis_rotations() {
        let c = ctx(8);
        let h = UnitaryRn::h0(&c);
        let s = UnitaryRn::s(&c);
        let sh = s.mul(&h);
        for a in 0..16 {
            let z = UnitaryRn::uz_power(&c, a).unwrap();
            assert_eq!(UnitaryRn::u_axis(&c, Axis::Z, true, a).unwrap(), z);
            assert_eq!(UnitaryRn::u_axis(&c, Axis::X, true, a).unwrap(), h.mul(&z).mul(&h.adjoint()));
            assert_eq!(UnitaryRn::u_axis(&c, Axis::Y, true, a).unwrap(), sh.mul(&z).mul(&sh.adjoint()));
            for p in Axis::ALL {
                let plus = UnitaryRn::u_axis(&c, p, true, a).unwrap();
                let minus = UnitaryRn::u_axis(&c, p, false, a).unwrap();
                assert_eq!(plus.mul(&minus), UnitaryRn::scalar(&c, a));
            }
        }
        for p in Axis::ALL {
            let one = UnitaryRn::u_axis(&c, p, true, 1).unwrap();
            let mut acc = UnitaryRn::identity(&c);
            for _ in 0..4 {
                acc = acc.mul(&one);
            }
            assert_eq!(acc, UnitaryRn::u_axis(&c, p, true, 4).unwrap());
        }
    }

    #[test]
    fn sequences() {
        let c = ctx(4);
        assert!(GateSequence::empty(4).eval(&c).unwrap().is_identity());
        let hh = GateSequence::parse("H H", 4).unwrap();
        assert_eq!(hh.eval(&c).unwrap(), UnitaryRn::scalar(&c, 2));
        let s4 = GateSequence::parse("S S S S", 4).unwrap();
        assert!(s4.eval(&c).unwrap().is_identity());
        let seq = GateSequence::parse("PH[3] H W^3 S W", 4).unwrap();
        assert_eq!(seq.to_string(), "PH[3] H W^3 S W");
        assert_eq!(seq.cost(), 4);
        assert_eq!(GateSequence::parse(&seq.to_string(), 4).unwrap(), seq);
        assert_eq!(GateSequence::empty(4).to_string(), "PH[0]");
        assert!(GateSequence::parse("H PH[1]", 4).is_err());
        assert!(GateSequence::parse("W^8", 4).is_err());
        assert!(GateSequence::parse("T", 4).is_err());
        assert!(GateSequence::parse("PH[8]", 4).is_err());
    }

    #[test]
    fn phase_comparison() {
        let c = ctx(6);
        let u = UnitaryRn::h0(&c).mul(&UnitaryRn::w(&c));
        assert!(equal_up_to_phase(&u, &u).unwrap().is_one());
        assert_eq!(
            equal_up_to_phase(&u.mul_zeta(1), &u).unwrap(),
            RingElem::zeta_pow(&c, 1)
        );
        assert!(equal_up_to_phase(&UnitaryRn::h0(&c), &UnitaryRn::s(&c)).is_none());
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(12);
        let u = GateSequence::parse("PH[5] H W^3 H S W H", 12)
            .unwrap()
            .eval(&c)
            .unwrap();
        let text = u.to_json_string();
        assert_eq!(UnitaryRn::from_json_str(&text).unwrap(), u);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad_len = r#"{"n": 2, "denom_exp": 0, "entries": [[[1], [0, 0]], [[0, 0], [1, 0]]]}"#;
        let err = UnitaryRn::from_json_str(bad_len).unwrap_err();
        assert!(err.to_string().contains("entries[0][0]"), "{err}");
        let bad_num = r#"{"n": 2, "denom_exp": 0, "entries": [[[1.5, 0], [0, 0]], [[0, 0], [1, 0]]]}"#;
        let err = UnitaryRn::from_json_str(bad_num).unwrap_err();
        assert!(err.to_string().contains("entries[0][0][0]"), "{err}");
        let not_unitary = r#"{"n": 2, "denom_exp": 0, "entries": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]]}"#;
        assert_eq!(UnitaryRn::from_json_str(not_unitary).unwrap_err(), Error::NotUnitary);
        let big = r#"{"n": 2, "denom_exp": 0, "entries": [[[1, 0], [0, 0]], [[0, 0], [0, 123456789012345678901234567890]]]}"#;
        assert_eq!(UnitaryRn::from_json_str(big).unwrap_err(), Error::NotUnitary);
    }
}
