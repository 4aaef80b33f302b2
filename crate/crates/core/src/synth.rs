//! Optimal exact synthesis over `⟨Clifford, U_z(π/n)⟩`.
//!
//! A unitary is peeled one axis rotation at a time on its Bloch-sphere image:
//! the factor `R_p^a` to remove is the unique one whose removal lowers the
//! largest denominator exponent the most. The result is the canonical form
//! `U = ζ^j · U_{p₁}(a₁π/n) ⋯ U_{p_m}(a_mπ/n) · C`, from which an optimal
//! circuit is read off.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::Context;
use crate::error::{Error, Result};
use crate::rings::BetaConstant;
use crate::so3::{bloch, rotation_generator, CliffordTable, Rotation};
use crate::su2::{equal_up_to_phase, Axis, Gate, GateSequence, UnitaryRn};

/// The unique decomposition
/// `U = ζ^phase · Π U_{axes[i]}(exponents[i]·π/n) · C[residual]`, where
/// `C[residual]` is the unitary of the residual's word in the Clifford table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub n: u32,
    pub axes: Vec<Axis>,
    pub exponents: Vec<u32>,
    pub residual: usize,
    pub phase: u32,
}

impl CanonicalForm {
    pub fn m(&self) -> usize {
        self.axes.len()
    }

    /// `Σ min(a_i, n/2 − a_i)`.
    pub fn tcount(&self) -> u64 {
        let h = self.n / 2;
        self.exponents.iter().map(|&a| a.min(h - a) as u64).sum()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PH[{}]", self.phase)?;
        for (p, a) in self.axes.iter().zip(&self.exponents) {
            write!(f, " U{p}({a})")?;
        }
        write!(f, " C[{}]", self.residual)
    }
}

/// Where a membership test stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    /// No candidate rotation strictly lowered the denominator exponent.
    Descent { step: usize },
    /// The Bloch image reduced to a Clifford but the leftover scalar is not a
    /// power of `ζ`.
    Phase,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Descent { step } => write!(f, "descent (step {step})"),
            Stage::Phase => f.write_str("phase"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Membership {
    Member {
        form: CanonicalForm,
        circuit: GateSequence,
    },
    NotMember {
        stage: Stage,
        reason: String,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// A Bloch-sphere right coset `M·Ĉ` reached by the breadth-first oracle.
#[derive(Debug, Clone)]
pub struct CosetEntry {
    /// Lexicographically smallest element of the coset.
    pub rep: Rotation,
    pub cost: u32,
    /// A cheapest word of axis rotations `U_{±p}(π/n)` reaching the coset.
    pub word: Vec<(Axis, bool)>,
}

/// Per-`n` synthesis tables.
#[derive(Debug, Clone)]
pub struct Synthesizer {
    ctx: Arc<Context>,
    bc: BetaConstant,
    cliffords: CliffordTable,
    paulis: [UnitaryRn; 3],
    /// `U_p(π/2)` for each axis.
    quarter: [UnitaryRn; 3],
}

impl Synthesizer {
    pub fn new(n: i64) -> Result<Synthesizer> {
        Synthesizer::with_context(&Context::new(n)?)
    }

    pub fn with_context(ctx: &Arc<Context>) -> Result<Synthesizer> {
        let h = ctx.n() as i64 / 2;
        Ok(Synthesizer {
            ctx: ctx.clone(),
            bc: BetaConstant::new(ctx),
            cliffords: CliffordTable::new(ctx)?,
            paulis: Axis::ALL.map(|p| UnitaryRn::pauli(ctx, p)),
            quarter: Axis::ALL.map(|p| UnitaryRn::u_axis_unchecked(ctx, p, true, h)),
        })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    pub fn beta(&self) -> &BetaConstant {
        &self.bc
    }

    pub fn cliffords(&self) -> &CliffordTable {
        &self.cliffords
    }

    fn half(&self) -> u32 {
        self.n() / 2
    }

    /// The rotation `R_q^b` whose removal from the left of `m` gives the
    /// smallest largest denominator exponent, together with the reduced
    /// matrix. The minimum must be unique and strictly below the exponent
    /// of `m`.
    pub fn axis_detect(&self, m: &Rotation) -> Result<(Axis, u32, Rotation)> {
        self.axis_detect_at(m, 0)
    }

    fn axis_detect_at(&self, m: &Rotation, step: usize) -> Result<(Axis, u32, Rotation)> {
        if self.cliffords.lookup(m).is_some() {
            return Err(Error::Precondition(
                "axis detection needs a non-Clifford rotation".into(),
            ));
        }
        let (current, rows) = m.exponent_profile(&self.bc);
        let mut best: Option<(u64, Axis, u32, Rotation)> = None;
        let mut tie = false;
        for q in Axis::ALL {
            for b in 1..self.half() {
                let cand = m.left_rotate(q, -(b as i64));
                let (_, cand_rows) = cand.exponent_profile(&self.bc);
                debug_assert_eq!(cand_rows[q.index()], rows[q.index()]);
                let r = *cand_rows.iter().max().expect("three rows");
                match &best {
                    Some((br, ..)) if r > *br => {}
                    Some((br, ..)) if r == *br => tie = true,
                    _ => {
                        best = Some((r, q, b, cand));
                        tie = false;
                    }
                }
            }
        }
        let (r, q, b, cand) = best.ok_or_else(|| Error::NotReducible {
            step,
            reason: "no candidate rotations exist for n = 2".into(),
        })?;
        if tie {
            return Err(Error::NotReducible {
                step,
                reason: format!("several candidates reach the smallest exponent {r}"),
            });
        }
        if r >= current {
            return Err(Error::NotReducible {
                step,
                reason: format!("no candidate lowers the denominator exponent below {current}"),
            });
        }
        Ok((q, b, cand))
    }

    /// Peel axis rotations until the Bloch image is a signed permutation.
    fn descend(&self, u: &UnitaryRn) -> Result<(Vec<Axis>, Vec<u32>, usize)> {
        let mut m = bloch(u);
        let mut axes = Vec::new();
        let mut exps = Vec::new();
        loop {
            if let Some(idx) = self.cliffords.lookup(&m) {
                return Ok((axes, exps, idx));
            }
            let (q, b, next) = self.axis_detect_at(&m, axes.len())?;
            axes.push(q);
            exps.push(b);
            m = next;
        }
    }

    /// `Π U_{axes[i]}(exponents[i]·π/n)`.
    pub fn factor_product(&self, axes: &[Axis], exponents: &[u32]) -> UnitaryRn {
        axes.iter()
            .zip(exponents)
            .fold(UnitaryRn::identity(&self.ctx), |acc, (&p, &a)| {
                acc.mul(&UnitaryRn::u_axis_unchecked(&self.ctx, p, true, a as i64))
            })
    }

    /// The canonical form of `U` by denominator-exponent descent.
    pub fn canonical_form(&self, u: &UnitaryRn) -> Result<CanonicalForm> {
        self.check_ctx(u)?;
        let (axes, exponents, residual) = self.descend(u)?;
        let d = self.factor_product(&axes, &exponents).adjoint().mul(u);
        let c = &self.cliffords.get(residual).unitary;
        let lambda = equal_up_to_phase(&d, c).ok_or_else(|| {
            Error::Integrity("residual is not proportional to its Clifford".into())
        })?;
        let phase = lambda.as_zeta_power().ok_or(Error::PhaseNotInRing)?;
        Ok(CanonicalForm {
            n: self.n(),
            axes,
            exponents,
            residual,
            phase,
        })
    }

    /// Exact unitary of a canonical form.
    pub fn eval_form(&self, cf: &CanonicalForm) -> UnitaryRn {
        self.factor_product(&cf.axes, &cf.exponents)
            .mul(&self.cliffords.get(cf.residual).unitary)
            .mul_zeta(cf.phase as i64)
    }

    /// The canonical form of a gate sequence computed by rewriting alone:
    /// every `W^r` is conjugated through the Cliffords to its left, equal
    /// axes are merged, angles are folded into `[1, n/2)` and sign flips are
    /// traded for phases.
    pub fn canonicalize_sequence(&self, seq: &GateSequence) -> Result<CanonicalForm> {
        if seq.n() != self.n() {
            return Err(Error::ContextMismatch {
                left: seq.n(),
                right: self.n(),
            });
        }
        let order = 2 * self.n();
        let half = self.half();
        let h0 = UnitaryRn::h0(&self.ctx);
        let s = UnitaryRn::s(&self.ctx);
        let mut phase = seq.phase() as u64;
        let mut k = UnitaryRn::identity(&self.ctx);
        let mut stack: Vec<(Axis, u32)> = Vec::new();
        for g in seq.gates() {
            let r = match g {
                Gate::H => {
                    k = k.mul(&h0);
                    continue;
                }
                Gate::S => {
                    k = k.mul(&s);
                    continue;
                }
                Gate::W(r) => *r,
            };
            let (f, positive) = self.conjugated_z(&k)?;
            let r = if positive {
                r
            } else {
                phase += r as u64;
                order - r
            };
            let c = match stack.last() {
                Some(&(top, a)) if top == f => {
                    stack.pop();
                    (a + r) % order
                }
                _ => r,
            };
            let (q, a) = (c / half, c % half);
            if a != 0 {
                stack.push((f, a));
            }
            for _ in 0..q {
                k = self.quarter[f.index()].mul(&k);
            }
        }
        let residual = self
            .cliffords
            .lookup(&bloch(&k))
            .ok_or_else(|| Error::Integrity("accumulated Clifford left the table".into()))?;
        let lambda = equal_up_to_phase(&k, &self.cliffords.get(residual).unitary)
            .ok_or_else(|| Error::Integrity("accumulated Clifford is not a phase times the table entry".into()))?;
        let j = lambda.as_zeta_power().ok_or(Error::PhaseNotInRing)?;
        let (axes, exponents) = stack.into_iter().unzip();
        Ok(CanonicalForm {
            n: self.n(),
            axes,
            exponents,
            residual,
            phase: ((phase + j as u64) % order as u64) as u32,
        })
    }

    /// The signed axis `±f` with `K Z K† = ±P_f`.
    fn conjugated_z(&self, k: &UnitaryRn) -> Result<(Axis, bool)> {
        let img = k.mul(&self.paulis[2]).mul(&k.adjoint());
        for p in Axis::ALL {
            let lambda = match equal_up_to_phase(&img, &self.paulis[p.index()]) {
                Some(l) => l,
                None => continue,
            };
            if lambda.is_one() {
                return Ok((p, true));
            }
            if (-lambda).is_one() {
                return Ok((p, false));
            }
        }
        Err(Error::Integrity("Clifford does not map Z to a signed Pauli".into()))
    }

    /// Minimal number of `W` gates needed for `U` up to phase.
    pub fn tcount(&self, u: &UnitaryRn) -> Result<u64> {
        Ok(self.canonical_form(u)?.tcount())
    }

    /// A circuit over `{H, S, W}` evaluating exactly to the form's unitary,
    /// with `W`-cost equal to the form's T-count.
    pub fn to_circuit(&self, cf: &CanonicalForm) -> GateSequence {
        let n = self.n() as i64;
        let half = self.half();
        let mut phase = cf.phase as i64;
        let mut gates = Vec::new();
        let x_word = [Gate::H, Gate::S, Gate::S, Gate::H];
        for (&p, &a) in cf.axes.iter().zip(&cf.exponents) {
            let (pre, post): (&[Gate], &[Gate]) = match p {
                Axis::X => (&[Gate::H], &[Gate::H]),
                Axis::Y => (&[Gate::S, Gate::H], &[Gate::H, Gate::S, Gate::S, Gate::S]),
                Axis::Z => (&[], &[]),
            };
            if p != Axis::Z {
                phase += 3 * n / 2;
            }
            gates.extend_from_slice(pre);
            if 2 * a <= half {
                gates.push(Gate::W(a));
            } else {
                let b = half - a;
                phase -= b as i64 + n;
                gates.push(Gate::S);
                gates.extend_from_slice(&x_word);
                gates.push(Gate::W(b));
                gates.extend_from_slice(&x_word);
            }
            gates.extend_from_slice(post);
        }
        gates.extend_from_slice(self.cliffords.get(cf.residual).word.gates());
        GateSequence::new(self.n(), phase, gates).expect("exponents in range")
    }

    /// Decide membership in the group and, for members, return the optimal
    /// circuit.
    pub fn membership(&self, u: &UnitaryRn) -> Result<Membership> {
        self.check_ctx(u)?;
        match self.canonical_form(u) {
            Ok(form) => {
                let circuit = self.to_circuit(&form);
                Ok(Membership::Member { form, circuit })
            }
            Err(Error::NotReducible { step, reason }) => Ok(Membership::NotMember {
                stage: Stage::Descent { step },
                reason,
            }),
            Err(Error::PhaseNotInRing) => Ok(Membership::NotMember {
                stage: Stage::Phase,
                reason: Error::PhaseNotInRing.to_string(),
            }),
            Err(e) => Err(e),
        }
    }

    fn check_ctx(&self, u: &UnitaryRn) -> Result<()> {
        if u.ctx().n() != self.n() {
            return Err(Error::ContextMismatch {
                left: u.ctx().n(),
                right: self.n(),
            });
        }
        Ok(())
    }

    /// Smallest member of the right coset `m·Ĉ` in the derived order.
    pub fn coset_rep(&self, m: &Rotation) -> Rotation {
        self.cliffords
            .elements()
            .iter()
            .map(|c| {
                let code = c.matrix.signed_permutation_code().expect("Clifford rotation");
                m.mul_signed_permutation(&code)
            })
            .min()
            .expect("24 Cliffords")
    }

    /// All right cosets of the Clifford group reachable with at most `bound`
    /// axis rotations, in breadth-first order.
    pub fn enumerate_cosets(&self, bound: u32) -> Vec<CosetEntry> {
        self.coset_search(bound, None)
    }

    /// Breadth-first search over cosets, stopping early once `target` is
    /// reached.
    fn coset_search(&self, bound: u32, target: Option<&Rotation>) -> Vec<CosetEntry> {
        let steps: Vec<(Axis, bool, Rotation)> = Axis::ALL
            .iter()
            .flat_map(|&p| {
                [true, false]
                    .map(|sign| (p, sign, rotation_generator(&self.ctx, p, if sign { 1 } else { -1 })))
            })
            .collect();
        let start = self.coset_rep(&Rotation::identity(&self.ctx));
        if target == Some(&start) {
            return vec![CosetEntry {
                rep: start,
                cost: 0,
                word: Vec::new(),
            }];
        }
        let mut seen: HashSet<Rotation> = HashSet::new();
        seen.insert(start.clone());
        let mut out = vec![CosetEntry {
            rep: start,
            cost: 0,
            word: Vec::new(),
        }];
        let mut elements = vec![Rotation::identity(&self.ctx)];
        let mut frontier = 0..1;
        for cost in 1..=bound {
            let level_start = out.len();
            for i in frontier.clone() {
                for (p, sign, r) in &steps {
                    let element = elements[i].mul(r);
                    let rep = self.coset_rep(&element);
                    if seen.contains(&rep) {
                        continue;
                    }
                    let mut word = out[i].word.clone();
                    word.push((*p, *sign));
                    seen.insert(rep.clone());
                    let done = target == Some(&rep);
                    out.push(CosetEntry { rep, cost, word });
                    elements.push(element);
                    if done {
                        return out;
                    }
                }
            }
            frontier = level_start..out.len();
            if frontier.is_empty() {
                break;
            }
        }
        out
    }

    /// The unitary `Π U_{±p}(π/n)` of a coset word.
    pub fn word_unitary(&self, word: &[(Axis, bool)]) -> UnitaryRn {
        word.iter().fold(UnitaryRn::identity(&self.ctx), |acc, &(p, sign)| {
            acc.mul(&UnitaryRn::u_axis_unchecked(&self.ctx, p, sign, 1))
        })
    }

    /// Minimal cost found by exhaustive breadth-first search over cosets, or
    /// `None` when the coset is not reached within `bound`.
    pub fn brute_force_min_tcount(&self, u: &UnitaryRn, bound: u32) -> Option<u32> {
        let target = self.coset_rep(&bloch(u));
        self.coset_search(bound, Some(&target))
            .into_iter()
            .find(|e| e.rep == target)
            .map(|e| e.cost)
    }

    /// A random canonical form with T-count exactly `target`.
    pub fn random_form(&self, target: u64, rng: &mut impl Rng) -> Result<CanonicalForm> {
        let half = self.half();
        let cap = (half / 2) as u64;
        if target > 0 && cap == 0 {
            return Err(Error::OutOfRange {
                what: "target T-count",
                value: target as i64,
                range: format!("n = {} admits only Clifford unitaries", self.n()),
            });
        }
        let mut axes: Vec<Axis> = Vec::new();
        let mut exponents = Vec::new();
        let mut left = target;
        while left > 0 {
            let c = rng.gen_range(1..=cap.min(left)) as u32;
            let a = if rng.gen_bool(0.5) { c } else { half - c };
            let choices: Vec<Axis> = Axis::ALL
                .into_iter()
                .filter(|p| axes.last() != Some(p))
                .collect();
            axes.push(choices[rng.gen_range(0..choices.len())]);
            exponents.push(a);
            left -= c as u64;
        }
        Ok(CanonicalForm {
            n: self.n(),
            axes,
            exponents,
            residual: rng.gen_range(0..24),
            phase: rng.gen_range(0..2 * self.n()),
        })
    }

    /// A random canonical form with exactly `m` factors and free exponents.
    pub fn random_form_with_factors(&self, m: usize, rng: &mut impl Rng) -> CanonicalForm {
        let half = self.half();
        let mut axes: Vec<Axis> = Vec::with_capacity(m);
        let mut exponents = Vec::with_capacity(m);
        for _ in 0..m {
            let choices: Vec<Axis> = Axis::ALL
                .into_iter()
                .filter(|p| axes.last() != Some(p))
                .collect();
            axes.push(choices[rng.gen_range(0..choices.len())]);
            exponents.push(rng.gen_range(1..half.max(2)));
        }
        CanonicalForm {
            n: self.n(),
            axes,
            exponents,
            residual: rng.gen_range(0..24),
            phase: rng.gen_range(0..2 * self.n()),
        }
    }

    /// A deterministic pseudorandom unitary with T-count `target`, and a
    /// witness circuit for it.
    pub fn random_unitary(&self, target: u64, seed: u64) -> Result<(UnitaryRn, GateSequence)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let form = self.random_form(target, &mut rng)?;
        Ok((self.eval_form(&form), self.to_circuit(&form)))
    }
}

/// A random gate sequence with `len` tokens.
pub fn random_sequence(n: u32, len: usize, rng: &mut impl Rng) -> GateSequence {
    let order = 2 * n;
    let gates = (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 | 1 => Gate::H,
            2 => Gate::S,
            _ => Gate::W(rng.gen_range(1..order)),
        })
        .collect();
    GateSequence::new(n, rng.gen_range(0..order) as i64, gates).expect("exponents in range")
}

/// Short words that evaluate exactly to the identity, one per kind of
/// rewriting relation: quarter turns from `n/2` rotations, Clifford
/// pseudo-commutation, and `U_p(a)U_{-p}(a) = ζ^a`.
pub fn identity_words(n: u32, rng: &mut impl Rng) -> Vec<GateSequence> {
    let order = 2 * n;
    let ni = n as i64;
    let h = n / 2;
    let a = rng.gen_range(1..order);
    let w = |j: u32| Gate::W(j % order);
    let seq = |phase: i64, gates: Vec<Gate>| GateSequence::new(n, phase, gates).expect("valid word");
    vec![
        // W^{n/2} S^3 = I and its conjugate by H
        seq(0, vec![w(h), Gate::S, Gate::S, Gate::S]),
        seq(3 * ni / 2, vec![Gate::H, w(h), Gate::S, Gate::S, Gate::S, Gate::H]),
        // H·H·ζ^{3n/2} = I, S^4 = I, S W^a S^3 W^{-a} = I
        seq(3 * ni / 2, vec![Gate::H, Gate::H]),
        seq(0, vec![Gate::S, Gate::S, Gate::S, Gate::S]),
        // U_z(a) U_{-z}(a) = ζ^a with U_{-z}(a) = X W^a X and X = ζ^{-n/2} H S S H
        seq(
            -(a as i64) - ni,
            vec![w(a), Gate::H, Gate::S, Gate::S, Gate::H, w(a), Gate::H, Gate::S, Gate::S, Gate::H],
        ),
        seq(0, vec![Gate::S, w(a), Gate::S, Gate::S, Gate::S, w(order - a)]),
    ]
}

/// A different sequence for the same unitary: identity words are spliced in
/// at random positions and some `W^j` tokens are split in two.
pub fn insert_relations(seq: &GateSequence, insertions: usize, rng: &mut impl Rng) -> GateSequence {
    let n = seq.n();
    let order = 2 * n;
    let mut gates: Vec<Gate> = Vec::new();
    for g in seq.gates() {
        match g {
            Gate::W(j) if *j > 1 && rng.gen_bool(0.25) => {
                let first = rng.gen_range(1..*j);
                gates.push(Gate::W(first));
                gates.push(Gate::W(j - first));
            }
            _ => gates.push(*g),
        }
    }
    let mut phase = seq.phase() as i64;
    for _ in 0..insertions.max(1) {
        let words = identity_words(n, rng);
        let word = &words[rng.gen_range(0..words.len())];
        let at = rng.gen_range(0..=gates.len());
        gates.splice(at..at, word.gates().iter().copied());
        phase += word.phase() as i64;
    }
    GateSequence::new(n, phase.rem_euclid(order as i64), gates).expect("exponents in range")
}
