//! Bloch-sphere images of unitaries, exact rotation generators and the
//! 24-element Clifford rotation group.
//!
//! The image of `U` has entries `M_ij = ½ tr(P_i U P_j U†)` with Pauli order
//! `(X, Y, Z)`, so column `j` holds the coordinates of `U P_j U†` and
//! `bloch(UV) = bloch(U)·bloch(V)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::cyclo::Context;
use crate::error::{Error, Result};
use crate::rings::{BetaConstant, RealRingElem, RingElem};
use crate::su2::{Axis, Gate, GateSequence, UnitaryRn};

/// A 3×3 rotation with entries in `T_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation {
    m: [[RealRingElem; 3]; 3],
}

impl Rotation {
    pub fn identity(ctx: &Arc<Context>) -> Rotation {
        Rotation::from_fn(|r, c| RealRingElem::from_int(ctx, (r == c) as i64))
    }

    fn from_fn(mut f: impl FnMut(usize, usize) -> RealRingElem) -> Rotation {
        Rotation {
            m: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    /// Build from entries, checking `M·Mᵀ = I` and `det M = 1`.
    pub fn new(entries: [[RealRingElem; 3]; 3]) -> Result<Rotation> {
        let m = Rotation { m: entries };
        let ctx = m.ctx().clone();
        if m.mul(&m.transpose()) != Rotation::identity(&ctx) || !m.det().is_one() {
            return Err(Error::Precondition("matrix is not a rotation".into()));
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.m[0][0].ctx()
    }

    pub fn get(&self, r: usize, c: usize) -> &RealRingElem {
        &self.m[r][c]
    }

    pub fn entries(&self) -> &[[RealRingElem; 3]; 3] {
        &self.m
    }

    pub fn mul(&self, other: &Rotation) -> Rotation {
        Rotation::from_fn(|r, c| {
            let mut acc = &self.m[r][0] * &other.m[0][c];
            for k in 1..3 {
                acc = &acc + &(&self.m[r][k] * &other.m[k][c]);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Rotation {
        Rotation::from_fn(|r, c| self.m[c][r].clone())
    }

    pub fn det(&self) -> RealRingElem {
        let m = &self.m;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        let t0 = &m[0][0] * &minor(1, 2, 2, 1);
        let t1 = &m[0][1] * &minor(0, 2, 2, 0);
        let t2 = &m[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// `R_q^b · self` for any integer `b`, updating only the two rows that
    /// change and multiplying by cosines and sines through shifts by `ζ`.
    pub fn left_rotate(&self, q: Axis, b: i64) -> Rotation {
        let (u, v) = cyclic_pair(q);
        let mut out = self.clone();
        for c in 0..3 {
            let xu = &self.m[u][c];
            let xv = &self.m[v][c];
            out.m[u][c] = &xu.mul_cos(b) - &xv.mul_sin(b);
            out.m[v][c] = &xu.mul_sin(b) + &xv.mul_cos(b);
        }
        out
    }

    /// The signed permutation encoded as `(column, sign)` per row, if the
    /// matrix is one.
    pub fn signed_permutation_code(&self) -> Option<[(u8, i8); 3]> {
        let mut code = [(0u8, 0i8); 3];
        for (r, row) in self.m.iter().enumerate() {
            let mut found = None;
            for (c, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if found.is_some() || !x.is_integral() || !x.num().is_rational() {
                    return None;
                }
                let v = &x.num().coeffs()[0];
                let sign = if v == &1.into() {
                    1
                } else if v == &(-1).into() {
                    -1
                } else {
                    return None;
                };
                found = Some((c as u8, sign));
            }
            code[r] = found?;
        }
        Some(code)
    }

    /// `self · P` for the signed permutation `P` with the given code; this
    /// only moves and negates columns.
    pub fn mul_signed_permutation(&self, code: &[(u8, i8); 3]) -> Rotation {
        let mut out = self.clone();
        for (k, &(c, sign)) in code.iter().enumerate() {
            for r in 0..3 {
                let x = &self.m[r][k];
                out.m[r][c as usize] = if sign < 0 { -x } else { x.clone() };
            }
        }
        out
    }

    /// Denominator-exponent profile: the largest β-exponent over all nonzero
    /// entries and the largest in each row.
    pub fn exponent_profile(&self, bc: &BetaConstant) -> (u64, [u64; 3]) {
        let rows: [u64; 3] = std::array::from_fn(|r| {
            self.m[r]
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| bc.exponent(x))
                .max()
                .unwrap_or(0)
        });
        (*rows.iter().max().expect("three rows"), rows)
    }

    /// Largest β-exponent over all entries.
    pub fn max_exponent(&self, bc: &BetaConstant) -> u64 {
        self.exponent_profile(bc).0
    }
}

/// The two axes moved by a rotation about `q`, in cyclic order.
fn cyclic_pair(q: Axis) -> (usize, usize) {
    match q {
        Axis::X => (1, 2),
        Axis::Y => (2, 0),
        Axis::Z => (0, 1),
    }
}

impl fmt::Debug for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.m.iter().enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        f.write_str("]")
    }
}

/// The Bloch-sphere image of a unitary.
pub fn bloch(u: &UnitaryRn) -> Rotation {
    let ctx = u.ctx().clone();
    let i = ctx.n() as i64 / 2;
    let ud = u.adjoint();
    let mut cols: Vec<[RealRingElem; 3]> = Vec::with_capacity(3);
    for p in Axis::ALL {
        let a = u.mul(&UnitaryRn::pauli(&ctx, p)).mul(&ud);
        let (p00, p01, p10, p11) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
        let half = |x: RingElem| RealRingElem::new_unchecked(x.div_pow2(1));
        let x = half(p01 + p10);
        let y = half((p01 - p10).mul_zeta(i));
        let z = half(p00 - p11);
        cols.push([x, y, z]);
    }
    Rotation::from_fn(|r, c| cols[c][r].clone())
}

/// `R_p^a`, the image of `U_p(aπ/n)`.
pub fn rotation_generator(ctx: &Arc<Context>, p: Axis, a: i64) -> Rotation {
    Rotation::identity(ctx).left_rotate(p, a)
}

/// An element of the Clifford rotation group with a shortest `{H, S}` word.
#[derive(Debug, Clone)]
pub struct CliffordRot {
    pub matrix: Rotation,
    /// Word realizing the rotation; as a unitary, `word` evaluates to a
    /// Clifford whose image is `matrix`.
    pub word: GateSequence,
    /// The unitary the word evaluates to.
    pub unitary: UnitaryRn,
}

/// The 24 Clifford rotations, indexed for lookup.
#[derive(Debug, Clone)]
pub struct CliffordTable {
    elements: Vec<CliffordRot>,
    index: HashMap<[(u8, i8); 3], usize>,
}

impl CliffordTable {
    /// Breadth-first closure from the images of `H₀` and `S`, exploring `H`
    /// before `S`, so every element carries its shortlex-minimal word.
    pub fn new(ctx: &Arc<Context>) -> Result<CliffordTable> {
        let n = ctx.n();
        let gens = [
            (Gate::H, UnitaryRn::h0(ctx)),
            (Gate::S, UnitaryRn::s(ctx)),
        ];
        let gen_rot: Vec<Rotation> = gens.iter().map(|(_, u)| bloch(u)).collect();
        let mut elements = vec![CliffordRot {
            matrix: Rotation::identity(ctx),
            word: GateSequence::empty(n),
            unitary: UnitaryRn::identity(ctx),
        }];
        let mut index = HashMap::new();
        index.insert(
            elements[0]
                .matrix
                .signed_permutation_code()
                .expect("identity is a signed permutation"),
            0,
        );
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for (g, (gate, gu)) in gens.iter().enumerate() {
                let matrix = elements[cur].matrix.mul(&gen_rot[g]);
                let code = matrix
                    .signed_permutation_code()
                    .ok_or_else(|| Error::Integrity("Clifford image is not a signed permutation".into()))?;
                if index.contains_key(&code) {
                    continue;
                }
                let mut gates = elements[cur].word.gates().to_vec();
                gates.push(*gate);
                let element = CliffordRot {
                    matrix,
                    word: GateSequence::new(n, 0, gates)?,
                    unitary: elements[cur].unitary.mul(gu),
                };
                index.insert(code, elements.len());
                queue.push_back(elements.len());
                elements.push(element);
            }
        }
        if elements.len() != 24 {
            return Err(Error::Integrity(format!(
                "Clifford closure has {} elements instead of 24",
                elements.len()
            )));
        }
        Ok(CliffordTable { elements, index })
    }

    pub fn elements(&self) -> &[CliffordRot] {
        &self.elements
    }

    pub fn get(&self, idx: usize) -> &CliffordRot {
        &self.elements[idx]
    }

    /// Index of `m` in the table, when `m` is a signed permutation.
    pub fn lookup(&self, m: &Rotation) -> Option<usize> {
        self.index.get(&m.signed_permutation_code()?).copied()
    }

    pub fn is_signed_permutation(&self, m: &Rotation) -> Option<&CliffordRot> {
        self.lookup(m).map(|i| &self.elements[i])
    }
}
