#![allow(dead_code)]

use std::sync::Arc;

use cyclosynth::{Context, CycInt};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub const SUPPORTED: [i64; 5] = [2, 4, 6, 8, 12];

pub fn random_cycint(ctx: &Arc<Context>, bound: i64, rng: &mut impl Rng) -> CycInt {
    let coeffs: Vec<i64> = (0..ctx.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    CycInt::from_i64s(ctx, &coeffs).unwrap()
}

pub fn random_nonzero(ctx: &Arc<Context>, bound: i64, rng: &mut impl Rng) -> CycInt {
    loop {
        let x = random_cycint(ctx, bound, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Solve `y·q = x` over the rationals in the power basis and report whether
/// the unique solution has integer coordinates.
pub fn divides_by_linear_solve(y: &CycInt, x: &CycInt) -> bool {
    let d = y.ctx().degree();
    let cols: Vec<CycInt> = (0..d).map(|j| y.mul_zeta(j as i64)).collect();
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..d)
                .map(|c| BigRational::from_integer(cols[c].coeffs()[r].clone()))
                .collect();
            row.push(BigRational::from_integer(x.coeffs()[r].clone()));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("nonzero y is invertible");
        a.swap(c, p);
        let inv = BigRational::one() / a[c][c].clone();
        for v in a[c].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=d {
                    let t = &a[c][k] * &f;
                    a[r][k] = &a[r][k] - t;
                }
            }
        }
    }
    a.iter().all(|row| row[d].is_integer())
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
