//! End-to-end acceptance checks. Each criterion prints a single
//! `criterion <k>: PASS|FAIL` line; the process fails if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclosynth::synth::{insert_relations, random_sequence};
use cyclosynth::{
    bloch, cyclotomic_poly, fn_census, phase_condition, synthesize_ring, verify_finite_lemma, Axis,
    Context, Membership, Synthesizer, UnitaryRn,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in [4u32, 6, 8, 12, 16] {
        let syn = Synthesizer::new(n as i64).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1 + n as u64);
        for i in 0..200 {
            let len = rng.gen_range(0..=40);
            let seq = random_sequence(n, len, &mut rng);
            let u = seq.eval(syn.ctx()).map_err(|e| e.to_string())?;
            let form = syn
                .canonical_form(&u)
                .map_err(|e| format!("n={n} #{i} `{seq}`: {e}"))?;
            let back = syn.to_circuit(&form).eval(syn.ctx()).map_err(|e| e.to_string())?;
            let lambda = cyclosynth::equal_up_to_phase(&back, &u);
            ensure!(
                lambda.as_ref().and_then(|l| l.as_zeta_power()).is_some(),
                "n={n} #{i}: round trip of `{seq}` is not a zeta multiple"
            );
            ensure!(back == u, "n={n} #{i}: round trip of `{seq}` lost the phase");
            total += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(300), "took {took:?}");
    Ok(format!("{total} circuits in {took:.2?}"))
}

fn bfs_optimality() -> Outcome {
    let mut checked = 0;
    for n in [4i64, 6] {
        let syn = Synthesizer::new(n).map_err(|e| e.to_string())?;
        for entry in syn.enumerate_cosets(4) {
            let u = syn.word_unitary(&entry.word);
            let oracle = syn.brute_force_min_tcount(&u, 4);
            let t = syn.tcount(&u).map_err(|e| e.to_string())?;
            ensure!(
                oracle == Some(t as u32) && t as u32 == entry.cost,
                "n={n} word {:?}: tcount {t}, oracle {oracle:?}, bfs cost {}",
                entry.word,
                entry.cost
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} cosets of cost <= 4 for n = 4, 6"))
}

fn tcount_law() -> Outcome {
    let mut checked = 0;
    for n in (4..=16).step_by(2) {
        let syn = Synthesizer::new(n).map_err(|e| e.to_string())?;
        for a in 1..n / 2 {
            for p in Axis::ALL {
                for positive in [true, false] {
                    let u = UnitaryRn::u_axis(syn.ctx(), p, positive, a).map_err(|e| e.to_string())?;
                    let t = syn.tcount(&u).map_err(|e| e.to_string())?;
                    let want = a.min(n / 2 - a) as u64;
                    ensure!(t == want, "n={n} p={p} positive={positive} a={a}: {t} != {want}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} axis rotations"))
}

fn canonical_uniqueness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let ns = [4u32, 6, 8, 12, 16];
    let syns: Vec<Synthesizer> = ns.iter().map(|&n| Synthesizer::new(n as i64).unwrap()).collect();
    for i in 0..500 {
        let syn = &syns[i % ns.len()];
        let n = syn.n();
        let len = rng.gen_range(1..=30);
        let a = random_sequence(n, len, &mut rng);
        let insertions = rng.gen_range(1..=4);
        let b = insert_relations(&a, insertions, &mut rng);
        ensure!(a != b, "pair #{i} is not distinct");
        let ua = a.eval(syn.ctx()).map_err(|e| e.to_string())?;
        let ub = b.eval(syn.ctx()).map_err(|e| e.to_string())?;
        ensure!(ua == ub, "pair #{i}: relation insertion changed the unitary");
        let forms = [
            syn.canonical_form(&ua).map_err(|e| e.to_string())?,
            syn.canonical_form(&ub).map_err(|e| e.to_string())?,
            syn.canonicalize_sequence(&a).map_err(|e| e.to_string())?,
            syn.canonicalize_sequence(&b).map_err(|e| e.to_string())?,
        ];
        ensure!(
            forms.iter().all(|f| *f == forms[0]),
            "pair #{i} (n={n}) `{a}` vs `{b}`: forms differ {forms:?}"
        );
    }
    Ok("500 pairs, 4 identical forms each".into())
}

fn denominator_pattern() -> Outcome {
    let mut checked = 0;
    for n in [4i64, 8, 12] {
        let syn = Synthesizer::new(n).map_err(|e| e.to_string())?;
        let bc = syn.beta();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC5 + n as u64);
        for i in 0..300 {
            let m = rng.gen_range(1..=8);
            let form = syn.random_form_with_factors(m, &mut rng);
            let u = syn.factor_product(&form.axes, &form.exponents);
            let rot = bloch(&u);
            let expected: u64 = form.exponents.iter().map(|&a| bc.q(a).unwrap()).sum();
            let (max, rows) = rot.exponent_profile(bc);
            ensure!(max == expected, "n={n} #{i} {form}: maxN {max} != {expected}");
            let at_max = rows.iter().filter(|&&r| r == max).count();
            ensure!(at_max == 2, "n={n} #{i} {form}: rows {rows:?}");
            let p1 = form.axes[0].index();
            let q1 = bc.q(form.exponents[0]).unwrap();
            ensure!(
                rows[p1] == max - q1,
                "n={n} #{i} {form}: deficient row {rows:?}, expected row {p1} at {}",
                max - q1
            );
            for row in rot.entries() {
                for x in row.iter().filter(|x| !x.is_zero()) {
                    let (r, w) = bc.beta_exponent(x).map_err(|e| e.to_string())?;
                    ensure!(r == bc.exponent(x), "n={n} #{i}: fast exponent disagrees");
                    if r > 0 {
                        ensure!(w.norm().is_odd(), "n={n} #{i}: witness {w:?} has even norm");
                        ensure!(!bc.divides(&w), "n={n} #{i}: beta divides witness");
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} products"))
}

fn finite_lemma() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for n in [2u32, 4, 6, 8, 12] {
        let report = verify_finite_lemma(n).map_err(|e| e.to_string())?;
        ensure!(report.holds(), "n={n}: {} failing pairs", report.failures);
        parts.push(format!("check({n})=true"));
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(120), "took {took:?}");
    Ok(format!("{} in {took:.2?}", parts.join(",")))
}

fn ring_equality() -> Outcome {
    let mut total = 0;
    for n in [2u32, 4, 6, 8, 12] {
        let syn = Synthesizer::new(n as i64).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(0xC7 + n as u64);
        for i in 0..500 {
            let len = rng.gen_range(0..=40);
            let seq = random_sequence(n, len, &mut rng);
            let scalar = rng.gen_range(0..2 * n as i64);
            let u = seq.eval(syn.ctx()).map_err(|e| e.to_string())?.mul_zeta(scalar);
            match syn.membership(&u).map_err(|e| e.to_string())? {
                Membership::Member { circuit, .. } => {
                    let back = circuit.eval(syn.ctx()).map_err(|e| e.to_string())?;
                    ensure!(back == u, "n={n} #{i}: membership circuit mismatch");
                }
                Membership::NotMember { stage, reason } => {
                    return Err(format!("n={n} #{i}: NotMember at {stage}: {reason}"));
                }
            }
            let ring = synthesize_ring(&u).map_err(|e| format!("n={n} #{i}: {e}"))?;
            let back = ring.circuit.eval(syn.ctx()).map_err(|e| e.to_string())?;
            ensure!(back == u, "n={n} #{i}: ring circuit mismatch");
            total += 1;
        }
    }
    Ok(format!("{total} unitaries, zero failures"))
}

fn phase_and_census() -> Outcome {
    for n in [2u64, 4, 6, 8, 12, 16] {
        ensure!(phase_condition(n).unwrap().holds(), "condition false for n={n}");
    }
    for n in [14u64, 28] {
        ensure!(!phase_condition(n).unwrap().holds(), "condition true for n={n}");
    }
    let f14 = fn_census(14).map_err(|e| e.to_string())?.fraction();
    ensure!(f14 == Ratio::new(6, 7), "f_14 = {f14}");
    let f1k = fn_census(1_000).map_err(|e| e.to_string())?.fraction();
    let start = Instant::now();
    let f1m = fn_census(1_000_000).map_err(|e| e.to_string())?.fraction();
    let took = start.elapsed();
    ensure!(f1m < f1k, "f_1e6 = {f1m} is not below f_1e3 = {f1k}");
    ensure!(took < Duration::from_secs(600), "census took {took:?}");
    Ok(format!("f_14 = {f14}, f_1e3 = {f1k}, f_1e6 = {f1m} ({took:.2?})"))
}

fn substrate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    let mut divisible = 0;
    for n in common::SUPPORTED {
        let ctx = Context::new(n).map_err(|e| e.to_string())?;
        for i in 0..10_000 {
            let y = common::random_nonzero(&ctx, 3, &mut rng);
            let x = if i % 2 == 0 {
                &y * &common::random_cycint(&ctx, 3, &mut rng)
            } else {
                common::random_cycint(&ctx, 6, &mut rng)
            };
            let fast = y.divides(&x).map_err(|e| e.to_string())?;
            let oracle = common::divides_by_linear_solve(&y, &x);
            ensure!(fast == oracle, "n={n}: divides({y:?}, {x:?}) = {fast}, oracle {oracle}");
            divisible += fast as u32;
        }
        for _ in 0..10_000 {
            let a = common::random_cycint(&ctx, 5, &mut rng);
            let b = common::random_cycint(&ctx, 5, &mut rng);
            ensure!((&a * &b).norm() == a.norm() * b.norm(), "n={n}: norm not multiplicative");
        }
    }
    let two = BigInt::from(2);
    for d in 3..=10_000u64 {
        let phi = cyclotomic_poly(d);
        for x in [1, -1] {
            let v = cyclosynth::cyclo::eval_poly(&phi, x);
            if d.is_power_of_two() {
                ensure!(v == two, "Phi_{d}({x}) = {v}");
            } else {
                ensure!(v.is_positive() && v.is_odd(), "Phi_{d}({x}) = {v} is not odd");
            }
        }
    }
    Ok(format!(
        "divides vs linear solve on 5x10^4 pairs ({divisible} divisible), norms on 5x10^4 pairs, Phi_d(+-1) for d <= 10^4"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("round-trip exactness", round_trip),
        ("optimality against breadth-first oracle", bfs_optimality),
        ("T-count law for axis rotations", tcount_law),
        ("canonical-form uniqueness under relations", canonical_uniqueness),
        ("denominator-exponent pattern", denominator_pattern),
        ("finite mod-2 lemma for n = 2, 4, 6, 8, 12", finite_lemma),
        ("ring-equality pipeline", ring_equality),
        ("phase condition and census", phase_and_census),
        ("number-theory substrate", substrate),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", k + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id.ends_with(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("{id}: PASS  {name}: {detail} [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("{id}: FAIL  {name}: {detail} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
