//! Small-integer number theory helpers shared by the ring layer and the census.

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order of prime.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn mobius(m: u64) -> i32 {
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(m) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m` (`m` ≥ 1, `gcd(a, m) = 1`), with the
/// convention that the order modulo 1 is 1.
///
/// `phi_factors` must be the factorization of `euler_phi(m)`.
pub fn multiplicative_order_with(a: u64, m: u64, phi: u64, phi_factors: &[(u64, u32)]) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut ord = phi;
    for &(p, _) in phi_factors {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    let phi = euler_phi(m);
    multiplicative_order_with(a, m, phi, &factorize(phi))
}

/// Splits `n = 2^k * s` with `s` odd.
pub fn split_two_power(n: u64) -> (u32, u64) {
    let k = n.trailing_zeros();
    (k, n >> k)
}
