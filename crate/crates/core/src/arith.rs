//! Small number-theoretic helpers over machine integers.
//!
//! Everything the pictures need stays far below `u64::MAX`; products that
//! could overflow go through checked arithmetic and panic instead of wrapping.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("integer overflow in lcm")
}

pub(crate) fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// `e` divides `m` and `gcd(e, m/e) = 1`.
pub fn is_exact_divisor(e: u64, m: u64) -> bool {
    e > 0 && m.is_multiple_of(e) && gcd(e, m / e) == 1
}

/// Exact divisors of `m` other than 1, ascending.
pub fn exact_divisors(m: u64) -> Vec<u64> {
    divisors(m)
        .into_iter()
        .filter(|&e| e > 1 && is_exact_divisor(e, m))
        .collect()
}

/// The largest divisor of `n` supported on the primes of `e`.
pub fn part_of(n: u64, e: u64) -> u64 {
    prime_divisors(e)
        .into_iter()
        .map(|p| p.pow(valuation(n, p)))
        .product()
}

/// Dedekind's psi: `h * prod_{p | h} (1 + 1/p)`.
pub fn dedekind_psi(h: u64) -> u64 {
    assert!(h >= 1, "dedekind_psi requires h >= 1");
    factorize(h).into_iter().fold(h, |acc, (p, _)| acc / p * (p + 1))
}

/// Euler's totient.
pub fn euler_phi(h: u64) -> u64 {
    assert!(h >= 1, "euler_phi requires h >= 1");
    factorize(h).into_iter().fold(h, |acc, (p, _)| acc / p * (p - 1))
}

/// Inverse of `a` modulo `m`, if it exists. `mod_inverse(_, 1) = Some(0)`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
