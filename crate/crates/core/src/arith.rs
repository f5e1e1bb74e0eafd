//! Small-integer number theory shared by the other modules.

use num_integer::Integer;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `a mod m` in `[0, m)`.
pub fn rem(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Smallest prime `p >= start` with `p ≡ r (mod m)`.
pub fn prime_in_class(r: u64, m: u64, start: u64) -> u64 {
    let mut p = start + (r + m - start % m) % m;
    loop {
        if is_prime(p) {
            return p;
        }
        p += m;
    }
}

/// Trial-division factorization, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// The residues in `[1, m)` coprime to `m`, ascending.
pub fn units(m: i64) -> Vec<i64> {
    (1..m).filter(|&t| gcd(t, m) == 1).collect()
}

/// Multiplicative order of `a` modulo `m` (requires gcd(a, m) = 1).
pub fn mult_order(a: i64, m: i64) -> u64 {
    debug_assert_eq!(gcd(a, m), 1);
    if m == 1 {
        return 1;
    }
    let a = rem(a, m);
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = rem(x * a, m);
        k += 1;
    }
    k
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: i128) -> i128 {
    assert!(n != 0, "squarefree part of zero");
    let sign = n.signum();
    let mut a = n.unsigned_abs();
    let mut out: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= a {
        let mut e = 0;
        while a % d == 0 {
            a /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out *= a;
    sign * out as i128
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}
