//! Small exact number-theory helpers shared across the crate: gcd, primality
//! by trial division, modular exponentiation, multiplicative order, Euler's
//! totient, and integer square root. Everything here works on machine
//! integers; all inputs in this crate are desk-scale.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Trial-division primality test. Fine for the moduli used here (q < 10^6).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// a^e mod n.
pub fn mod_pow(mut a: u64, mut e: u64, n: u64) -> u64 {
    assert!(n > 0, "mod_pow: zero modulus");
    a %= n;
    let mut acc: u64 = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % n;
        }
        a = a * a % n;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `n`, or `None` if gcd(a, n) != 1.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 0 || gcd(a % n, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut ord = 1u64;
    while x != 1 % n {
        x = x * (a % n) % n;
        ord += 1;
    }
    Some(ord)
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    assert!(n > 0, "euler_phi: n must be positive");
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Floor of the square root, exact on integers.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // Float seed, then correct: the loop moves at most a step or two.
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= n) {
        x += 1;
    }
    x
}
