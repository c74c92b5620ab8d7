//! Elementary arithmetic functions.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, as the representative in `[0, m)`.
///
/// For `m = 1` the only residue is 0, which is returned.
pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    if m == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    Ok(old_s.rem_euclid(i128::from(m)) as u64)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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

/// Euler's totient. `euler_phi(1) = 1`.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return crate::error::domain("euler_phi(0) is undefined");
    }
    Ok(factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisor counts `tau[0..=n]` (with `tau[0] = 0`) by a linear sieve.
pub fn divisor_count_table(n: usize) -> Vec<u32> {
    let mut tau = vec![0u32; n + 1];
    // exponent of the smallest prime factor
    let mut e = vec![0u32; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    if n >= 1 {
        tau[1] = 1;
    }
    for i in 2..=n {
        if tau[i] == 0 {
            primes.push(i);
            tau[i] = 2;
            e[i] = 1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                e[ip] = e[i] + 1;
                tau[ip] = tau[i] / (e[i] + 1) * (e[i] + 2);
                break;
            }
            e[ip] = 1;
            tau[ip] = tau[i] * 2;
        }
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert_eq!(mod_inverse(5, 1).unwrap(), 0);
        assert!(mod_inverse(2, 4).is_err());
        for m in 2..200u64 {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    assert_eq!(a * mod_inverse(a, m).unwrap() % m, 1);
                }
            }
        }
    }

    #[test]
    fn totient_and_mobius_small_values() {
        let phi: Vec<u64> = (1..=12).map(|n| euler_phi(n).unwrap()).collect();
        assert_eq!(phi, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let tau = divisor_count_table(5000);
        for n in 1..=5000u64 {
            assert_eq!(tau[n as usize] as usize, divisors(n).len(), "n = {n}");
        }
    }
}
