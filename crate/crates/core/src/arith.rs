//! Small machine-integer number theory.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((ℓ, f))` when `n = ℓᶠ` with `ℓ` prime and `f ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            break;
        }
        d += 1;
    }
    let ell = if n % d == 0 { d } else { n };
    let (mut m, mut f) = (n, 0);
    while m % ell == 0 {
        m /= ell;
        f += 1;
    }
    (m == 1).then_some((ell, f))
}

/// Whether `n` is `pᵏ` for some `k ≥ 0` (so `1` counts).
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return n == 1;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 { 0 } else { a / gcd(a, b) * b }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(is_power_of(1, 3) && is_power_of(27, 3) && !is_power_of(6, 2));
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(lcm(4, 6), 12);
    }
}
