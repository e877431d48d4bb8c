//! Small integer helpers shared by the enumeration code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Units of `Z/d`, in increasing order.
pub fn units(d: u32) -> Vec<u32> {
    (1..d).filter(|&r| gcd(r as u64, d as u64) == 1).collect()
}

/// Scale a residue by a unit, returning the canonical representative in `0..d`.
#[inline]
pub fn scale(r: u32, x: u32, d: u32) -> u32 {
    ((r as u64 * x as u64) % d as u64) as u32
}
