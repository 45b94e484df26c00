//! Prime-field arithmetic: deterministic primality testing, modular
//! powers, Legendre symbols, primitive roots, cube residues, and square
//! roots of -3.

use crate::error::{Error, Result};

/// Upper bound on accepted primes. Residues below 2^31 keep every
/// product of two of them inside u64 after one widening multiply, and
/// the brute-force oracles are quadratic anyway, so nothing is lost.
pub const MAX_PRIME: u64 = 1 << 31;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    assert!(m > 0, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut exp = exp;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo an odd prime `p`, by Fermat's little theorem.
#[inline]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero requested");
    pow_mod(a, p - 2, p)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with a fixed witness set that is deterministic for every
/// n < 2^64, so no randomness is involved anywhere in the crate.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Checks `p = expected (mod modulus)` after checking primality.
pub(crate) fn require_class(p: u64, modulus: u64, expected: u64) -> Result<()> {
    require_prime(p)?;
    if p % modulus != expected {
        return Err(Error::WrongResidueClass {
            p,
            expected,
            modulus,
        });
    }
    Ok(())
}

/// A prime p = 1 (mod 3) large enough for the splitting machinery.
pub(crate) fn require_split_prime(p: u64) -> Result<()> {
    require_class(p, 3, 1)?;
    debug_assert!(p >= 7);
    Ok(())
}

/// Trial division. Fine for the supported range; factoring only ever
/// runs on p - 1 for p < 2^31.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
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
    let mut phi = n;
    for (q, _) in factorize(n) {
        phi = phi / q * (q - 1);
    }
    phi
}

/// Legendre symbol (a/p) as -1, 0, 1, computed by Euler's criterion.
/// `a` may be negative; it is reduced first.
pub fn legendre_symbol(a: i64, p: u64) -> i32 {
    debug_assert!(p > 2 && is_prime(p));
    let ar = a.rem_euclid(p as i64) as u64;
    if ar == 0 {
        return 0;
    }
    let e = pow_mod(ar, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// A validated odd prime with the factorization of p - 1 cached, since
/// every primitive-root test needs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeModulus {
    p: u64,
    third: Option<u64>,
    factors: Vec<(u64, u32)>,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        if p == 2 {
            return Err(Error::WrongResidueClass {
                p,
                expected: 1,
                modulus: 2,
            });
        }
        let third = if p % 3 == 1 { Some((p - 1) / 3) } else { None };
        Ok(PrimeModulus {
            p,
            third,
            factors: factorize(p - 1),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// (p - 1) / 3 when p = 1 (mod 3), the exponent behind every cube
    /// residue test in the crate.
    pub fn third(&self) -> Option<u64> {
        self.third
    }

    pub fn factors_of_order(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_primitive_root(&self, g: u64) -> bool {
        let g = g % self.p;
        if g == 0 {
            return false;
        }
        self.factors
            .iter()
            .all(|&(q, _)| pow_mod(g, (self.p - 1) / q, self.p) != 1)
    }

    /// All primitive roots in (0, p), ascending. The count is always
    /// phi(p - 1).
    pub fn primitive_roots(&self) -> Vec<u64> {
        (1..self.p).filter(|&g| self.is_primitive_root(g)).collect()
    }

    pub fn smallest_primitive_root(&self) -> u64 {
        (1..self.p)
            .find(|&g| self.is_primitive_root(g))
            .expect("every prime has a primitive root")
    }
}

pub fn primitive_roots(p: u64) -> Result<Vec<u64>> {
    require_prime(p)?;
    if p == 2 {
        return Ok(vec![1]);
    }
    Ok(PrimeModulus::new(p)?.primitive_roots())
}

pub fn is_primitive_root(g: u64, p: u64) -> Result<bool> {
    require_prime(p)?;
    if p == 2 {
        return Ok(g % 2 == 1);
    }
    Ok(PrimeModulus::new(p)?.is_primitive_root(g))
}

pub fn smallest_primitive_root(p: u64) -> Result<u64> {
    require_prime(p)?;
    if p == 2 {
        return Ok(1);
    }
    Ok(PrimeModulus::new(p)?.smallest_primitive_root())
}

pub(crate) fn require_primitive_root(g: u64, p: u64) -> Result<()> {
    if is_primitive_root(g, p)? && g < p {
        Ok(())
    } else {
        Err(Error::NotPrimitiveRoot { g, p })
    }
}

/// The n = (p-1)/3 cube residues of p = 1 (mod 3), ascending. These are
/// exactly the x in (0, p) with x^n = 1.
pub fn cubic_residues_sorted(p: u64) -> Result<Vec<u64>> {
    require_split_prime(p)?;
    let n = (p - 1) / 3;
    Ok((1..p).filter(|&x| pow_mod(x, n, p) == 1).collect())
}

/// Square root mod an odd prime by Tonelli-Shanks, returning the smaller
/// of the two roots, or None when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    debug_assert!(p > 2 && is_prime(p));
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_symbol(a as i64, p) != 1 {
        return None;
    }
    // p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    let root = if s == 1 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let z = (2..p)
            .find(|&z| legendre_symbol(z as i64, p) == -1)
            .expect("odd prime has a quadratic non-residue");
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
                debug_assert!(i < m);
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mul_mod(b, b, p);
            }
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    debug_assert_eq!(mul_mod(root, root, p), a);
    Some(root.min(p - root))
}

/// Exhaustive-scan cutoff for `sqrt_minus3`. Below it the root is found
/// by direct search, above it by Tonelli-Shanks; the two methods are
/// cross-checked in the test suite on their shared range.
pub const SQRT_SCAN_LIMIT: u64 = 1_000_000;

/// Smallest t in (0, p/2) with t^2 = -3 (mod p). Exists exactly when
/// p = 1 (mod 3).
pub fn sqrt_minus3(p: u64) -> Result<u64> {
    require_split_prime(p)?;
    let target = p - 3;
    if p < SQRT_SCAN_LIMIT {
        for t in 1..p {
            if t * t % p == target {
                return Ok(t);
            }
        }
        Err(Error::internal(format!(
            "no square root of -3 found for p = {p}"
        )))
    } else {
        sqrt_mod(target, p).ok_or_else(|| Error::internal(format!("-3 is not a square mod {p}")))
    }
}
