//! Exact arithmetic in Z[w], where w is a primitive cube root of unity,
//! so w^2 = -1 - w and the norm of a + bw is a^2 - ab + b^2.
//!
//! Convention used throughout: an element is *primary* when it is
//! congruent to 2 mod 3, i.e. a = 2 (mod 3) and b = 0 (mod 3). Every
//! element whose norm is coprime to 3 has exactly one primary associate
//! among its six unit multiples, and the conjugate of a primary element
//! is again primary. All cube-symbol computations in this crate assume
//! this normalization, and all of them are evaluated inside the prime
//! field (never by exponentiation in Z[w] itself): for a prime p = 1
//! (mod 3) that factors as p = pi * conj(pi), the class of w mod pi is
//! realized as the integer root of x^2 + x + 1 attached to pi, and
//! Euler's criterion k^((p-1)/3) is compared against {1, w, w^2} there.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{
    self, inv_mod, mul_mod, pow_mod, require_primitive_root, require_split_prime,
};

/// Coordinates are kept within +/- 2^62 so norms stay exact in i128.
/// Checked arithmetic reports `Error::Overflow` instead of exceeding it.
pub const COORD_LIMIT: i64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl std::fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}w", self.a, -(self.b as i128))
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

fn coord(v: i128) -> Result<i64> {
    if v.unsigned_abs() > COORD_LIMIT as u128 {
        Err(Error::Overflow)
    } else {
        Ok(v as i64)
    }
}

impl EisensteinInt {
    pub const ZERO: Self = EisensteinInt { a: 0, b: 0 };
    pub const ONE: Self = EisensteinInt { a: 1, b: 0 };
    pub const OMEGA: Self = EisensteinInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        debug_assert!(a.unsigned_abs() <= COORD_LIMIT as u64);
        debug_assert!(b.unsigned_abs() <= COORD_LIMIT as u64);
        EisensteinInt { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// a^2 - ab + b^2, always nonnegative. Exact for coordinates within
    /// `COORD_LIMIT`, which checked arithmetic preserves.
    pub fn norm(&self) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        a * a - a * b + b * b
    }

    /// Complex conjugate: a + bw maps to (a - b) - bw.
    pub fn conj(&self) -> Self {
        EisensteinInt {
            a: self.a - self.b,
            b: -self.b,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(EisensteinInt {
            a: coord(self.a as i128 + other.a as i128)?,
            b: coord(self.b as i128 + other.b as i128)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(EisensteinInt {
            a: coord(self.a as i128 - other.a as i128)?,
            b: coord(self.b as i128 - other.b as i128)?,
        })
    }

    /// (a1 + b1 w)(a2 + b2 w) with w^2 = -1 - w folded in.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2) = (other.a as i128, other.b as i128);
        Ok(EisensteinInt {
            a: coord(a1 * a2 - b1 * b2)?,
            b: coord(a1 * b2 + a2 * b1 - b1 * b2)?,
        })
    }

    pub fn neg(&self) -> Self {
        EisensteinInt {
            a: -self.a,
            b: -self.b,
        }
    }

    /// True when congruent to 2 mod 3 (the primary normalization).
    pub fn is_primary(&self) -> bool {
        self.a.rem_euclid(3) == 2 && self.b.rem_euclid(3) == 0
    }
}

impl std::ops::Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: EisensteinInt) -> EisensteinInt {
        self.checked_add(&rhs)
            .expect("coordinate overflow in Z[w] addition")
    }
}

impl std::ops::Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: EisensteinInt) -> EisensteinInt {
        self.checked_sub(&rhs)
            .expect("coordinate overflow in Z[w] subtraction")
    }
}

impl std::ops::Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: EisensteinInt) -> EisensteinInt {
        self.checked_mul(&rhs)
            .expect("coordinate overflow in Z[w] multiplication")
    }
}

impl std::ops::Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt::neg(&self)
    }
}

/// Nearest integer to num/den (den > 0), ties going to the even
/// quotient, which makes `divrem` fully deterministic.
fn round_half_even(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let q = num.div_euclid(den);
    let r = num.rem_euclid(den);
    match (2 * r).cmp(&den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q % 2 == 0 {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Euclidean division: u = q*v + rem with norm(rem) < norm(v). The
/// quotient is u * conj(v) / norm(v) rounded coordinate-wise.
pub fn divrem(u: &EisensteinInt, v: &EisensteinInt) -> Result<(EisensteinInt, EisensteinInt)> {
    if v.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let (a1, b1) = (u.a as i128, u.b as i128);
    // conj(v) in i128 to keep the intermediate products wide.
    let (a2, b2) = ((v.a - v.b) as i128, -(v.b) as i128);
    let num_a = a1 * a2 - b1 * b2;
    let num_b = a1 * b2 + a2 * b1 - b1 * b2;
    let den = v.norm();
    let qa = round_half_even(num_a, den);
    let qb = round_half_even(num_b, den);
    let q = EisensteinInt {
        a: coord(qa)?,
        b: coord(qb)?,
    };
    // rem = u - q*v, computed wide then narrowed.
    let (va, vb) = (v.a as i128, v.b as i128);
    let ra = a1 - (qa * va - qb * vb);
    let rb = b1 - (qa * vb + qb * va - qb * vb);
    let rem = EisensteinInt {
        a: coord(ra)?,
        b: coord(rb)?,
    };
    debug_assert!(rem.norm() < v.norm(), "remainder must shrink");
    Ok((q, rem))
}

/// Greatest common divisor up to units, by the Euclidean algorithm.
pub fn gcd(u: &EisensteinInt, v: &EisensteinInt) -> Result<EisensteinInt> {
    if u.is_zero() && v.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let mut u = *u;
    let mut v = *v;
    while !v.is_zero() {
        let (_, rem) = divrem(&u, &v)?;
        u = v;
        v = rem;
    }
    Ok(u)
}

const UNITS: [EisensteinInt; 6] = [
    EisensteinInt { a: 1, b: 0 },   // 1
    EisensteinInt { a: -1, b: 0 },  // -1
    EisensteinInt { a: 0, b: 1 },   // w
    EisensteinInt { a: 0, b: -1 },  // -w
    EisensteinInt { a: -1, b: -1 }, // w^2
    EisensteinInt { a: 1, b: 1 },   // -w^2
];

/// The unique primary associate of z. Fails with `NotCoprimeToThree`
/// when 3 divides norm(z), since no associate is primary then.
pub fn primary_associate(z: &EisensteinInt) -> Result<EisensteinInt> {
    if z.norm() % 3 == 0 {
        return Err(Error::NotCoprimeToThree(*z));
    }
    let mut found = None;
    for u in &UNITS {
        let cand = z.checked_mul(u)?;
        if cand.is_primary() {
            if found.is_some() {
                return Err(Error::internal(format!("two primary associates of {z}")));
            }
            found = Some(cand);
        }
    }
    found.ok_or_else(|| Error::internal(format!("no primary associate of {z}")))
}

/// The integer in (0, p) representing the class of w modulo pi, i.e.
/// -a/b mod p for pi = a + bw. It is always a root of x^2 + x + 1.
pub fn omega_image(pi: &EisensteinInt, p: u64) -> Result<u64> {
    require_split_prime(p)?;
    if pi.norm() != p as i128 {
        return Err(Error::internal(format!("{pi} does not have norm {p}")));
    }
    let br = pi.b.rem_euclid(p as i64) as u64;
    if br == 0 {
        return Err(Error::internal(format!("{pi} has rational b = 0 mod {p}")));
    }
    let ar = (-pi.a).rem_euclid(p as i64) as u64;
    let w = mul_mod(ar, inv_mod(br, p), p);
    let check = (mul_mod(w, w, p) + w + 1) % p;
    if check != 0 {
        return Err(Error::internal(format!(
            "omega image {w} of {pi} is not a cube root of unity"
        )));
    }
    Ok(w)
}

/// Value of the cube residue symbol: 0 or a power of w.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubicSymbolValue {
    Zero,
    One,
    Omega,
    OmegaSq,
}

impl CubicSymbolValue {
    /// Exponent e with value w^e, or None for zero.
    pub fn exponent(self) -> Option<u32> {
        match self {
            CubicSymbolValue::Zero => None,
            CubicSymbolValue::One => Some(0),
            CubicSymbolValue::Omega => Some(1),
            CubicSymbolValue::OmegaSq => Some(2),
        }
    }

    pub fn from_exponent(e: u32) -> Self {
        match e % 3 {
            0 => CubicSymbolValue::One,
            1 => CubicSymbolValue::Omega,
            _ => CubicSymbolValue::OmegaSq,
        }
    }

    /// Conjugation squares the symbol.
    pub fn conjugate(self) -> Self {
        self * self
    }
}

impl std::ops::Mul for CubicSymbolValue {
    type Output = CubicSymbolValue;

    // multiplying roots of unity adds their exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Self) -> Self {
        match (self.exponent(), other.exponent()) {
            (Some(x), Some(y)) => CubicSymbolValue::from_exponent(x + y),
            _ => CubicSymbolValue::Zero,
        }
    }
}

impl std::fmt::Display for CubicSymbolValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CubicSymbolValue::Zero => write!(f, "0"),
            CubicSymbolValue::One => write!(f, "1"),
            CubicSymbolValue::Omega => write!(f, "w"),
            CubicSymbolValue::OmegaSq => write!(f, "w^2"),
        }
    }
}

/// Cube residue symbol of k at the primary prime pi above p, evaluated
/// entirely in the prime field: k^((p-1)/3) must land in {1, w, w^2}
/// where w is pi's omega image.
pub fn cubic_symbol(k: i64, pi: &EisensteinInt, p: u64) -> Result<CubicSymbolValue> {
    let w = omega_image(pi, p)?;
    let kr = k.rem_euclid(p as i64) as u64;
    if kr == 0 {
        return Ok(CubicSymbolValue::Zero);
    }
    let e = pow_mod(kr, (p - 1) / 3, p);
    if e == 1 {
        Ok(CubicSymbolValue::One)
    } else if e == w {
        Ok(CubicSymbolValue::Omega)
    } else if e == mul_mod(w, w, p) {
        Ok(CubicSymbolValue::OmegaSq)
    } else {
        Err(Error::internal(format!(
            "{kr}^((p-1)/3) = {e} mod {p} is not a cube root of unity"
        )))
    }
}

/// The primary prime above p whose omega image is (t - 1)/2 for the
/// minimal square root t of -3 mod p. Obtained from gcd(p, w_0 - w) and
/// normalized primary.
pub fn prime_above(p: u64) -> Result<EisensteinInt> {
    require_split_prime(p)?;
    let t = modular::sqrt_minus3(p)?;
    let w0 = mul_mod(t - 1, p.div_ceil(2), p);
    let z = gcd(
        &EisensteinInt::new(p as i64, 0),
        &EisensteinInt::new(w0 as i64, -1),
    )?;
    let pi = primary_associate(&z)?;
    if pi.norm() != p as i128 {
        return Err(Error::internal(format!(
            "gcd above {p} has norm {}",
            pi.norm()
        )));
    }
    let w = omega_image(&pi, p)?;
    if w != w0 {
        return Err(Error::internal(format!(
            "prime above {p} has omega image {w}, wanted {w0}"
        )));
    }
    Ok(pi)
}

/// Of the two primary primes above p, the one at which the symbol of
/// the generator g is w itself (not w^2). This is the normalization
/// every downstream count and sign formula assumes.
pub fn choose_pi(p: u64, g: u64) -> Result<EisensteinInt> {
    require_split_prime(p)?;
    require_primitive_root(g, p)?;
    let candidate = prime_above(p)?;
    let pi = match cubic_symbol(g as i64, &candidate, p)? {
        CubicSymbolValue::Omega => candidate,
        CubicSymbolValue::OmegaSq => candidate.conj(),
        other => {
            return Err(Error::internal(format!(
                "symbol of primitive root {g} mod {p} is {other}"
            )))
        }
    };
    debug_assert!(pi.is_primary());
    if cubic_symbol(g as i64, &pi, p)? != CubicSymbolValue::Omega {
        return Err(Error::internal(format!(
            "chosen prime for ({p}, {g}) misnormalized"
        )));
    }
    Ok(pi)
}
