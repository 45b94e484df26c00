//! Counting quantities attached to a prime p = 1 (mod 3): quarter- and
//! half-range residue tallies, the number of solutions of
//! y^3 - x^3 = k, and the difference spectrum of the cube residues.
//!
//! Everything here is computed two ways where a closed form exists:
//! the brute count is the oracle and the closed form is the claim
//! under test. The check functions return a [`CheckOutcome`] carrying
//! the first offending value instead of panicking, so a range audit
//! can report precisely where an identity breaks.

use crate::binform::FormRepresentation;
use crate::eisenstein::{omega_image, EisensteinInt};
use crate::error::{Error, Result};
use crate::modular::{cubic_residues_sorted, pow_mod, require_split_prime};
use crate::CheckOutcome;
use serde::Serialize;

/// Residue tallies for a fixed prime and a fixed primary prime divisor
/// pi of p.
///
/// * `delta`: cube residues in (0, p/4).
/// * `alpha`: sixth power residues in (0, p/2).
/// * `beta`:  quadratic residues in (0, p/2) with cube character w.
/// * `gamma`: quadratic residues in (0, p/2) with cube character w^2.
///
/// `delta` and `alpha` do not depend on the choice of pi; `beta` and
/// `gamma` trade places when pi is conjugated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountsRecord {
    pub delta: u64,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
}

/// The omega image of a primary prime above p, rejecting non-primary
/// input: the beta/gamma split is only meaningful for the primary
/// choice.
fn primary_omega_image(pi: EisensteinInt, p: u64) -> Result<u64> {
    if !pi.is_primary() {
        return Err(Error::NotPrimary(pi));
    }
    omega_image(&pi, p)
}

/// Cube character of x as an exponent: 0, 1, 2 for classes 1, w, w^2,
/// where w is the omega image of the chosen prime divisor.
fn cube_class(x: u64, n: u64, w: u64, p: u64) -> Result<u32> {
    let e = pow_mod(x, n, p);
    if e == 1 {
        Ok(0)
    } else if e == w {
        Ok(1)
    } else if e == pow_mod(w, 2, p) {
        Ok(2)
    } else {
        Err(Error::internal(format!(
            "x^n = {e} is not a cube root of unity for x = {x}, p = {p}"
        )))
    }
}

/// Tallies delta, alpha, beta, gamma for p and a primary pi above p.
pub fn residue_counts(p: u64, pi: EisensteinInt) -> Result<CountsRecord> {
    require_split_prime(p)?;
    let w = primary_omega_image(pi, p)?;
    let n = (p - 1) / 3;
    let mut delta = 0;
    for x in 1..p {
        if 4 * x >= p {
            break;
        }
        if pow_mod(x, n, p) == 1 {
            delta += 1;
        }
    }
    let (mut alpha, mut beta, mut gamma) = (0, 0, 0);
    for x in 1..p {
        if 2 * x >= p {
            break;
        }
        if pow_mod(x, (p - 1) / 2, p) != 1 {
            continue;
        }
        match cube_class(x, n, w, p)? {
            0 => alpha += 1,
            1 => beta += 1,
            _ => gamma += 1,
        }
    }
    Ok(CountsRecord {
        delta,
        alpha,
        beta,
        gamma,
    })
}

/// Number of ordered pairs (x, y) with 0 < x, y < p and
/// y^3 - x^3 = k (mod p), counted two ways.
///
/// The brute count runs over ordered pairs of cube residues at
/// difference k and scales by 9 (each residue has three cube roots).
/// The closed form depends only on the cube class of k:
/// p + r - 8, (2p - r + 3s - 4)/2, or (2p - r - 3s - 4)/2 for classes
/// 1, w, w^2, with (r, s) the normalized solution of 4p = r^2 + 3s^2
/// matching the class containing pi's generator.
pub fn difference_counts(
    p: u64,
    pi: EisensteinInt,
    rep: FormRepresentation,
    k: u64,
) -> Result<(u64, u64)> {
    require_split_prime(p)?;
    let w = primary_omega_image(pi, p)?;
    debug_assert_eq!(rep.r * rep.r + 3 * rep.s * rep.s, 4 * p as i64);
    let k = k % p;
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let n = (p - 1) / 3;
    let residues = cubic_residues_sorted(p)?;
    let mut pairs = 0u64;
    for &x in &residues {
        for &y in &residues {
            if (y + p - x) % p == k {
                pairs += 1;
            }
        }
    }
    let brute = 9 * pairs;
    let formula = difference_count_formula(p, rep, cube_class(k, n, w, p)?)?;
    Ok((brute, formula))
}

/// The closed form for the count above, by cube class of k.
fn difference_count_formula(p: u64, rep: FormRepresentation, class: u32) -> Result<u64> {
    let p = p as i64;
    let value = match class {
        0 => p + rep.r - 8,
        1 => (2 * p - rep.r + 3 * rep.s - 4) / 2,
        _ => (2 * p - rep.r - 3 * rep.s - 4) / 2,
    };
    u64::try_from(value)
        .map_err(|_| Error::internal(format!("negative solution count {value} for p = {p}")))
}

/// Runs the brute-vs-closed-form comparison of [`difference_counts`]
/// for every k in 1..p at once, sharing one O(n^2) pass over the
/// ordered residue pairs.
pub fn check_difference_counts(
    p: u64,
    pi: EisensteinInt,
    rep: FormRepresentation,
) -> Result<CheckOutcome> {
    require_split_prime(p)?;
    let w = primary_omega_image(pi, p)?;
    let n = (p - 1) / 3;
    let residues = cubic_residues_sorted(p)?;
    let mut table = vec![0u64; p as usize];
    for &x in &residues {
        for &y in &residues {
            if x != y {
                table[((y + p - x) % p) as usize] += 1;
            }
        }
    }
    for k in 1..p {
        let brute = 9 * table[k as usize];
        let formula = difference_count_formula(p, rep, cube_class(k, n, w, p)?)?;
        if brute != formula {
            return Ok(CheckOutcome::fail(format!(
                "k = {k}: brute count {brute}, formula {formula}"
            )));
        }
    }
    Ok(CheckOutcome::pass())
}

/// r_table[k] = number of cube-residue pairs x < y with y - x = k,
/// for k = 1..p-1 (index 0 stays zero).
pub fn r_table(p: u64) -> Result<Vec<u64>> {
    let residues = cubic_residues_sorted(p)?;
    let mut table = vec![0u64; p as usize];
    for (i, &x) in residues.iter().enumerate() {
        for &y in &residues[i + 1..] {
            table[(y - x) as usize] += 1;
        }
    }
    Ok(table)
}

/// Checks r_k + r_{p-k} = N(k)/9 for every 0 < k < p, where N(k) is
/// the closed-form solution count. The divisibilities 9 | p + r - 8
/// and 18 | 2p - r +- 3s - 4 are part of the claim.
pub fn check_pair_sums(p: u64, pi: EisensteinInt, rep: FormRepresentation) -> Result<CheckOutcome> {
    require_split_prime(p)?;
    let w = primary_omega_image(pi, p)?;
    let n = (p - 1) / 3;
    let pi64 = p as i64;
    for (label, num, den) in [
        ("p + r - 8", pi64 + rep.r - 8, 9),
        ("2p - r + 3s - 4", 2 * pi64 - rep.r + 3 * rep.s - 4, 18),
        ("2p - r - 3s - 4", 2 * pi64 - rep.r - 3 * rep.s - 4, 18),
    ] {
        if num % den != 0 {
            return Ok(CheckOutcome::fail(format!(
                "{den} does not divide {label} = {num}"
            )));
        }
    }
    let table = r_table(p)?;
    for k in 1..p {
        let sum = table[k as usize] + table[(p - k) as usize];
        let expected = difference_count_formula(p, rep, cube_class(k, n, w, p)?)? / 9;
        if sum != expected {
            return Ok(CheckOutcome::fail(format!(
                "k = {k}: r_k + r_(p-k) = {sum}, formula gives {expected}"
            )));
        }
    }
    Ok(CheckOutcome::pass())
}

/// Checks that the number of cube-residue pairs at difference beyond
/// p/2 has the same parity as delta, the quarter-range cube residue
/// count.
pub fn check_gap_parity(p: u64) -> Result<CheckOutcome> {
    require_split_prime(p)?;
    let n = (p - 1) / 3;
    let table = r_table(p)?;
    let wide: u64 = (1..p)
        .filter(|&k| 2 * k < p)
        .map(|k| table[(p - k) as usize])
        .sum();
    let delta: u64 = (1..p)
        .take_while(|&x| 4 * x < p)
        .filter(|&x| pow_mod(x, n, p) == 1)
        .count() as u64;
    if wide % 2 == delta % 2 {
        Ok(CheckOutcome::pass())
    } else {
        Ok(CheckOutcome::fail(format!(
            "wide-gap pair count {wide} vs quarter-range count {delta}"
        )))
    }
}

/// Products of the half range (0, p/2) split by cube class, evaluated
/// mod p with omega realized as w. Returns the products over the
/// classes 1, w, w^2 in that order.
pub(crate) fn half_range_products(p: u64, w: u64) -> Result<(u64, u64, u64)> {
    let n = (p - 1) / 3;
    let mut prods = [1u64, 1, 1];
    for x in 1..p {
        if 2 * x >= p {
            break;
        }
        let class = cube_class(x, n, w, p)? as usize;
        prods[class] = prods[class] * x % p;
    }
    Ok((prods[0], prods[1], prods[2]))
}

/// For p = 7 (mod 12): the three half-range class products satisfy
///
/// * product over class 1   = (-1)^(1 + alpha)        (mod p)
/// * product over class w   = (-1)^(1 + beta) * w^2   (mod p)
/// * product over class w^2 = (-1)^(1 + gamma) * w    (mod p)
pub fn check_half_range_products(p: u64, pi: EisensteinInt) -> Result<CheckOutcome> {
    if p % 12 != 7 {
        return Err(Error::WrongResidueClass {
            p,
            expected: 7,
            modulus: 12,
        });
    }
    require_split_prime(p)?;
    let w = primary_omega_image(pi, p)?;
    let counts = residue_counts(p, pi)?;
    let (p1, pw, pw2) = half_range_products(p, w)?;
    let sign_pow = |e: u64| if e.is_multiple_of(2) { 1 } else { p - 1 };
    let w2 = w * w % p;
    let checks = [
        ("class 1", p1, sign_pow(1 + counts.alpha)),
        ("class w", pw, sign_pow(1 + counts.beta) * w2 % p),
        ("class w^2", pw2, sign_pow(1 + counts.gamma) * w % p),
    ];
    for (label, got, want) in checks {
        if got != want {
            return Ok(CheckOutcome::fail(format!(
                "{label}: product {got}, expected {want}"
            )));
        }
    }
    Ok(CheckOutcome::pass())
}
