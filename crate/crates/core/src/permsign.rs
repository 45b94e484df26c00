//! Permutations induced by cube powers.
//!
//! For p = 3n + 1 and a primitive root g, the sequence g^3, g^6, ...,
//! g^(3n) mod p runs through the n cube residues; ranking each entry
//! against the ascending residue list yields a permutation of 1..n
//! whose parity is the central quantity of this crate. For
//! p = 2 (mod 3) cubing is itself a bijection of the nonzero residues
//! and its parity has a one-line closed form.
//!
//! Parities are computed by cycle decomposition and re-derived by
//! inversion counting; the two must agree, always.

use crate::error::{Error, Result};
use crate::modular::{
    cubic_residues_sorted, mul_mod, pow_mod, primitive_roots, require_class,
    require_primitive_root, require_split_prime,
};

/// The permutation attached to (p, g): `sequence` is g^3, g^6, ...
/// g^(3n) mod p, `sorted` the same values ascending, and `one_line`
/// the rank (1-based) of each sequence entry in `sorted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRecord {
    pub p: u64,
    pub g: u64,
    pub sorted: Vec<u64>,
    pub sequence: Vec<u64>,
    pub one_line: Vec<usize>,
    pub sign: i32,
}

fn require_bijection(one_line: &[usize]) -> Result<()> {
    let n = one_line.len();
    let mut seen = vec![false; n];
    for &v in one_line {
        if v == 0 || v > n || seen[v - 1] {
            return Err(Error::NotABijection);
        }
        seen[v - 1] = true;
    }
    Ok(())
}

/// Parity of a permutation in one-line form (values 1..=n), by cycle
/// decomposition: each cycle of length L contributes (-1)^(L-1).
pub fn permutation_sign(one_line: &[usize]) -> Result<i32> {
    require_bijection(one_line)?;
    let n = one_line.len();
    let mut visited = vec![false; n];
    let mut transpositions = 0usize;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = one_line[i] - 1;
            len += 1;
        }
        transpositions += len - 1;
    }
    Ok(if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// Parity again, via merge-sort inversion counting. Kept as a second,
/// structurally unrelated implementation; the two are cross-checked.
pub fn permutation_sign_by_inversions(one_line: &[usize]) -> Result<i32> {
    require_bijection(one_line)?;
    let mut work = one_line.to_vec();
    let mut buf = vec![0usize; work.len()];
    let inversions = count_inversions(&mut work, &mut buf);
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn count_inversions(v: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = v.split_at_mut(mid);
    let mut inv = count_inversions(left, buf) + count_inversions(right, buf);
    let (mut i, mut j) = (0, 0);
    for slot in buf[..n].iter_mut() {
        if i < left.len() && (j >= right.len() || left[i] <= right[j]) {
            *slot = left[i];
            i += 1;
        } else {
            *slot = right[j];
            j += 1;
            inv += (left.len() - i) as u64;
        }
    }
    v.copy_from_slice(&buf[..n]);
    inv
}

fn sign_cross_checked(one_line: &[usize]) -> Result<i32> {
    let by_cycles = permutation_sign(one_line)?;
    let by_inversions = permutation_sign_by_inversions(one_line)?;
    if by_cycles != by_inversions {
        return Err(Error::internal(format!(
            "parity algorithms disagree: cycles {by_cycles}, inversions {by_inversions}"
        )));
    }
    Ok(by_cycles)
}

/// Builds the cube-power permutation for (p, g) with its parity.
pub fn build_cube_permutation(p: u64, g: u64) -> Result<PermutationRecord> {
    require_split_prime(p)?;
    require_primitive_root(g, p)?;
    let sorted = cubic_residues_sorted(p)?;
    let n = sorted.len();
    let g3 = pow_mod(g, 3, p);
    let mut sequence = Vec::with_capacity(n);
    let mut x = 1u64;
    for _ in 0..n {
        x = mul_mod(x, g3, p);
        sequence.push(x);
    }
    let one_line: Vec<usize> = sequence
        .iter()
        .map(|v| {
            sorted
                .binary_search(v)
                .expect("sequence entry is a cube residue")
                + 1
        })
        .collect();
    let sign = sign_cross_checked(&one_line)?;
    Ok(PermutationRecord {
        p,
        g,
        sorted,
        sequence,
        one_line,
        sign,
    })
}

/// The parity of the cube-power permutation for every primitive root
/// of p, in ascending g order. Shares the residue ranking across
/// roots, so it is much cheaper than building each record separately.
pub fn generator_signs(p: u64) -> Result<Vec<(u64, i32)>> {
    require_split_prime(p)?;
    let sorted = cubic_residues_sorted(p)?;
    let n = sorted.len();
    let mut rank = vec![0usize; p as usize];
    for (i, &v) in sorted.iter().enumerate() {
        rank[v as usize] = i + 1;
    }
    let mut out = Vec::new();
    for g in primitive_roots(p)? {
        let g3 = pow_mod(g, 3, p);
        let mut one_line = Vec::with_capacity(n);
        let mut x = 1u64;
        for _ in 0..n {
            x = mul_mod(x, g3, p);
            one_line.push(rank[x as usize]);
        }
        out.push((g, sign_cross_checked(&one_line)?));
    }
    Ok(out)
}

/// Parity of x -> x^3 on 1..p-1 for odd p = 2 (mod 3), where cubing
/// is a bijection: returns (brute-force parity, closed form
/// (-1)^((p+1)/2)). The two must agree.
pub fn cube_map_sign(p: u64) -> Result<(i32, i32)> {
    require_class(p, 3, 2)?;
    if p == 2 {
        return Err(Error::PrimeTooSmall(p));
    }
    // ranks of 1..p-1 are the values themselves
    let one_line: Vec<usize> = (1..p).map(|x| pow_mod(x, 3, p) as usize).collect();
    let brute = sign_cross_checked(&one_line)?;
    let formula = if p.div_ceil(2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok((brute, formula))
}

/// Both sides of the closed form for the product of all forward
/// differences of the cube-power sequence:
///
///   P = prod over i < j of (g^(3j) - g^(3i)) mod p
///
/// against G = (-1)^((n-2)/4) n^(n/2) when p = 3 (mod 4), and
/// G = (-1)^((n-4)/4) n^(n/2) g^((p-1)/4) when p = 1 (mod 4).
pub fn numerator_eval(p: u64, g: u64) -> Result<(u64, u64)> {
    require_split_prime(p)?;
    require_primitive_root(g, p)?;
    let n = (p - 1) / 3;
    let g3 = pow_mod(g, 3, p);
    let mut powers = Vec::with_capacity(n as usize);
    let mut x = 1u64;
    for _ in 0..n {
        x = mul_mod(x, g3, p);
        powers.push(x);
    }
    let mut prod = 1u64;
    for j in 1..powers.len() {
        for i in 0..j {
            prod = mul_mod(prod, (powers[j] + p - powers[i]) % p, p);
        }
    }
    let (exp, extra) = if p % 4 == 3 {
        ((n - 2) / 4, 1)
    } else {
        ((n - 4) / 4, pow_mod(g, (p - 1) / 4, p))
    };
    let mut closed = mul_mod(pow_mod(n % p, n / 2, p), extra, p);
    if exp % 2 == 1 {
        closed = p - closed;
    }
    Ok((prod, closed))
}

/// Exact integer coefficients of the m-th cyclotomic polynomial,
/// ascending degree. Computed by dividing T^d - 1 by the earlier
/// polynomials for each divisor d; every division is exact.
pub fn cyclotomic(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    let mut computed: Vec<(u64, Vec<i64>)> = Vec::new();
    for &d in &divisors {
        // T^d - 1
        let mut poly = vec![0i64; d as usize + 1];
        poly[0] = -1;
        poly[d as usize] = 1;
        for (e, earlier) in &computed {
            if d % e == 0 {
                poly = poly_div_exact(&poly, earlier);
            }
        }
        computed.push((d, poly));
    }
    computed.pop().expect("m divides m").1
}

/// Division of polynomials with integer coefficients by a monic
/// divisor, asserting zero remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    assert!(
        rem.iter().all(|&c| c == 0),
        "polynomial division left a remainder"
    );
    quot
}

/// Whether the (p-1)-th cyclotomic polynomial reduces mod p to the
/// monic polynomial whose roots are exactly the primitive roots of p.
pub fn cyclotomic_split_check(p: u64) -> Result<crate::CheckOutcome> {
    crate::modular::require_prime(p)?;
    let roots = primitive_roots(p)?;
    // expand prod (T - x) over the field
    let mut expanded = vec![0u64; roots.len() + 1];
    expanded[0] = 1;
    for (deg, &x) in roots.iter().enumerate() {
        expanded[deg + 1] = expanded[deg];
        for i in (1..=deg).rev() {
            expanded[i] = (expanded[i - 1] + mul_mod(expanded[i], p - x, p)) % p;
        }
        expanded[0] = mul_mod(expanded[0], p - x, p);
    }
    let reference = cyclotomic(p - 1);
    if reference.len() != expanded.len() {
        return Ok(crate::CheckOutcome::fail(format!(
            "degree mismatch: {} vs {}",
            reference.len() - 1,
            expanded.len() - 1
        )));
    }
    for (i, &c) in reference.iter().enumerate() {
        let want = c.rem_euclid(p as i64) as u64;
        if expanded[i] != want {
            return Ok(crate::CheckOutcome::fail(format!(
                "coefficient of T^{i}: {} vs {want}",
                expanded[i]
            )));
        }
    }
    Ok(crate::CheckOutcome::pass())
}
