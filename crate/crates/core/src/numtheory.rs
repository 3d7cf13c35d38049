//! Modular arithmetic primitives: inverses, Legendre symbols, primitive
//! roots, the Chinese remainder theorem and the product-counting function
//! ν(n, d) that enters the Clifford group order.
//!
//! All reductions return least nonnegative representatives.

use num_integer::Integer;

use crate::error::{Error, Result};

/// A dimension `d` together with the matrix modulus `dbar` (`d` for odd
/// `d`, `2d` for even `d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    d: i64,
    dbar: i64,
}

impl Modulus {
    pub fn new(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        let dbar = if d % 2 == 0 { 2 * d } else { d };
        Ok(Modulus { d, dbar })
    }

    #[inline]
    pub fn d(&self) -> i64 {
        self.d
    }

    #[inline]
    pub fn dbar(&self) -> i64 {
        self.dbar
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d as usize
    }

    #[inline]
    pub fn is_even(&self) -> bool {
        self.d % 2 == 0
    }

    /// Reduce modulo `d`.
    #[inline]
    pub fn red_d(&self, x: i64) -> i64 {
        x.rem_euclid(self.d)
    }

    /// Reduce modulo `dbar`.
    #[inline]
    pub fn red_dbar(&self, x: i64) -> i64 {
        x.rem_euclid(self.dbar)
    }
}

#[inline]
pub fn reduce(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `base^exp mod m` by square-and-multiply.
pub fn mod_pow(base: i64, mut exp: u64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as i128;
    let mut b = base.rem_euclid(m) as i128;
    let mut acc: i128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as i64
}

/// Multiplicative inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::NotInvertible { a, m });
    }
    let ext = a.rem_euclid(m).extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(ext.x.rem_euclid(m))
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
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
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: i64) -> i64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Legendre symbol `(r/p)` via Euler's criterion.
pub fn legendre_symbol(r: i64, p: i64) -> Result<i64> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let r = r.rem_euclid(p);
    if r == 0 {
        return Ok(0);
    }
    match mod_pow(r, ((p - 1) / 2) as u64, p) {
        1 => Ok(1),
        _ => Ok(-1),
    }
}

/// Number of ordered pairs `(x, y)` in `(Z_d)^2` with `x y ≡ n (mod d)`.
///
/// For fixed `x` the congruence `x y ≡ n` has `gcd(x, d)` solutions when
/// that gcd divides `n`, and none otherwise.
pub fn nu_count(n: i64, d: i64) -> u64 {
    assert!(d >= 1, "nu_count requires d >= 1");
    let n = n.rem_euclid(d);
    (0..d)
        .map(|x| {
            let g = gcd(x, d);
            if n % g == 0 {
                g as u64
            } else {
                0
            }
        })
        .sum()
}

/// The table `n ↦ ν(n, d)` for `n` in `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCountTable {
    pub d: i64,
    pub counts: Vec<u64>,
}

impl ResidueCountTable {
    pub fn new(d: i64) -> Self {
        let counts = (0..d).map(|n| nu_count(n, d)).collect();
        ResidueCountTable { d, counts }
    }

    pub fn get(&self, n: i64) -> u64 {
        self.counts[n.rem_euclid(self.d) as usize]
    }

    /// `Σ_n ν(n, d) ν(n + 1, d)`, the order of `SL(2, Z_d)`.
    pub fn adjacent_product_sum(&self) -> u64 {
        (0..self.d).map(|n| self.get(n) * self.get(n + 1)).sum()
    }
}

/// Multiplicative order of `a` modulo `m`, given `phi = φ(m)`.
fn order_divides_phi(a: i64, m: i64, phi: i64) -> i64 {
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order % q == 0 && mod_pow(a, (order / q) as u64, m) == 1 {
            order /= q;
        }
    }
    order
}

/// Multiplicative order of `a` modulo `m`; `None` when `gcd(a, m) ≠ 1`.
pub fn multiplicative_order(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a.rem_euclid(m), m) != 1 {
        return None;
    }
    Some(order_divides_phi(a, m, euler_phi(m)))
}

/// Smallest `g ≥ 2` whose multiplicative order modulo `p^n` is
/// `φ(p^n) = (p − 1) p^(n−1)`.
///
/// For `n ≥ 2` such a `g` is a primitive root for every power of `p`.
pub fn primitive_root(p: i64, n: u32) -> Result<i64> {
    if p < 3 || p % 2 == 0 || !is_prime(p) || n == 0 {
        return Err(Error::InvalidModulus(p));
    }
    let m = p.pow(n);
    let phi = (p - 1) * p.pow(n - 1);
    (2..m)
        .find(|&g| g % p != 0 && order_divides_phi(g, m, phi) == phi)
        .ok_or(Error::InvalidModulus(p))
}

/// Solve `x ≡ r_i (mod m_i)` for pairwise coprime moduli. Returns the
/// solution in `[0, Π m_i)` together with the product modulus.
pub fn crt(congruences: &[(i64, i64)]) -> Option<(i64, i64)> {
    let mut x: i128 = 0;
    let mut modulus: i128 = 1;
    for &(r, m) in congruences {
        if gcd(modulus as i64, m) != 1 {
            return None;
        }
        // x + modulus * k ≡ r (mod m)
        let inv = mod_inverse(modulus.rem_euclid(m as i128) as i64, m).ok()? as i128;
        let k = ((r as i128 - x).rem_euclid(m as i128) * inv).rem_euclid(m as i128);
        x += modulus * k;
        modulus *= m as i128;
        x = x.rem_euclid(modulus);
    }
    Some((x as i64, modulus as i64))
}

/// The three factorization conditions under which a diagonal canonical
/// order-3 unitary exists: some prime factor `≡ 1 (mod 3)`, no prime factor
/// `≡ 2 (mod 3)`, and `9 ∤ d`.
pub fn has_diagonal_order3_factorization(d: i64) -> bool {
    if d < 2 || d % 9 == 0 {
        return false;
    }
    let factors = factorize(d);
    let any_one = factors.iter().any(|&(p, _)| p % 3 == 1);
    let none_two = factors.iter().all(|&(p, _)| p % 3 != 2);
    any_one && none_two
}

const SCAN_LIMIT: i64 = 1000;

/// A root `α` of `α² + α + 1 ≡ 0 (mod d)` when `d` satisfies
/// [`has_diagonal_order3_factorization`]; `None` otherwise.
///
/// Below 1000 the smallest root is found by scanning; above, the root is
/// assembled from primitive roots of each prime power and glued by CRT.
pub fn solve_unity_cube_root(d: i64) -> Option<i64> {
    if !has_diagonal_order3_factorization(d) {
        return None;
    }
    if d < SCAN_LIMIT {
        unity_cube_root_scan(d)
    } else {
        unity_cube_root_constructive(d)
    }
}

/// Smallest `α ∈ Z_d` with `α² + α + 1 ≡ 0 (mod d)`, if any. No conditions
/// on `d` are checked.
pub fn unity_cube_root_scan(d: i64) -> Option<i64> {
    (0..d).find(|&a| (a * a + a + 1) % d == 0)
}

/// Build `α` prime power by prime power: for `p^n` with `p = 3k + 1` take
/// `α_p = g^(k p^(n−1))` for a primitive root `g`; for a single factor 3
/// take `α ≡ 1`. Returns `None` if `d` fails the factorization conditions.
pub fn unity_cube_root_constructive(d: i64) -> Option<i64> {
    if !has_diagonal_order3_factorization(d) {
        return None;
    }
    let mut congruences = Vec::new();
    for (p, n) in factorize(d) {
        if p == 3 {
            congruences.push((1, 3));
            continue;
        }
        let k = (p - 1) / 3;
        let g = primitive_root(p, n.max(2)).ok()?;
        let pn = p.pow(n);
        let exp = (k * p.pow(n - 1)) as u64;
        congruences.push((mod_pow(g, exp, pn), pn));
    }
    crt(&congruences).map(|(x, _)| x)
}
