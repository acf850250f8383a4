//! Exact arithmetic in the cyclotomic field of order 8K (K an odd prime),
//! quadratic Gauss sums, Legendre symbols and the (ζ−1)-basis expansion.
//!
//! `z = e^{2πi/8K}` generates the field; the canonical basis is
//! `1, z, …, z^{4(K−1)−1}` and the minimal polynomial is
//! `Φ_{8K}(z) = Σ_{i<K} (−1)^i z^{4i}`.
//! Useful landmarks: `ζ_K = z^8`, `ζ_{2K} = z^4`, `e^{iπ/4} = z^K`, `i = z^{2K}`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalartower::{fmt_q, q, q2, Q};

/// Default upper bound on K for field computations.
pub const DEFAULT_K_BOUND: u32 = 23;

pub fn is_odd_prime(k: i64) -> bool {
    if k < 3 || k % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= k {
        if k % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Rejects anything that is not an odd prime no larger than `bound`.
pub fn check_k(k: u32, bound: u32) -> Result<()> {
    if !is_odd_prime(k as i64) {
        return Err(Error::NotPrime(k as i64));
    }
    if k > bound {
        return Err(Error::KOutOfBound { k, bound });
    }
    Ok(())
}

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol `(p/K)` by Euler's criterion.
pub fn legendre(p: i64, k: i64) -> Result<i8> {
    if !is_odd_prime(k) {
        return Err(Error::NotPrime(k));
    }
    let r = pow_mod(p, (k - 1) / 2, k);
    Ok(match r {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

pub fn mod_inverse(q: i64, k: i64) -> Result<i64> {
    let r = q.rem_euclid(k);
    if r == 0 {
        return Err(Error::NonInvertible);
    }
    let e = r.extended_gcd(&k);
    if e.gcd != 1 {
        return Err(Error::NonInvertible);
    }
    Ok(e.x.rem_euclid(k))
}

/// A residue modulo a prime K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModularValue {
    pub k: u32,
    pub residue: u32,
}

impl ModularValue {
    pub fn new(x: i64, k: u32) -> Self {
        ModularValue { k, residue: x.rem_euclid(k as i64) as u32 }
    }
    /// Reduction of a rational with denominator prime to K.
    pub fn from_q(x: &Q, k: u32) -> Result<Self> {
        let kk = BigInt::from(k);
        let n = x.numer().mod_floor(&kk).to_i64().unwrap_or(0);
        let d = x.denom().mod_floor(&kk).to_i64().unwrap_or(0);
        vee(n, d, k)
    }
}

impl fmt::Display for ModularValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.k)
    }
}

/// `(p/q)^∨ = p·q*` with `q·q* ≡ 1 mod K`.
pub fn vee(p: i64, q: i64, k: u32) -> Result<ModularValue> {
    let qs = mod_inverse(q, k as i64)?;
    Ok(ModularValue::new(p.rem_euclid(k as i64) * qs, k))
}

/// Element of `Z[C_{8K}]`-with-rational-coefficients: a formal combination of
/// powers of `z`, not yet reduced by the minimal polynomial. Cheap to
/// accumulate into; reduce once with [`PowerSum::reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSum {
    k: u32,
    c: Vec<Q>,
}

impl PowerSum {
    pub fn new(k: u32) -> Self {
        PowerSum { k, c: vec![Q::zero(); 8 * k as usize] }
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Adds `coeff · z^e` (`e` taken mod 8K).
    pub fn add(&mut self, e: i64, coeff: &Q) {
        let n = 8 * self.k as i64;
        self.c[e.rem_euclid(n) as usize] += coeff;
    }
    pub fn add_int(&mut self, e: i64, coeff: i64) {
        self.add(e, &q(coeff));
    }
    pub fn add_assign(&mut self, o: &PowerSum) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
    pub fn mul(&self, o: &PowerSum) -> PowerSum {
        let n = self.c.len();
        let mut out = PowerSum::new(self.k);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out.c[(i + j) % n] += a * b;
                }
            }
        }
        out
    }
    pub fn reduce(&self) -> CycNumber {
        let k = self.k as usize;
        let d = 4 * (k - 1);
        let mut c = self.c.clone();
        for j in (d..8 * k).rev() {
            if c[j].is_zero() {
                continue;
            }
            let v = core::mem::replace(&mut c[j], Q::zero());
            // z^j = −Σ_{i=0}^{K−2} (−1)^i z^{j−d+4i}
            for i in 0..k - 1 {
                let idx = j - d + 4 * i;
                if i % 2 == 0 {
                    c[idx] -= &v;
                } else {
                    c[idx] += &v;
                }
            }
        }
        c.truncate(d);
        CycNumber { k: self.k, coeffs: c }
    }
}

/// Exact element of the cyclotomic field of order 8K.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNumber {
    k: u32,
    coeffs: Vec<Q>,
}

impl CycNumber {
    pub fn dim(k: u32) -> usize {
        4 * (k as usize - 1)
    }
    pub fn zero(k: u32) -> Self {
        CycNumber { k, coeffs: vec![Q::zero(); Self::dim(k)] }
    }
    pub fn one(k: u32) -> Self {
        Self::from_q(k, Q::one())
    }
    pub fn from_q(k: u32, x: Q) -> Self {
        let mut c = Self::zero(k);
        c.coeffs[0] = x;
        c
    }
    pub fn from_int(k: u32, x: i64) -> Self {
        Self::from_q(k, q(x))
    }
    /// Builds from coordinates in the canonical basis.
    pub fn from_coeffs(k: u32, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != Self::dim(k) {
            return Err(Error::Unsupported("coordinate vector has the wrong dimension"));
        }
        Ok(CycNumber { k, coeffs })
    }
    /// `z^e`.
    pub fn z_pow(k: u32, e: i64) -> Self {
        let mut s = PowerSum::new(k);
        s.add_int(e, 1);
        s.reduce()
    }
    pub fn i(k: u32) -> Self {
        Self::z_pow(k, 2 * k as i64)
    }
    /// `e^{iπ/4}`.
    pub fn zeta8(k: u32) -> Self {
        Self::z_pow(k, k as i64)
    }
    /// `√2 = ζ_8 + ζ_8^{-1}`.
    pub fn sqrt2(k: u32) -> Self {
        let mut s = PowerSum::new(k);
        s.add_int(k as i64, 1);
        s.add_int(-(k as i64), 1);
        s.reduce()
    }
    /// Quadratic Gauss sum `g = Σ_{x<K} ζ_K^{x²}`.
    pub fn gauss_sum(k: u32) -> Self {
        let mut s = PowerSum::new(k);
        for x in 0..k as i64 {
            s.add_int(8 * (x * x % k as i64), 1);
        }
        s.reduce()
    }
    /// The positive square root of K: `g` for `K ≡ 1 mod 4`, `−i·g` for `K ≡ 3 mod 4`.
    pub fn sqrt_k(k: u32) -> Self {
        let g = Self::gauss_sum(k);
        if k % 4 == 1 {
            g
        } else {
            g.mul(&Self::z_pow(k, 6 * k as i64))
        }
    }
    /// `sin(πn/K)` as `(z^{4n} − z^{−4n})·(−i/2)`.
    pub fn sin_pi(k: u32, n: i64) -> Self {
        let mut s = PowerSum::new(k);
        let h = q2(1, 2);
        s.add(4 * n + 6 * k as i64, &h);
        s.add(-4 * n + 6 * k as i64, &-h);
        s.reduce()
    }
    /// `1/(ζ_{2K}^n − ζ_{2K}^{−n})` for `K ∤ n`, via `1/(x−1) = (1/K)Σ j x^j`.
    pub fn inv_qdiff_sum(k: u32, n: i64) -> PowerSum {
        let mut s = PowerSum::new(k);
        let kk = k as i64;
        for j in 1..kk {
            s.add(4 * n + 8 * n * j, &q2(j, kk));
        }
        s
    }
    /// Quantum integer `[n] = sin(πn/K)/sin(π/K)`.
    pub fn qint(k: u32, n: i64) -> Self {
        let mut num = PowerSum::new(k);
        num.add_int(4 * n, 1);
        num.add_int(-4 * n, -1);
        num.mul(&Self::inv_qdiff_sum(k, 1)).reduce()
    }
    /// `e^{(iπ/2K)·x}` for integer `x`.
    pub fn half_twist(k: u32, x: i64) -> Self {
        Self::z_pow(k, 2 * x)
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u32 {
        8 * self.k
    }
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }
    pub fn to_power_sum(&self) -> PowerSum {
        let mut s = PowerSum::new(self.k);
        s.c[..self.coeffs.len()].clone_from_slice(&self.coeffs);
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.k, o.k);
        CycNumber {
            k: self.k,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        CycNumber { k: self.k, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
    pub fn scale(&self, c: &Q) -> Self {
        CycNumber { k: self.k, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.k, o.k);
        let d = self.coeffs.len();
        let mut s = PowerSum::new(self.k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d) {
                if !b.is_zero() {
                    s.c[i + j] += a * b;
                }
            }
        }
        s.reduce()
    }
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.k);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
    /// The automorphism `z ↦ z^a` (`a` coprime to 8K).
    pub fn galois(&self, a: i64) -> Self {
        let mut s = PowerSum::new(self.k);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                s.add(a * j as i64, c);
            }
        }
        s.reduce()
    }
    /// Complex conjugation, `z ↦ z^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }
    /// Multiplicative inverse by solving the multiplication-matrix system.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let d = self.coeffs.len();
        let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
        for j in 0..d {
            cols.push(self.mul(&Self::z_pow(self.k, j as i64)).coeffs);
        }
        let a: linalg::Matrix = (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect();
        let mut rhs = vec![Q::zero(); d];
        rhs[0] = Q::one();
        let x = linalg::solve(&a, &rhs).ok_or(Error::NonInvertible)?;
        Ok(CycNumber { k: self.k, coeffs: x })
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Coordinates `c_j` with `self = Σ_{j ≤ K−2} c_j ζ_K^j`, or `None` when
    /// `self` is outside the order-K subfield.
    pub fn subfield_coords(&self) -> Option<Vec<Q>> {
        self.power_coords(8, self.k as usize - 1)
    }

    /// Coordinates `c_j` with `self = Σ_{j<n} c_j z^{step·j}`, if they exist
    /// and are unique.
    pub fn power_coords(&self, step: i64, n: usize) -> Option<Vec<Q>> {
        let basis: Vec<CycNumber> = (0..n).map(|j| Self::z_pow(self.k, step * j as i64)).collect();
        let a: linalg::Matrix = (0..self.coeffs.len())
            .map(|r| basis.iter().map(|b| b.coeffs[r].clone()).collect())
            .collect();
        linalg::solve(&a, &self.coeffs)
    }
}

impl fmt::Display for CycNumber {
    /// Sparse `c·z^j` list in the canonical basis, `z = e^{2πi/8K}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| alloc::format!("{}·z^{}", fmt_q(c), j))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `Σ_{α=0}^{K−1} e^{(2πi/K)(p q* α² + 2nα)}` by direct summation.
pub fn gauss_sum_direct(p: i64, q: i64, n: i64, k: u32) -> Result<CycNumber> {
    if !is_odd_prime(k as i64) {
        return Err(Error::NotPrime(k as i64));
    }
    let kk = k as i64;
    let a = vee(p, q, k)?.residue as i64;
    let mut s = PowerSum::new(k);
    for x in 0..kk {
        s.add_int(8 * ((a * x * x + 2 * n * x).rem_euclid(kk)), 1);
    }
    Ok(s.reduce())
}

/// Closed form `c_K · √K · (pq*/K) · e^{−(2πi/K) p* q n²}` with
/// `c_K = 1` for `K ≡ 1 mod 4` and `c_K = i` for `K ≡ 3 mod 4`.
pub fn gauss_sum_closed(p: i64, q: i64, n: i64, k: u32) -> Result<CycNumber> {
    if !is_odd_prime(k as i64) {
        return Err(Error::NotPrime(k as i64));
    }
    let kk = k as i64;
    if p.rem_euclid(kk) == 0 || q.rem_euclid(kk) == 0 {
        return Err(Error::NonInvertible);
    }
    let a = vee(p, q, k)?.residue as i64;
    let ainv = mod_inverse(a, kk)?;
    let leg = legendre(a, kk)? as i64;
    let phase = if k % 4 == 1 { 0 } else { 2 * kk };
    let shift = -8 * ((ainv * n % kk) * n).rem_euclid(kk);
    let root = CycNumber::sqrt_k(k);
    Ok(root.mul(&CycNumber::z_pow(k, phase + shift)).scale(&crate::scalartower::q(leg)))
}

/// Integers `a_n` with `z = Σ_{n ≤ K−2} a_n (ζ_K − 1)^n`.
pub fn zeta_minus_one_expand(z: &CycNumber) -> Result<Vec<BigInt>> {
    let k = z.k() as usize;
    let c = z
        .subfield_coords()
        .ok_or_else(|| Error::NotInSubring(String::from("outside the order-K subfield")))?;
    let mut out = Vec::with_capacity(k - 1);
    let mut bad = Vec::new();
    for n in 0..k - 1 {
        // ζ^j = (1 + (ζ−1))^j
        let mut a = Q::zero();
        let mut binom = BigInt::one();
        for (j, cj) in c.iter().enumerate().skip(n) {
            if j > n {
                binom = binom * BigInt::from(j) / BigInt::from(j - n);
            }
            a += cj * Q::from_integer(binom.clone());
        }
        if !a.is_integer() {
            bad.push(alloc::format!("a_{n} = {}", fmt_q(&a)));
        }
        out.push(a.to_integer());
    }
    if !bad.is_empty() {
        return Err(Error::NotInSubring(bad.join(", ")));
    }
    Ok(out)
}

/// Reduces an integer list mod K into `[0, K)`.
pub fn residues(a: &[BigInt], k: u32) -> Vec<u32> {
    let kk = BigInt::from(k);
    a.iter().map(|x| x.mod_floor(&kk).to_u32().unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn landmarks() {
        let k = 5;
        let i = CycNumber::i(k);
        assert_eq!(i.mul(&i), CycNumber::from_int(k, -1));
        let r2 = CycNumber::sqrt2(k);
        assert_eq!(r2.mul(&r2), CycNumber::from_int(k, 2));
        for k in [3, 5, 7, 11, 13] {
            let r = CycNumber::sqrt_k(k);
            assert_eq!(r.mul(&r), CycNumber::from_int(k, k as i64));
            assert_eq!(r.conj(), r);
        }
    }

    #[test]
    fn inverse_matches_identity() {
        let k = 7;
        let d = CycNumber::z_pow(k, 4).sub(&CycNumber::z_pow(k, -4));
        let inv = CycNumber::inv_qdiff_sum(k, 1).reduce();
        assert_eq!(d.inv().unwrap(), inv);
        assert_eq!(d.mul(&inv), CycNumber::one(k));
    }

    #[test]
    fn qint_small() {
        let k = 5;
        assert_eq!(CycNumber::qint(k, 1), CycNumber::one(k));
        assert_eq!(CycNumber::qint(k, 5), CycNumber::zero(k));
        // [2] = 2cos(π/K)
        let c = CycNumber::z_pow(k, 4).add(&CycNumber::z_pow(k, -4));
        assert_eq!(CycNumber::qint(k, 2), c);
    }

    #[test]
    fn legendre_vs_squares() {
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(3, 7).unwrap(), -1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
        assert!(legendre(1, 9).is_err());
    }
}
