//! Exact coefficient arithmetic: Gaussian rationals carrying formal powers of
//! pi, and the radical/phase prefactor produced by Gaussian integration.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q2(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        alloc::format!("{}", x.numer())
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// `re + im·i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Q,
    pub im: Q,
}

impl Gaussian {
    pub fn new(re: Q, im: Q) -> Self {
        Gaussian { re, im }
    }
    pub fn real(re: Q) -> Self {
        Gaussian { re, im: Q::zero() }
    }
    pub fn zero() -> Self {
        Self::real(Q::zero())
    }
    pub fn one() -> Self {
        Self::real(Q::one())
    }
    pub fn i() -> Self {
        Gaussian { re: Q::zero(), im: Q::one() }
    }
    /// `i^k` for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::real(-Q::one()),
            _ => Gaussian { re: Q::zero(), im: -Q::one() },
        }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn scale(&self, c: &Q) -> Self {
        Gaussian { re: &self.re * c, im: &self.im * c }
    }
    pub fn norm(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gaussian { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl<'a> Add<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Mul<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_q(&self.re)),
            (true, false) => write!(f, "{}·i", fmt_q(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}·i", fmt_q(&self.re), fmt_q(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}·i", fmt_q(&self.re), fmt_q(&self.im))
                }
            }
        }
    }
}

/// Finite sum `Σ_d c_d·pi^d` with Gaussian-rational `c_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolicScalar {
    terms: BTreeMap<i32, Gaussian>,
}

impl SymbolicScalar {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::from_q(Q::one())
    }
    pub fn from_q(c: Q) -> Self {
        Self::term(0, Gaussian::real(c))
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }
    pub fn from_gaussian(g: Gaussian) -> Self {
        Self::term(0, g)
    }
    pub fn i() -> Self {
        Self::from_gaussian(Gaussian::i())
    }
    /// `pi^d`.
    pub fn pi_pow(d: i32) -> Self {
        Self::term(d, Gaussian::one())
    }
    /// `c·pi^d`.
    pub fn term(d: i32, c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(d, c);
        }
        SymbolicScalar { terms }
    }
    /// `(i·pi)^n`.
    pub fn i_pi_pow(n: i32) -> Self {
        Self::term(n, Gaussian::i_pow(n as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Only the `pi^0` key is present and its imaginary part vanishes.
    pub fn is_rational(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.get(&0).is_some_and(|c| c.im.is_zero()),
            _ => false,
        }
    }
    pub fn to_rational(&self) -> Option<Q> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&0).map_or_else(Q::zero, |c| c.re.clone()))
    }
    pub fn coeff(&self, d: i32) -> Gaussian {
        self.terms.get(&d).cloned().unwrap_or_default()
    }
    pub fn iter(&self) -> impl Iterator<Item = (i32, &Gaussian)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicScalar {
            terms: self.terms.iter().map(|(d, g)| (*d, g.scale(c))).collect(),
        }
    }
    pub fn mul_gaussian(&self, c: &Gaussian) -> Self {
        let mut out = Self::zero();
        for (d, g) in &self.terms {
            out.add_term(*d, g * c);
        }
        out
    }
    pub fn shift_pi(&self, by: i32) -> Self {
        SymbolicScalar {
            terms: self.terms.iter().map(|(d, g)| (d + by, g.clone())).collect(),
        }
    }
    pub fn conj(&self) -> Self {
        SymbolicScalar {
            terms: self.terms.iter().map(|(d, g)| (*d, g.conj())).collect(),
        }
    }
    /// Inverse of a single-term scalar; sums of several pi-powers are not units.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (d, c) = self.terms.iter().next()?;
        Some(Self::term(-d, c.inv()?))
    }
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, d: i32, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }
    pub fn add_assign_ref(&mut self, o: &Self) {
        for (d, c) in &o.terms {
            self.add_term(*d, c.clone());
        }
    }
}

impl<'a> Add<&'a SymbolicScalar> for &'a SymbolicScalar {
    type Output = SymbolicScalar;
    fn add(self, o: &SymbolicScalar) -> SymbolicScalar {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl<'a> Sub<&'a SymbolicScalar> for &'a SymbolicScalar {
    type Output = SymbolicScalar;
    fn sub(self, o: &SymbolicScalar) -> SymbolicScalar {
        self + &(-o)
    }
}

impl Neg for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        SymbolicScalar {
            terms: self
                .terms
                .iter()
                .map(|(d, g)| (*d, Gaussian { re: -g.re.clone(), im: -g.im.clone() }))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a SymbolicScalar> for &'a SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, o: &SymbolicScalar) -> SymbolicScalar {
        let mut out = SymbolicScalar::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(SymbolicScalar, Add, add);
forward_owned!(SymbolicScalar, Sub, sub);
forward_owned!(SymbolicScalar, Mul, mul);

impl Neg for SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        -&self
    }
}

impl fmt::Display for SymbolicScalar {
    /// Canonical form, e.g. `1/6·pi^2` or `(1/2 + 1/3·i)·pi + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let both = !c.re.is_zero() && !c.im.is_zero();
            let pi = match d {
                0 => String::new(),
                1 => String::from("pi"),
                _ => alloc::format!("pi^{d}"),
            };
            if pi.is_empty() {
                write!(f, "{c}")?;
            } else if both {
                write!(f, "({c})·{pi}")?;
            } else {
                write!(f, "{c}·{pi}")?;
            }
        }
        Ok(())
    }
}

/// Splits a positive integer into `s² · r` with `r` squarefree.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut r = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &d;
        }
        if e % 2 == 1 {
            r *= &d;
        }
        d += 1;
    }
    (s, r * rest)
}

/// `rho · e^{i·pi·octant/4} · 2^{half2/2} · K^{halfK/2} · sqrt(radicand)`.
///
/// Canonical form: octant in `0..8`, `half2` in `{0, 1}`, `radicand` an odd
/// squarefree positive integer, `rho > 0`. Even powers of `sqrt 2` and square
/// factors of the radicand live in `rho`; powers of `sqrt K` never fold
/// because `K` is the series variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prefactor {
    octant: u8,
    half2: i32,
    half_k: i32,
    radicand: BigInt,
    rho: Q,
}

impl Default for Prefactor {
    fn default() -> Self {
        Self::identity()
    }
}

impl Prefactor {
    pub fn identity() -> Self {
        Prefactor {
            octant: 0,
            half2: 0,
            half_k: 0,
            radicand: BigInt::one(),
            rho: Q::one(),
        }
    }

    /// Builds a prefactor from raw fields, rejecting non-canonical states.
    pub fn new(octant: i64, half2: i32, half_k: i32, radicand: Q, rho: Q) -> Result<Self> {
        if !rho.is_positive() {
            return Err(Error::InvalidPrefactor("rho must be positive"));
        }
        if !radicand.is_positive() {
            return Err(Error::InvalidPrefactor("radicand must be positive"));
        }
        if !radicand.is_integer() {
            return Err(Error::InvalidPrefactor("radicand has a square denominator to extract"));
        }
        let r = radicand.to_integer();
        let (s, _) = square_split(&r);
        if !s.is_one() {
            return Err(Error::InvalidPrefactor("radicand has a square factor"));
        }
        let mut p = Prefactor {
            octant: octant.rem_euclid(8) as u8,
            half2: 0,
            half_k,
            radicand: BigInt::one(),
            rho,
        };
        p.absorb_half2(half2);
        p.absorb_radicand(&r);
        Ok(p)
    }

    /// `e^{i·pi·k/4}`.
    pub fn phase(k: i64) -> Self {
        Prefactor { octant: k.rem_euclid(8) as u8, ..Self::identity() }
    }
    /// `K^{h/2}`.
    pub fn k_pow_half(h: i32) -> Self {
        Prefactor { half_k: h, ..Self::identity() }
    }
    /// `2^{h/2}`.
    pub fn two_pow_half(h: i32) -> Self {
        let mut p = Self::identity();
        p.absorb_half2(h);
        p
    }
    /// A positive rational multiplier.
    pub fn rational(rho: Q) -> Result<Self> {
        if !rho.is_positive() {
            return Err(Error::InvalidPrefactor("rho must be positive"));
        }
        Ok(Prefactor { rho, ..Self::identity() })
    }
    /// `sqrt(x)` for a positive rational.
    pub fn sqrt(x: &Q) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::InvalidPrefactor("radicand must be positive"));
        }
        let mut p = Self::identity();
        // sqrt(a/b) = sqrt(a·b)/b
        p.rho = Q::new(BigInt::one(), x.denom().clone());
        p.absorb_radicand(&(x.numer() * x.denom()));
        Ok(p)
    }

    pub fn octant(&self) -> u8 {
        self.octant
    }
    pub fn half2(&self) -> i32 {
        self.half2
    }
    pub fn half_k(&self) -> i32 {
        self.half_k
    }
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }
    pub fn rho(&self) -> &Q {
        &self.rho
    }

    pub fn is_trivial(&self) -> bool {
        self.octant == 0
            && self.half2 == 0
            && self.half_k == 0
            && self.radicand.is_one()
            && self.rho.is_one()
    }

    /// Re-checks the canonical-form invariants.
    pub fn validate(&self) -> Result<()> {
        if self.octant >= 8 {
            return Err(Error::InvalidPrefactor("octant out of range"));
        }
        if !(0..=1).contains(&self.half2) {
            return Err(Error::InvalidPrefactor("half2 not reduced"));
        }
        if !self.rho.is_positive() || !self.radicand.is_positive() {
            return Err(Error::InvalidPrefactor("non-positive magnitude"));
        }
        let (s, _) = square_split(&self.radicand);
        if !s.is_one() || self.radicand.is_even() {
            return Err(Error::InvalidPrefactor("radicand not reduced"));
        }
        Ok(())
    }

    fn absorb_half2(&mut self, h: i32) {
        let total = self.half2 + h;
        let whole = total.div_euclid(2);
        self.half2 = total.rem_euclid(2);
        let two = Q::from_integer(BigInt::from(2));
        if whole >= 0 {
            for _ in 0..whole {
                self.rho = &self.rho * &two;
            }
        } else {
            for _ in 0..(-whole) {
                self.rho = &self.rho / &two;
            }
        }
    }

    fn absorb_radicand(&mut self, r: &BigInt) {
        let (s, mut sq) = square_split(&(r * &self.radicand));
        self.rho = &self.rho * Q::from_integer(s);
        if sq.is_even() {
            sq /= 2;
            self.absorb_half2(1);
        }
        self.radicand = sq;
    }

    pub fn mul(&self, o: &Prefactor) -> Prefactor {
        let mut p = Prefactor {
            octant: (self.octant + o.octant) % 8,
            half2: self.half2,
            half_k: self.half_k + o.half_k,
            radicand: self.radicand.clone(),
            rho: &self.rho * &o.rho,
        };
        p.absorb_half2(o.half2);
        p.absorb_radicand(&o.radicand);
        p
    }

    pub fn inv(&self) -> Prefactor {
        // 1/sqrt(r) = sqrt(r)/r
        let mut p = Prefactor {
            octant: (8 - self.octant) % 8,
            half2: 0,
            half_k: -self.half_k,
            radicand: self.radicand.clone(),
            rho: self.rho.recip() / Q::from_integer(self.radicand.clone()),
        };
        p.absorb_half2(-self.half2);
        p
    }

    /// Splits off everything that is an ordinary `SymbolicScalar`: `rho`, the
    /// even part of the octant (powers of `i`). Returns `(residual, scalar)`
    /// with `residual · scalar == self`.
    pub fn split_scalar(&self) -> (Prefactor, SymbolicScalar) {
        let scalar = SymbolicScalar::from_gaussian(
            Gaussian::i_pow((self.octant / 2) as i64).scale(&self.rho),
        );
        let residual = Prefactor {
            octant: self.octant % 2,
            half2: self.half2,
            half_k: self.half_k,
            radicand: self.radicand.clone(),
            rho: Q::one(),
        };
        (residual, scalar)
    }
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.rho.is_one() {
            parts.push(fmt_q(&self.rho));
        }
        if self.octant != 0 {
            parts.push(alloc::format!("e^(i·pi·{}/4)", self.octant));
        }
        if self.half2 != 0 {
            parts.push(String::from("sqrt(2)"));
        }
        if self.half_k != 0 {
            parts.push(alloc::format!("K^({}/2)", self.half_k));
        }
        if !self.radicand.is_one() {
            parts.push(alloc::format!("sqrt({})", self.radicand));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let s = SymbolicScalar::term(2, Gaussian::real(q2(1, 6)));
        assert_eq!(alloc::format!("{s}"), "1/6·pi^2");
        let t = SymbolicScalar::term(1, Gaussian::new(q2(1, 2), q2(-1, 3)));
        assert_eq!(alloc::format!("{t}"), "(1/2 - 1/3·i)·pi");
        assert_eq!(alloc::format!("{}", SymbolicScalar::zero()), "0");
    }

    #[test]
    fn sqrt_two_squared() {
        let r2 = Prefactor::sqrt(&q(2)).unwrap();
        let p = r2.mul(&r2);
        assert_eq!(p.rho(), &q(2));
        assert!(p.radicand().is_one());
        assert_eq!(p.half2(), 0);
    }

    #[test]
    fn inverse_and_split() {
        let p = Prefactor::new(3, 1, -3, q(15), q2(2, 7)).unwrap();
        assert!(p.mul(&p.inv()).is_trivial());
        let (res, s) = Prefactor::phase(6).split_scalar();
        assert!(res.is_trivial());
        assert_eq!(s, SymbolicScalar::from_gaussian(Gaussian::i_pow(3)));
    }
}
