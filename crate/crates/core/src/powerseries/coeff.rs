//! Coefficient rings for color series: plain `SymbolicScalar`, or truncated
//! Laurent series in one regulator ε with tracked precision.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalartower::{SymbolicScalar, Q};

/// Minimal exact-ring interface shared by `Q` and `SymbolicScalar`.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Scalar for SymbolicScalar {
    fn zero() -> Self {
        SymbolicScalar::zero()
    }
    fn one() -> Self {
        SymbolicScalar::one()
    }
    fn is_zero(&self) -> bool {
        SymbolicScalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// Coefficients of a [`ColorSeries`](super::ColorSeries).
pub trait Coeff: Scalar {
    /// Scalars the linking matrix lives in.
    type Link: LinkScalar<Coeff = Self>;
    fn from_scalar(s: SymbolicScalar) -> Self;
    fn times_scalar(&self, s: &SymbolicScalar) -> Self;
}

/// Entries of the (Schur-updated) linking matrix.
pub trait LinkScalar: Scalar {
    type Coeff: Coeff<Link = Self>;
    fn from_q(x: Q) -> Self;
    /// Sign of the value; for ε-series, of the leading coefficient (ε → 0+).
    fn sign(&self) -> Result<i8>;
    fn lift(&self) -> Self::Coeff;
    fn try_inverse(&self) -> Result<Self>;
}

impl Coeff for SymbolicScalar {
    type Link = Q;
    fn from_scalar(s: SymbolicScalar) -> Self {
        s
    }
    fn times_scalar(&self, s: &SymbolicScalar) -> Self {
        self * s
    }
}

impl LinkScalar for Q {
    type Coeff = SymbolicScalar;
    fn from_q(x: Q) -> Self {
        x
    }
    fn sign(&self) -> Result<i8> {
        Ok(if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        })
    }
    fn lift(&self) -> SymbolicScalar {
        SymbolicScalar::from_q(self.clone())
    }
    fn try_inverse(&self) -> Result<Self> {
        Scalar::inverse(self).ok_or(Error::ZeroPivot)
    }
}

/// `Σ_i coeffs[i]·ε^{val+i} + O(ε^prec)`; `prec == None` means exact.
///
/// `cap` is the relative precision used when inverting a value that has no
/// finite inverse (e.g. `−1/ε + 3 + ε`).
#[derive(Clone, Debug)]
pub struct Eps<T> {
    val: i32,
    coeffs: Vec<T>,
    prec: Option<i32>,
    cap: u32,
}

/// Compares the represented values; precision and cap are bookkeeping.
impl<T: Scalar> PartialEq for Eps<T> {
    fn eq(&self, o: &Self) -> bool {
        self.val == o.val && self.coeffs == o.coeffs
    }
}

fn min_prec(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<T: Scalar> Eps<T> {
    pub fn exact(c: T, cap: u32) -> Self {
        Self::from_parts(0, alloc::vec![c], None, cap)
    }
    /// The regulator ε itself.
    pub fn epsilon(cap: u32) -> Self {
        Self::from_parts(1, alloc::vec![T::one()], None, cap)
    }
    pub fn from_parts(val: i32, coeffs: Vec<T>, prec: Option<i32>, cap: u32) -> Self {
        let mut e = Eps { val, coeffs, prec, cap };
        e.normalize();
        e
    }
    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.val += lead as i32;
        if let Some(p) = self.prec {
            let keep = (p - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }
    pub fn prec(&self) -> Option<i32> {
        self.prec
    }
    pub fn cap(&self) -> u32 {
        self.cap
    }
    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }
    /// Lowest exponent that may be nonzero (`None` for an exact zero).
    fn valuation(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.val)
        }
    }
    pub fn coeff(&self, e: i32) -> T {
        let i = e - self.val;
        if i < 0 || i as usize >= self.coeffs.len() {
            T::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }
    pub fn leading(&self) -> Option<(i32, &T)> {
        self.coeffs.first().map(|c| (self.val, c))
    }
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Eps<U> {
        Eps::from_parts(self.val, self.coeffs.iter().map(f).collect(), self.prec, self.cap)
    }
    /// Value at ε = 0: errors on a surviving negative power or when the
    /// constant term is not determined by the tracked precision.
    pub fn limit(&self) -> Result<T> {
        if self.prec.is_some_and(|p| p <= 0) {
            return Err(Error::InsufficientPrecision);
        }
        if self.coeffs.iter().enumerate().any(|(i, c)| self.val + (i as i32) < 0 && !c.is_zero()) {
            return Err(Error::SingularPresentation);
        }
        Ok(self.coeff(0))
    }

    fn add_impl(&self, o: &Self) -> Self {
        if self.is_exact_zero() {
            return Eps { cap: self.cap.max(o.cap), ..o.clone() };
        }
        if o.is_exact_zero() {
            return Eps { cap: self.cap.max(o.cap), ..self.clone() };
        }
        let lo = match (self.coeffs.is_empty(), o.coeffs.is_empty()) {
            (true, true) => 0,
            (true, false) => o.val,
            (false, true) => self.val,
            (false, false) => self.val.min(o.val),
        };
        let hi = (self.val + self.coeffs.len() as i32).max(o.val + o.coeffs.len() as i32);
        let coeffs = (lo..hi).map(|e| self.coeff(e).plus(&o.coeff(e))).collect();
        Self::from_parts(lo, coeffs, min_prec(self.prec, o.prec), self.cap.max(o.cap))
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let cap = self.cap.max(o.cap);
        if self.is_exact_zero() || o.is_exact_zero() {
            return Eps { val: 0, coeffs: Vec::new(), prec: None, cap };
        }
        let va = self.valuation();
        let vb = o.valuation();
        let p1 = o.prec.zip(va).map(|(p, v)| p + v);
        let p2 = self.prec.zip(vb).map(|(p, v)| p + v);
        let prec = min_prec(p1, p2);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Eps { val: 0, coeffs: Vec::new(), prec, cap };
        }
        let val = self.val + o.val;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - val).max(0) as usize);
        }
        let mut coeffs = alloc::vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::from_parts(val, coeffs, prec, cap)
    }

    fn inverse_impl(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(if self.prec.is_none() { Error::ZeroPivot } else { Error::InsufficientPrecision });
        }
        let h0 = self.coeffs[0].inverse().ok_or(Error::NonInvertible)?;
        let v = self.val;
        if self.prec.is_none() && self.coeffs.len() == 1 {
            return Ok(Self::from_parts(-v, alloc::vec![h0], None, self.cap));
        }
        let rel = match self.prec {
            Some(p) => (p - v).min(self.cap as i32),
            None => self.cap as i32,
        }
        .max(0) as usize;
        let mut h: Vec<T> = Vec::with_capacity(rel);
        for n in 0..rel {
            if n == 0 {
                h.push(h0.clone());
                continue;
            }
            let mut s = T::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = s.plus(&self.coeffs[k].times(&h[n - k]));
            }
            h.push(s.times(&h0).negate());
        }
        Ok(Self::from_parts(-v, h, Some(-v + rel as i32), self.cap))
    }
}

impl<T: Scalar> Scalar for Eps<T> {
    fn zero() -> Self {
        Eps { val: 0, coeffs: Vec::new(), prec: None, cap: 0 }
    }
    fn one() -> Self {
        Self::exact(T::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }
    fn inverse(&self) -> Option<Self> {
        self.inverse_impl().ok()
    }
}

impl Coeff for Eps<SymbolicScalar> {
    type Link = Eps<Q>;
    fn from_scalar(s: SymbolicScalar) -> Self {
        Eps::exact(s, 0)
    }
    fn times_scalar(&self, s: &SymbolicScalar) -> Self {
        self.map(|c| c * s)
    }
}

impl LinkScalar for Eps<Q> {
    type Coeff = Eps<SymbolicScalar>;
    fn from_q(x: Q) -> Self {
        Eps::exact(x, 0)
    }
    fn sign(&self) -> Result<i8> {
        match self.leading() {
            Some((_, c)) => Ok(if c.is_positive() { 1 } else { -1 }),
            None if self.prec.is_none() => Ok(0),
            None => Err(Error::InsufficientPrecision),
        }
    }
    fn lift(&self) -> Eps<SymbolicScalar> {
        self.map(|c| SymbolicScalar::from_q(c.clone()))
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inverse_impl()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalartower::q;

    #[test]
    fn inverse_of_pole_series() {
        // l = −1/ε + 3 + ε, inverse = −ε − 3ε² − 10ε³ + …
        let l: Eps<Q> = Eps::from_parts(-1, alloc::vec![q(-1), q(3), q(1)], None, 6);
        let inv = l.try_inverse().unwrap();
        assert_eq!(inv.coeff(1), q(-1));
        assert_eq!(inv.coeff(2), q(-3));
        assert_eq!(inv.coeff(3), q(-10));
        let one = l.times(&inv);
        assert_eq!(one.coeff(0), q(1));
        assert_eq!(one.coeff(1), q(0));
        assert_eq!(one.prec(), Some(6));
    }

    #[test]
    fn limit_detects_poles() {
        let e: Eps<Q> = Eps::epsilon(4);
        let inv = e.try_inverse().unwrap();
        assert_eq!(inv.limit(), Err(Error::SingularPresentation));
        assert_eq!(e.times(&inv).limit(), Ok(q(1)));
    }
}
