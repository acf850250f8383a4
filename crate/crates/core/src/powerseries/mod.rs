//! Truncated series in `t = 1/K` over `SymbolicScalar`, multi-color series
//! with polynomial coefficients in `x_j = α_j²`, and the Δ ↔ S conversions.

mod coeff;
mod color;

pub use coeff::{Coeff, Eps, LinkScalar, Scalar};
pub use color::{linking_from_int, ColorPolynomial, ColorSeries, Degrees};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalartower::{q, q2, Gaussian, Prefactor, SymbolicScalar, Q};

/// `prefactor · Σ_{n ≤ order} c_n K^{-n}`.
#[derive(Clone, Debug)]
pub struct KSeries {
    order: usize,
    coeffs: Vec<SymbolicScalar>,
    prefactor: Prefactor,
    notes: Vec<String>,
}

impl PartialEq for KSeries {
    fn eq(&self, o: &Self) -> bool {
        self.order == o.order && self.coeffs == o.coeffs && self.prefactor == o.prefactor
    }
}

impl KSeries {
    pub fn new(order: usize, mut coeffs: Vec<SymbolicScalar>) -> Self {
        coeffs.resize(order + 1, SymbolicScalar::zero());
        KSeries { order, coeffs, prefactor: Prefactor::identity(), notes: Vec::new() }
    }
    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }
    pub fn one(order: usize) -> Self {
        Self::constant(order, SymbolicScalar::one())
    }
    pub fn constant(order: usize, c: SymbolicScalar) -> Self {
        Self::new(order, vec![c])
    }
    /// `c · t^n`.
    pub fn monomial(order: usize, n: usize, c: SymbolicScalar) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }
    pub fn with_prefactor(mut self, p: Prefactor) -> Self {
        self.prefactor = p;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn coeff(&self, n: usize) -> &SymbolicScalar {
        &self.coeffs[n]
    }
    pub fn coeffs(&self) -> &[SymbolicScalar] {
        &self.coeffs
    }
    pub fn prefactor(&self) -> &Prefactor {
        &self.prefactor
    }
    /// Provenance notes, e.g. truncation-order mixing.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        KSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
            prefactor: self.prefactor.clone(),
            notes: self.notes.clone(),
        }
    }

    fn meet(&self, o: &Self) -> (usize, Vec<String>) {
        let order = self.order.min(o.order);
        let mut notes = self.notes.clone();
        notes.extend(o.notes.iter().cloned());
        if self.order != o.order {
            notes.push(alloc::format!(
                "truncated to order {order} (inputs at orders {} and {})",
                self.order, o.order
            ));
        }
        (order, notes)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.prefactor != o.prefactor {
            return Err(Error::PrefactorMismatch);
        }
        let (order, notes) = self.meet(o);
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &o.coeffs[n]).collect();
        Ok(KSeries { order, coeffs, prefactor: self.prefactor.clone(), notes })
    }
    pub fn neg(&self) -> Self {
        KSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let (order, notes) = self.meet(o);
        let mut coeffs = vec![SymbolicScalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j].add_assign_ref(&(a * b));
                }
            }
        }
        KSeries { order, coeffs, prefactor: self.prefactor.mul(&o.prefactor), notes }
    }
    pub fn scale(&self, c: &SymbolicScalar) -> Self {
        KSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), ..self.clone() }
    }
    pub fn mul_prefactor(&self, p: &Prefactor) -> Self {
        KSeries { prefactor: self.prefactor.mul(p), ..self.clone() }
    }
    /// Multiplies by `t^n` (dropping what falls past the order).
    pub fn shift(&self, n: usize) -> Self {
        let mut coeffs = vec![SymbolicScalar::zero(); self.order + 1];
        for i in 0..=self.order {
            if i + n <= self.order {
                coeffs[i + n] = self.coeffs[i].clone();
            }
        }
        KSeries { coeffs, ..self.clone() }
    }
    /// Divides by `t^n`; the first `n` coefficients must vanish and the order
    /// drops by `n`.
    pub fn unshift(&self, n: usize) -> Result<Self> {
        if n > self.order || self.coeffs[..n].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(KSeries { order: self.order - n, coeffs: self.coeffs[n..].to_vec(), ..self.clone() })
    }
    /// Moves `rho` and the even part of the octant into the coefficients.
    pub fn absorb_scalar_prefactor(&self) -> Self {
        let (residual, s) = self.prefactor.split_scalar();
        KSeries { prefactor: residual, ..self.scale(&s) }
    }

    /// Formal exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if !self.prefactor.is_trivial() {
            return Err(Error::PrefactorMismatch);
        }
        let n0 = self.order;
        let mut f = vec![SymbolicScalar::zero(); n0 + 1];
        f[0] = SymbolicScalar::one();
        for n in 1..=n0 {
            // n f_n = Σ_{k=1}^n k g_k f_{n−k}
            let mut s = SymbolicScalar::zero();
            for k in 1..=n {
                s.add_assign_ref(&(&self.coeffs[k] * &f[n - k]).scale(&q(k as i64)));
            }
            f[n] = s.scale(&q2(1, n as i64));
        }
        Ok(KSeries { order: n0, coeffs: f, prefactor: Prefactor::identity(), notes: self.notes.clone() })
    }

    /// Formal logarithm; needs constant term 1 and a trivial prefactor.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != SymbolicScalar::one() || !self.prefactor.is_trivial() {
            return Err(Error::LogConstantTerm);
        }
        let n0 = self.order;
        let mut g = vec![SymbolicScalar::zero(); n0 + 1];
        for n in 1..=n0 {
            // n g_n = n f_n − Σ_{k=1}^{n−1} k g_k f_{n−k}
            let mut s = self.coeffs[n].scale(&q(n as i64));
            for k in 1..n {
                s = &s - &(&g[k] * &self.coeffs[n - k]).scale(&q(k as i64));
            }
            g[n] = s.scale(&q2(1, n as i64));
        }
        Ok(KSeries { order: n0, coeffs: g, prefactor: Prefactor::identity(), notes: self.notes.clone() })
    }

    /// Multiplicative inverse; the constant term must be a single-term scalar.
    pub fn inverse(&self) -> Result<Self> {
        let h0 = self.coeffs[0].inv().ok_or(Error::NonInvertible)?;
        let n0 = self.order;
        let mut h = vec![SymbolicScalar::zero(); n0 + 1];
        h[0] = h0.clone();
        for n in 1..=n0 {
            let mut s = SymbolicScalar::zero();
            for k in 1..=n {
                s.add_assign_ref(&(&self.coeffs[k] * &h[n - k]));
            }
            h[n] = -&(&s * &h0);
        }
        Ok(KSeries { order: n0, coeffs: h, prefactor: self.prefactor.inv(), notes: self.notes.clone() })
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &KSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = KSeries::constant(order, self.coeffs[order].clone());
        for n in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0].add_assign_ref(&self.coeffs[n]);
        }
        Ok(KSeries { prefactor: self.prefactor.clone(), ..acc })
    }

    /// Compositional inverse `g` with `self(g(u)) = u`; needs `c_0 = 0` and
    /// an invertible `c_1`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n0 = self.order;
        if n0 == 0 {
            return Ok(KSeries::zero(0));
        }
        let c1inv = self.coeffs.get(1).and_then(|c| c.inv()).ok_or(Error::NonInvertible)?;
        let mut g = KSeries::zero(n0);
        g.coeffs[1] = c1inv.clone();
        for n in 2..=n0 {
            let f = self.compose(&g)?;
            g.coeffs[n] = -&(&f.coeffs[n] * &c1inv);
        }
        Ok(g)
    }
}

impl fmt::Display for KSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefactor.is_trivial() {
            write!(f, "{} · ", self.prefactor)?;
        }
        f.write_str("[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(K^-{})", self.order + 1)
    }
}

/// `K sin(π/K)/π = Σ (−1)^k π^{2k} K^{-2k}/(2k+1)!`.
pub fn sinc_series(order: usize) -> KSeries {
    scaled_sinc_series(order, &Q::from(num_bigint::BigInt::from(1)))
}

/// `sin(c·π/K)/(c·π/K)` for rational `c`.
pub fn scaled_sinc_series(order: usize, c: &Q) -> KSeries {
    let mut s = KSeries::zero(order);
    let mut fact = q(1);
    let mut cp = q(1);
    for k in 0..=order / 2 {
        if k > 0 {
            fact = fact * q((2 * k) as i64) * q((2 * k + 1) as i64);
            cp = cp * c * c;
        }
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        s.coeffs[2 * k] = SymbolicScalar::term(2 * k as i32, Gaussian::real(sign * &cp / &fact));
    }
    s
}

/// `exp(c · t)` for a scalar `c`.
pub fn exp_linear(order: usize, c: &SymbolicScalar) -> KSeries {
    let mut s = KSeries::zero(order);
    let mut term = SymbolicScalar::one();
    for n in 0..=order {
        if n > 0 {
            term = (&term * c).scale(&q2(1, n as i64));
        }
        s.coeffs[n] = term.clone();
    }
    s
}

/// `S_n = (log Δ)_n / (iπ)^n`, each asserted rational.
pub fn sn_from_delta(d: &KSeries) -> Result<Vec<Q>> {
    let l = d.log()?;
    let mut out = Vec::with_capacity(d.order);
    for n in 1..=d.order {
        let s = &l.coeffs[n] * &SymbolicScalar::i_pi_pow(n as i32).inv().expect("unit");
        match s.to_rational() {
            Some(x) => out.push(x),
            None => return Err(Error::PiCancellation { n, value: alloc::format!("{s}") }),
        }
    }
    Ok(out)
}

/// `exp(Σ S_n (iπ t)^n)` to the given order.
pub fn delta_from_sn(s: &[Q], order: usize) -> KSeries {
    let mut g = KSeries::zero(order);
    for (i, x) in s.iter().enumerate().take(order) {
        let n = i + 1;
        g.coeffs[n] = SymbolicScalar::i_pi_pow(n as i32).scale(x);
    }
    g.exp().expect("zero constant term")
}

/// `e^{2πi t} − 1 = Σ_{m≥1} (2πi t)^m / m!`.
pub fn zeta_minus_one_series(order: usize) -> KSeries {
    let mut s = exp_linear(order, &SymbolicScalar::i_pi_pow(1).scale(&q(2)));
    s.coeffs[0] = SymbolicScalar::zero();
    s
}

/// Coefficients `λ_n` of `s` re-expanded in `u = e^{2πi/K} − 1`, each
/// asserted rational.
pub fn change_variable_to_zeta(s: &KSeries, n0: usize) -> Result<Vec<Q>> {
    let order = n0.min(s.order);
    let t_of_u = zeta_minus_one_series(order).reversion()?;
    let lam = s.truncate(order).compose(&t_of_u)?;
    lam.coeffs
        .iter()
        .map(|c| c.to_rational().ok_or_else(|| Error::NonRational(alloc::format!("{c}"))))
        .collect()
}

/// Right side of the λ-generating identity:
/// `(π/K)/sin(π/K) · exp(Σ S_n (iπ/K)^n)`.
pub fn ohtsuki_generating_series(s: &[Q], order: usize) -> Result<KSeries> {
    Ok(sinc_series(order).inverse()?.mul(&delta_from_sn(s, order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sinc() {
        let l = sinc_series(4).log().unwrap();
        assert_eq!(l.coeff(2), &SymbolicScalar::term(2, Gaussian::real(q2(-1, 6))));
        assert_eq!(l.coeff(4), &SymbolicScalar::term(4, Gaussian::real(q2(-1, 180))));
        assert!(l.coeff(1).is_zero() && l.coeff(3).is_zero());
    }

    #[test]
    fn reversion_at_order_zero() {
        let r = zeta_minus_one_series(0).reversion().unwrap();
        assert_eq!(r.order, 0);
        assert!(r.coeff(0).is_zero());
    }

    #[test]
    fn reversion_is_log() {
        let r = zeta_minus_one_series(5).reversion().unwrap();
        // t = log(1+u)/(2πi) = Σ (−1)^{m+1} u^m / (m·2πi)
        for m in 1..=5i64 {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let expect = SymbolicScalar::i_pi_pow(1).scale(&q(2 * m * sign)).inv().unwrap();
            assert_eq!(r.coeff(m as usize), &expect);
        }
    }
}
