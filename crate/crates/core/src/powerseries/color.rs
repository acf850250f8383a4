use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::coeff::{Coeff, LinkScalar, Scalar};
use super::KSeries;
use crate::error::{Error, Result};
use crate::scalartower::{q, q2, Prefactor, SymbolicScalar, Q};

/// Exponents `(m_1, …, m_N)` of `x_1^{m_1} ⋯ x_N^{m_N}`.
pub type Degrees = Vec<u32>;

/// Polynomial in `x_j = α_j²` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorPolynomial<C> {
    nvars: usize,
    monomials: BTreeMap<Degrees, C>,
}

impl<C: Coeff> ColorPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        ColorPolynomial { nvars, monomials: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![0; nvars], c)
    }
    pub fn monomial(degrees: Degrees, c: C) -> Self {
        let mut p = Self::zero(degrees.len());
        p.add_term(degrees, c);
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn len(&self) -> usize {
        self.monomials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Degrees, &C)> {
        self.monomials.iter()
    }
    pub fn get(&self, degrees: &[u32]) -> Option<&C> {
        self.monomials.get(degrees)
    }
    pub fn add_term(&mut self, degrees: Degrees, c: C) {
        debug_assert_eq!(degrees.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.monomials.get_mut(&degrees) {
            Some(slot) => {
                let s = slot.plus(&c);
                if s.is_zero() {
                    self.monomials.remove(&degrees);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.monomials.insert(degrees, c);
            }
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &o.monomials {
            out.add_term(d.clone(), c.clone());
        }
        out
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (d1, c1) in &self.monomials {
            for (d2, c2) in &o.monomials {
                let d = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
                out.add_term(d, c1.times(c2));
            }
        }
        out
    }
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (d, v) in &self.monomials {
            out.add_term(d.clone(), v.times(c));
        }
        out
    }
    pub fn scale_scalar(&self, s: &SymbolicScalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for (d, v) in &self.monomials {
            out.add_term(d.clone(), v.times_scalar(s));
        }
        out
    }
    /// Highest power of `x_j` present.
    pub fn degree_in(&self, j: usize) -> u32 {
        self.monomials.keys().map(|d| d[j]).max().unwrap_or(0)
    }
    pub fn total_degree(&self) -> u32 {
        self.monomials.keys().map(|d| d.iter().sum()).max().unwrap_or(0)
    }
    /// Renames variables: old variable `j` becomes `map[j]` in a space of `nvars`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (d, c) in &self.monomials {
            let mut e = vec![0; nvars];
            for (j, &m) in d.iter().enumerate() {
                e[map[j]] += m;
            }
            out.add_term(e, c.clone());
        }
        out
    }
}

/// Truncated `1/K`-series with `ColorPolynomial` coefficients, in normal form
/// `e^{−(iπ/2K)Σ_j l_jj α_j²} · J_α(L;K) / ∏_j α_j`.
///
/// Besides the terms, a series carries the current (Schur-updated) linking
/// matrix and the bookkeeping accumulated by integration steps: an overall
/// prefactor, the product of pivots and their signs.
#[derive(Clone, Debug)]
pub struct ColorSeries<C: Coeff> {
    ncomp: usize,
    order: usize,
    terms: Vec<ColorPolynomial<C>>,
    linking: Vec<Vec<C::Link>>,
    stripped: bool,
    prefactor: Prefactor,
    pivot_product: C::Link,
    pivot_signs: Vec<i8>,
    notes: Vec<String>,
}

impl<C: Coeff> PartialEq for ColorSeries<C> {
    fn eq(&self, o: &Self) -> bool {
        self.ncomp == o.ncomp
            && self.order == o.order
            && self.terms == o.terms
            && self.linking == o.linking
            && self.prefactor == o.prefactor
    }
}

impl<C: Coeff> ColorSeries<C> {
    pub fn zero(linking: Vec<Vec<C::Link>>, order: usize) -> Self {
        let ncomp = linking.len();
        ColorSeries {
            ncomp,
            order,
            terms: vec![ColorPolynomial::zero(ncomp); order + 1],
            linking,
            stripped: true,
            prefactor: Prefactor::identity(),
            pivot_product: C::Link::one(),
            pivot_signs: Vec::new(),
            notes: Vec::new(),
        }
    }
    pub fn one(linking: Vec<Vec<C::Link>>, order: usize) -> Self {
        let mut s = Self::zero(linking, order);
        s.terms[0] = ColorPolynomial::constant(s.ncomp, C::one());
        s
    }
    pub fn from_terms(linking: Vec<Vec<C::Link>>, mut terms: Vec<ColorPolynomial<C>>) -> Self {
        let order = terms.len().saturating_sub(1);
        let mut s = Self::zero(linking, order);
        terms.resize(order + 1, ColorPolynomial::zero(s.ncomp));
        s.terms = terms;
        s
    }
    /// Lifts a scalar `KSeries` (no color dependence) to a series in `ncomp`
    /// variables with the given linking matrix; the prefactor is kept.
    pub fn from_kseries(linking: Vec<Vec<C::Link>>, k: &KSeries) -> Self {
        let mut s = Self::zero(linking, k.order());
        for n in 0..=k.order() {
            s.terms[n] = ColorPolynomial::constant(s.ncomp, C::from_scalar(k.coeff(n).clone()));
        }
        s.prefactor = k.prefactor().clone();
        s
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn term(&self, n: usize) -> &ColorPolynomial<C> {
        &self.terms[n]
    }
    pub fn terms(&self) -> &[ColorPolynomial<C>] {
        &self.terms
    }
    pub fn linking(&self) -> &[Vec<C::Link>] {
        &self.linking
    }
    pub fn is_stripped(&self) -> bool {
        self.stripped
    }
    pub fn prefactor(&self) -> &Prefactor {
        &self.prefactor
    }
    pub fn pivot_product(&self) -> &C::Link {
        &self.pivot_product
    }
    pub fn pivot_signs(&self) -> &[i8] {
        &self.pivot_signs
    }
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub(crate) fn set_linking(&mut self, linking: Vec<Vec<C::Link>>) {
        self.ncomp = linking.len();
        self.linking = linking;
    }
    /// Copies prefactor, pivot bookkeeping and notes from `o`.
    pub(crate) fn inherit(&mut self, o: &Self) {
        self.prefactor = o.prefactor.clone();
        self.pivot_product = o.pivot_product.clone();
        self.pivot_signs = o.pivot_signs.clone();
        self.notes = o.notes.clone();
    }
    pub(crate) fn set_bookkeeping(&mut self, prefactor: Prefactor, pivot_product: C::Link, pivot_signs: Vec<i8>) {
        self.prefactor = prefactor;
        self.pivot_product = pivot_product;
        self.pivot_signs = pivot_signs;
    }
    pub(crate) fn push_note(&mut self, note: String) {
        self.notes.push(note);
    }
    pub(crate) fn record_pivot(&mut self, pivot: &C::Link, sign: i8, pf: &Prefactor) {
        self.pivot_product = self.pivot_product.times(pivot);
        self.pivot_signs.push(sign);
        self.prefactor = self.prefactor.mul(pf);
    }
    pub fn mul_prefactor(&self, p: &Prefactor) -> Self {
        let mut s = self.clone();
        s.prefactor = s.prefactor.mul(p);
        s
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut s = self.clone();
        s.terms.truncate(order + 1);
        s.order = order;
        s
    }

    /// Exact truncated product. Linking matrices add, since the normal form
    /// strips the framing phases of both factors.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.ncomp != o.ncomp {
            return Err(Error::ComponentMismatch { left: self.ncomp, right: o.ncomp });
        }
        let order = self.order.min(o.order);
        let mut terms = vec![ColorPolynomial::zero(self.ncomp); order + 1];
        for i in 0..=order {
            if self.terms[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !o.terms[j].is_zero() {
                    terms[i + j] = terms[i + j].add(&self.terms[i].mul(&o.terms[j]));
                }
            }
        }
        let linking = self
            .linking
            .iter()
            .zip(&o.linking)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.plus(y)).collect())
            .collect();
        let mut notes = self.notes.clone();
        notes.extend(o.notes.iter().cloned());
        if self.order != o.order {
            notes.push(alloc::format!(
                "truncated to order {order} (inputs at orders {} and {})",
                self.order, o.order
            ));
        }
        let mut pivot_signs = self.pivot_signs.clone();
        pivot_signs.extend_from_slice(&o.pivot_signs);
        Ok(ColorSeries {
            ncomp: self.ncomp,
            order,
            terms,
            linking,
            stripped: self.stripped && o.stripped,
            prefactor: self.prefactor.mul(&o.prefactor),
            pivot_product: self.pivot_product.times(&o.pivot_product),
            pivot_signs,
            notes,
        })
    }

    /// Multiplicative inverse; the constant term must be a nonzero constant.
    /// The linking matrix is negated so that normal forms compose.
    pub fn inverse(&self) -> Result<Self> {
        let zero_deg = vec![0; self.ncomp];
        let t0 = &self.terms[0];
        if t0.len() != 1 {
            return Err(Error::NonInvertible);
        }
        let h0 = t0.get(&zero_deg).ok_or(Error::NonInvertible)?.inverse().ok_or(Error::NonInvertible)?;
        let mut h = vec![ColorPolynomial::zero(self.ncomp); self.order + 1];
        h[0] = ColorPolynomial::constant(self.ncomp, h0.clone());
        for n in 1..=self.order {
            let mut acc = ColorPolynomial::zero(self.ncomp);
            for k in 1..=n {
                if !self.terms[k].is_zero() && !h[n - k].is_zero() {
                    acc = acc.add(&self.terms[k].mul(&h[n - k]));
                }
            }
            h[n] = acc.scale(&h0.negate());
        }
        let mut out = self.clone();
        out.terms = h;
        out.linking = self.linking.iter().map(|r| r.iter().map(|x| x.negate()).collect()).collect();
        out.prefactor = self.prefactor.inv();
        Ok(out)
    }

    /// Series in the union of both variable sets (disjoint-union rule).
    pub fn disjoint(&self, o: &Self) -> Self {
        let n = self.ncomp + o.ncomp;
        let order = self.order.min(o.order);
        let left: Vec<usize> = (0..self.ncomp).collect();
        let right: Vec<usize> = (self.ncomp..n).collect();
        let mut terms = vec![ColorPolynomial::zero(n); order + 1];
        for i in 0..=order {
            let a = self.terms[i].embed(n, &left);
            for j in 0..=order - i {
                let b = o.terms[j].embed(n, &right);
                terms[i + j] = terms[i + j].add(&a.mul(&b));
            }
        }
        let mut linking = vec![vec![C::Link::zero(); n]; n];
        for i in 0..self.ncomp {
            for j in 0..self.ncomp {
                linking[i][j] = self.linking[i][j].clone();
            }
        }
        for i in 0..o.ncomp {
            for j in 0..o.ncomp {
                linking[self.ncomp + i][self.ncomp + j] = o.linking[i][j].clone();
            }
        }
        let mut s = Self::from_terms(linking, terms);
        s.prefactor = self.prefactor.mul(&o.prefactor);
        s
    }

    /// Multiplies by the expansion of `e^{(iπ/2K)·c·α_j²}` and lowers the
    /// stored `l_jj` by `c`, preserving the normal form.
    pub fn scale_phase(&self, j: usize, c: &C::Link) -> Self {
        let mut phase = vec![ColorPolynomial::zero(self.ncomp); self.order + 1];
        // ((iπ/2)·c)^n / n! · x_j^n · t^n
        let half_i_pi = SymbolicScalar::i_pi_pow(1).scale(&q2(1, 2));
        let step = c.lift().times_scalar(&half_i_pi);
        let mut coef = C::one();
        for (n, slot) in phase.iter_mut().enumerate() {
            if n > 0 {
                coef = coef.times(&step).times_scalar(&SymbolicScalar::from_q(q2(1, n as i64)));
            }
            let mut d = vec![0; self.ncomp];
            d[j] = n as u32;
            *slot = ColorPolynomial::monomial(d, coef.clone());
        }
        let mut out = self.clone();
        let mut terms = vec![ColorPolynomial::zero(self.ncomp); self.order + 1];
        for i in 0..=self.order {
            if self.terms[i].is_zero() {
                continue;
            }
            for (k, p) in phase.iter().enumerate().take(self.order + 1 - i) {
                terms[i + k] = terms[i + k].add(&self.terms[i].mul(p));
            }
        }
        out.terms = terms;
        out.linking[j][j] = out.linking[j][j].plus(&c.negate());
        out
    }

    /// Maps every coefficient into another coefficient ring.
    pub fn map_coeffs<D: Coeff>(
        &self,
        f: impl Fn(&C) -> D,
        g: impl Fn(&C::Link) -> D::Link,
    ) -> ColorSeries<D> {
        let terms = self
            .terms
            .iter()
            .map(|p| {
                let mut out = ColorPolynomial::zero(p.nvars());
                for (d, c) in p.iter() {
                    out.add_term(d.clone(), f(c));
                }
                out
            })
            .collect();
        let linking = self.linking.iter().map(|r| r.iter().map(&g).collect()).collect();
        let mut s = ColorSeries::from_terms(linking, terms);
        s.prefactor = self.prefactor.clone();
        s.pivot_product = g(&self.pivot_product);
        s.pivot_signs = self.pivot_signs.clone();
        s.notes = self.notes.clone();
        s.stripped = self.stripped;
        s
    }

    /// For a series in zero variables: the scalar series it represents.
    pub fn scalar_terms(&self) -> Vec<C> {
        self.terms
            .iter()
            .map(|p| p.get(&vec![0; self.ncomp]).cloned().unwrap_or_else(C::zero))
            .collect()
    }
}

impl ColorSeries<SymbolicScalar> {
    /// Converts a zero-variable series into a `KSeries` with its prefactor.
    pub fn to_kseries(&self) -> Result<KSeries> {
        if self.ncomp != 0 {
            return Err(Error::ComponentMismatch { left: self.ncomp, right: 0 });
        }
        Ok(KSeries::new(self.order, self.scalar_terms()).with_prefactor(self.prefactor.clone()))
    }

    /// Ties rational linking matrix entries to exact `Q` values.
    pub fn linking_q(&self) -> &[Vec<Q>] {
        &self.linking
    }
}

/// Rational linking matrix from integers.
pub fn linking_from_int<L: LinkScalar>(m: &[Vec<i64>]) -> Vec<Vec<L>> {
    m.iter().map(|r| r.iter().map(|&x| L::from_q(q(x))).collect()).collect()
}
