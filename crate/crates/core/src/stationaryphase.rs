//! Gaussian moments, the one-component integration step and the pivot
//! planner, plus the sum/integral identities behind them.
//!
//! Throughout `t = 1/K`. A color `α_j = K·a_j` enters the series through
//! `x_j = α_j²/K²`, so `x_j^m t^n` is a monomial of weight `n` and the bound
//! `m ≤ n` is what makes a step well defined.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cyclotomic::{check_k, CycNumber};
use crate::error::{Error, Result};
use crate::jones::IdentityCheck;
use crate::linalg::Matrix;
use crate::powerseries::{
    exp_linear, scaled_sinc_series, Coeff, ColorPolynomial, ColorSeries, Degrees, Eps, KSeries,
    LinkScalar, Scalar,
};
use crate::scalartower::{q, q2, Gaussian, Prefactor, SymbolicScalar, Q};

/// `prefactor · series` for a Gaussian (half-)line integral.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussMoment {
    pub prefactor: Prefactor,
    pub series: KSeries,
}

impl GaussMoment {
    /// Folds the scalar part of the prefactor into the series.
    pub fn normalized(&self) -> GaussMoment {
        let (residual, scalar) = self.prefactor.split_scalar();
        GaussMoment { prefactor: residual, series: self.series.scale(&scalar) }
    }
}

fn binomial(n: u64, k: u64) -> Q {
    let mut r = q(1);
    for i in 0..k {
        r = r * q((n - i) as i64) / q((i + 1) as i64);
    }
    r
}

fn double_factorial_odd(q_: u64) -> Q {
    // (2q−1)!!
    let mut r = q(1);
    let mut n = 2 * q_ as i64 - 1;
    while n > 1 {
        r *= q(n);
        n -= 2;
    }
    r
}

/// `(i/π)^q`.
fn i_over_pi(q_: u32) -> SymbolicScalar {
    SymbolicScalar::term(-(q_ as i32), Gaussian::i_pow(q_ as i64))
}

/// `√(2/(K|l|)) e^{i sgn(l) π/4}`: the value of `∫_ℝ e^{iπK l a²/2} da`.
fn fresnel_prefactor(l: &Q) -> Result<Prefactor> {
    if Zero::is_zero(l) {
        return Err(Error::ZeroPivot);
    }
    let sigma = if l.is_positive() { 1 } else { -1 };
    Ok(Prefactor::phase(sigma)
        .mul(&Prefactor::two_pow_half(1))
        .mul(&Prefactor::k_pow_half(-1))
        .mul(&Prefactor::sqrt(&l.abs().recip())?))
}

/// `∫_ℝ a^k e^{iπK l a²/2 + iπ s a} da` to order `n0` in `1/K`.
///
/// Completing the square gives `e^{−iπ s² t/(2l)}` times the moments of a
/// Gaussian centered at `−s t/l`.
pub fn gauss_moment_shifted(k: u32, l: &Q, s: &Q, n0: usize) -> Result<GaussMoment> {
    let prefactor = fresnel_prefactor(l)?;
    let linv = l.recip();
    let mut poly = KSeries::zero(n0);
    for qq in 0..=k / 2 {
        let deg = (k - qq) as usize;
        if deg > n0 {
            continue;
        }
        let c = binomial(k as u64, 2 * qq as u64)
            * double_factorial_odd(qq as u64)
            * num_traits::pow(-s.clone(), (k - 2 * qq) as usize)
            * num_traits::pow(linv.clone(), (k - qq) as usize);
        let term = KSeries::monomial(n0, deg, i_over_pi(qq).scale(&c));
        poly = poly.add(&term)?;
    }
    let shift_phase = SymbolicScalar::i_pi_pow(1).scale(&(-(s * s) * &linv / q(2)));
    let series = exp_linear(n0, &shift_phase).mul(&poly);
    Ok(GaussMoment { prefactor, series })
}

/// `∫_0^∞ a^{2m+1} sin(πa) e^{iπK l a²/2} da`, taken as half the (even)
/// integral over the line with the sine split into exponentials.
pub fn half_line_sine_moment(m: u32, l: &Q, n0: usize) -> Result<GaussMoment> {
    let g = gauss_moment_shifted(2 * m + 1, l, &q(1), n0)?;
    // (1/2)·(G(s=1) − G(s=−1))/(2i) and G(−s) = −G(s) for odd powers
    let minus_half_i = SymbolicScalar::from_gaussian(Gaussian::new(q(0), q2(-1, 2)));
    Ok(GaussMoment { prefactor: g.prefactor, series: g.series.scale(&minus_half_i) })
}

/// Coefficients `C(2m+1,2q)(2q−1)!!(i/π)^q l^{−(2m+1−q)}`, `q = 0..=m`, given
/// the powers `l^{-k}` for `k ≤ 2m+1`.
fn sine_moment_kernel<C: Coeff>(m: u32, inv_pows: &[C]) -> Vec<C> {
    (0..=m)
        .map(|qq| {
            let c = i_over_pi(qq)
                .scale(&(binomial(2 * m as u64 + 1, 2 * qq as u64) * double_factorial_odd(qq as u64)));
            inv_pows[(2 * m + 1 - qq) as usize].times_scalar(&c)
        })
        .collect()
}

/// Same moment as [`half_line_sine_moment`], assembled from the kernel used by
/// [`step_integrate`]: `(i/2) B′ e^{−iπt/(2l)} Σ_q kernel_q t^{2m+1−q}`.
pub fn half_line_sine_moment_kernel(m: u32, l: &Q, n0: usize) -> Result<GaussMoment> {
    let prefactor = fresnel_prefactor(l)?;
    let linv = l.recip();
    let pows: Vec<SymbolicScalar> = (0..=2 * m + 1)
        .map(|k| SymbolicScalar::from_q(num_traits::pow(linv.clone(), k as usize)))
        .collect();
    let kernel = sine_moment_kernel(m, &pows);
    let mut poly = KSeries::zero(n0);
    for (qq, c) in kernel.into_iter().enumerate() {
        let deg = 2 * m as usize + 1 - qq;
        if deg <= n0 {
            poly = poly.add(&KSeries::monomial(n0, deg, c))?;
        }
    }
    let half_i = SymbolicScalar::from_gaussian(Gaussian::new(q(0), q2(1, 2)));
    let phase = SymbolicScalar::i_pi_pow(1).scale(&(-linv / q(2)));
    Ok(GaussMoment { prefactor, series: exp_linear(n0, &phase).mul(&poly).scale(&half_i) })
}

/// Schur complement of the pivot `j`: `l′_ik = l_ik − l_ji l_jk / l_jj`.
pub fn schur_update<L: LinkScalar>(l: &[Vec<L>], j: usize) -> Result<Vec<Vec<L>>> {
    let inv = l[j][j].try_inverse()?;
    let keep: Vec<usize> = (0..l.len()).filter(|&k| k != j).collect();
    Ok(keep
        .iter()
        .map(|&a| {
            keep.iter()
                .map(|&b| l[a][b].plus(&l[j][a].times(&l[j][b]).times(&inv).negate()))
                .collect()
        })
        .collect())
}

/// `e^{a t}` to order `n` as coefficients.
fn exp_scalar<C: Coeff>(a: &C, n: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n + 1);
    let mut term = C::one();
    for k in 0..=n {
        if k > 0 {
            term = term.times(a).times_scalar(&SymbolicScalar::from_q(q2(1, k as i64)));
        }
        out.push(term.clone());
    }
    out
}

fn scalar_series<C: Coeff>(ncomp: usize, coeffs: Vec<C>) -> ColorSeries<C> {
    let linking = vec![vec![C::Link::zero(); ncomp]; ncomp];
    let terms = coeffs.into_iter().map(|c| ColorPolynomial::constant(ncomp, c)).collect();
    ColorSeries::from_terms(linking, terms)
}

/// Per-step constant: the kernel `√(2K) e^{−3iπσ/4}` times the Fresnel part
/// `(i/2)√(2/K) e^{iσπ/4}` of the half-line moment, i.e. `σ`. The `|l|^{−1/2}`
/// is applied once for all steps via the pivot product.
fn step_prefactor(sigma: i8) -> Prefactor {
    Prefactor::phase(2 - 2 * sigma as i64)
}

/// Integrates out component `j`, producing a series over the remaining
/// components to order `n_out`.
pub fn step_integrate<C: Coeff>(s: &ColorSeries<C>, j: usize, n_out: usize) -> Result<ColorSeries<C>> {
    let n = s.ncomp();
    if j >= n {
        return Err(Error::ComponentMismatch { left: j + 1, right: n });
    }
    if s.order() < n_out {
        return Err(Error::Hypothesis("step input order below the requested output order"));
    }
    let l = s.linking()[j][j].clone();
    if l.is_zero() {
        return Err(Error::ZeroPivot);
    }
    let sigma = l.sign()?;
    let linv = l.try_inverse()?.lift();
    let max_m = s.terms().iter().map(|p| p.degree_in(j)).max().unwrap_or(0);
    let mut pows = vec![C::one()];
    for k in 1..=(2 * max_m + 1) as usize {
        let next = pows[k - 1].times(&linv);
        pows.push(next);
    }
    let kernels: Vec<Vec<C>> = (0..=max_m).map(|m| sine_moment_kernel(m, &pows)).collect();

    let keep: Vec<usize> = (0..n).filter(|&k| k != j).collect();
    let mut terms = vec![ColorPolynomial::zero(n - 1); n_out + 1];
    for (nn, p) in s.terms().iter().enumerate() {
        for (d, c) in p.iter() {
            let m = d[j] as usize;
            if m > nn {
                return Err(Error::Hypothesis("color degree exceeds the 1/K order"));
            }
            let rest: Degrees = keep.iter().map(|&k| d[k]).collect();
            for (qq, kc) in kernels[m].iter().enumerate() {
                let target = nn - qq;
                if target <= n_out {
                    terms[target].add_term(rest.clone(), c.times(kc));
                }
            }
        }
    }

    // e^{(3iπσ/2 − iπ/(2l)) t}
    let i_pi = SymbolicScalar::i_pi_pow(1);
    let a = C::from_scalar(i_pi.scale(&q2(3 * sigma as i64, 2)))
        .plus(&linv.times_scalar(&i_pi.scale(&q2(-1, 2))));
    let mut linking = schur_update(s.linking(), j)?;
    for (a_, &k) in keep.iter().enumerate() {
        linking[a_][a_] = s.linking()[k][k].clone();
    }
    let body = ColorSeries::from_terms(linking, terms);
    let mut out = body.mul(&scalar_series(n - 1, exp_scalar(&a, n_out)))?;
    out.inherit(s);
    // re-strip: the Schur update lowers each remaining diagonal by l_jk²/l
    for (a_, &k) in keep.iter().enumerate() {
        let c = s.linking()[j][k].times(&s.linking()[j][k]).times(&l.try_inverse()?);
        if !c.is_zero() {
            out = out.scale_phase(a_, &c);
        }
    }
    out.record_pivot(&l, sigma, &step_prefactor(sigma));
    Ok(out)
}

/// How to order pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Components in input order; a zero pivot is an error.
    InputOrder,
    /// First permutation (lexicographic) with all pivots nonzero.
    Reorder,
    /// Input order on the ε-regularized matrix.
    Epsilon,
    /// Input order if possible, else reorder, else ε.
    Auto,
}

/// Pivot order and truncation orders of a full integration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPlan {
    /// Original component indices in pivot order.
    pub order: Vec<usize>,
    pub input_order: usize,
    /// Output order of each step.
    pub step_outputs: Vec<usize>,
    pub epsilon: bool,
}

/// Largest component count for which [`PivotStrategy::Reorder`] searches
/// permutations.
pub const MAX_REORDER: usize = 8;

/// Sequential pivots (Schur-updated diagonals) in the given order; `None` if
/// one vanishes.
pub fn sequential_pivots(l: &Matrix, order: &[usize]) -> Option<Vec<Q>> {
    let mut m: Vec<Vec<Q>> =
        order.iter().map(|&i| order.iter().map(|&j| l[i][j].clone()).collect()).collect();
    let mut pivots = Vec::with_capacity(order.len());
    while !m.is_empty() {
        if Zero::is_zero(&m[0][0]) {
            return None;
        }
        pivots.push(m[0][0].clone());
        m = schur_update(&m, 0).ok()?;
    }
    Some(pivots)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Input order and per-step output orders for `n` components and target `n0`.
///
/// In general each step halves the order, so the input needs `2^n n0`. For an
/// algebraically split link the color degrees obey the sharper bound and a
/// fixed window of `4 n0` suffices until the last step.
pub fn required_orders(n: usize, n0: usize, asl: bool) -> (usize, Vec<usize>) {
    if n == 0 {
        return (n0, Vec::new());
    }
    if asl {
        let mut outs = vec![4 * n0; n];
        outs[n - 1] = n0;
        (4 * n0, outs)
    } else {
        let outs = (0..n).map(|s| n0 << (n - 1 - s)).collect();
        (n0 << n, outs)
    }
}

pub fn plan_steps(l: &Matrix, n0: usize, asl: bool, strategy: PivotStrategy) -> Result<StepPlan> {
    let n = l.len();
    let (input_order, step_outputs) = required_orders(n, n0, asl);
    let identity: Vec<usize> = (0..n).collect();
    let make = |order: Vec<usize>, epsilon: bool| StepPlan {
        order,
        input_order,
        step_outputs: step_outputs.clone(),
        epsilon,
    };
    let reorder = || -> Option<Vec<usize>> {
        if n > MAX_REORDER {
            return None;
        }
        let mut p = identity.clone();
        loop {
            if sequential_pivots(l, &p).is_some() {
                return Some(p);
            }
            if !next_permutation(&mut p) {
                return None;
            }
        }
    };
    match strategy {
        PivotStrategy::InputOrder => {
            sequential_pivots(l, &identity).ok_or(Error::ZeroPivot)?;
            Ok(make(identity, false))
        }
        PivotStrategy::Epsilon => Ok(make(identity, true)),
        PivotStrategy::Reorder => {
            if n > MAX_REORDER {
                return Err(Error::Unsupported("pivot reordering beyond 8 components"));
            }
            reorder().map(|p| make(p, false)).ok_or(Error::ZeroPivot)
        }
        PivotStrategy::Auto => {
            if sequential_pivots(l, &identity).is_some() {
                Ok(make(identity, false))
            } else if let Some(p) = reorder() {
                Ok(make(p, false))
            } else {
                Ok(make(identity, true))
            }
        }
    }
}

/// Runs every step of `plan` on `s`.
pub fn integrate_all<C: Coeff>(s: &ColorSeries<C>, plan: &StepPlan) -> Result<ColorSeries<C>> {
    if s.ncomp() != plan.order.len() {
        return Err(Error::ComponentMismatch { left: s.ncomp(), right: plan.order.len() });
    }
    if s.order() < plan.input_order {
        return Err(Error::Hypothesis("input series truncated below the required order"));
    }
    let mut cur = s.truncate(plan.input_order);
    let mut remaining: Vec<usize> = (0..s.ncomp()).collect();
    for (&comp, &out) in plan.order.iter().zip(&plan.step_outputs) {
        let j = remaining.iter().position(|&c| c == comp).ok_or(Error::ComponentMismatch {
            left: comp,
            right: remaining.len(),
        })?;
        cur = step_integrate(&cur, j, out)?;
        remaining.remove(j);
    }
    Ok(cur)
}

/// Attaches `|P|^{−1/2}` for the (rational) pivot product `P` of a finished
/// integration.
pub fn apply_pivot_magnitude(s: &ColorSeries<SymbolicScalar>) -> Result<ColorSeries<SymbolicScalar>> {
    let p = s.pivot_product().abs();
    Ok(s.mul_prefactor(&Prefactor::sqrt(&p)?.inv()))
}

/// Dresses every diagonal entry with `+ε`.
pub fn epsilon_regularize(s: &ColorSeries<SymbolicScalar>, cap: u32) -> ColorSeries<Eps<SymbolicScalar>> {
    let mut out = s.map_coeffs(|c| Eps::exact(c.clone(), cap), |x| Eps::exact(x.clone(), cap));
    let mut linking = out.linking().to_vec();
    for (i, row) in linking.iter_mut().enumerate() {
        row[i] = row[i].plus(&Eps::epsilon(cap));
    }
    out.set_linking(linking);
    out
}

/// `(1 + u)^{−1/2}` for `u = O(ε)`, through `cap` terms.
fn inv_sqrt_one_plus(u: &Eps<Q>, cap: u32) -> Eps<Q> {
    let mut acc = Eps::exact(q(1), cap);
    let mut pow = Eps::exact(q(1), cap);
    let mut c = q(1);
    for k in 1..=cap as i64 {
        c = c * (q2(-1, 2) - q(k - 1)) / q(k);
        pow = pow.times(u);
        if pow.is_zero() {
            break;
        }
        acc = acc.plus(&pow.map(|x| x * &c));
    }
    acc
}

/// Finishes an ε-mode integration over all components: attaches
/// `|det|^{−1/2}`, corrects the series by `(P/det)^{−1/2}` for the regularized
/// pivot product `P`, and takes `ε → 0` coefficientwise.
pub fn epsilon_limit(s: &ColorSeries<Eps<SymbolicScalar>>, det: &Q) -> Result<ColorSeries<SymbolicScalar>> {
    if s.ncomp() != 0 {
        return Err(Error::ComponentMismatch { left: s.ncomp(), right: 0 });
    }
    if Zero::is_zero(det) {
        return Err(Error::NotRationalHomologySphere);
    }
    let cap = s.scalar_terms().iter().map(|c| c.cap()).max().unwrap_or(0).max(s.pivot_product().cap());
    let ratio = s.pivot_product().times(&Eps::exact(det.recip(), cap));
    if ratio.limit()? != q(1) {
        return Err(Error::Hypothesis("pivot product does not tend to the determinant"));
    }
    let u = ratio.plus(&Eps::exact(q(-1), cap));
    let corr = inv_sqrt_one_plus(&u, cap).lift();
    let terms = s
        .scalar_terms()
        .iter()
        .map(|c| Ok(ColorPolynomial::constant(0, c.times(&corr).limit()?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = ColorSeries::from_terms(Vec::new(), terms);
    for note in s.notes() {
        out.push_note(note.clone());
    }
    out.push_note(format!("eps-regularized, cap {cap}"));
    let signs = s.pivot_signs();
    let magnitude = Prefactor::sqrt(&det.abs())?.inv();
    let pf = s.prefactor().mul(&magnitude);
    out.set_bookkeeping(pf, det.clone(), signs.to_vec());
    Ok(out)
}

/// Finite meridian-sum identity in the field of order `8K`:
/// `e^{−iπ(α²−1)/2K} = −e^{iπ/4} e^{iπ/K} √(2/K) / sin(πα/K) ·
/// Σ_{β=1}^{K−1} e^{iπβ²/2K} sin(παβ/K) sin(πβ/K)`.
pub fn meridian_sum_identity(alpha: u32, k: u32) -> Result<IdentityCheck> {
    check_k(k, u32::MAX)?;
    if alpha == 0 || alpha >= k {
        return Err(Error::ColorOutOfRange { color: alpha, k });
    }
    let a = alpha as i64;
    let lhs = CycNumber::z_pow(k, -2 * (a * a - 1));
    let mut sum = CycNumber::zero(k);
    for b in 1..k as i64 {
        let term = CycNumber::z_pow(k, 2 * b * b)
            .mul(&CycNumber::sin_pi(k, a * b))
            .mul(&CycNumber::sin_pi(k, b));
        sum = sum.add(&term);
    }
    let rhs = CycNumber::z_pow(k, k as i64 + 4)
        .neg()
        .mul(&CycNumber::sqrt2(k))
        .div(&CycNumber::sqrt_k(k))?
        .div(&CycNumber::sin_pi(k, a))?
        .mul(&sum);
    Ok(IdentityCheck { lhs, rhs })
}

/// `Σ_{β=−K}^{K−1} e^{iπβ²/2K} = √2 √K e^{iπ/4}`, the discrete Gaussian sum
/// agreeing with its integral.
pub fn poisson_identity(k: u32) -> Result<IdentityCheck> {
    check_k(k, u32::MAX)?;
    let kk = k as i64;
    let mut lhs = CycNumber::zero(k);
    for b in -kk..kk {
        lhs = lhs.add(&CycNumber::z_pow(k, 2 * b * b));
    }
    let rhs = CycNumber::sqrt2(k).mul(&CycNumber::sqrt_k(k)).mul(&CycNumber::z_pow(k, kk));
    Ok(IdentityCheck { lhs, rhs })
}

/// Both sides of a `Prefactor × KSeries` identity.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesIdentity {
    pub lhs: KSeries,
    pub rhs: GaussMoment,
}

impl SeriesIdentity {
    pub fn holds(&self) -> bool {
        let r = self.rhs.normalized();
        r.prefactor.is_trivial() && r.series == self.lhs
    }
}

/// The continuum meridian identity: `−e^{iπ/4} e^{iπ/K} √(2K)/sin(πα/K) ·
/// ∫_0^∞ e^{iπKb²/2} sin(παb) sin(πb) db` against `e^{−iπ(α²−1)/2K}`, to
/// order `n0`.
pub fn kirby_integral_identity(alpha: u32, n0: usize) -> Result<SeriesIdentity> {
    if alpha == 0 {
        return Err(Error::ColorOutOfRange { color: 0, k: 0 });
    }
    let a = q(alpha as i64);
    let i_pi = SymbolicScalar::i_pi_pow(1);
    let lhs = exp_linear(n0, &i_pi.scale(&(-(&a * &a - q(1)) / q(2))));
    // sin(παb) sin(πb) = (cos(π(α−1)b) − cos(π(α+1)b))/2, and the half line
    // is half the line
    let m = n0 + 1;
    let g1 = gauss_moment_shifted(0, &q(1), &(&a - q(1)), m)?;
    let g2 = gauss_moment_shifted(0, &q(1), &(&a + q(1)), m)?;
    if g1.prefactor != g2.prefactor {
        return Err(Error::PrefactorMismatch);
    }
    // 1/sin(πα/K) = K/(πα) · 1/sinc; the K is absorbed by dividing the
    // (vanishing at t = 0) difference by t
    let diff = g1.series.sub(&g2.series)?.unshift(1)?;
    let inv_sinc = scaled_sinc_series(n0, &a).inverse()?;
    let coef = SymbolicScalar::pi_pow(-1).scale(&(q2(1, 4) / &a));
    let series = diff
        .mul(&inv_sinc)
        .mul(&exp_linear(n0, &i_pi))
        .scale(&coef)
        .scale(&SymbolicScalar::from_int(-1));
    let prefactor = g1.prefactor.mul(&Prefactor::phase(1)).mul(&Prefactor::two_pow_half(1)).mul(&Prefactor::k_pow_half(1));
    Ok(SeriesIdentity { lhs, rhs: GaussMoment { prefactor, series } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_int;

    #[test]
    fn schur_example() {
        let l = from_int(&[vec![2, 1], vec![1, 2]]);
        let s = schur_update(&l, 0).unwrap();
        assert_eq!(s, vec![vec![q2(3, 2)]]);
    }

    #[test]
    fn meridian_sums() {
        for k in [5u32, 7] {
            for a in 1..k {
                assert!(meridian_sum_identity(a, k).unwrap().holds(), "K={k} alpha={a}");
            }
            assert!(poisson_identity(k).unwrap().holds());
        }
    }

    #[test]
    fn kirby_integral() {
        for a in 1..=7 {
            assert!(kirby_integral_identity(a, 6).unwrap().holds(), "alpha={a}");
        }
    }

    #[test]
    fn sine_moment_routes_agree() {
        for m in 0..4 {
            for l in [q(1), q(-2), q2(3, 5)] {
                let a = half_line_sine_moment(m, &l, 9).unwrap();
                let b = half_line_sine_moment_kernel(m, &l, 9).unwrap();
                assert_eq!(a, b, "m={m} l={l}");
            }
        }
    }

    #[test]
    fn fresnel_base_case() {
        let g = gauss_moment_shifted(0, &q(1), &q(0), 3).unwrap();
        assert_eq!(g.prefactor, Prefactor::new(1, 1, -1, q(1), q(1)).unwrap());
        assert_eq!(g.series, KSeries::one(3));
        assert_eq!(gauss_moment_shifted(0, &q(0), &q(0), 3), Err(Error::ZeroPivot));
    }

    #[test]
    fn planner() {
        let l = from_int(&[vec![0, 1], vec![1, 3]]);
        assert_eq!(plan_steps(&l, 2, false, PivotStrategy::InputOrder), Err(Error::ZeroPivot));
        let p = plan_steps(&l, 2, false, PivotStrategy::Auto).unwrap();
        assert_eq!(p.order, vec![1, 0]);
        assert_eq!(p.input_order, 8);
        assert_eq!(p.step_outputs, vec![4, 2]);
        let l = from_int(&[vec![0, 1], vec![1, 0]]);
        assert!(plan_steps(&l, 2, false, PivotStrategy::Auto).unwrap().epsilon);
    }
}
