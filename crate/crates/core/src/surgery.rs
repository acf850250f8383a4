//! From a surgery presentation to `Δ_n` and `S_n`.
//!
//! The integrated series is multiplied by the `S³` normalization
//! `K sin(π/K)/π` and by `|H_1|^{3/2}`; what remains must have a trivial
//! prefactor and constant term 1, and its logarithm must be a power series in
//! `iπ/K` with rational coefficients.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::jones::{jones_series, FramedLink};
use crate::linalg;
use crate::powerseries::{sinc_series, sn_from_delta, ColorSeries, KSeries};
use crate::scalartower::{Prefactor, SymbolicScalar, Q};
use crate::stationaryphase::{
    apply_pivot_magnitude, epsilon_limit, epsilon_regularize, integrate_all, plan_steps, PivotStrategy,
    StepPlan,
};

/// Perturbative invariants of `χ_L(S³)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldResult {
    /// `|H_1(M, Z)| = |det l|`.
    pub h1order: BigInt,
    pub signature: i64,
    /// `Δ_0..Δ_{n0}`.
    pub delta: Vec<SymbolicScalar>,
    /// `S_1..S_{n0}`.
    pub s: Vec<Q>,
    pub presentation: FramedLink,
    pub order: usize,
    pub notes: Vec<String>,
}

/// Knobs of the general pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub strategy: PivotStrategy,
    /// Initial relative precision of ε-expansions; doubled on exhaustion.
    pub eps_cap: u32,
    pub max_eps_cap: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { strategy: PivotStrategy::Auto, eps_cap: 8, max_eps_cap: 128 }
    }
}

/// Input order of the color series needed for `S_{n0}`.
pub fn required_input_order(n: usize, n0: usize, asl: bool) -> usize {
    crate::stationaryphase::required_orders(n, n0, asl).0
}

pub fn compute_invariants(link: &FramedLink, n0: usize) -> Result<ManifoldResult> {
    compute_invariants_with(link, n0, &PipelineOptions::default())
}

pub fn compute_invariants_with(link: &FramedLink, n0: usize, opts: &PipelineOptions) -> Result<ManifoldResult> {
    run(link, n0, false, opts)
}

/// The one-scoop path for algebraically split links: a fixed order window of
/// `4 n0` is enough because total color degree is at most `3n/4` there.
pub fn compute_invariants_asl(link: &FramedLink, n0: usize) -> Result<ManifoldResult> {
    if !link.is_algebraically_split() {
        return Err(Error::NotAlgebraicallySplit);
    }
    run(link, n0, true, &PipelineOptions::default())
}

fn run(link: &FramedLink, n0: usize, asl: bool, opts: &PipelineOptions) -> Result<ManifoldResult> {
    let l = link.linking_matrix();
    let det = linalg::det(&l);
    if det.is_zero() {
        return Err(Error::NotRationalHomologySphere);
    }
    let signature = linalg::signature(&l);
    let plan = plan_steps(&l, n0, asl, opts.strategy)?;
    let series = jones_series(link, plan.input_order);
    let mut notes = Vec::new();
    if plan.order.iter().enumerate().any(|(i, &c)| i != c) {
        notes.push(format!("pivot order {:?}", plan.order));
    }
    let done = if plan.epsilon { run_epsilon(&series, &plan, &det, opts)? } else { run_plain(&series, &plan, &det)? };
    let sig_sum: i64 = done.pivot_signs().iter().map(|&s| s as i64).sum();
    if sig_sum != signature {
        return Err(Error::Hypothesis("pivot signs disagree with the signature"));
    }
    notes.extend(done.notes().iter().cloned());
    let (delta, s) = assemble(&done, &det, n0)?;
    Ok(ManifoldResult {
        h1order: det.abs().to_integer(),
        signature,
        delta,
        s,
        presentation: link.clone(),
        order: n0,
        notes,
    })
}

fn run_plain(series: &ColorSeries<SymbolicScalar>, plan: &StepPlan, det: &Q) -> Result<ColorSeries<SymbolicScalar>> {
    let out = integrate_all(series, plan)?;
    if out.pivot_product() != det {
        return Err(Error::Hypothesis("pivot product differs from the determinant"));
    }
    apply_pivot_magnitude(&out)
}

fn run_epsilon(
    series: &ColorSeries<SymbolicScalar>,
    plan: &StepPlan,
    det: &Q,
    opts: &PipelineOptions,
) -> Result<ColorSeries<SymbolicScalar>> {
    let mut cap = opts.eps_cap.max(1);
    loop {
        let reg = epsilon_regularize(series, cap);
        let r = integrate_all(&reg, plan).and_then(|out| epsilon_limit(&out, det));
        match r {
            Err(Error::InsufficientPrecision) if cap < opts.max_eps_cap => cap *= 2,
            other => return other,
        }
    }
}

/// `Δ = K sin(π/K)/π · |det|^{3/2} · (integrated series)`, then `S_n`.
fn assemble(done: &ColorSeries<SymbolicScalar>, det: &Q, n0: usize) -> Result<(Vec<SymbolicScalar>, Vec<Q>)> {
    let abs = det.abs();
    let k = done.to_kseries()?.truncate(n0);
    let full = k
        .mul(&sinc_series(n0))
        .mul_prefactor(&Prefactor::sqrt(&(&abs * &abs * &abs))?)
        .absorb_scalar_prefactor();
    if !full.prefactor().is_trivial() {
        return Err(Error::InvalidPrefactor("residual prefactor after assembly"));
    }
    if *full.coeff(0) != SymbolicScalar::one() {
        return Err(Error::Hypothesis("Delta_0 is not 1"));
    }
    let s = sn_from_delta(&full)?;
    Ok((full.coeffs().to_vec(), s))
}

/// `Δ` of a finished run as a `KSeries`.
pub fn delta_series(r: &ManifoldResult) -> KSeries {
    KSeries::new(r.order, r.delta.clone())
}

/// Largest component count accepted by [`alternating_sum`].
pub const MAX_SUBLINK_COMPONENTS: usize = 12;

/// `Σ_{L′ ⊆ L} (−1)^{#L′} S_n(χ_{L′}(S³))` over all sublinks, the empty one
/// giving `S³`.
pub fn alternating_sum(link: &FramedLink, n: usize) -> Result<SymbolicScalar> {
    alternating_sum_with(link, n, |sub, n| compute_invariants_asl(sub, n).map(|r| r.s[n - 1].clone()))
}

/// [`alternating_sum`] with a caller-supplied evaluator of `S_n` (lets the
/// caller parallelize or cache).
pub fn alternating_sum_with(
    link: &FramedLink,
    n: usize,
    eval: impl Fn(&FramedLink, usize) -> Result<Q>,
) -> Result<SymbolicScalar> {
    let nc = link.ncomp();
    if nc > MAX_SUBLINK_COMPONENTS {
        return Err(Error::SublinkLatticeTooLarge(nc));
    }
    if !link.is_algebraically_split() {
        return Err(Error::NotAlgebraicallySplit);
    }
    if n == 0 {
        return Err(Error::Hypothesis("S_n is defined for n >= 1"));
    }
    let mut total = Q::zero();
    for mask in 0u32..(1 << nc) {
        let comps: Vec<usize> = (0..nc).filter(|&i| mask & (1 << i) != 0).collect();
        let v = eval(&link.sublink(&comps)?, n)?;
        if comps.len() % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(SymbolicScalar::from_q(total))
}

/// All sublinks with their sign `(−1)^{#L′}`, in mask order.
pub fn signed_sublinks(link: &FramedLink) -> Result<Vec<(i8, FramedLink)>> {
    let nc = link.ncomp();
    if nc > MAX_SUBLINK_COMPONENTS {
        return Err(Error::SublinkLatticeTooLarge(nc));
    }
    (0u32..(1 << nc))
        .map(|mask| {
            let comps: Vec<usize> = (0..nc).filter(|&i| mask & (1 << i) != 0).collect();
            let sign = if comps.len() % 2 == 0 { 1 } else { -1 };
            Ok((sign, link.sublink(&comps)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalartower::{q, q2};
    use alloc::vec;

    fn s_of(link: &FramedLink, n0: usize) -> Vec<Q> {
        compute_invariants(link, n0).unwrap().s
    }

    #[test]
    fn empty_link_baseline() {
        let r = compute_invariants(&FramedLink::empty(), 4).unwrap();
        assert_eq!(r.s, vec![q(0), q2(1, 6), q(0), q2(-1, 180)]);
        assert_eq!(r.h1order, BigInt::from(1));
    }

    #[test]
    fn blow_down_anchor() {
        assert_eq!(s_of(&FramedLink::unknot(1), 3), s_of(&FramedLink::empty(), 3));
        assert_eq!(s_of(&FramedLink::unknot(-1), 3), s_of(&FramedLink::empty(), 3));
    }

    #[test]
    fn lens_spaces() {
        for p in 2..6i64 {
            let s = s_of(&FramedLink::unknot(p), 2);
            assert_eq!(s[0], q2(-(p - 1) * (p - 2), 2 * p));
            assert_eq!(s[1], q2(1, 6 * p * p));
        }
        assert_eq!(s_of(&FramedLink::unknot(3), 3), vec![q2(-1, 3), q2(1, 54), q(0)]);
    }

    #[test]
    fn hopf_chain_blow_down() {
        for p in 3..6 {
            let a = s_of(&FramedLink::unknot(p - 1), 2);
            let b = s_of(&FramedLink::hopf_chain(&[p, 1]).unwrap(), 2);
            assert_eq!(a, b, "p={p}");
        }
    }

    #[test]
    fn epsilon_mode_matches_reorder() {
        for p in [2, 3] {
            let link = FramedLink::hopf_chain(&[0, p]).unwrap();
            let eps = PipelineOptions { strategy: PivotStrategy::Epsilon, ..Default::default() };
            let re = PipelineOptions { strategy: PivotStrategy::Reorder, ..Default::default() };
            let a = compute_invariants_with(&link, 2, &eps).unwrap();
            let b = compute_invariants_with(&link, 2, &re).unwrap();
            assert_eq!(a.s, b.s, "p={p}");
        }
    }

    #[test]
    fn degenerate_input() {
        assert_eq!(compute_invariants(&FramedLink::unknot(0), 2), Err(Error::NotRationalHomologySphere));
    }

    #[test]
    fn asl_path_agrees() {
        let link = FramedLink::disjoint_union(vec![FramedLink::unknot(2), FramedLink::unknot(3)]);
        let a = compute_invariants_asl(&link, 2).unwrap();
        let b = compute_invariants(&link, 2).unwrap();
        assert_eq!(a.s, b.s);
        let base = s_of(&FramedLink::empty(), 2);
        let l2 = s_of(&FramedLink::unknot(2), 2);
        let l3 = s_of(&FramedLink::unknot(3), 2);
        for i in 0..2 {
            assert_eq!(a.s[i], &l2[i] + &l3[i] - &base[i]);
        }
        assert_eq!(required_input_order(2, 1, false), 4);
        assert_eq!(required_input_order(1, 3, false), 6);
        assert_eq!(required_input_order(5, 1, true), 4);
    }

    #[test]
    fn alternating_sum_small() {
        let one = FramedLink::unknot(3);
        let v = alternating_sum(&one, 1).unwrap();
        assert_eq!(v.to_rational(), Some(q(0) - q2(-1, 3)));
        let two = FramedLink::disjoint_union(vec![FramedLink::unknot(2), FramedLink::unknot(-3)]);
        assert!(alternating_sum(&two, 1).unwrap().is_zero());
    }
}
