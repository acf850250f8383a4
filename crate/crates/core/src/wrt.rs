//! Exact WRT invariants at prime K, the integral normalization `Z′`, its
//! `(ζ_K − 1)`-expansion and the congruence with the perturbative series.
//!
//! Color sums are accumulated as formal combinations of powers of `z` and
//! reduced once per color of the first component. Every prime family puts
//! `J_α ∏ sin(πα_j/K)` over the common denominator `D = z^4 − z^{−4}`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclotomic::{
    check_k, legendre, zeta_minus_one_expand, CycNumber, ModularValue, PowerSum, DEFAULT_K_BOUND,
};
use crate::error::{Error, Result};
use crate::jones::{FramedLink, LinkFamily};
use crate::linalg;
use crate::powerseries::{change_variable_to_zeta, ohtsuki_generating_series};
use crate::scalartower::{q2, Q};
use crate::surgery::compute_invariants;

/// `Z(M; K)` for `M = χ_L(S³)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WrtValue {
    pub k: u32,
    pub value: CycNumber,
    pub presentation: FramedLink,
}

/// Which colors enter the surgery sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorRange {
    All,
    /// Odd colors only (the SO(3) sum).
    Odd,
}

impl ColorRange {
    fn colors(self, k: u32) -> Vec<i64> {
        (1..k as i64).filter(|a| self == ColorRange::All || a % 2 == 1).collect()
    }
}

/// Adds `sign · z^base · ∏_e (z^e − z^{−e})` to `acc`.
fn add_binomials(acc: &mut PowerSum, base: i64, exps: &[i64], sign: i64) {
    for mask in 0u32..(1 << exps.len()) {
        let mut e = base;
        let mut s = sign;
        for (i, &x) in exps.iter().enumerate() {
            if mask & (1 << i) == 0 {
                e += x;
            } else {
                e -= x;
                s = -s;
            }
        }
        acc.add_int(e, s);
    }
}

/// `(z^{2K·3}/2)^n = (−i/2)^n = (2i)^{−n}`.
fn inv_two_i_pow(k: u32, n: usize) -> CycNumber {
    CycNumber::z_pow(k, 6 * k as i64 * n as i64).scale(&num_traits::pow(q2(1, 2), n))
}

/// Entry `α` (for `α` in the color range, zero elsewhere): the sum over the
/// colors of components `1..` of `J ∏_{j ≥ 1} sin(πα_j/K)`, with component 0
/// colored `α`.
fn partial_sums(link: &FramedLink, k: u32, range: ColorRange) -> Vec<CycNumber> {
    let colors = range.colors(k);
    let kk = k as usize;
    let inv_d = CycNumber::inv_qdiff_sum(k, 1);
    let mut out = vec![CycNumber::zero(k); kk];
    let theta = |a: i64, f: i64| 2 * f * (a * a - 1);
    match link.family() {
        LinkFamily::Unknot { framing } => {
            for &a in &colors {
                let mut acc = PowerSum::new(k);
                add_binomials(&mut acc, theta(a, *framing), &[4 * a], 1);
                out[a as usize] = acc.mul(&inv_d).reduce();
            }
        }
        LinkFamily::HopfChain { framings } if framings.len() == 1 => {
            return partial_sums(&FramedLink::unknot(framings[0]), k, range);
        }
        LinkFamily::HopfChain { framings } => {
            let n = framings.len();
            let scale = inv_two_i_pow(k, n - 1);
            for &a0 in &colors {
                let mut acc = PowerSum::new(k);
                let mut idx = vec![0usize; n - 1];
                'outer: loop {
                    let mut a = Vec::with_capacity(n);
                    a.push(a0);
                    a.extend(idx.iter().map(|&i| colors[i]));
                    let base: i64 = a.iter().zip(framings).map(|(&x, &f)| theta(x, f)).sum();
                    let mut exps: Vec<i64> = a.windows(2).map(|w| 4 * w[0] * w[1]).collect();
                    exps.push(4 * a[n - 1]);
                    add_binomials(&mut acc, base, &exps, 1);
                    for slot in idx.iter_mut() {
                        *slot += 1;
                        if *slot < colors.len() {
                            continue 'outer;
                        }
                        *slot = 0;
                    }
                    break;
                }
                out[a0 as usize] = acc.mul(&inv_d).reduce().mul(&scale);
            }
        }
        LinkFamily::TorusKnot { m, p, framing } => {
            for &a in &colors {
                let mut acc = PowerSum::new(k);
                let mut h = -(a - 1);
                while h < a {
                    add_binomials(&mut acc, theta(a, framing - m * p) + 2 * p * h * (m * h + 2), &[4 * (m * h + 1)], 1);
                    h += 2;
                }
                out[a as usize] = acc.mul(&inv_d).reduce();
            }
        }
        LinkFamily::DisjointUnion(children) => {
            let mut rest = CycNumber::one(k);
            let mut first: Option<&FramedLink> = None;
            for c in children.iter().filter(|c| c.ncomp() > 0) {
                if first.is_none() {
                    first = Some(c);
                } else {
                    rest = rest.mul(&weighted_sum(c, k, range));
                }
            }
            if let Some(c) = first {
                out = partial_sums(c, k, range).into_iter().map(|x| x.mul(&rest)).collect();
            }
        }
        LinkFamily::ConnectedSum(children) => {
            let parts: Vec<Vec<CycNumber>> = children.iter().map(|c| partial_sums(c, k, range)).collect();
            let mut d = PowerSum::new(k);
            d.add_int(4, 1);
            d.add_int(-4, -1);
            for &a in &colors {
                // 1/[α] = D/(z^{4α} − z^{−4α})
                let inv_q = d.mul(&CycNumber::inv_qdiff_sum(k, a)).reduce();
                let mut acc = CycNumber::one(k);
                for p in &parts {
                    acc = acc.mul(&p[a as usize]);
                }
                for _ in 1..children.len() {
                    acc = acc.mul(&inv_q);
                }
                out[a as usize] = acc;
            }
        }
    }
    out
}

/// `Σ_α J_α(L) ∏_j sin(πα_j/K)` over the color range.
pub fn weighted_sum(link: &FramedLink, k: u32, range: ColorRange) -> CycNumber {
    if link.ncomp() == 0 {
        return CycNumber::one(k);
    }
    let partial = partial_sums(link, k, range);
    let mut total = CycNumber::zero(k);
    for a in range.colors(k) {
        total = total.add(&partial[a as usize].mul(&CycNumber::sin_pi(k, a)));
    }
    total
}

/// `e^{iφ} = e^{−(3/4)πi(K−2)σ/K}` for signature `σ`.
pub fn framing_phase(k: u32, signature: i64) -> CycNumber {
    CycNumber::z_pow(k, (6 - 3 * k as i64) * signature)
}

/// `Z(S³; K) = √(2/K) sin(π/K)`.
pub fn z_s3(k: u32) -> CycNumber {
    CycNumber::sqrt2(k).div(&CycNumber::sqrt_k(k)).expect("√K ≠ 0").mul(&CycNumber::sin_pi(k, 1))
}

/// `Z(M;K)/Z(S³;K) = e^{iφ} (√2/√K)^N Σ_α J_α ∏ sin(πα_j/K)`.
pub fn z_hat(link: &FramedLink, k: u32, range: ColorRange) -> CycNumber {
    let n = link.ncomp();
    let sig = linalg::signature(&link.linking_matrix());
    let r = CycNumber::sqrt2(k).div(&CycNumber::sqrt_k(k)).expect("√K ≠ 0").pow(n as u32);
    framing_phase(k, sig).mul(&r).mul(&weighted_sum(link, k, range))
}

pub fn z_wrt(link: &FramedLink, k: u32) -> Result<WrtValue> {
    z_wrt_bounded(link, k, DEFAULT_K_BOUND)
}

pub fn z_wrt_bounded(link: &FramedLink, k: u32, bound: u32) -> Result<WrtValue> {
    check_k(k, bound)?;
    Ok(WrtValue { k, value: z_s3(k).mul(&z_hat(link, k, ColorRange::All)), presentation: link.clone() })
}

/// How `Z′` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZPrimeRoute {
    /// `Ẑ(M;K)/Ẑ(M;3)` (or its conjugate for `K ≡ 1 mod 4`).
    Ratio,
    /// Odd-color sum, used when `Z(M;3) = 0`.
    OddColors,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZPrime {
    pub k: u32,
    pub value: CycNumber,
    pub route: ZPrimeRoute,
    /// `a_n` with `Z′ = Σ a_n (ζ_K − 1)^n`.
    pub a: Vec<BigInt>,
}

/// `Ẑ(M;3)`, which lies in `Q(ζ_8)`, moved into the field of order `8K`.
pub fn z_hat_at_three(link: &FramedLink, k: u32) -> Result<CycNumber> {
    let z3 = z_hat(link, 3, ColorRange::All);
    // ζ_8 = z^3 in the order-24 field
    let c = z3
        .power_coords(3, 4)
        .ok_or_else(|| Error::NotInSubring(String::from("Z(M;3) outside Q(zeta_8)")))?;
    let mut s = PowerSum::new(k);
    for (j, cj) in c.iter().enumerate() {
        s.add(k as i64 * j as i64, cj);
    }
    Ok(s.reduce())
}

/// `Z′` by the ratio route: `Ẑ(M;K)/Ẑ(M;3)` for `K ≡ 3 mod 4`, and
/// `Ẑ(M;K)/conj Ẑ(M;3)` for `K ≡ 1 mod 4`.
pub fn z_prime_ratio(link: &FramedLink, k: u32) -> Result<CycNumber> {
    let z3 = z_hat_at_three(link, k)?;
    if z3.is_zero() {
        return Err(Error::VanishingNormalization);
    }
    let den = if k % 4 == 3 { z3 } else { z3.conj() };
    z_hat(link, k, ColorRange::All).div(&den)
}

/// `Z′` by the odd-color sum: `2^{N/2} e^{±iπσ/4} Ẑ_odd(M;K)`, the sign `+`
/// for `K ≡ 3 mod 4`.
pub fn z_prime_odd(link: &FramedLink, k: u32) -> CycNumber {
    let n = link.ncomp();
    let sig = linalg::signature(&link.linking_matrix());
    let ph = if k % 4 == 3 { k as i64 * sig } else { -(k as i64) * sig };
    CycNumber::sqrt2(k)
        .pow(n as u32)
        .mul(&CycNumber::z_pow(k, ph))
        .mul(&z_hat(link, k, ColorRange::Odd))
}

/// `Z′(M;K)` and its `(ζ_K − 1)`-coordinates; fails unless `Z′ ∈ Z[ζ_K]`.
pub fn z_prime(link: &FramedLink, k: u32) -> Result<ZPrime> {
    z_prime_bounded(link, k, DEFAULT_K_BOUND)
}

pub fn z_prime_bounded(link: &FramedLink, k: u32, bound: u32) -> Result<ZPrime> {
    check_k(k, bound)?;
    let (value, route) = match z_prime_ratio(link, k) {
        Ok(v) => (v, ZPrimeRoute::Ratio),
        Err(Error::VanishingNormalization) => (z_prime_odd(link, k), ZPrimeRoute::OddColors),
        Err(e) => return Err(e),
    };
    let a = zeta_minus_one_expand(&value).map_err(|e| match e {
        Error::NotInSubring(r) => Error::IntegralityFailure(r),
        other => other,
    })?;
    Ok(ZPrime { k, value, route, a })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    pub n: usize,
    /// `(|H|/K)·a_n mod K`.
    pub a_mod_k: u32,
    /// `(λ_n/|H|)^∨`.
    pub lambda_vee: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OhtsukiReport {
    pub k: u32,
    pub h1order: BigInt,
    pub zprime: ZPrime,
    pub lambda: Vec<Q>,
    pub rows: Vec<CongruenceRow>,
}

impl OhtsukiReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}

/// Compares the `(ζ_K − 1)`-coordinates of `Z′` with the perturbative
/// coefficients re-expanded in `e^{2πi/K} − 1`, for `n ≤ min(n0, (K−3)/2)`.
/// Both sides carry the `|H_1|` normalization: `(|H|/K) a_n` against
/// `(λ_n/|H|)^∨`.
pub fn ohtsuki_congruence_check(link: &FramedLink, k: u32, n0: usize) -> Result<OhtsukiReport> {
    ohtsuki_congruence_check_bounded(link, k, n0, DEFAULT_K_BOUND)
}

pub fn ohtsuki_congruence_check_bounded(
    link: &FramedLink,
    k: u32,
    n0: usize,
    bound: u32,
) -> Result<OhtsukiReport> {
    check_k(k, bound)?;
    let det = linalg::det(&link.linking_matrix());
    if det.is_zero() {
        return Err(Error::NotRationalHomologySphere);
    }
    let h = det.abs().to_integer();
    if h.is_multiple_of(&BigInt::from(k)) {
        return Err(Error::Hypothesis("|H_1| divisible by K"));
    }
    let nmax = n0.min((k as usize - 3) / 2);
    let zprime = z_prime_bounded(link, k, bound)?;
    let s = if nmax == 0 { Vec::new() } else { compute_invariants(link, nmax)?.s };
    let lambda = change_variable_to_zeta(&ohtsuki_generating_series(&s, nmax)?, nmax)?;
    let hq = Q::from_integer(h.clone());
    let leg = legendre(h.mod_floor(&BigInt::from(k)).to_i64().unwrap_or(0), k as i64)? as i64;
    let kb = BigInt::from(k);
    let rows = (0..=nmax)
        .map(|n| {
            let a = (&zprime.a[n] * BigInt::from(leg)).mod_floor(&kb).to_u32().unwrap_or(0);
            let l = ModularValue::from_q(&(&lambda[n] / &hq), k)?.residue;
            Ok(CongruenceRow { n, a_mod_k: a, lambda_vee: l, ok: a == l })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OhtsukiReport { k, h1order: h, zprime, lambda, rows })
}

/// `conj Z(L) = Z(mirror L)`: the Galois statement for complex conjugation.
pub fn mirror_check(link: &FramedLink, k: u32) -> Result<bool> {
    let a = z_wrt(link, k)?.value;
    let b = z_wrt(&link.mirror(), k)?.value;
    Ok(a.conj() == b)
}

/// Direct evaluation of the surgery sum with one exact Jones value per color
/// vector; slow, kept as an oracle.
pub fn z_wrt_direct(link: &FramedLink, k: u32) -> Result<CycNumber> {
    check_k(k, DEFAULT_K_BOUND)?;
    let n = link.ncomp();
    let mut total = CycNumber::zero(k);
    let mut cols = vec![1u32; n];
    if n > 0 {
        loop {
            let mut term = crate::jones::jones_exact(link, &cols, k)?;
            for &c in &cols {
                term = term.mul(&CycNumber::sin_pi(k, c as i64));
            }
            total = total.add(&term);
            let mut i = 0;
            while i < n {
                cols[i] += 1;
                if cols[i] < k {
                    break;
                }
                cols[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    } else {
        total = CycNumber::one(k);
    }
    let sig = linalg::signature(&link.linking_matrix());
    let r = CycNumber::sqrt2(k).div(&CycNumber::sqrt_k(k))?.pow(n as u32);
    Ok(z_s3(k).mul(&framing_phase(k, sig)).mul(&r).mul(&total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalartower::q;

    fn links() -> Vec<FramedLink> {
        vec![
            FramedLink::empty(),
            FramedLink::unknot(2),
            FramedLink::unknot(-3),
            FramedLink::hopf_chain(&[2, -1]).unwrap(),
            FramedLink::hopf_chain(&[1, 0, 2]).unwrap(),
            FramedLink::torus_knot(2, 3, -1).unwrap(),
            FramedLink::disjoint_union(vec![FramedLink::unknot(2), FramedLink::unknot(3)]),
            FramedLink::connected_sum(vec![
                FramedLink::torus_knot(2, 3, 1).unwrap(),
                FramedLink::unknot(1),
            ])
            .unwrap(),
        ]
    }

    #[test]
    fn fast_sum_matches_direct() {
        for link in links() {
            for k in [5, 7] {
                assert_eq!(z_wrt(&link, k).unwrap().value, z_wrt_direct(&link, k).unwrap(), "{link:?} K={k}");
            }
        }
    }

    #[test]
    fn blow_down_and_s3() {
        for k in [5, 7, 11] {
            let s3 = z_wrt(&FramedLink::empty(), k).unwrap().value;
            assert_eq!(s3, z_s3(k));
            assert_eq!(z_wrt(&FramedLink::unknot(1), k).unwrap().value, s3);
            assert_eq!(z_wrt(&FramedLink::unknot(-1), k).unwrap().value, s3);
            // unknot(p−1) = chain (p, 1)
            for p in [3, 4] {
                let a = z_wrt(&FramedLink::unknot(p - 1), k).unwrap().value;
                let b = z_wrt(&FramedLink::hopf_chain(&[p, 1]).unwrap(), k).unwrap().value;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rp3_vanishes() {
        for k in [3, 5, 7, 11] {
            assert!(z_hat(&FramedLink::unknot(2), k, ColorRange::All).is_zero());
        }
    }

    #[test]
    fn routes_agree() {
        for link in [FramedLink::unknot(3), FramedLink::unknot(5), FramedLink::empty(), FramedLink::unknot(1)] {
            for k in [5, 7, 11] {
                let r = z_prime_ratio(&link, k).unwrap();
                assert_eq!(r, z_prime_odd(&link, k), "{link:?} K={k}");
            }
        }
        assert_eq!(z_prime(&FramedLink::empty(), 7).unwrap().value, CycNumber::one(7));
    }

    #[test]
    fn lens_space_congruences() {
        for p in [2, 3, 5] {
            for k in [5u32, 7, 11, 13] {
                if (p as u32) % k == 0 {
                    continue;
                }
                let r = ohtsuki_congruence_check(&FramedLink::unknot(p), k, 2).unwrap();
                assert!(r.holds(), "p={p} K={k}: {:?}", r.rows);
            }
        }
        assert_eq!(
            ohtsuki_congruence_check(&FramedLink::unknot(5), 5, 1).map(|_| ()),
            Err(Error::Hypothesis("|H_1| divisible by K"))
        );
    }

    #[test]
    fn lambda_values() {
        let r = ohtsuki_congruence_check(&FramedLink::unknot(3), 7, 2).unwrap();
        assert_eq!(r.lambda, vec![q(1), q2(-1, 6), q2(13, 216)]);
        let r = ohtsuki_congruence_check(&FramedLink::unknot(2), 7, 2).unwrap();
        assert_eq!(r.lambda, vec![q(1), q(0), q2(-1, 32)]);
        assert_eq!(r.zprime.route, ZPrimeRoute::OddColors);
    }

    #[test]
    fn mirror_conjugates() {
        for link in links() {
            assert!(mirror_check(&link, 5).unwrap(), "{link:?}");
        }
    }
}
