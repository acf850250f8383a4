use alloc::vec::Vec;

use super::{jones_exact, twist, FramedLink};
use crate::cyclotomic::{check_k, CycNumber};
use crate::error::{Error, Result};

/// Colors in `α_1 ⊗ α_2`: `|α_1−α_2|+1, |α_1−α_2|+3, …, α_1+α_2−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRange {
    pub alpha1: u32,
    pub alpha2: u32,
    pub admissible: Vec<u32>,
}

pub fn fusion_range(alpha1: u32, alpha2: u32) -> FusionRange {
    let lo = alpha1.abs_diff(alpha2) + 1;
    let hi = (alpha1 + alpha2).saturating_sub(1);
    FusionRange { alpha1, alpha2, admissible: (lo..=hi).step_by(2).collect() }
}

/// Both sides of one identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: CycNumber,
    pub rhs: CycNumber,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionReport {
    pub range: FusionRange,
    pub k: u32,
    /// `[α_1][α_2] = Σ [α]`.
    pub product: IdentityCheck,
    /// `Σ θ_α^{−1}[α]` against the `(−1,−1)`-framed Hopf link.
    pub twist: IdentityCheck,
    /// For each meridian color β: `Σ [α]·[αβ]/[α]` against the chain `(α_1, β, α_2)`.
    pub meridian: Vec<(u32, IdentityCheck)>,
}

impl FusionReport {
    pub fn holds(&self) -> bool {
        self.product.holds() && self.twist.holds() && self.meridian.iter().all(|(_, c)| c.holds())
    }
}

/// Checks the fusion rules for a 2-cable of the 0-framed unknot at prime `K`.
pub fn fusion_identities_check(alpha1: u32, alpha2: u32, k: u32) -> Result<FusionReport> {
    check_k(k, u32::MAX)?;
    if alpha1 == 0 || alpha2 == 0 {
        return Err(Error::ColorOutOfRange { color: 0, k });
    }
    if alpha1 + alpha2 - 1 > k - 1 {
        return Err(Error::Hypothesis("fused colors exceed K-1"));
    }
    let range = fusion_range(alpha1, alpha2);
    let qi = |n: u32| CycNumber::qint(k, n as i64);
    let sum = |f: &dyn Fn(u32) -> CycNumber| {
        range.admissible.iter().fold(CycNumber::zero(k), |acc, &a| acc.add(&f(a)))
    };

    let product = IdentityCheck { lhs: qi(alpha1).mul(&qi(alpha2)), rhs: sum(&|a| qi(a)) };

    let hopf = FramedLink::hopf_chain(&[-1, -1])?;
    let twist = IdentityCheck {
        lhs: sum(&|a| twist(k, a as i64, -1).mul(&qi(a))),
        rhs: jones_exact(&hopf, &[alpha1, alpha2], k)?,
    };

    let chain = FramedLink::hopf_chain(&[0, 0, 0])?;
    let mut meridian = Vec::new();
    for beta in 1..k {
        let lhs = sum(&|a| CycNumber::qint(k, (a * beta) as i64));
        let rhs = jones_exact(&chain, &[alpha1, beta, alpha2], k)?;
        meridian.push((beta, IdentityCheck { lhs, rhs }));
    }
    Ok(FusionReport { range, k, product, twist, meridian })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(fusion_range(1, 4).admissible, [4]);
        assert_eq!(fusion_range(2, 3).admissible, [2, 4]);
        assert_eq!(fusion_range(3, 3).admissible, [1, 3, 5]);
    }

    #[test]
    fn identities_hold() {
        for (a, b, k) in [(1, 1, 5), (2, 3, 11), (2, 2, 7), (3, 4, 7)] {
            let r = fusion_identities_check(a, b, k).unwrap();
            assert!(r.holds(), "{a} {b} {k}");
        }
        assert!(fusion_identities_check(4, 4, 7).is_err());
    }
}
