//! Colored Jones polynomials of a small family of framed links: exact values
//! in `Q(z)` at prime `K`, `1/K` expansions in normal form, fusion identities
//! and degree bounds.

mod fusion;
mod series;

pub use fusion::{fusion_identities_check, fusion_range, FusionRange, FusionReport, IdentityCheck};
pub use series::{check_asl_bound, check_mm_bound, extract_d, jones_series, BoundCheck};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::cyclotomic::{check_k, CycNumber, PowerSum};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkFamily {
    Unknot { framing: i64 },
    /// Linear chain of unknots, consecutive ones forming Hopf links.
    HopfChain { framings: Vec<i64> },
    /// The `(m, p)` torus knot; `framing` is the framing of the knot itself.
    TorusKnot { m: i64, p: i64, framing: i64 },
    DisjointUnion(Vec<FramedLink>),
    /// Connected sum of the children along their first components.
    ConnectedSum(Vec<FramedLink>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    family: LinkFamily,
    linking: Vec<Vec<i64>>,
}

impl FramedLink {
    pub fn unknot(framing: i64) -> Self {
        FramedLink { family: LinkFamily::Unknot { framing }, linking: vec![vec![framing]] }
    }

    pub fn hopf_chain(framings: &[i64]) -> Result<Self> {
        let n = framings.len();
        if n == 0 {
            return Err(Error::InvalidLink("a Hopf chain needs at least one component".into()));
        }
        let mut l = vec![vec![0; n]; n];
        for (j, &f) in framings.iter().enumerate() {
            l[j][j] = f;
            if j + 1 < n {
                l[j][j + 1] = 1;
                l[j + 1][j] = 1;
            }
        }
        Ok(FramedLink { family: LinkFamily::HopfChain { framings: framings.to_vec() }, linking: l })
    }

    pub fn torus_knot(m: i64, p: i64, framing: i64) -> Result<Self> {
        if m < 1 || p == 0 || m.gcd(&p) != 1 {
            return Err(Error::InvalidLink(format!("T({m},{p}) is not a torus knot")));
        }
        Ok(FramedLink { family: LinkFamily::TorusKnot { m, p, framing }, linking: vec![vec![framing]] })
    }

    pub fn disjoint_union(children: Vec<FramedLink>) -> Self {
        let n: usize = children.iter().map(|c| c.ncomp()).sum();
        let mut l = vec![vec![0; n]; n];
        let mut off = 0;
        for c in &children {
            for i in 0..c.ncomp() {
                for j in 0..c.ncomp() {
                    l[off + i][off + j] = c.linking[i][j];
                }
            }
            off += c.ncomp();
        }
        FramedLink { family: LinkFamily::DisjointUnion(children), linking: l }
    }

    /// The empty link (surgery on it gives `S³`).
    pub fn empty() -> Self {
        Self::disjoint_union(Vec::new())
    }

    pub fn connected_sum(children: Vec<FramedLink>) -> Result<Self> {
        if children.is_empty() || children.iter().any(|c| c.ncomp() == 0) {
            return Err(Error::InvalidLink("connected sum of empty links".into()));
        }
        let n = 1 + children.iter().map(|c| c.ncomp() - 1).sum::<usize>();
        let mut l = vec![vec![0; n]; n];
        let mut off = 1;
        for c in &children {
            let idx = |i: usize| if i == 0 { 0 } else { off + i - 1 };
            for i in 0..c.ncomp() {
                for j in 0..c.ncomp() {
                    l[idx(i)][idx(j)] += c.linking[i][j];
                }
            }
            off += c.ncomp() - 1;
        }
        Ok(FramedLink { family: LinkFamily::ConnectedSum(children), linking: l })
    }

    pub fn family(&self) -> &LinkFamily {
        &self.family
    }
    pub fn ncomp(&self) -> usize {
        self.linking.len()
    }
    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }
    pub fn linking_matrix(&self) -> linalg::Matrix {
        linalg::from_int(&self.linking)
    }
    /// All off-diagonal linking numbers vanish.
    pub fn is_algebraically_split(&self) -> bool {
        (0..self.ncomp()).all(|i| (0..self.ncomp()).all(|j| i == j || self.linking[i][j] == 0))
    }

    /// The sublink on the given increasing component indices. Supported for
    /// families whose sublinks are again expressible: chains and disjoint
    /// unions of those.
    pub fn sublink(&self, comps: &[usize]) -> Result<Self> {
        if comps.iter().any(|&c| c >= self.ncomp()) || comps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLink(format!("bad component selection {comps:?}")));
        }
        if comps.is_empty() {
            return Ok(Self::empty());
        }
        if comps.len() == self.ncomp() {
            return Ok(self.clone());
        }
        let mut parts = Vec::new();
        match &self.family {
            LinkFamily::DisjointUnion(ch) => {
                let mut off = 0;
                for c in ch {
                    let local: Vec<usize> = comps
                        .iter()
                        .filter(|&&i| i >= off && i < off + c.ncomp())
                        .map(|&i| i - off)
                        .collect();
                    if !local.is_empty() {
                        parts.push(c.sublink(&local)?);
                    }
                    off += c.ncomp();
                }
            }
            LinkFamily::HopfChain { framings } => {
                let mut run: Vec<i64> = Vec::new();
                let mut prev: Option<usize> = None;
                for &i in comps {
                    if prev.is_some_and(|p| p + 1 != i) {
                        parts.push(Self::hopf_chain(&run)?);
                        run.clear();
                    }
                    run.push(framings[i]);
                    prev = Some(i);
                }
                parts.push(Self::hopf_chain(&run)?);
            }
            _ => return Err(Error::Unsupported("proper sublinks of this family")),
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Self::disjoint_union(parts) })
    }

    /// Orientation-reversed ambient space: framings and twists change sign.
    pub fn mirror(&self) -> Self {
        match &self.family {
            LinkFamily::Unknot { framing } => Self::unknot(-framing),
            LinkFamily::HopfChain { framings } => {
                // reversing one orientation restores linking number +1
                let f: Vec<i64> = framings.iter().map(|f| -f).collect();
                Self::hopf_chain(&f).expect("nonempty chain")
            }
            LinkFamily::TorusKnot { m, p, framing } => {
                Self::torus_knot(*m, -p, -framing).expect("valid torus knot")
            }
            LinkFamily::DisjointUnion(c) => Self::disjoint_union(c.iter().map(|c| c.mirror()).collect()),
            LinkFamily::ConnectedSum(c) => {
                Self::connected_sum(c.iter().map(|c| c.mirror()).collect()).expect("valid children")
            }
        }
    }

    /// Splits a color vector into per-child slices for composite links.
    fn child_colors(&self, colors: &[u32]) -> Vec<Vec<u32>> {
        match &self.family {
            LinkFamily::DisjointUnion(ch) => {
                let mut off = 0;
                ch.iter()
                    .map(|c| {
                        let v = colors[off..off + c.ncomp()].to_vec();
                        off += c.ncomp();
                        v
                    })
                    .collect()
            }
            LinkFamily::ConnectedSum(ch) => {
                let mut off = 1;
                ch.iter()
                    .map(|c| {
                        let mut v = vec![colors[0]];
                        v.extend_from_slice(&colors[off..off + c.ncomp() - 1]);
                        off += c.ncomp() - 1;
                        v
                    })
                    .collect()
            }
            _ => vec![colors.to_vec()],
        }
    }
}

/// `θ_α^f = e^{(iπ/2K)·f·(α²−1)}`.
pub fn twist(k: u32, alpha: i64, f: i64) -> CycNumber {
    CycNumber::half_twist(k, f * (alpha * alpha - 1))
}

/// `sin(πn/K)/sin(πa/K)` as a power sum, for `K ∤ a`.
pub(crate) fn sine_ratio(k: u32, n: i64, a: i64) -> PowerSum {
    let mut num = PowerSum::new(k);
    num.add_int(4 * n, 1);
    num.add_int(-4 * n, -1);
    num.mul(&CycNumber::inv_qdiff_sum(k, a))
}

/// Exact `J_α(L; K)` in `Q(e^{2πi/8K})`.
pub fn jones_exact(link: &FramedLink, colors: &[u32], k: u32) -> Result<CycNumber> {
    check_k(k, u32::MAX)?;
    if colors.len() != link.ncomp() {
        return Err(Error::ComponentMismatch { left: link.ncomp(), right: colors.len() });
    }
    if let Some(&c) = colors.iter().find(|&&c| c == 0 || c >= k) {
        return Err(Error::ColorOutOfRange { color: c, k });
    }
    Ok(jones_raw(link, colors, k))
}

fn jones_raw(link: &FramedLink, colors: &[u32], k: u32) -> CycNumber {
    let a: Vec<i64> = colors.iter().map(|&c| c as i64).collect();
    match &link.family {
        LinkFamily::Unknot { framing } => twist(k, a[0], *framing).mul(&CycNumber::qint(k, a[0])),
        LinkFamily::HopfChain { framings } => {
            let n = a.len();
            let mut acc = PowerSum::new(k);
            acc.add_int(0, 1);
            for (j, f) in framings.iter().enumerate() {
                acc = acc.mul(&twist(k, a[j], *f).to_power_sum());
            }
            if n == 1 {
                return acc.mul(&CycNumber::qint(k, a[0]).to_power_sum()).reduce();
            }
            // [α_1 α_2]·∏_{j ≥ 2} [α_j α_{j+1}]/[α_j]
            acc = acc.mul(&CycNumber::qint(k, a[0] * a[1]).to_power_sum());
            for j in 1..n - 1 {
                acc = acc.mul(&sine_ratio(k, a[j] * a[j + 1], a[j]));
                acc = acc.reduce().to_power_sum();
            }
            acc.reduce()
        }
        LinkFamily::TorusKnot { m, p, framing } => {
            let alpha = a[0];
            let mut sum = PowerSum::new(k);
            // h = 2k runs over −(α−1), −(α−3), …, α−1; β = m·h + 1
            let mut h = -(alpha - 1);
            while h < alpha {
                let beta = m * h + 1;
                let mut term = PowerSum::new(k);
                term.add_int(2 * p * h * (m * h + 2), 1);
                sum.add_assign(&term.mul(&CycNumber::qint(k, beta).to_power_sum()));
                h += 2;
            }
            twist(k, alpha, framing - m * p).mul(&sum.reduce())
        }
        LinkFamily::DisjointUnion(children) => {
            let mut acc = CycNumber::one(k);
            for (c, cols) in children.iter().zip(link.child_colors(colors)) {
                acc = acc.mul(&jones_raw(c, &cols, k));
            }
            acc
        }
        LinkFamily::ConnectedSum(children) => {
            let mut acc = CycNumber::one(k);
            for (c, cols) in children.iter().zip(link.child_colors(colors)) {
                acc = acc.mul(&jones_raw(c, &cols, k));
            }
            let q = CycNumber::qint(k, a[0]);
            for _ in 1..children.len() {
                acc = acc.div(&q).expect("[α] ≠ 0 for 1 ≤ α < K");
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalartower::q;

    #[test]
    fn unknot_values() {
        let j = jones_exact(&FramedLink::unknot(0), &[3], 5).unwrap();
        let expect = CycNumber::sin_pi(5, 3).div(&CycNumber::sin_pi(5, 1)).unwrap();
        assert_eq!(j, expect);
        let j1 = jones_exact(&FramedLink::unknot(1), &[3], 5).unwrap();
        assert_eq!(j1, j.mul(&twist(5, 3, 1)));
    }

    #[test]
    fn hopf_and_unlink() {
        let h = FramedLink::hopf_chain(&[0, 0]).unwrap();
        for (a, b) in [(1, 1), (2, 3), (4, 5)] {
            assert_eq!(jones_exact(&h, &[a, b], 7).unwrap(), CycNumber::qint(7, (a * b) as i64));
        }
        let u = FramedLink::disjoint_union(vec![FramedLink::unknot(0), FramedLink::unknot(0)]);
        assert_eq!(
            jones_exact(&u, &[2, 3], 7).unwrap(),
            CycNumber::qint(7, 2).mul(&CycNumber::qint(7, 3))
        );
        assert_eq!(jones_exact(&FramedLink::empty(), &[], 7).unwrap(), CycNumber::from_q(7, q(1)));
    }

    #[test]
    fn torus_knot_degenerations() {
        // T(1, p) is the unknot with framing p
        for p in [1, 2, -3] {
            for f in [0, 2] {
                let t = FramedLink::torus_knot(1, p, f).unwrap();
                for a in 1..5 {
                    assert_eq!(
                        jones_exact(&t, &[a], 7).unwrap(),
                        jones_exact(&FramedLink::unknot(f), &[a], 7).unwrap()
                    );
                }
            }
        }
        // color 1 is trivial
        let t = FramedLink::torus_knot(2, 3, 0).unwrap();
        assert_eq!(jones_exact(&t, &[1], 11).unwrap(), CycNumber::one(11));
    }

    #[test]
    fn trefoil_color_two() {
        // J_2 / [2] = q^{-1} + q^{-3} - q^{-4}, q = e^{2πi/K}
        let t = FramedLink::torus_knot(2, 3, 0).unwrap();
        let j = jones_exact(&t, &[2], 7).unwrap();
        let v = CycNumber::z_pow(7, -8)
            .add(&CycNumber::z_pow(7, -24))
            .sub(&CycNumber::z_pow(7, -32));
        assert_eq!(j, v.mul(&CycNumber::qint(7, 2)));
        let jm = jones_exact(&t.mirror(), &[2], 7).unwrap();
        assert_eq!(j.conj(), jm);
    }

    #[test]
    fn connected_sum_divides_by_qint() {
        let a = FramedLink::unknot(1);
        let b = FramedLink::unknot(2);
        let s = FramedLink::connected_sum(vec![a, b]).unwrap();
        assert_eq!(s.linking(), &[vec![3]]);
        assert_eq!(
            jones_exact(&s, &[4], 11).unwrap(),
            jones_exact(&FramedLink::unknot(3), &[4], 11).unwrap()
        );
    }

    #[test]
    fn colors_are_checked() {
        let u = FramedLink::unknot(0);
        assert_eq!(jones_exact(&u, &[5], 5), Err(Error::ColorOutOfRange { color: 5, k: 5 }));
        assert_eq!(jones_exact(&u, &[1], 9), Err(Error::NotPrime(9)));
    }
}
