use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{FramedLink, LinkFamily};
use crate::powerseries::{ColorPolynomial, ColorSeries, Degrees};
use crate::scalartower::{q, Gaussian, SymbolicScalar, Q};

type Series = ColorSeries<SymbolicScalar>;

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |a, k| a * q(k))
}

fn zero_linking(n: usize) -> Vec<Vec<Q>> {
    vec![vec![Q::zero(); n]; n]
}

/// `s(x^d) = sin(πα^d t)/(πα^d t)` with `x^d` a monomial.
fn sinc(n: usize, order: usize, d: &[u32]) -> Series {
    let mut terms = vec![ColorPolynomial::zero(n); order + 1];
    for k in 0..=order / 2 {
        let c = factorial(2 * k + 1).recip() * q(if k % 2 == 0 { 1 } else { -1 });
        let deg: Degrees = d.iter().map(|&e| e * k as u32).collect();
        terms[2 * k] = ColorPolynomial::monomial(deg, SymbolicScalar::pi_pow(2 * k as i32).scale(&c));
    }
    ColorSeries::from_terms(zero_linking(n), terms)
}

/// `e^{c·t·x^d}`.
fn exp_mono(n: usize, order: usize, c: &SymbolicScalar, d: &[u32]) -> Series {
    let mut terms = Vec::with_capacity(order + 1);
    let mut coef = SymbolicScalar::one();
    for k in 0..=order {
        if k > 0 {
            coef = (&coef * c).scale(&q(k as i64).recip());
        }
        let deg: Degrees = d.iter().map(|&e| e * k as u32).collect();
        terms.push(ColorPolynomial::monomial(deg, coef.clone()));
    }
    ColorSeries::from_terms(zero_linking(n), terms)
}

/// `e^{−(iπ/2)·f·t}`: the constant part of a framing phase after stripping.
fn framing_phase(n: usize, order: usize, f: &Q) -> Series {
    let c = SymbolicScalar::i_pi_pow(1).scale(&(-f / q(2)));
    exp_mono(n, order, &c, &vec![0; n])
}

fn unit(n: usize, j: usize) -> Degrees {
    let mut d = vec![0; n];
    d[j] = 1;
    d
}

fn product(factors: &[Series]) -> Series {
    let mut it = factors.iter();
    let mut acc = it.next().expect("at least one factor").clone();
    for f in it {
        acc = acc.mul(f).expect("same number of variables");
    }
    acc
}

/// `1/K` expansion of `e^{−(iπ/2K)Σ_j l_jj α_j²}·J_α(L;K)/∏_j α_j` up to `K^{−order}`.
pub fn jones_series(link: &FramedLink, order: usize) -> Series {
    ColorSeries::from_terms(link.linking_matrix(), raw_series(link, order).terms().to_vec())
}

fn raw_series(link: &FramedLink, order: usize) -> Series {
    let n = link.ncomp();
    let inv_s1 = || sinc(n, order, &vec![0; n]).inverse().expect("s(1) is invertible");
    match link.family() {
        LinkFamily::Unknot { framing } => {
            product(&[framing_phase(1, order, &q(*framing)), sinc(1, order, &[1]), inv_s1()])
        }
        LinkFamily::HopfChain { framings } => {
            let total: i64 = framings.iter().sum();
            let mut f = vec![framing_phase(n, order, &q(total)), inv_s1()];
            if n == 1 {
                f.push(sinc(1, order, &[1]));
            }
            for j in 0..n.saturating_sub(1) {
                let mut d = unit(n, j);
                d[j + 1] = 1;
                f.push(sinc(n, order, &d));
            }
            for j in 1..n.saturating_sub(1) {
                f.push(sinc(n, order, &unit(n, j)).inverse().expect("constant term 1"));
            }
            product(&f)
        }
        LinkFamily::TorusKnot { m, p, framing } => torus_series(*m, *p, *framing, order),
        LinkFamily::DisjointUnion(children) => {
            let mut acc = ColorSeries::one(Vec::new(), order);
            for c in children {
                acc = acc.disjoint(&raw_series(c, order));
            }
            acc
        }
        LinkFamily::ConnectedSum(children) => {
            let mut factors = Vec::new();
            let mut off = 1;
            for c in children {
                let map: Vec<usize> = (0..c.ncomp()).map(|i| if i == 0 { 0 } else { off + i - 1 }).collect();
                off += c.ncomp() - 1;
                let terms = raw_series(c, order).terms().iter().map(|p| p.embed(n, &map)).collect();
                factors.push(ColorSeries::from_terms(zero_linking(n), terms));
            }
            // divide by [α_0]/α_0 = s(x_0)/s(1) once per extra summand
            let ratio = sinc(n, order, &unit(n, 0)).mul(&inv_s1()).expect("same variables");
            let inv = ratio.inverse().expect("constant term 1");
            for _ in 1..children.len() {
                factors.push(inv.clone());
            }
            product(&factors)
        }
    }
}

/// `Σ_k k^s / α` over `k = −(α−1)/2, …, (α−1)/2`, as polynomials in `x = α²`
/// (zero for odd `s`).
fn central_power_sums(smax: usize) -> Vec<Vec<Q>> {
    // g(u) = (u/2)/sinh(u/2) by inverting Σ (u/2)^{2i}/(2i+1)!
    let mut h = vec![Q::zero(); smax + 1];
    for i in 0..=smax / 2 {
        h[2 * i] = (factorial(2 * i + 1) * Q::from_integer(num_bigint::BigInt::from(4).pow(i as u32))).recip();
    }
    let mut g = vec![Q::zero(); smax + 1];
    g[0] = Q::one();
    for s in 1..=smax {
        let mut acc = Q::zero();
        for j in 1..=s {
            acc += &h[j] * &g[s - j];
        }
        g[s] = -acc;
    }
    (0..=smax)
        .map(|s| {
            if s % 2 == 1 {
                return Vec::new();
            }
            (0..=s / 2)
                .map(|j| {
                    let four_j = Q::from_integer(num_bigint::BigInt::from(4).pow(j as u32));
                    factorial(s) * &g[s - 2 * j] / (four_j * factorial(2 * j + 1))
                })
                .collect()
        })
        .collect()
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[Q], e: usize) -> Vec<Q> {
    (0..e).fold(vec![Q::one()], |acc, _| poly_mul(&acc, a))
}

/// Rosso–Jones sum expanded with the summation index kept symbolic.
fn torus_series(m: i64, p: i64, framing: i64, order: usize) -> Series {
    let sums = central_power_sums(2 * order + 1);
    let mk2k = [Q::zero(), q(1), q(m)];
    let lin = [q(1), q(2 * m)];
    let mut terms = vec![ColorPolynomial::zero(1); order + 1];
    for (n, slot) in terms.iter_mut().enumerate() {
        let mut poly = ColorPolynomial::zero(1);
        for j in 0..=n / 2 {
            let a = n - 2 * j;
            // (2p)^a/a!·(mk²+k)^a · (−1)^j/(2j+1)!·(2mk+1)^{2j+1}
            let c = (0..a).fold(Q::one(), |x, _| x * q(2 * p)) / factorial(a)
                * q(if j % 2 == 0 { 1 } else { -1 })
                / factorial(2 * j + 1);
            let r = poly_mul(&poly_pow(&mk2k, a), &poly_pow(&lin, 2 * j + 1));
            let mut xs: Vec<Q> = Vec::new();
            for (s, rs) in r.iter().enumerate() {
                if rs.is_zero() {
                    continue;
                }
                for (i, ps) in sums[s].iter().enumerate() {
                    if xs.len() <= i {
                        xs.resize(i + 1, Q::zero());
                    }
                    xs[i] += &c * rs * ps;
                }
            }
            // i^a π^n
            let sym = SymbolicScalar::term(n as i32, Gaussian::i_pow(a as i64));
            for (i, v) in xs.into_iter().enumerate() {
                poly.add_term(vec![i as u32], sym.scale(&v));
            }
        }
        *slot = poly;
    }
    let body = ColorSeries::from_terms(zero_linking(1), terms);
    let inv_s1 = sinc(1, order, &[0]).inverse().expect("s(1) is invertible");
    let half_i_pi = SymbolicScalar::i_pi_pow(1).scale(&Q::new(1.into(), 2.into()));
    product(&[
        exp_mono(1, order, &half_i_pi.scale(&q(m * p - framing)), &[0]),
        exp_mono(1, order, &half_i_pi.scale(&q(-m * p)), &[1]),
        inv_s1,
        body,
    ])
}

/// Outcome of a degree-bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundCheck {
    Holds,
    /// First offending monomial, as (power of 1/K, multidegree).
    Violated { n: usize, degrees: Degrees },
    NotApplicable,
}

/// Coefficient table `(m⃗, n) ↦ D` of `x^{m⃗} K^{−n}`.
pub fn extract_d(s: &Series) -> BTreeMap<(Degrees, usize), SymbolicScalar> {
    let mut out = BTreeMap::new();
    for (n, p) in s.terms().iter().enumerate() {
        for (d, c) in p.iter() {
            out.insert((d.clone(), n), c.clone());
        }
    }
    out
}

/// Per-component bound `deg_{x_j} ≤ n/2` in the `K^{−n}` coefficient.
pub fn check_mm_bound(s: &Series) -> BoundCheck {
    for (n, p) in s.terms().iter().enumerate() {
        for (d, _) in p.iter() {
            if d.iter().any(|&m| 2 * m as usize > n) {
                return BoundCheck::Violated { n, degrees: d.clone() };
            }
        }
    }
    BoundCheck::Holds
}

/// Total-degree bound `Σ_j m_j ≤ 3n/4` for algebraically split links.
pub fn check_asl_bound(s: &Series) -> BoundCheck {
    let l = s.linking();
    let split = (0..l.len()).all(|i| (0..l.len()).all(|j| i == j || l[i][j].is_zero()));
    if !split {
        return BoundCheck::NotApplicable;
    }
    for (n, p) in s.terms().iter().enumerate() {
        for (d, _) in p.iter() {
            if 4 * d.iter().sum::<u32>() as usize > 3 * n {
                return BoundCheck::Violated { n, degrees: d.clone() };
            }
        }
    }
    BoundCheck::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalartower::q2;

    fn sym(x: Q, pi: i32) -> SymbolicScalar {
        SymbolicScalar::pi_pow(pi).scale(&x)
    }

    #[test]
    fn unknot_to_order_two() {
        let s = jones_series(&FramedLink::unknot(0), 2);
        assert_eq!(s.term(1).len(), 0);
        let t2 = s.term(2);
        assert_eq!(t2.get(&[0]), Some(&sym(q2(1, 6), 2)));
        assert_eq!(t2.get(&[1]), Some(&sym(q2(-1, 6), 2)));
    }

    #[test]
    fn power_sums_match_direct_sums() {
        let ps = central_power_sums(8);
        for alpha in 1..8i64 {
            for s in (0..=8).step_by(2) {
                // Σ_k k^s with k = (h)/2, h = −(α−1), …, α−1
                let mut direct = Q::zero();
                let mut h = -(alpha - 1);
                while h < alpha {
                    direct += (0..s).fold(Q::one(), |a, _| a * q2(h, 2));
                    h += 2;
                }
                let x = q(alpha * alpha);
                let mut via = Q::zero();
                let mut xp = Q::one();
                for c in &ps[s] {
                    via += c * &xp;
                    xp *= &x;
                }
                assert_eq!(via * q(alpha), direct, "alpha={alpha} s={s}");
            }
        }
    }

    #[test]
    fn torus_with_m_one_is_unknot() {
        for p in [1, -2, 3] {
            let t = jones_series(&FramedLink::torus_knot(1, p, 2).unwrap(), 6);
            let u = jones_series(&FramedLink::unknot(2), 6);
            assert_eq!(t, u);
        }
    }

    #[test]
    fn bounds_on_families() {
        let links = [
            FramedLink::unknot(3),
            FramedLink::hopf_chain(&[1, -2, 3]).unwrap(),
            FramedLink::torus_knot(2, 3, -1).unwrap(),
            FramedLink::torus_knot(3, -5, 0).unwrap(),
        ];
        for l in &links {
            assert_eq!(check_mm_bound(&jones_series(l, 8)), BoundCheck::Holds, "{l:?}");
        }
        assert_eq!(check_asl_bound(&jones_series(&links[1], 4)), BoundCheck::NotApplicable);
        let u = FramedLink::disjoint_union(vec![FramedLink::unknot(1), FramedLink::unknot(-2)]);
        assert_eq!(check_asl_bound(&jones_series(&u, 8)), BoundCheck::Holds);
    }

    #[test]
    fn series_carries_link_data() {
        let l = FramedLink::hopf_chain(&[2, 3]).unwrap();
        let s = jones_series(&l, 3);
        assert_eq!(s.ncomp(), 2);
        assert_eq!(s.linking()[0][1], q(1));
        assert_eq!(s.linking()[1][1], q(3));
        assert_eq!(extract_d(&s).get(&(vec![0, 0], 0)), Some(&SymbolicScalar::one()));
    }
}
