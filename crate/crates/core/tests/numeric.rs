mod common;

use common::{Num, C, P};
use qtop_core::cyclotomic::CycNumber;
use qtop_core::jones::{jones_exact, jones_series, FramedLink};
use qtop_core::scalartower::{q, q2, Q};
use qtop_core::stationaryphase::{
    gauss_moment_shifted, half_line_sine_moment, half_line_sine_moment_kernel, GaussMoment,
};

const RM: astro_float::RoundingMode = astro_float::RoundingMode::ToEven;

fn moment_value(n: &mut Num, g: &GaussMoment, k: u32) -> C {
    let s = n.kseries(g.series.prefactor(), g.series.coeffs(), k);
    s.mul(&n.prefactor(&g.prefactor, k))
}

#[test]
fn cyclotomic_embedding() {
    let mut n = Num::new();
    for k in [5u32, 7, 11, 13, 23] {
        let kk = n.int(k as i64);
        for m in 1..k as i64 {
            let th = n.int(m).mul(&n.pi, P, RM).div(&kk, P, RM);
            let s = n.sin(&th);
            let got = n.cyc(&CycNumber::sin_pi(k, m));
            assert!(got.close(&n.c(s.clone(), n.int(0)), 1e-30), "sin K={k} n={m}");
            let s1 = n.sin(&n.pi.div(&kk, P, RM));
            let want = n.c(s.div(&s1, P, RM), n.int(0));
            assert!(n.cyc(&CycNumber::qint(k, m)).close(&want, 1e-30), "[n] K={k} n={m}");
        }
        let sk = n.sqrt(&kk);
        assert!(n.cyc(&CycNumber::sqrt_k(k)).close(&n.c(sk, n.int(0)), 1e-30), "sqrt K={k}");
        let s2 = n.sqrt(&n.int(2));
        assert!(n.cyc(&CycNumber::sqrt2(k)).close(&n.c(s2, n.int(0)), 1e-30));
        assert!(n.cyc(&CycNumber::i(k)).close(&n.c(n.int(0), n.int(1)), 1e-30));

        // Σ_x e^{2πi x²/K}, summed in floating point
        let mut g = n.zero();
        for x in 0..k as i64 {
            g = g.add(&n.cis_pi(&q2(2 * x * x, k as i64)));
        }
        assert!(n.cyc(&CycNumber::gauss_sum(k)).close(&g, 1e-30), "gauss K={k}");

        // field arithmetic commutes with the embedding
        let a = CycNumber::qint(k, 2).add(&CycNumber::z_pow(k, 3));
        let b = CycNumber::half_twist(k, 5).sub(&CycNumber::from_q(k, q2(1, 3)));
        let (na, nb) = (n.cyc(&a), n.cyc(&b));
        assert!(n.cyc(&a.mul(&b)).close(&na.mul(&nb), 1e-30));
        assert!(n.cyc(&a.div(&b).unwrap()).close(&na.div(&nb), 1e-30));
        assert!(n.cyc(&a.conj()).close(&na.conj(), 1e-30));
    }
}

/// `∫_0^∞ a^{2m+1} sin(πa) e^{iπK l a²/2} da` by rotating the contour onto
/// the ray where the Gaussian decays and applying the trapezoid rule on the
/// whole line (the rotated integrand is even and entire).
fn half_line_quadrature(n: &mut Num, m: u32, l: i64, k: u32) -> C {
    let sgn = l.signum();
    let r2 = n.sqrt(&n.int(2));
    let omega = n.c(n.int(1).div(&r2, P, RM), n.int(sgn).div(&r2, P, RM));
    let decay = n.pi.mul(&n.int(k as i64 * l.abs()), P, RM).div(&n.int(2), P, RM);
    let steps = 400i64;
    let h = n.int(3).div(&n.int(steps), P, RM);
    let mut acc = n.zero();
    for j in 1..=steps {
        let r = n.int(j).mul(&h, P, RM);
        // sin(πωr) with πωr = x + iy
        let x = n.pi.mul(&r, P, RM).div(&r2, P, RM);
        let y = x.mul(&n.int(sgn), P, RM);
        let (sx, cx, shy, chy) = (n.sin(&x), n.cos(&x), n.sinh(&y), n.cosh(&y));
        let sine = n.c(sx.mul(&chy, P, RM), cx.mul(&shy, P, RM));
        let g = n.exp(&decay.mul(&r.mul(&r, P, RM), P, RM).neg());
        let w = common::pow_i(&r, 2 * m as i32 + 1).mul(&g, P, RM);
        acc = acc.add(&sine.scale(&w));
    }
    // the r = 0 node vanishes; both halves of the line contribute equally
    let mut om = n.one();
    for _ in 0..2 * m + 2 {
        om = om.mul(&omega);
    }
    acc.scale(&h).mul(&om)
}

#[test]
fn half_line_moment_against_quadrature() {
    let mut n = Num::new();
    let k = 40;
    for (m, l) in [(0u32, 1i64), (0, 2), (0, -1), (1, 1), (2, -3)] {
        let want = half_line_quadrature(&mut n, m, l, k);
        let a = half_line_sine_moment(m, &q(l), 40).unwrap();
        let b = half_line_sine_moment_kernel(m, &q(l), 40).unwrap();
        let (va, vb) = (moment_value(&mut n, &a, k), moment_value(&mut n, &b, k));
        assert!(va.close(&want, 1e-20), "m={m} l={l}: off by {:e}", va.dist(&want));
        assert!(vb.close(&want, 1e-20), "kernel m={m} l={l}: off by {:e}", vb.dist(&want));
    }
}

#[test]
fn fresnel_and_shifted_moments() {
    // ∫_ℝ a^k e^{iπK l a²/2 + iπ s a} da: rotate and use the trapezoid rule
    let mut n = Num::new();
    let k = 40u32;
    for (pow, l, s) in [(0u32, q(1), q(0)), (2, q(3), q(0)), (1, q(1), q(1)), (3, q(-2), q2(1, 2))] {
        let got = moment_value(&mut n, &gauss_moment_shifted(pow, &l, &s, 40).unwrap(), k);
        let sgn: i64 = if l > q(0) { 1 } else { -1 };
        let r2 = n.sqrt(&n.int(2));
        let omega = n.c(n.int(1).div(&r2, P, RM), n.int(sgn).div(&r2, P, RM));
        let lv = n.q(&l).abs();
        let decay = n.pi.mul(&lv, P, RM).mul(&n.int(k as i64), P, RM).div(&n.int(2), P, RM);
        let sv = n.q(&s);
        let steps = 400i64;
        let h = n.int(3).div(&n.int(steps), P, RM);
        let mut acc = n.zero();
        for j in -steps..=steps {
            let r = n.int(j).mul(&h, P, RM);
            // a = ωr: a^pow · e^{iπ s ω r}, Gaussian factor real on this ray
            let mut apow = n.one();
            let a = omega.scale(&r);
            for _ in 0..pow {
                apow = apow.mul(&a);
            }
            let arg = a.scale(&n.pi.mul(&sv, P, RM));
            // e^{i·arg} with arg complex
            let e = n.exp(&arg.im.neg());
            let ph = n.cis(&arg.re).scale(&e);
            let g = n.exp(&decay.mul(&r.mul(&r, P, RM), P, RM).neg());
            acc = acc.add(&apow.mul(&ph).scale(&g));
        }
        let want = acc.scale(&h).mul(&omega);
        assert!(got.close(&want, 1e-20), "k={pow} l={l} s={s}: off by {:e}", got.dist(&want));
    }
}

fn series_value(n: &mut Num, link: &FramedLink, order: usize, colors: &[u32], k: u32) -> C {
    let s = jones_series(link, order);
    let t = n.int(1).div(&n.int(k as i64), P, RM);
    let mut acc = n.zero();
    for (deg, poly) in s.terms().iter().enumerate() {
        for (d, c) in poly.iter() {
            let mut w = common::pow_i(&t, deg as i32);
            for (j, &e) in d.iter().enumerate() {
                let x = n.int((colors[j] * colors[j]) as i64);
                w = w.mul(&common::pow_i(&x, e as i32), P, RM);
            }
            acc = acc.add(&n.symbolic(c).scale(&w));
        }
    }
    acc
}

fn normalized_exact(n: &mut Num, link: &FramedLink, colors: &[u32], k: u32) -> C {
    let j = jones_exact(link, colors, k).unwrap();
    let l = link.linking();
    let mut phase = Q::from_integer(0.into());
    let mut denom = 1i64;
    for (i, &a) in colors.iter().enumerate() {
        phase -= q2(l[i][i] * (a * a) as i64, 2 * k as i64);
        denom *= a as i64;
    }
    let ph = n.cis_pi(&phase);
    n.cyc(&j).mul(&ph).scale(&n.int(1).div(&n.int(denom), P, RM))
}

#[test]
fn series_against_exact_values() {
    let mut n = Num::new();
    let n0 = 4usize;
    let links: Vec<(FramedLink, Vec<Vec<u32>>)> = vec![
        (FramedLink::unknot(3), vec![vec![1], vec![2], vec![3]]),
        (FramedLink::hopf_chain(&[2, -1]).unwrap(), vec![vec![1, 2], vec![2, 3]]),
        (FramedLink::hopf_chain(&[1, 0, 2]).unwrap(), vec![vec![2, 1, 2]]),
        (FramedLink::torus_knot(2, 3, -1).unwrap(), vec![vec![1], vec![2], vec![3]]),
        (
            FramedLink::disjoint_union(vec![FramedLink::unknot(2), FramedLink::unknot(-1)]),
            vec![vec![2, 3]],
        ),
        (
            FramedLink::connected_sum(vec![FramedLink::torus_knot(2, 3, 1).unwrap(), FramedLink::unknot(1)])
                .unwrap(),
            vec![vec![2]],
        ),
    ];
    for (link, color_sets) in &links {
        for colors in color_sets {
            // scaled error err·K^{n0+1}: bounded and stable between the two K
            let mut scaled = Vec::new();
            for k in [53u32, 101] {
                let want = normalized_exact(&mut n, link, colors, k);
                let got = series_value(&mut n, link, n0, colors, k);
                let c = got.dist(&want) * (k as f64).powi(n0 as i32 + 1);
                assert!(c <= 1e8, "{link:?} {colors:?} K={k}: constant {c:e}");
                scaled.push(c);
            }
            let r = scaled[1] / scaled[0];
            assert!((0.5..2.0).contains(&r), "{link:?} {colors:?}: {scaled:?}");
        }
    }
}
