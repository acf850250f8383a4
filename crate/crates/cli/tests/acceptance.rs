//! Acceptance criteria 1–10. Each prints one `PASS`/`FAIL` line; the test
//! fails if any criterion does.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use qtop::families;
use qtop::suites::{hopf_reconstruction, odd_primes, single_component_trees};
use qtop_core::cyclotomic::{gauss_sum_closed, gauss_sum_direct};
use qtop_core::jones::{check_asl_bound, check_mm_bound, jones_series, BoundCheck, FramedLink};
use qtop_core::orbit::kirillov_check;
use qtop_core::scalartower::Q;
use qtop_core::stationaryphase::{kirby_integral_identity, meridian_sum_identity, poisson_identity, PivotStrategy};
use qtop_core::surgery::{alternating_sum, compute_invariants, compute_invariants_with, PipelineOptions};
use qtop_core::wrt::ohtsuki_congruence_check;

const GAUSS_LIMIT: Duration = Duration::from_secs(30);
const KIRBY_LIMIT: Duration = Duration::from_secs(60);
const PRESENTATION_LIMIT: Duration = Duration::from_secs(300);
const OHTSUKI_LIMIT: Duration = Duration::from_secs(600);
/// Order up to which Melvin–Morton degrees are checked.
const MM_ORDER: usize = 8;
const KIRBY_INTEGRAL_ORDER: usize = 6;
const ORBIT_ORDER: usize = 4;
const KIRILLOV_ORDER: usize = 6;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let t = Instant::now();
    let v = f();
    let el = t.elapsed();
    let ok = v.ok && el <= limit;
    verdict(ok, format!("{}; {:.1} s (limit {} s)", v.detail, el.as_secs_f64(), limit.as_secs()))
}

fn c1_gauss() -> Verdict {
    timed(GAUSS_LIMIT, || {
        let pq = [-3i64, -2, -1, 1, 2, 3];
        let mut jobs = Vec::new();
        for k in odd_primes(23) {
            for p in pq {
                for qq in pq {
                    if p.rem_euclid(k as i64) != 0 && qq.rem_euclid(k as i64) != 0 {
                        jobs.extend((0..k as i64).map(|n| (k, p, qq, n)));
                    }
                }
            }
        }
        let bad = jobs
            .par_iter()
            .filter(|&&(k, p, qq, n)| gauss_sum_direct(p, qq, n, k).ok() != gauss_sum_closed(p, qq, n, k).ok())
            .count();
        verdict(bad == 0, format!("{} cases, {bad} mismatches", jobs.len()))
    })
}

fn c2_kirby() -> Verdict {
    timed(KIRBY_LIMIT, || {
        let ks = [5u32, 7, 11, 13];
        let jobs: Vec<(u32, u32)> = ks.iter().flat_map(|&k| (1..k).map(move |a| (k, a))).collect();
        let sum_bad = jobs.par_iter().filter(|&&(k, a)| !meridian_sum_identity(a, k).is_ok_and(|c| c.holds())).count();
        let int_bad = (1..=7u32)
            .into_par_iter()
            .filter(|&a| !kirby_integral_identity(a, KIRBY_INTEGRAL_ORDER).is_ok_and(|c| c.holds()))
            .count();
        let poi_bad = ks.iter().filter(|&&k| !poisson_identity(k).is_ok_and(|c| c.holds())).count();
        verdict(
            sum_bad + int_bad + poi_bad == 0,
            format!(
                "meridian sums {}/{}, integral to order {KIRBY_INTEGRAL_ORDER} {}/7, Gaussian sums {}/4",
                jobs.len() - sum_bad,
                jobs.len(),
                7 - int_bad,
                4 - poi_bad
            ),
        )
    })
}

fn c3_bounds() -> Verdict {
    let grid = families::grid();
    let mm_bad: Vec<String> = grid
        .par_iter()
        .filter(|(_, l)| check_mm_bound(&jones_series(l, MM_ORDER)) != BoundCheck::Holds)
        .map(|(n, _)| n.clone())
        .collect();
    let splits = families::split_unions();
    let asl_bad: Vec<String> = splits
        .par_iter()
        .filter(|(_, l)| check_asl_bound(&jones_series(l, MM_ORDER)) != BoundCheck::Holds)
        .map(|(n, _)| n.clone())
        .collect();
    verdict(
        mm_bad.is_empty() && asl_bad.is_empty(),
        format!(
            "per-component bound on {}/{} families, total bound on {}/{} split unions, order {MM_ORDER}{}",
            grid.len() - mm_bad.len(),
            grid.len(),
            splits.len() - asl_bad.len(),
            splits.len(),
            if mm_bad.is_empty() && asl_bad.is_empty() { String::new() } else { format!("; bad: {mm_bad:?} {asl_bad:?}") }
        ),
    )
}

fn c4_orbit() -> Verdict {
    let hopf = hopf_reconstruction(ORBIT_ORDER).unwrap_or(false);
    let kir: Vec<bool> = (1..=3i64).map(|a| kirillov_check(&q(a, 1), KIRILLOV_ORDER).is_ok()).collect();
    let trees = single_component_trees();
    let collapsed = trees.iter().filter(|(_, t)| t.to_polynomial().is_zero()).count();
    verdict(
        hopf && kir.iter().all(|&b| b) && collapsed == trees.len(),
        format!(
            "Hopf reconstruction to order {ORBIT_ORDER}: {hopf}; Kirillov to order {KIRILLOV_ORDER} for alpha = 1,2,3: {kir:?}; tree collapse {collapsed}/{}",
            trees.len()
        ),
    )
}

/// Taylor coefficients of `log(sin x / x)` from Bernoulli numbers:
/// `Σ_{n≥1} (−1)^n 2^{2n−1} B_{2n} x^{2n} / (n (2n)!)`.
fn log_sinc_oracle(max: usize) -> Vec<Q> {
    // B_0..B_max by the standard recurrence Σ_{j<m+1} C(m+1, j) B_j = 0
    let mut b = vec![q(1, 1)];
    for m in 1..=max {
        let mut s = q(0, 1);
        let mut c = BigInt::from(1);
        for (j, bj) in b.iter().enumerate() {
            s += Q::from_integer(c.clone()) * bj;
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / q(m as i64 + 1, 1));
    }
    let mut out = vec![q(0, 1); max + 1];
    let mut fact = BigInt::from(1);
    for k in 1..=max {
        fact *= BigInt::from(k);
        if k % 2 == 0 {
            let n = (k / 2) as i64;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let num = Q::from_integer(BigInt::from(sign) * BigInt::from(2).pow(2 * n as u32 - 1)) * &b[k];
            out[k] = num / (Q::from_integer(fact.clone()) * q(n, 1));
        }
    }
    out
}

fn c5_baseline() -> Verdict {
    // log Δ(S³) = log((K/π) sin(π/K)) has t^n coefficient c_n π^n; S_n = c_n / i^n
    let oracle = log_sinc_oracle(4);
    let want: Vec<Q> = (1..=4).map(|n| if n % 4 == 2 { -oracle[n].clone() } else { oracle[n].clone() }).collect();
    let got = compute_invariants(&FramedLink::empty(), 4).map(|r| r.s);
    let literal = vec![q(0, 1), q(1, 6), q(0, 1), q(-1, 180)];
    let base_ok = got.as_ref().is_ok_and(|s| *s == want && *s == literal);
    // rationality is asserted inside the pipeline: any π or i left over is an error
    let inputs: Vec<FramedLink> = families::grid()
        .into_iter()
        .map(|(_, l)| l)
        .filter(|l| l.ncomp() <= 3)
        .filter(|l| !qtop_core::linalg::det(&l.linking_matrix()).is_zero())
        .collect();
    let failures: Vec<String> = inputs
        .par_iter()
        .filter_map(|l| compute_invariants(l, 2).err().map(|e| format!("{l:?}: {e}")))
        .collect();
    verdict(
        base_ok && failures.is_empty(),
        format!(
            "S(S^3) = {:?}; rational S_1, S_2 on {}/{} inputs",
            got.map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap_or_default(),
            inputs.len() - failures.len(),
            inputs.len()
        ),
    )
}

fn c6_presentations() -> Verdict {
    timed(PRESENTATION_LIMIT, || {
        let blow: Vec<(i64, bool)> = (3..=8i64)
            .into_par_iter()
            .map(|p| {
                let a = compute_invariants(&FramedLink::unknot(p - 1), 3).map(|r| r.s);
                let b = compute_invariants(&FramedLink::hopf_chain(&[p, 1]).unwrap(), 3).map(|r| r.s);
                (p, a.is_ok() && a == b)
            })
            .collect();
        let groups: Vec<families::Group> = families::registry()
            .unwrap_or_default()
            .into_iter()
            .filter(|g| !g.name.starts_with("blow-down"))
            .collect();
        let moves: Vec<(String, bool)> = groups
            .par_iter()
            .map(|g| {
                let s: Vec<_> = g
                    .members
                    .iter()
                    .map(|m| m.build().ok().and_then(|l| compute_invariants(&l, 2).ok()).map(|r| r.s))
                    .collect();
                (g.name.clone(), s[0].is_some() && s.iter().all(|x| *x == s[0]))
            })
            .collect();
        let nb = blow.iter().filter(|(_, ok)| *ok).count();
        let nm = moves.iter().filter(|(_, ok)| *ok).count();
        let bad: Vec<String> = moves.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
        verdict(
            nb == blow.len() && nm == moves.len(),
            format!(
                "unknot(p-1) = chain(p,1) on S_1..S_3 for {nb}/{} p; move groups agree on S_1, S_2 {nm}/{}{}",
                blow.len(),
                moves.len(),
                if bad.is_empty() { String::new() } else { format!(" (bad: {bad:?})") }
            ),
        )
    })
}

fn c7_ohtsuki() -> Verdict {
    timed(OHTSUKI_LIMIT, || {
        let mut jobs = Vec::new();
        for (p, name) in [(2i64, "L(2,1)"), (3, "L(3,1)"), (5, "L(5,1)")] {
            for k in [5u32, 7, 11, 13] {
                if p % k as i64 != 0 {
                    jobs.push((name, p, k));
                }
            }
        }
        let res: Vec<(String, bool, usize)> = jobs
            .par_iter()
            .map(|&(name, p, k)| {
                let r = ohtsuki_congruence_check(&FramedLink::unknot(p), k, 2);
                let nmax = 2.min((k as usize - 3) / 2);
                match r {
                    Ok(rep) => {
                        let integral = rep.zprime.a.len() >= nmax + 1;
                        (format!("{name} K={k}"), integral && rep.holds() && rep.rows.len() == nmax + 1, rep.rows.len())
                    }
                    Err(e) => (format!("{name} K={k}: {e}"), false, 0),
                }
            })
            .collect();
        let good = res.iter().filter(|r| r.1).count();
        let rows: usize = res.iter().map(|r| r.2).sum();
        let bad: Vec<&String> = res.iter().filter(|r| !r.1).map(|r| &r.0).collect();
        verdict(
            good == res.len(),
            format!(
                "{good}/{} (manifold, K) pairs integral with congruences holding, {rows} rows{}",
                res.len(),
                if bad.is_empty() { String::new() } else { format!(" (bad: {bad:?})") }
            ),
        )
    })
}

/// `((x))`: the sawtooth function.
fn sawtooth(x: &Q) -> Q {
    if x.is_integer() {
        q(0, 1)
    } else {
        x - x.floor() - q(1, 2)
    }
}

/// Dedekind sum `s(h, k) = Σ_{i=1}^{k−1} ((i/k))((hi/k))`.
fn dedekind(h: i64, k: i64) -> Q {
    (1..k).map(|i| sawtooth(&q(i, k)) * sawtooth(&q(h * i, k))).fold(q(0, 1), |a, b| a + b)
}

/// Casson–Walker invariant of `L(p, q)` in Walker's normalization.
fn casson_walker(p: i64, qq: i64) -> Q {
    -dedekind(qq, p) / q(2, 1)
}

fn c8_casson_walker() -> Verdict {
    let data: Vec<(i64, Option<Q>, Q)> = (2..=7i64)
        .map(|p| (p, compute_invariants(&FramedLink::unknot(p), 1).ok().map(|r| r.s[0].clone()), casson_walker(p, 1)))
        .collect();
    let all = data.iter().all(|d| d.1.is_some());
    let mut constant = all;
    for a in &data {
        for b in &data {
            if let (Some(sa), Some(sb)) = (&a.1, &b.1) {
                constant &= sa * &b.2 == sb * &a.2;
            }
        }
    }
    // the common ratio, from any p with λ ≠ 0
    let ratio = data.iter().find(|d| !d.2.is_zero()).and_then(|d| d.1.as_ref().map(|s| s / &d.2));
    let nontrivial = ratio.as_ref().is_some_and(|r| !r.is_zero());
    verdict(
        constant && nontrivial,
        format!(
            "S_1(L(p,1)) / lambda_CW(L(p,1)) constant for p = 2..7, ratio {}",
            ratio.map(|r| r.to_string()).unwrap_or_else(|| "undefined".into())
        ),
    )
}

fn c9_epsilon() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2i64, 3] {
        let link = FramedLink::hopf_chain(&[0, p]).unwrap();
        let eps = PipelineOptions { strategy: PivotStrategy::Epsilon, ..Default::default() };
        let re = PipelineOptions { strategy: PivotStrategy::Reorder, ..Default::default() };
        let a = compute_invariants_with(&link, 2, &eps);
        let b = compute_invariants_with(&link, 2, &re);
        let same = matches!((&a, &b), (Ok(x), Ok(y)) if x.s == y.s && x.delta == y.delta);
        ok &= same;
        parts.push(match a {
            Ok(r) => format!("p={p}: eps limit finite, S = {:?}, equal: {same}", r.s.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            Err(e) => format!("p={p}: {e}"),
        });
    }
    verdict(ok, parts.join("; "))
}

fn c10_alternating() -> Verdict {
    let links = families::four_component_splits();
    let res: Vec<(String, bool)> = links
        .par_iter()
        .map(|(n, l)| (n.clone(), alternating_sum(l, 1).is_ok_and(|v| v.is_zero())))
        .collect();
    let good = res.iter().filter(|r| r.1).count();
    verdict(good == res.len(), format!("alternating sum of S_1 vanishes on {good}/{} four-component split unions", res.len()))
}

#[test]
fn acceptance() {
    let criteria: [(u8, &str, fn() -> Verdict); 10] = [
        (1, "Gauss sums, direct against closed form", c1_gauss),
        (2, "meridian Kirby identities", c2_kirby),
        (3, "Melvin-Morton and split-link degree bounds", c3_bounds),
        (4, "orbit-integral reconstruction", c4_orbit),
        (5, "S^3 baseline and rationality", c5_baseline),
        (6, "presentation independence", c6_presentations),
        (7, "Ohtsuki congruences", c7_ohtsuki),
        (8, "Casson-Walker proportionality", c8_casson_walker),
        (9, "eps-regularization consistency", c9_epsilon),
        (10, "finite-type vanishing", c10_alternating),
    ];
    let mut failed = Vec::new();
    for (n, name, f) in criteria {
        let v = f();
        // written to the handle directly so the lines survive output capture
        let line = format!("criterion {n:>2} {} {name}: {}\n", if v.ok { "PASS" } else { "FAIL" }, v.detail);
        let mut out = std::io::stdout().lock();
        out.write_all(line.as_bytes()).and_then(|_| out.flush()).unwrap();
        if !v.ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
