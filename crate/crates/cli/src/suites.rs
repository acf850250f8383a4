//! Verification sweeps. Cases run in parallel and are reported sorted by key.

use rayon::prelude::*;
use serde::Serialize;

use qtop_core::cyclotomic::{check_k, gauss_sum_closed, gauss_sum_direct, is_odd_prime, DEFAULT_K_BOUND};
use qtop_core::jones::{check_asl_bound, check_mm_bound, fusion_identities_check, jones_series, BoundCheck, FramedLink};
use qtop_core::orbit::{kirillov_check, orbit_integral, InvariantPolynomial, Tree, TreeMonomial};
use qtop_core::powerseries::{sinc_series, ColorSeries};
use qtop_core::scalartower::{SymbolicScalar, Q};
use qtop_core::stationaryphase::{kirby_integral_identity, meridian_sum_identity, poisson_identity};
use qtop_core::surgery::compute_invariants;
use qtop_core::wrt::ohtsuki_congruence_check_bounded;

use crate::error::CliError;
use crate::families;
use crate::render::{csv, to_json, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Gauss,
    KirbySum,
    KirbyIntegral,
    Poisson,
    Fusion,
    Orbit,
    MmBounds,
    Ohtsuki,
    Presentations,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::KirbySum => "kirby-sum",
            Suite::KirbyIntegral => "kirby-integral",
            Suite::Poisson => "poisson",
            Suite::Fusion => "fusion",
            Suite::Orbit => "orbit",
            Suite::MmBounds => "mm-bounds",
            Suite::Ohtsuki => "ohtsuki",
            Suite::Presentations => "presentations",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub kmax: Option<u32>,
    pub ks: Vec<u32>,
    pub order: Option<usize>,
    pub kbound: Option<u32>,
}

impl SuiteOptions {
    fn bound(&self) -> u32 {
        self.kbound.unwrap_or(DEFAULT_K_BOUND)
    }
    fn ks(&self) -> Result<Vec<u32>, CliError> {
        let ks = if self.ks.is_empty() { vec![5, 7, 11, 13] } else { self.ks.clone() };
        for &k in &ks {
            check_k(k, self.bound())?;
        }
        Ok(ks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub case: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: usize,
    pub total: usize,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => to_json(self),
            Format::Csv => {
                let rows: Vec<Vec<String>> = self
                    .cases
                    .iter()
                    .map(|c| vec![self.suite.clone(), c.case.clone(), c.ok.to_string(), c.detail.clone()])
                    .collect();
                csv(&["suite", "case", "ok", "detail"], &rows)
            }
            Format::Text => {
                let mut out = String::new();
                for c in &self.cases {
                    let v = if c.ok { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        out.push_str(&format!("{v} {}\n", c.case));
                    } else {
                        out.push_str(&format!("{v} {}  {}\n", c.case, c.detail));
                    }
                }
                out.push_str(&format!("{}: {}/{} passed\n", self.suite, self.passed, self.total));
                out
            }
        }
    }
}

fn case(key: String, r: Result<(bool, String), CliError>) -> Case {
    match r {
        Ok((ok, detail)) => Case { case: key, ok, detail },
        Err(e) => Case { case: key, ok: false, detail: e.to_string() },
    }
}

fn verdict(ok: bool) -> Result<(bool, String), CliError> {
    Ok((ok, String::new()))
}

fn finish(suite: Suite, mut cases: Vec<Case>) -> Report {
    cases.sort_by(|a, b| a.case.cmp(&b.case));
    let passed = cases.iter().filter(|c| c.ok).count();
    Report { suite: suite.name().into(), passed, total: cases.len(), cases }
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> Result<Report, CliError> {
    let cases = match suite {
        Suite::Gauss => gauss(opts)?,
        Suite::KirbySum => kirby_sum(opts)?,
        Suite::KirbyIntegral => kirby_integral(opts),
        Suite::Poisson => poisson(opts)?,
        Suite::Fusion => fusion(opts)?,
        Suite::Orbit => orbit(opts),
        Suite::MmBounds => mm_bounds(opts),
        Suite::Ohtsuki => ohtsuki(opts)?,
        Suite::Presentations => presentations(opts)?,
    };
    Ok(finish(suite, cases))
}

/// Odd primes up to `kmax`.
pub fn odd_primes(kmax: u32) -> Vec<u32> {
    (3..=kmax).filter(|&k| is_odd_prime(k as i64)).collect()
}

fn gauss(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    let kmax = opts.kmax.unwrap_or(23);
    let ks = odd_primes(kmax);
    if let Some(&k) = ks.last() {
        check_k(k, opts.bound())?;
    }
    let pq = [-3i64, -2, -1, 1, 2, 3];
    let mut jobs = Vec::new();
    for &k in &ks {
        for &p in &pq {
            for &q in &pq {
                if p.rem_euclid(k as i64) == 0 || q.rem_euclid(k as i64) == 0 {
                    continue;
                }
                for n in 0..k as i64 {
                    jobs.push((k, p, q, n));
                }
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(k, p, q, n)| {
            let key = format!("K={k:02} p={p:+} q={q:+} n={n:02}");
            let r = (|| {
                let a = gauss_sum_direct(p, q, n, k)?;
                let b = gauss_sum_closed(p, q, n, k)?;
                verdict(a == b)
            })();
            case(key, r)
        })
        .collect())
}

fn kirby_sum(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    let mut jobs = Vec::new();
    for k in opts.ks()? {
        for a in 1..k {
            jobs.push((k, a));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(k, a)| {
            let r = meridian_sum_identity(a, k).map_err(CliError::from).map(|c| (c.holds(), String::new()));
            case(format!("K={k:02} alpha={a:02}"), r)
        })
        .collect())
}

fn kirby_integral(opts: &SuiteOptions) -> Vec<Case> {
    let order = opts.order.unwrap_or(6);
    (1..=7u32)
        .into_par_iter()
        .map(|a| {
            let r = kirby_integral_identity(a, order).map_err(CliError::from).map(|c| (c.holds(), String::new()));
            case(format!("alpha={a:02} order={order}"), r)
        })
        .collect()
}

fn poisson(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    Ok(opts
        .ks()?
        .into_par_iter()
        .map(|k| {
            let r = poisson_identity(k).map_err(CliError::from).map(|c| (c.holds(), String::new()));
            case(format!("K={k:02}"), r)
        })
        .collect())
}

fn fusion(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    let mut jobs = Vec::new();
    for k in opts.ks()? {
        for a1 in 1..k {
            for a2 in a1..k {
                if a1 + a2 <= k {
                    jobs.push((k, a1, a2));
                }
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(k, a1, a2)| {
            let r = fusion_identities_check(a1, a2, k).map_err(CliError::from).map(|rep| {
                let bad: Vec<String> = rep.meridian.iter().filter(|(_, c)| !c.holds()).map(|(b, _)| b.to_string()).collect();
                let detail = if bad.is_empty() { String::new() } else { format!("meridian colors {}", bad.join(",")) };
                (rep.holds(), detail)
            });
            case(format!("K={k:02} alpha1={a1:02} alpha2={a2:02}"), r)
        })
        .collect())
}

/// `L_2 = 2·dot(1,2)` integrated over two orbits, times `(π/K)/sin(π/K)`,
/// against the Hopf link series.
pub fn hopf_reconstruction(n0: usize) -> Result<bool, CliError> {
    let l2 = InvariantPolynomial::dot(0, 1).scale(&SymbolicScalar::from_int(2));
    let s = orbit_integral(&[(2, l2)], &[], 2, n0)?;
    let hopf = jones_series(&FramedLink::hopf_chain(&[0, 0])?, n0);
    let fix = ColorSeries::from_kseries(s.linking().to_vec(), &sinc_series(n0).inverse()?);
    Ok(s.mul(&fix)?.terms() == hopf.terms())
}

/// Tree monomials with every leg on one component.
pub fn single_component_trees() -> Vec<(String, TreeMonomial)> {
    let leg = || Tree::Leg(0);
    vec![
        ("(1x1)".into(), TreeMonomial { root: 0, body: Tree::node(leg(), leg()) }),
        ("((1x1)x1)".into(), TreeMonomial { root: 0, body: Tree::node(Tree::node(leg(), leg()), leg()) }),
        (
            "((1x1)x(1x1))".into(),
            TreeMonomial { root: 0, body: Tree::node(Tree::node(leg(), leg()), Tree::node(leg(), leg())) },
        ),
        (
            "(((1x1)x1)x1)".into(),
            TreeMonomial { root: 0, body: Tree::node(Tree::node(Tree::node(leg(), leg()), leg()), leg()) },
        ),
    ]
}

fn orbit(opts: &SuiteOptions) -> Vec<Case> {
    let n0 = opts.order.unwrap_or(4);
    let mut cases = vec![case(format!("hopf-reconstruction order={n0}"), hopf_reconstruction(n0).map(|b| (b, String::new())))];
    for a in 1..=3i64 {
        let r = match kirillov_check(&Q::from_integer(a.into()), 6) {
            Ok(()) => (true, String::new()),
            Err(n) => (false, format!("first mismatch at t^{n}")),
        };
        cases.push(Case { case: format!("kirillov alpha={a} order=6"), ok: r.0, detail: r.1 });
    }
    for (name, t) in single_component_trees() {
        cases.push(Case { case: format!("tree-collapse {name}"), ok: t.to_polynomial().is_zero(), detail: String::new() });
    }
    cases
}

fn bound_text(b: &BoundCheck) -> String {
    match b {
        BoundCheck::Holds => String::new(),
        BoundCheck::NotApplicable => "not applicable".into(),
        BoundCheck::Violated { n, degrees } => format!("violated at K^-{n}, degrees {degrees:?}"),
    }
}

fn mm_bounds(opts: &SuiteOptions) -> Vec<Case> {
    let order = opts.order.unwrap_or(8);
    let mut jobs: Vec<(String, FramedLink, bool)> =
        families::grid().into_iter().map(|(n, l)| (format!("mm {n}"), l, false)).collect();
    jobs.extend(families::split_unions().into_iter().map(|(n, l)| (format!("asl {n}"), l, true)));
    jobs.into_par_iter()
        .map(|(name, link, asl)| {
            let s = jones_series(&link, order);
            let b = if asl { check_asl_bound(&s) } else { check_mm_bound(&s) };
            Case { case: format!("{name} order={order}"), ok: b == BoundCheck::Holds, detail: bound_text(&b) }
        })
        .collect()
}

/// Lens spaces and a few more rational homology spheres for the congruence
/// sweep.
pub fn ohtsuki_manifolds() -> Vec<(String, FramedLink)> {
    vec![
        ("L(2,1)".into(), FramedLink::unknot(2)),
        ("L(3,1)".into(), FramedLink::unknot(3)),
        ("L(5,1)".into(), FramedLink::unknot(5)),
        ("L(3,-1)".into(), FramedLink::unknot(-3)),
        ("chain[2,3]".into(), FramedLink::hopf_chain(&[2, 3]).expect("chain")),
    ]
}

fn ohtsuki(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    let n0 = opts.order.unwrap_or(2);
    let bound = opts.bound();
    let mut jobs = Vec::new();
    for k in opts.ks()? {
        for (name, link) in ohtsuki_manifolds() {
            let h = qtop_core::linalg::det(&link.linking_matrix());
            if (h.to_integer() % num_bigint::BigInt::from(k)) == num_bigint::BigInt::from(0) {
                continue;
            }
            jobs.push((k, name, link));
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(k, name, link)| {
            let r = ohtsuki_congruence_check_bounded(&link, k, n0, bound).map_err(CliError::from).map(|rep| {
                let rows: Vec<String> =
                    rep.rows.iter().map(|r| format!("n={}:{}/{}", r.n, r.a_mod_k, r.lambda_vee)).collect();
                (rep.holds(), rows.join(" "))
            });
            case(format!("K={k:02} {name}"), r)
        })
        .collect())
}

fn presentations(opts: &SuiteOptions) -> Result<Vec<Case>, CliError> {
    let order = opts.order.unwrap_or(2);
    let groups = families::registry()?;
    let mut jobs = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for (mi, m) in g.members.iter().enumerate() {
            jobs.push((gi, mi, m.build()?));
        }
    }
    let results: Vec<(usize, usize, Result<Vec<Q>, CliError>)> = jobs
        .into_par_iter()
        .map(|(gi, mi, l)| (gi, mi, compute_invariants(&l, order).map(|r| r.s).map_err(CliError::from)))
        .collect();
    let mut cases = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let mine: Vec<_> = results.iter().filter(|(i, _, _)| *i == gi).collect();
        let base = mine.iter().find(|(_, mi, _)| *mi == 0).and_then(|(_, _, r)| r.as_ref().ok());
        for (_, mi, r) in &mine {
            let key = format!("{gi:02} {} #{mi}", g.name);
            let c = match (r, base) {
                (Ok(s), Some(b)) => {
                    let text: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                    Case { case: key, ok: s == b, detail: format!("S = [{}]", text.join(", ")) }
                }
                (Err(e), _) => Case { case: key, ok: false, detail: e.to_string() },
                (Ok(_), None) => Case { case: key, ok: false, detail: "reference member failed".into() },
            };
            cases.push(c);
        }
    }
    Ok(cases)
}
