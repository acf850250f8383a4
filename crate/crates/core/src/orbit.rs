//! Integrals of SU(2)-invariant polynomials over products of spheres
//! `|α⃗_j| = α_j` with measure `d²α⃗_j/(4πα_j)`, tree monomials, and the
//! orbit-integral form of the colored Jones series.
//!
//! Slots are 0-based in the API and printed 1-based.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::powerseries::{ColorPolynomial, ColorSeries};
use crate::scalartower::{q, q2, SymbolicScalar, Q};

/// One contraction factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Dot(usize, usize),
    /// `α⃗_i · (α⃗_j × α⃗_k)`.
    Triple(usize, usize, usize),
    /// `(α⃗_i × α⃗_j) · (α⃗_k × α⃗_l)`.
    CrossDot(usize, usize, usize, usize),
}

impl Factor {
    /// Canonical form and sign; `None` when the factor vanishes identically.
    fn normalize(&self) -> Option<(i8, Factor)> {
        match *self {
            Factor::Dot(i, j) => Some((1, Factor::Dot(i.min(j), i.max(j)))),
            Factor::Triple(i, j, k) => {
                let mut v = [i, j, k];
                let s = sort_sign(&mut v)?;
                Some((s, Factor::Triple(v[0], v[1], v[2])))
            }
            Factor::CrossDot(i, j, k, l) => {
                let mut a = [i, j];
                let mut b = [k, l];
                let s = sort_sign(&mut a)? * sort_sign(&mut b)?;
                if (b[0], b[1]) < (a[0], a[1]) {
                    core::mem::swap(&mut a, &mut b);
                }
                Some((s, Factor::CrossDot(a[0], a[1], b[0], b[1])))
            }
        }
    }

    fn slots(&self) -> Vec<usize> {
        match *self {
            Factor::Dot(i, j) => vec![i, j],
            Factor::Triple(i, j, k) => vec![i, j, k],
            Factor::CrossDot(i, j, k, l) => vec![i, j, k, l],
        }
    }
}

/// Sorts in place, returning the permutation sign, or `None` on a repeat.
fn sort_sign(v: &mut [usize]) -> Option<i8> {
    let mut s = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                s = -s;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(s)
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Dot(i, j) => write!(f, "dot({},{})", i + 1, j + 1),
            Factor::Triple(i, j, k) => write!(f, "triple({},{},{})", i + 1, j + 1, k + 1),
            Factor::CrossDot(i, j, k, l) => {
                write!(f, "crossdot({},{};{},{})", i + 1, j + 1, k + 1, l + 1)
            }
        }
    }
}

/// Sorted product of factors.
pub type Monomial = Vec<Factor>;

/// Formal sum of contraction monomials with `SymbolicScalar` coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct InvariantPolynomial {
    terms: BTreeMap<Monomial, SymbolicScalar>,
}

impl InvariantPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn constant(c: SymbolicScalar) -> Self {
        Self::term(Vec::new(), c)
    }
    /// `c · ∏ factors`, normalized.
    pub fn term(factors: Vec<Factor>, c: SymbolicScalar) -> Self {
        let mut out = Self::zero();
        let mut sign = 1i8;
        let mut mono = Vec::with_capacity(factors.len());
        for f in &factors {
            match f.normalize() {
                Some((s, g)) => {
                    sign *= s;
                    mono.push(g);
                }
                None => return out,
            }
        }
        mono.sort();
        let c = if sign < 0 { -c } else { c };
        if !c.is_zero() {
            out.terms.insert(mono, c);
        }
        out
    }
    pub fn dot(i: usize, j: usize) -> Self {
        Self::term(vec![Factor::Dot(i, j)], SymbolicScalar::one())
    }
    pub fn triple(i: usize, j: usize, k: usize) -> Self {
        Self::term(vec![Factor::Triple(i, j, k)], SymbolicScalar::one())
    }
    pub fn crossdot(i: usize, j: usize, k: usize, l: usize) -> Self {
        Self::term(vec![Factor::CrossDot(i, j, k, l)], SymbolicScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &SymbolicScalar)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    /// One more than the largest slot used.
    pub fn nslots(&self) -> usize {
        self.terms.keys().flatten().flat_map(|f| f.slots()).map(|s| s + 1).max().unwrap_or(0)
    }

    fn add_mono(&mut self, m: Monomial, c: SymbolicScalar) {
        let slot = self.terms.entry(m.clone()).or_insert_with(SymbolicScalar::zero);
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_mono(m.clone(), c.clone());
        }
        out
    }
    pub fn scale(&self, c: &SymbolicScalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_mono(m.clone(), v * c);
        }
        out
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                m.sort();
                out.add_mono(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for x in m {
                write!(f, "·{x}")?;
            }
        }
        Ok(())
    }
}

/// `Σ_{i,j} l_ij dot(i,j)`.
pub fn build_l2(linking: &[Vec<Q>]) -> InvariantPolynomial {
    let mut out = InvariantPolynomial::zero();
    for (i, row) in linking.iter().enumerate() {
        for (j, l) in row.iter().enumerate() {
            out = out.add(&InvariantPolynomial::dot(i, j).scale(&SymbolicScalar::from_q(l.clone())));
        }
    }
    out
}

/// `Σ −4π μ_ijk triple(i,j,k)` over the given triple linking numbers.
pub fn build_l3_milnor(mu: &[((usize, usize, usize), Q)]) -> InvariantPolynomial {
    let mut out = InvariantPolynomial::zero();
    for ((i, j, k), m) in mu {
        let c = SymbolicScalar::pi_pow(1).scale(&(m * q(-4)));
        out = out.add(&InvariantPolynomial::triple(*i, *j, *k).scale(&c));
    }
    out
}

/// `(π²/3) Σ (μ_{abcd} − μ_{cabd}) crossdot(a,b;c,d)` over all ordered
/// quadruples of slots appearing in the table (missing entries are 0).
pub fn build_l4_milnor(mu: &[((usize, usize, usize, usize), Q)]) -> InvariantPolynomial {
    let table: BTreeMap<[usize; 4], Q> = mu.iter().map(|((a, b, c, d), v)| ([*a, *b, *c, *d], v.clone())).collect();
    let mut slots: Vec<usize> = table.keys().flatten().copied().collect();
    slots.sort();
    slots.dedup();
    let get = |k: [usize; 4]| table.get(&k).cloned().unwrap_or_else(Q::zero);
    let pref = SymbolicScalar::pi_pow(2).scale(&q2(1, 3));
    let mut out = InvariantPolynomial::zero();
    for &a in &slots {
        for &b in &slots {
            for &c in &slots {
                for &d in &slots {
                    let w = get([a, b, c, d]) - get([c, a, b, d]);
                    if !w.is_zero() {
                        let t = InvariantPolynomial::crossdot(a, b, c, d).scale(&pref.scale(&w));
                        out = out.add(&t);
                    }
                }
            }
        }
    }
    out
}

/// Rooted binary tree whose leaves carry slot labels; an internal node is
/// the cross product of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leg(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(a: Tree, b: Tree) -> Tree {
        Tree::Node(Box::new(a), Box::new(b))
    }
    fn legs(&self) -> usize {
        match self {
            Tree::Leg(_) => 1,
            Tree::Node(a, b) => a.legs() + b.legs(),
        }
    }
}

/// Trivalent tree with labeled legs: the leg `root` is paired (Killing form)
/// with the vector obtained by contracting `body` through the structure
/// constants at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMonomial {
    pub root: usize,
    pub body: Tree,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    Vec(usize),
    Cross(usize, usize),
}

/// `Σ scalar · atom`.
type VecExpr = BTreeMap<Atom, InvariantPolynomial>;

fn vx_add(e: &mut VecExpr, a: Atom, s: InvariantPolynomial) {
    let v = e.remove(&a).unwrap_or_default().add(&s);
    if !v.is_zero() {
        e.insert(a, v);
    }
}

fn cross_atoms(x: &Atom, y: &Atom) -> VecExpr {
    let one = || InvariantPolynomial::constant(SymbolicScalar::one());
    let neg = || InvariantPolynomial::constant(-SymbolicScalar::one());
    let mut e = VecExpr::new();
    match (x, y) {
        (Atom::Vec(i), Atom::Vec(j)) => {
            if i < j {
                vx_add(&mut e, Atom::Cross(*i, *j), one());
            } else if i > j {
                vx_add(&mut e, Atom::Cross(*j, *i), neg());
            }
        }
        (Atom::Vec(i), Atom::Cross(j, k)) => {
            // a × (b × c) = b (a·c) − c (a·b)
            vx_add(&mut e, Atom::Vec(*j), InvariantPolynomial::dot(*i, *k));
            vx_add(&mut e, Atom::Vec(*k), InvariantPolynomial::dot(*i, *j).scale(&-SymbolicScalar::one()));
        }
        (Atom::Cross(..), Atom::Vec(_)) => {
            for (a, s) in cross_atoms(y, x) {
                vx_add(&mut e, a, s.scale(&-SymbolicScalar::one()));
            }
        }
        (Atom::Cross(i, j), Atom::Cross(k, l)) => {
            // (a×b) × (c×d) = c [a·(b×d)] − d [a·(b×c)]
            vx_add(&mut e, Atom::Vec(*k), InvariantPolynomial::triple(*i, *j, *l));
            vx_add(&mut e, Atom::Vec(*l), InvariantPolynomial::triple(*i, *j, *k).scale(&-SymbolicScalar::one()));
        }
    }
    e
}

fn eval_tree(t: &Tree) -> VecExpr {
    match t {
        Tree::Leg(i) => {
            let mut e = VecExpr::new();
            vx_add(&mut e, Atom::Vec(*i), InvariantPolynomial::constant(SymbolicScalar::one()));
            e
        }
        Tree::Node(a, b) => {
            let (ea, eb) = (eval_tree(a), eval_tree(b));
            let mut e = VecExpr::new();
            for (x, sx) in &ea {
                for (y, sy) in &eb {
                    let s = sx.mul(sy);
                    for (z, sz) in cross_atoms(x, y) {
                        vx_add(&mut e, z, s.mul(&sz));
                    }
                }
            }
            e
        }
    }
}

impl TreeMonomial {
    pub fn legs(&self) -> usize {
        1 + self.body.legs()
    }
    /// The contraction as dot/triple products.
    pub fn to_polynomial(&self) -> InvariantPolynomial {
        let mut out = InvariantPolynomial::zero();
        for (a, s) in eval_tree(&self.body) {
            let f = match a {
                Atom::Vec(i) => InvariantPolynomial::dot(self.root, i),
                Atom::Cross(i, j) => InvariantPolynomial::triple(self.root, i, j),
            };
            out = out.add(&f.mul(&s));
        }
        out
    }
}

/// Polynomial in the Cartesian coordinates `u_{3j+c}` of the slot vectors.
type CoordPoly = BTreeMap<Vec<u16>, Q>;

fn coord_mul(a: &CoordPoly, b: &CoordPoly) -> CoordPoly {
    let mut out = CoordPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(Q::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn coord_of(f: &Factor, nvars: usize) -> CoordPoly {
    let mono = |pairs: &[(usize, usize)], s: i64| {
        let mut e = vec![0u16; 3 * nvars];
        for &(i, c) in pairs {
            e[3 * i + c] += 1;
        }
        (e, q(s))
    };
    let mut out = CoordPoly::new();
    let mut push = |(e, c): (Vec<u16>, Q)| {
        let slot = out.entry(e).or_insert_with(Q::zero);
        *slot += c;
    };
    match *f {
        Factor::Dot(i, j) => {
            for c in 0..3 {
                push(mono(&[(i, c), (j, c)], 1));
            }
        }
        Factor::Triple(i, j, k) => {
            for (a, b, c, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)] {
                push(mono(&[(i, a), (j, b), (k, c)], s));
            }
        }
        Factor::CrossDot(i, j, k, l) => {
            let ac_bd = coord_mul(&coord_of(&Factor::Dot(i, k), nvars), &coord_of(&Factor::Dot(j, l), nvars));
            let ad_bc = coord_mul(&coord_of(&Factor::Dot(i, l), nvars), &coord_of(&Factor::Dot(j, k), nvars));
            for (e, c) in ac_bd {
                push((e, c));
            }
            for (e, c) in ad_bc {
                push((e, -c));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn double_factorial_odd(n: i64) -> Q {
    // (n)!! for odd n ≥ −1
    let mut r = Q::one();
    let mut k = n;
    while k > 1 {
        r *= q(k);
        k -= 2;
    }
    r
}

/// Average of `u_x^a u_y^b u_z^c` over the unit sphere.
fn unit_sphere_average(a: u16, b: u16, c: u16) -> Q {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return Q::zero();
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    double_factorial_odd(a - 1) * double_factorial_odd(b - 1) * double_factorial_odd(c - 1)
        / double_factorial_odd(a + b + c + 1)
}

/// `∫ ∏_j d²α⃗_j/(4πα_j) · poly` over spheres `|α⃗_j| = α_j`, `j < nvars`,
/// returned as `P` with value `(∏_j α_j)·P(α_1², …)`.
pub fn sphere_moment(poly: &InvariantPolynomial, nvars: usize) -> ColorPolynomial<SymbolicScalar> {
    assert!(poly.nslots() <= nvars, "polynomial uses more slots than spheres");
    let mut out = ColorPolynomial::zero(nvars);
    let mut cache: BTreeMap<Monomial, Vec<(Vec<u32>, Q)>> = BTreeMap::new();
    for (m, c) in poly.terms() {
        let moments = cache.entry(m.clone()).or_insert_with(|| monomial_moment(m, nvars));
        for (deg, v) in moments.iter() {
            out.add_term(deg.clone(), c.scale(v));
        }
    }
    out
}

fn monomial_moment(m: &Monomial, nvars: usize) -> Vec<(Vec<u32>, Q)> {
    let mut p = CoordPoly::new();
    p.insert(vec![0; 3 * nvars], Q::one());
    for f in m {
        p = coord_mul(&p, &coord_of(f, nvars));
    }
    let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (e, c) in p {
        let mut v = c;
        let mut deg = vec![0u32; nvars];
        for j in 0..nvars {
            let (a, b, cc) = (e[3 * j], e[3 * j + 1], e[3 * j + 2]);
            v *= unit_sphere_average(a, b, cc);
            if v.is_zero() {
                break;
            }
            deg[j] = (a + b + cc) as u32 / 2;
        }
        if !v.is_zero() {
            *acc.entry(deg).or_insert_with(Q::zero) += v;
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `log((π/K)/sin(π/K))` as scalar `P_{0,l}` entries, `1 ≤ l ≤ n0`.
pub fn canonical_p(n0: usize) -> Vec<(usize, usize, InvariantPolynomial)> {
    let s = crate::powerseries::sinc_series(n0).inverse().expect("invertible").log().expect("constant term 1");
    (1..=n0)
        .filter(|&l| !s.coeff(l).is_zero())
        .map(|l| (0, l, InvariantPolynomial::constant(s.coeff(l).clone())))
        .collect()
}

/// Expands `exp((iπ/2)Σ L_m K^{1−m} + Σ P_{m,l} K^{−l−m})` to `K^{−n0}`,
/// integrates over the orbits, divides by `∏α_j` and strips the diagonal
/// `L_2` phases. `l_terms` holds `(m, L_m)`, `p_terms` holds `(m, l, P_{m,l})`.
pub fn orbit_integral(
    l_terms: &[(usize, InvariantPolynomial)],
    p_terms: &[(usize, usize, InvariantPolynomial)],
    nvars: usize,
    n0: usize,
) -> Result<ColorSeries<SymbolicScalar>> {
    let mut linking = vec![vec![Q::zero(); nvars]; nvars];
    let mut exponent = vec![InvariantPolynomial::zero(); n0 + 1];
    let half_i_pi = SymbolicScalar::i_pi_pow(1).scale(&q2(1, 2));
    for (m, poly) in l_terms {
        if *m < 2 {
            return Err(Error::Hypothesis("L_m needs m >= 2"));
        }
        if *m > n0 + 1 {
            continue;
        }
        let mut kept = InvariantPolynomial::zero();
        for (mono, c) in poly.terms() {
            if *m == 2 {
                if let [Factor::Dot(i, j)] = mono.as_slice() {
                    let v = c.to_rational().ok_or_else(|| Error::NonRational(alloc::format!("{c}")))?;
                    if i == j {
                        linking[*i][*i] += v;
                        continue;
                    }
                    linking[*i][*j] += &v / q(2);
                    linking[*j][*i] += v / q(2);
                }
            }
            kept = kept.add(&InvariantPolynomial::term(mono.clone(), c.clone()));
        }
        exponent[*m - 1] = exponent[*m - 1].add(&kept.scale(&half_i_pi));
    }
    for (m, l, poly) in p_terms {
        let n = m + l;
        if n == 0 {
            return Err(Error::Hypothesis("P_{0,0} is excluded"));
        }
        if n <= n0 {
            exponent[n] = exponent[n].add(poly);
        }
    }
    // exp of a series with zero constant term: e' = E' e
    let mut e = vec![InvariantPolynomial::zero(); n0 + 1];
    e[0] = InvariantPolynomial::constant(SymbolicScalar::one());
    for n in 1..=n0 {
        let mut acc = InvariantPolynomial::zero();
        for k in 1..=n {
            if !exponent[k].is_zero() && !e[n - k].is_zero() {
                acc = acc.add(&exponent[k].mul(&e[n - k]).scale(&SymbolicScalar::from_int(k as i64)));
            }
        }
        e[n] = acc.scale(&SymbolicScalar::from_q(q2(1, n as i64)));
    }
    let terms = e.iter().map(|p| sphere_moment(p, nvars)).collect();
    Ok(ColorSeries::from_terms(linking, terms))
}

/// Checks `(t/sin t)·∫_{|α⃗|=α} d²α⃗/(4πα) e^{i v⃗·α⃗} = sin(αt)/sin t`, `|v⃗| = t`,
/// as series in `t` through `t^{n0}`. On mismatch returns the first bad order.
pub fn kirillov_check(alpha: &Q, n0: usize) -> core::result::Result<(), usize> {
    // averaging over the direction of v⃗ too does not change the left side;
    // v⃗ becomes a second sphere of radius t whose mass is divided out
    let mut lhs = vec![Q::zero(); n0 + 1];
    let x = alpha * alpha;
    let mut dot_pow = InvariantPolynomial::constant(SymbolicScalar::one());
    let mut fact = Q::one();
    for k in 0..=n0 {
        if k > 0 {
            dot_pow = dot_pow.mul(&InvariantPolynomial::dot(0, 1));
            fact *= q(k as i64);
        }
        if k % 2 == 1 {
            continue;
        }
        let mom = sphere_moment(&dot_pow, 2);
        let mut v = Q::zero();
        for (d, c) in mom.iter() {
            let c = c.to_rational().expect("rational moment");
            v += c * pow(&x, d[0]);
        }
        // i^k / k! · α (mass)
        let sign = if k % 4 == 0 { q(1) } else { q(-1) };
        lhs[k] = v * sign / &fact * alpha;
    }
    // multiply by t/sin t
    let inv_sinc = series_inverse(&sin_over(&Q::one(), n0));
    let lhs = series_mul(&lhs, &inv_sinc);
    // sin(αt)/sin t = α · s(αt)/s(t)
    let rhs: Vec<Q> = series_mul(&sin_over(alpha, n0), &inv_sinc).into_iter().map(|c| c * alpha).collect();
    match (0..=n0).find(|&n| lhs[n] != rhs[n]) {
        Some(n) => Err(n),
        None => Ok(()),
    }
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |a, _| a * x)
}

/// `sin(a t)/(a t)`.
fn sin_over(a: &Q, n0: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n0 + 1];
    let mut term = Q::one();
    for k in 0..=n0 / 2 {
        if k > 0 {
            term = -term * a * a / q(((2 * k) * (2 * k + 1)) as i64);
        }
        out[2 * k] = term.clone();
    }
    out
}

fn series_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().min(b.len());
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn series_inverse(a: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len()];
    let inv0 = a[0].recip();
    out[0] = inv0.clone();
    for n in 1..a.len() {
        let mut s = Q::zero();
        for k in 1..=n {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s * &inv0;
    }
    out
}
