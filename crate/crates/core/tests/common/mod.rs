//! High-precision complex evaluation of exact values, used as an independent
//! numeric oracle.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use qtop_core::cyclotomic::CycNumber;
use qtop_core::scalartower::{Gaussian, Prefactor, SymbolicScalar, Q};

pub const P: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Num {
    cc: Consts,
    pub pi: BigFloat,
}

#[derive(Clone, Debug)]
pub struct C {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Num {
    pub fn new() -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(P, RM);
        Num { cc, pi }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, P)
    }
    pub fn q(&mut self, x: &Q) -> BigFloat {
        let n = BigFloat::parse(&x.numer().to_string(), Radix::Dec, P, RM, &mut self.cc);
        let d = BigFloat::parse(&x.denom().to_string(), Radix::Dec, P, RM, &mut self.cc);
        n.div(&d, P, RM)
    }
    pub fn f64(&mut self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, P)
    }
    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(P, RM)
    }
    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(P, RM, &mut self.cc)
    }
    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(P, RM, &mut self.cc)
    }
    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(P, RM, &mut self.cc)
    }
    pub fn sinh(&mut self, x: &BigFloat) -> BigFloat {
        x.sinh(P, RM, &mut self.cc)
    }
    pub fn cosh(&mut self, x: &BigFloat) -> BigFloat {
        x.cosh(P, RM, &mut self.cc)
    }

    pub fn c(&self, re: BigFloat, im: BigFloat) -> C {
        C { re, im }
    }
    pub fn zero(&self) -> C {
        C { re: self.int(0), im: self.int(0) }
    }
    pub fn one(&self) -> C {
        C { re: self.int(1), im: self.int(0) }
    }
    /// `e^{iθ}`.
    pub fn cis(&mut self, theta: &BigFloat) -> C {
        let re = self.cos(theta);
        let im = self.sin(theta);
        C { re, im }
    }
    /// `e^{iπ·r}`.
    pub fn cis_pi(&mut self, r: &Q) -> C {
        let th = self.q(r).mul(&self.pi, P, RM);
        self.cis(&th)
    }

    pub fn gaussian(&mut self, g: &Gaussian) -> C {
        C { re: self.q(&g.re), im: self.q(&g.im) }
    }

    pub fn symbolic(&mut self, s: &SymbolicScalar) -> C {
        let mut acc = self.zero();
        for (d, g) in s.iter() {
            let g = self.gaussian(g);
            let pd = pow_i(&self.pi, d);
            acc = acc.add(&g.scale(&pd));
        }
        acc
    }

    pub fn prefactor(&mut self, p: &Prefactor, k: u32) -> C {
        let ph = self.cis_pi(&Q::new((p.octant() as i64).into(), 4.into()));
        let two = self.sqrt(&self.int(2));
        let kk = self.sqrt(&self.int(k as i64));
        let r = self.q(&Q::from_integer(p.radicand().clone()));
        let rad = self.sqrt(&r);
        let m = pow_i(&two, p.half2())
            .mul(&pow_i(&kk, p.half_k()), P, RM)
            .mul(&rad, P, RM)
            .mul(&self.q(p.rho()), P, RM);
        ph.scale(&m)
    }

    /// `Σ c_j t^j` at `t = 1/K`, times the prefactor.
    pub fn kseries(&mut self, p: &Prefactor, coeffs: &[SymbolicScalar], k: u32) -> C {
        let t = self.int(1).div(&self.int(k as i64), P, RM);
        let mut acc = self.zero();
        for (j, c) in coeffs.iter().enumerate() {
            let v = self.symbolic(c).scale(&pow_i(&t, j as i32));
            acc = acc.add(&v);
        }
        acc.mul(&self.prefactor(p, k))
    }

    /// The embedding `z ↦ e^{2πi/8K}`.
    pub fn cyc(&mut self, x: &CycNumber) -> C {
        let n = x.order() as i64;
        let mut acc = self.zero();
        for (j, c) in x.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let z = self.cis_pi(&Q::new((2 * j as i64).into(), n.into()));
            let c = self.q(c);
            acc = acc.add(&z.scale(&c));
        }
        acc
    }
}

pub fn pow_i(x: &BigFloat, d: i32) -> BigFloat {
    let p = x.powi(d.unsigned_abs() as usize, P, RM);
    if d < 0 {
        BigFloat::from_i64(1, P).div(&p, P, RM)
    } else {
        p
    }
}

impl C {
    pub fn add(&self, o: &C) -> C {
        C { re: self.re.add(&o.re, P, RM), im: self.im.add(&o.im, P, RM) }
    }
    pub fn sub(&self, o: &C) -> C {
        C { re: self.re.sub(&o.re, P, RM), im: self.im.sub(&o.im, P, RM) }
    }
    pub fn mul(&self, o: &C) -> C {
        let re = self.re.mul(&o.re, P, RM).sub(&self.im.mul(&o.im, P, RM), P, RM);
        let im = self.re.mul(&o.im, P, RM).add(&self.im.mul(&o.re, P, RM), P, RM);
        C { re, im }
    }
    pub fn scale(&self, s: &BigFloat) -> C {
        C { re: self.re.mul(s, P, RM), im: self.im.mul(s, P, RM) }
    }
    pub fn conj(&self) -> C {
        C { re: self.re.clone(), im: self.im.neg() }
    }
    pub fn abs(&self) -> BigFloat {
        self.re.mul(&self.re, P, RM).add(&self.im.mul(&self.im, P, RM), P, RM).sqrt(P, RM)
    }
    pub fn div(&self, o: &C) -> C {
        let n = o.re.mul(&o.re, P, RM).add(&o.im.mul(&o.im, P, RM), P, RM);
        let inv = BigFloat::from_i64(1, P).div(&n, P, RM);
        self.mul(&o.conj()).scale(&inv)
    }
    /// `|self − o| ≤ tol`.
    pub fn close(&self, o: &C, tol: f64) -> bool {
        let d = self.sub(o).abs();
        d.cmp(&BigFloat::from_f64(tol, P)).is_some_and(|c| c <= 0)
    }
    /// `|self − o|` as `f64` (for messages and rate checks).
    pub fn dist(&self, o: &C) -> f64 {
        to_f64(&self.sub(o).abs())
    }
}

pub fn to_f64(x: &BigFloat) -> f64 {
    let s = format!("{x}");
    s.parse().unwrap_or_else(|_| if x.is_zero() { 0.0 } else { f64::NAN })
}
