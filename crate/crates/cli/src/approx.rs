//! Numeric renderings for humans. Never fed back into computation.

use astro_float::{BigFloat, Consts, RoundingMode};
use qtop_core::cyclotomic::CycNumber;
use qtop_core::scalartower::Q;

const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;
/// Significant digits printed.
pub const DIGITS: usize = 30;

fn from_q(x: &Q) -> BigFloat {
    let n = BigFloat::parse(&x.numer().to_string(), astro_float::Radix::Dec, P, RM, &mut consts());
    let d = BigFloat::parse(&x.denom().to_string(), astro_float::Radix::Dec, P, RM, &mut consts());
    n.div(&d, P, RM)
}

fn consts() -> Consts {
    Consts::new().expect("constants cache")
}

/// `(re, im)` of the embedding `z ↦ e^{2πi/8K}`.
pub fn cyc_parts(x: &CycNumber) -> (BigFloat, BigFloat) {
    let mut cc = consts();
    let pi = cc.pi(P, RM);
    let n = BigFloat::from_u64(x.order() as u64, P);
    let mut re = BigFloat::from_u64(0, P);
    let mut im = BigFloat::from_u64(0, P);
    for (j, c) in x.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let th = pi.mul(&BigFloat::from_u64(2 * j as u64, P), P, RM).div(&n, P, RM);
        let c = from_q(c);
        re = re.add(&c.mul(&th.cos(P, RM, &mut cc), P, RM), P, RM);
        im = im.add(&c.mul(&th.sin(P, RM, &mut cc), P, RM), P, RM);
    }
    (re, im)
}

/// Scientific notation with [`DIGITS`] significant digits, rounded half up.
pub fn fmt_float(x: &BigFloat) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = format!("{x}");
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.as_str()),
    };
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits: Vec<u8> = ip.bytes().chain(fp.bytes()).map(|b| b - b'0').collect();
    let mut exp = exp + ip.len() as i64 - 1;
    while digits.first() == Some(&0) && digits.len() > 1 {
        digits.remove(0);
        exp -= 1;
    }
    if digits.len() > DIGITS {
        let up = digits[DIGITS] >= 5;
        digits.truncate(DIGITS);
        if up {
            let mut i = DIGITS;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(DIGITS);
                    exp += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    let body: String = digits.iter().map(|d| (b'0' + d) as char).collect();
    let (head, tail) = body.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// `"re + im·i"` with both parts approximated.
pub fn cyc_text(x: &CycNumber) -> String {
    let (mut re, mut im) = cyc_parts(x);
    // exact real or imaginary values print an exact zero part
    let c = x.conj();
    if c == *x {
        im = BigFloat::from_u64(0, P);
    } else if c.add(x).is_zero() {
        re = BigFloat::from_u64(0, P);
    }
    let ims = fmt_float(&im);
    match ims.strip_prefix('-') {
        Some(m) => format!("{} - {}·i", fmt_float(&re), m),
        None => format!("{} + {}·i", fmt_float(&re), ims),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders() {
        assert_eq!(fmt_float(&BigFloat::from_i64(-25, P)), "-2.5e1");
        assert_eq!(fmt_float(&BigFloat::from_u64(1, P)), "1e0");
        let (re, im) = cyc_parts(&CycNumber::sqrt_k(5));
        assert!(fmt_float(&re).starts_with("2.23606797749978969640917366873"));
        assert!(im.abs().cmp(&BigFloat::from_f64(1e-60, P)).unwrap() < 0);
        let x = from_q(&Q::new(1.into(), 3.into()));
        assert_eq!(fmt_float(&x), "3.33333333333333333333333333333e-1");
        let x = from_q(&Q::new(2.into(), 3.into()));
        assert_eq!(fmt_float(&x), "6.66666666666666666666666666667e-1");
    }
}
