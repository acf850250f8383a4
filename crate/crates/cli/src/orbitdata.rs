//! JSON input for `orbit-integral`: the `L_m` and `P_{m,l}` data as sums of
//! contraction monomials.
//!
//! ```json
//! {"nvars": 2,
//!  "L": [{"m": 2, "poly": [{"factors": ["dot(1,2)"], "re": "2"}]}],
//!  "P": [{"m": 0, "l": 2, "poly": [{"factors": [], "re": "1/6", "pi": 2}]}],
//!  "canonical_P": false}
//! ```
//! Slots are 1-based. A coefficient is `(re + im·i)·π^pi`.

use std::path::Path;

use qtop_core::orbit::{canonical_p, Factor, InvariantPolynomial};
use qtop_core::scalartower::{Gaussian, SymbolicScalar, Q};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitData {
    pub nvars: usize,
    #[serde(rename = "L", default)]
    pub l: Vec<LTerm>,
    #[serde(rename = "P", default)]
    pub p: Vec<PTerm>,
    #[serde(rename = "canonical_P", default)]
    pub canonical_p: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LTerm {
    pub m: usize,
    pub poly: Vec<TermSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PTerm {
    pub m: usize,
    pub l: usize,
    pub poly: Vec<TermSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub factors: Vec<String>,
    #[serde(default)]
    pub re: Option<String>,
    #[serde(default)]
    pub im: Option<String>,
    #[serde(default)]
    pub pi: i32,
}

fn bad(m: impl Into<String>) -> CliError {
    CliError::Input(m.into())
}

pub fn parse_q(s: &str) -> Result<Q, CliError> {
    s.trim().parse::<Q>().map_err(|_| bad(format!("not a rational number: {s}")))
}

/// `dot(i,j)`, `triple(i,j,k)` or `crossdot(i,j;k,l)`, 1-based.
pub fn parse_factor(s: &str, nvars: usize) -> Result<Factor, CliError> {
    let s = s.trim();
    let (name, rest) = s.split_once('(').ok_or_else(|| bad(format!("bad factor {s}")))?;
    let args = rest.strip_suffix(')').ok_or_else(|| bad(format!("bad factor {s}")))?;
    let idx: Vec<usize> = args
        .split([',', ';'])
        .map(|a| a.trim().parse::<usize>().map_err(|_| bad(format!("bad slot in {s}"))))
        .collect::<Result<_, _>>()?;
    if idx.iter().any(|&i| i == 0 || i > nvars) {
        return Err(bad(format!("slot out of range in {s}")));
    }
    let i: Vec<usize> = idx.iter().map(|x| x - 1).collect();
    match (name.trim(), i.len()) {
        ("dot", 2) => Ok(Factor::Dot(i[0], i[1])),
        ("triple", 3) => Ok(Factor::Triple(i[0], i[1], i[2])),
        ("crossdot", 4) => Ok(Factor::CrossDot(i[0], i[1], i[2], i[3])),
        _ => Err(bad(format!("bad factor {s}"))),
    }
}

fn poly(terms: &[TermSpec], nvars: usize) -> Result<InvariantPolynomial, CliError> {
    let mut out = InvariantPolynomial::zero();
    for t in terms {
        let re = t.re.as_deref().map(parse_q).transpose()?.unwrap_or_default();
        let im = t.im.as_deref().map(parse_q).transpose()?.unwrap_or_default();
        let c = SymbolicScalar::term(t.pi, Gaussian::new(re, im));
        let f = t.factors.iter().map(|f| parse_factor(f, nvars)).collect::<Result<Vec<_>, _>>()?;
        out = out.add(&InvariantPolynomial::term(f, c));
    }
    Ok(out)
}

pub type Inputs = (Vec<(usize, InvariantPolynomial)>, Vec<(usize, usize, InvariantPolynomial)>, usize);

impl OrbitData {
    pub fn inputs(&self, n0: usize) -> Result<Inputs, CliError> {
        let l = self.l.iter().map(|t| Ok((t.m, poly(&t.poly, self.nvars)?))).collect::<Result<Vec<_>, CliError>>()?;
        let mut p = self
            .p
            .iter()
            .map(|t| Ok((t.m, t.l, poly(&t.poly, self.nvars)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        if self.canonical_p {
            p.extend(canonical_p(n0));
        }
        Ok((l, p, self.nvars))
    }
}

/// Inline JSON or a path.
pub fn load(arg: &str) -> Result<OrbitData, CliError> {
    let t = arg.trim();
    let body = if t.starts_with('{') {
        t.to_string()
    } else {
        std::fs::read_to_string(Path::new(t)).map_err(|e| bad(format!("cannot read {t}: {e}")))?
    };
    serde_json::from_str(&body).map_err(|e| bad(format!("bad orbit data: {e}")))
}
