//! JSON, CSV and text emitters.

use num_traits::ToPrimitive;
use num_bigint::BigInt;
use qtop_core::powerseries::ColorSeries;
use qtop_core::scalartower::SymbolicScalar;
use qtop_core::surgery::ManifoldResult;
use qtop_core::wrt::{OhtsukiReport, WrtValue, ZPrime};
use serde::Serialize;
use serde_json::Value;

use crate::approx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct MonomialJson {
    pub degrees: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct TermJson {
    pub k_power: usize,
    pub poly: Vec<MonomialJson>,
}

#[derive(Serialize)]
pub struct SeriesJson {
    pub order: usize,
    pub terms: Vec<TermJson>,
}

pub fn series_json(s: &ColorSeries<SymbolicScalar>) -> SeriesJson {
    let terms = s
        .terms()
        .iter()
        .enumerate()
        .map(|(n, p)| TermJson {
            k_power: n,
            poly: p.iter().map(|(d, c)| MonomialJson { degrees: d.clone(), coeff: c.to_string() }).collect(),
        })
        .collect();
    SeriesJson { order: s.order(), terms }
}

pub fn series_out(s: &ColorSeries<SymbolicScalar>, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(&series_json(s)),
        Format::Csv => {
            let mut rows = Vec::new();
            for (n, p) in s.terms().iter().enumerate() {
                for (d, c) in p.iter() {
                    let deg = d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                    rows.push(vec![n.to_string(), deg, c.to_string()]);
                }
            }
            csv(&["k_power", "degrees", "coeff"], &rows)
        }
        Format::Text => {
            let mut out = format!("series to order {}\n", s.order());
            for (n, p) in s.terms().iter().enumerate() {
                for (d, c) in p.iter() {
                    let mono: Vec<String> = d
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| **e > 0)
                        .map(|(j, e)| if *e == 1 { format!("x{}", j + 1) } else { format!("x{}^{e}", j + 1) })
                        .collect();
                    let mono = if mono.is_empty() { "1".to_string() } else { mono.join("·") };
                    out.push_str(&format!("K^-{n}  {mono}  ({c})\n"));
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
pub struct ManifoldJson {
    pub h1: Value,
    pub signature: i64,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "Delta")]
    pub delta: Vec<String>,
}

pub fn manifold_out(r: &ManifoldResult, fmt: Format) -> String {
    let s: Vec<String> = r.s.iter().map(|x| x.to_string()).collect();
    let delta: Vec<String> = r.delta.iter().map(|x| x.to_string()).collect();
    match fmt {
        Format::Json => to_json(&ManifoldJson { h1: int_value(&r.h1order), signature: r.signature, s, delta }),
        Format::Csv => {
            let rows = (0..delta.len())
                .map(|n| vec![n.to_string(), if n == 0 { String::new() } else { s[n - 1].clone() }, delta[n].clone()])
                .collect::<Vec<_>>();
            csv(&["n", "S_n", "Delta_n"], &rows)
        }
        Format::Text => {
            let mut out = format!("|H_1| = {}\nsignature = {}\n", r.h1order, r.signature);
            for (n, x) in s.iter().enumerate() {
                out.push_str(&format!("S_{} = {x}\n", n + 1));
            }
            for (n, x) in delta.iter().enumerate() {
                out.push_str(&format!("Delta_{n} = {x}\n"));
            }
            for note in &r.notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct CongruenceJson {
    pub n: usize,
    pub a_mod_K: u32,
    pub lambda_vee: u32,
    pub ok: bool,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct WrtJson {
    pub K: u32,
    pub Z: String,
    pub Z_approx: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub Zprime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub Zprime_integral: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub congruence: Option<Vec<CongruenceJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One `wrt` row: the value, and with `--zprime` the normalized invariant.
pub struct WrtRow {
    pub value: WrtValue,
    /// `Err` carries the integrality failure text.
    pub zprime: Option<Result<ZPrime, String>>,
    pub ohtsuki: Option<OhtsukiReport>,
    pub note: Option<String>,
}

impl WrtRow {
    pub fn json(&self) -> WrtJson {
        let (zp, integral, a) = match &self.zprime {
            None => (None, None, None),
            Some(Ok(z)) => (Some(z.value.to_string()), Some(true), Some(z.a.iter().map(int_value).collect())),
            Some(Err(_)) => (None, Some(false), None),
        };
        WrtJson {
            K: self.value.k,
            Z: self.value.value.to_string(),
            Z_approx: approx::cyc_text(&self.value.value),
            Zprime: zp,
            Zprime_integral: integral,
            a,
            congruence: self.ohtsuki.as_ref().map(|o| {
                o.rows
                    .iter()
                    .map(|r| CongruenceJson { n: r.n, a_mod_K: r.a_mod_k, lambda_vee: r.lambda_vee, ok: r.ok })
                    .collect()
            }),
            note: self.note.clone(),
        }
    }
}

pub fn wrt_out(rows: &[WrtRow], fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let js: Vec<WrtJson> = rows.iter().map(|r| r.json()).collect();
            if js.len() == 1 {
                to_json(&js[0])
            } else {
                to_json(&js)
            }
        }
        Format::Csv => {
            let mut out = Vec::new();
            for r in rows {
                let j = r.json();
                let cong = j
                    .congruence
                    .as_ref()
                    .map(|c| c.iter().map(|x| format!("{}:{}={}", x.n, x.a_mod_K, x.lambda_vee)).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                out.push(vec![
                    j.K.to_string(),
                    j.Z,
                    j.Z_approx,
                    j.Zprime_integral.map(|b| b.to_string()).unwrap_or_default(),
                    j.a.map(|a| a.iter().map(|v| v.to_string().trim_matches('"').to_string()).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default(),
                    cong,
                ]);
            }
            csv(&["K", "Z", "Z_approx", "Zprime_integral", "a", "congruence"], &out)
        }
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                let j = r.json();
                out.push_str(&format!("K = {}\nZ = {}\nZ approx = {}\n", j.K, j.Z, j.Z_approx));
                if let Some(z) = &j.Zprime {
                    out.push_str(&format!("Z' = {z}\n"));
                }
                if let Some(b) = j.Zprime_integral {
                    out.push_str(&format!("Z' integral: {b}\n"));
                }
                if let Some(a) = &j.a {
                    let a: Vec<String> = a.iter().map(|v| v.to_string().trim_matches('"').to_string()).collect();
                    out.push_str(&format!("a = [{}]\n", a.join(", ")));
                }
                for c in j.congruence.iter().flatten() {
                    let v = if c.ok { "ok" } else { "FAIL" };
                    out.push_str(&format!("  n = {}: a_n = {} mod K, lambda_n^v = {}  {v}\n", c.n, c.a_mod_K, c.lambda_vee));
                }
                if let Some(n) = &j.note {
                    out.push_str(&format!("note: {n}\n"));
                }
                out.push('\n');
            }
            out
        }
    }
}
