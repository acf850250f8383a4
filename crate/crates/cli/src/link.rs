//! JSON link descriptors.

use std::path::Path;

use qtop_core::jones::FramedLink;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum LinkSpec {
    Empty,
    Unknot { framing: i64 },
    HopfChain { framings: Vec<i64> },
    TorusKnot { m: i64, p: i64, framing: i64 },
    DisjointUnion { children: Vec<LinkSpec> },
    ConnectedSum { children: Vec<LinkSpec> },
}

impl LinkSpec {
    pub fn build(&self) -> Result<FramedLink, CliError> {
        let link = match self {
            LinkSpec::Empty => FramedLink::empty(),
            LinkSpec::Unknot { framing } => FramedLink::unknot(*framing),
            LinkSpec::HopfChain { framings } => FramedLink::hopf_chain(framings)?,
            LinkSpec::TorusKnot { m, p, framing } => FramedLink::torus_knot(*m, *p, *framing)?,
            LinkSpec::DisjointUnion { children } => {
                FramedLink::disjoint_union(children.iter().map(|c| c.build()).collect::<Result<_, _>>()?)
            }
            LinkSpec::ConnectedSum { children } => {
                FramedLink::connected_sum(children.iter().map(|c| c.build()).collect::<Result<_, _>>()?)?
            }
        };
        Ok(link)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

/// Reads `--link`: the word `empty`, inline JSON, or a path to a JSON file.
pub fn parse_link(arg: &str) -> Result<LinkSpec, CliError> {
    let text = arg.trim();
    if text == "empty" {
        return Ok(LinkSpec::Empty);
    }
    let body = if text.starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(Path::new(text))
            .map_err(|e| CliError::Input(format!("cannot read link descriptor {text}: {e}")))?
    };
    serde_json::from_str(&body).map_err(|e| CliError::Input(format!("bad link descriptor: {e}")))
}

pub fn load_link(arg: &str) -> Result<FramedLink, CliError> {
    parse_link(arg)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        let s = parse_link(r#"{"family":"hopf_chain","framings":[2,3]}"#).unwrap();
        assert_eq!(s, LinkSpec::HopfChain { framings: vec![2, 3] });
        let s = parse_link(r#"{"family":"torus_knot","m":2,"p":3,"framing":-1}"#).unwrap();
        assert_eq!(s.build().unwrap().ncomp(), 1);
        let s = parse_link(
            r#"{"family":"disjoint_union","children":[{"family":"unknot","framing":5},{"family":"empty"}]}"#,
        )
        .unwrap();
        assert_eq!(s.build().unwrap().ncomp(), 1);
        assert_eq!(parse_link("empty").unwrap(), LinkSpec::Empty);
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(matches!(parse_link(r#"{"family":"unknot","framing":1,"color":3}"#), Err(CliError::Input(_))));
        assert!(matches!(parse_link(r#"{"family":"trefoil"}"#), Err(CliError::Input(_))));
        assert!(matches!(parse_link(r#"{"family":"unknot"}"#), Err(CliError::Input(_))));
    }

    #[test]
    fn roundtrip() {
        let s = LinkSpec::ConnectedSum {
            children: vec![LinkSpec::TorusKnot { m: 2, p: 5, framing: 1 }, LinkSpec::Unknot { framing: 0 }],
        };
        assert_eq!(parse_link(&s.to_json()).unwrap(), s);
    }
}
