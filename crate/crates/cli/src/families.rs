//! The shipped family grid used by the degree-bound sweeps, and the
//! presentation registry.

use qtop_core::jones::FramedLink;
use serde::Deserialize;

use crate::error::CliError;
use crate::link::LinkSpec;

const REGISTRY: &str = include_str!("../data/registry.json");

fn unknot(f: i64) -> FramedLink {
    FramedLink::unknot(f)
}

fn chain(f: &[i64]) -> FramedLink {
    FramedLink::hopf_chain(f).expect("nonempty chain")
}

fn torus(m: i64, p: i64, f: i64) -> FramedLink {
    FramedLink::torus_knot(m, p, f).expect("coprime torus parameters")
}

fn union(c: Vec<FramedLink>) -> FramedLink {
    FramedLink::disjoint_union(c)
}

/// Every family shape at a few framings; names sort in grid order.
pub fn grid() -> Vec<(String, FramedLink)> {
    let mut out = Vec::new();
    for f in -3..=3 {
        out.push((format!("unknot({f:+})"), unknot(f)));
    }
    for (a, b) in [(0, 0), (2, 3), (-1, 2), (1, 1)] {
        out.push((format!("chain[{a:+},{b:+}]"), chain(&[a, b])));
    }
    for fs in [[2, 0, 3], [1, -2, 1], [-1, -1, -1]] {
        out.push((format!("chain[{:+},{:+},{:+}]", fs[0], fs[1], fs[2]), chain(&fs)));
    }
    out.push(("chain[+1,+2,+1,+2]".into(), chain(&[1, 2, 1, 2])));
    for (m, p, f) in [(2, 3, -1), (2, 3, 0), (2, 5, 1), (3, 4, 0), (2, -3, 2)] {
        out.push((format!("torus({m},{p:+},{f:+})"), torus(m, p, f)));
    }
    out.push((
        "sum(torus(2,+3,+1),unknot(+0))".into(),
        FramedLink::connected_sum(vec![torus(2, 3, 1), unknot(0)]).expect("nonempty"),
    ));
    out.push((
        "sum(chain[+1,+2],torus(2,+3,+0))".into(),
        FramedLink::connected_sum(vec![chain(&[1, 2]), torus(2, 3, 0)]).expect("nonempty"),
    ));
    out.extend(split_unions());
    out
}

/// Algebraically split unions from the grid.
pub fn split_unions() -> Vec<(String, FramedLink)> {
    vec![
        ("union(unknot(+2),unknot(-3))".into(), union(vec![unknot(2), unknot(-3)])),
        ("union(unknot(+1),torus(2,+3,-1))".into(), union(vec![unknot(1), torus(2, 3, -1)])),
        ("union(torus(2,+3,+0),torus(2,+5,+1))".into(), union(vec![torus(2, 3, 0), torus(2, 5, 1)])),
        ("union(unknot(+2),unknot(+3),unknot(-1))".into(), union(vec![unknot(2), unknot(3), unknot(-1)])),
        (
            "union(unknot(+2),unknot(+3),unknot(-2),unknot(+5))".into(),
            union(vec![unknot(2), unknot(3), unknot(-2), unknot(5)]),
        ),
    ]
}

/// Four-component split unions of algebraically split links.
pub fn four_component_splits() -> Vec<(String, FramedLink)> {
    vec![
        ("union(+2,+3,-2,+5)".into(), union(vec![unknot(2), unknot(3), unknot(-2), unknot(5)])),
        ("union(+1,-1,+4,-3)".into(), union(vec![unknot(1), unknot(-1), unknot(4), unknot(-3)])),
        ("union(T(2,3,+1),+2,-2,+3)".into(), union(vec![torus(2, 3, 1), unknot(2), unknot(-2), unknot(3)])),
    ]
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Registry {
    groups: Vec<Group>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub name: String,
    pub members: Vec<LinkSpec>,
}

/// Groups of presentations of the same manifold.
pub fn registry() -> Result<Vec<Group>, CliError> {
    let r: Registry =
        serde_json::from_str(REGISTRY).map_err(|e| CliError::Input(format!("bad registry: {e}")))?;
    Ok(r.groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds() {
        let groups = registry().unwrap();
        assert!(groups.len() >= 10);
        for g in groups {
            assert!(g.members.len() >= 2, "{}", g.name);
            for m in &g.members {
                m.build().unwrap();
            }
        }
    }

    #[test]
    fn grid_names_unique() {
        let g = grid();
        let mut names: Vec<_> = g.iter().map(|(n, _)| n.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), g.len());
        assert!(split_unions().iter().all(|(_, l)| l.is_algebraically_split()));
    }
}
