//! Canonical example inputs: linear and cyclic Coxeter graphs, the glued and
//! right-angled example graphs, and the surface / hub presentations.

use crate::coxeter::CoxeterGraph;
use crate::presentations::{gnm_presentation, surface_presentation, PositivePresentation};
use crate::{CoreError, Result};

/// A linear diagram with the given consecutive edge labels; non-adjacent
/// pairs commute (label 2) and large edges are oriented along the line.
pub fn path_graph(labels: &[u64]) -> CoxeterGraph {
    let n = labels.len() + 1;
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut g = CoxeterGraph::new(names);
    for (i, &m) in labels.iter().enumerate() {
        g.add_edge(i, i + 1, m).unwrap();
        if m >= 3 {
            g.orient_edge(i, i + 1).unwrap();
        }
    }
    for i in 0..n {
        for j in (i + 2)..n {
            g.add_edge(i, j, 2).unwrap();
        }
    }
    g
}

/// A cycle with the given edge labels (edge `i` joins vertex `i` to `i+1`
/// cyclically), oriented consistently around the circle; all other pairs
/// commute.
pub fn cycle_graph(labels: &[u64]) -> CoxeterGraph {
    let n = labels.len();
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut g = CoxeterGraph::new(names);
    for (i, &m) in labels.iter().enumerate() {
        let j = (i + 1) % n;
        g.add_edge(i, j, m).unwrap();
        if m >= 3 {
            g.orient_edge(i, j).unwrap();
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.label(i, j).is_none() {
                g.add_edge(i, j, 2).unwrap();
            }
        }
    }
    g
}

/// The right-angled square: a 4-cycle with all labels 2 and free antipodal
/// pairs.
pub fn figure2_square_raag() -> CoxeterGraph {
    let mut g =
        CoxeterGraph::new(["a", "u", "b", "v"].iter().map(|s| s.to_string()).collect());
    g.add_edge(0, 1, 2).unwrap();
    g.add_edge(1, 2, 2).unwrap();
    g.add_edge(2, 3, 2).unwrap();
    g.add_edge(3, 0, 2).unwrap();
    g
}

/// The 7-generator complete graph whose Dynkin diagram is a line with all
/// labels 4, oriented along the line.
pub fn figure3_line_of_four_labels() -> CoxeterGraph {
    path_graph(&[4, 4, 4, 4, 4, 4])
}

/// Two 5-cycles with all labels 3 glued along a common path of three
/// vertices; cross pairs outside the shared path are free. Orientations run
/// consistently around both circles.
pub fn figure1_glued() -> CoxeterGraph {
    // block 1: v0 v1 v2 v3 v4 (cycle), block 2: v0 v1 v2 v5 v6 (cycle),
    // shared path v0 - v1 - v2
    let names: Vec<String> = (0..7).map(|i| format!("s{}", i + 1)).collect();
    let mut g = CoxeterGraph::new(names);
    let cycle1 = [0usize, 1, 2, 3, 4];
    let cycle2 = [0usize, 1, 2, 5, 6];
    for c in [&cycle1, &cycle2] {
        for i in 0..5 {
            let a = c[i];
            let b = c[(i + 1) % 5];
            if g.label(a, b).is_none() {
                g.add_edge(a, b, 3).unwrap();
                g.orient_edge(a, b).unwrap();
            }
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                if g.label(c[i], c[j]).is_none() {
                    g.add_edge(c[i], c[j], 2).unwrap();
                }
            }
        }
    }
    // pairs across the blocks (3,4 vs 5,6) stay free
    g
}

/// Parses a cycle pattern like `3-3-3-4` into a cyclic-type graph, or the
/// names `a~n` for the (n+1)-cycle with all labels 3.
pub fn table1_graph(pattern: &str) -> Result<CoxeterGraph> {
    if let Some(rest) = pattern.strip_prefix("a~") {
        let n: usize = rest
            .parse()
            .map_err(|_| CoreError::InvalidInput(format!("bad pattern {pattern}")))?;
        if n < 2 {
            return Err(CoreError::InvalidInput("a~n requires n >= 2".into()));
        }
        return Ok(cycle_graph(&vec![3; n + 1]));
    }
    let labels: Vec<u64> = pattern
        .split('-')
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| CoreError::InvalidInput(format!("bad pattern {pattern}")))
        })
        .collect::<Result<_>>()?;
    if labels.len() < 3 || labels.iter().any(|&m| m < 3) {
        return Err(CoreError::InvalidInput(
            "cycle patterns need at least three labels, all >= 3".into(),
        ));
    }
    Ok(cycle_graph(&labels))
}

/// A triangle diagram with the three given labels.
pub fn triangle_graph(p: u64, q: u64, r: u64) -> Result<CoxeterGraph> {
    if p < 3 || q < 3 || r < 3 {
        return Err(CoreError::InvalidInput("triangle labels must be >= 3".into()));
    }
    Ok(cycle_graph(&[p, q, r]))
}

/// The graph with the given number of generators and no relations.
pub fn free_graph(n: usize) -> CoxeterGraph {
    CoxeterGraph::new((1..=n).map(|i| format!("s{i}")).collect())
}

/// Named example generation shared by the command line and the tests.
pub enum Generated {
    Graph(CoxeterGraph),
    Presentation(PositivePresentation),
}

pub fn generate(name: &str, params: &[String]) -> Result<Generated> {
    match name {
        "table1" => {
            let pattern = params
                .first()
                .ok_or_else(|| CoreError::InvalidInput("table1 needs a pattern".into()))?;
            Ok(Generated::Graph(table1_graph(pattern)?))
        }
        "triangle" => {
            let v: Vec<u64> = params
                .iter()
                .map(|p| {
                    p.parse::<u64>()
                        .map_err(|_| CoreError::InvalidInput("bad triangle label".into()))
                })
                .collect::<Result<_>>()?;
            match v.as_slice() {
                [p, q, r] => Ok(Generated::Graph(triangle_graph(*p, *q, *r)?)),
                _ => Err(CoreError::InvalidInput("triangle needs three labels".into())),
            }
        }
        "figure1" => Ok(Generated::Graph(figure1_glued())),
        "figure2" => Ok(Generated::Graph(figure2_square_raag())),
        "figure3" => Ok(Generated::Graph(figure3_line_of_four_labels())),
        "free" => {
            let n: usize = params
                .first()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| CoreError::InvalidInput("free needs a count".into()))?;
            Ok(Generated::Graph(free_graph(n)))
        }
        "surface" => {
            let genus: u32 = params
                .first()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| CoreError::InvalidInput("surface needs a genus".into()))?;
            let orientable = !params.iter().any(|p| p == "nonorientable");
            Ok(Generated::Presentation(surface_presentation(genus, orientable)?))
        }
        "klein" => Ok(Generated::Presentation(surface_presentation(2, false)?)),
        "gnm" => {
            let n: u32 = params
                .first()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| CoreError::InvalidInput("gnm needs n and m".into()))?;
            let m: u32 = params
                .get(1)
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| CoreError::InvalidInput("gnm needs n and m".into()))?;
            Ok(Generated::Presentation(gnm_presentation(n, m)?))
        }
        other => Err(CoreError::InvalidInput(format!("unknown example name {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin;

    #[test]
    fn table1_patterns() {
        assert!(artin::is_cyclic_type(&table1_graph("a~3").unwrap()));
        assert!(artin::is_cyclic_type(&table1_graph("3-3-3-4").unwrap()));
        assert!(artin::is_cyclic_type(&table1_graph("3-3-3-3-4").unwrap()));
        assert!(!artin::is_cyclic_type(&table1_graph("4-4-4-4").unwrap()));
        assert!(table1_graph("nope").is_err());
    }

    #[test]
    fn figure1_passes_graph_check() {
        let g = figure1_glued();
        let report = artin::check_thm63_graph(&g);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn figure2_and_3_fail_graph_check() {
        assert!(!artin::check_thm63_graph(&figure2_square_raag()).passed());
        assert!(!artin::check_thm63_graph(&figure3_line_of_four_labels()).passed());
    }
}
