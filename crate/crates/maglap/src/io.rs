//! Graph text format.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v [theta]
//! ...
//! ```
//!
//! One header line `n m`, then `m` edge lines with 0-based vertex ids and an
//! optional angle in radians (default 0). Angles must lie in `[-pi, pi]` up
//! to a 1e-12 slack and are canonicalized to `(-pi, pi]` on load.

use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::operator::ThetaAssignment;

const ANGLE_SLACK: f64 = 1e-12;

/// Parse the graph text format from a string.
pub fn parse_graph_str(text: &str) -> Result<(DirectedGraph, ThetaAssignment)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "expected 'n m'".into(),
    })?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::Parse {
            line: header_line,
            message: "expected 'n m'".into(),
        })?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::Parse {
            line: header_line,
            message: "expected 'n m'".into(),
        })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: header_line,
            message: "expected 'n m'".into(),
        });
    }

    let mut pairs = Vec::with_capacity(m);
    let mut angles = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: text.lines().count() + 1,
            message: format!("expected {} edge lines, found {}", m, pairs.len()),
        })?;
        let mut parts = line.split_whitespace();
        let bad_line = || Error::Parse {
            line: line_no,
            message: "expected 'u v [theta]'".into(),
        };
        let u: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad_line)?;
        let v: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad_line)?;
        let theta: f64 = match parts.next() {
            Some(t) => t.parse().map_err(|_| bad_line())?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(bad_line());
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("vertex id out of range for n = {}", n),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                message: format!("loop edge ({}, {})", u, v),
            });
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate edge ({}, {})", u, v),
            });
        }
        if !theta.is_finite() || !(-PI - ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&theta) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("theta {} outside [-pi, pi]", theta),
            });
        }
        pairs.push((u, v));
        angles.push(theta);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: "unexpected content after the edge list".into(),
        });
    }

    let graph = DirectedGraph::from_edge_list(n, &pairs)?;
    let theta = ThetaAssignment::new(&graph, angles)?;
    Ok((graph, theta))
}

pub fn read_graph_file<P: AsRef<Path>>(path: P) -> Result<(DirectedGraph, ThetaAssignment)> {
    let text = std::fs::read_to_string(path)?;
    parse_graph_str(&text)
}

/// Serialize in the same format; angles are printed only when nonzero
/// somewhere.
pub fn format_graph(g: &DirectedGraph, theta: &ThetaAssignment) -> String {
    let all_zero = theta.angles().iter().all(|&a| a == 0.0);
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if all_zero {
            out.push_str(&format!("{} {}\n", u, v));
        } else {
            out.push_str(&format!("{} {} {}\n", u, v, theta.angle(e)));
        }
    }
    out
}

pub fn write_graph_file<P: AsRef<Path>>(
    path: P,
    g: &DirectedGraph,
    theta: &ThetaAssignment,
) -> Result<()> {
    std::fs::write(path, format_graph(g, theta))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn parses_with_comments_and_default_theta() {
        let text = "# a square\n4 4\n0 1\n1 2\n2 3 0.5\n3 0\n# trailing comment\n";
        let (g, theta) = parse_graph_str(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(theta.angle(0), 0.0);
        assert!((theta.angle(2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reports_line_numbers() {
        let text = "4 4\n0 1\nbogus line\n2 3\n3 0\n";
        match parse_graph_str(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("u v [theta]"), "{}", message);
            }
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_out_of_range_theta() {
        let text = "2 1\n0 1 3.15\n";
        match parse_graph_str(text) {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("outside")),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn rejects_duplicates_and_loops_with_lines() {
        let text = "3 2\n0 1\n0 1\n";
        match parse_graph_str(text) {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("duplicate")),
            other => panic!("{:?}", other),
        }
        let text = "3 1\n1 1\n";
        assert!(matches!(
            parse_graph_str(text),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_missing_and_trailing_lines() {
        let text = "3 2\n0 1\n";
        assert!(matches!(parse_graph_str(text), Err(Error::Parse { .. })));
        let text = "3 1\n0 1\n1 2\n";
        assert!(matches!(parse_graph_str(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn canonicalizes_negative_pi() {
        let text = format!("2 1\n0 1 {}\n", -PI);
        let (_, theta) = parse_graph_str(&text).unwrap();
        assert_eq!(theta.angle(0), PI);
    }

    #[test]
    fn round_trips_random_graphs() {
        for seed in 0..20 {
            let g = random_graph(7, 0.5, seed).unwrap();
            let theta = ThetaAssignment::random(&g, seed);
            let text = format_graph(&g, &theta);
            let (g2, theta2) = parse_graph_str(&text).unwrap();
            assert_eq!(g, g2);
            for (a, b) in theta.angles().iter().zip(theta2.angles()) {
                assert_eq!(a, b, "seed {}", seed);
            }
        }
    }
}
