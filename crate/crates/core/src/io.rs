//! Text formats: point sets (`id,x,y`) and edge lists (`id_a,id_b`).
//!
//! Ids are either unquoted decimal integers or double-quoted strings (with
//! `""` as an escaped quote); quoted ids compare lexicographically by bytes.
//! Blank lines and lines starting with `#` are ignored, as is a leading
//! `id,x,y` or `id_a,id_b` header.

use std::fmt::Write as _;

use crate::error::{Result, TopoError};
use crate::geometry::{Point, PointSet};
use crate::graph::{Adjacency, Topology, UndirectedGraph};
use crate::id::NodeId;

fn parse_err(line: usize, msg: impl Into<String>) -> TopoError {
    TopoError::Parse {
        line,
        msg: msg.into(),
    }
}

// Splits off one field; returns the id and the remainder after the comma.
fn take_id(s: &str, line: usize) -> Result<(NodeId, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('"') {
        let mut label = String::new();
        let mut chars = rest.char_indices();
        while let Some((k, c)) = chars.next() {
            if c == '"' {
                if rest[k + 1..].starts_with('"') {
                    label.push('"');
                    chars.next();
                    continue;
                }
                let after = rest[k + 1..].trim_start();
                let after = after
                    .strip_prefix(',')
                    .ok_or_else(|| parse_err(line, "expected `,` after quoted id"))?;
                return Ok((NodeId::label(label), after));
            }
            label.push(c);
        }
        Err(parse_err(line, "unterminated quoted id"))
    } else {
        let (field, rest) = s
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected more fields"))?;
        let n = field
            .trim()
            .parse::<u64>()
            .map_err(|_| parse_err(line, format!("bad id `{}`", field.trim())))?;
        Ok((NodeId::Num(n), rest))
    }
}

fn take_last_id(s: &str, line: usize) -> Result<NodeId> {
    // reuse the field splitter by appending a terminator
    let owned = format!("{},", s.trim_end());
    let (id, rest) = take_id(&owned, line)?;
    if !rest.trim().is_empty() {
        return Err(parse_err(line, "trailing fields"));
    }
    Ok(id)
}

fn content_lines<'a>(text: &'a str, header: &str) -> impl Iterator<Item = (usize, &'a str)> {
    let header = header.to_string();
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .filter(move |(k, (_, l))| !(*k == 0 && l.replace(' ', "") == header))
        .map(|(_, x)| x)
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut entries = Vec::new();
    for (line, l) in content_lines(text, "id,x,y") {
        let (id, rest) = take_id(l, line)?;
        let mut coords = rest.split(',');
        let mut coord = |name: &str| -> Result<f64> {
            let f = coords
                .next()
                .ok_or_else(|| parse_err(line, format!("missing {name}")))?
                .trim();
            f.parse::<f64>()
                .map_err(|_| parse_err(line, format!("bad {name} `{f}`")))
        };
        let x = coord("x")?;
        let y = coord("y")?;
        if coords.next().is_some() {
            return Err(parse_err(line, "trailing fields"));
        }
        entries.push((id, Point::new(x, y)));
    }
    PointSet::new(entries)
}

pub fn format_points(points: &PointSet) -> String {
    let mut out = String::new();
    for (id, p) in points.iter() {
        writeln!(out, "{},{:?},{:?}", id.to_csv_field(), p.x, p.y).unwrap();
    }
    out
}

pub fn parse_edges(text: &str) -> Result<Vec<(NodeId, NodeId)>> {
    content_lines(text, "id_a,id_b")
        .map(|(line, l)| {
            let (a, rest) = take_id(l, line)?;
            Ok((a, take_last_id(rest, line)?))
        })
        .collect()
}

/// One `id_a,id_b` line per edge with `id_a < id_b`, sorted.
pub fn format_edges<G: UndirectedGraph + ?Sized>(g: &G) -> String {
    let ids = g.ids();
    let mut out = String::new();
    for a in 0..g.node_count() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            writeln!(out, "{},{}", ids[a].to_csv_field(), ids[b].to_csv_field()).unwrap();
        }
    }
    out
}

/// Reads an edge list as a topology over `source`'s nodes.
pub fn parse_topology(text: &str, source: &Adjacency) -> Result<Topology> {
    Topology::from_id_edges(source, parse_edges(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_numeric_and_quoted_ids() {
        let pts = parse_points("id,x,y\n2,0.5,0.25\n# comment\n\n\"b,\"\"x\",1,2\n1,-1e-3,3\n").unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts.ids()[0], NodeId::Num(1));
        assert_eq!(pts.ids()[2], NodeId::label("b,\"x"));
        assert_eq!(pts.position(&NodeId::Num(2)), Some(Point::new(0.5, 0.25)));
    }

    #[test]
    fn round_trip_points() {
        let text = "1,0.1,0.2\n2,0.30000000000000004,1e-300\n\"mac:01\",5.0,6.0\n";
        let pts = parse_points(text).unwrap();
        assert_eq!(format_points(&pts), text);
        assert_eq!(parse_points(&format_points(&pts)).unwrap(), pts);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_points("1,0,0\n2,zero,0\n") {
            Err(TopoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_points("1,0\n").is_err());
        assert!(parse_points("1,0,0,0\n").is_err());
        assert!(parse_points("\"open,0,0\n").is_err());
        assert!(parse_points("1,0,0\n1,2,2\n").is_err());
    }

    #[test]
    fn edges_round_trip() {
        let adj = Adjacency::from_edges(
            vec![NodeId::Num(1), NodeId::Num(2), NodeId::label("z")],
            vec![(NodeId::label("z"), NodeId::Num(1)), (NodeId::Num(2), NodeId::Num(1))],
        )
        .unwrap();
        let text = format_edges(&adj);
        assert_eq!(text, "1,2\n1,\"z\"\n");
        let back = parse_topology(&text, &adj).unwrap();
        assert_eq!(back.as_adjacency(), &adj);
    }
}
