//! Line-based text format for colored graphs.
//!
//! ```text
//! parity even
//! ext 0 1 2
//! int 3
//! solid (1) 0-1
//! dashed (2) 0-3 (3) 1-3 (4) 2-3
//! ```
//!
//! In the odd case the edge labels only name edges; the coloring is given by
//! `orient <label> <from>-><to>` and `vlabel <id>=<n>` lines. Blocks are
//! separated by blank lines and `#` starts a comment.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use super::{validate, ColoredGraph, Edge, EdgeKind, GraphClass, Parity, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("graph starting at line {line} is invalid: {message}")]
    Validation { line: usize, message: String },
}

impl ParseError {
    fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

struct RawEdge {
    label: u32,
    kind: EdgeKind,
    ends: [String; 2],
    line: usize,
    column: usize,
}

#[derive(Default)]
struct Block {
    start: usize,
    parity: Option<Parity>,
    ext: Vec<(String, usize, usize)>,
    int: Vec<(String, usize, usize)>,
    edges: Vec<RawEdge>,
    orient: Vec<(u32, String, String, usize, usize)>,
    vlabel: Vec<(String, u32, usize, usize)>,
}

/// Tokens of a line together with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_label(tok: &str, line: usize, column: usize) -> Result<u32, ParseError> {
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| {
            ParseError::syntax(
                line,
                column,
                format!("expected an edge label like `(1)`, found `{tok}`"),
            )
        })?;
    inner.parse::<u32>().ok().filter(|&l| l > 0).ok_or_else(|| {
        ParseError::syntax(
            line,
            column,
            format!("edge label `{tok}` is not a positive integer"),
        )
    })
}

fn split_pair<'a>(
    tok: &'a str,
    sep: &str,
    line: usize,
    column: usize,
) -> Result<(&'a str, &'a str), ParseError> {
    tok.split_once(sep)
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| {
            ParseError::syntax(
                line,
                column,
                format!("expected `<id>{sep}<id>`, found `{tok}`"),
            )
        })
}

/// Parses every graph in `input`; each one is validated as a BCR graph.
pub fn parse_graphs(input: &str) -> Result<Vec<ColoredGraph>, ParseError> {
    let mut blocks = Vec::new();
    let mut current: Option<Block> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        let block = current.get_or_insert_with(|| Block {
            start: line_no,
            ..Block::default()
        });
        let (col, keyword) = toks[0];
        let args = &toks[1..];
        match keyword {
            "parity" => {
                if block.parity.is_some() {
                    return Err(ParseError::syntax(line_no, col, "duplicate `parity` line"));
                }
                let (c, value) = args
                    .first()
                    .copied()
                    .ok_or_else(|| ParseError::syntax(line_no, col, "`parity` needs a value"))?;
                block.parity = Some(
                    value
                        .parse()
                        .map_err(|e: String| ParseError::syntax(line_no, c, e))?,
                );
            }
            "ext" | "int" => {
                let list = if keyword == "ext" {
                    &mut block.ext
                } else {
                    &mut block.int
                };
                list.extend(args.iter().map(|&(c, t)| (t.to_string(), line_no, c)));
            }
            "solid" | "dashed" => {
                let kind = if keyword == "solid" {
                    EdgeKind::Solid
                } else {
                    EdgeKind::Dashed
                };
                let mut i = 0;
                while i < args.len() {
                    let (c, tok) = args[i];
                    let (label, pair_idx) = if tok.starts_with('(') {
                        (Some(parse_label(tok, line_no, c)?), i + 1)
                    } else {
                        (None, i)
                    };
                    let &(pc, pair) = args.get(pair_idx).ok_or_else(|| {
                        ParseError::syntax(line_no, c, "edge label without endpoints")
                    })?;
                    let (a, b) = split_pair(pair, "-", line_no, pc)?;
                    let label = match label {
                        Some(l) => l,
                        None => {
                            return Err(ParseError::syntax(
                                line_no,
                                pc,
                                format!("edge `{pair}` has no label"),
                            ))
                        }
                    };
                    block.edges.push(RawEdge {
                        label,
                        kind,
                        ends: [a.to_string(), b.to_string()],
                        line: line_no,
                        column: c,
                    });
                    i = pair_idx + 1;
                }
            }
            "orient" => {
                if args.len() != 2 {
                    return Err(ParseError::syntax(
                        line_no,
                        col,
                        "expected `orient <label> <from>-><to>`",
                    ));
                }
                let label = args[0]
                    .1
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<u32>()
                    .map_err(|_| {
                        ParseError::syntax(
                            line_no,
                            args[0].0,
                            format!("bad edge label `{}`", args[0].1),
                        )
                    })?;
                let (a, b) = split_pair(args[1].1, "->", line_no, args[1].0)?;
                block
                    .orient
                    .push((label, a.to_string(), b.to_string(), line_no, args[1].0));
            }
            "vlabel" => {
                for &(c, tok) in args {
                    let (id, n) = split_pair(tok, "=", line_no, c)?;
                    let n = n.parse::<u32>().ok().filter(|&n| n > 0).ok_or_else(|| {
                        ParseError::syntax(line_no, c, format!("bad vertex label `{tok}`"))
                    })?;
                    block.vlabel.push((id.to_string(), n, line_no, c));
                }
            }
            other => {
                return Err(ParseError::syntax(
                    line_no,
                    col,
                    format!("unknown keyword `{other}`"),
                ))
            }
        }
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    blocks.into_iter().map(build).collect()
}

fn build(block: Block) -> Result<ColoredGraph, ParseError> {
    let start = block.start;
    let parity = block
        .parity
        .ok_or_else(|| ParseError::syntax(start, 1, "graph block has no `parity` line"))?;

    // Vertex ids in order of appearance: externals, then internals.
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut kinds = Vec::new();
    for (list, kind) in [
        (&block.ext, VertexKind::External),
        (&block.int, VertexKind::Internal),
    ] {
        for (id, line, col) in list {
            if ids.insert(id.clone(), kinds.len()).is_some() {
                return Err(ParseError::syntax(
                    *line,
                    *col,
                    format!("duplicate vertex id `{id}`"),
                ));
            }
            kinds.push(kind);
        }
    }
    let lookup = |id: &str, line: usize, col: usize| {
        ids.get(id)
            .copied()
            .ok_or_else(|| ParseError::syntax(line, col, format!("unknown vertex id `{id}`")))
    };

    let mut by_label: BTreeMap<u32, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for (i, e) in block.edges.iter().enumerate() {
        if by_label.insert(e.label, i).is_some() {
            return Err(ParseError::syntax(
                e.line,
                e.column,
                format!("duplicate edge label ({})", e.label),
            ));
        }
        let a = lookup(&e.ends[0], e.line, e.column)?;
        let b = lookup(&e.ends[1], e.line, e.column)?;
        edges.push(Edge {
            kind: e.kind,
            ends: [a, b],
        });
    }
    let m = edges.len() as u32;
    if let Some((&label, &i)) = by_label.iter().find(|(&l, _)| l > m) {
        let e = &block.edges[i];
        return Err(ParseError::syntax(
            e.line,
            e.column,
            format!("edge label ({label}) exceeds the edge count {m}"),
        ));
    }

    let graph = match parity {
        Parity::Even => {
            if let Some((l, ..)) = block.orient.first() {
                return Err(ParseError::syntax(
                    block.orient[0].3,
                    1,
                    format!("`orient {l}` is only used in the odd case"),
                ));
            }
            if let Some((_, _, line, col)) = block.vlabel.first() {
                return Err(ParseError::syntax(
                    *line,
                    *col,
                    "`vlabel` is only used in the odd case",
                ));
            }
            // Edge number = position.
            let ordered: Vec<Edge> = by_label.values().map(|&i| edges[i]).collect();
            ColoredGraph::from_parts(Parity::Even, kinds, ordered)
        }
        Parity::Odd => {
            let mut oriented = vec![false; edges.len()];
            for (label, from, to, line, col) in &block.orient {
                let &i = by_label.get(label).ok_or_else(|| {
                    ParseError::syntax(
                        *line,
                        *col,
                        format!("`orient` names unknown edge ({label})"),
                    )
                })?;
                let (a, b) = (lookup(from, *line, *col)?, lookup(to, *line, *col)?);
                let [x, y] = edges[i].ends;
                if (a, b) == (x, y) {
                } else if (a, b) == (y, x) {
                    edges[i].ends = [a, b];
                } else {
                    return Err(ParseError::syntax(
                        *line,
                        *col,
                        format!("orientation of ({label}) does not match its endpoints"),
                    ));
                }
                if std::mem::replace(&mut oriented[i], true) {
                    return Err(ParseError::syntax(
                        *line,
                        *col,
                        format!("edge ({label}) is oriented twice"),
                    ));
                }
            }
            if let Some(i) = oriented.iter().position(|o| !o) {
                let e = &block.edges[i];
                return Err(ParseError::syntax(
                    e.line,
                    e.column,
                    format!("edge ({}) has no orientation", e.label),
                ));
            }
            let n = kinds.len();
            let mut position = vec![usize::MAX; n];
            let mut used = vec![false; n];
            for (id, label, line, col) in &block.vlabel {
                let v = lookup(id, *line, *col)?;
                let l = *label as usize;
                if l > n || used[l - 1] {
                    return Err(ParseError::syntax(
                        *line,
                        *col,
                        format!("vertex label {l} is out of range or repeated"),
                    ));
                }
                if position[v] != usize::MAX {
                    return Err(ParseError::syntax(
                        *line,
                        *col,
                        format!("vertex `{id}` is labeled twice"),
                    ));
                }
                used[l - 1] = true;
                position[v] = l - 1;
            }
            if position.contains(&usize::MAX) {
                return Err(ParseError::syntax(
                    start,
                    1,
                    "every vertex needs a `vlabel` in the odd case",
                ));
            }
            let ordered: Vec<Edge> = by_label.values().map(|&i| edges[i]).collect();
            ColoredGraph::from_parts(Parity::Odd, kinds, ordered).relabel_vertices(&position)
        }
    };

    let report = validate(&graph, GraphClass::Bcr);
    if !report.is_empty() {
        let message = report
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(ParseError::Validation {
            line: start,
            message,
        });
    }
    Ok(graph)
}

/// Prints a graph; vertex ids are positions and edge labels are `index + 1`.
pub fn print_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "parity {}", g.parity()).unwrap();
    let ext: Vec<String> = g.externals().map(|v| v.to_string()).collect();
    writeln!(out, "ext {}", ext.join(" ")).unwrap();
    let int: Vec<String> = g.internals().map(|v| v.to_string()).collect();
    if !int.is_empty() {
        writeln!(out, "int {}", int.join(" ")).unwrap();
    }
    for (kind, word) in [(EdgeKind::Solid, "solid"), (EdgeKind::Dashed, "dashed")] {
        let items: Vec<String> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == kind)
            .map(|(i, e)| {
                let (a, b) = match g.parity() {
                    Parity::Even => (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])),
                    Parity::Odd => (e.ends[0], e.ends[1]),
                };
                format!("({}) {a}-{b}", i + 1)
            })
            .collect();
        if !items.is_empty() {
            writeln!(out, "{word} {}", items.join(" ")).unwrap();
        }
    }
    if g.parity() == Parity::Odd {
        for (i, e) in g.edges().iter().enumerate() {
            writeln!(out, "orient {} {}->{}", i + 1, e.ends[0], e.ends[1]).unwrap();
        }
        for v in 0..g.vertex_count() {
            writeln!(out, "vlabel {v}={}", v + 1).unwrap();
        }
    }
    out
}

/// Prints several graphs separated by blank lines.
pub fn print_graphs<'a>(graphs: impl IntoIterator<Item = &'a ColoredGraph>) -> String {
    graphs
        .into_iter()
        .map(print_graph)
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strut_file() {
        let gs = parse_graphs("parity even\next a b\ndashed (1) a-b\n").unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].certificate(), "e:xx:d0-1");
    }

    #[test]
    fn duplicate_label_is_a_syntax_error() {
        let err = parse_graphs("parity even\next 0 1 2 3\nsolid (1) 0-1\ndashed (2) 0-2 (2) 1-3\n")
            .unwrap_err();
        match err {
            ParseError::Syntax { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("(2)"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_graph_is_a_validation_error() {
        let err = parse_graphs("parity even\next 0 1 2\ndashed (1) 0-1 (2) 0-2\n").unwrap_err();
        assert!(
            matches!(err, ParseError::Validation { line: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn unknown_vertex_reports_column() {
        let err = parse_graphs("parity even\next 0 1\ndashed (1) 0-7\n").unwrap_err();
        assert_eq!(err, ParseError::syntax(3, 8, "unknown vertex id `7`"));
    }

    #[test]
    fn odd_block_round_trip() {
        let text = "parity odd\next 0 1 2\nint 3\nsolid (1) 0-1\ndashed (2) 0-3 (3) 1-3 (4) 2-3\norient 1 1->0\norient 2 3->0\norient 3 1->3\norient 4 2->3\nvlabel 0=2 1=1 2=4 3=3\n";
        let gs = parse_graphs(text).unwrap();
        let g = &gs[0];
        assert_eq!(g.parity(), Parity::Odd);
        // vertex `0` carries label 2, so it sits at position 1.
        assert_eq!(g.edges()[0].ends, [0, 1]);
        assert_eq!(g.edges()[1].ends, [2, 1]);
        let printed = print_graph(g);
        assert_eq!(parse_graphs(&printed).unwrap()[0], *g);
    }

    #[test]
    fn multiple_blocks_and_comments() {
        let text = "# two graphs\nparity even\next 0 1\ndashed (1) 0-1\n\nparity even\next 0 1\nsolid (1) 0-1\ndashed (2) 0-1\n";
        assert_eq!(parse_graphs(text).unwrap().len(), 2);
    }
}
