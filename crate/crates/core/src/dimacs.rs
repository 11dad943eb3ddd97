//! DIMACS `max` and `asn` text formats. Node ids are 1-indexed on disk.

use std::fmt::Write as _;

use thiserror::Error;

use crate::assign::{AssignmentInstance, InstanceError};
use crate::network::{build_network, ArcSpec, FlowNetwork, NetworkError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    /// `line` is the last line of the file.
    #[error("line {line}: missing problem line")]
    MissingProblemLine { line: usize },
    #[error("line {line}: second problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: unsupported problem kind `{kind}`")]
    UnknownProblem { line: usize, kind: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: record before the problem line")]
    BeforeProblemLine { line: usize },
    #[error("line {line}: missing {which} designator")]
    MissingTerminal { line: usize, which: &'static str },
    /// Reported against the problem line.
    #[error("line {line}: arc count mismatch: header declares {declared}, found {found}")]
    ArcCountMismatch { line: usize, declared: usize, found: usize },
    #[error("line {line}: negative capacity {capacity}")]
    NegativeCapacity { line: usize, capacity: i64 },
    #[error("line {line}: node {node} out of range 1..={nodes}")]
    NodeOutOfRange { line: usize, node: usize, nodes: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: source and sink are the same node")]
    SourceIsSink { line: usize },
    #[error("line {line}: sides differ: {x} nodes marked in X, {y} left for Y")]
    UnbalancedSides { line: usize, x: usize, y: usize },
    #[error("line {line}: same-side edge ({tail}, {head})")]
    SameSide { line: usize, tail: usize, head: usize },
    #[error("line {line}: reversed edge ({tail}, {head}) runs from Y to X")]
    Reversed { line: usize, tail: usize, head: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Either kind of parsed file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceFile {
    MaxFlow(FlowNetwork),
    Assignment(AssignmentInstance),
}

impl InstanceFile {
    pub fn to_dimacs(&self) -> String {
        match self {
            InstanceFile::MaxFlow(net) => serialize_max(net),
            InstanceFile::Assignment(inst) => serialize_asn(inst),
        }
    }
}

/// Parses a file of either kind, dispatching on the problem line.
pub fn parse_dimacs(text: &str) -> Result<InstanceFile, DimacsError> {
    let kind = records(text).find(|(_, f)| f[0] == "p").map(|(line, f)| (line, f.get(1).copied()));
    match kind {
        None => Err(DimacsError::MissingProblemLine { line: last_line(text) }),
        Some((_, Some("max"))) => parse_dimacs_max(text).map(InstanceFile::MaxFlow),
        Some((_, Some("asn"))) => parse_dimacs_asn(text).map(InstanceFile::Assignment),
        Some((line, other)) => Err(DimacsError::UnknownProblem { line, kind: other.unwrap_or("").to_string() }),
    }
}

fn last_line(text: &str) -> usize {
    text.lines().count()
}

/// Non-comment, non-blank lines as (1-based line number, fields).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => None,
            _ => Some((i + 1, fields)),
        }
    })
}

fn field<T: std::str::FromStr>(fields: &[&str], i: usize, line: usize, what: &str) -> Result<T, DimacsError> {
    let raw = fields.get(i).ok_or_else(|| DimacsError::Malformed { line, reason: format!("missing {what}") })?;
    raw.parse().map_err(|_| DimacsError::Malformed { line, reason: format!("bad {what} `{raw}`") })
}

fn expect_len(fields: &[&str], len: usize, line: usize) -> Result<(), DimacsError> {
    if fields.len() != len {
        return Err(DimacsError::Malformed { line, reason: format!("expected {len} fields, got {}", fields.len()) });
    }
    Ok(())
}

fn node_id(fields: &[&str], i: usize, line: usize, nodes: usize) -> Result<usize, DimacsError> {
    let node: usize = field(fields, i, line, "node id")?;
    if node == 0 || node > nodes {
        return Err(DimacsError::NodeOutOfRange { line, node, nodes });
    }
    Ok(node - 1)
}

struct Header {
    line: usize,
    nodes: usize,
    arcs: usize,
}

fn problem_line(fields: &[&str], line: usize, want: &str, header: &Option<Header>) -> Result<Header, DimacsError> {
    if header.is_some() {
        return Err(DimacsError::DuplicateProblemLine { line });
    }
    expect_len(fields, 4, line)?;
    if fields[1] != want {
        return Err(DimacsError::UnknownProblem { line, kind: fields[1].to_string() });
    }
    Ok(Header { line, nodes: field(fields, 2, line, "node count")?, arcs: field(fields, 3, line, "arc count")? })
}

pub fn parse_dimacs_max(text: &str) -> Result<FlowNetwork, DimacsError> {
    let mut header: Option<Header> = None;
    let (mut source, mut sink) = (None, None);
    let mut arcs = Vec::new();

    for (line, f) in records(text) {
        match f[0] {
            "p" => header = Some(problem_line(&f, line, "max", &header)?),
            tag @ ("n" | "a") => {
                let nodes = header.as_ref().ok_or(DimacsError::BeforeProblemLine { line })?.nodes;
                if tag == "n" {
                    expect_len(&f, 3, line)?;
                    let v = node_id(&f, 1, line, nodes)?;
                    match f[2] {
                        "s" => source = Some((v, line)),
                        "t" => sink = Some((v, line)),
                        other => {
                            return Err(DimacsError::Malformed { line, reason: format!("unknown designator `{other}`") })
                        }
                    }
                } else {
                    expect_len(&f, 4, line)?;
                    let tail = node_id(&f, 1, line, nodes)?;
                    let head = node_id(&f, 2, line, nodes)?;
                    let capacity: i64 = field(&f, 3, line, "capacity")?;
                    if capacity < 0 {
                        return Err(DimacsError::NegativeCapacity { line, capacity });
                    }
                    if tail == head {
                        return Err(DimacsError::SelfLoop { line, node: tail + 1 });
                    }
                    arcs.push(ArcSpec::new(tail, head, capacity));
                }
            }
            other => return Err(DimacsError::Malformed { line, reason: format!("unknown record `{other}`") }),
        }
    }

    let eof = last_line(text);
    let header = header.ok_or(DimacsError::MissingProblemLine { line: eof })?;
    let (s, _) = source.ok_or(DimacsError::MissingTerminal { line: eof, which: "source" })?;
    let (t, t_line) = sink.ok_or(DimacsError::MissingTerminal { line: eof, which: "sink" })?;
    if s == t {
        return Err(DimacsError::SourceIsSink { line: t_line });
    }
    if arcs.len() != header.arcs {
        return Err(DimacsError::ArcCountMismatch { line: header.line, declared: header.arcs, found: arcs.len() });
    }
    Ok(build_network(arcs, header.nodes, s, t)?)
}

pub fn serialize_max(net: &FlowNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p max {} {}", net.node_count(), net.input_len());
    let _ = writeln!(out, "n {} s", net.source() + 1);
    let _ = writeln!(out, "n {} t", net.sink() + 1);
    for i in 0..net.input_len() {
        let a = net.arc(net.input_arc(i));
        let _ = writeln!(out, "a {} {} {}", a.tail + 1, a.head + 1, a.capacity);
    }
    out
}

/// X is the set of ids listed on `n` lines; Y is every other id. Both sides
/// are renumbered in increasing id order.
pub fn parse_dimacs_asn(text: &str) -> Result<AssignmentInstance, DimacsError> {
    let mut header: Option<Header> = None;
    let mut in_x: Vec<bool> = Vec::new();
    let mut edges = Vec::new();

    for (line, f) in records(text) {
        match f[0] {
            "p" => {
                let h = problem_line(&f, line, "asn", &header)?;
                in_x = vec![false; h.nodes];
                header = Some(h);
            }
            "n" => {
                let nodes = header.as_ref().ok_or(DimacsError::BeforeProblemLine { line })?.nodes;
                expect_len(&f, 2, line)?;
                in_x[node_id(&f, 1, line, nodes)?] = true;
            }
            "a" => {
                let nodes = header.as_ref().ok_or(DimacsError::BeforeProblemLine { line })?.nodes;
                expect_len(&f, 4, line)?;
                let tail = node_id(&f, 1, line, nodes)?;
                let head = node_id(&f, 2, line, nodes)?;
                let weight: i64 = field(&f, 3, line, "weight")?;
                edges.push((line, tail, head, weight));
            }
            other => return Err(DimacsError::Malformed { line, reason: format!("unknown record `{other}`") }),
        }
    }

    let header = header.ok_or(DimacsError::MissingProblemLine { line: last_line(text) })?;
    let x = in_x.iter().filter(|&&b| b).count();
    let y = header.nodes - x;
    if x != y {
        return Err(DimacsError::UnbalancedSides { line: header.line, x, y });
    }
    if edges.len() != header.arcs {
        return Err(DimacsError::ArcCountMismatch { line: header.line, declared: header.arcs, found: edges.len() });
    }

    let mut side_index = vec![0; header.nodes];
    let (mut nx, mut ny) = (0, 0);
    for v in 0..header.nodes {
        let counter = if in_x[v] { &mut nx } else { &mut ny };
        side_index[v] = *counter;
        *counter += 1;
    }
    let mut out = Vec::with_capacity(edges.len());
    for (line, tail, head, weight) in edges {
        match (in_x[tail], in_x[head]) {
            (true, false) => out.push((side_index[tail], side_index[head], weight)),
            (false, true) => return Err(DimacsError::Reversed { line, tail: tail + 1, head: head + 1 }),
            _ => return Err(DimacsError::SameSide { line, tail: tail + 1, head: head + 1 }),
        }
    }
    Ok(AssignmentInstance::new(x, out)?)
}

/// X occupies ids `1..=n`, Y ids `n+1..=2n`.
pub fn serialize_asn(inst: &AssignmentInstance) -> String {
    let n = inst.n();
    let mut out = String::new();
    let _ = writeln!(out, "p asn {} {}", 2 * n, inst.edges().len());
    for x in 1..=n {
        let _ = writeln!(out, "n {x}");
    }
    for e in inst.edges() {
        let _ = writeln!(out, "a {} {} {}", e.x + 1, n + e.y + 1, e.weight);
    }
    out
}
