//! Text formats: instances, solutions and PACE `.td` decompositions.
//!
//! Instance files look like
//!
//! ```text
//! nk 1
//! # meta optional free-form name
//! directed 0
//! n 2
//! vertex 0 1 3
//! vertex 1 2 4
//! edge 0 1
//! knapsack 3
//! demand 5
//! ```
//!
//! Keys may appear in any order after the magic line, and `#` comments may
//! appear anywhere. The first `# meta` comment names the instance.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{NkError, Result};
use crate::instance::{Instance, RawInstance, VertexId, Violation, validate_instance};
use crate::treedecomp::TreeDecomposition;

const MAGIC: &str = "nk 1";
const META: &str = "# meta";

fn err(line: usize, message: impl Into<String>) -> NkError {
    NkError::Parse { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(err(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

/// Writes the canonical form: vertices ascending, edges sorted.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    if !inst.meta().is_empty() {
        let meta = inst.meta().replace(['\n', '\r'], " ");
        let _ = writeln!(out, "{META} {meta}");
    }
    let _ = writeln!(out, "directed {}", u8::from(inst.is_directed()));
    let _ = writeln!(out, "n {}", inst.num_vertices());
    for v in 0..inst.num_vertices() {
        let _ = writeln!(out, "vertex {v} {} {}", inst.weight(v), inst.profit(v));
    }
    for &(u, v) in inst.graph().edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    let _ = writeln!(out, "knapsack {}", inst.knapsack());
    let _ = writeln!(out, "demand {}", inst.demand());
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((l, other)) => return Err(err(l, format!("expected `{MAGIC}`, found `{other}`"))),
        None => return Err(err(1, "empty file")),
    }
    let mut meta: Option<String> = None;
    let mut directed: Option<bool> = None;
    let mut n: Option<(usize, usize)> = None;
    let mut knapsack: Option<u64> = None;
    let mut demand: Option<u64> = None;
    let mut vertices: Vec<(usize, VertexId, u64, u64)> = Vec::new();
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    let mut ids = HashSet::new();

    fn once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
        if slot.is_some() {
            return Err(err(line, format!("duplicate `{key}`")));
        }
        *slot = Some(value);
        Ok(())
    }

    for (line, text) in lines {
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            if meta.is_none() {
                if let Some(m) = text.strip_prefix(META) {
                    if m.is_empty() || m.starts_with(' ') {
                        meta = Some(m.trim().to_string());
                    }
                }
            }
            continue;
        }
        let mut toks = text.split_whitespace();
        let key = toks.next().unwrap_or_default();
        match key {
            "directed" => {
                let flag: u8 = number(line, toks.next(), "directed flag")?;
                if flag > 1 {
                    return Err(err(line, "directed flag must be 0 or 1"));
                }
                once(&mut directed, flag == 1, line, key)?;
            }
            "n" => once(&mut n, (number(line, toks.next(), "vertex count")?, line), line, key)?,
            "knapsack" => once(&mut knapsack, number(line, toks.next(), "knapsack size")?, line, key)?,
            "demand" => once(&mut demand, number(line, toks.next(), "demand")?, line, key)?,
            "vertex" => {
                let id = number(line, toks.next(), "vertex id")?;
                let w = number(line, toks.next(), "weight")?;
                let p = number(line, toks.next(), "profit")?;
                if !ids.insert(id) {
                    return Err(err(line, format!("duplicate vertex {id}")));
                }
                vertices.push((line, id, w, p));
            }
            "edge" => {
                let u = number(line, toks.next(), "edge endpoint")?;
                let v = number(line, toks.next(), "edge endpoint")?;
                edges.push((line, u, v));
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
        no_more(line, toks)?;
    }
    let last = text.lines().count().max(1);
    let (n, _) = n.ok_or_else(|| err(last, "missing `n`"))?;
    let directed = directed.ok_or_else(|| err(last, "missing `directed`"))?;
    let knapsack = knapsack.ok_or_else(|| err(last, "missing `knapsack`"))?;
    let demand = demand.ok_or_else(|| err(last, "missing `demand`"))?;

    let mut weights: Vec<Option<(u64, u64)>> = vec![None; n];
    for &(line, id, w, p) in &vertices {
        if id >= n {
            return Err(err(line, format!("vertex id {id} out of range (n = {n})")));
        }
        weights[id] = Some((w, p));
    }
    if let Some(missing) = weights.iter().position(Option::is_none) {
        return Err(err(last, format!("missing vertex {missing}")));
    }
    let i64_of = |x: u64, line: usize| i64::try_from(x).map_err(|_| err(line, "value exceeds 2^63 - 1"));
    let mut raw = RawInstance {
        directed,
        n,
        edges: Vec::with_capacity(edges.len()),
        weights: Vec::with_capacity(n),
        profits: Vec::with_capacity(n),
        knapsack: i64_of(knapsack, last)?,
        demand: i64_of(demand, last)?,
        meta: meta.unwrap_or_default(),
    };
    for (w, p) in weights.into_iter().flatten() {
        raw.weights.push(i64_of(w, last)?);
        raw.profits.push(i64_of(p, last)?);
    }
    let mut seen = HashSet::new();
    for &(line, u, v) in &edges {
        for x in [u, v] {
            if x >= n {
                return Err(err(line, format!("unknown vertex {x}")));
            }
        }
        let key = if directed || u <= v { (u, v) } else { (v, u) };
        if !seen.insert(key) {
            return Err(err(line, format!("{}", Violation::ParallelEdge(key.0, key.1))));
        }
        raw.edges.push((u, v));
    }
    let report = validate_instance(&raw);
    if !report.is_ok() {
        return Err(NkError::InvalidInstance(report));
    }
    Instance::from_raw(&raw)
}

pub fn serialize_solution(selection: &[VertexId]) -> String {
    let mut sel = selection.to_vec();
    sel.sort_unstable();
    let mut out = format!("solution {}\n", sel.len());
    for v in sel {
        let _ = writeln!(out, "pick {v}");
    }
    out
}

/// Parses a solution file; ids must be distinct and, when `n` is given,
/// below it.
pub fn parse_solution(text: &str, n: Option<usize>) -> Result<Vec<VertexId>> {
    let mut count: Option<usize> = None;
    let mut picks = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut toks = t.split_whitespace();
        match toks.next() {
            Some("solution") if count.is_none() => count = Some(number(line, toks.next(), "pick count")?),
            Some("pick") if count.is_some() => {
                let v: VertexId = number(line, toks.next(), "vertex id")?;
                if n.is_some_and(|n| v >= n) {
                    return Err(err(line, format!("unknown vertex {v}")));
                }
                if !seen.insert(v) {
                    return Err(err(line, format!("duplicate pick {v}")));
                }
                picks.push(v);
            }
            Some(other) => return Err(err(line, format!("unexpected `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
        no_more(line, toks)?;
    }
    let count = count.ok_or_else(|| err(1, "missing `solution` header"))?;
    if count != picks.len() {
        return Err(err(text.lines().count().max(1), format!("expected {count} picks, found {}", picks.len())));
    }
    Ok(picks)
}

/// PACE 2017 format: 1-based bag ids and vertices.
pub fn serialize_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.num_nodes(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<VertexId>>> = Vec::new();
    let mut tree = Vec::new();
    let one_based = |line: usize, tok: Option<&str>, what: &str| -> Result<usize> {
        let x: usize = number(line, tok, what)?;
        x.checked_sub(1).ok_or_else(|| err(line, format!("{what} must be at least 1")))
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let mut toks = t.split_whitespace().peekable();
        match *toks.peek().expect("nonempty line") {
            "s" => {
                toks.next();
                if toks.next() != Some("td") {
                    return Err(err(line, "expected `s td <bags> <width+1> <n>`"));
                }
                let k = number(line, toks.next(), "bag count")?;
                let w = number(line, toks.next(), "bag size")?;
                let n = number(line, toks.next(), "vertex count")?;
                no_more(line, toks)?;
                header = Some((k, w, n));
                bags = vec![None; k];
            }
            _ if header.is_none() => return Err(err(line, "missing `s td` header")),
            "b" => {
                toks.next();
                let id = one_based(line, toks.next(), "bag id")?;
                let (k, _, n) = header.expect("checked");
                if id >= k {
                    return Err(err(line, format!("bag id {} out of range", id + 1)));
                }
                let mut bag = Vec::new();
                for tok in toks {
                    let v = one_based(line, Some(tok), "vertex")?;
                    if v >= n {
                        return Err(err(line, format!("unknown vertex {}", v + 1)));
                    }
                    bag.push(v);
                }
                if bags[id].is_some() {
                    return Err(err(line, format!("duplicate bag {}", id + 1)));
                }
                bags[id] = Some(bag);
            }
            _ => {
                let a = one_based(line, toks.next(), "bag id")?;
                let b = one_based(line, toks.next(), "bag id")?;
                no_more(line, toks)?;
                tree.push((a, b));
            }
        }
    }
    let (k, _, _) = header.ok_or_else(|| err(1, "missing `s td` header"))?;
    if let Some(missing) = bags.iter().position(Option::is_none) {
        return Err(err(text.lines().count().max(1), format!("missing bag {}", missing + 1)));
    }
    if tree.iter().any(|&(a, b)| a >= k || b >= k) {
        return Err(err(text.lines().count().max(1), "tree edge mentions an unknown bag"));
    }
    Ok(TreeDecomposition::new(bags.into_iter().flatten().collect(), tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Graph;
    use crate::treedecomp::heuristic_td;

    const MINIMAL: &str = "nk 1\ndirected 0\nn 1\nvertex 0 1 1\nknapsack 0\ndemand 0\n";

    #[test]
    fn minimal_round_trip() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(serialize_instance(&inst), MINIMAL);
    }

    #[test]
    fn unknown_vertex_reports_line() {
        let text = "nk 1\ndirected 1\nn 2\nvertex 0 1 1\nvertex 1 1 1\nedge 0 9\nknapsack 1\ndemand 0\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.to_string(), "line 6: unknown vertex 9");
    }

    #[test]
    fn canonicalizes_order_and_keeps_meta() {
        let text = "nk 1\n# meta tiny\ndemand 1\nedge 2 1\nedge 0 1\nknapsack 2\nn 3\n# note\ndirected 0\n\
                    vertex 2 1 1\nvertex 0 1 1\nvertex 1 1 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.meta(), "tiny");
        let out = serialize_instance(&inst);
        assert!(out.contains("edge 0 1\nedge 1 2\n"));
        assert_eq!(parse_instance(&out).unwrap(), inst);
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("nk 2\n", "line 1: expected `nk 1`, found `nk 2`"),
            ("nk 1\ncolour 3\n", "line 2: unknown key `colour`"),
            ("nk 1\nn 1\nvertex 0 1 1\nvertex 0 1 1\n", "line 4: duplicate vertex 0"),
            ("nk 1\nn x\n", "line 2: invalid vertex count `x`"),
        ];
        for (text, msg) in cases {
            assert_eq!(parse_instance(text).unwrap_err().to_string(), msg);
        }
        let parallel = "nk 1\ndirected 0\nn 2\nvertex 0 1 1\nvertex 1 1 1\nedge 0 1\nedge 1 0\nknapsack 1\ndemand 0\n";
        assert_eq!(parse_instance(parallel).unwrap_err().to_string(), "line 7: parallel edge (0,1)");
    }

    #[test]
    fn solutions() {
        let text = serialize_solution(&[3, 1]);
        assert_eq!(text, "solution 2\npick 1\npick 3\n");
        assert_eq!(parse_solution(&text, Some(4)).unwrap(), vec![1, 3]);
        assert!(parse_solution(&text, Some(3)).is_err());
        assert!(parse_solution("solution 2\npick 1\npick 1\n", None).is_err());
        assert!(parse_solution("solution 3\npick 1\n", None).is_err());
    }

    #[test]
    fn td_round_trip() {
        let g = Graph::new(false, 5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let td = heuristic_td(&g);
        let text = serialize_td(&td, 5);
        assert_eq!(parse_td(&text).unwrap(), td);
        let pace = "c example\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let td = parse_td(pace).unwrap();
        assert_eq!(td.bags, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(td.tree, vec![(0, 1)]);
        assert!(parse_td("b 1 1\n").is_err());
    }
}
