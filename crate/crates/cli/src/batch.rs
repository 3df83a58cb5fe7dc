//! Query parsing and the two interchangeable engines.

use hypercsa::{HyperIndex, IncidenceList};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Contains(Vec<u64>),
    Exists(Vec<u64>),
    Degree(u64),
}

pub fn parse_labels(s: &str) -> Result<Vec<u64>, String> {
    let labels = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| format!("malformed node label {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if labels.is_empty() {
        return Err("query must name at least one node".into());
    }
    Ok(labels)
}

/// One query per line: `c:`, `e:` or `d:` followed by comma-separated labels.
/// Blank lines and `#` comments are skipped.
pub fn parse_batch(text: &str) -> Result<Vec<Query>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (mode, rest) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: missing mode prefix", i + 1))?;
        let labels = parse_labels(rest).map_err(|e| format!("line {}: {e}", i + 1))?;
        out.push(match mode.trim() {
            "c" => Query::Contains(labels),
            "e" => Query::Exists(labels),
            "d" if labels.len() == 1 => Query::Degree(labels[0]),
            "d" => return Err(format!("line {}: degree takes one node", i + 1)),
            m => return Err(format!("line {}: unknown mode {m:?}", i + 1)),
        });
    }
    Ok(out)
}

pub enum Engine {
    Index(HyperIndex),
    Naive(IncidenceList),
}

impl Engine {
    /// Answers a query as a single output line.
    pub fn answer(&self, q: &Query) -> hypercsa::Result<String> {
        Ok(match q {
            Query::Contains(l) => {
                let edges = match self {
                    Engine::Index(x) => x.contains(l)?,
                    Engine::Naive(x) => x.contains(l)?,
                };
                format_edges(&edges)
            }
            Query::Exists(l) => match self {
                Engine::Index(x) => x.exists(l)?,
                Engine::Naive(x) => x.exists(l)?,
            }
            .to_string(),
            Query::Degree(v) => match self {
                Engine::Index(x) => x.degree(*v)?,
                Engine::Naive(x) => x.degree(*v)?,
            }
            .to_string(),
        })
    }
}

/// Edges separated by `;`, labels within an edge by `,`.
pub fn format_edges(edges: &[Vec<u64>]) -> String {
    edges
        .iter()
        .map(|e| e.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}
