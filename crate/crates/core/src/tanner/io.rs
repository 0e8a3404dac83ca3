//! Graph file formats: MacKay alist (1-based) and a small JSON form (0-based).

use serde::{Deserialize, Serialize};

use super::TannerGraph;
use crate::error::{Error, Result};

/// JSON graph: `{"n": 6, "checks": [[0, 1, 2], [3, 4, 5]]}` with 0-based
/// variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub checks: Vec<Vec<usize>>,
}

impl From<&TannerGraph> for GraphJson {
    fn from(g: &TannerGraph) -> Self {
        GraphJson { n: g.n(), checks: (0..g.m()).map(|j| g.check_vars(j).to_vec()).collect() }
    }
}

impl TryFrom<GraphJson> for TannerGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        TannerGraph::from_check_lists(j.n, &j.checks)
    }
}

pub fn emit_json(g: &TannerGraph) -> String {
    let mut s = serde_json::to_string(&GraphJson::from(g)).expect("graph serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<TannerGraph> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    TannerGraph::try_from(j)
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// MacKay alist text, zero-padded to the maximum degrees, LF line endings.
pub fn emit_alist(g: &TannerGraph) -> String {
    let (n, m) = (g.n(), g.m());
    let col_max = g.max_var_degree();
    let row_max = g.max_check_degree();
    let mut lines = Vec::with_capacity(4 + n + m);
    lines.push(format!("{n} {m}"));
    lines.push(format!("{col_max} {row_max}"));
    lines.push(join((0..n).map(|i| g.var_checks(i).len())));
    lines.push(join((0..m).map(|j| g.check_vars(j).len())));
    for i in 0..n {
        let list = g.var_checks(i);
        lines.push(join(list.iter().map(|&j| j + 1).chain(std::iter::repeat_n(0, col_max - list.len()))));
    }
    for j in 0..m {
        let list = g.check_vars(j);
        lines.push(join(list.iter().map(|&i| i + 1).chain(std::iter::repeat_n(0, row_max - list.len()))));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as integers, with its 1-based line number.
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::parse(idx + 1, format!("bad integer {t:?} in {what}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok((idx + 1, nums));
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(Error::parse(line, format!("{what}: expected {len} entries, found {}", nums.len())));
    }
    Ok(())
}

/// Parses MacKay alist text. Zero entries in the adjacency lists are padding.
/// The variable-side and check-side lists must describe the same edges.
pub fn parse_alist(text: &str) -> Result<TannerGraph> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };
    let (l, head) = lines.next_numbers("header")?;
    expect_len(l, &head, 2, "header")?;
    let (n, m) = (head[0], head[1]);
    let (l, maxes) = lines.next_numbers("maximum degrees")?;
    expect_len(l, &maxes, 2, "maximum degrees")?;
    let (l, col_deg) = lines.next_numbers("variable degrees")?;
    expect_len(l, &col_deg, n, "variable degrees")?;
    let (l, row_deg) = lines.next_numbers("check degrees")?;
    expect_len(l, &row_deg, m, "check degrees")?;
    if col_deg.iter().copied().max().unwrap_or(0) != maxes[0] || row_deg.iter().copied().max().unwrap_or(0) != maxes[1] {
        return Err(Error::parse(l, "maximum degrees disagree with the degree lists"));
    }
    if col_deg.iter().sum::<usize>() != row_deg.iter().sum::<usize>() {
        return Err(Error::parse(l, "variable and check degrees count different edge totals"));
    }

    let mut read_lists = |count: usize, degrees: &[usize], bound: usize, what: &str| -> Result<Vec<(usize, Vec<usize>)>> {
        let mut out = Vec::with_capacity(count);
        for deg in degrees.iter().take(count) {
            let (line, nums) = lines.next_numbers(what)?;
            let mut list = Vec::with_capacity(*deg);
            for &v in &nums {
                if v == 0 {
                    continue;
                }
                if v > bound {
                    return Err(Error::parse(line, format!("{what}: index {v} out of range 1..={bound}")));
                }
                list.push(v - 1);
            }
            if list.len() != *deg {
                return Err(Error::parse(line, format!("{what}: expected {deg} entries, found {}", list.len())));
            }
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::parse(line, format!("{what}: repeated index")));
            }
            out.push((line, list));
        }
        Ok(out)
    };
    let var_lists = read_lists(n, &col_deg, m, "variable adjacency")?;
    let check_lists = read_lists(m, &row_deg, n, "check adjacency")?;

    for (i, (line, checks)) in var_lists.iter().enumerate() {
        for &j in checks {
            if check_lists[j].1.binary_search(&i).is_err() {
                return Err(Error::parse(*line, format!("variable {} lists check {} but not conversely", i + 1, j + 1)));
            }
        }
    }
    let lists: Vec<Vec<usize>> = check_lists.into_iter().map(|(_, l)| l).collect();
    TannerGraph::from_check_lists(n, &lists)
}
