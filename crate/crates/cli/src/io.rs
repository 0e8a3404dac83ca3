//! Inputs, outputs, manifests and exit codes.

use std::cell::RefCell;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lp_lab::sim::ExperimentManifest;
use lp_lab::tanner::{parse_alist, parse_json};
use lp_lab::{BitVector, Rational, TannerGraph};
use sha2::{Digest, Sha256};

use crate::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(lp_lab::Error),
    Io(PathBuf, std::io::Error),
    Json(serde_json::Error),
}

impl CliError {
    /// 0 ok, 1 I/O, 2 usage or invalid input, 3 capacity, 4 numeric.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Json(_) => 2,
            CliError::Lib(lp_lab::Error::Capacity { .. }) => 3,
            CliError::Lib(lp_lab::Error::Numeric(_)) => 4,
            CliError::Lib(_) => 2,
            CliError::Io(..) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Json(e) => write!(f, "invalid JSON: {e}"),
        }
    }
}

impl From<lp_lab::Error> for CliError {
    fn from(e: lp_lab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Comma-separated rationals.
pub fn parse_llrs(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|e| CliError::Usage(format!("bad LLR `{t}`: {e}"))))
        .collect()
}

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} `{t}`"))))
        .collect()
}

/// LLRs from `--gamma` or `(-1)^y` from `--word`.
pub fn llrs(gamma: Option<&str>, word: Option<&str>, n: usize) -> CliResult<Vec<Rational>> {
    let v = match (gamma, word) {
        (Some(g), None) => parse_llrs(g)?,
        (None, Some(w)) => BitVector::parse(w)?.signs().into_iter().map(Rational::from).collect(),
        _ => return usage("give exactly one of --gamma and --word"),
    };
    if v.len() != n {
        return usage(format!("LLR vector has length {}, graph has {n} variables", v.len()));
    }
    Ok(v)
}

/// Per-invocation state: output routing and what the manifest records.
pub struct Context {
    pub seed: u64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub argv: Vec<String>,
    /// Set when replaying; the graph file must hash to this.
    pub expected_sha: Option<String>,
    graph: RefCell<Option<(String, String)>>,
}

impl Context {
    pub fn new(seed: u64, format: Option<Format>, out: Option<PathBuf>, manifest: Option<PathBuf>, argv: Vec<String>) -> Self {
        Context { seed, format, out, manifest, argv, expected_sha: None, graph: RefCell::new(None) }
    }

    /// The selected format, which must be one of `allowed`; the first is the
    /// default.
    pub fn format(&self, allowed: &[Format]) -> CliResult<Format> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => usage(format!("format {f:?} is not available here; use one of {allowed:?}")),
        }
    }

    pub fn load_graph(&self, path: &Path) -> CliResult<TannerGraph> {
        let text = read_file(path)?;
        let sha = sha256_hex(text.as_bytes());
        if let Some(want) = &self.expected_sha {
            if *want != sha {
                return usage(format!("{} does not match the manifest hash {want}", path.display()));
            }
        }
        let g = if path.extension().is_some_and(|e| e == "json") { parse_json(&text)? } else { parse_alist(&text)? };
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        *self.graph.borrow_mut() = Some((id, sha));
        Ok(g)
    }

    pub fn graph_id(&self) -> String {
        self.graph.borrow().as_ref().map(|(id, _)| id.clone()).unwrap_or_else(|| "-".into())
    }

    /// Writes `text` to `--out` or stdout, then the manifest if requested.
    pub fn emit(&self, experiment: &str, text: &str) -> CliResult<()> {
        let mut body = text.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.out {
            Some(path) => fs::write(path, &body).map_err(|e| CliError::Io(path.clone(), e))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes()).map_err(|e| CliError::Io("<stdout>".into(), e))?;
            }
        }
        let target = self.manifest.clone().or_else(|| {
            self.out.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".manifest.json");
                PathBuf::from(s)
            })
        });
        if let Some(path) = target {
            let graph = self.graph.borrow().clone();
            let mut m = ExperimentManifest::new(
                experiment,
                graph.as_ref().map_or("-", |(id, _)| id.as_str()),
                self.seed,
                serde_json::json!({ "argv": self.argv }),
            );
            m.graph_sha256 = graph.map(|(_, sha)| sha);
            let text = serde_json::to_string_pretty(&m)? + "\n";
            fs::write(&path, text).map_err(|e| CliError::Io(path.clone(), e))?;
        }
        Ok(())
    }
}

/// Arguments to record for replay: everything except output routing,
/// thread count and replay itself.
pub fn recordable_argv(args: &[String]) -> Vec<String> {
    const DROP: [&str; 4] = ["--out", "--manifest", "--jobs", "--replay"];
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if DROP.contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if DROP.iter().any(|d| a.starts_with(&format!("{d}="))) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

pub fn read_manifest(path: &Path) -> CliResult<(ExperimentManifest, Vec<String>)> {
    let m: ExperimentManifest = serde_json::from_str(&read_file(path)?)?;
    let argv = m
        .parameters
        .get("argv")
        .and_then(|v| v.as_array())
        .and_then(|a| a.iter().map(|x| x.as_str().map(String::from)).collect::<Option<Vec<_>>>())
        .ok_or_else(|| CliError::Usage(format!("{} has no recorded argv", path.display())))?;
    Ok((m, argv))
}
