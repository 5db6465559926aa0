//! Degree sequences, graphs and forbidden sets from flags or JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use census_core::{BipartiteGraph, DegreePair, ForbiddenGraph, UndirectedGraph};
use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct Input {
    /// Row (out-) degrees, comma separated.
    #[arg(short = 's', long = "s", value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<u32>,
    /// Column (in-) degrees, comma separated.
    #[arg(short = 't', long = "t", value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<u32>,
    /// Undirected degrees, or the common degree together with `-n`.
    #[arg(short = 'd', long = "d", value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<u32>,
    /// Number of vertices for regular inputs.
    #[arg(short = 'n', long = "n")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Degree file: `{"s": [..], "t": [..]}`, or a plain array for undirected degrees.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<PathBuf>,
    /// Graph file: `{"m", "n", "edges"}` (bipartite) or `{"n", "edges"}` (undirected).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    /// Forbidden edge file: `{"edges": [[i, j], ..]}`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<PathBuf>,
    /// Inline forbidden edges `i:j`, comma separated.
    #[arg(long = "x", value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<String>,
    /// Forbid the diagonal `u_i v_i` (the loops of a digraph).
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub diagonal: bool,
    /// Out-degree offsets from `d/2`, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<i64>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UndirectedDegrees {
    Plain(Vec<u32>),
    Keyed { d: Vec<u32> },
}

impl Input {
    /// The single common degree `d` given with `-n`.
    pub fn regular(&self) -> Result<Option<(usize, u32)>, CliError> {
        match (self.n, self.d.as_slice()) {
            (Some(n), [d]) => Ok(Some((n, *d))),
            (Some(_), _) => Err(CliError::Usage("-n needs exactly one value of -d".into())),
            (None, _) => Ok(None),
        }
    }

    pub fn require_regular(&self) -> Result<(usize, u32), CliError> {
        self.regular()?
            .ok_or_else(|| CliError::Usage("this needs -n and a single -d".into()))
    }

    pub fn degree_pair(&self) -> Result<DegreePair, CliError> {
        if let Some(p) = &self.degrees {
            return read_json(p);
        }
        if !self.s.is_empty() || !self.t.is_empty() {
            return Ok(DegreePair::new(self.s.clone(), self.t.clone())?);
        }
        if let Some((n, d)) = self.regular()? {
            return Ok(DegreePair::regular(n, d));
        }
        Err(CliError::Usage("give degrees with -s/-t, -n/-d or --degrees".into()))
    }

    pub fn undirected_degrees(&self) -> Result<Vec<u32>, CliError> {
        if let Some(p) = &self.degrees {
            return Ok(match read_json(p)? {
                UndirectedDegrees::Plain(d) | UndirectedDegrees::Keyed { d } => d,
            });
        }
        if let Some((n, d)) = self.regular()? {
            return Ok(vec![d; n]);
        }
        if !self.d.is_empty() {
            return Ok(self.d.clone());
        }
        Err(CliError::Usage("give undirected degrees with -d, -n/-d or --degrees".into()))
    }

    pub fn delta_for(&self, len: usize) -> Result<Vec<i64>, CliError> {
        if self.delta.is_empty() {
            Ok(vec![0; len])
        } else {
            Ok(self.delta.clone())
        }
    }

    pub fn forbidden(&self, n: usize) -> Result<ForbiddenGraph, CliError> {
        let mut x = match &self.forbidden {
            Some(p) => read_json(p)?,
            None => ForbiddenGraph::empty(),
        };
        if !self.x.is_empty() {
            let edges = self.x.iter().map(|e| parse_edge(e)).collect::<Result<Vec<_>, _>>()?;
            x = x.union(&ForbiddenGraph::new(edges)?);
        }
        if self.diagonal {
            x = x.union(&ForbiddenGraph::diagonal(n));
        }
        Ok(x)
    }

    fn graph_path(&self) -> Result<&Path, CliError> {
        self.graph
            .as_deref()
            .ok_or_else(|| CliError::Usage("this needs --graph".into()))
    }

    pub fn bipartite_graph(&self) -> Result<BipartiteGraph, CliError> {
        read_json(self.graph_path()?)
    }

    pub fn undirected_graph(&self) -> Result<UndirectedGraph, CliError> {
        read_json(self.graph_path()?)
    }
}

fn parse_edge(e: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("forbidden edge `{e}` is not of the form i:j"));
    let (i, j) = e.split_once(':').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

/// `a:b` or `a:b:step`, both ends inclusive.
pub fn parse_range(r: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("range `{r}` is not of the form a:b or a:b:step"));
    let parts: Vec<usize> = r
        .split(':')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (a, b, step) = match parts.as_slice() {
        [a, b] => (*a, *b, 1),
        [a, b, step] if *step > 0 => (*a, *b, *step),
        _ => return Err(bad()),
    };
    if a > b {
        return Err(CliError::Usage(format!("range `{r}` is empty")));
    }
    Ok((a..=b).step_by(step).collect())
}
