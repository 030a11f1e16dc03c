//! Persisted catalogs of minimal balanced collections.
//!
//! Text layout:
//!
//! ```text
//! mbc-catalog v1 n=3 method=direct count=6
//! # tool=balanced-forge 0.1.0 generated-at=1700000000
//! n=3; [{1}:1/1, {2}:1/1, {3}:1/1]
//! ...
//! ```
//!
//! Paths ending in `.json` use the JSON mirror of the same content.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational};
use crate::balanced::BalancedCollection;
use crate::coalition::{check_players, Coalition};
use crate::error::{parse_err, Error, Result};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "balanced-forge";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which engine produced a catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Duality,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Duality => "duality",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "duality" => Ok(Method::Duality),
            "oracle" => Ok(Method::Oracle),
            _ => Err(parse_err(format!("unknown method {s:?} (direct | duality | oracle)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    pub tool_version: String,
    /// Seconds since the Unix epoch; honours `SOURCE_DATE_EPOCH`.
    pub generated_at: u64,
}

impl Metadata {
    pub fn now() -> Self {
        let generated_at = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or_else(|| {
                SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
            });
        Metadata { tool_version: TOOL_VERSION.to_string(), generated_at }
    }
}

/// The minimal balanced collections of one player count, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MbcCatalog {
    n: usize,
    method: Method,
    collections: Vec<BalancedCollection>,
    meta: Metadata,
}

impl MbcCatalog {
    /// Sorts `collections` and checks that each is a minimal balanced
    /// collection on `n` players and that no coalition set repeats.
    pub fn new(n: usize, method: Method, collections: Vec<BalancedCollection>) -> Result<Self> {
        Self::with_metadata(n, method, collections, Metadata::now())
    }

    pub fn with_metadata(
        n: usize,
        method: Method,
        mut collections: Vec<BalancedCollection>,
        meta: Metadata,
    ) -> Result<Self> {
        check_players(n)?;
        collections.sort();
        for b in &collections {
            if b.n() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: b.n() });
            }
            if !b.is_minimal() {
                return Err(Error::Validation(format!("{b} is not minimal")));
            }
        }
        if let Some(w) = collections.windows(2).find(|w| w[0].coalitions() == w[1].coalitions()) {
            return Err(Error::Validation(format!("duplicate collection {}", w[0])));
        }
        Ok(MbcCatalog { n, method, collections, meta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn metadata(&self) -> &Metadata {
        &self.meta
    }

    pub fn collections(&self) -> &[BalancedCollection] {
        &self.collections
    }

    pub fn len(&self) -> usize {
        self.collections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collections.is_empty()
    }

    /// Coalition sets only; weights of minimal collections are implied.
    pub fn keys(&self) -> BTreeSet<Vec<Coalition>> {
        self.collections.iter().map(|b| b.coalitions().to_vec()).collect()
    }

    /// Set equality on canonical forms, ignoring method and metadata.
    pub fn same_collections(&self, other: &MbcCatalog) -> bool {
        self.n == other.n && self.collections == other.collections
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "mbc-catalog v{FORMAT_VERSION} n={} method={} count={}",
            self.n,
            self.method,
            self.collections.len()
        );
        let _ = writeln!(
            s,
            "# tool={TOOL_NAME} {} generated-at={}",
            self.meta.tool_version, self.meta.generated_at
        );
        for b in &self.collections {
            let _ = writeln!(s, "{b}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| parse_err("empty catalog file"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("mbc-catalog") {
            return Err(parse_err(format!("not a catalog header: {header:?}")));
        }
        let version = fields.next().unwrap_or("");
        if version != format!("v{FORMAT_VERSION}") {
            return Err(Error::Version(version.to_string()));
        }
        let mut n = None;
        let mut method = None;
        let mut count = None;
        for f in fields {
            match f.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("method", v)) => method = Some(v.parse::<Method>()?),
                Some(("count", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(parse_err(format!("unexpected header field {f:?}"))),
            }
        }
        let (Some(n), Some(method), Some(count)) = (n, method, count) else {
            return Err(parse_err(format!("incomplete header {header:?}")));
        };

        let mut meta = Metadata { tool_version: String::new(), generated_at: 0 };
        let mut collections = Vec::with_capacity(count);
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                for f in comment.split_whitespace() {
                    if let Some(v) = f.strip_prefix("generated-at=") {
                        meta.generated_at = v.parse().map_err(|_| parse_err(format!("bad timestamp {v:?}")))?;
                    } else if !f.starts_with("tool=") {
                        meta.tool_version = f.to_string();
                    }
                }
                continue;
            }
            collections.push(line.parse::<BalancedCollection>()?);
        }
        if collections.len() != count {
            return Err(Error::Validation(format!(
                "header announces {count} collections, file holds {}",
                collections.len()
            )));
        }
        Self::with_metadata(n, method, collections, meta)
    }

    pub fn to_json(&self) -> CatalogJson {
        CatalogJson {
            format: "mbc-catalog".into(),
            version: FORMAT_VERSION,
            n: self.n,
            method: self.method,
            count: self.collections.len(),
            tool_version: self.meta.tool_version.clone(),
            generated_at: self.meta.generated_at,
            collections: self.collections.iter().map(CollectionJson::from).collect(),
        }
    }

    pub fn from_json(j: &CatalogJson) -> Result<Self> {
        if j.format != "mbc-catalog" {
            return Err(parse_err(format!("unexpected format tag {:?}", j.format)));
        }
        if j.version != FORMAT_VERSION {
            return Err(Error::Version(format!("v{}", j.version)));
        }
        check_players(j.n)?;
        let mut collections = Vec::with_capacity(j.collections.len());
        for c in &j.collections {
            if c.coalitions.len() != c.weights.len() {
                return Err(parse_err("coalitions and weights differ in length"));
            }
            let pairs = c
                .coalitions
                .iter()
                .zip(&c.weights)
                .map(|(players, w)| {
                    Ok((Coalition::from_players(j.n, players.iter().copied())?, parse_rational(w)?))
                })
                .collect::<Result<Vec<_>>>()?;
            collections.push(BalancedCollection::new(j.n, pairs)?);
        }
        if collections.len() != j.count {
            return Err(Error::Validation(format!(
                "count field {} disagrees with {} collections",
                j.count,
                collections.len()
            )));
        }
        let meta = Metadata { tool_version: j.tool_version.clone(), generated_at: j.generated_at };
        Self::with_metadata(j.n, j.method, collections, meta)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let body = if is_json_path(path) {
            serde_json::to_string_pretty(&self.to_json())?
        } else {
            self.to_text()
        };
        fs::write(path, body)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        if is_json_path(path) {
            Self::from_json(&serde_json::from_str(&text)?)
        } else {
            Self::from_text(&text)
        }
    }
}

fn is_json_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogJson {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub method: Method,
    pub count: usize,
    pub tool_version: String,
    pub generated_at: u64,
    pub collections: Vec<CollectionJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CollectionJson {
    pub coalitions: Vec<Vec<usize>>,
    pub weights: Vec<String>,
}

impl From<&BalancedCollection> for CollectionJson {
    fn from(b: &BalancedCollection) -> Self {
        CollectionJson {
            coalitions: b.coalitions().iter().map(|c| c.players().collect()).collect(),
            weights: b.weights().iter().map(format_rational).collect(),
        }
    }
}
