use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CoxeterSystem;
use crate::error::Result;

/// On-disk description of a group.
///
/// ```json
/// {"type":"polygon","n":5}
/// {"type":"general","n":12,"commuting":[[0,1],[0,2]]}
/// ```
/// Generator indices in `commuting` are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Polygon { n: usize },
    General { n: usize, commuting: Vec<[usize; 2]> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<CoxeterSystem> {
        match self {
            GroupSpec::Polygon { n } => CoxeterSystem::polygon(*n),
            GroupSpec::General { n, commuting } => {
                let pairs: Vec<(usize, usize)> = commuting.iter().map(|p| (p[0], p[1])).collect();
                CoxeterSystem::right_angled(*n, &pairs)
            }
        }
    }

    pub fn parse(json: &str) -> Result<GroupSpec> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn from_file(path: &Path) -> Result<GroupSpec> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// A short stable name, used for cache file names.
    pub fn slug(&self) -> String {
        match self {
            GroupSpec::Polygon { n } => format!("polygon-{n}"),
            GroupSpec::General { n, commuting } => {
                let mut pairs: Vec<[usize; 2]> = commuting
                    .iter()
                    .map(|p| if p[0] <= p[1] { *p } else { [p[1], p[0]] })
                    .collect();
                pairs.sort();
                pairs.dedup();
                let body: Vec<String> = pairs.iter().map(|p| format!("{}-{}", p[0], p[1])).collect();
                format!("general-{n}-{}", body.join("_"))
            }
        }
    }
}

impl CoxeterSystem {
    pub fn spec(&self) -> GroupSpec {
        match self.kind() {
            super::SystemKind::Polygon(n) => GroupSpec::Polygon { n },
            super::SystemKind::General => GroupSpec::General {
                n: self.rank(),
                commuting: self
                    .commuting_pairs()
                    .into_iter()
                    .map(|(a, b)| [a.index(), b.index()])
                    .collect(),
            },
        }
    }
}
