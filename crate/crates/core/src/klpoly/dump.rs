use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{KlTable, PolyQ};
use crate::coxeter::{CoxeterSystem, GroupSpec};
use crate::error::{Error, Result};

/// JSON dump of the computed columns of a [`KlTable`].
///
/// ```json
/// {"group":{"type":"polygon","n":5},
///  "columns":[{"w":[1,2],"entries":[[[],[1]],[[1],[1]],[[2],[1]],[[1,2],[1]]]}]}
/// ```
/// Words are 1-based labels of canonical words; each entry pairs `y` with the
/// dense coefficient list of `P_{y,w}` from `q^0` upwards. Columns and entries
/// are sorted ShortLex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDump {
    pub group: GroupSpec,
    pub columns: Vec<ColumnDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDump {
    pub w: Vec<usize>,
    pub entries: Vec<(Vec<usize>, Vec<i64>)>,
}

impl KlTable {
    pub fn dump(&self) -> TableDump {
        TableDump {
            group: self.system().spec(),
            columns: self
                .computed_columns()
                .into_iter()
                .map(|(w, col)| ColumnDump {
                    w: w.word().labels(),
                    entries: col
                        .into_iter()
                        .map(|(y, p)| (y.word().labels(), p.coeffs().to_vec()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.dump())?)?;
        Ok(())
    }

    /// Rebuilds a table from a dump. Words are re-normalized, so a dump with
    /// non-canonical words still loads; a dump for another group is rejected.
    pub fn from_dump(sys: &CoxeterSystem, dump: &TableDump) -> Result<KlTable> {
        if dump.group.build()? != *sys {
            return Err(Error::InvalidInput(format!(
                "table dump is for {}, not {}",
                dump.group.slug(),
                sys.spec().slug()
            )));
        }
        let mut table = KlTable::new(sys);
        for col in &dump.columns {
            let w = sys.element_from_labels(&col.w)?;
            let mut entries = Vec::with_capacity(col.entries.len());
            for (y, coeffs) in &col.entries {
                entries.push((sys.element_from_labels(y)?, PolyQ::from_coeffs(coeffs)));
            }
            table.insert_column(&w, entries);
        }
        Ok(table)
    }

    pub fn load(sys: &CoxeterSystem, path: &Path) -> Result<KlTable> {
        let dump: TableDump = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_dump(sys, &dump)
    }
}

/// `<dir>/kl-<group slug>.json`.
pub fn cache_path(dir: &Path, sys: &CoxeterSystem) -> PathBuf {
    dir.join(format!("kl-{}.json", sys.spec().slug()))
}

/// Loads the cached table for `sys` from `dir` if present, else a fresh table.
pub fn load_or_new(sys: &CoxeterSystem, dir: Option<&Path>) -> Result<KlTable> {
    match dir.map(|d| cache_path(d, sys)) {
        Some(p) if p.exists() => KlTable::load(sys, &p),
        _ => Ok(KlTable::new(sys)),
    }
}
