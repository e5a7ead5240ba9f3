//! On-disk cache of structure tables keyed by rank, class, Hall order and
//! table format version.

use std::fs;
use std::path::{Path, PathBuf};

use rinf_algebra::lie::{HallOrder, StructureTable, DEFAULT_WORD_BOUND, TABLE_VERSION};
use rinf_algebra::Result;

fn file_name(rank: usize, class: usize, order: HallOrder) -> String {
    let order = match order {
        HallOrder::Standard => "standard",
        HallOrder::Reversed => "reversed",
    };
    format!("hall-r{rank}-c{class}-{order}-v{TABLE_VERSION}.json")
}

pub fn path(dir: &Path, rank: usize, class: usize, order: HallOrder) -> PathBuf {
    dir.join(file_name(rank, class, order))
}

/// Loads the table from `dir` if a valid cached copy exists, otherwise
/// builds it and writes it back. A corrupt or stale file is rebuilt.
pub fn table(dir: Option<&Path>, rank: usize, class: usize, order: HallOrder) -> Result<StructureTable> {
    let Some(dir) = dir else {
        return StructureTable::build(rank, class, order, DEFAULT_WORD_BOUND);
    };
    let file = path(dir, rank, class, order);
    if let Ok(text) = fs::read_to_string(&file) {
        match StructureTable::from_json(&text) {
            Ok(t) if t.rank() == rank && t.class() == class && t.order() == order => return Ok(t),
            Ok(_) => eprintln!("warning: {} holds a different table, rebuilding", file.display()),
            Err(e) => eprintln!("warning: ignoring cached table {}: {e}", file.display()),
        }
    }
    let t = StructureTable::build(rank, class, order, DEFAULT_WORD_BOUND)?;
    fs::create_dir_all(dir)?;
    let tmp = file.with_extension("json.tmp");
    fs::write(&tmp, t.to_json())?;
    fs::rename(&tmp, &file)?;
    Ok(t)
}
