//! Output helpers: atomic file writes and small CSV builders.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;

use regraph_core::DensityTable;

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename), or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
            let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))
                .context("creating temporary output file")?;
            tmp.write_all(content.as_bytes())
                .context("writing output")?;
            tmp.persist(path)
                .with_context(|| format!("renaming output into place at {}", path.display()))?;
            Ok(())
        }
    }
}

pub fn read_to_string(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn density_csv(table: &DensityTable) -> String {
    let mut out = String::from("s,rho_con,rho_total\n");
    for i in 0..table.grid.len() {
        out.push_str(&format!(
            "{:.12e},{:.12e},{:.12e}\n",
            table.grid[i], table.rho_con[i], table.rho_total[i]
        ));
    }
    out
}

pub fn density_json(table: &DensityTable) -> String {
    #[derive(serde::Serialize)]
    struct Row {
        s: f64,
        rho_con: f64,
        rho_total: f64,
    }
    let rows: Vec<Row> = (0..table.grid.len())
        .map(|i| Row {
            s: table.grid[i],
            rho_con: table.rho_con[i],
            rho_total: table.rho_total[i],
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
    out.push('\n');
    out
}

/// `exponent,coefficient` dump of an integer coefficient list.
pub fn series_csv(coeffs: &[num_bigint::BigInt]) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for (l, c) in coeffs.iter().enumerate() {
        out.push_str(&format!("{l},{c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_is_atomic_and_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit(Some(&path), "a,b\n1,2\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        // Overwrite goes through the same rename path.
        emit(Some(&path), "new\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "new\n");
    }
}
