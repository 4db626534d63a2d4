//! Profile tables as CSV: header `id,<measures…>`, one row per code.

use std::path::Path;

use crate::error::{Error, Result};
use crate::model::Profile;

/// A labelled profile, the unit of every table.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub id: String,
    pub profile: Profile,
}

fn csv_err(path: &Path, source: csv::Error) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Values are written in shortest round-trip form so reading them back is
/// bit-exact. `names` supplies the header when `rows` is empty.
pub fn profile_csv_string(rows: &[ProfileRow], names: &[String]) -> Result<String> {
    let names = rows.first().map_or(names, |r| r.profile.names());
    if rows.iter().any(|r| r.profile.names() != names) {
        return Err(Error::domain("profiles in a table must share measure names"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = std::iter::once("id").chain(names.iter().map(String::as_str)).collect();
    w.write_record(&header).map_err(|e| csv_err(Path::new("<memory>"), e))?;
    for r in rows {
        let rec: Vec<String> = std::iter::once(r.id.clone())
            .chain(r.profile.values().iter().map(|v| v.to_string()))
            .collect();
        w.write_record(&rec).map_err(|e| csv_err(Path::new("<memory>"), e))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_profile_csv(path: impl AsRef<Path>, rows: &[ProfileRow], names: &[String]) -> Result<()> {
    let path = path.as_ref();
    let text = profile_csv_string(rows, names)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_profile_csv(path: impl AsRef<Path>) -> Result<Vec<ProfileRow>> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.get(0) != Some("id") {
        return Err(Error::Parse {
            path: path.display().to_string(),
            line: 1,
            column: 1,
            message: "header must start with id".into(),
        });
    }
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let mut values = Vec::with_capacity(names.len());
        for (j, field) in rec.iter().enumerate().skip(1) {
            let v = field.trim().parse::<f64>().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                line: i + 2,
                column: j + 1,
                message: format!("not a number: {field:?}"),
            })?;
            values.push(v);
        }
        rows.push(ProfileRow {
            id: rec.get(0).unwrap_or_default().to_string(),
            profile: Profile::new(values, names.clone())?,
        });
    }
    Ok(rows)
}
