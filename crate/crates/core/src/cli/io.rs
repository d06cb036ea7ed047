//! CSV ingestion and tabular output.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circular::CovariateRow;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::mixture::{MixtureFit, Responsibilities};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

impl AngleUnit {
    pub fn to_radians(self, value: f64) -> f64 {
        match self {
            AngleUnit::Radians => value,
            AngleUnit::Degrees => value.to_radians(),
        }
    }
}

/// Which CSV columns feed the model. The angle unit applies to the response
/// and to every circular covariate.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub response: String,
    #[serde(default)]
    pub circular: Vec<String>,
    #[serde(default)]
    pub linear: Vec<String>,
    #[serde(default)]
    pub angle_unit: AngleUnit,
}

impl ColumnSpec {
    /// Parses `response:circ1,circ2:lin1,lin2` (either list may be empty).
    pub fn parse_compact(text: &str, angle_unit: AngleUnit) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "column shorthand `{text}` must look like response:circular,...:linear,..."
            )));
        }
        let list = |s: &str| -> Vec<String> {
            s.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect()
        };
        let spec = ColumnSpec {
            response: parts[0].trim().to_string(),
            circular: list(parts[1]),
            linear: list(parts[2]),
            angle_unit,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.response.is_empty() {
            return Err(Error::Config("a response column is required".into()));
        }
        let mut seen = BTreeSet::new();
        for name in std::iter::once(&self.response).chain(&self.circular).chain(&self.linear) {
            if !seen.insert(name) {
                return Err(Error::Config(format!("column `{name}` is listed more than once")));
            }
        }
        if self.circular.is_empty() && self.linear.is_empty() {
            return Err(Error::Config("at least one covariate column is required".into()));
        }
        Ok(())
    }

    fn all(&self) -> Vec<&str> {
        std::iter::once(self.response.as_str())
            .chain(self.circular.iter().map(String::as_str))
            .chain(self.linear.iter().map(String::as_str))
            .collect()
    }
}

/// Selected numeric columns of a CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub names: Vec<String>,
    /// One vector per selected column.
    pub columns: Vec<Vec<f64>>,
    /// 0-based data-row index (header excluded) of every kept row.
    pub rows: Vec<usize>,
    /// Rows skipped because a selected cell was empty or `NA`.
    pub dropped: usize,
}

fn is_missing(cell: &str) -> bool {
    matches!(cell.trim(), "" | "NA" | "na" | "NaN" | "nan" | "NULL" | "null")
}

/// Reads the named numeric columns. Rows with a missing value in any of them
/// are dropped and counted; any other unparseable cell is an error naming its
/// position (1-based data row).
pub fn read_columns(path: &Path, names: &[&str]) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers = reader.headers()?.clone();
    let index: Vec<usize> = names
        .iter()
        .map(|n| {
            headers
                .iter()
                .position(|h| h == *n)
                .ok_or_else(|| Error::MissingColumn((*n).to_string()))
        })
        .collect::<Result<_>>()?;
    let mut columns = vec![Vec::new(); names.len()];
    let mut rows = Vec::new();
    let mut dropped = 0;
    let mut values = vec![0.0; names.len()];
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let mut missing = false;
        for (j, &col) in index.iter().enumerate() {
            let cell = record.get(col).unwrap_or("");
            if is_missing(cell) {
                missing = true;
                break;
            }
            values[j] = cell.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                row: r + 1,
                column: names[j].to_string(),
                value: cell.to_string(),
            })?;
        }
        if missing {
            dropped += 1;
            continue;
        }
        for (c, v) in columns.iter_mut().zip(&values) {
            c.push(*v);
        }
        rows.push(r);
    }
    Ok(Table {
        names: names.iter().map(|s| s.to_string()).collect(),
        columns,
        rows,
        dropped,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoadedData {
    pub dataset: Dataset,
    /// Covariates as read (angles in radians, not wrapped).
    pub covariates: Vec<CovariateRow>,
    /// 0-based data-row index of every kept row.
    pub rows: Vec<usize>,
    pub dropped: usize,
}

/// Loads a dataset according to `spec`: converts degrees, wraps the response
/// to `[0, 2π)`, drops rows with missing values.
pub fn load_csv(path: &Path, spec: &ColumnSpec) -> Result<LoadedData> {
    spec.validate()?;
    let table = read_columns(path, &spec.all())?;
    let q = spec.circular.len();
    let unit = spec.angle_unit;
    let n = table.rows.len();
    let response: Vec<f64> = table.columns[0].iter().map(|&v| unit.to_radians(v)).collect();
    let covariates: Vec<CovariateRow> = (0..n)
        .map(|i| {
            CovariateRow::new(
                (1..=q).map(|j| unit.to_radians(table.columns[j][i])).collect(),
                (q + 1..table.columns.len()).map(|j| table.columns[j][i]).collect(),
            )
        })
        .collect();
    let dataset = if n == 0 {
        Dataset::from_design(vec![], vec![], q, spec.linear.len())?
    } else {
        Dataset::new(response, &covariates)?
    };
    Ok(LoadedData {
        dataset,
        covariates,
        rows: table.rows,
        dropped: table.dropped,
    })
}

pub(crate) fn create(path: &Path) -> Result<std::io::BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(std::io::BufWriter::new(File::create(path)?))
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// `row,component,gamma_1,…,gamma_K` with 1-based components; `rows` maps to
/// the source file's data rows.
pub fn write_responsibilities<W: Write>(writer: W, resp: &Responsibilities, rows: &[usize]) -> Result<()> {
    let labels = crate::mixture::map_cluster(resp);
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["row".to_string(), "component".to_string()];
    header.extend((1..=resp.k()).map(|k| format!("gamma_{k}")));
    w.write_record(&header)?;
    for i in 0..resp.n() {
        let mut record = vec![rows.get(i).copied().unwrap_or(i).to_string(), (labels[i] + 1).to_string()];
        record.extend(resp.row(i).iter().map(|v| v.to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Canonical model file: the fit plus the columns it was trained on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub columns: ColumnSpec,
    pub fit: MixtureFit,
}

impl ModelFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path)?;
        let model: ModelFile = serde_json::from_reader(std::io::BufReader::new(file))?;
        model.fit.params().validate()?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}
