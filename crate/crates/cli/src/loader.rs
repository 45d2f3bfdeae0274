//! CSV ingestion: per-column type inference (integer, then real, then
//! date, then text), explicit overrides, and a writer that round-trips.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;
use thiserror::Error;

use odprof_core::model::{ModelError, Table, Value, ValueType};

/// How to read a CSV file into a typed table.
#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub has_header: bool,
    /// Forces a column to a type instead of inferring one. Keys must name
    /// existing columns.
    pub type_overrides: BTreeMap<String, ValueType>,
    /// Accepted date patterns, tried in order per cell.
    pub date_formats: Vec<String>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            has_header: true,
            type_overrides: BTreeMap::new(),
            date_formats: vec!["%Y-%m-%d".to_string(), "%d/%m/%Y".to_string()],
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed CSV at line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line} has {got} fields, expected {expected}")]
    Ragged {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("empty cell at line {line}, column {column}")]
    EmptyCell { line: usize, column: String },
    #[error("cell at line {line}, column {column} is not a {expected}: {cell:?}")]
    CellType {
        line: usize,
        column: String,
        expected: ValueType,
        cell: String,
    },
    #[error("type override names no column: {name}")]
    UnknownOverride { name: String },
    #[error("no data rows and no complete type overrides: column types cannot be inferred")]
    NoRows,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn parse_integer(cell: &str) -> Option<i64> {
    cell.parse::<i64>().ok()
}

fn parse_real(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_date(cell: &str, formats: &[String]) -> Option<NaiveDate> {
    formats
        .iter()
        .find_map(|f| NaiveDate::parse_from_str(cell, f).ok())
}

/// Infers one column's type from its raw cells: Integer if every cell
/// parses as a signed integer, else Real if every cell parses as a finite
/// decimal, else Date if every cell matches an accepted pattern, else
/// Text. A lone decimal point among integers promotes the whole column.
pub fn infer_column_type(cells: &[String], date_formats: &[String]) -> ValueType {
    if cells.iter().all(|c| parse_integer(c).is_some()) {
        ValueType::Integer
    } else if cells.iter().all(|c| parse_real(c).is_some()) {
        ValueType::Real
    } else if cells.iter().all(|c| parse_date(c, date_formats).is_some()) {
        ValueType::Date
    } else {
        ValueType::Text
    }
}

fn parse_cell(
    cell: &str,
    ty: ValueType,
    line: usize,
    column: &str,
    formats: &[String],
) -> Result<Value, LoadError> {
    let err = || LoadError::CellType {
        line,
        column: column.to_string(),
        expected: ty,
        cell: cell.to_string(),
    };
    match ty {
        ValueType::Integer => parse_integer(cell).map(Value::Integer).ok_or_else(err),
        ValueType::Real => parse_real(cell).map(Value::Real).ok_or_else(err),
        ValueType::Date => parse_date(cell, formats).map(Value::Date).ok_or_else(err),
        ValueType::Text => Ok(Value::Text(cell.to_string())),
    }
}

/// Reads a table from any reader; `name` becomes the table name.
pub fn load_csv_from_reader<R: Read>(
    reader: R,
    name: &str,
    opts: &LoadOptions,
) -> Result<Table, LoadError> {
    let mut csv = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(opts.has_header)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let header: Option<Vec<String>> = if opts.has_header {
        let record = csv.headers().map_err(|e| LoadError::Malformed {
            line: 1,
            message: e.to_string(),
        })?;
        Some(record.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut raw_rows: Vec<(usize, Vec<String>)> = Vec::new();
    for record in csv.records() {
        let record = record.map_err(|e| LoadError::Malformed {
            line: e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(raw_rows.len() + 1),
            message: e.to_string(),
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(raw_rows.len() + 1);
        raw_rows.push((line, record.iter().map(str::to_string).collect()));
    }

    let arity = header
        .as_ref()
        .map(Vec::len)
        .or_else(|| raw_rows.first().map(|(_, r)| r.len()))
        .ok_or(LoadError::NoRows)?;
    let names: Vec<String> =
        header.unwrap_or_else(|| (0..arity).map(|i| format!("c{i}")).collect());

    for (line, row) in &raw_rows {
        if row.len() != arity {
            return Err(LoadError::Ragged {
                line: *line,
                expected: arity,
                got: row.len(),
            });
        }
        for (cell, column) in row.iter().zip(&names) {
            if cell.is_empty() {
                return Err(LoadError::EmptyCell {
                    line: *line,
                    column: column.clone(),
                });
            }
        }
    }

    for name in opts.type_overrides.keys() {
        if !names.iter().any(|n| n == name) {
            return Err(LoadError::UnknownOverride { name: name.clone() });
        }
    }
    if raw_rows.is_empty() && names.iter().any(|n| !opts.type_overrides.contains_key(n)) {
        return Err(LoadError::NoRows);
    }

    let types: Vec<ValueType> = names
        .iter()
        .enumerate()
        .map(|(i, column)| {
            opts.type_overrides.get(column).copied().unwrap_or_else(|| {
                let cells: Vec<String> =
                    raw_rows.iter().map(|(_, r)| r[i].clone()).collect();
                infer_column_type(&cells, &opts.date_formats)
            })
        })
        .collect();

    let mut rows: Vec<Vec<Value>> = Vec::with_capacity(raw_rows.len());
    for (line, raw) in &raw_rows {
        let mut row = Vec::with_capacity(arity);
        for ((cell, column), ty) in raw.iter().zip(&names).zip(&types) {
            row.push(parse_cell(cell, *ty, *line, column, &opts.date_formats)?);
        }
        rows.push(row);
    }

    let columns = names.into_iter().zip(types).collect();
    Ok(Table::new(name, columns, rows)?)
}

/// Reads a table from a CSV file; the file stem becomes the table name.
pub fn load_csv(path: &Path, opts: &LoadOptions) -> Result<Table, LoadError> {
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".to_string());
    load_csv_from_reader(file, &name, opts)
}

/// Writes a table back out as CSV with a header row. Values print in
/// their canonical forms — whole reals keep one decimal, dates are
/// ISO — so a reload under matching options reproduces an equal table.
pub fn write_csv<W: Write>(table: &Table, writer: W) -> Result<(), std::io::Error> {
    let mut csv = csv::WriterBuilder::new().from_writer(writer);
    csv.write_record(table.column_names())?;
    for row in table.rows() {
        csv.write_record(row.cells().iter().map(|v| v.to_string()))?;
    }
    csv.flush()
}
