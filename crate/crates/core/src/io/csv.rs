use std::fmt::Write as _;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

/// A real matrix with optional row and column names, as stored in CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvMatrix {
    pub values: Array2<f64>,
    pub row_names: Option<Vec<String>>,
    pub col_names: Option<Vec<String>>,
}

fn check_name(name: &str) -> Result<()> {
    if name.contains([',', '"', '\n', '\r']) {
        return Err(Error::InvalidInput(format!(
            "name {name:?} contains a CSV delimiter or quote"
        )));
    }
    Ok(())
}

/// Renders the matrix. Values use the shortest decimal form that parses back
/// to the identical `f64` (never more than 17 significant digits).
pub fn format_csv_matrix(
    values: &Array2<f64>,
    row_names: Option<&[String]>,
    col_names: Option<&[String]>,
) -> Result<String> {
    if let Some(r) = row_names {
        if r.len() != values.nrows() {
            return Err(Error::Dimension(format!(
                "{} row names for {} rows",
                r.len(),
                values.nrows()
            )));
        }
        r.iter().try_for_each(|n| check_name(n))?;
    }
    if let Some(c) = col_names {
        if c.len() != values.ncols() {
            return Err(Error::Dimension(format!(
                "{} column names for {} columns",
                c.len(),
                values.ncols()
            )));
        }
        c.iter().try_for_each(|n| check_name(n))?;
    }

    let mut out = String::new();
    if let Some(cols) = col_names {
        if row_names.is_some() {
            out.push(',');
        }
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    for (i, row) in values.rows().into_iter().enumerate() {
        let mut first = true;
        if let Some(r) = row_names {
            out.push_str(&r[i]);
            first = false;
        }
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_csv_matrix(
    values: &Array2<f64>,
    row_names: Option<&[String]>,
    col_names: Option<&[String]>,
    path: impl AsRef<Path>,
) -> Result<()> {
    let text = format_csv_matrix(values, row_names, col_names)?;
    super::write_bytes(path.as_ref(), text.as_bytes())
}

fn is_number(field: &str) -> bool {
    field.trim().parse::<f64>().is_ok()
}

/// Parses a matrix written by [`format_csv_matrix`]. A header line is detected
/// when its fields are not all numeric; a row-name column is detected when the
/// header starts with an empty cell or the first data field is not numeric.
pub fn parse_csv_matrix(text: &str) -> Result<CsvMatrix> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    if lines.is_empty() {
        return Ok(CsvMatrix {
            values: Array2::zeros((0, 0)),
            row_names: None,
            col_names: None,
        });
    }

    let first: Vec<&str> = lines[0].1.split(',').collect();
    let has_header = !first.iter().all(|f| is_number(f));
    let data = if has_header { &lines[1..] } else { &lines[..] };
    let has_row_names = if has_header {
        first[0].is_empty()
            || data
                .first()
                .is_some_and(|(_, l)| !is_number(l.split(',').next().unwrap_or("")))
    } else {
        false
    };

    let col_names = has_header.then(|| {
        let skip = usize::from(has_row_names);
        first[skip..]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    });
    let mut ncols = col_names.as_ref().map(|c| c.len());
    let mut row_names = has_row_names.then(Vec::new);
    let mut values = Vec::new();
    for &(lineno, line) in data {
        let mut fields = line.split(',');
        if let Some(names) = row_names.as_mut() {
            names.push(fields.next().unwrap_or("").to_string());
        }
        let row: Vec<f64> = fields
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| Error::Csv {
                    line: lineno,
                    msg: format!("{f:?} is not a number"),
                })
            })
            .collect::<Result<_>>()?;
        match ncols {
            Some(n) if n != row.len() => {
                return Err(Error::Csv {
                    line: lineno,
                    msg: format!("expected {n} values, found {}", row.len()),
                })
            }
            None => ncols = Some(row.len()),
            _ => {}
        }
        values.extend(row);
    }
    let ncols = ncols.unwrap_or(0);
    let nrows = values.len().checked_div(ncols).unwrap_or(data.len());
    let values = Array2::from_shape_vec((nrows, ncols), values).map_err(|e| Error::Csv {
        line: 0,
        msg: e.to_string(),
    })?;
    Ok(CsvMatrix {
        values,
        row_names,
        col_names,
    })
}

pub fn read_csv_matrix(path: impl AsRef<Path>) -> Result<CsvMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv_matrix(&text)
}
