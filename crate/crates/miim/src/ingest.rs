//! File ingestion: delimited text and fixed-arity transaction files.
//!
//! Tokens are interned per column in first-appearance order, so cell codes
//! carry no meaning beyond equality within their column. An empty field in
//! a delimited file marks the cell absent: it joins no item and therefore
//! lowers no frequency — combinations are only counted where values are
//! actually present.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::Dataset;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("failed to read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}: no data rows")]
    Empty { path: PathBuf },
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
}

/// Per-column token interner, kept for rendering results back as text.
#[derive(Clone, Debug, Default)]
pub struct ValueDictionary {
    columns: Vec<ColumnDict>,
    column_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default)]
struct ColumnDict {
    codes: HashMap<String, u32>,
    tokens: Vec<String>,
}

impl ValueDictionary {
    fn with_cols(cols: usize, column_names: Option<Vec<String>>) -> Self {
        ValueDictionary { columns: vec![ColumnDict::default(); cols], column_names }
    }

    /// Interns `token` in `col`, assigning dense codes in appearance order.
    fn encode(&mut self, col: usize, token: &str) -> u32 {
        let dict = &mut self.columns[col];
        if let Some(&code) = dict.codes.get(token) {
            return code;
        }
        let code = dict.tokens.len() as u32;
        dict.codes.insert(token.to_owned(), code);
        dict.tokens.push(token.to_owned());
        code
    }

    /// The original token behind a cell code.
    pub fn decode(&self, col: u32, code: u32) -> &str {
        &self.columns[col as usize].tokens[code as usize]
    }

    /// Header name of the column if one was read, else its 0-based index.
    pub fn column_label(&self, col: u32) -> String {
        match &self.column_names {
            Some(names) => names[col as usize].clone(),
            None => col.to_string(),
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Distinct tokens seen in a column.
    pub fn domain_size(&self, col: u32) -> usize {
        self.columns[col as usize].tokens.len()
    }
}

/// Reads a delimited text file: one record per line, single-character
/// delimiter, empty fields marking absent cells. With `has_header` the
/// first line supplies column names instead of data.
pub fn read_delimited(
    path: &Path,
    delimiter: char,
    has_header: bool,
) -> Result<(Dataset, ValueDictionary), IngestError> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();

    let mut header = None;
    if has_header {
        match lines.next() {
            Some((_, line)) => {
                header = Some(line?.split(delimiter).map(str::to_owned).collect::<Vec<_>>())
            }
            None => return Err(IngestError::Empty { path: path.to_owned() }),
        }
    }

    let mut dict: Option<ValueDictionary> = None;
    let mut cells: Vec<Option<u32>> = Vec::new();
    let mut rows = 0usize;
    let mut cols = header.as_ref().map_or(0, Vec::len);

    for (idx, line) in lines {
        let line = line?;
        let fields: Vec<&str> = line.split(delimiter).collect();
        if dict.is_none() {
            if cols == 0 {
                cols = fields.len();
            }
            dict = Some(ValueDictionary::with_cols(cols, header.take()));
        }
        if fields.len() != cols {
            return Err(IngestError::Ragged { line: idx + 1, expected: cols, found: fields.len() });
        }
        let dict = dict.as_mut().unwrap();
        for (col, field) in fields.iter().enumerate() {
            cells.push(if field.is_empty() { None } else { Some(dict.encode(col, field)) });
        }
        rows += 1;
    }

    match dict {
        Some(dict) if rows > 0 => Ok((Dataset::new(rows, cols, cells), dict)),
        _ => Err(IngestError::Empty { path: path.to_owned() }),
    }
}

/// Reads a transaction-style file of whitespace-separated tokens with one
/// transaction per line. Every line must carry the same number of tokens;
/// the token position defines the column.
pub fn read_fixed_transactions(path: &Path) -> Result<(Dataset, ValueDictionary), IngestError> {
    let reader = BufReader::new(File::open(path)?);
    let mut dict: Option<ValueDictionary> = None;
    let mut cells: Vec<Option<u32>> = Vec::new();
    let mut rows = 0usize;
    let mut cols = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if dict.is_none() {
            cols = tokens.len();
            dict = Some(ValueDictionary::with_cols(cols, None));
        }
        if tokens.len() != cols {
            return Err(IngestError::Ragged { line: idx + 1, expected: cols, found: tokens.len() });
        }
        let dict = dict.as_mut().unwrap();
        for (col, token) in tokens.iter().enumerate() {
            cells.push(Some(dict.encode(col, token)));
        }
        rows += 1;
    }

    match dict {
        Some(dict) if rows > 0 && cols > 0 => Ok((Dataset::new(rows, cols, cells), dict)),
        _ => Err(IngestError::Empty { path: path.to_owned() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_comma_delimited_table() {
        let f = write_temp("1,2,3,4\n1,2,7,4\n1,6,3,4\n5,2,3,4\n");
        let (d, dict) = read_delimited(f.path(), ',', false).unwrap();
        assert_eq!((d.rows(), d.cols()), (4, 4));
        // Cells decode back to the original tokens.
        assert_eq!(dict.decode(2, d.cell(1, 2).unwrap()), "7");
        assert_eq!(dict.decode(0, d.cell(3, 0).unwrap()), "5");
        // Equal tokens share a code within a column.
        assert_eq!(d.cell(0, 0), d.cell(2, 0));
        assert_eq!(dict.domain_size(3), 1);
    }

    #[test]
    fn empty_fields_become_absent_cells() {
        let f = write_temp("a,,c\n,b,c\n");
        let (d, _) = read_delimited(f.path(), ',', false).unwrap();
        assert_eq!(d.cell(0, 1), None);
        assert_eq!(d.cell(1, 0), None);
        assert!(d.cell(0, 0).is_some());
    }

    #[test]
    fn header_supplies_column_labels() {
        let f = write_temp("age;city\n30;york\n31;york\n");
        let (d, dict) = read_delimited(f.path(), ';', true).unwrap();
        assert_eq!(d.rows(), 2);
        assert_eq!(dict.column_label(1), "city");
        let g = write_temp("30;york\n");
        let (_, plain) = read_delimited(g.path(), ';', false).unwrap();
        assert_eq!(plain.column_label(1), "1");
    }

    #[test]
    fn ragged_rows_name_the_line() {
        let f = write_temp("1,2\n1,2\n1,2,3\n");
        match read_delimited(f.path(), ',', false) {
            Err(IngestError::Ragged { line: 3, expected: 2, found: 3 }) => {}
            other => panic!("expected ragged error on line 3, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_header_only_files_are_rejected() {
        let f = write_temp("");
        assert!(matches!(read_delimited(f.path(), ',', false), Err(IngestError::Empty { .. })));
        let g = write_temp("a,b\n");
        assert!(matches!(read_delimited(g.path(), ',', true), Err(IngestError::Empty { .. })));
    }

    #[test]
    fn transactions_map_token_position_to_column() {
        let f = write_temp("1 4 9\n2 4 9\n1 5 9\n");
        let (d, dict) = read_fixed_transactions(f.path()).unwrap();
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(dict.decode(1, d.cell(2, 1).unwrap()), "5");
        assert_eq!(dict.domain_size(2), 1);
    }

    #[test]
    fn transactions_reject_varying_arity() {
        let f = write_temp("1 2 3\n1 2\n");
        match read_fixed_transactions(f.path()) {
            Err(IngestError::Ragged { line: 2, expected: 3, found: 2 }) => {}
            other => panic!("expected ragged error, got {other:?}"),
        }
    }

    #[test]
    fn single_cell_file_is_a_one_by_one_dataset() {
        let f = write_temp("7\n");
        let (d, _) = read_delimited(f.path(), ',', false).unwrap();
        assert_eq!((d.rows(), d.cols()), (1, 1));
    }
}
