//! Minimal RFC 4180 reader: quoted fields, doubled-quote escapes, CRLF and
//! LF records. A header row is required; columns are addressed by name.

use quasimean::real::ExactDecimal;

#[derive(Debug)]
pub enum CsvError {
    Io(std::io::Error),
    MissingHeader,
    UnknownColumn(String),
    BadCell { row: usize, cell: String },
    UnterminatedQuote,
}

impl std::fmt::Display for CsvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CsvError::Io(e) => write!(f, "cannot read file: {e}"),
            CsvError::MissingHeader => write!(f, "a header row is required"),
            CsvError::UnknownColumn(c) => write!(f, "no column named {c:?}"),
            CsvError::BadCell { row, cell } => {
                write!(f, "row {row}: cell {cell:?} is not a number")
            }
            CsvError::UnterminatedQuote => write!(f, "unterminated quoted field"),
        }
    }
}

fn parse_records(text: &str) -> Result<Vec<Vec<String>>, CsvError> {
    let mut records = Vec::new();
    let mut record: Vec<String> = Vec::new();
    let mut field = String::new();
    let mut chars = text.chars().peekable();
    let mut in_quotes = false;
    let mut any = false;
    while let Some(c) = chars.next() {
        any = true;
        if in_quotes {
            match c {
                '"' => {
                    if chars.peek() == Some(&'"') {
                        chars.next();
                        field.push('"');
                    } else {
                        in_quotes = false;
                    }
                }
                other => field.push(other),
            }
            continue;
        }
        match c {
            '"' => in_quotes = true,
            ',' => record.push(std::mem::take(&mut field)),
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    chars.next();
                }
                record.push(std::mem::take(&mut field));
                records.push(std::mem::take(&mut record));
            }
            '\n' => {
                record.push(std::mem::take(&mut field));
                records.push(std::mem::take(&mut record));
            }
            other => field.push(other),
        }
    }
    if in_quotes {
        return Err(CsvError::UnterminatedQuote);
    }
    if any && (!field.is_empty() || !record.is_empty()) {
        record.push(field);
        records.push(record);
    }
    Ok(records)
}

/// Reads one named numeric column; every cell must parse as a decimal.
pub fn read_column(path: &str, column: &str) -> Result<Vec<ExactDecimal>, CsvError> {
    let text = std::fs::read_to_string(path).map_err(CsvError::Io)?;
    let records = parse_records(&text)?;
    let mut rows = records.into_iter();
    let header = rows.next().ok_or(CsvError::MissingHeader)?;
    let idx = header
        .iter()
        .position(|h| h.trim() == column)
        .ok_or_else(|| CsvError::UnknownColumn(column.to_string()))?;
    let mut out = Vec::new();
    for (i, row) in rows.enumerate() {
        if row.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let cell = row
            .get(idx)
            .map(|s| s.trim().to_string())
            .unwrap_or_default();
        let value: ExactDecimal = cell.parse().map_err(|_| CsvError::BadCell {
            row: i + 2,
            cell: cell.clone(),
        })?;
        out.push(value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, body: &str) -> String {
        let path = std::env::temp_dir().join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn reads_named_columns_with_quoting() {
        let path = write_temp(
            "quasimean_csv_test_1.csv",
            "name,\"value\"\r\nalpha,1.5\r\n\"be,ta\",2\r\ngamma,\"3.25\"\r\n",
        );
        let col = read_column(&path, "value").unwrap();
        assert_eq!(col.len(), 3);
        assert_eq!(col[2], "3.25".parse().unwrap());
    }

    #[test]
    fn bad_cells_report_their_row() {
        let path = write_temp("quasimean_csv_test_2.csv", "v\n1\nx\n");
        match read_column(&path, "v") {
            Err(CsvError::BadCell { row, .. }) => assert_eq!(row, 3),
            other => panic!("expected a bad cell error, got {other:?}"),
        }
    }

    #[test]
    fn missing_column_is_reported() {
        let path = write_temp("quasimean_csv_test_3.csv", "a,b\n1,2\n");
        assert!(matches!(
            read_column(&path, "c"),
            Err(CsvError::UnknownColumn(_))
        ));
    }
}
