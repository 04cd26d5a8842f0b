//! CSV input and output.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use crate::CliError;

/// Raw `(t, y)` rows in file order.
pub fn read_points(path: &Path) -> Result<Vec<(f64, Option<f64>)>, CliError> {
    let source: Box<dyn Read> = if path.as_os_str() == "-" {
        Box::new(io::stdin())
    } else {
        Box::new(File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?)
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Parse(e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "y" {
        return Err(CliError::Parse(format!(
            "expected header `t,y`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| CliError::Parse(format!("line {line}: {e}")))?;
        let t = record[0].parse::<f64>().map_err(|_| {
            CliError::Parse(format!("line {line}: cannot parse t `{}`", &record[0]))
        })?;
        let y =
            match &record[1] {
                "" => None,
                field => Some(field.parse::<f64>().map_err(|_| {
                    CliError::Parse(format!("line {line}: cannot parse y `{field}`"))
                })?),
            };
        points.push((t, y));
    }
    Ok(points)
}

/// Buffered sink for `path`, or stdout when absent.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_rows(out: &mut dyn Write, header: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer
        .write_record(header.split(','))
        .and_then(|_| rows.iter().try_for_each(|r| writer.write_record(r)))
        .and_then(|_| writer.flush().map_err(csv::Error::from))
        .map_err(|e| CliError::Io(e.to_string()))
}
