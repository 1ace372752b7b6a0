use crate::dynamics::{Orbit, SystemState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const HEADER: [&str; 3] = ["i", "x", "y"];

/// Writes an orbit as `i,x,y` rows with 17 significant digits, so values
/// survive a round trip through [`parse_csv`] exactly.
pub fn to_csv<T: Scalar>(orbit: &Orbit<T>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fmt = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(HEADER).map_err(fmt)?;
    for s in &orbit.states {
        w.write_record([
            s.index.to_string(),
            format!("{:.16e}", s.x.as_f64()),
            format!("{:.16e}", s.y.as_f64()),
        ])
        .map_err(fmt)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

/// Reads rows produced by [`to_csv`].
pub fn parse_csv<T: Scalar>(text: &str) -> Result<Vec<SystemState<T>>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| Error::Format(e.to_string()))?;
    if headers.iter().map(str::trim).ne(HEADER) {
        return Err(Error::Format(format!(
            "expected header `i,x,y`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        let row = line + 2;
        if rec.len() != 3 {
            return Err(Error::Format(format!(
                "row {row}: expected 3 fields, found {}",
                rec.len()
            )));
        }
        let index = rec[0]
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Format(format!("row {row}: bad index `{}`: {e}", &rec[0])))?;
        let num = |k: usize| -> Result<T> {
            let v: f64 = rec[k]
                .trim()
                .parse()
                .map_err(|e| Error::Format(format!("row {row}: bad number `{}`: {e}", &rec[k])))?;
            Ok(T::lit(v))
        };
        out.push(SystemState {
            x: num(1)?,
            y: num(2)?,
            index,
        });
    }
    Ok(out)
}
