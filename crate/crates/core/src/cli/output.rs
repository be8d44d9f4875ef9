use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::error::Result;
use crate::experiments::SweepTable;

/// C-style `%.12e`: twelve mantissa digits, signed exponent of at least two digits.
pub fn format_e12(x: f64) -> String {
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.unsigned_abs())
}

/// Header row plus one line per record, LF-terminated.
pub fn format_csv(table: &SweepTable) -> String {
    let mut out = table.columns().join(",");
    out.push('\n');
    for rec in table.records() {
        let row: Vec<String> = rec.values().map(format_e12).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Records as an array of objects. Keys come out sorted.
pub fn table_to_json(table: &SweepTable) -> Value {
    Value::Array(
        table
            .records()
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, Value> = r
                    .fields()
                    .iter()
                    .map(|(k, v)| (k.clone(), number(*v)))
                    .collect();
                Value::Object(obj)
            })
            .collect(),
    )
}

pub(crate) fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn format_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn write_csv(table: &SweepTable, path: &Path) -> Result<()> {
    write_bytes(path, format_csv(table).as_bytes())
}

pub fn write_json(value: &Value, path: &Path) -> Result<()> {
    write_bytes(path, format_json(value).as_bytes())
}

/// Writes to `path`, or to stdout when it is `-`.
pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
    } else {
        fs::write(path, bytes)?;
    }
    Ok(())
}
