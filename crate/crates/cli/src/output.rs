use std::io::{self, Write};

use serde::Serialize;

use crate::commands::CliResult;

/// Version of the JSON envelope written by every command.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    result: &'a T,
}

pub fn emit_json<T: Serialize>(command: &str, result: &T) -> CliResult<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(
        &mut out,
        &Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            result,
        },
    )?;
    writeln!(out)?;
    Ok(())
}

pub fn emit_csv(headers: &[&str], rows: Vec<Vec<String>>) -> CliResult<()> {
    let mut wr = csv::Writer::from_writer(io::stdout().lock());
    wr.write_record(headers)?;
    for row in rows {
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

/// Plain decimal for moderate magnitudes, scientific notation otherwise.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}
