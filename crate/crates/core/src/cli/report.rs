use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Wrapper written around every command result.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
    pub seed: u64,
    /// Whether the command's checks passed; decides the exit code.
    pub ok: bool,
    pub result: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Envelope<'a, C, R> {
    pub fn new(command: &'a str, config: &'a C, seed: u64, ok: bool, result: &'a R) -> Self {
        Envelope {
            tool: "hzl",
            version: crate::VERSION,
            command,
            config,
            seed,
            ok,
            result,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Writes `text` to `dir/name`, creating the directory.
pub fn write_into(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text).map_err(Error::from)
}

/// Exit status for an error: 3 for bad input, 4 for numerical trouble.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::ZeroPolynomial(_)
        | Error::AtPole(_)
        | Error::UnsupportedCase(_)
        | Error::EmptySelector(_)
        | Error::NoGuarantee { .. }
        | Error::Json(_)
        | Error::Io(_) => 3,
        Error::AuditFailed(_) => 2,
        _ => 4,
    }
}
