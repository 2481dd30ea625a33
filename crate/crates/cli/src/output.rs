//! JSON output, written atomically, and the exit-code convention.

use std::fs;
use std::io::Write;
use std::path::Path;

use hypell::Error;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CapacityExceeded { .. } | Error::GroupTooLarge { .. } | Error::SamplingExhausted { .. }) => EXIT_CAPACITY,
            _ => EXIT_VALIDATION,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => format!("{e:?}").split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string(),
            CliError::Io(_) => "Io".into(),
            CliError::Input(_) => "Input".into(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) | CliError::Input(m) => m.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"error": {"kind": self.kind(), "message": self.message(), "exit_code": self.exit_code()}})
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Pretty JSON to `path` via a temporary file in the same directory and a
/// rename, or to stdout when no path is given.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    let Some(path) = path else {
        print!("{text}");
        return Ok(());
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::Io(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

pub fn read_json(path: &Path) -> CliResult<serde_json::Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
