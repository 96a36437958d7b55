use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::Result;
use crate::report::record::VerificationReport;

pub const SCHEMA_VERSION: &str = "1.0";

/// The report document: `{version, config_echo, reports}`.
pub fn render_report(config_echo: &Value, reports: &[VerificationReport]) -> String {
    let doc = json!({
        "version": SCHEMA_VERSION,
        "config_echo": config_echo,
        "reports": reports,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}
