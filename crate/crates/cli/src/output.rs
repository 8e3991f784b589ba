//! Report assembly and delivery.
//!
//! Every command produces one [`Outcome`]: a machine-readable JSON
//! payload, an optional CSV table (exact mode only), a human-readable
//! text block, and the exit status. The JSON form is wrapped in a fixed
//! envelope naming the tool, its version, and the effective
//! configuration, so downstream consumers can pin what produced a file.

use crate::args::Format;
use crate::error::CliError;
use serde::Serialize;
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::Path;

/// The fixed JSON envelope; field order is part of the format.
#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a serde_json::Value,
    result: &'a serde_json::Value,
}

/// One command's complete output in every supported rendering.
pub struct Outcome {
    /// The effective configuration echoed into the JSON envelope.
    pub config: serde_json::Value,
    /// The machine-readable payload.
    pub result: serde_json::Value,
    /// The CSV rendering; `None` when the mode has no exact table.
    pub csv: Option<String>,
    /// The human-readable rendering.
    pub pretty: String,
    /// 0 on success, 4 when a verification or self-test failed.
    pub exit: u8,
}

/// Renders the outcome in the requested format, newline-terminated.
pub fn render(outcome: &Outcome, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let envelope = Envelope {
                tool: "muub-kit",
                version: env!("CARGO_PKG_VERSION"),
                config: &outcome.config,
                result: &outcome.result,
            };
            let mut text =
                serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Invalid(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => outcome.csv.clone().ok_or_else(|| {
            CliError::Invalid(
                "csv output is exact-only; rerun with --mode exact or --format json".into(),
            )
        }),
        Format::Pretty => Ok(outcome.pretty.clone()),
    }
}

/// Writes the rendered text to the file behind `--out`, or to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Whether pretty output may use ANSI color: only on a terminal, and
/// never when MUUB_NO_COLOR is set.
pub fn colors_enabled() -> bool {
    std::env::var_os("MUUB_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

/// Wraps `text` in an ANSI color code when enabled.
pub fn paint(text: &str, code: &str, enabled: bool) -> String {
    if enabled {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

/// Green when enabled.
pub fn green(text: &str, enabled: bool) -> String {
    paint(text, "32", enabled)
}

/// Red when enabled.
pub fn red(text: &str, enabled: bool) -> String {
    paint(text, "31", enabled)
}

/// A CSV table with a fixed header; cells are plain (never quoted), so
/// every producer must keep commas out of cell values.
pub struct CsvTable {
    text: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        debug_assert!(
            cells.iter().all(|c| !c.contains(',') && !c.contains('\n')),
            "csv cells must stay comma-free"
        );
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_orders_fields_and_pins_the_tool_name() {
        let outcome = Outcome {
            config: serde_json::json!({"command": "verify", "d": 3}),
            result: serde_json::json!({"ok": true}),
            csv: None,
            pretty: String::new(),
            exit: 0,
        };
        let text = render(&outcome, Format::Json).unwrap();
        let tool_at = text.find("\"tool\"").unwrap();
        let version_at = text.find("\"version\"").unwrap();
        let config_at = text.find("\"config\"").unwrap();
        let result_at = text.find("\"result\"").unwrap();
        assert!(tool_at < version_at && version_at < config_at && config_at < result_at);
        assert!(text.contains("\"muub-kit\""));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_without_a_table_is_rejected() {
        let outcome = Outcome {
            config: serde_json::json!({}),
            result: serde_json::json!({}),
            csv: None,
            pretty: String::new(),
            exit: 0,
        };
        assert!(render(&outcome, Format::Csv).is_err());
    }

    #[test]
    fn paint_is_inert_when_disabled() {
        assert_eq!(green("ok", false), "ok");
        assert_eq!(red("bad", true), "\x1b[31mbad\x1b[0m");
    }

    #[test]
    fn csv_tables_join_rows_with_newlines() {
        let mut table = CsvTable::new(&["a", "b"]);
        table.row(&["1".into(), "2/3".into()]);
        assert_eq!(table.finish(), "a,b\n1,2/3\n");
    }
}
