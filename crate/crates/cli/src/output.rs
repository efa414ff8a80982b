use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;
use superdirac::analysis::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let value = match reports {
                [one] => serde_json::to_value(one),
                many => serde_json::to_value(many),
            }
            .expect("reports serialize");
            serde_json::to_string_pretty(&value).expect("reports serialize") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("suite,params,name,anchor,status,data\n");
            for r in reports {
                for c in &r.checks {
                    let row = [
                        r.suite.clone(),
                        r.params.to_string(),
                        c.name.clone(),
                        c.anchor.clone(),
                        status_str(c.status).to_string(),
                        c.data.to_string(),
                    ];
                    let row: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                    out += &row.join(",");
                    out.push('\n');
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out += &format!("{} {}\n", r.suite, r.params);
                for c in &r.checks {
                    out += &format!("  [{}] {} ({})\n", status_str(c.status), c.name, c.anchor);
                    if c.status != Status::Pass {
                        out += &format!("      {}\n", c.data);
                    }
                }
            }
            out
        }
    }
}

/// Writes `text` to `path` atomically, or to stdout.
pub fn write(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        None => io::stdout().lock().write_all(text.as_bytes()),
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(p).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

fn failure_line(r: &Report) -> Option<String> {
    let c = r.first_failure()?;
    let detail = match &c.data {
        Value::Object(map) => map
            .get("reason")
            .and_then(Value::as_str)
            .map(str::to_string)
            .unwrap_or_else(|| c.data.to_string()),
        other => other.to_string(),
    };
    Some(format!("FAIL {} / {} [{}]: {detail}", r.suite, c.name, c.anchor))
}

/// Writes the reports and returns whether every check passed or was skipped.
pub fn emit(reports: &[Report], format: Format, out: Option<&Path>) -> io::Result<bool> {
    write(out, &render(reports, format))?;
    let mut ok = true;
    for r in reports {
        if let Some(line) = failure_line(r) {
            eprintln!("{line}");
            ok = false;
        }
    }
    Ok(ok)
}
