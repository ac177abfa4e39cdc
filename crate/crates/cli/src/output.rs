use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::Format;
use crate::UsageError;

/// Header embedded in every report.
#[derive(Serialize, Debug, Clone)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
}

impl Meta {
    pub fn new(command: &'static str) -> Self {
        Self {
            tool: "eigencone",
            version: env!("CARGO_PKG_VERSION"),
            command,
        }
    }
}

/// Where a command's report goes.
pub struct Sink {
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    fn write(&self, bytes: &[u8]) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(bytes)?;
                out.flush()?;
                Ok(())
            }
        }
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(s.as_bytes())
    }

    pub fn csv<T: Serialize>(&self, rows: impl IntoIterator<Item = T>) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row)?;
        }
        self.write(&w.into_inner()?)
    }

    pub fn text(&self, s: &str) -> Result<()> {
        self.write(s.as_bytes())
    }

    /// Emits the JSON report, or the CSV rows with `--format csv`.
    pub fn report<T: Serialize, R: Serialize>(
        &self,
        report: &T,
        rows: impl IntoIterator<Item = R>,
    ) -> Result<()> {
        match self.format {
            Format::Json => self.json(report),
            Format::Csv => self.csv(rows),
        }
    }

    pub fn reject_csv(&self, command: &str) -> Result<()> {
        if self.format == Format::Csv {
            return Err(UsageError(format!("{command} has no CSV output")).into());
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Timing<'a> {
    command: &'a str,
    wall_clock_seconds: f64,
    threads: usize,
}

/// Wall-clock is kept out of the report so reruns compare byte for byte.
pub fn record_timing(output: Option<&Path>, command: &str, elapsed: Duration) -> Result<()> {
    let t = Timing {
        command,
        wall_clock_seconds: elapsed.as_secs_f64(),
        threads: rayon::current_num_threads(),
    };
    eprintln!(
        "{command}: {:.3} s on {} thread(s)",
        t.wall_clock_seconds, t.threads
    );
    if let Some(path) = output {
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".timing.json");
        fs::write(&sidecar, serde_json::to_string_pretty(&t)? + "\n")
            .with_context(|| format!("writing {}", PathBuf::from(&sidecar).display()))?;
    }
    Ok(())
}
