//! Headers and renderings shared by the subcommands.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use bcr_core::conventions::{Conventions, CONVENTIONS};
use bcr_core::graph::text::print_graph;
use bcr_core::graph::Parity;
use bcr_core::linalg::DiagramVector;
use bcr_core::spaces::Caps;
use bcr_core::verify::FORMAT_VERSION;
use serde::Serialize;

/// Recorded at the top of every table and JSON document.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub format_version: u32,
    pub command: &'static str,
    pub parity: Parity,
    pub caps: Caps,
    pub conventions: Conventions,
}

impl Header {
    pub fn new(command: &'static str, parity: Parity, caps: Caps) -> Self {
        Header {
            format_version: FORMAT_VERSION,
            command,
            parity,
            caps,
            conventions: CONVENTIONS,
        }
    }

    /// The header as `#` comment lines.
    pub fn comment(&self) -> String {
        let c = &self.conventions;
        format!(
            "# format_version {}\n# command {}\n# parity {}\n# caps max_vertices={} max_edges={}\n\
             # conventions chord_row_sign={} odd_reversal_sign={} solid_contraction_sign={}\n",
            self.format_version,
            self.command,
            self.parity,
            self.caps.max_vertices,
            self.caps.max_edges,
            c.chord_row_sign,
            c.odd_reversal_sign,
            c.solid_contraction_sign
        )
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Writes to `out`, or to standard output when absent.
pub fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}

/// One `(coefficient, certificate)` line per term, each followed by the
/// graph in the text format, indented.
pub fn render_vector(v: &DiagramVector) -> String {
    if v.is_zero() {
        return "  0\n".to_string();
    }
    let mut out = String::new();
    for (k, c) in v
        .iter()
        .map(|(k, c)| (k, bcr_core::linalg::format_rational(c)))
    {
        out.push_str(&format!("  ({c}, {})\n", k.certificate()));
        for line in print_graph(k).lines() {
            out.push_str("      ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}
