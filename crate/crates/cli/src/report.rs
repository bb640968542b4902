//! Report documents: ordered `dotted.key = value` entries with two renderings.

use std::fmt::Display;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Kv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "kv" => Ok(Format::Kv),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportDocument {
    entries: Vec<(String, String)>,
}

impl ReportDocument {
    pub fn new(command: &str) -> ReportDocument {
        let mut doc = ReportDocument::default();
        doc.set("tool.name", "leibniz");
        doc.set("tool.version", env!("CARGO_PKG_VERSION"));
        doc.set("tool.command", command);
        doc
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: impl Into<String>, value: impl Display) {
        let key = key.into();
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// `kv`: sorted keys, one per line. `text`: insertion order grouped under
    /// `[section]` headings.
    pub fn emit(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Kv => {
                let mut sorted: Vec<&(String, String)> = self.entries.iter().collect();
                sorted.sort();
                for (k, v) in sorted {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
            Format::Text => {
                let mut sections: Vec<(&str, Vec<(&str, &str)>)> = Vec::new();
                for (k, v) in &self.entries {
                    let (section, rest) = k.split_once('.').unwrap_or((k.as_str(), ""));
                    match sections.iter_mut().find(|(s, _)| *s == section) {
                        Some((_, items)) => items.push((rest, v)),
                        None => sections.push((section, vec![(rest, v)])),
                    }
                }
                for (i, (section, items)) in sections.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("[{section}]\n"));
                    let width = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in items {
                        out.push_str(&format!("  {k:<width$}  {v}\n"));
                    }
                }
            }
        }
        out
    }
}
