//! Rectangular numeric results with a metadata block.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: BTreeMap::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> CliResult<()> {
        if row.len() != self.columns.len() {
            return Err(CliError::Physics(format!(
                "row of length {} for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(x) = row.iter().find(|x| !x.is_finite()) {
            return Err(CliError::Physics(format!("non-finite table entry {x}")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Keeps only `names`, in that order.
    pub fn select(&self, names: &[&str]) -> CliResult<Self> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| {
                self.columns
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| CliError::config(format!("no column `{n}`")))
            })
            .collect::<CliResult<_>>()?;
        Ok(Self {
            metadata: self.metadata.clone(),
            columns: names.iter().map(|s| s.to_string()).collect(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&k| r[k]).collect()).collect(),
        })
    }

    pub fn write<W: Write>(&self, out: W, format: Format) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    /// Metadata as leading `# key = value` lines, then a header and rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> CliResult<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {}", v.replace('\n', " "))?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut out, self).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }

    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut metadata = BTreeMap::new();
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = loop {
            let line = lines.next().ok_or_else(|| CliError::config("csv has no header"))?;
            match line.strip_prefix('#') {
                Some(m) => {
                    let (k, v) = m
                        .split_once(" = ")
                        .ok_or_else(|| CliError::config(format!("bad metadata line `{line}`")))?;
                    metadata.insert(k.trim().to_string(), v.to_string());
                }
                None => break line,
            }
        };
        let mut table = Self {
            metadata,
            columns: header.split(',').map(str::to_string).collect(),
            rows: Vec::new(),
        };
        for line in lines {
            let row = line
                .split(',')
                .map(|c| c.parse().map_err(|_| CliError::config(format!("bad number `{c}`"))))
                .collect::<CliResult<_>>()?;
            table.push(row).map_err(|e| CliError::config(e.to_string()))?;
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }
}
