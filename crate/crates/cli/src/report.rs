//! Experiment reports and their on-disk forms.
//!
//! CSV layout: a metadata block of `# key=value` comment lines (config
//! echo, version, timestamp), then the header row and numeric data rows,
//! LF line endings, '.' decimal separator. The data region — everything
//! after the metadata block — is byte-stable for a fixed configuration;
//! the timestamp lives only in the metadata block.

use std::io::Write;

use crate::config::OutputFormat;

/// Rows of named columns plus a metadata header.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment: &'static str,
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl ExperimentReport {
    pub fn new(
        experiment: &'static str,
        mut metadata: Vec<(String, String)>,
        columns: Vec<&'static str>,
    ) -> Self {
        metadata.push(("version".into(), env!("CARGO_PKG_VERSION").into()));
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".into());
        metadata.push(("timestamp".into(), ts));
        Self {
            experiment,
            metadata,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut dyn Write, format: OutputFormat) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.metadata {
            write!(out, "# {k}={v}\n")?;
        }
        write!(out, "{}\n", self.columns.join(","))?;
        for row in &self.rows {
            write!(out, "{}\n", row.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let doc = serde_json::json!({
            "experiment": self.experiment,
            "meta": meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        write!(out, "{}\n", serde_json::to_string_pretty(&doc)?)
    }
}

/// Shortest round-trip decimal form of a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// The CSV data region: everything after the leading `#` metadata lines.
pub fn csv_data_region(text: &str) -> String {
    text.lines()
        .skip_while(|l| l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape_and_data_region() {
        let mut rep = ExperimentReport::new(
            "demo",
            vec![("seed".into(), "1".into())],
            vec!["a", "b"],
        );
        rep.push_row(vec!["1".into(), "0.5".into()]);
        let mut buf = Vec::new();
        rep.write(&mut buf, OutputFormat::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# seed=1\n"));
        assert_eq!(csv_data_region(&text), "a,b\n1,0.5\n");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn fmt_roundtrips() {
        for x in [0.25, 1.0 / 3.0, 1e-12, -0.0, 123456.789] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
