use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::args::{Format, OutputArgs};
use crate::kernels::KernelParams;
use crate::{Result, Tolerances, TOLERANCES};

pub const TOOL: &str = "strict-dpp";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parameters echoed in every artifact, with the derived `nu`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ParamSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    pub negate_nu: bool,
}

impl From<&KernelParams> for ParamSummary {
    fn from(p: &KernelParams) -> Self {
        let nu = p.nu().map(|n| n.to_string());
        match *p {
            KernelParams::Model(m) => Self {
                alpha: Some(m.alpha()),
                xi: Some(m.xi()),
                theta: None,
                nu,
                negate_nu: m.nu_negated(),
            },
            KernelParams::Plancherel(t) => Self {
                theta: Some(t.theta()),
                ..Self::default()
            },
            KernelParams::Alpha { alpha, negate_nu } => Self {
                alpha: Some(alpha),
                nu,
                negate_nu,
                ..Self::default()
            },
        }
    }
}

/// Header embedded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamSummary>,
    /// Truncation size.
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub tolerances: Tolerances,
}

impl Metadata {
    pub fn new(command: &'static str) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            family: None,
            params: None,
            n: None,
            seed: None,
            count: None,
            tolerances: TOLERANCES,
        }
    }

    /// `# key: value` lines for the top of a CSV file.
    pub fn csv_comment(&self) -> Result<String> {
        let mut out = String::new();
        if let Value::Object(map) = serde_json::to_value(self)? {
            for (k, v) in map {
                let text = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("# {k}: {text}\n"));
            }
        }
        Ok(out)
    }
}

/// A JSON document `{metadata, ...body}`.
pub fn json_document<B: Serialize>(metadata: &Metadata, body: &B) -> Result<Vec<u8>> {
    let mut doc = serde_json::Map::new();
    doc.insert("metadata".into(), serde_json::to_value(metadata)?);
    match serde_json::to_value(body)? {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("data".into(), other);
        }
    }
    let mut bytes = serde_json::to_vec_pretty(&Value::Object(doc))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// A CSV document: metadata comments, optional extra comment lines, then
/// the header row and records.
pub fn csv_document(metadata: &Metadata, extra_comments: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut bytes = metadata.csv_comment()?.into_bytes();
    for line in extra_comments {
        bytes.extend_from_slice(format!("# {line}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut bytes);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(bytes)
}

/// Writes a finished artifact to the output file, or to stdout.
pub fn emit(out: &OutputArgs, bytes: &[u8]) -> Result<()> {
    match &out.output {
        Some(path) => write_file(path, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)?;
    Ok(())
}

pub fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}
