use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::{HaltRecord, HaltTable};
use crate::codes::BitString;
use crate::error::{Error, Result};
use crate::qpl::{ConditionSpec, MachineSpec, Mode};
use crate::qstate::{Amp, PureState};

pub const TABLE_VERSION: u32 = 1;

/// First line of a table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableManifest {
    #[serde(rename = "W")]
    pub workspace: usize,
    pub mode: Mode,
    pub n: usize,
    pub m: Option<usize>,
    pub aux: BitString,
    pub max_len: usize,
    pub fuel: u64,
    pub digest: String,
    pub version: u32,
}

impl TableManifest {
    pub fn of(table: &HaltTable) -> Self {
        let cond = table.cond();
        Self {
            workspace: table.spec().workspace(),
            mode: table.spec().mode(),
            n: cond.n,
            m: cond.m,
            aux: cond.aux.clone(),
            max_len: table.max_len(),
            fuel: table.fuel(),
            digest: table.digest(),
            version: TABLE_VERSION,
        }
    }

    pub fn spec(&self) -> Result<MachineSpec> {
        MachineSpec::new(self.workspace, self.mode)
    }

    pub fn cond(&self) -> ConditionSpec {
        ConditionSpec {
            n: self.n,
            m: self.m,
            aux: self.aux.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RecordLine {
    bits: BitString,
    steps: u64,
    state: Vec<Amp>,
}

#[derive(Serialize)]
struct RecordRef<'a> {
    bits: &'a BitString,
    steps: u64,
    state: &'a [Amp],
}

pub(super) fn record_lines(table: &HaltTable) -> impl Iterator<Item = String> + '_ {
    table.records().iter().map(|r| {
        serde_json::to_string(&RecordRef {
            bits: &r.bits,
            steps: r.steps,
            state: r.output.amps(),
        })
        .expect("record serializes")
    })
}

/// The file contents, manifest first, one record per line.
pub fn table_lines(table: &HaltTable) -> Vec<String> {
    let manifest = serde_json::to_string(&TableManifest::of(table)).expect("manifest serializes");
    std::iter::once(manifest)
        .chain(record_lines(table))
        .collect()
}

pub fn write_table(table: &HaltTable, mut w: impl Write) -> Result<()> {
    for line in table_lines(table) {
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn save_table(table: &HaltTable, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    write_table(table, &mut f)?;
    f.flush()?;
    Ok(())
}

pub fn read_table(r: impl Read) -> Result<HaltTable> {
    let mut lines = BufReader::new(r).lines();
    let head = lines
        .next()
        .ok_or_else(|| Error::Table("empty table file".into()))??;
    let raw: Value = serde_json::from_str(&head)?;
    let version = raw.get("version").and_then(Value::as_u64).unwrap_or(0) as u32;
    if version != TABLE_VERSION {
        return Err(Error::Version(version));
    }
    let manifest: TableManifest = serde_json::from_value(raw)?;
    let spec = manifest.spec()?;
    let cond = manifest.cond();
    cond.validate(&spec)?;

    let mut body = Vec::new();
    for line in lines {
        let line = line?;
        if !line.is_empty() {
            body.push(line);
        }
    }
    let mut h = Sha256::new();
    for line in &body {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    let actual = hex::encode(h.finalize());
    if actual != manifest.digest {
        return Err(Error::Digest {
            expected: manifest.digest,
            actual,
        });
    }

    let width = cond.output_width();
    let mut records: Vec<HaltRecord> = Vec::with_capacity(body.len());
    for line in &body {
        let rec: RecordLine = serde_json::from_str(line)?;
        if rec.bits.len() > manifest.max_len {
            return Err(Error::Table(format!(
                "record {} is longer than max_len {}",
                rec.bits, manifest.max_len
            )));
        }
        if let Some(prev) = records.last() {
            if prev.bits >= rec.bits {
                return Err(Error::Table(format!("record {} out of order", rec.bits)));
            }
        }
        let output = PureState::new(width, rec.state)?;
        records.push(HaltRecord {
            bits: rec.bits,
            n: width,
            output,
            steps: rec.steps,
        });
    }
    Ok(HaltTable::from_parts(
        spec,
        cond,
        manifest.max_len,
        manifest.fuel,
        records,
    ))
}

pub fn load_table(path: impl AsRef<Path>) -> Result<HaltTable> {
    read_table(fs::File::open(path)?)
}
