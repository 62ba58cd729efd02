use std::fmt;
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classifier::ClassLabel;
use crate::error::{invalid, Error, Result};
use crate::noise::ErrorMode;
use crate::qecc::CodeKind;

/// Protection applied to a circuit: none, or one of the codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeChoice {
    None,
    Steane,
    D3Surface,
    D5Surface,
}

impl CodeChoice {
    pub const ALL: [CodeChoice; 4] = [
        CodeChoice::None,
        CodeChoice::Steane,
        CodeChoice::D3Surface,
        CodeChoice::D5Surface,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CodeChoice::None => "None",
            CodeChoice::Steane => "Steane",
            CodeChoice::D3Surface => "D3Surface",
            CodeChoice::D5Surface => "D5Surface",
        }
    }

    pub fn code_kind(&self) -> Option<CodeKind> {
        match self {
            CodeChoice::None => None,
            CodeChoice::Steane => Some(CodeKind::Steane),
            CodeChoice::D3Surface => Some(CodeKind::D3Surface),
            CodeChoice::D5Surface => Some(CodeKind::D5Surface),
        }
    }
}

impl From<CodeKind> for CodeChoice {
    fn from(kind: CodeKind) -> CodeChoice {
        match kind {
            CodeKind::Steane => CodeChoice::Steane,
            CodeKind::D3Surface => CodeChoice::D3Surface,
            CodeKind::D5Surface => CodeChoice::D5Surface,
        }
    }
}

impl fmt::Display for CodeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<CodeChoice> {
        match s {
            "None" | "none" => Ok(CodeChoice::None),
            other => other.parse::<CodeKind>().map(CodeChoice::from),
        }
    }
}

/// Rounds to six significant digits, the precision used in every output file.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Shortest decimal text of `x` rounded to six significant digits.
pub fn format_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Key identifying one sweep cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub classifier: usize,
    pub class_label: ClassLabel,
    pub code: CodeChoice,
    pub mode: ErrorMode,
    /// Bit pattern of the noise level.
    pub p_bits: u64,
}

/// Success statistics of one reference point under one noise setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// Number of classifier qubits (1 or 2).
    pub classifier: usize,
    pub class_label: ClassLabel,
    pub code: CodeChoice,
    pub mode: ErrorMode,
    pub p: f64,
    pub shots: usize,
    pub successes: usize,
    /// `successes / shots`.
    pub pst: f64,
    /// Noiseless success probability of the executed circuit.
    pub clean_pst: f64,
    /// Noiseless test accuracy of the synthesized classifier.
    pub clean_accuracy: f64,
    pub qubits: usize,
    pub gates: usize,
    pub depth: usize,
}

impl ResultRecord {
    pub fn key(&self) -> CellKey {
        CellKey {
            classifier: self.classifier,
            class_label: self.class_label,
            code: self.code,
            mode: self.mode,
            p_bits: self.p.to_bits(),
        }
    }

    /// Rounds the stored floats to output precision and recomputes `pst`.
    pub fn normalized(mut self) -> ResultRecord {
        self.p = round_sig(self.p);
        self.clean_pst = round_sig(self.clean_pst);
        self.clean_accuracy = round_sig(self.clean_accuracy);
        self.pst = if self.shots == 0 {
            0.0
        } else {
            self.successes as f64 / self.shots as f64
        };
        self
    }

    fn validate(&self) -> Result<()> {
        if self.successes > self.shots {
            return Err(invalid("successes exceed shots"));
        }
        for (name, v) in [("p", self.p), ("clean_pst", self.clean_pst), ("clean_accuracy", self.clean_accuracy)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

pub const RECORD_HEADER: [&str; 13] = [
    "classifier",
    "class_label",
    "code",
    "mode",
    "p",
    "shots",
    "successes",
    "pst",
    "clean_pst",
    "clean_accuracy",
    "qubits",
    "gates",
    "depth",
];

pub(crate) fn record_row(r: &ResultRecord) -> Vec<String> {
    vec![
        r.classifier.to_string(),
        r.class_label.to_string(),
        r.code.to_string(),
        r.mode.to_string(),
        format_float(r.p),
        r.shots.to_string(),
        r.successes.to_string(),
        format_float(r.pst),
        format_float(r.clean_pst),
        format_float(r.clean_accuracy),
        r.qubits.to_string(),
        r.gates.to_string(),
        r.depth.to_string(),
    ]
}

fn field<T: FromStr>(rec: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let raw = rec.get(i).ok_or_else(|| Error::Parse {
        line,
        message: format!("missing column `{}`", RECORD_HEADER[i]),
    })?;
    raw.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("bad {} `{raw}`", RECORD_HEADER[i]),
    })
}

/// Writes records as CSV with [`RECORD_HEADER`].
pub fn write_records_csv<W: Write>(records: &[ResultRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record(record_row(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads records written by [`write_records_csv`]; `pst` is recomputed from the counts.
pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<ResultRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != RECORD_HEADER {
        return Err(Error::Parse {
            line: 1,
            message: "unexpected record header".into(),
        });
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let class_label: String = field(&rec, 1, line)?;
        let code: String = field(&rec, 2, line)?;
        let mode: String = field(&rec, 3, line)?;
        let record = ResultRecord {
            classifier: field(&rec, 0, line)?,
            class_label: class_label.parse()?,
            code: code.parse()?,
            mode: mode.parse()?,
            p: field(&rec, 4, line)?,
            shots: field(&rec, 5, line)?,
            successes: field(&rec, 6, line)?,
            pst: 0.0,
            clean_pst: field(&rec, 8, line)?,
            clean_accuracy: field(&rec, 9, line)?,
            qubits: field(&rec, 10, line)?,
            gates: field(&rec, 11, line)?,
            depth: field(&rec, 12, line)?,
        }
        .normalized();
        record.validate().map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}

pub fn read_records_file(path: &Path) -> Result<Vec<ResultRecord>> {
    read_records_csv(BufReader::new(File::open(path)?))
}

/// Output format of reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(invalid(format!("unknown format `{other}`"))),
        }
    }
}

/// A table with a fixed header, emitted as CSV or as a JSON array of objects.
pub trait Tabular: Serialize {
    fn header() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

impl Tabular for ResultRecord {
    fn header() -> Vec<&'static str> {
        RECORD_HEADER.to_vec()
    }
    fn row(&self) -> Vec<String> {
        record_row(self)
    }
}

/// Writes rows in the requested format. JSON objects carry the CSV columns with
/// floats rounded to six significant digits.
pub fn emit_results<T: Tabular, W: Write>(rows: &[T], format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(T::header())?;
            for r in rows {
                w.write_record(r.row())?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let mut value = serde_json::to_value(rows)?;
            round_json(&mut value);
            serde_json::to_writer_pretty(&mut out, &value)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = x;
            }
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(round_json),
        serde_json::Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}
