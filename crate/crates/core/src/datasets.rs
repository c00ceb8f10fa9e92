//! The six bundled benchmark failure datasets and file ingestion.
//!
//! The bundled series are classic software-failure benchmarks (times
//! between successive failures, strictly positive, in the unit noted per
//! dataset). User data can be loaded from plain whitespace-separated text
//! or two-column CSV.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::jm::{FailureDataset, JmError};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: cannot parse {token:?} as a positive number")]
    Parse {
        path: String,
        line: usize,
        token: String,
    },
    #[error("{path}: file contains no failure times")]
    Empty { path: String },
    #[error(transparent)]
    Invalid(#[from] JmError),
}

/// Identifier of a bundled dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DatasetId {
    Ntds,
    Jdm1,
    Jdm2,
    Jdm3,
    Jdm4,
    Att,
}

impl DatasetId {
    pub const ALL: [DatasetId; 6] = [
        DatasetId::Ntds,
        DatasetId::Jdm1,
        DatasetId::Jdm2,
        DatasetId::Jdm3,
        DatasetId::Jdm4,
        DatasetId::Att,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DatasetId::Ntds => "NTDS",
            DatasetId::Jdm1 => "JDM-I",
            DatasetId::Jdm2 => "JDM-II",
            DatasetId::Jdm3 => "JDM-III",
            DatasetId::Jdm4 => "JDM-IV",
            DatasetId::Att => "AT&T",
        }
    }
}

impl FromStr for DatasetId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ntds" => Ok(DatasetId::Ntds),
            "jdm1" | "jdm-i" => Ok(DatasetId::Jdm1),
            "jdm2" | "jdm-ii" => Ok(DatasetId::Jdm2),
            "jdm3" | "jdm-iii" => Ok(DatasetId::Jdm3),
            "jdm4" | "jdm-iv" => Ok(DatasetId::Jdm4),
            "att" | "at&t" => Ok(DatasetId::Att),
            other => Err(format!(
                "unknown dataset {other:?} (expected ntds|jdm1|jdm2|jdm3|jdm4|att)"
            )),
        }
    }
}

/// Naval Tactical Data System inter-failure times, in days. n = 34.
const NTDS: [f64; 34] = [
    9.0, 12.0, 11.0, 4.0, 7.0, 2.0, 5.0, 8.0, 5.0, 7.0, 1.0, 6.0, 1.0, 9.0, 4.0, 1.0, 3.0, 3.0,
    6.0, 1.0, 11.0, 33.0, 7.0, 91.0, 2.0, 1.0, 87.0, 47.0, 12.0, 9.0, 135.0, 258.0, 16.0, 35.0,
];

/// n = 17, unit: year.
const JDM1: [f64; 17] = [
    932.0, 3103.0, 661.0, 197.0, 1476.0, 155.0, 1358.0, 288.0, 1169.0, 1061.0, 142.0, 494.0,
    660.0, 209.0, 361.0, 688.0, 1046.0,
];

/// n = 15, unit: second.
const JDM2: [f64; 15] = [
    10.0, 9.0, 13.0, 11.0, 15.0, 12.0, 18.0, 15.0, 22.0, 25.0, 19.0, 30.0, 32.0, 25.0, 40.0,
];

/// n = 163, unit: second.
const JDM3: [f64; 163] = [
    320.0, 1439.0, 9000.0, 2880.0, 5700.0, 21800.0, 26800.0, 113540.0, 112137.0, 660.0, 2700.0,
    28793.0, 2173.0, 7263.0, 10865.0, 4230.0, 8460.0, 14805.0, 11844.0, 5361.0, 6553.0, 6499.0,
    3124.0, 51323.0, 17010.0, 1890.0, 5400.0, 62313.0, 24826.0, 26355.0, 363.0, 13989.0, 15058.0,
    32377.0, 41632.0, 4160.0, 82040.0, 13189.0, 3426.0, 5833.0, 640.0, 640.0, 2880.0, 110.0,
    22080.0, 60654.0, 52163.0, 12546.0, 784.0, 10193.0, 7841.0, 31365.0, 24313.0, 298890.0,
    1280.0, 22099.0, 19150.0, 2611.0, 39170.0, 55794.0, 42632.0, 267600.0, 87074.0, 149606.0,
    14400.0, 34560.0, 39600.0, 334395.0, 296015.0, 177395.0, 214622.0, 156400.0, 166800.0,
    10800.0, 267000.0, 34513.0, 7680.0, 37667.0, 11100.0, 187200.0, 18000.0, 178200.0, 144000.0,
    639200.0, 86400.0, 288000.0, 320.0, 57600.0, 28800.0, 18000.0, 88640.0, 432000.0, 4160.0,
    3200.0, 42800.0, 43600.0, 10560.0, 115200.0, 86400.0, 57600.0, 28800.0, 432000.0, 345600.0,
    115200.0, 44494.0, 10506.0, 177240.0, 241487.0, 143028.0, 273564.0, 189391.0, 172800.0,
    21600.0, 64800.0, 302400.0, 752188.0, 86400.0, 100800.0, 19440.0, 115200.0, 64800.0, 3600.0,
    230400.0, 583200.0, 259200.0, 183600.0, 3600.0, 144000.0, 14400.0, 86400.0, 110100.0,
    28800.0, 43200.0, 57600.0, 468000.0, 950400.0, 400400.0, 883800.0, 273600.0, 432000.0,
    864000.0, 202600.0, 203400.0, 277680.0, 105000.0, 580080.0, 4533960.0, 432000.0, 1411200.0,
    172800.0, 86400.0, 1123200.0, 1555200.0, 777600.0, 1296000.0, 1872000.0, 335600.0, 921600.0,
    1036800.0, 1728000.0, 777600.0, 57600.0, 17280.0,
];

/// n = 101, unit: second.
const JDM4: [f64; 101] = [
    5.7683, 9.5743, 9.105, 7.9655, 8.6482, 9.9887, 10.1962, 11.6399, 11.6275, 6.4922, 7.901,
    10.2679, 7.6839, 8.8905, 9.2933, 8.3499, 9.0431, 9.6027, 9.3736, 8.5869, 8.7877, 8.7794,
    8.0469, 10.8459, 8.7416, 7.5443, 8.5941, 11.0399, 10.1196, 10.1786, 5.8944, 9.546, 9.6197,
    10.3852, 10.6301, 8.3333, 11.315, 9.4871, 8.1391, 8.6713, 6.4615, 6.4615, 7.6955, 4.7005,
    10.0024, 11.0129, 10.8621, 9.4372, 6.6644, 9.2294, 8.9671, 10.3534, 10.0998, 12.6078, 7.1546,
    10.0033, 9.8601, 7.8675, 10.5757, 10.9294, 10.6604, 12.4972, 11.3745, 11.9158, 9.575,
    10.4504, 10.5866, 12.7201, 12.5982, 12.0859, 12.2766, 11.9602, 12.0246, 9.2873, 12.495,
    14.5569, 13.3279, 8.9464, 14.7824, 14.8969, 12.1399, 9.7981, 12.0907, 13.0977, 13.368,
    12.7206, 14.192, 11.3704, 12.2021, 12.2793, 11.3667, 11.3923, 14.4113, 8.3333, 8.0709,
    12.2021, 12.7831, 13.1585, 12.753, 10.3533, 12.4897,
];

/// n = 22, unit: CPU units.
const ATT: [f64; 22] = [
    5.50, 1.83, 2.75, 70.89, 3.94, 14.98, 3.47, 9.96, 11.39, 19.88, 7.81, 14.59, 11.42, 18.94,
    65.3, 0.04, 125.67, 82.69, 0.45, 31.61, 129.31, 47.6,
];

/// A bundled benchmark dataset.
pub fn builtin(id: DatasetId) -> FailureDataset {
    let (times, unit): (&[f64], &str) = match id {
        DatasetId::Ntds => (&NTDS, "Day"),
        DatasetId::Jdm1 => (&JDM1, "Year"),
        DatasetId::Jdm2 => (&JDM2, "Sec."),
        DatasetId::Jdm3 => (&JDM3, "Sec."),
        DatasetId::Jdm4 => (&JDM4, "Sec."),
        DatasetId::Att => (&ATT, "CPU Units"),
    };
    FailureDataset::new(id.name(), unit, times.to_vec()).expect("bundled data is valid")
}

/// On-disk formats accepted by [`load`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    /// Whitespace/newline-separated positive decimals.
    Plain,
    /// Two columns `index,time`; a non-numeric first row is treated as a
    /// header and skipped.
    Csv,
}

impl FileFormat {
    /// Infer from the file extension: `.csv` means CSV, anything else plain.
    pub fn infer(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => FileFormat::Csv,
            _ => FileFormat::Plain,
        }
    }
}

/// Load failure times from a file. The dataset is named after the file
/// stem; the unit is unknown.
pub fn load(path: &Path, format: FileFormat) -> Result<FailureDataset, LoadError> {
    let display = path.display().to_string();
    let content = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: display.clone(),
        source,
    })?;
    let times = match format {
        FileFormat::Plain => parse_plain(&display, &content)?,
        FileFormat::Csv => parse_csv(&display, &content)?,
    };
    if times.is_empty() {
        return Err(LoadError::Empty { path: display });
    }
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    Ok(FailureDataset::new(name, "unspecified", times)?)
}

fn parse_positive(path: &str, line: usize, token: &str) -> Result<f64, LoadError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(LoadError::Parse {
            path: path.to_string(),
            line,
            token: token.to_string(),
        }),
    }
}

fn parse_plain(path: &str, content: &str) -> Result<Vec<f64>, LoadError> {
    let mut times = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        for token in line.split_whitespace() {
            times.push(parse_positive(path, lineno + 1, token)?);
        }
    }
    Ok(times)
}

fn parse_csv(path: &str, content: &str) -> Result<Vec<f64>, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(content.as_bytes());
    let mut times = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|_| LoadError::Parse {
            path: path.to_string(),
            line: idx + 1,
            token: "<malformed row>".to_string(),
        })?;
        let fields: Vec<&str> = record.iter().map(|f| f.trim()).collect();
        if fields.is_empty() || (fields.len() == 1 && fields[0].is_empty()) {
            continue;
        }
        // Header detection: first row with a non-numeric field.
        if idx == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let token = fields.last().expect("non-empty record");
        times.push(parse_positive(path, idx + 1, token)?);
    }
    Ok(times)
}

/// Serialize in plain format: one value per line at full precision, so
/// loading the file reproduces the dataset exactly.
pub fn write_plain<W: Write>(data: &FailureDataset, mut w: W) -> std::io::Result<()> {
    for t in data.times() {
        writeln!(w, "{t}")?;
    }
    Ok(())
}
