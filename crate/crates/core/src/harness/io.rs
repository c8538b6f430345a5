use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, HarnessError, RunRecord};

pub const CSV_HEADER: [&str; 12] = [
    "agent",
    "game",
    "level",
    "repeat",
    "seed",
    "win",
    "score",
    "timesteps",
    "decisions",
    "total_advance_calls",
    "wall_time_ms",
    "agent_error",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` is JSON; everything else is CSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// JSON results carry the config; CSV results only the records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsFile {
    #[serde(default)]
    pub config: Option<ExperimentConfig>,
    pub records: Vec<RunRecord>,
}

/// Writes records sorted by `(agent, game, level, repeat)`, so the file does
/// not depend on the order runs finished in.
pub fn write_results(path: &Path, records: &[RunRecord], config: Option<&ExperimentConfig>) -> Result<(), HarnessError> {
    let mut sorted = records.to_vec();
    sorted.sort_by(|a, b| (&a.agent, &a.game, a.level, a.repeat).cmp(&(&b.agent, &b.game, b.level, b.repeat)));
    let records = &sorted;
    let mut out = BufWriter::new(File::create(path)?);
    match Format::from_path(path) {
        Format::Json => {
            let file = ResultsFile {
                config: config.cloned(),
                records: records.to_vec(),
            };
            serde_json::to_writer_pretty(&mut out, &file).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
            w.write_record(CSV_HEADER).map_err(csv_error)?;
            for r in records {
                w.serialize(r).map_err(csv_error)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<ResultsFile, HarnessError> {
    let input = BufReader::new(File::open(path)?);
    match Format::from_path(path) {
        Format::Json => serde_json::from_reader(input).map_err(|e| HarnessError::Parse {
            line: e.line() as u64,
            message: e.to_string(),
        }),
        Format::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let records = r
                .deserialize::<RunRecord>()
                .collect::<Result<Vec<_>, _>>()
                .map_err(csv_error)?;
            Ok(ResultsFile { config: None, records })
        }
    }
}

fn csv_error(e: csv::Error) -> HarnessError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    if e.is_io_error() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return HarnessError::Io(io);
        }
        unreachable!("is_io_error implies an Io kind");
    }
    HarnessError::Parse {
        line,
        message: e.to_string(),
    }
}

/// Creates `root/<name>/<UTC timestamp>/`.
pub fn new_results_dir(root: &Path, name: &str) -> Result<PathBuf, HarnessError> {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%S%.3fZ").to_string();
    let dir = root.join(name).join(stamp);
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(i: u32) -> RunRecord {
        RunRecord {
            agent: "rhea:P=2,L=6".into(),
            game: "maze_escape".into(),
            level: 3,
            repeat: i,
            seed: u64::MAX - i as u64,
            win: (i % 2) as u8,
            score: -1.5 + i as f64,
            timesteps: 17,
            decisions: 17,
            total_advance_calls: 8160,
            wall_time_ms: 4,
            agent_error: i == 2,
        }
    }

    #[test]
    fn round_trips_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let records: Vec<_> = (0..3).map(record).collect();
        let cfg = ExperimentConfig::default();
        for name in ["r.csv", "r.json"] {
            let path = dir.path().join(name);
            write_results(&path, &records, Some(&cfg)).unwrap();
            assert_eq!(read_results(&path).unwrap().records, records);
        }
        assert_eq!(read_results(&dir.path().join("r.json")).unwrap().config, Some(cfg));
    }

    #[test]
    fn empty_csv_has_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.csv");
        write_results(&path, &[], None).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.trim_end(), CSV_HEADER.join(","));
        assert!(read_results(&path).unwrap().records.is_empty());
    }

    #[test]
    fn malformed_row_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        let mut text = CSV_HEADER.join(",") + "\n";
        text += "rs,invaders,0,0,1,1,2.0,10,10,4800,1,false\n";
        text += "rs,invaders,0,1,1,yes,2.0,10,10,4800,1,false\n";
        std::fs::write(&path, text).unwrap();
        match read_results(&path) {
            Err(HarnessError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn results_dir_is_nested() {
        let dir = tempfile::tempdir().unwrap();
        let d = new_results_dir(dir.path(), "sweep").unwrap();
        assert!(d.is_dir());
        assert_eq!(d.parent().unwrap(), dir.path().join("sweep"));
    }
}
