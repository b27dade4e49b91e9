//! CSV tables of real numbers with `#` comment lines and one header row.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Numeric table as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn parse(text: &str, path: &Path) -> CliResult<Self> {
        let err = |line: usize, msg: String| CliError::Parse { path: path.to_path_buf(), line, msg };
        let mut header: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let Some(h) = &header else {
                if fields.iter().any(|f| f.is_empty()) {
                    return Err(err(line_no, "empty column name in header".into()));
                }
                header = Some(fields.iter().map(|f| f.to_string()).collect());
                continue;
            };
            if fields.len() != h.len() {
                return Err(err(line_no, format!("expected {} fields, found {}", h.len(), fields.len())));
            }
            let row = fields
                .iter()
                .zip(h)
                .map(|(f, name)| match f.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    Ok(v) => Err(err(line_no, format!("non-finite {name} value {v}"))),
                    Err(_) => Err(err(line_no, format!("cannot parse {name} value {f:?} as a number"))),
                })
                .collect::<CliResult<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok(Self { header: header.unwrap_or_default(), rows })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }
}

/// A `(time, value)` series with strictly ascending times.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFile {
    pub value_name: String,
    pub rows: Vec<(f64, f64)>,
}

/// Counts of rows repaired during ingestion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Repairs {
    pub out_of_order: usize,
    pub duplicates: usize,
}

impl SeriesFile {
    pub fn new(value_name: impl Into<String>, rows: Vec<(f64, f64)>) -> Self {
        Self { value_name: value_name.into(), rows }
    }

    /// Takes the first two columns of `table` as time and value, sorting by
    /// time and dropping repeated timestamps (the first occurrence is kept).
    pub fn from_table(table: &Table, path: &Path) -> CliResult<(Self, Repairs)> {
        if table.header.is_empty() {
            return Ok((Self::new("y", Vec::new()), Repairs::default()));
        }
        if table.header.len() < 2 {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: 1,
                msg: "series needs a time column and a value column".into(),
            });
        }
        let mut rows: Vec<(f64, f64)> = table.rows.iter().map(|r| (r[0], r[1])).collect();
        let mut repairs = Repairs { out_of_order: rows.windows(2).filter(|w| w[1].0 < w[0].0).count(), duplicates: 0 };
        if repairs.out_of_order > 0 {
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        }
        let before = rows.len();
        rows.dedup_by(|b, a| a.0 == b.0);
        repairs.duplicates = before - rows.len();
        Ok((Self::new(table.header[1].clone(), rows), repairs))
    }

    /// Reads a series, logging a warning for each kind of repair applied.
    pub fn read(path: &Path) -> CliResult<Self> {
        let (s, rep) = Self::from_table(&Table::read(path)?, path)?;
        if rep.out_of_order > 0 {
            log::warn!("{}: {} timestamps out of order; rows sorted by time", path.display(), rep.out_of_order);
        }
        if rep.duplicates > 0 {
            log::warn!("{}: dropped {} rows with repeated timestamps", path.display(), rep.duplicates);
        }
        Ok(s)
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn to_csv(&self, provenance: &Provenance) -> String {
        let header = ["time", self.value_name.as_str()];
        render_csv(provenance, &header, self.rows.iter().map(|&(t, v)| vec![t, v]))
    }
}

/// Key/value pairs written as the leading `#` comment line of every output.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pairs: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            pairs: vec![
                ("generator".into(), levy_ssm::RNG_NAME.into()),
                ("seed".into(), seed.to_string()),
                ("command".into(), command.into()),
            ],
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.pairs.push((key.into(), value.to_string()));
        self
    }

    pub fn line(&self) -> String {
        let body: Vec<String> = self.pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("# {}", body.join(" "))
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_csv<I>(provenance: &Provenance, header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut out = provenance.line();
    out.push('\n');
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", fmt_f64(*v));
        }
        out.push('\n');
    }
    out
}

/// Writes `text` to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> CliResult<Table> {
        Table::parse(text, Path::new("in.csv"))
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let t = parse("# seed=1\ntime,y\n\n0.5,1\n# note\n1.0,-2e-3\n").unwrap();
        assert_eq!(t.header, vec!["time", "y"]);
        assert_eq!(t.rows, vec![vec![0.5, 1.0], vec![1.0, -2e-3]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("time,y\n0.5,1\n0.7,abc\n").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
        assert!(e.to_string().starts_with("in.csv:3:"));
        let e = parse("time,y\n0.5\n").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
        let e = parse("time,y\n1,inf\n").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
    }

    #[test]
    fn sort_and_dedup_are_counted() {
        let t = parse("time,y\n2,20\n1,10\n1,11\n3,30\n").unwrap();
        let (s, rep) = SeriesFile::from_table(&t, Path::new("in.csv")).unwrap();
        assert_eq!(s.rows, vec![(1.0, 10.0), (2.0, 20.0), (3.0, 30.0)]);
        assert_eq!(rep, Repairs { out_of_order: 1, duplicates: 1 });
    }

    #[test]
    fn empty_input_is_an_empty_series() {
        for text in ["", "# only a comment\n", "time,y\n"] {
            let (s, _) = SeriesFile::from_table(&parse(text).unwrap(), Path::new("x")).unwrap();
            assert!(s.rows.is_empty());
        }
    }

    #[test]
    fn floats_round_trip_bit_for_bit() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 1e300, f64::MIN_POSITIVE, 5e-324, 123_456_789.123_456_79, -0.0] {
            let back: f64 = fmt_f64(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = SeriesFile::new("y", vec![(0.5, 1.0 / 3.0), (1.0, -1e-17)]);
        let text = s.to_csv(&Provenance::new("test", 9));
        assert!(text.starts_with("# generator=chacha20 seed=9 command=test\ntime,y\n"));
        let (back, _) = SeriesFile::from_table(&parse(&text).unwrap(), Path::new("x")).unwrap();
        assert_eq!(back, s);
    }
}
