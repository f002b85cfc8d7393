//! Level files in, plot-ready tables out.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LevelFormat {
    /// One real per line.
    #[default]
    Plain,
    /// Zero ordinates, one per line; a leading index column is tolerated
    /// and the last field on each line is taken.
    ZeroTable,
}

impl FromStr for LevelFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "zero-table" | "zeros" => Ok(Self::ZeroTable),
            _ => Err(Error::InvalidArgument(format!(
                "unknown level format {s:?} (plain, zero-table)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelFile {
    pub path: PathBuf,
    pub format: LevelFormat,
    /// Leading levels dropped after sorting.
    pub skip: usize,
    /// Maximum number of levels kept after `skip`.
    pub take: Option<usize>,
}

impl LevelFile {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            format: LevelFormat::Plain,
            skip: 0,
            take: None,
        }
    }

    pub fn format(mut self, format: LevelFormat) -> Self {
        self.format = format;
        self
    }

    pub fn skip(mut self, skip: usize) -> Self {
        self.skip = skip;
        self
    }

    pub fn take(mut self, take: usize) -> Self {
        self.take = Some(take);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedLevels {
    pub spectrum: Spectrum,
    /// The file was not in ascending order and has been sorted.
    pub reordered: bool,
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses levels from text. `path` is only used in error messages.
pub fn parse_levels(text: &str, format: LevelFormat, path: &Path) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let field = match format {
            LevelFormat::Plain => line,
            LevelFormat::ZeroTable => line.split_whitespace().next_back().unwrap_or(line),
        };
        let bad = || Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            content: raw.to_string(),
        };
        let v: f64 = field.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        out.push(v);
    }
    Ok(out)
}

/// Reads, sorts (flagging any reordering), then applies `skip` and `take`.
pub fn read_levels(file: &LevelFile) -> Result<LoadedLevels> {
    let text = fs::read_to_string(&file.path).map_err(io_error(&file.path))?;
    let levels = parse_levels(&text, file.format, &file.path)?;
    let (spectrum, reordered) = Spectrum::from_unsorted(levels)?;
    let end = match file.take {
        Some(t) => file.skip.saturating_add(t).min(spectrum.len()),
        None => spectrum.len(),
    };
    if file.skip >= end {
        return Err(Error::Empty("no levels left after skip/take"));
    }
    let levels = spectrum.levels()[file.skip..end].to_vec();
    Ok(LoadedLevels {
        spectrum: Spectrum::new(levels)?,
        reordered,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    /// Whitespace-separated columns under a `#` header line.
    Txt,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "txt" => Ok(Self::Txt),
            _ => Err(Error::InvalidArgument(format!(
                "unknown table format {s:?} (csv, txt)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// `bin_lo,bin_hi,count,density`, one row per bin.
    pub fn from_histogram(h: &Histogram) -> Self {
        let mut t = Self::new(&["bin_lo", "bin_hi", "count", "density"]);
        for (i, (&c, d)) in h.counts().iter().zip(h.densities()).enumerate() {
            let (lo, hi) = h.bin(i);
            t.push(vec![lo, hi, c as f64, d]);
        }
        t
    }

    pub fn render(&self, format: TableFormat) -> String {
        let mut out = String::new();
        let sep = match format {
            TableFormat::Csv => ",",
            TableFormat::Txt => " ",
        };
        if format == TableFormat::Txt {
            out.push_str("# ");
        }
        out.push_str(&self.header.join(sep));
        out.push('\n');
        for row in &self.rows {
            for (i, &v) in row.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                out.push_str(&format_sig(v, 9));
            }
            out.push('\n');
        }
        out
    }
}

/// `x` to `digits` significant digits, fixed-point for moderate magnitudes
/// and scientific otherwise, without trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mut s = trim_zeros(mantissa.to_string());
        let _ = write!(s, "e{exp}");
        s
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_table(table: &Table, format: TableFormat, path: &Path) -> Result<()> {
    fs::write(path, table.render(format)).map_err(io_error(path))
}

/// Parses a table written by [`write_table`] in either format.
pub fn parse_table(text: &str, path: &Path) -> Result<Table> {
    let mut header = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let is_comment = line.starts_with('#');
        let body = line.trim_start_matches('#').trim();
        let fields: Vec<&str> = if body.contains(',') {
            body.split(',').map(str::trim).collect()
        } else {
            body.split_whitespace().collect()
        };
        let numbers: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match numbers {
            Some(v) if !is_comment => rows.push(v),
            _ if header.is_none() && rows.is_empty() => {
                header = Some(fields.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            }
            _ if is_comment => {}
            _ => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: i + 1,
                    content: raw.to_string(),
                })
            }
        }
    }
    let header = header.unwrap_or_default();
    for (i, r) in rows.iter().enumerate() {
        if !header.is_empty() && r.len() != header.len() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: i + 2,
                content: format!("{} fields, header has {}", r.len(), header.len()),
            });
        }
    }
    Ok(Table { header, rows })
}

pub fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    parse_table(&text, path)
}

/// Rebuilds a histogram from `bin_lo,bin_hi,count,density` rows. The
/// out-of-range count is recovered from the density normalization.
pub fn histogram_from_table(table: &Table) -> Result<Histogram> {
    let col = |name: &str| {
        table.header.iter().position(|h| h == name).ok_or_else(|| {
            Error::InvalidArgument(format!("histogram table lacks a {name:?} column"))
        })
    };
    let (lo, hi, count, density) = (
        col("bin_lo")?,
        col("bin_hi")?,
        col("count")?,
        col("density")?,
    );
    if table.rows.is_empty() {
        return Err(Error::Empty("histogram table has no rows"));
    }
    let mut edges = Vec::with_capacity(table.rows.len() + 1);
    let mut counts = Vec::with_capacity(table.rows.len());
    let mut total_estimate: Option<f64> = None;
    for (i, row) in table.rows.iter().enumerate() {
        if i == 0 {
            edges.push(row[lo]);
        } else if row[lo] != edges[i] {
            return Err(Error::BadEdges { index: i });
        }
        edges.push(row[hi]);
        let c = row[count];
        if !(c >= 0.0) || c.fract() != 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bin {i}: count {c} is not a whole number"
            )));
        }
        counts.push(c as u64);
        if c > 0.0 && row[density] > 0.0 && total_estimate.is_none() {
            total_estimate = Some(c / (row[density] * (row[hi] - row[lo])));
        }
    }
    let inside: u64 = counts.iter().sum();
    let overflow = total_estimate
        .map(|t| (t.round() as u64).saturating_sub(inside))
        .unwrap_or(0);
    Histogram::from_parts(edges, counts, overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::histogram::uniform_edges;

    fn parse(text: &str) -> Result<Vec<f64>> {
        parse_levels(text, LevelFormat::Plain, Path::new("mem"))
    }

    #[test]
    fn level_examples() {
        assert_eq!(parse("1.0\n2.5\n4.0").unwrap(), [1.0, 2.5, 4.0]);
        assert_eq!(
            parse("# header\n1.0\n\n  # note\n2.0 # trailing\n").unwrap(),
            [1.0, 2.0]
        );
        match parse("abc") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse("1\n2\nx3") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse("1 2").is_err());
        let z = parse_levels(
            "1 14.134725\n2 21.022040",
            LevelFormat::ZeroTable,
            Path::new("z"),
        )
        .unwrap();
        assert_eq!(z, [14.134725, 21.022040]);
    }

    #[test]
    fn read_sorts_then_slices() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("levels.txt");
        fs::write(&path, "5\n1\n3\n2\n4\n").unwrap();
        let got = read_levels(&LevelFile::new(&path)).unwrap();
        assert!(got.reordered);
        assert_eq!(got.spectrum.levels(), [1.0, 2.0, 3.0, 4.0, 5.0]);
        let got = read_levels(&LevelFile::new(&path).skip(1).take(2)).unwrap();
        assert_eq!(got.spectrum.levels(), [2.0, 3.0]);
        assert!(read_levels(&LevelFile::new(&path).skip(5)).is_err());
        fs::write(&path, "# nothing\n").unwrap();
        assert!(read_levels(&LevelFile::new(&path)).is_err());
        assert!(matches!(
            read_levels(&LevelFile::new(dir.path().join("missing"))),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.75, 9), "1.75");
        assert_eq!(format_sig(0.599_644_741_3, 9), "0.599644741");
        assert_eq!(format_sig(120.0, 9), "120");
        assert_eq!(format_sig(-2.5e-7, 9), "-2.5e-7");
        assert_eq!(format_sig(1.234_567_891_23e12, 9), "1.23456789e12");
        assert_eq!(format_sig(0.0, 9), "0");
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let values = [0.3, 0.7, 1.2, 1.25, 5.9, 7.0, -1.0];
        let h = Histogram::from_values(&values, uniform_edges(0.0, 6.0, 120).unwrap()).unwrap();
        let table = Table::from_histogram(&h);
        for format in [TableFormat::Csv, TableFormat::Txt] {
            let path = dir.path().join("h.out");
            write_table(&table, format, &path).unwrap();
            let back = read_table(&path).unwrap();
            assert_eq!(back.header, table.header);
            for (a, b) in back.rows.iter().flatten().zip(table.rows.iter().flatten()) {
                assert!((a - b).abs() <= 1e-8 * b.abs());
            }
            let rebuilt = histogram_from_table(&back).unwrap();
            assert_eq!(rebuilt.counts(), h.counts());
            assert_eq!(
                (rebuilt.overflow(), rebuilt.total()),
                (h.overflow(), h.total())
            );
            for (a, b) in rebuilt.edges().iter().zip(h.edges()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        let text = table.render(TableFormat::Csv);
        assert!(text.starts_with("bin_lo,bin_hi,count,density\n"));
        assert_eq!(text.lines().count(), 121);
        assert_eq!(text, table.render(TableFormat::Csv));
    }

    #[test]
    fn two_column_text() {
        let mut t = Table::new(&["r", "P(r)"]);
        t.push(vec![0.5, 0.123456789012]);
        assert_eq!(t.render(TableFormat::Txt), "# r P(r)\n0.5 0.123456789\n");
        let err = write_table(&t, TableFormat::Txt, Path::new("/nonexistent/dir/x.txt"));
        assert!(matches!(err, Err(Error::Io { .. })));
    }
}
