//! CSV emission and parsing.
//!
//! A report file is a block of `# key: value` metadata lines followed by a
//! header and one record per row. Integers are written plainly and reals as
//! `{:.16e}` (17 significant digits), so parsing a written file gives back the
//! same bits. The `timestamp` line is the only run-dependent content.

use std::fs;
use std::path::{Path, PathBuf};

use super::corpus::Formula;
use super::sweep::{ErrorReport, ReportRow};
use crate::error::{Error, Result};
use crate::sincdiff::DecayProfile;

/// One evaluation point of a tabulation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TabulatedPoint {
    pub t: f64,
    pub approx: f64,
    pub oracle: f64,
    pub abs_error: f64,
}

pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_profile(p: &DecayProfile) -> String {
    format!(
        "alpha={} beta={} d={}",
        fmt_real(p.alpha),
        fmt_real(p.beta),
        fmt_real(p.d)
    )
}

fn render(meta: &[(&str, String)], header: &[String], records: &[Vec<String>]) -> Result<String> {
    let mut out = String::new();
    for (k, v) in meta {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |source| Error::Csv {
        path: PathBuf::from("<memory>"),
        source,
    };
    w.write_record(header).map_err(csv_err)?;
    for r in records {
        w.write_record(r).map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| Error::Csv {
        path: PathBuf::from("<memory>"),
        source: e.into_error().into(),
    })?;
    out.push_str(&String::from_utf8(body).expect("csv output is ascii"));
    Ok(out)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn error_columns(m: usize, suffix: &str) -> impl Iterator<Item = String> + '_ {
    (0..=m).map(move |l| format!("err_l{l}{suffix}"))
}

/// The report in the single-report CSV format.
pub fn render_csv(report: &ErrorReport) -> Result<String> {
    let meta = [
        ("function", report.function.clone()),
        ("formula", report.formula.to_string()),
        ("m", report.m.to_string()),
        ("grid", report.grid.clone()),
        ("profile", fmt_profile(&report.profile)),
        ("timestamp", report.timestamp.to_string()),
    ];
    let header: Vec<String> = ["n", "h", "M", "N"]
        .into_iter()
        .map(String::from)
        .chain(error_columns(report.m, ""))
        .collect();
    let records: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let mut rec = vec![
                r.n.to_string(),
                fmt_real(r.h),
                r.lower.to_string(),
                r.upper.to_string(),
            ];
            rec.extend(r.max_abs_error.iter().map(|&e| fmt_real(e)));
            rec
        })
        .collect();
    render(&meta, &header, &records)
}

pub fn write_csv(report: &ErrorReport, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &render_csv(report)?)
}

/// Both formulas side by side: `n`, then `h`, `M`, `N` and every error
/// column suffixed `_se` / `_imp`.
pub fn render_compare_csv(stenger: &ErrorReport, improved: &ErrorReport) -> Result<String> {
    if stenger.m != improved.m || stenger.rows.len() != improved.rows.len() {
        return Err(Error::usage("reports have different shapes"));
    }
    let m = stenger.m;
    let meta = [
        ("function", stenger.function.clone()),
        ("formula", "stenger,improved".to_string()),
        ("m", m.to_string()),
        ("grid", stenger.grid.clone()),
        ("profile_se", fmt_profile(&stenger.profile)),
        ("profile_imp", fmt_profile(&improved.profile)),
        (
            "timestamp",
            stenger.timestamp.max(improved.timestamp).to_string(),
        ),
    ];
    let mut header = vec!["n".to_string()];
    for sfx in ["_se", "_imp"] {
        header.extend(["h", "M", "N"].iter().map(|c| format!("{c}{sfx}")));
    }
    for l in 0..=m {
        header.push(format!("err_l{l}_se"));
        header.push(format!("err_l{l}_imp"));
    }
    let mut records = Vec::with_capacity(stenger.rows.len());
    for (se, imp) in stenger.rows.iter().zip(&improved.rows) {
        if se.n != imp.n {
            return Err(Error::usage(format!(
                "reports disagree on n: {} vs {}",
                se.n, imp.n
            )));
        }
        let mut rec = vec![se.n.to_string()];
        for r in [se, imp] {
            rec.extend([fmt_real(r.h), r.lower.to_string(), r.upper.to_string()]);
        }
        for l in 0..=m {
            rec.push(fmt_real(se.max_abs_error[l]));
            rec.push(fmt_real(imp.max_abs_error[l]));
        }
        records.push(rec);
    }
    render(&meta, &header, &records)
}

pub fn write_compare_csv(
    stenger: &ErrorReport,
    improved: &ErrorReport,
    path: impl AsRef<Path>,
) -> Result<()> {
    write_file(path.as_ref(), &render_compare_csv(stenger, improved)?)
}

pub fn render_tabulate_csv(meta: &[(&str, String)], points: &[TabulatedPoint]) -> Result<String> {
    let header: Vec<String> = ["t", "approx", "oracle", "abs_error"]
        .into_iter()
        .map(String::from)
        .collect();
    let records: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            [p.t, p.approx, p.oracle, p.abs_error]
                .map(fmt_real)
                .to_vec()
        })
        .collect();
    render(meta, &header, &records)
}

pub fn write_tabulate_csv(
    meta: &[(&str, String)],
    points: &[TabulatedPoint],
    path: impl AsRef<Path>,
) -> Result<()> {
    write_file(path.as_ref(), &render_tabulate_csv(meta, points)?)
}

/// Drops the `# timestamp:` line, leaving what must be identical across runs.
pub fn strip_timestamp(csv_text: &str) -> String {
    csv_text
        .lines()
        .filter(|l| !l.starts_with("# timestamp:"))
        .map(|l| format!("{l}\n"))
        .collect()
}

/// Parses a file written by [`write_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<ErrorReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text).map_err(|reason| match reason {
        ParseFailure::Csv(source) => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        ParseFailure::Other(reason) => Error::Parse {
            path: path.to_path_buf(),
            reason,
        },
    })
}

enum ParseFailure {
    Csv(csv::Error),
    Other(String),
}

impl From<String> for ParseFailure {
    fn from(s: String) -> Self {
        ParseFailure::Other(s)
    }
}

fn parse_csv(text: &str) -> std::result::Result<ErrorReport, ParseFailure> {
    let mut meta = std::collections::HashMap::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some((k, v)) = line.trim_start_matches('#').split_once(':') {
            meta.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    let get = |k: &str| {
        meta.get(k)
            .cloned()
            .ok_or_else(|| format!("missing metadata `{k}`"))
    };
    let formula: Formula = get("formula")?.parse().map_err(|e: Error| e.to_string())?;
    let m: usize = get("m")?.parse().map_err(|_| "bad m".to_string())?;
    let timestamp: u64 = get("timestamp")?
        .parse()
        .map_err(|_| "bad timestamp".to_string())?;
    let profile = parse_profile(&get("profile")?)?;

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(ParseFailure::Csv)?.clone();
    if headers.len() != 5 + m {
        return Err(format!("expected {} columns, found {}", 5 + m, headers.len()).into());
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(ParseFailure::Csv)?;
        let int = |i: usize| -> std::result::Result<usize, String> {
            rec[i]
                .parse()
                .map_err(|_| format!("bad integer `{}` in column {}", &rec[i], &headers[i]))
        };
        let real = |i: usize| -> std::result::Result<f64, String> {
            rec[i]
                .parse()
                .map_err(|_| format!("bad real `{}` in column {}", &rec[i], &headers[i]))
        };
        rows.push(ReportRow {
            n: int(0)?,
            h: real(1)?,
            lower: int(2)?,
            upper: int(3)?,
            max_abs_error: (4..5 + m)
                .map(real)
                .collect::<std::result::Result<_, _>>()?,
        });
    }
    Ok(ErrorReport {
        function: get("function")?,
        formula,
        m,
        profile,
        grid: get("grid")?,
        rows,
        timestamp,
    })
}

fn parse_profile(s: &str) -> std::result::Result<DecayProfile, String> {
    let mut vals = [None; 3];
    for part in s.split_whitespace() {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("bad profile `{s}`"))?;
        let v: f64 = v.parse().map_err(|_| format!("bad profile value `{v}`"))?;
        match k {
            "alpha" => vals[0] = Some(v),
            "beta" => vals[1] = Some(v),
            "d" => vals[2] = Some(v),
            _ => return Err(format!("unknown profile key `{k}`")),
        }
    }
    match vals {
        [Some(alpha), Some(beta), Some(d)] => Ok(DecayProfile { alpha, beta, d }),
        _ => Err(format!("incomplete profile `{s}`")),
    }
}
