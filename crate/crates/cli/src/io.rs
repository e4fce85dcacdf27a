//! Matrix file formats: Matrix Market (array and coordinate; real,
//! integer, complex, pattern; general, symmetric, skew-symmetric,
//! hermitian) and a dense JSON form. Values are written with Rust's
//! shortest-round-trip float formatting, so anything representable in f64
//! survives a write/read cycle bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use perron_core::lattice::{LatticeVector, NormChoice, PositiveOperator};
use perron_core::matrix::CMatrix;

#[derive(Debug)]
pub struct ParseFailure {
    pub line: usize,
    pub message: String,
}

impl ParseFailure {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

/// Reads a square complex matrix from Matrix Market or dense JSON text.
pub fn parse_matrix(text: &str) -> Result<CMatrix, ParseFailure> {
    if is_json(text) {
        parse_json_matrix(text)
    } else {
        parse_matrix_market(text)
    }
}

fn parse_json_matrix(text: &str) -> Result<CMatrix, ParseFailure> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| ParseFailure::new(e.line(), format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseFailure::new(1, "expected a JSON object with \"n\" and \"rows\""))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| ParseFailure::new(1, "missing integer field \"n\""))? as usize;
    let rows = obj
        .get("rows")
        .and_then(|v| v.as_array())
        .ok_or_else(|| ParseFailure::new(1, "missing array field \"rows\""))?;
    if rows.len() != n {
        return Err(ParseFailure::new(
            1,
            format!("\"rows\" has {} rows, expected n = {n}", rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| ParseFailure::new(1, format!("row {} is not an array", i + 1)))?;
        if row.len() != n {
            return Err(ParseFailure::new(
                1,
                format!("row {} has {} entries, expected {n}", i + 1, row.len()),
            ));
        }
        let mut out = Vec::with_capacity(n);
        for (j, entry) in row.iter().enumerate() {
            let z = match entry {
                serde_json::Value::Number(x) => Complex64::new(
                    x.as_f64().ok_or_else(|| {
                        ParseFailure::new(1, format!("entry ({},{}) is not finite", i + 1, j + 1))
                    })?,
                    0.0,
                ),
                serde_json::Value::Array(pair) if pair.len() == 2 => {
                    let re = pair[0].as_f64();
                    let im = pair[1].as_f64();
                    match (re, im) {
                        (Some(re), Some(im)) => Complex64::new(re, im),
                        _ => {
                            return Err(ParseFailure::new(
                                1,
                                format!("entry ({},{}) has a non-numeric pair", i + 1, j + 1),
                            ))
                        }
                    }
                }
                _ => {
                    return Err(ParseFailure::new(
                        1,
                        format!(
                            "entry ({},{}) must be a number or a [re, im] pair",
                            i + 1,
                            j + 1
                        ),
                    ))
                }
            };
            out.push(z);
        }
        data.push(out);
    }
    CMatrix::from_rows(&data).map_err(|e| ParseFailure::new(1, e.to_string()))
}

#[derive(Clone, Copy, PartialEq)]
enum MmFormat {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, PartialEq)]
enum MmField {
    Real,
    Integer,
    Complex,
    Pattern,
}

#[derive(Clone, Copy, PartialEq)]
enum MmSymmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

fn parse_matrix_market(text: &str) -> Result<CMatrix, ParseFailure> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseFailure::new(1, "empty input"))?;
    let mut head = header.split_whitespace();
    if head.next() != Some("%%MatrixMarket") {
        return Err(ParseFailure::new(1, "missing %%MatrixMarket header"));
    }
    if head.next() != Some("matrix") {
        return Err(ParseFailure::new(1, "expected object kind \"matrix\""));
    }
    let format = match head.next() {
        Some("array") => MmFormat::Array,
        Some("coordinate") => MmFormat::Coordinate,
        other => {
            return Err(ParseFailure::new(
                1,
                format!("unsupported format {other:?}; expected array or coordinate"),
            ))
        }
    };
    let field = match head.next() {
        Some("real") => MmField::Real,
        Some("integer") => MmField::Integer,
        Some("complex") => MmField::Complex,
        Some("pattern") => MmField::Pattern,
        other => {
            return Err(ParseFailure::new(
                1,
                format!("unsupported field {other:?}"),
            ))
        }
    };
    let symmetry = match head.next() {
        Some("general") | None => MmSymmetry::General,
        Some("symmetric") => MmSymmetry::Symmetric,
        Some("skew-symmetric") => MmSymmetry::SkewSymmetric,
        Some("hermitian") => MmSymmetry::Hermitian,
        other => {
            return Err(ParseFailure::new(
                1,
                format!("unsupported symmetry {other:?}"),
            ))
        }
    };
    if format == MmFormat::Array && field == MmField::Pattern {
        return Err(ParseFailure::new(1, "pattern field requires coordinate format"));
    }

    // skip comments, find the size line
    let mut size_line = None;
    for (idx, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size_line = Some((idx + 1, t.to_string()));
        break;
    }
    let (size_lineno, size) =
        size_line.ok_or_else(|| ParseFailure::new(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let expect_dims = if format == MmFormat::Coordinate { 3 } else { 2 };
    if dims.len() != expect_dims {
        return Err(ParseFailure::new(
            size_lineno,
            format!("size line needs {expect_dims} integers, found {}", dims.len()),
        ));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|_| ParseFailure::new(size_lineno, "bad row count"))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|_| ParseFailure::new(size_lineno, "bad column count"))?;
    if rows != cols {
        return Err(ParseFailure::new(
            size_lineno,
            format!("matrix is {rows}x{cols}, not square"),
        ));
    }
    let n = rows;

    let mut m = CMatrix::zeros(n, n);
    let parse_value = |field: MmField,
                       parts: &[&str],
                       offset: usize,
                       lineno: usize|
     -> Result<Complex64, ParseFailure> {
        let need = match field {
            MmField::Complex => 2,
            MmField::Pattern => 0,
            _ => 1,
        };
        if parts.len() < offset + need {
            return Err(ParseFailure::new(lineno, "missing value fields"));
        }
        Ok(match field {
            MmField::Pattern => Complex64::new(1.0, 0.0),
            MmField::Complex => {
                let re: f64 = parts[offset]
                    .parse()
                    .map_err(|_| ParseFailure::new(lineno, "bad real part"))?;
                let im: f64 = parts[offset + 1]
                    .parse()
                    .map_err(|_| ParseFailure::new(lineno, "bad imaginary part"))?;
                Complex64::new(re, im)
            }
            _ => {
                let re: f64 = parts[offset]
                    .parse()
                    .map_err(|_| ParseFailure::new(lineno, "bad value"))?;
                Complex64::new(re, 0.0)
            }
        })
    };

    match format {
        MmFormat::Array => {
            // column-major dense listing
            let mut values = Vec::with_capacity(n * n);
            for (idx, line) in lines {
                let t = line.trim();
                if t.is_empty() || t.starts_with('%') {
                    continue;
                }
                let parts: Vec<&str> = t.split_whitespace().collect();
                values.push((idx + 1, parse_value(field, &parts, 0, idx + 1)?));
            }
            let expected = match symmetry {
                MmSymmetry::General => n * n,
                // lower triangle including the diagonal
                _ => n * (n + 1) / 2,
            };
            if values.len() != expected {
                return Err(ParseFailure::new(
                    values.last().map(|v| v.0).unwrap_or(size_lineno),
                    format!("expected {expected} array values, found {}", values.len()),
                ));
            }
            let mut it = values.into_iter();
            match symmetry {
                MmSymmetry::General => {
                    for j in 0..n {
                        for i in 0..n {
                            let (_, v) = it.next().unwrap();
                            m.set(i, j, v);
                        }
                    }
                }
                _ => {
                    for j in 0..n {
                        for i in j..n {
                            let (lineno, v) = it.next().unwrap();
                            m.set(i, j, v);
                            if i != j {
                                m.set(j, i, mirror(symmetry, v));
                            } else if symmetry == MmSymmetry::SkewSymmetric
                                && v != Complex64::new(0.0, 0.0)
                            {
                                return Err(ParseFailure::new(
                                    lineno,
                                    "skew-symmetric diagonal must be zero",
                                ));
                            }
                        }
                    }
                }
            }
        }
        MmFormat::Coordinate => {
            let nnz: usize = dims[2]
                .parse()
                .map_err(|_| ParseFailure::new(size_lineno, "bad nonzero count"))?;
            let mut seen = 0usize;
            for (idx, line) in lines {
                let t = line.trim();
                if t.is_empty() || t.starts_with('%') {
                    continue;
                }
                let lineno = idx + 1;
                let parts: Vec<&str> = t.split_whitespace().collect();
                if parts.len() < 2 {
                    return Err(ParseFailure::new(lineno, "coordinate entry needs i j [values]"));
                }
                let i: usize = parts[0]
                    .parse()
                    .map_err(|_| ParseFailure::new(lineno, "bad row index"))?;
                let j: usize = parts[1]
                    .parse()
                    .map_err(|_| ParseFailure::new(lineno, "bad column index"))?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(ParseFailure::new(
                        lineno,
                        format!("index ({i},{j}) out of range for n = {n}"),
                    ));
                }
                let v = parse_value(field, &parts, 2, lineno)?;
                m.set(i - 1, j - 1, v);
                if symmetry != MmSymmetry::General && i != j {
                    m.set(j - 1, i - 1, mirror(symmetry, v));
                }
                seen += 1;
            }
            if seen != nnz {
                return Err(ParseFailure::new(
                    size_lineno,
                    format!("size line declares {nnz} entries, found {seen}"),
                ));
            }
        }
    }
    Ok(m)
}

fn mirror(symmetry: MmSymmetry, v: Complex64) -> Complex64 {
    match symmetry {
        MmSymmetry::General | MmSymmetry::Symmetric => v,
        MmSymmetry::SkewSymmetric => -v,
        MmSymmetry::Hermitian => v.conj(),
    }
}

/// Serializes a matrix as Matrix Market array format (real when every
/// entry has zero imaginary part, complex otherwise), full round-trip
/// precision.
pub fn to_matrix_market(m: &CMatrix) -> String {
    let n = m.nrows();
    let complex = (0..n).any(|i| (0..n).any(|j| m.get(i, j).im != 0.0));
    let mut out = String::new();
    let field = if complex { "complex" } else { "real" };
    let _ = writeln!(out, "%%MatrixMarket matrix array {field} general");
    let _ = writeln!(out, "{n} {n}");
    for j in 0..n {
        for i in 0..n {
            let z = m.get(i, j);
            if complex {
                let _ = writeln!(out, "{} {}", z.re, z.im);
            } else {
                let _ = writeln!(out, "{}", z.re);
            }
        }
    }
    out
}

/// Parses a vector from Matrix Market (n x 1 array), a JSON list, or plain
/// whitespace-separated values. JSON entries may be numbers or [re, im].
pub fn parse_vector(text: &str) -> Result<LatticeVector, ParseFailure> {
    if is_json(text) {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| ParseFailure::new(e.line(), format!("invalid JSON: {e}")))?;
        let arr = value
            .as_array()
            .ok_or_else(|| ParseFailure::new(1, "expected a JSON array"))?;
        let mut entries = Vec::with_capacity(arr.len());
        for (i, entry) in arr.iter().enumerate() {
            let z = match entry {
                serde_json::Value::Number(x) => {
                    Complex64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)
                }
                serde_json::Value::Array(pair) if pair.len() == 2 => Complex64::new(
                    pair[0].as_f64().unwrap_or(f64::NAN),
                    pair[1].as_f64().unwrap_or(f64::NAN),
                ),
                _ => {
                    return Err(ParseFailure::new(
                        1,
                        format!("entry {} must be a number or [re, im]", i + 1),
                    ))
                }
            };
            if z.re.is_nan() || z.im.is_nan() {
                return Err(ParseFailure::new(1, format!("entry {} is not finite", i + 1)));
            }
            entries.push(z);
        }
        return Ok(LatticeVector::new(entries));
    }
    if text.trim_start().starts_with("%%MatrixMarket") {
        let m = parse_vector_market(text)?;
        return Ok(m);
    }
    // plain values, whitespace separated, a+bi entries allowed
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let z = parse_complex_scalar(token)
                .ok_or_else(|| ParseFailure::new(idx + 1, format!("bad value {token:?}")))?;
            entries.push(z);
        }
    }
    if entries.is_empty() {
        return Err(ParseFailure::new(1, "empty vector"));
    }
    Ok(LatticeVector::new(entries))
}

fn parse_vector_market(text: &str) -> Result<LatticeVector, ParseFailure> {
    // reuse the matrix reader contract for n x 1 arrays
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().unwrap();
    let complex = header.contains("complex");
    if !header.contains("array") {
        return Err(ParseFailure::new(1, "vector files must use array format"));
    }
    let mut size = None;
    for (idx, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size = Some((idx + 1, t.to_string()));
        break;
    }
    let (lineno, size) = size.ok_or_else(|| ParseFailure::new(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 2 || dims[1] != "1" {
        return Err(ParseFailure::new(lineno, "expected an n x 1 array"));
    }
    let n: usize = dims[0]
        .parse()
        .map_err(|_| ParseFailure::new(lineno, "bad dimension"))?;
    let mut entries = Vec::with_capacity(n);
    for (idx, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        let z = if complex {
            if parts.len() < 2 {
                return Err(ParseFailure::new(idx + 1, "complex entry needs re im"));
            }
            Complex64::new(
                parts[0]
                    .parse()
                    .map_err(|_| ParseFailure::new(idx + 1, "bad real part"))?,
                parts[1]
                    .parse()
                    .map_err(|_| ParseFailure::new(idx + 1, "bad imaginary part"))?,
            )
        } else {
            Complex64::new(
                parts[0]
                    .parse()
                    .map_err(|_| ParseFailure::new(idx + 1, "bad value"))?,
                0.0,
            )
        };
        entries.push(z);
    }
    if entries.len() != n {
        return Err(ParseFailure::new(
            lineno,
            format!("declared {n} entries, found {}", entries.len()),
        ));
    }
    Ok(LatticeVector::new(entries))
}

/// Complex scalars on the command line: `a`, `bi`, or `a+bi` / `a-bi`,
/// with no spaces; `i` and `-i` are accepted.
pub fn parse_complex_scalar(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(im_part) = s.strip_suffix('i') {
        // find a +/- sign separating real and imaginary parts (skip a
        // leading sign and exponent signs)
        let bytes = im_part.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            let b = bytes[pos];
            if (b == b'+' || b == b'-') && bytes[pos - 1] != b'e' && bytes[pos - 1] != b'E' {
                split = Some(pos);
                break;
            }
        }
        match split {
            Some(pos) => {
                let re: f64 = im_part[..pos].parse().ok()?;
                let im_str = &im_part[pos..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().ok()?
                };
                Some(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if im_part.is_empty() {
                    1.0
                } else if im_part == "-" {
                    -1.0
                } else {
                    im_part.parse().ok()?
                };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        s.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Writes atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

/// Loads a positive operator from a file, enforcing squareness; exact
/// nonnegativity is checked by the caller (analyze rejects, spectral-only
/// mode admits general matrices).
pub fn load_operator(
    path: &Path,
    norm: NormChoice,
) -> Result<(PositiveOperator, Vec<u8>), ParseFailure> {
    let bytes = std::fs::read(path)
        .map_err(|e| ParseFailure::new(0, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes).into_owned();
    let m = parse_matrix(&text)?;
    let op = PositiveOperator::new(m, norm).map_err(|e| ParseFailure::new(0, e.to_string()))?;
    Ok((op, bytes))
}
