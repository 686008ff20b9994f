//! Text formats for operators, spectra and screen run records.
//!
//! Operator file:
//!
//! ```text
//! toa-operator v1
//! dimension 5
//! n_max 2
//! mass 1.0000000000000000e0
//! radius 1.0000000000000000e0
//! hbar 1.0000000000000000e0
//! kernel symmetric
//! g const:0
//! entries
//! -2 -2 <re> <im>
//! -2 -1 <re> <im>
//! ...
//! ```
//!
//! Entries are `j k re im` for the matrix element ⟨j|T|k⟩, with j and k the
//! angular-momentum quantum numbers; row 0 of the in-memory matrix holds
//! k = -N. A spectrum file repeats the header and replaces `entries` by
//! `eigenvalues`, followed by `k tau_k` lines with k counted from 1.
//! Floats carry 17 significant digits so `f64` values round-trip exactly.

use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::basis::{BasisTruncation, PhysicalParams};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::screen::AbsorptionRecord;

pub const OPERATOR_MAGIC: &str = "toa-operator v1";
pub const RUN_RECORD_HEADER: &str = "j,t,P_j,cumulative,survival";

/// Formats a float with 17 significant digits.
pub fn fmt_float<T: Real>(x: T) -> String {
    format!("{:.16e}", x.as_f64())
}

fn parse_float<T: Real>(s: &str, line: usize) -> Result<T> {
    s.parse::<f64>().map(T::lit).map_err(|e| Error::Parse {
        line,
        msg: format!("bad number {s:?}: {e}"),
    })
}

fn parse_int<I: std::str::FromStr>(s: &str, line: usize) -> Result<I>
where
    I::Err: std::fmt::Display,
{
    s.parse::<I>().map_err(|e| Error::Parse {
        line,
        msg: format!("bad integer {s:?}: {e}"),
    })
}

/// Provenance recorded alongside an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorHeader<T> {
    pub basis: BasisTruncation,
    pub params: PhysicalParams<T>,
    pub kernel: String,
    pub regulator: String,
}

impl<T: Real> OperatorHeader<T> {
    pub fn new(
        basis: BasisTruncation,
        params: PhysicalParams<T>,
        kernel: impl Into<String>,
        regulator: impl Into<String>,
    ) -> Self {
        Self {
            basis,
            params,
            kernel: kernel.into(),
            regulator: regulator.into(),
        }
    }

    fn write<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "{OPERATOR_MAGIC}")?;
        writeln!(w, "dimension {}", self.basis.dimension())?;
        writeln!(w, "n_max {}", self.basis.n_max())?;
        writeln!(w, "mass {}", fmt_float(self.params.mass))?;
        writeln!(w, "radius {}", fmt_float(self.params.radius))?;
        writeln!(w, "hbar {}", fmt_float(self.params.hbar))?;
        writeln!(w, "kernel {}", self.kernel)?;
        writeln!(w, "g {}", self.regulator)?;
        Ok(())
    }
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(r: R) -> Self {
        Self {
            inner: r.lines(),
            number: 0,
        }
    }

    /// Next line that is neither blank nor a `#` comment.
    fn next_content(&mut self) -> Result<Option<String>> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line?;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok(Some(t.to_string()));
            }
        }
        Ok(None)
    }

    fn expect(&mut self) -> Result<String> {
        self.next_content()?.ok_or(Error::Parse {
            line: self.number,
            msg: "unexpected end of file".into(),
        })
    }

    fn keyed(&mut self, key: &str) -> Result<String> {
        let line = self.expect()?;
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ if line == key => Ok(String::new()),
            _ => Err(self.error(format!("expected `{key}`, found {line:?}"))),
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse {
            line: self.number,
            msg,
        }
    }
}

fn read_header<T: Real, R: BufRead>(lines: &mut Lines<R>) -> Result<OperatorHeader<T>> {
    let magic = lines.expect()?;
    if magic != OPERATOR_MAGIC {
        return Err(lines.error(format!("expected `{OPERATOR_MAGIC}`, found {magic:?}")));
    }
    let dim: usize = parse_int(&lines.keyed("dimension")?, lines.number)?;
    let n_max: usize = parse_int(&lines.keyed("n_max")?, lines.number)?;
    let basis = BasisTruncation::new(n_max)?;
    if basis.dimension() != dim {
        return Err(lines.error(format!("dimension {dim} does not match n_max {n_max}")));
    }
    let mass = parse_float(&lines.keyed("mass")?, lines.number)?;
    let radius = parse_float(&lines.keyed("radius")?, lines.number)?;
    let hbar = parse_float(&lines.keyed("hbar")?, lines.number)?;
    let params = PhysicalParams::new(mass, radius, hbar)?;
    let kernel = lines.keyed("kernel")?;
    let regulator = lines.keyed("g")?;
    Ok(OperatorHeader {
        basis,
        params,
        kernel,
        regulator,
    })
}

pub fn write_operator<T: Real, W: Write>(
    w: &mut W,
    header: &OperatorHeader<T>,
    op: &HermitianOperator<T>,
) -> Result<()> {
    if op.basis() != header.basis {
        return Err(Error::DimensionMismatch {
            expected: header.basis.dimension(),
            found: op.dim(),
        });
    }
    header.write(w)?;
    writeln!(w, "entries")?;
    let b = header.basis;
    for r in 0..b.dimension() {
        for c in 0..b.dimension() {
            let z = op.matrix()[(r, c)];
            writeln!(
                w,
                "{} {} {} {}",
                b.momentum(r),
                b.momentum(c),
                fmt_float(z.re),
                fmt_float(z.im)
            )?;
        }
    }
    Ok(())
}

pub fn read_operator<T: Real, R: BufRead>(
    r: R,
) -> Result<(OperatorHeader<T>, HermitianOperator<T>)> {
    let mut lines = Lines::new(r);
    let header = read_header::<T, _>(&mut lines)?;
    let marker = lines.expect()?;
    if marker != "entries" {
        return Err(lines.error(format!("expected `entries`, found {marker:?}")));
    }
    let b = header.basis;
    let dim = b.dimension();
    let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    let mut seen = vec![false; dim * dim];
    for _ in 0..dim * dim {
        let line = lines.expect()?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(lines.error(format!("expected `j k re im`, found {line:?}")));
        }
        let n = lines.number;
        let j: i64 = parse_int(fields[0], n)?;
        let k: i64 = parse_int(fields[1], n)?;
        let (Some(r), Some(c)) = (b.row(j), b.row(k)) else {
            return Err(lines.error(format!("index ({j}, {k}) outside the basis")));
        };
        if std::mem::replace(&mut seen[r * dim + c], true) {
            return Err(lines.error(format!("duplicate entry ({j}, {k})")));
        }
        data[r * dim + c] = Complex::new(parse_float(fields[2], n)?, parse_float(fields[3], n)?);
    }
    if let Some(extra) = lines.next_content()? {
        return Err(lines.error(format!("trailing content {extra:?}")));
    }
    let op = HermitianOperator::new(b, ComplexMatrix::from_rows(dim, data)?)?;
    Ok((header, op))
}

pub fn write_spectrum<T: Real, W: Write>(
    w: &mut W,
    header: &OperatorHeader<T>,
    eigenvalues: &[T],
) -> Result<()> {
    if eigenvalues.len() != header.basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: header.basis.dimension(),
            found: eigenvalues.len(),
        });
    }
    header.write(w)?;
    writeln!(w, "eigenvalues")?;
    for (k, &t) in eigenvalues.iter().enumerate() {
        writeln!(w, "{} {}", k + 1, fmt_float(t))?;
    }
    Ok(())
}

pub fn read_spectrum<T: Real, R: BufRead>(r: R) -> Result<(OperatorHeader<T>, Vec<T>)> {
    let mut lines = Lines::new(r);
    let header = read_header::<T, _>(&mut lines)?;
    let marker = lines.expect()?;
    if marker != "eigenvalues" {
        return Err(lines.error(format!("expected `eigenvalues`, found {marker:?}")));
    }
    let dim = header.basis.dimension();
    let mut values = Vec::with_capacity(dim);
    for k in 1..=dim {
        let line = lines.expect()?;
        let n = lines.number;
        let Some((idx, val)) = line.split_once(char::is_whitespace) else {
            return Err(lines.error(format!("expected `k tau_k`, found {line:?}")));
        };
        if parse_int::<usize>(idx, n)? != k {
            return Err(lines.error(format!("expected index {k}, found {idx}")));
        }
        values.push(parse_float(val.trim(), n)?);
    }
    Ok((header, values))
}

/// Writes the CSV run record followed by `# key=value` metadata lines.
pub fn write_run_record<T: Real, W: Write>(
    w: &mut W,
    rec: &AbsorptionRecord<T>,
    config: &[(String, String)],
) -> Result<()> {
    writeln!(w, "{RUN_RECORD_HEADER}")?;
    let cumulative = rec.cumulative();
    for (j, ((&t, &p), &c)) in rec
        .times
        .iter()
        .zip(&rec.probabilities)
        .zip(&cumulative)
        .enumerate()
    {
        writeln!(
            w,
            "{j},{},{},{},{}",
            fmt_float(t),
            fmt_float(p),
            fmt_float(c),
            fmt_float(T::one() - c)
        )?;
    }
    for (k, v) in config {
        writeln!(w, "# {k}={v}")?;
    }
    match rec.tau_mean {
        Some(t) => writeln!(w, "# tau_mean={}", fmt_float(t))?,
        None => writeln!(w, "# tau_mean=undefined")?,
    }
    writeln!(w, "# total={}", fmt_float(rec.total()))?;
    writeln!(w, "# mode={}", rec.mode)?;
    Ok(())
}

/// Times and probabilities from a run record; metadata lines are skipped.
pub fn read_run_record<T: Real, R: BufRead>(r: R) -> Result<(Vec<T>, Vec<T>)> {
    let mut lines = Lines::new(r);
    let header = lines.expect()?;
    if header != RUN_RECORD_HEADER {
        return Err(lines.error(format!("expected `{RUN_RECORD_HEADER}`, found {header:?}")));
    }
    let mut times = Vec::new();
    let mut probabilities = Vec::new();
    while let Some(line) = lines.next_content()? {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(lines.error(format!("expected 5 columns, found {}", fields.len())));
        }
        let n = lines.number;
        let j: usize = parse_int(fields[0], n)?;
        if j != times.len() {
            return Err(lines.error(format!("expected step {}, found {j}", times.len())));
        }
        times.push(parse_float(fields[1], n)?);
        probabilities.push(parse_float(fields[2], n)?);
    }
    Ok((times, probabilities))
}
