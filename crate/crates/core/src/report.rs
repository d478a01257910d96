//! Number formatting and small CSV/summary writers shared by the CLI and
//! the examples.

use crate::error::Result;
use std::io::Write;

/// Nine significant digits: fixed notation for 1e-4 <= |x| < 1e9,
/// scientific otherwise.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if (1e-4..1e9).contains(&a) {
        let mag = a.log10().floor() as i32;
        let decimals = (8 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into a new digit (9.99999999995 -> 10.00000000)
        let carried = s.trim_start_matches('-').parse::<f64>().unwrap_or(0.0) >= 10f64.powi(mag + 1);
        if decimals > 0 && carried {
            return format!("{x:.prec$}", prec = decimals - 1);
        }
        s
    } else {
        format!("{x:.8e}")
    }
}

/// A CSV table with a header row and numeric rows.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| crate::Error::Io(e.to_string());
        out.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|v| fmt_sig(*v))).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(2.0), "2.00000000");
        assert_eq!(fmt_sig(1.6180339887), "1.61803399");
        assert_eq!(fmt_sig(-0.5), "-0.500000000");
        assert_eq!(fmt_sig(1234.5), "1234.50000");
        assert_eq!(fmt_sig(1.5e-7), "1.50000000e-7");
        assert_eq!(fmt_sig(9.999999999), "10.0000000");
    }

    #[test]
    fn table_csv() {
        let mut t = Table::new(&["k", "v"]);
        t.push(vec![1.0, 0.25]);
        assert_eq!(t.to_csv_string(), "k,v\n1.00000000,0.250000000\n");
    }
}
