//! Tensor-product evaluation grids and their CSV rendering.

use std::str::FromStr;

use fourier_pde::{parse_expr, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub points: Vec<f64>,
}

impl Axis {
    pub fn points(name: &str, points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Invalid(format!("axis `{}` has a non-finite point", name)));
        }
        Ok(Axis {
            name: name.to_string(),
            points,
        })
    }

    pub fn linspace(name: &str, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Invalid(format!("axis `{}` needs at least 2 nodes", name)));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let mut pts: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
        pts[count - 1] = hi;
        Self::points(name, pts)
    }
}

fn real(s: &str) -> Result<f64> {
    parse_expr(s)?
        .as_scalar()
        .filter(|v| v.is_real())
        .map(|v| v.to_f64())
        .ok_or_else(|| Error::Invalid(format!("`{}` is not a real constant", s)))
}

impl FromStr for Axis {
    type Err = Error;

    /// `name=lo:hi:count`, where the bounds may be exact expressions like `pi/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("axis `{}` is not name=lo:hi:count", s));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(bad());
        };
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        Axis::linspace(name.trim(), real(lo)?, real(hi)?, count)
    }
}

pub struct Grid {
    axes: Vec<Axis>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Invalid(format!("axis `{}` given twice", a.name)));
            }
        }
        Ok(Grid { axes })
    }

    fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points.len()).product()
    }

    /// Point number `k` in row-major order, first axis slowest.
    fn point(&self, mut k: usize) -> Vec<(&str, f64)> {
        let mut out = vec![("", 0.0); self.axes.len()];
        for (i, a) in self.axes.iter().enumerate().rev() {
            let n = a.points.len();
            out[i] = (a.name.as_str(), a.points[k % n]);
            k /= n;
        }
        out
    }

    pub fn evaluate(&self, f: impl Fn(&[(&str, f64)]) -> Result<f64>) -> Result<Vec<f64>> {
        (0..self.len()).map(|k| f(&self.point(k))).collect()
    }

    pub fn to_csv(&self, values: &[f64], chop: i32) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Invalid(format!("CSV: {}", e));
        let header = self.axes.iter().map(|a| a.name.as_str()).chain(["value"]);
        w.write_record(header).map_err(csv_err)?;
        let cutoff = 10f64.powi(-chop);
        for (k, v) in values.iter().enumerate() {
            let v = if v.abs() < cutoff { 0.0 } else { *v };
            let row = self
                .point(k)
                .into_iter()
                .map(|(_, x)| significant(x))
                .chain([significant(v)]);
            w.write_record(row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV of ASCII numbers"))
    }
}

/// Shortest decimal that round-trips the value rounded to 15 significant digits.
pub fn significant(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.14e}", v).parse().expect("float formatting parses");
    format!("{}", rounded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a: Axis = "x=0:pi:3".parse().unwrap();
        assert_eq!(a.name, "x");
        assert_eq!(a.points[2], std::f64::consts::PI);
        assert!("x=0:1:1".parse::<Axis>().is_err());
        assert!("x=0:1".parse::<Axis>().is_err());
    }

    #[test]
    fn first_axis_is_slowest() {
        let g = Grid::new(vec![
            Axis::points("t", vec![0.0, 1.0]).unwrap(),
            Axis::points("x", vec![0.0, 0.5, 1.0]).unwrap(),
        ])
        .unwrap();
        let rows: Vec<_> = (0..6).map(|k| g.point(k)).collect();
        assert_eq!(rows[1], vec![("t", 0.0), ("x", 0.5)]);
        assert_eq!(rows[3], vec![("t", 1.0), ("x", 0.0)]);
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(significant(0.1 + 0.2), "0.3");
        assert_eq!(significant(1.0 / 3.0), "0.333333333333333");
        assert_eq!(significant(-2.5e-20), "-0.000000000000000000025");
    }
}
