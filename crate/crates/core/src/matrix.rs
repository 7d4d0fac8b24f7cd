//! Dense real symmetric matrices with exactly mirrored storage, plus text and
//! binary serialization.

use std::io::{Read, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Support;

/// A dense real symmetric matrix. Construction symmetrizes, and entry writes
/// mirror across the diagonal, so `get(i, j) == get(j, i)` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    data: DMatrix<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            data: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            data: DMatrix::identity(n, n),
        }
    }

    /// Symmetrizes `(m + m^T) / 2` and checks finiteness.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidArgument(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let sym = (m + m.transpose()) * 0.5;
        if sym.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix contains non-finite entries".into(),
            ));
        }
        Ok(SymMatrix { data: sym })
    }

    /// Exact-mirror construction from the upper triangle of `m` (no averaging).
    pub fn from_upper_triangle(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidArgument("expected a square matrix".into()));
        }
        let n = m.nrows();
        let mut data = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = m[(i, j)];
                if !v.is_finite() {
                    return Err(Error::InvalidArgument(
                        "matrix contains non-finite entries".into(),
                    ));
                }
                data[(i, j)] = v;
                data[(j, i)] = v;
            }
        }
        Ok(SymMatrix { data })
    }

    /// Adjacency matrix of a support with unit weights (diagonal entries get 1).
    pub fn adjacency(s: &Support) -> Self {
        let n = s.n_vertices();
        let mut data = DMatrix::zeros(n, n);
        for (i, j) in s.edges() {
            data[(i, j)] = 1.0;
            data[(j, i)] = 1.0;
        }
        for v in s.diagonal() {
            data[(v, v)] = 1.0;
        }
        SymMatrix { data }
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[(i, j)]
    }

    /// Mirrored write.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[(i, j)] = value;
        self.data[(j, i)] = value;
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// Column-major vectorization (matches the Kronecker-product conventions).
    pub fn vec(&self) -> DVector<f64> {
        DVector::from_column_slice(self.data.as_slice())
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            data: &self.data * c,
        }
    }

    /// Sum of all entries, i.e. `1^T vec(M)`.
    pub fn entry_sum(&self) -> f64 {
        self.data.iter().sum()
    }

    /// The support of entries exceeding `tol` in absolute value.
    pub fn support(&self, tol: f64) -> Support {
        let n = self.n();
        let mut edges = Vec::new();
        let mut diag = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.data[(i, j)].abs() > tol {
                    edges.push((i, j));
                }
            }
            if self.data[(i, i)].abs() > tol {
                diag.push(i);
            }
        }
        Support::from_edges(n, edges)
            .expect("entries are in range")
            .with_diagonal(diag)
            .expect("diagonal in range")
    }

    /// Whitespace-delimited dense text, one row per line.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| format!("{:.17e}", self.data[(i, j)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(|t| t.parse::<f64>()).collect();
            rows.push(row.map_err(|e| Error::Parse {
                line: no + 1,
                message: e.to_string(),
            })?);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse {
                line: 1,
                message: "empty matrix".into(),
            });
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        SymMatrix::from_matrix(&m)
    }

    /// Binary format: 8-byte little-endian dimension header, then `n*n` f64
    /// entries, little-endian, row-major.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        let n = self.n() as u64;
        w.write_all(&n.to_le_bytes())?;
        for i in 0..self.n() {
            for j in 0..self.n() {
                w.write_all(&self.data[(i, j)].to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut header = [0u8; 8];
        r.read_exact(&mut header)?;
        let n = u64::from_le_bytes(header) as usize;
        if n == 0 || n > 1 << 20 {
            return Err(Error::InvalidArgument(format!(
                "implausible matrix dimension {n}"
            )));
        }
        let mut buf = vec![0u8; 8 * n * n];
        r.read_exact(&mut buf)?;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let off = 8 * (i * n + j);
                m[(i, j)] = f64::from_le_bytes(buf[off..off + 8].try_into().unwrap());
            }
        }
        SymMatrix::from_matrix(&m)
    }

    pub fn save_binary(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        self.write_binary(&mut f)
    }

    pub fn load_binary(path: impl AsRef<Path>) -> Result<Self> {
        let mut f = std::fs::File::open(path)?;
        SymMatrix::read_binary(&mut f)
    }
}

impl From<SymMatrix> for DMatrix<f64> {
    fn from(m: SymMatrix) -> Self {
        m.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_kite;

    #[test]
    fn symmetrization_and_mirrored_writes() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 4.0, 3.0]);
        let mut s = SymMatrix::from_matrix(&m).unwrap();
        assert_eq!(s.get(0, 1), 3.0);
        assert_eq!(s.get(1, 0), 3.0);
        s.set(1, 0, -1.0);
        assert_eq!(s.get(0, 1), -1.0);
    }

    #[test]
    fn rejects_non_finite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, f64::NAN, f64::NAN, 3.0]);
        assert!(SymMatrix::from_matrix(&m).is_err());
    }

    #[test]
    fn vec_is_column_major() {
        let mut s = SymMatrix::zeros(2);
        s.set(0, 1, 5.0);
        s.set(0, 0, 1.0);
        let v = s.vec();
        // column-major: (0,0), (1,0), (0,1), (1,1)
        assert_eq!(v.as_slice(), &[1.0, 5.0, 5.0, 0.0]);
    }

    #[test]
    fn text_round_trip() {
        let a = SymMatrix::adjacency(&make_kite(5).unwrap()).scale(0.37);
        let b = SymMatrix::from_text(&a.to_text()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn binary_round_trip() {
        let a = SymMatrix::adjacency(&make_kite(6).unwrap()).scale(-1.25);
        let mut buf = Vec::new();
        a.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 8 * 36);
        assert_eq!(&buf[..8], &6u64.to_le_bytes());
        let b = SymMatrix::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn support_extraction() {
        let kite = make_kite(5).unwrap();
        let a = SymMatrix::adjacency(&kite);
        assert_eq!(a.support(0.5), kite);
    }
}
