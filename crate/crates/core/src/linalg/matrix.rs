use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::serde_int::{parse_rational, rational_to_string};
use super::{LatticeVector, LinalgError};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ZMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    /// `cols` is needed to give shape to a matrix with no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged { row: i, len: r.len(), expected: cols });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: T) -> Self {
        let mut m = self.clone();
        m.data[i * self.cols + j] = value;
        m
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }
}

impl ZMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
            .expect("rectangular literal")
    }

    /// The vectors become the rows.
    pub fn from_vectors(rows: &[LatticeVector], cols: usize) -> Result<Self, LinalgError> {
        Matrix::from_rows(rows.iter().map(|v| v.entries().to_vec()).collect(), cols)
    }

    pub fn from_columns(columns: &[LatticeVector], rows: usize) -> Result<Self, LinalgError> {
        Ok(Self::from_vectors(columns, rows)?.transpose())
    }

    pub fn row_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.row(i).to_vec())
    }

    pub fn column_vector(&self, j: usize) -> LatticeVector {
        LatticeVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<LatticeVector> {
        (0..self.cols).map(|j| self.column_vector(j)).collect()
    }

    pub fn mul_vector(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        LatticeVector::new(
            (0..self.rows).map(|i| self.row(i).iter().zip(v.entries()).map(|(a, b)| a * b).sum()).collect(),
        )
    }

    pub fn to_rational(&self) -> QMatrix {
        self.map(|a| BigRational::from(a.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl QMatrix {
    pub fn to_integer(&self) -> Option<ZMatrix> {
        if self.data.iter().all(|q| q.is_integer()) {
            Some(self.map(|q| q.to_integer()))
        } else {
            None
        }
    }

    /// `(B, d)` with `self = B / d`, `B` integral and `d > 0` the lcm of all denominators.
    pub fn clear_denominators(&self) -> (ZMatrix, BigInt) {
        let d = self.data.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let scale = BigRational::from(d.clone());
        (self.map(|q| (q * &scale).to_integer()), d)
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, cells: Vec<Vec<String>>) -> fmt::Result {
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, (0..self.rows).map(|i| self.row(i).iter().map(rational_to_string).collect()).collect())
    }
}

fn serialize_rows<T, S: Serializer>(m: &Matrix<T>, s: S, cell: impl Fn(&T) -> String) -> Result<S::Ok, S::Error>
where
    T: Clone,
{
    let mut seq = s.serialize_seq(Some(m.rows))?;
    for i in 0..m.rows {
        let row: Vec<String> = m.row(i).iter().map(&cell).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Int(i64),
    Str(String),
}

fn deserialize_rows<'de, D: Deserializer<'de>>(d: D) -> Result<QMatrix, D::Error> {
    let raw: Vec<Vec<Cell>> = Vec::deserialize(d)?;
    let cols = raw.first().map_or(0, Vec::len);
    let rows = raw
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| match c {
                    Cell::Int(i) => Ok(BigRational::from(BigInt::from(i))),
                    Cell::Str(s) => parse_rational(&s),
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .collect::<Result<Vec<_>, String>>()
        .map_err(D::Error::custom)?;
    Matrix::from_rows(rows, cols).map_err(D::Error::custom)
}

impl Serialize for ZMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rows(self, s, ToString::to_string)
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rows(self, s, rational_to_string)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_rows(d)
    }
}

impl<'de> Deserialize<'de> for ZMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_rows(d)?.to_integer().ok_or_else(|| D::Error::custom("expected an integer matrix"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = ZMatrix::from_i64_rows(&[&[1, 2], &[3, 4], &[5, 6]]);
        let b = a.transpose();
        assert_eq!(b.rows(), 2);
        let p = b.mul(&a);
        assert_eq!(p, ZMatrix::from_i64_rows(&[&[35, 44], &[44, 56]]));
        assert!(p.is_symmetric());
    }

    #[test]
    fn json_matrix_strings() {
        let m = ZMatrix::from_i64_rows(&[&[1, -2], &[0, 3]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","-2"],["0","3"]]"#);
        let back: ZMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let q: QMatrix = serde_json::from_str(r#"[["1/2", 3]]"#).unwrap();
        assert!(q.to_integer().is_none());
        assert!(serde_json::from_str::<ZMatrix>(r#"[["1/2"]]"#).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = Matrix::from_rows(vec![vec![1, 2], vec![3]], 2);
        assert!(matches!(r, Err(LinalgError::Ragged { row: 1, .. })));
    }
}
