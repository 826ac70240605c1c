//! Rectangular operation tables over dense element indices.

use alloc::vec::Vec;

use crate::error::Error;

/// A total `rows × cols` table of element indices, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<usize>,
}

impl Table {
    pub fn new(rows: usize, cols: usize, data: Vec<usize>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "table",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Table { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Table { rows, cols, data }
    }

    pub fn square(n: usize, f: impl FnMut(usize, usize) -> usize) -> Self {
        Self::from_fn(n, n, f)
    }

    /// Builds a table from nested rows, rejecting ragged input.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "table row",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Table {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[usize] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[usize]>::to_vec)
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: usize) {
        self.data[i * self.cols + j] = v;
    }

    /// Fails unless the table is `rows × cols` with every entry below `bound`.
    pub fn expect_shape(&self, what: &'static str, rows: usize, cols: usize, bound: usize) -> Result<(), Error> {
        if self.rows != rows {
            return Err(Error::DimensionMismatch {
                what,
                expected: rows,
                found: self.rows,
            });
        }
        if self.cols != cols {
            return Err(Error::DimensionMismatch {
                what,
                expected: cols,
                found: self.cols,
            });
        }
        match self.data.iter().find(|&&v| v >= bound) {
            Some(&index) => Err(Error::IndexOutOfRange {
                what,
                index,
                size: bound,
            }),
            None => Ok(()),
        }
    }
}

/// A table whose entries may be undefined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTable {
    rows: usize,
    cols: usize,
    data: Vec<Option<usize>>,
}

impl PartialTable {
    pub fn new(rows: usize, cols: usize, data: Vec<Option<usize>>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "partial table",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(PartialTable { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Option<usize>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PartialTable { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Option<usize>] {
        &self.data
    }

    pub fn is_total(&self) -> bool {
        self.data.iter().all(Option::is_some)
    }

    pub fn to_rows(&self) -> Vec<Vec<Option<usize>>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[Option<usize>]>::to_vec)
            .collect()
    }
}

impl From<&Table> for PartialTable {
    fn from(t: &Table) -> Self {
        PartialTable {
            rows: t.rows,
            cols: t.cols,
            data: t.data.iter().copied().map(Some).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ragged_rows_are_rejected() {
        let err = Table::from_rows(&[vec![0, 1], vec![1]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn rows_round_trip() {
        let t = Table::square(3, |i, j| (i + j) % 3);
        assert_eq!(Table::from_rows(&t.to_rows()).unwrap(), t);
    }

    #[test]
    fn out_of_range_entry_is_reported() {
        let t = Table::square(2, |i, _| i * 2);
        assert_eq!(
            t.expect_shape("mul", 2, 2, 2),
            Err(Error::IndexOutOfRange {
                what: "mul",
                index: 2,
                size: 2
            })
        );
    }
}
