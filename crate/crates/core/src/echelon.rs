//! Streaming exact rank.
//!
//! Rows arrive one at a time as sparse integer vectors and are reduced
//! against the stored basis by leading column. Every stored row is kept
//! primitive (divided by its content) so coefficients stay small across
//! millions of insertions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Sparse integer row, sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    /// leading column -> index into `rows`
    pivots: BTreeMap<usize, usize>,
    max_rows: Option<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon that refuses to store more than `max_rows` basis rows.
    pub fn with_limit(max_rows: usize) -> Self {
        Echelon {
            max_rows: Some(max_rows),
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }

    /// Reduces `row` against the stored basis and returns the residual
    /// (empty when `row` lies in the span).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, _)) = row.first() {
            let Some(&idx) = self.pivots.get(lead) else {
                break;
            };
            row = eliminate(&row, &self.rows[idx]);
        }
        row
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> Result<bool> {
        let mut residual = self.reduce(row);
        if residual.is_empty() {
            return Ok(false);
        }
        if let Some(limit) = self.max_rows {
            if self.rows.len() >= limit {
                return Err(Error::Truncated {
                    what: "stored echelon rows",
                    needed: self.rows.len() as u64 + 1,
                    limit: limit as u64,
                });
            }
        }
        scalar::make_primitive(&mut residual);
        self.pivots.insert(residual[0].0, self.rows.len());
        self.rows.push(residual);
        Ok(true)
    }

    /// Convenience wrapper for rational rows given as `(column, value)` pairs.
    pub fn insert_rational<'a, I>(&mut self, entries: I) -> Result<bool>
    where
        I: IntoIterator<Item = (usize, &'a Scalar)>,
    {
        match row_from_rational(entries) {
            Some(row) => self.insert(row),
            None => Ok(false),
        }
    }

    /// Rank of the union of two row spaces. Associative and commutative up
    /// to the resulting span.
    pub fn merge(mut self, other: Echelon) -> Result<Echelon> {
        let (mut big, small) = if self.rank() >= other.rank() {
            (std::mem::take(&mut self), other)
        } else {
            (other, self)
        };
        for row in small.rows {
            big.insert(row)?;
        }
        Ok(big)
    }
}

/// Sorted, primitive integer row from rational `(column, value)` pairs.
pub fn row_from_rational<'a, I>(entries: I) -> Option<SparseRow>
where
    I: IntoIterator<Item = (usize, &'a Scalar)>,
{
    let mut pairs: Vec<(usize, &Scalar)> = entries.into_iter().collect();
    pairs.sort_by_key(|(c, _)| *c);
    scalar::primitive_integer_row(pairs)
}

/// `a*row - b*pivot` where `a`, `b` are the leading coefficients scaled by
/// their gcd, cancelling the common leading column.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a0 = &pivot[0].1;
    let b0 = &row[0].1;
    let g = a0.gcd(b0);
    let a = a0 / &g;
    let b = b0 / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, &a * &row[i].1));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(&b * &pivot[j].1)));
            j += 1;
        } else {
            let v = &a * &row[i].1 - &b * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if out.len() > 1 {
        reduce_content(&mut out);
    }
    out
}

fn reduce_content(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() || g.is_negative() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}
