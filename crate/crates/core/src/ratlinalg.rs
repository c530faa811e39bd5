//! Exact linear algebra over the rationals.
//!
//! Rank is computed by fraction-free elimination on primitive integer rows:
//! every rational row is first scaled to a primitive integer vector, and each
//! elimination step `row ← a·row − b·pivot` is followed by division by the
//! row content. Entries start out as `i64` with checked arithmetic; any
//! overflow restarts the elimination on `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

pub type Rational = BigRational;

/// Below this fraction of nonzero entries a matrix is stored sparsely.
pub const SPARSE_DENSITY: f64 = 0.10;

#[derive(Clone, PartialEq)]
enum Repr {
    Dense(Vec<Rational>),
    Sparse(Vec<Vec<(usize, Rational)>>),
}

#[derive(Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            repr: Repr::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_sparse_rows(k, k, (0..k).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        let sparse = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(Self::from_sparse_rows(n, cols, sparse))
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Builds from sparse rows (column, value); duplicate columns are summed.
    /// The storage is chosen from the resulting density.
    pub fn from_sparse_rows(
        rows: usize,
        cols: usize,
        entries: Vec<Vec<(usize, Rational)>>,
    ) -> Self {
        assert_eq!(entries.len(), rows, "row count mismatch");
        let entries: Vec<Vec<(usize, Rational)>> = entries
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, Rational)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!(c < cols, "column {c} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        let nnz: usize = entries.iter().map(Vec::len).sum();
        let cells = rows * cols;
        let repr = if cells == 0 || (nnz as f64) < SPARSE_DENSITY * cells as f64 {
            Repr::Sparse(entries)
        } else {
            let mut dense = vec![Rational::zero(); cells];
            for (i, r) in entries.into_iter().enumerate() {
                for (c, v) in r {
                    dense[i * cols + c] = v;
                }
            }
            Repr::Dense(dense)
        };
        RationalMatrix { rows, cols, repr }
    }

    pub(crate) fn from_integer_sparse_rows(
        rows: usize,
        cols: usize,
        entries: Vec<Vec<(usize, i64)>>,
    ) -> Self {
        Self::from_sparse_rows(
            rows,
            cols,
            entries
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(c, v)| (c, Rational::from_integer(v.into())))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.repr {
            Repr::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Repr::Sparse(s) => s.iter().map(Vec::len).sum(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.repr {
            Repr::Dense(d) => d[i * self.cols + j].clone(),
            Repr::Sparse(s) => s[i]
                .binary_search_by_key(&j, |e| e.0)
                .map_or_else(|_| Rational::zero(), |k| s[i][k].1.clone()),
        }
    }

    /// Nonzero entries of row `i`, by increasing column.
    pub fn row_entries(&self, i: usize) -> Vec<(usize, Rational)> {
        match &self.repr {
            Repr::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
            Repr::Sparse(s) => s[i].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (c, v) in self.row_entries(i) {
                t[c].push((i, v));
            }
        }
        Self::from_sparse_rows(self.cols, self.rows, t)
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows: Vec<Vec<(usize, Rational)>> =
            (0..other.rows).map(|k| other.row_entries(k)).collect();
        let out = (0..self.rows)
            .map(|i| {
                let mut acc: Vec<(usize, Rational)> = Vec::new();
                for (k, a) in self.row_entries(i) {
                    for (c, b) in &other_rows[k] {
                        acc.push((*c, &a * b));
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_sparse_rows(self.rows, other.cols, out))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row_entries(i)
                    .into_iter()
                    .fold(Rational::zero(), |acc, (c, a)| acc + a * &v[c])
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row_entries(i);
                r.extend(
                    other
                        .row_entries(i)
                        .into_iter()
                        .map(|(c, v)| (c + self.cols, v)),
                );
                r
            })
            .collect();
        Ok(Self::from_sparse_rows(
            self.rows,
            self.cols + other.cols,
            rows,
        ))
    }

    fn dense_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "RationalMatrix {}x{} ({})",
            self.rows,
            self.cols,
            if self.is_sparse() { "sparse" } else { "dense" }
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Integer scalars usable in the fraction-free elimination.
trait ElimScalar: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn bits(&self) -> u64;
    /// `a·x − b·y`, or `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn negate(&self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ElimScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn bits(&self) -> u64 {
        64 - u64::from(self.unsigned_abs().leading_zeros())
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl ElimScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn bits(&self) -> u64 {
        BigInt::bits(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type IntRow<T> = Vec<(usize, T)>;

fn make_primitive<T: ElimScalar>(row: &mut IntRow<T>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.gcd(v);
    }
    if first.1.is_negative() {
        g = g.negate();
    }
    if !g.is_unit() || g.is_negative() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `lead(pivot)·row − lead(row)·pivot`, made primitive.
fn eliminate<T: ElimScalar>(row: &IntRow<T>, pivot: &IntRow<T>) -> Option<IntRow<T>> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            let v = T::cross(a, &row[i].1, b, &T::zero())?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = T::cross(a, &T::zero(), b, &pivot[j].1)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::cross(a, &row[i].1, b, &pivot[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    make_primitive(&mut out);
    Some(out)
}

fn rank_of<T: ElimScalar>(mut active: Vec<IntRow<T>>, exec: Exec) -> Option<usize> {
    active.retain(|r| !r.is_empty());
    let mut rank = 0;
    while !active.is_empty() {
        let lead = active.iter().map(|r| r[0].0).min().expect("nonempty");
        let candidates: Vec<usize> = (0..active.len())
            .filter(|&i| active[i][0].0 == lead)
            .collect();
        let &pivot_pos = candidates
            .iter()
            .min_by_key(|&&i| (active[i][0].1.bits(), active[i].len(), i))
            .expect("a row leads at the minimal column");
        let pivot = active.swap_remove(pivot_pos);
        rank += 1;
        let targets: Vec<usize> = (0..active.len())
            .filter(|&i| active[i][0].0 == lead)
            .collect();
        let reduced: Vec<Option<IntRow<T>>> =
            exec.map_slice(&targets, |&i| eliminate(&active[i], &pivot));
        for (&i, r) in targets.iter().zip(reduced) {
            active[i] = r?;
        }
        active.retain(|r| !r.is_empty());
    }
    Some(rank)
}

fn primitive_big_rows(m: &RationalMatrix) -> Vec<IntRow<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let entries = m.row_entries(i);
            let lcm = entries
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let mut row: IntRow<BigInt> = entries
                .into_iter()
                .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
                .collect();
            make_primitive(&mut row);
            row
        })
        .collect()
}

pub fn rank(m: &RationalMatrix) -> usize {
    rank_with(m, Exec::default())
}

/// Exact rank; the execution mode only affects how each elimination step's
/// row updates are scheduled.
pub fn rank_with(m: &RationalMatrix, exec: Exec) -> usize {
    let big = primitive_big_rows(m);
    let small: Option<Vec<IntRow<i64>>> = big
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|v| (*c, v))).collect())
        .collect();
    if let Some(rows) = small {
        if let Some(r) = rank_of(rows, exec) {
            return r;
        }
    }
    rank_of(big, exec).expect("BigInt elimination cannot overflow")
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{v : Mv = 0}`, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut rows = m.dense_rows();
    let pivots = rref(&mut rows, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `Mx = b`.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut rows = m.dense_rows();
    for (row, bi) in rows.iter_mut().zip(b) {
        row.push(bi.clone());
    }
    let pivots = rref(&mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][m.cols].clone();
    }
    Ok(x)
}
