//! Exact linear algebra over the rationals: sparse matrices, fraction-free
//! rank, and reduced row echelon form for kernels.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// A sparse rational matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.add(r, c, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Adds `v` to entry `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, v: Rational) {
        assert!(
            row < self.nrows && col < self.cols.len(),
            "entry out of bounds"
        );
        if v.is_zero() {
            return;
        }
        let e = self.cols[col].entry(row).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.cols[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.cols[col].iter().map(|(r, v)| (*r, v))
    }

    /// Appends a column given as `(row, value)` pairs.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        self.cols.push(BTreeMap::new());
        let c = self.cols.len() - 1;
        for (r, v) in entries {
            self.add(r, c, v);
        }
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        let mut out: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out
    }

    pub fn rows(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut rows = vec![BTreeMap::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].insert(c, v.clone());
            }
        }
        rows
    }

    /// Exact rank by fraction-free elimination.
    ///
    /// Vectors along the shorter dimension are scaled to primitive integer
    /// vectors and inserted one at a time into an echelon basis; pivots are
    /// the first nonzero position.
    pub fn rank(&self) -> usize {
        let vectors: Vec<Vec<(usize, BigInt)>> = if self.nrows < self.ncols() {
            self.rows()
                .into_iter()
                .map(|r| primitive(r.into_iter().collect()))
                .collect()
        } else {
            self.cols
                .iter()
                .map(|c| primitive(c.iter().map(|(r, v)| (*r, v.clone())).collect()))
                .collect()
        };
        let mut echelon = Echelon::default();
        for v in vectors {
            echelon.insert_integer(v);
        }
        echelon.rank()
    }

    /// Reduced row echelon form: pivot rows (pivot entry 1) and their
    /// pivot columns.
    pub fn rref(&self) -> Rref {
        let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for mut row in self.rows() {
            // forward reduce against existing pivots
            loop {
                let lead = match row.keys().find(|c| pivots.contains_key(c)) {
                    Some(&c) => c,
                    None => break,
                };
                let factor = row[&lead].clone();
                axpy(&mut row, &pivots[&lead], &-factor);
            }
            let Some((&lead, lv)) = row.iter().next() else {
                continue;
            };
            let inv = lv.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            // clear the new pivot column from older pivot rows
            let keys: Vec<usize> = pivots.keys().copied().collect();
            for k in keys {
                let f = pivots[&k].get(&lead).cloned();
                if let Some(f) = f {
                    let p = pivots.get_mut(&k).expect("pivot row");
                    axpy(p, &row, &-f);
                }
            }
            pivots.insert(lead, row);
        }
        Rref {
            ncols: self.ncols(),
            pivots,
        }
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.nrows);
        let mut aug = self.clone();
        aug.push_column(b.iter().cloned().enumerate());
        let rref = aug.rref();
        let last = self.ncols();
        if rref.pivots.contains_key(&last) {
            return None;
        }
        let mut x = vec![Rational::zero(); last];
        for (p, row) in &rref.pivots {
            if let Some(v) = row.get(&last) {
                x[*p] = v.clone();
            }
        }
        Some(x)
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel()
    }

    /// `A x` for a dense vector `x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.ncols());
        let mut out = vec![Rational::zero(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                out[*r] += v * &x[c];
            }
        }
        out
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// One kernel vector per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (p, row) in &self.pivots {
                if let Some(x) = row.get(&free) {
                    v[*p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

fn axpy(row: &mut BTreeMap<usize, Rational>, other: &BTreeMap<usize, Rational>, f: &Rational) {
    for (c, v) in other {
        let e = row.entry(*c).or_insert_with(Rational::zero);
        *e += v * f;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

/// Clears denominators and removes the content of a sparse rational vector.
fn primitive(v: Vec<(usize, Rational)>) -> Vec<(usize, BigInt)> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints: Vec<(usize, BigInt)> = v
        .into_iter()
        .map(|(i, x)| (i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(ints)
}

fn make_primitive(v: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|(i, x)| (i, x / &g)).collect()
}

/// Incremental echelon basis kept as primitive integer vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a sparse vector given as sorted `(index, value)` pairs;
    /// returns whether the span grew.
    pub fn insert(&mut self, v: Vec<(usize, Rational)>) -> bool {
        self.insert_integer(primitive(v))
    }

    /// Dense variant of [`insert`](Self::insert).
    pub fn insert_dense(&mut self, v: &[Rational]) -> bool {
        self.insert(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        )
    }

    fn insert_integer(&mut self, mut v: Vec<(usize, BigInt)>) -> bool {
        while let Some((lead, a)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                None => {
                    // normalize sign so pivots are positive
                    if a.is_negative() {
                        for (_, x) in v.iter_mut() {
                            *x = -core::mem::take(x);
                        }
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
                Some(p) => {
                    let b = &p[0].1;
                    let g = a.gcd(b);
                    let (sa, sb) = (b / &g, &a / &g);
                    v = make_primitive(combine(&v, &sa, p, &sb));
                }
            }
        }
        false
    }
}

/// `sa * u - sb * w` on sorted sparse vectors.
fn combine(
    u: &[(usize, BigInt)],
    sa: &BigInt,
    w: &[(usize, BigInt)],
    sb: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(u.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < w.len() {
        let take_u = j == w.len() || (i < u.len() && u[i].0 < w[j].0);
        let take_w = i == u.len() || (j < w.len() && w[j].0 < u[i].0);
        let (idx, val) = if take_u {
            i += 1;
            (u[i - 1].0, sa * &u[i - 1].1)
        } else if take_w {
            j += 1;
            (w[j - 1].0, -(sb * &w[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (u[i - 1].0, sa * &u[i - 1].1 - sb * &w[j - 1].1)
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &a[col][c] * &f;
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{integer, rational};

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| integer(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::zero(3, 4).rank(), 0);
        assert_eq!(dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rank(), 3);
        assert_eq!(dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(dense(&[&[0, 0], &[0, 3], &[0, 5]]).rank(), 1);
    }

    #[test]
    fn rational_entries() {
        let mut m = SparseMatrix::zero(2, 2);
        m.add(0, 0, rational(1, 2));
        m.add(0, 1, rational(1, 3));
        m.add(1, 0, rational(3, 2));
        m.add(1, 1, integer(1));
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rref().rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_spans_null_space() {
        let m = dense(&[&[1, 1, 0, 2], &[0, 0, 1, -1], &[1, 1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_and_echelon() {
        let m = dense(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![integer(2), integer(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let m = dense(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[integer(1), integer(3)]).is_none());
        let mut e = Echelon::default();
        assert!(e.insert_dense(&[integer(1), integer(2)]));
        assert!(!e.insert_dense(&[rational(1, 2), integer(1)]));
        assert!(!e.insert_dense(&[integer(0), integer(0)]));
        assert!(e.insert_dense(&[integer(0), integer(1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn inverse() {
        let m = vec![vec![integer(2), integer(1)], vec![integer(1), integer(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(
            inv,
            vec![vec![integer(1), integer(-1)], vec![integer(-1), integer(2)]]
        );
        assert!(invert(&[vec![integer(1), integer(2)], vec![integer(2), integer(4)]]).is_none());
    }
}
