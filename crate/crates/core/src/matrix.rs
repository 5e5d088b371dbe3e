//! Sparse matrices over exact rings, tensor-product plumbing and exact linear algebra.
//!
//! Rows are stored as column-sorted lists of nonzero entries. Tensor factors are
//! flattened row-major: the first factor is the most significant digit, which
//! is the convention [`SparseMatrix::kron`] produces.

use std::fmt::Debug;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Poly, SpectralPoly};
use crate::scalar::GaussianRational as GR;

/// Minimal ring interface shared by matrix entry types.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, k: &GR) -> Self;

    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.times(b);
        *self = self.plus(&p);
    }
}

impl Ring for GR {
    fn zero() -> Self {
        GR::zero()
    }
    fn one() -> Self {
        GR::one()
    }
    fn is_zero(&self) -> bool {
        GR::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, k: &GR) -> Self {
        self * k
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        GR::add_product(self, a, b)
    }
}

impl Ring for SpectralPoly {
    fn zero() -> Self {
        SpectralPoly::zero()
    }
    fn one() -> Self {
        SpectralPoly::one()
    }
    fn is_zero(&self) -> bool {
        SpectralPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, k: &GR) -> Self {
        self.scale(k)
    }
}

/// Sparse matrix with explicit dimensions; no stored entry is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

/// Matrix with constant entries.
pub type ConstMatrix = SparseMatrix<GR>;
/// Matrix with polynomial entries in the spectral parameters.
pub type SparsePolyMatrix = SparseMatrix<SpectralPoly>;

/// Splits a flat index into tensor digits (first factor most significant).
pub fn split_index(mut k: usize, dims: &[usize], out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = k % d;
        k /= d;
    }
}

/// Inverse of [`split_index`].
pub fn join_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

fn merge_rows<T: Ring>(a: &[(usize, T)], b: &[(usize, T)], k: &T) -> Vec<(usize, T)> {
    // a + k·b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = b[j].1.times(k);
            if !v.is_zero() {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_product(&b[j].1, k);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    /// `c·I`
    pub fn scalar(n: usize, c: T) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, it: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (i, j, v) in it {
            assert!(i < rows && j < cols, "index ({i},{j}) out of range {rows}x{cols}");
            data[i].push((j, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv = lv.plus(&v),
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Self { rows, cols, data }
    }

    pub fn from_dense(m: Vec<Vec<T>>) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows,
            cols,
            m.into_iter()
                .enumerate()
                .flat_map(|(i, r)| r.into_iter().enumerate().map(move |(j, v)| (i, j, v))),
        )
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

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Nonzero entries in `(row, col)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.iter().all(|(i, j, _)| i == j)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U + Sync) -> SparseMatrix<U> {
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|(j, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*j, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    fn check_same(&self, o: &Self) {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let one = T::one();
        let data = self.data.iter().zip(&o.data).map(|(a, b)| merge_rows(a, b, &one)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o);
        let m1 = T::one().negated();
        let data = self.data.iter().zip(&o.data).map(|(a, b)| merge_rows(a, b, &m1)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.map(T::negated)
    }

    pub fn scale(&self, k: &GR) -> Self {
        self.map(|v| v.scaled(k))
    }

    /// Multiplies every entry by a ring element.
    pub fn scale_by(&self, k: &T) -> Self {
        self.map(|v| v.times(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let n = o.cols;
        let work = |acc: &mut (Vec<Option<T>>, Vec<usize>), row: &Vec<(usize, T)>| -> Vec<(usize, T)> {
            let (slots, touched) = acc;
            for (k, a) in row {
                for (j, b) in &o.data[*k] {
                    match &mut slots[*j] {
                        Some(s) => s.add_product(a, b),
                        slot @ None => {
                            *slot = Some(a.times(b));
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let out = touched
                .iter()
                .filter_map(|&j| slots[j].take().filter(|v| !v.is_zero()).map(|v| (j, v)))
                .collect();
            touched.clear();
            out
        };
        let cost: usize = self.nnz();
        let data: Vec<Vec<(usize, T)>> = if cost > 4096 {
            self.data
                .par_iter()
                .map_init(|| (vec![None; n], Vec::new()), work)
                .collect()
        } else {
            let mut acc = (vec![None; n], Vec::new());
            self.data.iter().map(|r| work(&mut acc, r)).collect()
        };
        Self { rows: self.rows, cols: n, data }
    }

    /// `AB − BA`
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.iter() {
            data[j].push((i, v.clone()));
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// Kronecker product: entry `(i₁·r_b + i₂, j₁·c_b + j₂)` is `a[i₁,j₁]·b[i₂,j₂]`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * o.rows);
        for ra in &self.data {
            for rb in &o.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        let v = a.times(b);
                        if !v.is_zero() {
                            row.push((ja * o.cols + jb, v));
                        }
                    }
                }
                data.push(row);
            }
        }
        Self { rows: self.rows * o.rows, cols: self.cols * o.cols, data }
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.plus(&self.get(i, i));
        }
        t
    }

    /// Traces out factor `which` (1 or 2) of a `d₁·d₂` square matrix.
    pub fn partial_trace(&self, d1: usize, d2: usize, which: usize) -> Result<Self> {
        if !self.is_square() || self.rows != d1 * d2 || !(which == 1 || which == 2) {
            return Err(Error::DimensionMismatch(format!(
                "partial trace of {}x{} over factor {which} of ({d1},{d2})",
                self.rows, self.cols
            )));
        }
        let keep = if which == 1 { d2 } else { d1 };
        let mut trips = Vec::new();
        for (i, j, v) in self.iter() {
            let (i1, i2, j1, j2) = (i / d2, i % d2, j / d2, j % d2);
            if which == 1 && i1 == j1 {
                trips.push((i2, j2, v.clone()));
            } else if which == 2 && i2 == j2 {
                trips.push((i1, j1, v.clone()));
            }
        }
        Ok(Self::from_triplets(keep, keep, trips))
    }

    /// Embeds `op` (acting on the tensor product of `legs`, in that order) into the
    /// full space `dims`, acting as identity on the remaining legs.
    pub fn embed(&self, dims: &[usize], legs: &[usize]) -> Self {
        let sub: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
        let sub_n: usize = sub.iter().product();
        assert!(self.rows == sub_n && self.cols == sub_n, "operator does not match legs");
        let n: usize = dims.iter().product();
        let build = |r: usize| {
            let mut dig = vec![0; dims.len()];
            let mut sdig = vec![0; legs.len()];
            split_index(r, dims, &mut dig);
            for (s, &l) in sdig.iter_mut().zip(legs) {
                *s = dig[l];
            }
            let sr = join_index(&sdig, &sub);
            let mut row: Vec<(usize, T)> = self.data[sr]
                .iter()
                .map(|(sc, v)| {
                    split_index(*sc, &sub, &mut sdig);
                    for (s, &l) in sdig.iter().zip(legs) {
                        dig[l] = *s;
                    }
                    (join_index(&dig, dims), v.clone())
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        };
        let data = (0..n).into_par_iter().map(build).collect();
        Self { rows: n, cols: n, data }
    }

    /// Reorders tensor factors: factor `k` of the result is factor `perm[k]` of `self`.
    pub fn permute_factors(&self, dims: &[usize], perm: &[usize]) -> Self {
        let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let n: usize = dims.iter().product();
        assert!(self.rows == n && self.cols == n);
        // old flat index -> new flat index
        let mut map = vec![0; n];
        let mut dig = vec![0; dims.len()];
        let mut nd = vec![0; dims.len()];
        for (k, slot) in map.iter_mut().enumerate() {
            split_index(k, dims, &mut dig);
            for (t, &p) in nd.iter_mut().zip(perm) {
                *t = dig[p];
            }
            *slot = join_index(&nd, &new_dims);
        }
        Self::from_triplets(n, n, self.iter().map(|(i, j, v)| (map[i], map[j], v.clone())))
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut cpos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            cpos[c] = k;
        }
        let trips = rows.iter().enumerate().flat_map(|(ri, &r)| {
            let cpos = &cpos;
            self.data[r]
                .iter()
                .filter(move |(c, _)| cpos[*c] != usize::MAX)
                .map(move |(c, v)| (ri, cpos[*c], v.clone()))
        });
        Self::from_triplets(rows.len(), cols.len(), trips.collect::<Vec<_>>())
    }

    /// Applies to a dense column vector.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.data
            .iter()
            .map(|r| {
                let mut acc = T::zero();
                for (j, v) in r {
                    acc.add_product(v, &x[*j]);
                }
                acc
            })
            .collect()
    }

    /// Rows and columns that carry at least one nonzero entry.
    pub fn support(&self) -> (Vec<usize>, Vec<usize>) {
        let rows = (0..self.rows).filter(|&i| !self.data[i].is_empty()).collect();
        let mut seen = vec![false; self.cols];
        for (_, j, _) in self.iter() {
            seen[j] = true;
        }
        (rows, (0..self.cols).filter(|&j| seen[j]).collect())
    }
}

impl ConstMatrix {
    /// Lifts to a constant polynomial matrix.
    pub fn to_poly(&self) -> SparsePolyMatrix {
        self.map(|v| SpectralPoly::constant(v.clone()))
    }

    /// `p(u)·M`
    pub fn times_poly(&self, p: &Poly) -> SparsePolyMatrix {
        self.map(|v| SpectralPoly::U(p.scale(v)))
    }

    /// Reduced row echelon form as `(pivot column, normalized row)` pairs.
    pub fn rref(&self) -> Vec<(usize, Vec<(usize, GR)>)> {
        rref_rows(self.data.iter().cloned(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().len()
    }

    /// Exact basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<GR>> {
        nullspace_from_rref(&self.rref(), self.cols)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.data.iter().enumerate().map(|(i, r)| {
            let mut r = r.clone();
            r.push((n + i, GR::one()));
            r
        });
        let red = rref_rows(aug, 2 * n);
        if red.len() < n || red.iter().any(|(c, _)| *c >= n) || red[n - 1].0 != n - 1 {
            return Err(Error::Singular);
        }
        let mut data = vec![Vec::new(); n];
        for (c, row) in red.into_iter().take(n) {
            data[c] = row.into_iter().filter(|e| e.0 >= n).map(|(j, v)| (j - n, v)).collect();
        }
        Ok(Self { rows: n, cols: n, data })
    }
}

impl SparsePolyMatrix {
    /// Substitutes values for the spectral parameters.
    pub fn eval(&self, u: &GR, v: Option<&GR>) -> Result<ConstMatrix> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let mut row = Vec::with_capacity(r.len());
            for (j, p) in r {
                let x = p.eval(u, v)?;
                if !x.is_zero() {
                    row.push((*j, x));
                }
            }
            data.push(row);
        }
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Constant matrix, if every entry has degree ≤ 0.
    pub fn to_const(&self) -> Result<ConstMatrix> {
        if self.iter().any(|(_, _, p)| !p.is_constant()) {
            return Err(Error::NonConstant);
        }
        Ok(self.map(|p| p.as_constant().unwrap()))
    }

    /// Kernel of a constant-entry polynomial matrix.
    pub fn nullspace(&self) -> Result<Vec<Vec<GR>>> {
        Ok(self.to_const()?.nullspace())
    }

    pub fn degree_u(&self) -> Option<usize> {
        self.iter().filter_map(|(_, _, p)| p.degree_u()).max()
    }

    pub fn degree_v(&self) -> Option<usize> {
        self.iter().filter_map(|(_, _, p)| p.degree_v()).max()
    }

    /// Substitutes `u ↦ α·u + γ₀` in every (univariate) entry.
    pub fn compose_affine(&self, alpha: &GR, gamma0: &GR) -> Self {
        self.map(|p| match p {
            SpectralPoly::U(q) => SpectralPoly::U(q.compose_affine(alpha, gamma0)),
            SpectralPoly::UV(_) => panic!("affine reparametrization of a bivariate entry"),
        })
    }
}

fn rref_rows(rows: impl Iterator<Item = Vec<(usize, GR)>>, ncols: usize) -> Vec<(usize, Vec<(usize, GR)>)> {
    let mut pivot_at: Vec<Option<usize>> = vec![None; ncols];
    let mut pivots: Vec<(usize, Vec<(usize, GR)>)> = Vec::new();
    for mut r in rows {
        while let Some((c, lead)) = r.first().cloned() {
            match pivot_at[c] {
                Some(p) => r = merge_rows(&r, &pivots[p].1, &-lead),
                None => {
                    let inv = lead.inv().unwrap();
                    let r: Vec<(usize, GR)> = r.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
                    pivot_at[c] = Some(pivots.len());
                    pivots.push((c, r));
                    break;
                }
            }
        }
    }
    pivots.sort_by_key(|p| p.0);
    let mut pos = vec![usize::MAX; ncols];
    for (k, (c, _)) in pivots.iter().enumerate() {
        pos[*c] = k;
    }
    for k in (0..pivots.len()).rev() {
        let mut row = std::mem::take(&mut pivots[k].1);
        let mut idx = 1;
        while idx < row.len() {
            let (c, v) = row[idx].clone();
            if pos[c] != usize::MAX {
                row = merge_rows(&row, &pivots[pos[c]].1, &-v);
                // entries before idx are untouched; the entry at idx is now gone
            } else {
                idx += 1;
            }
        }
        pivots[k].1 = row;
    }
    pivots
}

fn nullspace_from_rref(red: &[(usize, Vec<(usize, GR)>)], ncols: usize) -> Vec<Vec<GR>> {
    let mut is_pivot = vec![false; ncols];
    for (c, _) in red {
        is_pivot[*c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![GR::zero(); ncols];
            x[f] = GR::one();
            for (c, row) in red {
                if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                    x[*c] = -&row[k].1;
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ConstMatrix {
        ConstMatrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| GR::from_int(x)).collect()).collect())
    }

    #[test]
    fn kron_examples() {
        let i2 = ConstMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ConstMatrix::identity(4));
        let d = m(&[&[1, 0], &[0, -1]]);
        assert_eq!(d.kron(&i2), m(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]));
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = ConstMatrix::from_triplets(4, 4, (0..16).map(|k| (k / 4, k % 4, GR::from_int(k as i64 + 1))));
        let ab = a.kron(&b);
        assert_eq!((ab.rows(), ab.cols()), (8, 8));
        assert_eq!(ab.get(2, 4 + 3), &a.get(0, 1) * &b.get(2, 3));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(m(&[&[1, 1], &[1, 1]]).nullspace(), vec![vec![GR::from_int(-1), GR::one()]]);
        assert!(ConstMatrix::identity(3).nullspace().is_empty());
        assert_eq!(ConstMatrix::zeros(1, 1).nullspace(), vec![vec![GR::one()]]);
        let u = SparsePolyMatrix::scalar(2, SpectralPoly::u());
        assert_eq!(u.nullspace(), Err(Error::NonConstant));
    }

    #[test]
    fn partial_trace_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[5, 6, 0], &[0, 7, 1], &[2, 0, 9]]);
        assert_eq!(a.kron(&b).partial_trace(2, 3, 2).unwrap(), a.scale(&b.trace()));
        assert_eq!(a.kron(&b).partial_trace(2, 3, 1).unwrap(), b.scale(&a.trace()));
        assert_eq!(
            ConstMatrix::identity(6).partial_trace(2, 3, 1).unwrap(),
            ConstMatrix::identity(3).scale(&GR::from_int(2))
        );
        assert!(a.partial_trace(3, 3, 1).is_err());
    }

    #[test]
    fn eval_examples() {
        let ui = SparsePolyMatrix::scalar(3, SpectralPoly::u());
        assert_eq!(ui.eval(&GR::from_int(3), None).unwrap(), ConstMatrix::scalar(3, GR::from_int(3)));
        let uv = SparsePolyMatrix::scalar(2, SpectralPoly::u().add(&SpectralPoly::v()));
        assert_eq!(
            uv.eval(&GR::from_int(1), Some(&GR::from_int(2))).unwrap(),
            ConstMatrix::scalar(2, GR::from_int(3))
        );
        assert_eq!(uv.eval(&GR::one(), None), Err(Error::MissingVariable("v")));
    }

    #[test]
    fn embed_and_permute() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        let ab = a.kron(&b);
        let dims = [2, 4, 3];
        let lhs = ab.embed(&dims, &[0, 2]);
        let rhs = a.kron(&ConstMatrix::identity(4)).kron(&b).permute_factors(&[2, 4, 3], &[0, 1, 2]);
        let expect = a.kron(&ConstMatrix::identity(4)).kron(&ConstMatrix::identity(3))
            .mul(&ConstMatrix::identity(2).kron(&ConstMatrix::identity(4)).kron(&b));
        assert_eq!(lhs, expect);
        assert_eq!(rhs, expect);
        let ba = ab.embed(&[3, 2], &[1, 0]);
        assert_eq!(ba, b.kron(&a));
        assert_eq!(ab.permute_factors(&[2, 3], &[1, 0]), b.kron(&a));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ConstMatrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    fn arb(n: usize) -> impl Strategy<Value = ConstMatrix> {
        prop::collection::vec((-3i64..4, 0u8..3), n * n).prop_map(move |v| {
            ConstMatrix::from_triplets(
                n,
                n,
                v.into_iter().enumerate().map(|(k, (x, keep))| {
                    (k / n, k % n, if keep == 0 { GR::zero() } else { GR::from_int(x) })
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn mixed_product(a in arb(2), b in arb(3), c in arb(2), d in arb(3)) {
            prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
        }

        #[test]
        fn kron_bilinear(a in arb(2), b in arb(2), c in arb(3)) {
            prop_assert_eq!(a.add(&b).kron(&c), a.kron(&c).add(&b.kron(&c)));
        }

        #[test]
        fn partial_trace_keeps_trace(a in arb(6)) {
            prop_assert_eq!(a.partial_trace(2, 3, 1).unwrap().trace(), a.trace());
            prop_assert_eq!(a.partial_trace(3, 2, 2).unwrap().trace(), a.trace());
        }

        #[test]
        fn rank_nullity(a in arb(5)) {
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.len(), 5);
            for x in ns {
                prop_assert!(a.apply(&x).iter().all(GR::is_zero));
            }
        }

        #[test]
        fn eval_commutes_with_kron(a in arb(2), b in arb(2), x in -4i64..5) {
            let pa = a.times_poly(&Poly::linear(GR::one(), GR::from_int(2)));
            let pb = b.times_poly(&Poly::x());
            let x = GR::from_int(x);
            prop_assert_eq!(
                pa.kron(&pb).eval(&x, None).unwrap(),
                pa.eval(&x, None).unwrap().kron(&pb.eval(&x, None).unwrap())
            );
        }
    }
}
