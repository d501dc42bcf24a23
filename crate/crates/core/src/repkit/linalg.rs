//! Linear algebra over the two-element field.
//!
//! Small matrices (at most 64 columns) keep each row in a `u64`; bit `c` of
//! row `r` is the entry (r, c). Column vectors use the same bit layout.
//! Long vectors for the Hom/Ext systems are `Vec<u64>` words.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

fn mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "at most 64 columns");
        Mat { rows, cols, data: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m.data[k] = 1 << k;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(cols <= 64);
        assert!(data.iter().all(|r| r & !mask(cols) == 0), "row has bits beyond the column count");
        Mat { rows, cols, data }
    }

    /// Builds from 0/1 entries given row by row.
    pub fn from_entries(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] & 1 == 1 {
                    m.data[r] |= 1 << c;
                }
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.data[r] |= 1 << c;
        } else {
            self.data[r] &= !(1 << c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// self * other
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = 0u64;
            let mut bits = self.data[r];
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                acc ^= other.data[k];
                bits &= bits - 1;
            }
            out.data[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect() }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        for r in 0..self.rows {
            if (self.data[r] & v).count_ones() & 1 == 1 {
                out |= 1 << r;
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> u64 {
        let mut out = 0;
        for r in 0..self.rows {
            out |= (self.data[r] >> c & 1) << r;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        assert!(self.rows <= 64);
        let mut out = Mat::zero(self.cols, self.rows);
        for c in 0..self.cols {
            out.data[c] = self.column(c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        rref_words(&mut rows).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = Mat::identity(n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, piv);
            b.swap(col, piv);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    b[r] ^= b[col];
                }
            }
        }
        Some(Mat { rows: n, cols: n, data: b })
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// [self | other]
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        assert!(self.cols + other.cols <= 64);
        Mat {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a | b << self.cols).collect(),
        }
    }

    /// [[a, b], [0, d]] with a: r1 x c1, b: r1 x c2, d: r2 x c2.
    pub fn block_upper(a: &Mat, b: &Mat, d: &Mat) -> Mat {
        assert_eq!(a.rows, b.rows);
        assert_eq!(b.cols, d.cols);
        let top = a.hstack(b);
        let mut data = top.data;
        data.extend(d.data.iter().map(|r| r << a.cols));
        Mat { rows: a.rows + d.rows, cols: a.cols + d.cols, data }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        Mat::block_upper(self, &Mat::zero(self.rows, other.cols), other)
    }

    /// Row-major 0/1 string, rows separated by ';'.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect::<String>())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[{}]", self.rows, self.cols, self.to_text())
    }
}

/// Reduced row echelon form of single-word rows, pivot = lowest set bit.
/// Returns the pivot columns; `rows` is truncated to the nonzero rows,
/// sorted by pivot.
pub fn rref_words(rows: &mut Vec<u64>) -> Vec<usize> {
    let mut out: Vec<u64> = Vec::with_capacity(rows.len());
    for &v in rows.iter() {
        let mut v = v;
        for &b in &out {
            let p = b.trailing_zeros();
            if v >> p & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = v.trailing_zeros();
            for b in out.iter_mut() {
                if *b >> p & 1 == 1 {
                    *b ^= v;
                }
            }
            out.push(v);
        }
    }
    out.sort_by_key(|b| b.trailing_zeros());
    *rows = out;
    rows.iter().map(|b| b.trailing_zeros() as usize).collect()
}

/// Basis of { x : XOR of cols[c] over the bits c of x is zero }.
pub fn column_kernel(cols: &[u64]) -> Vec<u64> {
    // eliminate while tracking which original columns were combined
    let mut basis: Vec<(u64, u64)> = Vec::new();
    let mut kernel = Vec::new();
    for (c, &v) in cols.iter().enumerate() {
        let mut v = v;
        let mut comb = 1u64 << c;
        for &(b, bc) in &basis {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
                comb ^= bc;
            }
        }
        if v == 0 {
            kernel.push(comb);
        } else {
            let p = v.trailing_zeros();
            for e in basis.iter_mut() {
                if e.0 >> p & 1 == 1 {
                    e.0 ^= v;
                    e.1 ^= comb;
                }
            }
            basis.push((v, comb));
        }
    }
    kernel
}

/// A vector of arbitrary length over F2.
pub type BitVec = Vec<u64>;

pub fn bv_zero(width: usize) -> BitVec {
    vec![0; width.div_ceil(64).max(1)]
}

pub fn bv_get(v: &BitVec, k: usize) -> bool {
    v[k / 64] >> (k % 64) & 1 == 1
}

pub fn bv_flip(v: &mut BitVec, k: usize) {
    v[k / 64] ^= 1 << (k % 64);
}

pub fn bv_xor(v: &mut BitVec, w: &BitVec) {
    for (a, b) in v.iter_mut().zip(w) {
        *a ^= b;
    }
}

pub fn bv_lowest(v: &BitVec) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Incrementally built span; each stored vector has a distinct pivot and
/// is zero at the pivots of the vectors stored before it.
#[derive(Clone, Debug, Default)]
pub struct Span {
    basis: Vec<(usize, BitVec)>,
}

impl Span {
    pub fn new() -> Self {
        Span { basis: Vec::new() }
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, b) in &self.basis {
            if bv_get(&v, *p) {
                bv_xor(&mut v, b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        bv_lowest(&self.reduce(v)).is_none()
    }

    /// Adds v; returns false when v was already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match bv_lowest(&r) {
            None => false,
            Some(p) => {
                self.basis.push((p, r));
                true
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of the solution space of the homogeneous system whose equations
/// are the rows (each a bit vector over `nvars` unknowns).
pub fn nullspace(equations: &[BitVec], nvars: usize) -> Vec<BitVec> {
    let mut rows: Vec<BitVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for eq in equations {
        let mut v = eq.clone();
        for (k, p) in pivots.iter().enumerate() {
            if bv_get(&v, *p) {
                bv_xor(&mut v, &rows[k]);
            }
        }
        if let Some(p) = bv_lowest(&v) {
            for r in rows.iter_mut() {
                if bv_get(r, p) {
                    bv_xor(r, &v);
                }
            }
            rows.push(v);
            pivots.push(p);
        }
    }
    let mut is_pivot = vec![false; nvars];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..nvars).filter(|&f| !is_pivot[f]) {
        let mut x = bv_zero(nvars);
        bv_flip(&mut x, f);
        for (k, &p) in pivots.iter().enumerate() {
            if bv_get(&rows[k], f) {
                bv_flip(&mut x, p);
            }
        }
        out.push(x);
    }
    out
}

/// Subspace of F2^ambient in reduced echelon form (pivot = lowest set bit,
/// rows sorted by pivot). Equal subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub rows: Vec<u64>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(|k| 1u64 << k).collect() }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut rows: Vec<u64> = vectors.into_iter().collect();
        rref_words(&mut rows);
        Subspace { ambient, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.trailing_zeros() as usize).collect()
    }

    pub fn reduce(&self, v: u64) -> u64 {
        let mut v = v;
        for &b in &self.rows {
            if v >> b.trailing_zeros() & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|&r| other.contains(r))
    }

    /// Coordinates of v (assumed inside) with respect to `rows`.
    pub fn coords(&self, v: u64) -> u64 {
        let mut out = 0;
        for (k, &b) in self.rows.iter().enumerate() {
            if v >> b.trailing_zeros() & 1 == 1 {
                out |= 1 << k;
            }
        }
        out
    }

    /// Non-pivot coordinates, which index a basis of the quotient.
    pub fn complement_coords(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.ambient).filter(|c| !piv.contains(c)).collect()
    }

    /// Coordinates of the class of v in ambient / self.
    pub fn quotient_coords(&self, v: u64) -> u64 {
        let r = self.reduce(v);
        let mut out = 0;
        for (k, c) in self.complement_coords().into_iter().enumerate() {
            if r >> c & 1 == 1 {
                out |= 1 << k;
            }
        }
        out
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).copied())
    }

    /// Preimage under `m` (a map from F2^m.cols).
    pub fn preimage(&self, m: &Mat) -> Subspace {
        let cols: Vec<u64> = (0..m.cols).map(|c| self.reduce(m.column(c))).collect();
        Subspace::span(m.cols, column_kernel(&cols))
    }

    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(m.rows, self.rows.iter().map(|&r| m.apply(r)))
    }
}

/// Calls `f` on every subspace of F2^d, each exactly once.
pub fn for_each_subspace(d: usize, f: &mut dyn FnMut(&Subspace)) {
    for k in 0..=d {
        for_each_subspace_of_dim(d, k, f);
    }
}

/// Calls `f` on every k-dimensional subspace of F2^d.
pub fn for_each_subspace_of_dim(d: usize, k: usize, f: &mut dyn FnMut(&Subspace)) {
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(d, k, 0, &mut pivots, f);
}

fn choose_pivots(d: usize, k: usize, start: usize, pivots: &mut Vec<usize>, f: &mut dyn FnMut(&Subspace)) {
    if pivots.len() == k {
        // free entries of row r: non-pivot columns greater than its pivot
        let free: Vec<Vec<usize>> = pivots
            .iter()
            .map(|&p| (p + 1..d).filter(|c| !pivots.contains(c)).collect::<Vec<usize>>())
            .collect();
        let total: usize = free.iter().map(|v| v.len()).sum();
        assert!(total < 63, "subspace enumeration too large");
        for bits in 0..1u64 << total {
            let mut rows = Vec::with_capacity(k);
            let mut used = 0;
            for (r, &p) in pivots.iter().enumerate() {
                let mut row = 1u64 << p;
                for (t, &c) in free[r].iter().enumerate() {
                    if bits >> (used + t) & 1 == 1 {
                        row |= 1 << c;
                    }
                }
                used += free[r].len();
                rows.push(row);
            }
            f(&Subspace { ambient: d, rows });
        }
        return;
    }
    for p in start..d {
        if d - p < k - pivots.len() {
            break;
        }
        pivots.push(p);
        choose_pivots(d, k, p + 1, pivots, f);
        pivots.pop();
    }
}

/// Calls `f` on every subspace S with lower ⊆ S ⊆ upper.
pub fn for_each_subspace_between(lower: &Subspace, upper: &Subspace, f: &mut dyn FnMut(&Subspace)) {
    debug_assert!(lower.is_subspace_of(upper));
    // complement of lower inside upper
    let mut comp = Vec::new();
    let mut acc = lower.clone();
    for &r in &upper.rows {
        if !acc.contains(r) {
            comp.push(r);
            acc = acc.join(&Subspace { ambient: upper.ambient, rows: vec![r] });
        }
    }
    let k = comp.len();
    for_each_subspace(k, &mut |t: &Subspace| {
        let extra = t.rows.iter().map(|&coef| {
            let mut v = 0u64;
            for (b, &c) in comp.iter().enumerate() {
                if coef >> b & 1 == 1 {
                    v ^= c;
                }
            }
            v
        });
        let s = Subspace::span(lower.ambient, lower.rows.iter().copied().chain(extra));
        f(&s);
    });
}

/// Number of subspaces of F2^d (sum of Gaussian binomials).
pub fn subspace_count(d: usize) -> u64 {
    (0..=d).map(|k| gaussian_binomial(d, k)).sum()
}

pub fn gaussian_binomial(d: usize, k: usize) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (d - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}
