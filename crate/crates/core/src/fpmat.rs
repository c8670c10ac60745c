//! Exact dense linear algebra over a prime field F_p.
//!
//! [`Matrix`] is generic over the unsigned integer type used to store
//! residues. Every other module works with the [`FpMatrix`](crate::FpMatrix)
//! alias; narrower storage is available for callers that know `p` is small.
//! Reduced row-echelon form is the single canonical form: two matrices span
//! the same row space exactly when their reduced forms are equal.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, PrimInt, Unsigned};

use crate::error::{Error, Result};

/// Largest supported modulus. Residues must fit in `u16`.
pub const MAX_PRIME: u32 = 65_535;

/// Unsigned storage type for residues modulo `p`.
pub trait Residue: PrimInt + Unsigned + Hash + Default + fmt::Debug + Send + Sync + 'static {
    /// Largest modulus whose residues fit in this type.
    const MAX_MODULUS: u32;

    fn widen(self) -> u64;

    /// Truncating conversion; callers only pass values below the modulus.
    fn narrow(value: u64) -> Self;
}

macro_rules! impl_residue {
    ($($t:ty),*) => {
        $(
            impl Residue for $t {
                const MAX_MODULUS: u32 = {
                    let max = <$t>::MAX as u64 + 1;
                    if max > MAX_PRIME as u64 { MAX_PRIME } else { max as u32 }
                };

                #[inline(always)]
                fn widen(self) -> u64 {
                    self as u64
                }

                #[inline(always)]
                fn narrow(value: u64) -> Self {
                    value as $t
                }
            }
        )*
    };
}

impl_residue!(u8, u16, u32);

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline(always)]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline(always)]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline(always)]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline(always)]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, base: u32, mut exp: u32) -> u32 {
        let m = self.0 as u64;
        let mut acc = 1u64 % m;
        let mut b = base as u64 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u32
    }

    /// Reduces an arbitrary signed integer into `0..p`.
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.0 as i64) as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Residue> {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<R: Residue> {
    pub reduced: Matrix<R>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<R: Residue> Matrix<R> {
    /// Builds a matrix from row-major entries, checking that every entry is a
    /// residue modulo `p` and that the shape matches.
    pub fn new(p: Prime, rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if p.get() > R::MAX_MODULUS {
            return Err(Error::NotPrime(p.get() as u64));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        if let Some(bad) = data.iter().find(|v| v.widen() >= p.get() as u64) {
            return Err(Error::BadEntry { value: bad.widen(), p: p.get() });
        }
        Ok(Matrix { p, rows, cols, data })
    }

    /// Convenience constructor from nested rows of integers, each reduced mod `p`.
    pub fn from_rows<T: AsRef<[i64]>>(p: Prime, rows: &[T]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::RaggedRows);
            }
            data.extend(row.iter().map(|&v| R::narrow(p.reduce(v) as u64)));
        }
        Matrix::new(p, rows.len(), cols, data)
    }

    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub(crate) fn from_raw(p: Prime, rows: usize, cols: usize, data: Vec<R>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { p, rows, cols, data }
    }

    pub fn modulus(&self) -> Prime {
        self.p
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

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!(value.widen() < self.p.get() as u64, "entry out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[R]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Entry-wise negation.
    pub fn neg(&self) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&v| R::narrow(p.neg(v.widen() as u32) as u64)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.get() as u64;
        let mut acc = vec![0u64; other.cols];
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (l, a) in self.row(i).iter().enumerate() {
                let a = a.widen();
                if a == 0 {
                    continue;
                }
                for (dst, b) in acc.iter_mut().zip(other.row(l)) {
                    *dst = (*dst + a * b.widen()) % p;
                }
            }
            data.extend(acc.iter().map(|&v| R::narrow(v)));
        }
        Ok(Matrix { p: self.p, rows: self.rows, cols: other.cols, data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::DimensionMismatch(format!("cannot stack width {} on width {}", other.cols, self.cols)));
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { p: self.p, rows: self.rows + other.rows, cols, data })
    }

    /// Keeps the first `n` rows.
    pub fn truncate_rows(mut self, n: usize) -> Self {
        let n = n.min(self.rows);
        self.data.truncate(n * self.cols);
        self.rows = n;
        self
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<R> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<u32> = self.data.iter().map(|v| v.widen() as u32).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(src) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if src != r {
                for j in 0..cols {
                    m.swap(src * cols + j, r * cols + j);
                }
            }
            let inv = p.inv(m[r * cols + c]);
            for j in c..cols {
                m[r * cols + j] = p.mul(m[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = m[i * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = p.mul(f, m[r * cols + j]);
                    m[i * cols + j] = p.sub(m[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let reduced = Matrix { p, rows, cols, data: m.into_iter().map(|v| R::narrow(v as u64)).collect() };
        Rref { reduced, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// RREF with the zero rows dropped: the canonical basis of the row space.
    pub fn row_space_basis(&self) -> Self {
        let Rref { reduced, rank, .. } = self.rref();
        reduced.truncate_rows(rank)
    }

    /// Basis of `{v : self * v = 0}`, returned as the rows of a matrix in RREF.
    pub fn nullspace(&self) -> Self {
        let Rref { reduced, rank, pivots } = self.rref();
        let p = self.p;
        let cols = self.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity((cols - rank) * cols);
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![R::zero(); cols];
            v[free] = R::one();
            for (i, &pc) in pivots.iter().enumerate() {
                let a = reduced.get(i, free).widen() as u32;
                v[pc] = R::narrow(p.neg(a) as u64);
            }
            basis.extend(v);
        }
        Matrix { p, rows: cols - rank, cols, data: basis }.row_space_basis()
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = R::one();
        }
        let Rref { reduced, pivots, .. } = aug.rref();
        // [A | I] always has rank n; A is invertible iff every pivot lands in A.
        if n > 0 && pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(self.p, n, n);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&reduced.row(i)[n..]);
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Converts to another residue storage type.
    pub fn convert<S: Residue>(&self) -> Result<Matrix<S>> {
        Matrix::new(self.p, self.rows, self.cols, self.data.iter().map(|v| S::narrow(v.widen())).collect())
    }
}

impl<R: Residue> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(p={}, {}x{}) {}", self.p, self.rows, self.cols, self)
    }
}

impl<R: Residue> fmt::Display for Matrix<R> {
    /// Rows of residues, e.g. `[[0,1],[2,0]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v.widen())?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn pow_big(p: u32, exp: usize) -> BigUint {
    BigUint::from(p).pow(exp as u32)
}

/// Number of `k`-dimensional subspaces of F_p^n, computed exactly.
pub fn gaussian_binomial(n: usize, k: usize, p: Prime) -> BigUint {
    assert!(k <= n, "gaussian_binomial requires k <= n");
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow_big(p.get(), n - i) - &one;
        den *= pow_big(p.get(), i + 1) - &one;
    }
    num / den
}

/// Order of GL(e, p).
pub fn general_linear_order(e: usize, p: Prime) -> BigUint {
    let q = pow_big(p.get(), e);
    (0..e).fold(BigUint::one(), |acc, i| acc * (&q - pow_big(p.get(), i)))
}
