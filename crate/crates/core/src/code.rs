//! Additive codes: F_p-linear subspaces of F_{p^e}^n.
//!
//! A code is stored as its canonical generator matrix over F_p (reduced
//! row-echelon form, no zero rows), so equality of codes is equality of
//! matrices.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fpmat::Prime;
use crate::gf::{expand, FieldSpec, GFVector, GeneratorFile};
use crate::FpMatrix;

/// Default cap on `p^k` for codeword enumeration.
pub const DEFAULT_CODEWORD_BOUND: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCode {
    spec: FieldSpec,
    n: usize,
    gen: FpMatrix,
}

impl AdditiveCode {
    /// The F_p-span of `rows`. Rows may be dependent.
    pub fn new(spec: FieldSpec, n: usize, rows: &[GFVector]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::RaggedRows);
        }
        let m = if rows.is_empty() { FpMatrix::zeros(spec.prime(), 0, spec.e() * n) } else { expand(spec, rows)? };
        Ok(Self::from_matrix_unchecked(spec, n, &m))
    }

    /// The row space of an F_p matrix with `e * n` columns.
    pub fn from_matrix(spec: FieldSpec, n: usize, m: &FpMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        if m.modulus() != spec.prime() {
            return Err(Error::ModulusMismatch(m.modulus().get(), spec.p()));
        }
        if m.cols() != spec.e() * n {
            return Err(Error::BadWidth { cols: m.cols(), e: spec.e() });
        }
        Ok(Self::from_matrix_unchecked(spec, n, m))
    }

    pub(crate) fn from_matrix_unchecked(spec: FieldSpec, n: usize, m: &FpMatrix) -> Self {
        AdditiveCode { spec, n, gen: m.row_space_basis() }
    }

    /// A uniformly random code of rank exactly `k` (rejection-sampled).
    pub fn random<G: Rng + ?Sized>(spec: FieldSpec, n: usize, k: usize, rng: &mut G) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        let width = spec.e() * n;
        if k > width {
            return Err(Error::InvalidParameter(format!("rank {k} exceeds e*n = {width}")));
        }
        let p = spec.p() as u16;
        loop {
            let data: Vec<u16> = (0..k * width).map(|_| rng.gen_range(0..p)).collect();
            let m = FpMatrix::from_raw(spec.prime(), k, width, data);
            let code = Self::from_matrix_unchecked(spec, n, &m);
            if code.k() == k {
                return Ok(code);
            }
        }
    }

    pub fn from_generator_file(file: &GeneratorFile) -> Result<Self> {
        Self::new(file.spec, file.n, &file.rows)
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Result<Self> {
        Self::new(spec, n, &[])
    }

    /// The whole space F_{p^e}^n.
    pub fn full(spec: FieldSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        Ok(AdditiveCode { spec, n, gen: FpMatrix::identity(spec.prime(), spec.e() * n) })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// F_p-dimension; the code has `p^k` words.
    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical generator matrix over F_p.
    pub fn generator(&self) -> &FpMatrix {
        &self.gen
    }

    pub fn generator_rows(&self) -> Vec<GFVector> {
        self.gen.iter_rows().map(|r| GFVector::from_flat(self.spec, r).expect("width is a multiple of e")).collect()
    }

    pub fn to_generator_file(&self) -> GeneratorFile {
        GeneratorFile { spec: self.spec, n: self.n, rows: self.generator_rows() }
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.spec.p()).pow(self.k() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.k() == 0
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec || self.n != other.n {
            return Err(Error::ShapeMismatch);
        }
        Ok(())
    }

    fn enumeration_guard(&self, bound: u64) -> Result<()> {
        let size = self.cardinality();
        if size > BigUint::from(bound) {
            return Err(Error::TooLarge { what: "code", size, bound });
        }
        Ok(())
    }

    /// All `p^k` codewords, each exactly once, in modular Gray-code order.
    pub fn codewords(&self, bound: u64) -> Result<impl Iterator<Item = GFVector> + '_> {
        self.enumeration_guard(bound)?;
        let spec = self.spec;
        Ok(GrayWalk::new(self.spec.prime(), &self.gen)
            .map(move |w| GFVector::from_flat(spec, &w).expect("width is a multiple of e")))
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self, bound: u64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        self.enumeration_guard(bound)?;
        let d =
            min_weight(self.spec.prime(), self.spec.e(), self.k(), self.gen.data(), 0).expect("no abort floor was set");
        Ok(d)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let stacked = self.gen.vstack(&other.gen)?;
        Ok(Self::from_matrix_unchecked(self.spec, self.n, &stacked))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        // x lies in both codes iff it is Euclidean-orthogonal to both
        // parity-check spaces.
        let checks = self.gen.nullspace().vstack(&other.gen.nullspace())?;
        let width = self.spec.e() * self.n;
        let checks = if checks.rows() == 0 { FpMatrix::zeros(self.spec.prime(), 0, width) } else { checks };
        Ok(AdditiveCode { spec: self.spec, n: self.n, gen: checks.nullspace() })
    }

    /// Direct product `A x B` of length `n_a + n_b`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let (wa, wb) = (self.gen.cols(), other.gen.cols());
        let mut data = Vec::with_capacity((self.k() + other.k()) * (wa + wb));
        for r in self.gen.iter_rows() {
            data.extend_from_slice(r);
            data.extend(std::iter::repeat_n(0, wb));
        }
        for r in other.gen.iter_rows() {
            data.extend(std::iter::repeat_n(0, wa));
            data.extend_from_slice(r);
        }
        let m = FpMatrix::from_raw(self.spec.prime(), self.k() + other.k(), wa + wb, data);
        Ok(Self::from_matrix_unchecked(self.spec, self.n + other.n, &m))
    }

    pub fn contains(&self, v: &GFVector) -> Result<bool> {
        if v.spec() != self.spec || v.len() != self.n {
            return Err(Error::ShapeMismatch);
        }
        if self.is_zero() {
            return Ok(v.weight() == 0);
        }
        let row = FpMatrix::from_raw(self.spec.prime(), 1, self.gen.cols(), v.flat());
        Ok(self.gen.vstack(&row)?.rank() == self.k())
    }

    /// `self` is a subspace of `other`.
    pub fn is_subcode_of(&self, other: &Self) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.sum(other)?.k() == other.k())
    }

    /// Upper bound `n - ceil(k/e) + 1` on the minimum distance.
    pub fn singleton_bound(&self) -> usize {
        singleton_bound(self.n, self.k(), self.spec.e())
    }
}

impl fmt::Display for AdditiveCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_generator_file().render())
    }
}

pub fn singleton_bound(n: usize, k: usize, e: usize) -> usize {
    (n + 1).saturating_sub(k.div_ceil(e))
}

/// Walks the span of the rows of `gen`, one added row per step.
///
/// With base-p counter digits `c`, the Gray digits `g_i = c_i - c_{i+1}`
/// change in exactly one place per increment, by +1: the position of the
/// lowest digit that does not wrap.
pub(crate) struct GrayWalk {
    p: Prime,
    rows: Vec<u16>,
    width: usize,
    digits: Vec<u32>,
    current: Vec<u16>,
    remaining: u64,
    started: bool,
}

impl GrayWalk {
    pub(crate) fn new(p: Prime, gen: &FpMatrix) -> Self {
        let total = (p.get() as u64).pow(gen.rows() as u32);
        GrayWalk {
            p,
            rows: gen.data().to_vec(),
            width: gen.cols(),
            digits: vec![0; gen.rows()],
            current: vec![0; gen.cols()],
            remaining: total,
            started: false,
        }
    }
}

impl Iterator for GrayWalk {
    type Item = Vec<u16>;

    fn next(&mut self) -> Option<Vec<u16>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if self.started {
            let top = self.p.get() - 1;
            let mut j = 0;
            while self.digits[j] == top {
                self.digits[j] = 0;
                j += 1;
            }
            self.digits[j] += 1;
            let row = &self.rows[j * self.width..(j + 1) * self.width];
            for (c, &r) in self.current.iter_mut().zip(row) {
                *c = self.p.add(*c as u32, r as u32) as u16;
            }
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Minimum weight over the nonzero words spanned by `k` rows of flat
/// coordinates (`e` per position).
///
/// Returns `None` as soon as some nonzero word has weight below `floor`; with
/// `floor <= 1` the exact minimum is always returned. Rows must be independent
/// for the walk to avoid the zero word; dependent rows only cause a zero word
/// to be skipped.
pub(crate) fn min_weight(p: Prime, e: usize, k: usize, rows: &[u16], floor: usize) -> Option<usize> {
    if k == 0 {
        return Some(usize::MAX);
    }
    let width = rows.len() / k;
    if p.get() == 2 && width <= 128 {
        return min_weight_binary(e, k, width, rows, floor);
    }
    let top = p.get() - 1;
    let mut digits = vec![0u32; k];
    let mut current = vec![0u16; width];
    let total = (p.get() as u64).pow(k as u32);
    let mut best = usize::MAX;
    for _ in 1..total {
        let mut j = 0;
        while digits[j] == top {
            digits[j] = 0;
            j += 1;
        }
        digits[j] += 1;
        let row = &rows[j * width..(j + 1) * width];
        for (c, &r) in current.iter_mut().zip(row) {
            *c = p.add(*c as u32, r as u32) as u16;
        }
        let w = current.chunks(e).filter(|blk| blk.iter().any(|&x| x != 0)).count();
        if w == 0 {
            continue;
        }
        if w < best {
            best = w;
            if w < floor {
                return None;
            }
            if w == 1 {
                break;
            }
        }
    }
    Some(best)
}

/// Bit-packed specialisation for `p = 2`: XOR of 128-bit words.
fn min_weight_binary(e: usize, k: usize, width: usize, rows: &[u16], floor: usize) -> Option<usize> {
    let packed: Vec<u128> = rows
        .chunks(width)
        .map(|r| r.iter().enumerate().fold(0u128, |acc, (i, &b)| acc | ((b as u128 & 1) << i)))
        .collect();
    let n = width / e;
    let lead: u128 = (0..n).fold(0, |acc, j| acc | (1u128 << (j * e)));
    let weight = |v: u128| -> usize {
        let mut any = v;
        for s in 1..e {
            any |= v >> s;
        }
        (any & lead).count_ones() as usize
    };
    let mut current = 0u128;
    let mut best = usize::MAX;
    let total: u64 = 1u64 << k;
    for step in 1..total {
        current ^= packed[step.trailing_zeros() as usize];
        let w = weight(current);
        if w == 0 {
            continue;
        }
        if w < best {
            best = w;
            if w < floor {
                return None;
            }
            if w == 1 {
                break;
            }
        }
    }
    Some(best)
}
