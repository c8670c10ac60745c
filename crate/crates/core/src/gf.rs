//! Elements and vectors of F_{p^e} written as coordinate vectors over F_p.
//!
//! Only the additive group of F_{p^e} is modelled: an element is its
//! coordinate vector on the power basis `1, w, w^2, ...`. The wire form of an
//! element is its digit string, least-significant basis coefficient first, so
//! `"21"` over F_9 is `w + 2`.
//!
//! Generator matrices are exchanged as plain text:
//!
//! ```text
//! # comment
//! p e n m
//! <n element strings>   (m lines)
//! ```

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fpmat::Prime;
use crate::FpMatrix;

/// The field F_{p^e}, viewed additively as F_p^e.
#[derive(Debug, Clone, Copy)]
pub struct FieldSpec {
    p: Prime,
    e: usize,
    symbol: char,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(p: u64, e: usize) -> Result<Self> {
        let p = Prime::new(p)?;
        if e == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        Ok(FieldSpec { p, e, symbol: 'w' })
    }

    pub fn with_symbol(mut self, symbol: char) -> Self {
        self.symbol = symbol;
        self
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn p(&self) -> u32 {
        self.p.get()
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn symbol(&self) -> char {
        self.symbol
    }

    /// Field size `p^e`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.p.get() as u64).checked_pow(self.e as u32)
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.p.get()).pow(self.e as u32)
    }

    /// Elements in canonical order (highest basis coefficient most significant).
    pub fn elements(&self) -> impl Iterator<Item = GFElement> + '_ {
        let q = self.order().expect("field too large to enumerate");
        (0..q).map(move |i| GFElement::from_index(*self, i))
    }

    pub fn zero(&self) -> GFElement {
        GFElement { spec: *self, coords: vec![0; self.e] }
    }

    /// The basis element `w^i`.
    pub fn basis(&self, i: usize) -> GFElement {
        let mut coords = vec![0; self.e];
        coords[i] = 1;
        GFElement { spec: *self, coords }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}

/// An element of F_{p^e}; `coords[i]` is the coefficient of `w^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GFElement {
    spec: FieldSpec,
    coords: Vec<u16>,
}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.e.hash(state);
    }
}

impl GFElement {
    pub fn new(spec: FieldSpec, coords: Vec<u16>) -> Result<Self> {
        if coords.len() != spec.e {
            return Err(Error::BadLength { expected: spec.e, found: coords.len() });
        }
        if let Some(&c) = coords.iter().find(|&&c| c as u32 >= spec.p()) {
            return Err(Error::BadDigit { digit: c.to_string(), p: spec.p() });
        }
        Ok(GFElement { spec, coords })
    }

    /// Element with the given position in canonical order.
    pub fn from_index(spec: FieldSpec, mut index: u64) -> Self {
        let p = spec.p() as u64;
        let coords = (0..spec.e)
            .map(|_| {
                let c = (index % p) as u16;
                index /= p;
                c
            })
            .collect();
        GFElement { spec, coords }
    }

    /// Position in canonical order.
    pub fn index(&self) -> u64 {
        let p = self.spec.p() as u64;
        self.coords.iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// Parses a digit string `d_0 d_1 ... d_{e-1}`.
    ///
    /// For `p <= 36` each digit is one character of `0-9a-z`; larger primes
    /// use decimal digits separated by `:`.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Self> {
        let p = spec.p();
        let digits: Vec<&str> = if p <= 36 {
            text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect()
        } else {
            text.split(':').collect()
        };
        if digits.len() != spec.e {
            return Err(Error::BadLength { expected: spec.e, found: digits.len() });
        }
        let coords = digits
            .iter()
            .map(|d| {
                let v = if p <= 36 { d.chars().next().and_then(|c| c.to_digit(36)) } else { d.parse::<u32>().ok() };
                match v {
                    Some(v) if v < p => Ok(v as u16),
                    _ => Err(Error::BadDigit { digit: d.to_string(), p }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GFElement { spec, coords })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coords(&self) -> &[u16] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let p = self.spec.prime();
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| p.add(a as u32, b as u32) as u16).collect();
        Ok(GFElement { spec: self.spec, coords })
    }

    /// Multiplication by a scalar of the prime field.
    pub fn scale(&self, c: u32) -> Self {
        let p = self.spec.prime();
        let c = c % p.get();
        let coords = self.coords.iter().map(|&a| p.mul(a as u32, c) as u16).collect();
        GFElement { spec: self.spec, coords }
    }

    /// True when `self` and `other` are linearly independent over F_p.
    pub fn independent_of(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        (1..self.spec.p()).all(|c| self.scale(c) != *other)
    }

    /// Human-readable form such as `2w+1`; display only.
    pub fn symbolic(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let term = match i {
                0 => coeff,
                1 => format!("{}{}", coeff, self.spec.symbol),
                _ => format!("{}{}^{}", coeff, self.spec.symbol, i),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.p() <= 36 {
            for &c in &self.coords {
                write!(f, "{}", char::from_digit(c as u32, 36).expect("digit below 36"))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(":"))
        }
    }
}

/// A vector in F_{p^e}^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GFVector {
    spec: FieldSpec,
    entries: Vec<GFElement>,
}

impl GFVector {
    pub fn new(spec: FieldSpec, entries: Vec<GFElement>) -> Result<Self> {
        if entries.iter().any(|x| x.spec != spec) {
            return Err(Error::MixedSpecs);
        }
        Ok(GFVector { spec, entries })
    }

    pub fn zero(spec: FieldSpec, n: usize) -> Self {
        GFVector { spec, entries: vec![spec.zero(); n] }
    }

    /// Parses whitespace-separated element strings.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Self> {
        let entries = text.split_whitespace().map(|t| GFElement::parse(t, spec)).collect::<Result<Vec<_>>>()?;
        Ok(GFVector { spec, entries })
    }

    /// Builds a vector from its flat F_p coordinates (`e` per position).
    pub fn from_flat(spec: FieldSpec, flat: &[u16]) -> Result<Self> {
        if !flat.len().is_multiple_of(spec.e) {
            return Err(Error::BadWidth { cols: flat.len(), e: spec.e });
        }
        let entries = flat.chunks(spec.e).map(|c| GFElement::new(spec, c.to_vec())).collect::<Result<Vec<_>>>()?;
        Ok(GFVector { spec, entries })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[GFElement] {
        &self.entries
    }

    /// Hamming weight: number of nonzero positions.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn flat(&self) -> Vec<u16> {
        self.entries.iter().flat_map(|x| x.coords.iter().copied()).collect()
    }

    pub fn symbolic(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(GFElement::symbolic).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for GFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

/// Flattens rows over F_{p^e} into an `m x (e*n)` matrix over F_p; entry `j`
/// of a row occupies columns `e*j .. e*j+e`.
pub fn expand(spec: FieldSpec, rows: &[GFVector]) -> Result<FpMatrix> {
    if rows.iter().any(|r| r.spec != spec) {
        return Err(Error::MixedSpecs);
    }
    let n = rows.first().map_or(0, GFVector::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::RaggedRows);
    }
    let data: Vec<u16> = rows.iter().flat_map(GFVector::flat).collect();
    Ok(FpMatrix::from_raw(spec.prime(), rows.len(), spec.e * n, data))
}

/// Inverse of [`expand`].
pub fn contract(m: &FpMatrix, spec: FieldSpec) -> Result<Vec<GFVector>> {
    if m.modulus() != spec.prime() {
        return Err(Error::ModulusMismatch(m.modulus().get(), spec.p()));
    }
    if !m.cols().is_multiple_of(spec.e) {
        return Err(Error::BadWidth { cols: m.cols(), e: spec.e });
    }
    m.iter_rows().map(|row| GFVector::from_flat(spec, row)).collect()
}

/// Contents of a generator-matrix file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFile {
    pub spec: FieldSpec,
    pub n: usize,
    pub rows: Vec<GFVector>,
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let nums = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse { line: hline, msg: e.to_string() })?;
        let [p, e, n, m] = nums[..] else {
            return Err(Error::Parse { line: hline, msg: "header must be `p e n m`".into() });
        };
        let spec = FieldSpec::new(p, e as usize)?;
        let (n, m) = (n as usize, m as usize);
        let mut rows = Vec::with_capacity(m);
        for (line, text) in lines {
            let row = GFVector::parse(text, spec).map_err(|err| Error::Parse { line, msg: err.to_string() })?;
            if row.len() != n {
                return Err(Error::Parse { line, msg: format!("expected {} entries, found {}", n, row.len()) });
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(Error::Parse { line: hline, msg: format!("header promises {} rows, found {}", m, rows.len()) });
        }
        Ok(GeneratorFile { spec, n, rows })
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} {} {} {}\n", self.spec.p(), self.spec.e(), self.n, self.rows.len());
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }
}
