//! Dualities of the additive group of F_{p^e}.
//!
//! Every character of F_p^e has the form `y -> xi^(a.y)`, so a duality is an
//! invertible `e x e` matrix `K` over F_p with `chi_x(y) = xi^(x^T K y)`.
//! Characters are handled through their exponents in Z_p; no complex numbers
//! appear anywhere.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmat::{general_linear_order, Prime};
use crate::gf::{FieldSpec, GFElement, GFVector};
use crate::FpMatrix;

pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;
pub const DEFAULT_TABLE_BOUND: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DualityClass {
    /// `K = K^T`, excluding the zero-diagonal case when `p = 2`.
    Symmetric,
    /// Every element is self-orthogonal: `K^T = -K` with zero diagonal.
    SkewSymmetric,
    OtherNonSymmetric,
}

impl fmt::Display for DualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityClass::Symmetric => "symmetric",
            DualityClass::SkewSymmetric => "skew-symmetric",
            DualityClass::OtherNonSymmetric => "non-symmetric",
        })
    }
}

/// Selects dualities during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    All,
    Class(DualityClass),
    /// Every `K` with `K = K^T`. Differs from `Class(Symmetric)` only for
    /// `p = 2`, where it also takes in the zero-diagonal matrices.
    SymmetricMatrix,
}

impl ClassFilter {
    fn accepts(self, d: &Duality) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Class(c) => d.class == c,
            ClassFilter::SymmetricMatrix => d.k == d.k.transpose(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Duality {
    spec: FieldSpec,
    k: FpMatrix,
    class: DualityClass,
    name: Option<&'static str>,
}

impl PartialEq for Duality {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.k == other.k
    }
}

impl Eq for Duality {}

fn classify(k: &FpMatrix) -> DualityClass {
    let kt = k.transpose();
    let zero_diag = (0..k.rows()).all(|i| k.get(i, i) == 0);
    if zero_diag && kt == k.neg() {
        DualityClass::SkewSymmetric
    } else if kt == *k {
        DualityClass::Symmetric
    } else {
        DualityClass::OtherNonSymmetric
    }
}

impl Duality {
    pub fn new(k: FpMatrix, spec: FieldSpec) -> Result<Self> {
        if k.modulus() != spec.prime() {
            return Err(Error::ModulusMismatch(k.modulus().get(), spec.p()));
        }
        if k.rows() != spec.e() || k.cols() != spec.e() {
            return Err(Error::DimensionMismatch(format!(
                "duality matrix must be {0}x{0}, got {1}x{2}",
                spec.e(),
                k.rows(),
                k.cols()
            )));
        }
        if !k.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let class = classify(&k);
        Ok(Duality { spec, k, class, name: None })
    }

    /// The dualities printed in the literature this crate reproduces.
    ///
    /// `M1`, `M2` are the skew-symmetric dualities of F_9; `D1`, `D2` the
    /// non-symmetric dualities of F_4; `A4` the unique F_4 duality in which
    /// every element is self-orthogonal.
    pub fn named(name: &str) -> Result<Self> {
        let (p, rows, symbol, name): (u64, [[i64; 2]; 2], char, &'static str) = match name {
            "M1" => (3, [[0, 1], [2, 0]], 'w', "M1"),
            "M2" => (3, [[0, 2], [1, 0]], 'w', "M2"),
            "D1" => (2, [[1, 1], [0, 1]], 'v', "D1"),
            "D2" => (2, [[1, 0], [1, 1]], 'v', "D2"),
            "A4" => (2, [[0, 1], [1, 0]], 'v', "A4"),
            other => return Err(Error::UnknownName(other.to_string())),
        };
        let spec = FieldSpec::new(p, 2)?.with_symbol(symbol);
        let k = FpMatrix::from_rows(spec.prime(), &rows)?;
        let mut d = Duality::new(k, spec)?;
        d.name = Some(name);
        Ok(d)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.k
    }

    pub fn class(&self) -> DualityClass {
        self.class
    }

    pub fn name(&self) -> Option<&'static str> {
        self.name
    }

    /// True for the skew-symmetric class, where `chi_x(x) = 1` for all `x`.
    pub fn is_class_a(&self) -> bool {
        self.class == DualityClass::SkewSymmetric
    }

    /// Short identifier: the name when there is one, otherwise the matrix.
    pub fn label(&self) -> String {
        match self.name {
            Some(n) => n.to_string(),
            None => format!("K={}", self.k),
        }
    }

    /// `x^T K y` on raw coordinates.
    #[inline]
    pub(crate) fn exponent_coords(&self, x: &[u16], y: &[u16]) -> u32 {
        let p = self.spec.prime();
        let e = self.spec.e();
        let mut acc = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = self.k.row(i);
            let dot: u64 = (0..e).map(|j| row[j] as u64 * y[j] as u64).sum();
            acc += xi as u64 * (dot % p.get() as u64);
        }
        (acc % p.get() as u64) as u32
    }

    /// Exponent of `xi` in `chi_x(y)`.
    pub fn char_exponent(&self, x: &GFElement, y: &GFElement) -> Result<u32> {
        if x.spec() != self.spec || y.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.exponent_coords(x.coords(), y.coords()))
    }

    /// Exponent of `chi_a(b) = prod_i chi_{a_i}(b_i)`.
    pub fn vector_exponent(&self, a: &GFVector, b: &GFVector) -> Result<u32> {
        if a.spec() != self.spec || b.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        Ok(self.flat_exponent(&a.flat(), &b.flat()))
    }

    pub(crate) fn flat_exponent(&self, a: &[u16], b: &[u16]) -> u32 {
        let e = self.spec.e();
        let p = self.spec.prime();
        a.chunks(e).zip(b.chunks(e)).fold(0, |acc, (x, y)| p.add(acc, self.exponent_coords(x, y)))
    }

    /// The duality with matrix `K^T`, so that `chi'_x(y) = chi_y(x)`.
    pub fn transpose(&self) -> Self {
        let k = self.k.transpose();
        let name = match self.name {
            Some("D1") => Some("D2"),
            Some("D2") => Some("D1"),
            Some("M1") => Some("M2"),
            Some("M2") => Some("M1"),
            Some("A4") => Some("A4"),
            _ => None,
        };
        Duality { spec: self.spec, class: classify(&k), k, name }
    }

    pub fn character_table(&self, bound: u64) -> Result<CharacterTable> {
        let q = self.spec.order().filter(|&q| q <= bound).ok_or_else(|| Error::TooLarge {
            what: "character table",
            size: self.spec.order_big(),
            bound,
        })?;
        let elems: Vec<GFElement> = self.spec.elements().collect();
        let mut exponents = Vec::with_capacity((q * q) as usize);
        for x in &elems {
            for y in &elems {
                exponents.push(self.exponent_coords(x.coords(), y.coords()) as u16);
            }
        }
        Ok(CharacterTable { spec: self.spec, exponents })
    }
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} ({})", self.label(), self.spec, self.class)
    }
}

impl Duality {
    /// Reads `p e` followed by `e` rows of `K`. Lines starting with `#` are
    /// skipped.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_nums = |line: usize, l: &str| -> Result<Vec<i64>> {
            l.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse { line, msg: format!("'{t}' is not an integer") }))
                .collect()
        };
        let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing 'p e' header".into() })?;
        let header = parse_nums(line, header)?;
        let [p, e] = header[..] else {
            return Err(Error::Parse { line, msg: "header must be 'p e'".into() });
        };
        if p < 2 || e < 1 {
            return Err(Error::Parse { line, msg: format!("invalid header p={p} e={e}") });
        }
        let spec = FieldSpec::new(p as u64, e as usize)?;
        let mut rows = Vec::with_capacity(e as usize);
        let mut last = line;
        for _ in 0..e {
            let (line, l) =
                lines.next().ok_or(Error::Parse { line: last, msg: format!("expected {e} matrix rows") })?;
            last = line;
            let row = parse_nums(line, l)?;
            if row.len() != e as usize {
                return Err(Error::Parse { line, msg: format!("expected {e} entries, found {}", row.len()) });
            }
            if let Some(&v) = row.iter().find(|&&v| v < 0 || v >= p) {
                return Err(Error::BadEntry { value: v as u64, p: p as u32 });
            }
            rows.push(row);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content".into() });
        }
        Duality::new(FpMatrix::from_rows(spec.prime(), &rows)?, spec)
    }

    pub fn render_file(&self) -> String {
        let mut out = format!("{} {}\n", self.spec.p(), self.spec.e());
        for row in self.k.iter_rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Every duality over `spec` passing `filter`, each once, in lexicographic
/// order of the row-major entries of `K`.
pub fn enumerate_dualities(spec: FieldSpec, filter: ClassFilter, bound: u64) -> Result<impl Iterator<Item = Duality>> {
    let e = spec.e();
    let p = spec.prime();
    let gl = general_linear_order(e, p);
    if gl > BigUint::from(bound) {
        return Err(Error::TooLarge { what: "GL(e, p)", size: gl, bound });
    }
    let total = (p.get() as u64).pow((e * e) as u32);
    Ok((0..total).filter_map(move |mut idx| {
        let mut data = vec![0u16; e * e];
        for slot in data.iter_mut().rev() {
            *slot = (idx % p.get() as u64) as u16;
            idx /= p.get() as u64;
        }
        let k = FpMatrix::from_raw(p, e, e, data);
        Duality::new(k, spec).ok().filter(|d| filter.accepts(d))
    }))
}

fn product_odd_powers_minus_one(p: u32, k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * (BigUint::from(p).pow((2 * i - 1) as u32) - 1u32))
}

/// Number of symmetric invertible `e x e` matrices over F_p, i.e. of
/// dualities with `chi_x(y) = chi_y(x)`.
pub fn count_symmetric(p: Prime, e: usize) -> BigUint {
    assert!(e >= 1);
    let k = e.div_ceil(2);
    let exp = if e % 2 == 1 { k * (k - 1) } else { k * (k + 1) };
    BigUint::from(p.get()).pow(exp as u32) * product_odd_powers_minus_one(p.get(), k)
}

/// Number of dualities of F_{p^two_e} in which every element is
/// self-orthogonal.
pub fn count_skew(p: Prime, two_e: usize) -> Result<BigUint> {
    if two_e == 0 || two_e % 2 == 1 {
        return Err(Error::OddDimension(two_e));
    }
    let e = two_e / 2;
    Ok(BigUint::from(p.get()).pow((e * (e - 1)) as u32) * product_odd_powers_minus_one(p.get(), e))
}

/// Full table of character exponents, rows `x`, columns `y`, both in canonical
/// element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    spec: FieldSpec,
    exponents: Vec<u16>,
}

/// A reason a table fails to be the character table of a duality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableDiagnostic {
    /// The cell differs from the bilinear extension of the basis entries.
    CellMismatch { x: GFElement, y: GFElement, found: u16, expected: u16 },
    /// The table is bilinear but the induced matrix is singular.
    NotInvertible,
}

impl fmt::Display for TableDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDiagnostic::CellMismatch { x, y, found, expected } => write!(
                f,
                "cell ({}, {}): exponent {} but additivity forces {}",
                x.symbolic(),
                y.symbolic(),
                found,
                expected
            ),
            TableDiagnostic::NotInvertible => write!(f, "induced matrix is not invertible"),
        }
    }
}

impl CharacterTable {
    pub fn new(spec: FieldSpec, exponents: Vec<u16>) -> Result<Self> {
        let q = spec.order().ok_or(Error::InvalidParameter("field too large".into()))? as usize;
        if exponents.len() != q * q {
            return Err(Error::DimensionMismatch(format!("table needs {} cells, got {}", q * q, exponents.len())));
        }
        if let Some(&v) = exponents.iter().find(|&&v| v as u32 >= spec.p()) {
            return Err(Error::BadEntry { value: v as u64, p: spec.p() });
        }
        Ok(CharacterTable { spec, exponents })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn size(&self) -> usize {
        self.spec.order().unwrap() as usize
    }

    pub fn get(&self, x: usize, y: usize) -> u16 {
        self.exponents[x * self.size() + y]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    fn render_cell(&self, v: u16) -> String {
        match (v, self.spec.p()) {
            (0, _) => "1".into(),
            (1, 2) => "-1".into(),
            (1, _) => "a".into(),
            (v, _) => format!("a{}", v),
        }
    }

    /// Text form: a header line of element labels, then one line per row.
    pub fn render(&self) -> String {
        let labels: Vec<String> = self.spec.elements().map(|x| x.to_string()).collect();
        let width = labels.iter().map(String::len).max().unwrap_or(1).max(2);
        let mut out = format!("{:<width$}", "*", width = width);
        for l in &labels {
            out.push_str(&format!(" {:>width$}", l, width = width));
        }
        out.push('\n');
        for (x, label) in labels.iter().enumerate() {
            out.push_str(&format!("{:<width$}", label, width = width));
            for y in 0..labels.len() {
                out.push_str(&format!(" {:>width$}", self.render_cell(self.get(x, y)), width = width));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form produced by [`render`](Self::render). Cells are
    /// `1`, `a`, `aK` or `-1`; the header line and row labels are checked
    /// against canonical element order.
    pub fn parse(text: &str, spec: FieldSpec) -> Result<Self> {
        let labels: Vec<String> = spec.elements().map(|x| x.to_string()).collect();
        let q = labels.len();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty table".into() })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != q + 1 || head[1..].iter().zip(&labels).any(|(a, b)| a != b) {
            return Err(Error::Parse { line: hline, msg: "header must list elements in canonical order".into() });
        }
        let mut exponents = Vec::with_capacity(q * q);
        let mut count = 0;
        for (line, text) in lines {
            let cells: Vec<&str> = text.split_whitespace().collect();
            if cells.len() != q + 1 || count >= q || cells[0] != labels[count] {
                return Err(Error::Parse { line, msg: "malformed table row".into() });
            }
            for c in &cells[1..] {
                let v = match *c {
                    "1" => 0,
                    "-1" => 1,
                    "a" => 1,
                    s if s.starts_with('a') => {
                        s[1..].parse::<u32>().map_err(|_| Error::Parse { line, msg: format!("bad cell '{}'", s) })?
                    }
                    s => return Err(Error::Parse { line, msg: format!("bad cell '{}'", s) }),
                };
                exponents.push((v % spec.p()) as u16);
            }
            count += 1;
        }
        if count != q {
            return Err(Error::Parse { line: hline, msg: format!("expected {} rows, found {}", q, count) });
        }
        CharacterTable::new(spec, exponents)
    }

    /// Recovers the duality behind a table, or lists every cell that breaks
    /// bi-additivity.
    ///
    /// A bi-additive table is determined by its basis-pair entries, so the
    /// table is valid exactly when it agrees everywhere with the bilinear form
    /// fitted to those entries and the fitted matrix is invertible.
    pub fn validate(&self) -> std::result::Result<Duality, Vec<TableDiagnostic>> {
        let spec = self.spec;
        let e = spec.e();
        let p = spec.p() as u64;
        let basis_index = |i: usize| p.pow(i as u32) as usize;
        let data: Vec<u16> = (0..e)
            .flat_map(|i| (0..e).map(move |j| (i, j)))
            .map(|(i, j)| self.get(basis_index(i), basis_index(j)))
            .collect();
        let k = FpMatrix::from_raw(spec.prime(), e, e, data);
        let fitted = Duality { spec, class: classify(&k), k: k.clone(), name: None };
        let elems: Vec<GFElement> = spec.elements().collect();
        let mut diags = Vec::new();
        for (xi, x) in elems.iter().enumerate() {
            for (yi, y) in elems.iter().enumerate() {
                let expected = fitted.exponent_coords(x.coords(), y.coords()) as u16;
                let found = self.get(xi, yi);
                if found != expected {
                    diags.push(TableDiagnostic::CellMismatch { x: x.clone(), y: y.clone(), found, expected });
                }
            }
        }
        if diags.is_empty() && !k.is_invertible() {
            diags.push(TableDiagnostic::NotInvertible);
        }
        if diags.is_empty() {
            Ok(fitted)
        } else {
            Err(diags)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 2).unwrap()
    }

    fn el(s: &str, spec: FieldSpec) -> GFElement {
        GFElement::parse(s, spec).unwrap()
    }

    #[test]
    fn new_duality_classifies() {
        assert_eq!(Duality::named("M1").unwrap().class(), DualityClass::SkewSymmetric);
        assert_eq!(Duality::named("M2").unwrap().class(), DualityClass::SkewSymmetric);
        assert_eq!(Duality::named("D1").unwrap().class(), DualityClass::OtherNonSymmetric);
        assert_eq!(Duality::named("A4").unwrap().class(), DualityClass::SkewSymmetric);
        let spec = f9();
        let zero = FpMatrix::zeros(spec.prime(), 2, 2);
        assert_eq!(Duality::new(zero, spec), Err(Error::NotInvertible));
        let id = FpMatrix::identity(spec.prime(), 2);
        assert_eq!(Duality::new(id, spec).unwrap().class(), DualityClass::Symmetric);
        assert_eq!(Duality::named("M3"), Err(Error::UnknownName("M3".into())));
    }

    #[test]
    fn char_exponent_examples() {
        let m1 = Duality::named("M1").unwrap();
        let s = m1.spec();
        assert_eq!(m1.char_exponent(&el("10", s), &el("01", s)).unwrap(), 1);
        assert_eq!(m1.char_exponent(&el("01", s), &el("10", s)).unwrap(), 2);
        for y in s.elements() {
            assert_eq!(m1.char_exponent(&s.zero(), &y).unwrap(), 0);
        }
        let d1 = Duality::named("D1").unwrap();
        let t = d1.spec();
        assert_eq!(d1.char_exponent(&el("01", t), &el("10", t)).unwrap(), 0);
        assert_eq!(m1.char_exponent(&el("01", t), &el("10", s)), Err(Error::SpecMismatch));
    }

    #[test]
    fn vector_exponent_examples() {
        let m1 = Duality::named("M1").unwrap();
        let s = m1.spec();
        let a = GFVector::parse("10 01", s).unwrap();
        let b = GFVector::parse("11 00", s).unwrap();
        assert_eq!(m1.vector_exponent(&a, &b).unwrap(), 1);
        assert_eq!(m1.vector_exponent(&a, &a).unwrap(), 0);
        assert_eq!(m1.vector_exponent(&GFVector::zero(s, 2), &b).unwrap(), 0);
        let short = GFVector::parse("10", s).unwrap();
        assert_eq!(m1.vector_exponent(&a, &short), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn transpose_examples() {
        let d1 = Duality::named("D1").unwrap();
        let d2 = Duality::named("D2").unwrap();
        assert_eq!(d1.transpose(), d2);
        assert_eq!(d1.transpose().name(), Some("D2"));
        assert_eq!(d1.transpose().transpose(), d1);
        let sym = Duality::new(FpMatrix::identity(f9().prime(), 2), f9()).unwrap();
        assert_eq!(sym.transpose(), sym);
        for x in d1.spec().elements() {
            for y in d1.spec().elements() {
                assert_eq!(d2.char_exponent(&x, &y).unwrap(), d1.char_exponent(&y, &x).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_counts_for_f9() {
        let spec = f9();
        let count = |f| enumerate_dualities(spec, f, DEFAULT_ENUMERATION_BOUND).unwrap().count();
        assert_eq!(count(ClassFilter::All), 48);
        assert_eq!(count(ClassFilter::Class(DualityClass::Symmetric)), 18);
        assert_eq!(count(ClassFilter::Class(DualityClass::OtherNonSymmetric)), 28);
        let skew: Vec<Duality> =
            enumerate_dualities(spec, ClassFilter::Class(DualityClass::SkewSymmetric), DEFAULT_ENUMERATION_BOUND)
                .unwrap()
                .collect();
        // lexicographic order puts [[0,1],[2,0]] first
        assert_eq!(skew, vec![Duality::named("M1").unwrap(), Duality::named("M2").unwrap()]);
    }

    #[test]
    fn enumeration_f4_other_class_is_d1_d2() {
        let spec = FieldSpec::new(2, 2).unwrap();
        let others: Vec<Duality> =
            enumerate_dualities(spec, ClassFilter::Class(DualityClass::OtherNonSymmetric), DEFAULT_ENUMERATION_BOUND)
                .unwrap()
                .collect();
        assert_eq!(others.len(), 2);
        assert!(others.contains(&Duality::named("D1").unwrap()));
        assert!(others.contains(&Duality::named("D2").unwrap()));
    }

    #[test]
    fn enumeration_respects_bound() {
        let spec = FieldSpec::new(3, 3).unwrap();
        assert!(matches!(enumerate_dualities(spec, ClassFilter::All, 1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn counting_formulas() {
        let p3 = Prime::new(3).unwrap();
        let p2 = Prime::new(2).unwrap();
        assert_eq!(count_symmetric(p3, 2), BigUint::from(18u32));
        assert_eq!(count_symmetric(p2, 2), BigUint::from(4u32));
        assert_eq!(count_symmetric(p3, 1), BigUint::from(2u32));
        assert_eq!(count_skew(p3, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_skew(p2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_skew(p3, 3), Err(Error::OddDimension(3)));
    }

    #[test]
    fn symmetric_count_by_brute_force_over_f2() {
        // all 8 symmetric 2x2 matrices over F_2, counted without the formula
        let p2 = Prime::new(2).unwrap();
        let mut invertible = 0;
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    if (a * d + b * b) % 2 == 1 {
                        invertible += 1;
                    }
                }
            }
        }
        assert_eq!(BigUint::from(invertible as u32), count_symmetric(p2, 2));
    }

    #[test]
    fn table_round_trip_and_trivial_character() {
        let m1 = Duality::named("M1").unwrap();
        let t = m1.character_table(DEFAULT_TABLE_BOUND).unwrap();
        for i in 0..9 {
            assert_eq!(t.get(0, i), 0);
            assert_eq!(t.get(i, 0), 0);
        }
        let parsed = CharacterTable::parse(&t.render(), m1.spec()).unwrap();
        assert_eq!(parsed, t);
        assert_eq!(parsed.validate().unwrap(), m1);
        let big = Duality::new(FpMatrix::identity(Prime::new(5).unwrap(), 6), FieldSpec::new(5, 6).unwrap()).unwrap();
        assert!(matches!(big.character_table(DEFAULT_TABLE_BOUND), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn all_zero_table_is_not_invertible() {
        let t = CharacterTable::new(f9(), vec![0; 81]).unwrap();
        assert_eq!(t.validate(), Err(vec![TableDiagnostic::NotInvertible]));
    }

    #[test]
    fn d1_table_renders_signs() {
        let t = Duality::named("D1").unwrap().character_table(DEFAULT_TABLE_BOUND).unwrap();
        let text = t.render();
        assert_eq!(text.lines().count(), 5);
        assert_eq!(text.lines().nth(2).unwrap().split_whitespace().collect::<Vec<_>>(), ["10", "1", "-1", "-1", "1"]);
    }

    #[test]
    fn duality_file_round_trip() {
        for name in ["M1", "M2", "D1", "D2", "A4"] {
            let d = Duality::named(name).unwrap();
            assert_eq!(Duality::parse_file(&d.render_file()).unwrap(), d);
        }
        assert_eq!(Duality::parse_file("# skew\n3 2\n0 1\n2 0\n").unwrap(), Duality::named("M1").unwrap());
        assert_eq!(Duality::parse_file("2 2\n0 0\n0 0\n"), Err(Error::NotInvertible));
        assert!(matches!(Duality::parse_file("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(Duality::parse_file("3 2\n0 5\n2 0\n"), Err(Error::BadEntry { .. })));
    }
}
