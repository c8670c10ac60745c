//! Explicit ACD constructions. Each returns the code together with the
//! parameters it is claimed to have, so callers can measure and compare.

use serde::Serialize;

use crate::code::{AdditiveCode, DEFAULT_CODEWORD_BOUND};
use crate::duality::{Duality, DualityClass};
use crate::error::{Error, Result};
use crate::gf::{GFElement, GFVector};
use crate::ortho::{all_self_orthogonal_elements, check_acd, dual, gram_of_rows};
use crate::FpMatrix;

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub code: AdditiveCode,
    /// Rows exactly as built, before canonicalisation.
    pub template: Vec<GFVector>,
    /// `None` when the construction makes no distance claim.
    pub claimed_distance: Option<usize>,
    pub claimed_acd: bool,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub rank: usize,
    pub acd: bool,
    pub intersection_dim: usize,
    pub distance: Option<usize>,
    pub claimed_distance: Option<usize>,
    pub claimed_acd: bool,
}

impl Verification {
    /// ACD status as claimed and distance at least the claim.
    pub fn passed(&self) -> bool {
        self.acd == self.claimed_acd
            && match (self.claimed_distance, self.distance) {
                (Some(c), Some(m)) => m >= c,
                (Some(_), None) => false,
                (None, _) => true,
            }
    }

    pub fn exact(&self) -> bool {
        self.passed() && (self.claimed_distance.is_none() || self.claimed_distance == self.distance)
    }
}

impl ConstructionReport {
    fn new(
        d: &Duality,
        n: usize,
        template: Vec<GFVector>,
        claimed_distance: Option<usize>,
        source: &'static str,
    ) -> Result<Self> {
        let code = AdditiveCode::new(d.spec(), n, &template)?;
        Ok(ConstructionReport { code, template, claimed_distance, claimed_acd: true, source })
    }

    fn from_code(code: AdditiveCode, claimed_distance: Option<usize>, source: &'static str) -> Self {
        let template = code.generator_rows();
        ConstructionReport { code, template, claimed_distance, claimed_acd: true, source }
    }

    /// `0 < k < e*n`: neither the zero code nor the whole space.
    pub fn is_nontrivial(&self) -> bool {
        let c = &self.code;
        c.k() > 0 && c.k() < c.spec().e() * c.n()
    }

    pub fn template_gram(&self, d: &Duality) -> Result<FpMatrix> {
        gram_of_rows(&self.template, d)
    }

    /// Measures rank, ACD status (both criteria) and minimum distance.
    pub fn verify(&self, d: &Duality) -> Result<Verification> {
        let v = check_acd(&self.code, d, true)?;
        let distance = if self.code.is_zero() { None } else { Some(self.code.min_distance(DEFAULT_CODEWORD_BOUND)?) };
        Ok(Verification {
            rank: self.code.k(),
            acd: v.acd,
            intersection_dim: v.intersection_dim.unwrap_or_default(),
            distance,
            claimed_distance: self.claimed_distance,
            claimed_acd: self.claimed_acd,
        })
    }
}

/// First `(x, y)` in lexicographic order with `chi_x(y) != 1`, and its exponent.
pub fn find_nonorthogonal_pair(d: &Duality) -> (GFElement, GFElement, u32) {
    let spec = d.spec();
    for x in spec.elements().skip(1) {
        for y in spec.elements().skip(1) {
            let a = d.exponent_coords(x.coords(), y.coords());
            if a != 0 {
                return (x, y, a);
            }
        }
    }
    unreachable!("an invertible K pairs some basis vectors nontrivially")
}

/// First F_p-independent `(a, b)` in lexicographic order with `chi_a(b) = 1`.
pub fn find_orthogonal_independent_pair(d: &Duality) -> Result<(GFElement, GFElement)> {
    let spec = d.spec();
    for a in spec.elements().skip(1) {
        for b in spec.elements().skip(1) {
            if a.independent_of(&b) && d.exponent_coords(a.coords(), b.coords()) == 0 {
                return Ok((a, b));
            }
        }
    }
    Err(Error::NoSuchPair)
}

fn single(x: &GFElement) -> GFVector {
    GFVector::new(x.spec(), vec![x.clone()]).expect("one entry over one field")
}

/// A length-one ACD code: `<x>` for the first `x` with `chi_x(x) != 1`,
/// otherwise `<x, y>` for a nonorthogonal pair.
pub fn construct_length1(d: &Duality) -> Result<ConstructionReport> {
    let spec = d.spec();
    let rows = match spec.elements().skip(1).find(|x| d.exponent_coords(x.coords(), x.coords()) != 0) {
        Some(x) => vec![single(&x)],
        None => {
            let (x, y, _) = find_nonorthogonal_pair(d);
            vec![single(&x), single(&y)]
        }
    };
    ConstructionReport::new(d, 1, rows, Some(1), "length one")
}

fn require_class_a(d: &Duality) -> Result<()> {
    if all_self_orthogonal_elements(d) {
        Ok(())
    } else {
        Err(Error::NotClassA)
    }
}

fn template_length(rows: &[GFVector]) -> Result<usize> {
    let n = rows.first().map(GFVector::len).ok_or_else(|| Error::TemplateViolation("no rows".into()))?;
    if !rows.len().is_multiple_of(2) {
        return Err(Error::TemplateViolation(format!("{} rows; an even number is required", rows.len())));
    }
    Ok(n)
}

/// Rows whose pairwise exponents `chi_{G_i}(G_j)` for `i < j` all equal one
/// nonzero value.
pub fn construct_acd1(d: &Duality, rows: &[GFVector]) -> Result<ConstructionReport> {
    require_class_a(d)?;
    let n = template_length(rows)?;
    let g = gram_of_rows(rows, d)?;
    let common = g.get(0, 1);
    if common == 0 {
        return Err(Error::TemplateViolation("rows 1 and 2 are orthogonal".into()));
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if g.get(i, j) != common {
                return Err(Error::TemplateViolation(format!(
                    "exponent at ({}, {}) is {}, expected {common}",
                    i + 1,
                    j + 1,
                    g.get(i, j)
                )));
            }
        }
    }
    ConstructionReport::new(d, n, rows.to_vec(), None, "uniform pairwise exponent")
}

/// Rows in consecutive pairs: nonorthogonal inside each pair, orthogonal
/// across pairs.
pub fn construct_acd2(d: &Duality, rows: &[GFVector]) -> Result<ConstructionReport> {
    require_class_a(d)?;
    let n = template_length(rows)?;
    let g = gram_of_rows(rows, d)?;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let paired = i % 2 == 0 && j == i + 1;
            let bad = if paired { g.get(i, j) == 0 } else { g.get(i, j) != 0 };
            if bad {
                let want = if paired { "nonzero" } else { "zero" };
                return Err(Error::TemplateViolation(format!(
                    "exponent at ({}, {}) is {}, expected {want}",
                    i + 1,
                    j + 1,
                    g.get(i, j)
                )));
            }
        }
    }
    ConstructionReport::new(d, n, rows.to_vec(), None, "paired rows")
}

/// `2s` rows in `s` diagonal blocks of width `floor(n/s)`, giving an ACD code
/// of rank `2s` and distance `floor(n/s)`.
pub fn construct_bound(d: &Duality, n: usize, s: usize) -> Result<ConstructionReport> {
    require_class_a(d)?;
    if s == 0 || s > n {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    let spec = d.spec();
    let p = spec.p() as usize;
    let q = n / s;
    let (x, y, _) = find_nonorthogonal_pair(d);
    // Swapping the last column keeps the pair exponent away from zero when
    // q copies of it would cancel.
    let tail = if p == 2 {
        if q.is_multiple_of(2) {
            if spec.e() <= 2 {
                return Err(Error::Unsupported(
                    "even block width over F_4: no independent orthogonal pair exists".into(),
                ));
            }
            Some(find_orthogonal_independent_pair(d)?)
        } else {
            None
        }
    } else if q.is_multiple_of(p) {
        Some((y.clone(), x.clone()))
    } else {
        None
    };
    let zero = spec.zero();
    let mut template = Vec::with_capacity(2 * s);
    for block in 0..s {
        let start = block * q;
        let mut top = vec![zero.clone(); n];
        let mut bottom = vec![zero.clone(); n];
        for col in start..start + q {
            top[col] = x.clone();
            bottom[col] = y.clone();
        }
        if let Some((a, b)) = &tail {
            top[start + q - 1] = a.clone();
            bottom[start + q - 1] = b.clone();
        }
        template.push(GFVector::new(spec, top)?);
        template.push(GFVector::new(spec, bottom)?);
    }
    let source = if tail.is_some() { "block pairs, swapped tail" } else { "block pairs" };
    ConstructionReport::new(d, n, template, Some(q), source)
}

fn repeated(x: &GFElement, n: usize, last: Option<&GFElement>) -> GFVector {
    let mut entries = vec![x.clone(); n];
    if let Some(t) = last {
        entries[n - 1] = t.clone();
    }
    GFVector::new(x.spec(), entries).expect("entries share a field")
}

fn is_f4_nonsymmetric(d: &Duality) -> bool {
    d.spec().p() == 2 && d.spec().e() == 2 && d.class() == DualityClass::OtherNonSymmetric
}

/// Two constant rows over the power basis, with the last column swapped when
/// `swap` is set.
fn constant_pair(d: &Duality, n: usize, swap: bool) -> Vec<GFVector> {
    let spec = d.spec();
    let (one, w) = (spec.basis(0), spec.basis(1));
    if swap {
        vec![repeated(&one, n, Some(&w)), repeated(&w, n, Some(&one))]
    } else {
        vec![repeated(&one, n, None), repeated(&w, n, None)]
    }
}

/// A rank `2n - 2` ACD code of distance 2 over F_{p^2}: the dual, taken with
/// respect to `K^T`, of a two-row ACD code with no zero column.
pub fn construct_n_2n2(d: &Duality, n: usize) -> Result<ConstructionReport> {
    let spec = d.spec();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if spec.e() != 2 {
        return Err(Error::Unsupported(format!("rank 2n-2 construction needs e = 2, got {spec}")));
    }
    let swap = if d.is_class_a() {
        let swap = n.is_multiple_of(spec.p() as usize);
        if swap && spec.p() == 2 {
            // Every pair of distinct nonzero elements of F_4 pairs to -1, so the
            // swapped template is orthogonal to itself.
            return Err(Error::Unsupported(
                "even n over F_4 under the skew-symmetric duality: every rank 2n-2 ACD code has a weight-1 word".into(),
            ));
        }
        swap
    } else if is_f4_nonsymmetric(d) {
        n.is_multiple_of(2)
    } else {
        return Err(Error::Unsupported(format!("rank 2n-2 construction for {d}")));
    };
    let outer = AdditiveCode::new(spec, n, &constant_pair(d, n, swap))?;
    let code = dual(&outer, &d.transpose())?;
    Ok(ConstructionReport::from_code(code, Some(2), "dual of a constant pair"))
}

/// Quaternary constructions at rank 1, 2 and `2n - 1`.
pub fn construct_f4(d: &Duality, n: usize, k: usize) -> Result<ConstructionReport> {
    let spec = d.spec();
    if spec.p() != 2 || spec.e() != 2 {
        return Err(Error::Unsupported(format!("quaternary construction over {spec}")));
    }
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let nonsym = is_f4_nonsymmetric(d);
    if !nonsym && !d.is_class_a() {
        return Err(Error::Unsupported(format!("quaternary construction for {d}")));
    }
    let odd = n % 2 == 1;
    let one = spec.basis(0);
    if k == 1 {
        if !nonsym {
            return Err(Error::UnsupportedK { n, k });
        }
        // chi_x(x) = -1 for every nonzero x, so the weight must be odd.
        let row = if odd { repeated(&one, n, None) } else { repeated(&one, n, Some(&spec.zero())) };
        let dist = if odd { n } else { n - 1 };
        return ConstructionReport::new(d, n, vec![row], Some(dist), "odd-weight constant row");
    }
    if k == 2 {
        if nonsym {
            return ConstructionReport::new(d, n, constant_pair(d, n, !odd), Some(n), "constant pair");
        }
        let (x, y, _) = find_nonorthogonal_pair(d);
        if odd {
            let rows = vec![repeated(&x, n, None), repeated(&y, n, None)];
            return ConstructionReport::new(d, n, rows, Some(n), "constant pair");
        }
        let zero = spec.zero();
        let rows = vec![repeated(&x, n, Some(&zero)), repeated(&y, n, Some(&zero))];
        return ConstructionReport::new(d, n, rows, Some(n - 1), "constant pair, zero tail");
    }
    if k == 2 * n - 1 {
        if !nonsym {
            return Err(Error::UnsupportedK { n, k });
        }
        let base = construct_f4(d, n, 1)?;
        let code = dual(&base.code, &d.transpose())?;
        return Ok(ConstructionReport::from_code(code, Some(1), "dual of a rank-1 code"));
    }
    Err(Error::UnsupportedK { n, k })
}
