//! Codes and dualities together: duals, Gram exponent matrices, and the
//! ACD / self-orthogonal / self-dual tests.

use std::fmt;

use serde::Serialize;

use crate::code::AdditiveCode;
use crate::duality::Duality;
use crate::error::{Error, Result};
use crate::gf::{expand, GFElement, GFVector};
use crate::FpMatrix;

fn check_spec(c: &AdditiveCode, d: &Duality) -> Result<()> {
    if c.spec() != d.spec() {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

/// Multiplies every length-`e` block of every row on the right by `k`.
fn blockwise(m: &FpMatrix, k: &FpMatrix) -> FpMatrix {
    let p = m.modulus();
    let e = k.rows();
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for row in m.iter_rows() {
        for block in row.chunks(e) {
            for j in 0..e {
                let acc: u64 = block.iter().enumerate().map(|(i, &x)| x as u64 * k.get(i, j) as u64).sum();
                data.push((acc % p.get() as u64) as u16);
            }
        }
    }
    FpMatrix::from_raw(p, m.rows(), m.cols(), data)
}

/// `C^M`: every `x` with `prod_i chi_{x_i}(c_i) = 1` for all codewords `c`.
///
/// The condition `sum_i x_i^T K c_i = 0` makes this the nullspace of
/// `G (I_n (x) K^T)`.
pub fn dual(c: &AdditiveCode, d: &Duality) -> Result<AdditiveCode> {
    check_spec(c, d)?;
    let checks = blockwise(c.generator(), &d.matrix().transpose());
    AdditiveCode::from_matrix(c.spec(), c.n(), &checks.nullspace())
}

/// Gram exponent matrix of arbitrary generator rows over F_p: entry `(i, j)`
/// is the exponent of `chi_{G_i}(G_j)`.
pub fn gram_matrix(g: &FpMatrix, d: &Duality) -> Result<FpMatrix> {
    if g.modulus() != d.spec().prime() {
        return Err(Error::SpecMismatch);
    }
    if !g.cols().is_multiple_of(d.spec().e()) {
        return Err(Error::BadWidth { cols: g.cols(), e: d.spec().e() });
    }
    if g.rows() == 0 {
        return Ok(FpMatrix::zeros(g.modulus(), 0, 0));
    }
    blockwise(g, d.matrix()).mul(&g.transpose())
}

pub fn gram_of_rows(rows: &[GFVector], d: &Duality) -> Result<FpMatrix> {
    if rows.iter().any(|r| r.spec() != d.spec()) {
        return Err(Error::SpecMismatch);
    }
    gram_matrix(&expand(d.spec(), rows)?, d)
}

/// Gram exponent matrix of the canonical generators of `c`.
pub fn gram(c: &AdditiveCode, d: &Duality) -> Result<FpMatrix> {
    check_spec(c, d)?;
    gram_matrix(c.generator(), d)
}

/// Dimension of `C ∩ C^M`; zero exactly for ACD codes.
pub fn hull_dimension(c: &AdditiveCode, d: &Duality) -> Result<usize> {
    Ok(c.intersection(&dual(c, d)?)?.k())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcdVerdict {
    pub acd: bool,
    pub k: usize,
    pub gram_rank: usize,
    /// Present when the intersection oracle was run.
    pub intersection_dim: Option<usize>,
}

impl fmt::Display for AcdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ACD: {} (gram rank {}/{}", if self.acd { "yes" } else { "no" }, self.gram_rank, self.k)?;
        if let Some(dim) = self.intersection_dim {
            write!(f, ", intersection dim {dim}")?;
        }
        write!(f, ")")
    }
}

/// ACD test by Gram invertibility. Debug builds also run the intersection
/// oracle and panic on disagreement.
pub fn is_acd(c: &AdditiveCode, d: &Duality) -> Result<AcdVerdict> {
    check_acd(c, d, cfg!(debug_assertions))
}

/// ACD test, optionally cross-checked against `dim(C ∩ C^M) = 0`.
pub fn check_acd(c: &AdditiveCode, d: &Duality, oracle: bool) -> Result<AcdVerdict> {
    let g = gram(c, d)?;
    let gram_rank = g.rank();
    let acd = gram_rank == c.k();
    let intersection_dim = if oracle {
        let dim = hull_dimension(c, d)?;
        assert_eq!(acd, dim == 0, "Gram criterion disagrees with intersection oracle for {c:?} under {d}");
        Some(dim)
    } else {
        None
    };
    Ok(AcdVerdict { acd, k: c.k(), gram_rank, intersection_dim })
}

/// `C ⊆ C^M`.
pub fn is_self_orthogonal(c: &AdditiveCode, d: &Duality) -> Result<bool> {
    c.is_subcode_of(&dual(c, d)?)
}

/// `C = C^M`.
pub fn is_self_dual(c: &AdditiveCode, d: &Duality) -> Result<bool> {
    Ok(*c == dual(c, d)?)
}

/// Whether `chi_x(x) = 1` for every element.
pub fn all_self_orthogonal_elements(d: &Duality) -> bool {
    match d.spec().order() {
        Some(q) if q <= crate::duality::DEFAULT_TABLE_BOUND => {
            d.spec().elements().all(|x| d.exponent_coords(x.coords(), x.coords()) == 0)
        }
        // x^T K x vanishes identically iff K is alternating.
        _ => d.is_class_a(),
    }
}

/// The code `{0, x, 2x, ...}` of length one is ACD iff `chi_x(x) != 1`.
pub fn acd_length1(x: &GFElement, d: &Duality) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(d.char_exponent(x, x)? != 0)
}

/// Structural identities linking duals, sums and intersections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    Cardinality,
    DoubleDual,
    DualOfSum,
    DualOfIntersection,
    AcdTransposeInvariant,
    DualInheritsAcd,
    SelfDualTransposeInvariant,
    SelfOrthogonalTransposeInvariant,
    ClassADoubleDual,
    GramMatchesOracle,
}

impl Identity {
    pub fn description(self) -> &'static str {
        match self {
            Identity::Cardinality => "k + dim(C^M) = e*n",
            Identity::DoubleDual => "(C^M)^(M^T) = C = (C^(M^T))^M",
            Identity::DualOfSum => "(A+B)^M = A^M ∩ B^M",
            Identity::DualOfIntersection => "(A∩B)^M = A^M + B^M",
            Identity::AcdTransposeInvariant => "ACD under M iff ACD under M^T",
            Identity::DualInheritsAcd => "C ACD under M => C^M ACD under M^T and C^(M^T) ACD under M",
            Identity::SelfDualTransposeInvariant => "self-dual under M iff under M^T",
            Identity::SelfOrthogonalTransposeInvariant => "self-orthogonal under M iff under M^T",
            Identity::ClassADoubleDual => "(C^M)^M = C for skew-symmetric M",
            Identity::GramMatchesOracle => "Gram invertible iff C ∩ C^M = 0",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Evaluates every applicable identity on the pair `(a, b)` under `d`.
pub fn check_identities(a: &AdditiveCode, b: &AdditiveCode, d: &Duality) -> Result<Vec<(Identity, bool)>> {
    check_spec(a, d)?;
    let dt = d.transpose();
    let en = a.spec().e() * a.n();
    let a_d = dual(a, d)?;
    let a_dt = dual(a, &dt)?;
    let acd = check_acd(a, d, false)?.acd;
    let mut out = vec![
        (Identity::Cardinality, a.k() + a_d.k() == en),
        (Identity::DoubleDual, dual(&a_d, &dt)? == *a && dual(&a_dt, d)? == *a),
        (Identity::DualOfSum, dual(&a.sum(b)?, d)? == a_d.intersection(&dual(b, d)?)?),
        (Identity::DualOfIntersection, dual(&a.intersection(b)?, d)? == a_d.sum(&dual(b, d)?)?),
        (Identity::AcdTransposeInvariant, acd == check_acd(a, &dt, false)?.acd),
        (Identity::DualInheritsAcd, !acd || (check_acd(&a_d, &dt, false)?.acd && check_acd(&a_dt, d, false)?.acd)),
        (Identity::SelfDualTransposeInvariant, is_self_dual(a, d)? == is_self_dual(a, &dt)?),
        (Identity::SelfOrthogonalTransposeInvariant, is_self_orthogonal(a, d)? == is_self_orthogonal(a, &dt)?),
        (Identity::GramMatchesOracle, acd == (hull_dimension(a, d)? == 0)),
    ];
    if all_self_orthogonal_elements(d) {
        out.push((Identity::ClassADoubleDual, dual(&a_d, d)? == *a));
    }
    Ok(out)
}
