//! Commuting finite-order unitaries given by rational eigen-phases.
//!
//! A family `U_1, ..., U_m` that is simultaneously diagonal with phases
//! `theta[e][i]` (eigenvector `e`, operator `i`) acts on eigenvector `e` by
//! `exp(2 pi i sum_i f_i(z) theta[e][i])` under `prod U_i^{f_i(z)}`. With
//! rational phases the exponent is periodic in `z`, so limits along
//! idempotents are computed exactly through a lattice on which every phase
//! vanishes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::frac;
use crate::error::{Error, Result};
use crate::intpoly::BinPoly;
use crate::json;
use crate::keyengine::{check_vanishing_at_origin, vanishing_lattice};
use crate::lattice::Lattice;
use crate::limits::Limits;

pub type GaussianRational = Complex<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PhaseJson", into = "PhaseJson")]
pub struct PhaseUnitary {
    dim: usize,
    ops: usize,
    phases: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseJson {
    dim: usize,
    ops: usize,
    #[serde(with = "phase_rows")]
    phases: Vec<Vec<BigRational>>,
}

mod phase_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(crate::arith::rational_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigRational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| crate::arith::parse_rational(x).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl TryFrom<PhaseJson> for PhaseUnitary {
    type Error = Error;

    fn try_from(raw: PhaseJson) -> Result<Self> {
        let u = PhaseUnitary::new(raw.phases, &Limits::default())?;
        if u.dim != raw.dim || u.ops != raw.ops {
            return Err(Error::DimMismatch {
                expected: raw.dim * raw.ops,
                got: u.dim * u.ops,
            });
        }
        Ok(u)
    }
}

impl From<PhaseUnitary> for PhaseJson {
    fn from(u: PhaseUnitary) -> Self {
        PhaseJson {
            dim: u.dim,
            ops: u.ops,
            phases: u.phases,
        }
    }
}

impl PhaseUnitary {
    /// Rows are eigenvectors, columns operators. Phases are reduced into
    /// `[0, 1)`.
    pub fn new(phases: Vec<Vec<BigRational>>, limits: &Limits) -> Result<Self> {
        let dim = phases.len();
        if dim == 0 {
            return Err(Error::InvalidPhase("need at least one eigenvector".into()));
        }
        let ops = phases[0].len();
        if ops == 0 {
            return Err(Error::InvalidPhase("need at least one operator".into()));
        }
        if let Some(row) = phases.iter().find(|r| r.len() != ops) {
            return Err(Error::DimMismatch {
                expected: ops,
                got: row.len(),
            });
        }
        let cap = BigInt::from(limits.max_phase_denominator);
        let phases: Vec<Vec<BigRational>> = phases
            .iter()
            .map(|r| r.iter().map(frac).collect())
            .collect();
        if let Some(p) = phases.iter().flatten().find(|p| p.denom() > &cap) {
            return Err(Error::InvalidPhase(format!(
                "denominator of {p} exceeds the cap {cap}"
            )));
        }
        Ok(PhaseUnitary { dim, ops, phases })
    }

    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        let phases = rows
            .iter()
            .map(|r| r.iter().map(|s| crate::arith::parse_rational(s)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        PhaseUnitary::new(phases, &Limits::default())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> usize {
        self.ops
    }

    pub fn phases(&self) -> &[Vec<BigRational>] {
        &self.phases
    }

    /// lcm of all phase denominators: every `U_i^q` is the identity.
    pub fn order(&self) -> BigInt {
        self.phases
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
    }

    /// Phase of `prod U_i^{e_i}` on each eigenvector, reduced mod 1.
    pub fn phases_for(&self, exps: &[BigInt]) -> Result<Vec<BigRational>> {
        if exps.len() != self.ops {
            return Err(Error::arity(self.ops, exps.len()));
        }
        Ok(self
            .phases
            .iter()
            .map(|row| {
                let total: BigRational = row
                    .iter()
                    .zip(exps)
                    .map(|(t, e)| t * BigRational::from_integer(e.clone()))
                    .sum();
                frac(&total)
            })
            .collect())
    }
}

/// Per-eigenvector phase of `prod U_i^{f_i(z)}`.
pub fn power_phases(u: &PhaseUnitary, fs: &[BinPoly], z: &[BigInt]) -> Result<Vec<BigRational>> {
    if fs.len() != u.ops {
        return Err(Error::arity(u.ops, fs.len()));
    }
    let exps: Vec<BigInt> = fs.iter().map(|f| f.evaluate(z)).collect::<Result<_>>()?;
    u.phases_for(&exps)
}

/// Diagonal projection onto the span of the `fixed` eigenvectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionDesc {
    pub dim: usize,
    pub fixed: BTreeSet<usize>,
    /// Lattice on which the defining operator family equals this projection.
    pub certificate: Option<Lattice>,
}

impl ProjectionDesc {
    pub fn identity(dim: usize) -> Self {
        ProjectionDesc {
            dim,
            fixed: (0..dim).collect(),
            certificate: None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.fixed.len() == self.dim
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let rows = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        if i == j && self.fixed.contains(&i) {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ComplexMatrix::Exact(rows)
    }
}

/// Limit of `prod U_i^{f_i(z)}` along any idempotent: the identity,
/// certified by a lattice on which every phase vanishes.
pub fn limit_projection(u: &PhaseUnitary, fs: &[BinPoly]) -> Result<ProjectionDesc> {
    if fs.len() != u.ops {
        return Err(Error::arity(u.ops, fs.len()));
    }
    let n = fs[0].nvars();
    check_vanishing_at_origin(n, fs)?;
    let q = u.order();
    // g_e = sum_i (q theta[e][i]) f_i; the phase on e is g_e(z) / q mod 1.
    let gs: Vec<BinPoly> = u
        .phases
        .iter()
        .map(|row| {
            row.iter().zip(fs).try_fold(BinPoly::zero(n), |acc, (t, f)| {
                let c = (t * BigRational::from_integer(q.clone())).to_integer();
                acc.add(&f.scale(&c))
            })
        })
        .collect::<Result<_>>()?;
    let lattice = vanishing_lattice(n, &gs, &q)?;
    verify_limit_certificate(u, fs, &lattice)?;
    Ok(ProjectionDesc {
        dim: u.dim,
        fixed: (0..u.dim).collect(),
        certificate: Some(lattice),
    })
}

/// Checks that every phase of `prod U_i^{f_i(z)}` vanishes on `lattice`.
///
/// The condition is `g_e(z) ∈ qZ` for integer-valued `g_e`, so the probe
/// points of the lattice decide it.
pub fn verify_limit_certificate(u: &PhaseUnitary, fs: &[BinPoly], lattice: &Lattice) -> Result<()> {
    if fs.len() != u.ops {
        return Err(Error::arity(u.ops, fs.len()));
    }
    let n = fs[0].nvars();
    if lattice.ambient() != n {
        return Err(Error::arity(n, lattice.ambient()));
    }
    if lattice.rank() != n {
        return Err(Error::NotFullRank {
            expected: n,
            got: lattice.rank(),
        });
    }
    let d = fs.iter().map(BinPoly::degree).max().unwrap_or(0);
    for z in lattice.probe_points(d) {
        let phases = power_phases(u, fs, &z)?;
        if let Some(e) = phases.iter().position(|p| !p.is_zero()) {
            return Err(Error::VerificationFailed(format!(
                "phase {} on eigenvector {e} at z = {z:?}",
                phases[e]
            )));
        }
    }
    Ok(())
}

/// Projection onto the common fixed space of `prod U_i^{e_i}` over all
/// exponent vectors given.
pub fn orbit_fixed_projection(u: &PhaseUnitary, exponents: &[Vec<BigInt>]) -> Result<ProjectionDesc> {
    let mut fixed: BTreeSet<usize> = (0..u.dim).collect();
    for e in exponents {
        let phases = u.phases_for(e)?;
        fixed.retain(|&i| phases[i].is_zero());
    }
    Ok(ProjectionDesc {
        dim: u.dim,
        fixed,
        certificate: None,
    })
}

/// Product of commuting diagonal projections, checked to be a projection.
pub fn projection_product_check(ps: &[ProjectionDesc]) -> Result<ProjectionDesc> {
    let first = ps
        .first()
        .ok_or_else(|| Error::Invalid("need at least one projection".into()))?;
    let dim = first.dim;
    if let Some(p) = ps.iter().find(|p| p.dim != dim) {
        return Err(Error::DimMismatch {
            expected: dim,
            got: p.dim,
        });
    }
    let fixed = ps
        .iter()
        .fold(first.fixed.clone(), |acc, p| acc.intersection(&p.fixed).copied().collect());
    let mut certificate: Option<Lattice> = None;
    for c in ps.iter().filter_map(|p| p.certificate.as_ref()) {
        certificate = Some(match certificate {
            Some(l) => l.intersect(c)?,
            None => c.clone(),
        });
    }
    let product = ProjectionDesc {
        dim,
        fixed,
        certificate,
    };
    let mut m = first.matrix();
    for p in &ps[1..] {
        m = m.mul(&p.matrix())?;
    }
    if m != product.matrix() || !is_orthogonal_projection(&m, 0.0)?.orthogonal() {
        return Err(Error::VerificationFailed(
            "product of the projections is not the expected projection".into(),
        ));
    }
    Ok(product)
}

/// Square matrix over exact Gaussian rationals or floating complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexMatrix {
    Exact(Vec<Vec<GaussianRational>>),
    Float(Vec<Vec<Complex64>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub normal: bool,
    pub idempotent: bool,
}

impl ProjectionCheck {
    pub fn orthogonal(&self) -> bool {
        self.normal && self.idempotent
    }
}

impl ComplexMatrix {
    pub fn from_rationals(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Ok(Complex::new(crate::arith::parse_rational(s)?, BigRational::zero())))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Ok(ComplexMatrix::Exact(rows))
    }

    pub fn size(&self) -> usize {
        match self {
            ComplexMatrix::Exact(r) => r.len(),
            ComplexMatrix::Float(r) => r.len(),
        }
    }

    fn check_square(&self) -> Result<()> {
        let n = self.size();
        let bad = match self {
            ComplexMatrix::Exact(r) => r.iter().map(Vec::len).find(|&l| l != n),
            ComplexMatrix::Float(r) => r.iter().map(Vec::len).find(|&l| l != n),
        };
        match bad {
            Some(got) => Err(Error::DimMismatch { expected: n, got }),
            None => Ok(()),
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_square()?;
        other.check_square()?;
        if self.size() != other.size() {
            return Err(Error::DimMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        match (self, other) {
            (ComplexMatrix::Exact(a), ComplexMatrix::Exact(b)) => Ok(ComplexMatrix::Exact(matmul(a, b))),
            (ComplexMatrix::Float(a), ComplexMatrix::Float(b)) => Ok(ComplexMatrix::Float(matmul(a, b))),
            _ => Err(Error::Invalid("cannot mix exact and float matrices".into())),
        }
    }
}

fn matmul<T: Clone + Num>(a: &[Vec<Complex<T>>], b: &[Vec<Complex<T>>]) -> Vec<Vec<Complex<T>>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(Complex::zero(), |acc: Complex<T>, k| {
                        acc + a[i][k].clone() * b[k][j].clone()
                    })
                })
                .collect()
        })
        .collect()
}

fn adjoint<T: Clone + Num + std::ops::Neg<Output = T>>(a: &[Vec<Complex<T>>]) -> Vec<Vec<Complex<T>>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// Checks `M M* = M* M` and `M^2 = M`: exactly for exact matrices,
/// entrywise within `tol` for float matrices.
pub fn is_orthogonal_projection(m: &ComplexMatrix, tol: f64) -> Result<ProjectionCheck> {
    m.check_square()?;
    Ok(match m {
        ComplexMatrix::Exact(a) => {
            let star = adjoint(a);
            ProjectionCheck {
                normal: matmul(a, &star) == matmul(&star, a),
                idempotent: &matmul(a, a) == a,
            }
        }
        ComplexMatrix::Float(a) => {
            let close = |x: &[Vec<Complex64>], y: &[Vec<Complex64>]| {
                x.iter()
                    .flatten()
                    .zip(y.iter().flatten())
                    .all(|(p, q)| (p - q).norm() <= tol)
            };
            let star = adjoint(a);
            ProjectionCheck {
                normal: close(&matmul(a, &star), &matmul(&star, a)),
                idempotent: close(&matmul(a, a), a),
            }
        }
    })
}

/// Both sides of `||(1/N) sum x_n||^2 = (1/N^2) sum_{m,n} <x_m, x_n>`, with
/// the right side split into its diagonal and cross terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VdcExpansion {
    #[serde(with = "json::rational")]
    pub lhs: BigRational,
    #[serde(with = "json::rational")]
    pub rhs: BigRational,
    #[serde(with = "json::rational")]
    pub diagonal: BigRational,
    #[serde(with = "json::rational")]
    pub cross: BigRational,
    pub equal: bool,
}

fn inner(x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
    x.iter()
        .zip(y)
        .fold(GaussianRational::zero(), |acc, (a, b)| acc + a.clone() * b.conj())
}

pub fn vdc_expansion(xs: &[Vec<GaussianRational>]) -> Result<VdcExpansion> {
    let first = xs
        .first()
        .ok_or_else(|| Error::Invalid("need at least one vector".into()))?;
    let d = first.len();
    if let Some(x) = xs.iter().find(|x| x.len() != d) {
        return Err(Error::DimMismatch {
            expected: d,
            got: x.len(),
        });
    }
    let n = BigRational::from_integer(BigInt::from(xs.len()));
    let n2 = &n * &n;

    let mean: Vec<GaussianRational> = (0..d)
        .map(|k| {
            let s = xs.iter().fold(GaussianRational::zero(), |acc, x| acc + x[k].clone());
            Complex::new(s.re / &n, s.im / &n)
        })
        .collect();
    let lhs = inner(&mean, &mean).re;

    let mut diagonal = GaussianRational::zero();
    let mut cross = GaussianRational::zero();
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let ip = inner(x, y);
            if i == j {
                diagonal += ip;
            } else {
                cross += ip;
            }
        }
    }
    let total = diagonal.clone() + cross.clone();
    let rhs_imaginary = total.im.clone();
    let rhs = total.re / &n2;
    Ok(VdcExpansion {
        equal: lhs == rhs && rhs_imaginary.is_zero(),
        lhs,
        rhs,
        diagonal: diagonal.re / &n2,
        cross: cross.re / &n2,
    })
}
