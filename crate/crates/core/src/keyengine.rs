//! Witness lattices for the transfer lemma and the maximal-rank subgroup
//! construction.
//!
//! Largeness with respect to an `n`-dimensional idempotent is replaced
//! throughout by "contains a rank-`n` sublattice of `Z^n`". Every
//! finite-index subgroup lies in every such idempotent, so each lattice
//! produced here certifies the corresponding largeness statement, and each
//! certificate is checked before it is returned.
//!
//! All "for every lattice point" checks go through
//! [`Lattice::probe_points`]: a claim `g(z) ∈ H` with `g` integer valued of
//! degree `d` and `H` a subgroup holds on a lattice as soon as it holds on
//! the `(d + 1)^rank` probe points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, lcm_all, lcm_up_to, BoxIter};
use crate::error::{Error, Result};
use crate::intpoly::{BinPoly, MonoPoly, PolyTuple};
use crate::json;
use crate::lattice::Lattice;
use crate::limits::Limits;

/// A polynomial map `v: Z^n -> Z^K` together with a subgroup `V ⊆ Z^K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyInstance {
    v: PolyTuple,
    target: Lattice,
}

impl KeyInstance {
    pub fn new(v: PolyTuple, target: Lattice) -> Result<Self> {
        if target.ambient() != v.len() {
            return Err(Error::arity(v.len(), target.ambient()));
        }
        Ok(KeyInstance { v, target })
    }

    pub fn map(&self) -> &PolyTuple {
        &self.v
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.v.nvars()
    }

    /// `v(z) - v(0)`.
    pub fn reduced_map(&self) -> PolyTuple {
        self.v
            .map(|c| Ok(c.without_constant()))
            .expect("components keep their arity")
    }
}

/// One degree of the descending construction: `N_2 * Delta^i` lands in `V`
/// on the clearing multiple, and `h_i(a) ∈ V` on `scale * Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStep {
    pub degree: u32,
    #[serde(with = "json::int")]
    pub clearing: BigInt,
    #[serde(with = "json::int")]
    pub scale: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyWitness {
    pub lattice: Lattice,
    /// Common denominator `D` of the monomial coefficients of `v - v(0)`.
    #[serde(with = "json::int")]
    pub denominator: BigInt,
    pub steps: Vec<DegreeStep>,
    /// Set when `V` is saturated, in which case every `a` works.
    pub saturated_target: bool,
}

/// `N * Z^n` with `N = q * lcm(1..d)`: on it every `f_i` vanishes mod `q`.
/// The all-zero family gets `Z^n`.
///
/// Sound because `C(N k, j) = (N k / j) C(N k - 1, j - 1)` is divisible by
/// `q` for `1 <= j <= d`. Not minimal in general.
pub fn vanishing_lattice(nvars: usize, fs: &[BinPoly], q: &BigInt) -> Result<Lattice> {
    if q < &BigInt::one() {
        return Err(Error::Invalid(format!("modulus must be positive, got {q}")));
    }
    check_vanishing_at_origin(nvars, fs)?;
    if fs.iter().all(BinPoly::is_zero) {
        return Ok(Lattice::full(nvars));
    }
    let d = fs.iter().map(BinPoly::degree).max().unwrap_or(0);
    let lattice = Lattice::scaled(nvars, &(q * lcm_up_to(d)));
    for z in lattice.probe_points(d) {
        for (i, f) in fs.iter().enumerate() {
            let value = f.evaluate(&z)?;
            if !(&value % q).is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "f_{i}({z:?}) = {value} is not divisible by {q}"
                )));
            }
        }
    }
    Ok(lattice)
}

pub(crate) fn check_vanishing_at_origin(nvars: usize, fs: &[BinPoly]) -> Result<()> {
    for (index, f) in fs.iter().enumerate() {
        if f.nvars() != nvars {
            return Err(Error::arity(nvars, f.nvars()));
        }
        let value = f.constant_term();
        if !value.is_zero() {
            return Err(Error::NonzeroConstantTerm { index, value });
        }
    }
    Ok(())
}

/// Checks that some nonzero multiple of `v(b)` lies in `V` for every `b` in
/// the hypothesis lattice, which must have full rank.
///
/// The condition says `v(b)` lies in the saturation of `V`, a subgroup, so
/// the probe points of the hypothesis lattice decide it.
pub fn check_key_hypothesis(inst: &KeyInstance, hypothesis: &Lattice) -> Result<()> {
    let n = inst.nvars();
    if hypothesis.ambient() != n {
        return Err(Error::arity(n, hypothesis.ambient()));
    }
    if hypothesis.rank() != n {
        return Err(Error::NotFullRank {
            expected: n,
            got: hypothesis.rank(),
        });
    }
    for b in hypothesis.probe_points(inst.v.degree()) {
        let image = inst.v.evaluate(&b)?;
        if inst.target.smallest_multiple(&image)?.is_none() {
            return Err(Error::HypothesisFailed { witness: b });
        }
    }
    Ok(())
}

/// Checks `v(a) - v(0) ∈ V` for every `a` in `witness`.
pub fn verify_key_witness(inst: &KeyInstance, witness: &Lattice) -> Result<()> {
    let n = inst.nvars();
    if witness.ambient() != n {
        return Err(Error::arity(n, witness.ambient()));
    }
    if witness.rank() != n {
        return Err(Error::NotFullRank {
            expected: n,
            got: witness.rank(),
        });
    }
    let reduced = inst.reduced_map();
    for a in witness.probe_points(reduced.degree()) {
        let image = reduced.evaluate(&a)?;
        if !inst.target.contains(&image)? {
            return Err(Error::VerificationFailed(format!(
                "v({a:?}) - v(0) = {image:?} is not in V"
            )));
        }
    }
    Ok(())
}

/// Builds a full-rank lattice on which `v(a) - v(0) ∈ V`, given a
/// full-rank lattice on which every `v(b)` has a nonzero multiple in `V`.
///
/// With `w = v - v(0)` of degree `d`, `D` its monomial denominator and
/// `h_i` its homogeneous parts, the construction runs for `i = d, ..., 1`:
/// `Delta^i (D h_i)` is multilinear with integer coefficient vectors
/// `c_J`, `N_2` is the lcm of the least multiples putting each `c_J` in
/// `V`, and then `N_2 i! D h_i(a) = N_2 Delta^i (D h_i)(a, ..., a) ∈ V`.
/// Hence `h_i(a) ∈ V` for `a ∈ (N_2 i! D) Z^n`, and the intersection over
/// `i` is the witness.
pub fn key_lemma_lattice(inst: &KeyInstance, hypothesis: &Lattice, limits: &Limits) -> Result<KeyWitness> {
    let n = inst.nvars();
    check_key_hypothesis(inst, hypothesis)?;
    let reduced = inst.reduced_map();
    let d = reduced.degree();

    let witness = if inst.target.is_saturated() {
        // v maps into span_Q(V) ∩ Z^K = V everywhere: the span condition is a
        // polynomial identity that already holds on a full-rank lattice.
        KeyWitness {
            lattice: Lattice::full(n),
            denominator: BigInt::one(),
            steps: Vec::new(),
            saturated_target: true,
        }
    } else {
        let monomial: Vec<MonoPoly> = reduced.components().iter().map(BinPoly::to_monomial).collect();
        let denominator = lcm_all(monomial.iter().flat_map(|m| m.terms().map(|(_, c)| c.denom())));
        let parts: Vec<Vec<MonoPoly>> = monomial.iter().map(MonoPoly::homogeneous_parts).collect();
        let scaled_d = BigRational::from_integer(denominator.clone());

        let mut steps = Vec::new();
        let mut lattice = Lattice::full(n);
        for i in (1..=d).rev() {
            let components: Vec<BinPoly> = parts
                .iter()
                .map(|p| match p.get(i as usize) {
                    Some(h) => h.scale(&scaled_d).to_binpoly(),
                    None => Ok(BinPoly::zero(n)),
                })
                .collect::<Result<_>>()?;
            let clearing = multilinear_clearing(&components, i, &inst.target, limits)?;
            let scale = &clearing * factorial(i) * &denominator;
            lattice = lattice.intersect(&Lattice::scaled(n, &scale))?;
            steps.push(DegreeStep {
                degree: i,
                clearing,
                scale,
            });
        }
        KeyWitness {
            lattice,
            denominator,
            steps,
            saturated_target: false,
        }
    };

    verify_key_witness(inst, &witness.lattice)?;
    Ok(witness)
}

/// lcm over nondecreasing `J` of the least `N` with
/// `N * Delta^i h(e_{j_1}, ..., e_{j_i}) ∈ V`. Symmetry of `Delta^i` makes
/// the nondecreasing tuples enough.
fn multilinear_clearing(h: &[BinPoly], i: u32, target: &Lattice, limits: &Limits) -> Result<BigInt> {
    let n = h.first().map(BinPoly::nvars).unwrap_or(0);
    let deltas: Vec<BinPoly> = h.iter().map(|c| c.delta(i)).collect::<Result<_>>()?;
    let tuples = (n as u64).saturating_pow(i);
    limits.check_sweep(tuples)?;
    let mut clearing = BigInt::one();
    for js in BoxIter::cube(i as usize, 0, n as i64) {
        if js.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut point = vec![BigInt::zero(); i as usize * n];
        for (block, &j) in js.iter().enumerate() {
            point[block * n + j as usize] = BigInt::one();
        }
        let c: Vec<BigInt> = deltas.iter().map(|p| p.evaluate(&point)).collect::<Result<_>>()?;
        match target.smallest_multiple(&c)? {
            Some(m) => clearing = num_integer::Integer::lcm(&clearing, &m),
            None => {
                return Err(Error::VerificationFailed(format!(
                    "multilinear coefficient {c:?} of degree {i} escapes span(V) although the hypothesis holds"
                )))
            }
        }
    }
    Ok(clearing)
}

/// Greedily chosen samples whose images span a subgroup of maximal rank,
/// with saturation checked on a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    #[serde(with = "json::int_matrix")]
    pub samples: Vec<Vec<BigInt>>,
    pub lattice: Lattice,
    pub window: u32,
}

impl RankCertificate {
    /// Re-checks every invariant from the certificate and the map alone.
    pub fn verify(&self, v: &PolyTuple, limits: &Limits) -> Result<()> {
        if self.samples.len() != self.rank || self.lattice.rank() != self.rank {
            return Err(Error::VerificationFailed(format!(
                "rank {} disagrees with {} samples and lattice rank {}",
                self.rank,
                self.samples.len(),
                self.lattice.rank()
            )));
        }
        let images: Vec<Vec<BigInt>> = self
            .samples
            .iter()
            .map(|s| v.evaluate(s))
            .collect::<Result<_>>()?;
        if Lattice::from_generators(v.len(), &images)? != self.lattice {
            return Err(Error::VerificationFailed(
                "lattice is not generated by the sample images".into(),
            ));
        }
        for b in window_points(v.nvars(), self.window, limits)? {
            if self.lattice.smallest_multiple(&v.evaluate(&b)?)?.is_none() {
                return Err(Error::SaturationFailed { witness: b });
            }
        }
        Ok(())
    }
}

/// Points of `[-W, W]^n` ordered by max-norm shell, lexicographically
/// inside each shell.
pub fn window_points(n: usize, window: u32, limits: &Limits) -> Result<Vec<Vec<BigInt>>> {
    let side = 2 * window as u64 + 1;
    limits.check_sweep(side.saturating_pow(n as u32))?;
    let w = window as i64;
    let mut pts: Vec<Vec<i64>> = BoxIter::cube(n, -w, w + 1).collect();
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap_or(0), p.clone()));
    Ok(pts
        .into_iter()
        .map(|p| p.into_iter().map(BigInt::from).collect())
        .collect())
}

/// Finds samples `a_1, ..., a_r` in the window whose images have rank `r`
/// and such that every image in the window has a nonzero multiple in
/// `V(a_1, ..., a_r)`.
pub fn stable_rank_subgroup(v: &PolyTuple, window: u32, limits: &Limits) -> Result<RankCertificate> {
    let points = window_points(v.nvars(), window, limits)?;
    let k = v.len();
    let mut samples: Vec<Vec<BigInt>> = Vec::new();
    let mut images: Vec<Vec<BigInt>> = Vec::new();
    let mut lattice = Lattice::zero(k);
    loop {
        let mut grew = false;
        for b in &points {
            let image = v.evaluate(b)?;
            if lattice.smallest_multiple(&image)?.is_none() {
                samples.push(b.clone());
                images.push(image);
                lattice = Lattice::from_generators(k, &images)?;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let cert = RankCertificate {
        rank: samples.len(),
        samples,
        lattice,
        window,
    };
    cert.verify(v, limits)?;
    Ok(cert)
}
