use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Sub;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{binomial, binomial_row, choose, BoxIter};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::limits::Limits;

use super::monomial::{falling_factorial_coeffs, MonoPoly};

/// Exponent vector, one entry per scalar variable.
///
/// In the binomial basis the index `(i_1, ..., i_n)` names the basis element
/// `C(z_1, i_1) ... C(z_n, i_n)`; in monomial coordinates it names
/// `z_1^i_1 ... z_n^i_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// Integer-valued polynomial stored on the binomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinPoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl BinPoly {
    pub fn zero(nvars: usize) -> Self {
        BinPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.insert(MultiIndex::zero(nvars), c.into());
        p
    }

    /// The coordinate function `z_var`, which is `C(z_var, 1)`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.insert(MultiIndex::unit(nvars, var), BigInt::one());
        p
    }

    /// Builds a polynomial from binomial-basis terms. Repeated indices are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I, M>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, BigInt)>,
        M: Into<MultiIndex>,
    {
        let mut p = Self::zero(nvars);
        for (idx, c) in terms {
            let idx = idx.into();
            if idx.len() != nvars {
                return Err(Error::arity(nvars, idx.len()));
            }
            p.insert(idx, c);
        }
        Ok(p)
    }

    /// Convenience constructor for tests and fixtures: `(index, coefficient)` pairs
    /// with small integers.
    pub fn from_i64_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(idx, c)| (MultiIndex::new(idx.to_vec()), BigInt::from(*c))),
        )
    }

    fn insert(&mut self, idx: MultiIndex, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> BigInt {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    ///
    /// `C(z, i)` has degree exactly `i` with leading coefficient `1/i!`, and
    /// distinct indices have distinct leading monomials, so the degree is the
    /// largest stored index sum.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    /// Total degree in the given subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|idx| vars.iter().map(|&v| idx.0[v]).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn var_degree(&self, var: usize) -> u32 {
        self.degree_in(&[var])
    }

    /// `f(0)`: only the all-zero index survives at the origin.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&MultiIndex::zero(self.nvars))
    }

    pub fn evaluate(&self, z: &[BigInt]) -> Result<BigInt> {
        if z.len() != self.nvars {
            return Err(Error::arity(self.nvars, z.len()));
        }
        let rows: Vec<Vec<BigInt>> = z
            .iter()
            .enumerate()
            .map(|(v, zv)| binomial_row(zv, self.var_degree(v)))
            .collect();
        let mut acc = BigInt::zero();
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (v, &i) in idx.0.iter().enumerate() {
                if i > 0 {
                    t *= &rows[v][i as usize];
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_i64(&self, z: &[i64]) -> Result<BigInt> {
        let z: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        self.evaluate(&z)
    }

    fn check_same_arity(&self, other: &BinPoly) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::arity(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &BinPoly) -> Result<BinPoly> {
        self.check_same_arity(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BinPoly) -> Result<BinPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BinPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> BinPoly {
        if k.is_zero() {
            return BinPoly::zero(self.nvars);
        }
        BinPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * k)).collect(),
        }
    }

    /// `f - f(0)`.
    pub fn without_constant(&self) -> BinPoly {
        let mut out = self.clone();
        out.terms.remove(&MultiIndex::zero(self.nvars));
        out
    }

    /// Substitutes each variable `z_v` by the sum of the new variables listed
    /// in `map[v]` (an empty list substitutes 0). The lists must be pairwise
    /// disjoint, which keeps the result on the binomial basis through
    /// Vandermonde's identity `C(x + y, j) = sum_a C(x, a) C(y, j - a)`.
    pub fn substitute_sums(&self, new_nvars: usize, map: &[Vec<usize>]) -> Result<BinPoly> {
        if map.len() != self.nvars {
            return Err(Error::arity(self.nvars, map.len()));
        }
        let mut seen = vec![false; new_nvars];
        for targets in map {
            for &t in targets {
                if t >= new_nvars {
                    return Err(Error::InvalidSubstitution(format!(
                        "target variable {t} out of range for {new_nvars} variables"
                    )));
                }
                if seen[t] {
                    return Err(Error::InvalidSubstitution(format!(
                        "target variable {t} used by two source variables"
                    )));
                }
                seen[t] = true;
            }
        }

        let mut out = BinPoly::zero(new_nvars);
        for (idx, c) in &self.terms {
            // each variable independently expands into a list of partial indices
            let mut partials: Vec<Vec<u32>> = vec![vec![0; new_nvars]];
            let mut vanished = false;
            for (v, &i) in idx.0.iter().enumerate() {
                let targets = &map[v];
                if targets.is_empty() {
                    if i > 0 {
                        vanished = true;
                        break;
                    }
                    continue;
                }
                let comps = compositions(i, targets.len());
                let mut next = Vec::with_capacity(partials.len() * comps.len());
                for p in &partials {
                    for comp in &comps {
                        let mut q = p.clone();
                        for (slot, &part) in targets.iter().zip(comp) {
                            q[*slot] += part;
                        }
                        next.push(q);
                    }
                }
                partials = next;
            }
            if vanished {
                continue;
            }
            for p in partials {
                out.insert(MultiIndex(p), c.clone());
            }
        }
        Ok(out)
    }

    /// The difference operator
    /// `Delta^s f(z_1, ..., z_s) = sum over nonempty subsets a of {1..s} of
    /// (-1)^(s - |a|) f(sum_{i in a} z_i)`, returned as a polynomial in
    /// `s * nvars` variables ordered block by block, `z_1` first.
    pub fn delta(&self, s: u32) -> Result<BinPoly> {
        if s == 0 {
            return Err(Error::Invalid("delta requires s >= 1".into()));
        }
        let n = self.nvars;
        let s = s as usize;
        let out_n = s * n;
        let mut out = BinPoly::zero(out_n);
        for mask in 1u64..(1u64 << s) {
            let members: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
            let map: Vec<Vec<usize>> = (0..n)
                .map(|v| members.iter().map(|&i| i * n + v).collect())
                .collect();
            let term = self.substitute_sums(out_n, &map)?;
            let negative = (s - members.len()) % 2 == 1;
            for (idx, c) in term.terms {
                out.insert(idx, if negative { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Fixes the variables with `Some(value)` and keeps the others, in order.
    pub fn specialize(&self, values: &[Option<BigInt>]) -> Result<BinPoly> {
        if values.len() != self.nvars {
            return Err(Error::arity(self.nvars, values.len()));
        }
        let free: Vec<usize> = (0..self.nvars).filter(|&v| values[v].is_none()).collect();
        let mut out = BinPoly::zero(free.len());
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(a) = val {
                    t *= binomial(a, idx.0[v]);
                }
            }
            let kept = MultiIndex(free.iter().map(|&v| idx.0[v]).collect());
            out.insert(kept, t);
        }
        Ok(out)
    }

    /// `g(w) = f(basis * w)` where `basis` holds `s` columns of length
    /// `nvars` that are linearly independent over the rationals.
    pub fn pullback(&self, basis: &[Vec<BigInt>]) -> Result<BinPoly> {
        for col in basis {
            if col.len() != self.nvars {
                return Err(Error::arity(self.nvars, col.len()));
            }
        }
        let s = basis.len();
        let rank = Lattice::from_generators(self.nvars, basis)?.rank();
        if rank < s {
            return Err(Error::RankDeficientBasis { rank, columns: s });
        }
        let d = self.degree();
        let coeffs = interpolate(s, &vec![d; s], |w| {
            let z: Vec<BigInt> = (0..self.nvars)
                .map(|r| {
                    basis
                        .iter()
                        .zip(w)
                        .map(|(col, wj)| &col[r] * wj)
                        .sum::<BigInt>()
                })
                .collect();
            self.evaluate(&z).expect("arity checked")
        });
        BinPoly::from_terms(s, coeffs)
    }

    /// Expansion in monomial coordinates.
    pub fn to_monomial(&self) -> MonoPoly {
        let d = self.terms.keys().flat_map(|i| i.0.iter().copied()).max().unwrap_or(0);
        let expansions: Vec<Vec<BigRational>> = (0..=d).map(falling_factorial_coeffs).collect();
        let mut out: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (idx, c) in &self.terms {
            let mut partials: Vec<(Vec<u32>, BigRational)> =
                vec![(Vec::with_capacity(self.nvars), BigRational::from_integer(c.clone()))];
            for &i in &idx.0 {
                let exp = &expansions[i as usize];
                let mut next = Vec::new();
                for (p, w) in &partials {
                    for (k, a) in exp.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let mut q = p.clone();
                        q.push(k as u32);
                        next.push((q, w * a));
                    }
                }
                partials = next;
            }
            for (p, w) in partials {
                *out.entry(MultiIndex(p)).or_insert_with(BigRational::zero) += w;
            }
        }
        MonoPoly::from_map(self.nvars, out)
    }

    /// Homogeneous parts `h_0, ..., h_d` in monomial coordinates, indexed by
    /// degree. The parts of an integer-valued polynomial need not be integer
    /// valued, hence the rational coefficients.
    pub fn homogeneous_parts(&self) -> Vec<MonoPoly> {
        self.to_monomial().homogeneous_parts()
    }

    /// Converts monomial coefficients to the binomial basis, rejecting
    /// polynomials that are not integer valued. Bounded by the default
    /// [`Limits`].
    pub fn from_monomial_coeffs<I, M>(nvars: usize, coeffs: I) -> Result<BinPoly>
    where
        I: IntoIterator<Item = (M, BigRational)>,
        M: Into<MultiIndex>,
    {
        Self::from_monomial_coeffs_with(nvars, coeffs, &Limits::default())
    }

    pub fn from_monomial_coeffs_with<I, M>(nvars: usize, coeffs: I, limits: &Limits) -> Result<BinPoly>
    where
        I: IntoIterator<Item = (M, BigRational)>,
        M: Into<MultiIndex>,
    {
        let mono = MonoPoly::from_terms(nvars, coeffs)?;
        if nvars > limits.max_nvars {
            return Err(Error::CapExceeded {
                what: "variable count",
                value: nvars as u64,
                cap: limits.max_nvars as u64,
            });
        }
        if mono.degree() > limits.max_degree {
            return Err(Error::CapExceeded {
                what: "degree",
                value: mono.degree() as u64,
                cap: limits.max_degree as u64,
            });
        }
        mono.to_binpoly()
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, &i) in idx.0.iter().enumerate() {
                if i > 0 {
                    write!(f, "*C(z{},{i})", v + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Ordered ways of writing `total` as a sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Newton interpolation on the box `prod [0, bounds_v]`: returns the
/// binomial-basis coefficients `Delta^I f(0)` of the unique polynomial with
/// per-variable degree at most `bounds_v` agreeing with `f` on the box.
/// The coefficients are integer combinations of the sampled values.
pub(crate) fn interpolate<T, F>(nvars: usize, bounds: &[u32], mut f: F) -> Vec<(MultiIndex, T)>
where
    F: FnMut(&[BigInt]) -> T,
    T: Clone + Zero,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    debug_assert_eq!(bounds.len(), nvars);
    let sides: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
    let mut values: Vec<T> = BoxIter::new(vec![0; nvars], sides.iter().map(|&s| s as i64).collect())
        .map(|p| {
            let z: Vec<BigInt> = p.into_iter().map(BigInt::from).collect();
            f(&z)
        })
        .collect();
    // strides for row-major layout, last variable fastest
    let mut strides = vec![1usize; nvars];
    for v in (0..nvars.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * sides[v + 1];
    }
    for v in 0..nvars {
        let side = sides[v];
        let stride = strides[v];
        for base in 0..values.len() {
            if !(base / stride).is_multiple_of(side) {
                continue;
            }
            for i in 1..side {
                for k in (i..side).rev() {
                    let hi = base + k * stride;
                    let lo = base + (k - 1) * stride;
                    values[hi] = &values[hi] - &values[lo];
                }
            }
        }
    }
    BoxIter::new(vec![0; nvars], sides.iter().map(|&s| s as i64).collect())
        .zip(values)
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (MultiIndex(p.into_iter().map(|x| x as u32).collect()), c))
        .collect()
}

/// `C(s, m) = sum_{k=1}^{s} (-1)^(s-k) C(s, k) k^m`.
pub fn c_number(s: u32, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for k in 1..=s {
        let term = choose(s, k) * BigInt::from(k).pow(m);
        if (s - k) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct BinPolyJson {
    nvars: usize,
    basis: String,
    terms: Vec<TermJson>,
}

impl Serialize for BinPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BinPolyJson {
            nvars: self.nvars,
            basis: "binomial".into(),
            terms: self
                .terms
                .iter()
                .map(|(i, c)| TermJson {
                    idx: i.0.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BinPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BinPolyJson::deserialize(deserializer)?;
        if raw.basis != "binomial" {
            return Err(D::Error::custom(format!(
                "unsupported basis {:?}, expected \"binomial\"",
                raw.basis
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if !seen.insert(t.idx.clone()) {
                return Err(D::Error::custom(format!("duplicate term index {:?}", t.idx)));
            }
            let c: BigInt = t
                .coef
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coef)))?;
            terms.push((MultiIndex(t.idx), c));
        }
        BinPoly::from_terms(raw.nvars, terms).map_err(D::Error::custom)
    }
}
