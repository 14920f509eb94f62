use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, lcm_all};
use crate::error::{Error, Result};

use super::binpoly::{interpolate, BinPoly, MultiIndex};

/// Polynomial in monomial coordinates with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoPoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl MonoPoly {
    pub fn zero(nvars: usize) -> Self {
        MonoPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I, M>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, BigRational)>,
        M: Into<MultiIndex>,
    {
        let mut map: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (idx, c) in terms {
            let idx = idx.into();
            if idx.len() != nvars {
                return Err(Error::arity(nvars, idx.len()));
            }
            *map.entry(idx).or_insert_with(BigRational::zero) += c;
        }
        Ok(Self::from_map(nvars, map))
    }

    pub(crate) fn from_map(nvars: usize, mut terms: BTreeMap<MultiIndex, BigRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        MonoPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> BigRational {
        self.terms.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    pub fn var_degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|i| i.as_slice()[var]).max().unwrap_or(0)
    }

    /// True for the zero polynomial and for polynomials whose monomials all
    /// share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(MultiIndex::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_parts(&self) -> Vec<MonoPoly> {
        let d = self.degree() as usize;
        let mut parts = vec![MonoPoly::zero(self.nvars); d + 1];
        for (idx, c) in &self.terms {
            parts[idx.total_degree() as usize]
                .terms
                .insert(idx.clone(), c.clone());
        }
        parts
    }

    pub fn evaluate(&self, z: &[BigInt]) -> Result<BigRational> {
        if z.len() != self.nvars {
            return Err(Error::arity(self.nvars, z.len()));
        }
        let mut acc = BigRational::zero();
        for (idx, c) in &self.terms {
            let mut t = c.clone();
            for (zv, &e) in z.iter().zip(idx.as_slice()) {
                if e > 0 {
                    t *= BigRational::from_integer(zv.pow(e));
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &MonoPoly) -> Result<MonoPoly> {
        if self.nvars != other.nvars {
            return Err(Error::arity(self.nvars, other.nvars));
        }
        let mut map = self.terms.clone();
        for (idx, c) in &other.terms {
            *map.entry(idx.clone()).or_insert_with(BigRational::zero) += c;
        }
        Ok(Self::from_map(self.nvars, map))
    }

    pub fn sub(&self, other: &MonoPoly) -> Result<MonoPoly> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> MonoPoly {
        Self::from_map(
            self.nvars,
            self.terms.iter().map(|(i, c)| (i.clone(), c * k)).collect(),
        )
    }

    /// Binomial-basis coefficients, still rational. They are all integers
    /// exactly when the polynomial is integer valued.
    ///
    /// Computed by sampling on the box `prod [0, deg_v]` and taking forward
    /// differences, the triangular solve that recovers `a_i` from
    /// `f(0), f(1), ..., f(m)` one variable at a time.
    pub fn to_binomial_coeffs(&self) -> Vec<(MultiIndex, BigRational)> {
        let bounds: Vec<u32> = (0..self.nvars).map(|v| self.var_degree(v)).collect();
        interpolate(self.nvars, &bounds, |z| {
            self.evaluate(z).expect("box points have the right arity")
        })
    }

    pub fn to_binpoly(&self) -> Result<BinPoly> {
        let mut terms = Vec::new();
        for (idx, c) in self.to_binomial_coeffs() {
            if !c.is_integer() {
                return Err(Error::NotIntegerValued {
                    index: idx.as_slice().to_vec(),
                    coefficient: c,
                });
            }
            terms.push((idx, c.to_integer()));
        }
        BinPoly::from_terms(self.nvars, terms)
    }

    /// The least positive `M` such that `M * self` is integer valued,
    /// together with that multiple.
    pub fn clear_denominators(&self) -> (BigInt, BinPoly) {
        let coeffs = self.to_binomial_coeffs();
        let m = lcm_all(coeffs.iter().map(|(_, c)| c.denom()));
        let scaled = coeffs
            .into_iter()
            .map(|(i, c)| (i, (c * BigRational::from_integer(m.clone())).to_integer()));
        let poly = BinPoly::from_terms(self.nvars, scaled).expect("arity preserved");
        (m, poly)
    }
}

impl fmt::Display for MonoPoly {
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
            for (v, &e) in idx.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*z{}", v + 1)?,
                    _ => write!(f, "*z{}^{e}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Monomial coefficients of `C(x, i) = x (x - 1) ... (x - i + 1) / i!`,
/// constant term first.
pub(crate) fn falling_factorial_coeffs(i: u32) -> Vec<BigRational> {
    let mut poly = vec![BigInt::one()];
    for k in 0..i {
        // multiply by (x - k)
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] -= c * BigInt::from(k);
        }
        poly = next;
    }
    let denom = factorial(i);
    poly.into_iter()
        .map(|c| BigRational::new(c, denom.clone()))
        .collect()
}
