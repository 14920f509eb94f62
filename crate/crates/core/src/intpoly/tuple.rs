use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::binpoly::{BinPoly, MultiIndex};

/// Nonempty tuple of polynomials over a shared set of variables, viewed as
/// a map `Z^n -> Z^K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TupleJson", into = "TupleJson")]
pub struct PolyTuple {
    components: Vec<BinPoly>,
}

#[derive(Serialize, Deserialize)]
struct TupleJson {
    components: Vec<BinPoly>,
}

impl TryFrom<TupleJson> for PolyTuple {
    type Error = Error;

    fn try_from(raw: TupleJson) -> Result<Self> {
        PolyTuple::new(raw.components)
    }
}

impl From<PolyTuple> for TupleJson {
    fn from(t: PolyTuple) -> Self {
        TupleJson {
            components: t.components,
        }
    }
}

impl PolyTuple {
    pub fn new(components: Vec<BinPoly>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Invalid("polynomial tuple must be nonempty".into()))?;
        let n = first.nvars();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::arity(n, bad.nvars()));
        }
        Ok(PolyTuple { components })
    }

    pub fn components(&self) -> &[BinPoly] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    /// Number of components `K`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(BinPoly::degree).max().unwrap_or(0)
    }

    pub fn evaluate(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        self.components.iter().map(|c| c.evaluate(z)).collect()
    }

    pub fn eval_i64(&self, z: &[i64]) -> Result<Vec<BigInt>> {
        self.components.iter().map(|c| c.eval_i64(z)).collect()
    }

    pub fn map(&self, f: impl Fn(&BinPoly) -> Result<BinPoly>) -> Result<PolyTuple> {
        PolyTuple::new(self.components.iter().map(f).collect::<Result<_>>()?)
    }

    /// Coefficient map of a family `f_i(a, w)` split into a leading block `a`
    /// of `lead` variables and a trailing block `w`.
    ///
    /// Each `f_i(a, w) - f_i(a, 0)` is written on the binomial basis of `w`;
    /// the coefficient of every basis element `C(w, J)`, `J != 0`, is an
    /// integer-valued polynomial in `a`. Stacking these coefficients over all
    /// `i` and all `J` that occur gives `v(a)`, a map into `Z^K`.
    pub fn coefficient_map(fs: &[BinPoly], lead: usize) -> Result<PolyTuple> {
        let first = fs
            .first()
            .ok_or_else(|| Error::Invalid("need at least one polynomial".into()))?;
        let n = first.nvars();
        if lead > n {
            return Err(Error::Invalid(format!(
                "leading block of {lead} variables exceeds {n}"
            )));
        }
        let mut components = Vec::new();
        for f in fs {
            if f.nvars() != n {
                return Err(Error::arity(n, f.nvars()));
            }
            let trailing: BTreeSet<Vec<u32>> = f
                .terms()
                .map(|(idx, _)| idx.as_slice()[lead..].to_vec())
                .filter(|j| j.iter().any(|&e| e > 0))
                .collect();
            for j in trailing {
                let terms = f
                    .terms()
                    .filter(|(idx, _)| idx.as_slice()[lead..] == j[..])
                    .map(|(idx, c)| (MultiIndex::new(idx.as_slice()[..lead].to_vec()), c.clone()));
                components.push(BinPoly::from_terms(lead, terms)?);
            }
        }
        if components.is_empty() {
            components.push(BinPoly::zero(lead));
        }
        PolyTuple::new(components)
    }
}
