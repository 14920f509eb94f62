//! Finitely generated subgroups of `Z^n` in Hermite normal form.
//!
//! A [`Lattice`] stores an echelon basis: basis vector `j` has its first
//! nonzero coordinate (the pivot) at a position strictly after the pivot of
//! vector `j - 1`, every pivot is positive, and the entries of earlier basis
//! vectors at a pivot position are reduced into `[0, pivot)`. This form is
//! unique, so two lattices are equal as subgroups exactly when they are
//! equal as values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{lcm_all, BoxIter};
use crate::error::{Error, Result};
use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Index of a subgroup in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl std::fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

impl Lattice {
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Lattice> {
        for g in gens {
            if g.len() != ambient {
                return Err(Error::arity(ambient, g.len()));
            }
        }
        Ok(Lattice {
            ambient,
            basis: echelon(gens.to_vec(), ambient),
        })
    }

    pub fn from_i64(ambient: usize, gens: &[&[i64]]) -> Result<Lattice> {
        let gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_generators(ambient, &gens)
    }

    pub fn zero(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Lattice {
        Self::scaled(ambient, &BigInt::one())
    }

    /// `N * Z^n`.
    pub fn scaled(ambient: usize, n: &BigInt) -> Lattice {
        assert!(n.is_positive(), "scale must be positive");
        let basis = (0..ambient)
            .map(|j| {
                let mut col = vec![BigInt::zero(); ambient];
                col[j] = n.clone();
                col
            })
            .collect();
        Lattice { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis vectors (the columns of the HNF basis matrix).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| pivot_of(b).expect("nonzero")).collect()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ambient {
            Err(Error::arity(self.ambient, v.len()))
        } else {
            Ok(())
        }
    }

    /// Rational coordinates of `v` in the canonical basis, or `None` when `v`
    /// lies outside the rational span.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigRational>>> {
        self.check_len(v)?;
        let mut rest: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for b in &self.basis {
            let p = pivot_of(b).expect("nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let c = &rest[p] / BigRational::from_integer(b[p].clone());
            if !c.is_zero() {
                for (r, bi) in rest.iter_mut().zip(b) {
                    *r -= &c * BigRational::from_integer(bi.clone());
                }
            }
            coords.push(c);
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self
            .coordinates(v)?
            .is_some_and(|c| c.iter().all(|x| x.is_integer())))
    }

    pub fn index(&self) -> LatticeIndex {
        if self.rank() < self.ambient {
            LatticeIndex::Infinite
        } else {
            LatticeIndex::Finite(self.basis.iter().enumerate().map(|(j, b)| b[j].clone()).product())
        }
    }

    /// Least `N >= 1` with `N * v` in the lattice; `None` when `v` is outside
    /// the rational span.
    ///
    /// Coordinates in a basis are unique, so `N * v` is a member exactly when
    /// `N` clears every coordinate denominator.
    pub fn smallest_multiple(&self, v: &[BigInt]) -> Result<Option<BigInt>> {
        let Some(coords) = self.coordinates(v)? else {
            return Ok(None);
        };
        let n = lcm_all(coords.iter().map(|c| c.denom()));
        debug_assert!(self.contains(&v.iter().map(|x| x * &n).collect::<Vec<_>>())?);
        Ok(Some(n))
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::arity(self.ambient, other.ambient));
        }
        // x with sum_j x_j b_j + sum_k x'_k c_k = 0 gives the common element sum_j x_j b_j
        let gens: Vec<Vec<BigInt>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let relations = integer_relations(&gens, self.ambient);
        let r = self.rank();
        let common: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|x| {
                (0..self.ambient)
                    .map(|i| (0..r).map(|j| &x[j] * &self.basis[j][i]).sum())
                    .collect()
            })
            .collect();
        Lattice::from_generators(self.ambient, &common)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integer vectors orthogonal to every member.
    pub fn orthogonal_complement(&self) -> Lattice {
        let columns: Vec<Vec<BigInt>> = (0..self.ambient)
            .map(|i| self.basis.iter().map(|b| b[i].clone()).collect())
            .collect();
        let rel = integer_relations(&columns, self.rank());
        Lattice {
            ambient: self.ambient,
            basis: echelon(rel, self.ambient),
        }
    }

    /// `span_Q(L) ∩ Z^n`, the smallest saturated lattice containing `L`.
    pub fn saturation(&self) -> Lattice {
        self.orthogonal_complement().orthogonal_complement()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Representatives of `Z^n / L` for a full-rank lattice: the box
    /// `prod [0, pivot_j)`, listed lexicographically.
    pub fn fundamental_domain(&self) -> Result<impl Iterator<Item = Vec<BigInt>>> {
        if self.rank() < self.ambient {
            return Err(Error::NotFullRank {
                expected: self.ambient,
                got: self.rank(),
            });
        }
        let hi: Vec<i64> = self
            .basis
            .iter()
            .enumerate()
            .map(|(j, b)| {
                i64::try_from(&b[j]).map_err(|_| Error::CapExceeded {
                    what: "pivot",
                    value: u64::MAX,
                    cap: i64::MAX as u64,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BoxIter::new(vec![0; self.ambient], hi).map(|p| p.into_iter().map(BigInt::from).collect()))
    }

    /// `sum_j t_j b_j`.
    pub fn combine(&self, t: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (tj, b) in t.iter().zip(&self.basis) {
            if tj.is_zero() {
                continue;
            }
            for (o, bi) in out.iter_mut().zip(b) {
                *o += tj * bi;
            }
        }
        out
    }

    /// The lattice points `sum_j t_j b_j` with every `t_j` in `[0, d]`.
    ///
    /// A polynomial identity of per-variable degree at most `d` in the
    /// lattice coordinates `t` that holds on these points holds on the whole
    /// lattice: Newton's forward differences express every binomial-basis
    /// coefficient as an integer combination of the sampled values. Checks of
    /// the form "`g(z) ∈ H` for all `z ∈ L`", with `g` integer valued and `H`
    /// a subgroup, therefore reduce to these `(d + 1)^rank` points.
    pub fn probe_points(&self, d: u32) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        BoxIter::cube(self.rank(), 0, d as i64 + 1)
            .map(move |t| self.combine(&t.into_iter().map(BigInt::from).collect::<Vec<_>>()))
    }
}

fn pivot_of(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Integer row echelon form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`; zero rows are dropped.
pub(crate) fn echelon(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut top = 0;
    for col in 0..width {
        if top >= rows.len() {
            break;
        }
        loop {
            let best = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut clean = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                sub_multiple(&mut rows, i, top, &q);
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[top][col].is_zero() {
            continue;
        }
        if rows[top][col].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..top {
            let q = rows[i][col].div_floor(&rows[top][col]);
            if !q.is_zero() {
                sub_multiple(&mut rows, i, top, &q);
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// A basis of `{ x in Z^m : sum_k x_k gens_k = 0 }` for `m` generators of
/// length `width`.
pub(crate) fn integer_relations(gens: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    let m = gens.len();
    let augmented: Vec<Vec<BigInt>> = gens
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut row = g.clone();
            row.extend((0..m).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    echelon(augmented, width + m)
        .into_iter()
        .filter(|row| row[..width].iter().all(Zero::is_zero))
        .map(|row| row[width..].to_vec())
        .collect()
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    ambient: usize,
    #[serde(with = "json::int_matrix")]
    basis: Vec<Vec<BigInt>>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            ambient: self.ambient,
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

/// Accepts any generating set and canonicalizes it.
impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LatticeJson::deserialize(d)?;
        Lattice::from_generators(raw.ambient, &raw.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::to_big;

    fn lat(n: usize, gens: &[&[i64]]) -> Lattice {
        Lattice::from_i64(n, gens).unwrap()
    }

    #[test]
    fn hnf_examples() {
        let l = lat(2, &[&[2, 0], &[0, 3], &[1, 1]]);
        assert_eq!(l, Lattice::full(2));
        assert_eq!(l.basis(), &[to_big(&[1, 0]), to_big(&[0, 1])]);

        let z = lat(2, &[]);
        assert_eq!(z.rank(), 0);
        assert_eq!(z, Lattice::zero(2));

        let d = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(d.basis(), &[to_big(&[2, 0]), to_big(&[0, 3])]);
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn off_pivot_entries_are_reduced() {
        let l = lat(2, &[&[1, 7], &[0, 3]]);
        assert_eq!(l.basis(), &[to_big(&[1, 1]), to_big(&[0, 3])]);
        let neg = lat(2, &[&[-2, -4]]);
        assert_eq!(neg.basis(), &[to_big(&[2, 4])]);
    }

    #[test]
    fn rank_and_index() {
        assert_eq!(Lattice::full(2).rank(), 2);
        assert_eq!(lat(2, &[&[2, 4]]).rank(), 1);
        assert_eq!(lat(2, &[&[2, 0], &[0, 3]]).index(), LatticeIndex::Finite(6.into()));
        assert_eq!(Lattice::full(2).index(), LatticeIndex::Finite(1.into()));
        assert_eq!(lat(2, &[&[2, 4]]).index(), LatticeIndex::Infinite);
        assert_eq!(Lattice::scaled(2, &4.into()).index(), LatticeIndex::Finite(16.into()));
    }

    #[test]
    fn membership() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert!(l.contains(&to_big(&[4, 6])).unwrap());
        assert!(!l.contains(&to_big(&[1, 0])).unwrap());
        assert!(l.contains(&to_big(&[0, 0])).unwrap());
        assert!(Lattice::zero(3).contains(&to_big(&[0, 0, 0])).unwrap());
        assert!(matches!(
            l.contains(&to_big(&[1])),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn smallest_multiples() {
        let l = lat(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(l.smallest_multiple(&to_big(&[1, 1])).unwrap(), Some(6.into()));
        assert_eq!(l.smallest_multiple(&to_big(&[4, 3])).unwrap(), Some(1.into()));
        assert_eq!(Lattice::zero(2).smallest_multiple(&to_big(&[1, 0])).unwrap(), None);
        assert_eq!(lat(2, &[&[1, 2]]).smallest_multiple(&to_big(&[1, 3])).unwrap(), None);
    }

    #[test]
    fn intersections() {
        let a = lat(1, &[&[2]]);
        let b = lat(1, &[&[3]]);
        assert_eq!(a.intersect(&b).unwrap(), lat(1, &[&[6]]));
        let l = lat(2, &[&[2, 1], &[0, 5]]);
        assert_eq!(l.intersect(&Lattice::full(2)).unwrap(), l);
        let c = lat(2, &[&[2, 0], &[0, 1]]);
        let d = lat(2, &[&[1, 0], &[0, 3]]);
        assert_eq!(c.intersect(&d).unwrap(), lat(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(c.intersect(&Lattice::zero(2)).unwrap(), Lattice::zero(2));
    }

    #[test]
    fn scaled_lattices() {
        assert_eq!(Lattice::scaled(2, &1.into()), Lattice::full(2));
        assert_eq!(Lattice::scaled(1, &6.into()), lat(1, &[&[6]]));
    }

    #[test]
    fn saturation_of_sublattices() {
        let l = lat(2, &[&[2, 4]]);
        assert_eq!(l.saturation(), lat(2, &[&[1, 2]]));
        assert!(!l.is_saturated());
        assert_eq!(lat(2, &[&[2, 0], &[0, 2]]).saturation(), Lattice::full(2));
        assert_eq!(Lattice::zero(3).saturation(), Lattice::zero(3));
        assert!(lat(3, &[&[1, 1, 0]]).is_saturated());
    }

    #[test]
    fn fundamental_domain_has_index_points() {
        let l = lat(2, &[&[2, 1], &[0, 3]]);
        let pts: Vec<_> = l.fundamental_domain().unwrap().collect();
        assert_eq!(pts.len(), 6);
        // distinct cosets
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                let diff: Vec<BigInt> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                assert!(!l.contains(&diff).unwrap());
            }
        }
        assert!(lat(2, &[&[1, 1]]).fundamental_domain().is_err());
    }

    #[test]
    fn json_canonicalizes() {
        let l: Lattice = serde_json::from_str(r#"{"ambient":2,"basis":[[1,1],[2,0],[0,3]]}"#).unwrap();
        assert_eq!(l, Lattice::full(2));
        let s = serde_json::to_string(&lat(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(s, r#"{"ambient":2,"basis":[[2,0],[0,3]]}"#);
    }
}
