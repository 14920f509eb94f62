//! Polynomial recurrence on finite measure-preserving systems.
//!
//! A system is a finite set of weighted points with commuting
//! weight-preserving permutations `T_1, ..., T_m`. For polynomials `f_i`
//! with `f_i(0) = 0` the return measure
//! `mu(A ∩ T_1^{-f_1(z)} ... T_m^{-f_m(z)} A)` depends only on `f_i(z)`
//! modulo the orders of the maps, and hence is periodic in `z`. Everything
//! here is computed exactly over one period.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{decode_index, lcm_up_to, parse_rational, rational_to_string};
use crate::error::{Error, Result};
use crate::intpoly::BinPoly;
use crate::ipstruct::{is_ip_star_window, syndetic_gap, WindowVerdict};
use crate::json;
use crate::keyengine::{check_vanishing_at_origin, vanishing_lattice};
use crate::lattice::Lattice;
use crate::limits::{grid_size, Limits};

/// A point reference in a map's image list: a point id, or a position in
/// the point list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Index(usize),
    Name(String),
}

/// The JSON form of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub points: Vec<String>,
    pub weights: BTreeMap<String, String>,
    pub maps: Vec<Vec<PointRef>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSystem {
    points: Vec<String>,
    weights: Vec<BigRational>,
    maps: Vec<Vec<usize>>,
    /// `cycles[i][x] = (cycle id, position)` of `x` under map `i`.
    cycles: Vec<Vec<(usize, usize)>>,
    cycle_lists: Vec<Vec<Vec<usize>>>,
}

impl Serialize for FiniteSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        build_system(SystemSpec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Validates a system description: weights positive and summing to 1,
/// maps bijective, weight preserving and pairwise commuting.
pub fn build_system(spec: SystemSpec) -> Result<FiniteSystem> {
    let SystemSpec { points, weights, maps } = spec;
    if points.is_empty() {
        return Err(Error::Invalid("a system needs at least one point".into()));
    }
    let mut index = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.as_str(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate point {p:?}")));
        }
    }
    if let Some(extra) = weights.keys().find(|k| !index.contains_key(k.as_str())) {
        return Err(Error::UnknownPoint(extra.clone()));
    }
    let mut w = Vec::with_capacity(points.len());
    for p in &points {
        let raw = weights.get(p).ok_or_else(|| Error::InvalidWeight {
            point: p.clone(),
            reason: "missing".into(),
        })?;
        let q = parse_rational(raw).map_err(|e| Error::InvalidWeight {
            point: p.clone(),
            reason: e.to_string(),
        })?;
        if !q.is_positive() {
            return Err(Error::InvalidWeight {
                point: p.clone(),
                reason: format!("weight {raw} is not positive"),
            });
        }
        w.push(q);
    }
    let sum: BigRational = w.iter().sum();
    if !sum.is_one() {
        return Err(Error::WeightsNotNormalized { sum });
    }

    let resolved = maps
        .iter()
        .enumerate()
        .map(|(mi, images)| {
            if images.len() != points.len() {
                return Err(Error::NotBijective {
                    map: mi,
                    reason: format!("{} images for {} points", images.len(), points.len()),
                });
            }
            images
                .iter()
                .map(|r| match r {
                    PointRef::Index(i) if *i < points.len() => Ok(*i),
                    PointRef::Index(i) => Err(Error::NotBijective {
                        map: mi,
                        reason: format!("image index {i} is out of range"),
                    }),
                    PointRef::Name(n) => index
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| Error::UnknownPoint(n.clone())),
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteSystem::from_parts(points, w, resolved)
}

impl FiniteSystem {
    /// Builds and validates a system from resolved parts.
    pub fn from_parts(points: Vec<String>, weights: Vec<BigRational>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let n = points.len();
        if weights.len() != n {
            return Err(Error::arity(n, weights.len()));
        }
        let sum: BigRational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightsNotNormalized { sum });
        }
        for (mi, map) in maps.iter().enumerate() {
            if map.len() != n {
                return Err(Error::NotBijective {
                    map: mi,
                    reason: format!("{} images for {} points", map.len(), n),
                });
            }
            let mut preimage: Vec<Option<usize>> = vec![None; n];
            for (x, &y) in map.iter().enumerate() {
                if y >= n {
                    return Err(Error::NotBijective {
                        map: mi,
                        reason: format!("image index {y} is out of range"),
                    });
                }
                if let Some(prev) = preimage[y] {
                    return Err(Error::NotBijective {
                        map: mi,
                        reason: format!("{} and {} both map to {}", points[prev], points[x], points[y]),
                    });
                }
                preimage[y] = Some(x);
            }
            if let Some(x) = (0..n).find(|&x| weights[map[x]] != weights[x]) {
                return Err(Error::NotMeasurePreserving {
                    map: mi,
                    point: points[x].clone(),
                });
            }
        }
        for a in 0..maps.len() {
            for b in a + 1..maps.len() {
                if let Some(x) = (0..n).find(|&x| maps[a][maps[b][x]] != maps[b][maps[a][x]]) {
                    return Err(Error::NotCommuting {
                        first: a,
                        second: b,
                        point: points[x].clone(),
                    });
                }
            }
        }
        let mut cycles = Vec::with_capacity(maps.len());
        let mut cycle_lists = Vec::with_capacity(maps.len());
        for map in &maps {
            let mut slot = vec![(usize::MAX, 0); n];
            let mut lists = Vec::new();
            for start in 0..n {
                if slot[start].0 != usize::MAX {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut x = start;
                while slot[x].0 == usize::MAX {
                    slot[x] = (lists.len(), cycle.len());
                    cycle.push(x);
                    x = map[x];
                }
                lists.push(cycle);
            }
            cycles.push(slot);
            cycle_lists.push(lists);
        }
        Ok(FiniteSystem {
            points,
            weights,
            maps,
            cycles,
            cycle_lists,
        })
    }

    /// `Z/N` with uniform weights and `T(x) = x + 1`.
    pub fn cyclic(n: usize) -> FiniteSystem {
        let points = (0..n).map(|i| i.to_string()).collect();
        let w = BigRational::new(BigInt::one(), BigInt::from(n));
        let map = (0..n).map(|i| (i + 1) % n).collect();
        FiniteSystem::from_parts(points, vec![w; n], vec![map]).expect("rotation is valid")
    }

    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            points: self.points.clone(),
            weights: self
                .points
                .iter()
                .zip(&self.weights)
                .map(|(p, w)| (p.clone(), rational_to_string(w)))
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|m| m.iter().map(|&i| PointRef::Name(self.points[i].clone())).collect())
                .collect(),
        }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }

    pub fn point_index(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn subset(&self, names: &[String]) -> Result<BTreeSet<usize>> {
        names.iter().map(|n| self.point_index(n)).collect()
    }

    pub fn measure(&self, set: &BTreeSet<usize>) -> BigRational {
        set.iter().map(|&i| &self.weights[i]).sum()
    }

    /// Order of `T_i`, the lcm of its cycle lengths.
    pub fn order(&self, i: usize) -> BigInt {
        self.cycle_lists[i]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&BigInt::from(c.len())))
    }

    /// lcm of the orders of all maps.
    pub fn joint_order(&self) -> BigInt {
        (0..self.maps.len()).fold(BigInt::one(), |acc, i| acc.lcm(&self.order(i)))
    }

    /// `T_i^e (x)` for any integer `e`.
    pub fn power(&self, i: usize, e: &BigInt, x: usize) -> usize {
        let (cycle, pos) = self.cycles[i][x];
        let list = &self.cycle_lists[i][cycle];
        let len = BigInt::from(list.len());
        let shift = e.mod_floor(&len).to_usize().expect("reduced below cycle length");
        list[(pos + shift) % list.len()]
    }

    /// `T_1^{e_1} ... T_m^{e_m} (x)`.
    pub fn apply(&self, exps: &[BigInt], x: usize) -> usize {
        exps.iter().enumerate().fold(x, |y, (i, e)| self.power(i, e, y))
    }

    /// Exact `mu(A ∩ T^{-1} A)` with `T = T_1^{e_1} ... T_m^{e_m}`.
    pub fn return_measure(&self, a: &BTreeSet<usize>, exps: &[BigInt]) -> Result<BigRational> {
        if exps.len() != self.maps.len() {
            return Err(Error::arity(self.maps.len(), exps.len()));
        }
        if let Some(&bad) = a.iter().find(|&&x| x >= self.points.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        Ok(a.iter()
            .filter(|&&x| a.contains(&self.apply(exps, x)))
            .map(|&x| &self.weights[x])
            .sum())
    }
}

/// A set `A`, one polynomial per map, and a tolerance `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceQuery {
    #[serde(rename = "A")]
    pub set: Vec<String>,
    pub fs: Vec<BinPoly>,
    #[serde(with = "json::rational", default = "zero_rational")]
    pub epsilon: BigRational,
}

fn zero_rational() -> BigRational {
    BigRational::zero()
}

impl RecurrenceQuery {
    pub fn new(set: Vec<String>, fs: Vec<BinPoly>, epsilon: BigRational) -> Self {
        RecurrenceQuery { set, fs, epsilon }
    }

    pub fn nvars(&self) -> usize {
        self.fs.first().map_or(0, BinPoly::nvars)
    }

    pub fn degree(&self) -> u32 {
        self.fs.iter().map(BinPoly::degree).max().unwrap_or(0)
    }

    /// Checks the query against a system and resolves `A`.
    pub fn validate(&self, sys: &FiniteSystem, limits: &Limits) -> Result<BTreeSet<usize>> {
        if self.fs.len() != sys.num_maps() {
            return Err(Error::arity(sys.num_maps(), self.fs.len()));
        }
        if self.fs.is_empty() {
            return Err(Error::Invalid("a query needs at least one polynomial".into()));
        }
        for f in &self.fs {
            limits.check_poly(f)?;
        }
        check_vanishing_at_origin(self.nvars(), &self.fs)?;
        if self.epsilon.is_negative() {
            return Err(Error::Invalid(format!(
                "epsilon must be non-negative, got {}",
                rational_to_string(&self.epsilon)
            )));
        }
        sys.subset(&self.set)
    }
}

/// Per-coordinate period `q * lcm(1..d)` of `z -> f(z) mod q`, where `q`
/// is the joint order. Verified on one period grid.
pub fn system_period(sys: &FiniteSystem, fs: &[BinPoly], limits: &Limits) -> Result<Vec<u64>> {
    let n = fs.first().map_or(0, BinPoly::nvars);
    check_vanishing_at_origin(n, fs)?;
    let q = sys.joint_order();
    let d = fs.iter().map(BinPoly::degree).max().unwrap_or(0);
    let big = &q * lcm_up_to(d);
    let side = big.to_u64().ok_or(Error::SweepCapExceeded {
        points: u64::MAX,
        cap: limits.sweep_cap,
    })?;
    let period = vec![side; n];
    let total = grid_size(&period);
    limits.check_sweep(total)?;

    let bad = (0..total).into_par_iter().find_first(|&idx| {
        let z: Vec<BigInt> = decode_index(idx, &period).into_iter().map(BigInt::from).collect();
        (0..n).any(|j| {
            let mut shifted = z.clone();
            shifted[j] += &big;
            fs.iter().any(|f| {
                let a = f.evaluate(&z).expect("arity checked");
                let b = f.evaluate(&shifted).expect("arity checked");
                !(a - b).mod_floor(&q).is_zero()
            })
        })
    });
    match bad {
        Some(idx) => Err(Error::VerificationFailed(format!(
            "period {side} fails at residue {:?}",
            decode_index(idx, &period)
        ))),
        None => Ok(period),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub residue: Vec<u64>,
    #[serde(with = "json::int_vec")]
    pub exponents: Vec<BigInt>,
    #[serde(with = "json::rational")]
    pub measure: BigRational,
    pub member: bool,
}

/// `R_epsilon` as a periodic set: `z` belongs iff `z mod period` is a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueVerdict {
    pub period: Vec<u64>,
    pub members: Vec<Vec<u64>>,
    #[serde(with = "json::rational")]
    pub epsilon: BigRational,
    #[serde(with = "json::rational")]
    pub measure: BigRational,
    #[serde(with = "json::rational")]
    pub measure_squared: BigRational,
    #[serde(with = "json::rational")]
    pub threshold: BigRational,
    pub rows: Vec<ResidueRow>,
}

impl ResidueVerdict {
    pub fn contains(&self, z: &[BigInt]) -> bool {
        if z.len() != self.period.len() {
            return false;
        }
        let r: Vec<u64> = z
            .iter()
            .zip(&self.period)
            .map(|(x, &n)| x.mod_floor(&BigInt::from(n)).to_u64().expect("reduced"))
            .collect();
        self.members.binary_search(&r).is_ok()
    }
}

fn sweep_rows(
    sys: &FiniteSystem,
    query: &RecurrenceQuery,
    a: &BTreeSet<usize>,
    period: &[u64],
    threshold: &BigRational,
) -> Result<Vec<ResidueRow>> {
    let total = grid_size(period);
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let residue = decode_index(idx, period);
            let z: Vec<BigInt> = residue.iter().map(|&x| BigInt::from(x)).collect();
            let exponents: Vec<BigInt> = query.fs.iter().map(|f| f.evaluate(&z)).collect::<Result<_>>()?;
            let measure = sys.return_measure(a, &exponents)?;
            let member = &measure >= threshold;
            Ok(ResidueRow {
                residue,
                exponents,
                measure,
                member,
            })
        })
        .collect()
}

/// Exact `R_epsilon = {z : mu(A ∩ T^{-f(z)} A) >= mu(A)^2 - epsilon}` over
/// one period.
pub fn r_epsilon(sys: &FiniteSystem, query: &RecurrenceQuery, limits: &Limits) -> Result<ResidueVerdict> {
    let a = query.validate(sys, limits)?;
    let period = system_period(sys, &query.fs, limits)?;
    let measure = sys.measure(&a);
    let measure_squared = &measure * &measure;
    let threshold = &measure_squared - &query.epsilon;
    let rows = sweep_rows(sys, query, &a, &period, &threshold)?;
    let members = rows.iter().filter(|r| r.member).map(|r| r.residue.clone()).collect();
    Ok(ResidueVerdict {
        period,
        members,
        epsilon: query.epsilon.clone(),
        measure,
        measure_squared,
        threshold,
        rows,
    })
}

/// Sup of the return measure over the vanishing lattice, compared with
/// `mu(A)^2`.
///
/// The vanishing lattice stands in for the limit along an idempotent: it
/// has finite index, so it belongs to every idempotent ultrafilter, and on
/// a finite system the return measure is constant on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhintchineReport {
    pub period: Vec<u64>,
    pub surrogate: Lattice,
    #[serde(with = "json::rational")]
    pub sup_value: BigRational,
    #[serde(with = "json::rational")]
    pub bound: BigRational,
    pub holds: bool,
    pub witness: Vec<u64>,
    /// Maximum over the whole period, without the lattice restriction.
    #[serde(with = "json::rational")]
    pub global_max: BigRational,
}

pub fn verify_khintchine(sys: &FiniteSystem, query: &RecurrenceQuery, limits: &Limits) -> Result<KhintchineReport> {
    let a = query.validate(sys, limits)?;
    let period = system_period(sys, &query.fs, limits)?;
    let surrogate = vanishing_lattice(query.nvars(), &query.fs, &sys.joint_order())?;
    let measure = sys.measure(&a);
    let bound = &measure * &measure;
    let rows = sweep_rows(sys, query, &a, &period, &bound)?;

    let mut best: Option<&ResidueRow> = None;
    for row in &rows {
        let z: Vec<BigInt> = row.residue.iter().map(|&x| BigInt::from(x)).collect();
        if surrogate.contains(&z)? && best.is_none_or(|b| row.measure > b.measure) {
            best = Some(row);
        }
    }
    let best = best.expect("the zero residue lies on every lattice");
    let global_max = rows
        .iter()
        .map(|r| &r.measure)
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    Ok(KhintchineReport {
        holds: best.measure >= bound,
        sup_value: best.measure.clone(),
        witness: best.residue.clone(),
        period,
        surrogate,
        bound,
        global_max,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IpStarReport {
    pub horizon: u64,
    pub window: WindowVerdict,
    pub syndetic_gap: Option<u64>,
}

impl IpStarReport {
    pub fn holds(&self) -> bool {
        self.window.holds() && self.syndetic_gap.is_some()
    }
}

/// Lifts a one-variable residue verdict to `S ⊆ [1, H]` with
/// `H = max(W k, 2 N)` and runs the windowed IP* and gap checks on it.
pub fn ip_star_verdict(verdict: &ResidueVerdict, k: usize, w: u64, limits: &Limits) -> Result<IpStarReport> {
    let [period] = verdict.period[..] else {
        return Err(Error::Invalid(format!(
            "IP* windows are defined for one variable, got {}",
            verdict.period.len()
        )));
    };
    let horizon = (w * k as u64).max(2 * period);
    let s: BTreeSet<u64> = (1..=horizon)
        .filter(|t| verdict.members.binary_search(&vec![t % period]).is_ok())
        .collect();
    Ok(IpStarReport {
        horizon,
        window: is_ip_star_window(&s, k, w, limits)?,
        syndetic_gap: syndetic_gap(&s, 1, horizon)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::to_big;
    use crate::ipstruct::Verdict;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn square() -> BinPoly {
        BinPoly::from_i64_terms(1, &[(&[1], 1), (&[2], 2)]).unwrap()
    }

    fn z2_times_z3() -> FiniteSystem {
        let points: Vec<String> = (0..2).flat_map(|a| (0..3).map(move |b| format!("{a}{b}"))).collect();
        let t1 = (0..6).map(|i| ((i / 3 + 1) % 2) * 3 + i % 3).collect();
        let t2 = (0..6).map(|i| (i / 3) * 3 + (i % 3 + 1) % 3).collect();
        FiniteSystem::from_parts(points, vec![q("1/6"); 6], vec![t1, t2]).unwrap()
    }

    fn spec(json: &str) -> Result<FiniteSystem> {
        build_system(serde_json::from_str(json).unwrap())
    }

    #[test]
    fn builds_valid_systems() {
        let sys = spec(r#"{"points":["0","1","2","3"],"weights":{"0":"1/4","1":"1/4","2":"1/4","3":"1/4"},"maps":[["1","2","3","0"]]}"#).unwrap();
        assert_eq!(sys, FiniteSystem::cyclic(4));
        assert_eq!(sys.order(0), BigInt::from(4));
        let prod = z2_times_z3();
        assert_eq!(prod.joint_order(), BigInt::from(6));
        let by_index = spec(r#"{"points":["a","b"],"weights":{"a":"1/2","b":"1/2"},"maps":[[1,0]]}"#).unwrap();
        assert_eq!(by_index.maps(), &[vec![1, 0]]);
    }

    #[test]
    fn rejects_invalid_systems() {
        let err = spec(r#"{"points":["a","b"],"weights":{"a":"1/2","b":"1/3"},"maps":[]}"#).unwrap_err();
        assert_eq!(err, Error::WeightsNotNormalized { sum: q("5/6") });
        let err = spec(r#"{"points":["a","b"],"weights":{"a":"1/2","b":"1/2"},"maps":[["a","a"]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotBijective { map: 0, .. }));
        let err = spec(r#"{"points":["a","b"],"weights":{"a":"1/4","b":"3/4"},"maps":[["b","a"]]}"#).unwrap_err();
        assert_eq!(err, Error::NotMeasurePreserving { map: 0, point: "a".into() });
        let err = spec(r#"{"points":["a","b"],"weights":{"a":"1/2","b":"1/2","c":"0"},"maps":[]}"#).unwrap_err();
        assert_eq!(err, Error::UnknownPoint("c".into()));
        let err = spec(r#"{"points":["a","b"],"weights":{"a":"1","b":"0"},"maps":[]}"#).unwrap_err();
        assert!(matches!(err, Error::InvalidWeight { .. }));
        // 3-cycle and a transposition
        let err = spec(r#"{"points":["0","1","2"],"weights":{"0":"1/3","1":"1/3","2":"1/3"},"maps":[[1,2,0],[1,0,2]]}"#).unwrap_err();
        assert_eq!(
            err,
            Error::NotCommuting {
                first: 0,
                second: 1,
                point: "0".into()
            }
        );
    }

    #[test]
    fn return_measures() {
        let sys = FiniteSystem::cyclic(4);
        let a: BTreeSet<usize> = [0].into();
        assert_eq!(sys.return_measure(&a, &to_big(&[2])).unwrap(), q("0"));
        assert_eq!(sys.return_measure(&a, &to_big(&[0])).unwrap(), q("1/4"));
        assert_eq!(sys.return_measure(&a, &to_big(&[4])).unwrap(), q("1/4"));
        assert_eq!(sys.return_measure(&a, &to_big(&[-8])).unwrap(), q("1/4"));
        assert!(sys.return_measure(&a, &to_big(&[1, 1])).is_err());
    }

    #[test]
    fn periods() {
        let l = Limits::default();
        assert_eq!(system_period(&FiniteSystem::cyclic(4), &[square()], &l).unwrap(), vec![8]);
        let linear = BinPoly::variable(1, 0).scale(&3.into());
        assert_eq!(system_period(&FiniteSystem::cyclic(5), &[linear], &l).unwrap(), vec![5]);
        let trivial = FiniteSystem::from_parts(vec!["x".into()], vec![q("1")], vec![vec![0]]).unwrap();
        let cube = BinPoly::from_i64_terms(1, &[(&[3], 1)]).unwrap();
        assert_eq!(system_period(&trivial, &[cube], &l).unwrap(), vec![6]);
    }

    #[test]
    fn r_epsilon_examples() {
        let l = Limits::default();
        let sys = FiniteSystem::cyclic(4);
        let query = RecurrenceQuery::new(vec!["0".into()], vec![square()], q("1/100"));
        let v = r_epsilon(&sys, &query, &l).unwrap();
        assert_eq!(v.period, vec![8]);
        assert_eq!(v.members, vec![vec![0], vec![2], vec![4], vec![6]]);
        assert!(v.contains(&to_big(&[-2])));
        assert!(!v.contains(&to_big(&[9])));

        let generous = RecurrenceQuery::new(vec!["0".into()], vec![square()], q("1/16"));
        assert_eq!(r_epsilon(&sys, &generous, &l).unwrap().members.len(), 8);
        let whole = RecurrenceQuery::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![square()],
            q("0"),
        );
        assert_eq!(r_epsilon(&sys, &whole, &l).unwrap().members.len(), 8);

        let bad = RecurrenceQuery::new(vec!["0".into()], vec![square(), square()], q("0"));
        assert!(matches!(r_epsilon(&sys, &bad, &l), Err(Error::ArityMismatch { .. })));
        let tiny = l.with_sweep_cap(4);
        assert!(matches!(r_epsilon(&sys, &query, &tiny), Err(Error::SweepCapExceeded { .. })));
    }

    #[test]
    fn khintchine_examples() {
        let l = Limits::default();
        let query = RecurrenceQuery::new(vec!["0".into()], vec![square()], q("0"));
        let r = verify_khintchine(&FiniteSystem::cyclic(4), &query, &l).unwrap();
        assert!(r.holds);
        assert_eq!(r.sup_value, q("1/4"));
        assert_eq!(r.bound, q("1/16"));
        assert_eq!(r.witness, vec![0]);
        assert_eq!(r.surrogate, Lattice::scaled(1, &8.into()));

        let z = BinPoly::variable(1, 0);
        let query = RecurrenceQuery::new(vec!["00".into()], vec![z, square()], q("0"));
        let r = verify_khintchine(&z2_times_z3(), &query, &l).unwrap();
        assert!(r.holds);
        assert_eq!(r.sup_value, q("1/6"));
        assert_eq!(r.period, vec![12]);
        let v = r_epsilon(&z2_times_z3(), &query, &l).unwrap();
        assert_eq!(v.members, vec![vec![0], vec![6]]);
    }

    #[test]
    fn ip_star_verdicts() {
        let l = Limits::default();
        let sys = FiniteSystem::cyclic(4);
        let query = RecurrenceQuery::new(vec!["0".into()], vec![square()], q("1/100"));
        let v = r_epsilon(&sys, &query, &l).unwrap();
        let r = ip_star_verdict(&v, 2, 8, &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.horizon, 16);
        assert_eq!(r.syndetic_gap, Some(2));

        let mut fours = v.clone();
        fours.period = vec![4];
        fours.members = vec![vec![0]];
        let r = ip_star_verdict(&fours, 2, 2, &l).unwrap();
        assert_eq!(r.window.verdict, Verdict::Fails(vec![1, 1]));

        let mut all = v;
        all.members = (0..8).map(|i| vec![i]).collect();
        let r = ip_star_verdict(&all, 2, 8, &l).unwrap();
        assert!(r.holds());
        assert_eq!(r.syndetic_gap, Some(1));
    }

    #[test]
    fn short_windows_can_miss_thin_return_sets() {
        // R_0 for a single rotation of Z/3 is 3Z; FS(1, 1) = {1, 2} avoids it.
        // Only windows with k >= 3 generators are forced to meet 3Z.
        let l = Limits::default();
        let query = RecurrenceQuery::new(vec!["0".into()], vec![BinPoly::variable(1, 0)], q("0"));
        let v = r_epsilon(&FiniteSystem::cyclic(3), &query, &l).unwrap();
        assert_eq!(v.members, vec![vec![0]]);
        let r = ip_star_verdict(&v, 2, 8, &l).unwrap();
        assert_eq!(r.window.verdict, Verdict::Fails(vec![1, 1]));
        assert!(ip_star_verdict(&v, 3, 8, &l).unwrap().holds());
    }
}
