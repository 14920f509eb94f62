//! Finite combinatorics of finite sets under union: IP-sets, IP-rings,
//! the map `alpha -> n_alpha`, and windowed Hindman-type searches.
//!
//! Indices into generator sequences start at 0; IP-set values are positive
//! integers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::BoxIter;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Nonempty, strictly increasing set of non-negative indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinSet(Vec<u64>);

impl FinSet {
    pub fn new(elements: Vec<u64>) -> Result<FinSet> {
        if elements.is_empty() {
            return Err(Error::InvalidFinSet("set must be nonempty".into()));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFinSet(format!(
                "elements must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(FinSet(elements))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(elements: impl IntoIterator<Item = u64>) -> Result<FinSet> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        FinSet::new(set.into_iter().collect())
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn min(&self) -> u64 {
        self.0[0]
    }

    pub fn max(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        let a: BTreeSet<_> = self.0.iter().collect();
        other.0.iter().all(|x| !a.contains(x))
    }
}

impl TryFrom<Vec<u64>> for FinSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<FinSet> {
        FinSet::new(v)
    }
}

impl From<FinSet> for Vec<u64> {
    fn from(s: FinSet) -> Vec<u64> {
        s.0
    }
}

pub fn union_op(a: &FinSet, b: &FinSet) -> FinSet {
    FinSet::from_unsorted(a.0.iter().chain(&b.0).copied()).expect("union of nonempty sets")
}

/// `max(a) < min(b)`.
pub fn block_less(a: &FinSet, b: &FinSet) -> bool {
    a.max() < b.min()
}

/// Generators `s_1, ..., s_k` of a finite IP-set; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteIP(Vec<u64>);

impl FiniteIP {
    pub fn new(generators: Vec<u64>) -> Result<FiniteIP> {
        if generators.is_empty() {
            return Err(Error::Invalid("an IP-set needs at least one generator".into()));
        }
        if generators.contains(&0) {
            return Err(Error::Invalid("generators must be positive".into()));
        }
        Ok(FiniteIP(generators))
    }

    pub fn generators(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for FiniteIP {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<FiniteIP> {
        FiniteIP::new(v)
    }
}

impl From<FiniteIP> for Vec<u64> {
    fn from(ip: FiniteIP) -> Vec<u64> {
        ip.0
    }
}

/// All nonempty-subset sums of the generators.
pub fn fs_expand(ip: &FiniteIP, limits: &Limits) -> Result<BTreeSet<u64>> {
    let k = ip.0.len();
    if k > limits.max_fs_generators {
        return Err(Error::CapExceeded {
            what: "generator count",
            value: k as u64,
            cap: limits.max_fs_generators as u64,
        });
    }
    Ok(subset_sums(&ip.0))
}

fn subset_sums(gens: &[u64]) -> BTreeSet<u64> {
    let mut sums = BTreeSet::new();
    for &s in gens {
        let shifted: Vec<u64> = sums.iter().map(|x| x + s).collect();
        sums.extend(shifted);
        sums.insert(s);
    }
    sums
}

/// A block-ordered prefix `alpha_0 < alpha_1 < ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FinSet>", into = "Vec<FinSet>")]
pub struct IpRing(Vec<FinSet>);

pub fn validate_ip_ring(blocks: Vec<FinSet>) -> Result<IpRing> {
    if blocks.is_empty() {
        return Err(Error::Invalid("an IP-ring needs at least one block".into()));
    }
    if let Some(i) = (1..blocks.len()).find(|&i| !block_less(&blocks[i - 1], &blocks[i])) {
        return Err(Error::NotBlockOrdered { index: i });
    }
    Ok(IpRing(blocks))
}

impl IpRing {
    pub fn blocks(&self) -> &[FinSet] {
        &self.0
    }

    /// Unions of all nonempty subfamilies of the stored blocks.
    pub fn finite_unions(&self, limits: &Limits) -> Result<Vec<FinSet>> {
        let k = self.0.len();
        if k > limits.max_fs_generators {
            return Err(Error::CapExceeded {
                what: "block count",
                value: k as u64,
                cap: limits.max_fs_generators as u64,
            });
        }
        let out = (1u64..1 << k)
            .map(|mask| {
                FinSet::new(
                    (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .flat_map(|i| self.0[i].0.iter().copied())
                        .collect(),
                )
                .expect("blocks are ordered")
            })
            .collect();
        Ok(out)
    }
}

impl TryFrom<Vec<FinSet>> for IpRing {
    type Error = Error;

    fn try_from(v: Vec<FinSet>) -> Result<IpRing> {
        validate_ip_ring(v)
    }
}

impl From<IpRing> for Vec<FinSet> {
    fn from(r: IpRing) -> Vec<FinSet> {
        r.0
    }
}

/// Stored prefix `n_0, n_1, ...` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IpValueMap(Vec<u64>);

impl IpValueMap {
    pub fn new(gens: Vec<u64>) -> Result<IpValueMap> {
        if gens.contains(&0) {
            return Err(Error::Invalid("IP generators must be positive".into()));
        }
        Ok(IpValueMap(gens))
    }

    pub fn gens(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for IpValueMap {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<IpValueMap> {
        IpValueMap::new(v)
    }
}

impl From<IpValueMap> for Vec<u64> {
    fn from(m: IpValueMap) -> Vec<u64> {
        m.0
    }
}

/// `n_alpha = sum of n_i over i in alpha`.
pub fn ip_value(map: &IpValueMap, alpha: &FinSet) -> Result<u64> {
    let len = map.0.len();
    alpha.0.iter().try_fold(0u64, |acc, &i| {
        let n = map.0.get(i as usize).ok_or(Error::IndexOutOfRange {
            index: i as usize,
            len,
        })?;
        acc.checked_add(*n)
            .ok_or_else(|| Error::Invalid("IP value overflows u64".into()))
    })
}

pub fn ip_vector(maps: &[IpValueMap], alpha: &FinSet) -> Result<Vec<u64>> {
    maps.iter().map(|m| ip_value(m, alpha)).collect()
}

/// A coloring of `{1, ..., W}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct Coloring {
    colors: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    #[serde(rename = "W")]
    window: u64,
    colors: Vec<i64>,
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = Error;

    fn try_from(raw: ColoringJson) -> Result<Coloring> {
        if raw.colors.len() as u64 != raw.window {
            return Err(Error::Invalid(format!(
                "coloring lists {} colors for W = {}",
                raw.colors.len(),
                raw.window
            )));
        }
        Ok(Coloring { colors: raw.colors })
    }
}

impl From<Coloring> for ColoringJson {
    fn from(c: Coloring) -> ColoringJson {
        ColoringJson {
            window: c.colors.len() as u64,
            colors: c.colors,
        }
    }
}

impl Coloring {
    pub fn new(colors: Vec<i64>) -> Coloring {
        Coloring { colors }
    }

    pub fn from_fn(window: u64, f: impl Fn(u64) -> i64) -> Coloring {
        Coloring {
            colors: (1..=window).map(f).collect(),
        }
    }

    pub fn window(&self) -> u64 {
        self.colors.len() as u64
    }

    /// Color of `n`, for `1 <= n <= W`.
    pub fn color(&self, n: u64) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.colors.get(i as usize)).copied()
    }
}

/// Lexicographically least strictly increasing `s_1 < ... < s_k` whose
/// finite sums all lie in `{1..W}` and share one color.
pub fn find_monochromatic_fs(coloring: &Coloring, k: usize, limits: &Limits) -> Result<Option<FiniteIP>> {
    limits.check_window(coloring.window(), k)?;
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let mut chosen = Vec::with_capacity(k);
    Ok(extend_monochromatic(coloring, k, &mut chosen, &BTreeSet::new(), None)
        .then_some(FiniteIP(chosen)))
}

fn extend_monochromatic(
    coloring: &Coloring,
    k: usize,
    chosen: &mut Vec<u64>,
    sums: &BTreeSet<u64>,
    color: Option<i64>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    let start = chosen.last().map_or(1, |s| s + 1);
    for s in start..=coloring.window() {
        let fresh: Vec<u64> = std::iter::once(s).chain(sums.iter().map(|x| x + s)).collect();
        let target = color.or_else(|| coloring.color(s));
        if !fresh.iter().all(|&x| coloring.color(x).is_some() && coloring.color(x) == target) {
            continue;
        }
        let mut next = sums.clone();
        next.extend(fresh);
        chosen.push(s);
        if extend_monochromatic(coloring, k, chosen, &next, target) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    #[serde(rename = "W")]
    pub w: u64,
    pub k: usize,
}

/// Result of a windowed IP* check; the window travels with the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WindowVerdictJson", try_from = "WindowVerdictJson")]
pub struct WindowVerdict {
    pub verdict: Verdict,
    pub window: Window,
}

impl WindowVerdict {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Serialize, Deserialize)]
struct WindowVerdictJson {
    verdict: String,
    witness: Option<Vec<u64>>,
    window: Window,
}

impl From<WindowVerdict> for WindowVerdictJson {
    fn from(v: WindowVerdict) -> Self {
        let (verdict, witness) = match v.verdict {
            Verdict::Holds => ("holds", None),
            Verdict::Fails(w) => ("fails", Some(w)),
        };
        WindowVerdictJson {
            verdict: verdict.into(),
            witness,
            window: v.window,
        }
    }
}

impl TryFrom<WindowVerdictJson> for WindowVerdict {
    type Error = Error;

    fn try_from(raw: WindowVerdictJson) -> Result<Self> {
        let verdict = match (raw.verdict.as_str(), raw.witness) {
            ("holds", None) => Verdict::Holds,
            ("fails", Some(w)) => Verdict::Fails(w),
            (v, _) => return Err(Error::Parse(format!("inconsistent verdict {v:?}"))),
        };
        Ok(WindowVerdict {
            verdict,
            window: raw.window,
        })
    }
}

/// Checks that every `FS(s_1, ..., s_k)` with all `s_i` in `{1..W}`
/// (repeats allowed) meets `s`. On failure the lexicographically least
/// missing tuple is returned.
pub fn is_ip_star_window(s: &BTreeSet<u64>, k: usize, w: u64, limits: &Limits) -> Result<WindowVerdict> {
    limits.check_window(w, k)?;
    if k == 0 || w == 0 {
        return Err(Error::Invalid("k and W must be positive".into()));
    }
    let window = Window { w, k };
    for tuple in BoxIter::cube(k, 1, w as i64 + 1) {
        let gens: Vec<u64> = tuple.into_iter().map(|x| x as u64).collect();
        if subset_sums(&gens).is_disjoint(s) {
            return Ok(WindowVerdict {
                verdict: Verdict::Fails(gens),
                window,
            });
        }
    }
    Ok(WindowVerdict {
        verdict: Verdict::Holds,
        window,
    })
}

/// Largest gap between consecutive elements of `s` in `[lo, hi]`, counting
/// the stretch from `lo` to the first element and from the last to `hi`.
pub fn syndetic_gap(s: &BTreeSet<u64>, lo: u64, hi: u64) -> Result<Option<u64>> {
    if lo >= hi {
        return Err(Error::Invalid(format!("empty range [{lo}, {hi}]")));
    }
    let inside: Vec<u64> = s.range(lo..=hi).copied().collect();
    let (first, last) = match (inside.first(), inside.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Ok(None),
    };
    let inner = inside.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    Ok(Some(inner.max(first - lo).max(hi - last)))
}
