//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `lcm(1, 2, ..., d)`, with the empty product equal to 1.
pub fn lcm_up_to(d: u32) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| if v.is_zero() { acc } else { acc.lcm(v) })
}

/// Generalized binomial coefficient `C(z, i)` for any integer `z`.
pub fn binomial(z: &BigInt, i: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..i {
        acc *= z - BigInt::from(k);
        // exact at every step: the running product is C(z, k+1) * (k+1)!/(k+1)!
        acc /= BigInt::from(k + 1);
    }
    acc
}

/// `[C(z, 0), C(z, 1), ..., C(z, max)]`.
pub fn binomial_row(z: &BigInt, max: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(max as usize + 1);
    let mut acc = BigInt::one();
    row.push(acc.clone());
    for k in 0..max {
        acc = acc * (z - BigInt::from(k)) / BigInt::from(k + 1);
        row.push(acc.clone());
    }
    row
}

/// Binomial coefficient with small nonnegative arguments.
pub fn choose(n: u32, k: u32) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(&BigInt::from(n), k)
    }
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Iterates the integer box `[lo_j, hi_j)` in lexicographic order.
pub(crate) struct BoxIter {
    lo: Vec<i64>,
    hi: Vec<i64>,
    cur: Option<Vec<i64>>,
}

impl BoxIter {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        let empty = lo.iter().zip(&hi).any(|(l, h)| l >= h);
        let cur = if empty { None } else { Some(lo.clone()) };
        BoxIter { lo, hi, cur }
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        Self::new(vec![lo; dim], vec![hi; dim])
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.cur = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.hi[pos] {
                self.cur = Some(next);
                break;
            }
            next[pos] = self.lo[pos];
        }
        Some(out)
    }
}

/// Mixed-radix decode of `index` into a point of `[0, sides_j)`.
pub(crate) fn decode_index(mut index: u64, sides: &[u64]) -> Vec<u64> {
    let mut out = vec![0; sides.len()];
    for j in (0..sides.len()).rev() {
        out[j] = index % sides[j];
        index /= sides[j];
    }
    out
}
