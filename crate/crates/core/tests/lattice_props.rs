use std::collections::BTreeSet;

use nicerec_core::{Lattice, LatticeIndex};
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn lattice(gens: &[[i64; 2]]) -> Lattice {
    let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| big(g)).collect();
    Lattice::from_generators(2, &gens).unwrap()
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Residues mod `m` of the subgroup generated by `gens`, by closure.
fn residues(gens: &[[i64; 2]], m: i64) -> BTreeSet<(i64, i64)> {
    let mut seen: BTreeSet<(i64, i64)> = [(0, 0)].into();
    let mut frontier = vec![(0, 0)];
    while let Some((x, y)) = frontier.pop() {
        for g in gens {
            let p = ((x + g[0]).rem_euclid(m), (y + g[1]).rem_euclid(m));
            if seen.insert(p) {
                frontier.push(p);
            }
        }
    }
    seen
}

/// Independent description of a full-rank lattice in `Z^2`: a modulus `m`
/// with `m Z^2` inside it, and its residues mod `m`.
fn oracle(gens: &[[i64; 2]]) -> Option<(i64, BTreeSet<(i64, i64)>)> {
    let m = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| det(*a, *b).abs()))
        .filter(|&d| d != 0)
        .min()?;
    Some((m, residues(gens, m)))
}

fn rank_oracle(gens: &[[i64; 2]]) -> usize {
    if gens.iter().any(|a| gens.iter().any(|b| det(*a, *b) != 0)) {
        2
    } else if gens.iter().any(|g| g != &[0, 0]) {
        1
    } else {
        0
    }
}

fn gens_strategy() -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec(prop::array::uniform2(-6i64..=6), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_rank_and_index_match_oracle(gens in gens_strategy()) {
        let l = lattice(&gens);
        prop_assert_eq!(l.rank(), rank_oracle(&gens));
        match oracle(&gens) {
            Some((m, res)) => {
                let index = (m * m) as usize / res.len();
                prop_assert_eq!(l.index(), LatticeIndex::Finite(BigInt::from(index)));
                for x in -m..2 * m {
                    for y in -m..2 * m {
                        let inside = res.contains(&(x.rem_euclid(m), y.rem_euclid(m)));
                        prop_assert_eq!(l.contains(&big(&[x, y])).unwrap(), inside);
                    }
                }
            }
            None => prop_assert_eq!(l.index(), LatticeIndex::Infinite),
        }
    }

    #[test]
    fn canonical_form_is_generator_independent(gens in gens_strategy(), k in -3i64..=3) {
        // adding an integer combination of generators does not change the lattice
        let mut more = gens.clone();
        let extra = [gens[0][0] * k + gens[gens.len() - 1][0], gens[0][1] * k + gens[gens.len() - 1][1]];
        more.push(extra);
        more.reverse();
        prop_assert_eq!(lattice(&gens), lattice(&more));
    }

    #[test]
    fn smallest_multiple_is_minimal(gens in gens_strategy(), v in prop::array::uniform2(-8i64..=8)) {
        let l = lattice(&gens);
        let found = l.smallest_multiple(&big(&v)).unwrap();
        let scan = (1..=200i64).find(|&k| l.contains(&big(&[k * v[0], k * v[1]])).unwrap());
        match (found, scan) {
            (Some(f), Some(s)) => prop_assert_eq!(f, BigInt::from(s)),
            (None, None) => {}
            (f, s) => prop_assert!(false, "library {:?}, scan {:?}", f, s),
        }
    }

    #[test]
    fn intersection_is_pointwise(a in gens_strategy(), b in gens_strategy()) {
        let (la, lb) = (lattice(&a), lattice(&b));
        let both = la.intersect(&lb).unwrap();
        prop_assert!(both.is_sublattice_of(&la).unwrap());
        prop_assert!(both.is_sublattice_of(&lb).unwrap());
        for x in -12i64..=12 {
            for y in -12i64..=12 {
                let p = big(&[x, y]);
                prop_assert_eq!(
                    both.contains(&p).unwrap(),
                    la.contains(&p).unwrap() && lb.contains(&p).unwrap()
                );
            }
        }
    }

    #[test]
    fn saturation_contains_exactly_the_rational_span(gens in gens_strategy()) {
        let l = lattice(&gens);
        let sat = l.saturation();
        prop_assert!(sat.is_saturated());
        prop_assert!(l.is_sublattice_of(&sat).unwrap());
        prop_assert_eq!(sat.rank(), l.rank());
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let p = big(&[x, y]);
                prop_assert_eq!(sat.contains(&p).unwrap(), l.smallest_multiple(&p).unwrap().is_some());
            }
        }
    }

    #[test]
    fn probe_points_lie_in_the_lattice(gens in gens_strategy(), d in 0u32..=3) {
        let l = lattice(&gens);
        let pts: Vec<_> = l.probe_points(d).collect();
        prop_assert_eq!(pts.len(), (d as usize + 1).pow(l.rank() as u32));
        for p in pts {
            prop_assert!(l.contains(&p).unwrap());
        }
    }

    #[test]
    fn fundamental_domain_has_index_many_points(gens in gens_strategy()) {
        let l = lattice(&gens);
        if let LatticeIndex::Finite(index) = l.index() {
            let dom: Vec<_> = l.fundamental_domain().unwrap().collect();
            prop_assert_eq!(BigInt::from(dom.len()), index);
            // distinct cosets: no difference lies in the lattice
            for (i, p) in dom.iter().enumerate() {
                for q in &dom[i + 1..] {
                    let diff: Vec<BigInt> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                    prop_assert!(!l.contains(&diff).unwrap());
                }
            }
        } else {
            prop_assert!(l.fundamental_domain().is_err());
        }
    }
}
