use nicerec_core::keyengine::{
    key_lemma_lattice, stable_rank_subgroup, vanishing_lattice, KeyInstance, RankCertificate,
};
use nicerec_core::{BinPoly, Error, Lattice, Limits, MultiIndex, PolyTuple};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut impl Rng, n: usize, d: u32, coef: i64, constant: bool) -> BinPoly {
    let terms: Vec<(MultiIndex, BigInt)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut idx = vec![0u32; n];
            let mut budget = rng.gen_range(0..=d);
            for e in idx.iter_mut() {
                let take = rng.gen_range(0..=budget);
                *e = take;
                budget -= take;
            }
            (MultiIndex::new(idx), BigInt::from(rng.gen_range(-coef..=coef)))
        })
        .collect();
    let f = BinPoly::from_terms(n, terms).unwrap();
    if constant {
        f
    } else {
        f.without_constant()
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => (0..3)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
        _ => unreachable!(),
    }
}

/// `v = M u` with `M` of full column rank `r`, and `V` generated by the
/// columns of `M S` for a random nonsingular `S`: the hypothesis holds on
/// all of `Z^n` and `V` is usually not saturated.
fn random_instance(rng: &mut impl Rng) -> KeyInstance {
    let n = rng.gen_range(1..=2);
    let k = rng.gen_range(1..=3);
    let r = rng.gen_range(1..=k);
    let u: Vec<BinPoly> = (0..r).map(|_| random_poly(rng, n, 3, 3, true)).collect();
    let m: Vec<Vec<i64>> = loop {
        let m: Vec<Vec<i64>> = (0..k).map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let gens: Vec<Vec<BigInt>> = (0..r).map(|j| (0..k).map(|i| m[i][j].into()).collect()).collect();
        if Lattice::from_generators(k, &gens).unwrap().rank() == r {
            break m;
        }
    };
    let s: Vec<Vec<i64>> = loop {
        let s: Vec<Vec<i64>> = (0..r).map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if det(&s) != 0 {
            break s;
        }
    };
    let v: Vec<BinPoly> = (0..k)
        .map(|i| {
            (0..r).fold(BinPoly::zero(n), |acc, j| acc.add(&u[j].scale(&m[i][j].into())).unwrap())
        })
        .collect();
    let gens: Vec<Vec<BigInt>> = (0..r)
        .map(|c| (0..k).map(|i| (0..r).map(|j| m[i][j] * s[j][c]).sum::<i64>().into()).collect())
        .collect();
    let target = Lattice::from_generators(k, &gens).unwrap();
    KeyInstance::new(PolyTuple::new(v).unwrap(), target).unwrap()
}

/// Exponent of `sat(V) / V`.
fn exponent(v: &Lattice) -> BigInt {
    v.saturation()
        .basis()
        .iter()
        .map(|b| v.smallest_multiple(b).unwrap().unwrap())
        .fold(BigInt::one(), |a, b| a.lcm(&b))
}

/// `w = v - v(0)` modulo `V` is periodic with period `P = E lcm(1..d)`, so
/// the points `B t`, `t ∈ [0, P)^n`, of the witness cover every class.
fn brute_force(inst: &KeyInstance, witness: &Lattice) -> Result<(), String> {
    let n = inst.nvars();
    let d = inst.map().degree();
    let lcm_d = (1..=d.max(1)).fold(BigInt::one(), |a, b| a.lcm(&BigInt::from(b)));
    let p: i64 = (exponent(inst.target()) * lcm_d).try_into().unwrap();
    assert!(p.pow(n as u32) <= 200_000, "period box too large: {p}");
    let v0 = inst.map().evaluate(&vec![BigInt::zero(); n]).unwrap();
    let mut t = vec![0i64; n];
    loop {
        let tb: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
        let a = witness.combine(&tb);
        let w: Vec<BigInt> = inst.map().evaluate(&a).unwrap().iter().zip(&v0).map(|(x, y)| x - y).collect();
        if !inst.target().contains(&w).unwrap() {
            return Err(format!("w({a:?}) = {w:?} escapes V"));
        }
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            t[j] += 1;
            if t[j] < p {
                break;
            }
            t[j] = 0;
        }
    }
}

#[test]
fn key_lemma_witnesses_survive_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let limits = Limits::default();
    let mut nontrivial = 0;
    let mut rejected = 0;
    for _ in 0..25 {
        let inst = random_instance(&mut rng);
        let n = inst.nvars();
        let hypothesis = if rng.gen_bool(0.5) {
            Lattice::full(n)
        } else {
            Lattice::scaled(n, &BigInt::from(rng.gen_range(2..=3)))
        };
        let witness = key_lemma_lattice(&inst, &hypothesis, &limits).unwrap();
        assert_eq!(witness.lattice.rank(), n);
        if witness.lattice != Lattice::full(n) {
            nontrivial += 1;
        }
        if brute_force(&inst, &Lattice::full(n)).is_err() {
            // the oracle has teeth: Z^n itself fails for this instance
            assert_ne!(witness.lattice, Lattice::full(n));
            rejected += 1;
        }
        brute_force(&inst, &witness.lattice).unwrap();
    }
    assert!(nontrivial >= 5, "only {nontrivial} instances needed a proper sublattice");
    assert!(rejected >= 5, "the oracle rejected Z^n only {rejected} times");
}

#[test]
fn hypothesis_violations_are_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let limits = Limits::default();
    let mut caught = 0;
    for _ in 0..20 {
        // a random 2-component map against a random line: almost never in its span
        let v = PolyTuple::new(vec![random_poly(&mut rng, 1, 3, 3, false), random_poly(&mut rng, 1, 3, 3, false)])
            .unwrap();
        let line = Lattice::from_generators(2, &[vec![BigInt::from(1), BigInt::from(rng.gen_range(-3..=3))]]).unwrap();
        let inst = KeyInstance::new(v.clone(), line.clone()).unwrap();
        let spans = (-6..=6i64).all(|b| line.smallest_multiple(&v.eval_i64(&[b]).unwrap()).unwrap().is_some());
        match key_lemma_lattice(&inst, &Lattice::full(1), &limits) {
            Err(Error::HypothesisFailed { witness }) => {
                assert!(!spans);
                let image = v.evaluate(&witness).unwrap();
                assert!(line.smallest_multiple(&image).unwrap().is_none());
                caught += 1;
            }
            Ok(w) => {
                assert!(spans);
                brute_force(&inst, &w.lattice).unwrap();
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(caught > 0);
}

#[test]
fn vanishing_lattices_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(1..=2);
        let fs: Vec<BinPoly> = (0..rng.gen_range(1..=2)).map(|_| random_poly(&mut rng, n, 4, 5, false)).collect();
        let q = BigInt::from(rng.gen_range(1..=6));
        let l = vanishing_lattice(n, &fs, &q).unwrap();
        assert_eq!(l.rank(), n);
        // lattice points B t for t in a box several periods wide
        for t0 in -4i64..=4 {
            for t1 in -4i64..=4 {
                let t: Vec<BigInt> = [t0, t1][..n].iter().map(|&x| BigInt::from(x)).collect();
                let z = l.combine(&t);
                for f in &fs {
                    assert!((f.evaluate(&z).unwrap() % &q).is_zero());
                }
            }
        }
    }
}

#[test]
fn stable_rank_never_decreases_with_the_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let limits = Limits::default();
    for _ in 0..10 {
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let v = PolyTuple::new((0..k).map(|_| random_poly(&mut rng, n, 3, 3, true)).collect()).unwrap();
        let mut last = 0;
        for w in 2..=4 {
            let cert: RankCertificate = stable_rank_subgroup(&v, w, &limits).unwrap();
            assert!(cert.rank >= last);
            last = cert.rank;
            cert.verify(&v, &limits).unwrap();
            let text = serde_json::to_string(&cert).unwrap();
            let back: RankCertificate = serde_json::from_str(&text).unwrap();
            back.verify(&v, &limits).unwrap();
        }
    }
}
