//! Runs one scenario against the core library.

use nicerec_core::arith::{factorial, rational_to_string};
use nicerec_core::dynamics::{build_system, ip_star_verdict, r_epsilon, verify_khintchine, ResidueRow};
use nicerec_core::ipstruct::{find_monochromatic_fs, fs_expand, is_ip_star_window, syndetic_gap, Coloring, Verdict};
use nicerec_core::keyengine::{key_lemma_lattice, stable_rank_subgroup, KeyInstance};
use nicerec_core::spectral::{
    is_orthogonal_projection, limit_projection, orbit_fixed_projection, projection_product_check, ProjectionDesc,
};
use nicerec_core::intpoly::c_number;
use nicerec_core::{BinPoly, Error, Lattice, Limits, MultiIndex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificate::{Certificate, LimitFamily};
use crate::report::table;
use crate::scenario::*;
use crate::InputError;

/// Rows shown in reports; the verdicts always use the full sweep.
pub const MAX_ROWS: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub limits: Limits,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub holds: bool,
    pub result: Value,
    pub lines: Vec<String>,
    pub certificate: Option<Certificate>,
}

impl Outcome {
    fn failed(e: &Error) -> Outcome {
        Outcome {
            holds: false,
            result: json!({ "error": e.to_string() }),
            lines: vec![format!("verdict fails: {e}")],
            certificate: None,
        }
    }
}

/// Errors that are verdicts about the input rather than malformed input.
fn is_verdict(e: &Error) -> bool {
    matches!(
        e,
        Error::HypothesisFailed { .. } | Error::VerificationFailed(_) | Error::SaturationFailed { .. }
    )
}

macro_rules! attempt {
    ($sc:expr, $ctx:expr, $r:expr) => {
        match $r {
            Ok(v) => v,
            Err(e) if is_verdict(&e) => return Ok(Outcome::failed(&e)),
            Err(e) => return Err($sc.error(format!("{}: {}", $ctx, e))),
        }
    };
}

pub fn execute(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    match sc.scenario.kind {
        Kind::Khintchine => khintchine(sc, ctx),
        Kind::REpsilon => r_eps(sc, ctx),
        Kind::IpStar => ip_star(sc, ctx),
        Kind::KeyLemma => key_lemma(sc, ctx),
        Kind::StableRank => stable_rank(sc, ctx),
        Kind::SpectralLimit => spectral(sc, ctx),
        Kind::DeltaCheck => delta_check(sc, ctx),
        Kind::HindmanSearch => hindman(sc, ctx),
    }
}

fn rat(q: &BigRational) -> String {
    rational_to_string(q)
}

fn tuple<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn fmt_lattice(l: &Lattice) -> String {
    if l.rank() == 0 {
        return "{0}".into();
    }
    let rows: Vec<String> = l.basis().iter().map(|b| tuple(b)).collect();
    format!("<{}>", rows.join(", "))
}

fn residue_table(rows: &[ResidueRow], threshold: &BigRational) -> Vec<String> {
    let body: Vec<Vec<String>> = rows
        .iter()
        .take(MAX_ROWS)
        .map(|r| {
            vec![
                tuple(&r.residue),
                tuple(&r.exponents),
                rat(&r.measure),
                rat(threshold),
                if r.member { "in" } else { "out" }.to_string(),
            ]
        })
        .collect();
    let mut out = table(&["residue", "exponents", "return measure", "threshold", "verdict"], &body);
    if rows.len() > MAX_ROWS {
        out.push(format!("... {} more residues", rows.len() - MAX_ROWS));
    }
    out
}

fn rows_json(rows: &[ResidueRow]) -> Value {
    json!(rows.iter().take(MAX_ROWS).collect::<Vec<_>>())
}

fn khintchine(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: KhintchinePayload = sc.payload()?;
    let sys = build_system(p.system).map_err(|e| sc.error(format!("payload.system: {e}")))?;
    if !p.query.epsilon.is_zero() {
        return Err(sc.error("payload.query.epsilon: Khintchine checks use epsilon = 0"));
    }
    let report = attempt!(sc, "payload.query", verify_khintchine(&sys, &p.query, &ctx.limits));
    let verdict = attempt!(sc, "payload.query", r_epsilon(&sys, &p.query, &ctx.limits));
    let mut lines = vec![
        format!(
            "sup of the return measure on {}: {} {} mu(A)^2 = {}",
            fmt_lattice(&report.surrogate),
            rat(&report.sup_value),
            if report.holds { ">=" } else { "<" },
            rat(&report.bound)
        ),
        format!(
            "attained at residue {} mod {}; maximum over the whole period {}",
            tuple(&report.witness),
            tuple(&report.period),
            rat(&report.global_max)
        ),
    ];
    lines.extend(residue_table(&verdict.rows, &verdict.threshold));
    Ok(Outcome {
        holds: report.holds,
        result: json!({
            "measure": rat(&verdict.measure),
            "report": report,
            "rows": rows_json(&verdict.rows),
            "rows_total": verdict.rows.len(),
        }),
        lines,
        certificate: None,
    })
}

fn r_eps(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: REpsilonPayload = sc.payload()?;
    let sys = build_system(p.system).map_err(|e| sc.error(format!("payload.system: {e}")))?;
    let verdict = attempt!(sc, "payload.query", r_epsilon(&sys, &p.query, &ctx.limits));
    let zero = vec![0u64; verdict.period.len()];
    let has_zero = verdict.members.binary_search(&zero).is_ok();
    let mut holds = has_zero;
    let mut lines = vec![format!(
        "R_eps with eps = {}: {} of {} residues mod {} (threshold {})",
        rat(&verdict.epsilon),
        verdict.members.len(),
        verdict.rows.len(),
        tuple(&verdict.period),
        rat(&verdict.threshold)
    )];
    let ip = match p.ip_star {
        Some(w) => {
            let r = ip_star_verdict(&verdict, w.k, w.w, &ctx.limits)
                .map_err(|e| sc.error(format!("payload.ip_star: {e}")))?;
            holds &= r.holds();
            lines.push(format!(
                "IP* window (k = {}, W = {}) on [1, {}]: {}; syndetic gap {}",
                w.k,
                w.w,
                r.horizon,
                match &r.window.verdict {
                    Verdict::Holds => "holds".to_string(),
                    Verdict::Fails(t) => format!("fails at generators {}", tuple(t)),
                },
                r.syndetic_gap.map_or("none".into(), |g| g.to_string())
            ));
            Some(r)
        }
        None => None,
    };
    lines.extend(residue_table(&verdict.rows, &verdict.threshold));
    Ok(Outcome {
        holds,
        result: json!({
            "period": verdict.period,
            "members": verdict.members,
            "contains_zero": has_zero,
            "epsilon": rat(&verdict.epsilon),
            "measure": rat(&verdict.measure),
            "measure_squared": rat(&verdict.measure_squared),
            "threshold": rat(&verdict.threshold),
            "ip_star": ip,
            "rows": rows_json(&verdict.rows),
            "rows_total": verdict.rows.len(),
        }),
        lines,
        certificate: None,
    })
}

fn ip_star(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: IpStarPayload = sc.payload()?;
    let v = is_ip_star_window(&p.set, p.k, p.w, &ctx.limits).map_err(|e| sc.error(format!("payload: {e}")))?;
    let gap = match p.gap_range {
        Some((lo, hi)) => Some(syndetic_gap(&p.set, lo, hi).map_err(|e| sc.error(format!("payload.gap_range: {e}")))?),
        None => None,
    };
    let holds = v.holds() && gap.is_none_or(|g| g.is_some());
    let mut lines = vec![match &v.verdict {
        Verdict::Holds => format!("every FS of {} generators from 1..={} meets the set", p.k, p.w),
        Verdict::Fails(t) => format!("FS{} misses the set", tuple(t)),
    }];
    if let (Some(g), Some((lo, hi))) = (gap, p.gap_range) {
        lines.push(format!(
            "largest gap on [{lo}, {hi}]: {}",
            g.map_or("none (set is empty there)".into(), |g| g.to_string())
        ));
    }
    Ok(Outcome {
        holds,
        result: json!({ "window": v, "syndetic_gap": gap.flatten() }),
        lines,
        certificate: None,
    })
}

fn key_lemma(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: KeyLemmaPayload = sc.payload()?;
    let inst = KeyInstance::new(p.v.clone(), p.target.clone()).map_err(|e| sc.error(format!("payload: {e}")))?;
    let w = attempt!(sc, "payload", key_lemma_lattice(&inst, &p.hypothesis, &ctx.limits));
    let lines = vec![
        format!(
            "v(a) - v(0) lies in {} for every a in {} (index {})",
            fmt_lattice(&p.target),
            fmt_lattice(&w.lattice),
            w.lattice.index()
        ),
        if w.saturated_target {
            "target is saturated, so the hypothesis alone settles every a".to_string()
        } else {
            let steps: Vec<String> = w
                .steps
                .iter()
                .map(|s| format!("degree {}: N2 = {}, scale {}", s.degree, s.clearing, s.scale))
                .collect();
            format!("denominator {}; {}", w.denominator, steps.join("; "))
        },
    ];
    Ok(Outcome {
        holds: true,
        result: json!({ "witness": w, "index": w.lattice.index().to_string() }),
        lines,
        certificate: Some(Certificate::KeyLemma {
            v: p.v,
            target: p.target,
            hypothesis: p.hypothesis,
            witness: w.lattice,
        }),
    })
}

fn stable_rank(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: StableRankPayload = sc.payload()?;
    let cert = attempt!(sc, "payload", stable_rank_subgroup(&p.v, p.window, &ctx.limits));
    let samples: Vec<String> = cert.samples.iter().map(|s| tuple(s)).collect();
    let lines = vec![format!(
        "rank {} from samples [{}]; V = {}; saturated on [-{w}, {w}]^n",
        cert.rank,
        samples.join(", "),
        fmt_lattice(&cert.lattice),
        w = cert.window
    )];
    Ok(Outcome {
        holds: true,
        result: json!({ "certificate": cert }),
        lines,
        certificate: Some(Certificate::StableRank { v: p.v, certificate: cert }),
    })
}

fn spectral(sc: &LoadedScenario, _ctx: &Context) -> Result<Outcome, InputError> {
    let p: SpectralPayload = sc.payload()?;
    let u = p.unitary;
    let mut limits = Vec::new();
    let mut families = Vec::new();
    for (i, fs) in p.families.iter().enumerate() {
        let desc = attempt!(sc, format!("payload.families[{i}]"), limit_projection(&u, fs));
        families.push(LimitFamily {
            fs: fs.clone(),
            lattice: desc.certificate.clone().expect("limit projections carry a certificate"),
        });
        limits.push(desc);
    }
    let mut orbits = Vec::new();
    for (i, exps) in p.orbits.iter().enumerate() {
        let exps: Vec<Vec<BigInt>> = exps.iter().map(|e| e.iter().map(|&x| x.into()).collect()).collect();
        orbits.push(orbit_fixed_projection(&u, &exps).map_err(|e| sc.error(format!("payload.orbits[{i}]: {e}")))?);
    }
    let all: Vec<&ProjectionDesc> = limits.iter().chain(&orbits).collect();
    let mats: Vec<_> = all.iter().map(|p| p.matrix()).collect();
    let orthogonal = mats
        .iter()
        .all(|m| is_orthogonal_projection(m, 0.0).is_ok_and(|c| c.orthogonal()));
    let commuting = mats
        .iter()
        .all(|a| mats.iter().all(|b| a.mul(b).ok() == b.mul(a).ok()));
    let product = |ps: Vec<ProjectionDesc>| -> Result<Option<ProjectionDesc>, Error> {
        if ps.is_empty() {
            Ok(None)
        } else {
            projection_product_check(&ps).map(Some)
        }
    };
    let limit_product = attempt!(sc, "payload.families", product(limits.clone()));
    let full_product = attempt!(sc, "payload", product(all.iter().map(|p| (*p).clone()).collect()));
    let identities = limits.iter().all(ProjectionDesc::is_identity)
        && limit_product.as_ref().is_none_or(ProjectionDesc::is_identity);
    let fixed = |p: &Option<ProjectionDesc>| {
        p.as_ref()
            .map_or("nothing (no projections)".to_string(), |p| format!("{:?}", p.fixed))
    };
    let mut lines: Vec<String> = limits
        .iter()
        .enumerate()
        .map(|(i, d)| {
            format!(
                "family {i}: limit is {} with certificate {}",
                if d.is_identity() { "the identity" } else { "not the identity" },
                fmt_lattice(d.certificate.as_ref().expect("certified"))
            )
        })
        .collect();
    for (i, o) in orbits.iter().enumerate() {
        lines.push(format!("orbit {i}: fixed eigenvectors {:?}", o.fixed));
    }
    lines.push(format!("product of the limit projections fixes {}", fixed(&limit_product)));
    lines.push(format!("product of all projections fixes {}", fixed(&full_product)));
    lines.push(format!("orthogonal projections: {orthogonal}; pairwise commuting: {commuting}"));
    Ok(Outcome {
        holds: identities && orthogonal && commuting,
        result: json!({
            "limits": limits,
            "orbits": orbits,
            "limit_product": limit_product,
            "product": full_product,
            "orthogonal": orthogonal,
            "commuting": commuting,
        }),
        lines,
        certificate: Some(Certificate::SpectralLimit { unitary: u, families }),
    })
}

fn explicit_delta(f: &BinPoly, s: usize, zs: &[Vec<BigInt>]) -> nicerec_core::Result<BigInt> {
    let mut acc = BigInt::zero();
    for mask in 1u32..1 << s {
        let mut point = vec![BigInt::zero(); f.nvars()];
        for (i, z) in zs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (p, x) in point.iter_mut().zip(z) {
                    *p += x;
                }
            }
        }
        let v = f.evaluate(&point)?;
        if (s - mask.count_ones() as usize) % 2 == 1 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    Ok(acc)
}

struct DeltaChecks {
    top: bool,
    degree_drop: Option<bool>,
    pointwise: bool,
    homogeneous: bool,
    top_value: BigInt,
}

impl DeltaChecks {
    fn all(&self) -> bool {
        self.top && self.degree_drop != Some(false) && self.pointwise && self.homogeneous
    }
}

fn check_delta(f: &BinPoly, max_s: u32, rng: &mut ChaCha8Rng) -> nicerec_core::Result<DeltaChecks> {
    let n = f.nvars();
    let d = f.degree();
    let top_poly = f.delta(d + 1)?;
    let sign = if d.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let top_value = sign * f.constant_term();
    let top = top_poly == BinPoly::constant(n * (d as usize + 1), top_value.clone());

    let degree_drop = (d >= 1)
        .then(|| {
            let g = f.delta(2)?;
            let blocks = [(0..n).collect::<Vec<_>>(), (n..2 * n).collect()];
            Ok::<_, Error>(blocks.iter().all(|b| g.degree_in(b) < d))
        })
        .transpose()?;

    let mut pointwise = true;
    for s in 1..=max_s as usize {
        let g = f.delta(s as u32)?;
        for _ in 0..32 {
            let zs: Vec<Vec<BigInt>> = (0..s)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect())
                .collect();
            pointwise &= g.evaluate(&zs.concat())? == explicit_delta(f, s, &zs)?;
        }
    }

    let mut homogeneous = true;
    for (i, h) in f.homogeneous_parts().iter().enumerate().skip(1) {
        if h.is_zero() {
            continue;
        }
        let (_, hb) = h.clear_denominators();
        let g = hb.delta(i as u32)?;
        let fact = factorial(i as u32);
        for a in grid(n, 3) {
            let repeated: Vec<BigInt> = (0..i).flat_map(|_| a.iter().cloned()).collect();
            homogeneous &= g.evaluate(&repeated)? == &fact * hb.evaluate(&a)?;
        }
    }
    Ok(DeltaChecks {
        top,
        degree_drop,
        pointwise,
        homogeneous,
        top_value,
    })
}

fn grid(n: usize, r: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x.into());
                    q
                })
            })
            .collect();
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, spec: &RandomPolys) -> nicerec_core::Result<BinPoly> {
    let n = rng.gen_range(1..=spec.max_nvars);
    let terms: Vec<(MultiIndex, BigInt)> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let mut budget = rng.gen_range(0..=spec.max_degree);
            let idx = (0..n)
                .map(|_| {
                    let take = rng.gen_range(0..=budget);
                    budget -= take;
                    take
                })
                .collect();
            (MultiIndex::new(idx), BigInt::from(rng.gen_range(-spec.coef..=spec.coef)))
        })
        .collect();
    BinPoly::from_terms(n, terms)
}

fn delta_check(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: DeltaPayload = sc.payload()?;
    if p.max_s == 0 || p.max_s > 4 {
        return Err(sc.error("payload.max_s: expected 1..=4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut holds = true;
    let mut lines = Vec::new();
    let mut polys = Vec::new();
    for (i, f) in p.polys.iter().enumerate() {
        ctx.limits
            .check_poly(f)
            .map_err(|e| sc.error(format!("payload.polys[{i}]: {e}")))?;
        let c = attempt!(sc, format!("payload.polys[{i}]"), check_delta(f, p.max_s, &mut rng));
        holds &= c.all();
        lines.push(format!(
            "{f}: Delta^{} = {} [{}]",
            f.degree() + 1,
            c.top_value,
            if c.all() { "ok" } else { "MISMATCH" }
        ));
        polys.push(json!({
            "poly": f,
            "degree": f.degree(),
            "top_delta": c.top_value.to_string(),
            "checks": {
                "top": c.top,
                "degree_drop": c.degree_drop,
                "pointwise": c.pointwise,
                "homogeneous": c.homogeneous,
            },
        }));
    }
    let random = match &p.random {
        Some(spec) => {
            if spec.max_nvars == 0 || spec.max_nvars > ctx.limits.max_nvars || spec.max_degree > ctx.limits.max_degree {
                return Err(sc.error("payload.random: bounds exceed the configured limits"));
            }
            let mut passed = 0;
            for _ in 0..spec.count {
                let f = random_poly(&mut rng, spec).map_err(|e| sc.error(format!("payload.random: {e}")))?;
                let c = attempt!(sc, "payload.random", check_delta(&f, p.max_s.min(2), &mut rng));
                passed += c.all() as usize;
            }
            holds &= passed == spec.count;
            lines.push(format!("random polynomials: {passed} of {} pass", spec.count));
            Some(json!({ "count": spec.count, "passed": passed }))
        }
        None => None,
    };
    let c_table = match p.c_table {
        Some(m) if m > 20 => return Err(sc.error("payload.c_table: at most 20")),
        Some(m) => {
            let rows: Vec<Vec<String>> = (1..=m)
                .map(|s| (1..=m).map(|k| c_number(s, k).to_string()).collect())
                .collect();
            let ok = (1..=m).all(|k| c_number(k, k) == factorial(k))
                && (1..=m).all(|k| (k + 1..=m).all(|s| c_number(s, k).is_zero()));
            holds &= ok;
            let headers: Vec<String> = std::iter::once("s\\m".to_string())
                .chain((1..=m).map(|k| k.to_string()))
                .collect();
            let body: Vec<Vec<String>> = rows
                .iter()
                .enumerate()
                .map(|(s, r)| std::iter::once((s + 1).to_string()).chain(r.iter().cloned()).collect())
                .collect();
            let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
            lines.push(format!(
                "C(m, m) = m! and C(s, m) = 0 for s > m up to {m}: {}",
                if ok { "ok" } else { "MISMATCH" }
            ));
            lines.extend(table(&header_refs, &body));
            Some(json!({ "size": m, "rows": rows, "ok": ok }))
        }
        None => None,
    };
    Ok(Outcome {
        holds,
        result: json!({ "polys": polys, "random": random, "c_table": c_table }),
        lines,
        certificate: None,
    })
}

/// Independent check of a search answer: a witness must be valid, and
/// `None` must survive exhaustion over all increasing tuples.
fn confirm_search(coloring: &Coloring, k: usize, found: Option<&[u64]>) -> bool {
    let w = coloring.window();
    let valid = |t: &[u64]| {
        let sums: Vec<u64> = (1u32..1 << t.len())
            .map(|mask| (0..t.len()).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).sum())
            .collect();
        let c = coloring.color(sums[0]);
        sums.iter().all(|&x| x <= w && coloring.color(x) == c)
    };
    match found {
        Some(t) => t.len() == k && t.windows(2).all(|p| p[0] < p[1]) && valid(t),
        None => {
            fn any(start: u64, w: u64, left: usize, acc: &mut Vec<u64>, valid: &dyn Fn(&[u64]) -> bool) -> bool {
                if left == 0 {
                    return valid(acc);
                }
                (start..=w).any(|s| {
                    acc.push(s);
                    let r = any(s + 1, w, left - 1, acc, valid);
                    acc.pop();
                    r
                })
            }
            !any(1, w, k, &mut Vec::new(), &valid)
        }
    }
}

fn hindman(sc: &LoadedScenario, ctx: &Context) -> Result<Outcome, InputError> {
    let p: HindmanPayload = sc.payload()?;
    match (p.coloring, p.all_colorings) {
        (Some(coloring), None) => {
            let found = find_monochromatic_fs(&coloring, p.k, &ctx.limits).map_err(|e| sc.error(format!("payload: {e}")))?;
            let gens = found.as_ref().map(|ip| ip.generators().to_vec());
            let verified = confirm_search(&coloring, p.k, gens.as_deref());
            let fs: Option<Vec<u64>> = found
                .as_ref()
                .map(|ip| fs_expand(ip, &ctx.limits).map(|s| s.into_iter().collect()))
                .transpose()
                .map_err(|e| sc.error(format!("payload: {e}")))?;
            let color = gens.as_ref().and_then(|g| coloring.color(g[0]));
            let lines = vec![match (&gens, &fs) {
                (Some(g), Some(fs)) => format!(
                    "generators {} with FS {} all of color {} (verified: {verified})",
                    tuple(g),
                    tuple(fs),
                    color.expect("in window")
                ),
                _ => format!("no monochromatic FS of {} generators in 1..={} (verified: {verified})", p.k, coloring.window()),
            }];
            Ok(Outcome {
                holds: verified,
                result: json!({
                    "window": { "W": coloring.window(), "k": p.k },
                    "generators": gens,
                    "fs": fs,
                    "color": color,
                    "verified": verified,
                }),
                lines,
                certificate: None,
            })
        }
        (None, Some(all)) => {
            ctx.limits
                .check_window(all.w, p.k)
                .map_err(|e| sc.error(format!("payload.all_colorings: {e}")))?;
            if all.colors == 0 {
                return Err(sc.error("payload.all_colorings.colors: must be positive"));
            }
            let total = (all.colors as u64)
                .checked_pow(all.w as u32)
                .filter(|&t| t <= ctx.limits.sweep_cap)
                .ok_or_else(|| sc.error("payload.all_colorings: number of colorings exceeds the sweep cap"))?;
            let results: Vec<(bool, bool)> = (0..total)
                .into_par_iter()
                .map(|mut idx| {
                    let colors: Vec<i64> = (0..all.w)
                        .map(|_| {
                            let c = idx % all.colors as u64;
                            idx /= all.colors as u64;
                            c as i64
                        })
                        .collect();
                    let coloring = Coloring::new(colors);
                    let found = find_monochromatic_fs(&coloring, p.k, &ctx.limits).expect("window checked");
                    let gens = found.map(|ip| ip.generators().to_vec());
                    (gens.is_some(), confirm_search(&coloring, p.k, gens.as_deref()))
                })
                .collect();
            let with_witness = results.iter().filter(|r| r.0).count();
            let verified = results.iter().all(|r| r.1);
            let lines = vec![format!(
                "{with_witness} of {total} colorings of 1..={} with {} colors have a monochromatic FS of {} generators; all answers verified: {verified}",
                all.w, all.colors, p.k
            )];
            Ok(Outcome {
                holds: verified,
                result: json!({
                    "window": { "W": all.w, "k": p.k },
                    "colors": all.colors,
                    "colorings": total,
                    "with_witness": with_witness,
                    "without_witness": total as usize - with_witness,
                    "verified": verified,
                }),
                lines,
                certificate: None,
            })
        }
        _ => Err(sc.error("payload: give exactly one of coloring or all_colorings")),
    }
}
