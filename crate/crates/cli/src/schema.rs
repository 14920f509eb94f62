//! Payload descriptors printed by `schema <kind>`.

use serde_json::{json, Value};

use crate::scenario::{Kind, SCHEMA_VERSION};

const BINPOLY: &str =
    "{\"nvars\": n, \"basis\": \"binomial\", \"terms\": [{\"idx\": [i_1, ..., i_n], \"coef\": \"c\"}, ...]} for sum c C(z_1,i_1)...C(z_n,i_n)";
const LATTICE: &str = "{\"ambient\": n, \"basis\": [[\"b\", ...], ...]}";
const SYSTEM: &str = "{\"points\": [names], \"weights\": {name: \"p/q\"}, \"maps\": [[image of each point], ...]}";
const QUERY: &str = "{\"A\": [names], \"fs\": [BinPoly, one per map], \"epsilon\": \"p/q\" (default \"0\")}";

fn payload(kind: Kind) -> Value {
    match kind {
        Kind::Khintchine => json!({
            "system": SYSTEM,
            "query": QUERY,
        }),
        Kind::REpsilon => json!({
            "system": SYSTEM,
            "query": QUERY,
            "ip_star": "optional {\"k\": generators, \"W\": window}; one-variable queries only",
        }),
        Kind::IpStar => json!({
            "set": "[positive integers]",
            "k": "number of generators",
            "W": "generators range over 1..=W",
            "gap_range": "optional [lo, hi] for the syndetic gap",
        }),
        Kind::KeyLemma => json!({
            "v": "{\"components\": [BinPoly, ...]} with a common nvars",
            "target": "Lattice",
            "hypothesis": "Lattice",
        }),
        Kind::StableRank => json!({
            "v": "{\"components\": [BinPoly, ...]}",
            "window": "positive integer W; samples range over [-W, W]^n",
        }),
        Kind::SpectralLimit => json!({
            "unitary": "{\"dim\": D, \"ops\": m, \"phases\": [[\"p/q\", ... m], ... D]}",
            "families": "[[BinPoly, ... m], ...] each with f_i(0) = 0",
            "orbits": "optional [[[exponent, ... m], ...], ...]",
        }),
        Kind::DeltaCheck => json!({
            "polys": "optional [BinPoly, ...]",
            "max_s": "optional 1..=4 (default 3)",
            "c_table": "optional table size up to 20",
            "random": "optional {\"count\", \"max_nvars\", \"max_degree\", \"coef\"}, drawn with --seed",
        }),
        Kind::HindmanSearch => json!({
            "k": "number of generators",
            "coloring": "{\"W\": window, \"colors\": [color of 1, ..., color of W]}",
            "all_colorings": "{\"W\": window, \"colors\": number of colors}; exactly one of coloring / all_colorings",
        }),
    }
}

pub fn schema(kind: Kind) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "scenario": {
            "schema_version": SCHEMA_VERSION,
            "id": "string, unique within a run",
            "kind": kind,
            "payload": payload(kind),
        },
        "types": {
            "BinPoly": BINPOLY,
            "Lattice": LATTICE,
        },
    })
}
