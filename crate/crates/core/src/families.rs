//! Named graph families and the generator DSL
//! (`complete:3`, `path:5`, `star:4`, `cycle:5`,
//! `union:complete:3,complete:1`, `gnp:6:0.5:seed=7`).

use crate::canon;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

pub fn complete(n: u32) -> Result<SimpleGraph> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((a, b));
        }
    }
    SimpleGraph::new(n, edges)
}

pub fn path(n: u32) -> Result<SimpleGraph> {
    SimpleGraph::new(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: u32) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::BadGeneratorSpec {
            spec: format!("cycle:{n}"),
            msg: "a cycle needs at least 3 vertices".into(),
        });
    }
    SimpleGraph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Star K_{1,s}: center 0 plus `leaves` leaves.
pub fn star(leaves: u32) -> Result<SimpleGraph> {
    SimpleGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn empty(n: u32) -> Result<SimpleGraph> {
    SimpleGraph::new(n, [])
}

/// Uniform random graph: each pair becomes an edge with probability `p`,
/// pairs visited in lexicographic order so a seed pins the result.
pub fn gnp(n: u32, p: f64, seed: u64) -> Result<SimpleGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadGeneratorSpec {
            spec: format!("gnp:{n}:{p}"),
            msg: "p must be in [0, 1]".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// Builds a graph from a family DSL string, rejecting results over `cap`
/// objects. Deterministic for a fixed spec.
pub fn generate(spec: &str, cap: u32) -> Result<SimpleGraph> {
    let g = generate_inner(spec, true)?;
    if g.objects() > cap {
        return Err(Error::CapExceeded {
            objects: g.objects() as usize,
            cap,
        });
    }
    Ok(g)
}

fn generate_inner(spec: &str, allow_union: bool) -> Result<SimpleGraph> {
    let bad = |msg: &str| Error::BadGeneratorSpec {
        spec: spec.to_string(),
        msg: msg.to_string(),
    };
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f, r),
        None => (spec, ""),
    };
    let int = |s: &str| s.parse::<u32>().map_err(|_| bad("expected an integer"));
    match family {
        "complete" => complete(int(rest)?),
        "path" => path(int(rest)?),
        "cycle" => cycle(int(rest)?),
        "star" => star(int(rest)?),
        "empty" => empty(int(rest)?),
        "gnp" => {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(bad("expected gnp:<n>:<p>[:seed=<s>]"));
            }
            let n = int(parts[0])?;
            let p: f64 = parts[1].parse().map_err(|_| bad("expected a probability"))?;
            let seed = match parts.get(2) {
                None => 0,
                Some(s) => s
                    .strip_prefix("seed=")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| bad("expected seed=<integer>"))?,
            };
            gnp(n, p, seed)
        }
        "union" => {
            if !allow_union {
                return Err(bad("nested union is not supported"));
            }
            if rest.is_empty() {
                return Err(bad("union needs at least one component"));
            }
            let mut acc: Option<SimpleGraph> = None;
            for part in rest.split(',') {
                let g = generate_inner(part, false)?;
                acc = Some(match acc {
                    None => g,
                    Some(a) => a.disjoint_union(&g)?,
                });
            }
            Ok(acc.expect("checked non-empty"))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// All non-isomorphic graphs on exactly `n` labeled-then-canonicalized
/// vertices, built by enumerating every edge subset and deduplicating by
/// canonical key. Output sorted by (edge count, canonical graph6 string).
pub fn all_graphs(n: u32) -> Result<Vec<SimpleGraph>> {
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    if pairs.len() > 20 {
        return Err(Error::BadGeneratorSpec {
            spec: format!("exhaustive:{n}"),
            msg: "exhaustive enumeration is supported up to n = 6".into(),
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = SimpleGraph::new(n, edges)?;
        let canonical = canon::canonical_form(&g);
        let key = canon::canonical_key(&canonical);
        if seen.insert(key) {
            out.push(canonical);
        }
    }
    out.sort_by(|a, b| {
        (a.m(), crate::graph6::to_graph6(a)).cmp(&(b.m(), crate::graph6::to_graph6(b)))
    });
    Ok(out)
}

/// Connected members of [`all_graphs`].
pub fn all_connected_graphs(n: u32) -> Result<Vec<SimpleGraph>> {
    Ok(all_graphs(n)?
        .into_iter()
        .filter(|g| g.is_connected())
        .collect())
}
