//! Shared fixtures and checks for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use qstab::oracle::{self, ExplicitRep};
use qstab::quiver::{DimVector, Quiver};
use qstab::roots::{base_roots, is_schur_root};
use qstab::slope_set::{compute_slope_set, Certificate, SlopeSetReport, Verdict};
use qstab::stability::{generic_subdims, Slope, Status, SubdimCache, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn dv(v: &[i64]) -> DimVector {
    DimVector::new(v.to_vec())
}

pub fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec())
}

pub fn a2() -> Quiver {
    Quiver::from_edges(2, &[(0, 1)]).unwrap()
}

pub fn a3() -> Quiver {
    Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
}

pub fn kronecker() -> Quiver {
    Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap()
}

pub fn a3_tilde() -> Quiver {
    Quiver::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn a2_tilde() -> Quiver {
    Quiver::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
}

pub fn d4_tilde() -> Quiver {
    Quiver::from_edges(5, &[(1, 0), (2, 0), (0, 3), (0, 4)]).unwrap()
}

/// Tree with a center vertex 0 and arms of the given lengths, arrows
/// oriented away from the center.
pub fn star(arms: &[usize]) -> Quiver {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Quiver::from_edges(next, &edges).unwrap()
}

pub fn e6_tilde() -> Quiver {
    star(&[2, 2, 2])
}

pub fn e7_tilde() -> Quiver {
    star(&[1, 3, 3])
}

pub fn e8_tilde() -> Quiver {
    star(&[1, 2, 5])
}

/// `D̃_n` on `n + 1` vertices with alternating orientation along the spine.
pub fn d_tilde(n: usize) -> Quiver {
    assert!(n >= 4);
    let mut edges = vec![(2, 0), (2, 1)];
    for v in 2..n - 2 {
        if v % 2 == 0 {
            edges.push((v, v + 1));
        } else {
            edges.push((v + 1, v));
        }
    }
    edges.push((n - 2, n - 1));
    edges.push((n - 2, n));
    Quiver::from_edges(n + 1, &edges).unwrap()
}

/// All acyclic orientations of an `(n + 1)`-cycle, `n >= 1`.
pub fn a_tilde_orientations(n: usize) -> Vec<Quiver> {
    let m = n + 1;
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|i| {
                let j = (i + 1) % m;
                if mask >> i & 1 == 0 {
                    (i, j)
                } else {
                    (j, i)
                }
            })
            .collect();
        if let Ok(q) = Quiver::from_edges(m, &edges) {
            out.push(q);
        }
    }
    out
}

pub fn a_n(n: usize) -> Quiver {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Quiver::from_edges(n, &edges).unwrap()
}

pub fn d_n(n: usize) -> Quiver {
    star(&[1, 1, n - 3])
}

pub fn e_n(n: usize) -> Quiver {
    star(&[1, 2, n - 4])
}

/// All nonnegative vectors of length `n` with `0 < Σ <= max_total`.
pub fn vectors_up_to(n: usize, max_total: i64) -> Vec<DimVector> {
    fn go(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if cur.len() == n {
            if cur.iter().any(|&x| x > 0) {
                out.push(DimVector::new(cur.clone()));
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_total, &mut Vec::new(), &mut out);
    out
}

/// `count` weights drawn from `{-2..2}^n`, deterministic in `seed`.
pub fn sampled_weights(n: usize, count: usize, seed: u64) -> Vec<Weight> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Weight::new((0..n).map(|_| rng.gen_range(-2..=2)).collect()))
        .collect()
}

/// All weights in `{lo..hi}^n`.
pub fn weight_grid(n: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

/// Whether the oracle can certify a general representation of `d`.
pub fn oracle_certifiable(q: &Quiver, d: &DimVector) -> bool {
    SubdimCache::new(q).is_rigid(d).unwrap()
        || (q.classify_type().unwrap().is_euclidean() && *d == q.minimal_imaginary_root().unwrap())
}

pub const ORACLE_ATTEMPTS: usize = 4000;
pub const ORACLE_FIELD: u64 = 2;

#[derive(Debug, Default)]
pub struct EquivalenceStats {
    pub dims: usize,
    pub skipped: usize,
    pub reps: usize,
    pub verdicts: usize,
}

/// Compares generic subdimension vectors and general-representation verdicts
/// with brute force on certified general representations, for every `d`
/// with `Σd <= max_total`.
pub fn oracle_equivalence(
    q: &Quiver,
    max_total: i64,
    seeds: &[u64],
    weights: &[Weight],
) -> Result<EquivalenceStats, String> {
    let mut stats = EquivalenceStats::default();
    let mut cache = SubdimCache::new(q);
    for d in vectors_up_to(q.vertex_count(), max_total) {
        if !oracle_certifiable(q, &d) {
            stats.skipped += 1;
            continue;
        }
        stats.dims += 1;
        let generic: Vec<DimVector> = cache
            .generic_subdims(&d)
            .map_err(|e| e.to_string())?
            .to_vec();
        let schur = is_schur_root(q, &d).unwrap();
        for &seed in seeds {
            let rep = oracle::verify_generic(q, &d, ORACLE_FIELD, ORACLE_ATTEMPTS, seed)
                .map_err(|e| format!("{d} seed {seed}: {e}"))?;
            stats.reps += 1;
            let brute = oracle::subdims_bruteforce(&rep).map_err(|e| e.to_string())?;
            if brute != generic {
                return Err(format!(
                    "{d} seed {seed}: brute force {brute:?} vs generic {generic:?}"
                ));
            }
            let dual = oracle::subdims_bruteforce(&rep.transpose()).map_err(|e| e.to_string())?;
            for theta in weights {
                let direct = oracle::king_verdict(theta, &d, &brute).map_err(|e| e.to_string())?;
                let quotient =
                    oracle::king_verdict(&theta.neg(), &d, &dual).map_err(|e| e.to_string())?;
                let exact = cache
                    .general_verdict(theta, &d)
                    .map_err(|e| e.to_string())?;
                if direct.status != quotient.status || direct.status != exact.status {
                    return Err(format!(
                        "{d} seed {seed} weight {:?}: brute {:?}, quotient side {:?}, generic {:?}",
                        theta.entries(),
                        direct.status,
                        quotient.status,
                        exact.status
                    ));
                }
                if schur {
                    let v = cache.verdict(theta, &d).map_err(|e| e.to_string())?;
                    if v.status != direct.status {
                        return Err(format!("{d}: is_semistable_dim disagrees"));
                    }
                }
                stats.verdicts += 1;
            }
        }
    }
    Ok(stats)
}

/// Dimension vectors named by a certificate as unstable, up to total
/// dimension `max_total`.
pub fn killed_positions(q: &Quiver, report: &SlopeSetReport, max_total: i64) -> Vec<DimVector> {
    let delta = q.minimal_imaginary_root().unwrap();
    let mut out = Vec::new();
    for c in &report.certificates {
        match c {
            Certificate::Killed { dim, .. } => out.push(dim.clone()),
            Certificate::Retired {
                base, from_level, ..
            } => {
                let mut x = base + &delta.scale(*from_level as i64);
                while x.total() <= max_total {
                    out.push(x.clone());
                    x = &x + &delta;
                }
            }
            _ => {}
        }
    }
    out.retain(|d| d.total() <= max_total);
    out
}

/// Checks every claim of a slope-set report that the oracle can reach:
/// killed positions are unstable, witnesses are semistable, and every
/// semistable Schur root up to `max_total` has a reported slope.
pub fn audit_report(
    q: &Quiver,
    theta: &Weight,
    report: &SlopeSetReport,
    max_total: i64,
) -> Result<(), String> {
    for d in killed_positions(q, report, max_total) {
        let rep = oracle::verify_generic(q, &d, ORACLE_FIELD, ORACLE_ATTEMPTS, 0)
            .map_err(|e| e.to_string())?;
        let v = oracle::semistable_bruteforce(&rep, theta).map_err(|e| e.to_string())?;
        if v.status != Status::Unstable {
            return Err(format!(
                "killed position {d} is semistable for {:?}",
                theta.entries()
            ));
        }
    }
    let mut cache = SubdimCache::new(q);
    match &report.verdict {
        Verdict::Finite { slopes, witnesses } => {
            let set: BTreeSet<Slope> = slopes.iter().copied().collect();
            if set.len() != slopes.len()
                || witnesses.keys().copied().collect::<BTreeSet<_>>() != set
            {
                return Err("slopes and witnesses disagree".into());
            }
            for (s, d) in witnesses {
                let v = cache.general_verdict(theta, d).map_err(|e| e.to_string())?;
                if !v.is_semistable() || v.slope != *s {
                    return Err(format!(
                        "witness {d} for {s} is not semistable of that slope"
                    ));
                }
            }
            for d in vectors_up_to(q.vertex_count(), max_total) {
                if is_schur_root(q, &d).unwrap()
                    && cache.verdict(theta, &d).unwrap().is_semistable()
                {
                    let s = qstab::stability::slope(theta, &d).unwrap();
                    if !set.contains(&s) {
                        return Err(format!(
                            "semistable {d} of slope {s} missing from {slopes:?}"
                        ));
                    }
                }
            }
        }
        Verdict::Infinite { members, .. } => {
            let mu = report.mu_delta;
            for pair in members.windows(2) {
                if pair[0].1 >= pair[1].1 {
                    return Err("family slopes not increasing".into());
                }
            }
            for (d, s) in members {
                if *s >= mu
                    || !cache
                        .verdict(theta, d)
                        .map_err(|e| e.to_string())?
                        .is_semistable()
                {
                    return Err(format!("family member {d} not certified"));
                }
            }
        }
        Verdict::Inconclusive { .. } => return Err("inconclusive verdict".into()),
    }
    Ok(())
}

/// Slope set of `(q, θ)` and of the opposite quiver with `-θ`, which must be
/// exact mirrors.
pub fn duality_holds(q: &Quiver, theta: &Weight, bound: u32) -> Result<(), String> {
    let a = compute_slope_set(q, theta, bound).map_err(|e| e.to_string())?;
    let b = compute_slope_set(&q.opposite(), &theta.neg(), bound).map_err(|e| e.to_string())?;
    if a.mu_delta != -b.mu_delta || a.case != b.case {
        return Err(format!("case mismatch {:?} vs {:?}", a.case, b.case));
    }
    match (&a.verdict, &b.verdict) {
        (Verdict::Finite { slopes: x, .. }, Verdict::Finite { slopes: y, .. }) => {
            let mut neg: Vec<Slope> = y.iter().map(|s| -*s).collect();
            neg.sort();
            if *x != neg {
                return Err(format!("{x:?} vs mirrored {neg:?}"));
            }
        }
        (Verdict::Infinite { .. }, Verdict::Infinite { .. }) => {}
        _ => return Err("verdict kinds differ".into()),
    }
    Ok(())
}

/// Generic subdimension vectors through the free function.
pub fn subdims_of(q: &Quiver, d: &DimVector) -> Vec<DimVector> {
    generic_subdims(q, d).unwrap()
}

pub fn explicit(q: &Quiver, d: &DimVector, seed: u64) -> ExplicitRep {
    oracle::verify_generic(q, d, ORACLE_FIELD, ORACLE_ATTEMPTS, seed).unwrap()
}

pub fn base_root_count(q: &Quiver) -> usize {
    base_roots(q).unwrap().all().count()
}

pub mod fuzz {
    use qstab::error::Error;
    use qstab::quiver::{parse_quiver, DimVector, QuiverType};
    use qstab::roots::base_roots;
    use qstab::slope_set::compute_slope_set;
    use qstab::stability::{is_semistable_dim, Weight};
    use qstab::tubes::tube_system;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use serde_json::{json, Value};

    /// A connected acyclic quiver: a random tree plus a few extra arrows, all
    /// oriented along a random vertex order, occasionally with one arrow flipped.
    fn structured_document(rng: &mut ChaCha8Rng) -> String {
        let n = rng.gen_range(1..=8);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        for _ in 0..rng.gen_range(0..=2) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let mut arrows: Vec<[String; 2]> = edges
            .iter()
            .map(|&(a, b)| {
                let (s, t) = if order[a] < order[b] { (a, b) } else { (b, a) };
                [s.to_string(), t.to_string()]
            })
            .collect();
        if rng.gen_bool(0.05) && !arrows.is_empty() {
            arrows[0].swap(0, 1);
        }
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        json!({ "vertices": names, "arrows": arrows }).to_string()
    }

    fn random_document(rng: &mut ChaCha8Rng) -> String {
        if rng.gen_bool(0.5) {
            return structured_document(rng);
        }
        let n = rng.gen_range(0..=7);
        let names: Vec<String> = (0..n)
            .map(|i| format!("v{}", rng.gen_range(0..=i + 1)))
            .collect();
        let m = rng.gen_range(0..=10);
        let pick = |rng: &mut ChaCha8Rng| -> Value {
            if names.is_empty() || rng.gen_bool(0.03) {
                json!(format!("ghost{}", rng.gen_range(0..3)))
            } else {
                json!(names.choose(rng).unwrap())
            }
        };
        let arrows: Vec<Value> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.02) {
                    json!([pick(rng)])
                } else {
                    json!([pick(rng), pick(rng)])
                }
            })
            .collect();
        let mut doc = json!({ "vertices": names, "arrows": arrows });
        if rng.gen_bool(0.02) {
            doc["extra"] = json!(1);
        }
        let mut text = doc.to_string();
        if rng.gen_bool(0.05) && !text.is_empty() {
            // byte-level damage
            let cut = rng.gen_range(0..text.len());
            text.truncate(cut);
            text.push_str(["}", "]", "\"", ",", "{"].choose(rng).unwrap());
        }
        text
    }

    #[derive(Debug, Default)]
    pub struct FuzzStats {
        pub parsed: usize,
        pub euclidean: usize,
    }

    /// Feeds `cases` generated documents through parsing, classification and,
    /// where applicable, the slope-set engine. Panics propagate.
    pub fn run(cases: usize, seed: u64) -> Result<FuzzStats, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stats = FuzzStats::default();
        for _ in 0..cases {
            let text = random_document(&mut rng);
            let Ok(q) = parse_quiver(&text) else { continue };
            stats.parsed += 1;
            let theta = Weight::new(
                (0..q.vertex_count())
                    .map(|_| rng.gen_range(-3..=3))
                    .collect(),
            );
            let kind = q.classify_type().map_err(|e| format!("{text}: {e}"))?;
            match kind {
                QuiverType::Euclidean(..) => {
                    stats.euclidean += 1;
                    base_roots(&q).map_err(|e| format!("{text}: {e}"))?;
                    tube_system(&q).map_err(|e| format!("{text}: {e}"))?;
                    match compute_slope_set(&q, &theta, 10) {
                        Ok(_) | Err(Error::ResourceLimit(_)) => {}
                        Err(e) => return Err(format!("{text}: {e}")),
                    }
                }
                _ => {
                    if !matches!(compute_slope_set(&q, &theta, 10), Err(Error::NotTame(_))) {
                        return Err(format!("{text}: non-Euclidean input accepted"));
                    }
                    let d = DimVector::new(vec![1; q.vertex_count()]);
                    let _ = is_semistable_dim(&q, &theta, &d);
                }
            }
        }
        Ok(stats)
    }
}
