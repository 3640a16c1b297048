//! The set of slopes of semistable representations of a Euclidean quiver.
//!
//! Every indecomposable of a Euclidean quiver is preprojective, regular or
//! preinjective. Preprojectives have dimension vectors `α + nδ` for the
//! finitely many preprojective roots `α < δ`, preinjectives likewise, and the
//! regular modules live in tubes. Rigid indecomposables are the general
//! representations of their dimension vectors, so their semistability is
//! decided exactly by [`SubdimCache::verdict`]. What remains is to cut the
//! infinite ladders `α + nδ` short, which is done with two kill rules:
//!
//! * sub-kill: a semistable `M` with `Hom(M, X) != 0` and `μ(M) > μ(X)`
//!   destabilizes `X` (the image is a subobject of slope at least `μ(M)`);
//! * quot-kill: a semistable `N` with `Hom(X, N) != 0` and `μ(N) < μ(X)`
//!   destabilizes `X` through the image, a quotient of slope at most `μ(N)`.
//!
//! Hom is certified nonzero through the Euler form, which is linear in the
//! ladder level, so a single killer retires a whole ladder tail.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::roots::{base_roots, RootClass};
use crate::stability::{slope, Slope, StabilityVerdict, SubdimCache, Weight};
use crate::tubes::{guaranteed_hom, tube_system, Located};

/// Default number of ladder levels explored before giving up.
pub const DEFAULT_BOUND: u32 = 50;
/// Number of family members listed in an infinite verdict.
pub const DEFAULT_FAMILY_PREVIEW: usize = 3;

/// Shortcut answers for `|X_θ| <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    One(Slope),
    Two(Slope, Slope),
    More,
}

/// `One(c)` when θ is constant; `Two(a, b)` when θ takes exactly two values
/// `a < b` and no arrow runs from a `b`-vertex to an `a`-vertex.
pub fn trivial_cardinality(q: &Quiver, theta: &Weight) -> Result<Cardinality> {
    theta.check_len(q)?;
    let t = theta.entries();
    let mut values: Vec<i64> = t.to_vec();
    values.sort_unstable();
    values.dedup();
    Ok(match values.as_slice() {
        [c] => Cardinality::One(Slope::integer(*c)),
        [a, b] => {
            let back_arrow = q.arrows().iter().any(|&(s, e)| t[s] == *b && t[e] == *a);
            if back_arrow {
                Cardinality::More
            } else {
                Cardinality::Two(Slope::integer(*a), Slope::integer(*b))
            }
        }
        _ => Cardinality::More,
    })
}

/// Which kind of category the semistables of slope μ(δ) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuDeltaCase {
    /// No semistable of dimension δ; X_θ is finite.
    DynkinCategory,
    /// Semistable δ together with a semistable preprojective or preinjective
    /// of slope μ(δ); X_θ is finite.
    TameCategory,
    /// Only regular modules have slope μ(δ); X_θ is infinite.
    RegularCategory,
    /// No witness of slope μ(δ) within the level bound.
    Inconclusive(u32),
}

impl MuDeltaCase {
    pub fn label(&self) -> &'static str {
        match self {
            MuDeltaCase::DynkinCategory => "DynkinCategory",
            MuDeltaCase::TameCategory => "TameCategory",
            MuDeltaCase::RegularCategory => "RegularCategory",
            MuDeltaCase::Inconclusive(_) => "Inconclusive",
        }
    }
}

impl fmt::Display for MuDeltaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuDeltaCase::Inconclusive(b) => write!(f, "Inconclusive(bound={b})"),
            other => f.write_str(other.label()),
        }
    }
}

impl Serialize for MuDeltaCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KillRule {
    SubKill,
    QuotKill,
}

/// A record justifying part of a slope-set computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// θ is constant or two-valued without back arrows.
    Trivial(Cardinality),
    /// The general representation of dimension δ is semistable.
    DeltaSemistable,
    /// The general representation of dimension δ has a destabilizing sub.
    DeltaUnstable { violator: DimVector },
    /// A rigid semistable of slope μ(δ) outside the tubes.
    MuDeltaWitness { class: RootClass, dim: DimVector },
    /// Every preprojective root below δ has slope < μ(δ) and every
    /// preinjective one slope > μ(δ).
    RegularSides {
        max_preprojective: Slope,
        min_preinjective: Slope,
    },
    /// Tube positions of quasi-length at least the rank only carry slope μ(δ).
    TubeTail,
    /// A single ladder position is unstable.
    Killed {
        class: RootClass,
        dim: DimVector,
        rule: KillRule,
        killer: DimVector,
    },
    /// Every position `base + nδ` with `n >= from_level` is unstable.
    Retired {
        class: RootClass,
        base: DimVector,
        from_level: u32,
        rule: KillRule,
        killer: DimVector,
    },
    /// Every position on the ladder has slope μ(δ), already in the set.
    SlopeOfDelta { class: RootClass, base: DimVector },
    /// `base + nδ` is the maximal-slope preprojective on level `n` for all
    /// `n >= 0`, and every preprojective root has slope below μ(δ).
    DominantFamily { base: DimVector },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Trivial(Cardinality::One(c)) => write!(f, "constant weight: every module is semistable of slope {c}"),
            Certificate::Trivial(Cardinality::Two(a, b)) => {
                write!(f, "two weight values {a} < {b} with no arrow from the {b}-part to the {a}-part")
            }
            Certificate::Trivial(Cardinality::More) => write!(f, "no trivial shortcut"),
            Certificate::DeltaSemistable => write!(f, "general representation of dimension delta is semistable"),
            Certificate::DeltaUnstable { violator } => {
                write!(f, "general representation of dimension delta is destabilized by generic sub {violator}")
            }
            Certificate::MuDeltaWitness { class, dim } => {
                write!(f, "{class:?} {dim} is semistable of slope mu(delta)")
            }
            Certificate::RegularSides {
                max_preprojective,
                min_preinjective,
            } => write!(
                f,
                "preprojective roots below delta have slope <= {max_preprojective} < mu(delta) < {min_preinjective} <= preinjective slopes"
            ),
            Certificate::TubeTail => write!(f, "tube positions of quasi-length >= rank contribute at most mu(delta)"),
            Certificate::Killed { class, dim, rule, killer } => {
                write!(f, "{class:?} {dim} unstable by {rule:?} with semistable {killer}")
            }
            Certificate::Retired {
                class,
                base,
                from_level,
                rule,
                killer,
            } => write!(
                f,
                "{class:?} ladder {base} + n*delta unstable for all n >= {from_level} by {rule:?} with semistable {killer}"
            ),
            Certificate::SlopeOfDelta { class, base } => {
                write!(f, "{class:?} ladder {base} + n*delta has constant slope mu(delta)")
            }
            Certificate::DominantFamily { base } => write!(
                f,
                "{base} + n*delta has maximal slope on its level for every n and slopes below mu(delta): semistable for all n"
            ),
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcome of the X_θ computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Finite {
        slopes: Vec<Slope>,
        witnesses: BTreeMap<Slope, DimVector>,
    },
    Infinite {
        /// Ladder start `β`; the family is `β + nδ`, `n >= 0`.
        family_base: DimVector,
        members: Vec<(DimVector, Slope)>,
    },
    Inconclusive {
        bound: u32,
        /// Slopes certified so far; the full set may be larger.
        slopes: Vec<Slope>,
        witnesses: BTreeMap<Slope, DimVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSetReport {
    pub mu_delta: Slope,
    pub case: MuDeltaCase,
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
}

impl SlopeSetReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, Verdict::Finite { .. })
    }

    pub fn slopes(&self) -> Option<&[Slope]> {
        match &self.verdict {
            Verdict::Finite { slopes, .. } => Some(slopes),
            _ => None,
        }
    }
}

/// Options for [`compute_slope_set_with`].
#[derive(Debug, Clone, Copy)]
pub struct SlopeSetOptions {
    pub bound: u32,
    pub family_preview: usize,
    pub max_box: u64,
}

impl Default for SlopeSetOptions {
    fn default() -> Self {
        SlopeSetOptions {
            bound: DEFAULT_BOUND,
            family_preview: DEFAULT_FAMILY_PREVIEW,
            max_box: crate::stability::max_box_from_env(),
        }
    }
}

/// A semistable module usable by the kill rules.
#[derive(Debug, Clone)]
struct Killer {
    class: RootClass,
    dim: DimVector,
    slope: Slope,
}

impl Killer {
    fn located(&self) -> Located<'_> {
        Located {
            class: self.class,
            dim: &self.dim,
        }
    }

    /// The same module seen over the opposite quiver with negated weight.
    fn dual(&self) -> Killer {
        Killer {
            class: self.class.dual(),
            dim: self.dim.clone(),
            slope: -self.slope,
        }
    }
}

/// Lexicographically smallest witness per slope.
#[derive(Debug, Default, Clone)]
struct Witnesses(BTreeMap<Slope, DimVector>);

impl Witnesses {
    fn add(&mut self, s: Slope, d: &DimVector) {
        match self.0.get(&s) {
            Some(cur) if cur <= d => {}
            _ => {
                self.0.insert(s, d.clone());
            }
        }
    }

    fn slopes(&self) -> Vec<Slope> {
        self.0.keys().copied().collect()
    }
}

struct MuDeltaAnalysis {
    mu_delta: Slope,
    case: MuDeltaCase,
    witness: Option<(RootClass, DimVector)>,
    certificates: Vec<Certificate>,
}

fn require_euclidean(q: &Quiver, theta: &Weight) -> Result<DimVector> {
    let kind = q.classify_type()?;
    if !kind.is_euclidean() {
        return Err(Error::NotTame(kind.to_string()));
    }
    theta.check_len(q)?;
    q.minimal_imaginary_root()
}

fn analyse_mu_delta(
    q: &Quiver,
    theta: &Weight,
    bound: u32,
    cache: &mut SubdimCache<'_>,
) -> Result<MuDeltaAnalysis> {
    let delta = require_euclidean(q, theta)?;
    let mu_delta = slope(theta, &delta)?;
    let dv = cache.general_verdict(theta, &delta)?;
    if !dv.is_semistable() {
        return Ok(MuDeltaAnalysis {
            mu_delta,
            case: MuDeltaCase::DynkinCategory,
            witness: None,
            certificates: vec![Certificate::DeltaUnstable {
                violator: dv.violator.expect("unstable verdicts carry a violator"),
            }],
        });
    }
    let mut certificates = vec![Certificate::DeltaSemistable];
    let roots = base_roots(q)?;
    let on_delta = |list: &[DimVector], class: RootClass| -> Result<Vec<(RootClass, DimVector)>> {
        let mut out = Vec::new();
        for a in list {
            if slope(theta, a)? == mu_delta {
                out.push((class, a.clone()));
            }
        }
        Ok(out)
    };
    let mut candidates = on_delta(&roots.preprojective, RootClass::Preprojective)?;
    candidates.extend(on_delta(&roots.preinjective, RootClass::Preinjective)?);
    if !candidates.is_empty() {
        for n in 0..=bound {
            for (class, base) in &candidates {
                let x = base + &delta.scale(n as i64);
                if cache.general_verdict(theta, &x)?.is_semistable() {
                    certificates.push(Certificate::MuDeltaWitness {
                        class: *class,
                        dim: x.clone(),
                    });
                    return Ok(MuDeltaAnalysis {
                        mu_delta,
                        case: MuDeltaCase::TameCategory,
                        witness: Some((*class, x)),
                        certificates,
                    });
                }
            }
        }
    }
    let max_pp = roots
        .preprojective
        .iter()
        .map(|a| slope(theta, a))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max();
    let min_pi = roots
        .preinjective
        .iter()
        .map(|a| slope(theta, a))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min();
    if let (Some(max_pp), Some(min_pi)) = (max_pp, min_pi) {
        if max_pp < mu_delta && min_pi > mu_delta {
            certificates.push(Certificate::RegularSides {
                max_preprojective: max_pp,
                min_preinjective: min_pi,
            });
            return Ok(MuDeltaAnalysis {
                mu_delta,
                case: MuDeltaCase::RegularCategory,
                witness: None,
                certificates,
            });
        }
    }
    Ok(MuDeltaAnalysis {
        mu_delta,
        case: MuDeltaCase::Inconclusive(bound),
        witness: None,
        certificates,
    })
}

/// Decides which of the four cases the semistables of slope μ(δ) fall into.
pub fn classify_mu_delta(q: &Quiver, theta: &Weight, bound: u32) -> Result<MuDeltaCase> {
    Ok(mu_delta_and_case(q, theta, bound)?.1)
}

/// μ(δ) together with [`classify_mu_delta`].
pub fn mu_delta_and_case(q: &Quiver, theta: &Weight, bound: u32) -> Result<(Slope, MuDeltaCase)> {
    let mut cache = SubdimCache::new(q);
    let a = analyse_mu_delta(q, theta, bound, &mut cache)?;
    Ok((a.mu_delta, a.case))
}

/// Start of the certified infinite family in the regular case: the ladder
/// that is eventually (and from its start on) the maximal-slope preprojective
/// on each level.
fn dominant_ladder(q: &Quiver, theta: &Weight) -> Result<DimVector> {
    let delta = q.minimal_imaginary_root()?;
    let roots = base_roots(q)?.preprojective;
    let t = theta.pair(&delta) as i128;
    let m = delta.total() as i128;
    let stats: Vec<(i128, i128, &DimVector)> = roots
        .iter()
        .map(|a| (theta.pair(a) as i128, a.total() as i128, a))
        .collect();
    // m·θ(α) - θ(δ)·|α| orders ladders by their limiting behaviour
    let drift = |a: i128, s: i128| m * a - t * s;
    let (ae, se, best) = stats
        .iter()
        .copied()
        .max_by(|x, y| {
            drift(x.0, x.1)
                .cmp(&drift(y.0, y.1))
                .then_with(|| (x.0 * y.1).cmp(&(y.0 * x.1)))
                .then_with(|| y.2.cmp(x.2))
        })
        .ok_or_else(|| Error::InternalInconsistency("no preprojective roots below delta".into()))?;
    let mut start = 0i128;
    for &(ab, sb, _) in &stats {
        let d0 = ae * sb - ab * se;
        let d1 = drift(ae, se) - drift(ab, sb);
        if d0 < 0 {
            if d1 <= 0 {
                return Err(Error::InternalInconsistency(
                    "dominant ladder selection".into(),
                ));
            }
            start = start.max((-d0 + d1 - 1) / d1);
        }
    }
    Ok(best + &delta.scale(start as i64))
}

/// First `count` members of the certified infinite family, in the regular
/// case only.
pub fn infinite_family(
    q: &Quiver,
    theta: &Weight,
    count: usize,
) -> Result<Vec<(DimVector, Slope)>> {
    let case = classify_mu_delta(q, theta, DEFAULT_BOUND)?;
    if case != MuDeltaCase::RegularCategory {
        return Err(Error::NotRegularCase);
    }
    family_members(q, theta, &dominant_ladder(q, theta)?, count)
}

fn family_members(
    q: &Quiver,
    theta: &Weight,
    start: &DimVector,
    count: usize,
) -> Result<Vec<(DimVector, Slope)>> {
    let delta = q.minimal_imaginary_root()?;
    (0..count)
        .map(|n| {
            let d = start + &delta.scale(n as i64);
            let s = slope(theta, &d)?;
            Ok((d, s))
        })
        .collect()
}

/// Result of walking the preprojective ladders of one quiver.
struct LadderScan {
    semistables: Vec<(DimVector, Slope)>,
    certificates: Vec<Certificate>,
    exhausted: bool,
}

/// Ladder `base + nδ` with its limiting direction relative to μ(δ).
fn retires(
    q: &Quiver,
    base: &DimVector,
    level: u32,
    delta: &DimVector,
    mu_delta: Slope,
    theta: &Weight,
    killer: &Killer,
) -> Result<Option<KillRule>> {
    let x = base + &delta.scale(level as i64);
    let here = slope(theta, &x)?;
    let base_slope = slope(theta, base)?;
    let target = Located {
        class: RootClass::Preprojective,
        dim: &x,
    };
    // sub-kill: Hom(κ, X_n) grows by <κ, δ> = -defect(κ) per level
    let sub_slope_ok = match base_slope.cmp(&mu_delta) {
        std::cmp::Ordering::Less => killer.slope >= mu_delta,
        std::cmp::Ordering::Equal => killer.slope > mu_delta,
        std::cmp::Ordering::Greater => killer.slope > here,
    };
    if sub_slope_ok
        && q.euler_unchecked(&killer.dim, delta) >= 0
        && guaranteed_hom(q, killer.located(), target)? >= 1
    {
        return Ok(Some(KillRule::SubKill));
    }
    // quot-kill: Hom(X_n, N) grows by <δ, N> = defect(N) per level
    let quot_slope_ok = match base_slope.cmp(&mu_delta) {
        std::cmp::Ordering::Greater => killer.slope <= mu_delta,
        std::cmp::Ordering::Equal => killer.slope < mu_delta,
        std::cmp::Ordering::Less => killer.slope < here,
    };
    if quot_slope_ok
        && q.euler_unchecked(delta, &killer.dim) >= 0
        && guaranteed_hom(q, target, killer.located())? >= 1
    {
        return Ok(Some(KillRule::QuotKill));
    }
    Ok(None)
}

fn kills_once(q: &Quiver, x: &DimVector, here: Slope, killer: &Killer) -> Result<Option<KillRule>> {
    let target = Located {
        class: RootClass::Preprojective,
        dim: x,
    };
    if killer.slope > here && guaranteed_hom(q, killer.located(), target)? >= 1 {
        return Ok(Some(KillRule::SubKill));
    }
    if killer.slope < here && guaranteed_hom(q, target, killer.located())? >= 1 {
        return Ok(Some(KillRule::QuotKill));
    }
    Ok(None)
}

/// Walks every preprojective ladder of `q` level by level, deciding each
/// position exactly and retiring ladders once a killer covers their tail.
///
/// `delta_semistable` says whether μ(δ) is already known to be a slope, in
/// which case ladders of constant slope μ(δ) need no further work.
fn scan_preprojectives(
    cache: &mut SubdimCache<'_>,
    theta: &Weight,
    bound: u32,
    delta_semistable: bool,
    mut killers: Vec<Killer>,
) -> Result<LadderScan> {
    let q = cache.quiver();
    let delta = q.minimal_imaginary_root()?;
    let mu_delta = slope(theta, &delta)?;
    let mut alive = base_roots(q)?.preprojective;
    let mut out = LadderScan {
        semistables: Vec::new(),
        certificates: Vec::new(),
        exhausted: false,
    };
    for level in 0..=bound {
        if alive.is_empty() {
            break;
        }
        let mut found = Vec::new();
        let mut survivors = Vec::new();
        for base in alive {
            let x = &base + &delta.scale(level as i64);
            let here = slope(theta, &x)?;
            let mut retired = None;
            for k in &killers {
                if let Some(rule) = retires(q, &base, level, &delta, mu_delta, theta, k)? {
                    retired = Some((rule, k));
                    break;
                }
            }
            if let Some((rule, k)) = retired {
                out.certificates.push(Certificate::Retired {
                    class: RootClass::Preprojective,
                    base,
                    from_level: level,
                    rule,
                    killer: k.dim.clone(),
                });
                continue;
            }
            let constant_mu_delta = delta_semistable && slope(theta, &base)? == mu_delta;
            let mut killed = None;
            for k in &killers {
                if let Some(rule) = kills_once(q, &x, here, k)? {
                    killed = Some((rule, k));
                    break;
                }
            }
            if let Some((rule, k)) = killed {
                out.certificates.push(Certificate::Killed {
                    class: RootClass::Preprojective,
                    dim: x.clone(),
                    rule,
                    killer: k.dim.clone(),
                });
            } else if cache.general_verdict(theta, &x)?.is_semistable() {
                found.push(Killer {
                    class: RootClass::Preprojective,
                    dim: x.clone(),
                    slope: here,
                });
            }
            if constant_mu_delta {
                out.certificates.push(Certificate::SlopeOfDelta {
                    class: RootClass::Preprojective,
                    base,
                });
            } else {
                survivors.push(base);
            }
        }
        out.semistables
            .extend(found.iter().map(|k| (k.dim.clone(), k.slope)));
        killers.extend(found);
        alive = survivors;
    }
    out.exhausted = !alive.is_empty();
    Ok(out)
}

pub fn compute_slope_set(q: &Quiver, theta: &Weight, bound: u32) -> Result<SlopeSetReport> {
    compute_slope_set_with(
        q,
        theta,
        &SlopeSetOptions {
            bound,
            ..SlopeSetOptions::default()
        },
    )
}

/// Computes X_θ for a Euclidean quiver.
pub fn compute_slope_set_with(
    q: &Quiver,
    theta: &Weight,
    options: &SlopeSetOptions,
) -> Result<SlopeSetReport> {
    require_euclidean(q, theta)?;
    let bound = options.bound;
    let mut cache = SubdimCache::with_limit(q, options.max_box);
    let analysis = analyse_mu_delta(q, theta, bound, &mut cache)?;
    let mu_delta = analysis.mu_delta;
    let mut certificates = analysis.certificates;
    let delta = q.minimal_imaginary_root()?;
    let n = q.vertex_count();

    match trivial_cardinality(q, theta)? {
        Cardinality::More => {}
        shortcut => {
            let mut w = Witnesses::default();
            for i in 0..n {
                let simple = DimVector::unit(n, i);
                w.add(slope(theta, &simple)?, &simple);
            }
            certificates.insert(0, Certificate::Trivial(shortcut));
            return Ok(SlopeSetReport {
                mu_delta,
                case: analysis.case,
                verdict: Verdict::Finite {
                    slopes: w.slopes(),
                    witnesses: w.0,
                },
                certificates,
            });
        }
    }

    if analysis.case == MuDeltaCase::RegularCategory {
        let start = dominant_ladder(q, theta)?;
        certificates.push(Certificate::DominantFamily {
            base: start.clone(),
        });
        let members = family_members(q, theta, &start, options.family_preview)?;
        return Ok(SlopeSetReport {
            mu_delta,
            case: analysis.case,
            verdict: Verdict::Infinite {
                family_base: start,
                members,
            },
            certificates,
        });
    }

    let delta_semistable = analysis.case != MuDeltaCase::DynkinCategory;
    let mut witnesses = Witnesses::default();
    let mut killers = Vec::new();

    for (_, _, _, d) in tube_system(q)?.rigid_positions() {
        let v: StabilityVerdict = cache.general_verdict(theta, &d)?;
        if v.is_semistable() {
            witnesses.add(v.slope, &d);
            killers.push(Killer {
                class: RootClass::Regular,
                dim: d,
                slope: v.slope,
            });
        }
    }
    if delta_semistable {
        certificates.push(Certificate::TubeTail);
        witnesses.add(mu_delta, &delta);
        killers.push(Killer {
            class: RootClass::Regular,
            dim: delta.clone(),
            slope: mu_delta,
        });
    }
    if let Some((class, dim)) = &analysis.witness {
        witnesses.add(mu_delta, dim);
        killers.push(Killer {
            class: *class,
            dim: dim.clone(),
            slope: mu_delta,
        });
    }

    let forward = scan_preprojectives(&mut cache, theta, bound, delta_semistable, killers.clone())?;
    for (d, s) in &forward.semistables {
        witnesses.add(*s, d);
    }
    certificates.extend(forward.certificates);

    let op = q.opposite();
    let neg = theta.neg();
    let mut op_cache = SubdimCache::with_limit(&op, options.max_box);
    let dual_killers = killers.iter().map(Killer::dual).collect();
    let backward = scan_preprojectives(&mut op_cache, &neg, bound, delta_semistable, dual_killers)?;
    for (d, s) in &backward.semistables {
        witnesses.add(-*s, d);
    }
    certificates.extend(backward.certificates.into_iter().map(dualize_certificate));

    let verdict = if forward.exhausted || backward.exhausted {
        Verdict::Inconclusive {
            bound,
            slopes: witnesses.slopes(),
            witnesses: witnesses.0,
        }
    } else {
        Verdict::Finite {
            slopes: witnesses.slopes(),
            witnesses: witnesses.0,
        }
    };
    Ok(SlopeSetReport {
        mu_delta,
        case: analysis.case,
        verdict,
        certificates,
    })
}

/// Relabels a certificate produced on the opposite quiver.
fn dualize_certificate(c: Certificate) -> Certificate {
    let swap = |r: KillRule| match r {
        KillRule::SubKill => KillRule::QuotKill,
        KillRule::QuotKill => KillRule::SubKill,
    };
    match c {
        Certificate::Killed {
            class,
            dim,
            rule,
            killer,
        } => Certificate::Killed {
            class: class.dual(),
            dim,
            rule: swap(rule),
            killer,
        },
        Certificate::Retired {
            class,
            base,
            from_level,
            rule,
            killer,
        } => Certificate::Retired {
            class: class.dual(),
            base,
            from_level,
            rule: swap(rule),
            killer,
        },
        Certificate::SlopeOfDelta { class, base } => Certificate::SlopeOfDelta {
            class: class.dual(),
            base,
        },
        other => other,
    }
}
