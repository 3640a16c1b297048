//! Slopes, weights and the semistability decision for dimension vectors.
//!
//! Semistability of a representation is decided here for the *general*
//! representation of a dimension vector. For a vector whose general
//! representation is a brick (a real Schur root, or δ of a Euclidean quiver)
//! this is the verdict for that concrete module: the semistable locus is open
//! in the irreducible representation space, and the subrepresentation
//! dimension vectors of a general representation are exactly the generic
//! subdimension vectors.
//!
//! Generic subdimension vectors are computed with the recursive criterion
//! `e ↪ d` iff `<e', d - e> >= 0` for every `e' ↪ e`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, QuiverType};
use crate::roots::is_schur_root;

/// Default cap on the box volume explored for a single generic-subdimension
/// computation. Overridden by the `QSTAB_MAX_BOX` environment variable.
pub const DEFAULT_MAX_BOX: u64 = 500_000;

/// Integer weight θ; the slope of `d` is `θ·d / Σd`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    /// The all-ones weight θ₀.
    pub fn ones(n: usize) -> Self {
        Weight(vec![1; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pair(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(d.entries()).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }

    /// `θ + c·θ₀`.
    pub fn shifted(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x + c).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub(crate) fn check_len(&self, q: &Quiver) -> Result<()> {
        if self.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: q.vertex_count(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// Exact rational slope, always in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope(Ratio<i64>);

impl Slope {
    pub fn new(numer: i64, denom: i64) -> Self {
        Slope(Ratio::new(numer, denom))
    }

    pub fn integer(n: i64) -> Self {
        Slope(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl std::ops::Neg for Slope {
    type Output = Slope;
    fn neg(self) -> Slope {
        Slope(-self.0)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("bad slope {s:?}"));
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Slope::new(p, q))
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The slope `θ·d / Σd` of a nonzero nonnegative dimension vector.
pub fn slope(theta: &Weight, d: &DimVector) -> Result<Slope> {
    if theta.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: theta.len(),
            got: d.len(),
        });
    }
    if !d.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    let size = d.total();
    if size == 0 {
        return Err(Error::ZeroDimVector);
    }
    Ok(Slope::new(theta.pair(d), size))
}

/// The rational linear form `d ↦ θ(d) - a·Σd`.
///
/// `μ(d) = a` iff the form vanishes on `d`, and `μ(d) <= a` iff it is
/// nonpositive there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaShift {
    coefficients: Vec<Ratio<i64>>,
}

impl ThetaShift {
    pub fn coefficients(&self) -> &[Ratio<i64>] {
        &self.coefficients
    }

    pub fn eval(&self, d: &DimVector) -> Ratio<i64> {
        self.coefficients
            .iter()
            .zip(d.entries())
            .map(|(c, &x)| c * x)
            .sum()
    }
}

pub fn theta_shift(theta: &Weight, a: Slope) -> ThetaShift {
    ThetaShift {
        coefficients: theta
            .entries()
            .iter()
            .map(|&t| Ratio::from_integer(t) - a.ratio())
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Stable,
    Semistable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub status: Status,
    pub slope: Slope,
    /// Generic subdimension vector of maximal slope, when that slope exceeds
    /// the slope of the input. Ties go to the larger total dimension (the
    /// maximal destabilizing subobject), then to the lexicographically
    /// smallest vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violator: Option<DimVector>,
    /// Proper generic subdimension vector of the same slope, when the input is
    /// semistable but not stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal_slope_sub: Option<DimVector>,
}

impl StabilityVerdict {
    pub fn is_semistable(&self) -> bool {
        self.status != Status::Unstable
    }

    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }

    /// Verdict of `mu(d)` against a family of proper nonzero subdimension
    /// vectors, scanned in lexicographic order.
    pub(crate) fn from_subdims<'a>(
        theta: &Weight,
        d: &DimVector,
        proper_subs: impl IntoIterator<Item = &'a DimVector>,
    ) -> Result<Self> {
        let mu = slope(theta, d)?;
        let mut best: Option<(Slope, &DimVector)> = None;
        let mut equal = None;
        for e in proper_subs {
            let s = slope(theta, e)?;
            if s == mu && equal.is_none() {
                equal = Some(e.clone());
            }
            let better = match best {
                None => true,
                Some((b, cur)) => s > b || (s == b && e.total() > cur.total()),
            };
            if s > mu && better {
                best = Some((s, e));
            }
        }
        Ok(match (best, equal) {
            (Some((_, v)), _) => StabilityVerdict {
                status: Status::Unstable,
                slope: mu,
                violator: Some(v.clone()),
                equal_slope_sub: None,
            },
            (None, Some(e)) => StabilityVerdict {
                status: Status::Semistable,
                slope: mu,
                violator: None,
                equal_slope_sub: Some(e),
            },
            (None, None) => StabilityVerdict {
                status: Status::Stable,
                slope: mu,
                violator: None,
                equal_slope_sub: None,
            },
        })
    }
}

/// Box volume cap read from `QSTAB_MAX_BOX`, falling back to
/// [`DEFAULT_MAX_BOX`].
pub fn max_box_from_env() -> u64 {
    std::env::var("QSTAB_MAX_BOX")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BOX)
}

/// Memoized generic subdimension vectors for one quiver.
#[derive(Debug, Clone)]
pub struct SubdimCache<'q> {
    quiver: &'q Quiver,
    max_box: u64,
    memo: HashMap<DimVector, Arc<Vec<DimVector>>>,
}

impl<'q> SubdimCache<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        Self::with_limit(quiver, max_box_from_env())
    }

    pub fn with_limit(quiver: &'q Quiver, max_box: u64) -> Self {
        SubdimCache {
            quiver,
            max_box,
            memo: HashMap::new(),
        }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    /// All `e` with `0 <= e <= d` such that every representation of dimension
    /// `d` has a subrepresentation of dimension `e`; lexicographic order,
    /// including `0` and `d`.
    pub fn generic_subdims(&mut self, d: &DimVector) -> Result<Arc<Vec<DimVector>>> {
        self.quiver.check_dim(d)?;
        if !d.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
        self.subdims(d)
    }

    fn subdims(&mut self, d: &DimVector) -> Result<Arc<Vec<DimVector>>> {
        if let Some(hit) = self.memo.get(d) {
            return Ok(hit.clone());
        }
        let volume = d.box_volume();
        if volume > self.max_box {
            return Err(Error::ResourceLimit(format!(
                "generic subdimension box of {d} has volume {volume} > {}",
                self.max_box
            )));
        }
        let mut out = Vec::new();
        for e in d.sub_box() {
            if e.is_zero() || e == *d || self.embeds(&e, d)? {
                out.push(e);
            }
        }
        let out = Arc::new(out);
        self.memo.insert(d.clone(), out.clone());
        Ok(out)
    }

    /// `e ↪ d` for `0 < e < d`.
    fn embeds(&mut self, e: &DimVector, d: &DimVector) -> Result<bool> {
        let quotient = d - e;
        let q = self.quiver;
        if q.euler_unchecked(e, &quotient) < 0 {
            return Ok(false);
        }
        let subs = self.subdims(e)?;
        Ok(subs.iter().all(|s| q.euler_unchecked(s, &quotient) >= 0))
    }

    pub fn is_generic_sub(&mut self, e: &DimVector, d: &DimVector) -> Result<bool> {
        self.quiver.check_dim(e)?;
        if !e.le(d) || !e.is_nonnegative() {
            return Ok(false);
        }
        Ok(self.generic_subdims(d)?.binary_search(e).is_ok())
    }

    /// `dim Ext¹(A, B)` for independent general representations of
    /// dimensions `a` and `b`: the largest `-<a', b>` over generic
    /// subdimension vectors `a'` of `a`, and at least 0.
    pub fn generic_ext(&mut self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.quiver.check_dim(b)?;
        let q = self.quiver;
        let subs = self.generic_subdims(a)?;
        Ok(subs
            .iter()
            .map(|s| -q.euler_unchecked(s, b))
            .max()
            .unwrap_or(0)
            .max(0))
    }

    /// Whether the general representation of dimension `d` is rigid. Over a
    /// Euclidean quiver this fails exactly when δ is a summand of the
    /// canonical decomposition, i.e. when `d - δ >= 0` and general
    /// representations of dimensions δ and `d - δ` have no extensions either
    /// way.
    pub fn is_rigid(&mut self, d: &DimVector) -> Result<bool> {
        let q = self.quiver;
        q.check_dim(d)?;
        if !d.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
        match q.classify_type()? {
            QuiverType::Dynkin(..) => Ok(true),
            QuiverType::Euclidean(..) => {
                let delta = q.minimal_imaginary_root()?;
                if !delta.le(d) {
                    return Ok(true);
                }
                let rest = d - &delta;
                Ok(self.generic_ext(&delta, &rest)? != 0 || self.generic_ext(&rest, &delta)? != 0)
            }
            kind => Err(Error::NotTame(kind.to_string())),
        }
    }

    /// Generic quotient dimension vectors `d - e` for `e ↪ d`.
    pub fn generic_quotients(&mut self, d: &DimVector) -> Result<Vec<DimVector>> {
        let mut out: Vec<DimVector> = self.generic_subdims(d)?.iter().map(|e| d - e).collect();
        out.sort();
        Ok(out)
    }

    /// Semistability of the general representation of dimension `d`, which
    /// must be a Schur root (see [`is_semistable_dim`]).
    pub fn verdict(&mut self, theta: &Weight, d: &DimVector) -> Result<StabilityVerdict> {
        let q = self.quiver;
        q.check_dim(d)?;
        if d.is_nonnegative() && !d.is_zero() && !is_schur_root(q, d)? {
            return Err(Error::NotSupportedDim(
                d.to_string(),
                "not a real Schur root or δ".into(),
            ));
        }
        self.general_verdict(theta, d)
    }

    /// Semistability of a general representation of any nonzero `d`: it is
    /// semistable iff no generic subdimension vector has larger slope. The
    /// verdict describes an actual module only when the general
    /// representation is determined, e.g. for Schur roots.
    pub fn general_verdict(&mut self, theta: &Weight, d: &DimVector) -> Result<StabilityVerdict> {
        let q = self.quiver;
        theta.check_len(q)?;
        q.check_dim(d)?;
        if !d.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
        if d.is_zero() {
            return Err(Error::ZeroDimVector);
        }
        let subs = self.generic_subdims(d)?;
        let n = subs.len();
        let proper = if n >= 2 { &subs[1..n - 1] } else { &subs[0..0] };
        StabilityVerdict::from_subdims(theta, d, proper)
    }
}

pub fn generic_subdims(q: &Quiver, d: &DimVector) -> Result<Vec<DimVector>> {
    Ok(SubdimCache::new(q).generic_subdims(d)?.as_ref().clone())
}

/// Semistability of the general representation of dimension `d`.
///
/// `d` must be a real Schur root of a Dynkin or Euclidean quiver, or δ of a
/// Euclidean quiver (the verdict then concerns a general, homogeneous,
/// representation of dimension δ); anything else is `NotSupportedDim`.
pub fn is_semistable_dim(q: &Quiver, theta: &Weight, d: &DimVector) -> Result<StabilityVerdict> {
    SubdimCache::new(q).verdict(theta, d)
}

pub fn is_stable_dim(q: &Quiver, theta: &Weight, d: &DimVector) -> Result<bool> {
    Ok(is_semistable_dim(q, theta, d)?.is_stable())
}
