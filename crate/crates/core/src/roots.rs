//! Positive roots of Euclidean quivers and the `α + nδ` ladder.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// AR class of an indecomposable, read off from the sign of its defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootClass {
    Preprojective,
    Regular,
    Preinjective,
}

impl RootClass {
    pub fn from_defect(defect: i64) -> Self {
        match defect.signum() {
            -1 => RootClass::Preprojective,
            0 => RootClass::Regular,
            _ => RootClass::Preinjective,
        }
    }

    /// The class of the dual module over the opposite quiver.
    pub fn dual(self) -> Self {
        match self {
            RootClass::Preprojective => RootClass::Preinjective,
            RootClass::Regular => RootClass::Regular,
            RootClass::Preinjective => RootClass::Preprojective,
        }
    }
}

/// Real roots strictly below δ, split by class. Each list is sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseRoots {
    pub preprojective: Vec<DimVector>,
    pub regular: Vec<DimVector>,
    pub preinjective: Vec<DimVector>,
}

impl BaseRoots {
    pub fn all(&self) -> impl Iterator<Item = &DimVector> {
        self.preprojective
            .iter()
            .chain(&self.regular)
            .chain(&self.preinjective)
    }

    pub fn contains(&self, d: &DimVector) -> bool {
        self.all().any(|x| x == d)
    }
}

fn require_delta(q: &Quiver) -> Result<DimVector> {
    q.minimal_imaginary_root()
}

/// All `d` with `0 < d < δ` and `q(d) = 1`, in lexicographic order.
pub fn real_roots_below_delta(q: &Quiver) -> Result<Vec<DimVector>> {
    let delta = require_delta(q)?;
    let zero = DimVector::zeros(q.vertex_count());
    Ok(delta
        .sub_box()
        .filter(|d| *d != zero && *d != delta && q.euler_unchecked(d, d) == 1)
        .collect())
}

pub fn is_real_root(q: &Quiver, d: &DimVector) -> Result<bool> {
    require_delta(q)?;
    q.check_dim(d)?;
    Ok(d.is_nonnegative() && !d.is_zero() && q.euler_unchecked(d, d) == 1)
}

pub fn is_imaginary_root(q: &Quiver, d: &DimVector) -> Result<bool> {
    let delta = require_delta(q)?;
    q.check_dim(d)?;
    let m = d.entries()[0] / delta.entries()[0];
    Ok(m >= 1 && delta.scale(m) == *d)
}

pub fn classify_root(q: &Quiver, d: &DimVector) -> Result<RootClass> {
    if !is_real_root(q, d)? && !is_imaginary_root(q, d)? {
        return Err(Error::NotARoot(d.to_string()));
    }
    Ok(RootClass::from_defect(q.defect(d)?))
}

pub fn base_roots(q: &Quiver) -> Result<BaseRoots> {
    let mut out = BaseRoots {
        preprojective: Vec::new(),
        regular: Vec::new(),
        preinjective: Vec::new(),
    };
    for d in real_roots_below_delta(q)? {
        match RootClass::from_defect(q.defect(&d)?) {
            RootClass::Preprojective => out.preprojective.push(d),
            RootClass::Regular => out.regular.push(d),
            RootClass::Preinjective => out.preinjective.push(d),
        }
    }
    Ok(out)
}

/// `base + n·δ` for a base root.
pub fn ladder_dim(q: &Quiver, base: &DimVector, n: u32) -> Result<DimVector> {
    if !base_roots(q)?.contains(base) {
        return Err(Error::NotABaseRoot(base.to_string()));
    }
    let delta = q.minimal_imaginary_root()?;
    Ok(base + &delta.scale(n as i64))
}

/// Whether `d` is the dimension vector of an indecomposable without
/// self-extensions or of the generic representation of dimension δ, i.e. the
/// vectors whose generic representation is a brick.
pub fn is_schur_root(q: &Quiver, d: &DimVector) -> Result<bool> {
    use crate::quiver::QuiverType;
    q.check_dim(d)?;
    if !d.is_nonnegative() || d.is_zero() {
        return Ok(false);
    }
    let tits = q.euler_unchecked(d, d);
    match q.classify_type()? {
        QuiverType::Dynkin(..) => Ok(tits == 1),
        QuiverType::Euclidean(..) => {
            let delta = q.minimal_imaginary_root()?;
            if *d == delta {
                return Ok(true);
            }
            if tits != 1 {
                return Ok(false);
            }
            Ok(q.defect(d)? != 0 || d.lt(&delta))
        }
        QuiverType::Wild => Ok(false),
    }
}
