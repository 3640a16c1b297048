//! Combinatorics of the tubular family of a Euclidean quiver.
//!
//! Only non-homogeneous tubes are materialized. A tube is stored as the
//! cyclic list of dimension vectors of its quasi-simples, ordered so that τ
//! moves position `i` to position `i + 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Direction, Quiver};
use crate::roots::{base_roots, RootClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tube {
    pub rank: usize,
    pub quasi_simples: Vec<DimVector>,
}

impl Tube {
    /// Dimension vector of the indecomposable with quasi-socle at position
    /// `i` (1-based) and quasi-length `j`.
    pub fn regular_dim(&self, i: usize, j: usize) -> Result<DimVector> {
        if i == 0 || i > self.rank || j == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "position ({i}, {j}) in a tube of rank {}",
                self.rank
            )));
        }
        let mut sum = DimVector::zeros(self.quasi_simples[0].len());
        for t in 0..j {
            sum = &sum + &self.quasi_simples[(i - 1 + t) % self.rank];
        }
        Ok(sum)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TubeSystem {
    pub tubes: Vec<Tube>,
}

impl TubeSystem {
    pub fn regular_dim(&self, tube_index: usize, i: usize, j: usize) -> Result<DimVector> {
        self.tubes
            .get(tube_index)
            .ok_or_else(|| Error::IndexOutOfRange(format!("tube {tube_index}")))?
            .regular_dim(i, j)
    }

    /// All quasi-simple dimension vectors, tube by tube.
    pub fn quasi_simples(&self) -> impl Iterator<Item = &DimVector> {
        self.tubes.iter().flat_map(|t| t.quasi_simples.iter())
    }

    /// `(tube, i, j, dim)` for every position of quasi-length below the rank.
    pub fn rigid_positions(&self) -> Vec<(usize, usize, usize, DimVector)> {
        let mut out = Vec::new();
        for (t, tube) in self.tubes.iter().enumerate() {
            for i in 1..=tube.rank {
                for j in 1..tube.rank {
                    out.push((
                        t,
                        i,
                        j,
                        tube.regular_dim(i, j).expect("indices are in range"),
                    ));
                }
            }
        }
        out
    }
}

/// Reconstructs the non-homogeneous tubes by peeling them off the regular
/// real roots below δ.
///
/// A componentwise-minimal remaining regular root is a quasi-simple, since
/// every longer module in its tube contains its quasi-socle. Its τ-orbit is
/// followed until the partial sum reaches δ, which yields the rank.
pub fn tube_system(q: &Quiver) -> Result<TubeSystem> {
    let delta = q.minimal_imaginary_root()?;
    let mut remaining = base_roots(q)?.regular;
    let mut tubes = Vec::new();
    while !remaining.is_empty() {
        let start = remaining
            .iter()
            .find(|&b| !remaining.iter().any(|c| c.lt(b)))
            .cloned()
            .expect("a finite nonempty poset has a minimal element");
        let mut orbit = vec![start.clone()];
        let mut sum = start.clone();
        while sum != delta {
            if !sum.lt(&delta) || orbit.len() > q.vertex_count() {
                return Err(Error::InternalInconsistency(format!(
                    "tau-orbit of {start} overshoots delta"
                )));
            }
            let next = q.coxeter_apply(orbit.last().expect("orbit is nonempty"), Direction::Tau)?;
            sum = &sum + &next;
            orbit.push(next);
        }
        let rank = orbit.len();
        if rank < 2 || q.coxeter_apply(&orbit[rank - 1], Direction::Tau)? != start {
            return Err(Error::InternalInconsistency(format!(
                "quasi-simples starting at {start} do not close up"
            )));
        }
        let tube = Tube {
            rank,
            quasi_simples: orbit,
        };
        for i in 1..=rank {
            for j in 1..rank {
                let d = tube.regular_dim(i, j)?;
                let pos = remaining.iter().position(|x| *x == d).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "regular position {d} is not a regular root"
                    ))
                })?;
                remaining.swap_remove(pos);
            }
        }
        tubes.push(tube);
    }
    for tube in &mut tubes {
        let first = tube
            .quasi_simples
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        tube.quasi_simples.rotate_left(first);
    }
    tubes.sort_by(|a, b| a.quasi_simples[0].cmp(&b.quasi_simples[0]));
    Ok(TubeSystem { tubes })
}

/// A module position in the AR quiver, identified by class and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Located<'a> {
    pub class: RootClass,
    pub dim: &'a DimVector,
}

/// Certified lower bound for `dim Hom(src, tgt)` between indecomposables of
/// the given classes.
///
/// Zero whenever directedness forbids maps (preinjective to
/// preprojective/regular, regular to preprojective). Otherwise the Euler form
/// is a lower bound because `dim Hom = <src, tgt> + dim Ext¹`.
pub fn guaranteed_hom(q: &Quiver, src: Located<'_>, tgt: Located<'_>) -> Result<i64> {
    for m in [src, tgt] {
        if RootClass::from_defect(q.defect(m.dim)?) != m.class {
            return Err(Error::UnknownClass(m.dim.to_string()));
        }
    }
    use RootClass::*;
    let forced_zero = matches!(
        (src.class, tgt.class),
        (Preinjective, Preprojective) | (Preinjective, Regular) | (Regular, Preprojective)
    );
    if forced_zero {
        return Ok(0);
    }
    Ok(q.euler_unchecked(src.dim, tgt.dim).max(0))
}
