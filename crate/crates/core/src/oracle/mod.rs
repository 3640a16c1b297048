//! Independent ground truth at small scale: explicit representations over
//! prime fields, Hom dimensions by linear algebra, and brute-force
//! subrepresentation enumeration.
//!
//! This is a checking tool. The enumeration is exponential and guarded by
//! [`MAX_BRUTEFORCE_TOTAL`] and [`BRUTEFORCE_FIELDS`].

mod field;
mod subspaces;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::stability::{StabilityVerdict, SubdimCache, Weight};
use crate::tubes::tube_system;

/// Largest total dimension accepted by the brute-force enumeration.
pub const MAX_BRUTEFORCE_TOTAL: i64 = 8;
/// Fields accepted by the brute-force enumeration.
pub const BRUTEFORCE_FIELDS: [u64; 2] = [2, 3];

type Matrix = Vec<Vec<u64>>;

/// A representation given by explicit matrices over `F_p`. The matrix of an
/// arrow `i -> j` has `d_j` rows and `d_i` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitRep {
    dim: DimVector,
    field: u64,
    arrows: Vec<(usize, usize)>,
    matrices: Vec<Matrix>,
}

fn check_prime(p: u64) -> Result<()> {
    if p > u32::MAX as u64 || !field::is_prime(p) {
        return Err(Error::MalformedInput(format!(
            "field size {p} is not a supported prime"
        )));
    }
    Ok(())
}

fn check_dim_vector(q: &Quiver, d: &DimVector) -> Result<()> {
    if d.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            got: d.len(),
        });
    }
    if !d.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    Ok(())
}

impl ExplicitRep {
    pub fn new(q: &Quiver, dim: DimVector, field: u64, matrices: Vec<Matrix>) -> Result<Self> {
        check_prime(field)?;
        check_dim_vector(q, &dim)?;
        if matrices.len() != q.arrows().len() {
            return Err(Error::MalformedInput(format!(
                "expected {} matrices, got {}",
                q.arrows().len(),
                matrices.len()
            )));
        }
        let d = dim.entries();
        let mut reduced = Vec::with_capacity(matrices.len());
        for (m, &(s, t)) in matrices.into_iter().zip(q.arrows()) {
            if m.len() != d[t] as usize || m.iter().any(|row| row.len() != d[s] as usize) {
                return Err(Error::MalformedInput(format!(
                    "matrix for arrow {s}->{t} must be {}x{}",
                    d[t], d[s]
                )));
            }
            reduced.push(
                m.into_iter()
                    .map(|row| row.into_iter().map(|x| x % field).collect())
                    .collect(),
            );
        }
        Ok(ExplicitRep {
            dim,
            field,
            arrows: q.arrows().to_vec(),
            matrices: reduced,
        })
    }

    /// The semisimple representation: every arrow acts by zero.
    pub fn zero(q: &Quiver, dim: DimVector, field: u64) -> Result<Self> {
        check_dim_vector(q, &dim)?;
        let d = dim.entries();
        let matrices = q
            .arrows()
            .iter()
            .map(|&(s, t)| vec![vec![0; d[s] as usize]; d[t] as usize])
            .collect();
        Self::new(q, dim, field, matrices)
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn field(&self) -> u64 {
        self.field
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// The dual representation over the opposite quiver: arrows reversed,
    /// matrices transposed.
    pub fn transpose(&self) -> ExplicitRep {
        let d = self.dim.entries();
        let matrices = self
            .matrices
            .iter()
            .zip(&self.arrows)
            .map(|(m, &(s, t))| {
                (0..d[s] as usize)
                    .map(|c| (0..d[t] as usize).map(|r| m[r][c]).collect())
                    .collect()
            })
            .collect();
        ExplicitRep {
            dim: self.dim.clone(),
            field: self.field,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            matrices,
        }
    }

    fn dims(&self) -> Vec<usize> {
        self.dim.entries().iter().map(|&x| x as usize).collect()
    }
}

fn draw(q: &Quiver, d: &DimVector, p: u64, rng: &mut ChaCha8Rng) -> Result<ExplicitRep> {
    let e = d.entries();
    let matrices = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            (0..e[t])
                .map(|_| (0..e[s]).map(|_| rng.gen_range(0..p)).collect())
                .collect()
        })
        .collect();
    ExplicitRep::new(q, d.clone(), p, matrices)
}

/// A representation with uniformly random matrix entries, deterministic in
/// `seed`.
pub fn random_rep(q: &Quiver, d: &DimVector, p: u64, seed: u64) -> Result<ExplicitRep> {
    check_prime(p)?;
    check_dim_vector(q, d)?;
    draw(q, d, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `dim Hom(m, n)` as the kernel dimension of
/// `(φ_i) ↦ (φ_j M_a - N_a φ_i)_{a: i -> j}`.
#[allow(clippy::needless_range_loop)]
pub fn hom_dim(m: &ExplicitRep, n: &ExplicitRep) -> Result<usize> {
    if m.field != n.field || m.arrows != n.arrows || m.dim.len() != n.dim.len() {
        return Err(Error::FieldMismatch);
    }
    let p = m.field;
    let (dm, dn) = (m.dims(), n.dims());
    let mut offsets = Vec::with_capacity(dm.len());
    let mut unknowns = 0;
    for i in 0..dm.len() {
        offsets.push(unknowns);
        unknowns += dn[i] * dm[i];
    }
    if unknowns == 0 {
        return Ok(0);
    }
    // φ_i[r][c] sits at offsets[i] + r * dm[i] + c
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * dm[i] + c;
    let mut rows = Vec::new();
    for (a, &(i, j)) in m.arrows.iter().enumerate() {
        let (ma, na) = (&m.matrices[a], &n.matrices[a]);
        for r in 0..dn[j] {
            for c in 0..dm[i] {
                let mut eq = vec![0u64; unknowns];
                for k in 0..dm[j] {
                    let v = var(j, r, k);
                    eq[v] = (eq[v] + ma[k][c]) % p;
                }
                for k in 0..dn[i] {
                    let v = var(i, k, c);
                    eq[v] = (eq[v] + p - na[r][k]) % p;
                }
                rows.push(eq);
            }
        }
    }
    Ok(unknowns - field::rank(rows, p))
}

pub fn end_dim(m: &ExplicitRep) -> usize {
    hom_dim(m, m).expect("a representation is compatible with itself")
}

/// Draws seeded random representations of dimension `d` until one is
/// certified to be a general representation.
///
/// * If the general representation of dimension `d` is rigid,
///   `dim End = <d, d>` certifies that the draw is rigid, hence general.
/// * For `d = δ` of a Euclidean quiver, `dim End = 1` and
///   `Hom(E, M) = 0` for every quasi-simple `E` of a non-homogeneous tube
///   certify that `M` is a brick in a homogeneous tube.
///
/// Other dimension vectors are `NotSupportedDim`.
pub fn verify_generic(
    q: &Quiver,
    d: &DimVector,
    p: u64,
    attempts: usize,
    seed: u64,
) -> Result<ExplicitRep> {
    check_prime(p)?;
    check_dim_vector(q, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if d.is_zero() {
        return ExplicitRep::zero(q, d.clone(), p);
    }
    let rigid = match SubdimCache::new(q).is_rigid(d) {
        Ok(r) => r,
        Err(Error::NotTame(_)) => false,
        Err(e) => return Err(e),
    };
    if rigid {
        for _ in 0..attempts {
            let m = draw(q, d, p, &mut rng)?;
            if end_dim(&m) as i64 == q.euler_unchecked(d, d) {
                return Ok(m);
            }
        }
        return Err(Error::GenericityNotFound(attempts));
    }
    let euclidean = q.classify_type()?.is_euclidean();
    if euclidean && *d == q.minimal_imaginary_root()? {
        let tubes = tube_system(q)?;
        let quasi_simples = tubes
            .quasi_simples()
            .map(|e| verify_generic(q, e, p, attempts, seed))
            .collect::<Result<Vec<_>>>()?;
        for _ in 0..attempts {
            let m = draw(q, d, p, &mut rng)?;
            if end_dim(&m) == 1 && quasi_simples.iter().all(|e| hom_dim(e, &m) == Ok(0)) {
                return Ok(m);
            }
        }
        return Err(Error::GenericityNotFound(attempts));
    }
    Err(Error::NotSupportedDim(
        d.to_string(),
        "no certificate of genericity for this dimension vector".into(),
    ))
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Vec<usize> {
    let mut indegree = vec![0usize; n];
    for &(_, t) in arrows {
        indegree[t] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    order
}

/// Dimension vectors of all subrepresentations of `m`, in lexicographic
/// order, including `0` and `dim m`.
pub fn subdims_bruteforce(m: &ExplicitRep) -> Result<Vec<DimVector>> {
    if m.dim.total() > MAX_BRUTEFORCE_TOTAL || !BRUTEFORCE_FIELDS.contains(&m.field) {
        return Err(Error::ResourceLimit(format!(
            "brute force needs total dimension <= {MAX_BRUTEFORCE_TOTAL} over F_2 or F_3, got {} over F_{}",
            m.dim.total(),
            m.field
        )));
    }
    let dims = m.dims();
    let n = dims.len();
    let max = dims.iter().copied().max().unwrap_or(0);
    let spaces: Vec<Vec<Matrix>> = (0..=max)
        .map(|k| subspaces::all_subspaces(k, m.field))
        .collect();
    let order = topological_order(n, &m.arrows);
    let mut chosen: Vec<Matrix> = vec![Vec::new(); n];
    let mut found = BTreeSet::new();
    enumerate(m, &order, 0, &spaces, &mut chosen, &mut found);
    Ok(found.into_iter().collect())
}

fn enumerate(
    m: &ExplicitRep,
    order: &[usize],
    depth: usize,
    spaces: &[Vec<Matrix>],
    chosen: &mut Vec<Matrix>,
    found: &mut BTreeSet<DimVector>,
) {
    let Some(&v) = order.get(depth) else {
        found.insert(DimVector::new(
            chosen.iter().map(|b| b.len() as i64).collect(),
        ));
        return;
    };
    let p = m.field;
    let required: Matrix = m
        .arrows
        .iter()
        .enumerate()
        .filter(|(_, &(_, t))| t == v)
        .flat_map(|(a, &(s, _))| {
            chosen[s]
                .iter()
                .map(move |u| field::apply(&m.matrices[a], u, p))
        })
        .collect();
    let dim_v = m.dims()[v];
    for basis in &spaces[dim_v] {
        if subspaces::contains(basis, &required, p) {
            chosen[v] = basis.clone();
            enumerate(m, order, depth + 1, spaces, chosen, found);
        }
    }
    chosen[v].clear();
}

/// Slope test of a module of dimension `d` against the sorted list `subs` of
/// all its subrepresentation dimension vectors, `0` and `d` included.
pub fn king_verdict(theta: &Weight, d: &DimVector, subs: &[DimVector]) -> Result<StabilityVerdict> {
    if d.is_zero() {
        return Err(Error::ZeroDimVector);
    }
    let proper = subs.iter().filter(|e| !e.is_zero() && *e != d);
    StabilityVerdict::from_subdims(theta, d, proper)
}

/// Direct slope test over all subrepresentations of `m`, cross-checked
/// against the quotient side via the transpose over the opposite quiver.
pub fn semistable_bruteforce(m: &ExplicitRep, theta: &Weight) -> Result<StabilityVerdict> {
    if theta.len() != m.dim.len() {
        return Err(Error::DimensionMismatch {
            expected: m.dim.len(),
            got: theta.len(),
        });
    }
    if m.dim.is_zero() {
        return Err(Error::ZeroDimVector);
    }
    let direct = king_verdict(theta, &m.dim, &subdims_bruteforce(m)?)?;
    let dual = king_verdict(&theta.neg(), &m.dim, &subdims_bruteforce(&m.transpose())?)?;
    if direct.status != dual.status {
        return Err(Error::InternalInconsistency(format!(
            "submodule test says {:?}, quotient test says {:?}",
            direct.status, dual.status
        )));
    }
    Ok(direct)
}
