//! Quivers, dimension vectors and the bilinear forms attached to them.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Definiteness, Matrix};

/// Vertex count above which a quiver document is rejected.
pub const MAX_VERTICES: usize = 64;
/// Arrow count above which a quiver document is rejected.
pub const MAX_ARROWS: usize = 4096;

/// Integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// Dimension vector of the simple representation at vertex `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
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

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self <= other` and `self != other`.
    pub fn lt(&self, other: &DimVector) -> bool {
        self.le(other) && self != other
    }

    pub fn scale(&self, c: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> DimVector {
        self.scale(-1)
    }

    /// All `e` with `0 <= e <= self`, in lexicographic order.
    ///
    /// `self` must be nonnegative.
    pub fn sub_box(&self) -> SubBox<'_> {
        SubBox {
            upper: self,
            next: Some(vec![0; self.0.len()]),
        }
    }

    /// Number of vectors in `sub_box`, saturating.
    pub fn box_volume(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &x| {
            acc.saturating_mul((x.max(0) as u64).saturating_add(1))
        })
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Iterator over the integer box below a dimension vector.
pub struct SubBox<'a> {
    upper: &'a DimVector,
    next: Option<Vec<i64>>,
}

impl Iterator for SubBox<'_> {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.upper.0[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(DimVector(cur))
    }
}

/// Dynkin/Euclidean series label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Series {
    A,
    D,
    E,
}

/// Representation type of a connected quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverType {
    Dynkin(Series, usize),
    Euclidean(Series, usize),
    Wild,
}

impl QuiverType {
    pub fn is_euclidean(&self) -> bool {
        matches!(self, QuiverType::Euclidean(..))
    }
}

impl fmt::Display for QuiverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverType::Dynkin(s, n) => write!(f, "Dynkin({s:?}, {n})"),
            QuiverType::Euclidean(s, n) => {
                let tilde = match s {
                    Series::A => "Ã",
                    Series::D => "D̃",
                    Series::E => "Ẽ",
                };
                write!(f, "Euclidean({tilde}, {n})")
            }
            QuiverType::Wild => write!(f, "Wild"),
        }
    }
}

/// Euler matrix `C[i][j] = [i == j] - #(arrows i -> j)`, so `<d, e> = dᵀ C e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerMatrix(Matrix);

impl EulerMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// `C + Cᵀ`, twice the Tits form.
    pub fn symmetrized(&self) -> Matrix {
        let n = self.0.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.0[i][j] + self.0[j][i]).collect())
            .collect()
    }
}

/// Direction of the Coxeter transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Tau,
    TauInverse,
}

/// Construction options for [`Quiver::with_options`].
#[derive(Debug, Clone, Copy, Default)]
pub struct QuiverOptions {
    pub allow_disconnected: bool,
}

/// A finite acyclic quiver.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    euler: EulerMatrix,
    connected: bool,
    kind: OnceLock<Result<QuiverType>>,
    delta: OnceLock<Result<DimVector>>,
    coxeter: OnceLock<Result<(Matrix, Matrix)>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a connected acyclic quiver from vertex names and arrows given by
    /// vertex index.
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_options(vertices, arrows, QuiverOptions::default())
    }

    pub fn with_options(
        vertices: Vec<String>,
        arrows: Vec<(usize, usize)>,
        options: QuiverOptions,
    ) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::MalformedInput("quiver has no vertices".into()));
        }
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.as_str(), ()).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n || t >= n) {
            return Err(Error::MalformedInput(format!(
                "arrow ({s}, {t}) out of range"
            )));
        }
        if !is_acyclic(n, &arrows) {
            return Err(Error::CyclicQuiver);
        }
        let connected = is_connected(n, &arrows);
        if !connected && !options.allow_disconnected {
            return Err(Error::DisconnectedQuiver);
        }
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &arrows {
            c[s][t] -= 1;
        }
        Ok(Quiver {
            vertices,
            arrows,
            euler: EulerMatrix(c),
            connected,
            kind: OnceLock::new(),
            delta: OnceLock::new(),
            coxeter: OnceLock::new(),
        })
    }

    /// Convenience constructor with vertices named `"1"`, `"2"`, ... and
    /// arrows given by zero-based index.
    pub fn from_edges(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), arrows.to_vec())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn euler_matrix(&self) -> &EulerMatrix {
        &self.euler
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        Quiver::with_options(
            self.vertices.clone(),
            arrows,
            QuiverOptions {
                allow_disconnected: true,
            },
        )
        .expect("reversing arrows keeps a quiver acyclic")
    }

    pub(crate) fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// The Euler form `<d, e> = dim Hom - dim Ext¹`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        Ok(self.euler_unchecked(d, e))
    }

    pub(crate) fn euler_unchecked(&self, d: &DimVector, e: &DimVector) -> i64 {
        let (d, e) = (d.entries(), e.entries());
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let arrows: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - arrows
    }

    /// The Tits form `q(d) = <d, d>`.
    pub fn tits_form(&self, d: &DimVector) -> Result<i64> {
        self.euler_form(d, d)
    }

    pub fn classify_type(&self) -> Result<QuiverType> {
        self.kind.get_or_init(|| self.compute_type()).clone()
    }

    fn compute_type(&self) -> Result<QuiverType> {
        if !self.connected {
            return Err(Error::DisconnectedQuiver);
        }
        match linalg::definiteness(&self.euler.symmetrized()) {
            Definiteness::PositiveDefinite => dynkin_shape(self),
            Definiteness::PositiveSemidefinite(1) => euclidean_shape(self),
            _ => Ok(QuiverType::Wild),
        }
    }

    /// The minimal positive imaginary root δ.
    pub fn minimal_imaginary_root(&self) -> Result<DimVector> {
        self.delta.get_or_init(|| self.compute_delta()).clone()
    }

    fn compute_delta(&self) -> Result<DimVector> {
        let kind = self.classify_type()?;
        if !kind.is_euclidean() {
            return Err(Error::NotTame(kind.to_string()));
        }
        let n = self.vertex_count();
        let kernel = linalg::kernel(&self.euler.symmetrized(), n);
        let [generator] = kernel.as_slice() else {
            return Err(Error::InternalInconsistency(
                "radical is not one-dimensional".into(),
            ));
        };
        let mut v = linalg::primitive_integer(generator)
            .ok_or_else(|| Error::InternalInconsistency("radical generator overflow".into()))?;
        if v.iter().any(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        if v.iter().any(|&x| x < 1) {
            return Err(Error::InternalInconsistency(
                "radical generator is not sincere".into(),
            ));
        }
        Ok(DimVector(v))
    }

    /// The defect `<δ, d>`.
    pub fn defect(&self, d: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        let delta = self.minimal_imaginary_root()?;
        Ok(self.euler_unchecked(&delta, d))
    }

    fn coxeter_matrices(&self) -> Result<&(Matrix, Matrix)> {
        self.coxeter
            .get_or_init(|| {
                let c = self.euler.rows();
                let n = c.len();
                let integral = |m: Vec<Vec<num_rational::BigRational>>| -> Result<Matrix> {
                    m.into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|x| {
                                    if !x.is_integer() {
                                        return Err(Error::NonIntegralResult);
                                    }
                                    x.to_integer().to_i64().ok_or(Error::NonIntegralResult)
                                })
                                .collect()
                        })
                        .collect()
                };
                let inv = integral(linalg::inverse(c).ok_or(Error::NonIntegralResult)?)?;
                // tau: -C⁻¹Cᵀ, tau⁻¹: -C⁻ᵀC
                let mut tau = vec![vec![0i64; n]; n];
                let mut tau_inv = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        tau[i][j] = -(0..n).map(|k| inv[i][k] * c[j][k]).sum::<i64>();
                        tau_inv[i][j] = -(0..n).map(|k| inv[k][i] * c[k][j]).sum::<i64>();
                    }
                }
                Ok((tau, tau_inv))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Applies the Coxeter transform, realizing τ (or τ⁻¹) on dimension
    /// vectors of non-projective (non-injective) indecomposables.
    pub fn coxeter_apply(&self, d: &DimVector, direction: Direction) -> Result<DimVector> {
        self.check_dim(d)?;
        let (tau, tau_inv) = self.coxeter_matrices()?;
        let m = match direction {
            Direction::Tau => tau,
            Direction::TauInverse => tau_inv,
        };
        Ok(DimVector(
            m.iter()
                .map(|row| row.iter().zip(d.entries()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// Serializable document form of the quiver.
    pub fn to_document(&self) -> QuiverDocument {
        QuiverDocument {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| [self.vertices[s].clone(), self.vertices[t].clone()])
                .collect(),
        }
    }
}

fn is_acyclic(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(s, t) in arrows {
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut visited = 0;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    visited == n
}

fn neighbours(n: usize, arrows: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s].push(t);
        adj[t].push(s);
    }
    adj
}

fn is_connected(n: usize, arrows: &[(usize, usize)]) -> bool {
    let adj = neighbours(n, arrows);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Lengths (in vertices) of the arms hanging off a branch vertex of a tree.
fn arm_lengths(adj: &[Vec<usize>], centre: usize) -> Vec<usize> {
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    arms
}

fn dynkin_shape(q: &Quiver) -> Result<QuiverType> {
    let n = q.vertex_count();
    let adj = neighbours(n, &q.arrows);
    let branches: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let shape = match branches.as_slice() {
        [] => Some(Series::A),
        [c] => match arm_lengths(&adj, *c).as_slice() {
            [1, 1, _] => Some(Series::D),
            [1, 2, 2..=4] => Some(Series::E),
            _ => None,
        },
        _ => None,
    };
    shape.map(|s| QuiverType::Dynkin(s, n)).ok_or_else(|| {
        Error::InternalInconsistency("positive definite form on a non-ADE graph".into())
    })
}

fn euclidean_shape(q: &Quiver) -> Result<QuiverType> {
    let n = q.vertex_count();
    if q.arrows.len() == n {
        return Ok(QuiverType::Euclidean(Series::A, n - 1));
    }
    let adj = neighbours(n, &q.arrows);
    let branches: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let shape = match branches.as_slice() {
        [c] if adj[*c].len() == 4 => Some(Series::D),
        [_, _] => Some(Series::D),
        [c] => match arm_lengths(&adj, *c).as_slice() {
            [2, 2, 2] | [1, 3, 3] | [1, 2, 5] => Some(Series::E),
            _ => None,
        },
        _ => None,
    };
    shape
        .map(|s| QuiverType::Euclidean(s, n - 1))
        .ok_or_else(|| {
            Error::InternalInconsistency("semidefinite form on a non-affine graph".into())
        })
}

/// JSON document describing a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<[String; 2]>,
}

/// Parses and validates a quiver document.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let doc: QuiverDocument =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    quiver_from_document(doc)
}

pub fn quiver_from_document(doc: QuiverDocument) -> Result<Quiver> {
    if doc.vertices.len() > MAX_VERTICES {
        return Err(Error::MalformedInput(format!(
            "more than {MAX_VERTICES} vertices"
        )));
    }
    if doc.arrows.len() > MAX_ARROWS {
        return Err(Error::MalformedInput(format!(
            "more than {MAX_ARROWS} arrows"
        )));
    }
    let mut index = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    let arrows = doc
        .arrows
        .iter()
        .map(|[s, t]| {
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| {
                    Error::MalformedInput(format!("arrow references unknown vertex {v:?}"))
                })
            };
            Ok((lookup(s)?, lookup(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Quiver::new(doc.vertices, arrows)
}
