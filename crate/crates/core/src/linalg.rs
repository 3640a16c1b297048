//! Exact linear algebra over the rationals.
//!
//! Everything here works on small dense integer matrices and returns exact
//! answers. Intermediate values use arbitrary precision rationals, so user
//! supplied quivers with large arrow multiplicities cannot overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type Matrix = Vec<Vec<i64>>;

fn to_rational(mat: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    mat.iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the rational null space `{x : mat * x = 0}`.
pub(crate) fn kernel(mat: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = to_rational(mat);
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub(crate) fn primitive_integer(v: &[BigRational]) -> Option<Vec<i64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    ints.iter().map(|x| (x / &g).to_i64()).collect()
}

/// Exact inverse, or `None` when singular.
pub(crate) fn inverse(mat: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<BigRational>> = to_rational(mat)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Sign behaviour of a symmetric quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite and singular; carries the radical dimension.
    PositiveSemidefinite(usize),
    Indefinite,
}

/// Decides definiteness by symmetric Gaussian elimination (exact LDLᵀ).
///
/// A zero pivot is only admissible when its whole remaining row vanishes;
/// otherwise the form takes negative values.
pub(crate) fn definiteness(sym: &[Vec<i64>]) -> Definiteness {
    let n = sym.len();
    let mut m = to_rational(sym);
    let mut nullity = 0;
    for k in 0..n {
        let pivot = m[k][k].clone();
        if pivot.is_negative() {
            return Definiteness::Indefinite;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return Definiteness::Indefinite;
            }
            nullity += 1;
            continue;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &f * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    if nullity == 0 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefinite(nullity)
    }
}
