//! Exhaustive enumeration of subspaces of `F_p^n`.

use super::field::row_reduce;

/// Every subspace of `F_p^n`, each as the rows of its reduced echelon basis.
pub(crate) fn all_subspaces(n: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for k in 0..=n {
        let mut pivots = Vec::with_capacity(k);
        pivot_sets(n, k, 0, &mut pivots, &mut |piv| {
            fill_free(n, piv, p, &mut out)
        });
    }
    out
}

fn pivot_sets(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in from..n {
        cur.push(c);
        pivot_sets(n, k, c + 1, cur, f);
        cur.pop();
    }
}

fn fill_free(n: usize, pivots: &[usize], p: u64, out: &mut Vec<Vec<Vec<u64>>>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &pc)| {
            ((pc + 1)..n)
                .filter(|c| !pivots.contains(c))
                .map(move |c| (r, c))
        })
        .collect();
    let mut digits = vec![0u64; free.len()];
    loop {
        let mut basis = vec![vec![0u64; n]; pivots.len()];
        for (r, &pc) in pivots.iter().enumerate() {
            basis[r][pc] = 1;
        }
        for (&(r, c), &v) in free.iter().zip(&digits) {
            basis[r][c] = v;
        }
        out.push(basis);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Whether every vector of `w` lies in the span of `basis`.
pub(crate) fn contains(basis: &[Vec<u64>], w: &[Vec<u64>], p: u64) -> bool {
    if w.is_empty() {
        return true;
    }
    let mut rows: Vec<Vec<u64>> = basis.iter().chain(w).cloned().collect();
    row_reduce(&mut rows, p) == basis.len()
}
