//! Exact solution sets of small rational linear systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `x = particular + sum t_i * basis_i`, the `t_i` being the free
/// unknowns (listed in `free`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<BigRational>>,
}

/// Reduced row echelon form of `[A | b]`; `None` when inconsistent.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<AffineSolution> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let pv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][f].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, free, basis })
}
