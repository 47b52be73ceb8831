//! Dense square matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::JsonInt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<const N: usize> {
    rows: [[BigInt; N]; N],
}

/// Images of the star map, in the basis `a, x, b, y`.
pub type RepMatrix4 = IntMatrix<4>;
/// Images of the projection `q`.
pub type RepMatrix2 = IntMatrix<2>;

impl<const N: usize> IntMatrix<N> {
    pub fn zero() -> Self {
        IntMatrix {
            rows: std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero())),
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        IntMatrix {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_i64(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(|i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_rows(rows: [[BigInt; N]; N]) -> Self {
        IntMatrix { rows }
    }

    pub fn rows(&self) -> &[[BigInt; N]; N] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        (0..N).all(|i| {
            (0..N).all(|j| {
                if i == j {
                    self.rows[i][j].is_one()
                } else {
                    self.rows[i][j].is_zero()
                }
            })
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] * c)
    }

    pub fn mul_vec(&self, v: &[BigInt; N]) -> [BigInt; N] {
        std::array::from_fn(|i| {
            let mut acc = BigInt::zero();
            for (a, b) in self.rows[i].iter().zip(v) {
                acc += a * b;
            }
            acc
        })
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        let mut a: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..N {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..N).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..N {
                for j in k + 1..N {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[N - 1][N - 1]
    }

    /// Exact inverse over the rationals; `None` when singular.
    pub fn inverse_rational(&self) -> Option<[[BigRational; N]; N]> {
        let mut a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..N)
            .map(|i| {
                (0..N)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..N {
            let pivot = (col..N).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pv = a[col][col].clone();
            for j in 0..N {
                a[col][j] = &a[col][j] / &pv;
                inv[col][j] = &inv[col][j] / &pv;
            }
            for r in 0..N {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..N {
                        let t = &f * &a[col][j];
                        a[r][j] -= t;
                        let t = &f * &inv[col][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone())))
    }

    /// Inverse of a matrix with determinant `+-1`; `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        let inv = self.inverse_rational()?;
        if inv.iter().flatten().any(|x| !x.is_integer()) {
            return None;
        }
        Some(Self::from_fn(|i, j| inv[i][j].to_integer()))
    }

    /// Binary powering; negative exponents use the exact inverse.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 {
            self.inverse_unimodular()?
        } else {
            self.clone()
        };
        Some(base.pow_unsigned(exp.unsigned_abs()))
    }

    pub fn pow_unsigned(&self, mut e: u64) -> Self {
        let mut result = Self::identity();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn max_abs(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    /// Parse the text format (one row per line) or a JSON nested array.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let rows: Vec<Vec<JsonInt>> = serde_json::from_str(trimmed)?;
            return Self::from_vecs(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect());
        }
        let mut rows = Vec::new();
        for (lineno, line) in trimmed.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>().map_err(|_| {
                        Error::MatrixFormat(format!("line {}: bad integer {tok:?}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_vecs(rows)
    }

    pub fn from_vecs(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(Error::MatrixFormat(format!("expected a {N}x{N} matrix")));
        }
        Ok(Self::from_fn(|i, j| rows[i][j].clone()))
    }

    pub fn to_vecs(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }
}

impl RepMatrix4 {
    /// Upper-left 2x2 block.
    pub fn upper_left(&self) -> RepMatrix2 {
        RepMatrix2::from_fn(|i, j| self.rows[i][j].clone())
    }

    pub fn upper_right(&self) -> RepMatrix2 {
        RepMatrix2::from_fn(|i, j| self.rows[i][j + 2].clone())
    }

    pub fn lower_left(&self) -> RepMatrix2 {
        RepMatrix2::from_fn(|i, j| self.rows[i + 2][j].clone())
    }

    pub fn lower_right(&self) -> RepMatrix2 {
        RepMatrix2::from_fn(|i, j| self.rows[i + 2][j + 2].clone())
    }

    pub fn from_blocks(ul: &RepMatrix2, ur: &RepMatrix2, ll: &RepMatrix2, lr: &RepMatrix2) -> Self {
        Self::from_fn(|i, j| {
            let block = match (i < 2, j < 2) {
                (true, true) => ul,
                (true, false) => ur,
                (false, true) => ll,
                (false, false) => lr,
            };
            block.rows[i % 2][j % 2].clone()
        })
    }
}

impl RepMatrix2 {
    pub fn a(&self) -> &BigInt {
        &self.rows[0][0]
    }
    pub fn b(&self) -> &BigInt {
        &self.rows[0][1]
    }
    pub fn c(&self) -> &BigInt {
        &self.rows[1][0]
    }
    pub fn d(&self) -> &BigInt {
        &self.rows[1][1]
    }

    pub fn det2(&self) -> BigInt {
        self.a() * self.d() - self.b() * self.c()
    }
}

impl<const N: usize> Index<(usize, usize)> for IntMatrix<N> {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.rows[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for IntMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.rows[i][j]
    }
}

impl<const N: usize> Mul for &IntMatrix<N> {
    type Output = IntMatrix<N>;
    fn mul(self, rhs: &IntMatrix<N>) -> IntMatrix<N> {
        IntMatrix::from_fn(|i, j| {
            let mut acc = BigInt::zero();
            for k in 0..N {
                if !self.rows[i][k].is_zero() && !rhs.rows[k][j].is_zero() {
                    acc += &self.rows[i][k] * &rhs.rows[k][j];
                }
            }
            acc
        })
    }
}

impl<const N: usize> Mul for IntMatrix<N> {
    type Output = IntMatrix<N>;
    fn mul(self, rhs: IntMatrix<N>) -> IntMatrix<N> {
        &self * &rhs
    }
}

impl<const N: usize> Add for &IntMatrix<N> {
    type Output = IntMatrix<N>;
    fn add(self, rhs: &IntMatrix<N>) -> IntMatrix<N> {
        IntMatrix::from_fn(|i, j| &self.rows[i][j] + &rhs.rows[i][j])
    }
}

impl<const N: usize> Neg for &IntMatrix<N> {
    type Output = IntMatrix<N>;
    fn neg(self) -> IntMatrix<N> {
        IntMatrix::from_fn(|i, j| -&self.rows[i][j])
    }
}

impl<const N: usize> Neg for IntMatrix<N> {
    type Output = IntMatrix<N>;
    fn neg(self) -> IntMatrix<N> {
        -&self
    }
}

/// Rows on separate lines, right-aligned, whitespace separated.
impl<const N: usize> fmt::Display for IntMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for IntMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<const N: usize> Serialize for IntMatrix<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> = self
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(JsonInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for IntMatrix<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<JsonInt>> = Vec::deserialize(d)?;
        Self::from_vecs(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
            .map_err(serde::de::Error::custom)
    }
}
