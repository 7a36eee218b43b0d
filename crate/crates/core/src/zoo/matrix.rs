//! Dense square matrices over the integers.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::word::parse_signed;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixSyntaxError {
    #[error("matrix rows have unequal or non-square shape")]
    Shape,
    #[error("bad matrix entry `{0}`")]
    Entry(String),
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        IntMatrix { dim, data: vec![BigInt::zero(); dim * dim] }
    }

    /// `None` unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(IntMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut t = Self::zero(d);
        for r in 0..d {
            for c in 0..d {
                t.data[c * d + r] = self.data[r * d + c].clone();
            }
        }
        t
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> Self {
        let d = a.dim + b.dim;
        let mut m = Self::zero(d);
        for r in 0..a.dim {
            for c in 0..a.dim {
                m.set(r, c, a.get(r, c).clone());
            }
        }
        for r in 0..b.dim {
            for c in 0..b.dim {
                m.set(a.dim + r, a.dim + c, b.get(r, c).clone());
            }
        }
        m
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let d = self.dim;
        if d == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..d).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if a[k][k].is_zero() {
                match (k + 1..d).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[d - 1][d - 1]
    }

    /// Inverse over the integers; `None` unless the determinant is `±1`.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Option<Self> {
        let d = self.dim;
        if !self.determinant().abs().is_one() {
            return None;
        }
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    self.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.extend((0..d).map(|c| if c == r { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for k in 0..d {
            let p = (k..d).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            let pivot = a[k][k].clone();
            for x in a[k].iter_mut() {
                *x = &*x / &pivot;
            }
            for i in 0..d {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in 0..2 * d {
                        let v = &a[k][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
        }
        let mut inv = Self::zero(d);
        for r in 0..d {
            for c in 0..d {
                let x = &a[r][d + c];
                if !x.is_integer() {
                    return None;
                }
                inv.set(r, c, x.to_integer());
            }
        }
        Some(inv)
    }

    /// `self^k`, using `inverse` for negative `k`.
    pub fn pow(&self, k: &BigInt, inverse: &IntMatrix) -> IntMatrix {
        let base = if k.is_negative() { inverse } else { self };
        let mag = k.magnitude();
        let mut acc = IntMatrix::identity(self.dim);
        for bit in (0..mag.bits()).rev() {
            acc = &acc * &acc;
            if mag.bit(bit) {
                acc = &acc * base;
            }
        }
        acc
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = IntMatrix::zero(d);
        for r in 0..d {
            for k in 0..d {
                let a = &self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = &rhs.data[k * d + c];
                    if !b.is_zero() {
                        out.data[r * d + c] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// `r1c1,r1c2,...;r2c1,...`
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            if r > 0 {
                f.write_str(";")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = s
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| parse_signed(x.trim()).ok_or_else(|| MatrixSyntaxError::Entry(x.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(rows).ok_or(MatrixSyntaxError::Shape)
    }
}
