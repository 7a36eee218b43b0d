//! Arithmetic in `Z[ζ_r]` for the supported conductors, in the power basis
//! `1, ζ, ..., ζ^{φ(r)-1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::ZooError;

pub const SUPPORTED: [u32; 4] = [3, 4, 7, 11];

pub fn check_supported(r: u32) -> Result<(), ZooError> {
    if SUPPORTED.contains(&r) {
        Ok(())
    } else {
        Err(ZooError::UnsupportedCyclotomic(r))
    }
}

/// Euler's totient for the supported conductors.
pub fn phi(r: u32) -> usize {
    match r {
        4 => 2,
        r => r as usize - 1,
    }
}

/// Coefficients of the monic cyclotomic polynomial, constant term first.
fn cyclotomic_poly(r: u32) -> Vec<i64> {
    match r {
        4 => vec![1, 0, 1],
        r => vec![1; r as usize],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn new(r: u32, coeffs: Vec<BigInt>) -> Result<Self, ZooError> {
        check_supported(r)?;
        if coeffs.len() != phi(r) {
            return Err(ZooError::CoefficientLength { expected: phi(r), got: coeffs.len() });
        }
        Ok(CyclotomicInt { coeffs })
    }

    pub fn from_i64s(r: u32, coeffs: &[i64]) -> Result<Self, ZooError> {
        Self::new(r, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one(r: u32) -> Result<Self, ZooError> {
        Self::zeta_power(r, 0)
    }

    /// `ζ^k` reduced into the power basis.
    pub fn zeta_power(r: u32, k: usize) -> Result<Self, ZooError> {
        check_supported(r)?;
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Ok(CyclotomicInt { coeffs: reduce(r, c) })
    }

    /// `(1 - ζ^a) / (1 - ζ) = 1 + ζ + ... + ζ^{a-1}`.
    pub fn cyclotomic_unit(r: u32, a: usize) -> Result<Self, ZooError> {
        check_supported(r)?;
        Ok(CyclotomicInt { coeffs: reduce(r, vec![BigInt::one(); a]) })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Reduces a polynomial modulo the monic cyclotomic polynomial.
fn reduce(r: u32, mut c: Vec<BigInt>) -> Vec<BigInt> {
    let f = cyclotomic_poly(r);
    let deg = f.len() - 1;
    while c.len() > deg {
        let top = c.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - deg;
        for (i, fi) in f[..deg].iter().enumerate() {
            if *fi != 0 {
                c[shift + i] -= &top * fi;
            }
        }
    }
    c.resize(deg, BigInt::zero());
    c
}

/// Product in `Z[ζ_r]`: schoolbook multiplication, then reduction mod `Φ_r`.
pub fn cyc_mul(r: u32, x: &CyclotomicInt, y: &CyclotomicInt) -> Result<CyclotomicInt, ZooError> {
    check_supported(r)?;
    let d = phi(r);
    for v in [x, y] {
        if v.coeffs.len() != d {
            return Err(ZooError::CoefficientLength { expected: d, got: v.coeffs.len() });
        }
    }
    let mut prod = vec![BigInt::zero(); 2 * d - 1];
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    Ok(CyclotomicInt { coeffs: reduce(r, prod) })
}

/// Matrix of multiplication by `u`: row `k` holds the coordinates of `u ζ^k`.
/// Fails unless the determinant is `±1`.
pub fn unit_matrix(r: u32, u: &CyclotomicInt) -> Result<IntMatrix, ZooError> {
    check_supported(r)?;
    let d = phi(r);
    let rows = (0..d)
        .map(|k| Ok(cyc_mul(r, u, &CyclotomicInt::zeta_power(r, k)?)?.coeffs))
        .collect::<Result<Vec<_>, ZooError>>()?;
    let m = IntMatrix::from_rows(rows).expect("square");
    let det = m.determinant();
    if !det.abs().is_one() {
        return Err(ZooError::NotUnit { det });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(r: u32, v: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_i64s(r, v).unwrap()
    }

    #[test]
    fn products_reduce_mod_cyclotomic_polynomial() {
        // (1 + ζ3) ζ3 = ζ + ζ^2 = -1
        assert_eq!(cyc_mul(3, &c(3, &[1, 1]), &c(3, &[0, 1])).unwrap(), c(3, &[-1, 0]));
        // ζ4^2 = -1
        assert_eq!(cyc_mul(4, &c(4, &[0, 1]), &c(4, &[0, 1])).unwrap(), c(4, &[-1, 0]));
        // ζ7^7 = 1
        let z = CyclotomicInt::zeta_power(7, 1).unwrap();
        let mut acc = CyclotomicInt::one(7).unwrap();
        for _ in 0..7 {
            acc = cyc_mul(7, &acc, &z).unwrap();
        }
        assert_eq!(acc, CyclotomicInt::one(7).unwrap());
    }

    #[test]
    fn unit_matrix_of_minus_zeta3() {
        let m = unit_matrix(3, &c(3, &[0, -1])).unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[0, -1], &[1, 1]]).unwrap());
        assert!(unit_matrix(11, &CyclotomicInt::one(11).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn cyclotomic_units_are_units() {
        let u = CyclotomicInt::cyclotomic_unit(7, 2).unwrap();
        assert_eq!(u, c(7, &[1, 1, 0, 0, 0, 0]));
        assert!(unit_matrix(7, &u).unwrap().determinant().abs().is_one());
        for a in 2..=5 {
            let u = CyclotomicInt::cyclotomic_unit(11, a).unwrap();
            assert!(unit_matrix(11, &u).is_ok());
        }
    }

    #[test]
    fn rejects_non_units_and_unsupported_conductors() {
        assert!(matches!(unit_matrix(3, &c(3, &[2, 0])), Err(ZooError::NotUnit { .. })));
        assert_eq!(CyclotomicInt::from_i64s(5, &[1, 0, 0, 0]), Err(ZooError::UnsupportedCyclotomic(5)));
        assert!(matches!(CyclotomicInt::from_i64s(3, &[1]), Err(ZooError::CoefficientLength { .. })));
    }
}
