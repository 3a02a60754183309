use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{column_echelon, determinant};
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, stored as a basis in column echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnLattice {
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

impl ColumnLattice {
    /// The lattice spanned by the columns of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let ech = column_echelon(generators);
        let basis = generators.mul(&ech.image_transform());
        ColumnLattice {
            basis,
            pivot_rows: ech.pivot_rows,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        ColumnLattice {
            basis: IntMatrix::zeros(ambient, 0),
            pivot_rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(ambient))
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Rational coordinates of `v` in the basis, or `None` if `v` is outside
    /// the rational span.
    pub fn rational_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient_dim());
        let k = self.rank();
        let mut x: Vec<BigRational> = Vec::with_capacity(k);
        for (c, &p) in self.pivot_rows.iter().enumerate() {
            let mut acc = BigRational::from_integer(v[p].clone());
            for (c2, xc2) in x.iter().enumerate() {
                let e = &self.basis[(p, c2)];
                if !e.is_zero() {
                    acc -= xc2 * BigRational::from_integer(e.clone());
                }
            }
            x.push(acc / BigRational::from_integer(self.basis[(p, c)].clone()));
        }
        // confirm the solution reproduces v on every row
        for (i, vi) in v.iter().enumerate() {
            let mut s = BigRational::zero();
            for (c, xc) in x.iter().enumerate() {
                let e = &self.basis[(i, c)];
                if !e.is_zero() {
                    s += xc * BigRational::from_integer(e.clone());
                }
            }
            if s != BigRational::from_integer(vi.clone()) {
                return None;
            }
        }
        Some(x)
    }

    /// Integer coordinates of `v`, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let x = self.rational_coordinates(v)?;
        x.into_iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of every column of `m`; errors with `NotSublattice` if some
    /// column is outside the lattice.
    pub fn coordinate_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            cols.push(self.coordinates(&m.column(j)).ok_or(Error::NotSublattice)?);
        }
        Ok(IntMatrix::from_columns(self.rank(), &cols))
    }

    pub fn contains_all(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }
}

/// Coordinates of the columns of `vectors` with respect to the columns of
/// `basis`, which must have full column rank.
pub fn solve_in_basis(basis: &IntMatrix, vectors: &IntMatrix) -> Result<IntMatrix> {
    let ech = column_echelon(basis);
    if ech.rank != basis.cols() {
        return Err(Error::Dimension("basis columns are dependent".into()));
    }
    let w = ech.image_transform();
    let lattice = ColumnLattice {
        basis: basis.mul(&w),
        pivot_rows: ech.pivot_rows,
    };
    Ok(w.mul(&lattice.coordinate_matrix(vectors)?))
}

/// `[super : sub]` for the column lattices of the two generator matrices.
pub fn lattice_index(sub: &IntMatrix, sup: &IntMatrix) -> Result<BigRational> {
    let sub_l = ColumnLattice::from_generators(sub);
    let sup_l = ColumnLattice::from_generators(sup);
    lattice_index_of(&sub_l, &sup_l)
}

pub fn lattice_index_of(sub: &ColumnLattice, sup: &ColumnLattice) -> Result<BigRational> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(Error::Dimension("lattices live in different spaces".into()));
    }
    let coords = sup.coordinate_matrix(sub.basis())?;
    if sub.rank() != sup.rank() {
        return Err(Error::InfiniteIndex {
            sub: sub.rank(),
            sup: sup.rank(),
        });
    }
    Ok(BigRational::from_integer(determinant(&coords).abs()))
}

/// `det(scale * basis^T * p * basis)`; 1 for an empty basis.
pub fn gram_determinant(p: &IntMatrix, basis: &IntMatrix, scale: &BigRational) -> Result<BigRational> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if p.rows() != basis.rows() {
        return Err(Error::Dimension(format!(
            "pairing of size {} against vectors of length {}",
            p.rows(),
            basis.rows()
        )));
    }
    let k = basis.cols();
    let gram = basis.transpose().mul(p).mul(basis);
    let det = BigRational::from_integer(determinant(&gram));
    Ok(det * pow_rational(scale, k as i64))
}

pub fn pow_rational(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let b = if exp < 0 { base.recip() } else { base.clone() };
    num_traits::pow(b, exp.unsigned_abs() as usize)
}

/// Inverse of a unimodular matrix.
pub fn inverse_unimodular(u: &IntMatrix) -> Result<IntMatrix> {
    let n = u.rows();
    if !u.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let inv = solve_in_basis(u, &IntMatrix::identity(n)).map_err(|_| {
        Error::Dimension("matrix is not unimodular".into())
    })?;
    Ok(inv)
}

/// Least common multiple of a sequence of positive integers (1 when empty).
pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}
