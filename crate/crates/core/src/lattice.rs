//! Integer lattices inside a fixed ambient Z^n, stored as canonical
//! column-HNF bases so that lattice equality is matrix equality.

use crate::arith::Int;
use crate::matrix::Mat;
use crate::snf;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("lattice is not saturated")]
    NotSaturated,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    /// ambient x rank, canonical column HNF, columns independent.
    basis: Mat,
}

impl Lattice {
    pub fn full(n: usize) -> Lattice {
        Lattice {
            ambient: n,
            basis: Mat::identity(n),
        }
    }

    pub fn zero(n: usize) -> Lattice {
        Lattice {
            ambient: n,
            basis: Mat::zero(n, 0),
        }
    }

    /// Span of the columns of `generators`.
    pub fn from_generators(generators: &Mat) -> Lattice {
        Lattice {
            ambient: generators.rows(),
            basis: snf::column_hnf(generators),
        }
    }

    pub fn from_basis_unchecked(basis: Mat) -> Lattice {
        Lattice {
            ambient: basis.rows(),
            basis,
        }
    }

    pub fn kernel_of(a: &Mat) -> Lattice {
        Lattice {
            ambient: a.cols(),
            basis: snf::kernel_basis(a),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Int> {
        self.basis.column(i)
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.basis.is_identity()
    }

    /// Saturated iff Q-span ∩ Z^n equals the lattice iff all SNF divisors
    /// of the basis are 1.
    pub fn is_saturated(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        let (div, _) = snf::smith_divisors(&self.basis);
        div.iter().all(|d| d.abs() == Int::from(1))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let b = Mat::from_columns(self.ambient, &[v.to_vec()]);
        snf::solve(&self.basis, &b).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        assert_eq!(self.ambient, other.ambient);
        if other.rank() == 0 {
            return true;
        }
        snf::solve(&self.basis, &other.basis).is_some()
    }

    /// Coordinates of the columns of `vectors` in this basis; None if some
    /// column is not in the lattice.
    pub fn coordinates_of(&self, vectors: &Mat) -> Option<Mat> {
        snf::solve(&self.basis, vectors)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        // x = B1 s = B2 t  <=>  (s, -t) in ker [B1 | B2]
        let stacked = self.basis.hstack(&other.basis);
        let ker = snf::kernel_basis(&stacked);
        let k1 = self.rank();
        let s_part = Mat::from_fn(k1, ker.cols(), |r, c| ker.at(r, c).clone());
        let gens = self.basis.mul(&s_part);
        Lattice::from_generators(&gens)
    }

    /// Image of this lattice under the linear map `m`.
    pub fn apply(&self, m: &Mat) -> Lattice {
        assert_eq!(m.cols(), self.ambient);
        Lattice::from_generators(&m.mul(&self.basis))
    }

    /// Sum (join) of two lattices.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        Lattice::from_generators(&self.basis.hstack(&other.basis))
    }

    /// Hom(L, Z) inside the dual ambient lattice: the annihilator complement
    /// description. Requires a saturated lattice.
    pub fn dual(&self) -> Result<Lattice, LatticeError> {
        if !self.is_saturated() {
            return Err(LatticeError::NotSaturated);
        }
        let k = self.rank();
        if k == 0 {
            return Ok(Lattice::zero(self.ambient));
        }
        // Extend basis B to a unimodular [B | C] via Smith: B = U^-1 D V^-1
        // with D = [I_k; 0]. Then the first k rows of [B|C]^{-1} restrict to
        // the dual basis of L, extended by zero on the complement.
        let sm = snf::smith(&self.basis);
        // u * B * v = D with divisors all 1. Complete: columns of U^{-1}.
        let u_inv = sm.u.inverse_unimodular();
        // B * v = u_inv * D  => the first k columns of u_inv span a direct
        // summand containing L with the same Q-span.
        let mut ext = Mat::zero(self.ambient, self.ambient);
        for r in 0..self.ambient {
            for c in 0..k {
                ext.set(r, c, self.basis.mul(&sm.v).at(r, c).clone());
            }
            for c in k..self.ambient {
                ext.set(r, c, u_inv.at(r, c).clone());
            }
        }
        debug_assert!(ext.det().abs() == Int::from(1));
        let inv = ext.inverse_unimodular();
        // Rows 0..k of inv are the dual functionals; as column vectors in the
        // dual ambient.
        let cols: Vec<Vec<Int>> = (0..k).map(|i| inv.row(i)).collect();
        Ok(Lattice::from_generators(&Mat::from_columns(
            self.ambient,
            &cols,
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn saturation() {
        let l = Lattice::from_generators(&Mat::from_rows_i64(&[&[2], &[0]]));
        assert!(!l.is_saturated());
        let k = Lattice::from_generators(&Mat::from_rows_i64(&[&[1], &[0]]));
        assert!(k.is_saturated());
    }

    #[test]
    fn intersect_simple() {
        // Z*(1,1) ∩ Z*(1,-1) = 0; Z^2 ∩ Z*(1,1) = Z*(1,1)
        let a = Lattice::from_generators(&Mat::from_rows_i64(&[&[1], &[1]]));
        let b = Lattice::from_generators(&Mat::from_rows_i64(&[&[1], &[-1]]));
        assert_eq!(a.intersect(&b).rank(), 0);
        assert_eq!(Lattice::full(2).intersect(&a), a);
        // 2Z x Z ∩ Z x 2Z = 2Z x 2Z
        let c = Lattice::from_generators(&Mat::from_rows_i64(&[&[2, 0], &[0, 1]]));
        let d = Lattice::from_generators(&Mat::from_rows_i64(&[&[1, 0], &[0, 2]]));
        let i = c.intersect(&d);
        assert!(i.contains(&[int(2), int(0)]));
        assert!(i.contains(&[int(0), int(2)]));
        assert!(!i.contains(&[int(1), int(0)]));
        assert!(!i.contains(&[int(0), int(1)]));
    }

    #[test]
    fn dual_of_line() {
        let l = Lattice::from_generators(&Mat::from_rows_i64(&[&[1], &[0]]));
        let d = l.dual().unwrap();
        assert_eq!(d.rank(), 1);
        let bad = Lattice::from_generators(&Mat::from_rows_i64(&[&[2], &[0]]));
        assert!(bad.dual().is_err());
        assert_eq!(Lattice::full(3).dual().unwrap(), Lattice::full(3));
    }
}
