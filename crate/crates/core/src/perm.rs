//! Permutations of an instance's point set, stored as dense image vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CfpoError, Result};
use crate::instance::{CfpoInstance, PointId};

/// A bijection of `{0, …, n-1}` (dense point indices of some instance).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im as usize >= n || seen[im as usize] {
                return Err(CfpoError::NotAPermutation(format!(
                    "image vector {images:?} is not a bijection"
                )));
            }
            seen[im as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `compose(a, b)` applies `b` first, then `a` (the usual `a ∘ b`).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Perm { images }
    }

    /// `self` conjugated by `phi`: `phi ∘ self ∘ phi⁻¹`.
    pub fn conjugate_by(&self, phi: &Perm) -> Perm {
        phi.compose(self).compose(&phi.inverse())
    }

    /// Dense indices moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &im)| *i as u32 != im)
            .map(|(i, _)| i)
            .collect()
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        let n = self.degree();
        (0..n).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// Checks that the permutation (on dense indices) is an automorphism of
    /// the instance.
    pub fn is_automorphism_of(&self, instance: &CfpoInstance) -> bool {
        if self.degree() != instance.len() {
            return false;
        }
        let image: Vec<usize> = self.images.iter().map(|&x| x as usize).collect();
        instance.is_automorphism(&image)
    }

    /// Restriction `φ|^X`: acts as `φ` on the dense-index set `X` and as the
    /// identity elsewhere.  Fails when `X` is not preserved set-wise or when
    /// the result is not an automorphism of the instance.
    pub fn restrict(&self, x_set: &[usize], instance: &CfpoInstance) -> Result<Perm> {
        let n = self.degree();
        let mut in_x = vec![false; n];
        for &i in x_set {
            if i >= n {
                return Err(CfpoError::InvalidArgument(format!(
                    "index {i} out of range in restriction set"
                )));
            }
            in_x[i] = true;
        }
        for &i in x_set {
            if !in_x[self.apply(i)] {
                return Err(CfpoError::NotAnAutomorphism(
                    "restriction set is not preserved set-wise".into(),
                ));
            }
        }
        let images: Vec<u32> = (0..n)
            .map(|i| if in_x[i] { self.images[i] } else { i as u32 })
            .collect();
        let p = Perm { images };
        if !p.is_automorphism_of(instance) {
            return Err(CfpoError::NotAnAutomorphism(
                "restriction is not a total automorphism".into(),
            ));
        }
        Ok(p)
    }

    /// External-id image map, for serialization.
    pub fn to_point_images(&self, instance: &CfpoInstance) -> Vec<PointId> {
        self.images
            .iter()
            .map(|&x| instance.point_at(x as usize))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_first() {
        // a = (0 1), b = (1 2); (a∘b)(1) = a(2) = 2, (a∘b)(2) = a(1) = 0.
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let a = p(&[2, 0, 1, 3]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn order_of_cycles() {
        assert_eq!(p(&[1, 0, 2]).order(), 2);
        assert_eq!(p(&[1, 2, 0]).order(), 3);
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn support_lists_moved_points() {
        assert_eq!(p(&[1, 0, 2, 3]).support(), vec![0, 1]);
        assert!(Perm::identity(3).support().is_empty());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }
}
