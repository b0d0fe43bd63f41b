use std::ops::Mul;

use crate::ComplexScalar;

/// Row-major 2x2 complex matrix, used for both transfer and scattering maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoByTwoComplex {
    pub m11: ComplexScalar,
    pub m12: ComplexScalar,
    pub m21: ComplexScalar,
    pub m22: ComplexScalar,
}

impl TwoByTwoComplex {
    pub fn new(
        m11: ComplexScalar,
        m12: ComplexScalar,
        m21: ComplexScalar,
        m22: ComplexScalar,
    ) -> Self {
        TwoByTwoComplex { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Self::diagonal(ComplexScalar::new(1.0, 0.0), ComplexScalar::new(1.0, 0.0))
    }

    pub fn diagonal(d1: ComplexScalar, d2: ComplexScalar) -> Self {
        let z = ComplexScalar::new(0.0, 0.0);
        TwoByTwoComplex::new(d1, z, z, d2)
    }

    /// `[[0, 1], [1, 0]]`: the scattering matrix of an empty segment.
    pub fn exchange() -> Self {
        let z = ComplexScalar::new(0.0, 0.0);
        let o = ComplexScalar::new(1.0, 0.0);
        TwoByTwoComplex::new(z, o, o, z)
    }

    pub fn det(&self) -> ComplexScalar {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Off-diagonal entries are exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.m12.norm() == 0.0 && self.m21.norm() == 0.0
    }

    pub fn apply(&self, v: (ComplexScalar, ComplexScalar)) -> (ComplexScalar, ComplexScalar) {
        (
            self.m11 * v.0 + self.m12 * v.1,
            self.m21 * v.0 + self.m22 * v.1,
        )
    }

    pub fn is_finite(&self) -> bool {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

impl Mul for TwoByTwoComplex {
    type Output = TwoByTwoComplex;

    fn mul(self, b: TwoByTwoComplex) -> TwoByTwoComplex {
        TwoByTwoComplex::new(
            self.m11 * b.m11 + self.m12 * b.m21,
            self.m11 * b.m12 + self.m12 * b.m22,
            self.m21 * b.m11 + self.m22 * b.m21,
            self.m21 * b.m12 + self.m22 * b.m22,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_determinant() {
        let c = |a: f64, b: f64| ComplexScalar::new(a, b);
        let a = TwoByTwoComplex::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5));
        let b = TwoByTwoComplex::new(c(0.5, 0.0), c(1.0, 2.0), c(-1.0, 0.0), c(0.0, 1.0));
        let ab = a * b;
        assert!(((ab.det()) - a.det() * b.det()).norm() < 1e-13);
        assert_eq!(TwoByTwoComplex::identity() * a, a);
        let v = (c(1.0, 0.0), c(0.0, 1.0));
        let lhs = ab.apply(v);
        let rhs = a.apply(b.apply(v));
        assert!((lhs.0 - rhs.0).norm() < 1e-14 && (lhs.1 - rhs.1).norm() < 1e-14);
        assert!(TwoByTwoComplex::diagonal(c(1.0, 0.0), c(2.0, 0.0)).is_diagonal());
        assert!(!a.is_diagonal());
    }
}
