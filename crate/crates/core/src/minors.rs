//! The determinantal scene: variables `u v w x y z` arranged as a generic
//! 2x3 matrix, its three 2x2 minors as the denominator basis, and the two
//! row syzygies.

use std::sync::Arc;

use crate::cech::Syzygy;
use crate::diffop::DividedPowerOp;
use crate::ratfun::DenomBasis;
use crate::ring::{Polynomial, VarTable};

/// Variables `(u v w / x y z)` with minors `d1 = vz - wy`, `d2 = wx - uz`,
/// `d3 = uy - vx`.
#[derive(Debug)]
pub struct MatrixMinors {
    pub vars: Arc<VarTable>,
    pub basis: Arc<DenomBasis>,
}

pub const U: usize = 0;
pub const V: usize = 1;
pub const W: usize = 2;
pub const X: usize = 3;
pub const Y: usize = 4;
pub const Z: usize = 5;

impl MatrixMinors {
    pub fn new() -> MatrixMinors {
        let vars = VarTable::new(["u", "v", "w", "x", "y", "z"]).expect("distinct names");
        let p = |i: usize| Polynomial::variable(&vars, i);
        let d1 = &(&p(V) * &p(Z)) - &(&p(W) * &p(Y));
        let d2 = &(&p(W) * &p(X)) - &(&p(U) * &p(Z));
        let d3 = &(&p(U) * &p(Y)) - &(&p(V) * &p(X));
        let basis = DenomBasis::new(&vars, vec![d1, d2, d3]);
        MatrixMinors { vars, basis }
    }

    pub fn minor(&self, index: usize) -> &Polynomial {
        self.basis.poly(index)
    }

    pub fn variable(&self, index: usize) -> Polynomial {
        Polynomial::variable(&self.vars, index)
    }

    /// `u*d1 + v*d2 + w*d3 = 0`.
    pub fn syzygy_top_row(&self) -> Syzygy {
        Syzygy::new(
            &self.basis,
            vec![self.variable(U), self.variable(V), self.variable(W)],
        )
        .expect("the top row annihilates the minors")
    }

    /// `x*d1 + y*d2 + z*d3 = 0`.
    pub fn syzygy_bottom_row(&self) -> Syzygy {
        Syzygy::new(
            &self.basis,
            vec![self.variable(X), self.variable(Y), self.variable(Z)],
        )
        .expect("the bottom row annihilates the minors")
    }

    /// The operator `(1/k!)^3 d^k/du^k d^k/dy^k d^k/dz^k` that turns the
    /// base cocycle into the order-k identity.
    pub fn operator_uyz(&self, k: u32) -> DividedPowerOp {
        let mut orders = vec![0; 6];
        orders[U] = k;
        orders[Y] = k;
        orders[Z] = k;
        DividedPowerOp::new(&self.vars, orders, num_bigint::BigInt::from(1))
    }
}

impl Default for MatrixMinors {
    fn default() -> Self {
        MatrixMinors::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_relations_hold() {
        let scene = MatrixMinors::new();
        scene.syzygy_top_row();
        scene.syzygy_bottom_row();
    }

    #[test]
    fn minor_triple_product_shape() {
        let scene = MatrixMinors::new();
        let prod = &(scene.minor(0) * scene.minor(1)) * scene.minor(2);
        assert_eq!(prod.degree(), 6);
        assert!(prod.term_count() <= 48);
    }
}
