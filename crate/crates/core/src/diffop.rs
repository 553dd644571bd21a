//! Divided-power differential operators.
//!
//! The basis operator attached to a multi-index `(k_1, ..., k_d)` acts on a
//! monomial `x^m` as `prod_i C(m_i, k_i) * x^(m-k)`, which keeps every
//! computation inside the integers: no factorial denominators ever appear.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{binomial, Monomial, Polynomial, VarTable};

/// A scalar multiple of a basis divided-power operator
/// `scalar * prod_i (1/k_i!) d^{k_i}/dx_i^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedPowerOp {
    vars: Arc<VarTable>,
    orders: Vec<u32>,
    scalar: BigInt,
}

impl DividedPowerOp {
    pub fn new(vars: &Arc<VarTable>, orders: Vec<u32>, scalar: BigInt) -> DividedPowerOp {
        assert_eq!(orders.len(), vars.len(), "order vector width != table size");
        DividedPowerOp {
            vars: Arc::clone(vars),
            orders,
            scalar,
        }
    }

    /// The identity operator: all orders zero, scalar one.
    pub fn identity(vars: &Arc<VarTable>) -> DividedPowerOp {
        DividedPowerOp::new(vars, vec![0; vars.len()], BigInt::one())
    }

    /// The single-variable operator `(1/k!) d^k/dx^k`.
    pub fn partial(vars: &Arc<VarTable>, var: usize, k: u32) -> DividedPowerOp {
        assert!(var < vars.len(), "variable index out of range");
        let mut orders = vec![0; vars.len()];
        orders[var] = k;
        DividedPowerOp::new(vars, orders, BigInt::one())
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn scalar(&self) -> &BigInt {
        &self.scalar
    }

    pub fn is_identity(&self) -> bool {
        self.scalar.is_one() && self.orders.iter().all(|&k| k == 0)
    }

    /// Action on a monomial: the coefficient picked up and the shifted
    /// monomial. The coefficient is zero when any exponent is too small.
    pub fn apply_to_monomial(&self, m: &Monomial) -> (BigInt, Monomial) {
        assert_eq!(m.nvars(), self.orders.len());
        let mut coeff = self.scalar.clone();
        let mut exps = Vec::with_capacity(m.nvars());
        for (i, &k) in self.orders.iter().enumerate() {
            let e = m.exponent(i);
            if e < k {
                return (BigInt::zero(), Monomial::one(m.nvars()));
            }
            if k > 0 {
                coeff *= binomial(u64::from(e), u64::from(k));
            }
            exps.push(e - k);
        }
        (coeff, Monomial::from_exponents(exps))
    }

    /// Linear extension over a polynomial's term list. Works in
    /// characteristic zero and modulo p alike (the scalar is reduced by the
    /// polynomial's own normalization).
    pub fn apply_to_poly(&self, a: &Polynomial) -> Polynomial {
        Polynomial::from_terms(
            a.vars(),
            a.terms().filter_map(|(m, c)| {
                let (k, shifted) = self.apply_to_monomial(m);
                if k.is_zero() {
                    None
                } else {
                    Some((shifted, k * c))
                }
            }),
        )
        .with_modulus_of(a)
    }

    /// Composition: orders add, and the scalar picks up
    /// `prod_i C(r_i + s_i, r_i)` on top of both input scalars.
    pub fn compose(&self, other: &DividedPowerOp) -> DividedPowerOp {
        assert_eq!(
            self.vars, other.vars,
            "composition requires one shared variable table"
        );
        let mut scalar = &self.scalar * &other.scalar;
        let orders: Vec<u32> = self
            .orders
            .iter()
            .zip(&other.orders)
            .map(|(&r, &s)| {
                if r > 0 && s > 0 {
                    scalar *= binomial(u64::from(r + s), u64::from(r));
                }
                r + s
            })
            .collect();
        DividedPowerOp::new(&self.vars, orders, scalar)
    }
}

/// Leibniz expansion `sum_{i+j=k} (1/i!)d^i(f) * (1/j!)d^j(g)` in one
/// variable. Equals the order-k divided power applied to `f*g`.
pub fn leibniz_expand(k: u32, var: usize, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let vars = f.vars();
    let mut acc = Polynomial::zero(vars).with_modulus_of(f);
    for i in 0..=k {
        let df = DividedPowerOp::partial(vars, var, i).apply_to_poly(f);
        let dg = DividedPowerOp::partial(vars, var, k - i).apply_to_poly(g);
        acc = acc.try_add(&df.try_mul(&dg).expect("compatible")).expect("compatible");
    }
    acc
}

/// An R-linear combination of basis operators, `sum_i c_i(x) * op_i`.
/// Only pure basis operators are needed for the determinantal derivation;
/// this form exists for callers generating identities from richer operators.
#[derive(Debug, Clone)]
pub struct OperatorSum {
    terms: Vec<(Polynomial, DividedPowerOp)>,
}

impl OperatorSum {
    pub fn new(terms: Vec<(Polynomial, DividedPowerOp)>) -> OperatorSum {
        OperatorSum { terms }
    }

    pub fn from_op(op: DividedPowerOp) -> OperatorSum {
        let one = Polynomial::one(op.vars());
        OperatorSum { terms: vec![(one, op)] }
    }

    pub fn terms(&self) -> &[(Polynomial, DividedPowerOp)] {
        &self.terms
    }

    pub fn apply_to_poly(&self, a: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(a.vars()).with_modulus_of(a);
        for (coeff, op) in &self.terms {
            let image = op.apply_to_poly(a);
            acc = acc
                .try_add(&coeff.try_mul(&image).expect("compatible"))
                .expect("compatible");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VarTable;

    fn xy() -> Arc<VarTable> {
        VarTable::new(["x", "y"]).unwrap()
    }

    #[test]
    fn monomial_action() {
        let vars = xy();
        // (1/2!) d^2/dx^2 (x^5) = 10 x^3
        let op = DividedPowerOp::partial(&vars, 0, 2);
        let (c, m) = op.apply_to_monomial(&Monomial::from_exponents(vec![5, 0]));
        assert_eq!(c, BigInt::from(10));
        assert_eq!(m, Monomial::from_exponents(vec![3, 0]));
        // d/dx kills y^3
        let op = DividedPowerOp::partial(&vars, 0, 1);
        let (c, _) = op.apply_to_monomial(&Monomial::from_exponents(vec![0, 3]));
        assert!(c.is_zero());
        // identity fixes everything
        let id = DividedPowerOp::identity(&vars);
        let m = Monomial::from_exponents(vec![2, 7]);
        let (c, m2) = id.apply_to_monomial(&m);
        assert!(c.is_one());
        assert_eq!(m2, m);
    }

    #[test]
    fn poly_action() {
        let vars = xy();
        let x = Polynomial::variable(&vars, 0);
        // d/dx (x^3 + x) = 3x^2 + 1
        let p = x.pow(3).try_add(&x).unwrap();
        let d = DividedPowerOp::partial(&vars, 0, 1).apply_to_poly(&p);
        let expected = x.pow(2).scale(&BigInt::from(3)).try_add(&Polynomial::one(&vars)).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn composition_rule() {
        let vars = xy();
        let d1 = DividedPowerOp::partial(&vars, 0, 1);
        // d/dx . d/dx = 2 (1/2!) d^2/dx^2
        let c = d1.compose(&d1);
        assert_eq!(c.orders(), &[2, 0]);
        assert_eq!(*c.scalar(), BigInt::from(2));
        // identity is neutral
        let id = DividedPowerOp::identity(&vars);
        assert_eq!(id.compose(&d1), d1);
        // (1/2!)d^2 . (1/3!)d^3 = C(5,2) (1/5!)d^5
        let a = DividedPowerOp::partial(&vars, 0, 2);
        let b = DividedPowerOp::partial(&vars, 0, 3);
        let c = a.compose(&b);
        assert_eq!(c.orders(), &[5, 0]);
        assert_eq!(*c.scalar(), BigInt::from(10));
    }

    #[test]
    fn leibniz_small_cases() {
        let vars = xy();
        let x = Polynomial::variable(&vars, 0);
        let y = Polynomial::variable(&vars, 1);
        // k=1, f=x, g=y, d/dx: y
        assert_eq!(leibniz_expand(1, 0, &x, &y), y);
        // k=0: f*g
        assert_eq!(leibniz_expand(0, 0, &x, &y), &x * &y);
        // k=2, f=g=x: both routes give 1
        let lhs = leibniz_expand(2, 0, &x, &x);
        assert_eq!(lhs, Polynomial::one(&vars));
        let rhs = DividedPowerOp::partial(&vars, 0, 2).apply_to_poly(&(&x * &x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_sum_is_linear_in_ops() {
        let vars = xy();
        let x = Polynomial::variable(&vars, 0);
        let y = Polynomial::variable(&vars, 1);
        let p = &x.pow(2) * &y;
        let a = DividedPowerOp::partial(&vars, 0, 1);
        let b = DividedPowerOp::partial(&vars, 1, 1);
        let combo = OperatorSum::new(vec![(y.clone(), a.clone()), (x.clone(), b.clone())]);
        let expected = &(&y * &a.apply_to_poly(&p)) + &(&x * &b.apply_to_poly(&p));
        assert_eq!(combo.apply_to_poly(&p), expected);
    }
}
