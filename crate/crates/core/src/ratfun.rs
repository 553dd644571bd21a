//! Formal rational terms `p / prod_i q_i^(e_i)` over a fixed basis of
//! denominator polynomials, and the divided-power operator action on them.
//!
//! No cancellation between numerators and denominator powers is ever
//! performed. Zero-testing goes through denominator clearing, which is an
//! exact test because the basis polynomials are nonzero elements of an
//! integral domain.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::diffop::{DividedPowerOp, OperatorSum};
use crate::error::Error;
use crate::ring::{Polynomial, VarTable};

/// An ordered list of nonzero polynomials; denominators of rational terms
/// are formal products of powers of these.
#[derive(Debug, PartialEq, Eq)]
pub struct DenomBasis {
    vars: Arc<VarTable>,
    polys: Vec<Polynomial>,
}

impl DenomBasis {
    pub fn new(vars: &Arc<VarTable>, polys: Vec<Polynomial>) -> Arc<DenomBasis> {
        for q in &polys {
            assert!(!q.is_zero(), "denominator basis polynomials must be nonzero");
            assert!(q.modulus().is_none(), "denominator basis lives in characteristic zero");
            assert_eq!(q.vars(), vars, "basis polynomial over a foreign variable table");
        }
        Arc::new(DenomBasis {
            vars: Arc::clone(vars),
            polys,
        })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn poly(&self, index: usize) -> &Polynomial {
        &self.polys[index]
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }
}

/// One formal term `numerator / prod_i basis_i^(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTerm {
    basis: Arc<DenomBasis>,
    numerator: Polynomial,
    denom_exponents: Vec<u32>,
}

impl RationalTerm {
    pub fn new(
        basis: &Arc<DenomBasis>,
        numerator: Polynomial,
        denom_exponents: Vec<u32>,
    ) -> RationalTerm {
        assert_eq!(denom_exponents.len(), basis.len(), "exponent vector width != basis size");
        assert_eq!(numerator.vars(), basis.vars(), "numerator over a foreign variable table");
        assert!(numerator.modulus().is_none(), "rational terms live in characteristic zero");
        RationalTerm {
            basis: Arc::clone(basis),
            numerator,
            denom_exponents,
        }
    }

    /// A polynomial viewed as a rational term with trivial denominator.
    pub fn from_polynomial(basis: &Arc<DenomBasis>, numerator: Polynomial) -> RationalTerm {
        let m = basis.len();
        RationalTerm::new(basis, numerator, vec![0; m])
    }

    pub fn basis(&self) -> &Arc<DenomBasis> {
        &self.basis
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denom_exponents(&self) -> &[u32] {
        &self.denom_exponents
    }
}

/// A formal sum of rational terms, collected by denominator exponent
/// vector. Equality derived here is *formal* (identical collected term
/// maps); mathematical equality is `is_zero` of the difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSum {
    basis: Arc<DenomBasis>,
    // exponent vector -> nonzero collected numerator
    terms: BTreeMap<Vec<u32>, Polynomial>,
}

impl RationalSum {
    pub fn zero(basis: &Arc<DenomBasis>) -> RationalSum {
        RationalSum {
            basis: Arc::clone(basis),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(term: RationalTerm) -> RationalSum {
        let mut s = RationalSum::zero(&term.basis);
        s.add_term_in_place(term.denom_exponents, term.numerator);
        s
    }

    pub fn from_terms<I>(basis: &Arc<DenomBasis>, terms: I) -> RationalSum
    where
        I: IntoIterator<Item = RationalTerm>,
    {
        let mut s = RationalSum::zero(basis);
        for t in terms {
            assert_eq!(&t.basis, basis, "term over a foreign denominator basis");
            s.add_term_in_place(t.denom_exponents, t.numerator);
        }
        s
    }

    pub fn basis(&self) -> &Arc<DenomBasis> {
        &self.basis
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Formally zero: every collected numerator vanished. See `is_zero`
    /// for the mathematical test.
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (ascending exponent vectors).
    pub fn terms(&self) -> impl Iterator<Item = RationalTerm> + '_ {
        self.terms.iter().map(|(e, n)| RationalTerm {
            basis: Arc::clone(&self.basis),
            numerator: n.clone(),
            denom_exponents: e.clone(),
        })
    }

    fn add_term_in_place(&mut self, exps: Vec<u32>, numerator: Polynomial) {
        if numerator.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(numerator);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().try_add(&numerator).expect("one basis, one table");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &RationalSum) -> RationalSum {
        assert_eq!(self.basis, other.basis, "sums over different denominator bases");
        let mut out = self.clone();
        for (e, n) in &other.terms {
            out.add_term_in_place(e.clone(), n.clone());
        }
        out
    }

    pub fn negate(&self) -> RationalSum {
        RationalSum {
            basis: Arc::clone(&self.basis),
            terms: self
                .terms
                .iter()
                .map(|(e, n)| (e.clone(), n.negate()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalSum) -> RationalSum {
        self.add(&other.negate())
    }

    /// Multiplies every numerator by a polynomial.
    pub fn scale_poly(&self, c: &Polynomial) -> RationalSum {
        let mut out = RationalSum::zero(&self.basis);
        for (e, n) in &self.terms {
            out.add_term_in_place(e.clone(), n.try_mul(c).expect("one table"));
        }
        out
    }

    /// Multiplies every numerator coefficient by an integer.
    pub fn scale(&self, c: &BigInt) -> RationalSum {
        let mut out = RationalSum::zero(&self.basis);
        for (e, n) in &self.terms {
            out.add_term_in_place(e.clone(), n.scale(c));
        }
        out
    }

    fn exact_div(&self, d: &BigInt) -> Result<RationalSum, Error> {
        let mut out = RationalSum::zero(&self.basis);
        for (e, n) in &self.terms {
            out.terms.insert(e.clone(), n.exact_div(d)?);
        }
        Ok(out)
    }

    /// Formal first derivative: quotient rule applied termwise, collected.
    pub fn diff(&self, var: usize) -> RationalSum {
        let mut out = RationalSum::zero(&self.basis);
        for (exps, num) in &self.terms {
            out.add_term_in_place(exps.clone(), num.derivative(var));
            for (slot, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let dq = self.basis.poly(slot).derivative(var);
                if dq.is_zero() {
                    continue;
                }
                let mut bumped = exps.clone();
                bumped[slot] += 1;
                let coeff = dq.try_mul(num).expect("one table").scale(&BigInt::from(-i64::from(e)));
                out.add_term_in_place(bumped, coeff);
            }
        }
        out
    }

    /// Divided power `(1/k!) d^k/dx^k` applied to the whole sum: first
    /// derivatives are iterated, dividing the collected result by the step
    /// counter at step s, so the accumulator always holds the order-s
    /// divided power. Division failure indicates an engine bug, never bad
    /// input.
    pub fn apply_divided_power(&self, k: u32, var: usize) -> Result<RationalSum, Error> {
        let mut acc = self.clone();
        for step in 1..=k {
            acc = acc.diff(var).exact_div(&BigInt::from(step))?;
        }
        Ok(acc)
    }

    /// Applies a divided-power operator: each variable's divided power in
    /// sequence (the order is irrelevant since the operators commute),
    /// then the operator scalar.
    pub fn apply_op(&self, op: &DividedPowerOp) -> Result<RationalSum, Error> {
        assert_eq!(op.vars(), self.basis.vars(), "operator over a foreign variable table");
        let mut acc = self.clone();
        for (var, &k) in op.orders().iter().enumerate() {
            if k > 0 {
                acc = acc.apply_divided_power(k, var)?;
            }
        }
        Ok(acc.scale(op.scalar()))
    }

    /// Applies an R-linear combination of basis operators.
    pub fn apply_op_sum(&self, ops: &OperatorSum) -> Result<RationalSum, Error> {
        let mut acc = RationalSum::zero(&self.basis);
        for (coeff, op) in ops.terms() {
            acc = acc.add(&self.apply_op(op)?.scale_poly(coeff));
        }
        Ok(acc)
    }

    /// Componentwise maximum of all denominator exponent vectors.
    pub fn max_denom_exponents(&self) -> Vec<u32> {
        let mut max = vec![0; self.basis.len()];
        for exps in self.terms.keys() {
            for (m, &e) in max.iter_mut().zip(exps) {
                *m = (*m).max(e);
            }
        }
        max
    }

    /// Multiplies through by `prod_i basis_i^(target_i)`:
    /// `sum_t numerator_t * prod_i basis_i^(target_i - e_i)`. The sum is
    /// zero as a rational function iff the result is the zero polynomial.
    pub fn clear_denominators(&self, target: &[u32]) -> Result<Polynomial, Error> {
        assert_eq!(target.len(), self.basis.len());
        // cache basis powers up to what the terms actually need
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.basis.len());
        for (slot, q) in self.basis.polys().iter().enumerate() {
            let mut ladder = vec![Polynomial::one(self.basis.vars())];
            let max_needed = self
                .terms
                .keys()
                .map(|e| target[slot].saturating_sub(e[slot]))
                .max()
                .unwrap_or(0);
            for n in 1..=max_needed {
                let next = ladder[(n - 1) as usize].try_mul(q).expect("one table");
                ladder.push(next);
            }
            powers.push(ladder);
        }
        let mut out = Polynomial::zero(self.basis.vars());
        for (exps, num) in &self.terms {
            let mut cleared = num.clone();
            for (slot, (&e, &t)) in exps.iter().zip(target).enumerate() {
                if e > t {
                    return Err(Error::TargetUnderflow {
                        slot,
                        required: e,
                        target: t,
                    });
                }
                cleared = cleared.try_mul(&powers[slot][(t - e) as usize]).expect("one table");
            }
            out = out.try_add(&cleared).expect("one table");
        }
        Ok(out)
    }

    /// Exact zero test: clear at the componentwise-max exponent vector and
    /// test the resulting polynomial.
    pub fn is_zero(&self) -> bool {
        let target = self.max_denom_exponents();
        self.clear_denominators(&target)
            .expect("max exponents always dominate")
            .is_zero()
    }
}

/// Quotient-rule derivative of a single term, as a collected sum.
pub fn diff_term(var: usize, term: &RationalTerm) -> RationalSum {
    RationalSum::from_term(term.clone()).diff(var)
}

/// Divided power of a single term.
pub fn apply_divpow_to_term(
    k: u32,
    var: usize,
    term: &RationalTerm,
) -> Result<RationalSum, Error> {
    RationalSum::from_term(term.clone()).apply_divided_power(k, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::MatrixMinors;
    use crate::ring::{binomial, VarTable};

    fn single_x() -> (Arc<VarTable>, Arc<DenomBasis>) {
        let vars = VarTable::new(["x"]).unwrap();
        let x = Polynomial::variable(&vars, 0);
        let basis = DenomBasis::new(&vars, vec![x]);
        (vars, basis)
    }

    #[test]
    fn derivative_of_inverse_x() {
        // d/dx (1/x) = -1/x^2
        let (vars, basis) = single_x();
        let t = RationalTerm::new(&basis, Polynomial::one(&vars), vec![1]);
        let d = diff_term(0, &t);
        let mut expected = RationalSum::zero(&basis);
        expected.add_term_in_place(vec![2], Polynomial::constant(&vars, -1));
        assert_eq!(d, expected);
    }

    #[test]
    fn negative_power_closed_form() {
        // (1/k!) d^k (1/x^m) = (-1)^k C(m+k-1, k) / x^(m+k)
        let (vars, basis) = single_x();
        for m in 1..=6u32 {
            let t = RationalTerm::new(&basis, Polynomial::one(&vars), vec![m]);
            for k in 0..=6u32 {
                let got = apply_divpow_to_term(k, 0, &t).unwrap();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let c = binomial(u64::from(m + k - 1), u64::from(k)) * BigInt::from(sign);
                let mut expected = RationalSum::zero(&basis);
                expected.add_term_in_place(
                    vec![m + k],
                    Polynomial::constant(&vars, 1).scale(&c),
                );
                assert_eq!(got, expected, "failed at m={m} k={k}");
            }
        }
    }

    #[test]
    fn divided_power_of_cube_denominator() {
        // k=2 on 1/x^3 gives 6/x^5
        let (vars, basis) = single_x();
        let t = RationalTerm::new(&basis, Polynomial::one(&vars), vec![3]);
        let got = apply_divpow_to_term(2, 0, &t).unwrap();
        let mut expected = RationalSum::zero(&basis);
        expected.add_term_in_place(vec![5], Polynomial::constant(&vars, 6));
        assert_eq!(got, expected);
    }

    #[test]
    fn quotient_rule_on_minors() {
        let scene = MatrixMinors::new();
        let vars = &scene.vars;
        let v = Polynomial::variable(vars, 1);
        let w = Polynomial::variable(vars, 2);
        let zvar = 5;
        // d/dz of v/(D3 D1) = -v^2/(D3 D1^2): D3 is z-free, dD1/dz = v
        let t = RationalTerm::new(&scene.basis, v.clone(), vec![1, 0, 1]);
        let d = diff_term(zvar, &t);
        let mut expected = RationalSum::zero(&scene.basis);
        expected.add_term_in_place(vec![2, 0, 1], (&v * &v).negate());
        assert_eq!(d, expected);

        // d/du of w/(D1 D2) = wz/(D1 D2^2): dD2/du = -z
        let t = RationalTerm::new(&scene.basis, w.clone(), vec![1, 1, 0]);
        let d = diff_term(0, &t);
        let z = Polynomial::variable(vars, 5);
        let mut expected = RationalSum::zero(&scene.basis);
        expected.add_term_in_place(vec![1, 2, 0], &w * &z);
        assert_eq!(d, expected);
    }

    #[test]
    fn order_zero_is_identity() {
        let scene = MatrixMinors::new();
        let u = Polynomial::variable(&scene.vars, 0);
        let t = RationalTerm::new(&scene.basis, u, vec![0, 1, 1]);
        let s = RationalSum::from_term(t);
        assert_eq!(s.apply_divided_power(0, 0).unwrap(), s);
        let id = DividedPowerOp::identity(&scene.vars);
        assert_eq!(s.apply_op(&id).unwrap(), s);
    }

    #[test]
    fn clearing_and_zero_test() {
        // the determinantal relation: w/(D1 D2) + v/(D1 D3) + u/(D2 D3) = 0
        let scene = MatrixMinors::new();
        let var = |i| Polynomial::variable(&scene.vars, i);
        let s = RationalSum::from_terms(
            &scene.basis,
            [
                RationalTerm::new(&scene.basis, var(2), vec![1, 1, 0]),
                RationalTerm::new(&scene.basis, var(1), vec![1, 0, 1]),
                RationalTerm::new(&scene.basis, var(0), vec![0, 1, 1]),
            ],
        );
        let cleared = s.clear_denominators(&[1, 1, 1]).unwrap();
        assert!(cleared.is_zero());
        assert!(s.is_zero());

        // single term x/D1 with target (2,0,0) -> x*D1
        let t = RationalTerm::new(&scene.basis, var(3), vec![1, 0, 0]);
        let s = RationalSum::from_term(t);
        let cleared = s.clear_denominators(&[2, 0, 0]).unwrap();
        assert_eq!(cleared, &var(3) * scene.minor(0));

        // empty sum clears to 0
        assert!(RationalSum::zero(&scene.basis)
            .clear_denominators(&[3, 1, 2])
            .unwrap()
            .is_zero());

        // underflow is reported
        let t = RationalTerm::new(&scene.basis, var(3), vec![2, 0, 0]);
        let s = RationalSum::from_term(t);
        assert!(matches!(
            s.clear_denominators(&[1, 0, 0]).unwrap_err(),
            Error::TargetUnderflow { slot: 0, required: 2, target: 1 }
        ));
    }

    #[test]
    fn zero_test_examples() {
        let scene = MatrixMinors::new();
        let one = Polynomial::one(&scene.vars);
        let t = RationalTerm::new(&scene.basis, one, vec![1, 0, 0]);
        let s = RationalSum::from_term(t.clone());
        assert!(!s.is_zero());
        let cancel = s.add(&s.negate());
        assert!(cancel.is_zero());
        assert!(cancel.is_formally_zero());
    }
}
