//! Sparse multivariate polynomials with exact integer coefficients,
//! over the integers or over Z/p for a prime p.
//!
//! Polynomials are kept in canonical form at all times: terms live in a
//! `BTreeMap` keyed by graded-lexicographic monomial order, no stored
//! coefficient is zero, and for modulus `p` coefficients lie in `1..p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An ordered table of variable names, shared by every polynomial in a
/// computation.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    /// Builds a table from distinct names. The order given here fixes the
    /// monomial order for the lifetime of the computation.
    pub fn new<I, S>(names: I) -> Result<Arc<VarTable>, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A monomial: one exponent per variable of the owning table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, index: usize) -> Monomial {
        assert!(index < nvars, "variable index {index} out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Graded lexicographic: compare total degree first, then exponent vectors
/// in variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial over the table's variables, with `BigInt`
/// coefficients, optionally reduced modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    modulus: Option<u64>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial {
            vars: Arc::clone(vars),
            modulus: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial::constant(vars, 1)
    }

    pub fn constant<C: Into<BigInt>>(vars: &Arc<VarTable>, c: C) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        p.add_assign_term(Monomial::one(vars.len()), c.into());
        p
    }

    pub fn variable(vars: &Arc<VarTable>, index: usize) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        p.add_assign_term(Monomial::variable(vars.len(), index), BigInt::one());
        p
    }

    /// Builds a polynomial from raw terms, collecting duplicates.
    pub fn from_terms<I>(vars: &Arc<VarTable>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial width != table size");
            p.add_assign_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; the zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| i64::from(m.total_degree()))
            .max()
            .unwrap_or(-1)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn compatible(&self, other: &Polynomial) -> bool {
        self.modulus == other.modulus
            && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), Error> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleOperands(format!(
                "variable tables {:?} / {:?}, moduli {:?} / {:?}",
                self.vars.names(),
                other.vars.names(),
                self.modulus,
                other.modulus
            )))
        }
    }

    /// Adds one term in place, keeping the canonical-form invariants.
    fn add_assign_term(&mut self, m: Monomial, mut c: BigInt) {
        if let Some(p) = self.modulus {
            let p = BigInt::from(p);
            c = ((c % &p) + &p) % &p;
        }
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                let mut zero = e.get().is_zero();
                if let Some(p) = self.modulus {
                    let p = BigInt::from(p);
                    let r = ((e.get() % &p) + &p) % &p;
                    zero = r.is_zero();
                    if !zero {
                        *e.get_mut() = r;
                    }
                }
                if zero {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_compatible(other)?;
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_assign_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Polynomial {
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        for (m, k) in &self.terms {
            out.add_assign_term(m.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        out.add_assign_term(Monomial::one(self.vars.len()), BigInt::one());
        for _ in 0..n {
            out = out.try_mul(self).expect("same table and modulus");
        }
        out
    }

    /// Ordinary partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.vars.len());
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_assign_term(Monomial::from_exponents(exps), c * BigInt::from(e));
        }
        out
    }

    /// Divides every coefficient exactly by `d`. Fails with a
    /// divisibility-violation error if any remainder is nonzero.
    pub fn exact_div(&self, d: &BigInt) -> Result<Polynomial, Error> {
        assert!(!d.is_zero(), "division by zero");
        assert!(
            self.modulus.is_none(),
            "exact division is a characteristic-zero operation"
        );
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let (q, r) = num_integer_div_rem(c, d);
            if !r.is_zero() {
                return Err(Error::DivisibilityViolation {
                    coefficient: c.clone(),
                    divisor: d.clone(),
                });
            }
            out.terms.insert(m.clone(), q);
        }
        Ok(out)
    }

    /// Carries the modulus of `other` over to `self` (which must be in
    /// characteristic zero when `other` has a modulus).
    pub(crate) fn with_modulus_of(self, other: &Polynomial) -> Polynomial {
        match other.modulus() {
            None => self,
            Some(p) => self.reduce_mod_p(p).expect("modulus was validated before"),
        }
    }

    /// Reduces a characteristic-zero polynomial modulo a prime `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Polynomial, Error> {
        assert!(
            self.modulus.is_none(),
            "input to reduce_mod_p must have characteristic zero"
        );
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut out = Polynomial {
            vars: Arc::clone(&self.vars),
            modulus: Some(p),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        Ok(out)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

// Operator sugar for code paths where both operands are known to share a
// table and modulus; panics otherwise. The try_* methods carry the error.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

/// Renders in descending graded-lex order with explicit `*` and `^`, e.g.
/// `3*x^2 - x*y + 1`. The output re-parses to the same polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_factor = false;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                wrote_factor = true;
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

/// Binomial coefficient, computed by the multiplicative formula with an
/// exact division at every step so intermediates stay small.
/// Returns 0 when `m < k`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= BigInt::from(m - k + i);
        acc /= BigInt::from(i); // exact: C(m-k+i, i) * i! friendliness
    }
    acc
}

/// Trial-division primality check, adequate at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
