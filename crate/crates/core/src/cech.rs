//! Cech cochains over a denominator basis of size at most three, the
//! coboundary map, cocycle testing, and the passage from syzygies to
//! degree-two cocycles.
//!
//! Cohomology classes are never formed; every statement is checked at the
//! level of explicit cochain representatives.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::diffop::DividedPowerOp;
use crate::error::Error;
use crate::ratfun::{DenomBasis, RationalSum, RationalTerm};
use crate::ring::Polynomial;

/// Largest denominator basis the cochain machinery accepts. The sign
/// conventions are pinned down by hand below for this range only.
pub const MAX_BASIS_SIZE: usize = 3;

/// All `n`-element subsets of `{0, .., m-1}` in lexicographic order.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(m: usize, n: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(m, n, i + 1, current, out);
            current.pop();
        }
    }
    rec(m, n, 0, &mut current, &mut out);
    out
}

/// A degree-`n` cochain: one rational sum per `n`-subset of the basis,
/// with each component's denominator support contained in its subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechCochain {
    basis: Arc<DenomBasis>,
    degree: usize,
    components: BTreeMap<Vec<usize>, RationalSum>,
}

impl CechCochain {
    /// The zero cochain of the given degree.
    pub fn zero(basis: &Arc<DenomBasis>, degree: usize) -> Result<CechCochain, Error> {
        let m = basis.len();
        if m > MAX_BASIS_SIZE {
            return Err(Error::UnsupportedBasisSize { size: m });
        }
        assert!(degree <= m, "degree {degree} exceeds basis size {m}");
        let components = subsets(m, degree)
            .into_iter()
            .map(|s| (s, RationalSum::zero(basis)))
            .collect();
        Ok(CechCochain {
            basis: Arc::clone(basis),
            degree,
            components,
        })
    }

    pub fn basis(&self) -> &Arc<DenomBasis> {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn component(&self, subset: &[usize]) -> &RationalSum {
        self.components
            .get(subset)
            .unwrap_or_else(|| panic!("no component indexed by {subset:?} in degree {}", self.degree))
    }

    pub fn components(&self) -> impl Iterator<Item = (&[usize], &RationalSum)> {
        self.components.iter().map(|(s, c)| (s.as_slice(), c))
    }

    /// Replaces one component. The sum's denominator support must be
    /// contained in the subset.
    pub fn set_component(&mut self, subset: &[usize], sum: RationalSum) {
        assert!(
            self.components.contains_key(subset),
            "no component indexed by {subset:?} in degree {}",
            self.degree
        );
        for term in sum.terms() {
            for (slot, &e) in term.denom_exponents().iter().enumerate() {
                assert!(
                    e == 0 || subset.contains(&slot),
                    "denominator support {slot} escapes component {subset:?}"
                );
            }
        }
        self.components.insert(subset.to_vec(), sum);
    }

    /// The Cech differential: the component on `T = {t_0 < .. < t_n}` is
    /// the alternating sum over `j` of the components on `T minus t_j`,
    /// each viewed inside the larger localization.
    pub fn coboundary(&self) -> Result<CechCochain, Error> {
        let m = self.basis.len();
        if self.degree >= m {
            return Err(Error::NoHigherDegree { degree: self.degree });
        }
        let mut out = CechCochain::zero(&self.basis, self.degree + 1)?;
        for t in subsets(m, self.degree + 1) {
            let mut acc = RationalSum::zero(&self.basis);
            for (j, _) in t.iter().enumerate() {
                let mut face = t.clone();
                face.remove(j);
                let piece = self.component(&face);
                acc = if j % 2 == 0 {
                    acc.add(piece)
                } else {
                    acc.sub(piece)
                };
            }
            out.components.insert(t, acc);
        }
        Ok(out)
    }

    /// True iff every component of the coboundary clears to zero.
    pub fn is_cocycle(&self) -> Result<bool, Error> {
        let d = self.coboundary()?;
        Ok(d.components.values().all(RationalSum::is_zero))
    }

    /// Applies a divided-power operator to every component. Support never
    /// grows, so the cochain invariant is preserved.
    pub fn apply_op(&self, op: &DividedPowerOp) -> Result<CechCochain, Error> {
        let mut components = BTreeMap::new();
        for (s, c) in &self.components {
            components.insert(s.clone(), c.apply_op(op)?);
        }
        Ok(CechCochain {
            basis: Arc::clone(&self.basis),
            degree: self.degree,
            components,
        })
    }

    /// Total number of collected terms across components.
    pub fn term_count(&self) -> usize {
        self.components.values().map(RationalSum::term_count).sum()
    }
}

/// Coefficients `(g_1, .., g_m)` against the basis `(f_1, .., f_m)` with
/// `sum_i g_i f_i = 0`, validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syzygy {
    basis: Arc<DenomBasis>,
    coeffs: Vec<Polynomial>,
}

impl Syzygy {
    pub fn new(basis: &Arc<DenomBasis>, coeffs: Vec<Polynomial>) -> Result<Syzygy, Error> {
        assert_eq!(coeffs.len(), basis.len(), "coefficient count != basis size");
        let mut acc = Polynomial::zero(basis.vars());
        for (g, f) in coeffs.iter().zip(basis.polys()) {
            acc = acc.try_add(&g.try_mul(f)?)?;
        }
        if !acc.is_zero() {
            return Err(Error::InvalidSyzygy);
        }
        Ok(Syzygy {
            basis: Arc::clone(basis),
            coeffs,
        })
    }

    pub fn basis(&self) -> &Arc<DenomBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// The basic relation `f_j * f_i - f_i * f_j = 0` placed at slots
    /// `(i, j)`, scaled by `c`.
    pub fn koszul(basis: &Arc<DenomBasis>, i: usize, j: usize, c: &BigInt) -> Syzygy {
        assert!(i != j && i < basis.len() && j < basis.len());
        let mut coeffs = vec![Polynomial::zero(basis.vars()); basis.len()];
        coeffs[i] = basis.poly(j).scale(c);
        coeffs[j] = basis.poly(i).scale(c).negate();
        Syzygy::new(basis, coeffs).expect("koszul relations are syzygies")
    }

    /// Componentwise sum of two syzygies over one basis.
    pub fn add(&self, other: &Syzygy) -> Syzygy {
        assert_eq!(self.basis, other.basis);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b).expect("one table"))
            .collect();
        Syzygy::new(&self.basis, coeffs).expect("sum of syzygies is a syzygy")
    }
}

/// Realizes a syzygy as a degree-2 cocycle: the component on `{i, j}`
/// (0-indexed, i < j) is `(-1)^l * g_l / (f_i f_j)` where `l` is the
/// missing index. Defined for bases of size exactly three.
pub fn syzygy_to_cocycle(s: &Syzygy) -> Result<CechCochain, Error> {
    let m = s.basis.len();
    if m != 3 {
        return Err(Error::UnsupportedBasisSize { size: m });
    }
    let mut out = CechCochain::zero(&s.basis, 2)?;
    for pair in subsets(3, 2) {
        let missing = (0..3).find(|l| !pair.contains(l)).expect("one slot left");
        let mut num = s.coeffs[missing].clone();
        if missing % 2 == 1 {
            num = num.negate();
        }
        let mut exps = vec![0u32; 3];
        exps[pair[0]] = 1;
        exps[pair[1]] = 1;
        let term = RationalTerm::new(&s.basis, num, exps);
        out.set_component(&pair, RationalSum::from_term(term));
    }
    Ok(out)
}
