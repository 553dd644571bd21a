//! The determinantal identity family: literal construction, verification
//! by denominator clearing, re-derivation through divided-power operators,
//! mod-p specialization, and a generic identity generator driven by
//! syzygies and operators.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cech::{syzygy_to_cocycle, CechCochain, Syzygy};
use crate::diffop::DividedPowerOp;
use crate::error::Error;
use crate::minors::{MatrixMinors, U, V, X, Y};
use crate::ratfun::{RationalSum, RationalTerm};
use crate::ring::{binomial, is_prime, Monomial, Polynomial};

/// Default ceiling for prime powers `p^e` in the mod-p program.
pub const DEFAULT_POWER_BOUND: u64 = 32;

/// Outcome of verifying the order-k identity.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub k: u32,
    /// The identity multiplied through by `(d1 d2 d3)^(2k+1)`; the identity
    /// holds iff this polynomial is zero.
    pub cleared: Polynomial,
    pub term_counts: [usize; 3],
    pub verified: bool,
}

impl IdentityReport {
    pub fn term_count(&self) -> usize {
        self.term_counts.iter().sum()
    }
}

/// Outcome of re-deriving the order-k identity by operator application.
#[derive(Debug, Clone)]
pub struct DerivationReport {
    pub k: u32,
    /// The operator images of the three base terms, in the same component
    /// order as `build_identity_sums`.
    pub derived: [RationalSum; 3],
    pub term_counts: [usize; 3],
}

/// Outcome of the mod-p specialization at `k = p^e - 1`.
#[derive(Debug, Clone)]
pub struct ModPReport {
    pub p: u64,
    pub e: u32,
    pub k: u32,
    /// Each identity sum is congruent mod p to its Frobenius-power term.
    pub reduction_matches: bool,
    /// The cleared three-term power sum is zero mod p.
    pub power_sum_zero_mod_p: bool,
    pub verified: bool,
}

/// Outcome of generating an identity from a syzygy and an operator.
#[derive(Debug, Clone)]
pub struct GeneratedIdentity {
    pub cochain: CechCochain,
    /// Cleared coboundary of the cochain; zero iff the generated equation
    /// is a polynomial identity.
    pub cleared: Polynomial,
    pub term_count: usize,
    pub verified: bool,
}

fn prime_power(p: u64, e: u32, bound: u64) -> Result<u64, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match p.checked_pow(e) {
        Some(q) if q <= bound => Ok(q),
        _ => Err(Error::PowerBoundExceeded { base: p, exponent: e, bound }),
    }
}

/// The single term of sum `t` at indices `(i, j)`:
/// coefficient `C(k, i+j) C(k+i, k) C(k+j, k)` on the monomial built from
/// the head variable to the `k+1`, the two companion top-row variables to
/// the `i` and `j`, and the head's bottom-row partner to the `i+j`, over
/// denominator exponents `k+1+i` and `k+1+j` on the two minors away from
/// slot `t`.
fn identity_term(scene: &MatrixMinors, k: u32, t: usize, i: u32, j: u32) -> RationalTerm {
    let kk = u64::from(k);
    let mut coeff = binomial(kk, u64::from(i + j));
    coeff *= binomial(kk + u64::from(i), kk);
    coeff *= binomial(kk + u64::from(j), kk);
    if i % 2 == 1 {
        coeff = -coeff;
    }
    let mut exps = vec![0u32; 6];
    exps[t] = k + 1;
    exps[(t + 2) % 3] += i;
    exps[(t + 1) % 3] += j;
    exps[3 + t] += i + j;
    let numerator = Polynomial::from_terms(
        &scene.vars,
        [(Monomial::from_exponents(exps), coeff)],
    );
    let mut denom = vec![0u32; 3];
    denom[(t + 1) % 3] = k + 1 + i;
    denom[(t + 2) % 3] = k + 1 + j;
    RationalTerm::new(&scene.basis, numerator, denom)
}

fn build_sums(scene: &MatrixMinors, k: u32) -> [RationalSum; 3] {
    std::array::from_fn(|t| {
        RationalSum::from_terms(
            &scene.basis,
            (0..=k).flat_map(move |i| (0..=(k - i)).map(move |j| (i, j)))
                .map(|(i, j)| identity_term(scene, k, t, i, j)),
        )
    })
}

/// The three triple sums of the order-k identity, indexed over
/// `i + j <= k` (terms beyond that carry a vanishing binomial and are
/// dropped at construction).
pub fn build_identity_sums(k: u32) -> [RationalSum; 3] {
    build_sums(&MatrixMinors::new(), k)
}

/// The three Frobenius-power terms `head^q / (minor_a^q minor_b^q)` that
/// the order-(q-1) identity collapses to modulo p.
fn power_terms(scene: &MatrixMinors, q: u32) -> [RationalSum; 3] {
    std::array::from_fn(|t| {
        let head = scene.variable(t).pow(q);
        let mut denom = vec![0u32; 3];
        denom[(t + 1) % 3] = q;
        denom[(t + 2) % 3] = q;
        RationalSum::from_term(RationalTerm::new(&scene.basis, head, denom))
    })
}

/// Builds the order-k identity, clears by `(d1 d2 d3)^(2k+1)`, and reports
/// whether the cleared polynomial is zero.
pub fn verify_identity(k: u32) -> IdentityReport {
    let scene = MatrixMinors::new();
    let sums = build_sums(&scene, k);
    let term_counts = std::array::from_fn(|t| sums[t].term_count());
    let total = sums[0].add(&sums[1]).add(&sums[2]);
    let cleared = total
        .clear_denominators(&[2 * k + 1; 3])
        .expect("2k+1 dominates every exponent k+1+i with i <= k");
    let verified = cleared.is_zero();
    IdentityReport { k, cleared, term_counts, verified }
}

/// Applies `(1/k!)^3 d^k/du^k d^k/dy^k d^k/dz^k` termwise to the base
/// relation and checks each image against the literal sum, by an exact
/// cleared-difference zero test.
pub fn derive_via_operator(k: u32) -> Result<DerivationReport, Error> {
    let scene = MatrixMinors::new();
    let op = scene.operator_uyz(k);
    let built = build_sums(&scene, k);
    let mut derived = Vec::with_capacity(3);
    for t in 0..3 {
        let mut denom = vec![0u32; 3];
        denom[(t + 1) % 3] = 1;
        denom[(t + 2) % 3] = 1;
        let base = RationalSum::from_term(RationalTerm::new(
            &scene.basis,
            scene.variable(t),
            denom,
        ));
        let image = base.apply_op(&op)?;
        if !image.sub(&built[t]).is_zero() {
            return Err(Error::DerivationMismatch { component: t });
        }
        derived.push(image);
    }
    let derived: [RationalSum; 3] = derived.try_into().expect("three components");
    let term_counts = std::array::from_fn(|t| derived[t].term_count());
    Ok(DerivationReport { k, derived, term_counts })
}

/// Checks that the divided powers `(1/k!)^2 d^k/du^k d^k/dy^k` and
/// `(1/k!)^2 d^k/dv^k d^k/dx^k` agree on `u/(d2 d3)` for k <= 4.
pub fn commuting_check() -> bool {
    let scene = MatrixMinors::new();
    let base = RationalSum::from_term(RationalTerm::new(
        &scene.basis,
        scene.variable(U),
        vec![0, 1, 1],
    ));
    (0..=4).all(|k| {
        let lhs = base
            .apply_divided_power(k, U)
            .and_then(|s| s.apply_divided_power(k, Y));
        let rhs = base
            .apply_divided_power(k, V)
            .and_then(|s| s.apply_divided_power(k, X));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => a.sub(&b).is_zero(),
            _ => false,
        }
    })
}

/// Checks the binomial vanishing that collapses the identity mod p at
/// `k = p^e - 1`: every coefficient with `(i, j) != (0, 0)` is divisible
/// by p.
pub fn lucas_vanishing_check(p: u64, e: u32, power_bound: u64) -> Result<bool, Error> {
    let q = prime_power(p, e, power_bound)?;
    let k = q - 1;
    let p_big = BigInt::from(p);
    for i in 0..=k {
        for j in 0..=(k - i) {
            if i == 0 && j == 0 {
                continue;
            }
            let c = binomial(k, i + j) * binomial(k + i, k) * binomial(k + j, k);
            if !(c % &p_big).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies that the order-(p^e - 1) identity reduces mod p to the
/// three-term Frobenius-power relation, and that the cleared power sum is
/// itself zero mod p.
pub fn mod_p_specialize(p: u64, e: u32, power_bound: u64) -> Result<ModPReport, Error> {
    let q = prime_power(p, e, power_bound)?;
    let q32 = u32::try_from(q).expect("bounded power");
    let k = q32 - 1;
    let scene = MatrixMinors::new();
    let sums = build_sums(&scene, k);
    let powers = power_terms(&scene, q32);
    let target = [2 * k + 1; 3];

    let mut reduction_matches = true;
    for t in 0..3 {
        let diff = sums[t].sub(&powers[t]).clear_denominators(&target)?;
        if !diff.reduce_mod_p(p)?.is_zero() {
            reduction_matches = false;
        }
    }

    let power_sum = powers[0].add(&powers[1]).add(&powers[2]);
    let power_sum_zero_mod_p = power_sum
        .clear_denominators(&[q32; 3])?
        .reduce_mod_p(p)?
        .is_zero();

    let verified = reduction_matches && power_sum_zero_mod_p;
    Ok(ModPReport { p, e, k, reduction_matches, power_sum_zero_mod_p, verified })
}

/// The Frobenius-power congruence: from `sum g_i f_i = 0` it follows that
/// `sum g_i^(p^e) f_i^(p^e) = 0 mod p`. Computed exactly, then reduced.
pub fn frobenius_power_relation(
    s: &Syzygy,
    p: u64,
    e: u32,
    power_bound: u64,
) -> Result<bool, Error> {
    let q = prime_power(p, e, power_bound)?;
    let q32 = u32::try_from(q).expect("bounded power");
    let mut acc = Polynomial::zero(s.basis().vars());
    for (g, f) in s.coeffs().iter().zip(s.basis().polys()) {
        acc = acc.try_add(&g.pow(q32).try_mul(&f.pow(q32))?)?;
    }
    Ok(acc.reduce_mod_p(p)?.is_zero())
}

/// Applies a divided-power operator termwise to the cocycle attached to a
/// syzygy. The result is again a cocycle; its cleared coboundary is the
/// generated polynomial identity and must be zero.
pub fn generate_identity(
    s: &Syzygy,
    op: &DividedPowerOp,
) -> Result<GeneratedIdentity, Error> {
    let base = syzygy_to_cocycle(s)?;
    let cochain = base.apply_op(op)?;
    let coboundary = cochain.coboundary()?;
    let top = coboundary.component(&[0, 1, 2]);
    let cleared = top.clear_denominators(&top.max_denom_exponents())?;
    let verified = cleared.is_zero();
    Ok(GeneratedIdentity {
        term_count: cochain.term_count(),
        cochain,
        cleared,
        verified,
    })
}
