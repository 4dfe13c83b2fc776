//! Mode-wise spectral data on the unit sphere of complex m-space.
//!
//! Modes are indexed by eigenspace (without multiplicity); the eigenvalue
//! of mode `gamma` is `-gamma (2m - 2 + gamma)`. Harmonic dimensions and
//! their invariant counterparts under a diagonal finite group action are
//! computed by exact monomial counting. Radial profiles of inner and outer
//! biharmonic extensions are kept symbolically as finite sums of powers
//! (plus a single logarithmic branch in complex dimension two), which makes
//! the biharmonicity check and the boundary-data matrices exact.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::QuotientGroup;
use crate::rat::{mod_one, rat_frac, rat_i64};
use crate::Rat;

/// Eigenspace index `gamma` in complex dimension `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub gamma: usize,
    pub m: usize,
}

impl ModeIndex {
    pub fn new(m: usize, gamma: usize) -> Self {
        ModeIndex { gamma, m }
    }
}

/// `Lambda_gamma = -gamma (2m - 2 + gamma)`.
pub fn eigenvalue(mode: ModeIndex) -> i64 {
    let g = mode.gamma as i64;
    let m = mode.m as i64;
    -g * (2 * m - 2 + g)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn monomial_count(real_vars: usize, degree: i64) -> u128 {
    if degree < 0 {
        return 0;
    }
    binomial(degree as u64 + real_vars as u64 - 1, real_vars as u64 - 1)
}

/// Dimension of the space of degree-`gamma` harmonic polynomials in `2m`
/// real variables: monomials of degree `gamma` minus monomials of degree
/// `gamma - 2`.
pub fn harmonic_dimension(mode: ModeIndex) -> u128 {
    let n = 2 * mode.m;
    monomial_count(n, mode.gamma as i64) - monomial_count(n, mode.gamma as i64 - 2)
}

/// A finite diagonal abelian action on complex m-space, given by generator
/// weight vectors (each weight in `[0, 1)`).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    pub m: usize,
    pub generator_weights: Vec<Vec<Rat>>,
}

impl GroupAction {
    pub fn trivial(m: usize) -> Self {
        GroupAction { m, generator_weights: Vec::new() }
    }

    /// Cyclic action of order `n` with weights `a_k / n`.
    pub fn cyclic(m: usize, n: u64, numerators: &[i64]) -> Result<Self> {
        if numerators.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "expected {m} weights, found {}",
                numerators.len()
            )));
        }
        if n == 0 {
            return Err(Error::Unsupported("cyclic order must be positive".into()));
        }
        let weights = numerators
            .iter()
            .map(|&a| mod_one(&rat_frac(a, n as i64)))
            .collect();
        Ok(GroupAction { m, generator_weights: vec![weights] })
    }

    pub fn from_quotient(m: usize, group: &QuotientGroup) -> Self {
        GroupAction {
            m,
            generator_weights: group.generator_weights.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_weights
            .iter()
            .all(|w| w.iter().all(|x| x.is_zero()))
    }
}

fn for_each_composition(vars: usize, degree: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(slot: usize, remaining: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if slot + 1 == buf.len() {
            buf[slot] = remaining;
            f(buf);
            return;
        }
        for v in 0..=remaining {
            buf[slot] = v;
            rec(slot + 1, remaining - v, buf, f);
        }
    }
    if vars == 0 {
        if degree == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0usize; vars];
    rec(0, degree, &mut buf, f);
}

/// Number of invariant monomials `z^alpha zbar^beta` of total degree
/// `degree`: invariance holds exactly when, for every generator, the
/// weighted exponent difference sums to an integer.
fn invariant_monomial_count(action: &GroupAction, degree: i64) -> u128 {
    if degree < 0 {
        return 0;
    }
    let m = action.m;
    let mut count: u128 = 0;
    for_each_composition(2 * m, degree as usize, &mut |exps| {
        let invariant = action.generator_weights.iter().all(|w| {
            let sum: Rat = (0..m)
                .map(|k| {
                    let diff = exps[k] as i64 - exps[m + k] as i64;
                    rat_i64(diff) * w[k].clone()
                })
                .sum();
            sum.denom().is_one()
        });
        if invariant {
            count += 1;
        }
    });
    count
}

/// Dimension of the invariant part of the mode-`gamma` eigenspace.
pub fn invariant_harmonic_dimension(action: &GroupAction, gamma: usize) -> u128 {
    invariant_monomial_count(action, gamma as i64)
        - invariant_monomial_count(action, gamma as i64 - 2)
}

/// Smallest positive mode with a nonzero invariant eigenspace. For any
/// nontrivial action this is at least two; for actions free away from the
/// origin mode one is always empty.
pub fn first_invariant_mode(action: &GroupAction) -> Result<usize> {
    if action.is_trivial() {
        return Err(Error::Unsupported(
            "first invariant mode of the trivial action is mode one".into(),
        ));
    }
    // mode two always contains the mixed quadratics z_k zbar_k
    (1..=2)
        .find(|&g| invariant_harmonic_dimension(action, g) > 0)
        .ok_or_else(|| Error::Unsupported("no invariant mode found".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Origin,
    Infinity,
}

/// Indicial-root membership: the integers minus the band `5-2m..=-1` in
/// dimension at least three, all integers in dimension two. The set is the
/// same at the origin and at infinity.
#[derive(Clone, Copy, Debug)]
pub struct IndicialRoots {
    pub m: usize,
    pub location: Location,
}

pub fn indicial_roots(m: usize, location: Location) -> Result<IndicialRoots> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    Ok(IndicialRoots { m, location })
}

impl IndicialRoots {
    pub fn is_indicial(&self, delta: i64) -> bool {
        if self.m == 2 {
            return true;
        }
        let lo = 5 - 2 * self.m as i64;
        !(lo..=-1).contains(&delta)
    }

    pub fn excluded_band(&self) -> Option<(i64, i64)> {
        (self.m >= 3).then(|| (5 - 2 * self.m as i64, -1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowContext {
    Base,
    Model,
    Gap,
    Gluing,
}

/// Open interval of admissible weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightWindow {
    pub lo: Rat,
    pub hi: Rat,
}

impl WeightWindow {
    pub fn contains(&self, delta: &Rat) -> bool {
        *delta > self.lo && *delta < self.hi
    }
}

pub fn weight_window(m: usize, context: WindowContext) -> Result<WeightWindow> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let mi = m as i64;
    let window = |lo: i64, hi: i64| WeightWindow {
        lo: rat_i64(lo),
        hi: rat_i64(hi),
    };
    Ok(match context {
        WindowContext::Base | WindowContext::Model => {
            if m == 2 {
                window(0, 1)
            } else {
                window(4 - 2 * mi, 0)
            }
        }
        WindowContext::Gap => {
            if m == 2 {
                return Err(Error::Unsupported(
                    "the gap window degenerates in complex dimension two".into(),
                ));
            }
            window(2 - 2 * mi, 4 - 2 * mi)
        }
        WindowContext::Gluing => window(4 - 2 * mi, 5 - 2 * mi),
    })
}

/// `mu(a) = a (a + 2m - 2) + Lambda_gamma`, the factor produced by the
/// radial Laplacian on `r^a` times a mode-`gamma` harmonic.
pub fn radial_laplacian_coefficient(a: i64, mode: ModeIndex) -> i64 {
    let m = mode.m as i64;
    a * (a + 2 * m - 2) + eigenvalue(mode)
}

/// One radial term `coeff * r^exponent` (times `log r` when flagged).
#[derive(Clone, Debug, PartialEq)]
pub struct RadialTerm {
    pub coeff: Rat,
    pub exponent: i64,
    pub log: bool,
}

/// Finite sum of radial terms attached to one spherical mode.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    pub mode: ModeIndex,
    pub terms: Vec<RadialTerm>,
}

impl RadialProfile {
    pub fn new(mode: ModeIndex, terms: Vec<RadialTerm>) -> Self {
        let mut p = RadialProfile { mode, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let mut merged: Vec<RadialTerm> = Vec::new();
        for t in self.terms.drain(..) {
            if t.coeff.is_zero() {
                continue;
            }
            if let Some(slot) = merged
                .iter_mut()
                .find(|u| u.exponent == t.exponent && u.log == t.log)
            {
                slot.coeff = &slot.coeff + &t.coeff;
            } else {
                merged.push(t);
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by_key(|t| (t.exponent, t.log));
        self.terms = merged;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The radial Laplacian applied once: `r^a -> mu(a) r^(a-2)`, and
    /// `r^a log r -> mu(a) r^(a-2) log r + (2a + 2m - 2) r^(a-2)`.
    pub fn laplacian(&self) -> RadialProfile {
        let m = self.mode.m as i64;
        let mut terms = Vec::new();
        for t in &self.terms {
            let mu = rat_i64(radial_laplacian_coefficient(t.exponent, self.mode));
            terms.push(RadialTerm {
                coeff: &t.coeff * &mu,
                exponent: t.exponent - 2,
                log: t.log,
            });
            if t.log {
                terms.push(RadialTerm {
                    coeff: &t.coeff * rat_i64(2 * t.exponent + 2 * m - 2),
                    exponent: t.exponent - 2,
                    log: false,
                });
            }
        }
        RadialProfile::new(self.mode, terms)
    }

    /// Value at radius one (`log 1 = 0`).
    pub fn value_at_one(&self) -> Rat {
        self.terms
            .iter()
            .filter(|t| !t.log)
            .map(|t| t.coeff.clone())
            .sum()
    }

    /// Radial derivative at radius one.
    pub fn derivative_at_one(&self) -> Rat {
        self.terms
            .iter()
            .map(|t| {
                if t.log {
                    t.coeff.clone()
                } else {
                    &t.coeff * rat_i64(t.exponent)
                }
            })
            .sum()
    }

    pub fn sub(&self, other: &RadialProfile) -> RadialProfile {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| RadialTerm {
            coeff: -t.coeff.clone(),
            exponent: t.exponent,
            log: t.log,
        }));
        RadialProfile::new(self.mode, terms)
    }

    /// Floating evaluation, for numerical cross-checks.
    pub fn eval_f64(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let base = crate::rat::to_f64(&t.coeff) * r.powi(t.exponent as i32);
                if t.log {
                    base * r.ln()
                } else {
                    base
                }
            })
            .sum()
    }
}

/// Outer biharmonic extension of mode-`gamma` boundary data `(h, k)`:
/// value `h` and Laplacian `k` on the unit sphere, decaying at infinity.
pub fn outer_extension(mode: ModeIndex, h: &Rat, k: &Rat) -> Result<RadialProfile> {
    let (m, g) = (mode.m as i64, mode.gamma as i64);
    if mode.m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    if mode.m == 2 && mode.gamma == 0 {
        return Ok(RadialProfile::new(
            mode,
            vec![
                RadialTerm { coeff: h.clone(), exponent: -2, log: false },
                RadialTerm { coeff: k / rat_i64(2), exponent: 0, log: true },
            ],
        ));
    }
    let denom = rat_i64(4 * (m + g - 2));
    Ok(RadialProfile::new(
        mode,
        vec![
            RadialTerm {
                coeff: h + k / denom.clone(),
                exponent: 2 - 2 * m - g,
                log: false,
            },
            RadialTerm {
                coeff: -(k / denom),
                exponent: 4 - 2 * m - g,
                log: false,
            },
        ],
    ))
}

/// Inner biharmonic extension of mode-`gamma` boundary data `(h, k)`,
/// regular on the unit ball.
pub fn inner_extension(mode: ModeIndex, h: &Rat, k: &Rat) -> Result<RadialProfile> {
    let (m, g) = (mode.m as i64, mode.gamma as i64);
    if mode.m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let denom = rat_i64(4 * (m + g));
    Ok(RadialProfile::new(
        mode,
        vec![
            RadialTerm {
                coeff: h - k / denom.clone(),
                exponent: g,
                log: false,
            },
            RadialTerm {
                coeff: k / denom,
                exponent: g + 2,
                log: false,
            },
        ],
    ))
}

/// True exactly when the symbolic bi-Laplacian of the profile vanishes.
pub fn verify_biharmonic(profile: &RadialProfile) -> bool {
    profile.laplacian().laplacian().is_zero()
}

/// Biharmonicity plus exact boundary reproduction: value `h` and Laplacian
/// `k` at radius one.
pub fn verify_extension(profile: &RadialProfile, h: &Rat, k: &Rat) -> bool {
    verify_biharmonic(profile)
        && profile.value_at_one() == *h
        && profile.laplacian().value_at_one() == *k
}

/// The mode-wise boundary-data map: the jump of the radial derivatives of
/// (outer minus inner) extension value and Laplacian at the unit sphere, as
/// an exact two-by-two matrix acting on `(h, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DtNMatrix {
    pub mode: ModeIndex,
    pub entries: [[Rat; 2]; 2],
    pub determinant: Rat,
}

pub fn dtn_matrix(mode: ModeIndex) -> Result<DtNMatrix> {
    let one = Rat::one();
    let zero = Rat::zero();
    let mut entries = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
    for (col, (h, k)) in [(one.clone(), zero.clone()), (zero, one)].iter().enumerate() {
        let out = outer_extension(mode, h, k)?;
        let inn = inner_extension(mode, h, k)?;
        let diff = out.sub(&inn);
        entries[0][col] = diff.derivative_at_one();
        entries[1][col] = diff.laplacian().derivative_at_one();
    }
    let determinant = &entries[0][0] * &entries[1][1] - &entries[0][1] * &entries[1][0];
    Ok(DtNMatrix { mode, entries, determinant })
}

/// Exact inverse of the boundary-data matrix. A vanishing determinant is
/// reported loudly: it would break the mode-wise matching.
pub fn dtn_inverse(d: &DtNMatrix) -> Result<[[Rat; 2]; 2]> {
    if d.determinant.is_zero() {
        return Err(Error::SingularBoundaryMap {
            m: d.mode.m,
            gamma: d.mode.gamma,
        });
    }
    let inv = Rat::one() / d.determinant.clone();
    Ok([
        [&d.entries[1][1] * &inv, -(&d.entries[0][1] * &inv)],
        [-(&d.entries[1][0] * &inv), &d.entries[0][0] * &inv],
    ])
}

pub fn apply_2x2(m: &[[Rat; 2]; 2], v: &(Rat, Rat)) -> (Rat, Rat) {
    (
        &m[0][0] * &v.0 + &m[0][1] * &v.1,
        &m[1][0] * &v.0 + &m[1][1] * &v.1,
    )
}

/// Inverse-square eigenvalue factors of the quartic and quintic potential
/// corrections: modes two and four for the even correction, three and five
/// for the odd one. In complex dimension two the even correction carries a
/// logarithmic radial branch.
#[derive(Clone, Debug, PartialEq)]
pub struct WCorrectionFactors {
    pub mode2: Rat,
    pub mode3: Rat,
    pub mode4: Rat,
    pub mode5: Rat,
    pub log_branch: bool,
}

pub fn w_correction_mode_factors(m: usize) -> Result<WCorrectionFactors> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let inv_sq = |g: usize| {
        let lambda = eigenvalue(ModeIndex::new(m, g));
        Rat::one() / rat_i64(lambda * lambda)
    };
    Ok(WCorrectionFactors {
        mode2: inv_sq(2),
        mode3: inv_sq(3),
        mode4: inv_sq(4),
        mode5: inv_sq(5),
        log_branch: m == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues() {
        assert_eq!(eigenvalue(ModeIndex::new(2, 0)), 0);
        assert_eq!(eigenvalue(ModeIndex::new(5, 0)), 0);
        assert_eq!(eigenvalue(ModeIndex::new(2, 1)), -3);
        assert_eq!(eigenvalue(ModeIndex::new(3, 2)), -12);
        // strictly decreasing in the mode
        for m in 2..=5 {
            for g in 0..20 {
                assert!(eigenvalue(ModeIndex::new(m, g + 1)) < eigenvalue(ModeIndex::new(m, g)));
            }
        }
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(harmonic_dimension(ModeIndex::new(2, 0)), 1);
        assert_eq!(harmonic_dimension(ModeIndex::new(2, 1)), 4);
        assert_eq!(harmonic_dimension(ModeIndex::new(2, 2)), 9);
        // closed binomial form: C(n+g-1, n-1) - C(n+g-3, n-1)
        for m in 2..=4usize {
            let n = 2 * m as u64;
            for g in 0..=10u64 {
                let closed = binomial(n + g - 1, n - 1)
                    - if g >= 2 { binomial(n + g - 3, n - 1) } else { 0 };
                assert_eq!(harmonic_dimension(ModeIndex::new(m, g as usize)), closed);
            }
        }
    }

    #[test]
    fn invariant_dimensions_for_small_groups() {
        let trivial = GroupAction::trivial(2);
        for g in 0..=6 {
            assert_eq!(
                invariant_harmonic_dimension(&trivial, g),
                harmonic_dimension(ModeIndex::new(2, g))
            );
        }
        let z2 = GroupAction::cyclic(2, 2, &[1, 1]).unwrap();
        assert_eq!(invariant_harmonic_dimension(&z2, 1), 0);
        assert_eq!(first_invariant_mode(&z2).unwrap(), 2);
        let z3 = GroupAction::cyclic(2, 3, &[1, 2]).unwrap();
        assert_eq!(invariant_harmonic_dimension(&z3, 1), 0);
        assert_eq!(first_invariant_mode(&z3).unwrap(), 2);
        let z3_diag = GroupAction::cyclic(3, 3, &[1, 1, 1]).unwrap();
        assert_eq!(first_invariant_mode(&z3_diag).unwrap(), 2);
        assert!(first_invariant_mode(&GroupAction::trivial(2)).is_err());
    }

    #[test]
    fn indicial_membership() {
        let roots = indicial_roots(3, Location::Origin).unwrap();
        assert!(!roots.is_indicial(-1));
        assert!(roots.is_indicial(0));
        assert!(!roots.is_indicial(-1));
        assert_eq!(roots.excluded_band(), Some((-1, -1)));
        let inf = indicial_roots(3, Location::Infinity).unwrap();
        for d in -10..10 {
            assert_eq!(roots.is_indicial(d), inf.is_indicial(d));
        }
        let m2 = indicial_roots(2, Location::Origin).unwrap();
        assert!(m2.is_indicial(0));
        assert!(m2.is_indicial(-7));
    }

    #[test]
    fn windows() {
        let w = weight_window(3, WindowContext::Base).unwrap();
        assert_eq!((w.lo, w.hi), (rat_i64(-2), rat_i64(0)));
        let w2 = weight_window(2, WindowContext::Base).unwrap();
        assert_eq!((w2.lo, w2.hi), (rat_i64(0), rat_i64(1)));
        let g = weight_window(3, WindowContext::Gluing).unwrap();
        assert_eq!((g.lo.clone(), g.hi.clone()), (rat_i64(-2), rat_i64(-1)));
        assert!(g.contains(&rat_frac(-3, 2)));
        assert!(!g.contains(&rat_i64(-1)));
        assert!(weight_window(2, WindowContext::Gap).is_err());
        assert_eq!(
            weight_window(4, WindowContext::Gap).unwrap(),
            WeightWindow { lo: rat_i64(-6), hi: rat_i64(-4) }
        );
    }

    #[test]
    fn radial_coefficients() {
        // the fundamental-solution exponent and homogeneous harmonics are
        // annihilated
        for m in 2..=5usize {
            assert_eq!(
                radial_laplacian_coefficient(2 - 2 * m as i64, ModeIndex::new(m, 0)),
                0
            );
            for g in 0..5 {
                assert_eq!(
                    radial_laplacian_coefficient(g as i64, ModeIndex::new(m, g)),
                    0
                );
            }
        }
        assert_eq!(radial_laplacian_coefficient(-2, ModeIndex::new(3, 0)), -4);
    }

    #[test]
    fn outer_extension_values() {
        let mode = ModeIndex::new(3, 0);
        let zero = outer_extension(mode, &Rat::zero(), &Rat::zero()).unwrap();
        assert!(zero.is_zero());
        let pure_value = outer_extension(mode, &Rat::one(), &Rat::zero()).unwrap();
        assert_eq!(
            pure_value.terms,
            vec![RadialTerm { coeff: Rat::one(), exponent: -4, log: false }]
        );
        let pure_lap = outer_extension(mode, &Rat::zero(), &rat_i64(4)).unwrap();
        assert_eq!(
            pure_lap.terms,
            vec![
                RadialTerm { coeff: Rat::one(), exponent: -4, log: false },
                RadialTerm { coeff: -Rat::one(), exponent: -2, log: false },
            ]
        );
    }

    #[test]
    fn inner_extension_values() {
        let mode = ModeIndex::new(3, 0);
        let constant = inner_extension(mode, &Rat::one(), &Rat::zero()).unwrap();
        assert_eq!(
            constant.terms,
            vec![RadialTerm { coeff: Rat::one(), exponent: 0, log: false }]
        );
        let quadratic = inner_extension(mode, &Rat::zero(), &rat_i64(12)).unwrap();
        assert_eq!(
            quadratic.terms,
            vec![
                RadialTerm { coeff: -Rat::one(), exponent: 0, log: false },
                RadialTerm { coeff: Rat::one(), exponent: 2, log: false },
            ]
        );
    }

    #[test]
    fn biharmonicity_and_boundary() {
        for m in 2..=4usize {
            for g in 0..=6usize {
                let mode = ModeIndex::new(m, g);
                let (h, k) = (rat_frac(3, 7), rat_frac(-2, 5));
                let out = outer_extension(mode, &h, &k).unwrap();
                let inn = inner_extension(mode, &h, &k).unwrap();
                assert!(verify_extension(&out, &h, &k), "outer m={m} g={g}");
                assert!(verify_extension(&inn, &h, &k), "inner m={m} g={g}");
            }
        }
        // r^1 on mode zero in dimension three is not biharmonic
        let bad = RadialProfile::new(
            ModeIndex::new(3, 0),
            vec![RadialTerm { coeff: Rat::one(), exponent: 1, log: false }],
        );
        assert!(!verify_biharmonic(&bad));
    }

    #[test]
    fn dtn_golden_mode() {
        let d = dtn_matrix(ModeIndex::new(3, 0)).unwrap();
        assert_eq!(d.entries[0][0], rat_i64(-4));
        assert_eq!(d.entries[0][1], rat_frac(-2, 3));
        assert_eq!(d.entries[1][0], Rat::zero());
        assert_eq!(d.entries[1][1], rat_i64(-4));
        assert_eq!(d.determinant, rat_i64(16));
        let q = dtn_inverse(&d).unwrap();
        assert_eq!(q[0][0], rat_frac(-1, 4));
        assert_eq!(q[0][1], rat_frac(1, 24));
        // (1/16) * [[-4, 2/3], [0, -4]]
        assert_eq!(q[1][0], Rat::zero());
        assert_eq!(q[1][1], rat_frac(-1, 4));
    }

    #[test]
    fn dtn_log_branch() {
        let d = dtn_matrix(ModeIndex::new(2, 0)).unwrap();
        // derivative of the log branch contributes k/2 at radius one
        assert_eq!(d.entries[0][0], rat_i64(-2));
        assert_eq!(d.entries[0][1], rat_frac(1, 4));
        assert_eq!(d.entries[1][1], rat_i64(-2));
        assert!(!d.determinant.is_zero());
    }

    #[test]
    fn dtn_inverse_of_identity() {
        let d = DtNMatrix {
            mode: ModeIndex::new(3, 0),
            entries: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]],
            determinant: Rat::one(),
        };
        let q = dtn_inverse(&d).unwrap();
        assert_eq!(q, d.entries);
        let singular = DtNMatrix {
            mode: ModeIndex::new(3, 0),
            entries: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::zero()]],
            determinant: Rat::zero(),
        };
        assert!(matches!(
            dtn_inverse(&singular),
            Err(crate::error::Error::SingularBoundaryMap { .. })
        ));
    }

    #[test]
    fn dtn_inverse_roundtrip() {
        for m in 2..=4usize {
            for g in 0..=8usize {
                let d = dtn_matrix(ModeIndex::new(m, g)).unwrap();
                let q = dtn_inverse(&d).unwrap();
                let v = (rat_frac(5, 3), rat_frac(-7, 11));
                let image = apply_2x2(&d.entries, &v);
                assert_eq!(apply_2x2(&q, &image), v);
            }
        }
    }

    #[test]
    fn zero_data_maps_to_zero() {
        let d = dtn_matrix(ModeIndex::new(4, 5)).unwrap();
        let image = apply_2x2(&d.entries, &(Rat::zero(), Rat::zero()));
        assert!(image.0.is_zero() && image.1.is_zero());
    }

    #[test]
    fn correction_factors() {
        let f3 = w_correction_mode_factors(3).unwrap();
        assert_eq!(f3.mode2, rat_frac(1, 144));
        assert_eq!(f3.mode5, rat_frac(1, 2025));
        assert!(!f3.log_branch);
        let f2 = w_correction_mode_factors(2).unwrap();
        assert_eq!(f2.mode2, rat_frac(1, 64));
        assert!(f2.log_branch);
    }
}
