//! Closed-form coefficients of the gluing construction.
//!
//! Everything here is finite-dimensional bookkeeping: the leading class
//! size of the glued metric, its first correction, the radial coefficient
//! of the quartic potential correction, the scaling schedule relating the
//! neck radii to the gluing parameter, and the magnitude budget showing
//! that every correction band decays strictly faster than the principal
//! asymptotic. Quantities are rational multiples of powers of pi times
//! exact rational powers of the gluing parameter; comparisons happen on
//! exponents, never on floats.

use num_traits::{One, Signed, Zero};

use crate::balancing::{CoeffVec, Curvature};
use crate::error::{Error, Result};
use crate::exact::{EpsPower, PiRat, RadExpr, RadTerm};
use crate::rat::{rat_frac, rat_i64, to_f64};
use crate::spectral::{weight_window, WindowContext};
use crate::{Int, Rat};

pub use crate::exact::sphere_volume;

/// Inputs shared by the tuning computations for one singular point.
#[derive(Clone, Debug)]
pub struct TuningInputs {
    pub m: usize,
    /// Scalar curvature of the base (nonnegative).
    pub s: Rat,
    /// Order of the local group.
    pub order: u64,
    /// The balancing weight at this point (positive).
    pub b: Rat,
    /// The decay constant of the local model's potential (positive,
    /// supplied by the caller; it depends on the chosen model metric and
    /// has no default).
    pub c_gamma: Rat,
    /// Gluing parameter, in (0, 1).
    pub epsilon: Rat,
    /// Analysis weight, expected in the gluing window.
    pub delta: Rat,
}

impl TuningInputs {
    pub fn new(
        m: usize,
        s: Rat,
        order: u64,
        b: Rat,
        c_gamma: Rat,
        epsilon: Rat,
        delta: Rat,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::Unsupported("complex dimension must be at least 2".into()));
        }
        if s.is_negative() {
            return Err(Error::Unsupported("scalar curvature must be nonnegative".into()));
        }
        if order == 0 {
            return Err(Error::Unsupported("group order must be positive".into()));
        }
        if !b.is_positive() || !c_gamma.is_positive() {
            return Err(Error::Unsupported(
                "balancing weight and model decay constant must be positive".into(),
            ));
        }
        if !epsilon.is_positive() || epsilon >= Rat::one() {
            return Err(Error::Unsupported("gluing parameter must lie in (0, 1)".into()));
        }
        Ok(TuningInputs { m, s, order, b, c_gamma, epsilon, delta })
    }

    fn order_rat(&self) -> Rat {
        Rat::from_integer(Int::from(self.order))
    }
}

/// The leading class size: its 2m-th power is exact, the root is a float
/// companion.
#[derive(Clone, Debug, PartialEq)]
pub struct BCoefficient {
    /// `B^(2m) = b |Gamma| / (2 c(Gamma) (m-1) |S^(2m-1)|)`, exact.
    pub radicand: PiRat,
    /// `B` itself, as a float.
    pub value: f64,
}

pub fn b_coefficient(t: &TuningInputs) -> Result<BCoefficient> {
    let m = t.m as i64;
    let radicand = PiRat::from_rat(
        &t.b * t.order_rat() / (rat_i64(2 * (m - 1)) * &t.c_gamma),
    )
    .mul(&sphere_volume(t.m).recip());
    let value = radicand.to_f64().powf(1.0 / (2.0 * t.m as f64));
    Ok(BCoefficient { radicand, value })
}

/// The correction coefficient attached to the slower-decaying profile,
/// for dimension at least three.
pub fn c_coefficient(t: &TuningInputs, b2m: &PiRat, c: &Rat) -> Result<PiRat> {
    let m = t.m as i64;
    if t.m < 3 {
        return Err(Error::Unsupported(
            "the correction coefficient takes this form only in dimension at least three".into(),
        ));
    }
    let curvature_factor = Rat::one() + rat_frac((m - 1) * (m - 1), m + 1);
    let geometry = PiRat::from_rat(
        rat_i64(2)
            * &t.c_gamma
            * (rat_i64(m - 1) / (rat_i64(m) * t.order_rat()))
            * &t.s
            * curvature_factor,
    )
    .mul(&sphere_volume(t.m))
    .mul(b2m);
    let bracket = geometry
        .checked_add(&PiRat::from_rat(-c.clone()))
        .ok_or_else(|| {
            Error::Unsupported("bracket terms carry mismatched pi powers".into())
        })?;
    Ok(bracket.mul_rat(&(t.order_rat() / rat_i64(8 * (m - 2) * (m - 1)))))
}

/// The same coefficient with the tuned weights substituted: it collapses
/// to `-|Gamma| s b / (4 (m-2) m (m+1))`, independent of the model decay
/// constant.
pub fn c_coefficient_tuned(t: &TuningInputs) -> Result<PiRat> {
    let m = t.m as i64;
    if t.m < 3 {
        return Err(Error::Unsupported(
            "the correction coefficient takes this form only in dimension at least three".into(),
        ));
    }
    Ok(PiRat::from_rat(
        -(t.order_rat() * &t.s * &t.b) / rat_i64(4 * (m - 2) * m * (m + 1)),
    ))
}

/// Radial branch of the quartic potential correction.
#[derive(Clone, Debug, PartialEq)]
pub enum W4Branch {
    /// Coefficient of `|x|^(4-2m)`.
    PowerLaw(i64),
    /// Coefficient of `log |x|` (dimension two).
    Log,
}

#[derive(Clone, Debug, PartialEq)]
pub struct W4Coefficient {
    pub coeff: Rat,
    pub branch: W4Branch,
}

pub fn w4_radial_coefficient(t: &TuningInputs) -> Result<W4Coefficient> {
    let m = t.m as i64;
    if t.m == 2 {
        return Ok(W4Coefficient {
            coeff: -(&t.c_gamma * &t.s) / rat_i64(6),
            branch: W4Branch::Log,
        });
    }
    Ok(W4Coefficient {
        coeff: &t.c_gamma * rat_i64(m - 1) * &t.s / rat_i64(2 * (m - 2) * m * (m + 1)),
        branch: W4Branch::PowerLaw(4 - 2 * m),
    })
}

/// Componentwise check of the tuning relation `c = s b`.
pub fn check_tuning(b: &[Rat], c: &CoeffVec, s: &Curvature) -> Result<bool> {
    if b.len() != c.len() {
        return Err(Error::DimensionMismatch(format!(
            "weight vectors of lengths {} and {}",
            b.len(),
            c.len()
        )));
    }
    Ok((0..b.len()).all(|j| {
        let cj = c.entry(j);
        match s {
            Curvature::Symbolic => cj.con.is_zero() && cj.lin == b[j],
            Curvature::Value(v) => cj.eval(v) == &b[j] * v,
        }
    }))
}

/// The tuned 2m-th power of the class size:
/// `B^(2m) (1 - f_hat eps^(-2m)) + (h0 + k0/(4m-8)) r_eps^(2m-2) /
/// (c(Gamma) eps^(2m))`. Exact: the schedule power of the gluing parameter
/// stays symbolic.
pub fn tuned_b(
    t: &TuningInputs,
    b2m: &PiRat,
    f_hat: &Rat,
    h0: &Rat,
    k0: &Rat,
) -> Result<RadExpr> {
    let m = t.m as i64;
    if t.m == 2 {
        return Err(Error::Unsupported(
            "the tuned class size divides by 4m-8, which vanishes in dimension two".into(),
        ));
    }
    let eps_2m = num_traits::pow::Pow::pow(t.epsilon.clone(), 2 * t.m as u64);
    let first = RadTerm::new(
        b2m.coeff_rat() * (Rat::one() - f_hat / eps_2m),
        b2m.pi_pow,
        Rat::zero(),
    );
    // r_eps^(2m-2) / eps^(2m) = eps^((2m-1)(2m-2)/(2m+1) - 2m)
    let rho = rat_frac((2 * m - 1) * (2 * m - 2), 2 * m + 1) - rat_i64(2 * m);
    let second = RadTerm::new(
        (h0 + k0 / rat_i64(4 * m - 8)) / &t.c_gamma,
        0,
        rho,
    );
    Ok(RadExpr::from_terms(vec![first, second]))
}

/// Exponents of the scaling schedule: the neck radius is
/// `eps^((2m-1)/(2m+1))` and the model truncation radius is the neck
/// radius over the gluing parameter.
pub fn schedule_exponents(m: usize) -> (Rat, Rat) {
    let mi = m as i64;
    (
        rat_frac(2 * mi - 1, 2 * mi + 1),
        rat_frac(-2, 2 * mi + 1),
    )
}

/// Evaluates the schedule at a concrete gluing parameter. The identity
/// `r_eps = eps * R_eps` holds at exponent level by construction and is
/// checked here.
pub fn epsilon_schedule(epsilon: &Rat, m: usize) -> Result<(EpsPower, EpsPower)> {
    if !epsilon.is_positive() || *epsilon >= Rat::one() {
        return Err(Error::Unsupported("gluing parameter must lie in (0, 1)".into()));
    }
    let (r_exp, big_r_exp) = schedule_exponents(m);
    debug_assert_eq!(r_exp, Rat::one() + big_r_exp.clone());
    Ok((
        EpsPower::new(epsilon, r_exp),
        EpsPower::new(epsilon, big_r_exp),
    ))
}

/// One named magnitude `eps^exponent` of the gluing budget.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetBand {
    pub name: &'static str,
    pub eps_exponent: Rat,
    pub magnitude: f64,
    pub exceeds_principal: bool,
}

#[derive(Clone, Debug)]
pub struct GluingBudget {
    pub m: usize,
    pub delta: Rat,
    pub r_exponent: Rat,
    pub big_r_exponent: Rat,
    pub principal_exponent: Rat,
    pub bands: Vec<BudgetBand>,
    pub all_corrections_smaller: bool,
}

/// Exact exponent of `eps^a r_eps^b R_eps^c` under the schedule.
fn band_exponent(m: usize, a: i64, r_pow: &Rat, big_r_pow: i64) -> Rat {
    let (r_exp, big_r_exp) = schedule_exponents(m);
    rat_i64(a) + r_exp * r_pow + big_r_exp * rat_i64(big_r_pow)
}

/// Evaluates every correction band of the construction in terms of the
/// gluing parameter and certifies that each decays strictly faster than
/// the principal asymptotic band `eps^(2m) r_eps^(2-2m)`. All bands are
/// measured at the gluing boundary in base-frame units; the model-side
/// correction enters there scaled by the square of the gluing parameter.
pub fn gluing_budget(t: &TuningInputs) -> Result<GluingBudget> {
    let window = weight_window(t.m, WindowContext::Gluing)?;
    if !window.contains(&t.delta) {
        return Err(Error::WeightOutsideWindow {
            delta: crate::rat::rat_to_string(&t.delta),
            lo: crate::rat::rat_to_string(&window.lo),
            hi: crate::rat::rat_to_string(&window.hi),
        });
    }
    let m = t.m as i64;
    let d = &t.delta;
    let eps = to_f64(&t.epsilon);
    let principal = band_exponent(t.m, 2 * m, &rat_i64(2 - 2 * m), 0);
    let raw_bands: Vec<(&'static str, i64, Rat, i64)> = vec![
        ("base_correction", 2 * m + 2, rat_i64(2 - 2 * m) - d, 0),
        ("model_correction", 2 * m + 6, rat_i64(-4 * m) - d, -2),
        ("boundary_radial", 4 * m + 2, rat_i64(4 - 6 * m) - d, 0),
        ("boundary_nonradial", 2 * m + 4, rat_i64(2 - 4 * m) - d, 0),
        ("scalar_curvature_shift", 2 * m, Rat::zero(), 0),
    ];
    let bands: Vec<BudgetBand> = raw_bands
        .into_iter()
        .map(|(name, a, r_pow, big_r)| {
            let exp = band_exponent(t.m, a, &r_pow, big_r);
            BudgetBand {
                name,
                magnitude: eps.powf(to_f64(&exp)),
                exceeds_principal: exp > principal,
                eps_exponent: exp,
            }
        })
        .collect();
    let all = bands.iter().all(|b| b.exceeds_principal);
    let (r_exponent, big_r_exponent) = schedule_exponents(t.m);
    Ok(GluingBudget {
        m: t.m,
        delta: t.delta.clone(),
        r_exponent,
        big_r_exponent,
        principal_exponent: principal,
        bands,
        all_corrections_smaller: all,
    })
}

/// Volume of the truncated model space at truncation radius `R`:
/// `|S^(2m-1)| R^(2m) / (2m |Gamma|)`.
pub fn ale_volume(radius: &Rat, m: usize, order: u64) -> Result<PiRat> {
    if !radius.is_positive() {
        return Err(Error::Unsupported("truncation radius must be positive".into()));
    }
    if m < 1 || order == 0 {
        return Err(Error::Unsupported("dimension and group order must be positive".into()));
    }
    let r_pow = num_traits::pow::Pow::pow(radius.clone(), 2 * m as u64);
    Ok(sphere_volume(m)
        .mul_rat(&(r_pow / (rat_i64(2 * m as i64) * Rat::from_integer(Int::from(order))))))
}

/// The two candidate leading values of the tuned class size and their
/// ratio. No reconciliation is attempted: both are reported.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingBComparison {
    /// `|Gamma| b / (2 (m-1))`.
    pub plain_value: Rat,
    /// The exact 2m-th power of the class-size coefficient.
    pub class_value: PiRat,
    /// plain over class: `c(Gamma) |S^(2m-1)|`.
    pub ratio: PiRat,
}

pub fn leading_b_comparison(t: &TuningInputs, b2m: &PiRat) -> LeadingBComparison {
    let m = t.m as i64;
    let plain = t.order_rat() * &t.b / rat_i64(2 * (m - 1));
    let ratio = PiRat::from_rat(plain.clone()).mul(&b2m.recip());
    LeadingBComparison {
        plain_value: plain,
        class_value: b2m.clone(),
        ratio,
    }
}
