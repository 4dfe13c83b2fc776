//! Exact symbolic scalars used by the tuning layer.
//!
//! Quantities of the construction are rational multiples of integer powers
//! of pi, sometimes times a fractional power of the gluing parameter.
//! They are kept as `(coefficient, pi power, epsilon exponent)` triples and
//! only turned into floats at the presentation layer, so identity tests
//! stay exact.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{rat_to_string, to_f64};
use crate::{Int, Rat};

/// `coeff * pi^pi_pow`, exact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiRat {
    pub coeff: String,
    pub pi_pow: i32,
    #[serde(skip)]
    value: Option<Rat>,
}

impl PiRat {
    pub fn new(coeff: Rat, pi_pow: i32) -> Self {
        let pow = if coeff.is_zero() { 0 } else { pi_pow };
        PiRat {
            coeff: rat_to_string(&coeff),
            pi_pow: pow,
            value: Some(coeff),
        }
    }

    pub fn zero() -> Self {
        PiRat::new(Rat::zero(), 0)
    }

    pub fn from_rat(coeff: Rat) -> Self {
        PiRat::new(coeff, 0)
    }

    pub fn coeff_rat(&self) -> Rat {
        match &self.value {
            Some(v) => v.clone(),
            None => crate::rat::rat_from_str(&self.coeff).expect("well-formed coefficient"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff_rat().is_zero()
    }

    pub fn mul_rat(&self, r: &Rat) -> PiRat {
        PiRat::new(self.coeff_rat() * r, self.pi_pow)
    }

    pub fn mul(&self, other: &PiRat) -> PiRat {
        PiRat::new(self.coeff_rat() * other.coeff_rat(), self.pi_pow + other.pi_pow)
    }

    pub fn recip(&self) -> PiRat {
        let c = self.coeff_rat();
        assert!(!c.is_zero(), "reciprocal of zero");
        PiRat::new(Rat::one() / c, -self.pi_pow)
    }

    /// Sum of two terms with matching pi powers (zero adds to anything).
    pub fn checked_add(&self, other: &PiRat) -> Option<PiRat> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.pi_pow == other.pi_pow)
            .then(|| PiRat::new(self.coeff_rat() + other.coeff_rat(), self.pi_pow))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff_rat()) * std::f64::consts::PI.powi(self.pi_pow)
    }
}

/// Volume of the unit sphere of real dimension `2m - 1`: `2 pi^m / (m-1)!`.
pub fn sphere_volume(m: usize) -> PiRat {
    assert!(m >= 1, "sphere dimension must be positive");
    PiRat::new(
        Rat::new(Int::from(2), crate::rat::factorial(m - 1)),
        m as i32,
    )
}

impl PartialEq for PiRat {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.pi_pow == other.pi_pow
    }
}

impl Eq for PiRat {}

impl fmt::Display for PiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_pow {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{} pi", self.coeff),
            p => write!(f, "{} pi^{}", self.coeff, p),
        }
    }
}

/// A power of the gluing parameter: `base^exp` with an exact rational
/// exponent, an exact rational value when the root is exact, and a float
/// companion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpsPower {
    pub base: String,
    pub exp: String,
    pub exact: Option<String>,
    pub approx: f64,
    #[serde(skip)]
    exp_rat: Option<Rat>,
}

impl PartialEq for EpsPower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.exp == other.exp
            && self.exact == other.exact
            && self.approx == other.approx
    }
}

impl EpsPower {
    pub fn new(base: &Rat, exp: Rat) -> Self {
        let exact = exact_rational_power(base, &exp);
        let approx = to_f64(base).powf(to_f64(&exp));
        EpsPower {
            base: rat_to_string(base),
            exp: rat_to_string(&exp),
            exact: exact.as_ref().map(rat_to_string),
            approx,
            exp_rat: Some(exp),
        }
    }

    pub fn exponent(&self) -> Rat {
        match &self.exp_rat {
            Some(e) => e.clone(),
            None => crate::rat::rat_from_str(&self.exp).expect("well-formed exponent"),
        }
    }
}

/// `base^(p/q)` as an exact rational, when the `q`-th root of `base^p` is
/// rational.
pub fn exact_rational_power(base: &Rat, exp: &Rat) -> Option<Rat> {
    if base.is_zero() {
        return exp.is_positive().then(Rat::zero);
    }
    let p = exp.numer().to_i64()?;
    let q = exp.denom().to_u32()?;
    let powered = if p >= 0 {
        num_traits::pow::Pow::pow(base.clone(), p as u64)
    } else {
        Rat::one() / num_traits::pow::Pow::pow(base.clone(), (-p) as u64)
    };
    if q == 1 {
        return Some(powered);
    }
    if powered.is_negative() {
        return None;
    }
    let root_num = exact_int_root(powered.numer(), q)?;
    let root_den = exact_int_root(powered.denom(), q)?;
    Some(Rat::new(root_num, root_den))
}

fn exact_int_root(x: &Int, q: u32) -> Option<Int> {
    let r = x.nth_root(q);
    (num_traits::pow::Pow::pow(r.clone(), q) == *x).then_some(r)
}

/// One term `coeff * pi^pi_pow * eps^eps_exp` of a [`RadExpr`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadTerm {
    pub coeff: String,
    pub pi_pow: i32,
    pub eps_exp: String,
    #[serde(skip)]
    parts: Option<(Rat, Rat)>,
}

impl PartialEq for RadTerm {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff
            && self.pi_pow == other.pi_pow
            && self.eps_exp == other.eps_exp
    }
}

impl RadTerm {
    pub fn new(coeff: Rat, pi_pow: i32, eps_exp: Rat) -> Self {
        RadTerm {
            coeff: rat_to_string(&coeff),
            pi_pow: if coeff.is_zero() { 0 } else { pi_pow },
            eps_exp: rat_to_string(&eps_exp),
            parts: Some((coeff, eps_exp)),
        }
    }

    pub fn coeff_rat(&self) -> Rat {
        match &self.parts {
            Some((c, _)) => c.clone(),
            None => crate::rat::rat_from_str(&self.coeff).expect("well-formed"),
        }
    }

    pub fn eps_exp_rat(&self) -> Rat {
        match &self.parts {
            Some((_, e)) => e.clone(),
            None => crate::rat::rat_from_str(&self.eps_exp).expect("well-formed"),
        }
    }
}

/// Exact finite sum of [`RadTerm`]s, normalized (merged, sorted, no zeros).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadExpr {
    pub terms: Vec<RadTerm>,
}

impl RadExpr {
    pub fn zero() -> Self {
        RadExpr { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<RadTerm>) -> Self {
        let mut merged: Vec<(Rat, i32, Rat)> = Vec::new();
        for t in terms {
            let c = t.coeff_rat();
            let e = t.eps_exp_rat();
            if c.is_zero() {
                continue;
            }
            if let Some(slot) = merged
                .iter_mut()
                .find(|(_, p, ee)| *p == t.pi_pow && *ee == e)
            {
                slot.0 = slot.0.clone() + c;
            } else {
                merged.push((c, t.pi_pow, e));
            }
        }
        merged.retain(|(c, _, _)| !c.is_zero());
        merged.sort_by(|a, b| (&a.2, a.1).partial_cmp(&(&b.2, b.1)).unwrap());
        RadExpr {
            terms: merged
                .into_iter()
                .map(|(c, p, e)| RadTerm::new(c, p, e))
                .collect(),
        }
    }

    pub fn from_pi(p: &PiRat) -> Self {
        RadExpr::from_terms(vec![RadTerm::new(p.coeff_rat(), p.pi_pow, Rat::zero())])
    }

    pub fn add(&self, other: &RadExpr) -> RadExpr {
        let mut ts = self.terms.clone();
        ts.extend(other.terms.clone());
        RadExpr::from_terms(ts)
    }

    pub fn scale(&self, r: &Rat) -> RadExpr {
        RadExpr::from_terms(
            self.terms
                .iter()
                .map(|t| RadTerm::new(t.coeff_rat() * r, t.pi_pow, t.eps_exp_rat()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self, eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                to_f64(&t.coeff_rat())
                    * std::f64::consts::PI.powi(t.pi_pow)
                    * eps.powf(to_f64(&t.eps_exp_rat()))
            })
            .sum()
    }
}

impl fmt::Display for RadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", PiRat::new(t.coeff_rat(), t.pi_pow))?;
            let e = t.eps_exp_rat();
            if !e.is_zero() {
                write!(f, " eps^{}", t.eps_exp)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_i64};

    #[test]
    fn pi_rat_arithmetic() {
        let a = PiRat::new(rat_frac(3, 4), 3);
        let b = PiRat::new(rat_frac(1, 4), 3);
        assert_eq!(a.checked_add(&b).unwrap(), PiRat::new(rat_i64(1), 3));
        assert_eq!(a.mul(&b), PiRat::new(rat_frac(3, 16), 6));
        assert!(a.checked_add(&PiRat::new(rat_i64(1), 2)).is_none());
        assert!(a.mul(&a.recip()).checked_add(&PiRat::zero()).unwrap() == PiRat::from_rat(rat_i64(1)));
    }

    #[test]
    fn exact_power_detection() {
        // (1/128)^(5/7) = 1/32
        assert_eq!(
            exact_rational_power(&rat_frac(1, 128), &rat_frac(5, 7)),
            Some(rat_frac(1, 32))
        );
        assert_eq!(
            exact_rational_power(&rat_i64(10), &rat_frac(1, 2)),
            None
        );
        assert_eq!(
            exact_rational_power(&rat_frac(4, 9), &rat_frac(1, 2)),
            Some(rat_frac(2, 3))
        );
    }

    #[test]
    fn rad_expr_merges_and_sorts() {
        let e = RadExpr::from_terms(vec![
            RadTerm::new(rat_i64(1), -3, rat_i64(0)),
            RadTerm::new(rat_i64(2), -3, rat_i64(0)),
            RadTerm::new(rat_i64(-3), -3, rat_i64(0)),
        ]);
        assert!(e.is_zero());
    }
}
