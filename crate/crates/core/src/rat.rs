//! Small helpers for exact rationals: canonical string form `p/q`,
//! parsing, and reductions used across the crate.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Canonical display: `p` when the denominator is one, otherwise `p/q`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (reduced automatically, `q > 0` enforced).
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<Int> {
        t.trim().parse::<Int>().map_err(|e| Error::Parse {
            location: format!("rational literal {s:?}"),
            message: e.to_string(),
        })
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::Parse {
                    location: format!("rational literal {s:?}"),
                    message: "zero denominator".into(),
                });
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
    }
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Representative of `x` modulo one in `[0, 1)`.
pub fn mod_one(x: &Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}

/// Least common multiple of the denominators of a family of rationals.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> Int {
    xs.into_iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Factorial as a big integer.
pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

pub fn is_strictly_positive(x: &Rat) -> bool {
    x.is_positive()
}
