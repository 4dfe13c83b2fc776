//! Simplicial fans and the classification of their quotient singularities.
//!
//! Every maximal cone of a simplicial fan presents an affine chart as a
//! quotient of affine space by the finite abelian group `N / (Z v_1 + ... +
//! Z v_m)`. This module parses fan files, computes that group (order,
//! elementary divisors, diagonal weights in the eigencoordinates dual to
//! the cone generators), and decides the two properties the gluing
//! construction cares about: whether the action is free away from the
//! origin, and whether the group sits inside the special unitary group.
//! Both properties are decided by two independent criteria that are
//! required to agree; a disagreement is reported as an internal error
//! rather than silently resolved.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{determinant, solve_unique, Matrix};
use crate::rat::{mod_one, rat_to_string};
use crate::snf::smith_normal_form;
use crate::{Int, IntMatrix, Rat};

/// Upper bound for exhaustive group-element enumeration in cross-checks.
const ENUMERATION_LIMIT: u64 = 10_000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    name: String,
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    polytope_multiple: Option<u32>,
    #[serde(default)]
    scalar_curvature: Option<String>,
}

/// A simplicial fan: primitive ray generators plus maximal cones given as
/// ray index sets (0-based), each of full dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<Int>>,
    pub max_cones: Vec<Vec<usize>>,
    pub polytope_multiple: Option<u32>,
    pub scalar_curvature: Option<Rat>,
}

/// One maximal cone, carrying its generators as matrix columns.
#[derive(Clone, Debug)]
pub struct Cone {
    pub label: String,
    pub generators: IntMatrix,
}

/// The quotient group attached to a maximal cone: order, elementary
/// divisors, and for each group generator the vector of rational weights
/// `w` of its diagonal action `x_k -> e^(2 pi i w_k) x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientGroup {
    pub order: Int,
    pub divisors: Vec<Int>,
    pub generator_weights: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub label: String,
    pub order: String,
    pub is_smooth: bool,
    pub is_isolated: bool,
    pub is_su: bool,
    pub gorenstein_functional: Option<Vec<String>>,
}

/// Parses and validates a fan file (exact schema, unknown keys rejected).
/// Rays are reduced to primitive form; simpliciality is enforced.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.dim == 0 {
        return Err(Error::InvalidFan {
            location: "dim".into(),
            message: "dimension must be positive".into(),
        });
    }
    let mut rays: Vec<Vec<Int>> = Vec::with_capacity(file.rays.len());
    for (i, ray) in file.rays.iter().enumerate() {
        if ray.len() != file.dim {
            return Err(Error::InvalidFan {
                location: format!("ray {i}"),
                message: format!("expected {} coordinates, found {}", file.dim, ray.len()),
            });
        }
        let mut v: Vec<Int> = ray.iter().map(|&x| Int::from(x)).collect();
        let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::InvalidFan {
                location: format!("ray {i}"),
                message: "zero ray".into(),
            });
        }
        if !g.is_one() {
            for x in v.iter_mut() {
                *x = x.clone() / g.clone();
            }
        }
        if rays.contains(&v) {
            return Err(Error::InvalidFan {
                location: format!("ray {i}"),
                message: "duplicate ray (after reduction to primitive form)".into(),
            });
        }
        rays.push(v);
    }
    for (k, cone) in file.max_cones.iter().enumerate() {
        let label = format!("C{}", k + 1);
        if cone.len() != file.dim {
            return Err(Error::InvalidFan {
                location: format!("cone {label}"),
                message: "non-simplicial or non-maximal cone".into(),
            });
        }
        let mut seen = cone.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != cone.len() {
            return Err(Error::InvalidFan {
                location: format!("cone {label}"),
                message: "repeated ray index".into(),
            });
        }
        if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
            return Err(Error::InvalidFan {
                location: format!("cone {label}"),
                message: format!("ray index {bad} out of range"),
            });
        }
        let cols: Vec<Vec<Int>> = cone.iter().map(|&i| rays[i].clone()).collect();
        let m = Matrix::from_columns(&cols);
        if determinant(&m)?.is_zero() {
            return Err(Error::InvalidFan {
                location: format!("cone {label}"),
                message: "non-simplicial or non-maximal cone".into(),
            });
        }
    }
    let scalar_curvature = match &file.scalar_curvature {
        None => None,
        Some(s) => {
            let v = crate::rat::rat_from_str(s)?;
            if !v.is_positive() {
                return Err(Error::InvalidFan {
                    location: "scalar_curvature".into(),
                    message: "must be positive".into(),
                });
            }
            Some(v)
        }
    };
    if let Some(k) = file.polytope_multiple {
        if k == 0 {
            return Err(Error::InvalidFan {
                location: "polytope_multiple".into(),
                message: "must be positive".into(),
            });
        }
    }
    Ok(Fan {
        name: file.name,
        dim: file.dim,
        rays,
        max_cones: file.max_cones,
        polytope_multiple: file.polytope_multiple,
        scalar_curvature,
    })
}

impl Fan {
    pub fn cone(&self, index: usize) -> Cone {
        let cols: Vec<Vec<Int>> = self.max_cones[index]
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        Cone {
            label: format!("C{}", index + 1),
            generators: Matrix::from_columns(&cols),
        }
    }

    pub fn cone_labels(&self) -> Vec<String> {
        (0..self.max_cones.len()).map(|i| format!("C{}", i + 1)).collect()
    }
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.generators.rows()
    }
}

/// Order of the quotient group: the absolute determinant of the generator
/// matrix.
pub fn cone_order(cone: &Cone) -> Result<Int> {
    let det = determinant(&cone.generators)?;
    if det.is_zero() {
        return Err(Error::DegenerateCone {
            label: cone.label.clone(),
        });
    }
    Ok(det.abs())
}

/// Computes the quotient group via the Smith normal form of the generator
/// matrix. With `U A V = D`, the class group is the direct sum of
/// `Z/d_k` over the elementary divisors, and the weight vector of the
/// `k`-th generator is `(column k of V) / d_k` taken modulo one.
pub fn quotient_group(cone: &Cone) -> Result<QuotientGroup> {
    let order = cone_order(cone)?;
    let snf = smith_normal_form(&cone.generators);
    let mut divisors = Vec::new();
    let mut generator_weights = Vec::new();
    for k in 0..cone.dim() {
        let d = snf.d.at(k, k).clone();
        if d.is_one() {
            continue;
        }
        let weights: Vec<Rat> = (0..cone.dim())
            .map(|i| mod_one(&Rat::new(snf.v.at(i, k).clone(), d.clone())))
            .collect();
        divisors.push(d);
        generator_weights.push(weights);
    }
    debug_assert_eq!(
        divisors.iter().fold(Int::one(), |acc, d| acc * d.clone()),
        order
    );
    Ok(QuotientGroup {
        order,
        divisors,
        generator_weights,
    })
}

impl QuotientGroup {
    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Weight vectors of all group elements, identity included.
    pub fn element_weights(&self) -> Vec<Vec<Rat>> {
        let m = self
            .generator_weights
            .first()
            .map_or(0, |w| w.len());
        let mut elements = vec![vec![Rat::zero(); m]];
        for (gen_idx, d) in self.divisors.iter().enumerate() {
            let d_usize = usize::try_from(d.to_biguint().unwrap()).unwrap_or(usize::MAX);
            let mut next = Vec::with_capacity(elements.len() * d_usize);
            for base in &elements {
                for c in 0..d_usize {
                    let w: Vec<Rat> = base
                        .iter()
                        .zip(&self.generator_weights[gen_idx])
                        .map(|(b, g)| {
                            mod_one(&(b + g * Rat::from_integer(Int::from(c))))
                        })
                        .collect();
                    next.push(w);
                }
            }
            elements = next;
        }
        elements
    }
}

/// Free-action criterion: every nontrivial element has all weights nonzero
/// modulo one.
pub fn isolated_by_weights(group: &QuotientGroup) -> bool {
    group
        .element_weights()
        .into_iter()
        .filter(|w| w.iter().any(|x| !x.is_zero()))
        .all(|w| w.iter().all(|x| !x.is_zero()))
}

/// Face criterion: every proper face of the cone is a smooth cone, i.e.
/// the gcd of the maximal minors of each face's generator matrix is one.
pub fn isolated_by_faces(cone: &Cone) -> Result<bool> {
    let m = cone.dim();
    for mask in 1u32..(1 << m) - 1 {
        let cols: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if !face_is_smooth(&cone.generators, &cols)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn face_is_smooth(generators: &IntMatrix, cols: &[usize]) -> Result<bool> {
    let m = generators.rows();
    let s = cols.len();
    let mut gcd = Int::zero();
    for row_mask in 0u32..(1 << m) {
        if row_mask.count_ones() as usize != s {
            continue;
        }
        let rows: Vec<usize> = (0..m).filter(|i| row_mask & (1 << i) != 0).collect();
        let mut minor = Matrix::zeros(s, s);
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                minor.set(ri, ci, generators.at(r, c).clone());
            }
        }
        gcd = gcd.gcd(&determinant(&minor)?);
        if gcd.is_one() {
            return Ok(true);
        }
    }
    Ok(gcd.is_one())
}

/// Whether the quotient singularity is isolated: the group acts freely
/// away from the origin. Decided by the weight criterion and cross-checked
/// against smoothness of every proper face when the group is small enough
/// to enumerate.
pub fn is_isolated(cone: &Cone) -> Result<bool> {
    let group = quotient_group(cone)?;
    let by_faces = isolated_by_faces(cone)?;
    if group.order > Int::from(ENUMERATION_LIMIT) {
        return Ok(by_faces);
    }
    let by_weights = isolated_by_weights(&group);
    if by_weights != by_faces {
        return Err(Error::CriteriaMismatch {
            label: cone.label.clone(),
            what: format!(
                "free-action criterion says isolated={by_weights}, smooth-faces criterion says isolated={by_faces}"
            ),
        });
    }
    Ok(by_weights)
}

/// Integral functional pairing to -1 with every generator, when it exists.
pub fn gorenstein_functional(cone: &Cone) -> Result<Option<Vec<Int>>> {
    let at = cone.generators.transpose().map(|x| Rat::from_integer(x.clone()));
    let rhs = vec![-Rat::one(); cone.dim()];
    let Some(u) = solve_unique(&at, &rhs)? else {
        return Err(Error::DegenerateCone {
            label: cone.label.clone(),
        });
    };
    if u.iter().all(|x| x.denom().is_one()) {
        Ok(Some(u.into_iter().map(|x| x.numer().clone()).collect()))
    } else {
        Ok(None)
    }
}

/// Determinant-one criterion: every group element's weights sum to an
/// integer.
pub fn su_by_weight_sums(group: &QuotientGroup) -> bool {
    group.element_weights().into_iter().all(|w| {
        let sum: Rat = w.into_iter().sum();
        sum.denom().is_one()
    })
}

/// Whether the quotient group sits in the special unitary group, together
/// with the integral functional certifying it. The functional criterion is
/// cross-checked against exhaustive weight-sum checking when the group is
/// small enough to enumerate.
pub fn is_su_singularity(cone: &Cone) -> Result<(bool, Option<Vec<Int>>)> {
    let functional = gorenstein_functional(cone)?;
    let by_functional = functional.is_some();
    let group = quotient_group(cone)?;
    if group.order <= Int::from(ENUMERATION_LIMIT) {
        let by_weights = su_by_weight_sums(&group);
        if by_weights != by_functional {
            return Err(Error::CriteriaMismatch {
                label: cone.label.clone(),
                what: format!(
                    "integral-functional criterion says su={by_functional}, weight-sum criterion says su={by_weights}"
                ),
            });
        }
    }
    Ok((by_functional, functional))
}

/// One report per maximal cone, in input order.
pub fn classify_fan(fan: &Fan) -> Result<Vec<SingularityReport>> {
    (0..fan.max_cones.len())
        .map(|i| {
            let cone = fan.cone(i);
            let order = cone_order(&cone)?;
            let is_smooth = order.is_one();
            let is_isolated = is_isolated(&cone)?;
            let (is_su, functional) = is_su_singularity(&cone)?;
            Ok(SingularityReport {
                label: cone.label.clone(),
                order: order.to_string(),
                is_smooth,
                is_isolated,
                is_su,
                gorenstein_functional: functional
                    .map(|u| u.iter().map(|x| x.to_string()).collect()),
            })
        })
        .collect()
}

/// Formats a weight vector for display.
pub fn weights_to_strings(w: &[Rat]) -> Vec<String> {
    w.iter().map(rat_to_string).collect()
}
