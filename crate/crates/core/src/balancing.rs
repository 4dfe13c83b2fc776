//! Balancing conditions for the positions of the singular points.
//!
//! The solvability question is linear: given the values of the kernel
//! potentials at the candidate points (and of their Laplacians, which in
//! the Einstein case are proportional to the potentials themselves), find
//! strictly positive weights `b` with `c = s b` making all balancing rows
//! vanish while the weight matrix keeps full rank. Scalar curvature may be
//! carried symbolically as a positive unit `s`, since rank and positivity
//! never depend on its value.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{sphere_volume, PiRat};
use crate::matrix::{rank, Matrix};
use crate::rat::{rat_frac, rat_to_string};
use crate::simplex::positive_nullspace_witness;
use crate::{Int, Rat, RatMatrix, RatVector};

/// Scalar curvature of the base: a concrete rational or a symbolic
/// positive unit.
#[derive(Clone, Debug, PartialEq)]
pub enum Curvature {
    Symbolic,
    Value(Rat),
}

impl Curvature {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Curvature::Symbolic => None,
            Curvature::Value(v) => Some(v),
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curvature::Symbolic => write!(f, "s"),
            Curvature::Value(v) => write!(f, "{}", rat_to_string(v)),
        }
    }
}

/// Degree-one polynomial `con + lin * s` in the symbolic curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct SLin {
    pub con: Rat,
    pub lin: Rat,
}

impl SLin {
    pub fn zero() -> Self {
        SLin { con: Rat::zero(), lin: Rat::zero() }
    }

    pub fn constant(c: Rat) -> Self {
        SLin { con: c, lin: Rat::zero() }
    }

    pub fn s_times(r: Rat) -> Self {
        SLin { con: Rat::zero(), lin: r }
    }

    pub fn add(&self, other: &SLin) -> SLin {
        SLin {
            con: &self.con + &other.con,
            lin: &self.lin + &other.lin,
        }
    }

    pub fn scale(&self, r: &Rat) -> SLin {
        SLin { con: &self.con * r, lin: &self.lin * r }
    }

    pub fn is_zero(&self) -> bool {
        self.con.is_zero() && self.lin.is_zero()
    }

    /// Substitutes a concrete curvature value.
    pub fn eval(&self, s: &Rat) -> Rat {
        &self.con + &self.lin * s
    }
}

impl fmt::Display for SLin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lin.is_zero() {
            return write!(f, "{}", rat_to_string(&self.con));
        }
        let lin = if self.lin.is_one() {
            "s".to_string()
        } else {
            format!("{} s", rat_to_string(&self.lin))
        };
        if self.con.is_zero() {
            write!(f, "{lin}")
        } else {
            write!(f, "{} + {lin}", rat_to_string(&self.con))
        }
    }
}

/// A coefficient vector that is either plain rational or a rational vector
/// times the symbolic curvature.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffVec {
    Plain(RatVector),
    STimes(RatVector),
}

impl CoeffVec {
    pub fn len(&self) -> usize {
        match self {
            CoeffVec::Plain(v) | CoeffVec::STimes(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entry(&self, j: usize) -> SLin {
        match self {
            CoeffVec::Plain(v) => SLin::constant(v[j].clone()),
            CoeffVec::STimes(v) => SLin::s_times(v[j].clone()),
        }
    }

    pub fn sum(&self) -> SLin {
        (0..self.len()).fold(SLin::zero(), |acc, j| acc.add(&self.entry(j)))
    }

    pub fn to_strings(&self) -> Vec<String> {
        (0..self.len()).map(|j| self.entry(j).to_string()).collect()
    }
}

/// How the Laplacians of the potentials at the points are known.
#[derive(Clone, Debug)]
pub enum LaplacianData {
    /// Einstein base: the Laplacian of each potential is `-(s/m)` times the
    /// potential, exactly.
    Einstein,
    /// Explicitly supplied values, same shape as the potential matrix.
    Explicit(RatMatrix),
}

#[derive(Clone, Debug)]
pub struct BalancingProblem {
    pub m: usize,
    pub s: Curvature,
    /// `d x N` values of the kernel potentials at the candidate points.
    pub phi: RatMatrix,
    pub lap_phi: LaplacianData,
    /// Optional `d x K` values at auxiliary points.
    pub phi_q: Option<RatMatrix>,
    pub volume: Option<Rat>,
}

impl BalancingProblem {
    pub fn toric_einstein(m: usize, phi: RatMatrix, s: Curvature) -> Result<Self> {
        if m < 2 {
            return Err(Error::Unsupported("complex dimension must be at least 2".into()));
        }
        if let Curvature::Value(v) = &s {
            if !v.is_positive() {
                return Err(Error::Unsupported("scalar curvature must be positive".into()));
            }
        }
        Ok(BalancingProblem {
            m,
            s,
            phi,
            lap_phi: LaplacianData::Einstein,
            phi_q: None,
            volume: None,
        })
    }

    pub fn explicit(m: usize, phi: RatMatrix, lap_phi: RatMatrix, s: Rat) -> Result<Self> {
        if phi.rows() != lap_phi.rows() || phi.cols() != lap_phi.cols() {
            return Err(Error::DimensionMismatch(
                "potential and Laplacian matrices must have identical shape".into(),
            ));
        }
        Ok(BalancingProblem {
            m,
            s: Curvature::Value(s),
            phi,
            lap_phi: LaplacianData::Explicit(lap_phi),
            phi_q: None,
            volume: None,
        })
    }

    pub fn with_volume(mut self, volume: Rat) -> Self {
        self.volume = Some(volume);
        self
    }

    pub fn with_aux_points(mut self, phi_q: RatMatrix) -> Self {
        self.phi_q = Some(phi_q);
        self
    }

    pub fn points(&self) -> usize {
        self.phi.cols()
    }

    pub fn kernel_dim(&self) -> usize {
        self.phi.rows()
    }

    /// The Laplacian value at row `i`, point `j`, as a curvature polynomial.
    fn lap_entry(&self, i: usize, j: usize) -> SLin {
        match &self.lap_phi {
            LaplacianData::Einstein => {
                let coeff = -self.phi.at(i, j) / Rat::from_integer(Int::from(self.m as i64));
                match &self.s {
                    Curvature::Symbolic => SLin::s_times(coeff),
                    Curvature::Value(v) => SLin::constant(coeff * v),
                }
            }
            LaplacianData::Explicit(l) => SLin::constant(l.at(i, j).clone()),
        }
    }

    fn phi_entry(&self, i: usize, j: usize) -> Rat {
        self.phi.at(i, j).clone()
    }
}

/// The weight matrix, reported with its explicit curvature factor: the
/// actual matrix is `s^s_power` times `mat`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMatrix {
    pub s_power: u8,
    pub mat: RatMatrix,
}

impl ThetaMatrix {
    pub fn rank(&self) -> usize {
        rank(&self.mat)
    }
}

/// Builds the weight matrix with entries `b_j * lap_phi[i][j] + c_j *
/// phi[i][j]`, factoring the curvature out when it is symbolic.
pub fn build_theta(p: &BalancingProblem, b: &[Rat], c: &CoeffVec) -> Result<ThetaMatrix> {
    let (d, n) = (p.kernel_dim(), p.points());
    if b.len() != n || c.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "weights must have length {n}, found {} and {}",
            b.len(),
            c.len()
        )));
    }
    let mut con = Matrix::zeros(d, n);
    let mut lin = Matrix::zeros(d, n);
    for i in 0..d {
        for (j, bj) in b.iter().enumerate() {
            let entry = p
                .lap_entry(i, j)
                .scale(bj)
                .add(&c.entry(j).scale(&p.phi_entry(i, j)));
            con.set(i, j, entry.con);
            lin.set(i, j, entry.lin);
        }
    }
    match &p.s {
        Curvature::Value(v) => {
            let mat = Matrix::from_rows(
                &(0..d)
                    .map(|i| {
                        (0..n)
                            .map(|j| con.at(i, j) + lin.at(i, j) * v)
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            );
            Ok(ThetaMatrix { s_power: 0, mat })
        }
        Curvature::Symbolic => {
            if lin.is_zero() {
                Ok(ThetaMatrix { s_power: 0, mat: con })
            } else if con.is_zero() {
                Ok(ThetaMatrix { s_power: 1, mat: lin })
            } else {
                Err(Error::Unsupported(
                    "weight matrix mixes curvature-free and curvature-linear entries; supply a concrete scalar curvature".into(),
                ))
            }
        }
    }
}

/// The auxiliary-point matrix with entries `a_l * phi_q[i][l]`.
pub fn build_xi(p: &BalancingProblem, a: &[Rat]) -> Result<RatMatrix> {
    let phi_q = p
        .phi_q
        .as_ref()
        .ok_or_else(|| Error::MissingData("auxiliary point values".into()))?;
    if a.len() != phi_q.cols() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} auxiliary weights, found {}",
            phi_q.cols(),
            a.len()
        )));
    }
    let mut out = Matrix::zeros(phi_q.rows(), phi_q.cols());
    for i in 0..phi_q.rows() {
        for (l, al) in a.iter().enumerate() {
            out.set(i, l, phi_q.at(i, l) * al);
        }
    }
    Ok(out)
}

/// The scalar multiplying the potential values in the Einstein case with
/// `c = s b`: `(m - 1) s / m`.
pub fn ke_theta_factor(m: usize, s: &Curvature) -> Result<SLin> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let ratio = rat_frac(m as i64 - 1, m as i64);
    Ok(match s {
        Curvature::Symbolic => SLin::s_times(ratio),
        Curvature::Value(v) => SLin::constant(ratio * v),
    })
}

/// Rank of the horizontal concatenation `(Xi | Theta)`; nondegenerate when
/// it equals the number of kernel directions.
pub fn check_nondegeneracy(theta: &ThetaMatrix, xi: Option<&RatMatrix>) -> Result<(bool, usize)> {
    let combined = match xi {
        // a positive curvature power rescales Theta's entries, not its rank;
        // mixing it with a curvature-free block is only sound when one side
        // is zero or the caller already substituted a concrete value
        Some(x) => x.hcat(&theta.mat)?,
        None => theta.mat.clone(),
    };
    let r = rank(&combined);
    Ok((r == combined.rows(), r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BalancingWitness {
    /// Strictly positive weights, minimum component one.
    pub b: RatVector,
    /// The matching second weights, `c = s b`.
    pub c: CoeffVec,
    pub rank: usize,
    pub nu: Option<SLin>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessJson {
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
}

impl BalancingWitness {
    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            b: self.b.iter().map(rat_to_string).collect(),
            c: self.c.to_strings(),
            rank: self.rank,
            nu: self.nu.as_ref().map(|n| n.to_string()),
        }
    }
}

/// Solves the balancing conditions with `c = s b` substituted: in the
/// Einstein case the rows reduce to `sum_j b_j phi_i(p_j) = 0`; in the
/// explicit case the reduced matrix is `lap_phi + s phi`. Returns a
/// strictly positive witness with full-rank certificate, or `None` when no
/// positive solution exists or the rank is deficient.
pub fn solve_balancing(p: &BalancingProblem) -> Result<Option<BalancingWitness>> {
    let reduced: RatMatrix = match (&p.lap_phi, &p.s) {
        (LaplacianData::Einstein, _) => p.phi.clone(),
        (LaplacianData::Explicit(l), Curvature::Value(v)) => {
            let mut m = Matrix::zeros(p.kernel_dim(), p.points());
            for i in 0..p.kernel_dim() {
                for j in 0..p.points() {
                    m.set(i, j, l.at(i, j) + p.phi.at(i, j) * v);
                }
            }
            m
        }
        (LaplacianData::Explicit(_), Curvature::Symbolic) => {
            return Err(Error::MissingData(
                "explicit Laplacian data requires a concrete scalar curvature".into(),
            ))
        }
    };
    let Some(b) = positive_nullspace_witness(&reduced) else {
        return Ok(None);
    };
    let c = match &p.s {
        Curvature::Symbolic => CoeffVec::STimes(b.clone()),
        Curvature::Value(v) => CoeffVec::Plain(b.iter().map(|x| x * v).collect()),
    };
    let theta = build_theta(p, &b, &c)?;
    let (full, rank) = check_nondegeneracy(&theta, None)?;
    if !full {
        return Ok(None);
    }
    let nu = match &p.volume {
        Some(vol) => Some(nu_constant(&[], &c, vol)?),
        None => None,
    };
    Ok(Some(BalancingWitness { b, c, rank, nu }))
}

/// Verifies the general linear balancing rows
/// `f_i + sum_l a_l phi_i(q_l) + sum_j b_j lap_phi_i(p_j) + sum_j c_j
/// phi_i(p_j) = 0` for `i = 1..d` and returns the constant defined by
/// `f_0 Vol + sum a + sum c = nu Vol`.
pub fn general_balancing_check(
    p: &BalancingProblem,
    f: &[Rat],
    a: &[Rat],
    b: &[Rat],
    c: &CoeffVec,
) -> Result<(bool, SLin)> {
    let d = p.kernel_dim();
    let n = p.points();
    if f.len() != d + 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected {} kernel coefficients, found {}",
            d + 1,
            f.len()
        )));
    }
    if b.len() != n || c.len() != n {
        return Err(Error::DimensionMismatch("weight length mismatch".into()));
    }
    let vol = p
        .volume
        .as_ref()
        .ok_or_else(|| Error::MissingData("volume".into()))?;
    if !a.is_empty() && p.phi_q.is_none() {
        return Err(Error::MissingData("auxiliary point values".into()));
    }
    let mut balanced = true;
    for i in 0..d {
        let mut row = SLin::constant(f[i + 1].clone());
        if let Some(phi_q) = &p.phi_q {
            for (l, al) in a.iter().enumerate() {
                row = row.add(&SLin::constant(al * phi_q.at(i, l)));
            }
        }
        for (j, bj) in b.iter().enumerate() {
            row = row.add(&p.lap_entry(i, j).scale(bj));
            row = row.add(&c.entry(j).scale(&p.phi_entry(i, j)));
        }
        if !row.is_zero() {
            balanced = false;
        }
    }
    let a_sum: Rat = a.iter().cloned().sum();
    let nu = SLin::constant(f[0].clone())
        .add(&SLin::constant(a_sum).add(&c.sum()).scale(&(Rat::one() / vol.clone())));
    Ok((balanced, nu))
}

/// `nu = (sum a + sum c) / vol`.
pub fn nu_constant(a: &[Rat], c: &CoeffVec, vol: &Rat) -> Result<SLin> {
    if !vol.is_positive() {
        return Err(Error::Unsupported("volume must be positive".into()));
    }
    let a_sum: Rat = a.iter().cloned().sum();
    Ok(SLin::constant(a_sum)
        .add(&c.sum())
        .scale(&(Rat::one() / vol.clone())))
}

/// Coefficients of the two Green-type profiles in the deficiency-space
/// element attached to one point, given the weight pair `(beta, gamma)`.
/// Both are rational multiples of `pi^(-m)`.
pub fn deficiency_coefficients(
    m: usize,
    s: &Rat,
    order: &Int,
    beta: &Rat,
    gamma: &Rat,
) -> Result<(PiRat, PiRat)> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let order_rat = Rat::from_integer(order.clone());
    let sphere = sphere_volume(m);
    if m == 2 {
        let coef_g = PiRat::from_rat(beta * &order_rat).mul(&sphere.recip());
        let inner = gamma / crate::rat::rat_i64(4) - s * beta / crate::rat::rat_i64(6);
        let coef_gg = PiRat::from_rat(inner * order_rat).mul(&sphere.recip());
        return Ok((coef_g, coef_gg));
    }
    let mi = m as i64;
    let front = order_rat / rat_frac(2 * (mi - 1), 1);
    let coef_g = PiRat::from_rat(beta * &front).mul(&sphere.recip());
    let inner = gamma / rat_frac(4 * (mi - 2), 1)
        - s * beta * rat_frac(mi * mi - mi + 2, (mi - 2) * mi * (mi + 1));
    let coef_gg = PiRat::from_rat(-inner * front).mul(&sphere.recip());
    Ok((coef_g, coef_gg))
}

/// The distributional constants of the two Green-type profiles, as they
/// appear in the identities the profiles satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenConstants {
    /// Coefficient of the Laplacian-of-delta term.
    pub delta_laplacian: PiRat,
    /// Coefficient attached to the plain delta term.
    pub delta_point: PiRat,
    /// Coefficient of the delta term in the bi-Laplacian profile.
    pub bilaplacian: PiRat,
}

pub fn green_constants(m: usize, s: &Rat, order: &Int) -> Result<GreenConstants> {
    if m < 2 {
        return Err(Error::Unsupported("complex dimension must be at least 2".into()));
    }
    let order_rat = Rat::from_integer(order.clone());
    let sphere = sphere_volume(m);
    if m == 2 {
        let unit = sphere.mul_rat(&(Rat::one() / order_rat));
        return Ok(GreenConstants {
            delta_laplacian: unit.clone(),
            delta_point: unit.mul_rat(&(s * rat_frac(2, 3))),
            bilaplacian: unit.mul_rat(&crate::rat::rat_i64(4)),
        });
    }
    let mi = m as i64;
    let base = sphere.mul_rat(&(rat_frac(2 * (mi - 1), 1) / order_rat));
    Ok(GreenConstants {
        delta_laplacian: base.clone(),
        delta_point: PiRat::from_rat(s * rat_frac(mi * mi - mi + 2, mi * (mi + 1))),
        bilaplacian: base.mul_rat(&rat_frac(4 * (mi - 2), 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_i64};
    use crate::simplex::rat_matrix_from_i64;

    fn x2_problem() -> BalancingProblem {
        BalancingProblem::toric_einstein(
            2,
            rat_matrix_from_i64(&[vec![-1, -1, 1, 1], vec![-1, 1, -1, 1]]),
            Curvature::Symbolic,
        )
        .unwrap()
    }

    fn x3_problem() -> BalancingProblem {
        BalancingProblem::toric_einstein(
            3,
            rat_matrix_from_i64(&[vec![1, -1, 0], vec![0, -1, 1]]),
            Curvature::Symbolic,
        )
        .unwrap()
    }

    #[test]
    fn theta_zero_weights() {
        let p = x2_problem();
        let theta = build_theta(
            &p,
            &vec![Rat::zero(); 4],
            &CoeffVec::Plain(vec![Rat::zero(); 4]),
        )
        .unwrap();
        assert!(theta.mat.is_zero());
    }

    #[test]
    fn theta_matches_golden_matrices() {
        let p = x2_problem();
        let ones = vec![Rat::one(); 4];
        let theta = build_theta(&p, &ones, &CoeffVec::STimes(ones.clone())).unwrap();
        assert_eq!(theta.s_power, 1);
        assert_eq!(theta.mat, p.phi.scale(&rat_frac(1, 2)));
        let factor = ke_theta_factor(2, &Curvature::Symbolic).unwrap();
        assert_eq!(factor, SLin::s_times(rat_frac(1, 2)));

        let p3 = x3_problem();
        let ones3 = vec![Rat::one(); 3];
        let theta3 = build_theta(&p3, &ones3, &CoeffVec::STimes(ones3.clone())).unwrap();
        assert_eq!(theta3.s_power, 1);
        assert_eq!(theta3.mat, p3.phi.scale(&rat_frac(2, 3)));
        assert_eq!(
            ke_theta_factor(3, &Curvature::Symbolic).unwrap(),
            SLin::s_times(rat_frac(2, 3))
        );
        assert_eq!(
            ke_theta_factor(4, &Curvature::Value(rat_i64(1))).unwrap(),
            SLin::constant(rat_frac(3, 4))
        );
    }

    #[test]
    fn nondegeneracy_of_golden_matrices() {
        let p = x2_problem();
        let ones = vec![Rat::one(); 4];
        let theta = build_theta(&p, &ones, &CoeffVec::STimes(ones.clone())).unwrap();
        assert_eq!(check_nondegeneracy(&theta, None).unwrap(), (true, 2));
        let zero = ThetaMatrix { s_power: 0, mat: Matrix::zeros(2, 3) };
        assert_eq!(check_nondegeneracy(&zero, None).unwrap(), (false, 0));
    }

    #[test]
    fn xi_matrix() {
        let p = x2_problem().with_aux_points(rat_matrix_from_i64(&[vec![1], vec![2]]));
        let xi = build_xi(&p, &[rat_i64(3)]).unwrap();
        assert_eq!(xi, rat_matrix_from_i64(&[vec![3], vec![6]]));
        let zero = build_xi(&p, &[Rat::zero()]).unwrap();
        assert!(zero.is_zero());
        let unit = build_xi(&p, &[Rat::one()]).unwrap();
        assert_eq!(&unit, p.phi_q.as_ref().unwrap());
        assert!(build_xi(&x2_problem(), &[]).is_err());
    }

    #[test]
    fn witnesses_for_golden_problems() {
        let w = solve_balancing(&x2_problem()).unwrap().unwrap();
        assert_eq!(w.b, vec![Rat::one(); 4]);
        assert_eq!(w.rank, 2);
        assert_eq!(w.c, CoeffVec::STimes(vec![Rat::one(); 4]));

        let w3 = solve_balancing(&x3_problem()).unwrap().unwrap();
        assert_eq!(w3.b, vec![Rat::one(); 3]);
        assert_eq!(w3.rank, 2);
    }

    #[test]
    fn no_witness_for_single_nonzero_point() {
        let p = BalancingProblem::toric_einstein(
            2,
            rat_matrix_from_i64(&[vec![1], vec![2]]),
            Curvature::Symbolic,
        )
        .unwrap();
        assert!(solve_balancing(&p).unwrap().is_none());
    }

    #[test]
    fn general_check_and_nu() {
        let p = x3_problem().with_volume(rat_i64(1));
        let ones = vec![Rat::one(); 3];
        let c = CoeffVec::STimes(ones.clone());
        let f = vec![Rat::zero(); 3];
        let (ok, nu) = general_balancing_check(&p, &f, &[], &ones, &c).unwrap();
        assert!(ok);
        assert_eq!(nu, SLin::s_times(rat_i64(3)));

        let mut f_bad = f.clone();
        f_bad[1] = Rat::one();
        let (ok_bad, _) = general_balancing_check(&p, &f_bad, &[], &ones, &c).unwrap();
        assert!(!ok_bad);

        let (ok_zero, nu_zero) = general_balancing_check(
            &p,
            &vec![Rat::zero(); 3],
            &[],
            &vec![Rat::zero(); 3],
            &CoeffVec::Plain(vec![Rat::zero(); 3]),
        )
        .unwrap();
        assert!(ok_zero);
        assert!(nu_zero.is_zero());
    }

    #[test]
    fn nu_constant_cases() {
        assert!(nu_constant(&[], &CoeffVec::Plain(vec![]), &rat_i64(1))
            .unwrap()
            .is_zero());
        let c = CoeffVec::STimes(vec![Rat::one(); 3]);
        assert_eq!(
            nu_constant(&[], &c, &rat_i64(1)).unwrap(),
            SLin::s_times(rat_i64(3))
        );
        assert_eq!(
            nu_constant(&[rat_i64(2)], &CoeffVec::Plain(vec![rat_i64(1)]), &rat_i64(3)).unwrap(),
            SLin::constant(rat_i64(1))
        );
        assert!(nu_constant(&[], &CoeffVec::Plain(vec![]), &rat_i64(0)).is_err());
    }

    #[test]
    fn deficiency_coefficient_values() {
        // all-zero weights kill both coefficients
        let (g, gg) = deficiency_coefficients(3, &Rat::zero(), &Int::from(1), &Rat::zero(), &Rat::zero()).unwrap();
        assert!(g.is_zero() && gg.is_zero());
        // beta = 1, gamma = 0, s = 0, order 1 in dimension three
        let (g, gg) = deficiency_coefficients(3, &Rat::zero(), &Int::from(1), &Rat::one(), &Rat::zero()).unwrap();
        assert_eq!(g, PiRat::new(rat_frac(1, 4), 3).recip().mul_rat(&rat_frac(1, 16)));
        assert_eq!(g, PiRat::new(rat_frac(1, 4), -3));
        assert!(gg.is_zero());
        // dimension two with gamma = 4, order 2
        let (_, gg2) = deficiency_coefficients(2, &Rat::zero(), &Int::from(2), &Rat::zero(), &rat_i64(4)).unwrap();
        assert_eq!(gg2, PiRat::new(rat_i64(2), 0).mul(&sphere_volume(2).recip()));
        assert_eq!(gg2, PiRat::new(rat_i64(1), -2));
    }

    #[test]
    fn deficiency_linear_in_weights() {
        let s = rat_frac(7, 5);
        let order = Int::from(3);
        let (b1, g1) = (rat_frac(2, 3), rat_frac(-1, 4));
        let (b2, g2) = (rat_frac(5, 7), rat_i64(2));
        let f = |b: &Rat, g: &Rat| deficiency_coefficients(3, &s, &order, b, g).unwrap();
        let (ga, gga) = f(&b1, &g1);
        let (gb, ggb) = f(&b2, &g2);
        let (gsum, ggsum) = f(&(&b1 + &b2), &(&g1 + &g2));
        assert_eq!(ga.checked_add(&gb).unwrap(), gsum);
        assert_eq!(gga.checked_add(&ggb).unwrap(), ggsum);
    }

    #[test]
    fn green_constant_values() {
        let g = green_constants(3, &Rat::zero(), &Int::from(1)).unwrap();
        assert!(g.delta_point.is_zero());
        let g = green_constants(3, &Rat::one(), &Int::from(1)).unwrap();
        assert_eq!(g.delta_point, PiRat::from_rat(rat_frac(2, 3)));
        // dimension two: the delta coefficient at s = 3, order 2 equals the
        // sphere volume itself
        let g2 = green_constants(2, &rat_i64(3), &Int::from(2)).unwrap();
        assert_eq!(g2.delta_point, sphere_volume(2));
        assert_eq!(g2.bilaplacian, sphere_volume(2).mul_rat(&rat_i64(2)));
    }
}
