//! The k-anticanonical moment polytope of a simplicial toric fan.
//!
//! The polytope is cut out by one inequality per ray, `<u, v> >= -k`; each
//! full-dimensional cone contributes the vertex where its generators'
//! inequalities are simultaneously tight. The exact rational barycenter is
//! computed in dimensions two and three by coning the boundary over the
//! origin: every facet is the set of vertices of the cones containing its
//! ray, ordered into a cycle by cone adjacency, and the resulting signed
//! simplices are summed with exact volumes and centroids.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::matrix::{solve_unique, Matrix};
use crate::rat::{denominator_lcm, rat_to_string};
use crate::{Int, Rat, RatMatrix, RatVector};

#[derive(Clone, Debug)]
pub struct Polytope {
    pub fan: Fan,
    pub multiple: u32,
    /// Distinct vertex points.
    pub vertices: Vec<RatVector>,
    /// Index into `vertices` for each maximal cone, in fan order.
    pub cone_vertex: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialTable {
    pub points: Vec<String>,
    /// Row i, column j holds the i-th coordinate of point j relative to the
    /// barycenter.
    pub values: Vec<Vec<String>>,
    pub normalization: String,
    #[serde(skip)]
    pub matrix: Option<RatMatrix>,
}

/// Solves `<u, v_i> = -k` over the generators of cone `index`.
fn cone_vertex(fan: &Fan, index: usize, k: &Rat) -> Result<RatVector> {
    let cone = fan.cone(index);
    let at = cone.generators.transpose().map(|x| Rat::from_integer(x.clone()));
    let rhs = vec![-k.clone(); fan.dim];
    solve_unique(&at, &rhs)?.ok_or(Error::DegenerateCone { label: cone.label })
}

/// Smallest positive integer multiple making every vertex integral,
/// searched in `1..=60`.
pub fn default_multiple(fan: &Fan) -> Result<u32> {
    let one = Rat::one();
    let mut lcm = Int::one();
    for i in 0..fan.max_cones.len() {
        let v = cone_vertex(fan, i, &one)?;
        lcm = num_integer::Integer::lcm(&lcm, &denominator_lcm(v.iter()));
    }
    match num_traits::ToPrimitive::to_u64(&lcm) {
        Some(k) if (1..=60).contains(&k) => Ok(k as u32),
        _ => Err(Error::Unsupported(format!(
            "no polytope multiple in 1..=60 makes all vertices integral (needs {lcm})"
        ))),
    }
}

/// Builds the k-anticanonical polytope, verifying every computed vertex
/// against every ray inequality.
pub fn anticanonical_polytope(fan: &Fan, k: u32) -> Result<Polytope> {
    if k == 0 {
        return Err(Error::Unsupported("polytope multiple must be positive".into()));
    }
    let kq = Rat::from_integer(Int::from(k));
    let mut vertices: Vec<RatVector> = Vec::new();
    let mut cone_vertex_idx = Vec::with_capacity(fan.max_cones.len());
    for i in 0..fan.max_cones.len() {
        let u = cone_vertex(fan, i, &kq)?;
        for (ray_idx, ray) in fan.rays.iter().enumerate() {
            let pairing: Rat = u
                .iter()
                .zip(ray)
                .map(|(ui, vi)| ui * Rat::from_integer(vi.clone()))
                .sum();
            if pairing < -kq.clone() {
                return Err(Error::VertexViolatesInequality {
                    cone: format!("C{}", i + 1),
                    ray: ray_idx,
                });
            }
        }
        let idx = match vertices.iter().position(|w| *w == u) {
            Some(idx) => idx,
            None => {
                vertices.push(u);
                vertices.len() - 1
            }
        };
        cone_vertex_idx.push(idx);
    }
    Ok(Polytope {
        fan: fan.clone(),
        multiple: k,
        vertices,
        cone_vertex: cone_vertex_idx,
    })
}

impl Polytope {
    /// Maximal-cone label to vertex, in fan order.
    pub fn cone_vertex_correspondence(&self) -> Vec<(String, RatVector)> {
        self.cone_vertex
            .iter()
            .enumerate()
            .map(|(i, &v)| (format!("C{}", i + 1), self.vertices[v].clone()))
            .collect()
    }

    pub fn vertex_of(&self, label: &str) -> Result<RatVector> {
        let idx = self
            .fan
            .cone_labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::MissingData(format!("unknown cone label {label}")))?;
        Ok(self.vertices[self.cone_vertex[idx]].clone())
    }

    /// Oriented boundary faces, one tuple of vertex points per facet
    /// simplex, ordered so that together with the origin as apex the signed
    /// volumes sum to the enclosed volume.
    fn oriented_boundary(&self, shift: &[Rat]) -> Result<Vec<Vec<RatVector>>> {
        let m = self.fan.dim;
        if !(2..=3).contains(&m) {
            return Err(Error::Unsupported(format!(
                "barycenter implemented for dimensions 2 and 3, not {m}"
            )));
        }
        let point = |cone_idx: usize| -> RatVector {
            self.vertices[self.cone_vertex[cone_idx]]
                .iter()
                .zip(shift)
                .map(|(a, b)| a + b)
                .collect()
        };
        let mut faces = Vec::new();
        for (ray_idx, ray) in self.fan.rays.iter().enumerate() {
            let members: Vec<usize> = (0..self.fan.max_cones.len())
                .filter(|&c| self.fan.max_cones[c].contains(&ray_idx))
                .collect();
            if members.len() < m {
                return Err(Error::Unsupported(format!(
                    "ray {ray_idx} lies in {} maximal cones; the facet cannot be triangulated",
                    members.len()
                )));
            }
            if m == 2 {
                if members.len() != 2 {
                    return Err(Error::Unsupported(format!(
                        "ray {ray_idx} lies in {} maximal cones in dimension two",
                        members.len()
                    )));
                }
                let (a, b) = (point(members[0]), point(members[1]));
                let d = [&b[0] - &a[0], &b[1] - &a[1]];
                let cross = &d[0] * Rat::from_integer(ray[1].clone())
                    - &d[1] * Rat::from_integer(ray[0].clone());
                if cross.is_positive() {
                    faces.push(vec![a, b]);
                } else {
                    faces.push(vec![b, a]);
                }
            } else {
                let cycle = facet_cycle(&self.fan, ray_idx, &members)?;
                let pts: Vec<RatVector> = cycle.iter().map(|&c| point(c)).collect();
                let oriented = orient_polygon(pts, ray);
                for i in 1..oriented.len() - 1 {
                    faces.push(vec![
                        oriented[0].clone(),
                        oriented[i].clone(),
                        oriented[i + 1].clone(),
                    ]);
                }
            }
        }
        Ok(faces)
    }

    /// Exact volume of the polytope.
    pub fn volume(&self) -> Result<Rat> {
        let m = self.fan.dim;
        let zero_shift = vec![Rat::zero(); m];
        let (vol, _) = signed_volume_centroid(&self.oriented_boundary(&zero_shift)?, m)?;
        Ok(vol)
    }

    /// Exact rational centroid.
    pub fn barycenter(&self) -> Result<RatVector> {
        self.barycenter_shifted(&vec![Rat::zero(); self.fan.dim])
    }

    /// Centroid of the polytope translated by `shift` (recomputed from the
    /// shifted data, not by adding `shift` to the centroid).
    pub fn barycenter_shifted(&self, shift: &[Rat]) -> Result<RatVector> {
        let m = self.fan.dim;
        let (vol, weighted) = signed_volume_centroid(&self.oriented_boundary(shift)?, m)?;
        if !vol.is_positive() {
            return Err(Error::Unsupported(
                "polytope volume is not positive; the fan does not bound a solid".into(),
            ));
        }
        Ok(weighted.into_iter().map(|x| x / vol.clone()).collect())
    }

    /// Moment coordinates of selected cones' points relative to the
    /// barycenter, one column per requested label.
    pub fn potentials_at_points(&self, labels: &[String]) -> Result<PotentialTable> {
        let bary = self.barycenter()?;
        let mut cols: Vec<RatVector> = Vec::with_capacity(labels.len());
        for label in labels {
            let v = self.vertex_of(label)?;
            cols.push(v.iter().zip(&bary).map(|(a, b)| a - b).collect());
        }
        let matrix = Matrix::from_columns(&cols);
        let values = (0..matrix.rows())
            .map(|r| matrix.row(r).iter().map(rat_to_string).collect())
            .collect();
        Ok(PotentialTable {
            points: labels.to_vec(),
            values,
            normalization: "moment coordinates relative to the barycenter; no unit normalization"
                .into(),
            matrix: Some(matrix),
        })
    }
}

/// Orders the cones of a facet into a cycle: two cones are adjacent when
/// they share all but one ray.
fn facet_cycle(fan: &Fan, ray_idx: usize, members: &[usize]) -> Result<Vec<usize>> {
    let m = fan.dim;
    let shared = |a: usize, b: usize| -> usize {
        fan.max_cones[a]
            .iter()
            .filter(|r| fan.max_cones[b].contains(r))
            .count()
    };
    let neighbors: Vec<Vec<usize>> = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .copied()
                .filter(|&b| b != a && shared(a, b) == m - 1)
                .collect()
        })
        .collect();
    if neighbors.iter().any(|n| n.len() != 2) {
        return Err(Error::Unsupported(format!(
            "facet of ray {ray_idx} is not a simple cycle of adjacent cones"
        )));
    }
    let mut cycle = vec![members[0]];
    let mut prev = members[0];
    let mut current = neighbors[0][0];
    while current != members[0] {
        cycle.push(current);
        let pos = members.iter().position(|&x| x == current).unwrap();
        let next = neighbors[pos]
            .iter()
            .copied()
            .find(|&n| n != prev)
            .ok_or_else(|| {
                Error::Unsupported(format!("facet walk of ray {ray_idx} dead-ends"))
            })?;
        prev = current;
        current = next;
    }
    if cycle.len() != members.len() {
        return Err(Error::Unsupported(format!(
            "facet of ray {ray_idx} splits into several cycles"
        )));
    }
    Ok(cycle)
}

/// Orients a planar polygon cycle so that, with the origin as apex, the
/// signed simplex volumes count the enclosed solid positively. The facet's
/// inward direction is its ray, so the cycle must read clockwise when seen
/// from inside.
fn orient_polygon(pts: Vec<RatVector>, ray: &[Int]) -> Vec<RatVector> {
    let n = pts.len();
    let mut area = vec![Rat::zero(); 3];
    for i in 0..n {
        let a = &pts[i];
        let b = &pts[(i + 1) % n];
        area[0] = area[0].clone() + (&a[1] * &b[2] - &a[2] * &b[1]);
        area[1] = area[1].clone() + (&a[2] * &b[0] - &a[0] * &b[2]);
        area[2] = area[2].clone() + (&a[0] * &b[1] - &a[1] * &b[0]);
    }
    let pairing: Rat = area
        .iter()
        .zip(ray)
        .map(|(ai, ri)| ai * Rat::from_integer(ri.clone()))
        .sum();
    if pairing.is_positive() {
        pts.into_iter().rev().collect()
    } else {
        pts
    }
}

/// Signed volume and volume-weighted centroid of the union of simplices
/// with the origin as apex over the given oriented boundary faces.
fn signed_volume_centroid(faces: &[Vec<RatVector>], m: usize) -> Result<(Rat, RatVector)> {
    let mut total = Rat::zero();
    let mut weighted = vec![Rat::zero(); m];
    for face in faces {
        let mat = Matrix::from_rows(face);
        let vol = rat_det(&mat)?
            / Rat::from_integer(crate::rat::factorial(m));
        let denom = Rat::from_integer(Int::from(m as i64 + 1));
        for (i, w) in weighted.iter_mut().enumerate() {
            let coord_sum: Rat = face.iter().map(|p| p[i].clone()).sum();
            *w = w.clone() + vol.clone() * coord_sum / denom.clone();
        }
        total += vol;
    }
    Ok((total, weighted))
}

fn rat_det(m: &RatMatrix) -> Result<Rat> {
    match m.rows() {
        2 => Ok(m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)),
        3 => Ok(m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1))
            - m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0))
            + m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0))),
        n => Err(Error::Unsupported(format!("determinant of boundary face in dimension {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;
    use crate::rat::rat_i64;

    fn p1xp1() -> Fan {
        parse_fan(
            r#"{"name":"square","dim":2,
                "rays":[[1,0],[0,1],[-1,0],[0,-1]],
                "max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
        )
        .unwrap()
    }

    fn p2() -> Fan {
        parse_fan(
            r#"{"name":"plane","dim":2,
                "rays":[[1,0],[0,1],[-1,-1]],
                "max_cones":[[0,1],[1,2],[2,0]]}"#,
        )
        .unwrap()
    }

    fn p1() -> Fan {
        parse_fan(r#"{"name":"line","dim":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#).unwrap()
    }

    #[test]
    fn interval_polytope() {
        let poly = anticanonical_polytope(&p1(), 1).unwrap();
        let mut vs: Vec<Rat> = poly.vertices.iter().map(|v| v[0].clone()).collect();
        vs.sort();
        assert_eq!(vs, vec![rat_i64(-1), rat_i64(1)]);
        // the cone spanned by +1 pairs to -1
        assert_eq!(poly.vertex_of("C1").unwrap(), vec![rat_i64(-1)]);
    }

    #[test]
    fn square_barycenter_and_volume() {
        let poly = anticanonical_polytope(&p1xp1(), 1).unwrap();
        assert_eq!(poly.barycenter().unwrap(), vec![Rat::zero(), Rat::zero()]);
        assert_eq!(poly.volume().unwrap(), rat_i64(4)); // the square with corners (+-1,+-1)
    }

    #[test]
    fn triangle_centroid() {
        let poly = anticanonical_polytope(&p2(), 1).unwrap();
        let mut vs = poly.vertices.clone();
        vs.sort();
        let mut expect = vec![
            vec![rat_i64(-1), rat_i64(-1)],
            vec![rat_i64(2), rat_i64(-1)],
            vec![rat_i64(-1), rat_i64(2)],
        ];
        expect.sort();
        assert_eq!(vs, expect);
        assert_eq!(poly.barycenter().unwrap(), vec![Rat::zero(), Rat::zero()]);
        assert_eq!(poly.volume().unwrap(), crate::rat::rat_frac(9, 2));
    }

    #[test]
    fn default_multiple_of_smooth_plane_is_one() {
        assert_eq!(default_multiple(&p2()).unwrap(), 1);
    }

    #[test]
    fn incompatible_fan_reports_violated_inequality() {
        // complete simplicial surface fan whose anticanonical system is not
        // ample: the first chart's vertex breaks the third ray's inequality
        let fan = parse_fan(
            r#"{"name":"steep","dim":2,
                "rays":[[1,0],[0,1],[-1,3],[0,-1]],
                "max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
        )
        .unwrap();
        let err = anticanonical_polytope(&fan, 1).unwrap_err();
        assert!(matches!(err, Error::VertexViolatesInequality { ray: 2, .. }), "{err}");
    }

    #[test]
    fn translation_shifts_barycenter() {
        let poly = anticanonical_polytope(&p2(), 1).unwrap();
        let shift = vec![crate::rat::rat_frac(7, 3), rat_i64(-4)];
        let shifted = poly.barycenter_shifted(&shift).unwrap();
        assert_eq!(shifted, shift);
    }

    #[test]
    fn potentials_columns_are_vertices_when_centered() {
        let poly = anticanonical_polytope(&p1xp1(), 1).unwrap();
        let labels: Vec<String> = poly.fan.cone_labels();
        let table = poly.potentials_at_points(&labels).unwrap();
        let mat = table.matrix.unwrap();
        for (j, &vi) in poly.cone_vertex.iter().enumerate() {
            assert_eq!(mat.column(j), poly.vertices[vi]);
        }
        // columns over the full vertex set average to zero
        for i in 0..2 {
            let sum: Rat = (0..mat.cols()).map(|j| mat.at(i, j).clone()).sum();
            assert!(sum.is_zero());
        }
    }
}
