//! Vertex truncation: the polytope side of blowing up a torus-fixed point.

use super::{LatticePoint, Polytope, Validity};
use crate::error::GeometryError;
use crate::linalg::{determinant, dot, nullspace, Matrix};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct ChopSpec<S> {
    pub vertex_index: usize,
    pub weight: S,
}

/// Placement of the new vertices on the edges through the chopped corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChopConvention {
    /// `q_k = p + w·e_k` with `e_k` the primitive edge direction into the polytope.
    #[default]
    Inward,
    /// `q_k = p + w·(p − p_k)` with `p_k` the neighbouring vertex (points outward).
    Literal,
}

/// Chops vertex `spec.vertex_index` with the inward convention.
pub fn corner_chop<S: Field>(
    p: &Polytope<S>,
    spec: &ChopSpec<S>,
) -> Result<Polytope<S>, GeometryError> {
    corner_chop_with(p, spec, ChopConvention::Inward)
}

pub fn corner_chop_with<S: Field>(
    p: &Polytope<S>,
    spec: &ChopSpec<S>,
    convention: ChopConvention,
) -> Result<Polytope<S>, GeometryError> {
    let count = p.vertices().len();
    let vi = spec.vertex_index;
    if vi >= count {
        return Err(GeometryError::VertexOutOfRange { index: vi, count });
    }
    if !spec.weight.is_positive_strict() {
        return Err(GeometryError::NonpositiveWeight(format!("{:?}", spec.weight)));
    }
    let v = &p.vertices()[vi];
    let edges = corner_edges(p, vi);
    let w = spec.weight.clone();
    let new_points: Vec<LatticePoint<S>> = match convention {
        ChopConvention::Inward => {
            for (_, steps, neighbour) in &edges {
                if !(w.clone() < steps.clone()) || (w.clone() - steps.clone()).is_negligible() {
                    return Err(exceeds(vi, &w, *neighbour));
                }
            }
            edges
                .iter()
                .map(|(dir, _, _)| add_scaled(v, dir, &w))
                .collect()
        }
        ChopConvention::Literal => edges
            .iter()
            .map(|(_, _, nb)| {
                let away: Vec<S> = v
                    .iter()
                    .zip(&p.vertices()[*nb])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect();
                add_scaled(v, &away, &w)
            })
            .collect(),
    };
    if convention == ChopConvention::Inward {
        check_separation(p, vi, &new_points, &w)?;
    }
    let mut pts: Vec<LatticePoint<S>> = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vi)
        .map(|(_, x)| x.clone())
        .collect();
    pts.extend(new_points);
    match convention {
        ChopConvention::Inward => Polytope::from_vertices(p.dim(), pts, Validity::RationalSimple),
        ChopConvention::Literal => Polytope::hull(p.dim(), pts, Validity::RationalSimple),
    }
}

/// For each facet through the corner: the primitive inward direction of the
/// opposite edge, the number of primitive steps to the neighbour, and the
/// neighbour's index.
fn corner_edges<S: Field>(p: &Polytope<S>, vi: usize) -> Vec<(Vec<S>, S, usize)> {
    let v = &p.vertices()[vi];
    let tight = p.tight_facets(vi);
    let m = p.dim();
    tight
        .iter()
        .map(|&k| {
            let others: Matrix<S> = tight
                .iter()
                .filter(|&&i| i != k)
                .map(|&i| p.facets()[i].normal.clone())
                .collect();
            let mut dir = if others.is_empty() {
                // m = 1: the edge is the whole segment
                vec![S::one()]
            } else {
                nullspace(&others, m).remove(0)
            };
            if !dot(&p.facets()[k].normal, &dir).is_negative_strict() {
                dir = dir.into_iter().map(|x| -x).collect();
            }
            let dir = S::primitive_direction(&dir);
            let (neighbour, steps) = p
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != vi)
                .filter_map(|(i, u)| {
                    let d: Vec<S> = u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect();
                    multiple_of(&d, &dir).map(|s| (i, s))
                })
                .filter(|(_, s)| s.is_positive_strict())
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .expect("every edge of a simple polytope ends at a vertex");
            (dir, steps, neighbour)
        })
        .collect()
}

/// `s` with `d = s·dir`, if `d` is parallel to `dir`.
fn multiple_of<S: Field>(d: &[S], dir: &[S]) -> Option<S> {
    let j = dir.iter().position(|x| !x.is_negligible())?;
    let s = d[j].clone() / dir[j].clone();
    d.iter()
        .zip(dir)
        .all(|(a, b)| (a.clone() - s.clone() * b.clone()).is_negligible())
        .then_some(s)
}

fn add_scaled<S: Field>(v: &[S], dir: &[S], w: &S) -> LatticePoint<S> {
    v.iter()
        .zip(dir)
        .map(|(a, d)| a.clone() + w.clone() * d.clone())
        .collect()
}

fn exceeds<S: Field>(vertex: usize, w: &S, blocking: usize) -> GeometryError {
    GeometryError::WeightExceedsPolytope {
        vertex,
        weight: format!("{w:?}"),
        blocking,
    }
}

/// Every vertex other than the chopped one must lie strictly on the kept side
/// of the hyperplane through the new points.
fn check_separation<S: Field>(
    p: &Polytope<S>,
    vi: usize,
    new_points: &[LatticePoint<S>],
    w: &S,
) -> Result<(), GeometryError> {
    let base = &new_points[0];
    let diffs: Matrix<S> = new_points[1..]
        .iter()
        .map(|q| q.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    let normal = if diffs.is_empty() {
        vec![S::one()]
    } else {
        nullspace(&diffs, p.dim()).remove(0)
    };
    let offset = dot(&normal, base);
    let cut_side = dot(&normal, &p.vertices()[vi]) - offset.clone();
    for (i, u) in p.vertices().iter().enumerate() {
        if i == vi {
            continue;
        }
        let side = dot(&normal, u) - offset.clone();
        let same = side.is_negligible()
            || (side.is_positive_strict() == cut_side.is_positive_strict());
        if same {
            return Err(exceeds(vi, w, i));
        }
    }
    Ok(())
}

/// Volume `w^m/m!·|det(e_1, …, e_m)|` of the corner simplex removed by an
/// inward chop.
pub fn removed_corner_volume<S: Field>(
    p: &Polytope<S>,
    spec: &ChopSpec<S>,
) -> Result<S, GeometryError> {
    let count = p.vertices().len();
    if spec.vertex_index >= count {
        return Err(GeometryError::VertexOutOfRange {
            index: spec.vertex_index,
            count,
        });
    }
    let basis: Matrix<S> = corner_edges(p, spec.vertex_index)
        .into_iter()
        .map(|(d, _, _)| d)
        .collect();
    let m = p.dim();
    let mut scale = S::one();
    for k in 1..=m {
        scale = scale * spec.weight.clone() / S::from_i64(k as i64);
    }
    Ok(scale * determinant(&basis).abs_val())
}

/// Applies chops one after another, locating each corner by its coordinates
/// in the original polytope (indices shift after every chop).
pub fn chop_sequence<S: Field>(
    p: &Polytope<S>,
    chops: &[(LatticePoint<S>, S)],
) -> Result<Polytope<S>, GeometryError> {
    let mut current = p.clone();
    for (point, w) in chops {
        let vertex_index = current
            .vertex_index(point)
            .ok_or(GeometryError::NotAVertex(0))?;
        current = corner_chop(
            &current,
            &ChopSpec {
                vertex_index,
                weight: w.clone(),
            },
        )?;
    }
    Ok(current)
}
