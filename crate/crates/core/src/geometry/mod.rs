//! Convex polytopes with exact facet data: the moment images of toric
//! manifolds and their corner-chopped blow-ups.
//!
//! A [`Polytope`] stores both representations. The vertex list is the input;
//! facets `⟨normal, x⟩ ≤ offset` with primitive integer normals are derived
//! on construction and cross-checked against the vertices.

mod chop;
mod futaki;
mod integrals;
pub mod json;

pub use chop::{
    chop_sequence, corner_chop, corner_chop_with, removed_corner_volume, ChopConvention, ChopSpec,
};
pub use futaki::{
    blown_up_projective_futaki, chopped_projective_simplex, futaki_linear_functional,
    futaki_report, FutakiReport,
};
pub use integrals::{polytope_barycenter, polytope_volume, Triangulation};

use std::cmp::Ordering;

use crate::error::GeometryError;
use crate::linalg::{determinant, dot, nullspace, rank, solve, Matrix};
use crate::scalar::Field;

pub type LatticePoint<S> = Vec<S>;

/// Supporting half-space `⟨normal, x⟩ ≤ offset`; `normal` is primitive integral.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

impl<S: Field> Facet<S> {
    /// `offset − ⟨normal, x⟩`, nonnegative on the polytope.
    pub fn slack(&self, x: &[S]) -> S {
        self.offset.clone() - dot(&self.normal, x)
    }
}

/// How strictly the corners are checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    /// Simple, and facet normals at each vertex form a ℤ-basis.
    Delzant,
    /// Simple with rational data; used for chopped polytopes.
    RationalSimple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope<S> {
    dim: usize,
    vertices: Vec<LatticePoint<S>>,
    facets: Vec<Facet<S>>,
    validity: Validity,
}

impl<S: Field> Polytope<S> {
    /// Builds a polytope whose vertex set is exactly `points`.
    ///
    /// Errors if a point is not extreme, the points are affinely degenerate,
    /// or a corner fails the requested validity check.
    pub fn from_vertices(
        dim: usize,
        points: Vec<LatticePoint<S>>,
        validity: Validity,
    ) -> Result<Self, GeometryError> {
        let hull = Self::hull(dim, points.clone(), validity)?;
        if hull.vertices.len() != points.len() {
            let idx = points
                .iter()
                .position(|p| !hull.vertices.contains(p))
                .unwrap_or(0);
            return Err(GeometryError::NotAVertex(idx));
        }
        Ok(hull)
    }

    /// Convex hull of a point cloud; interior and duplicate points are dropped.
    pub fn hull(
        dim: usize,
        points: Vec<LatticePoint<S>>,
        validity: Validity,
    ) -> Result<Self, GeometryError> {
        for p in &points {
            if p.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        let r = affine_rank(&points);
        if dim == 0 || r < dim {
            return Err(GeometryError::Degenerate { dim, rank: r });
        }
        let mut facets = facets_of(dim, &points);
        facets.sort_by(|a, b| lex_cmp(&a.normal, &b.normal));
        let mut vertices: Vec<LatticePoint<S>> = Vec::new();
        for p in &points {
            if vertices.contains(p) {
                continue;
            }
            let tight: Vec<Vec<S>> = facets
                .iter()
                .filter(|f| f.slack(p).is_negligible())
                .map(|f| f.normal.clone())
                .collect();
            if rank(&tight) == dim {
                vertices.push(p.clone());
            }
        }
        vertices.sort_by(|a, b| lex_cmp(a, b));
        let poly = Polytope {
            dim,
            vertices,
            facets,
            validity,
        };
        poly.validate()?;
        Ok(poly)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        for (i, v) in self.vertices.iter().enumerate() {
            let tight = self.tight_facets(i);
            if tight.len() != self.dim {
                return Err(GeometryError::NotSimple(i));
            }
            if self.validity == Validity::Delzant {
                let normals: Matrix<S> = tight.iter().map(|&f| self.facets[f].normal.clone()).collect();
                let det = determinant(&normals).abs_val();
                if det != S::one() {
                    return Err(GeometryError::NotDelzant {
                        vertex: i,
                        det: format!("{det:?}"),
                    });
                }
            }
            debug_assert!(self.facets.iter().all(|f| !f.slack(v).is_negative_strict()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    /// Indices of facets through vertex `i`.
    pub fn tight_facets(&self, i: usize) -> Vec<usize> {
        let v = &self.vertices[i];
        (0..self.facets.len())
            .filter(|&f| self.facets[f].slack(v).is_negligible())
            .collect()
    }

    pub fn vertex_index(&self, point: &[S]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == point)
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative_strict())
    }

    pub fn contains_strictly(&self, x: &[S]) -> bool {
        self.facets.iter().all(|f| f.slack(x).is_positive_strict())
    }

    /// Vertex indices lying on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.facets[f].slack(&self.vertices[i]).is_negligible())
            .collect()
    }

    /// Recomputes the vertex set from the facet inequalities alone.
    pub fn vertices_from_facets(&self) -> Vec<LatticePoint<S>> {
        let mut out: Vec<LatticePoint<S>> = Vec::new();
        for combo in combinations(self.facets.len(), self.dim) {
            let a: Matrix<S> = combo.iter().map(|&f| self.facets[f].normal.clone()).collect();
            let b: Vec<S> = combo.iter().map(|&f| self.facets[f].offset.clone()).collect();
            let Some(x) = solve(&a, &b) else { continue };
            if self.contains(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
        out.sort_by(|a, b| lex_cmp(a, b));
        out
    }

    /// Image under the affine map `x ↦ A x + t`.
    pub fn transform(&self, a: &Matrix<S>, t: &[S]) -> Result<Self, GeometryError> {
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                a.iter()
                    .zip(t)
                    .map(|(row, ti)| dot(row, v) + ti.clone())
                    .collect()
            })
            .collect();
        Self::from_vertices(self.dim, pts, self.validity)
    }
}

fn facets_of<S: Field>(dim: usize, points: &[LatticePoint<S>]) -> Vec<Facet<S>> {
    let mut facets: Vec<Facet<S>> = Vec::new();
    for combo in combinations(points.len(), dim) {
        let base = &points[combo[0]];
        let diffs: Matrix<S> = combo[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        let ns = nullspace(&diffs, dim);
        if ns.len() != 1 {
            continue;
        }
        let mut normal = S::primitive_direction(&ns[0]);
        let mut offset = dot(&normal, base);
        let mut above = false;
        let mut below = false;
        for p in points {
            let s = offset.clone() - dot(&normal, p);
            above |= s.is_negative_strict();
            below |= s.is_positive_strict();
        }
        if above && below {
            continue;
        }
        if above {
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        let facet = Facet { normal, offset };
        if !facets.contains(&facet) {
            facets.push(facet);
        }
    }
    facets
}

pub(crate) fn affine_rank<S: Field>(points: &[LatticePoint<S>]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let diffs: Matrix<S> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

pub(crate) fn lex_cmp<S: Field>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `conv{0, e_1, …, e_m}`: the moment polytope of `(ℙ^m, H)` with
/// `Vol = [ω]^m / m!`.
pub fn standard_simplex<S: Field>(m: usize) -> Polytope<S> {
    let mut pts = vec![vec![S::zero(); m]];
    for i in 0..m {
        let mut e = vec![S::zero(); m];
        e[i] = S::one();
        pts.push(e);
    }
    Polytope::from_vertices(m, pts, Validity::Delzant).expect("standard simplex is Delzant")
}

/// `conv{e_1, …, e_m, (−1, …, −1)}`, the reference simplex for the
/// projective blow-up Futaki computations. Its corners are rational simple
/// but not unimodular, so it is built in [`Validity::RationalSimple`] mode.
pub fn reference_simplex<S: Field>(m: usize) -> Polytope<S> {
    Polytope::from_vertices(m, reference_simplex_points(m), Validity::RationalSimple)
        .expect("reference simplex is simple")
}

/// Vertices of [`reference_simplex`] in the fixed order `e_1, …, e_m, −𝟙`.
pub fn reference_simplex_points<S: Field>(m: usize) -> Vec<LatticePoint<S>> {
    let mut pts = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut e = vec![S::zero(); m];
        e[i] = S::one();
        pts.push(e);
    }
    pts.push(vec![-S::one(); m]);
    pts
}

/// Hexagon of `Bl_3 ℙ²` with its anticanonical class.
pub fn del_pezzo_hexagon<S: Field>() -> Polytope<S> {
    let p = |x: i64, y: i64| vec![S::from_i64(x), S::from_i64(y)];
    Polytope::from_vertices(
        2,
        vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(-1, -1), p(0, -1)],
        Validity::Delzant,
    )
    .expect("hexagon is Delzant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn pt(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn hexagon_facets_are_primitive() {
        let h: Polytope<Rational> = del_pezzo_hexagon();
        assert_eq!(h.facets().len(), 6);
        assert_eq!(h.vertices().len(), 6);
        for f in h.facets() {
            assert_eq!(f.offset, int(1));
        }
    }

    #[test]
    fn round_trip_vertices_facets() {
        let h: Polytope<Rational> = del_pezzo_hexagon();
        assert_eq!(h.vertices_from_facets(), h.vertices().to_vec());
        let s: Polytope<Rational> = reference_simplex(3);
        assert_eq!(s.vertices_from_facets(), s.vertices().to_vec());
    }

    #[test]
    fn degenerate_is_rejected() {
        let pts = vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (1, 1)]), pt(&[(2, 1), (2, 1)])];
        assert!(matches!(
            Polytope::from_vertices(2, pts, Validity::RationalSimple),
            Err(GeometryError::Degenerate { .. })
        ));
    }

    #[test]
    fn non_vertex_is_rejected_but_hull_drops_it() {
        let pts = vec![
            pt(&[(0, 1), (0, 1)]),
            pt(&[(1, 1), (0, 1)]),
            pt(&[(0, 1), (1, 1)]),
            pt(&[(1, 4), (1, 4)]),
        ];
        assert!(matches!(
            Polytope::from_vertices(2, pts.clone(), Validity::Delzant),
            Err(GeometryError::NotAVertex(3))
        ));
        assert_eq!(Polytope::hull(2, pts, Validity::Delzant).unwrap().vertices().len(), 3);
    }

    #[test]
    fn reference_simplex_is_not_delzant() {
        let pts: Vec<Vec<Rational>> = reference_simplex_points(2);
        assert!(matches!(
            Polytope::from_vertices(2, pts, Validity::Delzant),
            Err(GeometryError::NotDelzant { .. })
        ));
    }

    #[test]
    fn square_pyramid_is_not_simple() {
        let p = |x: i64, y: i64, z: i64| vec![int(x), int(y), int(z)];
        let pts = vec![p(0, 0, 0), p(2, 0, 0), p(2, 2, 0), p(0, 2, 0), p(1, 1, 1)];
        assert!(matches!(
            Polytope::from_vertices(3, pts, Validity::RationalSimple),
            Err(GeometryError::NotSimple(_))
        ));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3).len(), 0);
    }

    #[test]
    fn f64_instantiation_matches() {
        let h: Polytope<f64> = del_pezzo_hexagon();
        assert_eq!(h.facets().len(), 6);
    }
}
