//! Donaldson's boundary-minus-interior functional on a moment polytope.

use super::chop::chop_sequence;
use super::integrals::{facet_measures, volume_and_moment, Triangulation};
use super::{reference_simplex, reference_simplex_points, Polytope};
use crate::error::GeometryError;
use crate::scalar::Field;

/// `F_i = ∫_∂P x_i dσ − (σ(∂P)/Vol(P))·∫_P x_i dx`.
///
/// Vanishes identically iff the Futaki character of the torus vanishes. The
/// functional is invariant under translations, unlike the raw barycenter.
pub fn futaki_linear_functional<S: Field>(p: &Polytope<S>) -> Vec<S> {
    futaki_report(p).functional
}

#[derive(Debug, Clone, PartialEq)]
pub struct FutakiReport<S> {
    pub volume: S,
    pub boundary_measure: S,
    pub barycenter: Vec<S>,
    pub functional: Vec<S>,
}

impl<S: Field> FutakiReport<S> {
    pub fn vanishes(&self) -> bool {
        self.functional.iter().all(|x| x.is_negligible())
    }
}

pub fn futaki_report<S: Field>(p: &Polytope<S>) -> FutakiReport<S> {
    let tri = Triangulation::new(p);
    let (volume, moment) = volume_and_moment(p, &tri);
    let facets = facet_measures(p, &tri);
    let m = p.dim();
    let mut boundary_measure = S::zero();
    let mut boundary_moment = vec![S::zero(); m];
    for (sigma, fm) in facets {
        boundary_measure = boundary_measure + sigma;
        for (acc, x) in boundary_moment.iter_mut().zip(fm) {
            *acc = acc.clone() + x;
        }
    }
    let barycenter: Vec<S> = moment.iter().map(|x| x.clone() / volume.clone()).collect();
    let functional = boundary_moment
        .into_iter()
        .zip(&barycenter)
        .map(|(b, c)| b - boundary_measure.clone() * c.clone())
        .collect();
    FutakiReport {
        volume,
        boundary_measure,
        barycenter,
        functional,
    }
}

/// Chops the given corners of `conv{e_1, …, e_m, (−1, …, −1)}` (vertices
/// indexed `0..=m` in that order) and reports whether the Futaki functional
/// of the result vanishes.
pub fn blown_up_projective_futaki<S: Field>(
    m: usize,
    chopped_vertices: &[usize],
    weights: &[S],
) -> Result<bool, GeometryError> {
    Ok(chopped_projective_simplex(m, chopped_vertices, weights)?
        .1
        .vanishes())
}

/// The chopped reference simplex together with its Futaki data.
pub fn chopped_projective_simplex<S: Field>(
    m: usize,
    chopped_vertices: &[usize],
    weights: &[S],
) -> Result<(Polytope<S>, FutakiReport<S>), GeometryError> {
    if chopped_vertices.len() != weights.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: chopped_vertices.len(),
            got: weights.len(),
        });
    }
    let corners = reference_simplex_points::<S>(m);
    let mut chops = Vec::with_capacity(weights.len());
    for (&j, w) in chopped_vertices.iter().zip(weights) {
        let point = corners
            .get(j)
            .ok_or(GeometryError::BadSimplexVertex(j))?
            .clone();
        chops.push((point, w.clone()));
    }
    let p = chop_sequence(&reference_simplex::<S>(m), &chops)?;
    let report = futaki_report(&p);
    Ok((p, report))
}
