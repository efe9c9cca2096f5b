//! Volumes, centroids and facet measures through a recursive fan triangulation.

use super::{affine_rank, LatticePoint, Polytope};
use crate::linalg::{determinant, Matrix};
use crate::scalar::Field;

/// Fan triangulation of a polytope from the vertex centroid.
///
/// Each face is coned from the centroid of its own vertices over the
/// triangulations of its sub-faces, so the construction depends only on the
/// (sorted) vertex list and is fully deterministic.
#[derive(Debug, Clone)]
pub struct Triangulation<S> {
    pub apex: LatticePoint<S>,
    /// For every facet, the `(m−1)`-simplices triangulating it.
    pub facet_simplices: Vec<Vec<Vec<LatticePoint<S>>>>,
}

impl<S: Field> Triangulation<S> {
    pub fn new(p: &Polytope<S>) -> Self {
        let apex = centroid_of(p.vertices());
        let facet_simplices = (0..p.facets().len())
            .map(|f| fan(p, &p.facet_vertices(f), p.dim() - 1))
            .collect();
        Triangulation {
            apex,
            facet_simplices,
        }
    }

    /// Full-dimensional simplices: the apex coned over each facet simplex.
    pub fn simplices(&self) -> impl Iterator<Item = Vec<LatticePoint<S>>> + '_ {
        self.facet_simplices.iter().flatten().map(|s| {
            let mut full = Vec::with_capacity(s.len() + 1);
            full.push(self.apex.clone());
            full.extend(s.iter().cloned());
            full
        })
    }
}

/// Simplices of dimension `k` covering the face spanned by `face` (vertex indices).
fn fan<S: Field>(p: &Polytope<S>, face: &[usize], k: usize) -> Vec<Vec<LatticePoint<S>>> {
    if k == 0 {
        return vec![vec![p.vertices()[face[0]].clone()]];
    }
    let pts: Vec<LatticePoint<S>> = face.iter().map(|&i| p.vertices()[i].clone()).collect();
    let c = centroid_of(&pts);
    let mut out = Vec::new();
    for sub in sub_faces(p, face, k) {
        for mut s in fan(p, &sub, k - 1) {
            s.insert(0, c.clone());
            out.push(s);
        }
    }
    out
}

/// Faces of dimension `k − 1` contained in a `k`-face.
fn sub_faces<S: Field>(p: &Polytope<S>, face: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut subs: Vec<Vec<usize>> = Vec::new();
    for f in 0..p.facets().len() {
        let on: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&i| p.facets()[f].slack(&p.vertices()[i]).is_negligible())
            .collect();
        if on.is_empty() || on.len() == face.len() {
            continue;
        }
        let pts: Vec<LatticePoint<S>> = on.iter().map(|&i| p.vertices()[i].clone()).collect();
        if affine_rank(&pts) + 1 == k && !subs.contains(&on) {
            subs.push(on);
        }
    }
    subs
}

pub(crate) fn centroid_of<S: Field>(pts: &[LatticePoint<S>]) -> LatticePoint<S> {
    let n = S::from_i64(pts.len() as i64);
    let dim = pts[0].len();
    (0..dim)
        .map(|j| pts.iter().fold(S::zero(), |acc, p| acc + p[j].clone()) / n.clone())
        .collect()
}

fn factorial<S: Field>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_i64(k as i64))
}

/// Lebesgue volume of a full-dimensional simplex given by `m + 1` points.
pub(crate) fn simplex_volume<S: Field>(s: &[LatticePoint<S>]) -> S {
    let m = s.len() - 1;
    let rows: Matrix<S> = s[1..]
        .iter()
        .map(|q| q.iter().zip(&s[0]).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    determinant(&rows).abs_val() / factorial::<S>(m)
}

/// Exact volume (over rationals) from the fan triangulation.
pub fn polytope_volume<S: Field>(p: &Polytope<S>) -> S {
    Triangulation::new(p)
        .simplices()
        .fold(S::zero(), |acc, s| acc + simplex_volume(&s))
}

/// Centroid of the solid polytope.
pub fn polytope_barycenter<S: Field>(p: &Polytope<S>) -> LatticePoint<S> {
    let (vol, moment) = volume_and_moment(p, &Triangulation::new(p));
    moment.into_iter().map(|x| x / vol.clone()).collect()
}

/// `(Vol(P), ∫_P x dx)`.
pub(crate) fn volume_and_moment<S: Field>(
    p: &Polytope<S>,
    tri: &Triangulation<S>,
) -> (S, Vec<S>) {
    let m = p.dim();
    let mut vol = S::zero();
    let mut moment = vec![S::zero(); m];
    for s in tri.simplices() {
        let v = simplex_volume(&s);
        let c = centroid_of(&s);
        for (acc, ci) in moment.iter_mut().zip(c) {
            *acc = acc.clone() + v.clone() * ci;
        }
        vol = vol + v;
    }
    (vol, moment)
}

/// `(σ(F), ∫_F x dσ)` for every facet, with `dσ` normalised by the primitive
/// facet normal.
///
/// Uses the pyramid from the apex: its volume is `σ(F)·(b − ⟨ν, c⟩)/m`, and its
/// centroid sits at `m/(m+1)` of the way from the apex to the facet centroid.
pub(crate) fn facet_measures<S: Field>(
    p: &Polytope<S>,
    tri: &Triangulation<S>,
) -> Vec<(S, Vec<S>)> {
    let m = p.dim();
    let mm = S::from_i64(m as i64);
    let ratio = S::from_i64(m as i64 + 1) / mm.clone();
    p.facets()
        .iter()
        .zip(&tri.facet_simplices)
        .map(|(facet, simplices)| {
            let mut pyr_vol = S::zero();
            let mut pyr_moment = vec![S::zero(); m];
            for s in simplices {
                let mut full = vec![tri.apex.clone()];
                full.extend(s.iter().cloned());
                let v = simplex_volume(&full);
                for (acc, ci) in pyr_moment.iter_mut().zip(centroid_of(&full)) {
                    *acc = acc.clone() + v.clone() * ci;
                }
                pyr_vol = pyr_vol + v;
            }
            let height = facet.slack(&tri.apex);
            let sigma = mm.clone() * pyr_vol.clone() / height;
            let facet_moment: Vec<S> = pyr_moment
                .into_iter()
                .zip(&tri.apex)
                .map(|(pm, a)| {
                    let c_pyr = pm / pyr_vol.clone();
                    let c_f = a.clone() + ratio.clone() * (c_pyr - a.clone());
                    sigma.clone() * c_f
                })
                .collect();
            (sigma, facet_moment)
        })
        .collect()
}
