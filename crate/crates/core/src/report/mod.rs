//! Scenario analysis: every applicable check on one configuration of blow-up
//! points, each verdict stored with the data needed to re-check it.

mod suites;

pub use suites::{
    four_point_configuration, sporadic_group, sporadic_kappa, sporadic_points, verify_suite, SuiteReport, SuiteRow, SUITES,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::actions::{
    check_condition_i, check_condition_ii, check_condition_iii, csc_predictor, invariant_algebra, moment_at,
    moment_matrix, moment_sum, split_algebra, Feasibility, Gaussian, GroupSpec, Hermitian, ProjPoint,
};
use crate::classes::{corollary_families, epsilon_family, Class, CorollaryFamily, EpsilonFamily};
use crate::error::{ActionError, ClassError, GeometryError, RadialError, ReportError};
use crate::geometry::json::PolytopeJson;
use crate::geometry::{chop_sequence, chopped_projective_simplex, futaki_report, FutakiReport, Polytope, Validity};
use crate::linalg::Matrix;
use crate::radial::{schedules, Schedules};
use crate::scalar::{format_rational, parse_rational, Rational};

pub const EPSILON_NOTE: &str = "existence for ε < ε₀, ε₀ not computed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    #[default]
    Projective,
    Toric,
    Ruled,
}

/// A point of ℙ^m as homogeneous Gaussian-rational strings, or a polytope
/// vertex index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Vertex(usize),
    Coords(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub base: BaseKind,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub group: GroupSpec,
    /// Toric base only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeJson>,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    /// Rationals or `"?"` for unknown. Ruled base: `[a1, a2]` or `[a1, a2, λ]`.
    #[serde(default)]
    pub weights: Vec<String>,
    #[serde(default)]
    pub epsilon_samples: Vec<f64>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    fn weight_slots(&self) -> Result<Vec<Option<Rational>>, ReportError> {
        self.weights
            .iter()
            .map(|w| {
                if w.trim() == "?" {
                    Ok(None)
                } else {
                    parse_rational(w)
                        .map(Some)
                        .map_err(|e| ReportError::Scenario(e.to_string()))
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraSummary {
    pub h_dim: usize,
    pub h_prime_dim: usize,
    pub h_doubleprime_dim: usize,
    pub h_prime_basis: Vec<Vec<Vec<String>>>,
    pub h_doubleprime_basis: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRow {
    pub point: usize,
    /// Pairings with the adapted basis of `h` (`h′` first).
    pub values: Vec<String>,
    pub fixed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIReport {
    pub holds: bool,
    pub status: Feasibility,
    pub orbit_classes: Vec<usize>,
    pub weights: Option<Vec<String>>,
    /// `Σ_j a_j ⟨ξ(p_j), X″_β⟩` for the reported weights; all zero.
    pub residual: Option<Vec<String>>,
    pub kernel: Vec<Vec<String>>,
    pub certificate: Option<Vec<String>>,
    /// `yᵀM` per point for the certificate `y`; nonnegative with total 1 over orbit sums.
    pub certificate_pairing: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIIReport {
    pub holds: bool,
    pub rank: usize,
    pub required: usize,
    pub witness: Option<MinorWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionIIIReport {
    pub holds: bool,
    /// Coefficients over the `h″` basis.
    pub vanishing_field: Option<Vec<String>>,
    pub vanishing_matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conditions {
    pub i: ConditionIReport,
    pub ii: ConditionIIReport,
    pub iii: ConditionIIIReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CscPrediction {
    /// True when the metrics are forced to have nonconstant scalar curvature.
    pub nonconstant: bool,
    pub weights: Vec<String>,
    pub moment_sum: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FutakiSummary {
    /// `(vertex index in the unchopped polytope, chop size)`.
    pub chops: Vec<(usize, String)>,
    pub vertices: Vec<Vec<String>>,
    pub volume: String,
    pub barycenter: Vec<String>,
    pub functional: Vec<String>,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub base: BaseKind,
    pub m: usize,
    pub algebra: Option<AlgebraSummary>,
    pub moments: Vec<MomentRow>,
    pub conditions: Option<Conditions>,
    pub csc: Option<CscPrediction>,
    pub classes: Vec<EpsilonFamily>,
    pub families: Vec<CorollaryFamily>,
    pub futaki: Option<FutakiSummary>,
    pub schedules: Vec<Schedules>,
    pub notes: Vec<String>,
    pub all_conditions_hold: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_strings(a: &Hermitian<Rational>) -> Vec<Vec<String>> {
    a.entries()
        .iter()
        .map(|row| row.iter().map(|z| z.to_string()).collect())
        .collect()
}

fn action(stage: &'static str) -> impl Fn(ActionError) -> ReportError {
    move |source| ReportError::Action { stage, source }
}

fn geometry(stage: &'static str) -> impl Fn(GeometryError) -> ReportError {
    move |source| ReportError::Geometry { stage, source }
}

fn class(stage: &'static str) -> impl Fn(ClassError) -> ReportError {
    move |source| ReportError::Class { stage, source }
}

fn radial(stage: &'static str) -> impl Fn(RadialError) -> ReportError {
    move |source| ReportError::Radial { stage, source }
}

pub fn futaki_summary(chops: Vec<(usize, Rational)>, p: &Polytope<Rational>, f: &FutakiReport<Rational>) -> FutakiSummary {
    FutakiSummary {
        chops: chops.into_iter().map(|(j, w)| (j, format_rational(&w))).collect(),
        vertices: p.vertices().iter().map(|v| strings(v)).collect(),
        volume: format_rational(&f.volume),
        barycenter: strings(&f.barycenter),
        functional: strings(&f.functional),
        vanishes: f.vanishes(),
    }
}

fn mat_vec(m: &Matrix<Rational>, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |a, (x, y)| a + x * y))
        .collect()
}

fn vec_mat(y: &[Rational], m: &Matrix<Rational>) -> Vec<Rational> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| y.iter().zip(m).fold(Rational::zero(), |a, (c, row)| a + c * &row[j]))
        .collect()
}

/// Runs the checks that apply to the scenario's base.
pub fn analyze(s: &Scenario) -> Result<Report, ReportError> {
    match s.base {
        BaseKind::Projective => analyze_projective(s),
        BaseKind::Toric => analyze_toric(s),
        BaseKind::Ruled => analyze_ruled(s),
    }
}

fn empty_report(s: &Scenario, m: usize) -> Report {
    Report {
        base: s.base,
        m,
        algebra: None,
        moments: Vec::new(),
        conditions: None,
        csc: None,
        classes: Vec::new(),
        families: Vec::new(),
        futaki: None,
        schedules: Vec::new(),
        notes: vec![EPSILON_NOTE.to_string()],
        all_conditions_hold: true,
    }
}

fn parse_points(s: &Scenario) -> Result<Vec<ProjPoint<Rational>>, ReportError> {
    let n = s.m + 1;
    let mut out: Vec<ProjPoint<Rational>> = Vec::with_capacity(s.points.len());
    for (j, p) in s.points.iter().enumerate() {
        let PointSpec::Coords(c) = p else {
            return Err(ReportError::Scenario(format!("point {j}: expected homogeneous coordinates")));
        };
        if c.len() != n {
            return Err(ReportError::Scenario(format!("point {j}: expected {n} coordinates, got {}", c.len())));
        }
        let z = c
            .iter()
            .map(|x| Gaussian::parse(x))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ReportError::Scenario(format!("point {j}: {e}")))?;
        let q = ProjPoint::new(z).map_err(action("parse_points"))?;
        if out.contains(&q) {
            return Err(ReportError::Scenario(format!("point {j} repeats an earlier point")));
        }
        out.push(q);
    }
    Ok(out)
}

fn coordinate_index(p: &ProjPoint<Rational>) -> Option<usize> {
    let nz: Vec<usize> = (0..p.len()).filter(|&j| !p.coords()[j].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

fn analyze_projective(s: &Scenario) -> Result<Report, ReportError> {
    if s.m == 0 {
        return Err(ReportError::Scenario("m must be at least 1".to_string()));
    }
    let m = s.m;
    let points = parse_points(s)?;
    if points.is_empty() {
        return Err(ReportError::Scenario("no points".to_string()));
    }
    let slots = s.weight_slots()?;
    if !slots.is_empty() && slots.len() != points.len() {
        return Err(ReportError::Scenario(format!(
            "{} weights for {} points",
            slots.len(),
            points.len()
        )));
    }
    let mut report = empty_report(s, m);

    let h = invariant_algebra::<Rational>(&s.group, m).map_err(action("invariant_algebra"))?;
    let split = split_algebra(&h, &s.group).map_err(action("split_algebra"))?;
    report.algebra = Some(AlgebraSummary {
        h_dim: split.h_basis.len(),
        h_prime_dim: split.h_prime_basis.len(),
        h_doubleprime_dim: split.h_doubleprime_basis.len(),
        h_prime_basis: split.h_prime_basis.iter().map(matrix_strings).collect(),
        h_doubleprime_basis: split.h_doubleprime_basis.iter().map(matrix_strings).collect(),
    });
    for (j, p) in points.iter().enumerate() {
        let mv = moment_at(p, &split, &s.group).map_err(action("moment_at"))?;
        if !mv.fixed {
            report
                .notes
                .push(format!("point {j} is not fixed by the torus part of the group"));
        }
        report.moments.push(MomentRow {
            point: j,
            values: strings(&mv.values),
            fixed: mv.fixed,
        });
    }

    let mm = moment_matrix(&points, &split).map_err(action("moment_at"))?;
    let c1 = check_condition_i(&points, &split, &s.group, &slots).map_err(action("check_condition_i"))?;
    let c2 = check_condition_ii(&points, &split).map_err(action("check_condition_ii"))?;
    let c3 = check_condition_iii(&points, &split).map_err(action("check_condition_iii"))?;
    let residual = c1.weights.as_ref().map(|w| strings(&mat_vec(&mm, w)));
    let certificate_pairing = c1.certificate.as_ref().map(|y| strings(&vec_mat(y, &mm)));
    let vanishing_matrix = c3.vanishing_field.as_ref().map(|v| {
        let n = m + 1;
        let x = split
            .h_doubleprime_basis
            .iter()
            .zip(v)
            .fold(Hermitian::zero(n), |acc, (b, c)| acc.add(&b.scale(c)));
        matrix_strings(&x)
    });
    let conditions = Conditions {
        i: ConditionIReport {
            holds: c1.holds(),
            status: c1.status,
            orbit_classes: c1.orbit_classes.clone(),
            weights: c1.weights.as_ref().map(|w| strings(w)),
            residual,
            kernel: c1.kernel.iter().map(|k| strings(k)).collect(),
            certificate: c1.certificate.as_ref().map(|y| strings(y)),
            certificate_pairing,
        },
        ii: ConditionIIReport {
            holds: c2.holds,
            rank: c2.rank,
            required: c2.required,
            witness: c2.witness.as_ref().map(|(r, c, v)| MinorWitness {
                rows: r.clone(),
                cols: c.clone(),
                minor: format_rational(v),
            }),
        },
        iii: ConditionIIIReport {
            holds: c3.holds,
            vanishing_field: c3.vanishing_field.as_ref().map(|v| strings(v)),
            vanishing_matrix,
        },
    };
    report.all_conditions_hold = c1.holds() && c2.holds && c3.holds;
    report.conditions = Some(conditions);

    let weights: Option<Vec<Rational>> = if !slots.is_empty() && slots.iter().all(|w| w.is_some()) {
        Some(slots.iter().flatten().cloned().collect())
    } else if c1.holds() {
        c1.weights.clone()
    } else {
        None
    };
    let Some(weights) = weights else {
        report
            .notes
            .push("no admissible weights: scalar-curvature prediction and class families skipped".to_string());
        return Ok(report);
    };

    let total = moment_sum(&points, &weights, &split).map_err(action("csc_predictor"))?;
    report.csc = Some(CscPrediction {
        nonconstant: csc_predictor(&points, &weights, &split).map_err(action("csc_predictor"))?,
        weights: strings(&weights),
        moment_sum: strings(&total),
    });

    if m >= 2 {
        let fam = epsilon_family(&Class::hyperplane(0), &weights, m, c3.holds).map_err(class("epsilon_family"))?;
        if let Some(d) = &fam.drift_exponent {
            report.notes.push(format!(
                "condition (iii) not verified: weights drift by O(ε^{d})"
            ));
        }
        report.classes.push(fam);
        for &eps in &s.epsilon_samples {
            report.schedules.push(schedules(eps, m).map_err(radial("schedules"))?);
        }
    } else {
        report
            .notes
            .push("m = 1: blow-ups are trivial; class families and schedules skipped".to_string());
    }

    let coords: Option<Vec<usize>> = points.iter().map(coordinate_index).collect();
    if let Some(idx) = coords {
        let sum = weights.iter().fold(Rational::zero(), |a, w| a + w);
        let two = Rational::one() + Rational::one();
        let sizes: Vec<Rational> = weights.iter().map(|w| w / (&two * &sum)).collect();
        let (p, f) = chopped_projective_simplex(m, &idx, &sizes).map_err(geometry("corner_chop"))?;
        report.futaki = Some(futaki_summary(idx.into_iter().zip(sizes).collect(), &p, &f));
        report.notes.push(
            "toric check: coordinate point j chops vertex j of conv{e_1, …, e_m, −𝟙} with size a_j/(2Σa)".to_string(),
        );
    }
    report.notes.push("point and vertex indices are 0-based".to_string());
    Ok(report)
}

fn analyze_toric(s: &Scenario) -> Result<Report, ReportError> {
    let pj = s
        .polytope
        .clone()
        .ok_or_else(|| ReportError::Scenario("toric base needs a polytope".to_string()))?;
    let p = pj.into_polytope(Validity::Delzant).map_err(geometry("load_polytope"))?;
    let slots = s.weight_slots()?;
    if slots.len() != s.points.len() || slots.iter().any(|w| w.is_none()) {
        return Err(ReportError::Scenario("toric base needs one chop size per vertex".to_string()));
    }
    let mut chops = Vec::new();
    for (spec, w) in s.points.iter().zip(slots.into_iter().flatten()) {
        let PointSpec::Vertex(j) = spec else {
            return Err(ReportError::Scenario("toric points are vertex indices".to_string()));
        };
        if chops.iter().any(|(k, _)| k == j) {
            return Err(ReportError::Scenario(format!("vertex {j} chopped twice")));
        }
        chops.push((*j, w));
    }
    let located: Vec<(Vec<Rational>, Rational)> = chops
        .iter()
        .map(|(j, w)| {
            p.vertices()
                .get(*j)
                .cloned()
                .map(|v| (v, w.clone()))
                .ok_or(GeometryError::VertexOutOfRange {
                    index: *j,
                    count: p.vertices().len(),
                })
        })
        .collect::<Result<_, _>>()
        .map_err(geometry("corner_chop"))?;
    let chopped = chop_sequence(&p, &located).map_err(geometry("corner_chop"))?;
    let f = futaki_report(&chopped);
    let mut report = empty_report(s, p.dim());
    report.futaki = Some(futaki_summary(chops, &chopped, &f));
    report
        .notes
        .push("constant scalar curvature in the chopped class requires the Futaki functional to vanish".to_string());
    report.notes.push("point and vertex indices are 0-based".to_string());
    Ok(report)
}

fn analyze_ruled(s: &Scenario) -> Result<Report, ReportError> {
    let params: Vec<Rational> = s
        .weight_slots()?
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ReportError::Scenario("ruled base needs explicit parameters".to_string()))?;
    let families = corollary_families(1, &params).map_err(class("corollary_families"))?;
    let mut report = empty_report(s, 2);
    report.all_conditions_hold = families.iter().all(|f| f.constraints.iter().all(|c| c.holds));
    report.families = families;
    for &eps in &s.epsilon_samples {
        report.schedules.push(schedules(eps, 2).map_err(radial("schedules"))?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(text: &str) -> Scenario {
        Scenario::from_json(text).unwrap()
    }

    #[test]
    fn torus_three_points_equal_weights() {
        let s = scenario(
            r#"{"m":2,"group":{"circle_weights":[[1,0,0],[0,1,0]]},
                "points":[["1","0","0"],["0","1","0"],["0","0","1"]],
                "weights":["1","1","1"],"epsilon_samples":[0.1]}"#,
        );
        let r = analyze(&s).unwrap();
        assert!(r.all_conditions_hold);
        assert!(!r.csc.as_ref().unwrap().nonconstant);
        assert!(r.futaki.as_ref().unwrap().vanishes);
        assert!(r.notes.iter().any(|n| n == EPSILON_NOTE));
        assert_eq!(r.to_json(), analyze(&s).unwrap().to_json());
    }

    #[test]
    fn aligned_points_positive_real_part_is_infeasible() {
        let s = scenario(
            r#"{"m":2,"group":{"circle_weights":[[-2,1,1]],"permutations":[[0,2,1]]},
                "points":[["0","1","1"],["0","1","1+i"],["0","1+i","1"]],"weights":["?","?","?"]}"#,
        );
        let r = analyze(&s).unwrap();
        let c = r.conditions.as_ref().unwrap();
        assert!(!c.i.holds);
        assert!(c.i.certificate.is_some());
        assert!(!r.all_conditions_hold);
        assert!(r.csc.is_none());
    }

    #[test]
    fn validation_errors() {
        let s = scenario(r#"{"m":2,"points":[["1","0","0"],["1","0","0"]]}"#);
        assert!(matches!(analyze(&s), Err(ReportError::Scenario(_))));
        let s = scenario(r#"{"m":2,"points":[["1","0","0"]],"weights":["1","2"]}"#);
        assert!(matches!(analyze(&s), Err(ReportError::Scenario(_))));
        let s = scenario(r#"{"m":2,"group":{"circle_weights":[[1,0]]},"points":[["1","0","0"]]}"#);
        assert!(matches!(analyze(&s), Err(ReportError::Action { stage: "invariant_algebra", .. })));
    }

    #[test]
    fn toric_and_ruled_bases() {
        let s = scenario(
            r#"{"base":"toric","polytope":{"dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]},
                "points":[0,1,2],"weights":["1/4","1/4","1/4"]}"#,
        );
        let r = analyze(&s).unwrap();
        assert!(r.futaki.unwrap().vanishes);
        let s = scenario(r#"{"base":"ruled","weights":["1/2","1/3"]}"#);
        let r = analyze(&s).unwrap();
        assert_eq!(r.families.len(), 2);
    }
}
