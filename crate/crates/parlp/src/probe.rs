//! Sequence-based probes for the continuity of `V` and the semicontinuity
//! of the feasible and solution correspondences along convergent families.
//!
//! Everything here is exact: values, gaps, and squared vertex distances are
//! rationals, and the "tends to zero" verdicts come from a decidable decay
//! test rather than a floating-point threshold. The test samples the family
//! at `N0 = max(Ns)`, `16*N0` and `256*N0` and requires each step to shrink
//! the gap by at least a factor of 8 (or all gaps to vanish exactly): along
//! an affine-in-1/N family with an eventually stable basis the gap is
//! eventually `c/N` up to second order, so a true 1/N decay passes with room
//! to spare while a non-vanishing gap fails. A failed test is evidence, not
//! proof.

use serde::{Serialize, Serializer};

use crate::classify::optimal_face_direction;
use crate::error::{Error, Result};
use crate::linalg::{self, RationalMatrix, RationalVector};
use crate::model::{LpProblem, ProblemFamily};
use crate::rational::Rational;
use crate::solver::{enumerate_basic_feasible, solve, EnumCap, SolveOutcome, SolveStatus};

fn ser_one_based<S: Serializer>(
    indices: &[usize],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(indices.iter().map(|i| i + 1))
}

/// The three-sample decay check behind every "vanishing" verdict.
#[derive(Clone, Debug, Serialize)]
pub struct DecayCheck {
    pub ns: [u64; 3],
    pub values: [Rational; 3],
    pub vanishing: bool,
}

impl DecayCheck {
    fn evaluate(ns: [u64; 3], values: [Rational; 3]) -> Self {
        let eighth = Rational::ratio(1, 8);
        let all_zero = values.iter().all(Rational::is_zero);
        let vanishing =
            all_zero || (values[1] <= &values[0] * &eighth && values[2] <= &values[1] * &eighth);
        DecayCheck {
            ns,
            values,
            vanishing,
        }
    }
}

fn decay_ns(ns: &[u64]) -> [u64; 3] {
    let anchor = *ns.iter().max().expect("at least one N");
    [anchor, 16 * anchor, 256 * anchor]
}

fn check_ns(ns: &[u64]) -> Result<Vec<u64>> {
    if ns.is_empty() {
        return Err(Error::Value("at least one N is required".into()));
    }
    if ns.contains(&0) {
        return Err(Error::Value("N must be at least 1".into()));
    }
    // The decay ladder samples at 256 * max(Ns).
    if let Some(&big) = ns.iter().find(|&&n| n > u64::MAX / 256) {
        return Err(Error::Value(format!("N = {big} is too large")));
    }
    let mut sorted = ns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

fn solve_optimal(problem: &LpProblem, cap: &EnumCap, what: &str) -> Result<SolveOutcome> {
    let outcome = solve(problem, cap)?;
    if outcome.status != SolveStatus::Optimal {
        return Err(Error::NotOptimal(format!(
            "{what} is {}",
            outcome.status.as_str()
        )));
    }
    Ok(outcome)
}

fn member_value(family: &ProblemFamily, n: u64, cap: &EnumCap) -> Result<Rational> {
    let outcome = solve_optimal(&family.instantiate(n), cap, &format!("member N = {n}"))?;
    Ok(outcome.value.expect("optimal outcome has a value"))
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueSample {
    pub n: u64,
    pub value: Rational,
    pub gap: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueContinuityReport {
    pub limit_value: Rational,
    pub samples: Vec<ValueSample>,
    pub decay: DecayCheck,
    pub value_gap_vanishing: bool,
}

/// Tabulates `V(xi(N))` and the exact gap `|V(xi(N)) - V(xi_inf)|`, and runs
/// the decay test on three extra members anchored at the largest listed `N`.
pub fn probe_value_continuity(
    family: &ProblemFamily,
    ns: &[u64],
    cap: &EnumCap,
) -> Result<ValueContinuityReport> {
    let ns = check_ns(ns)?;
    let limit_outcome = solve_optimal(family.limit(), cap, "limit problem")?;
    let limit_value = limit_outcome.value.expect("optimal outcome has a value");
    let gap_at =
        |n: u64| -> Result<Rational> { Ok((member_value(family, n, cap)? - &limit_value).abs()) };
    let mut samples = Vec::with_capacity(ns.len());
    for &n in &ns {
        let value = member_value(family, n, cap)?;
        let gap = (&value - &limit_value).abs();
        samples.push(ValueSample { n, value, gap });
    }
    let triple = decay_ns(&ns);
    let decay = DecayCheck::evaluate(
        triple,
        [gap_at(triple[0])?, gap_at(triple[1])?, gap_at(triple[2])?],
    );
    Ok(ValueContinuityReport {
        limit_value,
        samples,
        value_gap_vanishing: decay.vanishing,
        decay,
    })
}

/// Nearest squared distance from `point` to the basic optima of `outcome`.
fn vertex_distance_sq(point: &RationalVector, outcome: &SolveOutcome) -> Rational {
    outcome
        .optimal_basics
        .iter()
        .map(|bp| point.sub(&bp.x).norm_squared())
        .min()
        .expect("optimal outcome has basic optima")
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexDistanceReport {
    pub vertex: RationalVector,
    /// `(N, dist^2)` rows over the listed Ns, ascending.
    pub samples: Vec<(u64, Rational)>,
    pub decay: DecayCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct LscReport {
    pub per_vertex: Vec<VertexDistanceReport>,
    pub lsc_gap_vanishing: bool,
    /// The distance is measured to the nearest basic optimum, an upper bound
    /// on the distance to the full optimal set; set when the verdict is
    /// negative as a reminder that only the bound failed to vanish.
    pub vertex_bound_only: bool,
}

/// For each limit vertex `x` of `S*(xi_inf)`, tracks the squared distance to
/// the nearest member of `S*(xi(N))` and requires it to pass the decay test.
pub fn probe_lsc_solutions(family: &ProblemFamily, ns: &[u64], cap: &EnumCap) -> Result<LscReport> {
    let ns = check_ns(ns)?;
    let limit_outcome = solve_optimal(family.limit(), cap, "limit problem")?;
    let mut member_outcomes = Vec::with_capacity(ns.len());
    for &n in &ns {
        member_outcomes.push((
            n,
            solve_optimal(&family.instantiate(n), cap, &format!("member N = {n}"))?,
        ));
    }
    let triple = decay_ns(&ns);
    let mut triple_outcomes = Vec::with_capacity(3);
    for n in triple {
        triple_outcomes.push(solve_optimal(
            &family.instantiate(n),
            cap,
            &format!("member N = {n}"),
        )?);
    }
    let mut per_vertex = Vec::new();
    let mut all_vanish = true;
    for vertex in limit_outcome.optimal_basics.iter().map(|bp| &bp.x) {
        let samples: Vec<(u64, Rational)> = member_outcomes
            .iter()
            .map(|(n, outcome)| (*n, vertex_distance_sq(vertex, outcome)))
            .collect();
        let decay = DecayCheck::evaluate(
            triple,
            [
                vertex_distance_sq(vertex, &triple_outcomes[0]),
                vertex_distance_sq(vertex, &triple_outcomes[1]),
                vertex_distance_sq(vertex, &triple_outcomes[2]),
            ],
        );
        all_vanish &= decay.vanishing;
        per_vertex.push(VertexDistanceReport {
            vertex: vertex.clone(),
            samples,
            decay,
        });
    }
    Ok(LscReport {
        per_vertex,
        lsc_gap_vanishing: all_vanish,
        vertex_bound_only: !all_vanish,
    })
}

/// One support-stable selection across the sampled members, with its exact
/// limit when the limit submatrix still has independent columns.
#[derive(Clone, Debug, Serialize)]
pub struct SelectionReport {
    #[serde(serialize_with = "ser_one_based")]
    pub support: Vec<usize>,
    /// False when the limit columns go dependent (the selection has no
    /// convergent limit through the basis formula; Example 1's `(N, 0)`
    /// selection is the canonical case).
    pub convergent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_point: Option<RationalVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasible_in_limit: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_in_limit: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UscReport {
    pub selections: Vec<SelectionReport>,
    /// Conjunction over convergent selections (vacuously true without any).
    pub all_limits_pass: bool,
    pub no_convergent_selection: bool,
}

/// Supports present in every one of the given support families.
fn stable_supports(per_member: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let Some((first, rest)) = per_member.split_first() else {
        return Vec::new();
    };
    first
        .iter()
        .filter(|support| rest.iter().all(|others| others.contains(support)))
        .cloned()
        .collect()
}

/// Exact limit of the selection with the given support: the basis formula
/// `x_B(N) = B(N)^- b(N)` evaluated at `1/N -> 0`, which is the limit
/// whenever the limit support columns stay independent.
fn selection_limit(limit: &LpProblem, support: &[usize]) -> Option<RationalVector> {
    let basis = limit.matrix().select_columns(support);
    if !linalg::columns_independent(limit.matrix(), support) {
        return None;
    }
    let pinv = linalg::pseudo_inverse(&basis).ok()?;
    let x_basis = pinv.mul_vector(limit.rhs());
    let mut x = RationalVector::zeros(limit.num_vars());
    for (k, &j) in support.iter().enumerate() {
        x.set(j, x_basis.get(k).clone());
    }
    Some(x)
}

fn usc_selections(
    limit: &LpProblem,
    per_member_supports: &[Vec<Vec<usize>>],
    limit_value: Option<&Rational>,
) -> UscReport {
    let mut selections = Vec::new();
    let mut all_pass = true;
    let mut any_convergent = false;
    for support in stable_supports(per_member_supports) {
        match selection_limit(limit, &support) {
            None => selections.push(SelectionReport {
                support,
                convergent: false,
                limit_point: None,
                feasible_in_limit: None,
                optimal_in_limit: None,
            }),
            Some(point) => {
                any_convergent = true;
                let feasible = limit.is_feasible_point(&point);
                let optimal = limit_value.map(|v| feasible && &limit.value_at(&point) == v);
                all_pass &= optimal.unwrap_or(feasible);
                selections.push(SelectionReport {
                    support,
                    convergent: true,
                    limit_point: Some(point),
                    feasible_in_limit: Some(feasible),
                    optimal_in_limit: optimal,
                });
            }
        }
    }
    UscReport {
        selections,
        all_limits_pass: all_pass,
        no_convergent_selection: !any_convergent,
    }
}

/// Upper semicontinuity of the feasible correspondence: every support-stable
/// selection of basic feasible points with a convergent limit must land in
/// the limit feasible set.
pub fn probe_usc_feasible(family: &ProblemFamily, ns: &[u64], cap: &EnumCap) -> Result<UscReport> {
    let ns = check_ns(ns)?;
    let mut per_member = Vec::with_capacity(ns.len());
    for &n in &ns {
        let basics = enumerate_basic_feasible(&family.instantiate(n), cap)?;
        if basics.is_empty() {
            return Err(Error::Infeasible);
        }
        per_member.push(basics.into_iter().map(|bp| bp.support).collect::<Vec<_>>());
    }
    Ok(usc_selections(family.limit(), &per_member, None))
}

/// Upper semicontinuity of the solution correspondence: support-stable
/// selections of basic optima with convergent limits must be optimal for the
/// limit problem.
pub fn probe_usc_solutions(family: &ProblemFamily, ns: &[u64], cap: &EnumCap) -> Result<UscReport> {
    let ns = check_ns(ns)?;
    let limit_outcome = solve_optimal(family.limit(), cap, "limit problem")?;
    let limit_value = limit_outcome.value.expect("optimal outcome has a value");
    let mut per_member = Vec::with_capacity(ns.len());
    for &n in &ns {
        let outcome = solve_optimal(&family.instantiate(n), cap, &format!("member N = {n}"))?;
        per_member.push(
            outcome
                .optimal_basics
                .into_iter()
                .map(|bp| bp.support)
                .collect::<Vec<_>>(),
        );
    }
    Ok(usc_selections(
        family.limit(),
        &per_member,
        Some(&limit_value),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcavityRow {
    pub index: usize,
    pub t: Rational,
    pub value_first: Rational,
    pub value_second: Rational,
    pub value_mix: Rational,
    pub combination: Rational,
    pub holds: bool,
    pub strict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcavityReport {
    pub rows: Vec<ConcavityRow>,
    pub all_hold: bool,
    pub any_strict: bool,
}

/// Checks `V(p, A, t b1 + (1-t) b2) >= t V(p, A, b1) + (1-t) V(p, A, b2)`
/// exactly for each triple; with fixed `(p, A)` this is the concavity of `V`
/// in the rhs.
pub fn check_concavity(
    objective: &RationalVector,
    matrix: &RationalMatrix,
    triples: &[(RationalVector, RationalVector, Rational)],
    cap: &EnumCap,
) -> Result<ConcavityReport> {
    let mut rows = Vec::with_capacity(triples.len());
    let mut all_hold = true;
    let mut any_strict = false;
    for (index, (b1, b2, t)) in triples.iter().enumerate() {
        if !(t.is_positive() && t < &Rational::one()) {
            return Err(Error::Value(format!(
                "triple {index}: t must lie strictly between 0 and 1, got {t}"
            )));
        }
        let one_minus_t = Rational::one() - t;
        let value_of = |rhs: RationalVector, which: &str| -> Result<Rational> {
            let problem = LpProblem::new(objective.clone(), matrix.clone(), rhs)?;
            let outcome = solve_optimal(&problem, cap, &format!("triple {index}: {which}"))?;
            Ok(outcome.value.expect("optimal outcome has a value"))
        };
        let value_first = value_of(b1.clone(), "first rhs")?;
        let value_second = value_of(b2.clone(), "second rhs")?;
        let mix = b1.scale(t).add(&b2.scale(&one_minus_t));
        let value_mix = value_of(mix, "mixed rhs")?;
        let combination = &(t * &value_first) + &(&one_minus_t * &value_second);
        let holds = value_mix >= combination;
        let strict = value_mix > combination;
        all_hold &= holds;
        any_strict |= strict;
        rows.push(ConcavityRow {
            index,
            t: t.clone(),
            value_first,
            value_second,
            value_mix,
            combination,
            holds,
            strict,
        });
    }
    Ok(ConcavityReport {
        rows,
        all_hold,
        any_strict,
    })
}

/// The family of Example 1: members `max (1/N) x1` subject to
/// `(1/N) x1 + x2 = 1`, converging to `p = (0,0)`, `A = (0|1)`, `b = (1)`.
pub fn example1_family() -> ProblemFamily {
    ProblemFamily::new(
        LpProblem::new(
            RationalVector::from_ints(&[0, 0]),
            RationalMatrix::from_int_rows(&[&[0, 1]]),
            RationalVector::from_ints(&[1]),
        )
        .expect("limit problem is well-formed"),
        RationalVector::from_ints(&[1, 0]),
        RationalMatrix::from_int_rows(&[&[1, 0]]),
        RationalVector::from_ints(&[0]),
    )
    .expect("deltas match the limit dimensions")
}

#[derive(Clone, Debug, Serialize)]
pub struct Example1Sample {
    pub n: u64,
    pub value: Rational,
    pub vertex: RationalVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example1Report {
    pub samples: Vec<Example1Sample>,
    pub limit_value: Rational,
    pub limit_vertex: RationalVector,
    pub unbounded_direction: RationalVector,
    pub value: ValueContinuityReport,
}

/// Reproduces Example 1 and asserts its published facts exactly:
/// `V(xi(N)) = 1` with `S*(xi(N)) = {(N, 0)}` for every sampled `N`, the
/// limit has `V = 0` with basic optimum `(0, 1)` and the unbounded optimal-
/// face direction `(1, 0)`, and the value gap does not vanish. A failed
/// assertion here is a defect, so it panics rather than returning an error.
pub fn run_example1(ns: &[u64], cap: &EnumCap) -> Result<Example1Report> {
    let ns = check_ns(ns)?;
    let family = example1_family();
    let mut samples = Vec::with_capacity(ns.len());
    for &n in &ns {
        let outcome = solve_optimal(&family.instantiate(n), cap, &format!("member N = {n}"))?;
        let value = outcome.value.clone().expect("optimal outcome has a value");
        assert_eq!(value, Rational::one(), "V(xi({n})) must be 1");
        assert_eq!(
            outcome.optimal_basics.len(),
            1,
            "S*(xi({n})) must be a single vertex"
        );
        let vertex = outcome.optimal_basics[0].x.clone();
        let expected = RationalVector::new(vec![
            Rational::from_parts(n.into(), 1.into()).unwrap(),
            Rational::zero(),
        ]);
        assert_eq!(vertex, expected, "S*(xi({n})) must be {{({n}, 0)}}");
        samples.push(Example1Sample { n, value, vertex });
    }
    let limit_outcome = solve_optimal(family.limit(), cap, "limit problem")?;
    let limit_value = limit_outcome
        .value
        .clone()
        .expect("optimal outcome has a value");
    assert_eq!(limit_value, Rational::zero(), "V at the limit must be 0");
    let limit_vertex = limit_outcome.optimal_basics[0].x.clone();
    assert_eq!(limit_vertex, RationalVector::from_ints(&[0, 1]));
    let (extent, unbounded_direction) = optimal_face_direction(family.limit(), cap)?;
    assert!(
        extent.is_positive(),
        "the limit optimal face must be unbounded"
    );
    assert_eq!(unbounded_direction, RationalVector::from_ints(&[1, 0]));
    let value = probe_value_continuity(&family, &ns, cap)?;
    assert!(
        !value.value_gap_vanishing,
        "the Example 1 value gap must not vanish"
    );
    Ok(Example1Report {
        samples,
        limit_value,
        limit_vertex,
        unbounded_direction,
        value,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub n: u64,
    pub value: Rational,
    pub gap: Rational,
    /// Squared distance to the nearest member optimum, one entry per limit
    /// vertex (in `limit_vertices` order).
    pub dist_sq: Vec<Rational>,
}

/// Full report over one family: value continuity, lsc of solutions, and the
/// two usc probes, with one merged sample row per `N`.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub family: ProblemFamily,
    pub limit_value: Rational,
    pub limit_vertices: Vec<RationalVector>,
    pub samples: Vec<ProbeSample>,
    pub value_decay: DecayCheck,
    pub value_gap_vanishing: bool,
    pub lsc: LscReport,
    pub usc_feasible: UscReport,
    pub usc_solutions: UscReport,
}

pub fn probe_family(family: &ProblemFamily, ns: &[u64], cap: &EnumCap) -> Result<ProbeReport> {
    let ns = check_ns(ns)?;
    let value = probe_value_continuity(family, &ns, cap)?;
    let lsc = probe_lsc_solutions(family, &ns, cap)?;
    let usc_feasible = probe_usc_feasible(family, &ns, cap)?;
    let usc_solutions = probe_usc_solutions(family, &ns, cap)?;
    let limit_vertices: Vec<RationalVector> =
        lsc.per_vertex.iter().map(|v| v.vertex.clone()).collect();
    let samples = value
        .samples
        .iter()
        .enumerate()
        .map(|(row, s)| ProbeSample {
            n: s.n,
            value: s.value.clone(),
            gap: s.gap.clone(),
            dist_sq: lsc
                .per_vertex
                .iter()
                .map(|v| v.samples[row].1.clone())
                .collect(),
        })
        .collect();
    Ok(ProbeReport {
        family: family.clone(),
        limit_value: value.limit_value.clone(),
        limit_vertices,
        samples,
        value_decay: value.decay.clone(),
        value_gap_vanishing: value.value_gap_vanishing,
        lsc,
        usc_feasible,
        usc_solutions,
    })
}

/// CSV export: one row per `N` with the value, the gap, and the squared
/// distance per limit vertex.
pub fn probe_report_csv(report: &ProbeReport) -> String {
    let mut out = String::from("n,value,gap");
    for k in 1..=report.limit_vertices.len() {
        out.push_str(&format!(",dist_sq_{k}"));
    }
    out.push('\n');
    for sample in &report.samples {
        out.push_str(&format!("{},{},{}", sample.n, sample.value, sample.gap));
        for d in &sample.dist_sq {
            out.push_str(&format!(",{d}"));
        }
        out.push('\n');
    }
    out
}
