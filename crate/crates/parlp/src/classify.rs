//! Per-problem regularity taxonomy and finite-sample boundedness witnesses.
//!
//! A problem is regular when some basic optimal point has strictly positive
//! dual slack on every column carrying a zero coordinate, and strongly
//! regular when every basic optimal point does. The dual used here is the
//! one the definitions state: `y^T = p_B^T B^-` over the support columns
//! themselves, with the pseudo-inverse applied literally when the support is
//! smaller than `m` (such cases are visible through the point's degeneracy
//! flag rather than silently re-based).
//!
//! Singleton-solvability is decided as: exactly one basic optimal point and
//! a zero recession extent of the optimal face. Domain-level boundedness
//! over an infinite family is not decidable here; `boundedness_witness`
//! reports the exact sup of selection norms over a finite sample instead.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, RationalVector};
use crate::model::{dual_of, LpProblem};
use crate::rational::Rational;
use crate::solver::{
    enumerate_basic_feasible, recession_direction, solve, EnumCap, SolveOutcome, SolveStatus,
};

/// Checkable evidence attached to each decided predicate. Column numbers are
/// one-based, matching the serialized point format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A point establishing the predicate (the regular point, the unique
    /// optimum, a feasible point).
    Point { x: RationalVector },
    /// A basic optimal point whose dual slack at `column` is not strictly
    /// positive even though the coordinate there is zero.
    Slack {
        x: RationalVector,
        column: usize,
        slack: Rational,
    },
    /// Two distinct basic optimal points.
    SecondVertex {
        first: RationalVector,
        second: RationalVector,
    },
    /// A nonzero recession direction (of the feasible set or of the optimal
    /// face, depending on the predicate).
    Direction { d: RationalVector },
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub feasible: bool,
    pub bounded_feasible: bool,
    pub regular: bool,
    pub strongly_regular: bool,
    pub singleton_solvable: bool,
    pub witnesses: BTreeMap<String, Witness>,
    pub status: SolveStatus,
}

/// The definition's dual at a basic point: `y^T = p_B^T B^-` over the
/// support columns only.
fn support_dual(problem: &LpProblem, support: &[usize]) -> RationalVector {
    let basis = problem.matrix().select_columns(support);
    let pinv = crate::linalg::pseudo_inverse(&basis)
        .expect("support columns of a basic point are independent");
    pinv.transpose()
        .mul_vector(&problem.objective().select(support))
}

/// First column with a zero coordinate whose dual slack is not strictly
/// positive, together with that slack.
fn strictness_failure(
    problem: &LpProblem,
    x: &RationalVector,
    support: &[usize],
) -> Option<(usize, Rational)> {
    let y = support_dual(problem, support);
    let slacks = dual_of(problem).slacks(&y);
    (0..problem.num_vars()).find_map(|j| {
        if x.get(j).is_zero() && !slacks.get(j).is_positive() {
            Some((j, slacks.get(j).clone()))
        } else {
            None
        }
    })
}

fn require_optimal(outcome: &SolveOutcome, what: &str) -> Result<()> {
    match outcome.status {
        SolveStatus::Optimal => Ok(()),
        other => Err(Error::NotOptimal(format!("{what} is {}", other.as_str()))),
    }
}

/// Regular: some basic optimal point has strictly positive dual slack on
/// every zero coordinate. Vacuously satisfied by a point without zeros.
pub fn is_regular(problem: &LpProblem, cap: &EnumCap) -> Result<(bool, Witness)> {
    let outcome = solve(problem, cap)?;
    require_optimal(&outcome, "problem")?;
    Ok(regular_witness(problem, &outcome))
}

fn regular_witness(problem: &LpProblem, outcome: &SolveOutcome) -> (bool, Witness) {
    let mut first_failure: Option<Witness> = None;
    for bp in &outcome.optimal_basics {
        match strictness_failure(problem, &bp.x, &bp.support) {
            None => return (true, Witness::Point { x: bp.x.clone() }),
            Some((column, slack)) => {
                first_failure.get_or_insert(Witness::Slack {
                    x: bp.x.clone(),
                    column: column + 1,
                    slack,
                });
            }
        }
    }
    (
        false,
        first_failure.expect("an optimal problem has at least one basic optimum"),
    )
}

/// Strongly regular: the strict-slack condition holds at every basic
/// optimal point.
pub fn is_strongly_regular(problem: &LpProblem, cap: &EnumCap) -> Result<(bool, Witness)> {
    let outcome = solve(problem, cap)?;
    require_optimal(&outcome, "problem")?;
    Ok(strongly_regular_witness(problem, &outcome))
}

fn strongly_regular_witness(problem: &LpProblem, outcome: &SolveOutcome) -> (bool, Witness) {
    for bp in &outcome.optimal_basics {
        if let Some((column, slack)) = strictness_failure(problem, &bp.x, &bp.support) {
            return (
                false,
                Witness::Slack {
                    x: bp.x.clone(),
                    column: column + 1,
                    slack,
                },
            );
        }
    }
    let representative = outcome
        .representative()
        .expect("an optimal problem has at least one basic optimum");
    (
        true,
        Witness::Point {
            x: representative.x.clone(),
        },
    )
}

/// Recession extent of the optimal face: maximum of `sum d_i` over
/// `{d | A d = 0, p^T d >= 0, 0 <= d <= 1}`, with a maximizing direction.
/// For an optimal problem every recession direction has `p^T d <= 0`, so the
/// constraint pins `p^T d = 0` and a positive extent witnesses an unbounded
/// optimal face.
pub fn optimal_face_direction(
    problem: &LpProblem,
    cap: &EnumCap,
) -> Result<(Rational, RationalVector)> {
    let (m, n) = (problem.num_constraints(), problem.num_vars());
    // Variables (d, s, u): A d = 0; d + s = 1; p^T d - u = 0.
    let mut aux = RationalMatrix::zeros(m + n + 1, 2 * n + 1);
    for i in 0..m {
        for j in 0..n {
            aux.set(i, j, problem.matrix().get(i, j).clone());
        }
    }
    for j in 0..n {
        aux.set(m + j, j, Rational::one());
        aux.set(m + j, n + j, Rational::one());
    }
    for j in 0..n {
        aux.set(m + n, j, problem.objective().get(j).clone());
    }
    aux.set(m + n, 2 * n, -Rational::one());
    let mut rhs = RationalVector::zeros(m + n + 1);
    for i in 0..n {
        rhs.set(m + i, Rational::one());
    }
    let mut objective = RationalVector::zeros(2 * n + 1);
    for j in 0..n {
        objective.set(j, Rational::one());
    }
    let aux_problem = LpProblem::new(objective.clone(), aux, rhs)
        .expect("auxiliary problem dimensions are consistent");
    let (best_value, maximizer) = crate::solver::argmax_vertex(&aux_problem, cap)?;
    let direction = RationalVector::new((0..n).map(|j| maximizer.get(j).clone()).collect());
    Ok((best_value, direction))
}

/// Singleton-solvable: exactly one basic optimal point and a zero optimal-
/// face recession extent. A bounded optimal face is the convex hull of its
/// basic points, so the two conditions together pin `S` to one point; the
/// midpoint oracle in the test suite cross-checks this decomposition.
pub fn is_singleton_solvable(problem: &LpProblem, cap: &EnumCap) -> Result<(bool, Witness)> {
    let outcome = solve(problem, cap)?;
    require_optimal(&outcome, "problem")?;
    singleton_witness(problem, &outcome, cap)
}

fn singleton_witness(
    problem: &LpProblem,
    outcome: &SolveOutcome,
    cap: &EnumCap,
) -> Result<(bool, Witness)> {
    if outcome.optimal_basics.len() > 1 {
        return Ok((
            false,
            Witness::SecondVertex {
                first: outcome.optimal_basics[0].x.clone(),
                second: outcome.optimal_basics[1].x.clone(),
            },
        ));
    }
    let (extent, direction) = optimal_face_direction(problem, cap)?;
    if extent.is_positive() {
        return Ok((false, Witness::Direction { d: direction }));
    }
    Ok((
        true,
        Witness::Point {
            x: outcome.optimal_basics[0].x.clone(),
        },
    ))
}

/// Bounded feasible set: zero recession extent for the all-ones objective.
/// The witness is a nonzero recession direction when unbounded.
pub fn is_bounded_feasible(problem: &LpProblem, cap: &EnumCap) -> Result<(bool, Option<Witness>)> {
    let basics = enumerate_basic_feasible(problem, cap)?;
    if basics.is_empty() {
        return Err(Error::Infeasible);
    }
    bounded_witness(problem, cap)
}

fn bounded_witness(problem: &LpProblem, cap: &EnumCap) -> Result<(bool, Option<Witness>)> {
    let ones = RationalVector::ones(problem.num_vars());
    let (extent, direction) = recession_direction(problem, &ones, cap)?;
    if extent.is_positive() {
        Ok((false, Some(Witness::Direction { d: direction })))
    } else {
        Ok((true, None))
    }
}

/// Full classification of one problem. Predicates that presuppose an
/// optimum are reported `false` without witnesses when the status is
/// infeasible or unbounded; an empty feasible set counts as bounded.
pub fn classify(problem: &LpProblem, cap: &EnumCap) -> Result<Classification> {
    let outcome = solve(problem, cap)?;
    let mut witnesses = BTreeMap::new();
    let feasible = !outcome.all_basics.is_empty();
    if !feasible {
        return Ok(Classification {
            feasible: false,
            bounded_feasible: true,
            regular: false,
            strongly_regular: false,
            singleton_solvable: false,
            witnesses,
            status: outcome.status,
        });
    }
    witnesses.insert(
        "feasible".into(),
        Witness::Point {
            x: outcome.all_basics[0].x.clone(),
        },
    );
    let (bounded_feasible, bounded_counter) = bounded_witness(problem, cap)?;
    if let Some(w) = bounded_counter {
        witnesses.insert("bounded_feasible".into(), w);
    }
    if outcome.status != SolveStatus::Optimal {
        return Ok(Classification {
            feasible,
            bounded_feasible,
            regular: false,
            strongly_regular: false,
            singleton_solvable: false,
            witnesses,
            status: outcome.status,
        });
    }
    let (regular, regular_w) = regular_witness(problem, &outcome);
    witnesses.insert("regular".into(), regular_w);
    let (strongly_regular, strong_w) = strongly_regular_witness(problem, &outcome);
    witnesses.insert("strongly_regular".into(), strong_w);
    let (singleton_solvable, singleton_w) = singleton_witness(problem, &outcome, cap)?;
    witnesses.insert("singleton_solvable".into(), singleton_w);
    Ok(Classification {
        feasible,
        bounded_feasible,
        regular,
        strongly_regular,
        singleton_solvable,
        witnesses,
        status: outcome.status,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundednessRow {
    pub index: usize,
    pub x: RationalVector,
    pub y: RationalVector,
    pub primal_norm_sq: Rational,
    pub pair_norm_sq: Rational,
}

/// Finite-sample witness report for the domain-level boundedness
/// properties: the exact sup of `||x||^2` and `||(x, y)||^2` over
/// minimum-norm optimal selections. A sup over a sample bounds nothing
/// beyond the sample; that is the honest computable surrogate.
#[derive(Clone, Debug, Serialize)]
pub struct BoundednessReport {
    pub problem_count: usize,
    pub selections: Vec<BoundednessRow>,
    pub sup_primal_norm_sq: Rational,
    pub sup_pair_norm_sq: Rational,
}

pub fn boundedness_witness(problems: &[LpProblem], cap: &EnumCap) -> Result<BoundednessReport> {
    let mut selections = Vec::with_capacity(problems.len());
    let mut sup_primal = Rational::zero();
    let mut sup_pair = Rational::zero();
    for (index, problem) in problems.iter().enumerate() {
        let outcome = solve(problem, cap)?;
        require_optimal(&outcome, &format!("problem {index}"))?;
        let selected = outcome
            .optimal_basics
            .iter()
            .min_by(|a, b| a.x.norm_squared().cmp(&b.x.norm_squared()))
            .expect("optimal problems have basic optima");
        let y = selected
            .y
            .clone()
            .expect("optimal basics carry certified duals");
        let primal_norm_sq = selected.x.norm_squared();
        let pair_norm_sq = &primal_norm_sq + &y.norm_squared();
        sup_primal = sup_primal.max(primal_norm_sq.clone());
        sup_pair = sup_pair.max(pair_norm_sq.clone());
        selections.push(BoundednessRow {
            index,
            x: selected.x.clone(),
            y,
            primal_norm_sq,
            pair_norm_sq,
        });
    }
    Ok(BoundednessReport {
        problem_count: problems.len(),
        selections,
        sup_primal_norm_sq: sup_primal,
        sup_pair_norm_sq: sup_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(p: &[i64], a: &[&[i64]], b: &[i64]) -> LpProblem {
        LpProblem::new(
            RationalVector::from_ints(p),
            RationalMatrix::from_int_rows(a),
            RationalVector::from_ints(b),
        )
        .unwrap()
    }

    fn example1_limit() -> LpProblem {
        problem(&[0, 0], &[&[0, 1]], &[1])
    }

    #[test]
    fn strict_slack_problem_is_regular_and_singleton() {
        let cap = EnumCap::default();
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let (regular, w) = is_regular(&p, &cap).unwrap();
        assert!(regular);
        assert_eq!(
            w,
            Witness::Point {
                x: RationalVector::from_ints(&[1, 0])
            }
        );
        let (strong, _) = is_strongly_regular(&p, &cap).unwrap();
        assert!(strong);
        let (singleton, _) = is_singleton_solvable(&p, &cap).unwrap();
        assert!(singleton);
    }

    #[test]
    fn tied_objective_is_none_of_the_three() {
        let cap = EnumCap::default();
        let p = problem(&[1, 1], &[&[1, 1]], &[1]);
        let (regular, w) = is_regular(&p, &cap).unwrap();
        assert!(!regular);
        // y = (1) makes every slack zero.
        assert!(matches!(w, Witness::Slack { ref slack, .. } if slack.is_zero()));
        assert!(!is_strongly_regular(&p, &cap).unwrap().0);
        let (singleton, w) = is_singleton_solvable(&p, &cap).unwrap();
        assert!(!singleton);
        assert!(matches!(w, Witness::SecondVertex { .. }));
    }

    #[test]
    fn example1_members_are_singleton_solvable() {
        let cap = EnumCap::default();
        for n in [1i64, 3, 9] {
            let inv = Rational::ratio(1, n);
            let member = LpProblem::new(
                RationalVector::new(vec![inv.clone(), Rational::zero()]),
                RationalMatrix::from_rows(vec![vec![inv, Rational::one()]]).unwrap(),
                RationalVector::from_ints(&[1]),
            )
            .unwrap();
            let (singleton, w) = is_singleton_solvable(&member, &cap).unwrap();
            assert!(singleton);
            let expected = RationalVector::from_ints(&[n, 0]);
            assert_eq!(w, Witness::Point { x: expected });
        }
    }

    #[test]
    fn example1_limit_classification() {
        let cap = EnumCap::default();
        let p = example1_limit();
        // p = 0 gives y = 0 and a zero slack on the zero column.
        let (regular, _) = is_regular(&p, &cap).unwrap();
        assert!(!regular);
        let (singleton, w) = is_singleton_solvable(&p, &cap).unwrap();
        assert!(!singleton);
        assert_eq!(
            w,
            Witness::Direction {
                d: RationalVector::from_ints(&[1, 0])
            }
        );
        let (bounded, w) = is_bounded_feasible(&p, &cap).unwrap();
        assert!(!bounded);
        assert_eq!(
            w,
            Some(Witness::Direction {
                d: RationalVector::from_ints(&[1, 0])
            })
        );
    }

    #[test]
    fn no_zero_coordinate_is_vacuously_regular() {
        let cap = EnumCap::default();
        let p = problem(&[0], &[&[1]], &[1]);
        let (strong, w) = is_strongly_regular(&p, &cap).unwrap();
        assert!(strong);
        assert_eq!(
            w,
            Witness::Point {
                x: RationalVector::from_ints(&[1])
            }
        );
    }

    #[test]
    fn bounded_feasible_cases() {
        let cap = EnumCap::default();
        assert!(
            is_bounded_feasible(&problem(&[0, 0], &[&[1, 1]], &[1]), &cap)
                .unwrap()
                .0
        );
        let (bounded, w) = is_bounded_feasible(&problem(&[0, 0], &[&[1, -1]], &[1]), &cap).unwrap();
        assert!(!bounded);
        assert_eq!(
            w,
            Some(Witness::Direction {
                d: RationalVector::from_ints(&[1, 1])
            })
        );
        assert!(matches!(
            is_bounded_feasible(&problem(&[1], &[&[1]], &[-1]), &cap),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn predicates_require_an_optimum() {
        let cap = EnumCap::default();
        let unbounded = problem(&[1], &[&[0]], &[0]);
        assert!(matches!(
            is_regular(&unbounded, &cap),
            Err(Error::NotOptimal(_))
        ));
        assert!(matches!(
            is_singleton_solvable(&unbounded, &cap),
            Err(Error::NotOptimal(_))
        ));
    }

    #[test]
    fn boundedness_witness_reports_sups() {
        let cap = EnumCap::default();
        let single = [problem(&[2, 1], &[&[1, 1]], &[1])];
        let report = boundedness_witness(&single, &cap).unwrap();
        assert_eq!(report.sup_primal_norm_sq, Rational::one());

        // Example 1 members for N in 1..=10: the only optimal selection is
        // (N, 0), so the sup grows to 100 — no uniform primal bound here.
        let members: Vec<LpProblem> = (1..=10u64)
            .map(|n| {
                let inv = Rational::inv_of(n);
                LpProblem::new(
                    RationalVector::new(vec![inv.clone(), Rational::zero()]),
                    RationalMatrix::from_rows(vec![vec![inv, Rational::one()]]).unwrap(),
                    RationalVector::from_ints(&[1]),
                )
                .unwrap()
            })
            .collect();
        let report = boundedness_witness(&members, &cap).unwrap();
        assert_eq!(report.sup_primal_norm_sq, Rational::from_int(100));

        let empty = boundedness_witness(&[], &cap).unwrap();
        assert_eq!(empty.problem_count, 0);
        assert_eq!(empty.sup_primal_norm_sq, Rational::zero());
        assert_eq!(empty.sup_pair_norm_sq, Rational::zero());
    }

    #[test]
    fn boundedness_witness_names_the_offending_index() {
        let cap = EnumCap::default();
        let problems = [
            problem(&[2, 1], &[&[1, 1]], &[1]),
            problem(&[1], &[&[0]], &[0]), // unbounded
        ];
        match boundedness_witness(&problems, &cap) {
            Err(Error::NotOptimal(msg)) => assert!(msg.contains("problem 1"), "{msg}"),
            other => panic!("expected NotOptimal, got {other:?}"),
        }
    }

    #[test]
    fn classify_aggregates_with_witnesses() {
        let cap = EnumCap::default();
        let c = classify(&problem(&[2, 1], &[&[1, 1]], &[1]), &cap).unwrap();
        assert!(c.feasible && c.bounded_feasible && c.regular && c.strongly_regular);
        assert!(c.singleton_solvable);
        assert!(c.witnesses.contains_key("regular"));

        let c = classify(&example1_limit(), &cap).unwrap();
        assert!(c.feasible && !c.bounded_feasible);
        assert!(!c.regular && !c.strongly_regular && !c.singleton_solvable);

        let c = classify(&problem(&[1], &[&[1]], &[-1]), &cap).unwrap();
        assert!(!c.feasible);
        assert_eq!(c.status, SolveStatus::Infeasible);
    }
}
