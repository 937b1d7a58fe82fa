//! Problem, dual, and convergent-family data model.
//!
//! A problem is the standard-form triple: maximize `p^T x` subject to
//! `A x = b`, `x >= 0`. Families are affine in `1/N`, which is enough to
//! express every convergent sequence this toolkit probes while keeping
//! instantiation exact.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, RationalVector};
use crate::rational::Rational;

/// Standard-form LP `max p^T x  s.t.  A x = b, x >= 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LpProblem {
    objective: RationalVector,
    matrix: RationalMatrix,
    rhs: RationalVector,
}

impl LpProblem {
    pub fn new(
        objective: RationalVector,
        matrix: RationalMatrix,
        rhs: RationalVector,
    ) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::Schema(
                "problem needs at least one row and one column".into(),
            ));
        }
        if objective.dim() != matrix.cols() {
            return Err(Error::Schema(format!(
                "objective has {} entries but the matrix has {} columns",
                objective.dim(),
                matrix.cols()
            )));
        }
        if rhs.dim() != matrix.rows() {
            return Err(Error::Schema(format!(
                "rhs has {} entries but the matrix has {} rows",
                rhs.dim(),
                matrix.rows()
            )));
        }
        Ok(LpProblem {
            objective,
            matrix,
            rhs,
        })
    }

    pub fn objective(&self) -> &RationalVector {
        &self.objective
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &RationalVector {
        &self.rhs
    }

    /// Number of variables `n`.
    pub fn num_vars(&self) -> usize {
        self.matrix.cols()
    }

    /// Number of equality constraints `m`.
    pub fn num_constraints(&self) -> usize {
        self.matrix.rows()
    }

    pub fn value_at(&self, x: &RationalVector) -> Rational {
        self.objective.dot(x)
    }

    /// Exact membership test for the feasible set: `A x = b` and `x >= 0`.
    pub fn is_feasible_point(&self, x: &RationalVector) -> bool {
        x.dim() == self.num_vars() && x.is_nonnegative() && self.matrix.mul_vector(x) == self.rhs
    }

    /// Same problem with a different rhs (dimensions preserved).
    pub fn with_rhs(&self, rhs: RationalVector) -> Result<Self> {
        Self::new(self.objective.clone(), self.matrix.clone(), rhs)
    }

    /// Same problem with a different objective (dimensions preserved).
    pub fn with_objective(&self, objective: RationalVector) -> Result<Self> {
        Self::new(objective, self.matrix.clone(), self.rhs.clone())
    }
}

impl Serialize for LpProblem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LpProblem", 3)?;
        s.serialize_field("p", &self.objective)?;
        s.serialize_field("A", &self.matrix.to_rows())?;
        s.serialize_field("b", &self.rhs)?;
        s.end()
    }
}

/// Dual view of a problem: minimize `y^T b` subject to `y^T A >= p^T`,
/// `y` free. Never stored independently, so its dimensions cannot drift.
#[derive(Clone, Copy)]
pub struct DualProblem<'a> {
    primal: &'a LpProblem,
}

impl<'a> DualProblem<'a> {
    /// Dimension of the dual variable `y`.
    pub fn num_vars(&self) -> usize {
        self.primal.num_constraints()
    }

    /// One inequality per primal variable.
    pub fn num_constraints(&self) -> usize {
        self.primal.num_vars()
    }

    pub fn objective_at(&self, y: &RationalVector) -> Rational {
        y.dot(self.primal.rhs())
    }

    /// Dual slack vector `y^T A - p^T`.
    pub fn slacks(&self, y: &RationalVector) -> RationalVector {
        let yta = self.primal.matrix().transpose().mul_vector(y);
        yta.sub(self.primal.objective())
    }

    pub fn is_feasible_point(&self, y: &RationalVector) -> bool {
        y.dim() == self.num_vars() && self.slacks(y).is_nonnegative()
    }

    pub fn primal(&self) -> &'a LpProblem {
        self.primal
    }
}

/// The dual of `problem` as a derived view.
pub fn dual_of(problem: &LpProblem) -> DualProblem<'_> {
    DualProblem { primal: problem }
}

/// Convergent problem sequence `xi(N) = limit + (1/N) * delta`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProblemFamily {
    limit: LpProblem,
    delta_objective: RationalVector,
    delta_matrix: RationalMatrix,
    delta_rhs: RationalVector,
}

impl ProblemFamily {
    pub fn new(
        limit: LpProblem,
        delta_objective: RationalVector,
        delta_matrix: RationalMatrix,
        delta_rhs: RationalVector,
    ) -> Result<Self> {
        if delta_objective.dim() != limit.num_vars()
            || delta_matrix.cols() != limit.num_vars()
            || delta_matrix.rows() != limit.num_constraints()
            || delta_rhs.dim() != limit.num_constraints()
        {
            return Err(Error::Schema(
                "family deltas must match the limit problem's dimensions".into(),
            ));
        }
        Ok(ProblemFamily {
            limit,
            delta_objective,
            delta_matrix,
            delta_rhs,
        })
    }

    /// Family with all deltas zero: every member equals the limit.
    pub fn constant(limit: LpProblem) -> Self {
        let n = limit.num_vars();
        let m = limit.num_constraints();
        ProblemFamily {
            delta_objective: RationalVector::zeros(n),
            delta_matrix: RationalMatrix::zeros(m, n),
            delta_rhs: RationalVector::zeros(m),
            limit,
        }
    }

    /// The member `xi(N)`, exactly. `N` must be at least 1.
    pub fn instantiate(&self, n: u64) -> LpProblem {
        assert!(n >= 1, "family members are indexed from N = 1");
        let eps = Rational::inv_of(n);
        LpProblem::new(
            self.limit
                .objective()
                .add(&self.delta_objective.scale(&eps)),
            self.limit.matrix().add(&self.delta_matrix.scale(&eps)),
            self.limit.rhs().add(&self.delta_rhs.scale(&eps)),
        )
        .expect("deltas were dimension-checked at construction")
    }

    pub fn limit(&self) -> &LpProblem {
        &self.limit
    }

    pub fn delta_objective(&self) -> &RationalVector {
        &self.delta_objective
    }

    pub fn delta_matrix(&self) -> &RationalMatrix {
        &self.delta_matrix
    }

    pub fn delta_rhs(&self) -> &RationalVector {
        &self.delta_rhs
    }
}

impl Serialize for ProblemFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ProblemFamily", 4)?;
        s.serialize_field("limit", &self.limit)?;
        s.serialize_field("delta_p", &self.delta_objective)?;
        s.serialize_field("delta_A", &self.delta_matrix.to_rows())?;
        s.serialize_field("delta_b", &self.delta_rhs)?;
        s.end()
    }
}

/// A single-direction perturbation: either the rhs ray `b + theta * delta_b`
/// or the objective ray `p + theta * delta_p`, never both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PerturbationRay {
    Rhs(RationalVector),
    Objective(RationalVector),
}

impl PerturbationRay {
    pub fn delta(&self) -> &RationalVector {
        match self {
            PerturbationRay::Rhs(d) | PerturbationRay::Objective(d) => d,
        }
    }

    /// The perturbed problem at magnitude `theta`.
    pub fn apply(&self, problem: &LpProblem, theta: &Rational) -> Result<LpProblem> {
        match self {
            PerturbationRay::Rhs(d) => problem.with_rhs(problem.rhs().add(&d.scale(theta))),
            PerturbationRay::Objective(d) => {
                problem.with_objective(problem.objective().add(&d.scale(theta)))
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    p: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    limit: RawProblem,
    delta_p: Vec<String>,
    #[serde(rename = "delta_A")]
    delta_a: Vec<Vec<String>>,
    delta_b: Vec<String>,
}

fn parse_rationals(raw: &[String]) -> Result<RationalVector> {
    raw.iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Rational>>>()
        .map(RationalVector::new)
}

fn parse_matrix(raw: &[Vec<String>]) -> Result<RationalMatrix> {
    let rows = raw
        .iter()
        .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

fn problem_from_raw(raw: RawProblem) -> Result<LpProblem> {
    LpProblem::new(
        parse_rationals(&raw.p)?,
        parse_matrix(&raw.a)?,
        parse_rationals(&raw.b)?,
    )
}

/// Parses the problem JSON document
/// `{"p": [rational...], "A": [[rational...]...], "b": [rational...]}`.
///
/// Structural problems (missing field, ragged matrix, dimension mismatch)
/// are `Schema` errors; malformed rational strings are `Value` errors.
pub fn parse_problem(text: &str) -> Result<LpProblem> {
    let raw: RawProblem = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    problem_from_raw(raw)
}

/// Canonical serialization; `parse_problem` round-trips it bit-identically.
pub fn serialize_problem(problem: &LpProblem) -> String {
    serde_json::to_string(problem).expect("problem serialization cannot fail")
}

/// Parses the family JSON document
/// `{"limit": problem, "delta_p": [...], "delta_A": [[...]], "delta_b": [...]}`.
/// All-zero deltas are fine and describe a constant family.
pub fn parse_family(text: &str) -> Result<ProblemFamily> {
    let raw: RawFamily = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    ProblemFamily::new(
        problem_from_raw(raw.limit)?,
        parse_rationals(&raw.delta_p)?,
        parse_matrix(&raw.delta_a)?,
        parse_rationals(&raw.delta_b)?,
    )
}

pub fn serialize_family(family: &ProblemFamily) -> String {
    serde_json::to_string(family).expect("family serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1_family() -> ProblemFamily {
        // limit p = (0,0), A = (0 | 1), b = (1); deltas p = (1,0), A = (1 | 0), b = (0)
        ProblemFamily::new(
            LpProblem::new(
                RationalVector::from_ints(&[0, 0]),
                RationalMatrix::from_int_rows(&[&[0, 1]]),
                RationalVector::from_ints(&[1]),
            )
            .unwrap(),
            RationalVector::from_ints(&[1, 0]),
            RationalMatrix::from_int_rows(&[&[1, 0]]),
            RationalVector::from_ints(&[0]),
        )
        .unwrap()
    }

    #[test]
    fn parse_minimal_problem() {
        let p = parse_problem(r#"{"p":["1"],"A":[["1"]],"b":["1"]}"#).unwrap();
        assert_eq!(p.num_vars(), 1);
        assert_eq!(p.num_constraints(), 1);
        assert_eq!(p.objective().get(0), &Rational::one());
    }

    #[test]
    fn parse_example1_at_n2() {
        let p = parse_problem(r#"{"p":["1/2","0"],"A":[["1/2","1"]],"b":["1"]}"#).unwrap();
        assert_eq!(p, example1_family().instantiate(2));
    }

    #[test]
    fn ragged_matrix_is_schema_error() {
        let err =
            parse_problem(r#"{"p":["1","0"],"A":[["1","2"],["3"]],"b":["1","1"]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema(_)), "got {err:?}");
    }

    #[test]
    fn missing_field_is_schema_error() {
        let err = parse_problem(r#"{"p":["1"],"A":[["1"]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn malformed_rational_is_value_error() {
        let err = parse_problem(r#"{"p":["x"],"A":[["1"]],"b":["1"]}"#).unwrap_err();
        assert!(matches!(err, Error::Value(_)));
        let err = parse_problem(r#"{"p":["1/0"],"A":[["1"]],"b":["1"]}"#).unwrap_err();
        assert!(matches!(err, Error::Value(_)));
    }

    #[test]
    fn serialize_parse_round_trip() {
        let doc = r#"{"p":["1/2","0"],"A":[["1/2","1"]],"b":["1"]}"#;
        assert_eq!(serialize_problem(&parse_problem(doc).unwrap()), doc);
    }

    #[test]
    fn instantiate_constant_family() {
        let limit = parse_problem(r#"{"p":["2","1"],"A":[["1","1"]],"b":["1"]}"#).unwrap();
        let family = ProblemFamily::constant(limit.clone());
        assert_eq!(family.instantiate(1), limit);
        assert_eq!(family.instantiate(1000), limit);
    }

    #[test]
    fn instantiate_example1() {
        let family = example1_family();
        // N = 1: max x1 s.t. x1 + x2 = 1
        let n1 = family.instantiate(1);
        assert_eq!(n1.objective(), &RationalVector::from_ints(&[1, 0]));
        assert_eq!(n1.matrix(), &RationalMatrix::from_int_rows(&[&[1, 1]]));
        // N = 4: p = (1/4, 0), A = (1/4 | 1)
        let n4 = family.instantiate(4);
        assert_eq!(n4.objective().get(0), &Rational::ratio(1, 4));
        assert_eq!(n4.matrix().get(0, 0), &Rational::ratio(1, 4));
        assert_eq!(n4.matrix().get(0, 1), &Rational::one());
    }

    #[test]
    fn convergence_residuals_scale_exactly() {
        let family = example1_family();
        for n in [1u64, 3, 16, 1000] {
            let inst = family.instantiate(n);
            let n_sq_inv = Rational::inv_of(n).squared();
            assert_eq!(
                inst.objective()
                    .sub(family.limit().objective())
                    .norm_squared(),
                family.delta_objective().norm_squared() * &n_sq_inv
            );
            assert_eq!(
                inst.matrix().sub(family.limit().matrix()).norm_squared(),
                family.delta_matrix().norm_squared() * &n_sq_inv
            );
            assert_eq!(
                inst.rhs().sub(family.limit().rhs()).norm_squared(),
                family.delta_rhs().norm_squared() * &n_sq_inv
            );
        }
    }

    #[test]
    fn dual_view_of_simple_problems() {
        // max x1 s.t. x1 = 1: dual is min y s.t. y >= 1
        let p = parse_problem(r#"{"p":["1"],"A":[["1"]],"b":["1"]}"#).unwrap();
        let d = dual_of(&p);
        assert_eq!(d.num_vars(), 1);
        assert!(d.is_feasible_point(&RationalVector::from_ints(&[1])));
        assert!(d.is_feasible_point(&RationalVector::from_ints(&[2])));
        assert!(!d.is_feasible_point(&RationalVector::new(vec![Rational::ratio(1, 2)])));

        // Example 1 at N = 1: dual is min y s.t. y >= 1 and y >= 0
        let n1 = example1_family().instantiate(1);
        let d1 = dual_of(&n1);
        assert!(d1.is_feasible_point(&RationalVector::from_ints(&[1])));
        assert!(!d1.is_feasible_point(&RationalVector::new(vec![Rational::ratio(1, 2)])));
        assert!(!d1.is_feasible_point(&RationalVector::from_ints(&[-1])));

        // Example 1 limit: constraints 0*y >= 0 and y >= 0, i.e. y >= 0
        let lim = example1_family().limit().clone();
        let dl = dual_of(&lim);
        assert!(dl.is_feasible_point(&RationalVector::from_ints(&[0])));
        assert!(dl.is_feasible_point(&RationalVector::from_ints(&[5])));
        assert!(!dl.is_feasible_point(&RationalVector::from_ints(&[-1])));
    }

    #[test]
    fn perturbation_ray_applies_to_one_component() {
        let p = parse_problem(r#"{"p":["2","1"],"A":[["1","1"]],"b":["1"]}"#).unwrap();
        let theta = Rational::from_int(3);
        let rhs = PerturbationRay::Rhs(RationalVector::from_ints(&[1]))
            .apply(&p, &theta)
            .unwrap();
        assert_eq!(rhs.rhs(), &RationalVector::from_ints(&[4]));
        assert_eq!(rhs.objective(), p.objective());
        let obj = PerturbationRay::Objective(RationalVector::from_ints(&[0, 1]))
            .apply(&p, &theta)
            .unwrap();
        assert_eq!(obj.objective(), &RationalVector::from_ints(&[2, 4]));
        assert_eq!(obj.rhs(), p.rhs());
    }
}
