//! Closed-form theta-interval ranging for rhs perturbations `b + theta*db`
//! and objective perturbations `p + theta*dp`.
//!
//! Both intervals come from the same mechanism: the fixed optimal basis stays
//! KKT-certified while the perturbed data keeps its side of the conditions
//! nonnegative, which bounds theta by ratios over the basis inverse. In the
//! rhs case primal feasibility of `B^-1 (b + theta*db)` is the binding side;
//! in the objective case it is dual feasibility on the nonbasic columns.
//! Empty ratio sets mean no blocking row or column: an empty max is `-inf`,
//! an empty min is `+inf`. Inside the interval the optimal value is exactly
//! linear in theta.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, RationalVector};
use crate::model::{LpProblem, PerturbationRay};
use crate::rational::{ExtendedRational, Rational};
use crate::solver::{self, BasicPoint, EnumCap};

/// Ranging interval around theta = 0 with the exact value slope.
///
/// Invariant: `lo <= 0 <= hi`. For a nondegenerate basis the inequalities
/// are strict; a degenerate one may collapse an endpoint to zero, which is
/// reported via `degenerate` rather than widened by basis switching.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaInterval {
    pub lo: ExtendedRational,
    pub hi: ExtendedRational,
    pub slope: Rational,
    pub base_value: Rational,
    pub basic_point: BasicPoint,
    pub degenerate: bool,
}

impl ThetaInterval {
    pub fn contains(&self, theta: &Rational) -> bool {
        self.lo.le_rational(theta) && self.hi.ge_rational(theta)
    }

    pub fn predicted_value(&self, theta: &Rational) -> Rational {
        &self.base_value + &(theta * &self.slope)
    }
}

impl Serialize for ThetaInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ThetaInterval", 5)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        st.serialize_field("slope", &self.slope)?;
        st.serialize_field("base_value", &self.base_value)?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

/// Shared preamble for both ranging directions: the point must carry a
/// square nonsingular basis and pass an exact KKT check. The check runs on
/// the basis-formula dual, not on any stored `y`: the interval algebra is
/// about this basis staying optimal, so this basis must certify the point.
fn checked_basis_inverse(
    problem: &LpProblem,
    point: &BasicPoint,
) -> Result<(linalg::RationalMatrix, RationalVector)> {
    let m = problem.num_constraints();
    if point.basis_cols.len() != m {
        return Err(Error::RectangularBasis);
    }
    let basis = problem.matrix().select_columns(&point.basis_cols);
    let basis_inv = linalg::invert(&basis).map_err(|_| Error::SingularBasis)?;
    let y = solver::dual_from_basis(problem, point)?;
    if !solver::verify_kkt(problem, &point.x, &y)? {
        return Err(Error::NotOptimalBasic);
    }
    Ok((basis_inv, y))
}

fn ratio_bounds(
    ratios: impl Iterator<Item = (Rational, Rational)>,
) -> (ExtendedRational, ExtendedRational) {
    // (numerator, denominator) pairs; positive denominators bound from below,
    // negative ones from above, zero denominators do not constrain theta.
    let mut lo = ExtendedRational::NegInf;
    let mut hi = ExtendedRational::PosInf;
    for (num, den) in ratios {
        if den.is_zero() {
            continue;
        }
        let ratio = num / &den;
        if den.is_positive() {
            if !lo.ge_rational(&ratio) {
                lo = ExtendedRational::Finite(ratio);
            }
        } else if !hi.le_rational(&ratio) {
            hi = ExtendedRational::Finite(ratio);
        }
    }
    (lo, hi)
}

/// Rhs ranging at an optimal basic point: for `b + theta*db`,
/// `lo = max { -[B^-1]_i b / [B^-1]_i db | [B^-1]_i db > 0 }`,
/// `hi = min` over the negative rows of the same ratio, and the value slope
/// is `p_B^T B^-1 db`.
pub fn rhs_interval(
    problem: &LpProblem,
    point: &BasicPoint,
    delta_rhs: &RationalVector,
) -> Result<ThetaInterval> {
    if delta_rhs.dim() != problem.num_constraints() {
        return Err(Error::DimensionMismatch(format!(
            "delta b has dim {}, problem has {} rows",
            delta_rhs.dim(),
            problem.num_constraints()
        )));
    }
    if delta_rhs.is_zero() {
        return Err(Error::ZeroDelta);
    }
    let (basis_inv, _) = checked_basis_inverse(problem, point)?;
    let x_basis = basis_inv.mul_vector(problem.rhs());
    let shift = basis_inv.mul_vector(delta_rhs);
    let (lo, hi) = ratio_bounds(
        (0..problem.num_constraints()).map(|i| (-x_basis.get(i), shift.get(i).clone())),
    );
    let p_basis = problem.objective().select(&point.basis_cols);
    Ok(ThetaInterval {
        lo,
        hi,
        slope: p_basis.dot(&shift),
        base_value: problem.value_at(&point.x),
        basic_point: point.clone(),
        degenerate: x_basis.iter().any(Rational::is_zero),
    })
}

/// Objective ranging at an optimal basic point: for `p + theta*dp` and each
/// nonbasic column `E^j`, with `d_j = dp_B^T B^-1 E^j - dp_j` and
/// `r_j = p_j - p_B^T B^-1 E^j`, `lo = max { r_j/d_j | d_j > 0 }`,
/// `hi = min { r_j/d_j | d_j < 0 }`, and the value slope is `dp_B^T B^-1 b`.
pub fn objective_interval(
    problem: &LpProblem,
    point: &BasicPoint,
    delta_objective: &RationalVector,
) -> Result<ThetaInterval> {
    if delta_objective.dim() != problem.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "delta p has dim {}, problem has {} columns",
            delta_objective.dim(),
            problem.num_vars()
        )));
    }
    if delta_objective.is_zero() {
        return Err(Error::ZeroDelta);
    }
    let (basis_inv, _) = checked_basis_inverse(problem, point)?;
    let p_basis = problem.objective().select(&point.basis_cols);
    let dp_basis = delta_objective.select(&point.basis_cols);
    let nonbasic: Vec<usize> = (0..problem.num_vars())
        .filter(|j| !point.basis_cols.contains(j))
        .collect();
    let mut degenerate = false;
    let mut ratios = Vec::with_capacity(nonbasic.len());
    for &j in &nonbasic {
        let reduced_col = basis_inv.mul_vector(&problem.matrix().column(j));
        let blocking = dp_basis.dot(&reduced_col) - delta_objective.get(j);
        let residual = problem.objective().get(j) - &p_basis.dot(&reduced_col);
        if residual.is_zero() {
            degenerate = true;
        }
        ratios.push((residual, blocking));
    }
    let (lo, hi) = ratio_bounds(ratios.into_iter());
    let x_basis = basis_inv.mul_vector(problem.rhs());
    Ok(ThetaInterval {
        lo,
        hi,
        slope: dp_basis.dot(&x_basis),
        base_value: problem.value_at(&point.x),
        basic_point: point.clone(),
        degenerate,
    })
}

/// One row of the verification table: the perturbed problem re-solved from
/// scratch at `theta` against the interval's linear prediction.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaSample {
    pub theta: Rational,
    pub interior: bool,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    pub predicted: Rational,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RangingReport {
    pub interval: ThetaInterval,
    pub samples: Vec<ThetaSample>,
}

/// Re-solves the perturbed problem at each sample. Samples inside
/// `[lo, hi]` must be optimal with value exactly `base + theta*slope`;
/// a mismatch is a `LinearityViolation`. Exterior samples are reported
/// only — outside the interval the formula is sufficient, not necessary.
pub fn verify_interval(
    problem: &LpProblem,
    ray: &PerturbationRay,
    interval: &ThetaInterval,
    theta_samples: &[Rational],
    cap: &EnumCap,
) -> Result<RangingReport> {
    let mut thetas = theta_samples.to_vec();
    thetas.sort();
    thetas.dedup();
    let mut samples = Vec::with_capacity(thetas.len());
    for theta in thetas {
        let perturbed = ray.apply(problem, &theta)?;
        let outcome = solver::solve(&perturbed, cap)?;
        let interior = interval.contains(&theta);
        let predicted = interval.predicted_value(&theta);
        let matches = outcome.value.as_ref() == Some(&predicted);
        if interior && !matches {
            return Err(Error::LinearityViolation {
                theta: theta.to_string(),
                actual: match &outcome.value {
                    Some(v) => v.to_string(),
                    None => outcome.status.as_str().to_string(),
                },
                predicted: predicted.to_string(),
            });
        }
        samples.push(ThetaSample {
            theta,
            interior,
            status: outcome.status.as_str(),
            value: outcome.value,
            predicted,
            matches,
        });
    }
    Ok(RangingReport {
        interval: interval.clone(),
        samples,
    })
}

/// Default verification grid `{lo, lo/2, 0, hi/2, hi}` restricted to finite
/// endpoints, sorted and deduplicated.
pub fn default_theta_grid(interval: &ThetaInterval) -> Vec<Rational> {
    let half = Rational::ratio(1, 2);
    let mut grid = vec![Rational::zero()];
    if let Some(lo) = interval.lo.finite() {
        grid.push(lo.clone());
        grid.push(lo * &half);
    }
    if let Some(hi) = interval.hi.finite() {
        grid.push(hi.clone());
        grid.push(hi * &half);
    }
    grid.sort();
    grid.dedup();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;
    use crate::solver::solve;

    fn problem(p: &[i64], a: &[&[i64]], b: &[i64]) -> LpProblem {
        LpProblem::new(
            RationalVector::from_ints(p),
            RationalMatrix::from_int_rows(a),
            RationalVector::from_ints(b),
        )
        .unwrap()
    }

    fn representative(problem: &LpProblem) -> BasicPoint {
        solve(problem, &EnumCap::default())
            .unwrap()
            .representative()
            .cloned()
            .expect("optimal problem")
    }

    #[test]
    fn rhs_worked_example_identity_basis() {
        // B = I2, b = (1, 2), p_B = (1, 1), db = (1, -1):
        // ratios are -1/1 and -2/(-1), so lo = -1, hi = 2, slope = 0.
        let p = problem(&[1, 1], &[&[1, 0], &[0, 1]], &[1, 2]);
        let bp = representative(&p);
        let delta = RationalVector::from_ints(&[1, -1]);
        let interval = rhs_interval(&p, &bp, &delta).unwrap();
        assert_eq!(
            interval.lo,
            ExtendedRational::Finite(Rational::from_int(-1))
        );
        assert_eq!(interval.hi, ExtendedRational::Finite(Rational::from_int(2)));
        assert_eq!(interval.slope, Rational::zero());
        assert_eq!(interval.base_value, Rational::from_int(3));
        assert!(!interval.degenerate);
        // Re-solve at {-1, 0, 1, 2}: constant value 3 throughout.
        let report = verify_interval(
            &p,
            &PerturbationRay::Rhs(delta),
            &interval,
            &[
                Rational::from_int(-1),
                Rational::zero(),
                Rational::one(),
                Rational::from_int(2),
            ],
            &EnumCap::default(),
        )
        .unwrap();
        assert!(report.samples.iter().all(|s| s.matches && s.interior));
    }

    #[test]
    fn rhs_scaling_delta_equals_rhs() {
        // db = b: every positive row ratio is -1, no negative rows:
        // lo = -1, hi = +inf, slope = V.
        let p = problem(&[1, 1], &[&[1, 0], &[0, 1]], &[1, 2]);
        let bp = representative(&p);
        let interval = rhs_interval(&p, &bp, p.rhs()).unwrap();
        assert_eq!(
            interval.lo,
            ExtendedRational::Finite(Rational::from_int(-1))
        );
        assert_eq!(interval.hi, ExtendedRational::PosInf);
        assert_eq!(interval.slope, Rational::from_int(3));
    }

    #[test]
    fn rhs_example1_at_n1() {
        // B = (1), db = (1): lo = -1, hi = +inf, slope = 1; V(theta) = 1 + theta.
        let p = problem(&[1, 0], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        let delta = RationalVector::from_ints(&[1]);
        let interval = rhs_interval(&p, &bp, &delta).unwrap();
        assert_eq!(
            interval.lo,
            ExtendedRational::Finite(Rational::from_int(-1))
        );
        assert_eq!(interval.hi, ExtendedRational::PosInf);
        assert_eq!(interval.slope, Rational::one());
        let report = verify_interval(
            &p,
            &PerturbationRay::Rhs(delta),
            &interval,
            &[
                Rational::from_int(-1),
                Rational::ratio(-1, 2),
                Rational::zero(),
                Rational::from_int(5),
            ],
            &EnumCap::default(),
        )
        .unwrap();
        for s in &report.samples {
            assert_eq!(s.value.as_ref(), Some(&(&Rational::one() + &s.theta)));
        }
    }

    #[test]
    fn objective_worked_example() {
        // max 2x1 + x2 s.t. x1 + x2 = 1 at (1, 0), dp = (0, 1):
        // d_2 = -1, r_2 = -1, interval (-inf, 1], slope 0.
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        let delta = RationalVector::from_ints(&[0, 1]);
        let interval = objective_interval(&p, &bp, &delta).unwrap();
        assert_eq!(interval.lo, ExtendedRational::NegInf);
        assert_eq!(interval.hi, ExtendedRational::Finite(Rational::one()));
        assert_eq!(interval.slope, Rational::zero());
        assert_eq!(interval.base_value, Rational::from_int(2));
        // theta = 2 is exterior; re-solving gives V = 3, not 2: the bound is
        // tight and exterior mismatches are reported, not errors.
        let report = verify_interval(
            &p,
            &PerturbationRay::Objective(delta),
            &interval,
            &[Rational::one(), Rational::from_int(2)],
            &EnumCap::default(),
        )
        .unwrap();
        assert!(report.samples[0].interior && report.samples[0].matches);
        assert!(!report.samples[1].interior);
        assert_eq!(report.samples[1].value, Some(Rational::from_int(3)));
        assert!(!report.samples[1].matches);
    }

    #[test]
    fn objective_scaling_delta_equals_objective() {
        // dp = p: scaling the objective scales the value, V((1+theta)p) =
        // (1+theta) V for theta down to -1.
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        let interval = objective_interval(&p, &bp, p.objective()).unwrap();
        assert_eq!(
            interval.lo,
            ExtendedRational::Finite(Rational::from_int(-1))
        );
        assert_eq!(interval.hi, ExtendedRational::PosInf);
        assert_eq!(interval.slope, Rational::from_int(2));
        let grid = [
            Rational::from_int(-1),
            Rational::ratio(-1, 2),
            Rational::zero(),
            Rational::from_int(3),
        ];
        let report = verify_interval(
            &p,
            &PerturbationRay::Objective(p.objective().clone()),
            &interval,
            &grid,
            &EnumCap::default(),
        )
        .unwrap();
        for s in &report.samples {
            let expected = (&Rational::one() + &s.theta) * Rational::from_int(2);
            assert_eq!(s.value.as_ref(), Some(&expected));
        }
    }

    #[test]
    fn objective_no_nonbasic_columns_is_unbounded_interval() {
        // n = m with B = I: no nonbasic column constrains theta.
        let p = problem(&[1, 1], &[&[1, 0], &[0, 1]], &[1, 2]);
        let bp = representative(&p);
        let delta = RationalVector::from_ints(&[1, 0]);
        let interval = objective_interval(&p, &bp, &delta).unwrap();
        assert_eq!(interval.lo, ExtendedRational::NegInf);
        assert_eq!(interval.hi, ExtendedRational::PosInf);
        assert_eq!(interval.slope, Rational::one());
    }

    #[test]
    fn degenerate_rhs_interval_may_collapse() {
        // b = (1, 0): the vertex (1, 0) is degenerate; with db = (0, -1) the
        // zero basis coordinate blocks immediately: hi = 0.
        let p = problem(&[1, 0], &[&[1, 0], &[0, 1]], &[1, 0]);
        let bp = representative(&p);
        let interval = rhs_interval(&p, &bp, &RationalVector::from_ints(&[0, -1])).unwrap();
        assert!(interval.degenerate);
        assert_eq!(interval.lo, ExtendedRational::NegInf);
        assert_eq!(interval.hi, ExtendedRational::Finite(Rational::zero()));
    }

    #[test]
    fn error_paths() {
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        assert!(matches!(
            rhs_interval(&p, &bp, &RationalVector::from_ints(&[0])),
            Err(Error::ZeroDelta)
        ));
        // A non-optimal basic point fails the KKT gate.
        let not_optimal = BasicPoint {
            x: RationalVector::from_ints(&[0, 1]),
            support: vec![1],
            basis_cols: vec![1],
            y: None,
            degenerate: false,
        };
        assert!(matches!(
            rhs_interval(&p, &not_optimal, &RationalVector::from_ints(&[1])),
            Err(Error::NotOptimalBasic)
        ));
        // rank(A) < m: only a rectangular basis exists.
        let flat = problem(&[1], &[&[1], &[1]], &[1, 1]);
        let bp = representative(&flat);
        assert!(bp.degenerate);
        assert!(matches!(
            rhs_interval(&flat, &bp, &RationalVector::from_ints(&[1, 1])),
            Err(Error::RectangularBasis)
        ));
    }

    #[test]
    fn fabricated_interval_raises_linearity_violation() {
        // A wrong slope must be caught by the re-solve check, naming theta.
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        let delta = RationalVector::from_ints(&[1]);
        let mut interval = rhs_interval(&p, &bp, &delta).unwrap();
        interval.slope = Rational::from_int(17);
        let err = verify_interval(
            &p,
            &PerturbationRay::Rhs(delta),
            &interval,
            &[Rational::ratio(1, 2)],
            &EnumCap::default(),
        )
        .unwrap_err();
        match err {
            Error::LinearityViolation { theta, .. } => assert_eq!(theta, "1/2"),
            other => panic!("expected LinearityViolation, got {other:?}"),
        }
    }

    #[test]
    fn interval_json_shape() {
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let bp = representative(&p);
        let interval = objective_interval(&p, &bp, &RationalVector::from_ints(&[0, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&interval).unwrap(),
            r#"{"lo":"-inf","hi":"1","slope":"0","base_value":"2","degenerate":false}"#
        );
    }
}
