//! Complete exact solver at desk scale.
//!
//! Feasibility, optimality, and unboundedness are all decided from the set of
//! basic feasible points: a nonempty feasible set always contains one, the
//! optimum of a bounded problem is attained at one, and unboundedness shows
//! up as an improving direction of the recession box `A d = 0, 0 <= d <= 1`.
//! Every optimal point returned carries a KKT-certified dual vector.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, RationalMatrix, RationalVector};
use crate::model::{dual_of, LpProblem};
use crate::rational::Rational;

/// Hard limit on enumeration size. Exceeding it is an error, never a silent
/// approximation. Note that recession analysis enumerates an auxiliary
/// problem with `2n` columns and `m + n` rows, so `solve` needs those within
/// the cap as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumCap {
    pub max_cols: usize,
    pub max_rows: usize,
}

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap {
            max_cols: 20,
            max_rows: 12,
        }
    }
}

impl EnumCap {
    pub fn new(max_cols: usize, max_rows: usize) -> Self {
        EnumCap { max_cols, max_rows }
    }

    fn check(&self, problem: &LpProblem) -> Result<()> {
        if problem.num_vars() > self.max_cols || problem.num_constraints() > self.max_rows {
            return Err(Error::CapExceeded(format!(
                "problem is {}x{}, cap is {} rows x {} cols",
                problem.num_constraints(),
                problem.num_vars(),
                self.max_rows,
                self.max_cols
            )));
        }
        Ok(())
    }
}

/// A basic feasible point: `A x = b`, `x >= 0`, and the columns carrying the
/// positive coordinates are linearly independent.
///
/// `basis_cols` extends the support, lowest column index first, to a square
/// basis when `rank(A) = m`. When `rank(A) < m` no square extension exists;
/// the point then carries a maximal rectangular basis, duals come from the
/// pseudo-inverse, and `degenerate` is set (surfaced in JSON as
/// `"degenerate": true`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicPoint {
    pub x: RationalVector,
    /// Columns with `x_j > 0`, ascending, zero-based.
    pub support: Vec<usize>,
    /// Basis extension of the support, ascending, zero-based.
    pub basis_cols: Vec<usize>,
    /// Dual vector; present on optimal points returned by [`solve`], where it
    /// is always KKT-certified.
    pub y: Option<RationalVector>,
    pub degenerate: bool,
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}

impl Serialize for BasicPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = 3 + usize::from(self.y.is_some()) + usize::from(self.degenerate);
        let mut st = serializer.serialize_struct("BasicPoint", fields)?;
        st.serialize_field("x", &self.x)?;
        // Columns are reported one-based, matching the A^1..A^n convention.
        st.serialize_field("support", &one_based(&self.support))?;
        st.serialize_field("basis", &one_based(&self.basis_cols))?;
        if let Some(y) = &self.y {
            st.serialize_field("y", y)?;
        }
        if self.degenerate {
            st.serialize_field("degenerate", &true)?;
        }
        st.end()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveStatus {
    Infeasible,
    Unbounded,
    Optimal,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::Optimal => "optimal",
        }
    }
}

impl Serialize for SolveStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Result of [`solve`]. Output order is deterministic: basic points are
/// sorted lexicographically by support index set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Optimal value; present iff `status` is `Optimal`.
    pub value: Option<Rational>,
    /// The basic optimal points, each carrying a certified dual.
    pub optimal_basics: Vec<BasicPoint>,
    /// Every basic feasible point (empty iff infeasible).
    pub all_basics: Vec<BasicPoint>,
}

impl SolveOutcome {
    /// The representative optimal point: lexicographically smallest support.
    pub fn representative(&self) -> Option<&BasicPoint> {
        self.optimal_basics.first()
    }
}

impl Serialize for SolveOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let optimal = matches!(self.status, SolveStatus::Optimal);
        let fields = 2 + if optimal { 2 } else { 0 };
        let mut st = serializer.serialize_struct("SolveOutcome", fields)?;
        st.serialize_field("status", self.status.as_str())?;
        if let Some(v) = &self.value {
            st.serialize_field("value", v)?;
        }
        if optimal {
            st.serialize_field("optimal_basics", &self.optimal_basics)?;
        }
        st.serialize_field("basic_count", &self.all_basics.len())?;
        st.end()
    }
}

/// Backtracking row-echelon state over a growing independent column set.
///
/// Invariant: kept column `t` is reduced against the earlier ones, so it is
/// 1 at its own pivot row and 0 at every earlier pivot row; the rhs is
/// reduced the same way, so it is zero on all pivot rows and identically
/// zero exactly when it lies in the kept columns' span. Pushing and popping
/// touch O(m) state, which keeps the subset walk allocation-light. The
/// reduction loses the combination coefficients, so consistent nodes
/// re-solve their small system from the original data.
struct Echelon {
    /// Column indices in insertion (ascending) order.
    columns: Vec<usize>,
    /// (pivot row, reduced column), parallel to `columns`.
    reduced: Vec<(usize, RationalVector)>,
    rhs: RationalVector,
    /// Factor of the rhs eliminated at each push, kept to undo it.
    rhs_factors: Vec<Rational>,
    pivot_row_used: Vec<bool>,
}

impl Echelon {
    fn start(rhs: RationalVector) -> Self {
        let m = rhs.dim();
        Echelon {
            columns: Vec::new(),
            reduced: Vec::new(),
            rhs,
            rhs_factors: Vec::new(),
            pivot_row_used: vec![false; m],
        }
    }

    /// Pushes a column if it is independent of the kept ones.
    fn try_push(&mut self, col_index: usize, column: &RationalVector) -> bool {
        let mut v = column.clone();
        for (pr, rc) in &self.reduced {
            let factor = v.get(*pr).clone();
            if !factor.is_zero() {
                v.sub_scaled_in_place(&factor, rc);
            }
        }
        let Some(pivot_row) =
            (0..v.dim()).find(|&i| !self.pivot_row_used[i] && !v.get(i).is_zero())
        else {
            return false;
        };
        let scale = v.get(pivot_row).recip().expect("pivot entry is nonzero");
        v.scale_in_place(&scale);
        let factor = self.rhs.get(pivot_row).clone();
        if !factor.is_zero() {
            self.rhs.sub_scaled_in_place(&factor, &v);
        }
        self.columns.push(col_index);
        self.reduced.push((pivot_row, v));
        self.rhs_factors.push(factor);
        self.pivot_row_used[pivot_row] = true;
        true
    }

    fn pop(&mut self) {
        let (pivot_row, v) = self.reduced.pop().expect("pop matches a push");
        let factor = self.rhs_factors.pop().expect("pop matches a push");
        if !factor.is_zero() {
            self.rhs.add_scaled_in_place(&factor, &v);
        }
        self.pivot_row_used[pivot_row] = false;
        self.columns.pop();
    }

    fn is_consistent(&self) -> bool {
        self.rhs.is_zero()
    }

    fn saturated(&self) -> bool {
        self.pivot_row_used.iter().all(|&used| used)
    }
}

/// Unique solution of `A_cols x = rhs` for independent columns and a
/// consistent rhs (both guaranteed by the caller), by Gauss-Jordan on the
/// small augmented system.
fn solve_consistent_system(
    matrix: &RationalMatrix,
    cols: &[usize],
    rhs: &RationalVector,
) -> Vec<Rational> {
    let m = matrix.rows();
    let k = cols.len();
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            cols.iter()
                .map(|&j| matrix.get(i, j).clone())
                .chain([rhs.get(i).clone()])
                .collect()
        })
        .collect();
    let mut pivot_row_of = Vec::with_capacity(k);
    let mut next_row = 0usize;
    for col in 0..k {
        let pr = (next_row..m)
            .find(|&i| !aug[i][col].is_zero())
            .expect("columns are independent");
        aug.swap(next_row, pr);
        let inv = aug[next_row][col].recip().expect("pivot is nonzero");
        for entry in &mut aug[next_row][col..=k] {
            *entry = &*entry * &inv;
        }
        let pivot_row = aug[next_row][col..=k].to_vec();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, pivot) in row[col..=k].iter_mut().zip(&pivot_row) {
                *entry = &*entry - &(pivot * &factor);
            }
        }
        pivot_row_of.push(next_row);
        next_row += 1;
    }
    pivot_row_of.iter().map(|&r| aug[r][k].clone()).collect()
}

fn dfs_vertices(
    state: &mut Echelon,
    next_col: usize,
    columns: &[RationalVector],
    matrix: &RationalMatrix,
    rhs: &RationalVector,
    out: &mut BTreeMap<Vec<usize>, RationalVector>,
) {
    if state.is_consistent() {
        let solution = solve_consistent_system(matrix, &state.columns, rhs);
        if solution.iter().all(|v| !v.is_negative()) {
            let mut x = RationalVector::zeros(columns.len());
            let mut support = Vec::new();
            for (&col, v) in state.columns.iter().zip(solution) {
                if v.is_positive() {
                    support.push(col);
                    x.set(col, v);
                }
            }
            out.entry(support).or_insert(x);
        }
    }
    if state.saturated() {
        return;
    }
    for j in next_col..columns.len() {
        if state.try_push(j, &columns[j]) {
            dfs_vertices(state, j + 1, columns, matrix, rhs, out);
            state.pop();
        }
    }
}

/// Supports and coordinates of every basic feasible point, in lexicographic
/// support order, without the basis-extension decoration.
pub(crate) fn enumerate_vertices(
    problem: &LpProblem,
    cap: &EnumCap,
) -> Result<Vec<(Vec<usize>, RationalVector)>> {
    cap.check(problem)?;
    let matrix = problem.matrix();
    let columns: Vec<RationalVector> = (0..problem.num_vars()).map(|j| matrix.column(j)).collect();
    let mut found = BTreeMap::new();
    let mut state = Echelon::start(problem.rhs().clone());
    dfs_vertices(&mut state, 0, &columns, matrix, problem.rhs(), &mut found);
    Ok(found.into_iter().collect())
}

/// Enumerates `X*`: every basic feasible point, deduplicated by exact vector
/// equality and sorted lexicographically by support.
///
/// Walks the tree of independent column subsets depth-first; at each subset
/// `J` the unique solution of `A_J x_J = b` (when consistent) is accepted iff
/// it is nonnegative. This accepts exactly the points the pseudo-inverse
/// rule `A_J (A_J^- b) = b`, `A_J^- b >= 0` does — the two routes are kept in
/// agreement by a randomized oracle test.
pub fn enumerate_basic_feasible(problem: &LpProblem, cap: &EnumCap) -> Result<Vec<BasicPoint>> {
    let vertices = enumerate_vertices(problem, cap)?;
    let matrix = problem.matrix();
    let rank_a = linalg::rank(matrix);
    let m = problem.num_constraints();
    let columns: Vec<RationalVector> = (0..problem.num_vars()).map(|j| matrix.column(j)).collect();
    Ok(vertices
        .into_iter()
        .map(|(support, x)| {
            let basis_cols = greedy_basis_extension(&columns, &support, rank_a);
            BasicPoint {
                x,
                support,
                basis_cols,
                y: None,
                degenerate: rank_a < m,
            }
        })
        .collect())
}

/// Extends `support` to a maximal independent column set, lowest index
/// first. Size is `rank(A)`: square exactly when `rank(A) = m`.
fn greedy_basis_extension(
    columns: &[RationalVector],
    support: &[usize],
    rank_a: usize,
) -> Vec<usize> {
    let m = columns.first().map_or(0, RationalVector::dim);
    let mut state = Echelon::start(RationalVector::zeros(m));
    for &j in support {
        let pushed = state.try_push(j, &columns[j]);
        debug_assert!(pushed, "support columns are independent");
    }
    let mut basis: Vec<usize> = support.to_vec();
    for (j, column) in columns.iter().enumerate() {
        if basis.len() == rank_a {
            break;
        }
        if support.contains(&j) {
            continue;
        }
        if state.try_push(j, column) {
            basis.push(j);
        }
    }
    basis.sort_unstable();
    basis
}

/// Builds `max objective^T d  s.t.  A d = 0, 0 <= d <= 1` in standard form:
/// variables `(d, s)` with rows `A d = 0` and `d + s = 1`.
fn recession_box_problem(matrix: &RationalMatrix, objective: &RationalVector) -> LpProblem {
    let (m, n) = (matrix.rows(), matrix.cols());
    let mut aux = RationalMatrix::zeros(m + n, 2 * n);
    for i in 0..m {
        for j in 0..n {
            aux.set(i, j, matrix.get(i, j).clone());
        }
    }
    for j in 0..n {
        aux.set(m + j, j, Rational::one());
        aux.set(m + j, n + j, Rational::one());
    }
    let mut rhs = RationalVector::zeros(m + n);
    for i in 0..n {
        rhs.set(m + i, Rational::one());
    }
    let mut obj = RationalVector::zeros(2 * n);
    for j in 0..n {
        obj.set(j, objective.get(j).clone());
    }
    LpProblem::new(obj, aux, rhs).expect("auxiliary problem dimensions are consistent")
}

/// Optimal value of `max objective^T d` over the recession box
/// `{d | A d = 0, 0 <= d <= 1}`. Zero means no improving recession
/// direction; the box is always feasible (`d = 0`).
pub fn recession_extent(
    problem: &LpProblem,
    objective: &RationalVector,
    cap: &EnumCap,
) -> Result<Rational> {
    recession_direction(problem, objective, cap).map(|(extent, _)| extent)
}

/// Like [`recession_extent`], also returning a maximizing direction `d`:
/// the first maximizer in support order, the zero vector when the extent is
/// zero.
pub fn recession_direction(
    problem: &LpProblem,
    objective: &RationalVector,
    cap: &EnumCap,
) -> Result<(Rational, RationalVector)> {
    assert_eq!(objective.dim(), problem.num_vars(), "objective dimension");
    let aux = recession_box_problem(problem.matrix(), objective);
    let (best_value, maximizer) = argmax_vertex(&aux, cap)?;
    let n = problem.num_vars();
    let direction = RationalVector::new((0..n).map(|j| maximizer.get(j).clone()).collect());
    Ok((best_value, direction))
}

/// Maximum of the objective over the basic feasible points, with the first
/// maximizer in support order. The caller guarantees feasibility.
pub(crate) fn argmax_vertex(
    problem: &LpProblem,
    cap: &EnumCap,
) -> Result<(Rational, RationalVector)> {
    let vertices = enumerate_vertices(problem, cap)?;
    let best_value = vertices
        .iter()
        .map(|(_, x)| problem.value_at(x))
        .max()
        .expect("problem is feasible");
    let (_, maximizer) = vertices
        .into_iter()
        .find(|(_, x)| problem.value_at(x) == best_value)
        .expect("a maximizer exists");
    Ok((best_value, maximizer))
}

/// Dual vector from the point's basis columns: `y^T = p_B^T B^-`, where
/// `B^-` is the inverse for a square basis and the pseudo-inverse for a
/// rectangular one.
pub fn dual_from_basis(problem: &LpProblem, point: &BasicPoint) -> Result<RationalVector> {
    dual_from_cols(problem, &point.basis_cols)
}

fn dual_from_cols(problem: &LpProblem, cols: &[usize]) -> Result<RationalVector> {
    let basis = problem.matrix().select_columns(cols);
    let pinv = linalg::pseudo_inverse(&basis).map_err(|_| Error::SingularBasis)?;
    Ok(pinv
        .transpose()
        .mul_vector(&problem.objective().select(cols)))
}

/// Exact KKT check: `A x = b`, `x >= 0`, `y^T A >= p^T`, and
/// `(y^T A - p^T) x = 0`.
pub fn verify_kkt(problem: &LpProblem, x: &RationalVector, y: &RationalVector) -> Result<bool> {
    if x.dim() != problem.num_vars() || y.dim() != problem.num_constraints() {
        return Err(Error::DimensionMismatch(format!(
            "kkt check on a {}x{} problem got x of dim {} and y of dim {}",
            problem.num_constraints(),
            problem.num_vars(),
            x.dim(),
            y.dim()
        )));
    }
    if !problem.is_feasible_point(x) {
        return Ok(false);
    }
    let slacks = dual_of(problem).slacks(y);
    if !slacks.is_nonnegative() {
        return Ok(false);
    }
    Ok(slacks.dot(x).is_zero())
}

/// Searches basis extensions of `point.support` in lexicographic order for
/// one whose formula dual certifies the point. Returns the certified basis
/// and dual, or `None` when the point is not optimal.
pub fn certifying_dual(
    problem: &LpProblem,
    point: &BasicPoint,
) -> Result<Option<(Vec<usize>, RationalVector)>> {
    let matrix = problem.matrix();
    let rank_a = linalg::rank(matrix);
    let free: Vec<usize> = (0..problem.num_vars())
        .filter(|j| !point.support.contains(j))
        .collect();
    let need = rank_a - point.support.len();
    for combo in free.into_iter().combinations(need) {
        let mut candidate = point.support.clone();
        candidate.extend(combo);
        candidate.sort_unstable();
        if !linalg::columns_independent(matrix, &candidate) {
            continue;
        }
        let y = dual_from_cols(problem, &candidate)?;
        if verify_kkt(problem, &point.x, &y)? {
            return Ok(Some((candidate, y)));
        }
    }
    Ok(None)
}

/// Solves by enumeration: infeasible iff no basic feasible point exists,
/// unbounded iff the recession box admits `p^T d > 0`, otherwise optimal
/// with the argmax over basic points, each equipped with a certified dual.
pub fn solve(problem: &LpProblem, cap: &EnumCap) -> Result<SolveOutcome> {
    let all = enumerate_basic_feasible(problem, cap)?;
    if all.is_empty() {
        return Ok(SolveOutcome {
            status: SolveStatus::Infeasible,
            value: None,
            optimal_basics: Vec::new(),
            all_basics: all,
        });
    }
    let improving = recession_extent(problem, problem.objective(), cap)?;
    if improving.is_positive() {
        return Ok(SolveOutcome {
            status: SolveStatus::Unbounded,
            value: None,
            optimal_basics: Vec::new(),
            all_basics: all,
        });
    }
    let value = all
        .iter()
        .map(|bp| problem.value_at(&bp.x))
        .max()
        .expect("nonempty");
    let mut optimal_basics = Vec::new();
    for bp in &all {
        if problem.value_at(&bp.x) != value {
            continue;
        }
        let (basis_cols, y) = certifying_dual(problem, bp)?
            .expect("every optimal basic point admits a certifying basis extension");
        let mut certified = bp.clone();
        certified.basis_cols = basis_cols;
        certified.y = Some(y);
        optimal_basics.push(certified);
    }
    Ok(SolveOutcome {
        status: SolveStatus::Optimal,
        value: Some(value),
        optimal_basics,
        all_basics: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_problem;

    fn problem(p: &[i64], a: &[&[i64]], b: &[i64]) -> LpProblem {
        LpProblem::new(
            RationalVector::from_ints(p),
            RationalMatrix::from_int_rows(a),
            RationalVector::from_ints(b),
        )
        .unwrap()
    }

    fn example1_at(n: u64) -> LpProblem {
        let inv = Rational::inv_of(n);
        LpProblem::new(
            RationalVector::new(vec![inv.clone(), Rational::zero()]),
            RationalMatrix::from_rows(vec![vec![inv, Rational::one()]]).unwrap(),
            RationalVector::from_ints(&[1]),
        )
        .unwrap()
    }

    fn example1_limit() -> LpProblem {
        problem(&[0, 0], &[&[0, 1]], &[1])
    }

    #[test]
    fn enumerate_two_vertices_on_a_segment() {
        // x1 + x2 = 1 has exactly the two unit vertices.
        let p = problem(&[1, 0], &[&[1, 1]], &[1]);
        let basics = enumerate_basic_feasible(&p, &EnumCap::default()).unwrap();
        assert_eq!(basics.len(), 2);
        assert_eq!(basics[0].x, RationalVector::from_ints(&[1, 0]));
        assert_eq!(basics[0].support, vec![0]);
        assert_eq!(basics[1].x, RationalVector::from_ints(&[0, 1]));
        assert_eq!(basics[1].support, vec![1]);
    }

    #[test]
    fn enumerate_excludes_zero_column_support() {
        // A = (0 | 1): points (t, 1) with t > 0 are feasible but the zero
        // column cannot carry a positive coordinate of a basic point.
        let basics = enumerate_basic_feasible(&example1_limit(), &EnumCap::default()).unwrap();
        assert_eq!(basics.len(), 1);
        assert_eq!(basics[0].x, RationalVector::from_ints(&[0, 1]));
    }

    #[test]
    fn enumerate_infeasible_is_empty() {
        let p = problem(&[1], &[&[1]], &[-1]);
        assert!(enumerate_basic_feasible(&p, &EnumCap::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumerate_origin_when_rhs_is_zero() {
        let p = problem(&[1, 1], &[&[1, -1]], &[0]);
        let basics = enumerate_basic_feasible(&p, &EnumCap::default()).unwrap();
        assert_eq!(basics.len(), 1);
        assert!(basics[0].x.is_zero());
        assert!(basics[0].support.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let p = problem(&[1, 1], &[&[1, 1]], &[1]);
        let cap = EnumCap::new(1, 12);
        assert!(matches!(
            enumerate_basic_feasible(&p, &cap),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn recession_extent_cases() {
        let cap = EnumCap::default();
        // d1 + d2 = 0 with d >= 0 forces d = 0.
        let bounded = problem(&[0, 0], &[&[1, 1]], &[1]);
        assert_eq!(
            recession_extent(&bounded, &RationalVector::from_ints(&[1, 1]), &cap).unwrap(),
            Rational::zero()
        );
        // d1 - d2 = 0 admits d = (1, 1).
        let unbounded = problem(&[0, 0], &[&[1, -1]], &[1]);
        assert_eq!(
            recession_extent(&unbounded, &RationalVector::from_ints(&[1, 1]), &cap).unwrap(),
            Rational::from_int(2)
        );
        // Example 1 limit: d = (1, 0) escapes.
        assert_eq!(
            recession_extent(&example1_limit(), &RationalVector::from_ints(&[1, 0]), &cap).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn solve_example1_members_and_limit() {
        let cap = EnumCap::default();
        for n in [1u64, 2, 7, 100] {
            let outcome = solve(&example1_at(n), &cap).unwrap();
            assert_eq!(outcome.status, SolveStatus::Optimal);
            assert_eq!(outcome.value, Some(Rational::one()));
            assert_eq!(outcome.optimal_basics.len(), 1);
            let expected =
                RationalVector::new(vec![Rational::from_int(n as i64), Rational::zero()]);
            assert_eq!(outcome.optimal_basics[0].x, expected);
            // The dual is y = (1) regardless of N.
            assert_eq!(
                outcome.optimal_basics[0].y.as_ref().unwrap(),
                &RationalVector::from_ints(&[1])
            );
        }
        let outcome = solve(&example1_limit(), &cap).unwrap();
        assert_eq!(outcome.status, SolveStatus::Optimal);
        assert_eq!(outcome.value, Some(Rational::zero()));
        assert_eq!(
            outcome.optimal_basics[0].x,
            RationalVector::from_ints(&[0, 1])
        );
    }

    #[test]
    fn solve_detects_unbounded() {
        let p = problem(&[1], &[&[0]], &[0]);
        let outcome = solve(&p, &EnumCap::default()).unwrap();
        assert_eq!(outcome.status, SolveStatus::Unbounded);
        assert_eq!(outcome.value, None);
        assert!(outcome.optimal_basics.is_empty());
        assert_eq!(outcome.all_basics.len(), 1);
    }

    #[test]
    fn solve_detects_infeasible() {
        let p = problem(&[1], &[&[1]], &[-1]);
        let outcome = solve(&p, &EnumCap::default()).unwrap();
        assert_eq!(outcome.status, SolveStatus::Infeasible);
    }

    #[test]
    fn solve_certifies_the_origin_optimum() {
        // b = 0 with a nonpositive objective: x = 0 is optimal with an empty
        // support, and the certificate search must still find a dual over
        // some basis extension.
        let p = problem(&[-1, -2], &[&[1, -1]], &[0]);
        let outcome = solve(&p, &EnumCap::default()).unwrap();
        assert_eq!(outcome.status, SolveStatus::Optimal);
        assert_eq!(outcome.value, Some(Rational::zero()));
        let origin = outcome.representative().unwrap();
        assert!(origin.x.is_zero());
        assert!(origin.support.is_empty());
        let y = origin.y.as_ref().unwrap();
        assert!(verify_kkt(&p, &origin.x, y).unwrap());
    }

    #[test]
    fn dual_from_basis_examples() {
        let cap = EnumCap::default();
        // max 2x1 + x2 s.t. x1 + x2 = 1 at (1, 0): B = (1), p_B = (2), y = (2).
        let p = problem(&[2, 1], &[&[1, 1]], &[1]);
        let outcome = solve(&p, &cap).unwrap();
        let bp = outcome.representative().unwrap();
        assert_eq!(bp.x, RationalVector::from_ints(&[1, 0]));
        assert_eq!(
            dual_from_basis(&p, bp).unwrap(),
            RationalVector::from_ints(&[2])
        );
        // Identity constraints with zero objective: y = 0.
        let idp = problem(&[0, 0], &[&[1, 0], &[0, 1]], &[1, 2]);
        let outcome = solve(&idp, &cap).unwrap();
        assert_eq!(
            outcome.representative().unwrap().y.as_ref().unwrap(),
            &RationalVector::from_ints(&[0, 0])
        );
    }

    #[test]
    fn verify_kkt_example1() {
        let p = example1_at(1);
        let y = RationalVector::from_ints(&[1]);
        assert!(verify_kkt(&p, &RationalVector::from_ints(&[1, 0]), &y).unwrap());
        // (0, 1) is feasible but complementary slackness fails with y = (1).
        assert!(!verify_kkt(&p, &RationalVector::from_ints(&[0, 1]), &y).unwrap());
    }

    #[test]
    fn verify_kkt_dimension_mismatch() {
        let p = example1_at(1);
        let err = verify_kkt(
            &p,
            &RationalVector::from_ints(&[1]),
            &RationalVector::from_ints(&[1]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn outcome_json_shape() {
        let outcome = solve(&example1_at(1), &EnumCap::default()).unwrap();
        let json = serde_json::to_string(&outcome).unwrap();
        assert_eq!(
            json,
            r#"{"status":"optimal","value":"1","optimal_basics":[{"x":["1","0"],"support":[1],"basis":[1],"y":["1"]}],"basic_count":2}"#
        );
        let infeasible = solve(
            &parse_problem(r#"{"p":["1"],"A":[["1"]],"b":["-1"]}"#).unwrap(),
            &EnumCap::default(),
        )
        .unwrap();
        assert_eq!(
            serde_json::to_string(&infeasible).unwrap(),
            r#"{"status":"infeasible","basic_count":0}"#
        );
    }

    #[test]
    fn solve_is_deterministic() {
        let p = problem(&[1, 1, 0], &[&[1, 1, 1]], &[1]);
        let first = serde_json::to_string(&solve(&p, &EnumCap::default()).unwrap()).unwrap();
        let second = serde_json::to_string(&solve(&p, &EnumCap::default()).unwrap()).unwrap();
        assert_eq!(first, second);
    }
}
