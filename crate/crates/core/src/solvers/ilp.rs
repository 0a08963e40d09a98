//! Covering integer programs: minimize `Σ x_j` subject to `Σ_{j∈R} x_j ≥ r`
//! for every row and `0 ≤ x_j ≤ u_j`.

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOptions, TerminationReason};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub(crate) struct CoveringProgram {
    upper: Vec<u64>,
    rows: Vec<(Vec<usize>, u64)>,
}

impl CoveringProgram {
    pub(crate) fn new(upper: Vec<u64>) -> Self {
        Self {
            upper,
            rows: Vec::new(),
        }
    }

    /// Adds `Σ_{j ∈ cols} x_j ≥ rhs`. Returns false when the row can never
    /// be met.
    pub(crate) fn add_row(&mut self, mut cols: Vec<usize>, rhs: u64) -> bool {
        cols.sort_unstable();
        cols.dedup();
        let reach: u64 = cols.iter().map(|&c| self.upper[c]).fold(0, u64::saturating_add);
        self.rows.push((cols, rhs));
        reach >= rhs
    }

    /// An optimal integral solution, or `None` if infeasible.
    pub(crate) fn solve(&self) -> Result<Option<Vec<u64>>> {
        for (cols, rhs) in &self.rows {
            let reach: u64 = cols.iter().map(|&c| self.upper[c]).fold(0, u64::saturating_add);
            if reach < *rhs {
                return Ok(None);
            }
        }
        let mut problem = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = self
            .upper
            .iter()
            .map(|&u| problem.add_integer_var(1.0, (0, u.min(i32::MAX as u64) as i32)))
            .collect();
        for (cols, rhs) in &self.rows {
            let expr: Vec<_> = cols.iter().map(|&c| (vars[c], 1.0)).collect();
            problem.add_constraint(expr.as_slice(), ComparisonOp::Ge, *rhs as f64);
        }
        let outcome = match problem.solve_with(SolveOptions::default()) {
            Ok(o) => o,
            Err(microlp::Error::Infeasible) => return Ok(None),
            Err(e) => return Err(Error::Internal(format!("integer program: {e}"))),
        };
        let solution = outcome
            .into_solution()
            .map_err(|_| Error::Internal("integer program interrupted".into()))?;
        if solution.termination_reason() != TerminationReason::ProvenOptimal {
            return Err(Error::Internal("integer program not proven optimal".into()));
        }
        let x: Vec<u64> = vars
            .iter()
            .map(|&v| solution.var_value(v).round().max(0.0) as u64)
            .collect();
        for (cols, rhs) in &self.rows {
            if cols.iter().map(|&c| x[c]).sum::<u64>() < *rhs {
                return Err(Error::Internal("integer program returned a violated row".into()));
            }
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_cover_of_triangle() {
        let mut p = CoveringProgram::new(vec![1, 1, 1]);
        p.add_row(vec![0, 1], 1);
        p.add_row(vec![1, 2], 1);
        p.add_row(vec![0, 2], 1);
        let x = p.solve().unwrap().unwrap();
        assert_eq!(x.iter().sum::<u64>(), 2);
    }

    #[test]
    fn capacity_makes_infeasible() {
        let mut p = CoveringProgram::new(vec![1, 3]);
        assert!(!p.add_row(vec![0], 2));
        assert_eq!(p.solve().unwrap(), None);
        let mut p = CoveringProgram::new(vec![1, 3]);
        p.add_row(vec![0, 1], 4);
        assert_eq!(p.solve().unwrap(), Some(vec![1, 3]));
    }
}
