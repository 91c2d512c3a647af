//! Exact sparse Gaussian elimination over the coefficient fraction field.
//!
//! Solves `M x = b` symbolically in the model parameters. Pivot selection
//! prefers entries whose numerator is a single monomial: under the blanket
//! assumption that every declared parameter is nonzero, such a pivot cannot
//! vanish, so dividing by it excludes no parameter locus. When no monomial
//! pivot is available the chosen pivot's primitive part is recorded; the
//! reported solution is valid away from the zero sets of those polynomials.

use std::collections::BTreeMap;

use crate::poly::{Coefficient, Poly, Ring};

/// A sparse linear system with tagged rows.
pub struct LinearSystem {
    ring: Ring,
    n_cols: usize,
    rows: Vec<Row>,
}

struct Row {
    tag: usize,
    entries: BTreeMap<usize, Coefficient>,
    rhs: Coefficient,
}

/// Result of eliminating a [`LinearSystem`].
pub struct Solution {
    /// False iff some row reduced to `0 = r` with `r` nonzero.
    pub consistent: bool,
    pub rank: usize,
    /// One solution with all free variables zero; meaningful iff consistent.
    pub particular: Vec<Coefficient>,
    /// Basis of the homogeneous solution space (empty unless requested).
    pub nullspace: Vec<Vec<Coefficient>>,
    /// Primitive parts of non-monomial pivots; the result holds wherever
    /// none of these vanish.
    pub excluded: Vec<Poly>,
    /// Tags and reduced right-hand sides of all inconsistent rows.
    pub residuals: Vec<(usize, Coefficient)>,
}

impl LinearSystem {
    pub fn new(ring: &Ring, n_cols: usize) -> LinearSystem {
        LinearSystem {
            ring: ring.clone(),
            n_cols,
            rows: Vec::new(),
        }
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Add `sum entries[c] * x_c = rhs`, remembered under `tag`.
    pub fn add_row(&mut self, tag: usize, entries: BTreeMap<usize, Coefficient>, rhs: Coefficient) {
        let entries: BTreeMap<usize, Coefficient> =
            entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        debug_assert!(entries.keys().all(|&c| c < self.n_cols));
        self.rows.push(Row { tag, entries, rhs });
    }

    /// Homogeneous row.
    pub fn add_homogeneous_row(&mut self, tag: usize, entries: BTreeMap<usize, Coefficient>) {
        let rhs = Coefficient::zero(&self.ring);
        self.add_row(tag, entries, rhs);
    }

    /// Run the elimination. `want_nullspace` controls whether the homogeneous
    /// basis is computed (it is dense in the number of columns).
    pub fn solve(mut self, want_nullspace: bool) -> Solution {
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index, col)
        let mut pivot_cols: Vec<bool> = vec![false; self.n_cols];
        let mut processed: Vec<bool> = vec![false; self.rows.len()];
        let mut excluded: Vec<Poly> = Vec::new();

        loop {
            // pick the best remaining pivot: lowest score wins, ties by
            // sparser row for less fill-in
            let mut best: Option<(u8, usize, usize, usize)> = None; // score, row_len, row, col
            for (ri, row) in self.rows.iter().enumerate() {
                if processed[ri] || row.entries.is_empty() {
                    continue;
                }
                for (&col, c) in &row.entries {
                    let score = pivot_score(c);
                    let cand = (score, row.entries.len(), ri, col);
                    let better = match &best {
                        None => true,
                        Some(b) => (cand.0, cand.1) < (b.0, b.1),
                    };
                    if better {
                        best = Some(cand);
                    }
                    if score == 0 {
                        break;
                    }
                }
                if matches!(best, Some((0, len, _, _)) if len <= 2) {
                    break;
                }
            }
            let (score, _, ri, col) = match best {
                None => break,
                Some(b) => b,
            };
            if score == 2 {
                let (_, prim) = self.rows[ri].entries[&col].num().monomial_content_split();
                let prim = prim.monic();
                if !excluded.contains(&prim) {
                    excluded.push(prim);
                }
            }

            // normalize the pivot row
            let pivot_inv = self.rows[ri].entries[&col].inv();
            {
                let row = &mut self.rows[ri];
                for c in row.entries.values_mut() {
                    *c = c.mul(&pivot_inv);
                }
                row.rhs = row.rhs.mul(&pivot_inv);
            }
            // eliminate the pivot column from every other row
            let pivot_entries: Vec<(usize, Coefficient)> = self.rows[ri]
                .entries
                .iter()
                .map(|(&c, v)| (c, v.clone()))
                .collect();
            let pivot_rhs = self.rows[ri].rhs.clone();
            for rj in 0..self.rows.len() {
                if rj == ri {
                    continue;
                }
                let factor = match self.rows[rj].entries.get(&col) {
                    None => continue,
                    Some(f) => f.clone(),
                };
                let row = &mut self.rows[rj];
                for (c, v) in &pivot_entries {
                    let delta = factor.mul(v);
                    match row.entries.entry(*c) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            let nv = delta.neg();
                            if !nv.is_zero() {
                                e.insert(nv);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let nv = e.get().sub(&delta);
                            if nv.is_zero() {
                                e.remove();
                            } else {
                                e.insert(nv);
                            }
                        }
                    }
                }
                row.rhs = row.rhs.sub(&factor.mul(&pivot_rhs));
            }
            processed[ri] = true;
            pivot_cols[col] = true;
            pivots.push((ri, col));
        }

        // inconsistency check on fully reduced empty rows
        let mut residuals = Vec::new();
        for row in &self.rows {
            if row.entries.is_empty() && !row.rhs.is_zero() {
                residuals.push((row.tag, row.rhs.clone()));
            }
        }
        let consistent = residuals.is_empty();

        let zero = Coefficient::zero(&self.ring);
        let mut particular = vec![zero.clone(); self.n_cols];
        if consistent {
            for &(ri, col) in &pivots {
                particular[col] = self.rows[ri].rhs.clone();
            }
        }

        let mut nullspace = Vec::new();
        if want_nullspace {
            for free in 0..self.n_cols {
                if pivot_cols[free] {
                    continue;
                }
                let mut v = vec![zero.clone(); self.n_cols];
                v[free] = Coefficient::one(&self.ring);
                for &(ri, col) in &pivots {
                    if let Some(c) = self.rows[ri].entries.get(&free) {
                        v[col] = c.neg();
                    }
                }
                nullspace.push(v);
            }
        }

        Solution {
            consistent,
            rank: pivots.len(),
            particular,
            nullspace,
            excluded,
            residuals,
        }
    }
}

/// 0 for nonzero constants, 1 for single monomials (never vanish for
/// nonzero parameters), 2 for general polynomials or proper fractions.
fn pivot_score(c: &Coefficient) -> u8 {
    if !c.is_polynomial() {
        return 2;
    }
    let n = c.num();
    if n.is_constant() {
        0
    } else if n.is_monomial() {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_coeff, ParamSet};

    fn ring() -> Ring {
        ParamSet::new(vec!["c1", "c2", "t"])
    }

    fn c(r: &Ring, s: &str) -> Coefficient {
        parse_coeff(r, s).unwrap()
    }

    fn row(pairs: &[(usize, Coefficient)]) -> BTreeMap<usize, Coefficient> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn unique_solution() {
        let r = ring();
        // x + y = 3, x - y = 1
        let mut sys = LinearSystem::new(&r, 2);
        sys.add_row(0, row(&[(0, c(&r, "1")), (1, c(&r, "1"))]), c(&r, "3"));
        sys.add_row(1, row(&[(0, c(&r, "1")), (1, c(&r, "-1"))]), c(&r, "1"));
        let sol = sys.solve(true);
        assert!(sol.consistent);
        assert_eq!(sol.rank, 2);
        assert_eq!(sol.particular[0], c(&r, "2"));
        assert_eq!(sol.particular[1], c(&r, "1"));
        assert!(sol.nullspace.is_empty());
        assert!(sol.excluded.is_empty());
    }

    #[test]
    fn inconsistent_system_reports_residual() {
        let r = ring();
        let mut sys = LinearSystem::new(&r, 1);
        sys.add_row(7, row(&[(0, c(&r, "1"))]), c(&r, "1"));
        sys.add_row(9, row(&[(0, c(&r, "1"))]), c(&r, "2"));
        let sol = sys.solve(false);
        assert!(!sol.consistent);
        assert_eq!(sol.residuals.len(), 1);
        let (tag, res) = &sol.residuals[0];
        assert_eq!(*tag, 9);
        assert!(!res.is_zero());
    }

    #[test]
    fn nullspace_of_rank_one_system() {
        let r = ring();
        // c1*x + c2*y = 0 over 2 unknowns: one-dimensional nullspace
        let mut sys = LinearSystem::new(&r, 2);
        sys.add_homogeneous_row(0, row(&[(0, c(&r, "c1")), (1, c(&r, "c2"))]));
        let sol = sys.solve(true);
        assert!(sol.consistent);
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.nullspace.len(), 1);
        let v = &sol.nullspace[0];
        // check c1*v0 + c2*v1 == 0
        let lhs = c(&r, "c1").mul(&v[0]).add(&c(&r, "c2").mul(&v[1]));
        assert!(lhs.is_zero());
        // monomial pivots exclude nothing
        assert!(sol.excluded.is_empty());
    }

    #[test]
    fn non_monomial_pivot_is_recorded() {
        let r = ring();
        // (c1 + c2) * x = 1 forces division by c1 + c2
        let mut sys = LinearSystem::new(&r, 1);
        sys.add_row(0, row(&[(0, c(&r, "c1 + c2"))]), c(&r, "1"));
        let sol = sys.solve(false);
        assert!(sol.consistent);
        assert_eq!(sol.excluded.len(), 1);
        assert_eq!(sol.excluded[0], c(&r, "c1 + c2").num().clone());
    }

    #[test]
    fn monomial_pivot_preferred_over_sum() {
        let r = ring();
        // (c1+c2)*x + t*y = 0: pivoting on t instead of c1+c2 keeps the
        // nullspace valid for all nonzero parameters, with no exclusions
        let mut sys = LinearSystem::new(&r, 2);
        sys.add_homogeneous_row(0, row(&[(0, c(&r, "c1 + c2")), (1, c(&r, "t"))]));
        let sol = sys.solve(true);
        assert!(sol.consistent);
        assert!(sol.excluded.is_empty(), "excluded: {:?}", sol.excluded);
        assert_eq!(sol.nullspace.len(), 1);
        let v = &sol.nullspace[0];
        let lhs = c(&r, "c1 + c2").mul(&v[0]).add(&c(&r, "t").mul(&v[1]));
        assert!(lhs.is_zero());
    }

    #[test]
    fn underdetermined_particular_solution_satisfies_rows() {
        let r = ring();
        // x + 2y + z = 4 with free variables set to zero
        let mut sys = LinearSystem::new(&r, 3);
        sys.add_row(
            0,
            row(&[(0, c(&r, "1")), (1, c(&r, "2")), (2, c(&r, "1"))]),
            c(&r, "4"),
        );
        let sol = sys.solve(true);
        assert!(sol.consistent);
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.nullspace.len(), 2);
        let lhs = sol.particular[0]
            .add(&c(&r, "2").mul(&sol.particular[1]))
            .add(&sol.particular[2]);
        assert_eq!(lhs, c(&r, "4"));
    }
}
