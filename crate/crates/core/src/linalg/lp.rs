//! Exact feasibility for equality systems with box bounds.
//!
//! Two-phase tableau simplex over the rationals with Bland's rule. Strict
//! bounds are handled by a margin variable `t ∈ [0, 1]`: every strict bound
//! `l < x` (resp. `x < u`) becomes `l + t ≤ x` (resp. `x + t ≤ u`), `t` is
//! maximized, and the program is feasible iff the optimum is positive.

use num_traits::{One, Signed, Zero};

use super::RatVector;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub strict: bool,
}

impl Bound {
    pub fn closed(value: Rational) -> Self {
        Bound {
            value,
            strict: false,
        }
    }

    pub fn open(value: Rational) -> Self {
        Bound {
            value,
            strict: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Objective {
    /// Any feasible point.
    #[default]
    Feasibility,
    /// Prefer a point at maximal common distance from every bound.
    MaximizeSlack,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub equalities: Vec<(Vec<Rational>, Rational)>,
    pub lower: Vec<Option<Bound>>,
    pub upper: Vec<Option<Bound>>,
    pub objective: Objective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub point: Vec<Rational>,
    /// Achieved margin on the bounds it was applied to, when a margin was used.
    pub slack: Option<Rational>,
}

impl LinearProgram {
    /// `num_vars` free variables and no constraints.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            equalities: Vec::new(),
            lower: vec![None; num_vars],
            upper: vec![None; num_vars],
            objective: Objective::Feasibility,
        }
    }

    pub fn equality(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.equalities.push((coeffs, rhs));
        self
    }

    pub fn bounds(mut self, var: usize, lower: Option<Bound>, upper: Option<Bound>) -> Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    fn has_strict(&self) -> bool {
        self.lower
            .iter()
            .chain(&self.upper)
            .flatten()
            .any(|b| b.strict)
    }

    /// Checks a point against every constraint, exactly.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let rows_ok = self.equalities.iter().all(|(row, rhs)| {
            row.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() == *rhs
        });
        let bounds_ok = x.iter().enumerate().all(|(i, xi)| {
            let lo = self.lower[i]
                .as_ref()
                .is_none_or(|b| if b.strict { xi > &b.value } else { xi >= &b.value });
            let hi = self.upper[i]
                .as_ref()
                .is_none_or(|b| if b.strict { xi < &b.value } else { xi <= &b.value });
            lo && hi
        });
        rows_ok && bounds_ok
    }
}

/// A feasible point, if any; the point satisfies every constraint exactly.
pub fn lp_feasible(lp: &LinearProgram) -> Option<RatVector> {
    solve_lp(lp).map(|s| {
        let labels = (1..=lp.num_vars).map(|i| format!("x{i}")).collect();
        RatVector::new(s.point, labels)
    })
}

pub fn solve_lp(lp: &LinearProgram) -> Option<LpSolution> {
    for i in 0..lp.num_vars {
        if let (Some(l), Some(u)) = (&lp.lower[i], &lp.upper[i]) {
            if l.value > u.value || (l.value == u.value && (l.strict || u.strict)) {
                return None;
            }
        }
    }
    let strict = lp.has_strict();
    let first = solve_with_margin(lp, |b| b.strict, strict)?;
    if lp.objective == Objective::MaximizeSlack {
        if let Some(better) = solve_with_margin(lp, |_| true, true) {
            if better.slack.as_ref().is_some_and(Signed::is_positive) {
                return Some(better);
            }
        }
    }
    Some(first)
}

/// Affine substitution `x = constant + Σ coeff·column` for one original variable.
struct Substitution {
    constant: Rational,
    terms: Vec<(usize, Rational)>,
}

/// Sparse terms, sense and right-hand side of one constraint.
type Row = (Vec<(usize, Rational)>, Sense, Rational);

enum Sense {
    Le,
    Ge,
    Eq,
}

fn solve_with_margin(
    lp: &LinearProgram,
    margined: impl Fn(&Bound) -> bool,
    use_margin: bool,
) -> Option<LpSolution> {
    let mut ncols = 0;
    let mut fresh = || {
        ncols += 1;
        ncols - 1
    };
    let mut subs = Vec::with_capacity(lp.num_vars);
    let mut rows: Vec<Row> = Vec::new();
    let mut pending = Vec::new();
    for i in 0..lp.num_vars {
        match (&lp.lower[i], &lp.upper[i]) {
            (Some(l), upper) => {
                let y = fresh();
                subs.push(Substitution {
                    constant: l.value.clone(),
                    terms: vec![(y, Rational::one())],
                });
                pending.push((y, Some(l), upper.as_ref().map(|u| (u, &l.value))));
            }
            (None, Some(u)) => {
                let y = fresh();
                subs.push(Substitution {
                    constant: u.value.clone(),
                    terms: vec![(y, -Rational::one())],
                });
                // y ≥ 0 encodes x ≤ u; margin on the upper bound becomes y ≥ t
                pending.push((y, Some(u), None));
            }
            (None, None) => {
                let p = fresh();
                let q = fresh();
                subs.push(Substitution {
                    constant: Rational::zero(),
                    terms: vec![(p, Rational::one()), (q, -Rational::one())],
                });
            }
        }
    }
    let t = use_margin.then(&mut fresh);
    for (y, near, far) in pending {
        let near_margin = near.is_some_and(&margined);
        if let (Some(t), true) = (t, near_margin) {
            rows.push((
                vec![(y, Rational::one()), (t, -Rational::one())],
                Sense::Ge,
                Rational::zero(),
            ));
        }
        if let Some((u, l)) = far {
            let mut terms = vec![(y, Rational::one())];
            if let (Some(t), true) = (t, margined(u)) {
                terms.push((t, Rational::one()));
            }
            rows.push((terms, Sense::Le, &u.value - l));
        }
    }
    if let Some(t) = t {
        rows.push((vec![(t, Rational::one())], Sense::Le, Rational::one()));
    }
    for (coeffs, rhs) in &lp.equalities {
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        let mut rhs = rhs.clone();
        for (a, sub) in coeffs.iter().zip(&subs) {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &sub.constant;
            for (c, k) in &sub.terms {
                terms.push((*c, a * k));
            }
        }
        rows.push((terms, Sense::Eq, rhs));
    }

    let structural = ncols;
    let slack_count = rows
        .iter()
        .filter(|r| !matches!(r.1, Sense::Eq))
        .count();
    let width = structural + slack_count;
    let mut table = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    let mut next_slack = structural;
    for (terms, sense, b) in rows {
        let mut row = vec![Rational::zero(); width];
        for (c, k) in terms {
            row[c] += k;
        }
        match sense {
            Sense::Le => {
                row[next_slack] = Rational::one();
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
            }
            Sense::Eq => {}
        }
        table.push(row);
        rhs.push(b);
    }

    let mut tab = Tableau::phase_one(table, rhs, width);
    let z = tab.minimize_artificials()?;
    let objective = t.map(|t| {
        let mut c = vec![Rational::zero(); width];
        c[t] = -Rational::one();
        c
    });
    if let Some(cost) = objective {
        tab.minimize(&cost, width);
        let z = tab.values(width);
        let t = t.unwrap();
        let margin = z[t].clone();
        if lp.has_strict() && !margin.is_positive() {
            return None;
        }
        let point = substitute(&subs, &z);
        debug_assert!(lp.is_satisfied_by(&point));
        return Some(LpSolution {
            point,
            slack: Some(margin),
        });
    }
    let point = substitute(&subs, &z);
    debug_assert!(lp.is_satisfied_by(&point));
    Some(LpSolution { point, slack: None })
}

fn substitute(subs: &[Substitution], z: &[Rational]) -> Vec<Rational> {
    subs.iter()
        .map(|s| {
            s.terms
                .iter()
                .fold(s.constant.clone(), |acc, (c, k)| acc + k * &z[*c])
        })
        .collect()
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns before the artificials.
    width: usize,
}

impl Tableau {
    /// Appends one artificial column per row (after sign-normalizing the rhs).
    fn phase_one(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, width: usize) -> Self {
        let m = rows.len();
        for (i, row) in rows.iter_mut().enumerate() {
            if rhs[i].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                rhs[i] = -rhs[i].clone();
            }
            row.resize(width + m, Rational::zero());
            row[width + i] = Rational::one();
        }
        Tableau {
            rows,
            rhs,
            basis: (width..width + m).collect(),
            width,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Bland's rule over columns `< limit`. Returns false on unboundedness.
    fn minimize(&mut self, cost: &[Rational], limit: usize) -> bool {
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < cost.len() && !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                d.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    /// Phase one; on success drops the artificial columns and returns the basic point.
    fn minimize_artificials(&mut self) -> Option<Vec<Rational>> {
        let width = self.width;
        let total = width + self.rows.len();
        let mut cost = vec![Rational::zero(); total];
        for c in cost.iter_mut().skip(width) {
            *c = Rational::one();
        }
        self.minimize(&cost, total);
        let infeasible = self
            .basis
            .iter()
            .zip(&self.rhs)
            .any(|(&b, v)| b >= width && !v.is_zero());
        if infeasible {
            return None;
        }
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= width {
                match (0..width).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in self.rows.iter_mut() {
            row.truncate(width);
        }
        Some(self.values(width))
    }

    fn values(&self, width: usize) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); width];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < width {
                z[b] = self.rhs[i].clone();
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn closed(lo: i64, hi: i64) -> (Option<Bound>, Option<Bound>) {
        (Some(Bound::closed(int(lo))), Some(Bound::closed(int(hi))))
    }

    #[test]
    fn single_variable_examples() {
        let (lo, hi) = closed(-1, 1);
        let lp = LinearProgram::new(1)
            .equality(vec![int(1)], int(1))
            .bounds(0, lo.clone(), hi.clone());
        assert_eq!(lp_feasible(&lp).unwrap().entries, vec![int(1)]);
        let lp = LinearProgram::new(1)
            .equality(vec![int(1)], int(2))
            .bounds(0, lo, hi);
        assert!(lp_feasible(&lp).is_none());
    }

    #[test]
    fn strict_box_gets_interior_point() {
        let open = || (Some(Bound::open(int(0))), Some(Bound::open(int(1))));
        let (l0, u0) = open();
        let (l1, u1) = open();
        let lp = LinearProgram::new(2)
            .equality(vec![int(1), int(1)], int(1))
            .bounds(0, l0, u0)
            .bounds(1, l1, u1);
        let sol = solve_lp(&lp).unwrap();
        assert!(lp.is_satisfied_by(&sol.point));
        assert_eq!(sol.point, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(sol.slack, Some(ratio(1, 2)));
    }

    #[test]
    fn strict_bound_at_forced_value_is_infeasible() {
        let lp = LinearProgram::new(1)
            .equality(vec![int(1)], int(1))
            .bounds(0, Some(Bound::open(int(-1))), Some(Bound::open(int(1))));
        assert!(solve_lp(&lp).is_none());
    }

    #[test]
    fn free_and_one_sided_variables() {
        // x - y = -5, x ≥ 2, y ≤ 10 (strict), z free with z + y = 0
        let lp = LinearProgram::new(3)
            .equality(vec![int(1), int(-1), int(0)], int(-5))
            .equality(vec![int(0), int(1), int(1)], int(0))
            .bounds(0, Some(Bound::closed(int(2))), None)
            .bounds(1, None, Some(Bound::open(int(10))));
        let sol = solve_lp(&lp).unwrap();
        assert!(lp.is_satisfied_by(&sol.point));
    }

    #[test]
    fn redundant_and_inconsistent_rows() {
        let lp = LinearProgram::new(2)
            .equality(vec![int(1), int(1)], int(2))
            .equality(vec![int(2), int(2)], int(4))
            .bounds(0, Some(Bound::closed(int(0))), None)
            .bounds(1, Some(Bound::closed(int(0))), None);
        assert!(lp_feasible(&lp).is_some());
        let lp = lp.equality(vec![int(1), int(1)], int(3));
        assert!(lp_feasible(&lp).is_none());
        let lp = LinearProgram::new(1).equality(vec![int(0)], int(1));
        assert!(lp_feasible(&lp).is_none());
    }

    #[test]
    fn maximize_slack_prefers_interior() {
        let (lo, hi) = closed(-1, 1);
        let lp = LinearProgram::new(2)
            .equality(vec![int(1), int(-1)], int(0))
            .bounds(0, lo.clone(), hi.clone())
            .bounds(1, lo, hi)
            .objective(Objective::MaximizeSlack);
        let sol = solve_lp(&lp).unwrap();
        assert!(sol.point.iter().all(|x| x.abs() < int(1)));
    }

    #[test]
    fn inverted_bounds_are_infeasible() {
        let lp = LinearProgram::new(1).bounds(0, Some(Bound::closed(int(2))), Some(Bound::closed(int(1))));
        assert!(lp_feasible(&lp).is_none());
        let lp = LinearProgram::new(1).bounds(0, Some(Bound::open(int(1))), Some(Bound::closed(int(1))));
        assert!(lp_feasible(&lp).is_none());
    }
}
