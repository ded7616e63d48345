//! Exact two-phase simplex with certificates.
//!
//! Problems are in standard form: minimize `c.x` subject to `A x = b`,
//! `x >= 0`. Every outcome carries a certificate that can be checked with
//! plain matrix arithmetic: a primal point plus dual vector at optimality, a
//! Farkas vector on infeasibility, an improving ray on unboundedness.
//!
//! Pivoting follows Bland's rule (lowest eligible index for both the entering
//! and the leaving variable), so the method terminates on degenerate input.

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};
use crate::ratlin::{RMat, RVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub a: RMat,
    pub b: RVec,
    pub c: RVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `point` is optimal; `dual` satisfies `A^T dual <= c` and `b.dual = value`.
    Optimal { value: Rat, point: RVec, dual: RVec },
    /// `farkas^T A <= 0` and `farkas.b > 0`.
    Infeasible { farkas: RVec },
    /// `ray >= 0`, `A ray = 0`, `c.ray < 0`, and the program is feasible.
    Unbounded { ray: RVec },
}

impl LinearProgram {
    pub fn new(a: RMat, b: RVec, c: RVec) -> Result<Self> {
        check_dim("lp rhs", a.rows(), b.dim())?;
        check_dim("lp objective", a.cols(), c.dim())?;
        Ok(LinearProgram { a, b, c })
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::run(self)
    }

    /// Check an outcome's certificate with exact arithmetic.
    pub fn verify(&self, outcome: &LpOutcome) -> bool {
        match outcome {
            LpOutcome::Optimal { value, point, dual } => {
                point.is_nonnegative()
                    && self.a.mul_vec(point).is_ok_and(|ax| ax == self.b)
                    && &self.c.dot(point) == value
                    && dual.dim() == self.b.dim()
                    && &self.b.dot(dual) == value
                    && self
                        .a
                        .left_mul_vec(dual)
                        .is_ok_and(|ya| ya.iter().zip(self.c.iter()).all(|(l, r)| l <= r))
            }
            LpOutcome::Infeasible { farkas } => {
                farkas.dim() == self.b.dim()
                    && self.b.dot(farkas).is_positive()
                    && self
                        .a
                        .left_mul_vec(farkas)
                        .is_ok_and(|ya| ya.iter().all(|x| !x.is_positive()))
            }
            LpOutcome::Unbounded { ray } => {
                ray.is_nonnegative()
                    && self.a.mul_vec(ray).is_ok_and(|ar| ar.is_zero())
                    && self.c.dot(ray).is_negative()
            }
        }
    }
}

/// Solve `p`; shorthand for [`LinearProgram::solve`].
pub fn solve_lp(p: &LinearProgram) -> LpOutcome {
    p.solve()
}

/// Dense tableau over `n` structural columns followed by `m` artificials.
struct Tableau {
    m: usize,
    n: usize,
    /// `m` rows of `n + m` coefficients followed by the right-hand side.
    t: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    /// +1 / -1 row flips applied to make the initial rhs nonnegative.
    signs: Vec<Rat>,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn run(p: &LinearProgram) -> LpOutcome {
        let m = p.a.rows();
        let n = p.a.cols();
        let mut signs = Vec::with_capacity(m);
        let mut t = Vec::with_capacity(m);
        for i in 0..m {
            let s = if p.b[i].is_negative() {
                -Rat::one()
            } else {
                Rat::one()
            };
            let mut row: Vec<Rat> = (0..n).map(|j| p.a.get(i, j) * &s).collect();
            row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
            row.push(&p.b[i] * &s);
            t.push(row);
            signs.push(s);
        }
        let mut tab = Tableau {
            m,
            n,
            t,
            basis: (n..n + m).collect(),
            signs,
        };

        // Phase I: minimize the sum of artificials.
        let phase1: Vec<Rat> = (0..n + m)
            .map(|j| if j < n { Rat::zero() } else { Rat::one() })
            .collect();
        match tab.optimize(&phase1, n + m) {
            Phase::Optimal => {}
            Phase::Unbounded(_) => unreachable!("phase I objective is bounded below by 0"),
        }
        let infeasibility = tab.objective(&phase1);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible {
                farkas: tab.duals(&phase1),
            };
        }
        tab.drive_out_artificials();

        let mut cost: Vec<Rat> = p.c.iter().cloned().collect();
        cost.extend((0..m).map(|_| Rat::zero()));
        match tab.optimize(&cost, n) {
            Phase::Optimal => {
                let point = tab.primal();
                LpOutcome::Optimal {
                    value: p.c.dot(&point),
                    dual: tab.duals(&cost),
                    point,
                }
            }
            Phase::Unbounded(j) => LpOutcome::Unbounded { ray: tab.ray(j) },
        }
    }

    fn rhs(&self, i: usize) -> &Rat {
        &self.t[i][self.n + self.m]
    }

    fn objective(&self, cost: &[Rat]) -> Rat {
        (0..self.m).fold(Rat::zero(), |acc, i| {
            acc + &cost[self.basis[i]] * self.rhs(i)
        })
    }

    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        (0..self.m).fold(cost[j].clone(), |acc, i| {
            acc - &cost[self.basis[i]] * &self.t[i][j]
        })
    }

    /// Bland's rule simplex; only columns `< enter_limit` may enter.
    fn optimize(&mut self, cost: &[Rat], enter_limit: usize) -> Phase {
        loop {
            let mut is_basic = vec![false; self.n + self.m];
            for &b in &self.basis {
                is_basic[b] = true;
            }
            let entering = (0..enter_limit)
                .find(|&j| !is_basic[j] && self.reduced_cost(cost, j).is_negative());
            let Some(j) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.m {
                let a = &self.t[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Phase::Unbounded(j),
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rat::one() / &self.t[r][c];
        for x in self.t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Pivot zero-level artificials out of the basis where a structural
    /// column allows it. Rows where none does are redundant and stay inert.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.m {
            if self.basis[r] < self.n {
                continue;
            }
            if let Some(j) = (0..self.n).find(|&j| !self.t[r][j].is_zero()) {
                self.pivot(r, j);
            }
        }
    }

    fn primal(&self) -> RVec {
        let mut x = RVec::zeros(self.n);
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x.set(b, self.rhs(i).clone());
            }
        }
        x
    }

    /// `y = c_B^T B^{-1}`, read off the artificial block (which started as the
    /// identity), mapped back through the row flips.
    fn duals(&self, cost: &[Rat]) -> RVec {
        (0..self.m)
            .map(|k| {
                let y = (0..self.m).fold(Rat::zero(), |acc, i| {
                    acc + &cost[self.basis[i]] * &self.t[i][self.n + k]
                });
                y * &self.signs[k]
            })
            .collect()
    }

    fn ray(&self, j: usize) -> RVec {
        let mut r = RVec::zeros(self.n);
        r.set(j, Rat::one());
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                r.set(b, -&self.t[i][j]);
            }
        }
        r
    }
}

/// Result of a finitely generated cone membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `point = sum coefficients[i] * generators[i]`, coefficients `>= 0`.
    Inside(RVec),
    /// `<separator, g> >= 0` for every generator and `<separator, point> < 0`.
    Outside(RVec),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

/// Decide `point in cone(generators)`, with a certificate either way.
pub fn cone_membership(point: &RVec, generators: &[RVec]) -> Result<Membership> {
    for g in generators {
        check_dim("cone membership generator", point.dim(), g.dim())?;
    }
    let a = RMat::from_cols(point.dim(), generators)?;
    let lp = LinearProgram::new(a, point.clone(), RVec::zeros(generators.len()))?;
    Ok(match lp.solve() {
        LpOutcome::Optimal { point: x, .. } => Membership::Inside(x),
        LpOutcome::Infeasible { farkas } => Membership::Outside(farkas.neg()),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective is bounded"),
    })
}

/// Check a membership certificate against its inputs.
pub fn verify_membership(point: &RVec, generators: &[RVec], m: &Membership) -> bool {
    match m {
        Membership::Inside(coeffs) => {
            coeffs.dim() == generators.len()
                && coeffs.is_nonnegative()
                && generators
                    .iter()
                    .zip(coeffs.iter())
                    .fold(RVec::zeros(point.dim()), |acc, (g, c)| acc.axpy(c, g))
                    == *point
        }
        Membership::Outside(sep) => {
            sep.dim() == point.dim()
                && sep.dot(point).is_negative()
                && generators.iter().all(|g| !sep.dot(g).is_negative())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::int;

    #[test]
    fn trivial_optimum() {
        let lp = LinearProgram::new(
            RMat::from_ints(&[&[1]]),
            RVec::from_ints(&[1]),
            RVec::from_ints(&[1]),
        )
        .unwrap();
        let out = lp.solve();
        assert!(lp.verify(&out));
        match out {
            LpOutcome::Optimal { value, point, .. } => {
                assert_eq!(value, int(1));
                assert_eq!(point, RVec::from_ints(&[1]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_has_farkas() {
        let lp = LinearProgram::new(
            RMat::from_ints(&[&[1]]),
            RVec::from_ints(&[-1]),
            RVec::from_ints(&[0]),
        )
        .unwrap();
        let out = lp.solve();
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
        assert!(lp.verify(&out));
    }

    #[test]
    fn unbounded_has_ray() {
        let lp = LinearProgram::new(
            RMat::from_ints(&[&[1, -1]]),
            RVec::from_ints(&[0]),
            RVec::from_ints(&[-1, 0]),
        )
        .unwrap();
        let out = lp.solve();
        assert!(lp.verify(&out));
        match out {
            LpOutcome::Unbounded { ray } => assert_eq!(ray, RVec::from_ints(&[1, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let lp = LinearProgram::new(
            RMat::from_ints(&[&[1, 1], &[2, 2]]),
            RVec::from_ints(&[1, 2]),
            RVec::from_ints(&[1, 2]),
        )
        .unwrap();
        let out = lp.solve();
        assert!(lp.verify(&out), "{out:?}");
        assert!(matches!(out, LpOutcome::Optimal { ref value, .. } if *value == int(1)));
    }

    #[test]
    fn dimension_errors() {
        assert!(LinearProgram::new(RMat::identity(2), RVec::zeros(3), RVec::zeros(2)).is_err());
        assert!(cone_membership(&RVec::zeros(2), &[RVec::zeros(3)]).is_err());
    }

    #[test]
    fn membership_examples() {
        let gens = [RVec::from_ints(&[1, 0]), RVec::from_ints(&[0, 1])];
        let p = RVec::from_ints(&[1, 1]);
        assert_eq!(
            cone_membership(&p, &gens).unwrap(),
            Membership::Inside(RVec::from_ints(&[1, 1]))
        );
        let q = RVec::from_ints(&[-1, 0]);
        let out = cone_membership(&q, &gens).unwrap();
        assert!(verify_membership(&q, &gens, &out));
        match out {
            Membership::Outside(s) => assert_eq!(s.canonical_ray(), RVec::from_ints(&[1, 0])),
            _ => panic!("expected outside"),
        }
    }

    #[test]
    fn empty_generator_set() {
        let zero = cone_membership(&RVec::zeros(2), &[]).unwrap();
        assert!(zero.is_inside());
        let p = RVec::from_ints(&[0, 1]);
        let out = cone_membership(&p, &[]).unwrap();
        assert!(!out.is_inside());
        assert!(verify_membership(&p, &[], &out));
    }
}
