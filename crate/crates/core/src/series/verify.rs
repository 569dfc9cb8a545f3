//! Exact operator checks on truncated series and families.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::LatticeConfig;
use crate::rational::{int, Rational};
use crate::relations::RelationLattice;

use super::families::SolutionFamily;
use super::formal::{Coefficient, Series};
use super::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub operator: String,
    pub offset: Vec<i64>,
    pub value: String,
}

/// Outcome of a batch of exact checks. Only nonzero residuals are recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: usize,
    pub residuals: Vec<Residual>,
    /// Intersection of the windows on which the checks were exact.
    pub valid_window: Option<Window>,
    pub pass: bool,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self {
            checks: 0,
            residuals: Vec::new(),
            valid_window: None,
            pass: true,
        }
    }
}

impl VerificationReport {
    fn note_window(&mut self, w: &Window) {
        self.valid_window = Some(match &self.valid_window {
            Some(old) => old.intersect(w),
            None => w.clone(),
        });
    }

    /// Records every term of `s` as a residual of `operator`.
    pub fn expect_zero<C: Coefficient>(&mut self, operator: &str, s: &Series<C>) {
        self.checks += 1;
        self.note_window(&s.window);
        for (k, c) in &s.terms {
            self.residuals.push(Residual {
                operator: operator.to_string(),
                offset: k.clone(),
                value: c.render(),
            });
        }
        self.pass = self.residuals.is_empty();
    }

    /// Records the difference `lhs - rhs` on the common window.
    pub fn expect_equal<C: Coefficient>(&mut self, operator: &str, lhs: &Series<C>, rhs: &Series<C>) -> Result<()> {
        let rhs = rhs.rebase(&lhs.base)?;
        let w = lhs.window.intersect(&rhs.window);
        let diff = lhs.restrict(&w).add_scaled(&rhs.restrict(&w), &int(-1))?;
        self.expect_zero(operator, &diff);
        Ok(())
    }

    /// Euler operators with parameter `param` must annihilate `s`.
    pub fn expect_euler<C: Coefficient>(&mut self, tag: &str, s: &Series<C>, cfg: &LatticeConfig, param: &[i64]) {
        let p: Vec<Rational> = param.iter().map(|&x| int(x)).collect();
        for (r, e) in s.euler(cfg, &p).iter().enumerate() {
            self.expect_zero(&format!("euler[{r}]{tag}"), e);
        }
    }

    /// Every basis box operator must annihilate `s`.
    pub fn expect_boxes<C: Coefficient>(&mut self, tag: &str, s: &Series<C>, lattice: &RelationLattice) -> Result<()> {
        for (i, l) in lattice.basis.iter().enumerate() {
            let b = s.apply_box(l)?;
            self.expect_zero(&format!("box[{i}]{tag}"), &b);
        }
        Ok(())
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        if let Some(w) = &other.valid_window {
            self.note_window(w);
        }
        self.residuals.extend(other.residuals);
        self.pass = self.residuals.is_empty();
    }
}

fn tag(u: &[i64]) -> String {
    format!("@{u:?}")
}

/// Checks `d_j A_u = A_{u+a_j}`, the Euler operators with parameter `-u`, and
/// the basis box operators on every member of the family.
pub fn verify_k_family<C: Coefficient>(
    fam: &SolutionFamily<C>,
    cfg: &LatticeConfig,
    lattice: &RelationLattice,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for (u, a) in &fam.members {
        for (j, aj) in cfg.lifted.iter().enumerate() {
            let shifted: Vec<i64> = u.iter().zip(aj).map(|(x, y)| x + y).collect();
            if let Some(next) = fam.members.get(&shifted) {
                report.expect_equal(&format!("d{j}{}", tag(u)), &a.derivation(j), next)?;
            }
        }
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        report.expect_euler(&tag(u), a, cfg, &neg);
        report.expect_boxes(&tag(u), a, lattice)?;
    }
    Ok(report)
}
