//! Eigenfunction-expansion solvers: heat and parabolic equations and the
//! wave equation on an interval, Laplace's equation on rectangles, disks,
//! wedges and annuli, and the vibrating circular membrane.
//!
//! One-dimensional problems use the variables `x` and `t`; the boundary
//! conditions read `α u + β u_x = h` at both ends.

mod disk;
mod eigen;
mod heat;
mod laplace;
mod lift;
pub mod problem;
mod wave;

pub use disk::{
    solve_wave_disk, solve_wave_disk_with, ModalTerm, NumericModalSolution, RadialFn, RadialRule,
};
pub use eigen::{eigenpairs, ClosedModes, EigenSystem, NumericMode};
pub use heat::{reduce_parabolic, solve_heat_mixed, solve_parabolic_mixed};
pub use laplace::{cartesian_laplacian, polar_laplacian, solve_laplace, LaplaceBc, LaplaceSpec};
pub use lift::boundary_lift;
pub use wave::solve_wave_dirichlet;

use crate::error::{Error, Result};
use crate::expr::Expr;

pub const X: &str = "x";
pub const T: &str = "t";

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryRecord {
    pub alpha: Expr,
    pub beta: Expr,
    pub h: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EndKind {
    Dirichlet,
    Neumann,
    Robin,
}

impl BoundaryRecord {
    pub fn new(alpha: Expr, beta: Expr, h: Expr) -> Self {
        BoundaryRecord { alpha, beta, h }
    }

    pub fn dirichlet(h: Expr) -> Self {
        BoundaryRecord::new(Expr::one(), Expr::zero(), h)
    }

    pub fn neumann(h: Expr) -> Self {
        BoundaryRecord::new(Expr::zero(), Expr::one(), h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_zero() && self.beta.is_zero() {
            return Err(Error::invalid("boundary condition with α = β = 0"));
        }
        Ok(())
    }

    pub(crate) fn kind(&self) -> EndKind {
        if self.beta.is_zero() {
            EndKind::Dirichlet
        } else if self.alpha.is_zero() {
            EndKind::Neumann
        } else {
            EndKind::Robin
        }
    }

    pub(crate) fn homogeneous(&self) -> Self {
        BoundaryRecord::new(self.alpha.clone(), self.beta.clone(), Expr::zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Heat,
    Parabolic,
    Wave,
}

/// Initial-boundary value problem on `[0, L]`:
/// heat `u_t = κu_xx + Q`, parabolic `u_t = κu_xx + v u_x + c u + Q`,
/// wave `u_tt = c²u_xx + Q`, with `u(x,0) = F` and, for waves, `u_t(x,0) = G`.
#[derive(Clone, Debug, PartialEq)]
pub struct IbvpSpec {
    pub equation: Equation,
    pub l: Expr,
    pub kappa: Expr,
    pub v: Expr,
    pub c: Expr,
    pub q: Expr,
    pub f: Expr,
    pub g: Expr,
    pub left: BoundaryRecord,
    pub right: BoundaryRecord,
    /// Forced waves only: assume the symbol equals `c·mπ/L` for mode `m`.
    pub resonance: Option<(String, u64)>,
}

impl IbvpSpec {
    pub fn heat(
        l: Expr,
        kappa: Expr,
        f: Expr,
        left: BoundaryRecord,
        right: BoundaryRecord,
    ) -> Self {
        IbvpSpec {
            equation: Equation::Heat,
            l,
            kappa,
            v: Expr::zero(),
            c: Expr::zero(),
            q: Expr::zero(),
            f,
            g: Expr::zero(),
            left,
            right,
            resonance: None,
        }
    }

    pub fn wave(l: Expr, c: Expr, f: Expr, g: Expr) -> Self {
        IbvpSpec {
            equation: Equation::Wave,
            l,
            kappa: Expr::zero(),
            v: Expr::zero(),
            c,
            q: Expr::zero(),
            f,
            g,
            left: BoundaryRecord::dirichlet(Expr::zero()),
            right: BoundaryRecord::dirichlet(Expr::zero()),
            resonance: None,
        }
    }

    pub fn with_source(mut self, q: Expr) -> Self {
        self.q = q;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        self.left.validate()?;
        self.right.validate()?;
        positive("L", &self.l)?;
        if self.equation != Equation::Wave {
            positive("κ", &self.kappa)?;
        }
        for (name, e) in [
            ("L", &self.l),
            ("κ", &self.kappa),
            ("v", &self.v),
            ("c", &self.c),
        ] {
            if e.depends_on(X) || e.depends_on(T) || e.depends_on(crate::expr::INDEX) {
                return Err(Error::invalid(format!("{} must be constant", name)));
            }
        }
        Ok(())
    }
}

/// Rejects numeric values that are not positive; symbols are assumed positive.
pub(crate) fn positive(name: &str, e: &Expr) -> Result<()> {
    if e.is_zero() {
        return Err(Error::invalid(format!("{} must be positive", name)));
    }
    if let Some(s) = e.as_scalar() {
        if !s.is_real()
            || s.cmp_value(&crate::scalar::Scalar::zero()) != std::cmp::Ordering::Greater
        {
            return Err(Error::invalid(format!(
                "{} must be positive, got {}",
                name, s
            )));
        }
    }
    Ok(())
}

/// A fresh integration variable not occurring in any of `exprs`.
pub(crate) fn fresh_symbol(exprs: &[&Expr]) -> String {
    ["s", "tau", "s1", "s2", "s3"]
        .iter()
        .find(|c| exprs.iter().all(|e| !e.free_symbols().contains(**c)))
        .map(|c| c.to_string())
        .unwrap_or_else(|| "s_dummy".into())
}
