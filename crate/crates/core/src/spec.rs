//! Declarative description of an invariant subspace of `S_E ⊕ S_F*`.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::symbol::LaurentSymbol;

#[derive(Clone, Debug)]
pub enum Variant<T: Real> {
    /// `N₃ = U H²_{E₀}`
    TypeI { u: LaurentSymbol<T> },
    /// `N₃ = U H²_{E₀} ⊕ Ω L²_{E₂}`; `u = None` when there is no simply invariant part.
    TypeII { u: Option<LaurentSymbol<T>>, omega: LaurentSymbol<T> },
    /// `N = ker W_Ψ ∩ (Θ H²_{E₁} ⊕ H²_F)`.
    ///
    /// `theta = None` means no constraint (Θ = I_E); a zero Θ forces the E-part to vanish.
    /// `gamma`, when given, is checked against `A = ΘΓ` with `A(z) = Ψ_E(z̄)`.
    KernelRep { psi: LaurentSymbol<T>, theta: Option<LaurentSymbol<T>>, gamma: Option<LaurentSymbol<T>> },
    /// `N = span{R(V_Φ), 0 ⊕ K_Θ}`.
    ///
    /// `theta = None` means no model-space term; a zero Θ gives `K_0 = H²_F`.
    RangeRep { phi: LaurentSymbol<T>, theta: Option<LaurentSymbol<T>> },
}

#[derive(Clone, Debug)]
pub struct InvariantSubspaceSpec<T: Real> {
    pub variant: Variant<T>,
    pub dim_e: usize,
    pub dim_f: usize,
}

impl<T: Real> InvariantSubspaceSpec<T> {
    pub fn new(variant: Variant<T>, dim_e: usize, dim_f: usize) -> Result<Self> {
        let s = InvariantSubspaceSpec { variant, dim_e, dim_f };
        s.validate()?;
        Ok(s)
    }

    pub fn type_i(u: LaurentSymbol<T>, dim_e: usize, dim_f: usize) -> Result<Self> {
        Self::new(Variant::TypeI { u }, dim_e, dim_f)
    }

    pub fn type_ii(u: Option<LaurentSymbol<T>>, omega: LaurentSymbol<T>, dim_e: usize, dim_f: usize) -> Result<Self> {
        Self::new(Variant::TypeII { u, omega }, dim_e, dim_f)
    }

    pub fn validate(&self) -> Result<()> {
        let (e, f) = (self.dim_e, self.dim_f);
        if e == 0 || f == 0 {
            return Err(Error::Shape("dimE and dimF must be positive".into()));
        }
        let rows = |name: &str, s: &LaurentSymbol<T>, want: usize| {
            if s.rows() == want {
                Ok(())
            } else {
                Err(Error::Shape(format!("`{name}` has {} rows, expected {want}", s.rows())))
            }
        };
        match &self.variant {
            Variant::TypeI { u } => rows("U", u, e + f)?,
            Variant::TypeII { u, omega } => {
                if let Some(u) = u {
                    rows("U", u, e + f)?;
                }
                if omega.rows() != e && omega.rows() != e + f {
                    return Err(Error::Shape(format!(
                        "`Omega` has {} rows, expected {e} (or {} with zero F-rows)",
                        omega.rows(),
                        e + f
                    )));
                }
            }
            Variant::KernelRep { psi, theta, gamma } => {
                rows("Psi", psi, e + f)?;
                if !psi.row_block(e, e + f).is_analytic() {
                    return Err(Error::NotAnalytic("Psi_F (the Toeplitz rows of Psi)".into()));
                }
                if let Some(t) = theta {
                    rows("Theta", t, e)?;
                    if !t.is_analytic() {
                        return Err(Error::NotAnalytic("Theta".into()));
                    }
                }
                if let (Some(t), Some(g)) = (theta, gamma) {
                    if g.rows() != t.cols() || g.cols() != psi.cols() {
                        return Err(Error::Shape("`Gamma` must map E₀ into E₁".into()));
                    }
                }
            }
            Variant::RangeRep { phi, theta } => {
                rows("Phi", phi, e + f)?;
                if !phi.row_block(0, e).is_analytic() {
                    return Err(Error::NotAnalytic("Phi_E (the Toeplitz rows of Phi, A and B must be in H^inf)".into()));
                }
                if let Some(t) = theta {
                    rows("Theta", t, f)?;
                    if !t.is_analytic() {
                        return Err(Error::NotAnalytic("Theta".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim E₀`, the column count of `U` (0 without a simply invariant part).
    pub fn dim_e0(&self) -> usize {
        match &self.variant {
            Variant::TypeI { u } => u.cols(),
            Variant::TypeII { u, .. } => u.as_ref().map_or(0, |u| u.cols()),
            _ => 0,
        }
    }

    /// `dim E₂`, the column count of `Ω`.
    pub fn dim_e2(&self) -> usize {
        match &self.variant {
            Variant::TypeII { omega, .. } => omega.cols(),
            _ => 0,
        }
    }

    pub fn u(&self) -> Option<&LaurentSymbol<T>> {
        match &self.variant {
            Variant::TypeI { u } => Some(u),
            Variant::TypeII { u, .. } => u.as_ref(),
            _ => None,
        }
    }

    /// `Ω` as a map into `E ⊕ F` (zero F-rows appended when given into `E`).
    pub fn omega_full(&self) -> Option<LaurentSymbol<T>> {
        match &self.variant {
            Variant::TypeII { omega, .. } if omega.rows() == self.dim_e => {
                let z = LaurentSymbol::zero(self.dim_f, omega.cols());
                Some(LaurentSymbol::vstack(omega, &z).expect("columns agree"))
            }
            Variant::TypeII { omega, .. } => Some(omega.clone()),
            _ => None,
        }
    }

    /// Largest `|k|` over every symbol of the data.
    pub fn band(&self) -> i64 {
        let b = |s: &LaurentSymbol<T>| s.band();
        let ob = |s: &Option<LaurentSymbol<T>>| s.as_ref().map_or(0, b);
        match &self.variant {
            Variant::TypeI { u } => b(u),
            Variant::TypeII { u, omega } => ob(u).max(b(omega)),
            Variant::KernelRep { psi, theta, gamma } => b(psi).max(ob(theta)).max(ob(gamma)),
            Variant::RangeRep { phi, theta } => b(phi).max(ob(theta)),
        }
    }
}
