//! Scenario files: an invariant subspace, the data to check it against, and a check list.
//!
//! The on-disk schema is documented in `docs/scenario.md`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::SymbolLiteral;
use crate::spec::{InvariantSubspaceSpec, Variant};
use crate::symbol::LaurentSymbol;
use crate::twocond::SubspaceType;

type Sym = LaurentSymbol<f64>;

pub const DEFAULT_N_LIST: [usize; 3] = [8, 16, 32];
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Twocond,
    Classify,
    Invariance,
    RoundTrip,
    KernelRep,
    RangeRep,
    Splitting,
    BlockSplit,
    Intertwining,
    Nehari,
    PartialIsometry,
    ExplicitFamily,
    HankelRank,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Twocond => "twocond",
            CheckId::Classify => "classify",
            CheckId::Invariance => "invariance",
            CheckId::RoundTrip => "round_trip",
            CheckId::KernelRep => "kernel_rep",
            CheckId::RangeRep => "range_rep",
            CheckId::Splitting => "splitting",
            CheckId::BlockSplit => "block_split",
            CheckId::Intertwining => "intertwining",
            CheckId::Nehari => "nehari",
            CheckId::PartialIsometry => "partial_isometry",
            CheckId::ExplicitFamily => "explicit_family",
            CheckId::HankelRank => "hankel_rank",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantTag {
    TypeI,
    TypeII,
    KernelRep,
    RangeRep,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawKernel {
    #[serde(rename = "Psi")]
    pub psi: SymbolLiteral,
    #[serde(rename = "Theta", default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<SymbolLiteral>,
    #[serde(rename = "Gamma", default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<SymbolLiteral>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawRange {
    #[serde(rename = "Phi")]
    pub phi: SymbolLiteral,
    #[serde(rename = "Theta", default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<SymbolLiteral>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHankel {
    pub symbol: SymbolLiteral,
    pub rank: usize,
    #[serde(default = "default_hankel_tol")]
    pub rel_tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

fn default_hankel_tol() -> f64 {
    1e-8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub m: usize,
    pub n: usize,
}

/// Scenario exactly as written on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub name: String,
    pub variant: VariantTag,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    #[serde(rename = "dimF")]
    pub dim_f: usize,
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub u: Option<SymbolLiteral>,
    #[serde(rename = "Omega", default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<SymbolLiteral>,
    #[serde(rename = "Psi", default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<SymbolLiteral>,
    #[serde(rename = "Phi", default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<SymbolLiteral>,
    #[serde(rename = "Theta", default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<SymbolLiteral>,
    #[serde(rename = "Gamma", default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<SymbolLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<RawKernel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<RawRange>,
    pub checks: Vec<CheckId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_cap: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_splitting: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_type: Option<SubspaceType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hankel: Option<RawHankel>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nehari_candidates: Vec<[SymbolLiteral; 2]>,
}

#[derive(Clone, Debug)]
pub struct KernelData {
    pub psi: Sym,
    pub theta: Option<Sym>,
    pub gamma: Option<Sym>,
}

#[derive(Clone, Debug)]
pub struct RangeData {
    pub phi: Sym,
    pub theta: Option<Sym>,
}

#[derive(Clone, Debug)]
pub struct HankelData {
    pub symbol: Sym,
    pub rank: usize,
    pub rel_tol: f64,
    pub n: Option<usize>,
}

/// Validated scenario, with every symbol canonicalized.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub spec: InvariantSubspaceSpec<f64>,
    /// Kernel description to compare against `N` (defaults to the one derived from `U`).
    pub kernel: Option<KernelData>,
    /// Range description to compare against `N` (defaults to the one derived from `U`).
    pub range: Option<RangeData>,
    pub checks: Vec<CheckId>,
    pub n_list: Vec<usize>,
    pub samples: Option<usize>,
    pub tol: f64,
    pub rank_tol: f64,
    pub window_cap: Option<i64>,
    pub expect_splitting: Option<bool>,
    pub expect_type: Option<SubspaceType>,
    pub family: Option<Family>,
    pub hankel: Option<HankelData>,
    pub nehari_candidates: Vec<(Sym, Sym)>,
}

fn field(name: &str, e: Error) -> Error {
    Error::Parse(format!("field `{name}`: {e}"))
}

fn sym(name: &str, lit: &SymbolLiteral) -> Result<Sym> {
    lit.to_symbol().map_err(|e| field(name, e))
}

fn opt_sym(name: &str, lit: &Option<SymbolLiteral>) -> Result<Option<Sym>> {
    lit.as_ref().map(|l| sym(name, l)).transpose()
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parse(msg.into()))
    }
}

impl RawScenario {
    pub fn validate(&self) -> Result<Scenario> {
        let (e, f) = (self.dim_e, self.dim_f);
        let fields = [
            ("U", self.u.is_some()),
            ("Omega", self.omega.is_some()),
            ("Psi", self.psi.is_some()),
            ("Phi", self.phi.is_some()),
            ("Theta", self.theta.is_some()),
            ("Gamma", self.gamma.is_some()),
        ];
        let allowed: &[&str] = match self.variant {
            VariantTag::TypeI => &["U"],
            VariantTag::TypeII => &["U", "Omega"],
            VariantTag::KernelRep => &["Psi", "Theta", "Gamma"],
            VariantTag::RangeRep => &["Phi", "Theta"],
        };
        for (name, present) in fields {
            require(
                !present || allowed.contains(&name),
                format!("field `{name}` is not used by variant {:?}", self.variant),
            )?;
        }
        let missing = |name: &str| Error::Parse(format!("field `{name}` is required by variant {:?}", self.variant));
        let variant = match self.variant {
            VariantTag::TypeI => Variant::TypeI { u: sym("U", self.u.as_ref().ok_or_else(|| missing("U"))?)? },
            VariantTag::TypeII => Variant::TypeII {
                u: opt_sym("U", &self.u)?,
                omega: sym("Omega", self.omega.as_ref().ok_or_else(|| missing("Omega"))?)?,
            },
            VariantTag::KernelRep => Variant::KernelRep {
                psi: sym("Psi", self.psi.as_ref().ok_or_else(|| missing("Psi"))?)?,
                theta: opt_sym("Theta", &self.theta)?,
                gamma: opt_sym("Gamma", &self.gamma)?,
            },
            VariantTag::RangeRep => Variant::RangeRep {
                phi: sym("Phi", self.phi.as_ref().ok_or_else(|| missing("Phi"))?)?,
                theta: opt_sym("Theta", &self.theta)?,
            },
        };
        let spec = InvariantSubspaceSpec::new(variant, e, f)?;

        let kernel = match (&self.kernel, &spec.variant) {
            (Some(k), _) => {
                let kd = KernelData {
                    psi: sym("kernel.Psi", &k.psi)?,
                    theta: opt_sym("kernel.Theta", &k.theta)?,
                    gamma: opt_sym("kernel.Gamma", &k.gamma)?,
                };
                let v = Variant::KernelRep { psi: kd.psi.clone(), theta: kd.theta.clone(), gamma: kd.gamma.clone() };
                InvariantSubspaceSpec::new(v, e, f).map_err(|err| field("kernel", err))?;
                Some(kd)
            }
            (None, Variant::KernelRep { psi, theta, gamma }) => {
                Some(KernelData { psi: psi.clone(), theta: theta.clone(), gamma: gamma.clone() })
            }
            _ => None,
        };
        let range = match (&self.range, &spec.variant) {
            (Some(r), _) => {
                let rd = RangeData { phi: sym("range.Phi", &r.phi)?, theta: opt_sym("range.Theta", &r.theta)? };
                let v = Variant::RangeRep { phi: rd.phi.clone(), theta: rd.theta.clone() };
                InvariantSubspaceSpec::new(v, e, f).map_err(|err| field("range", err))?;
                Some(rd)
            }
            (None, Variant::RangeRep { phi, theta }) => Some(RangeData { phi: phi.clone(), theta: theta.clone() }),
            _ => None,
        };

        let n_list = match (&self.n, &self.n_list) {
            (Some(_), Some(_)) => return Err(Error::Parse("give either `n` or `n_list`, not both".into())),
            (Some(n), None) => vec![*n],
            (None, Some(l)) => l.clone(),
            (None, None) => DEFAULT_N_LIST.to_vec(),
        };
        validate_n_list(&n_list)?;
        require(!self.checks.is_empty(), "field `checks` must not be empty")?;
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        let rank_tol = self.rank_tol.unwrap_or(DEFAULT_RANK_TOL);
        require(tol > 0.0 && tol.is_finite(), "field `tol` must be positive")?;
        require(rank_tol > 0.0 && rank_tol.is_finite(), "field `rank_tol` must be positive")?;
        if let Some(s) = self.samples {
            require(s > 0, "field `samples` must be positive")?;
        }

        let hankel = self
            .hankel
            .as_ref()
            .map(|h| -> Result<HankelData> {
                Ok(HankelData { symbol: sym("hankel.symbol", &h.symbol)?, rank: h.rank, rel_tol: h.rel_tol, n: h.n })
            })
            .transpose()?;
        let nehari_candidates = self
            .nehari_candidates
            .iter()
            .map(|[l1, l2]| Ok((sym("nehari_candidates", l1)?, sym("nehari_candidates", l2)?)))
            .collect::<Result<Vec<_>>>()?;

        let sc = Scenario {
            name: self.name.clone(),
            spec,
            kernel,
            range,
            checks: self.checks.clone(),
            n_list,
            samples: self.samples,
            tol,
            rank_tol,
            window_cap: self.window_cap,
            expect_splitting: self.expect_splitting,
            expect_type: self.expect_type,
            family: self.family,
            hankel,
            nehari_candidates,
        };
        sc.check_requirements()?;
        Ok(sc)
    }
}

pub fn validate_n_list(n_list: &[usize]) -> Result<()> {
    require(!n_list.is_empty(), "`n_list` must not be empty")?;
    require(n_list.windows(2).all(|w| w[0] < w[1]), "`n_list` must be strictly ascending")?;
    require(n_list[0] > 0, "`n_list` entries must be positive")
}

impl Scenario {
    fn is_type(&self) -> bool {
        matches!(self.spec.variant, Variant::TypeI { .. } | Variant::TypeII { .. })
    }

    /// `(Ψ, Θ, Γ)` for the kernel comparison: explicit data, or `Ψ = [z̄U_E; U_F]` for type I.
    pub fn kernel_data(&self) -> Option<KernelData> {
        if let Some(k) = &self.kernel {
            return Some(k.clone());
        }
        match &self.spec.variant {
            Variant::TypeI { u } => {
                let (psi, _) = crate::representation::symbols_from_u(u, self.spec.dim_e).ok()?;
                Some(KernelData { psi, theta: None, gamma: None })
            }
            _ => None,
        }
    }

    /// `(Φ, Θ)` for the range comparison: explicit data, or `Φ = Ψ(z̄)` for type I.
    pub fn range_data(&self) -> Option<RangeData> {
        if let Some(r) = &self.range {
            return Some(r.clone());
        }
        match &self.spec.variant {
            Variant::TypeI { u } => {
                let (_, phi) = crate::representation::symbols_from_u(u, self.spec.dim_e).ok()?;
                Some(RangeData { phi, theta: None })
            }
            _ => None,
        }
    }

    fn check_requirements(&self) -> Result<()> {
        let (e, f) = (self.spec.dim_e, self.spec.dim_f);
        for &c in &self.checks {
            let need = |ok: bool, what: &str| require(ok, format!("check `{}` requires {what}", c.as_str()));
            match c {
                CheckId::Twocond | CheckId::Classify | CheckId::RoundTrip => {
                    need(self.is_type(), "variant type_i or type_ii")?
                }
                CheckId::KernelRep => need(self.kernel_data().is_some(), "`kernel` data or a type_i variant")?,
                CheckId::RangeRep => need(self.range_data().is_some(), "`range` data or a type_i variant")?,
                CheckId::Intertwining | CheckId::PartialIsometry => need(
                    self.kernel_data().is_some() || self.range_data().is_some(),
                    "`kernel` or `range` data, or a type_i variant",
                )?,
                CheckId::Splitting => {
                    let phi = self.range_data().map(|r| r.phi);
                    need(
                        e == 1 && f == 1 && phi.is_some_and(|p| p.shape() == (2, 2)),
                        "dimE = dimF = 1 and a 2x2 Phi (from `range` or a type_i U)",
                    )?;
                    need(self.expect_splitting.is_some(), "`expect_splitting`")?
                }
                CheckId::BlockSplit => need(self.expect_splitting.is_some(), "`expect_splitting`")?,
                CheckId::Nehari => need(
                    self.range_data().is_some_and(|r| r.phi.cols() == e + f),
                    "a square Phi with dimE + dimF columns",
                )?,
                CheckId::ExplicitFamily => need(
                    self.family.is_some_and(|fm| fm.m == e && fm.n == f),
                    "`family` with m = dimE and n = dimF",
                )?,
                CheckId::HankelRank => need(self.hankel.is_some(), "`hankel` data")?,
                CheckId::Invariance => {}
            }
        }
        Ok(())
    }
}

pub fn parse_scenario_str(text: &str) -> Result<Scenario> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.validate()
}

pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_scenario_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "name": "minimal",
        "variant": "type_i",
        "dimE": 1, "dimF": 1,
        "U": {"rows": 2, "cols": 1, "coeffs": [{"k": 0, "re": [1, 0]}]},
        "checks": ["twocond", "invariance"],
        "n_list": [8]
    }"#;

    #[test]
    fn minimal_parses() {
        let sc = parse_scenario_str(MINIMAL).unwrap();
        assert_eq!(sc.n_list, vec![8]);
        assert_eq!(sc.checks, vec![CheckId::Twocond, CheckId::Invariance]);
        assert_eq!(sc.tol, DEFAULT_TOL);
    }

    #[test]
    fn shape_error_names_field() {
        let bad = MINIMAL.replace(r#""rows": 2, "cols": 1, "coeffs": [{"k": 0, "re": [1, 0]}]"#,
            r#""rows": 3, "cols": 2, "coeffs": [{"k": 0, "re": [1, 0, 0, 1, 0, 0]}]"#);
        let err = parse_scenario_str(&bad).unwrap_err().to_string();
        assert!(err.contains("`U`"), "{err}");
    }

    #[test]
    fn syntax_error_has_line() {
        let err = parse_scenario_str("{\n\"name\": \"x\",\n\"variant\": \"type_i\" \"dimE\": 1}").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn unknown_field_has_line() {
        let bad = MINIMAL.replace("\"checks\"", "\"chekcs\"");
        let err = parse_scenario_str(&bad).unwrap_err().to_string();
        assert!(err.contains("chekcs") && err.contains("line"), "{err}");
    }

    #[test]
    fn non_analytic_range_block() {
        let text = r#"{
            "name": "bad-range", "variant": "range_rep", "dimE": 1, "dimF": 1,
            "Phi": {"rows": 2, "cols": 1, "coeffs": [{"k": -1, "re": [1, 0]}]},
            "checks": ["range_rep"]
        }"#;
        let err = parse_scenario_str(text).unwrap_err().to_string();
        assert!(err.contains("H^inf"), "{err}");
    }

    #[test]
    fn requirements_enforced() {
        let bad = MINIMAL.replace("\"invariance\"", "\"explicit_family\"");
        assert!(parse_scenario_str(&bad).unwrap_err().to_string().contains("family"));
        let bad = MINIMAL.replace("[8]", "[16, 8]");
        assert!(parse_scenario_str(&bad).is_err());
    }
}
