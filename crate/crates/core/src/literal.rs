//! Structured-text symbol literal `{rows, cols, coeffs: [{k, re, im?}]}`.
//!
//! `re` and `im` hold the coefficient matrix in row-major order; a missing `im` means a
//! real coefficient. An empty `coeffs` list is the zero symbol.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{re, to_f64, Cx, Real};
use crate::symbol::LaurentSymbol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolLiteral {
    pub rows: usize,
    pub cols: usize,
    pub coeffs: Vec<CoeffLiteral>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffLiteral {
    pub k: i64,
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl SymbolLiteral {
    pub fn to_symbol<T: Real>(&self) -> Result<LaurentSymbol<T>> {
        let (r, c) = (self.rows, self.cols);
        if r == 0 || c == 0 {
            return Err(Error::Shape(format!("symbol dimensions must be positive, got {r}x{c}")));
        }
        if self.coeffs.is_empty() {
            return Ok(LaurentSymbol::zero(r, c));
        }
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for co in &self.coeffs {
            let len = r * c;
            if co.re.len() != len {
                return Err(Error::Shape(format!("coefficient k={}: `re` has {} entries, expected {len}", co.k, co.re.len())));
            }
            if let Some(im) = &co.im {
                if im.len() != len {
                    return Err(Error::Shape(format!("coefficient k={}: `im` has {} entries, expected {len}", co.k, im.len())));
                }
            }
            if co.re.iter().chain(co.im.iter().flatten()).any(|x| !x.is_finite()) {
                return Err(Error::Invalid(format!("coefficient k={} has a non-finite entry", co.k)));
            }
            let m = DMatrix::from_fn(r, c, |i, j| {
                let idx = i * c + j;
                let im = co.im.as_ref().map_or(0.0, |v| v[idx]);
                Cx::new(re::<T>(co.re[idx]), re::<T>(im))
            });
            entries.push((co.k, m));
        }
        LaurentSymbol::new(r, c, entries)
    }

    pub fn from_symbol<T: Real>(s: &LaurentSymbol<T>) -> Self {
        let (r, c) = (s.rows(), s.cols());
        let coeffs = s
            .terms()
            .filter(|(_, m)| m.iter().any(|x| x.re != T::zero() || x.im != T::zero()))
            .map(|(k, m)| {
                let at = |i: usize| m[(i / c, i % c)];
                let re_: Vec<f64> = (0..r * c).map(|i| to_f64(at(i).re)).collect();
                let im: Vec<f64> = (0..r * c).map(|i| to_f64(at(i).im)).collect();
                CoeffLiteral { k, re: re_, im: im.iter().any(|&x| x != 0.0).then_some(im) }
            })
            .collect();
        SymbolLiteral { rows: r, cols: c, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn round_trip() {
        let lit: SymbolLiteral = serde_json::from_str(
            r#"{"rows": 2, "cols": 1, "coeffs": [{"k": -1, "re": [0, 1]}, {"k": 2, "re": [1, 0], "im": [0, 0.5]}]}"#,
        )
        .unwrap();
        let s = lit.to_symbol::<f64>().unwrap();
        assert_eq!((s.kmin(), s.kmax()), (-1, 2));
        assert_eq!(s.coeff(2)[(1, 0)], cx(0.0, 0.5));
        assert_eq!(SymbolLiteral::from_symbol(&s), lit);
    }

    #[test]
    fn empty_is_zero() {
        let lit = SymbolLiteral { rows: 1, cols: 2, coeffs: vec![] };
        assert!(lit.to_symbol::<f64>().unwrap().is_zero());
    }

    #[test]
    fn wrong_length() {
        let lit = SymbolLiteral { rows: 2, cols: 2, coeffs: vec![CoeffLiteral { k: 0, re: vec![1.0], im: None }] };
        assert!(matches!(lit.to_symbol::<f64>(), Err(Error::Shape(_))));
    }
}
