//! Deliberate corruption of the symmetric model or of `X0`, used to show that the
//! verifiers can fail.
//!
//! Syntax:
//!
//! ```text
//! X<i>:drop-<monomial>-term          remove <monomial> from every component of X<i>
//! X<i>:d<k>:drop-<monomial>-term     remove it from the d/dx<k> component only
//! X<i>:d<k>:<monomial>=<rational>    set the coefficient of <monomial> in that component
//! ```
//!
//! `i` ranges over `0..=8` (`X0` is the symmetry field), `k` over `1..=8`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use super::{SymmetricModel, SymmetryField};
use crate::poly::{parse_rational, Monomial, Rational};
use crate::vecfield::VectorField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid mutation `{spec}`: {reason}")]
pub struct MutationError {
    pub spec: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Edit {
    Drop(Monomial),
    Set(Monomial, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mutation {
    /// 0 for `X0`, otherwise the model index `1..=8`.
    pub field: usize,
    /// 0-based component, `None` for all components.
    pub component: Option<usize>,
    pub edit: Edit,
}

const N: usize = 8;

impl FromStr for Mutation {
    type Err = MutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| MutationError { spec: s.to_string(), reason: reason.to_string() };
        let parts: Vec<&str> = s.split(':').collect();
        let (head, component, body) = match parts.as_slice() {
            [h, b] => (*h, None, *b),
            [h, c, b] => (*h, Some(*c), *b),
            _ => return Err(err("expected X<i>:[d<k>:]<edit>")),
        };
        let field: usize = head
            .strip_prefix('X')
            .and_then(|t| t.parse().ok())
            .filter(|&i| i <= 8)
            .ok_or_else(|| err("field must be X0..X8"))?;
        let component = match component {
            None => None,
            Some(c) => Some(
                c.strip_prefix('d')
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|k| (1..=N).contains(k))
                    .ok_or_else(|| err("component must be d1..d8"))?
                    - 1,
            ),
        };
        let monomial = |t: &str| Monomial::parse(t, N).map_err(|e| err(&e.to_string()));
        let edit = if let Some(m) = body.strip_prefix("drop-").and_then(|t| t.strip_suffix("-term")) {
            Edit::Drop(monomial(m)?)
        } else if let Some((m, v)) = body.split_once('=') {
            if component.is_none() {
                return Err(err("setting a coefficient needs a component"));
            }
            Edit::Set(monomial(m.trim())?, parse_rational(v.trim()).map_err(|e| err(&e.to_string()))?)
        } else {
            return Err(err("edit must be drop-<monomial>-term or <monomial>=<value>"));
        };
        Ok(Mutation { field, component, edit })
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}:", self.field)?;
        if let Some(k) = self.component {
            write!(f, "d{}:", k + 1)?;
        }
        match &self.edit {
            Edit::Drop(m) => write!(f, "drop-{m}-term"),
            Edit::Set(m, c) => write!(f, "{m}={c}"),
        }
    }
}

impl Mutation {
    pub fn apply_to_field(&self, v: &VectorField) -> VectorField {
        let mut out = v.clone();
        for k in 0..v.dim() {
            if self.component.is_some_and(|c| c != k) {
                continue;
            }
            let p = out.component(k);
            let replaced = match &self.edit {
                Edit::Drop(m) => p.with_coefficient(m.clone(), Rational::zero()),
                Edit::Set(m, c) => p.with_coefficient(m.clone(), c.clone()),
            };
            out = out.with_component(k, replaced);
        }
        out
    }

    /// Applies the edit to the model or to `X0`.
    pub fn apply(&self, model: &SymmetricModel, symmetry: &SymmetryField) -> (SymmetricModel, SymmetryField) {
        if self.field == 0 {
            (model.clone(), SymmetryField::new(self.apply_to_field(symmetry.field())))
        } else {
            let i = self.field - 1;
            (model.with_field(i, self.apply_to_field(model.x(i))), symmetry.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::sym258::{symmetric_model, symmetry_field};

    #[test]
    fn parse_and_display() {
        let m: Mutation = "X0:drop-x7-term".parse().unwrap();
        assert_eq!(m.field, 0);
        assert_eq!(m.component, None);
        assert_eq!(m.to_string(), "X0:drop-x7-term");
        let m: Mutation = "X1:d7:x1*x2^2=-1/3".parse().unwrap();
        assert_eq!(m.component, Some(6));
        assert_eq!(m.edit, Edit::Set(Monomial::parse("x1*x2^2", 8).unwrap(), rat(-1, 3)));
        assert_eq!(m.to_string(), "X1:d7:x1*x2^2=-1/3");
        for bad in ["X9:drop-x1-term", "X1:d9:x1=1", "X1:x1=1", "Y1:drop-x1-term", "X1:drop-x1", "X1"] {
            assert!(bad.parse::<Mutation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn drop_x7_breaks_rotation() {
        let m: Mutation = "X0:drop-x7-term".parse().unwrap();
        let (model, sym) = m.apply(&symmetric_model(), &symmetry_field());
        assert_eq!(model, symmetric_model());
        assert!(sym.p().coefficient(&Monomial::var(8, 6)).is_zero());
        let report = sym.verify(&model);
        assert!(!report.overall());
    }
}
