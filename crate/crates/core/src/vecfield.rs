//! Polynomial vector fields on R^N and their Lie brackets.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SparseEchelon;
use crate::poly::{Monomial, PolyError, Polynomial, Rational, WeightVector, WeightedDegree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field has {components} components but ambient dimension {dim}")]
    ComponentCount { components: usize, dim: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `sum_k p_k(x) d/dx_k`; component `k` is the coefficient of the `k`-th coordinate derivation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VectorField {
    n: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField { n, components: vec![Polynomial::zero(n); n] }
    }

    /// The coordinate derivation `d/dx_{k+1}`.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        v.components[k] = Polynomial::one(n);
        v
    }

    pub fn new(components: Vec<Polynomial>) -> Result<Self, FieldError> {
        let n = components.len();
        for c in &components {
            if c.dim() != n {
                return Err(FieldError::ComponentCount { components: n, dim: c.dim() });
            }
        }
        Ok(VectorField { n, components })
    }

    /// Builds a field from `(k, p_k)` pairs; unspecified components are zero.
    pub fn from_sparse(n: usize, parts: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        let mut v = Self::zero(n);
        for (k, p) in parts {
            assert_eq!(p.dim(), n, "component dimension mismatch");
            v.components[k] += &p;
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Polynomial {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn with_component(&self, k: usize, p: Polynomial) -> Self {
        let mut v = self.clone();
        v.components[k] = p;
        v
    }

    fn check_dim(&self, other: &VectorField) -> Result<(), FieldError> {
        if self.n != other.n {
            return Err(FieldError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// The derivative of `p` along this field.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, FieldError> {
        if p.dim() != self.n {
            return Err(FieldError::DimensionMismatch(self.n, p.dim()));
        }
        let mut out = Polynomial::zero(self.n);
        for (j, vj) in self.components.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let d = p.partial(j)?;
            if !d.is_zero() {
                out += &(vj * &d);
            }
        }
        Ok(out)
    }

    /// `[v, w]_k = sum_j v_j dw_k/dx_j - w_j dv_k/dx_j`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField, FieldError> {
        self.check_dim(other)?;
        let mut components = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let a = self.apply(&other.components[k])?;
            let b = other.apply(&self.components[k])?;
            components.push(&a - &b);
        }
        Ok(VectorField { n: self.n, components })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, FieldError> {
        if point.len() != self.n {
            return Err(FieldError::DimensionMismatch(self.n, point.len()));
        }
        self.components
            .iter()
            .map(|c| c.evaluate(point).map_err(FieldError::from))
            .collect()
    }

    pub fn try_add(&self, other: &VectorField) -> Result<VectorField, FieldError> {
        self.check_dim(other)?;
        Ok(VectorField {
            n: self.n,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &VectorField) -> Result<VectorField, FieldError> {
        self.check_dim(other)?;
        Ok(VectorField {
            n: self.n,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField { n: self.n, components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// Pointwise product with a polynomial function.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<VectorField, FieldError> {
        if p.dim() != self.n {
            return Err(FieldError::DimensionMismatch(self.n, p.dim()));
        }
        Ok(VectorField { n: self.n, components: self.components.iter().map(|c| c * p).collect() })
    }

    /// Exact equality of canonical forms.
    pub fn equal(&self, other: &VectorField) -> Result<bool, FieldError> {
        self.check_dim(other)?;
        Ok(self == other)
    }

    /// Checks that component `k` has weighted degree `w_k - weight` (or vanishes).
    pub fn weight_homogeneity(
        &self,
        w: &WeightVector,
        weight: i64,
    ) -> Result<(), HomogeneityViolation> {
        assert_eq!(w.len(), self.n, "weight vector length");
        for (k, c) in self.components.iter().enumerate() {
            let target = w.get(k) as i64 - weight;
            for (m, _) in c.terms() {
                if m.weighted_degree(w) as i64 != target {
                    return Err(HomogeneityViolation {
                        component: k,
                        monomial: m.clone(),
                        expected: target,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_weight_homogeneous(&self, w: &WeightVector, weight: i64) -> bool {
        self.weight_homogeneity(w, weight).is_ok()
    }

    /// Weight of the field when it is homogeneous, `None` for zero or mixed fields.
    pub fn weight(&self, w: &WeightVector) -> Option<i64> {
        let mut found = None;
        for (k, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let WeightedDegree::Homogeneous(d) = c.weighted_degree(w).ok()? else {
                return None;
            };
            let cand = w.get(k) as i64 - d as i64;
            match found {
                None => found = Some(cand),
                Some(prev) if prev != cand => return None,
                _ => {}
            }
        }
        found
    }

    /// Flattened coefficient vector keyed by (component, monomial).
    pub fn flat_terms(&self) -> impl Iterator<Item = ((usize, Monomial), Rational)> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().map(move |(m, c)| ((k, m.clone()), c.clone())))
    }

    pub fn to_latex(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| {
                let d = format!("\\frac{{\\partial}}{{\\partial x_{{{}}}}}", k + 1);
                if *p == Polynomial::one(self.n) {
                    d
                } else if p.len() == 1 {
                    format!("{} {}", p.to_latex(), d)
                } else {
                    format!("\\left({}\\right) {}", p.to_latex(), d)
                }
            })
            .collect();
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if p.len() == 1 && p.constant_term() == Rational::from_integer(1.into()) {
                write!(f, "d{}", k + 1)?;
            } else {
                write!(f, "({p}) d{}", k + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for VectorField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            components: Vec<Polynomial>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.components.len() != raw.n {
            return Err(D::Error::custom(format!(
                "expected {} components, found {}",
                raw.n,
                raw.components.len()
            )));
        }
        VectorField::new(raw.components).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityViolation {
    pub component: usize,
    pub monomial: Monomial,
    pub expected: i64,
}

impl fmt::Display for HomogeneityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term {} in component {} does not have weighted degree {}",
            self.monomial,
            self.component + 1,
            self.expected
        )
    }
}

/// Ordered, named family of vector fields on a common R^N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Frame {
    names: Vec<String>,
    fields: Vec<VectorField>,
}

impl Frame {
    pub fn new(names: Vec<String>, fields: Vec<VectorField>) -> Result<Self, FieldError> {
        assert_eq!(names.len(), fields.len(), "one name per field");
        if let Some(first) = fields.first() {
            for f in &fields[1..] {
                first.check_dim(f)?;
            }
        }
        Ok(Frame { names, fields })
    }

    /// Names the fields `{prefix}1 .. {prefix}m`.
    pub fn with_prefix(prefix: &str, fields: Vec<VectorField>) -> Result<Self, FieldError> {
        let names = (1..=fields.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(names, fields)
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.fields.first().map_or(0, VectorField::dim)
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Rank of the frame as a family of fields over the constants.
    pub fn symbolic_rank(&self) -> usize {
        let mut e = SparseEchelon::new();
        for f in &self.fields {
            e.insert(f.flat_terms());
        }
        e.rank()
    }

    /// `sum_i c_i F_i`.
    pub fn combination(&self, coeffs: &[Rational]) -> VectorField {
        let mut acc = VectorField::zero(self.dim());
        for (c, f) in coeffs.iter().zip(&self.fields) {
            if !c.is_zero() {
                acc = acc.try_add(&f.scale(c)).expect("frame fields share dimension");
            }
        }
        acc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("frame serializes")
    }

    pub fn from_json(s: &str) -> Result<Frame, String> {
        #[derive(Deserialize)]
        struct Raw {
            names: Vec<String>,
            fields: Vec<VectorField>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| e.to_string())?;
        if raw.names.len() != raw.fields.len() {
            return Err("names and fields differ in length".into());
        }
        Frame::new(raw.names, raw.fields).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn mono(c: Rational, e: &[u32]) -> Polynomial {
        Polynomial::monomial(c, e)
    }

    #[test]
    fn heisenberg_bracket() {
        // X = d1 - x2/2 d3, Y = d2 + x1/2 d3, [X, Y] = d3
        let n = 3;
        let x = VectorField::from_sparse(
            n,
            [(0, Polynomial::one(n)), (2, mono(rat(-1, 2), &[0, 1, 0]))],
        );
        let y = VectorField::from_sparse(
            n,
            [(1, Polynomial::one(n)), (2, mono(rat(1, 2), &[1, 0, 0]))],
        );
        assert_eq!(x.lie_bracket(&y).unwrap(), VectorField::coordinate(n, 2));
        assert!(x.lie_bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let a = VectorField::coordinate(2, 0);
        let b = VectorField::coordinate(3, 0);
        assert_eq!(a.lie_bracket(&b), Err(FieldError::DimensionMismatch(2, 3)));
        assert!(a.evaluate(&[int(0)]).is_err());
    }

    #[test]
    fn evaluation_at_points() {
        let n = 2;
        let v = VectorField::from_sparse(n, [(0, Polynomial::one(n)), (1, mono(rat(1, 2), &[2, 0]))]);
        assert_eq!(v.evaluate(&[int(0), int(0)]).unwrap(), vec![int(1), int(0)]);
        assert_eq!(v.evaluate(&[int(2), int(5)]).unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn homogeneity_witness() {
        let w = WeightVector::new(vec![1, 1, 2]);
        let good = VectorField::from_sparse(3, [(1, Polynomial::one(3)), (2, Polynomial::var(3, 0))]);
        assert!(good.is_weight_homogeneous(&w, 1));
        assert_eq!(good.weight(&w), Some(1));
        let bad = VectorField::from_sparse(3, [(1, Polynomial::one(3)), (2, Polynomial::one(3))]);
        let err = bad.weight_homogeneity(&w, 1).unwrap_err();
        assert_eq!(err.component, 2);
        assert_eq!(err.monomial, Monomial::one(3));
        assert_eq!(bad.weight(&w), None);
    }

    #[test]
    fn latex_and_text() {
        let n = 3;
        let v = VectorField::from_sparse(
            n,
            [(1, Polynomial::one(n)), (2, mono(int(-1), &[1, 0, 0]))],
        );
        assert_eq!(
            v.to_latex(),
            "\\frac{\\partial}{\\partial x_{2}} - x_{1} \\frac{\\partial}{\\partial x_{3}}"
        );
        assert_eq!(v.to_string(), "d2 + (-x1) d3");
    }

    #[test]
    fn json_round_trip() {
        let n = 2;
        let v = VectorField::from_sparse(n, [(1, mono(rat(-1, 3), &[1, 1]))]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"components":[{"n":2,"terms":[]},{"n":2,"terms":[{"c":"-1/3","e":[1,1]}]}]}"#
        );
        let back: VectorField = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<VectorField>(r#"{"n":2,"components":[]}"#).is_err());
    }

    #[test]
    fn frame_rank_and_combination() {
        let n = 2;
        let f = Frame::with_prefix(
            "E",
            vec![
                VectorField::coordinate(n, 0),
                VectorField::coordinate(n, 1),
                VectorField::coordinate(n, 0).scale(&int(3)),
            ],
        )
        .unwrap();
        assert_eq!(f.symbolic_rank(), 2);
        assert_eq!(f.combination(&[int(1), int(0), int(-1)]), VectorField::coordinate(n, 0).scale(&int(-2)));
        let back = Frame::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }
}
