//! Symmetric polynomial model of the Carnot algebra with growth vector (2, 3, 5, 8)
//! and its infinitesimal rotation symmetry `X_0`.
//!
//! Multiplication table of the model:
//!
//! ```text
//! [X1, X2] = X3
//! [X1, X3] = X4   [X2, X3] = X5
//! [X1, X4] = X6   [X1, X5] = [X2, X4] = X7   [X2, X5] = X8
//! ```
//!
//! and every other bracket of basis fields vanishes.

pub mod ansatz;
pub mod mutation;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::liealg::{growth_vector_at_point, GrowthVector};
use crate::poly::{int, Monomial, Polynomial, Rational, WeightVector};
use crate::report::VerificationReport;
use crate::vecfield::{Frame, VectorField};

pub use ansatz::{continue_symmetry_ansatz, extend_model_ansatz, AnsatzError};

/// Layer of each of `X1..X8`.
pub const LAYERS: [usize; 8] = [1, 1, 2, 3, 3, 4, 4, 4];

pub fn weights() -> WeightVector {
    WeightVector::new(LAYERS.iter().map(|&l| l as u32).collect())
}

/// Builds a field on R^n from `(component, text)` pairs with 1-based components.
pub(crate) fn field(n: usize, parts: &[(usize, &str)]) -> VectorField {
    VectorField::from_sparse(
        n,
        parts
            .iter()
            .map(|&(k, s)| (k - 1, Polynomial::parse(s, n).expect("well-formed literal"))),
    )
}

/// The eight fields `X1..X8` on R^8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricModel {
    frame: Frame,
}

impl SymmetricModel {
    pub fn new(fields: Vec<VectorField>) -> Self {
        assert_eq!(fields.len(), 8, "the model has eight fields");
        SymmetricModel { frame: Frame::with_prefix("X", fields).expect("fields on R^8") }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `X_{i+1}`.
    pub fn x(&self, i: usize) -> &VectorField {
        self.frame.field(i)
    }

    pub fn weights(&self) -> WeightVector {
        weights()
    }

    /// Same fields with `X_{i+1}` replaced.
    pub fn with_field(&self, i: usize, f: VectorField) -> Self {
        let mut fields = self.frame.fields().to_vec();
        fields[i] = f;
        SymmetricModel::new(fields)
    }

    /// Checks all 28 basis brackets against the table, weight-one homogeneity of
    /// `X1, X2`, and the growth vector at the origin.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let table = multiplication_table();
        for i in 0..8 {
            for j in i + 1..8 {
                let name = format!("[X{}, X{}] = {}", i + 1, j + 1, describe(table.get(&(i, j))));
                let expected = match table.get(&(i, j)) {
                    Some(out) => self.combination(out),
                    None => VectorField::zero(8),
                };
                let got = self.x(i).lie_bracket(self.x(j)).expect("fields on R^8");
                let residual = got.try_sub(&expected).expect("fields on R^8");
                report.record(name, residual.is_zero(), || format!("residual {residual}"));
            }
        }
        let w = self.weights();
        for g in 0..2 {
            let check = self.x(g).weight_homogeneity(&w, 1);
            report.record(format!("X{} homogeneous of weight one", g + 1), check.is_ok(), || {
                check.unwrap_err().to_string()
            });
        }
        let origin = vec![Rational::zero(); 8];
        match growth_vector_at_point(&self.frame, &[0, 1], &origin) {
            Ok(g) => report.record("growth vector at the origin is (2, 3, 5, 8)", g.0 == [2, 3, 5, 8], || {
                format!("got {g}")
            }),
            Err(e) => report.fail("growth vector at the origin is (2, 3, 5, 8)", e.to_string()),
        }
        report
    }

    fn combination(&self, out: &[(usize, Rational)]) -> VectorField {
        let mut coeffs = vec![Rational::zero(); 8];
        for (k, c) in out {
            coeffs[*k] = c.clone();
        }
        self.frame.combination(&coeffs)
    }
}

fn describe(out: Option<&Vec<(usize, Rational)>>) -> String {
    let Some(out) = out else { return "0".into() };
    let mut s = String::new();
    for (idx, (k, c)) in out.iter().enumerate() {
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != int(1) {
            s.push_str(&format!("{a} "));
        }
        s.push_str(&format!("X{}", k + 1));
    }
    s
}

/// Nonzero brackets `[X_{i+1}, X_{j+1}]` for `i < j`, as combinations of basis fields.
pub fn multiplication_table() -> BTreeMap<(usize, usize), Vec<(usize, Rational)>> {
    [
        ((0, 1), 2),
        ((0, 2), 3),
        ((1, 2), 4),
        ((0, 3), 5),
        ((0, 4), 6),
        ((1, 3), 6),
        ((1, 4), 7),
    ]
    .into_iter()
    .map(|(pair, k)| (pair, vec![(k, int(1))]))
    .collect()
}

/// `[X0, X_{i+1}]` as combinations of `X1..X8`, for `i = 0..8`.
pub fn symmetry_relations() -> Vec<Vec<(usize, Rational)>> {
    vec![
        vec![(1, int(1))],
        vec![(0, int(-1))],
        vec![],
        vec![(4, int(1))],
        vec![(3, int(-1))],
        vec![(6, int(2))],
        vec![(5, int(-1)), (7, int(1))],
        vec![(6, int(-2))],
    ]
}

pub fn symmetric_model() -> SymmetricModel {
    let n = 8;
    SymmetricModel::new(vec![
        field(n, &[(1, "1"), (3, "-x2/2"), (5, "-x1^2/2 - x2^2/2"), (7, "-x1*x2^2/4"), (8, "-x2^3/6")]),
        field(n, &[(2, "1"), (3, "x1/2"), (4, "x1^2/2 + x2^2/2"), (6, "x1^3/6"), (7, "x1^2*x2/4")]),
        field(n, &[(3, "1"), (4, "x1"), (5, "x2"), (6, "x1^2/2"), (7, "x1*x2"), (8, "x2^2/2")]),
        field(n, &[(4, "1"), (6, "x1"), (7, "x2")]),
        field(n, &[(5, "1"), (7, "x1"), (8, "x2")]),
        field(n, &[(6, "1")]),
        field(n, &[(7, "1")]),
        field(n, &[(8, "1")]),
    ])
}

/// `X1..X5` on R^5 modelling the free nilpotent algebra of step 3.
pub fn base_model_235() -> Frame {
    let n = 5;
    Frame::with_prefix(
        "X",
        vec![
            field(n, &[(1, "1"), (3, "-x2/2"), (5, "-x1^2/2 - x2^2/2")]),
            field(n, &[(2, "1"), (3, "x1/2"), (4, "x1^2/2 + x2^2/2")]),
            field(n, &[(3, "1"), (4, "x1"), (5, "x2")]),
            field(n, &[(4, "1")]),
            field(n, &[(5, "1")]),
        ],
    )
    .expect("fields on R^5")
}

/// Rotation symmetry of the step-3 model on R^5.
pub fn base_symmetry_235() -> VectorField {
    field(5, &[(1, "x2"), (2, "-x1"), (4, "x5"), (5, "-x4")])
}

/// The field `X0` on R^8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryField {
    field: VectorField,
}

impl SymmetryField {
    pub fn new(field: VectorField) -> Self {
        assert_eq!(field.dim(), 8);
        SymmetryField { field }
    }

    pub fn field(&self) -> &VectorField {
        &self.field
    }

    /// Coefficients of `d/dx6, d/dx7, d/dx8`.
    pub fn p(&self) -> &Polynomial {
        self.field.component(5)
    }

    pub fn q(&self) -> &Polynomial {
        self.field.component(6)
    }

    pub fn r(&self) -> &Polynomial {
        self.field.component(7)
    }

    /// Checks the eight relations `[X0, X_i]` against `model`.
    pub fn verify(&self, model: &SymmetricModel) -> VerificationReport {
        let mut report = VerificationReport::new();
        for (i, rhs) in symmetry_relations().iter().enumerate() {
            let name = format!("[X0, X{}] = {}", i + 1, describe(Some(rhs).filter(|v| !v.is_empty())));
            let expected = model.combination(rhs);
            let got = self.field.lie_bracket(model.x(i)).expect("fields on R^8");
            let residual = got.try_sub(&expected).expect("fields on R^8");
            report.record(name, residual.is_zero(), || format!("residual {residual}"));
        }
        report
    }
}

pub fn symmetry_field() -> SymmetryField {
    SymmetryField::new(field(
        8,
        &[
            (1, "x2"),
            (2, "-x1"),
            (4, "x5"),
            (5, "-x4"),
            (6, "-x1^4/24 + x1^2*x2^2/8 + x7"),
            (7, "x1*x2^3/12 + x1^3*x2/12 - 2*x6 + 2*x8"),
            (8, "x1^2*x2^2/8 - x2^4/24 - x7"),
        ],
    ))
}

pub fn verify_symmetric_model() -> VerificationReport {
    symmetric_model().verify()
}

pub fn verify_symmetry() -> VerificationReport {
    symmetry_field().verify(&symmetric_model())
}

/// Outcome of testing whether a field rotates an orthonormal pair `(F1, F2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryCheck {
    /// `[v, F1] = c F2` and `[v, F2] = -c F1`.
    Rotation(Rational),
    /// The relation that failed and its residual.
    NotSymmetry { relation: String, residual: VectorField },
}

impl SymmetryCheck {
    pub fn is_symmetry(&self) -> bool {
        matches!(self, SymmetryCheck::Rotation(_))
    }
}

impl fmt::Display for SymmetryCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryCheck::Rotation(c) => write!(f, "infinitesimal rotation with c = {c}"),
            SymmetryCheck::NotSymmetry { relation, residual } => {
                write!(f, "not a symmetry: {relation} fails with residual {residual}")
            }
        }
    }
}

fn leading_term(v: &VectorField) -> Option<((usize, Monomial), Rational)> {
    v.flat_terms().next()
}

fn flat_coefficient(v: &VectorField, key: &(usize, Monomial)) -> Rational {
    v.component(key.0).coefficient(&key.1)
}

/// Tests whether `v` is an infinitesimal rotation of the frame `(f1, f2)`.
pub fn is_infinitesimal_symmetry(v: &VectorField, f1: &VectorField, f2: &VectorField) -> SymmetryCheck {
    let a = v.lie_bracket(f1).expect("same dimension");
    let b = v.lie_bracket(f2).expect("same dimension");
    let c = if let Some((key, coef)) = leading_term(f2) {
        flat_coefficient(&a, &key) / coef
    } else if let Some((key, coef)) = leading_term(f1) {
        -flat_coefficient(&b, &key) / coef
    } else {
        Rational::zero()
    };
    let first = a.try_sub(&f2.scale(&c)).expect("same dimension");
    if !first.is_zero() {
        return SymmetryCheck::NotSymmetry { relation: format!("[v, F1] = ({c}) F2"), residual: first };
    }
    let second = b.try_add(&f1.scale(&c)).expect("same dimension");
    if !second.is_zero() {
        return SymmetryCheck::NotSymmetry { relation: format!("[v, F2] = -({c}) F1"), residual: second };
    }
    SymmetryCheck::Rotation(c)
}

/// Growth vector of `(X1, X2)` at the origin.
pub fn growth_vector(model: &SymmetricModel) -> GrowthVector {
    growth_vector_at_point(model.frame(), &[0, 1], &vec![Rational::zero(); 8]).expect("fields on R^8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn printed_components() {
        let m = symmetric_model();
        let n = 8;
        assert_eq!(m.x(0).component(6), &Polynomial::monomial(rat(-1, 4), &[1, 2, 0, 0, 0, 0, 0, 0]));
        assert_eq!(m.x(5), &VectorField::coordinate(n, 5));
        assert!(m.x(1).component(7).is_zero());
        let x0 = symmetry_field();
        assert_eq!(x0.p(), &Polynomial::parse("x7 + x1^2*x2^2/8 - x1^4/24", n).unwrap());
        assert!(x0.field().component(2).is_zero());
        assert_eq!(x0.r(), &Polynomial::parse("-x7 - x2^4/24 + x1^2*x2^2/8", n).unwrap());
    }

    #[test]
    fn selected_brackets() {
        let m = symmetric_model();
        assert_eq!(m.x(1).lie_bracket(m.x(4)).unwrap(), *m.x(7));
        assert!(m.x(3).lie_bracket(m.x(4)).unwrap().is_zero());
        assert_eq!(m.x(0).lie_bracket(m.x(4)).unwrap(), *m.x(6));
        assert_eq!(m.x(1).lie_bracket(m.x(3)).unwrap(), *m.x(6));
        let x0 = symmetry_field();
        assert!(x0.field().lie_bracket(m.x(2)).unwrap().is_zero());
        assert_eq!(x0.field().lie_bracket(m.x(6)).unwrap(), m.x(7).try_sub(m.x(5)).unwrap());
        assert_eq!(x0.field().lie_bracket(m.x(3)).unwrap(), *m.x(4));
        assert_eq!(
            x0.field().lie_bracket(m.x(5)).unwrap(),
            m.x(6).scale(&int(2))
        );
    }

    #[test]
    fn full_reports_pass() {
        let r = verify_symmetric_model();
        assert!(r.overall(), "{r}");
        assert_eq!(r.checks.len(), 28 + 3);
        let s = verify_symmetry();
        assert!(s.overall(), "{s}");
        assert_eq!(s.checks.len(), 8);
    }

    #[test]
    fn symmetry_detection() {
        let m = symmetric_model();
        let x0 = symmetry_field();
        assert_eq!(is_infinitesimal_symmetry(x0.field(), m.x(0), m.x(1)), SymmetryCheck::Rotation(int(1)));
        assert!(!is_infinitesimal_symmetry(m.x(2), m.x(0), m.x(1)).is_symmetry());
        assert_eq!(
            is_infinitesimal_symmetry(&VectorField::zero(8), m.x(0), m.x(1)),
            SymmetryCheck::Rotation(int(0))
        );
    }

    #[test]
    fn weights_of_symmetry() {
        assert!(symmetry_field().field().is_weight_homogeneous(&weights(), 0));
    }

    #[test]
    fn base_model_growth() {
        let f = base_model_235();
        let g = growth_vector_at_point(&f, &[0, 1], &vec![int(0); 5]).unwrap();
        assert_eq!(g.0, vec![2, 3, 5]);
    }
}
