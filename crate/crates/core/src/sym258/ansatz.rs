//! Re-derivation of the symmetric model and of `X0` from the step-3 model on R^5.
//!
//! Unknown polynomial coefficients are written as `sum_m u_m x^{alpha_m}` where each
//! `u_m` is an extra coordinate appended after `x1..xN`. Every requirement becomes a
//! polynomial in `(x, u)` that must vanish; collecting the coefficient of each
//! `x`-monomial gives equations that must be affine in `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{multiplication_table, symmetry_relations, SymmetricModel, SymmetryField, LAYERS};
use crate::linalg::{self, determinant};
use crate::poly::{Monomial, Polynomial, Rational, WeightVector};
use crate::vecfield::{Frame, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("constraint `{origin}` is not affine in the unknowns")]
    NonAffine { origin: String },
    #[error("inconsistent constraint system at `{origin}`")]
    Inconsistent { origin: String },
    #[error("constraint system leaves unknowns free: {free:?}")]
    Underdetermined { free: Vec<String> },
    #[error("base model is not usable: {0}")]
    BadBase(String),
    #[error("derived field fails verification: {0}")]
    Verification(String),
}

/// One unknown coefficient: the slot it belongs to and the monomial it multiplies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unknown {
    pub slot: String,
    pub monomial: Monomial,
}

/// Equation `sum coeffs[m] u_m = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEquation {
    pub coeffs: BTreeMap<usize, Rational>,
    pub rhs: Rational,
    pub origin: String,
}

/// Unknown polynomials and the affine constraints imposed on them.
#[derive(Debug, Clone)]
pub struct Ansatz {
    n: usize,
    unknowns: Vec<Unknown>,
    slots: BTreeMap<String, Vec<usize>>,
    equations: Vec<LinearEquation>,
}

#[derive(Debug, Default)]
pub struct AnsatzBuilder {
    n: usize,
    unknowns: Vec<Unknown>,
    slots: BTreeMap<String, Vec<usize>>,
}

impl AnsatzBuilder {
    pub fn new(n: usize) -> Self {
        AnsatzBuilder { n, ..Default::default() }
    }

    /// Declares a slot holding a linear combination of `monomials` (each on `n` coordinates).
    pub fn declare(&mut self, slot: &str, monomials: Vec<Monomial>) {
        let ids = monomials
            .into_iter()
            .map(|monomial| {
                assert_eq!(monomial.dim(), self.n);
                self.unknowns.push(Unknown { slot: slot.to_string(), monomial });
                self.unknowns.len() - 1
            })
            .collect();
        let prev = self.slots.insert(slot.to_string(), ids);
        assert!(prev.is_none(), "slot {slot} declared twice");
    }

    pub fn build(self) -> Ansatz {
        Ansatz { n: self.n, unknowns: self.unknowns, slots: self.slots, equations: Vec::new() }
    }
}

impl Ansatz {
    fn total(&self) -> usize {
        self.n + self.unknowns.len()
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    pub fn equations(&self) -> &[LinearEquation] {
        &self.equations
    }

    /// A known polynomial on `x1..xN`, embedded in the extended ring.
    pub fn lift(&self, p: &Polynomial) -> Polynomial {
        p.with_dimension(self.total()).expect("growing dimension never fails")
    }

    pub fn lift_field(&self, v: &VectorField) -> Vec<Polynomial> {
        let mut comps: Vec<Polynomial> = v.components().iter().map(|p| self.lift(p)).collect();
        comps.resize(self.n, Polynomial::zero(self.total()));
        comps
    }

    /// The unknown polynomial of a slot.
    pub fn slot(&self, name: &str) -> Polynomial {
        let total = self.total();
        let mut acc = Polynomial::zero(total);
        for &id in &self.slots[name] {
            let mut e = self.unknowns[id].monomial.exponents().to_vec();
            e.resize(total, 0);
            e[self.n + id] = 1;
            acc += &Polynomial::monomial(Rational::one(), &e);
        }
        acc
    }

    /// Requires `expr` to vanish identically in `x`.
    pub fn require_zero(&mut self, expr: &Polynomial, origin: &str) -> Result<(), AnsatzError> {
        let mut grouped: BTreeMap<Vec<u32>, LinearEquation> = BTreeMap::new();
        for (m, c) in expr.terms() {
            let e = m.exponents();
            let (xs, us) = e.split_at(self.n);
            let eq = grouped.entry(xs.to_vec()).or_insert_with(|| LinearEquation {
                coeffs: BTreeMap::new(),
                rhs: Rational::zero(),
                origin: format!("{origin} @ {}", Monomial::from_exponents(xs.to_vec())),
            });
            let degree: u32 = us.iter().sum();
            match degree {
                0 => eq.rhs -= c,
                1 => {
                    let u = us.iter().position(|&x| x == 1).expect("degree one");
                    *eq.coeffs.entry(u).or_insert_with(Rational::zero) += c;
                }
                _ => return Err(AnsatzError::NonAffine { origin: origin.to_string() }),
            }
        }
        self.equations.extend(grouped.into_values());
        Ok(())
    }

    pub fn solve(&self) -> Result<AnsatzSolution, AnsatzError> {
        let rows: Vec<BTreeMap<usize, Rational>> = self.equations.iter().map(|e| e.coeffs.clone()).collect();
        let rhs: Vec<Rational> = self.equations.iter().map(|e| e.rhs.clone()).collect();
        match linalg::solve_affine(self.unknowns.len(), &rows, &rhs) {
            Err(bad) => Err(AnsatzError::Inconsistent { origin: self.equations[bad.equation].origin.clone() }),
            Ok(sol) if !sol.is_unique() => Err(AnsatzError::Underdetermined {
                free: sol
                    .free
                    .iter()
                    .map(|&u| format!("{}[{}]", self.unknowns[u].slot, self.unknowns[u].monomial))
                    .collect(),
            }),
            Ok(sol) => Ok(AnsatzSolution { n: self.n, values: sol.values }),
        }
    }
}

/// Values of all unknowns.
#[derive(Debug, Clone)]
pub struct AnsatzSolution {
    n: usize,
    values: Vec<Rational>,
}

impl AnsatzSolution {
    /// Replaces every `u_m` by its value and drops back to `x1..xN`.
    pub fn substitute(&self, expr: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in expr.terms() {
            let (xs, us) = m.exponents().split_at(self.n);
            let mut coef = c.clone();
            for (u, &e) in us.iter().enumerate() {
                if e > 0 {
                    coef *= num_traits::pow(self.values[u].clone(), e as usize);
                }
            }
            out += &Polynomial::monomial(coef, xs);
        }
        out
    }

    pub fn substitute_field(&self, comps: &[Polynomial]) -> VectorField {
        VectorField::new(comps.iter().map(|p| self.substitute(p)).collect()).expect("n components")
    }
}

/// Bracket of fields whose components live in the extended ring; only `x`-derivations act.
fn bracket(v: &[Polynomial], w: &[Polynomial]) -> Vec<Polynomial> {
    let n = v.len();
    (0..n)
        .map(|k| &apply(v, &w[k]) - &apply(w, &v[k]))
        .collect()
}

fn apply(v: &[Polynomial], p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        let d = p.partial(j).expect("index below n");
        if !d.is_zero() {
            out += &(vj * &d);
        }
    }
    out
}

/// Monomials on `n` coordinates of weighted degree exactly `w` using only coordinates in `vars`.
fn monomials_of_weight(n: usize, weights: &WeightVector, vars: &[usize], w: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], weights: &WeightVector, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            if left == 0 {
                out.push(Monomial::from_exponents(e.clone()));
            }
            return;
        };
        let wv = weights.get(v);
        let mut k = 0;
        while k * wv <= left {
            e[v] = k;
            rec(rest, weights, left - k * wv, e, out);
            k += 1;
        }
        e[v] = 0;
    }
    let mut out = Vec::new();
    rec(vars, weights, w, &mut vec![0; n], &mut out);
    out.sort();
    out
}

/// Result of extending the step-3 model to R^8.
#[derive(Debug, Clone)]
pub struct ExtendedModel {
    pub model: SymmetricModel,
    /// `a_i^j` keyed by 1-based `(i, j)`: coefficient of `d/dx_j` in `X_i`, `j = 6, 7, 8`.
    pub coefficients: BTreeMap<(usize, usize), Polynomial>,
    /// `det (a_i^j)_{i, j = 6..8}`.
    pub determinant: Rational,
    /// Determinant of the second derivatives of `a_3^6, a_3^7, a_3^8` in `x1, x2`.
    pub hessian_determinant: Rational,
    pub num_unknowns: usize,
    pub num_equations: usize,
}

fn slot_name(i: usize, j: usize) -> String {
    format!("a_{i}^{j}")
}

/// Extends `X1..X5` on R^5 to `X1..X8` on R^8 satisfying the full multiplication table.
///
/// Unknowns: for `i <= 5`, `a_i^j` is a polynomial in `x1, x2` of weighted degree
/// `4 - layer(i)`; `a_1^j` has no terms free of `x2` and `a_2^j` none free of `x1`
/// (zero integration constants); `a_6..8^j` are constants. Normalizations:
/// `a_3 = (x1^2/2, x1 x2, x2^2/2)`, `a_1^6 = a_2^8 = 0`, and the antisymmetric split
/// `a_1^7 = -x1 x2^2/4`, `a_2^7 = x1^2 x2/4`.
pub fn extend_model_ansatz(base: &Frame) -> Result<ExtendedModel, AnsatzError> {
    if base.len() != 5 || base.dim() != 5 {
        return Err(AnsatzError::BadBase(format!("expected 5 fields on R^5, got {} on R^{}", base.len(), base.dim())));
    }
    let n = 8;
    let weights = super::weights();
    let mut builder = AnsatzBuilder::new(n);
    for i in 1..=5 {
        for j in 6..=8 {
            let w = weights.get(j - 1) - LAYERS[i - 1] as u32;
            let monos = monomials_of_weight(n, &weights, &[0, 1], w)
                .into_iter()
                .filter(|m| match i {
                    1 => m.exponent(1) > 0,
                    2 => m.exponent(0) > 0,
                    _ => true,
                })
                .collect();
            builder.declare(&slot_name(i, j), monos);
        }
    }
    for i in 6..=8 {
        for j in 6..=8 {
            builder.declare(&slot_name(i, j), vec![Monomial::one(n)]);
        }
    }
    let mut ansatz = builder.build();

    let mut fields: Vec<Vec<Polynomial>> = Vec::with_capacity(8);
    for i in 1..=8 {
        let mut comps = if i <= 5 {
            let lifted = base.field(i - 1).components().iter().map(|p| {
                p.with_dimension(n).map_err(|e| AnsatzError::BadBase(e.to_string()))
            });
            let lifted: Result<Vec<_>, _> = lifted.collect();
            let mut v = lifted?;
            v.resize(n, Polynomial::zero(n));
            ansatz.lift_field(&VectorField::new(v).expect("n components"))
        } else {
            vec![Polynomial::zero(ansatz.total()); n]
        };
        for j in 6..=8 {
            comps[j - 1] += &ansatz.slot(&slot_name(i, j));
        }
        fields.push(comps);
    }

    let fixed = [
        ((3, 6), "x1^2/2"),
        ((3, 7), "x1*x2"),
        ((3, 8), "x2^2/2"),
        ((1, 6), "0"),
        ((2, 8), "0"),
        ((1, 7), "-x1*x2^2/4"),
        ((2, 7), "x1^2*x2/4"),
    ];
    for ((i, j), value) in fixed {
        let target = ansatz.lift(&Polynomial::parse(value, n).expect("literal"));
        let expr = &ansatz.slot(&slot_name(i, j)) - &target;
        ansatz.require_zero(&expr, &format!("normalization {}", slot_name(i, j)))?;
    }

    let table = multiplication_table();
    for i in 0..8 {
        for j in i + 1..8 {
            let got = bracket(&fields[i], &fields[j]);
            let mut expected = vec![Polynomial::zero(ansatz.total()); n];
            for (k, c) in table.get(&(i, j)).into_iter().flatten() {
                for (e, f) in expected.iter_mut().zip(&fields[*k]) {
                    *e += &f.scale(c);
                }
            }
            for k in 0..n {
                let expr = &got[k] - &expected[k];
                ansatz.require_zero(&expr, &format!("[X{}, X{}] component {}", i + 1, j + 1, k + 1))?;
            }
        }
    }

    let solution = ansatz.solve()?;
    let model_fields: Vec<VectorField> = fields.iter().map(|f| solution.substitute_field(f)).collect();
    let mut coefficients = BTreeMap::new();
    for i in 1..=8 {
        for j in 6..=8 {
            coefficients.insert((i, j), solution.substitute(&ansatz.slot(&slot_name(i, j))));
        }
    }
    let constant = |i: usize, j: usize| coefficients[&(i, j)].constant_term();
    let d_matrix: Vec<Vec<Rational>> = (6..=8).map(|j| (6..=8).map(|i| constant(i, j)).collect()).collect();
    let hessian: Vec<Vec<Rational>> = (6..=8)
        .map(|j| {
            let a = &coefficients[&(3, j)];
            let d1 = a.partial(0).expect("n >= 2");
            let d2 = a.partial(1).expect("n >= 2");
            [d1.partial(0), d1.partial(1), d2.partial(1)]
                .into_iter()
                .map(|p| p.expect("n >= 2").constant_term())
                .collect()
        })
        .collect();
    Ok(ExtendedModel {
        model: SymmetricModel::new(model_fields),
        coefficients,
        determinant: determinant(&d_matrix),
        hessian_determinant: determinant(&hessian),
        num_unknowns: ansatz.unknowns().len(),
        num_equations: ansatz.equations().len(),
    })
}

/// `X_i U = target`, one per field `X_i` and unknown component `U` of `X0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalConstraint {
    /// 0-based index of `X_i`.
    pub field: usize,
    /// 0-based component of `X0` (5, 6, 7 for P, Q, R).
    pub component: usize,
    pub target: Polynomial,
}

impl fmt::Display for DirectionalConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = ["P", "Q", "R"][self.component - 5];
        write!(f, "X{} {} = {}", self.field + 1, name, self.target)
    }
}

#[derive(Debug, Clone)]
pub struct DerivedSymmetry {
    pub symmetry: SymmetryField,
    pub constraints: Vec<DirectionalConstraint>,
    pub num_unknowns: usize,
}

/// Extends a rotation symmetry on R^5 to `X0 = base + P d6 + Q d7 + R d8` on R^8.
///
/// The bracket relations give `X_i P = X0(X_i^6) - [X0, X_i]^6` (likewise for `Q`, `R`);
/// these are solved over all monomials of weighted degree at most 4, with
/// `P(0) = Q(0) = R(0) = 0`.
pub fn continue_symmetry_ansatz(
    base_symmetry: &VectorField,
    model: &SymmetricModel,
) -> Result<DerivedSymmetry, AnsatzError> {
    if base_symmetry.dim() != 5 {
        return Err(AnsatzError::BadBase(format!("expected a field on R^5, got R^{}", base_symmetry.dim())));
    }
    let n = 8;
    let weights = super::weights();
    let names = ["P", "Q", "R"];
    let mut builder = AnsatzBuilder::new(n);
    let all: Vec<usize> = (0..n).collect();
    for name in names {
        let monos = (0..=4).flat_map(|w| monomials_of_weight(n, &weights, &all, w)).collect();
        builder.declare(name, monos);
    }
    let mut ansatz = builder.build();

    let mut lifted: Vec<Polynomial> = base_symmetry
        .components()
        .iter()
        .map(|p| p.with_dimension(n).map_err(|e| AnsatzError::BadBase(e.to_string())))
        .collect::<Result<_, _>>()?;
    lifted.resize(n, Polynomial::zero(n));
    let base8 = VectorField::new(lifted).expect("n components");

    let mut constraints = Vec::new();
    let relations = symmetry_relations();
    for (i, rhs) in relations.iter().enumerate() {
        let xi = model.x(i);
        let mut expected = VectorField::zero(n);
        for (k, c) in rhs {
            expected = expected.try_add(&model.x(*k).scale(c)).expect("R^8");
        }
        let xi_ext = ansatz.lift_field(xi);
        for (offset, name) in names.iter().enumerate() {
            let k = 5 + offset;
            let target = &base8.apply(xi.component(k)).expect("R^8") - expected.component(k);
            let expr = &apply(&xi_ext, &ansatz.slot(name)) - &ansatz.lift(&target);
            ansatz.require_zero(&expr, &format!("X{} {name}", i + 1))?;
            constraints.push(DirectionalConstraint { field: i, component: k, target });
        }
    }
    for name in names {
        let at_origin = ansatz.slot(name).filter_terms(|m| m.exponents()[..n].iter().all(|&e| e == 0));
        ansatz.require_zero(&at_origin, &format!("{name}(0) = 0"))?;
    }

    let solution = ansatz.solve()?;
    let mut field = base8;
    for (offset, name) in names.iter().enumerate() {
        let value = solution.substitute(&ansatz.slot(name));
        field = field.with_component(5 + offset, value);
    }
    let symmetry = SymmetryField::new(field);
    let report = symmetry.verify(model);
    if !report.overall() {
        let first = report.failures().next().expect("failure present");
        return Err(AnsatzError::Verification(format!("{}: {}", first.name, first.detail)));
    }
    Ok(DerivedSymmetry { symmetry, constraints, num_unknowns: ansatz.unknowns().len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::sym258::{base_model_235, base_symmetry_235, symmetric_model, symmetry_field};

    #[test]
    fn weight_enumeration() {
        let w = crate::sym258::weights();
        let all: Vec<usize> = (0..8).collect();
        // weight 4 monomials: 5 in x1,x2; 3 with x3 times degree 2; x3^2; x4,x5 times x1,x2; x6,x7,x8
        assert_eq!(monomials_of_weight(8, &w, &all, 4).len(), 16);
        assert_eq!(monomials_of_weight(8, &w, &[0, 1], 3).len(), 4);
        assert_eq!(monomials_of_weight(8, &w, &all, 0), vec![Monomial::one(8)]);
    }

    #[test]
    fn extension_reproduces_model() {
        let ext = extend_model_ansatz(&base_model_235()).unwrap();
        assert_eq!(ext.model, symmetric_model());
        assert_eq!(ext.determinant, int(1));
        assert_eq!(ext.hessian_determinant, int(1));
        assert_eq!(ext.coefficients[&(2, 6)], Polynomial::parse("x1^3/6", 8).unwrap());
        assert_eq!(ext.coefficients[&(1, 8)], Polynomial::parse("-x2^3/6", 8).unwrap());
    }

    #[test]
    fn symmetry_continuation() {
        let d = continue_symmetry_ansatz(&base_symmetry_235(), &symmetric_model()).unwrap();
        assert_eq!(d.symmetry, symmetry_field());
        let x3p = d.constraints.iter().find(|c| c.field == 2 && c.component == 5).unwrap();
        assert_eq!(x3p.target, Polynomial::parse("x1*x2", 8).unwrap());
    }

    #[test]
    fn bad_base_is_rejected() {
        let f = Frame::with_prefix("X", vec![VectorField::coordinate(2, 0)]).unwrap();
        assert!(matches!(extend_model_ansatz(&f), Err(AnsatzError::BadBase(_))));
        // Flipping the sign of x1^2/2 d4 in X2 breaks [X1, X2] = X3 on R^5.
        let base = base_model_235();
        let mut fields = base.fields().to_vec();
        fields[1] = crate::sym258::field(5, &[(2, "1"), (3, "x1/2"), (4, "-x1^2/2 - x2^2/2")]);
        let broken = Frame::with_prefix("X", fields).unwrap();
        assert!(matches!(extend_model_ansatz(&broken), Err(AnsatzError::Inconsistent { .. })));
    }

    #[test]
    fn quadratic_constraint_is_not_affine() {
        let mut b = AnsatzBuilder::new(1);
        b.declare("u", vec![Monomial::one(1)]);
        let mut a = b.build();
        let u = a.slot("u");
        assert!(matches!(a.require_zero(&(&u * &u), "u^2"), Err(AnsatzError::NonAffine { .. })));
    }

    #[test]
    fn free_unknowns_are_reported() {
        let mut b = AnsatzBuilder::new(1);
        b.declare("u", vec![Monomial::one(1), Monomial::var(1, 0)]);
        let mut a = b.build();
        // only the x-derivative is constrained, the constant stays free
        let u = a.slot("u");
        let du = u.partial(0).unwrap();
        a.require_zero(&(&du - &a.lift(&Polynomial::one(1))), "du = 1").unwrap();
        match a.solve() {
            Err(AnsatzError::Underdetermined { free }) => assert_eq!(free, vec!["u[1]".to_string()]),
            other => panic!("{other:?}"),
        }
    }
}
