//! Hall-tree polynomial model of the free nilpotent Lie algebra on two generators.
//!
//! `H_1 = d/dx_1`, `H_2 = d/dx_2 + sum_{k > 2} P_{2,k} d/dx_k`, where the monomials
//! `P_{2,k}` are built along the Hall tree: whenever `H_k = [H_i, H_j]`,
//! `P_{2,k} = s_k x_j P_{2,i} / (deg_j P_{2,i} + 1)` with `P_{2,2} = 1`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::liealg::{hall_basis, lie_closure, witt_dimension, HallBasis};
use crate::poly::{int, Polynomial, Rational};
use crate::report::VerificationReport;
use crate::vecfield::{Frame, VectorField};

/// Sign `s_k` used in the monomial recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `s_k = -1` for every `k`; every `H_k` then starts with `+d/dx_k`.
    Uniform,
    /// `s_k = (-1)^(deg H_k + 1)`. At step 4 this gives
    /// `H_2 = d2 - x1 d3 - x1^2/2 d4 - x1 x2 d5 + x1^3/6 d6 + x1^2 x2/2 d7 + x1 x2^2/2 d8`
    /// and `H_4, ..., H_8` starting with `-d/dx_k`.
    #[default]
    Alternating,
}

impl SignConvention {
    fn sign(self, degree: usize) -> Rational {
        match self {
            SignConvention::Uniform => int(-1),
            SignConvention::Alternating if degree.is_multiple_of(2) => int(-1),
            SignConvention::Alternating => int(1),
        }
    }
}

/// The monomials `P_{2,k}` for every Hall index `k` up to a given step.
#[derive(Debug, Clone)]
pub struct GGMonomialTable {
    basis: HallBasis,
    monomials: Vec<Polynomial>,
}

impl GGMonomialTable {
    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `P_{2,k}` (0-based `k`); zero for `k = 0`, one for `k = 1`.
    pub fn monomial(&self, k: usize) -> &Polynomial {
        &self.monomials[k]
    }

    /// `(i, j)` with `H_k = [H_i, H_j]`.
    pub fn descent(&self, k: usize) -> Option<(usize, usize)> {
        self.basis.descent(k)
    }
}

pub fn gg_monomials(r: usize) -> GGMonomialTable {
    gg_monomials_with(r, SignConvention::default())
}

pub fn gg_monomials_with(r: usize, convention: SignConvention) -> GGMonomialTable {
    assert!(r >= 1, "step must be at least 1");
    let basis = hall_basis(2, r);
    let n = basis.len();
    let mut monomials = vec![Polynomial::zero(n); n];
    if n > 1 {
        monomials[1] = Polynomial::one(n);
    }
    for k in 2..n {
        let (i, j) = basis.descent(k).expect("non-generator");
        let parent = &monomials[i];
        let deg = parent.divisibility_degree(j).expect("descendants of H_2 are nonzero");
        let factor = convention.sign(basis.get(k).degree) / int(deg as i64 + 1);
        monomials[k] = parent.mul_var(j, 1).scale(&factor);
    }
    GGMonomialTable { basis, monomials }
}

pub fn gg_generators(r: usize) -> (VectorField, VectorField) {
    generators_from_table(&gg_monomials(r))
}

fn generators_from_table(table: &GGMonomialTable) -> (VectorField, VectorField) {
    let n = table.dim();
    let h1 = VectorField::coordinate(n, 0);
    let h2 = VectorField::new(table.monomials.clone()).expect("components share dimension");
    (h1, h2)
}

/// `H_1, ..., H_N` with `H_k = [H_i, H_j]` along the Hall tree.
pub fn gg_frame(r: usize) -> Frame {
    gg_frame_with(r, SignConvention::default())
}

pub fn gg_frame_with(r: usize, convention: SignConvention) -> Frame {
    let table = gg_monomials_with(r, convention);
    let (h1, h2) = generators_from_table(&table);
    let n = table.dim();
    let mut fields = Vec::with_capacity(n);
    fields.push(h1);
    if n > 1 {
        fields.push(h2);
    }
    for k in 2..n {
        let (i, j) = table.descent(k).expect("non-generator");
        let f = fields[i].lie_bracket(&fields[j]).expect("frame fields share dimension");
        fields.push(f);
    }
    Frame::with_prefix("H", fields).expect("frame fields share dimension")
}

/// Checks that `frame` (two generators first) models the free nilpotent algebra of step `r`:
/// weight-one generators, a Lie closure of full dimension with the Witt layer sizes,
/// and vanishing brackets beyond step `r`.
pub fn verify_free_nilpotent(frame: &Frame, r: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    let basis = hall_basis(2, r);
    let n = basis.len();
    let weights = basis.weights();
    let layers = basis.layers();

    report.record(format!("frame has N = {n} fields on R^{n}"), frame.len() == n && frame.dim() == n, || {
        format!("{} fields on R^{}", frame.len(), frame.dim())
    });
    if frame.len() != n || frame.dim() != n || n < 2 {
        return report;
    }
    for g in 0..2 {
        let check = frame.field(g).weight_homogeneity(&weights, 1);
        report.record(format!("{} homogeneous of weight one", frame.name(g)), check.is_ok(), || {
            check.unwrap_err().to_string()
        });
    }

    let gens = [frame.field(0).clone(), frame.field(1).clone()];
    match lie_closure(&gens, r) {
        Ok(closure) => {
            report.record(format!("Lie closure of generators has dimension {n}"), closure.rank == n, || {
                format!("closure has dimension {}", closure.rank)
            });
            let expected: Vec<usize> = (1..=r as u32)
                .map(|i| witt_dimension(2, i).to_usize().expect("small"))
                .collect();
            let got = closure.ranks_by_degree();
            report.record("closure layer dimensions match l_2(i)", got == expected, || {
                format!("got {got:?}, expected {expected:?}")
            });
            report.record(
                format!("brackets of length {} vanish", r + 1),
                closure.overflow.is_none(),
                || format!("nonzero bracket {}", closure.overflow.as_ref().expect("some")),
            );
        }
        Err(e) => report.fail("Lie closure of generators", e.to_string()),
    }

    let rank = frame.symbolic_rank();
    report.record("frame fields independent over constants", rank == n, || format!("rank {rank}"));

    let mut stray = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if layers[i] + layers[j] <= r {
                continue;
            }
            match frame.field(i).lie_bracket(frame.field(j)) {
                Ok(b) if b.is_zero() => {}
                _ => stray.push(format!("[{}, {}]", frame.name(i), frame.name(j))),
            }
        }
    }
    report.record("frame brackets above step r vanish", stray.is_empty(), || {
        format!("nonzero: {}", stray.join(", "))
    });
    report
}

/// `l_2^{(r)}` without building anything.
pub fn model_dimension(r: usize) -> BigUint {
    crate::liealg::cumulative_dimension(2, r as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(c: Rational, e: &[u32]) -> Polynomial {
        Polynomial::monomial(c, e)
    }

    #[test]
    fn seed_and_first_monomials() {
        let t = gg_monomials(4);
        assert_eq!(t.monomial(1), &Polynomial::one(8));
        assert_eq!(t.monomial(2), &m(int(-1), &[1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(t.monomial(7), &m(rat(1, 2), &[1, 2, 0, 0, 0, 0, 0, 0]));
        assert!(t.monomial(0).is_zero());
    }

    #[test]
    fn uniform_convention_is_coordinate_leading() {
        let f = gg_frame_with(4, SignConvention::Uniform);
        let origin = vec![int(0); 8];
        for k in 0..8 {
            let mut e = vec![int(0); 8];
            e[k] = int(1);
            assert_eq!(f.field(k).evaluate(&origin).unwrap(), e, "H{}", k + 1);
        }
    }

    #[test]
    fn step_one_and_two() {
        let (h1, h2) = gg_generators(1);
        assert_eq!(h1, VectorField::coordinate(2, 0));
        assert_eq!(h2, VectorField::coordinate(2, 1));
        let f = gg_frame(2);
        assert_eq!(f.len(), 3);
        let expected_h2 = VectorField::from_sparse(
            3,
            [(1, Polynomial::one(3)), (2, m(int(-1), &[1, 0, 0]))],
        );
        assert_eq!(f.field(1), &expected_h2);
        assert_eq!(f.field(2), &VectorField::coordinate(3, 2));
        assert_eq!(f.field(1).lie_bracket(f.field(0)).unwrap(), VectorField::coordinate(3, 2));
    }

    #[test]
    fn step_one_verifies_as_abelian() {
        let rep = verify_free_nilpotent(&gg_frame(1), 1);
        assert!(rep.overall(), "{rep}");
    }

    #[test]
    fn wrong_frame_fails_verification() {
        // A frame from step 3 checked against step 4 has the wrong size.
        let rep = verify_free_nilpotent(&gg_frame(3), 4);
        assert!(!rep.overall());
    }
}
