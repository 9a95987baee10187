use std::collections::BTreeMap;

use carnot::ggmodel::{gg_frame, gg_frame_with, gg_generators, verify_free_nilpotent, SignConvention};
use carnot::liealg::{hall_basis, structure_constants_from_frame, CarnotAlgebra, Sparse};
use carnot::poly::{int, Polynomial, Rational, WeightedDegree};
use carnot::sym258::{symmetric_model, LAYERS};
use carnot::vecfield::VectorField;

fn field(n: usize, parts: &[(usize, &str)]) -> VectorField {
    VectorField::from_sparse(n, parts.iter().map(|&(k, s)| (k - 1, Polynomial::parse(s, n).unwrap())))
}

/// The step-4 listing, transcribed term by term.
pub fn printed_h() -> Vec<VectorField> {
    vec![
        field(8, &[(1, "1")]),
        field(
            8,
            &[
                (2, "1"),
                (3, "-x1"),
                (4, "-x1^2/2"),
                (5, "-x1*x2"),
                (6, "x1^3/6"),
                (7, "x1^2*x2/2"),
                (8, "x1*x2^2/2"),
            ],
        ),
        field(8, &[(3, "1"), (4, "x1"), (5, "x2"), (6, "-x1^2/2"), (7, "-x1*x2"), (8, "-x2^2/2")]),
        field(8, &[(4, "-1"), (6, "x1"), (7, "x2")]),
        field(8, &[(5, "-1"), (7, "x1"), (8, "x2")]),
        field(8, &[(6, "-1")]),
        field(8, &[(7, "-1")]),
        field(8, &[(8, "-1")]),
    ]
}

#[test]
fn step_four_frame_matches_listing() {
    let frame = gg_frame(4);
    for (k, expected) in printed_h().iter().enumerate() {
        assert_eq!(frame.field(k), expected, "H{}", k + 1);
    }
}

#[test]
fn generators_at_step_five() {
    let (h1, h2) = gg_generators(5);
    assert_eq!(h1.dim(), 14);
    let nonzero = h2.components().iter().filter(|p| !p.is_zero()).count();
    assert_eq!(nonzero, 13);
    for p in h2.components().iter().skip(2) {
        // every coefficient below the generators is a single monomial
        assert!(p.len() <= 1);
    }
}

#[test]
fn free_nilpotent_up_to_step_six() {
    for r in 1..=6 {
        for conv in [SignConvention::Alternating, SignConvention::Uniform] {
            let report = verify_free_nilpotent(&gg_frame_with(r, conv), r);
            assert!(report.overall(), "r = {r}, {conv:?}\n{report}");
        }
    }
}

#[test]
fn monomial_degree_matches_hall_degree() {
    // Descendants of H_2 of Hall degree k carry monomials of weighted degree k - 1.
    let r = 6;
    let basis = hall_basis(2, r);
    let weights = basis.weights();
    let (_, h2) = gg_generators(r);
    for k in 2..basis.len() {
        let deg = h2.component(k).weighted_degree(&weights).unwrap();
        assert_eq!(deg, WeightedDegree::Homogeneous(basis.get(k).degree as u64 - 1), "H{}", k + 1);
    }
}

fn constants_of(frame: &carnot::vecfield::Frame, layers: &[usize]) -> CarnotAlgebra {
    structure_constants_from_frame(frame, layers).unwrap()
}

/// Constants after the substitution `e_i -> s_i e_i`.
fn resign(alg: &BTreeMap<(usize, usize), Sparse>, s: &[i64]) -> BTreeMap<(usize, usize), Sparse> {
    alg.iter()
        .map(|(&(i, j), out)| {
            let out = out
                .iter()
                .map(|(&k, c)| (k, c * Rational::from_integer((s[i] * s[j] * s[k]).into())))
                .collect();
            ((i, j), out)
        })
        .collect()
}

#[test]
fn both_step_four_models_realize_one_algebra() {
    let gg = constants_of(&gg_frame(4), &hall_basis(2, 4).layers());
    let sym = constants_of(symmetric_model().frame(), &LAYERS);
    let mut solutions = Vec::new();
    for mask in 0u32..256 {
        let s: Vec<i64> = (0..8).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
        if resign(gg.brackets(), &s) == *sym.brackets() {
            solutions.push(s);
        }
    }
    let expected = vec![1, 1, -1, 1, 1, -1, -1, -1];
    assert!(solutions.contains(&expected), "{solutions:?}");
    let fixing_generators: Vec<_> = solutions.iter().filter(|s| s[0] == 1 && s[1] == 1).collect();
    assert_eq!(fixing_generators, vec![&expected]);
}

#[test]
fn step_four_table_has_the_jacobi_forced_entry() {
    let h = gg_frame(4);
    let h5h1 = h.field(4).lie_bracket(h.field(0)).unwrap();
    assert_eq!(&h5h1, h.field(6));
    // Jacobi: [[H3,H2],H1] = [[H3,H1],H2] + [H3,[H2,H1]] = [H4,H2] + [H3,H3] = H7
    let via_jacobi = h
        .field(3)
        .lie_bracket(h.field(1))
        .unwrap()
        .try_add(&h.field(2).lie_bracket(h.field(2)).unwrap())
        .unwrap();
    assert_eq!(h5h1, via_jacobi);
    assert_eq!(h.field(5).evaluate(&vec![int(0); 8]).unwrap()[5], int(-1));
}
