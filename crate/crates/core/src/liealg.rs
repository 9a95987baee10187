//! Graded Lie algebra machinery: Witt dimensions, Hall bases, structure
//! constants of Carnot algebras, and growth vectors of distributions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, SparseEchelon};
use crate::poly::{parse_rational, Monomial, Rational, WeightVector};
use crate::report::VerificationReport;
use crate::vecfield::{FieldError, Frame, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("[{left}, {right}] is not a constant combination of the frame; residual {residual}")]
    NotExpressible { left: String, right: String, residual: VectorField },
    #[error("frame fields are linearly dependent over the constants")]
    DependentFrame,
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `l_d(i)`: dimension of the degree-`i` component of the free Lie algebra on `d` generators,
/// from `i l_d(i) = d^i - sum_{j | i, j < i} j l_d(j)`.
pub fn witt_dimension(d: u32, i: u32) -> BigUint {
    assert!(d >= 1 && i >= 1, "witt_dimension needs d >= 1 and i >= 1");
    witt_dimensions(d, i).pop().expect("non-empty")
}

/// `[l_d(1), ..., l_d(max)]`.
pub fn witt_dimensions(d: u32, max: u32) -> Vec<BigUint> {
    let d = BigUint::from(d);
    let mut l: Vec<BigUint> = Vec::with_capacity(max as usize);
    for i in 1..=max {
        let mut acc = num_traits::pow(d.clone(), i as usize);
        for j in (1..i).filter(|j| i % j == 0) {
            acc -= &l[j as usize - 1] * BigUint::from(j);
        }
        l.push(acc / BigUint::from(i));
    }
    l
}

/// `l_d^{(r)} = sum_{i <= r} l_d(i)`.
pub fn cumulative_dimension(d: u32, r: u32) -> BigUint {
    witt_dimensions(d, r).iter().sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallShape {
    /// Generator number, 0-based.
    Generator(usize),
    /// Indices of the two factors in the basis.
    Bracket { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    pub index: usize,
    pub degree: usize,
    pub shape: HallShape,
}

/// Hall basis elements of degree at most `r`, listed in Hall order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    d: usize,
    r: usize,
    elements: Vec<HallElement>,
}

/// Enumerates the Hall basis of the free Lie algebra on `d` generators up to degree `r`.
///
/// `[E, F]` is admitted when `E > F`, and, if `E = [G, K]`, when `K <= F`. Within one
/// degree, elements appear in the order the pairs `(E, F)` are visited: `E` ascending,
/// then `F` ascending.
pub fn hall_basis(d: usize, r: usize) -> HallBasis {
    assert!(d >= 1 && r >= 1);
    let mut elements: Vec<HallElement> = (0..d)
        .map(|g| HallElement { index: g, degree: 1, shape: HallShape::Generator(g) })
        .collect();
    for p in 2..=r {
        let mut fresh = Vec::new();
        for e in &elements {
            if e.degree >= p {
                continue;
            }
            for f in elements.iter().filter(|f| f.degree == p - e.degree) {
                if e.index <= f.index {
                    continue;
                }
                if let HallShape::Bracket { right: k, .. } = e.shape {
                    if k > f.index {
                        continue;
                    }
                }
                fresh.push((e.index, f.index));
            }
        }
        for (left, right) in fresh {
            let index = elements.len();
            elements.push(HallElement { index, degree: p, shape: HallShape::Bracket { left, right } });
        }
    }
    HallBasis { d, r, elements }
}

impl HallBasis {
    pub fn num_generators(&self) -> usize {
        self.d
    }

    pub fn step(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &HallElement {
        &self.elements[i]
    }

    pub fn of_degree(&self, k: usize) -> impl Iterator<Item = &HallElement> {
        self.elements.iter().filter(move |e| e.degree == k)
    }

    /// `(i, j)` with `H_k = [H_i, H_j]`, or `None` for generators.
    pub fn descent(&self, k: usize) -> Option<(usize, usize)> {
        match self.elements[k].shape {
            HallShape::Generator(_) => None,
            HallShape::Bracket { left, right } => Some((left, right)),
        }
    }

    /// Layer (degree) of each element, 1-based values.
    pub fn layers(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    pub fn weights(&self) -> WeightVector {
        WeightVector::new(self.elements.iter().map(|e| e.degree as u32).collect())
    }

    /// Nested bracket notation over generator numbers, e.g. `[[2,1],1]`.
    pub fn text(&self, k: usize) -> String {
        match self.elements[k].shape {
            HallShape::Generator(g) => (g + 1).to_string(),
            HallShape::Bracket { left, right } => {
                format!("[{},{}]", self.text(left), self.text(right))
            }
        }
    }

    /// Same tree written over `X1, X2, ...`, e.g. `[[X2, X1], X1]`.
    pub fn generator_notation(&self, k: usize) -> String {
        match self.elements[k].shape {
            HallShape::Generator(g) => format!("X{}", g + 1),
            HallShape::Bracket { left, right } => format!(
                "[{}, {}]",
                self.generator_notation(left),
                self.generator_notation(right)
            ),
        }
    }
}

/// Sparse vector over basis indices.
pub type Sparse = BTreeMap<usize, Rational>;

fn sparse_add_scaled(acc: &mut Sparse, v: &Sparse, c: &Rational) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Graded nilpotent Lie algebra given by structure constants.
///
/// Only pairs `i < j` are stored; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarnotAlgebra {
    layers: Vec<usize>,
    brackets: BTreeMap<(usize, usize), Sparse>,
}

impl CarnotAlgebra {
    pub fn new(
        layers: Vec<usize>,
        brackets: BTreeMap<(usize, usize), Sparse>,
    ) -> Result<Self, LieError> {
        let n = layers.len();
        if layers.contains(&0) {
            return Err(LieError::Invalid("layers are numbered from 1".into()));
        }
        let mut clean = BTreeMap::new();
        for ((i, j), out) in brackets {
            if i >= j || j >= n || out.keys().any(|&k| k >= n) {
                return Err(LieError::Invalid(format!("bad bracket entry ({i}, {j})")));
            }
            let out: Sparse = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !out.is_empty() {
                clean.insert((i, j), out);
            }
        }
        Ok(CarnotAlgebra { layers, brackets: clean })
    }

    pub fn dim(&self) -> usize {
        self.layers.len()
    }

    pub fn num_generators(&self) -> usize {
        self.layers.iter().filter(|&&l| l == 1).count()
    }

    pub fn step(&self) -> usize {
        self.layers.iter().copied().max().unwrap_or(0)
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn layer_members(&self, layer: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.layers[i] == layer).collect()
    }

    /// Stored nonzero brackets `(i, j) -> [e_i, e_j]` with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Sparse> {
        &self.brackets
    }

    /// `[e_i, e_j]` for any ordered pair.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Sparse {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Sparse::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Bilinear extension of the bracket to sparse vectors.
    pub fn bracket(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut acc = Sparse::new();
        for (i, a) in u {
            for (j, b) in v {
                let c = a * b;
                sparse_add_scaled(&mut acc, &self.bracket_basis(*i, *j), &c);
            }
        }
        acc
    }

    /// Replaces the bracket `[e_i, e_j]`.
    pub fn with_bracket(&self, i: usize, j: usize, out: Sparse) -> Self {
        let mut b = self.brackets.clone();
        let (key, out) = if i < j {
            ((i, j), out)
        } else {
            ((j, i), out.into_iter().map(|(k, c)| (k, -c)).collect())
        };
        b.insert(key, out);
        CarnotAlgebra::new(self.layers.clone(), b).expect("indices already validated")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("algebra serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("algebra serializes")
    }

    fn to_raw(&self) -> AlgebraJson {
        AlgebraJson {
            n: self.dim(),
            d: self.num_generators(),
            r: self.step(),
            layers: self.layers.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), out)| BracketJson {
                    i: i + 1,
                    j: j + 1,
                    out: out.iter().map(|(k, c)| OutJson { k: k + 1, c: c.to_string() }).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self, LieError> {
        let raw: AlgebraJson = serde_json::from_str(s).map_err(|e| LieError::Invalid(e.to_string()))?;
        if raw.layers.len() != raw.n {
            return Err(LieError::Invalid("layers length differs from n".into()));
        }
        let mut brackets = BTreeMap::new();
        for b in raw.brackets {
            if b.i == 0 || b.j == 0 || b.out.iter().any(|o| o.k == 0) {
                return Err(LieError::Invalid("indices are 1-based".into()));
            }
            let mut out = Sparse::new();
            for o in b.out {
                let c = parse_rational(&o.c).map_err(|e| LieError::Invalid(e.to_string()))?;
                out.insert(o.k - 1, c);
            }
            brackets.insert((b.i - 1, b.j - 1), out);
        }
        let alg = CarnotAlgebra::new(raw.layers, brackets)?;
        if alg.num_generators() != raw.d || alg.step() != raw.r {
            return Err(LieError::Invalid("d or r inconsistent with layers".into()));
        }
        Ok(alg)
    }
}

#[derive(Serialize, Deserialize)]
struct OutJson {
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    out: Vec<OutJson>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    n: usize,
    d: usize,
    r: usize,
    layers: Vec<usize>,
    brackets: Vec<BracketJson>,
}

fn sparse_to_string(v: &Sparse, names: impl Fn(usize) -> String) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| {
            if c.is_one() {
                names(*k)
            } else {
                format!("({c})*{}", names(*k))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for CarnotAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, d = {}, r = {}", self.dim(), self.num_generators(), self.step())?;
        for (&(i, j), out) in &self.brackets {
            writeln!(f, "[e{}, e{}] = {}", i + 1, j + 1, sparse_to_string(out, |k| format!("e{}", k + 1)))?;
        }
        Ok(())
    }
}

/// Expresses every bracket of frame fields in the frame itself with constant coefficients.
pub fn structure_constants_from_frame(
    frame: &Frame,
    layers: &[usize],
) -> Result<CarnotAlgebra, LieError> {
    let n = frame.len();
    if layers.len() != n {
        return Err(LieError::Invalid(format!("{} layers for {n} fields", layers.len())));
    }
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut rows: Vec<Sparse> = Vec::new();
    for (col, f) in frame.fields().iter().enumerate() {
        for (key, c) in f.flat_terms() {
            let r = *keys.entry(key).or_insert_with(|| {
                rows.push(Sparse::new());
                rows.len() - 1
            });
            rows[r].insert(col, c);
        }
    }
    let mut brackets = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = frame.field(i).lie_bracket(frame.field(j))?;
            let mut pair_keys = keys.clone();
            let mut system = rows.clone();
            let mut rhs = vec![Rational::zero(); system.len()];
            for (key, c) in b.flat_terms() {
                let r = *pair_keys.entry(key).or_insert_with(|| {
                    system.push(Sparse::new());
                    rhs.push(Rational::zero());
                    system.len() - 1
                });
                rhs[r] = c;
            }
            let coeffs = match linalg::solve_affine(n, &system, &rhs) {
                Ok(sol) if sol.is_unique() => sol.values,
                Ok(_) => return Err(LieError::DependentFrame),
                Err(bad) => {
                    let residual = b.try_sub(&frame.combination(&bad.values))?;
                    return Err(LieError::NotExpressible {
                        left: frame.name(i).to_string(),
                        right: frame.name(j).to_string(),
                        residual,
                    });
                }
            };
            let out: Sparse = coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !out.is_empty() {
                brackets.insert((i, j), out);
            }
        }
    }
    CarnotAlgebra::new(layers.to_vec(), brackets)
}

/// Checks layer compatibility, nilpotency, the Jacobi identity and `L_{i+1} = [L_1, L_i]`.
pub fn verify_carnot_axioms(alg: &CarnotAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = alg.dim();
    let r = alg.step();
    let layers = alg.layers();

    let mut bad_layer = Vec::new();
    let mut bad_nil = Vec::new();
    for (&(i, j), out) in alg.brackets() {
        let target = layers[i] + layers[j];
        if target > r {
            bad_nil.push(format!("[e{}, e{}] != 0", i + 1, j + 1));
        }
        for k in out.keys() {
            if layers[*k] != target {
                bad_layer.push(format!(
                    "[e{}, e{}] has an e{} component outside layer {target}",
                    i + 1,
                    j + 1,
                    k + 1
                ));
            }
        }
    }
    report.record("layer compatibility [L_i, L_j] in L_{i+j}", bad_layer.is_empty(), || {
        bad_layer.join("; ")
    });
    report.record("nilpotency L_s = 0 for s > r", bad_nil.is_empty(), || bad_nil.join("; "));

    let unit = |i: usize| -> Sparse { [(i, Rational::one())].into_iter().collect() };
    let mut bad_jacobi = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = Sparse::new();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = alg.bracket_basis(b, c);
                    let t = alg.bracket(&unit(a), &inner);
                    sparse_add_scaled(&mut acc, &t, &Rational::one());
                }
                if !acc.is_empty() {
                    bad_jacobi.push(format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    report.record("Jacobi identity", bad_jacobi.is_empty(), || {
        format!("violated on {}", bad_jacobi.join(", "))
    });

    let first = alg.layer_members(1);
    report.record("L_1 non-empty", !first.is_empty(), || "no generators".into());
    for layer in 1..r {
        let next = alg.layer_members(layer + 1);
        let mut vectors = Vec::new();
        let mut stray = false;
        for &a in &first {
            for &b in &alg.layer_members(layer) {
                let v = alg.bracket_basis(a, b);
                stray |= v.keys().any(|k| layers[*k] != layer + 1);
                vectors.push(next.iter().map(|k| v.get(k).cloned().unwrap_or_default()).collect());
            }
        }
        let rk = linalg::rank(&vectors);
        report.record(
            format!("generation L_{} = [L_1, L_{}]", layer + 1, layer),
            rk == next.len() && !stray,
            || format!("[L_1, L_{layer}] spans rank {rk}, layer {} has dimension {}", layer + 1, next.len()),
        );
    }
    report
}

/// Cumulative ranks of the flag generated by a distribution at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthVector(pub Vec<usize>);

impl fmt::Display for GrowthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Ranks at `point` of the distribution spanned by `frame[generators]` and its iterated
/// brackets, layer by layer, until the rank stops growing.
pub fn growth_vector_at_point(
    frame: &Frame,
    generators: &[usize],
    point: &[Rational],
) -> Result<GrowthVector, LieError> {
    let gens: Vec<&VectorField> = generators.iter().map(|&g| frame.field(g)).collect();
    let n = frame.dim();
    let mut symbolic = SparseEchelon::new();
    let mut pointwise: SparseEchelon<usize> = SparseEchelon::new();
    let mut level: Vec<VectorField> = Vec::new();
    for g in &gens {
        if symbolic.insert(g.flat_terms()) {
            level.push((*g).clone());
        }
        pointwise.insert(g.evaluate(point)?.into_iter().enumerate());
    }
    let mut ranks = vec![pointwise.rank()];
    // Depth bound keeps the loop finite for fields that are not bracket generating.
    for _ in 0..n {
        if pointwise.rank() == n || level.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for g in &gens {
            for f in &level {
                let b = g.lie_bracket(f)?;
                if symbolic.insert(b.flat_terms()) {
                    pointwise.insert(b.evaluate(point)?.into_iter().enumerate());
                    next.push(b);
                }
            }
        }
        if pointwise.rank() == *ranks.last().expect("non-empty") {
            break;
        }
        ranks.push(pointwise.rank());
        level = next;
    }
    Ok(GrowthVector(ranks))
}

/// Lie algebra generated by a set of fields, graded by bracket length.
#[derive(Debug, Clone)]
pub struct LieClosure {
    /// Basis of the span of length-`k` brackets, at position `k - 1`.
    pub by_degree: Vec<Vec<VectorField>>,
    /// Dimension of the whole closure up to the computed degree.
    pub rank: usize,
    /// A nonzero bracket of length `max_degree + 1`, if one exists.
    pub overflow: Option<VectorField>,
}

impl LieClosure {
    pub fn ranks_by_degree(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }
}

/// Iterated brackets `[g, f]` of generators `g` with the previous layer, up to length
/// `max_degree`; length `max_degree + 1` is computed only to test that it vanishes.
pub fn lie_closure(generators: &[VectorField], max_degree: usize) -> Result<LieClosure, LieError> {
    let mut global = SparseEchelon::new();
    let mut by_degree: Vec<Vec<VectorField>> = Vec::new();
    let mut layer_basis = SparseEchelon::new();
    let mut layer = Vec::new();
    for g in generators {
        if layer_basis.insert(g.flat_terms()) {
            global.insert(g.flat_terms());
            layer.push(g.clone());
        }
    }
    by_degree.push(layer);
    let mut overflow = None;
    for degree in 2..=max_degree + 1 {
        let prev = by_degree.last().expect("non-empty");
        let mut layer_basis = SparseEchelon::new();
        let mut layer = Vec::new();
        for g in generators {
            for f in prev {
                let b = g.lie_bracket(f)?;
                if b.is_zero() {
                    continue;
                }
                if degree > max_degree {
                    overflow = Some(b);
                    break;
                }
                if layer_basis.insert(b.flat_terms()) {
                    global.insert(b.flat_terms());
                    layer.push(b);
                }
            }
            if overflow.is_some() {
                break;
            }
        }
        if degree <= max_degree {
            by_degree.push(layer);
        }
    }
    Ok(LieClosure { by_degree, rank: global.rank(), overflow })
}
