//! Exact linear algebra over the rationals.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination on integer
//! rows. Affine systems are solved by Gauss-Jordan over `Rational`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

/// Rank of a dense rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in col + 1..cols {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

/// Determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    // Row scaling: det(A) = det(scaled) / prod(scales).
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Rational::new(sign * &m[n - 1][n - 1], scale)
}

/// Solution of `A u = b`: one particular solution plus the indices of free unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    /// Free unknowns are set to zero.
    pub values: Vec<Rational>,
    pub free: Vec<usize>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.free.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Inconsistent {
    /// Index of an equation that reduces to `0 = c` with `c != 0`.
    pub equation: usize,
    /// Best-effort values (free unknowns zero, inconsistent rows ignored).
    pub values: Vec<Rational>,
}

/// Solves the sparse system whose equation `i` is `sum_j rows[i][j] u_j = rhs[i]`.
pub fn solve_affine(
    num_unknowns: usize,
    rows: &[BTreeMap<usize, Rational>],
    rhs: &[Rational],
) -> Result<AffineSolution, Inconsistent> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<(BTreeMap<usize, Rational>, Rational, usize)> = rows
        .iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (r, b))| (r.clone(), b.clone(), i))
        .collect();
    // pivot unknown -> row position
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..num_unknowns {
        let Some(p) = (r..m.len()).find(|&i| m[i].0.get(&col).is_some_and(|c| !c.is_zero()))
        else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r].0[&col].recip();
        let (row, b, idx) = std::mem::take(&mut m[r]);
        let row: BTreeMap<usize, Rational> =
            row.into_iter().map(|(j, c)| (j, c * &inv)).collect();
        let b = b * &inv;
        for (i, other) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let Some(f) = other.0.get(&col).cloned() else { continue };
            for (j, c) in &row {
                let e = other.0.entry(*j).or_insert_with(Rational::zero);
                *e -= &f * c;
                if e.is_zero() {
                    other.0.remove(j);
                }
            }
            other.1 -= &f * &b;
        }
        m[r] = (row, b, idx);
        pivots.push((col, r));
        r += 1;
    }
    let mut values = vec![Rational::zero(); num_unknowns];
    for &(col, row) in &pivots {
        values[col] = m[row].1.clone();
    }
    if let Some(bad) = m[r..].iter().find(|(_, b, _)| !b.is_zero()) {
        return Err(Inconsistent { equation: bad.2, values });
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    let free = (0..num_unknowns).filter(|c| !pivot_cols.contains(c)).collect();
    Ok(AffineSolution { values, free })
}

/// Incrementally maintained row-echelon basis of sparse vectors indexed by `K`.
///
/// Rows are primitive integer vectors whose leading (smallest) key is unique.
#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, BigInt>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder (empty when `v` is in the span).
    fn reduce(&self, v: impl IntoIterator<Item = (K, Rational)>) -> BTreeMap<K, BigInt> {
        let v: Vec<(K, Rational)> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let lcm = v.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut cur: BTreeMap<K, BigInt> =
            v.into_iter().map(|(k, c)| (k, c.numer() * (&lcm / c.denom()))).collect();
        loop {
            let Some((lead, a)) = cur.iter().next().map(|(k, a)| (k.clone(), a.clone())) else {
                return cur;
            };
            let Some(row) = self.rows.get(&lead) else {
                return cur;
            };
            // cur <- p*cur - a*row, with p the row's leading coefficient
            let p = &row[&lead];
            let g = a.gcd(p);
            let (fa, fp) = (&a / &g, p / &g);
            let mut next: BTreeMap<K, BigInt> =
                cur.into_iter().map(|(k, c)| (k, c * &fp)).collect();
            for (k, c) in row {
                let e = next.entry(k.clone()).or_insert_with(BigInt::zero);
                *e -= c * &fa;
                if e.is_zero() {
                    next.remove(k);
                }
            }
            make_primitive(&mut next);
            cur = next;
        }
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (K, Rational)>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the basis if independent; returns whether the rank grew.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (K, Rational)>) -> bool {
        let mut rem = self.reduce(v);
        let Some(lead) = rem.keys().next().cloned() else {
            return false;
        };
        make_primitive(&mut rem);
        self.rows.insert(lead, rem);
        true
    }
}

fn make_primitive<K: Ord>(v: &mut BTreeMap<K, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in v.values_mut() {
        *c /= &g;
    }
    if v.values().next().is_some_and(|c| c.is_negative()) {
        for c in v.values_mut() {
            *c = -c.clone();
        }
    }
}
