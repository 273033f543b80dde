//! Cartan matrices with symmetrizers, integral weights in coroot
//! coordinates, Weyl words with ordinary and shifted actions, Langlands
//! duality, and the degree-vector bookkeeping for populations.
//!
//! Weyl group elements are never enumerated; everything is word-driven.
//! A word `(w_1, ..., w_k)` denotes `s_{w_1} s_{w_2} ... s_{w_k}` and acts
//! on a weight by applying the letters right-to-left, so the reproduction
//! sequence `(i_1, ..., i_k)` corresponds to the word `(i_k, ..., i_1)`.

use crate::error::{Error, Result};
use crate::ratpoly::{solve_linear, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidCartan(format!("unknown family `{other}`"))),
        }
    }

    /// Family of the transposed Cartan matrix.
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        write!(f, "{s}")
    }
}

/// Cartan matrix of a finite-type simple Lie algebra together with its
/// symmetrizers and the cached exact inverse. Simple roots are ordered so
/// that consecutive roots of the A-chain part are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub family: Family,
    pub rank: usize,
    matrix: Vec<Vec<i64>>,
    sym: Vec<i64>,
    inverse: Vec<Vec<Rat>>,
}

impl CartanData {
    /// Entry a_{i,j}, 1-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Symmetrizer d_i, 1-based.
    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.sym[i - 1]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.sym
    }

    pub fn inverse(&self) -> &[Vec<Rat>] {
        &self.inverse
    }

    /// Dynkin-diagram adjacency: a_{i,j} != 0 for i != j. 1-based.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.a(i, j) != 0
    }

    fn from_matrix(family: Family, matrix: Vec<Vec<i64>>) -> Result<CartanData> {
        let rank = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan("diagonal entries must be 2".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if i != j {
                    if v > 0 {
                        return Err(Error::InvalidCartan(
                            "off-diagonal entries must be non-positive".into(),
                        ));
                    }
                    if (v == 0) != (matrix[j][i] == 0) {
                        return Err(Error::InvalidCartan(
                            "a_{i,j} = 0 must imply a_{j,i} = 0".into(),
                        ));
                    }
                }
            }
        }
        let sym = symmetrizers(&matrix)?;
        let inverse = invert(&matrix)?;
        Ok(CartanData {
            family,
            rank,
            matrix,
            sym,
            inverse,
        })
    }
}

/// Standard Cartan matrix for a finite-type pair, with the A-chain root
/// ordering (consecutive roots adjacent).
pub fn cartan_matrix(family: Family, rank: usize) -> Result<CartanData> {
    let bad = |msg: &str| Err(Error::InvalidCartan(format!("({family}, {rank}): {msg}")));
    let r = rank;
    if r == 0 {
        return bad("rank must be positive");
    }
    // chain with all edges -1
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        m[i][i] = 2;
        if i + 1 < r {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    match family {
        Family::A => {}
        Family::B => {
            if r < 2 {
                return bad("B requires rank >= 2");
            }
            // alpha_r short: a_{r,r-1} = -2
            m[r - 1][r - 2] = -2;
        }
        Family::C => {
            if r < 2 {
                return bad("C requires rank >= 2");
            }
            // alpha_r long: a_{r-1,r} = -2
            m[r - 2][r - 1] = -2;
        }
        Family::D => {
            if r < 3 {
                return bad("D requires rank >= 3");
            }
            // fork: alpha_r attached to alpha_{r-2}
            m[r - 1][r - 2] = 0;
            m[r - 2][r - 1] = 0;
            m[r - 1][r - 3] = -1;
            m[r - 3][r - 1] = -1;
        }
        Family::E => {
            if !(6..=8).contains(&r) {
                return bad("E requires rank 6, 7 or 8");
            }
            // chain 1..r-1, with alpha_r attached to alpha_3
            m[r - 1][r - 2] = 0;
            m[r - 2][r - 1] = 0;
            m[r - 1][2] = -1;
            m[2][r - 1] = -1;
        }
        Family::F => {
            if r != 4 {
                return bad("F requires rank 4");
            }
            m[2][1] = -2; // a_{3,2} = -2: alpha_1, alpha_2 long
        }
        Family::G => {
            if r != 2 {
                return bad("G requires rank 2");
            }
            m[1][0] = -3;
        }
    }
    CartanData::from_matrix(family, m)
}

/// Transposed Cartan matrix with recomputed symmetrizers.
pub fn langlands_dual(c: &CartanData) -> CartanData {
    let r = c.rank;
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = c.matrix[j][i];
        }
    }
    CartanData::from_matrix(c.family.dual(), m)
        .expect("transpose of a valid Cartan matrix is valid")
}

/// Smallest positive integer symmetrizers d with diag(d) * A symmetric.
/// Propagated over the Dynkin graph; works for any symmetrizable matrix
/// whose graph is connected componentwise.
fn symmetrizers(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = matrix.len();
    let mut d: Vec<Option<Rat>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i != j && matrix[i][j] != 0 {
                    // d_i a_{i,j} = d_j a_{j,i}
                    let dj = &di * Rat::new(matrix[i][j].into(), matrix[j][i].into());
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push(j);
                        }
                        Some(existing) => {
                            if *existing != dj {
                                return Err(Error::InvalidCartan(
                                    "matrix is not symmetrizable".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let vals: Vec<Rat> = d.into_iter().map(|v| v.unwrap()).collect();
    let lcm_den = vals
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
    let ints: Vec<num_bigint::BigInt> = vals.iter().map(|v| v.numer() * &lcm_den / v.denom()).collect();
    let gcd_all = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, v| num_integer::gcd(acc, v.clone()));
    let mut out = Vec::with_capacity(vals.len());
    for v in &ints {
        let s = v / &gcd_all;
        let s: i64 = (&s)
            .try_into()
            .map_err(|_| Error::InvalidCartan("symmetrizer overflow".into()))?;
        if s <= 0 {
            return Err(Error::InvalidCartan("non-positive symmetrizer".into()));
        }
        out.push(s);
    }
    // sanity: diag(d) * A symmetric
    for i in 0..r {
        for j in 0..r {
            if out[i] * matrix[i][j] != out[j] * matrix[j][i] {
                return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
            }
        }
    }
    Ok(out)
}

fn invert(matrix: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let r = matrix.len();
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let a: Vec<Vec<Rat>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| Rat::from_integer(v.into())).collect())
            .collect();
        let mut e = vec![Rat::zero(); r];
        e[j] = Rat::one();
        let col = solve_linear(a, e)
            .ok_or_else(|| Error::InvalidCartan("Cartan matrix is singular".into()))?;
        cols.push(col);
    }
    // cols[j][i] = (A^{-1})_{i,j}
    Ok((0..r)
        .map(|i| (0..r).map(|j| cols[j][i].clone()).collect())
        .collect())
}

/// Integral weight in coroot coordinates: coords[i] = <lambda, alpha_i^vee>.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![0; rank])
    }

    /// Fundamental weight omega_i (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Weight::new(coords)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Word in the generators s_1, ..., s_r. Letters are 1-based; the empty
/// word is the identity. Reducedness is not checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l > rank {
                return Err(Error::Invalid(format!(
                    "Weyl word letter {l} out of range 1..={rank}"
                )));
            }
        }
        Ok(WeylWord { letters })
    }

    pub fn identity() -> Self {
        WeylWord { letters: vec![] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Inverse word (letters reversed; each s_i is an involution).
    pub fn inverse(&self) -> Self {
        WeylWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }
}

/// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i, acting on coroot
/// coordinates through column i of the Cartan matrix.
pub fn reflect(cartan: &CartanData, i: usize, w: &Weight) -> Weight {
    let li = w.coords[i - 1];
    Weight::new(
        w.coords
            .iter()
            .enumerate()
            .map(|(j, &c)| c - li * cartan.a(j + 1, i))
            .collect(),
    )
}

/// Shifted action w . lambda = w(lambda + rho) - rho, with the word's
/// letters applied right-to-left.
pub fn shifted_action(cartan: &CartanData, word: &WeylWord, w: &Weight) -> Weight {
    let rho = Weight::new(vec![1; cartan.rank]);
    let mut mu = w.add(&rho);
    for &l in word.letters.iter().rev() {
        mu = reflect(cartan, l, &mu);
    }
    mu.sub(&rho)
}

/// Coroot coordinates of sum_j l_j alpha_j, i.e. A * l.
pub fn root_combination(cartan: &CartanData, l: &[i64]) -> Weight {
    Weight::new(
        (1..=cartan.rank)
            .map(|i| (1..=cartan.rank).map(|j| cartan.a(i, j) * l[j - 1]).sum())
            .collect(),
    )
}

/// Weight at infinity sum_s Lambda_s - sum_j l_j alpha_j.
pub fn infinity_weight(cartan: &CartanData, weights: &[Weight], degrees: &[i64]) -> Weight {
    let total = weights
        .iter()
        .fold(Weight::zero(cartan.rank), |acc, w| acc.add(w));
    total.sub(&root_combination(cartan, degrees))
}

/// Degree vector l^w with sum_s Lambda_s - w . Lambda_inf = sum_i l_i^w alpha_i,
/// where Lambda_inf is the weight at infinity for `base_degrees`. The
/// coefficients are computed with the exact inverse Cartan matrix and must
/// come out integral.
pub fn degrees_for(
    cartan: &CartanData,
    weights: &[Weight],
    base_degrees: &[i64],
    word: &WeylWord,
) -> Result<Vec<i64>> {
    let total = weights
        .iter()
        .fold(Weight::zero(cartan.rank), |acc, w| acc.add(w));
    let inf = infinity_weight(cartan, weights, base_degrees);
    let moved = shifted_action(cartan, word, &inf);
    let diff = total.sub(&moved);
    let mut out = Vec::with_capacity(cartan.rank);
    for row in c_inverse_rows(cartan) {
        let mut v = Rat::zero();
        for (j, coeff) in row.iter().enumerate() {
            v += coeff * Rat::from_integer(diff.coords[j].into());
        }
        if !v.denom().is_one() {
            return Err(Error::Invariant(format!(
                "non-integer degree coefficient {v} for word {:?}",
                word.letters
            )));
        }
        let n: i64 = v
            .numer()
            .try_into()
            .map_err(|_| Error::Invariant("degree coefficient overflow".into()))?;
        out.push(n);
    }
    Ok(out)
}

fn c_inverse_rows(cartan: &CartanData) -> &[Vec<Rat>] {
    cartan.inverse()
}
