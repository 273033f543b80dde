//! Problem data (weights, points, step, pairwise shift parameters), the
//! master polynomials T_i and Q_i, genericity, fertility and the
//! solution predicate, plus an independent residue oracle for tuples whose
//! entries split over the rationals.

use crate::error::{Error, Result};
use crate::liealg::{self, CartanData, Weight, WeylWord};
use crate::ratpoly::{solve_wronskian, Rat, RatPoly};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Special,
    OgievetskyWiegman,
    Explicit,
}

/// Pairwise shifts b_{i,m} for ordered pairs i != m, stored as a full
/// r x r table with unused diagonal entries zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterSet {
    pub kind: ParamKind,
    rank: usize,
    table: Vec<Vec<Rat>>,
}

impl ParameterSet {
    /// b_{i,m} = 0 for i > m, h for i < m.
    pub fn special(rank: usize, h: &Rat) -> Self {
        let table = (1..=rank)
            .map(|i| {
                (1..=rank)
                    .map(|m| if i < m { h.clone() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        ParameterSet {
            kind: ParamKind::Special,
            rank,
            table,
        }
    }

    /// All b_{i,m} = h/2.
    pub fn ogievetsky_wiegman(rank: usize, h: &Rat) -> Self {
        let half = h / Rat::from_integer(2.into());
        let table = (1..=rank)
            .map(|i| {
                (1..=rank)
                    .map(|m| if i != m { half.clone() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        ParameterSet {
            kind: ParamKind::OgievetskyWiegman,
            rank,
            table,
        }
    }

    pub fn explicit(table: Vec<Vec<Rat>>) -> Result<Self> {
        let rank = table.len();
        for row in &table {
            if row.len() != rank {
                return Err(Error::Invalid("parameter table is not square".into()));
            }
        }
        Ok(ParameterSet {
            kind: ParamKind::Explicit,
            rank,
            table,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// b_{i,m}, 1-based, i != m.
    pub fn b(&self, i: usize, m: usize) -> &Rat {
        &self.table[i - 1][m - 1]
    }

    pub fn table(&self) -> &[Vec<Rat>] {
        &self.table
    }

    pub fn is_symmetric(&self, h: &Rat) -> bool {
        for i in 1..=self.rank {
            for m in 1..=self.rank {
                if i != m && &(self.b(i, m) + self.b(m, i)) != h {
                    return false;
                }
            }
        }
        true
    }
}

/// An r-tuple of monic polynomials; a degree-0 entry is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    polys: Vec<RatPoly>,
}

impl Tuple {
    pub fn new(polys: Vec<RatPoly>) -> Result<Self> {
        let mut out = Vec::with_capacity(polys.len());
        for (k, p) in polys.into_iter().enumerate() {
            if p.is_zero() {
                return Err(Error::ZeroPoly(format!("tuple entry {} is zero", k + 1)));
            }
            out.push(p.monic());
        }
        Ok(Tuple { polys: out })
    }

    pub fn ones(rank: usize) -> Self {
        Tuple {
            polys: vec![RatPoly::one(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    pub fn poly(&self, i: usize) -> &RatPoly {
        &self.polys[i - 1]
    }

    pub fn polys(&self) -> &[RatPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.polys.iter().map(|p| p.deg() as i64).collect()
    }

    /// Replace entry i (1-based) with the monic form of p.
    pub fn with_entry(&self, i: usize, p: RatPoly) -> Result<Tuple> {
        let mut polys = self.polys.clone();
        polys[i - 1] = p;
        Tuple::new(polys)
    }
}

/// The full problem datum. When `explicit_t` is set (gauge transport), the
/// stored polynomials override the product formula for T_i.
#[derive(Debug, Clone)]
pub struct BetheProblem {
    pub cartan: CartanData,
    pub h: Rat,
    pub weights: Vec<Weight>,
    pub z: Vec<Rat>,
    pub params: ParameterSet,
    pub explicit_t: Option<Vec<RatPoly>>,
}

impl BetheProblem {
    pub fn new(
        cartan: CartanData,
        h: Rat,
        weights: Vec<Weight>,
        z: Vec<Rat>,
        params: ParameterSet,
    ) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroStep);
        }
        if weights.len() != z.len() {
            return Err(Error::Invalid(format!(
                "{} weights but {} points",
                weights.len(),
                z.len()
            )));
        }
        for (s, w) in weights.iter().enumerate() {
            if w.coords.len() != cartan.rank {
                return Err(Error::Invalid(format!(
                    "weight {} has {} coordinates for rank {}",
                    s + 1,
                    w.coords.len(),
                    cartan.rank
                )));
            }
            if !w.is_dominant() {
                return Err(Error::Invalid(format!("weight {} is not dominant", s + 1)));
            }
        }
        if params.rank() != cartan.rank {
            return Err(Error::Invalid(
                "parameter table rank does not match Cartan rank".into(),
            ));
        }
        Ok(BetheProblem {
            cartan,
            h,
            weights,
            z,
            params,
            explicit_t: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// T_i(x) = prod_s prod_{p=0}^{<Lambda_s, alpha_i^vee> - 1}
    /// (x - z_s + <Lambda_s, alpha_i^vee> h/2 - p h); empty product = 1.
    pub fn build_t(&self, i: usize) -> RatPoly {
        if let Some(ts) = &self.explicit_t {
            return ts[i - 1].clone();
        }
        let mut out = RatPoly::one();
        for (s, lam) in self.weights.iter().enumerate() {
            let pairing = lam.coords[i - 1];
            for p in 0..pairing {
                // root of the factor: z_s - <.,.> h/2 + p h
                let root = &self.z[s] - Rat::from_integer(pairing.into()) * &self.h
                    / Rat::from_integer(2.into())
                    + Rat::from_integer(p.into()) * &self.h;
                out = &out * &RatPoly::new(vec![-root, Rat::from_integer(1.into())]);
            }
        }
        out
    }

    /// Q_i(x) = T_i(x) * prod_{m != i} y_m(x + b_{i,m})^{-a_{i,m}}.
    pub fn build_q(&self, tuple: &Tuple, i: usize) -> RatPoly {
        let mut out = self.build_t(i);
        for m in 1..=self.rank() {
            if m == i {
                continue;
            }
            let e = -self.cartan.a(i, m);
            if e > 0 {
                let shifted = tuple.poly(m).shift(self.params.b(i, m));
                out = &out * &shifted.pow(e as u32);
            }
        }
        out
    }

    /// Weight at infinity for the given degree vector.
    pub fn infinity_weight(&self, degrees: &[i64]) -> Weight {
        liealg::infinity_weight(&self.cartan, &self.weights, degrees)
    }

    /// Degree vector l^w predicted by the shifted action.
    pub fn degrees_for(&self, base_degrees: &[i64], word: &WeylWord) -> Result<Vec<i64>> {
        liealg::degrees_for(&self.cartan, &self.weights, base_degrees, word)
    }
}

/// Per-direction genericity verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct GenericityReport {
    pub squarefree: Vec<bool>,
    pub coprime_shift: Vec<bool>,
    pub coprime_q: Vec<bool>,
    pub generic: bool,
}

/// For each i: y_i squarefree, coprime to y_i(x+h), coprime to Q_i.
pub fn is_generic(problem: &BetheProblem, tuple: &Tuple) -> GenericityReport {
    let r = problem.rank();
    let mut squarefree = Vec::with_capacity(r);
    let mut coprime_shift = Vec::with_capacity(r);
    let mut coprime_q = Vec::with_capacity(r);
    // tuple entries and Q_i are nonzero by construction, so the gcd-based
    // predicates cannot fail
    for i in 1..=r {
        let y = tuple.poly(i);
        squarefree.push(y.squarefree().expect("tuple entries are nonzero"));
        coprime_shift.push(
            y.coprime(&y.shift(&problem.h))
                .expect("tuple entries are nonzero"),
        );
        coprime_q.push(
            y.coprime(&problem.build_q(tuple, i))
                .expect("tuple entries are nonzero"),
        );
    }
    let generic = squarefree.iter().all(|&b| b)
        && coprime_shift.iter().all(|&b| b)
        && coprime_q.iter().all(|&b| b);
    GenericityReport {
        squarefree,
        coprime_shift,
        coprime_q,
        generic,
    }
}

/// Polynomial solution of W(y_i, u) = Q_i, pinned so the coefficient of
/// x^{deg y_i} vanishes; absence means not fertile in direction i.
pub fn is_fertile(problem: &BetheProblem, tuple: &Tuple, i: usize) -> Result<Option<RatPoly>> {
    let y = tuple.poly(i);
    let q = problem.build_q(tuple, i);
    solve_wronskian(y, &q, &problem.h, y.deg())
}

/// Generic and fertile in every direction.
pub fn is_bethe(problem: &BetheProblem, tuple: &Tuple) -> Result<bool> {
    if !is_generic(problem, tuple).generic {
        return Ok(false);
    }
    for i in 1..=problem.rank() {
        if is_fertile(problem, tuple, i)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue criterion in direction i: for every root t of y_i,
/// Res_{x=t} Q_i/(y_i(x) y_i(x+h)) = -Res_{x=t-h} of the same function.
/// Requires y_i squarefree, coprime to its shift, and split over the
/// rationals; otherwise the oracle is inapplicable.
pub fn residue_check(problem: &BetheProblem, tuple: &Tuple, i: usize) -> Result<bool> {
    let y = tuple.poly(i);
    if y.is_constant() {
        return Ok(true);
    }
    if !y.squarefree()? {
        return Err(Error::OracleInapplicable(format!(
            "y_{i} has a multiple root"
        )));
    }
    let h = &problem.h;
    let y_up = y.shift(h);
    if !y.coprime(&y_up)? {
        return Err(Error::OracleInapplicable(format!(
            "y_{i} shares a root with its shift"
        )));
    }
    let roots = y.rational_roots()?;
    if roots.len() != y.deg() {
        return Err(Error::OracleInapplicable(format!(
            "y_{i} does not split over the rationals"
        )));
    }
    let q = problem.build_q(tuple, i);
    let dy = y.derivative();
    for t in &roots {
        // denominator y(x)y(x+h) has simple roots at t and t-h
        let lhs = q.evaluate(t) / (dy.evaluate(t) * y_up.evaluate(t));
        let tm = t - h;
        let rhs = q.evaluate(&tm) / (y.evaluate(&tm) * dy.evaluate(t));
        if lhs != -rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roots t_j^{(i)} for each index i, as supplied by the caller.
pub type RootAssignment = Vec<Vec<Rat>>;

/// Left-hand side of equation (i, j): the assignment solves it iff the
/// value is 1. Indices are 1-based; j runs over the roots t^{(i)}.
pub fn bethe_lhs(
    problem: &BetheProblem,
    t: &RootAssignment,
    i: usize,
    j: usize,
) -> Result<Rat> {
    let r = problem.rank();
    if t.len() != r {
        return Err(Error::Invalid("root assignment rank mismatch".into()));
    }
    if i == 0 || i > r || j == 0 || j > t[i - 1].len() {
        return Err(Error::Invalid(format!("equation index ({i},{j}) out of range")));
    }
    let tij = &t[i - 1][j - 1];
    let h = &problem.h;
    let half = Rat::new(1.into(), 2.into());
    let mut value = Rat::from_integer(1.into());
    let mut divide = |num: Rat, den: Rat, what: &str| -> Result<()> {
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "vanishing denominator in factor {what} of equation ({i},{j})"
            )));
        }
        value = &value * num / den;
        Ok(())
    };
    // weight factors
    for (s, lam) in problem.weights.iter().enumerate() {
        let a = Rat::from_integer(lam.coords[i - 1].into()) * h * &half;
        let num = tij - &problem.z[s] + &a;
        let den = tij - &problem.z[s] - &a;
        divide(num, den, &format!("weight {}", s + 1))?;
    }
    // same-index factors
    for (k, tik) in t[i - 1].iter().enumerate() {
        if k == j - 1 {
            continue;
        }
        let num = tij - tik - h;
        let den = tij - tik + h;
        divide(num, den, &format!("root t_{}^{}", k + 1, i))?;
    }
    // neighbor factors
    for m in 1..=r {
        if m == i {
            continue;
        }
        let e = -problem.cartan.a(i, m);
        if e == 0 {
            continue;
        }
        let b_im = problem.params.b(i, m);
        for (k, tmk) in t[m - 1].iter().enumerate() {
            let num = tij - tmk + b_im;
            let den = &num - h;
            for _ in 0..e {
                divide(num.clone(), den.clone(), &format!("root t_{}^{}", k + 1, m))?;
            }
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{cartan_matrix, Family};
    use crate::ratpoly::{rat, rat_int};

    fn sl2_problem() -> BetheProblem {
        let c = cartan_matrix(Family::A, 1).unwrap();
        let p = ParameterSet::special(1, &rat_int(1));
        BetheProblem::new(c, rat_int(1), vec![Weight::new(vec![1])], vec![rat_int(0)], p)
            .unwrap()
    }

    fn a2_problem() -> BetheProblem {
        let c = cartan_matrix(Family::A, 2).unwrap();
        let p = ParameterSet::special(2, &rat_int(1));
        BetheProblem::new(
            c,
            rat_int(1),
            vec![Weight::fundamental(2, 1)],
            vec![rat_int(0)],
            p,
        )
        .unwrap()
    }

    #[test]
    fn parameter_kinds() {
        let h = rat_int(1);
        let sp = ParameterSet::special(3, &h);
        assert_eq!(sp.b(1, 2), &rat_int(1));
        assert_eq!(sp.b(2, 1), &rat_int(0));
        assert!(sp.is_symmetric(&h));
        let ow = ParameterSet::ogievetsky_wiegman(3, &h);
        assert_eq!(ow.b(1, 3), &rat(1, 2));
        assert!(ow.is_symmetric(&h));
        let asym = ParameterSet::explicit(vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0)],
        ])
        .unwrap();
        assert!(!asym.is_symmetric(&h));
    }

    #[test]
    fn t_polynomials() {
        let p = sl2_problem();
        assert_eq!(p.build_t(1), RatPoly::new(vec![rat(1, 2), rat_int(1)]));
        // coordinate 2: (x+1) x
        let c = cartan_matrix(Family::A, 1).unwrap();
        let p2 = BetheProblem::new(
            c,
            rat_int(1),
            vec![Weight::new(vec![2])],
            vec![rat_int(0)],
            ParameterSet::special(1, &rat_int(1)),
        )
        .unwrap();
        assert_eq!(p2.build_t(1), RatPoly::from_i64(&[0, 1, 1]));
        // zero pairing gives the empty product
        let a2 = a2_problem();
        assert_eq!(a2.build_t(2), RatPoly::one());
    }

    #[test]
    fn q_polynomials() {
        let p = sl2_problem();
        let t = Tuple::ones(1);
        assert_eq!(p.build_q(&t, 1), p.build_t(1));
        let a2 = a2_problem();
        let t = Tuple::new(vec![RatPoly::one(), RatPoly::x()]).unwrap();
        // b_{1,2} = h = 1 shifts the neighbor
        assert_eq!(
            a2.build_q(&t, 1),
            &a2.build_t(1) * &RatPoly::from_i64(&[1, 1])
        );
    }

    #[test]
    fn genericity() {
        let p = sl2_problem();
        assert!(is_generic(&p, &Tuple::ones(1)).generic);
        let sq = Tuple::new(vec![RatPoly::from_i64(&[0, 0, 1])]).unwrap();
        let rep = is_generic(&p, &sq);
        assert!(!rep.squarefree[0]);
        assert!(!rep.generic);
        let good = Tuple::new(vec![RatPoly::from_i64(&[1, 0, 1])]).unwrap();
        assert!(is_generic(&p, &good).generic);
    }

    #[test]
    fn fertility_and_bethe() {
        let p = sl2_problem();
        let base = Tuple::ones(1);
        let y1 = is_fertile(&p, &base, 1).unwrap().unwrap();
        assert_eq!(y1, RatPoly::new(vec![rat_int(0), rat_int(0), rat(-1, 2)]));
        assert!(is_bethe(&p, &base).unwrap());
        // degree-1 entry is infertile
        let bad = Tuple::new(vec![RatPoly::x()]).unwrap();
        assert!(is_fertile(&p, &bad, 1).unwrap().is_none());
        // x^2 + 1 is a solution (reproduction with c = 1 after monic
        // rescaling of -x^2/2 ... the member is x^2 - 2c)
        let member = Tuple::new(vec![RatPoly::from_i64(&[-2, 0, 1])]).unwrap();
        assert!(is_bethe(&p, &member).unwrap());
        // all-ones is fertile in every direction for the rank-2 problem
        let a2 = a2_problem();
        assert!(is_bethe(&a2, &Tuple::ones(2)).unwrap());
    }

    #[test]
    fn residue_oracle() {
        let p = sl2_problem();
        // constant: vacuous
        assert!(residue_check(&p, &Tuple::ones(1), 1).unwrap());
        // x^2 - 2c with rational roots: c = 2 gives roots +-2
        let t = Tuple::new(vec![RatPoly::from_i64(&[-4, 0, 1])]).unwrap();
        assert!(is_fertile(&p, &t, 1).unwrap().is_some());
        assert!(residue_check(&p, &t, 1).unwrap());
        // infertile rational-rooted instance: y = x(x-2)
        let bad = Tuple::new(vec![RatPoly::from_roots(&[rat_int(0), rat_int(2)])]).unwrap();
        assert!(is_fertile(&p, &bad, 1).unwrap().is_none());
        assert!(!residue_check(&p, &bad, 1).unwrap());
        // irrational roots: inapplicable
        let irr = Tuple::new(vec![RatPoly::from_i64(&[-2, 0, 1])]).unwrap();
        assert!(matches!(
            residue_check(&p, &irr, 1),
            Err(Error::OracleInapplicable(_))
        ));
    }

    #[test]
    fn bethe_equations_direct() {
        // roots of x^2 - 4: t = +-2 solve the rank-1 equations
        let p = sl2_problem();
        let t = vec![vec![rat_int(2), rat_int(-2)]];
        for j in 1..=2 {
            assert_eq!(bethe_lhs(&p, &t, 1, j).unwrap(), rat_int(1));
        }
        // a non-solution assignment
        let bad = vec![vec![rat_int(1), rat_int(-2)]];
        assert_ne!(bethe_lhs(&p, &bad, 1, 1).unwrap(), rat_int(1));
        // out-of-range index
        assert!(bethe_lhs(&p, &t, 1, 3).is_err());
    }

    #[test]
    fn rescaling_invariance() {
        // monic storage makes rescaling definitional: construct from a
        // scaled polynomial and compare
        let a = Tuple::new(vec![RatPoly::from_i64(&[-4, 0, 1])]).unwrap();
        let b = Tuple::new(vec![RatPoly::from_i64(&[-12, 0, 3])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn problem_validation() {
        let c = cartan_matrix(Family::A, 1).unwrap();
        let params = ParameterSet::special(1, &rat_int(1));
        assert!(matches!(
            BetheProblem::new(
                c.clone(),
                rat_int(0),
                vec![Weight::new(vec![1])],
                vec![rat_int(0)],
                params.clone()
            ),
            Err(Error::ZeroStep)
        ));
        assert!(BetheProblem::new(
            c.clone(),
            rat_int(1),
            vec![Weight::new(vec![-1])],
            vec![rat_int(0)],
            params.clone()
        )
        .is_err());
        assert!(BetheProblem::new(
            c,
            rat_int(1),
            vec![Weight::new(vec![1])],
            vec![],
            params
        )
        .is_err());
    }
}
