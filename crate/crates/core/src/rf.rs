//! Rational functions in one variable over the rationals, kept in the
//! canonical reduced form (gcd of numerator and denominator divided out,
//! denominator monic), and square matrices over them with the operations
//! needed for discrete connection matrices: product, determinant, argument
//! shift, and exponentials of nilpotent matrices.

use crate::error::{Error, Result};
use crate::ratpoly::{Rat, RatPoly};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: RatPoly,
    den: RatPoly,
}

impl RationalFunction {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPoly("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: RatPoly::zero(),
                den: RatPoly::one(),
            };
        }
        let g = num.gcd(&den).expect("inputs are nonzero");
        let num = num.div_rem(&g).expect("gcd is nonzero").0;
        let den = den.div_rem(&g).expect("gcd is nonzero").0;
        let lc = den.leading_coeff();
        RationalFunction {
            num: num.scalar_mul(&(Rat::one() / &lc)),
            den: den.scalar_mul(&(Rat::one() / &lc)),
        }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RationalFunction {
            num: p,
            den: RatPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(RatPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(RatPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(RatPoly::one())
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == RatPoly::one() && self.den == RatPoly::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == RatPoly::one()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// f(x + s).
    pub fn shift(&self, s: &Rat) -> Self {
        Self::reduced(self.num.shift(s), self.den.shift(s))
    }

    /// Evaluate; error if the point is a pole.
    pub fn evaluate(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.evaluate(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("pole at x = {x}")));
        }
        Ok(self.num.evaluate(x) / d)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

/// Square matrix with rational-function entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRF {
    pub n: usize,
    entries: Vec<RationalFunction>,
}

impl MatrixRF {
    pub fn zero(n: usize) -> Self {
        MatrixRF {
            n,
            entries: vec![RationalFunction::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn shift(&self, s: &Rat) -> Self {
        MatrixRF {
            n: self.n,
            entries: self.entries.iter().map(|e| e.shift(s)).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &RationalFunction) -> Self {
        MatrixRF {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &MatrixRF) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RationalFunction::zero();
                for k in 0..n {
                    let t = self.get(i, k) * rhs.get(k, j);
                    acc = &acc + &t;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &MatrixRF) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        MatrixRF {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &MatrixRF) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        MatrixRF {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = RationalFunction::zero();
                for k in 0..self.n {
                    let t = self.get(i, k) * &v[k];
                    acc = &acc + &t;
                }
                acc
            })
            .collect()
    }

    /// Determinant by cofactor expansion along the first column. The
    /// matrices here are small (n <= 9).
    pub fn det(&self) -> RationalFunction {
        let n = self.n;
        if n == 0 {
            return RationalFunction::one();
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = RationalFunction::zero();
        for i in 0..n {
            if self.get(i, 0).is_zero() {
                continue;
            }
            let mut minor = MatrixRF::zero(n - 1);
            let mut ri = 0;
            for r in 0..n {
                if r == i {
                    continue;
                }
                for c in 1..n {
                    minor.set(ri, c - 1, self.get(r, c).clone());
                }
                ri += 1;
            }
            let term = self.get(i, 0) * &minor.det();
            if i % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    /// exp(M) for nilpotent M; errors if the power series does not
    /// terminate within n terms.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        let n = self.n;
        let mut out = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = term.mul(self);
            term = term.scalar_mul(&RationalFunction::constant(Rat::new(
                1.into(),
                k.into(),
            )));
            if term == Self::zero(n) {
                return Ok(out.add(&term));
            }
            out = out.add(&term);
        }
        if term.mul(self) == Self::zero(n) {
            Ok(out)
        } else {
            Err(Error::Invalid("matrix is not nilpotent".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};

    fn x() -> RationalFunction {
        RationalFunction::from_poly(RatPoly::x())
    }

    #[test]
    fn reduction_is_canonical() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2 with monic denominator x... no:
        // reduced form is ((x+1)/2) / 1 after making denominator monic.
        let f = RationalFunction::new(
            RatPoly::from_i64(&[-1, 0, 1]),
            RatPoly::from_i64(&[-2, 2]),
        )
        .unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &RatPoly::new(vec![rat(1, 2), rat(1, 2)]));
        let g = RationalFunction::new(RatPoly::from_i64(&[0, 2]), RatPoly::from_i64(&[0, 0, 4]))
            .unwrap();
        assert_eq!(g.num(), &RatPoly::constant(rat(1, 2)));
        assert_eq!(g.den(), &RatPoly::x());
    }

    #[test]
    fn field_ops() {
        let f = RationalFunction::new(RatPoly::one(), RatPoly::x()).unwrap();
        let s = &f + &f;
        assert_eq!(s.num(), &RatPoly::constant(rat_int(2)));
        let p = &f * &f.inv().unwrap();
        assert!(p.is_one());
        let d = &f - &f;
        assert!(d.is_zero());
        assert_eq!(f.pow(-2).unwrap().num(), &RatPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn shift_and_evaluate() {
        let f = RationalFunction::new(RatPoly::x(), RatPoly::from_i64(&[1, 1])).unwrap();
        let g = f.shift(&rat_int(1));
        assert_eq!(g.num(), &RatPoly::from_i64(&[1, 1]));
        assert_eq!(g.den(), &RatPoly::from_i64(&[2, 1]));
        assert_eq!(f.evaluate(&rat_int(1)).unwrap(), rat(1, 2));
        assert!(f.evaluate(&rat_int(-1)).is_err());
    }

    #[test]
    fn matrix_mul_det() {
        let mut m = MatrixRF::identity(2);
        m.set(1, 0, x());
        let mut u = MatrixRF::identity(2);
        u.set(0, 1, x());
        let p = m.mul(&u);
        // [[1, x], [x, x^2 + 1]]
        assert_eq!(p.get(1, 1).num(), &RatPoly::from_i64(&[1, 0, 1]));
        assert!(p.det().is_one());
        let mut s = MatrixRF::zero(2);
        s.set(0, 0, x());
        s.set(1, 1, x());
        assert_eq!(s.det().num(), &RatPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn nilpotent_exponential() {
        let mut e = MatrixRF::zero(3);
        e.set(0, 1, x());
        e.set(1, 2, x());
        let m = e.exp_nilpotent().unwrap();
        assert!(m.get(0, 0).is_one());
        assert_eq!(m.get(0, 1), &x());
        // (0,2) entry is x^2 / 2
        assert_eq!(
            m.get(0, 2).num(),
            &RatPoly::new(vec![rat_int(0), rat_int(0), rat(1, 2)])
        );
        let mut not_nil = MatrixRF::identity(2);
        not_nil.set(0, 1, x());
        assert!(not_nil.exp_nilpotent().is_err());
    }

    #[test]
    fn exp_of_opposite_inverts() {
        let mut e = MatrixRF::zero(3);
        e.set(1, 0, x());
        e.set(2, 1, RationalFunction::constant(rat(1, 2)));
        let a = e.exp_nilpotent().unwrap();
        let b = e.scalar_mul(&RationalFunction::constant(rat_int(-1)))
            .exp_nilpotent()
            .unwrap();
        assert!(a.mul(&b).is_identity());
    }
}
