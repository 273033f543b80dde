//! Exact rational scalars and univariate polynomials over them.
//!
//! Everything here is exact: shifts, gcds and the discrete-Wronskian solver
//! work over arbitrary-precision rationals, so a returned polynomial is an
//! identity, not an approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Canonical form is kept by
/// `num-rational` (positive denominator, reduced).
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("cannot parse integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Canonical string form: "p/q", or "p" when the denominator is 1.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Univariate polynomial over the rationals, stored as ascending
/// coefficients with no trailing zeros. The zero polynomial is the empty
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn x() -> Self {
        RatPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// Monic polynomial with the given rational roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        let mut p = RatPoly::one();
        for t in roots {
            p = &p * &RatPoly::new(vec![-t.clone(), Rat::one()]);
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 for the zero polynomial (callers that need the
    /// distinction use `degree`).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn neg(&self) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scalar_mul(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    /// Returns p(x + a), computed by Horner-style re-centering.
    pub fn shift(&self, a: &Rat) -> Self {
        if a.is_zero() || self.is_zero() {
            return self.clone();
        }
        // acc(x) <- acc(x) * (x + a) + c, from the top coefficient down.
        let xa = RatPoly::new(vec![a.clone(), Rat::one()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &xa) + &RatPoly::constant(c.clone());
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scalar_mul(&lc.recip())
    }

    /// Exact division with remainder: self = q * d + r, deg r < deg d.
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroPoly("division by the zero polynomial".into()));
        }
        let dd = d.degree().unwrap();
        let lc = d.leading_coeff();
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while !rem.is_zero() && rem.deg() >= dd {
            let k = rem.deg() - dd;
            let q = rem.leading_coeff() / &lc;
            let mut sub = vec![Rat::zero(); k + dd + 1];
            for (i, c) in d.coeffs.iter().enumerate() {
                sub[k + i] = c * &q;
            }
            rem = &rem - &RatPoly::new(sub);
            quot[k] = q;
        }
        Ok((RatPoly::new(quot), rem))
    }

    /// Monic greatest common divisor over the rationals.
    pub fn gcd(&self, other: &RatPoly) -> Result<RatPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPoly("gcd of two zero polynomials".into()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// True iff gcd(p, p') is constant.
    pub fn squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPoly("squarefree test of zero".into()));
        }
        if self.is_constant() {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// True iff gcd(p, q) is constant.
    pub fn coprime(&self, other: &RatPoly) -> Result<bool> {
        Ok(self.gcd(other)?.is_constant())
    }

    /// All rational roots, each listed once (callers that need
    /// multiplicities work with squarefree inputs). Errors when the
    /// coefficients are too large for divisor enumeration.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroPoly("roots of the zero polynomial".into()));
        }
        if self.is_constant() {
            return Ok(vec![]);
        }
        // Clear denominators and content to get a primitive integer polynomial.
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &den / c.denom())
            .collect();
        // Factor out powers of x first: x = 0 may be a root.
        let mut roots = Vec::new();
        let mut low = 0usize;
        while ints[low].is_zero() {
            low += 1;
        }
        if low > 0 {
            roots.push(Rat::zero());
        }
        let ints = ints.split_off(low);
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let p_divs = divisors(&a0)?;
        let q_divs = divisors(&an)?;
        for p in &p_divs {
            for q in &q_divs {
                for sign in [1i64, -1] {
                    let cand = Rat::new(p * BigInt::from(sign), q.clone());
                    if self.evaluate(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        Ok(roots)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_string).collect()
    }
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", rat_string(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", rat_string(&a))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl std::ops::Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPoly::new(out)
    }
}

impl std::ops::Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPoly::new(out)
    }
}

impl std::ops::Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + &(a * b);
                out[i + j] = v;
            }
        }
        RatPoly::new(out)
    }
}

/// y(x+h) u(x) - y(x) u(x+h), the discrete Wronskian with step h.
pub fn discrete_wronskian(y: &RatPoly, u: &RatPoly, h: &Rat) -> Result<RatPoly> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    Ok(&(&y.shift(h) * u) - &(y * &u.shift(h)))
}

/// Finds a polynomial u with `discrete_wronskian(y, u, h) = q`, if one
/// exists, by an exact linear solve on the coefficients of u with degree
/// bound max(deg y, deg q + 1 - deg y). Among the affine solution family
/// u + c*y the representative with zero coefficient at `x^normalize_at` is
/// returned (callers pass `normalize_at = deg y`, where y's coefficient is
/// its leading one, so the representative always exists and is unique).
pub fn solve_wronskian(
    y: &RatPoly,
    q: &RatPoly,
    h: &Rat,
    normalize_at: usize,
) -> Result<Option<RatPoly>> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    if y.is_zero() {
        return Err(Error::ZeroPoly("solve_wronskian with y = 0".into()));
    }
    let dy = y.degree().unwrap();
    let dq = q.degree().map_or(0, |d| d + 1); // deg q + 1, with q = 0 -> 0
    let bound = dy.max(dq.saturating_sub(dy));
    let n_unknowns = bound + 1;

    // Column j holds the coefficients of W(y, x^j).
    let mut cols: Vec<RatPoly> = Vec::with_capacity(n_unknowns);
    for j in 0..n_unknowns {
        let mono = {
            let mut c = vec![Rat::zero(); j + 1];
            c[j] = Rat::one();
            RatPoly::new(c)
        };
        cols.push(discrete_wronskian(y, &mono, h)?);
    }
    let n_rows = cols
        .iter()
        .map(|p| p.coeffs.len())
        .chain(std::iter::once(q.coeffs.len()))
        .max()
        .unwrap_or(1);
    let matrix: Vec<Vec<Rat>> = (0..n_rows)
        .map(|row| cols.iter().map(|p| p.coeff(row)).collect())
        .collect();
    let rhs: Vec<Rat> = (0..n_rows).map(|row| q.coeff(row)).collect();

    let sol = match solve_linear(matrix, rhs) {
        Some(s) => s,
        None => return Ok(None),
    };
    let u = RatPoly::new(sol);
    debug_assert_eq!(discrete_wronskian(y, &u, h)?, *q);
    // Pin the coefficient at x^normalize_at to zero via the kernel element y.
    let c = -(u.coeff(normalize_at) / y.coeff(normalize_at));
    let pinned = &u + &y.scalar_mul(&c);
    debug_assert!(pinned.coeff(normalize_at).is_zero());
    Ok(Some(pinned))
}

/// Exact Gaussian elimination; free variables are set to zero. Returns
/// None if the system is inconsistent.
pub(crate) fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].clone().recip();
        for c in col..cols {
            let v = &a[row][c] * &inv;
            a[row][c] = v;
        }
        b[row] = &b[row] * &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let v = &a[r][c] - &(&f * &a[row][c]);
                    a[r][c] = v;
                }
                let v = &b[r] - &(&f * &b[row]);
                b[r] = v;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Consistency: remaining rows must have zero rhs.
    for r in row..rows {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(r) = piv {
            x[col] = b[*r].clone();
        }
    }
    Some(x)
}

/// All positive divisors of |n|, via trial division. Errors when n does
/// not fit in u128 (out of range for the residue oracle's divisor search).
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Err(Error::Invariant("divisors of zero requested".into()));
    }
    let small: u128 = n
        .try_into()
        .map_err(|_| Error::OracleInapplicable("coefficient too large to factor".into()))?;
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut m = small;
    let mut d: u128 = 2;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pe: u128 = 1;
        for _ in 0..e {
            pe = pe.saturating_mul(p);
            divs.extend(cur.iter().map(|d| d.saturating_mul(pe)));
        }
    }
    divs.sort_unstable();
    divs.dedup();
    Ok(divs.into_iter().map(BigInt::from).collect())
}
