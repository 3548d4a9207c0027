//! Dense univariate polynomials in `t` over exact rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

/// Order of vanishing at a point. The zero polynomial vanishes to infinite
/// order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_at_least(self, k: u32) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(u32),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Finite(v) => Ok(Valuation::Finite(v)),
            Repr::Word(w) if w == "infinity" => Ok(Valuation::Infinite),
            Repr::Word(w) => Err(de::Error::custom(format!(
                "expected a non-negative integer or \"infinity\", got \"{w}\""
            ))),
        }
    }
}

/// Coefficients are stored from the constant term upwards with no trailing
/// zeros, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// The base parameter `t`.
    pub fn t() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `t - t0`.
    pub fn linear_factor(t0: &BigRational) -> Self {
        Poly::from_coeffs(vec![-t0.clone(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rational(c)).collect())
    }

    /// Coefficients from the constant term upwards.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// The same polynomial scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `t0` as a root.
    pub fn valuation_at(&self, t0: &BigRational) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let factor = Poly::linear_factor(t0);
        let mut p = self.clone();
        let mut v = 0;
        while let Some(q) = p.exact_div(&factor) {
            p = q;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// Pairwise coprime monic square-free factors `s_i` with `self = c·∏ s_i^i`
    /// (Yun's algorithm). Only non-constant factors are returned.
    pub fn square_free_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let next_b = b.exact_div(&a).expect("gcd divides");
            let next_c = d.exact_div(&a).expect("gcd divides");
            d = &next_c - &next_b.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            b = next_b;
            i += 1;
        }
        out
    }

    /// The same polynomial with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let denominators = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denominators.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Distinct rational roots in increasing order.
    ///
    /// Candidates `p/q` come from the divisors of the trailing and leading
    /// coefficients of the primitive integer form, so both must stay below
    /// `bound` in absolute value.
    pub fn rational_roots(&self, bound: u64) -> Result<Vec<BigRational>, RootSearchTooLarge> {
        let mut roots = BTreeSet::new();
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let ints = self.primitive_integer_coeffs();
        let lowest = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        if lowest > 0 {
            roots.insert(BigRational::zero());
        }
        let ints = &ints[lowest..];
        if ints.len() > 1 {
            let trailing = small(&ints[0], bound)?;
            let leading = small(ints.last().expect("nonempty"), bound)?;
            let ps = divisors(trailing);
            let qs = divisors(leading);
            for p in &ps {
                for q in &qs {
                    for sign in [-1i64, 1] {
                        let r = BigRational::new(BigInt::from(sign) * BigInt::from(*p), BigInt::from(*q));
                        if !roots.contains(&r) && self.eval(&r).is_zero() {
                            roots.insert(r);
                        }
                    }
                }
            }
        }
        Ok(roots.into_iter().collect())
    }
}

/// A coefficient too large for the exhaustive divisor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSearchTooLarge {
    pub coefficient: String,
    pub bound: u64,
}

fn small(c: &BigInt, bound: u64) -> Result<u64, RootSearchTooLarge> {
    c.abs()
        .to_u64()
        .filter(|&v| v <= bound)
        .ok_or_else(|| RootSearchTooLarge {
            coefficient: c.to_string(),
            bound,
        })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d * d != n {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    /// `t^2 + 3t - 1`, with fractional coefficients in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            if k == 0 || !unit {
                if magnitude.is_integer() {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    /// A list of exact coefficient strings, constant term first.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly {
    /// Accepts integers or strings such as `"-3"` and `"5/7"`.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coefficient {
            Int(i64),
            Text(String),
        }
        let raw = Vec::<Coefficient>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coefficient::Int(n) => Ok(rational(n)),
                Coefficient::Text(s) => s.trim().parse::<BigRational>().map_err(|_| {
                    de::Error::custom(format!("`{s}` is not an exact rational number"))
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}
