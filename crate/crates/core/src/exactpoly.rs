//! Sparse multivariate Laurent polynomials over the integers.
//!
//! A [`LaurentPoly`] lives in a ring `Z[x1^±1, ..., xn^±1]` whose variable
//! count is fixed when the value is created. Terms are kept in a `BTreeMap`
//! keyed by [`ExponentVector`], so iteration and textual output are
//! deterministic. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient variable count mismatch ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("exponent vector of length {got} in a ring with {expected} variables")]
    BadExponentLength { expected: usize, got: usize },
    #[error("variable x{0} is out of range")]
    VariableOutOfRange(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("quotient is not a Laurent polynomial with integer coefficients")]
    NotExactlyDivisible,
    #[error("x{0} occurs with a negative exponent and was assigned 0")]
    DivisionByZeroValue(usize),
    #[error("x{0} occurs with a negative exponent and its value is not a unit monomial")]
    NotInvertible(usize),
    #[error("substitution produced a non-integer coefficient")]
    NonIntegralResult,
}

/// Exponents of one Laurent monomial, one entry per variable.
///
/// The ordering is graded: total degree first, then the monomial with the
/// larger exponent at the lowest differing variable index sorts first among
/// equal degrees. So `1 < x1 < x2 < x1^2 < x1*x2 < x2^2`. It is a monomial
/// order on ordinary polynomials, which exact division relies on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(exponents: Vec<i32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A value that can be substituted for a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Poly(LaurentPoly),
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(BigInt::from(v))
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Int(v)
    }
}

impl From<LaurentPoly> for Value {
    fn from(p: LaurentPoly) -> Self {
        Value::Poly(p)
    }
}

/// Partial map from 1-indexed variables to values.
pub type Assignment = BTreeMap<usize, Value>;

/// Builds an [`Assignment`] from `(variable, integer)` pairs.
pub fn int_assignment<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Assignment {
    pairs.into_iter().map(|(v, c)| (v, Value::from(c))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant<C: Into<BigInt>>(nvars: usize, c: C) -> Self {
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(nvars), c);
        }
        p
    }

    /// The variable `x_j`, 1-indexed.
    ///
    /// # Panics
    /// If `j` is not in `1..=nvars`.
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= nvars, "variable x{j} out of range 1..={nvars}");
        let mut e = vec![0; nvars];
        e[j - 1] = 1;
        Self::monomial(nvars, e, 1)
    }

    /// `c * x^exponents`. Panics if the exponent length differs from `nvars`.
    pub fn monomial<C: Into<BigInt>>(nvars: usize, exponents: Vec<i32>, c: C) -> Self {
        assert_eq!(exponents.len(), nvars);
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExponentVector(exponents), c);
        }
        p
    }

    /// Collects terms, summing repeated exponent vectors and dropping zeros.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::BadExponentLength {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c.into());
        }
        Ok(p)
    }

    /// Builds a value without normalizing. Only for exercising validation.
    #[doc(hidden)]
    pub fn from_raw_unchecked(nvars: usize, terms: Vec<(Vec<i32>, BigInt)>) -> Self {
        LaurentPoly {
            nvars,
            terms: terms
                .into_iter()
                .map(|(e, c)| (ExponentVector(e), c))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.0.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Normalized form: every exponent vector has the ambient length and no
    /// coefficient is zero.
    pub fn is_well_formed(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| e.len() == self.nvars && !c.is_zero())
    }

    /// True when no term has a negative exponent at the 1-indexed variable `j`.
    pub fn is_polynomial_in(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.nvars, "variable x{j} out of range");
        self.terms.keys().all(|e| e.0[j - 1] >= 0)
    }

    /// True when no exponent anywhere is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x >= 0))
    }

    /// Whether the 1-indexed variable `j` occurs in some term.
    pub fn involves(&self, j: usize) -> bool {
        self.terms.keys().any(|e| e.0[j - 1] != 0)
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ambient(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Multiplies by the Laurent monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms; zero vector for zero.
    pub fn min_exponents(&self) -> ExponentVector {
        let mut mins = match self.terms.keys().next() {
            Some(e) => e.0.clone(),
            None => return ExponentVector::zero(self.nvars),
        };
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(&e.0) {
                *m = (*m).min(x);
            }
        }
        ExponentVector(mins)
    }

    /// The unit monomials `±x^e` are exactly the invertible elements.
    pub fn inverse(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        let neg = ExponentVector(e.0.iter().map(|x| -x).collect());
        Some(LaurentPoly::monomial(self.nvars, neg.0, c.clone()))
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// Both operands are shifted by monomials into ordinary polynomials whose
    /// per-variable minimum exponent is zero, then divided by leading terms.
    /// A leading term that does not divide, or an inexact coefficient
    /// quotient, means no Laurent quotient exists.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ambient(d)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let p_min = self.min_exponents();
        let d_min = d.min_exponents();
        let neg = |e: &ExponentVector| ExponentVector(e.0.iter().map(|x| -x).collect());
        let mut rem = self.shift(&neg(&p_min));
        let divisor = d.shift(&neg(&d_min));
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();

        let mut quotient = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let qe = e.sub(&lead_e);
            if qe.0.iter().any(|&x| x < 0) {
                return Err(PolyError::NotExactlyDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(PolyError::NotExactlyDivisible);
            }
            for (de, dc) in &divisor.terms {
                rem.add_term(qe.add(de), -(&qc * dc));
            }
            quotient.add_term(qe, qc);
        }
        Ok(quotient.shift(&p_min.sub(&d_min)))
    }

    /// Replaces assigned variables (1-indexed) by integers or Laurent
    /// polynomials. Unassigned variables are kept and `nvars` is unchanged.
    ///
    /// Negative powers of an integer value are allowed as long as the final
    /// coefficients are integers, so `(1 + x2)/x1` at `x1 = 2, x2 = 3` is `2`.
    pub fn substitute(&self, assignment: &Assignment) -> Result<LaurentPoly, PolyError> {
        for (&v, value) in assignment {
            if v == 0 || v > self.nvars {
                return Err(PolyError::VariableOutOfRange(v));
            }
            if let Value::Poly(p) = value {
                self.check_ambient(p)?;
            }
        }

        let mut acc: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut coeff = BigRational::from_integer(c.clone());
            let mut kept = e.0.clone();
            let mut factor: Option<LaurentPoly> = None;
            for (&v, value) in assignment {
                let k = e.0[v - 1];
                if k == 0 {
                    continue;
                }
                kept[v - 1] = 0;
                match value {
                    Value::Int(x) => {
                        if x.is_zero() {
                            if k < 0 {
                                return Err(PolyError::DivisionByZeroValue(v));
                            }
                            coeff = BigRational::zero();
                        } else {
                            let base = BigRational::from_integer(x.clone());
                            coeff *= num_traits::pow::Pow::pow(&base, k);
                        }
                    }
                    Value::Poly(p) => {
                        let base = if k < 0 {
                            p.inverse().ok_or(PolyError::NotInvertible(v))?
                        } else {
                            p.clone()
                        };
                        let power = base.pow(k.unsigned_abs());
                        factor = Some(match factor {
                            Some(f) => &f * &power,
                            None => power,
                        });
                    }
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let kept = ExponentVector(kept);
            match factor {
                None => add_rational(&mut acc, kept, coeff),
                Some(f) => {
                    for (fe, fc) in &f.terms {
                        add_rational(
                            &mut acc,
                            fe.add(&kept),
                            &coeff * BigRational::from_integer(fc.clone()),
                        );
                    }
                }
            }
        }

        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in acc {
            if !c.is_integer() {
                return Err(PolyError::NonIntegralResult);
            }
            out.add_term(e, c.to_integer());
        }
        Ok(out)
    }

    /// Splits `self` as `numerator * x^denominator` where the numerator is an
    /// ordinary polynomial and `denominator` holds the non-positive minimum
    /// exponents.
    pub fn as_fraction(&self) -> (LaurentPoly, ExponentVector) {
        let den = ExponentVector(self.min_exponents().0.iter().map(|&m| m.min(0)).collect());
        let neg = ExponentVector(den.0.iter().map(|x| -x).collect());
        (self.shift(&neg), den)
    }

    /// Renders with the denominator monomial factored out, e.g.
    /// `(1 + x1 + x2)*x1^-1*x2^-1`. Single-term numerators and ordinary
    /// polynomials are rendered expanded.
    pub fn to_fraction_string(&self) -> String {
        let (num, den) = self.as_fraction();
        if den.0.iter().all(|&x| x == 0) || num.terms.len() <= 1 {
            return self.to_string();
        }
        let mut s = format!("({num})");
        for (i, &x) in den.0.iter().enumerate() {
            if x != 0 {
                s.push_str(&format!("*x{}^{}", i + 1, x));
            }
        }
        s
    }
}

fn add_rational(acc: &mut BTreeMap<ExponentVector, BigRational>, e: ExponentVector, c: BigRational) {
    let entry = acc.entry(e).or_insert_with(BigRational::zero);
    *entry += c;
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector, mut first: bool) -> fmt::Result {
    let positive = e.0.iter().enumerate().filter(|(_, &x)| x > 0);
    let negative = e.0.iter().enumerate().filter(|(_, &x)| x < 0);
    for (i, &x) in positive.chain(negative) {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if x == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, x)?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let constant = e.0.iter().all(|&x| x == 0);
            if constant {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, e, true)?;
            } else {
                write!(f, "{mag}")?;
                write_monomial(f, e, false)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("ambient mismatch in add")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("ambient mismatch in sub")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ambient mismatch in mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
