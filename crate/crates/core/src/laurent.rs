//! Sparse-support Laurent polynomials in one variable `v` over an exact ring.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{Num, One, Zero};

use crate::error::Error;
use crate::scalar::Coefficient;

/// Element of `C[v, v⁻¹]`.
///
/// Stored densely between the lowest and highest nonzero exponent; the zero
/// polynomial has an empty coefficient vector. No zero coefficient is ever
/// stored at either end.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<C> {
    low: i32,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentPolynomial<C> {
    pub fn monomial(c: C, exp: i32) -> Self {
        Self::normalized(exp, vec![c])
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(C::one(), exp)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc.add_term(e, c);
        }
        acc
    }

    fn normalized(low: i32, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPolynomial { low: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead);
        LaurentPolynomial {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn add_term(&mut self, exp: i32, c: C) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            *self = Self::monomial(c, exp);
            return;
        }
        let high = self.high();
        if exp < self.low {
            let pad = (self.low - exp) as usize;
            let mut v = vec![C::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = exp;
        } else if exp > high {
            self.coeffs.resize((exp - self.low + 1) as usize, C::zero());
        }
        let i = (exp - self.low) as usize;
        let cur = std::mem::replace(&mut self.coeffs[i], C::zero());
        self.coeffs[i] = cur + c;
        if self.coeffs[i].is_zero() && (i == 0 || i + 1 == self.coeffs.len()) {
            let coeffs = std::mem::take(&mut self.coeffs);
            *self = Self::normalized(self.low, coeffs);
        }
    }

    fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.high())
    }

    pub fn coeff(&self, exp: i32) -> C {
        if exp < self.low {
            return C::zero();
        }
        self.coeffs
            .get((exp - self.low) as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// All coefficients lie in `N`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_nonnegative)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitution `v ↦ v^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitution v -> 1 is not an automorphism");
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// The bar involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    /// `self` is `±v^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && (self.coeffs[0] == C::one() || self.coeffs[0] == -C::one())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Self::normalized(self.low + other.low, out)
    }

    fn add_ref(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut out = vec![C::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = (other.low - low) as usize + i;
            let cur = std::mem::replace(&mut out[k], C::zero());
            out[k] = if negate { cur - c.clone() } else { cur + c.clone() };
        }
        Self::normalized(low, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<C: Coefficient + Num> LaurentPolynomial<C> {
    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_low = divisor.low;
        let d_high = divisor.high();
        let lead = divisor.coeffs.last().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top degree down; every step cancels the
        // current leading term of the remainder.
        while !rem.is_zero() {
            let r_high = rem.high();
            if r_high - d_high < rem.low - d_low {
                return None;
            }
            let top = rem.coeffs.last().unwrap().clone();
            if !(top.clone() % lead.clone()).is_zero() {
                return None;
            }
            let q = Self::monomial(top / lead.clone(), r_high - d_high);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }
}

impl<C: Coefficient> Zero for LaurentPolynomial<C> {
    fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPolynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> Default for LaurentPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> From<C> for LaurentPolynomial<C> {
    fn from(c: C) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a, C: Coefficient> $trait<&'a LaurentPolynomial<C>> for &'a LaurentPolynomial<C> {
            type Output = LaurentPolynomial<C>;
            fn $method(self, rhs: &'a LaurentPolynomial<C>) -> LaurentPolynomial<C> {
                let f: fn(&LaurentPolynomial<C>, &LaurentPolynomial<C>) -> LaurentPolynomial<C> = $body;
                f(self, rhs)
            }
        }
        impl<C: Coefficient> $trait for LaurentPolynomial<C> {
            type Output = LaurentPolynomial<C>;
            fn $method(self, rhs: LaurentPolynomial<C>) -> LaurentPolynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b, false));
forward_binop!(Sub, sub, |a, b| a.add_ref(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl<C: Coefficient> AddAssign<&LaurentPolynomial<C>> for LaurentPolynomial<C> {
    fn add_assign(&mut self, rhs: &LaurentPolynomial<C>) {
        *self = self.add_ref(rhs, false);
    }
}

impl<C: Coefficient> SubAssign<&LaurentPolynomial<C>> for LaurentPolynomial<C> {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial<C>) {
        *self = self.add_ref(rhs, true);
    }
}

impl<C: Coefficient> Neg for LaurentPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<C: Coefficient> fmt::Display for LaurentPolynomial<C> {
    /// Renders as e.g. `3v^-2 + 1 + v^4`, increasing exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let negative = *c < C::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == C::one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{mag}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({self})")
    }
}

impl<C: Coefficient + FromStr> FromStr for LaurentPolynomial<C> {
    type Err = Error;

    /// Parses the format produced by `Display`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("malformed Laurent polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(bad());
                    }
                    terms.push((negative, std::mem::take(&mut cur)));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((negative, cur));
        let mut acc = Self::zero();
        for (neg, body) in &terms {
            let body = body.as_str();
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match body.find('v') {
                None => (body.parse::<C>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        C::one()
                    } else {
                        body[..pos].parse::<C>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            acc.add_term(exp, if *neg { -coef } else { coef });
        }
        Ok(acc)
    }
}
