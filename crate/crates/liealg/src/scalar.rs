//! Laurent polynomials in a formal `ε` with Gaussian coefficients.

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Coefficient field for the real and imaginary parts. Exact rationals in
/// practice; anything with field operations works.
pub trait Field:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
}

impl<R> Field for R where
    R: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = R> + FromPrimitive + Send + Sync + 'static
{
}

/// `Σ_k c_k ε^k` with finitely many nonzero `c_k`; zero coefficients are
/// never stored, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<R: Field> {
    terms: BTreeMap<i32, Complex<R>>,
}

impl<R: Field> Default for Laurent<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Field> Laurent<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    /// `c ε^power`.
    pub fn monomial(c: Complex<R>, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    pub fn constant(c: Complex<R>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn real(r: R) -> Self {
        Self::constant(Complex::new(r, R::zero()))
    }

    /// `re + i·im` from small integers.
    pub fn int(re: i64, im: i64) -> Self {
        Self::constant(Complex::new(R::from_i64(re).unwrap(), R::from_i64(im).unwrap()))
    }

    pub fn i() -> Self {
        Self::int(0, 1)
    }

    pub fn eps(power: i32) -> Self {
        Self::monomial(Complex::one(), power)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Complex<R>)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, power: i32) -> Complex<R> {
        self.terms.get(&power).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// No `ε` at all (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// A single nonzero term, hence invertible in the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (&k, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(c.inv(), -k))
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&p, c)| (p + k, c.clone())).collect(),
        }
    }

    /// Value at `ε = 0`, or `None` when a negative power makes it undefined.
    pub fn at_zero(&self) -> Option<Complex<R>> {
        match self.min_power() {
            Some(k) if k < 0 => None,
            _ => Some(self.coeff(0)),
        }
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, x)| (k, x * c)).collect(),
        }
    }

    fn add_term(&mut self, power: i32, c: Complex<R>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(power).or_insert_with(Complex::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&power);
        }
    }
}

impl<R: Field> AddAssign<&Laurent<R>> for Laurent<R> {
    fn add_assign(&mut self, rhs: &Laurent<R>) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl<R: Field> Add for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: &Laurent<R>) -> Laurent<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Field> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl<R: Field> Sub for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: &Laurent<R>) -> Laurent<R> {
        self + &(-rhs)
    }
}

impl<R: Field> Mul for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: &Laurent<R>) -> Laurent<R> {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Field> $tr for Laurent<R> {
            type Output = Laurent<R>;
            fn $m(self, rhs: Laurent<R>) -> Laurent<R> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Field> Neg for Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        -&self
    }
}

fn fmt_complex<R: Field>(c: &Complex<R>) -> String {
    let one = R::one();
    let im = |x: &R| {
        if *x == one {
            "i".to_string()
        } else if *x == -one.clone() {
            "-i".to_string()
        } else {
            format!("{x}i")
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) => im(&c.im),
        (false, false) => format!("({} + {})", c.re, im(&c.im)),
    }
}

impl<R: Field> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&k, c)| match k {
                0 => fmt_complex(c),
                1 => format!("{} ε", fmt_complex(c)),
                _ => format!("{} ε^{k}", fmt_complex(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;

    #[test]
    fn arithmetic_and_normalization() {
        let a = &L::int(1, 0) + &L::eps(-2);
        let b = &L::int(1, 0) - &L::eps(-2);
        let prod = &a * &b;
        assert_eq!(prod, &L::one() - &L::eps(-4));
        assert!((&a - &a).is_zero());
        assert_eq!(&L::i() * &L::i(), L::int(-1, 0));
        assert_eq!(L::monomial(Complex::zero(), 3), L::zero());
    }

    #[test]
    fn units_and_evaluation() {
        let u = L::i().shift(2);
        assert_eq!(&u * &u.inverse().unwrap(), L::one());
        assert!((&L::one() + &L::eps(1)).inverse().is_none());
        assert_eq!((&L::int(3, 0) + &L::eps(2)).at_zero(), Some(Complex::new(BigRational::from_i64(3).unwrap(), BigRational::zero())));
        assert_eq!(L::eps(-1).at_zero(), None);
    }

    #[test]
    fn display() {
        assert_eq!((-&L::i()).to_string(), "-i");
        assert_eq!((&L::int(0, -1) * &L::eps(2)).to_string(), "-i ε^2");
        assert_eq!(L::zero().to_string(), "0");
    }
}
