use std::ops::{Add, Mul, Neg, Sub};

use num::rational::Ratio;
use num::traits::{One, Pow, Zero};
use num::BigInt;

use super::QScalar;
use crate::error::{Error, Result};

/// Exponent `c0 + c[0] s0 + c[1] s1 + c[2] s2` on a lattice with three symbolic
/// generators. For a [`ParamContext`](super::ParamContext) the slots are
/// (α, β, μ); for rational-function parameters they are (a, b, unused).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QExponent {
    pub c0: Ratio<i64>,
    pub coeffs: [i64; 3],
}

impl QExponent {
    pub fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        QExponent { c0: Ratio::from_integer(c0), coeffs: [c1, c2, c3] }
    }

    pub fn constant(c0: i64) -> Self {
        Self::new(c0, 0, 0, 0)
    }

    /// Exponent with a fractional constant `num/den`.
    pub fn with_fraction(num: i64, den: i64, c1: i64, c2: i64, c3: i64) -> Self {
        QExponent { c0: Ratio::new(num, den), coeffs: [c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.coeffs == [0; 3]
    }

    pub fn integral_constant(&self) -> Result<i64> {
        if self.c0.is_integer() {
            Ok(self.c0.to_integer())
        } else {
            Err(Error::NonIntegralExponent(self.c0.to_string()))
        }
    }
}

impl Add for QExponent {
    type Output = QExponent;
    fn add(self, o: QExponent) -> QExponent {
        QExponent {
            c0: self.c0 + o.c0,
            coeffs: [self.coeffs[0] + o.coeffs[0], self.coeffs[1] + o.coeffs[1], self.coeffs[2] + o.coeffs[2]],
        }
    }
}

impl Neg for QExponent {
    type Output = QExponent;
    fn neg(self) -> QExponent {
        QExponent { c0: -self.c0, coeffs: [-self.coeffs[0], -self.coeffs[1], -self.coeffs[2]] }
    }
}

impl Sub for QExponent {
    type Output = QExponent;
    fn sub(self, o: QExponent) -> QExponent {
        self + (-o)
    }
}

impl Mul<i64> for QExponent {
    type Output = QExponent;
    fn mul(self, k: i64) -> QExponent {
        QExponent { c0: self.c0 * k, coeffs: [self.coeffs[0] * k, self.coeffs[1] * k, self.coeffs[2] * k] }
    }
}

/// Integer power of a rational; a negative power of zero is a division by zero.
pub fn int_pow(x: &QScalar, k: i64) -> Result<QScalar> {
    if k == 0 {
        return Ok(QScalar::one());
    }
    if x.is_zero() {
        return if k > 0 { Ok(QScalar::zero()) } else { Err(Error::DivisionByZero("negative power of zero".into())) };
    }
    Ok(Pow::pow(x, k))
}

/// A base `q` together with the values of the three symbolic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLattice {
    pub q: QScalar,
    pub generators: [QScalar; 3],
}

impl QLattice {
    pub fn new(q: QScalar, generators: [QScalar; 3]) -> Result<Self> {
        if q.is_zero() || q.is_one() {
            return Err(Error::InvalidContext(format!("q = {q} is not admissible")));
        }
        if generators.iter().any(Zero::is_zero) {
            return Err(Error::InvalidContext("lattice generator is zero".into()));
        }
        Ok(QLattice { q, generators })
    }

    /// `q^k` for an integer k.
    pub fn qpow(&self, k: i64) -> QScalar {
        int_pow(&self.q, k).expect("q is nonzero")
    }

    pub fn eval(&self, e: &QExponent) -> Result<QScalar> {
        let c0 = e.integral_constant()?;
        let mut v = self.qpow(c0);
        for (g, &c) in self.generators.iter().zip(e.coeffs.iter()) {
            if c != 0 {
                v *= int_pow(g, c)?;
            }
        }
        Ok(v)
    }

    /// Shorthand for `eval` on an integral exponent; generators are nonzero so
    /// this cannot fail.
    pub fn pw(&self, c0: i64, c1: i64, c2: i64, c3: i64) -> QScalar {
        self.eval(&QExponent::new(c0, c1, c2, c3)).expect("integral exponent")
    }

    pub fn bracket(&self, e: &QExponent) -> Result<QScalar> {
        Ok((QScalar::one() - self.eval(e)?) / (QScalar::one() - &self.q))
    }

    /// `[c0 + c1 s0 + c2 s1 + c3 s2]_q`.
    pub fn br(&self, c0: i64, c1: i64, c2: i64, c3: i64) -> QScalar {
        (QScalar::one() - self.pw(c0, c1, c2, c3)) / (QScalar::one() - &self.q)
    }

    /// `(a;q)_k` for `k >= 0`.
    pub fn poch(&self, a: &QScalar, k: usize) -> QScalar {
        let mut r = QScalar::one();
        let mut t = a.clone();
        for _ in 0..k {
            r *= QScalar::one() - &t;
            t *= &self.q;
        }
        r
    }

    /// `(a;q)_k` for any integer k, with `(a;q)_{-k} = 1/(a q^{-k};q)_k`.
    pub fn poch_signed(&self, a: &QScalar, k: i64) -> Result<QScalar> {
        if k >= 0 {
            return Ok(self.poch(a, k as usize));
        }
        let d = self.poch(&(a * self.qpow(k)), (-k) as usize);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!("({a};q)_{k}")));
        }
        Ok(d.recip())
    }

    pub fn poch_multi(&self, bases: &[QScalar], k: usize) -> QScalar {
        bases.iter().map(|a| self.poch(a, k)).fold(QScalar::one(), |acc, x| acc * x)
    }

    /// Same lattice with `q` replaced by `1/q`; generator values are unchanged.
    pub fn inverted(&self) -> QLattice {
        QLattice { q: self.q.recip(), generators: self.generators.clone() }
    }
}

/// Parse-free constructor used across the crate and its tests.
pub fn rat(n: i64, d: i64) -> QScalar {
    QScalar::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat() -> QLattice {
        QLattice::new(rat(2, 1), [rat(8, 1), rat(4, 1), rat(2, 1)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let l = lat();
        assert_eq!(l.eval(&QExponent::new(-1, 1, 0, 0)).unwrap(), rat(4, 1));
        assert_eq!(l.eval(&QExponent::new(1, 0, 2, 0)).unwrap(), rat(32, 1));
        assert_eq!(l.eval(&QExponent::zero()).unwrap(), rat(1, 1));
    }

    #[test]
    fn half_integer_constant_is_rejected() {
        let e = QExponent::with_fraction(3, 2, 0, 0, 0);
        assert!(matches!(lat().eval(&e), Err(Error::NonIntegralExponent(_))));
        // n(n+1)/2 with n = 3 is integral
        assert_eq!(lat().eval(&QExponent::with_fraction(12, 2, 0, 0, 0)).unwrap(), rat(64, 1));
    }

    #[test]
    fn bracket_examples() {
        let l = lat();
        assert_eq!(l.br(3, 0, 0, 0), rat(7, 1));
        assert_eq!(l.br(0, 0, 0, 0), rat(0, 1));
        assert_eq!(l.br(-2, 0, 0, 0), rat(-3, 4));
    }

    #[test]
    fn pochhammer_examples() {
        let l = lat();
        assert_eq!(l.poch(&rat(1, 4), 2), rat(3, 8));
        assert_eq!(l.poch(&rat(5, 7), 0), rat(1, 1));
        assert_eq!(l.poch(&rat(1, 1), 3), rat(0, 1));
        assert_eq!(l.poch_multi(&[], 4), rat(1, 1));
        assert_eq!(l.poch_multi(&[rat(1, 4), rat(1, 2)], 1), rat(3, 8));
        assert_eq!(l.poch_multi(&[rat(3, 1), rat(1, 1)], 2), rat(0, 1));
    }

    #[test]
    fn negative_index_pochhammer() {
        let l = lat();
        // (a;q)_{-1} = 1/(1 - a/q)
        assert_eq!(l.poch_signed(&rat(1, 1), -1).unwrap(), rat(2, 1));
        assert!(l.poch_signed(&rat(2, 1), -1).is_err());
    }

    fn small_rat() -> impl Strategy<Value = QScalar> {
        (-9i64..=9, 1i64..=9).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
    }

    fn lattice() -> impl Strategy<Value = QLattice> {
        (small_rat(), small_rat(), small_rat(), small_rat())
            .prop_filter_map("q != 1", |(q, a, b, c)| QLattice::new(q, [a, b, c]).ok())
    }

    fn exponent() -> impl Strategy<Value = QExponent> {
        (-6i64..=6, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c, d)| QExponent::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn eval_is_a_homomorphism(l in lattice(), e1 in exponent(), e2 in exponent()) {
            let lhs = l.eval(&(e1.clone() + e2.clone())).unwrap();
            prop_assert_eq!(lhs, l.eval(&e1).unwrap() * l.eval(&e2).unwrap());
        }

        #[test]
        fn bracket_addition_law(l in lattice(), e1 in exponent(), e2 in exponent()) {
            let lhs = l.bracket(&(e1.clone() + e2.clone())).unwrap();
            let rhs = l.bracket(&e1).unwrap() + l.eval(&e1).unwrap() * l.bracket(&e2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pochhammer_splits(l in lattice(), a in small_rat(), k in 0usize..6, j in 0usize..6) {
            let lhs = l.poch(&a, j + k);
            let rhs = l.poch(&a, j) * l.poch(&(a.clone() * l.qpow(j as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn signed_pochhammer_splits(l in lattice(), a in small_rat(), k in -5i64..6, j in -5i64..6) {
            // (a;q)_{j+k} = (a;q)_j (a q^j;q)_k whenever every factor is defined
            let lhs = l.poch_signed(&a, j + k);
            let r1 = l.poch_signed(&a, j);
            let r2 = l.poch_signed(&(a.clone() * l.qpow(j)), k);
            if let (Ok(lhs), Ok(r1), Ok(r2)) = (lhs, r1, r2) {
                prop_assert_eq!(lhs, r1 * r2);
            }
        }
    }
}
