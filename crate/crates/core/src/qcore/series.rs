use num::traits::{One, Zero};

use super::{int_pow, QScalar};
use crate::error::{Error, Result};

/// Which numerator parameter equals `q^{-n}`, and the value of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terminator {
    pub index: usize,
    pub n: usize,
}

/// Terminating `r+1 φ r`-type sum
/// `Σ_k Π(num_i;q)_k / (Π(den_j;q)_k (q;q)_k) z^k`, `k = 0 … n`.
///
/// The loop stops as soon as a numerator factor vanishes, so a denominator
/// zero past that point is harmless; one before it is an error.
pub fn hyper_terminating(
    q: &QScalar,
    num: &[QScalar],
    den: &[QScalar],
    z: &QScalar,
    term: Terminator,
) -> Result<QScalar> {
    let expected = int_pow(q, -(term.n as i64))?;
    if num.get(term.index) != Some(&expected) {
        return Err(Error::NotTerminating { index: term.index, n: term.n });
    }
    let one = QScalar::one();
    let mut sum = one.clone();
    let mut t = one.clone();
    let mut qk = one.clone();
    for k in 0..term.n {
        let mut nu = one.clone();
        for a in num {
            nu *= &one - a * &qk;
        }
        if nu.is_zero() {
            break;
        }
        let mut de = &one - &qk * q;
        for d in den {
            de *= &one - d * &qk;
        }
        if de.is_zero() {
            return Err(Error::DenominatorPoleBeforeTermination { k: k + 1, n: term.n });
        }
        t = t * nu / de * z;
        sum += &t;
        qk *= q;
    }
    Ok(sum)
}

pub fn phi32_terminating(
    q: &QScalar,
    num: &[QScalar; 3],
    den: &[QScalar; 2],
    z: &QScalar,
    term: Terminator,
) -> Result<QScalar> {
    hyper_terminating(q, num, den, z, term)
}

/// `₂φ₁(q^{-n}, b; c; q, q)` summed as a padded `₃φ₂`.
pub fn phi21_terminating(q: &QScalar, n: usize, b: &QScalar, c: &QScalar) -> Result<QScalar> {
    let z = QScalar::zero();
    let qn = int_pow(q, -(n as i64))?;
    phi32_terminating(q, &[qn, b.clone(), z.clone()], &[c.clone(), z], q, Terminator { index: 0, n })
}

/// Closed form of the q-Chu–Vandermonde sum
/// `₂φ₁(q^{-n}, b; c; q, q) = (c/b;q)_n b^n / (c;q)_n`.
pub fn q_chu_vandermonde(q: &QScalar, n: usize, b: &QScalar, c: &QScalar) -> Result<QScalar> {
    if b.is_zero() {
        return Err(Error::DivisionByZero("c/b with b = 0".into()));
    }
    let poch = |a: &QScalar| {
        let mut r = QScalar::one();
        let mut t = a.clone();
        for _ in 0..n {
            r *= QScalar::one() - &t;
            t *= q;
        }
        r
    };
    let den = poch(c);
    if den.is_zero() {
        return Err(Error::DivisionByZero("(c;q)_n".into()));
    }
    Ok(poch(&(c / b)) * int_pow(b, n as i64)? / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use proptest::prelude::*;

    #[test]
    fn two_term_example() {
        // 1 + (1 - 1/2)(1)(1) / ((3/4)(3/4)(1 - 2)) = 1 - 8/9
        let q = rat(2, 1);
        let num = [rat(1, 2), rat(0, 1), rat(0, 1)];
        let den = [rat(1, 4), rat(1, 4)];
        let v = phi32_terminating(&q, &num, &den, &rat(1, 1), Terminator { index: 0, n: 1 }).unwrap();
        assert_eq!(v, rat(1, 9));
    }

    #[test]
    fn unit_terminator_gives_one() {
        let q = rat(3, 2);
        let num = [rat(1, 1), rat(7, 3), rat(-2, 5)];
        let den = [rat(4, 7), rat(9, 2)];
        let v = phi32_terminating(&q, &num, &den, &rat(5, 1), Terminator { index: 0, n: 0 }).unwrap();
        assert_eq!(v, rat(1, 1));
    }

    #[test]
    fn wrong_terminator_is_rejected() {
        let q = rat(2, 1);
        let num = [rat(1, 4), rat(1, 3), rat(1, 5)];
        let den = [rat(3, 1), rat(5, 1)];
        let r = phi32_terminating(&q, &num, &den, &q, Terminator { index: 0, n: 1 });
        assert_eq!(r, Err(Error::NotTerminating { index: 0, n: 1 }));
    }

    #[test]
    fn pole_before_termination() {
        let q = rat(2, 1);
        // (q^{-2};q)_k runs to k = 2 but (1/2;q)_2 vanishes at its second factor
        let num = [rat(1, 4), rat(1, 3), rat(1, 5)];
        let den = [rat(1, 2), rat(5, 1)];
        let r = phi32_terminating(&q, &num, &den, &q, Terminator { index: 0, n: 2 });
        assert_eq!(r, Err(Error::DenominatorPoleBeforeTermination { k: 2, n: 2 }));
    }

    #[test]
    fn early_stop_past_a_vanishing_numerator() {
        // second numerator is q^{-1}: the sum stops after k = 1 even though the
        // denominator (q^{-2};q)_k would vanish at k = 3
        let q = rat(2, 1);
        let num = [rat(1, 8), rat(1, 2), rat(3, 1)];
        let den = [rat(1, 4), rat(7, 1)];
        let v = phi32_terminating(&q, &num, &den, &q, Terminator { index: 0, n: 3 }).unwrap();
        let t1 = (rat(1, 1) - rat(1, 8)) * (rat(1, 1) - rat(1, 2)) * (rat(1, 1) - rat(3, 1)) * rat(2, 1)
            / ((rat(1, 1) - rat(2, 1)) * (rat(1, 1) - rat(1, 4)) * (rat(1, 1) - rat(7, 1)));
        assert_eq!(v, rat(1, 1) + t1);
    }

    fn small_rat() -> impl Strategy<Value = QScalar> {
        (-9i64..=9, 1i64..=9).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| rat(n, d)))
    }

    proptest! {
        #[test]
        fn chu_vandermonde(qn in prop::sample::select(vec![(2i64, 1i64), (3, 2), (-2, 3), (1, 3), (-3, 1)]),
                           n in 0usize..5, b in small_rat(), c in small_rat()) {
            let q = rat(qn.0, qn.1);
            if let (Ok(l), Ok(r)) = (phi21_terminating(&q, n, &b, &c), q_chu_vandermonde(&q, n, &b, &c)) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn any_unit_numerator_gives_one(idx in 0usize..3, a in small_rat(), b in small_rat(),
                                        d in small_rat(), e in small_rat(), n in 0usize..5) {
            let q = rat(3, 2);
            let mut num = [rat(1, 1) / num::traits::Pow::pow(&q, n as i64), a, b];
            num[idx] = rat(1, 1);
            let term = if idx == 0 { Terminator { index: 0, n: 0 } } else { Terminator { index: 0, n } };
            if let Ok(v) = phi32_terminating(&q, &num, &[d, e], &q, term) {
                prop_assert_eq!(v, rat(1, 1));
            }
        }
    }
}
