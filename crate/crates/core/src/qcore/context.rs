use num::traits::{One, Zero};

use super::{QExponent, QLattice, QScalar};
use crate::error::{Error, Result};

/// Parameters of a bidiagonal representation: `q`, the values of `q^α`, `q^β`,
/// `q^μ`, the dimension parameter `N` and the gauge constants `a_0 … a_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamContext {
    pub q: QScalar,
    pub t_alpha: QScalar,
    pub t_beta: QScalar,
    pub t_mu: QScalar,
    pub n: usize,
    pub a_seq: Vec<QScalar>,
    lattice: QLattice,
}

impl ParamContext {
    pub fn new(
        q: QScalar,
        t_alpha: QScalar,
        t_beta: QScalar,
        t_mu: QScalar,
        n: usize,
        a_seq: Vec<QScalar>,
    ) -> Result<Self> {
        if q == -QScalar::one() {
            return Err(Error::InvalidContext("q = -1 makes (q;q)_k vanish".into()));
        }
        if a_seq.len() != n {
            return Err(Error::InvalidContext(format!("a_seq has {} entries, expected N = {n}", a_seq.len())));
        }
        if let Some(i) = a_seq.iter().position(Zero::is_zero) {
            return Err(Error::DegenerateContext(format!("a_{i} = 0")));
        }
        let lattice = QLattice::new(q.clone(), [t_alpha.clone(), t_beta.clone(), t_mu.clone()])?;
        Ok(ParamContext { q, t_alpha, t_beta, t_mu, n, a_seq, lattice })
    }

    /// Context with the default gauge `a_n = 1`.
    pub fn with_unit_gauge(q: QScalar, t_alpha: QScalar, t_beta: QScalar, t_mu: QScalar, n: usize) -> Result<Self> {
        Self::new(q, t_alpha, t_beta, t_mu, n, vec![QScalar::one(); n])
    }

    /// Same parameters, different gauge.
    pub fn regauged(&self, a_seq: Vec<QScalar>) -> Result<Self> {
        Self::new(self.q.clone(), self.t_alpha.clone(), self.t_beta.clone(), self.t_mu.clone(), self.n, a_seq)
    }

    pub fn lattice(&self) -> &QLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn big_n(&self) -> i64 {
        self.n as i64
    }

    /// `a_n`, with `a_n = 0` outside `0 … N-1`.
    pub fn a(&self, n: i64) -> QScalar {
        if n >= 0 && (n as usize) < self.n {
            self.a_seq[n as usize].clone()
        } else {
            QScalar::zero()
        }
    }

    /// `a_i a_{i+1} … a_{j-1}` (empty product when `j <= i`).
    pub fn a_prod(&self, i: usize, j: usize) -> QScalar {
        (i..j).map(|k| &self.a_seq[k]).fold(QScalar::one(), |acc, x| acc * x)
    }

    pub fn eval_q_power(&self, e: &QExponent) -> Result<QScalar> {
        self.lattice.eval(e)
    }

    pub fn q_bracket(&self, e: &QExponent) -> Result<QScalar> {
        self.lattice.bracket(e)
    }

    pub fn q_pochhammer(&self, base: &QScalar, k: usize) -> QScalar {
        self.lattice.poch(base, k)
    }

    pub fn q_pochhammer_multi(&self, bases: &[QScalar], k: usize) -> QScalar {
        self.lattice.poch_multi(bases, k)
    }

    /// `q^{c0} (q^α)^{ca} (q^β)^{cb} (q^μ)^{cm}`.
    pub fn pw(&self, c0: i64, ca: i64, cb: i64, cm: i64) -> QScalar {
        self.lattice.pw(c0, ca, cb, cm)
    }

    /// `[c0 + ca α + cb β + cm μ]_q`.
    pub fn br(&self, c0: i64, ca: i64, cb: i64, cm: i64) -> QScalar {
        self.lattice.br(c0, ca, cb, cm)
    }

    pub fn qpow(&self, k: i64) -> QScalar {
        self.lattice.qpow(k)
    }

    pub fn poch(&self, a: &QScalar, k: usize) -> QScalar {
        self.lattice.poch(a, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn rejects_bad_parameters() {
        let one = rat(1, 1);
        assert!(ParamContext::with_unit_gauge(one.clone(), rat(2, 1), rat(3, 1), rat(5, 1), 2).is_err());
        assert!(ParamContext::with_unit_gauge(rat(0, 1), rat(2, 1), rat(3, 1), rat(5, 1), 2).is_err());
        assert!(ParamContext::with_unit_gauge(rat(2, 1), rat(0, 1), rat(3, 1), rat(5, 1), 2).is_err());
        assert!(ParamContext::new(rat(2, 1), one.clone(), one.clone(), one.clone(), 2, vec![one.clone()]).is_err());
        let zero_gauge = ParamContext::new(rat(2, 1), one.clone(), one.clone(), one.clone(), 2, vec![one, rat(0, 1)]);
        assert!(matches!(zero_gauge, Err(Error::DegenerateContext(_))));
    }

    #[test]
    fn gauge_accessors() {
        let c = ParamContext::new(rat(2, 1), rat(8, 1), rat(4, 1), rat(2, 1), 3, vec![rat(2, 1), rat(3, 1), rat(5, 1)])
            .unwrap();
        assert_eq!(c.a(-1), rat(0, 1));
        assert_eq!(c.a(3), rat(0, 1));
        assert_eq!(c.a(1), rat(3, 1));
        assert_eq!(c.a_prod(0, 3), rat(30, 1));
        assert_eq!(c.a_prod(2, 2), rat(1, 1));
        assert_eq!(c.pw(-1, 1, 0, 0), rat(4, 1));
    }
}
