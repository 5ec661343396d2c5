//! q-Hahn and dual q-Hahn polynomials, the biorthogonal rational functions
//! `𝒰` and `𝒱`, and their appearance inside overlap coefficients.

mod poly;
mod rational;

pub use poly::{
    dual_qhahn_poly, qhahn_poly, s_prefactor, s_tilde_prefactor, verify_bispectrality_qhahn,
    verify_orthogonality_qhahn, verify_poly_identification,
};
pub use rational::{
    rational_u, rational_v, rational_v_direct, u_prefactor, u_tilde_prefactor, v_difference_rearranged_literal,
    verify_biorthogonality, verify_bispectrality_rational, verify_contiguity, verify_normalization_limit,
    verify_rational_identification,
};

use num::traits::One;

use crate::bases::{BasisLabel, BasisSet};
use crate::error::Result;
use crate::linalg::{dot, QMatrix};
use crate::qcore::{int_pow, ParamContext, QLattice, QScalar};
use crate::report::Report;
use crate::repr::Representation;

pub const SUITE_POLYNOMIALS: &str = "polynomials";
pub const SUITE_RATIONALS: &str = "rationals";

/// `â = q^{μ−β−1}`, `b̂ = q^{−μ−β−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatParams {
    pub q: QScalar,
    pub a_hat: QScalar,
    pub b_hat: QScalar,
}

impl HatParams {
    pub fn new(q: QScalar, a_hat: QScalar, b_hat: QScalar) -> Self {
        HatParams { q, a_hat, b_hat }
    }

    pub fn from_context(ctx: &ParamContext) -> Self {
        HatParams { q: ctx.q.clone(), a_hat: ctx.pw(-1, 0, -1, 1), b_hat: ctx.pw(-1, 0, -1, -1) }
    }

    pub fn qpow(&self, k: i64) -> QScalar {
        int_pow(&self.q, k).expect("q is nonzero")
    }

    pub fn poch(&self, a: &QScalar, k: usize) -> QScalar {
        let mut r = QScalar::one();
        let mut t = a.clone();
        for _ in 0..k {
            r *= QScalar::one() - &t;
            t *= &self.q;
        }
        r
    }
}

/// Values `q^a` and `q^b` of the rational-function parameters, with `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalParams {
    lattice: QLattice,
    pub n: usize,
}

impl RationalParams {
    pub fn new(q: QScalar, qa: QScalar, qb: QScalar, n: usize) -> Result<Self> {
        Ok(RationalParams { lattice: QLattice::new(q, [qa, qb, QScalar::one()])?, n })
    }

    /// `a = α − β`, `b = N − 2β − 1`.
    pub fn from_context(ctx: &ParamContext) -> Result<Self> {
        let n = ctx.big_n();
        Self::new(ctx.q.clone(), ctx.pw(0, 1, -1, 0), ctx.pw(n - 1, 0, -2, 0), ctx.n)
    }

    pub fn q(&self) -> &QScalar {
        &self.lattice.q
    }

    pub fn qa(&self) -> &QScalar {
        &self.lattice.generators[0]
    }

    pub fn qb(&self) -> &QScalar {
        &self.lattice.generators[1]
    }

    pub fn big_n(&self) -> i64 {
        self.n as i64
    }

    /// `q^{c0} (q^a)^{ka} (q^b)^{kb}`.
    pub fn pw(&self, c0: i64, ka: i64, kb: i64) -> QScalar {
        self.lattice.pw(c0, ka, kb, 0)
    }

    pub fn br(&self, c0: i64, ka: i64, kb: i64) -> QScalar {
        self.lattice.br(c0, ka, kb, 0)
    }

    pub fn poch(&self, x: &QScalar, k: i64) -> Result<QScalar> {
        self.lattice.poch_signed(x, k)
    }

    /// `a → a + 1`.
    pub fn shifted_a(&self) -> Self {
        let qa = self.qa() * self.q();
        RationalParams::new(self.q().clone(), qa, self.qb().clone(), self.n).expect("shift keeps generators nonzero")
    }

    /// `a → b − a + 2`, `q → q⁻¹`, with `b` unchanged; values are taken in the
    /// new base.
    pub fn v_transformed(&self) -> Self {
        let p = self.q().recip();
        // (q⁻¹)^{b−a+2} = q^{a−b−2}
        let qa = &p * &p * self.qa() / self.qb();
        RationalParams::new(p, qa, self.qb().recip(), self.n).expect("inversion keeps generators nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverlapKind {
    /// `⟨e_m|f*_n⟩`
    S,
    /// `⟨e*_m|f_n⟩`
    STilde,
    /// `⟨e_m|d*_n⟩`
    U,
    /// `⟨e*_m|Z|d_n⟩`
    UTilde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapMatrix {
    pub kind: OverlapKind,
    /// Indexed `(m, n)`.
    pub entries: QMatrix,
}

pub fn overlap_matrix(rep: &Representation, bases: &BasisSet, kind: OverlapKind) -> OverlapMatrix {
    use BasisLabel::*;
    let d = rep.dim();
    let entries = match kind {
        OverlapKind::S => QMatrix::from_fn(d, |m, n| dot(bases.vec(E, m), bases.vec(FStar, n))),
        OverlapKind::STilde => QMatrix::from_fn(d, |m, n| dot(bases.vec(EStar, m), bases.vec(F, n))),
        OverlapKind::U => QMatrix::from_fn(d, |m, n| dot(bases.vec(E, m), bases.vec(DStar, n))),
        OverlapKind::UTilde => {
            let zd: Vec<_> = (0..d).map(|n| rep.z.mul_vec(bases.vec(D, n))).collect();
            QMatrix::from_fn(d, |m, n| dot(bases.vec(EStar, m), &zd[n]))
        }
    };
    OverlapMatrix { kind, entries }
}

/// Every check of the polynomial suite for one representation.
pub fn verify_polynomials(rep: &Representation, bases: &BasisSet) -> Report {
    let mut r = verify_poly_identification(rep, bases);
    r.extend(verify_orthogonality_qhahn(rep, bases));
    r.extend(verify_polynomials_basis_free(&rep.ctx));
    r
}

/// The part of the polynomial suite that needs no eigenbasis, so it still
/// runs when the basis coefficients are singular.
pub fn verify_polynomials_basis_free(ctx: &ParamContext) -> Report {
    verify_bispectrality_qhahn(ctx)
}

/// Every check of the rational-function suite for one representation.
pub fn verify_rationals(rep: &Representation, bases: &BasisSet) -> Report {
    let mut r = verify_rational_identification(rep, bases);
    r.extend(verify_biorthogonality(rep, bases));
    r.extend(verify_rationals_basis_free(&rep.ctx));
    r
}

pub fn verify_rationals_basis_free(ctx: &ParamContext) -> Report {
    let mut r = verify_bispectrality_rational(ctx);
    r.extend(verify_contiguity(ctx));
    r.extend(verify_normalization_limit(ctx));
    r
}
