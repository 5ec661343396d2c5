//! The bidiagonal representation of `X`, `V`, `Z` on the `(N+1)`-dimensional
//! space, its defining relations, the Casimir element and the q-Hahn embedding.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{lincomb, QMatrix};
use crate::ops;
use crate::qcore::{ParamContext, QScalar};
use crate::report::{CheckBuilder, Report};

pub const SUITE_ALGEBRA: &str = "algebra";
pub const SUITE_EMBEDDING: &str = "embedding";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub ctx: ParamContext,
    pub x: QMatrix,
    pub v: QMatrix,
    pub z: QMatrix,
    pub xi: QScalar,
    pub eta: QScalar,
}

pub fn build_representation(ctx: &ParamContext) -> Result<Representation> {
    if let Some(i) = ctx.a_seq.iter().position(Zero::is_zero) {
        return Err(Error::DegenerateContext(format!("a_{i} = 0")));
    }
    let d = ctx.dim();
    let nn = ctx.big_n();
    let mut x = QMatrix::zeros(d);
    let mut v = QMatrix::zeros(d);
    let mut z = QMatrix::zeros(d);
    for (k, n) in (0..d).zip(0i64..) {
        z[(k, k)] = -QScalar::one();
        x[(k, k)] = -ctx.br(-n, 1, 0, 0);
        v[(k, k)] = ctx.br(n, 0, -1, 0) * ctx.br(1 - n, 0, 1, 0);
        if n < nn {
            z[(k + 1, k)] = ctx.a(n);
            x[(k + 1, k)] = ctx.a(n) * ctx.br(-n, 0, 1, 0);
        }
        if n > 0 {
            v[(k - 1, k)] = -ctx.pw(-nn, 1, 0, 0) * ctx.br(n, 0, 0, 0) * ctx.br(nn + 1 - n, 0, 0, 0) / ctx.a(n - 1);
        }
    }
    let xi = ctx.pw(1, 1, 0, 0) * ctx.br(-1, 0, -1, 0) * ctx.br(-nn, 0, 1, 0);
    let eta = &ctx.q * ctx.br(0, 1, 0, 0) + ctx.br(-nn, 1, 0, 0);
    Ok(Representation { ctx: ctx.clone(), x, v, z, xi, eta })
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn q(&self) -> &QScalar {
        &self.ctx.q
    }

    /// `[μ]_q` for the context's `μ`.
    pub fn mu_bracket(&self) -> QScalar {
        self.ctx.br(0, 0, 0, 1)
    }

    /// The pencil `W = X - [μ]_q Z`.
    pub fn w(&self) -> QMatrix {
        lincomb(&[(QScalar::one(), &self.x), (-self.mu_bracket(), &self.z)])
    }
}

/// Transposed actions written out entry by entry, independent of
/// [`QMatrix::transpose`]. Returned as `(Xᵀ, Vᵀ, Zᵀ)`.
pub fn transposed_actions(ctx: &ParamContext) -> (QMatrix, QMatrix, QMatrix) {
    let d = ctx.dim();
    let nn = ctx.big_n();
    let mut x = QMatrix::zeros(d);
    let mut v = QMatrix::zeros(d);
    let mut z = QMatrix::zeros(d);
    for (k, n) in (0..d).zip(0i64..) {
        z[(k, k)] = -QScalar::one();
        x[(k, k)] = -ctx.br(-n, 1, 0, 0);
        v[(k, k)] = ctx.br(n, 0, -1, 0) * ctx.br(1 - n, 0, 1, 0);
        if n > 0 {
            z[(k - 1, k)] = ctx.a(n - 1);
            x[(k - 1, k)] = ctx.a(n - 1) * ctx.br(1 - n, 0, 1, 0);
        }
        if n < nn {
            v[(k + 1, k)] = -ctx.pw(-nn, 1, 0, 0) * ctx.br(n + 1, 0, 0, 0) * ctx.br(nn - n, 0, 0, 0) / ctx.a(n);
        }
    }
    (x, v, z)
}

/// `AB - s BA`.
pub fn q_commutator(a: &QMatrix, b: &QMatrix, s: &QScalar) -> Result<QMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim(), b.dim()));
    }
    Ok(&(a * b) - &(b * a).scale(s))
}

/// Residuals of the three defining relations (zero matrices when they hold),
/// for the supplied central parameters.
pub fn relation_residuals(rep: &Representation, xi: &QScalar, eta: &QScalar) -> [QMatrix; 3] {
    let q = rep.q();
    let one = QScalar::one();
    let id = QMatrix::identity(rep.dim());
    let (x, v, z) = (&rep.x, &rep.v, &rep.z);
    let zx = q_commutator(z, x, q).expect("same dim");
    let xv = q_commutator(x, v, q).expect("same dim");
    let vz = q_commutator(v, z, q).expect("same dim");
    let zz = z * z;
    let r1 = lincomb(&[(one.clone(), &zx), (-&one, &zz), (-&one, z), (&one - q, x)]);
    let vz_zv = &(v * z) + &(z * v);
    let r2 = lincomb(&[(one.clone(), &xv), (-&one, &vz_zv), (-&one, v), (-xi.clone(), &id)]);
    let r3 = lincomb(&[(one.clone(), &vz), (-(&one + q), x), (&one - q, v), (-eta.clone(), &id)]);
    [r1, r2, r3]
}

pub fn verify_defining_relations(rep: &Representation) -> Report {
    let mut report = Report::new();
    let names = ["relation_zx", "relation_xv", "relation_vz"];
    for (name, r) in names.iter().zip(relation_residuals(rep, &rep.xi, &rep.eta)) {
        let mut c = CheckBuilder::new(SUITE_ALGEBRA, name);
        c.eq_matrix("residual", Ok(r), Ok(QMatrix::zeros(rep.dim())));
        report.push(c.finish());
    }
    let mut c = CheckBuilder::new(SUITE_ALGEBRA, "transposed_actions");
    let (xt, vt, zt) = transposed_actions(&rep.ctx);
    c.eq_matrix("X^T", Ok(xt), Ok(rep.x.transpose()));
    c.eq_matrix("V^T", Ok(vt), Ok(rep.v.transpose()));
    c.eq_matrix("Z^T", Ok(zt), Ok(rep.z.transpose()));
    report.push(c.finish());
    let mut c = CheckBuilder::new(SUITE_ALGEBRA, "bidiagonal_sparsity");
    for (name, m, lower, upper) in [("X", &rep.x, 1, 0), ("Z", &rep.z, 1, 0), ("V", &rep.v, 0, 1)] {
        let outside = m.entries_outside(lower, upper);
        c.holds(name, Ok(outside.is_empty()), ops![("nonzero_entries", format!("{outside:?}"))]);
    }
    report.push(c.finish());
    report
}

/// The Casimir element as a matrix.
pub fn casimir_matrix(rep: &Representation) -> QMatrix {
    let q = rep.q();
    let one = QScalar::one();
    let (x, v, z) = (&rep.x, &rep.v, &rep.z);
    let xv = x * v;
    let vz = v * z;
    let xx = x * x;
    let xz = x * z;
    let xvz = &xv * z;
    let vzz = &vz * z;
    let omq = &one - q;
    lincomb(&[
        (q * &rep.eta - &one, x),
        (omq.clone(), v),
        (q * &rep.xi - &rep.eta, z),
        (q.clone(), &xx),
        (-(q * &omq), &xv),
        (-(&one + q), &xz),
        (QScalar::from_integer(2.into()) - q, &vz),
        (-(q * &omq), &xvz),
        (one, &vzz),
    ])
}

/// The Casimir matrix `Q` and its scalar value `c` with `Q = c·I`.
pub fn casimir(rep: &Representation) -> Result<(QMatrix, QScalar)> {
    let qm = casimir_matrix(rep);
    let c = qm.as_scalar().ok_or(Error::NonScalarCasimir)?;
    Ok((qm, c))
}

pub fn verify_casimir(rep: &Representation) -> Report {
    let mut report = Report::new();
    let qm = casimir_matrix(rep);
    let one = QScalar::one();
    let mut c = CheckBuilder::new(SUITE_ALGEBRA, "casimir_centrality");
    for (name, g) in [("X", &rep.x), ("V", &rep.v), ("Z", &rep.z)] {
        c.eq_matrix(name, q_commutator(&qm, g, &one), Ok(QMatrix::zeros(rep.dim())));
    }
    report.push(c.finish());
    let mut c = CheckBuilder::new(SUITE_ALGEBRA, "casimir_scalar");
    let n = rep.dim() - 1;
    c.eq("Q(0,0) vs Q(N,N)", Ok(qm[(0, 0)].clone()), Ok(qm[(n, n)].clone()));
    c.holds(
        "Q = c I",
        Ok(qm.as_scalar().is_some()),
        ops![("Q(0,0)", qm[(0, 0)]), ("off_band", format!("{:?}", qm.entries_outside(0, 0)))],
    );
    report.push(c.finish());
    report
}

/// Images `r_1 … r_6` of the q-Hahn structure constants for pencil scalar `mu`
/// and Casimir value `c`.
pub fn embedding_constants(rep: &Representation, mu: &QScalar, c: &QScalar) -> [QScalar; 6] {
    let q = rep.q();
    let one = QScalar::one();
    let (xi, eta) = (&rep.xi, &rep.eta);
    let omq = &one - q;
    let r1 = &one + mu * &omq;
    let r2 = &one + q;
    let r3 = xi * &omq + eta * QScalar::from_integer(2.into()) + mu * (&r2 + eta * &omq);
    let r4 = QScalar::zero();
    let r5 = &r2 * mu * xi;
    let r6 = &r1 * (eta * (&one + q * q * mu) - q * xi - &r2 * c) / (q * q);
    [r1, r2, r3, r4, r5, r6]
}

/// Residuals of the two q-Hahn algebra relations for `K1 = X + mu Z`, `K2 = V`.
pub fn embedding_residuals(rep: &Representation, mu: &QScalar, c: &QScalar) -> [QMatrix; 2] {
    let q = rep.q();
    let one = QScalar::one();
    let id = QMatrix::identity(rep.dim());
    let k1 = lincomb(&[(one.clone(), &rep.x), (mu.clone(), &rep.z)]);
    let k2 = &rep.v;
    let [r1, r2, r3, r4, r5, r6] = embedding_constants(rep, mu, c);
    let k12 = q_commutator(&k1, k2, q).expect("same dim");
    let anti = &(&k1 * k2) + &(k2 * &k1);
    let qm1 = q - &one;
    let l1 = q_commutator(k2, &k12, q).expect("same dim");
    let rhs1 = lincomb(&[(&r1 * &qm1, &(k2 * k2)), (r2.clone(), &anti), (r3.clone(), k2), (r4, &k1), (r5, &id)]);
    let l2 = q_commutator(&k12, &k1, q).expect("same dim");
    let rhs2 = lincomb(&[(&r1 * &qm1, &anti), (r2, &(&k1 * &k1)), (-(&r1 * &r1), k2), (r3, &k1), (r6, &id)]);
    [&l1 - &rhs1, &l2 - &rhs2]
}

pub fn verify_qhahn_embedding(rep: &Representation, mu_scalar: &QScalar) -> Result<Report> {
    let (_, c) = casimir(rep)?;
    let mut report = Report::new();
    let [e1, e2] = embedding_residuals(rep, mu_scalar, &c);
    let mut b = CheckBuilder::new(SUITE_EMBEDDING, "qhahn_relation_1");
    b.eq_matrix(&format!("mu={mu_scalar}"), Ok(e1), Ok(QMatrix::zeros(rep.dim())));
    report.push(b.finish());
    let mut b = CheckBuilder::new(SUITE_EMBEDDING, "qhahn_relation_2");
    b.eq_matrix(&format!("mu={mu_scalar}"), Ok(e2), Ok(QMatrix::zeros(rep.dim())));
    report.push(b.finish());
    Ok(report)
}

/// Both embedding relations over several pencil scalars, one point each.
pub fn verify_qhahn_embedding_pencils(rep: &Representation, scalars: &[QScalar]) -> Report {
    let mut b1 = CheckBuilder::new(SUITE_EMBEDDING, "qhahn_relation_1");
    let mut b2 = CheckBuilder::new(SUITE_EMBEDDING, "qhahn_relation_2");
    match casimir(rep) {
        Err(e) => {
            b1.error("casimir", &e);
            b2.error("casimir", &e);
        }
        Ok((_, c)) => {
            for mu in scalars {
                let [e1, e2] = embedding_residuals(rep, mu, &c);
                b1.eq_matrix(&format!("mu={mu}"), Ok(e1), Ok(QMatrix::zeros(rep.dim())));
                b2.eq_matrix(&format!("mu={mu}"), Ok(e2), Ok(QMatrix::zeros(rep.dim())));
            }
        }
    }
    let mut report = Report::new();
    report.push(b1.finish());
    report.push(b2.finish());
    report
}
