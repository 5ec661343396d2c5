use crate::qcore::{rat, ParamContext};

/// q = 2, q^α = 8, q^β = 4, q^μ = 2, N = 2, unit gauge.
pub fn sample() -> ParamContext {
    ParamContext::with_unit_gauge(rat(2, 1), rat(8, 1), rat(4, 1), rat(2, 1), 2).unwrap()
}

pub fn generic() -> ParamContext {
    ParamContext::new(rat(3, 2), rat(5, 7), rat(5, 11), rat(4, 5), 4, vec![rat(1, 1), rat(2, 1), rat(1, 3), rat(-1, 1)])
        .unwrap()
}

pub fn generic_small() -> ParamContext {
    ParamContext::new(rat(-2, 3), rat(7, 3), rat(2, 5), rat(9, 7), 3, vec![rat(2, 7), rat(5, 1), rat(-3, 1)]).unwrap()
}

pub fn generic_large() -> ParamContext {
    ParamContext::with_unit_gauge(rat(2, 1), rat(3, 5), rat(7, 2), rat(5, 13), 5).unwrap()
}
