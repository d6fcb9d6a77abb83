use crate::coeffs::Coeffs;
use crate::delta::{CohomologyBasis, DeltaComplex, DeltaError};

/// Alexander–Whitney cup product of cochains:
/// `(u ⌣ v)(σ) = u(front p-face of σ) · v(back q-face of σ)`.
pub fn cup_product(x: &DeltaComplex, p: usize, u: &[i64], q: usize, v: &[i64], coeffs: Coeffs) -> Vec<i64> {
    let n = p + q;
    debug_assert_eq!(u.len(), x.count(p));
    debug_assert_eq!(v.len(), x.count(q));
    if u.iter().all(|&a| a == 0) || v.iter().all(|&b| b == 0) {
        return vec![0; x.count(n)];
    }
    (0..x.count(n))
        .map(|s| {
            let a = u[x.front_face(n, s, p)];
            if a == 0 {
                return 0;
            }
            let b = v[x.back_face(n, s, q)];
            coeffs.mul(a, b)
        })
        .collect()
}

/// Relative cup product `H^p(Y, A) ⊗ H^q(Y, B) -> H^{p+q}(Y, A ∪ B)`.
/// `u` and `v` are cocycles for the pairs of `ub` and `vb`; the result is
/// expressed in the generators of `target`.
#[allow(clippy::too_many_arguments)]
pub fn relative_cup_product(
    x: &DeltaComplex,
    ub: &CohomologyBasis,
    p: usize,
    u: &[i64],
    vb: &CohomologyBasis,
    q: usize,
    v: &[i64],
    target: &CohomologyBasis,
) -> Result<Vec<i64>, DeltaError> {
    if ub.coeffs() != vb.coeffs() || ub.coeffs() != target.coeffs() {
        return Err(DeltaError::CoeffMismatch);
    }
    ub.check_cocycle(p, u)?;
    vb.check_cocycle(q, v)?;
    if p + q >= x.num_dims() {
        return Ok(Vec::new());
    }
    let w = cup_product(x, p, u, q, v, ub.coeffs());
    target.express(p + q, &w)
}
