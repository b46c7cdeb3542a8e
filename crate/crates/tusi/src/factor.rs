//! Polynomial factorizations behind the maximizer argument for the
//! degree-n hump `phi_n(alpha) = alpha^(n-1) - alpha^n`.
//!
//! With `alpha* = (n-1)/n` and `phi* = phi_n(alpha*)`:
//!
//! ```text
//! phi_n(alpha) - phi*  =  (alpha* - alpha) U_n(alpha)
//!                      = -(alpha - alpha*)^2 V_n(alpha)
//! ```
//!
//! `U_n` vanishes at `alpha*` and `V_n` has all-positive coefficients, which
//! is the whole monotonicity proof. These exist for property testing; the
//! solver never touches them.

use crate::classify::maximizer;

/// Coefficients of `U_n`, descending degree: leading `alpha^(n-1)` term
/// first. Entry `k` (for `k >= 1`) is `-(n-1)^(k-1) / n^k`.
pub fn u_n_coeffs(n: u32) -> Vec<f64> {
    assert!(n >= 2, "u_n_coeffs requires n >= 2");
    let nf = n as f64;
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(1.0);
    let mut c = -1.0 / nf;
    for _ in 1..n {
        coeffs.push(c);
        c *= (nf - 1.0) / nf;
    }
    coeffs
}

/// Coefficients of `V_n`, descending degree: leading `alpha^(n-2)` term
/// first. Entry `k` (for `k >= 1`) is `(n-1)^(k-1) (n-1-k) / n^k`.
pub fn v_n_coeffs(n: u32) -> Vec<f64> {
    assert!(n >= 2, "v_n_coeffs requires n >= 2");
    let nf = n as f64;
    let mut coeffs = Vec::with_capacity(n as usize - 1);
    coeffs.push(1.0);
    let mut base = 1.0 / nf; // (n-1)^(k-1) / n^k
    for k in 1..(n - 1) {
        coeffs.push(base * (nf - 1.0 - k as f64));
        base *= (nf - 1.0) / nf;
    }
    coeffs
}

/// Horner evaluation of a descending-degree coefficient list.
pub fn eval_desc(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Residual of the linear-factor identity at `alpha`:
/// `phi_n(alpha) - phi* - (alpha* - alpha) U_n(alpha)`.
pub fn u_identity_residual(n: u32, alpha: f64) -> f64 {
    let (alpha_star, phi_star) = maximizer(n);
    crate::forms::phi_n(n, alpha) - phi_star
        - (alpha_star - alpha) * eval_desc(&u_n_coeffs(n), alpha)
}

/// Residual of the squared-factor identity at `alpha`:
/// `phi_n(alpha) - phi* + (alpha - alpha*)^2 V_n(alpha)`.
pub fn v_identity_residual(n: u32, alpha: f64) -> f64 {
    let (alpha_star, phi_star) = maximizer(n);
    let d = alpha - alpha_star;
    crate::forms::phi_n(n, alpha) - phi_star + d * d * eval_desc(&v_n_coeffs(n), alpha)
}
