//! Brute-force real-root finder for dense low-degree polynomials.
//!
//! This crate exists purely as independent ground truth for tests of the
//! `tusi` solver library. It knows nothing about canonical forms or
//! discriminants: it samples the polynomial densely on a Cauchy-bounded
//! interval, bisects every sign change, and hunts even-multiplicity roots
//! as near-zero local minima of |f|. Simple on purpose; the only
//! concession to speed is a streaming chunked sampling pass.

/// Number of uniform sample points across `[-M, M]`.
const SAMPLES: usize = 2_000_000;

/// Chunk size for the streaming pass (coefficient-outer evaluation over a
/// chunk keeps the inner loops vectorizable).
const CHUNK: usize = 4096;

/// Distinct real roots found by exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Ascending list of distinct real roots.
    pub roots: Vec<f64>,
    /// Multiplicities aligned with `roots`.
    pub multiplicities: Vec<u32>,
    /// The half-width M of the search interval `[-M, M]`.
    pub search_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Leading coefficient is zero or a coefficient is not finite.
    InvalidCoefficients,
    /// Degree above 12 (keeps runtime bounded).
    UnsupportedDegree(usize),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::InvalidCoefficients => write!(f, "invalid coefficients"),
            OracleError::UnsupportedDegree(d) => write!(f, "unsupported degree {d}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Evaluates the polynomial with coefficients in ascending-degree order
/// (`coeffs[i]` multiplies `x^i`).
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Finds all distinct real roots of the polynomial `sum coeffs[i] x^i`.
///
/// `tol` is the absolute half-width to which each sign-change cell is
/// bisected. Roots closer than `10 * tol` are merged (their multiplicities
/// add up). Even-multiplicity roots are detected as local minima of `|f|`
/// that refine below `1e-9 * (1 + max|coeff|)`.
pub fn oracle_roots(coeffs: &[f64], tol: f64) -> Result<OracleResult, OracleError> {
    if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(OracleError::InvalidCoefficients);
    }
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    if lead == 0.0 {
        return Err(OracleError::InvalidCoefficients);
    }
    if degree > 12 {
        return Err(OracleError::UnsupportedDegree(degree));
    }
    let max_coeff = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    // Cauchy bound: every real root lies in [-M, M].
    let bound = 1.0
        + coeffs[..degree]
            .iter()
            .fold(0.0_f64, |m, c| m.max((c / lead).abs()));
    let step = 2.0 * bound / SAMPLES as f64;
    let x_at = |i: usize| -bound + i as f64 * step;

    let zero_tol = 1e-9 * (1.0 + max_coeff);
    let prefilter = 1e4 * zero_tol;

    let mut found: Vec<(f64, u32)> = Vec::new();
    // Indices already accounted for by a sign change or an exact zero
    // sample; the |f|-minimum detector skips their neighborhoods.
    let mut root_cells: Vec<usize> = Vec::new();
    // Candidate indices for even-multiplicity roots, refined afterwards.
    let mut min_candidates: Vec<usize> = Vec::new();

    let mut xbuf = [0.0_f64; CHUNK];
    let mut vbuf = [0.0_f64; CHUNK];
    // window of the two previous sample values (v1 = value at i-1,
    // v2 = value at i-2), carried across chunk boundaries
    let mut v1 = f64::NAN;
    let mut v2 = f64::NAN;

    let mut i0 = 0usize;
    while i0 <= SAMPLES {
        let len = CHUNK.min(SAMPLES + 1 - i0);
        let base = -bound + i0 as f64 * step;
        for (j, x) in xbuf[..len].iter_mut().enumerate() {
            *x = base + j as f64 * step;
        }
        vbuf[..len].fill(lead);
        for &c in coeffs[..degree].iter().rev() {
            for (v, &x) in vbuf[..len].iter_mut().zip(&xbuf[..len]) {
                *v = *v * x + c;
            }
        }

        for (j, &v) in vbuf[..len].iter().enumerate() {
            let i = i0 + j;
            if i >= 1 {
                // cell (i-1, i)
                if v1 == 0.0 {
                    // parity from the nearest nonzero neighbors: same side
                    // on both sides means an even-multiplicity touch
                    let even = i >= 2 && v2 * v > 0.0;
                    found.push((x_at(i - 1), if even { 2 } else { 1 }));
                    root_cells.push(i - 1);
                } else if v1.signum() != v.signum() && v != 0.0 {
                    root_cells.push(i - 1);
                    let root = bisect_cell(coeffs, x_at(i - 1), x_at(i), v1, tol);
                    found.push((root, 1));
                }
            }
            if i >= 2 {
                // |f| local-minimum candidate at i-1
                let m = v1.abs();
                if m <= prefilter && m <= v2.abs() && m <= v.abs() && v1 != 0.0 {
                    min_candidates.push(i - 1);
                }
            }
            v2 = v1;
            v1 = v;
        }
        i0 += len;
    }
    if v1 == 0.0 {
        found.push((x_at(SAMPLES), 1));
    }

    // Even-multiplicity roots: refine candidates away from known cells.
    for &i in &min_candidates {
        if root_cells
            .iter()
            .any(|&c| (c as i64 - i as i64).abs() <= 1)
        {
            continue;
        }
        let (xmin, fmin) = golden_min_abs(coeffs, x_at(i - 1), x_at(i + 1), tol);
        if fmin <= zero_tol {
            found.push((xmin, 2));
        }
    }

    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // Merge clusters closer than 10*tol; multiplicities add, capped at degree.
    let mut roots = Vec::new();
    let mut mults = Vec::new();
    for (x, m) in found {
        match roots.last() {
            Some(&last) if x - last <= 10.0 * tol => {
                let lm: &mut u32 = mults.last_mut().unwrap();
                *lm = (*lm + m).min(degree as u32);
            }
            _ => {
                roots.push(x);
                mults.push(m.min(degree as u32));
            }
        }
    }

    Ok(OracleResult {
        roots,
        multiplicities: mults,
        search_bound: bound,
    })
}

fn bisect_cell(coeffs: &[f64], mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let mut neg_lo = f_lo < 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_lo {
            lo = mid;
            neg_lo = fm < 0.0;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of |f| on [a, b].
fn golden_min_abs(coeffs: &[f64], mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(coeffs, x1).abs();
    let mut f2 = eval(coeffs, x2).abs();
    while b - a > tol * 0.1 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(coeffs, x1).abs();
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(coeffs, x2).abs();
        }
        if x1 >= x2 {
            break;
        }
    }
    let xm = 0.5 * (a + b);
    (xm, eval(coeffs, xm).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn tusi_half_delta_roots() {
        // x^3 - x^2 + 2/27: roots 1/3 - 1/sqrt(3), 1/3, 1/3 + 1/sqrt(3)
        let r = oracle_roots(&[2.0 / 27.0, 0.0, -1.0, 1.0], TOL).unwrap();
        let third = 1.0 / 3.0;
        let s = 1.0 / 3.0_f64.sqrt();
        let expect = [third - s, third, third + s];
        assert_eq!(r.roots.len(), 3);
        for (got, want) in r.roots.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert_eq!(r.multiplicities, vec![1, 1, 1]);
    }

    #[test]
    fn double_root_detected() {
        // x^3 - 3x + 2 = (x - 1)^2 (x + 2)
        let r = oracle_roots(&[2.0, -3.0, 0.0, 1.0], TOL).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0] + 2.0).abs() < 1e-10);
        assert!((r.roots[1] - 1.0).abs() < 1e-8);
        assert_eq!(r.multiplicities, vec![1, 2]);
    }

    #[test]
    fn quadratic_zero_one() {
        let r = oracle_roots(&[0.0, -1.0, 1.0], TOL).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots[0].abs() < 1e-10);
        assert!((r.roots[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            oracle_roots(&[1.0, 0.0], TOL),
            Err(OracleError::InvalidCoefficients)
        ));
        let coeffs: Vec<f64> = (0..14).map(|i| i as f64 + 1.0).collect();
        assert!(matches!(
            oracle_roots(&coeffs, TOL),
            Err(OracleError::UnsupportedDegree(13))
        ));
    }

    #[test]
    fn deterministic() {
        let a = oracle_roots(&[-1.0, 1.0, -2.0, 1.0], TOL).unwrap();
        let b = oracle_roots(&[-1.0, 1.0, -2.0, 1.0], TOL).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn large_coefficient_scale() {
        // x^3 - 300x - 500: three real roots
        let r = oracle_roots(&[-500.0, -300.0, 0.0, 1.0], TOL).unwrap();
        assert_eq!(r.roots.len(), 3);
        for root in &r.roots {
            assert!(eval(&[-500.0, -300.0, 0.0, 1.0], *root).abs() <= 1e-9 * 501.0);
        }
    }
}
