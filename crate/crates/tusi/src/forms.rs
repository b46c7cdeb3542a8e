//! Canonical equation representations and the exact affine reductions
//! between them.
//!
//! Every reduction returns the target form together with an [`AffineMap`]
//! `x = scale * y + shift` sending roots of the output form back to roots
//! of the input. Maps compose innermost-first: if a pipeline applies
//! reduction R1 then R2, the combined map is `map1.compose(&map2)`.

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};

/// The affine substitution `x = scale * y + shift` linking a transformed
/// variable `y` back to the original variable `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineMap {
    pub scale: f64,
    pub shift: f64,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { scale: 1.0, shift: 0.0 };

    pub fn new(scale: f64, shift: f64) -> Result<Self> {
        ensure_finite(scale, "scale")?;
        ensure_finite(shift, "shift")?;
        if scale == 0.0 {
            return Err(Error::InvalidInput("affine map scale must be nonzero".into()));
        }
        Ok(AffineMap { scale, shift })
    }

    /// Maps a root of the transformed equation back to the original variable.
    pub fn apply(&self, y: f64) -> f64 {
        self.scale * y + self.shift
    }

    /// The inverse substitution `y = (x - shift) / scale`.
    pub fn inverse(&self) -> AffineMap {
        AffineMap {
            scale: 1.0 / self.scale,
            shift: -self.shift / self.scale,
        }
    }

    /// `self ∘ inner`: applies `inner` first, then `self`.
    ///
    /// If `self` maps variable y back to x and `inner` maps z back to y,
    /// the result maps z back to x.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale: self.scale * inner.scale,
            shift: self.scale * inner.shift + self.shift,
        }
    }
}

/// `a3 x^3 + a2 x^2 + a1 x + a0` with `a3 != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralCubic {
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl GeneralCubic {
    pub fn new(a3: f64, a2: f64, a1: f64, a0: f64) -> Result<Self> {
        for (v, name) in [(a3, "a3"), (a2, "a2"), (a1, "a1"), (a0, "a0")] {
            ensure_finite(v, name)?;
        }
        if a3 == 0.0 {
            return Err(Error::InvalidInput("leading coefficient a3 must be nonzero".into()));
        }
        Ok(GeneralCubic { a3, a2, a1, a0 })
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.a3 * x + self.a2) * x + self.a1) * x + self.a0
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.a3.abs().max(self.a2.abs()).max(self.a1.abs()).max(self.a0.abs())
    }
}

/// The depressed cubic `x^3 + p x + q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedForm {
    pub p: f64,
    pub q: f64,
}

impl ReducedForm {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        ensure_finite(p, "p")?;
        ensure_finite(q, "q")?;
        Ok(ReducedForm { p, q })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (x * x + self.p) * x + self.q
    }
}

/// Sign of the linear term in a normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(&self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }
}

/// `x^3 + sign * x + q` with `sign` in {+1, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalForm {
    pub sign: Sign,
    pub q: f64,
}

impl NormalForm {
    pub fn new(sign: Sign, q: f64) -> Result<Self> {
        ensure_finite(q, "q")?;
        Ok(NormalForm { sign, q })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (x * x + self.sign.value()) * x + self.q
    }
}

/// The canonical cubic `x^3 - x^2 + (4/27) delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TusiForm {
    pub delta: f64,
}

impl TusiForm {
    pub fn new(delta: f64) -> Result<Self> {
        ensure_finite(delta, "delta")?;
        Ok(TusiForm { delta })
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        (alpha - 1.0) * alpha * alpha + self.delta * (4.0 / 27.0)
    }
}

/// `x^3 - b x^2 + c` with `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TusiGeneralForm {
    pub b: f64,
    pub c: f64,
}

impl TusiGeneralForm {
    pub fn new(b: f64, c: f64) -> Result<Self> {
        ensure_finite(b, "b")?;
        ensure_finite(c, "c")?;
        if b <= 0.0 {
            return Err(Error::InvalidInput(format!("b must be positive, got {b}")));
        }
        Ok(TusiGeneralForm { b, c })
    }

    /// Accepts any nonzero `b`, reflecting `x -> -x` when `b < 0`; the
    /// returned map records the reflection.
    pub fn normalized(b: f64, c: f64) -> Result<(Self, AffineMap)> {
        if b < 0.0 {
            Ok((Self::new(-b, -c)?, AffineMap { scale: -1.0, shift: 0.0 }))
        } else {
            Ok((Self::new(b, c)?, AffineMap::IDENTITY))
        }
    }

    /// The delta of the unit Tusi form reached by the scaling `x = b * alpha`.
    pub fn delta(&self) -> f64 {
        27.0 * self.c / (4.0 * self.b.powi(3))
    }

    pub fn eval(&self, x: f64) -> f64 {
        (x - self.b) * x * x + self.c
    }
}

/// Quadratic counterpart: `x^2 - b x + c` with `b > 0`; the unit form
/// `alpha^2 - alpha + delta/4` is the case `b = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticTusiForm {
    pub b: f64,
    pub c: f64,
}

impl QuadraticTusiForm {
    pub fn new(b: f64, c: f64) -> Result<Self> {
        ensure_finite(b, "b")?;
        ensure_finite(c, "c")?;
        if b <= 0.0 {
            return Err(Error::InvalidInput(format!("b must be positive, got {b}")));
        }
        Ok(QuadraticTusiForm { b, c })
    }

    pub fn from_delta(delta: f64) -> Result<Self> {
        ensure_finite(delta, "delta")?;
        Ok(QuadraticTusiForm { b: 1.0, c: delta / 4.0 })
    }

    pub fn delta(&self) -> f64 {
        4.0 * self.c / (self.b * self.b)
    }

    pub fn eval(&self, x: f64) -> f64 {
        (x - self.b) * x + self.c
    }
}

/// Degree-n family: the equation `phi_n(alpha) = delta * phi_n_star`, i.e.
/// `alpha^n - alpha^(n-1) + delta (n-1)^(n-1)/n^n = 0`, `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralizedTusiForm {
    pub n: u32,
    pub delta: f64,
}

impl GeneralizedTusiForm {
    pub fn new(n: u32, delta: f64) -> Result<Self> {
        ensure_finite(delta, "delta")?;
        if n < 2 {
            return Err(Error::InvalidInput(format!("degree n must be >= 2, got {n}")));
        }
        Ok(GeneralizedTusiForm { n, delta })
    }

    /// Residual of `phi_n(alpha) - delta * phi_n_star`; its zeros are the
    /// solutions of the form.
    pub fn eval(&self, alpha: f64) -> f64 {
        let (_, phi_star) = crate::classify::maximizer(self.n);
        phi_n(self.n, alpha) - self.delta * phi_star
    }
}

/// `phi(alpha) = alpha^2 - alpha^3`, the degree-3 hump function.
pub fn phi(alpha: f64) -> f64 {
    alpha * alpha * (1.0 - alpha)
}

/// `phi_n(alpha) = alpha^(n-1) - alpha^n = alpha^(n-1) (1 - alpha)`, `n >= 2`.
pub fn phi_n(n: u32, alpha: f64) -> f64 {
    assert!(n >= 2, "phi_n requires n >= 2");
    alpha.powi(n as i32 - 1) * (1.0 - alpha)
}

/// Depresses a general cubic: divide by `a3`, then shift by `t = -a2/(3 a3)`.
///
/// The returned map has `scale = 1`, `shift = t`: reduced roots `y` satisfy
/// `x = y + t` in the original variable.
pub fn reduce_general(c: &GeneralCubic) -> (ReducedForm, AffineMap) {
    let b = c.a2 / c.a3;
    let cc = c.a1 / c.a3;
    let d = c.a0 / c.a3;
    let t = -b / 3.0;
    let p = cc - b * b / 3.0;
    let q = d - b * cc / 3.0 + 2.0 * b * b * b / 27.0;
    (ReducedForm { p, q }, AffineMap { scale: 1.0, shift: t })
}

/// Scales a reduced form with `p != 0` to `x^3 ± x + q'` via `x = |p|^(1/2) y`.
pub fn normalize(r: &ReducedForm) -> Result<(NormalForm, AffineMap)> {
    if r.p == 0.0 {
        return Err(Error::Precondition(
            "normalize requires p != 0; use the p = 0 cube-root path".into(),
        ));
    }
    let scale = r.p.abs().sqrt();
    let sign = if r.p > 0.0 { Sign::Positive } else { Sign::Negative };
    let q = r.q / r.p.abs().powf(1.5);
    Ok((NormalForm { sign, q }, AffineMap { scale, shift: 0.0 }))
}

/// Rewrites a reduced form with `p < 0` in Tusi form with
/// `delta = 1/2 + 3 sqrt(3) q / (4 sqrt(-p^3))`.
///
/// Map: `x = sqrt(-3p) * alpha - sqrt(-p/3)`.
pub fn reduced_to_tusi(r: &ReducedForm) -> Result<(TusiForm, AffineMap)> {
    if r.p >= 0.0 {
        return Err(Error::Precondition(format!(
            "Tusi reduction requires p < 0, got p = {}",
            r.p
        )));
    }
    let neg_p = -r.p;
    let delta = 0.5 + 3.0 * 3.0_f64.sqrt() * r.q / (4.0 * (neg_p * neg_p * neg_p).sqrt());
    let scale = (3.0 * neg_p).sqrt();
    let shift = -(neg_p / 3.0).sqrt();
    Ok((TusiForm { delta }, AffineMap { scale, shift }))
}

/// Expands a Tusi form back to its reduced form
/// `x^3 - (1/3) x + (4 delta - 2)/27`.
///
/// Map: `alpha = x + 1/3` (reduced roots shift by 1/3 to Tusi roots).
pub fn tusi_to_reduced(t: &TusiForm) -> (ReducedForm, AffineMap) {
    let r = ReducedForm {
        p: -1.0 / 3.0,
        q: (4.0 * t.delta - 2.0) / 27.0,
    };
    (r, AffineMap { scale: 1.0, shift: 1.0 / 3.0 })
}

/// Recognizes a cubic of the shape `x^3 - b x^2 + c` (no linear term after
/// monic normalization) and rescales it onto the unit Tusi form.
///
/// The returned map sends unit-form roots `alpha` to `x = b * alpha`
/// (composed with a reflection when the input had `b < 0`).
pub fn general_to_tusi_general(c: &GeneralCubic) -> Result<(TusiGeneralForm, AffineMap)> {
    let b = -(c.a2 / c.a3);
    let lin = c.a1 / c.a3;
    let cc = c.a0 / c.a3;
    if lin != 0.0 {
        return Err(Error::InvalidInput(
            "cubic has a linear term; use reduce_general instead".into(),
        ));
    }
    if b == 0.0 {
        return Err(Error::InvalidInput(
            "cubic has no quadratic term; not a Tusi-general form".into(),
        ));
    }
    TusiGeneralForm::normalized(b, cc)
}
