//! Special functions for the p-value computations. The incomplete gamma
//! routines follow the Cephes algorithms used by the reference suite.

use std::f64::consts::FRAC_1_SQRT_2;

use statrs::function::gamma::ln_gamma;

const MACHEP: f64 = f64::EPSILON / 2.0;
const MAXLOG: f64 = 709.782712893384;
const BIG: f64 = 4.503599627370496e15;
const BIG_INV: f64 = f64::EPSILON;

pub(crate) fn erfc(x: f64) -> f64 {
    statrs::function::erf::erfc(x)
}

/// Lower regularized incomplete gamma function `P(a, x)`.
pub(crate) fn igam(a: f64, x: f64) -> f64 {
    if x <= 0.0 || a <= 0.0 {
        return 0.0;
    }
    if x > 1.0 && x > a {
        return 1.0 - igamc(a, x);
    }
    let ax = a * x.ln() - x - ln_gamma(a);
    if ax < -MAXLOG {
        return 0.0;
    }
    let mut r = a;
    let mut c = 1.0;
    let mut sum = 1.0;
    loop {
        r += 1.0;
        c *= x / r;
        sum += c;
        if c / sum <= MACHEP {
            break;
        }
    }
    sum * ax.exp() / a
}

/// Upper regularized incomplete gamma function `Q(a, x)`.
pub(crate) fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 || a <= 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    if x < 1.0 || x < a {
        return 1.0 - igam(a, x);
    }
    let ax = a * x.ln() - x - ln_gamma(a);
    if ax < -MAXLOG {
        return 0.0;
    }
    let mut y = 1.0 - a;
    let mut z = x + y + 1.0;
    let mut c = 0.0;
    let (mut pkm2, mut qkm2) = (1.0, x);
    let (mut pkm1, mut qkm1) = (x + 1.0, z * x);
    let mut ans = pkm1 / qkm1;
    loop {
        c += 1.0;
        y += 1.0;
        z += 2.0;
        let yc = y * c;
        let pk = pkm1 * z - pkm2 * yc;
        let qk = qkm1 * z - qkm2 * yc;
        let t = if qk != 0.0 {
            let r = pk / qk;
            let t = ((ans - r) / r).abs();
            ans = r;
            t
        } else {
            1.0
        };
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;
        if pk.abs() > BIG {
            pkm2 *= BIG_INV;
            pkm1 *= BIG_INV;
            qkm2 *= BIG_INV;
            qkm1 *= BIG_INV;
        }
        if t <= MACHEP {
            break;
        }
    }
    ans * ax.exp()
}

/// Standard normal CDF.
pub(crate) fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

pub(crate) fn clamp_p(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}
