//! Special functions: Gamma at half-integers, Bessel `J_nu` and modified
//! Bessel `I_nu` of real nonnegative order, positive zeros `j_{nu,n}` and
//! the volume of the unit ball.
//!
//! `J_nu` uses its ascending series (summed in double-double so that the
//! alternating terms cancel cleanly) below a crossover and the Hankel
//! asymptotic expansion above it. For half-integer orders the Hankel
//! expansion terminates and is exact, which is why their crossover is lower.
//! `I_nu` is summed from its ascending series everywhere; all terms are
//! positive so plain f64 suffices.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::dd::Dd;
use crate::error::{domain, Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Bessel order `nu >= 0`. Half-integer orders remember `2 nu` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    nu: f64,
    twice: Option<u32>,
}

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return domain(format!("Bessel order must be finite and >= 0, got {nu}"));
        }
        let t = 2.0 * nu;
        let twice = (t.fract() == 0.0 && t <= u32::MAX as f64).then_some(t as u32);
        Ok(Order { nu, twice })
    }

    /// The order `k / 2`.
    pub fn half(k: u32) -> Self {
        Order {
            nu: k as f64 / 2.0,
            twice: Some(k),
        }
    }

    pub fn value(self) -> f64 {
        self.nu
    }

    /// `Some(2 nu)` when the order is an integer multiple of 1/2.
    pub fn twice(self) -> Option<u32> {
        self.twice
    }

    pub fn is_half_odd(self) -> bool {
        matches!(self.twice, Some(k) if k % 2 == 1)
    }

    pub(crate) fn plus_one(self) -> Order {
        Order {
            nu: self.nu + 1.0,
            twice: self.twice.map(|k| k + 2),
        }
    }
}

/// Index of the `n`-th positive zero of `J_nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroIndex {
    pub nu: Order,
    pub n: u32,
}

impl ZeroIndex {
    pub fn new(nu: Order, n: u32) -> Result<Self> {
        if n == 0 {
            return domain("zero index n must be >= 1");
        }
        Ok(ZeroIndex { nu, n })
    }
}

/// `Gamma(x)` for positive half-integer `x`, by recursion from
/// `Gamma(1) = 1` and `Gamma(1/2) = sqrt(pi)`.
pub fn gamma(x: f64) -> Result<f64> {
    let t = 2.0 * x;
    if !(x > 0.0) || !t.is_finite() || t.fract() != 0.0 {
        return domain(format!(
            "gamma is defined here for positive half-integers, got {x}"
        ));
    }
    Ok(gamma_half(t as u64))
}

/// `Gamma(k / 2)` for `k >= 1`.
fn gamma_half(k: u64) -> f64 {
    let (mut acc, mut a) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (SQRT_PI, 0.5)
    };
    let target = k as f64 / 2.0;
    while a < target {
        acc *= a;
        a += 1.0;
    }
    acc
}

/// `ln Gamma(x)` for `x > 0`, Lanczos approximation (g = 7, n = 9).
fn ln_gamma_lanczos(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection.
        return (PI / (PI * x).sin()).ln() - ln_gamma_lanczos(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `Gamma(nu + 1)` for any order; exact recursion for half-integers.
fn gamma_order_plus_one(nu: Order) -> f64 {
    match nu.twice {
        Some(k) => gamma_half(k as u64 + 2),
        None => ln_gamma_lanczos(nu.nu + 1.0).exp(),
    }
}

fn ln_gamma_order_plus_one(nu: Order) -> f64 {
    match nu.twice {
        Some(k) if k < 300 => gamma_half(k as u64 + 2).ln(),
        _ => ln_gamma_lanczos(nu.nu + 1.0),
    }
}

/// Volume of the unit ball in `R^m`, `2 pi^{m/2} / (m Gamma(m/2))`.
pub fn unit_ball_volume(m: u32) -> Result<f64> {
    if m < 1 {
        return domain("dimension must be >= 1");
    }
    let mf = m as f64;
    Ok(2.0 * PI.powf(mf / 2.0) / (mf * gamma_half(m as u64)))
}

/// Crossover between the ascending series and the Hankel expansion of `J_nu`.
pub(crate) fn j_crossover(nu: Order) -> f64 {
    if nu.is_half_odd() {
        20.0
    } else {
        20f64.max(2.0 * nu.nu * nu.nu)
    }
}

/// `0F1(; nu + 1; -z^2/4) = Gamma(nu+1) (z/2)^{-nu} J_nu(z)` from the
/// ascending series, accumulated in double-double.
pub(crate) fn j_series_normalized(nu: Order, z: f64) -> f64 {
    let half = 0.5 * z;
    let q = Dd::square_f64(half).neg();
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    let mut max_term = 1.0_f64;
    let qa = half * half;
    for k in 0..2000u32 {
        let kf = k as f64;
        let denom = (kf + 1.0) * (nu.nu + kf + 1.0);
        term = term.mul(q).div_f64(denom);
        sum = sum.add(term);
        let t = term.abs_f64();
        max_term = max_term.max(t);
        // Terms decrease once k + 1 exceeds q; from there the tail is bounded
        // by a geometric series dominated by the current term.
        if kf + 1.0 > qa && (t <= 1e-17 * sum.abs_f64() || t <= 1e-34 * max_term) {
            break;
        }
    }
    sum.to_f64()
}

/// `J_nu(z)` from the ascending series.
pub(crate) fn bessel_j_series(nu: Order, z: f64) -> f64 {
    if z == 0.0 {
        return if nu.nu == 0.0 { 1.0 } else { 0.0 };
    }
    let pref = if nu.nu == 0.0 {
        1.0
    } else {
        (0.5 * z).powf(nu.nu) / gamma_order_plus_one(nu)
    };
    pref * j_series_normalized(nu, z)
}

/// `J_nu(z)` from the Hankel expansion; exact for half-odd orders.
pub(crate) fn bessel_j_asymptotic(nu: Order, z: f64) -> f64 {
    let mu4 = 4.0 * nu.nu * nu.nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu4 - odd * odd) / (8.0 * kf * z);
        let mag = term.abs();
        if mag == 0.0 || mag > prev {
            break;
        }
        // a_k / z^k enters P for even k and Q for odd k with alternating signs.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if mag < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
        prev = mag;
    }
    let chi = phase_shift(nu, z);
    (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `z - nu pi/2 - pi/4`, with the multiple of `pi/2` reduced exactly for
/// half-integer orders.
fn phase_shift(nu: Order, z: f64) -> f64 {
    match nu.twice {
        // nu pi/2 + pi/4 = (2 nu + 1) pi/4
        Some(k) => {
            let quarter_turns = (k as u64 + 1) % 8;
            z - quarter_turns as f64 * FRAC_PI_4
        }
        None => z - nu.nu * FRAC_PI_2 - FRAC_PI_4,
    }
}

/// Bessel function of the first kind `J_nu(z)`, `z >= 0`.
pub fn bessel_j(nu: Order, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("bessel_j requires finite z >= 0, got {z}"));
    }
    Ok(bessel_j_unchecked(nu, z))
}

pub(crate) fn bessel_j_unchecked(nu: Order, z: f64) -> f64 {
    if z < j_crossover(nu) {
        bessel_j_series(nu, z)
    } else {
        bessel_j_asymptotic(nu, z)
    }
}

/// `Gamma(nu+1) (z/2)^{-nu} J_nu(z)`, continuous through `z = 0` where it is 1.
pub(crate) fn j_normalized(nu: Order, z: f64) -> f64 {
    if z < j_crossover(nu) {
        j_series_normalized(nu, z)
    } else {
        let scale = if nu.nu == 0.0 {
            1.0
        } else {
            gamma_order_plus_one(nu) / (0.5 * z).powf(nu.nu)
        };
        scale * bessel_j_asymptotic(nu, z)
    }
}

/// Ascending series of `0F1(; nu+1; z^2/4)` with overflow-guarded scaling.
/// Returns `(mantissa, ln_scale)` so the value is `mantissa * exp(ln_scale)`.
fn i_series_scaled(nu: Order, z: f64) -> (f64, f64) {
    const RESCALE: f64 = 1e250;
    let q = 0.25 * z * z;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut ln_scale = 0.0;
    for k in 0..100_000u32 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (nu.nu + kf + 1.0));
        sum += term;
        if sum > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            ln_scale += RESCALE.ln();
        }
        if kf + 1.0 > q && term <= 1e-17 * sum {
            break;
        }
    }
    (sum, ln_scale)
}

/// `Gamma(nu+1) (z/2)^{-nu} I_nu(z)`; equals 1 at `z = 0` and grows like `e^z`.
pub(crate) fn i_normalized(nu: Order, z: f64) -> f64 {
    let (s, ln_scale) = i_series_scaled(nu, z);
    if ln_scale == 0.0 {
        s
    } else {
        (s.ln() + ln_scale).exp()
    }
}

/// Modified Bessel function of the first kind `I_nu(z)`, `z >= 0`.
pub fn bessel_i(nu: Order, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("bessel_i requires finite z >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(if nu.nu == 0.0 { 1.0 } else { 0.0 });
    }
    let (s, ln_scale) = i_series_scaled(nu, z);
    let ln_pref = nu.nu * (0.5 * z).ln() - ln_gamma_order_plus_one(nu);
    if ln_scale == 0.0 && ln_pref.abs() < 700.0 {
        Ok(ln_pref.exp() * s)
    } else {
        Ok((ln_pref + ln_scale + s.ln()).exp())
    }
}

/// Exponentially scaled `e^{-z} I_nu(z)`, finite for all `z >= 0`.
pub fn bessel_i_scaled(nu: Order, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("bessel_i_scaled requires finite z >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(if nu.nu == 0.0 { 1.0 } else { 0.0 });
    }
    let (s, ln_scale) = i_series_scaled(nu, z);
    let ln_pref = nu.nu * (0.5 * z).ln() - ln_gamma_order_plus_one(nu);
    Ok((ln_pref + ln_scale + s.ln() - z).exp())
}

fn j_derivative(nu: Order, z: f64) -> f64 {
    nu.nu / z * bessel_j_unchecked(nu, z) - bessel_j_unchecked(nu.plus_one(), z)
}

/// Bracket containing exactly the `n`-th zero, via sign changes on a grid.
fn scan_bracket(nu: Order, n: u32) -> Result<(f64, f64)> {
    let step = 0.25;
    let mut a = nu.nu.max(1e-3);
    let mut fa = bessel_j_unchecked(nu, a);
    let mut seen = 0;
    while a < 1e6 {
        let b = a + step;
        let fb = bessel_j_unchecked(nu, b);
        if fa.signum() != fb.signum() || fb == 0.0 {
            seen += 1;
            if seen == n {
                return Ok((a, b));
            }
        }
        a = b;
        fa = fb;
    }
    Err(Error::Search(format!(
        "zero {n} of J_{} not bracketed",
        nu.nu
    )))
}

/// Number of sign changes of `J_nu` on `(0, b)`, counted on a fine grid.
fn zeros_below(nu: Order, b: f64) -> u32 {
    let step = 0.25;
    let mut a = nu.nu.max(1e-3);
    if a >= b {
        return 0;
    }
    let mut fa = bessel_j_unchecked(nu, a);
    let mut count = 0;
    while a < b {
        let next = (a + step).min(b);
        let fb = bessel_j_unchecked(nu, next);
        if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            count += 1;
        }
        a = next;
        fa = fb;
    }
    count
}

/// `n`-th positive zero `j_{nu,n}` of `J_nu`.
pub fn bessel_j_zero(idx: ZeroIndex) -> f64 {
    let nu = idx.nu;
    let n = idx.n as f64;
    let beta = (n + 0.5 * nu.nu - 0.25) * PI;
    let guess = beta - (4.0 * nu.nu * nu.nu - 1.0) / (8.0 * beta);

    // Zeros of J_nu are more than 2.4 apart, so a window of half-width 1.2
    // around the McMahon guess holds at most one of them.
    let (lo, hi) = {
        let lo = (guess - 1.2).max(nu.nu.max(1e-3));
        let hi = guess + 1.2;
        let flo = bessel_j_unchecked(nu, lo);
        let fhi = bessel_j_unchecked(nu, hi);
        if flo.signum() != fhi.signum() && zeros_below(nu, lo) == idx.n - 1 {
            (lo, hi)
        } else {
            scan_bracket(nu, idx.n).expect("zeros of J_nu exist for every n")
        }
    };
    refine_zero(nu, lo, hi)
}

/// Bisection down to a narrow bracket, then Newton safeguarded by the bracket.
fn refine_zero(nu: Order, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = bessel_j_unchecked(nu, lo);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        let fm = bessel_j_unchecked(nu, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let f = bessel_j_unchecked(nu, x);
        if f == 0.0 {
            return x;
        }
        if f.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = j_derivative(nu, x);
        let mut next = x - f / d;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain f64 ascending series; an independent oracle for small z.
    fn j_oracle(nu: f64, z: f64, terms: usize) -> f64 {
        let mut term = (0.5 * z).powf(nu) / ln_gamma_lanczos(nu + 1.0).exp();
        let mut sum = term;
        for k in 0..terms {
            let k = k as f64;
            term *= -0.25 * z * z / ((k + 1.0) * (nu + k + 1.0));
            sum += term;
        }
        sum
    }

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa = f(a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(m).signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn gamma_half_integers() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        let g = gamma(2.5).unwrap();
        assert!((g - 0.75 * PI.sqrt()).abs() / g < 1e-13);
        assert!((gamma(6.0).unwrap() - 120.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_rejects_non_half_integers() {
        assert!(matches!(gamma(0.3), Err(Error::Domain(_))));
        assert!(matches!(gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(gamma(-1.5), Err(Error::Domain(_))));
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn lanczos_agrees_with_recursion() {
        for k in 1..40u64 {
            let exact = gamma_half(k).ln();
            let approx = ln_gamma_lanczos(k as f64 / 2.0);
            assert!(
                (exact - approx).abs() < 1e-13 * exact.abs().max(1.0),
                "k={k}"
            );
        }
    }

    #[test]
    fn order_validation() {
        assert!(Order::new(-0.5).is_err());
        assert_eq!(Order::new(1.5).unwrap().twice(), Some(3));
        assert_eq!(Order::new(0.3).unwrap().twice(), None);
        assert!(ZeroIndex::new(Order::half(0), 0).is_err());
    }

    #[test]
    fn bessel_j_examples() {
        assert_eq!(bessel_j(Order::half(0), 0.0).unwrap(), 1.0);
        assert!(bessel_j(Order::half(1), PI).unwrap().abs() < 1e-15);
        assert!(bessel_j(Order::half(0), 2.404_825_6).unwrap().abs() <= 1e-7);
        assert!(matches!(
            bessel_j(Order::half(0), -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn bessel_j_half_closed_form() {
        for &z in &[0.1, 1.0, 7.3, 19.9, 20.1, 55.0, 99.0] {
            let exact = (2.0 / (PI * z)).sqrt() * z.sin();
            let got = bessel_j(Order::half(1), z).unwrap();
            assert!((got - exact).abs() < 1e-14, "z={z}");
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn bessel_j_reference_values() {
        // Values from an arbitrary-precision reference (mpmath, 30 digits).
        let cases: &[(u32, f64, f64)] = &[
            (0, 1.0, 0.765_197_686_557_966_55),
            (0, 10.0, -0.245_935_764_451_348_34),
            (0, 19.5, 0.178_853_827_040_172_89),
            (0, 30.0, -0.086_367_983_581_040_211),
            (0, 100.0, 0.019_985_850_304_223_122),
            (2, 15.0, 0.205_104_038_613_522_76),
            (2, 50.0, -0.097_511_828_125_175_138),
            (3, 20.0, -0.064_662_866_592_310_355),
            (4, 33.0, -0.091_172_511_683_078_099),
            (7, 2.5, 0.131_102_558_404_873_04),
            (8, 31.0, 0.084_043_797_656_731_2),
            (8, 32.5, 0.120_409_935_203_326_2),
            (9, 12.0, 0.064_567_071_014_175_388),
            (10, 49.0, -0.111_337_752_702_379_37),
            (10, 51.0, 0.021_361_209_950_052_596),
        ];
        for &(twice, z, want) in cases {
            let got = bessel_j(Order::half(twice), z).unwrap();
            let err = (got - want).abs();
            assert!(
                err <= 1e-10 * want.abs() || err <= 1e-12,
                "nu={} z={z} got={got} want={want}",
                twice as f64 / 2.0
            );
        }
    }

    #[test]
    fn seam_continuity() {
        for twice in 0..=11u32 {
            let nu = Order::half(twice);
            let z = j_crossover(nu);
            let s = bessel_j_series(nu, z);
            let a = bessel_j_asymptotic(nu, z);
            let scale = s.abs().max(a.abs()).max(1e-2);
            assert!(
                (s - a).abs() <= 1e-10 * scale,
                "nu={} s={s} a={a}",
                nu.value()
            );
        }
    }

    #[test]
    fn series_matches_plain_oracle_at_small_z() {
        for twice in 0..8u32 {
            for &z in &[0.01, 0.5, 1.0, 3.0] {
                let want = j_oracle(twice as f64 / 2.0, z, 40);
                let got = bessel_j(Order::half(twice), z).unwrap();
                assert!((got - want).abs() <= 1e-13 * want.abs().max(1e-3));
            }
        }
    }

    #[test]
    fn bessel_i_examples() {
        assert_eq!(bessel_i(Order::half(0), 0.0).unwrap(), 1.0);
        let want = (2.0 / PI).sqrt() * 1f64.sinh();
        assert!((bessel_i(Order::half(1), 1.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.937_674_8).abs() < 1e-7);
        // 30-term ascending series oracle.
        let mut term = 0.5;
        let mut oracle = term;
        for k in 0..30 {
            let k = k as f64;
            term *= 0.25 / ((k + 1.0) * (k + 2.0));
            oracle += term;
        }
        let got = bessel_i(Order::half(2), 1.0).unwrap();
        assert!((got - oracle).abs() < 1e-15);
        assert!((got - 0.565_159_1).abs() < 1e-7);
        assert!(bessel_i(Order::half(0), -0.1).is_err());
    }

    #[test]
    fn bessel_i_large_argument_is_overflow_guarded() {
        // sinh-based closed form for order 1/2 in scaled form.
        let z = 800.0;
        let scaled = bessel_i_scaled(Order::half(1), z).unwrap();
        let want = (2.0 / (PI * z)).sqrt() * 0.5 * (1.0 - (-2.0 * z).exp());
        assert!((scaled - want).abs() / want < 1e-12);
        assert!(bessel_i(Order::half(1), z).unwrap().is_infinite());
        let z = 650.0;
        let direct = bessel_i(Order::half(1), z).unwrap();
        let want = (2.0 / (PI * z)).sqrt() * z.sinh();
        assert!((direct - want).abs() / want < 1e-12);
    }

    #[test]
    fn zero_examples() {
        let z = bessel_j_zero(ZeroIndex::new(Order::half(1), 1).unwrap());
        assert!((z - PI).abs() < 1e-12);
        let j01 = bisect(|z| j_oracle(0.0, z, 60), 2.0, 3.0);
        let z = bessel_j_zero(ZeroIndex::new(Order::half(0), 1).unwrap());
        assert!((z - j01).abs() < 1e-10);
        assert!((z - 2.404_825_6).abs() < 1e-7);
        let j11 = bisect(|z| j_oracle(1.0, z, 60), 3.0, 4.5);
        let z = bessel_j_zero(ZeroIndex::new(Order::half(2), 1).unwrap());
        assert!((z - j11).abs() < 1e-10);
        assert!((z - 3.831_706_0).abs() < 1e-7);
    }

    #[test]
    fn zeros_are_ordered_and_annihilate() {
        for twice in 0..=11u32 {
            let nu = Order::half(twice);
            let mut prev = 0.0;
            for n in 1..=6 {
                let z = bessel_j_zero(ZeroIndex::new(nu, n).unwrap());
                assert!(z > prev + 2.0, "nu={} n={n}", nu.value());
                assert!(bessel_j(nu, z).unwrap().abs() < 1e-8);
                prev = z;
            }
        }
    }

    #[test]
    fn half_odd_zeros_are_multiples_of_pi() {
        for n in 1..=10 {
            let z = bessel_j_zero(ZeroIndex::new(Order::half(1), n).unwrap());
            assert!((z - n as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn ball_volume() {
        assert!((unit_ball_volume(2).unwrap() - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(1).unwrap() - 2.0).abs() < 1e-15);
        assert!(unit_ball_volume(0).is_err());
    }
}
