//! Exact closed forms for the counting quantities of `H(2n+1, q²)`.
//!
//! Every function takes `q` (not `q²`) and works in arbitrary precision.
//! Degenerate indices follow one rule: `θ_{-1} = μ_{-1} = 0`, empty
//! products are 1, `C(a, 2) = 0` for `a ≤ 1`. `μ_0(q²)` is 0 straight from
//! the formula, which agrees with `H(0, q²)` having no points.

use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

fn big(q: u64) -> BigInt {
    BigInt::from(q)
}

fn upow(q: u64, e: u64) -> BigUint {
    Pow::pow(BigUint::from(q), e)
}

fn ipow(q: u64, e: u64) -> BigInt {
    Pow::pow(big(q), e)
}

/// `x^e - (-1)^e`.
fn minus_sign(q: u64, e: u64) -> BigInt {
    let s = if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    ipow(q, e) - s
}

fn to_unsigned(v: BigInt, what: &str) -> Result<BigUint> {
    match v.sign() {
        Sign::Minus => Err(Error::Invariant(format!("{what} evaluated negative"))),
        _ => Ok(v.magnitude().clone()),
    }
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (quo, rem) = (&num / &den, &num % &den);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!("{what}: division is not exact")));
    }
    Ok(quo)
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("q = {q}, need q >= 2")));
    }
    Ok(())
}

fn binom2(a: i64) -> i64 {
    if a <= 1 {
        0
    } else {
        a * (a - 1) / 2
    }
}

/// Number of points of `PG(m, q)`: `(q^{m+1} - 1)/(q - 1)`, with `θ_{-1} = 0`.
pub fn theta(m: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if m < -1 {
        return Err(Error::OutOfRange(format!("theta: m = {m}, need m >= -1")));
    }
    let num = ipow(q, (m + 1) as u64) - 1;
    to_unsigned(exact_div(num, big(q) - 1, "theta")?, "theta")
}

/// Number of points of `H(m, q²)`:
/// `(q^{m+1} - (-1)^{m+1})(q^m - (-1)^m)/(q² - 1)`, with `μ_{-1} = 0`.
pub fn mu(m: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if m < -1 {
        return Err(Error::OutOfRange(format!("mu: m = {m}, need m >= -1")));
    }
    if m == -1 {
        return Ok(BigUint::zero());
    }
    let num = minus_sign(q, (m + 1) as u64) * minus_sign(q, m as u64);
    to_unsigned(exact_div(num, ipow(q, 2) - 1, "mu")?, "mu")
}

fn mu_i(m: i64, q: u64) -> Result<BigInt> {
    mu(m, q).map(BigInt::from)
}

/// Generators of `H(2n+1, q²)`: `∏_{i=0}^{n} (q^{2i+1} + 1)`.
pub fn generator_count(n: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < -1 {
        return Err(Error::OutOfRange(format!("generator_count: n = {n}, need n >= -1")));
    }
    Ok((0..=n).fold(BigUint::one(), |acc, i| acc * (upow(q, (2 * i + 1) as u64) + 1u32)))
}

/// Generators through a fixed `k`-space on `H(2n+1, q²)`:
/// `∏_{i=0}^{n-k-1} (q^{2i+1} + 1)`.
pub fn generators_through_k(n: i64, k: i64, q: u64) -> Result<BigUint> {
    if k < 0 || k > n {
        return Err(Error::OutOfRange(format!("generators_through_k: need 0 <= k <= n, got n = {n}, k = {k}")));
    }
    generator_count(n - k - 1, q)
}

/// Generators skew to a `j`-space meeting the variety in a non-singular `H(j, q²)`.
pub fn c_nj(n: i64, j: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < 0 || j < -1 || j > n {
        return Err(Error::OutOfRange(format!("c_nj: need -1 <= j <= n, got n = {n}, j = {j}")));
    }
    let mut acc = ipow(q, binom2(j + 1) as u64);
    for k in 0..n - j {
        acc *= ipow(q, (2 * k + 1) as u64) + 1;
    }
    for l in 2 * (n - j) + 1..=2 * n - j + 1 {
        acc *= minus_sign(q, l as u64);
    }
    to_unsigned(acc, "c_nj")
}

/// `N(n, i)`: generators through a fixed point of `π∖π_i` and a fixed point
/// of `π^σ∖π_i` meeting both sides in nothing else.
#[allow(non_snake_case)]
pub fn N_ni(n: i64, i: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < 1 || i < -1 || i > n - 2 {
        return Err(Error::OutOfRange(format!("N: need n >= 1 and -1 <= i <= n-2, got n = {n}, i = {i}")));
    }
    let e = (n - 1) * (n - 1) - binom2(n - i - 1);
    if e < 0 {
        return Err(Error::Invariant(format!("N: negative exponent at n = {n}, i = {i}")));
    }
    let mut acc = ipow(q, e as u64);
    for j in 1..=n - i - 2 {
        acc *= minus_sign(q, j as u64);
    }
    to_unsigned(acc, "N")
}

/// `N'(n, i)`: generators of `H(2n+1, q²)` skew to an `n`-space with vertex
/// dimension `i`. Equal to `N(n+2, i)`.
#[allow(non_snake_case)]
pub fn N_prime(n: i64, i: i64, q: u64) -> Result<BigUint> {
    if n < -1 || i < -1 || i > n {
        return Err(Error::OutOfRange(format!("N': need -1 <= i <= n, got n = {n}, i = {i}")));
    }
    N_ni(n + 2, i, q)
}

/// Which side of `⟨π, π^σ⟩` a point off `π ∪ π^σ` sits on, as the four
/// cases of the through-a-point count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NpCase {
    /// Outside `⟨π, π^σ⟩`.
    Outside = 1,
    /// Inside, with no variety line to both `π∖π_i` and `π^σ∖π_i`.
    InsideNoLine = 2,
    /// Inside, on such a line, `i ≤ n-4`.
    LineLow = 3,
    /// Inside, on such a line, `i ∈ {n-3, n-2}`.
    LineHigh = 4,
}

impl NpCase {
    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(NpCase::Outside),
            2 => Ok(NpCase::InsideNoLine),
            3 => Ok(NpCase::LineLow),
            4 => Ok(NpCase::LineHigh),
            _ => Err(Error::OutOfRange(format!("n_P case {k}, need 1..=4"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Generators through a point `R` off `π ∪ π^σ` meeting `π∖π_i` and
/// `π^σ∖π_i` in exactly one point each.
///
/// Case 2 at `i = n-2` is accepted and gives 0: such points exist but the
/// sides `V∖π_i` are empty.
pub fn n_p(n: i64, i: i64, case: NpCase, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < 2 || i < -1 || i > n - 2 {
        return Err(Error::OutOfRange(format!("n_P: need n >= 2 and -1 <= i <= n-2, got n = {n}, i = {i}")));
    }
    let range_err = |need: &str| Err(Error::OutOfRange(format!("n_P case {}: need {need}, got n = {n}, i = {i}", case.number())));
    let q4i = |extra: i64| ipow(q, (4 * i + extra) as u64);
    let v = match case {
        NpCase::Outside => {
            if i < 0 {
                return range_err("i >= 0");
            }
            let m = mu_i(n - i - 1, q)?;
            BigInt::from(N_ni(n - 1, i - 1, q)?) * q4i(0) * &m * &m
        }
        NpCase::InsideNoLine => {
            if i == n - 2 {
                return Ok(BigUint::zero());
            }
            let m = mu_i(n - i - 2, q)?;
            BigInt::from(N_ni(n - 1, i, q)?) * q4i(4) * &m * &m
        }
        NpCase::LineLow => {
            if i > n - 4 {
                return range_err("i <= n-4");
            }
            let m = mu_i(n - i - 3, q)?;
            let bracket = ipow(q, 4) * &m + ipow(q, 2) - 1;
            BigInt::from(N_ni(n - 1, i + 1, q)?) * q4i(4) * m * bracket
        }
        NpCase::LineHigh => {
            if i < n - 3 {
                return range_err("i in {n-3, n-2}");
            }
            ipow(q, (2 * i + 2) as u64) * BigInt::from(N_ni(n, i, q)?)
        }
    };
    to_unsigned(v, "n_P")
}

/// Weight of the pair word built from an `n`-space with vertex dimension `i`.
pub fn pair_word_weight(n: i64, i: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < 1 || i < -1 || i > n {
        return Err(Error::OutOfRange(format!("pair word: need -1 <= i <= n, got n = {n}, i = {i}")));
    }
    if i >= n - 1 {
        return Ok(BigUint::zero());
    }
    Ok(upow(q, (2 * i + 2) as u64) * mu(n - i - 1, q)? * 2u32)
}

/// `2q^{2n-4}(q³+1)`, the smallest pair-word weight for `n ≥ 2`.
pub fn min_pair_weight(n: i64, q: u64) -> Result<BigUint> {
    check_q(q)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("min_pair_weight: need n >= 2, got {n}")));
    }
    Ok(upow(q, (2 * n - 4) as u64) * (upow(q, 3) + 1u32) * 2u32)
}

/// Points of a cone with an `i`-dimensional vertex over `H(b, q²)`.
pub fn cone_size(i: i64, base_rank: i64, q: u64) -> Result<BigUint> {
    Ok(theta(i, q * q)? + upow(q, (2 * (i + 1)) as u64) * mu(base_rank, q)?)
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `q^e` as a rational, for possibly negative `e`.
fn rpow(q: u64, e: i64) -> BigRational {
    if e >= 0 {
        rat(ipow(q, e as u64))
    } else {
        BigRational::new(BigInt::one(), ipow(q, (-e) as u64))
    }
}

fn check_threshold_range(n: i64, i: i64, q: u64) -> Result<()> {
    check_q(q)?;
    if n < 1 || i < -1 || i > n - 2 {
        return Err(Error::OutOfRange(format!("threshold: need n >= 1 and -1 <= i <= n-2, got n = {n}, i = {i}")));
    }
    Ok(())
}

/// Coefficients `(a, b, c)` of the quadratic `a y² - b y + c ≥ 0` whose roots
/// bound `|S ∩ (π∖π_i)| + |S ∩ (π^σ∖π_i)|`.
pub fn threshold_quadratic(n: i64, i: i64, q: u64, delta: &BigRational) -> Result<(BigRational, BigRational, BigRational)> {
    check_threshold_range(n, i, q)?;
    let q2m1 = rat(ipow(q, 2) - 1);
    let head = rat(BigInt::from(2)) * rpow(q, 2 * n - 1) * delta;
    if (n - i) % 2 == 1 {
        let m2 = rat(mu_i(n - i - 2, q)?);
        let c1 = m2 * rat(ipow(q, (n - i - 1) as u64) - 1) / &q2m1;
        let b = rpow(q, n - i - 3) * rat(mu_i(n - i - 1, q)?) + rat(BigInt::from(2)) * &c1;
        let a = rpow(q, n - 3 * i - 5) / rat(BigInt::from(2));
        Ok((a, b, head * c1))
    } else {
        let inner = rat(ipow(q, 4) * mu_i(n - i - 3, q)? + ipow(q, 2) - 1);
        let c2 = rpow(q, 2 * i + 2) * &inner;
        let b = rpow(q, 2 * i + 2) * (rat(mu_i(n - i - 1, q)?) * &q2m1 + rat(BigInt::from(2)) * inner);
        let a = q2m1 / rat(BigInt::from(2));
        Ok((a, b, head * c2))
    }
}

/// `Σ_{n,i}`: the sum of the two threshold roots. Rational in general
/// (for `n - i` odd the denominator can carry a power of `q`).
pub fn sigma_threshold(n: i64, i: i64, q: u64) -> Result<BigRational> {
    check_threshold_range(n, i, q)?;
    let two = rat(BigInt::from(2));
    let q2m1 = rat(ipow(q, 2) - 1);
    let m1 = rat(mu_i(n - i - 1, q)?);
    if (n - i) % 2 == 1 {
        let m2 = rat(mu_i(n - i - 2, q)?);
        let tail = rat(BigInt::from(4)) * m2 * rat(ipow(q, (n - i - 1) as u64) - 1) / (rpow(q, n - 3 * i - 5) * q2m1);
        Ok(&two * rpow(q, 2 * i + 2) * m1 + tail)
    } else {
        let inner = rat(ipow(q, 4) * mu_i(n - i - 3, q)? + ipow(q, 2) - 1);
        Ok(&two * rpow(q, 2 * i + 2) * (m1 + &two * inner / q2m1))
    }
}

/// Digits after the decimal point in the approximate root strings.
pub const ROOT_DIGITS: usize = 50;

/// The two roots `α ≤ α'` of the threshold quadratic, held exactly as
/// `center ∓ sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdPair {
    pub center: BigRational,
    pub radicand: BigRational,
    /// Roots as exact rationals when `radicand` is a rational square.
    pub exact: Option<(BigRational, BigRational)>,
    /// `false` when the roots are complex.
    pub discriminant_nonneg: bool,
    /// Decimal expansions to [`ROOT_DIGITS`] places (real part only when complex).
    pub alpha_decimal: String,
    pub alpha_prime_decimal: String,
}

impl ThresholdPair {
    /// `α + α'`, exactly.
    pub fn sum(&self) -> BigRational {
        &self.center + &self.center
    }

    /// Rational approximations of the roots, within `10^{-60}`.
    pub fn approx(&self) -> (BigRational, BigRational) {
        if let Some((a, b)) = &self.exact {
            return (a.clone(), b.clone());
        }
        let s = sqrt_approx(&self.radicand.abs(), 60);
        if self.discriminant_nonneg {
            (&self.center - &s, &self.center + &s)
        } else {
            (self.center.clone(), self.center.clone())
        }
    }

    pub fn alpha_f64(&self) -> f64 {
        self.approx().0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn alpha_prime_f64(&self) -> f64 {
        self.approx().1.to_f64().unwrap_or(f64::NAN)
    }
}

fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().magnitude(), r.denom().magnitude());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(BigInt::from(sn), BigInt::from(sd)))
    } else {
        None
    }
}

/// `floor(sqrt(r) * 10^digits) / 10^digits` for `r ≥ 0`.
fn sqrt_approx(r: &BigRational, digits: u32) -> BigRational {
    let scale = Pow::pow(BigUint::from(10u32), digits);
    let (n, d) = (r.numer().magnitude(), r.denom().magnitude());
    // sqrt(n/d) = sqrt(n*d)/d
    let s = (n * d * &scale * &scale).sqrt();
    BigRational::new(BigInt::from(s), BigInt::from(d * scale))
}

/// Fixed-point decimal rendering, rounded half away from zero.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(Pow::pow(BigUint::from(10u32), digits));
    let scaled = r * rat(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = if scaled.is_negative() { -((-scaled) + &half).floor() } else { (scaled + half).floor() };
    let v = rounded.to_integer();
    let neg = v.is_negative();
    let mag = v.magnitude().clone();
    let scale_u = scale.magnitude().clone();
    let (ip, fp) = (&mag / &scale_u, &mag % &scale_u);
    let mut frac = format!("{fp}");
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let sign = if neg && !mag.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{frac}")
    }
}

/// Roots of the threshold quadratic for `(n, i, q, δ)`.
pub fn alpha_roots(n: i64, i: i64, q: u64, delta: &BigRational) -> Result<ThresholdPair> {
    if !delta.is_positive() {
        return Err(Error::OutOfRange(format!("alpha_roots: delta must be positive, got {delta}")));
    }
    let (a, b, c) = threshold_quadratic(n, i, q, delta)?;
    let two = rat(BigInt::from(2));
    let center = &b / (&two * &a);
    let radicand = (&b * &b - rat(BigInt::from(4)) * &a * &c) / (rat(BigInt::from(4)) * &a * &a);
    let nonneg = !radicand.is_negative();
    let exact = exact_sqrt(&radicand).map(|s| (&center - &s, &center + &s));
    let mut pair = ThresholdPair {
        center,
        radicand,
        exact,
        discriminant_nonneg: nonneg,
        alpha_decimal: String::new(),
        alpha_prime_decimal: String::new(),
    };
    let (lo, hi) = pair.approx();
    pair.alpha_decimal = to_decimal(&lo, ROOT_DIGITS);
    pair.alpha_prime_decimal = to_decimal(&hi, ROOT_DIGITS);
    Ok(pair)
}
