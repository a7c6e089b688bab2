//! Certified brackets for the growth constants, by exact bisection and
//! rational interval arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{discriminant, BiPoly, IntPoly};
use super::rat;
use super::solve::cn_closed_form;
use crate::error::{Error, Result};

/// Binary digits kept by outward rounding.
const BITS: u32 = 192;

fn dec(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self::new(x.clone(), x)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / rat(2)))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True iff the interval lies strictly inside `(a, b)`.
    pub fn inside(&self, a: &BigRational, b: &BigRational) -> bool {
        a < &self.lo && &self.hi < b
    }

    fn round_out(self) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << BITS);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Self { lo, hi }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().cloned().unwrap_or_default();
        let hi = p.iter().max().cloned().unwrap_or_default();
        Self::new(lo, hi).round_out()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Ok(Self::new(self.hi.recip(), self.lo.recip()).round_out())
        } else {
            Err(Error::InvalidInterval("reciprocal of an interval containing 0".into()))
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, c: i64) -> Self {
        self.mul(&Self::point(rat(c)))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::InvalidInterval("sqrt of a negative interval".into()));
        }
        let four_k = BigRational::from_integer(BigInt::one() << (2 * BITS));
        let two_k = BigInt::one() << BITS;
        let lo = (&self.lo * &four_k).floor().to_integer().sqrt();
        let hi = (&self.hi * &four_k).ceil().to_integer().sqrt() + 1;
        Ok(Self::new(
            BigRational::new(lo, two_k.clone()),
            BigRational::new(hi, two_k),
        ))
    }

    /// Natural logarithm for intervals inside `[1, ∞)`, by
    /// `log x = 2 atanh((x-1)/(x+1))` with a tail bound.
    pub fn ln(&self) -> Result<Self> {
        if self.lo < BigRational::one() {
            return Err(Error::InvalidInterval("ln implemented for x >= 1".into()));
        }
        let t = |x: &BigRational| (x - rat(1)) / (x + rat(1));
        let t_lo = Self::point(t(&self.lo)).round_out().lo;
        let t_hi = Self::point(t(&self.hi)).round_out().hi;
        if t_hi >= BigRational::one() {
            return Err(Error::InvalidInterval("ln argument too large".into()));
        }
        const TERMS: usize = 200;
        let partial = |t: &BigRational| -> (BigRational, BigRational) {
            let t2 = t * t;
            let mut pow = t.clone();
            let mut sum = BigRational::zero();
            for k in 0..TERMS {
                sum += &pow / rat(2 * k as i64 + 1);
                pow = Self::point(&pow * &t2).round_out().hi;
            }
            (sum, pow)
        };
        // a truncated sum of positive terms is a lower bound
        let (lo_sum, _) = partial(&t_lo);
        let (hi_sum, tail_pow) = partial(&t_hi);
        let tail = tail_pow / (rat(2 * TERMS as i64 + 1) * (rat(1) - &t_hi * &t_hi));
        Ok(Self::new(lo_sum * rat(2), (hi_sum + tail) * rat(2)).round_out())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

/// A root of `poly` isolated in `[lo, hi]` with `hi - lo <= tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct RootBracket {
    #[serde(serialize_with = "poly_text")]
    pub poly: IntPoly,
    pub lo: BigRational,
    pub hi: BigRational,
    pub tolerance: BigRational,
}

fn poly_text<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl RootBracket {
    /// Bisects a sign change of `poly` on `[lo, hi]` down to `tolerance`.
    pub fn bisect(poly: IntPoly, lo: BigRational, hi: BigRational, tolerance: BigRational) -> Result<Self> {
        let sign = |x: &BigRational| poly.eval(x).signum();
        let (mut lo, mut hi) = (lo, hi);
        let s_lo = sign(&lo);
        if s_lo.is_zero() || s_lo == sign(&hi) {
            return Err(Error::BracketNotConfirmed(format!("no sign change of {poly} on the interval")));
        }
        while &hi - &lo > tolerance {
            let mid = (&lo + &hi) / rat(2);
            let s = sign(&mid);
            if s.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Self { poly, lo, hi, tolerance })
    }

    /// Re-checks the sign change and the width.
    pub fn is_certified(&self) -> bool {
        let (a, b) = (self.poly.eval(&self.lo), self.poly.eval(&self.hi));
        let change = (a.signum() * b.signum()) <= BigRational::zero();
        change && self.width() <= self.tolerance
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / rat(2)))
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }
}

/// Certified constants.
#[derive(Clone, Debug, Serialize)]
pub struct Constants {
    /// Squarefree part of the discriminant of the sextic for `A`, without
    /// its power of `z`.
    #[serde(serialize_with = "poly_text")]
    pub alpha_poly: IntPoly,
    /// Smallest positive root of `alpha_poly`.
    pub alpha: RootBracket,
    pub alpha_inv: Interval,
    /// Real root of `4x³ − 49x² + 164x − 12`.
    pub gamma: RootBracket,
    /// `log((1+√3)/2)`, where `f'(s) = 1`.
    pub s: Interval,
    /// `s − f(s) = 2s + 3 − 2√3`.
    pub beta: Interval,
    pub beta_inv: Interval,
    /// `2√3 − 1 + 2s`, an alternative closed form kept for comparison.
    pub beta_printed: Interval,
    /// `sqrt(β/√3)`.
    pub b0: Interval,
    /// Midpoint of `4 < 10³ a₀ < 5`.
    pub a0: f64,
}

/// Smallest root of `p` in `(0, hi]`, narrowed with Sturm counts.
fn smallest_positive_root(p: &IntPoly, hi: BigRational, tol: &BigRational) -> Result<(BigRational, BigRational)> {
    let zero = BigRational::zero();
    if p.count_roots(&zero, &hi) == 0 {
        return Err(Error::BracketNotConfirmed("no positive root below the search bound".into()));
    }
    let (mut lo, mut hi) = (zero.clone(), hi);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rat(2);
        if p.count_roots(&zero, &mid) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn confirm(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BracketNotConfirmed(what.to_string()))
    }
}

pub fn bracket_constants() -> Result<Constants> {
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(12));
    let zero = BigRational::zero();

    // α: smallest positive root of disc_y(sextic)
    let disc = discriminant(&BiPoly::sextic_a());
    let (_, stripped) = disc.strip_x_power();
    let (_, alpha_poly) = stripped.primitive();
    let (alo, ahi) = smallest_positive_root(&alpha_poly, rat(1), &tol)?;
    let alpha = RootBracket::bisect(alpha_poly.clone(), alo, ahi, tol.clone())?;
    let (a_lo, a_hi) = (dec("0.063321613"), dec("0.063321614"));
    confirm(
        alpha_poly.count_roots(&zero, &a_lo) == 0 && alpha_poly.count_roots(&a_lo, &a_hi) >= 1,
        "0.063321613 < alpha < 0.063321614",
    )?;
    let (inv_lo, inv_hi) = (dec("15.792395"), dec("15.792396"));
    confirm(
        alpha_poly.count_roots(&zero, &inv_hi.recip()) == 0
            && alpha_poly.count_roots(&inv_hi.recip(), &inv_lo.recip()) >= 1,
        "15.792395 < 1/alpha < 15.792396",
    )?;
    let alpha_inv = alpha.interval().recip()?;

    // γ
    let cubic = IntPoly::from_i64(&[-12, 164, -49, 4]);
    confirm(cubic.count_real_roots() == 1, "gamma is the only real root")?;
    let gamma_tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(9));
    let gamma = RootBracket::bisect(cubic, rat(0), rat(1), gamma_tol)?;
    confirm(gamma.is_certified(), "gamma bracket of width 1e-9")?;

    // β and b₀
    let sqrt3 = Interval::point(rat(3)).sqrt()?;
    let one = Interval::point(rat(1));
    let s = one.add(&sqrt3).mul(&Interval::point(BigRational::new(1.into(), 2.into()))).ln()?;
    let beta = s.scale(2).add(&Interval::point(rat(3))).sub(&sqrt3.scale(2));
    let beta_inv = beta.recip()?;
    confirm(beta_inv.inside(&dec("6.26"), &dec("6.27")), "6.26 < 1/beta < 6.27")?;
    let beta_printed = sqrt3.scale(2).sub(&one).add(&s.scale(2));
    let b0 = beta.div(&sqrt3)?.sqrt()?;

    Ok(Constants {
        alpha_poly,
        alpha,
        alpha_inv,
        gamma,
        s,
        beta,
        beta_inv,
        beta_printed,
        b0,
        a0: 0.0045,
    })
}

/// Which sequence an estimate refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Which {
    A,
    B,
    C,
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Which::A),
            "B" | "b" => Ok(Which::B),
            "C" | "c" => Ok(Which::C),
            _ => Err(Error::InvalidSeries(format!("unknown sequence {s:?}"))),
        }
    }
}

/// Asymptotic value at `n`: `a₀ n^{-3/2} α^{-n}` for `A`,
/// `n!·b₀/(2√(πn³))·β^{-n}` for labeled bushes. For `C`, whose constant is
/// unknown, the result is the ratio `C_n·n^{3/2}·γⁿ`.
pub fn asymptotic_estimate(n: usize, which: Which, k: &Constants) -> f64 {
    let nf = n as f64;
    match which {
        Which::A => k.a0 * nf.powf(-1.5) * k.alpha.midpoint().powf(-nf),
        Which::B => {
            let fact: f64 = (1..=n).map(|i| i as f64).product();
            let beta = k.beta.midpoint();
            fact * k.b0.midpoint() / (2.0 * (std::f64::consts::PI * nf.powi(3)).sqrt()) * beta.powf(-nf)
        }
        Which::C => cn_closed_form(n).to_f64().unwrap_or(f64::INFINITY) * nf.powf(1.5) * k.gamma.midpoint().powf(nf),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_ln_enclose() {
        let r = Interval::point(rat(2)).sqrt().unwrap();
        assert!(r.contains(&dec("1.41421356237")) || r.lo > dec("1.414213562"));
        assert!(r.width() < dec("0.0000000001"));
        let l = Interval::point(rat(2)).ln().unwrap();
        assert!(l.inside(&dec("0.693147180559"), &dec("0.693147180560")));
    }

    #[test]
    fn constants_are_certified() {
        let k = bracket_constants().unwrap();
        assert!(k.alpha.is_certified());
        assert!((k.alpha_inv.midpoint() - 15.7923959).abs() < 1e-6);
        assert!((k.beta.midpoint() - 0.159708).abs() < 1e-5);
        assert!((k.gamma.midpoint() - 0.07483371).abs() < 1e-8);
        assert!((k.b0.midpoint() - 0.30366).abs() < 1e-4);
        assert!(k.beta_printed.midpoint() > 3.0);
    }

    #[test]
    fn bisection_rejects_missing_sign_change() {
        let p = IntPoly::from_i64(&[1, 0, 1]);
        assert!(RootBracket::bisect(p, rat(-1), rat(1), dec("0.1")).is_err());
    }
}
