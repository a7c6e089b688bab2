//! Closed-form counts of slicings and curves, and growth bounds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::Passport;
use crate::error::{Error, Result};
use crate::series::solve_a;

/// `96·e^{1/3}`.
pub const RHO: f64 = 133.978_792_808_264_6;

/// Which denominator the slicing formula uses.
///
/// `Corrected` is Tutte's `(c-s+2)!`. `Printed` is `(c-s-2)!` with the
/// convention `n! = 1` for `n < 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Corrected,
    Printed,
}

fn factorial(n: i64) -> BigInt {
    (1..=n.max(0)).fold(BigInt::one(), |acc, i| acc * i)
}

fn binom(n: usize, k: usize) -> BigInt {
    BigInt::from(crate::series::binom(n, k))
}

fn ratio(k: &Passport, variant: Variant) -> Result<BigRational> {
    if k.s() == 0 {
        return Err(Error::InvalidPassport("empty passport".into()));
    }
    let (c, s) = (k.c() as i64, k.s() as i64);
    let den = match variant {
        Variant::Corrected => c - s + 2,
        Variant::Printed => c - s - 2,
    };
    Ok(BigRational::new(factorial(c - 1), factorial(den)))
}

fn integral(name: &'static str, x: BigRational) -> Result<BigUint> {
    if x.is_integer() {
        if let Some(v) = x.to_integer().to_biguint() {
            return Ok(v);
        }
    }
    Err(Error::NonIntegral {
        series: name,
        index: 0,
        value: x.to_string(),
    })
}

fn a_values(k: &Passport) -> Result<Vec<BigInt>> {
    let max = k.parts().iter().copied().max().unwrap_or(0);
    solve_a(max)?.integers("A")
}

/// Marked slicings of the sphere with `s` holes carrying `2k_v` points:
/// `(c-1)!/(c-s+2)! · Π k_v binom(2k_v, k_v)`.
pub fn tutte_slicings(k: &Passport, variant: Variant) -> Result<BigUint> {
    let mut x = ratio(k, variant)?;
    for &kv in k.parts() {
        x *= BigRational::from_integer(binom(2 * kv, kv) * kv);
    }
    integral("slicings", x)
}

/// Analytic curves with indexed, marked vertices: slicings times `Π A_{k_v}`.
pub fn marked_curve_count(k: &Passport, variant: Variant) -> Result<BigUint> {
    let a = a_values(k)?;
    let mut x = BigInt::from(tutte_slicings(k, variant)?);
    for &kv in k.parts() {
        x *= &a[kv];
    }
    integral("marked curves", BigRational::from_integer(x))
}

/// Rooted analytic curves with passport `k`:
/// `2k_1 (c-1)!/((s-1)!(c-s+2)!) Π binom(2k_v,k_v) A_{k_v}/2`.
pub fn rooted_curve_count(k: &Passport, variant: Variant) -> Result<BigUint> {
    let a = a_values(k)?;
    let mut x = ratio(k, variant)? * BigRational::from_integer(BigInt::from(2 * k.parts()[0]));
    x /= BigRational::from_integer(factorial(k.s() as i64 - 1));
    let two = BigRational::from_integer(BigInt::from(2));
    for &kv in k.parts() {
        x *= BigRational::from_integer(binom(2 * kv, kv) * &a[kv]) / &two;
    }
    integral("rooted curves", x)
}

fn bound(c: f64) -> f64 {
    let x = c.powi(3) * RHO.powf(c);
    x * (1.0 + 4.0 * f64::EPSILON)
}

/// `c³ ρ^c`, an upper bound for rooted analytic curves on the sphere with
/// `c` edges.
pub fn sphere_bound(c: usize) -> f64 {
    bound(c as f64)
}

/// `(d⁸/16) ρ^{d²/2}`, the bound for curves of degree `d` in the real
/// projective plane.
pub fn rp2_bound(d: usize) -> f64 {
    let d = d as f64;
    let x = d.powi(8) / 16.0 * RHO.powf(d * d / 2.0);
    x * (1.0 + 4.0 * f64::EPSILON)
}

/// Plücker-type admissibility of a passport in degree `d`.
pub fn pluecker_admissible(k: &Passport, d: usize) -> bool {
    let genus_bound = d.saturating_sub(1) * d.saturating_sub(2) / 2;
    let defect: usize = k
        .parts()
        .iter()
        .map(|&kv| if kv == 1 { 1 } else { kv * (kv - 1) / 2 })
        .sum();
    defect <= genus_bound && k.c() <= genus_bound
}
