//! Solvers for the bush, cordage and analytic-diagram generating functions.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::BiPoly;
use super::{rat, PowerSeries};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 40;

impl BiPoly {
    /// `(z³+z²)y⁶ − z²y⁵ − 4zy⁴ + (8z+2)y³ − (4z+6)y² + 6y − 2`, satisfied by `A`.
    pub fn sextic_a() -> Self {
        Self::from_terms(&[
            (3, 6, 1),
            (2, 6, 1),
            (2, 5, -1),
            (1, 4, -4),
            (1, 3, 8),
            (0, 3, 2),
            (1, 2, -4),
            (0, 2, -6),
            (0, 1, 6),
            (0, 0, -2),
        ])
    }

    /// `y³ − 4y² + (1+z)y − z`, satisfied by `C_T`.
    pub fn cubic_ct() -> Self {
        Self::from_terms(&[(0, 3, 1), (0, 2, -4), (0, 1, 1), (1, 1, 1), (1, 0, -1)])
    }

    /// `2y³ + (z+2)y² + (2z−1)y + z`, satisfied by `C`.
    pub fn cubic_c() -> Self {
        Self::from_terms(&[(0, 3, 2), (1, 2, 1), (0, 2, 2), (1, 1, 2), (0, 1, -1), (1, 0, 1)])
    }

    /// `2y³ + (z²−4z)y² + z²y + z³`, satisfied by `L`.
    pub fn cubic_l() -> Self {
        Self::from_terms(&[(0, 3, 2), (2, 2, 1), (1, 2, -4), (2, 1, 1), (3, 0, 1)])
    }
}

/// True iff `p(z, s(z)) ≡ 0 mod z^{order+1}`.
pub fn verify_poly_relation(s: &PowerSeries, p: &BiPoly, order: usize) -> bool {
    s.order() >= order && p.eval_series(&s.truncate(order)).is_zero()
}

/// `(1/n) [v^{n-1}] φ(v)^n`.
pub fn lagrange_inversion(phi: &PowerSeries, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidSeries("Lagrange inversion needs n >= 1".into()));
    }
    if phi.coeff(0).is_zero() {
        return Err(Error::InvalidSeries("phi(0) must be nonzero".into()));
    }
    if phi.order() + 1 < n {
        return Err(Error::InvalidSeries(format!(
            "phi known to order {}, need {}",
            phi.order(),
            n - 1
        )));
    }
    let p = phi.truncate(n - 1).pow(n);
    Ok(p.coeff(n - 1) / rat(n as i64))
}

/// Bush series; `labeled[n] = n!·[zⁿ]B`.
#[derive(Clone, Debug)]
pub struct BushSeries {
    pub bk: PowerSeries,
    pub bs_star: PowerSeries,
    pub bs_prime: PowerSeries,
    pub b: PowerSeries,
    pub labeled: Vec<BigUint>,
}

/// `f(w) = 2e^w + e^{-w} - w - 3`.
fn bush_f(w: &PowerSeries) -> Result<PowerSeries> {
    let n = w.order();
    let e = w.exp()?;
    let einv = (-w).exp()?;
    let mut out = &(&e.scale(&rat(2)) + &einv) - w;
    out.set_coeff(0, out.coeff(0) - rat(3));
    debug_assert!(out.truncate(1.min(n)).is_zero());
    Ok(out)
}

pub fn solve_bush_series(order: usize) -> Result<BushSeries> {
    if order == 0 {
        return Err(Error::InvalidSeries("order must be >= 1".into()));
    }
    // f has valuation 2, so each pass fixes one more coefficient
    let mut bk = PowerSeries::var(order);
    for k in 2..=order {
        let w = bk.truncate(k);
        let next = &PowerSeries::var(k) + &bush_f(&w)?;
        bk.set_coeff(k, next.coeff(k));
    }
    let neg_exp = (-&bk).exp()?;
    let bs_prime = &PowerSeries::one(order) - &neg_exp;
    let mut g = &(&bk + &bk) + &bs_prime;
    g = &g - &PowerSeries::var(order);
    let b = g.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));

    let mut fact = BigInt::one();
    let mut scaled = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            fact *= n;
        }
        scaled.push(b.coeff(n) * BigRational::from_integer(fact.clone()));
    }
    let labeled = PowerSeries::from_coeffs(scaled, order).naturals("B")?;
    Ok(BushSeries {
        bs_star: bk.clone(),
        bk,
        bs_prime,
        b,
        labeled,
    })
}

/// Cordage series.
#[derive(Clone, Debug)]
pub struct CSeries {
    pub ct: PowerSeries,
    pub cd_star: PowerSeries,
    pub cd_prime: PowerSeries,
    pub c: PowerSeries,
    pub l: PowerSeries,
}

fn newton_ct(order: usize) -> Result<PowerSeries> {
    let p = BiPoly::cubic_ct();
    let dp = p.y_derivative();
    let mut y = PowerSeries::var(order.max(1));
    let mut prec = 1;
    loop {
        prec = (2 * prec).min(order.max(1));
        let yk = y.truncate(prec);
        let step = p.eval_series(&yk).div(&dp.eval_series(&yk))?;
        y = &yk - &step;
        if prec == order.max(1) {
            break;
        }
    }
    // one extra pass absorbs any coefficient the doubling left unsettled
    let step = p.eval_series(&y).div(&dp.eval_series(&y))?;
    Ok((&y - &step).truncate(order))
}

pub fn solve_c(order: usize) -> Result<CSeries> {
    if order == 0 {
        return Err(Error::InvalidSeries("order must be >= 1".into()));
    }
    let z = PowerSeries::var(order);
    let one = PowerSeries::one(order);
    let ct = newton_ct(order)?;
    let inv = (&one - &ct).inverse()?;
    let c = &ct * &inv;
    let l = &z + &(&z * &c);
    let cd_prime = &z + &(&(&ct * &ct).scale(&rat(2)) * &inv);
    for (i, v) in c.integers("C")?.iter().enumerate().skip(1) {
        if v <= &BigInt::zero() {
            return Err(Error::NonIntegral {
                series: "C",
                index: i,
                value: v.to_string(),
            });
        }
    }
    l.naturals("L")?;
    Ok(CSeries {
        cd_star: ct.clone(),
        ct,
        cd_prime,
        c,
        l,
    })
}

/// `C_n = (1/n) Σ_k binom(n-1+k, n-1) binom(2n+k, n-1-k) 2^k`.
pub fn cn_closed_form(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut sum = BigUint::zero();
    for k in 0..n {
        sum += (binom(n - 1 + k, n - 1) * binom(2 * n + k, n - 1 - k)) << k;
    }
    sum / BigUint::from(n)
}

pub(crate) fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `A` from `A = 1 + L(zA²)`, with `L` taken from [`solve_c`].
pub fn solve_a(order: usize) -> Result<PowerSeries> {
    let l = solve_c(order.max(1))?.l;
    let mut a = PowerSeries::one(order);
    // L has valuation 1 and zA² has valuation 1, so pass k settles [z^k]
    for k in 1..=order {
        let ak = a.truncate(k);
        let inner = (&ak * &ak).shift(1);
        let next = l.truncate(k).compose(&inner)?;
        a.set_coeff(k, next.coeff(k));
    }
    a.naturals("A")?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries, range: std::ops::RangeInclusive<usize>) -> Vec<u64> {
        range
            .map(|i| s.coeff(i).to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn c_first_terms() {
        let cs = solve_c(10).unwrap();
        assert_eq!(
            ints(&cs.c, 1..=10),
            [1, 4, 27, 226, 2116, 21218, 222851, 2420134, 26954622, 306203536]
        );
        for n in 1..=10 {
            assert_eq!(cn_closed_form(n), cs.c.coeff(n).to_integer().to_biguint().unwrap());
        }
    }

    #[test]
    fn c_system_holds() {
        let n = 20;
        let cs = solve_c(n).unwrap();
        let one = PowerSeries::one(n);
        let z = PowerSeries::var(n);
        let inv = (&one - &cs.cd_star).inverse().unwrap();
        let inv2 = &inv * &inv;
        let geo_tail = &inv2 - &one;
        // C_T = z + C_D*²/(1−C_D*) + C_D'·(1/(1−C_D*)² − 1)
        let rhs1 = &(&z + &(&(&cs.cd_star * &cs.cd_star) * &inv)) + &(&cs.cd_prime * &geo_tail);
        assert_eq!(cs.ct, rhs1);
        let half = BigRational::new(1.into(), 2.into());
        let sum = &(&(&cs.ct + &cs.cd_star) + &cs.cd_prime) - &z;
        assert_eq!(cs.c, sum.scale(&half));
    }

    #[test]
    fn bush_counts() {
        let bs = solve_bush_series(12).unwrap();
        let head: Vec<u64> = bs.labeled[..6].iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(head, [0, 1, 4, 38, 596, 13072]);
        assert_eq!(bs.labeled[12], BigUint::from(5052555752407424u64));
    }

    #[test]
    fn a_first_terms() {
        let a = solve_a(10).unwrap();
        assert_eq!(
            ints(&a, 0..=10),
            [1, 1, 3, 15, 105, 923, 9417, 105815, 1267681, 15875631, 205301361]
        );
        assert!(verify_poly_relation(&a, &BiPoly::sextic_a(), 10));
    }

    #[test]
    fn lagrange_matches_c() {
        let n = 12;
        // φ(v) = (1+v)²/(1−2v−2v²)
        let num = PowerSeries::from_ints(&[1, 2, 1], n);
        let den = PowerSeries::from_ints(&[1, -2, -2], n);
        let phi = num.div(&den).unwrap();
        let cs = solve_c(n).unwrap();
        for k in 1..=n {
            assert_eq!(lagrange_inversion(&phi, k).unwrap(), cs.c.coeff(k));
        }
        assert_eq!(lagrange_inversion(&PowerSeries::one(3), 1).unwrap(), rat(1));
        assert!(lagrange_inversion(&PowerSeries::var(3), 2).is_err());
    }

    #[test]
    fn relation_checks() {
        let z = PowerSeries::var(8);
        let p = BiPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
        assert!(verify_poly_relation(&z, &p, 8));
        let mut c = solve_c(8).unwrap().c;
        assert!(verify_poly_relation(&c, &BiPoly::cubic_c(), 8));
        c.set_coeff(5, c.coeff(5) + rat(1));
        assert!(!verify_poly_relation(&c, &BiPoly::cubic_c(), 8));
    }
}
