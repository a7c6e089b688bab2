//! Integer polynomials in one and two variables, resultants and Sturm chains.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PowerSeries;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact quotient in `Z[x]`, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let d = divisor.degree()?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return self.is_zero().then(Self::default);
        }
        let mut q = vec![BigInt::zero(); rem.len() - d];
        for k in (0..q.len()).rev() {
            let top = rem[k + d].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Removes the largest power of `x` dividing the polynomial.
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> (BigInt, Self) {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return (g, self.clone());
        }
        let g = if self.leading().is_negative() { -g } else { g };
        (g.clone(), Self::new(self.coeffs.iter().map(|c| c / &g).collect()))
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` over the rationals.
    pub fn sturm_chain(&self) -> Vec<Vec<BigRational>> {
        let to_q = |p: &IntPoly| -> Vec<BigRational> {
            p.coeffs.iter().cloned().map(BigRational::from_integer).collect()
        };
        let mut chain = vec![to_q(self), to_q(&self.derivative())];
        while chain.last().is_some_and(|p| !p.is_empty()) {
            let n = chain.len();
            let r = rat_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = self.sturm_chain();
        let v = |x: &BigRational| sign_changes(&chain, x);
        v(lo).saturating_sub(v(hi))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let signs_at = |plus: bool| -> usize {
            let mut signs = Vec::new();
            for p in &chain {
                let Some(lead) = p.last() else { continue };
                let deg_odd = (p.len() - 1) % 2 == 1;
                let mut s = lead.signum();
                if !plus && deg_odd {
                    s = -s;
                }
                if !s.is_zero() {
                    signs.push(s.is_positive());
                }
            }
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        signs_at(false).saturating_sub(signs_at(true))
    }
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| rat_eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let top = r.last().cloned().unwrap_or_else(BigRational::zero);
        let shift = r.len() - 1 - db;
        if !top.is_zero() {
            let c = top / &lead;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
        }
        r.pop();
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            match (show_coeff, i) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}*x")?,
                (false, 1) => f.write_str("x")?,
                (true, _) => write!(f, "{mag}*x^{i}")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in `z` and `y` with integer coefficients, stored as
/// coefficients of `y^j` that are polynomials in `z`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    by_y: Vec<IntPoly>,
}

impl BiPoly {
    /// Builds `Σ c · z^i · y^j` from `(i, j, c)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let ymax = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let zmax = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut grid = vec![vec![BigInt::zero(); zmax + 1]; ymax + 1];
        for &(i, j, c) in terms {
            grid[j][i] += c;
        }
        Self {
            by_y: grid.into_iter().map(IntPoly::new).collect(),
        }
    }

    pub fn y_degree(&self) -> usize {
        self.by_y.len().saturating_sub(1)
    }

    /// Coefficient of `y^j` as a polynomial in `z`.
    pub fn y_coeff(&self, j: usize) -> &IntPoly {
        &self.by_y[j]
    }

    pub fn z_degree(&self) -> usize {
        self.by_y.iter().filter_map(IntPoly::degree).max().unwrap_or(0)
    }

    pub fn y_derivative(&self) -> Self {
        Self {
            by_y: self
                .by_y
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&BigInt::from(j)))
                .collect(),
        }
    }

    /// `p(z, s(z))` truncated at the order of `s`.
    pub fn eval_series(&self, s: &PowerSeries) -> PowerSeries {
        let n = s.order();
        let as_series = |p: &IntPoly| {
            PowerSeries::from_coeffs(
                p.coeffs()
                    .iter()
                    .take(n + 1)
                    .cloned()
                    .map(BigRational::from_integer)
                    .collect(),
                n,
            )
        };
        let mut acc = PowerSeries::zero(n);
        for p in self.by_y.iter().rev() {
            acc = &(&acc * s) + &as_series(p);
        }
        acc
    }

    /// The univariate polynomial in `y` obtained at `z = t`.
    fn at_z(&self, t: &BigInt) -> Vec<BigInt> {
        self.by_y.iter().map(|p| p.eval_int(t)).collect()
    }
}

/// Determinant by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant of two polynomials given with formal degrees.
fn sylvester(p: &[BigInt], q: &[BigInt]) -> BigInt {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss(rows)
}

/// Interpolates integer values at `x = 0, 1, ..., d` by Newton differences.
fn interpolate(values: &[BigInt]) -> Option<IntPoly> {
    let n = values.len();
    let mut diffs: Vec<BigRational> = values.iter().cloned().map(BigRational::from_integer).collect();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diffs[0].clone());
        for i in 0..n - k - 1 {
            diffs[i] = (&diffs[i + 1] - &diffs[i]) / BigRational::from_integer(BigInt::from(k + 1));
        }
        diffs.truncate(n - k - 1);
    }
    // expand Σ c_k · x(x-1)...(x-k+1)
    let mut poly = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            poly[i] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * BigRational::from_integer(BigInt::from(k));
        }
        basis = next;
    }
    poly.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

/// Discriminant in `y` of `p(z, y)`, a polynomial in `z`:
/// `(-1)^{m(m-1)/2} Res_y(p, ∂p/∂y) / lc_y(p)`.
pub fn discriminant(p: &BiPoly) -> IntPoly {
    let m = p.y_degree();
    let dp = p.y_derivative();
    let bound = (m - 1) * p.z_degree() + m * dp.z_degree();
    let values: Vec<BigInt> = (0..=bound)
        .map(|t| {
            let t = BigInt::from(t);
            sylvester(&p.at_z(&t), &dp.at_z(&t))
        })
        .collect();
    let res = interpolate(&values).expect("integer resultant");
    let res = if (m * (m - 1) / 2) % 2 == 1 {
        res.scale(&BigInt::from(-1))
    } else {
        res
    };
    res.div_exact(p.y_coeff(m))
        .expect("leading coefficient divides the resultant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminant() {
        // y^2 + z y + 1 has discriminant z^2 - 4
        let p = BiPoly::from_terms(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)]);
        assert_eq!(discriminant(&p), IntPoly::from_i64(&[-4, 0, 1]));
    }

    #[test]
    fn cubic_discriminant_matches_formula() {
        // y^3 + a y + b with a = z, b = 1: -4a^3 - 27b^2
        let p = BiPoly::from_terms(&[(0, 3, 1), (1, 1, 1), (0, 0, 1)]);
        assert_eq!(discriminant(&p), IntPoly::from_i64(&[-27, 0, 0, -4]));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(IntPoly::from_i64(&[-1, 1])));
        assert_eq!(a.div_exact(&IntPoly::from_i64(&[2, 1])), None);
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x-3)
        let p = IntPoly::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(p.count_real_roots(), 3);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(p.count_roots(&r(0, 1), &r(5, 2)), 2);
        assert_eq!(p.count_roots(&r(3, 2), &r(3, 1)), 2);
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).count_real_roots(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-12, 164, -49, 4]).to_string(), "4*x^3 - 49*x^2 + 164*x - 12");
        assert_eq!(IntPoly::from_i64(&[0, 1]).to_string(), "x");
    }
}
