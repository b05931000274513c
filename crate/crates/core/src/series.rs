//! Truncated bivariate Laurent series over a generic coefficient ring, plus
//! the Bernoulli-polynomial series underlying all summation formulas.
//!
//! Provides: [`Coeff`], [`Series2`], [`BernoulliTable`],
//! [`bernoulli_polynomial`], [`b_series`], [`inverse_linear_form`].
//!
//! Series are truncated by total degree: a series of order `M` stores exact
//! coefficients for every retained term of total degree at most `M`. Inverse
//! linear forms are expanded in the fixed iterated direction with `xi2` outer
//! and `xi1` inner, and carry an explicit slack so that products with up to a
//! double pole stay exact through the truncation order.

use crate::error::Error;
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Neg, Sub};

/// Coefficient ring for series: rationals, or symbolic periodic polynomials.
pub trait Coeff:
    Clone + PartialEq + std::fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    /// Embeds an exact rational constant.
    fn from_rat(r: &Rat) -> Self;

    /// Multiplies by an exact rational constant.
    fn mul_rat(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r)
    }
}

impl Coeff for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        self * r
    }
}

/// Shared tables: binomial coefficients, factorials, and the Bernoulli
/// polynomials b(n, u) with b(1, u) = u - 1/2.
pub struct BernoulliTable {
    binom: Vec<Vec<Int>>,
    factorial: Vec<Int>,
    /// bpoly[n][k] = coefficient of u^k in b(n, u).
    bpoly: Vec<Vec<Rat>>,
    /// (den, ints) with ints[k] = den * bpoly[n][k], all integral.
    bpoly_scaled: Vec<(Int, Vec<Int>)>,
}

impl BernoulliTable {
    /// Builds all tables for indices up to and including `max_n`.
    pub fn new(max_n: usize) -> BernoulliTable {
        let mut binom: Vec<Vec<Int>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![Int::one()];
            for k in 1..=n {
                let prev = &binom[n - 1];
                let left = if k < n { prev[k].clone() } else { Int::zero() };
                row.push(left + &prev[k - 1]);
            }
            binom.push(row);
        }
        let mut factorial = vec![Int::one()];
        for n in 1..=max_n {
            let next = &factorial[n - 1] * Int::from(n);
            factorial.push(next);
        }
        // Bernoulli numbers via sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1.
        let mut numbers: Vec<Rat> = vec![Rat::one()];
        for m in 1..=max_n {
            let mut acc = Rat::zero();
            for (j, bj) in numbers.iter().enumerate() {
                let c = if m < max_n {
                    binom[m + 1][j].clone()
                } else {
                    big_binom(m + 1, j)
                };
                acc += Rat::from_integer(c) * bj;
            }
            numbers.push(-acc / Rat::from_integer(Int::from(m as i64 + 1)));
        }
        // b(n, u) = sum_j C(n, j) B_j u^(n-j).
        let mut bpoly: Vec<Vec<Rat>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut coeffs = vec![Rat::zero(); n + 1];
            for j in 0..=n {
                coeffs[n - j] = Rat::from_integer(binom[n][j].clone()) * &numbers[j];
            }
            bpoly.push(coeffs);
        }
        let bpoly_scaled = bpoly
            .iter()
            .map(|coeffs| {
                let mut den = Int::one();
                for c in coeffs {
                    den = num_integer::Integer::lcm(&den, c.denom());
                }
                let ints = coeffs
                    .iter()
                    .map(|c| c.numer() * &den / c.denom())
                    .collect();
                (den, ints)
            })
            .collect();
        BernoulliTable {
            binom,
            factorial,
            bpoly,
            bpoly_scaled,
        }
    }

    pub fn binom(&self, n: usize, k: usize) -> Int {
        if k > n {
            Int::zero()
        } else {
            self.binom[n][k].clone()
        }
    }

    pub fn factorial(&self, n: usize) -> &Int {
        &self.factorial[n]
    }

    /// Coefficients of b(n, u), ascending powers of u.
    pub fn b_poly(&self, n: usize) -> &[Rat] {
        &self.bpoly[n]
    }

    /// The common denominator of b(n, u)'s coefficients.
    pub fn b_poly_denominator(&self, n: usize) -> &Int {
        &self.bpoly_scaled[n].0
    }

    /// Evaluates den * b(n, u) at an integer u, entirely in integers, where
    /// den is [`Self::b_poly_denominator`].
    pub fn eval_b_scaled(&self, n: usize, u: &Int) -> Int {
        let ints = &self.bpoly_scaled[n].1;
        let mut acc = ints[n].clone();
        for k in (0..n).rev() {
            acc = acc * u + &ints[k];
        }
        acc
    }

    /// Evaluates b(n, u) at a coefficient-ring element by Horner's rule.
    pub fn eval_b<C: Coeff>(&self, n: usize, u: &C) -> C {
        let coeffs = &self.bpoly[n];
        let mut acc = C::from_rat(&coeffs[n]);
        for k in (0..n).rev() {
            acc = acc * u.clone() + C::from_rat(&coeffs[k]);
        }
        acc
    }

    /// The coefficient sequence of the one-variable series
    /// e^(uX)/(1 - e^X) + 1/X = -sum_{n>=0} b(n+1, u)/(n+1)! X^n,
    /// returned for n = 0..=order.
    pub fn b_coefficients<C: Coeff>(&self, u: &C, order: usize) -> Vec<C> {
        (0..=order)
            .map(|n| {
                let val = self.eval_b(n + 1, u);
                (-val).mul_rat(&Rat::new(Int::one(), self.factorial[n + 1].clone()))
            })
            .collect()
    }
}

fn big_binom(n: usize, k: usize) -> Int {
    let mut r = Int::one();
    for i in 0..k {
        r = r * Int::from(n - i) / Int::from(i + 1);
    }
    r
}

/// Coefficients of the Bernoulli polynomial b(n, u), ascending powers of u.
pub fn bernoulli_polynomial(n: usize) -> Vec<Rat> {
    BernoulliTable::new(n).b_poly(n).to_vec()
}

/// A bivariate Laurent series truncated by total degree.
///
/// Coefficients of total degree at most `order` are exact for all retained
/// exponent pairs; `e1_cap`, when present, bounds the first exponent of
/// reliably retained terms (used by inverse expansions whose first exponent
/// is unbounded at fixed total degree).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series2<C: Coeff> {
    terms: BTreeMap<(i64, i64), C>,
    order: i64,
    e1_cap: Option<i64>,
}

impl<C: Coeff> Series2<C> {
    pub fn zero(order: i64) -> Self {
        Series2 {
            terms: BTreeMap::new(),
            order,
            e1_cap: None,
        }
    }

    pub fn constant(c: C, order: i64) -> Self {
        let mut s = Series2::zero(order);
        s.insert_add(0, 0, c);
        s
    }

    pub fn monomial(e1: i64, e2: i64, c: C, order: i64) -> Self {
        let mut s = Series2::zero(order);
        s.insert_add(e1, e2, c);
        s
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn e1_cap(&self) -> Option<i64> {
        self.e1_cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds into one coefficient slot, keeping the map free of zeros.
    pub fn insert_add(&mut self, e1: i64, e2: i64, c: C) {
        if c.is_zero() || e1 + e2 > self.order {
            return;
        }
        if let Some(cap) = self.e1_cap {
            if e1 > cap {
                return;
            }
        }
        let entry = self.terms.entry((e1, e2)).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(e1, e2));
        }
    }

    /// The retained coefficient at (e1, e2), or zero; fails when the request
    /// lies outside the truncation guarantee.
    pub fn coefficient(&self, e1: i64, e2: i64) -> Result<C, Error> {
        if e1 + e2 > self.order {
            return Err(Error::OrderExceeded);
        }
        if let Some(cap) = self.e1_cap {
            if e1 > cap {
                return Err(Error::OrderExceeded);
            }
        }
        Ok(self.terms.get(&(e1, e2)).cloned().unwrap_or_else(C::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.terms.iter()
    }

    /// All exponents are non-negative (a truncated Taylor series).
    pub fn is_taylor(&self) -> bool {
        self.terms.keys().all(|&(e1, e2)| e1 >= 0 && e2 >= 0)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order: self.order,
            e1_cap: self.e1_cap,
        };
        if r.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(*k, v.mul_rat(r));
        }
        out
    }

    /// Sum, truncated to the weaker of the two guarantees.
    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let e1_cap = match (self.e1_cap, rhs.e1_cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order,
            e1_cap,
        };
        for (&(e1, e2), v) in self.terms.iter().chain(rhs.terms.iter()) {
            out.insert_add(e1, e2, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Cauchy product, discarding terms of total degree beyond the weaker
    /// order and of first exponent beyond the weaker cap.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let e1_cap = match (self.e1_cap, rhs.e1_cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order,
            e1_cap,
        };
        for (&(a1, a2), ca) in &self.terms {
            for (&(b1, b2), cb) in &rhs.terms {
                let e1 = a1 + b1;
                let e2 = a2 + b2;
                if e1 + e2 > order {
                    continue;
                }
                if let Some(cap) = e1_cap {
                    if e1 > cap {
                        continue;
                    }
                }
                out.insert_add(e1, e2, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Restricts the power of the first variable, dropping higher terms and
    /// recording the cap.  Products of truncated inverses are only complete
    /// up to a cap, so callers use this to keep exactly the trustworthy
    /// window.
    pub fn restrict_var1(&self, cap: i64) -> Self {
        let cap = match self.e1_cap {
            Some(c) => c.min(cap),
            None => cap,
        };
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order: self.order,
            e1_cap: Some(cap),
        };
        for (&(e1, e2), v) in &self.terms {
            if e1 <= cap {
                out.terms.insert((e1, e2), v.clone());
            }
        }
        out
    }

    /// Restricts to a lower truncation order.
    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot raise a truncation order");
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order,
            e1_cap: self.e1_cap,
        };
        for (&(e1, e2), v) in &self.terms {
            if e1 + e2 <= order {
                out.terms.insert((e1, e2), v.clone());
            }
        }
        out
    }

    /// Divides exactly by the first variable: every term must contain it.
    pub fn div_exact_var1(&self) -> Self {
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order: self.order - 1,
            e1_cap: self.e1_cap,
        };
        for (&(e1, e2), v) in &self.terms {
            assert!(e1 >= 1, "series is not divisible by the first variable");
            out.terms.insert((e1 - 1, e2), v.clone());
        }
        out
    }

    /// Divides exactly by the second variable: every term must contain it.
    pub fn div_exact_var2(&self) -> Self {
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order: self.order - 1,
            e1_cap: self.e1_cap,
        };
        for (&(e1, e2), v) in &self.terms {
            assert!(e2 >= 1, "series is not divisible by the second variable");
            out.terms.insert((e1, e2 - 1), v.clone());
        }
        out
    }

    /// Substitutes homogeneous linear forms for the two variables of a Taylor
    /// series: var1 -> a1*xi1 + b1*xi2, var2 -> a2*xi1 + b2*xi2.
    pub fn substitute_linear_forms(&self, v1: (&Rat, &Rat), v2: (&Rat, &Rat)) -> Self {
        assert!(self.is_taylor(), "substitution requires a Taylor series");
        let max1 = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max2 = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let rows1 = binomial_rows(v1.0, v1.1, max1);
        let rows2 = binomial_rows(v2.0, v2.1, max2);
        let mut out = Series2 {
            terms: BTreeMap::new(),
            order: self.order,
            e1_cap: self.e1_cap,
        };
        for (&(i, j), c) in &self.terms {
            let (i, j) = (i as usize, j as usize);
            // Convolve the two binomial rows: coefficient of xi1^e in the
            // degree i+j homogeneous product.
            for e in 0..=(i + j) {
                let lo = e.saturating_sub(j);
                let hi = e.min(i);
                if lo > hi {
                    continue;
                }
                let mut conv = Rat::zero();
                for k in lo..=hi {
                    conv += &rows1[i][k] * &rows2[j][e - k];
                }
                if !conv.is_zero() {
                    out.insert_add(e as i64, (i + j - e) as i64, c.mul_rat(&conv));
                }
            }
        }
        out
    }
}

/// rows[n][k] = coefficient of x^k in (a x + b)^n.
fn binomial_rows(a: &Rat, b: &Rat, max_n: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![Rat::one()]);
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = vec![Rat::zero(); n + 1];
        for k in 0..n {
            let v = &prev[k];
            row[k] += v * b;
            row[k + 1] += v * a;
        }
        rows.push(row);
    }
    rows
}

/// The series B(X, u) = e^(uX)/(1 - e^X) + 1/X expanded in the linear form
/// X = a*xi1 + b*xi2, truncated at total degree `order`.
///
/// Analytic for every u; the constant term is 1/2 - u + floor-part effects
/// only through u itself.
pub fn b_series<C: Coeff>(
    table: &BernoulliTable,
    u: &C,
    lin: (&Rat, &Rat),
    order: i64,
) -> Series2<C> {
    assert!(order >= 0);
    let betas = table.b_coefficients(u, order as usize);
    let rows = binomial_rows(lin.0, lin.1, order as usize);
    let mut out = Series2::zero(order);
    for (n, beta) in betas.iter().enumerate() {
        if beta.is_zero() {
            continue;
        }
        for (j, w) in rows[n].iter().enumerate() {
            if !w.is_zero() {
                out.insert_add(j as i64, (n - j) as i64, beta.mul_rat(w));
            }
        }
    }
    out
}

/// The iterated Laurent expansion of 1/(v.x*xi1 + v.y*xi2), `xi2` outer.
///
/// For v.y != 0 this is (1/v.y) * sum_k (-v.x/v.y)^k xi1^k xi2^(-1-k); terms
/// with first exponent up to `order + slack` are retained so that products
/// with up to `slack` pole factors stay exact through `order`.
pub fn inverse_linear_form(
    v: &crate::geometry::IntVec2,
    order: i64,
    slack: i64,
) -> Result<Series2<Rat>, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let cap = order + slack;
    let mut out = Series2 {
        terms: BTreeMap::new(),
        order,
        e1_cap: Some(cap),
    };
    if v.y.is_zero() {
        out.terms.insert((-1, 0), Rat::new(Int::one(), v.x.clone()));
        return Ok(out);
    }
    let ratio = -Rat::new(v.x.clone(), v.y.clone());
    let mut c = Rat::new(Int::one(), v.y.clone());
    for k in 0..=cap {
        if !c.is_zero() {
            out.terms.insert((k, -1 - k), c.clone());
        }
        c *= &ratio;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::IntVec2;
    use crate::{rat, rat_int};

    #[test]
    fn bernoulli_polynomials_low_degrees() {
        assert_eq!(bernoulli_polynomial(0), vec![rat_int(1)]);
        assert_eq!(bernoulli_polynomial(1), vec![rat(-1, 2), rat_int(1)]);
        assert_eq!(
            bernoulli_polynomial(2),
            vec![rat(1, 6), rat_int(-1), rat_int(1)]
        );
        assert_eq!(
            bernoulli_polynomial(3),
            vec![rat_int(0), rat(1, 2), rat(-3, 2), rat_int(1)]
        );
    }

    #[test]
    fn bernoulli_difference_identity() {
        // b(n, u+1) - b(n, u) = n u^(n-1), checked on sample points.
        let t = BernoulliTable::new(8);
        for n in 1..=8usize {
            for u in [-3i64, -1, 0, 2, 5] {
                let u = rat_int(u);
                let up1 = &u + rat_int(1);
                let diff = t.eval_b(n, &up1) - t.eval_b(n, &u);
                let mut pw = rat_int(1);
                for _ in 0..n - 1 {
                    pw *= &u;
                }
                assert_eq!(diff, rat_int(n as i64) * pw);
            }
        }
    }

    #[test]
    fn scaled_evaluation_matches_rational_evaluation() {
        let t = BernoulliTable::new(9);
        for n in 0..=9usize {
            for u in [-7i64, -1, 0, 1, 4, 30] {
                let den = t.b_poly_denominator(n);
                let scaled = t.eval_b_scaled(n, &Int::from(u));
                assert_eq!(
                    Rat::new(scaled, den.clone()),
                    t.eval_b(n, &rat_int(u)),
                    "b({n}, {u})"
                );
            }
        }
    }

    #[test]
    fn b_series_constant_term() {
        let t = BernoulliTable::new(4);
        let s = b_series(&t, &rat_int(0), (&rat_int(1), &rat_int(0)), 0);
        assert_eq!(s.coefficient(0, 0).unwrap(), rat(1, 2));
        let s = b_series(&t, &rat(1, 2), (&rat_int(1), &rat_int(0)), 0);
        assert_eq!(s.coefficient(0, 0).unwrap(), rat_int(0));
    }

    #[test]
    fn b_series_linear_term_from_generating_function() {
        // e^(uX)/(1-e^X) + 1/X at u = 0 is 1/2 - X/12 + O(X^2), so the
        // degree-one coefficient along X = xi1 + xi2 is -1/12.
        let t = BernoulliTable::new(4);
        let s = b_series(&t, &rat_int(0), (&rat_int(1), &rat_int(1)), 1);
        assert_eq!(s.coefficient(0, 0).unwrap(), rat(1, 2));
        assert_eq!(s.coefficient(1, 0).unwrap(), rat(-1, 12));
        assert_eq!(s.coefficient(0, 1).unwrap(), rat(-1, 12));
    }

    #[test]
    fn two_endpoint_interval_sums() {
        // sum_{n=A}^{B} n^k = k! * [xi^k] (B(xi, A) + B(-xi, -B)): the two
        // half-line series glue into the finite geometric progression.
        let order = 6i64;
        let t = BernoulliTable::new(order as usize + 2);
        for a in -3i64..=2 {
            for b in a..=(a + 4) {
                let s1 = b_series(&t, &rat_int(a), (&rat_int(1), &rat_int(0)), order);
                let s2 = b_series(&t, &rat_int(-b), (&rat_int(-1), &rat_int(0)), order);
                let total = s1.add(&s2);
                for k in 0..=order {
                    let mut expect = rat_int(0);
                    for n in a..=b {
                        let mut pw = rat_int(1);
                        for _ in 0..k {
                            pw *= rat_int(n);
                        }
                        expect += pw;
                    }
                    let mut fact = rat_int(1);
                    for j in 1..=k {
                        fact *= rat_int(j);
                    }
                    assert_eq!(
                        total.coefficient(k, 0).unwrap() * fact,
                        expect,
                        "interval [{a}, {b}], power {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_linear_form_examples() {
        let s = inverse_linear_form(&IntVec2::new(2, 1), 3, 2).unwrap();
        assert_eq!(s.coefficient(0, -1).unwrap(), rat_int(1));
        assert_eq!(s.coefficient(1, -2).unwrap(), rat_int(-2));
        assert_eq!(s.coefficient(2, -3).unwrap(), rat_int(4));

        let s = inverse_linear_form(&IntVec2::new(1, 0), 3, 2).unwrap();
        assert_eq!(s.coefficient(-1, 0).unwrap(), rat_int(1));

        let s = inverse_linear_form(&IntVec2::new(0, 3), 3, 2).unwrap();
        assert_eq!(s.coefficient(0, -1).unwrap(), rat(1, 3));

        assert_eq!(
            inverse_linear_form(&IntVec2::new(0, 0), 3, 2).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn inverse_times_linear_is_one() {
        // (a xi1 + b xi2) * expansion of its inverse telescopes to 1.
        for (a, b) in [(2i64, 1i64), (1, -3), (-4, 5), (3, 0), (0, 2)] {
            let v = IntVec2::new(a, b);
            let inv = inverse_linear_form(&v, 5, 2).unwrap();
            let mut lin = Series2::zero(5);
            lin.insert_add(1, 0, rat_int(a));
            lin.insert_add(0, 1, rat_int(b));
            let prod = lin.multiply(&inv);
            assert_eq!(prod.coefficient(0, 0).unwrap(), rat_int(1));
            for (&(e1, e2), c) in prod.iter() {
                if (e1, e2) != (0, 0) {
                    panic!("unexpected residual term ({e1}, {e2}) = {c}");
                }
            }
        }
    }

    #[test]
    fn multiply_matches_hand_product() {
        // (1 + xi1) * (1 + xi2) = 1 + xi1 + xi2 + xi1 xi2.
        let mut a = Series2::zero(3);
        a.insert_add(0, 0, rat_int(1));
        a.insert_add(1, 0, rat_int(1));
        let mut b = Series2::zero(3);
        b.insert_add(0, 0, rat_int(1));
        b.insert_add(0, 1, rat_int(1));
        let p = a.multiply(&b);
        assert_eq!(p.coefficient(0, 0).unwrap(), rat_int(1));
        assert_eq!(p.coefficient(1, 0).unwrap(), rat_int(1));
        assert_eq!(p.coefficient(0, 1).unwrap(), rat_int(1));
        assert_eq!(p.coefficient(1, 1).unwrap(), rat_int(1));
    }

    #[test]
    fn coefficient_outside_order_is_rejected() {
        let s: Series2<Rat> = Series2::zero(2);
        assert_eq!(s.coefficient(2, 1).unwrap_err(), Error::OrderExceeded);
        assert!(s.coefficient(2, 0).is_ok());
        let inv = inverse_linear_form(&IntVec2::new(2, 1), 2, 2).unwrap();
        // Beyond the first-exponent cap the expansion is not retained.
        assert_eq!(inv.coefficient(5, -7).unwrap_err(), Error::OrderExceeded);
    }

    #[test]
    fn truncation_is_consistent_across_orders() {
        let t = BernoulliTable::new(10);
        let low = b_series(&t, &rat(3, 2), (&rat(2, 3), &rat_int(-1)), 4);
        let high = b_series(&t, &rat(3, 2), (&rat(2, 3), &rat_int(-1)), 8);
        for e1 in 0..=4i64 {
            for e2 in 0..=(4 - e1) {
                assert_eq!(
                    low.coefficient(e1, e2).unwrap(),
                    high.coefficient(e1, e2).unwrap()
                );
            }
        }
    }

    #[test]
    fn substitution_expands_linear_forms() {
        // Series y1*y2 under y1 = xi1 + xi2, y2 = xi1 - xi2 becomes
        // xi1^2 - xi2^2.
        let mut s = Series2::zero(4);
        s.insert_add(1, 1, rat_int(1));
        let out =
            s.substitute_linear_forms((&rat_int(1), &rat_int(1)), (&rat_int(1), &rat_int(-1)));
        assert_eq!(out.coefficient(2, 0).unwrap(), rat_int(1));
        assert_eq!(out.coefficient(0, 2).unwrap(), rat_int(-1));
        assert_eq!(out.coefficient(1, 1).unwrap(), rat_int(0));
    }

    #[test]
    fn exact_division_shifts_exponents() {
        let mut s = Series2::zero(4);
        s.insert_add(1, 0, rat_int(3));
        s.insert_add(2, 1, rat(1, 2));
        let d = s.div_exact_var1();
        assert_eq!(d.coefficient(0, 0).unwrap(), rat_int(3));
        assert_eq!(d.coefficient(1, 1).unwrap(), rat(1, 2));
        assert_eq!(d.order(), 3);
    }
}
