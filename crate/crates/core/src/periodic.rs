//! Symbolic periodic coefficients for quasi-polynomials.
//!
//! Provides: [`PeriodicSymbol`], [`PeriodicPolynomial`], [`QuasiPolynomial`].
//!
//! The atom `fmod(p*t, q)` denotes the representative of `p*t` modulo `q` in
//! `[0, q)`, as a function of an integer dilation parameter `t`. Symbols are
//! kept canonical — `p` reduced modulo `q`, common factors pulled out as
//! rational scalars — so that equal functions of `t` have equal
//! representations whenever they are built through the public constructors.

use crate::error::Error;
use crate::series::Coeff;
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A symbol raised to a power, flattened to (p, q, exponent) for
/// serialization.
pub type SymbolPower = (Int, Int, u32);

/// The canonical atom `fmod(p*t, q)` with `0 < p < q`, `gcd(p, q) = 1`,
/// `q >= 2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PeriodicSymbol {
    p: Int,
    q: Int,
}

impl PeriodicSymbol {
    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    /// Value of the symbol at dilation `t`.
    pub fn evaluate(&self, t: &Int) -> Int {
        (&self.p * t).mod_floor(&self.q)
    }
}

impl fmt::Display for PeriodicSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_one() {
            write!(f, "fmod(t, {})", self.q)
        } else {
            write!(f, "fmod({}*t, {})", self.p, self.q)
        }
    }
}

/// A product of symbol powers; the empty product is the constant monomial.
type Monomial = BTreeMap<PeriodicSymbol, u32>;

/// A polynomial in periodic symbols with rational coefficients.
///
/// Represents a periodic function of the integer dilation parameter.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PeriodicPolynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl PeriodicPolynomial {
    pub fn from_rational(r: &Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::new(), r.clone());
        }
        PeriodicPolynomial { terms }
    }

    /// The function `fmod(p*t, q)` as a canonical polynomial: the arguments
    /// are reduced modulo `q` and common factors become rational scalars, so
    /// e.g. `fmod(2*t, 4)` is stored as `2 * fmod(t, 2)`.
    pub fn symbol(p: &Int, q: &Int) -> Self {
        let q = q.abs();
        if q.is_zero() || q.is_one() {
            return PeriodicPolynomial::default();
        }
        let p = p.mod_floor(&q);
        if p.is_zero() {
            return PeriodicPolynomial::default();
        }
        let g = p.gcd(&q);
        let (p, q) = (&p / &g, &q / &g);
        if q.is_one() {
            // Fully periodic in steps of one: identically zero.
            return PeriodicPolynomial::default();
        }
        let mut m = Monomial::new();
        m.insert(PeriodicSymbol { p, q }, 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::from_integer(g));
        PeriodicPolynomial { terms }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// The constant value, if the polynomial carries no symbols.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&Monomial::new())
                    .cloned()
                    .unwrap_or_else(Rat::zero),
            )
        } else {
            None
        }
    }

    /// Value at dilation `t`.
    pub fn evaluate(&self, t: &Int) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (sym, &e) in m {
                let sv = Rat::from_integer(sym.evaluate(t));
                for _ in 0..e {
                    v *= &sv;
                }
            }
            acc += v;
        }
        acc
    }

    /// Least common period of all symbols (1 for constants).
    pub fn period(&self) -> Int {
        let mut period = Int::one();
        for m in self.terms.keys() {
            for sym in m.keys() {
                period = period.lcm(&sym.q);
            }
        }
        period
    }

    /// Terms as (coefficient, [(p, q, exponent)]) for serialization.
    pub fn term_list(&self) -> Vec<(Rat, Vec<SymbolPower>)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let syms = m
                    .iter()
                    .map(|(s, &e)| (s.p.clone(), s.q.clone(), e))
                    .collect();
                (c.clone(), syms)
            })
            .collect()
    }

    fn insert_add(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

impl Add for PeriodicPolynomial {
    type Output = PeriodicPolynomial;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert_add(m, c);
        }
        out
    }
}

impl Sub for PeriodicPolynomial {
    type Output = PeriodicPolynomial;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PeriodicPolynomial {
    type Output = PeriodicPolynomial;

    fn neg(self) -> Self {
        let mut out = self;
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

impl Mul for PeriodicPolynomial {
    type Output = PeriodicPolynomial;

    fn mul(self, rhs: Self) -> Self {
        let mut out = PeriodicPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (sym, &e) in mb {
                    *m.entry(sym.clone()).or_insert(0) += e;
                }
                out.insert_add(m, ca * cb);
            }
        }
        out
    }
}

impl Zero for PeriodicPolynomial {
    fn zero() -> Self {
        PeriodicPolynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PeriodicPolynomial {
    fn one() -> Self {
        PeriodicPolynomial::from_rational(&Rat::one())
    }
}

impl Coeff for PeriodicPolynomial {
    fn from_rat(r: &Rat) -> Self {
        PeriodicPolynomial::from_rational(r)
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        let mut out = PeriodicPolynomial::default();
        if r.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * r);
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rat) -> fmt::Result {
    if m.is_empty() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        // No leading factor.
    } else if (-c).is_one() {
        write!(f, "-")?;
    } else {
        write!(f, "{c}*")?;
    }
    let mut first = true;
    for (sym, &e) in m {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{sym}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PeriodicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 && c.is_positive() {
                write!(f, "+")?;
            }
            write_monomial(f, m, c)?;
        }
        Ok(())
    }
}

/// A polynomial in the dilation parameter `t` whose coefficients are
/// periodic functions of `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiPolynomial {
    /// coeffs[i] multiplies t^i.
    coeffs: Vec<PeriodicPolynomial>,
}

impl QuasiPolynomial {
    pub fn new(coeffs: Vec<PeriodicPolynomial>) -> Self {
        QuasiPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[PeriodicPolynomial] {
        &self.coeffs
    }

    /// Highest power with a nonzero coefficient (0 for the zero function).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    pub fn coefficient(&self, i: usize) -> Result<&PeriodicPolynomial, Error> {
        self.coeffs.get(i).ok_or(Error::IndexOutOfRange)
    }

    /// Value at integer dilation `t`.
    pub fn evaluate(&self, t: &Int) -> Rat {
        let tr = Rat::from_integer(t.clone());
        let mut acc = Rat::zero();
        let mut pw = Rat::one();
        for c in &self.coeffs {
            acc += c.evaluate(t) * &pw;
            pw *= &tr;
        }
        acc
    }

    /// Least common period of all coefficients.
    pub fn period(&self) -> Int {
        let mut period = Int::one();
        for c in &self.coeffs {
            period = period.lcm(&c.period());
        }
        period
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Fold the sign of negative constant coefficients into the
            // separator; symbolic coefficients are parenthesized as-is.
            let mut constant = c.as_constant();
            if wrote {
                let negative = constant.as_ref().map(|r| r.is_negative()).unwrap_or(false);
                write!(f, " {} ", if negative { "-" } else { "+" })?;
                if negative {
                    constant = constant.map(|r| -r);
                }
            }
            match (&constant, i) {
                (Some(r), 0) => write!(f, "{r}")?,
                (Some(r), _) if r.is_one() => write!(f, "t")?,
                (Some(r), _) => write!(f, "{r}*t")?,
                (None, 0) => write!(f, "({c})")?,
                (None, _) => write!(f, "({c})*t")?,
            }
            if i >= 2 {
                write!(f, "^{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
