//! Bivariate polynomials with exact coefficients, used as summation weights
//! and as the output of differential operators.
//!
//! Provides: [`Poly2`], [`Weight`].

use crate::series::Coeff;
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A polynomial in (x, y) with coefficients in `C`, keyed by exponent pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly2<C: Coeff> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> Poly2<C> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    /// The single term c * x^a * y^b.
    pub fn monomial(a: u32, b: u32, c: C) -> Self {
        let mut p = Poly2::zero();
        p.insert_add(a, b, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn insert_add(&mut self, a: u32, b: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(a, b)) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&(a, b));
                }
            }
            None => {
                self.terms.insert((a, b), c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.insert_add(a, b, c.clone());
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let mut out = Poly2::zero();
        if r.is_zero() {
            return out;
        }
        for (&(a, b), c) in &self.terms {
            out.insert_add(a, b, c.mul_rat(r));
        }
        out
    }

    /// The mixed partial derivative d^(dx+dy) / dx^dx dy^dy.
    pub fn derivative(&self, dx: u32, dy: u32) -> Self {
        let mut out = Poly2::zero();
        for (&(a, b), c) in &self.terms {
            if a < dx || b < dy {
                continue;
            }
            let mut factor = Int::one();
            for k in 0..dx {
                factor *= Int::from(a - k);
            }
            for k in 0..dy {
                factor *= Int::from(b - k);
            }
            out.insert_add(a - dx, b - dy, c.mul_rat(&Rat::from_integer(factor)));
        }
        out
    }

    /// Value at a rational point.
    pub fn evaluate(&self, x: &Rat, y: &Rat) -> C {
        let mut acc = C::zero();
        for (&(a, b), c) in &self.terms {
            let mut pw = Rat::one();
            for _ in 0..a {
                pw *= x;
            }
            for _ in 0..b {
                pw *= y;
            }
            acc = acc + c.mul_rat(&pw);
        }
        acc
    }
}

/// A summation weight: a single monomial or a full rational polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Weight {
    Monomial(u32, u32),
    Polynomial(Poly2<Rat>),
}

impl Weight {
    pub fn to_poly(&self) -> Poly2<Rat> {
        match self {
            Weight::Monomial(a, b) => Poly2::monomial(*a, *b, Rat::one()),
            Weight::Polynomial(p) => p.clone(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Weight::Monomial(a, b) => a + b,
            Weight::Polynomial(p) => p.degree(),
        }
    }
}
