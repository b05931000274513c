//! Structured JSON output for quasi-polynomials, mirroring the exact text
//! form: every number is an exact rational string, every periodic symbol a
//! (p, q, exponent) triple standing for fmod(p*t, q)^exponent.
//!
//! Provides [`QuasiPolynomialJson`], [`CoefficientJson`], [`TermJson`] and
//! [`SymbolJson`], conversions from the core types, and exact evaluation of
//! the parsed form (used to check round-trips).

use latsum::{Int, PeriodicPolynomial, QuasiPolynomial, Rat};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct QuasiPolynomialJson {
    pub degree: usize,
    pub coefficients: Vec<CoefficientJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub power: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub symbols: Vec<SymbolJson>,
}

/// One periodic factor fmod(p*t, q)^exp.
#[derive(Debug, Serialize, Deserialize)]
pub struct SymbolJson {
    pub p: String,
    pub q: String,
    pub exp: u32,
}

pub fn coefficient_json(power: usize, c: &PeriodicPolynomial) -> CoefficientJson {
    let terms = c
        .term_list()
        .into_iter()
        .map(|(coeff, symbols)| TermJson {
            coeff: coeff.to_string(),
            symbols: symbols
                .into_iter()
                .map(|(p, q, exp)| SymbolJson {
                    p: p.to_string(),
                    q: q.to_string(),
                    exp,
                })
                .collect(),
        })
        .collect();
    CoefficientJson { power, terms }
}

pub fn quasi_polynomial_json(qp: &QuasiPolynomial) -> QuasiPolynomialJson {
    QuasiPolynomialJson {
        degree: qp.degree(),
        coefficients: qp
            .coefficients()
            .iter()
            .enumerate()
            .map(|(i, c)| coefficient_json(i, c))
            .collect(),
    }
}

impl CoefficientJson {
    /// Rebuilds the periodic coefficient through the core symbol type.
    pub fn to_periodic(&self) -> Result<PeriodicPolynomial, String> {
        let mut total = PeriodicPolynomial::from_rational(&Rat::from_integer(Int::from(0)));
        for term in &self.terms {
            let coeff: Rat = term
                .coeff
                .parse()
                .map_err(|_| format!("invalid rational {:?}", term.coeff))?;
            let mut value = PeriodicPolynomial::from_rational(&coeff);
            for sym in &term.symbols {
                let p: Int = sym
                    .p
                    .parse()
                    .map_err(|_| format!("invalid integer {:?}", sym.p))?;
                let q: Int = sym
                    .q
                    .parse()
                    .map_err(|_| format!("invalid integer {:?}", sym.q))?;
                let factor = PeriodicPolynomial::symbol(&p, &q);
                for _ in 0..sym.exp {
                    value = value * factor.clone();
                }
            }
            total = total + value;
        }
        Ok(total)
    }

    pub fn evaluate(&self, t: &Int) -> Result<Rat, String> {
        Ok(self.to_periodic()?.evaluate(t))
    }
}

impl QuasiPolynomialJson {
    /// Exact evaluation at an integer dilation, used to verify that the
    /// structured output round-trips.
    pub fn evaluate(&self, t: &Int) -> Result<Rat, String> {
        let tr = Rat::from_integer(t.clone());
        let mut acc = Rat::from_integer(Int::from(0));
        for c in &self.coefficients {
            let mut power = Rat::from_integer(Int::from(1));
            for _ in 0..c.power {
                power *= &tr;
            }
            acc += c.evaluate(t)? * power;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use latsum::{convex_hull, ehrhart_quasipolynomial, rat, Poly2, RatPoint2};

    fn centered_square_qp() -> QuasiPolynomial {
        let pts = [
            RatPoint2::new(rat(-1, 2), rat(-1, 2)),
            RatPoint2::new(rat(1, 2), rat(-1, 2)),
            RatPoint2::new(rat(1, 2), rat(1, 2)),
            RatPoint2::new(rat(-1, 2), rat(1, 2)),
        ];
        let p = convex_hull(&pts).unwrap();
        ehrhart_quasipolynomial(&p, &Poly2::monomial(0, 0, rat(1, 1)))
    }

    #[test]
    fn json_round_trip_preserves_values() {
        let qp = centered_square_qp();
        let json = quasi_polynomial_json(&qp);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: QuasiPolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.degree, qp.degree());
        for t in 0..=8i64 {
            let ti = Int::from(t);
            assert_eq!(parsed.evaluate(&ti).unwrap(), qp.evaluate(&ti), "t = {t}");
        }
    }

    #[test]
    fn coefficients_round_trip_through_symbols() {
        let qp = centered_square_qp();
        for (i, c) in qp.coefficients().iter().enumerate() {
            let json = coefficient_json(i, c);
            let back = json.to_periodic().unwrap();
            for t in 0..=4i64 {
                let ti = Int::from(t);
                assert_eq!(
                    back.evaluate(&ti),
                    c.evaluate(&ti),
                    "coefficient {i} at t = {t}"
                );
            }
        }
    }
}
