//! Weighted sums over the lattice points of a polygon through vertex-cone
//! generating functions.
//!
//! Provides: [`UnimodularExpansion`], [`ConeSeries`],
//! [`unimodular_cone_series`], [`decomposed_cone_series`], [`cone_series`],
//! [`vertex_contribution`], [`sum_monomial_polygon`],
//! [`sum_polynomial_polygon`], [`number_points_polygon`].
//!
//! The generating function of a polygon's lattice points is the sum over its
//! vertices of the cone generating functions; each vertex cone is decomposed
//! into signed unimodular cones, and each unimodular cone contributes the
//! product over its two generators of (B(y, u) - 1/y), where y = <xi, g> and
//! B is the analytic part of the half-line series. Coefficients are read off
//! the iterated Laurent expansion with `xi2` outer, either through the
//! factored closed form (fast, used for single coefficients) or by
//! materializing the truncated series (used for small orders and as a
//! cross-check).

use crate::cone::{barvinok_decompose_with, AffineCone, TieBreak};
use crate::error::Error;
use crate::geometry::{rat_ceil, IntVec2, Polygon};
use crate::poly::Poly2;
use crate::series::{b_series, inverse_linear_form, BernoulliTable, Series2};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Extra first-exponent slack retained by inverse expansions so that every
/// coefficient within the query window of [`ConeSeries::coefficient`] is the
/// true Laurent coefficient.
const INVERSE_SLACK: i64 = 3;

/// rows[n][j] = coefficient of x^j in (a x + b)^n, as integers.
fn integer_rows(a: &Int, b: &Int, n_max: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![Int::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = vec![Int::zero(); n + 1];
        for j in 0..n {
            if prev[j].is_zero() {
                continue;
            }
            row[j] += &prev[j] * b;
            row[j + 1] += &prev[j] * a;
        }
        rows.push(row);
    }
    rows
}

fn integer_powers(x: &Int, n_max: usize) -> Vec<Int> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Int::one());
    for _ in 0..n_max {
        out.push(out.last().unwrap() * x);
    }
    out
}

/// The expansion of one unimodular det +1 cone,
/// (B(y1, u1) - 1/y1) * (B(y2, u2) - 1/y2), in factored form.
///
/// The analytic coefficient arrays are stored as integers over one common
/// denominator, so that single-coefficient extraction runs in integer
/// arithmetic with a single rational reduction per part.
#[derive(Debug)]
pub struct UnimodularExpansion {
    v1: IntVec2,
    v2: IntVec2,
    shift1: Int,
    shift2: Int,
    order: i64,
    /// Common denominator of both gamma arrays.
    scale: Int,
    /// gamma_i[n] = scale * [y^n] B(y, shift_i).
    gamma1: Vec<Int>,
    gamma2: Vec<Int>,
    rows1: Vec<Vec<Int>>,
    rows2: Vec<Vec<Int>>,
    pa1: Vec<Int>,
    pb1: Vec<Int>,
    pa2: Vec<Int>,
    pb2: Vec<Int>,
}

impl UnimodularExpansion {
    fn new(cone: &AffineCone, order: i64, table: &BernoulliTable) -> UnimodularExpansion {
        assert!(cone.det().is_one(), "expansion requires a det +1 cone");
        assert!(order >= 0);
        let n_max = (order + 2) as usize;
        let (s1, s2) = cone.vertex_coords();
        let shift1 = rat_ceil(&s1);
        let shift2 = rat_ceil(&s2);
        // Common denominators S_n of the analytic coefficients at integer
        // shifts depend only on n, so both arrays share one overall scale.
        let mut dens: Vec<Int> = Vec::with_capacity(n_max + 1);
        let mut scale = Int::one();
        for n in 0..=n_max {
            let d = table.b_poly_denominator(n + 1) * table.factorial(n + 1);
            scale = scale.lcm(&d);
            dens.push(d);
        }
        let gamma = |shift: &Int| -> Vec<Int> {
            (0..=n_max)
                .map(|n| -table.eval_b_scaled(n + 1, shift) * (&scale / &dens[n]))
                .collect()
        };
        let gamma1 = gamma(&shift1);
        let gamma2 = gamma(&shift2);
        let p_max = n_max + 2;
        UnimodularExpansion {
            rows1: integer_rows(&cone.g1.x, &cone.g1.y, n_max),
            rows2: integer_rows(&cone.g2.x, &cone.g2.y, n_max),
            pa1: integer_powers(&cone.g1.x, p_max),
            pb1: integer_powers(&cone.g1.y, p_max),
            pa2: integer_powers(&cone.g2.x, p_max),
            pb2: integer_powers(&cone.g2.y, p_max),
            v1: cone.g1.clone(),
            v2: cone.g2.clone(),
            shift1,
            shift2,
            order,
            scale,
            gamma1,
            gamma2,
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// The Laurent coefficient at xi1^e1 xi2^e2, exact for e1 + e2 <= order
    /// and e1 <= order + 2.
    fn coefficient(&self, e1: i64, e2: i64) -> Rat {
        let d = e1 + e2;
        let mut acc = Rat::zero();
        // Product of the two analytic factors.
        if e1 >= 0 && e2 >= 0 {
            let du = d as usize;
            let e1u = e1 as usize;
            let mut num = Int::zero();
            for n in 0..=du {
                let p = du - n;
                let jlo = e1u.saturating_sub(p);
                let jhi = n.min(e1u);
                if jlo > jhi {
                    continue;
                }
                let mut k = Int::zero();
                for j in jlo..=jhi {
                    k += &self.rows1[n][j] * &self.rows2[p][e1u - j];
                }
                if k.is_zero() {
                    continue;
                }
                num += &self.gamma1[n] * &self.gamma2[p] * k;
            }
            if !num.is_zero() {
                acc += Rat::new(num, &self.scale * &self.scale);
            }
        }
        // Each pole paired with the other generator's analytic factor.
        acc += self.pole_times_analytic(
            &self.v1,
            &self.pa1,
            &self.pb1,
            &self.gamma2,
            &self.rows2,
            e1,
            e2,
        );
        acc += self.pole_times_analytic(
            &self.v2,
            &self.pa2,
            &self.pb2,
            &self.gamma1,
            &self.rows1,
            e1,
            e2,
        );
        // Product of the two poles.
        if d == -2 {
            acc += self.double_pole(e1);
        }
        acc
    }

    /// Coefficient of -(1/<xi, pole>) * B(<xi, other>, shift_other).
    #[allow(clippy::too_many_arguments)]
    fn pole_times_analytic(
        &self,
        pole: &IntVec2,
        pa: &[Int],
        pb: &[Int],
        gamma_w: &[Int],
        rows_w: &[Vec<Int>],
        e1: i64,
        e2: i64,
    ) -> Rat {
        let np = e1 + e2 + 1;
        if np < 0 || np > (self.order + 2) {
            return Rat::zero();
        }
        let np = np as usize;
        if pole.y.is_zero() {
            // 1/<xi, pole> = (1/a) xi1^(-1).
            let j = e1 + 1;
            if j < 0 || j > np as i64 {
                return Rat::zero();
            }
            let num = &gamma_w[np] * &rows_w[np][j as usize];
            if num.is_zero() {
                return Rat::zero();
            }
            return -Rat::new(num, &self.scale * &pole.x);
        }
        if e1 < 0 {
            return Rat::zero();
        }
        let e1u = e1 as usize;
        let k0 = 0.max(-e2 - 1) as usize;
        if k0 > e1u {
            return Rat::zero();
        }
        let mut num = Int::zero();
        for k in k0..=e1u {
            let term = &pa[k] * &pb[e1u - k] * &rows_w[np][e1u - k];
            if k % 2 == 0 {
                num += term;
            } else {
                num -= term;
            }
        }
        if num.is_zero() {
            return Rat::zero();
        }
        -Rat::new(&gamma_w[np] * num, &self.scale * &pb[e1u + 1])
    }

    /// Coefficient of 1/(<xi, v1> <xi, v2>) at xi1^e1 xi2^(-2-e1).
    fn double_pole(&self, e1: i64) -> Rat {
        let b1_zero = self.v1.y.is_zero();
        let b2_zero = self.v2.y.is_zero();
        match (b1_zero, b2_zero) {
            (false, false) => {
                if e1 < 0 {
                    return Rat::zero();
                }
                let e1u = e1 as usize;
                let mut num = Int::zero();
                for k in 0..=e1u {
                    num += &self.pa1[k] * &self.pb1[e1u - k] * (&self.pa2[e1u - k] * &self.pb2[k]);
                }
                if e1u % 2 == 1 {
                    num = -num;
                }
                Rat::new(num, &self.pb1[e1u + 1] * &self.pb2[e1u + 1])
            }
            (true, false) => {
                let k = e1 + 1;
                if k < 0 {
                    return Rat::zero();
                }
                let ku = k as usize;
                let num = self.pa2[ku].clone();
                let den = &self.v1.x * &self.pb2[ku + 1];
                let r = Rat::new(num, den);
                if ku % 2 == 1 {
                    -r
                } else {
                    r
                }
            }
            (false, true) => {
                let k = e1 + 1;
                if k < 0 {
                    return Rat::zero();
                }
                let ku = k as usize;
                let num = self.pa1[ku].clone();
                let den = &self.v2.x * &self.pb1[ku + 1];
                let r = Rat::new(num, den);
                if ku % 2 == 1 {
                    -r
                } else {
                    r
                }
            }
            (true, true) => unreachable!("generators cannot both be horizontal"),
        }
    }

    /// Materializes the same expansion through the generic series engine.
    ///
    /// The result is restricted to the window in which every coefficient is
    /// the true Laurent coefficient: a pole along the first variable shifts
    /// its exponents down by one, so products are complete only up to
    /// `order + 2`, one below the raw truncation cap of the inverses.
    pub fn to_series(&self) -> Series2<Rat> {
        let table = BernoulliTable::new((self.order + 3) as usize);
        let (a1, b1) = rat_pair(&self.v1);
        let (a2, b2) = rat_pair(&self.v2);
        let big = self.order + 2;
        let bs1 = b_series(
            &table,
            &Rat::from_integer(self.shift1.clone()),
            (&a1, &b1),
            big,
        );
        let bs2 = b_series(
            &table,
            &Rat::from_integer(self.shift2.clone()),
            (&a2, &b2),
            big,
        );
        let i1 = inverse_linear_form(&self.v1, self.order, INVERSE_SLACK).unwrap();
        let i2 = inverse_linear_form(&self.v2, self.order, INVERSE_SLACK).unwrap();
        let analytic = bs1.multiply(&bs2);
        let cross1 = i1.multiply(&bs2).neg();
        let cross2 = i2.multiply(&bs1).neg();
        let double = i1.multiply(&i2);
        analytic
            .add(&cross1)
            .add(&cross2)
            .add(&double)
            .restrict_var1(self.order + 2)
    }
}

fn rat_pair(v: &IntVec2) -> (Rat, Rat) {
    (
        Rat::from_integer(v.x.clone()),
        Rat::from_integer(v.y.clone()),
    )
}

/// The truncated generating-function expansion of an affine cone, as a
/// signed combination of unimodular expansions.
#[derive(Debug)]
pub struct ConeSeries {
    order: i64,
    parts: Vec<(i8, UnimodularExpansion)>,
}

impl ConeSeries {
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Number of signed unimodular parts.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// The Laurent coefficient at xi1^e1 xi2^e2 of the signed sum.
    ///
    /// Exact within the window e1 + e2 <= order, e1 <= order + 2; queries
    /// outside it fail with [`Error::OrderExceeded`].
    pub fn coefficient(&self, e1: i64, e2: i64) -> Result<Rat, Error> {
        if e1 + e2 > self.order || e1 > self.order + 2 {
            return Err(Error::OrderExceeded);
        }
        let mut acc = Rat::zero();
        for (sign, part) in &self.parts {
            let c = part.coefficient(e1, e2);
            if *sign >= 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }

    /// Materializes the signed sum through the generic series engine.
    pub fn to_series(&self) -> Series2<Rat> {
        let mut acc = Series2::zero(self.order);
        for (sign, part) in &self.parts {
            let s = part.to_series();
            acc = if *sign >= 0 {
                acc.add(&s)
            } else {
                acc.add(&s.neg())
            };
        }
        acc
    }
}

/// Expansion of a single unimodular cone (of either orientation).
pub fn unimodular_cone_series(cone: &AffineCone, order: i64) -> Result<ConeSeries, Error> {
    let oriented = cone.oriented_unimodular()?;
    let table = BernoulliTable::new((order + 3) as usize);
    let part = UnimodularExpansion::new(&oriented, order, &table);
    Ok(ConeSeries {
        order,
        parts: vec![(1, part)],
    })
}

/// Expansion of an arbitrary affine cone through its signed unimodular
/// decomposition.
pub fn decomposed_cone_series(cone: &AffineCone, order: i64) -> ConeSeries {
    decomposed_cone_series_with(cone, order, TieBreak::default())
}

pub fn decomposed_cone_series_with(cone: &AffineCone, order: i64, tie: TieBreak) -> ConeSeries {
    let table = BernoulliTable::new((order + 3) as usize);
    let parts = barvinok_decompose_with(cone, tie)
        .into_iter()
        .map(|sc| {
            let oriented = sc
                .cone
                .oriented_unimodular()
                .expect("decomposition yields unimodular cones");
            (sc.sign, UnimodularExpansion::new(&oriented, order, &table))
        })
        .collect();
    ConeSeries { order, parts }
}

/// Expansion of the supporting cone at vertex `i` of a polygon.
pub fn cone_series(p: &Polygon, i: usize, order: i64) -> ConeSeries {
    decomposed_cone_series(&p.vertex_cone(i), order)
}

fn factorial(n: u32) -> Int {
    let mut f = Int::one();
    for k in 2..=n {
        f *= Int::from(k);
    }
    f
}

/// One vertex's share of the weighted lattice-point sum: the CLI distributes
/// these across threads and adds them in index order.
pub fn vertex_contribution(p: &Polygon, i: usize, h: &Poly2<Rat>) -> Rat {
    let order = h.degree() as i64;
    let cs = cone_series(p, i, order);
    let mut acc = Rat::zero();
    for (&(a, b), c) in h.iter() {
        let coeff = cs
            .coefficient(a as i64, b as i64)
            .expect("weight degree fits the expansion order");
        acc += c * coeff * Rat::from_integer(factorial(a) * factorial(b));
    }
    acc
}

/// The exact value of sum_{x in P cap Z^2} h(x).
pub fn sum_polynomial_polygon(p: &Polygon, h: &Poly2<Rat>) -> Rat {
    let mut total = Rat::zero();
    for i in 0..p.len() {
        total += vertex_contribution(p, i, h);
    }
    total
}

/// The exact value of sum_{x in P cap Z^2} x1^m1 x2^m2 (an integer).
pub fn sum_monomial_polygon(p: &Polygon, m1: u32, m2: u32) -> Int {
    let total = sum_polynomial_polygon(p, &Poly2::monomial(m1, m2, Rat::one()));
    assert!(total.is_integer(), "monomial lattice sums are integers");
    total.to_integer()
}

/// The number of lattice points of the polygon.
pub fn number_points_polygon(p: &Polygon) -> Int {
    sum_monomial_polygon(p, 0, 0)
}
