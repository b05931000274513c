//! Weighted dilation counting: for a rational polygon P and polynomial
//! weight h, the function t -> sum of h over the lattice points of tP is a
//! quasi-polynomial in t, computed here face by face with symbolic periodic
//! coefficients.
//!
//! Provides: [`TransverseCone`], [`transverse_cones`], [`mu_edge`],
//! [`mu_vertex`], [`mu_vertex_unimodular`], [`apply_operator`],
//! [`integrate_over_polygon`], [`integrate_over_polygon_green`],
//! [`integrate_over_edge`], [`ehrhart_quasipolynomial`], [`coeff_t_ehrhart`].
//!
//! Each face contributes the integral over its dilation of a differential
//! operator applied to h. The operator of the full polygon is the identity;
//! edges carry a one-variable half-line correction along the inward normal;
//! vertices carry a two-variable correction assembled over the signed
//! unimodular decomposition of their supporting cone. Fractional offsets
//! enter through `fmod` symbols in the dilation parameter, so the result is
//! exact for every positive integer t at once.

use crate::cone::{barvinok_decompose_with, AffineCone, TieBreak};
use crate::error::Error;
use crate::geometry::{Polygon, RatPoint2};
use crate::periodic::{PeriodicPolynomial, QuasiPolynomial};
use crate::poly::Poly2;
use crate::series::{b_series, BernoulliTable, Coeff, Series2};
use crate::{Int, Rat};
use num_traits::{One, Zero};

/// A truncated operator series with periodic-polynomial coefficients.
pub type MuSeries = Series2<PeriodicPolynomial>;

/// The transverse cone attached to a face of the polygon.
#[derive(Clone, Debug)]
pub enum TransverseCone {
    /// The full polygon: a point cone, identity operator.
    Polygon,
    /// An edge: the half-line `offset + [0, inf)` along the inward normal,
    /// measured in multiples of the rational `generator` of the projected
    /// lattice.
    Edge { offset: Rat, generator: (Rat, Rat) },
    /// A vertex: its supporting cone.
    Vertex { cone: AffineCone },
}

/// Transverse cones of all faces: the polygon itself, then each edge
/// `(i, i+1)`, then each vertex, in index order.
pub fn transverse_cones(p: &Polygon) -> Vec<TransverseCone> {
    let mut out = vec![TransverseCone::Polygon];
    for i in 0..p.len() {
        let (offset, generator) = edge_transverse(p, i);
        out.push(TransverseCone::Edge { offset, generator });
    }
    for i in 0..p.len() {
        out.push(TransverseCone::Vertex {
            cone: p.vertex_cone(i),
        });
    }
    out
}

/// The inward-normal data of edge `(i, i+1)`: the offset of the edge line
/// and the rational generator of the projection of the lattice onto the
/// normal line.
fn edge_transverse(p: &Polygon, i: usize) -> (Rat, (Rat, Rat)) {
    let a = p.vertex(i);
    let b = p.next_vertex(i);
    let u = a.direction_to(b).expect("hull vertices are distinct");
    let n = u.rot90();
    let d = n.dot(&n);
    let generator = (
        Rat::new(n.x.clone(), d.clone()),
        Rat::new(n.y.clone(), d.clone()),
    );
    let offset = &a.x * Rat::from_integer(n.x.clone()) + &a.y * Rat::from_integer(n.y.clone());
    (offset, generator)
}

/// The fractional ceiling gap of the dilated offset, as a periodic function:
/// for s = p/q, ceil(t s) - t s = fmod(-p t, q) / q.
fn epsilon_symbol(s: &Rat) -> PeriodicPolynomial {
    let q = s.denom().clone();
    PeriodicPolynomial::symbol(&(-s.numer()), &q).mul_rat(&Rat::new(Int::one(), q))
}

/// The half-line operator of an edge: B(<xi, V>, eps(t)) for the inward
/// normal generator V and the periodic ceiling gap eps of the edge offset.
pub fn mu_edge(offset: &Rat, generator: (&Rat, &Rat), order: i64) -> MuSeries {
    let table = BernoulliTable::new((order + 1) as usize);
    b_series(&table, &epsilon_symbol(offset), generator, order)
}

/// The vertex operator of one unimodular det +1 cone, in the
/// cancellation-safe regrouped form
///
///   B(y1, e1) B(y2, e2)
///   + (1/y1) [B(y2 - C1 y1, e2) - B(y2, e2)]
///   + (1/y2) [B(y1 - C2 y2, e1) - B(y1, e1)]
///
/// with y_i = <xi, g_i>, C_i = <g1, g2>/<g_i, g_i>, and e_i the periodic
/// ceiling gaps of the vertex coordinates; both brackets are exactly
/// divisible by their pole variable, so the result is a Taylor series.
pub fn mu_vertex_unimodular(cone: &AffineCone, order: i64) -> Result<MuSeries, Error> {
    if !cone.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let table = BernoulliTable::new((order + 2) as usize);
    let (s1, s2) = cone.vertex_coords();
    let eps1 = epsilon_symbol(&s1);
    let eps2 = epsilon_symbol(&s2);
    let dot12 = Rat::from_integer(cone.g1.dot(&cone.g2));
    let c1 = &dot12 / Rat::from_integer(cone.g1.dot(&cone.g1));
    let c2 = &dot12 / Rat::from_integer(cone.g2.dot(&cone.g2));
    let one = Rat::one();
    let zero = Rat::zero();

    let part_a = b_series(&table, &eps1, (&one, &zero), order).multiply(&b_series(
        &table,
        &eps2,
        (&zero, &one),
        order,
    ));
    let bracket1 = b_series(&table, &eps2, (&-c1, &one), order + 1)
        .sub(&b_series(&table, &eps2, (&zero, &one), order + 1))
        .div_exact_var1();
    let bracket2 = b_series(&table, &eps1, (&one, &-c2), order + 1)
        .sub(&b_series(&table, &eps1, (&one, &zero), order + 1))
        .div_exact_var2();

    let total_y = part_a.add(&bracket1).add(&bracket2);
    let (a1, b1) = (
        Rat::from_integer(cone.g1.x.clone()),
        Rat::from_integer(cone.g1.y.clone()),
    );
    let (a2, b2) = (
        Rat::from_integer(cone.g2.x.clone()),
        Rat::from_integer(cone.g2.y.clone()),
    );
    let total = total_y.substitute_linear_forms((&a1, &b1), (&a2, &b2));
    debug_assert!(total.is_taylor());
    Ok(total)
}

/// The vertex operator of an arbitrary supporting cone: the signed sum of
/// unimodular vertex operators over the decomposition.
pub fn mu_vertex(cone: &AffineCone, order: i64) -> MuSeries {
    mu_vertex_with(cone, order, TieBreak::default())
}

pub fn mu_vertex_with(cone: &AffineCone, order: i64, tie: TieBreak) -> MuSeries {
    let mut acc = Series2::zero(order);
    for sc in barvinok_decompose_with(cone, tie) {
        let oriented = sc
            .cone
            .oriented_unimodular()
            .expect("decomposition yields unimodular cones");
        let mu = mu_vertex_unimodular(&oriented, order).expect("oriented cone is unimodular");
        acc = if sc.sign >= 0 {
            acc.add(&mu)
        } else {
            acc.add(&mu.neg())
        };
    }
    acc
}

/// Applies the differential operator of a mu-series to a weight:
/// each term c * xi1^e1 xi2^e2 acts as c * d^(e1+e2)/dx^e1 dy^e2.
///
/// Fails with [`Error::OrderTooLow`] when the series order cannot cover the
/// weight's degree.
pub fn apply_operator(mu: &MuSeries, h: &Poly2<Rat>) -> Result<Poly2<PeriodicPolynomial>, Error> {
    if mu.order() < h.degree() as i64 {
        return Err(Error::OrderTooLow);
    }
    let mut out = Poly2::zero();
    for (&(e1, e2), c) in mu.iter() {
        let d = h.derivative(e1 as u32, e2 as u32);
        if d.is_zero() {
            continue;
        }
        for (&(a, b), hc) in d.iter() {
            out.insert_add(a, b, c.mul_rat(hc));
        }
    }
    Ok(out)
}

fn pascal(n_max: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![Int::one()];
        for k in 1..=n {
            let prev = &rows[n - 1];
            let left = if k < n { prev[k].clone() } else { Int::zero() };
            row.push(left + &prev[k - 1]);
        }
        rows.push(row);
    }
    rows
}

fn rat_pow(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Exact integral of the weight over the polygon, by fan triangulation and
/// simplex moments: the (i, j) moment of the standard triangle is
/// i! j! / (i + j + 2)!.
pub fn integrate_over_polygon(p: &Polygon, h: &Poly2<Rat>) -> Rat {
    let deg = h.degree();
    // Simplex moments m[i][j] for i + j <= deg.
    let mut moments = vec![vec![Rat::zero(); deg as usize + 1]; deg as usize + 1];
    for (i, row) in moments.iter_mut().enumerate() {
        for (j, m) in row.iter_mut().enumerate().take(deg as usize + 1 - i) {
            let mut num = Int::one();
            for k in 2..=(i + j + 2) {
                num *= Int::from(k);
            }
            let mut fact = Int::one();
            for k in 2..=i {
                fact *= Int::from(k);
            }
            for k in 2..=j {
                fact *= Int::from(k);
            }
            *m = Rat::new(fact, num);
        }
    }
    let w0 = p.vertex(0);
    let mut total = Rat::zero();
    for i in 1..p.len() - 1 {
        let wa = p.vertex(i);
        let wb = p.vertex(i + 1);
        let (d1x, d1y) = wa.sub(w0);
        let (d2x, d2y) = wb.sub(w0);
        let jac = &d1x * &d2y - &d1y * &d2x;
        // h(w0 + u d1 + v d2) as a polynomial in (u, v).
        let xs = affine_powers(&w0.x, &d1x, &d2x, deg);
        let ys = affine_powers(&w0.y, &d1y, &d2y, deg);
        for (&(a, b), c) in h.iter() {
            let prod = xs[a as usize].multiply_capped(&ys[b as usize], deg);
            for (&(iu, iv), pc) in prod.iter() {
                total += c * pc * &moments[iu as usize][iv as usize] * &jac;
            }
        }
    }
    total
}

/// Small helper polynomial in the triangle parameters (u, v).
#[derive(Clone)]
struct UvPoly {
    terms: std::collections::BTreeMap<(u32, u32), Rat>,
}

impl UvPoly {
    fn constant(c: Rat) -> UvPoly {
        let mut terms = std::collections::BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        UvPoly { terms }
    }

    fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    fn multiply_capped(&self, rhs: &UvPoly, cap: u32) -> UvPoly {
        let mut out = std::collections::BTreeMap::new();
        for (&(a1, a2), c1) in &self.terms {
            for (&(b1, b2), c2) in &rhs.terms {
                let (e1, e2) = (a1 + b1, a2 + b2);
                if e1 + e2 > cap {
                    continue;
                }
                let v = out.entry((e1, e2)).or_insert_with(Rat::zero);
                *v += c1 * c2;
            }
        }
        UvPoly { terms: out }
    }
}

/// Powers (c + d1 u + d2 v)^k for k = 0..=deg.
fn affine_powers(c: &Rat, d1: &Rat, d2: &Rat, deg: u32) -> Vec<UvPoly> {
    let mut base = UvPoly::constant(c.clone());
    base.terms.insert((1, 0), d1.clone());
    base.terms.insert((0, 1), d2.clone());
    base.terms.retain(|_, v| !v.is_zero());
    let mut out = vec![UvPoly::constant(Rat::one())];
    for k in 1..=deg as usize {
        let next = out[k - 1].multiply_capped(&base, deg);
        out.push(next);
    }
    out
}

/// The same integral through the divergence theorem: integrating x^a y^b
/// over P equals the counterclockwise boundary integral of
/// x^(a+1) y^b / (a+1) dy.
pub fn integrate_over_polygon_green(p: &Polygon, h: &Poly2<Rat>) -> Rat {
    let deg = h.degree() as usize;
    let binom = pascal(deg + 1);
    let mut total = Rat::zero();
    for i in 0..p.len() {
        let a = p.vertex(i);
        let b = p.next_vertex(i);
        let (dx, dy) = b.sub(a);
        if dy.is_zero() {
            continue;
        }
        for (&(m, n), c) in h.iter() {
            let (m, n) = (m as usize, n as usize);
            let mut edge_sum = Rat::zero();
            for j1 in 0..=m + 1 {
                for j2 in 0..=n {
                    let w = Rat::from_integer(&binom[m + 1][j1] * &binom[n][j2]);
                    edge_sum += w
                        * rat_pow(&a.x, (m + 1 - j1) as u32)
                        * rat_pow(&dx, j1 as u32)
                        * rat_pow(&a.y, (n - j2) as u32)
                        * rat_pow(&dy, j2 as u32)
                        / Rat::from_integer(Int::from(j1 + j2 + 1));
                }
            }
            total += c * edge_sum * &dy / Rat::from_integer(Int::from(m + 1));
        }
    }
    total
}

/// Integrates a periodic-coefficient weight over the dilation of one edge.
///
/// The edge from a to b is parametrized as x = t a + tau u with u the
/// primitive direction and tau in [0, t L]; each monomial of degree d lands
/// in the single power t^(d+1). Returns the coefficients by power of t.
pub fn integrate_over_edge(
    a: &RatPoint2,
    b: &RatPoint2,
    g: &Poly2<PeriodicPolynomial>,
) -> Vec<PeriodicPolynomial> {
    let u = a.direction_to(b).expect("edge endpoints are distinct");
    let (dx, dy) = b.sub(a);
    let len = if !u.x.is_zero() {
        dx / Rat::from_integer(u.x.clone())
    } else {
        dy / Rat::from_integer(u.y.clone())
    };
    let deg = g.degree() as usize;
    let binom = pascal(deg);
    let (ux, uy) = (
        Rat::from_integer(u.x.clone()),
        Rat::from_integer(u.y.clone()),
    );
    let mut out = vec![PeriodicPolynomial::zero(); deg + 2];
    for (&(m, n), c) in g.iter() {
        let (m, n) = (m as usize, n as usize);
        let mut factor = Rat::zero();
        for j1 in 0..=m {
            for j2 in 0..=n {
                let w = Rat::from_integer(&binom[m][j1] * &binom[n][j2]);
                factor += w
                    * rat_pow(&a.x, (m - j1) as u32)
                    * rat_pow(&ux, j1 as u32)
                    * rat_pow(&a.y, (n - j2) as u32)
                    * rat_pow(&uy, j2 as u32)
                    * rat_pow(&len, (j1 + j2 + 1) as u32)
                    / Rat::from_integer(Int::from(j1 + j2 + 1));
            }
        }
        let slot = &mut out[m + n + 1];
        *slot = slot.clone() + c.mul_rat(&factor);
    }
    out
}

/// The weighted dilation-counting quasi-polynomial of the polygon:
/// its value at a positive integer t is the sum of h over the lattice
/// points of tP. Coefficients are periodic polynomials in fmod symbols.
pub fn ehrhart_quasipolynomial(p: &Polygon, h: &Poly2<Rat>) -> QuasiPolynomial {
    ehrhart_quasipolynomial_with(p, h, TieBreak::default())
}

pub fn ehrhart_quasipolynomial_with(p: &Polygon, h: &Poly2<Rat>, tie: TieBreak) -> QuasiPolynomial {
    let deg = h.degree();
    let order = deg as i64;
    let mut coeffs = vec![PeriodicPolynomial::zero(); deg as usize + 3];
    // Full polygon: the integral of each monomial of the weight, scaled by
    // the dilation of both the domain and the integrand.
    for (&(a, b), c) in h.iter() {
        let mono = Poly2::monomial(a, b, c.clone());
        let v = integrate_over_polygon(p, &mono);
        let slot = &mut coeffs[(a + b + 2) as usize];
        *slot = slot.clone() + PeriodicPolynomial::from_rational(&v);
    }
    // Edges: half-line operator, then the edge integral.
    for i in 0..p.len() {
        let (offset, generator) = edge_transverse(p, i);
        let mu = mu_edge(&offset, (&generator.0, &generator.1), order);
        let g = apply_operator(&mu, h).expect("operator order covers the weight degree");
        let parts = integrate_over_edge(p.vertex(i), p.next_vertex(i), &g);
        for (k, part) in parts.into_iter().enumerate() {
            let slot = &mut coeffs[k];
            *slot = slot.clone() + part;
        }
    }
    // Vertices: cone operator, then evaluation at the dilated vertex.
    for i in 0..p.len() {
        let mu = mu_vertex_with(&p.vertex_cone(i), order, tie);
        let g = apply_operator(&mu, h).expect("operator order covers the weight degree");
        let v = p.vertex(i);
        for (&(a, b), c) in g.iter() {
            let scale = rat_pow(&v.x, a) * rat_pow(&v.y, b);
            let slot = &mut coeffs[(a + b) as usize];
            *slot = slot.clone() + c.mul_rat(&scale);
        }
    }
    QuasiPolynomial::new(coeffs)
}

/// A single coefficient of the weighted dilation-counting quasi-polynomial.
///
/// Fails with [`Error::IndexOutOfRange`] when i exceeds deg(h) + 2.
pub fn coeff_t_ehrhart(p: &Polygon, h: &Poly2<Rat>, i: usize) -> Result<PeriodicPolynomial, Error> {
    let qp = ehrhart_quasipolynomial(p, h);
    qp.coefficient(i).cloned()
}
