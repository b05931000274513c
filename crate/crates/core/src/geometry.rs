//! Exact planar geometry: integer vectors, rational points, convex hulls and
//! lattice-point enumeration.
//!
//! Provides: [`IntVec2`], [`RatPoint2`], [`Polygon`], [`convex_hull`],
//! [`ceil_frac`], [`rat_floor`], [`rat_ceil`].

use crate::error::Error;
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An integer vector in the plane.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub x: Int,
    pub y: Int,
}

impl IntVec2 {
    pub fn new<X: Into<Int>, Y: Into<Int>>(x: X, y: Y) -> Self {
        IntVec2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Determinant of the 2x2 matrix with columns `self` and `other`.
    pub fn det(&self, other: &IntVec2) -> Int {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Euclidean scalar product.
    pub fn dot(&self, other: &IntVec2) -> Int {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn neg(&self) -> IntVec2 {
        IntVec2 {
            x: -&self.x,
            y: -&self.y,
        }
    }

    /// The primitive vector in the same direction (components divided by
    /// their gcd, sign preserved).
    pub fn primitive(&self) -> Result<IntVec2, Error> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.x.gcd(&self.y);
        Ok(IntVec2 {
            x: &self.x / &g,
            y: &self.y / &g,
        })
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y).is_one()
    }

    /// Counter-clockwise rotation by a quarter turn.
    pub fn rot90(&self) -> IntVec2 {
        IntVec2 {
            x: -&self.y,
            y: self.x.clone(),
        }
    }
}

impl std::fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point in the plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct RatPoint2 {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint2 { x, y }
    }

    /// Difference vector `self - other` (still rational).
    pub fn sub(&self, other: &RatPoint2) -> (Rat, Rat) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// The primitive integer direction from `self` towards `other`.
    pub fn direction_to(&self, other: &RatPoint2) -> Result<IntVec2, Error> {
        let (dx, dy) = other.sub(self);
        // Clear denominators, then reduce.
        let d = dx.denom().lcm(dy.denom());
        let v = IntVec2 {
            x: (dx * Rat::from_integer(d.clone())).to_integer(),
            y: (dy * Rat::from_integer(d)).to_integer(),
        };
        v.primitive()
    }

    pub fn scale(&self, t: &Rat) -> RatPoint2 {
        RatPoint2 {
            x: &self.x * t,
            y: &self.y * t,
        }
    }
}

impl std::fmt::Display for RatPoint2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation of the triple (a, b, c): positive for a left turn.
fn cross(a: &RatPoint2, b: &RatPoint2, c: &RatPoint2) -> Rat {
    let (abx, aby) = b.sub(a);
    let (acx, acy) = c.sub(a);
    abx * acy - aby * acx
}

/// Largest integer not exceeding `r`.
pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Smallest integer not less than `r`.
pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// Rounds up and also returns the gap: `(ceil(r), ceil(r) - r)`.
///
/// The gap lies in `[0, 1)` and is zero exactly for integers.
pub fn ceil_frac(r: &Rat) -> (Int, Rat) {
    let c = rat_ceil(r);
    let frac = Rat::from_integer(c.clone()) - r;
    debug_assert!(!frac.is_negative() && frac < Rat::one());
    (c, frac)
}

/// A bounded convex polygon with rational vertices.
///
/// Vertices are stored counter-clockwise, strictly convex (no three
/// collinear), starting at the lexicographically smallest vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polygon {
    vertices: Vec<RatPoint2>,
}

/// Builds the convex hull of a point set as a [`Polygon`].
///
/// Monotone-chain over exact rational coordinates; collinear points interior
/// to an edge are dropped. Fails with [`Error::DegenerateHull`] when the hull
/// has fewer than three vertices.
pub fn convex_hull(points: &[RatPoint2]) -> Result<Polygon, Error> {
    let mut pts: Vec<RatPoint2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut lower: Vec<RatPoint2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatPoint2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    Ok(Polygon { vertices: lower })
}

impl Polygon {
    /// The counter-clockwise vertex list, starting at the lexicographic
    /// minimum.
    pub fn vertices(&self) -> &[RatPoint2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &RatPoint2 {
        &self.vertices[i]
    }

    /// The vertex after `i`, cyclically.
    pub fn next_vertex(&self, i: usize) -> &RatPoint2 {
        &self.vertices[(i + 1) % self.vertices.len()]
    }

    /// The vertex before `i`, cyclically.
    pub fn prev_vertex(&self, i: usize) -> &RatPoint2 {
        &self.vertices[(i + self.vertices.len() - 1) % self.vertices.len()]
    }

    /// The polygon scaled by a positive rational factor about the origin.
    pub fn dilate(&self, t: &Rat) -> Polygon {
        assert!(t.is_positive(), "dilation factor must be positive");
        let pts: Vec<RatPoint2> = self.vertices.iter().map(|v| v.scale(t)).collect();
        // Scaling by t > 0 preserves convex position and orientation; only the
        // canonical starting vertex may move.
        convex_hull(&pts).expect("dilation preserves non-degeneracy")
    }

    /// Smallest positive integer `q` such that `q * p` has integer vertices.
    pub fn dilation_period(&self) -> Int {
        let mut q = Int::one();
        for v in &self.vertices {
            q = q.lcm(v.x.denom());
            q = q.lcm(v.y.denom());
        }
        q
    }

    /// The inward-pointing edge constraints `(normal, c)` with
    /// `normal . p >= c` for every polygon point `p`, one per edge.
    fn edge_constraints(&self) -> Vec<(IntVec2, Int)> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = &self.vertices[i];
            let b = self.next_vertex(i);
            let u = a.direction_to(b).expect("distinct vertices");
            let nrm = u.rot90(); // inward for counter-clockwise orientation
                                 // normal . p >= normal . a, cleared to integers
            let c_rat =
                Rat::from_integer(nrm.x.clone()) * &a.x + Rat::from_integer(nrm.y.clone()) * &a.y;
            let d = c_rat.denom().clone();
            let nrm = IntVec2 {
                x: &nrm.x * &d,
                y: &nrm.y * &d,
            };
            let c = (c_rat * Rat::from_integer(d)).to_integer();
            out.push((nrm, c));
        }
        out
    }

    /// All integer points inside or on the polygon, column by column.
    ///
    /// Scans integer abscissas across the bounding range; for each column the
    /// exact rational ordinate interval is intersected from the edge
    /// half-planes.
    pub fn lattice_points(&self) -> Vec<IntVec2> {
        let constraints = self.edge_constraints();
        let xs_min = self.vertices.iter().map(|v| &v.x).min().unwrap();
        let xs_max = self.vertices.iter().map(|v| &v.x).max().unwrap();
        let x0 = rat_ceil(xs_min);
        let x1 = rat_floor(xs_max);
        let mut pts = Vec::new();
        let mut x = x0;
        while x <= x1 {
            if let Some((ylo, yhi)) = self.column_range(&constraints, &x) {
                let mut y = ylo;
                while y <= yhi {
                    pts.push(IntVec2 {
                        x: x.clone(),
                        y: y.clone(),
                    });
                    y += 1;
                }
            }
            x += 1;
        }
        pts
    }

    /// Number of integer points inside or on the polygon, by column counting.
    pub fn count_lattice_points(&self) -> Int {
        let constraints = self.edge_constraints();
        let xs_min = self.vertices.iter().map(|v| &v.x).min().unwrap();
        let xs_max = self.vertices.iter().map(|v| &v.x).max().unwrap();
        let x0 = rat_ceil(xs_min);
        let x1 = rat_floor(xs_max);
        let mut count = Int::zero();
        let mut x = x0;
        while x <= x1 {
            if let Some((ylo, yhi)) = self.column_range(&constraints, &x) {
                count += yhi - ylo + 1;
            }
            x += 1;
        }
        count
    }

    /// The integer ordinate range of the column at abscissa `x`, if nonempty.
    fn column_range(&self, constraints: &[(IntVec2, Int)], x: &Int) -> Option<(Int, Int)> {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for (nrm, c) in constraints {
            let rem = c - &nrm.x * x;
            if nrm.y.is_positive() {
                let bound = Rat::new(rem, nrm.y.clone());
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if nrm.y.is_negative() {
                let bound = Rat::new(rem, nrm.y.clone());
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            } else if rem.is_positive() {
                return None; // vertical constraint excludes this column
            }
        }
        let (lo, hi) = (lo?, hi?);
        let ylo = rat_ceil(&lo);
        let yhi = rat_floor(&hi);
        if ylo <= yhi {
            Some((ylo, yhi))
        } else {
            None
        }
    }

    /// Number of cells in the integer bounding box, for enumeration budgets.
    pub fn bounding_box_cells(&self) -> Int {
        let xs_min = rat_ceil(self.vertices.iter().map(|v| &v.x).min().unwrap());
        let xs_max = rat_floor(self.vertices.iter().map(|v| &v.x).max().unwrap());
        let ys_min = rat_ceil(self.vertices.iter().map(|v| &v.y).min().unwrap());
        let ys_max = rat_floor(self.vertices.iter().map(|v| &v.y).max().unwrap());
        let w = xs_max - xs_min + Int::one();
        let h = ys_max - ys_min + Int::one();
        if w.is_positive() && h.is_positive() {
            w * h
        } else {
            Int::zero()
        }
    }

    /// Exact membership test (boundary included).
    pub fn contains(&self, p: &RatPoint2) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            if cross(&self.vertices[i], self.next_vertex(i), p).is_negative() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn pt(x: Rat, y: Rat) -> RatPoint2 {
        RatPoint2::new(x, y)
    }

    fn ipt(x: i64, y: i64) -> RatPoint2 {
        pt(rat_int(x), rat_int(y))
    }

    pub(crate) fn unit_square() -> Polygon {
        convex_hull(&[ipt(0, 0), ipt(1, 0), ipt(1, 1), ipt(0, 1)]).unwrap()
    }

    #[test]
    fn primitive_divides_out_gcd() {
        assert_eq!(IntVec2::new(4, 6).primitive().unwrap(), IntVec2::new(2, 3));
        assert_eq!(
            IntVec2::new(0, -5).primitive().unwrap(),
            IntVec2::new(0, -1)
        );
        assert_eq!(IntVec2::new(7, 3).primitive().unwrap(), IntVec2::new(7, 3));
        assert_eq!(IntVec2::new(0, 0).primitive(), Err(Error::ZeroVector));
    }

    #[test]
    fn ceil_frac_examples() {
        assert_eq!(ceil_frac(&rat(1, 2)), (Int::from(1), rat(1, 2)));
        assert_eq!(ceil_frac(&rat(-3, 2)), (Int::from(-1), rat(1, 2)));
        assert_eq!(ceil_frac(&rat_int(2)), (Int::from(2), rat_int(0)));
    }

    #[test]
    fn ceil_frac_is_translation_equivariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rat(rng.gen_range(-50..50), rng.gen_range(1..12));
            let k: i64 = rng.gen_range(-20..20);
            let (c, f) = ceil_frac(&r);
            let (ck, fk) = ceil_frac(&(&r + rat_int(k)));
            assert_eq!(ck, c + Int::from(k));
            assert_eq!(fk, f);
        }
    }

    #[test]
    fn hull_of_square_is_canonical() {
        let p = unit_square();
        assert_eq!(
            p.vertices(),
            &[ipt(0, 0), ipt(1, 0), ipt(1, 1), ipt(0, 1)][..]
        );
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = convex_hull(&[
            ipt(0, 0),
            ipt(2, 0),
            ipt(1, 0), // on an edge
            ipt(2, 2),
            ipt(0, 2),
            ipt(1, 1), // interior
        ])
        .unwrap();
        assert_eq!(
            p.vertices(),
            &[ipt(0, 0), ipt(2, 0), ipt(2, 2), ipt(0, 2)][..]
        );
    }

    #[test]
    fn collinear_points_are_degenerate() {
        assert_eq!(
            convex_hull(&[ipt(0, 0), ipt(1, 1), ipt(2, 2)]).unwrap_err(),
            Error::DegenerateHull
        );
        assert_eq!(
            convex_hull(&[ipt(0, 0), ipt(0, 0), ipt(1, 0)]).unwrap_err(),
            Error::DegenerateHull
        );
    }

    #[test]
    fn hull_is_idempotent_on_random_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tried = 0;
        while tried < 50 {
            let pts: Vec<RatPoint2> = (0..8)
                .map(|_| {
                    pt(
                        rat(rng.gen_range(-10..=10), rng.gen_range(1..=12)),
                        rat(rng.gen_range(-10..=10), rng.gen_range(1..=12)),
                    )
                })
                .collect();
            let Ok(h) = convex_hull(&pts) else { continue };
            tried += 1;
            let h2 = convex_hull(h.vertices()).unwrap();
            assert_eq!(h, h2);
            // Every input point lies inside the hull.
            for p in &pts {
                assert!(h.contains(p));
            }
        }
    }

    #[test]
    fn lattice_points_of_square() {
        let p = unit_square();
        let pts = p.lattice_points();
        assert_eq!(pts.len(), 4);
        assert_eq!(p.count_lattice_points(), Int::from(4));
        assert!(pts.contains(&IntVec2::new(0, 0)));
        assert!(pts.contains(&IntVec2::new(1, 1)));
    }

    #[test]
    fn lattice_points_of_thin_triangle() {
        // Vertices (0,0), (1,0), (1,2): integer points (0,0),(1,0),(1,1),(1,2).
        let p = convex_hull(&[ipt(0, 0), ipt(1, 0), ipt(1, 2)]).unwrap();
        let pts = p.lattice_points();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn enumeration_agrees_with_membership_test() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut tried = 0;
        while tried < 20 {
            let pts: Vec<RatPoint2> = (0..6)
                .map(|_| {
                    pt(
                        rat(rng.gen_range(-8..=8), rng.gen_range(1..=5)),
                        rat(rng.gen_range(-8..=8), rng.gen_range(1..=5)),
                    )
                })
                .collect();
            let Ok(h) = convex_hull(&pts) else { continue };
            tried += 1;
            let listed: std::collections::HashSet<IntVec2> =
                h.lattice_points().into_iter().collect();
            // Full box scan cross-check.
            for x in -10..=10i64 {
                for y in -10..=10i64 {
                    let inside = h.contains(&ipt(x, y));
                    assert_eq!(
                        inside,
                        listed.contains(&IntVec2::new(x, y)),
                        "mismatch at ({x}, {y})"
                    );
                }
            }
        }
    }

    #[test]
    fn dilation_period_is_vertex_denominator_lcm() {
        let p = convex_hull(&[
            pt(rat(-1, 2), rat(-1, 2)),
            pt(rat(1, 2), rat(-1, 2)),
            pt(rat(1, 2), rat(1, 2)),
            pt(rat(-1, 2), rat(1, 2)),
        ])
        .unwrap();
        assert_eq!(p.dilation_period(), Int::from(2));
        assert_eq!(unit_square().dilation_period(), Int::from(1));
    }

    #[test]
    fn dilate_scales_vertices() {
        let p = unit_square().dilate(&rat_int(3));
        assert_eq!(p.count_lattice_points(), Int::from(16));
    }
}
