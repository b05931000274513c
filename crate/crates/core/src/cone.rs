//! Affine cones in the plane and their signed decomposition into unimodular
//! cones.
//!
//! Provides: [`AffineCone`], [`SignedCone`], [`BasisCoordinates`],
//! [`TieBreak`], [`coords_in_basis`], [`short_vector`],
//! [`signed_decompose_step`], [`barvinok_decompose`], and
//! [`Polygon::vertex_cone`].

use crate::error::Error;
use crate::geometry::{IntVec2, Polygon, RatPoint2};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};

/// A two-dimensional affine cone: a rational vertex plus two independent
/// primitive integer generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineCone {
    pub vertex: RatPoint2,
    pub g1: IntVec2,
    pub g2: IntVec2,
}

impl AffineCone {
    /// Builds a cone, reducing the generators to primitive vectors.
    ///
    /// Panics if either generator is zero or the generators are parallel;
    /// both conditions are structural programming errors here.
    pub fn new(vertex: RatPoint2, g1: IntVec2, g2: IntVec2) -> AffineCone {
        let g1 = g1.primitive().expect("generator must be non-zero");
        let g2 = g2.primitive().expect("generator must be non-zero");
        assert!(
            !g1.det(&g2).is_zero(),
            "generators must be linearly independent"
        );
        AffineCone { vertex, g1, g2 }
    }

    /// Signed determinant of the generator matrix.
    pub fn det(&self) -> Int {
        self.g1.det(&self.g2)
    }

    /// The index of the cone: |det(g1, g2)|, the number of lattice points in
    /// the half-open fundamental parallelepiped.
    pub fn index(&self) -> Int {
        self.det().abs()
    }

    /// Whether the generators form a lattice basis.
    pub fn is_unimodular(&self) -> bool {
        self.index().is_one()
    }

    /// The same cone with generators swapped so that det(g1, g2) = +1.
    /// Fails on non-unimodular cones.
    pub fn oriented_unimodular(&self) -> Result<AffineCone, Error> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        if self.det().is_one() {
            Ok(self.clone())
        } else {
            Ok(AffineCone {
                vertex: self.vertex.clone(),
                g1: self.g2.clone(),
                g2: self.g1.clone(),
            })
        }
    }

    /// Exact membership test (relative to the vertex).
    pub fn contains(&self, p: &RatPoint2) -> bool {
        let (u1, u2) = self.point_coords(p);
        !u1.is_negative() && !u2.is_negative()
    }

    /// Coordinates of a point in the (vertex; g1, g2) affine frame.
    pub fn point_coords(&self, p: &RatPoint2) -> (Rat, Rat) {
        let (dx, dy) = p.sub(&self.vertex);
        let det = Rat::from_integer(self.det());
        let g1 = &self.g1;
        let g2 = &self.g2;
        let u1 = (&dx * Rat::from_integer(g2.y.clone()) - &dy * Rat::from_integer(g2.x.clone()))
            / det.clone();
        let u2 =
            (Rat::from_integer(g1.x.clone()) * &dy - Rat::from_integer(g1.y.clone()) * &dx) / det;
        (u1, u2)
    }

    /// Coordinates of the cone's own vertex in the generator basis (as a
    /// vector from the origin), by Cramer's rule.
    pub fn vertex_coords(&self) -> (Rat, Rat) {
        let det = Rat::from_integer(self.det());
        let sx = &self.vertex.x;
        let sy = &self.vertex.y;
        let s1 = (sx * Rat::from_integer(self.g2.y.clone())
            - sy * Rat::from_integer(self.g2.x.clone()))
            / det.clone();
        let s2 = (Rat::from_integer(self.g1.x.clone()) * sy
            - Rat::from_integer(self.g1.y.clone()) * sx)
            / det;
        (s1, s2)
    }
}

impl std::fmt::Display for AffineCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cone(vertex {}; {}, {})", self.vertex, self.g1, self.g2)
    }
}

/// A cone together with a sign, as produced by the signed decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedCone {
    pub sign: i8,
    pub cone: AffineCone,
}

/// Rational coordinates of an integer vector in a cone's generator basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisCoordinates {
    pub u1: Rat,
    pub u2: Rat,
}

/// Expresses an integer vector in the generator basis of a cone, by Cramer's
/// rule.
pub fn coords_in_basis(v: &IntVec2, cone: &AffineCone) -> BasisCoordinates {
    let det = cone.det();
    let u1 = Rat::new(v.det(&cone.g2), det.clone());
    let u2 = Rat::new(cone.g1.det(v), det);
    BasisCoordinates { u1, u2 }
}

/// Deterministic choice among equally short vectors.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    /// Lexicographically smallest sign-normalized vector (the default).
    #[default]
    LexMin,
    /// Lexicographically largest; used to probe decomposition-path
    /// independence in tests.
    LexMax,
}

/// A candidate short vector: the integer vector `z` and its scaled basis
/// coordinates `w = det * (u1, u2)`, which stay integral.
#[derive(Clone, Debug)]
struct Candidate {
    z: IntVec2,
    w: IntVec2,
}

impl Candidate {
    fn norm2(&self) -> Int {
        self.w.dot(&self.w)
    }

    fn sup2(&self) -> Int {
        let x2 = &self.w.x * &self.w.x;
        let y2 = &self.w.y * &self.w.y;
        if x2 >= y2 {
            x2
        } else {
            y2
        }
    }

    fn sign_normalize(&mut self) {
        let flip = self.z.x.is_negative() || (self.z.x.is_zero() && self.z.y.is_negative());
        if flip {
            self.z = self.z.neg();
            self.w = self.w.neg();
        }
    }
}

/// Nearest integer to a/b (b > 0), ties rounded up.
fn round_div(a: &Int, b: &Int) -> Int {
    use num_integer::Integer;
    let num = a * Int::from(2) + b;
    let den = b * Int::from(2);
    num.div_floor(&den)
}

/// Finds a short vector for a non-unimodular cone: an integer vector whose
/// coordinates (u1, u2) in the generator basis satisfy
/// max(|u1|, |u2|) <= index^(-1/2), via Lagrange-Gauss reduction of the
/// scaled-coordinate lattice. Deterministic for a fixed tie-break.
pub fn short_vector(cone: &AffineCone) -> Result<IntVec2, Error> {
    short_vector_with(cone, TieBreak::LexMin)
}

/// [`short_vector`] with an explicit tie-break rule.
pub fn short_vector_with(cone: &AffineCone, tie: TieBreak) -> Result<IntVec2, Error> {
    Ok(short_vector_candidate(cone, tie)?.z)
}

fn short_vector_candidate(cone: &AffineCone, tie: TieBreak) -> Result<Candidate, Error> {
    let n = cone.index();
    if n.is_one() {
        return Err(Error::NotNeeded);
    }
    // Basis pairs (z, w) with w = det * (basis coordinates of z): the image
    // of z = (1, 0) is (g2.y, -g1.y) and of z = (0, 1) is (-g2.x, g1.x), by
    // Cramer's rule. The w-lattice has determinant +-index.
    let mut c1 = Candidate {
        z: IntVec2::new(1, 0),
        w: IntVec2::new(cone.g2.y.clone(), -cone.g1.y.clone()),
    };
    let mut c2 = Candidate {
        z: IntVec2::new(0, 1),
        w: IntVec2::new(-cone.g2.x.clone(), cone.g1.x.clone()),
    };

    // Lagrange-Gauss reduction in the Euclidean norm of w.
    loop {
        if c1.norm2() > c2.norm2() {
            std::mem::swap(&mut c1, &mut c2);
        }
        let n1 = c1.norm2();
        let d = c1.w.dot(&c2.w);
        let q = round_div(&d, &n1);
        if q.is_zero() {
            break;
        }
        let old = c2.norm2();
        let next = Candidate {
            z: IntVec2 {
                x: &c2.z.x - &q * &c1.z.x,
                y: &c2.z.y - &q * &c1.z.y,
            },
            w: IntVec2 {
                x: &c2.w.x - &q * &c1.w.x,
                y: &c2.w.y - &q * &c1.w.y,
            },
        };
        if next.norm2() >= old {
            break;
        }
        c2 = next;
    }

    // For a reduced basis the shortest lattice vector in any norm lies among
    // the basis vectors and their sum/difference.
    let sum = Candidate {
        z: IntVec2 {
            x: &c1.z.x + &c2.z.x,
            y: &c1.z.y + &c2.z.y,
        },
        w: IntVec2 {
            x: &c1.w.x + &c2.w.x,
            y: &c1.w.y + &c2.w.y,
        },
    };
    let diff = Candidate {
        z: IntVec2 {
            x: &c1.z.x - &c2.z.x,
            y: &c1.z.y - &c2.z.y,
        },
        w: IntVec2 {
            x: &c1.w.x - &c2.w.x,
            y: &c1.w.y - &c2.w.y,
        },
    };
    let mut candidates = vec![c1, c2, sum, diff];
    for c in &mut candidates {
        c.sign_normalize();
    }
    // Keep only candidates meeting the bound max|u_i| <= n^(-1/2), i.e.
    // w_i^2 <= n since |det| = n.
    candidates.retain(|c| {
        let x2 = &c.w.x * &c.w.x;
        let y2 = &c.w.y * &c.w.y;
        x2 <= n && y2 <= n
    });
    assert!(
        !candidates.is_empty(),
        "reduced basis must contain a vector within the Minkowski bound"
    );
    let best = candidates
        .into_iter()
        .min_by(|a, b| {
            let by_sup = a.sup2().cmp(&b.sup2());
            let by_lex = match tie {
                TieBreak::LexMin => a.z.cmp(&b.z),
                TieBreak::LexMax => b.z.cmp(&a.z),
            };
            by_sup.then(by_lex)
        })
        .unwrap();
    debug_assert!(
        !best.w.x.is_zero() && !best.w.y.is_zero(),
        "short vector proportional to a generator is impossible for primitive generators"
    );
    Ok(best)
}

/// One step of the signed decomposition: splits a non-unimodular cone into
/// two signed children of strictly smaller index sharing the same vertex.
///
/// The children represent the parent modulo cones that contain a line, which
/// contribute nothing to any of the summation formulas downstream.
pub fn signed_decompose_step(cone: &AffineCone) -> Result<Vec<SignedCone>, Error> {
    signed_decompose_step_with(cone, TieBreak::LexMin)
}

/// [`signed_decompose_step`] with an explicit tie-break rule.
pub fn signed_decompose_step_with(
    cone: &AffineCone,
    tie: TieBreak,
) -> Result<Vec<SignedCone>, Error> {
    let cand = short_vector_candidate(cone, tie)?;
    Ok(decompose_with_vector(cone, &cand.z))
}

/// Applies the decomposition identity with an explicitly chosen short vector.
/// `v` must have non-zero coordinates in the generator basis.
pub(crate) fn decompose_with_vector(cone: &AffineCone, v: &IntVec2) -> Vec<SignedCone> {
    let coords = coords_in_basis(v, cone);
    let s1 = coords.u1.is_positive();
    let s2 = coords.u2.is_positive();
    assert!(
        !coords.u1.is_zero() && !coords.u2.is_zero(),
        "short vector must be independent of both generators"
    );
    let vx = &cone.vertex;
    let mk = |g1: IntVec2, g2: IntVec2| AffineCone::new(vx.clone(), g1, g2);
    let v1 = cone.g1.clone();
    let v2 = cone.g2.clone();
    match (s1, s2) {
        (true, true) => vec![
            SignedCone {
                sign: 1,
                cone: mk(v1, v.clone()),
            },
            SignedCone {
                sign: -1,
                cone: mk(v2.neg(), v.clone()),
            },
        ],
        (true, false) => vec![
            SignedCone {
                sign: 1,
                cone: mk(v.clone(), v2),
            },
            SignedCone {
                sign: 1,
                cone: mk(v1, v.neg()),
            },
        ],
        (false, true) => vec![
            SignedCone {
                sign: 1,
                cone: mk(v.clone(), v1),
            },
            SignedCone {
                sign: 1,
                cone: mk(v2, v.neg()),
            },
        ],
        (false, false) => vec![
            SignedCone {
                sign: 1,
                cone: mk(v.neg(), v2),
            },
            SignedCone {
                sign: -1,
                cone: mk(v.neg(), v1.neg()),
            },
        ],
    }
}

/// Fully decomposes a cone into signed unimodular cones with det(g1, g2) = +1,
/// all sharing the original vertex.
pub fn barvinok_decompose(cone: &AffineCone) -> Vec<SignedCone> {
    barvinok_decompose_with(cone, TieBreak::LexMin)
}

/// [`barvinok_decompose`] with an explicit short-vector tie-break rule.
pub fn barvinok_decompose_with(cone: &AffineCone, tie: TieBreak) -> Vec<SignedCone> {
    let mut out = Vec::new();
    let mut stack = vec![SignedCone {
        sign: 1,
        cone: cone.clone(),
    }];
    while let Some(SignedCone { sign, cone }) = stack.pop() {
        if cone.is_unimodular() {
            let oriented = cone.oriented_unimodular().expect("index is one");
            out.push(SignedCone {
                sign,
                cone: oriented,
            });
        } else {
            let children = signed_decompose_step_with(&cone, tie).expect("index is at least two");
            for child in children.into_iter().rev() {
                debug_assert!(child.cone.index() < cone.index());
                stack.push(SignedCone {
                    sign: sign * child.sign,
                    cone: child.cone,
                });
            }
        }
    }
    out
}

impl Polygon {
    /// The supporting cone at vertex `i`: generators are the primitive
    /// directions towards the next and the previous vertex.
    pub fn vertex_cone(&self, i: usize) -> AffineCone {
        let v = self.vertex(i);
        let to_next = v
            .direction_to(self.next_vertex(i))
            .expect("distinct vertices");
        let to_prev = v
            .direction_to(self.prev_vertex(i))
            .expect("distinct vertices");
        AffineCone::new(v.clone(), to_next, to_prev)
    }
}
