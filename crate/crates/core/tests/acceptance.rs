//! End-to-end acceptance checks for the lattice-sum library.
//!
//! Each test prints one `ACCEPTANCE PASS/FAIL` line per criterion (run with
//! `--nocapture` to see them) and fails the build on any mismatch.  The
//! criteria fall into three groups: exact golden values for small worked
//! examples, runtime budgets for the high-degree sums, and randomized
//! property suites with fixed seeds.

use latsum::brion::cone_series;
use latsum::cone::{barvinok_decompose, coords_in_basis, short_vector, signed_decompose_step};
use latsum::ehrhart::{integrate_over_polygon, integrate_over_polygon_green};
use latsum::series::Series2;
use latsum::{
    coeff_t_ehrhart, convex_hull, ehrhart_quasipolynomial, number_points_polygon, rat,
    sum_monomial_polygon, sum_polynomial_polygon, AffineCone, Int, IntVec2, Poly2, Polygon, Rat,
    RatPoint2,
};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn check(name: &str, ok: bool) {
    if ok {
        println!("ACCEPTANCE PASS - {name}");
    } else {
        println!("ACCEPTANCE FAIL - {name}");
    }
    assert!(ok, "acceptance criterion failed: {name}");
}

fn q(s: &str) -> Rat {
    s.parse().unwrap()
}

fn pt(x: &str, y: &str) -> RatPoint2 {
    RatPoint2::new(q(x), q(y))
}

fn hull_of(points: &[(&str, &str)]) -> Polygon {
    let pts: Vec<RatPoint2> = points.iter().map(|(x, y)| pt(x, y)).collect();
    convex_hull(&pts).unwrap()
}

fn big(s: &str) -> Int {
    s.parse().unwrap()
}

fn int_pow(base: &Int, e: u32) -> Int {
    let mut acc = Int::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

fn enumeration_sum(p: &Polygon, m1: u32, m2: u32) -> Int {
    let mut acc = Int::zero();
    for point in p.lattice_points() {
        acc += int_pow(&point.x, m1) * int_pow(&point.y, m2);
    }
    acc
}

fn unit_square() -> Polygon {
    hull_of(&[("0", "0"), ("1", "0"), ("1", "1"), ("0", "1")])
}

fn centered_square() -> Polygon {
    hull_of(&[
        ("-1/2", "-1/2"),
        ("1/2", "-1/2"),
        ("1/2", "1/2"),
        ("-1/2", "1/2"),
    ])
}

/// A scattered cloud of 15 rational points whose hull has 6 vertices and 45
/// interior lattice points; exercises hull extraction on non-trivial input.
fn point_cloud_hull() -> Polygon {
    hull_of(&[
        ("77/8", "97/59"),
        ("93/44", "70/29"),
        ("0", "25/12"),
        ("25/32", "29/48"),
        ("92/41", "57/91"),
        ("9/4", "1/7"),
        ("64/43", "31/75"),
        ("91/17", "33/86"),
        ("12/37", "77/8"),
        ("8/5", "41/27"),
        ("80/67", "11/9"),
        ("16/73", "11/89"),
        ("41/20", "43/88"),
        ("32/49", "59/23"),
        ("77/94", "65/46"),
    ])
}

/// A thin rational triangle with large coordinate denominators; its vertex
/// cones have large indices, so the signed decomposition does real work.
fn rational_triangle() -> Polygon {
    hull_of(&[
        ("-567337/102495", "-1414975/95662"),
        ("1/3", "1/5"),
        ("-88141/20499", "12732/47831"),
    ])
}

fn random_rat(rng: &mut ChaCha8Rng, dens: &[i64]) -> Rat {
    rat(rng.gen_range(-10..=10), dens[rng.gen_range(0..dens.len())])
}

fn random_polygon(rng: &mut ChaCha8Rng, dens: &[i64]) -> Polygon {
    loop {
        let k = rng.gen_range(3..=8);
        let pts: Vec<RatPoint2> = (0..k)
            .map(|_| RatPoint2::new(random_rat(rng, dens), random_rat(rng, dens)))
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            return p;
        }
    }
}

/// 50 random polygons with 3-8 hull vertices, numerators up to 10 and
/// denominators up to 12; shared by the enumeration and cancellation suites.
fn oracle_corpus() -> Vec<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let dens: Vec<i64> = (1..=12).collect();
    (0..50).map(|_| random_polygon(&mut rng, &dens)).collect()
}

/// 20 random polygons whose vertex denominators divide 12, keeping the
/// dilation period small enough to evaluate over two full periods.
fn cross_validation_corpus() -> Vec<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    (0..20)
        .map(|_| random_polygon(&mut rng, &[1, 2, 3, 4, 6]))
        .collect()
}

const HULL_SUM_32: &str = "987532646688766560932727042325214847653263886";
const HULL_SUM_32_PLUS_7: &str = "987532646688766560932727042325214847653264201";
const TRIANGLE_SUM_32: &str = "11156693714080121436809683716369682546812787494001398139657";
const TRIANGLE_SUM_64: &str = concat!(
    "10691662746975383171690687952963005219723639375189814",
    "217756070191566530558879",
    "3836513555847334896253718879462978590217"
);
const DILATED_TRIANGLE_SUM_64: &str = concat!(
    "17831035913722066043589677840496661987989193563450057671832979767102708226068",
    "905195223428957659882216123374803724362290728944933635792703052976782671238",
    "401601191375977184037799597789861617132380131198911864015293592136365221852",
    "952449214916133197928922419462989960495593699297670700652853834584439172901",
    "857916119694620105996329573478014513449383738873972550889051937620201341771",
    "829110756841837358870588454172079624770000592845281113102517836579429050870",
    "20099703621578931359063825440122383120351301766010118556183"
);

#[test]
fn unit_square_count_and_power_sum() {
    let p = unit_square();
    let ok =
        number_points_polygon(&p) == Int::from(4) && sum_monomial_polygon(&p, 5, 5) == Int::one();
    check("unit square: 4 lattice points, x^5*y^5 sums to 1", ok);
}

#[test]
fn point_cloud_hull_count_and_vertex_cycle() {
    let p = point_cloud_hull();
    let expected = [
        pt("0", "25/12"),
        pt("16/73", "11/89"),
        pt("9/4", "1/7"),
        pt("91/17", "33/86"),
        pt("77/8", "97/59"),
        pt("12/37", "77/8"),
    ];
    let got = p.vertices();
    let n = expected.len();
    let cyclic_match =
        got.len() == n && (0..n).any(|off| (0..n).all(|k| got[(k + off) % n] == expected[k]));
    let ok = number_points_polygon(&p) == Int::from(45) && cyclic_match;
    check(
        "15-point cloud: hull has the 6 expected vertices (up to cyclic start) and 45 lattice points",
        ok,
    );
}

#[test]
fn point_cloud_hull_high_degree_sums() {
    let p = point_cloud_hull();
    let s32 = sum_monomial_polygon(&p, 32, 32);
    let h = Poly2::monomial(32, 32, Rat::one()).add(&Poly2::monomial(0, 0, rat(7, 1)));
    let shifted = sum_polynomial_polygon(&p, &h);
    let ok = s32 == big(HULL_SUM_32)
        && shifted == Rat::from_integer(big(HULL_SUM_32_PLUS_7))
        && shifted - Rat::from_integer(s32) == rat(7 * 45, 1);
    check(
        "15-point cloud hull: x^32*y^32 sum, x^32*y^32+7 sum, and their difference 7*45",
        ok,
    );
}

#[test]
fn triangle_lattice_point_counts() {
    let a = rational_triangle();
    let dilated = a.dilate(&Rat::from_integer(Int::from(1000)));
    let ok = number_points_polygon(&a) == Int::from(36)
        && number_points_polygon(&dilated) == Int::from(34922612);
    check(
        "thin triangle: 36 lattice points, 34922612 after dilation by 1000",
        ok,
    );
}

#[test]
fn triangle_high_degree_sums_within_budget() {
    let a = rational_triangle();
    let dilated = a.dilate(&Rat::from_integer(Int::from(1000)));

    let s32 = sum_monomial_polygon(&a, 32, 32);

    let t0 = Instant::now();
    let s64 = sum_monomial_polygon(&a, 64, 64);
    let time_a = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let s64_dilated = sum_monomial_polygon(&dilated, 64, 64);
    let time_dilated = t1.elapsed().as_secs_f64();

    let ok = s32 == big(TRIANGLE_SUM_32)
        && s64 == big(TRIANGLE_SUM_64)
        && s64_dilated == big(DILATED_TRIANGLE_SUM_64);
    check(
        "thin triangle: x^32*y^32 and x^64*y^64 sums, before and after dilation",
        ok,
    );
    check(
        &format!("budget: x^64*y^64 over the triangle took {time_a:.2} s (limit 30)"),
        time_a <= 30.0,
    );
    check(
        &format!("budget: x^64*y^64 over the dilated triangle took {time_dilated:.2} s (limit 60)"),
        time_dilated <= 60.0,
    );
    let ratio = time_a.max(time_dilated) / time_a.min(time_dilated).max(1e-9);
    check(
        &format!("budget: dilation by 1000 changed the runtime by {ratio:.2}x (limit 3x)"),
        ratio <= 3.0,
    );
}

#[test]
fn unit_square_quasi_polynomial_values() {
    let p = unit_square();
    let h = Poly2::monomial(0, 0, Rat::one());
    let qp = ehrhart_quasipolynomial(&p, &h);
    let mut ok = true;
    for t in 0..=6i64 {
        ok &= qp.evaluate(&Int::from(t)) == Rat::from_integer(Int::from((t + 1) * (t + 1)));
    }
    let c0 = coeff_t_ehrhart(&p, &h, 0).unwrap();
    ok &= c0.as_constant() == Some(Rat::one());
    check(
        "unit square counting quasi-polynomial: (t+1)^2 at t = 0..6, constant coefficient 1",
        ok,
    );
}

#[test]
fn centered_square_quasi_polynomial_values() {
    let p = centered_square();
    let h = Poly2::monomial(0, 0, Rat::one());
    let qp = ehrhart_quasipolynomial(&p, &h);
    let mut ok = true;
    for t in 1..=8i64 {
        let want = if t % 2 == 0 { (t + 1) * (t + 1) } else { t * t };
        ok &= qp.evaluate(&Int::from(t)) == Rat::from_integer(Int::from(want));
    }
    check(
        "half-integral square counting quasi-polynomial: (t+1)^2 at even t, t^2 at odd t, t = 1..8",
        ok,
    );
}

#[test]
fn generating_function_sums_match_enumeration() {
    let mut ok = true;
    for p in oracle_corpus() {
        for m1 in 0..=6u32 {
            for m2 in 0..=(6 - m1) {
                if sum_monomial_polygon(&p, m1, m2) != enumeration_sum(&p, m1, m2) {
                    ok = false;
                }
            }
        }
    }
    check(
        "generating-function sums equal enumeration on 50 random polygons, all degrees up to 6",
        ok,
    );
}

#[test]
fn quasi_polynomial_matches_dilated_sums() {
    let mut ok = true;
    for p in cross_validation_corpus() {
        let period = p.dilation_period().to_i64().unwrap();
        let dilations: Vec<(Int, Polygon)> = (1..=2 * period)
            .map(|t| {
                let ti = Int::from(t);
                let dilated = p.dilate(&Rat::from_integer(ti.clone()));
                (ti, dilated)
            })
            .collect();
        for m1 in 0..=4u32 {
            for m2 in 0..=(4 - m1) {
                let h = Poly2::monomial(m1, m2, Rat::one());
                let qp = ehrhart_quasipolynomial(&p, &h);
                for (ti, dilated) in &dilations {
                    let direct = sum_monomial_polygon(dilated, m1, m2);
                    if qp.evaluate(ti) != Rat::from_integer(direct) {
                        ok = false;
                    }
                }
            }
        }
    }
    check(
        "quasi-polynomial values equal dilated-polygon sums over two periods on 20 random polygons",
        ok,
    );
}

#[test]
fn vertex_series_negative_exponents_cancel() {
    let mut corpus = oracle_corpus();
    corpus.push(unit_square());
    corpus.push(centered_square());
    corpus.push(point_cloud_hull());
    corpus.push(rational_triangle());
    corpus.push(rational_triangle().dilate(&Rat::from_integer(Int::from(1000))));

    let order = 4;
    let mut ok = true;
    for (pi, p) in corpus.iter().enumerate() {
        let mut total: Series2<Rat> = Series2::zero(order);
        for i in 0..p.len() {
            total = total.add(&cone_series(p, i, order).to_series());
        }
        for (&(e1, e2), c) in total.iter() {
            if (e1 < 0 || e2 < 0) && !c.is_zero() {
                eprintln!(
                    "survivor: polygon {pi} ({} vertices) term ({e1}, {e2}) = {c}",
                    p.len()
                );
                ok = false;
            }
        }
    }
    check(
        "negative exponents cancel in the summed vertex-cone series on the whole corpus",
        ok,
    );
}

#[test]
fn coefficient_periodicity_and_top_coefficient() {
    let mut ok = true;
    for p in cross_validation_corpus() {
        let period = p.dilation_period().to_i64().unwrap();
        for m1 in 0..=4u32 {
            for m2 in 0..=(4 - m1) {
                let h = Poly2::monomial(m1, m2, Rat::one());
                let qp = ehrhart_quasipolynomial(&p, &h);
                for coeff in qp.coefficients() {
                    for t in 0..2 * period {
                        if coeff.evaluate(&Int::from(t)) != coeff.evaluate(&Int::from(t + period)) {
                            ok = false;
                        }
                    }
                }
                let top = qp.coefficient((m1 + m2 + 2) as usize).unwrap();
                let by_triangulation = integrate_over_polygon(&p, &h);
                let by_boundary = integrate_over_polygon_green(&p, &h);
                ok &= by_triangulation == by_boundary;
                ok &= top.as_constant() == Some(by_triangulation);
            }
        }
    }
    check(
        "coefficients repeat with the dilation period; top coefficient equals the integral by both integrators",
        ok,
    );
}

#[test]
fn decomposition_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9000);
    let limit = Int::from(1_000_000);
    let mut ok = true;
    let mut max_index = Int::zero();
    let mut done = 0;
    while done < 1000 {
        let g1 = IntVec2::new(
            rng.gen_range(-1000i64..=1000),
            rng.gen_range(-1000i64..=1000),
        );
        let g2 = IntVec2::new(
            rng.gen_range(-1000i64..=1000),
            rng.gen_range(-1000i64..=1000),
        );
        if g1.is_zero() || g2.is_zero() || g1.det(&g2).is_zero() {
            continue;
        }
        let cone = AffineCone::new(
            RatPoint2::new(rat(rng.gen_range(-5..=5), 3), rat(rng.gen_range(-5..=5), 3)),
            g1,
            g2,
        );
        let n = cone.index();
        if n.is_one() || n > limit {
            continue;
        }
        if n > max_index {
            max_index = n.clone();
        }
        done += 1;

        // Walk the full recursion, re-checking the short-vector bound and the
        // strict index decrease at every internal node.
        let mut stack = vec![cone.clone()];
        while let Some(c) = stack.pop() {
            if c.is_unimodular() {
                continue;
            }
            let idx = c.index();
            let z = short_vector(&c).unwrap();
            let u = coords_in_basis(&z, &c);
            let bound = Rat::new(Int::one(), idx.clone());
            ok &= &u.u1 * &u.u1 <= bound && &u.u2 * &u.u2 <= bound;
            for child in signed_decompose_step(&c).unwrap() {
                ok &= child.cone.index() < idx;
                stack.push(child.cone);
            }
        }

        for part in barvinok_decompose(&cone) {
            ok &= part.cone.det() == Int::one();
        }
    }
    // The sample must actually reach large indices for the bound to mean much.
    ok &= max_index > Int::from(500_000);
    check(
        "signed decomposition on 1000 random cones with index up to 10^6: unimodular output, decreasing index, short-vector bound",
        ok,
    );
}

#[test]
fn integer_vertex_polygons_collapse_to_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut ok = true;
    let mut done = 0;
    while done < 20 {
        let k = rng.gen_range(3..=8);
        let pts: Vec<RatPoint2> = (0..k)
            .map(|_| RatPoint2::new(rat(rng.gen_range(-9..=9), 1), rat(rng.gen_range(-9..=9), 1)))
            .collect();
        let Ok(p) = convex_hull(&pts) else { continue };
        done += 1;

        for (m1, m2) in [(0u32, 0u32), (1, 0), (1, 1)] {
            let h = Poly2::monomial(m1, m2, Rat::one());
            let qp = ehrhart_quasipolynomial(&p, &h);
            ok &= qp.period().is_one();
            ok &= qp.coefficients().iter().all(|c| c.is_constant());
            let at_one = qp.evaluate(&Int::one());
            ok &= at_one == Rat::from_integer(enumeration_sum(&p, m1, m2));
        }
    }
    check(
        "integer-vertex polygons give symbol-free polynomials whose value at 1 is the direct sum",
        ok,
    );
}
