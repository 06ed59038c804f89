//! Bounded domains described by a distance lower bound and a boundary
//! projection: balls, axis-aligned boxes and finite unions/intersections.

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::point::{dist, norm, Point};
use crate::rng::{unit_direction, StreamRng};

/// Distance oracle for a bounded domain `D` in `R^m`.
///
/// `dist` must be positive inside `D` and never exceed the true distance to
/// the boundary; walk-on-spheres relies on that to keep every jump inside.
pub trait DomainGeometry: Sync {
    fn dim(&self) -> usize;

    /// Lower bound on the distance to the boundary; `<= 0` outside.
    fn dist(&self, x: &[f64]) -> f64;

    /// A boundary point near `x` (the nearest one for primitives).
    fn project(&self, x: &[f64]) -> Point;

    /// Axis-aligned bounding box `(lo, hi)`.
    fn bbox(&self) -> (Point, Point);

    /// A random boundary point.
    fn sample_boundary(&self, rng: &mut StreamRng) -> Point;

    fn contains(&self, x: &[f64]) -> bool {
        self.dist(x) > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    Ball { center: Point, radius: f64 },
    Box { lo: Point, hi: Point },
    Union { members: Vec<Shape> },
    Intersection { members: Vec<Shape> },
}

impl Shape {
    pub fn ball(center: impl Into<Point>, radius: f64) -> Result<Shape> {
        let center = center.into();
        if center.dim() < 2 {
            return domain("domains need dimension >= 2");
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return domain(format!("ball radius must be positive, got {radius}"));
        }
        Ok(Shape::Ball { center, radius })
    }

    pub fn unit_ball(m: usize) -> Result<Shape> {
        Shape::ball(Point::origin(m), 1.0)
    }

    pub fn aabb(lo: impl Into<Point>, hi: impl Into<Point>) -> Result<Shape> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo.dim() != hi.dim() || lo.dim() < 2 {
            return domain("box corners must share a dimension >= 2");
        }
        if lo.iter().zip(hi.iter()).any(|(a, b)| !(a < b)) {
            return domain("box needs lo < hi in every coordinate");
        }
        Ok(Shape::Box { lo, hi })
    }

    /// The cube `[-h, h]^m`.
    pub fn cube(m: usize, half: f64) -> Result<Shape> {
        Shape::aabb(vec![-half; m], vec![half; m])
    }

    pub fn union(members: Vec<Shape>) -> Result<Shape> {
        check_members(&members)?;
        Ok(Shape::Union { members })
    }

    pub fn intersection(members: Vec<Shape>) -> Result<Shape> {
        check_members(&members)?;
        Ok(Shape::Intersection { members })
    }

    /// Signed distance: negative inside. Exact for primitives, a bound for
    /// CSG combinations.
    pub fn sdf(&self, x: &[f64]) -> f64 {
        match self {
            Shape::Ball { center, radius } => dist(x, center) - radius,
            Shape::Box { lo, hi } => {
                let mut outside = 0.0;
                let mut inside = f64::NEG_INFINITY;
                for i in 0..x.len() {
                    let c = 0.5 * (lo[i] + hi[i]);
                    let h = 0.5 * (hi[i] - lo[i]);
                    let q = (x[i] - c).abs() - h;
                    outside += q.max(0.0).powi(2);
                    inside = inside.max(q);
                }
                outside.sqrt() + inside.min(0.0)
            }
            Shape::Union { members } => members
                .iter()
                .map(|s| s.sdf(x))
                .fold(f64::INFINITY, f64::min),
            Shape::Intersection { members } => members
                .iter()
                .map(|s| s.sdf(x))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn boundary_area_weight(&self) -> f64 {
        match self {
            Shape::Ball { radius, center } => radius.powi(center.dim() as i32 - 1),
            Shape::Box { lo, hi } => {
                let ext: Vec<f64> = lo.iter().zip(hi.iter()).map(|(a, b)| b - a).collect();
                let vol: f64 = ext.iter().product();
                ext.iter().map(|e| 2.0 * vol / e).sum()
            }
            Shape::Union { members } | Shape::Intersection { members } => {
                members.iter().map(Shape::boundary_area_weight).sum()
            }
        }
    }
}

fn check_members(members: &[Shape]) -> Result<()> {
    let Some(first) = members.first() else {
        return domain("CSG combination needs at least one member");
    };
    if members.iter().any(|s| s.dim() != first.dim()) {
        return domain("CSG members must share a dimension");
    }
    Ok(())
}

impl DomainGeometry for Shape {
    fn dim(&self) -> usize {
        match self {
            Shape::Ball { center, .. } => center.dim(),
            Shape::Box { lo, .. } => lo.dim(),
            Shape::Union { members } | Shape::Intersection { members } => members[0].dim(),
        }
    }

    fn dist(&self, x: &[f64]) -> f64 {
        -self.sdf(x)
    }

    fn project(&self, x: &[f64]) -> Point {
        match self {
            Shape::Ball { center, radius } => {
                let d: Vec<f64> = x.iter().zip(center.iter()).map(|(a, c)| a - c).collect();
                let n = norm(&d);
                if n == 0.0 {
                    let mut p = center.clone();
                    p[0] += radius;
                    return p;
                }
                center.offset(radius / n, &d)
            }
            Shape::Box { lo, hi } => {
                let inside = x
                    .iter()
                    .zip(lo.iter().zip(hi.iter()))
                    .all(|(v, (a, b))| v > a && v < b);
                if !inside {
                    return Point(
                        x.iter()
                            .zip(lo.iter().zip(hi.iter()))
                            .map(|(v, (a, b))| v.clamp(*a, *b))
                            .collect(),
                    );
                }
                // Push the coordinate closest to a face onto that face.
                let mut best = (f64::INFINITY, 0, 0.0);
                for i in 0..x.len() {
                    let to_lo = x[i] - lo[i];
                    let to_hi = hi[i] - x[i];
                    if to_lo < best.0 {
                        best = (to_lo, i, lo[i]);
                    }
                    if to_hi < best.0 {
                        best = (to_hi, i, hi[i]);
                    }
                }
                let mut p = Point(x.to_vec());
                p[best.1] = best.2;
                p
            }
            Shape::Union { members } => {
                let inside = self.sdf(x) < 0.0;
                // Inside: the member whose boundary is farthest; outside: nearest.
                let pick = members
                    .iter()
                    .map(|s| (s, s.sdf(x)))
                    .min_by(|a, b| {
                        let (ka, kb) = if inside {
                            (a.1, b.1)
                        } else {
                            (a.1.abs(), b.1.abs())
                        };
                        ka.total_cmp(&kb)
                    })
                    .map(|(s, _)| s)
                    .expect("non-empty");
                pick.project(x)
            }
            Shape::Intersection { members } => members
                .iter()
                .max_by(|a, b| a.sdf(x).total_cmp(&b.sdf(x)))
                .expect("non-empty")
                .project(x),
        }
    }

    fn bbox(&self) -> (Point, Point) {
        match self {
            Shape::Ball { center, radius } => (
                Point(center.iter().map(|c| c - radius).collect()),
                Point(center.iter().map(|c| c + radius).collect()),
            ),
            Shape::Box { lo, hi } => (lo.clone(), hi.clone()),
            Shape::Union { members } => {
                let boxes: Vec<_> = members.iter().map(|s| s.bbox()).collect();
                combine_boxes(&boxes, f64::min, f64::max)
            }
            Shape::Intersection { members } => {
                let boxes: Vec<_> = members.iter().map(|s| s.bbox()).collect();
                combine_boxes(&boxes, f64::max, f64::min)
            }
        }
    }

    fn sample_boundary(&self, rng: &mut StreamRng) -> Point {
        match self {
            Shape::Ball { center, radius } => {
                let mut d = vec![0.0; center.dim()];
                unit_direction(rng, &mut d);
                center.offset(*radius, &d)
            }
            Shape::Box { lo, hi } => {
                let m = lo.dim();
                let ext: Vec<f64> = lo.iter().zip(hi.iter()).map(|(a, b)| b - a).collect();
                let vol: f64 = ext.iter().product();
                let face_areas: Vec<f64> = ext.iter().map(|e| vol / e).collect();
                let total: f64 = face_areas.iter().sum();
                let mut pick = rng.random::<f64>() * total;
                let mut axis = m - 1;
                for (i, a) in face_areas.iter().enumerate() {
                    if pick < *a {
                        axis = i;
                        break;
                    }
                    pick -= a;
                }
                let mut p: Vec<f64> = (0..m)
                    .map(|i| lo[i] + ext[i] * rng.random::<f64>())
                    .collect();
                p[axis] = if rng.random::<bool>() {
                    hi[axis]
                } else {
                    lo[axis]
                };
                Point(p)
            }
            Shape::Union { members } | Shape::Intersection { members } => {
                let weights: Vec<f64> = members.iter().map(Shape::boundary_area_weight).collect();
                let total: f64 = weights.iter().sum();
                let mut last = None;
                for _ in 0..10_000 {
                    let mut pick = rng.random::<f64>() * total;
                    let mut idx = members.len() - 1;
                    for (i, w) in weights.iter().enumerate() {
                        if pick < *w {
                            idx = i;
                            break;
                        }
                        pick -= w;
                    }
                    let p = members[idx].sample_boundary(rng);
                    if self.sdf(&p).abs() <= 1e-9 {
                        return p;
                    }
                    last = Some(p);
                }
                self.project(&last.expect("at least one attempt"))
            }
        }
    }
}

fn combine_boxes(
    boxes: &[(Point, Point)],
    lo_op: fn(f64, f64) -> f64,
    hi_op: fn(f64, f64) -> f64,
) -> (Point, Point) {
    let mut lo = boxes[0].0.clone();
    let mut hi = boxes[0].1.clone();
    for (l, h) in &boxes[1..] {
        for i in 0..lo.dim() {
            lo[i] = lo_op(lo[i], l[i]);
            hi[i] = hi_op(hi[i], h[i]);
        }
    }
    (lo, hi)
}

/// Radical inverse of `i` in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let inv = 1.0 / b as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    r
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// `n` quasi-random interior points: a randomly shifted Halton sequence in
/// the bounding box, keeping points with `dist > 0`.
pub fn interior_points<D: DomainGeometry + ?Sized>(
    geom: &D,
    n: usize,
    rng: &mut StreamRng,
) -> Vec<Point> {
    let m = geom.dim();
    assert!(
        m <= PRIMES.len(),
        "Halton bases available up to dimension 16"
    );
    let (lo, hi) = geom.bbox();
    let shift: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
    let mut out = Vec::with_capacity(n);
    let mut i = 1u64;
    // Rejection; bail out rather than loop forever on a degenerate domain.
    while out.len() < n && i < 1000 * n as u64 + 1000 {
        let p: Vec<f64> = (0..m)
            .map(|k| {
                let u = (radical_inverse(i, PRIMES[k]) + shift[k]).fract();
                lo[k] + (hi[k] - lo[k]) * u
            })
            .collect();
        if geom.dist(&p) > 0.0 {
            out.push(Point(p));
        }
        i += 1;
    }
    out
}
