//! The Lozi map `L(x, y) = (1 + y − a|x|, b·x)` and its closed-form landmarks.
//!
//! Everything here is exact over ℚ(√(a² + 4b)) except [`render_attractor`],
//! which iterates in `f64` and is only meant for pictures.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{ExactError, QuadExt, QuadField, Rational};
use crate::word::{Symbol, SymbolWord};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("parameters outside the construction domain (need a > 1 and 0 < b < 1): a = {a}, b = {b}")]
    OutOfDomain { a: String, b: String },
    #[error("degenerate denominator in the fixed-point formula")]
    DegenerateFixedPoint,
    #[error("trapping triangle is degenerate (vertices are collinear)")]
    DegenerateTriangle,
    #[error("orbit diverged at iteration {iteration}: ({x}, {y})")]
    Diverged { iteration: u64, x: f64, y: f64 },
    #[error("invalid render request: {0}")]
    InvalidRender(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A point of the plane with coordinates in ℚ(√D).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub x: QuadExt,
    pub y: QuadExt,
}

impl PlanePoint {
    pub fn new(x: QuadExt, y: QuadExt) -> Self {
        debug_assert!(x.field().same_as(y.field()));
        PlanePoint { x, y }
    }

    pub fn from_rationals(field: &QuadField, x: Rational, y: Rational) -> Self {
        PlanePoint {
            x: field.rational(x),
            y: field.rational(y),
        }
    }

    pub fn sub(&self, other: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &PlanePoint) -> PlanePoint {
        PlanePoint::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, t: &QuadExt) -> PlanePoint {
        PlanePoint::new(&self.x * t, &self.y * t)
    }

    /// `self + t·(other − self)`.
    pub fn lerp(&self, other: &PlanePoint, t: &QuadExt) -> PlanePoint {
        self.add(&other.sub(self).scale(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// 2D cross product of `u` and `v`.
pub fn cross(u: &PlanePoint, v: &PlanePoint) -> QuadExt {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &PlanePoint, v: &PlanePoint) -> QuadExt {
    &u.x * &v.x + &u.y * &v.y
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> bool {
    segment_parameter(p, a, b).is_some()
}

/// The parameter `t ∈ [0, 1]` with `p = a + t(b − a)`, if `p` is on `[a, b]`.
pub fn segment_parameter(p: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> Option<QuadExt> {
    let ab = b.sub(a);
    let ap = p.sub(a);
    if cross(&ab, &ap).sign() != 0 {
        return None;
    }
    let len2 = dot(&ab, &ab);
    if len2.is_zero() {
        return (p == a).then(|| a.x.field().zero());
    }
    let t = dot(&ap, &ab).try_div(&len2).ok()?;
    (t.sign() >= 0 && (&t - &a.x.field().one()).sign() <= 0).then_some(t)
}

/// Lozi parameters `(a, b)` with the derived radicand `D = a² + 4b`.
#[derive(Clone, Debug)]
pub struct Params {
    a: Rational,
    b: Rational,
    field: QuadField,
    in_s: bool,
}

impl Params {
    /// Accepts `a > 1`, `0 < b < 1`. Parameters outside the set S are allowed;
    /// check [`Params::in_s`].
    pub fn new(a: Rational, b: Rational) -> Result<Self, GeometryError> {
        if a <= Rational::one() || !b.is_positive() || b >= Rational::one() {
            return Err(GeometryError::OutOfDomain {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let d = &a * &a + Rational::from_integer(4.into()) * &b;
        let field = QuadField::new(d)?;
        let in_s = in_set_s(&a, &b);
        Ok(Params { a, b, field, in_s })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Rational {
        self.field.d()
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn in_s(&self) -> bool {
        self.in_s
    }

    pub fn point(&self, x: Rational, y: Rational) -> PlanePoint {
        PlanePoint::from_rationals(&self.field, x, y)
    }

    /// `L(x, y) = (1 + y − a|x|, b·x)`.
    pub fn lozi_apply(&self, p: &PlanePoint) -> PlanePoint {
        let ax = p.x.abs().mul_rational(&self.a);
        let x = (&p.y - &ax).add_rational(&Rational::one());
        let y = p.x.mul_rational(&self.b);
        PlanePoint::new(x, y)
    }

    /// `L⁻¹(x, y) = (y/b, x − 1 + a|y|/b)`.
    pub fn lozi_inverse(&self, p: &PlanePoint) -> PlanePoint {
        let inv_b = self.b.recip();
        let x = p.y.mul_rational(&inv_b);
        let y = (&p.x + &p.y.abs().mul_rational(&(&self.a * &inv_b))).add_rational(&-Rational::one());
        PlanePoint::new(x, y)
    }

    /// Image of a direction vector under the linear part of the branch for
    /// the half-plane of sign `side`.
    pub fn linear_part(&self, side: i8, v: &PlanePoint) -> PlanePoint {
        let ax = v.x.mul_rational(&self.a);
        let x = if side < 0 { &v.y + &ax } else { &v.y - &ax };
        PlanePoint::new(x, v.x.mul_rational(&self.b))
    }

    /// The fixed points `X` (first quadrant) and `Y` (third quadrant).
    pub fn fixed_points(&self) -> Result<(PlanePoint, PlanePoint), GeometryError> {
        let one = Rational::one();
        let dx = &one + &self.a - &self.b;
        let dy = &self.a + &self.b - &one;
        if dx.is_zero() || dy.is_zero() {
            return Err(GeometryError::DegenerateFixedPoint);
        }
        let x = self.point(dx.recip(), &self.b / &dx);
        let y = self.point(-dy.recip(), -(&self.b / &dy));
        Ok((x, y))
    }

    pub fn fixed_point_x(&self) -> PlanePoint {
        self.fixed_points().expect("construction domain keeps 1 + a - b > 0").0
    }

    /// `Z = ((2 + a + √D) / (2(1 + a − b)), 0)`, where the right branch of
    /// `W^u_X` first meets the x-axis.
    pub fn point_z(&self) -> PlanePoint {
        let two = Rational::from_integer(2.into());
        let denom = &two * (Rational::one() + &self.a - &self.b);
        let numer = self.field.make(&two + &self.a, Rational::one());
        PlanePoint::new(numer.mul_rational(&denom.recip()), self.field.zero())
    }

    /// Vertices `Z`, `L(Z)`, `L²(Z)` of the trapping triangle Δ.
    pub fn trapping_triangle(&self) -> [PlanePoint; 3] {
        let z = self.point_z();
        let lz = self.lozi_apply(&z);
        let llz = self.lozi_apply(&lz);
        [z, lz, llz]
    }

    /// Exact test of `L(Δ) ⊂ Δ`: Δ is cut along the y-axis, each piece is
    /// mapped by its affine branch, and every image vertex is tested against
    /// the closed triangle.
    pub fn trapping_check(&self) -> Result<bool, GeometryError> {
        let tri = self.trapping_triangle();
        let orientation = cross(&tri[1].sub(&tri[0]), &tri[2].sub(&tri[0])).sign();
        if orientation == 0 {
            return Err(GeometryError::DegenerateTriangle);
        }
        for keep in [1i8, -1] {
            for v in clip_half_plane(&tri, keep) {
                if !in_closed_triangle(&self.lozi_apply(&v), &tri, orientation) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Symbols of `L^i(P)` for `i = 0..n`; exact zeros of the x-coordinate
    /// are reported as `±`.
    pub fn orbit_itinerary(&self, p: &PlanePoint, n: usize) -> SymbolWord {
        let mut w = SymbolWord::new();
        let mut q = p.clone();
        for i in 0..n {
            w.push(Symbol::from_exact_sign(q.x.sign()));
            if i + 1 < n {
                q = self.lozi_apply(&q);
            }
        }
        w
    }

    /// Float bounding box of Δ.
    pub fn triangle_bounds(&self) -> Bounds {
        let pts: Vec<(f64, f64)> = self.trapping_triangle().iter().map(|p| p.to_f64()).collect();
        let fold = |f: fn(f64, f64) -> f64, init: f64, sel: fn(&(f64, f64)) -> f64| pts.iter().map(sel).fold(init, f);
        Bounds {
            x_min: fold(f64::min, f64::INFINITY, |p| p.0),
            x_max: fold(f64::max, f64::NEG_INFINITY, |p| p.0),
            y_min: fold(f64::min, f64::INFINITY, |p| p.1),
            y_max: fold(f64::max, f64::NEG_INFINITY, |p| p.1),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={}", self.a, self.b)
    }
}

/// Exact membership in S: `b > 0`, `a√2 > b + 2`, `b < (a² − 1)/(2a + 1)`,
/// `2a + b < 4`.
pub fn in_set_s(a: &Rational, b: &Rational) -> bool {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    if !b.is_positive() {
        return false;
    }
    // a√2 > b + 2 with b + 2 > 0 holds iff a > 0 and 2a² > (b + 2)².
    let b2 = b + &two;
    let sqrt_ineq = a.is_positive() && &two * a * a > &b2 * &b2;
    let denom = &two * a + &one;
    let ratio_ineq = denom.is_positive() && b * &denom < a * a - &one;
    let sum_ineq = &two * a + b < four;
    sqrt_ineq && ratio_ineq && sum_ineq
}

/// Sutherland–Hodgman clip of a triangle to `{sign(x) ∈ {0, keep}}`.
fn clip_half_plane(tri: &[PlanePoint; 3], keep: i8) -> Vec<PlanePoint> {
    let inside = |p: &PlanePoint| p.x.sign() * keep >= 0;
    let mut out = Vec::new();
    for i in 0..3 {
        let cur = &tri[i];
        let next = &tri[(i + 1) % 3];
        if inside(cur) {
            out.push(cur.clone());
        }
        let (sc, sn) = (cur.x.sign(), next.x.sign());
        if sc * sn < 0 {
            let t = cur
                .x
                .try_div(&(&cur.x - &next.x))
                .expect("opposite signs give a nonzero denominator");
            out.push(cur.lerp(next, &t));
        }
    }
    out
}

fn in_closed_triangle(p: &PlanePoint, tri: &[PlanePoint; 3], orientation: i8) -> bool {
    (0..3).all(|i| {
        let a = &tri[i];
        let b = &tri[(i + 1) % 3];
        cross(&b.sub(a), &p.sub(a)).sign() * orientation >= 0
    })
}

/// Axis-aligned float rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Bounds {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    /// The rectangle grown by `frac` of its size on every side.
    pub fn padded(&self, frac: f64) -> Bounds {
        let dx = (self.x_max - self.x_min) * frac;
        let dy = (self.y_max - self.y_min) * frac;
        Bounds {
            x_min: self.x_min - dx,
            x_max: self.x_max + dx,
            y_min: self.y_min - dy,
            y_max: self.y_max + dy,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub iterations: u64,
    pub transient: u64,
    pub width: usize,
    pub height: usize,
    /// Defaults to the float bounding box of Δ.
    pub bounds: Option<Bounds>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            iterations: 1_000_000,
            transient: 1_000,
            width: 800,
            height: 600,
            bounds: None,
        }
    }
}

/// Hit-count grid of an attractor orbit. Row 0 is the top (largest y).
#[derive(Debug, Clone)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub bounds: Bounds,
    pub counts: Vec<u32>,
    /// Post-transient points that fell outside `bounds`.
    pub outside: u64,
    /// Post-transient points binned or not.
    pub samples: u64,
    /// Box spanned by all post-transient points.
    pub extent: Bounds,
}

impl Raster {
    pub fn count(&self, col: usize, row: usize) -> u32 {
        self.counts[row * self.width + col]
    }

    pub fn nonzero_cells(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Portable graymap: white background, darker where the orbit visits
    /// more often. `binary` selects P5 over P2.
    pub fn to_pgm(&self, binary: bool) -> Vec<u8> {
        let max = self.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
        let shade = |c: u32| -> u8 {
            if c == 0 {
                255
            } else {
                let level = (c as f64).ln_1p() / max.ln_1p();
                (200.0 * (1.0 - level)) as u8
            }
        };
        let mut out = Vec::new();
        let magic = if binary { "P5" } else { "P2" };
        out.extend_from_slice(format!("{magic}\n{} {}\n255\n", self.width, self.height).as_bytes());
        if binary {
            out.extend(self.counts.iter().map(|&c| shade(c)));
        } else {
            for row in self.counts.chunks(self.width) {
                let line: Vec<String> = row.iter().map(|&c| shade(c).to_string()).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        out
    }

    /// SVG with one unit square per visited cell.
    pub fn to_svg(&self) -> String {
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n<g fill=\"black\">\n",
            w = self.width,
            h = self.height
        );
        for row in 0..self.height {
            for col in 0..self.width {
                if self.count(col, row) > 0 {
                    s.push_str(&format!("<rect x=\"{col}\" y=\"{row}\" width=\"1\" height=\"1\"/>\n"));
                }
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

const DIVERGENCE_LIMIT: f64 = 1e6;

/// Iterates an orbit in `f64` from a seed next to `X`, drops the transient
/// and bins the rest.
pub fn render_attractor(params: &Params, opts: &RenderOptions) -> Result<Raster, GeometryError> {
    if opts.iterations <= opts.transient {
        return Err(GeometryError::InvalidRender("iterations must exceed transient".into()));
    }
    if opts.width == 0 || opts.height == 0 {
        return Err(GeometryError::InvalidRender("empty raster".into()));
    }
    let bounds = opts.bounds.unwrap_or_else(|| params.triangle_bounds());
    let a = params.a().to_f64().unwrap_or(f64::NAN);
    let b = params.b().to_f64().unwrap_or(f64::NAN);
    let (x0, y0) = params.fixed_point_x().to_f64();
    let (mut x, mut y) = (x0 + 1e-3, y0);

    let mut counts = vec![0u32; opts.width * opts.height];
    let mut outside = 0u64;
    let mut extent = Bounds {
        x_min: f64::INFINITY,
        x_max: f64::NEG_INFINITY,
        y_min: f64::INFINITY,
        y_max: f64::NEG_INFINITY,
    };
    let sx = opts.width as f64 / (bounds.x_max - bounds.x_min);
    let sy = opts.height as f64 / (bounds.y_max - bounds.y_min);
    for i in 0..opts.iterations {
        let nx = 1.0 + y - a * x.abs();
        y = b * x;
        x = nx;
        if !x.is_finite() || x.abs() > DIVERGENCE_LIMIT || y.abs() > DIVERGENCE_LIMIT {
            return Err(GeometryError::Diverged { iteration: i, x, y });
        }
        if i < opts.transient {
            continue;
        }
        extent.x_min = extent.x_min.min(x);
        extent.x_max = extent.x_max.max(x);
        extent.y_min = extent.y_min.min(y);
        extent.y_max = extent.y_max.max(y);
        if !bounds.contains(x, y) {
            outside += 1;
            continue;
        }
        let col = (((x - bounds.x_min) * sx) as usize).min(opts.width - 1);
        let row = (((bounds.y_max - y) * sy) as usize).min(opts.height - 1);
        counts[row * opts.width + col] += 1;
    }
    Ok(Raster {
        width: opts.width,
        height: opts.height,
        bounds,
        counts,
        outside,
        samples: opts.iterations - opts.transient,
        extent,
    })
}
