//! Exact planar geometry over the real quadratic fields `Q(√2)` and `Q(√3)`.
//!
//! Every coordinate of the built-in tilings lies in one of these fields once
//! the edge length is fixed to 1, so nothing here ever touches a float (the
//! only exception is [`ExactScalar::to_f64`], used for rendering).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty scalar string")]
    Empty,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("surd √{found} does not match field √{expected}")]
    WrongField { expected: u8, found: String },
    #[error("malformed scalar `{0}`")]
    Malformed(String),
}

/// A number `a + b√d` with rational `a`, `b` and `d ∈ {2, 3}`.
///
/// `Ord` on this type is *structural* (field tag, then `a`, then `b`). It is a
/// total order used for canonical keys; use [`ExactScalar::cmp_value`] for the
/// numeric order on the real line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    d: u8,
    a: BigRational,
    b: BigRational,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

impl ExactScalar {
    pub fn new(d: u8, a: BigRational, b: BigRational) -> Self {
        assert!(d == 2 || d == 3, "unsupported field Q(√{d})");
        ExactScalar { d, a, b }
    }

    pub fn zero(d: u8) -> Self {
        Self::new(d, BigRational::zero(), BigRational::zero())
    }

    pub fn one(d: u8) -> Self {
        Self::new(d, BigRational::one(), BigRational::zero())
    }

    pub fn from_int(d: u8, n: i64) -> Self {
        Self::new(d, rat(n, 1), BigRational::zero())
    }

    /// `p/q + (r/s)√d` from small integers.
    pub fn from_parts(d: u8, (p, q): (i64, i64), (r, s): (i64, i64)) -> Self {
        Self::new(d, rat(p, q), rat(r, s))
    }

    /// The surd `√d` itself.
    pub fn sqrt_d(d: u8) -> Self {
        Self::new(d, BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> u8 {
        self.d
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed-field arithmetic");
    }

    /// Galois conjugate `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.d, self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self::new(self.d, c.a / &n, c.b / n))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.d, &self.a * q, &self.b * q)
    }

    /// Sign of the real number `a + b√d`, computed exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.a * &self.a;
        let db2 = BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Numeric comparison on the real line.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let mut k = BigInt::from(self.to_f64().floor() as i64);
        loop {
            let kk = Self::new(self.d, BigRational::from_integer(k.clone()), BigRational::zero());
            if self.cmp_value(&kk) == Ordering::Less {
                k -= 1;
                continue;
            }
            let k1 = &kk + &Self::one(self.d);
            if self.cmp_value(&k1) != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * f64::from(self.d).sqrt()
    }

    /// Parses the `a/b+c/e√d` form in a known field.
    pub fn parse_in(d: u8, s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        // split into signed terms at +/- not at position 0
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if i > start && (ch == '+' || ch == '-') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(ParseScalarError::Malformed(s.to_string()));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut seen_a = false;
        let mut seen_b = false;
        for term in terms {
            if let Some(pos) = term.find('√') {
                if seen_b {
                    return Err(ParseScalarError::Malformed(s.to_string()));
                }
                seen_b = true;
                let radicand = &term[pos + '√'.len_utf8()..];
                if radicand != d.to_string() {
                    return Err(ParseScalarError::WrongField {
                        expected: d,
                        found: radicand.to_string(),
                    });
                }
                let coeff = &term[..pos];
                b = match coeff {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => parse_rational(c)?,
                };
            } else {
                if seen_a || seen_b {
                    return Err(ParseScalarError::Malformed(s.to_string()));
                }
                seen_a = true;
                a = parse_rational(term)?;
            }
        }
        Ok(Self::new(d, a, b))
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ParseScalarError> {
    let bad = || ParseScalarError::BadRational(s.to_string());
    let s = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}√{}", fmt_rational(&self.b), self.d),
            (false, false) => {
                let sign = if self.b.is_negative() { "" } else { "+" };
                write!(f, "{}{}{}√{}", fmt_rational(&self.a), sign, fmt_rational(&self.b), self.d)
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_field(rhs);
        ExactScalar::new(self.d, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_field(rhs);
        ExactScalar::new(self.d, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        self.check_field(rhs);
        let d = BigRational::from_integer(BigInt::from(self.d));
        ExactScalar::new(
            self.d,
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(self.d, -self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// Exact cosine and sine of `turns · 2π`.
///
/// Supports every angle the tilings need: multiples of 1/12 turn in `Q(√3)`
/// and multiples of 1/8 turn in `Q(√2)`. Panics otherwise.
pub fn unit_vector(d: u8, num: i64, den: i64) -> (ExactScalar, ExactScalar) {
    let twelfths = (num * 12).rem_euclid(12 * den);
    let eighths = (num * 8).rem_euclid(8 * den);
    let c = |p: i64, q: i64, r: i64, s: i64| ExactScalar::from_parts(d, (p, q), (r, s));
    // (cos, sin) as (p/q + r/s·√d) pairs
    type Entry = ((i64, i64, i64, i64), (i64, i64, i64, i64));
    if twelfths % den == 0 && (d == 3 || (twelfths / den) % 3 == 0) {
        // cos/sin at k·30°
        let table: [Entry; 12] = [
            ((1, 1, 0, 1), (0, 1, 0, 1)),
            ((0, 1, 1, 2), (1, 2, 0, 1)),
            ((1, 2, 0, 1), (0, 1, 1, 2)),
            ((0, 1, 0, 1), (1, 1, 0, 1)),
            ((-1, 2, 0, 1), (0, 1, 1, 2)),
            ((0, 1, -1, 2), (1, 2, 0, 1)),
            ((-1, 1, 0, 1), (0, 1, 0, 1)),
            ((0, 1, -1, 2), (-1, 2, 0, 1)),
            ((-1, 2, 0, 1), (0, 1, -1, 2)),
            ((0, 1, 0, 1), (-1, 1, 0, 1)),
            ((1, 2, 0, 1), (0, 1, -1, 2)),
            ((0, 1, 1, 2), (-1, 2, 0, 1)),
        ];
        let ((p, q, r, s), (p2, q2, r2, s2)) = table[(twelfths / den) as usize];
        return (c(p, q, r, s), c(p2, q2, r2, s2));
    }
    if d == 2 && eighths % den == 0 {
        let table: [Entry; 8] = [
            ((1, 1, 0, 1), (0, 1, 0, 1)),
            ((0, 1, 1, 2), (0, 1, 1, 2)),
            ((0, 1, 0, 1), (1, 1, 0, 1)),
            ((0, 1, -1, 2), (0, 1, 1, 2)),
            ((-1, 1, 0, 1), (0, 1, 0, 1)),
            ((0, 1, -1, 2), (0, 1, -1, 2)),
            ((0, 1, 0, 1), (-1, 1, 0, 1)),
            ((0, 1, 1, 2), (0, 1, -1, 2)),
        ];
        let ((p, q, r, s), (p2, q2, r2, s2)) = table[(eighths / den) as usize];
        return (c(p, q, r, s), c(p2, q2, r2, s2));
    }
    panic!("angle {num}/{den} turn is not representable in Q(√{d})");
}

/// A point (or vector) of the plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        assert_eq!(x.field(), y.field(), "mixed-field point");
        Point { x, y }
    }

    pub fn origin(d: u8) -> Self {
        Point::new(ExactScalar::zero(d), ExactScalar::zero(d))
    }

    pub fn field(&self) -> u8 {
        self.x.field()
    }

    pub fn dot(&self, other: &Point) -> ExactScalar {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    pub fn cross(&self, other: &Point) -> ExactScalar {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    pub fn norm2(&self) -> ExactScalar {
        self.dot(self)
    }

    pub fn scale(&self, k: &ExactScalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Point {
        Point::new(self.x.scale(q), self.y.scale(q))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// Solves `p = α·e1 + β·e2` for a non-degenerate basis.
pub fn basis_coordinates(e1: &Point, e2: &Point, p: &Point) -> (ExactScalar, ExactScalar) {
    let det = e1.cross(e2);
    let inv = det.recip().expect("degenerate basis");
    (&p.cross(e2) * &inv, &e1.cross(p) * &inv)
}

/// A 2×2 matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [ExactScalar; 4]);

impl Mat2 {
    pub fn identity(d: u8) -> Self {
        Mat2([ExactScalar::one(d), ExactScalar::zero(d), ExactScalar::zero(d), ExactScalar::one(d)])
    }

    pub fn field(&self) -> u8 {
        self.0[0].field()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn apply(&self, p: &Point) -> Point {
        let [a, b, c, d] = &self.0;
        Point::new(&(a * &p.x) + &(b * &p.y), &(c * &p.x) + &(d * &p.y))
    }

    pub fn transpose(&self) -> Mat2 {
        let [a, b, c, d] = self.0.clone();
        Mat2([a, c, b, d])
    }

    pub fn det(&self) -> ExactScalar {
        let [a, b, c, d] = &self.0;
        &(a * d) - &(b * c)
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.0;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }
}

/// A distance-preserving map `p ↦ linear·p + offset`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Isometry {
    pub linear: Mat2,
    pub offset: Point,
}

impl Isometry {
    pub fn new(linear: Mat2, offset: Point) -> Self {
        assert_eq!(linear.field(), offset.field(), "mixed-field isometry");
        let f = Isometry { linear, offset };
        debug_assert!(f.linear.is_orthogonal(), "linear part is not orthogonal");
        f
    }

    pub fn identity(d: u8) -> Self {
        Isometry::new(Mat2::identity(d), Point::origin(d))
    }

    pub fn translation(v: Point) -> Self {
        Isometry::new(Mat2::identity(v.field()), v)
    }

    /// Rotation by `num/den` of a full turn about `center`.
    pub fn rotation(center: &Point, num: i64, den: i64) -> Self {
        let d = center.field();
        let (c, s) = unit_vector(d, num, den);
        let linear = Mat2([c.clone(), -&s, s, c]);
        let offset = center - &linear.apply(center);
        Isometry::new(linear, offset)
    }

    /// Reflection in the line through `through` whose direction makes
    /// `num/den` of a full turn with the x axis.
    pub fn reflection(through: &Point, num: i64, den: i64) -> Self {
        let d = through.field();
        let (c, s) = unit_vector(d, 2 * num, den);
        let linear = Mat2([c.clone(), s.clone(), s, -&c]);
        let offset = through - &linear.apply(through);
        Isometry::new(linear, offset)
    }

    pub fn field(&self) -> u8 {
        self.offset.field()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.field(), other.field(), "mixed-field composition");
        Isometry::new(
            self.linear.mul(&other.linear),
            &self.linear.apply(&other.offset) + &self.offset,
        )
    }

    pub fn invert(&self) -> Isometry {
        let lt = self.linear.transpose();
        let offset = -&lt.apply(&self.offset);
        Isometry::new(lt, offset)
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        &self.linear.apply(p) + &self.offset
    }

    pub fn apply(&self, poly: &Polygon) -> Polygon {
        let mut vs: Vec<Point> = poly.vertices.iter().map(|p| self.apply_point(p)).collect();
        if self.is_orientation_reversing() {
            vs.reverse();
        }
        Polygon { vertices: vs }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.offset.is_origin()
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.linear.det().signum() == Ordering::Less
    }

    /// Order of the linear part, or `None` if it exceeds 12.
    pub fn linear_order(&self) -> Option<usize> {
        let mut m = self.linear.clone();
        for k in 1..=12 {
            if m.is_identity() {
                return Some(k);
            }
            m = m.mul(&self.linear);
        }
        None
    }
}

/// A convex polygon with counterclockwise vertices.
#[derive(Clone, Debug)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

/// Orientation- and rotation-independent identity of a polygon.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PolygonKey(pub Vec<Point>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has a repeated vertex")]
    RepeatedVertex,
    #[error("polygon is not strictly convex and counterclockwise")]
    NotConvex,
}

impl Polygon {
    /// Builds a polygon, checking it is convex, counterclockwise and simple.
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(PolygonError::RepeatedVertex);
                }
            }
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            if (b - a).cross(&(c - b)).signum() != Ordering::Greater {
                return Err(PolygonError::NotConvex);
            }
        }
        Ok(Polygon { vertices })
    }

    /// Regular `k`-gon with the given center and one vertex.
    pub fn regular(center: &Point, first: &Point, k: usize) -> Self {
        let rot = Isometry::rotation(center, 1, k as i64);
        let mut vs = vec![first.clone()];
        for _ in 1..k {
            let next = rot.apply_point(vs.last().unwrap());
            vs.push(next);
        }
        Polygon::new(vs).expect("regular polygon is convex")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn field(&self) -> u8 {
        self.vertices[0].field()
    }

    /// Vertex centroid; for the regular polygons used here this is the center.
    pub fn centroid(&self) -> Point {
        let d = self.field();
        let mut sx = ExactScalar::zero(d);
        let mut sy = ExactScalar::zero(d);
        for v in &self.vertices {
            sx = &sx + &v.x;
            sy = &sy + &v.y;
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(self.vertices.len()));
        Point::new(sx.scale(&inv), sy.scale(&inv))
    }

    pub fn squared_edge_lengths(&self) -> Vec<ExactScalar> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (&self.vertices[(i + 1) % n] - &self.vertices[i]).norm2())
            .collect()
    }

    /// Twice the signed area (shoelace).
    pub fn double_area(&self) -> ExactScalar {
        let n = self.vertices.len();
        let mut acc = ExactScalar::zero(self.field());
        for i in 0..n {
            acc = &acc + &self.vertices[i].cross(&self.vertices[(i + 1) % n]);
        }
        acc
    }

    /// Lexicographically least rotation of the vertex cycle, minimised over
    /// both orientations.
    pub fn key(&self) -> PolygonKey {
        let n = self.vertices.len();
        let at = |reversed: bool, start: usize, i: usize| {
            let idx = if reversed { (start + n - i) % n } else { (start + i) % n };
            &self.vertices[idx]
        };
        let mut best = (false, 0);
        for reversed in [false, true] {
            for start in 0..n {
                let smaller = (0..n)
                    .map(|i| at(reversed, start, i).cmp(at(best.0, best.1, i)))
                    .find(|o| *o != Ordering::Equal)
                    == Some(Ordering::Less);
                if smaller {
                    best = (reversed, start);
                }
            }
        }
        PolygonKey((0..n).map(|i| at(best.0, best.1, i).clone()).collect())
    }

    pub fn translate(&self, v: &Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| p + v).collect() }
    }
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Polygon {}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: u8, t: &str) -> ExactScalar {
        ExactScalar::parse_in(d, t).unwrap()
    }

    fn pt(d: u8, x: &str, y: &str) -> Point {
        Point::new(s(d, x), s(d, y))
    }

    #[test]
    fn scalar_display_round_trip() {
        for t in ["0", "1", "-3/4", "1√3", "-1/2√3", "1/2+1/2√3", "2-3/7√3"] {
            assert_eq!(s(3, t).to_string(), t);
        }
        assert_eq!(s(3, "1+√3").to_string(), "1+1√3");
        assert!(ExactScalar::parse_in(3, "1+1√2").is_err());
        assert!(ExactScalar::parse_in(3, "1/0").is_err());
        assert!(ExactScalar::parse_in(3, "").is_err());
        assert!(ExactScalar::parse_in(3, "1+2+3").is_err());
    }

    #[test]
    fn field_arithmetic() {
        let a = s(3, "1+1√3");
        let b = s(3, "1-1√3");
        assert_eq!(&a * &b, s(3, "-2"));
        assert_eq!(&a * &a.recip().unwrap(), ExactScalar::one(3));
        let r2 = ExactScalar::sqrt_d(2);
        assert_eq!(&r2 * &r2, ExactScalar::from_int(2, 2));
    }

    #[test]
    fn sign_and_floor() {
        assert_eq!(s(3, "2-1√3").signum(), Ordering::Greater);
        assert_eq!(s(3, "1-1√3").signum(), Ordering::Less);
        assert_eq!(s(3, "0").signum(), Ordering::Equal);
        assert_eq!(s(3, "1+1√3").floor(), BigInt::from(2));
        assert_eq!(s(3, "-1/2√3").floor(), BigInt::from(-1));
        assert_eq!(s(2, "-1+1√2").floor(), BigInt::from(0));
        assert_eq!(s(3, "3").floor(), BigInt::from(3));
        assert_eq!(s(3, "-3").floor(), BigInt::from(-3));
    }

    #[test]
    fn reflection_is_involution() {
        let p = pt(3, "1/2", "1/3√3");
        for k in 0..12 {
            let r = Isometry::reflection(&p, k, 12);
            assert!(r.compose(&r).is_identity());
            assert!(r.is_orientation_reversing());
        }
        let q = Point::origin(2);
        let r = Isometry::reflection(&q, 1, 8);
        assert!(r.compose(&r).is_identity());
    }

    #[test]
    fn perpendicular_mirrors_make_half_turn() {
        let c = pt(3, "1/2", "0");
        let r = Isometry::reflection(&c, 0, 1);
        let s_ = Isometry::reflection(&c, 1, 4);
        let rs = r.compose(&s_);
        assert_eq!(rs, Isometry::rotation(&c, 1, 2));
        assert_eq!(rs.apply_point(&c), c);
    }

    #[test]
    fn rotation_orders() {
        let o = Point::origin(3);
        assert_eq!(Isometry::rotation(&o, 1, 6).linear_order(), Some(6));
        assert_eq!(Isometry::rotation(&o, 1, 12).linear_order(), Some(12));
        assert_eq!(Isometry::rotation(&Point::origin(2), 1, 8).linear_order(), Some(8));
        assert!(Isometry::rotation(&o, 1, 4).compose(&Isometry::rotation(&o, 3, 4)).is_identity());
    }

    #[test]
    fn regular_polygons() {
        let o = Point::origin(3);
        let hex = Polygon::regular(&o, &pt(3, "1", "0"), 6);
        assert!(hex.squared_edge_lengths().iter().all(|l| l.is_one()));
        assert_eq!(hex.centroid(), o);
        // area of unit hexagon is 3√3/2
        assert_eq!(hex.double_area(), s(3, "3√3"));
        let oct = Polygon::regular(&Point::origin(2), &pt(2, "1/2+1/2√2", "1/2"), 8);
        assert!(oct.squared_edge_lengths().iter().all(|l| l.is_one()));
    }

    #[test]
    fn polygon_validation() {
        let a = pt(3, "0", "0");
        let b = pt(3, "1", "0");
        let c = pt(3, "0", "1");
        assert!(Polygon::new(vec![a.clone(), b.clone(), c.clone()]).is_ok());
        assert_eq!(
            Polygon::new(vec![a.clone(), c.clone(), b.clone()]).unwrap_err(),
            PolygonError::NotConvex
        );
        assert_eq!(Polygon::new(vec![a.clone(), b]).unwrap_err(), PolygonError::TooFewVertices(2));
        assert_eq!(
            Polygon::new(vec![a.clone(), c, a]).unwrap_err(),
            PolygonError::RepeatedVertex
        );
    }

    #[test]
    fn key_ignores_rotation_and_reflection() {
        let o = Point::origin(3);
        let tri = Polygon::regular(&o, &pt(3, "1", "0"), 3);
        let mut rotated = tri.vertices.clone();
        rotated.rotate_left(1);
        assert_eq!(tri.key(), Polygon { vertices: rotated.clone() }.key());
        rotated.reverse();
        assert_eq!(tri.key(), Polygon { vertices: rotated }.key());
        let mirror = Isometry::reflection(&o, 0, 1);
        // the triangle is symmetric about the x axis
        assert_eq!(mirror.apply(&tri).key(), tri.key());
        let shifted = Isometry::translation(pt(3, "1", "0")).apply(&tri);
        assert_ne!(shifted.key(), tri.key());
    }

    #[test]
    fn basis_coordinates_solve() {
        let e1 = pt(3, "1", "0");
        let e2 = pt(3, "1/2", "1/2√3");
        let p = &e1.scale(&s(3, "2")) + &e2.scale(&s(3, "-3"));
        let (a, b) = basis_coordinates(&e1, &e2, &p);
        assert_eq!(a, s(3, "2"));
        assert_eq!(b, s(3, "-3"));
    }
}
