//! The Farey graph of slopes and its exact combinatorics.
//!
//! Slopes are reduced fractions `p/q` together with `∞ = 1/0`, the vertex
//! set of the Farey triangulation of the disk: `p/q` and `r/s` span an edge
//! iff `|ps − qr| = 1`, and every edge lies in exactly two ideal triangles,
//! whose third vertices are the vector sum and difference of the endpoints.
//! The projective integer group acts by fractional-linear maps preserving
//! all of this structure; Dehn twists `D_α` act as the parabolic integer
//! maps fixing `α`.
//!
//! Everything in this module is exact: slopes are `i64` pairs (components
//! bounded by `2³¹` so that all determinants and twist formulas fit in
//! `i128` intermediates), boundary irrationals are quadratic surds or
//! continued-fraction prefixes, and interior points keep exact rational
//! coordinates.  Overflow is an error, never a wrap.
//!
//! The central algorithm is the triangle walk: starting from an ideal
//! triangle, repeatedly flip the edge separating the current triangle from
//! a target boundary point.  The target is classified against the three
//! arcs the triangle's vertices cut out of `∂ℍ²`, exactly.  For rational
//! targets the walk terminates with the target as a vertex; for irrational
//! targets it is an infinite lazy iterator (a continued-fraction
//! expansion in disguise), and a too-short prefix target reports
//! exhaustion rather than guessing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::surd::{ContinuedFraction, QuadSurd};

/// Components of a slope are kept below this bound so that every
/// determinant, mediant and twist formula fits in `i128` intermediates.
const SLOPE_LIMIT: i64 = 1 << 31;

/// Errors from slope arithmetic and Farey-graph navigation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FareyError {
    #[error("0/0 is not a slope")]
    ZeroSlope,
    #[error("slope arithmetic overflowed the supported range (components < 2^31)")]
    Overflow,
    #[error("slopes {0} and {1} are not Farey neighbors")]
    NotNeighbors(Slope, Slope),
    #[error("the three slopes are not pairwise Farey neighbors")]
    NotATriangle,
    #[error("matrix is not in the integer Möbius group (determinant must be 1)")]
    BadDeterminant,
    #[error("continued-fraction prefix is too short to steer the walk further")]
    PrefixExhausted,
    #[error("triangle walk exceeded its step budget")]
    PathStuck,
    #[error("cannot parse slope from {0:?}")]
    Parse(String),
}

/// A slope: a reduced fraction `p/q` or `∞ = 1/0`.
///
/// Canonical form: `gcd(p, q) = 1`, `q > 0`, with `∞` stored as `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// The slope `∞ = 1/0`.
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Builds and canonicalizes `p/q`.
    pub fn new(p: i64, q: i64) -> Result<Self, FareyError> {
        Self::from_i128(p as i128, q as i128)
    }

    /// The integer slope `n/1`.
    pub fn integer(n: i64) -> Self {
        Slope { p: n, q: 1 }
    }

    fn from_i128(p: i128, q: i128) -> Result<Self, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::ZeroSlope);
        }
        let g = gcd_i128(p.unsigned_abs(), q.unsigned_abs()) as i128;
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        if p.unsigned_abs() >= SLOPE_LIMIT as u128 || q >= SLOPE_LIMIT as i128 {
            return Err(FareyError::Overflow);
        }
        Ok(Slope {
            p: p as i64,
            q: q as i64,
        })
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// Exact rational value; `None` for `∞`.
    pub fn to_rational(&self) -> Option<BigRational> {
        (!self.is_infinity()).then(|| BigRational::new(self.p.into(), self.q.into()))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            f64::INFINITY
        } else {
            self.p as f64 / self.q as f64
        }
    }

    /// Exact order of two finite slopes as rationals.
    ///
    /// Panics if either is `∞`; the walk logic handles `∞` positionally.
    fn cmp_finite(&self, other: &Slope) -> Ordering {
        assert!(!self.is_infinity() && !other.is_infinity());
        (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    /// Parses `"p/q"`, a bare integer, or `"inf"`.
    fn from_str(s: &str) -> Result<Self, FareyError> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Slope::INFINITY);
        }
        let err = || FareyError::Parse(s.to_string());
        match t.split_once('/') {
            Some((ps, qs)) => {
                let p: i64 = ps.trim().parse().map_err(|_| err())?;
                let q: i64 = qs.trim().parse().map_err(|_| err())?;
                Slope::new(p, q)
            }
            None => Ok(Slope::integer(t.parse().map_err(|_| err())?)),
        }
    }
}

impl serde::Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text: String = serde::Deserialize::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `p_a q_b − q_a p_b`, the homology intersection form.
fn det(a: &Slope, b: &Slope) -> i64 {
    // Components are below 2^31, so the product differences fit in i64.
    a.p * b.q - a.q * b.p
}

/// True iff the two slopes span a Farey edge: `|ps − qr| = 1`.
pub fn is_neighbor(a: &Slope, b: &Slope) -> bool {
    det(a, b).abs() == 1
}

/// Geometric intersection number `|p_a q_b − q_a p_b|` of the two curves.
pub fn intersection_number(a: &Slope, b: &Slope) -> i64 {
    det(a, b).abs()
}

/// An edge of the Farey graph: an unordered pair of neighboring slopes.
#[derive(Debug, Clone, Copy, Eq)]
pub struct FareyEdge {
    a: Slope,
    b: Slope,
}

impl FareyEdge {
    pub fn new(a: Slope, b: Slope) -> Result<Self, FareyError> {
        if is_neighbor(&a, &b) {
            Ok(FareyEdge { a, b })
        } else {
            Err(FareyError::NotNeighbors(a, b))
        }
    }

    pub fn endpoints(&self) -> (Slope, Slope) {
        (self.a, self.b)
    }

    pub fn contains(&self, v: &Slope) -> bool {
        self.a == *v || self.b == *v
    }

    /// The vertex shared with another edge, if there is exactly one.
    pub fn shared_vertex(&self, other: &FareyEdge) -> Option<Slope> {
        if *self == *other {
            return None;
        }
        if other.contains(&self.a) {
            Some(self.a)
        } else if other.contains(&self.b) {
            Some(self.b)
        } else {
            None
        }
    }

    /// The endpoint that is not `v`.
    pub fn other_end(&self, v: &Slope) -> Slope {
        if self.a == *v {
            self.b
        } else {
            self.a
        }
    }

    /// Whether this edge separates `x` from `y` on the circle: the two
    /// points lie in different open arcs cut out by the edge's endpoints.
    ///
    /// A point coinciding with an endpoint is separated from nothing (the
    /// geodesic to it only meets the edge at infinity).  A truncated prefix
    /// whose interval straddles an endpoint is undecidable and reports
    /// exhaustion.
    pub fn separates(&self, x: &BoundaryPoint, y: &BoundaryPoint) -> Result<bool, FareyError> {
        for point in [x, y] {
            if let BoundaryPoint::Rational(s) = point {
                if self.contains(s) {
                    return Ok(false);
                }
            }
        }
        if self.a.is_infinity() || self.b.is_infinity() {
            // Arcs are the two half-lines on either side of the finite end.
            let v = if self.a.is_infinity() { self.b } else { self.a };
            let below = |p: &BoundaryPoint| Ok(p.cmp_vertex(&v)? == Ordering::Less);
            Ok(below(x)? != below(y)?)
        } else {
            let (u, v) = if self.a.cmp_finite(&self.b) == Ordering::Less {
                (self.a, self.b)
            } else {
                (self.b, self.a)
            };
            // Inside arc is the finite interval (u, v); ∞ is outside.
            let inside = |p: &BoundaryPoint| {
                Ok(p.cmp_vertex(&u)? == Ordering::Greater
                    && p.cmp_vertex(&v)? == Ordering::Less)
            };
            Ok(inside(x)? != inside(y)?)
        }
    }
}

impl PartialEq for FareyEdge {
    fn eq(&self, other: &Self) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

impl std::hash::Hash for FareyEdge {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let (lo, hi) = if self.a <= self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        };
        lo.hash(state);
        hi.hash(state);
    }
}

impl fmt::Display for FareyEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// The two slopes completing an edge to its two adjacent triangles:
/// the vector sum and the vector difference of the endpoints.
pub fn edge_links(e: &FareyEdge) -> (Slope, Slope) {
    let sum = Slope::from_i128(e.a.p as i128 + e.b.p as i128, e.a.q as i128 + e.b.q as i128)
        .expect("mediant of bounded slopes");
    let diff = Slope::from_i128(e.a.p as i128 - e.b.p as i128, e.a.q as i128 - e.b.q as i128)
        .expect("difference of bounded slopes");
    (sum, diff)
}

/// An ideal triangle of the Farey triangulation: three pairwise neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyTriangle {
    v: [Slope; 3],
}

impl FareyTriangle {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<Self, FareyError> {
        if is_neighbor(&a, &b) && is_neighbor(&b, &c) && is_neighbor(&a, &c) {
            Ok(FareyTriangle { v: [a, b, c] })
        } else {
            Err(FareyError::NotATriangle)
        }
    }

    /// The base triangle `(∞, 0, −1)`.
    pub fn base() -> Self {
        FareyTriangle {
            v: [
                Slope::INFINITY,
                Slope::integer(0),
                Slope::integer(-1),
            ],
        }
    }

    pub fn vertices(&self) -> [Slope; 3] {
        self.v
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.v.contains(s)
    }
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v[0], self.v[1], self.v[2])
    }
}

/// An element of the projective integer group `PSL₂(ℤ)`, acting on slopes,
/// boundary reals and the upper half-plane by `x ↦ (ax+b)/(cx+d)`.
///
/// Stored with determinant exactly `1` and a canonical projective sign
/// (`d > 0`, or `d = 0` and `c > 0`), so equality is structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntegerMoebius {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl IntegerMoebius {
    pub fn identity() -> Self {
        IntegerMoebius {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    /// Builds from entries; the determinant must be `+1`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, FareyError> {
        let dt = a as i128 * d as i128 - b as i128 * c as i128;
        if dt != 1 {
            return Err(FareyError::BadDeterminant);
        }
        let mut m = IntegerMoebius { a, b, c, d };
        m.fix_sign();
        Ok(m)
    }

    fn fix_sign(&mut self) {
        if self.d < 0 || (self.d == 0 && self.c < 0) {
            self.a = -self.a;
            self.b = -self.b;
            self.c = -self.c;
            self.d = -self.d;
        }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    /// The translation `x ↦ x + k`.
    pub fn translation(k: i64) -> Self {
        IntegerMoebius {
            a: 1,
            b: k,
            c: 0,
            d: 1,
        }
    }

    /// Group composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &IntegerMoebius) -> Result<Self, FareyError> {
        let a = self.a as i128 * other.a as i128 + self.b as i128 * other.c as i128;
        let b = self.a as i128 * other.b as i128 + self.b as i128 * other.d as i128;
        let c = self.c as i128 * other.a as i128 + self.d as i128 * other.c as i128;
        let d = self.c as i128 * other.b as i128 + self.d as i128 * other.d as i128;
        let fit = |x: i128| -> Result<i64, FareyError> {
            if x.unsigned_abs() < SLOPE_LIMIT as u128 {
                Ok(x as i64)
            } else {
                Err(FareyError::Overflow)
            }
        };
        let mut m = IntegerMoebius {
            a: fit(a)?,
            b: fit(b)?,
            c: fit(c)?,
            d: fit(d)?,
        };
        m.fix_sign();
        Ok(m)
    }

    pub fn inverse(&self) -> Self {
        let mut m = IntegerMoebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        };
        m.fix_sign();
        m
    }

    /// Image of a slope, exactly.
    pub fn apply(&self, s: &Slope) -> Result<Slope, FareyError> {
        Slope::from_i128(
            self.a as i128 * s.p as i128 + self.b as i128 * s.q as i128,
            self.c as i128 * s.p as i128 + self.d as i128 * s.q as i128,
        )
    }

    /// Image of an extended rational, exactly (total: never fails).
    pub fn apply_rational(&self, x: &ExtRational) -> ExtRational {
        let (num, den): (BigInt, BigInt) = match x {
            ExtRational::Infinity => (self.a.into(), self.c.into()),
            ExtRational::Finite(r) => (
                BigInt::from(self.a) * r.numer() + BigInt::from(self.b) * r.denom(),
                BigInt::from(self.c) * r.numer() + BigInt::from(self.d) * r.denom(),
            ),
        };
        if den.is_zero() {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(BigRational::new(num, den))
        }
    }

    /// Image of a quadratic surd, exactly.
    pub fn apply_surd(&self, x: &QuadSurd) -> QuadSurd {
        x.moebius(self.a, self.b, self.c, self.d)
    }

    /// Image of an interior point `x + iy` in `f64` arithmetic.
    pub fn apply_complex(&self, x: f64, y: f64) -> (f64, f64) {
        let (a, b, c, d) = (self.a as f64, self.b as f64, self.c as f64, self.d as f64);
        let den = (c * x + d) * (c * x + d) + c * c * y * y;
        // (az+b)(cz̄+d) = (ax+b)(cx+d) + acy² + iy·(ad−bc), and ad−bc = 1.
        (((a * x + b) * (c * x + d) + a * c * y * y) / den, y / den)
    }

    /// Image of an interior point with exact rational coordinates.
    pub fn apply_exact_point(&self, x: &BigRational, y: &BigRational) -> (BigRational, BigRational) {
        let (a, b, c, d) = (
            BigRational::from(BigInt::from(self.a)),
            BigRational::from(BigInt::from(self.b)),
            BigRational::from(BigInt::from(self.c)),
            BigRational::from(BigInt::from(self.d)),
        );
        let cx_d = &c * x + &d;
        let den = &cx_d * &cx_d + &c * &c * y * y;
        let re = ((&a * x + &b) * &cx_d + &a * &c * y * y) / &den;
        (re, y / &den)
    }
}

impl fmt::Display for IntegerMoebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// A boundary real: a finite rational or `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRational {
    Infinity,
    Finite(BigRational),
}

impl ExtRational {
    pub fn from_slope(s: &Slope) -> Self {
        match s.to_rational() {
            Some(r) => ExtRational::Finite(r),
            None => ExtRational::Infinity,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Infinity => f64::INFINITY,
            ExtRational::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// The Dehn twist image `D_α^k(β)`, exactly.
///
/// With `α = p/q`, `β = r/s` and `m = ps − qr`, the twist acts as
/// `β ↦ (r + kpm)/(s + kqm)`; positive twists about `∞` send `0 ↦ k`.
pub fn dehn_twist(alpha: &Slope, k: i64, beta: &Slope) -> Result<Slope, FareyError> {
    let m = det(alpha, beta) as i128;
    Slope::from_i128(
        beta.p as i128 + k as i128 * alpha.p as i128 * m,
        beta.q as i128 + k as i128 * alpha.q as i128 * m,
    )
}

/// The twist `D_α^k` as a projective integer matrix.
pub fn twist_matrix(alpha: &Slope, k: i64) -> Result<IntegerMoebius, FareyError> {
    // I + k·[[−pq, p²], [−q², pq]]; this parabolic fixes α and realizes
    // dehn_twist on every slope.
    let (p, q) = (alpha.p as i128, alpha.q as i128);
    let ki = k as i128;
    let fit = |x: i128| -> Result<i64, FareyError> {
        if x.unsigned_abs() < SLOPE_LIMIT as u128 {
            Ok(x as i64)
        } else {
            Err(FareyError::Overflow)
        }
    };
    let mut m = IntegerMoebius {
        a: fit(1 - ki * p * q)?,
        b: fit(ki * p * p)?,
        c: fit(-ki * q * q)?,
        d: fit(1 + ki * p * q)?,
    };
    m.fix_sign();
    Ok(m)
}

/// The canonical normalizer at `α`: the unique projective integer map
/// sending the ordered triangle `(α, β₀, D_α β₀)` to `(∞, 0, 1)`.
///
/// `β₀` is the neighbor of `α` with smallest denominator, ties broken by
/// smallest `|numerator|` and then by the nonnegative numerator.  Any two
/// maps sending `α ↦ ∞` differ by an integer translation; this choice is a
/// pure function of `α`.
pub fn normalize_at(alpha: &Slope) -> IntegerMoebius {
    let beta0 = smallest_neighbor(alpha);
    // Rows from the two defining images: (a,b) ∝ (s, −r) kills β₀ = r/s,
    // (c,d) = (q, −p) sends α to ∞; the sign of the first row fixes det = 1.
    let (r, s) = (beta0.p, beta0.q);
    let (p, q) = (alpha.p, alpha.q);
    let (mut a, mut b) = (s, -r);
    let (c, d) = (q, -p);
    if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
        a = -a;
        b = -b;
    }
    let mut m = IntegerMoebius { a, b, c, d };
    debug_assert_eq!(
        m.a as i128 * m.d as i128 - m.b as i128 * m.c as i128,
        1,
        "normalizer determinant"
    );
    m.fix_sign();
    m
}

/// The neighbor of `α` with smallest denominator (ties: smallest
/// `|numerator|`, then the nonnegative one).
fn smallest_neighbor(alpha: &Slope) -> Slope {
    if alpha.is_infinity() {
        return Slope::integer(0);
    }
    if alpha.q == 1 {
        return Slope::INFINITY;
    }
    // Solve |p·s − q·r| = 1 with minimal s ≥ 1: s ≡ ±p⁻¹ (mod q).
    let (p, q) = (alpha.p, alpha.q);
    let inv = mod_inverse(p.rem_euclid(q), q);
    let mut best: Option<Slope> = None;
    for (s, sign) in [(inv, 1i64), (q - inv, -1i64)] {
        // p·s ≡ sign (mod q), so r = (p·s − sign)/q is an integer.
        let r = (p as i128 * s as i128 - sign as i128) / q as i128;
        let cand = Slope::from_i128(r, s as i128).expect("neighbor of bounded slope");
        let better = match &best {
            None => true,
            Some(b) => {
                (cand.q, cand.p.abs(), cand.p < 0) < (b.q, b.p.abs(), b.p < 0)
            }
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("a slope with q ≥ 2 has neighbors in both residue classes")
}

/// Modular inverse of `a` mod `m` (`m ≥ 2`, `gcd(a, m) = 1`), in `[1, m)`.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m, a);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "inputs must be coprime");
    t.rem_euclid(m)
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A point of the circle `∂ℍ² = ℝ ∪ {∞}` usable as a walk target:
/// a vertex, an exact quadratic irrational, or a truncated continued
/// fraction known only up to the interval between its last convergents.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint {
    Rational(Slope),
    Surd(QuadSurd),
    Prefix(ContinuedFraction),
}

impl BoundaryPoint {
    /// Exact position of the target relative to a finite vertex.
    ///
    /// Never `Equal` for irrational variants; a prefix whose interval
    /// straddles the vertex reports exhaustion.
    fn cmp_vertex(&self, v: &Slope) -> Result<Ordering, FareyError> {
        debug_assert!(!v.is_infinity());
        let vr = v.to_rational().unwrap();
        match self {
            BoundaryPoint::Rational(s) => {
                if s.is_infinity() {
                    // ∞ lies in the wrap-around arc; treating it as +∞
                    // classifies it correctly in every all-finite case.
                    Ok(Ordering::Greater)
                } else {
                    Ok(s.cmp_finite(v))
                }
            }
            BoundaryPoint::Surd(x) => Ok(x.cmp_rational(&vr)),
            BoundaryPoint::Prefix(cf) => {
                let (lo, hi) = cf.prefix_interval();
                if hi <= vr {
                    Ok(Ordering::Less)
                } else if lo >= vr {
                    Ok(Ordering::Greater)
                } else {
                    Err(FareyError::PrefixExhausted)
                }
            }
        }
    }

    fn is_vertex_of(&self, tri: &FareyTriangle) -> bool {
        matches!(self, BoundaryPoint::Rational(s) if tri.contains(s))
    }
}

/// One step of the triangle walk: the edge that was kept, the vertex that
/// was dropped, and the new vertex on the other side of the kept edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FareyFlip {
    pub kept: FareyEdge,
    pub dropped: Slope,
    pub added: Slope,
}

/// Lazy triangle walk from a starting triangle toward a boundary target.
///
/// Yields one flip per step.  Rational targets terminate (no item once the
/// target is a vertex); irrational targets walk forever; prefix targets
/// yield `PrefixExhausted` once the prefix stops determining the route.
pub struct TriangleWalker {
    tri: FareyTriangle,
    target: BoundaryPoint,
    steps: usize,
    dead: bool,
}

impl TriangleWalker {
    pub fn new(from: &FareyTriangle, target: BoundaryPoint) -> Self {
        TriangleWalker {
            tri: *from,
            target,
            steps: 0,
            dead: false,
        }
    }

    /// The triangle the walk currently stands on.
    pub fn triangle(&self) -> FareyTriangle {
        self.tri
    }

    fn classify_dropped(&self) -> Result<Slope, FareyError> {
        let vs = self.tri.vertices();
        let inf = vs.iter().find(|s| s.is_infinity()).copied();
        match inf {
            Some(w) => {
                let mut fin: Vec<Slope> = vs.iter().filter(|s| !s.is_infinity()).copied().collect();
                fin.sort_by(|a, b| a.cmp_finite(b));
                let (u, v) = (fin[0], fin[1]);
                // Arcs: (u, v) opposite ∞; x > v opposite u; x < u opposite v.
                match self.target.cmp_vertex(&u)? {
                    Ordering::Less => Ok(v),
                    _ => match self.target.cmp_vertex(&v)? {
                        Ordering::Greater => Ok(u),
                        _ => Ok(w),
                    },
                }
            }
            None => {
                let mut fin = vs.to_vec();
                fin.sort_by(|a, b| a.cmp_finite(b));
                let (u, v, w) = (fin[0], fin[1], fin[2]);
                // Arcs: (u,v) opposite w; (v,w) opposite u; wrap opposite v.
                match self.target.cmp_vertex(&u)? {
                    Ordering::Less => Ok(v),
                    _ => match self.target.cmp_vertex(&v)? {
                        Ordering::Less => Ok(w),
                        _ => match self.target.cmp_vertex(&w)? {
                            Ordering::Less => Ok(u),
                            _ => Ok(v),
                        },
                    },
                }
            }
        }
    }
}

impl Iterator for TriangleWalker {
    type Item = Result<FareyFlip, FareyError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.dead || self.target.is_vertex_of(&self.tri) {
            return None;
        }
        if self.steps >= 200_000 {
            self.dead = true;
            return Some(Err(FareyError::PathStuck));
        }
        let dropped = match self.classify_dropped() {
            Ok(d) => d,
            Err(e) => {
                self.dead = true;
                return Some(Err(e));
            }
        };
        let kept_vs: Vec<Slope> = self
            .tri
            .vertices()
            .iter()
            .filter(|s| **s != dropped)
            .copied()
            .collect();
        let kept = FareyEdge::new(kept_vs[0], kept_vs[1]).expect("triangle edge");
        let (sum, diff) = edge_links(&kept);
        let added = if sum == dropped {
            diff
        } else {
            debug_assert_eq!(diff, dropped, "dropped vertex must complete the kept edge");
            sum
        };
        self.tri = FareyTriangle {
            v: [kept_vs[0], kept_vs[1], added],
        };
        self.steps += 1;
        Some(Ok(FareyFlip {
            kept,
            dropped,
            added,
        }))
    }
}

/// The full flip path from a triangle to a rational target (empty if the
/// target is already a vertex).  Irrational targets must use
/// [`TriangleWalker`] directly, since their walks do not terminate.
pub fn farey_path(from: &FareyTriangle, target: &Slope) -> Result<Vec<FareyFlip>, FareyError> {
    TriangleWalker::new(from, BoundaryPoint::Rational(*target)).collect()
}

/// Total order used wherever the artifact must pick one slope from a
/// symmetric pair: by flip distance from the base triangle, then by
/// denominator, then by numerator.
pub fn stern_brocot_cmp(a: &Slope, b: &Slope) -> Ordering {
    let depth = |s: &Slope| {
        farey_path(&FareyTriangle::base(), s)
            .map(|p| p.len())
            .unwrap_or(usize::MAX)
    };
    depth(a)
        .cmp(&depth(b))
        .then(a.q.cmp(&b.q))
        .then(a.p.cmp(&b.p))
}
