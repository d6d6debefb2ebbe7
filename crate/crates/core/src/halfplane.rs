//! Upper half-plane geometry and Teichmüller bookkeeping.
//!
//! The hyperbolic plane ℍ² doubles as the Teichmüller space of the
//! punctured torus: a point `τ = x + iy` is a marked flat structure, the
//! slope `α` has extremal length `1/Im(m_α τ)` in it (with `m_α` the
//! canonical normalizer at `α`), and moduli of glued annuli simply add.
//!
//! Two numeric regimes coexist.  [`UHPoint`] is a plain `f64` point for
//! metric quantities (distances, extremal lengths).  [`InteriorPoint`]
//! carries exact rational coordinates — every `f64` lifts losslessly — so
//! that the two combinatorial judgements that must never wobble are exact:
//! the integer bracket `⌊x, y⌋` and the shortest-vertex reduction.  A
//! point parsed from text is `declared_exact`; boundary ties are then
//! decided by exact arithmetic, otherwise with a `10⁻¹²` tolerance.
//!
//! The bracket's endpoints come in three exact flavors: rationals, real
//! quadratic surds, and open rational intervals (the uncertainty of a
//! truncated continued fraction).  An interval endpoint that is too coarse
//! to pin down the answer reports insufficient precision rather than
//! rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::farey::{
    self, BoundaryPoint, FareyError, IntegerMoebius, Slope,
};
use crate::surd::{ContinuedFraction, QuadSurd};

/// Errors from half-plane operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HalfplaneError {
    #[error("point must lie strictly in the upper half-plane (Im > 0)")]
    NotInUpperHalfPlane,
    #[error("no integer lies in the closed interval spanned by the endpoints")]
    NoIntegerBetween,
    #[error("interval endpoint is too coarse to determine the result")]
    InsufficientPrecision,
    #[error("shortest-vertex reduction exceeded its step budget")]
    ReductionStuck,
    #[error("integer arithmetic overflow: {0}")]
    Farey(#[from] FareyError),
    #[error("cannot parse point from {0:?}")]
    Parse(String),
}

/// A point `x + iy` of ℍ² in double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UHPoint {
    pub x: f64,
    pub y: f64,
}

impl UHPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HalfplaneError> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(HalfplaneError::NotInUpperHalfPlane);
        }
        Ok(UHPoint { x, y })
    }
}

impl fmt::Display for UHPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.x, self.y)
    }
}

/// Poincaré distance `2·asinh(|z − w| / (2√(y_z y_w)))`.
pub fn hyp_dist(z: &UHPoint, w: &UHPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

/// Componentwise sum of annulus parameters: gluing annuli adds their
/// Teichmüller contributions.  Panics on an empty sequence.
pub fn teich_sum(annuli: &[UHPoint]) -> UHPoint {
    assert!(!annuli.is_empty(), "teich_sum needs at least one annulus");
    let (mut x, mut y) = (0.0, 0.0);
    for a in annuli {
        x += a.x;
        y += a.y;
    }
    UHPoint { x, y }
}

/// Extremal length of the curve of slope `α` in the structure `τ`:
/// `1 / Im(m_α τ)` for the canonical normalizer `m_α` at `α`.
pub fn extremal_length(alpha: &Slope, tau: &UHPoint) -> f64 {
    let m = farey::normalize_at(alpha);
    let (_, y) = m.apply_complex(tau.x, tau.y);
    1.0 / y
}

/// A point of ℍ² with exact rational coordinates.
///
/// `declared_exact` records whether the coordinates are meant literally
/// (parsed from text) or are a lossless image of floating-point data; it
/// controls whether measure-zero boundary ties are tested exactly or with
/// a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorPoint {
    x: BigRational,
    y: BigRational,
    declared_exact: bool,
}

impl InteriorPoint {
    pub fn new_exact(x: BigRational, y: BigRational) -> Result<Self, HalfplaneError> {
        if !y.is_positive() {
            return Err(HalfplaneError::NotInUpperHalfPlane);
        }
        Ok(InteriorPoint {
            x,
            y,
            declared_exact: true,
        })
    }

    /// Lossless lift of a floating-point point (not `declared_exact`).
    pub fn from_f64(x: f64, y: f64) -> Result<Self, HalfplaneError> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(HalfplaneError::NotInUpperHalfPlane);
        }
        Ok(InteriorPoint {
            x: BigRational::from_float(x).expect("finite float"),
            y: BigRational::from_float(y).expect("finite float"),
            declared_exact: false,
        })
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_declared_exact(&self) -> bool {
        self.declared_exact
    }

    pub fn to_uh(&self) -> UHPoint {
        UHPoint {
            x: self.x.to_f64().unwrap_or(f64::NAN),
            y: self.y.to_f64().unwrap_or(f64::NAN),
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for InteriorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.x.is_zero() {
            fmt_rational(&self.x, f)?;
            if self.y.is_positive() {
                write!(f, "+")?;
            }
        }
        fmt_rational(&self.y, f)?;
        write!(f, "i")
    }
}

/// Parses an exact number: `"p/q"`, an integer, or a finite decimal.
fn parse_exact_number(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let pn: BigInt = p.trim().parse().ok()?;
        let qn: BigInt = q.trim().parse().ok()?;
        if qn.is_zero() {
            return None;
        }
        return Some(BigRational::new(pn, qn));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let ip: BigInt = if int == "-" || int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let fp: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = BigRational::new(ip.magnitude().clone().into(), BigInt::one())
            + BigRational::new(fp, scale);
        return Some(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from(n))
}

impl FromStr for InteriorPoint {
    type Err = HalfplaneError;

    /// Parses `"x+yi"` with exact rational or decimal components
    /// (`"2i"`, `"1/2+3/4i"`, `"-0.3+1.5i"`); the result is declared exact.
    fn from_str(input: &str) -> Result<Self, HalfplaneError> {
        let err = || HalfplaneError::Parse(input.to_string());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s.strip_suffix('i').ok_or_else(err)?;
        // Split at the last sign that starts the imaginary term: not at
        // position 0 and not directly after '/' (a rational's slash).
        let split = body
            .char_indices()
            .rev()
            .find(|(i, ch)| {
                (*ch == '+' || *ch == '-')
                    && *i > 0
                    && !matches!(body.as_bytes()[i - 1], b'/' | b'.')
            })
            .map(|(i, _)| i);
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let x = parse_exact_number(re_str).ok_or_else(err)?;
        let im_str = im_str.strip_prefix('+').unwrap_or(im_str);
        let y = if im_str.is_empty() {
            BigRational::one()
        } else {
            parse_exact_number(im_str).ok_or_else(err)?
        };
        InteriorPoint::new_exact(x, y).map_err(|_| err())
    }
}

/// An irrational boundary target: exact surd or truncated expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum IrrationalEnd {
    Surd(QuadSurd),
    Prefix(ContinuedFraction),
}

/// An end invariant: an interior Teichmüller point, a rational boundary
/// slope, or an irrational boundary point.
#[derive(Debug, Clone, PartialEq)]
pub enum EndInvariant {
    Interior(InteriorPoint),
    RationalBoundary(Slope),
    IrrationalBoundary(IrrationalEnd),
}

impl EndInvariant {
    /// The walkable boundary target, when the end lies on the boundary.
    pub fn boundary_target(&self) -> Option<BoundaryPoint> {
        match self {
            EndInvariant::Interior(_) => None,
            EndInvariant::RationalBoundary(s) => Some(BoundaryPoint::Rational(*s)),
            EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)) => {
                Some(BoundaryPoint::Surd(x.clone()))
            }
            EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)) => {
                Some(BoundaryPoint::Prefix(cf.clone()))
            }
        }
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, EndInvariant::Interior(_))
    }

    /// True when both are boundary ends denoting the same point.
    ///
    /// Equal truncated prefixes are conservatively treated as the same
    /// point, since nothing distinguishes them.
    pub fn same_boundary_point(&self, other: &EndInvariant) -> bool {
        use EndInvariant::*;
        match (self, other) {
            (RationalBoundary(a), RationalBoundary(b)) => a == b,
            (IrrationalBoundary(IrrationalEnd::Surd(a)), IrrationalBoundary(IrrationalEnd::Surd(b))) => {
                a.cmp_surd(b) == Ordering::Equal
            }
            (IrrationalBoundary(IrrationalEnd::Prefix(a)), IrrationalBoundary(IrrationalEnd::Prefix(b))) => {
                a == b
            }
            (RationalBoundary(a), IrrationalBoundary(IrrationalEnd::Surd(b)))
            | (IrrationalBoundary(IrrationalEnd::Surd(b)), RationalBoundary(a)) => a
                .to_rational()
                .map(|r| b.cmp_rational(&r) == Ordering::Equal)
                .unwrap_or(false),
            _ => false,
        }
    }
}

impl fmt::Display for EndInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndInvariant::Interior(p) => p.fmt(f),
            EndInvariant::RationalBoundary(s) => s.fmt(f),
            EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)) => x.fmt(f),
            EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)) => cf.fmt(f),
        }
    }
}

impl FromStr for EndInvariant {
    type Err = HalfplaneError;

    /// Dispatches on shape: `"inf"` or `"p/q"` → rational boundary;
    /// `"(a+b*sqrt(d))/c"` → surd; `"[a0;a1,...]"` (periodic → exact surd,
    /// else prefix); anything ending in `"i"` → interior point.
    fn from_str(input: &str) -> Result<Self, HalfplaneError> {
        let t = input.trim();
        let err = || HalfplaneError::Parse(input.to_string());
        if t == "inf" || t == "∞" {
            return Ok(EndInvariant::RationalBoundary(Slope::INFINITY));
        }
        if t.starts_with('(') {
            let surd: QuadSurd = t.parse().map_err(|_| err())?;
            return Ok(match surd.as_rational() {
                Some(r) => {
                    let p = r.numer().to_i64().ok_or_else(err)?;
                    let q = r.denom().to_i64().ok_or_else(err)?;
                    EndInvariant::RationalBoundary(Slope::new(p, q).map_err(|_| err())?)
                }
                None => EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(surd)),
            });
        }
        if t.starts_with('[') {
            let cf: ContinuedFraction = t.parse().map_err(|_| err())?;
            return Ok(match cf.to_surd() {
                Some(surd) => EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(surd)),
                None => EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)),
            });
        }
        if t.ends_with('i') {
            return Ok(EndInvariant::Interior(t.parse()?));
        }
        let s: Slope = t.parse().map_err(|_| err())?;
        Ok(EndInvariant::RationalBoundary(s))
    }
}

/// An exact endpoint for the integer bracket: a rational, a real quadratic
/// surd, or an open rational interval enclosing an undetermined irrational.
#[derive(Debug, Clone, PartialEq)]
pub enum BracketArg {
    Exact(BigRational),
    Surd(QuadSurd),
    Interval(BigRational, BigRational),
}

impl BracketArg {
    /// Lossless lift of a float endpoint.
    pub fn from_f64(x: f64) -> Self {
        BracketArg::Exact(BigRational::from_float(x).expect("finite float"))
    }

    fn negated(&self) -> BracketArg {
        match self {
            BracketArg::Exact(r) => BracketArg::Exact(-r.clone()),
            BracketArg::Surd(s) => BracketArg::Surd(s.moebius(-1, 0, 0, 1)),
            BracketArg::Interval(lo, hi) => BracketArg::Interval(-hi.clone(), -lo.clone()),
        }
    }

    /// Exact floor, when determined.
    fn floor(&self) -> Result<BigInt, HalfplaneError> {
        match self {
            BracketArg::Exact(r) => Ok(r.floor().to_integer()),
            BracketArg::Surd(s) => Ok(s.floor()),
            BracketArg::Interval(lo, hi) => {
                let k = lo.floor().to_integer();
                let kp1 = BigRational::from(&k + 1);
                if *hi <= kp1 {
                    Ok(k)
                } else {
                    Err(HalfplaneError::InsufficientPrecision)
                }
            }
        }
    }

    fn ceil(&self) -> Result<BigInt, HalfplaneError> {
        Ok(-self.negated().floor()?)
    }

    /// Order of the two endpoints, when decidable.
    fn try_cmp(&self, other: &BracketArg) -> Option<Ordering> {
        use BracketArg::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(a.cmp(b)),
            (Surd(a), Exact(b)) => Some(a.cmp_rational(b)),
            (Exact(a), Surd(b)) => Some(b.cmp_rational(a).reverse()),
            (Surd(a), Surd(b)) => Some(a.cmp_surd(b)),
            (Interval(lo, hi), Exact(b)) => {
                if hi <= b {
                    Some(Ordering::Less)
                } else if lo >= b {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
            (Exact(_), Interval(..)) => other.try_cmp(self).map(Ordering::reverse),
            (Interval(lo, hi), Surd(b)) => {
                if b.cmp_rational(hi) != Ordering::Less {
                    Some(Ordering::Less)
                } else if b.cmp_rational(lo) != Ordering::Greater {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
            (Surd(_), Interval(..)) => other.try_cmp(self).map(Ordering::reverse),
            (Interval(_, hi1), Interval(lo2, _)) if hi1 <= lo2 => Some(Ordering::Less),
            (Interval(lo1, _), Interval(_, hi2)) if hi2 <= lo1 => Some(Ordering::Greater),
            (Interval(..), Interval(..)) => None,
        }
    }
}

fn int_to_i64(n: BigInt) -> Result<i64, HalfplaneError> {
    n.to_i64()
        .ok_or(HalfplaneError::Farey(FareyError::Overflow))
}

/// The integer bracket `⌊x, y⌋ = k − j`, where `j` and `k` are the
/// integers in the closed interval spanned by `x` and `y` closest to `x`
/// and to `y` respectively.
///
/// For `x ≤ y` this is `⌊y⌋ − ⌈x⌉`; it is antisymmetric; it errors when
/// the interval contains no integer, and when an interval endpoint leaves
/// the answer undetermined.
pub fn bracket(x: &BracketArg, y: &BracketArg) -> Result<i64, HalfplaneError> {
    let forward = |x: &BracketArg, y: &BracketArg| -> Result<i64, HalfplaneError> {
        let k = y.floor()?;
        let j = x.ceil()?;
        if k < j {
            Err(HalfplaneError::NoIntegerBetween)
        } else {
            int_to_i64(k - j)
        }
    };
    match x.try_cmp(y) {
        Some(Ordering::Less | Ordering::Equal) => forward(x, y),
        Some(Ordering::Greater) => Ok(-forward(y, x)?),
        None => {
            // Order undecidable (overlapping intervals): accept only if
            // both orderings give the same answer.
            let a = forward(x, y);
            let b = forward(y, x).map(|v| -v);
            match (a, b) {
                (Ok(u), Ok(v)) if u == v => Ok(u),
                _ => Err(HalfplaneError::InsufficientPrecision),
            }
        }
    }
}

/// [`bracket`], with "no integer in between" collapsed to `0` (the width
/// a boundary formula assigns to an unseparated pair).
pub fn bracket_or_zero(x: &BracketArg, y: &BracketArg) -> Result<i64, HalfplaneError> {
    match bracket(x, y) {
        Ok(v) => Ok(v),
        Err(HalfplaneError::NoIntegerBetween) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Result of the shortest-vertex search: the canonical representative and
/// the full co-minimal set (which contains the primary, sorted by the
/// Stern–Brocot order).
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestVertex {
    pub primary: Slope,
    pub ties: Vec<Slope>,
}

/// The slope of minimal hyperbolic length on the punctured torus with
/// Teichmüller parameter `τ`.
///
/// Reduction: while some integer `n` has `|τ − n| < 1`, replace `τ` by
/// `−1/(τ − n)` and track the composed map; on termination `τ` lies in the
/// closure of the region where `∞` is shortest, and the tracked preimage
/// of `∞` is the answer.  Each step strictly increases `Im τ`, so the loop
/// terminates.  Ties (boundary hits `|τ − n| = 1`) are detected exactly
/// for declared-exact input, else within `10⁻¹²`.
pub fn shortest_vertex(tau: &InteriorPoint) -> Result<ShortestVertex, HalfplaneError> {
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::one();
    let mut x = tau.x.clone();
    let mut y = tau.y.clone();
    let mut h = IntegerMoebius::identity();
    for _ in 0..10_000 {
        let n = (&x + &half).floor().to_integer();
        let xc = &x - BigRational::from(n.clone());
        let norm = &xc * &xc + &y * &y;
        if norm >= one {
            // Terminated: τ is in the closure of H(∞).  Collect boundary
            // ties |τ − m| = 1 among the at most three nearby integers.
            let mut ties = vec![Slope::INFINITY];
            for dm in [-1i64, 0, 1] {
                let m = &n + BigInt::from(dm);
                let xm = &x - BigRational::from(m.clone());
                let dist2 = &xm * &xm + &y * &y;
                let on_boundary = if tau.declared_exact {
                    dist2 == one
                } else {
                    (dist2.to_f64().unwrap_or(f64::INFINITY) - 1.0).abs() <= 1e-12
                };
                if on_boundary {
                    ties.push(Slope::new(int_to_i64(m)?, 1).map_err(HalfplaneError::Farey)?);
                }
            }
            let hinv = h.inverse();
            let mut back: Vec<Slope> = Vec::new();
            for t in ties {
                back.push(hinv.apply(&t)?);
            }
            back.sort_by(farey::stern_brocot_cmp);
            back.dedup();
            return Ok(ShortestVertex {
                primary: back[0],
                ties: back,
            });
        }
        // τ ← −1/(τ − n): exact inversion, Im strictly increases.
        x = -&xc / &norm;
        y = &y / &norm;
        let n64 = int_to_i64(n)?;
        let s = IntegerMoebius::new(0, -1, 1, 0).expect("inversion");
        let step = s.compose(&IntegerMoebius::translation(-n64))?;
        h = step.compose(&h)?;
    }
    Err(HalfplaneError::ReductionStuck)
}
