//! Trace coordinates for once-punctured-torus representations.
//!
//! A representation `ρ: π₁ → SL₂(ℂ)` with parabolic commutator is recorded,
//! up to conjugacy, by the traces `(x, y, z) = (tr A, tr B, tr AB)` of a
//! generator pair.  The commutator relation `tr [A, B] = −2` is equivalent to
//! the Markov equation
//!
//! ```text
//!     x² + y² + z² = x y z ,
//! ```
//!
//! so the character variety is the affine cubic cut out by that equation.  We
//! anchor the three coordinates at the base Farey triangle: the vertex `∞`
//! carries `tr A`, the vertex `0` carries `tr B`, and the vertex `−1` carries
//! `tr AB`.  Every other simple closed curve is a vertex of the Farey graph,
//! and its trace is computed by flipping triangles along a [`farey_path`]: a
//! flip keeps two traces `t_u, t_v` and replaces the third by `t_u t_v − t_w`.
//! This is the trace identity `tr(UV) + tr(UV⁻¹) = tr U · tr V`, so the flip
//! recursion is exact linear algebra, valid for *any* pair of matrices — a
//! fact the matrix oracle below exploits.
//!
//! The flip recursion along a path is compiled once into a [`TraceProgram`]
//! (a straight-line program `t_new = t_i·t_j − t_k` over a tape) and then run
//! over whatever ring is convenient: `Cx<f64>` for speed, `Cx<rug::Float>`
//! when intermediate traces overflow, exact Gaussian rationals for the Maskit
//! slice, and dual numbers when Newton's method needs the Jacobian of a trace
//! in the anchor coordinates.
//!
//! Besides the coordinate machinery the module constructs the standard
//! families: Fuchsian samples on the real locus, the Maskit slice
//! `(2, y, y ± 2i)` where the first generator is parabolic, and fixed triples
//! of mapping-class monodromies `D_{α₁}^{k₁} ⋯ D_{αₘ}^{kₘ}`, found by
//! Newton's method on the induced polynomial action.

use crate::farey::{
    dehn_twist, farey_path, twist_matrix, FareyError, FareyTriangle, IntegerMoebius, Slope,
};
use crate::mobius::{complex_length_from_trace, MoebiusC};
use crate::scalar::{mp_zero, Cx, Real};
use crate::surd::QuadSurd;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Magnitude at which an `f64` trace computation is rerun at higher precision.
const ESCALATION_THRESHOLD: f64 = 1e300;

/// Largest significand size tried during precision escalation.
const MAX_ESCALATION_BITS: u32 = 4096;

/// Errors from trace-coordinate computations.
#[derive(Debug, Error)]
pub enum MarkovError {
    /// A real slice sample was requested where the discriminant is negative.
    #[error("discriminant is negative: no real solution on this branch")]
    NegativeDiscriminant,
    /// Neither generator trace admits the diagonal chart.
    #[error("both generator traces are ±2: no diagonal chart exists")]
    DegenerateChart,
    /// A twist word whose monodromy is not hyperbolic.
    #[error("monodromy has trace {0}: not hyperbolic")]
    NotHyperbolic(i64),
    /// Newton's method failed to locate a non-real fixed triple.
    #[error("no fixed triple found: best residual {best_residual:.3e}")]
    NoConvergence { best_residual: f64 },
    /// A trace exceeded every available working precision.
    #[error("trace magnitude exceeds f64 range even at {bits} bits")]
    MagnitudeOverflow { bits: u32 },
    /// A malformed twist word or triple.
    #[error("parse error: {0}")]
    Parse(String),
    /// Combinatorial failure in the underlying Farey walk.
    #[error(transparent)]
    Farey(#[from] FareyError),
}

// ---------------------------------------------------------------------------
// Triples and the Markov relation
// ---------------------------------------------------------------------------

/// A point `(x, y, z)` of the character variety in trace coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovTriple<S: Real> {
    pub x: Cx<S>,
    pub y: Cx<S>,
    pub z: Cx<S>,
}

impl<S: Real> MarkovTriple<S> {
    pub fn new(x: Cx<S>, y: Cx<S>, z: Cx<S>) -> Self {
        MarkovTriple { x, y, z }
    }

    /// The defect `x² + y² + z² − xyz`; zero exactly on the character variety.
    pub fn residual(&self) -> Cx<S> {
        let xx = self.x.clone() * self.x.clone();
        let yy = self.y.clone() * self.y.clone();
        let zz = self.z.clone() * self.z.clone();
        let xyz = self.x.clone() * self.y.clone() * self.z.clone();
        xx + yy + zz - xyz
    }

    /// Whether the residual is small relative to the coordinate sizes.
    pub fn is_on_variety(&self, rel_tol: f64) -> bool {
        let scale = 1.0
            + self.x.abs().to_f64().powi(3).abs()
            + self.y.abs().to_f64().powi(3).abs()
            + self.z.abs().to_f64().powi(3).abs();
        self.residual().abs().to_f64() <= rel_tol * scale
    }

    /// Whether all three coordinates are real to within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.x.im.to_f64().abs() <= tol
            && self.y.im.to_f64().abs() <= tol
            && self.z.im.to_f64().abs() <= tol
    }
}

impl MarkovTriple<f64> {
    pub fn from_reals(x: f64, y: f64, z: f64) -> Self {
        MarkovTriple::new(Cx::from_real(x), Cx::from_real(y), Cx::from_real(z))
    }
}

impl<S: Real> fmt::Display for MarkovTriple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl serde::Serialize for MarkovTriple<f64> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MarkovTriple", 3)?;
        st.serialize_field("x", &[self.x.re, self.x.im])?;
        st.serialize_field("y", &[self.y.re, self.y.im])?;
        st.serialize_field("z", &[self.z.re, self.z.im])?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for MarkovTriple<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            x: [f64; 2],
            y: [f64; 2],
            z: [f64; 2],
        }
        let r = Raw::deserialize(d)?;
        Ok(MarkovTriple::new(
            Cx::new(r.x[0], r.x[1]),
            Cx::new(r.y[0], r.y[1]),
            Cx::new(r.z[0], r.z[1]),
        ))
    }
}

/// Which pair of coordinates an elementary flip keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeptPair {
    XY,
    XZ,
    YZ,
}

/// The elementary flip: replace the coordinate outside the kept pair by the
/// other root of the Markov equation, e.g. keeping `(x, y)` sends
/// `z ↦ xy − z`.  Each flip is an involution and preserves the residual.
pub fn flip<S: Real>(t: &MarkovTriple<S>, keep: KeptPair) -> MarkovTriple<S> {
    let mut out = t.clone();
    match keep {
        KeptPair::XY => out.z = t.x.clone() * t.y.clone() - t.z.clone(),
        KeptPair::XZ => out.y = t.x.clone() * t.z.clone() - t.y.clone(),
        KeptPair::YZ => out.x = t.y.clone() * t.z.clone() - t.x.clone(),
    }
    out
}

/// A triple anchored at the base Farey triangle `(∞, 0, −1)`: the coordinate
/// `x` is the trace at slope `∞`, `y` at slope `0`, and `z` at slope `−1`.
#[derive(Debug, Clone)]
pub struct AnchoredRep<S: Real> {
    pub triple: MarkovTriple<S>,
}

impl<S: Real> AnchoredRep<S> {
    /// Anchors a triple, insisting it lies on the variety to `1e-10` relative.
    pub fn new(triple: MarkovTriple<S>) -> Result<Self, MarkovError> {
        if !triple.is_on_variety(1e-10) {
            return Err(MarkovError::Parse(format!(
                "triple {triple} is off the character variety (residual {})",
                triple.residual().abs().to_f64()
            )));
        }
        Ok(AnchoredRep { triple })
    }

    /// The base triangle carrying the three anchor traces.
    pub fn base() -> FareyTriangle {
        FareyTriangle::base()
    }
}

// ---------------------------------------------------------------------------
// Trace programs
// ---------------------------------------------------------------------------

/// A compiled flip recursion: straight-line code over a tape whose first
/// three registers hold the anchor traces `(x, y, z)`.  Each step appends
/// `tape[i]·tape[j] − tape[k]`; `out` indexes the requested trace.
#[derive(Debug, Clone)]
pub struct TraceProgram {
    steps: Vec<(usize, usize, usize)>,
    out: usize,
}

impl TraceProgram {
    /// Compiles the flip path from the base triangle to the vertex `v`.
    pub fn for_slope(v: &Slope) -> Result<Self, FareyError> {
        let mut reg: HashMap<Slope, usize> = HashMap::new();
        reg.insert(Slope::INFINITY, 0);
        reg.insert(Slope::integer(0), 1);
        reg.insert(Slope::integer(-1), 2);
        let mut steps = Vec::new();
        let mut next = 3usize;
        for f in farey_path(&FareyTriangle::base(), v)? {
            let (a, b) = f.kept.endpoints();
            let i = reg[&a];
            let j = reg[&b];
            let k = reg[&f.dropped];
            steps.push((i, j, k));
            reg.insert(f.added, next);
            next += 1;
        }
        let out = *reg.get(v).ok_or(FareyError::PathStuck)?;
        Ok(TraceProgram { steps, out })
    }

    /// Number of flips compiled into the program.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Runs the program over any commutative ring with `·` and `−`.
    pub fn eval<R>(&self, x: R, y: R, z: R) -> R
    where
        R: Clone + Mul<Output = R> + Sub<Output = R>,
    {
        let mut tape = Vec::with_capacity(3 + self.steps.len());
        tape.push(x);
        tape.push(y);
        tape.push(z);
        for &(i, j, k) in &self.steps {
            let v = tape[i].clone() * tape[j].clone() - tape[k].clone();
            tape.push(v);
        }
        tape[self.out].clone()
    }
}

/// The trace of the simple closed curve of slope `v` in the representation
/// anchored by `rep`, by running the compiled flip path in `f64`.  If an
/// intermediate or final trace exceeds `10^300` in magnitude the path is
/// rerun with big floats, doubling the significand from 106 bits up to 4096,
/// and the first run whose result fits back into `f64` range wins.
pub fn vertex_trace(rep: &AnchoredRep<f64>, v: &Slope) -> Result<Cx<f64>, MarkovError> {
    let prog = TraceProgram::for_slope(v)?;
    let t = &rep.triple;
    let first = prog.eval(t.x.clone(), t.y.clone(), t.z.clone());
    if first.is_finite() && first.abs() <= ESCALATION_THRESHOLD {
        return Ok(first);
    }
    let mut bits = 106u32;
    loop {
        let lift = |c: &Cx<f64>| Cx::new(mp_zero(bits) + c.re, mp_zero(bits) + c.im);
        let wide = prog.eval(lift(&t.x), lift(&t.y), lift(&t.z));
        let back = wide.to_c64();
        if back.is_finite() {
            return Ok(back);
        }
        if bits >= MAX_ESCALATION_BITS {
            break;
        }
        bits = (bits * 2).min(MAX_ESCALATION_BITS);
    }
    Err(MarkovError::MagnitudeOverflow {
        bits: MAX_ESCALATION_BITS,
    })
}

/// As [`vertex_trace`] but computed entirely at a fixed big-float precision.
pub fn vertex_trace_mp(
    rep: &AnchoredRep<f64>,
    v: &Slope,
    prec: u32,
) -> Result<Cx<rug::Float>, MarkovError> {
    let prog = TraceProgram::for_slope(v)?;
    let t = &rep.triple;
    let lift = |c: &Cx<f64>| Cx::new(mp_zero(prec) + c.re, mp_zero(prec) + c.im);
    Ok(prog.eval(lift(&t.x), lift(&t.y), lift(&t.z)))
}

/// Every slope within `depth` flips of the base triangle, with its trace.
///
/// The dual tree of the Farey triangulation is walked outward from the base
/// triangle; each new triangle contributes exactly one new vertex, so each
/// slope appears once.  Traces that overflow to `±∞` or NaN are reported as
/// they are — callers treat non-finite traces as very long curves.
pub fn trace_sweep<S: Real>(rep: &MarkovTriple<S>, depth: u32) -> Vec<(Slope, Cx<S>)> {
    let base = FareyTriangle::base();
    let [a, b, c] = base.vertices();
    let mut out = vec![
        (a, rep.x.clone()),
        (b, rep.y.clone()),
        (c, rep.z.clone()),
    ];
    if depth == 0 {
        return out;
    }
    // Stack entries: a triangle as (slope, trace) pairs, the index of the
    // freshly added vertex (which must not be dropped, since dropping it
    // backtracks), and the remaining depth.  The root may drop any vertex.
    struct Frame<S: Real> {
        v: [(Slope, Cx<S>); 3],
        fresh: Option<usize>,
        left: u32,
    }
    let mut stack = vec![Frame {
        v: [
            (a, rep.x.clone()),
            (b, rep.y.clone()),
            (c, rep.z.clone()),
        ],
        fresh: None,
        left: depth,
    }];
    while let Some(f) = stack.pop() {
        for drop in 0..3 {
            if Some(drop) == f.fresh {
                continue;
            }
            let (i, j) = match drop {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let edge = crate::farey::FareyEdge::new(f.v[i].0, f.v[j].0)
                .expect("triangle vertices are neighbors");
            let sum = crate::farey::edge_links(&edge);
            let added = if sum.0 == f.v[drop].0 { sum.1 } else { sum.0 };
            let trace = f.v[i].1.clone() * f.v[j].1.clone() - f.v[drop].1.clone();
            out.push((added, trace.clone()));
            if f.left > 1 {
                stack.push(Frame {
                    v: [f.v[i].clone(), f.v[j].clone(), (added, trace)],
                    fresh: Some(2),
                    left: f.left - 1,
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Matrix charts and the word oracle
// ---------------------------------------------------------------------------

/// Concrete matrices `(A, B)` realizing a triple, with `A` diagonal.
///
/// With `ξ` a root of `ξ² − xξ + 1` we take `A = diag(ξ, ξ⁻¹)` and solve
/// `tr B = y`, `tr AB = z` inside `B = [[a, 1], [ad−1, d]]`.  When `x = ±2`
/// the chart degenerates (ξ = ±1) and the roles of the generators are
/// swapped, diagonalizing `B` instead; if both traces are `±2` no such chart
/// exists and an error is returned.
pub fn build_matrices<S: Real>(
    t: &MarkovTriple<S>,
) -> Result<(MoebiusC<S>, MoebiusC<S>), MarkovError> {
    let tol = t.x.re.lift(1e-12);
    let two = Cx::lift(&t.x.re, 2.0, 0.0);
    let parabolic = |c: &Cx<S>| {
        (c.clone() - two.clone()).abs() < tol.clone()
            || (c.clone() + two.clone()).abs() < tol.clone()
    };
    if parabolic(&t.x) {
        if parabolic(&t.y) {
            return Err(MarkovError::DegenerateChart);
        }
        let swapped = MarkovTriple::new(t.y.clone(), t.x.clone(), t.z.clone());
        let (p, q) = build_diagonal_chart(&swapped)?;
        return Ok((q, p));
    }
    build_diagonal_chart(t)
}

fn build_diagonal_chart<S: Real>(
    t: &MarkovTriple<S>,
) -> Result<(MoebiusC<S>, MoebiusC<S>), MarkovError> {
    let two = Cx::lift(&t.x.re, 2.0, 0.0);
    let half = Cx::lift(&t.x.re, 0.5, 0.0);
    let disc = (t.x.clone() * t.x.clone() - two.clone() * two.clone()).sqrt();
    let mut xi = (t.x.clone() + disc.clone()) * half.clone();
    if xi.abs() < t.x.re.lift(1.0) {
        xi = (t.x.clone() - disc) * half;
    }
    let xi_inv = xi.recip();
    let denom = xi.clone() - xi_inv.clone();
    let a = (t.z.clone() - xi_inv.clone() * t.y.clone()) * denom.recip();
    let d = t.y.clone() - a.clone();
    let zero = t.x.zero_like();
    let one = t.x.one_like();
    let big_a = MoebiusC {
        a: xi,
        b: zero.clone(),
        c: zero,
        d: xi_inv,
    };
    let big_b = MoebiusC {
        a: a.clone(),
        b: one.clone(),
        c: a * d.clone() - one,
        d,
    };
    Ok((big_a, big_b))
}

/// The trace of the slope-`v` curve computed from explicit matrix words,
/// independent of the flip recursion.
///
/// Triangles are carried as ordered triples of matrices `(U, V, W)` with
/// `W = U·V`, rooted at `(A, B, AB)` on `(∞, 0, −1)`.  A flip dropping the
/// product replaces the triple by `(U·V⁻¹, V, U)`; dropping the first gives
/// `(V, W, V·W)` and dropping the second `(U, W, U·W)` — in each case the
/// third entry stays the product of the first two, so the new vertex is an
/// honest matrix word in `A` and `B`.
pub fn matrix_trace_oracle(
    a: &MoebiusC<f64>,
    b: &MoebiusC<f64>,
    v: &Slope,
) -> Result<Cx<f64>, MarkovError> {
    let mut slopes = [Slope::INFINITY, Slope::integer(0), Slope::integer(-1)];
    let mut mats = [a.clone(), b.clone(), a.compose(b)];
    for f in farey_path(&FareyTriangle::base(), v)? {
        let k = slopes
            .iter()
            .position(|s| *s == f.dropped)
            .ok_or(FareyError::PathStuck)?;
        let (ns, nm) = match k {
            0 => {
                let s = [slopes[1], slopes[2]];
                let m = [mats[1].clone(), mats[2].clone()];
                ([s[0], s[1], f.added], [m[0].clone(), m[1].clone(), m[0].compose(&m[1])])
            }
            1 => {
                let s = [slopes[0], slopes[2]];
                let m = [mats[0].clone(), mats[2].clone()];
                ([s[0], s[1], f.added], [m[0].clone(), m[1].clone(), m[0].compose(&m[1])])
            }
            _ => {
                let new = mats[0].compose(&mats[1].adjugate());
                (
                    [f.added, slopes[1], slopes[0]],
                    [new, mats[1].clone(), mats[0].clone()],
                )
            }
        };
        slopes = ns;
        mats = nm;
    }
    let k = slopes
        .iter()
        .position(|s| s == v)
        .ok_or(FareyError::PathStuck)?;
    Ok(mats[k].trace())
}

// ---------------------------------------------------------------------------
// Standard families
// ---------------------------------------------------------------------------

/// The Maskit slice point `(2, y, y + 2i·sign)`: the first generator is
/// parabolic, so the traces along the integer fan progress linearly —
/// `tr(AᶯB) = y + 2i·sign·n` exactly, sitting at slope `−n`.
pub fn maskit_triple(y: Cx<f64>, sign: i64) -> MarkovTriple<f64> {
    let s = if sign >= 0 { 1.0 } else { -1.0 };
    let z = y.clone() + Cx::new(0.0, 2.0 * s);
    MarkovTriple::new(Cx::from_real(2.0), y, z)
}

/// A Gaussian rational `re + im·i`, the exact coefficient ring of the Maskit
/// slice when `y` is rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn to_cx(&self) -> Cx<f64> {
        let f = |q: &BigRational| {
            let n = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        Cx::new(f(&self.re), f(&self.im))
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: Self) -> Self {
        GaussRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: Self) -> Self {
        GaussRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        GaussRational::new(re, im)
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

/// The exact Maskit trace at an integer slope: the flip path is evaluated
/// over Gaussian rationals, so the result is exact.  Returns the trace at
/// slope `n` for `(2, y, y + 2i·sign)`, which equals `y − 2i·sign·n`.
pub fn maskit_vertex_trace_exact(
    y: &GaussRational,
    sign: i64,
    n: i64,
) -> Result<GaussRational, MarkovError> {
    let s = if sign >= 0 { 1 } else { -1 };
    let x = GaussRational::from_integers(2, 0);
    let z = y.clone() + GaussRational::from_integers(0, 2 * s);
    let prog = TraceProgram::for_slope(&Slope::integer(n))?;
    Ok(prog.eval(x, y.clone(), z))
}

/// A real (Fuchsian) sample: given real `x, y > 2` solve the Markov equation
/// for `z`, taking the root selected by `branch` (`+1` the larger, `−1` the
/// smaller).  Fails when the discriminant `x²y² − 4x² − 4y²` is negative.
pub fn fuchsian_sample(x: f64, y: f64, branch: i64) -> Result<MarkovTriple<f64>, MarkovError> {
    let disc = x * x * y * y - 4.0 * x * x - 4.0 * y * y;
    if disc < 0.0 {
        return Err(MarkovError::NegativeDiscriminant);
    }
    let s = if branch >= 0 { 1.0 } else { -1.0 };
    let z = (x * y + s * disc.sqrt()) / 2.0;
    Ok(MarkovTriple::from_reals(x, y, z))
}

// ---------------------------------------------------------------------------
// Twist words and monodromy fixed triples
// ---------------------------------------------------------------------------

/// A word in Dehn twists, e.g. `D(inf)^1 D(0)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistWord(pub Vec<(Slope, i64)>);

impl TwistWord {
    /// The induced boundary map: the product of the twist matrices, taken
    /// left to right.
    pub fn to_matrix(&self) -> Result<IntegerMoebius, MarkovError> {
        let mut m = IntegerMoebius::identity();
        for (s, k) in &self.0 {
            m = m.compose(&twist_matrix(s, *k)?)?;
        }
        Ok(m)
    }

    /// The word acting on a slope.
    pub fn apply(&self, v: &Slope) -> Result<Slope, MarkovError> {
        let mut cur = *v;
        for (s, k) in self.0.iter().rev() {
            cur = dehn_twist(s, *k, &cur)?;
        }
        Ok(cur)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, k) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "D({s})^{k}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = MarkovError;
    fn from_str(text: &str) -> Result<Self, MarkovError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let bad = || MarkovError::Parse(format!("bad twist letter {tok:?}"));
            let rest = tok.strip_prefix("D(").ok_or_else(bad)?;
            let (slope_text, exp_text) = rest.rsplit_once(")^").ok_or_else(bad)?;
            let slope: Slope = slope_text.parse().map_err(|_| bad())?;
            let exp: i64 = exp_text.parse().map_err(|_| bad())?;
            letters.push((slope, exp));
        }
        if letters.is_empty() {
            return Err(MarkovError::Parse("empty twist word".into()));
        }
        Ok(TwistWord(letters))
    }
}

/// The two boundary fixed points of a hyperbolic monodromy, as exact
/// quadratic surds `((a−d) ± √(tr²−4)) / 2c`, attracting first.
pub fn monodromy_fixed_points(
    m: &IntegerMoebius,
) -> Result<(QuadSurd, QuadSurd), MarkovError> {
    let (a, _b, c, d) = m.entries();
    let tr = a + d;
    if tr.abs() <= 2 {
        return Err(MarkovError::NotHyperbolic(tr));
    }
    // Twist-word monodromies with |tr| > 2 always mix upper and lower
    // triangular letters, so c ≠ 0 and both fixed points are finite surds.
    if c == 0 {
        return Err(MarkovError::Parse(
            "monodromy fixes infinity; no surd form".into(),
        ));
    }
    let disc = tr * tr - 4;
    let p1 = QuadSurd::new(a - d, 1, 2 * c, disc).map_err(|e| MarkovError::Parse(e.to_string()))?;
    let p2 = QuadSurd::new(a - d, -1, 2 * c, disc).map_err(|e| MarkovError::Parse(e.to_string()))?;
    // The attracting fixed point has |derivative| < 1 there, i.e. the larger
    // |cz + d|.  Compare numerically; the two surds are distinct.
    let deriv = |z: f64| (c as f64 * z + d as f64).abs();
    if deriv(p1.to_f64()) > deriv(p2.to_f64()) {
        Ok((p1, p2))
    } else {
        Ok((p2, p1))
    }
}

/// Forward-mode dual number over `ℂ³`: a value and its three partials.
#[derive(Debug, Clone)]
struct Jet {
    v: Cx<f64>,
    d: [Cx<f64>; 3],
}

impl Jet {
    fn variable(v: Cx<f64>, idx: usize) -> Self {
        let z = Cx::from_real(0.0);
        let mut d = [z.clone(), z.clone(), z];
        d[idx] = Cx::from_real(1.0);
        Jet { v, d }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Self) -> Jet {
        Jet {
            v: self.v + o.v,
            d: [
                self.d[0].clone() + o.d[0].clone(),
                self.d[1].clone() + o.d[1].clone(),
                self.d[2].clone() + o.d[2].clone(),
            ],
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Self) -> Jet {
        Jet {
            v: self.v - o.v,
            d: [
                self.d[0].clone() - o.d[0].clone(),
                self.d[1].clone() - o.d[1].clone(),
                self.d[2].clone() - o.d[2].clone(),
            ],
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Self) -> Jet {
        let d = [
            self.v.clone() * o.d[0].clone() + self.d[0].clone() * o.v.clone(),
            self.v.clone() * o.d[1].clone() + self.d[1].clone() * o.v.clone(),
            self.v.clone() * o.d[2].clone() + self.d[2].clone() * o.v.clone(),
        ];
        Jet { v: self.v * o.v, d }
    }
}

/// Solves the 3×3 complex system `J·s = r` by Gaussian elimination.
fn solve3(mut j: [[Cx<f64>; 3]; 3], mut r: [Cx<f64>; 3]) -> Option<[Cx<f64>; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&p, &q| {
            j[p][col]
                .abs()
                .partial_cmp(&j[q][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if j[piv][col].abs() < 1e-14 {
            return None;
        }
        j.swap(col, piv);
        r.swap(col, piv);
        let inv = j[col][col].recip();
        for row in (col + 1)..3 {
            let f = j[row][col].clone() * inv.clone();
            for k in col..3 {
                j[row][k] = j[row][k].clone() - f.clone() * j[col][k].clone();
            }
            r[row] = r[row].clone() - f * r[col].clone();
        }
    }
    let mut s = [
        Cx::from_real(0.0),
        Cx::from_real(0.0),
        Cx::from_real(0.0),
    ];
    for row in (0..3).rev() {
        let mut acc = r[row].clone();
        for k in (row + 1)..3 {
            acc = acc - j[row][k].clone() * s[k].clone();
        }
        s[row] = acc * j[row][row].recip();
    }
    Some(s)
}

/// A fixed triple of the polynomial action induced by a twist word.
///
/// The word sends the base vertices `(∞, 0, −1)` to three new slopes; pulling
/// their traces back through the flip recursion gives a polynomial map
/// `F: ℂ³ → ℂ³` preserving the Markov surface, and a representation with the
/// prescribed monodromy is a fixed point `F(t) = t` on the surface.  Newton's
/// method runs on three of the four equations, checks the remaining one, and
/// rejects real solutions — those are Fuchsian, not the quasi-Fuchsian fixed
/// point of a pseudo-Anosov.  The monodromy must be hyperbolic.
pub fn monodromy_fixed_triple(word: &TwistWord) -> Result<MarkovTriple<f64>, MarkovError> {
    let m = word.to_matrix()?;
    let (a, _, _, d) = m.entries();
    if (a + d).abs() <= 2 {
        return Err(MarkovError::NotHyperbolic(a + d));
    }
    let images = [
        word.apply(&Slope::INFINITY)?,
        word.apply(&Slope::integer(0))?,
        word.apply(&Slope::integer(-1))?,
    ];
    let progs = [
        TraceProgram::for_slope(&images[0])?,
        TraceProgram::for_slope(&images[1])?,
        TraceProgram::for_slope(&images[2])?,
    ];

    // F(t) − t and the Markov residual, with Jacobians, via jets.
    let eval_all = |t: &[Cx<f64>; 3]| -> ([Jet; 4], [Cx<f64>; 4]) {
        let x = Jet::variable(t[0].clone(), 0);
        let y = Jet::variable(t[1].clone(), 1);
        let z = Jet::variable(t[2].clone(), 2);
        let f0 = progs[0].eval(x.clone(), y.clone(), z.clone()) - x.clone();
        let f1 = progs[1].eval(x.clone(), y.clone(), z.clone()) - y.clone();
        let f2 = progs[2].eval(x.clone(), y.clone(), z.clone()) - z.clone();
        let res = x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone()
            - x.clone() * y.clone() * z.clone();
        let vals = [
            f0.v.clone(),
            f1.v.clone(),
            f2.v.clone(),
            res.v.clone(),
        ];
        ([f0, f1, f2, res], vals)
    };

    // Equation subsets: two fixed-point equations plus the Markov relation,
    // with the omitted fixed-point equation checked after convergence.
    let subsets: [[usize; 3]; 3] = [[0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut seeds: Vec<[Cx<f64>; 3]> = Vec::new();
    for &(re, im) in &[
        (1.5, 0.9),
        (1.5, -0.9),
        (2.2, 0.6),
        (0.9, 1.4),
        (2.8, 1.8),
        (1.1, 2.3),
        (3.2, 0.4),
        (0.6, -1.7),
    ] {
        let w = Cx::new(re, im);
        seeds.push([w.clone(), w.conj(), w.clone()]);
        seeds.push([w.clone(), w.clone(), w.conj()]);
        seeds.push([w.conj(), w.clone(), Cx::new(re + 0.5, im - 0.3)]);
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..24 {
        let mut s = [
            Cx::from_real(0.0),
            Cx::from_real(0.0),
            Cx::from_real(0.0),
        ];
        for c in s.iter_mut() {
            *c = Cx::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        }
        seeds.push(s);
    }

    let mut best_residual = f64::INFINITY;
    for seed in &seeds {
        for subset in &subsets {
            let mut t = seed.clone();
            let mut ok = false;
            for _ in 0..80 {
                let (jets, vals) = eval_all(&t);
                let norm: f64 = subset.iter().map(|&i| vals[i].abs()).sum();
                if !norm.is_finite() || norm > 1e12 {
                    break;
                }
                if norm < 1e-12 {
                    ok = true;
                    break;
                }
                let jmat = [
                    jets[subset[0]].d.clone(),
                    jets[subset[1]].d.clone(),
                    jets[subset[2]].d.clone(),
                ];
                let rhs = [
                    vals[subset[0]].clone(),
                    vals[subset[1]].clone(),
                    vals[subset[2]].clone(),
                ];
                let Some(step) = solve3(jmat, rhs) else { break };
                for i in 0..3 {
                    t[i] = t[i].clone() - step[i].clone();
                }
            }
            if !ok {
                continue;
            }
            let (_, vals) = eval_all(&t);
            let full: f64 = vals.iter().map(|v| v.abs()).sum();
            if full > 1e-9 {
                best_residual = best_residual.min(full);
                continue;
            }
            let cand = MarkovTriple::new(t[0].clone(), t[1].clone(), t[2].clone());
            if cand.is_real(1e-6) {
                continue;
            }
            // Reject triples with a parabolic anchor: the fixed point of
            // interest has all three anchor curves hyperbolic.
            let deg = [&cand.x, &cand.y, &cand.z].iter().any(|c| {
                ((*c).clone() - Cx::from_real(2.0)).abs() < 1e-6
                    || ((*c).clone() + Cx::from_real(2.0)).abs() < 1e-6
            });
            if deg {
                continue;
            }
            return Ok(cand);
        }
    }
    Err(MarkovError::NoConvergence { best_residual })
}

/// Real part of the complex translation length attached to a trace.
pub fn trace_to_real_length(t: &Cx<f64>) -> f64 {
    complex_length_from_trace(t).re
}
