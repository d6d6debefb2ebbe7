//! Pivot sequences: the combinatorial spine of an end-invariant pair.
//!
//! A pair of end invariants `(ν₋, ν₊)` determines two *closest points*
//! `α∓` on the circle: a boundary invariant is its own closest point, an
//! interior invariant contributes the vertex of shortest hyperbolic length
//! on the corresponding torus.  The edges of the Farey graph separating
//! `α₋` from `α₊` form a linearly ordered set `E`, and the vertices lying
//! on at least two edges of `E` are the *internal pivots*.  Appending the
//! closest points themselves when they are vertices yields the pivot
//! sequence `P`, a combinatorial continued fraction joining the two ends.
//!
//! Consecutive pivots obey the twist recurrence
//! `α_{n+1} = D_{α_n}^{w(n)} α_{n−1}`, and the integer widths `w(n)` are
//! computed exactly by the integer-counting bracket applied to the images
//! of `α∓` under the normalization sending `α_n ↦ ∞`.  Replacing a bracket
//! argument by `Re ν` at a terminal vertex extends widths to the ends of
//! the sequence.
//!
//! The geometric content: each pivot is predicted to satisfy
//! `ω(α_n) = 2πi/λ(α_n) ≈ ν₊(α_n) − ν̄₋(α_n) + i`, a bounded hyperbolic
//! distance in the upper half-plane, which for internal pivots simplifies
//! to `ω ≈ w(n) + i`.  This module computes the sequence with its widths,
//! the predictions, and a per-pivot comparison against actual complex
//! translation lengths from trace coordinates; it also checks that every
//! sufficiently short curve in a searched Farey ball is a pivot.
//!
//! Irrational ends make `E` infinite; enumeration is windowed around a
//! deterministic anchor edge and flagged as truncated.  Enlarging the
//! window only extends the emitted sequence — indices and widths of
//! already-emitted pivots never change.

use crate::farey::{
    normalize_at, BoundaryPoint, ExtRational, FareyEdge, FareyError, FareyTriangle,
    IntegerMoebius, Slope, TriangleWalker,
};
use crate::halfplane::{
    bracket_or_zero, shortest_vertex, BracketArg, EndInvariant, HalfplaneError, IrrationalEnd,
};
use crate::markov::{trace_sweep, trace_to_real_length, vertex_trace, AnchoredRep, MarkovError};
use crate::mobius::{complex_length_from_trace, omega, omega_distance};
use crate::scalar::Cx;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::HashSet;
use thiserror::Error;

type Complex64 = Cx<f64>;

/// Errors from pivot-sequence construction and comparison.
#[derive(Debug, Error)]
pub enum PivotError {
    /// The two invariants are the same boundary point.
    #[error("end invariants coincide on the boundary circle")]
    Diagonal,
    /// A window of zero pivots was requested.
    #[error("window must be at least 1")]
    BadWindow,
    /// Truncated irrational data ran out before the walk could anchor.
    #[error("irrational end data too short to anchor the pivot walk")]
    InsufficientPrecision,
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Halfplane(#[from] HalfplaneError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
}

/// The closest point on the circle to an end invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosestVertex {
    /// A vertex of the Farey graph, with any equally short alternates.
    Vertex { slope: Slope, alternates: Vec<Slope> },
    /// An irrational boundary point — its own closest point, not a vertex.
    Irrational(BoundaryPoint),
}

/// The closest point `α` for an end invariant `ν`: boundary invariants are
/// their own closest points; an interior invariant contributes its shortest
/// vertex, with non-generic ties reported as alternates.
pub fn closest_vertex(nu: &EndInvariant) -> Result<ClosestVertex, PivotError> {
    match nu {
        EndInvariant::RationalBoundary(s) => Ok(ClosestVertex::Vertex {
            slope: *s,
            alternates: Vec::new(),
        }),
        EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)) => {
            Ok(ClosestVertex::Irrational(BoundaryPoint::Surd(x.clone())))
        }
        EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)) => {
            Ok(ClosestVertex::Irrational(BoundaryPoint::Prefix(cf.clone())))
        }
        EndInvariant::Interior(ip) => {
            let sv = shortest_vertex(ip)?;
            let alternates = sv
                .ties
                .iter()
                .copied()
                .filter(|s| *s != sv.primary)
                .collect();
            Ok(ClosestVertex::Vertex {
                slope: sv.primary,
                alternates,
            })
        }
    }
}

/// Which of the degenerate shapes the edge set took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotCase {
    /// At least two separating edges: a genuine sequence.
    Normal,
    /// No separating edge: the closest points share a triangle closure.
    EmptyE,
    /// Exactly one separating edge: a single internal pivot, chosen as the
    /// Stern–Brocot-least endpoint of that edge.
    SingletonE,
}

/// One pivot with its index and width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotEntry {
    pub index: i64,
    pub slope: Slope,
    /// `None` when the width is undefined (a rational end) or undecidable
    /// at the available irrational precision.
    pub width: Option<i64>,
    /// Member of the internal pivot set, as opposed to an appended end.
    pub internal: bool,
}

/// Truncation bookkeeping for windowed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowInfo {
    pub requested: u32,
    pub truncated_minus: bool,
    pub truncated_plus: bool,
}

/// A pivot sequence with its separating edges and case flags.
#[derive(Debug, Clone)]
pub struct PivotSequence {
    /// Entries ordered by index, from the `ν₋` side to the `ν₊` side.
    pub entries: Vec<PivotEntry>,
    /// The windowed separating edge set, ordered from `α₋` to `α₊`.
    pub edges: Vec<FareyEdge>,
    /// The closest points, when they are vertices.
    pub alpha_minus: Option<Slope>,
    pub alpha_plus: Option<Slope>,
    pub case: PivotCase,
    pub window: WindowInfo,
}

impl PivotSequence {
    /// All pivot slopes in sequence order.
    pub fn slopes(&self) -> Vec<Slope> {
        self.entries.iter().map(|e| e.slope).collect()
    }

    /// The internal pivots only.
    pub fn internal_entries(&self) -> impl Iterator<Item = &PivotEntry> {
        self.entries.iter().filter(|e| e.internal)
    }
}

/// The image of a closest point under a pivot's normalizing map, as an
/// exact bracket argument.  `None` when the available data cannot pin the
/// image (a truncated prefix straddling the pivot, or one whose image
/// wraps through infinity).
fn bracket_arg_for(m: &IntegerMoebius, pt: &BoundaryPoint, pivot: &Slope) -> Option<BracketArg> {
    match pt {
        BoundaryPoint::Rational(s) => match m.apply_rational(&ExtRational::from_slope(s)) {
            ExtRational::Finite(q) => Some(BracketArg::Exact(q)),
            ExtRational::Infinity => None,
        },
        BoundaryPoint::Surd(x) => Some(BracketArg::Surd(m.apply_surd(x))),
        BoundaryPoint::Prefix(cf) => {
            let (lo, hi) = cf.prefix_interval();
            if let Some(pr) = pivot.to_rational() {
                if lo <= pr && pr <= hi {
                    return None;
                }
            }
            let il = m.apply_rational(&ExtRational::Finite(lo));
            let ih = m.apply_rational(&ExtRational::Finite(hi));
            match (il, ih) {
                (ExtRational::Finite(a), ExtRational::Finite(b)) => {
                    let (s, t) = if a <= b { (a, b) } else { (b, a) };
                    Some(BracketArg::Interval(s, t))
                }
                _ => None,
            }
        }
    }
}

/// Bracket two optional arguments; undecidable data yields `None`.
fn width_from(a: Option<BracketArg>, b: Option<BracketArg>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => bracket_or_zero(&x, &y).ok(),
        _ => None,
    }
}

/// The exact real part of an interior invariant's image under `m`.
fn interior_re(m: &IntegerMoebius, nu: &EndInvariant) -> Option<BracketArg> {
    if let EndInvariant::Interior(ip) = nu {
        let (x, _) = m.apply_exact_point(ip.x(), ip.y());
        Some(BracketArg::Exact(x))
    } else {
        None
    }
}

/// Walks from `start` toward `target`, collecting crossed edges that
/// separate the two closest points, in crossing order.  Stops at the first
/// non-separating edge (the walk has left the geodesic's triangle path),
/// at `cap` edges, or when truncated data runs out.
fn collect_separating(
    start: &FareyTriangle,
    target: BoundaryPoint,
    pt_minus: &BoundaryPoint,
    pt_plus: &BoundaryPoint,
    cap: usize,
) -> Result<(Vec<FareyEdge>, bool), PivotError> {
    let mut out = Vec::new();
    let mut truncated = false;
    for step in TriangleWalker::new(start, target) {
        let flip = match step {
            Ok(f) => f,
            Err(FareyError::PrefixExhausted) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e.into()),
        };
        match flip.kept.separates(pt_minus, pt_plus) {
            Ok(true) => {
                out.push(flip.kept);
                if out.len() >= cap {
                    truncated = true;
                    break;
                }
            }
            Ok(false) => break,
            Err(FareyError::PrefixExhausted) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((out, truncated))
}

/// Finds the anchor: a separating edge together with the two triangles
/// flanking it, by walking from the base triangle toward each end in turn.
/// `Ok(None)` means no separating edge is reachable with the given data;
/// the boolean reports whether truncated data cut a walk short.
fn find_anchor(
    pt_minus: &BoundaryPoint,
    pt_plus: &BoundaryPoint,
) -> Result<(Option<(FareyEdge, FareyTriangle, FareyTriangle)>, bool), PivotError> {
    let mut any_prefix_stop = false;
    for (target, toward_plus) in [(pt_plus.clone(), true), (pt_minus.clone(), false)] {
        for step in TriangleWalker::new(&FareyTriangle::base(), target) {
            let flip = match step {
                Ok(f) => f,
                Err(FareyError::PrefixExhausted) => {
                    any_prefix_stop = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            };
            match flip.kept.separates(pt_minus, pt_plus) {
                Ok(true) => {
                    let (ea, eb) = flip.kept.endpoints();
                    let prev = FareyTriangle::new(ea, eb, flip.dropped)
                        .expect("flip source is a triangle");
                    let next = FareyTriangle::new(ea, eb, flip.added)
                        .expect("flip target is a triangle");
                    let (plus_tri, minus_tri) = if toward_plus {
                        (next, prev)
                    } else {
                        (prev, next)
                    };
                    return Ok((Some((flip.kept, plus_tri, minus_tri)), any_prefix_stop));
                }
                Ok(false) => continue,
                Err(FareyError::PrefixExhausted) => {
                    any_prefix_stop = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok((None, any_prefix_stop))
}

/// The pivot sequence of an end-invariant pair.
///
/// `window` bounds, per side of the anchor edge, how many separating edges
/// are enumerated toward an irrational end; exceeding it sets the
/// truncation flags.  Walks toward rational ends are finite and always run
/// to completion.  The pair must not be a single boundary point.
pub fn pivot_sequence(
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
    window: u32,
) -> Result<PivotSequence, PivotError> {
    if window == 0 {
        return Err(PivotError::BadWindow);
    }
    if nu_minus.same_boundary_point(nu_plus) {
        return Err(PivotError::Diagonal);
    }
    let cv_minus = closest_vertex(nu_minus)?;
    let cv_plus = closest_vertex(nu_plus)?;
    let (v_minus, pt_minus) = match &cv_minus {
        ClosestVertex::Vertex { slope, .. } => (Some(*slope), BoundaryPoint::Rational(*slope)),
        ClosestVertex::Irrational(bp) => (None, bp.clone()),
    };
    let (v_plus, pt_plus) = match &cv_plus {
        ClosestVertex::Vertex { slope, .. } => (Some(*slope), BoundaryPoint::Rational(*slope)),
        ClosestVertex::Irrational(bp) => (None, bp.clone()),
    };

    // Coinciding closest vertices: a single-pivot sequence.
    if let (Some(a), Some(b)) = (v_minus, v_plus) {
        if a == b {
            let m = normalize_at(&a);
            let width = width_from(interior_re(&m, nu_minus), interior_re(&m, nu_plus));
            return Ok(PivotSequence {
                entries: vec![PivotEntry {
                    index: 0,
                    slope: a,
                    width,
                    internal: false,
                }],
                edges: Vec::new(),
                alpha_minus: Some(a),
                alpha_plus: Some(b),
                case: PivotCase::EmptyE,
                window: WindowInfo {
                    requested: window,
                    truncated_minus: false,
                    truncated_plus: false,
                },
            });
        }
    }

    let (anchor, prefix_stopped) = find_anchor(&pt_minus, &pt_plus)?;
    let Some((e_star, plus_tri, minus_tri)) = anchor else {
        if v_minus.is_none() || v_plus.is_none() || prefix_stopped {
            // An irrational end guarantees infinitely many separating
            // edges, so failing to find one means the data ran out.
            return Err(PivotError::InsufficientPrecision);
        }
        // Both ends are distinct vertices spanning no separating edge.
        let (a, b) = (v_minus.unwrap(), v_plus.unwrap());
        let m0 = normalize_at(&a);
        let m1 = normalize_at(&b);
        let w0 = width_from(interior_re(&m0, nu_minus), bracket_arg_for(&m0, &pt_plus, &a));
        let w1 = width_from(bracket_arg_for(&m1, &pt_minus, &b), interior_re(&m1, nu_plus));
        return Ok(PivotSequence {
            entries: vec![
                PivotEntry {
                    index: 0,
                    slope: a,
                    width: w0,
                    internal: false,
                },
                PivotEntry {
                    index: 1,
                    slope: b,
                    width: w1,
                    internal: false,
                },
            ],
            edges: Vec::new(),
            alpha_minus: Some(a),
            alpha_plus: Some(b),
            case: PivotCase::EmptyE,
            window: WindowInfo {
                requested: window,
                truncated_minus: false,
                truncated_plus: false,
            },
        });
    };

    // A walk toward a rational point reaches it in finitely many flips, so
    // the window only caps the two irrational directions.
    let cap_for = |pt: &BoundaryPoint| match pt {
        BoundaryPoint::Rational(_) => usize::MAX,
        _ => window as usize,
    };
    let (plus_edges, truncated_plus) =
        collect_separating(&plus_tri, pt_plus.clone(), &pt_minus, &pt_plus, cap_for(&pt_plus))?;
    let (minus_edges, truncated_minus) =
        collect_separating(&minus_tri, pt_minus.clone(), &pt_minus, &pt_plus, cap_for(&pt_minus))?;

    let mut edges: Vec<FareyEdge> = minus_edges.into_iter().rev().collect();
    let star_pos = edges.len();
    edges.push(e_star);
    edges.extend(plus_edges);

    // The singleton case: redefine the internal pivot set to one endpoint.
    if edges.len() == 1 {
        let (a, b) = edges[0].endpoints();
        let pick = match crate::farey::stern_brocot_cmp(&a, &b) {
            std::cmp::Ordering::Less | std::cmp::Ordering::Equal => a,
            std::cmp::Ordering::Greater => b,
        };
        let vm = v_minus.expect("singleton edge set implies vertex ends");
        let vp = v_plus.expect("singleton edge set implies vertex ends");
        let mm = normalize_at(&vm);
        let mp = normalize_at(&vp);
        let m1 = normalize_at(&pick);
        let pick_pt = BoundaryPoint::Rational(pick);
        let entries = vec![
            PivotEntry {
                index: 0,
                slope: vm,
                width: width_from(
                    interior_re(&mm, nu_minus),
                    bracket_arg_for(&mm, &pick_pt, &vm),
                ),
                internal: false,
            },
            PivotEntry {
                index: 1,
                slope: pick,
                width: width_from(
                    bracket_arg_for(&m1, &pt_minus, &pick),
                    bracket_arg_for(&m1, &pt_plus, &pick),
                ),
                internal: true,
            },
            PivotEntry {
                index: 2,
                slope: vp,
                width: width_from(
                    bracket_arg_for(&mp, &pick_pt, &vp),
                    interior_re(&mp, nu_plus),
                ),
                internal: false,
            },
        ];
        return Ok(PivotSequence {
            entries,
            edges,
            alpha_minus: Some(vm),
            alpha_plus: Some(vp),
            case: PivotCase::SingletonE,
            window: WindowInfo {
                requested: window,
                truncated_minus: false,
                truncated_plus: false,
            },
        });
    }

    // Internal pivots: vertices shared by consecutive separating edges,
    // consecutive duplicates collapsed.
    let mut internals: Vec<Slope> = Vec::new();
    let mut anchor_shared: Option<Slope> = None;
    for i in 0..edges.len() - 1 {
        let s = edges[i]
            .shared_vertex(&edges[i + 1])
            .expect("consecutive separating edges bound a common triangle");
        if i == star_pos {
            anchor_shared = Some(s);
        }
        if internals.last() != Some(&s) {
            internals.push(s);
        }
    }
    if anchor_shared.is_none() && star_pos > 0 {
        // The anchor edge is the last edge; fall back to its predecessor.
        anchor_shared = edges[star_pos - 1].shared_vertex(&edges[star_pos]);
    }
    debug_assert!({
        let set: HashSet<Slope> = internals.iter().copied().collect();
        set.len() == internals.len()
    });

    // Index anchoring: vertex ends pin the numbering at that end; a fully
    // irrational pair anchors index 1 at the pivot owning the anchor edge.
    let first_index: i64 = if v_minus.is_some() {
        1
    } else if v_plus.is_some() {
        2 - internals.len() as i64
    } else {
        let a = anchor_shared.expect("normal case has at least two edges");
        let pos = internals
            .iter()
            .position(|s| *s == a)
            .expect("anchor vertex is internal") as i64;
        1 - pos
    };

    let mut entries = Vec::new();
    if let Some(vm) = v_minus {
        // The second bracket argument is the image of the adjacent pivot,
        // not of the far closest point: the two may straddle different
        // integers, and only the former keeps the end defect below one.
        let next = BoundaryPoint::Rational(internals[0]);
        let m = normalize_at(&vm);
        entries.push(PivotEntry {
            index: first_index - 1,
            slope: vm,
            width: width_from(interior_re(&m, nu_minus), bracket_arg_for(&m, &next, &vm)),
            internal: false,
        });
    }
    for (j, s) in internals.iter().enumerate() {
        let m = normalize_at(s);
        entries.push(PivotEntry {
            index: first_index + j as i64,
            slope: *s,
            width: width_from(
                bracket_arg_for(&m, &pt_minus, s),
                bracket_arg_for(&m, &pt_plus, s),
            ),
            internal: true,
        });
    }
    if let Some(vp) = v_plus {
        let prev = BoundaryPoint::Rational(*internals.last().expect("normal case has internals"));
        let m = normalize_at(&vp);
        entries.push(PivotEntry {
            index: first_index + internals.len() as i64,
            slope: vp,
            width: width_from(bracket_arg_for(&m, &prev, &vp), interior_re(&m, nu_plus)),
            internal: false,
        });
    }

    Ok(PivotSequence {
        entries,
        edges,
        alpha_minus: v_minus,
        alpha_plus: v_plus,
        case: PivotCase::Normal,
        window: WindowInfo {
            requested: window,
            truncated_minus,
            truncated_plus,
        },
    })
}

// ---------------------------------------------------------------------------
// Predictions
// ---------------------------------------------------------------------------

/// Reporting constants.  The theory asserts such constants exist without
/// naming values, so they are configuration: `c1` bounds the hyperbolic
/// distance between predicted and actual `ω`, `c2..c4` frame the length
/// and rotation of a width-`w` pivot, and `eps` is the short-curve cutoff.
#[derive(Debug, Clone, Copy)]
pub struct PivotConfig {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub eps: f64,
}

impl Default for PivotConfig {
    fn default() -> Self {
        PivotConfig {
            c1: 2.0,
            c2: 0.0,
            c3: f64::INFINITY,
            c4: f64::INFINITY,
            eps: 0.05,
        }
    }
}

/// The per-pivot prediction: transformed invariants and `ω̂`.
#[derive(Debug, Clone)]
pub struct PivotPrediction {
    pub index: i64,
    pub slope: Slope,
    pub width: Option<i64>,
    /// `ν₊(α) − ν̄₋(α) + i`; `None` encodes the parabolic prediction `∞i`.
    pub omega_hat: Option<Complex64>,
    pub nu_minus_local: Option<Complex64>,
    pub nu_plus_local: Option<Complex64>,
    /// The internal simplification `w(n) + i`.
    pub simple_omega: Option<Complex64>,
    /// `(c2/w², c3/w²)` when the width is a nonzero integer.
    pub ell_window: Option<(f64, f64)>,
    /// `2π/w`, the predicted rotation scale.
    pub theta_target: Option<f64>,
    /// Set when a truncated prefix forced a midpoint estimate.
    pub approx: bool,
}

fn rat_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// The image of an invariant under a pivot's normalizing map as a complex
/// number: interior points keep their imaginary part, boundary points are
/// real, and the pivot's own slope maps to `None` (infinity).
fn local_complex(m: &IntegerMoebius, nu: &EndInvariant) -> (Option<Complex64>, bool) {
    match nu {
        EndInvariant::Interior(ip) => {
            let (x, y) = m.apply_exact_point(ip.x(), ip.y());
            (Some(Cx::new(rat_f64(&x), rat_f64(&y))), false)
        }
        EndInvariant::RationalBoundary(s) => {
            match m.apply_rational(&ExtRational::from_slope(s)) {
                ExtRational::Infinity => (None, false),
                ExtRational::Finite(q) => (Some(Cx::new(rat_f64(&q), 0.0)), false),
            }
        }
        EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(x)) => {
            (Some(Cx::new(m.apply_surd(x).to_f64(), 0.0)), false)
        }
        EndInvariant::IrrationalBoundary(IrrationalEnd::Prefix(cf)) => {
            let (lo, hi) = cf.prefix_interval();
            let il = m.apply_rational(&ExtRational::Finite(lo));
            let ih = m.apply_rational(&ExtRational::Finite(hi));
            match (il, ih) {
                (ExtRational::Finite(a), ExtRational::Finite(b)) => {
                    let mid = (rat_f64(&a) + rat_f64(&b)) / 2.0;
                    (Some(Cx::new(mid, 0.0)), true)
                }
                _ => (None, true),
            }
        }
    }
}

fn assemble_omega_hat(
    lm: &Option<Complex64>,
    lp: &Option<Complex64>,
) -> Option<Complex64> {
    match (lm, lp) {
        (Some(a), Some(b)) => Some(Cx::new(b.re - a.re, b.im + a.im + 1.0)),
        _ => None,
    }
}

/// The prediction `ν₊(α) − ν̄₋(α) + i` at a single slope, using the
/// canonical normalization.  Returns the value and the approximation flag.
pub fn predicted_omega(
    alpha: &Slope,
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
) -> (Option<Complex64>, bool) {
    let m = normalize_at(alpha);
    let (lm, am) = local_complex(&m, nu_minus);
    let (lp, ap) = local_complex(&m, nu_plus);
    (assemble_omega_hat(&lm, &lp), am || ap)
}

/// As [`predicted_omega`] but accepting any normalizer for `alpha`.  The
/// integer-translation ambiguity is stripped by reducing to the canonical
/// normalizer first, so the result is bit-for-bit independent of which
/// representative the caller supplies.
pub fn predicted_omega_with(
    m_any: &IntegerMoebius,
    alpha: &Slope,
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
) -> (Option<Complex64>, bool) {
    let canon = normalize_at(alpha);
    let (_, _, c0, d0) = canon.entries();
    let (_, _, c1, d1) = m_any.entries();
    debug_assert_eq!(
        (c0, d0),
        (c1, d1),
        "supplied map must be a translate of the canonical normalizer"
    );
    let _ = m_any;
    let m = canon;
    let (lm, am) = local_complex(&m, nu_minus);
    let (lp, ap) = local_complex(&m, nu_plus);
    (assemble_omega_hat(&lm, &lp), am || ap)
}

/// Predictions for every entry of a pivot sequence.
pub fn predict(
    seq: &PivotSequence,
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
    cfg: &PivotConfig,
) -> Vec<PivotPrediction> {
    seq.entries
        .iter()
        .map(|e| {
            let m = normalize_at(&e.slope);
            let (lm, am) = local_complex(&m, nu_minus);
            let (lp, ap) = local_complex(&m, nu_plus);
            let omega_hat = assemble_omega_hat(&lm, &lp);
            let simple_omega = if e.internal {
                e.width.map(|w| Cx::new(w as f64, 1.0))
            } else {
                None
            };
            let ell_window = e.width.filter(|w| *w != 0).map(|w| {
                let w2 = (w as f64) * (w as f64);
                (cfg.c2 / w2, cfg.c3 / w2)
            });
            let theta_target = e
                .width
                .filter(|w| *w != 0)
                .map(|w| 2.0 * std::f64::consts::PI / w as f64);
            PivotPrediction {
                index: e.index,
                slope: e.slope,
                width: e.width,
                omega_hat,
                nu_minus_local: lm,
                nu_plus_local: lp,
                simple_omega,
                ell_window,
                theta_target,
                approx: am || ap,
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Comparison against a representation
// ---------------------------------------------------------------------------

/// One pivot's predicted-versus-actual record.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PivotRow {
    pub index: i64,
    pub slope: Slope,
    pub width: Option<i64>,
    pub omega_hat: Option<[f64; 2]>,
    pub omega_actual: Option<[f64; 2]>,
    pub lambda_actual: [f64; 2],
    pub h2_distance: Option<f64>,
    pub flags: Vec<String>,
}

/// The comparison report over a whole sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PivotReport {
    pub rows: Vec<PivotRow>,
    pub max_h2: Option<f64>,
    pub mean_h2: Option<f64>,
    /// Empirical maximum real pivot length, reported in lieu of an
    /// asserted universal bound.
    pub max_pivot_length: f64,
}

/// Compares predicted `ω̂` with actual `ω = 2πi/λ` for each pivot of the
/// sequence, under the representation `rep` (whose end invariants the
/// caller asserts are the ones that built `seq`).
pub fn compare(
    rep: &AnchoredRep<f64>,
    preds: &[PivotPrediction],
    cfg: &PivotConfig,
) -> Result<PivotReport, PivotError> {
    let mut rows = Vec::new();
    let mut h2s: Vec<f64> = Vec::new();
    let mut max_len = 0.0f64;
    for p in preds {
        let tr = vertex_trace(rep, &p.slope)?;
        let lambda = complex_length_from_trace(&tr);
        let om = omega(&lambda);
        let mut flags = Vec::new();
        let parabolic = lambda.re == 0.0 && lambda.im == 0.0;
        if parabolic && p.omega_hat.is_some() {
            flags.push("parabolic-actual-finite-prediction".to_string());
        }
        if !parabolic && p.omega_hat.is_none() {
            flags.push("finite-actual-parabolic-prediction".to_string());
        }
        if p.approx {
            flags.push("prediction-from-truncated-prefix".to_string());
        }
        let d = omega_distance(&p.omega_hat, &om);
        let h2 = if d.is_finite() {
            Some(d)
        } else {
            flags.push("incomparable".to_string());
            None
        };
        if let Some(v) = h2 {
            if v > cfg.c1 {
                flags.push("exceeds-c1".to_string());
            }
            h2s.push(v);
        }
        if let (Some(w), false) = (p.width, parabolic) {
            if w != 0 {
                let ell = lambda.re;
                let w2 = (w as f64) * (w as f64);
                if ell * w2 < cfg.c2 || ell * w2 > cfg.c3 {
                    flags.push("outside-ell-window".to_string());
                }
                let theta = lambda.im;
                if theta != 0.0 {
                    if (w as f64 - 2.0 * std::f64::consts::PI / theta).abs() > cfg.c4 {
                        flags.push("outside-theta-window".to_string());
                    }
                } else {
                    flags.push("theta-zero".to_string());
                }
            }
        }
        if !parabolic {
            max_len = max_len.max(lambda.re);
        }
        rows.push(PivotRow {
            index: p.index,
            slope: p.slope,
            width: p.width,
            omega_hat: p.omega_hat.as_ref().map(|c| [c.re, c.im]),
            omega_actual: om.as_ref().map(|c| [c.re, c.im]),
            lambda_actual: [lambda.re, lambda.im],
            h2_distance: h2,
            flags,
        });
    }
    let max_h2 = h2s.iter().cloned().fold(None, |acc: Option<f64>, v| {
        Some(acc.map_or(v, |a| a.max(v)))
    });
    let mean_h2 = if h2s.is_empty() {
        None
    } else {
        Some(h2s.iter().sum::<f64>() / h2s.len() as f64)
    };
    Ok(PivotReport {
        rows,
        max_h2,
        mean_h2,
        max_pivot_length: max_len,
    })
}

/// Slopes within the depth-`depth` Farey ball whose curves are shorter
/// than `eps` yet are not pivots of `seq`.  An empty list means the
/// short-curves property holds on the searched ball.
pub fn short_curves_are_pivots(
    rep: &AnchoredRep<f64>,
    seq: &PivotSequence,
    eps: f64,
    depth: u32,
) -> Vec<Slope> {
    let pivots: HashSet<Slope> = seq.entries.iter().map(|e| e.slope).collect();
    let mut out: Vec<Slope> = trace_sweep(&rep.triple, depth)
        .into_iter()
        .filter(|(s, tr)| {
            if !tr.is_finite() {
                return false;
            }
            let ell = trace_to_real_length(tr);
            ell <= eps && !pivots.contains(s)
        })
        .map(|(s, _)| s)
        .collect();
    out.sort_by(crate::farey::stern_brocot_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::dehn_twist;
    use crate::halfplane::InteriorPoint;
    use crate::markov::{maskit_triple, monodromy_fixed_triple, MarkovTriple, TwistWord};
    use crate::surd::QuadSurd;
    use num_bigint::BigInt;

    fn interior(x: f64, y: f64) -> EndInvariant {
        EndInvariant::Interior(InteriorPoint::from_f64(x, y).unwrap())
    }

    fn interior_exact(xn: i64, xd: i64, yn: i64, yd: i64) -> EndInvariant {
        EndInvariant::Interior(
            InteriorPoint::new_exact(
                BigRational::new(BigInt::from(xn), BigInt::from(xd)),
                BigRational::new(BigInt::from(yn), BigInt::from(yd)),
            )
            .unwrap(),
        )
    }

    fn rational(p: i64, q: i64) -> EndInvariant {
        EndInvariant::RationalBoundary(Slope::new(p, q).unwrap())
    }

    fn surd_end(a: i64, b: i64, c: i64, d: i64) -> EndInvariant {
        EndInvariant::IrrationalBoundary(IrrationalEnd::Surd(QuadSurd::new(a, b, c, d).unwrap()))
    }

    fn golden_pair() -> (EndInvariant, EndInvariant) {
        (surd_end(1, -1, 2, 5), surd_end(1, 1, 2, 5))
    }

    fn check_twist_recurrence(seq: &PivotSequence) {
        for win in seq.entries.windows(3) {
            let (a, b, c) = (&win[0], &win[1], &win[2]);
            if !b.internal {
                continue;
            }
            let Some(w) = b.width else { continue };
            let image = dehn_twist(&b.slope, w, &a.slope).unwrap();
            assert_eq!(
                image, c.slope,
                "twist recurrence fails at index {}: D_{}^{}({}) = {} ≠ {}",
                b.index, b.slope, w, a.slope, image, c.slope
            );
        }
    }

    #[test]
    fn closest_vertex_examples() {
        match closest_vertex(&rational(2, 5)).unwrap() {
            ClosestVertex::Vertex { slope, alternates } => {
                assert_eq!(slope, Slope::new(2, 5).unwrap());
                assert!(alternates.is_empty());
            }
            other => panic!("expected vertex, got {other:?}"),
        }
        match closest_vertex(&interior(0.0, 2.0)).unwrap() {
            ClosestVertex::Vertex { slope, .. } => assert_eq!(slope, Slope::INFINITY),
            other => panic!("expected vertex, got {other:?}"),
        }
        match closest_vertex(&golden_pair().1).unwrap() {
            ClosestVertex::Irrational(BoundaryPoint::Surd(_)) => {}
            other => panic!("expected irrational marker, got {other:?}"),
        }
    }

    #[test]
    fn empty_cases() {
        // Two interior points sharing the shortest vertex ∞.
        let a = interior_exact(0, 1, 2, 1);
        let b = interior_exact(1, 1000, 2, 1);
        let seq = pivot_sequence(&a, &b, 4).unwrap();
        assert_eq!(seq.case, PivotCase::EmptyE);
        assert_eq!(seq.entries.len(), 1);
        assert_eq!(seq.entries[0].slope, Slope::INFINITY);
        assert_eq!(seq.entries[0].index, 0);
        assert_eq!(seq.entries[0].width, Some(0));
        assert!(seq.edges.is_empty());

        // Distinct neighboring vertices: both appended, no separating edge.
        let seq = pivot_sequence(&rational(0, 1), &rational(1, 0), 4).unwrap();
        assert_eq!(seq.case, PivotCase::EmptyE);
        assert_eq!(seq.slopes(), vec![Slope::integer(0), Slope::INFINITY]);
        assert_eq!(seq.entries[0].width, None);
        assert_eq!(seq.entries[1].width, None);

        // The interior diagonal is allowed: symmetric hexagonal invariants.
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seq = pivot_sequence(&hex, &hex, 4).unwrap();
        assert_eq!(seq.case, PivotCase::EmptyE);
        assert_eq!(seq.entries.len(), 1);
        assert_eq!(seq.entries[0].width, Some(0));

        // The boundary diagonal is rejected.
        assert!(matches!(
            pivot_sequence(&rational(3, 7), &rational(3, 7), 4),
            Err(PivotError::Diagonal)
        ));
        let phi = golden_pair().1;
        assert!(matches!(
            pivot_sequence(&phi, &phi.clone(), 4),
            Err(PivotError::Diagonal)
        ));
        assert!(matches!(
            pivot_sequence(&rational(0, 1), &rational(1, 0), 0),
            Err(PivotError::BadWindow)
        ));
    }

    #[test]
    fn singleton_case() {
        let seq = pivot_sequence(&rational(-1, 1), &rational(1, 1), 4).unwrap();
        assert_eq!(seq.case, PivotCase::SingletonE);
        assert_eq!(seq.edges.len(), 1);
        let (a, b) = seq.edges[0].endpoints();
        let mut ends = [a, b];
        ends.sort();
        assert_eq!(ends, [Slope::integer(0), Slope::INFINITY]);
        // The Stern–Brocot-least endpoint is ∞.
        assert_eq!(
            seq.slopes(),
            vec![Slope::integer(-1), Slope::INFINITY, Slope::integer(1)]
        );
        assert_eq!(seq.entries[1].width, Some(2));
        assert!(seq.entries[1].internal);
        assert_eq!(seq.entries[0].width, None);
        assert_eq!(seq.entries[2].width, None);
        check_twist_recurrence(&seq);
    }

    #[test]
    fn integer_fan_between_vertices() {
        let seq = pivot_sequence(&rational(3, 1), &rational(0, 1), 8).unwrap();
        assert_eq!(seq.case, PivotCase::Normal);
        assert_eq!(
            seq.slopes(),
            vec![Slope::integer(3), Slope::INFINITY, Slope::integer(0)]
        );
        assert_eq!(
            seq.entries.iter().map(|e| e.index).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert_eq!(seq.entries[1].width, Some(-3));
        assert!(!seq.window.truncated_minus && !seq.window.truncated_plus);
        check_twist_recurrence(&seq);
        // E is the pair of fan edges (∞,2), (∞,1) in order from the 3 side.
        assert_eq!(seq.edges.len(), 2);
        for e in &seq.edges {
            assert!(e.contains(&Slope::INFINITY));
        }
    }

    #[test]
    fn continued_fraction_widths() {
        // ν₋ = ∞, ν₊ = (−3+√15)/2 = [0; 2, 3, 2, 3, ...]: the width
        // magnitudes along the sequence are the continued-fraction
        // coefficients 2, 3, 2, 3, ...
        let minus = rational(1, 0);
        let plus = surd_end(-3, 1, 2, 15);
        let seq = pivot_sequence(&minus, &plus, 9).unwrap();
        assert_eq!(seq.case, PivotCase::Normal);
        assert_eq!(seq.alpha_minus, Some(Slope::INFINITY));
        assert_eq!(seq.alpha_plus, None);
        assert!(!seq.window.truncated_minus);
        assert!(seq.window.truncated_plus);
        let internals: Vec<&PivotEntry> = seq.internal_entries().collect();
        assert!(internals.len() >= 4);
        assert_eq!(internals[0].index, 1);
        assert_eq!(seq.entries[0].index, 0);
        assert_eq!(seq.entries[0].slope, Slope::INFINITY);
        for (j, e) in internals.iter().enumerate() {
            let expect = if j % 2 == 0 { 2 } else { 3 };
            assert_eq!(
                e.width.map(i64::abs),
                Some(expect),
                "width magnitude at internal {j}"
            );
        }
        check_twist_recurrence(&seq);
        // First pivot is the integer part 0 of the target.
        assert_eq!(internals[0].slope, Slope::integer(0));
    }

    #[test]
    fn golden_bi_infinite() {
        let (minus, plus) = golden_pair();
        let seq = pivot_sequence(&minus, &plus, 10).unwrap();
        assert_eq!(seq.case, PivotCase::Normal);
        assert!(seq.alpha_minus.is_none() && seq.alpha_plus.is_none());
        assert!(seq.window.truncated_minus && seq.window.truncated_plus);
        let internals: Vec<&PivotEntry> = seq.internal_entries().collect();
        assert!(internals.len() >= 10);
        for e in &seq.entries {
            assert!(e.internal, "bi-infinite sequences have no appended ends");
            assert_eq!(e.width.map(i64::abs), Some(1), "width at {}", e.slope);
        }
        check_twist_recurrence(&seq);
        // Indices are contiguous and include 1.
        let idx: Vec<i64> = seq.entries.iter().map(|e| e.index).collect();
        for w in idx.windows(2) {
            assert_eq!(w[1], w[0] + 1);
        }
        assert!(idx.contains(&1));
        // The Fibonacci-ratio slopes appear.
        let slopes = seq.slopes();
        for s in [
            Slope::integer(1),
            Slope::integer(2),
            Slope::new(3, 2).unwrap(),
            Slope::new(5, 3).unwrap(),
            Slope::new(8, 5).unwrap(),
        ] {
            assert!(slopes.contains(&s), "missing Fibonacci slope {s}");
        }
        // Every internal pivot really lies on at least two edges of E.
        for e in &seq.entries {
            let count = seq.edges.iter().filter(|ed| ed.contains(&e.slope)).count();
            assert!(count >= 2, "pivot {} has only {count} edges", e.slope);
        }
    }

    #[test]
    fn window_growth_is_monotone() {
        let (minus, plus) = golden_pair();
        let small = pivot_sequence(&minus, &plus, 5).unwrap();
        let large = pivot_sequence(&minus, &plus, 12).unwrap();
        for e in &small.entries {
            let other = large
                .entries
                .iter()
                .find(|f| f.index == e.index)
                .unwrap_or_else(|| panic!("index {} vanished", e.index));
            assert_eq!(other.slope, e.slope);
            assert_eq!(other.width, e.width);
            assert_eq!(other.internal, e.internal);
        }
        assert!(large.entries.len() > small.entries.len());

        // Also monotone when one end is a vertex.
        let minus = rational(1, 0);
        let plus = surd_end(-3, 1, 2, 15);
        let small = pivot_sequence(&minus, &plus, 4).unwrap();
        let large = pivot_sequence(&minus, &plus, 11).unwrap();
        for e in &small.entries {
            let other = large.entries.iter().find(|f| f.index == e.index).unwrap();
            assert_eq!((other.slope, other.width), (e.slope, e.width));
        }
    }

    #[test]
    fn width_minus_local_gap_is_at_most_two() {
        // |w(n) − (Re ν₊(α_n) − Re ν₋(α_n))| ≤ 2 for every emitted width.
        let cases: Vec<(EndInvariant, EndInvariant)> = vec![
            golden_pair(),
            (rational(1, 0), surd_end(-3, 1, 2, 15)),
            (rational(3, 1), rational(0, 1)),
            (interior_exact(0, 1, 2, 1), surd_end(1, 1, 2, 5)),
            (surd_end(0, -1, 1, 2), rational(2, 3)),
        ];
        for (minus, plus) in &cases {
            let seq = pivot_sequence(minus, plus, 8).unwrap();
            let preds = predict(&seq, minus, plus, &PivotConfig::default());
            for p in &preds {
                let (Some(w), Some(lm), Some(lp)) =
                    (p.width, p.nu_minus_local.clone(), p.nu_plus_local.clone())
                else {
                    continue;
                };
                let drift = (w as f64 - (lp.re - lm.re)).abs();
                assert!(
                    drift <= 2.0 + 1e-9,
                    "width bound fails at {}: w={w} locals {} {}",
                    p.slope,
                    lm.re,
                    lp.re
                );
            }
        }
    }

    #[test]
    fn prediction_translation_invariance() {
        let (minus, plus) = golden_pair();
        let seq = pivot_sequence(&minus, &plus, 8).unwrap();
        for e in &seq.entries {
            let canonical = predicted_omega(&e.slope, &minus, &plus);
            for k in [-3i64, 1, 7] {
                let shifted = IntegerMoebius::translation(k)
                    .compose(&normalize_at(&e.slope))
                    .unwrap();
                let via = predicted_omega_with(&shifted, &e.slope, &minus, &plus);
                match (&canonical.0, &via.0) {
                    (Some(a), Some(b)) => {
                        assert_eq!(a.re.to_bits(), b.re.to_bits());
                        assert_eq!(a.im.to_bits(), b.im.to_bits());
                    }
                    (None, None) => {}
                    _ => panic!("translation changed finiteness"),
                }
            }
        }
    }

    #[test]
    fn predictions_track_simple_form() {
        // For boundary ends the prediction is real-plus-i and lands within
        // Euclidean distance 2 of w + i.
        let (minus, plus) = golden_pair();
        let seq = pivot_sequence(&minus, &plus, 10).unwrap();
        let preds = predict(&seq, &minus, &plus, &PivotConfig::default());
        for p in &preds {
            let (Some(oh), Some(so)) = (p.omega_hat.clone(), p.simple_omega.clone()) else {
                continue;
            };
            assert!((oh.im - 1.0).abs() < 1e-12, "boundary ends give Im = 1");
            assert!(
                (oh.clone() - so.clone()).abs() <= 2.0 + 1e-9,
                "{}: ω̂ = {oh} vs {so}",
                p.slope
            );
        }
    }

    #[test]
    fn compare_modular_triple() {
        // The hexagonal torus carries the (3,3,3) triple; its symmetric
        // interior invariants give the single pivot ∞ with a real length.
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seq = pivot_sequence(&hex, &hex, 4).unwrap();
        let preds = predict(&seq, &hex, &hex, &PivotConfig::default());
        let rep = AnchoredRep::new(MarkovTriple::from_reals(3.0, 3.0, 3.0)).unwrap();
        let report = compare(&rep, &preds, &PivotConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.lambda_actual[1], 0.0, "Fuchsian λ is real");
        let l0 = 4.0 * 0.5f64.asinh();
        assert!((row.lambda_actual[0] - l0).abs() < 1e-12);
        let om = row.omega_actual.unwrap();
        assert!(om[0].abs() < 1e-12, "ω is purely imaginary");
        assert!(row.h2_distance.unwrap() < 2.0);
        assert!((report.max_pivot_length - l0).abs() < 1e-12);
    }

    #[test]
    fn compare_maskit_parabolic_pivot() {
        // A Maskit-slice representation pinches the slope-∞ curve: that
        // pivot must report actual parabolic and prediction ∞i.
        let minus = interior_exact(0, 1, 1, 2);
        let plus = rational(1, 0);
        let seq = pivot_sequence(&minus, &plus, 4).unwrap();
        assert_eq!(seq.case, PivotCase::EmptyE);
        assert_eq!(seq.slopes(), vec![Slope::integer(0), Slope::INFINITY]);
        let preds = predict(&seq, &minus, &plus, &PivotConfig::default());
        let inf_pred = preds.iter().find(|p| p.slope == Slope::INFINITY).unwrap();
        assert!(inf_pred.omega_hat.is_none(), "pinched slope predicts ∞i");
        let rep = AnchoredRep::new(maskit_triple(Cx::new(1.8, 0.9), 1)).unwrap();
        let report = compare(&rep, &preds, &PivotConfig::default()).unwrap();
        let row = report
            .rows
            .iter()
            .find(|r| r.slope == Slope::INFINITY)
            .unwrap();
        assert_eq!(row.lambda_actual, [0.0, 0.0]);
        assert!(row.omega_actual.is_none());
        assert_eq!(row.h2_distance, Some(0.0));
        assert!(row.flags.is_empty());
    }

    #[test]
    fn monodromy_h2_distances_constant_along_orbit() {
        // The fixed triple of D(inf)¹ D(0)⁻¹ has golden-ratio ends; the
        // distance d(ω, w+i) is the same for every internal pivot.
        let w: TwistWord = "D(inf)^1 D(0)^-1".parse().unwrap();
        let t = monodromy_fixed_triple(&w).unwrap();
        let rep = AnchoredRep::new(t).unwrap();
        let (minus, plus) = golden_pair();
        let seq = pivot_sequence(&minus, &plus, 9).unwrap();
        let preds = predict(&seq, &minus, &plus, &PivotConfig::default());
        let report = compare(&rep, &preds, &PivotConfig::default()).unwrap();
        let mut dists = Vec::new();
        for (p, r) in preds.iter().zip(report.rows.iter()) {
            let Some(so) = p.simple_omega.clone() else { continue };
            let Some(oa) = r.omega_actual else { continue };
            let d = crate::halfplane::hyp_dist(
                &crate::halfplane::UHPoint::new(so.re, so.im).unwrap(),
                &crate::halfplane::UHPoint::new(oa[0], oa[1]).unwrap(),
            );
            dists.push(d);
        }
        assert!(dists.len() >= 8);
        for d in &dists {
            assert!(
                (d - dists[0]).abs() < 1e-6,
                "orbit distances vary: {dists:?}"
            );
        }
    }

    #[test]
    fn short_curves_checks() {
        // Fuchsian (3,3,3): no curve is shorter than L₀ ≈ 1.9248, so an
        // eps of 0.5 is vacuously satisfied — and the sweep minimum is L₀.
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seq = pivot_sequence(&hex, &hex, 4).unwrap();
        let rep = AnchoredRep::new(MarkovTriple::from_reals(3.0, 3.0, 3.0)).unwrap();
        assert!(short_curves_are_pivots(&rep, &seq, 0.5, 8).is_empty());
        let min_len = trace_sweep(&rep.triple, 8)
            .iter()
            .map(|(_, tr)| trace_to_real_length(tr))
            .fold(f64::INFINITY, f64::min);
        assert!((min_len - 4.0 * 0.5f64.asinh()).abs() < 1e-9);
        assert!(short_curves_are_pivots(&rep, &seq, 0.0, 8).is_empty());

        // Monodromy fixed triple: every short curve is a pivot, including
        // the pivots themselves at a cutoff just above their length.
        let w: TwistWord = "D(inf)^1 D(0)^-1".parse().unwrap();
        let t = monodromy_fixed_triple(&w).unwrap();
        let rep = AnchoredRep::new(t.clone()).unwrap();
        let (minus, plus) = golden_pair();
        let seq = pivot_sequence(&minus, &plus, 14).unwrap();
        let pivot_len = trace_to_real_length(&t.x);
        let violations = short_curves_are_pivots(&rep, &seq, pivot_len + 0.01, 8);
        assert!(violations.is_empty(), "violations: {violations:?}");
        assert!(short_curves_are_pivots(&rep, &seq, 0.05, 8).is_empty());
    }

    #[test]
    fn rows_serialize() {
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seq = pivot_sequence(&hex, &hex, 4).unwrap();
        let preds = predict(&seq, &hex, &hex, &PivotConfig::default());
        let rep = AnchoredRep::new(MarkovTriple::from_reals(3.0, 3.0, 3.0)).unwrap();
        let report = compare(&rep, &preds, &PivotConfig::default()).unwrap();
        let text = serde_json::to_string(&report.rows[0]).unwrap();
        assert!(text.contains("\"index\":0"));
        assert!(text.contains("\"slope\":\"inf\""));
        assert!(text.contains("\"lambda_actual\""));
    }
}
