//! Model-manifold data: combinatorial widths, block torus parameters,
//! and Margulis tube shapes.
//!
//! A pivot sequence determines a stack of blocks, one per pivot, glued
//! along once-punctured-torus cross-sections.  Each block contains a solid
//! torus neighborhood `U` of its pivot curve whose boundary is a Euclidean
//! torus, marked by the pivot `α` (longitude, normalized to length 1) and
//! a meridian `μ`.  Subdividing `∂U` into bottom, top and two side annuli
//! at heights `t₀ ∈ {0, ¼}` and `t₁ ∈ {¾, 1}` gives the Teichmüller
//! parameter as a sum of annulus parameters: each side contributes
//! `(t₁−t₀)i`, the top contributes `τ(σ₁) − i/2`, and the bottom enters
//! with reversed orientation as `−τ̄(σ₀) − i/2`.  For an internal block the
//! meridians differ by exactly `w(n)` twists and all four moduli are `½`,
//! so `τ = w(n) + 2i` exactly; a boundary block replaces one structure by
//! the end invariant itself, giving `w + v + 3i/2` with a complex defect
//! `v` satisfying `|Re v| ≤ 1`, and a single double-boundary block gives
//! `ν₊(α) − ν̄₋(α) + i`.
//!
//! The triple `Σ = (W, v₊, v₋)` — widths plus boundary defects, with the
//! sentinel `∞i` at an accidental parabolic — is the combinatorial data:
//! it forgets the pivots themselves but rebuilds every torus parameter.
//! Generalized data admit `w(n) = ∞`, exported as rank-2 cusps.
//!
//! Tube shapes: the equidistant torus at radius `r` about a geodesic with
//! complex translation length `ℓ + iθ` is intrinsically flat with metric
//! `cosh²r dt² + sinh²r dφ²`, so the marked boundary has lattice vectors
//! `L = ℓ cosh r + iθ sinh r` and `M = 2πi sinh r`, and parameter
//! `τ = M/L`.  Normalizing the longitude to length 1 makes the triple
//! `(ℓ, θ, r)` recoverable in closed form: `sinh r = |τ|/2π`,
//! `ℓ = cos ψ / cosh r`, `θ = sin ψ / sinh r` with `ψ = π/2 − arg τ`,
//! solvable with `|θ| ≤ π` exactly when `|τ − 1| ≥ 1` and `|τ + 1| ≥ 1`.

use crate::farey::{normalize_at, ExtRational, IntegerMoebius, Slope};
use crate::halfplane::{EndInvariant, InteriorPoint};
use crate::pivot::{PivotError, PivotPrediction, PivotSequence};
use crate::scalar::Cx;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

type Complex64 = Cx<f64>;

/// Errors from model assembly and tube solving.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("index {0} is not in the pivot sequence")]
    IndexOutOfRange(i64),
    #[error("width at index {0} is unavailable at this precision")]
    MissingWidth(i64),
    #[error("torus parameter is not in the upper half-plane")]
    NotUpperHalfPlane,
    #[error("no tube with |θ| ≤ π realizes this torus: |τ ∓ 1| < 1")]
    UnsolvableTau,
    #[error("tube shape requires 0 < ℓ < 1 and θ in (−π, π]")]
    BadShape,
    #[error("combinatorial data inconsistent with the pivot sequence")]
    Inconsistent,
    #[error("empty pivot sequence")]
    EmptySequence,
    #[error(transparent)]
    Pivot(#[from] PivotError),
}

/// An integer width or the generalized value `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    Finite(i64),
    Infinite,
}

/// A boundary defect `v±`: a complex number with `|Re| ≤ 1`, kept in
/// exact rational arithmetic, or the accidental-parabolic sentinel `∞i`.
#[derive(Debug, Clone, PartialEq)]
pub enum VParam {
    Finite { re: BigRational, im: BigRational },
    ParabolicInfinity,
}

impl VParam {
    /// Floating view, `None` for the `∞i` sentinel.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            VParam::Finite { re, im } => Some(Cx::new(
                re.to_f64().unwrap_or(f64::NAN),
                im.to_f64().unwrap_or(f64::NAN),
            )),
            VParam::ParabolicInfinity => None,
        }
    }
}

/// The combinatorial data `Σ = (W, v₊, v₋)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinatorialData {
    /// Index of the first block; the index set is the interval
    /// `first_index .. first_index + widths.len()`.
    pub first_index: i64,
    /// Width per block; `None` marks a width undecidable from truncated
    /// irrational data (distinct from the generalized `∞`).
    pub widths: Vec<Option<Width>>,
    /// Present exactly when the corresponding end has a boundary block.
    pub v_plus: Option<VParam>,
    pub v_minus: Option<VParam>,
}

impl CombinatorialData {
    /// The width at sequence index `n`.
    pub fn width_at(&self, n: i64) -> Option<&Option<Width>> {
        usize::try_from(n - self.first_index)
            .ok()
            .and_then(|i| self.widths.get(i))
    }
}

/// Block classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    Internal,
    BoundaryPlus,
    BoundaryMinus,
    DoubleBoundary,
    Parabolic,
}

/// A boundary-torus parameter: finite in the upper half-plane, or `∞i`.
#[derive(Debug, Clone, PartialEq)]
pub enum TorusParam {
    Finite(Complex64),
    InfinityI,
}

/// The marked torus parameter of one block's solid-torus boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTorusParam {
    pub index: i64,
    pub kind: BlockKind,
    pub tau: TorusParam,
}

fn exact_images(m: &IntegerMoebius, ip: &InteriorPoint) -> (BigRational, BigRational) {
    m.apply_exact_point(ip.x(), ip.y())
}

/// The integer image of a neighboring pivot under the normalizer at a
/// vertex end.
fn neighbor_image(m: &IntegerMoebius, s: &Slope) -> Result<BigRational, ModelError> {
    match m.apply_rational(&ExtRational::from_slope(s)) {
        ExtRational::Finite(q) => Ok(q),
        ExtRational::Infinity => Err(ModelError::Inconsistent),
    }
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The combinatorial data of a pivot sequence: widths copied from the
/// sequence, boundary defects from the defining relations
/// `w(p+1) + v₊ = ν₊(α₊) − α_p(α₊)` and `w(0) + v₋ = α₁(α₋) − ν̄₋(α₋)`
/// (jointly `w(0) + v₋ + v₊ = ν₊ − ν̄₋` for a single double block), with
/// `v = ∞i` at an accidental parabolic.
pub fn combinatorial_data(
    seq: &PivotSequence,
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
) -> Result<CombinatorialData, ModelError> {
    let first = seq.entries.first().ok_or(ModelError::EmptySequence)?;
    let first_index = first.index;
    let widths: Vec<Option<Width>> = seq
        .entries
        .iter()
        .map(|e| e.width.map(Width::Finite))
        .collect();

    let single = seq.entries.len() == 1;
    let mut v_minus = None;
    let mut v_plus = None;

    if single && seq.alpha_minus.is_some() {
        // One double-boundary block.
        let slope = first.slope;
        let m = normalize_at(&slope);
        match (nu_minus, nu_plus) {
            (EndInvariant::Interior(im_), EndInvariant::Interior(ip_)) => {
                let (xm, ym) = exact_images(&m, im_);
                let (xp, yp) = exact_images(&m, ip_);
                // Split ν₊ − ν̄₋ along the same integers the width bracket
                // uses: j nearest to Re ν₋ inside the spanned interval, k
                // nearest to Re ν₊; without an integer between, split at
                // the integer nearest the midpoint.
                let (j, k) = if xm <= xp {
                    let j = xm.ceil();
                    let k = xp.floor();
                    if j <= k {
                        (j, k)
                    } else {
                        let t = ((&xm + &xp) / big(2)).round();
                        (t.clone(), t)
                    }
                } else {
                    let j = xm.floor();
                    let k = xp.ceil();
                    if k <= j {
                        (j, k)
                    } else {
                        let t = ((&xm + &xp) / big(2)).round();
                        (t.clone(), t)
                    }
                };
                v_minus = Some(VParam::Finite {
                    re: &j - &xm,
                    im: ym,
                });
                v_plus = Some(VParam::Finite {
                    re: &xp - &k,
                    im: yp,
                });
            }
            _ => {
                v_minus = Some(match nu_minus {
                    EndInvariant::RationalBoundary(_) => VParam::ParabolicInfinity,
                    EndInvariant::Interior(ipt) => {
                        let (xm, ym) = exact_images(&m, ipt);
                        let j = xm.round();
                        VParam::Finite { re: &j - &xm, im: ym }
                    }
                    _ => return Err(ModelError::Inconsistent),
                });
                v_plus = Some(match nu_plus {
                    EndInvariant::RationalBoundary(_) => VParam::ParabolicInfinity,
                    EndInvariant::Interior(ipt) => {
                        let (xp, yp) = exact_images(&m, ipt);
                        let k = xp.round();
                        VParam::Finite { re: &xp - &k, im: yp }
                    }
                    _ => return Err(ModelError::Inconsistent),
                });
            }
        }
    } else {
        if seq.alpha_minus.is_some() {
            v_minus = Some(match nu_minus {
                EndInvariant::RationalBoundary(_) => VParam::ParabolicInfinity,
                EndInvariant::Interior(ipt) => {
                    let a0 = &seq.entries[0];
                    let m = normalize_at(&a0.slope);
                    let a1 = neighbor_image(&m, &seq.entries[1].slope)?;
                    let (xm, ym) = exact_images(&m, ipt);
                    let w0 = a0.width.ok_or(ModelError::MissingWidth(a0.index))?;
                    VParam::Finite {
                        re: &a1 - &xm - big(w0),
                        im: ym,
                    }
                }
                _ => return Err(ModelError::Inconsistent),
            });
        }
        if seq.alpha_plus.is_some() {
            v_plus = Some(match nu_plus {
                EndInvariant::RationalBoundary(_) => VParam::ParabolicInfinity,
                EndInvariant::Interior(ipt) => {
                    let last = seq.entries.last().unwrap();
                    let m = normalize_at(&last.slope);
                    let ap = neighbor_image(&m, &seq.entries[seq.entries.len() - 2].slope)?;
                    let (xp, yp) = exact_images(&m, ipt);
                    let wp = last.width.ok_or(ModelError::MissingWidth(last.index))?;
                    VParam::Finite {
                        re: &xp - &ap - big(wp),
                        im: yp,
                    }
                }
                _ => return Err(ModelError::Inconsistent),
            });
        }
    }

    Ok(CombinatorialData {
        first_index,
        widths,
        v_plus,
        v_minus,
    })
}

/// The marked torus parameter of the block at `index`, assembled from the
/// end invariants: internal blocks give `w(n) + 2i` exactly, boundary
/// blocks the four-annulus sum, parabolic ends `∞i`.
pub fn block_torus_param(
    seq: &PivotSequence,
    index: i64,
    nu_minus: &EndInvariant,
    nu_plus: &EndInvariant,
) -> Result<BlockTorusParam, ModelError> {
    let pos = seq
        .entries
        .iter()
        .position(|e| e.index == index)
        .ok_or(ModelError::IndexOutOfRange(index))?;
    let entry = &seq.entries[pos];
    if entry.internal {
        let w = entry.width.ok_or(ModelError::MissingWidth(index))?;
        return Ok(BlockTorusParam {
            index,
            kind: BlockKind::Internal,
            tau: TorusParam::Finite(Cx::new(w as f64, 2.0)),
        });
    }
    let is_first = pos == 0 && seq.alpha_minus.is_some();
    let is_last = pos == seq.entries.len() - 1 && seq.alpha_plus.is_some();
    let m = normalize_at(&entry.slope);
    if is_first && is_last {
        return match (nu_minus, nu_plus) {
            (EndInvariant::Interior(im_), EndInvariant::Interior(ip_)) => {
                let (xm, ym) = exact_images(&m, im_);
                let (xp, yp) = exact_images(&m, ip_);
                let re = (&xp - &xm).to_f64().unwrap_or(f64::NAN);
                let im = (&yp + &ym).to_f64().unwrap_or(f64::NAN) + 1.0;
                Ok(BlockTorusParam {
                    index,
                    kind: BlockKind::DoubleBoundary,
                    tau: TorusParam::Finite(Cx::new(re, im)),
                })
            }
            _ => Ok(BlockTorusParam {
                index,
                kind: BlockKind::Parabolic,
                tau: TorusParam::InfinityI,
            }),
        };
    }
    if is_first {
        return match nu_minus {
            EndInvariant::RationalBoundary(_) => Ok(BlockTorusParam {
                index,
                kind: BlockKind::Parabolic,
                tau: TorusParam::InfinityI,
            }),
            EndInvariant::Interior(ipt) => {
                let a1 = neighbor_image(&m, &seq.entries[1].slope)?;
                let (xm, ym) = exact_images(&m, ipt);
                let re = (&a1 - &xm).to_f64().unwrap_or(f64::NAN);
                let im = ym.to_f64().unwrap_or(f64::NAN) + 1.5;
                Ok(BlockTorusParam {
                    index,
                    kind: BlockKind::BoundaryMinus,
                    tau: TorusParam::Finite(Cx::new(re, im)),
                })
            }
            _ => Err(ModelError::Inconsistent),
        };
    }
    if is_last {
        return match nu_plus {
            EndInvariant::RationalBoundary(_) => Ok(BlockTorusParam {
                index,
                kind: BlockKind::Parabolic,
                tau: TorusParam::InfinityI,
            }),
            EndInvariant::Interior(ipt) => {
                let ap = neighbor_image(&m, &seq.entries[pos - 1].slope)?;
                let (xp, yp) = exact_images(&m, ipt);
                let re = (&xp - &ap).to_f64().unwrap_or(f64::NAN);
                let im = yp.to_f64().unwrap_or(f64::NAN) + 1.5;
                Ok(BlockTorusParam {
                    index,
                    kind: BlockKind::BoundaryPlus,
                    tau: TorusParam::Finite(Cx::new(re, im)),
                })
            }
            _ => Err(ModelError::Inconsistent),
        };
    }
    Err(ModelError::Inconsistent)
}

// ---------------------------------------------------------------------------
// Tube shapes
// ---------------------------------------------------------------------------

/// A Margulis tube: core complex length `ℓ + iθ` and radius `r`, with the
/// boundary longitude normalized to length 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeShape {
    pub ell: f64,
    pub theta: f64,
    pub r: f64,
}

impl TubeShape {
    /// The unique radius making the boundary longitude have length 1 for
    /// a given core length: `ℓ² cosh²r + θ² sinh²r = 1`.
    pub fn normalized(ell: f64, theta: f64) -> Result<Self, ModelError> {
        if !(ell > 0.0 && ell < 1.0 && theta > -PI && theta <= PI) {
            return Err(ModelError::BadShape);
        }
        let sh2 = (1.0 - ell * ell) / (ell * ell + theta * theta);
        let r = sh2.sqrt().asinh();
        Ok(TubeShape { ell, theta, r })
    }
}

/// The marked boundary torus parameter of a tube: lattice vectors
/// `L = ℓ cosh r + iθ sinh r` (longitude) and `M = 2πi sinh r` (meridian)
/// give `τ = M/L`.
pub fn tube_boundary_param(shape: &TubeShape) -> Complex64 {
    let a = shape.ell * shape.r.cosh();
    let b = shape.theta * shape.r.sinh();
    let s = 2.0 * PI * shape.r.sinh();
    let n2 = a * a + b * b;
    Cx::new(s * b / n2, s * a / n2)
}

/// Inverts [`tube_boundary_param`] under the longitude-length-1
/// normalization: `sinh r = |τ|/2π`, then `ℓ = cos ψ / cosh r` and
/// `θ = sin ψ / sinh r` with `ψ = π/2 − arg τ`.  A meridian rotation
/// within `(−π, π]` exists exactly when `|τ − 1| ≥ 1` and `|τ + 1| ≥ 1`.
pub fn tube_from_boundary(tau: &Complex64) -> Result<TubeShape, ModelError> {
    if !(tau.re.is_finite() && tau.im.is_finite() && tau.im > 0.0) {
        return Err(ModelError::NotUpperHalfPlane);
    }
    let d_plus = ((tau.re + 1.0).powi(2) + tau.im * tau.im).sqrt();
    let d_minus = ((tau.re - 1.0).powi(2) + tau.im * tau.im).sqrt();
    if d_plus < 1.0 - 1e-12 || d_minus < 1.0 - 1e-12 {
        return Err(ModelError::UnsolvableTau);
    }
    let modulus = (tau.re * tau.re + tau.im * tau.im).sqrt();
    let sinh_r = modulus / (2.0 * PI);
    let r = sinh_r.asinh();
    let cosh_r = (1.0 + sinh_r * sinh_r).sqrt();
    let psi = PI / 2.0 - tau.im.atan2(tau.re);
    let ell = psi.cos() / cosh_r;
    let mut theta = psi.sin() / sinh_r;
    if theta > PI {
        theta = PI;
    }
    if theta <= -PI {
        theta = PI;
    }
    Ok(TubeShape { ell, theta, r })
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// A complex value in the export schema: `[re, im]` or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonComplex {
    Pair([f64; 2]),
    Inf(String),
}

impl JsonComplex {
    fn inf() -> Self {
        JsonComplex::Inf("inf".to_string())
    }
}

/// A width in the export schema: an integer or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonWidth {
    Int(i64),
    Inf(String),
}

/// One block record of the export document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub n: i64,
    pub kind: BlockKind,
    pub width: Option<JsonWidth>,
    pub tau: JsonComplex,
    pub tube: Option<TubeShape>,
    pub omega_hat: JsonComplex,
}

/// The `Σ` section of the export document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaDoc {
    pub first_index: i64,
    pub widths: Vec<Option<JsonWidth>>,
    pub v_plus: Option<JsonComplex>,
    pub v_minus: Option<JsonComplex>,
}

/// The versioned model document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub version: u32,
    pub sigma: SigmaDoc,
    pub blocks: Vec<BlockDoc>,
}

fn v_to_json(v: &Option<VParam>) -> Option<JsonComplex> {
    v.as_ref().map(|p| match p.to_complex() {
        Some(c) => JsonComplex::Pair([c.re, c.im]),
        None => JsonComplex::inf(),
    })
}

/// Rebuilds every block's torus parameter from the combinatorial data
/// alone — internal `w + 2i`, boundary `w + v + 3i/2`, double
/// `w + v₊ + v₋ + i` — solves the tubes, and attaches predicted `ω̂`.
/// Generalized `∞` widths export as rank-2 cusps (`tau` and `width`
/// `"inf"`, no tube).  Parabolic ends carry no width; any other block
/// with an undecidable width is an error: enlarge the irrational data
/// before exporting.
pub fn export_model(
    sigma: &CombinatorialData,
    seq: &PivotSequence,
    preds: &[PivotPrediction],
) -> Result<ModelDocument, ModelError> {
    if seq.entries.len() != sigma.widths.len()
        || seq.entries.first().map(|e| e.index) != Some(sigma.first_index)
    {
        return Err(ModelError::Inconsistent);
    }
    let count = sigma.widths.len();
    let mut blocks = Vec::with_capacity(count);
    for (i, w) in sigma.widths.iter().enumerate() {
        let n = sigma.first_index + i as i64;
        let is_first = i == 0 && sigma.v_minus.is_some();
        let is_last = i == count - 1 && sigma.v_plus.is_some();
        let (kind, v_sum) = match (is_first, is_last) {
            (false, false) => (BlockKind::Internal, Some((big(0), big(2)))),
            (true, true) => match (&sigma.v_minus, &sigma.v_plus) {
                (
                    Some(VParam::Finite { re: rm, im: im_ }),
                    Some(VParam::Finite { re: rp, im: ip_ }),
                ) => (
                    BlockKind::DoubleBoundary,
                    Some((rm + rp, im_ + ip_ + big(1))),
                ),
                _ => (BlockKind::Parabolic, None),
            },
            (true, false) => match &sigma.v_minus {
                Some(VParam::Finite { re, im }) => (
                    BlockKind::BoundaryMinus,
                    Some((re.clone(), im + BigRational::new(BigInt::from(3), BigInt::from(2)))),
                ),
                _ => (BlockKind::Parabolic, None),
            },
            (false, true) => match &sigma.v_plus {
                Some(VParam::Finite { re, im }) => (
                    BlockKind::BoundaryPlus,
                    Some((re.clone(), im + BigRational::new(BigInt::from(3), BigInt::from(2)))),
                ),
                _ => (BlockKind::Parabolic, None),
            },
        };
        let (width, tau) = match (w, &v_sum) {
            // A parabolic end has no replaced bracket term, so its width
            // is legitimately absent; elsewhere a missing width means the
            // irrational data ran out before the bracket settled.
            (None, None) => (None, None),
            (None, Some(_)) => return Err(ModelError::MissingWidth(n)),
            (Some(Width::Infinite), _) => (Some(JsonWidth::Inf("inf".to_string())), None),
            (Some(Width::Finite(w)), Some((vre, vim))) => (
                Some(JsonWidth::Int(*w)),
                Some(Cx::new(
                    (vre + big(*w)).to_f64().unwrap_or(f64::NAN),
                    vim.to_f64().unwrap_or(f64::NAN),
                )),
            ),
            (Some(Width::Finite(w)), None) => (Some(JsonWidth::Int(*w)), None),
        };
        let tube = tau.as_ref().and_then(|t| tube_from_boundary(t).ok());
        let tau_json = match &tau {
            Some(t) => JsonComplex::Pair([t.re, t.im]),
            None => JsonComplex::inf(),
        };
        let omega_hat = preds
            .iter()
            .find(|p| p.index == n)
            .and_then(|p| p.omega_hat.as_ref().map(|c| JsonComplex::Pair([c.re, c.im])))
            .unwrap_or_else(JsonComplex::inf);
        blocks.push(BlockDoc {
            n,
            kind,
            width,
            tau: tau_json,
            tube,
            omega_hat,
        });
    }
    Ok(ModelDocument {
        version: 1,
        sigma: SigmaDoc {
            first_index: sigma.first_index,
            widths: sigma
                .widths
                .iter()
                .map(|w| {
                    w.map(|w| match w {
                        Width::Finite(v) => JsonWidth::Int(v),
                        Width::Infinite => JsonWidth::Inf("inf".to_string()),
                    })
                })
                .collect(),
            v_plus: v_to_json(&sigma.v_plus),
            v_minus: v_to_json(&sigma.v_minus),
        },
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfplane::{hyp_dist, UHPoint};
    use crate::pivot::{pivot_sequence, predict, PivotConfig};
    use crate::surd::QuadSurd;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn interior(x: f64, y: f64) -> EndInvariant {
        EndInvariant::Interior(InteriorPoint::from_f64(x, y).unwrap())
    }

    fn rational(p: i64, q: i64) -> EndInvariant {
        EndInvariant::RationalBoundary(Slope::new(p, q).unwrap())
    }

    fn surd_end(a: i64, b: i64, c: i64, d: i64) -> EndInvariant {
        EndInvariant::IrrationalBoundary(crate::halfplane::IrrationalEnd::Surd(
            QuadSurd::new(a, b, c, d).unwrap(),
        ))
    }

    #[test]
    fn tube_round_trips() {
        let mut worst = 0.0f64;
        for i in 0..12 {
            let ell = 1e-4 + (0.999 - 1e-4) * (i as f64) / 11.0;
            for j in 0..12 {
                let theta = -PI + 2.0 * PI * ((j + 1) as f64) / 12.0;
                let shape = TubeShape::normalized(ell, theta).unwrap();
                let tau = tube_boundary_param(&shape);
                let back = tube_from_boundary(&tau).unwrap();
                worst = worst
                    .max((back.ell - shape.ell).abs())
                    .max((back.theta - shape.theta).abs())
                    .max((back.r - shape.r).abs());
            }
        }
        assert!(worst < 1e-9, "tube round trip drift {worst}");

        // Reverse round trip on τ.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let tau = Cx::new(rng.gen_range(-8.0..8.0), rng.gen_range(2.0..40.0));
            let shape = tube_from_boundary(&tau).unwrap();
            let again = tube_boundary_param(&shape);
            assert!(
                (again.re - tau.re).abs() < 1e-9 && (again.im - tau.im).abs() < 1e-9,
                "τ round trip: {tau} → {again}"
            );
        }
    }

    #[test]
    fn equidistant_surface_oracle() {
        // Measure the induced metric of the equidistant surface about the
        // vertical axis in the upper half-space model, using only the
        // ambient distance formula, and rebuild τ from the measured
        // lattice; it must match the closed form.
        let ambient = |p: [f64; 3], q: [f64; 3]| -> f64 {
            let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2);
            (1.0 + d2 / (2.0 * p[2] * q[2])).acosh()
        };
        // Point at axis height e^t pushed distance r in direction φ.
        let surface = |r: f64, t: f64, phi: f64| -> [f64; 3] {
            let (st, ct) = (r.tanh(), 1.0 / r.cosh());
            [
                t.exp() * st * phi.cos(),
                t.exp() * st * phi.sin(),
                t.exp() * ct,
            ]
        };
        for r in [0.3, 1.0, 2.5] {
            let h = 1e-5;
            let p0 = surface(r, 0.2, 0.7);
            let pt = surface(r, 0.2 + h, 0.7);
            let pp = surface(r, 0.2, 0.7 + h);
            let a = ambient(p0, pt) / h;
            let b = ambient(p0, pp) / h;
            assert!((a - r.cosh()).abs() < 1e-4, "axial coefficient at r={r}");
            assert!((b - r.sinh()).abs() < 1e-4, "angular coefficient at r={r}");
            // Orthogonality: the diagonal displacement obeys Pythagoras.
            let pd = surface(r, 0.2 + h, 0.7 + h);
            let d = ambient(p0, pd) / h;
            assert!((d * d - (a * a + b * b)).abs() < 1e-3);

            // Assemble τ from the measured coefficients for a sample core.
            let (ell, theta) = (0.4, 1.1);
            let lat_l = Cx::new(ell * a, theta * b);
            let lat_m = Cx::new(0.0, 2.0 * PI * b);
            let tau_measured = lat_m / lat_l.clone();
            let tau_closed = tube_boundary_param(&TubeShape { ell, theta, r });
            assert!(
                (tau_measured.re - tau_closed.re).abs() < 1e-4
                    && (tau_measured.im - tau_closed.im).abs() < 1e-4,
                "lattice assembly disagrees at r={r}"
            );
        }
    }

    #[test]
    fn tube_examples_and_errors() {
        // Symmetric input: no rotation.
        let s = tube_from_boundary(&Cx::new(0.0, 7.0)).unwrap();
        assert_eq!(s.theta, 0.0);
        assert!(s.ell > 0.0);

        // Taller tori give shorter cores and fatter tubes.
        let s10 = tube_from_boundary(&Cx::new(0.3, 10.0)).unwrap();
        let s100 = tube_from_boundary(&Cx::new(0.3, 100.0)).unwrap();
        assert!(s100.ell < s10.ell);
        assert!(s100.r > s10.r);

        // ω′ = 2πi/(ℓ+iθ) approaches τ as the torus grows.
        let dist_to_omega = |tau: Cx<f64>| -> f64 {
            let s = tube_from_boundary(&tau).unwrap();
            let lam = Cx::new(s.ell, s.theta);
            let om = Cx::new(0.0, 2.0 * PI) / lam;
            hyp_dist(
                &UHPoint::new(tau.re, tau.im).unwrap(),
                &UHPoint::new(om.re, om.im).unwrap(),
            )
        };
        assert!(dist_to_omega(Cx::new(0.3, 100.0)) < dist_to_omega(Cx::new(0.3, 10.0)));
        assert!(dist_to_omega(Cx::new(0.3, 100.0)) < 0.05);

        assert!(matches!(
            tube_from_boundary(&Cx::new(1.0, 0.5)),
            Err(ModelError::UnsolvableTau)
        ));
        assert!(matches!(
            tube_from_boundary(&Cx::new(0.0, -1.0)),
            Err(ModelError::NotUpperHalfPlane)
        ));
        assert!(matches!(
            TubeShape::normalized(1.5, 0.0),
            Err(ModelError::BadShape)
        ));
    }

    #[test]
    fn internal_tau_is_exact() {
        let seq = pivot_sequence(&rational(3, 1), &rational(0, 1), 8).unwrap();
        let b = block_torus_param(&seq, 1, &rational(3, 1), &rational(0, 1)).unwrap();
        assert_eq!(b.kind, BlockKind::Internal);
        match b.tau {
            TorusParam::Finite(c) => {
                assert_eq!(c.re.to_bits(), (-3.0f64).to_bits());
                assert_eq!(c.im.to_bits(), 2.0f64.to_bits());
            }
            _ => panic!("internal block must have finite τ"),
        }

        let minus = surd_end(1, -1, 2, 5);
        let plus = surd_end(1, 1, 2, 5);
        let seq = pivot_sequence(&minus, &plus, 6).unwrap();
        for e in &seq.entries {
            let b = block_torus_param(&seq, e.index, &minus, &plus).unwrap();
            match b.tau {
                TorusParam::Finite(c) => {
                    assert_eq!(c.re, e.width.unwrap() as f64);
                    assert_eq!(c.im.to_bits(), 2.0f64.to_bits());
                }
                _ => panic!("internal"),
            }
        }
    }

    #[test]
    fn sigma_golden_has_no_defects() {
        let minus = surd_end(1, -1, 2, 5);
        let plus = surd_end(1, 1, 2, 5);
        let seq = pivot_sequence(&minus, &plus, 6).unwrap();
        let sigma = combinatorial_data(&seq, &minus, &plus).unwrap();
        assert!(sigma.v_plus.is_none() && sigma.v_minus.is_none());
        assert_eq!(sigma.widths.len(), seq.entries.len());
        assert_eq!(sigma.first_index, seq.entries[0].index);
        for w in &sigma.widths {
            assert!(matches!(w, Some(Width::Finite(v)) if v.abs() == 1));
        }
        assert_eq!(
            sigma.width_at(1).and_then(|w| w.as_ref().cloned()),
            Some(Width::Finite(seq.entries.iter().find(|e| e.index == 1).unwrap().width.unwrap()))
        );
    }

    #[test]
    fn sigma_defining_relations_exact() {
        // ν₋ parabolic at ∞, ν₊ interior over the vertex 0: v₋ = ∞i and
        // w(1) + v₊ = ν₊(α₊) − α_p(α₊) in exact arithmetic.
        let minus = rational(1, 0);
        let plus = interior(0.0, 0.5);
        let seq = pivot_sequence(&minus, &plus, 4).unwrap();
        let sigma = combinatorial_data(&seq, &minus, &plus).unwrap();
        assert_eq!(sigma.v_minus, Some(VParam::ParabolicInfinity));
        let Some(VParam::Finite { re, im }) = &sigma.v_plus else {
            panic!("v₊ must be finite");
        };
        let last = seq.entries.last().unwrap();
        let m = normalize_at(&last.slope);
        let ap = neighbor_image(&m, &seq.entries[0].slope).unwrap();
        let ip = match &plus {
            EndInvariant::Interior(p) => p.clone(),
            _ => unreachable!(),
        };
        let (xp, yp) = exact_images(&m, &ip);
        let w = big(last.width.unwrap());
        assert_eq!(&(&w + re), &(&xp - &ap));
        assert_eq!(im, &yp);
        assert!((re.to_f64().unwrap()).abs() <= 1.0);

        // Interior-over-0 to parabolic-at-∞, reading the other relation.
        let minus2 = interior(0.0, 0.5);
        let plus2 = rational(1, 0);
        let seq2 = pivot_sequence(&minus2, &plus2, 4).unwrap();
        let sigma2 = combinatorial_data(&seq2, &minus2, &plus2).unwrap();
        assert_eq!(sigma2.v_plus, Some(VParam::ParabolicInfinity));
        let Some(VParam::Finite { re, im }) = &sigma2.v_minus else {
            panic!("v₋ must be finite");
        };
        // w(0) = 0 here, α₁ maps to 0, ν̄₋(α₋) = −2i at the vertex 0.
        assert_eq!(re, &big(0));
        assert_eq!(im, &big(2));
        assert_eq!(seq2.entries[0].width, Some(0));
    }

    #[test]
    fn sigma_double_boundary_split() {
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seq = pivot_sequence(&hex, &hex, 4).unwrap();
        let sigma = combinatorial_data(&seq, &hex, &hex).unwrap();
        let (Some(VParam::Finite { re: rm, im: im_ }), Some(VParam::Finite { re: rp, im: ip_ })) =
            (&sigma.v_minus, &sigma.v_plus)
        else {
            panic!("both defects finite");
        };
        // w(0) + v₋ + v₊ = ν₊(α) − ν̄₋(α): real parts cancel, imaginary
        // parts add to √3 in floating form.
        assert_eq!(&(rm + rp), &big(0));
        assert_eq!(im_, ip_);
        assert!(rm.to_f64().unwrap().abs() <= 1.0);
        assert!(rp.to_f64().unwrap().abs() <= 1.0);
        let total = (im_ + ip_).to_f64().unwrap();
        assert!((total - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn defect_magnitude_bound_holds() {
        // |Re v±| ≤ 1 across interior ends over assorted vertices.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let minus = surd_end(1, -1, 2, 5);
        for _ in 0..40 {
            let x = rng.gen_range(-4.0..4.0);
            let y = rng.gen_range(0.2..3.0);
            let plus = interior(x, y);
            let Ok(seq) = pivot_sequence(&minus, &plus, 8) else {
                continue;
            };
            if seq.alpha_plus.is_none() {
                continue;
            }
            let Ok(sigma) = combinatorial_data(&seq, &minus, &plus) else {
                continue;
            };
            if let Some(VParam::Finite { re, .. }) = &sigma.v_plus {
                let v = re.to_f64().unwrap();
                assert!(v.abs() <= 1.0 + 1e-12, "defect {v} out of range at ({x},{y})");
            }
        }
    }

    #[test]
    fn block_kinds_and_two_path_tau() {
        // Parabolic minus end, boundary-plus block over the vertex 0.
        let minus = rational(1, 0);
        let plus = interior(0.0, 0.5);
        let seq = pivot_sequence(&minus, &plus, 4).unwrap();
        let b0 = block_torus_param(&seq, 0, &minus, &plus).unwrap();
        assert_eq!(b0.kind, BlockKind::Parabolic);
        assert_eq!(b0.tau, TorusParam::InfinityI);
        let b1 = block_torus_param(&seq, 1, &minus, &plus).unwrap();
        assert_eq!(b1.kind, BlockKind::BoundaryPlus);
        let TorusParam::Finite(tau1) = b1.tau else {
            panic!()
        };
        assert!((tau1.re - 0.0).abs() < 1e-12 && (tau1.im - 3.5).abs() < 1e-12);

        // The export path rebuilds the same τ from Σ alone.
        let sigma = combinatorial_data(&seq, &minus, &plus).unwrap();
        let preds = predict(&seq, &minus, &plus, &PivotConfig::default());
        let doc = export_model(&sigma, &seq, &preds).unwrap();
        assert_eq!(doc.blocks.len(), 2);
        assert_eq!(doc.blocks[0].kind, BlockKind::Parabolic);
        assert_eq!(doc.blocks[0].tau, JsonComplex::inf());
        assert!(doc.blocks[0].tube.is_none());
        let JsonComplex::Pair([re, im]) = doc.blocks[1].tau else {
            panic!()
        };
        assert!((re - tau1.re).abs() < 1e-12 && (im - tau1.im).abs() < 1e-12);

        // Double-boundary block: locals and Σ agree as well.
        let hex = interior(0.5, 3.0f64.sqrt() / 2.0);
        let seqh = pivot_sequence(&hex, &hex, 4).unwrap();
        let bh = block_torus_param(&seqh, 0, &hex, &hex).unwrap();
        assert_eq!(bh.kind, BlockKind::DoubleBoundary);
        let TorusParam::Finite(tauh) = bh.tau else {
            panic!()
        };
        assert!(tauh.re.abs() < 1e-12);
        assert!((tauh.im - (3.0f64.sqrt() + 1.0)).abs() < 1e-12);
        let sigmah = combinatorial_data(&seqh, &hex, &hex).unwrap();
        let predsh = predict(&seqh, &hex, &hex, &PivotConfig::default());
        let doch = export_model(&sigmah, &seqh, &predsh).unwrap();
        let JsonComplex::Pair([re, im]) = doch.blocks[0].tau else {
            panic!()
        };
        assert!((re - tauh.re).abs() < 1e-12 && (im - tauh.im).abs() < 1e-12);
        assert!(doch.blocks[0].tube.is_some());

        // Out-of-range index is an error.
        assert!(matches!(
            block_torus_param(&seqh, 5, &hex, &hex),
            Err(ModelError::IndexOutOfRange(5))
        ));
    }

    #[test]
    fn export_round_trip_and_cusps() {
        let minus = surd_end(1, -1, 2, 5);
        let plus = surd_end(1, 1, 2, 5);
        let seq = pivot_sequence(&minus, &plus, 5).unwrap();
        let sigma = combinatorial_data(&seq, &minus, &plus).unwrap();
        let preds = predict(&seq, &minus, &plus, &PivotConfig::default());
        let doc = export_model(&sigma, &seq, &preds).unwrap();
        assert_eq!(doc.version, 1);
        assert_eq!(doc.blocks.len(), seq.entries.len());
        for b in &doc.blocks {
            assert_eq!(b.kind, BlockKind::Internal);
            let JsonComplex::Pair([_, im]) = b.tau else {
                panic!()
            };
            assert_eq!(im, 2.0);
            assert!(b.tube.is_some());
        }
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: ModelDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);

        // A generalized ∞ width becomes a rank-2 cusp record.
        let mut sigma2 = sigma.clone();
        let mid = sigma2.widths.len() / 2;
        sigma2.widths[mid] = Some(Width::Infinite);
        let doc2 = export_model(&sigma2, &seq, &preds).unwrap();
        assert_eq!(doc2.blocks[mid].tau, JsonComplex::inf());
        assert_eq!(doc2.blocks[mid].width, Some(JsonWidth::Inf("inf".into())));
        assert!(doc2.blocks[mid].tube.is_none());
        let text2 = serde_json::to_string(&doc2).unwrap();
        let parsed2: ModelDocument = serde_json::from_str(&text2).unwrap();
        assert_eq!(parsed2, doc2);
    }
}
