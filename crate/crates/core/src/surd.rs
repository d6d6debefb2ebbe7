//! Exact arithmetic for real quadratic surds `(a + b√d)/c` and continued
//! fractions.
//!
//! Surds are kept in a canonical form (`c > 0`, `gcd(a, b, c) = 1`, square
//! factors of `d` folded into `b`, and `d = 0` whenever the value is
//! rational), so structural equality is value equality.  Comparisons,
//! floors and Möbius images are computed exactly: a surd compares to a
//! rational through the sign of `(aq − pc) + bq√d`, which reduces to
//! comparing integer squares.  These are the boundary points the pivot
//! machinery navigates toward, so none of this may go through floating
//! point.
//!
//! Continued fractions `[a0; a1, a2, ...]` come in two flavours: with a
//! declared periodic tail they denote an exact quadratic irrational (the
//! tail is resolved by solving the fixed-point quadratic of its Möbius
//! matrix); without one they are a *prefix* — a truncation that pins the
//! value only to the interval between the last two convergents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors from surd and continued-fraction construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurdError {
    #[error("surd denominator c must be nonzero")]
    ZeroDenominator,
    #[error("surd radicand d must be nonnegative, got {0}")]
    NegativeRadicand(BigInt),
    #[error("continued-fraction coefficient a{index} = {value} must be ≥ 1")]
    BadCoefficient { index: usize, value: i64 },
    #[error("continued-fraction period length {period} exceeds {available} available coefficients")]
    BadPeriod { period: usize, available: usize },
    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },
}

/// A real quadratic surd `(a + b√d)/c` in canonical form.
///
/// `b = 0` (and then `d = 0`) encodes an exact rational.  `√d` is the
/// positive square root; `b` carries the sign of the irrational part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadSurd {
    /// Builds `(a + b√d)/c`, canonicalizing.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, SurdError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(SurdError::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(SurdError::NegativeRadicand(d));
        }
        let mut s = QuadSurd { a, b, c, d };
        s.canonicalize();
        Ok(s)
    }

    /// The surd equal to an exact rational.
    pub fn from_rational(r: &BigRational) -> Self {
        let mut s = QuadSurd {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: BigInt::zero(),
        };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        // Fold square factors of d into b; a perfect-square or 0/1 radicand
        // collapses to a rational.
        if self.b.is_zero() {
            self.d = BigInt::zero();
        } else {
            let (root, square_part) = extract_square(&self.d);
            self.b *= square_part;
            self.d = root;
            if self.d.is_one() {
                self.a += std::mem::take(&mut self.b);
                self.d = BigInt::zero();
            } else if self.d.is_zero() {
                self.b = BigInt::zero();
            }
        }
        if self.c.is_negative() {
            self.a = -std::mem::take(&mut self.a);
            self.b = -std::mem::take(&mut self.b);
            self.c = -std::mem::take(&mut self.c);
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    /// True when the value is rational (no surviving `√d` part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The exact rational value, when there is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    /// Galois conjugate `(a − b√d)/c`.
    pub fn conjugate(&self) -> Self {
        QuadSurd {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        // sign of a + b√d, with c > 0.
        let sa = bigint_sign(&self.a);
        let sb = bigint_sign(&self.b);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == sb || sa == Ordering::Equal {
            return sb;
        }
        // a and b√d pull in opposite directions: compare a² with b²d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &self.d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // (a + b√d)/c vs p/q  ⇔  sign of (aq − pc) + (bq)√d   (c, q > 0)
        let diff = QuadSurd {
            a: &self.a * r.denom() - r.numer() * &self.c,
            b: &self.b * r.denom(),
            c: BigInt::one(),
            d: self.d.clone(),
        };
        diff.sign()
    }

    /// Exact comparison between surds (any radicands).
    pub fn cmp_surd(&self, other: &QuadSurd) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(&r).reverse();
        }
        // Both irrational.  Canonical forms differ, so the values differ
        // (equal quadratic irrationals share a canonical form); refine
        // rational enclosures until they separate.
        let mut bits = 64u32;
        loop {
            let (lo_a, hi_a) = self.bounds(bits);
            let (lo_b, hi_b) = other.bounds(bits);
            if hi_a < lo_b {
                return Ordering::Less;
            }
            if hi_b < lo_a {
                return Ordering::Greater;
            }
            bits *= 2;
            assert!(bits <= 1 << 20, "surd comparison failed to separate");
        }
    }

    /// Rational enclosure `lo ≤ value ≤ hi` with `hi − lo ≤ 2^{1−bits}·|b/c|`-ish.
    fn bounds(&self, bits: u32) -> (BigRational, BigRational) {
        // √d ∈ [s, s+1]/2^bits with s = isqrt(d·4^bits).
        let scaled = &self.d << (2 * bits);
        let s = scaled.sqrt();
        let den = BigInt::one() << bits;
        let lo_root = BigRational::new(s.clone(), den.clone());
        let hi_root = BigRational::new(s + 1, den);
        let (blo, bhi) = if self.b.is_negative() {
            (hi_root, lo_root)
        } else {
            (lo_root, hi_root)
        };
        let a = BigRational::from(self.a.clone());
        let c = BigRational::from(self.c.clone());
        let b = BigRational::from(self.b.clone());
        ((&a + &b * blo) / &c, (&a + &b * bhi) / &c)
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.bounds(bits);
            let fl = lo.floor().to_integer();
            if fl == hi.floor().to_integer() {
                return fl;
            }
            // An irrational value is never an integer, so the enclosure
            // eventually falls inside one unit interval.
            bits *= 2;
            assert!(bits <= 1 << 20, "surd floor failed to converge");
        }
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.ceil().to_integer();
        }
        self.floor() + 1
    }

    /// Accurate `f64` value (via a 128-bit rational enclosure).
    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return rational_to_f64(&r);
        }
        let (lo, hi) = self.bounds(128);
        rational_to_f64(&((lo + hi) / BigRational::from(BigInt::from(2))))
    }

    /// Image `(α·x + β)/(γ·x + δ)` under an integer Möbius map, exactly.
    pub fn moebius(&self, alpha: i64, beta: i64, gamma: i64, delta: i64) -> QuadSurd {
        // x = (a + b√d)/c ⇒ m(x) = (A + B√d)/(C + D√d) with the components
        // below; rationalize by the conjugate.
        let (al, be, ga, de) = (
            BigInt::from(alpha),
            BigInt::from(beta),
            BigInt::from(gamma),
            BigInt::from(delta),
        );
        let upper_a = &al * &self.a + &be * &self.c;
        let upper_b = &al * &self.b;
        let lower_a = &ga * &self.a + &de * &self.c;
        let lower_b = &ga * &self.b;
        // (A + B√d)(C − D√d) = (AC − BDd) + (BC − AD)√d,  |C + D√d|² = C² − D²d
        let num_a = &upper_a * &lower_a - &upper_b * &lower_b * &self.d;
        let num_b = &upper_b * &lower_a - &upper_a * &lower_b;
        let den = &lower_a * &lower_a - &lower_b * &lower_b * &self.d;
        let mut s = QuadSurd {
            a: num_a,
            b: num_b,
            c: den,
            d: self.d.clone(),
        };
        s.canonicalize();
        s
    }

    /// Lazy continued-fraction expansion `[a0; a1, a2, ...]`, exact.
    pub fn cf_digits(&self) -> CfDigits {
        CfDigits {
            state: self.clone(),
        }
    }
}

/// Iterator over exact continued-fraction coefficients of a surd.
///
/// Finite for rationals (standard CF with last coefficient ≥ 2 when
/// possible), infinite (eventually periodic) for irrationals.
pub struct CfDigits {
    state: QuadSurd,
}

impl Iterator for CfDigits {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.state.c.is_zero() {
            // Sentinel left after a finite expansion was fully emitted.
            return None;
        }
        if let Some(r) = self.state.as_rational() {
            if r.denom().is_one() {
                // Terminate after emitting the final integer once.
                let n = r.to_integer();
                self.state.c = BigInt::zero();
                return Some(n);
            }
        }
        let fl = self.state.floor();
        // x ↦ 1/(x − floor): Möbius [[0, 1], [1, −floor]] — but floor may not
        // fit i64, so apply the shift exactly first.
        let mut shifted = self.state.clone();
        shifted.a -= &fl * &shifted.c;
        // reciprocal: (a + b√d)/c ↦ c/(a + b√d) = c(a − b√d)/(a² − b²d)
        let num = &shifted.c * &shifted.a;
        let num_b = -&shifted.c * &shifted.b;
        let den = &shifted.a * &shifted.a - &shifted.b * &shifted.b * &shifted.d;
        let mut inv = QuadSurd {
            a: num,
            b: num_b,
            c: den,
            d: shifted.d.clone(),
        };
        inv.canonicalize();
        self.state = inv;
        Some(fl)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
    }
}

impl FromStr for QuadSurd {
    type Err = SurdError;

    /// Parses `"(a+b*sqrt(d))/c"` (also accepting `a-b*sqrt(d)`).
    fn from_str(input: &str) -> Result<Self, SurdError> {
        let err = || SurdError::Parse {
            kind: "surd",
            input: input.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = s.strip_prefix('(').ok_or_else(err)?;
        // The body may itself contain "sqrt(d)", so split at the last ')'.
        let (body, tail) = rest.rsplit_once(')').ok_or_else(err)?;
        let c_str = tail.strip_prefix('/').ok_or_else(err)?;
        let c: BigInt = c_str.parse().map_err(|_| err())?;
        // body = a±b*sqrt(d); split at the sign that precedes "b*sqrt".
        let idx = body.find("*sqrt(").ok_or_else(err)?;
        let open = idx + "*sqrt(".len() - 1;
        let close = body[open..].find(')').ok_or_else(err)? + open;
        let d: BigInt = body[open + 1..close].parse().map_err(|_| err())?;
        if close + 1 != body.len() {
            return Err(err());
        }
        // Scan backwards from the '*' for the start of the b term.
        let b_start = body[..idx]
            .char_indices()
            .rev()
            .find(|(i, ch)| (*ch == '+' || *ch == '-') && *i > 0)
            .map(|(i, _)| i)
            .ok_or_else(err)?;
        let a: BigInt = body[..b_start].parse().map_err(|_| err())?;
        let b_str = &body[b_start..idx];
        let b: BigInt = if let Some(stripped) = b_str.strip_prefix('+') {
            stripped.parse().map_err(|_| err())?
        } else {
            b_str.parse().map_err(|_| err())?
        };
        QuadSurd::new(a, b, c, d)
    }
}

/// A continued fraction `[a0; a1, a2, ...]`, optionally with a periodic tail.
///
/// `period = Some(k)` declares that the final `k` coefficients repeat
/// forever — an exact quadratic irrational.  Without a period the value is
/// a prefix: an irrational known only to lie strictly between the last two
/// convergents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    a0: i64,
    rest: Vec<i64>,
    period: Option<usize>,
}

impl ContinuedFraction {
    pub fn new(a0: i64, rest: Vec<i64>, period: Option<usize>) -> Result<Self, SurdError> {
        for (i, &a) in rest.iter().enumerate() {
            if a < 1 {
                return Err(SurdError::BadCoefficient {
                    index: i + 1,
                    value: a,
                });
            }
        }
        if let Some(k) = period {
            if k == 0 || k > rest.len() {
                return Err(SurdError::BadPeriod {
                    period: k,
                    available: rest.len(),
                });
            }
        }
        Ok(ContinuedFraction { a0, rest, period })
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.rest
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// Number of known coefficients after `a0`.
    pub fn prefix_len(&self) -> usize {
        self.rest.len()
    }

    /// Exact value when the tail is periodic.
    pub fn to_surd(&self) -> Option<QuadSurd> {
        let k = self.period?;
        let split = self.rest.len() - k;
        // Fixed point of the periodic tail: t = (At + B)/(Ct + D) where
        // [[A,B],[C,D]] is the product of the coefficient matrices [[a,1],[1,0]].
        let (mut ma, mut mb, mut mc, mut md) =
            (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for &a in &self.rest[split..] {
            let (na, nb) = (&ma * a + &mb, ma);
            let (nc, nd) = (&mc * a + &md, mc);
            ma = na;
            mb = nb;
            mc = nc;
            md = nd;
        }
        // C t² + (D − A) t − B = 0, positive root (tail value is > 1).
        let two_c = BigInt::from(2) * &mc;
        let lin = &md - &ma;
        let disc = &lin * &lin + BigInt::from(4) * &mc * &mb;
        let mut t = QuadSurd {
            a: -lin,
            b: BigInt::one(),
            c: two_c,
            d: disc,
        };
        t.canonicalize();
        // Fold the non-repeating prefix back on: value = a0 + 1/(a1 + 1/(...)).
        let mut value = t;
        for &a in self.rest[..split].iter().rev() {
            value = value.moebius(a, 1, 1, 0);
        }
        Some(value.moebius(self.a0, 1, 1, 0))
    }

    /// Convergents `h_i/k_i` including the `a0` term, as exact rationals.
    pub fn convergents(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.rest.len() + 1);
        let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(self.a0));
        let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
        out.push(BigRational::new(h.clone(), k.clone()));
        for &a in &self.rest {
            let h_next = BigInt::from(a) * &h + &h_prev;
            let k_next = BigInt::from(a) * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            out.push(BigRational::new(h.clone(), k.clone()));
        }
        out
    }

    /// Open interval certainly containing the value of a (non-periodic)
    /// prefix, from the last two convergents.
    pub fn prefix_interval(&self) -> (BigRational, BigRational) {
        let conv = self.convergents();
        if conv.len() == 1 {
            // Only a0 known: the tail contributes a fractional part in (0, 1).
            let lo = BigRational::from(BigInt::from(self.a0));
            let hi = BigRational::from(BigInt::from(self.a0 + 1));
            return (lo, hi);
        }
        let last = conv[conv.len() - 1].clone();
        let prev = conv[conv.len() - 2].clone();
        if last < prev {
            (last, prev)
        } else {
            (prev, last)
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.a0)?;
        for (i, a) in self.rest.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")?;
        if let Some(k) = self.period {
            write!(f, " period={k}")?;
        }
        Ok(())
    }
}

impl FromStr for ContinuedFraction {
    type Err = SurdError;

    /// Parses `"[a0;a1,a2,...]"` with optional `"period=k"` suffix.
    fn from_str(input: &str) -> Result<Self, SurdError> {
        let err = || SurdError::Parse {
            kind: "continued fraction",
            input: input.to_string(),
        };
        let s = input.trim();
        let (bracketed, tail) = match s.split_once(']') {
            Some((b, t)) => (b, t.trim()),
            None => return Err(err()),
        };
        let body = bracketed.strip_prefix('[').ok_or_else(err)?;
        let period = if tail.is_empty() {
            None
        } else {
            let k = tail
                .strip_prefix("period=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(err)?;
            Some(k)
        };
        let (a0_str, rest_str) = body.split_once(';').unwrap_or((body, ""));
        let a0: i64 = a0_str.trim().parse().map_err(|_| err())?;
        let mut rest = Vec::new();
        if !rest_str.trim().is_empty() {
            for piece in rest_str.split(',') {
                rest.push(piece.trim().parse().map_err(|_| err())?);
            }
        }
        ContinuedFraction::new(a0, rest, period)
    }
}

/// Splits `d = root · s²` with `root` squarefree up to factors > 10⁶,
/// returning `(root, s)`.  Inputs here have small radicands, so trial
/// division is plenty.
fn extract_square(d: &BigInt) -> (BigInt, BigInt) {
    if d.is_zero() || d.is_one() {
        return (d.clone(), BigInt::one());
    }
    let mut root = d.clone();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &(&p * &p) <= &root && p <= limit {
        let p2 = &p * &p;
        while (&root % &p2).is_zero() {
            root /= &p2;
            square *= &p;
        }
        p += 1;
    }
    (root, square)
}

fn bigint_sign(x: &BigInt) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Faithful rational → f64 conversion (correct to within an ulp for the
/// magnitudes used here).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
