//! Exact angle arithmetic in units of full turns.
//!
//! Every angle in this crate is a rational number of turns (1 turn = one full
//! revolution). Keeping the arithmetic rational makes every winding number and
//! every index-sum identity bit-exact; there is no tolerance policy anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurnError {
    /// The two angles differ by exactly half a turn; both lifts are equally
    /// short and neither is chosen.
    #[error("half-turn ambiguity: angles differ by exactly 1/2")]
    HalfTurnAmbiguity,
    #[error("invalid rational literal {0:?}")]
    BadLiteral(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// An angle measured in full turns, stored as an exact rational.
///
/// `Turn` is a *lifted* (real-valued) angle: `Turn::from((3, 2))` and
/// `Turn::from((1, 2))` are different values even though they name the same
/// direction. Use [`TurnClass`] for directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn(BigRational);

impl Turn {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Turn {
        Turn(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Turn {
        Turn(BigRational::zero())
    }

    pub fn one() -> Turn {
        Turn(BigRational::one())
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Turn {
        Turn(BigRational::from_integer(k.into()))
    }

    pub fn rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Turn {
        Turn(self.0.abs())
    }

    /// Exact integer value, if this turn is a whole number of revolutions.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.0.is_integer() {
            Some(self.0.to_integer())
        } else {
            None
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The fractional part in `[0, 1)`.
    pub fn fract(&self) -> Turn {
        Turn(&self.0 - BigRational::from_integer(self.floor()))
    }

    /// Reduce modulo 1 into `[0, 1)`.
    pub fn class(&self) -> TurnClass {
        TurnClass(self.fract())
    }

    /// |self| < 1/2, strictly.
    pub fn is_short(&self) -> bool {
        self.0.abs() < BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    /// Parse "p/q" or "p" with optional leading minus; rejects q = 0.
    pub fn parse(s: &str) -> Result<Turn, TurnError> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let numer =
            BigInt::from_str(num_s.trim()).map_err(|_| TurnError::BadLiteral(s.to_string()))?;
        let denom =
            BigInt::from_str(den_s.trim()).map_err(|_| TurnError::BadLiteral(s.to_string()))?;
        if denom.is_zero() {
            return Err(TurnError::ZeroDenominator(s.to_string()));
        }
        if denom.is_negative() {
            return Err(TurnError::BadLiteral(s.to_string()));
        }
        Ok(Turn(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({})", self)
    }
}

impl From<(i64, i64)> for Turn {
    fn from((p, q): (i64, i64)) -> Turn {
        Turn::new(p, q)
    }
}

impl From<i64> for Turn {
    fn from(k: i64) -> Turn {
        Turn::from_integer(k)
    }
}

impl Add for Turn {
    type Output = Turn;
    fn add(self, rhs: Turn) -> Turn {
        Turn(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Turn> for &'a Turn {
    type Output = Turn;
    fn add(self, rhs: &Turn) -> Turn {
        Turn(&self.0 + &rhs.0)
    }
}

impl AddAssign for Turn {
    fn add_assign(&mut self, rhs: Turn) {
        self.0 += rhs.0;
    }
}

impl Sub for Turn {
    type Output = Turn;
    fn sub(self, rhs: Turn) -> Turn {
        Turn(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Turn> for &'a Turn {
    type Output = Turn;
    fn sub(self, rhs: &Turn) -> Turn {
        Turn(&self.0 - &rhs.0)
    }
}

impl Neg for Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        Turn(-self.0)
    }
}

impl<'a> Neg for &'a Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        Turn(-&self.0)
    }
}

impl Mul<i64> for &Turn {
    type Output = Turn;
    fn mul(self, rhs: i64) -> Turn {
        Turn(&self.0 * BigRational::from_integer(BigInt::from(rhs)))
    }
}

/// A direction: a turn reduced modulo 1 into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TurnClass(Turn);

impl TurnClass {
    pub fn new(t: impl Into<Turn>) -> TurnClass {
        t.into().class()
    }

    /// The canonical representative in `[0, 1)`.
    pub fn representative(&self) -> &Turn {
        &self.0
    }

    pub fn parse(s: &str) -> Result<TurnClass, TurnError> {
        Ok(Turn::parse(s)?.class())
    }

    pub fn add_turn(&self, t: &Turn) -> TurnClass {
        (&self.0 .0 + &t.0).into_class()
    }

    pub fn neg(&self) -> TurnClass {
        (-&self.0).class()
    }
}

trait IntoClass {
    fn into_class(self) -> TurnClass;
}

impl IntoClass for BigRational {
    fn into_class(self) -> TurnClass {
        Turn(self).class()
    }
}

impl fmt::Display for TurnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for TurnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TurnClass({})", self.0)
    }
}

impl From<Turn> for TurnClass {
    fn from(t: Turn) -> TurnClass {
        t.class()
    }
}

impl From<(i64, i64)> for TurnClass {
    fn from(pq: (i64, i64)) -> TurnClass {
        Turn::from(pq).class()
    }
}

/// The unique `d` with `|d| < 1/2` and `a + d ≡ b (mod 1)`.
///
/// Errors with [`TurnError::HalfTurnAmbiguity`] when `b − a ≡ 1/2 (mod 1)`:
/// both lifts are equally short and silently picking one would corrupt every
/// degree computed downstream.
pub fn shortest_lift(a: &TurnClass, b: &TurnClass) -> Result<Turn, TurnError> {
    let d = (b.representative() - a.representative()).fract();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    if d.0 == half {
        return Err(TurnError::HalfTurnAmbiguity);
    }
    if d.0 > half {
        Ok(Turn(d.0 - BigRational::one()))
    } else {
        Ok(d)
    }
}

/// A cyclically ordered, non-empty sequence of directions sampled along a loop.
///
/// Valid only when every cyclic consecutive pair admits a unique shortest lift
/// (no step is exactly half a turn).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledLoop {
    samples: Vec<TurnClass>,
}

impl SampledLoop {
    pub fn new(samples: Vec<TurnClass>) -> Result<SampledLoop, TurnError> {
        assert!(!samples.is_empty(), "a sampled loop needs at least one sample");
        let lp = SampledLoop { samples };
        // Surface the half-turn failure at construction time.
        for (a, b) in lp.cyclic_pairs() {
            shortest_lift(a, b)?;
        }
        Ok(lp)
    }

    pub fn samples(&self) -> &[TurnClass] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn cyclic_pairs(&self) -> impl Iterator<Item = (&TurnClass, &TurnClass)> {
        let n = self.samples.len();
        (0..n).map(move |i| (&self.samples[i], &self.samples[(i + 1) % n]))
    }
}

/// Total winding of a sampled loop: the sum of shortest lifts over all cyclic
/// consecutive pairs. The sum is always an exact integer.
pub fn winding(lp: &SampledLoop) -> Result<BigInt, TurnError> {
    let mut total = Turn::zero();
    for (a, b) in lp.cyclic_pairs() {
        total += shortest_lift(a, b)?;
    }
    total
        .to_integer()
        .ok_or_else(|| unreachable!("sum of lifts around a loop is an integer by telescoping"))
}
