//! The four star-omega semirings and the quemiring pair algebra.
//!
//! Values are extended naturals. Each [`Semiring`] interprets them with its
//! own operations; the carrier check is [`Semiring::contains`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An extended natural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(u64),
    Inf,
}

impl Ext {
    pub const ZERO: Ext = Ext::Fin(0);
    pub const ONE: Ext = Ext::Fin(1);

    fn plus(self, other: Ext) -> Ext {
        match (self, other) {
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Inf, _) | (_, Ext::Inf) => Ext::Inf,
            (Ext::Fin(a), Ext::Fin(b)) => a.checked_add(b).map_or(Ext::Inf, Ext::Fin),
        }
    }

    fn times(self, other: Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(0), _) | (_, Ext::Fin(0)) => Ext::Fin(0),
            (Ext::Inf, _) | (_, Ext::Inf) => Ext::Inf,
            (Ext::Fin(a), Ext::Fin(b)) => a.checked_mul(b).map_or(Ext::Inf, Ext::Fin),
            _ => unreachable!("negative infinity is not a counting value"),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Fin(n) => write!(f, "{n}"),
            Ext::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Ext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ext> {
        match s.trim() {
            "inf" | "∞" => Ok(Ext::Inf),
            "-inf" | "-∞" | "−∞" => Ok(Ext::NegInf),
            t => t
                .parse::<u64>()
                .map(Ext::Fin)
                .map_err(|_| Error::InvalidValue(t.to_string())),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::Fin(n) => s.serialize_u64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ext, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Ext::Fin(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// One of the supported star-omega semirings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiring {
    /// `⟨{0,1}, ∨, ∧, 0, 1⟩` with infinite products as infima.
    Boolean,
    /// `⟨ℕ∞, min, +, ∞, 0⟩`.
    Tropical,
    /// `⟨ℕ ∪ {−∞, ∞}, max, +, −∞, 0⟩`.
    Arctic,
    /// `⟨ℕ∞, +, ·, 0, 1⟩`.
    Counting,
}

impl Semiring {
    pub const ALL: [Semiring; 4] = [
        Semiring::Boolean,
        Semiring::Tropical,
        Semiring::Arctic,
        Semiring::Counting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semiring::Boolean => "boolean",
            Semiring::Tropical => "tropical",
            Semiring::Arctic => "arctic",
            Semiring::Counting => "counting",
        }
    }

    pub fn zero(self) -> Ext {
        match self {
            Semiring::Boolean | Semiring::Counting => Ext::ZERO,
            Semiring::Tropical => Ext::Inf,
            Semiring::Arctic => Ext::NegInf,
        }
    }

    pub fn one(self) -> Ext {
        match self {
            Semiring::Boolean | Semiring::Counting => Ext::ONE,
            Semiring::Tropical | Semiring::Arctic => Ext::ZERO,
        }
    }

    pub fn is_zero(self, a: Ext) -> bool {
        a == self.zero()
    }

    pub fn is_one(self, a: Ext) -> bool {
        a == self.one()
    }

    pub fn is_idempotent(self) -> bool {
        self != Semiring::Counting
    }

    /// The largest element in the natural order, reached by divergent sums.
    pub fn top(self) -> Ext {
        match self {
            Semiring::Boolean => Ext::ONE,
            Semiring::Tropical => Ext::ZERO,
            Semiring::Arctic | Semiring::Counting => Ext::Inf,
        }
    }

    pub fn contains(self, a: Ext) -> bool {
        match (self, a) {
            (Semiring::Boolean, Ext::Fin(n)) => n <= 1,
            (Semiring::Boolean, _) => false,
            (Semiring::Arctic, _) => true,
            (_, Ext::NegInf) => false,
            _ => true,
        }
    }

    pub fn check(self, a: Ext) -> Result<Ext> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::InvalidValue(format!("{a} is not a {} value", self.name())))
        }
    }

    pub fn parse_value(self, s: &str) -> Result<Ext> {
        self.check(s.parse()?)
    }

    pub fn add(self, a: Ext, b: Ext) -> Ext {
        match self {
            Semiring::Boolean | Semiring::Arctic => a.max(b),
            Semiring::Tropical => a.min(b),
            Semiring::Counting => a.plus(b),
        }
    }

    pub fn mul(self, a: Ext, b: Ext) -> Ext {
        match self {
            Semiring::Boolean => a.min(b),
            Semiring::Tropical | Semiring::Arctic => a.plus(b),
            Semiring::Counting => a.times(b),
        }
    }

    pub fn add_assign(self, acc: &mut Ext, b: Ext) {
        *acc = self.add(*acc, b);
    }

    pub fn star(self, a: Ext) -> Ext {
        match self {
            Semiring::Boolean => Ext::ONE,
            Semiring::Tropical => Ext::ZERO,
            Semiring::Arctic => match a {
                Ext::NegInf | Ext::Fin(0) => Ext::ZERO,
                _ => Ext::Inf,
            },
            Semiring::Counting => match a {
                Ext::Fin(0) => Ext::ONE,
                _ => Ext::Inf,
            },
        }
    }

    pub fn omega(self, a: Ext) -> Ext {
        match self {
            Semiring::Boolean => a,
            Semiring::Tropical => match a {
                Ext::Fin(0) => Ext::ZERO,
                _ => Ext::Inf,
            },
            Semiring::Arctic => match a {
                Ext::NegInf => Ext::NegInf,
                Ext::Fin(0) => Ext::ZERO,
                _ => Ext::Inf,
            },
            Semiring::Counting => match a {
                Ext::Fin(n) if n <= 1 => a,
                _ => Ext::Inf,
            },
        }
    }

    /// Natural order: `a ≤ b` iff `a + b = b`.
    pub fn leq(self, a: Ext, b: Ext) -> bool {
        match self {
            Semiring::Boolean | Semiring::Arctic | Semiring::Counting => a <= b,
            Semiring::Tropical => a >= b,
        }
    }

    pub fn sum<I: IntoIterator<Item = Ext>>(self, it: I) -> Ext {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Ext>>(self, it: I) -> Ext {
        it.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    /// A small grid of carrier values used by exhaustive law checks.
    pub fn grid(self) -> Vec<Ext> {
        match self {
            Semiring::Boolean => vec![Ext::ZERO, Ext::ONE],
            Semiring::Arctic => vec![
                Ext::NegInf,
                Ext::Fin(0),
                Ext::Fin(1),
                Ext::Fin(2),
                Ext::Fin(3),
                Ext::Inf,
            ],
            _ => vec![Ext::Fin(0), Ext::Fin(1), Ext::Fin(2), Ext::Fin(3), Ext::Inf],
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Semiring> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boolean" | "bool" => Ok(Semiring::Boolean),
            "tropical" => Ok(Semiring::Tropical),
            "arctic" => Ok(Semiring::Arctic),
            "counting" | "natural" | "nat" => Ok(Semiring::Counting),
            other => Err(Error::UnknownSemiring(other.to_string())),
        }
    }
}

/// A value tagged with the semiring it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemiringValue {
    pub semiring: Semiring,
    pub value: Ext,
}

impl SemiringValue {
    pub fn new(semiring: Semiring, value: Ext) -> Result<SemiringValue> {
        semiring.check(value)?;
        Ok(SemiringValue { semiring, value })
    }

    pub fn star(self) -> SemiringValue {
        SemiringValue { value: self.semiring.star(self.value), ..self }
    }

    pub fn omega(self) -> SemiringValue {
        SemiringValue { value: self.semiring.omega(self.value), ..self }
    }
}

impl fmt::Display for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// N-ary sum of tagged values; the empty sum is `zero` of `semiring`.
pub fn sum_family(semiring: Semiring, values: &[SemiringValue]) -> Result<SemiringValue> {
    let mut acc = semiring.zero();
    for v in values {
        if v.semiring != semiring {
            return Err(Error::MixedSemirings(semiring, v.semiring));
        }
        acc = semiring.add(acc, v.value);
    }
    Ok(SemiringValue { semiring, value: acc })
}

/// An element `(s, v)` of the quemiring over a scalar semiring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuemiringValue {
    pub finite: Ext,
    pub omega: Ext,
}

impl QuemiringValue {
    pub fn zero(sr: Semiring) -> Self {
        QuemiringValue { finite: sr.zero(), omega: sr.zero() }
    }

    pub fn one(sr: Semiring) -> Self {
        QuemiringValue { finite: sr.one(), omega: sr.zero() }
    }

    pub fn add(self, sr: Semiring, o: Self) -> Self {
        QuemiringValue { finite: sr.add(self.finite, o.finite), omega: sr.add(self.omega, o.omega) }
    }

    pub fn mul(self, sr: Semiring, o: Self) -> Self {
        QuemiringValue {
            finite: sr.mul(self.finite, o.finite),
            omega: sr.add(self.omega, sr.mul(self.finite, o.omega)),
        }
    }

    /// `(s, v)^⊗ = (s*, s^ω + s* v)`.
    pub fn otimes(self, sr: Semiring) -> Self {
        let s = sr.star(self.finite);
        QuemiringValue { finite: s, omega: sr.add(sr.omega(self.finite), sr.mul(s, self.omega)) }
    }
}
