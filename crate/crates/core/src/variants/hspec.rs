use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::takeuchi3::Triple;

/// Rule used for triples that have no explicit table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HDefault {
    Zero,
    One,
    /// `1` if `x` is even, else `0`.
    ParityX,
    /// `2xy - 4x + y + z - 1`
    Poly2xy,
    /// A piecewise map bounded by `max(x, y, z)` that admits no total solution.
    BoundedContrived,
    TakY,
    GabrielZ,
    IdX,
    /// `max(x, y, z) - 1`
    MaxMinusOne,
}

impl HDefault {
    pub const ALL: [HDefault; 9] = [
        HDefault::Zero,
        HDefault::One,
        HDefault::ParityX,
        HDefault::Poly2xy,
        HDefault::BoundedContrived,
        HDefault::TakY,
        HDefault::GabrielZ,
        HDefault::IdX,
        HDefault::MaxMinusOne,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            HDefault::Zero => "zero",
            HDefault::One => "one",
            HDefault::ParityX => "parity-x",
            HDefault::Poly2xy => "poly2xy",
            HDefault::BoundedContrived => "bounded-contrived",
            HDefault::TakY => "tak-y",
            HDefault::GabrielZ => "gabriel-z",
            HDefault::IdX => "id-x",
            HDefault::MaxMinusOne => "max-minus-one",
        }
    }

    pub fn eval(&self, x: i64, y: i64, z: i64) -> i64 {
        match self {
            HDefault::Zero => 0,
            HDefault::One => 1,
            HDefault::ParityX => i64::from(x.rem_euclid(2) == 0),
            HDefault::Poly2xy => {
                let (x, y, z) = (x as i128, y as i128, z as i128);
                let v = (2 * x)
                    .saturating_mul(y)
                    .saturating_sub(4 * x)
                    .saturating_add(y + z - 1);
                v.clamp(i64::MIN as i128, i64::MAX as i128) as i64
            }
            HDefault::BoundedContrived => {
                let max = x.max(y).max(z);
                if (x, y, z) == (1, 1, 4) {
                    4
                } else if (x, y, z) == (3, 3, 3) {
                    2
                } else if (x, y) == (2, 3) {
                    1
                } else if max >= 3 {
                    3
                } else {
                    max
                }
            }
            HDefault::TakY => y,
            HDefault::GabrielZ => z,
            HDefault::IdX => x,
            HDefault::MaxMinusOne => x.max(y).max(z).saturating_sub(1),
        }
    }
}

impl fmt::Display for HDefault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown h rule {0:?}; expected one of zero, one, parity-x, poly2xy, bounded-contrived, tak-y, gabriel-z, id-x, max-minus-one")]
pub struct UnknownRule(pub String);

impl FromStr for HDefault {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        HDefault::ALL
            .into_iter()
            .find(|d| d.name() == key)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// An auxiliary function `h(x, y, z)`: a finite table with a default rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSpec {
    entries: BTreeMap<Triple, i64>,
    default: HDefault,
}

impl HSpec {
    pub fn new(default: HDefault) -> Self {
        HSpec {
            entries: BTreeMap::new(),
            default,
        }
    }

    pub fn with_entry(mut self, t: Triple, v: i64) -> Self {
        self.insert(t, v);
        self
    }

    /// Sets an entry, returning the previous one.
    pub fn insert(&mut self, t: Triple, v: i64) -> Option<i64> {
        self.entries.insert(t, v)
    }

    pub fn entries(&self) -> &BTreeMap<Triple, i64> {
        &self.entries
    }

    pub fn default_rule(&self) -> HDefault {
        self.default
    }

    pub fn eval(&self, x: i64, y: i64, z: i64) -> i64 {
        self.entries
            .get(&Triple::new(x, y, z))
            .copied()
            .unwrap_or_else(|| self.default.eval(x, y, z))
    }

    pub fn at(&self, t: Triple) -> i64 {
        self.eval(t.x, t.y, t.z)
    }
}

impl From<HDefault> for HSpec {
    fn from(d: HDefault) -> Self {
        HSpec::new(d)
    }
}

impl fmt::Display for HSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.default)?;
        if !self.entries.is_empty() {
            f.write_str(" [")?;
            for (i, (t, v)) in self.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}={v}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_override_default() {
        let h = HSpec::new(HDefault::Zero).with_entry(Triple::new(0, 0, 0), 1);
        assert_eq!(h.eval(0, 0, 0), 1);
        assert_eq!(h.eval(0, 0, 1), 0);
    }

    #[test]
    fn rule_values() {
        assert_eq!(HDefault::ParityX.eval(0, 0, 0), 1);
        assert_eq!(HDefault::ParityX.eval(-1, 0, 1), 0);
        assert_eq!(HDefault::Poly2xy.eval(1, 1, 4), 2);
        assert_eq!(HDefault::Poly2xy.eval(0, 4, 2), 5);
        assert_eq!(HDefault::Poly2xy.eval(2, 5, 0), 16);
        assert_eq!(HDefault::BoundedContrived.eval(1, 1, 4), 4);
        assert_eq!(HDefault::BoundedContrived.eval(3, 3, 3), 2);
        assert_eq!(HDefault::BoundedContrived.eval(2, 3, 0), 1);
        assert_eq!(HDefault::BoundedContrived.eval(0, 4, 3), 3);
        assert_eq!(HDefault::BoundedContrived.eval(1, 2, 0), 2);
        assert_eq!(HDefault::MaxMinusOne.eval(1, 5, 2), 4);
    }

    #[test]
    fn bounded_rule_respects_max() {
        for t in Triple::cube(-4..=6) {
            assert!(HDefault::BoundedContrived.eval(t.x, t.y, t.z) <= t.x.max(t.y).max(t.z));
        }
    }

    #[test]
    fn poly_saturates_instead_of_wrapping() {
        assert_eq!(HDefault::Poly2xy.eval(i64::MAX, i64::MAX, 0), i64::MAX);
    }

    #[test]
    fn names_roundtrip() {
        for d in HDefault::ALL {
            assert_eq!(d.name().parse::<HDefault>().unwrap(), d);
        }
        assert_eq!("Parity_X".parse::<HDefault>().unwrap(), HDefault::ParityX);
        assert!("nope".parse::<HDefault>().is_err());
    }
}
