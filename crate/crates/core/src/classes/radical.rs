use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalar::{format_rational, rational_root, Field, Rational};

/// `radicand^{1/index}` with a rational radicand; compares structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radical {
    pub radicand: Rational,
    pub index: u32,
}

impl Radical {
    pub fn new(radicand: Rational, index: u32) -> Self {
        Radical { radicand, index }
    }

    pub fn exact_value(&self) -> Option<Rational> {
        rational_root(&self.radicand, self.index)
    }

    pub fn to_f64(&self) -> f64 {
        self.radicand.to_f64().powf(1.0 / f64::from(self.index))
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_value() {
            Some(v) => write!(f, "{}", format_rational(&v)),
            None => write!(f, "rad({},{})", format_rational(&self.radicand), self.index),
        }
    }
}

impl Serialize for Radical {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
