use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::Rational;

/// An exact rational, or a float with an error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx { value: f64, error: f64 },
}

fn rounding(x: f64) -> f64 {
    4.0 * f64::EPSILON * x.abs()
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(Rational::from_integer(n.into()))
    }

    pub fn value(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx { value, .. } => *value,
        }
    }

    pub fn error(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx { error, .. } => *error,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx { .. } => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.is_zero())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => {
                let value = self.value() + other.value();
                Scalar::Approx {
                    value,
                    error: self.error() + other.error() + rounding(value),
                }
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx { value, error } => Scalar::Approx {
                value: -value,
                error: *error,
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => {
                if self.is_exact_zero() || other.is_exact_zero() {
                    return Scalar::zero();
                }
                if matches!(self, Scalar::Exact(r) if r.is_one()) {
                    return other.clone();
                }
                if matches!(other, Scalar::Exact(r) if r.is_one()) {
                    return self.clone();
                }
                let (a, b) = (self.value(), other.value());
                let (ea, eb) = (self.error(), other.error());
                let value = a * b;
                Scalar::Approx {
                    value,
                    error: a.abs() * eb + b.abs() * ea + ea * eb + rounding(value),
                }
            }
        }
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_int(n))
    }

    pub fn abs_value(&self) -> f64 {
        self.value().abs()
    }

    pub fn to_json(&self) -> ScalarJson {
        match self {
            Scalar::Exact(r) => ScalarJson {
                exact: Some(r.to_string()),
                value: self.value(),
                error: 0.0,
            },
            Scalar::Approx { value, error } => ScalarJson {
                exact: None,
                value: *value,
                error: *error,
            },
        }
    }
}

/// Serialized form of a [`Scalar`].
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ScalarJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub value: f64,
    pub error: f64,
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx { value, error } => write!(f, "{value:.12} ± {error:.1e}"),
        }
    }
}
