use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error};

/// Boundary condition on the outer boundary: `∂u/∂ν + α u = 0`, or the
/// Dirichlet limit `α = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub enum BoundaryParameter {
    Finite(f64),
    Dirichlet,
}

/// Wire form: a number, or the string `"dirichlet"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Number(f64),
    Word(String),
}

impl TryFrom<Repr> for BoundaryParameter {
    type Error = Error;

    fn try_from(r: Repr) -> Result<Self, Error> {
        match r {
            Repr::Number(a) => Ok(BoundaryParameter::Finite(a)),
            Repr::Word(w) => w.parse(),
        }
    }
}

impl From<BoundaryParameter> for Repr {
    fn from(b: BoundaryParameter) -> Self {
        match b {
            BoundaryParameter::Finite(a) => Repr::Number(a),
            BoundaryParameter::Dirichlet => Repr::Word("dirichlet".into()),
        }
    }
}

impl BoundaryParameter {
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            BoundaryParameter::Finite(a) => Some(a),
            BoundaryParameter::Dirichlet => None,
        }
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(self, BoundaryParameter::Dirichlet)
    }

    /// `α ≤ 0`, the regime of the ball-maximality results.
    pub fn is_nonpositive(&self) -> bool {
        matches!(*self, BoundaryParameter::Finite(a) if a <= 0.0)
    }

    /// Parameter after scaling lengths by `c`: `α ↦ c·α`. Dirichlet is scale invariant.
    pub fn scaled(&self, c: f64) -> Self {
        match *self {
            BoundaryParameter::Finite(a) => BoundaryParameter::Finite(c * a),
            BoundaryParameter::Dirichlet => BoundaryParameter::Dirichlet,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), Error> {
        match *self {
            BoundaryParameter::Finite(a) if !a.is_finite() => {
                Err(invalid(format!("alpha must be finite, got {a}")))
            }
            _ => Ok(()),
        }
    }
}

impl From<f64> for BoundaryParameter {
    fn from(a: f64) -> Self {
        BoundaryParameter::Finite(a)
    }
}

impl fmt::Display for BoundaryParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryParameter::Finite(a) => write!(f, "{a}"),
            BoundaryParameter::Dirichlet => f.write_str("dirichlet"),
        }
    }
}

impl FromStr for BoundaryParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("dirichlet") || t.eq_ignore_ascii_case("inf") {
            return Ok(BoundaryParameter::Dirichlet);
        }
        let a: f64 = t
            .parse()
            .map_err(|_| invalid(format!("cannot parse boundary parameter '{s}'")))?;
        let p = BoundaryParameter::Finite(a);
        p.validate()?;
        Ok(p)
    }
}
