//! JSON description of a domain of revolution.
//!
//! ```json
//! { "family": "spheroid", "parameters": { "a": 0.8, "c": 1.0 }, "alpha": -1 }
//! { "family": "torus", "parameters": { "R": 1.0, "r": 0.3 }, "alpha": "dirichlet" }
//! { "family": "sampled", "samples": [[0, -1], [0.7, 0], [0, 1]], "topology": "sphere_like" }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boundary::BoundaryParameter;
use crate::error::{invalid, Result};
use crate::geometry::{RevolutionProfile, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Sphere,
    Spheroid,
    Torus,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub family: FamilyName,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<Topology>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BoundaryParameter>,
}

/// Orientation of a spheroid with equatorial semi-axis `a` and polar `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpheroidKind {
    Prolate,
    Oblate,
    Sphere,
}

pub fn classify_spheroid(a: f64, c: f64) -> SpheroidKind {
    if a < c {
        SpheroidKind::Prolate
    } else if a > c {
        SpheroidKind::Oblate
    } else {
        SpheroidKind::Sphere
    }
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: DomainSpec = serde_json::from_str(text).map_err(|e| invalid(format!("domain spec: {e}")))?;
        spec.profile()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain specs always serialise")
    }

    pub fn sphere(radius: f64) -> Self {
        Self::named(FamilyName::Sphere, &[("radius", radius)])
    }

    pub fn spheroid(a: f64, c: f64) -> Self {
        Self::named(FamilyName::Spheroid, &[("a", a), ("c", c)])
    }

    pub fn torus(major: f64, minor: f64) -> Self {
        Self::named(FamilyName::Torus, &[("R", major), ("r", minor)])
    }

    fn named(family: FamilyName, params: &[(&str, f64)]) -> Self {
        DomainSpec {
            family,
            parameters: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            samples: None,
            topology: None,
            alpha: None,
        }
    }

    pub fn with_alpha(mut self, alpha: BoundaryParameter) -> Self {
        self.alpha = Some(alpha);
        self
    }

    fn param(&self, key: &str) -> Result<f64> {
        let v = *self
            .parameters
            .get(key)
            .ok_or_else(|| invalid(format!("{:?} needs parameter '{key}'", self.family)))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(invalid(format!("parameter '{key}' must be positive, got {v}")));
        }
        Ok(v)
    }

    fn expect_keys(&self, keys: &[&str]) -> Result<()> {
        if let Some(k) = self.parameters.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(invalid(format!("unexpected parameter '{k}' for {:?}", self.family)));
        }
        Ok(())
    }

    pub fn profile(&self) -> Result<RevolutionProfile> {
        if self.samples.is_some() && self.family != FamilyName::Sampled {
            return Err(invalid("samples are only allowed with family \"sampled\""));
        }
        if let Some(a) = self.alpha {
            a.validate()?;
        }
        match self.family {
            FamilyName::Sphere => {
                self.expect_keys(&["radius"])?;
                RevolutionProfile::sphere(self.param("radius")?)
            }
            FamilyName::Spheroid => {
                self.expect_keys(&["a", "c"])?;
                RevolutionProfile::spheroid(self.param("a")?, self.param("c")?)
            }
            FamilyName::Torus => {
                self.expect_keys(&["R", "r"])?;
                RevolutionProfile::torus(self.param("R")?, self.param("r")?)
            }
            FamilyName::Sampled => {
                self.expect_keys(&[])?;
                let pts = self.samples.as_ref().ok_or_else(|| invalid("family \"sampled\" needs \"samples\""))?;
                RevolutionProfile::sampled(pts, self.topology.unwrap_or(Topology::SphereLike))
            }
        }
    }

    pub fn spheroid_kind(&self) -> Option<SpheroidKind> {
        match self.family {
            FamilyName::Spheroid => Some(classify_spheroid(self.param("a").ok()?, self.param("c").ok()?)),
            _ => None,
        }
    }
}
