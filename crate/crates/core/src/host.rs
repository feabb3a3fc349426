//! Metadata describing the (conceptually infinite) graph a truncation was cut from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{ratio, FaceDegree, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Regular tessellation with vertex degree `p` and face degree `q`.
    Gpq,
    /// Regular tree of degree `p`; every face is an infinigon.
    Tree,
    /// Trihexagonal tiling (triangles and hexagons, two of each at every vertex).
    Trihex,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gpq => "gpq",
            Family::Tree => "tree",
            Family::Trihex => "trihex",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureRegime {
    Spherical,
    Euclidean,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostDescriptor {
    pub family: Family,
    /// Vertex degree (regular families) or an upper bound on it.
    pub p: Option<u32>,
    /// Face degree (regular families) or an upper bound on finite faces.
    /// `None` means no bound is known.
    pub q: Option<FaceDegree>,
    pub vertex_transitive: bool,
}

impl HostDescriptor {
    pub fn gpq(p: u32, q: u32) -> Self {
        HostDescriptor {
            family: Family::Gpq,
            p: Some(p),
            q: Some(FaceDegree::Finite(q)),
            vertex_transitive: true,
        }
    }

    pub fn tree(p: u32) -> Self {
        HostDescriptor {
            family: Family::Tree,
            p: Some(p),
            q: Some(FaceDegree::Infinite),
            vertex_transitive: true,
        }
    }

    pub fn trihex() -> Self {
        HostDescriptor {
            family: Family::Trihex,
            p: Some(4),
            q: Some(FaceDegree::Finite(6)),
            vertex_transitive: true,
        }
    }

    pub fn custom(p: Option<u32>, q: Option<FaceDegree>) -> Self {
        HostDescriptor {
            family: Family::Custom,
            p,
            q,
            vertex_transitive: false,
        }
    }

    /// Degree every vertex of the host is known to have, if the family fixes it.
    pub fn regular_degree(&self) -> Option<u32> {
        match self.family {
            Family::Gpq | Family::Tree | Family::Trihex => self.p,
            Family::Custom => None,
        }
    }

    /// True if every host face is a finite polygon.
    pub fn faces_are_finite(&self) -> bool {
        matches!(self.family, Family::Gpq | Family::Trihex)
    }

    /// Sign of `1/p + 1/q - 1/2` for the regular families.
    pub fn curvature_regime(&self) -> Option<CurvatureRegime> {
        match self.family {
            Family::Gpq => {
                let (p, q) = (self.p?, self.q?.finite()?);
                let s = ratio(1, p as i64) + ratio(1, q as i64) - ratio(1, 2);
                Some(regime_of(s))
            }
            Family::Tree => Some(CurvatureRegime::Hyperbolic),
            Family::Trihex => Some(CurvatureRegime::Euclidean),
            Family::Custom => None,
        }
    }
}

fn regime_of(s: Rational) -> CurvatureRegime {
    if s > Rational::from_integer(0) {
        CurvatureRegime::Spherical
    } else if s == Rational::from_integer(0) {
        CurvatureRegime::Euclidean
    } else {
        CurvatureRegime::Hyperbolic
    }
}
