//! Blob complexes of combinatorial 1-manifolds.
//!
//! Fields live on finitely many sites; blob endpoints live in the gaps
//! between sites, so a blob boundary never meets a labelled point. On a
//! circle with `N` sites, gap `g` sits clockwise after site `g`. On an
//! interval, gap `i` sits before site `i` and gap `N` closes the interval.

mod config;
mod model;
mod poset;
mod shape;
mod space;

pub use config::{enumerate_arcs, enumerate_configurations, ArcInfo, BlobArc, Configuration, Relation, Supports};
pub use model::{
    contracting_homotopy, disjoint_union_iso, estimate_dims, glue, rotation_action, BlobModel, BlobOptions, Contraction, Generator, Skein,
    DEFAULT_BUDGET,
};
pub use poset::{order_complex, order_complex_homology, splitting_poset, Poset};
pub use shape::{shape, FaceLattice, Polyhedron};
pub use space::{Group, GroupKind, GroupSpace};

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::chain::ChainError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlobError {
    #[error("estimated total dimension {estimate} exceeds the budget of {limit}")]
    Budget { estimate: usize, limit: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("forgetting a blob left the local relations in {0}")]
    IdealViolation(String),
    #[error("no preimage under the boundary for {0}")]
    NoPreimage(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Chain(#[from] ChainError),
    #[error("{0}")]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Circle(usize),
    Interval(usize),
}

impl Component {
    pub fn sites(&self) -> usize {
        match *self {
            Component::Circle(n) | Component::Interval(n) => n,
        }
    }
}

/// Disjoint union of circles and intervals. A marked manifold is a single
/// circle whose site 0 carries the bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Manifold {
    components: Vec<Component>,
    marked: bool,
}

impl Manifold {
    pub fn circle(n: usize) -> Self {
        assert!(n >= 1, "a circle needs a site");
        Manifold { components: vec![Component::Circle(n)], marked: false }
    }

    pub fn marked_circle(n: usize) -> Self {
        assert!(n >= 1, "a circle needs a site");
        Manifold { components: vec![Component::Circle(n)], marked: true }
    }

    pub fn interval(n: usize) -> Self {
        assert!(n >= 1, "an interval needs a site");
        Manifold { components: vec![Component::Interval(n)], marked: false }
    }

    /// Components of `parts` in order; marked parts are rejected.
    pub fn disjoint_union(parts: &[Manifold]) -> Result<Self, BlobError> {
        if parts.iter().any(|p| p.marked) {
            return Err(BlobError::Unsupported("disjoint unions of marked circles".into()));
        }
        Ok(Manifold { components: parts.iter().flat_map(|p| p.components.iter().copied()).collect(), marked: false })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    pub fn site_count(&self) -> usize {
        self.components.iter().map(Component::sites).sum()
    }

    pub fn component_offset(&self, c: usize) -> usize {
        self.components[..c].iter().map(Component::sites).sum()
    }

    pub fn is_single_interval(&self) -> bool {
        matches!(self.components.as_slice(), [Component::Interval(_)])
    }

    pub fn is_single_circle(&self) -> bool {
        matches!(self.components.as_slice(), [Component::Circle(_)])
    }

    /// Dimension of the label space at each site.
    pub fn site_dims(&self, algebra_dim: usize, module_dim: Option<usize>) -> Vec<usize> {
        let mut dims = vec![algebra_dim; self.site_count()];
        if self.marked {
            dims[0] = module_dim.expect("marked manifold needs a module");
        }
        dims
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.marked {
            f.write_str("marked ")?;
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊔ ")?;
            }
            match c {
                Component::Circle(n) => write!(f, "circle({n})")?,
                Component::Interval(n) => write!(f, "interval({n})")?,
            }
        }
        Ok(())
    }
}
