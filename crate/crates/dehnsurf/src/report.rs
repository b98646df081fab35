//! Validation reports shared by triangulations and cubulations.

use serde::Serialize;

use crate::surface::SurfaceDescriptor;

/// A single validation failure, naming the offending cell/face or edge.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Violation {
    /// A face slot with no gluing record (free faces are forbidden).
    NotGlued { cell: usize, face: u8 },
    /// A face slot glued to itself.
    SelfSlot { cell: usize, face: u8 },
    /// Gluing record out of range or with an inconsistent permutation.
    BadRecord { cell: usize, face: u8, reason: String },
    /// The partner record does not invert this one.
    NotInvolutive { cell: usize, face: u8 },
    /// A corner map that is not a symmetry of the square (cubulations only).
    NotDihedral { cell: usize, face: u8 },
    /// An edge orbit closing with a reversal of the edge's endpoints.
    ReversedEdge { cell: usize, edge: String },
    /// The complex is not connected.
    Disconnected { components: usize },
    /// The complex has no cells at all.
    Empty,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotGlued { cell, face } => {
                write!(f, "face ({cell},{face}) is not glued")
            }
            Violation::SelfSlot { cell, face } => {
                write!(f, "face ({cell},{face}) is glued to itself")
            }
            Violation::BadRecord { cell, face, reason } => {
                write!(f, "bad gluing record at ({cell},{face}): {reason}")
            }
            Violation::NotInvolutive { cell, face } => {
                write!(f, "gluing at ({cell},{face}) is not inverted by its partner")
            }
            Violation::NotDihedral { cell, face } => {
                write!(f, "corner map at ({cell},{face}) is not a square symmetry")
            }
            Violation::ReversedEdge { cell, edge } => {
                write!(f, "edge {edge} of cell {cell} is identified with itself reversed")
            }
            Violation::Disconnected { components } => {
                write!(f, "complex is disconnected ({components} components)")
            }
            Violation::Empty => write!(f, "complex has no cells"),
        }
    }
}

/// Cell-class counts of a valid complex. `faces` counts glued pairs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
    /// One representative slot `(cell, local vertex)` per vertex class.
    pub vertex_reps: Vec<(usize, u8)>,
    /// One representative `(cell, local directed edge id)` per edge class.
    pub edge_reps: Vec<(usize, u8)>,
}

impl OrbitReport {
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.cells as i64
    }
}

/// Outcome of validating a complex: orbit data on success, else the
/// violations found.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub orbits: Option<OrbitReport>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The link of a vertex class: a connected closed surface.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VertexLink {
    pub class: usize,
    pub surface: SurfaceDescriptor,
    /// Ideal vertices have non-sphere links (they encode boundary
    /// components); finite vertices have sphere links.
    pub ideal: bool,
}
