//! Built-in example complexes, also shipped as text files under `fixtures/`.

use crate::cubulation::IdealCubulation;
use crate::perm::Perm4;
use crate::surface2d::{DehnLoopDiagram, DiagramEdge, EdgeEnd};
use crate::triangulation::IdealTriangulation;

/// The two-cube cubulation of S^3 dual to the three coordinate planes (with
/// infinity added). Cube 0 sits at the origin, cube 1 at infinity; each face
/// crossing a half-axis is glued to the matching face of the other cube, with
/// octants corresponding, which is the identity corner map.
pub fn coordinate_plane_s3() -> IdealCubulation {
    let mut c = IdealCubulation::new(2);
    for f in 0..6u8 {
        c.glue_pair(0, f, 1, f, Perm4::IDENTITY);
    }
    c
}

/// The two-cube cubulation of the 3-torus: `[0,2] x [0,1] x [0,1]` with
/// translational identifications and unit cubes. All identifications are
/// twist-free, so every corner map is the identity.
pub fn two_cube_t3() -> IdealCubulation {
    let mut c = IdealCubulation::new(2);
    // Axis 0 wraps through both cubes.
    c.glue_pair(0, 1, 1, 0, Perm4::IDENTITY);
    c.glue_pair(1, 1, 0, 0, Perm4::IDENTITY);
    // Axes 1 and 2 wrap within each cube.
    for cube in 0..2 {
        c.glue_pair(cube, 3, cube, 2, Perm4::IDENTITY);
        c.glue_pair(cube, 5, cube, 4, Perm4::IDENTITY);
    }
    c
}

/// The figure-eight diagram: two untwisted circles crossing once, so the
/// image is a bouquet of two circles. Thickens to the once-punctured torus.
pub fn figure_eight_diagram() -> DehnLoopDiagram {
    let end = |slot: u8| EdgeEnd { crossing: 0, slot };
    DehnLoopDiagram {
        crossings: 1,
        edges: vec![
            DiagramEdge { a: end(0), b: end(2), twist: false },
            DiagramEdge { a: end(1), b: end(3), twist: false },
        ],
        free_loops: Vec::new(),
    }
}

/// Two tetrahedra glued by the identity permutation on all four faces.
pub fn double_tet() -> IdealTriangulation {
    let mut t = IdealTriangulation::new(2);
    for f in 0..4u8 {
        t.glue_pair(0, f, 1, f, Perm4::IDENTITY);
    }
    t
}
