//! Duality between ideal cubulations and filling Dehn surfaces: read the
//! surface's triple points, singular edges, regions, sheets and complement
//! components off the cubulation.
//!
//! Each cube carries three mid-squares, one perpendicular to each axis; the
//! squares glue across cube faces as induced by the corner maps and assemble
//! into the abstract surface whose image is the dual filling Dehn surface.

use serde::Serialize;

use crate::cubulation::IdealCubulation;
use crate::perm::{face_axis, face_side, face_corners, vertex_bit};
use crate::report::VertexLink;
use crate::surface::{PolygonSurface, SideGluing, SurfaceDescriptor};

/// Combinatorial statistics of the filling Dehn surface dual to a cubulation.
#[derive(Clone, Debug, Serialize)]
pub struct DehnSurfaceStats {
    /// Triple points, one per cube.
    pub triple_points: usize,
    /// Singular edges, one per glued face pair.
    pub singular_edges: usize,
    /// Regions, one per cubulation edge class.
    pub regions: usize,
    /// Components of the abstract closed surface `S`.
    pub sheets: Vec<SurfaceDescriptor>,
    /// Complement components of the punctured manifold, one per cubulation
    /// vertex class; `ideal` entries are boundary collars, the rest are balls.
    pub complement: Vec<VertexLink>,
    /// `chi(Sigma) = T - E + R` of the singular image.
    pub chi_sigma: i64,
    /// `chi(S) = 3T - 2E + R` of the abstract surface.
    pub chi_domain: i64,
}

impl DehnSurfaceStats {
    pub fn complement_balls(&self) -> usize {
        self.complement.iter().filter(|l| !l.ideal).count()
    }
}

/// The two axes of the mid-square perpendicular to `axis`, in increasing
/// order.
fn square_axes(axis: u8) -> (u8, u8) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => unreachable!(),
    }
}

/// Corner index of the mid-square in its cyclic order `(0,0),(1,0),(1,1),(0,1)`
/// over coordinates `(b_j, b_k)` with `j < k` the square's axes.
fn corner_index(bj: u8, bk: u8) -> usize {
    match (bj, bk) {
        (0, 0) => 0,
        (1, 0) => 1,
        (1, 1) => 2,
        (0, 1) => 3,
        _ => unreachable!(),
    }
}

fn corner_coords(idx: usize) -> (u8, u8) {
    [(0, 0), (1, 0), (1, 1), (0, 1)][idx]
}

/// Side of the mid-square perpendicular to `axis` that lies on face
/// `2*face_axis + side` (requires `face_axis != axis`).
fn side_on_face(axis: u8, face: u8) -> usize {
    let (j, k) = square_axes(axis);
    let a = face_axis(face);
    let s = face_side(face);
    if a == j {
        if s == 1 {
            1
        } else {
            3
        }
    } else {
        debug_assert_eq!(a, k);
        if s == 0 {
            0
        } else {
            2
        }
    }
}

/// Corner of mid-square `(cube, axis)` whose position is the midpoint of the
/// cube edge `{w, w ^ e_axis}`.
fn corner_of_edge(axis: u8, w: u8) -> usize {
    let (j, k) = square_axes(axis);
    corner_index(vertex_bit(w, j), vertex_bit(w, k))
}

/// The cube vertex (with coordinate `axis` set to 0) under corner `idx` of
/// mid-square `(cube, axis)` on the side lying on `face`; used to transport
/// corners through a face gluing.
fn edge_base_vertex(axis: u8, idx: usize) -> u8 {
    let (j, k) = square_axes(axis);
    let (bj, bk) = corner_coords(idx);
    (bj << j) | (bk << k)
}

/// Assemble the abstract surface from three mid-squares per cube; polygon
/// `cube * 3 + axis` is the square perpendicular to `axis`.
fn sheet_surface(c: &IdealCubulation) -> PolygonSurface {
    let mut gluings = Vec::with_capacity(6 * c.k());
    for (cube, face, g) in c.pairs() {
        let a = face_axis(face);
        for axis in 0..3u8 {
            if axis == a {
                continue;
            }
            let side_a = side_on_face(axis, face);
            // Transport the two ordered endpoints of the source side.
            let (sa0, sa1) = (side_a, (side_a + 1) % 4);
            let map_corner = |idx: usize| -> (u8, usize) {
                let w = edge_base_vertex(axis, idx);
                // Corners on this side already have the face coordinate.
                debug_assert_eq!(vertex_bit(w, a), face_side(face));
                debug_assert!(face_corners(face).contains(&w));
                let w2 = IdealCubulation::map_vertex(face, g, w);
                let u2 = IdealCubulation::map_vertex(face, g, w ^ (1 << axis));
                let axis2 = (w2 ^ u2).trailing_zeros() as u8;
                (axis2, corner_of_edge(axis2, w2))
            };
            let (axis2, c0) = map_corner(sa0);
            let (axis2b, c1) = map_corner(sa1);
            debug_assert_eq!(axis2, axis2b);
            let side_b = side_on_face(axis2, g.face);
            let (sb0, sb1) = (side_b, (side_b + 1) % 4);
            debug_assert!(
                (c0 == sb0 && c1 == sb1) || (c0 == sb1 && c1 == sb0),
                "side endpoints must transport onto the partner side"
            );
            gluings.push(SideGluing {
                poly_a: cube * 3 + axis as usize,
                side_a,
                poly_b: g.cube * 3 + axis2 as usize,
                side_b,
                parallel: c0 == sb0,
            });
        }
    }
    PolygonSurface {
        arity: vec![4; 3 * c.k()],
        gluings,
    }
}

/// Components of the abstract surface `S` built from the mid-squares.
/// Requires a valid cubulation.
pub fn trace_sheets(c: &IdealCubulation) -> Vec<SurfaceDescriptor> {
    let (_, mut sheets) = sheet_surface(c)
        .components()
        .expect("valid cubulation yields closed sheets");
    sheets.sort();
    sheets
}

/// Full dual-surface statistics of a valid cubulation.
pub fn dual_surface_stats(c: &IdealCubulation) -> DehnSurfaceStats {
    let k = c.k();
    let (_, regions) = c.edge_class_of_slots();
    let sheets = trace_sheets(c);
    let complement = c.vertex_links();
    let t = k as i64;
    let e = 3 * k as i64;
    let r = regions as i64;
    let stats = DehnSurfaceStats {
        triple_points: k,
        singular_edges: 3 * k,
        regions,
        chi_sigma: t - e + r,
        chi_domain: 3 * t - 2 * e + r,
        sheets,
        complement,
    };
    debug_assert_eq!(
        stats.sheets.iter().map(|s| s.euler).sum::<i64>(),
        stats.chi_domain,
        "sheet Euler characteristics must sum to chi(S)"
    );
    stats
}
