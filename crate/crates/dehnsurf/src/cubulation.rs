//! Ideal cubulations as square-face-pairing gluing data.
//!
//! A cubulation has `k` cubes whose vertices are the bitstrings `(b0,b1,b2)`;
//! face `2*axis + side` is `{v : v_axis = side}`. A gluing record maps a face
//! to a target (cube, face) together with a corner map: a permutation of the
//! four canonical (lexicographically ordered) corner positions which must be a
//! symmetry of the square.

use crate::perm::{
    face_axis, face_corners, face_position, is_dihedral, CubeSym, Perm4, CUBE_FACES, CUBE_VERTICES,
};
use crate::report::{OrbitReport, ValidationReport, VertexLink, Violation};
use crate::surface::{PolygonSurface, SideGluing};
use crate::uf::UnionFind;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CubeGluing {
    pub cube: usize,
    pub face: u8,
    pub corner_map: Perm4,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealCubulation {
    gluings: Vec<[Option<CubeGluing>; 6]>,
}

/// Directed cube edge from `v` along `axis` (towards `v ^ (1 << axis)`).
pub fn dir_edge(v: u8, axis: u8) -> u8 {
    v * 3 + axis
}

impl IdealCubulation {
    pub fn new(k: usize) -> IdealCubulation {
        IdealCubulation {
            gluings: vec![[None; 6]; k],
        }
    }

    pub fn k(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, cube: usize, face: u8) -> Option<&CubeGluing> {
        self.gluings[cube][face as usize].as_ref()
    }

    pub fn set_raw(&mut self, cube: usize, face: u8, g: CubeGluing) {
        self.gluings[cube][face as usize] = Some(g);
    }

    pub fn clear_raw(&mut self, cube: usize, face: u8) {
        self.gluings[cube][face as usize] = None;
    }

    /// Glue a face pair, writing both records.
    pub fn glue_pair(&mut self, cube: usize, face: u8, to_cube: usize, to_face: u8, map: Perm4) {
        self.set_raw(
            cube,
            face,
            CubeGluing {
                cube: to_cube,
                face: to_face,
                corner_map: map,
            },
        );
        self.set_raw(
            to_cube,
            to_face,
            CubeGluing {
                cube,
                face,
                corner_map: map.inverse(),
            },
        );
    }

    /// Image of a face vertex under a gluing record on `face`.
    pub fn map_vertex(face: u8, g: &CubeGluing, v: u8) -> u8 {
        face_corners(g.face)[g.corner_map.apply(face_position(face, v)) as usize]
    }

    /// Iterate each glued pair once, from the lexicographically smaller slot.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u8, &CubeGluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(move |(c, fs)| {
            fs.iter().enumerate().filter_map(move |(f, g)| {
                let g = g.as_ref()?;
                if (g.cube, g.face) >= (c, f as u8) {
                    Some((c, f as u8, g))
                } else {
                    None
                }
            })
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let k = self.k();
        let mut violations = Vec::new();
        if k == 0 {
            return ValidationReport {
                violations: vec![Violation::Empty],
                orbits: None,
            };
        }
        for c in 0..k {
            for f in 0..CUBE_FACES {
                match self.gluing(c, f) {
                    None => violations.push(Violation::NotGlued { cell: c, face: f }),
                    Some(g) => {
                        if g.cube >= k || g.face >= CUBE_FACES {
                            violations.push(Violation::BadRecord {
                                cell: c,
                                face: f,
                                reason: "target out of range".into(),
                            });
                            continue;
                        }
                        if !is_dihedral(&g.corner_map) {
                            violations.push(Violation::NotDihedral { cell: c, face: f });
                            continue;
                        }
                        if (g.cube, g.face) == (c, f) {
                            violations.push(Violation::SelfSlot { cell: c, face: f });
                            continue;
                        }
                        match self.gluing(g.cube, g.face) {
                            Some(back)
                                if back.cube == c
                                    && back.face == f
                                    && back.corner_map == g.corner_map.inverse() => {}
                            _ => violations.push(Violation::NotInvolutive { cell: c, face: f }),
                        }
                    }
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport {
                violations,
                orbits: None,
            };
        }

        let edges = self.directed_edge_classes();
        let mut reported = std::collections::BTreeSet::new();
        for c in 0..k {
            for v in 0..CUBE_VERTICES {
                for axis in 0..3u8 {
                    let w = v ^ (1 << axis);
                    if v < w {
                        let fwd = c * 24 + dir_edge(v, axis) as usize;
                        let bwd = c * 24 + dir_edge(w, axis) as usize;
                        if edges.same(fwd, bwd) && reported.insert(edges.find(fwd)) {
                            violations.push(Violation::ReversedEdge {
                                cell: c,
                                edge: format!("{{{v},{w}}}"),
                            });
                        }
                    }
                }
            }
        }

        let mut cells = UnionFind::new(k);
        for c in 0..k {
            for f in 0..CUBE_FACES {
                cells.union(c, self.gluing(c, f).unwrap().cube);
            }
        }
        if cells.components() != 1 {
            violations.push(Violation::Disconnected {
                components: cells.components(),
            });
        }

        if !violations.is_empty() {
            return ValidationReport {
                violations,
                orbits: None,
            };
        }
        ValidationReport {
            violations: Vec::new(),
            orbits: Some(self.orbit_report(&edges)),
        }
    }

    fn directed_edge_classes(&self) -> UnionFind {
        let k = self.k();
        let mut uf = UnionFind::new(k * 24);
        for (c, f, g) in self.pairs() {
            for &v in &face_corners(f) {
                for axis in 0..3u8 {
                    if axis == face_axis(f) {
                        continue;
                    }
                    let w = v ^ (1 << axis);
                    let v2 = Self::map_vertex(f, g, v);
                    let w2 = Self::map_vertex(f, g, w);
                    let axis2 = (v2 ^ w2).trailing_zeros() as u8;
                    uf.union(
                        c * 24 + dir_edge(v, axis) as usize,
                        g.cube * 24 + dir_edge(v2, axis2) as usize,
                    );
                }
            }
        }
        uf
    }

    fn vertex_classes(&self) -> UnionFind {
        let k = self.k();
        let mut uf = UnionFind::new(k * 8);
        for (c, f, g) in self.pairs() {
            for &v in &face_corners(f) {
                uf.union(
                    c * 8 + v as usize,
                    g.cube * 8 + Self::map_vertex(f, g, v) as usize,
                );
            }
        }
        uf
    }

    fn orbit_report(&self, edges: &UnionFind) -> OrbitReport {
        let k = self.k();
        let verts = self.vertex_classes();
        let mut vertex_reps = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for c in 0..k {
            for v in 0..CUBE_VERTICES {
                if seen.insert(verts.find(c * 8 + v as usize)) {
                    vertex_reps.push((c, v));
                }
            }
        }
        let mut edge_reps = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for c in 0..k {
            for v in 0..CUBE_VERTICES {
                for axis in 0..3u8 {
                    let w = v ^ (1 << axis);
                    if v < w {
                        let fwd = edges.find(c * 24 + dir_edge(v, axis) as usize);
                        let bwd = edges.find(c * 24 + dir_edge(w, axis) as usize);
                        if !seen.contains(&fwd) && !seen.contains(&bwd) {
                            seen.insert(fwd);
                            seen.insert(bwd);
                            edge_reps.push((c, dir_edge(v, axis)));
                        }
                    }
                }
            }
        }
        OrbitReport {
            vertices: vertex_reps.len(),
            edges: edge_reps.len(),
            faces: 3 * k,
            cells: k,
            vertex_reps,
            edge_reps,
        }
    }

    pub fn vertex_class_of_slots(&self) -> (Vec<usize>, usize) {
        self.vertex_classes().classes()
    }

    /// Class index of each undirected cube edge, `(cube, dir_edge id) ->
    /// class`, with both directions mapped to the same class. Returns the
    /// per-slot table and the class count (the region count of the dual
    /// surface). Requires a valid complex.
    pub fn edge_class_of_slots(&self) -> (Vec<usize>, usize) {
        let k = self.k();
        let mut uf = self.directed_edge_classes();
        // Merge the two directions of every edge; valid complexes keep them
        // separate, so halving here is exact.
        for c in 0..k {
            for v in 0..CUBE_VERTICES {
                for axis in 0..3u8 {
                    let w = v ^ (1 << axis);
                    uf.union(c * 24 + dir_edge(v, axis) as usize, c * 24 + dir_edge(w, axis) as usize);
                }
            }
        }
        uf.classes()
    }

    /// One connected closed surface per vertex class. Requires a valid complex.
    pub fn vertex_links(&self) -> Vec<VertexLink> {
        let k = self.k();
        // Corner triangle of (c, v): corners tagged by the three axes; the
        // side missing tag `axis` lies on the face 2*axis + v_axis.
        let side_for_axis = |axis: u8| -> usize { ((axis + 1) % 3) as usize };
        let tag_of_side = |s: usize| -> [u8; 2] {
            // side s joins tags s and s+1 (mod 3) in the sorted tag order 0,1,2
            [(s % 3) as u8, ((s + 1) % 3) as u8]
        };
        let mut gluings = Vec::new();
        for (c, f, g) in self.pairs() {
            let axis = face_axis(f);
            for &v in &face_corners(f) {
                let v2 = Self::map_vertex(f, g, v);
                let axis2 = face_axis(g.face);
                let sa = side_for_axis(axis);
                let sb = side_for_axis(axis2);
                // Tag mapping: tag i of (c,v) corresponds to the cube edge
                // (v, v^e_i), carried by the gluing to an edge at v2.
                let map_tag = |i: u8| -> u8 {
                    let w = v ^ (1 << i);
                    let w2 = Self::map_vertex(f, g, w);
                    (v2 ^ w2).trailing_zeros() as u8
                };
                let [a0, a1] = tag_of_side(sa);
                let [b0, b1] = tag_of_side(sb);
                debug_assert!(
                    (map_tag(a0) == b0 && map_tag(a1) == b1)
                        || (map_tag(a0) == b1 && map_tag(a1) == b0)
                );
                gluings.push(SideGluing {
                    poly_a: c * 8 + v as usize,
                    side_a: sa,
                    poly_b: g.cube * 8 + v2 as usize,
                    side_b: sb,
                    parallel: map_tag(a0) == b0,
                });
            }
        }
        let surf = PolygonSurface {
            arity: vec![3; k * 8],
            gluings,
        };
        let (poly_comp, descriptors) = surf
            .components()
            .expect("valid cubulation has fully glued links");
        let (slot_class, class_count) = self.vertex_class_of_slots();
        let mut link_of_class = vec![None; class_count];
        for slot in 0..k * 8 {
            let d = descriptors[poly_comp[slot]];
            match link_of_class[slot_class[slot]] {
                None => link_of_class[slot_class[slot]] = Some(d),
                Some(prev) => debug_assert_eq!(prev, d),
            }
        }
        link_of_class
            .into_iter()
            .enumerate()
            .map(|(class, d)| {
                let surface = d.expect("every vertex class has a link");
                VertexLink {
                    class,
                    ideal: !surface.is_sphere(),
                    surface,
                }
            })
            .collect()
    }

    pub fn euler_identity_holds(&self) -> bool {
        let report = self.validate();
        let Some(orbits) = report.orbits else {
            return false;
        };
        let links = self.vertex_links();
        let link_sum: i64 = links.iter().map(|l| l.surface.euler).sum();
        orbits.euler() == orbits.vertices as i64 - link_sum / 2
    }

    /// The isomorphic cubulation with cubes relabelled by `cell_map` and the
    /// labelling of old cube `c` changed by the cube symmetry `syms[c]`.
    pub fn relabelled(&self, cell_map: &[usize], syms: &[CubeSym]) -> IdealCubulation {
        let k = self.k();
        let mut out = IdealCubulation::new(k);
        for c in 0..k {
            for f in 0..CUBE_FACES {
                if let Some(g) = self.gluing(c, f) {
                    let new_face = syms[c].apply_face(f);
                    let new_target_face = syms[g.cube].apply_face(g.face);
                    // Corner map in the new labelling, computed on vertices.
                    let mut images = [0u8; 4];
                    let inv = syms[c].inverse();
                    for (pos, &nv) in face_corners(new_face).iter().enumerate() {
                        let v = inv.apply_vertex(nv);
                        let v2 = Self::map_vertex(f, g, v);
                        let nv2 = syms[g.cube].apply_vertex(v2);
                        images[pos] = face_position(new_target_face, nv2);
                    }
                    out.set_raw(
                        cell_map[c],
                        new_face,
                        CubeGluing {
                            cube: cell_map[g.cube],
                            face: new_target_face,
                            corner_map: Perm4::new(images).expect("valid corner map"),
                        },
                    );
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unglued_face_rejected() {
        let c = IdealCubulation::new(1);
        let report = c.validate();
        assert_eq!(report.violations.len(), 6);
    }

    #[test]
    fn non_dihedral_corner_map_rejected() {
        let mut c = fixtures::coordinate_plane_s3();
        // (0,1,2,3) -> (1,0,2,3) transposes two adjacent-only corners.
        let bad = Perm4::new([1, 0, 2, 3]).unwrap();
        c.glue_pair(0, 0, 1, 0, bad);
        let report = c.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotDihedral { .. })));
    }

    #[test]
    fn coordinate_plane_fixture_orbits() {
        // Hand enumeration of the octant model: 8 octant vertices, 12
        // quarter-plane edges, 6 half-axis face pairs.
        let c = fixtures::coordinate_plane_s3();
        let report = c.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        let orbits = report.orbits.unwrap();
        assert_eq!(
            (orbits.vertices, orbits.edges, orbits.faces, orbits.cells),
            (8, 12, 6, 2)
        );
        assert_eq!(orbits.euler(), 0);
        assert!(c.euler_identity_holds());
        let links = c.vertex_links();
        assert_eq!(links.len(), 8);
        assert!(links.iter().all(|l| l.surface.is_sphere()));
    }

    #[test]
    fn two_cube_torus_fixture_orbits() {
        let c = fixtures::two_cube_t3();
        let report = c.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        let orbits = report.orbits.unwrap();
        assert_eq!(
            (orbits.vertices, orbits.edges, orbits.faces, orbits.cells),
            (2, 6, 6, 2)
        );
        assert_eq!(orbits.euler(), 0);
        assert!(c.euler_identity_holds());
        let links = c.vertex_links();
        assert_eq!(links.len(), 2);
        assert!(links.iter().all(|l| l.surface.is_sphere() && !l.ideal));
    }

    #[test]
    fn relabelling_preserves_validity_and_orbits() {
        let c = fixtures::coordinate_plane_s3();
        let syms = CubeSym::all();
        let r = c.relabelled(&[1, 0], &[syms[17], syms[42]]);
        let report = r.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        let orbits = report.orbits.unwrap();
        assert_eq!(
            (orbits.vertices, orbits.edges, orbits.faces),
            (8, 12, 6)
        );
    }
}
