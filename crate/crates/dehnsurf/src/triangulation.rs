//! Ideal triangulations as face-pairing gluing data.
//!
//! A triangulation has `n` tetrahedra with vertex labels `0..4`; face `f` of a
//! tetrahedron is the face opposite vertex `f`. A gluing record maps a face to
//! a target (tetrahedron, face) with a permutation of the four vertex labels
//! sending `f` to the target face label.

use crate::perm::Perm4;
use crate::report::{OrbitReport, ValidationReport, VertexLink, Violation};
use crate::surface::{PolygonSurface, SideGluing};
use crate::uf::UnionFind;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TetGluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealTriangulation {
    gluings: Vec<[Option<TetGluing>; 4]>,
}

/// Directed edge ids within a tetrahedron: edge from vertex `a` to `b`.
fn dir_edge(a: u8, b: u8) -> u8 {
    debug_assert!(a != b);
    a * 4 + b
}

impl IdealTriangulation {
    pub fn new(n: usize) -> IdealTriangulation {
        IdealTriangulation {
            gluings: vec![[None; 4]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<&TetGluing> {
        self.gluings[tet][face as usize].as_ref()
    }

    /// Set a single record without touching the partner slot.
    pub fn set_raw(&mut self, tet: usize, face: u8, g: TetGluing) {
        self.gluings[tet][face as usize] = Some(g);
    }

    /// Remove a single record without touching the partner slot.
    pub fn clear_raw(&mut self, tet: usize, face: u8) {
        self.gluings[tet][face as usize] = None;
    }

    /// Glue a face pair, writing both records (the partner gets the inverse
    /// permutation). `perm` must send `face` to `to_face`.
    pub fn glue_pair(&mut self, tet: usize, face: u8, to_tet: usize, to_face: u8, perm: Perm4) {
        assert_eq!(perm.apply(face), to_face, "permutation must map face to target face");
        self.set_raw(
            tet,
            face,
            TetGluing {
                tet: to_tet,
                face: to_face,
                perm,
            },
        );
        self.set_raw(
            to_tet,
            to_face,
            TetGluing {
                tet,
                face,
                perm: perm.inverse(),
            },
        );
    }

    /// Iterate each glued pair once, from the lexicographically smaller slot.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u8, &TetGluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(move |(t, fs)| {
            fs.iter().enumerate().filter_map(move |(f, g)| {
                let g = g.as_ref()?;
                if (g.tet, g.face) >= (t, f as u8) {
                    Some((t, f as u8, g))
                } else {
                    None
                }
            })
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n();
        let mut violations = Vec::new();
        if n == 0 {
            return ValidationReport {
                violations: vec![Violation::Empty],
                orbits: None,
            };
        }
        for t in 0..n {
            for f in 0..4u8 {
                match self.gluing(t, f) {
                    None => violations.push(Violation::NotGlued { cell: t, face: f }),
                    Some(g) => {
                        if g.tet >= n || g.face > 3 {
                            violations.push(Violation::BadRecord {
                                cell: t,
                                face: f,
                                reason: "target out of range".into(),
                            });
                            continue;
                        }
                        if g.perm.apply(f) != g.face {
                            violations.push(Violation::BadRecord {
                                cell: t,
                                face: f,
                                reason: "permutation does not map face to target face".into(),
                            });
                            continue;
                        }
                        if (g.tet, g.face) == (t, f) {
                            violations.push(Violation::SelfSlot { cell: t, face: f });
                            continue;
                        }
                        match self.gluing(g.tet, g.face) {
                            Some(back)
                                if back.tet == t && back.face == f && back.perm == g.perm.inverse() => {}
                            _ => violations.push(Violation::NotInvolutive { cell: t, face: f }),
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

        // Edge orbits over directed edges; a reversal is a validation error.
        // Report one representative incidence per offending orbit.
        let edges = self.directed_edge_classes();
        let mut reported = std::collections::BTreeSet::new();
        for t in 0..n {
            for a in 0..4u8 {
                for b in 0..4u8 {
                    if a < b {
                        let fwd = t * 16 + dir_edge(a, b) as usize;
                        let bwd = t * 16 + dir_edge(b, a) as usize;
                        if edges.same(fwd, bwd) && reported.insert(edges.find(fwd)) {
                            violations.push(Violation::ReversedEdge {
                                cell: t,
                                edge: format!("{{{a},{b}}}"),
                            });
                        }
                    }
                }
            }
        }

        let mut cells = UnionFind::new(n);
        for t in 0..n {
            for f in 0..4u8 {
                cells.union(t, self.gluing(t, f).unwrap().tet);
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
        let n = self.n();
        let mut uf = UnionFind::new(n * 16);
        for (t, f, g) in self.pairs() {
            for a in 0..4u8 {
                for b in 0..4u8 {
                    if a != b && a != f && b != f {
                        uf.union(
                            t * 16 + dir_edge(a, b) as usize,
                            g.tet * 16 + dir_edge(g.perm.apply(a), g.perm.apply(b)) as usize,
                        );
                    }
                }
            }
        }
        uf
    }

    fn vertex_classes(&self) -> UnionFind {
        let n = self.n();
        let mut uf = UnionFind::new(n * 4);
        for (t, f, g) in self.pairs() {
            for v in 0..4u8 {
                if v != f {
                    uf.union(t * 4 + v as usize, g.tet * 4 + g.perm.apply(v) as usize);
                }
            }
        }
        uf
    }

    fn orbit_report(&self, edges: &UnionFind) -> OrbitReport {
        let n = self.n();
        let verts = self.vertex_classes();
        let mut vertex_reps = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for t in 0..n {
            for v in 0..4u8 {
                if seen.insert(verts.find(t * 4 + v as usize)) {
                    vertex_reps.push((t, v));
                }
            }
        }
        let mut edge_reps = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for t in 0..n {
            for a in 0..4u8 {
                for b in 0..4u8 {
                    if a < b {
                        let fwd = edges.find(t * 16 + dir_edge(a, b) as usize);
                        let bwd = edges.find(t * 16 + dir_edge(b, a) as usize);
                        if !seen.contains(&fwd) && !seen.contains(&bwd) {
                            seen.insert(fwd);
                            seen.insert(bwd);
                            edge_reps.push((t, dir_edge(a, b)));
                        }
                    }
                }
            }
        }
        OrbitReport {
            vertices: vertex_reps.len(),
            edges: edge_reps.len(),
            faces: 2 * n,
            cells: n,
            vertex_reps,
            edge_reps,
        }
    }

    /// Per-slot vertex class index, `slot = tet * 4 + vertex`.
    pub fn vertex_class_of_slots(&self) -> (Vec<usize>, usize) {
        self.vertex_classes().classes()
    }

    /// One connected closed surface per vertex class, assembled from corner
    /// triangles glued across the face pairings. Requires a valid complex.
    pub fn vertex_links(&self) -> Vec<VertexLink> {
        let n = self.n();
        // Corner triangle of (t, v): corners tagged by the sorted other
        // vertices; side s joins tags s and s+1 and lies on the face labelled
        // by the remaining tag.
        let tags = |v: u8| -> [u8; 3] {
            let mut out = [0u8; 3];
            let mut i = 0;
            for w in 0..4u8 {
                if w != v {
                    out[i] = w;
                    i += 1;
                }
            }
            out
        };
        let side_for_face = |v: u8, f: u8| -> usize {
            let t = tags(v);
            (0..3).find(|&s| t[(s + 2) % 3] == f).unwrap()
        };
        let mut gluings = Vec::new();
        for (t, f, g) in self.pairs() {
            for v in 0..4u8 {
                if v == f {
                    continue;
                }
                let v2 = g.perm.apply(v);
                let sa = side_for_face(v, f);
                let sb = side_for_face(v2, g.face);
                let ta = tags(v);
                let tb = tags(v2);
                let (a0, a1) = (ta[sa], ta[(sa + 1) % 3]);
                let (b0, b1) = (tb[sb], tb[(sb + 1) % 3]);
                debug_assert!(
                    (g.perm.apply(a0) == b0 && g.perm.apply(a1) == b1)
                        || (g.perm.apply(a0) == b1 && g.perm.apply(a1) == b0)
                );
                gluings.push(SideGluing {
                    poly_a: t * 4 + v as usize,
                    side_a: sa,
                    poly_b: g.tet * 4 + v2 as usize,
                    side_b: sb,
                    parallel: g.perm.apply(a0) == b0,
                });
            }
        }
        let surf = PolygonSurface {
            arity: vec![3; n * 4],
            gluings,
        };
        let (poly_comp, descriptors) = surf
            .components()
            .expect("valid triangulation has fully glued links");
        // Link components coincide with vertex classes by construction.
        let (slot_class, class_count) = self.vertex_class_of_slots();
        let mut link_of_class = vec![None; class_count];
        for slot in 0..n * 4 {
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

    /// Checks `V - E + F - cells == V - sum(chi(link))/2` on a valid complex.
    pub fn euler_identity_holds(&self) -> bool {
        let report = self.validate();
        let Some(orbits) = report.orbits else {
            return false;
        };
        let links = self.vertex_links();
        let link_sum: i64 = links.iter().map(|l| l.surface.euler).sum();
        orbits.euler() == orbits.vertices as i64 - link_sum / 2
    }

    /// The isomorphic triangulation with cells relabelled by `cell_map`
    /// (new index of old cell `c` is `cell_map[c]`) and vertex labels of old
    /// cell `c` mapped by `syms[c]`.
    pub fn relabelled(&self, cell_map: &[usize], syms: &[Perm4]) -> IdealTriangulation {
        let n = self.n();
        let mut out = IdealTriangulation::new(n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = self.gluing(t, f) {
                    let perm = syms[g.tet].compose(&g.perm).compose(&syms[t].inverse());
                    out.set_raw(
                        cell_map[t],
                        syms[t].apply(f),
                        TetGluing {
                            tet: cell_map[g.tet],
                            face: syms[g.tet].apply(g.face),
                            perm,
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

    /// Two tetrahedra glued by the identity permutation on all four faces.
    pub fn double_tet() -> IdealTriangulation {
        let mut t = IdealTriangulation::new(2);
        for f in 0..4u8 {
            t.glue_pair(0, f, 1, f, Perm4::IDENTITY);
        }
        t
    }

    #[test]
    fn unglued_faces_rejected() {
        let t = IdealTriangulation::new(1);
        let report = t.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::NotGlued { .. })));
        assert_eq!(report.violations.len(), 4);
    }

    #[test]
    fn double_tet_orbits() {
        // Hand orbit tracing: vertices pair up (0,v)~(1,v) giving 4 classes;
        // each of the 6 edges {a,b} appears once per tetrahedron with
        // valence-2 orbits; 4 face pairs.
        let t = double_tet();
        let report = t.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        let orbits = report.orbits.unwrap();
        assert_eq!(orbits.vertices, 4);
        assert_eq!(orbits.edges, 6);
        assert_eq!(orbits.faces, 4);
        assert_eq!(orbits.euler(), 0);
        assert!(t.euler_identity_holds());
        let links = t.vertex_links();
        assert_eq!(links.len(), 4);
        assert!(links.iter().all(|l| l.surface.is_sphere() && !l.ideal));
    }

    #[test]
    fn non_involutive_rejected() {
        let mut t = double_tet();
        // Overwrite (0,0) with a record its target does not invert.
        let perm = Perm4::new([0, 2, 1, 3]).unwrap();
        t.set_raw(
            0,
            0,
            TetGluing {
                tet: 1,
                face: 0,
                perm,
            },
        );
        let report = t.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotInvolutive { .. })));
    }

    #[test]
    fn reversed_edge_rejected() {
        // One tetrahedron: glue face 0 to face 1 with a permutation swapping
        // the endpoints 2,3 of the shared edge, and faces 2,3 arbitrarily.
        let mut t = IdealTriangulation::new(1);
        t.glue_pair(0, 0, 0, 1, Perm4::new([1, 0, 3, 2]).unwrap());
        t.glue_pair(0, 2, 0, 3, Perm4::new([0, 1, 3, 2]).unwrap());
        let report = t.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ReversedEdge { .. })));
    }

    #[test]
    fn ideal_vertex_detected() {
        // Among the 2-tetrahedron pairings with every face of tet 0 glued to
        // a face of tet 1 there are once-cusped triangulations (the
        // figure-eight knot complement among them). Find one with a torus
        // link and check it is reported ideal.
        let perms = Perm4::all();
        let mut found = false;
        'outer: for p0 in &perms {
            for p1 in &perms {
                for p2 in &perms {
                    for p3 in &perms {
                        let ps = [p0, p1, p2, p3];
                        let mut t = IdealTriangulation::new(2);
                        let mut target_faces = [false; 4];
                        let mut ok = true;
                        for f in 0..4u8 {
                            let tf = ps[f as usize].apply(f) as usize;
                            if target_faces[tf] {
                                ok = false;
                                break;
                            }
                            target_faces[tf] = true;
                            t.glue_pair(0, f, 1, tf as u8, *ps[f as usize]);
                        }
                        if !ok || !t.validate().is_ok() {
                            continue;
                        }
                        let links = t.vertex_links();
                        if links
                            .iter()
                            .any(|l| l.surface.euler == 0 && l.surface.orientable)
                        {
                            assert!(links
                                .iter()
                                .all(|l| l.ideal == !l.surface.is_sphere()));
                            assert!(links
                                .iter()
                                .any(|l| l.ideal && l.surface.euler == 0));
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found, "no once-cusped 2-tetrahedron triangulation found");
    }

    #[test]
    fn relabelling_preserves_validity() {
        let t = double_tet();
        let syms = vec![
            Perm4::new([2, 0, 3, 1]).unwrap(),
            Perm4::new([1, 3, 0, 2]).unwrap(),
        ];
        let r = t.relabelled(&[1, 0], &syms);
        assert!(r.validate().is_ok());
    }
}
