//! Closed-surface bookkeeping: a generic builder that assembles a surface from
//! polygons with glued sides and classifies each connected component by
//! orientability and Euler characteristic.

use serde::{Deserialize, Serialize};

use crate::uf::UnionFind;

/// Classification data of a compact connected surface.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub orientable: bool,
    pub euler: i64,
    pub boundary_components: usize,
}

impl SurfaceDescriptor {
    pub fn sphere() -> SurfaceDescriptor {
        SurfaceDescriptor {
            orientable: true,
            euler: 2,
            boundary_components: 0,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_components == 0
    }

    pub fn is_sphere(&self) -> bool {
        self.is_closed() && self.orientable && self.euler == 2
    }

    /// A descriptor is consistent iff a compact connected surface with these
    /// data exists.
    pub fn is_consistent(&self) -> bool {
        let b = self.boundary_components as i64;
        if self.euler + b > 2 {
            return false;
        }
        if self.orientable {
            // chi = 2 - 2g - b
            (2 - self.euler - b) % 2 == 0
        } else {
            // chi = 2 - c - b with crosscap number c >= 1
            2 - self.euler - b >= 1
        }
    }

    pub fn name(&self) -> String {
        let b = self.boundary_components;
        if self.orientable {
            let genus = (2 - self.euler - b as i64) / 2;
            match (genus, b) {
                (0, 0) => "S^2".into(),
                (0, 1) => "B^2".into(),
                (0, 2) => "annulus".into(),
                (1, 0) => "T^2".into(),
                _ if b == 0 => format!("genus-{genus} surface"),
                _ => format!("genus-{genus} surface, {b} boundary"),
            }
        } else {
            let crosscaps = 2 - self.euler - b as i64;
            match (crosscaps, b) {
                (1, 0) => "RP^2".into(),
                (1, 1) => "Mobius".into(),
                (2, 0) => "Klein".into(),
                _ if b == 0 => format!("non-orientable, {crosscaps} crosscaps"),
                _ => format!("non-orientable, {crosscaps} crosscaps, {b} boundary"),
            }
        }
    }
}

/// A side gluing between two polygon sides. Side `s` of a polygon of arity `d`
/// runs from corner `s` to corner `(s+1) % d` in the polygon's boundary
/// orientation. `parallel = false` identifies head-to-tail (the two boundary
/// orientations disagree on the common edge, which is the orientation
/// compatible case); `parallel = true` identifies head-to-head.
#[derive(Clone, Copy, Debug)]
pub struct SideGluing {
    pub poly_a: usize,
    pub side_a: usize,
    pub poly_b: usize,
    pub side_b: usize,
    pub parallel: bool,
}

/// Polygons with fully glued sides. `arity[p]` is the number of sides of
/// polygon `p`; every side must appear in exactly one gluing.
pub struct PolygonSurface {
    pub arity: Vec<usize>,
    pub gluings: Vec<SideGluing>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("side ({0},{1}) is used {2} times in gluings (expected exactly once)")]
    BadSideUsage(usize, usize, usize),
}

impl PolygonSurface {
    /// Component index per polygon, plus per-component descriptors
    /// (always closed here). Errors if some side is unglued or reused.
    pub fn components(&self) -> Result<(Vec<usize>, Vec<SurfaceDescriptor>), SurfaceError> {
        let n = self.arity.len();
        let mut side_base = vec![0usize; n + 1];
        for p in 0..n {
            side_base[p + 1] = side_base[p] + self.arity[p];
        }
        let total_sides = side_base[n];
        let side_id = |p: usize, s: usize| side_base[p] + s;
        let corner_id = |p: usize, c: usize| side_base[p] + c % self.arity[p];

        let mut usage = vec![0usize; total_sides];
        for g in &self.gluings {
            usage[side_id(g.poly_a, g.side_a)] += 1;
            usage[side_id(g.poly_b, g.side_b)] += 1;
        }
        for p in 0..n {
            for s in 0..self.arity[p] {
                if usage[side_id(p, s)] != 1 {
                    return Err(SurfaceError::BadSideUsage(p, s, usage[side_id(p, s)]));
                }
            }
        }

        // Polygon components and adjacency for the orientability sweep.
        let mut comp_uf = UnionFind::new(n);
        let mut corners = UnionFind::new(total_sides);
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for g in &self.gluings {
            comp_uf.union(g.poly_a, g.poly_b);
            adj[g.poly_a].push((g.poly_b, g.parallel));
            adj[g.poly_b].push((g.poly_a, g.parallel));
            // Corner identifications induced by the side gluing.
            let (a0, a1) = (corner_id(g.poly_a, g.side_a), corner_id(g.poly_a, g.side_a + 1));
            let (b0, b1) = (corner_id(g.poly_b, g.side_b), corner_id(g.poly_b, g.side_b + 1));
            if g.parallel {
                corners.union(a0, b0);
                corners.union(a1, b1);
            } else {
                corners.union(a0, b1);
                corners.union(a1, b0);
            }
        }

        // Orientability: try to 2-color polygons so that every parallel gluing
        // changes color and every antiparallel one keeps it.
        let mut color = vec![u8::MAX; n];
        let mut orientable_root: std::collections::HashMap<usize, bool> =
            std::collections::HashMap::new();
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            let root = comp_uf.find(start);
            let mut ok = true;
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for &(q, parallel) in &adj[p] {
                    let want = color[p] ^ (parallel as u8);
                    if color[q] == u8::MAX {
                        color[q] = want;
                        queue.push_back(q);
                    } else if color[q] != want {
                        ok = false;
                    }
                }
            }
            orientable_root.insert(root, ok);
        }

        let (poly_comp, comp_count) = comp_uf.classes();
        let mut faces = vec![0i64; comp_count];
        let mut edges = vec![0i64; comp_count];
        let mut verts = vec![0i64; comp_count];
        for p in 0..n {
            faces[poly_comp[p]] += 1;
        }
        for g in &self.gluings {
            edges[poly_comp[g.poly_a]] += 1;
        }
        let mut corner_seen = std::collections::HashSet::new();
        for p in 0..n {
            for c in 0..self.arity[p] {
                let root = corners.find(corner_id(p, c));
                if corner_seen.insert(root) {
                    verts[poly_comp[p]] += 1;
                }
            }
        }

        let mut descriptors = Vec::with_capacity(comp_count);
        let mut root_of_comp = vec![usize::MAX; comp_count];
        for p in 0..n {
            root_of_comp[poly_comp[p]] = comp_uf.find(p);
        }
        for c in 0..comp_count {
            descriptors.push(SurfaceDescriptor {
                orientable: orientable_root[&root_of_comp[c]],
                euler: verts[c] - edges[c] + faces[c],
                boundary_components: 0,
            });
        }
        Ok((poly_comp, descriptors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glue(a: (usize, usize), b: (usize, usize), parallel: bool) -> SideGluing {
        SideGluing {
            poly_a: a.0,
            side_a: a.1,
            poly_b: b.0,
            side_b: b.1,
            parallel,
        }
    }

    #[test]
    fn two_triangles_make_a_sphere() {
        let s = PolygonSurface {
            arity: vec![3, 3],
            gluings: vec![
                glue((0, 0), (1, 0), false),
                glue((0, 1), (1, 2), false),
                glue((0, 2), (1, 1), false),
            ],
        };
        let (_, comps) = s.components().unwrap();
        assert_eq!(comps, vec![SurfaceDescriptor::sphere()]);
    }

    #[test]
    fn square_torus_and_klein_and_rp2() {
        // Torus: square with opposite sides glued head-to-tail.
        let torus = PolygonSurface {
            arity: vec![4],
            gluings: vec![glue((0, 0), (0, 2), false), glue((0, 1), (0, 3), false)],
        };
        let (_, comps) = torus.components().unwrap();
        assert_eq!(comps[0].euler, 0);
        assert!(comps[0].orientable);

        // Klein bottle: one pair reversed.
        let klein = PolygonSurface {
            arity: vec![4],
            gluings: vec![glue((0, 0), (0, 2), false), glue((0, 1), (0, 3), true)],
        };
        let (_, comps) = klein.components().unwrap();
        assert_eq!(comps[0].euler, 0);
        assert!(!comps[0].orientable);

        // RP^2: bigon with antipodal gluing.
        let rp2 = PolygonSurface {
            arity: vec![2],
            gluings: vec![glue((0, 0), (0, 1), true)],
        };
        let (_, comps) = rp2.components().unwrap();
        assert_eq!(comps[0].euler, 1);
        assert!(!comps[0].orientable);
    }

    #[test]
    fn unglued_side_is_an_error() {
        let s = PolygonSurface {
            arity: vec![3],
            gluings: vec![glue((0, 0), (0, 1), false)],
        };
        assert!(s.components().is_err());
    }

    #[test]
    fn descriptor_consistency() {
        assert!(SurfaceDescriptor::sphere().is_consistent());
        assert!(!SurfaceDescriptor {
            orientable: true,
            euler: 1,
            boundary_components: 0
        }
        .is_consistent());
        assert!(SurfaceDescriptor {
            orientable: false,
            euler: 1,
            boundary_components: 0
        }
        .is_consistent());
    }
}
