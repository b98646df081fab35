//! Exhaustive census of ideal cubulations with one or two cubes (and the
//! small triangulation censuses used for round-trip checks), up to
//! isomorphism.
//!
//! Generation fixes a face-pairing pattern first (perfect matchings of the
//! `6k` face slots, self-adjacencies and multiple adjacencies allowed), then
//! the eight dihedral gluings per pair. Partial tables are pruned as soon as
//! an edge orbit closes up with a reversal, and by canonicity: a branch is
//! abandoned once some relabelling of it is lexicographically smaller, so
//! exactly one table per isomorphism class survives. Output is
//! signature-sorted and independent of generation order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cubulation::{dir_edge, IdealCubulation};
use crate::dual::{dual_surface_stats, trace_sheets, DehnSurfaceStats};
use crate::perm::{all_dihedral, face_axis, face_corners, face_position, CubeSym, Perm4};
use crate::report::{OrbitReport, VertexLink};
use crate::signature::{cubulation_signature, triangulation_signature};
use crate::surface::SurfaceDescriptor;
use crate::triangulation::IdealTriangulation;

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error("census supports 1 or 2 cubes, got {0}")]
    UnsupportedCubes(usize),
    #[error("census supports 1 or 2 tetrahedra, got {0}")]
    UnsupportedTets(usize),
}

/// Filters applied to census survivors.
#[derive(Clone, Copy, Default, Debug)]
pub struct CensusFilters {
    /// Keep only cubulations whose dual surface consists of spheres.
    pub sheets_all_spheres: bool,
}

/// One isomorphism class of the census, with its invariant report.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub signature: String,
    pub cubulation: IdealCubulation,
    pub orbits: OrbitReport,
    pub links: Vec<VertexLink>,
    pub stats: DehnSurfaceStats,
    pub sheets: Vec<SurfaceDescriptor>,
}

/// Union-find over undirected edges carrying a relative-orientation bit, with
/// rollback; a union that closes a cycle with inconsistent orientation is
/// exactly a reversed edge orbit.
struct SignedUf {
    parent: Vec<u32>,
    sign: Vec<u8>,
    size: Vec<u32>,
    history: Vec<u32>,
}

impl SignedUf {
    fn new(n: usize) -> SignedUf {
        SignedUf {
            parent: (0..n as u32).collect(),
            sign: vec![0; n],
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> (usize, u8) {
        let mut s = 0u8;
        while self.parent[x] as usize != x {
            s ^= self.sign[x];
            x = self.parent[x] as usize;
        }
        (x, s)
    }

    /// Require `orient(a) ^ orient(b) = rel`; `false` means contradiction.
    fn union(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (mut ra, sa) = self.find(a);
        let (mut rb, sb) = self.find(b);
        if ra == rb {
            return sa ^ sb == rel;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.sign[rb] = sa ^ sb ^ rel;
        self.size[ra] += self.size[rb];
        self.history.push(rb as u32);
        true
    }

    fn mark(&self) -> usize {
        self.history.len()
    }

    fn rollback_to(&mut self, mark: usize) {
        while self.history.len() > mark {
            let rb = self.history.pop().unwrap() as usize;
            let ra = self.parent[rb] as usize;
            self.parent[rb] = rb as u32;
            self.sign[rb] = 0;
            self.size[ra] -= self.size[rb];
        }
    }
}

/// Canonical id and orientation bit of the directed cube edge `(v, axis)`.
fn signed_edge(cube: usize, v: u8, axis: u8) -> (usize, u8) {
    let s = (v >> axis) & 1;
    (cube * 24 + dir_edge(v & !(1 << axis), axis) as usize, s)
}

/// Push the edge identifications of one glued face pair; `false` on a
/// reversed edge.
fn push_pair_edges(
    uf: &mut SignedUf,
    c: &IdealCubulation,
    cube: usize,
    face: u8,
) -> bool {
    let g = *c.gluing(cube, face).expect("pair just glued");
    for &v in &face_corners(face) {
        for axis in 0..3u8 {
            if axis == face_axis(face) {
                continue;
            }
            let w = v ^ (1 << axis);
            let v2 = IdealCubulation::map_vertex(face, &g, v);
            let w2 = IdealCubulation::map_vertex(face, &g, w);
            let axis2 = (v2 ^ w2).trailing_zeros() as u8;
            let (e1, s1) = signed_edge(cube, v, axis);
            let (e2, s2) = signed_edge(g.cube, v2, axis2);
            if !uf.union(e1, e2, s1 ^ s2) {
                return false;
            }
        }
    }
    true
}

/// One relabelling of a cubulation: a permutation of cube indices plus a cube
/// symmetry per (old) cube. For `k <= 2` the cube permutation is an
/// involution, so it is its own inverse.
struct Relabel {
    cell: Vec<usize>,
    sym: Vec<CubeSym>,
    inv_sym: Vec<CubeSym>,
}

/// All non-identity relabellings of `k` cubes (`k! * 48^k - 1` of them).
fn all_relabels(k: usize) -> Vec<Relabel> {
    let syms = CubeSym::all();
    let cell_maps: Vec<Vec<usize>> = if k == 1 {
        vec![vec![0]]
    } else {
        vec![vec![0, 1], vec![1, 0]]
    };
    let mut out = Vec::new();
    for cell in &cell_maps {
        let mut idx = vec![0usize; k];
        loop {
            let sym: Vec<CubeSym> = idx.iter().map(|&i| syms[i]).collect();
            let identity = cell.iter().enumerate().all(|(i, &x)| i == x)
                && sym.iter().all(|s| *s == CubeSym::IDENTITY);
            if !identity {
                out.push(Relabel {
                    cell: cell.clone(),
                    inv_sym: sym.iter().map(|s| s.inverse()).collect(),
                    sym,
                });
            }
            let mut d = 0;
            while d < k {
                idx[d] += 1;
                if idx[d] < syms.len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == k {
                break;
            }
        }
    }
    out
}

/// Result of comparing a relabelled image table against the current table,
/// slot by slot in canonical order, starting at `from`.
enum Cmp {
    /// The image is lexicographically smaller: the current branch can never
    /// produce a canonical table.
    Smaller,
    /// The image is larger; this relabelling can be discarded in the subtree.
    Greater,
    /// Undecided up to the carried slot (undefined records, or equal so far).
    Tied(u8),
}

fn advance_relabel(c: &IdealCubulation, g: &Relabel, from: u8, total: u8) -> Cmp {
    let mut t = from;
    while t < total {
        let (tc, tf) = ((t / 6) as usize, t % 6);
        let Some(cur) = c.gluing(tc, tf) else {
            return Cmp::Tied(t);
        };
        // Preimage slot under the relabelling.
        let oc = if g.cell[tc] == tc { tc } else { 1 - tc };
        let of = g.inv_sym[oc].apply_face(tf);
        let Some(old) = c.gluing(oc, of) else {
            return Cmp::Tied(t);
        };
        let cube2 = g.cell[old.cube];
        let face2 = g.sym[old.cube].apply_face(old.face);
        match (cube2, face2).cmp(&(cur.cube, cur.face)) {
            std::cmp::Ordering::Less => return Cmp::Smaller,
            std::cmp::Ordering::Greater => return Cmp::Greater,
            std::cmp::Ordering::Equal => {}
        }
        let corners = face_corners(tf);
        for pos in 0..4usize {
            let v = g.inv_sym[oc].apply_vertex(corners[pos]);
            let v2 = IdealCubulation::map_vertex(of, old, v);
            let img = face_position(face2, g.sym[old.cube].apply_vertex(v2));
            match img.cmp(&cur.corner_map.0[pos]) {
                std::cmp::Ordering::Less => return Cmp::Smaller,
                std::cmp::Ordering::Greater => return Cmp::Greater,
                std::cmp::Ordering::Equal => {}
            }
        }
        t += 1;
    }
    // Full equality: an automorphism of the completed table.
    Cmp::Tied(total)
}

struct CubeSearch {
    k: usize,
    partner_order: Vec<usize>,
    dihedral: Vec<Perm4>,
    relabels: Vec<Relabel>,
}

impl CubeSearch {
    fn slot(&self, s: usize) -> (usize, u8) {
        (s / 6, (s % 6) as u8)
    }

    fn first_free(&self, c: &IdealCubulation) -> Option<usize> {
        (0..6 * self.k).find(|&s| {
            let (cube, face) = self.slot(s);
            c.gluing(cube, face).is_none()
        })
    }

    /// Depth-first completion of the gluing table. `tied` carries the
    /// relabellings whose image is still equal to (or undecided against) the
    /// current table prefix; a strictly smaller image prunes the branch, so
    /// every surviving leaf is the lexicographically minimal table of its
    /// isomorphism class.
    fn dfs(
        &self,
        c: &mut IdealCubulation,
        uf: &mut SignedUf,
        tied: &[(u32, u8)],
        out: &mut Vec<IdealCubulation>,
    ) {
        let Some(s) = self.first_free(c) else {
            if self.k == 2 && !(0..6u8).any(|f| c.gluing(0, f).unwrap().cube == 1) {
                return; // two cubes glued only to themselves
            }
            debug_assert!(c.validate().is_ok());
            out.push(c.clone());
            return;
        };
        let (cube, face) = self.slot(s);
        let total = (6 * self.k) as u8;
        for &t in &self.partner_order {
            if t == s {
                continue;
            }
            let (cube2, face2) = self.slot(t);
            if c.gluing(cube2, face2).is_some() {
                continue;
            }
            for &map in &self.dihedral {
                c.glue_pair(cube, face, cube2, face2, map);
                let m = uf.mark();
                if push_pair_edges(uf, c, cube, face) {
                    let mut pruned = false;
                    let mut next_tied = Vec::with_capacity(tied.len());
                    for &(gi, from) in tied {
                        match advance_relabel(c, &self.relabels[gi as usize], from, total) {
                            Cmp::Smaller => {
                                pruned = true;
                                break;
                            }
                            Cmp::Greater => {}
                            Cmp::Tied(next) => next_tied.push((gi, next)),
                        }
                    }
                    if !pruned {
                        self.dfs(c, uf, &next_tied, out);
                    }
                }
                uf.rollback_to(m);
                c.clear_raw(cube, face);
                c.clear_raw(cube2, face2);
            }
        }
    }
}

/// Enumerate all valid ideal cubulations with `k` cubes up to isomorphism,
/// signature-sorted. `shuffle_seed` permutes the generation order only; the
/// result is identical for every seed.
pub fn enumerate_cubulations_seeded(
    k: usize,
    filters: &CensusFilters,
    shuffle_seed: Option<u64>,
) -> Result<Vec<CensusEntry>, CensusError> {
    if !(1..=2).contains(&k) {
        return Err(CensusError::UnsupportedCubes(k));
    }
    let survivors = canonical_survivors(k, shuffle_seed);

    let mut classes = std::collections::BTreeMap::new();
    let signed: Vec<(String, IdealCubulation)> = survivors
        .into_par_iter()
        .map(|c| (cubulation_signature(&c), c))
        .collect();
    for (sig, c) in signed {
        let prev = classes.insert(sig, c);
        debug_assert!(prev.is_none(), "canonical survivors are unique per class");
    }

    let mut entries = Vec::new();
    for (signature, cubulation) in classes {
        let report = cubulation.validate();
        let orbits = report.orbits.expect("census survivor is valid");
        let links = cubulation.vertex_links();
        let stats = dual_surface_stats(&cubulation);
        let sheets = trace_sheets(&cubulation);
        if filters.sheets_all_spheres && !sheets.iter().all(|s| s.is_sphere()) {
            continue;
        }
        entries.push(CensusEntry {
            signature,
            cubulation,
            orbits,
            links,
            stats,
            sheets,
        });
    }
    Ok(entries)
}

/// The lexicographically minimal gluing table of every isomorphism class:
/// exactly one survivor per class, in generation order.
pub(crate) fn canonical_survivors(k: usize, shuffle_seed: Option<u64>) -> Vec<IdealCubulation> {
    let mut partner_order: Vec<usize> = (0..6 * k).collect();
    let mut dihedral = all_dihedral();
    if let Some(seed) = shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        partner_order.shuffle(&mut rng);
        dihedral.shuffle(&mut rng);
    }
    let search = CubeSearch {
        k,
        partner_order,
        dihedral,
        relabels: all_relabels(k),
    };
    let tied: Vec<(u32, u8)> = (0..search.relabels.len() as u32).map(|gi| (gi, 0)).collect();
    let mut c = IdealCubulation::new(k);
    let mut uf = SignedUf::new(24 * k);
    let mut out = Vec::new();
    search.dfs(&mut c, &mut uf, &tied, &mut out);
    out
}

pub fn enumerate_cubulations(
    k: usize,
    filters: &CensusFilters,
) -> Result<Vec<CensusEntry>, CensusError> {
    enumerate_cubulations_seeded(k, filters, None)
}

/// Enumerate all valid ideal triangulations with `n` tetrahedra up to
/// isomorphism, signature-sorted.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<IdealTriangulation>, CensusError> {
    if !(1..=2).contains(&n) {
        return Err(CensusError::UnsupportedTets(n));
    }
    let perms = Perm4::all();
    let mut out = std::collections::BTreeMap::new();
    let mut t = IdealTriangulation::new(n);
    let mut uf = SignedUf::new(16 * n);
    tri_dfs(&mut t, &mut uf, &perms, &mut out);
    Ok(out.into_values().collect())
}

fn tri_signed_edge(tet: usize, a: u8, b: u8) -> (usize, u8) {
    let (lo, hi, s) = if a < b { (a, b, 0) } else { (b, a, 1) };
    (tet * 16 + (lo * 4 + hi) as usize, s)
}

fn tri_push_pair_edges(uf: &mut SignedUf, t: &IdealTriangulation, tet: usize, face: u8) -> bool {
    let g = *t.gluing(tet, face).expect("pair just glued");
    for a in 0..4u8 {
        for b in 0..4u8 {
            if a >= b || a == face || b == face {
                continue;
            }
            let (e1, s1) = tri_signed_edge(tet, a, b);
            let (e2, s2) = tri_signed_edge(g.tet, g.perm.apply(a), g.perm.apply(b));
            if !uf.union(e1, e2, s1 ^ s2) {
                return false;
            }
        }
    }
    true
}

fn tri_dfs(
    t: &mut IdealTriangulation,
    uf: &mut SignedUf,
    perms: &[Perm4],
    out: &mut std::collections::BTreeMap<String, IdealTriangulation>,
) {
    let n = t.n();
    let free = (0..4 * n).find(|&s| t.gluing(s / 4, (s % 4) as u8).is_none());
    let Some(s) = free else {
        if t.validate().is_ok() {
            out.entry(triangulation_signature(t)).or_insert_with(|| t.clone());
        }
        return;
    };
    let (tet, face) = (s / 4, (s % 4) as u8);
    for t2 in 0..4 * n {
        if t2 == s {
            continue;
        }
        let (tet2, face2) = (t2 / 4, (t2 % 4) as u8);
        if t.gluing(tet2, face2).is_some() {
            continue;
        }
        for &p in perms.iter().filter(|p| p.apply(face) == face2) {
            t.glue_pair(tet, face, tet2, face2, p);
            let m = uf.mark();
            if tri_push_pair_edges(uf, t, tet, face) {
                tri_dfs(t, uf, perms, out);
            }
            uf.rollback_to(m);
            t.clear_raw(tet, face);
            t.clear_raw(tet2, face2);
        }
    }
}

fn multiset_key(names: impl Iterator<Item = String>) -> String {
    let mut counts = std::collections::BTreeMap::new();
    for n in names {
        *counts.entry(n).or_insert(0usize) += 1;
    }
    if counts.is_empty() {
        return "-".into();
    }
    counts
        .into_iter()
        .map(|(n, c)| if c == 1 { n } else { format!("{n} x{c}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Table of census counts grouped by (vertex-link multiset, sheet profile).
pub fn census_report(entries: &[CensusEntry]) -> String {
    let mut groups = std::collections::BTreeMap::new();
    for e in entries {
        let links = multiset_key(e.links.iter().map(|l| l.surface.name()));
        let sheets = multiset_key(e.sheets.iter().map(|s| s.name()));
        *groups.entry((links, sheets)).or_insert(0usize) += 1;
    }
    let mut out = String::from("links | sheets | count\n");
    for ((links, sheets), count) in groups {
        out.push_str(&format!("{links} | {sheets} | {count}\n"));
    }
    out
}
