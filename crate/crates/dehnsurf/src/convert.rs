//! Conversions between ideal triangulations and ideal cubulations.
//!
//! A triangulation becomes a cubulation by placing one cube at each corner of
//! each tetrahedron (4 cubes per tetrahedron). A cubulation becomes a
//! triangulation by cutting each cube into 5 tetrahedra (a central one on an
//! alternating corner quadruple plus 4 corner tetrahedra) and inserting a flat
//! tetrahedron between every glued face pair whose cut diagonals disagree;
//! choosing the central parity per cube is a XOR-minimization problem over the
//! `2^k` assignments.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::cubulation::{CubeGluing, IdealCubulation};
use crate::perm::{
    face_axis, face_corners, face_position, face_side, swaps_diagonals, Perm4, CUBE_VERTICES,
};
use crate::report::Violation;
use crate::triangulation::IdealTriangulation;

#[derive(Debug, thiserror::Error)]
pub enum ConvertError {
    #[error("input complex is invalid: {}", format_violations(.0))]
    InvalidInput(Vec<Violation>),
    #[error("orientation assignment has {got} bits, expected {want}")]
    BitsLength { got: usize, want: usize },
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// The other three vertex labels of a tetrahedron, in increasing order.
fn others(v: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut i = 0;
    for w in 0..4u8 {
        if w != v {
            out[i] = w;
            i += 1;
        }
    }
    out
}

/// Corner cube of tetrahedron vertex `v`: cube vertex `b` stands for the
/// barycenter of `{v} ∪ {w_j : b_j = 1}`, encoded as a bitmask over the
/// tetrahedron's vertex labels (`w_0 < w_1 < w_2` are the other labels).
fn vert_mask(v: u8, b: u8) -> u8 {
    let o = others(v);
    let mut m = 1u8 << v;
    for j in 0..3 {
        if (b >> j) & 1 == 1 {
            m |= 1 << o[j];
        }
    }
    m
}

/// Inverse of [`vert_mask`]; `m` must contain `v`.
fn mask_vert(v: u8, m: u8) -> u8 {
    debug_assert!(m & (1 << v) != 0);
    let o = others(v);
    let mut b = 0u8;
    for j in 0..3 {
        if m & (1 << o[j]) != 0 {
            b |= 1 << j;
        }
    }
    b
}

/// Build the ideal cubulation with one cube per tetrahedron corner (`k = 4n`).
///
/// Cube `4t + v` sits at vertex `v` of tetrahedron `t`; for `j = 0,1,2` its
/// face `2j+1` is the interior square towards the corner cube of the `j`-th
/// other vertex, and its face `2j+0` lies on the tetrahedron face opposite
/// that vertex and is glued across the face pairing.
pub fn triangulation_to_cubulation(t: &IdealTriangulation) -> Result<IdealCubulation, ConvertError> {
    let report = t.validate();
    if !report.is_ok() {
        return Err(ConvertError::InvalidInput(report.violations));
    }
    let n = t.n();
    let mut c = IdealCubulation::new(4 * n);
    for tet in 0..n {
        for v in 0..4u8 {
            let cube = tet * 4 + v as usize;
            let o = others(v);
            for j in 0..3u8 {
                let w = o[j as usize];

                // Interior square towards the corner cube of w: barycenter
                // subsets containing both v and w, matched as sets.
                let face = 2 * j + 1;
                let j2 = others(w).iter().position(|&x| x == v).unwrap() as u8;
                let face2 = 2 * j2 + 1;
                let mut images = [0u8; 4];
                for (p, &b) in face_corners(face).iter().enumerate() {
                    let b2 = mask_vert(w, vert_mask(v, b));
                    images[p] = face_position(face2, b2);
                }
                c.set_raw(
                    cube,
                    face,
                    CubeGluing {
                        cube: tet * 4 + w as usize,
                        face: face2,
                        corner_map: Perm4::new(images).expect("subset matching is a bijection"),
                    },
                );

                // Boundary square on the tetrahedron face opposite w,
                // transported by the face pairing's vertex permutation.
                let g = t.gluing(tet, w).expect("validated gluing is total");
                let v2 = g.perm.apply(v);
                let j2 = others(v2).iter().position(|&x| x == g.face).unwrap() as u8;
                let face_ext = 2 * j;
                let face2 = 2 * j2;
                let mut images = [0u8; 4];
                for (p, &b) in face_corners(face_ext).iter().enumerate() {
                    let m = vert_mask(v, b);
                    let mut m2 = 0u8;
                    for l in 0..4u8 {
                        if m & (1 << l) != 0 {
                            m2 |= 1 << g.perm.apply(l);
                        }
                    }
                    images[p] = face_position(face2, mask_vert(v2, m2));
                }
                c.set_raw(
                    cube,
                    face_ext,
                    CubeGluing {
                        cube: g.tet * 4 + v2 as usize,
                        face: face2,
                        corner_map: Perm4::new(images).expect("subset matching is a bijection"),
                    },
                );
            }
        }
    }
    debug_assert!(c.validate().is_ok());
    Ok(c)
}

fn parity(v: u8) -> u8 {
    (v.count_ones() & 1) as u8
}

/// Central-parity corners of a cube in increasing order (`p = 0`: even).
fn central_verts(p: u8) -> [u8; 4] {
    let mut out = [0u8; 4];
    let mut i = 0;
    for v in 0..CUBE_VERTICES {
        if parity(v) == p {
            out[i] = v;
            i += 1;
        }
    }
    out
}

fn central_label(p: u8, v: u8) -> u8 {
    central_verts(p).iter().position(|&x| x == v).unwrap() as u8
}

/// Vertices of the corner tetrahedron at cube vertex `u`, in increasing order:
/// `u` and its three neighbours.
fn corner_verts(u: u8) -> [u8; 4] {
    let mut out = [u, u ^ 1, u ^ 2, u ^ 4];
    out.sort_unstable();
    out
}

fn corner_label(u: u8, v: u8) -> u8 {
    corner_verts(u).iter().position(|&x| x == v).unwrap() as u8
}

/// Tetrahedron index of the corner tetrahedron of cube `i` at vertex `u`
/// (which must have the non-central parity); the central one is `5i`.
fn corner_tet(i: usize, p: u8, u: u8) -> usize {
    debug_assert_eq!(parity(u), p ^ 1);
    5 * i + 1 + central_verts(p ^ 1).iter().position(|&x| x == u).unwrap()
}

/// Whether the diagonals chosen on the two sides of a glued face pair fail to
/// correspond under the corner map, so a flat tetrahedron must be inserted.
pub fn pair_mismatch(cube: usize, face: u8, g: &CubeGluing, bits: &[bool]) -> bool {
    let s_sigma = swaps_diagonals(&g.corner_map) as u8;
    let s_f = face_side(face) ^ face_side(g.face) ^ s_sigma;
    (bits[cube] as u8) ^ (bits[g.cube] as u8) ^ s_f == 1
}

/// Total number of mismatched face pairs for an orientation assignment.
pub fn mismatch_count(c: &IdealCubulation, bits: &[bool]) -> usize {
    c.pairs().filter(|(a, f, g)| pair_mismatch(*a, *f, g, bits)).count()
}

/// Diagonal corner positions on face `f` for cut parameter `delta = x ⊕ side`:
/// the central-parity diagonal and the remaining pair.
fn diag_positions(delta: u8) -> ([usize; 2], [usize; 2]) {
    if delta == 0 {
        ([0, 3], [1, 2])
    } else {
        ([1, 2], [0, 3])
    }
}

/// Cut each cube into 5 tetrahedra according to the per-cube orientation
/// `bits` (false: central tetrahedron on the even-parity corners) and insert a
/// flat tetrahedron on every mismatched face pair. Returns the triangulation
/// (`n = 5k + m`) and the insertion count `m ≤ 3k`.
pub fn cubulation_to_triangulation(
    c: &IdealCubulation,
    bits: &[bool],
) -> Result<(IdealTriangulation, usize), ConvertError> {
    let report = c.validate();
    if !report.is_ok() {
        return Err(ConvertError::InvalidInput(report.violations));
    }
    let k = c.k();
    if bits.len() != k {
        return Err(ConvertError::BitsLength {
            got: bits.len(),
            want: k,
        });
    }
    let pairs: Vec<(usize, u8, CubeGluing)> = c.pairs().map(|(a, f, g)| (a, f, *g)).collect();
    let mismatched: Vec<bool> = pairs
        .iter()
        .map(|(a, f, g)| pair_mismatch(*a, *f, g, bits))
        .collect();
    let m = mismatched.iter().filter(|&&b| b).count();
    let mut t = IdealTriangulation::new(5 * k + m);

    // Interior gluings: each corner tetrahedron's inner face (opposite its
    // corner) matches the central tetrahedron's face opposite the antipode.
    for i in 0..k {
        let p = bits[i] as u8;
        for &u in &central_verts(p ^ 1) {
            let anti = u ^ 7;
            let ct = corner_tet(i, p, u);
            let face_corner = corner_label(u, u);
            let mut images = [0u8; 4];
            for &w in &central_verts(p) {
                let target = if w == anti { u } else { w };
                images[central_label(p, w) as usize] = corner_label(u, target);
            }
            t.glue_pair(
                5 * i,
                central_label(p, anti),
                ct,
                face_corner,
                Perm4::new(images).expect("label correspondence"),
            );
        }
    }

    // Boundary gluings across each glued face pair.
    let mut next_insertion = 5 * k;
    for (idx, (a, fa, g)) in pairs.iter().enumerate() {
        let (a, fa, g) = (*a, *fa, g);
        let b = g.cube;
        let fb = g.face;
        let axis_a = face_axis(fa);
        let axis_b = face_axis(fb);
        let pa = bits[a] as u8;
        let pb = bits[b] as u8;
        let (diag_a, off_a) = diag_positions(pa ^ face_side(fa));
        if !mismatched[idx] {
            // Matching diagonals: glue the two boundary triangles directly.
            for &q in &off_a {
                let u = face_corners(fa)[q];
                debug_assert_eq!(parity(u), pa ^ 1);
                let u2 = IdealCubulation::map_vertex(fa, g, u);
                debug_assert_eq!(parity(u2), pb ^ 1);
                let wa = u ^ (1 << axis_a);
                let wb = u2 ^ (1 << axis_b);
                let mut images = [0u8; 4];
                for &vv in &corner_verts(u) {
                    let target = if vv == wa {
                        wb
                    } else if vv == u {
                        u2
                    } else {
                        IdealCubulation::map_vertex(fa, g, vv)
                    };
                    images[corner_label(u, vv) as usize] = corner_label(u2, target);
                }
                t.glue_pair(
                    corner_tet(a, pa, u),
                    corner_label(u, wa),
                    corner_tet(b, pb, u2),
                    corner_label(u2, wb),
                    Perm4::new(images).expect("label correspondence"),
                );
            }
        } else {
            // Mismatched diagonals: one flat tetrahedron between the sides,
            // its labels being the canonical corner positions of `fa`. Its
            // opposite edges `diag_a` and `off_a` are the two cut diagonals.
            let ins = next_insertion;
            next_insertion += 1;
            for (qi, &q) in off_a.iter().enumerate() {
                let q_other = off_a[1 - qi];
                let u = face_corners(fa)[q];
                debug_assert_eq!(parity(u), pa ^ 1);
                let wa = u ^ (1 << axis_a);
                let mut images = [0u8; 4];
                images[corner_label(u, u) as usize] = q as u8;
                for &d in &diag_a {
                    images[corner_label(u, face_corners(fa)[d]) as usize] = d as u8;
                }
                images[corner_label(u, wa) as usize] = q_other as u8;
                t.glue_pair(
                    corner_tet(a, pa, u),
                    corner_label(u, wa),
                    ins,
                    q_other as u8,
                    Perm4::new(images).expect("label correspondence"),
                );
            }
            let (diag_b, off_b) = diag_positions(pb ^ face_side(fb));
            let sig_inv = g.corner_map.inverse();
            for &qb in &off_b {
                let u2 = face_corners(fb)[qb];
                debug_assert_eq!(parity(u2), pb ^ 1);
                let l = sig_inv.apply(qb as u8);
                debug_assert!(diag_a.contains(&(l as usize)));
                let l_other = diag_a.iter().map(|&d| d as u8).find(|&d| d != l).unwrap();
                let wb = u2 ^ (1 << axis_b);
                let mut images = [0u8; 4];
                images[corner_label(u2, u2) as usize] = l;
                for &d in &diag_b {
                    images[corner_label(u2, face_corners(fb)[d]) as usize] =
                        sig_inv.apply(d as u8);
                }
                images[corner_label(u2, wb) as usize] = l_other;
                t.glue_pair(
                    corner_tet(b, pb, u2),
                    corner_label(u2, wb),
                    ins,
                    l_other,
                    Perm4::new(images).expect("label correspondence"),
                );
            }
        }
    }
    debug_assert_eq!(next_insertion, 5 * k + m);
    Ok((t, m))
}

/// Search parameters for [`optimize_orientations`].
#[derive(Clone, Copy, Debug)]
pub struct OrientationSearch {
    /// Exhaust all `2^k` assignments when `k` is at most this.
    pub exhaustive_max: usize,
    /// Seed for the local-search restarts above the exhaustive range.
    pub seed: u64,
    /// Number of seeded restarts (the first restart is the all-zeros start).
    pub restarts: usize,
}

impl Default for OrientationSearch {
    fn default() -> Self {
        OrientationSearch {
            exhaustive_max: 20,
            seed: 0,
            restarts: 16,
        }
    }
}

/// Result of the orientation search.
#[derive(Clone, Debug)]
pub struct OrientationOutcome {
    pub bits: Vec<bool>,
    pub mismatches: usize,
    /// Whether the result is the exact optimum (exhaustive search was used).
    pub exhaustive: bool,
}

/// Choose the per-cube orientation bits minimizing the number of mismatched
/// face pairs (hence the insertion count of [`cubulation_to_triangulation`]).
///
/// Exhaustive over the `2^k` assignments for small `k`; otherwise a
/// deterministic single-bit-flip local search from the all-zeros start and
/// seeded random restarts. The reported count never exceeds the all-zeros
/// assignment's, and ties favour the lexicographically smallest bit vector.
pub fn optimize_orientations(
    c: &IdealCubulation,
    search: &OrientationSearch,
) -> Result<OrientationOutcome, ConvertError> {
    let report = c.validate();
    if !report.is_ok() {
        return Err(ConvertError::InvalidInput(report.violations));
    }
    let k = c.k();
    let pairs: Vec<(usize, usize, u8)> = c
        .pairs()
        .map(|(a, f, g)| {
            let s_f = face_side(f) ^ face_side(g.face) ^ swaps_diagonals(&g.corner_map) as u8;
            (a, g.cube, s_f)
        })
        .collect();
    let count = |bits: &[bool]| -> usize {
        pairs
            .iter()
            .filter(|&&(a, b, s)| (bits[a] as u8) ^ (bits[b] as u8) ^ s == 1)
            .count()
    };

    if k <= search.exhaustive_max && k < 63 {
        let mut best_bits = vec![false; k];
        let mut best = count(&best_bits);
        for x in 1u64..(1u64 << k) {
            // Bit 0 of the vector is the most significant digit, so ascending
            // x enumerates bit vectors in lexicographic order and keeping
            // strict improvements yields the lexicographically least optimum.
            let bits: Vec<bool> = (0..k).map(|i| (x >> (k - 1 - i)) & 1 == 1).collect();
            let m = count(&bits);
            if m < best {
                best = m;
                best_bits = bits;
            }
        }
        return Ok(OrientationOutcome {
            bits: best_bits,
            mismatches: best,
            exhaustive: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut best: Option<(usize, Vec<bool>)> = None;
    for restart in 0..search.restarts.max(1) {
        let mut bits: Vec<bool> = if restart == 0 {
            vec![false; k]
        } else {
            (0..k).map(|_| rng.gen_bool(0.5)).collect()
        };
        let mut m = count(&bits);
        loop {
            // Best single-bit flip, lowest index on ties.
            let mut improvement: Option<(usize, usize)> = None;
            for i in 0..k {
                bits[i] = !bits[i];
                let mi = count(&bits);
                bits[i] = !bits[i];
                if mi < m && improvement.map_or(true, |(bm, _)| mi < bm) {
                    improvement = Some((mi, i));
                }
            }
            match improvement {
                Some((mi, i)) => {
                    bits[i] = !bits[i];
                    m = mi;
                }
                None => break,
            }
        }
        let better = match &best {
            None => true,
            Some((bm, bb)) => m < *bm || (m == *bm && bits < *bb),
        };
        if better {
            best = Some((m, bits));
        }
    }
    let (mismatches, bits) = best.expect("at least one restart");
    Ok(OrientationOutcome {
        bits,
        mismatches,
        exhaustive: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual_surface_stats;
    use crate::fixtures;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_tet_pairing_converts() {
        // Find any valid 1-tetrahedron face pairing and convert it.
        let perms = Perm4::all();
        let mut found = false;
        for (f0, f1) in [(0u8, 1u8), (0, 2), (0, 3)] {
            let (g0, g1) = match (f0, f1) {
                (0, 1) => ((2u8, 3u8), (0, 0)),
                (0, 2) => ((1, 3), (0, 0)),
                _ => ((1, 2), (0, 0)),
            };
            let _ = g1;
            for p in &perms {
                if p.apply(f0) != f1 {
                    continue;
                }
                for q in &perms {
                    if q.apply(g0.0) != g0.1 {
                        continue;
                    }
                    let mut t = IdealTriangulation::new(1);
                    t.glue_pair(0, f0, 0, f1, *p);
                    t.glue_pair(0, g0.0, 0, g0.1, *q);
                    if !t.validate().is_ok() {
                        continue;
                    }
                    let c = triangulation_to_cubulation(&t).unwrap();
                    assert_eq!(c.k(), 4);
                    assert!(c.validate().is_ok());
                    assert!(c.euler_identity_holds());
                    found = true;
                }
            }
        }
        assert!(found, "no valid 1-tetrahedron pairing found");
    }

    #[test]
    fn double_tet_to_cubulation() {
        let t = fixtures::double_tet();
        let c = triangulation_to_cubulation(&t).unwrap();
        assert_eq!(c.k(), 8);
        let report = c.validate();
        assert!(report.is_ok(), "{:?}", report.violations);
        assert!(c.euler_identity_holds());
        let stats = dual_surface_stats(&c);
        assert_eq!(stats.triple_points, 8);
        // The original four vertices all have sphere links, and so do the
        // added barycentric vertices.
        assert!(stats.complement.iter().all(|l| !l.ideal));
    }

    #[test]
    fn cusped_links_preserved() {
        // A 2-tetrahedron triangulation with an ideal (torus-link) vertex
        // keeps exactly its non-sphere links through the conversion; all
        // added vertices have sphere links.
        let t = cusped_two_tet();
        let tori: Vec<i64> = t
            .vertex_links()
            .iter()
            .filter(|l| l.ideal)
            .map(|l| l.surface.euler)
            .collect();
        assert!(!tori.is_empty());
        let c = triangulation_to_cubulation(&t).unwrap();
        assert!(c.validate().is_ok());
        let ctori: Vec<i64> = c
            .vertex_links()
            .iter()
            .filter(|l| l.ideal)
            .map(|l| l.surface.euler)
            .collect();
        assert_eq!(tori, ctori);
    }

    /// Some valid 2-tetrahedron triangulation with a torus-link vertex.
    fn cusped_two_tet() -> IdealTriangulation {
        let perms = Perm4::all();
        for p0 in &perms {
            for p1 in &perms {
                for p2 in &perms {
                    for p3 in &perms {
                        let ps = [p0, p1, p2, p3];
                        let mut t = IdealTriangulation::new(2);
                        let mut target = [false; 4];
                        let mut ok = true;
                        for f in 0..4u8 {
                            let tf = ps[f as usize].apply(f) as usize;
                            if target[tf] {
                                ok = false;
                                break;
                            }
                            target[tf] = true;
                            t.glue_pair(0, f, 1, tf as u8, *ps[f as usize]);
                        }
                        if ok
                            && t.validate().is_ok()
                            && t.vertex_links()
                                .iter()
                                .any(|l| l.surface.euler == 0 && l.surface.orientable)
                        {
                            return t;
                        }
                    }
                }
            }
        }
        panic!("no cusped 2-tetrahedron triangulation found");
    }

    #[test]
    fn invalid_input_rejected() {
        let t = IdealTriangulation::new(1);
        assert!(matches!(
            triangulation_to_cubulation(&t),
            Err(ConvertError::InvalidInput(_))
        ));
        let c = IdealCubulation::new(1);
        assert!(matches!(
            cubulation_to_triangulation(&c, &[false]),
            Err(ConvertError::InvalidInput(_))
        ));
    }

    #[test]
    fn cubulation_to_triangulation_all_assignments() {
        for c in [fixtures::coordinate_plane_s3(), fixtures::two_cube_t3()] {
            let k = c.k();
            for x in 0..(1u32 << k) {
                let bits: Vec<bool> = (0..k).map(|i| (x >> i) & 1 == 1).collect();
                let (t, m) = cubulation_to_triangulation(&c, &bits).unwrap();
                assert_eq!(t.n(), 5 * k + m);
                assert!(m <= 3 * k, "m = {m} exceeds 3k = {}", 3 * k);
                let report = t.validate();
                assert!(report.is_ok(), "bits {bits:?}: {:?}", report.violations);
                assert!(t.euler_identity_holds());
                assert_eq!(m, mismatch_count(&c, &bits));
            }
        }
    }

    #[test]
    fn round_trip_preserves_links() {
        let t = fixtures::double_tet();
        let c = triangulation_to_cubulation(&t).unwrap();
        let best = optimize_orientations(&c, &OrientationSearch::default()).unwrap();
        let (t2, m) = cubulation_to_triangulation(&c, &best.bits).unwrap();
        assert_eq!(m, best.mismatches);
        assert!(t2.validate().is_ok());
        // chi of the closed pseudo-complex is preserved (both are closed
        // here: every link is a sphere before and after).
        assert!(t2.vertex_links().iter().all(|l| !l.ideal));
        assert_eq!(
            t.validate().orbits.unwrap().euler(),
            t2.validate().orbits.unwrap().euler()
        );
    }

    #[test]
    fn optimizer_matches_exhaustive_and_zeros() {
        for c in [fixtures::coordinate_plane_s3(), fixtures::two_cube_t3()] {
            let k = c.k();
            let exact = optimize_orientations(&c, &OrientationSearch::default()).unwrap();
            assert!(exact.exhaustive);
            // Independent brute force.
            let mut best = usize::MAX;
            for x in 0..(1u32 << k) {
                let bits: Vec<bool> = (0..k).map(|i| (x >> i) & 1 == 1).collect();
                best = best.min(mismatch_count(&c, &bits));
            }
            assert_eq!(exact.mismatches, best);
            // Heuristic path never beats the optimum nor loses to all-zeros.
            let heur = optimize_orientations(
                &c,
                &OrientationSearch {
                    exhaustive_max: 0,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(!heur.exhaustive);
            assert!(heur.mismatches >= best);
            assert!(heur.mismatches <= mismatch_count(&c, &vec![false; k]));
        }
    }

    #[test]
    fn single_bit_flip_flips_non_self_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in [fixtures::coordinate_plane_s3(), fixtures::two_cube_t3()] {
            let k = c.k();
            for _ in 0..20 {
                let bits: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
                let i = rng.gen_range(0..k);
                let mut flipped = bits.clone();
                flipped[i] = !flipped[i];
                for (a, f, g) in c.pairs() {
                    let before = pair_mismatch(a, f, g, &bits);
                    let after = pair_mismatch(a, f, g, &flipped);
                    let touches = (a == i) ^ (g.cube == i);
                    assert_eq!(before != after, touches);
                }
            }
        }
    }
}
