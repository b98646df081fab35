//! Relabelling-invariant canonical forms for triangulations and cubulations.
//!
//! The signature is the lexicographic minimum, over all start cells and all
//! symmetries of the start cell, of a breadth-first canonical relabelling's
//! serialized gluing table. When a new cell is first reached, its labelling is
//! normalized so that the discovering gluing becomes the trivial one (identity
//! permutation; for cubes, the face-to-opposite-face stacking gluing).

use crate::cubulation::IdealCubulation;
use crate::perm::{face_corners, face_position, opposite_face, CubeSym, Perm4, CUBE_FACES};
use crate::triangulation::IdealTriangulation;

pub(crate) fn encode_cubulation(c: &IdealCubulation) -> Vec<u8> {
    let mut out = Vec::with_capacity(c.k() * 6 * 6);
    for cube in 0..c.k() {
        for face in 0..CUBE_FACES {
            let g = c.gluing(cube, face).expect("total gluing");
            out.push(g.cube as u8);
            out.push(g.face);
            out.extend_from_slice(&g.corner_map.0);
        }
    }
    out
}

fn encode_triangulation(t: &IdealTriangulation) -> Vec<u8> {
    let mut out = Vec::with_capacity(t.n() * 4 * 6);
    for tet in 0..t.n() {
        for face in 0..4u8 {
            let g = t.gluing(tet, face).expect("total gluing");
            out.push(g.tet as u8);
            out.push(g.face);
            out.extend_from_slice(&g.perm.0);
        }
    }
    out
}

/// Breadth-first canonical labelling from `(start, start_sym)`, emitting the
/// encoding incrementally and aborting as soon as it exceeds `best`. On
/// success (strictly smaller than `best`, or no `best`), returns the
/// encoding together with the relabelling that produces it.
fn canonical_from(
    c: &IdealCubulation,
    start: usize,
    start_sym: CubeSym,
    all_syms: &[CubeSym],
    best: Option<&[u8]>,
) -> Option<(Vec<u8>, Vec<usize>, Vec<CubeSym>)> {
    let k = c.k();
    let mut label = vec![usize::MAX; k];
    let mut syms = vec![CubeSym::IDENTITY; k];
    let mut inv_syms = vec![CubeSym::IDENTITY; k];
    let mut order = Vec::with_capacity(k);
    label[start] = 0;
    syms[start] = start_sym;
    inv_syms[start] = start_sym.inverse();
    order.push(start);
    let mut next = 1usize;

    let mut enc = Vec::with_capacity(k * 6 * 6);
    // `smaller` is set once the encoding is strictly below `best`; until
    // then every byte must match `best` or the candidate is discarded.
    let mut smaller = best.is_none();
    let push = |enc: &mut Vec<u8>, byte: u8, smaller: &mut bool| -> bool {
        if !*smaller {
            let b = best.expect("best present while not smaller")[enc.len()];
            if byte > b {
                return false;
            }
            if byte < b {
                *smaller = true;
            }
        }
        enc.push(byte);
        true
    };

    let mut q = 0usize;
    while q < order.len() {
        let cube = order[q];
        let g_sym = syms[cube];
        let inv = inv_syms[cube];
        for canon_face in 0..CUBE_FACES {
            let f = inv.apply_face(canon_face);
            let rec = c.gluing(cube, f).expect("total gluing");
            if label[rec.cube] == usize::MAX {
                // Normalize the new cube so this gluing becomes the stacking
                // gluing: canonical target face is opposite(canon_face) with
                // the identity corner map.
                let want_face = opposite_face(canon_face);
                let h = all_syms
                    .iter()
                    .find(|h| {
                        if h.apply_face(rec.face) != want_face {
                            return false;
                        }
                        face_corners(f).iter().all(|&v| {
                            let cv = g_sym.apply_vertex(v);
                            let v2 = IdealCubulation::map_vertex(f, rec, v);
                            face_position(canon_face, cv)
                                == face_position(want_face, h.apply_vertex(v2))
                        })
                    })
                    .expect("unique normalizing symmetry exists");
                label[rec.cube] = next;
                syms[rec.cube] = *h;
                inv_syms[rec.cube] = h.inverse();
                order.push(rec.cube);
                next += 1;
            }
            // Emit the transformed record.
            let new_target_face = syms[rec.cube].apply_face(rec.face);
            if !push(&mut enc, label[rec.cube] as u8, &mut smaller)
                || !push(&mut enc, new_target_face, &mut smaller)
            {
                return None;
            }
            for &nv in &face_corners(canon_face) {
                let v = inv.apply_vertex(nv);
                let v2 = IdealCubulation::map_vertex(f, rec, v);
                let img = face_position(new_target_face, syms[rec.cube].apply_vertex(v2));
                if !push(&mut enc, img, &mut smaller) {
                    return None;
                }
            }
        }
        q += 1;
    }
    debug_assert_eq!(next, k, "signature requires a connected cubulation");
    if !smaller {
        return None; // equal to best
    }
    Some((enc, label, syms))
}

/// The canonical representative of the isomorphism class of a valid
/// connected cubulation.
pub fn canonical_cubulation(c: &IdealCubulation) -> IdealCubulation {
    let all_syms = CubeSym::all();
    let mut best: Option<(Vec<u8>, Vec<usize>, Vec<CubeSym>)> = None;
    for start in 0..c.k() {
        for &sym in &all_syms {
            let found = canonical_from(c, start, sym, &all_syms, best.as_ref().map(|b| b.0.as_slice()));
            if found.is_some() {
                best = found;
            }
        }
    }
    let (enc, label, syms) = best.expect("non-empty cubulation");
    let canon = c.relabelled(&label, &syms);
    debug_assert_eq!(encode_cubulation(&canon), enc);
    canon
}

/// Relabel-invariant signature string of a valid connected cubulation.
pub fn cubulation_signature(c: &IdealCubulation) -> String {
    let canon = canonical_cubulation(c);
    crate::io::cubulation_to_string(&canon)
}

fn tri_canonical_from(
    t: &IdealTriangulation,
    start: usize,
    start_sym: Perm4,
    best: Option<&[u8]>,
) -> Option<(Vec<u8>, Vec<usize>, Vec<Perm4>)> {
    let n = t.n();
    let mut label = vec![usize::MAX; n];
    let mut syms = vec![Perm4::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    label[start] = 0;
    syms[start] = start_sym;
    order.push(start);
    let mut next = 1usize;

    let mut enc = Vec::with_capacity(n * 4 * 6);
    let mut smaller = best.is_none();
    let push = |enc: &mut Vec<u8>, byte: u8, smaller: &mut bool| -> bool {
        if !*smaller {
            let b = best.expect("best present while not smaller")[enc.len()];
            if byte > b {
                return false;
            }
            if byte < b {
                *smaller = true;
            }
        }
        enc.push(byte);
        true
    };

    let mut q = 0usize;
    while q < order.len() {
        let tet = order[q];
        let g_sym = syms[tet];
        let inv = g_sym.inverse();
        for canon_face in 0..4u8 {
            let f = inv.apply(canon_face);
            let rec = t.gluing(tet, f).expect("total gluing");
            if label[rec.tet] == usize::MAX {
                // Normalize so the composed permutation is the identity.
                syms[rec.tet] = g_sym.compose(&rec.perm.inverse());
                label[rec.tet] = next;
                order.push(rec.tet);
                next += 1;
            }
            // Transformed record: perm' = syms[rec.tet] o rec.perm o inv.
            let perm2 = syms[rec.tet].compose(&rec.perm).compose(&inv);
            let face2 = perm2.apply(canon_face);
            if !push(&mut enc, label[rec.tet] as u8, &mut smaller)
                || !push(&mut enc, face2, &mut smaller)
            {
                return None;
            }
            for i in 0..4u8 {
                if !push(&mut enc, perm2.apply(i), &mut smaller) {
                    return None;
                }
            }
        }
        q += 1;
    }
    debug_assert_eq!(next, n, "signature requires a connected triangulation");
    if !smaller {
        return None;
    }
    Some((enc, label, syms))
}

pub fn canonical_triangulation(t: &IdealTriangulation) -> IdealTriangulation {
    let all = Perm4::all();
    let mut best: Option<(Vec<u8>, Vec<usize>, Vec<Perm4>)> = None;
    for start in 0..t.n() {
        for &sym in &all {
            let found =
                tri_canonical_from(t, start, sym, best.as_ref().map(|b| b.0.as_slice()));
            if found.is_some() {
                best = found;
            }
        }
    }
    let (enc, label, syms) = best.expect("non-empty triangulation");
    let canon = t.relabelled(&label, &syms);
    debug_assert_eq!(encode_triangulation(&canon), enc);
    canon
}

pub fn triangulation_signature(t: &IdealTriangulation) -> String {
    let canon = canonical_triangulation(t);
    crate::io::triangulation_to_string(&canon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn signature_invariant_under_relabelling() {
        let c = fixtures::coordinate_plane_s3();
        let sig = cubulation_signature(&c);
        let syms = CubeSym::all();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let mut cell_map: Vec<usize> = (0..c.k()).collect();
            cell_map.shuffle(&mut rng);
            let picked: Vec<CubeSym> = (0..c.k()).map(|_| *syms.choose(&mut rng).unwrap()).collect();
            let r = c.relabelled(&cell_map, &picked);
            assert!(r.validate().is_ok());
            assert_eq!(cubulation_signature(&r), sig);
        }
    }

    #[test]
    fn distinct_fixtures_have_distinct_signatures() {
        let a = cubulation_signature(&fixtures::coordinate_plane_s3());
        let b = cubulation_signature(&fixtures::two_cube_t3());
        assert_ne!(a, b);
    }

    #[test]
    fn triangulation_signature_invariant() {
        let t = fixtures::double_tet();
        let sig = triangulation_signature(&t);
        let perms = Perm4::all();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let mut cell_map: Vec<usize> = (0..t.n()).collect();
            cell_map.shuffle(&mut rng);
            let picked: Vec<Perm4> = (0..t.n()).map(|_| *perms.choose(&mut rng).unwrap()).collect();
            let r = t.relabelled(&cell_map, &picked);
            assert!(r.validate().is_ok());
            assert_eq!(triangulation_signature(&r), sig);
        }
    }

    #[test]
    fn canonical_is_isomorphic() {
        let c = fixtures::two_cube_t3();
        let canon = canonical_cubulation(&c);
        let report = canon.validate();
        assert!(report.is_ok());
        let orbits = report.orbits.unwrap();
        assert_eq!((orbits.vertices, orbits.edges, orbits.faces), (2, 6, 6));
        // Canonicalizing twice is a fixpoint.
        assert_eq!(cubulation_signature(&canon), cubulation_signature(&c));
    }
}
